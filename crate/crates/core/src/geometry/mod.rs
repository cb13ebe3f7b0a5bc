//! Boards, squares, attack relations and the queen graph.
//!
//! Coordinates are 1-based throughout. A square on an `(n, d)` board is a
//! `d`-tuple with every entry in `1..=n`; its linear index is its 0-based
//! lexicographic rank, with the first coordinate most significant.

pub(crate) mod attack;
mod graph;
mod lines;
pub(crate) mod symmetry;
mod verify;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use attack::{attack_directions, attacked_squares, attacks, modular_attacks};
pub use graph::{queen_graph, QueenGraph};
pub use lines::{attack_lines, layer, AttackLines};
pub use symmetry::{orbit_representative, BoardSymmetry};
pub use verify::{verify_certificate, Verdict};

pub(crate) use lines::LineIndex;

/// Upper limit on `n^d`.
pub const MAX_SQUARES: usize = 1 << 24;

/// An `(n, d)` board: `n` squares per side in `d` dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawBoard")]
pub struct BoardSpec {
    n: usize,
    d: usize,
}

#[derive(Deserialize)]
struct RawBoard {
    n: usize,
    d: usize,
}

impl TryFrom<RawBoard> for BoardSpec {
    type Error = Error;

    fn try_from(raw: RawBoard) -> Result<Self> {
        BoardSpec::new(raw.n, raw.d)
    }
}

impl BoardSpec {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidBoard { n, d });
        }
        match checked_pow(n, d) {
            Some(total) if total <= MAX_SQUARES => Ok(BoardSpec { n, d }),
            _ => Err(Error::BoardTooLarge { n, d }),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    /// `n^d`.
    pub fn num_squares(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    /// `n^(d-1)`, the size of a full solution.
    pub fn full_size(&self) -> usize {
        self.n.pow(self.d as u32 - 1)
    }

    pub fn check(&self, sq: &Square) -> Result<()> {
        if sq.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: sq.dim() });
        }
        if sq.0.iter().any(|&c| c == 0 || c > self.n) {
            return Err(Error::OutOfBoard { square: sq.clone(), n: self.n });
        }
        Ok(())
    }

    pub fn contains(&self, sq: &Square) -> bool {
        self.check(sq).is_ok()
    }

    /// Linear (0-based lexicographic) index of a square.
    pub fn index_of(&self, sq: &Square) -> Result<usize> {
        self.check(sq)?;
        Ok(self.index_unchecked(&sq.0))
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.n + (c - 1))
    }

    pub fn square_at(&self, index: usize) -> Result<Square> {
        if index >= self.num_squares() {
            return Err(Error::OutOfRange(format!(
                "square index {index} on a board with {} squares",
                self.num_squares()
            )));
        }
        Ok(Square(self.coords_of(index)))
    }

    pub(crate) fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.d];
        for c in coords.iter_mut().rev() {
            *c = index % self.n + 1;
            index /= self.n;
        }
        coords
    }

    /// All squares in lexicographic order.
    pub fn squares(&self) -> impl Iterator<Item = Square> + '_ {
        (0..self.num_squares()).map(move |i| Square(self.coords_of(i)))
    }
}

impl fmt::Display for BoardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.d)
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    base.checked_pow(u32::try_from(exp).ok()?)
}

/// A board square as a tuple of 1-based coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Square(Vec<usize>);

impl Square {
    pub fn new(coords: Vec<usize>) -> Self {
        Square(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `‖q‖`, the largest coordinate.
    pub fn size(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn into_coords(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Square {
    fn from(v: Vec<usize>) -> Self {
        Square(v)
    }
}

impl<const N: usize> From<[usize; N]> for Square {
    fn from(v: [usize; N]) -> Self {
        Square(v.to_vec())
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A canonical attack direction: entries in {-1, 0, 1}, not all zero, first
/// nonzero entry `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(Vec<i8>);

impl Direction {
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if eps.iter().any(|e| !(-1..=1).contains(e)) {
            return Err(Error::InvalidArgument(format!("direction entries must be in {{-1,0,1}}: {eps:?}")));
        }
        match eps.iter().find(|&&e| e != 0) {
            None => Err(Error::InvalidArgument("direction must not be all-zero".into())),
            Some(&first) => {
                let eps = if first < 0 { eps.into_iter().map(|e| -e).collect() } else { eps };
                Ok(Direction(eps))
            }
        }
    }

    pub fn eps(&self) -> &[i8] {
        &self.0
    }

    /// Number of nonzero entries; 1 for rook (axis) directions.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&e| e != 0).count()
    }

    pub fn is_axis(&self) -> bool {
        self.weight() == 1
    }
}

/// A duplicate-free, lexicographically sorted set of squares on a board.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    board: BoardSpec,
    queens: Vec<Square>,
}

impl Placement {
    pub fn new(board: BoardSpec, mut queens: Vec<Square>) -> Result<Self> {
        for q in &queens {
            board.check(q)?;
        }
        queens.sort();
        if let Some(w) = queens.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSquare(w[0].clone()));
        }
        Ok(Placement { board, queens })
    }

    pub fn empty(board: BoardSpec) -> Self {
        Placement { board, queens: Vec::new() }
    }

    /// Builds a placement from linear indices (any order, no duplicates).
    pub(crate) fn from_indices(board: BoardSpec, idx: &[usize]) -> Self {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let queens = idx.into_iter().map(|i| Square(board.coords_of(i))).collect();
        Placement { board, queens }
    }

    pub fn board(&self) -> BoardSpec {
        self.board
    }

    pub fn queens(&self) -> &[Square] {
        &self.queens
    }

    pub fn len(&self) -> usize {
        self.queens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queens.is_empty()
    }

    pub fn contains(&self, sq: &Square) -> bool {
        self.queens.binary_search(sq).is_ok()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.queens.iter().map(|q| self.board.index_unchecked(&q.0)).collect()
    }

    /// Re-homes the placement on another board of the same dimension.
    pub fn on_board(&self, board: BoardSpec) -> Result<Placement> {
        Placement::new(board, self.queens.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct PlacementJson {
    n: usize,
    d: usize,
    queens: Vec<Vec<usize>>,
}

impl Serialize for Placement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlacementJson {
            n: self.board.n,
            d: self.board.d,
            queens: self.queens.iter().map(|q| q.0.clone()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Placement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = PlacementJson::deserialize(de)?;
        let board = BoardSpec::new(raw.n, raw.d).map_err(serde::de::Error::custom)?;
        Placement::new(board, raw.queens.into_iter().map(Square).collect()).map_err(serde::de::Error::custom)
    }
}
