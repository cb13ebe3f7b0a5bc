use super::{BoardSpec, Placement, Square};

/// A signed coordinate permutation of the board: coordinate `i` of the image
/// is coordinate `perm[i]` of the source, reflected (`c ↦ n + 1 − c`) when
/// `flip[i]` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoardSymmetry {
    perm: Vec<usize>,
    flip: Vec<bool>,
}

impl BoardSymmetry {
    pub fn identity(d: usize) -> Self {
        BoardSymmetry { perm: (0..d).collect(), flip: vec![false; d] }
    }

    /// Returns `None` unless `perm` is a permutation of `0..d` with `d = flip.len()`.
    pub fn new(perm: Vec<usize>, flip: Vec<bool>) -> Option<Self> {
        let mut seen = vec![false; perm.len()];
        if perm.len() != flip.len() {
            return None;
        }
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(BoardSymmetry { perm, flip })
    }

    /// All `2^d · d!` signed permutations.
    pub fn all(d: usize) -> Vec<BoardSymmetry> {
        let mut perms = Vec::new();
        permutations(&mut (0..d).collect(), 0, &mut perms);
        let mut out = Vec::with_capacity(perms.len() << d);
        for perm in perms {
            for mask in 0..1u32 << d {
                let flip = (0..d).map(|i| mask >> i & 1 == 1).collect();
                out.push(BoardSymmetry { perm: perm.clone(), flip });
            }
        }
        out
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flip(&self) -> &[bool] {
        &self.flip
    }

    pub(crate) fn apply_coords(&self, c: &[usize], n: usize) -> Vec<usize> {
        self.perm
            .iter()
            .zip(&self.flip)
            .map(|(&p, &f)| if f { n + 1 - c[p] } else { c[p] })
            .collect()
    }

    pub fn apply(&self, sq: &Square, n: usize) -> Square {
        Square::new(self.apply_coords(sq.coords(), n))
    }

    pub fn apply_placement(&self, p: &Placement) -> Placement {
        let n = p.board().n();
        let queens = p.queens().iter().map(|q| self.apply(q, n)).collect();
        Placement::new(p.board(), queens).expect("symmetries map boards onto themselves")
    }

    /// Image of every linear index.
    pub(crate) fn index_map(&self, board: BoardSpec) -> Vec<usize> {
        (0..board.num_squares())
            .map(|i| board.index_unchecked(&self.apply_coords(&board.coords_of(i), board.n())))
            .collect()
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Canonical member of a square's orbit under all board symmetries: each
/// coordinate folded to `min(c, n + 1 − c)`, then sorted ascending.
pub fn orbit_representative(sq: &Square, n: usize) -> Square {
    let mut c: Vec<usize> = sq.coords().iter().map(|&c| c.min(n + 1 - c)).collect();
    c.sort_unstable();
    Square::new(c)
}

/// Lexicographically smallest sorted index list among the images of `idx`
/// under the given index maps.
pub(crate) fn canonical_indices(idx: &[usize], maps: &[Vec<usize>]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut img = Vec::with_capacity(idx.len());
    for map in maps {
        img.clear();
        img.extend(idx.iter().map(|&i| map[i]));
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img.clone());
        }
    }
    best.unwrap_or_else(|| idx.to_vec())
}
