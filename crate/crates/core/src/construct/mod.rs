//! Polynomial-time constructions: Hoffman's 2D solutions, linear (regular)
//! solutions for `d ≥ 3`, shift classes and layer decomposition.

mod hoffman;
mod regular;

pub use hoffman::hoffman_2d;
pub use regular::{
    enumerate_regular, regular_solution, valid_coefficients, CoefficientClasses, RegularSpec,
};

use crate::error::{Error, Result};
use crate::geometry::{verify_certificate, BoardSpec, Placement, Square};

/// Shifts coordinate `dim` (1-based) of every queen by `offset`, modulo `n`.
pub fn shift_class(p: &Placement, dim: usize, offset: i64) -> Result<Placement> {
    let board = p.board();
    check_dim(board, dim)?;
    let n = board.n() as i64;
    let queens = p
        .queens()
        .iter()
        .map(|q| {
            let mut c = q.coords().to_vec();
            c[dim - 1] = ((c[dim - 1] as i64 - 1 + offset).rem_euclid(n) + 1) as usize;
            Square::new(c)
        })
        .collect();
    Placement::new(board, queens)
}

/// Splits a full solution into its `n` layers along `dim`, each with that
/// coordinate dropped: `n` pairwise disjoint full solutions on `(n, d - 1)`.
pub fn superimposable_decomposition(p: &Placement, dim: usize) -> Result<Vec<Placement>> {
    let board = p.board();
    check_dim(board, dim)?;
    if board.d() < 2 {
        return Err(Error::InvalidArgument("decomposition needs d ≥ 2".into()));
    }
    if p.len() != board.full_size() {
        return Err(Error::InvalidArgument(format!(
            "placement has {} queens, a full solution on {board} has {}",
            p.len(),
            board.full_size()
        )));
    }
    let conflicts = verify_certificate(p, false)?.conflicts().len();
    if conflicts > 0 {
        return Err(Error::InvalidPlacement(conflicts));
    }
    let sub = BoardSpec::new(board.n(), board.d() - 1)?;
    let mut layers = vec![Vec::new(); board.n()];
    for q in p.queens() {
        let mut c = q.coords().to_vec();
        let i = c.remove(dim - 1);
        layers[i - 1].push(Square::new(c));
    }
    layers.into_iter().map(|l| Placement::new(sub, l)).collect()
}

fn check_dim(board: BoardSpec, dim: usize) -> Result<()> {
    if dim == 0 || dim > board.d() {
        return Err(Error::OutOfRange(format!("dimension {dim} on a {}-dimensional board", board.d())));
    }
    Ok(())
}

/// Fails with [`Error::ConstructionFailed`] unless `p` is valid.
pub(crate) fn gate(p: Placement, modular: bool, what: &str) -> Result<Placement> {
    match verify_certificate(&p, modular)?.conflicts().len() {
        0 => Ok(p),
        k => Err(Error::ConstructionFailed(format!("{what}: {k} conflicting pairs"))),
    }
}
