use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::gate;
use crate::error::{Error, Result};
use crate::geometry::{BoardSpec, Placement, Square};

/// A linear solution on `(n, d)`: the queens are the squares whose last
/// coordinate is `1 + ((Σ c_i (x_i − 1) + shift) mod n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegularSpec {
    pub n: usize,
    pub d: usize,
    pub coeffs: Vec<usize>,
    pub shift: usize,
}

impl RegularSpec {
    pub fn new(n: usize, d: usize, coeffs: Vec<usize>, shift: usize) -> Result<Self> {
        BoardSpec::new(n, d)?;
        if d < 2 {
            return Err(Error::InvalidArgument("linear solutions need d ≥ 2".into()));
        }
        if coeffs.len() != d - 1 {
            return Err(Error::DimensionMismatch { expected: d - 1, got: coeffs.len() });
        }
        if coeffs.iter().any(|&c| c >= n) || shift >= n {
            return Err(Error::OutOfRange(format!("coefficients and shift must lie in [0, {}]", n - 1)));
        }
        Ok(RegularSpec { n, d, coeffs, shift })
    }

    /// Checks that `e_0 + Σ e_i c_i` is coprime to `n` for every nonzero
    /// `e ∈ {−1, 0, 1}^d`; the error names the first violating `e`.
    pub fn check_admissible(&self) -> Result<()> {
        match inadmissibility_witness(self.n, &self.coeffs) {
            None => Ok(()),
            Some((witness, value)) => Err(Error::Inadmissible { n: self.n, witness, value }),
        }
    }
}

fn inadmissibility_witness(n: usize, coeffs: &[usize]) -> Option<(Vec<i64>, i64)> {
    let d = coeffs.len() + 1;
    let mut e = vec![-1i64; d];
    loop {
        if e.iter().any(|&x| x != 0) {
            let value = e[0] + e[1..].iter().zip(coeffs).map(|(&a, &c)| a * c as i64).sum::<i64>();
            if value.gcd(&(n as i64)) != 1 {
                return Some((e, value));
            }
        }
        let mut i = d;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if e[i] < 1 {
                e[i] += 1;
                break;
            }
            e[i] = -1;
        }
    }
}

pub fn regular_solution(spec: &RegularSpec) -> Result<Placement> {
    let spec = RegularSpec::new(spec.n, spec.d, spec.coeffs.clone(), spec.shift)?;
    spec.check_admissible()?;
    gate(build(&spec)?, true, "regular_solution")
}

fn build(spec: &RegularSpec) -> Result<Placement> {
    let (n, d) = (spec.n, spec.d);
    let board = BoardSpec::new(n, d)?;
    let base = BoardSpec::new(n, d - 1)?;
    let queens = (0..base.num_squares())
        .map(|i| {
            let mut c = base.coords_of(i);
            let sum: usize = c.iter().zip(&spec.coeffs).map(|(&x, &a)| a * (x - 1) % n).sum::<usize>() + spec.shift;
            c.push(1 + sum % n);
            Square::new(c)
        })
        .collect();
    Placement::new(board, queens)
}

/// All admissible coefficient vectors of a board, and their classes under
/// sign changes and even permutations of the coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientClasses {
    pub n: usize,
    pub d: usize,
    /// Every admissible vector, ascending.
    pub all: Vec<Vec<usize>>,
    /// The classes, each ascending, ordered by their smallest member.
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl CoefficientClasses {
    /// The class count `c(n, d)`.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

pub fn valid_coefficients(n: usize, d: usize) -> Result<CoefficientClasses> {
    if d < 3 {
        return Err(Error::InvalidArgument("coefficient search needs d ≥ 3".into()));
    }
    let base = BoardSpec::new(n, d - 1)?;
    BoardSpec::new(n, d)?;
    let all: Vec<Vec<usize>> = (0..base.num_squares())
        .map(|i| base.coords_of(i).into_iter().map(|c| c - 1).collect::<Vec<_>>())
        .filter(|c| inadmissibility_witness(n, c).is_none())
        .collect();
    let group = even_signed_permutations(d);
    let mut class_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
    for c in &all {
        if class_of.contains_key(c) {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> = group.iter().map(|(perm, sign)| act(n, c, perm, sign)).collect();
        for v in &orbit {
            class_of.insert(v.clone(), classes.len());
        }
        classes.push(orbit.into_iter().collect());
    }
    Ok(CoefficientClasses { n, d, all, classes })
}

/// Acts on the normal vector `(c, −1)` of the solution's hyperplane and
/// rescales the result so that its last entry is `−1` again.
fn act(n: usize, c: &[usize], perm: &[usize], sign: &[bool]) -> Vec<usize> {
    let n = n as i64;
    let mut a: Vec<i64> = c.iter().map(|&x| x as i64).collect();
    a.push(n - 1);
    let b: Vec<i64> = perm
        .iter()
        .zip(sign)
        .map(|(&p, &s)| if s { (n - a[p]) % n } else { a[p] })
        .collect();
    let last = b[b.len() - 1];
    let inv = mod_inverse(last, n).expect("admissible coefficients are units");
    let scale = (n - inv) % n;
    b[..b.len() - 1].iter().map(|&x| (x * scale % n) as usize).collect()
}

fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let g = a.extended_gcd(&n);
    (g.gcd == 1).then(|| g.x.rem_euclid(n))
}

fn even_signed_permutations(d: usize) -> Vec<(Vec<usize>, Vec<bool>)> {
    let mut perms = Vec::new();
    heap_permutations(&mut (0..d).collect(), d, &mut perms);
    let mut out = Vec::new();
    for p in perms.into_iter().filter(|p| is_even(p)) {
        for mask in 0..1u32 << d {
            out.push((p.clone(), (0..d).map(|i| mask >> i & 1 == 1).collect()));
        }
    }
    out
}

fn heap_permutations(a: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(a, k - 1, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        a.swap(j, k - 1);
    }
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

/// Every distinct linear solution on `(n, d)`: all admissible coefficient
/// vectors with all shifts, sorted by queen list.
pub fn enumerate_regular(n: usize, d: usize) -> Result<Vec<Placement>> {
    let coeffs = valid_coefficients(n, d)?;
    let mut out = BTreeSet::new();
    for c in &coeffs.all {
        for s in 0..n {
            let spec = RegularSpec { n, d, coeffs: c.clone(), shift: s };
            out.insert(SortKey(gate(build(&spec)?, true, "enumerate_regular")?));
        }
    }
    Ok(out.into_iter().map(|k| k.0).collect())
}

#[derive(PartialEq, Eq)]
struct SortKey(Placement);

impl PartialOrd for SortKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SortKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.queens().cmp(other.0.queens())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::verify_certificate;

    #[test]
    fn klarner_examples() {
        for n in [11, 13] {
            let p = regular_solution(&RegularSpec::new(n, 3, vec![3, 5], 0).unwrap()).unwrap();
            assert_eq!(p.len(), n * n);
            assert!(verify_certificate(&p, false).unwrap().is_valid());
        }
        let err = regular_solution(&RegularSpec::new(7, 3, vec![3, 5], 0).unwrap()).unwrap_err();
        match err {
            Error::Inadmissible { n, value, .. } => {
                assert_eq!(n, 7);
                assert_eq!(value.rem_euclid(7), 0);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(RegularSpec::new(11, 3, vec![3], 0).is_err());
        assert!(RegularSpec::new(11, 3, vec![3, 11], 0).is_err());
        assert!(RegularSpec::new(11, 3, vec![3, 5], 11).is_err());
    }

    #[test]
    fn class_counts() {
        let c11 = valid_coefficients(11, 3).unwrap();
        assert_eq!(c11.class_count(), 2);
        assert_eq!(c11.all.len(), 24);
        assert!(c11.classes.iter().all(|c| c.len() == 12));
        let c13 = valid_coefficients(13, 3).unwrap();
        assert_eq!(c13.class_count(), 4);
        assert!(valid_coefficients(7, 3).unwrap().all.is_empty());
        assert!(valid_coefficients(7, 2).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_regular(11, 3).unwrap().len(), 264);
        assert!(enumerate_regular(7, 3).unwrap().is_empty());
    }

    #[test]
    fn higher_dimensional_solution() {
        let cs = valid_coefficients(17, 4).unwrap();
        let spec = RegularSpec::new(17, 4, cs.all[0].clone(), 3).unwrap();
        let p = regular_solution(&spec).unwrap();
        assert_eq!(p.len(), 17 * 17 * 17);
    }
}
