//! Sublattices of a quadratic lattice: complements, primitivity, saturation
//! and the existence criterion for primitive embeddings into even unimodular
//! lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{LatticeError, Result};
use crate::matrix::{self, IntMatrix, RatMatrix};
use crate::normal_form::{self, elementary_divisors, hermite_with_transform};
use crate::quadratic::{QuadraticLattice, Signature};

pub use crate::normal_form::integer_kernel;

/// A sublattice given by integer basis rows in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub ambient: QuadraticLattice,
    pub basis: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient: QuadraticLattice, basis: IntMatrix) -> Result<Self> {
        let n = ambient.rank();
        if basis.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Shape(format!("basis vectors must have length {n}")));
        }
        if matrix::rank(&matrix::to_rational(&basis)) != basis.len() {
            return Err(LatticeError::DependentGenerators);
        }
        Ok(Self { ambient, basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Restriction of the ambient form (possibly degenerate).
    pub fn gram(&self) -> RatMatrix {
        matrix::congruence(self.ambient.gram(), &matrix::to_rational(&self.basis))
    }

    pub fn lattice(&self) -> Result<QuadraticLattice> {
        QuadraticLattice::new(self.gram())
    }

    /// Same row span as `other` (bases may differ).
    pub fn same_span(&self, other: &Sublattice) -> bool {
        let n = self.ambient.rank();
        self.rank() == other.rank() && normal_form::row_basis(&self.basis, n) == normal_form::row_basis(&other.basis, n)
    }
}

/// `{x : (x, s) = 0 for all s in sub}`, saturated.
pub fn orthogonal_complement(sub: &Sublattice) -> Result<Sublattice> {
    let n = sub.ambient.rank();
    let rows = matrix::mul(&matrix::to_rational(&sub.basis), sub.ambient.gram());
    let constraints: IntMatrix = rows
        .into_iter()
        .map(|r| {
            let den = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.into_iter().map(|x| (x * crate::arith::Rational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let basis = integer_kernel(&constraints, n);
    Sublattice::new(sub.ambient.clone(), basis)
}

pub fn is_primitive(sub: &Sublattice) -> bool {
    let n = sub.ambient.rank();
    let divs = elementary_divisors(&sub.basis, n);
    divs.len() == sub.rank() && divs.iter().all(One::is_one)
}

pub fn saturation(sub: &Sublattice) -> Sublattice {
    let n = sub.ambient.rank();
    let basis = normal_form::saturation(&sub.basis, n);
    Sublattice { ambient: sub.ambient.clone(), basis }
}

/// Sufficient condition for a unique primitive embedding of an even lattice
/// of signature `(m+, m-)` and discriminant length `ell` into an even
/// unimodular lattice of signature `(n+, n-)`.
pub fn nikulin_check(sub: Signature, ell: usize, ambient: Signature) -> bool {
    let m = sub.positive + sub.negative;
    let n = ambient.positive + ambient.negative;
    sub.positive < ambient.positive && sub.negative < ambient.negative && m < n && ell + 2 <= n - m
}

/// Coordinates of `v` in the given basis, when `v` lies in its span over `Z`.
pub fn coordinates_in(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = basis.len();
    if k == 0 {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let n = v.len();
    // rows: basis, then v; a unimodular combination killing v gives its coordinates
    let mut stacked = basis.clone();
    stacked.push(v.to_vec());
    let (h, u) = hermite_with_transform(&stacked, n);
    let zero_row = (0..=k).rev().find(|&i| h[i].iter().all(Zero::is_zero) && !u[i][k].is_zero())?;
    let c = &u[zero_row][k];
    if !(c.is_one() || (-c).is_one()) {
        return None;
    }
    Some((0..k).map(|j| -&u[zero_row][j] * c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{hyperbolic_plane, parse_label};
    use crate::matrix::int_from_i64;

    #[test]
    fn primitivity() {
        let u = hyperbolic_plane();
        assert!(is_primitive(&Sublattice::new(u.clone(), int_from_i64(&[vec![1, 0]])).unwrap()));
        assert!(!is_primitive(&Sublattice::new(u.clone(), int_from_i64(&[vec![2, 0]])).unwrap()));
        assert!(Sublattice::new(u, int_from_i64(&[vec![1, 0], vec![2, 0]])).is_err());
    }

    #[test]
    fn complements_in_u_plus_u() {
        let uu = parse_label("U^2").unwrap().lattice().unwrap();
        let first = Sublattice::new(uu.clone(), int_from_i64(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])).unwrap();
        let c = orthogonal_complement(&first).unwrap();
        let second = Sublattice::new(uu.clone(), int_from_i64(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1]])).unwrap();
        assert!(c.same_span(&second));
        let all = Sublattice::new(uu.clone(), matrix::int_identity(4)).unwrap();
        assert_eq!(orthogonal_complement(&all).unwrap().rank(), 0);
    }

    #[test]
    fn double_complement_saturates() {
        let e8 = parse_label("E8").unwrap().lattice().unwrap();
        let sub = Sublattice::new(e8, int_from_i64(&[vec![2, 0, 0, 0, 0, 0, 0, 0], vec![0, 1, 1, 0, 0, 0, 0, 0]])).unwrap();
        let cc = orthogonal_complement(&orthogonal_complement(&sub).unwrap()).unwrap();
        assert!(cc.same_span(&saturation(&sub)));
        assert!(is_primitive(&cc));
        assert_eq!(cc.lattice().unwrap().determinant(), orthogonal_complement(&sub).unwrap().lattice().unwrap().determinant());
    }

    #[test]
    fn nikulin_examples() {
        let ii = Signature { positive: 2, negative: 26 };
        assert!(nikulin_check(Signature { positive: 0, negative: 2 }, 1, ii));
        assert!(nikulin_check(Signature { positive: 0, negative: 6 }, 3, ii));
        assert!(!nikulin_check(Signature { positive: 0, negative: 1 }, 27, ii));
        assert!(!nikulin_check(Signature { positive: 2, negative: 0 }, 0, ii));
    }

    #[test]
    fn coordinates() {
        let b = int_from_i64(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let v: Vec<BigInt> = [2, 5, 3].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(coordinates_in(&b, &v), Some(vec![BigInt::from(2), BigInt::from(3)]));
        let w: Vec<BigInt> = [1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(coordinates_in(&b, &w), None);
    }
}
