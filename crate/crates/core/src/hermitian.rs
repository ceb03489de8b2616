//! Hermitian lattices over the ring of integers of an imaginary quadratic
//! field.
//!
//! The form is linear in the first argument and conjugate-linear in the
//! second: `<x, y> = sum_ij x_i G_ij conj(y_j)`. Maps act on column
//! coordinate vectors, so a map `g` is unitary iff `g^T G conj(g) = G`.

use num_traits::{One, Zero};

use crate::arith::{check_discriminant, euclidean_div, is_unit, FieldElement, Rational, RingBasis, EUCLIDEAN_D};
use crate::error::{LatticeError, Result};
use crate::matrix::{self, RatMatrix};
use crate::quadratic::{trace_form, QuadraticLattice, Signature};

pub type FieldVector = Vec<FieldElement>;
pub type FieldMatrix = Vec<Vec<FieldElement>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianLattice {
    d: i64,
    gram: FieldMatrix,
}

/// An `F`-linear map in the fixed basis, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMap {
    pub matrix: FieldMatrix,
}

fn field_det(m: &FieldMatrix, d: i64) -> FieldElement {
    let n = m.len();
    let mut a = m.clone();
    let mut det = FieldElement::one(d);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return FieldElement::zero(d);
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let inv = a[c][c].inverse().expect("nonzero pivot");
        det = &det * &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    det
}

impl HermitianLattice {
    pub fn new(d: i64, gram: FieldMatrix) -> Result<Self> {
        check_discriminant(d)?;
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Shape(format!("Gram matrix with {n} rows is not square")));
        }
        if gram.iter().flatten().any(|x| x.d() != d) {
            return Err(LatticeError::Shape("entries from a different field".into()));
        }
        for i in 0..n {
            for j in 0..=i {
                if gram[j][i] != gram[i][j].conjugate() {
                    return Err(LatticeError::NotHermitian);
                }
            }
        }
        if field_det(&gram, d).is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self { d, gram })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    pub fn ring_basis(&self) -> RingBasis {
        RingBasis::new(self.d).expect("validated at construction")
    }

    /// `<x, y>`.
    pub fn pairing(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::zero(self.d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc = &acc + &(&(xi * &self.gram[i][j]) * &yj.conjugate());
            }
        }
        acc
    }

    pub fn determinant(&self) -> FieldElement {
        field_det(&self.gram, self.d)
    }

    pub fn trace_lattice(&self) -> QuadraticLattice {
        trace_form(self)
    }

    /// `L` is contained in its trace dual.
    pub fn is_integral(&self) -> bool {
        matrix::is_integral(self.trace_lattice().gram())
    }

    pub fn is_even(&self) -> Result<bool> {
        if !self.is_integral() {
            return Err(LatticeError::NotIntegral);
        }
        Ok((0..self.rank()).all(|i| self.gram[i][i].is_rational() && self.gram[i][i].a().is_integer()))
    }

    /// Hermitian signature; half the inertia of the trace form.
    pub fn signature(&self) -> Signature {
        let s = self.trace_lattice().signature();
        Signature { positive: s.positive / 2, negative: s.negative / 2 }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(LatticeError::Shape("direct sum over different fields".into()));
        }
        let n = self.rank() + other.rank();
        let mut gram = vec![vec![FieldElement::zero(self.d); n]; n];
        for (i, row) in self.gram.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                gram[i][j] = x.clone();
            }
        }
        let off = self.rank();
        for (i, row) in other.gram.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                gram[off + i][off + j] = x.clone();
            }
        }
        Ok(Self { d: self.d, gram })
    }

    /// `L(k)`: the form multiplied by a nonzero rational.
    pub fn rescale(&self, k: &Rational) -> Result<Self> {
        if k.is_zero() {
            return Err(LatticeError::InvalidArgument("rescale by zero".into()));
        }
        let gram = self.gram.iter().map(|r| r.iter().map(|x| x.scale(k)).collect()).collect();
        Ok(Self { d: self.d, gram })
    }

    /// Coordinates of `x` in the interleaved `Z`-basis `(e_1, theta e_1, e_2, ...)`.
    pub fn trace_coords(&self, x: &[FieldElement]) -> Vec<Rational> {
        x.iter()
            .flat_map(|c| {
                let (p, q) = c.theta_coords();
                [p, q]
            })
            .collect()
    }

    pub fn from_trace_coords(&self, v: &[Rational]) -> FieldVector {
        v.chunks(2)
            .map(|pq| FieldElement::from_theta_coords(pq[0].clone(), pq[1].clone(), self.d))
            .collect()
    }

    /// Matrix of an `O_F`-linear map on the interleaved `Z`-basis (column action).
    pub fn map_to_trace(&self, g: &HermitianMap) -> RatMatrix {
        let n = self.rank();
        let theta = self.ring_basis().theta;
        let mut out = matrix::zeros(2 * n, 2 * n);
        for j in 0..n {
            for a in 0..2 {
                let image: FieldVector = (0..n)
                    .map(|i| if a == 0 { g.matrix[i][j].clone() } else { &theta * &g.matrix[i][j] })
                    .collect();
                let coords = self.trace_coords(&image);
                for (row, c) in coords.into_iter().enumerate() {
                    out[row][2 * j + a] = c;
                }
            }
        }
        out
    }

    /// `tau_{r,xi}(l) = l - (1 - xi) <l, r>/<r, r> r`.
    pub fn tau_reflection(&self, r: &[FieldElement], xi: &FieldElement) -> Result<HermitianMap> {
        if r.len() != self.rank() {
            return Err(LatticeError::Shape("reflection vector has wrong length".into()));
        }
        if !is_unit(xi) {
            return Err(LatticeError::NotUnit(xi.to_string()));
        }
        if xi.is_one() {
            return Err(LatticeError::TrivialUnit);
        }
        let rr = self.pairing(r, r);
        if rr.is_zero() {
            return Err(LatticeError::Isotropic);
        }
        let c = (&FieldElement::one(self.d) - xi).checked_div(&rr).expect("nonzero");
        let n = self.rank();
        // <l, r> = l^T (G conj r)
        let g_rbar: FieldVector = (0..n)
            .map(|j| {
                (0..n).fold(FieldElement::zero(self.d), |acc, k| &acc + &(&self.gram[j][k] * &r[k].conjugate()))
            })
            .collect();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let delta = if i == j { FieldElement::one(self.d) } else { FieldElement::zero(self.d) };
                        &delta - &(&(&c * &r[i]) * &g_rbar[j])
                    })
                    .collect()
            })
            .collect();
        Ok(HermitianMap { matrix })
    }

    pub fn is_unitary(&self, g: &HermitianMap) -> bool {
        let n = self.rank();
        if g.matrix.len() != n || g.matrix.iter().any(|r| r.len() != n) {
            return false;
        }
        if !g.matrix.iter().flatten().all(FieldElement::is_ring_integer) {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let gi: FieldVector = (0..n).map(|k| g.matrix[k][i].clone()).collect();
                let gj: FieldVector = (0..n).map(|k| g.matrix[k][j].clone()).collect();
                self.pairing(&gi, &gj) == self.gram[i][j]
            })
        })
    }

    /// `g` acts trivially on `L^v / L` (computed on the trace lattice).
    pub fn in_discriminant_kernel(&self, g: &HermitianMap) -> Result<bool> {
        if !self.is_unitary(g) {
            return Err(LatticeError::NotIsometry);
        }
        let q = self.trace_lattice();
        let gq = self.map_to_trace(g);
        q.acts_trivially_on_discriminant(&gq)
    }

    /// Orthogonal complement of the span of `sub`, saturated in `L`.
    ///
    /// Uses column-style Hermite elimination over the Euclidean ring `O_F`.
    pub fn hermitian_complement(&self, sub: &[FieldVector]) -> Result<HermitianSublattice> {
        if !EUCLIDEAN_D.contains(&self.d) {
            return Err(LatticeError::NonEuclidean(self.d));
        }
        let n = self.rank();
        if sub.iter().any(|s| s.len() != n) {
            return Err(LatticeError::Shape("generator has wrong length".into()));
        }
        if sub.iter().flatten().any(|x| !x.is_ring_integer()) {
            return Err(LatticeError::InvalidArgument("generators must have ring-integral coordinates".into()));
        }
        // rows: x -> <x, s> = x . (G conj s)
        let mut rows: FieldMatrix = sub
            .iter()
            .map(|s| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(FieldElement::zero(self.d), |acc, k| &acc + &(&self.gram[j][k] * &s[k].conjugate()))
                    })
                    .collect::<FieldVector>()
            })
            .collect();
        for row in rows.iter_mut() {
            let den = row
                .iter()
                .fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, &x.integral_denominator()));
            let k = Rational::from_integer(den);
            for x in row.iter_mut() {
                *x = x.scale(&k);
            }
        }
        let mut u: FieldMatrix = (0..n)
            .map(|i| (0..n).map(|j| FieldElement::from_int((i == j) as i64, self.d)).collect())
            .collect();
        let mut col = 0;
        for i in 0..rows.len() {
            loop {
                let pivot = (col..n)
                    .filter(|&j| !rows[i][j].is_zero())
                    .min_by(|&a, &b| rows[i][a].norm().cmp(&rows[i][b].norm()));
                let Some(p) = pivot else { break };
                swap_field_cols(&mut rows, p, col);
                swap_field_cols(&mut u, p, col);
                let mut done = true;
                for j in col + 1..n {
                    if rows[i][j].is_zero() {
                        continue;
                    }
                    let (q, rem) = euclidean_div(&rows[i][j], &rows[i][col])?;
                    field_col_axpy(&mut rows, j, col, &q);
                    field_col_axpy(&mut u, j, col, &q);
                    debug_assert_eq!(rows[i][j], rem);
                    if !rem.is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if col >= n || rows[i][col].is_zero() {
                return Err(LatticeError::DependentGenerators);
            }
            col += 1;
        }
        let basis: Vec<FieldVector> = (col..n).map(|j| (0..n).map(|i| u[i][j].clone()).collect()).collect();
        let gram = basis.iter().map(|x| basis.iter().map(|y| self.pairing(x, y)).collect()).collect();
        let lattice = HermitianLattice::new(self.d, gram)?;
        Ok(HermitianSublattice { basis, lattice })
    }
}

/// A sublattice with its basis in ambient coordinates and its induced form.
#[derive(Clone, Debug)]
pub struct HermitianSublattice {
    pub basis: Vec<FieldVector>,
    pub lattice: HermitianLattice,
}

fn swap_field_cols(m: &mut FieldMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn field_col_axpy(m: &mut FieldMatrix, target: usize, src: usize, q: &FieldElement) {
    for row in m.iter_mut() {
        if row[src].is_zero() {
            continue;
        }
        let v = q * &row[src];
        row[target] = &row[target] - &v;
    }
}

impl HermitianMap {
    pub fn identity(n: usize, d: i64) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| FieldElement::from_int((i == j) as i64, d)).collect())
            .collect();
        Self { matrix }
    }

    pub fn negate(&self) -> Self {
        Self { matrix: self.matrix.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let n = self.matrix.len();
        let d = self.matrix.first().and_then(|r| r.first()).map_or(-1, FieldElement::d);
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(FieldElement::zero(d), |acc, k| &acc + &(&self.matrix[i][k] * &other.matrix[k][j])))
                    .collect()
            })
            .collect();
        Self { matrix }
    }

    pub fn apply(&self, x: &[FieldElement]) -> FieldVector {
        let d = x.first().map_or(-1, FieldElement::d);
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).fold(FieldElement::zero(d), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }
}
