//! `Z`-lattices with rational symmetric Gram matrices.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{frac, Rational};
use crate::error::{LatticeError, Result};
use crate::hermitian::HermitianLattice;
use crate::matrix::{self, IntMatrix, RatMatrix};
use crate::normal_form::{row_basis, smith_form};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Minimal number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticLattice {
    gram: RatMatrix,
}

/// Gram matrix of the trace form on the interleaved basis
/// `(e_1, theta e_1, e_2, theta e_2, ...)`.
pub fn trace_form(h: &HermitianLattice) -> QuadraticLattice {
    let n = h.rank();
    let theta = h.ring_basis().theta;
    let powers = [crate::arith::FieldElement::one(h.d()), theta];
    let mut g = matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let entry = &h.gram()[i][j];
            for a in 0..2 {
                for b in 0..2 {
                    let v = &(&powers[a] * &powers[b].conjugate()) * entry;
                    g[2 * i + a][2 * j + b] = v.trace_q();
                }
            }
        }
    }
    QuadraticLattice { gram: g }
}

impl QuadraticLattice {
    pub fn new(gram: RatMatrix) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Shape(format!("Gram matrix with {n} rows is not square")));
        }
        if !matrix::is_symmetric(&gram) {
            return Err(LatticeError::NotSymmetric);
        }
        if matrix::determinant(&gram).is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self { gram })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(matrix::from_i64(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn into_gram(self) -> RatMatrix {
        self.gram
    }

    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        matrix::bilinear(&self.gram, x, y)
    }

    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.pairing(x, x)
    }

    pub fn signature(&self) -> Signature {
        let (p, q, _) = matrix::inertia(&self.gram);
        Signature { positive: p, negative: q }
    }

    pub fn determinant(&self) -> Rational {
        matrix::determinant(&self.gram)
    }

    pub fn is_integral(&self) -> bool {
        matrix::is_integral(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| self.gram[i][i].to_integer().is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.determinant().abs().is_one()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().positive == self.rank()
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature().negative == self.rank()
    }

    fn integer_gram(&self) -> Result<IntMatrix> {
        matrix::to_integer(&self.gram).map_err(|_| LatticeError::NotIntegral)
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        let g = self.integer_gram()?;
        let s = smith_form(&g, self.rank());
        let invariant_factors = s.diagonal.into_iter().filter(|x| !x.is_one()).collect();
        Ok(DiscriminantGroup { invariant_factors })
    }

    pub fn ell_invariant(&self) -> Result<usize> {
        Ok(self.discriminant_group()?.length())
    }

    pub fn rescale(&self, a: i64) -> Result<Self> {
        if a == 0 {
            return Err(LatticeError::InvalidArgument("rescale by zero".into()));
        }
        Ok(Self { gram: matrix::scale(&self.gram, &Rational::from_integer(a.into())) })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { gram: matrix::block_diag(&self.gram, &other.gram) }
    }

    /// `L^{+k}`.
    pub fn power(&self, k: usize) -> Self {
        let mut out = Self { gram: Vec::new() };
        for _ in 0..k {
            out = out.direct_sum(self);
        }
        out
    }

    pub fn is_isometry(&self, g: &RatMatrix) -> bool {
        let n = self.rank();
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return false;
        }
        let gt = matrix::transpose(g);
        matrix::mul(&matrix::mul(&gt, &self.gram), g) == self.gram
    }

    /// `sigma_r(l) = l - 2 (l, r)/(r, r) r`, acting on column vectors.
    pub fn sigma_reflection(&self, r: &[BigInt]) -> Result<RatMatrix> {
        let n = self.rank();
        if r.len() != n {
            return Err(LatticeError::Shape("reflection vector has wrong length".into()));
        }
        let rq: Vec<Rational> = r.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let rr = self.norm(&rq);
        if rr.is_zero() {
            return Err(LatticeError::Isotropic);
        }
        let gr = matrix::mat_vec(&self.gram, &rq);
        let c = Rational::from_integer(2.into()) / rr;
        let mut m = matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                m[i][j] -= &c * &rq[i] * &gr[j];
            }
        }
        Ok(m)
    }

    /// Orientation test on a maximal positive subspace read off the
    /// diagonalization of the Gram matrix.
    pub fn in_o_plus(&self, g: &RatMatrix) -> Result<bool> {
        if !self.is_isometry(g) {
            return Err(LatticeError::NotIsometry);
        }
        let (t, diag) = matrix::symmetric_diagonalize(&self.gram);
        let pos: Vec<usize> = (0..diag.len()).filter(|&i| diag[i].is_positive()).collect();
        let k = pos.len();
        let mut c = matrix::zeros(k, k);
        for (jj, &j) in pos.iter().enumerate() {
            let image = matrix::mat_vec(g, &t[j]);
            for (kk, &kidx) in pos.iter().enumerate() {
                c[jj][kk] = self.pairing(&t[kidx], &image) / &diag[kidx];
            }
        }
        Ok(matrix::determinant(&c).is_positive())
    }

    /// `g` acts trivially on `L^v / L`.
    pub fn acts_trivially_on_discriminant(&self, g: &RatMatrix) -> Result<bool> {
        let n = self.rank();
        let inv = matrix::inverse(&self.gram)?;
        // columns of G^{-1} span the dual in coordinates
        let diff = matrix::sub(g, &matrix::identity(n));
        Ok(matrix::is_integral(&matrix::mul(&diff, &inv)))
    }

    pub fn in_tilde_o_plus(&self, g: &RatMatrix) -> Result<bool> {
        if !matrix::is_integral(g) {
            return Err(LatticeError::NonIntegralMatrix);
        }
        if !self.in_o_plus(g)? {
            return Ok(false);
        }
        self.acts_trivially_on_discriminant(g)
    }

    /// Gram of `L + Z glue`, where `glue` is given in coordinates of `L`.
    pub fn overlattice(&self, glue: &[Rational], index: u64) -> Result<Self> {
        let n = self.rank();
        if glue.len() != n {
            return Err(LatticeError::Shape("glue vector has wrong length".into()));
        }
        if index == 0 {
            return Err(LatticeError::InvalidGlue("index must be positive".into()));
        }
        let order = glue.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        if order != BigInt::from(index) {
            return Err(LatticeError::InvalidGlue(format!("glue has order {order}, expected {index}")));
        }
        if !self.is_integral() {
            return Err(LatticeError::NotIntegral);
        }
        if !matrix::mat_vec(&self.gram, glue).iter().all(|x| x.is_integer()) {
            return Err(LatticeError::InvalidGlue("pairings with the lattice are not integral".into()));
        }
        let nrm = self.norm(glue);
        if !nrm.is_integer() {
            return Err(LatticeError::InvalidGlue(format!("norm {nrm} is not integral")));
        }
        if self.is_even() && nrm.to_integer().is_odd() {
            return Err(LatticeError::InvalidGlue(format!("norm {nrm} is odd")));
        }
        if index == 1 {
            return Ok(self.clone());
        }
        let k = Rational::from_integer(index.into());
        let mut gens: IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::from(index) } else { BigInt::zero() }).collect())
            .collect();
        gens.push(glue.iter().map(|x| (x * &k).to_integer()).collect());
        let basis = row_basis(&gens, n);
        let b = matrix::scale(&matrix::to_rational(&basis), &(Rational::one() / k));
        Self::new(matrix::congruence(&self.gram, &b))
    }

    /// All elements of `L^v / L`, as coordinate vectors reduced into `[0, 1)`.
    ///
    /// Refuses when the group has more than `limit` elements.
    pub fn discriminant_elements(&self, limit: usize) -> Result<Vec<Vec<Rational>>> {
        let g = self.integer_gram()?;
        let n = self.rank();
        let s = smith_form(&g, n);
        let order: BigInt = s.diagonal.iter().product::<BigInt>().abs();
        if order > BigInt::from(limit) {
            return Err(LatticeError::InvalidArgument(format!("discriminant group of order {order} exceeds {limit}")));
        }
        let divs: Vec<u64> = s.diagonal.iter().map(|x| u64::try_from(x.abs()).expect("bounded")).collect();
        let mut out = Vec::new();
        let mut w = vec![0u64; n];
        loop {
            let y: Vec<Rational> = (0..n)
                .map(|i| {
                    let mut acc = Rational::zero();
                    for (j, &dj) in divs.iter().enumerate() {
                        if w[j] != 0 {
                            acc += Rational::new(BigInt::from(w[j]), BigInt::from(dj)) * &s.right[i][j];
                        }
                    }
                    frac(&acc)
                })
                .collect();
            out.push(y);
            let mut pos = 0;
            loop {
                if pos == n {
                    return Ok(out);
                }
                w[pos] += 1;
                if w[pos] < divs[pos] {
                    break;
                }
                w[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Glue vectors of exact order `index` giving integral (and, for even `L`,
    /// even) overlattices; one representative per cyclic subgroup.
    pub fn glue_vectors(&self, index: u64, limit: usize) -> Result<Vec<Vec<Rational>>> {
        let elems = self.discriminant_elements(limit)?;
        let even = self.is_even();
        let idx = BigInt::from(index);
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for y in elems {
            let order = y.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            if order != idx {
                continue;
            }
            let nrm = self.norm(&y);
            if !nrm.is_integer() || (even && nrm.to_integer().is_odd()) {
                continue;
            }
            let key = |v: &Vec<Rational>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let multiples: Vec<Vec<Rational>> = (1..index)
                .filter(|k| k.gcd(&index) == 1)
                .map(|k| y.iter().map(|x| frac(&(x * Rational::from_integer(k.into())))).collect())
                .collect();
            if multiples.iter().any(|m| seen.contains(&key(m))) {
                continue;
            }
            seen.insert(key(&y));
            reps.push(y);
        }
        Ok(reps)
    }
}
