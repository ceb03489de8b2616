//! Definite lattices: exact LLL, Fincke-Pohst enumeration, root systems and
//! isometry testing.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{round_half_up, Rational};
use crate::error::{LatticeError, Result};
use crate::lattices::AdeComponent;
use crate::matrix::{self, IntMatrix, RatMatrix};
use crate::quadratic::QuadraticLattice;

/// Enumeration above this rank applies LLL first.
pub const LLL_THRESHOLD: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVectorReport {
    pub norm_target: BigInt,
    /// One vector per `+-` pair, first nonzero coordinate positive, sorted.
    pub vectors: Vec<Vec<BigInt>>,
    pub count_total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub components: Vec<AdeComponent>,
    pub root_count: usize,
    /// The roots span a finite-index sublattice.
    pub full_rank: bool,
    /// Index of the root sublattice when `full_rank`.
    pub index: Option<BigInt>,
}

/// Sign making the form positive definite; indefinite forms are rejected.
fn definite_sign(q: &QuadraticLattice) -> Result<i64> {
    let s = q.signature();
    if s.negative == 0 {
        Ok(1)
    } else if s.positive == 0 {
        Ok(-1)
    } else {
        Err(LatticeError::Indefinite(s.positive, s.negative))
    }
}

/// `(mu, b)` with `G = L diag(b) L^T`, `L_ij = mu[i][j]` below the diagonal.
fn gram_schmidt(g: &RatMatrix) -> (RatMatrix, Vec<Rational>) {
    let n = g.len();
    let mut mu = matrix::zeros(n, n);
    let mut b: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..i {
            let mut v = g[i][j].clone();
            for l in 0..j {
                v -= &mu[j][l] * &mu[i][l] * &b[l];
            }
            mu[i][j] = v / &b[j];
        }
        let mut v = g[i][i].clone();
        for l in 0..i {
            v -= &mu[i][l] * &mu[i][l] * &b[l];
        }
        b.push(v);
    }
    (mu, b)
}

/// LLL reduction (`delta = 3/4`) of a positive definite Gram matrix.
///
/// Returns the reduced Gram matrix and the unimodular matrix whose rows are
/// the new basis vectors in old coordinates.
pub fn lll_reduce(g: &RatMatrix) -> (RatMatrix, IntMatrix) {
    let n = g.len();
    let mut gram = g.clone();
    let mut basis = matrix::int_identity(n);
    if n < 2 {
        return (gram, basis);
    }
    let delta = Rational::new(3.into(), 4.into());
    let (mut mu, mut bn) = gram_schmidt(&gram);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round_half_up(&mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let qr = Rational::from_integer(q.clone());
            for c in 0..n {
                let v = &basis[j][c] * &q;
                basis[k][c] -= v;
            }
            for c in 0..n {
                let v = &qr * &gram[j][c];
                gram[k][c] -= v;
            }
            for r in 0..n {
                let v = &qr * &gram[r][j];
                gram[r][k] -= v;
            }
            for l in 0..j {
                let v = &qr * &mu[j][l];
                mu[k][l] -= v;
            }
            mu[k][j] -= qr;
        }
        let lhs = bn[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bn[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            gram.swap(k, k - 1);
            for row in gram.iter_mut() {
                row.swap(k, k - 1);
            }
            (mu, bn) = gram_schmidt(&gram);
            k = (k - 1).max(1);
        }
    }
    (gram, basis)
}

/// All nonzero `x` with `x^T G x <= bound` for positive definite `G`.
fn enumerate_upto(g: &RatMatrix, bound: &Rational) -> Vec<Vec<BigInt>> {
    let n = g.len();
    if n == 0 || bound.is_negative() {
        return Vec::new();
    }
    let (mu, b) = gram_schmidt(g);
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    descend(&mu, &b, n, bound.clone(), &mut x, &mut out);
    out
}

fn descend(mu: &RatMatrix, b: &[Rational], level: usize, budget: Rational, x: &mut [BigInt], out: &mut Vec<Vec<BigInt>>) {
    if level == 0 {
        if !x.iter().all(Zero::is_zero) {
            out.push(x.to_vec());
        }
        return;
    }
    let i = level - 1;
    let mut c = Rational::zero();
    for j in i + 1..x.len() {
        if !x[j].is_zero() {
            c += &mu[j][i] * Rational::from_integer(x[j].clone());
        }
    }
    let cost = |xi: &BigInt| {
        let t = Rational::from_integer(xi.clone()) + &c;
        &b[i] * &t * &t
    };
    // the admissible x_i form an interval around -c; walk out from its nearest integer
    let centre = round_half_up(&-c.clone());
    for dir in [1i32, -1] {
        let mut xi = if dir == 1 { centre.clone() } else { &centre - 1 };
        loop {
            let used = cost(&xi);
            if used > budget {
                break;
            }
            x[i] = xi.clone();
            descend(mu, b, level - 1, &budget - used, x, out);
            xi += dir;
        }
    }
    x[i] = BigInt::zero();
}

fn sign_normalized(v: &[BigInt]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

/// Vectors of norm exactly `norm`, one per `+-` pair.
pub fn short_vectors(q: &QuadraticLattice, norm: &BigInt) -> Result<ShortVectorReport> {
    let sign = definite_sign(q)?;
    let target = Rational::from_integer(norm * sign);
    let mut vectors = Vec::new();
    if target.is_positive() {
        let g = if sign == 1 { q.gram().clone() } else { matrix::scale(q.gram(), &Rational::from_integer((-1).into())) };
        vectors = vectors_of_norm(&g, &target);
    }
    vectors.retain(|v| sign_normalized(v));
    vectors.sort();
    let count_total = 2 * vectors.len();
    Ok(ShortVectorReport { norm_target: norm.clone(), vectors, count_total })
}

/// All vectors (both signs) of norm exactly `target` for positive definite `g`.
fn vectors_of_norm(g: &RatMatrix, target: &Rational) -> Vec<Vec<BigInt>> {
    let n = g.len();
    if n > LLL_THRESHOLD {
        let (reduced, basis) = lll_reduce(g);
        let found = enumerate_upto(&reduced, target);
        return found
            .into_iter()
            .filter(|y| &norm_of(&reduced, y) == target)
            .map(|y| (0..n).map(|c| y.iter().zip(&basis).map(|(yi, row)| yi * &row[c]).sum()).collect())
            .collect();
    }
    enumerate_upto(g, target).into_iter().filter(|y| &norm_of(g, y) == target).collect()
}

fn norm_of(g: &RatMatrix, x: &[BigInt]) -> Rational {
    let xr: Vec<Rational> = x.iter().map(|v| Rational::from_integer(v.clone())).collect();
    matrix::bilinear(g, &xr, &xr)
}

/// Number of roots: vectors of norm `-2` (negative definite) or `2`.
pub fn root_count(q: &QuadraticLattice) -> Result<usize> {
    let sign = definite_sign(q)?;
    Ok(short_vectors(q, &BigInt::from(2 * sign))?.count_total)
}

/// Decompose the root system into irreducible components.
pub fn root_system_identify(q: &QuadraticLattice) -> Result<RootSystem> {
    let sign = definite_sign(q)?;
    let g = if sign == 1 { q.gram().clone() } else { matrix::scale(q.gram(), &Rational::from_integer((-1).into())) };
    let positive = short_vectors(q, &BigInt::from(2 * sign))?.vectors;
    let root_count = 2 * positive.len();
    let set: HashSet<&Vec<BigInt>> = positive.iter().collect();
    let mut decomposable = HashSet::new();
    for (i, a) in positive.iter().enumerate() {
        for b in &positive[i + 1..] {
            let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if set.contains(&s) {
                decomposable.insert(s);
            }
        }
    }
    let simple: Vec<&Vec<BigInt>> = positive.iter().filter(|v| !decomposable.contains(*v)).collect();
    let m = simple.len();
    let sr: Vec<Vec<Rational>> = simple
        .iter()
        .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let mut adj = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if !matrix::bilinear(&g, &sr[i], &sr[j]).is_zero() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut seen = vec![false; m];
    let mut components = Vec::new();
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut nodes = Vec::new();
        seen[s] = true;
        while let Some(v) = stack.pop() {
            nodes.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        components.push(classify(&nodes, &adj)?);
    }
    components.sort();
    let full_rank = m == q.rank();
    let index = if full_rank && m > 0 {
        let root_det = matrix::determinant(&matrix::congruence(&g, &sr));
        let ratio = root_det / q.determinant().abs();
        if !ratio.is_integer() {
            return Err(LatticeError::InvalidArgument("root sublattice determinant is not a multiple".into()));
        }
        Some(ratio.to_integer().sqrt())
    } else if m == 0 && q.rank() == 0 {
        Some(BigInt::one())
    } else {
        None
    };
    Ok(RootSystem { components, root_count, full_rank, index })
}

fn classify(nodes: &[usize], adj: &[Vec<usize>]) -> Result<AdeComponent> {
    let k = nodes.len();
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    let bad = || LatticeError::InvalidArgument("simple roots do not form a Dynkin diagram".into());
    match branch.as_slice() {
        [] => Ok(AdeComponent { kind: 'A', rank: k }),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Ok(AdeComponent { kind: 'D', rank: k }),
                [1, 2, 2] => Ok(AdeComponent { kind: 'E', rank: 6 }),
                [1, 2, 3] => Ok(AdeComponent { kind: 'E', rank: 7 }),
                [1, 2, 4] => Ok(AdeComponent { kind: 'E', rank: 8 }),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Decide whether two definite lattices are isometric.
pub fn is_isometric(q1: &QuadraticLattice, q2: &QuadraticLattice) -> Result<bool> {
    let s1 = definite_sign(q1)?;
    let s2 = definite_sign(q2)?;
    if q1.rank() != q2.rank() {
        return Ok(false);
    }
    if q1.rank() == 0 {
        return Ok(true);
    }
    if s1 != s2 || q1.determinant() != q2.determinant() {
        return Ok(false);
    }
    let neg = Rational::from_integer((-1).into());
    let g1 = if s1 == 1 { q1.gram().clone() } else { matrix::scale(q1.gram(), &neg) };
    let g2 = if s2 == 1 { q2.gram().clone() } else { matrix::scale(q2.gram(), &neg) };
    let (r1, _) = lll_reduce(&g1);
    let n = r1.len();
    let mut pools: BTreeMap<Rational, Vec<Vec<Rational>>> = BTreeMap::new();
    for i in 0..n {
        let t = r1[i][i].clone();
        if pools.contains_key(&t) {
            continue;
        }
        let mut vs = vectors_of_norm(&g2, &t);
        vs.sort();
        let vs = vs.into_iter().map(|v| v.into_iter().map(Rational::from_integer).collect()).collect();
        pools.insert(t, vs);
    }
    let mut chosen: Vec<Vec<Rational>> = Vec::with_capacity(n);
    Ok(backtrack(&r1, &g2, &pools, &mut chosen))
}

fn backtrack(
    target: &RatMatrix,
    g2: &RatMatrix,
    pools: &BTreeMap<Rational, Vec<Vec<Rational>>>,
    chosen: &mut Vec<Vec<Rational>>,
) -> bool {
    let i = chosen.len();
    if i == target.len() {
        return true;
    }
    let pool = &pools[&target[i][i]];
    for v in pool {
        if i == 0 && !v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()) {
            continue;
        }
        if chosen.iter().enumerate().all(|(j, w)| matrix::bilinear(g2, w, v) == target[j][i]) {
            chosen.push(v.clone());
            if backtrack(target, g2, pools, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
