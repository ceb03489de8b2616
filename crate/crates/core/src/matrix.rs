//! Dense exact matrices over `Q` and `Z`, stored row-major as nested vectors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{LatticeError, Result};

pub type RatMatrix = Vec<Vec<Rational>>;
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> RatMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> RatMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect()
}

pub fn int_from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_rational(m: &IntMatrix) -> RatMatrix {
    m.iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

pub fn is_integral(m: &RatMatrix) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_integer()))
}

pub fn to_integer(m: &RatMatrix) -> Result<IntMatrix> {
    if !is_integral(m) {
        return Err(LatticeError::NonIntegralMatrix);
    }
    Ok(m.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect())
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc += x * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// `x^T G y`.
pub fn bilinear(g: &RatMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !g[i][j].is_zero() {
                acc += xi * &g[i][j] * yj;
            }
        }
    }
    acc
}

/// `B G B^T` for a basis given as rows of `B`.
pub fn congruence(g: &RatMatrix, basis: &RatMatrix) -> RatMatrix {
    mul(&mul(basis, g), &transpose(basis))
}

pub fn sub(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn scale(a: &RatMatrix, k: &Rational) -> RatMatrix {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

pub fn block_diag(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[n + i][n + j] = b[i][j].clone();
        }
    }
    out
}

pub fn is_symmetric(m: &RatMatrix) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Determinant by Gaussian elimination over `Q`.
pub fn determinant(m: &RatMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn inverse(m: &RatMatrix) -> Result<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.clone();
    let mut inv = identity(n);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(LatticeError::Degenerate)?;
        a.swap(p, c);
        inv.swap(p, c);
        let pivot = a[c][c].clone();
        for k in 0..n {
            a[c][k] /= &pivot;
            inv[c][k] /= &pivot;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
                let t = &f * &inv[c][k];
                inv[r][k] -= t;
            }
        }
    }
    Ok(inv)
}

/// Diagonalize a symmetric matrix by congruence: returns `(T, D)` with
/// `T G T^T = diag(D)`.
///
/// Zero pivots are handled by swapping in a nonzero diagonal entry, or, when
/// the remaining diagonal vanishes, by adding a row with a nonzero pairing.
pub fn symmetric_diagonalize(g: &RatMatrix) -> (RatMatrix, Vec<Rational>) {
    let n = g.len();
    let mut a = g.clone();
    let mut t = identity(n);
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
                t.swap(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // row_i += row_j, col_i += col_j: new diagonal is 2 a_ij
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                for k in 0..n {
                    let v = t[j][k].clone();
                    t[i][k] += v;
                }
            }
        }
        let pivot = a[i][i].clone();
        if !pivot.is_zero() {
            for r in i + 1..n {
                if a[r][i].is_zero() {
                    continue;
                }
                let f = &a[r][i] / &pivot;
                for k in 0..n {
                    let v = &f * &a[i][k];
                    a[r][k] -= v;
                }
                for k in 0..n {
                    let v = &f * &a[k][i];
                    a[k][r] -= v;
                }
                for k in 0..n {
                    let v = &f * &t[i][k];
                    t[r][k] -= v;
                }
            }
        }
        diag.push(pivot);
    }
    (t, diag)
}

/// `(positive, negative, zero)` counts of the inertia.
pub fn inertia(g: &RatMatrix) -> (usize, usize, usize) {
    let (_, d) = symmetric_diagonalize(g);
    let pos = d.iter().filter(|x| x.is_positive()).count();
    let neg = d.iter().filter(|x| x.is_negative()).count();
    (pos, neg, d.len() - pos - neg)
}
