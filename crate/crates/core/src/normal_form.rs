//! Hermite and Smith normal forms over `Z`, integer kernels and saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{int_identity, transpose, IntMatrix};

fn row_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    // row_target -= q * row_src
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let v = q * &row[src];
            row[target] -= v;
        }
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Row Hermite normal form `H = U A` with `U` unimodular.
///
/// Pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`. Zero rows of `H` sit at the bottom.
pub fn hermite_with_transform(a: &IntMatrix, ncols: usize) -> (IntMatrix, IntMatrix) {
    let m = a.len();
    let mut h = a.clone();
    let mut u = int_identity(m);
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(p) = pivot else { break };
            h.swap(p, r);
            u.swap(p, r);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Basis (rows) of the lattice spanned by the rows of `a`.
pub fn row_basis(a: &IntMatrix, ncols: usize) -> IntMatrix {
    let (h, _) = hermite_with_transform(a, ncols);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Saturated basis (rows) of `{x in Z^n : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix, ncols: usize) -> IntMatrix {
    if m.is_empty() {
        return int_identity(ncols);
    }
    let mt = transpose(m);
    let (h, u) = hermite_with_transform(&mt, m.len());
    h.iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(|x| x.is_zero()))
        .map(|(_, urow)| urow)
        .collect()
}

/// Saturation of the row lattice of `b` inside `Z^n`.
pub fn saturation(b: &IntMatrix, ncols: usize) -> IntMatrix {
    let k = integer_kernel(b, ncols);
    integer_kernel(&k, ncols)
}

/// Smith normal form `D = U A V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub fn smith_form(a: &IntMatrix, ncols: usize) -> SmithForm {
    let m = a.len();
    let n = ncols;
    let mut d = a.clone();
    let mut u = int_identity(m);
    let mut v = int_identity(n);
    let steps = m.min(n);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(pi, t);
            u.swap(pi, t);
            swap_cols(&mut d, pj, t);
            swap_cols(&mut v, pj, t);
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match offending {
                Some(i) => {
                    let neg_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &neg_one);
                    row_axpy(&mut u, t, i, &neg_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diagonal = (0..steps).map(|i| d[i][i].clone()).collect();
    SmithForm { diagonal, left: u, right: v }
}

/// Nonzero elementary divisors of `a`.
pub fn elementary_divisors(a: &IntMatrix, ncols: usize) -> Vec<BigInt> {
    smith_form(a, ncols).diagonal.into_iter().filter(|x| !x.is_zero()).collect()
}
