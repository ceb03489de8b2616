//! Ages of finite-order linear maps and the combinatorics behind the
//! canonical-singularity criterion.

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{frac, Rational};
use crate::error::{LatticeError, Result};

/// Orders `d` whose primitive roots of unity generate at most a quadratic field.
pub const SMALL_ORDERS: [u64; 5] = [1, 2, 3, 4, 6];

/// Orders `r` with `phi(r) = 2`.
pub const PHI_TWO_ORDERS: [u64; 3] = [3, 4, 6];

fn q(n: u64, d: u64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Eigenvalues `zeta_m^{a_i}` of a map of order dividing `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueProfile {
    pub order: u64,
    pub exponents: Vec<u64>,
}

impl EigenvalueProfile {
    pub fn new(order: u64, exponents: Vec<u64>) -> Result<Self> {
        if order == 0 {
            return Err(LatticeError::InvalidArgument("order must be positive".into()));
        }
        if let Some(a) = exponents.iter().find(|&&a| a >= order) {
            return Err(LatticeError::InvalidArgument(format!("exponent {a} is not below the order {order}")));
        }
        Ok(Self { order, exponents })
    }

    pub fn inverse(&self) -> Self {
        let exponents = self.exponents.iter().map(|&a| (self.order - a) % self.order).collect();
        Self { order: self.order, exponents }
    }

    /// Profile of `g^f`.
    pub fn power(&self, f: u64) -> Self {
        let exponents = self.exponents.iter().map(|&a| (a * f) % self.order).collect();
        Self { order: self.order, exponents }
    }
}

pub fn age(p: &EigenvalueProfile) -> Rational {
    q(p.exponents.iter().sum(), p.order)
}

pub fn is_quasi_reflection(p: &EigenvalueProfile) -> bool {
    let n = p.exponents.len();
    n > 0 && p.exponents.iter().filter(|&&a| a == 0).count() == n - 1
}

pub fn is_reflection(p: &EigenvalueProfile) -> bool {
    is_quasi_reflection(p) && p.exponents.iter().any(|&a| 2 * a == p.order)
}

fn totatives(r: u64) -> Vec<u64> {
    (1..=r).filter(|k| k.gcd(&r) == 1).collect()
}

fn check_unit(r: u64, k2: u64) -> Result<u64> {
    if r == 0 {
        return Err(LatticeError::InvalidArgument("r must be positive".into()));
    }
    if k2.gcd(&r) != 1 {
        return Err(LatticeError::InvalidArgument(format!("k2 = {k2} is not coprime to r = {r}")));
    }
    Ok(k2 % r)
}

/// `sum {k2/r + k/r}` over the totatives `k` of `r` other than `k1 = -k2 mod r`.
pub fn c_w(r: u64, k2: u64) -> Result<Rational> {
    let k2 = check_unit(r, k2)?;
    let k1 = if k2 == 0 { r } else { r - k2 };
    let s: u64 = totatives(r).into_iter().filter(|&k| k != k1).map(|k| (k + k2) % r).sum();
    Ok(q(s, r))
}

/// `sum {a/d + k2/r}` over `1 <= a <= d` coprime to `d`.
pub fn t_d(d: u64, r: u64, k2: u64) -> Result<Rational> {
    if !SMALL_ORDERS.contains(&d) {
        return Err(LatticeError::InvalidArgument(format!("d = {d} is not one of 1, 2, 3, 4, 6")));
    }
    let k2 = check_unit(r, k2)?;
    Ok(totatives(d).into_iter().map(|a| frac(&(q(a, d) + q(k2, r)))).sum())
}

/// Multiplicities `v_d` of the primitive `d`-th roots among the remaining
/// eigenvalues, for `d` in [`SMALL_ORDERS`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgeDecomposition {
    pub r: u64,
    pub k2: u64,
    pub v: [u64; 5],
}

impl AgeDecomposition {
    /// `v_1 + v_2 + 2 v_3 + 2 v_4 + 2 v_6`.
    pub fn dimension(&self) -> u64 {
        self.v[0] + self.v[1] + 2 * (self.v[2] + self.v[3] + self.v[4])
    }

    pub fn v_d(&self, d: u64) -> u64 {
        SMALL_ORDERS.iter().position(|&x| x == d).map_or(0, |i| self.v[i])
    }
}

/// Age of the decomposition in dimension `n`.
pub fn decomposition_age(dec: &AgeDecomposition, n: u64) -> Result<Rational> {
    if dec.dimension() != n {
        return Err(LatticeError::InvalidArgument(format!(
            "multiplicities give dimension {}, expected {n}",
            dec.dimension()
        )));
    }
    let mut total = c_w(dec.r, dec.k2)?;
    for (i, &d) in SMALL_ORDERS.iter().enumerate() {
        if dec.v[i] > 0 {
            total += t_d(d, dec.r, dec.k2)? * Rational::from_integer(dec.v[i].into());
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RstMinimum {
    pub n: u64,
    pub min: Rational,
    pub witness: AgeDecomposition,
}

/// Minimum of [`decomposition_age`] over `r` in `{3, 4, 6}`, all `k2` and all
/// multiplicities of total dimension `n`.
///
/// Ties keep the first decomposition found, scanning `r`, `k2`, `v_3`, `v_4`,
/// `v_6`, `v_2` upward.
pub fn rst_min_age(n: u64) -> Result<RstMinimum> {
    if n == 0 {
        return Err(LatticeError::InvalidArgument("n must be positive".into()));
    }
    let mut best: Option<RstMinimum> = None;
    for r in PHI_TWO_ORDERS {
        for k2 in (1..r).filter(|k| k.gcd(&r) == 1) {
            let cw = c_w(r, k2)?;
            let t: Vec<Rational> = SMALL_ORDERS.iter().map(|&d| t_d(d, r, k2)).collect::<Result<_>>()?;
            for v3 in 0..=n / 2 {
                for v4 in 0..=(n / 2 - v3) {
                    for v6 in 0..=(n / 2 - v3 - v4) {
                        let rest = n - 2 * (v3 + v4 + v6);
                        for v2 in 0..=rest {
                            let v = [rest - v2, v2, v3, v4, v6];
                            let value = v
                                .iter()
                                .zip(&t)
                                .fold(cw.clone(), |acc, (&m, td)| acc + td * Rational::from_integer(m.into()));
                            if best.as_ref().is_none_or(|b| value < b.min) {
                                best = Some(RstMinimum { n, min: value, witness: AgeDecomposition { r, k2, v } });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(best.expect("nonempty search space"))
}

/// `r * c_w(r, k2)` in integer arithmetic.
///
/// The sum does not depend on how the totatives are ordered or paired, and
/// the excluded `k1 = -k2` contributes 0, so it equals
/// `sum T + phi k2 - r #{k in T : k >= r - k2}`.
struct TotativeSums {
    r: u64,
    phi: u64,
    total: u64,
    // at_least[j] = #{k in T : k >= j}
    at_least: Vec<u64>,
}

impl TotativeSums {
    fn new(r: u64) -> Self {
        let mut at_least = vec![0u64; r as usize + 2];
        for j in (1..=r).rev() {
            at_least[j as usize] = at_least[j as usize + 1] + u64::from(j.gcd(&r) == 1);
        }
        let t = totatives(r);
        Self { r, phi: t.len() as u64, total: t.iter().sum(), at_least }
    }

    fn scaled_sum(&self, k2: u64) -> u64 {
        self.total + self.phi * k2 - self.r * self.at_least[(self.r - k2) as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeisuViolation {
    pub r: u64,
    pub k2: u64,
    pub sum: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeisuReport {
    pub r_max: u64,
    /// Orders `r <= r_max` with `phi(r) > 2`.
    pub orders_checked: u64,
    /// Pairs `(r, k2)` checked.
    pub cases_checked: u64,
    pub violations: Vec<SeisuViolation>,
    /// Orders with `phi(r) > 2` and no `a` in `(r/4, 3r/4)` coprime to `r`.
    pub orders_without_witness: Vec<u64>,
}

/// Integers `a` with `r/4 < a < 3r/4` and `gcd(a, r) = 1`.
pub fn seisu_witnesses(r: u64) -> Vec<u64> {
    (1..r).filter(|&a| 4 * a > r && 4 * a < 3 * r && a.gcd(&r) == 1).collect()
}

fn phi(r: u64) -> u64 {
    (1..=r).filter(|k| k.gcd(&r) == 1).count() as u64
}

/// Check `c_w(r, k2) > 1` for every `r <= r_max` with `phi(r) > 2` and every
/// unit `k2`.
pub fn seisu_verify(r_max: u64) -> Result<SeisuReport> {
    if r_max < 5 {
        return Err(LatticeError::InvalidArgument("r_max must be at least 5".into()));
    }
    let per_order: Vec<(u64, u64, Vec<SeisuViolation>, bool)> = (3..=r_max)
        .into_par_iter()
        .filter(|&r| phi(r) > 2)
        .map(|r| {
            let sums = TotativeSums::new(r);
            let mut bad = Vec::new();
            let mut cases = 0;
            for k2 in (1..r).filter(|k| k.gcd(&r) == 1) {
                cases += 1;
                let s = sums.scaled_sum(k2);
                if s <= r {
                    bad.push(SeisuViolation { r, k2, sum: q(s, r) });
                }
            }
            (r, cases, bad, seisu_witnesses(r).is_empty())
        })
        .collect();
    let mut report = SeisuReport {
        r_max,
        orders_checked: per_order.len() as u64,
        cases_checked: 0,
        violations: Vec::new(),
        orders_without_witness: Vec::new(),
    };
    for (r, cases, bad, no_witness) in per_order {
        report.cases_checked += cases;
        report.violations.extend(bad);
        if no_witness {
            report.orders_without_witness.push(r);
        }
    }
    Ok(report)
}

/// `{a_n f / k} + sum_{i < n} {a_i f / (k l)}` for `g` of order `k l` whose
/// `k`-th power is a quasi-reflection of order `l` along the last coordinate.
pub fn age_prime(p: &EigenvalueProfile, k: u64, ell: u64, f: u64) -> Result<Rational> {
    let bad = |m: String| Err(LatticeError::InvalidArgument(m));
    let Some((&a_n, rest)) = p.exponents.split_last() else {
        return bad("empty profile".into());
    };
    if k == 0 || ell < 2 || p.order != k * ell {
        return bad(format!("order {} is not k l = {k} * {ell}", p.order));
    }
    if f == 0 || f >= k {
        return bad(format!("f = {f} is not in [1, k)"));
    }
    if rest.iter().any(|a| a % ell != 0) || a_n.gcd(&ell) != 1 {
        return bad("the k-th power is not a quasi-reflection of order l along the last coordinate".into());
    }
    let mut total = frac(&q(a_n * f, k));
    for &a in rest {
        total += frac(&q(a * f, k * ell));
    }
    Ok(total)
}

/// Whether an `r` with `phi(r) <= 2` is handled outside [`rst_min_age`].
pub fn is_small_order(r: u64) -> bool {
    r == 1 || r == 2
}
