//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hermlat_core::arith::{int, rat, units, FieldElement, Rational};
use hermlat_core::definite::{root_count, short_vectors};
use hermlat_core::embeddings::{orthogonal_complement, saturation, Sublattice};
use hermlat_core::general_type::{
    find_case, quasi_pullback_weight, root_extracted_weight, verify_catalog, VerdictStatus,
};
use hermlat_core::lattices::{self, hermitian as models, parse_label};
use hermlat_core::matrix::{self, RatMatrix};
use hermlat_core::singularity::{
    age, c_w, rst_min_age, seisu_verify, seisu_witnesses, t_d, AgeDecomposition, EigenvalueProfile,
    PHI_TWO_ORDERS, SMALL_ORDERS,
};
use hermlat_core::{trace_form, HermitianLattice, HermitianMap, QuadraticLattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn q(rows: &[Vec<i64>]) -> RatMatrix {
    matrix::from_i64(rows)
}

// 1. Trace forms of the four building blocks, entry by entry.
fn trace_form_fidelity() -> Outcome {
    let start = Instant::now();
    let a_q = q(&[vec![0, 0, 0, -1], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![-1, 0, 0, 0]]);
    let b_q = q(&[
        vec![2, 0, 0, -1, 0, -1, 1, 0],
        vec![0, 2, 1, 0, 1, 0, 0, 1],
        vec![0, 1, 2, 0, 1, 0, 0, 1],
        vec![-1, 0, 0, 2, 0, 1, -1, 0],
        vec![0, 1, 1, 0, 2, 0, 1, 0],
        vec![-1, 0, 0, 1, 0, 2, 0, 1],
        vec![1, 0, 0, -1, 1, 0, 2, 0],
        vec![0, 1, 1, 0, 0, 1, 0, 2],
    ]);
    let d_q = q(&[
        vec![2, 1, 0, 0, 0, 1, 0, 1],
        vec![1, 2, 0, 0, -1, 0, -1, 0],
        vec![0, 0, 2, 1, 0, 1, 0, -1],
        vec![0, 0, 1, 2, -1, 0, 1, 0],
        vec![0, -1, 0, -1, 2, 1, 0, 0],
        vec![1, 0, 1, 0, 1, 2, 0, 0],
        vec![0, -1, 0, 1, 0, 0, 2, 1],
        vec![1, 0, -1, 0, 0, 0, 1, 2],
    ]);
    let pairs = [
        ("A", models::matrix_a(), &a_q),
        ("B", models::matrix_b(), &b_q),
        ("C", models::matrix_c(), &a_q),
        ("D", models::matrix_d(), &d_q),
    ];
    for (name, h, expected) in pairs {
        let got = trace_form(&h);
        ensure(got.gram() == expected, || format!("trace form of {name} differs: {:?}", got.gram()))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok("A_Q, B_Q, C_Q = A_Q, D_Q entry-exact".into())
}

// 2. Both Hermitian models realize II_{2,26}.
fn unimodular_realization() -> Outcome {
    let start = Instant::now();
    let mut out = Vec::new();
    for d in [-1, -3] {
        let q = models::ambient(d).map_err(|e| e.to_string())?.trace_lattice();
        let sig = q.signature();
        ensure(q.is_even(), || format!("d = {d}: not even"))?;
        ensure(q.determinant().abs() == int(1), || format!("d = {d}: det {}", q.determinant()))?;
        ensure(sig.positive == 2 && sig.negative == 26, || format!("d = {d}: signature {sig}"))?;
        out.push(format!("d={d}: even, det {}, {sig}", q.determinant()));
    }
    within(start, Duration::from_secs(1))?;
    Ok(out.join("; "))
}

/// Root count of an irreducible root lattice from its type alone.
fn ade_roots(kind: char, n: u64) -> u64 {
    match (kind, n) {
        ('A', n) => n * (n + 1),
        ('D', n) => 2 * n * (n - 1),
        ('E', 6) => 72,
        ('E', 7) => 126,
        ('E', 8) => 240,
        _ => unreachable!(),
    }
}

// 3. Root counts by enumeration.
fn root_counts() -> Outcome {
    let start = Instant::now();
    let table: [(&str, usize, u64); 10] = [
        ("A1(-1)^2", 4, 2 * ade_roots('A', 1)),
        ("A2(-1)", 6, ade_roots('A', 2)),
        ("A2(-1)^2", 12, 2 * ade_roots('A', 2)),
        ("A2(-1)^3", 18, 3 * ade_roots('A', 2)),
        ("A2(-1)^4", 24, 4 * ade_roots('A', 2)),
        ("D4(-1)", 24, ade_roots('D', 4)),
        ("A2(-1)+D4(-1)", 30, ade_roots('A', 2) + ade_roots('D', 4)),
        ("E8", 240, ade_roots('E', 8)),
        ("A1+D4", 26, ade_roots('A', 1) + ade_roots('D', 4)),
        ("A1+A1+A3", 16, 2 * ade_roots('A', 1) + ade_roots('A', 3)),
    ];
    for (label, expected, formula) in table {
        let l = parse_label(label).and_then(|l| l.lattice()).map_err(|e| e.to_string())?;
        let got = root_count(&l).map_err(|e| e.to_string())?;
        ensure(got == expected && got as u64 == formula, || format!("{label}: {got} roots, expected {expected}"))?;
    }
    let d5 = root_count(&lattices::root_lattice('D', 5).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(d5 as u64 == ade_roots('D', 5), || format!("D5: {d5}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("10 lattices exact; D5 enumerates to {d5} (42 printed)"))
}

// 4. Weights of the quasi-pullbacks and their roots.
fn weight_tables() -> Outcome {
    let start = Instant::now();
    let labels = ["A1(-1)^2", "A2(-1)", "A2(-1)^2", "A2(-1)^3", "A2(-1)^4", "D4(-1)", "A2(-1)+D4(-1)"];
    let mut weights = Vec::new();
    for l in labels {
        let lat = parse_label(l).and_then(|x| x.lattice()).map_err(|e| e.to_string())?;
        let r = root_count(&lat).map_err(|e| e.to_string())?;
        weights.push(quasi_pullback_weight(r as u64).map_err(|e| e.to_string())?.weight);
    }
    let expect: Vec<Rational> = [14, 15, 18, 21, 24, 24, 27].iter().map(|&x| int(x)).collect();
    ensure(weights == expect, || format!("weights {weights:?}"))?;
    let sq: Vec<Rational> = [&weights[0], &weights[2]]
        .iter()
        .map(|w| root_extracted_weight(w, -1))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(sq == vec![int(7), int(9)], || format!("square roots {sq:?}"))?;
    let cube: Vec<Rational> = weights[1..]
        .iter()
        .map(|w| root_extracted_weight(w, -3))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let expect3: Vec<Rational> = [5, 6, 7, 8, 8, 9].iter().map(|&x| int(x)).collect();
    ensure(cube == expect3, || format!("third roots {cube:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("14 15 18 21 24 24 27 | 7 9 | 5 6 7 8 8 9".into())
}

// 5. The c^w / t_d table as printed, all 36 entries.
fn cw_td_table() -> Outcome {
    let start = Instant::now();
    let cols: [(u64, u64); 6] = [(3, 1), (3, 2), (4, 1), (4, 3), (6, 1), (6, 5)];
    // rows: c^w, t_1, t_2, t_3, t_4, t_6; entries as (num, den)
    let printed: [[(i64, i64); 6]; 6] = [
        [(2, 3), (1, 3), (1, 2), (1, 2), (1, 3), (2, 3)],
        [(1, 3), (2, 3), (1, 4), (3, 4), (1, 6), (5, 6)],
        [(5, 6), (1, 6), (3, 4), (1, 4), (2, 3), (1, 3)],
        [(2, 3), (1, 3), (3, 2), (1, 2), (4, 3), (2, 3)],
        [(2, 3), (4, 3), (1, 2), (1, 2), (4, 3), (2, 3)],
        [(2, 3), (4, 3), (1, 2), (2, 3), (1, 3), (2, 3)],
    ];
    let row_names = ["c^w", "t1", "t2", "t3", "t4", "t6"];
    let mut mismatches = Vec::new();
    for (ci, &(r, k2)) in cols.iter().enumerate() {
        for (ri, name) in row_names.iter().enumerate() {
            let got = if ri == 0 { c_w(r, k2) } else { t_d(SMALL_ORDERS[ri - 1], r, k2) }.map_err(|e| e.to_string())?;
            let (n, d) = printed[ri][ci];
            if got != rat(n, d) {
                mismatches.push(format!("{name}({r},{k2}) = {got}, table {n}/{d}"));
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    ensure(mismatches.is_empty(), || format!("{} of 36 entries differ: {}", mismatches.len(), mismatches.join("; ")))?;
    Ok("36/36 entries".into())
}

/// Minimum age over all decompositions of dimension `n`, computed from
/// explicit eigenvalue exponents at the common order 12.
fn rst_oracle(n: u64) -> Rational {
    const N: u64 = 12;
    let mut best: Option<Rational> = None;
    for r in PHI_TWO_ORDERS {
        for k2 in (1..r).filter(|k| k.gcd(&r) == 1) {
            let k1 = r - k2;
            let head: Vec<u64> =
                (1..r).filter(|&k| k.gcd(&r) == 1 && k != k1).map(|k| (k + k2) * (N / r) % N).collect();
            let half = n / 2;
            for v3 in 0..=half {
                for v4 in 0..=half - v3 {
                    for v6 in 0..=half - v3 - v4 {
                        let rest = n - 2 * (v3 + v4 + v6);
                        for v2 in 0..=rest {
                            let mult = [rest - v2, v2, v3, v4, v6];
                            let mut exps = head.clone();
                            for (&d, &m) in SMALL_ORDERS.iter().zip(&mult) {
                                for a in (1..=d).filter(|a| a.gcd(&d) == 1) {
                                    for _ in 0..m {
                                        exps.push((a * (N / d) + k2 * (N / r)) % N);
                                    }
                                }
                            }
                            let value = age(&EigenvalueProfile::new(N, exps).expect("valid exponents"));
                            if best.as_ref().is_none_or(|b| &value < b) {
                                best = Some(value);
                            }
                        }
                    }
                }
            }
        }
    }
    best.expect("nonempty")
}

// 6. Minimal ages: below 1 only in dimension 3.
fn rst_thresholds() -> Outcome {
    let start = Instant::now();
    let mut mins = Vec::new();
    for n in 3..=8 {
        let m = rst_min_age(n).map_err(|e| e.to_string())?;
        let oracle = rst_oracle(n);
        ensure(m.min == oracle, || format!("n = {n}: search {} vs oracle {oracle}", m.min))?;
        if n == 3 {
            ensure(m.min < int(1), || format!("n = 3: min {}", m.min))?;
            ensure(m.min == rat(5, 6), || format!("n = 3: min {}", m.min))?;
            let w = AgeDecomposition { r: 3, k2: 2, v: [0, 3, 0, 0, 0] };
            ensure(m.witness == w, || format!("n = 3: witness {:?}", m.witness))?;
        } else {
            ensure(m.min >= int(1), || format!("n = {n}: min {}", m.min))?;
        }
        mins.push(format!("{n}:{}", m.min));
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("min ages {} (witness r=3, k2=2, v2=3)", mins.join(" ")))
}

// 7. c^w > 1 for every order with phi(r) > 2 up to 2000.
fn seisu_certification() -> Outcome {
    let start = Instant::now();
    let report = seisu_verify(2000).map_err(|e| e.to_string())?;
    ensure(report.violations.is_empty(), || format!("{} violations: {:?}", report.violations.len(), &report.violations[..report.violations.len().min(5)]))?;
    ensure(report.orders_without_witness.is_empty(), || format!("orders without witness {:?}", report.orders_without_witness))?;
    for (r, a) in [(5, 3), (7, 2), (8, 3), (9, 4)] {
        ensure(seisu_witnesses(r).contains(&a), || format!("{a} is not a witness for {r}"))?;
    }
    // direct rational sums on small orders
    for r in 5..=150u64 {
        let phi = (1..=r).filter(|k| k.gcd(&r) == 1).count();
        if phi <= 2 {
            continue;
        }
        for k2 in (1..r).filter(|k| k.gcd(&r) == 1) {
            let v = c_w(r, k2).map_err(|e| e.to_string())?;
            ensure(v > int(1), || format!("c_w({r}, {k2}) = {v}"))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "0 violations over {} orders and {} unit choices; witnesses 5->3 7->2 8->3 9->4",
        report.orders_checked, report.cases_checked
    ))
}

// 8. Every catalog case passes the full pipeline.
fn catalog_verification() -> Outcome {
    let start = Instant::now();
    let verdicts = verify_catalog(true);
    ensure(verdicts.len() == 8, || format!("{} cases", verdicts.len()))?;
    for v in &verdicts {
        ensure(v.status == VerdictStatus::GeneralTypeConditionalOnStar, || {
            format!("{}: {} {:?}", v.case, v.status, v.failed_conditions)
        })?;
    }
    for (name, detail) in [("d1-A1x2", "12 > (24 + 4)/4 = 7"), ("d3-A2x4", "9 > (24 + 24)/6 = 8")] {
        let case = find_case(name).ok_or_else(|| format!("missing {name}"))?;
        let v = verdicts.iter().find(|v| v.case == case.name).ok_or("missing verdict")?;
        let ok = v.checks.iter().any(|c| c.name == "n > (24 + r)/#units" && c.passed && c.detail == detail);
        ensure(ok, || format!("{name}: inequality detail missing"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok("8/8 GENERAL_TYPE_CONDITIONAL_ON_STAR".into())
}

// 9. Randomized suites.

fn fe(a: i64, b: i64, d: i64) -> FieldElement {
    FieldElement::new(int(a), int(b), d).unwrap()
}

fn ring_element(d: i64) -> impl Strategy<Value = FieldElement> {
    (-4i64..=4, -4i64..=4).prop_map(move |(p, q)| FieldElement::from_theta_coords(int(p), int(q), d))
}

fn field_d() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![-1i64, -2, -3, -5, -7, -11])
}

/// Hermitian Gram matrices whose trace form is integral by construction.
fn integral_hermitian() -> impl Strategy<Value = (i64, Vec<Vec<FieldElement>>)> {
    (field_d(), 1usize..=3).prop_flat_map(|(d, n)| {
        let off = prop::collection::vec(ring_element(d), n * (n - 1) / 2);
        let diag = prop::collection::vec(-6i64..=6, n);
        (Just(d), Just(n), off, diag).prop_map(|(d, n, off, diag)| {
            // off-diagonal entries in the inverse different; diagonal in Z/2 or Z
            let delta = if d.rem_euclid(4) == 1 { FieldElement::sqrt_d(d) } else { &FieldElement::sqrt_d(d) * &fe(2, 0, d) };
            let dinv = delta.inverse().unwrap();
            let diag_den = if d.rem_euclid(4) == 1 { 1 } else { 2 };
            let mut g = vec![vec![FieldElement::zero(d); n]; n];
            let mut it = off.into_iter();
            for i in 0..n {
                g[i][i] = FieldElement::from_rational(rat(diag[i], diag_den), d);
                for j in i + 1..n {
                    let x = &it.next().unwrap() * &dinv;
                    g[j][i] = x.conjugate();
                    g[i][j] = x;
                }
            }
            (d, g)
        })
    })
}

fn run(name: &str, cases: u32, mut body: impl FnMut(&mut TestRunner) -> Result<(), String>) -> Result<String, String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    body(&mut runner).map_err(|e| format!("{name}: {e}"))?;
    Ok(format!("{name} x{cases}"))
}

fn fail<T: std::fmt::Display>(e: T) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn preserves_form(l: &HermitianLattice, g: &HermitianMap) -> bool {
    let n = l.rank();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let gi: Vec<FieldElement> = (0..n).map(|k| g.matrix[k][i].clone()).collect();
            let gj: Vec<FieldElement> = (0..n).map(|k| g.matrix[k][j].clone()).collect();
            l.pairing(&gi, &gj) == l.gram()[i][j]
        })
    })
}

fn tau_involution(runner: &mut TestRunner) -> Result<(), String> {
    let strat = integral_hermitian().prop_flat_map(|(d, g)| {
        let n = g.len();
        let us = units(d).unwrap().into_iter().filter(|u| !u.is_one()).collect::<Vec<_>>();
        (Just(d), Just(g), prop::collection::vec(ring_element(d), n), prop::sample::select(us))
    });
    runner
        .run(&strat, |(d, g, r, xi)| {
            let Ok(l) = HermitianLattice::new(d, g) else { return Err(TestCaseError::reject("degenerate")) };
            if l.pairing(&r, &r).is_zero() {
                return Err(TestCaseError::reject("isotropic"));
            }
            let t = l.tau_reflection(&r, &xi).map_err(fail)?;
            let t_inv = l.tau_reflection(&r, &xi.inverse().unwrap()).map_err(fail)?;
            prop_assert_eq!(t.compose(&t_inv), HermitianMap::identity(l.rank(), d));
            prop_assert_eq!(t_inv.compose(&t), HermitianMap::identity(l.rank(), d));
            prop_assert!(preserves_form(&l, &t));
            let image = t.apply(&r);
            let scaled: Vec<FieldElement> = r.iter().map(|x| x * &xi).collect();
            prop_assert_eq!(image, scaled);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn symmetric_int(max_rank: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rank).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |v| {
            let mut g = vec![vec![0; n]; n];
            let mut it = v.into_iter();
            for i in 0..n {
                for j in i..n {
                    let x = it.next().unwrap();
                    g[i][j] = x;
                    g[j][i] = x;
                }
            }
            g
        })
    })
}

fn sigma_involution(runner: &mut TestRunner) -> Result<(), String> {
    let strat = symmetric_int(5, 4).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), prop::collection::vec(-3i64..=3, n))
    });
    runner
        .run(&strat, |(g, r)| {
            let Ok(l) = QuadraticLattice::from_i64(&g) else { return Err(TestCaseError::reject("degenerate")) };
            let rq: Vec<Rational> = r.iter().map(|&x| int(x)).collect();
            if l.norm(&rq).is_zero() {
                return Err(TestCaseError::reject("isotropic"));
            }
            let rb: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            let s = l.sigma_reflection(&rb).map_err(fail)?;
            prop_assert_eq!(matrix::mul(&s, &s), matrix::identity(l.rank()));
            prop_assert!(l.is_isometry(&s));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn evenness(runner: &mut TestRunner) -> Result<(), String> {
    runner
        .run(&integral_hermitian(), |(d, g)| {
            let Ok(l) = HermitianLattice::new(d, g) else { return Err(TestCaseError::reject("degenerate")) };
            prop_assert!(l.is_integral());
            let tq = trace_form(&l);
            prop_assert_eq!(l.is_even().map_err(fail)?, tq.is_even());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn discriminant_order(runner: &mut TestRunner) -> Result<(), String> {
    runner
        .run(&symmetric_int(4, 6), |g| {
            let Ok(l) = QuadraticLattice::from_i64(&g) else { return Err(TestCaseError::reject("degenerate")) };
            let dg = l.discriminant_group().map_err(fail)?;
            prop_assert_eq!(Rational::from_integer(dg.order()), l.determinant().abs());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Positive definite Gram matrices `B B^T` of rank at most 4.
fn positive_definite() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_map(|b| {
            let n = b.len();
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| b[i][k] * b[j][k]).sum()).collect()).collect()
        })
    })
}

fn naive_count(g: &[Vec<i64>], norm: i64) -> Option<Vec<Vec<i64>>> {
    let n = g.len();
    let inv = matrix::inverse(&matrix::from_i64(g)).ok()?;
    // |x_i|^2 <= norm * (G^-1)_ii
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let b = &inv[i][i] * int(norm);
            let mut k = 0i64;
            while int((k + 1) * (k + 1)) <= b {
                k += 1;
            }
            k
        })
        .collect();
    let mut found = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let v: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum();
        let first = x.iter().find(|&&c| c != 0);
        if v == norm && first.is_some_and(|&c| c > 0) {
            found.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                found.sort();
                return Some(found);
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

fn short_vector_box(runner: &mut TestRunner) -> Result<(), String> {
    let strat = (positive_definite(), 1i64..=8, any::<bool>());
    runner
        .run(&strat, |(g, norm, negate)| {
            let Ok(l) = QuadraticLattice::from_i64(&g) else { return Err(TestCaseError::reject("degenerate")) };
            let expected = naive_count(&g, norm).unwrap();
            let (lat, target) = if negate { (l.rescale(-1).map_err(fail)?, -norm) } else { (l, norm) };
            let got = short_vectors(&lat, &BigInt::from(target)).map_err(fail)?;
            let got: Vec<Vec<i64>> =
                got.vectors.iter().map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
            prop_assert_eq!(got, expected);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn double_complement(runner: &mut TestRunner) -> Result<(), String> {
    let strat = symmetric_int(6, 3).prop_filter("rank >= 2", |g| g.len() >= 2).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), (1..n).prop_flat_map(move |k| prop::collection::vec(prop::collection::vec(-3i64..=3, n), k)))
    });
    runner
        .run(&strat, |(g, rows)| {
            let Ok(amb) = QuadraticLattice::from_i64(&g) else { return Err(TestCaseError::reject("degenerate")) };
            let Ok(sub) = Sublattice::new(amb, matrix::int_from_i64(&rows)) else {
                return Err(TestCaseError::reject("dependent"));
            };
            if matrix::determinant(&sub.gram()).is_zero() {
                return Err(TestCaseError::reject("degenerate restriction"));
            }
            let cc = orthogonal_complement(&orthogonal_complement(&sub).map_err(fail)?).map_err(fail)?;
            prop_assert!(cc.same_span(&saturation(&sub)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `2 Re(x)`, the quadratic pairing ratio for `x = <l, r>/<r, r>`.
fn alpha(x: &FieldElement) -> Rational {
    x.a() * int(2)
}

fn unit_arithmetic(runner: &mut TestRunner) -> Result<(), String> {
    let strat = (-1_000_000i64..=1_000_000, -1_000_000i64..=1_000_000);
    runner
        .run(&strat, |(a, b)| {
            // Gaussian: (1 -+ i) x = a + b i
            let z = fe(a, b, -1);
            let x = z.checked_div(&fe(1, -1, -1)).unwrap();
            prop_assert_eq!(alpha(&x), int(a - b));
            let x = z.checked_div(&fe(1, 1, -1)).unwrap();
            prop_assert_eq!(alpha(&x), int(a + b));

            // Eisenstein: c x = a + omega b
            let w = FieldElement::new(rat(-1, 2), rat(1, 2), -3).unwrap();
            let w2 = &w * &w;
            let one = FieldElement::one(-3);
            let z = &FieldElement::from_int(a, -3) + &(&w * &FieldElement::from_int(b, -3));
            let ratio = |c: &FieldElement| z.checked_div(c).unwrap();
            prop_assert_eq!(alpha(&ratio(&(&one - &w))), int(a - b));
            prop_assert_eq!(alpha(&ratio(&(&one + &w))), int(a + b));
            prop_assert_eq!(alpha(&ratio(&(&one - &w2))), int(a));
            prop_assert_eq!(alpha(&ratio(&(&one + &w2))), int(a - 2 * b));
            for c in [&one - &w, &one + &w, &one - &w2, &one + &w2] {
                prop_assert!(alpha(&ratio(&c)).is_integer());
            }
            // 2 x = a + omega b: one of the three rotations is integral
            let x = ratio(&FieldElement::from_int(2, -3));
            let alphas = [alpha(&x), alpha(&(&x * &w2)), alpha(&(&x * &w))];
            prop_assert_eq!(&alphas[0], &(int(a) - rat(b, 2)));
            prop_assert_eq!(&alphas[1], &(rat(-a, 2) + int(b)));
            prop_assert_eq!(&alphas[2], &rat(-(a + b), 2));
            prop_assert!(alphas.iter().any(Rational::is_integer));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let suites: [(&str, fn(&mut TestRunner) -> Result<(), String>); 7] = [
        ("tau involution", tau_involution),
        ("sigma involution", sigma_involution),
        ("trace evenness", evenness),
        ("discriminant order", discriminant_order),
        ("short vectors vs box", short_vector_box),
        ("double complement", double_complement),
        ("unit arithmetic", unit_arithmetic),
    ];
    let mut done = Vec::new();
    for (name, suite) in suites {
        done.push(run(name, 1000, suite)?);
    }
    within(start, Duration::from_secs(120))?;
    Ok(done.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("trace-form fidelity", trace_form_fidelity),
        ("II_{2,26} realization", unimodular_realization),
        ("root counts", root_counts),
        ("weight tables", weight_tables),
        ("c^w/t_d table", cw_td_table),
        ("RST thresholds", rst_thresholds),
        ("seisu certification", seisu_certification),
        ("catalog verification", catalog_verification),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
