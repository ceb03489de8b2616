//! Weight bookkeeping for quasi-pullbacks of the Borcherds form and the
//! hypotheses of the general-type criterion, checked on explicit embeddings
//! into the Hermitian models of `II_{2,26}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::arith::{int, rat, units, FieldElement, Rational};
use crate::definite::{is_isometric, root_count, root_system_identify};
use crate::embeddings::{is_primitive, nikulin_check, orthogonal_complement, Sublattice};
use crate::error::{LatticeError, Result};
use crate::hermitian::{FieldVector, HermitianLattice};
use crate::lattices::{format_ade, hermitian as models, parse_label, Label};
use crate::matrix::{self, IntMatrix};
use crate::quadratic::{QuadraticLattice, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPullbackReport {
    pub root_count: u64,
    pub weight: Rational,
    pub is_cusp: bool,
    pub character: &'static str,
}

/// Weight `12 + r/2` of the quasi-pullback along a sublattice whose
/// complement has `r` roots.
pub fn quasi_pullback_weight(root_count: u64) -> Result<QuasiPullbackReport> {
    if root_count % 2 == 1 {
        return Err(LatticeError::OddRootCount(root_count));
    }
    Ok(QuasiPullbackReport {
        root_count,
        weight: int(12) + rat(root_count as i64, 2),
        is_cusp: root_count > 0,
        character: "det",
    })
}

/// Half the number of units: the common multiplicity of the ramification
/// components of the pulled-back form.
pub fn multiplicity(field_d: i64) -> Result<u64> {
    Ok(units(field_d)?.len() as u64 / 2)
}

fn require_special_field(field_d: i64) -> Result<()> {
    if field_d == -1 || field_d == -3 {
        Ok(())
    } else {
        Err(LatticeError::InvalidArgument(format!("d = {field_d}: only d = -1 and d = -3 have extra units")))
    }
}

/// Weight of the `m`-th root, `m = multiplicity(d)`.
pub fn root_extracted_weight(weight: &Rational, field_d: i64) -> Result<Rational> {
    require_special_field(field_d)?;
    let m = multiplicity(field_d)?;
    let w = weight / Rational::from_integer(m.into());
    if !w.is_integer() {
        return Err(LatticeError::NotDivisible { weight: weight.to_string(), multiplicity: m });
    }
    Ok(w)
}

/// `n > (24 + r) / #units`.
pub fn inequality_check(n: u64, root_count: u64, field_d: i64) -> Result<bool> {
    require_special_field(field_d)?;
    let u = units(field_d)?.len() as i64;
    Ok(Rational::from_integer(n.into()) > rat(24 + root_count as i64, u))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateStatus {
    /// Strictly more roots than the complement.
    Pass,
    /// Fewer roots than the complement, so it cannot contain it.
    ExcludedFewerRoots,
    /// Not an even lattice.
    ExcludedNotEven,
    /// An overlattice term admits no valid glue vector.
    Unverified,
    /// Exactly as many roots as the complement.
    Fail,
}

impl fmt::Display for CandidateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Pass => "pass",
            Self::ExcludedFewerRoots => "excluded (fewer roots)",
            Self::ExcludedNotEven => "excluded (not even)",
            Self::Unverified => "unverified candidate (no glue found)",
            Self::Fail => "FAIL",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateOutcome {
    pub label: String,
    pub rank: Option<usize>,
    /// One root count per realization of the label.
    pub root_counts: Vec<usize>,
    /// `s_perp_roots < r(C)` for every realization.
    pub comparison_holds: bool,
    pub status: CandidateStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub s_perp_roots: usize,
    pub outcomes: Vec<CandidateOutcome>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != CandidateStatus::Fail)
    }
}

/// Compare the root count of the complement with each candidate for the
/// complement of a reflection hyperplane.
pub fn reflective_comparison(s_perp_roots: usize, candidates: &[Label]) -> Result<ComparisonReport> {
    let mut outcomes = Vec::with_capacity(candidates.len());
    for c in candidates {
        let lattices = c.realizations()?;
        let mut root_counts = Vec::with_capacity(lattices.len());
        for l in &lattices {
            root_counts.push(root_count(l)?);
        }
        let rank = lattices.first().map(QuadraticLattice::rank);
        let comparison_holds = !root_counts.is_empty() && root_counts.iter().all(|&r| s_perp_roots < r);
        let status = if lattices.is_empty() {
            CandidateStatus::Unverified
        } else if lattices.iter().any(|l| !l.is_even()) {
            CandidateStatus::ExcludedNotEven
        } else if root_counts.contains(&s_perp_roots) {
            CandidateStatus::Fail
        } else if root_counts.iter().any(|&r| r > s_perp_roots) {
            CandidateStatus::Pass
        } else {
            CandidateStatus::ExcludedFewerRoots
        };
        outcomes.push(CandidateOutcome { label: c.to_string(), rank, root_counts, comparison_holds, status });
    }
    Ok(ComparisonReport { s_perp_roots, outcomes })
}

/// One embedding `L_sub -> ambient` whose Hermitian complement is the
/// lattice under test.
#[derive(Clone, Debug)]
pub struct EmbeddingCase {
    pub name: String,
    pub field_d: i64,
    pub sub: HermitianLattice,
    /// Images of the basis of `sub` in ambient coordinates.
    pub embedding: Vec<FieldVector>,
    pub expected_complement: Label,
    /// Ball dimension: the complement has signature `(1, n)`.
    pub n: u64,
    pub expected_weight: Option<Rational>,
    pub expected_root_weight: Option<Rational>,
    /// Candidate complements of reflection hyperplanes (positive definite).
    pub candidates: Vec<Label>,
    pub star_assumed: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    GeneralTypeConditionalOnStar,
    HypothesisFailed,
    NotApplicable,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::GeneralTypeConditionalOnStar => "GENERAL_TYPE_CONDITIONAL_ON_STAR",
            Self::HypothesisFailed => "HYPOTHESIS_FAILED",
            Self::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Informational checks never affect the verdict.
    pub informational: bool,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub case: String,
    pub status: VerdictStatus,
    pub failed_conditions: Vec<String>,
    pub checks: Vec<Check>,
    pub signature: Option<Signature>,
    pub complement_roots: Option<usize>,
    pub identified_complement: Option<String>,
    pub weight: Option<Rational>,
    pub root_weight: Option<Rational>,
    pub comparison: Option<ComparisonReport>,
    pub star_assumed: bool,
}

impl Verdict {
    fn new(case: &EmbeddingCase) -> Self {
        Self {
            case: case.name.clone(),
            status: VerdictStatus::HypothesisFailed,
            failed_conditions: Vec::new(),
            checks: Vec::new(),
            signature: None,
            complement_roots: None,
            identified_complement: None,
            weight: None,
            root_weight: None,
            comparison: None,
            star_assumed: case.star_assumed,
        }
    }

    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name, passed, detail: detail.into(), informational: false });
        if !passed {
            self.failed_conditions.push(name.to_string());
        }
        passed
    }

    fn note(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, passed, detail: detail.into(), informational: true });
    }

    fn finish(mut self) -> Self {
        if self.failed_conditions.is_empty() {
            if self.star_assumed {
                self.status = VerdictStatus::GeneralTypeConditionalOnStar;
            } else {
                self.failed_conditions.push("star hypothesis not assumed".into());
            }
        }
        self
    }
}

/// Integer rows spanning the trace lattice of the `O_F`-span of `vectors`.
fn trace_span(ambient: &HermitianLattice, vectors: &[FieldVector]) -> IntMatrix {
    let theta = ambient.ring_basis().theta;
    let mut rows = Vec::with_capacity(2 * vectors.len());
    for v in vectors {
        let tv: FieldVector = v.iter().map(|x| &theta * x).collect();
        for w in [v, &tv] {
            rows.push(ambient.trace_coords(w).into_iter().map(|x| x.to_integer()).collect());
        }
    }
    rows
}

/// Run every checkable hypothesis of the criterion on one case.
pub fn run_case(case: &EmbeddingCase) -> Verdict {
    let mut v = Verdict::new(case);
    if let Err(e) = run_case_inner(case, &mut v) {
        v.check("well-formed input", false, e.to_string());
    }
    if v.status == VerdictStatus::NotApplicable {
        return v;
    }
    v.finish()
}

fn run_case_inner(case: &EmbeddingCase, v: &mut Verdict) -> Result<()> {
    if case.field_d != -1 && case.field_d != -3 {
        v.status = VerdictStatus::NotApplicable;
        v.failed_conditions.push(format!("d = {} has only the units +-1", case.field_d));
        return Ok(());
    }
    let ambient = models::ambient(case.field_d)?;
    let amb_q = ambient.trace_lattice();
    let ii = Signature { positive: 2, negative: 26 };
    v.check(
        "ambient is II_{2,26}",
        amb_q.is_even() && amb_q.is_unimodular() && amb_q.signature() == ii,
        format!("rank {}, even {}, det {}, signature {}", amb_q.rank(), amb_q.is_even(), amb_q.determinant(), amb_q.signature()),
    );

    let sub_even = case.sub.is_integral() && case.sub.is_even()?;
    v.check("sublattice integral and even", sub_even, format!("rank {}", case.sub.rank()));

    let n_amb = ambient.rank();
    if case.embedding.len() != case.sub.rank() || case.embedding.iter().any(|s| s.len() != n_amb) {
        return Err(LatticeError::Shape("embedding does not match the sublattice and ambient ranks".into()));
    }
    let integral = case.embedding.iter().flatten().all(FieldElement::is_ring_integer);
    if !v.check("embedding vectors are ring-integral", integral, "") {
        return Ok(());
    }
    let image_gram: Vec<Vec<FieldElement>> = case
        .embedding
        .iter()
        .map(|x| case.embedding.iter().map(|y| ambient.pairing(x, y)).collect())
        .collect();
    let exact = image_gram == *case.sub.gram();
    let image_h = HermitianLattice::new(case.field_d, image_gram)?;
    let sub_q = case.sub.trace_lattice();
    let image_q = image_h.trace_lattice();
    let same = exact || is_isometric(&image_q, &sub_q)?;
    v.check(
        "image is isometric to the sublattice",
        same,
        if exact { "Hermitian Gram matrices agree" } else { "trace forms isometric" },
    );

    let image = Sublattice::new(amb_q.clone(), trace_span(&ambient, &case.embedding))?;
    v.check("image is primitive", is_primitive(&image), format!("trace rank {}", image.rank()));

    let complement = ambient.hermitian_complement(&case.embedding)?;
    let l = &complement.lattice;
    let sig = l.signature();
    v.signature = Some(sig);
    let expected_sig = Signature { positive: 1, negative: case.n as usize };
    v.check("complement has signature (1, n)", sig == expected_sig, format!("{sig}, expected {expected_sig}"));
    let l_even = l.is_integral() && l.is_even()?;
    v.check("complement is an even Hermitian lattice", l_even, "");

    let l_q = Sublattice::new(amb_q.clone(), trace_span(&ambient, &complement.basis))?;
    let z_complement = orthogonal_complement(&image)?;
    v.check(
        "Hermitian complement equals the Z-complement",
        l_q.same_span(&z_complement),
        format!("trace rank {}", l_q.rank()),
    );

    let perp = orthogonal_complement(&l_q)?;
    let perp_q = perp.lattice()?;
    let expected = case.expected_complement.lattice()?;
    v.check("(L_Q)^perp is isometric to the expected lattice", is_isometric(&perp_q, &expected)?, case.expected_complement.to_string());
    let rs = root_system_identify(&perp_q)?;
    v.identified_complement = Some(format_ade(&rs.components));
    if let Some(exp) = case.expected_complement.ade_components() {
        v.check(
            "root system of (L_Q)^perp",
            rs.components == exp && rs.full_rank,
            format!("{} (index {})", format_ade(&rs.components), rs.index.map_or("-".into(), |i| i.to_string())),
        );
    }
    let ell = perp_q.ell_invariant()?;
    v.note(
        "unique primitive embedding criterion",
        nikulin_check(perp_q.signature(), ell, ii),
        format!("signature {}, discriminant length {ell}", perp_q.signature()),
    );

    let roots = root_count(&perp_q)?;
    v.complement_roots = Some(roots);
    v.check("r((L_Q)^perp) > 0", roots > 0, format!("{roots} roots"));

    let qp = quasi_pullback_weight(roots as u64)?;
    v.weight = Some(qp.weight.clone());
    if let Some(w) = &case.expected_weight {
        v.check("weight matches the table", &qp.weight == w, format!("12 + {roots}/2 = {}, table {w}", qp.weight));
    }

    let comparison = reflective_comparison(roots, &case.candidates)?;
    let expected_rank = perp_q.rank() + 1;
    for o in &comparison.outcomes {
        if o.rank.is_some_and(|r| r != expected_rank) {
            v.note("candidate rank", false, format!("{} has rank {}, expected {expected_rank}", o.label, o.rank.unwrap_or(0)));
        }
    }
    let passed = comparison.passed();
    let failing: Vec<&str> = comparison
        .outcomes
        .iter()
        .filter(|o| o.status == CandidateStatus::Fail)
        .map(|o| o.label.as_str())
        .collect();
    v.check(
        "reflective root-count comparison",
        passed,
        if passed { format!("{} candidates", comparison.outcomes.len()) } else { failing.join(", ") },
    );
    v.comparison = Some(comparison);

    match root_extracted_weight(&qp.weight, case.field_d) {
        Ok(rw) => {
            v.root_weight = Some(rw.clone());
            if let Some(e) = &case.expected_root_weight {
                v.check("root-extracted weight matches the table", &rw == e, format!("{rw}, table {e}"));
            }
            let n = Rational::from_integer(case.n.into());
            v.check("root-extracted weight < n", rw < n, format!("{rw} < {}", case.n));
        }
        Err(e) => {
            v.check("root-extracted weight is integral", false, e.to_string());
        }
    }
    let units_count = units(case.field_d)?.len();
    v.check(
        "n > (24 + r)/#units",
        inequality_check(case.n, roots as u64, case.field_d)?,
        format!("{} > (24 + {roots})/{units_count} = {}", case.n, rat(24 + roots as i64, units_count as i64)),
    );

    minus_reflection_note(v, &l_q)?;
    Ok(())
}

/// Whether `-sigma_r` lies in the stable orthogonal group for the first
/// basis root of `L_Q`.
fn minus_reflection_note(v: &mut Verdict, l_q: &Sublattice) -> Result<()> {
    let q = l_q.lattice()?;
    let g = q.gram();
    let Some(i) = (0..q.rank()).find(|&i| g[i][i].abs() == int(2)) else {
        v.note("-sigma_r in stable O+(L_Q)", false, "no basis root");
        return Ok(());
    };
    let r: Vec<BigInt> = (0..q.rank()).map(|j| BigInt::from((i == j) as i64)).collect();
    let s = q.sigma_reflection(&r)?;
    let minus = matrix::scale(&s, &int(-1));
    let inside = q.in_tilde_o_plus(&minus)?;
    v.note("-sigma_r in stable O+(L_Q)", inside, format!("r = basis vector {i}, (r,r) = {}", g[i][i]));
    Ok(())
}

fn unit_vector(d: i64, n: usize, k: usize, sign: i64) -> FieldVector {
    let mut v = vec![FieldElement::zero(d); n];
    v[k] = FieldElement::from_int(sign, d);
    v
}

fn labels(list: &[&str]) -> Vec<Label> {
    list.iter().map(|s| parse_label(s).expect("built-in label")).collect()
}

fn scalar_lattice(d: i64, entries: Vec<Vec<FieldElement>>) -> HermitianLattice {
    HermitianLattice::new(d, entries).expect("built-in Gram matrix")
}

fn minus_one_diag(d: i64, k: usize) -> HermitianLattice {
    let g = (0..k)
        .map(|i| (0..k).map(|j| FieldElement::from_int(-((i == j) as i64), d)).collect())
        .collect();
    scalar_lattice(d, g)
}

fn d4_gram() -> Vec<Vec<FieldElement>> {
    let s = FieldElement::new(int(0), rat(1, 3), -3).expect("valid");
    vec![vec![FieldElement::from_int(-1, -3), s.clone()], vec![-s, FieldElement::from_int(-1, -3)]]
}

/// The eight built-in cases.
pub fn catalog() -> Vec<EmbeddingCase> {
    const AMB: usize = 14;
    // ambient blocks: head 0..2, then B(-1) or D(-1) at 2..6, 6..10, 10..14
    let mut cases = Vec::new();
    let mut push = |name: &str,
                    d: i64,
                    sub: HermitianLattice,
                    emb: Vec<(usize, i64)>,
                    comp: &str,
                    n: u64,
                    w: i64,
                    rw: i64,
                    cands: &[&str],
                    notes: &[&str]| {
        cases.push(EmbeddingCase {
            name: name.into(),
            field_d: d,
            sub,
            embedding: emb.into_iter().map(|(k, s)| unit_vector(d, AMB, k, s)).collect(),
            expected_complement: parse_label(comp).expect("built-in label"),
            n,
            expected_weight: Some(int(w)),
            expected_root_weight: Some(int(rw)),
            candidates: labels(cands),
            star_assumed: true,
            notes: notes.iter().map(|s| s.to_string()).collect(),
        });
    };

    let half = FieldElement::from_rational(rat(1, 2), -1);
    let a2_gauss = scalar_lattice(
        -1,
        vec![vec![FieldElement::from_int(-1, -1), half.clone()], vec![half, FieldElement::from_int(-1, -1)]],
    );
    push(
        "d1-A1x2",
        -1,
        minus_one_diag(-1, 1),
        vec![(2, 1)],
        "A1(-1)^2",
        12,
        14,
        7,
        &["A3", "A1^3", "A1+[A1^2+<16>]_2", "[A2+<48>]_3"],
        &["candidate A1+[A1^2+<16>]_2 has rank 4 while the other candidates have rank 3"],
    );
    push("d1-A2x2", -1, a2_gauss, vec![(2, 1), (5, -1)], "A2(-1)^2", 11, 18, 9, &[], &[]);

    let a2_blocks = [vec![(2, 1)], vec![(2, 1), (3, 1)], vec![(2, 1), (3, 1), (6, 1)], vec![(2, 1), (3, 1), (6, 1), (7, 1)]];
    let a2_weights = [(15, 5), (18, 6), (21, 7), (24, 8)];
    for (k, (emb, (w, rw))) in a2_blocks.into_iter().zip(a2_weights).enumerate() {
        let k = k + 1;
        let cands: &[&str] = if k == 1 { &["A1+<1>+<1>", "A2+<1>", "<3>+<1>+<1>"] } else { &[] };
        let notes: &[&str] = if k == 1 { &["all candidates are odd lattices, so no reflection qualifies"] } else { &[] };
        push(
            &format!("d3-A2x{k}"),
            -3,
            minus_one_diag(-3, k),
            emb,
            &format!("A2(-1)^{k}"),
            13 - k as u64,
            w,
            rw,
            cands,
            notes,
        );
    }

    let d4 = scalar_lattice(-3, d4_gram());
    push(
        "d3-D4",
        -3,
        d4,
        vec![(2, 1), (4, 1)],
        "D4(-1)",
        11,
        24,
        8,
        &["D5", "A1+D4", "A1+A1+A3"],
        &["D5 has 40 roots by enumeration, not 42", "the listed image of the second basis vector realizes the conjugate Gram matrix; the image sublattice is the same"],
    );

    let mut a2d4 = vec![vec![FieldElement::zero(-3); 3]; 3];
    a2d4[0][0] = FieldElement::from_int(-1, -3);
    for (i, row) in d4_gram().into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            a2d4[1 + i][1 + j] = x;
        }
    }
    push(
        "d3-A2+D4",
        -3,
        scalar_lattice(-3, a2d4),
        vec![(2, 1), (6, 1), (8, 1)],
        "A2(-1)+D4(-1)",
        10,
        27,
        9,
        &[
            "D7",
            "A1+D6",
            "A7",
            "[D6+<8>]_2",
            "[E6+<24>]_3",
            "A3+D4",
            "A1+A1+D5",
            "D6+A4",
            "A1+[D5+<8>]_2",
            "[D6+<16>]_2",
            "[A6+<112>]_7",
            "[A4+A1^2+<80>]_10",
            "[D4+A2+<48>]_6",
            "[A5+<112>]_3",
            "[A3^2+<4>]_2",
            "[D5+<4>^2]_2",
            "[A3+A1^4]_2",
            "[D4+A1^2+<4>]_2",
        ],
        &["candidate D6+A4 has rank 10", "candidate [A5+<112>]_3 has rank 6 and no glue vector of order 3"],
    );
    cases
}

pub fn find_case(name: &str) -> Option<EmbeddingCase> {
    catalog().into_iter().find(|c| c.name.eq_ignore_ascii_case(name))
}

/// Run every built-in case, in catalog order.
pub fn verify_catalog(star_assumed: bool) -> Vec<Verdict> {
    catalog()
        .into_par_iter()
        .map(|mut c| {
            c.star_assumed = star_assumed;
            run_case(&c)
        })
        .collect()
}

/// `6 + r/4 < n` iff `n > (24 + r)/4`, and `4 + r/6 < n` iff `n > (24 + r)/6`.
pub fn weight_inequality_equivalent(n: u64, root_count: u64, field_d: i64) -> Result<bool> {
    let w = quasi_pullback_weight(root_count)?.weight;
    let m = Rational::from_integer(multiplicity(field_d)?.into());
    let low = w / m < Rational::from_integer(n.into());
    Ok(low == inequality_check(n, root_count, field_d)?)
}
