use std::path::Path;

use anyhow::{bail, Context, Result};
use hermlat_core::definite::{is_isometric, root_system_identify, short_vectors};
use hermlat_core::embeddings::{orthogonal_complement, Sublattice};
use hermlat_core::general_type::{catalog, find_case, run_case, verify_catalog, Verdict, VerdictStatus};
use hermlat_core::lattices::format_ade;
use hermlat_core::singularity::{age, is_quasi_reflection, is_reflection, rst_min_age, seisu_verify, EigenvalueProfile};
use hermlat_core::QuadraticLattice;
use num_bigint::BigInt;

use crate::input::{field_matrix, BasisFile, CaseFile, Lattice, LatticeFile};
use crate::report::{join, vector, Format, Report};
use crate::Command;

/// Enumeration above this rank needs `--allow-large-rank`.
pub const LARGE_RANK: usize = 16;

pub struct Outcome {
    pub output: String,
    /// Exit code 0 when true, 1 otherwise.
    pub verified: bool,
}

fn done(reports: &[Report], format: Format, verified: bool) -> Outcome {
    let output = reports.iter().map(|r| r.render(format)).collect::<Vec<_>>().join(if format == Format::Text { "\n" } else { "" });
    Outcome { output, verified }
}

pub fn run(cmd: Command, format: Format) -> Result<Outcome> {
    match cmd {
        Command::Analyze { file } => analyze(&file, format),
        Command::TraceForm { file } => trace_form(&file),
        Command::Roots { file, norm, allow_large_rank } => roots(&file, norm, allow_large_rank, format),
        Command::Identify { file } => identify(&file, format),
        Command::Complement { ambient, sub_basis } => complement(&ambient, &sub_basis, format),
        Command::Isometric { file1, file2 } => isometric(&file1, &file2, format),
        Command::Age { order, exponents } => age_cmd(order, exponents, format),
        Command::RstScan { n_min, n_max } => rst_scan(n_min, n_max, format),
        Command::Seisu { max } => seisu(max, format),
        Command::GeneralType { case, file, assume_star } => general_type(case, file.as_deref(), assume_star, format),
        Command::Catalog { verify } => catalog_cmd(verify, format),
    }
}

fn load(path: &Path) -> Result<(LatticeFile, Lattice)> {
    let file = LatticeFile::load(path)?;
    let lattice = file.lattice().with_context(|| format!("invalid lattice in {}", path.display()))?;
    Ok((file, lattice))
}

fn quadratic_fields(r: &mut Report, q: &QuadraticLattice, prefix: &str) -> Result<()> {
    let key = |k: &str| format!("{prefix}{k}");
    r.field(&key("rank"), q.rank());
    r.field(&key("signature"), q.signature());
    r.field(&key("det"), q.determinant());
    let integral = q.is_integral();
    r.field(&key("integral"), integral);
    r.field(&key("even"), q.is_even());
    r.field(&key("unimodular"), q.is_unimodular());
    if integral {
        let dg = q.discriminant_group()?;
        r.field(&key("discriminant_group"), &dg);
        r.field(&key("discriminant_order"), dg.order());
        r.field(&key("discriminant_length"), dg.length());
    }
    Ok(())
}

fn analyze(path: &Path, format: Format) -> Result<Outcome> {
    let (file, lattice) = load(path)?;
    let mut r = Report::new(format!("analyze {}", file.name.as_deref().unwrap_or(&path.display().to_string())));
    match &lattice {
        Lattice::Hermitian(h) => {
            r.field("kind", "hermitian").field("d", h.d()).field("rank", h.rank());
            r.field("signature", h.signature());
            r.field("det", h.determinant());
            r.field("integral", h.is_integral());
            r.field("even", h.is_even().map_or("n/a".to_string(), |e| e.to_string()));
            quadratic_fields(&mut r, &h.trace_lattice(), "trace_")?;
        }
        Lattice::Quadratic(q) => {
            r.field("kind", "quadratic");
            quadratic_fields(&mut r, q, "")?;
        }
    }
    Ok(done(&[r], format, true))
}

fn trace_form(path: &Path) -> Result<Outcome> {
    let (file, lattice) = load(path)?;
    let Lattice::Hermitian(h) = lattice else {
        bail!("trace-form needs a hermitian lattice file");
    };
    let name = file.name.map(|n| format!("{n}_Q"));
    let out = LatticeFile::from_quadratic(&h.trace_lattice(), name)?;
    Ok(Outcome { output: serde_json::to_string_pretty(&out)? + "\n", verified: true })
}

fn definite(q: &QuadraticLattice) -> Result<i64> {
    let s = q.signature();
    match (s.positive, s.negative) {
        (_, 0) => Ok(1),
        (0, _) => Ok(-1),
        _ => bail!("lattice is indefinite with signature {s}; this command needs a definite lattice"),
    }
}

fn roots(path: &Path, norm: Option<i64>, allow_large: bool, format: Format) -> Result<Outcome> {
    let (_, lattice) = load(path)?;
    let q = lattice.quadratic();
    let sign = definite(&q)?;
    if q.rank() > LARGE_RANK {
        if !allow_large {
            bail!("rank {} exceeds {LARGE_RANK}; pass --allow-large-rank to enumerate anyway", q.rank());
        }
        eprintln!("warning: enumerating in rank {}; this can take minutes", q.rank());
    }
    let norm = norm.unwrap_or(2 * sign);
    let rep = short_vectors(&q, &BigInt::from(norm))?;
    let mut r = Report::new(format!("vectors of norm {norm}"));
    r.field("norm", norm).field("count", rep.count_total).field("pairs", rep.vectors.len());
    for v in &rep.vectors {
        r.field("vector", vector(v));
    }
    Ok(done(&[r], format, true))
}

fn identify(path: &Path, format: Format) -> Result<Outcome> {
    let (_, lattice) = load(path)?;
    let q = lattice.quadratic();
    definite(&q)?;
    let rs = root_system_identify(&q)?;
    let mut r = Report::new("root system");
    r.field("root_system", format_ade(&rs.components));
    r.field("root_count", rs.root_count);
    r.field("full_rank", rs.full_rank);
    r.field("index", rs.index.map_or("n/a".to_string(), |i| i.to_string()));
    Ok(done(&[r], format, true))
}

fn complement(ambient: &Path, basis: &Path, format: Format) -> Result<Outcome> {
    let (_, lattice) = load(ambient)?;
    let rows = BasisFile::load(basis)?;
    let mut r = Report::new("orthogonal complement");
    match lattice {
        Lattice::Hermitian(h) => {
            let sub = field_matrix(&rows.basis, h.d())?;
            let c = h.hermitian_complement(&sub)?;
            r.field("kind", "hermitian").field("rank", c.lattice.rank());
            r.field("signature", c.lattice.signature());
            for v in &c.basis {
                r.field("basis", vector(v));
            }
            quadratic_fields(&mut r, &c.lattice.trace_lattice(), "trace_")?;
        }
        Lattice::Quadratic(q) => {
            let sub = Sublattice::new(q, rows.integer_rows()?)?;
            let c = orthogonal_complement(&sub)?;
            r.field("kind", "quadratic");
            for v in &c.basis {
                r.field("basis", vector(v));
            }
            match c.lattice() {
                Ok(cq) => {
                    quadratic_fields(&mut r, &cq, "")?;
                    let s = cq.signature();
                    if cq.rank() > 0 && (s.positive == 0 || s.negative == 0) && cq.rank() <= LARGE_RANK {
                        r.field("root_system", format_ade(&root_system_identify(&cq)?.components));
                    }
                }
                Err(_) => {
                    r.field("rank", c.rank()).field("degenerate", true);
                }
            }
        }
    }
    Ok(done(&[r], format, true))
}

fn isometric(p1: &Path, p2: &Path, format: Format) -> Result<Outcome> {
    let (_, a) = load(p1)?;
    let (_, b) = load(p2)?;
    let (qa, qb) = (a.quadratic(), b.quadratic());
    definite(&qa)?;
    definite(&qb)?;
    let iso = is_isometric(&qa, &qb)?;
    let mut r = Report::new("isometry test");
    r.field("isometric", iso);
    Ok(done(&[r], format, iso))
}

fn age_cmd(order: u64, exponents: Vec<u64>, format: Format) -> Result<Outcome> {
    let p = EigenvalueProfile::new(order, exponents)?;
    let mut r = Report::new(format!("age of order-{order} map"));
    r.field("order", order).field("exponents", join(&p.exponents, ","));
    r.field("age", age(&p));
    r.field("quasi_reflection", is_quasi_reflection(&p));
    r.field("reflection", is_reflection(&p));
    Ok(done(&[r], format, true))
}

fn rst_scan(n_min: u64, n_max: u64, format: Format) -> Result<Outcome> {
    if n_min == 0 || n_min > n_max {
        bail!("need 1 <= n-min <= n-max");
    }
    let mut reports = Vec::new();
    let mut all_canonical = true;
    for n in n_min..=n_max {
        let m = rst_min_age(n)?;
        let ok = m.min >= hermlat_core::arith::int(1);
        all_canonical &= ok;
        let mut r = Report::new(format!("dimension {n}"));
        r.field("n", n).field("min_age", &m.min).field("at_least_one", ok);
        r.field("witness_r", m.witness.r).field("witness_k2", m.witness.k2);
        r.field("witness_v", join(m.witness.v, ","));
        reports.push(r);
    }
    Ok(done(&reports, format, all_canonical))
}

fn seisu(max: u64, format: Format) -> Result<Outcome> {
    let rep = seisu_verify(max)?;
    let mut r = Report::new(format!("c^w > 1 for phi(r) > 2, r <= {max}"));
    r.field("r_max", max);
    r.field("orders_checked", rep.orders_checked);
    r.field("cases_checked", rep.cases_checked);
    r.field("violations", rep.violations.len());
    r.field("result", format!("{} violations", rep.violations.len()));
    for v in &rep.violations {
        r.field("violation", format!("r={} k2={} c_w={}", v.r, v.k2, v.sum));
    }
    let missing = if rep.orders_without_witness.is_empty() { "none".to_string() } else { join(&rep.orders_without_witness, ",") };
    r.field("orders_without_witness", missing);
    Ok(done(&[r], format, rep.violations.is_empty()))
}

fn verdict_report(v: &Verdict) -> Report {
    let mut r = Report::new(format!("case {}", v.case));
    r.field("case", &v.case).field("status", v.status);
    r.field("star_assumed", v.star_assumed);
    if let Some(s) = v.signature {
        r.field("signature", s);
    }
    if let Some(c) = &v.identified_complement {
        r.field("complement_root_system", c);
    }
    if let Some(n) = v.complement_roots {
        r.field("root_count", n);
    }
    if let Some(w) = &v.weight {
        r.field("weight", w);
    }
    if let Some(w) = &v.root_weight {
        r.field("root_weight", w);
    }
    for c in &v.checks {
        let tag = match (c.passed, c.informational) {
            (true, _) => "pass",
            (false, true) => "note",
            (false, false) => "FAIL",
        };
        let detail = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
        r.field("check", format!("{tag}: {}{detail}", c.name));
    }
    if let Some(cmp) = &v.comparison {
        for o in &cmp.outcomes {
            r.field(
                "candidate",
                format!("{} roots={} {}<r: {} -> {}", o.label, join(&o.root_counts, "|"), cmp.s_perp_roots, o.comparison_holds, o.status),
            );
        }
    }
    for f in &v.failed_conditions {
        r.field("failed", f);
    }
    r
}

fn general_type(case: Option<String>, file: Option<&Path>, assume_star: bool, format: Format) -> Result<Outcome> {
    let mut case = match (case, file) {
        (Some(name), None) => {
            find_case(&name).with_context(|| format!("no catalog case named {name:?}; see `hermlat catalog`"))?
        }
        (None, Some(path)) => CaseFile::load(path)?.into_case(assume_star)?,
        _ => bail!("pass exactly one of --case or --file"),
    };
    case.star_assumed = assume_star;
    let v = run_case(&case);
    let ok = v.status == VerdictStatus::GeneralTypeConditionalOnStar;
    Ok(done(&[verdict_report(&v)], format, ok))
}

fn catalog_cmd(verify: bool, format: Format) -> Result<Outcome> {
    if !verify {
        let mut reports = Vec::new();
        for c in catalog() {
            let mut r = Report::new(format!("case {}", c.name));
            r.field("case", &c.name).field("d", c.field_d).field("sub_rank", c.sub.rank());
            r.field("complement", &c.expected_complement).field("n", c.n);
            if let Some(w) = &c.expected_weight {
                r.field("weight", w);
            }
            if let Some(w) = &c.expected_root_weight {
                r.field("root_weight", w);
            }
            r.field("candidates", c.candidates.len());
            for note in &c.notes {
                r.field("note", note);
            }
            reports.push(r);
        }
        return Ok(done(&reports, format, true));
    }
    let verdicts = verify_catalog(true);
    let passed = verdicts.iter().filter(|v| v.status == VerdictStatus::GeneralTypeConditionalOnStar).count();
    let mut reports: Vec<Report> = verdicts.iter().map(verdict_report).collect();
    let mut summary = Report::new("catalog");
    summary.field("summary", format!("{passed}/{} cases GENERAL_TYPE_CONDITIONAL_ON_STAR", verdicts.len()));
    reports.push(summary);
    Ok(done(&reports, format, passed == verdicts.len()))
}
