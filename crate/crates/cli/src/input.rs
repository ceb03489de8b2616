//! Lattice files: JSON with exact `num/den` entries, decimals rejected.

use std::fmt;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hermlat_core::arith::{FieldElement, Rational};
use hermlat_core::general_type::EmbeddingCase;
use hermlat_core::lattices::parse_label;
use hermlat_core::{HermitianLattice, QuadraticLattice};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Hermitian,
    Quadratic,
}

/// `a + b sqrt(d)` with `a = a_num/a_den`, `b = b_num/b_den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub a_num: i64,
    pub a_den: i64,
    pub b: Option<(i64, i64)>,
}

impl Entry {
    fn integer(n: i64) -> Self {
        Self { a_num: n, a_den: 1, b: None }
    }

    fn rational(num: i64, den: i64) -> Result<Rational> {
        if den == 0 {
            bail!("zero denominator");
        }
        Ok(Rational::new(num.into(), den.into()))
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.b.is_some_and(|(n, _)| n != 0) {
            bail!("entry has a sqrt(d) part in a quadratic lattice");
        }
        Self::rational(self.a_num, self.a_den)
    }

    pub fn to_field(&self, d: i64) -> Result<FieldElement> {
        let a = Self::rational(self.a_num, self.a_den)?;
        let (bn, bd) = self.b.unwrap_or((0, 1));
        Ok(FieldElement::new(a, Self::rational(bn, bd)?, d)?)
    }

    fn from_rational(x: &Rational) -> Result<(i64, i64)> {
        let num = x.numer().to_i64().context("entry does not fit in 64 bits")?;
        let den = x.denom().to_i64().context("entry does not fit in 64 bits")?;
        Ok((num, den))
    }

    pub fn from_quadratic(x: &Rational) -> Result<Self> {
        let (a_num, a_den) = Self::from_rational(x)?;
        Ok(Self { a_num, a_den, b: None })
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("a_num", &self.a_num)?;
        m.serialize_entry("a_den", &self.a_den)?;
        if let Some((n, d)) = self.b {
            m.serialize_entry("b_num", &n)?;
            m.serialize_entry("b_den", &d)?;
        }
        m.end()
    }
}

struct EntryVisitor;

impl<'de> Visitor<'de> for EntryVisitor {
    type Value = Entry;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a {a_num, a_den, b_num, b_den} record")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Entry, E> {
        Ok(Entry::integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Entry, E> {
        i64::try_from(v).map(Entry::integer).map_err(|_| E::custom("integer out of range"))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Entry, E> {
        Err(E::custom(format!("decimal number {v:?} is not allowed; write entries as num/den integer pairs")))
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Entry, A::Error> {
        let mut fields: [Option<i64>; 4] = [None; 4];
        const NAMES: [&str; 4] = ["a_num", "a_den", "b_num", "b_den"];
        while let Some(key) = map.next_key::<String>()? {
            let Some(i) = NAMES.iter().position(|n| *n == key) else {
                return Err(de::Error::unknown_field(&key, &NAMES));
            };
            if fields[i].is_some() {
                return Err(de::Error::duplicate_field(NAMES[i]));
            }
            fields[i] = Some(map.next_value::<StrictInt>()?.0);
        }
        let a_num = fields[0].ok_or_else(|| de::Error::missing_field("a_num"))?;
        let a_den = fields[1].unwrap_or(1);
        let b = match (fields[2], fields[3]) {
            (None, None) => None,
            (n, d) => Some((n.unwrap_or(0), d.unwrap_or(1))),
        };
        Ok(Entry { a_num, a_den, b })
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(EntryVisitor)
    }
}

/// An `i64` that names decimals in its error message.
struct StrictInt(i64);

impl<'de> Deserialize<'de> for StrictInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let e = d.deserialize_any(EntryVisitor)?;
        if e.a_den != 1 || e.b.is_some() {
            return Err(de::Error::custom("expected an integer"));
        }
        Ok(StrictInt(e.a_num))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    pub rank: usize,
    pub gram: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

pub enum Lattice {
    Hermitian(HermitianLattice),
    Quadratic(QuadraticLattice),
}

impl Lattice {
    /// The quadratic form itself, or the trace form of a Hermitian lattice.
    pub fn quadratic(&self) -> QuadraticLattice {
        match self {
            Lattice::Hermitian(h) => h.trace_lattice(),
            Lattice::Quadratic(q) => q.clone(),
        }
    }
}

fn check_shape(rank: usize, gram: &[Vec<Entry>]) -> Result<()> {
    if gram.len() != rank {
        bail!("rank is {rank} but gram has {} rows", gram.len());
    }
    if let Some((i, r)) = gram.iter().enumerate().find(|(_, r)| r.len() != rank) {
        bail!("gram row {i} has {} entries, expected {rank}", r.len());
    }
    Ok(())
}

pub fn field_matrix(rows: &[Vec<Entry>], d: i64) -> Result<Vec<Vec<FieldElement>>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, e)| e.to_field(d).with_context(|| format!("entry ({i}, {j})")))
                .collect()
        })
        .collect()
}

impl LatticeFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn lattice(&self) -> Result<Lattice> {
        check_shape(self.rank, &self.gram)?;
        match self.kind {
            Kind::Hermitian => {
                let d = self.d.context("hermitian lattice file needs a field discriminant `d`")?;
                Ok(Lattice::Hermitian(HermitianLattice::new(d, field_matrix(&self.gram, d)?)?))
            }
            Kind::Quadratic => {
                if self.d.is_some() {
                    bail!("quadratic lattice file must not set `d`");
                }
                let gram = self
                    .gram
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, e)| e.to_rational().with_context(|| format!("entry ({i}, {j})")))
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                Ok(Lattice::Quadratic(QuadraticLattice::new(gram)?))
            }
        }
    }

    pub fn from_quadratic(q: &QuadraticLattice, name: Option<String>) -> Result<Self> {
        let gram = q.gram().iter().map(|r| r.iter().map(Entry::from_quadratic).collect()).collect::<Result<_>>()?;
        Ok(Self { kind: Kind::Quadratic, d: None, rank: q.rank(), gram, name })
    }
}

/// Basis rows of a sublattice in ambient coordinates.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub basis: Vec<Vec<Entry>>,
}

impl BasisFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn integer_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        self.basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| {
                        let x = e.to_rational()?;
                        if !x.is_integer() {
                            bail!("basis entries must be integers, got {x}");
                        }
                        Ok(x.to_integer())
                    })
                    .collect()
            })
            .collect()
    }
}

/// A user-supplied embedding for `general-type --file`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub name: String,
    pub d: i64,
    pub sub: Vec<Vec<Entry>>,
    pub embedding: Vec<Vec<Entry>>,
    pub expected_complement: String,
    pub n: u64,
    #[serde(default)]
    pub expected_weight: Option<i64>,
    #[serde(default)]
    pub expected_root_weight: Option<i64>,
    #[serde(default)]
    pub candidates: Vec<String>,
}

impl CaseFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn into_case(self, star_assumed: bool) -> Result<EmbeddingCase> {
        let sub = HermitianLattice::new(self.d, field_matrix(&self.sub, self.d)?)?;
        let embedding = field_matrix(&self.embedding, self.d)?;
        let candidates = self.candidates.iter().map(|c| parse_label(c)).collect::<std::result::Result<_, _>>()?;
        Ok(EmbeddingCase {
            name: self.name,
            field_d: self.d,
            sub,
            embedding,
            expected_complement: parse_label(&self.expected_complement)?,
            n: self.n,
            expected_weight: self.expected_weight.map(|w| Rational::from_integer(w.into())),
            expected_root_weight: self.expected_root_weight.map(|w| Rational::from_integer(w.into())),
            candidates,
            star_assumed,
            notes: Vec::new(),
        })
    }
}
