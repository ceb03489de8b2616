//! Named lattices: root lattices, small diagonal forms, the hyperbolic plane,
//! a label parser for direct sums of them, and the Hermitian models of
//! `II_{2,26}` over `Z[i]` and `Z[omega]`.

use std::fmt;

use crate::error::{LatticeError, Result};
use crate::matrix::RatMatrix;
use crate::quadratic::QuadraticLattice;

/// An irreducible simply-laced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdeComponent {
    pub kind: char,
    pub rank: usize,
}

impl AdeComponent {
    pub fn root_count(&self) -> u64 {
        let k = self.rank as u64;
        match (self.kind, self.rank) {
            ('A', _) => k * (k + 1),
            ('D', _) => 2 * k * (k - 1),
            ('E', 6) => 72,
            ('E', 7) => 126,
            ('E', 8) => 240,
            _ => 0,
        }
    }
}

impl fmt::Display for AdeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

/// Positive definite Gram matrix (roots of norm 2) of `A_k`, `D_k` or `E_k`.
///
/// Simple roots are numbered along a path `v_0, ..., v_{k-2}` with one extra
/// node: attached to `v_{k-3}` for `D_k` and to `v_2` for `E_k`.
pub fn root_gram(kind: char, rank: usize) -> Result<RatMatrix> {
    let valid = match kind {
        'A' => rank >= 1,
        'D' => rank >= 4,
        'E' => (6..=8).contains(&rank),
        _ => false,
    };
    if !valid {
        return Err(LatticeError::BadLabel(format!("{kind}{rank}")));
    }
    let mut g = vec![vec![0i64; rank]; rank];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |a: usize, b: usize| {
        g[a][b] = -1;
        g[b][a] = -1;
    };
    let path_len = if kind == 'A' { rank } else { rank - 1 };
    for i in 1..path_len {
        link(i - 1, i);
    }
    match kind {
        'D' => link(rank - 3, rank - 1),
        'E' => link(2, rank - 1),
        _ => {}
    }
    Ok(crate::matrix::from_i64(&g))
}

pub fn root_lattice(kind: char, rank: usize) -> Result<QuadraticLattice> {
    QuadraticLattice::new(root_gram(kind, rank)?)
}

pub fn hyperbolic_plane() -> QuadraticLattice {
    QuadraticLattice::from_i64(&[vec![0, 1], vec![1, 0]]).expect("nondegenerate")
}

/// `<n>`.
pub fn diagonal(n: i64) -> Result<QuadraticLattice> {
    QuadraticLattice::from_i64(&[vec![n]])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelTerm {
    Root(AdeComponent),
    Diagonal(i64),
    Hyperbolic,
    /// `[M]_n`: an overlattice of index `n` of `M`.
    Glued(Box<Label>, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelComponent {
    pub term: LabelTerm,
    pub scale: i64,
    pub multiplicity: usize,
}

/// A direct sum such as `A2(-1)^2+D4(-1)` or `A1+[A1^2+<16>]_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub components: Vec<LabelComponent>,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self) -> LatticeError {
        LatticeError::BadLabel(self.src.to_string())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err())
    }

    fn uint(&mut self) -> Result<u64> {
        let v = self.int()?;
        u64::try_from(v).map_err(|_| self.err())
    }

    fn label(&mut self) -> Result<Label> {
        let mut components = vec![self.component()?];
        while self.eat('+') || self.eat('⊕') {
            components.push(self.component()?);
        }
        Ok(Label { components })
    }

    fn component(&mut self) -> Result<LabelComponent> {
        let term = match self.peek().ok_or_else(|| self.err())? {
            k @ ('A' | 'D' | 'E') => {
                self.pos += 1;
                let rank = self.uint()? as usize;
                root_gram(k, rank)?;
                LabelTerm::Root(AdeComponent { kind: k, rank })
            }
            'U' => {
                self.pos += 1;
                LabelTerm::Hyperbolic
            }
            '<' => {
                self.pos += 1;
                let n = self.int()?;
                if n == 0 || !self.eat('>') {
                    return Err(self.err());
                }
                LabelTerm::Diagonal(n)
            }
            '[' => {
                self.pos += 1;
                let inner = self.label()?;
                if !self.eat(']') || !self.eat('_') {
                    return Err(self.err());
                }
                let n = self.uint()?;
                if n == 0 {
                    return Err(self.err());
                }
                LabelTerm::Glued(Box::new(inner), n)
            }
            _ => return Err(self.err()),
        };
        let mut scale = 1;
        if self.eat('(') {
            scale = self.int()?;
            if scale == 0 || !self.eat(')') {
                return Err(self.err());
            }
        }
        let mut multiplicity = 1;
        if self.eat('^') {
            multiplicity = self.uint()? as usize;
            if multiplicity == 0 {
                return Err(self.err());
            }
        }
        Ok(LabelComponent { term, scale, multiplicity })
    }
}

pub fn parse_label(s: &str) -> Result<Label> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0, src: s };
    let label = p.label()?;
    if p.pos != p.chars.len() {
        return Err(p.err());
    }
    Ok(label)
}

/// Bound on discriminant group sizes scanned for glue vectors.
pub const GLUE_SEARCH_LIMIT: usize = 100_000;

impl Label {
    /// Every lattice the label can denote: one for plain sums, one per valid
    /// glue class for each `[M]_n` term (possibly none).
    pub fn realizations(&self) -> Result<Vec<QuadraticLattice>> {
        let mut acc = vec![QuadraticLattice::new(Vec::new())?];
        for c in &self.components {
            let options: Vec<QuadraticLattice> = match &c.term {
                LabelTerm::Root(r) => vec![root_lattice(r.kind, r.rank)?],
                LabelTerm::Diagonal(n) => vec![diagonal(*n)?],
                LabelTerm::Hyperbolic => vec![hyperbolic_plane()],
                LabelTerm::Glued(inner, index) => {
                    let mut out = Vec::new();
                    for base in inner.realizations()? {
                        for glue in base.glue_vectors(*index, GLUE_SEARCH_LIMIT)? {
                            out.push(base.overlattice(&glue, *index)?);
                        }
                    }
                    out
                }
            };
            let options = options.into_iter().map(|q| q.rescale(c.scale)).collect::<Result<Vec<_>>>()?;
            for _ in 0..c.multiplicity {
                acc = acc.iter().flat_map(|a| options.iter().map(move |o| a.direct_sum(o))).collect();
            }
        }
        Ok(acc)
    }

    /// The unique lattice of a label without glue terms.
    pub fn lattice(&self) -> Result<QuadraticLattice> {
        if self.has_glue() {
            return Err(LatticeError::InvalidArgument("label contains an overlattice term".into()));
        }
        Ok(self.realizations()?.remove(0))
    }

    pub fn has_glue(&self) -> bool {
        self.components.iter().any(|c| matches!(c.term, LabelTerm::Glued(..)))
    }

    /// Sorted root components when the label is a plain sum of root lattices.
    pub fn ade_components(&self) -> Option<Vec<AdeComponent>> {
        let mut out = Vec::new();
        for c in &self.components {
            let LabelTerm::Root(r) = c.term else { return None };
            out.extend(std::iter::repeat_n(r, c.multiplicity));
        }
        out.sort();
        Some(out)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match &c.term {
                LabelTerm::Root(r) => write!(f, "{r}")?,
                LabelTerm::Diagonal(n) => write!(f, "<{n}>")?,
                LabelTerm::Hyperbolic => write!(f, "U")?,
                LabelTerm::Glued(inner, n) => write!(f, "[{inner}]_{n}")?,
            }
            if c.scale != 1 {
                write!(f, "({})", c.scale)?;
            }
            if c.multiplicity != 1 {
                write!(f, "^{}", c.multiplicity)?;
            }
        }
        Ok(())
    }
}

pub fn format_ade(components: &[AdeComponent]) -> String {
    if components.is_empty() {
        return "0".into();
    }
    components.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("+")
}

/// Hermitian Gram matrices over `Z[i]` and `Z[omega]` whose trace forms are
/// `U^2` and `E_8`.
pub mod hermitian {
    use crate::arith::{int, rat, FieldElement, Rational};
    use crate::error::{LatticeError, Result};
    use crate::hermitian::HermitianLattice;

    fn fe(a: Rational, b: Rational, d: i64) -> FieldElement {
        FieldElement::new(a, b, d).expect("valid field")
    }

    fn build(d: i64, rows: Vec<Vec<(Rational, Rational)>>) -> HermitianLattice {
        let gram = rows.into_iter().map(|r| r.into_iter().map(|(a, b)| fe(a, b, d)).collect()).collect();
        HermitianLattice::new(d, gram).expect("valid Hermitian matrix")
    }

    pub fn matrix_a() -> HermitianLattice {
        let z = (int(0), int(0));
        build(-1, vec![vec![z.clone(), (int(0), rat(-1, 2))], vec![(int(0), rat(1, 2)), z]])
    }

    pub fn matrix_b() -> HermitianLattice {
        let one = (int(1), int(0));
        let h = (rat(1, 2), int(0));
        let pi = (int(0), rat(1, 2));
        let mi = (int(0), rat(-1, 2));
        build(
            -1,
            vec![
                vec![one.clone(), mi.clone(), mi.clone(), h.clone()],
                vec![pi.clone(), one.clone(), h.clone(), pi.clone()],
                vec![pi.clone(), h.clone(), one.clone(), h.clone()],
                vec![h.clone(), mi, h, one],
            ],
        )
    }

    pub fn matrix_c() -> HermitianLattice {
        let z = (int(0), int(0));
        build(-3, vec![vec![z.clone(), (int(0), rat(-1, 3))], vec![(int(0), rat(1, 3)), z]])
    }

    pub fn matrix_d() -> HermitianLattice {
        let one = (int(1), int(0));
        let z = (int(0), int(0));
        let p = (int(0), rat(1, 3));
        let m = (int(0), rat(-1, 3));
        build(
            -3,
            vec![
                vec![one.clone(), z.clone(), p.clone(), p.clone()],
                vec![z.clone(), one.clone(), p.clone(), m.clone()],
                vec![m.clone(), m.clone(), one.clone(), z.clone()],
                vec![m.clone(), p, z, one],
            ],
        )
    }

    /// `A + B(-1)^3` for `d = -1`, `C + D(-1)^3` for `d = -3`.
    pub fn ambient(d: i64) -> Result<HermitianLattice> {
        let (head, block) = match d {
            -1 => (matrix_a(), matrix_b()),
            -3 => (matrix_c(), matrix_d()),
            _ => return Err(LatticeError::InvalidArgument(format!("no built-in ambient lattice for d = {d}"))),
        };
        let neg = block.rescale(&int(-1))?;
        let mut m = head;
        for _ in 0..3 {
            m = m.direct_sum(&neg)?;
        }
        Ok(m)
    }
}
