//! Exact rational and imaginary quadratic field arithmetic.
//!
//! Elements of `F = Q(sqrt(d))` are stored as `a + b*sqrt(d)` with rational
//! coordinates, even when `d = 1 (mod 4)`. Integrality is tested against the
//! `{1, theta}` basis of the ring of integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LatticeError, Result};

/// Exact rational number; always reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `{x} = x - floor(x)`, always in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Nearest integer, ties rounded up.
pub fn round_half_up(x: &Rational) -> BigInt {
    (x + rat(1, 2)).floor().to_integer()
}

pub fn is_squarefree(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    if m == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

pub fn check_discriminant(d: i64) -> Result<()> {
    if d < 0 && is_squarefree(d) {
        Ok(())
    } else {
        Err(LatticeError::InvalidDiscriminant(d))
    }
}

/// `a + b*sqrt(d)` in an imaginary quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
    d: i64,
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        check_discriminant(d)?;
        Ok(Self { a, b, d })
    }

    /// Constructor for callers that have already validated `d`.
    pub(crate) fn raw(a: Rational, b: Rational, d: i64) -> Self {
        Self { a, b, d }
    }

    pub fn from_rational(a: Rational, d: i64) -> Self {
        Self::raw(a, Rational::zero(), d)
    }

    pub fn from_int(n: i64, d: i64) -> Self {
        Self::from_rational(int(n), d)
    }

    pub fn zero(d: i64) -> Self {
        Self::from_int(0, d)
    }

    pub fn one(d: i64) -> Self {
        Self::from_int(1, d)
    }

    pub fn sqrt_d(d: i64) -> Self {
        Self::raw(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::raw(self.a.clone(), -&self.b, self.d)
    }

    /// `Tr_{F/Q}(x) = x + conj(x) = 2a`.
    pub fn trace_q(&self) -> Rational {
        &self.a * int(2)
    }

    /// `N(x) = x * conj(x) = a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int(self.d)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::raw(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self * &inv)
    }

    /// Coordinates `(p, q)` with `x = p + q*theta`.
    pub fn theta_coords(&self) -> (Rational, Rational) {
        if self.d.rem_euclid(4) == 1 {
            // theta = (1 + sqrt d)/2
            let q = &self.b * int(2);
            (&self.a - &self.b, q)
        } else {
            (self.a.clone(), self.b.clone())
        }
    }

    pub fn from_theta_coords(p: Rational, q: Rational, d: i64) -> Self {
        if d.rem_euclid(4) == 1 {
            let half = &q * rat(1, 2);
            Self::raw(&p + &half, half, d)
        } else {
            Self::raw(p, q, d)
        }
    }

    pub fn is_ring_integer(&self) -> bool {
        let (p, q) = self.theta_coords();
        p.is_integer() && q.is_integer()
    }

    /// Smallest positive integer `k` with `k * self` a ring integer.
    pub fn integral_denominator(&self) -> BigInt {
        let (p, q) = self.theta_coords();
        p.denom().lcm(q.denom())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::raw(&self.a * k, &self.b * k, self.d)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("sqrt({})", self.d);
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*{}", self.b, s),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*{}", self.a, -&self.b, s)
                } else {
                    write!(f, "{} + {}*{}", self.a, self.b, s)
                }
            }
        }
    }
}

impl Add<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.d, rhs.d, "mixed fields");
        FieldElement::raw(&self.a + &rhs.a, &self.b + &rhs.b, self.d)
    }
}

impl Sub<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.d, rhs.d, "mixed fields");
        FieldElement::raw(&self.a - &rhs.a, &self.b - &rhs.b, self.d)
    }
}

impl Mul<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.d, rhs.d, "mixed fields");
        let d = int(self.d);
        FieldElement::raw(
            &self.a * &rhs.a + &self.b * &rhs.b * d,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.d,
        )
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::raw(-&self.a, -&self.b, self.d)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// `Z`-basis `{1, theta}` of the ring of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingBasis {
    pub d: i64,
    pub theta: FieldElement,
}

impl RingBasis {
    pub fn new(d: i64) -> Result<Self> {
        check_discriminant(d)?;
        let theta = if d.rem_euclid(4) == 1 {
            FieldElement::raw(rat(1, 2), rat(1, 2), d)
        } else {
            FieldElement::sqrt_d(d)
        };
        Ok(Self { d, theta })
    }
}

/// The full unit group of the ring of integers of `Q(sqrt d)`.
pub fn units(d: i64) -> Result<Vec<FieldElement>> {
    check_discriminant(d)?;
    let mut out = vec![FieldElement::one(d), FieldElement::from_int(-1, d)];
    match d {
        -1 => {
            let i = FieldElement::sqrt_d(d);
            out.push(-&i);
            out.push(i);
        }
        -3 => {
            let omega = FieldElement::raw(rat(-1, 2), rat(1, 2), d);
            let omega2 = &omega * &omega;
            out.push(-&omega);
            out.push(-&omega2);
            out.push(omega);
            out.push(omega2);
        }
        _ => {}
    }
    Ok(out)
}

pub fn is_unit(x: &FieldElement) -> bool {
    x.is_ring_integer() && x.norm().is_one()
}

/// Values of `d` for which `O_F` is norm-Euclidean.
pub const EUCLIDEAN_D: [i64; 5] = [-1, -2, -3, -7, -11];

/// Euclidean division `x = q*y + r` with `N(r) < N(y)`, for norm-Euclidean `d`.
pub fn euclidean_div(x: &FieldElement, y: &FieldElement) -> Result<(FieldElement, FieldElement)> {
    let d = x.d();
    if !EUCLIDEAN_D.contains(&d) {
        return Err(LatticeError::NonEuclidean(d));
    }
    let exact = x
        .checked_div(y)
        .ok_or_else(|| LatticeError::InvalidArgument("division by zero".into()))?;
    let (p, q) = exact.theta_coords();
    let (p0, q0) = (round_half_up(&p), round_half_up(&q));
    let mut best: Option<(FieldElement, FieldElement, Rational)> = None;
    for dp in -1i64..=1 {
        for dq in -1i64..=1 {
            let cand = FieldElement::from_theta_coords(
                Rational::from_integer(&p0 + dp),
                Rational::from_integer(&q0 + dq),
                d,
            );
            let r = x - &(&cand * y);
            let n = r.norm();
            if best.as_ref().is_none_or(|(_, _, bn)| n < *bn) {
                best = Some((cand, r, n));
            }
        }
    }
    let (q, r, n) = best.expect("non-empty search");
    debug_assert!(n < y.norm());
    Ok((q, r))
}
