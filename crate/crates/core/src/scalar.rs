//! Scalar fields used throughout the crate.
//!
//! Every numeric routine is generic over [`Scalar`]. Two implementations
//! exist: `f64`, where zero tests consult a tolerance, and [`Exact`], an
//! exact element of the quadratic field Q(√d) where zero tests are exact
//! and tolerances are ignored. A frame may mix rationals with multiples of
//! a single square root (the Mercedes-Benz frame needs √3), which keeps
//! every inner product, outer product and simplex pivot inside Q(√d).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arithmetic needed by the frame, graph and simplex code.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for exact arithmetic; tolerances are then ignored.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;

    /// `|self| <= tol` for floats, `self == 0` for exact values.
    fn negligible(&self, tol: f64) -> bool;

    /// `self > tol` for floats, `self > 0` for exact values.
    fn exceeds(&self, tol: f64) -> bool;

    /// Square root when it is representable in the same arithmetic.
    fn sqrt(&self) -> Option<Self>;

    /// Identifies the number field a value lives in; `1` for the base field.
    /// Values with different tags other than `1` cannot be combined.
    fn field_tag(&self) -> u64 {
        1
    }

    /// Whether `self` and `other` can be combined arithmetically.
    fn compatible(&self, other: &Self) -> bool {
        let (a, b) = (self.field_tag(), other.field_tag());
        a == 1 || b == 1 || a == b
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn negligible(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }
    fn exceeds(&self, tol: f64) -> bool {
        *self > tol
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("division by zero in `{0}`")]
    ZeroDenominator(String),
    #[error("negative radicand in `{0}`")]
    NegativeRadicand(String),
    #[error("`{0}` mixes two different square roots")]
    MixedRadicands(String),
}

/// An exact number `rational + surd·√radicand`.
///
/// Canonical form: `surd == 0` iff `radicand == 1`; otherwise the radicand
/// is square-free and at least 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exact {
    rational: BigRational,
    surd: BigRational,
    radicand: u64,
}

impl Exact {
    pub fn from_rational(r: BigRational) -> Self {
        Exact {
            rational: r,
            surd: BigRational::zero(),
            radicand: 1,
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    /// `coefficient · √radicand`, reducing the radicand to square-free form.
    pub fn sqrt_of_integer(coefficient: BigRational, radicand: u64) -> Self {
        let (outside, inside) = square_free_split(radicand);
        let coefficient = coefficient * BigRational::from_integer(BigInt::from(outside));
        if inside == 1 || coefficient.is_zero() {
            Self::from_rational(if inside == 1 { coefficient } else { BigRational::zero() })
        } else {
            Exact {
                rational: BigRational::zero(),
                surd: coefficient,
                radicand: inside,
            }
        }
    }

    /// √r for a nonnegative rational r, when numerator and denominator fit in u64.
    pub fn sqrt_of_rational(r: &BigRational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Self::from_rational(BigRational::zero()));
        }
        // √(p/q) = √(p·q) / q
        let radicand = (r.numer() * r.denom()).to_u64()?;
        let denom = BigRational::from_integer(r.denom().clone());
        Some(Self::sqrt_of_integer(BigRational::one() / denom, radicand))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.rational.clone())
    }

    fn normalized(rational: BigRational, surd: BigRational, radicand: u64) -> Self {
        if surd.is_zero() || radicand == 1 {
            let rational = if radicand == 1 { rational + surd } else { rational };
            Exact {
                rational,
                surd: BigRational::zero(),
                radicand: 1,
            }
        } else {
            Exact {
                rational,
                surd,
                radicand,
            }
        }
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (1, d) | (d, 1) => d,
            (a, b) if a == b => a,
            (a, b) => panic!("cannot combine values in Q(√{a}) and Q(√{b})"),
        }
    }

    fn d(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.radicand))
    }

    pub fn signum(&self) -> Ordering {
        let r = self.rational.cmp(&BigRational::zero());
        let s = self.surd.cmp(&BigRational::zero());
        match (r, s) {
            (r, Ordering::Equal) => r,
            (Ordering::Equal, s) => s,
            (r, s) if r == s => r,
            (r, s) => {
                // opposite signs: the larger magnitude wins
                let lhs = &self.rational * &self.rational;
                let rhs = &self.surd * &self.surd * self.d();
                if lhs > rhs {
                    r
                } else {
                    s
                }
            }
        }
    }

    pub fn recip(&self) -> Self {
        // (r + s√d)^{-1} = (r − s√d) / (r² − s²d)
        let norm = &self.rational * &self.rational - &self.surd * &self.surd * self.d();
        assert!(!norm.is_zero(), "division by zero");
        Self::normalized(
            &self.rational / &norm,
            -(&self.surd / &norm),
            self.radicand,
        )
    }
}

fn square_free_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut count = 0;
        while rest % p == 0 {
            rest /= p;
            count += 1;
        }
        for _ in 0..count / 2 {
            outside *= p;
        }
        if count % 2 == 1 {
            inside *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outside, inside * rest)
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Exact({self})")
    }
}

/// Renders in the syntax accepted by [`FromStr`]: `p/q`, `p/q*sqrt(d)`,
/// or `p/q+r/s*sqrt(d)`.
impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let surd = if self.surd.is_one() {
            format!("sqrt({})", self.radicand)
        } else if (-self.surd.clone()).is_one() {
            format!("-sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", self.surd, self.radicand)
        };
        if self.rational.is_zero() {
            write!(f, "{surd}")
        } else if surd.starts_with('-') {
            write!(f, "{}{surd}", self.rational)
        } else {
            write!(f, "{}+{surd}", self.rational)
        }
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for Exact {
    type Output = Exact;
    fn add(self, rhs: Exact) -> Exact {
        let d = self.common_radicand(&rhs);
        Exact::normalized(self.rational + rhs.rational, self.surd + rhs.surd, d)
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, rhs: Exact) -> Exact {
        let d = self.common_radicand(&rhs);
        Exact::normalized(self.rational - rhs.rational, self.surd - rhs.surd, d)
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, rhs: Exact) -> Exact {
        let d = self.common_radicand(&rhs);
        let dd = BigRational::from_integer(BigInt::from(d));
        let rational = &self.rational * &rhs.rational + &self.surd * &rhs.surd * dd;
        let surd = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
        Exact::normalized(rational, surd, d)
    }
}

impl Div for Exact {
    type Output = Exact;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Exact) -> Exact {
        self * rhs.recip()
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact::normalized(-self.rational, -self.surd, self.radicand)
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exact::from_rational(BigRational::zero())
    }
    fn one() -> Self {
        Exact::from_rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Exact::from_rational(BigRational::from_integer(v.into()))
    }
    fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.surd.is_zero() {
            r
        } else {
            r + self.surd.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
        }
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }
    fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn negligible(&self, _tol: f64) -> bool {
        Scalar::is_zero(self)
    }
    fn exceeds(&self, _tol: f64) -> bool {
        self.signum() == Ordering::Greater
    }
    fn sqrt(&self) -> Option<Self> {
        if !self.is_rational() {
            return None;
        }
        Exact::sqrt_of_rational(&self.rational)
    }
    fn field_tag(&self) -> u64 {
        self.radicand
    }
}

fn parse_integer(s: &str, whole: &str) -> Result<BigInt, ParseScalarError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| ParseScalarError::Malformed(whole.to_string()))
}

/// Parses `p/q` or a decimal with optional exponent, without sign.
fn parse_unsigned_rational(s: &str, whole: &str) -> Result<BigRational, ParseScalarError> {
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_unsigned_rational(p, whole)?;
        let q = parse_unsigned_rational(q, whole)?;
        if q.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(whole.to_string()));
        }
        return Ok(p / q);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp = &s[i + 1..];
            let (neg, digits) = match exp.as_bytes().first() {
                Some(b'-') => (true, &exp[1..]),
                Some(b'+') => (false, &exp[1..]),
                _ => (false, exp),
            };
            let e: i64 = parse_integer(digits, whole)?
                .to_i64()
                .ok_or_else(|| ParseScalarError::Malformed(whole.to_string()))?;
            (&s[..i], if neg { -e } else { e })
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseScalarError::Malformed(whole.to_string()));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = parse_integer(&digits, whole)?;
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 4096 {
        return Err(ParseScalarError::Malformed(whole.to_string()));
    }
    let ten = BigInt::from(10);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        BigRational::from_integer(numer * pow)
    } else {
        BigRational::new(numer, pow)
    })
}

/// One signed term: a rational, or `[c*]sqrt(r)[/q]`.
fn parse_term(term: &str, whole: &str) -> Result<Exact, ParseScalarError> {
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, term[1..].trim()),
        Some(b'+') => (false, term[1..].trim()),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(ParseScalarError::Malformed(whole.to_string()));
    }
    let value = match body.find("sqrt(") {
        None => Exact::from_rational(parse_unsigned_rational(body, whole)?),
        Some(start) => {
            let prefix = body[..start].trim();
            let close = body[start..]
                .find(')')
                .map(|i| start + i)
                .ok_or_else(|| ParseScalarError::Malformed(whole.to_string()))?;
            let inner = body[start + 5..close].trim();
            let suffix = body[close + 1..].trim();
            let coefficient = if prefix.is_empty() {
                BigRational::one()
            } else {
                let c = prefix
                    .strip_suffix('*')
                    .ok_or_else(|| ParseScalarError::Malformed(whole.to_string()))?;
                parse_unsigned_rational(c.trim(), whole)?
            };
            let divisor = if suffix.is_empty() {
                BigRational::one()
            } else {
                let q = suffix
                    .strip_prefix('/')
                    .ok_or_else(|| ParseScalarError::Malformed(whole.to_string()))?;
                let q = parse_unsigned_rational(q.trim(), whole)?;
                if q.is_zero() {
                    return Err(ParseScalarError::ZeroDenominator(whole.to_string()));
                }
                q
            };
            if inner.starts_with('-') {
                return Err(ParseScalarError::NegativeRadicand(whole.to_string()));
            }
            let radicand = parse_unsigned_rational(inner, whole)?;
            let root = Exact::sqrt_of_rational(&radicand)
                .ok_or_else(|| ParseScalarError::Malformed(whole.to_string()))?;
            root * Exact::from_rational(coefficient / divisor)
        }
    };
    Ok(if negative { -value } else { value })
}

impl FromStr for Exact {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        // split into signed terms at top-level '+'/'-' (not exponent signs)
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        let mut depth = 0i32;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if i > 0 && depth == 0 => {
                    let prev = bytes[..i].iter().rev().find(|c| !c.is_ascii_whitespace());
                    if !matches!(prev, Some(b'e' | b'E' | b'*' | b'/' | b'+' | b'-')) {
                        terms.push(&s[start..i]);
                        start = i;
                    }
                }
                _ => {}
            }
        }
        terms.push(&s[start..]);
        let mut total = <Exact as Scalar>::zero();
        for term in terms {
            let value = parse_term(term.trim(), s)?;
            if !total.compatible(&value) {
                return Err(ParseScalarError::MixedRadicands(s.to_string()));
            }
            total = total + value;
        }
        Ok(total)
    }
}

/// Parses a float from plain decimal syntax, or through the exact grammar
/// for inputs such as `sqrt(3)/2` or `1/3`.
pub fn parse_f64(s: &str) -> Result<f64, ParseScalarError> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        if v.is_finite() {
            return Ok(v);
        }
        return Err(ParseScalarError::Malformed(s.to_string()));
    }
    Ok(t.parse::<Exact>()?.to_f64())
}
