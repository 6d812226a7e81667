//! Arithmetic backends.
//!
//! Every probabilistic object in this crate is generic over a [`Scalar`]:
//! either IEEE `f64` or an exact big rational ([`Rat`]). The structural
//! inequality tests (log-concavity, ultra-log-concavity) are exact in the
//! rational backend; the float backend grants a small relative slack in
//! favor of accepting, since the inequalities under test are non-strict.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Relative slack used by float-backend inequality tests.
pub const FLOAT_SLACK: f64 = 1e-12;

/// A field scalar that can back a probability mass function.
///
/// `Signed` brings the ring operations, `zero`/`one`, and absolute
/// values; this trait adds the backend identity and the conversions.
pub trait Scalar:
    Clone + Debug + PartialOrd + Send + Sync + Signed + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Backend name used in diagnostics and serialized reports.
    const NAME: &'static str;

    fn from_u64(v: u64) -> Self;

    /// Embed an IEEE double exactly (every finite double is rational).
    fn from_f64(x: f64) -> Self;

    /// Nearest-double image of the value.
    fn to_f64(&self) -> f64;

    /// `lhs >= rhs`, with the backend's slack policy.
    ///
    /// Rational: exact comparison. Float: `lhs >= rhs - FLOAT_SLACK * scale`
    /// where `scale` is the larger magnitude of the two sides, so verdicts
    /// near equality err toward `true`.
    fn ge_with_slack(lhs: &Self, rhs: &Self) -> bool;

    /// Exact conversion to a big rational (identity on `Rat`).
    fn to_rational(&self) -> Rat;

    /// Conversion from a big rational: exact for the rational backend,
    /// nearest double for the float backend.
    fn from_rational(q: &Rat) -> Self;

    /// Strictly below zero (`-0.0` is not).
    fn lt_zero(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn ge_with_slack(lhs: &Self, rhs: &Self) -> bool {
        let scale = lhs.abs().max(rhs.abs());
        *lhs >= *rhs - FLOAT_SLACK * scale
    }

    fn to_rational(&self) -> Rat {
        rat_from_f64(*self)
    }

    fn from_rational(q: &Rat) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn from_u64(v: u64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn from_f64(x: f64) -> Self {
        rat_from_f64(x)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn ge_with_slack(lhs: &Self, rhs: &Self) -> bool {
        lhs >= rhs
    }

    fn to_rational(&self) -> Rat {
        self.clone()
    }

    fn from_rational(q: &Rat) -> Self {
        q.clone()
    }
}

/// Exact rational image of a finite double.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).unwrap_or_else(|| panic!("non-finite value {x} has no rational image"))
}

/// Parse a rational literal: an integer (`3`), a fraction (`1/3`),
/// or a terminating decimal (`0.15`, `-2.5e-3`).
pub fn rat_from_str(s: &str) -> crate::error::Result<Rat> {
    use crate::error::Error;
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse("empty rational literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    // Decimal with optional exponent: digits[.digits][e[+/-]digits]
    let (mantissa, exp10) = match s.to_ascii_lowercase().split_once('e') {
        Some((m, e)) => {
            let e: i64 = e
                .parse()
                .map_err(|_| Error::parse(format!("bad exponent in {s:?}")))?;
            (m.to_string(), e)
        }
        None => (s.to_string(), 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i.to_string(), f.to_string()),
        None => (mantissa.clone(), String::new()),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(Error::parse(format!("bad rational literal {s:?}")));
    }
    let n: BigInt = digits
        .parse()
        .map_err(|_| Error::parse(format!("bad rational literal {s:?}")))?;
    let shift = frac_part.len() as i64 - exp10;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        Rat::new(n, ten.pow(shift as u32))
    } else {
        Rat::from_integer(n * ten.pow((-shift) as u32))
    })
}

/// Render a rational as `num/den` (or a bare integer).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
