//! Coefficient fields for CAR polynomials.
//!
//! Two coefficient types are supported: [`Exact`] (complex numbers with
//! arbitrary-precision rational parts) and [`Complex64`] (floating point).
//! Exact coefficients prune only literal zeros; float coefficients prune
//! anything with modulus at or below [`FLOAT_PRUNE_TOL`].

use std::fmt::Debug;
use std::str::FromStr;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{Complex, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact complex coefficient with rational real and imaginary parts.
pub type Exact = Complex<BigRational>;

/// Float-mode pruning threshold.
pub const FLOAT_PRUNE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse coefficient {input:?}: {reason}")]
pub struct ParseCoeffError {
    pub input: String,
    pub reason: &'static str,
}

impl ParseCoeffError {
    fn new(input: &str, reason: &'static str) -> Self {
        Self {
            input: input.to_string(),
            reason,
        }
    }
}

/// Scalar field used by [`crate::car::CarPolynomial`].
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// `true` for the rational path, where zero tests are literal.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_rational(r: &BigRational) -> Self;

    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn recip(&self) -> Option<Self>;

    /// Zero for pruning purposes.
    fn is_negligible(&self) -> bool;
    fn to_c64(&self) -> Complex64;

    fn format(&self) -> String;
    fn parse(s: &str) -> Result<Self, ParseCoeffError>;

    fn add_assign(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn is_real(&self) -> bool {
        self.to_c64().im == 0.0
    }
}

impl Coeff for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }

    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        // real-only products are by far the common case
        if self.im.is_zero() && other.im.is_zero() {
            return Complex::new(&self.re * &other.re, BigRational::zero());
        }
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }

    fn is_negligible(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn format(&self) -> String {
        format_parts(&self.re, &self.im, |r| r.to_string(), |r| r.is_zero(), |r| {
            r.is_negative()
        }, |r| r.abs().to_string())
    }

    fn parse(s: &str) -> Result<Self, ParseCoeffError> {
        let (re, im) = split_complex(s)?;
        let re = match re {
            Some(t) => parse_rational(t).map_err(|_| ParseCoeffError::new(s, "bad real part"))?,
            None => BigRational::zero(),
        };
        let im = match im {
            Some(t) => parse_rational(t).map_err(|_| ParseCoeffError::new(s, "bad imaginary part"))?,
            None => BigRational::zero(),
        };
        Ok(Complex::new(re, im))
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Coeff for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn recip(&self) -> Option<Self> {
        if *self == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(self.inv())
        }
    }

    fn is_negligible(&self) -> bool {
        self.norm() <= FLOAT_PRUNE_TOL
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn format(&self) -> String {
        format_parts(&self.re, &self.im, |x| x.to_string(), |x| *x == 0.0, |x| {
            x.is_sign_negative()
        }, |x| x.abs().to_string())
    }

    fn parse(s: &str) -> Result<Self, ParseCoeffError> {
        let (re, im) = split_complex(s)?;
        let parse = |t: Option<&str>| -> Result<f64, ParseCoeffError> {
            match t {
                None => Ok(0.0),
                Some(t) => {
                    if let Ok(v) = f64::from_str(t) {
                        return Ok(v);
                    }
                    parse_rational(t)
                        .ok()
                        .and_then(|r| r.to_f64())
                        .ok_or_else(|| ParseCoeffError::new(s, "bad float"))
                }
            }
        };
        Ok(Complex64::new(parse(re)?, parse(im)?))
    }
}

fn format_parts<T>(
    re: &T,
    im: &T,
    show: impl Fn(&T) -> String,
    is_zero: impl Fn(&T) -> bool,
    is_neg: impl Fn(&T) -> bool,
    show_abs: impl Fn(&T) -> String,
) -> String {
    match (is_zero(re), is_zero(im)) {
        (_, true) => show(re),
        (true, false) => format!("{}i", show(im)),
        (false, false) => {
            let sign = if is_neg(im) { '-' } else { '+' };
            format!("({}{}{}i)", show(re), sign, show_abs(im))
        }
    }
}

/// Splits `"(a+bi)"`, `"a"`, `"bi"` into optional real and imaginary tokens.
fn split_complex(s: &str) -> Result<(Option<&str>, Option<&str>), ParseCoeffError> {
    let t = s.trim();
    let t = match (t.strip_prefix('('), t.ends_with(')')) {
        (Some(inner), true) => &inner[..inner.len() - 1],
        (None, false) => t,
        _ => return Err(ParseCoeffError::new(s, "unbalanced parentheses")),
    };
    let t = t.trim();
    if t.is_empty() {
        return Err(ParseCoeffError::new(s, "empty"));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok((Some(t), None));
    };
    // last sign that is not leading and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    fn fix_unit(x: &str) -> &str {
        match x {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        }
    }
    match split {
        None => Ok((None, Some(fix_unit(body)))),
        Some(p) => {
            let re = body[..p].trim();
            let mut im = body[p..].trim();
            if let Some(rest) = im.strip_prefix('+') {
                im = rest;
            }
            Ok((Some(re), Some(fix_unit(im))))
        }
    }
}

/// Parses `"3"`, `"-2/3"` or a finite decimal such as `"0.125"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseCoeffError> {
    let t = s.trim();
    let err = |reason| ParseCoeffError::new(s, reason);
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| err("bad numerator"))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let digits: String = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad decimal"));
        }
        let mut num = BigInt::from_str(&digits).map_err(|_| err("bad decimal"))?;
        if negative {
            num = -num;
        }
        let den = num::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| err("not a rational"))
}

/// Exact real coefficient from a rational literal.
pub fn exact_real(s: &str) -> Result<Exact, ParseCoeffError> {
    parse_rational(s).map(|r| Exact::from_rational(&r))
}

/// Exact coefficient `num/den`.
pub fn ratio(num: i64, den: i64) -> Exact {
    Exact::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
}
