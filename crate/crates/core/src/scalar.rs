//! Exact scalars: rationals and Gaussian rationals `re + im·i`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Error raised when a rational or Gaussian-rational literal cannot be read.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed number `{0}`")]
    Malformed(String),
}

/// Parses `7`, `-3/4` or a terminating decimal such as `0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ScalarParseError::Malformed(s.to_string()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
        let d: BigInt = d.parse().map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
        if d.is_zero() {
            return Err(ScalarParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(ScalarParseError::Malformed(s.to_string()));
        }
        let whole = if ip_digits.is_empty() { "0" } else { ip_digits };
        let digits: BigInt = format!("{whole}{fp}")
            .parse()
            .map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
        let denom = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(digits, denom);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
    Ok(BigRational::from_integer(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// An element `re + im·i` of the Gaussian rationals Q(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Multiplication by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Self { re: -self.im.clone(), im: self.re.clone() },
            2 => -self.clone(),
            _ => Self { re: self.im.clone(), im: -self.re.clone() },
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GaussianRational { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| GaussianRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by zero Gaussian rational"));

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical literal: `3/4`, `-1i`, `(1/2 + 3i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}i)", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarParseError;

    /// Accepts `a`, `bi`, `i`, `-i`, `a + bi`, `a - bi` and the same wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t).trim();
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarParseError::Malformed(s.to_string()));
        }
        // split at the last top-level sign that is not the leading one
        let bytes = compact.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e' {
                split = Some(k);
                break;
            }
        }
        let parse_imag = |p: &str| -> Result<Rational, ScalarParseError> {
            let body = p.strip_suffix('i').ok_or_else(|| ScalarParseError::Malformed(s.to_string()))?;
            match body {
                "" | "+" => Ok(Rational::one()),
                "-" => Ok(-Rational::one()),
                b => parse_rational(b),
            }
        };
        match split {
            Some(k) => {
                let (a, b) = compact.split_at(k);
                if !b.ends_with('i') {
                    return Err(ScalarParseError::Malformed(s.to_string()));
                }
                Ok(Self::new(parse_rational(a)?, parse_imag(b)?))
            }
            None if compact.ends_with('i') => Ok(Self::new(Rational::zero(), parse_imag(&compact)?)),
            None => Ok(Self::real(parse_rational(&compact)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_are_exact() {
        let a: GaussianRational = "1/2 + 1i".parse().unwrap();
        let b: GaussianRational = "-1/3i".parse().unwrap();
        let p = &a * &b;
        assert_eq!(p, GaussianRational::new(rat(1, 3), rat(-1, 6)));
        assert_eq!(&(&p / &b) - &a, GaussianRational::zero());
        assert_eq!(a.conj().im, rat(-1, 1));
        assert_eq!(a.norm_sqr(), rat(5, 4));
    }

    #[test]
    fn parses_literals() {
        assert_eq!("i".parse::<GaussianRational>().unwrap(), GaussianRational::i());
        assert_eq!("-i".parse::<GaussianRational>().unwrap(), -GaussianRational::i());
        assert_eq!("0.25".parse::<GaussianRational>().unwrap(), GaussianRational::from_ratio(1, 4));
        assert_eq!("-1.5".parse::<GaussianRational>().unwrap(), GaussianRational::from_ratio(-3, 2));
        assert_eq!(
            "(-1/2 + 1i)".parse::<GaussianRational>().unwrap(),
            GaussianRational::new(rat(-1, 2), rat(1, 1))
        );
        assert!(matches!("1/0".parse::<GaussianRational>(), Err(ScalarParseError::ZeroDenominator(_))));
        assert!("1/x".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn i_powers() {
        let z = GaussianRational::new(rat(2, 1), rat(3, 1));
        assert_eq!(z.mul_i_pow(1), &z * &GaussianRational::i());
        assert_eq!(z.mul_i_pow(3), &z * &(-GaussianRational::i()));
        assert_eq!(z.mul_i_pow(4), z);
    }

    proptest::proptest! {
        #[test]
        fn display_parse_roundtrip(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let z = GaussianRational::new(rat(a, b), rat(c, d));
            let back: GaussianRational = z.to_string().parse().unwrap();
            proptest::prop_assert_eq!(back, z);
        }
    }
}
