//! Exact scalars: complex rationals, rational text I/O and the Rossi parameter.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses `p/q`, an integer, or a finite decimal such as `0.05` into an exact rational.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && int_digits.is_empty()
            || !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
        {
            return Err(err());
        }
        let digits = format!("{int_digits}{frac}");
        let mut num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let num: BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(num))
}

/// Formats a rational as `p/q`, or as a bare integer when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(Self::new(num.re / &n, num.im / n))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl Zero for ComplexRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<BigRational> for ComplexRational {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for ComplexRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl AddAssign<&ComplexRational> for ComplexRational {
    fn add_assign(&mut self, rhs: &ComplexRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl SubAssign<&ComplexRational> for ComplexRational {
    fn sub_assign(&mut self, rhs: &ComplexRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// Panics on a zero divisor; use [`ComplexRational::checked_div`] where that can happen.
impl Div for ComplexRational {
    type Output = ComplexRational;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else {
            write!(
                f,
                "({}, {})",
                format_rational(&self.re),
                format_rational(&self.im)
            )
        }
    }
}

impl FromStr for ComplexRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (re, im) = inner.split_once(',').ok_or_else(|| Error::Parse {
                what: "complex rational",
                input: s.to_string(),
            })?;
            return Ok(Self::new(parse_rational(re)?, parse_rational(im)?));
        }
        Ok(Self::real(parse_rational(t)?))
    }
}

/// Modulus |t| of the Rossi deformation parameter, kept exact.
///
/// Only |t| is stored: conjugating by the diagonal unitary
/// `diag(1, e^{iθ}, e^{2iθ}, ...)` along each conjugate-Lewy chain maps the
/// operator for `t = |t| e^{iθ}` to the one for `|t|`, so the spectrum only
/// depends on the modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RossiParam {
    t_abs: BigRational,
}

impl RossiParam {
    pub fn new(t_abs: BigRational) -> Result<Self> {
        if t_abs.is_negative() || t_abs >= BigRational::one() {
            return Err(Error::ParamOutOfRange(format_rational(&t_abs)));
        }
        Ok(Self { t_abs })
    }

    pub fn zero() -> Self {
        Self {
            t_abs: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::new(rat(num, den))
    }

    pub fn t_abs(&self) -> &BigRational {
        &self.t_abs
    }

    /// |t|²
    pub fn t_sq(&self) -> BigRational {
        &self.t_abs * &self.t_abs
    }

    /// Normalization h = (1 + |t|²) / (1 − |t|²)², always ≥ 1.
    pub fn h(&self) -> BigRational {
        let s = self.t_sq();
        let one = BigRational::one();
        let denom = (&one - &s) * (&one - &s);
        (one + s) / denom
    }

    pub fn h_f64(&self) -> f64 {
        rational_to_f64(&self.h())
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.t_abs)
    }

    pub fn is_zero(&self) -> bool {
        self.t_abs.is_zero()
    }
}

impl FromStr for RossiParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }
}

impl fmt::Display for RossiParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.t_abs))
    }
}
