//! Gaussian rationals: complex numbers whose real and imaginary parts are
//! arbitrary-precision rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

pub type Rational = num_rational::BigRational;

/// Parse a rational literal of the form `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| LinalgError::Parse(format!("bad rational literal {s:?}")))?;
    Ok(r)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CScalar {
    pub re: Rational,
    pub im: Rational,
}

impl CScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat(n))
    }

    /// Integer pair `re + im·i`.
    pub fn int(re: i64, im: i64) -> Self {
        Self::new(rat(re), rat(im))
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the value is a real integer.
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Zero for CScalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CScalar {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl From<Rational> for CScalar {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for CScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn add(self, o: &CScalar) -> CScalar {
        CScalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn sub(self, o: &CScalar) -> CScalar {
        CScalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn mul(self, o: &CScalar) -> CScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return CScalar::real(&self.re * &o.re);
        }
        CScalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    /// Panics on division by zero; use [`CScalar::inv`] to test first.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &CScalar) -> CScalar {
        let inv = o.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CScalar> for CScalar {
            type Output = CScalar;
            fn $m(self, o: CScalar) -> CScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CScalar> for CScalar {
            type Output = CScalar;
            fn $m(self, o: &CScalar) -> CScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar::new(-self.re, -self.im)
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&CScalar> for CScalar {
    fn add_assign(&mut self, o: &CScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&CScalar> for CScalar {
    fn sub_assign(&mut self, o: &CScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&CScalar> for CScalar {
    fn mul_assign(&mut self, o: &CScalar) {
        *self = &*self * o;
    }
}

impl fmt::Display for CScalar {
    /// `3`, `-1/2`, `2i`, `-i`, `(1/2-3i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |r: &Rational| -> String {
            if r.is_one() {
                "i".to_string()
            } else if (-r).is_one() {
                "-i".to_string()
            } else {
                format!("{}i", fmt_rational(r))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", imag(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let abs = self.im.abs();
                let tail = if abs.is_one() { "i".to_string() } else { format!("{}i", fmt_rational(&abs)) };
                write!(f, "({}{}{})", fmt_rational(&self.re), sign, tail)
            }
        }
    }
}

/// Least common multiple of the denominators of both parts.
pub fn common_denominator(z: &CScalar) -> BigInt {
    z.re.denom().lcm(z.im.denom())
}
