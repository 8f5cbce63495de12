//! Exact rational numbers in canonical reduced form.
//!
//! Every value is stored reduced with a positive denominator, so zero is
//! always `0/1` with a nonnegative sign. Text form is an optional leading
//! `-` followed by `num/den`, with the denominator omitted when it is 1.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Unbounded non-negative integer.
pub type Natural = BigUint;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    /// Builds a value from a sign flag and magnitude parts, reducing them.
    pub fn from_parts(negative: bool, num: Natural, den: Natural) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Ok(Rational(BigRational::new(
            BigInt::from_biguint(sign, num),
            BigInt::from(den),
        )))
    }

    /// `1 / 2^n`.
    pub fn inv_pow2(n: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << n))
    }

    /// `2^n`.
    pub fn pow2(n: u32) -> Self {
        Rational::from_integer(BigInt::one() << n)
    }

    /// `1 / 10^n`.
    pub fn inv_pow10(n: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::from(10u32).pow(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Sign flag: 0 for values ≥ 0, 1 for negative values.
    pub fn sign_bit(&self) -> u8 {
        u8::from(self.is_negative())
    }

    /// Magnitude of the reduced numerator.
    pub fn numer_abs(&self) -> Natural {
        self.0.numer().magnitude().clone()
    }

    pub fn denom(&self) -> Natural {
        self.0.denom().magnitude().clone()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        self.0.numer().div_ceil(self.0.denom())
    }

    pub fn clamp_to(&self, lo: &Rational, hi: &Rational) -> Self {
        debug_assert!(lo <= hi);
        if self < lo {
            lo.clone()
        } else if self > hi {
            hi.clone()
        } else {
            self.clone()
        }
    }

    pub fn min_of(a: &Rational, b: &Rational) -> Rational {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max_of(a: &Rational, b: &Rational) -> Rational {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    /// Multiplies by `2^k` exactly.
    pub fn shl(&self, k: u32) -> Self {
        Rational(BigRational::new(self.0.numer() << k, self.0.denom().clone()))
    }

    /// Divides by `2^k` exactly.
    pub fn shr(&self, k: u32) -> Self {
        Rational(BigRational::new(self.0.numer().clone(), self.0.denom() << k))
    }

    /// Bit length of the denominator.
    pub fn denom_bits(&self) -> u64 {
        self.0.denom().bits()
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && *self <= Rational::one()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated toward zero after `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (self.0.numer().abs() * &scale) / self.0.denom();
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let sign = if self.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits as usize
        )
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `[-]num[/den]` and plain decimals such as `0.26` or `-1.5`.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let digits = |t: &str| -> Result<Natural> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<Natural>().map_err(|_| bad())
        };
        let value = if let Some((num, den)) = body.split_once('/') {
            let den = digits(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::from_parts(negative, digits(num)?, den)?
        } else if let Some((int, frac)) = body.split_once('.') {
            let int = if int.is_empty() { Natural::zero() } else { digits(int)? };
            let scale = Natural::from(10u32).pow(frac.len() as u32);
            let num = int * &scale + digits(frac)?;
            Rational::from_parts(negative, num, scale)?
        } else {
            Rational::from_parts(negative, digits(body)?, Natural::one())?
        };
        Ok(value)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0
            .partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Shorthand for `Rational::new(n, d)` on machine integers.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}
