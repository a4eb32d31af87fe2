//! Exact scalars in ℚ(i).
//!
//! A `Scalar` is a pair of arbitrary-precision rationals (re, im); `im == 0`
//! means the value is plain rational. `num::BigRational` keeps every value in
//! lowest terms with a positive denominator, so equality is structural.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit i (the "external" i of complexification).
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn rat(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { re: r, im: BigRational::zero() }
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|² = re² + im², a rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.im.is_zero() {
            return Scalar { re: self.re.recip(), im: BigRational::zero() };
        }
        let n = self.norm_sq();
        Scalar { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn div(&self, other: &Scalar) -> Self {
        self * &other.inv()
    }

    /// Multiply by i in place semantics: i·(a+bi) = −b + ai.
    pub fn times_i(&self) -> Self {
        Scalar { re: -self.im.clone(), im: self.re.clone() }
    }

    /// Parse "a", "-a", or "a/b" (rational only; CLI entry points are real).
    pub fn parse_rational(s: &str) -> Result<Self, String> {
        parse_rational_str(s).map(Scalar::from_rational)
    }
}

/// Parse "a", "-a", or "a/b" into an exact rational.
pub fn parse_rational_str(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|e| format!("bad numerator {s:?}: {e}"))?;
    let d: BigInt = den.parse().map_err(|e| format!("bad denominator {s:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical rational string: "a" when the denominator is 1, else "a/b".
pub fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rational_str(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", rational_str(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}{}i", rational_str(&self.re), rational_str(&self.im))
        } else {
            write!(f, "{}+{}i", rational_str(&self.re), rational_str(&self.im))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar { re: &self.re $op &rhs.re, im: &self.im $op &rhs.im }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // fast path: both rational
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar { re: &self.re * &rhs.re, im: BigRational::zero() };
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        (&self).mul(&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = (&*self).mul(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_round_trip() {
        let a = Scalar::rat(3, 4);
        let b = Scalar::rat(-5, 6);
        let c = &a + &b;
        assert_eq!(c, Scalar::rat(-1, 12));
        assert_eq!(&c - &b, a);
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        let z = Scalar::complex(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(3)),
        );
        assert_eq!(&z * &z.inv(), Scalar::one());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(Scalar::parse_rational("3/6").unwrap(), Scalar::rat(1, 2));
        assert_eq!(Scalar::parse_rational("-7").unwrap(), Scalar::from_int(-7));
        assert!(Scalar::parse_rational("1/0").is_err());
        assert_eq!(Scalar::rat(4, -8).to_string(), "-1/2");
        assert_eq!(Scalar::from_int(5).to_string(), "5");
    }

    #[test]
    fn times_i_matches_mul() {
        let z = Scalar::complex(
            BigRational::new(BigInt::from(2), BigInt::from(3)),
            BigRational::new(BigInt::from(5), BigInt::from(7)),
        );
        assert_eq!(z.times_i(), &Scalar::i() * &z);
    }
}
