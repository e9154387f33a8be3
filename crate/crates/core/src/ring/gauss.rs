//! Exact Gaussian rationals `re + im·i` with arbitrary-precision parts.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::RingError;

/// An element of ℚ(i). Both parts are kept in lowest terms by `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|² as a rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::NotAUnit);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self, RingError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Returns the value as an integer when it is a real integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    /// Canonical wire form `p/q+p/q·i` (both parts always written as fractions).
    pub fn to_wire(&self) -> String {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{}{}{}·i", wire_ratio(&self.re), sign, wire_ratio(&self.im.abs()))
    }

    pub fn from_wire(s: &str) -> Result<Self, RingError> {
        let bad = || RingError::Parse(format!("malformed Gaussian rational {s:?}"));
        let body = s.strip_suffix("·i").ok_or_else(bad)?;
        // The real part may itself start with '-', so search for the separator after it.
        let split = body
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .ok_or_else(bad)?;
        let (re, im) = body.split_at(split);
        let re = parse_ratio(re).ok_or_else(bad)?;
        let im_abs = parse_ratio(&im[1..]).ok_or_else(bad)?;
        if im_abs.is_negative() {
            return Err(bad());
        }
        let im = if im.starts_with('-') { -im_abs } else { im_abs };
        Ok(Self::new(re, im))
    }
}

pub(crate) fn wire_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn parse_ratio(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let n = BigInt::from_str(n).ok()?;
    let d = BigInt::from_str(d).ok()?;
    if !d.is_positive() {
        return None;
    }
    let r = BigRational::new(n.clone(), d.clone());
    // Reject non-reduced input so the wire form stays canonical.
    (r.numer() == &n && r.denom() == &d).then_some(r)
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussRational {
    fn from(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    /// Panics on division by zero; use [`GaussRational::inv`] for a checked path.
    fn div(self, rhs: &GaussRational) -> GaussRational {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -&self
    }
}

impl fmt::Display for GaussRational {
    /// Human form: `3`, `-1/2`, `2i`, `1/2-3i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_unit = |r: &BigRational| {
            if r.is_one() {
                "i".to_string()
            } else {
                format!("{r}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", im_unit(&-self.im.clone()))
                } else {
                    write!(f, "{}", im_unit(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}", self.re, sign, im_unit(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
