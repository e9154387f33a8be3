//! Bivariate power series in `x, y`, truncated at total degree `N`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussRational, PowerSeries, RingError};

/// `Σ c_{jk} x^j y^k` over `j + k ≤ order`. Zero coefficients are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    order: usize,
    coeffs: BTreeMap<(usize, usize), GaussRational>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussRational::one(), order)
    }

    pub fn constant(c: GaussRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.add_term(0, 0, &c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), GaussRational)>>(order: usize, iter: I) -> Self {
        let mut s = Self::zero(order);
        for ((j, k), c) in iter {
            s.add_term(j, k, &c);
        }
        s
    }

    /// Embeds a series in `x` (the `y`-degree is zero).
    pub fn from_x(s: &PowerSeries) -> Self {
        Self::from_terms(s.order(), s.coeffs().iter().enumerate().map(|(j, c)| ((j, 0), c.clone())))
    }

    /// Embeds a series in `y`.
    pub fn from_y(s: &PowerSeries) -> Self {
        Self::from_terms(s.order(), s.coeffs().iter().enumerate().map(|(k, c)| ((0, k), c.clone())))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize, k: usize) -> GaussRational {
        self.coeffs.get(&(j, k)).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &GaussRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    fn add_term(&mut self, j: usize, k: usize, c: &GaussRational) {
        if j + k > self.order || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((j, k)).or_insert_with(GaussRational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&(j, k));
        }
    }

    fn check(&self, rhs: &Self) -> Result<(), RingError> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(RingError::OrderMismatch { lhs: self.order as i64, rhs: rhs.order as i64 })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (&(j, k), c) in &rhs.coeffs {
            out.add_term(j, k, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, RingError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check(rhs)?;
        let mut out = Self::zero(self.order);
        for (&(j1, k1), c1) in &self.coeffs {
            for (&(j2, k2), c2) in &rhs.coeffs {
                if j1 + j2 + k1 + k2 <= self.order {
                    out.add_term(j1 + j2, k1 + k2, &(c1 * c2));
                }
            }
        }
        Ok(out)
    }

    /// Two-sided inverse `c₀^{-1} Σ_k (−r/c₀)^k` where `self = c₀ + r`.
    pub fn invert(&self) -> Result<Self, RingError> {
        let c0_inv = self.coeff(0, 0).inv()?;
        let mut r = self.clone();
        r.coeffs.remove(&(0, 0));
        let step = Self::from_terms(self.order, r.coeffs.iter().map(|(&e, c)| (e, -&(c * &c0_inv))));
        let mut acc = Self::one(self.order);
        let mut power = Self::one(self.order);
        // r has no constant term, so step^k vanishes once k exceeds the order.
        for _ in 0..self.order {
            power = &power * &step;
            acc = &acc + &power;
        }
        Ok(Self::from_terms(self.order, acc.coeffs.iter().map(|(&e, c)| (e, c * &c0_inv))))
    }
}

impl<'a> Add<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        self.checked_add(rhs).expect("bivariate series order mismatch")
    }
}

impl<'a> Sub<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        self.checked_sub(rhs).expect("bivariate series order mismatch")
    }
}

impl<'a> Mul<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        self.checked_mul(rhs).expect("bivariate series order mismatch")
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        BiSeries { order: self.order, coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(j, k), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})x^{j}y^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_round_trip() {
        let s = BiSeries::from_terms(
            5,
            [
                ((0, 0), GaussRational::from_int(3)),
                ((1, 0), GaussRational::i()),
                ((0, 2), GaussRational::from_ratio(-1, 2)),
                ((2, 1), GaussRational::from_int(7)),
            ],
        );
        let inv = s.invert().unwrap();
        assert_eq!(&s * &inv, BiSeries::one(5));
        assert_eq!(&inv * &s, BiSeries::one(5));
    }

    #[test]
    fn non_unit_rejected() {
        let s = BiSeries::from_terms(3, [((1, 0), GaussRational::one())]);
        assert_eq!(s.invert(), Err(RingError::NotAUnit));
    }
}
