//! Laurent series in `x` with a finite principal part, used to push
//! `z^{-1}`-bearing Laurent polynomials through the substitution
//! `a ↦ t^{n+1}, z ↦ t − t^{-1}` before poles cancel.
//!
//! Precision is tracked as an absolute degree: a series is known through
//! `x^order`. Products lose precision when a factor has a pole, so the
//! result order is `min(o₁ + m₂, o₂ + m₁)`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussRational, LaurentPoly, PowerSeries, RingError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    min_deg: i32,
    order: i32,
    coeffs: Vec<GaussRational>,
}

impl LaurentSeries {
    /// Coefficients for `x^{min_deg} … x^{order}`; missing trailing ones are zero.
    pub fn new(min_deg: i32, order: i32, coeffs: Vec<GaussRational>) -> Self {
        let len = (order - min_deg + 1).max(0) as usize;
        let mut coeffs = coeffs;
        coeffs.resize(len, GaussRational::zero());
        Self { min_deg, order, coeffs }
    }

    pub fn constant(c: GaussRational, order: i32) -> Self {
        Self::new(0, order, vec![c])
    }

    pub fn min_deg(&self) -> i32 {
        self.min_deg
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn coeff(&self, k: i32) -> GaussRational {
        if k < self.min_deg || k > self.order {
            return GaussRational::zero();
        }
        self.coeffs[(k - self.min_deg) as usize].clone()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|k| k as i32 + self.min_deg)
    }

    pub fn has_principal_part(&self) -> bool {
        (self.min_deg..0).any(|k| !self.coeff(k).is_zero())
    }

    /// Converts to a power series truncated at `order`. Fails when a pole
    /// survives or the known precision is below `order`.
    pub fn to_power_series(&self, order: usize) -> Result<PowerSeries, RingError> {
        if self.has_principal_part() {
            return Err(RingError::PrincipalPart);
        }
        if (order as i32) > self.order {
            return Err(RingError::PrecisionLoss { needed: order as i64, available: self.order as i64 });
        }
        Ok(PowerSeries::new(order, (0..=order as i32).map(|k| self.coeff(k)).collect()))
    }

    pub fn invert(&self) -> Result<Self, RingError> {
        let v = self.valuation().ok_or(RingError::ZeroDivisor)?;
        let rel = (self.order - v) as usize;
        let unit = PowerSeries::new(rel, (v..=self.order).map(|k| self.coeff(k)).collect());
        let inv = unit.invert()?;
        Ok(Self::new(-v, -v + rel as i32, inv.coeffs().to_vec()))
    }

    pub fn pow(&self, e: i32) -> Result<Self, RingError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::constant(GaussRational::one(), self.order.max(base.order));
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl From<&PowerSeries> for LaurentSeries {
    fn from(s: &PowerSeries) -> Self {
        Self::new(0, s.order() as i32, s.coeffs().to_vec())
    }
}

fn combine(lhs: &LaurentSeries, rhs: &LaurentSeries, negate: bool) -> LaurentSeries {
    let min_deg = lhs.min_deg.min(rhs.min_deg);
    let order = lhs.order.min(rhs.order);
    let coeffs = (min_deg..=order)
        .map(|k| {
            let b = rhs.coeff(k);
            let a = lhs.coeff(k);
            if negate {
                &a - &b
            } else {
                &a + &b
            }
        })
        .collect();
    LaurentSeries::new(min_deg, order, coeffs)
}

impl<'a> Add<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        combine(self, rhs, false)
    }
}

impl<'a> Sub<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        combine(self, rhs, true)
    }
}

impl<'a> Mul<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let min_deg = self.min_deg + rhs.min_deg;
        let order = (self.order + rhs.min_deg).min(rhs.order + self.min_deg);
        let len = (order - min_deg + 1).max(0) as usize;
        let mut out = vec![GaussRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        LaurentSeries::new(min_deg, order, out)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::new(self.min_deg, self.order, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Ring homomorphism `ℚ(i)[a^{±1}, z^{±1}] → ℚ(i)((x))` fixed by the images of
/// `a` and `z`. Both images must be units (nonzero).
pub fn laurent_substitute(
    p: &LaurentPoly,
    a_val: &LaurentSeries,
    z_val: &LaurentSeries,
) -> Result<LaurentSeries, RingError> {
    let base_order = a_val.order().min(z_val.order());
    let mut acc = LaurentSeries::constant(GaussRational::zero(), base_order);
    let a_inv = if p.terms().any(|((da, _), _)| da < 0) { Some(a_val.invert()?) } else { None };
    let z_inv = if p.terms().any(|((_, dz), _)| dz < 0) { Some(z_val.invert()?) } else { None };
    let power = |base: &LaurentSeries, inv: &Option<LaurentSeries>, e: i32| -> LaurentSeries {
        let b = if e < 0 { inv.as_ref().expect("inverse computed for negative exponents") } else { base };
        let mut out = LaurentSeries::constant(GaussRational::one(), base_order);
        for _ in 0..e.unsigned_abs() {
            out = &out * b;
        }
        out
    };
    for ((da, dz), c) in p.terms() {
        let term = &power(a_val, &a_inv, da) * &power(z_val, &z_inv, dz);
        let scaled = LaurentSeries::new(term.min_deg, term.order, term.coeffs.iter().map(|x| x * c).collect());
        acc = &acc + &scaled;
    }
    Ok(acc)
}

/// Substitutes `a ↦ t^{n+1}`, `z ↦ t − t^{-1}` (with `t = e^x`) and reports
/// the result as a power series of the requested order. Working precision is
/// raised internally to absorb the pole order in `z`; a surviving principal
/// part is an error.
pub fn substitute_series(p: &LaurentPoly, n: i64, order: usize) -> Result<PowerSeries, RingError> {
    let pole = (-p.min_deg_z()).max(0) as usize;
    let work = order + pole + 1;
    let t = super::t_series(work);
    let tinv = t.invert()?;
    let a_val = LaurentSeries::from(&t.pow(n as i32 + 1)?);
    let z_val = LaurentSeries::from(&(&t - &tinv));
    laurent_substitute(p, &a_val, &z_val)?.to_power_series(order)
}
