//! Truncated power series in `x`, computed modulo `x^{N+1}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussRational, RingError};

/// `Σ_{k=0}^{N} c_k x^k` with explicit truncation order `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<GaussRational>,
}

impl PowerSeries {
    /// Builds a series from leading coefficients; missing ones are zero and
    /// coefficients beyond `order` are dropped.
    pub fn new(order: usize, coeffs: Vec<GaussRational>) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, GaussRational::zero());
        Self { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussRational::one(), order)
    }

    pub fn constant(c: GaussRational, order: usize) -> Self {
        Self::new(order, vec![c])
    }

    /// The series `x` itself.
    pub fn x(order: usize) -> Self {
        Self::new(order, vec![GaussRational::zero(), GaussRational::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero above the truncation.
    pub fn coeff(&self, k: usize) -> GaussRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot raise the truncation order");
        Self::new(order, self.coeffs[..=order].to_vec())
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
        Ok(Self { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check(rhs)?;
        Ok(Self { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check(rhs)?;
        let n = self.order;
        let mut out = vec![GaussRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Self { order: n, coeffs: out })
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self, RingError> {
        let c0_inv = self.coeffs[0].inv()?;
        let n = self.order;
        let mut out: Vec<GaussRational> = Vec::with_capacity(n + 1);
        out.push(c0_inv.clone());
        for k in 1..=n {
            let mut acc = GaussRational::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-&(&acc * &c0_inv));
        }
        Ok(Self { order: n, coeffs: out })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i32) -> Result<Self, RingError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::one(self.order);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    /// Panics on mismatched orders; see [`PowerSeries::checked_add`].
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.checked_add(rhs).expect("power series order mismatch")
    }
}

impl<'a> Sub<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.checked_sub(rhs).expect("power series order mismatch")
    }
}

impl<'a> Mul<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.checked_mul(rhs).expect("power series order mismatch")
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = !c.is_real() && !c.re().is_zero();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, if compound { format!("({s})") } else { s.clone() }),
            };
            if any {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            any = true;
            match k {
                0 => write!(f, "{body}")?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        if !any {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `e^{c·x}` truncated at order `order`.
pub fn series_exp(c: &GaussRational, order: usize) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = GaussRational::one();
    coeffs.push(term.clone());
    for k in 1..=order {
        term = &(&term * c) * &GaussRational::from_ratio(1, k as i64);
        coeffs.push(term.clone());
    }
    PowerSeries::new(order, coeffs)
}

/// `t = e^x` at the given order.
pub fn t_series(order: usize) -> PowerSeries {
    series_exp(&GaussRational::one(), order)
}

/// `u_n(t) = (t^{n+1} − t^{−(n+1)})/(t − t^{−1}) + 1`, evaluated through the
/// telescoped sum `t^n + t^{n−2} + … + t^{−n}` (negated and shifted for
/// `n ≤ −2`; the quotient vanishes at `n = −1`).
pub fn u_n_series(n: i64, order: usize) -> PowerSeries {
    let (sign, m) = if n >= 0 {
        (1, n)
    } else if n == -1 {
        return PowerSeries::one(order);
    } else {
        (-1, -n - 2)
    };
    let mut quotient = PowerSeries::zero(order);
    for j in 0..=m {
        let e = m - 2 * j;
        quotient = &quotient + &series_exp(&GaussRational::from_int(e), order);
    }
    let quotient = if sign < 0 { -&quotient } else { quotient };
    &quotient + &PowerSeries::one(order)
}
