//! Sparse Laurent polynomials in `a` and `z`, plus one-variable Laurent
//! polynomials used when specializing to a single variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussRational, RingError};

/// Exponent pair `(deg_a, deg_z)`.
pub type Exponent = (i32, i32);

/// An element of ℚ(i)[a^{±1}, z^{±1}]. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, GaussRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: GaussRational, deg_a: i32, deg_z: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_a, deg_z), c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, GaussRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    /// The variable `a`.
    pub fn a() -> Self {
        Self::monomial(GaussRational::one(), 1, 0)
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(GaussRational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_a: i32, deg_z: i32) -> GaussRational {
        self.terms.get(&(deg_a, deg_z)).cloned().unwrap_or_else(GaussRational::zero)
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &GaussRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponent, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(GaussRational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// The polynomial is a unit iff it is a single monomial.
    pub fn inv(&self) -> Result<Self, RingError> {
        match self.terms.iter().next() {
            Some((&(da, dz), c)) if self.terms.len() == 1 => Ok(Self::monomial(c.inv()?, -da, -dz)),
            _ => Err(RingError::NotAUnit),
        }
    }

    /// Integer power; negative exponents require a monomial.
    pub fn pow(&self, e: i32) -> Result<Self, RingError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Smallest z-exponent present (0 for the zero polynomial).
    pub fn min_deg_z(&self) -> i32 {
        self.terms.keys().map(|&(_, dz)| dz).min().unwrap_or(0)
    }

    /// Specializes to a one-variable Laurent polynomial. Negative powers of
    /// `z` are cleared by multiplying through by `z^k` and dividing the image
    /// exactly by `z_val^k`; a nonzero remainder is an error.
    pub fn specialize(&self, a_val: &UniLaurent, z_val: &UniLaurent) -> Result<UniLaurent, RingError> {
        let k = (-self.min_deg_z()).max(0);
        if k > 0 && z_val.is_zero() {
            return Err(RingError::ZeroDivisor);
        }
        let a_inv = a_val.inv()?;
        let mut acc = UniLaurent::zero();
        let mut z_pows: BTreeMap<i32, UniLaurent> = BTreeMap::new();
        for (&(da, dz), c) in &self.terms {
            let ap = if da >= 0 { a_val.pow_nonneg(da as u32) } else { a_inv.pow_nonneg(da.unsigned_abs()) };
            let shifted = (dz + k) as u32;
            let zp = z_pows.entry(dz).or_insert_with(|| z_val.pow_nonneg(shifted)).clone();
            acc = &acc + &(&(&ap * &zp) * &UniLaurent::constant(c.clone()));
        }
        if k == 0 {
            return Ok(acc);
        }
        let (quot, rem) = acc.div_rem(&z_val.pow_nonneg(k as u32))?;
        if !rem.is_zero() {
            return Err(RingError::InexactDivision);
        }
        Ok(quot)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(a1, z1), c1) in &self.terms {
            for (&(a2, z2), c2) in &rhs.terms {
                out.add_term((a1 + a2, z1 + z2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, vars: &[(&str, i32)]) -> fmt::Result {
    let mut first = true;
    for &(v, d) in vars {
        if d == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if d == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{d}")?;
        }
    }
    Ok(())
}

fn fmt_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I, names: &[&str]) -> fmt::Result
where
    I: Iterator<Item = (Vec<i32>, &'a GaussRational)>,
{
    let mut any = false;
    for (degs, c) in terms {
        let is_const = degs.iter().all(|&d| d == 0);
        let s = c.to_string();
        let compound = !c.is_real() && !c.re().is_zero();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ => (false, s.clone()),
        };
        if any {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        } else if neg {
            write!(f, "-")?;
        }
        any = true;
        let coeff_body = if compound { format!("({body})") } else { body };
        if is_const {
            write!(f, "{coeff_body}")?;
        } else {
            if coeff_body != "1" {
                write!(f, "{coeff_body}*")?;
            }
            let vars: Vec<(&str, i32)> = names.iter().copied().zip(degs.iter().copied()).collect();
            fmt_monomial(f, &vars)?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    /// Terms sorted by `(deg_a, deg_z)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().map(|(&(a, z), c)| (vec![a, z], c)), &["a", "z"])
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A one-variable Laurent polynomial over ℚ(i) in a variable `A`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniLaurent {
    terms: BTreeMap<i32, GaussRational>,
}

impl UniLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: GaussRational, deg: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(deg, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, GaussRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in iter {
            p.add_term(d, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg: i32) -> GaussRational {
        self.terms.get(&deg).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussRational)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    fn add_term(&mut self, d: i32, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(GaussRational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        match self.terms.iter().next() {
            Some((&d, c)) if self.terms.len() == 1 => Ok(Self::monomial(c.inv()?, -d)),
            _ => Err(RingError::NotAUnit),
        }
    }

    pub fn pow_nonneg(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn leading(&self) -> Option<(i32, &GaussRational)> {
        self.terms.iter().next_back().map(|(&d, c)| (d, c))
    }

    fn lowest(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Division with remainder after normalizing both sides to ordinary
    /// polynomials (shifting out the lowest power). The quotient is returned
    /// with the shift restored; the remainder is zero iff `divisor` divides
    /// `self` exactly in the Laurent ring.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), RingError> {
        let dlow = divisor.lowest().ok_or(RingError::ZeroDivisor)?;
        let Some(nlow) = self.lowest() else {
            return Ok((Self::zero(), Self::zero()));
        };
        let shift = |p: &Self, s: i32| Self { terms: p.terms.iter().map(|(&d, c)| (d - s, c.clone())).collect() };
        let mut rem = shift(self, nlow);
        let div = shift(divisor, dlow);
        let (ddeg, dlead) = div.leading().map(|(d, c)| (d, c.clone())).expect("nonzero divisor");
        let dlead_inv = dlead.inv()?;
        let mut quot = Self::zero();
        while let Some((rdeg, rlead)) = rem.leading().map(|(d, c)| (d, c.clone())) {
            if rdeg < ddeg {
                break;
            }
            let t = Self::monomial(&rlead * &dlead_inv, rdeg - ddeg);
            rem = &rem - &(&t * &div);
            quot = &quot + &t;
        }
        Ok((shift(&quot, dlow - nlow), shift(&rem, -nlow)))
    }
}

impl<'a> Add<&'a UniLaurent> for &'a UniLaurent {
    type Output = UniLaurent;
    fn add(self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, c);
        }
        out
    }
}

impl<'a> Sub<&'a UniLaurent> for &'a UniLaurent {
    type Output = UniLaurent;
    fn sub(self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a UniLaurent> for &'a UniLaurent {
    type Output = UniLaurent;
    fn mul(self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = UniLaurent::zero();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                out.add_term(d1 + d2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &UniLaurent {
    type Output = UniLaurent;
    fn neg(self) -> UniLaurent {
        UniLaurent { terms: self.terms.iter().map(|(&d, c)| (d, -c)).collect() }
    }
}

impl fmt::Display for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().map(|(&d, c)| (vec![d], c)), &["A"])
    }
}

impl fmt::Debug for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
