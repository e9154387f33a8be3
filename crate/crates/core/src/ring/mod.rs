//! Exact coefficient arithmetic.
//!
//! Everything here is over ℚ(i): Gaussian rationals, sparse Laurent
//! polynomials in `(a, z)`, truncated power series in `x`, Laurent series
//! with a finite principal part, and bivariate series in `(x, y)`.
//! No floating point appears anywhere.

mod biseries;
mod gauss;
pub mod json;
mod laurent;
mod laurent_series;
mod series;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use biseries::BiSeries;
pub use gauss::GaussRational;
pub use laurent::{Exponent, LaurentPoly, UniLaurent};
pub use laurent_series::{laurent_substitute, substitute_series, LaurentSeries};
pub use series::{series_exp, t_series, u_n_series, PowerSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("not a unit")]
    NotAUnit,
    #[error("truncation order mismatch: {lhs} vs {rhs}")]
    OrderMismatch { lhs: i64, rhs: i64 },
    #[error("division by zero")]
    ZeroDivisor,
    #[error("inexact division")]
    InexactDivision,
    #[error("series has a nonzero principal part")]
    PrincipalPart,
    #[error("precision loss: need order {needed}, only {available} known")]
    PrecisionLoss { needed: i64, available: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Arithmetic on borrowed operands, the shape every value type here exposes.
pub trait RingOps<T>: Sized + Add<Self, Output = T> + Sub<Self, Output = T> + Mul<Self, Output = T> + Neg<Output = T> {}

impl<'a, T> RingOps<T> for &'a T where
    &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Neg<Output = T>
{
}

/// A value type the skein evaluator can compute in.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync
where
    for<'x> &'x Self: RingOps<Self>,
{
}

impl Ring for LaurentPoly {}
impl Ring for PowerSeries {}
impl Ring for BiSeries {}
impl Ring for GaussRational {}

/// The constants of the completed coefficient ring: `t = e^x`,
/// `a = i·e^y` and `z = i·t − (i·t)^{-1} = i·e^x + i·e^{-x}`.
#[derive(Debug, Clone)]
pub struct CompletionConstants {
    pub t: PowerSeries,
    pub a: BiSeries,
    pub z: BiSeries,
}

pub fn completion_constants(order: usize) -> CompletionConstants {
    let i = GaussRational::i();
    let t = t_series(order);
    let a = BiSeries::from_y(&t).checked_mul(&BiSeries::constant(i.clone(), order)).expect("same order");
    let e_minus = series_exp(&GaussRational::from_int(-1), order);
    let z = BiSeries::from_x(&(&t + &e_minus)).checked_mul(&BiSeries::constant(i, order)).expect("same order");
    CompletionConstants { t, a, z }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_prefix() {
        let c = completion_constants(2);
        let expect = BiSeries::from_terms(
            2,
            [((0, 0), &GaussRational::from_int(2) * &GaussRational::i()), ((2, 0), GaussRational::i())],
        );
        assert_eq!(c.z, expect);
    }

    #[test]
    fn a_prefix() {
        let c = completion_constants(2);
        let i = GaussRational::i();
        let expect = BiSeries::from_terms(
            2,
            [((0, 0), i.clone()), ((0, 1), i.clone()), ((0, 2), &i * &GaussRational::from_ratio(1, 2))],
        );
        assert_eq!(c.a, expect);
    }

    #[test]
    fn z_fourth_coefficient() {
        let c = completion_constants(4);
        assert_eq!(c.z.coeff(4, 0), &GaussRational::i() * &GaussRational::from_ratio(1, 12));
    }

    #[test]
    fn constants_are_units() {
        let c = completion_constants(8);
        assert_eq!(&c.a * &c.a.invert().unwrap(), BiSeries::one(8));
        assert_eq!(&c.z * &c.z.invert().unwrap(), BiSeries::one(8));
    }

    #[test]
    fn z_inverse_constant_term() {
        let c = completion_constants(6);
        let inv = c.z.invert().unwrap();
        // (2i)·c₀ = 1
        assert_eq!(inv.coeff(0, 0), &GaussRational::from_ratio(-1, 2) * &GaussRational::i());
    }
}
