//! Independent check: the exhaustive bracket state sum.
//!
//! Shares only the `A`/`B` smoothing rule with the skein evaluator. Loops of
//! each state are counted with a union-find over half-edges.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{FramedDiagram, OverPair};
use crate::ring::{GaussRational, RingError, UniLaurent};
use crate::skein::{evaluate_laurent, SkeinError};

pub const MAX_STATE_SUM_CROSSINGS: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("state sum limited to {max} crossings, diagram has {count}")]
    CrossingBudget { count: usize, max: usize },
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Integer Laurent polynomial in `A`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BracketPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl BracketPoly {
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(iter: I) -> Self {
        let mut p = Self::default();
        for (e, c) in iter {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, e: i32, c: &BigInt) {
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    fn shifted(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn to_unilaurent(&self) -> UniLaurent {
        UniLaurent::from_terms(self.terms.iter().map(|(e, c)| {
            (*e, GaussRational::new(num_rational::BigRational::from_integer(c.clone()), Zero::zero()))
        }))
    }
}

impl fmt::Display for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "A")?,
                (1, false) => write!(f, "{mag}*A")?,
                (_, true) => write!(f, "A^{e}")?,
                (_, false) => write!(f, "{mag}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BracketPoly({self})")
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra] = rb;
    }
}

/// `Σ_states A^{#A − #B} (−A² − A^{-2})^{loops − 1}`.
pub fn bracket_statesum(d: &FramedDiagram) -> Result<BracketPoly, OracleError> {
    let n = d.crossing_count();
    if n > MAX_STATE_SUM_CROSSINGS {
        return Err(OracleError::CrossingBudget { count: n, max: MAX_STATE_SUM_CROSSINGS });
    }
    let delta = BracketPoly::from_terms([(2, -1), (-2, -1)]);
    // Every state loop through crossings uses at least two half-edges.
    let max_loops = 2 * n + d.free_loops() + 1;
    let mut delta_pow = vec![BracketPoly::from_terms([(0, 1)])];
    for k in 1..max_loops {
        let next = delta_pow[k - 1].mul(&delta);
        delta_pow.push(next);
    }
    // Loop count per state, aggregated by (#A − #B) before multiplying out.
    let mut counts: BTreeMap<(i32, usize), u64> = BTreeMap::new();
    let halves = 4 * n;
    for state in 0u64..(1u64 << n) {
        let mut parent: Vec<usize> = (0..halves).collect();
        for h in 0..halves {
            union(&mut parent, h, d.partner(h));
        }
        let mut a_count = 0i32;
        for c in 0..n {
            let h0 = 4 * c + if d.over_pair(c) == OverPair::Even { 0 } else { 1 };
            let h = |k: usize| 4 * c + (h0 + k) % 4;
            if state >> c & 1 == 0 {
                a_count += 1;
                union(&mut parent, h(0), h(1));
                union(&mut parent, h(2), h(3));
            } else {
                union(&mut parent, h(0), h(3));
                union(&mut parent, h(1), h(2));
            }
        }
        let loops = (0..halves).filter(|&h| find(&mut parent, h) == h).count() + d.free_loops();
        *counts.entry((2 * a_count - n as i32, loops)).or_default() += 1;
    }
    let mut total = BracketPoly::default();
    for ((shift, loops), mult) in counts {
        let term = delta_pow[loops - 1].shifted(shift);
        for (e, c) in term.terms() {
            total.add_term(e, &(c * BigInt::from(mult)));
        }
    }
    Ok(total)
}

/// The evaluator's Laurent value at `a = −A³`, `z = A − A^{-1}`.
pub fn specialized_value(d: &FramedDiagram) -> Result<UniLaurent, OracleError> {
    let value = evaluate_laurent(d)?;
    let a = UniLaurent::monomial(GaussRational::from_int(-1), 3);
    let z = &UniLaurent::monomial(GaussRational::from_int(1), 1) - &UniLaurent::monomial(GaussRational::from_int(1), -1);
    Ok(value.specialize(&a, &z)?)
}

/// Whether the specialized evaluator value equals the state sum exactly.
pub fn specialization_check(d: &FramedDiagram) -> Result<bool, OracleError> {
    Ok(specialized_value(d)? == bracket_statesum(d)?.to_unilaurent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_diagram, InputFormat};

    #[test]
    fn small_brackets() {
        assert_eq!(bracket_statesum(&FramedDiagram::unknot()).unwrap(), BracketPoly::from_terms([(0, 1)]));
        assert_eq!(bracket_statesum(&FramedDiagram::kink(1)).unwrap(), BracketPoly::from_terms([(3, -1)]));
        assert_eq!(bracket_statesum(&FramedDiagram::kink(-1)).unwrap(), BracketPoly::from_terms([(-3, -1)]));
        let hopf = parse_diagram("s1 s1", InputFormat::Braid).unwrap();
        assert_eq!(bracket_statesum(&hopf).unwrap(), BracketPoly::from_terms([(4, -1), (-4, -1)]));
    }

    #[test]
    fn specialization_on_small_diagrams() {
        for d in [
            FramedDiagram::unknot(),
            FramedDiagram::kink(1),
            FramedDiagram::unlink(3),
            parse_diagram("s1 s1", InputFormat::Braid).unwrap(),
            parse_diagram("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", InputFormat::Pd).unwrap(),
            parse_diagram("s1 s2^-1 s1 s2^-1", InputFormat::Braid).unwrap(),
        ] {
            assert!(specialization_check(&d).unwrap(), "{d:?}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(BracketPoly::from_terms([(4, -1), (-4, -1)]).to_string(), "-A^-4 - A^4");
        assert_eq!(BracketPoly::from_terms([(1, 2), (0, 1)]).to_string(), "1 + 2*A");
    }

    #[test]
    fn crossing_budget() {
        let word = vec!["s1"; 21].join(" ");
        let d = parse_diagram(&word, InputFormat::Braid).unwrap();
        assert!(matches!(bracket_statesum(&d), Err(OracleError::CrossingBudget { count: 21, .. })));
    }
}
