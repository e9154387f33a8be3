//! Wire format for polynomials and series.
//!
//! A `LaurentPoly` is a list of `{"deg_a", "deg_z", "re", "im"}` terms sorted
//! by exponent pair, with `re`/`im` written as reduced `"p/q"` strings. A
//! `PowerSeries` is `{"order": N, "coeffs": ["p/q±p/q·i", …]}`. Both forms
//! are canonical, so serialization round-trips bit-exactly.

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gauss::{parse_ratio, wire_ratio};
use super::{GaussRational, LaurentPoly, PowerSeries};

#[derive(Serialize, Deserialize)]
struct TermWire {
    deg_a: i32,
    deg_z: i32,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermWire> = self
            .terms()
            .map(|((deg_a, deg_z), c)| TermWire { deg_a, deg_z, re: wire_ratio(c.re()), im: wire_ratio(c.im()) })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermWire>::deserialize(deserializer)?;
        let mut prev: Option<(i32, i32)> = None;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let e = (t.deg_a, t.deg_z);
            if prev.is_some_and(|p| p >= e) {
                return Err(D::Error::custom("terms must be strictly sorted by (deg_a, deg_z)"));
            }
            prev = Some(e);
            let ratio = |s: &str| parse_ratio(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")));
            let c = GaussRational::new(ratio(&t.re)?, ratio(&t.im)?);
            if num_traits::Zero::is_zero(&c) {
                return Err(D::Error::custom("zero coefficients are not stored"));
            }
            out.push((e, c));
        }
        Ok(LaurentPoly::from_terms(out))
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesWire { order: self.order(), coeffs: self.coeffs().iter().map(GaussRational::to_wire).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = SeriesWire::deserialize(deserializer)?;
        if w.coeffs.len() != w.order + 1 {
            return Err(D::Error::custom("coefficient count must be order + 1"));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| GaussRational::from_wire(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries::new(w.order, coeffs))
    }
}

/// Wire form of a single rational, exposed for report writers.
pub fn ratio_to_wire(r: &BigRational) -> String {
    wire_ratio(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{series_exp, u_n_series};
    use proptest::prelude::*;

    #[test]
    fn laurent_layout() {
        let p = &LaurentPoly::monomial(GaussRational::from_ratio(-1, 2), 1, -1) + &LaurentPoly::one();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"[{"deg_a":0,"deg_z":0,"re":"1/1","im":"0/1"},{"deg_a":1,"deg_z":-1,"re":"-1/2","im":"0/1"}]"#
        );
    }

    #[test]
    fn series_layout() {
        let s = serde_json::to_string(&series_exp(&GaussRational::i(), 2)).unwrap();
        assert_eq!(s, r#"{"order":2,"coeffs":["1/1+0/1·i","0/1+1/1·i","-1/2+0/1·i"]}"#);
    }

    #[test]
    fn rejects_unsorted_terms() {
        let bad = r#"[{"deg_a":1,"deg_z":0,"re":"1/1","im":"0/1"},{"deg_a":0,"deg_z":0,"re":"1/1","im":"0/1"}]"#;
        assert!(serde_json::from_str::<LaurentPoly>(bad).is_err());
    }

    fn small_gauss() -> impl Strategy<Value = GaussRational> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| {
            GaussRational::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
        })
    }

    proptest! {
        #[test]
        fn laurent_round_trip(terms in proptest::collection::vec(((-4i32..5, -4i32..5), small_gauss()), 0..8)) {
            let p = LaurentPoly::from_terms(terms);
            let s = serde_json::to_string(&p).unwrap();
            let back: LaurentPoly = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
        }

        #[test]
        fn series_round_trip(coeffs in proptest::collection::vec(small_gauss(), 1..8), n in -3i64..4) {
            let order = coeffs.len() - 1;
            let s = &PowerSeries::new(order, coeffs) * &u_n_series(n, order);
            let text = serde_json::to_string(&s).unwrap();
            let back: PowerSeries = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
