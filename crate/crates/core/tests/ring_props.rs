use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skein_core::ring::{
    completion_constants, substitute_series, u_n_series, BiSeries, GaussRational, LaurentPoly, PowerSeries,
};

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-6i64..7, 1i64..5, -6i64..7, 1i64..5).prop_map(|(a, b, c, d)| {
        &GaussRational::from_ratio(a, b) + &(&GaussRational::from_ratio(c, d) * &GaussRational::i())
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((-3i32..4, -3i32..4), gauss()), 0..5).prop_map(LaurentPoly::from_terms)
}

/// Polynomials in `a^{±1}` and `z` with no negative powers of `z`.
fn pole_free() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((-3i32..4, 0i32..4), gauss()), 0..4).prop_map(LaurentPoly::from_terms)
}

const N: usize = 6;

fn series() -> impl Strategy<Value = PowerSeries> {
    proptest::collection::vec(gauss(), N + 1).prop_map(|c| PowerSeries::new(N, c))
}

fn biseries() -> impl Strategy<Value = BiSeries> {
    proptest::collection::vec(((0usize..4, 0usize..4), gauss()), 0..6)
        .prop_map(|t| BiSeries::from_terms(4, t.into_iter().filter(|((j, k), _)| j + k <= 4)))
}

macro_rules! ring_axioms {
    ($name:ident, $strategy:expr, $zero:expr, $one:expr) => {
        proptest! {
            #[test]
            fn $name(x in $strategy, y in $strategy, w in $strategy) {
                prop_assert_eq!(&(&x + &y) + &w, &x + &(&y + &w));
                prop_assert_eq!(&x + &y, &y + &x);
                prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
                prop_assert_eq!(&x * &y, &y * &x);
                prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
                prop_assert_eq!(&x + &$zero, x.clone());
                prop_assert_eq!(&x * &$one, x.clone());
                prop_assert_eq!(&x - &x, $zero);
            }
        }
    };
}

ring_axioms!(gauss_axioms, gauss(), GaussRational::from_int(0), GaussRational::from_int(1));
ring_axioms!(laurent_axioms, laurent(), LaurentPoly::zero(), LaurentPoly::one());
ring_axioms!(series_axioms, series(), PowerSeries::zero(N), PowerSeries::one(N));
ring_axioms!(biseries_axioms, biseries(), BiSeries::zero(4), BiSeries::one(4));

proptest! {
    #[test]
    fn truncation_commutes_with_products(x in series(), y in series(), m in 0usize..N) {
        prop_assert_eq!((&x * &y).truncate(m), &x.truncate(m) * &y.truncate(m));
    }

    #[test]
    fn substitution_is_multiplicative(p in pole_free(), q in pole_free(), n in 0i64..3) {
        let sp = substitute_series(&p, n, N).unwrap();
        let sq = substitute_series(&q, n, N).unwrap();
        prop_assert_eq!(substitute_series(&(&p * &q), n, N).unwrap(), &sp * &sq);
        prop_assert_eq!(substitute_series(&(&p + &q), n, N).unwrap(), &sp + &sq);
    }

    #[test]
    fn laurent_units_invert(c in gauss(), da in -4i32..5, dz in -4i32..5) {
        prop_assume!(c != GaussRational::from_int(0));
        let m = LaurentPoly::monomial(c, da, dz);
        prop_assert_eq!(&m * &m.inv().unwrap(), LaurentPoly::one());
    }
}

#[test]
fn random_unit_series_invert() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let order = 8;
    for _ in 0..1000 {
        let coeffs: Vec<GaussRational> = (0..=order)
            .map(|_| {
                let re = GaussRational::from_ratio(rng.gen_range(-9..10), rng.gen_range(1..6));
                let im = GaussRational::from_ratio(rng.gen_range(-9..10), rng.gen_range(1..6));
                &re + &(&im * &GaussRational::i())
            })
            .collect();
        let mut s = PowerSeries::new(order, coeffs);
        if s.coeff(0) == GaussRational::from_int(0) {
            s = &s + &PowerSeries::one(order);
        }
        let inv = s.invert().unwrap();
        assert_eq!(&s * &inv, PowerSeries::one(order));
        assert_eq!(&inv * &s, PowerSeries::one(order));
    }
}

#[test]
fn completion_constants_are_units() {
    let c = completion_constants(8);
    for x in [&c.a, &c.z] {
        assert_eq!(x.checked_mul(&x.invert().unwrap()).unwrap(), BiSeries::one(8));
    }
}

#[test]
fn u_n_constant_terms() {
    for n in -5i64..=5 {
        assert_eq!(u_n_series(n, 4).coeff(0), GaussRational::from_int(n + 2), "n = {n}");
    }
}

#[test]
fn non_units_are_rejected() {
    assert!(PowerSeries::x(4).invert().is_err());
    assert!(LaurentPoly::from_terms([((0, 0), GaussRational::from_int(1)), ((1, 0), GaussRational::from_int(1))]).inv().is_err());
}
