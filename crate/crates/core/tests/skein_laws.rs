use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skein_core::corpus::{generate, Corpus};
use skein_core::diagram::{ReductionKind, SingularDiagram, DEFAULT_PRIORITY};
use skein_core::oracle::bracket_statesum;
use skein_core::ring::LaurentPoly;
use skein_core::singular::derived_invariant;
use skein_core::skein::{
    evaluate_laurent, evaluate_series, laurent_params, series_params, EvalOptions, Evaluator, Normalization, Selection,
};

fn corpus() -> Corpus {
    generate(42, 8).unwrap()
}

#[test]
fn kink_laws_on_corpus() {
    let a = LaurentPoly::a();
    let a_inv = a.inv().unwrap();
    let p = series_params(1, 8, Normalization::Unit).unwrap();
    let t_inv = p.kink_factor.invert().unwrap();
    for (e, d) in corpus().framed() {
        let v = evaluate_laurent(d).unwrap();
        let s = evaluate_series(d, 1, 8).unwrap();
        assert_eq!(evaluate_laurent(&d.add_kink(1)).unwrap(), &a * &v, "{}", e.id);
        assert_eq!(evaluate_laurent(&d.add_kink(-1)).unwrap(), &a_inv * &v, "{}", e.id);
        assert_eq!(evaluate_series(&d.add_kink(1), 1, 8).unwrap(), &p.kink_factor * &s, "{}", e.id);
        assert_eq!(evaluate_series(&d.add_kink(-1), 1, 8).unwrap(), &t_inv * &s, "{}", e.id);
    }
}

#[test]
fn perturbations_preserve_values() {
    let c = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut checked = 0;
    let framed: Vec<_> = c.framed().collect();
    for &(e, d) in framed.iter().cycle().take(200) {
        let v = evaluate_laurent(d).unwrap();
        let s = evaluate_series(d, 2, 6).unwrap();
        let b = bracket_statesum(d).unwrap();
        for _ in 0..3 {
            let (p, mv) = d.random_perturbation(&mut rng);
            assert_eq!(evaluate_laurent(&p).unwrap(), v, "{} {mv:?}", e.id);
            assert_eq!(evaluate_series(&p, 2, 6).unwrap(), s, "{} {mv:?}", e.id);
            assert_eq!(bracket_statesum(&p).unwrap(), b, "{} {mv:?}", e.id);
            checked += 1;
        }
    }
    assert_eq!(checked, 600);
}

#[test]
fn selection_and_priority_do_not_matter() {
    let priorities: [Vec<ReductionKind>; 3] = [
        DEFAULT_PRIORITY.to_vec(),
        DEFAULT_PRIORITY.iter().rev().copied().collect(),
        vec![ReductionKind::Kink, ReductionKind::FreeLoop, ReductionKind::Bigon, ReductionKind::DisjointSplit],
    ];
    for (e, d) in corpus().framed() {
        let base = evaluate_laurent(d).unwrap();
        for (i, priority) in priorities.iter().enumerate() {
            for selection in [Selection::Descending, Selection::Random(i as u64 + 7)] {
                let opts = EvalOptions { selection, priority: priority.clone(), ..EvalOptions::default() };
                let v = Evaluator::new(laurent_params(Normalization::Unit), opts).evaluate(d).unwrap();
                assert_eq!(v, base, "{} priority {i} {selection:?}", e.id);
            }
        }
    }
}

#[test]
fn shared_memo_stays_single_valued() {
    let c = corpus();
    let mut ev = Evaluator::new(laurent_params(Normalization::Unit), EvalOptions::default());
    for (e, d) in c.framed() {
        assert_eq!(ev.evaluate(d).unwrap(), evaluate_laurent(d).unwrap(), "{}", e.id);
    }
    let mut random = Evaluator::with_memo(
        laurent_params(Normalization::Unit),
        EvalOptions { selection: Selection::Random(99), ..EvalOptions::default() },
        ev.into_memo(),
    );
    for (e, d) in c.framed() {
        random.evaluate(d).unwrap_or_else(|err| panic!("{}: {err}", e.id));
    }
}

#[test]
fn delta_normalization_scales_by_loop_value() {
    let delta = laurent_params(Normalization::Delta).unknot_value;
    let mut ev = Evaluator::new(laurent_params(Normalization::Delta), EvalOptions::default());
    for (e, d) in corpus().framed() {
        assert_eq!(ev.evaluate(d).unwrap(), &delta * &evaluate_laurent(d).unwrap(), "{}", e.id);
    }
}

#[test]
fn derived_values_are_antisymmetric() {
    for (e, sd) in corpus().singular().filter(|(e, _)| e.flat == 1) {
        let c = sd.flat_crossings()[0];
        let plus = sd.resolve_flat(c, skein_core::diagram::ResolutionSign::Plus).unwrap();
        let base = plus.as_framed().unwrap();
        let flipped = SingularDiagram::with_flat(base.switch_crossing(c).unwrap(), &[c]).unwrap();
        let v = derived_invariant(&mut |d| evaluate_laurent(d), sd).unwrap().order_one.unwrap();
        let w = derived_invariant(&mut |d| evaluate_laurent(d), &flipped).unwrap().order_one.unwrap();
        assert_eq!(v, -&w, "{}", e.id);
    }
}
