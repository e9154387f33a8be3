use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{DiagramCode, FramedDiagram, Reduction, ReductionKind, Smoothing, DEFAULT_PRIORITY};
use crate::ring::{LaurentPoly, PowerSeries};

use super::strategy::{best_traversal, complexity_bound, Complexity};
use super::{laurent_params, series_params, Normalization, SkeinError, SkeinParams, SkeinRing, DEFAULT_NODE_BUDGET};

/// How the crossing to rewrite is picked among the under-first crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    /// The first one in traversal order.
    Descending,
    /// A seeded uniform choice.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalOptions {
    pub node_budget: u64,
    pub selection: Selection,
    pub priority: Vec<ReductionKind>,
    /// Number of expanded nodes whose parent/child complexities are recorded.
    pub trace_limit: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { node_budget: DEFAULT_NODE_BUDGET, selection: Selection::Descending, priority: DEFAULT_PRIORITY.to_vec(), trace_limit: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Reduction(ReductionKind),
    Switch,
    SmoothA,
    SmoothB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEdge {
    pub parent: Complexity,
    pub child: Complexity,
    pub kind: EdgeKind,
}

impl TraceEdge {
    pub fn decreases(&self) -> bool {
        self.child < self.parent
    }
}

/// Values keyed by canonical code. Writing a different value under an
/// existing key is reported as an error.
#[derive(Debug, Clone)]
pub struct MemoTable<T> {
    map: HashMap<DiagramCode, T>,
}

impl<T> Default for MemoTable<T> {
    fn default() -> Self {
        Self { map: HashMap::new() }
    }
}

impl<T: SkeinRing> MemoTable<T> {
    pub fn get(&self, code: &DiagramCode) -> Option<&T> {
        self.map.get(code)
    }

    pub fn insert(&mut self, code: DiagramCode, value: T) -> Result<(), SkeinError> {
        match self.map.get(&code) {
            Some(old) if *old != value => Err(SkeinError::MemoConflict(code.to_hex())),
            Some(_) => Ok(()),
            None => {
                self.map.insert(code, value);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// A memoizing evaluator. The memo table persists across calls.
pub struct Evaluator<T> {
    params: SkeinParams<T>,
    kink_inverse: T,
    options: EvalOptions,
    memo: MemoTable<T>,
    rng: ChaCha8Rng,
    nodes: u64,
    traced: usize,
    trace: Vec<TraceEdge>,
}

impl<T: SkeinRing> Evaluator<T> {
    pub fn new(params: SkeinParams<T>, options: EvalOptions) -> Self {
        Self::with_memo(params, options, MemoTable::default())
    }

    pub fn with_memo(params: SkeinParams<T>, options: EvalOptions, memo: MemoTable<T>) -> Self {
        let kink_inverse = params.kink_factor.inverse().expect("kink factor is a unit");
        let seed = match options.selection {
            Selection::Random(s) => s,
            Selection::Descending => 0,
        };
        Self {
            params,
            kink_inverse,
            options,
            memo,
            rng: ChaCha8Rng::seed_from_u64(seed),
            nodes: 0,
            traced: 0,
            trace: Vec::new(),
        }
    }

    pub fn params(&self) -> &SkeinParams<T> {
        &self.params
    }

    pub fn memo(&self) -> &MemoTable<T> {
        &self.memo
    }

    pub fn into_memo(self) -> MemoTable<T> {
        self.memo
    }

    /// Nodes visited by the most recent `evaluate` call.
    pub fn nodes_visited(&self) -> u64 {
        self.nodes
    }

    /// Expanded nodes whose edges were recorded, at most `trace_limit`.
    pub fn traced_nodes(&self) -> usize {
        self.traced
    }

    pub fn trace(&self) -> &[TraceEdge] {
        &self.trace
    }

    pub fn evaluate(&mut self, d: &FramedDiagram) -> Result<T, SkeinError> {
        self.nodes = 0;
        let v = self.eval_unit(d)?;
        Ok(v.mul(&self.params.unknot_value))
    }

    fn kink(&self, sign: i32) -> T {
        if sign > 0 {
            self.params.kink_factor.clone()
        } else {
            self.kink_inverse.clone()
        }
    }

    /// `δ^{m−1}·α^{Σ self-writhe}`, the value of a framed unlink.
    fn framed_unlink(&self, d: &FramedDiagram) -> Result<T, SkeinError> {
        let m = d.component_count();
        if m == 0 {
            return Err(SkeinError::NotApplicable("empty diagram".into()));
        }
        let w: i32 = d.self_writhes().iter().sum();
        let loops = self.params.loop_value.power(m as i32 - 1)?;
        let framing = if w >= 0 { self.params.kink_factor.power(w)? } else { self.kink_inverse.power(-w)? };
        Ok(loops.mul(&framing))
    }

    fn child(&mut self, parent: Option<Complexity>, kind: EdgeKind, d: &FramedDiagram) -> Result<T, SkeinError> {
        if let Some(p) = parent {
            self.trace.push(TraceEdge { parent: p, child: complexity_bound(d), kind });
        }
        self.eval_unit(d)
    }

    fn pick(&mut self, d: &FramedDiagram) -> usize {
        let bad = best_traversal(d).under_first;
        match self.options.selection {
            Selection::Descending => bad[0],
            Selection::Random(_) => *bad.choose(&mut self.rng).expect("non-descending diagram"),
        }
    }

    /// Value under `R(U) = 1`. Free loops beside crossings are stripped at
    /// the node itself, one `δ` each, rather than forming a recursion step.
    fn eval_unit(&mut self, d: &FramedDiagram) -> Result<T, SkeinError> {
        if d.crossing_count() > 0 && d.free_loops() > 0 {
            let loops = self.params.loop_value.power(d.free_loops() as i32)?;
            return Ok(loops.mul(&self.eval_unit(&d.without_free_loops())?));
        }
        self.nodes += 1;
        if self.nodes > self.options.node_budget {
            return Err(SkeinError::Budget { limit: self.options.node_budget });
        }
        let code = d.canonical_code();
        if let Some(v) = self.memo.get(&code) {
            return Ok(v.clone());
        }
        if d.crossing_count() == 0 || best_traversal(d).under_first.is_empty() {
            let v = self.framed_unlink(d)?;
            self.memo.insert(code, v.clone())?;
            return Ok(v);
        }
        let parent = (self.traced < self.options.trace_limit).then(|| {
            self.traced += 1;
            complexity_bound(d)
        });
        let value = match d.detect_reduction_with(&self.options.priority) {
            Some(Reduction::FreeLoop) => {
                let (rest, _) = d.apply_reduction(&Reduction::FreeLoop)?;
                let v = self.child(parent, EdgeKind::Reduction(ReductionKind::FreeLoop), &rest)?;
                self.params.loop_value.mul(&v)
            }
            Some(mv @ Reduction::DisjointSplit { .. }) => {
                let (a, b) = d.split_pieces(&mv)?;
                let kind = EdgeKind::Reduction(ReductionKind::DisjointSplit);
                let va = self.child(parent, kind, &a)?;
                let vb = self.child(parent, kind, &b)?;
                self.params.loop_value.mul(&va).mul(&vb)
            }
            Some(mv) => {
                let (next, _) = d.apply_reduction(&mv)?;
                let v = self.child(parent, EdgeKind::Reduction(mv.kind()), &next)?;
                match mv {
                    Reduction::Kink { sign, .. } => self.kink(sign).mul(&v),
                    _ => v,
                }
            }
            None => {
                let c = self.pick(d);
                let switched = d.switch_crossing(c)?;
                let sa = d.smooth(c, Smoothing::A)?;
                let sb = d.smooth(c, Smoothing::B)?;
                let v_sw = self.child(parent, EdgeKind::Switch, &switched)?;
                let v_a = self.child(parent, EdgeKind::SmoothA, &sa)?;
                let v_b = self.child(parent, EdgeKind::SmoothB, &sb)?;
                v_sw.add(&self.params.skein_factor.mul(&v_a.sub(&v_b)))
            }
        };
        self.memo.insert(code, value.clone())?;
        Ok(value)
    }
}

/// One-shot evaluation with default options.
pub fn evaluate<T: SkeinRing>(d: &FramedDiagram, params: &SkeinParams<T>) -> Result<T, SkeinError> {
    Evaluator::new(params.clone(), EvalOptions::default()).evaluate(d)
}

pub fn evaluate_laurent(d: &FramedDiagram) -> Result<LaurentPoly, SkeinError> {
    evaluate(d, &laurent_params(Normalization::Unit))
}

/// The series `Σ v_n^m x^m` to order `order`.
pub fn evaluate_series(d: &FramedDiagram, n: i64, order: usize) -> Result<PowerSeries, SkeinError> {
    evaluate(d, &series_params(n, order, Normalization::Unit)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_diagram, InputFormat};
    use crate::ring::{substitute_series, GaussRational};
    use crate::skein::laurent_delta;

    fn hopf() -> FramedDiagram {
        parse_diagram("s1 s1", InputFormat::Braid).unwrap()
    }

    fn trefoil() -> FramedDiagram {
        parse_diagram("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", InputFormat::Pd).unwrap()
    }

    #[test]
    fn unknot_and_kinks() {
        assert_eq!(evaluate_laurent(&FramedDiagram::unknot()).unwrap(), LaurentPoly::one());
        assert_eq!(evaluate_laurent(&FramedDiagram::kink(1)).unwrap(), LaurentPoly::a());
        assert_eq!(evaluate_laurent(&FramedDiagram::kink(-1)).unwrap(), LaurentPoly::a().inv().unwrap());
    }

    #[test]
    fn hopf_value() {
        let a = LaurentPoly::a();
        let diff = &a - &a.inv().unwrap();
        let expect = &laurent_delta() + &(&LaurentPoly::z() * &diff);
        let v = evaluate_laurent(&hopf()).unwrap();
        assert_eq!(v, expect, "{v}");
    }

    #[test]
    fn hopf_series() {
        let v = evaluate_series(&hopf(), 0, 2).unwrap();
        assert_eq!(v, PowerSeries::new(2, vec![GaussRational::from_int(2), GaussRational::from_int(0), GaussRational::from_int(4)]));
    }

    #[test]
    fn unlink_series() {
        assert_eq!(evaluate_series(&FramedDiagram::unlink(2), 0, 4).unwrap(), PowerSeries::constant(GaussRational::from_int(2), 4));
    }

    #[test]
    fn trefoil_rings_agree() {
        let l = evaluate_laurent(&trefoil()).unwrap();
        for n in 0..3 {
            let s = evaluate_series(&trefoil(), n, 6).unwrap();
            assert_eq!(substitute_series(&l, n, 6).unwrap(), s);
            assert_eq!(s.coeff(0), GaussRational::from_int(1));
        }
    }

    #[test]
    fn random_selection_matches() {
        let p = laurent_params(Normalization::Unit);
        let d = parse_diagram("s1 s2^-1 s1 s2^-1 s1 s2 s2", InputFormat::Braid).unwrap();
        let det = evaluate(&d, &p).unwrap();
        for seed in 0..5 {
            let opts = EvalOptions { selection: Selection::Random(seed), ..EvalOptions::default() };
            assert_eq!(Evaluator::new(p.clone(), opts).evaluate(&d).unwrap(), det);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let opts = EvalOptions { node_budget: 3, ..EvalOptions::default() };
        let mut ev = Evaluator::new(laurent_params(Normalization::Unit), opts);
        let d = parse_diagram("s1 s2^-1 s1 s2^-1 s1 s2^-1", InputFormat::Braid).unwrap();
        assert_eq!(ev.evaluate(&d), Err(SkeinError::Budget { limit: 3 }));
    }

    #[test]
    fn memo_rejects_conflicting_value() {
        let mut m = MemoTable::default();
        let code = FramedDiagram::unknot().canonical_code();
        m.insert(code.clone(), LaurentPoly::one()).unwrap();
        assert!(m.insert(code.clone(), LaurentPoly::one()).is_ok());
        assert!(matches!(m.insert(code, LaurentPoly::a()), Err(SkeinError::MemoConflict(_))));
    }
}
