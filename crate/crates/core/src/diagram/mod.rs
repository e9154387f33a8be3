//! Combinatorial framed link diagrams on S² with blackboard framing.
//!
//! A diagram with `c` crossings has `4c` half-edges. Half-edge `h` sits at
//! crossing `h / 4`, slot `h % 4`; slots run counterclockwise. The strand
//! through slot `s` continues through slot `s + 2`. Arcs are a fixed-point
//! free involution (`partner`) on half-edges. Crossingless circles are kept
//! as a count (`free_loops`).

mod code;
mod flat;
mod parse;
mod perturb;
mod reduce;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub use code::DiagramCode;
pub use flat::{sign_patterns, ResolutionSign, SingularDiagram};
pub use parse::{parse_diagram, parse_singular, InputFormat};
pub use perturb::{KinkSide, Perturbation};
pub use reduce::{Bookkeeping, Reduction, ReductionKind, DEFAULT_PRIORITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid connectivity: {0}")]
    Connectivity(String),
    #[error("diagram is not planar (Euler characteristic check failed)")]
    NonPlanar,
    #[error("diagram has no components")]
    Empty,
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("crossing {0} is flat")]
    FlatCrossing(usize),
    #[error("crossing {0} is not flat")]
    NotFlat(usize),
    #[error("stale move: {0}")]
    StaleMove(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

/// Which opposite slot pair carries the over-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OverPair {
    /// Slots 0 and 2.
    Even,
    /// Slots 1 and 3.
    Odd,
}

impl OverPair {
    pub fn toggled(self) -> Self {
        match self {
            OverPair::Even => OverPair::Odd,
            OverPair::Odd => OverPair::Even,
        }
    }

    fn first_slot(self) -> usize {
        match self {
            OverPair::Even => 0,
            OverPair::Odd => 1,
        }
    }

    fn contains(self, slot: usize) -> bool {
        slot % 2 == self.first_slot()
    }
}

/// The two ways to smooth a crossing. With half-edges `h0..h3`
/// counterclockwise and the over-strand on `(h0, h2)`, `A` joins
/// `(h0, h1), (h2, h3)` and `B` joins `(h0, h3), (h1, h2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

#[inline]
pub(crate) fn crossing_of(h: usize) -> usize {
    h / 4
}

#[inline]
pub(crate) fn slot_of(h: usize) -> usize {
    h % 4
}

/// The half-edge on the far side of the same strand.
#[inline]
pub(crate) fn across(h: usize) -> usize {
    h ^ 2
}

/// Next half-edge counterclockwise at the same crossing.
#[inline]
pub(crate) fn rot(h: usize) -> usize {
    (h & !3) | ((h + 1) & 3)
}

#[inline]
pub(crate) fn half_edge(c: usize, slot: usize) -> usize {
    4 * c + (slot % 4)
}

/// One component, listed as the half-edges through which the traversal
/// enters successive crossings. Free loops have no visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub visits: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FramedDiagram {
    over: Vec<OverPair>,
    partner: Vec<usize>,
    free_loops: usize,
}

impl std::fmt::Debug for FramedDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FramedDiagram({})", self.to_pd().trim().replace('\n', " "))
    }
}

impl FramedDiagram {
    /// Validates the matching and planarity.
    pub fn new(over: Vec<OverPair>, partner: Vec<usize>, free_loops: usize) -> Result<Self, DiagramError> {
        let d = Self { over, partner, free_loops };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_parts_unchecked(over: Vec<OverPair>, partner: Vec<usize>, free_loops: usize) -> Self {
        let d = Self { over, partner, free_loops };
        debug_assert_eq!(d.validate(), Ok(()));
        d
    }

    /// The 0-crossing unlink with `k` components.
    pub fn unlink(k: usize) -> Self {
        Self { over: Vec::new(), partner: Vec::new(), free_loops: k }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// One-crossing unknot whose kink has the given self-writhe (±1).
    pub fn kink(sign: i32) -> Self {
        // Arcs (0,1), (2,3) with the over-strand on (0,2) traversed from slot 0
        // give a crossing of sign +1; toggling the over pair flips it.
        let over = if sign >= 0 { OverPair::Even } else { OverPair::Odd };
        Self::from_parts_unchecked(vec![over], vec![1, 0, 3, 2], 0)
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let n = self.partner.len();
        if n != 4 * self.over.len() {
            return Err(DiagramError::Connectivity(format!(
                "{} half-edges for {} crossings",
                n,
                self.over.len()
            )));
        }
        for (h, &p) in self.partner.iter().enumerate() {
            if p >= n || p == h || self.partner[p] != h {
                return Err(DiagramError::Connectivity(format!("half-edge {h} is not properly matched")));
            }
        }
        if n == 0 && self.free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        if !self.is_planar() {
            return Err(DiagramError::NonPlanar);
        }
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.over.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn over_pair(&self, c: usize) -> OverPair {
        self.over[c]
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h]
    }

    pub(crate) fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub(crate) fn over_pairs(&self) -> &[OverPair] {
        &self.over
    }

    pub fn is_over(&self, h: usize) -> bool {
        self.over[crossing_of(h)].contains(slot_of(h))
    }

    /// Components ordered by least half-edge, then the free loops.
    pub fn components(&self) -> Vec<Component> {
        let n = self.partner.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut visits = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                seen[across(cur)] = true;
                visits.push(cur);
                cur = self.partner[across(cur)];
                if cur == start {
                    break;
                }
            }
            out.push(Component { visits });
        }
        out.extend((0..self.free_loops).map(|_| Component { visits: Vec::new() }));
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Component index of every half-edge.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.partner.len()];
        for (i, comp) in self.components().iter().enumerate() {
            for &h in &comp.visits {
                labels[h] = i;
                labels[across(h)] = i;
            }
        }
        labels
    }

    /// For each crossing, the entering half-edges of its over and under strands.
    fn entering(&self) -> Vec<(usize, usize)> {
        let mut over_in = vec![usize::MAX; self.over.len()];
        let mut under_in = vec![usize::MAX; self.over.len()];
        for comp in self.components() {
            for h in comp.visits {
                if self.is_over(h) {
                    over_in[crossing_of(h)] = h;
                } else {
                    under_in[crossing_of(h)] = h;
                }
            }
        }
        over_in.into_iter().zip(under_in).collect()
    }

    /// Crossing signs under the traversal orientation. The convention makes a
    /// kink whose `A`-smoothing splits off a circle positive. Signs of
    /// self-crossings do not depend on the orientation chosen.
    pub fn crossing_signs(&self) -> Vec<i32> {
        self.entering()
            .into_iter()
            .map(|(o, u)| if slot_of(o) == (slot_of(u) + 1) % 4 { 1 } else { -1 })
            .collect()
    }

    pub fn crossing_sign(&self, c: usize) -> Result<i32, DiagramError> {
        if c >= self.over.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        Ok(self.crossing_signs()[c])
    }

    /// Blackboard framing of one component: the signed count of its self-crossings.
    pub fn self_writhe(&self, component: usize) -> Result<i32, DiagramError> {
        let count = self.component_count();
        if component >= count {
            return Err(DiagramError::UnknownComponent(component));
        }
        Ok(self.self_writhes()[component])
    }

    /// Self-writhe of every component, in component order.
    pub fn self_writhes(&self) -> Vec<i32> {
        let labels = self.component_labels();
        let mut out = vec![0; self.component_count()];
        for (c, s) in self.crossing_signs().into_iter().enumerate() {
            let (a, b) = (labels[4 * c], labels[4 * c + 1]);
            if a == b {
                out[a] += s;
            }
        }
        out
    }

    pub fn writhe(&self) -> i32 {
        self.crossing_signs().iter().sum()
    }

    pub fn switch_crossing(&self, c: usize) -> Result<Self, DiagramError> {
        if c >= self.over.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        let mut out = self.clone();
        out.over[c] = out.over[c].toggled();
        Ok(out)
    }

    pub fn smooth(&self, c: usize, kind: Smoothing) -> Result<Self, DiagramError> {
        if c >= self.over.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        let h0 = self.over[c].first_slot();
        let joins = match kind {
            Smoothing::A => [(h0, h0 + 1), (h0 + 2, h0 + 3)],
            Smoothing::B => [(h0, h0 + 3), (h0 + 1, h0 + 2)],
        };
        Ok(self.splice(&[(c, joins)]))
    }

    /// Removes the given crossings, joining their slots internally as listed,
    /// and reconnects the surviving half-edges. Closed circles made only of
    /// removed pieces become free loops.
    pub(crate) fn splice(&self, removed: &[(usize, [(usize, usize); 2])]) -> Self {
        let mut internal: HashMap<usize, usize> = HashMap::new();
        let mut gone = vec![false; self.over.len()];
        for &(c, pairs) in removed {
            gone[c] = true;
            for (s, t) in pairs {
                let (a, b) = (half_edge(c, s), half_edge(c, t));
                internal.insert(a, b);
                internal.insert(b, a);
            }
        }
        let mut new_index = vec![usize::MAX; self.over.len()];
        let mut over = Vec::new();
        for (c, &o) in self.over.iter().enumerate() {
            if !gone[c] {
                new_index[c] = over.len();
                over.push(o);
            }
        }
        let remap = |h: usize| half_edge(new_index[crossing_of(h)], slot_of(h));
        let mut partner = vec![usize::MAX; 4 * over.len()];
        let mut used = vec![false; self.partner.len()];
        for h in 0..self.partner.len() {
            if gone[crossing_of(h)] {
                continue;
            }
            let mut x = self.partner[h];
            while gone[crossing_of(x)] {
                used[x] = true;
                let y = internal[&x];
                used[y] = true;
                x = self.partner[y];
            }
            partner[remap(h)] = remap(x);
        }
        let mut loops = self.free_loops;
        for start in 0..self.partner.len() {
            if !gone[crossing_of(start)] || used[start] {
                continue;
            }
            let mut x = start;
            loop {
                used[x] = true;
                let y = internal[&x];
                used[y] = true;
                x = self.partner[y];
                if x == start {
                    break;
                }
            }
            loops += 1;
        }
        Self::from_parts_unchecked(over, partner, loops)
    }

    /// Face orbits of `h ↦ rot(partner(h))`.
    pub(crate) fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.partner.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                face.push(h);
                h = rot(self.partner[h]);
            }
            out.push(face);
        }
        out
    }

    /// Crossing sets of the connected pieces of the 4-valent graph, ordered
    /// by least crossing.
    pub(crate) fn pieces(&self) -> Vec<Vec<usize>> {
        let c = self.over.len();
        let mut piece = vec![usize::MAX; c];
        let mut out = Vec::new();
        for start in 0..c {
            if piece[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            piece[start] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for s in 0..4 {
                    let y = crossing_of(self.partner[half_edge(x, s)]);
                    if piece[y] == usize::MAX {
                        piece[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Euler check `V − E + F = 2` on every connected piece.
    pub fn is_planar(&self) -> bool {
        let pieces = self.pieces();
        let v = self.over.len() as i64;
        let e = 2 * v;
        let f = self.faces().len() as i64;
        v - e + f == 2 * pieces.len() as i64
    }

    /// Extracts the sub-diagram on a union of pieces.
    pub(crate) fn restrict(&self, crossings: &[usize], free_loops: usize) -> Self {
        let mut new_index = vec![usize::MAX; self.over.len()];
        for (i, &c) in crossings.iter().enumerate() {
            new_index[c] = i;
        }
        let over = crossings.iter().map(|&c| self.over[c]).collect();
        let mut partner = vec![0; 4 * crossings.len()];
        for (i, &c) in crossings.iter().enumerate() {
            for s in 0..4 {
                let p = self.partner[half_edge(c, s)];
                partner[half_edge(i, s)] = half_edge(new_index[crossing_of(p)], slot_of(p));
            }
        }
        Self::from_parts_unchecked(over, partner, free_loops)
    }

    /// Split union of two diagrams.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.partner.len();
        let mut over = self.over.clone();
        over.extend_from_slice(&other.over);
        let mut partner = self.partner.clone();
        partner.extend(other.partner.iter().map(|&p| p + shift));
        Self::from_parts_unchecked(over, partner, self.free_loops + other.free_loops)
    }

    /// `self ⊔ U^k`.
    pub fn with_free_loops(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.free_loops += k;
        out
    }

    pub fn without_free_loops(&self) -> Self {
        let mut out = self.clone();
        out.free_loops = 0;
        out
    }

    /// Applies a crossing-index permutation and per-crossing slot rotations;
    /// the result is the same diagram under a different labeling.
    pub fn relabeled(&self, perm: &[usize], rotations: &[usize]) -> Self {
        let c = self.over.len();
        assert_eq!(perm.len(), c);
        assert_eq!(rotations.len(), c);
        let map = |h: usize| half_edge(perm[crossing_of(h)], slot_of(h) + 4 - rotations[crossing_of(h)] % 4);
        let mut over = vec![OverPair::Even; c];
        let mut partner = vec![0; 4 * c];
        for (old, &o) in self.over.iter().enumerate() {
            over[perm[old]] = if rotations[old] % 2 == 0 { o } else { o.toggled() };
        }
        for h in 0..self.partner.len() {
            partner[map(h)] = map(self.partner[h]);
        }
        Self::from_parts_unchecked(over, partner, self.free_loops)
    }

    /// Under-first visits in the descending traversal: components in label
    /// order, each from its least half-edge. Returns crossings in the order
    /// they are first met as an under-strand on their first visit.
    pub fn non_descending_crossings(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for comp in self.components() {
            for h in comp.visits {
                let c = crossing_of(h);
                if seen.insert(c) && !self.is_over(h) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn is_descending(&self) -> bool {
        self.non_descending_crossings().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn hopf() -> FramedDiagram {
        parse_diagram("s1 s1", InputFormat::Braid).unwrap()
    }

    #[test]
    fn kink_writhe() {
        assert_eq!(FramedDiagram::kink(1).self_writhe(0), Ok(1));
        assert_eq!(FramedDiagram::kink(-1).self_writhe(0), Ok(-1));
    }

    #[test]
    fn hopf_components_have_zero_writhe() {
        let h = hopf();
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.self_writhes(), vec![0, 0]);
        assert_eq!(h.self_writhe(2), Err(DiagramError::UnknownComponent(2)));
    }

    #[test]
    fn switch_is_involution() {
        let k = FramedDiagram::kink(1);
        let s = k.switch_crossing(0).unwrap();
        assert_eq!(s.self_writhe(0), Ok(-1));
        assert_eq!(s.switch_crossing(0).unwrap().canonical_code(), k.canonical_code());
    }

    #[test]
    fn kink_smoothings() {
        let k = FramedDiagram::kink(1);
        let a = k.smooth(0, Smoothing::A).unwrap();
        assert_eq!((a.crossing_count(), a.free_loops()), (0, 2));
        let b = k.smooth(0, Smoothing::B).unwrap();
        assert_eq!((b.crossing_count(), b.free_loops()), (0, 1));
    }

    #[test]
    fn hopf_smoothings_are_kinked_unknots() {
        let h = hopf();
        for c in 0..2 {
            for kind in [Smoothing::A, Smoothing::B] {
                let s = h.smooth(c, kind).unwrap();
                assert_eq!(s.crossing_count(), 1);
                assert_eq!(s.component_count(), 1);
                assert!(s.is_planar());
            }
        }
    }

    #[test]
    fn nonplanar_matching_rejected() {
        // Two circles crossing once.
        let err = FramedDiagram::new(vec![OverPair::Even], vec![2, 3, 0, 1], 0).unwrap_err();
        assert_eq!(err, DiagramError::NonPlanar);
    }

    #[test]
    fn bad_matching_rejected() {
        let err = FramedDiagram::new(vec![OverPair::Even], vec![1, 0, 3, 3], 0).unwrap_err();
        assert!(matches!(err, DiagramError::Connectivity(_)));
        assert_eq!(FramedDiagram::new(vec![], vec![], 0), Err(DiagramError::Empty));
    }

    #[test]
    fn relabeling_preserves_writhe() {
        let t = parse_diagram("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", InputFormat::Pd).unwrap();
        let r = t.relabeled(&[2, 0, 1], &[1, 3, 2]);
        assert_eq!(r.writhe(), t.writhe());
        assert_eq!(r.canonical_code(), t.canonical_code());
    }
}
