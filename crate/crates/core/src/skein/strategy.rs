//! The descending strategy: which crossing to rewrite, and how many switches
//! it takes to reach a framed unlink.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::diagram::FramedDiagram;

use super::SkeinError;

/// Lexicographic `(u_bound, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Complexity {
    pub u_bound: usize,
    pub c: usize,
}

impl Ord for Complexity {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.u_bound, self.c).cmp(&(other.u_bound, other.c))
    }
}

impl PartialOrd for Complexity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u_bound, self.c)
    }
}

/// Why the selected crossing makes progress: it is under-first in an
/// optimal traversal, and after switching it this many remain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectWitness {
    pub remaining_after_switch: usize,
}

/// A traversal of the diagram (component order, base point and direction per
/// component) together with the crossings first met as an under-strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traversal {
    /// Indices into `FramedDiagram::components()`, free loops omitted.
    pub order: Vec<usize>,
    /// Under-first crossings in traversal order.
    pub under_first: Vec<usize>,
}

/// Beyond this many components the order search falls back to label order.
const MAX_ORDER_SEARCH: usize = 14;

/// The traversal with the fewest under-first crossings; ties go to the first
/// one in enumeration order. Self-crossings depend only on each component's
/// own base point and direction, mixed crossings only on the component
/// order, so the two are optimized separately.
pub fn best_traversal(d: &FramedDiagram) -> Traversal {
    let comps: Vec<(usize, Vec<usize>)> = d
        .components()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.visits.is_empty())
        .map(|(i, c)| (i, c.visits))
        .collect();
    let labels = d.component_labels();
    let is_self = |c: usize| labels[4 * c] == labels[4 * c + 1];

    let sequences: Vec<Vec<usize>> = comps
        .iter()
        .map(|(_, visits)| {
            let n = visits.len();
            let mut best: Option<(usize, Vec<usize>)> = None;
            for start in 0..n {
                for forward in [true, false] {
                    let seq: Vec<usize> =
                        (0..n).map(|k| visits[if forward { (start + k) % n } else { (start + n - k) % n }]).collect();
                    let mut seen = BTreeSet::new();
                    let bad = seq.iter().filter(|&&h| is_self(h / 4) && seen.insert(h / 4) && !d.is_over(h)).count();
                    if best.as_ref().map_or(true, |(b, _)| bad < *b) {
                        best = Some((bad, seq));
                    }
                }
            }
            best.map(|(_, s)| s).unwrap_or_default()
        })
        .collect();

    let m = comps.len();
    let pos = |label: usize| comps.iter().position(|(i, _)| *i == label).expect("component with visits");
    // cost[i][j]: mixed crossings that are bad when i precedes j.
    let mut cost = vec![vec![0usize; m]; m];
    for c in 0..d.crossing_count() {
        if is_self(c) {
            continue;
        }
        let (a, b) = (pos(labels[4 * c]), pos(labels[4 * c + 1]));
        if d.is_over(4 * c) {
            cost[b][a] += 1;
        } else {
            cost[a][b] += 1;
        }
    }
    let order = if m <= MAX_ORDER_SEARCH { best_order(&cost) } else { (0..m).collect() };

    let mut seen = BTreeSet::new();
    let mut under_first = Vec::new();
    for &k in &order {
        for &h in &sequences[k] {
            if seen.insert(h / 4) && !d.is_over(h) {
                under_first.push(h / 4);
            }
        }
    }
    Traversal { order: order.iter().map(|&k| comps[k].0).collect(), under_first }
}

/// Order minimizing the summed `cost[i][j]` over pairs with `i` first.
fn best_order(cost: &[Vec<usize>]) -> Vec<usize> {
    let m = cost.len();
    let full = 1usize << m;
    // best[s]: least cost of placing the set s last, in some order.
    let mut best = vec![usize::MAX; full];
    let mut next = vec![usize::MAX; full];
    best[0] = 0;
    for s in 1..full {
        for i in (0..m).filter(|&i| s >> i & 1 == 1) {
            let rest = s & !(1 << i);
            let c = best[rest] + (0..m).filter(|&j| rest >> j & 1 == 1).map(|j| cost[i][j]).sum::<usize>();
            if c < best[s] {
                best[s] = c;
                next[s] = i;
            }
        }
    }
    let mut order = Vec::with_capacity(m);
    let mut s = full - 1;
    while s != 0 {
        order.push(next[s]);
        s &= !(1 << next[s]);
    }
    order
}

/// First under-first crossing of the best traversal.
pub fn select_crossing(d: &FramedDiagram) -> Result<(usize, SelectWitness), SkeinError> {
    if d.crossing_count() == 0 || d.detect_reduction().is_some() {
        return Err(SkeinError::NotApplicable("diagram is reducible or resolved".into()));
    }
    let bad = best_traversal(d).under_first;
    match bad.first() {
        Some(&c) => Ok((c, SelectWitness { remaining_after_switch: bad.len() - 1 })),
        None => Err(SkeinError::NotApplicable("diagram is reducible or resolved (descending)".into())),
    }
}

/// `u_bound` is the number of switches that make the best traversal
/// descending; the diagram is then a framed unlink.
pub fn complexity_bound(d: &FramedDiagram) -> Complexity {
    Complexity { u_bound: best_traversal(d).under_first.len(), c: d.crossing_count() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_diagram, InputFormat};

    fn trefoil() -> FramedDiagram {
        parse_diagram("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", InputFormat::Pd).unwrap()
    }

    #[test]
    fn bounds_of_small_diagrams() {
        assert_eq!(complexity_bound(&FramedDiagram::unknot()), Complexity { u_bound: 0, c: 0 });
        assert_eq!(complexity_bound(&FramedDiagram::kink(1)), Complexity { u_bound: 0, c: 1 });
        assert_eq!(complexity_bound(&trefoil()), Complexity { u_bound: 1, c: 3 });
    }

    #[test]
    fn trefoil_selection_is_deterministic() {
        let t = trefoil();
        let (c, w) = select_crossing(&t).unwrap();
        assert_eq!(c, best_traversal(&t).under_first[0]);
        assert_eq!(w.remaining_after_switch, 0);
        let switched = t.switch_crossing(c).unwrap();
        assert!(complexity_bound(&switched) < complexity_bound(&t));
    }

    #[test]
    fn hopf_selection() {
        let h = parse_diagram("s1 s1", InputFormat::Braid).unwrap();
        let (c, _) = select_crossing(&h).unwrap();
        assert_eq!(c, best_traversal(&h).under_first[0]);
    }

    #[test]
    fn reducible_or_descending_rejected() {
        assert!(select_crossing(&FramedDiagram::kink(1)).is_err());
        assert!(select_crossing(&FramedDiagram::unknot()).is_err());
        let descending = [
            "s1 s1 s1",
            "s1 s2 s1 s2",
            "s1^-1 s2 s1^-1 s2",
            "s1 s2 s3 s1 s2 s3",
            "s1 s1 s2 s2^-1 s1",
        ];
        for w in descending {
            let mut d = parse_diagram(w, InputFormat::Braid).unwrap();
            while let Some(&c) = best_traversal(&d).under_first.first() {
                d = d.switch_crossing(c).unwrap();
            }
            assert_eq!(complexity_bound(&d).u_bound, 0);
            assert!(select_crossing(&d).is_err(), "{w}");
        }
    }

    #[test]
    fn switching_under_first_crossing_lowers_bound() {
        for w in ["s1 s2^-1 s1 s2^-1 s3 s2 s3^-1", "s1 s1 s2 s1^-1 s2 s2", "s1^-1 s2 s1^-1 s3 s2^-1 s3"] {
            let d = parse_diagram(w, InputFormat::Braid).unwrap();
            let t = best_traversal(&d);
            for &c in &t.under_first {
                let sw = d.switch_crossing(c).unwrap();
                assert!(complexity_bound(&sw).u_bound < t.under_first.len(), "{w}");
            }
        }
    }

    #[test]
    fn order_search_places_over_component_first() {
        // Component 1 passes over component 0 at both crossings of this clasp.
        let cost = vec![vec![0, 2], vec![0, 0]];
        assert_eq!(best_order(&cost), vec![1, 0]);
    }
}
