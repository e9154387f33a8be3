//! Moves that do not reduce crossing count: kink insertion, R2 insertion,
//! R3 slides and connected sums. Used to build test diagrams and to perturb
//! diagrams within their regular isotopy class.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{across, crossing_of, half_edge, DiagramError, FramedDiagram, OverPair};

/// Which side of the arc (relative to its traversal) a new kink loop sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KinkSide {
    Left,
    Right,
}

/// A regular-isotopy move that was applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Perturbation {
    /// Two new crossings pushed from arc `(from, partner(from))` across the
    /// arc `(across_arc, partner(across_arc))`, both bounding one face.
    R2Insert { from: usize, across_arc: usize, from_over: bool },
    /// The triangle face starting at half-edge `dart` was slid.
    R3 { dart: usize },
}

impl FramedDiagram {
    /// Inserts a curl with self-writhe `sign` on the arc leaving half-edge
    /// `h` (or on a free loop when `h` is `None`). Returns the new diagram,
    /// the index of the new crossing and the half-edge where the arc
    /// continues past the curl.
    pub fn add_kink_at(
        &self,
        h: Option<usize>,
        sign: i32,
        side: KinkSide,
    ) -> Result<(FramedDiagram, usize, usize), DiagramError> {
        let k = self.crossing_count();
        let mut over = self.over_pairs().to_vec();
        over.push(OverPair::Even);
        let mut partner = self.partners().to_vec();
        partner.extend([usize::MAX; 4]);
        let mut free_loops = self.free_loops();
        let (loop_end, exit) = match side {
            KinkSide::Left => (3, 1),
            KinkSide::Right => (1, 3),
        };
        let mut link = |a: usize, b: usize| {
            partner[a] = b;
            partner[b] = a;
        };
        match h {
            Some(h) => {
                if h >= self.partners().len() {
                    return Err(DiagramError::StaleMove(format!("no half-edge {h}")));
                }
                let p = self.partner(h);
                link(h, half_edge(k, 0));
                link(half_edge(k, 2), half_edge(k, loop_end));
                link(half_edge(k, exit), p);
            }
            None => {
                if free_loops == 0 {
                    return Err(DiagramError::StaleMove("no free loop to kink".into()));
                }
                free_loops -= 1;
                link(half_edge(k, 2), half_edge(k, loop_end));
                link(half_edge(k, exit), half_edge(k, 0));
            }
        }
        let mut d = FramedDiagram::from_parts_unchecked(over, partner, free_loops);
        if d.crossing_signs()[k] != sign.signum() {
            d = d.switch_crossing(k)?;
        }
        Ok((d, k, half_edge(k, exit)))
    }

    /// Adds a curl of the given sign on the first arc (or on a free loop).
    pub fn add_kink(&self, sign: i32) -> FramedDiagram {
        let h = (self.crossing_count() > 0).then_some(0);
        self.add_kink_at(h, sign, KinkSide::Left).expect("diagram has an arc or a free loop").0
    }

    /// R2 insertion. `from` and `across_arc` must be darts of the same face
    /// lying on different arcs.
    pub fn insert_r2(&self, from: usize, across_arc: usize, from_over: bool) -> Result<FramedDiagram, DiagramError> {
        let face = self
            .faces()
            .into_iter()
            .find(|f| f.contains(&from))
            .ok_or_else(|| DiagramError::StaleMove(format!("no half-edge {from}")))?;
        let h1 = from;
        let h2 = across_arc;
        let (p1, p2) = (self.partner(h1), self.partner(h2));
        if !face.contains(&h2) || h1 == h2 || h1 == p2 {
            return Err(DiagramError::StaleMove("R2 needs two distinct arcs on one face".into()));
        }
        let c = self.crossing_count();
        let (x, y) = (c, c + 1);
        let mut over = self.over_pairs().to_vec();
        let pair = if from_over { OverPair::Odd } else { OverPair::Even };
        over.extend([pair, pair]);
        let mut partner = self.partners().to_vec();
        partner.extend([usize::MAX; 8]);
        let mut link = |a: usize, b: usize| {
            partner[a] = b;
            partner[b] = a;
        };
        // Slots at both new crossings: 0 east, 1 north, 2 west, 3 south.
        link(h1, half_edge(x, 1));
        link(half_edge(x, 3), half_edge(y, 3));
        link(half_edge(y, 1), p1);
        link(h2, half_edge(y, 0));
        link(half_edge(y, 2), half_edge(x, 0));
        link(half_edge(x, 2), p2);
        FramedDiagram::new(over, partner, self.free_loops())
    }

    /// Triangle faces admitting an R3 slide, as their least dart.
    pub fn r3_candidates(&self) -> Vec<usize> {
        self.faces()
            .into_iter()
            .filter(|f| f.len() == 3)
            .filter(|f| {
                let cs: Vec<usize> = f.iter().map(|&h| crossing_of(h)).collect();
                cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2]
            })
            .filter(|f| f.iter().any(|&h| self.is_over(h) && self.is_over(self.partner(h))))
            .filter(|f| {
                let tri: Vec<usize> = f.iter().map(|&h| crossing_of(h)).collect();
                f.iter().all(|&h| {
                    let ends = [self.partner(across(h)), self.partner(across(self.partner(h)))];
                    ends.iter().all(|&e| !tri.contains(&crossing_of(e)))
                })
            })
            .map(|f| *f.iter().min().expect("nonempty face"))
            .collect()
    }

    /// Slides one strand across the crossing of the other two at a triangle face.
    pub fn apply_r3(&self, dart: usize) -> Result<FramedDiagram, DiagramError> {
        if !self.r3_candidates().contains(&dart) {
            return Err(DiagramError::StaleMove(format!("no R3 triangle at half-edge {dart}")));
        }
        let face = self.faces().into_iter().find(|f| f.contains(&dart)).expect("candidate face");
        let mut partner = self.partners().to_vec();
        for &x_in in &face {
            let y_in = self.partner(x_in);
            let (x_out, y_out) = (across(x_in), across(y_in));
            let (ext_x, ext_y) = (self.partner(x_out), self.partner(y_out));
            partner[x_in] = ext_y;
            partner[ext_y] = x_in;
            partner[y_in] = ext_x;
            partner[ext_x] = y_in;
            partner[x_out] = y_out;
            partner[y_out] = x_out;
        }
        FramedDiagram::new(self.over_pairs().to_vec(), partner, self.free_loops())
    }

    /// Connected sum along the arcs leaving `h` here and `g` in `other`.
    pub fn connected_sum(&self, h: usize, other: &FramedDiagram, g: usize) -> Result<FramedDiagram, DiagramError> {
        if h >= self.partners().len() || g >= other.partners().len() {
            return Err(DiagramError::StaleMove("connected sum needs an arc on each side".into()));
        }
        let u = self.disjoint_union(other);
        let shift = self.partners().len();
        let (h1, p1) = (h, self.partner(h));
        let (h2, p2) = (g + shift, other.partner(g) + shift);
        let mut partner = u.partners().to_vec();
        partner[h1] = p2;
        partner[p2] = h1;
        partner[p1] = h2;
        partner[h2] = p1;
        FramedDiagram::new(u.over_pairs().to_vec(), partner, u.free_loops())
    }

    /// One random regular-isotopy move: an R3 slide when one is available
    /// and the coin says so, otherwise an R2 insertion. Diagrams without
    /// crossings are returned unchanged.
    pub fn random_perturbation<R: Rng>(&self, rng: &mut R) -> (FramedDiagram, Option<Perturbation>) {
        let r3 = self.r3_candidates();
        if !r3.is_empty() && rng.gen_bool(0.5) {
            let dart = *r3.choose(rng).expect("nonempty");
            let d = self.apply_r3(dart).expect("candidate is valid");
            return (d, Some(Perturbation::R3 { dart }));
        }
        let faces: Vec<Vec<usize>> = self.faces().into_iter().filter(|f| f.len() >= 2).collect();
        let mut options = Vec::new();
        for f in &faces {
            for &a in f {
                for &b in f {
                    if a != b && self.partner(a) != b {
                        options.push((a, b));
                    }
                }
            }
        }
        match options.choose(rng) {
            Some(&(from, across_arc)) => {
                let from_over = rng.gen_bool(0.5);
                let d = self.insert_r2(from, across_arc, from_over).expect("face darts are valid");
                (d, Some(Perturbation::R2Insert { from, across_arc, from_over }))
            }
            None => (self.clone(), None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_diagram, InputFormat, Reduction};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trefoil() -> FramedDiagram {
        parse_diagram("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", InputFormat::Pd).unwrap()
    }

    #[test]
    fn kink_insertion_sign_and_side() {
        let t = trefoil();
        for side in [KinkSide::Left, KinkSide::Right] {
            for sign in [1, -1] {
                let (d, k, _) = t.add_kink_at(Some(5), sign, side).unwrap();
                assert_eq!(d.crossing_signs()[k], sign);
                assert_eq!(d.self_writhes()[0], t.self_writhes()[0] + sign);
                assert!(matches!(d.detect_reduction(), Some(Reduction::Kink { .. })));
            }
        }
        let (u, _, _) = FramedDiagram::unknot().add_kink_at(None, 1, KinkSide::Left).unwrap();
        assert_eq!(u.canonical_code(), FramedDiagram::kink(1).canonical_code());
    }

    #[test]
    fn r2_insertion_is_reducible() {
        let t = trefoil();
        let face = t.faces().into_iter().find(|f| f.len() == 3).unwrap();
        let d = t.insert_r2(face[0], face[1], true).unwrap();
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(d.writhe(), t.writhe());
        let mv = d.detect_reduction().unwrap();
        assert!(matches!(mv, Reduction::Bigon { .. }), "{mv:?}");
        let (back, _) = d.apply_reduction(&mv).unwrap();
        assert_eq!(back.canonical_code(), t.canonical_code());
    }

    #[test]
    fn r3_round_trip() {
        // Braid relation s1 s2 s1 = s2 s1 s2 closes to a diagram with an R3 triangle.
        let d = parse_diagram("s1 s2 s1 s2^-1 s1^-1 s2^-1 s1 s1", InputFormat::Braid).unwrap();
        let cands = d.r3_candidates();
        assert!(!cands.is_empty());
        for &dart in &cands {
            let e = d.apply_r3(dart).unwrap();
            assert_eq!(e.crossing_count(), d.crossing_count());
            assert_eq!(e.writhe(), d.writhe());
            assert_eq!(e.self_writhes(), d.self_writhes());
        }
    }

    #[test]
    fn connected_sum_of_trefoils() {
        let t = trefoil();
        let s = t.connected_sum(0, &t, 0).unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.self_writhes()[0], 2 * t.self_writhes()[0]);
    }

    #[test]
    fn random_perturbations_stay_planar() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut d = trefoil();
        for _ in 0..20 {
            let (next, mv) = d.random_perturbation(&mut rng);
            assert!(mv.is_some());
            assert!(next.is_planar());
            assert_eq!(next.self_writhes(), d.self_writhes());
            d = next;
            if d.crossing_count() > 14 {
                d = trefoil();
            }
        }
    }
}
