//! Crossing-count-reducing moves: free loops, split pieces, R1 kinks and R2 bigons.

use super::{crossing_of, rot, DiagramError, FramedDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    FreeLoop,
    DisjointSplit,
    Kink,
    Bigon,
}

/// Free loop, then split, then R1, then R2.
pub const DEFAULT_PRIORITY: [ReductionKind; 4] =
    [ReductionKind::FreeLoop, ReductionKind::DisjointSplit, ReductionKind::Kink, ReductionKind::Bigon];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// Drop one crossingless circle from a diagram that has something else.
    FreeLoop,
    /// The crossings of the first connected piece; the rest (with any free
    /// loops) forms the second part.
    DisjointSplit { piece: Vec<usize> },
    /// An R1 curl at `crossing` (a 1-gon face), with its self-writhe sign.
    Kink { crossing: usize, sign: i32 },
    /// An R2 bigon between two crossings where one strand is over at both.
    Bigon { first: usize, second: usize },
}

impl Reduction {
    pub fn kind(&self) -> ReductionKind {
        match self {
            Reduction::FreeLoop => ReductionKind::FreeLoop,
            Reduction::DisjointSplit { .. } => ReductionKind::DisjointSplit,
            Reduction::Kink { .. } => ReductionKind::Kink,
            Reduction::Bigon { .. } => ReductionKind::Bigon,
        }
    }
}

/// What the evaluator must multiply in after a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bookkeeping {
    /// One factor of the kink value to the given sign.
    KinkSign(i32),
    /// One loop-value factor per split-off closed part.
    DeltaCount(usize),
    None,
}

impl FramedDiagram {
    pub fn detect_reduction(&self) -> Option<Reduction> {
        self.detect_reduction_with(&DEFAULT_PRIORITY)
    }

    pub fn detect_reduction_with(&self, priority: &[ReductionKind]) -> Option<Reduction> {
        priority.iter().find_map(|kind| match kind {
            ReductionKind::FreeLoop => self.find_free_loop(),
            ReductionKind::DisjointSplit => self.find_split(),
            ReductionKind::Kink => self.find_kink(),
            ReductionKind::Bigon => self.find_bigon(),
        })
    }

    fn find_free_loop(&self) -> Option<Reduction> {
        (self.free_loops() > 0 && (self.crossing_count() > 0 || self.free_loops() > 1)).then_some(Reduction::FreeLoop)
    }

    fn find_split(&self) -> Option<Reduction> {
        let pieces = self.pieces();
        let has_second_part = pieces.len() > 1 || (pieces.len() == 1 && self.free_loops() > 0);
        has_second_part.then(|| Reduction::DisjointSplit { piece: pieces[0].clone() })
    }

    fn find_kink(&self) -> Option<Reduction> {
        let signs = self.crossing_signs();
        (0..self.partners().len())
            .find(|&h| rot(self.partner(h)) == h)
            .map(|h| Reduction::Kink { crossing: crossing_of(h), sign: signs[crossing_of(h)] })
    }

    fn find_bigon(&self) -> Option<Reduction> {
        for h in 0..self.partners().len() {
            let p = self.partner(h);
            let h2 = rot(p);
            if rot(self.partner(h2)) != h {
                continue;
            }
            let (c1, c2) = (crossing_of(h), crossing_of(p));
            if c1 != c2 && self.is_over(h) == self.is_over(p) {
                return Some(Reduction::Bigon { first: c1.min(c2), second: c1.max(c2) });
            }
        }
        None
    }

    pub fn apply_reduction(&self, mv: &Reduction) -> Result<(FramedDiagram, Bookkeeping), DiagramError> {
        match mv {
            Reduction::FreeLoop => {
                if self.find_free_loop().is_none() {
                    return Err(DiagramError::StaleMove("no removable free loop".into()));
                }
                let mut out = self.clone();
                out.free_loops -= 1;
                Ok((out, Bookkeeping::DeltaCount(1)))
            }
            Reduction::DisjointSplit { .. } => {
                Err(DiagramError::StaleMove("a split yields two diagrams; use split_pieces".into()))
            }
            Reduction::Kink { crossing, sign } => {
                let c = *crossing;
                if c >= self.crossing_count() {
                    return Err(DiagramError::StaleMove(format!("no crossing {c}")));
                }
                if !(0..4).any(|s| rot(self.partner(4 * c + s)) == 4 * c + s) {
                    return Err(DiagramError::StaleMove(format!("crossing {c} is not a kink")));
                }
                if self.crossing_signs()[c] != *sign {
                    return Err(DiagramError::StaleMove(format!("kink sign at {c} changed")));
                }
                let straight = [(0, 2), (1, 3)];
                Ok((self.splice(&[(c, straight)]), Bookkeeping::KinkSign(*sign)))
            }
            Reduction::Bigon { first, second } => {
                let ok = matches!(self.find_bigon_between(*first, *second), Some(true));
                if !ok {
                    return Err(DiagramError::StaleMove(format!("no R2 bigon on {first}, {second}")));
                }
                let straight = [(0, 2), (1, 3)];
                Ok((self.splice(&[(*first, straight), (*second, straight)]), Bookkeeping::None))
            }
        }
    }

    fn find_bigon_between(&self, a: usize, b: usize) -> Option<bool> {
        if a >= self.crossing_count() || b >= self.crossing_count() || a == b {
            return None;
        }
        (0..4).map(|s| 4 * a + s).find_map(|h| {
            let p = self.partner(h);
            (crossing_of(p) == b && rot(self.partner(rot(p))) == h).then(|| self.is_over(h) == self.is_over(p))
        })
    }

    /// Splits along a `DisjointSplit` move: `(piece, rest)`. The loop-value
    /// factor for the union is one `δ`.
    pub fn split_pieces(&self, mv: &Reduction) -> Result<(FramedDiagram, FramedDiagram), DiagramError> {
        let Reduction::DisjointSplit { piece } = mv else {
            return Err(DiagramError::StaleMove("not a split".into()));
        };
        let pieces = self.pieces();
        if !pieces.contains(piece) || (pieces.len() < 2 && self.free_loops() == 0) {
            return Err(DiagramError::StaleMove("piece is not a connected component of the diagram".into()));
        }
        let rest: Vec<usize> = (0..self.crossing_count()).filter(|c| !piece.contains(c)).collect();
        Ok((self.restrict(piece, 0), self.restrict(&rest, self.free_loops())))
    }
}
