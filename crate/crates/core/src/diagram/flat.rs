//! Diagrams with flat (singular) crossings.

use super::{DiagramError, FramedDiagram};

/// Which resolution of a flat crossing to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResolutionSign {
    Plus,
    Minus,
}

impl ResolutionSign {
    pub fn as_int(self) -> i32 {
        match self {
            ResolutionSign::Plus => 1,
            ResolutionSign::Minus => -1,
        }
    }
}

/// A framed diagram in which some crossings are double points. The stored
/// over-strand of a flat crossing is the picture of its `+` resolution and
/// is not visible through the public API until resolved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingularDiagram {
    base: FramedDiagram,
    flat: Vec<bool>,
}

impl SingularDiagram {
    pub(crate) fn new(base: FramedDiagram, flat: Vec<bool>) -> Self {
        assert_eq!(base.crossing_count(), flat.len());
        Self { base, flat }
    }

    pub fn from_framed(base: FramedDiagram) -> Self {
        let flat = vec![false; base.crossing_count()];
        Self { base, flat }
    }

    /// Flattens the listed crossings, taking their current state as the `+` picture.
    pub fn with_flat(base: FramedDiagram, crossings: &[usize]) -> Result<Self, DiagramError> {
        let mut sd = Self::from_framed(base);
        for &c in crossings {
            if c >= sd.flat.len() {
                return Err(DiagramError::UnknownCrossing(c));
            }
            sd.flat[c] = true;
        }
        Ok(sd)
    }

    pub(crate) fn base(&self) -> &FramedDiagram {
        &self.base
    }

    pub(crate) fn into_base(self) -> FramedDiagram {
        self.base
    }

    pub fn crossing_count(&self) -> usize {
        self.base.crossing_count()
    }

    pub fn component_count(&self) -> usize {
        self.base.component_count()
    }

    pub fn is_flat(&self, c: usize) -> bool {
        self.flat.get(c).copied().unwrap_or(false)
    }

    pub fn flat_crossings(&self) -> Vec<usize> {
        (0..self.flat.len()).filter(|&c| self.flat[c]).collect()
    }

    pub fn flat_count(&self) -> usize {
        self.flat.iter().filter(|&&f| f).count()
    }

    pub fn resolve_flat(&self, c: usize, sign: ResolutionSign) -> Result<Self, DiagramError> {
        if c >= self.flat.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        if !self.flat[c] {
            return Err(DiagramError::NotFlat(c));
        }
        let mut out = self.clone();
        out.flat[c] = false;
        if sign == ResolutionSign::Minus {
            out.base = out.base.switch_crossing(c)?;
        }
        Ok(out)
    }

    /// Resolves every flat crossing, in `flat_crossings()` order.
    pub fn resolve_all(&self, signs: &[ResolutionSign]) -> Result<FramedDiagram, DiagramError> {
        let flats = self.flat_crossings();
        if flats.len() != signs.len() {
            return Err(DiagramError::StaleMove(format!(
                "{} signs given for {} flat crossings",
                signs.len(),
                flats.len()
            )));
        }
        let mut cur = self.clone();
        for (&c, &s) in flats.iter().zip(signs) {
            cur = cur.resolve_flat(c, s)?;
        }
        Ok(cur.base)
    }

    /// The fully resolved diagram, when no flat crossings remain.
    pub fn as_framed(&self) -> Option<&FramedDiagram> {
        (self.flat_count() == 0).then_some(&self.base)
    }

    /// Component index of each crossing's two strands.
    pub fn strand_components(&self, c: usize) -> Result<(usize, usize), DiagramError> {
        if c >= self.flat.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        let labels = self.base.component_labels();
        Ok((labels[4 * c], labels[4 * c + 1]))
    }
}

/// All `2^k` sign patterns for `k` flat points, in binary counting order
/// with `Plus` before `Minus`.
pub fn sign_patterns(k: usize) -> Vec<Vec<ResolutionSign>> {
    (0..1usize << k)
        .map(|bits| {
            (0..k)
                .map(|j| if bits >> (k - 1 - j) & 1 == 0 { ResolutionSign::Plus } else { ResolutionSign::Minus })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_singular, InputFormat};

    #[test]
    fn flat_kink_resolutions() {
        let sd = SingularDiagram::with_flat(FramedDiagram::kink(1), &[0]).unwrap();
        let plus = sd.resolve_flat(0, ResolutionSign::Plus).unwrap();
        let minus = sd.resolve_flat(0, ResolutionSign::Minus).unwrap();
        assert_eq!(plus.as_framed().unwrap().self_writhes(), vec![1]);
        assert_eq!(minus.as_framed().unwrap().self_writhes(), vec![-1]);
        assert_eq!(plus.resolve_flat(0, ResolutionSign::Plus), Err(DiagramError::NotFlat(0)));
    }

    #[test]
    fn two_flat_points_give_four_diagrams() {
        let sd = parse_singular("F[1,5,2,4] F[3,1,4,6] X[5,3,6,2]", InputFormat::Pd).unwrap();
        let codes: std::collections::HashSet<_> = sign_patterns(2)
            .iter()
            .map(|p| sd.resolve_all(p).unwrap().to_pd())
            .collect();
        assert_eq!(codes.len(), 4);
    }

    #[test]
    fn pattern_order() {
        use ResolutionSign::*;
        assert_eq!(sign_patterns(2), vec![vec![Plus, Plus], vec![Plus, Minus], vec![Minus, Plus], vec![Minus, Minus]]);
    }
}
