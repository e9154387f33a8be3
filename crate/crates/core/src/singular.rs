//! Derived invariants of diagrams with double points, and the bookkeeping
//! around them: integrability, the one-term relation at kink points,
//! admissibility, framing jumps and finite-type vanishing.

use thiserror::Error;

use crate::diagram::{rot, sign_patterns, DiagramError, FramedDiagram, KinkSide, ResolutionSign, SingularDiagram};
use crate::ring::PowerSeries;
use crate::skein::{series_params, EvalOptions, Evaluator, Normalization, SkeinError, SkeinRing};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SingularError {
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("component {index} out of range for {count} components")]
    Component { index: usize, count: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// `F` on every resolution of the flat points, in `sign_patterns` order.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedTable<T> {
    pub flat_points: Vec<usize>,
    pub entries: Vec<(Vec<ResolutionSign>, T)>,
    /// `Σ sign(ρ)·F(L_ρ)`.
    pub alternating_sum: T,
    /// `F(L_+) − F(L_−)` when there is exactly one flat point.
    pub order_one: Option<T>,
}

fn pattern_sign(p: &[ResolutionSign]) -> i32 {
    p.iter().map(|s| s.as_int()).product()
}

pub fn derived_invariant<T, F>(f: &mut F, sd: &SingularDiagram) -> Result<DerivedTable<T>, SingularError>
where
    T: SkeinRing,
    F: FnMut(&FramedDiagram) -> Result<T, SkeinError>,
{
    let flat_points = sd.flat_crossings();
    if flat_points.is_empty() {
        return Err(SingularError::Precondition("no flat points".into()));
    }
    let mut entries = Vec::new();
    let mut sum: Option<T> = None;
    for pattern in sign_patterns(flat_points.len()) {
        let v = f(&sd.resolve_all(&pattern)?)?;
        sum = Some(match (sum, pattern_sign(&pattern)) {
            (None, 1) => v.clone(),
            (None, _) => v.one_like().sub(&v.one_like()).sub(&v),
            (Some(s), 1) => s.add(&v),
            (Some(s), _) => s.sub(&v),
        });
        entries.push((pattern, v));
    }
    let alternating_sum = sum.expect("at least one pattern");
    let order_one = (flat_points.len() == 1).then(|| alternating_sum.clone());
    Ok(DerivedTable { flat_points, entries, alternating_sum, order_one })
}

/// Values of a candidate `f` on the four one-point resolutions of a
/// two-point diagram: `first_flat[s] = f(L_{×s})` and
/// `second_flat[s] = f(L_{s×})`, indexed `[+, −]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrabilityTable<T> {
    pub first_flat: [T; 2],
    pub second_flat: [T; 2],
}

/// `f(L_{×+}) − f(L_{×−}) = f(L_{+×}) − f(L_{−×})`.
pub fn integrability_from_table<T: SkeinRing>(table: &IntegrabilityTable<T>) -> bool {
    table.first_flat[0].sub(&table.first_flat[1]) == table.second_flat[0].sub(&table.second_flat[1])
}

/// Builds the table with `f` derived from `F` and checks it.
pub fn integrability_table<T, F>(f: &mut F, sd: &SingularDiagram) -> Result<IntegrabilityTable<T>, SingularError>
where
    T: SkeinRing,
    F: FnMut(&FramedDiagram) -> Result<T, SkeinError>,
{
    use ResolutionSign::{Minus, Plus};
    let flats = sd.flat_crossings();
    if flats.len() != 2 {
        return Err(SingularError::Precondition(format!("expected 2 flat points, found {}", flats.len())));
    }
    let mut one_point = |c: usize, s: ResolutionSign| -> Result<T, SingularError> {
        Ok(derived_invariant(f, &sd.resolve_flat(c, s)?)?.alternating_sum)
    };
    Ok(IntegrabilityTable {
        first_flat: [one_point(flats[1], Plus)?, one_point(flats[1], Minus)?],
        second_flat: [one_point(flats[0], Plus)?, one_point(flats[0], Minus)?],
    })
}

pub fn check_integrability<T, F>(f: &mut F, sd: &SingularDiagram) -> Result<bool, SingularError>
where
    T: SkeinRing,
    F: FnMut(&FramedDiagram) -> Result<T, SkeinError>,
{
    Ok(integrability_from_table(&integrability_table(f, sd)?))
}

/// Two flat kink points in a row on one arc of `base`, each stored so that
/// its `+` resolution is the positive curl. Returns the diagram and the two
/// flat crossings in arc order.
pub fn figure3_configuration(
    base: &FramedDiagram,
    arc: Option<usize>,
    sides: [KinkSide; 2],
) -> Result<(SingularDiagram, [usize; 2]), SingularError> {
    let (d1, k1, exit) = base.add_kink_at(arc, 1, sides[0])?;
    let (d2, k2, _) = d1.add_kink_at(Some(exit), 1, sides[1])?;
    Ok((SingularDiagram::with_flat(d2, &[k1, k2])?, [k1, k2]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneTermReport {
    /// `f(L_{×r}) = f(L_{r×})`.
    pub r_equal: bool,
    /// `f(L_{×l}) = f(L_{l×})`.
    pub l_equal: bool,
    /// The resolutions of `L_{×r}` and `L_{r×}` (likewise for `l`) have the
    /// same canonical codes as multisets.
    pub codes_match: bool,
    /// Signed four-term sum `f(×r) − f(×l) − f(r×) + f(l×)`.
    pub four_term_vanishes: bool,
}

impl OneTermReport {
    pub fn holds(&self) -> bool {
        self.r_equal && self.l_equal && self.four_term_vanishes
    }
}

fn kink_loop(d: &FramedDiagram, c: usize) -> bool {
    (4 * c..4 * c + 4).any(|h| rot(d.partner(h)) == h)
}

/// The one-term relation on two consecutive flat kink points: moving the
/// flat point past a curl on the same arc leaves `f` unchanged.
pub fn one_term_relation_check<T, F>(f: &mut F, sd: &SingularDiagram) -> Result<OneTermReport, SingularError>
where
    T: SkeinRing,
    F: FnMut(&FramedDiagram) -> Result<T, SkeinError>,
{
    use ResolutionSign::{Minus, Plus};
    let flats = sd.flat_crossings();
    if flats.len() != 2 {
        return Err(SingularError::Shape(format!("expected 2 flat points, found {}", flats.len())));
    }
    for &c in &flats {
        if !kink_loop(sd.base(), c) {
            return Err(SingularError::Shape(format!("flat point {c} is not a kink point")));
        }
        if sd.base().crossing_signs()[c] != 1 {
            return Err(SingularError::Shape(format!("flat point {c} does not resolve to r under +")));
        }
    }
    let (a, b) = (flats[0], flats[1]);
    let resolve = |first: ResolutionSign, second: ResolutionSign| -> Result<FramedDiagram, SingularError> {
        Ok(sd.resolve_flat(a, first)?.resolve_flat(b, second)?.into_base())
    };
    let mut value = |first, second| -> Result<T, SingularError> { Ok(f(&resolve(first, second)?)?) };
    // `Plus` is `r` at both points.
    let f_first_flat_r = value(Plus, Plus)?.sub(&value(Minus, Plus)?);
    let f_second_flat_r = value(Plus, Plus)?.sub(&value(Plus, Minus)?);
    let f_first_flat_l = value(Plus, Minus)?.sub(&value(Minus, Minus)?);
    let f_second_flat_l = value(Minus, Plus)?.sub(&value(Minus, Minus)?);
    let four = f_first_flat_r.sub(&f_first_flat_l).sub(&f_second_flat_r).add(&f_second_flat_l);
    let zero = four.one_like().sub(&four.one_like());

    let codes = |pairs: [(ResolutionSign, ResolutionSign); 2]| -> Result<Vec<_>, SingularError> {
        let mut v = pairs.iter().map(|&(x, y)| resolve(x, y).map(|d| d.canonical_code())).collect::<Result<Vec<_>, _>>()?;
        v.sort();
        Ok(v)
    };
    let codes_match = codes([(Plus, Plus), (Minus, Plus)])? == codes([(Plus, Plus), (Plus, Minus)])?
        && codes([(Plus, Minus), (Minus, Minus)])? == codes([(Minus, Plus), (Minus, Minus)])?;
    Ok(OneTermReport {
        r_equal: f_first_flat_r == f_second_flat_r,
        l_equal: f_first_flat_l == f_second_flat_l,
        codes_match,
        four_term_vanishes: four == zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    Inadmissible,
    Undetermined,
}

/// A flat point that closes off an empty 1-gon face is a visible kink and
/// hence inadmissible; nothing is concluded otherwise.
pub fn is_admissible_in_diagram(sd: &SingularDiagram, c: usize) -> Result<Admissibility, SingularError> {
    if !sd.is_flat(c) {
        return Err(DiagramError::NotFlat(c).into());
    }
    Ok(if kink_loop(sd.base(), c) { Admissibility::Inadmissible } else { Admissibility::Undetermined })
}

/// `self_writhe(L_+) − self_writhe(L_−)` per component.
pub fn writhe_jump(sd: &SingularDiagram, c: usize) -> Result<Vec<i32>, SingularError> {
    let plus = sd.resolve_flat(c, ResolutionSign::Plus)?.into_base().self_writhes();
    let minus = sd.resolve_flat(c, ResolutionSign::Minus)?.into_base().self_writhes();
    Ok(plus.iter().zip(&minus).map(|(p, m)| p - m).collect())
}

/// One crossing change in a discretized homotopy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FramingEvent {
    pub component: usize,
    /// `ε_j ∈ {+1, −1}`.
    pub sign: i32,
    /// `0` or `2`.
    pub jump: i32,
}

/// `Δf_i = Σ_j δ_j^i ε_j f_i^j`.
pub fn total_framing(events: &[FramingEvent], m: usize) -> Result<Vec<i32>, SingularError> {
    let mut out = vec![0; m];
    for e in events {
        if e.component >= m {
            return Err(SingularError::Component { index: e.component, count: m });
        }
        if e.sign.abs() != 1 || !(e.jump == 0 || e.jump == 2) {
            return Err(SingularError::Precondition(format!("bad event {e:?}")));
        }
        out[e.component] += e.sign * e.jump;
    }
    Ok(out)
}

pub fn is_framing_preserving(delta: &[i32]) -> bool {
    delta.iter().all(|&d| d == 0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VanishingReport {
    pub sum: PowerSeries,
    pub vanishes: bool,
}

/// Alternating sum of the series invariant over all `2^k` resolutions,
/// truncated at `x^m`; it vanishes for `m < k`.
pub fn finite_type_vanishing(n: i64, m: usize, sd: &SingularDiagram) -> Result<VanishingReport, SingularError> {
    let k = sd.flat_count();
    if k == 0 || m >= k {
        return Err(SingularError::Precondition(format!("need 1 ≤ k and m < k, got k = {k}, m = {m}")));
    }
    let mut ev = Evaluator::new(series_params(n, m, Normalization::Unit)?, EvalOptions::default());
    let table = derived_invariant(&mut |d: &FramedDiagram| ev.evaluate(d), sd)?;
    let vanishes = table.alternating_sum.is_zero();
    Ok(VanishingReport { sum: table.alternating_sum, vanishes })
}
