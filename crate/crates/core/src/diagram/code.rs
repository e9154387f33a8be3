//! Relabeling-invariant codes for memoization.
//!
//! Each connected piece is encoded from every possible root half-edge by a
//! breadth-first walk of the rotation system; crossings are numbered in
//! discovery order and slots are taken relative to the slot through which
//! the crossing was discovered. The piece code is the lexicographic minimum
//! over roots. Piece codes are sorted and prefixed with the piece and
//! free-loop counts.

use std::collections::VecDeque;

use super::{crossing_of, half_edge, slot_of, FramedDiagram, SingularDiagram};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramCode(Vec<u8>);

impl DiagramCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Debug for DiagramCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DiagramCode({})", self.to_hex())
    }
}

fn piece_code(d: &FramedDiagram, flat: &[bool], piece: &[usize], root: usize) -> Vec<u32> {
    let c = d.crossing_count();
    let mut label = vec![u32::MAX; c];
    let mut offset = vec![0usize; c];
    let mut queue = VecDeque::new();
    let mut out = Vec::with_capacity(1 + 9 * piece.len());
    out.push(piece.len() as u32);
    let start = crossing_of(root);
    label[start] = 0;
    offset[start] = slot_of(root);
    queue.push_back(start);
    let mut next = 1u32;
    while let Some(x) = queue.pop_front() {
        let parity = (d.over_pairs()[x].first_slot() + offset[x]) % 2;
        let kind = if flat.get(x).copied().unwrap_or(false) { 2 + parity } else { parity };
        out.push(kind as u32);
        for r in 0..4 {
            let p = d.partners()[half_edge(x, offset[x] + r)];
            let y = crossing_of(p);
            if label[y] == u32::MAX {
                label[y] = next;
                offset[y] = slot_of(p);
                next += 1;
                queue.push_back(y);
            }
            out.push(label[y]);
            out.push(((slot_of(p) + 4 - offset[y]) % 4) as u32);
        }
    }
    out
}

fn encode(d: &FramedDiagram, flat: &[bool]) -> DiagramCode {
    let mut pieces: Vec<Vec<u32>> = d
        .pieces()
        .iter()
        .map(|piece| {
            piece
                .iter()
                .flat_map(|&c| (0..4).map(move |s| half_edge(c, s)))
                .map(|root| piece_code(d, flat, piece, root))
                .min()
                .expect("pieces are nonempty")
        })
        .collect();
    pieces.sort();
    let mut words = vec![pieces.len() as u32, d.free_loops() as u32];
    for p in pieces {
        words.extend(p);
    }
    DiagramCode(words.iter().flat_map(|w| w.to_le_bytes()).collect())
}

impl FramedDiagram {
    pub fn canonical_code(&self) -> DiagramCode {
        encode(self, &[])
    }
}

impl SingularDiagram {
    /// Like [`FramedDiagram::canonical_code`], with flat crossings marked.
    pub fn canonical_code(&self) -> DiagramCode {
        let flat: Vec<bool> = (0..self.crossing_count()).map(|c| self.is_flat(c)).collect();
        encode(self.base(), &flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_diagram, InputFormat};

    #[test]
    fn unknot_token() {
        let code = FramedDiagram::unknot().canonical_code();
        assert_eq!(code.as_bytes(), &[0, 0, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn kinks_of_opposite_sign_differ() {
        assert_ne!(FramedDiagram::kink(1).canonical_code(), FramedDiagram::kink(-1).canonical_code());
    }

    #[test]
    fn mirror_trefoils_differ() {
        let t = parse_diagram("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", InputFormat::Pd).unwrap();
        let m = (0..3).fold(t.clone(), |d, c| d.switch_crossing(c).unwrap());
        assert_ne!(t.canonical_code(), m.canonical_code());
        assert_eq!(t.canonical_code(), t.relabeled(&[1, 2, 0], &[2, 2, 1]).canonical_code());
    }

    #[test]
    fn split_order_irrelevant() {
        let k = FramedDiagram::kink(1);
        let h = parse_diagram("s1 s1", InputFormat::Braid).unwrap();
        assert_eq!(k.disjoint_union(&h).canonical_code(), h.disjoint_union(&k).canonical_code());
    }
}
