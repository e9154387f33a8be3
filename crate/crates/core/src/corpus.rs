//! The generated test corpus: a manifest plus one PD file per diagram.

use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{parse_diagram, parse_singular, DiagramError, FramedDiagram, InputFormat, KinkSide, SingularDiagram};
use crate::singular::{figure3_configuration, SingularError};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus I/O at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("{file}: {source}")]
    Diagram { file: String, source: DiagramError },
    #[error("generator: {0}")]
    Generate(#[from] SingularError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub file: String,
    pub family: String,
    pub crossings: usize,
    pub components: usize,
    /// Number of flat crossings.
    pub flat: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub seed: u64,
    pub max_crossings: usize,
    pub entries: Vec<CorpusEntry>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub manifest: Manifest,
    pub diagrams: Vec<SingularDiagram>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CorpusEntry, &SingularDiagram)> {
        self.manifest.entries.iter().zip(&self.diagrams)
    }

    /// Entries without flat crossings.
    pub fn framed(&self) -> impl Iterator<Item = (&CorpusEntry, &FramedDiagram)> {
        self.iter().filter_map(|(e, d)| d.as_framed().map(|f| (e, f)))
    }

    pub fn singular(&self) -> impl Iterator<Item = (&CorpusEntry, &SingularDiagram)> {
        self.iter().filter(|(e, _)| e.flat > 0)
    }

    pub fn write(&self, dir: &Path) -> Result<(), CorpusError> {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        for (e, d) in self.iter() {
            let path = dir.join(&e.file);
            fs::write(&path, d.to_pd()).map_err(io_err(&path))?;
        }
        let path = dir.join(MANIFEST_FILE);
        let mut json = serde_json::to_string_pretty(&self.manifest)?;
        json.push('\n');
        fs::write(&path, json).map_err(io_err(&path))
    }

    pub fn load(dir: &Path) -> Result<Self, CorpusError> {
        let path = dir.join(MANIFEST_FILE);
        let manifest: Manifest = serde_json::from_str(&fs::read_to_string(&path).map_err(io_err(&path))?)?;
        let mut diagrams = Vec::with_capacity(manifest.entries.len());
        for e in &manifest.entries {
            let path = dir.join(&e.file);
            let text = fs::read_to_string(&path).map_err(io_err(&path))?;
            let d = parse_singular(&text, InputFormat::Pd)
                .map_err(|source| CorpusError::Diagram { file: e.file.clone(), source })?;
            diagrams.push(d);
        }
        Ok(Self { manifest, diagrams })
    }
}

struct Builder {
    max_crossings: usize,
    entries: Vec<CorpusEntry>,
    diagrams: Vec<SingularDiagram>,
}

impl Builder {
    fn push(&mut self, id: String, family: &str, d: SingularDiagram) {
        if d.crossing_count() > self.max_crossings || self.entries.iter().any(|e| e.id == id) {
            return;
        }
        // Stored in the form the PD file reparses to.
        let d = parse_singular(&d.to_pd(), InputFormat::Pd).expect("serialized diagrams reparse");
        self.entries.push(CorpusEntry {
            file: format!("{id}.pd"),
            id,
            family: family.to_string(),
            crossings: d.crossing_count(),
            components: d.component_count(),
            flat: d.flat_count(),
        });
        self.diagrams.push(d);
    }

    fn push_framed(&mut self, id: String, family: &str, d: FramedDiagram) {
        self.push(id, family, SingularDiagram::from_framed(d));
    }
}

fn braid(word: &str) -> FramedDiagram {
    parse_diagram(word, InputFormat::Braid).expect("generator braid words are well formed")
}

fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> String {
    let strands = rng.gen_range(2..=4usize);
    let len = rng.gen_range(3..=max_len.max(3));
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands);
            if rng.gen_bool(0.5) {
                format!("s{g}")
            } else {
                format!("s{g}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

const NAMED: [(&str, &str); 6] = [
    ("figure-eight", "s1 s2^-1 s1 s2^-1"),
    ("borromean", "s1 s2^-1 s1 s2^-1 s1 s2^-1"),
    ("granny", "s1 s1 s1 s2 s2 s2"),
    ("square", "s1 s1 s1 s2^-1 s2^-1 s2^-1"),
    ("torus-3-4", "s1 s2 s1 s2 s1 s2 s1 s2"),
    ("whitehead-like", "s1 s1 s2^-1 s1 s2^-1"),
];

const RANDOM_BRAIDS: usize = 30;

/// Flattenings per flat-point count `k = 1..=4`.
const FLATTENINGS: [usize; 4] = [4, 4, 10, 4];

/// Deterministic in `(seed, max_crossings)`.
pub fn generate(seed: u64, max_crossings: usize) -> Result<Corpus, CorpusError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder { max_crossings, entries: Vec::new(), diagrams: Vec::new() };

    b.push_framed("unknot".into(), "unlink", FramedDiagram::unknot());
    b.push_framed("unlink-2".into(), "unlink", FramedDiagram::unlink(2));
    for k in 1..=6 {
        for (sign, exp) in [("p", ""), ("n", "^-1")] {
            let word = vec![format!("s1{exp}"); k].join(" ");
            b.push_framed(format!("torus-{sign}{k}"), "torus", braid(&word));
        }
    }

    for len in 1..=3 {
        for bits in 0..1u32 << len {
            let signs: Vec<i32> = (0..len).map(|j| if bits >> j & 1 == 0 { 1 } else { -1 }).collect();
            let mut d = FramedDiagram::unknot();
            let mut arc = None;
            for &s in &signs {
                let (next, _, exit) = d.add_kink_at(arc, s, KinkSide::Left).map_err(SingularError::from)?;
                d = next;
                arc = Some(exit);
            }
            let tag: String = signs.iter().map(|&s| if s > 0 { 'r' } else { 'l' }).collect();
            b.push_framed(format!("kinks-{tag}"), "kinks", d);
        }
    }

    for (name, word) in NAMED {
        b.push_framed(name.into(), "named", braid(word));
    }
    b.push_framed(
        "trefoil-pd".into(),
        "named",
        parse_diagram("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", InputFormat::Pd).expect("trefoil PD"),
    );

    for i in 0..RANDOM_BRAIDS {
        let word = random_word(&mut rng, max_crossings);
        b.push_framed(format!("braid-{i:02}"), "random-braid", braid(&word));
    }

    b.push("flat-kink".into(), "flat", SingularDiagram::with_flat(FramedDiagram::kink(1), &[0]).map_err(SingularError::from)?);
    let framed: Vec<FramedDiagram> = b.diagrams.iter().filter_map(|d| d.as_framed().cloned()).collect();
    for (k, &count) in FLATTENINGS.iter().enumerate() {
        let k = k + 1;
        let pool: Vec<&FramedDiagram> = framed.iter().filter(|d| d.crossing_count() >= k).collect();
        for i in 0..count {
            let d = pool.choose(&mut rng).expect("pool is non-empty");
            let mut crossings: Vec<usize> = (0..d.crossing_count()).collect();
            crossings.shuffle(&mut rng);
            crossings.truncate(k);
            crossings.sort_unstable();
            b.push(format!("flat{k}-{i:02}"), "flat", SingularDiagram::with_flat((*d).clone(), &crossings).map_err(SingularError::from)?);
        }
    }

    let trefoil = braid("s1 s1 s1");
    for (base_name, base, arc) in [("unknot", FramedDiagram::unknot(), None), ("trefoil", trefoil, Some(0))] {
        for (tag, sides) in [("ll", [KinkSide::Left, KinkSide::Left]), ("lr", [KinkSide::Left, KinkSide::Right])] {
            let (sd, _) = figure3_configuration(&base, arc, sides)?;
            b.push(format!("fig3-{base_name}-{tag}"), "figure3", sd);
        }
    }

    Ok(Corpus { manifest: Manifest { seed, max_crossings, entries: b.entries }, diagrams: b.diagrams })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_and_large_enough() {
        let a = generate(42, 8).unwrap();
        let b = generate(42, 8).unwrap();
        assert_eq!(a.manifest, b.manifest);
        assert_eq!(a.diagrams, b.diagrams);
        assert!(a.len() >= 50, "{}", a.len());
        assert!(a.iter().all(|(e, d)| e.crossings <= 8 && d.crossing_count() == e.crossings));
        assert!(generate(7, 8).unwrap().diagrams != a.diagrams);
    }

    #[test]
    fn entries_reparse() {
        let c = generate(42, 8).unwrap();
        for (e, d) in c.iter() {
            let back = parse_singular(&d.to_pd(), InputFormat::Pd).unwrap();
            assert_eq!(back.canonical_code(), d.canonical_code(), "{}", e.id);
            assert_eq!(back.to_pd(), d.to_pd(), "{}", e.id);
        }
    }

    #[test]
    fn families_present() {
        let c = generate(42, 8).unwrap();
        for fam in ["torus", "kinks", "named", "random-braid", "flat", "figure3"] {
            assert!(c.manifest.entries.iter().any(|e| e.family == fam), "{fam}");
        }
        for k in 1..=4 {
            assert!(c.singular().any(|(e, _)| e.flat == k), "k = {k}");
        }
    }
}
