//! Batch property suites over a corpus, with a stable JSON report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::diagram::FramedDiagram;
use crate::oracle::specialization_check;
use crate::ring::substitute_series;
use crate::singular::finite_type_vanishing;
use crate::skein::{
    convention_audit, laurent_params, series_params, AuditReport, EvalOptions, Evaluator, Normalization, RingSelector,
    SkeinError, DEFAULT_NODE_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Invariance,
    Oracle,
    FiniteType,
    Conventions,
    CrossRing,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Invariance, Suite::Oracle, Suite::FiniteType, Suite::Conventions, Suite::CrossRing];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Invariance => "invariance",
            Suite::Oracle => "oracle",
            Suite::FiniteType => "finite-type",
            Suite::Conventions => "conventions",
            Suite::CrossRing => "cross-ring",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?} (expected one of invariance, oracle, finite-type, conventions, cross-ring)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    pub detail: String,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            writeln!(f, "{} {} ({} ms) {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.ms, c.detail)?;
        }
        let failed = self.cases.iter().filter(|c| !c.pass).count();
        write!(f, "suite {}: {} cases, {} failed", self.suite, self.cases.len(), failed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub ring: RingSelector,
    pub n: i64,
    pub order: usize,
    pub normalization: Normalization,
    pub seed: u64,
    pub node_budget: u64,
    /// Perturbations per diagram in the invariance suite.
    pub perturbations: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            ring: RingSelector::Laurent,
            n: 0,
            order: 8,
            normalization: Normalization::Unit,
            seed: 42,
            node_budget: DEFAULT_NODE_BUDGET,
            perturbations: 3,
        }
    }
}

impl VerifyConfig {
    fn options(&self) -> EvalOptions {
        EvalOptions { node_budget: self.node_budget, ..EvalOptions::default() }
    }
}

fn timed(id: impl Into<String>, f: impl FnOnce() -> Result<(bool, String), String>) -> CaseResult {
    let start = Instant::now();
    let (pass, detail) = f().unwrap_or_else(|e| (false, e));
    CaseResult { id: id.into(), pass, detail, ms: start.elapsed().as_millis() as u64 }
}

/// Runs one suite; individual failures are recorded and the run continues.
pub fn run_suite(suite: Suite, corpus: &Corpus, cfg: &VerifyConfig) -> SuiteReport {
    let cases = match suite {
        Suite::Invariance => invariance(corpus, cfg),
        Suite::Oracle => corpus
            .framed()
            .map(|(e, d)| {
                timed(&e.id, || {
                    let ok = specialization_check(d).map_err(|e| e.to_string())?;
                    Ok((ok, if ok { "specialization equals state sum".into() } else { "specialization differs".into() }))
                })
            })
            .collect(),
        Suite::FiniteType => finite_type(corpus, cfg),
        Suite::Conventions => conventions(cfg),
        Suite::CrossRing => cross_ring(corpus, cfg),
    };
    let pass = cases.iter().all(|c| c.pass);
    SuiteReport { suite: suite.name().into(), cases, pass }
}

fn invariance(corpus: &Corpus, cfg: &VerifyConfig) -> Vec<CaseResult> {
    let laurent = laurent_params(cfg.normalization);
    let series = series_params(cfg.n, cfg.order, cfg.normalization);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for (e, d) in corpus.framed() {
        let mut variants: Vec<FramedDiagram> = Vec::new();
        for _ in 0..cfg.perturbations {
            let (p, _) = d.random_perturbation(&mut rng);
            variants.push(p);
        }
        out.push(timed(&e.id, || {
            let mut lev = Evaluator::new(laurent.clone(), cfg.options());
            let base = lev.evaluate(d).map_err(|e| e.to_string())?;
            let series = series.clone().map_err(|e| e.to_string())?;
            let mut sev = Evaluator::new(series, cfg.options());
            let sbase = sev.evaluate(d).map_err(|e| e.to_string())?;
            for (i, p) in variants.iter().enumerate() {
                if lev.evaluate(p).map_err(|e| e.to_string())? != base {
                    return Ok((false, format!("perturbation {i} changes the Laurent value")));
                }
                if sev.evaluate(p).map_err(|e| e.to_string())? != sbase {
                    return Ok((false, format!("perturbation {i} changes the series value")));
                }
            }
            Ok((true, format!("{} perturbations agree in both rings", variants.len())))
        }));
    }
    out
}

fn finite_type(corpus: &Corpus, cfg: &VerifyConfig) -> Vec<CaseResult> {
    corpus
        .singular()
        .filter(|(e, _)| e.flat <= 4)
        .map(|(e, sd)| {
            let m = cfg.order.min(e.flat - 1);
            timed(&e.id, || {
                let r = finite_type_vanishing(cfg.n, m, sd).map_err(|e| e.to_string())?;
                let detail = if r.vanishes {
                    format!("k = {}, vanishes through x^{m}", e.flat)
                } else {
                    format!("k = {}, alternating sum {} does not vanish through x^{m}", e.flat, r.sum)
                };
                Ok((r.vanishes, detail))
            })
        })
        .collect()
}

fn audit_cases(report: AuditReport, start: Instant) -> Vec<CaseResult> {
    let ms = start.elapsed().as_millis() as u64;
    report.checks.into_iter().map(|c| CaseResult { id: c.name.into(), pass: c.pass, detail: c.detail, ms }).collect()
}

fn conventions(cfg: &VerifyConfig) -> Vec<CaseResult> {
    let start = Instant::now();
    match cfg.ring {
        RingSelector::Laurent => audit_cases(convention_audit(&laurent_params(cfg.normalization)), start),
        RingSelector::Series { n, order } => match series_params(n, order, cfg.normalization) {
            Ok(p) => audit_cases(convention_audit(&p), start),
            Err(e) => vec![CaseResult {
                id: "series parameters".into(),
                pass: false,
                detail: e.to_string(),
                ms: start.elapsed().as_millis() as u64,
            }],
        },
    }
}

fn cross_ring(corpus: &Corpus, cfg: &VerifyConfig) -> Vec<CaseResult> {
    corpus
        .framed()
        .map(|(e, d)| {
            timed(&e.id, || {
                let lp = Evaluator::new(laurent_params(Normalization::Unit), cfg.options())
                    .evaluate(d)
                    .map_err(|e| e.to_string())?;
                for n in 0..=2 {
                    let substituted = match substitute_series(&lp, n, cfg.order) {
                        Ok(s) => s,
                        Err(err) => return Ok((false, format!("n = {n}: {err}"))),
                    };
                    let params = series_params(n, cfg.order, Normalization::Unit).map_err(|e| e.to_string())?;
                    let direct = Evaluator::new(params, cfg.options()).evaluate(d).map_err(|e: SkeinError| e.to_string())?;
                    if substituted != direct {
                        return Ok((false, format!("n = {n}: substitution {substituted} differs from series {direct}")));
                    }
                }
                Ok((true, format!("n = 0, 1, 2 agree to order {}", cfg.order)))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::generate;

    fn small_corpus() -> Corpus {
        generate(42, 4).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn suites_pass_on_small_corpus() {
        let c = small_corpus();
        let cfg = VerifyConfig { order: 4, ..VerifyConfig::default() };
        for s in Suite::ALL {
            let r = run_suite(s, &c, &cfg);
            assert!(r.pass, "{r}");
            assert!(!r.cases.is_empty(), "{s}");
        }
    }

    #[test]
    fn prop42_conventions_fail() {
        let cfg = VerifyConfig { normalization: Normalization::Prop42, ..VerifyConfig::default() };
        let r = run_suite(Suite::Conventions, &small_corpus(), &cfg);
        assert!(!r.pass);
        assert!(r.cases.iter().any(|c| !c.pass && c.detail.contains("consistency identity")));
    }

    #[test]
    fn report_json_schema() {
        let r = SuiteReport {
            suite: "oracle".into(),
            cases: vec![CaseResult { id: "unknot".into(), pass: true, detail: "ok".into(), ms: 0 }],
            pass: true,
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["suite"], "oracle");
        assert_eq!(v["cases"][0]["id"], "unknot");
        assert_eq!(v["cases"][0]["ms"], 0);
        assert_eq!(v["pass"], true);
    }
}
