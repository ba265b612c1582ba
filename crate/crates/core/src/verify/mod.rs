//! Corpus-level verification of the structural lemmas and the cited
//! binding functions.
//!
//! Each check tests its hypotheses first; a graph that fails them is
//! skipped, never counted against the conclusion. Any violation is
//! re-derived from the graph6 text before it is reported.

mod checks;
mod ramsey;
mod report;

pub use checks::{verify_graph, Prepared};
pub use ramsey::{KnownRamseyTable, RamseyThreshold};
pub use report::{Counterexample, GraphResult, Observations, Outcome, Totals, VerificationReport};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::registry_lookup;
use crate::corpus::Corpus;
use crate::structures::{BindingTable, EnumerationCap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("bad check `{check}`: {reason}")]
    Check { check: String, reason: String },
    #[error("cannot build a pool of {0} threads")]
    Pool(usize),
}

/// A named verifier with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    /// Max degree of the far layers of every `(p, t)`-balloon is below `R(t, omega)`.
    BalloonDegreeLemma { p: usize, t: usize },
    /// No `(p, t)`-balloon has value `phi(t, omega) + 2` or more.
    BalloonValueCorollary { p: usize, t: usize },
    /// Balloon values at most `dt + 2` in two-arm-star-free graphs.
    SStarBalloonLemma { p: usize, t: usize, d: usize },
    /// Every `t`-biclique value is below the biclique bound.
    BicliqueBoundLemma { p: usize, t: usize },
    ChiTheoremBPlus { p: usize, t: usize, d: usize },
    ChiTheoremSStar { p: usize, t: usize, d: usize },
    ChiTheoremK3t { p: usize, t: usize },
    /// Structural claims about a certified `L_i` member.
    LStructure { i: usize, f: BindingTable },
    /// A registered binding function on its stated class.
    Registered { name: String },
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::BalloonDegreeLemma { .. } => "balloon_degree_lemma",
            Check::BalloonValueCorollary { .. } => "balloon_value_corollary",
            Check::SStarBalloonLemma { .. } => "s_star_balloon_lemma",
            Check::BicliqueBoundLemma { .. } => "biclique_bound_lemma",
            Check::ChiTheoremBPlus { .. } => "chi_theorem_bplus",
            Check::ChiTheoremSStar { .. } => "chi_theorem_sstar",
            Check::ChiTheoremK3t { .. } => "chi_theorem_k3t",
            Check::LStructure { .. } => "l_structure",
            Check::Registered { .. } => "registered",
        }
    }

    /// Names accepted by the parser, with default parameters.
    pub fn catalogue() -> Vec<Check> {
        [
            "balloon_degree_lemma",
            "balloon_value_corollary",
            "s_star_balloon_lemma",
            "biclique_bound_lemma",
            "chi_theorem_bplus",
            "chi_theorem_sstar",
            "chi_theorem_k3t",
            "l_structure",
        ]
        .iter()
        .map(|s| s.parse().expect("defaults parse"))
        .chain(crate::bounds::registry().iter().map(|e| Check::Registered { name: e.name.to_string() }))
        .collect()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        match self {
            Check::BalloonDegreeLemma { p, t }
            | Check::BalloonValueCorollary { p, t }
            | Check::BicliqueBoundLemma { p, t }
            | Check::ChiTheoremK3t { p, t } => write!(f, "{name}:p={p},t={t}"),
            Check::SStarBalloonLemma { p, t, d } | Check::ChiTheoremBPlus { p, t, d } | Check::ChiTheoremSStar { p, t, d } => {
                write!(f, "{name}:p={p},t={t},d={d}")
            }
            Check::LStructure { i, f: table } => write!(f, "{name}:i={i},f={}", table.to_string().replace(',', ";")),
            Check::Registered { name: bound } => write!(f, "registered:{bound}"),
        }
    }
}

impl FromStr for Check {
    type Err = VerifyError;

    /// `name` or `name:key=value,...`; omitted parameters take their
    /// defaults. Registered bounds are `registered:<bound>` or just the
    /// bound's name. Binding tables use `;` between pairs.
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        let err = |reason: String| VerifyError::Check { check: s.to_string(), reason };
        let (name, params) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        if name == "registered" {
            registry_lookup(params).map_err(|e| err(e.to_string()))?;
            return Ok(Check::Registered { name: params.to_string() });
        }
        if registry_lookup(name).is_ok() && params.is_empty() {
            return Ok(Check::Registered { name: name.to_string() });
        }
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for part in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| err(format!("expected key=value, got `{part}`")))?;
            kv.insert(k.trim(), v.trim());
        }
        let mut int = |key: &str, default: usize| -> Result<usize, VerifyError> {
            match kv.remove(key) {
                Some(v) => v.parse().map_err(|_| err(format!("`{key}` must be an integer"))),
                None => Ok(default),
            }
        };
        let check = match name {
            "balloon_degree_lemma" => Check::BalloonDegreeLemma { p: int("p", 2)?, t: int("t", 3)? },
            "balloon_value_corollary" => Check::BalloonValueCorollary { p: int("p", 2)?, t: int("t", 3)? },
            "s_star_balloon_lemma" => Check::SStarBalloonLemma { p: int("p", 1)?, t: int("t", 5)?, d: int("d", 1)? },
            "biclique_bound_lemma" => Check::BicliqueBoundLemma { p: int("p", 2)?, t: int("t", 3)? },
            "chi_theorem_bplus" => Check::ChiTheoremBPlus { p: int("p", 2)?, t: int("t", 3)?, d: int("d", 2)? },
            "chi_theorem_sstar" => Check::ChiTheoremSStar { p: int("p", 1)?, t: int("t", 5)?, d: int("d", 1)? },
            "chi_theorem_k3t" => Check::ChiTheoremK3t { p: int("p", 2)?, t: int("t", 3)? },
            "l_structure" => {
                let i = int("i", 2)?;
                let f = match kv.remove("f") {
                    Some(v) => v.parse().map_err(|e: crate::structures::StructureError| err(e.to_string()))?,
                    None => BindingTable::Identity,
                };
                Check::LStructure { i, f }
            }
            other => return Err(err(format!("unknown check `{other}`"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(err(format!("unknown parameter `{k}`")));
        }
        check.validate().map_err(err)?;
        Ok(check)
    }
}

impl Check {
    fn validate(&self) -> Result<(), String> {
        match *self {
            Check::BalloonDegreeLemma { p, t } | Check::BalloonValueCorollary { p, t } if p < 2 || t < 3 => {
                Err("needs p >= 2 and t >= 3".into())
            }
            Check::BicliqueBoundLemma { p, t } | Check::ChiTheoremK3t { p, t } if p < 2 || t < 3 => {
                Err("needs p >= 2 and t >= 3".into())
            }
            Check::ChiTheoremBPlus { p, t, d } if p < 2 || t < 3 || d < 1 => Err("needs p >= 2, t >= 3, d >= 1".into()),
            Check::SStarBalloonLemma { p, t, d } | Check::ChiTheoremSStar { p, t, d } if p < 1 || t < 5 || d < 1 => {
                Err("needs p >= 1, t >= 5, d >= 1".into())
            }
            Check::LStructure { i, .. } if i < 2 => Err("needs i >= 2".into()),
            _ => Ok(()),
        }
    }
}

/// Runs every check over `corpus` on a pool of `jobs` threads. The
/// reports do not depend on `jobs` except for `wall_time_ms`.
pub fn run_suite(
    corpus: &Corpus,
    checks: &[Check],
    jobs: usize,
    cap: &EnumerationCap,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let jobs = jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|_| VerifyError::Pool(jobs))?;
    let mut reports = Vec::with_capacity(checks.len());
    for check in checks {
        let started = Instant::now();
        let prepared = Prepared::new(check.clone(), *cap).map_err(|reason| VerifyError::Check { check: check.to_string(), reason })?;
        let results: Vec<GraphResult> = pool.install(|| {
            corpus
                .items
                .par_iter()
                .map(|item| match item {
                    Ok(g) => verify_graph(&prepared, g),
                    Err(e) => GraphResult::inconclusive(format!("unreadable corpus item ({e})"), false),
                })
                .collect()
        });
        let mut report = VerificationReport::empty(check.to_string(), corpus.description.clone());
        for r in results {
            report.absorb(r);
        }
        report.wall_time_ms = started.elapsed().as_millis() as u64;
        reports.push(report);
    }
    Ok(reports)
}
