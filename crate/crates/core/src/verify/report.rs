use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds::BoundValue;

/// Integer observations accumulated alongside pass/fail counts. Counters
/// and histogram buckets add, maxima take the larger value, so merging is
/// associative and commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Observations {
    pub counters: BTreeMap<String, u64>,
    pub maxima: BTreeMap<String, u64>,
    pub histograms: BTreeMap<String, BTreeMap<u64, u64>>,
}

impl Observations {
    pub fn count(&mut self, key: &str, by: u64) {
        *self.counters.entry(key.to_string()).or_default() += by;
    }

    pub fn max(&mut self, key: &str, value: u64) {
        let e = self.maxima.entry(key.to_string()).or_default();
        *e = (*e).max(value);
    }

    pub fn bucket(&mut self, key: &str, value: u64) {
        *self.histograms.entry(key.to_string()).or_default().entry(value).or_default() += 1;
    }

    pub fn merge(&mut self, other: Observations) {
        for (k, v) in other.counters {
            *self.counters.entry(k).or_default() += v;
        }
        for (k, v) in other.maxima {
            let e = self.maxima.entry(k).or_default();
            *e = (*e).max(v);
        }
        for (k, h) in other.histograms {
            let mine = self.histograms.entry(k).or_default();
            for (b, c) in h {
                *mine.entry(b).or_default() += c;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub graph_g6: String,
    pub witnesses: serde_json::Value,
    pub measured: u64,
    pub threshold: BoundValue,
    pub threshold_kind: String,
}

impl Counterexample {
    fn sort_key(&self) -> (String, String, u64, num_bigint::BigUint, String) {
        (
            self.graph_g6.clone(),
            self.witnesses.to_string(),
            self.measured,
            self.threshold.value.clone(),
            self.threshold_kind.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(Box<Counterexample>),
    Skipped(String),
    Inconclusive(String),
}

/// The verdict of one check on one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphResult {
    pub outcome: Outcome,
    pub hypotheses_held: bool,
    pub observations: Observations,
}

impl GraphResult {
    pub fn skipped(reason: impl Into<String>) -> Self {
        GraphResult { outcome: Outcome::Skipped(reason.into()), hypotheses_held: false, observations: Observations::default() }
    }

    pub fn inconclusive(reason: impl Into<String>, hypotheses_held: bool) -> Self {
        GraphResult {
            outcome: Outcome::Inconclusive(reason.into()),
            hypotheses_held,
            observations: Observations::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub inconclusive: usize,
}

impl Totals {
    pub fn sum(&self) -> usize {
        self.pass + self.fail + self.skipped + self.inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub corpus: String,
    pub corpus_size: usize,
    pub totals: Totals,
    pub hypotheses_satisfied: usize,
    pub counterexamples: Vec<Counterexample>,
    pub observations: Observations,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn empty(check_id: impl Into<String>, corpus: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            corpus: corpus.into(),
            corpus_size: 0,
            totals: Totals::default(),
            hypotheses_satisfied: 0,
            counterexamples: Vec::new(),
            observations: Observations::default(),
            wall_time_ms: 0,
        }
    }

    pub fn absorb(&mut self, r: GraphResult) {
        self.corpus_size += 1;
        if r.hypotheses_held {
            self.hypotheses_satisfied += 1;
        }
        match r.outcome {
            Outcome::Pass => self.totals.pass += 1,
            Outcome::Fail(cx) => {
                self.totals.fail += 1;
                self.insert_counterexample(*cx);
            }
            Outcome::Skipped(reason) => {
                self.totals.skipped += 1;
                self.observations.count(&format!("skipped: {reason}"), 1);
            }
            Outcome::Inconclusive(reason) => {
                self.totals.inconclusive += 1;
                self.observations.count(&format!("inconclusive: {reason}"), 1);
            }
        }
        self.observations.merge(r.observations);
    }

    fn insert_counterexample(&mut self, cx: Counterexample) {
        let key = cx.sort_key();
        let at = self.counterexamples.partition_point(|c| c.sort_key() <= key);
        self.counterexamples.insert(at, cx);
    }

    /// Combines two partial reports of the same check. Counterexamples stay
    /// sorted by graph, then witnesses.
    pub fn merge(&mut self, other: VerificationReport) {
        self.corpus_size += other.corpus_size;
        self.totals.pass += other.totals.pass;
        self.totals.fail += other.totals.fail;
        self.totals.skipped += other.totals.skipped;
        self.totals.inconclusive += other.totals.inconclusive;
        self.hypotheses_satisfied += other.hypotheses_satisfied;
        for cx in other.counterexamples {
            self.insert_counterexample(cx);
        }
        self.observations.merge(other.observations);
        self.wall_time_ms += other.wall_time_ms;
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialise")
    }
}
