//! Graph corpora: exhaustive and random generation with class filters,
//! plus file input in graph6 or edge-list form.

mod canon;
mod io;

pub use canon::{canonical_form, canonical_key, canonical_labelling, MAX_CANONICAL};
pub use io::{read_edge_lists, read_graph6, write_edge_list, write_graph6, DecodeError};

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::patterns::{Pattern, PatternSpec};
use crate::structures::in_class_h;

/// Largest order for exhaustive generation up to isomorphism.
pub const MAX_EXHAUSTIVE_DEDUP: usize = 10;
/// Largest order for exhaustive generation of labelled graphs.
pub const MAX_EXHAUSTIVE_LABELLED: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("bad corpus spec `{spec}`: {reason}")]
    Spec { spec: String, reason: String },
    #[error("corpus limit exceeded: {0}")]
    Limit(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    Edges,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "g6" | "graph6" => Ok(GraphFormat::Graph6),
            "edges" | "edgelist" => Ok(GraphFormat::Edges),
            other => Err(format!("unknown format `{other}` (expected g6 or edges)")),
        }
    }
}

/// Parses every graph in `text`; a malformed graph6 line or edge-list
/// block becomes an `Err` item rather than aborting the read.
pub fn parse_graphs(text: &str, format: GraphFormat) -> Vec<Result<Graph, String>> {
    match format {
        GraphFormat::Graph6 => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| read_graph6(l).map_err(|e| e.to_string()))
            .collect(),
        GraphFormat::Edges => read_edge_lists(text).into_iter().map(|r| r.map_err(|e| e.to_string())).collect(),
    }
}

/// A hereditary membership test applied during generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filter {
    /// `C4`-free and `p`-flag-free.
    InH(usize),
    /// Free of a pattern, as an induced subgraph or as any subgraph.
    Free { pattern: Pattern, induced: bool },
}

impl Filter {
    pub fn accepts(&self, g: &Graph) -> bool {
        match self {
            Filter::InH(p) => in_class_h(g, *p).map(|c| c.free).unwrap_or(false),
            Filter::Free { pattern, induced } => pattern.find_in(g, *induced).is_none(),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::InH(p) => write!(f, "H:p={p}"),
            Filter::Free { pattern, induced: true } => write!(f, "free:{}", pattern.spec),
            Filter::Free { pattern, induced: false } => write!(f, "nosub:{}", pattern.spec),
        }
    }
}

impl FromStr for Filter {
    type Err = String;

    /// `H:p=<p>`, `free:<pattern>` (induced) or `nosub:<pattern>`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("H:") {
            let p = rest
                .strip_prefix("p=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| format!("expected H:p=<int>, got `{s}`"))?;
            if p < 1 {
                return Err("H needs p >= 1".into());
            }
            return Ok(Filter::InH(p));
        }
        let (induced, rest) = if let Some(r) = s.strip_prefix("free:") {
            (true, r)
        } else if let Some(r) = s.strip_prefix("nosub:") {
            (false, r)
        } else {
            return Err(format!("unknown filter `{s}`"));
        };
        let spec: PatternSpec = rest.parse().map_err(|e: crate::patterns::PatternError| e.to_string())?;
        let pattern = Pattern::new(spec).map_err(|e| e.to_string())?;
        Ok(Filter::Free { pattern, induced })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CorpusMode {
    /// Every graph with `n_min..=n_max` vertices.
    Exhaustive { n_min: usize, n_max: usize },
    /// `count` samples of `G(n, edge_prob)` from a seeded ChaCha8 stream.
    Random { n: usize, edge_prob: f64, count: usize, seed: u64 },
    File { path: PathBuf, format: GraphFormat },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub mode: CorpusMode,
    pub filters: Vec<Filter>,
    /// One graph per isomorphism class.
    pub dedup: bool,
}

impl CorpusSpec {
    pub fn exhaustive(n_max: usize) -> Self {
        CorpusSpec { mode: CorpusMode::Exhaustive { n_min: 1, n_max }, filters: Vec::new(), dedup: true }
    }

    pub fn with_filters(mut self, filters: Vec<Filter>) -> Self {
        self.filters = filters;
        self
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        self.filters.iter().all(|f| f.accepts(g))
    }

    /// Parses a spec, using `default_seed` for random corpora without an
    /// explicit `seed=`.
    ///
    /// ```text
    /// exhaustive:n=8
    /// exhaustive:n=4..6,nodedup,filters=H:p=2+free:bplus:p=2,k=2,t=3
    /// random:n=10,p=0.5,count=100,seed=7,dedup
    /// file:path=graphs.g6,format=g6
    /// ```
    ///
    /// `filters=` must come last; its value is a `+`-separated list.
    pub fn parse_with_seed(s: &str, default_seed: u64) -> Result<Self, CorpusError> {
        let err = |reason: String| CorpusError::Spec { spec: s.to_string(), reason };
        let (head, filter_text) = match s.find("filters=") {
            Some(i) => (s[..i].trim_end_matches(','), Some(&s[i + "filters=".len()..])),
            None => (s, None),
        };
        let filters = match filter_text {
            Some(t) => t.split('+').map(str::parse).collect::<Result<Vec<Filter>, _>>().map_err(err)?,
            None => Vec::new(),
        };
        let (mode_name, opts) = head.split_once(':').unwrap_or((head, ""));
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        let mut flags = Vec::new();
        for opt in opts.split(',').map(str::trim).filter(|o| !o.is_empty()) {
            match opt.split_once('=') {
                Some((k, v)) => {
                    kv.insert(k.trim(), v.trim());
                }
                None => flags.push(opt),
            }
        }
        let mut dedup = None;
        for flag in flags {
            match flag {
                "dedup" => dedup = Some(true),
                "nodedup" => dedup = Some(false),
                other => return Err(err(format!("unknown option `{other}`"))),
            }
        }
        let mut take = |key: &str| kv.remove(key);
        let int = |key: &str, v: Option<&str>| -> Result<Option<usize>, CorpusError> {
            v.map(|v| v.parse().map_err(|_| err(format!("`{key}` must be an integer")))).transpose()
        };
        let mode = match mode_name {
            "exhaustive" => {
                let n = take("n").ok_or_else(|| err("missing n".into()))?;
                let (n_min, n_max) = match n.split_once("..") {
                    Some((a, b)) => (int("n", Some(a))?.unwrap(), int("n", Some(b.trim_start_matches('=')))?.unwrap()),
                    None => (1, int("n", Some(n))?.unwrap()),
                };
                if n_min < 1 || n_min > n_max {
                    return Err(err("need 1 <= n_min <= n_max".into()));
                }
                CorpusMode::Exhaustive { n_min, n_max }
            }
            "random" => {
                let n = int("n", take("n"))?.ok_or_else(|| err("missing n".into()))?;
                let count = int("count", take("count"))?.ok_or_else(|| err("missing count".into()))?;
                let edge_prob: f64 = take("p")
                    .ok_or_else(|| err("missing p".into()))?
                    .parse()
                    .map_err(|_| err("`p` must be a number".into()))?;
                if !(0.0..=1.0).contains(&edge_prob) {
                    return Err(err("`p` must lie in [0, 1]".into()));
                }
                let seed = match take("seed") {
                    Some(v) => v.parse().map_err(|_| err("`seed` must be an integer".into()))?,
                    None => default_seed,
                };
                CorpusMode::Random { n, edge_prob, count, seed }
            }
            "file" => {
                let path = take("path").ok_or_else(|| err("missing path".into()))?;
                let format = match take("format") {
                    Some(f) => f.parse().map_err(err)?,
                    None if path.ends_with(".g6") => GraphFormat::Graph6,
                    None => GraphFormat::Edges,
                };
                CorpusMode::File { path: PathBuf::from(path), format }
            }
            other => return Err(err(format!("unknown corpus mode `{other}`"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(err(format!("unknown key `{k}`")));
        }
        let dedup = dedup.unwrap_or(matches!(mode, CorpusMode::Exhaustive { .. }));
        Ok(CorpusSpec { mode, filters, dedup })
    }
}

impl FromStr for CorpusSpec {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, CorpusError> {
        CorpusSpec::parse_with_seed(s, 0)
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mode {
            CorpusMode::Exhaustive { n_min: 1, n_max } => write!(f, "exhaustive:n={n_max}")?,
            CorpusMode::Exhaustive { n_min, n_max } => write!(f, "exhaustive:n={n_min}..{n_max}")?,
            CorpusMode::Random { n, edge_prob, count, seed } => {
                write!(f, "random:n={n},p={edge_prob},count={count},seed={seed}")?
            }
            CorpusMode::File { path, format } => {
                let fmt_name = if *format == GraphFormat::Graph6 { "g6" } else { "edges" };
                write!(f, "file:path={},format={fmt_name}", path.display())?
            }
        }
        let default_dedup = matches!(self.mode, CorpusMode::Exhaustive { .. });
        if self.dedup != default_dedup {
            f.write_str(if self.dedup { ",dedup" } else { ",nodedup" })?;
        }
        if !self.filters.is_empty() {
            let parts: Vec<String> = self.filters.iter().map(Filter::to_string).collect();
            write!(f, ",filters={}", parts.join("+"))?;
        }
        Ok(())
    }
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    Graph::new(n, pairs.enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| e)).expect("valid pairs")
}

/// One representative per isomorphism class of filtered graphs on
/// `1..=n_max` vertices, grouped by order and sorted by canonical key.
///
/// Every graph on `k` vertices is a one-vertex extension of a graph on
/// `k - 1` vertices, and the filters are hereditary, so extending every
/// accepted class representative of the previous level reaches every
/// accepted class of the next.
fn exhaustive_classes(n_max: usize, spec: &CorpusSpec) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    let k1 = Graph::empty(1).expect("one vertex");
    let mut current: Vec<Graph> = if spec.accepts(&k1) { vec![k1] } else { Vec::new() };
    levels.push(current.clone());
    for k in 2..=n_max {
        let candidates: BTreeMap<u128, Graph> = current
            .par_iter()
            .map(|rep| {
                let mut local = BTreeMap::new();
                for mask in 0u64..1 << (k - 1) {
                    let h = rep.with_vertex(VertexSet::from_bits(mask)).expect("within limits");
                    let (key, order) = canonical_labelling(&h);
                    local.entry(key).or_insert_with(|| {
                        let mut perm = vec![0; k];
                        for (i, &v) in order.iter().enumerate() {
                            perm[v] = i;
                        }
                        h.permuted(&perm)
                    });
                }
                local
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (key, g) in b {
                    a.entry(key).or_insert(g);
                }
                a
            });
        let graphs: Vec<Graph> = candidates.into_values().collect();
        let keep: Vec<bool> = graphs.par_iter().map(|g| spec.accepts(g)).collect();
        current = graphs.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect();
        levels.push(current.clone());
    }
    levels
}

/// A materialised corpus. File corpora may contain unreadable items.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub description: String,
    pub items: Vec<Result<Graph, String>>,
}

impl Corpus {
    pub fn from_graphs(description: impl Into<String>, graphs: Vec<Graph>) -> Self {
        Corpus { description: description.into(), items: graphs.into_iter().map(Ok).collect() }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.items.iter().filter_map(|r| r.as_ref().ok())
    }
}

/// Generates or reads the corpus described by `spec`, applying its filters
/// and, when requested, keeping one graph per isomorphism class.
pub fn enumerate_graphs(spec: &CorpusSpec) -> Result<Corpus, CorpusError> {
    let mut items: Vec<Result<Graph, String>> = Vec::new();
    match &spec.mode {
        &CorpusMode::Exhaustive { n_min, n_max } if spec.dedup => {
            if n_max > MAX_EXHAUSTIVE_DEDUP {
                return Err(CorpusError::Limit(format!("exhaustive generation is limited to n <= {MAX_EXHAUSTIVE_DEDUP}")));
            }
            for level in exhaustive_classes(n_max, spec).into_iter().skip(n_min - 1) {
                items.extend(level.into_iter().map(Ok));
            }
        }
        &CorpusMode::Exhaustive { n_min, n_max } => {
            if n_max > MAX_EXHAUSTIVE_LABELLED {
                return Err(CorpusError::Limit(format!(
                    "labelled exhaustive generation is limited to n <= {MAX_EXHAUSTIVE_LABELLED}"
                )));
            }
            for n in n_min..=n_max {
                let bits = n * (n - 1) / 2;
                let level: Vec<Graph> = (0u64..1 << bits)
                    .into_par_iter()
                    .map(|mask| graph_from_mask(n, mask))
                    .filter(|g| spec.accepts(g))
                    .collect();
                items.extend(level.into_iter().map(Ok));
            }
        }
        &CorpusMode::Random { n, edge_prob, count, seed } => {
            if spec.dedup && n > MAX_CANONICAL {
                return Err(CorpusError::Limit(format!("isomorphism dedup is limited to n <= {MAX_CANONICAL}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = std::collections::HashSet::new();
            for _ in 0..count {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(edge_prob) {
                            edges.push((u, v));
                        }
                    }
                }
                let g = Graph::new(n, edges).map_err(|e| CorpusError::Limit(e.to_string()))?;
                if spec.dedup && !seen.insert(canonical_key(&g)) {
                    continue;
                }
                if spec.accepts(&g) {
                    items.push(Ok(g));
                }
            }
        }
        CorpusMode::File { path, format } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CorpusError::Io { path: path.display().to_string(), reason: e.to_string() })?;
            let mut seen = std::collections::HashSet::new();
            for item in parse_graphs(&text, *format) {
                match item {
                    Ok(g) => {
                        if spec.dedup && g.n() <= MAX_CANONICAL && !seen.insert((g.n(), canonical_key(&g))) {
                            continue;
                        }
                        if spec.accepts(&g) {
                            items.push(Ok(g));
                        }
                    }
                    Err(e) => items.push(Err(e)),
                }
            }
        }
    }
    Ok(Corpus { description: spec.to_string(), items })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str) -> usize {
        enumerate_graphs(&s.parse().unwrap()).unwrap().len()
    }

    #[test]
    fn isomorphism_class_counts() {
        let expected = [1, 2, 4, 11, 34, 156, 1044];
        for (n, &c) in expected.iter().enumerate() {
            let n = n + 1;
            assert_eq!(count(&format!("exhaustive:n={n}..{n}")), c, "n={n}");
        }
        assert_eq!(count("exhaustive:n=4"), 1 + 2 + 4 + 11);
        assert_eq!(count("exhaustive:n=3..3"), 4);
    }

    #[test]
    fn labelled_counts() {
        assert_eq!(count("exhaustive:n=4..4,nodedup"), 64);
        assert_eq!(count("exhaustive:n=3,nodedup"), 1 + 2 + 8);
        assert!(matches!(enumerate_graphs(&"exhaustive:n=8,nodedup".parse().unwrap()), Err(CorpusError::Limit(_))));
        assert!(matches!(enumerate_graphs(&"exhaustive:n=11".parse().unwrap()), Err(CorpusError::Limit(_))));
    }

    #[test]
    fn filtered_counts() {
        // Triangle-free graphs on 5 vertices: 14 classes.
        assert_eq!(count("exhaustive:n=5..5,filters=free:K3"), 14);
        // P4-free (cographs) on 1..=5 vertices: 1, 2, 4, 10, 24.
        assert_eq!(count("exhaustive:n=5..5,filters=free:P4"), 24);
        assert_eq!(count("exhaustive:n=4..4,filters=free:P4"), 10);
        // Labelled and unlabelled filtering agree up to isomorphism.
        let labelled = enumerate_graphs(&"exhaustive:n=5..5,nodedup,filters=free:C4".parse().unwrap()).unwrap();
        let classes: std::collections::HashSet<u128> = labelled.graphs().map(canonical_key).collect();
        assert_eq!(classes.len(), count("exhaustive:n=5..5,filters=free:C4"));
    }

    #[test]
    fn random_is_seeded() {
        let a = enumerate_graphs(&"random:n=5,p=0.5,count=10,seed=7".parse().unwrap()).unwrap();
        let b = enumerate_graphs(&"random:n=5,p=0.5,count=10,seed=7".parse().unwrap()).unwrap();
        let c = enumerate_graphs(&"random:n=5,p=0.5,count=10,seed=8".parse().unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert_ne!(a.items, c.items);
        let d = enumerate_graphs(&CorpusSpec::parse_with_seed("random:n=5,p=0.5,count=10", 7).unwrap()).unwrap();
        assert_eq!(a.items, d.items);
    }

    #[test]
    fn spec_round_trip_and_errors() {
        for s in [
            "exhaustive:n=8",
            "exhaustive:n=4..6,nodedup,filters=H:p=2+free:bplus:p=2,k=2,t=3",
            "random:n=10,p=0.25,count=3,seed=1,dedup",
            "exhaustive:n=6,filters=nosub:kdt:d=2,t=2",
        ] {
            let spec: CorpusSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for bad in ["exhaustive", "exhaustive:n=x", "random:n=5,p=2,count=1", "lattice:n=3", "exhaustive:n=3,filters=wat", "exhaustive:n=3,q=1"] {
            assert!(bad.parse::<CorpusSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn file_corpus_keeps_bad_lines() {
        let dir = std::env::temp_dir().join(format!("chibound-corpus-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("mixed.g6");
        std::fs::write(&path, "Bw\nnot-a-graph\nDhc\n").unwrap();
        let corpus = enumerate_graphs(&format!("file:path={}", path.display()).parse().unwrap()).unwrap();
        assert_eq!(corpus.len(), 3);
        assert!(corpus.items[1].is_err());
        assert_eq!(corpus.items[2], Ok(Graph::cycle(5)));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
