use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("invalid parameters for {pattern}: {reason}")]
    Parameter { pattern: &'static str, reason: String },
    #[error("cannot parse pattern '{0}': {1}")]
    Parse(String, String),
    #[error("pattern family is empty")]
    EmptyFamily,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Named patterns. Parameters follow the usual conventions:
///
/// * `Path(k)` / `Cycle(k)` / `Complete(n)`: `P_k`, `C_k`, `K_n` by vertex count.
/// * `Star(k)`: `K_{1,k}`.
/// * `Broom { t, k }`: `K_{1,t+1}` with one edge subdivided `k` times.
/// * `Flag { p }`: a triangle with a path of length `p` hung off one corner.
/// * `TwoArmStar { t, p }`: centre with `t - 4` leaves and arms of lengths 4 and `p`.
/// * `BPlus { p, k, t }`: centre with `t - 1` leaves, a path of length
///   `p + k`, and a pendant vertex on the path vertex at distance `k`.
/// * `CompleteMultipartite { d, t }`: `K_d(t)`, `d` parts of size `t`.
/// * `Biclique { s, t }`: `K_{s,t}`.
/// * `UniformTree { zeta, eta }`: every internal vertex has `zeta`
///   children, every leaf at depth `eta`.
/// * `Diamond`: `K_4` minus an edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternSpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Broom { t: usize, k: usize },
    Flag { p: usize },
    TwoArmStar { t: usize, p: usize },
    BPlus { p: usize, k: usize, t: usize },
    CompleteMultipartite { d: usize, t: usize },
    Biclique { s: usize, t: usize },
    UniformTree { zeta: usize, eta: usize },
    Diamond,
}

fn bad(pattern: &'static str, reason: impl Into<String>) -> PatternError {
    PatternError::Parameter { pattern, reason: reason.into() }
}

impl PatternSpec {
    pub fn name(&self) -> &'static str {
        match self {
            PatternSpec::Path(_) => "path",
            PatternSpec::Cycle(_) => "cycle",
            PatternSpec::Complete(_) => "complete",
            PatternSpec::Star(_) => "star",
            PatternSpec::Broom { .. } => "broom",
            PatternSpec::Flag { .. } => "flag",
            PatternSpec::TwoArmStar { .. } => "twoarm",
            PatternSpec::BPlus { .. } => "bplus",
            PatternSpec::CompleteMultipartite { .. } => "kdt",
            PatternSpec::Biclique { .. } => "biclique",
            PatternSpec::UniformTree { .. } => "tree",
            PatternSpec::Diamond => "diamond",
        }
    }

    /// Number of vertices, without building the graph.
    pub fn order(&self) -> usize {
        match *self {
            PatternSpec::Path(k) | PatternSpec::Cycle(k) | PatternSpec::Complete(k) => k,
            PatternSpec::Star(k) => k + 1,
            PatternSpec::Broom { t, k } => t + k + 2,
            PatternSpec::Flag { p } => p + 3,
            PatternSpec::TwoArmStar { t, p } => t + p + 1,
            PatternSpec::BPlus { p, k, t } => p + k + t + 1,
            PatternSpec::CompleteMultipartite { d, t } => d * t,
            PatternSpec::Biclique { s, t } => s + t,
            PatternSpec::UniformTree { zeta, eta } => (0..=eta as u32).map(|i| zeta.pow(i)).sum(),
            PatternSpec::Diamond => 4,
        }
    }

    /// Part sizes for multipartite patterns.
    pub fn multipartite_parts(&self) -> Option<Vec<usize>> {
        match *self {
            PatternSpec::CompleteMultipartite { d, t } => Some(vec![t; d]),
            PatternSpec::Biclique { s, t } => Some(vec![s, t]),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), PatternError> {
        let name = self.name();
        match *self {
            PatternSpec::Path(k) if k < 1 => Err(bad(name, "need k >= 1")),
            PatternSpec::Cycle(k) if k < 3 => Err(bad(name, "need k >= 3")),
            PatternSpec::Complete(n) if n < 1 => Err(bad(name, "need n >= 1")),
            PatternSpec::Star(k) if k < 1 => Err(bad(name, "need k >= 1")),
            PatternSpec::Broom { t, k } if t < 1 || k < 1 => Err(bad(name, "need t >= 1 and k >= 1")),
            PatternSpec::Flag { p } if p < 1 => Err(bad(name, "need p >= 1")),
            // The two-arm star is only defined once there is at least one leaf.
            PatternSpec::TwoArmStar { t, p } if t < 5 || p < 1 => Err(bad(name, "need t >= 5 and p >= 1")),
            PatternSpec::BPlus { p, k, t } if p < 2 || k < 2 || t < 3 => {
                Err(bad(name, "need p >= 2, k >= 2 and t >= 3"))
            }
            PatternSpec::CompleteMultipartite { d, t } if d < 1 || t < 1 => Err(bad(name, "need d >= 1 and t >= 1")),
            PatternSpec::Biclique { s, t } if s < 1 || t < 1 => Err(bad(name, "need s >= 1 and t >= 1")),
            PatternSpec::UniformTree { zeta, eta } if zeta < 2 || eta < 1 => {
                Err(bad(name, "need zeta >= 2 and eta >= 1"))
            }
            _ if self.order() > crate::graph::MAX_VERTICES => {
                Err(bad(name, format!("{} vertices exceeds the graph size limit", self.order())))
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph, PatternError> {
        self.validate()?;
        let n = self.order();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        // Appends a path hanging off `from` using fresh ids starting at `next`.
        let hang = |edges: &mut Vec<(usize, usize)>, from: usize, next: usize, len: usize| {
            let mut prev = from;
            for i in 0..len {
                edges.push((prev, next + i));
                prev = next + i;
            }
        };
        match *self {
            PatternSpec::Path(k) => hang(&mut edges, 0, 1, k - 1),
            PatternSpec::Cycle(k) => {
                hang(&mut edges, 0, 1, k - 1);
                edges.push((k - 1, 0));
            }
            PatternSpec::Complete(k) => {
                edges.extend((0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))));
            }
            PatternSpec::Star(k) => edges.extend((1..=k).map(|v| (0, v))),
            PatternSpec::Broom { t, k } => {
                hang(&mut edges, 0, 1, k + 1);
                edges.extend((k + 2..k + 2 + t).map(|v| (0, v)));
            }
            PatternSpec::Flag { p } => {
                edges.extend([(0, 1), (1, 2), (0, 2)]);
                hang(&mut edges, 0, 3, p);
            }
            PatternSpec::TwoArmStar { t, p } => {
                hang(&mut edges, 0, 1, 4);
                hang(&mut edges, 0, 5, p);
                edges.extend((5 + p..5 + p + (t - 4)).map(|v| (0, v)));
            }
            PatternSpec::BPlus { p, k, t } => {
                hang(&mut edges, 0, 1, p + k);
                let leaves = p + k + 1;
                edges.extend((leaves..leaves + t - 1).map(|v| (0, v)));
                edges.push((k, leaves + t - 1));
            }
            PatternSpec::CompleteMultipartite { .. } | PatternSpec::Biclique { .. } => {
                let parts = self.multipartite_parts().expect("multipartite");
                let mut part_of = Vec::with_capacity(n);
                for (i, &size) in parts.iter().enumerate() {
                    part_of.extend(std::iter::repeat_n(i, size));
                }
                for u in 0..n {
                    for v in u + 1..n {
                        if part_of[u] != part_of[v] {
                            edges.push((u, v));
                        }
                    }
                }
            }
            PatternSpec::UniformTree { zeta, .. } => {
                // Level order: children of vertex i are zeta*i + 1 ..= zeta*i + zeta.
                edges.extend((1..n).map(|v| ((v - 1) / zeta, v)));
            }
            PatternSpec::Diamond => edges.extend([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
        }
        Ok(Graph::new(n, edges)?)
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        match *self {
            PatternSpec::Path(k) | PatternSpec::Cycle(k) | PatternSpec::Star(k) => write!(f, "{name}:k={k}"),
            PatternSpec::Complete(n) => write!(f, "{name}:n={n}"),
            PatternSpec::Broom { t, k } => write!(f, "{name}:t={t},k={k}"),
            PatternSpec::Flag { p } => write!(f, "{name}:p={p}"),
            PatternSpec::TwoArmStar { t, p } => write!(f, "{name}:t={t},p={p}"),
            PatternSpec::BPlus { p, k, t } => write!(f, "{name}:p={p},k={k},t={t}"),
            PatternSpec::CompleteMultipartite { d, t } => write!(f, "{name}:d={d},t={t}"),
            PatternSpec::Biclique { s, t } => write!(f, "{name}:s={s},t={t}"),
            PatternSpec::UniformTree { zeta, eta } => write!(f, "{name}:zeta={zeta},eta={eta}"),
            PatternSpec::Diamond => write!(f, "{name}"),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = PatternError;

    /// Grammar: `name[:key=value,...]`, e.g. `broom:t=2,k=2`, `flag:p=3`,
    /// `bplus:p=2,k=2,t=3`, `kdt:d=3,t=2`. Shorthands `P<k>`, `C<k>`,
    /// `K<n>`, `paw`, `claw` and `diamond` are accepted too.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let perr = |why: &str| PatternError::Parse(s.to_string(), why.to_string());
        if let Some(short) = shorthand(s) {
            return short.validate().map(|_| short);
        }
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = BTreeMap::new();
        for kv in rest.split(',').filter(|kv| !kv.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| perr("expected key=value"))?;
            let v: usize = v.trim().parse().map_err(|_| perr("parameter is not a nonnegative integer"))?;
            if params.insert(k.trim().to_string(), v).is_some() {
                return Err(perr("duplicate parameter"));
            }
        }
        let mut take = |key: &str| params.remove(key).ok_or_else(|| perr(&format!("missing parameter '{key}'")));
        let spec = match name.to_ascii_lowercase().as_str() {
            "path" => PatternSpec::Path(take("k")?),
            "cycle" => PatternSpec::Cycle(take("k")?),
            "complete" => PatternSpec::Complete(take("n")?),
            "star" => PatternSpec::Star(take("k")?),
            "broom" => PatternSpec::Broom { t: take("t")?, k: take("k")? },
            "flag" => PatternSpec::Flag { p: take("p")? },
            "twoarm" => PatternSpec::TwoArmStar { t: take("t")?, p: take("p")? },
            "bplus" => PatternSpec::BPlus { p: take("p")?, k: take("k")?, t: take("t")? },
            "kdt" => PatternSpec::CompleteMultipartite { d: take("d")?, t: take("t")? },
            "biclique" => PatternSpec::Biclique { s: take("s")?, t: take("t")? },
            "tree" => PatternSpec::UniformTree { zeta: take("zeta")?, eta: take("eta")? },
            "diamond" => PatternSpec::Diamond,
            _ => return Err(perr("unknown pattern name")),
        };
        if let Some(extra) = params.keys().next() {
            return Err(perr(&format!("unexpected parameter '{extra}'")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn shorthand(s: &str) -> Option<PatternSpec> {
    match s {
        "paw" => return Some(PatternSpec::Flag { p: 1 }),
        "claw" => return Some(PatternSpec::Star(3)),
        _ => {}
    }
    let mut chars = s.chars();
    let head = chars.next()?;
    let num: usize = chars.as_str().parse().ok()?;
    match head {
        'P' => Some(PatternSpec::Path(num)),
        'C' => Some(PatternSpec::Cycle(num)),
        'K' => Some(PatternSpec::Complete(num)),
        _ => None,
    }
}
