use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::cutsets::{is_minimal_cutset, minimal_cutsets};
use super::{enumerate_balloons, far_layer_profile, Balloon, EnumerationCap, StructureError};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{is_family_free, FamilyCheck, PatternSpec};
use crate::solvers::{chromatic_number_of, clique_number};

fn family(g: &Graph, specs: &[PatternSpec]) -> Result<FamilyCheck, StructureError> {
    is_family_free(g, specs, true).map_err(|e| StructureError::Parameter(e.to_string()))
}

/// Membership in the class of `C4`-free, `p`-flag-free graphs. The witness
/// is the first forbidden induced subgraph found.
pub fn in_class_h(g: &Graph, p: usize) -> Result<FamilyCheck, StructureError> {
    if p < 1 {
        return Err(StructureError::Parameter("H(p) needs p >= 1".into()));
    }
    family(g, &[PatternSpec::Cycle(4), PatternSpec::Flag { p }])
}

/// A finite map from clique number to a binding value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BindingTable {
    Identity,
    Table(BTreeMap<usize, usize>),
}

impl BindingTable {
    pub fn get(&self, w: usize) -> Result<usize, StructureError> {
        match self {
            BindingTable::Identity => Ok(w),
            BindingTable::Table(m) => m.get(&w).copied().ok_or(StructureError::BindingUndefined(w)),
        }
    }
}

impl fmt::Display for BindingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BindingTable::Identity => f.write_str("identity"),
            BindingTable::Table(m) => {
                let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for BindingTable {
    type Err = StructureError;

    /// `identity`, or `omega:value` pairs separated by `,` or `;`, such as
    /// `1:1,2:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("identity") || s == "id" {
            return Ok(BindingTable::Identity);
        }
        let bad = || StructureError::Parameter(format!("bad binding table `{s}`"));
        let mut m = BTreeMap::new();
        for pair in s.split([',', ';']).filter(|p| !p.trim().is_empty()) {
            let (k, v) = pair.split_once(':').ok_or_else(bad)?;
            let k = k.trim().parse().map_err(|_| bad())?;
            let v = v.trim().parse().map_err(|_| bad())?;
            m.insert(k, v);
        }
        if m.is_empty() {
            return Err(bad());
        }
        Ok(BindingTable::Table(m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LCase {
    /// The cutset is a clique; a vertex `u` of a second component misses `v`.
    Case1,
    /// The cutset is not a clique; `w` in the cutset misses `v` and `y`.
    Case2,
}

/// Witnesses for membership in `L_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LCertificate {
    pub case: LCase,
    pub i: usize,
    pub omega: usize,
    pub threshold: usize,
    pub cutset: VertexSet,
    pub v: usize,
    pub b1: VertexSet,
    pub y: usize,
    /// A component of `B_1` minus the neighbours of `v`.
    pub f: VertexSet,
    pub chi_f: usize,
    /// Neighbours of `v` in `B_1` that see `F`.
    pub y1: VertexSet,
    pub b2: Option<VertexSet>,
    pub u: Option<usize>,
    pub w: Option<usize>,
}

impl LCertificate {
    /// Re-checks every named witness against `g` and the binding table.
    pub fn validate(&self, g: &Graph, f: &BindingTable) -> Result<(), String> {
        let x = self.cutset;
        if !is_minimal_cutset(g, x) {
            return Err("X is not a minimal cutset".into());
        }
        if !x.contains(self.v) {
            return Err("v is not in X".into());
        }
        let comps = g.components_within(g.vertices() - x);
        if !comps.contains(&self.b1) {
            return Err("B_1 is not a component of G - X".into());
        }
        let n_b1 = g.adj_in(self.v, self.b1);
        if !n_b1.contains(self.y) {
            return Err("y is not a neighbour of v in B_1".into());
        }
        if !g.components_within(self.b1 - n_b1).contains(&self.f) {
            return Err("F is not a component of B_1 - N(v)".into());
        }
        if self.f.is_subset(n_b1) || !g.adj(self.y).intersects(self.f) {
            return Err("F fails its attachment conditions".into());
        }
        if clique_number(g).size != self.omega {
            return Err("wrong clique number".into());
        }
        let threshold = f.get(self.omega / self.i).map_err(|e| e.to_string())?;
        let chi = chromatic_number_of(g, self.f).map_err(|e| e.to_string())?;
        if threshold != self.threshold || chi != self.chi_f || chi <= threshold {
            return Err(format!("chi(F) = {chi} does not exceed f = {threshold}"));
        }
        let y1: VertexSet = n_b1.iter().filter(|&a| g.adj(a).intersects(self.f)).collect();
        if y1 != self.y1 {
            return Err("Y_1 mismatch".into());
        }
        match self.case {
            LCase::Case1 => {
                let (b2, u) = self.b2.zip(self.u).ok_or("case 1 needs B_2 and u")?;
                if !g.is_clique(x) || b2 == self.b1 || !comps.contains(&b2) || !b2.contains(u) || g.has_edge(u, self.v) {
                    return Err("case 1 conditions fail".into());
                }
            }
            LCase::Case2 => {
                let w = self.w.ok_or("case 2 needs w")?;
                if g.is_clique(x) || !x.contains(w) || w == self.v || g.has_edge(w, self.v) || g.has_edge(w, self.y) {
                    return Err("case 2 conditions fail".into());
                }
            }
        }
        Ok(())
    }
}

/// Searches for an `L_i` certificate: a minimal cutset `X`, a vertex `v`
/// of `X` and the remaining witnesses of case 1 or case 2, trying cutsets
/// in enumeration order and every `v` of each. `Ok(None)` means no pair
/// works.
pub fn in_class_l(g: &Graph, i: usize, f: &BindingTable, cap: &EnumerationCap) -> Result<Option<LCertificate>, StructureError> {
    if i < 2 {
        return Err(StructureError::Parameter("L_i needs i >= 2".into()));
    }
    let check = family(g, &[PatternSpec::Path(6), PatternSpec::Broom { t: 2, k: 2 }])?;
    if !check.free {
        return Err(StructureError::Precondition {
            reason: "graph is not {P6, (2,2)-broom}-free".into(),
            witness: check.witness,
        });
    }
    let cutsets = minimal_cutsets(g, cap)?;
    if cutsets.truncated {
        return Err(StructureError::Truncated(cutsets.cutsets.len()));
    }
    let omega = clique_number(g).size;
    let threshold = f.get(omega / i)?;
    let mut chi_memo: HashMap<VertexSet, usize> = HashMap::new();
    for &x in &cutsets.cutsets {
        let comps = g.components_within(g.vertices() - x);
        let x_clique = g.is_clique(x);
        for v in x {
            for &b1 in &comps {
                let n_b1 = g.adj_in(v, b1);
                let mut heavy = Vec::new();
                for comp in g.components_within(b1 - n_b1) {
                    let chi = match chi_memo.get(&comp) {
                        Some(&c) => c,
                        None => {
                            let c = chromatic_number_of(g, comp)?;
                            chi_memo.insert(comp, c);
                            c
                        }
                    };
                    if chi > threshold {
                        heavy.push((comp, chi));
                    }
                }
                for y in n_b1 {
                    let Some(&(fc, chi_f)) = heavy.iter().find(|(c, _)| g.adj(y).intersects(*c)) else {
                        continue;
                    };
                    let y1 = n_b1.iter().filter(|&a| g.adj(a).intersects(fc)).collect();
                    let mut cert = LCertificate {
                        case: LCase::Case1,
                        i,
                        omega,
                        threshold,
                        cutset: x,
                        v,
                        b1,
                        y,
                        f: fc,
                        chi_f,
                        y1,
                        b2: None,
                        u: None,
                        w: None,
                    };
                    if x_clique {
                        let found = comps
                            .iter()
                            .filter(|&&b2| b2 != b1)
                            .find_map(|&b2| (b2 - g.adj(v)).first().map(|u| (b2, u)));
                        if let Some((b2, u)) = found {
                            cert.b2 = Some(b2);
                            cert.u = Some(u);
                            return Ok(Some(cert));
                        }
                    } else if let Some(w) = (x - g.adj(v) - g.adj(y)).without(v).first() {
                        cert.case = LCase::Case2;
                        cert.w = Some(w);
                        return Ok(Some(cert));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Outcome of an `F_k` membership check under both readings of "within
/// distance `k` of `N(v_p)`": layer index at most `k + 1` from `v_p`
/// (primary) and at most `k` (alternative).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FClassReport {
    pub member: bool,
    pub member_alternative: bool,
    pub balloons_checked: usize,
    /// First balloon failing the primary reading.
    pub violation: Option<Balloon>,
    /// First balloon failing the alternative reading.
    pub violation_alternative: Option<Balloon>,
}

pub fn in_class_f(g: &Graph, k: usize, p: usize, t: usize, cap: &EnumerationCap) -> Result<FClassReport, StructureError> {
    if k < 2 {
        return Err(StructureError::Parameter("F_k needs k >= 2".into()));
    }
    let h = in_class_h(g, p)?;
    if !h.free {
        return Err(StructureError::Precondition { reason: format!("graph is not in H({p})"), witness: h.witness });
    }
    let list = enumerate_balloons(g, p, t, cap)?;
    if list.truncated {
        return Err(StructureError::Truncated(list.balloons.len()));
    }
    let mut report = FClassReport {
        member: true,
        member_alternative: true,
        balloons_checked: list.balloons.len(),
        violation: None,
        violation_alternative: None,
    };
    for b in list.balloons {
        let profile = far_layer_profile(g, &b);
        let best = profile.max_degree_vertices.iter().map(|&(_, layer)| layer).min();
        let Some(best) = best else { continue };
        if best > k && report.violation_alternative.is_none() {
            report.member_alternative = false;
            report.violation_alternative = Some(b.clone());
        }
        if best > k + 1 && report.violation.is_none() {
            report.member = false;
            report.violation = Some(b);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap() -> EnumerationCap {
        EnumerationCap::default()
    }

    /// `u - f - v - y` with `y` complete to a clique on `r` vertices.
    fn case1_instance(r: usize) -> Graph {
        let mut edges = vec![(0, 1), (1, 2), (2, 3)];
        for a in 4..4 + r {
            edges.push((3, a));
            for b in a + 1..4 + r {
                edges.push((a, b));
            }
        }
        Graph::new(4 + r, edges).unwrap()
    }

    /// Cutset `{v, w}` (ids 0, 1) with `f` (2) joined to both, `v - y` (3),
    /// `y` complete to a clique starting at 4 and `w` joined to vertex 4.
    fn case2_instance(r: usize) -> Graph {
        let mut edges = vec![(0, 2), (1, 2), (0, 3), (1, 4)];
        for a in 4..4 + r {
            edges.push((3, a));
            for b in a + 1..4 + r {
                edges.push((a, b));
            }
        }
        Graph::new(4 + r, edges).unwrap()
    }

    #[test]
    fn h_examples() {
        assert!(in_class_h(&Graph::cycle(5), 1).unwrap().free);
        let paw = Graph::new(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let hit = in_class_h(&paw, 1).unwrap();
        assert!(!hit.free);
        assert_eq!(hit.witness.unwrap().pattern, "flag:p=1");
        assert!(in_class_h(&Graph::complete(4), 2).unwrap().free);
        assert!(!in_class_h(&Graph::cycle(4), 3).unwrap().free);
    }

    #[test]
    fn binding_table_parsing() {
        assert_eq!("identity".parse::<BindingTable>().unwrap(), BindingTable::Identity);
        let t: BindingTable = "0:0, 1:1,2:3".parse().unwrap();
        assert_eq!(t.get(2).unwrap(), 3);
        assert_eq!(t.get(5), Err(StructureError::BindingUndefined(5)));
        assert_eq!(t.to_string(), "0:0,1:1,2:3");
        assert!("1-2".parse::<BindingTable>().is_err());
    }

    #[test]
    fn l_trivial_cases() {
        for n in 1..6 {
            assert_eq!(in_class_l(&Graph::complete(n), 2, &BindingTable::Identity, &cap()).unwrap(), None);
        }
        let split = Graph::path(2).disjoint_union(&Graph::path(2)).unwrap();
        assert_eq!(in_class_l(&split, 2, &BindingTable::Identity, &cap()), Err(StructureError::Disconnected));
        assert!(matches!(
            in_class_l(&Graph::path(6), 2, &BindingTable::Identity, &cap()),
            Err(StructureError::Precondition { .. })
        ));
    }

    #[test]
    fn l_case1_construction() {
        for r in 2..=12 {
            let g = case1_instance(r);
            let cert = in_class_l(&g, 2, &BindingTable::Identity, &cap()).unwrap().expect("member");
            cert.validate(&g, &BindingTable::Identity).unwrap();
            assert_eq!(cert.case, LCase::Case1);
            assert_eq!(cert.v, 2);
            assert_eq!(cert.cutset, VertexSet::singleton(2));
            assert_eq!(cert.chi_f, r);
        }
    }

    #[test]
    fn l_case2_construction() {
        for r in 2..=10 {
            let g = case2_instance(r);
            let cert = in_class_l(&g, 2, &BindingTable::Identity, &cap()).unwrap().expect("member");
            cert.validate(&g, &BindingTable::Identity).unwrap();
            if cert.cutset == [0, 1].into_iter().collect() {
                assert_eq!(cert.case, LCase::Case2);
            }
        }
    }

    #[test]
    fn l_threshold_blocks_membership() {
        // With f large everywhere no component is heavy enough.
        let g = case1_instance(4);
        let f: BindingTable = "0:100,1:100,2:100".parse().unwrap();
        assert_eq!(in_class_l(&g, 2, &f, &cap()).unwrap(), None);
        let sparse: BindingTable = "7:1".parse().unwrap();
        assert_eq!(in_class_l(&g, 2, &sparse, &cap()), Err(StructureError::BindingUndefined(2)));
    }

    #[test]
    fn l_certificate_tampering_is_caught() {
        let g = case1_instance(5);
        let cert = in_class_l(&g, 2, &BindingTable::Identity, &cap()).unwrap().unwrap();
        let mut bad = cert.clone();
        bad.y = 0;
        assert!(bad.validate(&g, &BindingTable::Identity).is_err());
        let mut bad = cert.clone();
        bad.u = Some(3);
        assert!(bad.validate(&g, &BindingTable::Identity).is_err());
        let strict: BindingTable = "3:10".parse().unwrap();
        assert!(cert.validate(&g, &strict).is_err());
    }

    #[test]
    fn f_examples() {
        let r = in_class_f(&Graph::cycle(5), 2, 1, 2, &cap()).unwrap();
        assert!(r.member && r.balloons_checked == 5);
        let r = in_class_f(&Graph::path(4), 2, 1, 2, &cap()).unwrap();
        assert!(r.member && r.balloons_checked == 0);
        assert!(matches!(in_class_f(&Graph::cycle(4), 2, 1, 2, &cap()), Err(StructureError::Precondition { .. })));
    }

    #[test]
    fn f_negative_construction() {
        // C12 plus a vertex joined to c5 and c8: from c0 the far-layer
        // maximum degree 3 is attained only at c8 (layer 4) and c5 (layer 5).
        let mut edges: Vec<_> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        edges.extend([(12, 5), (12, 8)]);
        let g = Graph::new(13, edges).unwrap();
        assert!(in_class_h(&g, 1).unwrap().free);
        let r = in_class_f(&g, 2, 1, 2, &cap()).unwrap();
        assert!(!r.member && !r.member_alternative);
        let b = r.violation.unwrap();
        let prof = far_layer_profile(&g, &b);
        assert_eq!(prof.max_degree, Some(3));
        assert!(prof.max_degree_vertices.iter().all(|&(_, layer)| layer > 3));
        // Larger k admits it.
        assert!(in_class_f(&g, 5, 1, 2, &cap()).unwrap().member);
    }
}
