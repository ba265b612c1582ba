use super::{Graph, VertexSet};

/// Number of internally vertex-disjoint `s`-`t` paths inside `G[within]`,
/// counted up to `limit`. `s` and `t` must be distinct and nonadjacent.
///
/// Unit-capacity max-flow on the split graph: every vertex `x` becomes
/// `x_in -> x_out` with capacity one (infinite for `s` and `t`), and every
/// edge `xy` becomes `x_out -> y_in` and `y_out -> x_in`.
pub fn local_vertex_connectivity(g: &Graph, within: VertexSet, s: usize, t: usize, limit: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let n = g.n();
    // Node ids: 2x = x_in, 2x + 1 = x_out.
    let nodes = 2 * n;
    let mut cap: Vec<Vec<(usize, i32)>> = vec![Vec::new(); nodes];
    let add = |cap: &mut Vec<Vec<(usize, i32)>>, a: usize, b: usize, c: i32| {
        cap[a].push((b, c));
        cap[b].push((a, 0));
    };
    let big = n as i32 + 1;
    for x in within {
        let c = if x == s || x == t { big } else { 1 };
        add(&mut cap, 2 * x, 2 * x + 1, c);
        for y in g.adj_in(x, within) {
            add(&mut cap, 2 * x + 1, 2 * y, 1);
        }
    }
    // Residual graph as dense matrix; n <= 64 so 128x128 is fine.
    let mut res = vec![0i32; nodes * nodes];
    for (a, list) in cap.iter().enumerate() {
        for &(b, c) in list {
            res[a * nodes + b] += c;
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    let mut prev = vec![usize::MAX; nodes];
    while flow < limit {
        prev.iter_mut().for_each(|p| *p = usize::MAX);
        prev[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..nodes {
                if prev[b] == usize::MAX && res[a * nodes + b] > 0 {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut b = sink;
        while b != source {
            let a = prev[b];
            res[a * nodes + b] -= 1;
            res[b * nodes + a] += 1;
            b = a;
        }
        flow += 1;
    }
    flow
}
