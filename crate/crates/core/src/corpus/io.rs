//! graph6 and edge-list codecs.

use thiserror::Error;

use crate::graph::{Graph, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} at offset {1} is outside the graph6 alphabet")]
    NonPrintable(u8, usize),
    #[error("malformed size header")]
    Header,
    #[error("{0} vertices exceeds the supported maximum")]
    TooLarge(usize),
    #[error("expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    Padding,
    #[error("edge list: {0}")]
    EdgeList(String),
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Encodes `g` in graph6 (no `>>graph6<<` prefix, no newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + pair_count(n).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes one graph6 string. Surrounding whitespace and an optional
/// `>>graph6<<` prefix are accepted; padding bits must be zero.
pub fn read_graph6(text: &str) -> Result<Graph, DecodeError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(DecodeError::Empty);
    }
    let mut six = Vec::with_capacity(bytes.len());
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(DecodeError::NonPrintable(b, i));
        }
        six.push(b - 63);
    }
    let (n, body) = if six[0] < 63 {
        (six[0] as usize, &six[1..])
    } else if six.len() >= 4 && six[1] < 63 {
        let n = (six[1] as usize) << 12 | (six[2] as usize) << 6 | six[3] as usize;
        if n <= 62 {
            return Err(DecodeError::Header);
        }
        (n, &six[4..])
    } else {
        return Err(DecodeError::Header);
    };
    if n > MAX_VERTICES {
        return Err(DecodeError::TooLarge(n));
    }
    let bits = pair_count(n);
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(DecodeError::Length { expected, found: body.len() });
    }
    let mut adj = vec![VertexSet::empty(); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if body[k / 6] >> (5 - k % 6) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    if !bits.is_multiple_of(6) && body[expected - 1] & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(DecodeError::Padding);
    }
    Ok(Graph::from_adjacency(adj).expect("decoded rows are valid"))
}

/// `n m` followed by `m` lines `u v`.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Reads every edge-list block in `text`. Blank lines and lines starting
/// with `#` are ignored.
pub fn read_edge_lists(text: &str) -> Vec<Result<Graph, DecodeError>> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .peekable();
    let mut out = Vec::new();
    let pair = |line: &str| -> Result<(usize, usize), DecodeError> {
        let bad = || DecodeError::EdgeList(format!("expected two integers, got `{line}`"));
        let mut it = line.split_whitespace();
        let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if it.next().is_some() {
            return Err(bad());
        }
        Ok((a, b))
    };
    while let Some(header) = lines.next() {
        let block = pair(header).and_then(|(n, m)| {
            let mut edges = Vec::with_capacity(m);
            for _ in 0..m {
                let line = lines.next().ok_or_else(|| DecodeError::EdgeList(format!("expected {m} edges")))?;
                edges.push(pair(line)?);
            }
            if n > MAX_VERTICES {
                return Err(DecodeError::TooLarge(n));
            }
            Graph::new(n, edges).map_err(|e| DecodeError::EdgeList(e.to_string()))
        });
        let failed = block.is_err();
        out.push(block);
        if failed {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        assert_eq!(write_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(write_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(write_graph6(&Graph::petersen()), "IheA@GUAo");
        assert_eq!(read_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(read_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn long_header() {
        let g = Graph::path(64);
        let s = write_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(read_graph6(&s).unwrap(), g);
        let g = Graph::cycle(63);
        assert_eq!(read_graph6(&write_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(read_graph6(""), Err(DecodeError::Empty));
        assert_eq!(read_graph6("B"), Err(DecodeError::Length { expected: 1, found: 0 }));
        assert_eq!(read_graph6("Bww"), Err(DecodeError::Length { expected: 1, found: 2 }));
        assert_eq!(read_graph6("Bx"), Err(DecodeError::Padding));
        assert!(matches!(read_graph6("B\u{7f}"), Err(DecodeError::NonPrintable(0x7f, 1))));
        assert_eq!(read_graph6("~"), Err(DecodeError::Header));
        assert_eq!(read_graph6("~?A?"), Err(DecodeError::TooLarge(128)));
    }

    #[test]
    fn edge_lists() {
        let text = "# two graphs\n3 2\n0 1\n1 2\n\n4 0\n";
        let gs: Vec<_> = read_edge_lists(text).into_iter().map(Result::unwrap).collect();
        assert_eq!(gs, vec![Graph::path(3), Graph::empty(4).unwrap()]);
        assert_eq!(read_edge_lists(&write_edge_list(&Graph::petersen()))[0], Ok(Graph::petersen()));
        assert!(read_edge_lists("3 2\n0 1\n").pop().unwrap().is_err());
        assert!(read_edge_lists("2 1\n0 0\n").pop().unwrap().is_err());
    }
}
