//! graph6 and plain adjacency-list text formats.
//!
//! graph6 follows the standard bit packing: the order as `N(n)`, then the
//! upper triangle of the adjacency matrix in column-major order
//! (`x(0,1) x(0,2) x(1,2) x(0,3) ...`) in big-endian groups of six bits, each
//! group offset by 63. The optional `>>graph6<<` header is accepted on input
//! and never written.

use crate::error::GraphError;
use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 { offset, reason: reason.into() }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let body = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match body.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(g6_err(skip, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(skip + i, format!("byte {b:#04x} outside the printable range 63..=126")));
        }
    }
    let (n, start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(g6_err(skip, "truncated length field"));
        }
        if bytes[1] == 126 {
            return Err(g6_err(skip + 1, "eight-byte length form not supported"));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    if n == 0 {
        return Err(g6_err(skip, "zero-vertex graph"));
    }
    if n > MAX_ORDER {
        return Err(g6_err(skip, format!("order {n} exceeds maximum {MAX_ORDER}")));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != need {
        return Err(g6_err(
            skip + start + data.len().min(need),
            format!("expected {need} data bytes for order {n}, found {}", data.len()),
        ));
    }
    let pad = need * 6 - nbits;
    if pad > 0 {
        let last = data[need - 1] - 63;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(g6_err(skip + start + need - 1, "nonzero padding bits"));
        }
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - 63;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                g.insert_edge(i, j);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// `n` on the first line, then one `u v` pair per line. Blank lines and
/// `#` comments are ignored.
pub fn parse_adjacency_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, reason: &str| GraphError::AdjacencyList { line, reason: reason.to_string() };
    let (line, first) = lines.next().ok_or_else(|| err(1, "missing vertex count"))?;
    let n: usize = first.parse().map_err(|_| err(line, "vertex count is not an integer"))?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let mut next = || -> Result<usize, GraphError> {
            parts
                .next()
                .ok_or_else(|| err(line, "expected two vertex ids"))?
                .parse()
                .map_err(|_| err(line, "vertex id is not an integer"))
        };
        let u = next()?;
        let v = next()?;
        if parts.next().is_some() {
            return Err(err(line, "trailing tokens"));
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

pub fn emit_adjacency_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parse either format: a leading integer line means adjacency list.
pub fn parse_any(text: &str) -> Result<Graph, GraphError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.chars().all(|c| c.is_ascii_digit()) => parse_adjacency_list(text),
        Some(l) => parse_graph6(l),
        None => Err(g6_err(0, "empty input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use proptest::prelude::*;

    /// Bit-by-bit reference decoder written against the format description,
    /// kept independent of `parse_graph6`.
    fn reference_decode(s: &str) -> Vec<(usize, usize)> {
        let b = s.as_bytes();
        let n = (b[0] - 63) as usize;
        let bits: Vec<u8> = b[1..]
            .iter()
            .flat_map(|&c| (0..6).rev().map(move |k| ((c - 63) >> k) & 1))
            .collect();
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[idx] == 1 {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        edges.sort();
        edges
    }

    #[test]
    fn k3_is_bw() {
        let s = emit_graph6(&Graph::complete(3));
        assert_eq!(s, "Bw");
        assert_eq!(reference_decode(&s), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn known_encodings() {
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        // C_5 is "Dhc" in nauty's output
        assert_eq!(emit_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(parse_graph6("Dhc").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_graph6(""), Err(GraphError::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("Bx"), Err(GraphError::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("C"), Err(GraphError::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("B w"), Err(GraphError::Graph6 { offset: 1, .. })));
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn long_length_field() {
        let g = Graph::path(100);
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn adjacency_list_round_trip() {
        let g = Graph::cycle(6);
        let text = emit_adjacency_list(&g);
        assert_eq!(parse_adjacency_list(&text).unwrap(), g);
        assert_eq!(parse_any(&text).unwrap(), g);
        assert_eq!(parse_any("Bw\n").unwrap(), Graph::complete(3));
        assert!(parse_adjacency_list("3\n0 5\n").is_err());
        assert!(parse_adjacency_list("3\n0\n").is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut idx = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[idx] {
                            g.insert_edge(i, j);
                        }
                        idx += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn graph6_round_trip(g in arb_graph(12)) {
            let s = emit_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g.clone());
            prop_assert_eq!(reference_decode(&s), g.edges());
        }

        #[test]
        fn complement_is_involution(g in arb_graph(16)) {
            prop_assert_eq!(g.complement().complement(), g.clone());
        }

        #[test]
        fn components_partition_vertices(g in arb_graph(16)) {
            let comps = g.components();
            let mut seen = VertexSet::EMPTY;
            for c in &comps {
                prop_assert!(c.is_disjoint(seen));
                prop_assert!(g.is_connected_within(*c));
                seen = seen.union(*c);
            }
            prop_assert_eq!(seen, g.vertices());
        }
    }
}
