//! Canonical labelling for small graphs, isomorphism-free generation and
//! seeded random graphs.
//!
//! Canonical form: iterated neighbourhood refinement of an ordered vertex
//! partition, then individualisation of each vertex of the first non-trivial
//! cell, recursively, keeping the lexicographically smallest relabelled
//! adjacency matrix over all leaves. No automorphism pruning; this is meant
//! for graphs of a dozen vertices or fewer.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order [`all_graphs`] will generate.
pub const GENERATION_CAP: usize = 8;

type Cells = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Cells) -> Cells {
    loop {
        let masks: Vec<VertexSet> = cells.iter().map(|c| c.iter().copied().collect()).collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| g.neighbors(v).intersection(*m).len()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn encode(g: &Graph, order: &[usize]) -> Vec<u128> {
    let n = order.len();
    let mut label = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        label[v] = i;
    }
    (0..n)
        .map(|i| {
            let v = order[i];
            g.neighbors(v).iter().fold(0u128, |acc, u| acc | (1u128 << label[u]))
        })
        .collect()
}

fn search(g: &Graph, cells: Cells, best: &mut Option<(Vec<u128>, Vec<usize>)>) {
    let Some(idx) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().flatten().collect();
        let code = encode(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    for &v in &cells[idx] {
        let mut split = cells[..idx].to_vec();
        split.push(vec![v]);
        split.push(cells[idx].iter().copied().filter(|&u| u != v).collect());
        split.extend_from_slice(&cells[idx + 1..]);
        search(g, refine(g, split), best);
    }
}

/// Canonical labelling: `order[i]` is the vertex that receives label `i`.
pub fn canonical_order(g: &Graph) -> Vec<usize> {
    let cells = refine(g, vec![(0..g.order()).collect()]);
    let mut best = None;
    search(g, cells, &mut best);
    best.expect("at least one leaf").1
}

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let order = canonical_order(g);
    let mut perm = vec![0; g.order()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    g.permute(&perm)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// One canonical representative of every graph on `n` vertices, sorted by
/// edge count then by graph6 string.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > GENERATION_CAP {
        return Err(Error::CapExceeded { what: "generation order", value: n, cap: GENERATION_CAP });
    }
    let mut level = vec![Graph::empty(1)];
    for m in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..(1u32 << (m - 1)) {
                let mut rows = g.rows().to_vec();
                rows.push(VertexSet::from_bits(mask as u128));
                for (u, row) in rows.iter_mut().enumerate().take(m - 1) {
                    if (mask >> u) & 1 == 1 {
                        row.insert(m - 1);
                    }
                }
                let h = canonical_form(&Graph::from_rows(rows).expect("augmented graph"));
                if seen.insert(h.rows().to_vec()) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    let mut keyed: Vec<_> = level
        .into_iter()
        .map(|g| ((g.edge_count(), crate::io::emit_graph6(&g)), g))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

/// Uniform graph with exactly `m` edges on `n` vertices.
pub fn random_gnm<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Graph {
    let mut pairs = Graph::complete(n).edges();
    assert!(m <= pairs.len(), "too many edges requested");
    pairs.shuffle(rng);
    pairs.truncate(m);
    Graph::from_edges(n, &pairs).expect("valid pairs")
}

/// Each pair present independently with probability `p`.
pub fn random_gnp<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let pairs: Vec<_> = Graph::complete(n).edges().into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &pairs).expect("valid pairs")
}

/// Uniformly random relabelling of `g`.
pub fn random_relabel<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.permute(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_counts_match_known_sequence() {
        let expected = [1, 2, 4, 11, 34, 156, 1044];
        for (i, &count) in expected.iter().enumerate() {
            assert_eq!(all_graphs(i + 1).unwrap().len(), count, "n={}", i + 1);
        }
        assert!(all_graphs(9).is_err());
    }

    #[test]
    fn canonical_form_is_relabelling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let g = random_gnp(&mut rng, n, 0.5);
            let h = random_relabel(&mut rng, &g);
            assert_eq!(canonical_form(&g), canonical_form(&h));
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // C_6 versus two disjoint triangles: both 2-regular on 6 vertices
        let c6 = Graph::cycle(6);
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3)).unwrap();
        assert!(!is_isomorphic(&c6, &two_k3));
        assert!(is_isomorphic(&Graph::cycle(5), &Graph::cycle(5).complement()));
    }

    #[test]
    fn gnm_has_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_gnm(&mut rng, 9, 16);
        assert_eq!((g.order(), g.edge_count()), (9, 16));
    }
}
