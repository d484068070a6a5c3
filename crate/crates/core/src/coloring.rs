//! Red/blue edge colourings, block partitions and the cross graph.
//!
//! A colouring is *critical* for `(t, k)` when the red graph has no `K_t` and
//! the blue graph has no tree on `k` vertices. A connected graph on at least
//! `k` vertices always contains such a tree, so the blue condition is checked
//! as "every blue component has at most `k - 1` vertices".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{lex_key, Graph, VertexSet};
use crate::io::{emit_graph6, parse_graph6};

/// Partition of `0..n` into blocks, kept in canonical order (by minimum member).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    blocks: Vec<VertexSet>,
    owner: Vec<usize>,
    max_block: usize,
}

impl BlockPartition {
    pub fn new(order: usize, mut blocks: Vec<VertexSet>) -> Result<Self> {
        let all = VertexSet::full(order);
        let mut seen = VertexSet::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            if !b.is_subset(all) {
                return Err(Error::BadPartition(format!("block {b:?} leaves 0..{order}")));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::BadPartition(format!("block {b:?} overlaps an earlier block")));
            }
            seen = seen.union(*b);
        }
        if seen != all {
            return Err(Error::BadPartition(format!(
                "vertices {:?} not covered",
                all.difference(seen)
            )));
        }
        blocks.sort_by_key(|b| b.first());
        let mut owner = vec![0; order];
        for (i, b) in blocks.iter().enumerate() {
            for v in b.iter() {
                owner[v] = i;
            }
        }
        let max_block = blocks.iter().map(|b| b.len()).max().unwrap_or(0);
        Ok(BlockPartition { blocks, owner, max_block })
    }

    pub fn singletons(order: usize) -> Self {
        Self::new(order, (0..order).map(VertexSet::singleton).collect()).expect("singletons partition")
    }

    pub fn whole(order: usize) -> Self {
        Self::new(order, vec![VertexSet::full(order)]).expect("one-block partition")
    }

    pub fn from_lists(order: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let blocks = lists
            .iter()
            .map(|l| {
                if let Some(&v) = l.iter().find(|&&v| v >= order) {
                    return Err(Error::BadPartition(format!("vertex {v} out of range")));
                }
                Ok(l.iter().copied().collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, blocks)
    }

    pub fn order(&self) -> usize {
        self.owner.len()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn max_block(&self) -> usize {
        self.max_block
    }

    /// Index of the block containing `v`.
    pub fn block_index(&self, v: usize) -> usize {
        self.owner[v]
    }

    pub fn block_of(&self, v: usize) -> VertexSet {
        self.blocks[self.owner[v]]
    }

    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.owner[u] == self.owner[v]
    }

    /// Block sizes in canonical block order.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// Block sizes sorted descending.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut s = self.sizes();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.to_vec()).collect()
    }

    /// Total order used for canonical tie-breaking.
    pub fn canonical_key(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| lex_key(*b)).collect()
    }

    /// Split each block into the components it induces in `g`.
    pub fn split_into_components(&self, g: &Graph) -> BlockPartition {
        let mut blocks = Vec::new();
        for &b in &self.blocks {
            let mut rest = b;
            while let Some(v) = rest.first() {
                let c = g.reachable(v, rest);
                rest = rest.difference(c);
                blocks.push(c);
            }
        }
        BlockPartition::new(self.order(), blocks).expect("refinement of a partition")
    }

    /// Blocks of size `< limit`.
    pub fn blocks_smaller_than(&self, limit: usize) -> Vec<VertexSet> {
        self.blocks.iter().copied().filter(|b| b.len() < limit).collect()
    }
}

impl Serialize for BlockPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_lists().serialize(s)
    }
}

/// The graph with every edge inside a block removed.
pub fn cross_graph(g: &Graph, p: &BlockPartition) -> Result<Graph> {
    if p.order() != g.order() {
        return Err(Error::BadPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.order(),
            g.order()
        )));
    }
    let rows = (0..g.order())
        .map(|v| g.neighbors(v).difference(p.block_of(v)))
        .collect();
    Ok(Graph::from_rows(rows)?)
}

/// Colour every edge inside a block blue and every other edge red.
pub fn partition_to_coloring<'g>(g: &'g Graph, p: &BlockPartition) -> Result<EdgeColoring<'g>> {
    if p.order() != g.order() {
        return Err(Error::BadPartition("partition does not match graph order".into()));
    }
    let rows = (0..g.order())
        .map(|v| g.neighbors(v).intersection(p.block_of(v)))
        .collect();
    Ok(EdgeColoring { base: g, blue: Graph::from_rows(rows)? })
}

/// Whether `p` is a witness of non-arrowing: every block has at most
/// `k - 1` vertices and induces a connected subgraph, and the cross graph
/// is `K_t`-free.
pub fn is_witness(g: &Graph, p: &BlockPartition, t: usize, k: usize) -> bool {
    p.order() == g.order()
        && p.blocks().iter().all(|b| b.len() < k && g.is_connected_within(*b))
        && cross_graph(g, p).map(|h| !h.has_clique(t)).unwrap_or(false)
}

/// A red/blue colouring of the edges of `base`; red is everything not blue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring<'g> {
    base: &'g Graph,
    blue: Graph,
}

impl<'g> EdgeColoring<'g> {
    /// Colour the listed edges blue and the rest red.
    pub fn from_blue_edges(base: &'g Graph, blue: &[(usize, usize)]) -> Result<Self> {
        let mut b = Graph::empty(base.order());
        for &(u, v) in blue {
            if !base.has_edge(u, v) {
                return Err(Error::EdgeNotInBase { u, v });
            }
            b.insert_edge(u, v);
        }
        Ok(EdgeColoring { base, blue: b })
    }

    /// Both colour classes listed explicitly; they must partition `E(base)`.
    pub fn from_classes(base: &'g Graph, red: &[(usize, usize)], blue: &[(usize, usize)]) -> Result<Self> {
        let c = Self::from_blue_edges(base, blue)?;
        let mut red_g = Graph::empty(base.order());
        for &(u, v) in red {
            if !base.has_edge(u, v) {
                return Err(Error::EdgeNotInBase { u, v });
            }
            if c.blue.has_edge(u, v) {
                return Err(Error::NotAPartition { u, v });
            }
            red_g.insert_edge(u, v);
        }
        if red_g.edge_count() + c.blue.edge_count() != base.edge_count() {
            let (u, v) = base
                .edges()
                .into_iter()
                .find(|&(u, v)| !red_g.has_edge(u, v) && !c.blue.has_edge(u, v))
                .expect("uncoloured edge");
            return Err(Error::NotAPartition { u, v });
        }
        Ok(c)
    }

    /// Blue subgraph given as a spanning subgraph of `base`.
    pub fn from_blue_graph(base: &'g Graph, blue: Graph) -> Result<Self> {
        if blue.order() != base.order() {
            return Err(Error::InvalidParams("blue graph order differs from base".into()));
        }
        for (u, v) in blue.edges() {
            if !base.has_edge(u, v) {
                return Err(Error::EdgeNotInBase { u, v });
            }
        }
        Ok(EdgeColoring { base, blue })
    }

    pub fn all_red(base: &'g Graph) -> Self {
        EdgeColoring { base, blue: Graph::empty(base.order()) }
    }

    pub fn base(&self) -> &'g Graph {
        self.base
    }

    pub fn red_graph(&self) -> Graph {
        let rows = (0..self.base.order())
            .map(|v| self.base.neighbors(v).difference(self.blue.neighbors(v)))
            .collect();
        Graph::from_rows(rows).expect("difference of symmetric rows")
    }

    pub fn blue_graph(&self) -> Graph {
        self.blue.clone()
    }

    pub fn is_blue(&self, u: usize, v: usize) -> bool {
        self.blue.has_edge(u, v)
    }

    pub fn blue_count(&self) -> usize {
        self.blue.edge_count()
    }

    pub fn red_count(&self) -> usize {
        self.base.edge_count() - self.blue.edge_count()
    }

    pub fn blue_edges(&self) -> Vec<(usize, usize)> {
        self.blue.edges()
    }

    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        self.red_graph().edges()
    }

    /// No red `K_t` and every blue component has at most `k - 1` vertices.
    pub fn is_critical(&self, t: usize, k: usize) -> bool {
        self.blue.components().iter().all(|c| c.len() < k) && !self.red_graph().has_clique(t)
    }

    /// The blue components as a canonical partition.
    pub fn blue_blocks(&self) -> BlockPartition {
        BlockPartition::new(self.base.order(), self.blue.components()).expect("components partition V")
    }

    pub fn to_record(&self) -> ColoringRecord {
        ColoringRecord {
            graph6: emit_graph6(self.base),
            red: self.red_edges().into_iter().map(|(u, v)| [u, v]).collect(),
            blue: self.blue_edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

/// JSON form of a colouring: `{graph6, red: [[u,v]...], blue: [[u,v]...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRecord {
    pub graph6: String,
    pub red: Vec<[usize; 2]>,
    pub blue: Vec<[usize; 2]>,
}

impl ColoringRecord {
    pub fn base_graph(&self) -> Result<Graph> {
        Ok(parse_graph6(&self.graph6)?)
    }

    /// Rebuild the colouring against `base` (normally `self.base_graph()`).
    pub fn coloring<'g>(&self, base: &'g Graph) -> Result<EdgeColoring<'g>> {
        let pairs = |l: &[[usize; 2]]| l.iter().map(|e| (e[0], e[1])).collect::<Vec<_>>();
        EdgeColoring::from_classes(base, &pairs(&self.red), &pairs(&self.blue))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_matching() -> Graph {
        Graph::complete(4)
    }

    #[test]
    fn red_and_blue_graphs() {
        let g = k4_matching();
        let c = EdgeColoring::all_red(&g);
        assert_eq!(c.red_graph(), g);
        assert_eq!(c.blue_graph(), Graph::empty(4));
        let c = EdgeColoring::from_blue_edges(&g, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(c.red_graph(), Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap());
        assert_eq!(c.red_graph().components().len(), 1);
        assert_eq!(c.red_count() + c.blue_count(), g.edge_count());
    }

    #[test]
    fn critical_examples() {
        let g = Graph::complete(4);
        let c = EdgeColoring::from_blue_edges(&g, &[(0, 1), (2, 3)]).unwrap();
        assert!(c.is_critical(3, 3));
        let k5 = Graph::complete(5);
        let c5 = Graph::cycle(5);
        let blue: Vec<_> = c5.complement().edges();
        let c = EdgeColoring::from_blue_edges(&k5, &blue).unwrap();
        assert_eq!(c.red_graph(), c5);
        assert!(!c.is_critical(3, 3));
        // t > n: red side vacuous, all-red is critical
        assert!(EdgeColoring::all_red(&g).is_critical(5, 3));
    }

    #[test]
    fn blue_block_examples() {
        let g = Graph::complete(4);
        assert_eq!(EdgeColoring::all_red(&g).blue_blocks().len(), 4);
        let tree = EdgeColoring::from_blue_edges(&g, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(tree.blue_blocks().sizes(), vec![4]);
        let m = EdgeColoring::from_blue_edges(&g, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(m.blue_blocks().sizes(), vec![2, 2]);
        assert_eq!(m.blue_blocks().max_block(), 2);
    }

    #[test]
    fn cross_graph_examples() {
        let g = Graph::cycle(6);
        assert_eq!(cross_graph(&g, &BlockPartition::singletons(6)).unwrap(), g);
        assert_eq!(cross_graph(&g, &BlockPartition::whole(6)).unwrap(), Graph::empty(6));
        assert!(cross_graph(&g, &BlockPartition::whole(5)).is_err());
        let p = BlockPartition::from_lists(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let h = cross_graph(&Graph::complete(4), &p).unwrap();
        assert_eq!(h.edge_count(), 4);
    }

    #[test]
    fn partition_to_coloring_examples() {
        let g = Graph::complete(4);
        let c = partition_to_coloring(&g, &BlockPartition::singletons(4)).unwrap();
        assert_eq!(c.blue_count(), 0);
        let p = BlockPartition::from_lists(4, &[vec![2, 3], vec![0, 1]]).unwrap();
        let c = partition_to_coloring(&g, &p).unwrap();
        assert_eq!((c.blue_count(), c.red_count()), (2, 4));
        assert_eq!(c.blue_blocks(), p);
        // a disconnected block is split by blue_blocks
        let path = Graph::path(3);
        let p = BlockPartition::from_lists(3, &[vec![0, 2], vec![1]]).unwrap();
        let c = partition_to_coloring(&path, &p).unwrap();
        assert_eq!(c.blue_blocks(), BlockPartition::singletons(3));
    }

    #[test]
    fn partition_validation() {
        assert!(BlockPartition::from_lists(3, &[vec![0, 1]]).is_err());
        assert!(BlockPartition::from_lists(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(BlockPartition::from_lists(3, &[vec![0, 1, 2], vec![]]).is_err());
        let p = BlockPartition::from_lists(3, &[vec![2], vec![0, 1]]).unwrap();
        assert_eq!(p.to_lists(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn class_validation_and_json() {
        let g = Graph::complete(3);
        assert!(matches!(
            EdgeColoring::from_classes(&g, &[(0, 1)], &[(0, 1), (1, 2), (0, 2)]),
            Err(Error::NotAPartition { .. })
        ));
        assert!(matches!(
            EdgeColoring::from_classes(&g, &[(0, 1)], &[(1, 2)]),
            Err(Error::NotAPartition { u: 0, v: 2 })
        ));
        let p3 = Graph::path(3);
        assert!(matches!(EdgeColoring::from_blue_edges(&p3, &[(0, 2)]), Err(Error::EdgeNotInBase { .. })));
        let c = EdgeColoring::from_blue_edges(&g, &[(0, 1)]).unwrap();
        let rec = c.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"graph6":"Bw","red":[[0,2],[1,2]],"blue":[[0,1]]}"#);
        let back: ColoringRecord = serde_json::from_str(&json).unwrap();
        let base = back.base_graph().unwrap();
        assert_eq!(back.coloring(&base).unwrap().blue_edges(), vec![(0, 1)]);
    }
}
