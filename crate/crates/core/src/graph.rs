//! Simple undirected graphs on at most [`MAX_ORDER`] vertices, stored as
//! fixed-width adjacency bit rows.
//!
//! Every search in the crate is built on neighbourhood intersection, so the
//! row type [`VertexSet`] is a single `u128` and all set algebra is a handful
//! of word operations.

use std::fmt;

use crate::error::GraphError;

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 128;

/// Default guard for exhaustive stable-set enumeration.
pub const STABLE_SET_CAP: usize = 24;

/// A set of vertex ids drawn from `0..MAX_ORDER`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        if n == MAX_ORDER {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u128 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u128 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members strictly greater than `v`.
    #[inline]
    pub fn above(self, v: usize) -> Self {
        if v + 1 >= MAX_ORDER {
            VertexSet(0)
        } else {
            VertexSet(self.0 & (u128::MAX << (v + 1)))
        }
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Members(u128);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Lexicographic comparison key of a vertex set (its sorted member list).
pub fn lex_key(s: VertexSet) -> Vec<usize> {
    s.to_vec()
}

/// A simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order, self.edges())
    }
}

impl Graph {
    /// Validated construction from an edge list; duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyOrder);
        }
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        Graph { order: n, adj: vec![VertexSet::EMPTY; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        let all = VertexSet::full(n);
        for v in 0..n {
            g.adj[v] = all.without(v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.insert_edge(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.insert_edge(v - 1, v);
        }
        g
    }

    /// Build directly from adjacency rows. Rows must be symmetric and loop-free.
    pub fn from_rows(rows: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let all = VertexSet::full(n);
        for (v, row) in rows.iter().enumerate() {
            if !row.is_subset(all) {
                return Err(GraphError::VertexOutOfRange {
                    vertex: row.difference(all).first().unwrap_or(n),
                    order: n,
                });
            }
            if row.contains(v) {
                return Err(GraphError::SelfLoop { vertex: v });
            }
            for u in row.iter() {
                if !rows[u].contains(v) {
                    return Err(GraphError::Asymmetric { u: v, v: u });
                }
            }
        }
        Ok(Graph { order: n, adj: rows })
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order && v < self.order);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    /// `self - uv`.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    /// `self + uv`.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.insert_edge(u, v);
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order {
            for v in self.adj[u].above(u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, lexicographic.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let all = self.vertices();
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in all.difference(self.adj[u]).above(u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order;
        self.edge_count() == n * (n - 1) / 2
    }

    /// Edges with both ends in `s`, original ids, lexicographic.
    pub fn induced_edges(&self, s: VertexSet) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in s.iter() {
            for v in self.adj[u].intersection(s).above(u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.adj[v].intersection(s).len()).sum::<usize>() / 2
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint sets).
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        debug_assert!(a.is_disjoint(b));
        a.iter().map(|v| self.adj[v].intersection(b).len()).sum()
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.order)
            .map(|v| all.difference(self.adj[v]).without(v))
            .collect();
        Graph { order: self.order, adj }
    }

    /// Disjoint copies of `self` (ids kept) and `other` (ids shifted by `|self|`).
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order + other.order;
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let shift = self.order;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| VertexSet::from_bits(r.bits() << shift)));
        Ok(Graph { order: n, adj })
    }

    /// Disjoint union plus every edge between the two copies.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = VertexSet::full(self.order);
        let right = g.vertices().difference(left);
        for v in left.iter() {
            g.adj[v] = g.adj[v].union(right);
        }
        for v in right.iter() {
            g.adj[v] = g.adj[v].union(left);
        }
        Ok(g)
    }

    /// Subgraph induced on `s`, relabelled to `0..|s|` in increasing id order.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let members = s.to_vec();
        let mut g = Graph::empty(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }

    /// `g` with vertex `v` renamed to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut g = Graph::empty(self.order);
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        g
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reachable(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while let Some(v) = frontier.first() {
            frontier.remove(v);
            let fresh = self.adj[v].intersection(within).difference(seen);
            seen = seen.union(fresh);
            frontier = frontier.union(fresh);
        }
        seen
    }

    /// Whether `G[s]` is connected (the empty set counts as connected).
    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.reachable(v, s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// Connected components, sorted by minimum member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reachable(v, rest);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    /// Whether the graph contains a clique on `size` vertices.
    pub fn has_clique(&self, size: usize) -> bool {
        has_clique_in(&self.adj, self.vertices(), size)
    }

    /// Whether some clique on `size` vertices contains the edge `uv`.
    pub fn clique_through_edge(&self, u: usize, v: usize, size: usize) -> bool {
        if size < 2 || !self.has_edge(u, v) {
            return false;
        }
        has_clique_in(&self.adj, self.adj[u].intersection(self.adj[v]), size - 2)
    }

    /// Every clique of exactly `size` vertices, lexicographic by sorted members.
    pub fn cliques(&self, size: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.for_each_clique(size, |c| {
            out.push(c);
            true
        });
        out
    }

    /// Streaming form of [`Graph::cliques`]; `visit` returns `false` to stop.
    pub fn for_each_clique<F: FnMut(VertexSet) -> bool>(&self, size: usize, mut visit: F) {
        if size == 0 {
            visit(VertexSet::EMPTY);
            return;
        }
        enumerate_cliques_in(&self.adj, VertexSet::EMPTY, self.vertices(), size, &mut visit);
    }

    /// Clique number.
    pub fn clique_number(&self) -> usize {
        let mut best = 0;
        while has_clique_in(&self.adj, self.vertices(), best + 1) {
            best += 1;
        }
        best
    }

    /// Independence number and every maximum stable set (lexicographic).
    pub fn max_stable_sets(&self) -> Result<(usize, Vec<VertexSet>), GraphError> {
        self.max_stable_sets_capped(STABLE_SET_CAP)
    }

    pub fn max_stable_sets_capped(&self, cap: usize) -> Result<(usize, Vec<VertexSet>), GraphError> {
        if self.order > cap {
            return Err(GraphError::TooLargeForExhaustive { order: self.order, cap });
        }
        let mut best = 0usize;
        let mut family = Vec::new();
        stable_branch(&self.adj, VertexSet::EMPTY, self.vertices(), &mut best, &mut family);
        family.sort_by_key(|s| lex_key(*s));
        Ok((best, family))
    }
}

/// Whether `candidates` (under adjacency `adj`) hold a clique of `size` vertices.
pub(crate) fn has_clique_in(adj: &[VertexSet], candidates: VertexSet, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if candidates.len() < size {
        return false;
    }
    if size == 1 {
        return true;
    }
    let mut rest = candidates;
    while let Some(v) = rest.first() {
        if rest.len() < size {
            return false;
        }
        rest.remove(v);
        let next = rest.intersection(adj[v]);
        if next.len() + 1 >= size && has_clique_in(adj, next, size - 1) {
            return true;
        }
    }
    false
}

fn enumerate_cliques_in<F: FnMut(VertexSet) -> bool>(
    adj: &[VertexSet],
    current: VertexSet,
    candidates: VertexSet,
    remaining: usize,
    visit: &mut F,
) -> bool {
    let mut rest = candidates;
    while let Some(v) = rest.first() {
        if rest.len() < remaining {
            break;
        }
        rest.remove(v);
        let chosen = current.with(v);
        if remaining == 1 {
            if !visit(chosen) {
                return false;
            }
        } else {
            let next = rest.intersection(adj[v]);
            if next.len() + 1 >= remaining
                && !enumerate_cliques_in(adj, chosen, next, remaining - 1, visit)
            {
                return false;
            }
        }
    }
    true
}

fn stable_branch(
    adj: &[VertexSet],
    current: VertexSet,
    candidates: VertexSet,
    best: &mut usize,
    family: &mut Vec<VertexSet>,
) {
    let Some(v) = candidates.first() else {
        let size = current.len();
        if size > *best {
            *best = size;
            family.clear();
        }
        if size == *best {
            family.push(current);
        }
        return;
    };
    if current.len() + candidates.len() < *best {
        return;
    }
    stable_branch(adj, current.with(v), candidates.difference(adj[v]).without(v), best, family);
    stable_branch(adj, current, candidates.without(v), best, family);
}
