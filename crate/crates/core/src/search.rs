//! Deciding and enumerating critical colourings.
//!
//! A graph admits a critical colouring for `(t, k)` iff its vertex set splits
//! into blocks of at most `k - 1` vertices, each inducing a connected
//! subgraph, such that the cross graph (edges between different blocks) is
//! `K_t`-free. The blue components of a critical colouring form such a
//! partition; conversely colouring the inside of every block blue and the
//! rest red is critical. The search below explores exactly these partitions.
//!
//! Blocks are committed whole: once a block is chosen every edge leaving it
//! is known to be red, so the known cross graph only grows along a branch and
//! a `K_t` in it prunes the whole subtree. At every node all connected
//! candidate blocks among the unassigned vertices are generated once, the
//! ones that would close a `K_t` are discarded, and the search branches on
//! the unassigned vertex with the fewest surviving candidates.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::coloring::{is_witness, BlockPartition, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{has_clique_in, lex_key, Graph, VertexSet};

/// Limits for a single search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBudget {
    pub node_cap: u64,
    pub time_cap: Duration,
    pub enumeration_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_cap: 100_000_000,
            time_cap: Duration::from_secs(600),
            enumeration_cap: 1_000_000,
        }
    }
}

impl SearchBudget {
    pub fn new(node_cap: u64, time_cap_secs: f64, enumeration_cap: usize) -> Result<Self> {
        if node_cap == 0 || enumeration_cap == 0 || time_cap_secs <= 0.0 || !time_cap_secs.is_finite() {
            return Err(Error::InvalidParams("search budget caps must be positive".into()));
        }
        Ok(SearchBudget {
            node_cap,
            time_cap: Duration::from_secs_f64(time_cap_secs),
            enumeration_cap,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<BlockPartition>,
    pub nodes_visited: u64,
    pub elapsed: Duration,
}

/// Wire form `{status, blocks, nodes, millis}`.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub status: SearchStatus,
    pub blocks: Option<Vec<Vec<usize>>>,
    pub nodes: u64,
    pub millis: f64,
}

impl SearchOutcome {
    pub fn record(&self) -> WitnessRecord {
        WitnessRecord {
            status: self.status,
            blocks: self.witness.as_ref().map(|w| w.to_lists()),
            nodes: self.nodes_visited,
            millis: self.elapsed.as_secs_f64() * 1e3,
        }
    }
}

fn check_params(t: usize, k: usize) -> Result<()> {
    if t < 3 || k < 3 {
        return Err(Error::InvalidParams(format!("need t >= 3 and k >= 3, got t={t}, k={k}")));
    }
    Ok(())
}

/// What the engine reports back at a complete partition.
trait Visitor {
    /// Return `false` to stop the whole search.
    fn leaf(&mut self, blocks: &[VertexSet], cross: &[VertexSet]) -> bool;

    /// Whether a subtree whose chosen blocks force at least `blue_floor` blue
    /// edges can be skipped.
    fn prune(&self, _blue_floor: usize) -> bool {
        false
    }
}

struct Engine<'a> {
    g: &'a Graph,
    t: usize,
    max_block: usize,
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
    aborted: bool,
    assigned: VertexSet,
    cross: Vec<VertexSet>,
    blocks: Vec<VertexSet>,
    blue_floor: usize,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, t: usize, k: usize, budget: SearchBudget) -> Self {
        Engine {
            g,
            t,
            max_block: k - 1,
            budget,
            start: Instant::now(),
            nodes: 0,
            aborted: false,
            assigned: VertexSet::EMPTY,
            cross: vec![VertexSet::EMPTY; g.order()],
            blocks: Vec::new(),
            blue_floor: 0,
        }
    }

    fn over_budget(&self) -> bool {
        self.nodes > self.budget.node_cap || self.start.elapsed() > self.budget.time_cap
    }

    /// Cross edges created by committing `s` as a block: every edge from `s`
    /// to an unassigned vertex outside `s`.
    fn new_cross(&self, s: VertexSet, unassigned: VertexSet) -> impl Iterator<Item = (usize, VertexSet)> + '_ {
        let outside = unassigned.difference(s);
        s.iter().map(move |v| (v, self.g.neighbors(v).intersection(outside)))
    }

    /// Whether committing `s` keeps the known cross graph `K_t`-free.
    /// Any new `K_t` must use exactly one vertex of `s`.
    fn feasible(&self, s: VertexSet, unassigned: VertexSet, scratch: &mut Vec<VertexSet>) -> bool {
        scratch.clear();
        scratch.extend_from_slice(&self.cross);
        for (v, fresh) in self.new_cross(s, unassigned) {
            scratch[v] = scratch[v].union(fresh);
            for w in fresh.iter() {
                scratch[w].insert(v);
            }
        }
        s.iter().all(|v| !has_clique_in(scratch, scratch[v], self.t - 1))
    }

    /// Connected subsets of `unassigned` with at most `max_block` vertices.
    fn candidate_blocks(&self, unassigned: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for root in unassigned.iter() {
            let ext = self.g.neighbors(root).intersection(unassigned).above(root);
            self.extend(VertexSet::singleton(root), ext, root, unassigned, &mut out);
        }
        out
    }

    // ESU-style enumeration: each connected set is produced once, from its
    // minimum vertex.
    fn extend(&self, s: VertexSet, mut ext: VertexSet, root: usize, allowed: VertexSet, out: &mut Vec<VertexSet>) {
        out.push(s);
        if s.len() == self.max_block {
            return;
        }
        let closed: VertexSet = s.iter().fold(s, |acc, v| acc.union(self.g.neighbors(v)));
        while let Some(w) = ext.first() {
            ext.remove(w);
            let excl = self
                .g
                .neighbors(w)
                .intersection(allowed)
                .above(root)
                .difference(closed);
            self.extend(s.with(w), ext.union(excl), root, allowed, out);
        }
    }

    fn descend<V: Visitor>(&mut self, visitor: &mut V) -> bool {
        self.nodes += 1;
        if self.over_budget() {
            self.aborted = true;
            return false;
        }
        let unassigned = self.g.vertices().difference(self.assigned);
        if unassigned.is_empty() {
            return visitor.leaf(&self.blocks, &self.cross);
        }
        if visitor.prune(self.blue_floor) {
            return true;
        }

        let mut scratch = Vec::with_capacity(self.cross.len());
        let mut options: Vec<VertexSet> = self
            .candidate_blocks(unassigned)
            .into_iter()
            .filter(|&s| self.feasible(s, unassigned, &mut scratch))
            .collect();

        let mut count = vec![0usize; self.g.order()];
        for s in &options {
            for v in s.iter() {
                count[v] += 1;
            }
        }
        let pivot = unassigned.iter().min_by_key(|&v| (count[v], v)).expect("nonempty");
        if count[pivot] == 0 {
            return true;
        }
        options.retain(|s| s.contains(pivot));
        // Larger blocks first: they hide the most edges from the cross graph.
        options.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| lex_key(*a).cmp(&lex_key(*b))));

        for s in options {
            let saved = self.cross.clone();
            let fresh: Vec<_> = self.new_cross(s, unassigned).collect();
            for (v, f) in fresh {
                self.cross[v] = self.cross[v].union(f);
                for w in f.iter() {
                    self.cross[w].insert(v);
                }
            }
            self.assigned = self.assigned.union(s);
            self.blocks.push(s);
            self.blue_floor += s.len() - 1;

            let keep_going = self.descend(visitor);

            self.blue_floor -= s.len() - 1;
            self.blocks.pop();
            self.assigned = self.assigned.difference(s);
            self.cross = saved;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

struct FirstWitness {
    found: Option<Vec<VertexSet>>,
}

impl Visitor for FirstWitness {
    fn leaf(&mut self, blocks: &[VertexSet], _cross: &[VertexSet]) -> bool {
        self.found = Some(blocks.to_vec());
        false
    }
}

/// Search for a critical colouring, returned as its blue block partition.
pub fn exists_critical_coloring(g: &Graph, t: usize, k: usize, budget: SearchBudget) -> Result<SearchOutcome> {
    check_params(t, k)?;
    let mut engine = Engine::new(g, t, k, budget);
    let mut visitor = FirstWitness { found: None };
    engine.descend(&mut visitor);
    let elapsed = engine.start.elapsed();
    let outcome = match visitor.found {
        Some(blocks) => {
            let p = BlockPartition::new(g.order(), blocks).expect("search yields a partition");
            assert!(is_witness(g, &p, t, k), "search produced an invalid witness {p:?}");
            SearchOutcome { status: SearchStatus::Found, witness: Some(p), nodes_visited: engine.nodes, elapsed }
        }
        None if engine.aborted => SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            witness: None,
            nodes_visited: engine.nodes,
            elapsed,
        },
        None => SearchOutcome { status: SearchStatus::Exhausted, witness: None, nodes_visited: engine.nodes, elapsed },
    };
    Ok(outcome)
}

/// `G -> (K_t, T_k)`: every colouring has a red `K_t` or a blue tree on `k`
/// vertices. Budget exhaustion is an error, never a verdict.
pub fn arrows(g: &Graph, t: usize, k: usize, budget: SearchBudget) -> Result<bool> {
    let out = exists_critical_coloring(g, t, k, budget)?;
    match out.status {
        SearchStatus::Found => Ok(false),
        SearchStatus::Exhausted => Ok(true),
        SearchStatus::BudgetExceeded => Err(Error::Indeterminate { nodes: out.nodes_visited }),
    }
}

/// Largest edge count [`brute_force_exists`] accepts.
pub const BRUTE_FORCE_EDGE_CAP: usize = 20;

/// Try all `2^e` colourings. Independent of the partition search.
pub fn brute_force_exists(g: &Graph, t: usize, k: usize) -> Result<bool> {
    check_params(t, k)?;
    let edges = g.edges();
    if edges.len() > BRUTE_FORCE_EDGE_CAP {
        return Err(Error::CapExceeded { what: "edge count", value: edges.len(), cap: BRUTE_FORCE_EDGE_CAP });
    }
    for mask in 0u32..(1u32 << edges.len()) {
        let blue: Vec<_> = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let c = EdgeColoring::from_blue_edges(g, &blue).expect("edges of g");
        if c.is_critical(t, k) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Blue edge sets of `G[block]` forming a connected spanning subgraph,
/// ordered by size then lexicographically.
fn spanning_blue_options(g: &Graph, block: VertexSet) -> Vec<Vec<(usize, usize)>> {
    let inner: Vec<(usize, usize)> = g.induced_edges(block);
    if block.len() == 1 {
        return vec![Vec::new()];
    }
    assert!(inner.len() <= 24, "block too dense to enumerate spanning subgraphs");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << inner.len()) {
        if (mask.count_ones() as usize) < block.len() - 1 {
            continue;
        }
        let chosen: Vec<_> = (0..inner.len()).filter(|i| (mask >> i) & 1 == 1).map(|i| inner[i]).collect();
        let mut h = Graph::empty(g.order());
        for &(u, v) in &chosen {
            h.insert_edge(u, v);
        }
        if h.is_connected_within(block) {
            out.push(chosen);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Red rows given the base graph and the chosen blue edges.
fn red_rows(g: &Graph, blue: &[(usize, usize)]) -> Vec<VertexSet> {
    let mut rows = g.rows().to_vec();
    for &(u, v) in blue {
        rows[u].remove(v);
        rows[v].remove(u);
    }
    rows
}

fn red_has_clique(rows: &[VertexSet], t: usize) -> bool {
    let all = VertexSet::full(rows.len());
    has_clique_in(rows, all, t)
}

/// Walk every combination of per-block blue spanning subgraphs; `visit`
/// receives the blue edge list of each critical combination. `limit` bounds
/// the number of blue edges (combinations above it are skipped).
fn for_each_block_coloring(
    g: &Graph,
    t: usize,
    blocks: &[VertexSet],
    limit: Option<&dyn Fn() -> usize>,
    visit: &mut dyn FnMut(Vec<(usize, usize)>) -> bool,
) -> bool {
    let options: Vec<_> = blocks.iter().map(|b| spanning_blue_options(g, *b)).collect();
    fn rec(
        g: &Graph,
        t: usize,
        options: &[Vec<Vec<(usize, usize)>>],
        idx: usize,
        acc: &mut Vec<(usize, usize)>,
        limit: Option<&dyn Fn() -> usize>,
        visit: &mut dyn FnMut(Vec<(usize, usize)>) -> bool,
    ) -> bool {
        if let Some(l) = limit {
            let floor: usize = acc.len() + options[idx..].iter().map(|o| o[0].len()).sum::<usize>();
            if floor > l() {
                return true;
            }
        }
        if idx == options.len() {
            if red_has_clique(&red_rows(g, acc), t) {
                return true;
            }
            let mut blue = acc.clone();
            blue.sort_unstable();
            return visit(blue);
        }
        for choice in &options[idx] {
            let mark = acc.len();
            acc.extend_from_slice(choice);
            let go = rec(g, t, options, idx + 1, acc, limit, visit);
            acc.truncate(mark);
            if !go {
                return false;
            }
        }
        true
    }
    rec(g, t, &options, 0, &mut Vec::new(), limit, visit)
}

/// Every critical colouring found, in canonical order.
#[derive(Clone, Debug)]
pub struct Enumeration<'g> {
    pub colorings: Vec<EdgeColoring<'g>>,
    /// The enumeration cap cut the listing short.
    pub truncated: bool,
    /// The node or time cap stopped the search.
    pub budget_exceeded: bool,
    pub nodes_visited: u64,
}

type BlockList = Vec<Vec<usize>>;
type EdgeList = Vec<(usize, usize)>;

struct Collect<'g> {
    g: &'g Graph,
    t: usize,
    cap: usize,
    found: Vec<(BlockList, EdgeList)>,
    truncated: bool,
}

impl Visitor for Collect<'_> {
    fn leaf(&mut self, blocks: &[VertexSet], _cross: &[VertexSet]) -> bool {
        let p = BlockPartition::new(self.g.order(), blocks.to_vec()).expect("partition");
        let key = p.canonical_key();
        let cap = self.cap;
        let found = &mut self.found;
        let mut truncated = false;
        for_each_block_coloring(self.g, self.t, p.blocks(), None, &mut |blue| {
            if found.len() >= cap {
                truncated = true;
                return false;
            }
            found.push((key.clone(), blue));
            true
        });
        self.truncated |= truncated;
        !truncated
    }
}

/// Every critical colouring of `g`, each exactly once.
pub fn enumerate_critical_colorings<'g>(
    g: &'g Graph,
    t: usize,
    k: usize,
    budget: SearchBudget,
) -> Result<Enumeration<'g>> {
    check_params(t, k)?;
    let mut engine = Engine::new(g, t, k, budget);
    let mut visitor = Collect { g, t, cap: budget.enumeration_cap, found: Vec::new(), truncated: false };
    engine.descend(&mut visitor);
    let mut found = visitor.found;
    found.sort();
    let colorings = found
        .into_iter()
        .map(|(_, blue)| EdgeColoring::from_blue_edges(g, &blue).expect("blue edges of g"))
        .collect();
    Ok(Enumeration {
        colorings,
        truncated: visitor.truncated,
        budget_exceeded: engine.aborted,
        nodes_visited: engine.nodes,
    })
}

struct MaxRed<'g> {
    g: &'g Graph,
    t: usize,
    best: Option<(usize, BlockList, EdgeList)>,
}

impl Visitor for MaxRed<'_> {
    fn leaf(&mut self, blocks: &[VertexSet], _cross: &[VertexSet]) -> bool {
        let p = BlockPartition::new(self.g.order(), blocks.to_vec()).expect("partition");
        let key = p.canonical_key();
        let best = std::cell::RefCell::new(self.best.take());
        let limit = || best.borrow().as_ref().map_or(usize::MAX, |b| b.0);
        for_each_block_coloring(self.g, self.t, p.blocks(), Some(&limit), &mut |blue| {
            let cand = (blue.len(), key.clone(), blue);
            let mut b = best.borrow_mut();
            if b.as_ref().is_none_or(|cur| cand < *cur) {
                *b = Some(cand);
            }
            true
        });
        self.best = best.into_inner();
        true
    }

    fn prune(&self, blue_floor: usize) -> bool {
        self.best.as_ref().is_some_and(|b| blue_floor > b.0)
    }
}

/// A critical colouring with the most red edges; ties go to the canonical
/// order (partition key, then blue edge list). `None` if `g` has no critical
/// colouring.
pub fn max_red_critical_coloring<'g>(
    g: &'g Graph,
    t: usize,
    k: usize,
    budget: SearchBudget,
) -> Result<Option<EdgeColoring<'g>>> {
    check_params(t, k)?;
    let mut engine = Engine::new(g, t, k, budget);
    let mut visitor = MaxRed { g, t, best: None };
    engine.descend(&mut visitor);
    if engine.aborted {
        return Err(Error::Indeterminate { nodes: engine.nodes });
    }
    Ok(visitor
        .best
        .map(|(_, _, blue)| EdgeColoring::from_blue_edges(g, &blue).expect("blue edges of g")))
}
