//! Weighted `q`-neighbour bootstrap percolation with an edge-count
//! certificate.
//!
//! Starting from a seed set `R`, the closure is grown by the `q`-neighbour
//! rule. A vertex `v` outside the closure (in `Y`) has weight
//! `ω(v) = d_closure(v) + d_Y(v)/2` and is *bad* when `ω(v) < q`. While bad
//! vertices remain, `R` absorbs, for each distinct trace `N_R(v)` of a bad
//! vertex, one `Y`-neighbour `x` of a representative, the bad vertices with
//! that trace sharing a block with `x`, and the closure-neighbours of `x`.
//! Once no vertex is bad, summing weights over `Y` gives
//! `e(H) >= q(n - |R|)`, which the certificate re-derives by counting edges.
//!
//! Progress is tracked with the potential `φ(v) = Σ_{x ∈ N(v)} f(x)` where
//! `f` is 1 on `R`, 1/2 on the rest of the closure and `d_R(x)/(2q)` on `Y`.
//! On co-critical inputs every surviving bad vertex gains at least `1/(2q)`
//! per step, which bounds the number of steps by `2q²`. On arbitrary inputs
//! that can fail; [`Mode::Exploratory`] records it instead of aborting.

use serde::Serialize;

use crate::coloring::BlockPartition;
use crate::construction::Rational;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Least fixed point of the `q`-neighbour rule containing `seed`, with the
/// round in which every newly infected vertex joined.
pub fn closure(h: &Graph, seed: VertexSet, q: usize) -> (VertexSet, Vec<(usize, usize)>) {
    let mut cur = seed;
    let mut activations = Vec::new();
    let mut round = 0;
    loop {
        round += 1;
        let fresh: VertexSet = h
            .vertices()
            .difference(cur)
            .iter()
            .filter(|&v| h.neighbors(v).intersection(cur).len() >= q)
            .collect();
        if fresh.is_empty() {
            return (cur, activations);
        }
        activations.extend(fresh.iter().map(|v| (v, round)));
        cur = cur.union(fresh);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Any failed progress or step-count check is an error.
    Strict,
    /// Failed progress checks are recorded and the run continues.
    Exploratory,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Snapshot {
    pub iteration: usize,
    pub r_size: usize,
    pub closure_size: usize,
    pub y_size: usize,
    pub bad_size: usize,
    /// Distinct traces `N_R(v)` over bad `v`.
    pub trace_classes: usize,
    /// `|R| + (k+q-2)·Σ_{j<q} C(|R|, j)` for the previous `R`, `k - 1`
    /// being the largest block.
    pub size_recurrence_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sets: Option<SnapshotSets>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnapshotSets {
    pub r: Vec<usize>,
    pub closure: Vec<usize>,
    pub bad: Vec<usize>,
}

/// One percolation state on a fixed graph and block partition.
#[derive(Clone, Debug)]
pub struct PercolationState<'h> {
    h: &'h Graph,
    partition: &'h BlockPartition,
    q: usize,
    r: VertexSet,
    closure: VertexSet,
    activations: Vec<(usize, usize)>,
    y: VertexSet,
    bad: VertexSet,
    iteration: usize,
}

/// What one step chose.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepChoice {
    /// `(trace, representative, its chosen Y-neighbour)` per distinct trace.
    pub classes: Vec<(Vec<usize>, usize, usize)>,
    pub absorbed_bad: Vec<usize>,
    pub added: Vec<usize>,
}

impl<'h> PercolationState<'h> {
    pub fn new(h: &'h Graph, partition: &'h BlockPartition, q: usize, r: VertexSet) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParams("q must be at least 1".into()));
        }
        if r.is_empty() || !r.is_subset(h.vertices()) {
            return Err(Error::InvalidParams(format!("seed set {r:?} must be a nonempty set of vertices")));
        }
        if partition.order() != h.order() {
            return Err(Error::BadPartition(format!(
                "partition covers {} vertices, graph has {}",
                partition.order(),
                h.order()
            )));
        }
        let (closure, activations) = closure(h, r, q);
        let y = h.vertices().difference(closure);
        let mut state = PercolationState { h, partition, q, r, closure, activations, y, bad: VertexSet::EMPTY, iteration: 0 };
        state.bad = y.iter().filter(|&v| state.omega(v) < Rational::from_integer(q as i64)).collect();
        Ok(state)
    }

    pub fn graph(&self) -> &'h Graph {
        self.h
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> VertexSet {
        self.r
    }

    pub fn closure(&self) -> VertexSet {
        self.closure
    }

    pub fn activation_order(&self) -> &[(usize, usize)] {
        &self.activations
    }

    pub fn y(&self) -> VertexSet {
        self.y
    }

    pub fn bad(&self) -> VertexSet {
        self.bad
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    fn omega(&self, v: usize) -> Rational {
        let nb = self.h.neighbors(v);
        Rational::from_integer(nb.intersection(self.closure).len() as i64)
            + Rational::new(nb.intersection(self.y).len() as i64, 2)
    }

    /// `d_closure(v) + d_Y(v)/2`, defined on `Y` only.
    pub fn weight(&self, v: usize) -> Result<Rational> {
        if !self.y.contains(v) {
            return Err(Error::Precondition(format!("vertex {v} is not outside the closure")));
        }
        Ok(self.omega(v))
    }

    pub fn f(&self, x: usize) -> Rational {
        if self.r.contains(x) {
            Rational::from_integer(1)
        } else if self.closure.contains(x) {
            Rational::new(1, 2)
        } else {
            Rational::new(self.h.neighbors(x).intersection(self.r).len() as i64, 2 * self.q as i64)
        }
    }

    pub fn phi(&self, v: usize) -> Rational {
        self.h.neighbors(v).iter().map(|x| self.f(x)).sum()
    }

    fn trace_classes(&self) -> Vec<(VertexSet, usize)> {
        let mut classes: Vec<(VertexSet, usize)> = Vec::new();
        for v in self.bad.iter() {
            let trace = self.h.neighbors(v).intersection(self.r);
            if !classes.iter().any(|(t, _)| *t == trace) {
                classes.push((trace, v));
            }
        }
        classes
    }

    fn snapshot(&self, bound: Option<u64>, verbose: bool) -> Snapshot {
        Snapshot {
            iteration: self.iteration,
            r_size: self.r.len(),
            closure_size: self.closure.len(),
            y_size: self.y.len(),
            bad_size: self.bad.len(),
            trace_classes: self.trace_classes().len(),
            size_recurrence_bound: bound,
            sets: verbose.then(|| SnapshotSets {
                r: self.r.to_vec(),
                closure: self.closure.to_vec(),
                bad: self.bad.to_vec(),
            }),
        }
    }

    /// One growth step. Refuses when nothing is bad.
    pub fn step(&self) -> Result<(PercolationState<'h>, StepChoice)> {
        if self.bad.is_empty() {
            return Err(Error::Precondition("no bad vertices: nothing to do".into()));
        }
        let mut classes = Vec::new();
        let mut xs = VertexSet::EMPTY;
        let mut absorbed = VertexSet::EMPTY;
        let mut pulled = VertexSet::EMPTY;
        for (trace, u) in self.trace_classes() {
            let Some(x) = self.h.neighbors(u).intersection(self.y).first() else {
                return Err(Error::Precondition(format!(
                    "bad vertex {u} has no neighbour outside the closure (minimum degree below q={})",
                    self.q
                )));
            };
            xs.insert(x);
            let block = self.partition.block_of(x);
            absorbed = absorbed.union(
                self.bad
                    .intersection(block)
                    .iter()
                    .filter(|&v| self.h.neighbors(v).intersection(self.r) == trace)
                    .collect(),
            );
            pulled = pulled.union(self.h.neighbors(x).intersection(self.closure));
            classes.push((trace.to_vec(), u, x));
        }
        let r = self.r.union(xs).union(absorbed).union(pulled);
        let mut next = PercolationState::new(self.h, self.partition, self.q, r)?;
        next.iteration = self.iteration + 1;
        let choice = StepChoice { classes, absorbed_bad: absorbed.to_vec(), added: r.difference(self.r).to_vec() };
        Ok((next, choice))
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn trace_count_bound(r: usize, q: usize) -> u64 {
    (0..q as u64).map(|j| binomial(r as u64, j)).fold(0u64, u64::saturating_add)
}

/// Edge-count proof of `e(H) >= q(n - |R|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub q: usize,
    pub iterations: usize,
    pub order: usize,
    pub r_final: usize,
    pub closure_size: usize,
    pub y_size: usize,
    pub edges: usize,
    pub edges_in_closure: usize,
    pub edges_closure_to_y: usize,
    pub edges_in_y: usize,
    /// `Σ_{v ∈ Y} ω(v)`.
    pub weight_sum: String,
    /// `q(n - |R|)`.
    pub lower_bound: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PercolationRun {
    pub seed: usize,
    pub mode: Mode,
    pub certified: bool,
    pub certificate: Certificate,
    pub trace: Vec<Snapshot>,
    pub steps: Vec<StepChoice>,
    pub violations: Vec<String>,
    pub r_final: Vec<usize>,
}

impl PercolationRun {
    /// One JSON object per line, one line per iteration.
    pub fn trace_jsonl(&self) -> String {
        self.trace.iter().map(|s| serde_json::to_string(s).expect("snapshot serializes") + "\n").collect()
    }
}

/// Vertex of minimum degree, smallest id on ties.
pub fn default_seed(h: &Graph) -> usize {
    h.vertices().iter().min_by_key(|&v| (h.degree(v), v)).expect("nonempty graph")
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub mode: Mode,
    /// Keep full vertex sets in every snapshot.
    pub verbose: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { mode: Mode::Strict, verbose: false }
    }
}

fn certify(s: &PercolationState<'_>) -> Result<Certificate> {
    let h = s.h;
    let q = s.q;
    let edges_in_closure = h.edges_within(s.closure);
    let edges_closure_to_y = h.edges_between(s.closure, s.y);
    let edges_in_y = h.edges_within(s.y);
    let edges = h.edge_count();
    let fail = |detail: String| Err(Error::Invariant { iteration: s.iteration, detail });
    if edges_in_closure + edges_closure_to_y + edges_in_y != edges {
        return fail("edge split does not add up".into());
    }
    let weight_sum: Rational = s.y.iter().map(|v| s.omega(v)).sum();
    if weight_sum != Rational::from_integer((edges_closure_to_y + edges_in_y) as i64) {
        return fail(format!("weight sum {weight_sum} differs from e(closure, Y) + e(Y)"));
    }
    let lower_bound = q * (h.order() - s.r.len());
    let holds = s.bad.is_empty()
        && edges_in_closure >= q * (s.closure.len() - s.r.len())
        && weight_sum >= Rational::from_integer((q * s.y.len()) as i64)
        && edges >= lower_bound;
    Ok(Certificate {
        q,
        iterations: s.iteration,
        order: h.order(),
        r_final: s.r.len(),
        closure_size: s.closure.len(),
        y_size: s.y.len(),
        edges,
        edges_in_closure,
        edges_closure_to_y,
        edges_in_y,
        weight_sum: weight_sum.to_string(),
        lower_bound,
        holds,
    })
}

/// Run until no vertex is bad, checking every step.
pub fn run(h: &Graph, partition: &BlockPartition, q: usize, seed: Option<usize>, opts: RunOptions) -> Result<PercolationRun> {
    if h.min_degree() < q {
        return Err(Error::Precondition(format!("minimum degree {} is below q={q}", h.min_degree())));
    }
    let seed = seed.unwrap_or_else(|| default_seed(h));
    if seed >= h.order() {
        return Err(Error::InvalidParams(format!("seed {seed} is not a vertex")));
    }
    let cap = 2 * q * q;
    let k = partition.max_block() + 1;
    let mut state = PercolationState::new(h, partition, q, VertexSet::singleton(seed))?;
    let mut trace = vec![state.snapshot(None, opts.verbose)];
    let mut steps = Vec::new();
    let mut violations = Vec::new();
    let step_bound = |it: usize, detail: String| Error::Invariant { iteration: it, detail };

    check_state(&state)?;
    while !state.bad.is_empty() {
        let classes = state.trace_classes().len() as u64;
        let trace_cap = trace_count_bound(state.r.len(), q);
        if classes > trace_cap {
            return Err(step_bound(state.iteration, format!("{classes} trace classes exceed {trace_cap}")));
        }
        let (next, choice) = state.step()?;
        let it = next.iteration;
        let size_cap = (state.r.len() as u64).saturating_add(((k + q - 2) as u64).saturating_mul(classes));
        if next.r.len() as u64 > size_cap {
            return Err(step_bound(it, format!("|R| = {} exceeds {size_cap}", next.r.len())));
        }
        let recurrence = (state.r.len() as u64).saturating_add(((k + q - 2) as u64).saturating_mul(trace_cap));
        check_transition(&state, &next)?;
        check_state(&next)?;
        let gain = Rational::new(1, 2 * q as i64);
        for v in next.bad.iter() {
            let (before, after) = (state.phi(v), next.phi(v));
            if after - before < gain {
                let detail = format!("potential rose from {before} to {after}, less than {gain}");
                match opts.mode {
                    Mode::Strict => return Err(Error::Progress { iteration: it, vertex: v, detail }),
                    Mode::Exploratory => violations.push(format!("iteration {it}, vertex {v}: {detail}")),
                }
            }
        }
        trace.push(next.snapshot(Some(recurrence), opts.verbose));
        steps.push(choice);
        state = next;
        if state.iteration > cap && !state.bad.is_empty() {
            let detail = format!("still {} bad vertices after {cap} iterations", state.bad.len());
            match opts.mode {
                Mode::Strict => {
                    let dump: Vec<String> = trace.iter().map(|s| serde_json::to_string(s).expect("snapshot")).collect();
                    return Err(step_bound(state.iteration, format!("{detail}; trace: [{}]", dump.join(","))));
                }
                Mode::Exploratory => {
                    if state.iteration == cap + 1 {
                        violations.push(detail);
                    }
                }
            }
        }
    }
    let certificate = certify(&state)?;
    if !certificate.holds {
        return Err(Error::Invariant { iteration: state.iteration, detail: "final edge bound fails".into() });
    }
    Ok(PercolationRun {
        seed,
        mode: opts.mode,
        certified: violations.is_empty(),
        certificate,
        trace,
        steps,
        violations,
        r_final: state.r.to_vec(),
    })
}

fn check_state(s: &PercolationState<'_>) -> Result<()> {
    let fail = |detail: String| Err(Error::Invariant { iteration: s.iteration, detail });
    if !s.r.is_subset(s.closure) || s.y != s.h.vertices().difference(s.closure) {
        return fail("R, closure and Y are inconsistent".into());
    }
    let grown = s.h.edges_within(s.closure);
    if grown < s.q * (s.closure.len() - s.r.len()) {
        return fail(format!("closure spans {grown} edges, fewer than q(|closure| - |R|)"));
    }
    for v in s.y.iter() {
        if s.phi(v) > s.omega(v) {
            return fail(format!("potential of {v} exceeds its weight"));
        }
    }
    Ok(())
}

fn check_transition(a: &PercolationState<'_>, b: &PercolationState<'_>) -> Result<()> {
    let fail = |detail: &str| Err(Error::Invariant { iteration: b.iteration, detail: detail.to_string() });
    if !a.r.is_subset(b.r) || !a.closure.is_subset(b.closure) || !b.y.is_subset(a.y) || !b.bad.is_subset(a.bad) {
        return fail("R, closure, Y or the bad set moved the wrong way");
    }
    if a.h.vertices().iter().any(|x| b.f(x) < a.f(x)) {
        return fail("f decreased");
    }
    Ok(())
}
