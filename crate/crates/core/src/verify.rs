//! Co-criticality verification, structural checks on critical colourings,
//! and the exhaustive search for small co-critical graphs.

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::all_graphs;
use crate::coloring::{cross_graph, BlockPartition, ColoringRecord, EdgeColoring};
use crate::construction::{blue_edge_floor, Rational};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::search::{exists_critical_coloring, max_red_critical_coloring, SearchBudget, SearchStatus};
use crate::stable::clique_core;

/// Run `f` on a pool of `jobs` threads; `0` means rayon's default.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    /// `G + e` still has a critical colouring.
    StillColorable,
    /// The search on `G + e` ran out of budget.
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeFailure {
    pub edge: (usize, usize),
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeStat {
    pub edge: (usize, usize),
    pub status: SearchStatus,
    pub nodes: u64,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CocriticalReport {
    pub is_cocritical: bool,
    /// No search hit its budget, so the verdict is a proof either way.
    pub determinate: bool,
    pub complete: bool,
    pub base_status: Option<SearchStatus>,
    pub base_witness: Option<BlockPartition>,
    pub failures: Vec<EdgeFailure>,
    pub per_edge_stats: Vec<EdgeStat>,
}

impl CocriticalReport {
    pub fn exhausted_count(&self) -> usize {
        self.per_edge_stats.iter().filter(|s| s.status == SearchStatus::Exhausted).count()
    }

    pub fn still_colorable_count(&self) -> usize {
        self.failures.iter().filter(|f| f.reason == FailureReason::StillColorable).count()
    }
}

/// `g` has a critical colouring and `g + e` has none for every non-edge `e`.
/// Non-edges are checked in parallel on the current rayon pool and reported
/// in lexicographic order.
pub fn is_cocritical(g: &Graph, t: usize, k: usize, budget: SearchBudget) -> Result<CocriticalReport> {
    let mut report = CocriticalReport {
        is_cocritical: false,
        determinate: true,
        complete: g.is_complete(),
        base_status: None,
        base_witness: None,
        failures: Vec::new(),
        per_edge_stats: Vec::new(),
    };
    if report.complete {
        return Ok(report);
    }
    let base = exists_critical_coloring(g, t, k, budget)?;
    report.base_status = Some(base.status);
    match base.status {
        SearchStatus::Found => report.base_witness = base.witness,
        SearchStatus::Exhausted => return Ok(report),
        SearchStatus::BudgetExceeded => {
            report.determinate = false;
            return Ok(report);
        }
    }
    let outcomes: Vec<_> = g
        .non_edges()
        .into_par_iter()
        .map(|(u, v)| exists_critical_coloring(&g.with_edge(u, v), t, k, budget).map(|o| ((u, v), o)))
        .collect::<Result<_>>()?;
    for (edge, o) in outcomes {
        report.per_edge_stats.push(EdgeStat {
            edge,
            status: o.status,
            nodes: o.nodes_visited,
            millis: o.elapsed.as_secs_f64() * 1e3,
        });
        let reason = match o.status {
            SearchStatus::Exhausted => continue,
            SearchStatus::Found => FailureReason::StillColorable,
            SearchStatus::BudgetExceeded => FailureReason::Budget,
        };
        report.failures.push(EdgeFailure { edge, reason });
    }
    report.determinate = report.failures.iter().all(|f| f.reason != FailureReason::Budget);
    report.is_cocritical = report.failures.is_empty();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureViolation {
    /// A blue component has more than `k - 1` vertices.
    Oversized { block: Vec<usize> },
    /// A blue component does not induce a clique; `missing` is a non-edge inside it.
    NotClique { block: Vec<usize>, missing: (usize, usize) },
    /// Two small components have a pair that is not red.
    SmallNotRedComplete { pair: (usize, usize) },
    /// More than `t - 1` components below `k/2` vertices.
    TooManySmall { count: usize, max: usize },
}

/// Shape every critical colouring of a co-critical graph must have: blue
/// components are cliques of `G` with at most `k - 1` vertices, and the ones
/// below `k/2` vertices are pairwise joined in red, hence at most `t - 1` of
/// them.
pub fn critical_structure_check(g: &Graph, c: &EdgeColoring<'_>, t: usize, k: usize) -> Result<Vec<StructureViolation>> {
    if !std::ptr::eq(c.base(), g) && c.base() != g {
        return Err(Error::InvalidParams("colouring belongs to a different graph".into()));
    }
    if !c.is_critical(t, k) {
        return Err(Error::NotCritical { t, k });
    }
    let mut out = Vec::new();
    let blocks = c.blue_blocks();
    for &b in blocks.blocks() {
        if b.len() > k - 1 {
            out.push(StructureViolation::Oversized { block: b.to_vec() });
        }
        if let Some(missing) = Graph::complete(g.order()).induced_edges(b).into_iter().find(|&(u, v)| !g.has_edge(u, v)) {
            out.push(StructureViolation::NotClique { block: b.to_vec(), missing });
        }
    }
    let small: Vec<VertexSet> = blocks.blocks().iter().copied().filter(|b| 2 * b.len() < k).collect();
    let red = c.red_graph();
    for (i, a) in small.iter().enumerate() {
        for b in &small[i + 1..] {
            for u in a.iter() {
                if let Some(v) = b.iter().find(|&v| !red.has_edge(u, v)) {
                    out.push(StructureViolation::SmallNotRedComplete { pair: (u.min(v), u.max(v)) });
                }
            }
        }
    }
    if small.len() > t - 1 {
        out.push(StructureViolation::TooManySmall { count: small.len(), max: t - 1 });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemResult {
    pub item: &'static str,
    pub status: ItemStatus,
    pub detail: String,
    /// Vertices witnessing a failure, or the vertices the hypothesis fired on.
    pub witness: Vec<usize>,
}

impl ItemResult {
    fn new(item: &'static str, status: ItemStatus, detail: String, witness: Vec<usize>) -> Self {
        ItemResult { item, status, detail, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub max_red: ColoringRecord,
    pub blocks: Vec<Vec<usize>>,
    pub cross_edges: usize,
    pub cross_min_degree: usize,
    pub items: Vec<ItemResult>,
}

impl StructureReport {
    pub fn item(&self, name: &str) -> Option<&ItemResult> {
        self.items.iter().find(|i| i.item == name)
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.status != ItemStatus::Fail)
    }
}

pub const ITEM_RED_DEGREES: &str = "red_degrees";
pub const ITEM_COMMON_CLIQUE: &str = "common_neighbourhood_clique";
pub const ITEM_FULL_BLOCKS: &str = "full_blocks_beside_singleton";
pub const ITEM_NO_SHARED_EDGE: &str = "no_edge_in_every_clique";
pub const ITEM_CROSS_DEGREE: &str = "cross_min_degree";
pub const ITEM_BLOCK_EDGES: &str = "block_edge_sum";
pub const ITEM_CROSS_CONNECTED: &str = "cross_connected";

fn has_clique_within(h: &Graph, s: VertexSet, size: usize) -> bool {
    size == 0 || h.induced(s).has_clique(size)
}

/// Vertices lying in every `size`-clique of `h[s]`, as ids of `h`; `None`
/// when `h[s]` has no such clique.
fn core_within(h: &Graph, s: VertexSet, size: usize) -> Option<VertexSet> {
    let ids = s.to_vec();
    let local = h.induced(s);
    let core = if size == 0 { Ok(local.vertices()) } else { clique_core(&local, size) };
    core.ok().map(|c| c.iter().map(|i| ids[i]).collect())
}

/// Evaluate every structural item on `g` with the critical colouring `coloring`.
/// The conclusions are only guaranteed when `g` is co-critical and `coloring`
/// has the most red edges; this function does not check either.
pub fn evaluate_items(g: &Graph, coloring: &EdgeColoring<'_>, t: usize, k: usize) -> Result<Vec<ItemResult>> {
    use ItemStatus::*;
    let n = g.order();
    let blocks = coloring.blue_blocks();
    let h = cross_graph(g, &blocks)?;
    let red = coloring.red_graph();
    let mut items = Vec::new();

    let (rmax, rmin) = (red.max_degree(), red.min_degree());
    let worst = if rmax > n - 2 {
        red.vertices().iter().find(|&v| red.degree(v) == rmax)
    } else if rmin < 2 * (t - 2) {
        red.vertices().iter().find(|&v| red.degree(v) == rmin)
    } else {
        None
    };
    items.push(ItemResult::new(
        ITEM_RED_DEGREES,
        if worst.is_none() { Pass } else { Fail },
        format!("red max degree {rmax} <= {}, red min degree {rmin} >= {}", n - 2, 2 * (t - 2)),
        worst.into_iter().collect(),
    ));

    let mut missing = None;
    'pairs: for (u, v) in g.non_edges() {
        if blocks.same_block(u, v) {
            continue;
        }
        let common = h.neighbors(u).intersection(h.neighbors(v));
        if !has_clique_within(&h, common, t - 2) {
            missing = Some((u, v));
            break 'pairs;
        }
    }
    items.push(ItemResult::new(
        ITEM_COMMON_CLIQUE,
        if missing.is_none() { Pass } else { Fail },
        match missing {
            None => format!("every non-adjacent pair across blocks has a common K_{}", t - 2),
            Some((u, v)) => format!("{u} and {v} have no common K_{}", t - 2),
        },
        missing.map(|(u, v)| vec![u, v]).unwrap_or_default(),
    ));

    let mut fired = 0;
    let mut bad = None;
    for (u, v) in h.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]) {
        if blocks.block_of(v).len() != 1 {
            continue;
        }
        let Some(core) = core_within(&h, h.neighbors(u), t - 2) else { continue };
        if !core.contains(v) {
            continue;
        }
        fired += 1;
        let short = blocks.blocks().iter().find(|d| {
            !d.contains(u) && !d.difference(h.neighbors(u)).is_empty() && d.len() != k - 1
        });
        if let Some(d) = short {
            bad.get_or_insert_with(|| {
                let mut w = vec![u, v];
                w.extend(d.iter());
                w
            });
        }
    }
    items.push(ItemResult::new(
        ITEM_FULL_BLOCKS,
        match (fired, &bad) {
            (0, _) => NotApplicable,
            (_, None) => Pass,
            _ => Fail,
        },
        format!("hypothesis held for {fired} ordered cross edges"),
        bad.unwrap_or_default(),
    ));

    let dh = h.min_degree();
    let item_d = if dh + 5 <= 2 * t && k >= t {
        let mut bad = None;
        for u in h.vertices().iter().filter(|&u| h.degree(u) == dh) {
            let nb = h.neighbors(u);
            if let Some(core) = core_within(&h, nb, t - 2) {
                if let Some((a, b)) = h.induced_edges(core).first() {
                    bad = Some(vec![u, *a, *b]);
                    break;
                }
            }
        }
        ItemResult::new(
            ITEM_NO_SHARED_EDGE,
            if bad.is_none() { Pass } else { Fail },
            format!("cross min degree {dh} <= {}, k={k} >= t={t}", 2 * t - 5),
            bad.unwrap_or_default(),
        )
    } else {
        ItemResult::new(
            ITEM_NO_SHARED_EDGE,
            NotApplicable,
            format!("needs cross min degree {dh} <= {} and k={k} >= t={t}", (2 * t).saturating_sub(5)),
            Vec::new(),
        )
    };
    items.push(item_d);

    let ok = k + dh >= 2 * t - 1 && dh + 1 >= t;
    items.push(ItemResult::new(
        ITEM_CROSS_DEGREE,
        if ok { Pass } else { Fail },
        format!("cross min degree {dh}: need k >= {} and at least {}", (2 * t - 1).saturating_sub(dh), t - 1),
        if ok { Vec::new() } else { h.vertices().iter().filter(|&v| h.degree(v) == dh).take(1).collect() },
    ));

    let inside: usize = blocks.blocks().iter().map(|&b| g.edges_within(b)).sum();
    let floor = blue_edge_floor(t, k, n);
    items.push(ItemResult::new(
        ITEM_BLOCK_EDGES,
        if Rational::from_integer(inside as i64) > floor { Pass } else { Fail },
        format!("{inside} edges inside blocks, floor {floor}"),
        Vec::new(),
    ));

    let comps = h.components();
    items.push(ItemResult::new(
        ITEM_CROSS_CONNECTED,
        if comps.len() == 1 { Pass } else { Fail },
        format!("{} components", comps.len()),
        comps.get(1).map(|c| c.to_vec()).unwrap_or_default(),
    ));
    Ok(items)
}

/// All structural items on a verified co-critical graph, under its
/// critical colouring with the most red edges.
pub fn structure_checks(g: &Graph, t: usize, k: usize, budget: SearchBudget) -> Result<StructureReport> {
    let report = is_cocritical(g, t, k, budget)?;
    structure_checks_with(g, t, k, budget, &report)
}

/// As [`structure_checks`], reusing an existing verification.
pub fn structure_checks_with(
    g: &Graph,
    t: usize,
    k: usize,
    budget: SearchBudget,
    report: &CocriticalReport,
) -> Result<StructureReport> {
    if !report.is_cocritical {
        return Err(Error::NotCocritical { t, k });
    }
    let coloring = max_red_critical_coloring(g, t, k, budget)?.ok_or(Error::NotCocritical { t, k })?;
    let blocks = coloring.blue_blocks();
    let h = cross_graph(g, &blocks)?;
    Ok(StructureReport {
        max_red: coloring.to_record(),
        blocks: blocks.to_lists(),
        cross_edges: h.edge_count(),
        cross_min_degree: h.min_degree(),
        items: evaluate_items(g, &coloring, t, k)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinSearch {
    pub t: usize,
    pub k: usize,
    pub n: usize,
    pub classes_scanned: usize,
    pub min_edges: Option<usize>,
    #[serde(serialize_with = "graph6_list")]
    pub witnesses: Vec<Graph>,
    /// Classes whose verdict was cut short by the budget.
    pub indeterminate: usize,
}

fn graph6_list<S: serde::Serializer>(gs: &[Graph], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(crate::io::emit_graph6))
}

/// Fewest edges of a co-critical graph on `n` vertices, with every
/// minimiser up to isomorphism.
pub fn min_cocritical_search(t: usize, k: usize, n: usize, budget: SearchBudget) -> Result<MinSearch> {
    let graphs = all_graphs(n)?;
    let verdicts: Vec<(bool, bool)> = graphs
        .par_iter()
        .map(|g| is_cocritical(g, t, k, budget).map(|r| (r.is_cocritical, r.determinate)))
        .collect::<Result<_>>()?;
    let indeterminate = verdicts.iter().filter(|(_, d)| !d).count();
    let hits: Vec<&Graph> = graphs.iter().zip(&verdicts).filter(|(_, (c, _))| *c).map(|(g, _)| g).collect();
    let min_edges = hits.iter().map(|g| g.edge_count()).min();
    let witnesses = hits.into_iter().filter(|g| Some(g.edge_count()) == min_edges).cloned().collect();
    Ok(MinSearch { t, k, n, classes_scanned: graphs.len(), min_edges, witnesses, indeterminate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, distinguished_coloring, ConstructionParams};
    use crate::search::brute_force_exists;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn complete_graphs_are_excluded() {
        let r = is_cocritical(&Graph::complete(5), 3, 3, budget()).unwrap();
        assert!(!r.is_cocritical && r.complete && r.determinate);
    }

    #[test]
    fn k5_minus_edge_matches_definition() {
        let mut g = Graph::complete(5);
        g.remove_edge(0, 1);
        let r = is_cocritical(&g, 3, 3, budget()).unwrap();
        let by_definition = brute_force_exists(&g, 3, 3).unwrap()
            && g.non_edges().iter().all(|&(u, v)| !brute_force_exists(&g.with_edge(u, v), 3, 3).unwrap());
        assert_eq!(r.is_cocritical, by_definition);
    }

    #[test]
    fn small_construction_is_cocritical() {
        let (g, layout) = build(&ConstructionParams::new(4, 3, 13).unwrap()).unwrap();
        let r = is_cocritical(&g, 4, 3, budget()).unwrap();
        assert!(r.is_cocritical && r.determinate);
        assert_eq!(r.exhausted_count(), 34);
        let coloring = distinguished_coloring(&g, &layout).unwrap();
        assert!(critical_structure_check(&g, &coloring, 4, 3).unwrap().is_empty());

        let s = structure_checks_with(&g, 4, 3, budget(), &r).unwrap();
        assert!(s.all_pass(), "{s:?}");
        assert_eq!(s.cross_edges, 38);
        assert_eq!(s.item(ITEM_NO_SHARED_EDGE).unwrap().status, ItemStatus::NotApplicable);
        for name in [ITEM_RED_DEGREES, ITEM_COMMON_CLIQUE, ITEM_CROSS_DEGREE, ITEM_BLOCK_EDGES, ITEM_CROSS_CONNECTED] {
            assert_eq!(s.item(name).unwrap().status, ItemStatus::Pass, "{name}");
        }
        assert_eq!(s.item(ITEM_BLOCK_EDGES).unwrap().detail, "6 edges inside blocks, floor 5");
    }

    #[test]
    fn structure_check_flags_non_clique_block() {
        // path 0-1-2 coloured all blue: a blue component on 3 vertices that is
        // not a clique; with k = 4 the colouring is critical
        let g = Graph::path(3);
        let c = EdgeColoring::from_blue_edges(&g, &[(0, 1), (1, 2)]).unwrap();
        let v = critical_structure_check(&g, &c, 3, 4).unwrap();
        assert!(v.contains(&StructureViolation::NotClique { block: vec![0, 1, 2], missing: (0, 2) }));
        let c = EdgeColoring::from_blue_edges(&g, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(critical_structure_check(&g, &c, 3, 3), Err(Error::NotCritical { .. })));
    }

    #[test]
    fn structure_check_on_all_red() {
        // C_4 all red: four singletons, pairwise red-complete fails on the diagonals
        let g = Graph::cycle(4);
        let c = EdgeColoring::all_red(&g);
        let v = critical_structure_check(&g, &c, 3, 3).unwrap();
        assert!(v.iter().any(|x| matches!(x, StructureViolation::SmallNotRedComplete { .. })));
        assert!(v.contains(&StructureViolation::TooManySmall { count: 4, max: 2 }));
        assert!(!v.iter().any(|x| matches!(x, StructureViolation::NotClique { .. })));
    }

    #[test]
    fn disconnected_cross_graph_is_reported() {
        let g = Graph::complete(2).disjoint_union(&Graph::complete(2)).unwrap();
        let c = EdgeColoring::all_red(&g);
        let items = evaluate_items(&g, &c, 3, 3).unwrap();
        let conn = items.iter().find(|i| i.item == ITEM_CROSS_CONNECTED).unwrap();
        assert_eq!(conn.status, ItemStatus::Fail);
        assert_eq!(conn.witness, vec![2, 3]);
    }

    #[test]
    fn structure_checks_refuse_non_cocritical() {
        assert!(matches!(structure_checks(&Graph::cycle(5), 3, 3, budget()), Err(Error::NotCocritical { .. })));
    }

    #[test]
    fn min_search_small_orders() {
        let r = min_cocritical_search(3, 3, 4, budget()).unwrap();
        assert_eq!(r.min_edges, None);
        assert_eq!(r.classes_scanned, 11);
        let r = min_cocritical_search(3, 3, 5, budget()).unwrap();
        for w in &r.witnesses {
            assert!(brute_force_exists(w, 3, 3).unwrap());
            for (u, v) in w.non_edges() {
                assert!(!brute_force_exists(&w.with_edge(u, v), 3, 3).unwrap());
            }
        }
        assert!(min_cocritical_search(3, 3, 9, budget()).is_err());
    }
}
