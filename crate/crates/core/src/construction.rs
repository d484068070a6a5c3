//! The extremal family of co-critical graphs and the closed-form edge bounds.
//!
//! For `t` in `{4, 5}`, `k >= 3` and `n` at least [`threshold`], the graph
//! built here is `(K_t, T_k)`-co-critical. Vertex ids are laid out as
//!
//! ```text
//! A (k-1) | B_1..B_{t-2} (k-2 each) | C_1..C_{t-2} (k-2 each) | tail parts | x_1..x_{t-2} | y_1..y_{t-2}
//! ```
//!
//! `A`, every `B_i`, `C_i` and every tail part is a clique; `B_i` is joined to
//! `A`, `C_i` and every other `B_j`; `x_i` is joined to every vertex of the
//! cliques and to the other `x_j`; `y_i` to every clique vertex outside `A`
//! and to every `x_j` with `j != i`. The tail is `(s-r)` cliques of size
//! `⌈k/2⌉` and `r` of size `⌈k/2⌉+1`, except for `k = 3` where it is `s`
//! edges and `r` isolated vertices.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::coloring::{BlockPartition, ColoringRecord, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_ORDER};

pub type Rational = Ratio<i64>;

fn half_up(k: usize) -> usize {
    k.div_ceil(2)
}

fn choose2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Smallest order the family is defined for.
pub fn threshold(t: usize, k: usize) -> usize {
    let h = half_up(k);
    (2 * t - 3) * (k - 1) + h * h - 1
}

/// `R(K_t, T_k) = (t-1)(k-1) + 1`.
pub fn ramsey_number(t: usize, k: usize) -> usize {
    (t - 1) * (k - 1) + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub t: usize,
    pub k: usize,
    pub n: usize,
    /// Quotient of `n - (2t-3)(k-1)` by `⌈k/2⌉`.
    pub s: usize,
    /// Remainder of the same division.
    pub r: usize,
    /// Set when `t` is outside `{4, 5}`: the graph is still built but
    /// co-criticality is not guaranteed.
    pub warning: Option<String>,
}

impl ConstructionParams {
    pub fn new(t: usize, k: usize, n: usize) -> Result<Self> {
        if t < 3 || k < 3 {
            return Err(Error::InvalidParams(format!("need t >= 3 and k >= 3, got t={t}, k={k}")));
        }
        let min = threshold(t, k);
        if n < min {
            return Err(Error::BelowThreshold { n, threshold: min });
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidParams(format!("n={n} exceeds the maximum order {MAX_ORDER}")));
        }
        let h = half_up(k);
        let rest = n - (2 * t - 3) * (k - 1);
        let (s, r) = (rest / h, rest % h);
        assert!(s >= r, "s={s} < r={r} despite n >= threshold");
        let warning = (!(4..=5).contains(&t))
            .then(|| format!("t={t} is outside {{4, 5}}; co-criticality of this graph is not guaranteed"));
        Ok(ConstructionParams { t, k, n, s, r, warning })
    }

    /// Sizes of the tail cliques, in layout order.
    pub fn tail_sizes(&self) -> Vec<usize> {
        let h = half_up(self.k);
        if self.k == 3 {
            std::iter::repeat_n(2, self.s).chain(std::iter::repeat_n(1, self.r)).collect()
        } else {
            std::iter::repeat_n(h, self.s - self.r).chain(std::iter::repeat_n(h + 1, self.r)).collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    A,
    /// 1-based index.
    B(usize),
    C(usize),
    Tail(usize),
    X(usize),
    Y(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::A => write!(f, "A"),
            Role::B(i) => write!(f, "B{i}"),
            Role::C(i) => write!(f, "C{i}"),
            Role::Tail(i) => write!(f, "T{i}"),
            Role::X(i) => write!(f, "x{i}"),
            Role::Y(i) => write!(f, "y{i}"),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoleLayout {
    pub t: usize,
    pub k: usize,
    pub roles: Vec<Role>,
}

impl RoleLayout {
    pub fn new(p: &ConstructionParams) -> Self {
        let m = p.t - 2;
        let mut roles = vec![Role::A; p.k - 1];
        for i in 1..=m {
            roles.extend(std::iter::repeat_n(Role::B(i), p.k - 2));
        }
        for i in 1..=m {
            roles.extend(std::iter::repeat_n(Role::C(i), p.k - 2));
        }
        for (j, size) in p.tail_sizes().into_iter().enumerate() {
            roles.extend(std::iter::repeat_n(Role::Tail(j + 1), size));
        }
        roles.extend((1..=m).map(Role::X));
        roles.extend((1..=m).map(Role::Y));
        debug_assert_eq!(roles.len(), p.n);
        RoleLayout { t: p.t, k: p.k, roles }
    }

    pub fn order(&self) -> usize {
        self.roles.len()
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn members(&self, role: Role) -> VertexSet {
        self.roles.iter().enumerate().filter(|(_, r)| **r == role).map(|(v, _)| v).collect()
    }

    pub fn members_where(&self, pred: impl Fn(Role) -> bool) -> VertexSet {
        self.roles.iter().enumerate().filter(|(_, r)| pred(**r)).map(|(v, _)| v).collect()
    }

    pub fn tail_parts(&self) -> Vec<VertexSet> {
        let count = self.roles.iter().filter_map(|r| if let Role::Tail(j) = r { Some(*j) } else { None }).max();
        (1..=count.unwrap_or(0)).map(|j| self.members(Role::Tail(j))).collect()
    }

    pub fn x(&self, i: usize) -> usize {
        self.members(Role::X(i)).first().expect("x_i present")
    }

    pub fn y(&self, i: usize) -> usize {
        self.members(Role::Y(i)).first().expect("y_i present")
    }

    /// The blue blocks of the distinguished colouring: `A`, `B_i + x_i`,
    /// `C_i + y_i` and the tail parts.
    pub fn distinguished_blocks(&self) -> BlockPartition {
        let m = self.t - 2;
        let mut blocks = vec![self.members(Role::A)];
        for i in 1..=m {
            blocks.push(self.members(Role::B(i)).with(self.x(i)));
            blocks.push(self.members(Role::C(i)).with(self.y(i)));
        }
        blocks.extend(self.tail_parts());
        BlockPartition::new(self.order(), blocks).expect("layout blocks partition the vertices")
    }
}

pub fn build(p: &ConstructionParams) -> Result<(Graph, RoleLayout)> {
    let layout = RoleLayout::new(p);
    let m = p.t - 2;
    let n = p.n;
    let mut g = Graph::empty(n);
    let mut join = |a: VertexSet, b: VertexSet| {
        for u in a.iter() {
            for v in b.iter() {
                if u != v {
                    g.insert_edge(u, v);
                }
            }
        }
    };
    let a = layout.members(Role::A);
    let b: Vec<VertexSet> = (1..=m).map(|i| layout.members(Role::B(i))).collect();
    let c: Vec<VertexSet> = (1..=m).map(|i| layout.members(Role::C(i))).collect();
    let xs = layout.members_where(|r| matches!(r, Role::X(_)));
    let cliques = layout.members_where(|r| !matches!(r, Role::X(_) | Role::Y(_)));
    for part in std::iter::once(a).chain(b.iter().copied()).chain(c.iter().copied()).chain(layout.tail_parts()) {
        join(part, part);
    }
    for i in 0..m {
        join(b[i], a);
        join(b[i], c[i]);
        for j in 0..m {
            if j != i {
                join(b[i], b[j]);
            }
        }
    }
    join(xs, cliques);
    join(xs, xs);
    for i in 1..=m {
        let y = VertexSet::singleton(layout.y(i));
        join(y, cliques.difference(a));
        join(y, xs.without(layout.x(i)));
    }
    debug_assert_eq!(g.edge_count(), expected_edge_count(p));
    Ok((g, layout))
}

/// Blue inside the layout blocks, red everywhere else.
pub fn distinguished_coloring<'g>(g: &'g Graph, layout: &RoleLayout) -> Result<EdgeColoring<'g>> {
    if g.order() != layout.order() {
        return Err(Error::LayoutMismatch(format!(
            "graph has {} vertices, layout has {}",
            g.order(),
            layout.order()
        )));
    }
    let mut blue = Vec::new();
    for block in layout.distinguished_blocks().blocks() {
        let vs = block.to_vec();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !g.has_edge(u, v) {
                    return Err(Error::LayoutMismatch(format!("block {vs:?} is not a clique: {u}{v} missing")));
                }
                blue.push((u, v));
            }
        }
    }
    EdgeColoring::from_blue_edges(g, &blue)
}

/// Edge count of the construction, summed part by part.
pub fn expected_edge_count(p: &ConstructionParams) -> usize {
    let (t, k, n, s, r) = (p.t, p.k, p.n, p.s, p.r);
    let m = t - 2;
    let h = half_up(k);
    // x-side and y-side edges to the cliques
    let outer = m * (n - 2 * m) + m * (n - (2 * m + k - 1));
    let inner = choose2(m) + m * (m - 1);
    let b_to_c = m * (k - 2) * (k - 2);
    let c_inside = m * choose2(k - 2);
    let a_and_b = choose2(m * (k - 2) + k - 1);
    let tail = if k == 3 { s } else { (s - r) * choose2(h) + r * choose2(h + 1) };
    outer + inner + b_to_c + c_inside + a_and_b + tail
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Coefficient of `n` in the lower bound: `(4t-9)/2 + ⌈k/2⌉/2`.
pub fn lower_bound_slope(t: usize, k: usize) -> Rational {
    Rational::new(4 * t as i64 - 9, 2) + Rational::new(half_up(k) as i64, 2)
}

/// Additive constant of the upper bound.
pub fn upper_bound_constant(t: usize, k: usize) -> Rational {
    let (t, k, h) = (t as i64, k as i64, half_up(k) as i64);
    Rational::new(t * t + t - 5, 2) * rat(k * k) - rat((2 * t * t + 2 * t - 11) * k) - Rational::new((t - 2) * (t - 19), 2)
        - Rational::new(h * ((2 * t - 3) * (k - 1) - h), 2)
}

/// `slope * n + constant`: the proven upper bound on the construction's size.
pub fn upper_bound_edges(t: usize, k: usize, n: usize) -> Rational {
    lower_bound_slope(t, k) * rat(n as i64) + upper_bound_constant(t, k)
}

/// Lower bound on the number of edges inside the blue blocks of a max-red
/// critical colouring: `(⌈k/2⌉/2 - 1/2)(n - (t-1)(⌈k/2⌉-1))`.
pub fn blue_edge_floor(t: usize, k: usize, n: usize) -> Rational {
    let h = half_up(k) as i64;
    (Rational::new(h, 2) - Rational::new(1, 2)) * rat(n as i64 - (t as i64 - 1) * (h - 1))
}

/// Edges of the complete balanced `parts`-partite graph on `n` vertices.
pub fn turan_edges(parts: usize, n: usize) -> usize {
    assert!(parts >= 1, "at least one part");
    let (q, rem) = (n / parts, n % parts);
    let sq = rem * (q + 1) * (q + 1) + (parts - rem) * q * q;
    (n * n - sq) / 2
}

/// Wire form of a construction: graph6, per-vertex roles, and the colouring.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionRecord {
    pub params: ConstructionParams,
    pub graph6: String,
    pub edges: usize,
    pub expected_edges: usize,
    pub upper_bound: String,
    pub roles: Vec<Role>,
    pub distinguished_blocks: Vec<Vec<usize>>,
    pub coloring: ColoringRecord,
}

pub fn record(p: &ConstructionParams) -> Result<ConstructionRecord> {
    let (g, layout) = build(p)?;
    let coloring = distinguished_coloring(&g, &layout)?;
    Ok(ConstructionRecord {
        params: p.clone(),
        graph6: crate::io::emit_graph6(&g),
        edges: g.edge_count(),
        expected_edges: expected_edge_count(p),
        upper_bound: upper_bound_edges(p.t, p.k, p.n).to_string(),
        roles: layout.roles.clone(),
        distinguished_blocks: layout.distinguished_blocks().to_lists(),
        coloring: coloring.to_record(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn built(t: usize, k: usize, n: usize) -> (Graph, RoleLayout) {
        build(&ConstructionParams::new(t, k, n).unwrap()).unwrap()
    }

    #[test]
    fn params_split() {
        let p = ConstructionParams::new(4, 3, 13).unwrap();
        assert_eq!((p.s, p.r), (1, 1));
        assert!(p.warning.is_none());
        let p = ConstructionParams::new(4, 4, 18).unwrap();
        assert_eq!((p.s, p.r), (1, 1));
        assert!(matches!(ConstructionParams::new(4, 3, 12), Err(Error::BelowThreshold { n: 12, threshold: 13 })));
        assert!(ConstructionParams::new(6, 4, 40).unwrap().warning.is_some());
    }

    #[test]
    fn small_instances() {
        let (g, layout) = built(4, 3, 13);
        assert_eq!((g.order(), g.edge_count()), (13, 44));
        let coloring = distinguished_coloring(&g, &layout).unwrap();
        assert_eq!((coloring.blue_count(), coloring.red_count()), (6, 38));
        assert_eq!(layout.distinguished_blocks().size_multiset(), vec![2, 2, 2, 2, 2, 2, 1]);
        assert!(coloring.is_critical(4, 3));

        let (g, layout) = built(4, 4, 18);
        assert_eq!((g.order(), g.edge_count()), (18, 87));
        let coloring = distinguished_coloring(&g, &layout).unwrap();
        assert!(coloring.is_critical(4, 4));
        assert_eq!(layout.distinguished_blocks().size_multiset(), vec![3; 6]);

        let p = ConstructionParams::new(5, 4, 24).unwrap();
        let (g, _) = build(&p).unwrap();
        assert_eq!((g.order(), g.edge_count()), (24, expected_edge_count(&p)));
    }

    #[test]
    fn structure_of_small_instance() {
        let (g, layout) = built(4, 3, 13);
        let ys = layout.members_where(|r| matches!(r, Role::Y(_)));
        assert!(g.is_stable(ys));
        for i in 1..=2 {
            assert!(!g.has_edge(layout.x(i), layout.y(i)));
            assert!(g.neighbors(layout.y(i)).is_disjoint(layout.members(Role::A)));
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(upper_bound_constant(4, 4), rat(6));
        assert_eq!(upper_bound_edges(4, 4, 18), rat(87));
        assert_eq!(upper_bound_constant(4, 3), Rational::new(-25, 2));
        assert_eq!(upper_bound_edges(4, 3, 13), rat(46));
        assert_eq!(lower_bound_slope(4, 6), rat(5));
        assert_eq!(blue_edge_floor(4, 3, 13), rat(5));
        assert_eq!(ramsey_number(3, 3), 5);
        assert_eq!(ramsey_number(4, 3), 7);
        assert_eq!(turan_edges(2, 5), 6);
        assert_eq!(turan_edges(3, 7), 16);
    }

    #[test]
    fn grid_identities() {
        for t in 4..=5 {
            for k in 3..=8 {
                let lo = threshold(t, k);
                for n in lo..=lo + 10 {
                    if n > MAX_ORDER {
                        continue;
                    }
                    let p = ConstructionParams::new(t, k, n).unwrap();
                    let (g, layout) = build(&p).unwrap();
                    assert_eq!(g.edge_count(), expected_edge_count(&p), "{t} {k} {n}");
                    assert!(rat(g.edge_count() as i64) <= upper_bound_edges(t, k, n), "{t} {k} {n}");
                    assert!(g.edge_count() <= turan_edges(ramsey_number(t, k) - 1, n), "{t} {k} {n}");
                    assert!(distinguished_coloring(&g, &layout).unwrap().is_critical(t, k), "{t} {k} {n}");
                }
            }
        }
    }

    #[test]
    fn record_serializes() {
        let rec = record(&ConstructionParams::new(4, 3, 13).unwrap()).unwrap();
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["edges"], 44);
        assert_eq!(json["roles"][0], "A");
        assert_eq!(json["upper_bound"], "46");
    }
}
