//! Families of maximum stable sets and maximum cliques.
//!
//! For the family `F` of all maximum stable sets of `G`:
//! `|∩F| + |∪F| >= 2α(G)` always, and when `α(G) > |G|/2` also
//! `|∩F| >= δ(G) + 2α(G) - |G| >= δ(G) + 1`, with `|∩F| = 1` forcing
//! `α(G) = (|G| + 1)/2` and the common vertex isolated. The checks here
//! compute the family exhaustively and test those inequalities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableFamilyStats {
    pub alpha: usize,
    pub family: Vec<VertexSet>,
    pub intersection: VertexSet,
    pub union: VertexSet,
}

impl StableFamilyStats {
    pub fn family_size(&self) -> usize {
        self.family.len()
    }
}

fn family_stats(alpha: usize, family: Vec<VertexSet>) -> StableFamilyStats {
    let intersection = family.iter().fold(VertexSet::from_bits(u128::MAX), |acc, s| acc.intersection(*s));
    let union = family.iter().fold(VertexSet::EMPTY, |acc, s| acc.union(*s));
    StableFamilyStats { alpha, family, intersection, union }
}

pub fn stable_family_stats(g: &Graph) -> Result<StableFamilyStats> {
    let (alpha, family) = g.max_stable_sets()?;
    Ok(family_stats(alpha, family))
}

/// `|∩F| + |∪F| >= 2α`. A `false` here means a bug, not a counterexample.
pub fn hajnal_check(g: &Graph) -> Result<bool> {
    let s = stable_family_stats(g)?;
    Ok(s.intersection.len() + s.union.len() >= 2 * s.alpha)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CoreCheck {
    /// `α <= n/2`: the hypothesis fails, nothing to check.
    Inapplicable { alpha: usize, order: usize },
    Pass {
        alpha: usize,
        core_size: usize,
        lower_bound: i64,
        /// Whether the `|∩F| = 1` clause was exercised.
        singleton_clause: bool,
    },
    Fail { alpha: usize, core_size: usize, reason: String },
}

impl CoreCheck {
    pub fn is_fail(&self) -> bool {
        matches!(self, CoreCheck::Fail { .. })
    }
}

pub fn core_bound_check(g: &Graph) -> Result<CoreCheck> {
    let s = stable_family_stats(g)?;
    let n = g.order();
    let alpha = s.alpha;
    if 2 * alpha <= n {
        return Ok(CoreCheck::Inapplicable { alpha, order: n });
    }
    let delta = g.min_degree() as i64;
    let core = s.intersection.len();
    let bound = delta + 2 * alpha as i64 - n as i64;
    let fail = |reason: String| Ok(CoreCheck::Fail { alpha, core_size: core, reason });
    if (core as i64) < bound {
        return fail(format!("|∩F| = {core} < δ + 2α - n = {bound}"));
    }
    if bound < delta + 1 {
        return fail(format!("δ + 2α - n = {bound} < δ + 1 = {}", delta + 1));
    }
    let singleton_clause = core == 1;
    if singleton_clause {
        let u = s.intersection.first().expect("one vertex");
        if 2 * alpha != n + 1 {
            return fail(format!("|∩F| = 1 but α = {alpha} ≠ (n+1)/2"));
        }
        if g.degree(u) != 0 {
            return fail(format!("|∩F| = {{{u}}} but vertex {u} has degree {}", g.degree(u)));
        }
    }
    Ok(CoreCheck::Pass { alpha, core_size: core, lower_bound: bound, singleton_clause })
}

/// Intersection of the vertex sets of all cliques on exactly `size`
/// vertices. When `size` is the clique number this goes through the
/// maximum-stable-set family of the complement.
pub fn clique_core(g: &Graph, size: usize) -> Result<VertexSet> {
    if size == 0 || !g.has_clique(size) {
        return Err(Error::NoClique { size });
    }
    if !g.has_clique(size + 1) && g.order() <= crate::graph::STABLE_SET_CAP {
        let s = stable_family_stats(&g.complement())?;
        debug_assert_eq!(s.alpha, size);
        return Ok(s.intersection);
    }
    Ok(clique_core_by_enumeration(g, size))
}

pub(crate) fn clique_core_by_enumeration(g: &Graph, size: usize) -> VertexSet {
    let mut core = VertexSet::from_bits(u128::MAX);
    g.for_each_clique(size, |c| {
        core = core.intersection(c);
        true
    });
    core.intersection(g.vertices())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        let s = stable_family_stats(&Graph::cycle(4)).unwrap();
        assert_eq!((s.alpha, s.family_size()), (2, 2));
        assert!(s.intersection.is_empty());
        assert_eq!(s.union, VertexSet::full(4));

        let s = stable_family_stats(&Graph::empty(3)).unwrap();
        assert_eq!(s.alpha, 3);
        assert_eq!(s.intersection, VertexSet::full(3));
        assert_eq!(s.union, VertexSet::full(3));

        let s = stable_family_stats(&Graph::path(3)).unwrap();
        assert_eq!(s.alpha, 2);
        assert_eq!(s.family, vec![[0, 2].into_iter().collect()]);
        assert_eq!(s.intersection.len(), 2);
    }

    #[test]
    fn hajnal_examples() {
        assert!(hajnal_check(&Graph::cycle(4)).unwrap());
        assert!(hajnal_check(&Graph::complete(5)).unwrap());
        let s = stable_family_stats(&Graph::complete(5)).unwrap();
        assert_eq!((s.alpha, s.intersection.len(), s.union.len()), (1, 0, 5));
    }

    #[test]
    fn core_bound_examples() {
        match core_bound_check(&Graph::empty(3)).unwrap() {
            CoreCheck::Pass { core_size, lower_bound, .. } => assert_eq!((core_size, lower_bound), (3, 3)),
            other => panic!("{other:?}"),
        }
        match core_bound_check(&Graph::path(3)).unwrap() {
            CoreCheck::Pass { core_size, lower_bound, .. } => assert_eq!((core_size, lower_bound), (2, 2)),
            other => panic!("{other:?}"),
        }
        // K_1 ∪ K_2: ∩F = {isolated vertex}
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        match core_bound_check(&g).unwrap() {
            CoreCheck::Pass { core_size, singleton_clause, alpha, .. } => {
                assert_eq!((core_size, alpha), (1, 2));
                assert!(singleton_clause);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(core_bound_check(&Graph::cycle(4)).unwrap(), CoreCheck::Inapplicable { .. }));
    }

    #[test]
    fn clique_core_examples() {
        assert_eq!(clique_core(&Graph::complete(4), 4).unwrap(), VertexSet::full(4));
        let bowtie = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(clique_core(&bowtie, 3).unwrap(), VertexSet::singleton(2));
        let mut diamond = Graph::complete(4);
        diamond.remove_edge(0, 1);
        assert_eq!(clique_core(&diamond, 3).unwrap().to_vec(), vec![2, 3]);
        assert!(matches!(clique_core(&Graph::cycle(5), 3), Err(Error::NoClique { size: 3 })));
        // non-maximum size goes through enumeration
        assert_eq!(clique_core(&Graph::complete(4), 2).unwrap(), VertexSet::EMPTY);
    }
}
