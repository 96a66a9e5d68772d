//! Breadth-first enumeration of the exchange quiver from `(Λ, 0)` downwards.
//!
//! Each wave is processed in two phases. The mutations of all frontier nodes
//! are computed against a read-only [`Registry`] through a [`WaveExecutor`]
//! (possibly in parallel), then merged sequentially in `(parent, summand)`
//! order. Registration and node numbering therefore never depend on the
//! schedule.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::silting::{self, Mutation, Registry, SiltingPair};

/// Maps a pure function over a slice, preserving order.
pub trait WaveExecutor {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync;
}

/// Runs everything on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl WaveExecutor for Sequential {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync,
    {
        items.iter().map(f).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Limits {
    pub max_nodes: Option<usize>,
    pub max_depth: Option<usize>,
}

/// `to` is the left mutation of `from` at `from.summands[at]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub at: usize,
}

#[derive(Clone, Debug)]
pub struct ExchangeQuiver {
    pub nodes: Vec<SiltingPair>,
    pub edges: Vec<Edge>,
    pub depth: Vec<usize>,
    pub complete: bool,
    pub registry: Registry,
}

impl ExchangeQuiver {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Edges as `(from, to)` pairs.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.from, e.to)).collect()
    }
}

pub fn explore(alg: &Algebra, limits: Limits) -> Result<ExchangeQuiver> {
    explore_with(alg, limits, &Sequential)
}

pub fn explore_with<E: WaveExecutor>(alg: &Algebra, limits: Limits, exec: &E) -> Result<ExchangeQuiver> {
    let n = alg.vertex_count();
    let mut registry = Registry::new(alg);
    let root = SiltingPair::regular(n);
    let mut nodes = vec![root.clone()];
    let mut depth = vec![0];
    let mut index: BTreeMap<SiltingPair, usize> = BTreeMap::new();
    index.insert(root, 0);
    let mut edges = Vec::new();
    let mut complete = true;
    let mut wave = vec![0usize];
    let mut level = 0;

    while !wave.is_empty() {
        if limits.max_depth.is_some_and(|d| level >= d) {
            if wave.iter().any(|&i| !nodes[i].summands.is_empty()) {
                complete = false;
            }
            break;
        }
        let work: Vec<(usize, usize)> = wave
            .iter()
            .flat_map(|&i| (0..nodes[i].summands.len()).map(move |at| (i, at)))
            .collect();
        let reg = &registry;
        let nodes_ref = &nodes;
        let results: Vec<Result<Option<Mutation>>> =
            exec.map(&work, |&(i, at)| silting::left_mutation(alg, reg, &nodes_ref[i], at));

        let mut next = Vec::new();
        for (&(from, at), res) in work.iter().zip(results) {
            let Some(m) = res? else { continue };
            let pair = silting::apply_mutation(alg, &mut registry, m)?;
            let to = match index.get(&pair) {
                Some(&j) => j,
                None => {
                    if limits.max_nodes.is_some_and(|cap| nodes.len() >= cap) {
                        complete = false;
                        continue;
                    }
                    let j = nodes.len();
                    nodes.push(pair.clone());
                    depth.push(level + 1);
                    index.insert(pair, j);
                    next.push(j);
                    j
                }
            };
            edges.push(Edge { from, to, at });
        }
        wave = next;
        level += 1;
    }

    Ok(ExchangeQuiver {
        nodes,
        edges,
        depth,
        complete,
        registry,
    })
}

/// `rel[i][j]` iff node `i ≤` node `j`.
pub fn poset_relations(alg: &Algebra, eq: &ExchangeQuiver) -> Vec<Vec<bool>> {
    let n = eq.nodes.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = i == j || silting::pair_leq(alg, &eq.registry, &eq.nodes[i], &eq.nodes[j]);
        }
    }
    rel
}

/// Cover relations `(upper, lower)` of an order given as `rel[i][j] = i ≤ j`.
pub fn covers(rel: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = rel.len();
    let mut out = Vec::new();
    for hi in 0..n {
        for lo in 0..n {
            if hi == lo || !rel[lo][hi] {
                continue;
            }
            let between = (0..n).any(|m| m != hi && m != lo && rel[lo][m] && rel[m][hi]);
            if !between {
                out.push((hi, lo));
            }
        }
    }
    out
}

/// Reflexive, antisymmetric and transitive.
pub fn is_partial_order(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    (0..n).all(|i| rel[i][i])
        && (0..n).all(|i| (0..n).all(|j| i == j || !(rel[i][j] && rel[j][i])))
        && (0..n).all(|i| (0..n).all(|j| !rel[i][j] || (0..n).all(|k| !rel[j][k] || rel[i][k])))
}

/// The exchange edges are exactly the cover relations of `pair_leq`.
pub fn hasse_check(alg: &Algebra, eq: &ExchangeQuiver) -> Result<bool> {
    if !eq.complete {
        return Err(Error::Incomplete);
    }
    Ok(hasse_check_edges(&poset_relations(alg, eq), &eq.cover_pairs()))
}

/// Compares an edge list against the covers of `rel`.
pub fn hasse_check_edges(rel: &[Vec<bool>], edges: &[(usize, usize)]) -> bool {
    if !is_partial_order(rel) {
        return false;
    }
    let mut want = covers(rel);
    want.sort_unstable();
    let mut have = edges.to_vec();
    have.sort_unstable();
    have.dedup();
    have.len() == edges.len() && want == have
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Presentation, Quiver};
    use crate::exactmat::PrimeField;

    fn build(vs: &[&str], arrows: &[(&str, &str, &str)], bound: usize) -> Algebra {
        let q = Quiver::from_labels(vs, arrows).unwrap();
        Algebra::build(Presentation::new(PrimeField::default(), q, vec![], bound).unwrap()).unwrap()
    }

    #[test]
    fn field_has_two_nodes() {
        let k = build(&["1"], &[], 1);
        let eq = explore(&k, Limits::default()).unwrap();
        assert_eq!((eq.node_count(), eq.edge_count()), (2, 1));
        assert!(eq.complete);
        assert!(hasse_check(&k, &eq).unwrap());
    }

    #[test]
    fn a2_relations_and_broken_hasse() {
        let a = build(&["1", "2"], &[("a", "1", "2")], 2);
        let eq = explore(&a, Limits::default()).unwrap();
        assert_eq!(eq.node_count(), 5);
        let rel = poset_relations(&a, &eq);
        assert_eq!(rel.iter().flatten().filter(|&&b| b).count(), 13);
        assert!(hasse_check(&a, &eq).unwrap());
        let zero = eq.nodes.iter().position(|p| p.summands.is_empty()).unwrap();
        let mut edges = eq.cover_pairs();
        edges.push((0, zero));
        assert!(!hasse_check_edges(&rel, &edges));
    }

    #[test]
    fn limits_mark_incomplete() {
        let a = build(&["1", "2"], &[("a", "1", "2")], 2);
        let eq = explore(
            &a,
            Limits {
                max_nodes: Some(3),
                max_depth: None,
            },
        )
        .unwrap();
        assert_eq!(eq.node_count(), 3);
        assert!(!eq.complete);
        assert!(matches!(hasse_check(&a, &eq), Err(Error::Incomplete)));
        let eq = explore(
            &a,
            Limits {
                max_nodes: None,
                max_depth: Some(1),
            },
        )
        .unwrap();
        assert!(!eq.complete);
    }
}
