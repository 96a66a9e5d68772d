//! Reductions of the `k[[x]]`-order families, the torsion-class assembly for
//! the hereditary family, the right weak order on `S_m`, and an isomorphism
//! test for Hasse diagrams.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Algebra, Arrow, Path, Presentation, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactmat::PrimeField;
use crate::explorer::ExchangeQuiver;
use crate::silting;

/// Cyclic quiver on `n` vertices with all paths of length `n·i` set to
/// zero, i.e. `Λ/𝔪^i Λ` for the hereditary order. For `n = 1` and `i = 1`
/// the loop itself is zero and the algebra is the field.
pub fn hereditary_truncation(field: PrimeField, n: usize, i: usize) -> Result<Algebra> {
    if n == 0 || i == 0 {
        return Err(Error::InvalidParameter(format!("hereditary truncation needs n, i >= 1 (got {n}, {i})")));
    }
    let bound = n * i;
    let vertices: Vec<String> = (1..=n).map(|v| format!("{v}")).collect();
    if bound == 1 {
        let q = Quiver::new(vertices, Vec::new())?;
        return Algebra::build(Presentation::new(field, q, Vec::new(), 1)?);
    }
    let arrows = (0..n)
        .map(|v| Arrow {
            label: format!("a{}", v + 1),
            source: v,
            target: (v + 1) % n,
        })
        .collect();
    let q = Quiver::new(vertices, arrows)?;
    let relations = (0..n)
        .map(|start| {
            let word = (0..bound).map(|k| (start + k) % n).collect();
            Path::from_arrows(&q, word).map(Relation::monomial)
        })
        .collect::<Result<Vec<_>>>()?;
    Algebra::build(Presentation::new(field, q, relations, bound)?)
}

/// `Λ/𝔪Λ` for the hereditary order of rank `n`.
pub fn hereditary_reduction(field: PrimeField, n: usize) -> Result<Algebra> {
    hereditary_truncation(field, n, 1)
}

/// Double quiver of `A_{n+1}` modulo every 2-cycle.
pub fn auslander_bass_v_reduction(field: PrimeField, n: usize) -> Result<Algebra> {
    let vertices: Vec<String> = (0..=n).map(|v| format!("{v}")).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        arrows.push(Arrow {
            label: format!("a{i}"),
            source: i,
            target: i + 1,
        });
    }
    for i in 0..n {
        arrows.push(Arrow {
            label: format!("b{i}"),
            source: i + 1,
            target: i,
        });
    }
    let q = Quiver::new(vertices, arrows)?;
    let mut relations = Vec::new();
    for i in 0..n {
        let (a, b) = (i, n + i);
        relations.push(Relation::monomial(Path::from_arrows(&q, vec![a, b])?));
        relations.push(Relation::monomial(Path::from_arrows(&q, vec![b, a])?));
    }
    Algebra::build(Presentation::new(field, q, relations, n + 2)?)
}

pub fn bass_v_reduction(field: PrimeField) -> Result<Algebra> {
    auslander_bass_v_reduction(field, 1)
}

/// Linear `A₂`: the reduction of the triangular order.
pub fn triangular_example_reduction(field: PrimeField) -> Result<Algebra> {
    let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")])?;
    Algebra::build(Presentation::new(field, q, Vec::new(), 2)?)
}

/// The builtin families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Hereditary(usize),
    BassV,
    AuslanderBassV(usize),
    TriangularA2,
}

impl Family {
    pub fn build(self, field: PrimeField) -> Result<Algebra> {
        match self {
            Family::Hereditary(n) => hereditary_reduction(field, n),
            Family::BassV => bass_v_reduction(field),
            Family::AuslanderBassV(n) => auslander_bass_v_reduction(field, n),
            Family::TriangularA2 => triangular_example_reduction(field),
        }
    }

    /// Only the hereditary family has a proven dictionary between finite
    /// length and non-sincerity.
    pub fn supports_tors_assembly(self) -> bool {
        matches!(self, Family::Hereditary(_))
    }
}

/// Per node: the module part has all `n` summands.
pub fn classify_sincere(eq: &ExchangeQuiver) -> Result<Vec<bool>> {
    if !eq.complete {
        return Err(Error::Incomplete);
    }
    Ok(eq.nodes.iter().map(silting::is_sincere_silting).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorsKind {
    /// `Fac N`.
    Fac,
    /// `Fac N ∩ fl Λ`.
    FacFl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorsNode {
    pub kind: TorsKind,
    /// Index into the exchange quiver's nodes.
    pub pair: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsHasse {
    pub nodes: Vec<TorsNode>,
    pub edges: Vec<(usize, usize)>,
}

/// Hasse quiver of all torsion classes: the exchange quiver `Q` (sincere
/// positions read as `Fac N ∩ fl Λ`), a copy `Γ` of its full subquiver on
/// sincere nodes (read as `Fac N`), and an edge from each copy to its
/// original.
pub fn assemble_tors_hasse(eq: &ExchangeQuiver, sincere: &[bool]) -> Result<TorsHasse> {
    if !eq.complete {
        return Err(Error::Incomplete);
    }
    if sincere.len() != eq.nodes.len() {
        return Err(Error::InvalidParameter("one sincerity flag per node".into()));
    }
    let n = eq.nodes.len();
    let mut nodes: Vec<TorsNode> = (0..n)
        .map(|i| TorsNode {
            kind: if sincere[i] { TorsKind::FacFl } else { TorsKind::Fac },
            pair: i,
        })
        .collect();
    let mut copy = vec![None; n];
    for i in 0..n {
        if sincere[i] {
            copy[i] = Some(nodes.len());
            nodes.push(TorsNode {
                kind: TorsKind::Fac,
                pair: i,
            });
        }
    }
    let mut edges: Vec<(usize, usize)> = eq.edges.iter().map(|e| (e.from, e.to)).collect();
    for e in &eq.edges {
        if let (Some(a), Some(b)) = (copy[e.from], copy[e.to]) {
            edges.push((a, b));
        }
    }
    for i in 0..n {
        if let Some(c) = copy[i] {
            edges.push((c, i));
        }
    }
    Ok(TorsHasse { nodes, edges })
}

/// A finite directed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Self { n, edges }
    }

    pub fn from_exchange(eq: &ExchangeQuiver) -> Self {
        Self::new(eq.nodes.len(), eq.cover_pairs())
    }

    pub fn from_tors(t: &TorsHasse) -> Self {
        Self::new(t.nodes.len(), t.edges.clone())
    }

    pub fn sources(&self) -> Vec<usize> {
        let mut indeg = vec![0; self.n];
        for &(_, b) in &self.edges {
            indeg[b] += 1;
        }
        (0..self.n).filter(|&v| indeg[v] == 0).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let mut outdeg = vec![0; self.n];
        for &(a, _) in &self.edges {
            outdeg[a] += 1;
        }
        (0..self.n).filter(|&v| outdeg[v] == 0).collect()
    }

    /// No directed cycles.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0; self.n];
        let mut out = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            indeg[b] += 1;
            out[a].push(b);
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == self.n
    }

    /// Shortest distance from the (unique) source.
    fn layers(&self, source: usize) -> Vec<usize> {
        let mut out = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            out[a].push(b);
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &out[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// The right weak order on `S_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakOrderPoset {
    pub m: usize,
    /// Permutations of `1..=m` in one-line notation, lexicographic.
    pub elements: Vec<Vec<usize>>,
    /// `(w, w·s_i)` with one more inversion.
    pub covers: Vec<(usize, usize)>,
}

impl WeakOrderPoset {
    pub fn digraph(&self) -> Digraph {
        Digraph::new(self.elements.len(), self.covers.clone())
    }
}

pub const DEFAULT_WEAK_ORDER_CAP: usize = 7;

pub fn weak_order_hasse(m: usize) -> Result<WeakOrderPoset> {
    weak_order_hasse_capped(m, DEFAULT_WEAK_ORDER_CAP)
}

pub fn weak_order_hasse_capped(m: usize, cap: usize) -> Result<WeakOrderPoset> {
    if m == 0 || m > cap {
        return Err(Error::InvalidParameter(format!("weak order degree {m} outside 1..={cap}")));
    }
    let mut elements = Vec::new();
    let mut perm: Vec<usize> = (1..=m).collect();
    loop {
        elements.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let index: BTreeMap<Vec<usize>, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    for (i, w) in elements.iter().enumerate() {
        for s in 0..m - 1 {
            if w[s] < w[s + 1] {
                let mut ws = w.clone();
                ws.swap(s, s + 1);
                covers.push((i, index[&ws]));
            }
        }
    }
    Ok(WeakOrderPoset { m, elements, covers })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of inversions.
pub fn inversions(w: &[usize]) -> usize {
    (0..w.len())
        .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
        .sum()
}

/// Digraph isomorphism for Hasse diagrams with a unique source and sink.
/// Joint colour refinement, then backtracking in breadth-first order.
pub fn poset_isomorphic(a: &Digraph, b: &Digraph) -> Result<bool> {
    for g in [a, b] {
        if g.sources().len() != 1 || g.sinks().len() != 1 {
            return Err(Error::Precondition("poset_isomorphic needs a unique source and sink"));
        }
    }
    if a.n != b.n || a.edges.len() != b.edges.len() {
        return Ok(false);
    }
    let n = a.n;
    let colours = refine(a, b);
    let (ca, cb) = colours.split_at(n);
    let mut hist_a = ca.to_vec();
    let mut hist_b = cb.to_vec();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return Ok(false);
    }
    let adj_a = adjacency(a);
    let adj_b = adjacency(b);
    let order = a.layers(a.sources()[0]);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| (order[v], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(backtrack(0, &verts, ca, cb, &adj_a, &adj_b, &mut map, &mut used))
}

fn adjacency(g: &Digraph) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.n]; g.n];
    for &(x, y) in &g.edges {
        adj[x][y] = true;
    }
    adj
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    k: usize,
    verts: &[usize],
    ca: &[usize],
    cb: &[usize],
    adj_a: &[Vec<bool>],
    adj_b: &[Vec<bool>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == verts.len() {
        return true;
    }
    let v = verts[k];
    for w in 0..cb.len() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let consistent = verts[..k].iter().all(|&u| {
            let x = map[u];
            adj_a[u][v] == adj_b[x][w] && adj_a[v][u] == adj_b[w][x]
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if backtrack(k + 1, verts, ca, cb, adj_a, adj_b, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Stable colours on the disjoint union of `a` and `b`.
fn refine(a: &Digraph, b: &Digraph) -> Vec<usize> {
    let n = a.n + b.n;
    let mut outs = vec![Vec::new(); n];
    let mut ins = vec![Vec::new(); n];
    for (off, g) in [(0, a), (a.n, b)] {
        for &(x, y) in &g.edges {
            outs[off + x].push(off + y);
            ins[off + y].push(off + x);
        }
    }
    let la = a.layers(a.sources()[0]);
    let lb = b.layers(b.sources()[0]);
    let layer: Vec<usize> = la.into_iter().chain(lb).collect();
    let mut colour: Vec<usize> = {
        let keys: Vec<(usize, usize, usize)> = (0..n).map(|v| (layer[v], ins[v].len(), outs[v].len())).collect();
        relabel(&keys)
    };
    loop {
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut o: Vec<usize> = outs[v].iter().map(|&w| colour[w]).collect();
                let mut i: Vec<usize> = ins[v].iter().map(|&w| colour[w]).collect();
                o.sort_unstable();
                i.sort_unstable();
                (colour[v], o, i)
            })
            .collect();
        let next = relabel(&keys);
        let classes = |c: &[usize]| c.iter().copied().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn relabel<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{explore, Limits};

    fn f() -> PrimeField {
        PrimeField::default()
    }

    /// Counts paths avoiding every factor `a_i b_i` and `b_i a_i`.
    fn auslander_path_count(n: usize) -> usize {
        // arrows as (source, target, kind, index)
        let mut arrows = Vec::new();
        for i in 0..n {
            arrows.push((i, i + 1, 0, i));
            arrows.push((i + 1, i, 1, i));
        }
        let mut count = n + 1;
        let mut frontier: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
        while !frontier.is_empty() {
            count += frontier.len();
            let mut next = Vec::new();
            for w in &frontier {
                let last = arrows[*w.last().unwrap()];
                for (ai, a) in arrows.iter().enumerate() {
                    if a.0 == last.1 && !(a.3 == last.3 && a.2 != last.2) {
                        let mut w2 = w.clone();
                        w2.push(ai);
                        next.push(w2);
                    }
                }
            }
            frontier = next;
        }
        count
    }

    #[test]
    fn builtin_dimensions() {
        assert_eq!(hereditary_reduction(f(), 1).unwrap().dimension(), 1);
        assert_eq!(hereditary_reduction(f(), 2).unwrap().dimension(), 4);
        assert_eq!(hereditary_reduction(f(), 3).unwrap().dimension(), 9);
        for n in 1..5 {
            for i in 1..3 {
                assert_eq!(hereditary_truncation(f(), n, i).unwrap().dimension(), n * n * i);
            }
        }
        assert_eq!(auslander_bass_v_reduction(f(), 0).unwrap().dimension(), 1);
        assert_eq!(auslander_bass_v_reduction(f(), 1).unwrap().dimension(), 4);
        assert_eq!(auslander_path_count(2), 9);
        for n in 0..5 {
            assert_eq!(
                auslander_bass_v_reduction(f(), n).unwrap().dimension(),
                auslander_path_count(n)
            );
        }
        assert_eq!(triangular_example_reduction(f()).unwrap().dimension(), 3);
        assert!(hereditary_reduction(f(), 0).is_err());
    }

    #[test]
    fn weak_order_small_cases() {
        let w1 = weak_order_hasse(1).unwrap();
        assert_eq!((w1.elements.len(), w1.covers.len()), (1, 0));
        let w2 = weak_order_hasse(2).unwrap();
        assert_eq!((w2.elements.len(), w2.covers.len()), (2, 1));
        let w3 = weak_order_hasse(3).unwrap();
        assert_eq!((w3.elements.len(), w3.covers.len()), (6, 6));
        assert!(weak_order_hasse(8).is_err());
    }

    #[test]
    fn weak_order_recount() {
        for m in 1..=5 {
            let w = weak_order_hasse(m).unwrap();
            let mut count = 0;
            for x in &w.elements {
                for y in &w.elements {
                    let diff: Vec<usize> = (0..m).filter(|&i| x[i] != y[i]).collect();
                    if diff.len() == 2 && diff[1] == diff[0] + 1 && inversions(y) == inversions(x) + 1 {
                        count += 1;
                    }
                }
            }
            assert_eq!(w.covers.len(), count);
            for &(a, b) in &w.covers {
                assert_eq!(inversions(&w.elements[b]), inversions(&w.elements[a]) + 1);
            }
            let g = w.digraph();
            assert_eq!(g.sources().len(), 1);
            assert_eq!(g.sinks().len(), 1);
        }
    }

    #[test]
    fn isomorphism_examples() {
        let s3 = weak_order_hasse(3).unwrap().digraph();
        assert!(poset_isomorphic(&s3, &s3).unwrap());
        let chain = Digraph::new(6, (0..5).map(|i| (i, i + 1)).collect());
        assert!(!poset_isomorphic(&s3, &chain).unwrap());
        // relabelled copy
        let perm = [3, 5, 0, 2, 1, 4];
        let moved = Digraph::new(6, s3.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect());
        assert!(poset_isomorphic(&s3, &moved).unwrap());
        let bad = Digraph::new(3, vec![(0, 1), (0, 2)]);
        assert!(poset_isomorphic(&bad, &bad).is_err());
    }

    #[test]
    fn hereditary_two_assembly() {
        let a = hereditary_reduction(f(), 2).unwrap();
        let eq = explore(&a, Limits::default()).unwrap();
        assert_eq!((eq.node_count(), eq.edge_count()), (6, 6));
        let flags = classify_sincere(&eq).unwrap();
        assert_eq!(flags.iter().filter(|&&b| b).count(), 3);
        let t = assemble_tors_hasse(&eq, &flags).unwrap();
        assert_eq!(t.nodes.len(), 9);
        // 6 exchange edges, 2 among sincere nodes, 3 connecting edges
        assert_eq!(t.edges.len(), 11);
        let g = Digraph::from_tors(&t);
        assert_eq!(g.sources().len(), 1);
        assert_eq!(g.sinks().len(), 1);
        assert!(g.is_acyclic());
    }
}
