//! Finite-dimensional bound quiver algebras `kQ/I` with length-homogeneous
//! relations.
//!
//! Conventions used everywhere in the crate:
//! * paths are written in traversal order, `p·q` means "first `p`, then `q`"
//!   and is nonzero only if `target(p) == source(q)`;
//! * a representation assigns a space `M_v` to each vertex and a matrix
//!   `M_b : M_i -> M_j` to each arrow `b : i -> j`;
//! * the indecomposable projective `P_v` has basis the basis paths starting at
//!   `v`, sitting at their end vertex, and arrows act by appending;
//! * a homomorphism `P_u -> P_v` is left multiplication by an element of
//!   `e_v A e_u`, i.e. a combination of paths from `v` to `u`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactmat::{Matrix, PrimeField};
use crate::repmod::Rep;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Vertices by label; arrows as `(label, source index, target index)`.
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label {v:?}")));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow label {:?}", a.label)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {:?} names an undeclared vertex",
                    a.label
                )));
            }
            if vertices.contains(&a.label) {
                return Err(Error::InvalidQuiver(format!(
                    "label {:?} used for both a vertex and an arrow",
                    a.label
                )));
            }
        }
        Ok(Self { vertices, arrows })
    }

    /// Convenience constructor from label slices.
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| String::from(*s)).collect();
        let mut out = Vec::with_capacity(arrows.len());
        for &(label, s, t) in arrows {
            let find = |name: &str| {
                vs.iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {name:?}")))
            };
            out.push(Arrow {
                label: String::from(label),
                source: find(s)?,
                target: find(t)?,
            });
        }
        Self::new(vs, out)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }
    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }
}

/// A path in traversal order. Length zero is the trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Validates composability of the arrow sequence.
    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidQuiver("empty arrow word needs a vertex".into()));
        };
        for &a in &arrows {
            if a >= quiver.arrow_count() {
                return Err(Error::InvalidQuiver(format!("unknown arrow index {a}")));
            }
        }
        for w in arrows.windows(2) {
            if quiver.arrow(w[0]).target != quiver.arrow(w[1]).source {
                return Err(Error::InvalidQuiver(format!(
                    "arrows {:?} and {:?} do not compose",
                    quiver.arrow(w[0]).label,
                    quiver.arrow(w[1]).label
                )));
            }
        }
        let last = *arrows.last().unwrap_or(&first);
        Ok(Self {
            source: quiver.arrow(first).source,
            target: quiver.arrow(last).target,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", quiver.vertices()[self.source]);
        }
        let labels: Vec<&str> = self
            .arrows
            .iter()
            .map(|&a| quiver.arrow(a).label.as_str())
            .collect();
        labels.join("")
    }
}

/// A linear combination of parallel paths of one common length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

impl Relation {
    pub fn monomial(path: Path) -> Self {
        Self {
            terms: vec![(1, path)],
        }
    }
}

/// Quiver, relations and a nilpotency bound `N` such that every path of
/// length `N` lies in the relation ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    field: PrimeField,
    quiver: Quiver,
    relations: Vec<Relation>,
    nilpotency_bound: usize,
}

impl Presentation {
    pub fn new(
        field: PrimeField,
        quiver: Quiver,
        relations: Vec<Relation>,
        nilpotency_bound: usize,
    ) -> Result<Self> {
        let mut cleaned = Vec::with_capacity(relations.len());
        for (index, rel) in relations.into_iter().enumerate() {
            let bad = |reason: String| Error::InvalidRelation { index, reason };
            let terms: Vec<(u32, Path)> = rel
                .terms
                .into_iter()
                .map(|(c, p)| (c % field.p(), p))
                .filter(|(c, _)| *c != 0)
                .collect();
            if let Some((_, first)) = terms.first() {
                for (_, p) in &terms {
                    if p.len() < 2 {
                        return Err(bad(format!("term of length {} (relations need length >= 2)", p.len())));
                    }
                    if p.len() != first.len() {
                        return Err(bad("terms of different lengths".into()));
                    }
                    if (p.source, p.target) != (first.source, first.target) {
                        return Err(bad("terms are not parallel".into()));
                    }
                    if p.len() > nilpotency_bound {
                        return Err(bad(format!(
                            "length {} exceeds the nilpotency bound {nilpotency_bound}",
                            p.len()
                        )));
                    }
                    Path::from_arrows(&quiver, p.arrows.clone()).map_err(|e| bad(format!("{e}")))?;
                }
            }
            cleaned.push(Relation { terms });
        }
        if nilpotency_bound == 0 {
            return Err(Error::InvalidParameter("nilpotency bound must be positive".into()));
        }
        Ok(Self {
            field,
            quiver,
            relations: cleaned,
            nilpotency_bound,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency_bound
    }
}

/// Sparse vector over the global basis.
type Sparse = Vec<(usize, u32)>;

/// A built algebra: path basis, expansions of all short paths, and the
/// multiplication table on basis elements.
#[derive(Clone, Debug)]
pub struct Algebra {
    presentation: Presentation,
    basis: Vec<Path>,
    blocks: Vec<Vec<Vec<usize>>>,
    pos_in_block: Vec<usize>,
    trivial: Vec<usize>,
    expansions: BTreeMap<(usize, Vec<usize>), Sparse>,
    table: Vec<Vec<Sparse>>,
}

/// Algebra elements are dense coordinate vectors over [`Algebra::basis`].
pub type Element = Vec<u32>;

impl Algebra {
    /// Degree-by-degree construction of the path basis: in each degree the
    /// relation ideal is spanned by `u·r·v`, and the basis is the set of
    /// non-pivot paths of that span in lexicographic arrow order.
    pub fn build(presentation: Presentation) -> Result<Self> {
        let f = presentation.field;
        let q = &presentation.quiver;
        let n = q.vertex_count();
        let bound = presentation.nilpotency_bound;

        // all paths of each length 0..=bound, lexicographic in arrow indices
        let mut by_len: Vec<Vec<Path>> = vec![(0..n).map(Path::trivial).collect()];
        for len in 1..=bound {
            let mut next = Vec::new();
            for p in &by_len[len - 1] {
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            by_len.push(next);
        }

        let mut basis: Vec<Path> = Vec::new();
        let mut expansions: BTreeMap<(usize, Vec<usize>), Sparse> = BTreeMap::new();
        // provisional (length, local) basis index -> later made global
        for (len, paths) in by_len.iter().enumerate() {
            // group by endpoints
            let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
            for (i, p) in paths.iter().enumerate() {
                groups.entry((p.source, p.target)).or_default().push(i);
            }
            for ((s, t), members) in groups {
                let col_of: BTreeMap<&[usize], usize> = members
                    .iter()
                    .enumerate()
                    .map(|(c, &i)| (paths[i].arrows.as_slice(), c))
                    .collect();
                let generators = ideal_generators(&presentation, &by_len, len, s, t, &col_of);
                let gen_rows: Vec<Vec<i64>> = generators
                    .iter()
                    .map(|g| g.iter().map(|&x| i64::from(x)).collect())
                    .collect();
                let (rref, pivots) = if gen_rows.is_empty() {
                    (Matrix::zeros(f, 0, members.len()), Vec::new())
                } else {
                    Matrix::from_rows(f, &gen_rows)?.rref()
                };
                let free: Vec<usize> = (0..members.len()).filter(|c| !pivots.contains(c)).collect();
                if len == bound {
                    if !free.is_empty() {
                        return Err(Error::NotAdmissible {
                            bound,
                            remaining: free.len(),
                        });
                    }
                    continue;
                }
                let mut global_of_free = BTreeMap::new();
                for &c in &free {
                    global_of_free.insert(c, basis.len());
                    basis.push(paths[members[c]].clone());
                }
                for (c, &i) in members.iter().enumerate() {
                    let key = (paths[i].source, paths[i].arrows.clone());
                    let exp = if let Some(&g) = global_of_free.get(&c) {
                        vec![(g, 1)]
                    } else {
                        let row = pivots.iter().position(|&pc| pc == c).expect("pivot row");
                        free.iter()
                            .filter_map(|&fc| {
                                let x = rref.get(row, fc);
                                (x != 0).then(|| (global_of_free[&fc], f.neg(x)))
                            })
                            .collect()
                    };
                    expansions.insert(key, exp);
                }
            }
        }

        let mut blocks = vec![vec![Vec::new(); n]; n];
        let mut pos_in_block = vec![0; basis.len()];
        for (i, p) in basis.iter().enumerate() {
            pos_in_block[i] = blocks[p.source][p.target].len();
            blocks[p.source][p.target].push(i);
        }
        let trivial = (0..n)
            .map(|v| blocks[v][v][0])
            .collect::<Vec<_>>();
        debug_assert!(trivial.iter().enumerate().all(|(v, &i)| basis[i] == Path::trivial(v)));

        let dim = basis.len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let (a, b) = (&basis[i], &basis[j]);
                if a.target != b.source || a.len() + b.len() >= bound {
                    continue;
                }
                let mut arrows = a.arrows.clone();
                arrows.extend_from_slice(&b.arrows);
                table[i][j] = expansions[&(a.source, arrows)].clone();
            }
        }

        Ok(Self {
            presentation,
            basis,
            blocks,
            pos_in_block,
            trivial,
            expansions,
            table,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }
    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }
    pub fn field(&self) -> PrimeField {
        self.presentation.field
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Global indices of the basis paths from `s` to `t`.
    pub fn paths_between(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s][t]
    }

    /// Position of a basis element inside its `(source, target)` block.
    pub fn position_in_block(&self, i: usize) -> usize {
        self.pos_in_block[i]
    }

    pub fn trivial_index(&self, v: usize) -> usize {
        self.trivial[v]
    }

    /// Expansion of an arbitrary path over the basis (zero if it is long).
    pub fn path_element(&self, path: &Path) -> Element {
        let mut out = vec![0; self.dimension()];
        if path.len() >= self.presentation.nilpotency_bound {
            return out;
        }
        if let Some(exp) = self.expansions.get(&(path.source, path.arrows.clone())) {
            for &(i, c) in exp {
                out[i] = c;
            }
        }
        out
    }

    /// Product of two basis elements as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.table[i][j]
    }

    pub fn zero(&self) -> Element {
        vec![0; self.dimension()]
    }

    pub fn unit(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn idempotent(&self, v: usize) -> Element {
        self.unit(self.trivial[v])
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Element {
        let f = self.field();
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in &self.table[i][j] {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Element {
        let f = self.field();
        x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Element {
        let f = self.field();
        x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
    }

    pub fn scale(&self, x: &[u32], s: u32) -> Element {
        let f = self.field();
        x.iter().map(|&a| f.mul(a, s)).collect()
    }

    /// Coefficient of the trivial path `e_v` in `x`.
    pub fn trivial_coefficient(&self, x: &[u32], v: usize) -> u32 {
        x[self.trivial[v]]
    }

    /// Inverse of `x = λ e_v + (radical)` inside `e_v A e_v`.
    pub fn local_inverse(&self, x: &[u32], v: usize) -> Option<Element> {
        let f = self.field();
        let lambda = self.trivial_coefficient(x, v);
        if lambda == 0 {
            return None;
        }
        let li = f.inv(lambda);
        // x = λ(e + n) with n = λ^{-1} x - e nilpotent
        let n = self.sub(&self.scale(x, li), &self.idempotent(v));
        let minus_n = self.scale(&n, f.p() - 1);
        let mut term = self.idempotent(v);
        let mut sum = term.clone();
        for _ in 0..self.presentation.nilpotency_bound {
            term = self.mul(&term, &minus_n);
            if term.iter().all(|&c| c == 0) {
                break;
            }
            sum = self.add(&sum, &term);
        }
        Some(self.scale(&sum, li))
    }

    /// The indecomposable projective `P_v`.
    pub fn projective_module(&self, v: usize) -> Result<Rep> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
        Ok(crate::repmod::projective_sum(self, &[v]))
    }

    /// The simple module `S_v`.
    pub fn simple_module(&self, v: usize) -> Result<Rep> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
        let mut dims = vec![0; self.vertex_count()];
        dims[v] = 1;
        Ok(Rep::zero_maps(self, dims))
    }
}

/// Rows spanning the degree-`len` part of the ideal between `s` and `t`.
fn ideal_generators(
    pres: &Presentation,
    by_len: &[Vec<Path>],
    len: usize,
    s: usize,
    t: usize,
    col_of: &BTreeMap<&[usize], usize>,
) -> Vec<Vec<u32>> {
    let f = pres.field;
    let mut out = Vec::new();
    for rel in &pres.relations {
        let Some((_, head)) = rel.terms.first() else {
            continue;
        };
        let m = head.len();
        if m > len {
            continue;
        }
        for a in 0..=len - m {
            let b = len - m - a;
            let lefts = by_len[a]
                .iter()
                .filter(|u| u.source == s && u.target == head.source);
            for u in lefts {
                for v in by_len[b]
                    .iter()
                    .filter(|v| v.source == head.target && v.target == t)
                {
                    let mut row = vec![0u32; col_of.len()];
                    for (c, term) in &rel.terms {
                        let mut word = u.arrows.clone();
                        word.extend_from_slice(&term.arrows);
                        word.extend_from_slice(&v.arrows);
                        let col = col_of[word.as_slice()];
                        row[col] = f.add(row[col], *c);
                    }
                    if row.iter().any(|&x| x != 0) {
                        out.push(row);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    fn monomials(q: &Quiver, words: &[&[&str]]) -> Vec<Relation> {
        words
            .iter()
            .map(|w| {
                let arrows = w.iter().map(|l| q.arrow_index(l).unwrap()).collect();
                Relation::monomial(Path::from_arrows(q, arrows).unwrap())
            })
            .collect()
    }

    #[test]
    fn cyclic_two_vertices_radical_square_zero() {
        let q = Quiver::from_labels(&["1", "2"], &[("a1", "1", "2"), ("a2", "2", "1")]).unwrap();
        let rels = monomials(&q, &[&["a1", "a2"], &["a2", "a1"]]);
        let a = Algebra::build(Presentation::new(field(), q, rels, 2).unwrap()).unwrap();
        assert_eq!(a.dimension(), 4);
        let p1 = a.projective_module(0).unwrap();
        let p2 = a.projective_module(1).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p2.dims(), &[1, 1]);
    }

    #[test]
    fn one_vertex_is_the_field() {
        let q = Quiver::from_labels(&["1"], &[]).unwrap();
        let a = Algebra::build(Presentation::new(field(), q, vec![], 1).unwrap()).unwrap();
        assert_eq!(a.dimension(), 1);
        assert_eq!(a.projective_module(0).unwrap().dims(), &[1]);
        assert!(a.projective_module(1).is_err());
    }

    #[test]
    fn a2_projectives() {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = Algebra::build(Presentation::new(field(), q, vec![], 2).unwrap()).unwrap();
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.projective_module(0).unwrap().dims(), &[1, 1]);
        assert_eq!(a.projective_module(1).unwrap().dims(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_relations() {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let short = monomials(&q, &[&["a"]]);
        assert!(matches!(
            Presentation::new(field(), q.clone(), short, 2),
            Err(Error::InvalidRelation { index: 0, .. })
        ));
        let ab = Path::from_arrows(&q, vec![0, 1]).unwrap();
        let ba = Path::from_arrows(&q, vec![1, 0]).unwrap();
        let mixed = vec![Relation {
            terms: vec![(1, ab), (1, ba)],
        }];
        assert!(Presentation::new(field(), q.clone(), mixed, 2).is_err());
        // no relations but bound 2: length-2 paths survive
        let p = Presentation::new(field(), q, vec![], 2).unwrap();
        assert!(matches!(Algebra::build(p), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn commutativity_relation_kills_one_path() {
        // square 1->2->4, 1->3->4 with ab - cd
        let q = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let ab = Path::from_arrows(&q, vec![0, 1]).unwrap();
        let cd = Path::from_arrows(&q, vec![2, 3]).unwrap();
        let rel = Relation {
            terms: vec![(1, ab.clone()), (field().p() - 1, cd.clone())],
        };
        let a = Algebra::build(Presentation::new(field(), q, vec![rel], 3).unwrap()).unwrap();
        // 4 trivial + 4 arrows + 1 surviving length-2 path
        assert_eq!(a.dimension(), 9);
        assert_eq!(a.path_element(&ab), a.path_element(&cd));
    }

    #[test]
    fn local_inverse_in_truncated_loop() {
        // k[x]/x^3
        let q = Quiver::from_labels(&["1"], &[("x", "1", "1")]).unwrap();
        let x3 = Path::from_arrows(&q, vec![0, 0, 0]).unwrap();
        let a = Algebra::build(Presentation::new(field(), q, vec![Relation::monomial(x3)], 3).unwrap())
            .unwrap();
        assert_eq!(a.dimension(), 3);
        let mut u = a.idempotent(0);
        u[1] = 5;
        u[2] = 7;
        let inv = a.local_inverse(&u, 0).unwrap();
        assert_eq!(a.mul(&u, &inv), a.idempotent(0));
    }
}
