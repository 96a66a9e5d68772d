//! Representations of a bound quiver and homomorphisms between them.
//!
//! A [`Rep`] does not keep a pointer to its algebra; every operation takes the
//! [`Algebra`] explicitly and checks that the shapes agree.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Algebra, Element, Path};
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, PrimeField};
use crate::poly;
use crate::twoterm::TwoTermComplex;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Rep {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(alg: &Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrow_count() {
            return Err(Error::AlgebraMismatch);
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch {
                    op: "Rep::new",
                    left: m.shape(),
                    right: (dims[a.target], dims[a.source]),
                });
            }
        }
        let rep = Self {
            field: alg.field(),
            dims,
            maps,
        };
        if !rep.check_relations(alg) {
            return Err(Error::RelationsViolated);
        }
        Ok(rep)
    }

    fn raw(field: PrimeField, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Self { field, dims, maps }
    }

    pub fn zero(alg: &Algebra) -> Self {
        Self::zero_maps(alg, vec![0; alg.vertex_count()])
    }

    /// The semisimple representation with the given dimensions.
    pub fn zero_maps(alg: &Algebra, dims: Vec<usize>) -> Self {
        let f = alg.field();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Self::raw(f, dims, maps)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    fn compatible(&self, alg: &Algebra) -> Result<()> {
        if self.dims.len() != alg.vertex_count()
            || self.maps.len() != alg.quiver().arrow_count()
            || self.field != alg.field()
        {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn check_relations(&self, alg: &Algebra) -> bool {
        let f = self.field;
        alg.presentation().relations().iter().all(|rel| {
            let Some((_, head)) = rel.terms.first() else {
                return true;
            };
            let mut acc = Matrix::zeros(f, self.dims[head.target], self.dims[head.source]);
            for (c, p) in &rel.terms {
                acc = acc.add_scaled(&self.path_matrix(p), *c);
            }
            acc.is_zero()
        })
    }

    /// Matrix of a path `a1 a2 .. ak`, i.e. `M_ak ... M_a1`.
    pub fn path_matrix(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[path.source]);
        for &a in &path.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// `path_matrix` for every basis path, indexed like [`Algebra::basis`].
    pub fn basis_path_matrices(&self, alg: &Algebra) -> Vec<Matrix> {
        alg.basis().iter().map(|p| self.path_matrix(p)).collect()
    }

    /// Right action of `x ∈ e_s A e_t` as a matrix `M_s -> M_t`.
    pub fn action(&self, alg: &Algebra, x: &[u32], s: usize, t: usize) -> Matrix {
        let mut acc = Matrix::zeros(self.field, self.dims[t], self.dims[s]);
        for &i in alg.paths_between(s, t) {
            if x[i] != 0 {
                acc = acc.add_scaled(&self.path_matrix(&alg.basis()[i]), x[i]);
            }
        }
        acc
    }
}

/// Right action of `x ∈ e_s A e_t` using precomputed basis path matrices.
pub fn action_from_paths(
    alg: &Algebra,
    rep: &Rep,
    path_mats: &[Matrix],
    x: &[u32],
    s: usize,
    t: usize,
) -> Matrix {
    let mut acc = Matrix::zeros(rep.field, rep.dims[t], rep.dims[s]);
    for &i in alg.paths_between(s, t) {
        if x[i] != 0 {
            acc = acc.add_scaled(&path_mats[i], x[i]);
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap {
    source: Rep,
    target: Rep,
    comps: Vec<Matrix>,
}

impl RepMap {
    /// Checks shapes and the commuting squares.
    pub fn new(alg: &Algebra, source: Rep, target: Rep, comps: Vec<Matrix>) -> Result<Self> {
        source.compatible(alg)?;
        target.compatible(alg)?;
        if comps.len() != alg.vertex_count() {
            return Err(Error::AlgebraMismatch);
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::DimensionMismatch {
                    op: "RepMap::new",
                    left: c.shape(),
                    right: (target.dims[v], source.dims[v]),
                });
            }
        }
        let h = Self::raw(source, target, comps);
        if !h.commutes(alg) {
            return Err(Error::Precondition("components do not commute with the arrow maps"));
        }
        Ok(h)
    }

    fn raw(source: Rep, target: Rep, comps: Vec<Matrix>) -> Self {
        let h = Self {
            source,
            target,
            comps,
        };
        debug_assert!(h.comps.iter().enumerate().all(|(v, c)| c.shape()
            == (h.target.dims[v], h.source.dims[v])));
        h
    }

    pub fn commutes(&self, alg: &Algebra) -> bool {
        alg.quiver().arrows().iter().enumerate().all(|(b, a)| {
            self.target.maps[b].mul(&self.comps[a.source]) == self.comps[a.target].mul(&self.source.maps[b])
        })
    }

    pub fn identity(m: &Rep) -> Self {
        let comps = m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect();
        Self::raw(m.clone(), m.clone(), comps)
    }

    pub fn zero(source: &Rep, target: &Rep) -> Self {
        let comps = (0..source.dims.len())
            .map(|v| Matrix::zeros(source.field, target.dims[v], source.dims[v]))
            .collect();
        Self::raw(source.clone(), target.clone(), comps)
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }
    pub fn target(&self) -> &Rep {
        &self.target
    }
    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }
    pub fn component(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RepMap) -> Self {
        debug_assert_eq!(other.target.dims, self.source.dims);
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect();
        Self::raw(other.source.clone(), self.target.clone(), comps)
    }

    pub fn add_scaled(&self, other: &RepMap, s: u32) -> Self {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add_scaled(b, s)).collect();
        Self::raw(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, s: u32) -> Self {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        Self::raw(self.source.clone(), self.target.clone(), comps)
    }

    pub fn pow(&self, e: usize) -> Self {
        let comps = self.comps.iter().map(|a| a.pow(e)).collect();
        Self::raw(self.source.clone(), self.target.clone(), comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.comps.iter().all(Matrix::is_invertible)
    }

    pub fn trace(&self) -> u32 {
        let f = self.source.field;
        self.comps.iter().fold(0, |acc, c| f.add(acc, c.trace()))
    }

    /// All component entries, vertex by vertex in row-major order.
    pub fn flatten(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for c in &self.comps {
            for r in 0..c.rows() {
                out.extend_from_slice(c.row(r));
            }
        }
        out
    }

    /// Block-diagonal matrix of all components.
    pub fn total_matrix(&self) -> Matrix {
        let f = self.source.field;
        let mut m = Matrix::zeros(f, self.target.total_dim(), self.source.total_dim());
        let (mut r0, mut c0) = (0, 0);
        for c in &self.comps {
            for r in 0..c.rows() {
                for k in 0..c.cols() {
                    m.set(r0 + r, c0 + k, c.get(r, k));
                }
            }
            r0 += c.rows();
            c0 += c.cols();
        }
        m
    }
}

/// Basis of `Hom(m, n)` from the commuting-square equations; deterministic.
pub fn hom_basis(alg: &Algebra, m: &Rep, n: &Rep) -> Result<Vec<RepMap>> {
    m.compatible(alg)?;
    n.compatible(alg)?;
    let f = alg.field();
    let nv = alg.vertex_count();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let vars = offset[nv];
    if vars == 0 {
        return Ok(Vec::new());
    }
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (b, a) in alg.quiver().arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (nb, mb) = (&n.maps[b], &m.maps[b]);
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let mut row = vec![0u32; vars];
                for k in 0..n.dims[i] {
                    let x = nb.get(r, k);
                    if x != 0 {
                        let idx = var(i, k, c);
                        row[idx] = f.add(row[idx], x);
                    }
                }
                for k in 0..m.dims[j] {
                    let x = mb.get(k, c);
                    if x != 0 {
                        let idx = var(j, r, k);
                        row[idx] = f.sub(row[idx], x);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let mut sys = Matrix::zeros(f, rows.len(), vars);
    for (r, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            if x != 0 {
                sys.set(r, c, x);
            }
        }
    }
    Ok(sys
        .kernel_basis()
        .into_iter()
        .map(|sol| {
            let comps = (0..nv)
                .map(|v| {
                    let mut c = Matrix::zeros(f, n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for k in 0..m.dims[v] {
                            c.set(r, k, sol[var(v, r, k)]);
                        }
                    }
                    c
                })
                .collect();
            RepMap::raw(m.clone(), n.clone(), comps)
        })
        .collect())
}

pub fn hom_dim(alg: &Algebra, m: &Rep, n: &Rep) -> Result<usize> {
    Ok(hom_basis(alg, m, n)?.len())
}

/// Looks for an invertible element of `Hom(m, n)`: basis elements first
/// (enough when `m` is indecomposable), then pseudo-random combinations, and
/// finally by matching indecomposable summands.
pub fn is_isomorphic(alg: &Algebra, m: &Rep, n: &Rep) -> Result<bool> {
    m.compatible(alg)?;
    n.compatible(alg)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let basis = hom_basis(alg, m, n)?;
    if basis.iter().any(RepMap::is_isomorphism) {
        return Ok(true);
    }
    if basis.len() < 2 {
        return Ok(false);
    }
    let p = u64::from(alg.field().p());
    let mut state: u64 = 0x2545_f491_4f6c_dd1d;
    for _ in 0..8 {
        let mut acc = RepMap::zero(m, n);
        for h in &basis {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            acc = acc.add_scaled(h, (state % p) as u32);
        }
        if acc.is_isomorphism() {
            return Ok(true);
        }
    }
    let (a, b) = (decompose(alg, m)?, decompose(alg, n)?);
    if a.len() == 1 && b.len() == 1 {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for x in &a {
        let mut hit = false;
        for (j, y) in b.iter().enumerate() {
            if !used[j] && is_isomorphic(alg, x, y)? {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(used.iter().all(|&u| u))
}

/// Direct sum in the given order.
pub fn direct_sum(alg: &Algebra, reps: &[&Rep]) -> Rep {
    let f = alg.field();
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| reps.iter().map(|r| r.dims[v]).sum()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(b, a)| {
            let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
            let (mut r0, mut c0) = (0, 0);
            for rep in reps {
                let x = &rep.maps[b];
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        m.set(r0 + r, c0 + c, x.get(r, c));
                    }
                }
                r0 += x.rows();
                c0 += x.cols();
            }
            m
        })
        .collect();
    Rep::raw(f, dims, maps)
}

/// Offsets of each summand of `⊕_k P_{vs[k]}` inside its component at `w`.
pub fn projective_offsets(alg: &Algebra, vs: &[usize], w: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(vs.len() + 1);
    let mut acc = 0;
    for &v in vs {
        out.push(acc);
        acc += alg.paths_between(v, w).len();
    }
    out.push(acc);
    out
}

/// `⊕_k P_{vs[k]}` with the basis-path basis at each vertex.
pub fn projective_sum(alg: &Algebra, vs: &[usize]) -> Rep {
    let f = alg.field();
    let nv = alg.vertex_count();
    let offs: Vec<Vec<usize>> = (0..nv).map(|w| projective_offsets(alg, vs, w)).collect();
    let dims: Vec<usize> = (0..nv).map(|w| offs[w][vs.len()]).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(b, a)| {
            let (w, w2) = (a.source, a.target);
            let arrow = alg.path_element(&Path {
                source: w,
                target: w2,
                arrows: vec![b],
            });
            let mut m = Matrix::zeros(f, dims[w2], dims[w]);
            for (k, &v) in vs.iter().enumerate() {
                for (i, &q) in alg.paths_between(v, w).iter().enumerate() {
                    let prod = alg.mul(&alg.unit(q), &arrow);
                    for &t in alg.paths_between(v, w2) {
                        if prod[t] != 0 {
                            m.set(offs[w2][k] + alg.position_in_block(t), offs[w][k] + i, prod[t]);
                        }
                    }
                }
            }
            m
        })
        .collect();
    Rep::raw(f, dims, maps)
}

/// The map `⊕_c P_{src[c]} -> ⊕_r P_{tgt[r]}` given by left multiplication
/// with the block matrix `d[r][c] ∈ e_{tgt[r]} A e_{src[c]}`.
pub fn projective_map(alg: &Algebra, src: &[usize], tgt: &[usize], d: &[Vec<Element>]) -> RepMap {
    let f = alg.field();
    let source = projective_sum(alg, src);
    let target = projective_sum(alg, tgt);
    let comps = (0..alg.vertex_count())
        .map(|w| {
            let so = projective_offsets(alg, src, w);
            let to = projective_offsets(alg, tgt, w);
            let mut m = Matrix::zeros(f, target.dims[w], source.dims[w]);
            for (c, &u) in src.iter().enumerate() {
                for (i, &q) in alg.paths_between(u, w).iter().enumerate() {
                    let uq = alg.unit(q);
                    for (r, &v) in tgt.iter().enumerate() {
                        let prod = alg.mul(&d[r][c], &uq);
                        for &t in alg.paths_between(v, w) {
                            if prod[t] != 0 {
                                m.set(to[r] + alg.position_in_block(t), so[c] + i, prod[t]);
                            }
                        }
                    }
                }
            }
            m
        })
        .collect();
    RepMap::raw(source, target, comps)
}

/// The map `⊕_k P_{vs[k]} -> m` sending `e_{vs[k]}` to `gens[k] ∈ m_{vs[k]}`.
pub fn map_from_projectives(alg: &Algebra, vs: &[usize], gens: &[Vec<u32>], m: &Rep) -> RepMap {
    let f = alg.field();
    let source = projective_sum(alg, vs);
    let mats = m.basis_path_matrices(alg);
    let comps = (0..alg.vertex_count())
        .map(|w| {
            let so = projective_offsets(alg, vs, w);
            let mut out = Matrix::zeros(f, m.dims[w], source.dims[w]);
            for (k, &v) in vs.iter().enumerate() {
                for (i, &q) in alg.paths_between(v, w).iter().enumerate() {
                    let col = mats[q].mul_vec(&gens[k]);
                    for (r, &x) in col.iter().enumerate() {
                        out.set(r, so[k] + i, x);
                    }
                }
            }
            out
        })
        .collect();
    RepMap::raw(source, m.clone(), comps)
}

/// Rows spanning the annihilator of the column space of `a`.
fn left_annihilator(a: &Matrix) -> Matrix {
    let f = a.field();
    let ker = a.transpose().kernel_basis();
    let mut q = Matrix::zeros(f, ker.len(), a.rows());
    for (r, v) in ker.iter().enumerate() {
        for (c, &x) in v.iter().enumerate() {
            q.set(r, c, x);
        }
    }
    q
}

/// A right inverse of a full-row-rank matrix.
fn section(q: &Matrix) -> Matrix {
    q.solve_right(&Matrix::identity(q.field(), q.rows()))
        .ok()
        .flatten()
        .expect("full row rank")
}

/// Solution of `a x = b` for `a` of full column rank.
fn solve_unique(a: &Matrix, b: &Matrix) -> Matrix {
    a.solve_right(b).ok().flatten().expect("induced map exists")
}

/// Kernel object with its inclusion.
pub fn kernel(alg: &Algebra, h: &RepMap) -> (Rep, RepMap) {
    let f = alg.field();
    let ks: Vec<Matrix> = h.comps.iter().map(Matrix::kernel_matrix).collect();
    let dims: Vec<usize> = ks.iter().map(Matrix::cols).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(b, a)| solve_unique(&ks[a.target], &h.source.maps[b].mul(&ks[a.source])))
        .collect();
    let k = Rep::raw(f, dims, maps);
    let incl = RepMap::raw(k.clone(), h.source.clone(), ks);
    (k, incl)
}

/// Cokernel object with its projection.
pub fn cokernel(alg: &Algebra, h: &RepMap) -> (Rep, RepMap) {
    let f = alg.field();
    let qs: Vec<Matrix> = h.comps.iter().map(left_annihilator).collect();
    quotient_by(alg, f, &h.target, qs)
}

fn quotient_by(alg: &Algebra, f: PrimeField, n: &Rep, qs: Vec<Matrix>) -> (Rep, RepMap) {
    let dims: Vec<usize> = qs.iter().map(Matrix::rows).collect();
    let sections: Vec<Matrix> = qs.iter().map(section).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(b, a)| qs[a.target].mul(&n.maps[b]).mul(&sections[a.source]))
        .collect();
    let c = Rep::raw(f, dims, maps);
    let proj = RepMap::raw(n.clone(), c.clone(), qs);
    (c, proj)
}

/// Image object with its inclusion into the target.
pub fn image(alg: &Algebra, h: &RepMap) -> (Rep, RepMap) {
    let f = alg.field();
    let is: Vec<Matrix> = h.comps.iter().map(Matrix::column_space).collect();
    let dims: Vec<usize> = is.iter().map(Matrix::cols).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(b, a)| solve_unique(&is[a.target], &h.target.maps[b].mul(&is[a.source])))
        .collect();
    let im = Rep::raw(f, dims, maps);
    let incl = RepMap::raw(im.clone(), h.target.clone(), is);
    (im, incl)
}

/// `M / rad M` (all arrow maps zero) and the quotient map.
pub fn top(alg: &Algebra, m: &Rep) -> (Rep, RepMap) {
    let f = alg.field();
    let qs = (0..alg.vertex_count())
        .map(|j| {
            let mut rad = Matrix::zeros(f, m.dims[j], 0);
            for (b, a) in alg.quiver().arrows().iter().enumerate() {
                if a.target == j {
                    rad = rad.hstack(&m.maps[b]);
                }
            }
            left_annihilator(&rad)
        })
        .collect::<Vec<_>>();
    let dims: Vec<usize> = qs.iter().map(Matrix::rows).collect();
    let t = Rep::zero_maps(alg, dims);
    let quot = RepMap::raw(m.clone(), t.clone(), qs);
    (t, quot)
}

/// Projective cover: the summand vertices (ascending, with multiplicity),
/// the projective `P`, and an epimorphism `P -> m`.
pub fn projective_cover(alg: &Algebra, m: &Rep) -> (Vec<usize>, Rep, RepMap) {
    let (_, quot) = top(alg, m);
    let mut vs = Vec::new();
    let mut gens = Vec::new();
    for v in 0..alg.vertex_count() {
        let q = &quot.comps[v];
        if q.rows() == 0 {
            continue;
        }
        let s = section(q);
        for c in 0..s.cols() {
            vs.push(v);
            gens.push(s.column(c));
        }
    }
    let epi = map_from_projectives(alg, &vs, &gens, m);
    let p = epi.source.clone();
    (vs, p, epi)
}

/// Minimal projective presentation `P₋₁ -> P₀` with cokernel `m`.
pub fn min_projective_presentation(alg: &Algebra, m: &Rep) -> TwoTermComplex {
    let (zero, _, epi) = projective_cover(alg, m);
    let (k, incl) = kernel(alg, &epi);
    let (neg1, _, cover) = projective_cover(alg, &k);
    let comp = incl.compose(&cover);
    let mut d = vec![vec![alg.zero(); neg1.len()]; zero.len()];
    for (c, &u) in neg1.iter().enumerate() {
        let so = projective_offsets(alg, &neg1, u);
        let mut e = vec![0; comp.source.dims[u]];
        // the trivial path is the first basis path of the (u, u) block
        e[so[c]] = 1;
        let y = comp.comps[u].mul_vec(&e);
        let to = projective_offsets(alg, &zero, u);
        for (r, &v) in zero.iter().enumerate() {
            for (i, &q) in alg.paths_between(v, u).iter().enumerate() {
                d[r][c][q] = y[to[r] + i];
            }
        }
    }
    TwoTermComplex::new_unchecked(neg1, zero, d)
}

/// `x ∈ Fac(generators)`: the evaluation map from copies of the generators
/// indexed by a basis of `Hom(generators, x)` is onto.
pub fn fac_contains(alg: &Algebra, generators: &Rep, x: &Rep) -> Result<bool> {
    let homs = hom_basis(alg, generators, x)?;
    Ok((0..alg.vertex_count()).all(|v| {
        if x.dims[v] == 0 {
            return true;
        }
        let mut span = Matrix::zeros(alg.field(), x.dims[v], 0);
        for h in &homs {
            span = span.hstack(&h.comps[v]);
        }
        span.rank() == x.dims[v]
    }))
}

/// Gram matrix of the trace form on `End(m)` for the given basis.
fn trace_gram(f: PrimeField, basis: &[RepMap]) -> Matrix {
    let k = basis.len();
    let mut g = Matrix::zeros(f, k, k);
    for i in 0..k {
        for j in i..k {
            let t = basis[i].compose(&basis[j]).trace();
            g.set(i, j, t);
            g.set(j, i, t);
        }
    }
    g
}

/// Indecomposability test. Assumes the simple quotients of `End(m)` are
/// matrix algebras over the prime field and `p` exceeds `dim m`; then the
/// radical of the trace form is the Jacobson radical and `m` is
/// indecomposable iff the form has rank one.
pub fn is_indecomposable(alg: &Algebra, m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let end = hom_basis(alg, m, m)?;
    Ok(trace_gram(alg.field(), &end).rank() == 1)
}

/// Krull-Schmidt decomposition by repeated Fitting splitting. Summands come
/// out up to isomorphism and in a deterministic order.
pub fn decompose(alg: &Algebra, m: &Rep) -> Result<Vec<Rep>> {
    m.compatible(alg)?;
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        let end = hom_basis(alg, &x, &x)?;
        if trace_gram(alg.field(), &end).rank() == 1 {
            out.push(x);
            continue;
        }
        let (a, b) = fitting_split(alg, &x, &end)?;
        // push in reverse so the first part is handled first
        stack.push(b);
        stack.push(a);
    }
    Ok(out)
}

fn fitting_split(alg: &Algebra, x: &Rep, end: &[RepMap]) -> Result<(Rep, Rep)> {
    let f = alg.field();
    let dim = x.total_dim();
    let mut candidates: Vec<RepMap> = end.to_vec();
    // deterministic pseudo-random combinations as a fallback
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..64 {
        let mut acc = RepMap::zero(x, x);
        for e in end {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            acc = acc.add_scaled(e, (state % u64::from(f.p())) as u32);
        }
        candidates.push(acc);
    }
    for phi in &candidates {
        let total = phi.total_matrix();
        for lambda in poly::roots(f, &total.charpoly()) {
            let shifted = phi.add_scaled(&RepMap::identity(x), f.neg(lambda));
            let power = shifted.pow(dim);
            if power.is_zero() || power.is_isomorphism() {
                continue;
            }
            let (k, _) = kernel(alg, &power);
            let (im, _) = image(alg, &power);
            return Ok((k, im));
        }
    }
    Err(Error::DecompositionFailed)
}
