//! Submodules of graded free modules over a graded ring `R = S / I`.
//!
//! A [`SubmoduleGb`] holds the Gröbner basis of `U + I·F` inside the free
//! `S`-module `F`, which is what every quotient `F / U` (a finitely presented
//! `R`-module) needs: normal forms, membership, and k-bases of graded pieces
//! given by standard terms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{solve_columns, Echelon};
use crate::ringkernel::groebner::{groebner, to_polys, MTerm, ModuleOrder, Reducer};
use crate::ringkernel::poly::{check_vector_homogeneous, monomials_of_degree, Monomial, Poly, Vector};
use crate::ringkernel::ring::GradedRing;

/// Standard terms of one graded piece of `F / U`.
#[derive(Debug, Clone)]
pub struct Piece {
    pub degree: i32,
    pub terms: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.terms.len()
    }

    pub fn index_of(&self, comp: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(comp, m.clone())).copied()
    }
}

#[derive(Debug)]
pub struct SubmoduleGb {
    ring: Arc<GradedRing>,
    degrees: Vec<i32>,
    reducer: Reducer,
    pieces: Mutex<HashMap<i32, Arc<Piece>>>,
}

impl SubmoduleGb {
    /// Gröbner basis of `span(gens) + I·F` for `F = ⊕ R(-degrees[i])`.
    pub fn new(ring: &Arc<GradedRing>, degrees: &[i32], gens: &[Vector]) -> Self {
        let order = ModuleOrder::top(degrees.to_vec());
        let mut input: Vec<Vec<MTerm>> = gens.iter().map(|g| order.from_polys(g, 0)).collect();
        for c in 0..degrees.len() {
            for q in ring.groebner_basis() {
                input.push(
                    q.terms()
                        .iter()
                        .map(|(m, k)| MTerm { comp: c as u32, mono: m.clone(), coef: *k })
                        .collect(),
                );
            }
        }
        let gb = groebner(input, &order, ring.field(), ring.weights());
        let mut reducer = Reducer::new(order, ring.field());
        for v in gb {
            reducer.push(v);
        }
        SubmoduleGb { ring: ring.clone(), degrees: degrees.to_vec(), reducer, pieces: Mutex::new(HashMap::new()) }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    /// Basis elements as column vectors.
    pub fn basis(&self) -> Vec<Vector> {
        self.reducer.elems().iter().map(|v| to_polys(v, 0..self.rank())).collect()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.reducer.elems().iter().map(|v| (v[0].comp as usize, v[0].mono.clone())).collect()
    }

    pub fn nf(&self, v: &[Poly]) -> Vector {
        let r = self.reducer.reduce(self.reducer.order.from_polys(v, 0));
        to_polys(&r, 0..self.rank())
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        self.reducer.reduce(self.reducer.order.from_polys(v, 0)).is_empty()
    }

    pub fn is_standard(&self, comp: usize, m: &Monomial) -> bool {
        !self.reducer.is_reducible(comp as u32, m)
    }

    pub fn piece(&self, d: i32) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().expect("piece cache poisoned").get(&d) {
            return p.clone();
        }
        let mut terms = Vec::new();
        for (c, &s) in self.degrees.iter().enumerate() {
            for m in monomials_of_degree(self.ring.weights(), d - s) {
                if self.is_standard(c, &m) {
                    terms.push((c, m));
                }
            }
        }
        let index = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let p = Arc::new(Piece { degree: d, terms, index });
        self.pieces.lock().expect("piece cache poisoned").insert(d, p.clone());
        p
    }

    pub fn piece_dim(&self, d: i32) -> usize {
        self.piece(d).dim()
    }

    /// Coordinates of a homogeneous element of degree `d` in the standard
    /// basis of the degree-`d` piece of `F / U`.
    pub fn coords(&self, v: &[Poly], d: i32) -> Vec<u32> {
        let piece = self.piece(d);
        let mut out = vec![0u32; piece.dim()];
        let r = self.reducer.reduce(self.reducer.order.from_polys(v, 0));
        for t in r {
            let i = piece
                .index_of(t.comp as usize, &t.mono)
                .unwrap_or_else(|| panic!("term outside degree {d} in coords"));
            out[i] = t.coef;
        }
        out
    }

    /// The element with the given coordinates in the degree-`d` piece.
    pub fn from_coords(&self, d: i32, coords: &[u32]) -> Vector {
        let piece = self.piece(d);
        let f = self.field();
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.rank()];
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                let (comp, m) = &piece.terms[i];
                buckets[*comp].push((m.clone(), c));
            }
        }
        buckets.into_iter().map(|ts| Poly::from_terms(f, ts)).collect()
    }

    /// For each component, whether every variable has a pure power among the
    /// leading terms: exactly when `F / U` has finite length.
    pub fn is_finite_length(&self) -> bool {
        let lts = self.leading_terms();
        (0..self.rank()).all(|c| {
            (0..self.ring.nvars()).all(|v| {
                lts.iter().any(|(lc, m)| *lc == c && (m.is_one() || m.pure_power_var() == Some(v)))
            })
        })
    }

    /// Highest degree that can carry a standard term when of finite length.
    pub fn top_degree_bound(&self) -> Option<i32> {
        if !self.is_finite_length() {
            return None;
        }
        let lts = self.leading_terms();
        let w = self.ring.weights();
        let mut best = i32::MIN;
        for (c, &s) in self.degrees.iter().enumerate() {
            if lts.iter().any(|(lc, m)| *lc == c && m.is_one()) {
                continue;
            }
            let mut top = s;
            for (v, &wv) in w.iter().enumerate() {
                let e = lts
                    .iter()
                    .filter(|(lc, m)| *lc == c && m.pure_power_var() == Some(v))
                    .map(|(_, m)| m.exponents()[v] as i32)
                    .min()
                    .expect("finite length implies a pure power");
                top += (e - 1) * wv;
            }
            best = best.max(top);
        }
        Some(best)
    }

    /// Length of `F / U` when finite.
    pub fn length(&self) -> Option<usize> {
        let top = self.top_degree_bound()?;
        let low = self.degrees.iter().copied().min().unwrap_or(0);
        Some((low..=top).map(|d| self.piece_dim(d)).sum())
    }

    /// Hilbert function values of `F / U` on `lo..=hi`.
    pub fn hilbert(&self, lo: i32, hi: i32) -> Vec<(i32, usize)> {
        (lo..=hi).map(|d| (d, self.piece_dim(d))).collect()
    }
}

/// Degrees of columns; errors when a column is not homogeneous.
pub fn column_degrees(cols: &[Vector], ambient: &[i32]) -> Result<Vec<Option<i32>>> {
    cols.iter()
        .enumerate()
        .map(|(j, c)| {
            check_vector_homogeneous(c, ambient).map_err(|e| Error::DegreeInconsistent(format!("column {j}: {e}")))
        })
        .collect()
}

/// Generators of `{c ∈ R^k : Σ c_j cols[j] ∈ span(extra) + I·F}`.
///
/// Computed by a Gröbner basis of `(cols[j], e_j)`, `(extra, 0)` and the
/// ideal multiples in an order eliminating the ambient block; the result is
/// reduced modulo `I` and generally not minimal.
pub fn syzygies_mod(
    ring: &Arc<GradedRing>,
    ambient: &[i32],
    cols: &[Vector],
    col_degrees: &[i32],
    extra: &[Vector],
) -> Vec<Vector> {
    let g = ambient.len();
    let k = cols.len();
    let mut shifts = ambient.to_vec();
    shifts.extend_from_slice(col_degrees);
    let order = ModuleOrder::elimination(shifts, g);
    let f = ring.field();
    let mut input: Vec<Vec<MTerm>> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v: Vector = c.clone();
        v.resize(g + k, Poly::zero());
        v[g + j] = ring.one();
        input.push(order.from_polys(&v, 0));
    }
    for e in extra {
        input.push(order.from_polys(e, 0));
    }
    for q in ring.groebner_basis() {
        for c in 0..g + k {
            input.push(q.terms().iter().map(|(m, x)| MTerm { comp: c as u32, mono: m.clone(), coef: *x }).collect());
        }
    }
    let gb = groebner(input, &order, f, ring.weights());
    let mut out = Vec::new();
    for v in gb {
        if (v[0].comp as usize) < g {
            continue;
        }
        let syz: Vector = to_polys(&v, g..g + k).iter().map(|p| ring.reduce(p)).collect();
        if syz.iter().any(|p| !p.is_zero()) {
            out.push(syz);
        }
    }
    out
}

/// A graded-minimal subset of `cands` generating the same submodule modulo
/// `modulo` (which must contain `I·F`). Candidates are scanned by degree and
/// then by position, so the choice is deterministic.
pub fn minimal_generators(modulo: &SubmoduleGb, cands: &[Vector]) -> Vec<usize> {
    let ring = modulo.ring().clone();
    let f = ring.field();
    let mut with_deg: Vec<(i32, usize)> = cands
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            if modulo.contains(c) {
                return None;
            }
            crate::ringkernel::poly::vector_degree(c, modulo.degrees()).map(|d| (d, i))
        })
        .collect();
    with_deg.sort();
    let mut kept: Vec<(i32, usize)> = Vec::new();
    let mut idx = 0;
    while idx < with_deg.len() {
        let d = with_deg[idx].0;
        let mut span = Echelon::new(f, modulo.piece_dim(d));
        for &(kd, ki) in &kept {
            for m in monomials_of_degree(ring.weights(), d - kd) {
                if !ring.is_standard(&m) {
                    continue;
                }
                let v: Vector = cands[ki].iter().map(|p| p.mul_monomial(f, &m, 1)).collect();
                span.insert(modulo.coords(&v, d));
            }
        }
        while idx < with_deg.len() && with_deg[idx].0 == d {
            let i = with_deg[idx].1;
            if span.insert(modulo.coords(&cands[i], d)) {
                kept.push((d, i));
            }
            idx += 1;
        }
    }
    let mut out: Vec<usize> = kept.into_iter().map(|(_, i)| i).collect();
    out.sort_by_key(|&i| {
        let d = crate::ringkernel::poly::vector_degree(&cands[i], modulo.degrees()).unwrap_or(0);
        (d, i)
    });
    out
}

/// Solves `Σ w_j cols[j] ≡ target` modulo `modulo`, degree by degree, with
/// homogeneous coefficients `w_j ∈ R_{D - deg_j}` where `D` is the degree of
/// the target. Returns `None` when no solution exists.
pub fn lift(modulo: &SubmoduleGb, cols: &[Vector], col_degrees: &[i32], target: &[Poly], target_degree: i32) -> Option<Vec<Poly>> {
    let ring = modulo.ring().clone();
    let f = ring.field();
    let d = target_degree;
    let dim = modulo.piece_dim(d);
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    let mut images: Vec<Vec<u32>> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        for m in ring.standard_monomials(d - col_degrees[j]) {
            let v: Vector = c.iter().map(|p| p.mul_monomial(f, &m, 1)).collect();
            images.push(modulo.coords(&v, d));
            unknowns.push((j, m));
        }
    }
    let t = modulo.coords(target, d);
    let x = solve_columns(f, dim, &images, &t)?;
    let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); cols.len()];
    for (i, &c) in x.iter().enumerate() {
        if c != 0 {
            let (j, m) = &unknowns[i];
            buckets[*j].push((m.clone(), c));
        }
    }
    Some(buckets.into_iter().map(|ts| Poly::from_terms(f, ts)).collect())
}

/// `Σ_j coeffs[j] * cols[j]` in a free module of rank `rank`.
pub fn combine(f: PrimeField, rank: usize, cols: &[Vector], coeffs: &[Poly]) -> Vector {
    let mut out = vec![Poly::zero(); rank];
    for (c, w) in cols.iter().zip(coeffs) {
        if w.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(c) {
            if !p.is_zero() {
                *o = o.add(f, &p.mul(f, w));
            }
        }
    }
    out
}
