//! Dense, degree-by-degree models of `R`, of `R/m^n`, and of finitely
//! presented modules. Every piece is a quotient of a space of monomials by
//! the span of explicit products; no normal-form machinery is involved.

use std::collections::HashMap;
use std::sync::Arc;

use crate::field::PrimeField;
use crate::linalg::{Echelon, Mat};
use crate::ringkernel::poly::monomials_of_degree;
use crate::ringkernel::{GradedRing, Monomial, Poly, Vector};

struct Piece {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    span: Echelon,
    /// Free positions: the chosen basis monomials.
    basis: Vec<usize>,
}

/// `R_{≤top}` (optionally modulo `m^power`) as vector spaces with explicit
/// variable actions.
pub struct TruncatedAlgebraModel {
    field: PrimeField,
    weights: Vec<i32>,
    pub top: i32,
    pub power: Option<u32>,
    pieces: Vec<Piece>,
    /// `var_mats[i][d]`: multiplication by `x_i` from degree `d` to `d + w_i`.
    var_mats: Vec<Vec<Option<Mat>>>,
}

impl TruncatedAlgebraModel {
    pub fn new(ring: &Arc<GradedRing>, top: i32, power: Option<u32>) -> Self {
        let field = ring.field();
        let weights = ring.weights().to_vec();
        let ideal = ring.defining_ideal().to_vec();
        let mut pieces = Vec::new();
        for d in 0..=top.max(0) {
            let monos = monomials_of_degree(&weights, d);
            let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut span = Echelon::new(field, monos.len());
            for g in &ideal {
                let Some(dg) = g.degree() else { continue };
                for u in monomials_of_degree(&weights, d - dg) {
                    let mut v = vec![0u32; monos.len()];
                    for (m, c) in g.terms() {
                        let k = index[&m.mul(&u)];
                        v[k] = field.add(v[k], *c);
                    }
                    span.insert(v);
                }
            }
            if let Some(n) = power {
                for (k, m) in monos.iter().enumerate() {
                    if m.total_exponent() >= n {
                        let mut v = vec![0u32; monos.len()];
                        v[k] = 1;
                        span.insert(v);
                    }
                }
            }
            let basis = span.free_positions();
            pieces.push(Piece { monos, index, span, basis });
        }
        let mut model = TruncatedAlgebraModel { field, weights, top, power, pieces, var_mats: Vec::new() };
        model.var_mats = (0..model.weights.len())
            .map(|i| {
                (0..=top.max(0))
                    .map(|d| {
                        let w = model.weights[i];
                        if d + w > top {
                            return None;
                        }
                        let xi = Monomial::variable(i, &model.weights);
                        Some(
                            (0..model.dim(d))
                                .map(|k| model.monomial_coords(&model.basis_monomial(d, k).mul(&xi)))
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        model
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < 0 || d > self.top {
            0
        } else {
            self.pieces[d as usize].basis.len()
        }
    }

    pub fn basis_monomial(&self, d: i32, k: usize) -> Monomial {
        let p = &self.pieces[d as usize];
        p.monos[p.basis[k]].clone()
    }

    /// Coordinates of a monomial in the basis of its degree.
    pub fn monomial_coords(&self, m: &Monomial) -> Vec<u32> {
        let d = m.degree();
        let p = &self.pieces[d as usize];
        let mut v = vec![0u32; p.monos.len()];
        v[p.index[m]] = 1;
        p.span.quotient_coords(&v)
    }

    /// Coordinates of a homogeneous polynomial of degree `d`.
    pub fn poly_coords(&self, f: &Poly, d: i32) -> Vec<u32> {
        if d < 0 || d > self.top {
            return Vec::new();
        }
        let p = &self.pieces[d as usize];
        let mut v = vec![0u32; p.monos.len()];
        for (m, c) in f.terms() {
            let k = p.index[m];
            v[k] = self.field.add(v[k], *c);
        }
        p.span.quotient_coords(&v)
    }

    /// The polynomial with the given coordinates in degree `d`.
    pub fn to_poly(&self, c: &[u32], d: i32) -> Poly {
        let mut terms: Vec<(Monomial, u32)> = c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(k, &x)| (self.basis_monomial(d, k), x))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly::from_sorted_terms(terms)
    }

    pub fn var_matrix(&self, i: usize, d: i32) -> Option<&Mat> {
        if d < 0 || d > self.top {
            return None;
        }
        self.var_mats[i][d as usize].as_ref()
    }

    /// `m · v` for `v` in degree `d`; `None` beyond the modeled range.
    pub fn mul_monomial(&self, m: &Monomial, v: &[u32], d: i32) -> Option<Vec<u32>> {
        let mut cur = v.to_vec();
        let mut deg = d;
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                let mat = self.var_matrix(i, deg)?;
                cur = row_times(self.field, &cur, mat, self.dim(deg + self.weights[i]));
                deg += self.weights[i];
            }
        }
        Some(cur)
    }

    /// `f · v` for homogeneous `f` and `v` in degree `d`.
    pub fn mul_poly(&self, f: &Poly, v: &[u32], d: i32) -> Option<Vec<u32>> {
        let Some(df) = f.degree() else {
            return Some(vec![0; self.dim(d)]);
        };
        let mut out = vec![0u32; self.dim(d + df)];
        if d + df > self.top {
            return if out.is_empty() { Some(out) } else { None };
        }
        for (m, c) in f.terms() {
            let w = self.mul_monomial(m, v, d)?;
            for (o, x) in out.iter_mut().zip(w) {
                *o = self.field.add(*o, self.field.mul(*c, x));
            }
        }
        Some(out)
    }
}

fn row_times(f: PrimeField, v: &[u32], m: &Mat, out_dim: usize) -> Vec<u32> {
    let mut out = vec![0u32; out_dim];
    for (row, &c) in m.iter().zip(v) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

/// Dense model of a module `F / (relations)` over a [`TruncatedAlgebraModel`].
/// Elements of `F_d` are coordinate vectors over `⊕_k R_{d - g_k}`.
pub struct DenseModule<'a> {
    pub ring: &'a TruncatedAlgebraModel,
    pub degrees: Vec<i32>,
    pub relations: Vec<Vector>,
    pub relation_degrees: Vec<i32>,
    pieces: HashMap<i32, (Vec<usize>, Echelon)>,
}

impl<'a> DenseModule<'a> {
    pub fn new(ring: &'a TruncatedAlgebraModel, degrees: &[i32], relations: &[Vector]) -> Self {
        let relation_degrees = relations
            .iter()
            .map(|c| {
                c.iter()
                    .zip(degrees)
                    .find_map(|(p, &g)| p.degree().map(|e| e + g))
                    .unwrap_or(i32::MIN)
            })
            .collect();
        DenseModule { ring, degrees: degrees.to_vec(), relations: relations.to_vec(), relation_degrees, pieces: HashMap::new() }
    }

    pub fn offsets(&self, d: i32) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.degrees.len() + 1);
        let mut acc = 0;
        for &g in &self.degrees {
            off.push(acc);
            acc += self.ring.dim(d - g);
        }
        off.push(acc);
        off
    }

    pub fn free_dim(&self, d: i32) -> usize {
        *self.offsets(d).last().unwrap()
    }

    /// `F_d` coordinates of a vector of polynomials of degree `d`.
    pub fn free_coords(&self, v: &[Poly], d: i32) -> Vec<u32> {
        let off = self.offsets(d);
        let mut out = vec![0u32; off[self.degrees.len()]];
        for (k, p) in v.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let c = self.ring.poly_coords(p, d - self.degrees[k]);
            out[off[k]..off[k + 1]].copy_from_slice(&c);
        }
        out
    }

    pub fn to_vector(&self, c: &[u32], d: i32) -> Vector {
        let off = self.offsets(d);
        (0..self.degrees.len())
            .map(|k| self.ring.to_poly(&c[off[k]..off[k + 1]], d - self.degrees[k]))
            .collect()
    }

    /// `f · v` in `F`.
    pub fn mul_free(&self, f: &Poly, v: &[u32], d: i32) -> Option<Vec<u32>> {
        let Some(df) = f.degree() else {
            return Some(vec![0; self.free_dim(d)]);
        };
        let off = self.offsets(d);
        let off2 = self.offsets(d + df);
        let mut out = vec![0u32; off2[self.degrees.len()]];
        for k in 0..self.degrees.len() {
            let part = &v[off[k]..off[k + 1]];
            if part.iter().all(|&x| x == 0) {
                continue;
            }
            let w = self.ring.mul_poly(f, part, d - self.degrees[k])?;
            out[off2[k]..off2[k + 1]].copy_from_slice(&w);
        }
        Some(out)
    }

    fn piece(&mut self, d: i32) -> &(Vec<usize>, Echelon) {
        if !self.pieces.contains_key(&d) {
            let f = self.ring.field();
            let n = self.free_dim(d);
            let mut span = Echelon::new(f, n);
            for (j, rel) in self.relations.iter().enumerate() {
                let e = self.relation_degrees[j];
                if e == i32::MIN || e > d {
                    continue;
                }
                let base = self.free_coords(rel, e);
                for k in 0..self.ring.dim(d - e) {
                    let u = self.ring.basis_monomial(d - e, k);
                    let Some(w) = self.mul_free(&Poly::monomial(u, 1), &base, e) else { continue };
                    span.insert(w);
                }
            }
            let free = span.free_positions();
            self.pieces.insert(d, (free, span));
        }
        &self.pieces[&d]
    }

    pub fn dim(&mut self, d: i32) -> usize {
        self.piece(d).0.len()
    }

    /// Quotient coordinates of an `F_d` vector.
    pub fn reduce(&mut self, v: &[u32], d: i32) -> Vec<u32> {
        self.piece(d).1.quotient_coords(v)
    }

    /// `F_d` representative of quotient coordinates.
    pub fn lift(&mut self, q: &[u32], d: i32) -> Vec<u32> {
        let n = self.free_dim(d);
        let (free, _) = self.piece(d);
        let mut out = vec![0u32; n];
        for (&pos, &x) in free.iter().zip(q) {
            out[pos] = x;
        }
        out
    }

    /// Quotient coordinates of generator `i`.
    pub fn generator(&mut self, i: usize) -> Vec<u32> {
        let d = self.degrees[i];
        let off = self.offsets(d);
        let mut v = vec![0u32; off[self.degrees.len()]];
        let c = self.ring.monomial_coords(&Monomial::one(self.ring.nvars()));
        v[off[i]..off[i] + c.len()].copy_from_slice(&c);
        self.reduce(&v, d)
    }
}
