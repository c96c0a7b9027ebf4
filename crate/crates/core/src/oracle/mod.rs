//! Brute-force cross-checks: `Ext^1` dimensions, splitting search and random
//! idempotents, all by dense linear algebra on explicit graded pieces.

pub mod model;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::findim::upoly;
use crate::linalg::{kernel_of_columns, mat_add, mat_mul, mat_scale, rank_of, solve_columns, Echelon, Mat};
use crate::modlib::{GradedModule, ModuleMap};
use crate::ringkernel::{Monomial, Poly};
use crate::yoneda::ShortExactSequence;

pub use model::{DenseModule, TruncatedAlgebraModel};

fn max_weight(m: &GradedModule) -> i32 {
    m.ring().weights().iter().copied().max().unwrap_or(1)
}

/// `dim_k Ext^1(M, R/m^n)`, from the presentation of `M` alone.
pub fn oracle_ext_dim(m: &GradedModule, n: u32) -> Result<usize> {
    if n == 0 {
        return Ok(0);
    }
    let ring = m.ring();
    let f = m.field();
    let w = max_weight(m);
    let top_t = (n as i32 - 1) * w;
    let gens = m.degrees().to_vec();
    let rels = m.relations().to_vec();
    let deltas = m.relation_degrees().to_vec();
    if rels.is_empty() {
        return Ok(0);
    }
    let min_g = gens.iter().copied().min().unwrap_or(0);
    let min_d = deltas.iter().copied().min().unwrap();
    let max_d = deltas.iter().copied().max().unwrap();
    let t = TruncatedAlgebraModel::new(ring, top_t, Some(n));
    let r = TruncatedAlgebraModel::new(ring, top_t + max_d - min_g.min(min_d) + w, None);
    let f0 = DenseModule::new(&r, &gens, &[]);
    let f0_rels: Vec<Vec<u32>> = rels.iter().zip(&deltas).map(|(c, &e)| f0.free_coords(c, e)).collect();
    // syzygies of the relation columns in each degree, with their monomial labels
    let mut syz: std::collections::BTreeMap<i32, Vec<Vec<(usize, Monomial, u32)>>> = Default::default();
    let mut total = 0;
    for e in -max_d..=(top_t - min_g.min(min_d)) {
        let blocks: Vec<usize> = deltas.iter().map(|&dj| t.dim(dj + e)).collect();
        let nunk: usize = blocks.iter().sum();
        if nunk == 0 {
            continue;
        }
        let mut boff = vec![0usize];
        for b in &blocks {
            boff.push(boff.last().unwrap() + b);
        }
        // constraint columns, one per unknown
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); nunk];
        for d in min_d..=(top_t - e) {
            let labels = syz.entry(d).or_insert_with(|| {
                let mut lab = Vec::new();
                let mut images = Vec::new();
                for (j, &dj) in deltas.iter().enumerate() {
                    for k in 0..r.dim(d - dj) {
                        let u = r.basis_monomial(d - dj, k);
                        images.push(
                            f0.mul_free(&Poly::monomial(u.clone(), 1), &f0_rels[j], dj)
                                .expect("ring model covers the syzygy range"),
                        );
                        lab.push((j, u));
                    }
                }
                kernel_of_columns(f, f0.free_dim(d), &images)
                    .into_iter()
                    .map(|kv| {
                        kv.iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(i, &c)| (lab[i].0, lab[i].1.clone(), c))
                            .collect()
                    })
                    .collect()
            });
            let out_dim = t.dim(d + e);
            if out_dim == 0 {
                continue;
            }
            for c in labels.iter() {
                let mut block = vec![vec![0u32; out_dim]; nunk];
                for (j, u, x) in c {
                    let dj = deltas[*j];
                    for l in 0..blocks[*j] {
                        let mut b = vec![0u32; blocks[*j]];
                        b[l] = 1;
                        let Some(img) = t.mul_monomial(u, &b, dj + e) else { continue };
                        let col = &mut block[boff[*j] + l];
                        for (o, y) in col.iter_mut().zip(img) {
                            *o = f.add(*o, f.mul(*x, y));
                        }
                    }
                }
                for (col, b) in cols.iter_mut().zip(block) {
                    col.extend(b);
                }
            }
        }
        let zdim = nunk - transpose_rank(f, &cols);
        // coboundaries
        let mut bcols = Vec::new();
        for (i, &gi) in gens.iter().enumerate() {
            for l in 0..t.dim(gi + e) {
                let mut b = vec![0u32; t.dim(gi + e)];
                b[l] = 1;
                let mut col = vec![0u32; nunk];
                for (j, rel) in rels.iter().enumerate() {
                    let img = t.mul_poly(&rel[i], &b, gi + e).unwrap_or_default();
                    if img.len() == blocks[j] {
                        col[boff[j]..boff[j + 1]].copy_from_slice(&img);
                    }
                }
                bcols.push(col);
            }
        }
        total += zdim - rank_of(f, nunk, &bcols);
    }
    Ok(total)
}

/// Rank of the matrix whose columns are `cols` (all the same length).
fn transpose_rank(f: PrimeField, cols: &[Vec<u32>]) -> usize {
    let Some(len) = cols.first().map(|c| c.len()) else { return 0 };
    rank_of(f, len, cols)
}

/// Linear map on unknowns `s_i ∈ N_{g_i}` expressing the relations of `M`.
fn relation_columns(src: &GradedModule, tgt: &mut DenseModule) -> (Vec<usize>, Vec<Vec<u32>>) {
    let gens = src.degrees().to_vec();
    let blocks: Vec<usize> = gens.iter().map(|&g| tgt.dim(g)).collect();
    let mut cols = Vec::new();
    for (i, &g) in gens.iter().enumerate() {
        for l in 0..blocks[i] {
            let mut q = vec![0u32; blocks[i]];
            q[l] = 1;
            let base = tgt.lift(&q, g);
            let mut col = Vec::new();
            for (rel, &e) in src.relations().iter().zip(src.relation_degrees()) {
                if rel[i].is_zero() {
                    col.extend(vec![0u32; tgt.dim(e)]);
                    continue;
                }
                let img = tgt.mul_free(&rel[i], &base, g).expect("model covers relation degrees");
                col.extend(tgt.reduce(&img, e));
            }
            cols.push(col);
        }
    }
    (blocks, cols)
}

fn model_top(src: &GradedModule, tgt: &GradedModule) -> i32 {
    let hi = src
        .relation_degrees()
        .iter()
        .chain(src.degrees())
        .copied()
        .max()
        .unwrap_or(0);
    let lo = tgt.degrees().iter().copied().min().unwrap_or(0);
    (hi - lo).max(0) + max_weight(src)
}

/// Degree-zero homomorphisms `src → tgt` as ModuleMaps.
pub fn oracle_degree_zero_homs(src: &GradedModule, tgt: &GradedModule) -> Result<Vec<ModuleMap>> {
    let r = TruncatedAlgebraModel::new(src.ring(), model_top(src, tgt), None);
    let mut dn = DenseModule::new(&r, tgt.degrees(), tgt.relations());
    let (blocks, cols) = relation_columns(src, &mut dn);
    let nunk: usize = blocks.iter().sum();
    let height = cols.first().map(|c| c.len()).unwrap_or(0);
    let ker = if height == 0 {
        (0..nunk).map(|i| (0..nunk).map(|j| u32::from(i == j)).collect()).collect()
    } else {
        kernel_of_columns(src.field(), height, &cols)
    };
    ker.into_iter().map(|kv| to_map(src, tgt, &mut dn, &blocks, &kv)).collect()
}

fn to_map(src: &GradedModule, tgt: &GradedModule, dn: &mut DenseModule, blocks: &[usize], s: &[u32]) -> Result<ModuleMap> {
    let mut pos = 0;
    let mut matrix = Vec::new();
    for (i, &g) in src.degrees().iter().enumerate() {
        let q = &s[pos..pos + blocks[i]];
        pos += blocks[i];
        let v = dn.lift(q, g);
        matrix.push(dn.to_vector(&v, g));
    }
    ModuleMap::new_unchecked(src, tgt, matrix, 0)
}

/// Outcome of the splitting search.
#[derive(Clone, Debug)]
pub enum SplitVerdict {
    Found(ModuleMap),
    None,
}

impl SplitVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SplitVerdict::Found(_) => "found",
            SplitVerdict::None => "none",
        }
    }
}

/// Solves `π σ = id` for a degree-zero `σ : M → X`.
pub fn oracle_split_search(s: &ShortExactSequence) -> Result<SplitVerdict> {
    let (m, x) = (&s.m, &s.x);
    let f = m.field();
    let top = model_top(m, x).max(model_top(m, m));
    let r = TruncatedAlgebraModel::new(m.ring(), top, None);
    let mut dx = DenseModule::new(&r, x.degrees(), x.relations());
    let mut dm = DenseModule::new(&r, m.degrees(), m.relations());
    let (blocks, mut cols) = relation_columns(m, &mut dx);
    let mut target = vec![0u32; cols.first().map(|c| c.len()).unwrap_or(0)];
    // π(s_i) = e_i
    let mut idx = 0;
    let pi_free: Vec<Vec<u32>> = s
        .pi
        .matrix
        .iter()
        .zip(x.degrees())
        .map(|(c, &d)| dm.free_coords(c, d))
        .collect();
    let gen_targets: Vec<Vec<u32>> = (0..m.ngens()).map(|i| dm.generator(i)).collect();
    for (i, &g) in m.degrees().iter().enumerate() {
        for l in 0..blocks[i] {
            let mut q = vec![0u32; blocks[i]];
            q[l] = 1;
            let v = dx.lift(&q, g);
            let off = dx.offsets(g);
            let mut img = vec![0u32; dm.free_dim(g)];
            for (k, &xk) in x.degrees().iter().enumerate() {
                let part = &v[off[k]..off[k + 1]];
                if part.iter().all(|&c| c == 0) {
                    continue;
                }
                let p = r.to_poly(part, g - xk);
                let w = dm.mul_free(&p, &pi_free[k], xk).expect("model covers generator degrees");
                for (o, y) in img.iter_mut().zip(w) {
                    *o = f.add(*o, y);
                }
            }
            let mut col = std::mem::take(&mut cols[idx]);
            for (j, t) in gen_targets.iter().enumerate() {
                if j == i {
                    col.extend(dm.reduce(&img, g));
                } else {
                    col.extend(vec![0u32; t.len()]);
                }
            }
            cols[idx] = col;
            idx += 1;
        }
    }
    for t in &gen_targets {
        target.extend(t.iter().copied());
    }
    let Some(sol) = solve_columns(f, target.len(), &cols, &target) else {
        return Ok(SplitVerdict::None);
    };
    let sigma = to_map(m, x, &mut dx, &blocks, &sol)?;
    Ok(SplitVerdict::Found(sigma))
}

/// Result of the random idempotent search.
#[derive(Clone, Debug)]
pub struct IdempotentVerdict {
    pub trials: usize,
    pub seed: u64,
    /// First trial that produced a nontrivial idempotent, with the map.
    pub found: Option<(usize, ModuleMap)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentSummary {
    pub trials: usize,
    pub seed: u64,
    pub found: bool,
}

impl IdempotentVerdict {
    pub fn summary(&self) -> IdempotentSummary {
        IdempotentSummary { trials: self.trials, seed: self.seed, found: self.found.is_some() }
    }
}

fn flatten(m: &Mat) -> Vec<u32> {
    m.iter().flatten().copied().collect()
}

fn matrix_min_poly(f: PrimeField, a: &Mat) -> Vec<u32> {
    let n = a.len();
    let mut ech = Echelon::tracked(f, n * n);
    let mut p = crate::linalg::identity(n);
    loop {
        if let Some(rel) = ech.insert_inner(flatten(&p)) {
            // rel · (I, A, …, A^k) = 0 with coefficient 1 on A^k
            return upoly::monic(f, &rel);
        }
        p = mat_mul(f, &p, a);
    }
}

fn eval_matrix_poly(f: PrimeField, p: &[u32], a: &Mat) -> Mat {
    let n = a.len();
    let mut acc = crate::linalg::zeros(n, n);
    for &c in p.iter().rev() {
        acc = mat_mul(f, &acc, a);
        acc = mat_add(f, &acc, &mat_scale(f, &crate::linalg::identity(n), c));
    }
    acc
}

/// Samples degree-zero endomorphisms and tries to split their minimal
/// polynomials into coprime factors; a success yields an idempotent.
pub fn oracle_random_idempotent(m: &GradedModule, trials: usize, seed: u64) -> Result<IdempotentVerdict> {
    if trials < 1 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let f = m.field();
    let r = TruncatedAlgebraModel::new(m.ring(), model_top(m, m), None);
    let mut dm = DenseModule::new(&r, m.degrees(), m.relations());
    let (blocks, cols) = relation_columns(m, &mut dm);
    let nunk: usize = blocks.iter().sum();
    let height = cols.first().map(|c| c.len()).unwrap_or(0);
    let homs: Vec<Vec<u32>> = if height == 0 {
        (0..nunk).map(|i| (0..nunk).map(|j| u32::from(i == j)).collect()).collect()
    } else {
        kernel_of_columns(f, height, &cols)
    };
    // faithful action on the pieces in generator degrees
    let mut degs: Vec<i32> = m.degrees().to_vec();
    degs.sort();
    degs.dedup();
    let dims: Vec<usize> = degs.iter().map(|&d| dm.dim(d)).collect();
    let size: usize = dims.iter().sum();
    let action = |s: &[u32], dm: &mut DenseModule| -> Mat {
        let mut images = Vec::new();
        let mut pos = 0;
        for (i, &g) in m.degrees().iter().enumerate() {
            images.push(dm.lift(&s[pos..pos + blocks[i]], g));
            pos += blocks[i];
        }
        let mut rows = Vec::with_capacity(size);
        let mut off = 0;
        for (bi, &d) in degs.iter().enumerate() {
            for l in 0..dims[bi] {
                let mut q = vec![0u32; dims[bi]];
                q[l] = 1;
                let v = dm.lift(&q, d);
                let voff = dm.offsets(d);
                let mut img = vec![0u32; dm.free_dim(d)];
                for (k, &gk) in m.degrees().iter().enumerate() {
                    let part = &v[voff[k]..voff[k + 1]];
                    if part.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let p = r.to_poly(part, d - gk);
                    let w = dm.mul_free(&p, &images[k], gk).expect("model covers generator degrees");
                    for (o, y) in img.iter_mut().zip(w) {
                        *o = f.add(*o, y);
                    }
                }
                let mut row = vec![0u32; size];
                row[off..off + dims[bi]].copy_from_slice(&dm.reduce(&img, d));
                rows.push(row);
            }
            off += dims[bi];
        }
        rows
    };
    let mats: Vec<Mat> = homs.iter().map(|h| action(h, &mut dm)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = f.characteristic();
    for trial in 0..trials {
        let coeffs: Vec<u32> = (0..homs.len()).map(|_| rng.gen_range(0..p)).collect();
        let mut a = crate::linalg::zeros(size, size);
        for (mat, &c) in mats.iter().zip(&coeffs) {
            a = mat_add(f, &a, &mat_scale(f, mat, c));
        }
        let mu = matrix_min_poly(f, &a);
        let Some((g, h)) = upoly::split_coprime(f, &mu, &mut rng) else { continue };
        let (_, u, _) = upoly::ext_gcd(f, &g, &h);
        let e = eval_matrix_poly(f, &upoly::mul(f, &u, &g), &a);
        if mat_mul(f, &e, &e) != e || e.iter().flatten().all(|&x| x == 0) || e == crate::linalg::identity(size) {
            continue;
        }
        // images of the generators under e
        let mut matrix = Vec::with_capacity(m.ngens());
        for (i, &g) in m.degrees().iter().enumerate() {
            let bi = degs.iter().position(|&d| d == g).unwrap();
            let off: usize = dims[..bi].iter().sum();
            let gq = dm.generator(i);
            let mut img = vec![0u32; dims[bi]];
            for (l, &c) in gq.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (o, &y) in img.iter_mut().zip(&e[off + l][off..off + dims[bi]]) {
                    *o = f.add(*o, f.mul(c, y));
                }
            }
            let v = dm.lift(&img, g);
            matrix.push(dm.to_vector(&v, g));
        }
        let map = ModuleMap::new_unchecked(m, m, matrix, 0)?;
        return Ok(IdempotentVerdict { trials, seed, found: Some((trial, map)) });
    }
    Ok(IdempotentVerdict { trials, seed, found: None })
}
