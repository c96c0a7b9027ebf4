//! Length, Hilbert functions, `H^0_m`, depth.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modlib::module::{GradedModule, ModuleMap};
use crate::modlib::ops::{kernel_generators, quotient_by, submodule_presentation};
use crate::modlib::resolution::free_resolution;
use crate::ringkernel::{GradedRing, Poly, SubmoduleGb, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// `Some(length)` when the module has finite length.
    pub length: Option<usize>,
    /// `(degree, dim)` for every degree in the reported window.
    pub values: Vec<(i32, usize)>,
}

/// Hilbert function of `M`. For finite-length modules the window is the full
/// support; otherwise degrees from the lowest generator degree up to
/// `max_degree`.
pub fn length_and_hilbert(m: &GradedModule, max_degree: i32) -> HilbertData {
    let gb = m.gb();
    let lo = m.min_degree();
    match gb.top_degree_bound() {
        Some(top) if gb.is_finite_length() => {
            let values: Vec<(i32, usize)> = gb.hilbert(lo, top).into_iter().filter(|&(_, d)| d > 0).collect();
            HilbertData { length: Some(values.iter().map(|v| v.1).sum()), values }
        }
        _ => HilbertData { length: None, values: gb.hilbert(lo, max_degree) },
    }
}

pub fn length(m: &GradedModule) -> Option<usize> {
    m.gb().length()
}

/// `R / m^n` generated in degree 0.
pub fn truncation_module(ring: &Arc<GradedRing>, n: u32) -> Result<GradedModule> {
    if n == 0 {
        return GradedModule::cyclic(ring, &[ring.one()]);
    }
    let gens: Vec<Poly> = ring.monomials_of_order(n).into_iter().map(|m| Poly::monomial(m, 1)).collect();
    let m = GradedModule::cyclic(ring, &gens)?;
    Ok(crate::modlib::ops::minimal_presentation(&m)?.module)
}

/// `M` as a module over itself shifted for the `i`-th variable: the copy
/// that receives `x_i · M` under a degree-0 map.
fn var_shift_copy(m: &GradedModule, w: i32) -> Result<GradedModule> {
    GradedModule::new(m.ring(), m.degrees().iter().map(|d| d - w).collect(), m.relations().to_vec())
}

/// `H^0_m(M)` as generators inside `M`, together with its presentation, the
/// inclusion and the quotient `M / H^0_m(M)`.
#[derive(Clone, Debug)]
pub struct TorsionPart {
    pub generators: Vec<Vector>,
    pub module: GradedModule,
    pub inclusion: ModuleMap,
    pub quotient: GradedModule,
    pub projection: ModuleMap,
}

/// The largest finite-length submodule, via
/// `K_{t+1} = ker(M → (M/K_t)^v, u ↦ (x_i u)_i)` iterated to stability.
pub fn finite_length_submodule(m: &GradedModule) -> Result<TorsionPart> {
    let ring = m.ring().clone();
    let v = ring.nvars();
    let mut k: Vec<Vector> = Vec::new();
    loop {
        let (q, _) = quotient_by(m, &k)?;
        let copies: Vec<GradedModule> = (0..v)
            .map(|i| var_shift_copy(&q, ring.weights()[i]))
            .collect::<Result<_>>()?;
        let sum = crate::modlib::ops::direct_sum(&copies)?;
        let g = m.ngens();
        let cols: Vec<Vector> = (0..g)
            .map(|j| {
                let mut c = sum.module.zero_vector();
                for i in 0..v {
                    c[sum.offsets[i] + j] = ring.var(i);
                }
                c
            })
            .collect();
        let map = ModuleMap::new_unchecked(m, &sum.module, cols, 0)?;
        let next = kernel_generators(&map);
        let cur = SubmoduleGb::new(&ring, m.degrees(), &[m.relations(), &k[..]].concat());
        if next.iter().all(|n| cur.contains(n)) {
            break;
        }
        k = next;
    }
    let (module, inclusion) = submodule_presentation(m, &k)?;
    let (quotient, projection) = quotient_by(m, &inclusion.matrix)?;
    Ok(TorsionPart { generators: inclusion.matrix.clone(), module, inclusion, quotient, projection })
}

/// `Hom_R(F, N)` for a free `F` with generator degrees `fdeg`: a direct sum
/// of copies `N(δ)`; copy `k` carries generator degrees `n_j - δ_k`.
pub fn hom_from_free(fdeg: &[i32], n: &GradedModule) -> Result<GradedModule> {
    let g = n.ngens();
    let total = g * fdeg.len();
    let mut degrees = Vec::with_capacity(total);
    let mut rels = Vec::new();
    for (k, &d) in fdeg.iter().enumerate() {
        degrees.extend(n.degrees().iter().map(|e| e - d));
        for r in n.relations() {
            let mut v = vec![Poly::zero(); total];
            v[k * g..(k + 1) * g].clone_from_slice(r);
            rels.push(v);
        }
    }
    GradedModule::new(n.ring(), degrees, rels)
}

/// `Hom(d, N) : Hom(F_src_of_d's_target, N) → Hom(F_d's_source, N)`, i.e. the
/// map `φ ↦ φ ∘ d` for `d : F' → F` given by columns in `F`.
pub fn hom_from_free_map(
    d_cols: &[Vector],
    f_deg: &[i32],
    fprime_deg: &[i32],
    n: &GradedModule,
) -> Result<ModuleMap> {
    let src = hom_from_free(f_deg, n)?;
    let tgt = hom_from_free(fprime_deg, n)?;
    let ring = n.ring();
    let f = ring.field();
    let g = n.ngens();
    let mut cols = Vec::with_capacity(src.ngens());
    for k in 0..f_deg.len() {
        for j in 0..g {
            let mut c = tgt.zero_vector();
            for (l, col) in d_cols.iter().enumerate() {
                let e = &col[k];
                if !e.is_zero() {
                    c[l * g + j] = c[l * g + j].add(f, e);
                }
            }
            cols.push(c);
        }
    }
    ModuleMap::new_unchecked(&src, &tgt, cols, 0)
}

/// True when `H^i(Hom(F_•, N))` is nonzero, for a resolution `F_•` of
/// length at least `i + 1`.
pub fn ext_nonzero(res: &crate::modlib::resolution::Resolution, n: &GradedModule, i: usize) -> Result<bool> {
    let fi = &res.degrees[i];
    if fi.is_empty() {
        return Ok(false);
    }
    let next_deg = res.degrees.get(i + 1).cloned().unwrap_or_default();
    let next_cols = res.differentials.get(i).cloned().unwrap_or_default();
    let d_out = hom_from_free_map(&next_cols, fi, &next_deg, n)?;
    let z = kernel_generators(&d_out);
    if z.is_empty() {
        return Ok(false);
    }
    let hom_i = &d_out.source;
    let mut bounds: Vec<Vector> = hom_i.relations().to_vec();
    if i > 0 {
        let d_in = hom_from_free_map(&res.differentials[i - 1], &res.degrees[i - 1], fi, n)?;
        bounds.extend(d_in.matrix.iter().cloned());
    }
    let b = SubmoduleGb::new(n.ring(), hom_i.degrees(), &bounds);
    Ok(z.iter().any(|c| !b.contains(c)))
}

/// `depth M = min{i : Ext^i(k, M) ≠ 0}`; `None` for the zero module.
pub fn depth(m: &GradedModule) -> Result<Option<usize>> {
    if m.is_zero() {
        return Ok(None);
    }
    let ring = m.ring();
    let d = ring.krull_dimension();
    let k = GradedModule::residue_field(ring);
    let res = free_resolution(&k, d + 1)?;
    for i in 0..=d {
        if ext_nonzero(&res, m, i)? {
            return Ok(Some(i));
        }
    }
    Err(Error::Internal("no nonvanishing Ext below the dimension".into()))
}
