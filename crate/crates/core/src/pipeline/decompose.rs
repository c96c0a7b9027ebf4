//! Degree-zero endomorphisms by direct linear algebra on graded pieces, and
//! splitting of a module along idempotents of `End_0`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::findim::{locality_and_idempotents, FinDimAlgebra, Locality};
use crate::linalg::{kernel_of_columns, mat_mul, Echelon, Mat};
use crate::modlib::ops::Lifter;
use crate::modlib::{minimal_presentation, submodule_presentation, GradedModule, ModuleMap};
use crate::ringkernel::poly::vector_is_zero;
use crate::ringkernel::{Poly, Vector};

fn scale_vector(m: &GradedModule, a: &Poly, w: &[Poly]) -> Vector {
    let ring = m.ring();
    w.iter().map(|p| ring.mul(a, p)).collect()
}

fn piece_coords(m: &GradedModule, v: &[Poly], d: i32) -> Vec<u32> {
    let n = m.gb().piece_dim(d);
    if n == 0 || vector_is_zero(v) {
        vec![0; n]
    } else {
        m.gb().coords(v, d)
    }
}

/// A basis of `Hom(M, N)_0`: images of generators solved degree by degree
/// against the relations of `M`.
pub fn degree_zero_homs(m: &GradedModule, n: &GradedModule) -> Result<Vec<ModuleMap>> {
    m.same_ring(n)?;
    let gens = m.degrees();
    let bases: Vec<Vec<Vector>> = gens.iter().map(|&d| n.piece_basis(d)).collect();
    let rels = m.relations();
    let rel_degrees = m.relation_degrees();
    let rel_dims: Vec<usize> = rel_degrees.iter().map(|&e| n.gb().piece_dim(e)).collect();
    let total: usize = rel_dims.iter().sum();
    let mut cols = Vec::new();
    for (i, basis) in bases.iter().enumerate() {
        for w in basis {
            let mut col = Vec::with_capacity(total);
            for (j, rel) in rels.iter().enumerate() {
                let img = scale_vector(n, &rel[i], w);
                col.extend(piece_coords(n, &img, rel_degrees[j]));
            }
            cols.push(col);
        }
    }
    let ker = kernel_of_columns(m.field(), total, &cols);
    let fld = m.field();
    let mut out = Vec::with_capacity(ker.len());
    for kv in ker {
        let mut matrix = Vec::with_capacity(gens.len());
        let mut pos = 0;
        for basis in &bases {
            let mut v = n.zero_vector();
            for w in basis {
                let c = kv[pos];
                pos += 1;
                if c != 0 {
                    for (a, b) in v.iter_mut().zip(w) {
                        *a = a.add(fld, &b.scale(fld, c));
                    }
                }
            }
            matrix.push(v);
        }
        out.push(ModuleMap::new_unchecked(m, n, matrix, 0)?);
    }
    Ok(out)
}

/// `End_0(M)` as a finite-dimensional algebra with `b_i b_j = b_i ∘ b_j`.
#[derive(Clone, Debug)]
pub struct DegreeZeroEnd {
    pub basis: Vec<ModuleMap>,
    pub algebra: FinDimAlgebra,
}

impl DegreeZeroEnd {
    pub fn element(&self, m: &GradedModule, c: &[u32]) -> Result<ModuleMap> {
        let mut acc = ModuleMap::zero(m, m, 0);
        for (b, &x) in self.basis.iter().zip(c) {
            if x != 0 {
                acc = acc.add(&b.scale(x))?;
            }
        }
        Ok(acc)
    }
}

/// Row-convention matrix of a degree-zero endomorphism on the pieces in the
/// generator degrees (a faithful representation).
fn action_matrix(m: &GradedModule, b: &ModuleMap, degs: &[i32]) -> Mat {
    let mut rows = Vec::new();
    let dims: Vec<usize> = degs.iter().map(|&d| m.gb().piece_dim(d)).collect();
    let total: usize = dims.iter().sum();
    let mut off = 0;
    for (k, &d) in degs.iter().enumerate() {
        for w in m.piece_basis(d) {
            let mut row = vec![0u32; total];
            row[off..off + dims[k]].copy_from_slice(&piece_coords(m, &b.apply(&w), d));
            rows.push(row);
        }
        off += dims[k];
    }
    rows
}

pub fn degree_zero_end(m: &GradedModule) -> Result<DegreeZeroEnd> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let basis = degree_zero_homs(m, m)?;
    let f = m.field();
    let degs: Vec<i32> = m.degrees().iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mats: Vec<Mat> = basis.iter().map(|b| action_matrix(m, b, &degs)).collect();
    let flat = |x: &Mat| -> Vec<u32> { x.iter().flatten().copied().collect() };
    let size = mats.first().map(|x| x.len() * x.len()).unwrap_or(0);
    let mut ech = Echelon::tracked(f, size);
    for x in &mats {
        if !ech.insert(flat(x)) {
            return Err(Error::Internal("degree-zero endomorphisms act dependently".into()));
        }
    }
    let n = basis.len();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // b_i ∘ b_j acts on rows as M_j M_i
            let p = mat_mul(f, &mats[j], &mats[i]);
            mult[i][j] = ech
                .express(&flat(&p))
                .ok_or_else(|| Error::Internal("End_0 is not closed under composition".into()))?;
        }
    }
    let id = flat(&action_matrix(m, &ModuleMap::identity(m), &degs));
    let unit = ech.express(&id).ok_or_else(|| Error::Internal("identity not in End_0".into()))?;
    Ok(DegreeZeroEnd { basis, algebra: FinDimAlgebra::new_unchecked(f, mult, unit)? })
}

/// `End_0(M)` local, i.e. `M` graded-indecomposable.
pub fn end0_is_local(m: &GradedModule, seed: u64) -> Result<bool> {
    let e = degree_zero_end(m)?;
    Ok(matches!(locality_and_idempotents(&e.algebra, seed)?, Locality::Local { .. }))
}

/// An indecomposable summand with its structure maps; `idempotent` is the
/// endomorphism of the original module that projects onto it.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: GradedModule,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
    pub idempotent: ModuleMap,
}

fn image_of_idempotent(m: &GradedModule, e: &ModuleMap) -> Result<(GradedModule, ModuleMap, ModuleMap)> {
    let gens: Vec<Vector> = e.matrix.iter().filter(|c| !m.is_zero_element(c)).cloned().collect();
    let (n, inc) = submodule_presentation(m, &gens)?;
    let lifter = Lifter::new(m.gb().clone(), inc.matrix.clone(), n.degrees().to_vec());
    let mut cols = Vec::with_capacity(m.ngens());
    for (i, c) in e.matrix.iter().enumerate() {
        let w = lifter
            .lift(c, m.degrees()[i])
            .ok_or_else(|| Error::Internal("idempotent image does not lift".into()))?;
        cols.push(w);
    }
    let proj = ModuleMap::new_unchecked(m, &n, cols, 0)?;
    let mp = minimal_presentation(&n)?;
    let inc = inc.compose(&mp.to_original)?;
    let proj = mp.from_original.compose(&proj)?;
    Ok((mp.module, inc, proj))
}

fn split_rec(m: &GradedModule, seed: u64, depth: usize, out: &mut Vec<Summand>) -> Result<()> {
    let end = degree_zero_end(m)?;
    match locality_and_idempotents(&end.algebra, seed)? {
        Locality::Local { .. } => {
            out.push(Summand {
                module: m.clone(),
                inclusion: ModuleMap::identity(m),
                projection: ModuleMap::identity(m),
                idempotent: ModuleMap::identity(m),
            });
            Ok(())
        }
        Locality::Idempotent(c) => {
            if depth > m.ngens() {
                return Err(Error::Internal("idempotent splitting does not terminate".into()));
            }
            let e = end.element(m, &c)?;
            let one_minus = ModuleMap::identity(m).add(&e.scale(m.field().neg(1)))?;
            for piece in [e, one_minus] {
                let (n, inc, proj) = image_of_idempotent(m, &piece)?;
                let mut sub = Vec::new();
                split_rec(&n, seed, depth + 1, &mut sub)?;
                for s in sub {
                    let inclusion = inc.compose(&s.inclusion)?;
                    let projection = s.projection.compose(&proj)?;
                    let idempotent = inclusion.compose(&projection)?;
                    out.push(Summand { module: s.module, inclusion, projection, idempotent });
                }
            }
            Ok(())
        }
    }
}

/// Splits `M` into graded-indecomposable summands (each with local `End_0`).
pub fn decompose(m: &GradedModule, seed: u64) -> Result<Vec<Summand>> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let mp = minimal_presentation(m)?;
    let mut parts = Vec::new();
    split_rec(&mp.module, seed, 0, &mut parts)?;
    parts
        .into_iter()
        .map(|s| {
            let inclusion = mp.to_original.compose(&s.inclusion)?;
            let projection = s.projection.compose(&mp.from_original)?;
            let idempotent = inclusion.compose(&projection)?;
            Ok(Summand { module: s.module, inclusion, projection, idempotent })
        })
        .collect()
}

/// `Σ ι_k π_k = id` and `π_k ι_l = δ_kl`.
pub fn reassembles(m: &GradedModule, parts: &[Summand]) -> Result<bool> {
    let mut acc = ModuleMap::zero(m, m, 0);
    for p in parts {
        acc = acc.add(&p.inclusion.compose(&p.projection)?)?;
    }
    if !acc.equals(&ModuleMap::identity(m)) {
        return Ok(false);
    }
    for (k, a) in parts.iter().enumerate() {
        for (l, b) in parts.iter().enumerate() {
            let c = a.projection.compose(&b.inclusion)?;
            let ok = if k == l { c.equals(&ModuleMap::identity(&a.module)) } else { c.is_zero() };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;
    use crate::homext::hom_module;
    use crate::modlib::{direct_sum, punctured_rank, syzygy_module, MinorGuard};

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn degree_zero_homs_match_hom_module() {
        let r = fixtures::a1_cone(f());
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let k = GradedModule::residue_field(&r);
        for (a, b) in [(&m, &m), (&m, &k), (&k, &m)] {
            let direct = degree_zero_homs(a, b).unwrap();
            let via = hom_module(a, b).unwrap().piece_basis(0);
            assert_eq!(direct.len(), via.len());
            for h in &direct {
                assert!(h.check_well_defined().is_ok());
            }
        }
    }

    #[test]
    fn splits_sums() {
        let r = fixtures::a1_cone(f());
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        assert!(end0_is_local(&m, 0).unwrap());
        let mm = direct_sum(&[m.clone(), m.clone()]).unwrap().module;
        let parts = decompose(&mm, 0).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(reassembles(&mm, &parts).unwrap());
        let k = GradedModule::residue_field(&r);
        let kr = direct_sum(&[k, GradedModule::free(&r, vec![0])]).unwrap().module;
        let parts = decompose(&kr, 0).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(reassembles(&kr, &parts).unwrap());
        let mut kinds: Vec<bool> = parts.iter().map(|p| p.module.is_free()).collect();
        kinds.sort();
        assert_eq!(kinds, vec![false, true]);
    }

    #[test]
    fn second_syzygy_of_residue_field_on_the_cone() {
        let r = fixtures::a1_cone(f());
        let k = GradedModule::residue_field(&r);
        let om = syzygy_module(&k, 2).unwrap();
        let parts = decompose(&om, 0).unwrap();
        assert!(reassembles(&om, &parts).unwrap());
        let total: usize = parts
            .iter()
            .map(|p| punctured_rank(&p.module, MinorGuard::default()).unwrap().unwrap())
            .sum();
        assert_eq!(Some(total), punctured_rank(&om, MinorGuard::default()).unwrap());
        for p in &parts {
            assert!(end0_is_local(&p.module, 0).unwrap());
        }
    }
}
