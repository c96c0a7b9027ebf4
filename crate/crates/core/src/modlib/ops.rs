//! Kernels, images, cokernels, minimal presentations and direct sums.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::modlib::module::{GradedModule, ModuleMap};
use crate::ringkernel::poly::vector_degree;
use crate::ringkernel::submodule::{minimal_generators, syzygies_mod};
use crate::ringkernel::{GradedRing, Monomial, Poly, SubmoduleGb, Vector};

/// Minimal generators (modulo the source relations) of the kernel of a map,
/// as elements of the source's free module.
pub fn kernel_generators(map: &ModuleMap) -> Vec<Vector> {
    let src = &map.source;
    let tgt = &map.target;
    let ring = src.ring();
    let col_deg: Vec<i32> = src.degrees().iter().map(|d| d + map.degree).collect();
    let raw = syzygies_mod(ring, tgt.degrees(), &map.matrix, &col_deg, tgt.relations());
    let keep = minimal_generators(src.gb(), &raw);
    keep.into_iter().map(|i| raw[i].clone()).collect()
}

/// Presentation of the submodule of `ambient` generated by `gens`, together
/// with the inclusion. Generators that vanish in `ambient` are dropped and the
/// remaining ones are pruned to a minimal system.
pub fn submodule_presentation(ambient: &GradedModule, gens: &[Vector]) -> Result<(GradedModule, ModuleMap)> {
    let ring = ambient.ring();
    let keep = minimal_generators(ambient.gb(), gens);
    let gens: Vec<Vector> = keep.into_iter().map(|i| gens[i].clone()).collect();
    let degs: Vec<i32> = gens
        .iter()
        .map(|g| vector_degree(g, ambient.degrees()).expect("nonzero generator"))
        .collect();
    let rels = syzygies_mod(ring, ambient.degrees(), &gens, &degs, ambient.relations());
    let free = SubmoduleGb::new(ring, &degs, &[]);
    let rk = minimal_generators(&free, &rels);
    let rels: Vec<Vector> = rk.into_iter().map(|i| rels[i].clone()).collect();
    let sub = GradedModule::new(ring, degs, rels)?.with_minimal_flag(true);
    let inc = ModuleMap::new_unchecked(&sub, ambient, gens, 0)?;
    Ok((sub, inc))
}

/// `ker(map)` with its inclusion into the source.
pub fn kernel(map: &ModuleMap) -> Result<(GradedModule, ModuleMap)> {
    submodule_presentation(&map.source, &kernel_generators(map))
}

/// `im(map)` with its inclusion into the target.
pub fn image(map: &ModuleMap) -> Result<(GradedModule, ModuleMap)> {
    let gens: Vec<Vector> = map.matrix.clone();
    let (img, inc) = submodule_presentation(&map.target, &gens)?;
    Ok((img, inc))
}

/// `coker(map)` with the projection from the target. The presentation keeps
/// the target's generators.
pub fn cokernel(map: &ModuleMap) -> Result<(GradedModule, ModuleMap)> {
    quotient_by(&map.target, &map.matrix)
}

/// `ambient / <elems>` with the projection.
pub fn quotient_by(ambient: &GradedModule, elems: &[Vector]) -> Result<(GradedModule, ModuleMap)> {
    let mut rels = ambient.relations().to_vec();
    rels.extend(elems.iter().cloned());
    let q = GradedModule::new(ambient.ring(), ambient.degrees().to_vec(), rels)?;
    let proj = ModuleMap::new_unchecked(ambient, &q, (0..ambient.ngens()).map(|i| ambient.generator(i)).collect(), 0)?;
    Ok((q, proj))
}

/// Homology `ker(d_out) / im(d_in)` at the middle module, presented on
/// generators of the kernel. Returns the homology together with the kernel
/// generators (elements of the middle free module).
pub fn homology(d_in: &ModuleMap, d_out: &ModuleMap) -> Result<(GradedModule, Vec<Vector>)> {
    let mid = &d_out.source;
    let zgens = kernel_generators(d_out);
    let (z, inc) = submodule_presentation(mid, &zgens)?;
    // express the boundaries in terms of the cycle generators
    let cols = inc.matrix.clone();
    let mut boundary_rels = Vec::new();
    for b in &d_in.matrix {
        if mid.is_zero_element(b) {
            continue;
        }
        let d = vector_degree(b, mid.degrees()).expect("nonzero boundary");
        let w = crate::ringkernel::submodule::lift(mid.gb(), &cols, z.degrees(), b, d)
            .ok_or_else(|| Error::Internal("boundary is not a cycle".into()))?;
        boundary_rels.push(w);
    }
    let (h, _) = quotient_by(&z, &boundary_rels)?;
    Ok((h, cols))
}

/// Degree-wise solver for `Σ w_j cols[j] ≡ target (mod U)`, caching the
/// echelon form of each graded piece.
#[derive(Debug)]
pub struct Lifter {
    modulo: Arc<SubmoduleGb>,
    cols: Vec<Vector>,
    col_degrees: Vec<i32>,
    cache: Mutex<HashMap<i32, Arc<(Echelon, Vec<(usize, Monomial)>)>>>,
}

impl Lifter {
    pub fn new(modulo: Arc<SubmoduleGb>, cols: Vec<Vector>, col_degrees: Vec<i32>) -> Self {
        Lifter { modulo, cols, col_degrees, cache: Mutex::new(HashMap::new()) }
    }

    pub fn modulo(&self) -> &Arc<SubmoduleGb> {
        &self.modulo
    }

    fn piece(&self, d: i32) -> Arc<(Echelon, Vec<(usize, Monomial)>)> {
        if let Some(p) = self.cache.lock().expect("lifter cache poisoned").get(&d) {
            return p.clone();
        }
        let ring = self.modulo.ring();
        let f = ring.field();
        let mut ech = Echelon::tracked(f, self.modulo.piece_dim(d));
        let mut unknowns = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            for m in ring.standard_monomials(d - self.col_degrees[j]) {
                let v: Vector = c.iter().map(|p| p.mul_monomial(f, &m, 1)).collect();
                ech.insert(self.modulo.coords(&v, d));
                unknowns.push((j, m));
            }
        }
        let p = Arc::new((ech, unknowns));
        self.cache.lock().expect("lifter cache poisoned").insert(d, p.clone());
        p
    }

    /// Coefficients for a homogeneous target of degree `d`; zero targets
    /// lift to zero.
    pub fn lift(&self, target: &[Poly], d: i32) -> Option<Vec<Poly>> {
        let f = self.modulo.field();
        if self.modulo.contains(target) {
            return Some(vec![Poly::zero(); self.cols.len()]);
        }
        let piece = self.piece(d);
        let x = piece.0.express(&self.modulo.coords(target, d))?;
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.cols.len()];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                let (j, m) = &piece.1[i];
                buckets[*j].push((m.clone(), c));
            }
        }
        Some(buckets.into_iter().map(|ts| Poly::from_terms(f, ts)).collect())
    }
}

/// Result of [`minimal_presentation`].
#[derive(Clone, Debug)]
pub struct MinimalPresentation {
    pub module: GradedModule,
    /// New presentation → original (an isomorphism).
    pub to_original: ModuleMap,
    /// Original presentation → new (its inverse).
    pub from_original: ModuleMap,
}

/// Graded-minimal presentation: unit entries of the relation matrix are
/// eliminated together with the generator they solve for, then the relations
/// are pruned to a minimal system.
pub fn minimal_presentation(m: &GradedModule) -> Result<MinimalPresentation> {
    let ring = m.ring().clone();
    let f = ring.field();
    let mut degrees = m.degrees().to_vec();
    let mut rels: Vec<Vector> = m.relations().to_vec();
    // original generator i expressed in the current generators
    let mut express: Vec<Vector> = (0..m.ngens()).map(|i| m.generator(i)).collect();
    // current generator -> original index
    let mut alive: Vec<usize> = (0..m.ngens()).collect();
    loop {
        let mut pivot = None;
        'search: for (j, col) in rels.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                if !p.is_zero() && p.degree() == Some(0) {
                    pivot = Some((i, j, p.constant_term()));
                    break 'search;
                }
            }
        }
        let Some((i, j, c)) = pivot else { break };
        let ci = f.inv(c);
        let col = rels.remove(j);
        // e_i = -c^{-1} Σ_{k≠i} col_k e_k
        let eliminate = |v: &mut Vector| {
            let a = v[i].clone();
            if a.is_zero() {
                return;
            }
            let s = a.scale(f, ci);
            for (k, q) in col.iter().enumerate() {
                if !q.is_zero() {
                    v[k] = ring.reduce(&v[k].sub(f, &q.mul(f, &s)));
                }
            }
        };
        for r in rels.iter_mut() {
            eliminate(r);
            r.remove(i);
        }
        for e in express.iter_mut() {
            eliminate(e);
            e.remove(i);
        }
        degrees.remove(i);
        alive.remove(i);
        rels.retain(|r| r.iter().any(|p| !p.is_zero()));
    }
    let free = SubmoduleGb::new(&ring, &degrees, &[]);
    let keep = minimal_generators(&free, &rels);
    let rels: Vec<Vector> = keep.into_iter().map(|k| rels[k].clone()).collect();
    let module = GradedModule::new(&ring, degrees, rels)?.with_minimal_flag(true);
    let to_cols: Vec<Vector> = alive.iter().map(|&o| m.generator(o)).collect();
    let to_original = ModuleMap::new_unchecked(&module, m, to_cols, 0)?;
    let from_original = ModuleMap::new_unchecked(m, &module, express, 0)?;
    Ok(MinimalPresentation { module, to_original, from_original })
}

/// `dim_k M / mM`, computed from the presentation as the length of
/// `F / (U + mF)`; independent of any minimization.
pub fn nakayama_count(m: &GradedModule) -> usize {
    let ring = m.ring();
    let mut gens = m.relations().to_vec();
    for c in 0..m.ngens() {
        for v in 0..ring.nvars() {
            let mut e = m.zero_vector();
            e[c] = ring.var(v);
            gens.push(e);
        }
    }
    SubmoduleGb::new(ring, m.degrees(), &gens).length().unwrap_or(0)
}

/// Minimal number of generators `ν_R(M)`.
pub fn nu(m: &GradedModule) -> usize {
    nakayama_count(m)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: GradedModule,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
    pub offsets: Vec<usize>,
}

pub fn direct_sum(parts: &[GradedModule]) -> Result<DirectSum> {
    let ring: Arc<GradedRing> = match parts.first() {
        Some(p) => p.ring().clone(),
        None => return Err(Error::InvalidArgument("empty direct sum".into())),
    };
    for p in parts {
        p.same_ring(&parts[0])?;
    }
    let total: usize = parts.iter().map(|p| p.ngens()).sum();
    let mut degrees = Vec::with_capacity(total);
    let mut rels = Vec::new();
    let mut offsets = Vec::new();
    let mut off = 0;
    for p in parts {
        offsets.push(off);
        degrees.extend_from_slice(p.degrees());
        for r in p.relations() {
            let mut v = vec![Poly::zero(); total];
            v[off..off + p.ngens()].clone_from_slice(r);
            rels.push(v);
        }
        off += p.ngens();
    }
    let module = GradedModule::new(&ring, degrees, rels)?.with_minimal_flag(parts.iter().all(|p| p.is_minimal()));
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (p, &o) in parts.iter().zip(&offsets) {
        let inj: Vec<Vector> = (0..p.ngens()).map(|i| module.generator(o + i)).collect();
        injections.push(ModuleMap::new_unchecked(p, &module, inj, 0)?);
        let proj: Vec<Vector> = (0..total)
            .map(|k| if k >= o && k < o + p.ngens() { p.generator(k - o) } else { p.zero_vector() })
            .collect();
        projections.push(ModuleMap::new_unchecked(&module, p, proj, 0)?);
    }
    Ok(DirectSum { module, injections, projections, offsets })
}

/// `M^r` with degrees repeated block-wise.
pub fn power(m: &GradedModule, r: usize) -> Result<DirectSum> {
    direct_sum(&vec![m.clone(); r])
}

/// Block-diagonal map `⊕ f_i : ⊕ A_i → ⊕ B_i`.
pub fn block_diagonal(src: &DirectSum, tgt: &DirectSum, maps: &[ModuleMap]) -> Result<ModuleMap> {
    let mut cols = Vec::new();
    for (k, f) in maps.iter().enumerate() {
        for c in &f.matrix {
            let mut v = tgt.module.zero_vector();
            v[tgt.offsets[k]..tgt.offsets[k] + c.len()].clone_from_slice(c);
            cols.push(v);
        }
    }
    let deg = maps.first().map(|f| f.degree).unwrap_or(0);
    ModuleMap::new_unchecked(&src.module, &tgt.module, cols, deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn minimal_presentation_removes_unit_entries() {
        let fld = f();
        let r = fixtures::plane(fld);
        let (x, y) = (r.var(0), r.var(1));
        // generators e0, e1 (deg 1), e2 (deg 0); relations e0 - x e2, y e0
        let rels = vec![
            vec![r.one(), Poly::zero(), x.neg(fld)],
            vec![y.clone(), Poly::zero(), Poly::zero()],
        ];
        let m = GradedModule::new(&r, vec![1, 1, 0], rels).unwrap();
        let mp = minimal_presentation(&m).unwrap();
        assert_eq!(mp.module.ngens(), 2);
        assert_eq!(mp.module.relations().len(), 1);
        assert_eq!(nu(&m), 2);
        let comp = mp.from_original.compose(&mp.to_original).unwrap();
        assert!(comp.equals(&ModuleMap::identity(&mp.module)));
        let back = mp.to_original.compose(&mp.from_original).unwrap();
        assert!(back.equals(&ModuleMap::identity(&m)));
    }

    #[test]
    fn kernel_of_multiplication_on_cone() {
        let fld = f();
        let r = fixtures::a1_cone(fld);
        // x : R -> R is injective on the domain
        let free = GradedModule::free(&r, vec![0]);
        let tgt = GradedModule::free(&r, vec![-1]);
        let mx = ModuleMap::new(&free, &tgt, vec![vec![r.var(0)]], 0).unwrap();
        assert!(kernel_generators(&mx).is_empty());
        let (c, _) = cokernel(&mx).unwrap();
        assert_eq!(c.piece_dim(0), 2); // R/(x) in degree 1 of R: y, z
    }

    #[test]
    fn direct_sum_maps_compose_to_identity() {
        let fld = f();
        let r = fixtures::a1_cone(fld);
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let k = GradedModule::residue_field(&r);
        let s = direct_sum(&[m.clone(), k.clone()]).unwrap();
        let id = s.projections[0].compose(&s.injections[0]).unwrap();
        assert!(id.equals(&ModuleMap::identity(&m)));
        let z = s.projections[1].compose(&s.injections[0]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn homology_of_koszul_complex_on_plane() {
        let fld = f();
        let r = fixtures::plane(fld);
        let (x, y) = (r.var(0), r.var(1));
        let f0 = GradedModule::free(&r, vec![0]);
        let f1 = GradedModule::free(&r, vec![1, 1]);
        let f2 = GradedModule::free(&r, vec![2]);
        let d1 = ModuleMap::new(&f1, &f0, vec![vec![x.clone()], vec![y.clone()]], 0).unwrap();
        let d2 = ModuleMap::new(&f2, &f1, vec![vec![y.neg(fld), x.clone()]], 0).unwrap();
        let (h, _) = homology(&d2, &d1).unwrap();
        assert!(h.is_zero());
    }
}
