//! Short exact sequences `0 → N → X → M → 0` and the operations that move
//! between them and `Ext^1` cocycles.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homext::{hom_module, ExtClass, ExtData};
use crate::linalg::solve_columns;
use crate::modlib::ops::{direct_sum, kernel, kernel_generators, Lifter};
use crate::modlib::{GradedModule, ModuleMap};
use crate::ringkernel::poly::{vector_degree, vector_is_zero};
use crate::ringkernel::{Poly, SubmoduleGb, Vector};

#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub n: GradedModule,
    pub x: GradedModule,
    pub m: GradedModule,
    pub iota: ModuleMap,
    pub pi: ModuleMap,
    pub verified: bool,
}

/// Outcome of [`verify_exact`]; `failing` names the first failed condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub composite_zero: bool,
    pub iota_injective: bool,
    pub pi_surjective: bool,
    pub middle_exact: bool,
    pub failing: Option<String>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.failing.is_none()
    }
}

impl ShortExactSequence {
    /// Builds a candidate sequence and runs [`verify_exact`]; `verified`
    /// records the verdict.
    pub fn new(iota: ModuleMap, pi: ModuleMap) -> Result<Self> {
        if !iota.target.same_presentation(&pi.source) {
            return Err(Error::ModuleMismatch("ι and π are not composable".into()));
        }
        let mut s = ShortExactSequence {
            n: iota.source.clone(),
            x: iota.target.clone(),
            m: pi.target.clone(),
            iota,
            pi,
            verified: false,
        };
        s.verified = verify_exact(&s).exact();
        Ok(s)
    }
}

pub fn verify_exact(s: &ShortExactSequence) -> ExactnessReport {
    let composite_zero = s.pi.compose(&s.iota).map(|c| c.is_zero()).unwrap_or(false);
    let iota_injective = kernel_generators(&s.iota).is_empty();
    let pi_surjective = {
        let mut gens = s.m.relations().to_vec();
        gens.extend(s.pi.matrix.iter().cloned());
        let gb = SubmoduleGb::new(s.m.ring(), s.m.degrees(), &gens);
        (0..s.m.ngens()).all(|i| gb.contains(&s.m.generator(i)))
    };
    let middle_exact = {
        let mut gens = s.x.relations().to_vec();
        gens.extend(s.iota.matrix.iter().cloned());
        let gb = SubmoduleGb::new(s.x.ring(), s.x.degrees(), &gens);
        kernel_generators(&s.pi).iter().all(|k| gb.contains(k))
    };
    let failing = if !composite_zero {
        Some("π∘ι ≠ 0".to_string())
    } else if !iota_injective {
        Some("ι is not injective".to_string())
    } else if !pi_surjective {
        Some("π is not surjective".to_string())
    } else if !middle_exact {
        Some("ker π ≠ im ι".to_string())
    } else {
        None
    };
    ExactnessReport { composite_zero, iota_injective, pi_surjective, middle_exact, failing }
}

/// A degree-zero section `σ : M → X` with `π σ = id`, if one exists.
pub fn find_splitting(s: &ShortExactSequence) -> Result<Option<ModuleMap>> {
    let hom = hom_module(&s.m, &s.x)?;
    let cands = hom.piece_basis(0);
    let end = hom_module(&s.m, &s.m)?;
    let amb = &end.ambient;
    let dim = amb.piece_dim(0);
    let coords = |f: &ModuleMap| -> Vec<u32> {
        let v = end.encode(f);
        if vector_is_zero(&v) || dim == 0 {
            vec![0; dim]
        } else {
            amb.gb().coords(&v, 0)
        }
    };
    let cols: Vec<Vec<u32>> = cands
        .iter()
        .map(|c| s.pi.compose(c).map(|pc| coords(&pc)))
        .collect::<Result<_>>()?;
    let target = coords(&ModuleMap::identity(&s.m));
    let Some(x) = solve_columns(s.m.field(), dim, &cols, &target) else {
        return Ok(None);
    };
    let mut sigma = ModuleMap::zero(&s.m, &s.x, 0);
    for (c, &w) in cands.iter().zip(&x) {
        if w != 0 {
            sigma = sigma.add(&c.scale(w))?;
        }
    }
    Ok(Some(sigma))
}

pub fn is_split(s: &ShortExactSequence) -> Result<bool> {
    Ok(find_splitting(s)?.is_some())
}

/// The class of a sequence in `Ext^1(M, N)` described by `data`: lift the
/// generators of `M` to `X`, push the relations through and read them back
/// in `N` via `ι`.
pub fn class_of(s: &ShortExactSequence, data: &Arc<ExtData>) -> Result<ExtClass> {
    if !data.input.same_presentation(&s.m) || !data.n.same_presentation(&s.n) {
        return Err(Error::ModuleMismatch("sequence does not match the Ext group".into()));
    }
    let pi_lift = Lifter::new(s.m.gb().clone(), s.pi.matrix.clone(), s.x.degrees().to_vec());
    let iota_lift = Lifter::new(s.x.gb().clone(), s.iota.matrix.clone(), s.n.degrees().to_vec());
    let fld = s.m.field();
    // lifts of the minimal generators of M
    let mut lam: Vec<Vector> = Vec::new();
    for (k, col) in data.to_input.matrix.iter().enumerate() {
        let d = data.m.degrees()[k];
        let w = pi_lift
            .lift(col, d)
            .ok_or_else(|| Error::ModuleMismatch("π is not surjective".into()))?;
        lam.push(w);
    }
    let gn = s.n.ngens();
    let f1 = data.res.degrees.get(1).cloned().unwrap_or_default();
    let mut values = data.hom_mid.zero_vector();
    for (j, a) in data.res.differentials[0].iter().enumerate() {
        let img = crate::ringkernel::submodule::combine(fld, s.x.ngens(), &lam, a);
        let t = iota_lift
            .lift(&img, f1[j])
            .ok_or_else(|| Error::ModuleMismatch("kernel of π is not the image of ι".into()))?;
        values[j * gn..(j + 1) * gn].clone_from_slice(&t);
    }
    let values: Vector = values.iter().map(|p| s.n.ring().reduce(p)).collect();
    let degree = vector_degree(&values, data.hom_mid.degrees()).unwrap_or(0);
    ExtClass::new(data, values, degree)
}

/// The extension realizing a degree-zero cocycle `f : Ω^1(M) → N`:
/// `X = (N ⊕ F_0) / (U_N, (f(z), -z))`.
pub fn pushout_extension(c: &ExtClass) -> Result<ShortExactSequence> {
    let data = &c.data;
    if data.i != 1 {
        return Err(Error::InvalidArgument("extensions realize Ext^1 classes".into()));
    }
    if !vector_is_zero(&c.values) && c.degree != 0 {
        return Err(Error::DegreeInconsistent(format!(
            "a graded extension needs a degree-0 class, got degree {}",
            c.degree
        )));
    }
    let n = &data.n;
    let ring = n.ring();
    let fld = ring.field();
    let gn = n.ngens();
    let g0 = data.m.ngens();
    let mut degrees = n.degrees().to_vec();
    degrees.extend_from_slice(data.m.degrees());
    let mut rels = Vec::new();
    for r in n.relations() {
        let mut v = r.clone();
        v.resize(gn + g0, Poly::zero());
        rels.push(v);
    }
    for (j, a) in data.res.differentials[0].iter().enumerate() {
        let mut v: Vector = c.values[j * gn..(j + 1) * gn].to_vec();
        v.extend(a.iter().map(|p| p.neg(fld)));
        rels.push(v);
    }
    let x = GradedModule::new(ring, degrees, rels)?;
    let iota_cols: Vec<Vector> = (0..gn).map(|i| x.generator(i)).collect();
    let iota = ModuleMap::new_unchecked(n, &x, iota_cols, 0)?;
    let mut pi_cols: Vec<Vector> = (0..gn).map(|_| data.input.zero_vector()).collect();
    pi_cols.extend(data.to_input.matrix.iter().cloned());
    let pi = ModuleMap::new_unchecked(&x, &data.input, pi_cols, 0)?;
    ShortExactSequence::new(iota, pi)
}

/// `0 → N → Q → M' → 0` with `Q = ker((π, -f) : X ⊕ M' → M)`.
pub fn pullback(s: &ShortExactSequence, f: &ModuleMap) -> Result<ShortExactSequence> {
    if !f.target.same_presentation(&s.m) {
        return Err(Error::ModuleMismatch("f does not land in the right-hand module".into()));
    }
    if f.degree != 0 {
        return Err(Error::DegreeInconsistent("pullback along a map of nonzero degree".into()));
    }
    let fld = s.m.field();
    let ds = direct_sum(&[s.x.clone(), f.source.clone()])?;
    let mut cols = s.pi.matrix.clone();
    cols.extend(f.matrix.iter().map(|c| c.iter().map(|p| p.neg(fld)).collect::<Vector>()));
    let h = ModuleMap::new_unchecked(&ds.module, &s.m, cols, 0)?;
    let (q, inc) = kernel(&h)?;
    let lifter = Lifter::new(ds.module.gb().clone(), inc.matrix.clone(), q.degrees().to_vec());
    let gx = s.x.ngens();
    let mut iota_cols = Vec::new();
    for (i, col) in s.iota.matrix.iter().enumerate() {
        let mut v = col.clone();
        v.resize(ds.module.ngens(), Poly::zero());
        let w = lifter
            .lift(&v, s.n.degrees()[i])
            .ok_or_else(|| Error::Internal("ι does not factor through the pullback".into()))?;
        iota_cols.push(w);
    }
    let iota = ModuleMap::new_unchecked(&s.n, &q, iota_cols, 0)?;
    let pi_cols: Vec<Vector> = inc.matrix.iter().map(|c| c[gx..].to_vec()).collect();
    let pi = ModuleMap::new_unchecked(&q, &f.source, pi_cols, 0)?;
    ShortExactSequence::new(iota, pi)
}

/// Pushout of a sequence along `g : N → N'`:
/// `X' = (N' ⊕ X) / {(g(u), -ι(u))}`.
pub fn pushout_along(s: &ShortExactSequence, g: &ModuleMap) -> Result<ShortExactSequence> {
    if !g.source.same_presentation(&s.n) {
        return Err(Error::ModuleMismatch("g does not start at the left-hand module".into()));
    }
    if g.degree != 0 {
        return Err(Error::DegreeInconsistent("pushout along a map of nonzero degree".into()));
    }
    let fld = s.m.field();
    let np = &g.target;
    let ds = direct_sum(&[np.clone(), s.x.clone()])?;
    let mut rels = ds.module.relations().to_vec();
    for (u, gu) in s.iota.matrix.iter().zip(&g.matrix) {
        let mut v = gu.clone();
        v.extend(u.iter().map(|p| p.neg(fld)));
        rels.push(v);
    }
    let xp = GradedModule::new(np.ring(), ds.module.degrees().to_vec(), rels)?;
    let iota_cols: Vec<Vector> = (0..np.ngens()).map(|i| xp.generator(i)).collect();
    let iota = ModuleMap::new_unchecked(np, &xp, iota_cols, 0)?;
    let mut pi_cols: Vec<Vector> = (0..np.ngens()).map(|_| s.m.zero_vector()).collect();
    pi_cols.extend(s.pi.matrix.iter().cloned());
    let pi = ModuleMap::new_unchecked(&xp, &s.m, pi_cols, 0)?;
    ShortExactSequence::new(iota, pi)
}

/// `0 → N → N ⊕ M → M → 0`.
pub fn split_sequence(n: &GradedModule, m: &GradedModule) -> Result<ShortExactSequence> {
    let ds = direct_sum(&[n.clone(), m.clone()])?;
    ShortExactSequence::new(ds.injections[0].clone(), ds.projections[1].clone())
}

/// Direct sum of sequences.
pub fn sum_of_sequences(seqs: &[ShortExactSequence]) -> Result<ShortExactSequence> {
    let ns = direct_sum(&seqs.iter().map(|s| s.n.clone()).collect::<Vec<_>>())?;
    let xs = direct_sum(&seqs.iter().map(|s| s.x.clone()).collect::<Vec<_>>())?;
    let ms = direct_sum(&seqs.iter().map(|s| s.m.clone()).collect::<Vec<_>>())?;
    let iota = crate::modlib::ops::block_diagonal(&ns, &xs, &seqs.iter().map(|s| s.iota.clone()).collect::<Vec<_>>())?;
    let pi = crate::modlib::ops::block_diagonal(&xs, &ms, &seqs.iter().map(|s| s.pi.clone()).collect::<Vec<_>>())?;
    ShortExactSequence::new(iota, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;
    use crate::homext::{ext_action, ext_class_equal, ext_module};
    use crate::modlib::submodule_presentation;
    use crate::ringkernel::IdealHandle;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn max_ideal_sequence(r: &Arc<crate::ringkernel::GradedRing>) -> ShortExactSequence {
        let m = IdealHandle::maximal(r);
        let gens: Vec<Vector> = m.generators().iter().map(|g| vec![g.clone()]).collect();
        let free = GradedModule::free(r, vec![0]);
        let (mm, inc) = submodule_presentation(&free, &gens).unwrap();
        let k = GradedModule::residue_field(r);
        let pi = ModuleMap::new(&free, &k, vec![vec![r.one()]], 0).unwrap();
        let _ = mm;
        ShortExactSequence::new(inc, pi).unwrap()
    }

    #[test]
    fn canonical_split_sequence() {
        let r = fixtures::a1_cone(f());
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let k = GradedModule::residue_field(&r);
        let s = split_sequence(&k, &m).unwrap();
        assert!(s.verified);
        assert!(is_split(&s).unwrap());
    }

    #[test]
    fn maximal_ideal_sequence_is_exact_and_not_split() {
        let r = fixtures::plane(f());
        let s = max_ideal_sequence(&r);
        assert!(s.verified);
        assert!(!is_split(&s).unwrap());
    }

    #[test]
    fn non_surjective_projection_is_named() {
        let r = fixtures::plane(f());
        let free = GradedModule::free(&r, vec![0]);
        let k = GradedModule::residue_field(&r);
        let zero = GradedModule::free(&r, vec![]);
        let iota = ModuleMap::zero(&zero, &free, 0);
        let pi = ModuleMap::zero(&free, &k, 0);
        let s = ShortExactSequence::new(iota, pi).unwrap();
        assert!(!s.verified);
        assert_eq!(verify_exact(&s).failing.as_deref(), Some("π is not surjective"));
    }

    #[test]
    fn pushout_and_class_are_inverse() {
        let r = fixtures::a1_cone(f());
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let k = GradedModule::residue_field(&r).shifted(1);
        let e = ext_module(&m, &k, 1).unwrap();
        let sp = e.space.as_ref().unwrap();
        let deg0: Vec<_> = sp.basis().into_iter().filter(|a| a.degree == 0).collect();
        assert!(!deg0.is_empty());
        for a in deg0 {
            let s = pushout_extension(&a).unwrap();
            assert!(s.verified);
            assert!(!is_split(&s).unwrap());
            let c = class_of(&s, &e.data).unwrap();
            assert!(ext_class_equal(&c, &a).unwrap());
        }
        let zero = ExtClass::zero(&e.data, 0);
        let s0 = pushout_extension(&zero).unwrap();
        assert!(is_split(&s0).unwrap());
    }

    #[test]
    fn pullback_agrees_with_action() {
        let r = fixtures::a1_cone(f());
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let k = GradedModule::residue_field(&r).shifted(1);
        let e = ext_module(&m, &k, 1).unwrap();
        let a = e.space.as_ref().unwrap().basis().into_iter().find(|a| a.degree == 0).unwrap();
        let s = pushout_extension(&a).unwrap();
        let id = ModuleMap::identity(&m);
        let p = pullback(&s, &id).unwrap();
        assert!(p.verified);
        assert!(ext_class_equal(&class_of(&p, &e.data).unwrap(), &a).unwrap());
        let z = pullback(&s, &ModuleMap::zero(&m, &m, 0)).unwrap();
        assert!(is_split(&z).unwrap());
        assert!(class_of(&z, &e.data).unwrap().is_zero());
    }

    #[test]
    fn pullback_along_multiplication_matches_action() {
        // degree-one maps need a shifted source to stay in degree 0
        let r = fixtures::a1_cone(f());
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let t = crate::modlib::truncation_module(&r, 2).unwrap();
        let e = ext_module(&m, &t, 1).unwrap();
        let sp = e.space.as_ref().unwrap();
        let m1 = m.shifted(1);
        let e1 = ExtData::new(&m1, &t, 1).unwrap();
        let x = r.var(0);
        let fx = ModuleMap::new(&m1, &m, (0..2).map(|i| {
            let mut v = m.zero_vector();
            v[i] = x.clone();
            v
        }).collect(), 0).unwrap();
        let deg0: Vec<_> = sp.basis().into_iter().filter(|a| a.degree == 0).collect();
        assert!(!deg0.is_empty());
        for a in deg0 {
            let s = pushout_extension(&a).unwrap();
            let p = pullback(&s, &fx).unwrap();
            assert!(p.verified);
            let via_seq = class_of(&p, &e1).unwrap();
            let via_cocycle = crate::homext::ext_pullback(&a, &fx, &e1).unwrap();
            assert!(ext_class_equal(&via_seq, &via_cocycle).unwrap());
            // same values as the action of x·id on the unshifted group
            let act = ext_action(&a, &ModuleMap::identity(&m).mul_poly(&x)).unwrap();
            assert_eq!(act.values, via_cocycle.values);
        }
    }

    #[test]
    fn tautological_class_gives_free_middle() {
        let r = fixtures::plane(f());
        let mm = {
            let m = IdealHandle::maximal(&r);
            let gens: Vec<Vector> = m.generators().iter().map(|g| vec![g.clone()]).collect();
            submodule_presentation(&GradedModule::free(&r, vec![0]), &gens).unwrap().0
        };
        let om = crate::modlib::syzygy_module(&mm, 1).unwrap();
        let data = ExtData::new(&mm, &om, 1).unwrap();
        // β: Ω^1 → Ω^1 the identity on generators
        let cols = (0..om.ngens()).map(|i| om.generator(i)).collect();
        let beta = ExtClass::new(&data, cols_concat(cols), 0).unwrap();
        let s = pushout_extension(&beta).unwrap();
        assert!(s.verified);
        let mp = crate::modlib::minimal_presentation(&s.x).unwrap();
        assert!(mp.module.is_free());
    }

    #[test]
    fn maximal_ideal_extension_and_split_criterion() {
        let r = fixtures::plane(f());
        let mm = {
            let m = IdealHandle::maximal(&r);
            let gens: Vec<Vector> = m.generators().iter().map(|g| vec![g.clone()]).collect();
            submodule_presentation(&GradedModule::free(&r, vec![0]), &gens).unwrap().0
        };
        let k = GradedModule::residue_field(&r).shifted(2);
        let e = ext_module(&mm, &k, 1).unwrap();
        let sp = e.space.as_ref().unwrap();
        assert!(sp.piece_dim(0) > 0);
        for a in sp.basis().into_iter().filter(|a| a.degree == 0) {
            let s = pushout_extension(&a).unwrap();
            assert!(s.verified);
            assert!(crate::modlib::nu(&s.x) <= 3);
            assert_eq!(is_split(&s).unwrap(), class_of(&s, &e.data).unwrap().is_zero());
        }
        let s0 = pushout_extension(&ExtClass::zero(&e.data, 0)).unwrap();
        assert_eq!(is_split(&s0).unwrap(), class_of(&s0, &e.data).unwrap().is_zero());
    }

    fn cols_concat(cols: Vec<Vector>) -> Vector {
        cols.into_iter().flatten().collect()
    }
}
