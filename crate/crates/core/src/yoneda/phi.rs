//! Ext^1 out of a direct sum: the splitting `φ` into components, its inverse,
//! and the matrix `ψ(b)` of an endomorphism of the sum.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homext::{ext_pullback, ExtClass, ExtData};
use crate::modlib::{DirectSum, GradedModule, ModuleMap};

use super::sequence::{class_of, pushout_along, pushout_extension, sum_of_sequences};

/// Ext data for each summand, against the same right-hand module.
pub fn summand_data(ds: &DirectSum, parts: &[GradedModule], n: &GradedModule) -> Result<Vec<Arc<ExtData>>> {
    if parts.len() != ds.injections.len() {
        return Err(Error::InvalidArgument("one module per summand required".into()));
    }
    parts.iter().map(|p| ExtData::new(p, n, 1)).collect()
}

fn check_sum(alpha: &ExtClass, ds: &DirectSum) -> Result<()> {
    if !alpha.data.input.same_presentation(&ds.module) {
        return Err(Error::ModuleMismatch("class is not over the recorded direct sum".into()));
    }
    Ok(())
}

/// `α ↦ (α ι_1, …, α ι_n)`.
pub fn phi_split(alpha: &ExtClass, ds: &DirectSum, parts: &[Arc<ExtData>]) -> Result<Vec<ExtClass>> {
    check_sum(alpha, ds)?;
    ds.injections
        .iter()
        .zip(parts)
        .map(|(inj, d)| ext_pullback(alpha, inj, d))
        .collect()
}

/// `(α_1, …, α_n) ↦ Σ α_i π_i`.
pub fn phi_inverse(tuple: &[ExtClass], ds: &DirectSum, data: &Arc<ExtData>) -> Result<ExtClass> {
    if tuple.len() != ds.projections.len() {
        return Err(Error::InvalidArgument("tuple length differs from the number of summands".into()));
    }
    if !data.input.same_presentation(&ds.module) {
        return Err(Error::ModuleMismatch("target group is not over the recorded direct sum".into()));
    }
    let mut acc: Option<ExtClass> = None;
    for (a, p) in tuple.iter().zip(&ds.projections) {
        if a.is_zero() {
            continue;
        }
        let t = ext_pullback(a, p, data)?;
        acc = Some(match acc {
            None => t,
            Some(s) => s.add(&t)?,
        });
    }
    Ok(acc.unwrap_or_else(|| ExtClass::zero(data, 0)))
}

/// The same inverse through sequences: `⊕ X_{α_i}` pushed out along the
/// codiagonal `∇ : N^n → N`. Degree-zero classes only.
pub fn phi_inverse_via_sequences(tuple: &[ExtClass], data: &Arc<ExtData>) -> Result<ExtClass> {
    let seqs = tuple.iter().map(pushout_extension).collect::<Result<Vec<_>>>()?;
    let sum = sum_of_sequences(&seqs)?;
    let n = &data.n;
    let gn = n.ngens();
    let cols = (0..gn * tuple.len()).map(|k| n.generator(k % gn)).collect();
    let nabla = ModuleMap::new(&sum.n, n, cols, 0)?;
    let s = pushout_along(&sum, &nabla)?;
    class_of(&s, data)
}

/// `ψ(b)[j][i] = π_j ∘ b ∘ ι_i`, i.e. the transpose of the component matrix.
pub fn psi_matrix(b: &ModuleMap, ds: &DirectSum) -> Result<Vec<Vec<ModuleMap>>> {
    if !b.source.same_presentation(&ds.module) || !b.target.same_presentation(&ds.module) {
        return Err(Error::ModuleMismatch("not an endomorphism of the recorded direct sum".into()));
    }
    let mut out = Vec::new();
    for p in &ds.projections {
        let pb = p.compose(b)?;
        out.push(ds.injections.iter().map(|i| pb.compose(i)).collect::<Result<Vec<_>>>()?);
    }
    Ok(out)
}

/// Product of matrices of maps, in the convention of [`psi_matrix`].
pub fn psi_product(a: &[Vec<ModuleMap>], b: &[Vec<ModuleMap>]) -> Result<Vec<Vec<ModuleMap>>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut r = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc: Option<ModuleMap> = None;
            for (k, aj) in row.iter().enumerate() {
                let t = aj.compose(&b[k][i])?;
                acc = Some(match acc {
                    None => t,
                    Some(s) => s.add(&t)?,
                });
            }
            r.push(acc.ok_or_else(|| Error::InvalidArgument("empty matrix".into()))?);
        }
        out.push(r);
    }
    Ok(out)
}

/// `(φ(α) ψ(b))_i = Σ_j φ(α)_j ψ(b)[j][i]`.
pub fn tuple_times_psi(tuple: &[ExtClass], psi: &[Vec<ModuleMap>], parts: &[Arc<ExtData>]) -> Result<Vec<ExtClass>> {
    let mut out = Vec::with_capacity(parts.len());
    for (i, d) in parts.iter().enumerate() {
        let mut acc: Option<ExtClass> = None;
        for (j, a) in tuple.iter().enumerate() {
            let t = ext_pullback(a, &psi[j][i], d)?;
            acc = Some(match acc {
                None => t,
                Some(s) => s.add(&t)?,
            });
        }
        out.push(acc.ok_or_else(|| Error::InvalidArgument("empty tuple".into()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;
    use crate::homext::{end_algebra, ext_action, ext_class_equal, ext_module};
    use crate::modlib::direct_sum;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn a1(r: &Arc<crate::ringkernel::GradedRing>) -> GradedModule {
        GradedModule::new(r, vec![0, 0], fixtures::a1_matrix(r)).unwrap()
    }

    #[test]
    fn round_trip_and_sequence_route() {
        let r = fixtures::a1_cone(f());
        let k = GradedModule::residue_field(&r).shifted(1);
        let parts = vec![a1(&r), k.clone()];
        let ds = direct_sum(&parts).unwrap();
        let e = ext_module(&ds.module, &k, 1).unwrap();
        let sp = e.space.as_ref().unwrap();
        let pd = summand_data(&ds, &parts, &k).unwrap();
        assert!(sp.piece_dim(0) > 0);
        for a in sp.basis() {
            let t = phi_split(&a, &ds, &pd).unwrap();
            let back = phi_inverse(&t, &ds, &e.data).unwrap();
            assert!(ext_class_equal(&back, &a).unwrap());
            if a.degree == 0 {
                let via = phi_inverse_via_sequences(&t, &e.data).unwrap();
                assert!(ext_class_equal(&via, &a).unwrap());
            }
        }
    }

    #[test]
    fn dimensions_add() {
        let r = fixtures::a1_cone(f());
        let k = GradedModule::residue_field(&r);
        let m = a1(&r);
        let ds = direct_sum(&[m.clone(), k.clone()]).unwrap();
        let d = |x: &GradedModule| ext_module(x, &k, 1).unwrap().dim().unwrap();
        assert_eq!(d(&ds.module), d(&m) + d(&k));
    }

    #[test]
    fn free_summand_component_vanishes() {
        let r = fixtures::a1_cone(f());
        let k = GradedModule::residue_field(&r);
        let parts = vec![a1(&r), GradedModule::free(&r, vec![0])];
        let ds = direct_sum(&parts).unwrap();
        let e = ext_module(&ds.module, &k, 1).unwrap();
        let pd = summand_data(&ds, &parts, &k).unwrap();
        for a in e.space.as_ref().unwrap().basis() {
            let t = phi_split(&a, &ds, &pd).unwrap();
            assert!(t[1].is_zero());
        }
    }

    #[test]
    fn psi_identity_units_and_single_entries() {
        let r = fixtures::a1_cone(f());
        let m = a1(&r);
        let ds = direct_sum(&[m.clone(), m.clone()]).unwrap();
        let id = ModuleMap::identity(&ds.module);
        let p = psi_matrix(&id, &ds).unwrap();
        for (j, row) in p.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                assert_eq!(e.is_zero(), i != j);
                if i == j {
                    assert!(e.equals(&ModuleMap::identity(&m)));
                }
            }
        }
        let e11 = ds.injections[0].compose(&ds.projections[0]).unwrap();
        let p = psi_matrix(&e11, &ds).unwrap();
        assert!(!p[0][0].is_zero() && p[0][1].is_zero() && p[1][0].is_zero() && p[1][1].is_zero());
        // b = ι_l g π_k has only b_kl = π_l b ι_k nonzero
        let end = end_algebra(&m).unwrap();
        for g in end.generators() {
            if g.is_zero() {
                continue;
            }
            let b = ds.injections[1].compose(&g).unwrap().compose(&ds.projections[0]).unwrap();
            let p = psi_matrix(&b, &ds).unwrap();
            for j in 0..2 {
                for i in 0..2 {
                    assert_eq!(!p[j][i].is_zero(), (j, i) == (1, 0));
                }
            }
        }
    }

    #[test]
    fn phi_intertwines_action() {
        let r = fixtures::a1_cone(f());
        let k = GradedModule::residue_field(&r);
        let parts = vec![a1(&r), k.clone()];
        let ds = direct_sum(&parts).unwrap();
        let e = ext_module(&ds.module, &k, 1).unwrap();
        let pd = summand_data(&ds, &parts, &k).unwrap();
        let end = end_algebra(&ds.module).unwrap();
        let gens = end.generators();
        for a in e.space.as_ref().unwrap().basis() {
            for b in &gens {
                let lhs = phi_split(&ext_action(&a, b).unwrap(), &ds, &pd).unwrap();
                let psi = psi_matrix(b, &ds).unwrap();
                let rhs = tuple_times_psi(&phi_split(&a, &ds, &pd).unwrap(), &psi, &pd).unwrap();
                for (x, y) in lhs.iter().zip(&rhs) {
                    assert!(ext_class_equal(x, y).unwrap());
                }
            }
        }
        for a in &gens {
            for b in &gens {
                let ab = psi_matrix(&end.multiply(a, b), &ds).unwrap();
                let prod = psi_product(&psi_matrix(a, &ds).unwrap(), &psi_matrix(b, &ds).unwrap()).unwrap();
                for (x, y) in ab.iter().flatten().zip(prod.iter().flatten()) {
                    assert!(x.equals(y));
                }
            }
        }
    }
}
