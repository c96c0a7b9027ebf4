//! Choosing `n` and generators `g_1..g_r` of `Ext^1(M, R/m^n)` over the
//! endomorphism ring of `M`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::findim::{minimal_generators_over, tuple_kernel_in_radical, FinDimAlgebra, FinDimModule};
use crate::homext::{annihilator_exponent, end_algebra, ExtClass, ExtData, ExtSpace};
use crate::modlib::{depth, minimal_presentation, truncation_module, GradedModule};

use super::decompose::end0_is_local;

/// The algebra of operators on `Ext^1(M, N)` induced by `End(M)` (generated by
/// the action of its generators and of the variables), with `Ext^1` as a
/// right module over it. Its radical is the image of the radical of `End(M)`.
pub fn acting_algebra(m: &GradedModule, sp: &ExtSpace) -> Result<(FinDimAlgebra, FinDimModule)> {
    let f = m.field();
    let end = end_algebra(m)?;
    let mut mats = Vec::new();
    for g in end.generators() {
        mats.push(sp.action_matrix(&g)?);
    }
    let ring = m.ring();
    for v in 0..ring.nvars() {
        mats.push(sp.ring_action_matrix(&ring.var(v)));
    }
    let (alg, basis) = FinDimAlgebra::from_matrix_generators(f, sp.dim(), &mats)?;
    let module = FinDimModule::new(&alg, sp.dim(), basis)?;
    Ok((alg, module))
}

/// One row of the search: `ν` over the acting algebra at `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub n: u32,
    pub ext_dim: usize,
    pub nu_a: usize,
}

#[derive(Clone, Debug)]
pub struct Selection {
    pub r: usize,
    pub n: u32,
    pub s: u32,
    pub data: Arc<ExtData>,
    pub space: ExtSpace,
    pub nu_a: usize,
    /// Positions of the generators in the basis of `space`.
    pub indices: Vec<usize>,
    pub generators: Vec<ExtClass>,
    /// The kernel of `M_r(A) → Ext^r`, `B ↦ (g_1..g_r)·B`, lies in `M_r(J(A))`.
    pub premise: bool,
    pub algebra_dim: usize,
    pub search: Vec<SearchRow>,
}

/// Checks the hypotheses on `M` shared by selection and construction, and
/// returns the annihilator exponent.
pub fn check_seed(m: &GradedModule, seed: u64) -> Result<u32> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    if minimal_presentation(m)?.module.is_free() {
        return Err(Error::SearchExhausted("Ext¹ vanishes: the module is free".into()));
    }
    if depth(m)? == Some(0) {
        return Err(Error::DepthZero);
    }
    if !end0_is_local(m, seed)? {
        return Err(Error::Decomposable);
    }
    annihilator_exponent(m)
}

/// Generators at a fixed `n`, or the search row when there are too few.
pub fn select_at(m: &GradedModule, r: usize, n: u32, s: u32) -> Result<std::result::Result<Selection, SearchRow>> {
    let t = truncation_module(m.ring(), n)?;
    let data = ExtData::new(m, &t, 1)?;
    let space = ExtSpace::new(&data)?;
    if space.dim() == 0 {
        return Ok(Err(SearchRow { n, ext_dim: 0, nu_a: 0 }));
    }
    let (alg, module) = acting_algebra(m, &space)?;
    let mg = minimal_generators_over(&alg, &module, r, &[])?;
    let row = SearchRow { n, ext_dim: space.dim(), nu_a: mg.nu };
    if mg.nu <= r {
        return Ok(Err(row));
    }
    let indices: Vec<usize> = mg
        .generators
        .iter()
        .map(|g| g.iter().position(|&x| x != 0).expect("basis vector"))
        .collect();
    let basis = space.basis();
    let generators: Vec<ExtClass> = indices.iter().map(|&i| basis[i].clone()).collect();
    let premise = tuple_kernel_in_radical(&alg, &module, &mg.generators)?;
    Ok(Ok(Selection {
        r,
        n,
        s,
        data,
        space,
        nu_a: mg.nu,
        indices,
        generators,
        premise,
        algebra_dim: alg.dim(),
        search: vec![row],
    }))
}

/// Smallest `n ≤ n_max` with `ν_A(Ext^1(M, R/m^n)) > r`, with generators
/// chosen greedily in basis order.
pub fn select_generators(m: &GradedModule, r: usize, n_max: u32, seed: u64) -> Result<Selection> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let s = check_seed(m, seed)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        match select_at(m, r, n, s)? {
            Ok(mut sel) => {
                rows.append(&mut sel.search);
                sel.search = rows;
                return Ok(sel);
            }
            Err(row) => rows.push(row),
        }
    }
    let best = rows.iter().map(|r| r.nu_a).max().unwrap_or(0);
    Err(Error::SearchExhausted(format!(
        "ν over End(M) never exceeds {r} for n ≤ {n_max} (largest value {best})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::findim::jacobson_containment;
    use crate::fixtures;
    use crate::modlib::submodule_presentation;
    use crate::ringkernel::{IdealHandle, Vector};

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn a1_module_has_generators() {
        let r = fixtures::a1_cone(f());
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let sel = select_generators(&m, 2, 12, 0).unwrap();
        assert!(sel.n <= 12);
        assert!(sel.nu_a > 2);
        assert_eq!(sel.generators.len(), 2);
        assert!(sel.premise);
        assert!(sel.search.windows(2).all(|w| w[0].n + 1 == w[1].n));
        // the radical test agrees with a direct containment check of the
        // annihilator of a single generator
        let (alg, module) = acting_algebra(&m, &sel.space).unwrap();
        let g = &module;
        let v0: Vec<u32> = (0..g.dim).map(|i| u32::from(i == sel.indices[0])).collect();
        let cols: Vec<Vec<u32>> = (0..alg.dim()).map(|k| g.act(f(), &v0, &alg.basis_vector(k))).collect();
        let ann = crate::linalg::kernel_of_columns(f(), g.dim, &cols);
        assert!(jacobson_containment(&alg, &ann).unwrap());
    }

    #[test]
    fn free_and_flat_modules_exhaust() {
        let r = fixtures::plane(f());
        let free = GradedModule::free(&r, vec![0]);
        assert!(matches!(select_generators(&free, 2, 4, 0), Err(Error::SearchExhausted(_))));
        let gens: Vec<Vector> = IdealHandle::maximal(&r).generators().iter().map(|g| vec![g.clone()]).collect();
        let (mm, _) = submodule_presentation(&GradedModule::free(&r, vec![0]), &gens).unwrap();
        assert!(matches!(select_generators(&mm, 2, 5, 0), Err(Error::SearchExhausted(_))));
    }

    #[test]
    fn residue_field_has_depth_zero() {
        let r = fixtures::a1_cone(f());
        let k = GradedModule::residue_field(&r);
        assert!(matches!(select_generators(&k, 1, 3, 0), Err(Error::DepthZero)));
    }
}
