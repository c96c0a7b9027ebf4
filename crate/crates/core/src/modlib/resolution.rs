//! Minimal graded free resolutions, syzygy modules, Betti numbers.

use crate::error::Result;
use crate::modlib::module::{GradedModule, ModuleMap};
use crate::modlib::ops::minimal_presentation;
use crate::ringkernel::submodule::{minimal_generators, syzygies_mod};
use crate::ringkernel::{SubmoduleGb, Vector};

/// `F_len -> ... -> F_1 -> F_0 -> M`, minimal.
///
/// `differentials[i]` holds the columns of `d_{i+1} : F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: GradedModule,
    pub degrees: Vec<Vec<i32>>,
    pub differentials: Vec<Vec<Vector>>,
}

impl Resolution {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    /// Free module `F_i` (empty beyond the computed range).
    pub fn free(&self, i: usize) -> GradedModule {
        GradedModule::free(self.module.ring(), self.degrees.get(i).cloned().unwrap_or_default())
    }

    /// `d_i : F_i -> F_{i-1}` as a map of free modules, `i >= 1`.
    pub fn differential(&self, i: usize) -> ModuleMap {
        let src = self.free(i);
        let tgt = self.free(i - 1);
        let cols = self.differentials.get(i - 1).cloned().unwrap_or_default();
        ModuleMap::new_unchecked(&src, &tgt, cols, 0).expect("resolution differential is homogeneous")
    }
}

/// Minimal free resolution of `M` up to homological degree `len`. Stops
/// early when a syzygy module vanishes.
pub fn free_resolution(m: &GradedModule, len: usize) -> Result<Resolution> {
    let ring = m.ring().clone();
    let mp = minimal_presentation(m)?;
    let m0 = mp.module;
    let mut degrees = vec![m0.degrees().to_vec()];
    let mut differentials: Vec<Vec<Vector>> = Vec::new();
    if len >= 1 {
        degrees.push(m0.relation_degrees().to_vec());
        differentials.push(m0.relations().to_vec());
    }
    while differentials.len() < len {
        let i = differentials.len();
        let prev = &differentials[i - 1];
        if prev.is_empty() {
            degrees.push(Vec::new());
            differentials.push(Vec::new());
            continue;
        }
        let raw = syzygies_mod(&ring, &degrees[i - 1], prev, &degrees[i], &[]);
        let free = SubmoduleGb::new(&ring, &degrees[i], &[]);
        let keep = minimal_generators(&free, &raw);
        let cols: Vec<Vector> = keep.into_iter().map(|k| raw[k].clone()).collect();
        let d: Vec<i32> = cols
            .iter()
            .map(|c| crate::ringkernel::poly::vector_degree(c, &degrees[i]).expect("nonzero syzygy"))
            .collect();
        degrees.push(d);
        differentials.push(cols);
    }
    Ok(Resolution { module: m0, degrees, differentials })
}

/// `Ω^i(M) = coker(d_{i+1})`, minimally presented; `Ω^0(M)` is the minimal
/// presentation of `M`.
pub fn syzygy_module(m: &GradedModule, i: usize) -> Result<GradedModule> {
    let res = free_resolution(m, i + 1)?;
    let om = GradedModule::new(m.ring(), res.degrees[i].clone(), res.differentials[i].clone())?;
    Ok(om.with_minimal_flag(true))
}

/// Betti numbers `b_0..b_len`.
pub fn betti_numbers(m: &GradedModule, len: usize) -> Result<Vec<usize>> {
    Ok(free_resolution(m, len)?.betti())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;

    #[test]
    fn residue_field_of_plane_is_koszul() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::plane(f);
        let k = GradedModule::residue_field(&r);
        assert_eq!(betti_numbers(&k, 4).unwrap(), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn a1_module_is_periodic() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::a1_cone(f);
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        assert_eq!(betti_numbers(&m, 4).unwrap(), vec![2, 2, 2, 2, 2]);
    }

    #[test]
    fn composition_of_differentials_vanishes() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::a1_cone(f);
        let k = GradedModule::residue_field(&r);
        let res = free_resolution(&k, 3).unwrap();
        for i in 2..=3 {
            let c = res.differential(i - 1).compose(&res.differential(i)).unwrap();
            assert!(c.is_zero());
        }
        // Betti numbers of k over the cone: 1, 3, 4, 4, ...
        assert_eq!(res.betti(), vec![1, 3, 4, 4]);
    }
}
