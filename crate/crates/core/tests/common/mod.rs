//! Shared random instances: direct sums of two or three summands over the
//! A1 cone, with `Ext^1` into a shifted residue field.

#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use bigindec::field::PrimeField;
use bigindec::fixtures;
use bigindec::homext::{ext_class_equal, ext_module, ExtClass, ExtData, ExtSpace};
use bigindec::modlib::{direct_sum, DirectSum, GradedModule, ModuleMap};
use bigindec::pipeline::degree_zero_end;
use bigindec::yoneda::summand_data;

pub const P: u32 = 32003;

pub struct Setup {
    pub sum: DirectSum,
    pub data: Arc<ExtData>,
    pub space: ExtSpace,
    pub parts: Vec<Arc<ExtData>>,
    pub end0: Vec<ModuleMap>,
}

pub fn setups() -> &'static [Setup] {
    static CELL: OnceLock<Vec<Setup>> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = PrimeField::new(P).unwrap();
        let r = fixtures::a1_cone(f);
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let k1 = GradedModule::residue_field(&r).shifted(1);
        let free = GradedModule::free(&r, vec![0]);
        let configs = vec![
            vec![m.clone(), k1.clone()],
            vec![m.clone(), m.clone()],
            vec![m.clone(), k1.clone(), m.shifted(1)],
            vec![k1.clone(), m.clone(), free],
            vec![m.clone(), m.clone(), k1.clone()],
        ];
        configs
            .into_iter()
            .map(|parts| {
                let sum = direct_sum(&parts).unwrap();
                let e = ext_module(&sum.module, &k1, 1).unwrap();
                let space = e.space.clone().unwrap();
                let pd = summand_data(&sum, &parts, &k1).unwrap();
                let end0 = degree_zero_end(&sum.module).unwrap().basis;
                assert!(space.dim() > 0 && !end0.is_empty());
                Setup { sum, data: e.data.clone(), space, parts: pd, end0 }
            })
            .collect()
    })
}

pub fn class(s: &Setup, pick: usize, coeffs: &[u32]) -> ExtClass {
    let dims: Vec<(i32, usize)> = s.space.dims().into_iter().filter(|(_, d)| *d > 0).collect();
    let (d, n) = dims[pick % dims.len()];
    s.space.class(d, &coeffs[..n].iter().map(|c| c % P).collect::<Vec<_>>())
}

pub fn endo(s: &Setup, coeffs: &[u32]) -> ModuleMap {
    let mut b = ModuleMap::zero(&s.sum.module, &s.sum.module, 0);
    for (g, c) in s.end0.iter().zip(coeffs.iter().cycle()) {
        b = b.add(&g.scale(c % P)).unwrap();
    }
    b
}

pub fn all_equal(a: &[ExtClass], b: &[ExtClass]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| ext_class_equal(x, y).unwrap())
}
