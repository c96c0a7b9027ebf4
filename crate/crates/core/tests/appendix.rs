//! Randomized checks of the direct-sum correspondence `φ`, the matrix map `ψ`
//! and pullback functoriality, over sums of two or three summands.

mod common;

use bigindec::homext::{ext_action, ext_class_equal, ext_pullback};
use bigindec::modlib::ModuleMap;
use bigindec::yoneda::{phi_inverse, phi_split, psi_matrix, psi_product, tuple_times_psi};
use common::{all_equal, class, endo, setups, P};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

/// 120 cases; `BIGINDEC_SEED` pins the generator.
fn config() -> ProptestConfig {
    let mut c = ProptestConfig::with_cases(120);
    if let Some(seed) = std::env::var("BIGINDEC_SEED").ok().and_then(|v| v.parse().ok()) {
        c.rng_seed = RngSeed::Fixed(seed);
    }
    c
}

fn coeffs() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..P, 64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn phi_intertwines_action(which in 0usize..5, pick in 0usize..8, a in coeffs(), c in coeffs()) {
        let s = &setups()[which];
        let alpha = class(s, pick, &a);
        let b = endo(s, &c);
        let lhs = phi_split(&ext_action(&alpha, &b).unwrap(), &s.sum, &s.parts).unwrap();
        let psi = psi_matrix(&b, &s.sum).unwrap();
        let rhs = tuple_times_psi(&phi_split(&alpha, &s.sum, &s.parts).unwrap(), &psi, &s.parts).unwrap();
        prop_assert!(all_equal(&lhs, &rhs));
    }

    #[test]
    fn phi_round_trip(which in 0usize..5, pick in 0usize..8, a in coeffs()) {
        let s = &setups()[which];
        let alpha = class(s, pick, &a);
        let t = phi_split(&alpha, &s.sum, &s.parts).unwrap();
        let back = phi_inverse(&t, &s.sum, &s.data).unwrap();
        prop_assert!(ext_class_equal(&back, &alpha).unwrap());
        let again = phi_split(&back, &s.sum, &s.parts).unwrap();
        prop_assert!(all_equal(&again, &t));
    }

    #[test]
    fn psi_is_multiplicative(which in 0usize..5, c1 in coeffs(), c2 in coeffs()) {
        let s = &setups()[which];
        let (a, b) = (endo(s, &c1), endo(s, &c2));
        let whole = psi_matrix(&a.compose(&b).unwrap(), &s.sum).unwrap();
        let prod = psi_product(&psi_matrix(&a, &s.sum).unwrap(), &psi_matrix(&b, &s.sum).unwrap()).unwrap();
        for (x, y) in whole.iter().flatten().zip(prod.iter().flatten()) {
            prop_assert!(x.equals(y));
        }
    }

    #[test]
    fn pullback_is_functorial(which in 0usize..5, pick in 0usize..8, a in coeffs(), c1 in coeffs(), c2 in coeffs()) {
        let s = &setups()[which];
        let alpha = class(s, pick, &a);
        let (f, g) = (endo(s, &c1), endo(s, &c2));
        let stepwise = ext_pullback(&ext_pullback(&alpha, &f, &s.data).unwrap(), &g, &s.data).unwrap();
        let at_once = ext_pullback(&alpha, &f.compose(&g).unwrap(), &s.data).unwrap();
        prop_assert!(ext_class_equal(&stepwise, &at_once).unwrap());
    }
}

#[test]
fn psi_is_unital() {
    for s in setups() {
        let psi = psi_matrix(&ModuleMap::identity(&s.sum.module), &s.sum).unwrap();
        for (j, row) in psi.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                if i == j {
                    assert!(e.equals(&ModuleMap::identity(&e.source)));
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }
}
