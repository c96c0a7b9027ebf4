//! Standard small rings and modules used by tests, examples and the
//! acceptance suite.

use std::sync::Arc;

use crate::field::PrimeField;
use crate::ringkernel::{GradedRing, Poly, Vector};

/// `F_p[x, y]`.
pub fn plane(f: PrimeField) -> Arc<GradedRing> {
    GradedRing::polynomial(f, &["x", "y"])
}

/// The A1 cone `F_p[x, y, z] / (xy - z^2)`.
pub fn a1_cone(f: PrimeField) -> Arc<GradedRing> {
    let s = GradedRing::polynomial(f, &["x", "y", "z"]);
    let rel = s.var(0).mul(f, &s.var(1)).sub(f, &s.var(2).mul(f, &s.var(2)));
    GradedRing::new(f, s.names().to_vec(), vec![1, 1, 1], vec![rel]).expect("cone is valid")
}

/// `F_p[x] / (x^2)`.
pub fn dual_numbers(f: PrimeField) -> Arc<GradedRing> {
    let s = GradedRing::polynomial(f, &["x"]);
    let rel = s.var(0).mul(f, &s.var(0));
    GradedRing::new(f, vec!["x".into()], vec![1], vec![rel]).expect("dual numbers are valid")
}

/// Columns of `[[x, z], [z, y]]`, the presentation of the rank-one MCM
/// module over the A1 cone.
pub fn a1_matrix(r: &Arc<GradedRing>) -> Vec<Vector> {
    vec![vec![r.var(0), r.var(2)], vec![r.var(2), r.var(1)]]
}

pub fn poly_sum(f: PrimeField, ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::zero(), |a, b| a.add(f, b))
}
