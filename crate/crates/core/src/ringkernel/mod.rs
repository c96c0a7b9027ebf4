//! Exact arithmetic over F_p, weighted-graded polynomials, Gröbner bases,
//! syzygies and ideal operations.

pub mod groebner;
pub mod ideal;
pub mod poly;
pub mod ring;
pub mod submodule;

use std::sync::Arc;

use crate::error::{Error, Result};

pub use ideal::{buchberger, krull_dimension, normal_form, IdealHandle};
pub use poly::{Monomial, Poly, Vector};
pub use ring::GradedRing;
pub use submodule::SubmoduleGb;

/// Minimal generators of the syzygy module of the columns `cols` of a matrix
/// over `R` whose rows carry degrees `row_degrees`.
pub fn syzygies(ring: &Arc<GradedRing>, row_degrees: &[i32], cols: &[Vector], col_degrees: &[i32]) -> Result<Vec<Vector>> {
    if cols.len() != col_degrees.len() {
        return Err(Error::InvalidArgument("one degree per column required".into()));
    }
    let degs = submodule::column_degrees(cols, row_degrees)?;
    for (j, (d, &e)) in degs.iter().zip(col_degrees).enumerate() {
        if let Some(d) = d {
            if *d != e {
                return Err(Error::DegreeInconsistent(format!("column {j} has degree {d}, declared {e}")));
            }
        }
    }
    let raw = submodule::syzygies_mod(ring, row_degrees, cols, col_degrees, &[]);
    let free = SubmoduleGb::new(ring, col_degrees, &[]);
    let keep = submodule::minimal_generators(&free, &raw);
    Ok(keep.into_iter().map(|i| raw[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;

    #[test]
    fn koszul_syzygy() {
        let f = PrimeField::new(32003).unwrap();
        let r = GradedRing::polynomial(f, &["x", "y"]);
        let cols = vec![vec![r.var(0)], vec![r.var(1)]];
        let s = syzygies(&r, &[0], &cols, &[1, 1]).unwrap();
        assert_eq!(s.len(), 1);
        let comp = r.var(0).mul(f, &s[0][0]).add(f, &r.var(1).mul(f, &s[0][1]));
        assert!(comp.is_zero());
        assert_eq!(s[0][0].degree(), Some(1));
    }

    #[test]
    fn unit_column_has_no_syzygies() {
        let f = PrimeField::new(32003).unwrap();
        let r = GradedRing::polynomial(f, &["x", "y"]);
        assert!(syzygies(&r, &[0], &[vec![r.one()]], &[0]).unwrap().is_empty());
    }

    #[test]
    fn matrix_factorization_partner() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::a1_cone(f);
        let m = fixtures::a1_matrix(&r);
        let s = syzygies(&r, &[0, 0], &m, &[1, 1]).unwrap();
        assert_eq!(s.len(), 2);
        // every syzygy composes to zero in R
        for c in &s {
            for row in 0..2 {
                let e = m[0][row].mul(f, &c[0]).add(f, &m[1][row].mul(f, &c[1]));
                assert!(r.reduce(&e).is_zero());
            }
        }
    }

    #[test]
    fn inhomogeneous_column_rejected() {
        let f = PrimeField::new(32003).unwrap();
        let r = GradedRing::polynomial(f, &["x", "y"]);
        let bad = vec![vec![r.var(0).add(f, &r.one())]];
        assert!(syzygies(&r, &[0], &bad, &[1]).is_err());
    }
}
