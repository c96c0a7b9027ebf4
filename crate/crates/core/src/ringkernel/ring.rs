//! Graded quotient rings `F_p[x_1..x_v] / I` with positive weights.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ringkernel::groebner::{groebner, to_polys, ModuleOrder, Reducer};
use crate::ringkernel::poly::{monomials_of_degree, Monomial, Poly};

#[derive(Debug)]
pub struct GradedRing {
    field: PrimeField,
    names: Vec<String>,
    weights: Vec<i32>,
    ideal: Vec<Poly>,
    gb: Vec<Poly>,
    reducer: Reducer,
    krull_dim: usize,
}

impl PartialEq for GradedRing {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.names == o.names && self.weights == o.weights && self.gb == o.gb
    }
}

impl Eq for GradedRing {}

impl GradedRing {
    pub fn new(field: PrimeField, names: Vec<String>, weights: Vec<i32>, ideal: Vec<Poly>) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(Error::InvalidArgument(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| w <= 0) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        for g in &ideal {
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string_with(field, &names)));
            }
            if g.constant_term() != 0 {
                return Err(Error::InvalidArgument("defining ideal must lie in the maximal ideal".into()));
            }
        }
        let order = ModuleOrder::top(vec![0]);
        let gb_m = groebner(ideal.iter().map(|g| order.from_polys(std::slice::from_ref(g), 0)).collect(), &order, field, &weights);
        let gb: Vec<Poly> = gb_m.iter().map(|v| to_polys(v, 0..1).remove(0)).collect();
        let mut reducer = Reducer::new(order, field);
        for v in gb_m {
            reducer.push(v);
        }
        let krull_dim = independent_set_dimension(names.len(), gb.iter().filter_map(|g| g.lead().map(|t| &t.0)));
        Ok(Arc::new(GradedRing { field, names, weights, ideal: ideal.into_iter().filter(|g| !g.is_zero()).collect(), gb, reducer, krull_dim }))
    }

    /// The polynomial ring itself.
    pub fn polynomial(field: PrimeField, names: &[&str]) -> Arc<Self> {
        let n = names.len();
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), vec![1; n], Vec::new())
            .expect("polynomial ring is always valid")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn max_weight(&self) -> i32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn defining_ideal(&self) -> &[Poly] {
        &self.ideal
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn groebner_basis(&self) -> &[Poly] {
        &self.gb
    }

    pub fn krull_dimension(&self) -> usize {
        self.krull_dim
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::monomial(Monomial::variable(i, &self.weights), 1)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(1, self.nvars())
    }

    pub fn constant(&self, c: u32) -> Poly {
        Poly::constant(c, self.nvars())
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::from_exponents(exps, &self.weights)
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.gb.is_empty() {
            return f.clone();
        }
        let v = self.reducer.reduce(self.reducer.order.from_polys(std::slice::from_ref(f), 0));
        to_polys(&v, 0..1).remove(0)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(self.field, b))
    }

    /// True when the monomial is not a leading term of the defining ideal.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.reducer.is_reducible(0, m)
    }

    /// Standard monomials of weighted degree `d`: a basis of `R_d`.
    pub fn standard_monomials(&self, d: i32) -> Vec<Monomial> {
        monomials_of_degree(&self.weights, d).into_iter().filter(|m| self.is_standard(m)).collect()
    }

    pub fn hilbert_function(&self, d: i32) -> usize {
        self.standard_monomials(d).len()
    }

    /// All monomials that are products of exactly `k` variables.
    pub fn monomials_of_order(&self, k: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let n = self.nvars();
        let mut exps = vec![0u16; n];
        fn rec(i: usize, rem: u32, exps: &mut Vec<u16>, w: &[i32], out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = rem as u16;
                out.push(Monomial::from_exponents(exps, w));
                exps[i] = 0;
                return;
            }
            for e in (0..=rem).rev() {
                exps[i] = e as u16;
                rec(i + 1, rem - e, exps, w, out);
            }
            exps[i] = 0;
        }
        if n == 0 {
            return if k == 0 { vec![Monomial::one(0)] } else { out };
        }
        rec(0, k, &mut exps, &self.weights, &mut out);
        out
    }
}

/// Dimension of `S / J` for the monomial ideal `J` generated by `leads`:
/// the largest set of variables containing the support of no generator.
pub fn independent_set_dimension<'a>(nvars: usize, leads: impl Iterator<Item = &'a Monomial>) -> usize {
    let supports: Vec<u64> = leads
        .map(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    if supports.iter().any(|&s| s == 0) {
        return 0; // unit ideal; treated as dimension 0 by convention
    }
    let mut best = 0;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures as examples;

    #[test]
    fn dimensions() {
        let f = PrimeField::new(32003).unwrap();
        assert_eq!(GradedRing::polynomial(f, &["x", "y"]).krull_dimension(), 2);
        assert_eq!(examples::a1_cone(f).krull_dimension(), 2);
        let r = examples::dual_numbers(f);
        assert_eq!(r.krull_dimension(), 0);
    }

    #[test]
    fn rejects_inhomogeneous_ideal() {
        let f = PrimeField::new(32003).unwrap();
        let w = [1];
        let p = Poly::from_terms(f, vec![(Monomial::from_exponents(&[1], &w), 1), (Monomial::one(1), 1)]);
        assert!(GradedRing::new(f, vec!["x".into()], vec![1], vec![p]).is_err());
    }

    #[test]
    fn cone_hilbert_function() {
        let f = PrimeField::new(32003).unwrap();
        let r = examples::a1_cone(f);
        // (1 - t^2)/(1 - t)^3 = 1 + 3t + 5t^2 + ...
        for d in 0..6 {
            assert_eq!(r.hilbert_function(d), 2 * d as usize + 1);
        }
    }
}
