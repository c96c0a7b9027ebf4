//! Homogeneous ideals of a graded ring: normal forms, membership,
//! quotients, saturation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ringkernel::poly::Poly;
use crate::ringkernel::ring::{independent_set_dimension, GradedRing};
use crate::ringkernel::submodule::{syzygies_mod, SubmoduleGb};

#[derive(Debug, Clone)]
pub struct IdealHandle {
    ring: Arc<GradedRing>,
    gens: Vec<Poly>,
    gb: Arc<SubmoduleGb>,
}

impl IdealHandle {
    /// The ideal of `R` generated by `gens`. Generators must be homogeneous.
    pub fn new(ring: &Arc<GradedRing>, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string_with(ring.field(), ring.names())));
            }
        }
        let gens: Vec<Poly> = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        let cols: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
        let gb = Arc::new(SubmoduleGb::new(ring, &[0], &cols));
        Ok(IdealHandle { ring: ring.clone(), gens, gb })
    }

    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Self::new(ring, Vec::new()).expect("zero ideal is valid")
    }

    pub fn unit(ring: &Arc<GradedRing>) -> Self {
        Self::new(ring, vec![ring.one()]).expect("unit ideal is valid")
    }

    /// The homogeneous maximal ideal `(x_1, .., x_v)`.
    pub fn maximal(ring: &Arc<GradedRing>) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect()).expect("maximal ideal is valid")
    }

    /// `m^n`, generated by all products of `n` variables.
    pub fn maximal_power(ring: &Arc<GradedRing>, n: u32) -> Self {
        let gens = ring.monomials_of_order(n).into_iter().map(|m| Poly::monomial(m, 1)).collect();
        Self::new(ring, gens).expect("monomial ideal is valid")
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis of the preimage in the polynomial ring.
    pub fn groebner_basis(&self) -> Vec<Poly> {
        self.gb.basis().into_iter().map(|mut v| v.remove(0)).collect()
    }

    pub fn submodule(&self) -> &Arc<SubmoduleGb> {
        &self.gb
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.gb.nf(std::slice::from_ref(f)).remove(0)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.gb.contains(std::slice::from_ref(f))
    }

    pub fn contains_ideal(&self, o: &IdealHandle) -> bool {
        o.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, o: &IdealHandle) -> bool {
        self.contains_ideal(o) && o.contains_ideal(self)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring.one())
    }

    /// `R / J` has finite length, read off from the standard monomials.
    pub fn has_finite_colength(&self) -> bool {
        self.gb.is_finite_length()
    }

    /// `dim_k R / J` when finite.
    pub fn colength(&self) -> Option<usize> {
        self.gb.length()
    }

    pub fn dimension(&self) -> usize {
        independent_set_dimension(self.ring.nvars(), self.gb.leading_terms().iter().map(|(_, m)| m))
    }

    pub fn sum(&self, o: &IdealHandle) -> Result<IdealHandle> {
        self.check_ring(o)?;
        let mut g = self.gens.clone();
        g.extend(o.gens.iter().cloned());
        IdealHandle::new(&self.ring, g)
    }

    pub fn product(&self, o: &IdealHandle) -> Result<IdealHandle> {
        self.check_ring(o)?;
        let f = self.ring.field();
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &o.gens {
                g.push(a.mul(f, b));
            }
        }
        IdealHandle::new(&self.ring, g)
    }

    fn check_ring(&self, o: &IdealHandle) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// `(self : J) = {f : f·J ⊆ self}`.
    pub fn quotient(&self, j: &IdealHandle) -> Result<IdealHandle> {
        self.check_ring(j)?;
        if j.gens.is_empty() {
            return Ok(IdealHandle::unit(&self.ring));
        }
        // kernel of R -> ⊕_g R/self, 1 ↦ (g)_g
        let k = j.gens.len();
        let ambient: Vec<i32> = j.gens.iter().map(|g| -g.degree().unwrap_or(0)).collect();
        let col: Vec<Poly> = j.gens.clone();
        let mut extra = Vec::new();
        for (c, _) in j.gens.iter().enumerate() {
            for g in &self.gens {
                let mut v = vec![Poly::zero(); k];
                v[c] = g.clone();
                extra.push(v);
            }
        }
        let syz = syzygies_mod(&self.ring, &ambient, &[col], &[0], &extra);
        let gens = syz.into_iter().map(|mut v| v.remove(0)).collect();
        IdealHandle::new(&self.ring, gens)
    }

    /// `(self : J^∞)`, by iterating quotients until the ideal stabilizes.
    pub fn saturation(&self, j: &IdealHandle) -> Result<IdealHandle> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(j)?;
            if cur.contains_ideal(&next) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Proper and primary to the maximal ideal.
    pub fn is_m_primary(&self) -> bool {
        if self.is_unit() {
            return false;
        }
        let m = IdealHandle::maximal(&self.ring);
        self.saturation(&m).map(|s| s.is_unit()).unwrap_or(false)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string_with(self.ring.field(), self.ring.names())).collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `R`.
pub fn buchberger(ring: &Arc<GradedRing>, gens: Vec<Poly>) -> Result<IdealHandle> {
    IdealHandle::new(ring, gens)
}

pub fn normal_form(f: &Poly, ideal: &IdealHandle) -> Poly {
    ideal.normal_form(f)
}

pub fn krull_dimension(ring: &GradedRing) -> usize {
    ring.krull_dimension()
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
    fn membership_and_normal_forms() {
        let r = GradedRing::polynomial(f(), &["x", "y"]);
        let m = IdealHandle::maximal(&r);
        assert!(m.normal_form(&r.var(0)).is_zero());
        assert!(!m.is_unit());
    }

    #[test]
    fn cone_relation_normal_form() {
        // In F_p[x,y,z] with x > y > z, xy leads xy - z^2, so both sides of
        // the relation share the normal form z^2.
        let s = GradedRing::polynomial(f(), &["x", "y", "z"]);
        let fld = f();
        let xy = s.var(0).mul(fld, &s.var(1));
        let z2 = s.var(2).mul(fld, &s.var(2));
        let i = IdealHandle::new(&s, vec![xy.sub(fld, &z2)]).unwrap();
        assert_eq!(i.normal_form(&z2), i.normal_form(&xy));
        assert_eq!(i.normal_form(&xy), z2);
    }

    #[test]
    fn basis_example_from_hand_reduction() {
        let fld = f();
        let r = GradedRing::polynomial(fld, &["x", "y"]);
        let x2 = r.var(0).mul(fld, &r.var(0));
        let y2 = r.var(1).mul(fld, &r.var(1));
        let i = buchberger(&r, vec![x2.sub(fld, &y2), y2.clone()]).unwrap();
        assert_eq!(i.groebner_basis(), vec![y2, x2]);
    }

    #[test]
    fn basis_independent_of_generator_order() {
        let fld = f();
        let r = GradedRing::polynomial(fld, &["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let g1 = x.mul(fld, &y).sub(fld, &z.mul(fld, &z));
        let g2 = y.mul(fld, &z).sub(fld, &x.mul(fld, &x));
        let g3 = x.mul(fld, &z).add(fld, &y.mul(fld, &y));
        let a = buchberger(&r, vec![g1.clone(), g2.clone(), g3.clone()]).unwrap();
        let b = buchberger(&r, vec![g3, g1, g2]).unwrap();
        assert_eq!(a.groebner_basis(), b.groebner_basis());
    }

    #[test]
    fn m_primary_examples() {
        let fld = f();
        let r = GradedRing::polynomial(fld, &["x", "y"]);
        let x2 = r.var(0).mul(fld, &r.var(0));
        let y3 = r.var(1).mul(fld, &r.var(1)).mul(fld, &r.var(1));
        assert!(IdealHandle::new(&r, vec![x2.clone(), y3]).unwrap().is_m_primary());
        assert!(!IdealHandle::new(&r, vec![r.var(0)]).unwrap().is_m_primary());
        let sat = IdealHandle::new(&r, vec![x2]).unwrap().saturation(&IdealHandle::new(&r, vec![r.var(0)]).unwrap()).unwrap();
        assert!(sat.is_unit());
        assert!(!IdealHandle::unit(&r).is_m_primary());
    }

    #[test]
    fn saturation_of_embedded_component() {
        let fld = f();
        let r = GradedRing::polynomial(fld, &["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        // (x^2, xy) = (x) ∩ (x^2, y); saturating by m leaves (x)
        let i = IdealHandle::new(&r, vec![x.mul(fld, &x), x.mul(fld, &y)]).unwrap();
        let s = i.saturation(&IdealHandle::maximal(&r)).unwrap();
        assert!(s.same_ideal(&IdealHandle::new(&r, vec![x]).unwrap()));
    }

    #[test]
    fn quotient_ring_zero_ideal_saturation() {
        let fld = f();
        let r = fixtures::a1_cone(fld);
        let z = IdealHandle::zero(&r);
        assert!(z.saturation(&IdealHandle::maximal(&r)).unwrap().is_zero());
    }
}
