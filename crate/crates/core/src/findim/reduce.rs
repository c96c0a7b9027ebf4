//! `B / m^s B` for an endomorphism algebra `B`, as a finite-dimensional
//! algebra with explicit basis maps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::findim::algebra::FinDimAlgebra;
use crate::homext::EndAlgebra;
use crate::modlib::ops::quotient_by;
use crate::modlib::{GradedModule, ModuleMap};
use crate::ringkernel::poly::vector_is_zero;
use crate::ringkernel::Poly;

/// `B / m^s B` with a basis of homogeneous endomorphisms.
#[derive(Debug)]
pub struct ReducedAlgebra<'a> {
    pub end: &'a EndAlgebra,
    pub exponent: u32,
    pub algebra: FinDimAlgebra,
    /// Basis endomorphisms, in global order.
    pub basis: Vec<ModuleMap>,
    quotient: GradedModule,
    offsets: BTreeMap<i32, (usize, usize)>,
}

impl ReducedAlgebra<'_> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homogeneous endomorphism's image.
    pub fn coords(&self, b: &ModuleMap) -> Result<Vec<u32>> {
        let mut out = vec![0u32; self.basis.len()];
        let Some(&(off, n)) = self.offsets.get(&b.degree) else {
            return Ok(out);
        };
        let w = self
            .end
            .hom
            .express(b)
            .ok_or_else(|| Error::Internal("map is not an endomorphism".into()))?;
        if vector_is_zero(&w) {
            return Ok(out);
        }
        let c = self.quotient.gb().coords(&w, b.degree);
        debug_assert_eq!(c.len(), n);
        out[off..off + n].copy_from_slice(&c);
        Ok(out)
    }

    /// The endomorphism (a lift) with the given coordinates, split by degree.
    pub fn element(&self, c: &[u32]) -> Vec<ModuleMap> {
        let mut out = Vec::new();
        for &(off, n) in self.offsets.values() {
            let part = &c[off..off + n];
            if part.iter().all(|&x| x == 0) {
                continue;
            }
            let mut acc: Option<ModuleMap> = None;
            for (k, &x) in part.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let t = self.basis[off + k].scale(x);
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t).expect("same degree"),
                });
            }
            out.extend(acc);
        }
        out
    }
}

/// Builds `B / m^s B`. The multiplication is composition.
pub fn reduce_mod_m(end: &EndAlgebra, exponent: u32) -> Result<ReducedAlgebra<'_>> {
    if exponent == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    let h = &end.hom.module;
    let ring = h.ring().clone();
    let mons = ring.monomials_of_order(exponent);
    let mut elems = Vec::new();
    for g in 0..h.ngens() {
        for m in &mons {
            let mut v = h.zero_vector();
            v[g] = Poly::monomial(m.clone(), 1);
            elems.push(v);
        }
    }
    let (quotient, _) = quotient_by(h, &elems)?;
    let (lo, hi) = quotient
        .support_range()
        .ok_or_else(|| Error::Internal("B / m^s B is not of finite length".into()))?;
    let mut basis = Vec::new();
    let mut offsets = BTreeMap::new();
    for d in lo..=hi {
        let pb = quotient.piece_basis(d);
        if pb.is_empty() {
            continue;
        }
        offsets.insert(d, (basis.len(), pb.len()));
        for v in pb {
            basis.push(end.hom.decode_with_degree(&end.hom.inclusion.apply(&v), d));
        }
    }
    let mut red = ReducedAlgebra {
        end,
        exponent,
        algebra: FinDimAlgebra::ground(ring.field()),
        basis,
        quotient,
        offsets,
    };
    let n = red.basis.len();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = end.multiply(&red.basis[i], &red.basis[j]);
            mult[i][j] = red.coords(&p)?;
        }
    }
    let unit = red.coords(&end.identity())?;
    red.algebra = FinDimAlgebra::new_unchecked(ring.field(), mult, unit)?;
    Ok(red)
}
