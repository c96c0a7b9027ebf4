//! Finitely presented graded modules and homogeneous maps between them.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ringkernel::poly::{check_vector_homogeneous, vector_is_zero};
use crate::ringkernel::submodule::combine;
use crate::ringkernel::{GradedRing, Poly, SubmoduleGb, Vector};

/// `coker(F_1 -> F_0)` with `F_0 = ⊕ R(-degrees[i])`; relation columns are
/// stored reduced modulo the defining ideal, zero columns dropped.
#[derive(Clone, Debug)]
pub struct GradedModule {
    ring: Arc<GradedRing>,
    degrees: Vec<i32>,
    relations: Vec<Vector>,
    rel_degrees: Vec<i32>,
    minimal: bool,
    gb: Arc<OnceLock<Arc<SubmoduleGb>>>,
}

impl GradedModule {
    pub fn new(ring: &Arc<GradedRing>, degrees: Vec<i32>, relations: Vec<Vector>) -> Result<Self> {
        let g = degrees.len();
        let mut rels = Vec::new();
        let mut rel_degrees = Vec::new();
        for (j, col) in relations.into_iter().enumerate() {
            if col.len() != g {
                return Err(Error::DegreeInconsistent(format!(
                    "relation {j} has {} entries for {g} generators",
                    col.len()
                )));
            }
            let col: Vector = col.iter().map(|p| ring.reduce(p)).collect();
            match check_vector_homogeneous(&col, &degrees) {
                Err(e) => return Err(Error::NotHomogeneous(format!("relation {j}: {e}"))),
                Ok(None) => continue,
                Ok(Some(d)) => {
                    rels.push(col);
                    rel_degrees.push(d);
                }
            }
        }
        Ok(GradedModule {
            ring: ring.clone(),
            degrees,
            relations: rels,
            rel_degrees,
            minimal: false,
            gb: Arc::new(OnceLock::new()),
        })
    }

    /// `⊕ R(-degrees[i])`.
    pub fn free(ring: &Arc<GradedRing>, degrees: Vec<i32>) -> Self {
        let mut m = Self::new(ring, degrees, Vec::new()).expect("free module is valid");
        m.minimal = true;
        m
    }

    /// `R / J` for an ideal given by generators, generated in degree 0.
    pub fn cyclic(ring: &Arc<GradedRing>, ideal_gens: &[Poly]) -> Result<Self> {
        Self::new(ring, vec![0], ideal_gens.iter().map(|p| vec![p.clone()]).collect())
    }

    /// The residue field `k = R / m`.
    pub fn residue_field(ring: &Arc<GradedRing>) -> Self {
        let gens: Vec<Poly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        let mut k = Self::cyclic(ring, &gens).expect("residue field is valid");
        k.minimal = true;
        k
    }

    pub(crate) fn with_minimal_flag(mut self, minimal: bool) -> Self {
        self.minimal = minimal;
        self
    }

    /// The same presentation with every degree shifted: `M(-s)`.
    pub fn shifted(&self, s: i32) -> Self {
        let mut m = Self::new(&self.ring, self.degrees.iter().map(|d| d + s).collect(), self.relations.clone())
            .expect("shift preserves validity");
        m.minimal = self.minimal;
        m
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn ngens(&self) -> usize {
        self.degrees.len()
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[i32] {
        &self.rel_degrees
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Gröbner basis of the relation submodule (plus `I·F_0`).
    pub fn gb(&self) -> &Arc<SubmoduleGb> {
        self.gb.get_or_init(|| Arc::new(SubmoduleGb::new(&self.ring, &self.degrees, &self.relations)))
    }

    pub fn same_ring(&self, o: &GradedModule) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn generator(&self, i: usize) -> Vector {
        let mut v = self.zero_vector();
        v[i] = self.ring.one();
        v
    }

    pub fn zero_vector(&self) -> Vector {
        vec![Poly::zero(); self.ngens()]
    }

    /// True when the element of `F_0` is zero in the module.
    pub fn is_zero_element(&self, v: &[Poly]) -> bool {
        vector_is_zero(v) || self.gb().contains(v)
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vector {
        self.gb().nf(v)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.ngens()).all(|i| self.gb().contains(&self.generator(i)))
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// Identical presentations (generator degrees and relation columns).
    pub fn same_presentation(&self, o: &GradedModule) -> bool {
        self.ring == o.ring && self.degrees == o.degrees && self.relations == o.relations
    }

    /// Dimension of the degree-`d` piece.
    pub fn piece_dim(&self, d: i32) -> usize {
        self.gb().piece_dim(d)
    }

    /// Elements of `F_0` whose classes form a basis of the degree-`d` piece.
    pub fn piece_basis(&self, d: i32) -> Vec<Vector> {
        let gb = self.gb();
        let n = gb.piece_dim(d);
        (0..n)
            .map(|i| {
                let mut c = vec![0u32; n];
                c[i] = 1;
                gb.from_coords(d, &c)
            })
            .collect()
    }

    /// Degrees in which the module can be nonzero, when of finite length.
    pub fn support_range(&self) -> Option<(i32, i32)> {
        let top = self.gb().top_degree_bound()?;
        Some((self.min_degree(), top))
    }

    pub fn min_degree(&self) -> i32 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn relations_to_strings(&self) -> Vec<Vec<String>> {
        let f = self.field();
        self.relations
            .iter()
            .map(|c| c.iter().map(|p| p.to_string_with(f, self.ring.names())).collect())
            .collect()
    }
}

/// A homogeneous map given on generators: column `i` is the image of the
/// `i`-th generator of the source, written in the target's free module.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: GradedModule,
    pub target: GradedModule,
    pub matrix: Vec<Vector>,
    pub degree: i32,
}

impl ModuleMap {
    /// Builds and validates a map: columns must be homogeneous of the right
    /// degree and every source relation must land in the target relations.
    pub fn new(source: &GradedModule, target: &GradedModule, matrix: Vec<Vector>, degree: i32) -> Result<Self> {
        source.same_ring(target)?;
        let map = Self::new_unchecked(source, target, matrix, degree)?;
        map.check_well_defined()?;
        Ok(map)
    }

    /// Builds a map checking only shapes and degrees.
    pub fn new_unchecked(source: &GradedModule, target: &GradedModule, matrix: Vec<Vector>, degree: i32) -> Result<Self> {
        if matrix.len() != source.ngens() {
            return Err(Error::ModuleMismatch(format!(
                "{} columns for {} source generators",
                matrix.len(),
                source.ngens()
            )));
        }
        let ring = source.ring().clone();
        let mut cols = Vec::with_capacity(matrix.len());
        for (i, c) in matrix.into_iter().enumerate() {
            if c.len() != target.ngens() {
                return Err(Error::ModuleMismatch(format!("column {i} has wrong length")));
            }
            let c: Vector = c.iter().map(|p| ring.reduce(p)).collect();
            match check_vector_homogeneous(&c, target.degrees()) {
                Err(e) => return Err(Error::NotHomogeneous(format!("map column {i}: {e}"))),
                Ok(Some(d)) if d != source.degrees()[i] + degree => {
                    return Err(Error::DegreeInconsistent(format!(
                        "map column {i} has degree {d}, expected {}",
                        source.degrees()[i] + degree
                    )))
                }
                _ => {}
            }
            cols.push(c);
        }
        Ok(ModuleMap { source: source.clone(), target: target.clone(), matrix: cols, degree })
    }

    pub fn check_well_defined(&self) -> Result<()> {
        for (j, rel) in self.source.relations().iter().enumerate() {
            let img = self.apply(rel);
            if !self.target.is_zero_element(&img) {
                return Err(Error::ModuleMismatch(format!("relation {j} of the source does not map to zero")));
            }
        }
        Ok(())
    }

    pub fn identity(m: &GradedModule) -> Self {
        let cols = (0..m.ngens()).map(|i| m.generator(i)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), matrix: cols, degree: 0 }
    }

    pub fn zero(source: &GradedModule, target: &GradedModule, degree: i32) -> Self {
        let cols = (0..source.ngens()).map(|_| target.zero_vector()).collect();
        ModuleMap { source: source.clone(), target: target.clone(), matrix: cols, degree }
    }

    /// Image of an element of the source's free module.
    pub fn apply(&self, v: &[Poly]) -> Vector {
        let ring = self.source.ring();
        combine(ring.field(), self.target.ngens(), &self.matrix, v)
            .iter()
            .map(|p| ring.reduce(p))
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target.ngens() != self.source.ngens() || other.target.degrees() != self.source.degrees() {
            return Err(Error::ModuleMismatch("composition of incompatible maps".into()));
        }
        let cols = other.matrix.iter().map(|c| self.apply(c)).collect();
        Ok(ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: cols,
            degree: self.degree + other.degree,
        })
    }

    pub fn add(&self, o: &ModuleMap) -> Result<ModuleMap> {
        if self.matrix.len() != o.matrix.len() || self.degree != o.degree {
            return Err(Error::ModuleMismatch("sum of incompatible maps".into()));
        }
        let f = self.source.field();
        let cols = self
            .matrix
            .iter()
            .zip(&o.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(f, y)).collect())
            .collect();
        Ok(ModuleMap { matrix: cols, ..self.clone() })
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        let f = self.source.field();
        let cols = self.matrix.iter().map(|col| col.iter().map(|p| p.scale(f, c)).collect()).collect();
        ModuleMap { matrix: cols, ..self.clone() }
    }

    /// Multiplication by a homogeneous ring element.
    pub fn mul_poly(&self, p: &Poly) -> ModuleMap {
        let ring = self.source.ring();
        let cols = self
            .matrix
            .iter()
            .map(|col| col.iter().map(|q| ring.mul(q, p)).collect())
            .collect();
        ModuleMap { matrix: cols, degree: self.degree + p.degree().unwrap_or(0), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|c| self.target.is_zero_element(c))
    }

    /// Equality as homomorphisms (columns agree modulo target relations).
    pub fn equals(&self, o: &ModuleMap) -> bool {
        let f = self.source.field();
        self.matrix.len() == o.matrix.len()
            && self.matrix.iter().zip(&o.matrix).all(|(a, b)| {
                let d: Vector = a.iter().zip(b).map(|(x, y)| x.sub(f, y)).collect();
                self.target.is_zero_element(&d)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;

    #[test]
    fn relation_homogeneity_is_enforced() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::plane(f);
        let bad = vec![vec![r.var(0), r.one()]];
        assert!(GradedModule::new(&r, vec![0, 0], bad).is_err());
        let ok = vec![vec![r.var(1), r.var(0).neg(f)]];
        assert!(GradedModule::new(&r, vec![0, 0], ok).is_ok());
    }

    #[test]
    fn map_validation_rejects_ill_defined_maps() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::plane(f);
        let k = GradedModule::residue_field(&r);
        let free = GradedModule::free(&r, vec![0]);
        // k -> R sending 1 to 1 does not respect x·1 = 0
        assert!(ModuleMap::new(&k, &free, vec![vec![r.one()]], 0).is_err());
        // R -> k is fine
        assert!(ModuleMap::new(&free, &k, vec![vec![r.one()]], 0).is_ok());
    }
}
