//! `Hom_R(M, N)` and endomorphism algebras.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modlib::invariants::{hom_from_free, hom_from_free_map};
use crate::modlib::ops::{kernel_generators, submodule_presentation, Lifter};
use crate::modlib::{GradedModule, ModuleMap};
use crate::ringkernel::poly::vector_degree;
use crate::ringkernel::{Poly, Vector};

/// `Hom(M, N) = ker(Hom(F_0, N) → Hom(F_1, N))`, presented on minimal
/// generators; elements of the ambient `Hom(F_0, N)` decode to maps.
#[derive(Debug)]
pub struct HomModule {
    pub source: GradedModule,
    pub target: GradedModule,
    /// `Hom(F_0, N)`.
    pub ambient: GradedModule,
    pub module: GradedModule,
    /// Columns: the generators of `module` inside `ambient`.
    pub inclusion: ModuleMap,
    lifter: Lifter,
}

impl HomModule {
    pub fn source_gens(&self) -> usize {
        self.source.ngens()
    }

    /// The map encoded by an element of `Hom(F_0, N)`.
    pub fn decode(&self, v: &[Poly]) -> Result<ModuleMap> {
        let gn = self.target.ngens();
        let degree = match vector_degree(v, self.ambient.degrees()) {
            Some(d) => d,
            None => 0,
        };
        let cols: Vec<Vector> = (0..self.source.ngens()).map(|k| v[k * gn..(k + 1) * gn].to_vec()).collect();
        ModuleMap::new_unchecked(&self.source, &self.target, cols, degree)
    }

    pub fn decode_with_degree(&self, v: &[Poly], degree: i32) -> ModuleMap {
        let gn = self.target.ngens();
        let cols: Vec<Vector> = (0..self.source.ngens()).map(|k| v[k * gn..(k + 1) * gn].to_vec()).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix: cols, degree }
    }

    pub fn encode(&self, f: &ModuleMap) -> Vector {
        f.matrix.iter().flat_map(|c| c.iter().cloned()).collect()
    }

    /// The `i`-th generator as a map.
    pub fn generator(&self, i: usize) -> ModuleMap {
        self.decode_with_degree(&self.inclusion.matrix[i], self.module.degrees()[i])
    }

    pub fn generators(&self) -> Vec<ModuleMap> {
        (0..self.module.ngens()).map(|i| self.generator(i)).collect()
    }

    /// `ν_R(Hom(M, N))`.
    pub fn nu(&self) -> usize {
        self.module.ngens()
    }

    /// A `k`-basis of the homogeneous maps of degree `d`.
    pub fn piece_basis(&self, d: i32) -> Vec<ModuleMap> {
        self.module
            .piece_basis(d)
            .iter()
            .map(|v| self.decode_with_degree(&self.inclusion.apply(v), d))
            .collect()
    }

    /// Coefficients expressing a map in the generators, or `None` when the
    /// map is not a homomorphism of the right shape.
    pub fn express(&self, f: &ModuleMap) -> Option<Vec<Poly>> {
        let v = self.encode(f);
        if self.ambient.is_zero_element(&v) {
            return Some(vec![Poly::zero(); self.module.ngens()]);
        }
        self.lifter.lift(&v, f.degree)
    }

    /// Element of the presentation module representing a map.
    pub fn to_element(&self, f: &ModuleMap) -> Option<Vector> {
        self.express(f)
    }
}

pub fn hom_module(m: &GradedModule, n: &GradedModule) -> Result<HomModule> {
    m.same_ring(n)?;
    let d = hom_from_free_map(m.relations(), m.degrees(), m.relation_degrees(), n)?;
    let ambient = d.source.clone();
    let z = kernel_generators(&d);
    let (module, inclusion) = submodule_presentation(&ambient, &z)?;
    let lifter = Lifter::new(ambient.gb().clone(), inclusion.matrix.clone(), module.degrees().to_vec());
    Ok(HomModule { source: m.clone(), target: n.clone(), ambient, module, inclusion, lifter })
}

/// `Hom(F, N)` for free `F`, exposed for callers that only need the ambient.
pub fn hom_free(fdeg: &[i32], n: &GradedModule) -> Result<GradedModule> {
    hom_from_free(fdeg, n)
}

/// `End_R(M)` with multiplication `b b' = b ∘ b'`.
#[derive(Debug)]
pub struct EndAlgebra {
    pub hom: HomModule,
}

impl EndAlgebra {
    pub fn module(&self) -> &GradedModule {
        &self.hom.source
    }

    /// `h = ν_R(End(M))`.
    pub fn h(&self) -> usize {
        self.hom.nu()
    }

    pub fn identity(&self) -> ModuleMap {
        ModuleMap::identity(&self.hom.source)
    }

    pub fn multiply(&self, a: &ModuleMap, b: &ModuleMap) -> ModuleMap {
        a.compose(b).expect("endomorphisms compose")
    }

    pub fn generators(&self) -> Vec<ModuleMap> {
        self.hom.generators()
    }

    /// `k`-basis of the degree-zero endomorphisms.
    pub fn degree_zero_basis(&self) -> Vec<ModuleMap> {
        self.hom.piece_basis(0)
    }

    /// Generator products re-expressed in the generators: entry `[a][b]`
    /// holds the coefficients of `g_a g_b`.
    pub fn multiplication_table(&self) -> Result<Vec<Vec<Vec<Poly>>>> {
        let gens = self.generators();
        let mut table = Vec::with_capacity(gens.len());
        for a in &gens {
            let mut row = Vec::with_capacity(gens.len());
            for b in &gens {
                let p = self.multiply(a, b);
                row.push(
                    self.hom
                        .express(&p)
                        .ok_or_else(|| Error::Internal("product of endomorphisms left the algebra".into()))?,
                );
            }
            table.push(row);
        }
        Ok(table)
    }
}

/// Builds `End(M)`, checking associativity on generator triples and that the
/// identity lies in the algebra.
pub fn end_algebra(m: &GradedModule) -> Result<Arc<EndAlgebra>> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let hom = hom_module(m, m)?;
    let e = EndAlgebra { hom };
    let id = e.identity();
    if e.hom.express(&id).is_none() {
        return Err(Error::Internal("identity is not expressible in End(M)".into()));
    }
    let gens = e.generators();
    if gens.len() <= 4 {
        for a in &gens {
            for b in &gens {
                let ab = e.multiply(a, b);
                for c in &gens {
                    let l = e.multiply(&ab, c);
                    let r = e.multiply(a, &e.multiply(b, c));
                    if !l.equals(&r) {
                        return Err(Error::Internal("composition is not associative".into()));
                    }
                }
            }
        }
    }
    Ok(Arc::new(e))
}
