//! `Ext^i_R(M, N)` from a minimal resolution, with explicit cocycles, the
//! right `End(M)`-action on `Ext^1` and the annihilator exponent.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{kernel_of_columns, Echelon};
use crate::modlib::invariants::hom_from_free_map;
use crate::modlib::ops::{homology, minimal_presentation, quotient_by, Lifter};
use crate::modlib::{free_resolution, GradedModule, ModuleMap, Resolution};
use crate::ringkernel::poly::{vector_degree, vector_is_zero};
use crate::ringkernel::{Poly, SubmoduleGb, Vector};

/// The complex `Hom(F_{i-1}, N) → Hom(F_i, N) → Hom(F_{i+1}, N)` for a
/// minimal resolution `F_•` of `M`.
#[derive(Debug)]
pub struct ExtData {
    pub i: usize,
    /// The input module.
    pub input: GradedModule,
    /// Minimal presentation of the input, on which the resolution is built.
    pub m: GradedModule,
    pub to_input: ModuleMap,
    pub from_input: ModuleMap,
    pub n: GradedModule,
    pub res: Resolution,
    /// `Hom(F_i, N)`; cocycles live in its free module.
    pub hom_mid: GradedModule,
    pub d_out: ModuleMap,
    pub d_in: Option<ModuleMap>,
    boundaries: Arc<SubmoduleGb>,
    /// Lifts through `d_1` modulo `I·F_0` (used by the action on `Ext^1`).
    f0_lifter: Lifter,
}

impl ExtData {
    pub fn new(m: &GradedModule, n: &GradedModule, i: usize) -> Result<Arc<Self>> {
        m.same_ring(n)?;
        let mp = minimal_presentation(m)?;
        let res = free_resolution(&mp.module, i + 1)?;
        let deg = |k: usize| res.degrees.get(k).cloned().unwrap_or_default();
        let cols = |k: usize| res.differentials.get(k).cloned().unwrap_or_default();
        let d_out = hom_from_free_map(&cols(i), &deg(i), &deg(i + 1), n)?;
        let d_in = if i > 0 { Some(hom_from_free_map(&cols(i - 1), &deg(i - 1), &deg(i), n)?) } else { None };
        let hom_mid = d_out.source.clone();
        let mut b = hom_mid.relations().to_vec();
        if let Some(d) = &d_in {
            b.extend(d.matrix.iter().cloned());
        }
        let boundaries = Arc::new(SubmoduleGb::new(m.ring(), hom_mid.degrees(), &b));
        let f0 = GradedModule::free(m.ring(), deg(0));
        let f0_lifter = Lifter::new(f0.gb().clone(), cols(0), deg(1));
        Ok(Arc::new(ExtData {
            i,
            input: m.clone(),
            m: mp.module,
            to_input: mp.to_original,
            from_input: mp.from_original,
            n: n.clone(),
            res,
            hom_mid,
            d_out,
            d_in,
            boundaries,
            f0_lifter,
        }))
    }

    /// `Ω^i(M)`, the source of cocycles.
    pub fn syzygy(&self) -> GradedModule {
        let deg = self.res.degrees.get(self.i).cloned().unwrap_or_default();
        let cols = self.res.differentials.get(self.i).cloned().unwrap_or_default();
        GradedModule::new(self.m.ring(), deg, cols).expect("syzygy presentation").with_minimal_flag(true)
    }

    /// Same homological degree and identical module presentations; the
    /// resolution is deterministic, so cocycles are then comparable.
    pub fn same_group(&self, o: &ExtData) -> bool {
        std::ptr::eq(self, o)
            || (self.i == o.i && self.input.same_presentation(&o.input) && self.n.same_presentation(&o.n))
    }

    pub fn is_cocycle(&self, v: &[Poly]) -> bool {
        let img = self.d_out.apply(v);
        self.d_out.target.is_zero_element(&img)
    }

    pub fn is_coboundary(&self, v: &[Poly]) -> bool {
        vector_is_zero(v) || self.boundaries.contains(v)
    }

    fn rank_fi(&self) -> usize {
        self.res.degrees.get(self.i).map(|d| d.len()).unwrap_or(0)
    }
}

/// An element of `Ext^i(M, N)` carried by a cocycle `Ω^i(M) → N`, i.e. an
/// element of `Hom(F_i, N)` killed by `Hom(d_{i+1}, N)`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    pub data: Arc<ExtData>,
    pub values: Vector,
    pub degree: i32,
}

impl ExtClass {
    pub fn new(data: &Arc<ExtData>, values: Vector, degree: i32) -> Result<Self> {
        if values.len() != data.hom_mid.ngens() {
            return Err(Error::ModuleMismatch("cocycle has the wrong number of entries".into()));
        }
        if let Some(d) = vector_degree(&values, data.hom_mid.degrees()) {
            if d != degree {
                return Err(Error::DegreeInconsistent(format!("cocycle has degree {d}, declared {degree}")));
            }
        }
        if !data.is_cocycle(&values) {
            return Err(Error::ModuleMismatch("values do not define a cocycle".into()));
        }
        Ok(ExtClass { data: data.clone(), values, degree })
    }

    pub fn zero(data: &Arc<ExtData>, degree: i32) -> Self {
        ExtClass { data: data.clone(), values: data.hom_mid.zero_vector(), degree }
    }

    /// The class of a map `Ω^i(M) → N` given on the generators of `F_i`.
    pub fn from_cocycle(data: &Arc<ExtData>, f: &ModuleMap) -> Result<Self> {
        let v: Vector = f.matrix.iter().flat_map(|c| c.iter().cloned()).collect();
        Self::new(data, v, f.degree)
    }

    /// The cocycle as a map `Ω^i(M) → N`.
    pub fn cocycle(&self) -> ModuleMap {
        let gn = self.data.n.ngens();
        let om = self.data.syzygy();
        let cols = (0..self.data.rank_fi()).map(|k| self.values[k * gn..(k + 1) * gn].to_vec()).collect();
        ModuleMap { source: om, target: self.data.n.clone(), matrix: cols, degree: self.degree }
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_coboundary(&self.values)
    }

    fn check_pair(&self, o: &ExtClass) -> Result<()> {
        if !self.data.same_group(&o.data) {
            return Err(Error::ModuleMismatch("classes belong to different Ext groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &ExtClass) -> Result<ExtClass> {
        self.check_pair(o)?;
        let f = self.data.m.field();
        let v: Vector = self.values.iter().zip(&o.values).map(|(a, b)| a.add(f, b)).collect();
        let degree = if vector_is_zero(&self.values) { o.degree } else { self.degree };
        if !vector_is_zero(&self.values) && !vector_is_zero(&o.values) && self.degree != o.degree {
            return Err(Error::DegreeInconsistent("sum of classes of different degrees".into()));
        }
        Ok(ExtClass { data: self.data.clone(), values: v, degree })
    }

    pub fn sub(&self, o: &ExtClass) -> Result<ExtClass> {
        self.add(&o.scale(self.data.m.field().neg(1)))
    }

    pub fn scale(&self, c: u32) -> ExtClass {
        let f = self.data.m.field();
        ExtClass { values: self.values.iter().map(|p| p.scale(f, c)).collect(), ..self.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> ExtClass {
        let ring = self.data.m.ring();
        ExtClass {
            values: self.values.iter().map(|q| ring.mul(q, p)).collect(),
            degree: self.degree + p.degree().unwrap_or(0),
            ..self.clone()
        }
    }
}

/// True iff the classes differ by a coboundary.
pub fn ext_class_equal(a: &ExtClass, b: &ExtClass) -> Result<bool> {
    Ok(a.sub(b)?.is_zero())
}

/// Lifts `f : M' → M` (maps of minimal presentations) to `f_1 : F'_1 → F_1`
/// with `d_1 f_1 = f_0 d'_1`; columns in `F_1`, one per generator of `F'_1`.
pub fn lift_to_syzygy(src: &ExtData, tgt: &ExtData, f_min: &ModuleMap) -> Result<Vec<Vector>> {
    let ring = tgt.m.ring();
    let f1deg = tgt.res.degrees.get(1).cloned().unwrap_or_default();
    let src_f1 = src.res.degrees.get(1).cloned().unwrap_or_default();
    let mut out = Vec::with_capacity(src.m.relations().len());
    for (j, a) in src.m.relations().iter().enumerate() {
        let target = f_min.apply(a);
        let c = if vector_is_zero(&target) {
            vec![Poly::zero(); f1deg.len()]
        } else {
            tgt.f0_lifter
                .lift(&target, src_f1[j] + f_min.degree)
                .ok_or_else(|| Error::Internal("map does not preserve the relations".into()))?
        };
        out.push(c.iter().map(|p| ring.reduce(p)).collect());
    }
    Ok(out)
}

/// Pullback of `α ∈ Ext^1(M, N)` along `f : M' → M`, landing in the Ext
/// group described by `target` (which must be `Ext^1(M', N)`).
pub fn ext_pullback(alpha: &ExtClass, f: &ModuleMap, target: &Arc<ExtData>) -> Result<ExtClass> {
    let data = &alpha.data;
    if data.i != 1 || target.i != 1 {
        return Err(Error::InvalidArgument("pullback is implemented on Ext^1".into()));
    }
    if !f.target.same_presentation(&data.input) || !f.source.same_presentation(&target.input) {
        return Err(Error::ModuleMismatch("map does not connect the Ext groups' modules".into()));
    }
    if !data.n.same_presentation(&target.n) {
        return Err(Error::ModuleMismatch("Ext groups have different coefficient modules".into()));
    }
    let f_min = data.from_input.compose(&f.compose(&target.to_input)?)?;
    let f1 = lift_to_syzygy(target, data, &f_min)?;
    let gn = data.n.ngens();
    let ring = data.m.ring();
    let fld = ring.field();
    let mut v = target.hom_mid.zero_vector();
    for (j, col) in f1.iter().enumerate() {
        for (l, c) in col.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for q in 0..gn {
                let t = &alpha.values[l * gn + q];
                if !t.is_zero() {
                    v[j * gn + q] = v[j * gn + q].add(fld, &ring.mul(c, t));
                }
            }
        }
    }
    Ok(ExtClass { data: target.clone(), values: v, degree: alpha.degree + f.degree })
}

/// Right action of `End(M)` on `Ext^1(M, N)`: `α·b = α ∘ b_1`. The
/// endomorphism is given on the input presentation.
pub fn ext_action(alpha: &ExtClass, b: &ModuleMap) -> Result<ExtClass> {
    ext_pullback(alpha, b, &alpha.data.clone())
}

/// `Ext^i(M, N)` as a graded module, with the cocycle data and, for
/// finite-length `N`, a degree-wise `k`-basis.
#[derive(Debug)]
pub struct ExtModule {
    pub data: Arc<ExtData>,
    pub module: GradedModule,
    /// Cocycle generators, aligned with the generators of `module`.
    pub cocycles: Vec<Vector>,
    pub space: Option<ExtSpace>,
}

impl ExtModule {
    pub fn generator_class(&self, j: usize) -> ExtClass {
        let d = self.module.degrees()[j];
        ExtClass { data: self.data.clone(), values: self.cocycles[j].clone(), degree: d }
    }

    /// `dim_k` when of finite length.
    pub fn dim(&self) -> Option<usize> {
        crate::modlib::length(&self.module)
    }
}

pub fn ext_module(m: &GradedModule, n: &GradedModule, i: usize) -> Result<ExtModule> {
    let data = ExtData::new(m, n, i)?;
    let d_in = match &data.d_in {
        Some(d) => d.clone(),
        None => {
            let empty = GradedModule::free(m.ring(), Vec::new());
            ModuleMap::new_unchecked(&empty, &data.hom_mid, Vec::new(), 0)?
        }
    };
    let (module, cocycles) = homology(&d_in, &data.d_out)?;
    let space = if n.gb().is_finite_length() { Some(ExtSpace::new(&data)?) } else { None };
    Ok(ExtModule { data, module, cocycles, space })
}

/// Cocycles modulo coboundaries in one internal degree.
#[derive(Clone, Debug)]
pub struct ExtPiece {
    pub degree: i32,
    /// Cocycle representatives (coordinates in `Hom(F_i, N)_d`) of a basis.
    pub basis: Vec<Vec<u32>>,
    n_boundary: usize,
    echelon: Echelon,
}

/// `Ext^i(M, N)` for finite-length `N`, as a graded vector space.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub data: Arc<ExtData>,
    pub pieces: BTreeMap<i32, ExtPiece>,
    offsets: BTreeMap<i32, usize>,
    dim: usize,
}

impl ExtSpace {
    pub fn new(data: &Arc<ExtData>) -> Result<Self> {
        let hm = &data.hom_mid;
        let f = data.m.field();
        let mut pieces = BTreeMap::new();
        if hm.ngens() > 0 {
            let (lo, hi) = hm
                .support_range()
                .ok_or_else(|| Error::NotFiniteLength("Hom(F_i, N) for the given N".into()))?;
            let tgt = &data.d_out.target;
            for d in lo..=hi {
                let n = hm.piece_dim(d);
                if n == 0 {
                    continue;
                }
                let tdim = tgt.piece_dim(d);
                let images: Vec<Vec<u32>> = hm
                    .piece_basis(d)
                    .iter()
                    .map(|v| {
                        let w = data.d_out.apply(v);
                        if tdim == 0 || vector_is_zero(&w) {
                            vec![0; tdim]
                        } else {
                            tgt.gb().coords(&w, d)
                        }
                    })
                    .collect();
                let z = kernel_of_columns(f, tdim, &images);
                let mut ech = Echelon::tracked(f, n);
                let mut nb = 0;
                if let Some(din) = &data.d_in {
                    for v in din.source.piece_basis(d) {
                        let w = din.apply(&v);
                        if !vector_is_zero(&w) {
                            ech.insert(hm.gb().coords(&w, d));
                            nb += 1;
                        }
                    }
                }
                let mut basis = Vec::new();
                for zc in z {
                    if !ech.contains(&zc) {
                        ech.insert(zc.clone());
                        basis.push(zc);
                    }
                }
                if !basis.is_empty() {
                    pieces.insert(d, ExtPiece { degree: d, basis, n_boundary: nb, echelon: ech });
                }
            }
        }
        let mut offsets = BTreeMap::new();
        let mut dim = 0;
        for (d, p) in &pieces {
            offsets.insert(*d, dim);
            dim += p.basis.len();
        }
        Ok(ExtSpace { data: data.clone(), pieces, offsets, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(degree, dim)` for every nonzero piece.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        self.pieces.iter().map(|(d, p)| (*d, p.basis.len())).collect()
    }

    pub fn piece_dim(&self, d: i32) -> usize {
        self.pieces.get(&d).map(|p| p.basis.len()).unwrap_or(0)
    }

    pub fn class(&self, d: i32, coords: &[u32]) -> ExtClass {
        let hm = &self.data.hom_mid;
        let f = self.data.m.field();
        let Some(p) = self.pieces.get(&d) else {
            return ExtClass::zero(&self.data, d);
        };
        let mut v = vec![0u32; hm.piece_dim(d)];
        for (b, &c) in p.basis.iter().zip(coords) {
            crate::linalg::vec_add(f, &mut v, b, c);
        }
        ExtClass { data: self.data.clone(), values: hm.gb().from_coords(d, &v), degree: d }
    }

    /// Basis classes in global order (by degree, then position).
    pub fn basis(&self) -> Vec<ExtClass> {
        let mut out = Vec::with_capacity(self.dim);
        for (d, p) in &self.pieces {
            for k in 0..p.basis.len() {
                let mut c = vec![0u32; p.basis.len()];
                c[k] = 1;
                out.push(self.class(*d, &c));
            }
        }
        out
    }

    /// Coordinates of a homogeneous class in the basis of its degree.
    pub fn coords(&self, a: &ExtClass) -> Vec<u32> {
        let Some(p) = self.pieces.get(&a.degree) else {
            return Vec::new();
        };
        if vector_is_zero(&a.values) {
            return vec![0; p.basis.len()];
        }
        let hm = &self.data.hom_mid;
        let x = p
            .echelon
            .express(&hm.gb().coords(&a.values, a.degree))
            .expect("cocycle lies in cocycle space");
        x[p.n_boundary..p.n_boundary + p.basis.len()].to_vec()
    }

    /// Coordinates in the global basis (length `dim`).
    pub fn global_coords(&self, a: &ExtClass) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        if let Some(&o) = self.offsets.get(&a.degree) {
            for (k, c) in self.coords(a).into_iter().enumerate() {
                out[o + k] = c;
            }
        }
        out
    }

    pub fn offset(&self, d: i32) -> Option<usize> {
        self.offsets.get(&d).copied()
    }

    /// Matrix of `v ↦ v·b` on row vectors (global coordinates).
    pub fn action_matrix(&self, b: &ModuleMap) -> Result<Vec<Vec<u32>>> {
        let mut rows = Vec::with_capacity(self.dim);
        for a in self.basis() {
            let ab = ext_action(&a, b)?;
            rows.push(self.global_coords(&ab));
        }
        Ok(rows)
    }

    /// Matrix of multiplication by a homogeneous ring element.
    pub fn ring_action_matrix(&self, p: &Poly) -> Vec<Vec<u32>> {
        self.basis().iter().map(|a| self.global_coords(&a.mul_poly(p))).collect()
    }

    /// `ν_R = dim Ext - dim m·Ext`.
    pub fn nu_r(&self) -> usize {
        let ring = self.data.m.ring();
        let f = ring.field();
        let mut ech = Echelon::new(f, self.dim);
        for v in 0..ring.nvars() {
            for row in self.ring_action_matrix(&ring.var(v)) {
                ech.insert(row);
            }
        }
        self.dim - ech.rank()
    }

    /// True when `m^s` kills every class.
    pub fn killed_by_power(&self, s: u32) -> bool {
        let ring = self.data.m.ring();
        let mons = ring.monomials_of_order(s);
        self.basis().iter().all(|a| {
            mons.iter()
                .all(|m| a.mul_poly(&Poly::monomial(m.clone(), 1)).is_zero())
        })
    }
}

/// Minimal `s` with `m^s · Ext^1(M, Ω^1(M)) = 0`.
pub fn annihilator_exponent(m: &GradedModule) -> Result<u32> {
    let om = crate::modlib::syzygy_module(m, 1)?;
    let e = ext_module(m, &om, 1)?;
    let em = &e.module;
    if !em.gb().is_finite_length() {
        return Err(Error::NotFiniteLength(
            "Ext^1(M, Ω^1(M)); M is not free on the punctured spectrum".into(),
        ));
    }
    annihilator_exponent_of(em)
}

/// Minimal `s` with `m^s E = 0` for a finite-length graded module.
pub fn annihilator_exponent_of(e: &GradedModule) -> Result<u32> {
    let ring = e.ring();
    let total = crate::modlib::length(e).ok_or_else(|| Error::NotFiniteLength("module".into()))?;
    if total == 0 {
        return Ok(0);
    }
    let mut s = 1u32;
    loop {
        let mons = ring.monomials_of_order(s);
        let mut elems = Vec::new();
        for g in 0..e.ngens() {
            for mm in &mons {
                let mut v = e.zero_vector();
                v[g] = Poly::monomial(mm.clone(), 1);
                elems.push(v);
            }
        }
        let (q, _) = quotient_by(e, &elems)?;
        if crate::modlib::length(&q) == Some(total) {
            return Ok(s);
        }
        s += 1;
        if s as usize > total + 1 {
            return Err(Error::Internal("annihilator exponent search overran the length".into()));
        }
    }
}
