//! Finite-dimensional associative algebras over F_p given by structure
//! constants, and right modules over them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::findim::upoly::{self, UPoly};
use crate::linalg::{self, kernel_of_columns, Echelon, Mat};

/// `mult[i][j]` holds the coordinates of `e_i e_j`.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    field: PrimeField,
    dim: usize,
    mult: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
}

impl FinDimAlgebra {
    /// Validates the unit and associativity on all basis triples.
    pub fn new(field: PrimeField, mult: Vec<Vec<Vec<u32>>>, unit: Vec<u32>) -> Result<Self> {
        let a = Self::new_unchecked(field, mult, unit)?;
        a.validate()?;
        Ok(a)
    }

    pub fn new_unchecked(field: PrimeField, mult: Vec<Vec<Vec<u32>>>, unit: Vec<u32>) -> Result<Self> {
        let dim = unit.len();
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidArgument("structure constants have the wrong shape".into()));
        }
        Ok(FinDimAlgebra { field, dim, mult, unit })
    }

    pub fn validate(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidArgument(format!("unit law fails on basis element {i}")));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = &self.mult[i][j];
                for k in 0..self.dim {
                    let l = self.mul(ij, &self.basis_vector(k));
                    let r = self.mul(&self.basis_vector(i), &self.mult[j][k]);
                    if l != r {
                        return Err(Error::InvalidArgument(format!("associativity fails on ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `k` itself.
    pub fn ground(field: PrimeField) -> Self {
        Self::new_unchecked(field, vec![vec![vec![1]]], vec![1]).expect("k is an algebra")
    }

    /// `M_n(k)` with basis the matrix units `E_{ab}` (index `a n + b`).
    pub fn matrix_algebra(field: PrimeField, n: usize) -> Self {
        let dim = n * n;
        let mut mult = vec![vec![vec![0u32; dim]; dim]; dim];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if b == c {
                            mult[a * n + b][c * n + d][a * n + d] = 1;
                        }
                    }
                }
            }
        }
        let mut unit = vec![0u32; dim];
        for a in 0..n {
            unit[a * n + a] = 1;
        }
        Self::new_unchecked(field, mult, unit).expect("matrix algebra is valid")
    }

    /// `k[e] / (e^n)`.
    pub fn truncated_polynomial(field: PrimeField, n: usize) -> Self {
        let mut mult = vec![vec![vec![0u32; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    mult[i][j][i + j] = 1;
                }
            }
        }
        let mut unit = vec![0u32; n];
        unit[0] = 1;
        Self::new_unchecked(field, mult, unit).expect("truncated polynomial ring is valid")
    }

    /// `A × B`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let dim = a.dim + b.dim;
        let mut mult = vec![vec![vec![0u32; dim]; dim]; dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                mult[i][j][..a.dim].copy_from_slice(&a.mult[i][j]);
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                mult[a.dim + i][a.dim + j][a.dim..].copy_from_slice(&b.mult[i][j]);
            }
        }
        let mut unit = a.unit.clone();
        unit.extend_from_slice(&b.unit);
        Self::new_unchecked(a.field, mult, unit).expect("product algebra is valid")
    }

    /// The subalgebra of `M_n(k)` generated by the identity and `gens`,
    /// together with a basis of matrices (the first one the identity).
    pub fn from_matrix_generators(field: PrimeField, n: usize, gens: &[Mat]) -> Result<(Self, Vec<Mat>)> {
        let flat = |m: &Mat| -> Vec<u32> { m.iter().flat_map(|r| r.iter().copied()).collect() };
        let mut ech = Echelon::tracked(field, n * n);
        let mut basis: Vec<Mat> = Vec::new();
        let push = |m: Mat, ech: &mut Echelon, basis: &mut Vec<Mat>| {
            if !ech.contains(&flat(&m)) {
                ech.insert(flat(&m));
                basis.push(m);
            }
        };
        push(linalg::identity(n), &mut ech, &mut basis);
        for g in gens {
            push(g.clone(), &mut ech, &mut basis);
        }
        let mut done = 0;
        while done < basis.len() {
            let b = basis[done].clone();
            for g in gens {
                push(linalg::mat_mul(field, &b, g), &mut ech, &mut basis);
            }
            done += 1;
        }
        // every inserted vector was independent, so `express` indexes the basis
        let dim = basis.len();
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let p = linalg::mat_mul(field, &basis[i], &basis[j]);
                mult[i][j] = ech
                    .express(&flat(&p))
                    .ok_or_else(|| Error::Internal("generated algebra is not closed".into()))?;
            }
        }
        let mut unit = vec![0u32; dim];
        unit[0] = 1;
        Ok((Self::new_unchecked(field, mult, unit)?, basis))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<u32>>] {
        &self.mult
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                linalg::vec_add(f, &mut out, &self.mult[i][j], f.mul(x, y));
            }
        }
        out
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, a: &[u32], c: u32) -> Vec<u32> {
        a.iter().map(|&x| self.field.mul(x, c)).collect()
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut r = self.unit.clone();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Matrix of `x ↦ a x` (columns are images of basis vectors).
    pub fn left_matrix(&self, a: &[u32]) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        linalg::transpose(&cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn is_idempotent(&self, e: &[u32]) -> bool {
        self.mul(e, e) == e
    }

    /// Monic minimal polynomial of `a`.
    pub fn min_poly(&self, a: &[u32]) -> UPoly {
        let f = self.field;
        let mut ech = Echelon::tracked(f, self.dim);
        let mut pw = self.unit.clone();
        for k in 0..=self.dim {
            if let Some(rel) = ech.insert_inner(pw.clone()) {
                // rel: Σ c_i a^i = 0 with c_k = 1
                let mut mu = vec![0u32; k + 1];
                for (i, &c) in rel.iter().enumerate() {
                    mu[i] = c;
                }
                return upoly::monic(f, &mu);
            }
            pw = self.mul(&pw, a);
        }
        unreachable!("powers of an element are dependent beyond the dimension")
    }

    /// `p(a)` for a univariate polynomial `p`.
    pub fn eval_poly(&self, p: &[u32], a: &[u32]) -> Vec<u32> {
        let mut r = self.zero();
        for &c in p.iter().rev() {
            r = self.mul(&r, a);
            linalg::vec_add(self.field, &mut r, &self.unit, c);
        }
        r
    }

    pub fn is_unit(&self, a: &[u32]) -> bool {
        let mu = self.min_poly(a);
        mu.first().copied().unwrap_or(0) != 0
    }

    /// Subalgebra quotient `A / J` for a two-sided ideal `J` given by a
    /// basis; returns the quotient algebra and the projection coordinates
    /// helper (positions of the chosen complement).
    pub fn quotient(&self, ideal: &[Vec<u32>]) -> Result<Quotient> {
        let ech = Echelon::from_vectors(self.field, self.dim, ideal.iter());
        let free = ech.free_positions();
        let q = free.len();
        let proj = |v: &[u32]| ech.quotient_coords(v);
        let lift = |c: usize| self.basis_vector(free[c]);
        let mut mult = vec![vec![Vec::new(); q]; q];
        for i in 0..q {
            for j in 0..q {
                mult[i][j] = proj(&self.mul(&lift(i), &lift(j)));
            }
        }
        let unit = proj(&self.unit);
        let algebra = Self::new_unchecked(self.field, mult, unit)?;
        Ok(Quotient { algebra, ideal: ech, complement: free })
    }
}

/// `A / J` together with the data to move between `A` and the quotient.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: FinDimAlgebra,
    ideal: Echelon,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        self.ideal.quotient_coords(v)
    }

    /// A preimage in `A`.
    pub fn lift(&self, c: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.ideal.dim()];
        for (k, &x) in c.iter().enumerate() {
            v[self.complement[k]] = x;
        }
        v
    }
}

/// A right module: `v·e_i = v × action[i]` on row vectors.
#[derive(Clone, Debug)]
pub struct FinDimModule {
    pub dim: usize,
    pub action: Vec<Mat>,
}

impl FinDimModule {
    /// Checks that the action matrices satisfy the structure constants and
    /// that the unit acts as the identity.
    pub fn new(alg: &FinDimAlgebra, dim: usize, action: Vec<Mat>) -> Result<Self> {
        if action.len() != alg.dim() || action.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(Error::InvalidArgument("action matrices have the wrong shape".into()));
        }
        let m = FinDimModule { dim, action };
        let f = alg.field();
        if m.element_matrix(f, alg.unit()) != linalg::identity(dim) {
            return Err(Error::InvalidArgument("unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let l = linalg::mat_mul(f, &m.action[i], &m.action[j]);
                let r = m.element_matrix(f, &alg.structure_constants()[i][j]);
                if l != r {
                    return Err(Error::InvalidArgument(format!("action incompatible with e_{i} e_{j}")));
                }
            }
        }
        Ok(m)
    }

    /// The algebra acting on itself from the right.
    pub fn regular(alg: &FinDimAlgebra) -> Self {
        let n = alg.dim();
        let action = (0..n)
            .map(|i| (0..n).map(|k| alg.structure_constants()[k][i].clone()).collect())
            .collect();
        FinDimModule { dim: n, action }
    }

    pub fn element_matrix(&self, f: PrimeField, a: &[u32]) -> Mat {
        let mut m = linalg::zeros(self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m = linalg::mat_add(f, &m, &linalg::mat_scale(f, &self.action[i], c));
            }
        }
        m
    }

    pub fn act(&self, f: PrimeField, v: &[u32], a: &[u32]) -> Vec<u32> {
        let m = self.element_matrix(f, a);
        let mut out = vec![0u32; self.dim];
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                linalg::vec_add(f, &mut out, &m[i], x);
            }
        }
        out
    }

    fn act_basis(&self, f: PrimeField, v: &[u32], i: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (r, &x) in v.iter().enumerate() {
            if x != 0 {
                linalg::vec_add(f, &mut out, &self.action[i][r], x);
            }
        }
        out
    }

    /// Span of `v·A` for the given vectors.
    pub fn submodule_span(&self, f: PrimeField, vs: &[Vec<u32>]) -> Echelon {
        let mut ech = Echelon::new(f, self.dim);
        for v in vs {
            for i in 0..self.action.len() {
                ech.insert(self.act_basis(f, v, i));
            }
        }
        ech
    }
}

/// Basis of the Jacobson radical, computed as the radical of the trace form
/// `(x, y) ↦ tr(L_x L_y)`; requires `dim A < p`.
pub fn radical(a: &FinDimAlgebra) -> Result<Vec<Vec<u32>>> {
    let f = a.field();
    let n = a.dim();
    if n as u64 >= f.characteristic() as u64 {
        return Err(Error::CharacteristicGuard { dim: n, p: f.characteristic() });
    }
    let lmats: Vec<Mat> = (0..n).map(|i| a.left_matrix(&a.basis_vector(i))).collect();
    let mut form = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in i..n {
            // tr(L_i L_j) = Σ_{r,s} L_i[r][s] L_j[s][r]
            let mut t = 0u32;
            for r in 0..n {
                for s in 0..n {
                    let x = lmats[i][r][s];
                    if x != 0 {
                        t = f.add(t, f.mul(x, lmats[j][s][r]));
                    }
                }
            }
            form[i][j] = t;
            form[j][i] = t;
        }
    }
    let j = kernel_of_columns(f, n, &form);
    check_radical(a, &j)?;
    Ok(j)
}

/// `J` is a two-sided ideal and `J^dim = 0`.
fn check_radical(a: &FinDimAlgebra, j: &[Vec<u32>]) -> Result<()> {
    let f = a.field();
    let n = a.dim();
    let ech = Echelon::from_vectors(f, n, j.iter());
    for v in j {
        for i in 0..n {
            let e = a.basis_vector(i);
            if !ech.contains(&a.mul(v, &e)) || !ech.contains(&a.mul(&e, v)) {
                return Err(Error::Internal("trace radical is not an ideal".into()));
            }
        }
    }
    let mut power: Vec<Vec<u32>> = j.to_vec();
    for _ in 0..n {
        if power.iter().all(|v| linalg::is_zero(v)) {
            return Ok(());
        }
        let mut next = Echelon::new(f, n);
        for p in &power {
            for v in j {
                next.insert(a.mul(p, v));
            }
        }
        power = next.rows().to_vec();
    }
    if power.iter().all(|v| linalg::is_zero(v)) {
        Ok(())
    } else {
        Err(Error::Internal("trace radical is not nilpotent".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locality {
    /// `A / J(A)` is a field of the given degree over F_p.
    Local { residue_degree: usize },
    /// A nontrivial idempotent of `A`.
    Idempotent(Vec<u32>),
}

/// Decides whether `A` is local; otherwise produces a nontrivial idempotent.
pub fn locality_and_idempotents(a: &FinDimAlgebra, seed: u64) -> Result<Locality> {
    let j = radical(a)?;
    let q = a.quotient(&j)?;
    let s = &q.algebra;
    if s.dim() == 0 {
        return Err(Error::ZeroModule);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e_bar = if s.is_commutative() {
        let fixed = frobenius_fixed(s);
        if fixed.len() == 1 {
            return Ok(Locality::Local { residue_degree: s.dim() });
        }
        // an element of the split part that is not a scalar
        let a0 = fixed
            .iter()
            .find(|v| upoly::deg(&s.min_poly(v)).unwrap_or(0) > 1)
            .cloned()
            .ok_or_else(|| Error::Internal("split subalgebra has only scalars".into()))?;
        idempotent_from_element(s, &a0, &mut rng)
            .ok_or_else(|| Error::Internal("failed to split a separable element".into()))?
    } else {
        let mut found = None;
        // basis elements first, then random combinations
        for i in 0..s.dim() {
            if let Some(e) = idempotent_from_element(s, &s.basis_vector(i), &mut rng) {
                found = Some(e);
                break;
            }
        }
        if found.is_none() {
            use rand::Rng;
            for _ in 0..256 {
                let v: Vec<u32> = (0..s.dim()).map(|_| rng.gen_range(0..a.field().characteristic())).collect();
                if let Some(e) = idempotent_from_element(s, &v, &mut rng) {
                    found = Some(e);
                    break;
                }
            }
        }
        found.ok_or_else(|| Error::SearchExhausted("no idempotent found in a non-commutative semisimple quotient".into()))?
    };
    let e = lift_idempotent(a, &q.lift(&e_bar));
    if e == a.zero() || e == a.unit() || !a.is_idempotent(&e) {
        return Err(Error::Internal("idempotent lifting failed".into()));
    }
    Ok(Locality::Idempotent(e))
}

/// Basis of `{a : a^p = a}` in a commutative algebra.
fn frobenius_fixed(s: &FinDimAlgebra) -> Vec<Vec<u32>> {
    let f = s.field();
    let n = s.dim();
    let p = f.characteristic() as u64;
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let e = s.basis_vector(i);
            s.sub(&s.pow(&e, p), &e)
        })
        .collect();
    kernel_of_columns(f, n, &cols)
}

/// A nontrivial idempotent of `k[a]` when the minimal polynomial of `a`
/// splits into coprime factors `g h`: `e = (u g)(a)` with `u g + v h = 1`.
fn idempotent_from_element(s: &FinDimAlgebra, a: &[u32], rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
    let f = s.field();
    let mu = s.min_poly(a);
    let (g, h) = upoly::split_coprime(f, &mu, rng)?;
    let (_, u, _) = upoly::ext_gcd(f, &g, &h);
    let ug = upoly::mul(f, &u, &g);
    let e = s.eval_poly(&ug, a);
    if e == s.zero() || e == s.unit() || !s.is_idempotent(&e) {
        return None;
    }
    Some(e)
}

/// Lifts an idempotent modulo a nilpotent ideal by `e ↦ 3e^2 - 2e^3`.
pub fn lift_idempotent(a: &FinDimAlgebra, e0: &[u32]) -> Vec<u32> {
    let f = a.field();
    let mut e = e0.to_vec();
    for _ in 0..64 {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            break;
        }
        let e3 = a.mul(&e2, &e);
        e = a.sub(&a.scale(&e2, 3 % f.characteristic()), &a.scale(&e3, 2 % f.characteristic()));
    }
    e
}

/// Minimal generators of a right module over a local algebra.
#[derive(Clone, Debug)]
pub struct ModuleGenerators {
    /// `ν_A(V)`.
    pub nu: usize,
    /// Greedily chosen generators, at most the requested count.
    pub generators: Vec<Vec<u32>>,
    /// `dim_k V / VJ`.
    pub top_dim: usize,
    pub residue_degree: usize,
}

/// `ν_A(V) = dim_D(V / VJ)` with generators chosen greedily among the basis
/// vectors of `V` (and then among `candidates` if given first).
pub fn minimal_generators_over(
    a: &FinDimAlgebra,
    v: &FinDimModule,
    count: usize,
    candidates: &[Vec<u32>],
) -> Result<ModuleGenerators> {
    let f = a.field();
    let residue_degree = match locality_and_idempotents(a, 0)? {
        Locality::Local { residue_degree } => residue_degree,
        Locality::Idempotent(_) => return Err(Error::NotLocal),
    };
    let j = radical(a)?;
    let mut span = Echelon::new(f, v.dim);
    for b in 0..v.dim {
        let mut e = vec![0u32; v.dim];
        e[b] = 1;
        for x in &j {
            span.insert(v.act(f, &e, x));
        }
    }
    let vj = span.rank();
    let top_dim = v.dim - vj;
    let nu = top_dim / residue_degree;
    let mut gens = Vec::new();
    let mut order: Vec<Vec<u32>> = candidates.to_vec();
    for b in 0..v.dim {
        let mut e = vec![0u32; v.dim];
        e[b] = 1;
        order.push(e);
    }
    for c in order {
        if gens.len() >= count.min(nu) {
            break;
        }
        if span.contains(&c) {
            continue;
        }
        for i in 0..a.dim() {
            span.insert(v.act(f, &c, &a.basis_vector(i)));
        }
        gens.push(c);
    }
    Ok(ModuleGenerators { nu, generators: gens, top_dim, residue_degree })
}

/// True iff every element lies in `J(A)`.
pub fn jacobson_containment(a: &FinDimAlgebra, elems: &[Vec<u32>]) -> Result<bool> {
    let j = radical(a)?;
    let ech = Echelon::from_vectors(a.field(), a.dim(), j.iter());
    Ok(elems.iter().all(|e| ech.contains(e)))
}

/// For a tuple `(g_1..g_r)` in `V`, the kernel of
/// `M_r(A) → V^r, c ↦ (Σ_i g_i c_{ij})_j` lies in `M_r(J(A))`.
pub fn tuple_kernel_in_radical(a: &FinDimAlgebra, v: &FinDimModule, gens: &[Vec<u32>]) -> Result<bool> {
    let f = a.field();
    let r = gens.len();
    let n = a.dim();
    let j = radical(a)?;
    let jech = Echelon::from_vectors(f, n, j.iter());
    // unknown (i, j, basis k) ↦ contributes g_i · e_k to output block j
    let mut cols = Vec::with_capacity(r * r * n);
    for i in 0..r {
        for jj in 0..r {
            for k in 0..n {
                let mut out = vec![0u32; r * v.dim];
                let img = v.act(f, &gens[i], &a.basis_vector(k));
                out[jj * v.dim..(jj + 1) * v.dim].copy_from_slice(&img);
                cols.push(out);
            }
        }
    }
    let ker = kernel_of_columns(f, r * v.dim, &cols);
    for kv in ker {
        for block in 0..r * r {
            if !jech.contains(&kv[block * n..(block + 1) * n]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
