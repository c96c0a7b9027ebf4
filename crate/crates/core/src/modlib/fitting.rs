//! Fitting ideals and rank certificates on the punctured spectrum.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modlib::module::GradedModule;
use crate::ringkernel::{GradedRing, IdealHandle, Poly, Vector};

/// Bound on the work spent enumerating minors. The default admits every
/// matrix with at most 12 columns and minors of size at most 4; in general a
/// computation is allowed when the number of minors does not exceed
/// `C(max_columns, max_minor)^2`.
#[derive(Clone, Copy, Debug)]
pub struct MinorGuard {
    pub max_columns: usize,
    pub max_minor: usize,
}

impl Default for MinorGuard {
    fn default() -> Self {
        MinorGuard { max_columns: 12, max_minor: 4 }
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

impl MinorGuard {
    fn admits(&self, rows: usize, cols: usize, k: usize) -> bool {
        if cols <= self.max_columns && k <= self.max_minor {
            return true;
        }
        let budget = binom(self.max_columns, self.max_minor).pow(2);
        binom(rows, k) * binom(cols, k) <= budget
    }
}

struct MinorTable<'a> {
    ring: &'a GradedRing,
    mat: &'a [Vector],
    memo: HashMap<(u64, u64), Poly>,
}

impl MinorTable<'_> {
    /// Determinant of the submatrix on the given row and column sets,
    /// by Laplace expansion along the first row.
    fn minor(&mut self, rows: u64, cols: u64) -> Poly {
        if rows == 0 {
            return self.ring.one();
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let f = self.ring.field();
        let r0 = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Poly::zero();
        let mut sign_pos = true;
        let mut cs = cols;
        while cs != 0 {
            let c = cs.trailing_zeros() as usize;
            cs &= cs - 1;
            let e = &self.mat[c][r0];
            if !e.is_zero() {
                let sub = self.minor(rest, cols & !(1u64 << c));
                if !sub.is_zero() {
                    let t = self.ring.mul(e, &sub);
                    acc = if sign_pos { acc.add(f, &t) } else { acc.sub(f, &t) };
                }
            }
            sign_pos = !sign_pos;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, cur | (1u64 << i), out);
        }
    }
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// The `k×k` minors of a matrix (columns in a free module of rank `rows`).
/// Stops early once a unit minor appears.
pub fn minors(ring: &GradedRing, rows: usize, cols: &[Vector], k: usize, guard: MinorGuard) -> Result<Vec<Poly>> {
    if rows > 64 || cols.len() > 64 {
        return Err(Error::SizeGuard("matrices beyond 64 rows or columns".into()));
    }
    if k == 0 {
        return Ok(vec![ring.one()]);
    }
    if k > rows || k > cols.len() {
        return Ok(Vec::new());
    }
    if !guard.admits(rows, cols.len(), k) {
        return Err(Error::SizeGuard(format!(
            "{k}x{k} minors of a {rows}x{} matrix exceed the configured budget",
            cols.len()
        )));
    }
    let mut table = MinorTable { ring, mat: cols, memo: HashMap::new() };
    let mut out: Vec<Poly> = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols.len(), k) {
            let m = table.minor(rs, cs);
            if m.is_zero() {
                continue;
            }
            if m.degree() == Some(0) {
                return Ok(vec![ring.one()]);
            }
            let m = m.scale(ring.field(), ring.field().inv(m.lead().expect("nonzero").1));
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// `Fitt_j(M)`: the ideal of `(g - j)`-minors of a presentation with `g`
/// generators. Negative `j` gives the zero ideal.
pub fn fitting_ideal(m: &GradedModule, j: i64, guard: MinorGuard) -> Result<IdealHandle> {
    let ring = m.ring();
    if j < 0 {
        return Ok(IdealHandle::zero(ring));
    }
    let g = m.ngens() as i64;
    if j >= g {
        return Ok(IdealHandle::unit(ring));
    }
    let k = (g - j) as usize;
    IdealHandle::new(ring, minors(ring, m.ngens(), m.relations(), k, guard)?)
}

/// `H^0_m(R) = (0 : m^∞)` as an ideal of `R`.
pub fn ring_torsion(ring: &std::sync::Arc<GradedRing>) -> Result<IdealHandle> {
    IdealHandle::zero(ring).saturation(&IdealHandle::maximal(ring))
}

/// Local verdict at one prime supplied as a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub prime: Vec<String>,
    /// `Fitt_t ⊄ p`.
    pub top_not_contained: bool,
    /// `Fitt_{t-1} R_p = 0`, tested as `Fitt_{t-1} ⊆ (0 : (R \ p)^∞)` via
    /// saturation by an element of `Fitt_t` outside `p`.
    pub lower_vanishes: bool,
}

/// Certificate that `M_p` is free of rank `t` for every prime `p ≠ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    /// Generators of `Fitt_{t-1}(M)`.
    pub fitt_lower: Vec<String>,
    /// Generators of `Fitt_t(M)`.
    pub fitt_top: Vec<String>,
    /// `Fitt_{t-1}(M) ⊆ H^0_m(R)`.
    pub lower_is_torsion: bool,
    /// `Fitt_t(M)` is `m`-primary or the unit ideal.
    pub top_is_m_primary_or_unit: bool,
    pub witnesses: Vec<WitnessCheck>,
    pub valid: bool,
}

/// Checks that `M` is free of constant rank `t` on the punctured spectrum:
/// `Fitt_t` has no prime other than `m` in its support and `Fitt_{t-1}`
/// vanishes away from `m`.
pub fn rank_punctured_certificate(
    m: &GradedModule,
    t: usize,
    witness_primes: &[IdealHandle],
    guard: MinorGuard,
) -> Result<RankCertificate> {
    let ring = m.ring();
    let lower = fitting_ideal(m, t as i64 - 1, guard)?;
    let top = fitting_ideal(m, t as i64, guard)?;
    certificate_from_ideals(ring, t, &lower, &top, witness_primes)
}

/// Assembles a certificate from already computed ideals `Fitt_{t-1}` and
/// `Fitt_t` (or ideals sandwiching them in the right direction: an upper
/// bound for the lower one and a lower bound for the upper one).
pub fn certificate_from_ideals(
    ring: &std::sync::Arc<GradedRing>,
    t: usize,
    lower: &IdealHandle,
    top: &IdealHandle,
    witness_primes: &[IdealHandle],
) -> Result<RankCertificate> {
    let tors = ring_torsion(ring)?;
    let lower_is_torsion = tors.contains_ideal(lower);
    let top_ok = top.is_unit() || top.is_m_primary();
    let mut witnesses = Vec::new();
    for p in witness_primes {
        let outside = top.generators().iter().find(|g| !p.contains(g)).cloned();
        let lower_vanishes = match &outside {
            Some(s) => {
                let sat = IdealHandle::zero(ring).saturation(&IdealHandle::new(ring, vec![s.clone()])?)?;
                sat.contains_ideal(lower)
            }
            None => false,
        };
        witnesses.push(WitnessCheck { prime: p.to_strings(), top_not_contained: outside.is_some(), lower_vanishes });
    }
    let valid = lower_is_torsion && top_ok && witnesses.iter().all(|w| w.top_not_contained && w.lower_vanishes);
    Ok(RankCertificate {
        rank: t,
        fitt_lower: lower.to_strings(),
        fitt_top: top.to_strings(),
        lower_is_torsion,
        top_is_m_primary_or_unit: top_ok,
        witnesses,
        valid,
    })
}

/// The constant rank on the punctured spectrum, if there is one.
pub fn punctured_rank(m: &GradedModule, guard: MinorGuard) -> Result<Option<usize>> {
    for t in 0..=m.ngens() {
        if rank_punctured_certificate(m, t, &[], guard)?.valid {
            return Ok(Some(t));
        }
    }
    Ok(None)
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
    fn fitting_ideals_of_a1_module() {
        let r = fixtures::a1_cone(f());
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let g = MinorGuard::default();
        // determinant xy - z^2 vanishes in R
        assert!(fitting_ideal(&m, 0, g).unwrap().is_zero());
        let f1 = fitting_ideal(&m, 1, g).unwrap();
        assert!(f1.same_ideal(&IdealHandle::maximal(&r)));
        assert!(fitting_ideal(&m, 2, g).unwrap().is_unit());
        let c = rank_punctured_certificate(&m, 1, &[], g).unwrap();
        assert!(c.valid);
        assert_eq!(punctured_rank(&m, g).unwrap(), Some(1));
    }

    #[test]
    fn residue_field_has_rank_zero() {
        let r = fixtures::plane(f());
        let k = GradedModule::residue_field(&r);
        assert_eq!(punctured_rank(&k, MinorGuard::default()).unwrap(), Some(0));
    }

    #[test]
    fn non_constant_rank_is_detected() {
        let r = fixtures::plane(f());
        let m = GradedModule::cyclic(&r, &[r.var(0)]).unwrap();
        assert_eq!(punctured_rank(&m, MinorGuard::default()).unwrap(), None);
        // the witness prime (x) sees Fitt_1 = R but Fitt_0 = (x) ⊆ (x)
        let px = IdealHandle::new(&r, vec![r.var(0)]).unwrap();
        let c = rank_punctured_certificate(&m, 0, &[px], MinorGuard::default()).unwrap();
        assert!(!c.valid);
    }

    #[test]
    fn guard_rejects_large_minor_sets() {
        let r = fixtures::plane(f());
        let cols: Vec<Vector> = (0..40).map(|_| vec![r.var(0); 40]).collect();
        assert!(matches!(minors(&r, 40, &cols, 20, MinorGuard::default()), Err(Error::SizeGuard(_))));
    }
}
