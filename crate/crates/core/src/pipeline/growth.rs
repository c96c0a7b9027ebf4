//! The length table `n ↦ λ(Ext^1(M, R/m^n))`, its eventual polynomial, and
//! the explicit bound on `n` that forces many generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homext::{annihilator_exponent, ExtData, ExtSpace};
use crate::modlib::{nu, submodule_presentation, truncation_module, GradedModule};
use crate::ringkernel::{IdealHandle, Vector};

/// One row of the growth table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: u32,
    pub length: usize,
    pub nu_r: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhpFit {
    pub table: Vec<GrowthRow>,
    /// Degree of the fitted polynomial.
    pub degree: usize,
    /// First `n` from which the polynomial reproduces the table.
    pub stable_from: u32,
    /// Newton forward differences at `stable_from`.
    pub differences: Vec<i64>,
    /// Linear part `a n + b` (valid when `degree ≤ 1`).
    pub slope: i64,
    pub intercept: i64,
    pub max_nu: usize,
    /// Annihilator exponent `s`.
    pub s: u32,
    /// `max_{0≤i<s} ν_R(m^i)`.
    pub t: usize,
    pub dim_ring: usize,
    pub degree_matches_dim: bool,
}

impl GhpFit {
    /// Value of the fitted polynomial at `n` (exact).
    pub fn eval(&self, n: u32) -> i64 {
        let k = n as i64 - self.stable_from as i64;
        let mut binom = 1i64;
        let mut acc = 0i64;
        for (j, &d) in self.differences.iter().enumerate() {
            acc += d * binom;
            binom = binom * (k - j as i64) / (j as i64 + 1);
        }
        acc
    }

    /// First `n` in the table with `ν_R > h`.
    pub fn first_crossing(&self, h: usize) -> Option<u32> {
        self.table.iter().find(|r| r.nu_r > h).map(|r| r.n)
    }
}

fn forward_differences(vals: &[i64]) -> Vec<Vec<i64>> {
    let mut rows = vec![vals.to_vec()];
    while rows.last().is_some_and(|r| r.len() > 1) {
        let r = rows.last().unwrap();
        rows.push(r.windows(2).map(|w| w[1] - w[0]).collect());
    }
    rows
}

/// Least degree, then earliest start, such that the tail is matched exactly
/// with at least two surplus points.
fn fit_tail(vals: &[i64]) -> (usize, usize, Vec<i64>) {
    let len = vals.len();
    for d in 0..len {
        for start in 0..len {
            let tail = &vals[start..];
            if tail.len() < d + 3 {
                break;
            }
            let rows = forward_differences(tail);
            if rows[d + 1].iter().all(|&x| x == 0) {
                return (d, start, rows.iter().take(d + 1).map(|r| r[0]).collect());
            }
        }
    }
    // too few points: interpolate everything
    let rows = forward_differences(vals);
    (len.saturating_sub(1), 0, rows.iter().map(|r| r[0]).collect())
}

/// `max_{0≤i<s} ν_R(m^i)`.
pub fn power_generator_bound(ring: &std::sync::Arc<crate::ringkernel::GradedRing>, s: u32) -> Result<usize> {
    let free = GradedModule::free(ring, vec![0]);
    let mut best = 1;
    for i in 1..s {
        let gens: Vec<Vector> = IdealHandle::maximal_power(ring, i).generators().iter().map(|g| vec![g.clone()]).collect();
        let (mi, _) = submodule_presentation(&free, &gens)?;
        best = best.max(nu(&mi));
    }
    Ok(best)
}

pub fn ghp_fit(m: &GradedModule, n_max: u32) -> Result<GhpFit> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let ring = m.ring();
    let s = annihilator_exponent(m)?;
    let mut table = Vec::new();
    for n in 1..=n_max {
        let t = truncation_module(ring, n)?;
        let data = ExtData::new(m, &t, 1)?;
        let sp = ExtSpace::new(&data)?;
        table.push(GrowthRow { n, length: sp.dim(), nu_r: sp.nu_r() });
    }
    let vals: Vec<i64> = table.iter().map(|r| r.length as i64).collect();
    let (degree, start, differences) = fit_tail(&vals);
    let stable_from = start as u32 + 1;
    let (slope, intercept) = match degree {
        0 => (0, differences[0]),
        _ => {
            let a = differences.get(1).copied().unwrap_or(0);
            (a, differences[0] - a * stable_from as i64)
        }
    };
    let dim_ring = ring.krull_dimension();
    Ok(GhpFit {
        max_nu: table.iter().map(|r| r.nu_r).max().unwrap_or(0),
        table,
        degree,
        stable_from,
        differences,
        slope,
        intercept,
        s,
        t: power_generator_bound(ring, s)?,
        dim_ring,
        degree_matches_dim: dim_ring >= 1 && degree == dim_ring - 1,
    })
}

/// Smallest `n ≥ 1` with `(a n + b) / s ≥ t h + 1`.
pub fn janet_bound(s: i64, a: i64, b: i64, t: i64, h: i64) -> Result<u64> {
    if s <= 0 || a <= 0 {
        return Err(Error::InvalidArgument("janet_bound needs s > 0 and a > 0".into()));
    }
    let need = s * (t * h + 1) - b;
    let n = if need <= a { 1 } else { (need + a - 1) / a };
    Ok(n.max(1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;

    #[test]
    fn bound_examples() {
        assert_eq!(janet_bound(1, 1, 0, 1, 3).unwrap(), 4);
        assert_eq!(janet_bound(1, 1, 0, 1, 0).unwrap(), 1);
        assert_eq!(janet_bound(2, 3, -1, 2, 2).unwrap(), 4);
        assert!(janet_bound(0, 1, 0, 1, 1).is_err());
        assert!(janet_bound(1, 0, 0, 1, 1).is_err());
    }

    #[test]
    fn tail_fitting() {
        assert_eq!(fit_tail(&[1, 1, 1, 1]), (0, 0, vec![1]));
        assert_eq!(fit_tail(&[0, 2, 4, 7, 10, 13, 16]).0, 1);
        assert_eq!(fit_tail(&[0, 2, 4, 7, 10, 13, 16]).1, 2);
        let (d, _, _) = fit_tail(&[1, 3, 6, 10, 15, 21]);
        assert_eq!(d, 2);
    }

    #[test]
    fn eval_reproduces_tail() {
        let vals = [2, 5, 9, 14, 20, 27];
        let (degree, start, differences) = fit_tail(&vals);
        let g = GhpFit {
            table: vec![],
            degree,
            stable_from: start as u32 + 1,
            differences,
            slope: 0,
            intercept: 0,
            max_nu: 0,
            s: 1,
            t: 1,
            dim_ring: 2,
            degree_matches_dim: false,
        };
        for (i, &v) in vals.iter().enumerate().skip(start) {
            assert_eq!(g.eval(i as u32 + 1), v);
        }
    }

    #[test]
    fn maximal_ideal_of_the_plane_is_flat() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::plane(f);
        let gens: Vec<Vector> = IdealHandle::maximal(&r).generators().iter().map(|g| vec![g.clone()]).collect();
        let (mm, _) = submodule_presentation(&GradedModule::free(&r, vec![0]), &gens).unwrap();
        let g = ghp_fit(&mm, 5).unwrap();
        assert!(g.table.iter().all(|row| row.length == 1));
        assert_eq!(g.degree, 0);
        assert!(!g.degree_matches_dim);
        let free = ghp_fit(&GradedModule::free(&r, vec![0]), 3).unwrap();
        assert!(free.table.iter().all(|row| row.length == 0));
    }

    #[test]
    fn a1_growth_is_linear() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::a1_cone(f);
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let g = ghp_fit(&m, 6).unwrap();
        assert!(g.table.windows(2).all(|w| w[1].length > w[0].length));
        assert_eq!(g.degree, 1);
        assert!(g.degree_matches_dim);
        assert!(g.slope > 0);
    }
}
