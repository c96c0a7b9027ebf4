//! Assembling `0 → R/m^n → X → ⊕ M(-e_i) → 0` from chosen generators and
//! certifying the result.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::homext::{ExtClass, ExtData};
use crate::modlib::fitting::certificate_from_ideals;
use crate::modlib::{depth, direct_sum, fitting_ideal, punctured_rank, DirectSum, GradedModule, MinorGuard};
use crate::oracle::{oracle_ext_dim, oracle_random_idempotent, oracle_split_search, IdempotentVerdict, SplitVerdict};
use crate::yoneda::{is_split, phi_inverse, pushout_extension, ShortExactSequence};

use super::certificate::*;
use super::decompose::end0_is_local;
use super::select::{select_generators, Selection};

#[derive(Clone, Copy, Debug)]
pub struct ConstructOptions {
    pub n_max: u32,
    pub seed: u64,
    pub idempotent_trials: usize,
    pub record_timings: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { n_max: 12, seed: 0, idempotent_trials: 200, record_timings: false }
    }
}

/// Everything computed by a run, alongside its certificate.
#[derive(Clone, Debug)]
pub struct Construction {
    pub selection: Selection,
    pub sum: DirectSum,
    pub alpha: ExtClass,
    pub sequence: ShortExactSequence,
    pub idempotent: IdempotentVerdict,
    pub split: SplitVerdict,
    pub certificate: ConstructionCertificate,
}

/// The summands `M(-e_i)` making every generator a degree-zero class, and the
/// generators re-read over them.
pub fn shifted_generators(m: &GradedModule, sel: &Selection) -> Result<(Vec<GradedModule>, Vec<ExtClass>)> {
    shifted_classes(m, &sel.data, &sel.generators)
}

/// As [`shifted_generators`], for classes over `data` (which must be the
/// `Ext^1(M, T)` data of `m`).
pub fn shifted_classes(m: &GradedModule, data: &ExtData, gens: &[ExtClass]) -> Result<(Vec<GradedModule>, Vec<ExtClass>)> {
    let t = &data.n;
    let mut parts = Vec::new();
    let mut classes = Vec::new();
    for g in gens {
        let part = m.shifted(g.degree);
        let d = ExtData::new(&part, t, 1)?;
        if d.res.differentials != data.res.differentials {
            return Err(Error::Internal("shifted resolution differs from the original".into()));
        }
        classes.push(ExtClass::new(&d, g.values.clone(), 0)?);
        parts.push(part);
    }
    Ok((parts, classes))
}

/// The middle sum `⊕ M(-e_i)` and the class `φ^{-1}(g_1..g_r)` over it.
pub fn sum_and_alpha(m: &GradedModule, data: &ExtData, gens: &[ExtClass]) -> Result<(DirectSum, ExtClass)> {
    let (parts, classes) = shifted_classes(m, data, gens)?;
    let sum = direct_sum(&parts)?;
    let sum_data = ExtData::new(&sum.module, &data.n, 1)?;
    let alpha = phi_inverse(&classes, &sum, &sum_data)?;
    Ok((sum, alpha))
}

/// Punctured-rank certificate for `X` from `0 → T → X → P → 0` with `T` of
/// finite length: `Fitt_{k-1}(X) ⊆ Fitt_{k-1}(P)` and
/// `Fitt_0(T) Fitt_k(P) ⊆ Fitt_k(X)`.
pub fn sandwich_rank_certificate(
    p: &GradedModule,
    t: &GradedModule,
    k: usize,
    guard: MinorGuard,
) -> Result<crate::modlib::RankCertificate> {
    let ring = p.ring();
    let lower = fitting_ideal(p, k as i64 - 1, guard)?;
    let top_p = fitting_ideal(p, k as i64, guard)?;
    let fitt_t = fitting_ideal(t, 0, guard)?;
    let top = fitt_t.product(&top_p)?;
    certificate_from_ideals(ring, k, &lower, &top, &[])
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, key: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    timings.insert(key.to_string(), start.elapsed().as_secs_f64());
    Ok(out)
}

/// Builds `X` and the certificate from a selection.
pub fn assemble(m: &GradedModule, sel: Selection, opts: &ConstructOptions) -> Result<Construction> {
    let ring = m.ring().clone();
    let mut timings = BTreeMap::new();
    let (sum, alpha) = timed(&mut timings, "alpha", || sum_and_alpha(m, &sel.data, &sel.generators))?;
    let sequence = timed(&mut timings, "pushout", || pushout_extension(&alpha))?;
    let x = &sequence.x;
    let exact = sequence.verified;
    let nonsplit = !timed(&mut timings, "split", || is_split(&sequence))?;
    let end0_local = timed(&mut timings, "end0", || end0_is_local(x, opts.seed))?;
    let guard = MinorGuard::default();
    let rank_m = punctured_rank(m, guard)?.unwrap_or(0);
    let k = sel.r * rank_m;
    let rank_cert = timed(&mut timings, "rank", || sandwich_rank_certificate(&sum.module, &sel.data.n, k, guard))?;
    let (depth_m, depth_sum, depth_x) = timed(&mut timings, "depth", || Ok((depth(m)?, depth(&sum.module)?, depth(x)?)))?;
    let depth_ok = depth_x == Some(0) && depth_sum == depth_m && depth_m.unwrap_or(0) >= 1;
    let ext_dim = timed(&mut timings, "oracle_ext", || oracle_ext_dim(m, sel.n))?;
    let split = timed(&mut timings, "oracle_split", || oracle_split_search(&sequence))?;
    let idempotent = timed(&mut timings, "oracle_idempotent", || {
        oracle_random_idempotent(x, opts.idempotent_trials, opts.seed)
    })?;

    let mut failed = Vec::new();
    let mut need = |ok: bool, name: &str| {
        if !ok {
            failed.push(name.to_string());
        }
    };
    need(exact, "exact");
    need(nonsplit, "nonsplit");
    need(sel.premise, "ann_in_radical");
    need(end0_local, "end0_local");
    need(rank_cert.valid && rank_m > 0, "rank");
    need(depth_ok, "depth");
    need(ext_dim == sel.space.dim(), "oracle_ext_dim");
    need(matches!(split, SplitVerdict::None), "oracle_split_search");
    need(idempotent.found.is_none(), "oracle_random_idempotent");

    let cocycle = |c: &ExtClass| Cocycle { degree: c.degree, values: poly_strings(&ring, &c.values) };
    let certificate = ConstructionCertificate {
        version: CERTIFICATE_VERSION,
        status: if failed.is_empty() { "VALID" } else { "INVALID" }.to_string(),
        failed_checks: failed,
        config: Config {
            p: ring.field().characteristic(),
            n_max: opts.n_max,
            truncation: sel.n,
            seed: opts.seed,
            idempotent_trials: opts.idempotent_trials,
        },
        ring: RingEcho::of(&ring),
        modules: Modules { m: ModuleEcho::of(m), t: ModuleEcho::of(&sel.data.n), x: ModuleEcho::of(x) },
        maps: Maps { iota: map_strings(&ring, &sequence.iota), pi: map_strings(&ring, &sequence.pi) },
        choice: Choice {
            r: sel.r,
            n: sel.n,
            s: sel.s,
            nu_a: sel.nu_a,
            basis_indices: sel.indices.clone(),
            generators: sel.generators.iter().map(cocycle).collect(),
            shifts: sel.generators.iter().map(|g| g.degree).collect(),
            alpha: cocycle(&alpha),
        },
        verdicts: Verdicts {
            exact,
            nonsplit,
            ann_in_radical: sel.premise,
            end0_local,
            rank: RankVerdict {
                t: k,
                fitt_low_zero: rank_cert.lower_is_torsion,
                fitt_t_m_primary: rank_cert.top_is_m_primary_or_unit,
                certificate: rank_cert,
            },
            depth: DepthVerdict { m: depth_m, sum: depth_sum, x: depth_x, consistent: depth_ok },
        },
        oracle: OracleVerdicts {
            ext_dim_agreement: ext_dim == sel.space.dim(),
            ext_dim,
            split_search: split.label().to_string(),
            idempotent_trials: idempotent.summary(),
        },
        timings: opts.record_timings.then_some(timings),
    };
    Ok(Construction { selection: sel, sum, alpha, sequence, idempotent, split, certificate })
}

/// Runs the whole construction for `M` and `r`.
pub fn construct_big_indecomposable(m: &GradedModule, r: usize, opts: &ConstructOptions) -> Result<Construction> {
    let sel = select_generators(m, r, opts.n_max, opts.seed)?;
    assemble(m, sel, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;

    #[test]
    fn a1_module_rank_two() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::a1_cone(f);
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let opts = ConstructOptions { idempotent_trials: 20, ..Default::default() };
        let c = construct_big_indecomposable(&m, 2, &opts).unwrap();
        let cert = &c.certificate;
        assert!(cert.is_valid(), "failed: {:?}", cert.failed_checks);
        assert_eq!(cert.verdicts.rank.t, 2);
        assert_eq!(cert.verdicts.depth.x, Some(0));
        assert!(crate::modlib::nu(&c.sequence.x) >= 2 * crate::modlib::nu(&m));
        let again = construct_big_indecomposable(&m, 2, &opts).unwrap();
        assert_eq!(again.certificate.to_json(), cert.to_json());
    }
}
