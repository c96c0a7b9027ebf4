//! Independent re-checking of a stored certificate. Everything is rebuilt
//! from the strings in the certificate; each check is named so that a
//! tampered entry is reported by the check it breaks.

use std::sync::Arc;

use serde::Serialize;

use crate::cliio::expr::{parse_poly_in, Ctx};
use crate::error::Result;
use crate::field::PrimeField;
use crate::homext::{ExtClass, ExtData};
use crate::modlib::{depth, punctured_rank, truncation_module, GradedModule, MinorGuard, ModuleMap};
use crate::oracle::{oracle_ext_dim, oracle_random_idempotent, oracle_split_search, SplitVerdict};
use crate::ringkernel::{GradedRing, Poly, Vector};
use crate::yoneda::{is_split, pushout_extension, ShortExactSequence};

use super::certificate::*;
use super::construct::{assemble, sandwich_rank_certificate, sum_and_alpha, ConstructOptions};
use super::decompose::end0_is_local;
use super::select::{check_seed, select_at};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.ok)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect()
    }

    fn record(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckOutcome { name: name.into(), ok, detail: detail.into() });
        ok
    }

    /// Records a fallible step; `None` if it errored (already recorded).
    fn step<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(name, false, e.to_string());
                None
            }
        }
    }
}

/// Rebuilds the ring from its echo.
pub fn ring_from_echo(echo: &RingEcho) -> Result<Arc<GradedRing>> {
    let field = PrimeField::new(echo.char)?;
    let cx = Ctx { field, names: &echo.vars, weights: &echo.weights, gens: None };
    let ideal = echo.ideal.iter().map(|g| parse_poly_in(&cx, g)).collect::<Result<Vec<_>>>()?;
    GradedRing::new(field, echo.vars.clone(), echo.weights.clone(), ideal)
}

fn polys(ring: &GradedRing, v: &[String]) -> Result<Vec<Poly>> {
    let cx = Ctx::of_ring(ring);
    v.iter().map(|s| parse_poly_in(&cx, s).map(|p| ring.reduce(&p))).collect()
}

fn columns(ring: &GradedRing, cols: &[Vec<String>]) -> Result<Vec<Vector>> {
    cols.iter().map(|c| polys(ring, c)).collect()
}

pub fn module_from_echo(ring: &Arc<GradedRing>, echo: &ModuleEcho) -> Result<GradedModule> {
    GradedModule::new(ring, echo.degrees.clone(), columns(ring, &echo.relations)?)
}

/// Re-checks every claim of `cert`.
pub fn verify_certificate(cert: &ConstructionCertificate) -> VerifyReport {
    let mut rep = VerifyReport::default();
    verify_into(cert, &mut rep);
    rep
}

fn verify_into(cert: &ConstructionCertificate, rep: &mut VerifyReport) {
    rep.record(
        "version",
        cert.version == CERTIFICATE_VERSION,
        format!("version {} (expected {CERTIFICATE_VERSION})", cert.version),
    );
    let Some(ring) = rep.step("ring", ring_from_echo(&cert.ring)) else { return };
    rep.record("ring", cert.config.p == cert.ring.char && RingEcho::of(&ring) == cert.ring, "ring echo");

    let ch = &cert.choice;
    let shape = ch.n == cert.config.truncation
        && ch.generators.len() == ch.r
        && ch.shifts.len() == ch.r
        && ch.basis_indices.len() == ch.r
        && ch.generators.iter().zip(&ch.shifts).all(|(g, s)| g.degree == *s);
    rep.record("choice", shape, "r, n, shifts and generator degrees agree");

    let Some(m) = rep.step("modules", module_from_echo(&ring, &cert.modules.m)) else { return };
    let Some(t) = rep.step("modules", module_from_echo(&ring, &cert.modules.t)) else { return };
    let Some(x) = rep.step("modules", module_from_echo(&ring, &cert.modules.x)) else { return };
    let Some(trunc) = rep.step("truncation", truncation_module(&ring, ch.n)) else { return };
    rep.record(
        "truncation",
        trunc.degrees() == t.degrees() && trunc.relations() == t.relations(),
        format!("T is R/m^{}", ch.n),
    );

    let seed = cert.config.seed;
    let Some(s) = rep.step("seed", check_seed(&m, seed)) else { return };
    rep.record("seed", s == ch.s, format!("annihilator exponent {s}"));

    // generators: genuine cocycles of the stated degrees
    let Some(data) = rep.step("generators", ExtData::new(&m, &t, 1)) else { return };
    let mut gens = Vec::new();
    for g in &ch.generators {
        let values = match polys(&ring, &g.values) {
            Ok(v) => v,
            Err(e) => {
                rep.record("generators", false, e.to_string());
                return;
            }
        };
        let Some(c) = rep.step("generators", ExtClass::new(&data, values, g.degree)) else { return };
        gens.push(c);
    }
    rep.record("generators", true, format!("{} cocycles", gens.len()));

    // the selection is reproducible and its radical premise holds
    let Some(sel) = rep.step("ann_in_radical", select_at(&m, ch.r, ch.n, ch.s)) else { return };
    let Ok(sel) = sel else {
        rep.record("ann_in_radical", false, "no selection at the stated n");
        return;
    };
    let chosen = sel.indices == ch.basis_indices
        && sel.nu_a == ch.nu_a
        && sel.generators.iter().zip(&gens).all(|(a, b)| a.values == b.values && a.degree == b.degree);
    rep.record("generators", chosen, "generators match the greedy choice");
    rep.record("ann_in_radical", sel.premise, format!("ν over the acting algebra = {}", sel.nu_a));

    let Some((sum, alpha)) = rep.step("alpha", sum_and_alpha(&m, &data, &gens)) else { return };
    let stored_alpha = polys(&ring, &ch.alpha.values);
    rep.record(
        "alpha",
        stored_alpha.as_ref().is_ok_and(|v| *v == alpha.values) && ch.alpha.degree == alpha.degree,
        "α = φ^{-1}(g_1..g_r)",
    );

    let Some(rebuilt) = rep.step("x_presentation", pushout_extension(&alpha)) else { return };
    let x_same = rebuilt.x.degrees() == x.degrees() && rebuilt.x.relations() == x.relations();
    rep.record("x_presentation", x_same, "X is the pushout of α");

    let iota = columns(&ring, &cert.maps.iota).and_then(|c| ModuleMap::new(&t, &x, c, 0));
    let pi = columns(&ring, &cert.maps.pi).and_then(|c| ModuleMap::new(&x, &sum.module, c, 0));
    let Some(iota) = rep.step("maps", iota) else { return };
    let Some(pi) = rep.step("maps", pi) else { return };
    let maps_same = iota.matrix == rebuilt.iota.matrix && pi.matrix == rebuilt.pi.matrix;
    rep.record("maps", maps_same, "ι and π agree with the pushout");

    let seq = match ShortExactSequence::new(iota, pi) {
        Ok(s) => s,
        Err(e) => {
            rep.record("exact", false, e.to_string());
            return;
        }
    };
    rep.record("exact", seq.verified, "0 → T → X → ⊕M(-e_i) → 0");
    let nonsplit = is_split(&seq).map(|b| !b);
    rep.record("nonsplit", nonsplit.as_ref().is_ok_and(|b| *b), "no degree-zero section");

    let local = end0_is_local(&x, seed);
    rep.record("end0_local", local.as_ref().is_ok_and(|b| *b), "End_0(X) is local");

    let guard = MinorGuard::default();
    let rank_ok = (|| -> Result<bool> {
        let rank_m = punctured_rank(&m, guard)?.unwrap_or(0);
        let k = ch.r * rank_m;
        let c = sandwich_rank_certificate(&sum.module, &t, k, guard)?;
        let v = &cert.verdicts.rank;
        Ok(rank_m > 0 && c.valid && v.t == k && v.certificate == c && v.fitt_low_zero && v.fitt_t_m_primary)
    })();
    rep.record("rank", rank_ok.as_ref().is_ok_and(|b| *b), "punctured rank r·rank(M)");

    let depth_ok = (|| -> Result<bool> {
        let (dm, ds, dx) = (depth(&m)?, depth(&sum.module)?, depth(&x)?);
        let d = &cert.verdicts.depth;
        Ok(dx == Some(0) && ds == dm && dm.unwrap_or(0) >= 1 && (d.m, d.sum, d.x) == (dm, ds, dx) && d.consistent)
    })();
    rep.record("depth", depth_ok.as_ref().is_ok_and(|b| *b), "depth X = 0, depth ⊕M = depth M ≥ 1");

    let oracle_ok = (|| -> Result<bool> {
        let o = &cert.oracle;
        let ext = oracle_ext_dim(&m, ch.n)?;
        let split = oracle_split_search(&seq)?;
        let idem = oracle_random_idempotent(&x, cert.config.idempotent_trials, seed)?;
        Ok(ext == sel.space.dim()
            && o.ext_dim == ext
            && o.ext_dim_agreement
            && matches!(split, SplitVerdict::None)
            && o.split_search == split.label()
            && idem.found.is_none()
            && o.idempotent_trials == idem.summary())
    })();
    rep.record("oracle", oracle_ok.as_ref().is_ok_and(|b| *b), "dense-model cross-checks");

    let v = &cert.verdicts;
    let claimed = v.exact && v.nonsplit && v.ann_in_radical && v.end0_local && v.depth.consistent;
    let status = cert.is_valid() && cert.failed_checks.is_empty();
    rep.record("verdicts", claimed && status, format!("status {}", cert.status));

    // the whole certificate is reproduced byte for byte
    let opts = ConstructOptions {
        n_max: cert.config.n_max,
        seed,
        idempotent_trials: cert.config.idempotent_trials,
        record_timings: false,
    };
    let again = assemble(&m, sel, &opts).map(|c| c.certificate);
    let mut stored = cert.clone();
    stored.timings = None;
    let same_cert = again.as_ref().is_ok_and(|c| *c == stored);
    let detail = match &again {
        Err(e) => e.to_string(),
        Ok(_) if same_cert => "re-assembled certificate is identical".into(),
        Ok(_) => "re-assembled certificate differs".into(),
    };
    rep.record("round_trip", same_cert, detail);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pipeline::construct_big_indecomposable;

    fn certificate() -> ConstructionCertificate {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::a1_cone(f);
        let m = GradedModule::new(&r, vec![0, 0], fixtures::a1_matrix(&r)).unwrap();
        let opts = ConstructOptions { idempotent_trials: 20, ..Default::default() };
        construct_big_indecomposable(&m, 2, &opts).unwrap().certificate
    }

    #[test]
    fn valid_certificate_verifies() {
        let c = certificate();
        let rep = verify_certificate(&c);
        assert!(rep.ok(), "failed: {:?}", rep.failed());
        let back = ConstructionCertificate::from_json(&c.to_json()).unwrap();
        assert!(verify_certificate(&back).ok());
    }

    #[test]
    fn tampering_is_named() {
        let c = certificate();
        let mut t = c.clone();
        let e = &mut t.maps.iota[0][0];
        *e = if e == "0" { "x".into() } else { "0".into() };
        assert!(verify_certificate(&t).failed().contains(&"maps"));

        let mut t = c.clone();
        t.choice.alpha.values[0] = format!("({}) + 2*x", t.choice.alpha.values[0]);
        assert!(verify_certificate(&t).failed().contains(&"alpha"));

        let mut t = c.clone();
        t.verdicts.nonsplit = false;
        assert!(verify_certificate(&t).failed().contains(&"verdicts"));

        let mut t = c.clone();
        t.oracle.ext_dim += 1;
        assert!(verify_certificate(&t).failed().contains(&"oracle"));

        let mut t = c.clone();
        t.verdicts.rank.t += 1;
        assert!(verify_certificate(&t).failed().contains(&"rank"));

        let mut t = c;
        t.ring.char = 32002;
        assert_eq!(verify_certificate(&t).failed(), ["ring"]);
    }
}
