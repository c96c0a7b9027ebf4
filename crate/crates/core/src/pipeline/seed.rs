//! The canonical seed: an indecomposable summand of `Ω^d(k) / H^0_m`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modlib::{depth, finite_length_submodule, punctured_rank, syzygy_module, GradedModule, MinorGuard};
use crate::ringkernel::GradedRing;

use super::decompose::decompose;

#[derive(Clone, Debug)]
pub struct SeedReport {
    pub module: GradedModule,
    pub summary: SeedSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSummary {
    pub syzygy_index: usize,
    pub summands: usize,
    pub punctured_rank: Option<usize>,
    pub depth: Option<usize>,
    pub ring_depth: Option<usize>,
    pub warnings: Vec<String>,
}

pub fn canonical_seed(ring: &Arc<GradedRing>, seed: u64) -> Result<SeedReport> {
    let d = ring.krull_dimension();
    if d == 0 {
        return Err(Error::DimensionZero);
    }
    let mut warnings = Vec::new();
    let ring_depth = depth(&GradedModule::free(ring, vec![0]))?;
    if ring_depth.unwrap_or(0) < 2 {
        warnings.push(format!("depth R = {} < 2", ring_depth.unwrap_or(0)));
    }
    let k = GradedModule::residue_field(ring);
    let om = syzygy_module(&k, d)?;
    if om.is_zero() {
        return Err(Error::ZeroModule);
    }
    let q = finite_length_submodule(&om)?.quotient;
    if q.is_zero() {
        return Err(Error::ZeroModule);
    }
    let parts = decompose(&q, seed)?;
    let guard = MinorGuard::default();
    let mut best: Option<(usize, usize, usize)> = None; // (rank, ngens, index)
    for (i, p) in parts.iter().enumerate() {
        let rk = punctured_rank(&p.module, guard)?.unwrap_or(0);
        let key = (rk, p.module.ngens(), i);
        best = match best {
            None => Some(key),
            Some(b) if rk > b.0 || (rk == b.0 && key.1 < b.1) => Some(key),
            other => other,
        };
    }
    let (_, _, idx) = best.ok_or(Error::ZeroModule)?;
    let module = parts[idx].module.clone();
    if module.is_free() {
        warnings.push("seed is free: Ext^1 vanishes and the construction degenerates".into());
    }
    let summary = SeedSummary {
        syzygy_index: d,
        summands: parts.len(),
        punctured_rank: punctured_rank(&module, guard)?,
        depth: depth(&module)?,
        ring_depth,
        warnings,
    };
    Ok(SeedReport { module, summary })
}
