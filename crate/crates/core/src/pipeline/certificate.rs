//! The construction certificate as plain serializable data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::modlib::{GradedModule, ModuleMap, RankCertificate};
use crate::oracle::IdempotentSummary;
use crate::ringkernel::{GradedRing, Poly};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingEcho {
    pub char: u32,
    pub vars: Vec<String>,
    pub weights: Vec<i32>,
    pub ideal: Vec<String>,
}

impl RingEcho {
    pub fn of(ring: &GradedRing) -> Self {
        let f = ring.field();
        RingEcho {
            char: f.characteristic(),
            vars: ring.names().to_vec(),
            weights: ring.weights().to_vec(),
            ideal: ring.defining_ideal().iter().map(|g| g.to_string_with(f, ring.names())).collect(),
        }
    }
}

/// Generator degrees and relation columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleEcho {
    pub degrees: Vec<i32>,
    pub relations: Vec<Vec<String>>,
}

impl ModuleEcho {
    pub fn of(m: &GradedModule) -> Self {
        ModuleEcho { degrees: m.degrees().to_vec(), relations: m.relations_to_strings() }
    }
}

pub fn poly_strings(ring: &GradedRing, v: &[Poly]) -> Vec<String> {
    v.iter().map(|p| p.to_string_with(ring.field(), ring.names())).collect()
}

pub fn map_strings(ring: &GradedRing, f: &ModuleMap) -> Vec<Vec<String>> {
    f.matrix.iter().map(|c| poly_strings(ring, c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub p: u32,
    #[serde(rename = "nMax")]
    pub n_max: u32,
    /// `n` in `T = R/m^n`.
    pub truncation: u32,
    pub seed: u64,
    pub idempotent_trials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modules {
    #[serde(rename = "M")]
    pub m: ModuleEcho,
    #[serde(rename = "T")]
    pub t: ModuleEcho,
    #[serde(rename = "X")]
    pub x: ModuleEcho,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Maps {
    pub iota: Vec<Vec<String>>,
    pub pi: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle {
    pub degree: i32,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Choice {
    pub r: usize,
    pub n: u32,
    pub s: u32,
    /// `ν` of `Ext^1(M, T)` over the acting algebra.
    pub nu_a: usize,
    /// Basis positions of the generators (greedy, basis order).
    pub basis_indices: Vec<usize>,
    pub generators: Vec<Cocycle>,
    /// Each summand of the middle term is `M` shifted by the generator degree.
    pub shifts: Vec<i32>,
    pub alpha: Cocycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVerdict {
    pub t: usize,
    pub fitt_low_zero: bool,
    pub fitt_t_m_primary: bool,
    pub certificate: RankCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthVerdict {
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub sum: Option<usize>,
    #[serde(rename = "X")]
    pub x: Option<usize>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub exact: bool,
    pub nonsplit: bool,
    pub ann_in_radical: bool,
    pub end0_local: bool,
    pub rank: RankVerdict,
    pub depth: DepthVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdicts {
    pub ext_dim_agreement: bool,
    pub ext_dim: usize,
    pub split_search: String,
    pub idempotent_trials: IdempotentSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub version: u32,
    pub status: String,
    pub failed_checks: Vec<String>,
    pub config: Config,
    pub ring: RingEcho,
    pub modules: Modules,
    pub maps: Maps,
    pub choice: Choice,
    pub verdicts: Verdicts,
    pub oracle: OracleVerdicts,
    /// Wall-clock seconds per phase; absent unless requested, so that
    /// repeated runs serialize identically.
    pub timings: Option<BTreeMap<String, f64>>,
}

impl ConstructionCertificate {
    pub fn is_valid(&self) -> bool {
        self.status == "VALID"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
