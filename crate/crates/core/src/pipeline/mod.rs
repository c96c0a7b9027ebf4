//! The construction itself: growth of `Ext^1(M, R/m^n)`, choice of
//! generators, assembly of the extension and its certificate.

pub mod certificate;
pub mod construct;
pub mod decompose;
pub mod growth;
pub mod seed;
pub mod select;
pub mod verify;

pub use decompose::{decompose, degree_zero_end, degree_zero_homs, end0_is_local, reassembles, DegreeZeroEnd, Summand};
pub use growth::{ghp_fit, janet_bound, GhpFit, GrowthRow};
pub use seed::{canonical_seed, SeedReport, SeedSummary};
pub use select::{acting_algebra, check_seed, select_at, select_generators, SearchRow, Selection};
pub use certificate::ConstructionCertificate;
pub use construct::{assemble, construct_big_indecomposable, sandwich_rank_certificate, shifted_classes, shifted_generators, sum_and_alpha, ConstructOptions, Construction};
pub use verify::{module_from_echo, ring_from_echo, verify_certificate, CheckOutcome, VerifyReport};
