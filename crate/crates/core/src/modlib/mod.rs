//! Graded modules over a graded ring: presentations, maps, resolutions and
//! the invariants the construction relies on.

pub mod fitting;
pub mod invariants;
pub mod module;
pub mod ops;
pub mod resolution;

pub use fitting::{fitting_ideal, punctured_rank, rank_punctured_certificate, MinorGuard, RankCertificate};
pub use invariants::{depth, finite_length_submodule, length, length_and_hilbert, truncation_module, HilbertData};
pub use module::{GradedModule, ModuleMap};
pub use ops::{
    cokernel, direct_sum, image, kernel, kernel_generators, minimal_presentation, nu, quotient_by,
    submodule_presentation, DirectSum, Lifter,
    MinimalPresentation,
};
pub use resolution::{betti_numbers, free_resolution, syzygy_module, Resolution};
