//! Finite-dimensional algebras over F_p: radicals, locality, idempotents,
//! minimal generators of modules over local algebras.

pub mod algebra;
pub mod reduce;
pub mod upoly;

pub use algebra::{
    jacobson_containment, lift_idempotent, locality_and_idempotents, minimal_generators_over, radical,
    tuple_kernel_in_radical, FinDimAlgebra, FinDimModule, Locality, ModuleGenerators,
};
pub use reduce::{reduce_mod_m, ReducedAlgebra};
