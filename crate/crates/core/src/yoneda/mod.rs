//! Extensions as short exact sequences: pullback, pushout, splitting, and
//! the decomposition of `Ext^1` out of a direct sum.

pub mod phi;
pub mod sequence;

pub use phi::{phi_inverse, phi_inverse_via_sequences, phi_split, psi_matrix, psi_product, summand_data, tuple_times_psi};
pub use sequence::{
    class_of, find_splitting, is_split, pullback, pushout_along, pushout_extension, split_sequence,
    sum_of_sequences, verify_exact, ExactnessReport, ShortExactSequence,
};
