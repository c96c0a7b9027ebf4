//! Graded commutative algebra over prime fields, aimed at building
//! indecomposable modules of large rank that are free on the punctured
//! spectrum, together with certificates that can be re-checked
//! independently.

pub mod cliio;
pub mod error;
pub mod field;
pub mod findim;
pub mod fixtures;
pub mod homext;
pub mod linalg;
pub mod modlib;
pub mod oracle;
pub mod pipeline;
pub mod ringkernel;
pub mod yoneda;

pub use error::{Error, Result};
