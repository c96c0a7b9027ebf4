//! Hom modules, endomorphism algebras and Ext with explicit cocycles.

pub mod ext;
pub mod hom;

pub use ext::{
    annihilator_exponent, ext_action, ext_class_equal, ext_module, ext_pullback, ExtClass, ExtData, ExtModule, ExtSpace,
};
pub use hom::{end_algebra, hom_module, EndAlgebra, HomModule};
