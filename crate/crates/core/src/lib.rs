//! Exact decision procedures for the kernel of the maximal flat Radon
//! (torus) transform on compact symmetric spaces, with two numerical
//! oracles: explicit matrix representations and great-circle quadrature on
//! the 2-sphere.

pub mod rational;
pub mod root_core;
pub mod space_catalog;
pub mod radon_kernel;
pub mod rep_oracle;
pub mod funk_numeric;
