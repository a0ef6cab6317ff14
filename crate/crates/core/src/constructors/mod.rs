//! Group constructions from serializable specs.

mod build;
pub mod catalog;
mod spec;

pub use build::{build, build_with, BuiltGroup};
pub use spec::GroupSpec;
