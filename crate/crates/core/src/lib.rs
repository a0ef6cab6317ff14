//! Coleman, class-preserving and p-central automorphisms of small finite
//! groups, with brute-force checkers for their structure theorems.

pub mod arith;
pub mod automorphisms;
pub mod caps;
pub mod constructors;
pub mod error;
pub mod group;
pub mod structure;
pub mod verify;

pub use caps::Caps;
pub use constructors::{build, build_with, BuiltGroup, GroupSpec};
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, GroupHom, Subgroup};
