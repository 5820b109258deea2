//! Finite p-group workbench: power-commutator collection, a brute-force
//! table oracle, subgroup machinery, power-structure predicates and
//! verifiers for the classical results that hinge on them.

pub mod error;
pub mod family;
pub mod handle;
pub mod linalg;
pub mod pc;
pub mod predicates;
pub mod structure;
pub mod subgroup;
pub mod table;
pub mod theorems;

pub use error::Error;
pub use handle::{Caps, GroupHandle};
pub use subgroup::{ElemId, Subgroup};

pub type Result<T, E = Error> = std::result::Result<T, E>;
