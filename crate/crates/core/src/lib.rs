//! Exact computations with truncated Iwasawa algebras Λ_n = Z_p[Γ_n],
//! finite Γ-modules with perfect pairings, and Γ-systems.

pub mod algebra;
pub mod arith;
pub mod error;
pub mod flats;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod systems;

pub use error::{Error, Result};
