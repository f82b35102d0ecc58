//! Finite abelian p-groups with commuting Γ_n-action, their maps and pairings.

pub mod map;
pub mod module;
pub mod ops;
pub mod pairing;

pub use map::ModuleMap;
pub use module::{ActionDefect, FiniteModule, Normalized};
pub use ops::{
    annihilator_left, annihilator_right, coinvariants, cokernel, direct_sum, dual, dual_map, eigenspace,
    eigenspace_extended, eigenspace_scalars, image, invariants, kernel, quotient, submodule, DirectSum, Quotient, Sub,
};
pub use pairing::PairingMatrix;
