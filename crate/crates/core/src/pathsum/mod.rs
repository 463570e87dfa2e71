//! Combinatorial oracles for the walk.
//!
//! [`paths`] expands the evolution as an explicit sum over base-4 move
//! strings. [`dihedral`] implements the dihedral group `D_n`, its group
//! algebra `ℂ[D_n]` and the 2×2 representation used as generating-function
//! bookkeeping.
//!
//! The generating function `(a₀R₀ + a₁R₁ + b₀S₀ + b₁S₁)ᵗ` takes
//! spin-independent coefficients, while the walk's stay and flip
//! amplitudes differ in sign between the two spin components. The algebra
//! is therefore validated as an algebra, and only the spin-resolved path
//! enumeration is checked against the walk itself.

pub mod dihedral;
pub mod paths;

pub use dihedral::{algebra_multiply, algebra_power, dihedral_representation, DihedralElement, GroupAlgebraElement, Kind};
pub use paths::{enumerate_paths, path_weight, Move, PathAmplitude, MAX_PATH_STEPS};
