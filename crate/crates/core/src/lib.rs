//! Unitary quantum cellular automaton for the generalized Dirac equation
//! on a periodic one-dimensional lattice.
//!
//! The walk acts on a two-component spinor field `(ψ₊, ψ₋)` over `n`
//! sites. Each time step couples a site to itself and to its two
//! neighbours through four local moves whose amplitudes (the coin) are
//! fixed by the unitarity conditions once the mass term `R = m·ε` and the
//! mixing angle `ρ` are chosen.
//!
//! # Modules
//!
//! - [`coin`]: closed-form coin coefficients and their unitarity residuals.
//! - [`lattice`]: spinor fields and probability profiles.
//! - [`evolve`]: stencil and dense evolution engines, full simulations.
//! - [`spectrum`]: momentum-space block diagonalization of the operator.
//! - [`pathsum`]: base-4 path enumeration and the dihedral group algebra.
//! - [`convergence`]: ε-refinement studies and continuum residuals.
//! - [`cli`]: command-line front end and file writers.
//!
//! # Quick start
//!
//! ```
//! use gdewalk::{coin::WalkParameters, evolve::{simulate, Engine}, lattice::{SpinorField, InitMode}};
//!
//! let params = WalkParameters::new(0.8, 0.0).unwrap();
//! let init = SpinorField::centered_initial_state(100, InitMode::Normalized).unwrap();
//! let record = simulate(&params, 100, 300, &init, Engine::Stencil).unwrap();
//! assert!(record.conservation_drift < 1e-9);
//! ```

pub mod cli;
pub mod coin;
pub mod convergence;
pub mod error;
pub mod evolve;
pub mod lattice;
pub mod mat2;
pub mod pathsum;
pub mod spectrum;

pub use error::{Result, WalkError};

pub use num_complex::Complex64;
