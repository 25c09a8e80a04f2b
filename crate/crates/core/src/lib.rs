//! Exact characteristic ideals, Hilbert polynomials and deformation scans
//! for finitely presented modules over deformed Weyl algebras `A_{d,n}`.
//!
//! Coefficients live in `Q` with a tracked `p`-adic valuation (the lattice
//! being `Z` localised at `p`) or in the residue field `F_p`. At level `n`
//! the algebra is generated by `x_i` and `η_i = p^n ∂_i`, so every level
//! shares the relation `[η_i, x_j] = p^n δ_ij`.
#![no_std]

extern crate alloc;

pub mod charvar;
pub mod coeff;
pub mod cpoly;
pub mod error;
pub mod gb;
pub mod hilbert;
pub mod monomial;
pub mod stab;
pub mod weyl;

pub use error::{Error, Result};
