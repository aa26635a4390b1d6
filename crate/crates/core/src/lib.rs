//! Component groups of the real points of connected reductive groups.
//!
//! A group is described by its cocharacter lattice `X∨` (always ℤⁿ in internal
//! coordinates), its coroot lattice `Q∨ ⊆ X∨`, and the action of the Cartan
//! involution `θ` on `X∨`. From this data the library computes
//!
//! * `π₀G(ℝ) ≅ X∨_spl / (2X̃∨_spl + Q∨_spl)`, where `X∨_spl = X∨ ∩ ker(θ+1)` and
//!   `X̃∨_spl` is the image of `X∨` under `ν ↦ ½(ν − θν)`;
//! * explicit representatives `t = exp(πiν)` of every component, evaluated on
//!   display weights as exact fourth roots of unity;
//! * `H¹(ℝ, iX∨/iQ∨) ≅ X∨ ∩ (X̃∨_spl + ½Q∨_cmp) / (2X̃∨_spl + Q∨)`, into which
//!   `π₀G(ℝ)` embeds.
//!
//! Non-reductive groups are handled by passing the data of a Levi factor: the
//! unipotent radical is connected and does not change `π₀`.

pub mod cli;
pub mod components;
pub mod error;
pub mod intlattice;
pub mod realform;
pub mod rootdata;

pub use error::{Error, Result};
