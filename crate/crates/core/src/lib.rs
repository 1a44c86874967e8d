//! Exact invariants of links of weighted homogeneous hypersurface
//! singularities and the constants calculus of Sasakian η-Einstein metrics.
//!
//! - [`links`]: weight systems, Brieskorn-Pham links, sign classification,
//!   monomial counts, well-formedness, `π_1` and ADE recognition.
//! - [`milnor_orlik`]: middle Betti numbers and the known torsion cases.
//! - [`spheres`]: Brieskorn signatures, Casson invariants, Kervaire spheres
//!   and `bP_8` classes.
//! - [`eta`]: D-homotheties and the Einstein, Lorentzian, scalar-flat and
//!   Einstein-Weyl normalizations.
//! - [`curvature`]: Ricci curvature of left-invariant metrics, used to check
//!   the η-Einstein constants of the Heisenberg and Berger models.

pub mod curvature;
pub mod error;
pub mod eta;
mod linalg;
pub mod links;
pub mod milnor_orlik;
pub mod spheres;

pub use error::{Error, Result};
pub use links::{BpExponents, LinkDescriptor, MonomialMatrix, SignClass, WeightSystem};
