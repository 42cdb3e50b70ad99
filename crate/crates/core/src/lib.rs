//! Exact classification of immersions of closed oriented 3-manifolds into ℝ⁵
//! up to regular homotopy, computed from a triangulation or a chain presentation.
//!
//! The pipeline runs bottom-up:
//!
//! * [`complex`] parses and validates triangulations and builds chain presentations;
//! * [`snf`] and [`homology`] reduce them to (co)homology in normal form;
//! * [`cup`] evaluates the cup pairing `H¹ × H² → H³` on the fundamental class;
//! * [`classification`] assembles the Wu-invariant rows and their fibers `ℤ_{2d(χ)}`;
//! * [`semigroup`] does connected-sum arithmetic on complete invariants;
//! * [`ledger`] evaluates the cusp/signature/rotation formulas from census data.

pub mod classification;
pub mod complex;
pub mod cup;
pub mod cyclic;
pub mod error;
pub mod homology;
pub mod ledger;
pub mod library;
pub mod matrix;
pub mod semigroup;
pub mod snf;

pub use error::{Error, Result};
