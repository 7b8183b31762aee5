//! Deciding and certifying whether sign patterns allow row orthogonality.
//!
//! A sign pattern is an array over `{+, -, 0}`; it *allows row orthogonality*
//! when some real matrix with those signs has orthonormal rows. This crate
//! provides:
//!
//! * exact rational verification of integer certificates produced from
//!   nearly row orthogonal matrices ([`certificate`]);
//! * a decision procedure for the strong inner product property (SIPP) and
//!   structural conditions under which every row orthogonal realization of a
//!   pattern has it ([`sipp`]);
//! * combinatorial certificates (column-disjoint negative 4-cycle covers) and
//!   obstructions (rank-one submatrix counting), composed into a sound
//!   `Allows / Forbidden / Unknown` pipeline ([`combinatorics`]);
//! * named constructions and fixtures ([`constructions`]);
//! * Monte-Carlo experiments on random sign patterns with exact closed-form
//!   bounds ([`random_sim`]);
//! * enumeration of small nowhere-zero patterns up to sign equivalence and
//!   classification of those that minimally allow orthogonality
//!   ([`classify`]).
//!
//! Every `Allows` or `Forbidden` verdict carries machine-checkable evidence
//! that is re-verified through an independent code path before being
//! returned; floating point is used only inside searches, never for
//! verdicts.
//!
//! The `orthopat` binary exposes the same functionality as subcommands; see
//! the crate README and `examples/` for entry points.

#![allow(clippy::needless_range_loop)]

pub mod canonical;
pub mod certificate;
pub mod classify;
pub mod cli;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod pattern;
pub mod quad;
pub mod random_sim;
pub mod rng;
pub mod sipp;

pub use error::{Error, Result};
