//! Orbit geometry of diagonal cohomogeneity-one metrics.
//!
//! The crate evaluates the trace invariants of a one-parameter family of
//! homogeneous metrics `P_t`, locates biharmonic, r-harmonic and minimal
//! principal orbits, and provides the supporting numerics: Cheeger
//! deformation, second-variation bounds, equivariant `(k, r)`-maps and a few
//! explicit polyharmonic foliations.
//!
//! `no_std` with `alloc`; IO lives in the companion `coh1` crate.

#![no_std]
// `!(x > 0.0)` style guards deliberately reject NaN along with the failing range
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod cheeger;
pub mod error;
pub mod foliation;
pub mod geometry;
pub mod jets;
pub mod krmaps;
pub mod ode;
pub mod polynomial;
pub mod profile;
pub mod solve;
pub mod stability;
pub mod table;

pub use error::{Error, Result};
pub use geometry::{Block, Domain, Param, PtFamily, Substitution, TraceInvariants};
pub use jets::Jet3;
pub use profile::Profile;
