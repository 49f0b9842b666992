//! Numerical verification toolkit for boundary values of harmonic functions
//! in ultradifferentiable and quasianalytic classes.
//!
//! The crate is organized around five subsystems:
//!
//! * [`weights`] — weight sequences `M = (M_p)`, weight functions `ω`, weight
//!   matrices, their growth conditions, associated functions, and Young-type
//!   conjugates, all evaluated at a finite truncation scale with explicit
//!   saturation reporting.
//! * [`testbed`] — finite cosine series with exact derivatives of every order
//!   and exact powers of `(−Δ)`, plus derivative-growth certificates against a
//!   weight sequence.
//! * [`extension`] — the almost harmonic extension `Φ` of a pair of traces
//!   `(φ₀, φ₁)`: a modified power series in the extra variable with cutoff
//!   factors, its Laplacian defect in closed form, and weighted defect norms.
//! * [`harmonic`] — the fundamental solution and Poisson kernel on the upper
//!   half space, the Poisson transform of compactly carried functionals, and
//!   weighted sup norms measured against a carrier distance.
//! * [`boundary`] — the boundary-value pairing by shrinking-slab limits with
//!   Richardson extrapolation, the Green-identity check, the round-trip
//!   `bv ∘ P = id`, a numerical support estimator, and the reflection
//!   (zero-jump) test.
//!
//! All arithmetic on sequences is done in log space; every supremum over a
//! truncated index or parameter range carries a saturation flag. Nothing in
//! the crate uses randomness: identical inputs produce identical outputs.

pub mod boundary;
pub mod config;
pub mod error;
pub mod extension;
pub mod harmonic;
pub mod numerics;
pub mod testbed;
pub mod weights;

pub use error::{Error, Result};
