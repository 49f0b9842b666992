//! Fundamental solution, Poisson kernel, Poisson transform of compactly
//! carried functionals, harmonicity residuals, and weighted sup norms.

mod functional;
mod kernel;
mod norms;

pub use functional::{Atom, Density, Functional, Pairable};
pub use kernel::{
    fundamental_solution, harmonic_residual, kernel_derivative_envelope, poisson_kernel,
    poisson_kernel_dx, sphere_area,
};
pub use norms::{poisson_decay_chain, weighted_sup_norm, DecayChainReport, DistanceSet, Region1};
