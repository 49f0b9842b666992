//! Compactly carried functionals: finite combinations of derivatives of
//! point masses plus a compactly supported density, and their Poisson
//! transform `P[f](x, y) = ⟨f(ξ), P(x − ξ, y)⟩`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic::kernel::poisson_kernel_dx;
use crate::numerics::adaptive_simpson;
use crate::testbed::TestFunction;

/// Anything with exact one-dimensional derivatives of every order; pairing
/// targets for functionals.
pub trait Pairable {
    fn deriv(&self, n: usize, x: f64) -> f64;
}

impl Pairable for TestFunction {
    fn deriv(&self, n: usize, x: f64) -> f64 {
        assert_eq!(self.dim(), 1, "pairing targets are one-dimensional");
        self.derivative(&[n], &[x])
    }
}

/// `c·∂^order δ_{location}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Atom {
    pub location: f64,
    pub order: usize,
    pub coeff: f64,
}

/// A density `g·𝟙_{[a,b]} dx` with an exactly differentiable profile.
#[derive(Debug, Clone, Serialize)]
pub struct Density {
    pub profile: TestFunction,
    pub support: (f64, f64),
}

/// A compactly carried functional on the line: atoms plus an optional
/// density. The carrier hull is the convex hull of the atom locations and
/// the density support.
#[derive(Debug, Clone, Serialize)]
pub struct Functional {
    pub atoms: Vec<Atom>,
    pub density: Option<Density>,
    pub label: String,
}

impl Functional {
    pub fn from_atoms(label: impl Into<String>, atoms: Vec<Atom>) -> Self {
        Functional {
            atoms,
            density: None,
            label: label.into(),
        }
    }

    /// A single point mass `δ_{x₀}`.
    pub fn delta(x0: f64) -> Self {
        Self::from_atoms(format!("delta({x0})"), vec![Atom {
            location: x0,
            order: 0,
            coeff: 1.0,
        }])
    }

    pub fn with_density(mut self, profile: TestFunction, support: (f64, f64)) -> Result<Self> {
        if support.1 <= support.0 {
            return Err(Error::InvalidArgument("empty density support".into()));
        }
        if profile.dim() != 1 {
            return Err(Error::InvalidArgument("density profile must be 1-d".into()));
        }
        self.density = Some(Density { profile, support });
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.coeff == 0.0) && self.density.is_none()
    }

    /// Convex hull `[a, b]` of the carrier, `None` for the zero functional.
    pub fn carrier_hull(&self) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for a in &self.atoms {
            lo = lo.min(a.location);
            hi = hi.max(a.location);
        }
        if let Some(d) = &self.density {
            lo = lo.min(d.support.0);
            hi = hi.max(d.support.1);
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Distance from `(x, y)` to the carrier hull viewed inside `ℝ²`.
    pub fn distance_to_carrier(&self, x: f64, y: f64) -> f64 {
        match self.carrier_hull() {
            None => f64::INFINITY,
            Some((a, b)) => {
                let dx = (a - x).max(x - b).max(0.0);
                (dx * dx + y * y).sqrt()
            }
        }
    }

    /// The exact pairing
    /// `⟨f, φ⟩ = Σ c·(−1)^{order}·φ^{(order)}(x₀) + ∫ g φ`.
    ///
    /// Only the density part needs quadrature.
    pub fn pair<P: Pairable>(&self, phi: &P, quad_tol: f64) -> f64 {
        let mut total = 0.0;
        for a in &self.atoms {
            let sign = if a.order % 2 == 0 { 1.0 } else { -1.0 };
            total += a.coeff * sign * phi.deriv(a.order, a.location);
        }
        if let Some(d) = &self.density {
            let r = adaptive_simpson(
                |xi| d.profile.eval(&[xi]) * phi.deriv(0, xi),
                d.support.0,
                d.support.1,
                quad_tol,
            );
            total += r.value;
        }
        total
    }

    /// `P[f](x, y)` for `(x, y)` off the carrier.
    ///
    /// Atoms contribute `c·(∂^{order} P)(x − x₀, y)` (the two distributional
    /// sign factors cancel); the density contributes an adaptive quadrature.
    /// Odd in `y` by construction; on the line off the carrier the value
    /// is 0.
    pub fn poisson_transform(&self, x: f64, y: f64, quad_tol: f64) -> Result<f64> {
        if y == 0.0 {
            if let Some((a, b)) = self.carrier_hull() {
                if x >= a && x <= b {
                    return Err(Error::Domain(format!(
                        "Poisson transform evaluated on the carrier at x = {x}"
                    )));
                }
            }
        }
        let mut total = 0.0;
        for a in &self.atoms {
            total += a.coeff * poisson_kernel_dx(a.order, x - a.location, y)?;
        }
        if let Some(d) = &self.density {
            if y != 0.0 {
                let r = adaptive_simpson(
                    |xi| {
                        d.profile.eval(&[xi])
                            * poisson_kernel_dx(0, x - xi, y).expect("y != 0")
                    },
                    d.support.0,
                    d.support.1,
                    quad_tol,
                );
                total += r.value;
            }
            // at y = 0 off the carrier the kernel vanishes identically
        }
        Ok(total)
    }

    /// The transform as a plain field closure (panics on the carrier).
    pub fn field(&self, quad_tol: f64) -> impl Fn(f64, f64) -> f64 + '_ {
        move |x, y| {
            self.poisson_transform(x, y, quad_tol)
                .expect("field evaluated on the carrier")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::kernel::harmonic_residual;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn delta_transform_is_the_kernel() {
        // P[δ₀](0, y) = 1/(2πy)
        let f = Functional::delta(0.0);
        for &y in &[0.5, 1.0, 2.0] {
            let v = f.poisson_transform(0.0, y, 1e-10).unwrap();
            assert!((v - 1.0 / (2.0 * PI * y)).abs() < 1e-15);
        }
    }

    #[test]
    fn oddness_is_exact() {
        let f = Functional::from_atoms(
            "mix",
            vec![
                Atom { location: -0.5, order: 0, coeff: 1.0 },
                Atom { location: 0.7, order: 1, coeff: 2.0 },
            ],
        );
        for &(x, y) in &[(0.3, 0.2), (-1.0, 0.05), (2.0, 1.5)] {
            let up = f.poisson_transform(x, y, 1e-10).unwrap();
            let down = f.poisson_transform(x, -y, 1e-10).unwrap();
            assert_eq!(down, -up);
        }
    }

    #[test]
    fn density_oddness_and_linearity() {
        let g = TestFunction::cosine(1, 1.0);
        let f = Functional::from_atoms("density", vec![])
            .with_density(g, (-1.0, 1.0))
            .unwrap();
        let up = f.poisson_transform(0.2, 0.4, 1e-12).unwrap();
        let down = f.poisson_transform(0.2, -0.4, 1e-12).unwrap();
        assert_eq!(down, -up);
    }

    #[test]
    fn derivative_atom_value_fixed_by_complex_oracle() {
        // f = ∂δ₀ evaluated at (1, 1): ∂ₓP(1,1) = −1/(4π)
        let f = Functional::from_atoms(
            "ddelta",
            vec![Atom { location: 0.0, order: 1, coeff: 1.0 }],
        );
        let v = f.poisson_transform(1.0, 1.0, 1e-10).unwrap();
        assert!((v + 1.0 / (4.0 * PI)).abs() < 1e-15, "{v}");
    }

    #[test]
    fn transform_linear_in_the_functional() {
        let f1 = Functional::delta(-0.5);
        let f2 = Functional::from_atoms(
            "d1(0.7)",
            vec![Atom { location: 0.7, order: 1, coeff: 1.0 }],
        );
        let combo = Functional::from_atoms(
            "combo",
            vec![
                Atom { location: -0.5, order: 0, coeff: 2.0 },
                Atom { location: 0.7, order: 1, coeff: -3.0 },
            ],
        );
        for &(x, y) in &[(0.0, 0.3), (1.2, 0.8)] {
            let lhs = combo.poisson_transform(x, y, 1e-10).unwrap();
            let rhs = 2.0 * f1.poisson_transform(x, y, 1e-10).unwrap()
                - 3.0 * f2.poisson_transform(x, y, 1e-10).unwrap();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn transform_is_harmonic_off_the_carrier() {
        let f = Functional::from_atoms(
            "mix",
            vec![
                Atom { location: 0.0, order: 0, coeff: 1.0 },
                Atom { location: 0.5, order: 1, coeff: 1.0 },
            ],
        );
        let field = |x: &[f64], y: f64| f.poisson_transform(x[0], y, 1e-10).unwrap();
        let r = harmonic_residual(field, &[2.0], 0.5, 1e-3);
        assert!(r.abs() < 1e-4, "residual {r}");
    }

    #[test]
    fn evaluation_on_the_carrier_is_rejected() {
        let f = Functional::delta(0.25);
        assert!(matches!(
            f.poisson_transform(0.25, 0.0, 1e-10),
            Err(Error::Domain(_))
        ));
        // off the carrier on the line: exactly zero
        assert_eq!(f.poisson_transform(1.5, 0.0, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn pairing_signs() {
        // ⟨∂δ₀, sin⟩ = −cos(0) = −1, ⟨∂δ₀, cos⟩ = 0
        let f = Functional::from_atoms(
            "ddelta",
            vec![Atom { location: 0.0, order: 1, coeff: 1.0 }],
        );
        let s = TestFunction::sine(1, 1.0);
        let c = TestFunction::cosine(1, 1.0);
        assert!((f.pair(&s, 1e-12) + 1.0).abs() < 1e-15);
        assert!(f.pair(&c, 1e-12).abs() < 1e-15);
    }

    #[test]
    fn density_pairing_by_quadrature() {
        // ∫_{-1}^{1} cos(πx/2)·1 dx = 4/π... with our integer-frequency
        // modes use g = cos(x): ∫_{-1}^{1} cos = 2 sin(1)
        let f = Functional::from_atoms("density", vec![])
            .with_density(TestFunction::cosine(1, 1.0), (-1.0, 1.0))
            .unwrap();
        let one = TestFunction::constant(1.0);
        let v = f.pair(&one, 1e-12);
        assert!((v - 2.0 * 1.0f64.sin()).abs() < 1e-10);
    }

    #[test]
    fn hull_and_distance() {
        let f = Functional::from_atoms(
            "two",
            vec![
                Atom { location: -0.5, order: 0, coeff: 1.0 },
                Atom { location: 0.7, order: 1, coeff: 1.0 },
            ],
        );
        assert_eq!(f.carrier_hull(), Some((-0.5, 0.7)));
        assert_eq!(f.distance_to_carrier(0.0, 0.3), 0.3);
        assert!((f.distance_to_carrier(1.7, 0.0) - 1.0).abs() < 1e-15);
        let d = f.distance_to_carrier(-1.5, 1.0);
        assert!((d - 2.0f64.sqrt()).abs() < 1e-15);
    }
}
