//! Finite-difference Laplacian stencils for scalar fields given as closures.

/// 5-point Laplacian stencil for a field on the `(x, y)` plane.
///
/// Residual is `O(step²)` times a fourth-derivative scale for smooth fields.
pub fn laplacian_xy<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64, step: f64) -> f64 {
    (f(x + step, y) + f(x - step, y) + f(x, y + step) + f(x, y - step) - 4.0 * f(x, y))
        / (step * step)
}

/// 7-point Laplacian stencil for a field on `ℝ² × ℝ` (two boundary variables
/// plus the extension variable).
pub fn laplacian_xyz<F: Fn(f64, f64, f64) -> f64>(f: F, x1: f64, x2: f64, y: f64, step: f64) -> f64 {
    (f(x1 + step, x2, y)
        + f(x1 - step, x2, y)
        + f(x1, x2 + step, y)
        + f(x1, x2 - step, y)
        + f(x1, x2, y + step)
        + f(x1, x2, y - step)
        - 6.0 * f(x1, x2, y))
        / (step * step)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_polynomial_has_tiny_residual() {
        // x^3 - 3xy^2 is harmonic.
        let f = |x: f64, y: f64| x * x * x - 3.0 * x * y * y;
        assert!(laplacian_xy(f, 0.7, -0.4, 1e-3).abs() < 1e-8);
    }

    #[test]
    fn quadratic_gives_its_laplacian() {
        let f = |x: f64, _y: f64| x * x;
        assert!((laplacian_xy(f, 1.0, 2.0, 1e-3) - 2.0).abs() < 1e-6);
    }

    #[test]
    fn three_dim_stencil() {
        let f = |x1: f64, x2: f64, y: f64| x1 * x1 + x2 * x2 - 2.0 * y * y;
        assert!(laplacian_xyz(f, 0.3, 0.1, 0.2, 1e-3).abs() < 1e-6);
    }
}
