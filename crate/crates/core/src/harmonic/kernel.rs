//! The fundamental solution of the Laplacian on `ℝ^{d+1}` and the Poisson
//! kernel of the half space, with exact `x`-derivatives in `d = 1` through
//! the complex identity `P(x, y) = −(1/2π)·Im 1/(x + iy)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{laplacian_xy, laplacian_xyz, linear_envelope, log_factorial};

/// Area of the unit sphere in `ℝ^{d+1}`: `2π` for `d = 1`, `4π` for `d = 2`.
pub fn sphere_area(d: usize) -> f64 {
    match d {
        1 => 2.0 * std::f64::consts::PI,
        2 => 4.0 * std::f64::consts::PI,
        _ => panic!("kernel formulas are provided for d = 1 and d = 2 only"),
    }
}

fn norm(x: &[f64], y: f64) -> f64 {
    let mut s = y * y;
    for &xi in x {
        s += xi * xi;
    }
    s.sqrt()
}

/// Fundamental solution `E(x, y)`: `(1/2π)·log|(x,y)|` on `ℝ²`,
/// `−1/((d−1)·c_{d+1}·|(x,y)|^{d−1})` for `d > 1`.
pub fn fundamental_solution(x: &[f64], y: f64) -> Result<f64> {
    let d = x.len();
    let r = norm(x, y);
    if r == 0.0 {
        return Err(Error::Domain("fundamental solution undefined at the origin".into()));
    }
    match d {
        1 => Ok(r.ln() / (2.0 * std::f64::consts::PI)),
        2 => Ok(-1.0 / (sphere_area(2) * r)),
        _ => Err(Error::InvalidArgument(format!("d = {d} not supported"))),
    }
}

/// Poisson kernel `P(x, y) = y / (c_{d+1}·|(x,y)|^{d+1})`.
pub fn poisson_kernel(x: &[f64], y: f64) -> Result<f64> {
    let d = x.len();
    if d != 1 && d != 2 {
        return Err(Error::InvalidArgument(format!("d = {d} not supported")));
    }
    let r = norm(x, y);
    if r == 0.0 {
        return Err(Error::Domain("Poisson kernel undefined at the origin".into()));
    }
    Ok(y / (sphere_area(d) * r.powi(d as i32 + 1)))
}

/// Exact `∂ⁿ_x P(x, y)` in `d = 1`:
/// `−(1/2π)·Im((−1)ⁿ·n!/(x + iy)^{n+1})`.
pub fn poisson_kernel_dx(n: usize, x: f64, y: f64) -> Result<f64> {
    if x == 0.0 && y == 0.0 {
        return Err(Error::Domain("Poisson kernel undefined at the origin".into()));
    }
    if n > 170 {
        return Err(Error::InvalidArgument("derivative order too large for n!".into()));
    }
    let z = Complex64::new(x, y);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let fact = log_factorial(n).exp();
    let v = sign * fact * z.powi(-(n as i32 + 1));
    Ok(-v.im / (2.0 * std::f64::consts::PI))
}

/// Laplacian stencil residual of a field at a point; `O(step²)` times a
/// fourth-derivative scale for harmonic fields.
pub fn harmonic_residual<F: Fn(&[f64], f64) -> f64>(
    field: F,
    x: &[f64],
    y: f64,
    step: f64,
) -> f64 {
    match x.len() {
        1 => laplacian_xy(|xx, yy| field(&[xx], yy), x[0], y, step),
        2 => laplacian_xyz(|x1, x2, yy| field(&[x1, x2], yy), x[0], x[1], y, step),
        _ => panic!("stencils provided for d = 1 and d = 2 only"),
    }
}

/// Fits `(C, H)` in the derivative-bound shape
/// `|∂ⁿ_x P(x,y)| ≤ C·Hⁿ·n! / |(x,y)|^{n+1}` over the given orders and
/// points, returning the minimal-at-truncation envelope pair.
pub fn kernel_derivative_envelope(orders: &[usize], points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if orders.is_empty() || points.is_empty() {
        return Err(Error::InvalidArgument("empty fit input".into()));
    }
    let mut d = Vec::with_capacity(orders.len());
    for &n in orders {
        let mut worst = f64::NEG_INFINITY;
        for &(x, y) in points {
            let v = poisson_kernel_dx(n, x, y)?.abs();
            if v == 0.0 {
                continue;
            }
            let r = (x * x + y * y).sqrt();
            // log of |∂ⁿP|·r^{n+1}/n!
            let g = v.ln() + (n as f64 + 1.0) * r.ln() - log_factorial(n);
            worst = worst.max(g);
        }
        d.push(worst);
    }
    let (log_c, log_h) = linear_envelope(&d);
    Ok((log_c.exp(), log_h.exp()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn fundamental_solution_values() {
        // d = 1: E(1, 0) = log(1)/2π = 0, E(0, e) = 1/2π
        assert_eq!(fundamental_solution(&[1.0], 0.0).unwrap(), 0.0);
        let e = std::f64::consts::E;
        assert!((fundamental_solution(&[0.0], e).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        // d = 2 at radius 1: −1/(4π)
        let v = fundamental_solution(&[0.6, 0.8], 0.0).unwrap();
        assert!((v + 1.0 / (4.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn origin_is_a_domain_error() {
        assert!(matches!(
            fundamental_solution(&[0.0], 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(poisson_kernel(&[0.0], 0.0), Err(Error::Domain(_))));
        assert!(matches!(poisson_kernel_dx(3, 0.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn kernel_values() {
        // P(0,1) = 1/2π, P(1,1) = 1/4π
        assert!((poisson_kernel(&[0.0], 1.0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-16);
        assert!((poisson_kernel(&[1.0], 1.0).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-16);
        // d = 2
        let p = poisson_kernel(&[1.0, 0.0], 1.0).unwrap();
        assert!((p - 1.0 / (4.0 * PI * 2.0f64.sqrt().powi(3))).abs() < 1e-16);
    }

    #[test]
    fn kernel_is_dy_of_fundamental_solution() {
        let h = 1e-6;
        for &(x, y) in &[(0.7, 0.2), (-1.1, 0.5), (0.3, -0.4)] {
            let fd = (fundamental_solution(&[x], y + h).unwrap()
                - fundamental_solution(&[x], y - h).unwrap())
                / (2.0 * h);
            let p = poisson_kernel(&[x], y).unwrap();
            assert!((fd - p).abs() < 1e-9, "({x},{y}): {fd} vs {p}");
        }
    }

    #[test]
    fn zeroth_derivative_is_the_kernel() {
        for &(x, y) in &[(0.0, 1.0), (1.0, 1.0), (-0.4, 0.3)] {
            let a = poisson_kernel_dx(0, x, y).unwrap();
            let b = poisson_kernel(&[x], y).unwrap();
            assert!((a - b).abs() < 1e-16);
        }
    }

    #[test]
    fn first_derivative_odd_in_x_and_matches_closed_form() {
        // ∂ₓP(0,1) = 0 by symmetry
        assert_eq!(poisson_kernel_dx(1, 0.0, 1.0).unwrap(), 0.0);
        // ∂ₓP = −2xy/(2π(x²+y²)²): at (1,1) this is −1/(4π)
        let v = poisson_kernel_dx(1, 1.0, 1.0).unwrap();
        assert!((v + 1.0 / (4.0 * PI)).abs() < 1e-15, "{v}");
    }

    #[test]
    fn derivatives_cross_checked_by_central_differences() {
        for n in 1..=4usize {
            for &(x, y) in &[(0.5, 0.7), (-1.3, 0.4)] {
                let h = 1e-4;
                let fd = (poisson_kernel_dx(n - 1, x + h, y).unwrap()
                    - poisson_kernel_dx(n - 1, x - h, y).unwrap())
                    / (2.0 * h);
                let an = poisson_kernel_dx(n, x, y).unwrap();
                assert!(
                    (fd - an).abs() <= 1e-6 * an.abs().max(1.0),
                    "n={n} ({x},{y}): {fd} vs {an}"
                );
            }
        }
    }

    #[test]
    fn kernel_is_harmonic_off_the_origin() {
        let r = harmonic_residual(|x, y| poisson_kernel(x, y).unwrap(), &[1.0], 1.0, 1e-3);
        assert!(r.abs() < 1e-4, "residual {r}");
        let r2 = harmonic_residual(
            |x, y| poisson_kernel(x, y).unwrap(),
            &[0.8, -0.5],
            0.6,
            1e-3,
        );
        assert!(r2.abs() < 1e-4, "residual {r2}");
    }

    #[test]
    fn non_harmonic_field_shows_its_laplacian() {
        let r = harmonic_residual(|x, _| x[0] * x[0], &[0.4], 0.2, 1e-3);
        assert!((r - 2.0).abs() < 1e-6);
    }

    #[test]
    fn derivative_envelope_stable_across_radii() {
        // |∂ⁿP|·|(x,y)|^{n+1}/n! bounded by C·Hⁿ with stable (C, H)
        let orders: Vec<usize> = (0..=20).collect();
        let mut fits = Vec::new();
        for &r in &[0.1, 1.0, 10.0] {
            let points: Vec<(f64, f64)> = (0..16)
                .map(|i| {
                    let th = 0.15 + i as f64 * 0.18;
                    (r * th.cos(), r * th.sin())
                })
                .collect();
            fits.push(kernel_derivative_envelope(&orders, &points).unwrap());
        }
        for w in fits.windows(2) {
            assert!((w[0].1 - w[1].1).abs() / w[0].1 < 0.2, "H drifts: {fits:?}");
        }
        for (c, h) in fits {
            assert!(c.is_finite() && h < 4.0, "C = {c}, H = {h}");
        }
    }
}
