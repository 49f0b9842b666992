//! Small numerical building blocks shared by the other modules: log-space
//! helpers, golden-section maximization, adaptive quadrature, Laplacian
//! stencils, least-squares fits, and Richardson extrapolation.

mod factorial;
mod fit;
mod golden;
mod quad;
mod richardson;
mod stencil;

pub use factorial::log_factorial;
pub use fit::{line_fit, linear_envelope, slope};
pub use golden::maximize_on;
pub use quad::{adaptive_rect, adaptive_simpson, adaptive_simpson_seeded, QuadResult};
pub use richardson::{extrapolate, Extrapolation};
pub use stencil::{laplacian_xy, laplacian_xyz};

/// Numerically stable `log(Σ exp(t_i))`. Returns `-inf` for an empty or
/// all-`-inf` input.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = terms.iter().map(|t| (t - m).exp()).sum();
    m + sum.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_matches_direct_sum() {
        let terms = [0.0, (2.0f64).ln(), (3.0f64).ln()];
        assert!((log_sum_exp(terms).exp() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn log_sum_exp_empty_is_neg_inf() {
        assert_eq!(log_sum_exp(std::iter::empty()), f64::NEG_INFINITY);
    }
}
