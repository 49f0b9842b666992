//! The fixed even cutoff bump and its first two derivatives.
//!
//! `χ(t) = 1` for `|t| ≤ 1`, `χ(t) = 0` for `|t| ≥ 2`, and on the transition
//! `1 < |t| < 2`
//!
//! ```text
//! χ(t) = g(2 − |t|) / (g(2 − |t|) + g(|t| − 1)),   g(s) = exp(−1/s),
//! ```
//!
//! which is `C^∞` with `χ(1.5) = 1/2` by symmetry. The derivatives are
//! hand-differentiated closed forms; tests cross-check them against central
//! differences on the transition interior.

fn g(s: f64) -> f64 {
    (-1.0 / s).exp()
}

/// On `1 < u < 2`: numerator `a = g(2 − u)`, denominator partner
/// `b = g(u − 1)`, and their first two `u`-derivatives.
fn transition_parts(u: f64) -> (f64, f64, f64, f64, f64, f64) {
    let p = 2.0 - u;
    let q = u - 1.0;
    let a = g(p);
    let b = g(q);
    let da = -a / (p * p);
    let db = b / (q * q);
    let dda = a / (p * p * p * p) - 2.0 * a / (p * p * p);
    let ddb = b / (q * q * q * q) - 2.0 * b / (q * q * q);
    (a, b, da, db, dda, ddb)
}

/// The bump value `χ(t)`.
pub fn chi(t: f64) -> f64 {
    let u = t.abs();
    if u <= 1.0 {
        1.0
    } else if u >= 2.0 {
        0.0
    } else {
        let (a, b, ..) = transition_parts(u);
        a / (a + b)
    }
}

/// `χ′(t)`; vanishes outside `1 < |t| < 2`.
pub fn chi_d1(t: f64) -> f64 {
    let u = t.abs();
    if u <= 1.0 || u >= 2.0 {
        return 0.0;
    }
    let (a, b, da, db, ..) = transition_parts(u);
    let w1 = (da * b - a * db) / ((a + b) * (a + b));
    t.signum() * w1
}

/// `χ″(t)`; vanishes outside `1 < |t| < 2`.
pub fn chi_d2(t: f64) -> f64 {
    let u = t.abs();
    if u <= 1.0 || u >= 2.0 {
        return 0.0;
    }
    let (a, b, da, db, dda, ddb) = transition_parts(u);
    let s = a + b;
    let num1 = dda * b - a * ddb;
    let num2 = da * b - a * db;
    (num1 * s - 2.0 * num2 * (da + db)) / (s * s * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_and_support() {
        assert_eq!(chi(0.0), 1.0);
        assert_eq!(chi(1.0), 1.0);
        assert_eq!(chi(-0.7), 1.0);
        assert_eq!(chi(2.0), 0.0);
        assert_eq!(chi(5.3), 0.0);
        assert_eq!(chi(-2.4), 0.0);
        for i in 0..50 {
            let t = 1.0 + i as f64 * 0.02;
            let v = chi(t);
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn midpoint_is_half_by_symmetry() {
        assert!((chi(1.5) - 0.5).abs() < 1e-15);
        assert!((chi(-1.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn derivatives_vanish_off_the_transition() {
        for t in [0.0, 0.5, 1.0, 2.0, 3.0, -0.9, -2.5] {
            assert_eq!(chi_d1(t), 0.0);
            assert_eq!(chi_d2(t), 0.0);
        }
    }

    #[test]
    fn first_derivative_matches_central_difference() {
        let h = 1e-6;
        for i in 1..20 {
            let t = 1.05 + i as f64 * 0.045;
            let fd = (chi(t + h) - chi(t - h)) / (2.0 * h);
            let an = chi_d1(t);
            assert!(
                (fd - an).abs() <= 1e-6 * an.abs().max(1e-3),
                "t = {t}: fd {fd} vs analytic {an}"
            );
        }
    }

    #[test]
    fn second_derivative_matches_central_difference() {
        let h = 1e-5;
        for i in 1..20 {
            let t = 1.05 + i as f64 * 0.045;
            let fd = (chi(t + h) - 2.0 * chi(t) + chi(t - h)) / (h * h);
            let an = chi_d2(t);
            assert!(
                (fd - an).abs() <= 1e-4 * an.abs().max(1.0),
                "t = {t}: fd {fd} vs analytic {an}"
            );
        }
    }

    #[test]
    fn odd_symmetry_of_slope() {
        assert_eq!(chi_d1(1.5), -chi_d1(-1.5));
        assert_eq!(chi_d2(1.3), chi_d2(-1.3));
    }
}
