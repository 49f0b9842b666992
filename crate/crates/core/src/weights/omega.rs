//! Weight functions `ω` and their Young-type conjugates `φ*` and `ω⋆`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::maximize_on;

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A continuous increasing function `ω: [0, ∞) → [0, ∞)` with `ω ≡ 0` on
/// `[0, 1]`, together with `φ(t) = ω(eᵗ)` and the conjugates
/// `φ*(t) = sup_r {tr − φ(r)}` and `ω⋆(s) = sup_t {ω(t) − ts}`.
///
/// Construction does not verify the weight-function axioms; use
/// [`validate_weight_function`] to check them on a grid.
#[derive(Clone)]
pub struct WeightFunction {
    label: String,
    eval: Eval,
    phi_star_closed: Option<Eval>,
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightFunction")
            .field("label", &self.label)
            .field("closed_conjugate", &self.phi_star_closed.is_some())
            .finish()
    }
}

/// Upper cap for bracket expansion in the conjugate sups.
const BRACKET_CAP: f64 = 1e9;

impl WeightFunction {
    /// `ω(t) = log²(max(t, 1))`, so `φ(t) = t²` and `φ*(s) = s²/4`.
    pub fn log_squared() -> Self {
        WeightFunction {
            label: "log_squared".into(),
            eval: Arc::new(|t: f64| {
                let l = t.max(1.0).ln();
                l * l
            }),
            phi_star_closed: Some(Arc::new(|s: f64| 0.25 * s * s)),
        }
    }

    /// `ω(t) = √t − 1` for `t ≥ 1`, zero below; `φ(t) = e^{t/2} − 1`.
    pub fn sqrt_shifted() -> Self {
        WeightFunction {
            label: "sqrt_shifted".into(),
            eval: Arc::new(|t: f64| if t <= 1.0 { 0.0 } else { t.sqrt() - 1.0 }),
            phi_star_closed: None,
        }
    }

    /// Weight function from an arbitrary evaluator; no closed-form conjugate.
    pub fn custom(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        WeightFunction {
            label: label.into(),
            eval: Arc::new(f),
            phi_star_closed: None,
        }
    }

    /// Looks up a named weight function (`log_squared`, `sqrt_shifted`).
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "log_squared" => Ok(Self::log_squared()),
            "sqrt_shifted" => Ok(Self::sqrt_shifted()),
            other => Err(Error::InvalidArgument(format!(
                "unknown weight function '{other}' (known: log_squared, sqrt_shifted)"
            ))),
        }
    }

    /// `ₕω = h·ω(t)`. Its conjugate transforms as `(ₕφ)*(s) = h·φ*(s/h)`.
    pub fn scaled_value(&self, h: f64) -> Self {
        let inner = self.eval.clone();
        let closed = self.phi_star_closed.clone().map(|c| -> Eval {
            Arc::new(move |s: f64| h * c(s / h))
        });
        WeightFunction {
            label: format!("{h}*[{}]", self.label),
            eval: Arc::new(move |t: f64| h * inner(t)),
            phi_star_closed: closed,
        }
    }

    /// `ω_h = ω(h·t)`. Its conjugate transforms as `(φ_h)*(s) = φ*(s) − s·log h`.
    pub fn scaled_arg(&self, h: f64) -> Self {
        let inner = self.eval.clone();
        let closed = self.phi_star_closed.clone().map(|c| -> Eval {
            Arc::new(move |s: f64| c(s) - s * h.ln())
        });
        WeightFunction {
            label: format!("[{}]_{h}", self.label),
            eval: Arc::new(move |t: f64| inner(h * t)),
            phi_star_closed: closed,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `ω(t)`.
    pub fn omega(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    /// `φ(t) = ω(eᵗ)`.
    pub fn phi(&self, t: f64) -> f64 {
        (self.eval)(t.exp())
    }

    /// `φ*(t)`, using the closed form when one is attached.
    pub fn phi_star(&self, t: f64) -> Result<f64> {
        if let Some(c) = &self.phi_star_closed {
            if t < 0.0 {
                return Err(Error::Domain(format!("phi_star requires t >= 0, got {t}")));
            }
            return Ok(c(t));
        }
        self.phi_star_numeric(t)
    }

    /// `φ*(t) = sup_{r ≥ 0} {tr − φ(r)}` by bracket expansion plus
    /// golden-section refinement on the concave maximand.
    ///
    /// Accurate to about `1e-8` for smooth `φ`; fails with a truncation error
    /// if the maximand is still climbing at the bracket cap.
    pub fn phi_star_numeric(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::Domain(format!("phi_star requires t >= 0, got {t}")));
        }
        let g = |r: f64| t * r - self.phi(r);
        // φ(0) = ω(1) = 0, so g(0) = 0 and the sup is at least 0.
        let mut hi = 1.0;
        while g(hi) >= g(0.5 * hi) {
            hi *= 2.0;
            if hi > BRACKET_CAP {
                return Err(Error::Truncation(format!(
                    "phi_star bracket for t = {t} exceeded cap {BRACKET_CAP}"
                )));
            }
        }
        let (_, v) = maximize_on(g, 0.0, hi, 1e-11 * (1.0 + hi));
        Ok(v.max(0.0))
    }

    /// `ω⋆(s) = sup_{t ≥ 0} {ω(t) − ts}` for `s > 0`, defined when
    /// `ω(t) = o(t)`.
    ///
    /// Sublinearity is checked on a diagnostic grid first; the sup is located
    /// by a coarse dyadic scan followed by golden-section refinement.
    pub fn omega_star(&self, s: f64) -> Result<f64> {
        if s <= 0.0 {
            return Err(Error::Domain(format!("omega_star requires s > 0, got {s}")));
        }
        self.check_sublinear()?;
        // ω ≡ 0 on [0, 1] makes the maximand nonpositive there except at 0.
        let h = |t: f64| self.omega(t) - t * s;
        let mut best_t = 0.0;
        let mut best_v = 0.0; // h(0) = 0
        let mut t = 1.0;
        let mut since_best = 0;
        let mut prev_t = 0.5;
        let mut prev2_t = 0.25;
        let mut bracket: Option<(f64, f64)> = None;
        while t <= BRACKET_CAP {
            let v = h(t);
            if v > best_v {
                best_v = v;
                best_t = t;
                since_best = 0;
                bracket = Some((prev_t, t * 2.0));
            } else {
                since_best += 1;
            }
            // sublinear ω: once the maximand has dropped well below the best
            // for several doublings it cannot recover
            if since_best >= 6 && v < best_v - 10.0 * (1.0 + best_v.abs()) {
                break;
            }
            prev2_t = prev_t;
            prev_t = t;
            t *= 2.0;
        }
        let _ = prev2_t;
        if best_t == 0.0 {
            return Ok(0.0);
        }
        let (lo, hi) = bracket.unwrap_or((best_t * 0.5, best_t * 2.0));
        let hi = hi.min(BRACKET_CAP);
        let (_, v) = maximize_on(h, lo.max(0.0), hi, 1e-11 * (1.0 + hi));
        Ok(v.max(0.0))
    }

    /// Verifies `ω(t)/t → 0` on the diagnostic grid `t = 10^k, k = 2..8`.
    pub fn check_sublinear(&self) -> Result<()> {
        let mut prev = f64::INFINITY;
        for k in 2..=8 {
            let t = 10f64.powi(k);
            let ratio = self.omega(t) / t;
            if ratio > prev + 1e-12 {
                return Err(Error::Domain(format!(
                    "omega is not sublinear: omega(t)/t increases at t = {t}"
                )));
            }
            prev = ratio;
        }
        if prev > 0.05 {
            return Err(Error::Domain(format!(
                "omega is not sublinear: omega(t)/t = {prev} at t = 1e8"
            )));
        }
        Ok(())
    }
}

/// Checks the weight-function axioms on a log-spaced grid up to `t_max`:
/// nonnegativity, `ω(1) = 0`, monotonicity, and three-point convexity of
/// `φ(t) = ω(eᵗ)`.
pub fn validate_weight_function(omega: &WeightFunction, t_max: f64, n: usize) -> Result<()> {
    if omega.omega(1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "omega(1) = {}, expected 0",
            omega.omega(1.0)
        )));
    }
    let mut prev = 0.0f64;
    for i in 0..=n {
        let t = (t_max.ln() * i as f64 / n as f64).exp();
        let v = omega.omega(t);
        if v < -1e-12 {
            return Err(Error::Domain(format!("omega({t}) = {v} < 0")));
        }
        if v < prev - 1e-10 * (1.0 + prev.abs()) {
            return Err(Error::Domain(format!("omega decreases at t = {t}")));
        }
        prev = v;
    }
    let r_max = t_max.ln();
    for i in 0..n {
        let a = r_max * i as f64 / n as f64;
        let b = r_max * (i + 2).min(n) as f64 / n as f64;
        let mid = 0.5 * (a + b);
        let lhs = omega.phi(mid);
        let rhs = 0.5 * (omega.phi(a) + omega.phi(b));
        if lhs > rhs + 1e-9 * (1.0 + rhs.abs()) {
            return Err(Error::Domain(format!(
                "phi fails three-point convexity near t = {mid}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_squared_phi_is_t_squared() {
        let w = WeightFunction::log_squared();
        assert_eq!(w.phi(0.0), 0.0);
        assert!((w.phi(2.0) - 4.0).abs() < 1e-12);
        assert!((w.phi(3.5) - 12.25).abs() < 1e-12);
    }

    #[test]
    fn quadratic_conjugate_closed_and_numeric_agree() {
        let w = WeightFunction::log_squared();
        for &s in &[0.0, 0.5, 1.0, 2.0, 7.5, 30.0] {
            let closed = w.phi_star(s).unwrap();
            let numeric = w.phi_star_numeric(s).unwrap();
            assert!((closed - 0.25 * s * s).abs() < 1e-14);
            assert!(
                (numeric - closed).abs() < 1e-8,
                "s = {s}: numeric {numeric} vs closed {closed}"
            );
        }
    }

    #[test]
    fn phi_star_at_zero_is_zero() {
        for w in [WeightFunction::log_squared(), WeightFunction::sqrt_shifted()] {
            assert!(w.phi_star(0.0).unwrap().abs() < 1e-10, "{}", w.label());
        }
    }

    #[test]
    fn conjugate_involution_recovers_phi() {
        // (φ*)* = φ at interior sample points, via the same sup oracle.
        let w = WeightFunction::log_squared();
        for &t in &[0.3, 1.0, 2.2, 4.0] {
            let direct = w.phi(t);
            // numeric double conjugate: sup_s { t s − φ*(s) }
            let g = |s: f64| t * s - w.phi_star(s).unwrap();
            let mut hi = 1.0;
            while g(hi) >= g(0.5 * hi) {
                hi *= 2.0;
            }
            let (_, v) = maximize_on(g, 0.0, hi, 1e-11 * (1.0 + hi));
            assert!(
                (v.max(0.0) - direct).abs() < 1e-6,
                "t = {t}: involution {v} vs phi {direct}"
            );
        }
    }

    #[test]
    fn omega_star_by_golden_oracle() {
        // independent 1-d maximization oracle on a dense grid
        let w = WeightFunction::log_squared();
        for &s in &[0.05, 0.2, 1.0, 3.0] {
            let got = w.omega_star(s).unwrap();
            let mut oracle = 0.0f64;
            let mut t = 1.0;
            while t < 1e8 {
                oracle = oracle.max(w.omega(t) - t * s);
                t *= 1.0005;
            }
            assert!(
                (got - oracle).abs() < 1e-6 * (1.0 + oracle),
                "s = {s}: {got} vs oracle {oracle}"
            );
            assert!(got >= oracle - 1e-9);
        }
    }

    #[test]
    fn omega_star_vanishes_for_large_s() {
        // ω ≡ 0 on [0,1] forces the maximizer to t ≤ 1 once s dominates.
        let w = WeightFunction::log_squared();
        assert_eq!(w.omega_star(50.0).unwrap(), 0.0);
    }

    #[test]
    fn omega_star_monotone_nonincreasing() {
        let w = WeightFunction::log_squared();
        let mut prev = f64::INFINITY;
        for &s in &[0.01, 0.1, 0.5, 1.0, 5.0, 20.0] {
            let v = w.omega_star(s).unwrap();
            assert!(v <= prev + 1e-10);
            prev = v;
        }
    }

    #[test]
    fn scaling_identities() {
        // (ₕω)⋆(s) = h ω⋆(s/h) and (ω_h)⋆(s) = ω⋆(s/h)
        let w = WeightFunction::log_squared();
        for &h in &[0.5, 2.0] {
            for &s in &[0.05, 0.3, 1.0, 4.0] {
                let lhs = w.scaled_value(h).omega_star(s).unwrap();
                let rhs = h * w.omega_star(s / h).unwrap();
                assert!((lhs - rhs).abs() < 1e-8, "value-scaled h={h} s={s}");
                let lhs2 = w.scaled_arg(h).omega_star(s).unwrap();
                let rhs2 = w.omega_star(s / h).unwrap();
                assert!((lhs2 - rhs2).abs() < 1e-8, "arg-scaled h={h} s={s}");
            }
        }
    }

    #[test]
    fn linear_weight_rejected_by_sublinearity_check() {
        let w = WeightFunction::custom("linear", |t| (t - 1.0).max(0.0));
        assert!(matches!(w.omega_star(0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn axioms_validate_on_grid() {
        validate_weight_function(&WeightFunction::log_squared(), 1e6, 200).unwrap();
        validate_weight_function(&WeightFunction::sqrt_shifted(), 1e6, 200).unwrap();
    }
}
