//! Weight sequences stored as log tables.

use crate::error::{Error, Result};
use crate::numerics::log_factorial;
use crate::weights::omega::WeightFunction;

/// Recognized closed-form families; used for shortcut verdicts where the
/// asymptotic condition is known analytically.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceFamily {
    /// `M_p = (p!)^s`.
    Gevrey { s: f64 },
    /// `M_p = exp(φ*(hp)/h)` for a named weight function.
    FromOmega { omega: String, h: f64 },
    /// Explicit table, no closed form.
    Table,
}

/// A positive sequence `M = (M_p)_{p ≤ P_max}` with `M_0 = 1`, stored as
/// `log M_p` to avoid overflow (`(p!)²` overflows doubles near `p = 85`).
///
/// Values are immutable after construction; all accessors are pure.
#[derive(Debug, Clone)]
pub struct WeightSequence {
    label: String,
    family: SequenceFamily,
    log_m: Vec<f64>,
}

/// Result of an associated-function evaluation `ω_M(t) = max_p (p log t − log M_p)`.
#[derive(Debug, Clone, Copy)]
pub struct AssocValue {
    pub value: f64,
    /// Index attaining the max.
    pub attained: usize,
    /// True when the max sits at `P_max`: the untruncated sup may be larger.
    pub saturated: bool,
}

impl WeightSequence {
    /// Gevrey sequence `M_p = (p!)^s`, `s ≥ 1`.
    pub fn gevrey(s: f64, p_max: usize) -> Result<Self> {
        if !(s >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "gevrey exponent must satisfy s >= 1, got {s}"
            )));
        }
        Ok(Self::gevrey_power(s, p_max))
    }

    /// `(p!)^s` for any `s ≥ 0`; `s < 1` arises for quotient sequences like
    /// `M* = M/p!` and is not a weight sequence on its own.
    pub fn gevrey_power(s: f64, p_max: usize) -> Self {
        let log_m = (0..=p_max).map(|p| s * log_factorial(p)).collect();
        WeightSequence {
            label: format!("(p!)^{s}"),
            family: SequenceFamily::Gevrey { s },
            log_m,
        }
    }

    /// Sequence from an explicit `log M_p` table. `log M_0` must be 0.
    pub fn from_log_table(label: impl Into<String>, log_m: Vec<f64>) -> Result<Self> {
        if log_m.len() < 2 {
            return Err(Error::InvalidArgument(
                "log table needs at least two entries".into(),
            ));
        }
        if log_m[0].abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "M_0 must be 1 (log M_0 = {}, expected 0)",
                log_m[0]
            )));
        }
        if log_m.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("log table has non-finite entries".into()));
        }
        let mut log_m = log_m;
        log_m[0] = 0.0;
        Ok(WeightSequence {
            label: label.into(),
            family: SequenceFamily::Table,
            log_m,
        })
    }

    /// The sequence `M^h_ω` with `log M_p = φ*(hp)/h`.
    pub fn from_weight_function(omega: &WeightFunction, h: f64, p_max: usize) -> Result<Self> {
        if h <= 0.0 {
            return Err(Error::InvalidArgument(format!("h must be positive, got {h}")));
        }
        let mut log_m = Vec::with_capacity(p_max + 1);
        for p in 0..=p_max {
            log_m.push(omega.phi_star(h * p as f64)? / h);
        }
        Ok(WeightSequence {
            label: format!("M^{h}_[{}]", omega.label()),
            family: SequenceFamily::FromOmega {
                omega: omega.label().to_string(),
                h,
            },
            log_m,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> &SequenceFamily {
        &self.family
    }

    pub fn p_max(&self) -> usize {
        self.log_m.len() - 1
    }

    /// `log M_p`.
    pub fn log_m(&self, p: usize) -> f64 {
        self.log_m[p]
    }

    /// `log m_p = log M_p − log M_{p−1}` for `1 ≤ p ≤ P_max`.
    pub fn log_quotient(&self, p: usize) -> f64 {
        assert!(p >= 1 && p <= self.p_max());
        self.log_m[p] - self.log_m[p - 1]
    }

    /// `log m*_p = log(m_p / p)`.
    pub fn log_quotient_star(&self, p: usize) -> f64 {
        self.log_quotient(p) - (p as f64).ln()
    }

    /// `log M*_p = log(M_p / p!)`.
    pub fn log_m_star(&self, p: usize) -> f64 {
        self.log_m[p] - log_factorial(p)
    }

    /// The sequence `M* = (M_p / p!)`.
    pub fn star(&self) -> WeightSequence {
        let log_m = (0..=self.p_max()).map(|p| self.log_m_star(p)).collect();
        let family = match &self.family {
            SequenceFamily::Gevrey { s } if *s >= 1.0 => SequenceFamily::Gevrey { s: s - 1.0 },
            _ => SequenceFamily::Table,
        };
        WeightSequence {
            label: format!("{}*", self.label),
            family,
            log_m,
        }
    }

    /// True if `log m_p` is nondecreasing within `1e-12`, i.e. `M` is
    /// log-convex at this truncation.
    pub fn is_log_convex(&self) -> bool {
        (2..=self.p_max()).all(|p| self.log_quotient(p) >= self.log_quotient(p - 1) - 1e-12)
    }

    /// Pointwise `self ≤ other` on the shared index range (log scale, slack
    /// `1e-12`).
    pub fn pointwise_le(&self, other: &WeightSequence) -> bool {
        let p_max = self.p_max().min(other.p_max());
        (0..=p_max).all(|p| self.log_m[p] <= other.log_m[p] + 1e-12)
    }

    /// Associated function `ω_M(t) = max_{p ≤ P_max} (p log t − log M_p)`.
    ///
    /// The `p = 0` term makes the value nonnegative. `saturated` is set when
    /// the max is attained at `P_max`, in which case the true sup may exceed
    /// the returned value.
    pub fn assoc_omega(&self, t: f64) -> Result<AssocValue> {
        if t <= 0.0 {
            return Err(Error::Domain(format!(
                "associated function requires t > 0, got {t}"
            )));
        }
        let log_t = t.ln();
        let mut best = AssocValue {
            value: 0.0,
            attained: 0,
            saturated: false,
        };
        for p in 0..=self.p_max() {
            let v = p as f64 * log_t - self.log_m[p];
            if v > best.value {
                best.value = v;
                best.attained = p;
            }
        }
        best.saturated = best.attained == self.p_max();
        Ok(best)
    }

    /// Associated function on an ascending grid of `t` values.
    ///
    /// For log-convex `M` the attaining index is nondecreasing in `t`, so the
    /// sweep walks the index forward instead of rescanning; for non-convex
    /// tables it falls back to the plain scan.
    pub fn assoc_omega_grid(&self, ts: &[f64]) -> Result<Vec<AssocValue>> {
        if ts.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidArgument("grid must be ascending".into()));
        }
        if !self.is_log_convex() {
            return ts.iter().map(|&t| self.assoc_omega(t)).collect();
        }
        let mut out = Vec::with_capacity(ts.len());
        let mut p = 0usize;
        for &t in ts {
            if t <= 0.0 {
                return Err(Error::Domain(format!(
                    "associated function requires t > 0, got {t}"
                )));
            }
            let log_t = t.ln();
            let term = |p: usize| p as f64 * log_t - self.log_m[p];
            // p ↦ term(p) is concave for log-convex M: climb while it improves.
            while p + 1 <= self.p_max() && term(p + 1) >= term(p) {
                p += 1;
            }
            let mut value = term(p).max(0.0);
            let mut attained = p;
            if value == 0.0 && term(p) < 0.0 {
                attained = 0;
                value = 0.0;
            }
            out.push(AssocValue {
                value,
                attained,
                saturated: attained == self.p_max(),
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gevrey_log_table() {
        let m = WeightSequence::gevrey(2.0, 10).unwrap();
        assert_eq!(m.log_m(0), 0.0);
        assert!((m.log_m(3) - 2.0 * 6.0f64.ln()).abs() < 1e-12);
        assert!((m.log_quotient(3) - 2.0 * 3.0f64.ln()).abs() < 1e-12);
        // m*_p = p for s = 2
        assert!((m.log_quotient_star(5) - 5.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn table_must_start_at_one() {
        assert!(WeightSequence::from_log_table("bad", vec![0.5, 1.0]).is_err());
    }

    #[test]
    fn assoc_of_factorials_at_one_is_zero() {
        // M = (p!), t = 1: log(1/p!) ≤ 0 with equality at p = 0.
        let m = WeightSequence::gevrey(1.0, 100).unwrap();
        let a = m.assoc_omega(1.0).unwrap();
        assert_eq!(a.value, 0.0);
        assert_eq!(a.attained, 0);
        assert!(!a.saturated);
    }

    #[test]
    fn assoc_of_factorials_at_e_matches_exhaustive_scan() {
        // independent oracle: brute-force scan over p ≤ P_max
        let p_max = 200;
        let m = WeightSequence::gevrey(1.0, p_max).unwrap();
        let mut expect = f64::NEG_INFINITY;
        for p in 0..=p_max {
            expect = expect.max(p as f64 - log_factorial(p));
        }
        let a = m.assoc_omega(std::f64::consts::E).unwrap();
        assert!((a.value - expect).abs() < 1e-12);
        assert!(!a.saturated);
    }

    #[test]
    fn assoc_monotone_in_sequence() {
        // (p!)² ≥ p! pointwise, so ω_{(p!)²}(10) ≤ ω_{p!}(10).
        let m1 = WeightSequence::gevrey(1.0, 300).unwrap();
        let m2 = WeightSequence::gevrey(2.0, 300).unwrap();
        let a1 = m1.assoc_omega(10.0).unwrap();
        let a2 = m2.assoc_omega(10.0).unwrap();
        assert!(a2.value <= a1.value);
        // cross-check against the brute-force scan oracle
        let mut expect = 0.0f64;
        for p in 0..=300 {
            expect = expect.max(p as f64 * 10.0f64.ln() - 2.0 * log_factorial(p));
        }
        assert!((a2.value - expect).abs() < 1e-12);
    }

    #[test]
    fn assoc_domain_error() {
        let m = WeightSequence::gevrey(1.0, 10).unwrap();
        assert!(matches!(m.assoc_omega(0.0), Err(Error::Domain(_))));
        assert!(matches!(m.assoc_omega(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn grid_sweep_matches_pointwise_scan() {
        let m = WeightSequence::gevrey(2.0, 150).unwrap();
        let ts: Vec<f64> = (1..60).map(|i| 0.5 * 1.3f64.powi(i)).collect();
        let swept = m.assoc_omega_grid(&ts).unwrap();
        for (&t, a) in ts.iter().zip(&swept) {
            let direct = m.assoc_omega(t).unwrap();
            assert!(
                (a.value - direct.value).abs() < 1e-10,
                "t = {t}: {} vs {}",
                a.value,
                direct.value
            );
            assert_eq!(a.attained, direct.attained);
        }
    }

    #[test]
    fn star_of_gevrey_two_is_factorials() {
        let m = WeightSequence::gevrey(2.0, 50).unwrap();
        let star = m.star();
        let fact = WeightSequence::gevrey(1.0, 50).unwrap();
        for p in 0..=50 {
            assert!((star.log_m(p) - fact.log_m(p)).abs() < 1e-10);
        }
    }

    #[test]
    fn saturation_flag_set_at_cap() {
        let m = WeightSequence::gevrey(1.0, 20).unwrap();
        // enormous t pushes the argmax to the cap
        let a = m.assoc_omega(1e12).unwrap();
        assert!(a.saturated);
        assert_eq!(a.attained, 20);
    }
}
