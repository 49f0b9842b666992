//! Extension parameters: the sequence triple `(M, N, Q)`, the growth-witness
//! constants, and the auxiliary truncation-depth function `Γ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::{check_m1_star, check_na, growth_witnesses, Verdict, WeightSequence};

/// Parameters of an almost harmonic extension.
///
/// Built from three sequences subject to
/// `M_{p+2} ≤ C₀·H₀^p·Q_p` and `Q_{p+2} ≤ C₁·H₁^p·N_p`, with `Q` satisfying
/// `(M.1)*`. The witnesses are the minimal-at-truncation pairs from the
/// growth sweep and are re-verified on construction; they determine
/// `μ = 2√(2d)·H₀` and `A = μ·H₁`.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionParams {
    #[serde(skip)]
    pub m: WeightSequence,
    #[serde(skip)]
    pub n: WeightSequence,
    #[serde(skip)]
    pub q: WeightSequence,
    pub h: f64,
    pub dim: usize,
    pub c0: f64,
    pub h0: f64,
    pub c1: f64,
    pub h1: f64,
    pub mu: f64,
    pub a_const: f64,
    /// Set when an `(NA)` check came back inconclusive rather than holding.
    pub na_caveat: bool,
}

impl ExtensionParams {
    /// Derives witnesses and constants from the sequence triple.
    pub fn derive(
        m: WeightSequence,
        n: WeightSequence,
        q: WeightSequence,
        h: f64,
        dim: usize,
    ) -> Result<Self> {
        if h <= 0.0 {
            return Err(Error::InvalidArgument(format!("h must be positive, got {h}")));
        }
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidArgument(format!(
                "dimension must be 1 or 2, got {dim}"
            )));
        }
        if !check_m1_star(&q)?.holds() {
            return Err(Error::Precondition(format!(
                "auxiliary sequence '{}' must satisfy (M.1)*",
                q.label()
            )));
        }
        let mut na_caveat = false;
        for seq in [&m, &n, &q] {
            match check_na(seq)?.verdict {
                Verdict::Holds => {}
                Verdict::Inconclusive => na_caveat = true,
                Verdict::Fails => {
                    return Err(Error::Precondition(format!(
                        "sequence '{}' fails (NA)",
                        seq.label()
                    )))
                }
            }
        }
        let w0 = growth_witnesses(&m, &q, 2)?;
        let w1 = growth_witnesses(&q, &n, 2)?;
        // re-verify both witness inequalities over the full table
        let p_cap = m.p_max().min(q.p_max());
        for p in 0..=p_cap - 2 {
            let lhs = m.log_m(p + 2);
            let rhs = w0.log_c + p as f64 * w0.log_h + q.log_m(p);
            if lhs > rhs + 1e-9 {
                return Err(Error::Precondition(format!(
                    "witness inequality M_(p+2) <= C0 H0^p Q_p fails at p = {p}"
                )));
            }
        }
        let p_cap = q.p_max().min(n.p_max());
        for p in 0..=p_cap - 2 {
            let lhs = q.log_m(p + 2);
            let rhs = w1.log_c + p as f64 * w1.log_h + n.log_m(p);
            if lhs > rhs + 1e-9 {
                return Err(Error::Precondition(format!(
                    "witness inequality Q_(p+2) <= C1 H1^p N_p fails at p = {p}"
                )));
            }
        }
        let mu = 2.0 * (2.0 * dim as f64).sqrt() * w0.h;
        let a_const = mu * w1.h;
        Ok(ExtensionParams {
            m,
            n,
            q,
            h,
            dim,
            c0: w0.c,
            h0: w0.h,
            c1: w1.c,
            h1: w1.h,
            mu,
            a_const,
            na_caveat,
        })
    }

    /// The common choice `M = N = Q`, valid for any `(NA)` sequence with
    /// `(M.1)*` such as the Gevrey family.
    pub fn from_single(m: WeightSequence, h: f64, dim: usize) -> Result<Self> {
        Self::derive(m.clone(), m.clone(), m, h, dim)
    }

    /// `log q*_p`, with the series convention `q*₀ := q*₁` for the index
    /// `2p + j = 0` (the quotient is undefined there).
    pub fn log_q_star(&self, idx: usize) -> f64 {
        let idx = idx.max(1);
        assert!(
            idx <= self.q.p_max(),
            "series depth {idx} exceeds Q table (y below min_active_y?)"
        );
        self.q.log_quotient_star(idx)
    }

    /// `q*_p` with the same convention.
    pub fn q_star(&self, idx: usize) -> f64 {
        self.log_q_star(idx).exp()
    }
}

/// The truncation-depth function
/// `Γ(t) = min {p ∈ ℕ : q*_{p+1} ≥ 1/t}`, defined for `0 < t ≤ 1/q*₁`.
///
/// `q*` must be nondecreasing (condition `(M.1)*` of `Q`); the minimal index
/// is found by binary search. At the turnaround,
/// `t^{Γ(t)} Q*_{Γ(t)} = exp(−ω_{Q*}(1/t))`.
pub fn gamma_aux(q: &WeightSequence, t: f64) -> Result<usize> {
    let log_qs1 = q.log_quotient_star(1);
    if t <= 0.0 || t.ln() > -log_qs1 + 1e-12 {
        return Err(Error::Domain(format!(
            "gamma_aux requires 0 < t <= 1/q*_1 = {}, got {t}",
            (-log_qs1).exp()
        )));
    }
    let target = -t.ln(); // log(1/t)
    let p_max = q.p_max();
    if q.log_quotient_star(p_max) < target {
        return Err(Error::Truncation(format!(
            "gamma_aux: q*_p stays below 1/t = {} up to the cap",
            (1.0 / t)
        )));
    }
    // binary search for the smallest index with log q*_idx >= target
    let (mut lo, mut hi) = (1usize, p_max);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if q.log_quotient_star(mid) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo - 1)
}
