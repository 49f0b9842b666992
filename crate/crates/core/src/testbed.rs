//! Exactly differentiable test functions: finite cosine series with
//! closed-form derivatives of every order and exact powers of `(−Δ)`.
//!
//! A mode `(k, a, θ)` is the wave `a·cos(k·x + θ)`; derivatives rotate the
//! phase by quarter turns and scale the amplitude by integer powers of the
//! frequency, so no sampling or differencing is involved anywhere.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::log_sum_exp;
use crate::weights::WeightSequence;

/// A single wave `a·cos(k₁x₁ + … + k_d x_d + θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode {
    pub k: [i64; 2],
    pub amplitude: f64,
    /// Phase in radians; `−π/2` turns the mode into a sine.
    pub phase: f64,
}

impl Mode {
    pub fn k_norm_sq(&self) -> f64 {
        (self.k[0] * self.k[0] + self.k[1] * self.k[1]) as f64
    }
}

/// Finite cosine series on `ℝ^d`, `d ∈ {1, 2}`.
#[derive(Debug, Clone, Serialize)]
pub struct TestFunction {
    dim: usize,
    modes: Vec<Mode>,
    /// Reporting box `[a, b]^d`.
    domain: (f64, f64),
}

/// `cos(θ + m·π/2)` evaluated without accumulating phase error.
fn cos_rotated(theta: f64, quarter_turns: usize) -> f64 {
    match quarter_turns % 4 {
        0 => theta.cos(),
        1 => -theta.sin(),
        2 => -theta.cos(),
        _ => theta.sin(),
    }
}

impl TestFunction {
    pub fn new(dim: usize, modes: Vec<Mode>, domain: (f64, f64)) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidArgument(format!(
                "dimension must be 1 or 2, got {dim}"
            )));
        }
        if dim == 1 && modes.iter().any(|m| m.k[1] != 0) {
            return Err(Error::InvalidArgument(
                "one-dimensional mode with nonzero second frequency".into(),
            ));
        }
        Ok(TestFunction {
            dim,
            modes,
            domain,
        })
    }

    /// `a·cos(kx)` in one variable.
    pub fn cosine(k: i64, amplitude: f64) -> Self {
        TestFunction {
            dim: 1,
            modes: vec![Mode {
                k: [k, 0],
                amplitude,
                phase: 0.0,
            }],
            domain: (-std::f64::consts::PI, std::f64::consts::PI),
        }
    }

    /// `a·sin(kx)` in one variable.
    pub fn sine(k: i64, amplitude: f64) -> Self {
        TestFunction {
            dim: 1,
            modes: vec![Mode {
                k: [k, 0],
                amplitude,
                phase: -std::f64::consts::FRAC_PI_2,
            }],
            domain: (-std::f64::consts::PI, std::f64::consts::PI),
        }
    }

    /// The constant function `c` (frequency-zero mode).
    pub fn constant(c: f64) -> Self {
        Self::cosine(0, c)
    }

    /// The zero function.
    pub fn zero() -> Self {
        TestFunction {
            dim: 1,
            modes: vec![],
            domain: (-1.0, 1.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.modes.iter().all(|m| m.amplitude == 0.0)
    }

    /// Scales every amplitude by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        for m in &mut out.modes {
            m.amplitude *= c;
        }
        out
    }

    fn angle(&self, m: &Mode, x: &[f64]) -> f64 {
        let mut t = m.phase;
        for (i, &xi) in x.iter().enumerate().take(self.dim) {
            t += m.k[i] as f64 * xi;
        }
        t
    }

    /// Point evaluation.
    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        self.modes
            .iter()
            .map(|m| m.amplitude * cos_rotated(self.angle(m, x), 0))
            .sum()
    }

    /// Exact partial derivative `∂^α f(x)`.
    ///
    /// Each coordinate derivative multiplies the amplitude by `k_i^{α_i}` and
    /// rotates the phase by `|α|` quarter turns.
    pub fn derivative(&self, alpha: &[usize], x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim);
        assert_eq!(alpha.len(), self.dim);
        let total: usize = alpha.iter().sum();
        self.modes
            .iter()
            .map(|m| {
                let mut amp = m.amplitude;
                for i in 0..self.dim {
                    amp *= (m.k[i] as f64).powi(alpha[i] as i32);
                }
                amp * cos_rotated(self.angle(m, x), total)
            })
            .sum()
    }

    /// Exact `(−Δ)^p f`: each mode picks up the factor `|k|^{2p}`.
    pub fn laplacian_power(&self, p: usize) -> TestFunction {
        let modes = self
            .modes
            .iter()
            .map(|m| Mode {
                k: m.k,
                amplitude: m.amplitude * m.k_norm_sq().powi(p as i32),
                phase: m.phase,
            })
            .collect();
        TestFunction {
            dim: self.dim,
            modes,
            domain: self.domain,
        }
    }

    /// Exact full even series `Σ_p y^{2p}/(2p)!·(−Δ)^p f(x)`, which sums per
    /// mode to `a·cos(k·x + θ)·cosh(|k| y)`. Reference for the harmonic
    /// extension below its cutoff activation.
    pub fn harmonic_even_reference(&self, x: &[f64], y: f64) -> f64 {
        self.modes
            .iter()
            .map(|m| {
                m.amplitude * cos_rotated(self.angle(m, x), 0) * (m.k_norm_sq().sqrt() * y).cosh()
            })
            .sum()
    }

    /// Exact odd series `Σ_p y^{2p+1}/(2p+1)!·(−Δ)^p f(x)`, per mode
    /// `a·cos(k·x + θ)·sinh(|k| y)/|k|` (with the `k = 0` limit `y`).
    pub fn harmonic_odd_reference(&self, x: &[f64], y: f64) -> f64 {
        self.modes
            .iter()
            .map(|m| {
                let kn = m.k_norm_sq().sqrt();
                let factor = if kn == 0.0 { y } else { (kn * y).sinh() / kn };
                m.amplitude * cos_rotated(self.angle(m, x), 0) * factor
            })
            .sum()
    }
}

/// Derivative-growth certificate of a test function against `(M, h)`:
/// the sup over orders `|α| ≤ cap` of `Σ_k |a_k|·Π|k_i|^{α_i} / (h^{|α|} M_{|α|})`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassCertificate {
    pub sequence: String,
    pub h: f64,
    pub order_cap: usize,
    pub bound: f64,
    pub log_bound: f64,
    pub attained_order: usize,
    /// The sup sits at the order cap; higher orders may exceed it.
    pub saturated: bool,
}

/// Certificate sweep over all orders up to `order_cap`, in log space.
pub fn class_norm_certificate(
    f: &TestFunction,
    m: &WeightSequence,
    h: f64,
    order_cap: usize,
) -> Result<ClassCertificate> {
    if order_cap > m.p_max() {
        return Err(Error::InvalidArgument(format!(
            "order cap {order_cap} exceeds sequence cap {}",
            m.p_max()
        )));
    }
    if h <= 0.0 {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    if f.modes().is_empty() {
        return Ok(ClassCertificate {
            sequence: m.label().to_string(),
            h,
            order_cap,
            bound: 0.0,
            log_bound: f64::NEG_INFINITY,
            attained_order: 0,
            saturated: false,
        });
    }
    let mut best = f64::NEG_INFINITY;
    let mut attained = 0;
    for n in 0..=order_cap {
        // max over multi-indices with |alpha| = n of the weighted mode sum
        let mut num_log = f64::NEG_INFINITY;
        let splits: Vec<(usize, usize)> = if f.dim() == 1 {
            vec![(n, 0)]
        } else {
            (0..=n).map(|a1| (a1, n - a1)).collect()
        };
        for (a1, a2) in splits {
            let sum = log_sum_exp(f.modes().iter().map(|mode| {
                let mut lg = mode.amplitude.abs().ln();
                for (ai, ki) in [(a1, mode.k[0]), (a2, mode.k[1])] {
                    if ai > 0 {
                        if ki == 0 {
                            return f64::NEG_INFINITY;
                        }
                        lg += ai as f64 * (ki.abs() as f64).ln();
                    }
                }
                lg
            }));
            num_log = num_log.max(sum);
        }
        let v = num_log - n as f64 * h.ln() - m.log_m(n);
        if v > best {
            best = v;
            attained = n;
        }
    }
    Ok(ClassCertificate {
        sequence: m.label().to_string(),
        h,
        order_cap,
        bound: best.exp(),
        log_bound: best,
        attained_order: attained,
        saturated: attained == order_cap,
    })
}

/// Metadata attached to a generated class sample.
#[derive(Debug, Clone, Serialize)]
pub struct SampleMeta {
    /// Amplitude rule used for the decay.
    pub rule: String,
    /// Scale multiplier: the certificate is finite and unsaturated for `c·h`.
    pub c: f64,
    pub certificate: ClassCertificate,
}

/// Builds a one-dimensional sample with amplitudes `a_k = exp(−ω_M(k)/2)`,
/// `k = 1..K`, and reports the smallest dyadic `c` for which the certificate
/// at scale `c·h` is unsaturated.
pub fn make_class_sample(
    m: &WeightSequence,
    h: f64,
    k_modes: usize,
) -> Result<(TestFunction, SampleMeta)> {
    if k_modes < 1 {
        return Err(Error::InvalidArgument("need at least one mode".into()));
    }
    let mut modes = Vec::with_capacity(k_modes);
    for k in 1..=k_modes {
        let a = (-m.assoc_omega(k as f64)?.value / 2.0).exp();
        modes.push(Mode {
            k: [k as i64, 0],
            amplitude: a,
            phase: 0.0,
        });
    }
    let f = TestFunction::new(1, modes, (-std::f64::consts::PI, std::f64::consts::PI))?;
    let order_cap = (m.p_max() / 2).min(120);
    for c in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
        let cert = class_norm_certificate(&f, m, c * h, order_cap)?;
        if !cert.saturated {
            let meta = SampleMeta {
                rule: "a_k = exp(-omega_M(k)/2)".into(),
                c,
                certificate: cert,
            };
            return Ok((f, meta));
        }
    }
    Err(Error::Truncation(
        "certificate saturates for every tried scale".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_power_scales_amplitude() {
        // (−Δ) cos(x) = cos(x)
        let f = TestFunction::cosine(1, 1.0);
        let g = f.laplacian_power(1);
        assert_eq!(g.modes()[0].amplitude, 1.0);
        // (−Δ)² (cos x + cos 2x) has amplitudes 1 and 16
        let two = TestFunction::new(
            1,
            vec![
                Mode { k: [1, 0], amplitude: 1.0, phase: 0.0 },
                Mode { k: [2, 0], amplitude: 1.0, phase: 0.0 },
            ],
            (-3.0, 3.0),
        )
        .unwrap();
        let g2 = two.laplacian_power(2);
        assert_eq!(g2.modes()[0].amplitude, 1.0);
        assert_eq!(g2.modes()[1].amplitude, 16.0);
    }

    #[test]
    fn second_derivative_of_cos_three_x() {
        // ∂² cos(3x) at 0 is −9
        let f = TestFunction::cosine(3, 1.0);
        assert_eq!(f.derivative(&[2], &[0.0]), -9.0);
    }

    #[test]
    fn laplacian_powers_compose() {
        let f = TestFunction::new(
            1,
            vec![
                Mode { k: [2, 0], amplitude: 0.3, phase: 0.1 },
                Mode { k: [5, 0], amplitude: -1.1, phase: 0.0 },
            ],
            (-3.0, 3.0),
        )
        .unwrap();
        let a = f.laplacian_power(2).laplacian_power(3);
        let b = f.laplacian_power(5);
        for (ma, mb) in a.modes().iter().zip(b.modes()) {
            assert_eq!(ma.amplitude, mb.amplitude);
        }
    }

    #[test]
    fn finite_difference_agrees_with_exact_derivative() {
        let f = TestFunction::new(
            1,
            vec![
                Mode { k: [3, 0], amplitude: 0.7, phase: 0.4 },
                Mode { k: [8, 0], amplitude: -0.2, phase: -1.0 },
            ],
            (-3.0, 3.0),
        )
        .unwrap();
        let x = 0.37;
        let step = 1e-5;
        let fd = (f.eval(&[x + step]) - f.eval(&[x - step])) / (2.0 * step);
        let exact = f.derivative(&[1], &[x]);
        assert!((fd - exact).abs() / exact.abs().max(1.0) < 1e-7);
    }

    #[test]
    fn two_dim_mixed_derivative() {
        // f = cos(2x1 + 3x2): ∂x1∂x2 f = −6 cos(2x1 + 3x2)
        let f = TestFunction::new(
            2,
            vec![Mode { k: [2, 3], amplitude: 1.0, phase: 0.0 }],
            (-3.0, 3.0),
        )
        .unwrap();
        let got = f.derivative(&[1, 1], &[0.0, 0.0]);
        assert!((got + 6.0).abs() < 1e-14);
    }

    #[test]
    fn cosh_partner_matches_truncated_series() {
        // Σ_p y^{2p}/(2p)!·|k|^{2p} = cosh(|k| y), checked per mode
        let f = TestFunction::cosine(4, 1.0);
        let (x, y) = (0.2f64, 0.3f64);
        let mut series = 0.0;
        for p in 0..40usize {
            let term = y.powi(2 * p as i32) / crate::numerics::log_factorial(2 * p).exp()
                * f.laplacian_power(p).eval(&[x]);
            series += term;
        }
        let reference = f.harmonic_even_reference(&[x], y);
        assert!((series - reference).abs() < 1e-12);
    }

    #[test]
    fn certificate_of_single_cosine() {
        // f = cos x, M = (p!), h = 2: numerator is 1 at every order, so the
        // sup is 1/(2^n n!) maximized at n = 0.
        let m = WeightSequence::gevrey(1.0, 50).unwrap();
        let f = TestFunction::cosine(1, 1.0);
        let cert = class_norm_certificate(&f, &m, 2.0, 30).unwrap();
        assert!((cert.bound - 1.0).abs() < 1e-12);
        assert_eq!(cert.attained_order, 0);
        assert!(!cert.saturated);
    }

    #[test]
    fn certificate_exhaustive_sweep_oracle() {
        // a_k = exp(−√k), k = 1..40, M = ((p!)²), h = 1: compare against a
        // direct sweep done in plain arithmetic at low orders.
        let m = WeightSequence::gevrey(2.0, 60).unwrap();
        let modes: Vec<Mode> = (1..=40)
            .map(|k| Mode {
                k: [k, 0],
                amplitude: (-(k as f64).sqrt()).exp(),
                phase: 0.0,
            })
            .collect();
        let f = TestFunction::new(1, modes, (-3.0, 3.0)).unwrap();
        let cert = class_norm_certificate(&f, &m, 1.0, 25).unwrap();
        let mut oracle = f64::NEG_INFINITY;
        for n in 0..=25usize {
            let num: f64 = f
                .modes()
                .iter()
                .map(|md| md.amplitude.abs() * (md.k[0] as f64).powi(n as i32))
                .sum();
            oracle = oracle.max(num.ln() - m.log_m(n));
        }
        assert!((cert.log_bound - oracle).abs() < 1e-10);
    }

    #[test]
    fn empty_mode_list_has_zero_bound() {
        let m = WeightSequence::gevrey(1.0, 10).unwrap();
        let cert = class_norm_certificate(&TestFunction::zero(), &m, 1.0, 5).unwrap();
        assert_eq!(cert.bound, 0.0);
    }

    #[test]
    fn adding_modes_never_decreases_the_bound() {
        let m = WeightSequence::gevrey(2.0, 40).unwrap();
        let f1 = TestFunction::cosine(2, 0.5);
        let mut modes = f1.modes().to_vec();
        modes.push(Mode { k: [5, 0], amplitude: 0.1, phase: 0.0 });
        let f2 = TestFunction::new(1, modes, f1.domain()).unwrap();
        let c1 = class_norm_certificate(&f1, &m, 1.0, 20).unwrap();
        let c2 = class_norm_certificate(&f2, &m, 1.0, 20).unwrap();
        assert!(c2.bound >= c1.bound);
    }

    #[test]
    fn class_sample_gevrey_two_certifies_at_scale_four() {
        let m = WeightSequence::gevrey(2.0, 400).unwrap();
        let (_, meta) = make_class_sample(&m, 1.0, 60).unwrap();
        assert!(meta.c <= 4.0, "needed c = {}", meta.c);
    }

    #[test]
    fn class_sample_factorial_amplitudes_decay_geometrically() {
        let m = WeightSequence::gevrey(1.0, 400).unwrap();
        let (f, _) = make_class_sample(&m, 1.0, 10).unwrap();
        let a: Vec<f64> = f.modes().iter().map(|md| md.amplitude).collect();
        assert!(a.windows(2).all(|w| w[1] < w[0]));
        let oracle = (-m.assoc_omega(5.0).unwrap().value / 2.0).exp();
        assert!((a[4] - oracle).abs() < 1e-15);
    }

    #[test]
    fn single_mode_always_certifiable() {
        let m = WeightSequence::gevrey(2.0, 200).unwrap();
        let (f, meta) = make_class_sample(&m, 1.0, 1).unwrap();
        assert_eq!(f.modes().len(), 1);
        assert!(!meta.certificate.saturated);
    }
}
