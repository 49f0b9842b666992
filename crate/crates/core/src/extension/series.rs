//! The extension series, its derivatives, and the closed-form Laplacian
//! defect `ΔΦ = S₁ + S₂ + S₃`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::cutoff::{chi, chi_d1, chi_d2};
use crate::extension::params::ExtensionParams;
use crate::numerics::{laplacian_xy, laplacian_xyz, line_fit};
use crate::testbed::{class_norm_certificate, ClassCertificate, TestFunction};
use crate::weights::WeightSequence;

/// The constructed extension `Φ = Φ₀(φ₀) + Φ₁(φ₁)`.
///
/// Evaluation at `y ≠ 0` sums only the finitely many terms whose cutoff
/// factor is still alive; at `y = 0` the trace identities
/// `Φ(·,0) = φ₀`, `∂_yΦ(·,0) = φ₁` hold bit-exactly because the surviving
/// term is the trace itself.
#[derive(Debug, Clone)]
pub struct AlmostHarmonicExtension {
    params: ExtensionParams,
    phi0: TestFunction,
    phi1: TestFunction,
    cert0: Option<ClassCertificate>,
    cert1: Option<ClassCertificate>,
    compact_eps: Option<f64>,
}

/// Builds the extension, certifying both traces against `(M, h)` first.
///
/// A zero trace needs no certificate; a nonzero trace whose certificate
/// saturates its order cap is rejected.
pub fn extend(
    phi0: TestFunction,
    phi1: TestFunction,
    params: ExtensionParams,
) -> Result<AlmostHarmonicExtension> {
    if phi0.dim() != params.dim || phi1.dim() != params.dim {
        return Err(Error::InvalidArgument(
            "trace dimension does not match extension dimension".into(),
        ));
    }
    let cap = (params.m.p_max() / 2).min(80);
    let certify = |f: &TestFunction| -> Result<Option<ClassCertificate>> {
        if f.is_zero() {
            return Ok(None);
        }
        let cert = class_norm_certificate(f, &params.m, params.h, cap)?;
        if cert.saturated {
            return Err(Error::Precondition(format!(
                "trace has no unsaturated class certificate for ({}, h = {})",
                params.m.label(),
                params.h
            )));
        }
        Ok(Some(cert))
    };
    let cert0 = certify(&phi0)?;
    let cert1 = certify(&phi1)?;
    Ok(AlmostHarmonicExtension {
        params,
        phi0,
        phi1,
        cert0,
        cert1,
        compact_eps: None,
    })
}

impl AlmostHarmonicExtension {
    pub fn params(&self) -> &ExtensionParams {
        &self.params
    }

    pub fn phi0(&self) -> &TestFunction {
        &self.phi0
    }

    pub fn phi1(&self) -> &TestFunction {
        &self.phi1
    }

    pub fn trace_certificates(&self) -> (Option<&ClassCertificate>, Option<&ClassCertificate>) {
        (self.cert0.as_ref(), self.cert1.as_ref())
    }

    pub fn compact_eps(&self) -> Option<f64> {
        self.compact_eps
    }

    /// Multiplies the extension by `ψ(y) = χ(2y/ε)`, making it vanish for
    /// `|y| ≥ ε` while leaving both traces and the near-boundary behaviour
    /// (`|y| ≤ ε/2`) untouched.
    pub fn compactify(&self, eps: f64) -> Result<Self> {
        if eps <= 0.0 {
            return Err(Error::InvalidArgument("eps must be positive".into()));
        }
        if self.compact_eps.is_some() {
            return Err(Error::InvalidArgument("extension is already compactified".into()));
        }
        let mut out = self.clone();
        out.compact_eps = Some(eps);
        Ok(out)
    }

    fn mu_h(&self) -> f64 {
        self.params.mu * self.params.h
    }

    /// Smallest `|y|` the series can be evaluated at before the `Q` table is
    /// exhausted. Grids must stay above this.
    pub fn min_active_y(&self) -> f64 {
        let idx = self.params.q.p_max() - 2;
        2.0 / (self.mu_h() * self.params.q_star(idx))
    }

    fn trace(&self, j: usize) -> &TestFunction {
        if j == 0 {
            &self.phi0
        } else {
            &self.phi1
        }
    }

    /// Raw (pre-cutoff-in-`y`) part evaluation
    /// `∂_y^{y_order} ∂_x^α Φ_j(x, y)` for `y_order ∈ {0, 1}`.
    fn part_raw(&self, j: usize, x: &[f64], y: f64, alpha: &[usize], y_order: usize) -> f64 {
        debug_assert!(y_order <= 1);
        let phi = self.trace(j);
        if phi.is_zero() {
            return 0.0;
        }
        if y == 0.0 {
            return if y_order == j {
                phi.derivative(alpha, x)
            } else {
                0.0
            };
        }
        assert!(
            y.abs() >= self.min_active_y(),
            "series depth exceeds the Q table at y = {y}; stay above min_active_y() = {}",
            self.min_active_y()
        );
        let mu_h = self.mu_h();
        let rot: usize = alpha.iter().sum();
        let mut total = 0.0;
        for mode in phi.modes() {
            let knsq = mode.k_norm_sq();
            let mut amp = mode.amplitude;
            for i in 0..phi.dim() {
                amp *= (mode.k[i] as f64).powi(alpha[i] as i32);
            }
            if amp == 0.0 {
                continue;
            }
            let mut angle = mode.phase;
            for (i, &xi) in x.iter().enumerate() {
                angle += mode.k[i] as f64 * xi;
            }
            let wave = amp
                * match rot % 4 {
                    0 => angle.cos(),
                    1 => -angle.sin(),
                    2 => -angle.cos(),
                    _ => angle.sin(),
                };
            // r = y^{2p+j} |k|^{2p} / (2p+j)!  via multiplicative recurrence
            let mut r = if j == 0 { 1.0 } else { y };
            let mut sum = 0.0;
            let mut p = 0usize;
            loop {
                let n = 2 * p + j;
                let c_n = mu_h * self.params.q_star(n);
                let arg = c_n * y;
                if arg.abs() >= 2.0 {
                    break;
                }
                if y_order == 0 {
                    sum += r * chi(arg);
                } else {
                    let dr = r * n as f64 / y;
                    sum += dr * chi(arg) + r * c_n * chi_d1(arg);
                }
                r *= knsq * y * y / (((n + 1) * (n + 2)) as f64);
                if r == 0.0 {
                    break;
                }
                p += 1;
            }
            total += wave * sum;
        }
        total
    }

    /// Raw defect decomposition `(S₁, S₂, S₃)` of part `j` at `y ≠ 0`.
    fn part_defect_raw(&self, j: usize, x: &[f64], y: f64) -> (f64, f64, f64) {
        let phi = self.trace(j);
        if phi.is_zero() || y == 0.0 {
            return (0.0, 0.0, 0.0);
        }
        assert!(
            y.abs() >= self.min_active_y(),
            "series depth exceeds the Q table at y = {y}"
        );
        let mu_h = self.mu_h();
        let (mut s1, mut s2, mut s3) = (0.0, 0.0, 0.0);
        for mode in phi.modes() {
            let knsq = mode.k_norm_sq();
            let mut angle = mode.phase;
            for (i, &xi) in x.iter().enumerate() {
                angle += mode.k[i] as f64 * xi;
            }
            let wave = mode.amplitude * angle.cos();
            let mut r = if j == 0 { 1.0 } else { y };
            let (mut m1, mut m2, mut m3) = (0.0, 0.0, 0.0);
            let mut p = 0usize;
            loop {
                let n = 2 * p + j;
                let c_n = mu_h * self.params.q_star(n);
                let arg = c_n * y;
                if arg.abs() >= 2.0 {
                    break;
                }
                let arg_next = mu_h * self.params.q_star(n + 2) * y;
                // S1 carries (−Δ)^{p+1}φ: one extra |k|² on the amplitude
                m1 += r * knsq * (chi(arg_next) - chi(arg));
                let dr = r * n as f64 / y;
                m2 += 2.0 * dr * c_n * chi_d1(arg);
                m3 += r * c_n * c_n * chi_d2(arg);
                r *= knsq * y * y / (((n + 1) * (n + 2)) as f64);
                if r == 0.0 {
                    break;
                }
                p += 1;
            }
            s1 += wave * m1;
            s2 += wave * m2;
            s3 += wave * m3;
        }
        (s1, s2, s3)
    }

    fn psi(&self, y: f64) -> (f64, f64, f64) {
        match self.compact_eps {
            None => (1.0, 0.0, 0.0),
            Some(eps) => {
                let u = 2.0 * y / eps;
                (
                    chi(u),
                    (2.0 / eps) * chi_d1(u),
                    (4.0 / (eps * eps)) * chi_d2(u),
                )
            }
        }
    }

    /// `∂_y^{y_order} ∂_x^α` of the part `Φ_j`, including the compact cutoff
    /// when present.
    pub fn part_deriv(&self, j: usize, x: &[f64], y: f64, alpha: &[usize], y_order: usize) -> f64 {
        assert!(j <= 1 && y_order <= 1);
        let (psi, dpsi, _) = self.psi(y);
        match y_order {
            0 => psi * self.part_raw(j, x, y, alpha, 0),
            _ => {
                dpsi * self.part_raw(j, x, y, alpha, 0) + psi * self.part_raw(j, x, y, alpha, 1)
            }
        }
    }

    /// `Φ(x, y)`.
    pub fn value(&self, x: &[f64], y: f64) -> f64 {
        let a = [0usize; 2];
        let alpha = &a[..self.params.dim];
        self.part_deriv(0, x, y, alpha, 0) + self.part_deriv(1, x, y, alpha, 0)
    }

    /// `∂_x^α Φ(x, y)`.
    pub fn deriv_x(&self, x: &[f64], y: f64, alpha: &[usize]) -> f64 {
        self.part_deriv(0, x, y, alpha, 0) + self.part_deriv(1, x, y, alpha, 0)
    }

    /// `∂_y Φ(x, y)`.
    pub fn deriv_y(&self, x: &[f64], y: f64) -> f64 {
        let a = [0usize; 2];
        let alpha = &a[..self.params.dim];
        self.part_deriv(0, x, y, alpha, 1) + self.part_deriv(1, x, y, alpha, 1)
    }

    /// Closed-form Laplacian defect `ΔΦ(x, y)`.
    ///
    /// Off `y = 0` this is `S₁ + S₂ + S₃` (plus the product-rule terms of the
    /// compact cutoff); at `y = 0` the `C²` limit value 0 is returned.
    pub fn defect(&self, x: &[f64], y: f64) -> f64 {
        if y == 0.0 {
            return 0.0;
        }
        let (psi, dpsi, ddpsi) = self.psi(y);
        let mut raw = 0.0;
        for j in 0..=1 {
            let (a, b, c) = self.part_defect_raw(j, x, y);
            raw += a + b + c;
        }
        if self.compact_eps.is_none() {
            return raw;
        }
        let a = [0usize; 2];
        let alpha = &a[..self.params.dim];
        let value: f64 = (0..=1).map(|j| self.part_raw(j, x, y, alpha, 0)).sum();
        let dy: f64 = (0..=1).map(|j| self.part_raw(j, x, y, alpha, 1)).sum();
        ddpsi * value + 2.0 * dpsi * dy + psi * raw
    }

    /// The three defect pieces summed over both parts (diagnostics).
    pub fn defect_decomposition(&self, x: &[f64], y: f64) -> (f64, f64, f64) {
        let mut out = (0.0, 0.0, 0.0);
        for j in 0..=1 {
            let (a, b, c) = self.part_defect_raw(j, x, y);
            out.0 += a;
            out.1 += b;
            out.2 += c;
        }
        out
    }

    /// Independent finite-difference estimate of `ΔΦ` for cross-validation.
    pub fn stencil_defect(&self, x: &[f64], y: f64, step: f64) -> f64 {
        match self.params.dim {
            1 => laplacian_xy(|xx, yy| self.value(&[xx], yy), x[0], y, step),
            _ => laplacian_xyz(|x1, x2, yy| self.value(&[x1, x2], yy), x[0], x[1], y, step),
        }
    }

    /// Number of series terms of part `j` whose cutoff factor is alive at
    /// height `y`.
    pub fn active_terms(&self, j: usize, y: f64) -> usize {
        if y == 0.0 {
            return 1;
        }
        let mu_h = self.mu_h();
        let mut count = 0;
        let mut p = 0usize;
        loop {
            let n = 2 * p + j;
            if n > self.params.q.p_max() - 2 {
                break;
            }
            if (mu_h * self.params.q_star(n) * y).abs() >= 2.0 {
                break;
            }
            count += 1;
            p += 1;
        }
        count
    }
}

/// One grid entry of the weighted defect sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DefectRow {
    pub x: f64,
    pub y: f64,
    pub defect: f64,
    /// `ω_{N*}(1/(h'|y|))`.
    pub log_weight: f64,
    pub weighted: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectNormReport {
    /// `sup |ΔΦ|·exp(ω_{N*}(1/(h'|y|)))` over the grid.
    pub value: f64,
    pub argmax: (f64, f64),
    pub h_prime: f64,
    pub rows: Vec<DefectRow>,
    /// Some weight evaluation hit the truncation cap.
    pub saturated: bool,
}

/// Grid sup of the weighted defect `|ΔΦ(x,y)|·e^{ω_{N*}(1/(h'|y|))}`.
///
/// `h_prime` defaults to `A·h` at the call sites that follow the
/// construction; finiteness plus stability under grid refinement is the pass
/// signal, asserted by the caller.
pub fn weighted_defect_norm(
    ext: &AlmostHarmonicExtension,
    n_seq: &WeightSequence,
    h_prime: f64,
    xs: &[f64],
    ys: &[f64],
) -> Result<DefectNormReport> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    if ys.iter().any(|&y| y == 0.0) {
        return Err(Error::InvalidArgument("grid must avoid y = 0".into()));
    }
    let n_star = n_seq.star();
    let per_y: Vec<(f64, f64, bool)> = ys
        .iter()
        .map(|&y| {
            let a = n_star.assoc_omega(1.0 / (h_prime * y.abs()))?;
            Ok((y, a.value, a.saturated))
        })
        .collect::<Result<_>>()?;
    let rows: Vec<DefectRow> = per_y
        .par_iter()
        .flat_map_iter(|&(y, log_weight, _)| {
            xs.iter().map(move |&x| {
                let d = ext.defect(&[x], y);
                let weighted = if d == 0.0 {
                    0.0
                } else {
                    (d.abs().ln() + log_weight).exp()
                };
                DefectRow {
                    x,
                    y,
                    defect: d,
                    log_weight,
                    weighted,
                }
            })
        })
        .collect();
    let saturated = per_y.iter().any(|&(_, _, s)| s);
    let mut value = 0.0;
    let mut argmax = (xs[0], ys[0]);
    for r in &rows {
        if r.weighted > value {
            value = r.weighted;
            argmax = (r.x, r.y);
        }
    }
    Ok(DefectNormReport {
        value,
        argmax,
        h_prime,
        rows,
        saturated,
    })
}

/// Trace-convergence slopes fitted on a geometric `y` sequence.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRateReport {
    /// Families expected to converge at order 2.
    pub quadratic: Vec<(String, f64)>,
    /// Families expected to converge at order 1.
    pub linear: Vec<(String, f64)>,
    pub min_quadratic_slope: f64,
    pub min_linear_slope: f64,
}

/// Fits `log(sup_x error)` against `log y` for the trace families: the
/// value-trace families decay quadratically, the cross-derivative families
/// linearly.
pub fn trace_rates(
    ext: &AlmostHarmonicExtension,
    x_grid: &[f64],
    y_seq: &[f64],
) -> Result<TraceRateReport> {
    if ext.params().dim != 1 {
        return Err(Error::InvalidArgument("trace rates are fitted in d = 1".into()));
    }
    if y_seq.len() < 3 {
        return Err(Error::InvalidArgument("need at least 3 levels".into()));
    }
    let alphas: [&[usize]; 3] = [&[0], &[1], &[2]];
    let mut quadratic = Vec::new();
    let mut linear = Vec::new();

    let fit = |label: String, sup_err: Vec<f64>, out: &mut Vec<(String, f64)>| {
        let xs: Vec<f64> = y_seq.iter().map(|y| y.ln()).collect();
        let ys: Vec<f64> = sup_err.iter().map(|e| e.max(1e-300).ln()).collect();
        out.push((label, line_fit(&xs, &ys).1));
    };

    for (j, phi) in [(0usize, ext.phi0().clone()), (1, ext.phi1().clone())] {
        if phi.is_zero() {
            continue;
        }
        // value-type family: Φ_j derivatives against the trace (j = 0) or
        // against 0 (j = 1), and the reverse for the y-derivative.
        for (order, alpha) in alphas.iter().enumerate() {
            if j == 1 && order > 1 {
                continue;
            }
            let sup_value: Vec<f64> = y_seq
                .iter()
                .map(|&y| {
                    x_grid
                        .iter()
                        .map(|&x| {
                            let target = if j == 0 { phi.derivative(alpha, &[x]) } else { 0.0 };
                            (ext.part_deriv(j, &[x], y, alpha, 0) - target).abs()
                        })
                        .fold(0.0, f64::max)
                })
                .collect();
            let label = format!("part{j} value, order {order}");
            if j == 0 {
                fit(label, sup_value, &mut quadratic);
            } else {
                fit(label, sup_value, &mut linear);
            }
        }
        for (order, alpha) in alphas.iter().take(2).enumerate() {
            let sup_dy: Vec<f64> = y_seq
                .iter()
                .map(|&y| {
                    x_grid
                        .iter()
                        .map(|&x| {
                            let target = if j == 1 { phi.derivative(alpha, &[x]) } else { 0.0 };
                            (ext.part_deriv(j, &[x], y, alpha, 1) - target).abs()
                        })
                        .fold(0.0, f64::max)
                })
                .collect();
            let label = format!("part{j} y-derivative, order {order}");
            if j == 0 {
                fit(label, sup_dy, &mut linear);
            } else {
                fit(label, sup_dy, &mut quadratic);
            }
        }
    }
    let min_q = quadratic.iter().map(|(_, s)| *s).fold(f64::INFINITY, f64::min);
    let min_l = linear.iter().map(|(_, s)| *s).fold(f64::INFINITY, f64::min);
    Ok(TraceRateReport {
        quadratic,
        linear,
        min_quadratic_slope: min_q,
        min_linear_slope: min_l,
    })
}
