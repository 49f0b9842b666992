//! The almost harmonic extension: a `C²` extension `Φ` of a trace pair
//! `(φ₀, φ₁)` into the `y` variable whose Laplacian defect decays like
//! `exp(−ω_{N*}(1/(Ah|y|)))` as `y → 0`.
//!
//! The extension is the modified double series
//!
//! ```text
//! Φ_j(x, y) = Σ_p  y^{2p+j}/(2p+j)! · (−Δ)^p φ_j(x) · χ(μ h q*_{2p+j} y)
//! ```
//!
//! with a fixed smooth bump `χ` (≡ 1 on `[−1, 1]`, supported in `[−2, 2]`),
//! quotients `q*_p` of an auxiliary sequence `Q`, and constants `μ, A`
//! derived from growth witnesses between the three sequences involved. At
//! `y = 0` only the first term survives, so the traces are exact by
//! construction.

mod cutoff;
mod params;
mod recover;
mod series;

pub use cutoff::{chi, chi_d1, chi_d2};
pub use params::{gamma_aux, ExtensionParams};
pub use recover::{recover_trace_class, RecoverProbe, RecoverReport};
pub use series::{
    extend, trace_rates, weighted_defect_norm, AlmostHarmonicExtension, DefectNormReport,
    DefectRow, TraceRateReport,
};
