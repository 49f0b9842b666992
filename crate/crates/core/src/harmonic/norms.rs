//! Weighted sup norms `sup |F(x,y)|·e^{−ω_{M*}(1/(h·d_S(x,y)))}` against a
//! reference set `S`, and the distance-decay chain of the Poisson transform.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic::functional::Functional;
use crate::weights::WeightSequence;

/// A component of the reference set on the boundary line.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum Region1 {
    Point(f64),
    Interval(f64, f64),
}

/// Finite union of points and closed intervals in `ℝ × {0}`, with exact
/// piecewise distances.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceSet {
    pub regions: Vec<Region1>,
}

impl DistanceSet {
    pub fn point(x: f64) -> Self {
        DistanceSet {
            regions: vec![Region1::Point(x)],
        }
    }

    pub fn interval(a: f64, b: f64) -> Self {
        DistanceSet {
            regions: vec![Region1::Interval(a, b)],
        }
    }

    pub fn dist(&self, x: f64, y: f64) -> f64 {
        let mut best = f64::INFINITY;
        for r in &self.regions {
            let dx = match *r {
                Region1::Point(p) => (x - p).abs(),
                Region1::Interval(a, b) => (a - x).max(x - b).max(0.0),
            };
            best = best.min((dx * dx + y * y).sqrt());
        }
        best
    }
}

/// Result of a weighted sup-norm sweep.
#[derive(Debug, Clone, Serialize)]
pub struct FieldNormReport {
    pub value: f64,
    pub argmax: (f64, f64),
    /// Some weight evaluation hit the truncation cap.
    pub saturated: bool,
}

/// Grid sup of `|F(x,y)|·exp(−ω_{M*}(1/(h·d_S(x,y))))`.
///
/// The grid must avoid `S`; points are processed in parallel, the reduction
/// is a deterministic sequential scan.
pub fn weighted_sup_norm<F: Fn(f64, f64) -> f64 + Sync>(
    field: F,
    m: &WeightSequence,
    h: f64,
    set: &DistanceSet,
    grid: &[(f64, f64)],
) -> Result<FieldNormReport> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    let star = m.star();
    let entries: Vec<(f64, bool)> = grid
        .par_iter()
        .map(|&(x, y)| {
            let d = set.dist(x, y);
            if d == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "grid point ({x}, {y}) lies on the reference set"
                )));
            }
            let a = star.assoc_omega(1.0 / (h * d))?;
            let v = field(x, y).abs();
            let weighted = if v == 0.0 { 0.0 } else { (v.ln() - a.value).exp() };
            Ok((weighted, a.saturated))
        })
        .collect::<Result<_>>()?;
    let mut value = 0.0;
    let mut argmax = grid[0];
    let mut saturated = false;
    for (g, &(w, s)) in grid.iter().zip(&entries) {
        saturated |= s;
        if w > value {
            value = w;
            argmax = *g;
        }
    }
    Ok(FieldNormReport {
        value,
        argmax,
        saturated,
    })
}

/// One row of the decay chain: distance, raw transform value, and the
/// log-scale weighted value `log|P[f]| − ω_{N*}(c/d)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecayRow {
    pub dist: f64,
    pub value: f64,
    pub log_weighted: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayChainReport {
    pub rows: Vec<DecayRow>,
    pub c_used: f64,
    /// True when the log-weighted values do not blow up as the distance
    /// shrinks (tail max does not exceed head max).
    pub monotone_stable: bool,
}

/// Evaluates `|P[f]|·e^{−ω_{N*}(c/d)}` along a vertical path shrinking to
/// the carrier at `x_path`, at the listed distances.
pub fn poisson_decay_chain(
    f: &Functional,
    n_seq: &WeightSequence,
    c: f64,
    x_path: f64,
    dists: &[f64],
) -> Result<DecayChainReport> {
    if dists.len() < 4 {
        return Err(Error::InvalidArgument("need at least 4 distances".into()));
    }
    let star = n_seq.star();
    let mut rows = Vec::with_capacity(dists.len());
    for &d in dists {
        if d <= 0.0 {
            return Err(Error::InvalidArgument("distances must be positive".into()));
        }
        let v = f.poisson_transform(x_path, d, 1e-10)?;
        let a = star.assoc_omega(c / d)?;
        let log_weighted = if v == 0.0 {
            f64::NEG_INFINITY
        } else {
            v.abs().ln() - a.value
        };
        rows.push(DecayRow {
            dist: d,
            value: v,
            log_weighted,
        });
    }
    let half = rows.len() / 2;
    let head = rows[..half]
        .iter()
        .map(|r| r.log_weighted)
        .fold(f64::NEG_INFINITY, f64::max);
    let tail = rows[half..]
        .iter()
        .map(|r| r.log_weighted)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(DecayChainReport {
        rows,
        c_used: c,
        monotone_stable: tail <= head + 1e-9,
    })
}
