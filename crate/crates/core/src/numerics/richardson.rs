//! Richardson extrapolation of level sequences with error-order detection.

/// Extrapolation outcome for a sequence `v_n` computed at parameters
/// `t_n = t_0 · ratio^{-n}`.
#[derive(Debug, Clone)]
pub struct Extrapolation {
    /// Extrapolated limit.
    pub value: f64,
    /// Leading error order detected from successive differences (0 if the
    /// sequence was too short or already converged).
    pub detected_order: f64,
    /// True if successive differences change sign more than once.
    pub oscillatory: bool,
    /// Difference of the last two entries in the final extrapolation column.
    pub error_estimate: f64,
}

/// Extrapolates `values` to the limit assuming an error expansion
/// `c₁ t^q + c₂ t^{q+1} + …` with `q` detected from the data.
///
/// The detected order is snapped to 1 or 2 when within 0.35 of either, which
/// covers the first-order jump pairings and second-order stencil families
/// used in this crate; two Neville elimination passes are applied.
pub fn extrapolate(values: &[f64], ratio: f64) -> Extrapolation {
    assert!(values.len() >= 2, "need at least two levels");
    assert!(ratio > 1.0);
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let sign_changes = diffs
        .windows(2)
        .filter(|w| w[0] * w[1] < 0.0 && w[0].abs() > 1e-14 && w[1].abs() > 1e-14)
        .count();
    let oscillatory = sign_changes > 1;

    // Order from the decay of consecutive differences, last few levels.
    let mut orders = Vec::new();
    for w in diffs.windows(2) {
        if w[0].abs() > 1e-300 && w[1].abs() > 1e-300 {
            let r = (w[0] / w[1]).abs();
            if r > 1e-12 {
                orders.push(r.ln() / ratio.ln());
            }
        }
    }
    let tail: Vec<f64> = orders.iter().rev().take(3).cloned().collect();
    let mut q = if tail.is_empty() {
        0.0
    } else {
        tail.iter().sum::<f64>() / tail.len() as f64
    };
    if (q - 1.0).abs() < 0.35 {
        q = 1.0;
    } else if (q - 2.0).abs() < 0.35 {
        q = 2.0;
    }

    if q <= 0.0 || oscillatory {
        // No usable trend: fall back to the finest level.
        let finest = *values.last().unwrap();
        let err = diffs.last().map(|d| d.abs()).unwrap_or(0.0);
        return Extrapolation {
            value: finest,
            detected_order: q.max(0.0),
            oscillatory,
            error_estimate: err,
        };
    }

    let mut column: Vec<f64> = values.to_vec();
    let mut order = q;
    for _ in 0..2 {
        if column.len() < 2 {
            break;
        }
        let factor = ratio.powf(order);
        column = column
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        order += 1.0;
    }
    let value = *column.last().unwrap();
    let column_err = if column.len() >= 2 {
        (column[column.len() - 1] - column[column.len() - 2]).abs()
    } else {
        diffs.last().map(|d| d.abs()).unwrap_or(0.0)
    };
    Extrapolation {
        value,
        detected_order: q,
        oscillatory,
        error_estimate: column_err,
    }
}
