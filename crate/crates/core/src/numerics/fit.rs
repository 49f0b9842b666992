//! Least-squares fits and log-linear envelopes.

/// Least-squares line fit returning `(intercept, slope)`.
pub fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "line_fit needs at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    line_fit(xs, ys).1
}

/// Minimal-at-truncation witnesses for `d_p ≤ log C + p·log H`, `p = 0..len`.
///
/// `log H` is the largest increment of `d` (the smallest geometric rate that
/// can dominate the sequence at this truncation), and `log C` is the residual
/// maximum for that rate. Returns `(log_c, log_h)`.
pub fn linear_envelope(d: &[f64]) -> (f64, f64) {
    assert!(!d.is_empty());
    if d.len() == 1 {
        return (d[0], 0.0);
    }
    let log_h = d
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let log_c = d
        .iter()
        .enumerate()
        .map(|(p, &dp)| dp - p as f64 * log_h)
        .fold(f64::NEG_INFINITY, f64::max);
    (log_c, log_h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        let (b, a) = line_fit(&xs, &ys);
        assert!((a - 2.5).abs() < 1e-12);
        assert!((b + 1.0).abs() < 1e-12);
    }

    #[test]
    fn envelope_dominates_sequence() {
        let d = [0.0, 1.2, 1.9, 2.1, 3.4];
        let (log_c, log_h) = linear_envelope(&d);
        for (p, &dp) in d.iter().enumerate() {
            assert!(dp <= log_c + p as f64 * log_h + 1e-12);
        }
        // the rate is the max increment (1.3 between the last two entries)
        assert!((log_h - 1.3).abs() < 1e-12);
    }
}
