//! Golden-section search.

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

/// Maximizes `f` on `[a, b]` assuming unimodality, returning `(argmax, max)`.
///
/// The interval endpoints are included as candidates, so a maximum on the
/// boundary is still reported correctly for monotone `f`.
pub fn maximize_on<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, x_tol: f64) -> (f64, f64) {
    assert!(b >= a, "maximize_on: empty interval");
    let (mut lo, mut hi) = (a, b);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > x_tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    let mut best = (mid, f(mid));
    for (x, v) in [(a, f(a)), (b, f(b)), (c, fc), (d, fd)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}
