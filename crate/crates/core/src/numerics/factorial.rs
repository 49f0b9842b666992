//! Cached log-factorial table.

use std::sync::OnceLock;

/// Largest index served by [`log_factorial`]. Sequence caps beyond this are
/// rejected at construction time.
pub const LOG_FACTORIAL_CAP: usize = 8192;

static TABLE: OnceLock<Vec<f64>> = OnceLock::new();

/// `log(p!)` as a cumulative sum of `ln k`, exact at `p = 0, 1`.
///
/// The table is built once and shared; concurrent readers observe a
/// consistent slice.
pub fn log_factorial(p: usize) -> f64 {
    assert!(
        p <= LOG_FACTORIAL_CAP,
        "log_factorial index {p} exceeds cap {LOG_FACTORIAL_CAP}"
    );
    let table = TABLE.get_or_init(|| {
        let mut v = vec![0.0; LOG_FACTORIAL_CAP + 1];
        for k in 1..=LOG_FACTORIAL_CAP {
            v[k] = v[k - 1] + (k as f64).ln();
        }
        v
    });
    table[p]
}
