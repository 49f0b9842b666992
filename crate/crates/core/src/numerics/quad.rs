//! Adaptive Simpson quadrature in one and two dimensions.

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// False if some panel hit the recursion depth limit before meeting its
    /// error share.
    pub converged: bool,
    pub evals: usize,
}

struct Ctx<'a, F> {
    f: &'a F,
    evals: usize,
    converged: bool,
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    (fa + 4.0 * fm + fb) * h / 6.0
}

fn recurse<F: Fn(f64) -> f64>(
    ctx: &mut Ctx<'_, F>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = (ctx.f)(lm);
    let frm = (ctx.f)(rm);
    ctx.evals += 2;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    // Factor 15 from the standard Richardson estimate for Simpson's rule.
    if delta.abs() <= 15.0 * tol || depth == 0 {
        if depth == 0 && delta.abs() > 15.0 * tol {
            ctx.converged = false;
        }
        return left + right + delta / 15.0;
    }
    recurse(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + recurse(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson integral of `f` over `[a, b]` to absolute tolerance
/// `abs_tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> QuadResult {
    adaptive_simpson_seeded(f, &[a, b], abs_tol)
}

/// Adaptive Simpson seeded with an initial partition.
///
/// `points` must be sorted ascending; each seed panel gets an equal share of
/// the error budget. Seeding lets the caller force initial resolution near a
/// known sharp feature (e.g. panels of width `≤ y/4` near a carrier).
pub fn adaptive_simpson_seeded<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    abs_tol: f64,
) -> QuadResult {
    assert!(points.len() >= 2, "need at least one panel");
    let mut ctx = Ctx {
        f: &f,
        evals: 0,
        converged: true,
    };
    let n_panels = points.len() - 1;
    let tol_share = abs_tol / n_panels as f64;
    let mut total = 0.0;
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a == b {
            continue;
        }
        debug_assert!(b > a, "seed points must be sorted");
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = ((ctx.f)(a), (ctx.f)(m), (ctx.f)(b));
        ctx.evals += 3;
        let whole = simpson(fa, fm, fb, b - a);
        total += recurse(&mut ctx, a, b, fa, fm, fb, whole, tol_share, 48);
    }
    QuadResult {
        value: total,
        converged: ctx.converged,
        evals: ctx.evals,
    }
}

/// Adaptive integral of `f(x, y)` over a rectangle, nesting a 1-d adaptive
/// pass in `x` inside an adaptive pass in `y`.
///
/// The inner tolerance is tightened so that inner-quadrature noise stays
/// below the outer error budget.
pub fn adaptive_rect<F: Fn(f64, f64) -> f64>(
    f: F,
    x_range: (f64, f64),
    y_range: (f64, f64),
    abs_tol: f64,
) -> QuadResult {
    let y_width = y_range.1 - y_range.0;
    let inner_tol = abs_tol * 0.05 / y_width.max(1.0);
    let mut inner_evals = std::cell::Cell::new(0usize);
    let inner_converged = std::cell::Cell::new(true);
    let outer = adaptive_simpson(
        |y| {
            let r = adaptive_simpson(|x| f(x, y), x_range.0, x_range.1, inner_tol);
            inner_evals.set(inner_evals.get() + r.evals);
            if !r.converged {
                inner_converged.set(false);
            }
            r.value
        },
        y_range.0,
        y_range.1,
        abs_tol,
    );
    QuadResult {
        value: outer.value,
        converged: outer.converged && inner_converged.get(),
        evals: *inner_evals.get_mut(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_integrated_exactly() {
        let r = adaptive_simpson(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12);
        // antiderivative x^4/4 - x^2 + x evaluated at 2.
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn narrow_peak_needs_adaptivity() {
        // Lorentzian of width 1e-3 centered at 0.3; exact integral over R is pi*w.
        let w = 1e-3;
        let r = adaptive_simpson(|x| w / ((x - 0.3) * (x - 0.3) + w * w), -1.0, 1.0, 1e-10);
        let exact = ((1.0 - 0.3) / w).atan() + ((1.0 + 0.3) / w).atan();
        assert!((r.value - exact).abs() < 1e-8, "err {}", r.value - exact);
    }

    #[test]
    fn rect_integrates_separable_product() {
        let r = adaptive_rect(|x, y| x.sin() * y.cos(), (0.0, 1.0), (0.0, 0.5), 1e-10);
        let exact = (1.0 - 1.0f64.cos()) * 0.5f64.sin();
        assert!((r.value - exact).abs() < 1e-9);
    }
}
