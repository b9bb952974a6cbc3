//! Adaptive Simpson quadrature, used by the built-in consistency checks to
//! integrate sharply peaked spectra against their closed forms.

/// Integrate `f` over `[a, b]` with adaptive Simpson refinement to the
/// given relative tolerance. `max_depth` caps the recursion; 50 is plenty
/// for the Lorentzians integrated here.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, rel_tol * whole.abs().max(f64::MIN_POSITIVE), 50)
}

/// Integrate a peaked function by splitting `[a, b]` at points bracketing
/// the peak, so the adaptive refinement does not step over it. `center`
/// and `width` locate the feature.
pub fn integrate_peaked<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    center: f64,
    width: f64,
    rel_tol: f64,
) -> f64 {
    let mut cuts = vec![a];
    for k in [-1000.0, -30.0, -3.0, 3.0, 30.0, 1000.0] {
        let x = center + k * width;
        if x > a && x < b {
            cuts.push(x);
        }
    }
    cuts.push(b);
    cuts.windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], rel_tol))
        .sum()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}
