//! Adaptive Simpson quadrature for the logarithmic-integral family.

/// integral_2^x dt / ln^k(t) by adaptive Simpson with Richardson
/// extrapolation, driven to the given relative tolerance. The initial
/// panels double geometrically from 2, matching how slowly the
/// integrand varies at large t.
pub(crate) fn log_power_integral(k: u32, x: f64, rel_tol: f64) -> f64 {
    debug_assert!(k >= 1);
    if x <= 2.0 {
        return 0.0;
    }
    let f = move |t: f64| 1.0 / t.ln().powi(k as i32);

    let mut edges = vec![2.0];
    let mut e = 4.0;
    while e < x {
        edges.push(e);
        e *= 2.0;
    }
    edges.push(x);

    // a coarse pass per panel fixes the absolute error budget
    let mut coarse = 0.0;
    let mut panels = Vec::with_capacity(edges.len() - 1);
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
        let s = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        coarse += s;
        panels.push((a, b, fa, fm, fb, s));
    }
    let tol = (coarse.abs() * rel_tol).max(f64::MIN_POSITIVE) / panels.len() as f64;

    panels
        .into_iter()
        .map(|(a, b, fa, fm, fb, s)| adaptive(&f, a, b, fa, fm, fb, s, tol, 48))
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
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
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let refined = left + right;
    if depth == 0 || (refined - whole).abs() <= 15.0 * tol {
        return refined + (refined - whole) / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_width_and_inverted_ranges() {
        assert_eq!(log_power_integral(1, 2.0, 1e-9), 0.0);
        assert_eq!(log_power_integral(2, 1.5, 1e-9), 0.0);
    }

    #[test]
    fn tightening_the_tolerance_is_consistent() {
        for (k, x) in [(1u32, 1e6), (2, 1e8), (3, 1e5)] {
            let loose = log_power_integral(k, x, 1e-9);
            let tight = log_power_integral(k, x, 5e-11);
            assert!(
                (loose - tight).abs() <= 2e-9 * tight.abs(),
                "k = {k}, x = {x}: {loose} vs {tight}"
            );
        }
    }
}
