use std::f64::consts::PI;

/// `ln(sin u / u)`, smooth on `[0, π)`.
fn log_sinc(u: f64) -> f64 {
    if u < 1e-4 {
        let u2 = u * u;
        -u2 / 6.0 - u2 * u2 / 180.0
    } else {
        (u.sin() / u).ln()
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) + adapt(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    adapt(f, a, b, fa, fm, fb, whole, eps, 48)
}

/// Lobachevsky function `Λ(θ) = −∫₀^θ ln|2 sin u| du`, by quadrature.
///
/// The logarithmic singularity at 0 is split off: `ln(2 sin u) = ln(2u) + ln(sin u / u)`.
pub fn lobachevsky(theta: f64) -> f64 {
    // π-periodic and odd
    let mut th = theta.rem_euclid(PI);
    let mut sign = 1.0;
    if th > PI / 2.0 {
        th = PI - th;
        sign = -1.0;
    }
    if th == 0.0 {
        return 0.0;
    }
    let singular = th * (2.0 * th).ln() - th;
    let smooth = integrate(&log_sinc, 0.0, th, 1e-15);
    sign * -(singular + smooth)
}

/// `½ Σ_{n≤terms} sin(2nθ)/n²`, summed from the tail.
pub fn lobachevsky_series(theta: f64, terms: usize) -> f64 {
    let mut s = 0.0;
    for n in (1..=terms).rev() {
        let n = n as f64;
        s += (2.0 * n * theta).sin() / (n * n);
    }
    0.5 * s
}

/// Volume of the regular ideal tetrahedron, `3Λ(π/3)`.
pub fn v3() -> f64 {
    3.0 * lobachevsky(PI / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!((v3() - 1.0149416064096536).abs() < 1e-12);
        // Λ(π/6) = (3/2)Λ(π/3)
        assert!((lobachevsky(PI / 6.0) - 1.5 * lobachevsky(PI / 3.0)).abs() < 1e-12);
        assert!(lobachevsky(PI / 2.0).abs() < 1e-12);
        assert!((lobachevsky(-0.4) + lobachevsky(0.4)).abs() < 1e-14);
    }

    #[test]
    fn series_agrees() {
        for th in [0.3, PI / 3.0, 1.2] {
            assert!((lobachevsky(th) - lobachevsky_series(th, 200_000)).abs() < 1e-9);
        }
    }
}
