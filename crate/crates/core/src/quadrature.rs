//! Numerical integration oracles: adaptive Simpson for smooth integrands
//! and tanh-sinh for integrands with endpoint singularities.
//!
//! These routines exist to cross-check the closed-form volume formulas and
//! the Lobachevsky series against independent numerics; they are not on any
//! performance-critical path.

use crate::error::{HypackError, Result};
use std::f64::consts::PI;

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    whole: f64,
    m: f64,
    fm: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let (left, lm, flm) = simpson(f, a, fa, m, fm);
    let (right, rm, frm) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
        + adapt(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of a smooth integrand with relative
/// tolerance `rel_tol` (floored absolutely at 1e-300 for zero integrals).
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    // Coarse composite estimate to set the absolute tolerance scale.
    let n = 64;
    let h = (b - a) / n as f64;
    let mut coarse = 0.0;
    for i in 0..n {
        let x0 = a + i as f64 * h;
        let (s, _, _) = simpson(&f, x0, f(x0), x0 + h, f(x0 + h));
        coarse += s;
    }
    let tol = rel_tol * coarse.abs().max(1e-300);
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(&f, a, fa, b, fb);
    adapt(&f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// Tanh-sinh (double-exponential) quadrature on `[a, b]`, robust to
/// integrable endpoint singularities such as logarithms.
///
/// Node positions near an endpoint are computed as an offset *from that
/// endpoint* so the integrand sees an accurate tiny distance instead of a
/// rounded endpoint value.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let d = 0.5 * (b - a);
    const U_MAX: f64 = 4.0;

    // One node pair at |u|: returns the weighted sum of both sides.
    let eval = |u: f64| -> f64 {
        let w = 0.5 * PI * u.sinh();
        let weight = d * 0.5 * PI * u.cosh() / (w.cosh() * w.cosh());
        // q = 1 - tanh(w) computed stably; node offsets from each endpoint.
        let e = (-2.0 * w).exp();
        let q = 2.0 * e / (1.0 + e);
        let right = b - d * q;
        let left = a + d * q;
        if u == 0.0 {
            weight * f(0.5 * (a + b))
        } else {
            weight * (f(right) + f(left))
        }
    };

    let mut h = 0.5;
    let mut n = (U_MAX / h) as usize;
    let mut total = eval(0.0);
    for k in 1..=n {
        total += eval(k as f64 * h);
    }
    let mut integral = h * total;

    for _ in 0..10 {
        h *= 0.5;
        n = (U_MAX / h) as usize;
        let mut extra = 0.0;
        let mut k = 1;
        while k <= n {
            extra += eval(k as f64 * h);
            k += 2; // only odd multiples are new nodes
        }
        total += extra;
        let refined = h * total;
        let delta = (refined - integral).abs();
        integral = refined;
        if delta <= rel_tol * integral.abs().max(1e-300) {
            break;
        }
    }
    integral
}

/// `∫_0^h cosh^{n-1} t dt` by adaptive Simpson: the independent oracle for
/// the hyperball-piece closed forms.
pub fn cosh_power_integral(n: usize, h: f64) -> Result<f64> {
    if n != 3 && n != 4 && n != 5 {
        return Err(HypackError::UnsupportedDimension(n));
    }
    if !(h >= 0.0) {
        return Err(HypackError::DomainError {
            name: "height",
            value: h,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let k = (n - 1) as i32;
    Ok(adaptive_simpson(|t| t.cosh().powi(k), 0.0, h, 1e-13))
}

/// The Lobachevsky function by tanh-sinh quadrature of its defining
/// integral `-∫_0^x ln|2 sin t| dt`, valid for `|x| < pi`.  This is the
/// independent oracle for the series implementation.
pub fn lobachevsky_quadrature(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(HypackError::NonFinite(x));
    }
    if x.abs() >= PI {
        return Err(HypackError::DomainError {
            name: "x",
            value: x,
            lo: -PI,
            hi: PI,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if x > 0.0 { (0.0, x, 1.0) } else { (x, 0.0, -1.0) };
    Ok(-sign * tanh_sinh(|t| (2.0 * t.sin().abs()).ln(), lo, hi, 1e-13))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::lobachevsky;

    #[test]
    fn simpson_smooth_integrals() {
        assert!((adaptive_simpson(|x| x * x, 0.0, 1.0, 1e-12) - 1.0 / 3.0).abs() < 1e-13);
        assert!((adaptive_simpson(f64::sin, 0.0, PI, 1e-12) - 2.0).abs() < 1e-12);
        assert!(
            (adaptive_simpson(|x| (3.0 * x).exp(), 0.0, 2.0, 1e-12)
                - (6.0_f64.exp() - 1.0) / 3.0)
                .abs()
                < 1e-9
        );
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularities() {
        // ∫_0^1 ln x dx = -1.
        assert!((tanh_sinh(|x| x.ln(), 0.0, 1.0, 1e-13) + 1.0).abs() < 1e-12);
        // ∫_0^1 x^{-1/2} dx = 2.
        assert!((tanh_sinh(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-13) - 2.0).abs() < 1e-10);
        // Smooth case agrees with Simpson.
        assert!((tanh_sinh(f64::sin, 0.0, PI, 1e-13) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cosh_integral_matches_antiderivative() {
        // ∫_0^1 cosh^3 = sinh 1 + sinh^3 1 / 3.
        let expect = 1.0_f64.sinh() + 1.0_f64.sinh().powi(3) / 3.0;
        assert!((cosh_power_integral(4, 1.0).unwrap() - expect).abs() < 1e-12);
        assert_eq!(cosh_power_integral(3, 0.0).unwrap(), 0.0);
        assert!(cosh_power_integral(6, 1.0).is_err());
    }

    #[test]
    fn lobachevsky_quadrature_reference() {
        let v = lobachevsky_quadrature(PI / 6.0).unwrap();
        assert!((v - 0.507_470_803_204_826_812_51).abs() < 1e-11);
        // Agreement with the series on a few spot points, including one
        // close to each end of (0, pi).
        for &x in &[1e-4, 0.3, PI / 2.0, 2.5, PI - 1e-4] {
            let q = lobachevsky_quadrature(x).unwrap();
            let s = lobachevsky(x).unwrap();
            assert!((q - s).abs() < 1e-11, "x = {x}: quad {q} vs series {s}");
        }
        // Oddness carries over.
        assert!(
            (lobachevsky_quadrature(-0.7).unwrap() + lobachevsky_quadrature(0.7).unwrap()).abs()
                < 1e-12
        );
    }
}
