//! The packing density of congruent saturated hyperballs inscribed in the
//! truncated-simplex tiling family: height function, density function,
//! sweeps, golden-section maximization, and the constructive witness that
//! density is not monotone in the hyperball height.

use crate::error::{HypackError, Result};
use crate::numfmt::fmt17;
use crate::simplex::{p_lower, p_to_s, P_UPPER};
use crate::special::arccosh_safe;
use crate::volumes::{
    base_orthoscheme_volume, hyperball_piece_volume, theta_of_p,
    truncated_orthoscheme4_volume, HyperballPieceSpec,
};
use std::f64::consts::PI;

/// Minimum distance from either domain endpoint for evaluating the density
/// (the height diverges at the lower endpoint).
pub const EVAL_GUARD: f64 = 1e-9;

/// Endpoint inset used for the default maximization bracket.
pub const OPT_GUARD: f64 = 1e-8;

/// CSV header for density sweeps.
pub const CSV_HEADER: &str = "p,s,h,theta,vol3_base,vol4_orthoscheme,vol4_hyperball,delta";

fn check_guarded(p: f64) -> Result<()> {
    p_to_s(p)?;
    let lo = p_lower() + EVAL_GUARD;
    let hi = P_UPPER - EVAL_GUARD;
    if !(p >= lo && p <= hi) {
        return Err(HypackError::DomainError {
            name: "p (endpoint guard)",
            value: p,
            lo,
            hi,
        });
    }
    Ok(())
}

/// Hyperball height of the saturated packing at parameter `p`: half the
/// distance between any two truncating planes,
/// `h(p) = 1/2 arccosh( cos(2 pi/p) / (3 cos(2 pi/p) - 1) )`.
///
/// The height diverges at the lower domain endpoint, so evaluation is
/// guarded to at least `EVAL_GUARD` inside the open interval.
pub fn height(p: f64) -> Result<f64> {
    check_guarded(p)?;
    let c = (2.0 * PI / p).cos();
    Ok(0.5 * arccosh_safe(c / (3.0 * c - 1.0))?)
}

/// All intermediate quantities of one density evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityReport {
    pub p: f64,
    pub s: f64,
    pub h: f64,
    pub theta: f64,
    pub vol3_base: f64,
    pub vol4_orthoscheme: f64,
    pub vol4_hyperball_piece: f64,
    pub delta: f64,
}

/// Local packing density at parameter `p`: the volume of the hyperball
/// piece inside one characteristic orthoscheme divided by the orthoscheme
/// volume (equal to the per-simplex ratio by the 120-fold dissection).
pub fn density(p: f64) -> Result<DensityReport> {
    check_guarded(p)?;
    let s = p_to_s(p)?;
    let h = height(p)?;
    let theta = theta_of_p(p)?;
    let vol3_base = base_orthoscheme_volume(p)?;
    let vol4_orthoscheme = truncated_orthoscheme4_volume(p)?;
    let vol4_hyperball_piece = hyperball_piece_volume(&HyperballPieceSpec {
        dim: 4,
        base_area: vol3_base,
        height: h,
    })?;
    Ok(DensityReport {
        p,
        s,
        h,
        theta,
        vol3_base,
        vol4_orthoscheme,
        vol4_hyperball_piece,
        delta: vol4_hyperball_piece / vol4_orthoscheme,
    })
}

/// Result of a density maximization run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumResult {
    pub p_opt: f64,
    pub delta_opt: f64,
    pub iterations: usize,
    pub bracket_width: f64,
}

/// Maximize the density on the default bracket
/// `[lower + OPT_GUARD, 6 - OPT_GUARD]`; see [`maximize_on`].
pub fn maximize(tol: f64) -> Result<OptimumResult> {
    maximize_on(p_lower() + OPT_GUARD, P_UPPER - OPT_GUARD, tol)
}

/// Golden-section search for the density maximum on `[lo, hi]` (clipped to
/// the guarded domain), exploiting unimodality, followed by a fixed
/// two-stage parabolic refinement whose probe spacing does not depend on
/// `tol` (so runs with different tolerances agree far beyond the bracket).
///
/// `tol` bounds the final bracket width and must lie in `[1e-14, 1e-3]`.
pub fn maximize_on(lo: f64, hi: f64, tol: f64) -> Result<OptimumResult> {
    if !(1e-14..=1e-3).contains(&tol) {
        return Err(HypackError::TolOutOfRange(tol));
    }
    let dom_lo = p_lower() + EVAL_GUARD;
    let dom_hi = P_UPPER - EVAL_GUARD;
    let mut a = lo.max(dom_lo);
    let mut b = hi.min(dom_hi);
    if !(a < b) {
        return Err(HypackError::DomainError {
            name: "bracket",
            value: lo,
            lo: dom_lo,
            hi: dom_hi,
        });
    }
    let f = |x: f64| -> Result<f64> { Ok(density(x)?.delta) };
    let gr = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut iterations = 0usize;
    let mut prev_width = f64::INFINITY;
    while b - a > tol && iterations < 400 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d)?;
        }
        iterations += 1;
        let width = b - a;
        if !(width < prev_width) {
            break; // float-resolution floor reached
        }
        prev_width = width;
    }
    let bracket_width = b - a;

    // Parabolic polish with fixed probe spacings: the vertex of the fit
    // through (x - dx, x, x + dx) locates the maximum far more precisely
    // than the bracket, and identically for every requested tolerance.
    let mut x = 0.5 * (a + b);
    for dx in [1e-4, 1e-5] {
        let x0 = (x - dx).max(dom_lo);
        let x2 = (x + dx).min(dom_hi);
        let x1 = 0.5 * (x0 + x2);
        let (f0, f1, f2) = (f(x0)?, f(x1)?, f(x2)?);
        let denom = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0);
        if denom.abs() < 1e-300 {
            break;
        }
        let num =
            (x1 - x0) * (x1 - x0) * (f1 - f2) - (x1 - x2) * (x1 - x2) * (f1 - f0);
        let xv = x1 - 0.5 * num / denom;
        if xv.is_finite() && xv > dom_lo && xv < dom_hi && (xv - x1).abs() <= 16.0 * dx
        {
            x = xv;
            iterations += 1;
        } else {
            break;
        }
    }
    let p_opt = x;
    Ok(OptimumResult {
        p_opt,
        delta_opt: f(p_opt)?,
        iterations,
        bracket_width,
    })
}

/// Uniform density sweep over `[p_from, p_to]` clipped to the guarded
/// domain, `steps >= 2` grid points inclusive of both clipped endpoints,
/// ascending in `p`.
pub fn sweep(p_from: f64, p_to: f64, steps: usize) -> Result<Vec<DensityReport>> {
    if steps < 2 {
        return Err(HypackError::DomainError {
            name: "steps",
            value: steps as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let lo = p_from.max(p_lower() + EVAL_GUARD);
    let hi = p_to.min(P_UPPER - EVAL_GUARD);
    if !(lo <= hi) {
        return Err(HypackError::DomainError {
            name: "sweep range (empty after domain clipping)",
            value: p_from,
            lo: p_lower() + EVAL_GUARD,
            hi: P_UPPER - EVAL_GUARD,
        });
    }
    let n = steps - 1;
    (0..steps)
        .map(|i| {
            let p = if i == 0 {
                lo
            } else if i == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / n as f64
            };
            density(p)
        })
        .collect()
}

/// CSV rendering of a sweep: [`CSV_HEADER`] then one row per grid point,
/// 17 significant digits, newline-terminated.
pub fn sweep_csv(p_from: f64, p_to: f64, steps: usize) -> Result<String> {
    let rows = sweep(p_from, p_to, steps)?;
    let mut out = String::with_capacity(32 + rows.len() * 200);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            r.p,
            r.s,
            r.h,
            r.theta,
            r.vol3_base,
            r.vol4_orthoscheme,
            r.vol4_hyperball_piece,
            r.delta,
        ];
        let line: Vec<String> = fields.iter().map(|&v| fmt17(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Constructive refutation of "density increases with hyperball height":
/// returns `(h1, h2, d1, d2)` with `h1 < h2` yet `d1 > d2`, taken at the
/// fixed probes `p1 = 5.19550` (near the optimum) and
/// `p2 = lower + 1e-6` (near the divergent-height endpoint).
pub fn monotonicity_witness() -> Result<(f64, f64, f64, f64)> {
    let p1 = 5.19550;
    let p2 = p_lower() + 1e-6;
    let r1 = density(p1)?;
    let r2 = density(p2)?;
    Ok((r1.h, r2.h, r1.delta, r2.delta))
}
