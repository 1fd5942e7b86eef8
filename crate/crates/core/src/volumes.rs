//! Closed-form hyperbolic volumes: hyperball pieces over a polyhedral base
//! (dimensions 3, 4, 5), the three-dimensional complete orthoscheme via the
//! Lobachevsky function, and the truncated four-dimensional orthoscheme via
//! the angle-defect formula.

use crate::error::{HypackError, Result};
use crate::simplex::p_to_s;
use crate::special::lobachevsky;
use std::f64::consts::PI;

/// Tolerance for the negative-volume guard: raw values below `-NEG_TOL`
/// are errors, values in `[-NEG_TOL, 0]` are rounding residue and clamp
/// to zero.
pub const NEG_TOL: f64 = 1e-12;

fn guard_nonnegative(v: f64) -> Result<f64> {
    if !v.is_finite() {
        return Err(HypackError::NonFinite(v));
    }
    if v < -NEG_TOL {
        return Err(HypackError::NegativeVolume(v));
    }
    Ok(v.max(0.0))
}

/// A hyperball piece: the solid between a hyperplane patch of area
/// `base_area` and the equidistant surface at distance `height`, in
/// hyperbolic space of dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperballPieceSpec {
    pub dim: usize,
    pub base_area: f64,
    pub height: f64,
}

/// Volume of a hyperball piece with polyhedral base:
/// `A/4 (sinh 2h + 2h)` in dimension 3,
/// `A/8 ((2/3) sinh 3h + 6 sinh h)` in dimension 4,
/// `A/16 (1/2 sinh 4h + 4 sinh 2h + 6h)` in dimension 5.
pub fn hyperball_piece_volume(spec: &HyperballPieceSpec) -> Result<f64> {
    let HyperballPieceSpec {
        dim,
        base_area: a,
        height: h,
    } = *spec;
    if !a.is_finite() {
        return Err(HypackError::NonFinite(a));
    }
    if a < -NEG_TOL {
        return Err(HypackError::NegativeVolume(a));
    }
    let a = a.max(0.0);
    if !(h >= 0.0) || !h.is_finite() {
        return Err(HypackError::DomainError {
            name: "height",
            value: h,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let v = match dim {
        3 => a / 4.0 * ((2.0 * h).sinh() + 2.0 * h),
        4 => a / 8.0 * (2.0 / 3.0 * (3.0 * h).sinh() + 6.0 * h.sinh()),
        5 => a / 16.0 * (0.5 * (4.0 * h).sinh() + 4.0 * (2.0 * h).sinh() + 6.0 * h),
        d => return Err(HypackError::UnsupportedDimension(d)),
    };
    guard_nonnegative(v)
}

/// Essential dihedral angles of a 3-orthoscheme along its path of edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoschemeAngles3 {
    pub a01: f64,
    pub a12: f64,
    pub a23: f64,
}

fn check_acute(name: &'static str, a: f64) -> Result<()> {
    if !(a > 0.0 && a < PI / 2.0) {
        return Err(HypackError::DomainError {
            name,
            value: a,
            lo: 0.0,
            hi: PI / 2.0,
        });
    }
    Ok(())
}

/// The auxiliary angle of the 3-orthoscheme volume formula:
/// `theta = atan2( sqrt(cos^2 a12 - sin^2 a01 sin^2 a23), cos a01 cos a23 )`.
///
/// The radicand must be nonnegative for a hyperbolic orthoscheme; values
/// below `-1e-12` report the excluded (Lambert-cube) regime, small negative
/// residue clamps to zero.
pub fn orthoscheme3_theta(angles: &OrthoschemeAngles3) -> Result<f64> {
    check_acute("a01", angles.a01)?;
    check_acute("a12", angles.a12)?;
    check_acute("a23", angles.a23)?;
    let (s01, c01) = angles.a01.sin_cos();
    let (s23, c23) = angles.a23.sin_cos();
    let c12 = angles.a12.cos();
    let radicand = c12 * c12 - s01 * s01 * s23 * s23;
    if radicand < -NEG_TOL {
        return Err(HypackError::LambertCubeExcluded(radicand));
    }
    Ok(radicand.max(0.0).sqrt().atan2(c01 * c23))
}

/// Volume of the complete hyperbolic 3-orthoscheme with essential angles
/// `(a01, a12, a23)`, by the Lobachevsky-function formula
/// `V = 1/4 [ Л(a01+θ) − Л(a01−θ) + Л(π/2+a12−θ) + Л(π/2−a12−θ)
///            + Л(a23+θ) − Л(a23−θ) + 2Л(π/2−θ) ]`.
pub fn orthoscheme3_volume(angles: &OrthoschemeAngles3) -> Result<f64> {
    let theta = orthoscheme3_theta(angles)?;
    let l = lobachevsky;
    let half_pi = PI / 2.0;
    let v = 0.25
        * (l(angles.a01 + theta)? - l(angles.a01 - theta)?
            + l(half_pi + angles.a12 - theta)?
            + l(half_pi - angles.a12 - theta)?
            + l(angles.a23 + theta)?
            - l(angles.a23 - theta)?
            + 2.0 * l(half_pi - theta)?);
    guard_nonnegative(v)
}

/// The auxiliary angle of the base tetrahedron's characteristic
/// orthoscheme, whose angles are `(pi/p, pi/3, pi/3)`.
pub fn theta_of_p(p: f64) -> Result<f64> {
    p_to_s(p)?;
    orthoscheme3_theta(&OrthoschemeAngles3 {
        a01: PI / p,
        a12: PI / 3.0,
        a23: PI / 3.0,
    })
}

/// Volume of the base orthoscheme: the characteristic simplex of the
/// truncation tetrahedron, with essential angles `(pi/p, pi/3, pi/3)`.
pub fn base_orthoscheme_volume(p: f64) -> Result<f64> {
    p_to_s(p)?;
    orthoscheme3_volume(&OrthoschemeAngles3 {
        a01: PI / p,
        a12: PI / 3.0,
        a23: PI / 3.0,
    })
}

/// Volume of the truncated 4-orthoscheme by the four-dimensional
/// angle-defect (Poincare-Schlafli) evaluation:
/// `Vol = (pi^2/12) (2/15 - 2/(3p))`.
pub fn truncated_orthoscheme4_volume(p: f64) -> Result<f64> {
    p_to_s(p)?;
    guard_nonnegative(PI * PI / 12.0 * (2.0 / 15.0 - 2.0 / (3.0 * p)))
}
