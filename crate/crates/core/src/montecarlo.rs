//! Monte Carlo volume oracles in the projective chart.
//!
//! Points are sampled uniformly in an exact axis-aligned bounding box of
//! the region's chart vertices; members are weighted by the hyperbolic
//! volume density `(1 - |u|^2)^{-(n+1)/2}`.  Batches of 65536 samples use
//! independent, indexed generator streams and are reduced in a fixed
//! order, so results are bit-for-bit reproducible for a given seed
//! regardless of thread count.

use crate::error::{HypackError, Result};
use crate::lorentz::{classify_point, PointClass};
use crate::simplex::{build_simplex, p_to_s, RegularSimplex4};
use crate::truncation::ProjectivePolytope;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Samples per generator stream.
const BATCH: u64 = 65_536;

/// A Monte Carlo volume estimate with its one-sigma standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub accepted: u64,
}

/// Integrate a nonnegative weight over a box: `weight_of` returns `0.0`
/// outside the region and the density inside.
fn mc_over_box<F>(
    lo: &[f64],
    hi: &[f64],
    weight_of: F,
    samples: u64,
    seed: u64,
) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if samples == 0 {
        return Err(HypackError::DomainError {
            name: "samples",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let dim = lo.len();
    let mut box_volume = 1.0;
    for (a, b) in lo.iter().zip(hi) {
        box_volume *= b - a;
    }
    if !(box_volume > 0.0) || !box_volume.is_finite() {
        return Err(HypackError::Internal(format!(
            "degenerate sampling box, volume {box_volume}"
        )));
    }
    let n_batches = samples.div_ceil(BATCH);
    let partials: Vec<(f64, f64, u64)> = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch);
            let count = BATCH.min(samples - batch * BATCH);
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            let mut accepted = 0u64;
            let mut point = vec![0.0; dim];
            for _ in 0..count {
                for (k, p) in point.iter_mut().enumerate() {
                    let t: f64 = rng.gen();
                    *p = lo[k] + (hi[k] - lo[k]) * t;
                }
                let w = weight_of(&point);
                if w > 0.0 {
                    accepted += 1;
                    sum += w;
                    sumsq += w * w;
                }
            }
            (sum, sumsq, accepted)
        })
        .collect();
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    let mut accepted = 0u64;
    for (s, q, a) in partials {
        sum += s;
        sumsq += q;
        accepted += a;
    }
    let n = samples as f64;
    let m1 = sum / n;
    let m2 = sumsq / n;
    let variance_of_mean = ((m2 - m1 * m1) / n).max(0.0);
    Ok(McEstimate {
        value: box_volume * m1,
        std_error: box_volume * variance_of_mean.sqrt(),
        samples,
        accepted,
    })
}

/// Coefficient row of the affine chart evaluation `u -> <(1,u), c>`:
/// `row[0] = -c[0]`, `row[1..] = c[1..]`.
fn chart_row(coeffs: &[f64]) -> Vec<f64> {
    let mut row = coeffs.to_vec();
    row[0] = -coeffs[0];
    row
}

fn chart_eval(row: &[f64], u: &[f64]) -> f64 {
    row[0] + row[1..].iter().zip(u).map(|(a, b)| a * b).sum::<f64>()
}

fn bbox_of(charts: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let dim = charts[0].len();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for c in charts {
        for k in 0..dim {
            lo[k] = lo[k].min(c[k]);
            hi[k] = hi[k].max(c[k]);
        }
    }
    (lo, hi)
}

/// Density `(1 - r2)^{-(n+1)/2}` for chart dimension `n` in `{3, 4}`.
fn chart_weight(dim: usize, r2: f64) -> f64 {
    let t = 1.0 - r2;
    match dim {
        3 => 1.0 / (t * t),
        _ => 1.0 / (t * t * t.sqrt()),
    }
}

/// Monte Carlo volume of the orthoscheme truncated at the first polar
/// plane: the region cut out by the five face planes plus the truncator,
/// sampled in the bounding box of its eight chart vertices.
pub fn mc_truncated_orthoscheme4_volume(
    p: f64,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    let sx = build_simplex(p_to_s(p)?)?;
    let mut rows: Vec<Vec<f64>> = sx
        .face_forms
        .iter()
        .map(|f| chart_row(f.coeffs()))
        .collect();
    rows.push(chart_row(sx.polar_forms[0].coeffs()));
    let charts: Vec<Vec<f64>> = sx
        .centers
        .iter()
        .chain(sx.feet.iter())
        .map(|v| v.chart())
        .collect::<Result<_>>()?;
    let (lo, hi) = bbox_of(&charts);
    mc_over_box(
        &lo,
        &hi,
        |u| {
            let r2: f64 = u.iter().map(|x| x * x).sum();
            if r2 >= 1.0 {
                return 0.0;
            }
            if rows.iter().any(|row| chart_eval(row, u) > 0.0) {
                return 0.0;
            }
            chart_weight(4, r2)
        },
        samples,
        seed,
    )
}

/// Signature-aware orthonormal frame of the base plane through the feet:
/// `e0` timelike (`<e0,e0> = -1`) at the first foot, `e1..e3` spacelike.
fn base_plane_frame(sx: &RegularSimplex4) -> Result<[Vec<f64>; 4]> {
    let dot = |a: &[f64], b: &[f64]| crate::lorentz::product(a, b);
    let q0 = sx.feet[0].coords();
    let norm0 = -dot(q0, q0);
    if norm0 <= 0.0 {
        return Err(HypackError::Internal(
            "first foot is not a proper point".into(),
        ));
    }
    let e0: Vec<f64> = q0.iter().map(|x| x / norm0.sqrt()).collect();
    let mut frame = vec![e0];
    for j in 1..4 {
        let mut v: Vec<f64> = sx.feet[j]
            .coords()
            .iter()
            .zip(q0)
            .map(|(a, b)| a - b)
            .collect();
        let t = dot(&v, &frame[0]);
        for (x, e) in v.iter_mut().zip(&frame[0]) {
            *x += t * e; // remove the timelike component: v + <v,e0> e0
        }
        for e in frame.iter().skip(1) {
            let t = dot(&v, e);
            for (x, ek) in v.iter_mut().zip(e) {
                *x -= t * ek;
            }
        }
        let n = dot(&v, &v);
        if n <= 1e-18 {
            return Err(HypackError::Internal(
                "degenerate base-plane frame".into(),
            ));
        }
        let n = n.sqrt();
        frame.push(v.into_iter().map(|x| x / n).collect());
    }
    frame
        .try_into()
        .map_err(|_| HypackError::Internal("frame size".into()))
}

/// Monte Carlo volume of the base orthoscheme: the 3-dimensional
/// orthoscheme cut out on the truncating plane by the first four face
/// planes, integrated in chart coordinates of an orthonormal frame of
/// that plane.
pub fn mc_base_orthoscheme3_volume(p: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    let sx = build_simplex(p_to_s(p)?)?;
    let frame = base_plane_frame(&sx)?;
    let dot = |a: &[f64], b: &[f64]| crate::lorentz::product(a, b);
    // Affine evaluation of each face form on lifted points e0 + sum y_i e_i.
    let mut rows: Vec<[f64; 4]> = Vec::with_capacity(4);
    for f in sx.face_forms.iter().take(4) {
        let c = f.coeffs();
        rows.push([
            dot(c, &frame[0]),
            dot(c, &frame[1]),
            dot(c, &frame[2]),
            dot(c, &frame[3]),
        ]);
    }
    // Chart coordinates of the feet in the frame.
    let charts: Vec<Vec<f64>> = sx
        .feet
        .iter()
        .map(|q| {
            let a = -dot(q.coords(), &frame[0]);
            (1..4).map(|i| dot(q.coords(), &frame[i]) / a).collect()
        })
        .collect();
    let (lo, hi) = bbox_of(&charts);
    mc_over_box(
        &lo,
        &hi,
        |y| {
            let r2: f64 = y.iter().map(|x| x * x).sum();
            if r2 >= 1.0 {
                return 0.0;
            }
            let inside = rows
                .iter()
                .all(|r| r[0] + r[1] * y[0] + r[2] * y[1] + r[3] * y[2] <= 0.0);
            if !inside {
                return 0.0;
            }
            chart_weight(3, r2)
        },
        samples,
        seed,
    )
}

/// Monte Carlo volume of a compact polytope with proper vertices,
/// sampled in the bounding box of its chart vertices.
pub fn mc_polytope_volume(
    poly: &ProjectivePolytope,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if poly.vertices.is_empty() {
        return Err(HypackError::Internal(
            "polytope has no vertices to bound the sampler".into(),
        ));
    }
    let improper = poly
        .vertices
        .iter()
        .filter(|v| classify_point(v).map(|c| c != PointClass::Proper).unwrap_or(true))
        .count();
    if improper > 0 {
        return Err(HypackError::OuterVerticesRemain(improper));
    }
    let rows: Vec<(Vec<f64>, f64)> = poly
        .halfspaces
        .iter()
        .map(|h| (chart_row(h.form.coeffs()), h.side as f64))
        .collect();
    let charts: Vec<Vec<f64>> = poly
        .vertices
        .iter()
        .map(|v| v.chart())
        .collect::<Result<_>>()?;
    let (lo, hi) = bbox_of(&charts);
    let dim = poly.dim;
    mc_over_box(
        &lo,
        &hi,
        |u| {
            let r2: f64 = u.iter().map(|x| x * x).sum();
            if r2 >= 1.0 {
                return 0.0;
            }
            if rows.iter().any(|(row, side)| side * chart_eval(row, u) > 0.0) {
                return 0.0;
            }
            chart_weight(dim, r2)
        },
        samples,
        seed,
    )
}
