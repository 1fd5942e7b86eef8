//! The crate's acceptance gate: twelve end-to-end checks of the packing
//! density pipeline, each returning a pass/fail verdict with a measured
//! detail string.  Tolerances and reference values are pinned in
//! [`Expectations`] so a harness can tighten, widen, or deliberately
//! tamper with them (negative controls).

use crate::density;
use crate::error::Result;
use crate::lorentz::{plane_plane_relation, PlaneRelation};
use crate::montecarlo;
use crate::numfmt::fmt17;
use crate::quadrature;
use crate::simplex;
use crate::special;
use crate::truncation;
use crate::volumes;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;
use std::time::Instant;

/// Pinned reference values and tolerances for the acceptance checks.
#[derive(Debug, Clone)]
pub struct Expectations {
    pub p_lower_range: (f64, f64),
    pub arccos_identity_tol: f64,
    pub p_opt: f64,
    pub p_opt_tol: f64,
    pub delta_opt: f64,
    pub delta_opt_tol: f64,
    pub optimize_budget: f64,
    pub sweep_budget: f64,
    pub delta_low_range: (f64, f64),
    pub piece_end_max: f64,
    pub height_end_max: f64,
    pub witness_margin: f64,
    pub gram_tol: f64,
    pub half_distance_tol: f64,
    pub piece_quadrature_rel: f64,
    pub mc_rel: f64,
    pub mc_budget: f64,
    pub series_quadrature_tol: f64,
    pub lob_reference: f64,
    pub lob_reference_tol: f64,
}

impl Default for Expectations {
    fn default() -> Self {
        Self {
            p_lower_range: (5.1042, 5.1044),
            arccos_identity_tol: 1e-14,
            p_opt: 5.19550,
            p_opt_tol: 5e-4,
            delta_opt: 0.7586482,
            delta_opt_tol: 1e-5,
            optimize_budget: 1.0,
            sweep_budget: 5.0,
            delta_low_range: (0.72, 0.75),
            piece_end_max: 1e-6,
            height_end_max: 1e-4,
            witness_margin: 0.01,
            gram_tol: 1e-12,
            half_distance_tol: 1e-12,
            piece_quadrature_rel: 1e-10,
            mc_rel: 0.02,
            mc_budget: 60.0,
            series_quadrature_tol: 1e-10,
            lob_reference: 0.5074708,
            lob_reference_tol: 1e-7,
        }
    }
}

/// Knobs of an acceptance run.
#[derive(Debug, Clone)]
pub struct AcceptanceConfig {
    /// Monte Carlo sample count; smaller counts widen the Monte Carlo
    /// tolerance by `sqrt(default / n)`.
    pub mc_samples: u64,
    pub seed: u64,
    pub expectations: Expectations,
}

pub const DEFAULT_MC_SAMPLES: u64 = 10_000_000;

impl Default for AcceptanceConfig {
    fn default() -> Self {
        Self {
            mc_samples: DEFAULT_MC_SAMPLES,
            seed: 42,
            expectations: Expectations::default(),
        }
    }
}

/// Outcome of one acceptance check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub const CHECK_NAMES: [&str; 12] = [
    "parameter-domain-lower-bound",
    "density-optimum",
    "sweep-unimodality",
    "density-near-lower-bound",
    "vanishing-at-upper-bound",
    "height-density-monotonicity-witness",
    "gram-matrix-references",
    "height-equals-half-plane-distance",
    "piece-volumes-vs-quadrature",
    "closed-forms-vs-monte-carlo",
    "lobachevsky-series-vs-quadrature",
    "decomposition-fixtures",
];

fn c01(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let lo = simplex::p_lower();
    let residual = ((3.0f64 / 4.0).sqrt().acos() - PI / 6.0).abs();
    let pass = lo >= e.p_lower_range.0
        && lo <= e.p_lower_range.1
        && residual <= e.arccos_identity_tol;
    Ok(CheckResult {
        id: 1,
        name: CHECK_NAMES[0],
        pass,
        detail: format!(
            "p_lower = {}, arccos identity residual = {}",
            fmt17(lo),
            fmt17(residual)
        ),
    })
}

fn c02(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let t0 = Instant::now();
    let opt = density::maximize(1e-10)?;
    let dt = t0.elapsed().as_secs_f64();
    let pass = (opt.p_opt - e.p_opt).abs() <= e.p_opt_tol
        && (opt.delta_opt - e.delta_opt).abs() <= e.delta_opt_tol
        && dt < e.optimize_budget;
    Ok(CheckResult {
        id: 2,
        name: CHECK_NAMES[1],
        pass,
        detail: format!(
            "p_opt = {}, delta_opt = {}, elapsed = {:.3}s",
            fmt17(opt.p_opt),
            fmt17(opt.delta_opt),
            dt
        ),
    })
}

fn c03(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let t0 = Instant::now();
    // Start 1e-6 above the lower endpoint: closer in, the closed-form base
    // volume is a near-total Lobachevsky cancellation and double precision
    // fabricates spurious differences.
    let rows = density::sweep(simplex::p_lower() + 1e-6, simplex::P_UPPER, 10_000)?;
    let dt = t0.elapsed().as_secs_f64();
    let mut changes = 0usize;
    let mut sign = 0i8;
    for w in rows.windows(2) {
        let d = w[1].delta - w[0].delta;
        let s = if d > 0.0 {
            1
        } else if d < 0.0 {
            -1
        } else {
            0
        };
        if s != 0 {
            if sign != 0 && s != sign {
                changes += 1;
            }
            sign = s;
        }
    }
    let pass = changes == 1 && dt < e.sweep_budget;
    Ok(CheckResult {
        id: 3,
        name: CHECK_NAMES[2],
        pass,
        detail: format!(
            "rows = {}, delta-difference sign changes = {changes}, elapsed = {:.3}s",
            rows.len(),
            dt
        ),
    })
}

fn c04(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let p = simplex::p_lower() + 1e-6;
    let delta = density::density(p)?.delta;
    let pass = delta > e.delta_low_range.0 && delta < e.delta_low_range.1;
    Ok(CheckResult {
        id: 4,
        name: CHECK_NAMES[3],
        pass,
        detail: format!("delta({}) = {}", fmt17(p), fmt17(delta)),
    })
}

fn c05(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let p = simplex::P_UPPER - 1e-9;
    let report = density::density(p)?;
    let h = density::height(p)?;
    // As p approaches the upper bound the hyperball height collapses and
    // the piece volume (the density's numerator) vanishes; the density
    // itself decays only linearly with the height and stays above 1e-6.
    let pass = report.vol4_hyperball_piece < e.piece_end_max && h < e.height_end_max;
    Ok(CheckResult {
        id: 5,
        name: CHECK_NAMES[4],
        pass,
        detail: format!(
            "piece volume = {}, height = {}, delta = {}",
            fmt17(report.vol4_hyperball_piece),
            fmt17(h),
            fmt17(report.delta)
        ),
    })
}

fn c06(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let (h1, h2, d1, d2) = density::monotonicity_witness()?;
    let pass = h1 < h2 && d1 > d2 + e.witness_margin;
    Ok(CheckResult {
        id: 6,
        name: CHECK_NAMES[5],
        pass,
        detail: format!(
            "h1 = {}, h2 = {}, d1 = {}, d2 = {}",
            fmt17(h1),
            fmt17(h2),
            fmt17(d1),
            fmt17(d2)
        ),
    })
}

fn c07(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let mut rng = rand::rngs::StdRng::seed_from_u64(cfg.seed ^ 0x6772616d);
    let lo = 1.0 + 1e-3;
    let hi = simplex::s_upper() - 1e-3;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let s = lo + (hi - lo) * rng.gen::<f64>();
        let sx = simplex::build_simplex(s)?;
        let d1 = sx
            .gram_orthoscheme()?
            .max_abs_diff(&simplex::orthoscheme_gram_reference(s)?);
        let d2 = sx
            .gram_simplex()?
            .max_abs_diff(&simplex::simplex_gram_reference(s)?);
        let d3 = sx
            .gram_base_tetrahedron()?
            .max_abs_diff(&simplex::base_gram_reference(sx.param.p)?);
        worst = worst.max(d1).max(d2).max(d3);
    }
    let pass = worst <= e.gram_tol;
    Ok(CheckResult {
        id: 7,
        name: CHECK_NAMES[6],
        pass,
        detail: format!("worst Gram entry deviation over 20 samples = {}", fmt17(worst)),
    })
}

fn c08(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let mut rng = rand::rngs::StdRng::seed_from_u64(cfg.seed ^ 0x68616c66);
    let lo = simplex::p_lower() + 1e-4;
    let hi = simplex::P_UPPER - 1e-4;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let p = lo + (hi - lo) * rng.gen::<f64>();
        let h = density::height(p)?;
        let sx = simplex::build_simplex(simplex::p_to_s(p)?)?;
        for i in 0..5 {
            for j in (i + 1)..5 {
                let rel =
                    plane_plane_relation(&sx.polar_forms[i], &sx.polar_forms[j])?;
                let d = match rel {
                    PlaneRelation::Ultraparallel { distance } => distance,
                    _ => f64::NAN,
                };
                worst = worst.max((h - 0.5 * d).abs());
            }
        }
    }
    let pass = worst <= e.half_distance_tol;
    Ok(CheckResult {
        id: 8,
        name: CHECK_NAMES[7],
        pass,
        detail: format!(
            "worst |height - half plane distance| over 50 samples = {}",
            fmt17(worst)
        ),
    })
}

fn c09(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let mut rng = rand::rngs::StdRng::seed_from_u64(cfg.seed ^ 0x70696365);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let dim = 3 + (k % 3);
        let base_area = 0.01 + 1.99 * rng.gen::<f64>();
        let height = 0.01 + 1.99 * rng.gen::<f64>();
        let closed = volumes::hyperball_piece_volume(&volumes::HyperballPieceSpec {
            dim,
            base_area,
            height,
        })?;
        let oracle = base_area * quadrature::cosh_power_integral(dim, height)?;
        worst = worst.max((closed - oracle).abs() / oracle.abs());
    }
    let pass = worst <= e.piece_quadrature_rel;
    Ok(CheckResult {
        id: 9,
        name: CHECK_NAMES[8],
        pass,
        detail: format!(
            "worst relative deviation over 100 piece volumes = {}",
            fmt17(worst)
        ),
    })
}

fn c10(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let p = 5.5;
    let widening = (DEFAULT_MC_SAMPLES as f64 / cfg.mc_samples as f64)
        .sqrt()
        .max(1.0);
    let tol = e.mc_rel * widening;
    let t0 = Instant::now();
    let mc4 = montecarlo::mc_truncated_orthoscheme4_volume(p, cfg.mc_samples, cfg.seed)?;
    let mc3 = montecarlo::mc_base_orthoscheme3_volume(p, cfg.mc_samples, cfg.seed)?;
    let dt = t0.elapsed().as_secs_f64();
    let exact4 = volumes::truncated_orthoscheme4_volume(p)?;
    let exact3 = volumes::base_orthoscheme_volume(p)?;
    let rel4 = (mc4.value - exact4).abs() / exact4;
    let rel3 = (mc3.value - exact3).abs() / exact3;
    let pass = rel4 <= tol && rel3 <= tol && dt < e.mc_budget;
    Ok(CheckResult {
        id: 10,
        name: CHECK_NAMES[9],
        pass,
        detail: format!(
            "samples = {}, rel4 = {}, rel3 = {}, tol = {}, elapsed = {:.3}s",
            cfg.mc_samples,
            fmt17(rel4),
            fmt17(rel3),
            fmt17(tol),
            dt
        ),
    })
}

fn c11(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let e = &cfg.expectations;
    let mut worst = 0.0f64;
    for k in 0..100 {
        // Interior points of (0, pi), avoiding the endpoint zeros where
        // both routes are exact anyway.
        let x = PI * (k as f64 + 0.5) / 100.0;
        let series = special::lobachevsky(x)?;
        let quad = quadrature::lobachevsky_quadrature(x)?;
        worst = worst.max((series - quad).abs());
    }
    let reference = quadrature::lobachevsky_quadrature(PI / 6.0)?;
    let ref_dev = (reference - e.lob_reference).abs();
    let pass = worst <= e.series_quadrature_tol && ref_dev <= e.lob_reference_tol;
    Ok(CheckResult {
        id: 11,
        name: CHECK_NAMES[10],
        pass,
        detail: format!(
            "worst series-vs-quadrature deviation = {}, reference value deviation = {}",
            fmt17(worst),
            fmt17(ref_dev)
        ),
    })
}

fn c12(cfg: &AcceptanceConfig) -> Result<CheckResult> {
    let _ = cfg;
    let s = 1.2;

    let fx = truncation::regular_fixture(s)?;
    let (poly, base, h) = fx.build()?;
    let reg = truncation::decompose(&poly, &base, h)?;
    let regular_ok = reg.pieces.len() == 1
        && reg.trace.is_empty()
        && reg.pieces[0].vertices.len() == poly.vertices.len();

    let fx = truncation::glued_fixture(s)?;
    let (poly, base, h) = fx.build()?;
    let glued = truncation::decompose(&poly, &base, h)?;
    let pieces_ok = glued.pieces.len() == 2
        && glued.pieces.iter().all(|piece| {
            piece.vertices.len() == 20
                && truncation::outer_vertex_count(piece) == 0
                && piece.facet_count() == 10
        });
    let trace_ok = glued.trace.len() == 1
        && glued
            .trace
            .iter()
            .all(|ev| ev.lemma31_checked && ev.n_after < ev.n_before);

    let pass = regular_ok && pieces_ok && trace_ok;
    Ok(CheckResult {
        id: 12,
        name: CHECK_NAMES[11],
        pass,
        detail: format!(
            "regular: pieces = {}, cuts = {}; glued: pieces = {}, cuts = {}, trace = {}",
            reg.pieces.len(),
            reg.trace.len(),
            glued.pieces.len(),
            glued.trace.len(),
            truncation::trace_jsonl(&glued.trace).trim_end().replace('\n', " | ")
        ),
    })
}

/// Run one acceptance check by its 1-based id.
pub fn run_criterion(id: usize, cfg: &AcceptanceConfig) -> Result<CheckResult> {
    match id {
        1 => c01(cfg),
        2 => c02(cfg),
        3 => c03(cfg),
        4 => c04(cfg),
        5 => c05(cfg),
        6 => c06(cfg),
        7 => c07(cfg),
        8 => c08(cfg),
        9 => c09(cfg),
        10 => c10(cfg),
        11 => c11(cfg),
        12 => c12(cfg),
        _ => Err(crate::error::HypackError::DomainError {
            name: "criterion",
            value: id as f64,
            lo: 1.0,
            hi: 12.0,
        }),
    }
}

/// Run all twelve checks in order.
pub fn run_all(cfg: &AcceptanceConfig) -> Result<Vec<CheckResult>> {
    (1..=12).map(|id| run_criterion(id, cfg)).collect()
}
