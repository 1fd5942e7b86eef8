//! Desk-scale polytope lab for the projective model: H-representation with
//! brute-force vertex enumeration, polar-hyperplane cutting at outer
//! points, and recursive decomposition of a compact cell into truncated
//! simplices, verifying on every cut that the cutting plane misses all
//! hyperballs of non-incident base planes.

use crate::error::{HypackError, Result};
use crate::lorentz::{
    classify_point, polar_hyperplane, product, Hyperball, HyperplaneForm,
    LorentzVector, PlaneRelation, PointClass, Side,
};
use crate::numfmt::{fmt17, json_array};
use itertools::Itertools;
use nalgebra::DMatrix;
use std::cmp::Ordering;
use std::path::Path;

/// Vertex feasibility tolerance (chart-normalized evaluation).
pub const FEAS_TOL: f64 = 1e-9;
/// Projective deduplication tolerance (angular).
pub const DEDUP_TOL: f64 = 1e-9;
/// Vertex-on-plane incidence tolerance.
pub const INCIDENCE_TOL: f64 = 1e-9;
/// Cutting-plane / base-plane orthogonality tolerance.
pub const ORTHO_TOL: f64 = 1e-10;
/// Relative singular-value threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-9;

/// One halfspace `{x : side * <x, form> <= 0}` with `side` in `{-1, +1}`.
#[derive(Debug, Clone)]
pub struct Halfspace {
    pub form: HyperplaneForm,
    pub side: i8,
}

impl Halfspace {
    pub fn new(form: HyperplaneForm, side: i8) -> Result<Self> {
        if side != 1 && side != -1 {
            return Err(HypackError::InvalidFixture(format!(
                "halfspace side must be +1 or -1, got {side}"
            )));
        }
        Ok(Self { form, side })
    }

    /// Signed constraint value; feasible points give `<= 0` (up to tolerance).
    pub fn eval(&self, x: &LorentzVector) -> Result<f64> {
        Ok(self.side as f64 * self.form.eval(x)?)
    }
}

/// A convex polytope in the projective chart, stored as halfspaces plus its
/// computed, deduplicated, chart-normalized vertex list.
#[derive(Debug, Clone)]
pub struct ProjectivePolytope {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<LorentzVector>,
}

/// The right singular vector spanning the nullspace of the given
/// coefficient rows, provided the rank is exactly `width - 1`; rows are
/// zero-padded to a square matrix so the full right basis is available.
fn unique_nullvec(rows: &[Vec<f64>], width: usize) -> Option<Vec<f64>> {
    let k = rows.len();
    debug_assert!(k < width);
    let mat = DMatrix::from_fn(width, width, |r, c| {
        if r < k {
            rows[r][c]
        } else {
            0.0
        }
    });
    let svd = mat.svd(false, true);
    let sv = &svd.singular_values;
    let v_t = svd.v_t.as_ref()?;
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    if smax == 0.0 {
        return None;
    }
    let rank = sv.iter().filter(|&&s| s >= RANK_TOL * smax).count();
    if rank != width - 1 {
        return None;
    }
    let mut idx = 0;
    let mut smin = f64::INFINITY;
    for (i, &s) in sv.iter().enumerate() {
        if s < smin {
            smin = s;
            idx = i;
        }
    }
    Some(v_t.row(idx).iter().cloned().collect())
}

/// Euclidean coefficient row of the functional `x -> <x, u>`.
fn functional_row(form: &HyperplaneForm) -> Vec<f64> {
    let c = form.coeffs();
    let mut row = c.to_vec();
    row[0] = -c[0];
    row
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y).expect("finite coordinates") {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Whether the homogeneous representative `v` (or a direction at infinity)
/// satisfies every halfspace constraint up to `FEAS_TOL * scale`.
fn feasible_representative(halfspaces: &[Halfspace], v: &[f64], scale: f64) -> bool {
    halfspaces.iter().all(|h| {
        let e = h.side as f64 * product(h.form.coeffs(), v);
        e <= FEAS_TOL * scale
    })
}

/// Enumerate the vertices of the intersection of the given halfspaces by
/// solving every `dim`-subset of hyperplane equations (exact for the
/// desk-scale inputs of this crate, <= 20 halfspaces).
///
/// Errors with the witnessing subset if the region is unbounded in the
/// chart (a feasible point or ray at projective infinity).
pub fn vertex_enumeration(
    halfspaces: Vec<Halfspace>,
    dim: usize,
) -> Result<ProjectivePolytope> {
    if dim != 3 && dim != 4 {
        return Err(HypackError::UnsupportedDimension(dim));
    }
    for h in &halfspaces {
        if h.form.dim() != dim {
            return Err(HypackError::DimensionMismatch(dim, h.form.dim()));
        }
    }
    let m = halfspaces.len();
    if m < dim + 1 {
        return Err(HypackError::TooFewHalfspaces {
            needed: dim + 1,
            got: m,
            dim,
        });
    }

    // Unboundedness screen 1: if the spatial normal directions do not span
    // R^dim, a full line survives every constraint.
    let spatial = DMatrix::from_fn(m, dim, |r, c| halfspaces[r].form.coeffs()[c + 1]);
    let sv = spatial.svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    let spatial_rank = sv.iter().filter(|&&s| s >= RANK_TOL * smax).count();
    if spatial_rank < dim {
        return Err(HypackError::UnboundedPolytope {
            subset: (0..m).collect(),
        });
    }

    // Unboundedness screen 2: recession rays isolated by dim-1 spatial
    // equations.
    for subset in (0..m).combinations(dim - 1) {
        let rows: Vec<Vec<f64>> = subset
            .iter()
            .map(|&i| halfspaces[i].form.coeffs()[1..].to_vec())
            .collect();
        if let Some(d) = unique_nullvec(&rows, dim) {
            for cand in [&d, &d.iter().map(|x| -x).collect::<Vec<f64>>()] {
                let ok = halfspaces.iter().all(|h| {
                    let e: f64 = h.side as f64
                        * h.form.coeffs()[1..]
                            .iter()
                            .zip(cand.iter())
                            .map(|(a, b)| a * b)
                            .sum::<f64>();
                    e <= FEAS_TOL
                });
                if ok {
                    return Err(HypackError::UnboundedPolytope { subset });
                }
            }
        }
    }

    // Vertex candidates from every dim-subset of hyperplane equations.
    let mut vertices: Vec<LorentzVector> = Vec::new();
    for subset in (0..m).combinations(dim) {
        let rows: Vec<Vec<f64>> = subset
            .iter()
            .map(|&i| functional_row(&halfspaces[i].form))
            .collect();
        let Some(v) = unique_nullvec(&rows, dim + 1) else {
            continue;
        };
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if v[0].abs() < 1e-9 * norm {
            // A point at the chart's infinity: if it satisfies every
            // constraint as a direction, the region is unbounded.
            let neg: Vec<f64> = v.iter().map(|x| -x).collect();
            if feasible_representative(&halfspaces, &v, norm)
                || feasible_representative(&halfspaces, &neg, norm)
            {
                return Err(HypackError::UnboundedPolytope { subset });
            }
            continue;
        }
        let point = LorentzVector::new(v)?.chart_normalized()?;
        let scale = point.euclid_norm_sq().sqrt().max(1.0);
        if !feasible_representative(&halfspaces, point.coords(), scale) {
            continue;
        }
        if !vertices
            .iter()
            .any(|w| w.projectively_equal(&point, DEDUP_TOL))
        {
            vertices.push(point);
        }
    }
    vertices.sort_by(|a, b| lex_cmp(a.coords(), b.coords()));
    Ok(ProjectivePolytope {
        dim,
        halfspaces,
        vertices,
    })
}

impl ProjectivePolytope {
    /// Indices of stored vertices lying on the given halfspace plane.
    fn incident_vertices(&self, plane: usize) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| {
                let scale = v.euclid_norm_sq().sqrt().max(1.0);
                self.halfspaces[plane]
                    .form
                    .eval(v)
                    .map(|e| e.abs() <= INCIDENCE_TOL * scale)
                    .unwrap_or(false)
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether a halfspace plane supports a facet: at least `dim` incident
    /// vertices whose chart points affinely span dimension `dim - 1`.
    pub fn is_facet(&self, plane: usize) -> bool {
        let inc = self.incident_vertices(plane);
        if inc.len() < self.dim {
            return false;
        }
        let base = self.vertices[inc[0]].coords();
        let rows: Vec<Vec<f64>> = inc[1..]
            .iter()
            .map(|&i| {
                self.vertices[i].coords()[1..]
                    .iter()
                    .zip(&base[1..])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let mat = DMatrix::from_fn(rows.len(), self.dim, |r, c| rows[r][c]);
        let sv = mat.svd(false, false).singular_values;
        let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
        if smax == 0.0 {
            return false;
        }
        let rank = sv.iter().filter(|&&s| s >= RANK_TOL * smax).count();
        rank == self.dim - 1
    }

    /// Number of halfspace planes supporting facets.
    pub fn facet_count(&self) -> usize {
        (0..self.halfspaces.len())
            .filter(|&i| self.is_facet(i))
            .count()
    }

    /// Canonical sort key: the lexicographically sorted vertex coordinate
    /// rows.
    fn canonical_key(&self) -> Vec<Vec<f64>> {
        let mut rows: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|v| v.coords().to_vec())
            .collect();
        rows.sort_by(|a, b| lex_cmp(a, b));
        rows
    }
}

/// Number of vertices classified as outer points.
pub fn outer_vertex_count(p: &ProjectivePolytope) -> usize {
    p.vertices
        .iter()
        .filter(|v| {
            classify_point(v).expect("stored vertices are classifiable")
                == PointClass::Outer
        })
        .count()
}

/// An outer point together with the base planes through it.
#[derive(Debug, Clone)]
pub struct OuterVertexRecord {
    pub vertex: LorentzVector,
    pub incident_base_planes: Vec<usize>,
}

fn validate_incidences(
    p: &ProjectivePolytope,
    rec: &OuterVertexRecord,
    cut: &HyperplaneForm,
) -> Result<()> {
    let scale = rec.vertex.euclid_norm_sq().sqrt().max(1.0);
    for &idx in &rec.incident_base_planes {
        let h = p.halfspaces.get(idx).ok_or_else(|| {
            HypackError::InvalidFixture(format!("base plane index {idx} out of range"))
        })?;
        if h.form.eval(&rec.vertex)?.abs() > INCIDENCE_TOL * scale {
            return Err(HypackError::InvalidFixture(format!(
                "outer point is not incident to listed base plane {idx}"
            )));
        }
        // The polar plane of a point on beta is orthogonal to beta.
        let g = product(cut.coeffs(), h.form.coeffs());
        if g.abs() > ORTHO_TOL {
            return Err(HypackError::Internal(format!(
                "cutting plane not orthogonal to incident base plane {idx}: <a,b> = {g}"
            )));
        }
    }
    Ok(())
}

fn cut_with_plane(
    p: &ProjectivePolytope,
    cut: &HyperplaneForm,
) -> Result<(ProjectivePolytope, ProjectivePolytope)> {
    let mut neg = p.halfspaces.clone();
    neg.push(Halfspace::new(cut.clone(), 1)?);
    let mut pos = p.halfspaces.clone();
    pos.push(Halfspace::new(cut.clone(), -1)?);
    Ok((
        vertex_enumeration(neg, p.dim)?,
        vertex_enumeration(pos, p.dim)?,
    ))
}

/// Cut the polytope along the polar hyperplane of one of its outer
/// vertices, returning the two closed halves.  The polar plane is
/// orthogonal to every base plane through the vertex.
pub fn cut_at_outer_vertex(
    p: &ProjectivePolytope,
    rec: &OuterVertexRecord,
) -> Result<(ProjectivePolytope, ProjectivePolytope)> {
    if !p
        .vertices
        .iter()
        .any(|v| v.projectively_equal(&rec.vertex, DEDUP_TOL))
    {
        return Err(HypackError::NotAVertex);
    }
    let class = classify_point(&rec.vertex)?;
    if class != PointClass::Outer {
        return Err(HypackError::VertexNotOuter(class.name()));
    }
    let cut = polar_hyperplane(&rec.vertex)?;
    validate_incidences(p, rec, &cut)?;
    cut_with_plane(p, &cut)
}

/// Cut candidates of a piece: outer intersection points of `dim` active
/// (facet-supporting) base planes whose polar hyperplane strictly
/// separates the piece's vertices.  Such a point need not itself be a
/// vertex of the piece.
fn cut_candidates(
    p: &ProjectivePolytope,
    base_planes: &[usize],
) -> Result<Vec<OuterVertexRecord>> {
    let active: Vec<usize> = base_planes
        .iter()
        .cloned()
        .filter(|&i| p.is_facet(i))
        .collect();
    let mut out: Vec<OuterVertexRecord> = Vec::new();
    if active.len() < p.dim {
        return Ok(out);
    }
    for subset in active.iter().cloned().combinations(p.dim) {
        let rows: Vec<Vec<f64>> = subset
            .iter()
            .map(|&i| functional_row(&p.halfspaces[i].form))
            .collect();
        let Some(v) = unique_nullvec(&rows, p.dim + 1) else {
            continue;
        };
        // Canonical representative: chart-normalized when the point is at
        // finite chart distance, otherwise (planes meeting at projective
        // infinity, e.g. the two apex truncators of a glued fixture) the
        // Euclidean unit vector with its first nonzero coordinate positive.
        // Such ideal-direction points are still legitimate outer points and
        // their polars are ordinary hyperplanes.
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let point = if v[0].abs() < 1e-9 * norm {
            let raw = LorentzVector::new(v)?;
            let mut u = raw.unit();
            if let Some(first) = u.iter().find(|x| x.abs() > 1e-12) {
                if *first < 0.0 {
                    for c in &mut u {
                        *c = -*c;
                    }
                }
            }
            LorentzVector::new(u)?
        } else {
            LorentzVector::new(v)?.chart_normalized()?
        };
        if classify_point(&point)? != PointClass::Outer {
            continue;
        }
        let polar = polar_hyperplane(&point)?;
        let (mut n_pos, mut n_neg) = (0usize, 0usize);
        for w in &p.vertices {
            let e = polar.eval(w)?;
            if e > FEAS_TOL {
                n_pos += 1;
            } else if e < -FEAS_TOL {
                n_neg += 1;
            }
        }
        if n_pos == 0 || n_neg == 0 {
            continue; // polar plane does not cut the piece's interior
        }
        if out
            .iter()
            .any(|r| r.vertex.projectively_equal(&point, DEDUP_TOL))
        {
            continue;
        }
        let scale = point.euclid_norm_sq().sqrt().max(1.0);
        let incident: Vec<usize> = base_planes
            .iter()
            .cloned()
            .filter(|&i| {
                p.halfspaces[i]
                    .form
                    .eval(&point)
                    .map(|e| e.abs() <= INCIDENCE_TOL * scale)
                    .unwrap_or(false)
            })
            .collect();
        out.push(OuterVertexRecord {
            vertex: point,
            incident_base_planes: incident,
        });
    }
    // Cut-ordering policy: most incident base planes first, then
    // lexicographic on the incident index sets, then on coordinates.
    out.sort_by(|a, b| {
        b.incident_base_planes
            .len()
            .cmp(&a.incident_base_planes.len())
            .then_with(|| a.incident_base_planes.cmp(&b.incident_base_planes))
            .then_with(|| lex_cmp(a.vertex.coords(), b.vertex.coords()))
    });
    Ok(out)
}

/// One decomposition cut, as traced to JSON lines.
#[derive(Debug, Clone, PartialEq)]
pub struct CutEvent {
    /// Homogeneous coordinates of the outer point whose polar plane was
    /// used (chart-normalized, i.e. leading coordinate 1, whenever the
    /// point is at finite chart distance).
    pub cut_vertex: Vec<f64>,
    /// Cut candidates of the piece before the cut.
    pub n_before: usize,
    /// Total cut candidates of the two halves after the cut.
    pub n_after: usize,
    /// Every cut verifies the separation predicate on all non-incident
    /// hyperballs, so this is always `true` in a successful run.
    pub lemma31_checked: bool,
}

/// Result of a decomposition: terminal pieces in canonical order plus the
/// cut trace.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub pieces: Vec<ProjectivePolytope>,
    pub trace: Vec<CutEvent>,
}

/// Render a cut trace as JSON lines, one event per line.
pub fn trace_jsonl(events: &[CutEvent]) -> String {
    let mut out = String::new();
    for e in events {
        out.push_str(&format!(
            "{{\"cut_vertex\":{},\"n_before\":{},\"n_after\":{},\"lemma31_checked\":{}}}\n",
            json_array(&e.cut_vertex),
            e.n_before,
            e.n_after,
            e.lemma31_checked
        ));
    }
    out
}

/// Recursively decompose a compact polytope carrying a hyperball packing
/// (hyperballs of the given height on the listed base planes) into pieces
/// with no remaining cut candidates, cutting along polar hyperplanes of
/// outer candidate points.  Every cut is validated to keep the packing
/// intact: the cutting plane must not meet the hyperball of any
/// non-incident base plane.
pub fn decompose(
    p: &ProjectivePolytope,
    base_planes: &[usize],
    height: f64,
) -> Result<Decomposition> {
    if !(height > 0.0) || !height.is_finite() {
        return Err(HypackError::DomainError {
            name: "height",
            value: height,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    for &i in base_planes {
        if i >= p.halfspaces.len() {
            return Err(HypackError::InvalidFixture(format!(
                "base plane index {i} out of range (have {})",
                p.halfspaces.len()
            )));
        }
        if !seen.insert(i) {
            return Err(HypackError::InvalidFixture(format!(
                "duplicate base plane index {i}"
            )));
        }
    }
    let outer = outer_vertex_count(p);
    if outer > 0 {
        return Err(HypackError::OuterVerticesRemain(outer));
    }
    // The hyperballs must form a packing: pairwise plane distances at
    // least 2 * height.
    for (a, &i) in base_planes.iter().enumerate() {
        for &j in base_planes.iter().skip(a + 1) {
            let rel = crate::lorentz::plane_plane_relation(
                &p.halfspaces[i].form,
                &p.halfspaces[j].form,
            )?;
            let dist = match rel {
                PlaneRelation::Ultraparallel { distance } => distance,
                PlaneRelation::Intersecting | PlaneRelation::Parallel => 0.0,
            };
            if dist < 2.0 * height - 1e-9 {
                return Err(HypackError::HyperballsOverlap {
                    i,
                    j,
                    dist,
                    min: 2.0 * height,
                });
            }
        }
    }

    let budget = cut_candidates(p, base_planes)?.len();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(p.clone());
    let mut pieces = Vec::new();
    let mut trace = Vec::new();
    let mut cuts = 0usize;
    while let Some(piece) = queue.pop_front() {
        let cands = cut_candidates(&piece, base_planes)?;
        if cands.is_empty() {
            pieces.push(piece);
            continue;
        }
        let n_before = cands.len();
        let rec = &cands[0];
        let cut = polar_hyperplane(&rec.vertex)?;
        validate_incidences(&piece, rec, &cut)?;
        for &b in base_planes {
            if rec.incident_base_planes.contains(&b) {
                continue;
            }
            let ball =
                Hyperball::new(p.halfspaces[b].form.clone(), height, Side::Both)?;
            if crate::lorentz::hyperplane_intersects_hyperball(&cut, &ball)? {
                return Err(HypackError::CutIntersectsHyperball { base_index: b });
            }
        }
        let (h1, h2) = cut_with_plane(&piece, &cut)?;
        let n_after =
            cut_candidates(&h1, base_planes)?.len() + cut_candidates(&h2, base_planes)?.len();
        if n_after >= n_before {
            return Err(HypackError::NoProgress { n_before, n_after });
        }
        cuts += 1;
        if cuts > budget {
            return Err(HypackError::DepthExceeded(budget));
        }
        trace.push(CutEvent {
            cut_vertex: rec.vertex.coords().to_vec(),
            n_before,
            n_after,
            lemma31_checked: true,
        });
        queue.push_back(h1);
        queue.push_back(h2);
    }
    pieces.sort_by(|a, b| {
        let ka = a.canonical_key();
        let kb = b.canonical_key();
        ka.len().cmp(&kb.len()).then_with(|| {
            for (ra, rb) in ka.iter().zip(&kb) {
                match lex_cmp(ra, rb) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    });
    Ok(Decomposition { pieces, trace })
}

/// Serializable description of a polytope-with-packing test case.
#[derive(Debug, Clone, PartialEq, serde::Deserialize)]
pub struct Fixture {
    pub dim: usize,
    /// Pairs `[coefficients, side]`.
    pub halfspaces: Vec<(Vec<f64>, i8)>,
    pub base_plane_indices: Vec<usize>,
    pub height: f64,
}

impl Fixture {
    /// JSON rendering with reals at 17 significant digits.
    pub fn to_json_string(&self) -> String {
        let hs: Vec<String> = self
            .halfspaces
            .iter()
            .map(|(c, s)| format!("[{},{}]", json_array(c), s))
            .collect();
        let idx: Vec<String> = self
            .base_plane_indices
            .iter()
            .map(|i| i.to_string())
            .collect();
        format!(
            "{{\"dim\":{},\"halfspaces\":[{}],\"base_plane_indices\":[{}],\"height\":{}}}",
            self.dim,
            hs.join(","),
            idx.join(","),
            fmt17(self.height)
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| HypackError::InvalidFixture(format!("JSON parse: {e}")))
    }

    /// Validate and build the polytope: returns it with the base plane
    /// indices and hyperball height.
    pub fn build(&self) -> Result<(ProjectivePolytope, Vec<usize>, f64)> {
        if self.dim != 3 && self.dim != 4 {
            return Err(HypackError::InvalidFixture(format!(
                "dim must be 3 or 4, got {}",
                self.dim
            )));
        }
        if !(self.height > 0.0) || !self.height.is_finite() {
            return Err(HypackError::InvalidFixture(format!(
                "height must be positive, got {}",
                self.height
            )));
        }
        let mut halfspaces = Vec::with_capacity(self.halfspaces.len());
        for (k, (coeffs, side)) in self.halfspaces.iter().enumerate() {
            if coeffs.len() != self.dim + 1 {
                return Err(HypackError::InvalidFixture(format!(
                    "halfspace {k}: expected {} coefficients, got {}",
                    self.dim + 1,
                    coeffs.len()
                )));
            }
            let form = HyperplaneForm::new(coeffs.clone()).map_err(|e| {
                HypackError::InvalidFixture(format!("halfspace {k}: {e}"))
            })?;
            halfspaces.push(Halfspace::new(form, *side).map_err(|e| {
                HypackError::InvalidFixture(format!("halfspace {k}: {e}"))
            })?);
        }
        for &i in &self.base_plane_indices {
            if i >= halfspaces.len() {
                return Err(HypackError::InvalidFixture(format!(
                    "base plane index {i} out of range"
                )));
            }
        }
        let poly = vertex_enumeration(halfspaces, self.dim)?;
        Ok((poly, self.base_plane_indices.clone(), self.height))
    }
}

/// Read and parse a fixture file.
pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path)?;
    Fixture::from_json(&text)
}

/// The regular truncated simplex at parameter `s` as a fixture: five facet
/// halfspaces, five polar (truncating) halfspaces carrying the hyperballs,
/// hyperball height `h(p(s))`.
pub fn regular_fixture(s: f64) -> Result<Fixture> {
    let sx = crate::simplex::build_simplex(s)?;
    let h = crate::density::height(sx.param.p)?;
    let mut halfspaces: Vec<(Vec<f64>, i8)> = Vec::new();
    for f in &sx.facet_forms {
        halfspaces.push((f.coeffs().to_vec(), 1));
    }
    for f in &sx.polar_forms {
        halfspaces.push((f.coeffs().to_vec(), 1));
    }
    Ok(Fixture {
        dim: 4,
        halfspaces,
        base_plane_indices: (5..10).collect(),
        height: h,
    })
}

/// Two mirror-image truncated simplices sharing the facet opposite the
/// first vertex: the reflection across that facet plane maps one onto the
/// other, the four outer vertices on the shared facet have a single
/// truncating plane each, and the two apex truncating planes are far
/// apart.  Base planes: the four shared truncators plus both apex
/// truncators.
pub fn glued_fixture(s: f64) -> Result<Fixture> {
    let sx = crate::simplex::build_simplex(s)?;
    let h = crate::density::height(sx.param.p)?;
    let mirror = &sx.facet_forms[0];
    let reflect = |u: &HyperplaneForm| -> Result<HyperplaneForm> {
        let d = product(u.coeffs(), mirror.coeffs());
        let coeffs: Vec<f64> = u
            .coeffs()
            .iter()
            .zip(mirror.coeffs())
            .map(|(a, m)| a - 2.0 * d * m)
            .collect();
        HyperplaneForm::new(coeffs)
    };
    // Interior reference point of the union: chart midpoint of the
    // simplex center and its mirror image.
    let center = &sx.centers[0];
    let e = mirror.eval(center)?;
    let reflected_center: Vec<f64> = center
        .coords()
        .iter()
        .zip(mirror.coeffs())
        .map(|(a, m)| a - 2.0 * e * m)
        .collect();
    let rc = LorentzVector::new(reflected_center)?.chart_normalized()?;
    let mid: Vec<f64> = center
        .coords()
        .iter()
        .zip(rc.coords())
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let mid = LorentzVector::new(mid)?;
    let oriented = |f: HyperplaneForm| -> Result<HyperplaneForm> {
        Ok(if f.eval(&mid)? > 0.0 { f.flipped() } else { f })
    };

    let mut forms: Vec<HyperplaneForm> = Vec::new();
    for i in 1..5 {
        forms.push(oriented(sx.facet_forms[i].clone())?);
    }
    for i in 1..5 {
        forms.push(oriented(reflect(&sx.facet_forms[i])?)?);
    }
    for i in 1..5 {
        forms.push(oriented(sx.polar_forms[i].clone())?);
    }
    forms.push(oriented(sx.polar_forms[0].clone())?);
    forms.push(oriented(reflect(&sx.polar_forms[0])?)?);

    Ok(Fixture {
        dim: 4,
        halfspaces: forms.iter().map(|f| (f.coeffs().to_vec(), 1)).collect(),
        base_plane_indices: (8..14).collect(),
        height: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::build_simplex;

    fn simplex_halfspaces(s: f64, with_polars: usize) -> Vec<Halfspace> {
        let sx = build_simplex(s).unwrap();
        let mut hs: Vec<Halfspace> = sx
            .facet_forms
            .iter()
            .map(|f| Halfspace::new(f.clone(), 1).unwrap())
            .collect();
        for f in sx.polar_forms.iter().take(with_polars) {
            hs.push(Halfspace::new(f.clone(), 1).unwrap());
        }
        hs
    }

    #[test]
    fn untruncated_simplex_has_five_outer_vertices() {
        let p = vertex_enumeration(simplex_halfspaces(1.2, 0), 4).unwrap();
        assert_eq!(p.vertices.len(), 5);
        assert_eq!(outer_vertex_count(&p), 5);
        let sx = build_simplex(1.2).unwrap();
        for b in &sx.vertices {
            let bc = b.chart_normalized().unwrap();
            assert!(p
                .vertices
                .iter()
                .any(|v| v.projectively_equal(&bc, 1e-9)));
        }
        assert_eq!(p.facet_count(), 5);
    }

    #[test]
    fn truncated_simplex_has_twenty_proper_vertices() {
        // Each of the five polar cuts removes one outer vertex and crosses
        // the four edges through it, contributing a tetrahedral section:
        // 5 * 4 = 20 vertices, all proper, 5 + 5 = 10 facets.
        let p = vertex_enumeration(simplex_halfspaces(1.2, 5), 4).unwrap();
        assert_eq!(p.vertices.len(), 20);
        assert_eq!(outer_vertex_count(&p), 0);
        assert_eq!(p.facet_count(), 10);
    }

    #[test]
    fn single_polar_cut_leaves_four_outer_vertices() {
        let p = vertex_enumeration(simplex_halfspaces(1.2, 1), 4).unwrap();
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(outer_vertex_count(&p), 4);
    }

    #[test]
    fn overdetermined_point_yields_single_vertex() {
        let mut hs = Vec::new();
        for axis in 1..5 {
            for sign in [1.0, -1.0] {
                let mut c = vec![0.0; 5];
                c[axis] = sign;
                hs.push(Halfspace::new(HyperplaneForm::new(c).unwrap(), 1).unwrap());
            }
        }
        let p = vertex_enumeration(hs, 4).unwrap();
        assert_eq!(p.vertices.len(), 1);
        assert_eq!(p.vertices[0].coords(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    fn box3(half: f64) -> Vec<Halfspace> {
        let mut hs = Vec::new();
        for axis in 1..4 {
            for sign in [1.0, -1.0] {
                // <(1,u), c> = sign*u_axis - half <= 0: the side toward
                // the origin of the plane sign*u_axis = half.
                let mut c = vec![0.0; 4];
                c[0] = half;
                c[axis] = sign;
                hs.push(Halfspace::new(HyperplaneForm::new(c).unwrap(), 1).unwrap());
            }
        }
        hs
    }

    #[test]
    fn three_dimensional_box() {
        let p = vertex_enumeration(box3(0.5), 3).unwrap();
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(outer_vertex_count(&p), 0);
        assert_eq!(p.facet_count(), 6);
    }

    #[test]
    fn unbounded_region_is_rejected() {
        let mut hs = box3(0.5);
        hs.remove(0); // drop x1 <= 0.5: recession ray +e1
        assert!(matches!(
            vertex_enumeration(hs, 3),
            Err(HypackError::UnboundedPolytope { .. })
        ));
        // A slab (|u1| <= 1/2, |u2| <= 1/2, u3 free) is unbounded with
        // deficient spatial rank.
        let slab: Vec<Halfspace> = [
            vec![0.5, 1.0, 0.0, 0.0],
            vec![0.5, -1.0, 0.0, 0.0],
            vec![0.5, 0.0, 1.0, 0.0],
            vec![0.5, 0.0, -1.0, 0.0],
        ]
        .into_iter()
        .map(|c| Halfspace::new(HyperplaneForm::new(c).unwrap(), 1).unwrap())
        .collect();
        assert!(matches!(
            vertex_enumeration(slab, 3),
            Err(HypackError::UnboundedPolytope { .. })
        ));
    }

    #[test]
    fn too_few_halfspaces_is_an_error() {
        let hs = simplex_halfspaces(1.2, 0)[..3].to_vec();
        assert!(matches!(
            vertex_enumeration(hs, 4),
            Err(HypackError::TooFewHalfspaces { needed: 5, got: 3, dim: 4 })
        ));
    }

    #[test]
    fn cut_at_simplex_vertex() {
        let p = vertex_enumeration(simplex_halfspaces(1.2, 0), 4).unwrap();
        let sx = build_simplex(1.2).unwrap();
        let b1 = sx.vertices[0].chart_normalized().unwrap();
        // b1 lies on the four facets opposite the other vertices.
        let rec = OuterVertexRecord {
            vertex: b1,
            incident_base_planes: vec![1, 2, 3, 4],
        };
        let (neg, pos) = cut_at_outer_vertex(&p, &rec).unwrap();
        let outer_counts = [outer_vertex_count(&neg), outer_vertex_count(&pos)];
        // Main piece keeps the four other outer vertices; the cap keeps
        // only the cut one.
        assert!(outer_counts.contains(&4) && outer_counts.contains(&1));
        assert_eq!(neg.vertices.len() + pos.vertices.len(), 8 + 5);
    }

    #[test]
    fn cut_rejects_bad_vertices() {
        let p = vertex_enumeration(simplex_halfspaces(1.2, 0), 4).unwrap();
        // An outer point that is not a vertex of the polytope.
        let stray = LorentzVector::new(vec![1.0, 0.9, 0.9, 0.0, 0.0]).unwrap();
        let rec = OuterVertexRecord {
            vertex: stray,
            incident_base_planes: vec![],
        };
        assert!(matches!(
            cut_at_outer_vertex(&p, &rec),
            Err(HypackError::NotAVertex)
        ));
        // A proper point cannot be cut at even if it were a vertex.
        let trunc = vertex_enumeration(simplex_halfspaces(1.2, 5), 4).unwrap();
        let rec = OuterVertexRecord {
            vertex: trunc.vertices[0].clone(),
            incident_base_planes: vec![],
        };
        assert!(matches!(
            cut_at_outer_vertex(&trunc, &rec),
            Err(HypackError::VertexNotOuter(_))
        ));
    }

    #[test]
    fn regular_fixture_decomposes_to_itself() {
        let fx = regular_fixture(1.2).unwrap();
        let (poly, base, h) = fx.build().unwrap();
        assert_eq!(poly.vertices.len(), 20);
        let d = decompose(&poly, &base, h).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert!(d.trace.is_empty());
        assert_eq!(d.pieces[0].vertices.len(), 20);
    }

    #[test]
    fn glued_fixture_decomposes_into_two_truncated_simplices() {
        let fx = glued_fixture(1.2).unwrap();
        let (poly, base, h) = fx.build().unwrap();
        assert_eq!(poly.vertices.len(), 28);
        assert_eq!(outer_vertex_count(&poly), 0);
        let d = decompose(&poly, &base, h).unwrap();
        assert_eq!(d.pieces.len(), 2);
        assert_eq!(d.trace.len(), 1);
        let ev = &d.trace[0];
        // Seven candidates: the pole of the shared facet (incident to the
        // four truncating planes common to both halves) plus six ideal
        // directions where a pair of those planes meets both apex
        // truncators at projective infinity.  The pole wins the ordering
        // policy; after the cut each half's candidate poles lie on its own
        // supporting planes and separate nothing.
        assert_eq!(ev.n_before, 7);
        assert_eq!(ev.n_after, 0);
        assert!(ev.lemma31_checked);
        for piece in &d.pieces {
            assert_eq!(piece.vertices.len(), 20);
            assert_eq!(outer_vertex_count(piece), 0);
            assert_eq!(piece.facet_count(), 10);
        }
        // The cut point is the pole of the shared facet, on the four
        // shared truncating planes.
        let sx = build_simplex(1.2).unwrap();
        let pole_chart = ev.cut_vertex.clone();
        let pole = LorentzVector::new(pole_chart).unwrap();
        let polar = polar_hyperplane(&pole).unwrap();
        let g = product(polar.coeffs(), sx.facet_forms[0].coeffs());
        assert!((g.abs() - 1.0).abs() < 1e-9, "cut plane is the shared facet");
    }

    #[test]
    fn decompose_is_deterministic() {
        let fx = glued_fixture(1.2).unwrap();
        let (poly, base, h) = fx.build().unwrap();
        let d1 = decompose(&poly, &base, h).unwrap();
        let d2 = decompose(&poly, &base, h).unwrap();
        assert_eq!(d1.trace, d2.trace);
        for (a, b) in d1.pieces.iter().zip(&d2.pieces) {
            assert_eq!(a.vertices.len(), b.vertices.len());
            for (va, vb) in a.vertices.iter().zip(&b.vertices) {
                for (x, y) in va.coords().iter().zip(vb.coords()) {
                    assert_eq!(x.to_bits(), y.to_bits());
                }
            }
        }
    }

    #[test]
    fn decompose_preconditions() {
        // Outer vertices must already be truncated away.
        let p = vertex_enumeration(simplex_halfspaces(1.2, 0), 4).unwrap();
        assert!(matches!(
            decompose(&p, &[0], 0.5),
            Err(HypackError::OuterVerticesRemain(5))
        ));
        // Oversized hyperballs overlap: the truncating planes of the
        // regular fixture are at pairwise distance exactly 2h.
        let fx = regular_fixture(1.2).unwrap();
        let (poly, base, h) = fx.build().unwrap();
        assert!(matches!(
            decompose(&poly, &base, 1.5 * h),
            Err(HypackError::HyperballsOverlap { .. })
        ));
        assert!(decompose(&poly, &base, -1.0).is_err());
        assert!(matches!(
            decompose(&poly, &[0, 0], h),
            Err(HypackError::InvalidFixture(_))
        ));
        assert!(matches!(
            decompose(&poly, &[99], h),
            Err(HypackError::InvalidFixture(_))
        ));
    }

    #[test]
    fn volume_is_conserved_by_the_glued_cut() {
        let fx = glued_fixture(1.2).unwrap();
        let (poly, base, h) = fx.build().unwrap();
        let d = decompose(&poly, &base, h).unwrap();
        let n = 300_000u64;
        let total = crate::montecarlo::mc_polytope_volume(&poly, n, 7).unwrap();
        let a = crate::montecarlo::mc_polytope_volume(&d.pieces[0], n, 8).unwrap();
        let b = crate::montecarlo::mc_polytope_volume(&d.pieces[1], n, 9).unwrap();
        let diff = (total.value - a.value - b.value).abs();
        let sigma = (total.std_error.powi(2)
            + a.std_error.powi(2)
            + b.std_error.powi(2))
        .sqrt();
        assert!(diff <= 3.0 * sigma, "diff {diff} vs 3 sigma {}", 3.0 * sigma);
        // The two halves are mirror images: equal volumes within noise.
        let half_sigma = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!((a.value - b.value).abs() <= 3.0 * half_sigma);
    }

    #[test]
    fn fixture_json_round_trip() {
        let fx = glued_fixture(1.2).unwrap();
        let text = fx.to_json_string();
        let back = Fixture::from_json(&text).unwrap();
        assert_eq!(fx, back);
        assert!(Fixture::from_json("{").is_err());
        assert!(matches!(
            Fixture::from_json("{\"dim\":5,\"halfspaces\":[],\"base_plane_indices\":[],\"height\":1.0}")
                .unwrap()
                .build(),
            Err(HypackError::InvalidFixture(_))
        ));
        // Side values other than +-1 are rejected at build time.
        let bad = "{\"dim\":3,\"halfspaces\":[[[ -0.5,1.0,0.0,0.0],2]],\"base_plane_indices\":[],\"height\":1.0}";
        assert!(matches!(
            Fixture::from_json(bad).unwrap().build(),
            Err(HypackError::InvalidFixture(_))
        ));
    }
}
