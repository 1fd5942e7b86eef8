//! Lorentzian (1,n) linear algebra over the projective model of hyperbolic
//! n-space, n in {3, 4}: the bilinear form, point classification, polarity,
//! plane relations with distances, and the hyperplane/hyperball
//! intersection predicate.
//!
//! Points are stored as unnormalized projective representatives (boundary
//! points have a null self-product and cannot be unit-normalized); forms
//! representing hyperplanes are stored unit-normalized.  A form is
//! represented by its polar vector, so point/form incidence and form/form
//! angles all use the one bilinear form.

use crate::error::{HypackError, Result};
use crate::numfmt::json_array;
use crate::special::arccosh_safe;

/// Relative tolerance band for point classification.
pub const CLASSIFY_TOL: f64 = 1e-12;
/// Tolerance band on `|<u,v>| - 1` separating plane relations.
pub const PLANE_RELATION_TOL: f64 = 1e-10;

/// Raw (1,n) product of two coefficient slices of equal length:
/// `-a0 b0 + a1 b1 + ... + an bn`.
pub(crate) fn product(a: &[f64], b: &[f64]) -> f64 {
    let mut s = -a[0] * b[0];
    for i in 1..a.len() {
        s += a[i] * b[i];
    }
    s
}

/// Classification of a projective point against the absolute quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    /// Inside hyperbolic space: `<x,x> < 0`.
    Proper,
    /// On the ideal boundary: `<x,x> = 0` within tolerance.
    Boundary,
    /// Outside the quadric: `<x,x> > 0`.
    Outer,
}

impl PointClass {
    pub fn name(self) -> &'static str {
        match self {
            PointClass::Proper => "proper",
            PointClass::Boundary => "boundary",
            PointClass::Outer => "outer",
        }
    }
}

/// A projective point of the model, stored unnormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzVector {
    coords: Vec<f64>,
}

impl LorentzVector {
    /// Build a point from homogeneous coordinates (index 0 timelike).
    /// The length must be 4 or 5 (n = 3 or n = 4) and the vector nonzero.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() != 4 && coords.len() != 5 {
            return Err(HypackError::UnsupportedDimension(
                coords.len().saturating_sub(1),
            ));
        }
        for &c in &coords {
            if !c.is_finite() {
                return Err(HypackError::NonFinite(c));
            }
        }
        if coords.iter().all(|&c| c == 0.0) {
            return Err(HypackError::ZeroVector);
        }
        Ok(Self { coords })
    }

    /// Spatial dimension n of the ambient hyperbolic space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Squared Euclidean norm of the coordinate vector (tolerance scale).
    pub fn euclid_norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    /// Representative rescaled to `x0 = 1` (affine chart of the model).
    /// Errors when the point lies at the chart's infinity.
    pub fn chart_normalized(&self) -> Result<Self> {
        let x0 = self.coords[0];
        if x0.abs() < 1e-9 * self.euclid_norm_sq().sqrt() {
            return Err(HypackError::Internal(
                "point at projective infinity of the affine chart".into(),
            ));
        }
        Ok(Self {
            coords: self.coords.iter().map(|c| c / x0).collect(),
        })
    }

    /// Spatial chart coordinates `(x1/x0, ..., xn/x0)`.
    pub fn chart(&self) -> Result<Vec<f64>> {
        Ok(self.chart_normalized()?.coords[1..].to_vec())
    }

    /// Euclidean-unit representative (for projective comparisons).
    pub fn unit(&self) -> Vec<f64> {
        let n = self.euclid_norm_sq().sqrt();
        self.coords.iter().map(|c| c / n).collect()
    }

    /// Projective equality within an angular tolerance.
    pub fn projectively_equal(&self, other: &Self, tol: f64) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let a = self.unit();
        let b = other.unit();
        let (mut dm, mut dp) = (0.0_f64, 0.0_f64);
        for i in 0..a.len() {
            dm += (a[i] - b[i]) * (a[i] - b[i]);
            dp += (a[i] + b[i]) * (a[i] + b[i]);
        }
        dm.sqrt().min(dp.sqrt()) < tol
    }

    /// JSON array of the coordinates at 17 significant digits.
    pub fn to_json(&self) -> String {
        json_array(&self.coords)
    }
}

/// The (1,n) bilinear form `<x,y> = -x0 y0 + x1 y1 + ... + xn yn`.
pub fn bilinear_form(x: &LorentzVector, y: &LorentzVector) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(HypackError::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(product(x.coords(), y.coords()))
}

/// Classify a point by the sign of its self-product, with a relative
/// tolerance band `1e-12 * ||x||^2` around zero for boundary points.
pub fn classify_point(x: &LorentzVector) -> Result<PointClass> {
    let q = product(x.coords(), x.coords());
    let tol = CLASSIFY_TOL * x.euclid_norm_sq();
    if x.euclid_norm_sq() == 0.0 {
        return Err(HypackError::ZeroVector);
    }
    Ok(if q < -tol {
        PointClass::Proper
    } else if q > tol {
        PointClass::Outer
    } else {
        PointClass::Boundary
    })
}

/// A hyperplane, represented by a spacelike linear form.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneForm {
    form: Vec<f64>,
    normalized: bool,
}

impl HyperplaneForm {
    /// Build and unit-normalize a form; errors when the coefficient vector
    /// is not spacelike (`<u,u> <= 0`).
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let v = LorentzVector::new(coeffs)?; // reuse shape/finite checks
        let q = product(v.coords(), v.coords());
        if q <= 0.0 {
            return Err(HypackError::NotSpacelike(q));
        }
        let s = q.sqrt();
        Ok(Self {
            form: v.coords().iter().map(|c| c / s).collect(),
            normalized: true,
        })
    }

    /// Keep raw (unnormalized) coefficients; most operations reject such
    /// forms, but they are useful as intermediate values.
    pub fn raw(coeffs: Vec<f64>) -> Result<Self> {
        let v = LorentzVector::new(coeffs)?;
        Ok(Self {
            form: v.coords().to_vec(),
            normalized: false,
        })
    }

    /// Normalize in place (no-op when already normalized).
    pub fn normalize(self) -> Result<Self> {
        if self.normalized {
            return Ok(self);
        }
        Self::new(self.form)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.form
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn dim(&self) -> usize {
        self.form.len() - 1
    }

    /// Flip the orientation (same hyperplane, opposite side convention).
    pub fn flipped(&self) -> Self {
        Self {
            form: self.form.iter().map(|c| -c).collect(),
            normalized: self.normalized,
        }
    }

    /// Signed evaluation `<x, u>` of a point against the form.
    pub fn eval(&self, x: &LorentzVector) -> Result<f64> {
        if self.dim() != x.dim() {
            return Err(HypackError::DimensionMismatch(self.dim(), x.dim()));
        }
        Ok(product(x.coords(), &self.form))
    }

    /// JSON array of the coefficients at 17 significant digits.
    pub fn to_json(&self) -> String {
        json_array(&self.form)
    }

    fn ensure_normalized(&self) -> Result<()> {
        let q = product(&self.form, &self.form);
        if !self.normalized || (q - 1.0).abs() > 1e-12 {
            return Err(HypackError::NotNormalized(q));
        }
        Ok(())
    }
}

/// The polar hyperplane of an outer point: the form is the point's
/// coordinate vector rescaled by `1/sqrt(<x,x>)`.
pub fn polar_hyperplane(x: &LorentzVector) -> Result<HyperplaneForm> {
    match classify_point(x)? {
        PointClass::Outer => {}
        c => return Err(HypackError::NoPolarHyperplane(c.name())),
    }
    let q = product(x.coords(), x.coords());
    let s = q.sqrt();
    Ok(HyperplaneForm {
        form: x.coords().iter().map(|c| c / s).collect(),
        normalized: true,
    })
}

/// Mutual position of two hyperplanes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlaneRelation {
    /// The planes meet inside hyperbolic space.
    Intersecting,
    /// The planes meet exactly on the ideal boundary (within tolerance);
    /// `u = v` also lands here since `|<u,u>| = 1`.
    Parallel,
    /// No common point; carries the distance along the common
    /// perpendicular, `arccosh |<u,v>|`.
    Ultraparallel { distance: f64 },
}

/// Classify the relation of two normalized hyperplane forms via
/// `c = |<u,v>|` with tolerance band 1e-10 around `c = 1`.
pub fn plane_plane_relation(
    u: &HyperplaneForm,
    v: &HyperplaneForm,
) -> Result<PlaneRelation> {
    u.ensure_normalized()?;
    v.ensure_normalized()?;
    if u.dim() != v.dim() {
        return Err(HypackError::DimensionMismatch(u.dim(), v.dim()));
    }
    let c = product(u.coeffs(), v.coeffs()).abs();
    Ok(if c < 1.0 - PLANE_RELATION_TOL {
        PlaneRelation::Intersecting
    } else if c <= 1.0 + PLANE_RELATION_TOL {
        PlaneRelation::Parallel
    } else {
        PlaneRelation::Ultraparallel {
            distance: arccosh_safe(c)?,
        }
    })
}

/// Which side(s) of its base plane a hyperball occupies.  The convention
/// is that points `x` with `<x, base> > 0` form the `+` side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
    /// The full two-sided hyperball (default in all packing computations).
    Both,
}

/// A hyperball: the equidistant body of height `h` over a base hyperplane.
#[derive(Debug, Clone)]
pub struct Hyperball {
    pub base: HyperplaneForm,
    pub height: f64,
    pub side: Side,
}

impl Hyperball {
    pub fn new(base: HyperplaneForm, height: f64, side: Side) -> Result<Self> {
        if !(height >= 0.0) {
            return Err(HypackError::DomainError {
                name: "height",
                value: height,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        base.ensure_normalized()?;
        Ok(Self { base, height, side })
    }
}

/// Whether a hyperplane meets the closed hyperball body.
///
/// Planes intersecting or parallel to the base always meet the body.  An
/// ultraparallel plane at distance `d` meets a full hyperball iff
/// `d < height` (strict: tangency from outside does not count); for a
/// one-sided hyperball the plane must additionally lie on the occupied
/// side.  The side of the base plane holding `u` is read off a point of
/// `u` rather than off `<u, base>`, which would flip with the stored
/// sign of `u`: the closest point of `u` to the base plane is
/// `base - <u,base> u`, a proper point, and its chart representative's
/// pairing with `base` gives the side.
pub fn hyperplane_intersects_hyperball(u: &HyperplaneForm, h: &Hyperball) -> Result<bool> {
    u.ensure_normalized()?;
    h.base.ensure_normalized()?;
    match plane_plane_relation(u, &h.base)? {
        PlaneRelation::Intersecting | PlaneRelation::Parallel => Ok(true),
        PlaneRelation::Ultraparallel { distance } => {
            if distance >= h.height {
                return Ok(false);
            }
            if h.side == Side::Both {
                return Ok(true);
            }
            let g = product(u.coeffs(), h.base.coeffs());
            let mut y: Vec<f64> = h
                .base
                .coeffs()
                .iter()
                .zip(u.coeffs())
                .map(|(b, c)| b - g * c)
                .collect();
            if y[0] < 0.0 {
                for c in &mut y {
                    *c = -*c;
                }
            }
            let side_sign = product(&y, h.base.coeffs());
            Ok(match h.side {
                Side::Plus => side_sign > 0.0,
                Side::Minus => side_sign < 0.0,
                Side::Both => unreachable!(),
            })
        }
    }
}
