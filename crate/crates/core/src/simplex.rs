//! Parametric regular truncated 4-simplex in projective coordinates:
//! vertices, characteristic-orthoscheme data, hyperplane forms, Gram
//! matrices, and the dictionary between the dihedral parameter `p` and the
//! vertex radius parameter `s`.
//!
//! The one-parameter family lives on the open interval
//! `p in (pi/arccos(sqrt(2/3)), 6)`, equivalently `s in (1, sqrt(8/3))`,
//! linked by `cos(pi/p) = sqrt(10)/sqrt(16 - s^2)`.

use crate::error::{HypackError, Result};
use crate::lorentz::{
    bilinear_form, polar_hyperplane, HyperplaneForm, LorentzVector,
};
use crate::numfmt::{fmt17, json_matrix};
use std::f64::consts::PI;

/// Upper endpoint of the `p` domain (excluded).
pub const P_UPPER: f64 = 6.0;

/// Lower endpoint of the `p` domain (excluded): `pi / arccos(sqrt(2/3))`.
pub fn p_lower() -> f64 {
    PI / (2.0_f64 / 3.0).sqrt().acos()
}

/// Upper endpoint of the `s` domain (excluded): `sqrt(8/3)`.
pub fn s_upper() -> f64 {
    (8.0_f64 / 3.0).sqrt()
}

fn check_p(p: f64) -> Result<()> {
    if !(p > p_lower() && p < P_UPPER) {
        return Err(HypackError::DomainError {
            name: "p",
            value: p,
            lo: p_lower(),
            hi: P_UPPER,
        });
    }
    Ok(())
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 1.0 && s < s_upper()) {
        return Err(HypackError::DomainError {
            name: "s",
            value: s,
            lo: 1.0,
            hi: s_upper(),
        });
    }
    Ok(())
}

/// Map the dihedral parameter to the vertex radius parameter:
/// `s = sqrt(16 cos^2(pi/p) - 10) / cos(pi/p)`, the positive solution of
/// `cos(pi/p) = sqrt(10)/sqrt(16 - s^2)`.
pub fn p_to_s(p: f64) -> Result<f64> {
    check_p(p)?;
    let c = (PI / p).cos();
    Ok((16.0 * c * c - 10.0).sqrt() / c)
}

/// Inverse map: `p = pi / arccos(sqrt(10/(16 - s^2)))`.
pub fn s_to_p(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok(PI / (10.0 / (16.0 - s * s)).sqrt().acos())
}

/// The simplex family parameter, stored in both coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexParameter {
    pub p: f64,
    pub s: f64,
}

impl SimplexParameter {
    pub fn from_p(p: f64) -> Result<Self> {
        Ok(Self { p, s: p_to_s(p)? })
    }

    pub fn from_s(s: f64) -> Result<Self> {
        Ok(Self { p: s_to_p(s)?, s })
    }
}

/// Symmetric Gram (Coxeter) matrix of a set of unit forms.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: Vec<Vec<f64>>,
}

impl GramMatrix {
    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Largest absolute entrywise difference against another matrix.
    pub fn max_abs_diff(&self, other: &GramMatrix) -> f64 {
        assert_eq!(self.size(), other.size());
        let mut m = 0.0_f64;
        for (ra, rb) in self.entries.iter().zip(&other.entries) {
            for (a, b) in ra.iter().zip(rb) {
                m = m.max((a - b).abs());
            }
        }
        m
    }

    fn from_rows(entries: Vec<Vec<f64>>) -> Self {
        Self { entries }
    }
}

/// Gram matrix `G_ij = <u_i, u_j>` of normalized forms of one dimension.
pub fn gram_of_forms(forms: &[HyperplaneForm]) -> Result<GramMatrix> {
    if forms.is_empty() {
        return Err(HypackError::Internal("empty form list".into()));
    }
    let dim = forms[0].dim();
    for f in forms {
        if f.dim() != dim {
            return Err(HypackError::DimensionMismatch(dim, f.dim()));
        }
        if !f.is_normalized() {
            return Err(HypackError::NotNormalized(f64::NAN));
        }
    }
    let n = forms.len();
    let mut entries = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] =
                crate::lorentz::product(forms[i].coeffs(), forms[j].coeffs());
        }
    }
    Ok(GramMatrix::from_rows(entries))
}

/// The regular 4-simplex at parameter `s`, with all derived data of its
/// characteristic orthoscheme and truncation.
#[derive(Debug, Clone)]
pub struct RegularSimplex4 {
    pub param: SimplexParameter,
    /// Vertices `b_1..b_5`, all outer points for `s > 1`.
    pub vertices: [LorentzVector; 5],
    /// Face centers `P_0..P_3` of the flag `b_1 ⊂ b_1b_2 ⊂ ... `:
    /// body, facet, 2-face, and edge center (chart-normalized).
    pub centers: [LorentzVector; 4],
    /// Unit forms of the five faces of the characteristic orthoscheme
    /// `P_0 P_1 P_2 P_3 B_1`, ordered so the Gram matrix is tridiagonal;
    /// oriented with the orthoscheme interior on the negative side.
    pub face_forms: [HyperplaneForm; 5],
    /// Polar hyperplanes `beta_1..beta_5` of the vertices (truncating
    /// planes), oriented with the simplex center on the negative side.
    pub polar_forms: [HyperplaneForm; 5],
    /// Unit forms of the five simplex facets (facet i opposite vertex
    /// `b_i`), oriented with the interior on the negative side.
    pub facet_forms: [HyperplaneForm; 5],
    /// Feet `Q_0..Q_3` of the perpendiculars from `P_0..P_3` onto the
    /// truncating plane `beta_1` (equivalently, the intersections of the
    /// orthoscheme edges through `B_1` with that plane).
    pub feet: [LorentzVector; 4],
}

fn lv(coords: Vec<f64>) -> LorentzVector {
    LorentzVector::new(coords).expect("static construction")
}

/// Build the simplex and all derived data at parameter `s in (1, sqrt(8/3))`.
pub fn build_simplex(s: f64) -> Result<RegularSimplex4> {
    let param = SimplexParameter::from_s(s)?;
    let r10 = 10.0_f64.sqrt();
    let r5 = 5.0_f64.sqrt();

    let vertices = [
        lv(vec![1.0, 0.0, 0.0, 0.0, s]),
        lv(vec![1.0, 0.0, r10 * s / 4.0, r5 * s / 4.0, -s / 4.0]),
        lv(vec![1.0, 0.0, -r10 * s / 4.0, r5 * s / 4.0, -s / 4.0]),
        lv(vec![1.0, -r10 * s / 4.0, 0.0, -r5 * s / 4.0, -s / 4.0]),
        lv(vec![1.0, r10 * s / 4.0, 0.0, -r5 * s / 4.0, -s / 4.0]),
    ];

    // Face centers from vertex sums, rescaled into the affine chart.  The
    // tail vertices are added in mirror-symmetric pairs (b2+b3, b4+b5)
    // before the apex so that the cancellations of the full sum are exact:
    // the center of the whole simplex comes out as the chart origin.
    let partial_sum = |k: usize| -> LorentzVector {
        let mut c = vec![0.0; 5];
        for pair in vertices[1..k].chunks(2) {
            let mut chunk = pair[0].coords().to_vec();
            if let Some(second) = pair.get(1) {
                for (acc, x) in chunk.iter_mut().zip(second.coords()) {
                    *acc += x;
                }
            }
            for (acc, x) in c.iter_mut().zip(&chunk) {
                *acc += x;
            }
        }
        for (acc, x) in c.iter_mut().zip(vertices[0].coords()) {
            *acc += x;
        }
        lv(c).chart_normalized().expect("centers are chart-finite")
    };
    let centers = [partial_sum(5), partial_sum(4), partial_sum(3), partial_sum(2)];

    // Faces of the characteristic orthoscheme P0 P1 P2 P3 B1, listed so
    // that face i is opposite the i-th orthoscheme vertex in the order
    // (P0, P1, P2, P3, B1); this ordering makes the Gram matrix
    // tridiagonal.  The coefficient vectors are forced by those incidences
    // up to sign; signs put the orthoscheme interior on the negative side.
    let face_forms = [
        HyperplaneForm::new(vec![s, -r10, 0.0, r5, 1.0])?,
        HyperplaneForm::new(vec![0.0, 1.0, 0.0, 0.0, 0.0])?,
        HyperplaneForm::new(vec![0.0, -0.5, 0.5, -2.0_f64.sqrt() / 2.0, 0.0])?,
        HyperplaneForm::new(vec![0.0, 0.0, -1.0, 0.0, 0.0])?,
        HyperplaneForm::new(vec![0.0, 0.0, 0.5, 2.0_f64.sqrt() / 4.0, -r10 / 4.0])?,
    ];

    let polar_forms: [HyperplaneForm; 5] = [
        polar_hyperplane(&vertices[0])?,
        polar_hyperplane(&vertices[1])?,
        polar_hyperplane(&vertices[2])?,
        polar_hyperplane(&vertices[3])?,
        polar_hyperplane(&vertices[4])?,
    ];

    // Facet i (opposite vertex b_i) has form b_i - (4+s^2)/20 * sum(b_j):
    // this combination vanishes on every b_j with j != i.  Orient the unit
    // form so the simplex center evaluates negative.
    let mut total = vec![0.0; 5];
    for b in &vertices {
        for (acc, x) in total.iter_mut().zip(b.coords()) {
            *acc += x;
        }
    }
    let lam = (4.0 + s * s) / 20.0;
    let mut facet_forms = Vec::with_capacity(5);
    for b in &vertices {
        let raw: Vec<f64> = b
            .coords()
            .iter()
            .zip(&total)
            .map(|(x, t)| x - lam * t)
            .collect();
        let mut f = HyperplaneForm::new(raw)?;
        if f.eval(&centers[0])? > 0.0 {
            f = f.flipped();
        }
        facet_forms.push(f);
    }
    let facet_forms: [HyperplaneForm; 5] = facet_forms
        .try_into()
        .map_err(|_| HypackError::Internal("facet form count".into()))?;

    // Feet of the perpendiculars from the centers onto beta_1.  The line
    // through P_j and the pole B_1 is orthogonal to the polar plane, so the
    // foot solves the one-parameter incidence <P_j + t b_1, b_1> = 0.
    let b1 = &vertices[0];
    let b1_self = bilinear_form(b1, b1)?;
    let mut feet = Vec::with_capacity(4);
    for pj in &centers {
        let t = -bilinear_form(pj, b1)? / b1_self;
        let coords: Vec<f64> = pj
            .coords()
            .iter()
            .zip(b1.coords())
            .map(|(a, b)| a + t * b)
            .collect();
        feet.push(LorentzVector::new(coords)?.chart_normalized()?);
    }
    let feet: [LorentzVector; 4] = feet
        .try_into()
        .map_err(|_| HypackError::Internal("foot count".into()))?;

    Ok(RegularSimplex4 {
        param,
        vertices,
        centers,
        face_forms,
        polar_forms,
        facet_forms,
        feet,
    })
}

impl RegularSimplex4 {
    /// Gram matrix of the orthoscheme face forms (tridiagonal).
    pub fn gram_orthoscheme(&self) -> Result<GramMatrix> {
        gram_of_forms(&self.face_forms)
    }

    /// Gram matrix of the simplex facet forms; off-diagonal entries equal
    /// `(s^2+4)/(s^2-16) = -cos(2 pi / p)`.
    pub fn gram_simplex(&self) -> Result<GramMatrix> {
        gram_of_forms(&self.facet_forms)
    }

    /// Gram matrix of the polar (truncating) forms; off-diagonal entries
    /// equal `-(s^2+4)/(4s^2-4)`, whose magnitude is `cosh` of the distance
    /// between two truncating planes.
    pub fn gram_polar(&self) -> Result<GramMatrix> {
        gram_of_forms(&self.polar_forms)
    }

    /// Gram matrix of the base-tetrahedron face forms: the faces of the
    /// truncation tetrahedron inside `beta_1` are cut by the four
    /// orthoscheme faces through `B_1`, whose forms are orthogonal to
    /// `beta_1`, so restriction preserves the Gram entries.
    pub fn gram_base_tetrahedron(&self) -> Result<GramMatrix> {
        gram_of_forms(&self.face_forms[0..4])
    }
}

/// Closed-form tridiagonal Gram of the characteristic orthoscheme:
/// super/sub-diagonal `(-sqrt(10)/sqrt(16-s^2), -1/2, -1/2, -1/2)`.
pub fn orthoscheme_gram_reference(s: f64) -> Result<GramMatrix> {
    check_s(s)?;
    let mut m = vec![vec![0.0; 5]; 5];
    let off = [-10.0_f64.sqrt() / (16.0 - s * s).sqrt(), -0.5, -0.5, -0.5];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for (i, &v) in off.iter().enumerate() {
        m[i][i + 1] = v;
        m[i + 1][i] = v;
    }
    Ok(GramMatrix::from_rows(m))
}

/// Closed-form Gram of the simplex facets: unit diagonal, all off-diagonal
/// entries `(s^2+4)/(s^2-16)`.
pub fn simplex_gram_reference(s: f64) -> Result<GramMatrix> {
    check_s(s)?;
    let off = (s * s + 4.0) / (s * s - 16.0);
    let mut m = vec![vec![off; 5]; 5];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    Ok(GramMatrix::from_rows(m))
}

/// Closed-form tridiagonal Gram of the base tetrahedron:
/// super/sub-diagonal `(-cos(pi/p), -1/2, -1/2)`.
pub fn base_gram_reference(p: f64) -> Result<GramMatrix> {
    check_p(p)?;
    let mut m = vec![vec![0.0; 4]; 4];
    let off = [-(PI / p).cos(), -0.5, -0.5];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for (i, &v) in off.iter().enumerate() {
        m[i][i + 1] = v;
        m[i + 1][i] = v;
    }
    Ok(GramMatrix::from_rows(m))
}

/// Residual of the dihedral-angle identity linking the facet Gram entry to
/// the doubled face angle: `|(s^2+4)/(s^2-16) + cos(2 pi / p)|`, which is
/// zero in exact arithmetic for consistent `(p, s)`.
pub fn dihedral_consistency(p: f64) -> Result<f64> {
    let s = p_to_s(p)?;
    Ok(((s * s + 4.0) / (s * s - 16.0) + (2.0 * PI / p).cos()).abs())
}

/// JSON dump of the full simplex geometry at 17 significant digits.
///
/// Keys: `s, p, vertices[5][5], centers[4][5], face_forms[5][5],
/// polar_forms[5][5], gram_orthoscheme[5][5], gram_simplex[5][5]`.
pub fn geometry_json(s: f64) -> Result<String> {
    let sx = build_simplex(s)?;
    let rows = |vs: &[LorentzVector]| -> Vec<Vec<f64>> {
        vs.iter().map(|v| v.coords().to_vec()).collect()
    };
    let form_rows = |fs: &[HyperplaneForm]| -> Vec<Vec<f64>> {
        fs.iter().map(|f| f.coeffs().to_vec()).collect()
    };
    Ok(format!(
        "{{\"s\":{},\"p\":{},\"vertices\":{},\"centers\":{},\"face_forms\":{},\"polar_forms\":{},\"gram_orthoscheme\":{},\"gram_simplex\":{}}}",
        fmt17(sx.param.s),
        fmt17(sx.param.p),
        json_matrix(&rows(&sx.vertices)),
        json_matrix(&rows(&sx.centers)),
        json_matrix(&form_rows(&sx.face_forms)),
        json_matrix(&form_rows(&sx.polar_forms)),
        json_matrix(sx.gram_orthoscheme()?.entries()),
        json_matrix(sx.gram_simplex()?.entries()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{classify_point, PointClass};
    use rand::{Rng, SeedableRng};

    #[test]
    fn domain_endpoints() {
        assert!((p_lower() - 5.104_299_312_119_540_4).abs() < 1e-12);
        assert!(p_to_s(p_lower()).is_err());
        assert!(p_to_s(P_UPPER).is_err());
        assert!(p_to_s(5.0).is_err());
        assert!(p_to_s(7.0).is_err());
        assert!(s_to_p(1.0).is_err());
        assert!(s_to_p(s_upper()).is_err());
    }

    #[test]
    fn limits_approach_the_closed_forms() {
        // s -> 1 at the lower p endpoint, s -> sqrt(8/3) at p -> 6.
        let s_lo = p_to_s(p_lower() + 1e-9).unwrap();
        assert!(s_lo > 1.0 && s_lo - 1.0 < 1e-4);
        let s_hi = p_to_s(6.0 - 1e-9).unwrap();
        assert!(s_hi < s_upper() && s_upper() - s_hi < 1e-4);
        let p_lo = s_to_p(1.0 + 1e-9).unwrap();
        assert!(p_lo - p_lower() < 1e-4);
        let p_hi = s_to_p(s_upper() - 1e-9).unwrap();
        assert!(6.0 - p_hi < 1e-4);
    }

    #[test]
    fn p_s_dictionary_reference_values() {
        // Frozen 40-digit reference values.
        assert!((p_to_s(5.5).unwrap() - 1.367_431_418_481_547_972_5).abs() < 1e-13);
        assert!((s_to_p(1.2).unwrap() - 5.289_406_944_691_297_943_1).abs() < 1e-13);
    }

    #[test]
    fn round_trip_and_monotonicity() {
        assert!((s_to_p(p_to_s(5.5).unwrap()).unwrap() - 5.5).abs() < 1e-12);
        let n = 400;
        let (lo, hi) = (p_lower() + 1e-6, P_UPPER - 1e-6);
        let mut prev_s = 0.0;
        for i in 0..=n {
            let p = lo + (hi - lo) * i as f64 / n as f64;
            let s = p_to_s(p).unwrap();
            if i > 0 {
                assert!(s > prev_s, "p_to_s not strictly increasing at p = {p}");
            }
            prev_s = s;
            assert!((s_to_p(s).unwrap() - p).abs() < 1e-12);
        }
    }

    #[test]
    fn simplex_parameter_consistency() {
        let a = SimplexParameter::from_p(5.5).unwrap();
        let b = SimplexParameter::from_s(a.s).unwrap();
        assert!((a.p - b.p).abs() < 1e-12);
    }

    #[test]
    fn vertex_products_and_center() {
        let s = 1.2;
        let sx = build_simplex(s).unwrap();
        assert_eq!(sx.centers[0].coords(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        for i in 0..5 {
            let q = bilinear_form(&sx.vertices[i], &sx.vertices[i]).unwrap();
            assert!((q - (s * s - 1.0)).abs() < 1e-14);
            assert_eq!(
                classify_point(&sx.vertices[i]).unwrap(),
                PointClass::Outer
            );
        }
        let expect = -1.0 - s * s / 4.0;
        let mut spread: f64 = 0.0;
        for i in 0..5 {
            for j in (i + 1)..5 {
                let g = bilinear_form(&sx.vertices[i], &sx.vertices[j]).unwrap();
                assert!((g - expect).abs() < 1e-14);
                spread = spread.max((g - expect).abs());
            }
        }
        assert!(spread < 1e-12);
    }

    #[test]
    fn centers_match_their_closed_forms() {
        let s = 1.2;
        let sx = build_simplex(s).unwrap();
        let r10 = 10.0_f64.sqrt();
        let r5 = 5.0_f64.sqrt();
        let expected = [
            vec![1.0, 0.0, 0.0, 0.0, 0.0],
            vec![1.0, -s * r10 / 16.0, 0.0, s * r5 / 16.0, s / 16.0],
            vec![1.0, 0.0, 0.0, s * r5 / 6.0, s / 6.0],
            vec![1.0, 0.0, s * r10 / 8.0, s * r5 / 8.0, 3.0 * s / 8.0],
        ];
        for (c, e) in sx.centers.iter().zip(&expected) {
            for (a, b) in c.coords().iter().zip(e) {
                assert!((a - b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn face_form_incidence_is_diagonal() {
        let sx = build_simplex(1.2).unwrap();
        // Orthoscheme vertices in the order (P0, P1, P2, P3, B1); face i is
        // opposite vertex i and contains the other four.
        let verts: Vec<&LorentzVector> = sx
            .centers
            .iter()
            .chain(std::iter::once(&sx.vertices[0]))
            .collect();
        for (i, f) in sx.face_forms.iter().enumerate() {
            for (j, v) in verts.iter().enumerate() {
                let e = f.eval(v).unwrap();
                if i == j {
                    assert!(e.abs() > 1e-3, "face {i} degenerate at vertex {j}");
                } else {
                    assert!(e.abs() < 1e-12, "face {i} not through vertex {j}: {e}");
                }
            }
        }
        // First coefficient of the first face form is s/sqrt(16-s^2).
        let s = 1.2_f64;
        assert!(
            (sx.face_forms[0].coeffs()[0] - s / (16.0 - s * s).sqrt()).abs() < 1e-15
        );
        // The orthoscheme interior lies on the negative side of every face.
        let mut mid = vec![0.0; 5];
        for v in &verts {
            let ch = v.chart_normalized().unwrap();
            for (m, x) in mid.iter_mut().zip(ch.coords()) {
                *m += x / 5.0;
            }
        }
        let interior = LorentzVector::new(mid).unwrap();
        for f in &sx.face_forms {
            assert!(f.eval(&interior).unwrap() < 0.0);
        }
    }

    #[test]
    fn gram_matrices_match_references() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(41);
        for _ in 0..10 {
            let s: f64 = rng.gen_range(1.01..1.62);
            let sx = build_simplex(s).unwrap();
            let g = sx.gram_orthoscheme().unwrap();
            let r = orthoscheme_gram_reference(s).unwrap();
            assert!(g.max_abs_diff(&r) < 1e-13, "orthoscheme gram at s = {s}");

            let gs = sx.gram_simplex().unwrap();
            let rs = simplex_gram_reference(s).unwrap();
            assert!(gs.max_abs_diff(&rs) < 1e-13, "simplex gram at s = {s}");

            // Polar forms have their own Gram: off-diagonals
            // -(s^2+4)/(4s^2-4), the (negated) cosh of the plane distance.
            let gp = sx.gram_polar().unwrap();
            let off = -(s * s + 4.0) / (4.0 * s * s - 4.0);
            for i in 0..5 {
                for j in 0..5 {
                    let e = if i == j { 1.0 } else { off };
                    assert!((gp.entries()[i][j] - e).abs() < 1e-12);
                }
            }

            let gb = sx.gram_base_tetrahedron().unwrap();
            let rb = base_gram_reference(sx.param.p).unwrap();
            assert!(gb.max_abs_diff(&rb) < 1e-12, "base gram at s = {s}");
        }
    }

    #[test]
    fn single_form_gram_is_identity() {
        let f = HyperplaneForm::new(vec![0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let g = gram_of_forms(&[f]).unwrap();
        assert_eq!(g.size(), 1);
        assert!((g.entries()[0][0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dihedral_identity_holds() {
        assert!(dihedral_consistency(5.5).unwrap() <= 1e-12);
        assert!(dihedral_consistency(5.2).unwrap() <= 1e-12);
        // Near p = 6 the facet Gram entry approaches -cos(2 pi/6) = -1/2.
        let s = p_to_s(6.0 - 1e-9).unwrap();
        assert!(((s * s + 4.0) / (s * s - 16.0) + 0.5).abs() < 1e-6);
    }

    #[test]
    fn feet_lie_on_the_truncating_plane() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(43);
        for _ in 0..10 {
            let s: f64 = rng.gen_range(1.01..1.62);
            let sx = build_simplex(s).unwrap();
            for q in &sx.feet {
                assert_eq!(classify_point(q).unwrap(), PointClass::Proper);
                assert!(sx.polar_forms[0].eval(q).unwrap().abs() < 1e-12);
            }
        }
        // Closed form of the first foot: Q_0 = (1, 0, 0, 0, 1/s).
        let sx = build_simplex(1.2).unwrap();
        let q0 = &sx.feet[0];
        assert!((q0.coords()[4] - 1.0 / 1.2).abs() < 1e-14);
        for k in 1..4 {
            assert!(q0.coords()[k].abs() < 1e-15);
        }
    }

    #[test]
    fn truncating_plane_distances_agree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(47);
        for _ in 0..10 {
            let s: f64 = rng.gen_range(1.01..1.6);
            let sx = build_simplex(s).unwrap();
            let mut dists = Vec::new();
            for i in 0..5 {
                for j in (i + 1)..5 {
                    match crate::lorentz::plane_plane_relation(
                        &sx.polar_forms[i],
                        &sx.polar_forms[j],
                    )
                    .unwrap()
                    {
                        crate::lorentz::PlaneRelation::Ultraparallel { distance } => {
                            dists.push(distance)
                        }
                        r => panic!("expected ultraparallel, got {r:?}"),
                    }
                }
            }
            let (lo, hi) = dists
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &d| {
                    (a.min(d), b.max(d))
                });
            assert!(hi - lo < 1e-12, "distance spread {} at s = {s}", hi - lo);
        }
    }

    #[test]
    fn geometry_json_is_well_formed() {
        let s = 1.2;
        let dump = geometry_json(s).unwrap();
        let v: serde_json::Value = serde_json::from_str(&dump).unwrap();
        assert_eq!(v["s"].as_f64().unwrap(), s);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 5);
        assert_eq!(v["vertices"][0][4].as_f64().unwrap(), s);
        assert_eq!(v["centers"].as_array().unwrap().len(), 4);
        let g00 = v["gram_orthoscheme"][0][0].as_f64().unwrap();
        assert!((g00 - 1.0).abs() < 1e-14);
        let g01 = v["gram_orthoscheme"][0][1].as_f64().unwrap();
        assert!((g01 + 10.0_f64.sqrt() / (16.0 - s * s).sqrt()).abs() < 1e-13);
        let gs01 = v["gram_simplex"][0][1].as_f64().unwrap();
        assert!((gs01 - (s * s + 4.0) / (s * s - 16.0)).abs() < 1e-13);
    }
}
