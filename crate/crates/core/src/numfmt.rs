//! Text formatting of floating-point values at 17 significant digits.
//!
//! Every number the crate emits (JSON reports, CSV rows, geometry dumps,
//! fixture files) goes through [`fmt17`] so that values round-trip exactly
//! through text: 17 significant decimal digits determine an `f64` uniquely.

/// Format `x` with 17 significant digits in scientific notation.
///
/// The output (for example `7.5864825042005329e-1`) is a valid JSON number
/// and parses back to the identical `f64` bit pattern.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render a slice as a JSON array of 17-significant-digit numbers.
pub fn json_array(xs: &[f64]) -> String {
    let body: Vec<String> = xs.iter().map(|&x| fmt17(x)).collect();
    format!("[{}]", body.join(","))
}

/// Render a matrix (slice of rows) as a nested JSON array.
pub fn json_matrix(rows: &[Vec<f64>]) -> String {
    let body: Vec<String> = rows.iter().map(|r| json_array(r)).collect();
    format!("[{}]", body.join(","))
}
