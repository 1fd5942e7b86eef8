//! Density of congruent saturated hyperball packings in hyperbolic
//! 4-space derived from truncated regular simplices.
//!
//! The pipeline, bottom to top:
//!
//! * [`lorentz`] — the Lorentzian bilinear form of signature `(1, n)`,
//!   point classification in the projective chart, hyperplane forms,
//!   polarity, plane-pair relations, and hyperball intersection tests;
//! * [`special`] / [`quadrature`] — the Lobachevsky function as a fast
//!   series and as an independent numerical integral, adaptive Simpson
//!   and tanh-sinh rules, and `cosh`-power integrals used as volume
//!   oracles;
//! * [`simplex`] — the one-parameter family of regular 4-simplices with
//!   outer vertices: vertices, characteristic orthoscheme, face, facet,
//!   and truncating (polar) hyperplane forms, and their Gram matrices in
//!   closed form;
//! * [`volumes`] — closed-form volumes: hyperball pieces over a base
//!   area, the 3-dimensional orthoscheme via the Lobachevsky function,
//!   and the truncated 4-dimensional cell via the difference formula;
//! * [`density`] — hyperball height from the parameter, the packing
//!   density function, a guarded golden-section maximizer, sweeps, and a
//!   CSV emitter;
//! * [`montecarlo`] — seeded, batch-deterministic Monte Carlo volume
//!   estimates that cross-check every closed form;
//! * [`truncation`] — a desk-scale projective polytope lab: vertex
//!   enumeration, polar cutting at outer points, and decomposition of
//!   glued cells into truncated simplices with packing-safety checks on
//!   every cut;
//! * [`acceptance`] — the twelve end-to-end acceptance checks.
//!
//! The interesting numbers: the density is maximized at packing
//! parameter `p` near 5.19550 with density near 0.7586482, on the open
//! parameter interval (5.1043, 6).

// Frozen reference constants keep their full oracle precision (the
// compiler rounds them to the nearest double), and negated comparisons
// such as `!(x > 0.0)` deliberately trap NaN alongside the plain
// violation.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod numfmt;
pub mod special;
pub mod quadrature;
pub mod lorentz;
pub mod simplex;
pub mod volumes;
pub mod density;
pub mod montecarlo;
pub mod truncation;
pub mod acceptance;

pub use error::{HypackError, Result};
