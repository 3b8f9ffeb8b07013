//! Finite Blaschke products on the unit circle.
//!
//! The crate computes the extrema of `|B'|` on the circle, builds the
//! hypergeometric Blaschke products that are extremal for the inequality
//! `n/(M-n+1) <= m <= n-1+n/M`, checks the hypergeometric identities behind
//! them in exact rational arithmetic, and synthesizes a product of degree `n`
//! with any feasible pair of derivative extrema `(m, M)`.

pub mod blaschke;
pub mod error;
pub mod extremal;
pub mod hypergeo;
pub mod io;
pub mod polynomial;
pub mod prescribe;
pub mod rational;
pub mod tol;

pub use blaschke::{BlaschkeProduct, ExtremaReport, PreimageSet, Verdict};
pub use error::{Error, Result};
pub use extremal::{extremal_product, predicted_extrema, ExtremalKind, ExtremalProduct, ExtremalSpec};
pub use polynomial::{wronskian_combo, ComplexPoly, RationalPoly, RootSet};
pub use prescribe::{construct, feasibility, Case, Construction, Feasibility};
pub use rational::Rational;
pub use tol::Tolerances;
