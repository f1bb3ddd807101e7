//! Lower-bound machinery for star-shaped Kakeya sets.
//!
//! A star-shaped Kakeya set contains a unit segment (a *needle*) in every
//! direction and is star-shaped about the origin, so it also contains the
//! triangle spanned by the origin and each needle. This crate provides:
//!
//! * [`geom`]: exact planar geometry of those needle triangles against a
//!   cutoff circle (exterior areas, intersection arcs, closed forms).
//! * [`bounds`]: the closed-form bound functions and the assembled
//!   Case I / Case II lower bounds, expressed as coefficients of π.
//! * [`optimizer`]: deterministic parameter search and iterative refinement.
//! * [`oracle`]: seeded brute-force checks of every geometric lemma.
//! * [`numeric`]: adaptive quadrature, bisection and golden-section search.

pub mod bounds;
pub mod error;
pub mod geom;
pub mod numeric;
pub mod optimizer;
pub mod oracle;

pub use error::{Error, Result};
