//! Exact rational calculus of polyhedral convex sets and piecewise-linear
//! convex functions in finite dimension.
//!
//! Sets are [`Polyhedron`] values carrying a canonical constraint form
//! (equations and inequalities) and/or a canonical generator form (points,
//! rays and a lineality basis). Functions are [`GpcFunction`] values: the
//! maximum of finitely many affine pieces over a polyhedral domain, and plus
//! infinity outside it. All arithmetic is exact.
//!
//! In finite dimension every image, Minkowski sum, convex hull of a union and
//! generated cone of polyhedra is closed, so the constructions here never
//! take closures.

pub mod dd;
pub mod error;
pub mod faces;
pub mod forms;
pub mod functions;
pub mod linalg;
pub mod lp;
pub mod ops;
pub mod oracle;
pub mod polyhedron;
pub mod random;
pub mod rational;

pub use error::{EpigraphDefect, Error, Result};
pub use faces::{ActiveSet, Face};
pub use forms::{ConstraintForm, GeneratorForm, Row};
pub use functions::{ExtendedValue, GpcFunction, PwlCell, PwlDecomposition};
pub use lp::{LinearProgram, LpResult};
pub use ops::{LinearMap, Separation};
pub use polyhedron::Polyhedron;
pub use rational::{int, parse_rational, rat, QMatrix, QVector, Rational};
