//! Planar Willmore curves: free-length elastica through two points with prescribed end
//! curvatures (Navier data) or end tangent angles (Dirichlet data).
//!
//! Every solution is given in closed form by Jacobi elliptic functions at modulus `1/√2`:
//! the curvature is `κ(s) = √2 a cn(as + b)` on `[0, L]`, and the curve is placed by a
//! rotation `Q` and start point `A`.

// Negated comparisons in this crate are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
pub mod dirichlet;
pub mod elliptic;
pub mod error;
pub mod navier;
pub mod oracle;
pub mod quad;
pub mod roots;
pub mod scalar;
pub mod solution;

pub use curve::{from_ivp, BranchSpec, Rotation, SamplePoint, Sign, SymmetryClass, Vec2};
pub use dirichlet::{DirichletBranch, DirichletProblem};
pub use error::{Error, Result};
pub use navier::NavierProblem;
pub use oracle::{ResidualReport, Tolerances};
pub use scalar::Real;
pub use solution::{ClassLabel, LabelSign, Solution};

/// Curve parameters in double precision.
pub type CurveParams = curve::CurveParams<f64>;
/// Curve parameters in single precision.
pub type CurveParams32 = curve::CurveParams<f32>;
pub type Point = Vec2<f64>;
