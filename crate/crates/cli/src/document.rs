//! The JSON document written by `solve` and read back by `sample` and `verify`.

use serde::{Deserialize, Serialize};

use willmore::curve::SymmetryClass;
use willmore::solution::DirichletInfo;
use willmore::{
    BranchSpec, ClassLabel, CurveParams, DirichletProblem, NavierProblem, Point, ResidualReport, Rotation, Solution,
};

pub const SCHEMA_VERSION: &str = "1.0";

/// Tolerance used when reading `Q` back from a document.
const ROTATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProblemDoc {
    Navier(NavierProblem),
    Dirichlet(DirichletProblem),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineTag {
    Line,
}

/// `{sigma1, sigma2, j}` for elliptic arcs, the string `"line"` for the straight line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BranchField {
    Line(LineTag),
    Typed(BranchSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "L")]
    pub l: f64,
    /// Row-major `[q11, q12, q21, q22]`.
    #[serde(rename = "Q")]
    pub q: [f64; 4],
    #[serde(rename = "A")]
    pub start: [f64; 2],
    pub branch: BranchField,
    pub energy: f64,
    pub length: f64,
    pub symmetry: SymmetryClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_label: Option<ClassLabel>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub boundary_case: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dirichlet: Option<DirichletInfo>,
    pub residuals: Option<ResidualReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub schema_version: String,
    pub problem: ProblemDoc,
    pub solutions: Vec<SolutionRecord>,
    /// Families `F_k` searched by the symmetric catalog that turned out empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empty_classes: Option<Vec<u32>>,
}

impl From<&Solution> for SolutionRecord {
    fn from(s: &Solution) -> Self {
        let p = &s.params;
        Self {
            a: p.a,
            b: p.b,
            l: p.length,
            q: p.rotation.to_matrix(),
            start: [p.start.x, p.start.y],
            branch: s.branch.map_or(BranchField::Line(LineTag::Line), BranchField::Typed),
            energy: s.energy,
            length: s.length,
            symmetry: s.symmetry,
            class_label: s.class_label,
            boundary_case: s.boundary_case,
            dirichlet: s.dirichlet.clone(),
            residuals: s.residuals,
        }
    }
}

impl SolutionRecord {
    pub fn to_solution(&self) -> willmore::Result<Solution> {
        let rotation = Rotation::from_matrix(self.q, ROTATION_TOL)?;
        let start = Point::new(self.start[0], self.start[1]);
        let (params, branch) = match self.branch {
            BranchField::Line(_) => (CurveParams::line(self.l, rotation, start), None),
            BranchField::Typed(spec) => (CurveParams::new(self.a, self.b, self.l, rotation, start)?, Some(spec)),
        };
        Ok(Solution {
            params,
            branch,
            energy: self.energy,
            length: self.length,
            symmetry: self.symmetry,
            class_label: self.class_label,
            boundary_case: self.boundary_case,
            dirichlet: self.dirichlet.clone(),
            residuals: self.residuals,
        })
    }
}

impl SolutionDocument {
    pub fn new(problem: ProblemDoc, solutions: &[Solution]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            problem,
            solutions: solutions.iter().map(SolutionRecord::from).collect(),
            empty_classes: None,
        }
    }
}
