//! Solution records shared by the Navier and Dirichlet solvers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{BranchSpec, SymmetryClass};
use crate::dirichlet::DirichletBranch;
use crate::oracle::ResidualReport;
use crate::CurveParams;

/// Which half of a symmetric family `F_k` a solution belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LabelSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    /// Both halves; used at `κ = 0` for the line and for `(σ, σ, k)` types.
    #[serde(rename = "+-")]
    Both,
}

/// Family tag `F_k^±` of a symmetric Navier solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassLabel {
    pub k: u32,
    pub sign: LabelSign,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            LabelSign::Plus => "+",
            LabelSign::Minus => "-",
            LabelSign::Both => "+-",
        };
        write!(f, "F{}{}", self.k, s)
    }
}

/// Extra data carried by Dirichlet solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletInfo {
    pub branch: DirichletBranch,
    pub z: f64,
    pub zbar: f64,
    /// Other `(σ₁, σ₂, j, η)` labels that produced the same curve.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<DirichletBranch>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub params: CurveParams,
    /// `None` for the straight line.
    pub branch: Option<BranchSpec>,
    pub energy: f64,
    pub length: f64,
    pub symmetry: SymmetryClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_label: Option<ClassLabel>,
    /// Set when the curve sits on the edge `|κ| = √2 a` of the admissible region.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub boundary_case: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dirichlet: Option<DirichletInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualReport>,
}

impl Solution {
    pub fn is_line(&self) -> bool {
        self.params.is_line()
    }
}
