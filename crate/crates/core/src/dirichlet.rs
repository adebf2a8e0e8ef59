//! Dirichlet problem: endpoints `A`, `B` and endpoint tangent angles `θ₁`, `θ₂` prescribed.
//!
//! For a branch `(σ₁, σ₂, j, η)` the unknown is `z = cn(b) ∈ [−1, 1]`. The end phase
//! `z̄ = η cos(θ₂ − θ₁ + σ₁ arccos z²)^{1/2}` follows from the angle condition, and `z` solves
//! a scalar equation expressing that the closed-form chord points along `R(−θ₁)(B − A)`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{Rotation, Sign};
use crate::elliptic::{c_const, lemniscate_integrals, period};
use crate::error::{Error, Result};
use crate::roots::{find_roots, ScanOptions};
use crate::solution::{DirichletInfo, Solution};
use crate::{CurveParams, Point};

/// Number of uniform samples per feasible interval in the root scan.
pub const SCAN_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirichletProblem {
    #[serde(rename = "A")]
    pub a: Point,
    #[serde(rename = "B")]
    pub b: Point,
    pub theta1: f64,
    pub theta2: f64,
}

impl DirichletProblem {
    pub fn new(a: Point, b: Point, theta1: f64, theta2: f64) -> Result<Self> {
        let p = Self { a, b, theta1, theta2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let v = [self.a.x, self.a.y, self.b.x, self.b.y, self.theta1, self.theta2];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.a == self.b {
            return Err(Error::NoClosedCurves);
        }
        if (self.theta2 - self.theta1).abs() > std::f64::consts::PI * (1.0 + 1e-15) {
            return Err(Error::InvalidProblem("|theta2 - theta1| must not exceed pi".into()));
        }
        Ok(())
    }

    pub fn distance(&self) -> f64 {
        (self.b - self.a).norm()
    }
}

/// Branch label `(σ₁, σ₂, j, η)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirichletBranch {
    pub sigma1: Sign,
    pub sigma2: Sign,
    pub j: u32,
    pub eta: Sign,
}

impl DirichletBranch {
    pub fn new(sigma1: Sign, sigma2: Sign, j: u32, eta: Sign) -> Self {
        Self { sigma1, sigma2, j, eta }
    }
}

impl fmt::Display for DirichletBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, eta={})", self.sigma1, self.sigma2, self.j, self.eta)
    }
}

/// `v = R(−θ₁)(B − A)`.
pub fn chord_frame(problem: &DirichletProblem) -> Point {
    Rotation::from_angle(-problem.theta1).apply(problem.b - problem.a)
}

/// Values of `z̄`, `ᾱ_j` and `β̄` at a given `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchValues {
    pub zbar: f64,
    pub alpha_bar: f64,
    pub beta_bar: f64,
    /// Value `0` or `1` of the ceiling term.
    pub ceil: i64,
}

fn values_from_u(sign_z: f64, u: f64, branch: DirichletBranch, delta: f64) -> Option<(f64, BranchValues)> {
    let z = sign_z * u.cos().max(0.0).sqrt();
    let phi = delta + branch.sigma1.value::<f64>() * u;
    let c = phi.cos();
    if c < 0.0 {
        return None;
    }
    let zbar = branch.eta.value::<f64>() * c.sqrt();
    let (s1, s2) = (branch.sigma1.value::<f64>(), branch.sigma2.value::<f64>());
    let (inv_z, g_z) = lemniscate_integrals(z);
    let (inv_zb, g_zb) = lemniscate_integrals(zbar);
    let ceil = ((s1 * inv_z - s2 * inv_zb) / period::<f64>()).ceil();
    let alpha_bar = (branch.j as f64 + ceil) * c_const::<f64>() - s1 * g_z + s2 * g_zb;
    Some((z, BranchValues { zbar, alpha_bar, beta_bar: z - zbar, ceil: ceil as i64 }))
}

/// `z̄`, `ᾱ_j`, `β̄` at `z`, or `None` where `cos(θ₂ − θ₁ + σ₁ arccos z²) < 0`.
pub fn branch_functions(z: f64, branch: DirichletBranch, theta1: f64, theta2: f64) -> Option<BranchValues> {
    if !(z.abs() <= 1.0) {
        return None;
    }
    let u = (z * z).clamp(0.0, 1.0).acos();
    let sign_z = if z < 0.0 { -1.0 } else { 1.0 };
    values_from_u(sign_z, u, branch, theta2 - theta1).map(|(_, v)| v)
}

/// The `u = arccos z²` interval on which `0 ≤ σ₂(θ₂ − θ₁ + σ₁ u) ≤ π/2`, clipped to `[0, π/2]`.
fn feasible_u(branch: DirichletBranch, delta: f64) -> Option<(f64, f64)> {
    // σ₁ u must lie in [lo, hi]
    let (lo, hi) = match branch.sigma2 {
        Sign::Plus => (-delta, FRAC_PI_2 - delta),
        Sign::Minus => (-FRAC_PI_2 - delta, -delta),
    };
    let (lo, hi) = match branch.sigma1 {
        Sign::Plus => (lo, hi),
        Sign::Minus => (-hi, -lo),
    };
    let (lo, hi) = (lo.max(0.0), hi.min(FRAC_PI_2));
    (lo <= hi).then_some((lo, hi))
}

/// Left minus right side of the equation for `z`, scaled by `1/‖B − A‖`.
fn equation(v: Point, sigma1: f64, u: f64, vals: &BranchValues) -> f64 {
    let (z2, s) = (u.cos(), u.sin());
    vals.beta_bar * (z2 * v.x - sigma1 * s * v.y) - vals.alpha_bar * (z2 * v.y + sigma1 * s * v.x)
}

fn build(problem: &DirichletProblem, branch: DirichletBranch, z: f64, vals: BranchValues) -> Option<Solution> {
    let t = period::<f64>();
    let (s1, s2) = (branch.sigma1.value::<f64>(), branch.sigma2.value::<f64>());
    let edge = 1.0 - 1e-12;
    if (z.abs() >= edge && Sign::of(z) != branch.sigma1) || (vals.zbar.abs() >= edge && Sign::of(vals.zbar) != branch.sigma2) {
        return None;
    }
    if !(vals.alpha_bar > 0.0) {
        return None;
    }
    // The equation only makes the chord parallel to v; it must also point the same way.
    let v = chord_frame(problem);
    let u = (z * z).clamp(0.0, 1.0).acos();
    let turned = Point::new(u.cos() * v.x - s1 * u.sin() * v.y, u.cos() * v.y + s1 * u.sin() * v.x);
    if vals.alpha_bar * turned.x + vals.beta_bar * turned.y <= 0.0 {
        return None;
    }
    let d = problem.distance();
    let norm = vals.alpha_bar.hypot(vals.beta_bar);
    let a = std::f64::consts::SQRT_2 * norm / d;
    let inv_z = lemniscate_integrals(z).0;
    let inv_zb = lemniscate_integrals(vals.zbar).0;
    let b = s1 * inv_z;
    if b >= t / 2.0 {
        return None;
    }
    let phase = (branch.j as f64 + vals.ceil as f64) * t - s1 * inv_z + s2 * inv_zb;
    let length = phase / a;
    if !(length > 0.0) {
        return None;
    }
    let params = CurveParams { a, b, length, rotation: Rotation::from_angle(problem.theta1), start: problem.a };
    if params.validate().is_err() {
        return None;
    }
    // Closed-form consistency: the chord must land on B.
    if (params.end_point() - problem.b).norm() > 1e-8 * d {
        return None;
    }
    Some(Solution {
        params,
        branch: params.classify_type_with_tol(1e-9 * (1.0 + a * length)).ok(),
        energy: params.energy(),
        length,
        symmetry: params.classify_symmetry(None),
        class_label: None,
        boundary_case: z.abs() >= edge || vals.zbar.abs() >= edge,
        dirichlet: Some(DirichletInfo { branch, z, zbar: vals.zbar, aliases: Vec::new() }),
        residuals: None,
    })
}

/// All solutions of the Dirichlet problem on branch `(σ₁, σ₂, j, η)`.
pub fn solve_dirichlet_branch(problem: &DirichletProblem, branch: DirichletBranch) -> Result<Vec<Solution>> {
    problem.validate()?;
    let delta = problem.theta2 - problem.theta1;
    let Some((u_lo, u_hi)) = feasible_u(branch, delta) else {
        return Ok(Vec::new());
    };
    let d = problem.distance();
    let v = chord_frame(problem) * (1.0 / d);
    let s1 = branch.sigma1.value::<f64>();
    let mut out = Vec::new();
    for sign_z in [-1.0, 1.0] {
        let eval = |u: f64| match values_from_u(sign_z, u, branch, delta) {
            Some((_, vals)) => (equation(v, s1, u, &vals), vals.ceil),
            None => (f64::NAN, -1),
        };
        let roots = if u_hi > u_lo {
            let opts = ScanOptions { samples: SCAN_SAMPLES, rel_tol: 1e-14, zero_tol: 1e-12 };
            find_roots(eval, u_lo, u_hi, opts)
        } else if eval(u_lo).0.abs() <= 1e-12 {
            vec![u_lo]
        } else {
            Vec::new()
        };
        for u in roots {
            if let Some((z, vals)) = values_from_u(sign_z, u, branch, delta) {
                if let Some(s) = build(problem, branch, z, vals) {
                    out.push(s);
                }
            }
        }
    }
    dedupe(&mut out, d);
    Ok(out)
}

fn same_curve(x: &Solution, y: &Solution, d: f64) -> bool {
    let (p, q) = (&x.params, &y.params);
    (p.a * d - q.a * d).abs() <= 1e-9 && (p.b - q.b).abs() <= 1e-9 && (p.a * p.length - q.a * q.length).abs() <= 1e-9
}

fn dedupe(list: &mut Vec<Solution>, d: f64) {
    let mut kept: Vec<Solution> = Vec::with_capacity(list.len());
    for s in list.drain(..) {
        if let Some(prev) = kept.iter_mut().find(|k| same_curve(k, &s, d)) {
            let alias = s.dirichlet.as_ref().map(|i| i.branch);
            if let (Some(info), Some(alias)) = (prev.dirichlet.as_mut(), alias) {
                if info.branch != alias && !info.aliases.contains(&alias) {
                    info.aliases.push(alias);
                }
            }
        } else {
            kept.push(s);
        }
    }
    *list = kept;
}

/// All solutions over the 8 sign patterns `(σ₁, σ₂, η)` and `j ≤ j_max`, with duplicates
/// merged, sorted by energy and then branch.
pub fn enumerate_dirichlet(problem: &DirichletProblem, j_max: u32) -> Result<Vec<Solution>> {
    problem.validate()?;
    let mut all = Vec::new();
    for j in 0..=j_max {
        for s1 in Sign::BOTH {
            for s2 in Sign::BOTH {
                for eta in Sign::BOTH {
                    all.extend(solve_dirichlet_branch(problem, DirichletBranch::new(s1, s2, j, eta))?);
                }
            }
        }
    }
    let key = |s: &Solution| s.dirichlet.as_ref().map(|i| i.branch);
    all.sort_by(|x, y| x.energy.total_cmp(&y.energy).then(key(x).cmp(&key(y))));
    dedupe(&mut all, problem.distance());
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::SymmetryClass;

    fn dg_problem(beta: f64) -> DirichletProblem {
        let t = beta.atan();
        DirichletProblem::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0), t, -t).unwrap()
    }

    #[test]
    fn chord_frame_examples() {
        let p = DirichletProblem::new(Point::new(1.0, 1.0), Point::new(1.0, 2.0), FRAC_PI_2, 0.0).unwrap();
        let v = chord_frame(&p);
        assert!((v - Point::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn branch_function_examples() {
        let b = DirichletBranch::new(Sign::Plus, Sign::Plus, 0, Sign::Minus);
        assert_eq!(branch_functions(1.0, b, 0.3, 0.3).unwrap().zbar, -1.0);
        let t = std::f64::consts::FRAC_PI_4;
        let z = -t.cos().sqrt();
        let v = branch_functions(z, DirichletBranch::new(Sign::Plus, Sign::Minus, 0, Sign::Minus), t, -t).unwrap();
        assert!((v.zbar - z).abs() < 1e-15);
        // cos(θ₂ − θ₁ + arccos z²) < 0
        assert!(branch_functions(0.0, b, 0.0, 0.5).is_none());
    }

    #[test]
    fn symmetric_graph_solution() {
        let p = dg_problem(1.0);
        let sols = solve_dirichlet_branch(&p, DirichletBranch::new(Sign::Plus, Sign::Minus, 0, Sign::Minus)).unwrap();
        assert_eq!(sols.len(), 1);
        let info = sols[0].dirichlet.as_ref().unwrap();
        assert!((info.z + (1f64 / 2f64.sqrt()).sqrt()).abs() < 1e-10);
        assert!((sols[0].params.a - 1.0526035).abs() < 1e-6);
        assert!((sols[0].length - 1.1163412).abs() < 1e-6);
    }

    #[test]
    fn axial_family() {
        let p = dg_problem(1.0);
        let z0 = p.theta1.cos().sqrt();
        for j in 0..4 {
            let sols = solve_dirichlet_branch(&p, DirichletBranch::new(Sign::Plus, Sign::Minus, j, Sign::Plus)).unwrap();
            let sym = sols.iter().find(|s| (s.dirichlet.as_ref().unwrap().z - z0).abs() < 1e-10).expect("z = z̄ root");
            assert_eq!(sym.symmetry, SymmetryClass::AxiallySymmetric);
        }
    }
}
