//! Independent checks of computed solutions.
//!
//! The curve is rebuilt by fixed-step RK4 integration of `κ″ = −κ³/2` together with the
//! Frenet equations, starting from the initial data of the solution. Endpoints, boundary
//! curvatures or angles, and the pointwise defect of the Willmore equation are compared
//! with the prescribed data.

use serde::{Deserialize, Serialize};

use crate::curve::BranchSpec;
use crate::dirichlet::DirichletProblem;
use crate::navier::{residual_roots, root_generates_solution, NavierProblem};
use crate::solution::Solution;
use crate::{CurveParams, Point};

/// Residuals of one solution against its boundary value problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Worst endpoint miss `‖γ(L) − B‖` over the quadrature and ODE reconstructions.
    pub endpoint_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvature_residuals: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_residuals: Option<(f64, f64)>,
    /// `sup |−κ″ − κ³/2| / a³` from central differences of the closed-form curvature.
    pub ode_defect: f64,
    pub pass: bool,
}

/// Acceptance thresholds for [`verify_solution`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Endpoint tolerance relative to `‖B − A‖`.
    pub endpoint: f64,
    /// Curvature tolerance relative to `max(1, a²)`.
    pub curvature: f64,
    /// Angle tolerance in radians.
    pub angle: f64,
    pub ode_defect: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { endpoint: 1e-8, curvature: 1e-8, angle: 1e-8, ode_defect: 1e-5 }
    }
}

impl Tolerances {
    /// Same tolerance for endpoint, curvature and angle residuals.
    pub fn uniform(tol: f64) -> Self {
        Self { endpoint: tol, curvature: tol, angle: tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum ProblemRef<'a> {
    Navier(&'a NavierProblem),
    Dirichlet(&'a DirichletProblem),
}

/// RK4 samples `κ(s_i)`, `i = 0..=n`, of `κ″ = −κ³/2` with `κ(0) = κ₀`, `κ′(0) = κ₀′`.
pub fn integrate_curvature_ode(kappa0: f64, kappa0p: f64, length: f64, n: usize) -> Vec<f64> {
    let n = n.max(16);
    let h = length / n as f64;
    let rhs = |k: f64, kp: f64| (kp, -0.5 * k * k * k);
    let mut out = Vec::with_capacity(n + 1);
    let (mut k, mut kp) = (kappa0, kappa0p);
    out.push(k);
    for _ in 0..n {
        let (a1, b1) = rhs(k, kp);
        let (a2, b2) = rhs(k + 0.5 * h * a1, kp + 0.5 * h * b1);
        let (a3, b3) = rhs(k + 0.5 * h * a2, kp + 0.5 * h * b2);
        let (a4, b4) = rhs(k + h * a3, kp + h * b3);
        k += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        kp += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        out.push(k);
    }
    out
}

/// End state of the full ODE reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeEnd {
    pub position: Point,
    pub tangent: Point,
    pub kappa: f64,
}

/// Integrates `(x, y, t, κ, κ′)` with `x′ = t`, `t′ = κ J t`, `κ″ = −κ³/2` over `[0, L]`.
pub fn integrate_curve_ode(start: Point, tangent: Point, kappa0: f64, kappa0p: f64, length: f64, n: usize) -> OdeEnd {
    let n = n.max(16);
    let h = length / n as f64;
    type State = [f64; 6];
    let rhs = |y: &State| -> State { [y[2], y[3], -y[4] * y[3], y[4] * y[2], y[5], -0.5 * y[4] * y[4] * y[4]] };
    let mut y: State = [start.x, start.y, tangent.x, tangent.y, kappa0, kappa0p];
    let add = |y: &State, k: &State, c: f64| -> State { std::array::from_fn(|i| y[i] + c * k[i]) };
    for _ in 0..n {
        let k1 = rhs(&y);
        let k2 = rhs(&add(&y, &k1, 0.5 * h));
        let k3 = rhs(&add(&y, &k2, 0.5 * h));
        let k4 = rhs(&add(&y, &k3, h));
        y = std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    }
    OdeEnd { position: Point::new(y[0], y[1]), tangent: Point::new(y[2], y[3]), kappa: y[4] }
}

/// Step count for the ODE reconstruction: at least 10⁴ and at most `1e-3` phase per step.
pub fn ode_steps(params: &CurveParams) -> usize {
    ((1000.0 * params.a * params.length).ceil() as usize).max(10_000)
}

/// `sup |−κ″ − κ³/2| / a³` on a grid, with `κ″` from central differences.
pub fn ode_defect(params: &CurveParams) -> f64 {
    if params.is_line() {
        return 0.0;
    }
    let a = params.a;
    let h = (1e-3 / a).min(params.length / 4.0);
    let n = 200;
    let kappa = |s: f64| params.curvature(s).unwrap_or(f64::NAN);
    let mut worst: f64 = 0.0;
    for i in 0..=n {
        let s = h + (params.length - 2.0 * h) * i as f64 / n as f64;
        let k = kappa(s);
        let kpp = (kappa(s + h) - 2.0 * k + kappa(s - h)) / (h * h);
        worst = worst.max((-kpp - 0.5 * k * k * k).abs() / (a * a * a));
    }
    worst
}

fn initial_data(params: &CurveParams) -> (f64, f64) {
    (params.curvature(0.0).unwrap_or(0.0), params.curvature_derivative(0.0).unwrap_or(0.0))
}

fn angle_gap(u: Point, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (u.x * s - u.y * c).atan2(u.x * c + u.y * s).abs()
}

/// Boundary and ODE residuals of `solution` for `problem`.
pub fn verify_solution(problem: ProblemRef<'_>, solution: &Solution, tol: &Tolerances) -> ResidualReport {
    let p = &solution.params;
    let (target, d) = match problem {
        ProblemRef::Navier(q) => (q.b, q.distance()),
        ProblemRef::Dirichlet(q) => (q.b, q.distance()),
    };
    let end_quad = p.position(p.length).unwrap_or(Point::new(f64::NAN, f64::NAN));
    let (k0, k0p) = initial_data(p);
    let tangent0 = p.tangent_direction(0.0).unwrap_or(Point::new(f64::NAN, f64::NAN));
    let ode = integrate_curve_ode(p.start, tangent0, k0, k0p, p.length, ode_steps(p));
    let endpoint_residual = (end_quad - target).norm().max((ode.position - target).norm());
    let defect = ode_defect(p);
    let start_miss = (p.start - match problem {
        ProblemRef::Navier(q) => q.a,
        ProblemRef::Dirichlet(q) => q.a,
    })
    .norm();
    let endpoint_residual = endpoint_residual.max(start_miss);

    let scale_k = 1f64.max(p.a * p.a);
    let (curvature_residuals, angle_residuals, bc_ok) = match problem {
        ProblemRef::Navier(q) => {
            let kl = p.curvature(p.length).unwrap_or(f64::NAN);
            let r0 = (k0 - q.kappa1).abs();
            let r1 = (kl - q.kappa2).abs().max((ode.kappa - q.kappa2).abs());
            let ok = r0.max(r1) <= tol.curvature * scale_k;
            (Some((r0, r1)), None, ok)
        }
        ProblemRef::Dirichlet(q) => {
            let tl = p.tangent_direction(p.length).unwrap_or(Point::new(f64::NAN, f64::NAN));
            let r0 = angle_gap(tangent0, q.theta1);
            let r1 = angle_gap(tl, q.theta2).max(angle_gap(ode.tangent, q.theta2));
            let ok = r0.max(r1) <= tol.angle;
            (None, Some((r0, r1)), ok)
        }
    };
    let pass = endpoint_residual <= tol.endpoint * d && bc_ok && defect <= tol.ode_defect;
    ResidualReport { endpoint_residual, curvature_residuals, angle_residuals, ode_defect: defect, pass }
}

/// Number of admissible roots of the Navier equation for `spec`, found on a grid of
/// `samples` points with piece boundaries and tangencies handled as in the solver.
pub fn sweep_count(problem: &NavierProblem, spec: BranchSpec, samples: usize) -> usize {
    residual_roots(problem, spec, samples.max(10_000))
        .into_iter()
        .filter(|&a| root_generates_solution(problem, spec, a))
        .count()
}
