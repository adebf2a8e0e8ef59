//! Navier problem: endpoints `A`, `B` and endpoint curvatures `κ₁`, `κ₂` prescribed.
//!
//! A `(σ₁, σ₂, j)` solution is generated by a root `a ≥ a₀ = max|κᵢ|/√2` of
//! `2 f(a)² / a² + (κ₂ − κ₁)² / a⁴ = ‖B − A‖²`. The symmetric case `κ₁ = κ₂` is also solved
//! through the equivalent equations in `z = |κ| / (√2 a)`, which yields complete catalogs.

use serde::{Deserialize, Serialize};

use crate::curve::{BranchSpec, Rotation, Sign, SymmetryClass};
use crate::elliptic::{c_const, lemniscate_integrals, m_k, period};
use crate::error::{domain, Error, Result};
use crate::roots::{bisect, find_roots, ScanOptions};
use crate::solution::{ClassLabel, LabelSign, Solution};
use crate::{CurveParams, Point};

/// Number of uniform samples in the root scan over `a`.
pub const SCAN_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NavierProblem {
    #[serde(rename = "A")]
    pub a: Point,
    #[serde(rename = "B")]
    pub b: Point,
    pub kappa1: f64,
    pub kappa2: f64,
}

impl NavierProblem {
    pub fn new(a: Point, b: Point, kappa1: f64, kappa2: f64) -> Result<Self> {
        let p = Self { a, b, kappa1, kappa2 };
        p.validate()?;
        Ok(p)
    }

    pub fn symmetric(a: Point, b: Point, kappa: f64) -> Result<Self> {
        Self::new(a, b, kappa, kappa)
    }

    pub fn validate(&self) -> Result<()> {
        let v = [self.a.x, self.a.y, self.b.x, self.b.y, self.kappa1, self.kappa2];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.a == self.b {
            return Err(Error::NoClosedCurves);
        }
        Ok(())
    }

    pub fn chord(&self) -> Point {
        self.b - self.a
    }

    pub fn distance(&self) -> f64 {
        self.chord().norm()
    }

    /// Admissibility floor `a₀ = max(|κ₁|, |κ₂|) / √2`.
    pub fn a0(&self) -> f64 {
        self.kappa1.abs().max(self.kappa2.abs()) / std::f64::consts::SQRT_2
    }

    fn scaled(&self, a: f64) -> (f64, f64) {
        let s = std::f64::consts::SQRT_2 * a;
        ((self.kappa1 / s).clamp(-1.0, 1.0), (self.kappa2 / s).clamp(-1.0, 1.0))
    }
}

/// `f_{σ₁,σ₂,j}` in terms of `κ̃ᵢ = κᵢ / (√2 a)`, together with the value of the ceiling term.
fn f_scaled(spec: BranchSpec, k1t: f64, k2t: f64) -> (f64, i64) {
    let (inv1, g1) = lemniscate_integrals(k1t);
    let (inv2, g2) = lemniscate_integrals(k2t);
    let (s1, s2) = (spec.sigma1.value::<f64>(), spec.sigma2.value::<f64>());
    let ceil = ((s1 * inv1 - s2 * inv2) / period::<f64>()).ceil();
    let g = if spec.sigma1 == spec.sigma2 { g1 - g2 } else { g1 + g2 };
    ((spec.j as f64 + ceil) * c_const::<f64>() - s1 * g, ceil as i64)
}

/// The function `f_{σ₁,σ₂,j}(κ₁, κ₂, a)` whose roots in `a` generate Navier solutions.
pub fn branch_f(spec: BranchSpec, kappa1: f64, kappa2: f64, a: f64) -> Result<f64> {
    if !kappa1.is_finite() || !kappa2.is_finite() || !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let a0 = kappa1.abs().max(kappa2.abs()) / std::f64::consts::SQRT_2;
    if !(a > 0.0) || a < a0 {
        return Err(domain(a, "a > 0, a >= max|kappa_i|/sqrt(2)"));
    }
    let s = std::f64::consts::SQRT_2 * a;
    Ok(f_scaled(spec, (kappa1 / s).clamp(-1.0, 1.0), (kappa2 / s).clamp(-1.0, 1.0)).0)
}

fn residual_piece(problem: &NavierProblem, spec: BranchSpec, a: f64) -> (f64, i64) {
    let (k1t, k2t) = problem.scaled(a);
    let (f, piece) = f_scaled(spec, k1t, k2t);
    let dk = problem.kappa2 - problem.kappa1;
    let d = problem.distance();
    let a2 = a * a;
    (2.0 * f * f / a2 + dk * dk / (a2 * a2) - d * d, piece)
}

/// `2f²/a² + (κ₂ − κ₁)²/a⁴ − ‖B − A‖²`.
pub fn residual_a(problem: &NavierProblem, spec: BranchSpec, a: f64) -> Result<f64> {
    branch_f(spec, problem.kappa1, problem.kappa2, a)?;
    Ok(residual_piece(problem, spec, a).0)
}

/// Whether `a` satisfies the side conditions `κᵢ = ±√2 a ⇒ σᵢ = ±1`.
pub fn is_admissible(problem: &NavierProblem, spec: BranchSpec, a: f64) -> bool {
    let (k1t, k2t) = problem.scaled(a);
    let ok = |kt: f64, sigma: Sign| 1.0 - kt.abs() > 1e-12 || Sign::of(kt) == sigma;
    ok(k1t, spec.sigma1) && ok(k2t, spec.sigma2)
}

/// The search interval `[a_lo, a_max]` for the scan over `a`.
pub fn search_interval(problem: &NavierProblem, j: u32) -> (f64, f64) {
    let a0 = problem.a0();
    let a_max = std::f64::consts::SQRT_2 * (j as f64 + 2.0) * c_const::<f64>() / problem.distance() + a0;
    let lo = if a0 > 0.0 { a0 } else { 1e-9 * a_max };
    (lo, a_max)
}

/// All roots `a` of [`residual_a`] on the search interval, before side-condition filtering.
pub fn residual_roots(problem: &NavierProblem, spec: BranchSpec, samples: usize) -> Vec<f64> {
    let (lo, hi) = search_interval(problem, spec.j);
    let d2 = problem.distance().powi(2);
    let opts = ScanOptions { samples, rel_tol: 1e-13, zero_tol: 1e-10 * d2 };
    find_roots(|a| residual_piece(problem, spec, a), lo, hi, opts)
}

/// Rotation `Q` with `Q w = chord`.
pub fn compute_q(w: Point, chord: Point) -> Result<Rotation<f64>> {
    let (nw, nc) = (w.norm(), chord.norm());
    if !(nw > 0.0) {
        return Err(Error::Inconsistent("zero offset vector".into()));
    }
    if (nw - nc).abs() > 1e-9 * nc {
        return Err(Error::Inconsistent(format!("|w| = {nw} but |B - A| = {nc}")));
    }
    Ok(Rotation::from_angle(chord.angle() - w.angle()))
}

/// Phase `b` and length `L` generated by `a`, if `a` gives an admissible curve.
fn phase_and_length(problem: &NavierProblem, spec: BranchSpec, a: f64) -> Option<(f64, f64)> {
    if !is_admissible(problem, spec, a) {
        return None;
    }
    let t = period::<f64>();
    let (k1t, k2t) = problem.scaled(a);
    let b = spec.sigma1.value::<f64>() * lemniscate_integrals(k1t).0;
    let bt = spec.sigma2.value::<f64>() * lemniscate_integrals(k2t).0;
    if b >= t / 2.0 {
        return None;
    }
    let m = spec.j as f64 + ((b - bt) / t).ceil();
    let length = (m * t + bt - b) / a;
    (length > 0.0).then_some((b, length))
}

/// Whether a root `a` of [`residual_a`] generates a `(σ₁, σ₂, j)` solution.
pub fn root_generates_solution(problem: &NavierProblem, spec: BranchSpec, a: f64) -> bool {
    phase_and_length(problem, spec, a).is_some()
}

/// Builds the `(σ₁, σ₂, j)` solution generated by a root `a`, or `None` if `a` is inadmissible.
fn build_solution(problem: &NavierProblem, spec: BranchSpec, a: f64) -> Result<Option<Solution>> {
    let Some((b, length)) = phase_and_length(problem, spec, a) else {
        return Ok(None);
    };
    let (k1t, k2t) = problem.scaled(a);
    let mut params = CurveParams::line(length, Rotation::identity(), problem.a);
    params.a = a;
    params.b = b;
    let q = compute_q(params.endpoint_offset(), problem.chord())?;
    params.rotation = q;

    let tol = 1e-9 * (1.0 + a * length);
    let got = params.classify_type_with_tol(tol)?;
    if got != spec {
        return Err(Error::Inconsistent(format!("root a = {a} of branch {spec} classifies as {got}")));
    }
    let dk = problem.kappa2 - problem.kappa1;
    let d = problem.distance();
    let energy = (a.powi(4) * d * d - dk * dk).max(0.0).sqrt();
    let boundary_case = 1.0 - k1t.abs() <= 1e-12 || 1.0 - k2t.abs() <= 1e-12;
    Ok(Some(Solution {
        params,
        branch: Some(spec),
        energy,
        length,
        symmetry: params.classify_symmetry(None),
        class_label: None,
        boundary_case,
        dirichlet: None,
        residuals: None,
    }))
}

/// All `(σ₁, σ₂, j)`-type solutions of the Navier problem.
pub fn solve_branch(problem: &NavierProblem, spec: BranchSpec) -> Result<Vec<Solution>> {
    problem.validate()?;
    let mut out = Vec::new();
    for a in residual_roots(problem, spec, SCAN_SAMPLES) {
        if let Some(s) = build_solution(problem, spec, a)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// The straight segment from `A` to `B`.
pub fn straight_line(problem: &NavierProblem) -> Solution {
    let chord = problem.chord();
    let params = CurveParams::line(chord.norm(), Rotation::from_angle(chord.angle()), problem.a);
    Solution {
        params,
        branch: None,
        energy: 0.0,
        length: params.length,
        symmetry: SymmetryClass::AxiallySymmetric,
        class_label: None,
        boundary_case: false,
        dirichlet: None,
        residuals: None,
    }
}

/// Every solution of type `(σ₁, σ₂, j)` with `j ≤ j_max`, plus the straight line when
/// `κ₁ = κ₂ = 0`. Sorted by `(j, σ₁, σ₂, a)`.
pub fn enumerate(problem: &NavierProblem, j_max: u32) -> Result<Vec<Solution>> {
    problem.validate()?;
    let mut out = Vec::new();
    if problem.kappa1 == 0.0 && problem.kappa2 == 0.0 {
        out.push(straight_line(problem));
    }
    for j in 0..=j_max {
        for s1 in Sign::BOTH {
            for s2 in Sign::BOTH {
                out.extend(solve_branch(problem, BranchSpec::new(s1, s2, j))?);
            }
        }
    }
    Ok(out)
}

/// Relative tolerance for recognising a tangential (double) root at `|κ| d = M_k`.
pub const TANGENCY_TOL: f64 = 1e-10;

fn h_rising(k: u32, z: f64) -> f64 {
    2.0 * z * (k as f64 * c_const::<f64>() + 2.0 * lemniscate_integrals(z).1)
}

fn h_increasing(k: u32, z: f64) -> f64 {
    // 2z((k − 1)C + 2G(−z)) for k ≥ 1
    2.0 * z * ((k as f64 - 1.0) * c_const::<f64>() + 2.0 * lemniscate_integrals(-z).1)
}

/// Roots `z ∈ (0, 1)` of `h_k(z) = target` for the concave `h_k(z) = 2z(kC + 2G(z))`.
///
/// Returns the rising-side root first. A target within the tangency tolerance of the peak
/// gives the single double root.
fn concave_roots(k: u32, target: f64, keep_falling: impl Fn(f64) -> bool) -> Vec<f64> {
    let (peak, z_star) = m_k::<f64>(k);
    if (target - peak).abs() <= TANGENCY_TOL * peak {
        return vec![z_star];
    }
    if target > peak {
        return Vec::new();
    }
    let g = |z: f64| h_rising(k, z) - target;
    let mut out = vec![bisect(g, 0.0, z_star, 1e-15)];
    if keep_falling(target) {
        out.push(bisect(g, z_star, 1.0, 1e-15));
    }
    out
}

fn label(kappa: f64, spec: BranchSpec) -> ClassLabel {
    let s = Sign::of(kappa);
    if kappa == 0.0 {
        let sign = match (spec.sigma1, spec.sigma2) {
            (Sign::Minus, Sign::Plus) => LabelSign::Plus,
            (Sign::Plus, Sign::Minus) => LabelSign::Minus,
            _ => LabelSign::Both,
        };
        return ClassLabel { k: spec.j, sign };
    }
    let sign = if s == Sign::Plus { LabelSign::Plus } else { LabelSign::Minus };
    let k = if spec.sigma1 == s && spec.sigma2 == s.flip() { spec.j + 1 } else { spec.j };
    ClassLabel { k, sign }
}

/// Default number of families visited by [`solve_symmetric_catalog`]: one beyond the last
/// nonempty class.
pub fn default_k_max(kappa: f64, d: f64) -> u32 {
    ((kappa.abs() * d) / (2.0 * c_const::<f64>())).ceil() as u32 + 1
}

fn symmetric_solution(problem: &NavierProblem, spec: BranchSpec, a: f64, boundary: bool) -> Result<Solution> {
    let mut sol = build_solution(problem, spec, a)?.ok_or_else(|| {
        Error::Inconsistent(format!("symmetric root a = {a} of {spec} rejected by the general equation"))
    })?;
    sol.class_label = Some(label(problem.kappa1, spec));
    sol.boundary_case |= boundary;
    Ok(sol)
}

/// Every solution of the symmetric Navier problem (`κ₁ = κ₂ = κ`) in the families
/// `F_0, …, F_{k_max}`, labelled and sorted by `(k, σ₁, σ₂, a)`; the straight line comes first.
pub fn solve_symmetric_catalog(a: Point, b: Point, kappa: f64, k_max: Option<u32>) -> Result<Vec<Solution>> {
    let problem = NavierProblem::symmetric(a, b, kappa)?;
    let d = problem.distance();
    let c = c_const::<f64>();
    let k_max = k_max.unwrap_or_else(|| default_k_max(kappa, d));
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut out = Vec::new();

    if kappa == 0.0 {
        let mut line = straight_line(&problem);
        line.class_label = Some(ClassLabel { k: 0, sign: LabelSign::Both });
        out.push(line);
        for k in 0..=k_max {
            let a_mixed = sqrt2 * (k as f64 + 0.5) * c / d;
            out.push(symmetric_solution(&problem, BranchSpec::new(Sign::Minus, Sign::Plus, k), a_mixed, false)?);
            out.push(symmetric_solution(&problem, BranchSpec::new(Sign::Plus, Sign::Minus, k), a_mixed, false)?);
            if k >= 1 {
                let a_same = sqrt2 * k as f64 * c / d;
                for s in Sign::BOTH {
                    out.push(symmetric_solution(&problem, BranchSpec::new(s, s, k), a_same, false)?);
                }
            }
        }
        sort_catalog(&mut out);
        return Ok(out);
    }

    let s = Sign::of(kappa);
    let big_d = kappa.abs() * d;
    let a_of = |z: f64| kappa.abs() / (sqrt2 * z);
    let rel_eq = |x: f64, y: f64| (x - y).abs() <= 1e-12 * y.abs().max(1.0);

    for k in 0..=k_max {
        let two_kc = 2.0 * k as f64 * c;
        // (−s, s, k): both sides of the concave curve; the falling side needs z < 1, i.e. D > 2kC.
        let falling_ok = |t: f64| if k == 0 { true } else { t > two_kc && !rel_eq(t, two_kc) };
        for z in concave_roots(k, big_d, falling_ok) {
            out.push(symmetric_solution(&problem, BranchSpec::new(s.flip(), s, k), a_of(z), false)?);
        }
        if k == 0 {
            continue;
        }
        // (s, −s, k − 1): increasing from 0 to 2kC on [0, 1).
        if big_d < two_kc && !rel_eq(big_d, two_kc) {
            let z = bisect(|z| h_increasing(k, z) - big_d, 0.0, 1.0, 1e-15);
            out.push(symmetric_solution(&problem, BranchSpec::new(s, s.flip(), k - 1), a_of(z), false)?);
        }
        // (σ, σ, k): a = √2 kC / d, admissible iff D ≤ 2kC; at equality only σ = sign κ.
        let a_same = sqrt2 * k as f64 * c / d;
        if rel_eq(big_d, two_kc) {
            let a_edge = kappa.abs() / sqrt2;
            out.push(symmetric_solution(&problem, BranchSpec::new(s, s, k), a_edge, true)?);
        } else if big_d < two_kc {
            for sigma in Sign::BOTH {
                out.push(symmetric_solution(&problem, BranchSpec::new(sigma, sigma, k), a_same, false)?);
            }
        }
    }
    sort_catalog(&mut out);
    Ok(out)
}

fn sort_catalog(out: &mut [Solution]) {
    out.sort_by(|x, y| {
        let key = |s: &Solution| {
            (
                s.class_label.map(|l| l.k).unwrap_or(0),
                s.branch.is_some(),
                s.branch.map(|b| (b.sigma1, b.sigma2)),
            )
        };
        key(x).cmp(&key(y)).then(x.params.a.total_cmp(&y.params.a))
    });
}

/// The minimal-energy solution of the symmetric Navier problem.
pub fn minimizer(a: Point, b: Point, kappa: f64) -> Result<Solution> {
    let problem = NavierProblem::symmetric(a, b, kappa)?;
    if kappa == 0.0 {
        let mut line = straight_line(&problem);
        line.class_label = Some(ClassLabel { k: 0, sign: LabelSign::Both });
        return Ok(line);
    }
    let d = problem.distance();
    let c = c_const::<f64>();
    let s = Sign::of(kappa);
    let big_d = kappa.abs() * d;
    let sqrt2 = std::f64::consts::SQRT_2;
    let k = ((big_d / (2.0 * c)).ceil() as u32).saturating_sub(1);
    let (peak, _) = m_k::<f64>(k);

    let best = if big_d <= peak * (1.0 + TANGENCY_TOL) {
        let z = *concave_roots(k, big_d.min(peak), |_| true).last().expect("at least one root below the peak");
        symmetric_solution(&problem, BranchSpec::new(s.flip(), s, k), kappa.abs() / (sqrt2 * z), false)?
    } else {
        let two_k1c = 2.0 * (k + 1) as f64 * c;
        if big_d < two_k1c && (big_d - two_k1c).abs() > 1e-12 * two_k1c {
            let z = bisect(|z| h_increasing(k + 1, z) - big_d, 0.0, 1.0, 1e-15);
            symmetric_solution(&problem, BranchSpec::new(s, s.flip(), k), kappa.abs() / (sqrt2 * z), false)?
        } else {
            // |κ| d = 2(k + 1)C: the increasing branch ends at z = 1 and the edge solution takes over.
            symmetric_solution(&problem, BranchSpec::new(s, s, k + 1), kappa.abs() / sqrt2, true)?
        }
    };

    let catalog = solve_symmetric_catalog(a, b, kappa, None)?;
    let lowest = catalog.iter().map(|s| s.energy).fold(f64::INFINITY, f64::min);
    if best.energy > lowest * (1.0 + 1e-9) + 1e-12 {
        return Err(Error::Inconsistent(format!(
            "selected minimizer has energy {} but the catalog contains {}",
            best.energy, lowest
        )));
    }
    Ok(best)
}

/// Upper bound `j₀*` on the first index with a `(σ₁, σ₂, j)` solution for `κ₁ ≠ κ₂`.
pub fn j0_star(problem: &NavierProblem, sigma1: Sign, sigma2: Sign) -> Result<u32> {
    problem.validate()?;
    if problem.kappa1 == problem.kappa2 {
        return Err(Error::InvalidProblem("kappa1 = kappa2: use the symmetric catalog".into()));
    }
    let c = c_const::<f64>();
    let d2 = problem.distance().powi(2);
    let m2 = problem.kappa1.powi(2).max(problem.kappa2.powi(2));
    let dk2 = (problem.kappa2 - problem.kappa1).powi(2);
    let shift = if sigma1 == sigma2 { 0.5 } else { 1.0 };
    let rhs = |j: f64| 4.0 * c * c * (j - shift).powi(2) / m2 + 4.0 * dk2 / (m2 * m2);
    // rhs is increasing for j ≥ 1; start from the real root and correct for rounding.
    let excess = (d2 - 4.0 * dk2 / (m2 * m2)).max(0.0);
    let mut j = ((excess * m2).sqrt() / (2.0 * c) + shift).ceil().max(1.0);
    while j > 1.0 && d2 <= rhs(j - 1.0) {
        j -= 1.0;
    }
    while d2 > rhs(j) {
        j += 1.0;
    }
    Ok(j as u32)
}

/// Result of [`solve_increasing`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncreasingSequence {
    /// First index with a solution, if any index up to `j_max` has one.
    pub j0: Option<u32>,
    /// One solution per `j = j0, …, j_max`, each the one with the smallest `a`.
    pub solutions: Vec<Solution>,
}

/// The family `γ_{j₀}, γ_{j₀+1}, …` of `(σ₁, σ₂, j)` solutions for `κ₁ ≠ κ₂`, checking that
/// every index from `j₀` on is solvable and that `a` and the energy increase strictly.
pub fn solve_increasing(problem: &NavierProblem, sigma1: Sign, sigma2: Sign, j_max: u32) -> Result<IncreasingSequence> {
    problem.validate()?;
    if problem.kappa1 == problem.kappa2 {
        return Err(Error::InvalidProblem("kappa1 = kappa2: use the symmetric catalog".into()));
    }
    let mut j0 = None;
    let mut solutions: Vec<Solution> = Vec::new();
    for j in 0..=j_max {
        let spec = BranchSpec::new(sigma1, sigma2, j);
        let first = solve_branch(problem, spec)?.into_iter().min_by(|x, y| x.params.a.total_cmp(&y.params.a));
        match (first, j0) {
            (Some(s), _) => {
                if let Some(prev) = solutions.last() {
                    if !(s.params.a > prev.params.a && s.energy > prev.energy) {
                        return Err(Error::Inconsistent(format!("branch {spec}: a or energy not increasing")));
                    }
                }
                j0.get_or_insert(j);
                solutions.push(s);
            }
            (None, Some(_)) => {
                return Err(Error::Inconsistent(format!("branch {spec} has no solution although j >= j0")));
            }
            (None, None) => {}
        }
    }
    Ok(IncreasingSequence { j0, solutions })
}
