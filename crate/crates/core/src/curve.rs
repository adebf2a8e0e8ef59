//! Planar Willmore curves generated by `(a, b, L, Q, A)`.
//!
//! The arc-length curve is `γ(s) = A + Q ∫₀ˢ (cos Θ, sin Θ)` with curvature
//! `κ(s) = √2 a cn(as + b)`, where `Θ(0) = 0` and `cos Θ`, `sin Θ` have closed forms in the
//! Jacobi functions. `a = 0` is the straight line.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::elliptic::{cn2_integral, constants, inv_cn, sncndn};
use crate::error::{domain, Error, Result};
use crate::quad::{gauss_kronrod, QuadValue};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Real> Vec2<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> S {
        self.x.hypot(self.y)
    }

    pub fn dot(self, o: Self) -> S {
        self.x * o.x + self.y * o.y
    }

    pub fn angle(self) -> S {
        self.y.atan2(self.x)
    }
}

impl<S: Real> Add for Vec2<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<S: Real> Sub for Vec2<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<S: Real> Mul<S> for Vec2<S> {
    type Output = Self;
    fn mul(self, k: S) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl<S: Real> Neg for Vec2<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<S: Real> QuadValue<S> for Vec2<S> {
    fn zero() -> Self {
        Self::new(S::zero(), S::zero())
    }
    fn magnitude(&self) -> S {
        self.norm()
    }
}

/// A proper rotation `[[cos, −sin], [sin, cos]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rotation<S> {
    pub cos: S,
    pub sin: S,
}

impl<S: Real> Rotation<S> {
    pub fn identity() -> Self {
        Self { cos: S::one(), sin: S::zero() }
    }

    pub fn from_angle(theta: S) -> Self {
        let (sin, cos) = theta.sin_cos();
        Self { cos, sin }
    }

    pub fn angle(&self) -> S {
        self.sin.atan2(self.cos)
    }

    pub fn apply(&self, v: Vec2<S>) -> Vec2<S> {
        Vec2::new(self.cos * v.x - self.sin * v.y, self.sin * v.x + self.cos * v.y)
    }

    pub fn inverse(&self) -> Self {
        Self { cos: self.cos, sin: -self.sin }
    }

    /// Row-major entries `[q11, q12, q21, q22]`.
    pub fn to_matrix(&self) -> [S; 4] {
        [self.cos, -self.sin, self.sin, self.cos]
    }

    /// Accepts a row-major matrix if it is orthogonal with determinant one to `tol`.
    pub fn from_matrix(m: [S; 4], tol: S) -> Result<Self> {
        let [q11, q12, q21, q22] = m;
        let orth = (q11 * q11 + q21 * q21 - S::one())
            .abs()
            .max((q12 * q12 + q22 * q22 - S::one()).abs())
            .max((q11 * q12 + q21 * q22).abs());
        let det = q11 * q22 - q12 * q21;
        if orth > tol || (det - S::one()).abs() > tol {
            return Err(Error::InvalidProblem("Q is not a rotation matrix".into()));
        }
        Ok(Self { cos: q11, sin: q21 })
    }
}

/// `±1`, with `sign(0) = +1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn of<S: Real>(x: S) -> Self {
        if x >= S::zero() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value<S: Real>(self) -> S {
        match self {
            Sign::Plus => S::one(),
            Sign::Minus => -S::one(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Solution type `(σ₁, σ₂, j)`: phase signs at both ends and number of full periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BranchSpec {
    pub sigma1: Sign,
    pub sigma2: Sign,
    pub j: u32,
}

impl BranchSpec {
    pub fn new(sigma1: Sign, sigma2: Sign, j: u32) -> Self {
        Self { sigma1, sigma2, j }
    }
}

impl fmt::Display for BranchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.sigma1, self.sigma2, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryClass {
    AxiallySymmetric,
    PointwiseSymmetric,
    Asymmetric,
}

/// One row of [`CurveParams::sample`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint<S> {
    pub s: S,
    pub x: S,
    pub y: S,
    pub kappa: S,
}

/// Generating data of a planar Willmore curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveParams<S> {
    pub a: S,
    pub b: S,
    #[serde(rename = "L")]
    pub length: S,
    #[serde(rename = "Q")]
    pub rotation: Rotation<S>,
    #[serde(rename = "A")]
    pub start: Vec2<S>,
}

impl<S: Real> CurveParams<S> {
    pub fn new(a: S, b: S, length: S, rotation: Rotation<S>, start: Vec2<S>) -> Result<Self> {
        let p = Self { a, b, length, rotation, start };
        p.validate()?;
        Ok(p)
    }

    /// Straight segment of the given length leaving `start` in direction `rotation · (1, 0)`.
    pub fn line(length: S, rotation: Rotation<S>, start: Vec2<S>) -> Self {
        Self { a: S::zero(), b: S::zero(), length, rotation, start }
    }

    pub fn is_line(&self) -> bool {
        self.a == S::zero()
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.a, self.b, self.length, self.rotation.cos, self.rotation.sin, self.start.x, self.start.y];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.a < S::zero() {
            return Err(domain(self.a.as_f64(), "a >= 0"));
        }
        if !(self.length > S::zero()) {
            return Err(domain(self.length.as_f64(), "L > 0"));
        }
        let half = constants::<S>().period / S::lit(2.0);
        if self.b < -half || self.b >= half {
            return Err(domain(self.b.as_f64(), "[-T/2, T/2)"));
        }
        let tol = S::lit(1e-12).max(S::epsilon() * S::lit(16.0));
        Rotation::from_matrix(self.rotation.to_matrix(), tol)?;
        Ok(())
    }

    fn check_s(&self, s: S) -> Result<()> {
        if !s.is_finite() {
            return Err(Error::NonFinite);
        }
        if s < S::zero() || s > self.length {
            return Err(domain(s.as_f64(), "[0, L]"));
        }
        Ok(())
    }

    fn kappa_unchecked(&self, s: S) -> S {
        if self.is_line() {
            return S::zero();
        }
        S::SQRT_2() * self.a * sncndn(self.a * s + self.b).1
    }

    /// `κ(s) = √2 a cn(as + b)`.
    pub fn curvature(&self, s: S) -> Result<S> {
        self.check_s(s)?;
        Ok(self.kappa_unchecked(s))
    }

    /// `κ′(s) = −√2 a² sn(as + b) dn(as + b)`.
    pub fn curvature_derivative(&self, s: S) -> Result<S> {
        self.check_s(s)?;
        if self.is_line() {
            return Ok(S::zero());
        }
        let (sn, _, dn) = sncndn(self.a * s + self.b);
        Ok(-S::SQRT_2() * self.a * self.a * sn * dn)
    }

    /// `(cos Θ(s), sin Θ(s))` before applying `Q`.
    fn frame_tangent(&self, s: S) -> Vec2<S> {
        if self.is_line() {
            return Vec2::new(S::one(), S::zero());
        }
        let (sb, cb, db) = sncndn(self.b);
        let (su, cu, du) = sncndn(self.a * s + self.b);
        let (cb2, cu2) = (cb * cb, cu * cu);
        let (pb, pu) = (sb * db, su * du);
        let two = S::lit(2.0);
        let cos = cb2 * cu2 + two * pb * pu;
        let sin = S::SQRT_2() * (cb2 * pu - pb * cu2);
        Vec2::new(cos, sin)
    }

    /// Unit tangent `Q (cos Θ(s), sin Θ(s))` from the closed forms.
    pub fn tangent_direction(&self, s: S) -> Result<Vec2<S>> {
        self.check_s(s)?;
        Ok(self.rotation.apply(self.frame_tangent(s)))
    }

    fn frame_integral(&self, s0: S, s1: S) -> Vec2<S> {
        if self.is_line() {
            return Vec2::new(s1 - s0, S::zero());
        }
        // Pre-evaluate the b-dependent factors once for the whole integral.
        let (sb, cb, db) = sncndn(self.b);
        let cb2 = cb * cb;
        let pb = sb * db;
        let two = S::lit(2.0);
        let (a, b) = (self.a, self.b);
        let f = move |s: S| {
            let (su, cu, du) = sncndn(a * s + b);
            let cu2 = cu * cu;
            let pu = su * du;
            Vec2::new(cb2 * cu2 + two * pb * pu, S::SQRT_2() * (cb2 * pu - pb * cu2))
        };
        let width = s1 - s0;
        let tol = S::lit(1e-14).max(S::epsilon() * S::lit(8.0)) * width.abs();
        gauss_kronrod(f, s0, s1, tol, S::zero())
    }

    /// `γ(t) = A + Q ∫₀ᵗ (cos Θ, sin Θ)` by adaptive quadrature of the closed-form tangent.
    pub fn position(&self, t: S) -> Result<Vec2<S>> {
        self.check_s(t)?;
        if t == S::zero() {
            return Ok(self.start);
        }
        Ok(self.start + self.rotation.apply(self.frame_integral(S::zero(), t)))
    }

    /// `(α, β)` with `α = (1/a) ∫_b^{b+aL} cn²` and `β = (√2/a)(cn b − cn(b + aL))`.
    pub fn alpha_beta(&self) -> (S, S) {
        if self.is_line() {
            return (self.length, S::zero());
        }
        let end = self.b + self.a * self.length;
        let alpha = cn2_integral(self.b, end).unwrap_or(S::nan()) / self.a;
        let beta = S::SQRT_2() / self.a * (sncndn(self.b).1 - sncndn(end).1);
        (alpha, beta)
    }

    /// Closed-form chord `Qᵀ(γ(L) − A)`.
    pub fn endpoint_offset(&self) -> Vec2<S> {
        if self.is_line() {
            return Vec2::new(self.length, S::zero());
        }
        let (alpha, beta) = self.alpha_beta();
        let (sb, cb, db) = sncndn(self.b);
        let cb2 = cb * cb;
        let p = S::SQRT_2() * sb * db;
        Vec2::new(cb2 * alpha + p * beta, -p * alpha + cb2 * beta)
    }

    /// Closed-form end point `A + Q w`.
    pub fn end_point(&self) -> Vec2<S> {
        self.start + self.rotation.apply(self.endpoint_offset())
    }

    /// Willmore energy `½ ∫₀ᴸ κ² = a ∫_b^{b+aL} cn²`.
    pub fn energy(&self) -> S {
        if self.is_line() {
            return S::zero();
        }
        self.a * cn2_integral(self.b, self.b + self.a * self.length).unwrap_or(S::nan())
    }

    /// `(σ₁, σ₂, j)` of the curve, read off from `b` and `b̃ = b + aL − mT ∈ [−T/2, T/2)`.
    pub fn classify_type(&self) -> Result<BranchSpec> {
        self.classify_type_with_tol(S::zero())
    }

    /// As [`classify_type`](Self::classify_type), but phases within `tol` of a sign or period
    /// boundary are snapped to it first. Used to classify computed parameters.
    pub fn classify_type_with_tol(&self, tol: S) -> Result<BranchSpec> {
        if self.is_line() {
            return Err(Error::StraightLine);
        }
        let k = constants::<S>();
        let period = k.period;
        let half = period / S::lit(2.0);
        let end = self.b + self.a * self.length;
        let mut m = ((end + half) / period).floor();
        let mut bt = end - m * period;
        if bt > half - tol {
            bt = bt - period;
            m = m + S::one();
        }
        if bt.abs() <= tol {
            bt = S::zero();
        }
        let b = if self.b.abs() <= tol { S::zero() } else { self.b };
        let ratio = (b - bt) / period;
        let nearest = ratio.round();
        let ratio = if (ratio - nearest).abs() <= tol / period { nearest } else { ratio };
        let j = m - ratio.ceil();
        if j < S::zero() {
            return Err(Error::Inconsistent(format!("negative period count {j}")));
        }
        Ok(BranchSpec::new(Sign::of(b), Sign::of(bt), j.to_u32().unwrap_or(u32::MAX)))
    }

    /// Default tolerance `1e-9 (1 + |aL + 2b|)` for [`classify_symmetry`](Self::classify_symmetry).
    pub fn symmetry_tolerance(&self) -> S {
        S::lit(1e-9) * (S::one() + (self.a * self.length + S::lit(2.0) * self.b).abs())
    }

    /// Axial symmetry iff `aL + 2b` is an even multiple of `T/2`, pointwise iff odd.
    ///
    /// The straight line is reported as axially symmetric.
    pub fn classify_symmetry(&self, tol: Option<S>) -> SymmetryClass {
        if self.is_line() {
            return SymmetryClass::AxiallySymmetric;
        }
        let tol = tol.unwrap_or_else(|| self.symmetry_tolerance());
        let half = constants::<S>().period / S::lit(2.0);
        let phase = self.a * self.length + S::lit(2.0) * self.b;
        let q = phase / half;
        let n = q.round();
        if (phase - n * half).abs() > tol {
            return SymmetryClass::Asymmetric;
        }
        if (n / S::lit(2.0)).fract() == S::zero() {
            SymmetryClass::AxiallySymmetric
        } else {
            SymmetryClass::PointwiseSymmetric
        }
    }

    /// `n` equally spaced samples over `[0, L]`, both ends included.
    pub fn sample(&self, n: usize) -> Result<Vec<SamplePoint<S>>> {
        if n < 2 {
            return Err(domain(n as f64, "n >= 2"));
        }
        let mut out = Vec::with_capacity(n);
        let mut acc = Vec2::new(S::zero(), S::zero());
        let mut prev = S::zero();
        let last = S::from_usize(n - 1).unwrap();
        for i in 0..n {
            let s = if i == n - 1 { self.length } else { self.length * S::from_usize(i).unwrap() / last };
            if i > 0 {
                acc = acc + self.frame_integral(prev, s);
            }
            let p = if i == 0 { self.start } else { self.start + self.rotation.apply(acc) };
            out.push(SamplePoint { s, x: p.x, y: p.y, kappa: self.kappa_unchecked(s) });
            prev = s;
        }
        Ok(out)
    }
}

/// Generating `(a, b)` of the Willmore curve with `κ(0) = κ₀`, `κ′(0) = κ₀′`.
pub fn from_ivp<S: Real>(kappa0: S, kappa0p: S) -> Result<(S, S)> {
    if !kappa0.is_finite() || !kappa0p.is_finite() {
        return Err(Error::NonFinite);
    }
    if kappa0 == S::zero() && kappa0p == S::zero() {
        return Err(Error::Degenerate);
    }
    let k2 = kappa0 * kappa0;
    let a = (k2 * k2 / S::lit(4.0) + kappa0p * kappa0p).sqrt().sqrt();
    let x = (kappa0 / (S::SQRT_2() * a)).max(-S::one()).min(S::one());
    let b = -Sign::of(kappa0p).value::<S>() * inv_cn(x)?;
    Ok((a, b))
}
