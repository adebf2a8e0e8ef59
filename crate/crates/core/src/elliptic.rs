//! Jacobi elliptic functions at the lemniscatic modulus `k = 1/√2` and the integrals built on them.
//!
//! Everything here is specialised to `k² = 1/2`, which is the only modulus that occurs for
//! planar Willmore curves. Two constants govern the theory:
//!
//! * `T = 4 ∫₀¹ √(2 / (1 − t⁴)) dt`, the real period of `cn`;
//! * `C = ∫₀¹ 4t² / √(1 − t⁴) dt`, so that `(1/√2) ∫₀ᵀ cn² = C`.
//!
//! The segment integral `G(z) = ∫_z¹ t² / √(1 − t⁴) dt` and `cn⁻¹` are evaluated through
//! Carlson's symmetric integrals `R_F` and `R_D`; the constants themselves come from
//! tanh-sinh quadrature of their defining integrals, computed once per process.

use std::sync::OnceLock;

use crate::error::{domain, Error, Result};
use crate::quad::tanh_sinh;
use crate::roots::golden_max;
use crate::scalar::Real;

/// The period `T` of `cn` and the full-period integral `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticConstants<S> {
    /// Real period of `cn` (≈ 7.41630).
    pub period: S,
    /// `(1/√2) ∫₀ᵀ cn(t)² dt` (≈ 2.39628).
    pub c: S,
}

static CONSTANTS: OnceLock<(f64, f64)> = OnceLock::new();

fn constants_f64() -> (f64, f64) {
    *CONSTANTS.get_or_init(|| {
        // 1 − t⁴ = (1 − t)(1 + t)(1 + t²), with 1 − t taken from the exact endpoint distance.
        let period = 4.0
            * tanh_sinh(
                |t: f64, _, one_minus_t| (2.0 / (one_minus_t * (1.0 + t) * (1.0 + t * t))).sqrt(),
                0.0,
                1.0,
                1e-15,
            );
        let c = tanh_sinh(
            |t: f64, _, one_minus_t| 4.0 * t * t / (one_minus_t * (1.0 + t) * (1.0 + t * t)).sqrt(),
            0.0,
            1.0,
            1e-15,
        );
        (period, c)
    })
}

/// Returns `T` and `C` in the requested precision.
pub fn constants<S: Real>() -> EllipticConstants<S> {
    let (period, c) = constants_f64();
    EllipticConstants { period: S::lit(period), c: S::lit(c) }
}

#[inline]
pub fn period<S: Real>() -> S {
    S::lit(constants_f64().0)
}

#[inline]
pub fn c_const<S: Real>() -> S {
    S::lit(constants_f64().1)
}

/// Carlson's `R_F(x, y, z)` by duplication. Arguments must be non-negative, at most one zero.
pub fn carlson_rf<S: Real>(x: S, y: S, z: S) -> S {
    let three = S::lit(3.0);
    let quarter = S::lit(0.25);
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / three;
    let mut a = a0;
    let q = (three * S::epsilon()).powf(S::lit(-1.0 / 6.0))
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut scale = S::one();
    while q * scale >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = (x + lambda) * quarter;
        y = (y + lambda) * quarter;
        z = (z + lambda) * quarter;
        a = (a + lambda) * quarter;
        scale = scale * quarter;
    }
    let xx = (a0 - x0) * scale / a;
    let yy = (a0 - y0) * scale / a;
    let zz = -(xx + yy);
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    (S::one() - e2 / S::lit(10.0) + e3 / S::lit(14.0) + e2 * e2 / S::lit(24.0)
        - S::lit(3.0) * e2 * e3 / S::lit(44.0))
        / a.sqrt()
}

/// Carlson's `R_D(x, y, z)` by duplication. Requires `x, y ≥ 0` (not both zero) and `z > 0`.
pub fn carlson_rd<S: Real>(x: S, y: S, z: S) -> S {
    let three = S::lit(3.0);
    let quarter = S::lit(0.25);
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + three * z) / S::lit(5.0);
    let mut a = a0;
    let q = (S::epsilon() / S::lit(4.0)).powf(S::lit(-1.0 / 6.0))
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut scale = S::one();
    let mut sum = S::zero();
    while q * scale >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        sum = sum + scale / (sz * (z + lambda));
        x = (x + lambda) * quarter;
        y = (y + lambda) * quarter;
        z = (z + lambda) * quarter;
        a = (a + lambda) * quarter;
        scale = scale * quarter;
    }
    let xx = (a0 - x0) * scale / a;
    let yy = (a0 - y0) * scale / a;
    let zz = -(xx + yy) / three;
    let xy = xx * yy;
    let z2 = zz * zz;
    let e2 = xy - S::lit(6.0) * z2;
    let e3 = (three * xy - S::lit(8.0) * z2) * zz;
    let e4 = three * (xy - z2) * z2;
    let e5 = xy * z2 * zz;
    let series = S::one() - S::lit(3.0) * e2 / S::lit(14.0) + e3 / S::lit(6.0) + S::lit(9.0) * e2 * e2 / S::lit(88.0)
        - S::lit(3.0) * e4 / S::lit(22.0)
        - S::lit(9.0) * e2 * e3 / S::lit(52.0)
        + S::lit(3.0) * e5 / S::lit(26.0);
    scale * series / (a * a.sqrt()) + three * sum
}

/// `(cn⁻¹(c), G(c))` for `c = cos φ ≥ 0` and `s = sin φ ≥ 0`.
///
/// Passing the sine separately keeps full relative accuracy near `c = 1`.
fn integrals_from_cos_sin<S: Real>(c: S, s: S) -> (S, S) {
    if s == S::zero() {
        return (S::zero(), S::zero());
    }
    let c2 = c * c;
    let y = (S::one() + c2) / S::lit(2.0);
    let inv = s * carlson_rf(c2, y, S::one());
    let g = (inv - s * s * s * carlson_rd(c2, y, S::one()) / S::lit(3.0)) / S::SQRT_2();
    (inv, g)
}

/// `(cn⁻¹(x), G(x))` for any `x ∈ [−1, 1]`, reflecting negative arguments through
/// `cn⁻¹(−x) = T/2 − cn⁻¹(x)` and `G(−x) = C/2 − G(x)`.
pub(crate) fn lemniscate_integrals<S: Real>(x: S) -> (S, S) {
    let ax = x.abs().min(S::one());
    let s = ((S::one() - ax) * (S::one() + ax)).sqrt();
    let (inv, g) = integrals_from_cos_sin(ax, s);
    if x < S::zero() {
        let k = constants::<S>();
        (k.period / S::lit(2.0) - inv, k.c / S::lit(2.0) - g)
    } else {
        (inv, g)
    }
}

fn check_unit<S: Real>(x: S) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    if x.abs() > S::one() {
        return Err(domain(x.as_f64(), "[-1, 1]"));
    }
    Ok(())
}

/// Inverse of `cn` on `[0, T/2]`: `cn⁻¹(x) = ∫ₓ¹ √(2 / (1 − t⁴)) dt`.
pub fn inv_cn<S: Real>(x: S) -> Result<S> {
    check_unit(x)?;
    Ok(lemniscate_integrals(x).0)
}

/// Segment integral `G(z) = ∫_z¹ t² / √(1 − t⁴) dt`, so `G(1) = 0` and `G(−1) = C/2`.
pub fn seg_integral<S: Real>(z: S) -> Result<S> {
    check_unit(z)?;
    Ok(lemniscate_integrals(z).1)
}

/// `(sn, cn, dn)` at modulus `1/√2` without argument checks.
pub(crate) fn sncndn<S: Real>(u: S) -> (S, S, S) {
    let period = period::<S>();
    let half = period / S::lit(2.0);
    let quarter = period / S::lit(4.0);

    let r = u - period * (u / period).round();
    let negative = r < S::zero();
    let mut r = r.abs();
    let reflected = r > quarter;
    if reflected {
        // sn(T/2 − r) = sn(r), cn(T/2 − r) = −cn(r)
        r = half - r;
    }

    // Descending Landen / AGM for m = 1/2 on r ∈ [0, T/4].
    const MAX_STEPS: usize = 12;
    let mut a = [S::zero(); MAX_STEPS + 1];
    let mut c = [S::zero(); MAX_STEPS + 1];
    a[0] = S::one();
    let mut b = S::FRAC_1_SQRT_2();
    c[0] = S::FRAC_1_SQRT_2();
    let mut n = 0;
    while c[n].abs() > S::epsilon() && n < MAX_STEPS {
        let an = a[n];
        a[n + 1] = (an + b) / S::lit(2.0);
        c[n + 1] = (an - b) / S::lit(2.0);
        b = (an * b).sqrt();
        n += 1;
    }
    let mut phi = S::lit(2f64.powi(n as i32)) * a[n] * r;
    for i in (1..=n).rev() {
        phi = (phi + (c[i] / a[i] * phi.sin()).asin()) / S::lit(2.0);
    }

    let mut sn = phi.sin();
    let mut cn = phi.cos();
    if reflected {
        cn = -cn;
    }
    if negative {
        sn = -sn;
    }
    let dn = (S::one() - sn * sn / S::lit(2.0)).sqrt();
    (sn, cn, dn)
}

/// Jacobi `(sn, cn, dn)` at modulus `1/√2`.
pub fn jacobi<S: Real>(u: S) -> Result<(S, S, S)> {
    if !u.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(sncndn(u))
}

#[inline]
pub fn cn<S: Real>(u: S) -> S {
    sncndn(u).1
}

/// Antiderivative `∫₀ˣ cn(t)² dt`.
fn cn2_antiderivative<S: Real>(x: S) -> S {
    if x < S::zero() {
        return -cn2_antiderivative(-x);
    }
    let k = constants::<S>();
    let half = k.period / S::lit(2.0);
    let n = (x / half).floor();
    let r = x - n * half;
    let (sn, cn, _) = sncndn(r);
    // On [0, T/2] sn ≥ 0; the substitution t = cn⁻¹(·) turns ∫₀ʳ cn² into √2·G(cn r).
    let g = if cn >= S::zero() {
        integrals_from_cos_sin(cn, sn.abs()).1
    } else {
        k.c / S::lit(2.0) - integrals_from_cos_sin(-cn, sn.abs()).1
    };
    S::SQRT_2() * (n * k.c / S::lit(2.0) + g)
}

/// `∫_{x1}^{x2} cn(t)² dt`, reducing by whole half-periods (each contributes `C/√2`).
pub fn cn2_integral<S: Real>(x1: S, x2: S) -> Result<S> {
    if !x1.is_finite() || !x2.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(cn2_antiderivative(x2) - cn2_antiderivative(x1))
}

/// Maximum of `h_k(z) = 2z (kC + 2G(z))` over `[0, 1]` and its (unique) argmax.
///
/// `h_k` is strictly concave on `[0, 1]`, so golden-section search is sufficient.
pub fn m_k<S: Real>(k: u32) -> (S, S) {
    let c = c_const::<S>();
    let kc = S::from_u32(k).unwrap() * c;
    let h = |z: S| S::lit(2.0) * z * (kc + S::lit(2.0) * lemniscate_integrals(z).1);
    let tol = S::lit(1e-12).max(S::epsilon().sqrt() * S::lit(4.0));
    let z = golden_max(h, S::zero(), S::one(), tol);
    (h(z), z)
}
