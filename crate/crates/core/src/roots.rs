//! Scalar root finding and one-dimensional maximisation.

use crate::scalar::Real;

/// Argmax of a unimodal `f` on `[lo, hi]` by golden-section search, to interval width `tol`.
pub fn golden_max<S: Real, F: Fn(S) -> S>(f: F, lo: S, hi: S, tol: S) -> S {
    let inv_phi = (S::lit(5.0).sqrt() - S::one()) / S::lit(2.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // Endpoints are candidates too: the maximum of a monotone function sits on the boundary.
    let mid = (a + b) / S::lit(2.0);
    let mut best = (mid, f(mid));
    for x in [lo, hi] {
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best.0
}

/// Bisection on a bracket `[lo, hi]` with `f(lo)` and `f(hi)` of opposite sign (or zero).
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Settings for [`find_roots`].
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// Number of sample intervals.
    pub samples: usize,
    /// Relative bisection tolerance on the abscissa.
    pub rel_tol: f64,
    /// `|f| ≤ zero_tol` counts as a root at tangencies and at the endpoints.
    pub zero_tol: f64,
}

/// All roots of `f` on `[lo, hi]`, where `f(x)` returns `(value, piece)`.
///
/// `f` is assumed continuous on each set of constant `piece`; jumps between pieces are never
/// reported as roots. Roots are found at sign changes between samples, at tangential minima
/// of `|f|`, and at the interval ends when `|f|` is within `zero_tol` there.
pub fn find_roots<F: Fn(f64) -> (f64, i64)>(f: F, lo: f64, hi: f64, opts: ScanOptions) -> Vec<f64> {
    let n = opts.samples.max(2);
    let xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let vals: Vec<(f64, i64)> = xs.iter().map(|&x| f(x)).collect();
    let value = |x: f64| f(x).0;
    let mut roots = Vec::new();

    // Split every sample interval at piece boundaries so that each run is continuous.
    let mut segments: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = vec![(xs[0], vals[0].0)];
    for i in 0..n {
        let (x0, x1) = (xs[i], xs[i + 1]);
        let (p0, p1) = (vals[i].1, vals[i + 1].1);
        if p0 == p1 {
            current.push((x1, vals[i + 1].0));
            continue;
        }
        // Locate the jump; the last point still in piece p0 and the first point in the next one.
        let (mut a, mut b) = (x0, x1);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if f(m).1 == p0 {
                a = m;
            } else {
                b = m;
            }
        }
        if a > x0 {
            current.push((a, value(a)));
        }
        segments.push(std::mem::take(&mut current));
        if b < x1 {
            current.push((b, value(b)));
        }
        current.push((x1, vals[i + 1].0));
    }
    segments.push(current);

    let step = (hi - lo) / n as f64;
    for seg in &segments {
        let first = roots.len();
        scan_segment(seg, &value, opts, &mut roots);
        merge_shallow_pairs(&mut roots, first, &value, step, opts.zero_tol);
    }

    roots.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        let dup = out.last().is_some_and(|&p| (r - p).abs() <= 1e-10 * r.abs().max(p.abs()).max(1e-300));
        if !dup {
            out.push(r);
        }
    }
    out
}

/// Two nearby roots with `|f| ≤ zero_tol` everywhere between them are one tangential root
/// split by rounding.
fn merge_shallow_pairs<F: Fn(f64) -> f64>(roots: &mut Vec<f64>, first: usize, f: &F, step: f64, zero_tol: f64) {
    roots[first..].sort_by(f64::total_cmp);
    let mut i = first;
    while i + 1 < roots.len() {
        let (r0, r1) = (roots[i], roots[i + 1]);
        if r1 - r0 <= 2.0 * step && r1 > r0 {
            let xm = golden_max(|x| f(x).abs(), r0, r1, (r1 - r0) * 1e-6);
            if f(xm).abs() <= zero_tol {
                roots[i] = xm;
                roots.remove(i + 1);
                continue;
            }
        }
        i += 1;
    }
}

fn scan_segment<F: Fn(f64) -> f64>(seg: &[(f64, f64)], value: &F, opts: ScanOptions, roots: &mut Vec<f64>) {
    if seg.len() < 2 {
        if let Some(&(x, v)) = seg.first() {
            if v.abs() <= opts.zero_tol {
                roots.push(x);
            }
        }
        return;
    }
    // End points of a continuous run.
    for &(x, v) in [seg[0], seg[seg.len() - 1]].iter() {
        if v.abs() <= opts.zero_tol {
            roots.push(x);
        }
    }
    for w in seg.windows(2) {
        let ((x0, v0), (x1, v1)) = (w[0], w[1]);
        if v0 == 0.0 {
            roots.push(x0);
        } else if v1 != 0.0 && (v0 < 0.0) != (v1 < 0.0) {
            roots.push(bisect(value, x0, x1, opts.rel_tol));
        }
    }
    // Tangential approaches: interior local minima of |f| without an adjacent sign change.
    for w in seg.windows(3) {
        let ((x0, v0), (_, v1), (x2, v2)) = (w[0], w[1], w[2]);
        if v1 == 0.0 || (v0 < 0.0) != (v1 < 0.0) || (v1 < 0.0) != (v2 < 0.0) || v0 == 0.0 || v2 == 0.0 {
            continue;
        }
        if !(v1.abs() <= v0.abs() && v1.abs() <= v2.abs()) {
            continue;
        }
        let xm = golden_max(|x| -value(x).abs(), x0, x2, (x2 - x0) * 1e-12);
        let vm = value(xm);
        if vm != 0.0 && (vm < 0.0) != (v1 < 0.0) {
            roots.push(bisect(value, x0, xm, opts.rel_tol));
            roots.push(bisect(value, xm, x2, opts.rel_tol));
        } else if vm.abs() <= opts.zero_tol {
            roots.push(xm);
        }
    }
}
