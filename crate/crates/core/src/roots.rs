//! Bracketing and bisection for scalar thresholds.

/// First grid cell `[x_k, x_{k+1}]` on `lo, lo + step, …, hi` where `f` changes
/// sign or hits zero exactly at the right end.
pub fn first_bracket<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    step: f64,
) -> Option<(f64, f64)> {
    assert!(step > 0.0 && hi > lo);
    let cells = ((hi - lo) / step).round() as usize;
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        return Some((x0, x0));
    }
    for k in 1..=cells {
        let x1 = if k == cells { hi } else { lo + k as f64 * step };
        let f1 = f(x1);
        if f1 == 0.0 || f0.signum() != f1.signum() {
            return Some((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    None
}

/// Bisection on a sign-changing bracket until the width is at most `tol`.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
