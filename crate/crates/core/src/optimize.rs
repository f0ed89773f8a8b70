//! Scalar minimization and root bracketing used by the line probes.

/// Golden ratio complement, (3 − √5)/2.
const CGOLD: f64 = 0.381_966_011_250_105_1;

/// Brent's minimizer: golden-section search accelerated by parabolic interpolation.
///
/// Searches `[a, b]` until the bracket is narrower than `tol` (absolute), and returns
/// `(x, f(x))` at the best point seen.
pub fn brent_minimize<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, f64), E> {
    let (mut a, mut b) = if a < b { (a, b) } else { (b, a) };
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x)?;
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for _ in 0..max_iter {
        let xm = 0.5 * (a + b);
        let tol1 = tol * 0.5 + 1e-15 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            // parabola through x, w, v
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if xm >= x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx))
}

/// Bisection on a bracket with `g(lo) < 0 < g(hi)` (either ordering of `lo`, `hi`).
///
/// Stops when `|g| ≤ ftol` or the bracket collapses; returns the last midpoint.
pub fn bisect<E>(
    mut g: impl FnMut(f64) -> Result<f64, E>,
    mut neg: f64,
    mut pos: f64,
    ftol: f64,
    max_iter: usize,
) -> Result<f64, E> {
    let mut mid = 0.5 * (neg + pos);
    for _ in 0..max_iter {
        mid = 0.5 * (neg + pos);
        if mid == neg || mid == pos {
            break;
        }
        let gm = g(mid)?;
        if gm.abs() <= ftol {
            break;
        }
        if gm < 0.0 {
            neg = mid;
        } else {
            pos = mid;
        }
    }
    Ok(mid)
}
