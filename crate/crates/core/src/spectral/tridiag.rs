//! Implicit QL iteration for symmetric tridiagonal matrices, tracking only
//! the first row of the eigenvector matrix (Golub–Welsch).

use crate::error::{PstError, Result};
use crate::Scalar;

const MAX_ITERATIONS: usize = 60;

/// Eigenvalues (ascending) and the first component of each normalized
/// eigenvector of the tridiagonal matrix with `diag` and `off`.
pub(crate) fn eigen_first_row<T: Scalar>(diag: &[T], off: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let n = diag.len();
    debug_assert_eq!(off.len() + 1, n);
    let mut d = diag.to_vec();
    let mut e: Vec<T> = off
        .iter()
        .copied()
        .chain(std::iter::once(T::zero()))
        .collect();
    let mut z = vec![T::zero(); n];
    z[0] = T::one();
    let two = T::lit(2.0);
    let eps = T::epsilon();

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITERATIONS {
                return Err(PstError::ConvergenceFailure {
                    sweeps: MAX_ITERATIONS,
                    off_norm: e[l].abs().as_f64(),
                });
            }

            // Wilkinson-style shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    Ok((
        order.iter().map(|&k| d[k]).collect(),
        order.iter().map(|&k| z[k]).collect(),
    ))
}
