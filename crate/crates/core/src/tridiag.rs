//! Eigenvalues of real symmetric tridiagonal matrices by bisection with
//! Sturm sequence counts. Only eigenvalues are needed (zero counting,
//! density of states), never eigenvectors, so this stays simple and
//! parallelizes over eigenvalue indices.

use rayon::prelude::*;

/// Number of eigenvalues of the tridiagonal matrix below `x`, via the
/// signs of the LDL^T pivots. A vanishing pivot is replaced by -pivmin
/// before its sign is read, the usual bisection convention.
fn count_below(diag: &[f64], off2: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0usize;
    let mut q = diag[0] - x;
    for i in 0..diag.len() {
        if i > 0 {
            q = diag[i] - x - off2[i - 1] / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues, ascending, each located to absolute tolerance `tol`
/// (relative to the Gershgorin radius when `tol <= 0`).
pub fn eigenvalues_with_tol(diag: &[f64], off: &[f64], tol: f64) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n, "off-diagonal must have length n-1");
    if n == 1 {
        return vec![diag[0]];
    }
    let off2: Vec<f64> = off.iter().map(|&e| e * e).collect();
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i == 0 {
            off[0].abs()
        } else if i == n - 1 {
            off[n - 2].abs()
        } else {
            off[i - 1].abs() + off[i].abs()
        };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let scale = (hi - lo).max(1e-300);
    let tol = if tol > 0.0 { tol } else { f64::EPSILON * scale };
    let max_off2 = off2.iter().fold(0.0f64, |m, &v| m.max(v));
    let min_pivot = 1e-150 * (1.0 + max_off2);

    // Pre-pass: counts on a uniform grid give tight starting brackets.
    let grid = (4 * n).clamp(64, 4096);
    let mut grid_counts = Vec::with_capacity(grid + 1);
    let pts: Vec<f64> = (0..=grid)
        .map(|i| lo + scale * i as f64 / grid as f64)
        .collect();
    grid_counts.extend(
        pts.par_iter()
            .map(|&x| count_below(diag, &off2, x, min_pivot))
            .collect::<Vec<_>>(),
    );

    (0..n)
        .into_par_iter()
        .map(|k| {
            // bracket from the grid pre-pass
            let want = k + 1;
            let hi_idx = grid_counts.partition_point(|&c| c < want).min(grid);
            let mut a = pts[hi_idx.saturating_sub(1)];
            let mut b = pts[hi_idx].max(a + tol);
            if hi_idx == 0 {
                a = lo;
            }
            while b - a > tol {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if count_below(diag, &off2, mid, min_pivot) >= want {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// All eigenvalues at the default tolerance (a few ulps of the spectral width).
pub fn eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    eigenvalues_with_tol(diag, off, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn free_chain_eigenvalues() {
        // a = 1, b = 0: eigenvalues 2 cos(k pi / (n+1))
        let n = 100;
        let diag = vec![0.0; n];
        let off = vec![1.0; n - 1];
        let ev = eigenvalues(&diag, &off);
        for (i, &lam) in ev.iter().enumerate() {
            let k = n - i; // ascending order
            let exact = 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert_abs_diff_eq!(lam, exact, epsilon = 1e-10);
        }
    }

    #[test]
    fn single_entry() {
        assert_eq!(eigenvalues(&[3.5], &[]), vec![3.5]);
    }

    #[test]
    fn two_by_two() {
        // [[1, 2], [2, 1]] has eigenvalues -1 and 3
        let ev = eigenvalues(&[1.0, 1.0], &[2.0]);
        assert_abs_diff_eq!(ev[0], -1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(ev[1], 3.0, epsilon = 1e-11);
    }

    #[test]
    fn handles_degenerate_clusters() {
        // block-diagonal with zero coupling: eigenvalues {1, 1, 1}
        let ev = eigenvalues(&[1.0, 1.0, 1.0], &[0.0, 0.0]);
        for &lam in &ev {
            assert_abs_diff_eq!(lam, 1.0, epsilon = 1e-11);
        }
    }
}
