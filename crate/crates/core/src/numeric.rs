//! Shared numerical kernels: Gauss-Legendre rules, dense LU, stable long
//! products, log-sum-exp, and Kolmogorov-Smirnov distances.

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on P_n with the usual cosine initial guess; accurate to
/// machine precision for n up to a few thousand.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Gauss-Legendre rule mapped onto [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    (
        x.iter().map(|&t| c + r * t).collect(),
        w.iter().map(|&v| v * r).collect(),
    )
}

/// Solve the dense linear system `a x = b` in place (LU, partial pivoting).
///
/// `a` is row-major n x n. Returns the solution vector.
pub fn solve_dense(a: &mut [f64], b: &mut [f64]) -> Result<Vec<f64>> {
    let n = b.len();
    assert_eq!(a.len(), n * n);
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return Err(Error::NumericalFailure(format!(
                "singular linear system at column {col}"
            )));
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let d = a[col * n + col];
        for row in col + 1..n {
            let f = a[row * n + col] / d;
            if f == 0.0 {
                continue;
            }
            a[row * n + col] = 0.0;
            for k in col + 1..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row * n + k] * x[k];
        }
        x[row] = s / a[row * n + row];
    }
    Ok(x)
}

/// Running product of many factors with explicit scale tracking, so that
/// products like prod |t - e_j| over hundreds of band edges never overflow
/// or underflow.
#[derive(Debug, Clone, Copy)]
pub struct ScaledProduct {
    mantissa: f64,
    exponent: i64,
}

impl ScaledProduct {
    pub fn one() -> Self {
        ScaledProduct {
            mantissa: 1.0,
            exponent: 0,
        }
    }

    pub fn mul(&mut self, x: f64) {
        self.mantissa *= x;
        let m = self.mantissa.abs();
        if m != 0.0 && !(1e-100..=1e100).contains(&m) {
            let (frac, exp) = frexp(self.mantissa);
            self.mantissa = frac;
            self.exponent += exp as i64;
        }
    }

    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    pub fn signum(&self) -> f64 {
        self.mantissa.signum()
    }

    /// Value of self / sqrt(other); `other` must be a positive product.
    pub fn div_sqrt(&self, other: &ScaledProduct) -> f64 {
        let ln = self.ln_abs() - 0.5 * other.ln_abs();
        self.signum() * ln.exp()
    }
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32 - 1022;
    let mantissa = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (mantissa, exp)
}

/// Compensated (Neumaier) dot product; the workhorse of the Lanczos map,
/// where plain summation roundoff shifts the recurrence coefficients.
pub fn dot_compensated(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (&a, &b) in x.iter().zip(y) {
        let p = a * b;
        let t = sum + p;
        if sum.abs() >= p.abs() {
            comp += (sum - t) + p;
        } else {
            comp += (p - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// log(sum exp(v_i)) over finite entries; -inf entries are skipped.
pub fn log_sum_exp(vals: &[f64]) -> f64 {
    let m = vals
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = vals
        .iter()
        .filter(|v| v.is_finite())
        .map(|&v| (v - m).exp())
        .sum();
    m + s.ln()
}

/// One-sample Kolmogorov-Smirnov distance between the uniform measure on
/// `points` (each atom of mass 1/n) and the distribution with CDF `cdf`.
pub fn ks_distance<F: Fn(f64) -> f64>(points: &[f64], cdf: F) -> f64 {
    let n = points.len();
    assert!(n > 0);
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n as f64).abs());
        d = d.max((f - (i + 1) as f64 / n as f64).abs());
    }
    d
}

/// Least-squares fit of y = c0 + c1 * u; returns (c0, c1).
pub fn linear_fit(u: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(u.len(), y.len());
    let n = u.len() as f64;
    if u.len() == 1 {
        return (y[0], 0.0);
    }
    let su: f64 = u.iter().sum();
    let sy: f64 = y.iter().sum();
    let suu: f64 = u.iter().map(|v| v * v).sum();
    let suy: f64 = u.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * suu - su * su;
    if det.abs() < 1e-300 {
        return (sy / n, 0.0);
    }
    let c1 = (n * suy - su * sy) / det;
    let c0 = (sy - c1 * su) / n;
    (c0, c1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        // degree 15 is exact for an 8-point rule
        for k in 0..=15usize {
            let num: f64 = x.iter().zip(&w).map(|(&t, &v)| v * t.powi(k as i32)).sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert_abs_diff_eq!(num, exact, epsilon = 1e-13);
        }
    }

    #[test]
    fn gl_large_rule_is_accurate() {
        let (x, w) = gauss_legendre_on(200, 0.0, std::f64::consts::PI);
        let s: f64 = x.iter().zip(&w).map(|(&t, &v)| v * t.sin()).sum();
        assert_abs_diff_eq!(s, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn lu_solves_small_system() {
        let mut a = vec![2.0, 1.0, -1.0, -3.0, -1.0, 2.0, -2.0, 1.0, 2.0];
        let mut b = vec![8.0, -11.0, -3.0];
        let x = solve_dense(&mut a, &mut b).unwrap();
        assert_abs_diff_eq!(x[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[2], -1.0, epsilon = 1e-12);
    }

    #[test]
    fn scaled_product_survives_tiny_factors() {
        let mut p = ScaledProduct::one();
        for _ in 0..600 {
            p.mul(1e-3);
        }
        assert_abs_diff_eq!(p.ln_abs(), 600.0 * (1e-3f64).ln(), epsilon = 1e-8);
    }

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        let n = 1000;
        let pts: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_distance(&pts, |x| x.clamp(0.0, 1.0));
        assert!(d <= 0.5 / n as f64 + 1e-12);
    }
}
