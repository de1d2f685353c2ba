//! Three-term recurrences: the Lanczos/Stieltjes map from a discrete
//! measure to Jacobi coefficients, Gauss rules recovered from those
//! coefficients, and evaluation of the orthonormal polynomials.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::dot_compensated;
use crate::tridiag;

/// Jacobi coefficients (a_1..a_n, b_1..b_n) of the measure with the given
/// nodes and weights, by Lanczos on diag(x) with starting vector sqrt(w),
/// fully reorthogonalized twice per step for stability.
///
/// The measure is normalized to mass one internally; coefficients are
/// invariant under that scaling.
pub fn lanczos_jacobi(nodes: &[f64], weights: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = nodes.len();
    assert_eq!(m, weights.len());
    if n + 1 > m {
        return Err(Error::RankDeficient { need: n + 1, got: m });
    }
    let mass: f64 = weights.iter().sum();
    if !(mass > 0.0) {
        return Err(Error::Invalid("measure has nonpositive mass".into()));
    }
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let v0: Vec<f64> = weights.iter().map(|&w| (w / mass).sqrt()).collect();
    basis.push(v0);

    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        let vk = &basis[k];
        let mut r: Vec<f64> = vk.iter().zip(nodes).map(|(&v, &x)| x * v).collect();
        let bk = dot_compensated(&r, vk);
        b.push(bk);
        // two passes of full reorthogonalization
        for _ in 0..2 {
            for q in &basis {
                let c = dot_compensated(&r, q);
                for (ri, &qi) in r.iter_mut().zip(q) {
                    *ri -= c * qi;
                }
            }
        }
        let norm = dot_compensated(&r, &r).sqrt();
        if norm <= 1e-13 {
            return Err(Error::RankDeficient { need: n + 1, got: k + 1 });
        }
        a.push(norm);
        for ri in &mut r {
            *ri /= norm;
        }
        basis.push(r);
    }
    Ok((a, b))
}

/// n-point Gauss rule for the measure whose Jacobi coefficients are
/// (a, b) and whose total mass is `mass`: nodes are the eigenvalues of the
/// n x n truncation, weights come from w_i = mass / sum_k p_k(x_i)^2.
pub fn gauss_rule(a: &[f64], b: &[f64], mass: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1 && n <= b.len() && n - 1 <= a.len());
    let nodes = tridiag::eigenvalues_with_tol(&b[..n], &a[..n - 1], 0.0);
    let weights = nodes
        .iter()
        .map(|&x| {
            let mut s = 1.0; // p_0^2
            let mut pm = 0.0;
            let mut p = 1.0;
            for k in 0..n - 1 {
                let ak1 = a[k];
                let akm = if k == 0 { 1.0 } else { a[k - 1] };
                let pn = ((x - b[k]) * p - if k == 0 { 0.0 } else { akm * pm }) / ak1;
                pm = p;
                p = pn;
                s += p * p;
            }
            mass / s
        })
        .collect();
    (nodes, weights)
}

/// Orthonormal polynomial p_n(z) by the forward recursion
/// x p_k = a_{k+1} p_{k+1} + b_{k+1} p_k + a_k p_{k-1}, p_{-1} = 0, p_0 = 1.
pub fn orthonormal_eval(a: &[f64], b: &[f64], n: usize, z: Complex64) -> Complex64 {
    assert!(n <= a.len() && n <= b.len());
    let mut pm = Complex64::new(0.0, 0.0);
    let mut p = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let ak = if k == 0 { 1.0 } else { a[k - 1] };
        let pn = ((z - b[k]) * p - ak * pm) / a[k];
        pm = p;
        p = pn;
    }
    p
}

/// Monic orthogonal polynomial P_n(x) via
/// P_{k+1} = (x - b_{k+1}) P_k - a_k^2 P_{k-1}.
pub fn monic_eval(a: &[f64], b: &[f64], n: usize, x: f64) -> f64 {
    assert!(n <= b.len());
    let mut pm = 0.0f64;
    let mut p = 1.0f64;
    for k in 0..n {
        let ak2 = if k == 0 { 0.0 } else { a[k - 1] * a[k - 1] };
        let pn = (x - b[k]) * p - ak2 * pm;
        pm = p;
        p = pn;
    }
    p
}

/// Roots of the monic P_n found by the interlacing property: the zeros of
/// P_{k+1} are separated by the zeros of P_k, so each root is bracketed and
/// bisected without any deflation.
pub fn monic_roots_by_interlacing(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    assert!(n <= b.len());
    if n == 0 {
        return Vec::new();
    }
    // spectral bounds for all truncations
    let sup_a = a[..n.saturating_sub(1)]
        .iter()
        .fold(0.0f64, |m, &v| m.max(v.abs()));
    let sup_b = b[..n].iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let bound = sup_b + 2.0 * sup_a + 1.0;
    let mut roots = vec![b[0]];
    for k in 2..=n {
        let mut brackets = Vec::with_capacity(k + 1);
        brackets.push(-bound);
        brackets.extend_from_slice(&roots);
        brackets.push(bound);
        let mut next = Vec::with_capacity(k);
        for w in brackets.windows(2) {
            let (mut lo, mut hi) = (w[0], w[1]);
            let flo = monic_eval(a, b, k, lo);
            for _ in 0..200 {
                if hi - lo <= 1e-15 * bound {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let fm = monic_eval(a, b, k, mid);
                if (fm >= 0.0) == (flo >= 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            next.push(0.5 * (lo + hi));
        }
        roots = next;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lanczos_recovers_legendre_coefficients() {
        // Lebesgue measure on [-1,1]: b_n = 0, a_n = n / sqrt(4n^2 - 1)
        let (x, w) = crate::numeric::gauss_legendre(80);
        let (a, b) = lanczos_jacobi(&x, &w, 12).unwrap();
        for (k, &bk) in b.iter().enumerate() {
            assert_abs_diff_eq!(bk, 0.0, epsilon = 1e-12);
            let n = (k + 1) as f64;
            assert_abs_diff_eq!(a[k], n / (4.0 * n * n - 1.0).sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn gauss_rule_round_trip() {
        // Legendre coefficients -> 10-point rule -> monomial moments
        let a: Vec<f64> = (1..=20)
            .map(|n| n as f64 / (4.0 * (n * n) as f64 - 1.0).sqrt())
            .collect();
        let b = vec![0.0; 20];
        let (x, w) = gauss_rule(&a, &b, 2.0, 10);
        for k in 0..=19usize {
            let num: f64 = x.iter().zip(&w).map(|(&t, &v)| v * t.powi(k as i32)).sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert_abs_diff_eq!(num, exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn rank_deficiency_detected() {
        let r = lanczos_jacobi(&[0.0, 1.0], &[0.5, 0.5], 2);
        assert!(matches!(r, Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn two_atoms_by_hand() {
        // equal atoms at +-1: b_1 = b_2 = 0, a_1 = 1
        let (a, b) = lanczos_jacobi(&[-1.0, 1.0], &[0.5, 0.5], 1).unwrap();
        assert_abs_diff_eq!(b[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a[0], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn free_orthonormal_closed_form() {
        // a = 1, b = 0 at z = 3: p_n = (phi+^{n+1} - phi-^{n+1}) / sqrt(5)
        let a = vec![1.0; 12];
        let b = vec![0.0; 12];
        let phi_p = (3.0 + 5f64.sqrt()) / 2.0;
        let phi_m = (3.0 - 5f64.sqrt()) / 2.0;
        let p10 = orthonormal_eval(&a, &b, 10, Complex64::new(3.0, 0.0)).re;
        let exact = (phi_p.powi(11) - phi_m.powi(11)) / 5f64.sqrt();
        assert_abs_diff_eq!(p10 / exact, 1.0, epsilon = 1e-9);
        // p_2(0) = -1 for the free chain
        let p2 = orthonormal_eval(&a, &b, 2, Complex64::new(0.0, 0.0)).re;
        assert_abs_diff_eq!(p2, -1.0, epsilon = 1e-14);
    }

    #[test]
    fn interlacing_roots_match_eigenvalues() {
        let a: Vec<f64> = (1..=12).map(|k| 1.0 + 0.1 * (k as f64).sin()).collect();
        let b: Vec<f64> = (1..=12).map(|k| 0.2 * (k as f64).cos()).collect();
        for n in [3usize, 8, 12] {
            let roots = monic_roots_by_interlacing(&a, &b, n);
            let eig = crate::tridiag::eigenvalues(&b[..n], &a[..n - 1]);
            for (r, e) in roots.iter().zip(&eig) {
                assert_abs_diff_eq!(r, e, epsilon = 1e-8);
            }
        }
    }
}
