//! Orthogonal polynomials on the unit circle: the Szego recursion
//! Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n^*, Verblunsky norm products
//! (rho_0...rho_{n-1})^{1/n}, zero computation inside the disk, circle
//! balayage of interior measures by the Poisson kernel, and the
//! Cesaro-Nevai class bound -log rho_j <= L(A) |alpha_j|^2.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::gauss_legendre_on;

const MAX_ZERO_DEGREE: usize = 128;

/// Verblunsky coefficients alpha_n in the open unit disk (indexed from 0)
/// with the derived rho_j = (1 - |alpha_j|^2)^{1/2}.
#[derive(Debug, Clone)]
pub struct VerblunskyParams {
    alpha: Vec<Complex64>,
    rho: Vec<f64>,
}

impl VerblunskyParams {
    pub fn new(alpha: Vec<Complex64>) -> Result<Self> {
        for (j, a) in alpha.iter().enumerate() {
            if !(a.norm() < 1.0) {
                return Err(Error::Invalid(format!(
                    "|alpha_{j}| = {} must be strictly below 1",
                    a.norm()
                )));
            }
        }
        let rho = alpha.iter().map(|a| (1.0 - a.norm_sqr()).sqrt()).collect();
        Ok(VerblunskyParams { alpha, rho })
    }

    pub fn free(n: usize) -> Self {
        VerblunskyParams {
            alpha: vec![Complex64::new(0.0, 0.0); n],
            rho: vec![1.0; n],
        }
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn sup_alpha(&self) -> f64 {
        self.alpha.iter().fold(0.0f64, |m, a| m.max(a.norm()))
    }
}

/// JSON form {"alpha": [[re, im], ...]}.
#[derive(Serialize, Deserialize)]
pub struct VerblunskyJson {
    pub alpha: Vec<(f64, f64)>,
}

impl VerblunskyParams {
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: VerblunskyJson =
            serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        VerblunskyParams::new(
            raw.alpha
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }
}

/// (Phi_n(z), Phi_n^*(z)) by the coupled forward recursion
/// Phi_{k+1} = z Phi_k - conj(alpha_k) Phi_k^*,
/// Phi_{k+1}^* = Phi_k^* - alpha_k z Phi_k, from Phi_0 = Phi_0^* = 1.
pub fn szego_eval(v: &VerblunskyParams, n: usize, z: Complex64) -> (Complex64, Complex64) {
    assert!(n <= v.len());
    let mut phi = Complex64::new(1.0, 0.0);
    let mut star = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let a = v.alpha[k];
        let next = z * phi - a.conj() * star;
        star = star - a * z * phi;
        phi = next;
    }
    (phi, star)
}

/// Monic coefficient vectors of Phi_n (ascending powers of z).
pub fn szego_coefficients(v: &VerblunskyParams, n: usize) -> Vec<Complex64> {
    assert!(n <= v.len());
    let zero = Complex64::new(0.0, 0.0);
    let mut phi = vec![Complex64::new(1.0, 0.0)];
    let mut star = vec![Complex64::new(1.0, 0.0)];
    for k in 0..n {
        let a = v.alpha[k];
        // z * phi
        let mut zphi = vec![zero; phi.len() + 1];
        zphi[1..].copy_from_slice(&phi);
        let mut next = vec![zero; k + 2];
        let mut next_star = vec![zero; k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let zp = zphi.get(i).copied().unwrap_or(zero);
            let st = star.get(i).copied().unwrap_or(zero);
            *slot = zp - a.conj() * st;
        }
        for (i, slot) in next_star.iter_mut().enumerate() {
            let st = star.get(i).copied().unwrap_or(zero);
            let zp = zphi.get(i).copied().unwrap_or(zero);
            *slot = st - a * zp;
        }
        phi = next;
        star = next_star;
    }
    phi
}

/// Geometric mean (rho_0 ... rho_{n-1})^{1/n} of the norm product.
pub fn verblunsky_norm_product(v: &VerblunskyParams, n: usize) -> f64 {
    assert!(n >= 1 && n <= v.len());
    let s: f64 = v.rho[..n].iter().map(|&r| r.ln()).sum();
    (s / n as f64).exp()
}

/// All zeros of Phi_n, strictly inside the unit disk, by Aberth-Ehrlich
/// simultaneous iteration on the coefficient vector, started on a circle
/// of radius (prod rho_j)^{1/n}.
pub fn opuc_zeros(v: &VerblunskyParams, n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > MAX_ZERO_DEGREE {
        return Err(Error::Unsupported(format!(
            "degree {n} exceeds the zero-finder cap of {MAX_ZERO_DEGREE}"
        )));
    }
    let coeffs = szego_coefficients(v, n);
    debug_assert_eq!(coeffs.len(), n + 1);
    // |Phi_n(0)| = prod rho has the same magnitude as the root product only
    // in the free-ish regime; it still makes a serviceable starting radius
    let r0 = coeffs[0].norm().powf(1.0 / n as f64).clamp(0.05, 0.95);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / n as f64 + 0.5;
            Complex64::from_polar(r0, t)
        })
        .collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let mut converged = false;
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(zs[i]);
            if p.norm() <= 1e-15 * scale {
                continue;
            }
            let newton = p / dp;
            let mut rep = Complex64::new(0.0, 0.0);
            for (j, &zj) in zs.iter().enumerate() {
                if j != i {
                    rep += 1.0 / (zs[i] - zj);
                }
            }
            let denom = 1.0 - newton * rep;
            let step = if denom.norm() > 1e-14 {
                newton / denom
            } else {
                newton
            };
            zs[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        // accept only if the residuals are already at roundoff level
        let worst = zs.iter().map(|&z| eval(z).0.norm()).fold(0.0, f64::max);
        if worst > 1e-10 * scale {
            return Err(Error::SolveFailed { residual: worst });
        }
    }
    // zeros of OPUC lie strictly inside the disk (Fejer)
    for z in &zs {
        if z.norm() >= 1.0 {
            return Err(Error::NumericalFailure(format!(
                "computed zero {z} escaped the disk"
            )));
        }
    }
    zs.sort_by(|x, y| {
        (x.re, x.im)
            .partial_cmp(&(y.re, y.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(zs)
}

/// Balayage of a probability measure on points inside the disk onto the
/// circle: density F(theta) = sum w_i (1 - |z_i|^2) / |e^{i theta} - z_i|^2
/// against d theta / 2 pi, with the analytic moments preserved.
#[derive(Debug, Clone)]
pub struct BalayageResult {
    pub thetas: Vec<f64>,
    pub density: Vec<f64>,
    /// |moment_k(balayage) - moment_k(nu)| for k = 0..=8
    pub moment_residuals: Vec<f64>,
}

pub fn balayage(points: &[Complex64], theta_grid: usize) -> Result<BalayageResult> {
    if points.is_empty() {
        return Err(Error::Invalid("empty point set".into()));
    }
    for (i, z) in points.iter().enumerate() {
        if z.norm() >= 1.0 - 1e-12 {
            return Err(Error::BadSupport {
                index: i,
                modulus: z.norm(),
            });
        }
    }
    let w = 1.0 / points.len() as f64;
    let eval_f = |t: f64| -> f64 {
        let e = Complex64::from_polar(1.0, t);
        points
            .iter()
            .map(|&z| w * (1.0 - z.norm_sqr()) / (e - z).norm_sqr())
            .sum()
    };
    let thetas: Vec<f64> = (0..theta_grid)
        .map(|q| 2.0 * std::f64::consts::PI * q as f64 / theta_grid as f64)
        .collect();
    let density: Vec<f64> = thetas.iter().map(|&t| eval_f(t)).collect();
    // Moments by trapezoid quadrature against the direct point moments.
    // The Poisson kernel of a point at radius r has Fourier tail r^N, so
    // the check grid is refined until that tail is negligible: near-circle
    // points need resolution ~ 1/(1 - r).
    let r_max = points.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let n_check = theta_grid
        .max((25.0 / (1.0 - r_max)).ceil() as usize)
        .min(1 << 22);
    let mut residuals = Vec::with_capacity(9);
    for k in 0..=8usize {
        let grid_moment: Complex64 = (0..n_check)
            .map(|q| {
                let t = 2.0 * std::f64::consts::PI * q as f64 / n_check as f64;
                Complex64::from_polar(1.0, k as f64 * t) * eval_f(t)
            })
            .sum::<Complex64>()
            / n_check as f64;
        let direct: Complex64 =
            points.iter().map(|&z| z.powu(k as u32)).sum::<Complex64>() * w;
        residuals.push((grid_moment - direct).norm());
    }
    Ok(BalayageResult {
        thetas,
        density,
        moment_residuals: residuals,
    })
}

/// Cesaro-Nevai class diagnostics: with A = sup |alpha_j| < 1 and
/// L(A) = -log(1 - A) / (2A), verifies -log rho_j <= L(A) |alpha_j|^2
/// per index and the averaged chain
/// -(1/n) sum log rho_j <= L(A) (1/n) sum |alpha_j|, and reports the norm
/// product trend.
#[derive(Debug, Clone)]
pub struct CnClassReport {
    pub a_sup: f64,
    pub l_const: f64,
    pub per_index_holds: bool,
    pub chain_holds: bool,
    /// (n, (rho_0...rho_{n-1})^{1/n}) at geometrically spaced n
    pub product_trend: Vec<(usize, f64)>,
    /// Cesaro mean of |alpha_j| at the largest n
    pub cesaro_mean: f64,
}

pub fn cn_class_check(v: &VerblunskyParams) -> Result<CnClassReport> {
    if v.is_empty() {
        return Err(Error::Invalid("empty coefficient sequence".into()));
    }
    let a_sup = v.sup_alpha();
    if !(a_sup < 1.0) {
        return Err(Error::NotApplicable("sup |alpha| must be below 1".into()));
    }
    let l_const = if a_sup == 0.0 {
        0.5
    } else {
        -(1.0 - a_sup).ln() / (2.0 * a_sup)
    };
    let mut per_index_holds = true;
    for (a, &r) in v.alpha.iter().zip(&v.rho) {
        if -r.ln() > l_const * a.norm_sqr() + 1e-12 {
            per_index_holds = false;
        }
    }
    let n = v.len();
    let mean_log_rho = -v.rho.iter().map(|&r| r.ln()).sum::<f64>() / n as f64;
    let cesaro_mean = v.alpha.iter().map(|a| a.norm()).sum::<f64>() / n as f64;
    let chain_holds = mean_log_rho <= l_const * cesaro_mean + 1e-12;
    let mut product_trend = Vec::new();
    let mut k = 1usize;
    while k <= n {
        product_trend.push((k, verblunsky_norm_product(v, k)));
        k *= 2;
    }
    if product_trend.last().map(|&(m, _)| m) != Some(n) {
        product_trend.push((n, verblunsky_norm_product(v, n)));
    }
    Ok(CnClassReport {
        a_sup,
        l_const,
        per_index_holds,
        chain_holds,
        product_trend,
        cesaro_mean,
    })
}

/// The almost-sure limit of the Verblunsky norm product for a
/// rotation-invariant coefficient law uniform on a disk of radius r:
/// exp((1/2) E log(1 - |z|^2)), by radial quadrature of
/// log(1 - s^2) * 2s / r^2 over [0, r]. The 1/2 comes from
/// rho_j = (1 - |alpha_j|^2)^{1/2} and the ergodic theorem applied to
/// log rho_j.
pub fn rotation_invariant_product_target(radius: f64) -> Result<f64> {
    if !(radius >= 0.0 && radius < 1.0) {
        return Err(Error::BadLaw(format!(
            "radius {radius} must lie in [0, 1)"
        )));
    }
    if radius == 0.0 {
        return Ok(1.0);
    }
    let (xs, ws) = gauss_legendre_on(256, 0.0, radius);
    let integral: f64 = xs
        .iter()
        .zip(&ws)
        .map(|(&s, &w)| w * (1.0 - s * s).ln() * 2.0 * s / (radius * radius))
        .sum();
    Ok((0.5 * integral).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_params(n: usize, max_mod: f64, seed: u64) -> VerblunskyParams {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        VerblunskyParams::new(
            (0..n)
                .map(|_| {
                    let r = max_mod * rng.gen::<f64>();
                    let t = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
                    Complex64::from_polar(r, t)
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn free_case_is_monomial() {
        let v = VerblunskyParams::free(8);
        for n in [0usize, 3, 8] {
            let z = Complex64::new(0.4, -0.2);
            let (phi, star) = szego_eval(&v, n, z);
            assert!((phi - z.powu(n as u32)).norm() < 1e-14);
            assert!((star - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn single_step_recursion() {
        let a = Complex64::new(0.3, 0.4);
        let v = VerblunskyParams::new(vec![a]).unwrap();
        let z = Complex64::new(0.7, 0.1);
        let (phi, _) = szego_eval(&v, 1, z);
        assert!((phi - (z - a.conj())).norm() < 1e-15);
    }

    #[test]
    fn modulus_identity_on_circle() {
        // |Phi_n| = |Phi_n^*| on the unit circle
        let v = random_params(24, 0.85, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let t = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
            let z = Complex64::from_polar(1.0, t);
            let (phi, star) = szego_eval(&v, 24, z);
            assert_abs_diff_eq!(phi.norm(), star.norm(), epsilon = 1e-10);
        }
    }

    #[test]
    fn coefficients_match_evaluation() {
        let v = random_params(16, 0.8, 9);
        let coeffs = szego_coefficients(&v, 16);
        assert_eq!(coeffs.len(), 17);
        // monic
        assert!((coeffs[16] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let z = Complex64::new(0.3, 0.55);
        let direct = szego_eval(&v, 16, z).0;
        let horner = coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        assert!((direct - horner).norm() < 1e-12);
    }

    #[test]
    fn norm_product_values() {
        let v = VerblunskyParams::free(10);
        assert_abs_diff_eq!(verblunsky_norm_product(&v, 10), 1.0);
        let half = VerblunskyParams::new(vec![Complex64::new(0.5, 0.0); 4]).unwrap();
        assert_abs_diff_eq!(
            verblunsky_norm_product(&half, 4),
            3f64.sqrt() / 2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn zeros_free_case_and_degree_one() {
        let v = VerblunskyParams::free(4);
        let zs = opuc_zeros(&v, 4).unwrap();
        for z in zs {
            // a multiplicity-4 root is located only to about eps^(1/4)
            assert!(z.norm() < 1e-3, "fourfold zero at the origin, got {z}");
        }
        let a = Complex64::new(0.3, 0.0);
        let v1 = VerblunskyParams::new(vec![a]).unwrap();
        let zs1 = opuc_zeros(&v1, 1).unwrap();
        assert!((zs1[0] - a.conj()).norm() < 1e-12);
    }

    #[test]
    fn zeros_confined_to_disk() {
        for seed in [1u64, 2, 3] {
            let v = random_params(32, 0.9, seed);
            let zs = opuc_zeros(&v, 32).unwrap();
            assert_eq!(zs.len(), 32);
            for z in &zs {
                assert!(z.norm() < 1.0 - 1e-10);
            }
            // residual check: the coefficient polynomial vanishes there
            let coeffs = szego_coefficients(&v, 32);
            for &z in &zs {
                let p = coeffs
                    .iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
                assert!(p.norm() < 1e-9);
            }
        }
    }

    #[test]
    fn balayage_of_center_is_uniform() {
        let res = balayage(&[Complex64::new(0.0, 0.0)], 512).unwrap();
        for &f in &res.density {
            assert_abs_diff_eq!(f, 1.0, epsilon = 1e-14);
        }
        for &r in &res.moment_residuals {
            assert!(r < 1e-13);
        }
    }

    #[test]
    fn balayage_poisson_at_real_point() {
        let z0 = Complex64::new(0.5, 0.0);
        let res = balayage(&[z0], 4096).unwrap();
        // pointwise Poisson kernel and the first moment
        let t = res.thetas[100];
        let e = Complex64::from_polar(1.0, t);
        assert_abs_diff_eq!(
            res.density[100],
            0.75 / (e - z0).norm_sqr(),
            epsilon = 1e-12
        );
        let m1: Complex64 = res
            .thetas
            .iter()
            .zip(&res.density)
            .map(|(&t, &f)| Complex64::from_polar(1.0, t) * f)
            .sum::<Complex64>()
            / 4096.0;
        assert_abs_diff_eq!(m1.re, 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(m1.im, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn balayage_rejects_boundary_points() {
        let r = balayage(&[Complex64::new(1.0, 0.0)], 64);
        assert!(matches!(r, Err(Error::BadSupport { .. })));
    }

    #[test]
    fn balayage_moments_of_opuc_zeros() {
        let v = random_params(32, 0.8, 17);
        let zs = opuc_zeros(&v, 32).unwrap();
        let res = balayage(&zs, 4096).unwrap();
        for &r in &res.moment_residuals {
            assert!(r <= 1e-8, "moment residual {r}");
        }
    }

    #[test]
    fn cn_class_free_and_decaying() {
        let free = VerblunskyParams::free(64);
        let rep = cn_class_check(&free).unwrap();
        assert!(rep.per_index_holds && rep.chain_holds);
        assert_abs_diff_eq!(rep.product_trend.last().unwrap().1, 1.0);

        // alpha_j = 1/(j+2): Cesaro mean -> 0, product -> 1
        let dec = VerblunskyParams::new(
            (0..4096)
                .map(|j| Complex64::new(1.0 / (j as f64 + 2.0), 0.0))
                .collect(),
        )
        .unwrap();
        let rep = cn_class_check(&dec).unwrap();
        assert!(rep.per_index_holds && rep.chain_holds);
        let trend = &rep.product_trend;
        assert!(trend.last().unwrap().1 > 0.995);
        assert!(trend.last().unwrap().1 > trend[3].1);
    }

    #[test]
    fn cn_class_constant_large_alpha() {
        let v = VerblunskyParams::new(vec![Complex64::new(0.9, 0.0); 256]).unwrap();
        let rep = cn_class_check(&v).unwrap();
        assert!(rep.per_index_holds && rep.chain_holds);
        let last = rep.product_trend.last().unwrap().1;
        assert_abs_diff_eq!(last, (1.0f64 - 0.81).sqrt(), epsilon = 1e-12);
        assert!(last < 1.0);
    }

    #[test]
    fn rotation_target_matches_closed_form() {
        // int_0^r log(1-s^2) 2s/r^2 ds = (1 - 1/u) log(1-u) - 1 with u = r^2
        let r: f64 = 0.5;
        let u = r * r;
        let exact = (0.5 * ((1.0 - 1.0 / u) * (1.0 - u).ln() - 1.0)).exp();
        assert_abs_diff_eq!(
            rotation_invariant_product_target(r).unwrap(),
            exact,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(rotation_invariant_product_target(0.0).unwrap(), 1.0);
        assert!(rotation_invariant_product_target(1.0).is_err());
    }
}
