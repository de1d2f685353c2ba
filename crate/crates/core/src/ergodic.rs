//! Ergodic families of Jacobi matrices: seeded coefficient samplers,
//! transfer-matrix products with renormalization, Lyapunov exponents,
//! the density of states from pooled truncation eigenvalues, the Thouless
//! formula gamma(z) = log(1/A) + int log|z - x| d nu(x), and the
//! regularity identity lim (a_1...a_n)^{1/n} = C(E) exp(-int gamma d rho_E).

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::equilibrium::equilibrium;
use crate::error::{Error, Result};
use crate::measure::DiscretizedMeasure;
use crate::numeric::ks_distance;
use crate::oprl::JacobiParams;
use crate::opuc::{self, VerblunskyParams};
use crate::setgeom::IntervalUnion;
use crate::tridiag;

/// Sampler for one coefficient process; `u64` is the per-sample seed.
pub type CustomSampler = Arc<dyn Fn(u64, usize) -> (Vec<f64>, Vec<f64>) + Send + Sync>;

#[derive(Clone)]
pub enum FamilyKind {
    /// a = const, b i.i.d. uniform on [lo, hi]
    Anderson { a: f64, b_lo: f64, b_hi: f64 },
    /// a = 1, b_n = lambda cos(n freq + theta); samples sweep the phase
    AlmostMathieu { lambda: f64, freq: f64, theta: f64 },
    /// a = 1, b_n = lambda n^{-gamma} u_n with u i.i.d. uniform on [-1,1]
    DecayingRandom { lambda: f64, gamma: f64 },
    /// i.i.d. Verblunsky coefficients uniform on a disk of the given radius
    RotationOpuc { radius: f64 },
    Custom(CustomSampler),
}

#[derive(Clone)]
pub struct ErgodicFamily {
    pub kind: FamilyKind,
    pub seed: u64,
}

impl ErgodicFamily {
    pub fn free() -> Self {
        ErgodicFamily {
            kind: FamilyKind::Anderson {
                a: 1.0,
                b_lo: 0.0,
                b_hi: 0.0,
            },
            seed: 0,
        }
    }

    pub fn anderson(b_lo: f64, b_hi: f64, seed: u64) -> Self {
        ErgodicFamily {
            kind: FamilyKind::Anderson { a: 1.0, b_lo, b_hi },
            seed,
        }
    }

    pub fn almost_mathieu(lambda: f64, freq: f64, theta: f64) -> Self {
        ErgodicFamily {
            kind: FamilyKind::AlmostMathieu { lambda, freq, theta },
            seed: 0,
        }
    }

    /// The golden frequency pi (sqrt 5 - 1) used throughout.
    pub fn golden_frequency() -> f64 {
        std::f64::consts::PI * (5f64.sqrt() - 1.0)
    }

    fn sample_rng(&self, sample: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(splitmix(
            self.seed ^ (sample as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        ))
    }

    /// Coefficients (a_1..a_n, b_1..b_n) of sample index `sample` out of
    /// `n_samples`; bit-identical for identical arguments.
    pub fn sample_indexed(
        &self,
        sample: usize,
        n_samples: usize,
        n: usize,
    ) -> Result<JacobiParams> {
        match &self.kind {
            FamilyKind::Anderson { a, b_lo, b_hi } => {
                let mut rng = self.sample_rng(sample);
                let b = (0..n)
                    .map(|_| b_lo + (b_hi - b_lo) * rng.gen::<f64>())
                    .collect();
                JacobiParams::new(vec![*a; n], b)
            }
            FamilyKind::AlmostMathieu { lambda, freq, theta } => {
                let phase = theta
                    + 2.0 * std::f64::consts::PI * sample as f64 / n_samples.max(1) as f64;
                let b = (1..=n)
                    .map(|k| lambda * (k as f64 * freq + phase).cos())
                    .collect();
                JacobiParams::new(vec![1.0; n], b)
            }
            FamilyKind::DecayingRandom { lambda, gamma } => {
                let mut rng = self.sample_rng(sample);
                let b = (1..=n)
                    .map(|k| {
                        lambda * (k as f64).powf(-gamma) * (2.0 * rng.gen::<f64>() - 1.0)
                    })
                    .collect();
                JacobiParams::new(vec![1.0; n], b)
            }
            FamilyKind::RotationOpuc { .. } => Err(Error::NotApplicable(
                "rotation-invariant OPUC families sample Verblunsky coefficients".into(),
            )),
            FamilyKind::Custom(f) => {
                let (a, b) = f(splitmix(self.seed ^ sample as u64), n);
                JacobiParams::new(a, b)
            }
        }
    }

    /// Verblunsky coefficients for the rotation-invariant OPUC family.
    pub fn sample_verblunsky(&self, sample: usize, n: usize) -> Result<VerblunskyParams> {
        match &self.kind {
            FamilyKind::RotationOpuc { radius } => {
                if !(*radius >= 0.0 && *radius < 1.0) {
                    return Err(Error::BadLaw(format!(
                        "disk radius {radius} must lie in [0, 1)"
                    )));
                }
                let mut rng = self.sample_rng(sample);
                VerblunskyParams::new(
                    (0..n)
                        .map(|_| {
                            let r = radius * rng.gen::<f64>().sqrt();
                            let t = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
                            Complex64::from_polar(r, t)
                        })
                        .collect(),
                )
            }
            _ => Err(Error::NotApplicable(
                "only rotation-invariant OPUC families sample Verblunsky coefficients"
                    .into(),
            )),
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// log || A_{n-1} ... A_0 || for the one-step matrices
/// A_k = (1/a_{k+1}) [[z - b_{k+1}, -1], [a_{k+1}^2, 0]] (each has
/// determinant one). Renormalizes by the largest column norm every 32
/// steps, accumulating the log scale, and reports |log |det|| as a drift
/// diagnostic.
pub fn transfer_log_norm(a: &[f64], b: &[f64], z: Complex64) -> Result<(f64, f64)> {
    let n = a.len();
    assert_eq!(n, b.len());
    let mut m = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ];
    let mut acc = 0.0f64;
    let mut drift: Option<f64> = None;
    for k in 0..n {
        let ak = a[k];
        let t00 = (z - b[k]) / ak;
        let t01 = Complex64::new(-1.0 / ak, 0.0);
        let t10 = Complex64::new(ak, 0.0);
        // A_k * m
        let n00 = t00 * m[0] + t01 * m[2];
        let n01 = t00 * m[1] + t01 * m[3];
        let n10 = t10 * m[0];
        let n11 = t10 * m[1];
        m = [n00, n01, n10, n11];
        // each A_k has determinant one, so det(product) = 1; the drift is
        // measurable only while the product's condition number e^{2 gamma k}
        // leaves the determinant representable, hence the early checkpoint
        if k == 7 && drift.is_none() {
            let det = m[0] * m[3] - m[1] * m[2];
            drift = Some(det.norm().ln().abs());
        }
        if k % 32 == 31 {
            let c0 = (m[0].norm_sqr() + m[2].norm_sqr()).sqrt();
            let c1 = (m[1].norm_sqr() + m[3].norm_sqr()).sqrt();
            let s = c0.max(c1);
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::NumericalFailure(
                    "transfer product over/underflow despite renormalization".into(),
                ));
            }
            for e in &mut m {
                *e /= s;
            }
            acc += s.ln();
        }
    }
    let frob =
        (m[0].norm_sqr() + m[1].norm_sqr() + m[2].norm_sqr() + m[3].norm_sqr()).sqrt();
    if !(frob > 0.0 && frob.is_finite()) {
        return Err(Error::NumericalFailure("transfer product overflow".into()));
    }
    let log_det_drift = drift.unwrap_or_else(|| {
        let det = m[0] * m[3] - m[1] * m[2];
        (det.norm().ln() + 2.0 * acc).abs()
    });
    Ok((frob.ln() + acc, log_det_drift))
}

/// Lyapunov exponent estimate: mean over samples of
/// (1/n) log ||T(n-1,-1; z)||, with the standard error across samples.
pub fn lyapunov(
    family: &ErgodicFamily,
    z: Complex64,
    n: usize,
    n_samples: usize,
) -> Result<(f64, f64)> {
    assert!(n >= 1 && n_samples >= 1);
    let gammas: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|s| {
            let j = family.sample_indexed(s, n_samples, n)?;
            let (log_norm, _) = transfer_log_norm(j.a(), j.b(), z)?;
            Ok(log_norm / n as f64)
        })
        .collect::<Result<_>>()?;
    let mean = gammas.iter().sum::<f64>() / n_samples as f64;
    let stderr = if n_samples > 1 {
        let var = gammas.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>()
            / (n_samples as f64 - 1.0);
        (var / n_samples as f64).sqrt()
    } else {
        0.0
    };
    Ok((mean, stderr))
}

/// Pooled eigenvalues of n x n truncations over the samples, each with
/// mass 1 / (n n_samples).
pub fn density_of_states(
    family: &ErgodicFamily,
    n: usize,
    n_samples: usize,
) -> Result<DiscretizedMeasure> {
    assert!(n >= 2 && n_samples >= 1);
    let pooled: Vec<Vec<f64>> = (0..n_samples)
        .into_par_iter()
        .map(|s| {
            let j = family.sample_indexed(s, n_samples, n)?;
            Ok(tridiag::eigenvalues_with_tol(
                &j.b()[..n],
                &j.a()[..n - 1],
                1e-11,
            ))
        })
        .collect::<Result<_>>()?;
    let w = 1.0 / (n as f64 * n_samples as f64);
    let atoms: Vec<(f64, f64)> = pooled
        .into_iter()
        .flatten()
        .map(|x| (x, w))
        .collect();
    DiscretizedMeasure::from_atoms(&atoms)
}

/// Thouless-formula residuals |gamma(z) - log(1/A) - int log|z-x| d nu|
/// with every ingredient estimated independently: gamma from transfer
/// products, A as the geometric mean of the sampled a's, nu as the
/// empirical density of states.
#[derive(Debug, Clone)]
pub struct ThoulessReport {
    pub per_point: Vec<(Complex64, f64)>,
    pub max_residual: f64,
    pub a_geometric_mean: f64,
}

pub fn thouless_check(
    family: &ErgodicFamily,
    z_list: &[Complex64],
    n: usize,
    n_samples: usize,
) -> Result<ThoulessReport> {
    let dos = density_of_states(family, n, n_samples)?;
    let mut log_a = 0.0f64;
    for s in 0..n_samples {
        let j = family.sample_indexed(s, n_samples, n)?;
        log_a += j.a().iter().map(|&v| v.ln()).sum::<f64>() / n as f64;
    }
    log_a /= n_samples as f64;
    let a_geometric_mean = log_a.exp();
    let mut per_point = Vec::with_capacity(z_list.len());
    let mut max_residual = 0.0f64;
    for &z in z_list {
        let (gamma_hat, _) = lyapunov(family, z, n, n_samples)?;
        let log_dist: f64 = dos
            .nodes()
            .iter()
            .zip(dos.weights())
            .map(|(&x, &w)| w * (z - x).norm().ln())
            .sum();
        let residual = (gamma_hat + log_a - log_dist).abs();
        max_residual = max_residual.max(residual);
        per_point.push((z, residual));
    }
    Ok(ThoulessReport {
        per_point,
        max_residual,
        a_geometric_mean,
    })
}

/// Estimate the essential spectrum as the support of the empirical DOS:
/// bins of width 4/n over the pooled eigenvalues, bins carrying at least
/// half a sample's worth of states kept (this suppresses the at most one
/// truncation eigenvalue per spectral gap), touching bins merged.
pub fn spectrum_estimate(
    family: &ErgodicFamily,
    n: usize,
    n_samples: usize,
) -> Result<IntervalUnion> {
    let dos = density_of_states(family, n, n_samples)?;
    let lo = dos.nodes()[0];
    let hi = *dos.nodes().last().unwrap();
    let width = 4.0 / n as f64;
    let bins = (((hi - lo) / width).ceil() as usize).max(1);
    let mut counts = vec![0.0f64; bins];
    for (&x, &w) in dos.nodes().iter().zip(dos.weights()) {
        let idx = (((x - lo) / width) as usize).min(bins - 1);
        counts[idx] += w;
    }
    let threshold = 0.5 / n as f64;
    // pad each kept bin by half a width: gaps of a single empty bin close
    // (interior eigenvalue spacing can exceed the bin width), gaps of two
    // or more empty bins survive as genuine spectral gaps
    let kept: Vec<(f64, f64)> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c >= threshold)
        .map(|(i, _)| {
            (
                lo + (i as f64 - 0.5) * width,
                lo + (i as f64 + 1.5) * width,
            )
        })
        .collect();
    if kept.is_empty() {
        return Err(Error::NumericalFailure(
            "no DOS bins above the support threshold".into(),
        ));
    }
    IntervalUnion::normalize(&kept)
}

/// Both sides of the regularity identity
/// lim Gamma_n = C(E) exp(-int gamma(x) d rho_E(x)).
#[derive(Debug, Clone)]
pub struct RegularityIdentity {
    pub gamma_n: f64,
    pub capacity: f64,
    pub gamma_integral: f64,
    pub rhs: f64,
    pub residual: f64,
    /// imaginary shift used to regularize on-spectrum Lyapunov values
    pub epsilon: f64,
}

pub fn regularity_identity_check(
    family: &ErgodicFamily,
    set: &IntervalUnion,
    n: usize,
    n_samples: usize,
) -> Result<RegularityIdentity> {
    let eq = equilibrium(set)?;
    let eps = 1e-4;
    // Gamma_n averaged over a few samples
    let s_used = n_samples.min(4).max(1);
    let mut gamma_n = 0.0;
    for s in 0..s_used {
        let j = family.sample_indexed(s, n_samples, n)?;
        gamma_n += j.gamma(n);
    }
    gamma_n /= s_used as f64;
    // quadrature of gamma against the equilibrium density, off-axis
    let n_gamma = n.min(20_000);
    let s_gamma = n_samples.min(4).max(1);
    let rule = eq.quadrature(24);
    let gammas: Vec<f64> = rule
        .par_iter()
        .map(|&(x, _)| {
            let (g, _) = lyapunov(family, Complex64::new(x, eps), n_gamma, s_gamma)?;
            Ok(g)
        })
        .collect::<Result<_>>()?;
    let gamma_integral: f64 = rule
        .iter()
        .zip(&gammas)
        .map(|(&(_, w), &g)| w * g)
        .sum();
    let rhs = eq.capacity * (-gamma_integral).exp();
    Ok(RegularityIdentity {
        gamma_n,
        capacity: eq.capacity,
        gamma_integral,
        rhs,
        residual: (gamma_n - rhs).abs(),
        epsilon: eps,
    })
}

/// Rotation-invariant OPUC family check: the Verblunsky norm product
/// against the radial-quadrature target exp(E log(1 - |z|^2)), and
/// uniformity of the pooled zero angles.
#[derive(Debug, Clone)]
pub struct RotationOpucReport {
    pub product_mean: f64,
    pub product_stderr: f64,
    pub target: f64,
    pub product_within_3_stderr: bool,
    /// KS of pooled zero angles against the uniform law; None for the
    /// degenerate point mass at the origin (all zeros at 0)
    pub angle_ks: Option<f64>,
}

pub fn rotation_opuc_check(
    family: &ErgodicFamily,
    n: usize,
    n_samples: usize,
) -> Result<RotationOpucReport> {
    let FamilyKind::RotationOpuc { radius } = family.kind else {
        return Err(Error::NotApplicable(
            "rotation check needs a rotation-invariant OPUC family".into(),
        ));
    };
    let target = opuc::rotation_invariant_product_target(radius)?;
    let mut products = Vec::with_capacity(n_samples);
    let mut angles = Vec::new();
    for s in 0..n_samples {
        let v = family.sample_verblunsky(s, n)?;
        products.push(opuc::verblunsky_norm_product(&v, n));
        if radius > 0.0 {
            for z in opuc::opuc_zeros(&v, n)? {
                angles.push(z.arg());
            }
        }
    }
    let mean = products.iter().sum::<f64>() / n_samples as f64;
    let stderr = if n_samples > 1 {
        let var = products.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>()
            / (n_samples as f64 - 1.0);
        (var / n_samples as f64).sqrt()
    } else {
        0.0
    };
    let angle_ks = if angles.is_empty() {
        None
    } else {
        Some(ks_distance(&angles, |t| {
            ((t + std::f64::consts::PI) / (2.0 * std::f64::consts::PI)).clamp(0.0, 1.0)
        }))
    };
    Ok(RotationOpucReport {
        product_mean: mean,
        product_stderr: stderr,
        target,
        product_within_3_stderr: (mean - target).abs() <= 3.0 * stderr + 1e-4,
        angle_ks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sampler_determinism_and_values() {
        let fam = ErgodicFamily::anderson(-1.0, 1.0, 123);
        let j1 = fam.sample_indexed(3, 8, 64).unwrap();
        let j2 = fam.sample_indexed(3, 8, 64).unwrap();
        assert_eq!(j1.b(), j2.b());
        let other = fam.sample_indexed(4, 8, 64).unwrap();
        assert_ne!(j1.b(), other.b());
        for &b in j1.b() {
            assert!((-1.0..=1.0).contains(&b));
        }

        let am = ErgodicFamily::almost_mathieu(4.0, ErgodicFamily::golden_frequency(), 0.0);
        let j = am.sample_indexed(0, 1, 4).unwrap();
        assert_abs_diff_eq!(
            j.b()[0],
            4.0 * (std::f64::consts::PI * (5f64.sqrt() - 1.0)).cos(),
            epsilon = 1e-14
        );

        let free = ErgodicFamily::free();
        let jf = free.sample_indexed(0, 1, 16).unwrap();
        assert!(jf.b().iter().all(|&b| b == 0.0));

        let dec = ErgodicFamily {
            kind: FamilyKind::DecayingRandom {
                lambda: 1.0,
                gamma: 0.6,
            },
            seed: 5,
        };
        let jd = dec.sample_indexed(0, 1, 100).unwrap();
        for (k, &b) in jd.b().iter().enumerate() {
            assert!(b.abs() <= ((k + 1) as f64).powf(-0.6) + 1e-15);
        }
    }

    #[test]
    fn transfer_determinant_stays_unit() {
        let fam = ErgodicFamily::anderson(-1.0, 1.0, 9);
        let j = fam.sample_indexed(0, 1, 5000).unwrap();
        let (_, drift) = transfer_log_norm(j.a(), j.b(), Complex64::new(3.5, 0.0)).unwrap();
        assert!(drift <= 6.0 * std::f64::consts::LN_10, "drift = {drift}");
    }

    #[test]
    fn free_lyapunov_green_function_value() {
        let fam = ErgodicFamily::free();
        let (g, se) = lyapunov(&fam, Complex64::new(3.0, 0.0), 100_000, 1).unwrap();
        assert_abs_diff_eq!(g, ((3.0 + 5f64.sqrt()) / 2.0).ln(), epsilon = 1e-4);
        assert_eq!(se, 0.0);
        // inside the spectrum the free transfer matrices are elliptic
        let (g_in, _) = lyapunov(&fam, Complex64::new(1.0, 0.0), 100_000, 1).unwrap();
        assert!(g_in.abs() <= 5e-3);
    }

    #[test]
    fn almost_mathieu_herman_value() {
        let fam = ErgodicFamily::almost_mathieu(4.0, ErgodicFamily::golden_frequency(), 0.0);
        let (g, _) = lyapunov(&fam, Complex64::new(0.0, 0.0), 100_000, 16).unwrap();
        assert_abs_diff_eq!(g, 2f64.ln(), epsilon = 5e-2);
    }

    #[test]
    fn conjugation_symmetry_of_gamma() {
        let fam = ErgodicFamily::anderson(-0.5, 0.5, 77);
        let z = Complex64::new(2.5, 0.8);
        let (g1, s1) = lyapunov(&fam, z, 20_000, 4).unwrap();
        let (g2, _) = lyapunov(&fam, z.conj(), 20_000, 4).unwrap();
        assert!((g1 - g2).abs() <= 3.0 * s1 + 1e-9);
    }

    #[test]
    fn dos_free_matches_arcsine() {
        let fam = ErgodicFamily::free();
        let dos = density_of_states(&fam, 500, 1).unwrap();
        let ks = ks_distance(dos.nodes(), |x| {
            0.5 + (x / 2.0).clamp(-1.0, 1.0).asin() / std::f64::consts::PI
        });
        assert!(ks <= 0.02, "KS = {ks}");
    }

    #[test]
    fn dos_support_operator_bound() {
        let fam = ErgodicFamily::anderson(-1.0, 1.0, 3);
        let dos = density_of_states(&fam, 400, 8).unwrap();
        assert!(dos.nodes()[0] >= -3.0 - 1e-9);
        assert!(*dos.nodes().last().unwrap() <= 3.0 + 1e-9);
        // visibly non-equilibrium: far from the arcsine shape
        let ks = ks_distance(dos.nodes(), |x| {
            0.5 + (x / 3.0).clamp(-1.0, 1.0).asin() / std::f64::consts::PI
        });
        assert!(ks >= 0.05);
    }

    #[test]
    fn thouless_free_closed_forms() {
        let fam = ErgodicFamily::free();
        let zs = [
            Complex64::new(3.0, 0.0),
            Complex64::new(2.0, 1.0),
            Complex64::new(0.0, 5.0),
        ];
        let rep = thouless_check(&fam, &zs, 2000, 1).unwrap();
        assert!(rep.max_residual <= 5e-3, "residual {}", rep.max_residual);
        assert_abs_diff_eq!(rep.a_geometric_mean, 1.0);
    }

    #[test]
    fn thouless_residual_shrinks_with_n() {
        let fam = ErgodicFamily::free();
        let z = [Complex64::new(3.0, 0.0)];
        let r1 = thouless_check(&fam, &z, 1000, 1).unwrap().max_residual;
        let r2 = thouless_check(&fam, &z, 10_000, 1).unwrap().max_residual;
        assert!(r2 < r1);
    }

    #[test]
    fn spectrum_estimate_free_family() {
        let fam = ErgodicFamily::free();
        let e = spectrum_estimate(&fam, 1000, 1).unwrap();
        let (lo, hi) = e.hull();
        assert!((lo + 2.0).abs() <= 0.05 && (hi - 2.0).abs() <= 0.05);
        assert_eq!(e.num_intervals(), 1);
    }

    #[test]
    fn regularity_identity_free_family() {
        let fam = ErgodicFamily::free();
        let set = IntervalUnion::interval(-2.0, 2.0).unwrap();
        let rep = regularity_identity_check(&fam, &set, 20_000, 1).unwrap();
        assert_abs_diff_eq!(rep.gamma_n, 1.0);
        assert!(rep.residual <= 1e-2, "residual {}", rep.residual);
    }

    #[test]
    fn rotation_opuc_products_and_angles() {
        let fam = ErgodicFamily {
            kind: FamilyKind::RotationOpuc { radius: 0.5 },
            seed: 11,
        };
        let rep = rotation_opuc_check(&fam, 48, 32).unwrap();
        assert!(
            rep.product_within_3_stderr,
            "mean {} target {} stderr {}",
            rep.product_mean,
            rep.target,
            rep.product_stderr
        );
        assert!(rep.angle_ks.unwrap() <= 0.08);

        let degenerate = ErgodicFamily {
            kind: FamilyKind::RotationOpuc { radius: 0.0 },
            seed: 0,
        };
        let rep0 = rotation_opuc_check(&degenerate, 16, 4).unwrap();
        assert_abs_diff_eq!(rep0.product_mean, 1.0);
        assert_abs_diff_eq!(rep0.target, 1.0);
        assert!(rep0.angle_ks.is_none());
    }

    #[test]
    fn gamma_nonnegative_within_noise() {
        let fam = ErgodicFamily::anderson(-1.0, 1.0, 21);
        for z in [
            Complex64::new(0.5, 1e-4),
            Complex64::new(3.5, 0.0),
            Complex64::new(-1.0, 0.5),
        ] {
            let (g, se) = lyapunov(&fam, z, 20_000, 4).unwrap();
            assert!(g >= -3.0 * se - 1e-9);
        }
    }
}
