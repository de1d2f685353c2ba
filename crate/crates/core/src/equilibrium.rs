//! Equilibrium measures, capacities, and Green's functions of finite
//! interval unions.
//!
//! For E = [a_1,b_1] u ... u [a_{l+1},b_{l+1}] the equilibrium density is
//!
//!   d rho_E(x) = (1/pi) |prod_j (x - x_j)| / sqrt(|R(x)|) dx,
//!   R(x) = prod_i (x - a_i)(x - b_i),
//!
//! with exactly one zero x_j in each gap (b_j, a_{j+1}), the x_j determined
//! by the vanishing of the gap integrals of prod_j (t - x_j) / sqrt(R(t))
//! (Newton solve). Each band carries a Chebyshev cosine table of its
//! density in the angle variable, which turns potentials, CDFs, and the
//! capacity into rapidly converging series: with x = c + r cos(theta) and
//! u the exterior Joukowski coordinate of z,
//!
//!   (1/pi) int log|z - x(theta)| g(theta) d theta
//!     = c_0 log(r |u| / 2) - sum_k c_k Re(u^{-k}) / k.
//!
//! Frostman's equality then gives the capacity as exp(-Phi) at any interior
//! point; interval unions are Dirichlet-regular so the equality is exact.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{gauss_legendre, solve_dense, ScaledProduct};
use crate::setgeom::IntervalUnion;

const MAX_GAPS: usize = 256;

#[derive(Debug, Clone)]
struct Band {
    a: f64,
    b: f64,
    center: f64,
    radius: f64,
    /// cosine coefficients of the density in the angle variable:
    /// g(theta) = coeffs[0] + sum_k coeffs[k] cos(k theta); coeffs[0] is the
    /// band mass.
    coeffs: Vec<f64>,
}

/// Solved equilibrium problem for an interval union.
#[derive(Debug, Clone)]
pub struct EquilibriumData {
    set: IntervalUnion,
    /// One zero of the density numerator per gap, strictly inside it.
    pub gap_zeros: Vec<f64>,
    /// C(E) = exp(-Phi) at an interior point (Frostman equality).
    pub capacity: f64,
    /// Largest normalized gap-integral residual after the Newton solve.
    pub residual: f64,
    /// Spread of the capacity extracted at three interior points.
    pub capacity_spread: f64,
    /// |total density mass - 1|.
    pub normalization_error: f64,
    bands: Vec<Band>,
}

/// Solve the equilibrium problem on E.
pub fn equilibrium(set: &IntervalUnion) -> Result<EquilibriumData> {
    let bands_iv = set.intervals();
    let n_gaps = bands_iv.len() - 1;
    if n_gaps > MAX_GAPS {
        return Err(Error::Unsupported(format!(
            "{n_gaps} gaps exceeds the solver cap of {MAX_GAPS}"
        )));
    }
    let (gap_zeros, residual) = solve_gap_zeros(bands_iv)?;
    let bands = build_band_tables(bands_iv, &gap_zeros);
    let total_mass: f64 = bands.iter().map(|b| b.coeffs[0]).sum();

    let mut data = EquilibriumData {
        set: set.clone(),
        gap_zeros,
        capacity: 0.0,
        residual,
        capacity_spread: 0.0,
        normalization_error: (total_mass - 1.0).abs(),
        bands,
    };

    // Frostman equality at interior points of the longest band
    let longest = data
        .bands
        .iter()
        .enumerate()
        .max_by(|x, y| (x.1.b - x.1.a).partial_cmp(&(y.1.b - y.1.a)).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let band = &data.bands[longest];
    let probes = [
        band.center,
        band.center - 0.4 * band.radius,
        band.center + 0.4 * band.radius,
    ];
    let caps: Vec<f64> = probes
        .iter()
        .map(|&x| (-data.potential(Complex64::new(x, 0.0))).exp())
        .collect();
    data.capacity = caps[0];
    data.capacity_spread = caps.iter().cloned().fold(f64::MIN, f64::max)
        - caps.iter().cloned().fold(f64::MAX, f64::min);
    Ok(data)
}

/// C(E), through the equilibrium solve.
pub fn capacity(set: &IntervalUnion) -> Result<f64> {
    Ok(equilibrium(set)?.capacity)
}

/// Green's function G_E(z) of the unbounded component, zero on E.
pub fn green(set: &IntervalUnion, z: Complex64) -> Result<f64> {
    Ok(equilibrium(set)?.green(z))
}

impl EquilibriumData {
    pub fn set(&self) -> &IntervalUnion {
        &self.set
    }

    /// Logarithmic potential of the equilibrium measure at z.
    pub fn potential(&self, z: Complex64) -> f64 {
        let mut phi = 0.0;
        for band in &self.bands {
            let w = (z - band.center) / band.radius;
            let u = exterior_coordinate(w);
            let au = u.norm();
            let mut acc = band.coeffs[0] * (band.radius * au / 2.0).ln();
            let cmax = band
                .coeffs
                .iter()
                .fold(0.0f64, |m, &c| m.max(c.abs()));
            let mut uk = Complex64::new(1.0, 0.0);
            for (k, &ck) in band.coeffs.iter().enumerate().skip(1) {
                uk /= u;
                acc -= ck * uk.re / k as f64;
                if k > 8 && cmax * uk.norm() < 1e-18 {
                    break;
                }
            }
            phi -= acc;
        }
        phi
    }

    /// G_E(z) = -Phi(z) + log(1/C(E)); tiny negative roundoff is clamped.
    pub fn green(&self, z: Complex64) -> f64 {
        let g = -self.potential(z) - self.capacity.ln();
        if g < 0.0 && g > -1e-8 {
            0.0
        } else {
            g
        }
    }

    /// Equilibrium density at a real point: (1/pi)|P(x)|/sqrt(|R(x)|) on the
    /// interior of E, +infinity at band endpoints, 0 off the set.
    pub fn density(&self, x: f64) -> f64 {
        let scale = {
            let (lo, hi) = self.set.hull();
            (hi - lo).max(1.0)
        };
        for band in &self.bands {
            if x < band.a || x > band.b {
                continue;
            }
            if (x - band.a).abs() <= 1e-14 * scale || (band.b - x).abs() <= 1e-14 * scale {
                return f64::INFINITY;
            }
            let mut num = ScaledProduct::one();
            for &xj in &self.gap_zeros {
                num.mul(x - xj);
            }
            let mut den = ScaledProduct::one();
            for b in &self.bands {
                den.mul((x - b.a).abs());
                den.mul((x - b.b).abs());
            }
            return num.div_sqrt(&den).abs() / std::f64::consts::PI;
        }
        0.0
    }

    /// Distribution function of the equilibrium measure.
    pub fn cdf(&self, x: f64) -> f64 {
        let mut f = 0.0;
        for band in &self.bands {
            if x >= band.b {
                f += band.coeffs[0];
            } else if x > band.a {
                let w = ((x - band.center) / band.radius).clamp(-1.0, 1.0);
                let theta = w.acos();
                let mut part = band.coeffs[0] * (1.0 - theta / std::f64::consts::PI);
                for (k, &ck) in band.coeffs.iter().enumerate().skip(1) {
                    part -= ck * (k as f64 * theta).sin()
                        / (k as f64 * std::f64::consts::PI);
                }
                f += part;
                break;
            } else {
                break;
            }
        }
        f.clamp(0.0, 1.0)
    }

    /// Gauss-Legendre quadrature of the equilibrium measure: per band,
    /// nodes x = c + r cos(theta) with weights (1/pi) g(theta) w_theta.
    pub fn quadrature(&self, points_per_band: usize) -> Vec<(f64, f64)> {
        let (t, wt) = gauss_legendre(points_per_band);
        let mut rule = Vec::with_capacity(points_per_band * self.bands.len());
        for (i, band) in self.bands.iter().enumerate() {
            for (&ti, &wi) in t.iter().zip(&wt) {
                let theta = 0.5 * (ti + 1.0) * std::f64::consts::PI;
                let x = band.center + band.radius * theta.cos();
                let g = eval_band_g(
                    &band_intervals(&self.bands),
                    &self.gap_zeros,
                    i,
                    theta,
                );
                rule.push((x, wi * 0.5 * g));
            }
        }
        rule
    }
}

fn band_intervals(bands: &[Band]) -> Vec<(f64, f64)> {
    bands.iter().map(|b| (b.a, b.b)).collect()
}

/// Exterior Joukowski coordinate: u with (u + 1/u)/2 = w and |u| >= 1.
fn exterior_coordinate(w: Complex64) -> Complex64 {
    if w.im == 0.0 && w.re.abs() <= 1.0 {
        return Complex64::new(w.re, (1.0 - w.re * w.re).max(0.0).sqrt());
    }
    let s = (w - 1.0).sqrt() * (w + 1.0).sqrt();
    let u1 = w + s;
    let u2 = w - s;
    if u1.norm() >= u2.norm() {
        u1
    } else {
        u2
    }
}

/// Density factor on band i in the angle variable, with the band's own
/// edge factors removed by the substitution:
/// g(theta) = |P(t)| / sqrt(prod over other edges |t - e|).
fn eval_band_g(bands: &[(f64, f64)], gap_zeros: &[f64], i: usize, theta: f64) -> f64 {
    let (a, b) = bands[i];
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let t = c + r * theta.cos();
    let mut num = ScaledProduct::one();
    for &xj in gap_zeros {
        num.mul(t - xj);
    }
    let mut den = ScaledProduct::one();
    for (j, &(aj, bj)) in bands.iter().enumerate() {
        if j != i {
            den.mul((t - aj).abs());
            den.mul((t - bj).abs());
        }
    }
    num.div_sqrt(&den).abs()
}

/// Newton solve for the gap zeros: the residual is the vector of gap
/// integrals of P(t)/sqrt(R(t)), one per gap, with analytic Jacobian.
/// Quadrature resolution doubles until the converged residual is stable.
fn solve_gap_zeros(bands: &[(f64, f64)]) -> Result<(Vec<f64>, f64)> {
    let n_gaps = bands.len() - 1;
    if n_gaps == 0 {
        return Ok((Vec::new(), 0.0));
    }
    let gaps: Vec<(f64, f64)> = bands.windows(2).map(|w| (w[0].1, w[1].0)).collect();
    let mut xj: Vec<f64> = gaps.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();

    let mut n_quad = 64;
    let mut last_norm = f64::INFINITY;
    loop {
        let norm = newton_at_resolution(bands, &gaps, &mut xj, n_quad)?;
        if n_quad >= 512 || (norm < 1e-12 && (last_norm - norm).abs() < 1e-12) {
            // verify at double resolution
            let (g, _, scale) = gap_system(bands, &gaps, &xj, 2 * n_quad);
            let verified = g
                .iter()
                .zip(&scale)
                .map(|(&v, &s)| (v / s).abs())
                .fold(0.0f64, f64::max);
            if verified <= 1e-10 || n_quad >= 512 {
                if verified > 1e-10 {
                    return Err(Error::SolveFailed { residual: verified });
                }
                return Ok((xj, verified));
            }
        }
        last_norm = norm;
        n_quad *= 2;
    }
}

fn newton_at_resolution(
    bands: &[(f64, f64)],
    gaps: &[(f64, f64)],
    xj: &mut [f64],
    n_quad: usize,
) -> Result<f64> {
    let n = xj.len();
    let mut best = f64::INFINITY;
    for _ in 0..80 {
        let (g, jac, scale) = gap_system(bands, gaps, xj, n_quad);
        let norm = g
            .iter()
            .zip(&scale)
            .map(|(&v, &s)| (v / s).abs())
            .fold(0.0f64, f64::max);
        best = best.min(norm);
        if norm < 5e-14 {
            return Ok(norm);
        }
        let mut a = jac;
        let mut rhs: Vec<f64> = g.iter().map(|&v| -v).collect();
        let step = solve_dense(&mut a, &mut rhs)?;
        // damp so every zero stays strictly inside its gap
        let mut lambda = 1.0f64;
        for _ in 0..50 {
            let ok = (0..n).all(|k| {
                let x = xj[k] + lambda * step[k];
                let (lo, hi) = gaps[k];
                let margin = 1e-9 * (hi - lo);
                x > lo + margin && x < hi - margin
            });
            if ok {
                break;
            }
            lambda *= 0.5;
        }
        for k in 0..n {
            xj[k] += lambda * step[k];
        }
    }
    if best < 1e-10 {
        Ok(best)
    } else {
        Err(Error::SolveFailed { residual: best })
    }
}

/// Gap integrals, their Jacobian in the gap zeros, and per-gap magnitude
/// scales for normalizing residuals.
fn gap_system(
    bands: &[(f64, f64)],
    gaps: &[(f64, f64)],
    xj: &[f64],
    n_quad: usize,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = xj.len();
    let (tq, wq) = gauss_legendre(n_quad);
    let mut g = vec![0.0; n];
    let mut jac = vec![0.0; n * n];
    let mut scale = vec![0.0; n];
    for k in 0..n {
        let (lo, hi) = gaps[k];
        let c = 0.5 * (lo + hi);
        let r = 0.5 * (hi - lo);
        for (&ti, &wi) in tq.iter().zip(&wq) {
            let theta = 0.5 * (ti + 1.0) * std::f64::consts::PI;
            let w = wi * 0.5 * std::f64::consts::PI;
            let t = c + r * theta.cos();
            // base = prod_{j != k} (t - x_j) / sqrt(prod of other edge factors)
            let mut num = ScaledProduct::one();
            for (j, &x) in xj.iter().enumerate() {
                if j != k {
                    num.mul(t - x);
                }
            }
            let mut den = ScaledProduct::one();
            for (i, &(a, b)) in bands.iter().enumerate() {
                // the gap's own edges b_k = bands[k].1, a_{k+1} = bands[k+1].0
                // are absorbed by the theta substitution
                if i != k {
                    den.mul((t - b).abs());
                }
                if i != k + 1 {
                    den.mul((t - a).abs());
                }
            }
            let base = num.div_sqrt(&den);
            let full = base * (t - xj[k]);
            g[k] += w * full;
            scale[k] += w * base.abs() * r;
            for j in 0..n {
                if j == k {
                    jac[k * n + j] -= w * base;
                } else {
                    jac[k * n + j] -= w * full / (t - xj[j]);
                }
            }
        }
        scale[k] = scale[k].max(1e-300);
    }
    (g, jac, scale)
}

/// Chebyshev cosine tables of every band density, with the resolution
/// doubled until the coefficient tail is negligible.
fn build_band_tables(bands: &[(f64, f64)], gap_zeros: &[f64]) -> Vec<Band> {
    bands
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let mut m = 64usize;
            loop {
                let samples: Vec<f64> = (0..=m)
                    .map(|q| {
                        eval_band_g(bands, gap_zeros, i, q as f64 * std::f64::consts::PI / m as f64)
                    })
                    .collect();
                let mut coeffs = dct_i(&samples);
                let cmax = coeffs.iter().fold(1e-300f64, |acc, &c| acc.max(c.abs()));
                // denoise below the spectral floor; this keeps constant
                // densities (single intervals) exactly constant
                for c in coeffs.iter_mut().skip(1) {
                    if c.abs() < 1e-14 * cmax {
                        *c = 0.0;
                    }
                }
                let tail = coeffs[m - m / 8..]
                    .iter()
                    .fold(0.0f64, |acc, &c| acc.max(c.abs()));
                if tail <= 1e-13 * cmax || m >= 4096 {
                    return Band {
                        a,
                        b,
                        center: 0.5 * (a + b),
                        radius: 0.5 * (b - a),
                        coeffs,
                    };
                }
                m *= 2;
            }
        })
        .collect()
}

/// DCT-I: from samples g(q pi / M), q = 0..=M, to cosine coefficients
/// with the convention g = c_0 + sum_{k>=1} c_k cos(k theta).
fn dct_i(samples: &[f64]) -> Vec<f64> {
    let m = samples.len() - 1;
    (0..=m)
        .map(|k| {
            let mut s = 0.5 * samples[0];
            for (q, &v) in samples.iter().enumerate().skip(1) {
                let f = if q == m { 0.5 } else { 1.0 };
                s += f * v * (k as f64 * q as f64 * std::f64::consts::PI / m as f64).cos();
            }
            s * if k == 0 { 1.0 } else { 2.0 } / m as f64
        })
        .collect()
}

/// Capacities and successive weak (sup-CDF) distances along a nested
/// decreasing sequence of interval unions.
#[derive(Debug, Clone)]
pub struct EquilibriumLimit {
    pub capacities: Vec<f64>,
    pub weak_distances: Vec<f64>,
}

pub fn equilibrium_limit(sets: &[IntervalUnion]) -> Result<EquilibriumLimit> {
    for (i, pair) in sets.windows(2).enumerate() {
        if !pair[1].is_subset_of(&pair[0]) {
            return Err(Error::NotNested(i + 1));
        }
    }
    let solved: Vec<EquilibriumData> = sets
        .iter()
        .map(equilibrium)
        .collect::<Result<_>>()?;
    let capacities = solved.iter().map(|e| e.capacity).collect();
    let weak_distances = solved
        .windows(2)
        .map(|pair| cdf_sup_distance(&pair[0], &pair[1]))
        .collect();
    Ok(EquilibriumLimit {
        capacities,
        weak_distances,
    })
}

fn cdf_sup_distance(e1: &EquilibriumData, e2: &EquilibriumData) -> f64 {
    let mut grid: Vec<f64> = Vec::new();
    for e in [e1, e2] {
        for &(a, b) in e.set().intervals() {
            grid.push(a);
            grid.push(b);
            for q in 1..64 {
                grid.push(a + (b - a) * q as f64 / 64.0);
            }
        }
    }
    grid.sort_by(|x, y| x.partial_cmp(y).unwrap());
    grid.iter()
        .map(|&x| (e1.cdf(x) - e2.cdf(x)).abs())
        .fold(0.0, f64::max)
}

/// Bernstein-Walsh check: |p(z)| <= ||p||_E exp(n G_E(z)) at each sample.
#[derive(Debug, Clone)]
pub struct BernsteinWalshReport {
    pub sup_norm: f64,
    pub holds: Vec<bool>,
    pub max_ratio: f64,
    pub all_hold: bool,
}

/// `coeffs` are ascending monomial coefficients of p (degree >= 1).
pub fn bernstein_walsh_check(
    coeffs: &[f64],
    set: &IntervalUnion,
    points: &[Complex64],
) -> Result<BernsteinWalshReport> {
    let degree = coeffs
        .iter()
        .rposition(|&c| c != 0.0)
        .ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    if degree == 0 {
        return Err(Error::Invalid("degree must be at least 1".into()));
    }
    let eq = equilibrium(set)?;
    let horner = |z: Complex64| -> Complex64 {
        coeffs[..=degree]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let mut sup = 0.0f64;
    for &(a, b) in set.intervals() {
        let m = 32 * (degree + 4);
        for q in 0..=m {
            let x = 0.5 * (a + b)
                + 0.5 * (b - a) * (q as f64 * std::f64::consts::PI / m as f64).cos();
            sup = sup.max(horner(Complex64::new(x, 0.0)).norm());
        }
    }
    let mut holds = Vec::with_capacity(points.len());
    let mut max_ratio = 0.0f64;
    for &z in points {
        let bound = sup * (degree as f64 * eq.green(z)).exp();
        let val = horner(z).norm();
        let ratio = val / bound;
        max_ratio = max_ratio.max(ratio);
        holds.push(val <= bound * (1.0 + 1e-8));
    }
    Ok(BernsteinWalshReport {
        sup_norm: sup,
        all_hold: holds.iter().all(|&h| h),
        holds,
        max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn iv(spec: &[(f64, f64)]) -> IntervalUnion {
        IntervalUnion::normalize(spec).unwrap()
    }

    #[test]
    fn single_interval_classics() {
        // C([a,b]) = (b-a)/4 and the arcsine density
        let e = equilibrium(&iv(&[(-2.0, 2.0)])).unwrap();
        assert_abs_diff_eq!(e.capacity, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(
            e.density(0.0),
            1.0 / (2.0 * std::f64::consts::PI),
            epsilon = 1e-12
        );
        assert!(e.gap_zeros.is_empty());
        let e2 = equilibrium(&iv(&[(0.0, 1.0)])).unwrap();
        assert_abs_diff_eq!(e2.capacity, 0.25, epsilon = 1e-10);
        // C([-2,3]) = 5/4
        let e3 = equilibrium(&iv(&[(-2.0, 3.0)])).unwrap();
        assert_abs_diff_eq!(e3.capacity, 1.25, epsilon = 1e-10);
        // E(a,b) = [b-2a, b+2a] has capacity a
        let (a, b) = (0.7, 1.0);
        let e4 = equilibrium(&iv(&[(b - 2.0 * a, b + 2.0 * a)])).unwrap();
        assert_abs_diff_eq!(e4.capacity, a, epsilon = 1e-10);
    }

    #[test]
    fn symmetric_two_interval_squaring_map() {
        // C([-1,-k] u [k,1]) = sqrt(1-k^2)/2, gap zero at 0 by symmetry
        for k in [0.2, 0.5, 0.8] {
            let e = equilibrium(&iv(&[(-1.0, -k), (k, 1.0)])).unwrap();
            assert_abs_diff_eq!(e.capacity, (1.0 - k * k).sqrt() / 2.0, epsilon = 1e-9);
            assert_abs_diff_eq!(e.gap_zeros[0], 0.0, epsilon = 1e-10);
            assert!(e.residual <= 1e-10);
        }
    }

    #[test]
    fn green_conformal_map_oracle() {
        let e = equilibrium(&iv(&[(-2.0, 2.0)])).unwrap();
        // boundary value
        assert_abs_diff_eq!(e.green(Complex64::new(1.0, 0.0)), 0.0, epsilon = 1e-8);
        // G(3) = log((3+sqrt 5)/2) from the Joukowski map
        assert_abs_diff_eq!(
            e.green(Complex64::new(3.0, 0.0)),
            ((3.0 + 5f64.sqrt()) / 2.0).ln(),
            epsilon = 1e-10
        );
        // far-field asymptotics: G ~ log|z| - log C
        assert_abs_diff_eq!(
            e.green(Complex64::new(0.0, 1e6)),
            (1e6f64).ln(),
            epsilon = 1e-4
        );
    }

    #[test]
    fn frostman_equality_and_exterior_inequality() {
        let e = equilibrium(&iv(&[(-2.0, -0.3), (0.2, 1.0), (1.5, 3.1)])).unwrap();
        let log_inv_cap = -e.capacity.ln();
        for &(a, b) in e.set().intervals() {
            for frac in [0.15, 0.5, 0.85] {
                let x = a + frac * (b - a);
                assert_abs_diff_eq!(
                    e.potential(Complex64::new(x, 0.0)),
                    log_inv_cap,
                    epsilon = 1e-9
                );
            }
        }
        // strictly smaller potential at exterior points
        for z in [
            Complex64::new(0.0, 0.0),
            Complex64::new(-3.0, 0.0),
            Complex64::new(1.2, 0.5),
            Complex64::new(4.0, 0.0),
        ] {
            assert!(e.potential(z) < log_inv_cap - 1e-6);
        }
    }

    #[test]
    fn density_normalization_and_cdf() {
        let e = equilibrium(&iv(&[(-1.0, 0.0), (0.5, 1.0)])).unwrap();
        assert!(e.normalization_error < 1e-10);
        assert_abs_diff_eq!(e.cdf(-1.0), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.cdf(1.0), 1.0, epsilon = 1e-10);
        // constant across the gap
        assert_abs_diff_eq!(e.cdf(0.2), e.cdf(0.4), epsilon = 1e-12);
        // quadrature integrates to one
        let rule = e.quadrature(64);
        let mass: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-10);
        // density endpoint sentinel
        assert!(e.density(-1.0).is_infinite());
        assert_eq!(e.density(0.25), 0.0);
    }

    #[test]
    fn capacity_scaling_covariance() {
        let e = iv(&[(0.0, 1.0), (2.0, 2.5)]);
        let c1 = capacity(&e).unwrap();
        let c2 = capacity(&e.scale_translate(3.0, -1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(c2, 3.0 * c1, epsilon = 1e-9);
    }

    #[test]
    fn nested_interval_capacities() {
        let seq = vec![
            iv(&[(-1.0, 1.0)]),
            iv(&[(-1.0, 0.0)]),
            iv(&[(-1.0, -0.5)]),
        ];
        let lim = equilibrium_limit(&seq).unwrap();
        assert_abs_diff_eq!(lim.capacities[0], 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(lim.capacities[1], 0.25, epsilon = 1e-10);
        assert_abs_diff_eq!(lim.capacities[2], 0.125, epsilon = 1e-10);
        let constant = vec![iv(&[(-2.0, 2.0)]); 3];
        let lim2 = equilibrium_limit(&constant).unwrap();
        for &c in &lim2.capacities {
            assert_abs_diff_eq!(c, 1.0, epsilon = 1e-10);
        }
        for &d in &lim2.weak_distances {
            assert!(d < 1e-12);
        }
        // non-nested input is rejected
        let bad = vec![iv(&[(0.0, 1.0)]), iv(&[(0.5, 2.0)])];
        assert!(matches!(
            equilibrium_limit(&bad),
            Err(Error::NotNested(1))
        ));
    }

    #[test]
    fn bernstein_walsh_single_interval() {
        // p(z) = z on [-1,1] at z = 2: |2| <= exp(G(2)), G(2) = log(2 + sqrt 3)
        let e = iv(&[(-1.0, 1.0)]);
        let rep =
            bernstein_walsh_check(&[0.0, 1.0], &e, &[Complex64::new(2.0, 0.0)]).unwrap();
        assert!(rep.all_hold);
        assert_abs_diff_eq!(rep.sup_norm, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            rep.max_ratio,
            2.0 / (2.0 + 3f64.sqrt()),
            epsilon = 1e-9
        );
    }

    #[test]
    fn cantor_gap_count_and_residual() {
        let e = crate::setgeom::cantor_approximant(5, 1.0 / 3.0).unwrap();
        let eq = equilibrium(&e).unwrap();
        assert_eq!(eq.gap_zeros.len(), 31);
        assert!(eq.residual <= 1e-10);
        assert!(eq.normalization_error < 1e-9);
        assert!(eq.capacity_spread < 1e-9);
    }
}
