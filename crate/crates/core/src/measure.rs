//! Positive measures on the line: symbolic specifications (atoms plus
//! absolutely continuous components with declared endpoint singularities),
//! their quadrature discretizations, logarithmic potentials, and Coulomb
//! energies.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::numeric::gauss_legendre;
use crate::recurrence;

/// Declared endpoint behavior of an a.c. density on its interval.
/// `InvSqrtLeft` means the density behaves like (x - a)^{-1/2} near a, and
/// similarly on the right; interior values must be finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Singularity {
    None,
    InvSqrtLeft,
    InvSqrtRight,
    Both,
}

pub type Density = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// One absolutely continuous component: a density on an interval.
#[derive(Clone)]
pub struct AcComponent {
    pub interval: (f64, f64),
    pub density: Density,
    pub flag: Singularity,
}

/// A positive measure given symbolically: point masses plus a.c. components.
#[derive(Clone, Default)]
pub struct MeasureSpec {
    pub point_masses: Vec<(f64, f64)>,
    pub ac_components: Vec<AcComponent>,
}

impl MeasureSpec {
    pub fn from_atoms(atoms: Vec<(f64, f64)>) -> Self {
        MeasureSpec {
            point_masses: atoms,
            ac_components: Vec::new(),
        }
    }

    /// The arcsine (equilibrium) density 1/(pi sqrt((x-a)(b-x))) on [a, b].
    pub fn arcsine(a: f64, b: f64) -> Self {
        let (lo, hi) = (a, b);
        MeasureSpec {
            point_masses: Vec::new(),
            ac_components: vec![AcComponent {
                interval: (a, b),
                density: Arc::new(move |x| {
                    let v = (x - lo) * (hi - x);
                    if v <= 0.0 {
                        f64::INFINITY
                    } else {
                        1.0 / (std::f64::consts::PI * v.sqrt())
                    }
                }),
                flag: Singularity::Both,
            }],
        }
    }

    /// Semicircle density 2 sqrt((x-a)(b-x)) / (pi r^2) on [a, b] (mass 1).
    pub fn semicircle(a: f64, b: f64) -> Self {
        let r = 0.5 * (b - a);
        let (lo, hi) = (a, b);
        MeasureSpec {
            point_masses: Vec::new(),
            ac_components: vec![AcComponent {
                interval: (a, b),
                density: Arc::new(move |x| {
                    let v = (x - lo) * (hi - x);
                    2.0 * v.max(0.0).sqrt() / (std::f64::consts::PI * r * r)
                }),
                flag: Singularity::None,
            }],
        }
    }

    /// Lebesgue measure (density 1) on [a, b].
    pub fn lebesgue(a: f64, b: f64) -> Self {
        MeasureSpec {
            point_masses: Vec::new(),
            ac_components: vec![AcComponent {
                interval: (a, b),
                density: Arc::new(|_| 1.0),
                flag: Singularity::None,
            }],
        }
    }

    /// Superposition of two specs.
    pub fn sum(mut self, other: MeasureSpec) -> MeasureSpec {
        self.point_masses.extend(other.point_masses);
        self.ac_components.extend(other.ac_components);
        self
    }
}

/// A measure as weighted nodes. Nodes are strictly increasing; runs of
/// nodes produced from an a.c. component are recorded so that potentials
/// and energies can treat them as cell-averaged mass rather than atoms.
#[derive(Debug, Clone, Serialize)]
pub struct DiscretizedMeasure {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    total_mass: f64,
    #[serde(skip)]
    ac_runs: Vec<(usize, usize, (f64, f64))>,
}

impl DiscretizedMeasure {
    /// Build a purely atomic measure; equal nodes are merged, weights must
    /// be strictly positive.
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Invalid("measure needs at least one atom".into()));
        }
        let mut sorted = atoms.to_vec();
        for &(x, w) in &sorted {
            if !x.is_finite() || !(w > 0.0) {
                return Err(Error::Invalid(format!("bad atom ({x}, {w})")));
            }
        }
        sorted.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let mut nodes = Vec::with_capacity(sorted.len());
        let mut weights: Vec<f64> = Vec::with_capacity(sorted.len());
        for (x, w) in sorted {
            if let (Some(&last), Some(lw)) = (nodes.last(), weights.last_mut()) {
                if x == last {
                    *lw += w;
                    continue;
                }
            }
            nodes.push(x);
            weights.push(w);
        }
        let total_mass = weights.iter().sum();
        Ok(DiscretizedMeasure {
            nodes,
            weights,
            total_mass,
            ac_runs: Vec::new(),
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Copy with weights scaled to total mass one.
    pub fn normalized(&self) -> DiscretizedMeasure {
        let m = self.total_mass;
        DiscretizedMeasure {
            nodes: self.nodes.clone(),
            weights: self.weights.iter().map(|w| w / m).collect(),
            total_mass: 1.0,
            ac_runs: self.ac_runs.clone(),
        }
    }

    /// Mass of the closed window [lo, hi].
    pub fn window_mass(&self, lo: f64, hi: f64) -> f64 {
        let i0 = self.nodes.partition_point(|&x| x < lo);
        let i1 = self.nodes.partition_point(|&x| x <= hi);
        self.weights[i0..i1].iter().sum()
    }

    /// k-th raw moment.
    pub fn moment(&self, k: usize) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * x.powi(k as i32))
            .sum()
    }

    fn scale(&self) -> f64 {
        let lo = self.nodes.first().copied().unwrap_or(0.0);
        let hi = self.nodes.last().copied().unwrap_or(1.0);
        (hi - lo).abs().max(1.0)
    }

    /// Cell boundaries for one a.c. run: midpoints between nodes, clamped
    /// to the source interval at the ends.
    fn run_cells(&self, run: (usize, usize, (f64, f64))) -> Vec<(f64, f64)> {
        let (s, e, (lo, hi)) = run;
        (s..e)
            .map(|i| {
                let left = if i == s {
                    lo
                } else {
                    0.5 * (self.nodes[i - 1] + self.nodes[i])
                };
                let right = if i == e - 1 {
                    hi
                } else {
                    0.5 * (self.nodes[i] + self.nodes[i + 1])
                };
                (left, right)
            })
            .collect()
    }

    fn is_in_ac_run(&self, idx: usize) -> bool {
        self.ac_runs.iter().any(|&(s, e, _)| idx >= s && idx < e)
    }
}

impl<'de> Deserialize<'de> for DiscretizedMeasure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            nodes: Vec<f64>,
            weights: Vec<f64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.nodes.len() != raw.weights.len() {
            return Err(serde::de::Error::custom("nodes/weights length mismatch"));
        }
        let atoms: Vec<(f64, f64)> = raw.nodes.into_iter().zip(raw.weights).collect();
        DiscretizedMeasure::from_atoms(&atoms).map_err(serde::de::Error::custom)
    }
}

/// Replace each a.c. component by a Gauss rule adapted to its singularity
/// flag, exact (to quadrature accuracy) for polynomials of degree
/// 2 * nodes_per_component - 1 against the declared density. Point masses
/// are copied verbatim.
pub fn discretize(spec: &MeasureSpec, nodes_per_component: usize) -> Result<DiscretizedMeasure> {
    if nodes_per_component < 2 && !spec.ac_components.is_empty() {
        return Err(Error::Invalid(
            "need at least 2 nodes per a.c. component".into(),
        ));
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut ac_runs = Vec::new();
    for comp in &spec.ac_components {
        let (x, w) = component_gauss_rule(comp, nodes_per_component)?;
        let start = nodes.len();
        nodes.extend(x);
        weights.extend(w);
        ac_runs.push((start, nodes.len(), comp.interval));
    }
    // merge in the atoms, keeping run index ranges consistent
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&i, &j| nodes[i].partial_cmp(&nodes[j]).unwrap());
    // a.c. rules on disjoint intervals stay contiguous after sorting; remap runs
    let mut pos = vec![0usize; nodes.len()];
    for (rank, &i) in order.iter().enumerate() {
        pos[i] = rank;
    }
    let sorted_nodes: Vec<f64> = order.iter().map(|&i| nodes[i]).collect();
    let sorted_weights: Vec<f64> = order.iter().map(|&i| weights[i]).collect();
    let runs: Vec<(usize, usize, (f64, f64))> = ac_runs
        .iter()
        .map(|&(s, e, iv)| {
            let mut lo = usize::MAX;
            let mut hi = 0usize;
            for i in s..e {
                lo = lo.min(pos[i]);
                hi = hi.max(pos[i]);
            }
            (lo, hi + 1, iv)
        })
        .collect();
    for &(s, e, _) in &runs {
        debug_assert!(e - s > 0);
    }

    let mut all: Vec<(f64, f64)> = sorted_nodes.into_iter().zip(sorted_weights).collect();
    // atoms are inserted by position; coincidence with a rule node keeps both
    // masses (merged) and the run bookkeeping untouched only when atoms are
    // outside the runs, so nudge exact collisions by one ulp instead.
    let mut atom_list = spec.point_masses.clone();
    atom_list.sort_by(|p, q| p.partial_cmp(q).unwrap());
    for &(x, w) in &atom_list {
        if !(w > 0.0) || !x.is_finite() {
            return Err(Error::Invalid(format!("bad point mass ({x}, {w})")));
        }
    }
    let mut runs = runs;
    for (x, w) in atom_list {
        let idx = all.partition_point(|&(n, _)| n < x);
        all.insert(idx, (x, w));
        for run in &mut runs {
            if run.0 >= idx {
                run.0 += 1;
            }
            if run.1 > idx {
                run.1 += 1;
            }
        }
    }
    let total_mass = all.iter().map(|&(_, w)| w).sum();
    let (nodes, weights): (Vec<f64>, Vec<f64>) = all.into_iter().unzip();
    for pair in nodes.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::Invalid(format!(
                "coincident nodes at {} in discretization",
                pair[0]
            )));
        }
    }
    Ok(DiscretizedMeasure {
        nodes,
        weights,
        total_mass,
        ac_runs: runs,
    })
}

/// Gauss rule for one a.c. component: a singularity-adapted reference rule
/// feeds the Stieltjes/Lanczos map, whose Jacobi coefficients give the
/// n-point rule for the actual density.
fn component_gauss_rule(comp: &AcComponent, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (a, b) = comp.interval;
    if !(b > a) {
        return Err(Error::MalformedInterval { a, b });
    }
    // Per-flag reference transform. Declared inverse-sqrt singularities
    // are removed analytically: the cosine substitution for both ends
    // (midpoint grid in the angle is the Chebyshev rule, spectral for the
    // whole sqrt algebra), a one-sided t^2 substitution for single ends.
    // Plain densities get Gauss-Legendre with a convergence self-check
    // that falls back to the angle rule when the density carries
    // sqrt-vanishing edges.
    let n_ref = (2 * n + 64).max(128);
    let (xs, ws) = match comp.flag {
        Singularity::Both => angle_reference(comp, n_ref)?,
        Singularity::InvSqrtLeft => one_sided_reference(comp, n_ref, true)?,
        Singularity::InvSqrtRight => one_sided_reference(comp, n_ref, false)?,
        Singularity::None => {
            let coarse = plain_reference(comp, n_ref)?;
            let fine = plain_reference(comp, 2 * n_ref)?;
            let m0: f64 = coarse.1.iter().sum();
            let m1: f64 = fine.1.iter().sum();
            let s0: f64 = coarse.0.iter().zip(&coarse.1).map(|(&x, &w)| x * w).sum();
            let s1: f64 = fine.0.iter().zip(&fine.1).map(|(&x, &w)| x * w).sum();
            let scale = m1.abs().max(1e-300);
            if (m1 - m0).abs() <= 1e-12 * scale && (s1 - s0).abs() <= 1e-12 * scale {
                fine
            } else {
                angle_reference(comp, (4 * n + 128).max(512))?
            }
        }
    };
    let mass: f64 = ws.iter().sum();
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::Invalid("a.c. component has nonpositive mass".into()));
    }
    let (ja, jb) = recurrence::lanczos_jacobi(&xs, &ws, n)?;
    let (mut gx, gw) = recurrence::gauss_rule(&ja, &jb, mass, n);
    // clamp roundoff spill just outside the interval
    for x in &mut gx {
        *x = x.clamp(a, b);
    }
    Ok((gx, gw))
}

/// x = c + r cos(theta) on a midpoint theta grid; spectral whenever the
/// density is analytic times half-integer powers of (x-a)(b-x).
fn angle_reference(comp: &AcComponent, n_ref: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (a, b) = comp.interval;
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut xs = Vec::with_capacity(n_ref);
    let mut ws = Vec::with_capacity(n_ref);
    for q in 0..n_ref {
        let theta = (q as f64 + 0.5) * std::f64::consts::PI / n_ref as f64;
        let x = c + r * theta.cos();
        let jac = r * theta.sin() * std::f64::consts::PI / n_ref as f64;
        let d = density_at(comp, x)?;
        if !d.is_finite() {
            continue;
        }
        xs.push(x);
        ws.push(d * jac);
    }
    xs.reverse();
    ws.reverse();
    Ok((xs, ws))
}

/// t^2 substitution at the flagged endpoint only.
fn one_sided_reference(
    comp: &AcComponent,
    n_ref: usize,
    left: bool,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let (a, b) = comp.interval;
    let (t, wt) = gauss_legendre(n_ref);
    let mut xs = Vec::with_capacity(n_ref);
    let mut ws = Vec::with_capacity(n_ref);
    for (&ti, &wi) in t.iter().zip(&wt) {
        let s = 0.5 * (ti + 1.0);
        let (x, jac) = if left {
            (a + (b - a) * s * s, (b - a) * s)
        } else {
            (b - (b - a) * s * s, (b - a) * s)
        };
        if x <= a || x >= b {
            continue;
        }
        let d = density_at(comp, x)?;
        if !d.is_finite() {
            continue;
        }
        xs.push(x);
        ws.push(wi * d * jac);
    }
    if !left {
        xs.reverse();
        ws.reverse();
    }
    Ok((xs, ws))
}

/// Plain Gauss-Legendre in x.
fn plain_reference(comp: &AcComponent, n_ref: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (a, b) = comp.interval;
    let (t, wt) = gauss_legendre(n_ref);
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut xs = Vec::with_capacity(n_ref);
    let mut ws = Vec::with_capacity(n_ref);
    for (&ti, &wi) in t.iter().zip(&wt) {
        let x = c + r * ti;
        let d = density_at(comp, x)?;
        if !d.is_finite() {
            return Err(Error::BadDensity { x, value: d });
        }
        xs.push(x);
        ws.push(wi * d * r);
    }
    Ok((xs, ws))
}

fn density_at(comp: &AcComponent, x: f64) -> Result<f64> {
    let v = (comp.density)(x);
    if v.is_nan() || v < 0.0 {
        return Err(Error::BadDensity { x, value: v });
    }
    Ok(v)
}

/// Logarithmic potential of the discretized measure at z:
/// Phi(z) = integral of log|z - y|^{-1} d mu(y).
///
/// Atoms contribute w log|z - x|^{-1} and force the value +infinity when z
/// sits on an atom (within 1e-14 of the node, relatively). Nodes that came
/// from an a.c. component are smeared uniformly over their quadrature cell
/// and integrated in closed form, which keeps the evaluation meaningful on
/// the support itself.
pub fn log_potential(mu: &DiscretizedMeasure, z: Complex64) -> f64 {
    let scale = mu.scale();
    let mut phi = 0.0f64;
    // cell-averaged contributions for a.c. runs: each node's mass is spread
    // over its quadrature cell with a linear profile matching the cell mass
    // and first moment, so the evaluation is O(h^3)-accurate on the support
    for &run in &mu.ac_runs {
        let cells = mu.run_cells(run);
        for (i, &(lo, hi)) in (run.0..run.1).zip(cells.iter()) {
            let w = mu.weights[i];
            let h = hi - lo;
            if h <= 0.0 {
                phi += w * -(z - mu.nodes[i]).norm().ln();
                continue;
            }
            let m = 0.5 * (lo + hi);
            // slope keeping the profile nonnegative on the cell
            let tilt = (12.0 * w * (mu.nodes[i] - m) / (h * h * h))
                .clamp(-2.0 * w / (h * h), 2.0 * w / (h * h));
            let (i0, i1) = segment_log_integrals(z, lo, hi, m);
            phi -= w / h * i0 + tilt * i1;
        }
    }
    // atoms
    for (i, (&x, &w)) in mu.nodes.iter().zip(&mu.weights).enumerate() {
        if mu.is_in_ac_run(i) {
            continue;
        }
        let d = (z - x).norm();
        if d <= 1e-14 * scale {
            return f64::INFINITY;
        }
        phi -= w * d.ln();
    }
    phi
}

/// Closed forms of int log|z-y| dy and int (y-m) log|z-y| dy over [lo, hi].
fn segment_log_integrals(z: Complex64, lo: f64, hi: f64, m: f64) -> (f64, f64) {
    let alpha = z - m;
    let anti = |y: f64| -> (f64, f64) {
        let u = z - y;
        if u.norm() == 0.0 {
            return (0.0, 0.0);
        }
        let lnu = u.ln();
        // d/dy of -(z-y)(ln(z-y)-1) is ln(z-y)
        let f0 = (-u * (lnu - 1.0)).re;
        // antiderivative of (y-m) ln(z-y): substitute u = z-y
        let f1 = (-alpha * (u * lnu - u) + u * u * (0.5 * lnu - 0.25)).re;
        (f0, f1)
    };
    let (a0, a1) = anti(lo);
    let (b0, b1) = anti(hi);
    (b0 - a0, b1 - a1)
}

/// Coulomb energy of the discretized measure:
/// sum over distinct nodes of w_k w_l log|x_k - x_l|^{-1}, plus the
/// closed-form self-energy of each a.c. quadrature cell
/// (w^2 (log(1/h) + 3/2) for a uniform cell of width h). Raw diagonal
/// node-node terms are never used: they diverge with the node count.
pub fn coulomb_energy(mu: &DiscretizedMeasure) -> Result<f64> {
    let n = mu.len();
    let scale = mu.scale();
    let mut energy = 0.0f64;
    for k in 0..n {
        for l in k + 1..n {
            let d = (mu.nodes[l] - mu.nodes[k]).abs();
            if d <= 1e-14 * scale {
                return Err(Error::InfiniteEnergy);
            }
            energy -= 2.0 * mu.weights[k] * mu.weights[l] * d.ln();
        }
    }
    for &run in &mu.ac_runs {
        for (i, (lo, hi)) in (run.0..run.1).zip(mu.run_cells(run)) {
            let w = mu.weights[i];
            let h = (hi - lo).max(f64::MIN_POSITIVE);
            energy += w * w * (-h.ln() + 1.5);
        }
    }
    Ok(energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn binom(n: u64, k: u64) -> f64 {
        let mut v = 1.0f64;
        for i in 0..k {
            v = v * (n - i) as f64 / (i + 1) as f64;
        }
        v
    }

    #[test]
    fn single_atom_discretizes_verbatim() {
        let spec = MeasureSpec::from_atoms(vec![(0.0, 1.0)]);
        let mu = discretize(&spec, 8).unwrap();
        assert_eq!(mu.nodes(), &[0.0]);
        assert_eq!(mu.weights(), &[1.0]);
    }

    #[test]
    fn arcsine_rule_matches_central_binomial_moments() {
        // moments of the equilibrium measure of [-2,2]: x^{2m} integrates
        // to binom(2m, m), odd moments vanish
        let mu = discretize(&MeasureSpec::arcsine(-2.0, 2.0), 64).unwrap();
        for k in 0..=8usize {
            let m = mu.moment(k);
            let exact = if k % 2 == 0 {
                binom(k as u64, (k / 2) as u64)
            } else {
                0.0
            };
            assert_abs_diff_eq!(m, exact, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(mu.total_mass(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn lebesgue_rule_matches_monomial_moments() {
        let mu = discretize(&MeasureSpec::lebesgue(0.0, 1.0), 16).unwrap();
        for k in 0..=12usize {
            assert_abs_diff_eq!(mu.moment(k), 1.0 / (k as f64 + 1.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn bad_density_is_reported() {
        let spec = MeasureSpec {
            point_masses: vec![],
            ac_components: vec![AcComponent {
                interval: (0.0, 1.0),
                density: Arc::new(|_| -1.0),
                flag: Singularity::None,
            }],
        };
        assert!(matches!(
            discretize(&spec, 8),
            Err(Error::BadDensity { .. })
        ));
    }

    #[test]
    fn potential_of_single_atom() {
        let mu = DiscretizedMeasure::from_atoms(&[(0.0, 1.0)]).unwrap();
        let v = log_potential(&mu, Complex64::new(2.0, 0.0));
        assert_abs_diff_eq!(v, -(2.0f64.ln()), epsilon = 1e-15);
        assert!(log_potential(&mu, Complex64::new(0.0, 0.0)).is_infinite());
    }

    #[test]
    fn potential_of_equilibrium_measure_frostman() {
        // rho_[-2,2] has potential identically 0 on the set (capacity 1)
        let mu = discretize(&MeasureSpec::arcsine(-2.0, 2.0), 1024).unwrap();
        let inside = log_potential(&mu, Complex64::new(0.0, 0.0));
        assert_abs_diff_eq!(inside, 0.0, epsilon = 1e-6);
        // and the Green's function value off the set
        let outside = log_potential(&mu, Complex64::new(3.0, 0.0));
        let exact = -((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert_abs_diff_eq!(outside, exact, epsilon = 1e-6);
    }

    #[test]
    fn energy_of_equilibrium_measures() {
        // E(rho_[0,1]) = log 4, E(rho_[-2,2]) = 0
        let mu = discretize(&MeasureSpec::arcsine(0.0, 1.0), 512).unwrap();
        assert_abs_diff_eq!(coulomb_energy(&mu).unwrap(), 4.0f64.ln(), epsilon = 1e-3);
        let mu2 = discretize(&MeasureSpec::arcsine(-2.0, 2.0), 512).unwrap();
        assert_abs_diff_eq!(coulomb_energy(&mu2).unwrap(), 0.0, epsilon = 1e-3);
    }

    #[test]
    fn coincident_atoms_merge_but_shifted_pairs_are_infinite() {
        let mu = DiscretizedMeasure::from_atoms(&[(1.0, 0.5), (1.0, 0.5)]).unwrap();
        assert_eq!(mu.len(), 1);
        assert_abs_diff_eq!(mu.total_mass(), 1.0);
    }

    #[test]
    fn window_mass_prefix_sums() {
        let mu =
            DiscretizedMeasure::from_atoms(&[(0.0, 1.0), (0.5, 2.0), (1.0, 4.0)]).unwrap();
        assert_abs_diff_eq!(mu.window_mass(0.25, 1.0), 6.0);
        assert_abs_diff_eq!(mu.window_mass(-1.0, 0.0), 1.0);
        assert_abs_diff_eq!(mu.window_mass(1.5, 2.0), 0.0);
    }

    #[test]
    fn fubini_symmetry_for_atomic_measures() {
        let mu = DiscretizedMeasure::from_atoms(&[(0.1, 0.3), (0.9, 0.7)]).unwrap();
        let nu = DiscretizedMeasure::from_atoms(&[(-0.4, 1.2), (0.6, 0.8)]).unwrap();
        let lhs: f64 = nu
            .nodes()
            .iter()
            .zip(nu.weights())
            .map(|(&x, &w)| w * log_potential(&mu, Complex64::new(x, 0.0)))
            .sum();
        let rhs: f64 = mu
            .nodes()
            .iter()
            .zip(mu.weights())
            .map(|(&x, &w)| w * log_potential(&nu, Complex64::new(x, 0.0)))
            .sum();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
    }
}
