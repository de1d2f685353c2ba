//! Chebyshev polynomials on interval unions (minimax, unrestricted and
//! restricted), Fekete point sets, the transfinite diameter, and the
//! capacity inequality chain
//!
//!   C(E) <= ||T_n||^{1/n} <= ||T_n^R||^{1/n} <= zeta_{n+1}(E).
//!
//! Minimax runs a discrete multi-point exchange on a per-interval
//! Chebyshev grid (the alternation characterization holds on any real
//! grid since polynomials form a Haar system), then polishes the final
//! reference off-grid so the reported norm is the continuous minimax
//! value, not a grid approximation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::equilibrium::equilibrium;
use crate::error::{Error, Result};
use crate::numeric::{ks_distance, solve_dense};
use crate::setgeom::IntervalUnion;

const MAX_DEGREE: usize = 60;
const MAX_FEKETE: usize = 200;

/// Chebyshev series on the hull of E; the stable evaluation form.
#[derive(Debug, Clone)]
pub struct ChebSeries {
    pub center: f64,
    pub radius: f64,
    /// coefficients in T_k((x - center)/radius), ascending
    pub coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn eval(&self, x: f64) -> f64 {
        let w = (x - self.center) / self.radius;
        let mut b1 = 0.0f64;
        let mut b2 = 0.0f64;
        for &c in self.coeffs.iter().skip(1).rev() {
            let t = 2.0 * w * b1 - b2 + c;
            b2 = b1;
            b1 = t;
        }
        w * b1 - b2 + self.coeffs[0]
    }

    /// Series of the derivative.
    pub fn derivative(&self) -> ChebSeries {
        let n = self.coeffs.len();
        let mut d = vec![0.0f64; n.max(1)];
        if n >= 2 {
            for k in (1..n).rev() {
                let next = if k + 2 < n { d[k + 1] } else { 0.0 };
                d[k - 1] = next + 2.0 * k as f64 * self.coeffs[k];
            }
            d[0] *= 0.5;
        }
        d.truncate(n.saturating_sub(1).max(1));
        for v in &mut d {
            *v /= self.radius;
        }
        ChebSeries {
            center: self.center,
            radius: self.radius,
            coeffs: d,
        }
    }

    /// Ascending monomial coefficients (exact basis conversion; the data
    /// contract, not the evaluation path).
    pub fn to_monomial(&self) -> Vec<f64> {
        let n = self.coeffs.len();
        let mut t_prev = vec![0.0; n];
        let mut t_cur = vec![0.0; n];
        t_prev[0] = 1.0; // T_0
        let mut out = vec![0.0; n];
        out[0] += self.coeffs[0];
        if n == 1 {
            return out;
        }
        // T_1((x-c)/r) = (x - c)/r
        t_cur[0] = -self.center / self.radius;
        t_cur[1] = 1.0 / self.radius;
        for (i, v) in t_cur.iter().enumerate() {
            out[i] += self.coeffs[1] * v;
        }
        for k in 2..n {
            let mut t_next = vec![0.0; n];
            for i in 0..n {
                // 2 (x - c)/r * t_cur
                if t_cur[i] != 0.0 {
                    if i + 1 < n {
                        t_next[i + 1] += 2.0 / self.radius * t_cur[i];
                    }
                    t_next[i] -= 2.0 * self.center / self.radius * t_cur[i];
                }
            }
            for i in 0..n {
                t_next[i] -= t_prev[i];
            }
            for (i, v) in t_next.iter().enumerate() {
                out[i] += self.coeffs[k] * v;
            }
            t_prev = t_cur;
            t_cur = t_next;
        }
        out
    }
}

/// A solved minimax problem: the monic polynomial minimizing the sup norm
/// on E, either over all monic polynomials or over those with all roots
/// in E (`restricted`).
#[derive(Debug, Clone)]
pub struct ChebyshevResult {
    pub degree: usize,
    /// ascending monomial coefficients, leading coefficient exactly 1
    pub coefficients: Vec<f64>,
    pub sup_norm: f64,
    pub equioscillation_points: Vec<f64>,
    pub restricted: bool,
    /// roots, only populated for the restricted variant
    pub roots: Vec<f64>,
    pub series: ChebSeries,
}

impl ChebyshevResult {
    pub fn eval(&self, x: f64) -> f64 {
        self.series.eval(x)
    }
}

/// Minimax monic polynomial of degree n on E.
pub fn chebyshev(set: &IntervalUnion, n: usize, restricted: bool) -> Result<ChebyshevResult> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "degree {n} outside 1..={MAX_DEGREE}"
        )));
    }
    if restricted {
        chebyshev_restricted(set, n)
    } else {
        chebyshev_unrestricted(set, n)
    }
}

/// Chebyshev-spaced grid per interval; returns the flat ascending grid and
/// the index range of each interval's slice.
fn grid_points(set: &IntervalUnion, n: usize) -> (Vec<f64>, Vec<(usize, usize)>) {
    let per = 64 * n;
    let mut grid = Vec::with_capacity(per * set.num_intervals());
    let mut ranges = Vec::with_capacity(set.num_intervals());
    for &(a, b) in set.intervals() {
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        let start = grid.len();
        for q in 0..per {
            // ascending within the interval
            grid.push(
                c + r * ((per - 1 - q) as f64 * std::f64::consts::PI / (per - 1) as f64)
                    .cos(),
            );
        }
        ranges.push((start, grid.len()));
    }
    (grid, ranges)
}

fn chebyshev_unrestricted(set: &IntervalUnion, n: usize) -> Result<ChebyshevResult> {
    let (grid, ranges) = grid_points(set, n);
    let (hull_a, hull_b) = set.hull();
    let center = 0.5 * (hull_a + hull_b);
    let radius = 0.5 * (hull_b - hull_a);
    // leading coefficient of T_n((x-c)/r) is 2^{n-1}/r^n, so monic needs
    let lead = radius.powi(n as i32) / 2f64.powi(n as i32 - 1);

    // initial reference: hull Chebyshev extrema snapped onto the grid
    let mut reference: Vec<f64> = (0..=n)
        .map(|j| {
            let target = center + radius * (j as f64 * std::f64::consts::PI / n as f64).cos();
            *grid
                .iter()
                .min_by(|&&x, &&y| {
                    (x - target).abs().partial_cmp(&(y - target).abs()).unwrap()
                })
                .unwrap()
        })
        .collect();
    reference.sort_by(|x, y| x.partial_cmp(y).unwrap());
    reference.dedup();
    let mut fill = 1usize;
    while reference.len() < n + 1 {
        // pad with unused grid points, evenly spread
        let cand = grid[(fill * grid.len() / (n + 2)) % grid.len()];
        if !reference.contains(&cand) {
            reference.push(cand);
            reference.sort_by(|x, y| x.partial_cmp(y).unwrap());
        }
        fill += 1;
        if fill > 4 * n + 8 {
            return Err(Error::ExchangeStall { best: f64::NAN });
        }
    }

    let mut best_norm = f64::INFINITY;
    let mut series = None;
    let mut stalls = 0usize;
    let mut prev_reference = Vec::new();
    for _ in 0..200 {
        let s = solve_reference(&reference, n, center, radius, lead)?;
        let vals: Vec<f64> = grid.iter().map(|&x| s.eval(x)).collect();
        let h = s.eval(reference[0]).abs();
        let grid_max = vals.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        if grid_max < best_norm {
            best_norm = grid_max;
        }
        if grid_max <= h * (1.0 + 1e-10) {
            series = Some(s);
            break;
        }
        let new_ref = exchange_reference(&grid, &ranges, &vals, n)?;
        if new_ref == prev_reference || new_ref == reference {
            stalls += 1;
            if stalls >= 3 {
                return Err(Error::ExchangeStall { best: best_norm });
            }
        }
        prev_reference = std::mem::take(&mut reference);
        reference = new_ref;
    }
    let mut series = series.ok_or(Error::ExchangeStall { best: best_norm })?;

    // continuous polish: move the reference to the true extrema of T
    let mut h_last = f64::INFINITY;
    for _ in 0..12 {
        refine_extrema(&mut reference, &series, set);
        series = solve_reference(&reference, n, center, radius, lead)?;
        let h = series.eval(reference[0]).abs();
        if (h - h_last).abs() <= 1e-14 * h.max(1.0) {
            break;
        }
        h_last = h;
    }
    refine_extrema(&mut reference, &series, set);
    let sup_norm = reference
        .iter()
        .map(|&x| series.eval(x).abs())
        .fold(0.0f64, f64::max);

    Ok(ChebyshevResult {
        degree: n,
        coefficients: series.to_monomial(),
        sup_norm,
        equioscillation_points: reference.clone(),
        restricted: false,
        roots: Vec::new(),
        series,
    })
}

/// Leveled-error system on a reference: T(x_i) = (-1)^i h with
/// T = sum_{k<n} c_k T_k + lead * T_n monic.
fn solve_reference(
    reference: &[f64],
    n: usize,
    center: f64,
    radius: f64,
    lead: f64,
) -> Result<ChebSeries> {
    let m = n + 1;
    let mut a = vec![0.0f64; m * m];
    let mut rhs = vec![0.0f64; m];
    let mut tvals = vec![0.0f64; n + 1];
    for (i, &x) in reference.iter().enumerate() {
        let w = (x - center) / radius;
        tvals[0] = 1.0;
        if n >= 1 {
            tvals[1] = w;
        }
        for k in 2..=n {
            tvals[k] = 2.0 * w * tvals[k - 1] - tvals[k - 2];
        }
        a[i * m..i * m + n]
            .iter_mut()
            .zip(&tvals[..n])
            .for_each(|(slot, &tk)| *slot = tk);
        a[i * m + n] = if i % 2 == 0 { -1.0 } else { 1.0 };
        rhs[i] = -lead * tvals[n];
    }
    let sol = solve_dense(&mut a, &mut rhs)?;
    let mut coeffs = sol[..n].to_vec();
    coeffs.push(lead);
    Ok(ChebSeries {
        center,
        radius,
        coeffs,
    })
}

/// Multi-point exchange: local extrema of |T| per interval slice (slice
/// endpoints always included), same-sign runs reduced to their maximum,
/// then trimmed to an alternating set of n+1 points. Oversized sets lose
/// their weakest adjacent pair (which preserves alternation); the final
/// single excess point is dropped from the weaker end.
fn exchange_reference(
    grid: &[f64],
    ranges: &[(usize, usize)],
    vals: &[f64],
    n: usize,
) -> Result<Vec<f64>> {
    let mut candidates: Vec<usize> = Vec::new();
    for &(s, e) in ranges {
        for i in s..e {
            let v = vals[i].abs();
            let left = if i == s { 0.0 } else { vals[i - 1].abs() };
            let right = if i + 1 == e { 0.0 } else { vals[i + 1].abs() };
            if i == s || i + 1 == e || (v >= left && v >= right) {
                candidates.push(i);
            }
        }
    }
    // keep the largest of each run of equal signs
    let mut alt: Vec<usize> = Vec::new();
    for &i in &candidates {
        match alt.last() {
            Some(&j) if vals[j].signum() == vals[i].signum() => {
                if vals[i].abs() > vals[j].abs() {
                    *alt.last_mut().unwrap() = i;
                }
            }
            _ => alt.push(i),
        }
    }
    if alt.len() < n + 1 {
        return Err(Error::ExchangeStall {
            best: vals.iter().fold(0.0f64, |m, &v| m.max(v.abs())),
        });
    }
    while alt.len() > n + 1 {
        if alt.len() == n + 2 {
            let first = vals[alt[0]].abs();
            let last = vals[*alt.last().unwrap()].abs();
            if first <= last {
                alt.remove(0);
            } else {
                alt.pop();
            }
        } else {
            // remove the adjacent pair with the weakest stronger member
            let mut best_pair = 0;
            let mut best_val = f64::INFINITY;
            for k in 0..alt.len() - 1 {
                let pair_max = vals[alt[k]].abs().max(vals[alt[k + 1]].abs());
                if pair_max < best_val {
                    best_val = pair_max;
                    best_pair = k;
                }
            }
            alt.drain(best_pair..best_pair + 2);
        }
    }
    Ok(alt.into_iter().map(|i| grid[i]).collect())
}

/// Replace each reference point by the true local extremum of |T| within
/// its Voronoi cell (midpoints to the neighboring reference points,
/// clipped to its interval of E), so neighboring points cannot capture
/// the same peak.
fn refine_extrema(reference: &mut [f64], series: &ChebSeries, set: &IntervalUnion) {
    let n = reference.len();
    let snapshot = reference.to_vec();
    for i in 0..n {
        let x = snapshot[i];
        let Some(&(a, b)) = set
            .intervals()
            .iter()
            .find(|&&(a, b)| x >= a - 1e-12 && x <= b + 1e-12)
        else {
            continue;
        };
        let lo = if i == 0 {
            a
        } else {
            (0.5 * (snapshot[i - 1] + x)).max(a)
        };
        let hi = if i + 1 == n {
            b
        } else {
            (0.5 * (snapshot[i + 1] + x)).min(b)
        };
        let (mut l, mut r) = (lo.max(a), hi.min(b));
        if r <= l {
            continue;
        }
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = r - phi * (r - l);
        let mut x2 = l + phi * (r - l);
        let mut f1 = series.eval(x1).abs();
        let mut f2 = series.eval(x2).abs();
        for _ in 0..60 {
            if f1 < f2 {
                l = x1;
                x1 = x2;
                f1 = f2;
                x2 = l + phi * (r - l);
                f2 = series.eval(x2).abs();
            } else {
                r = x2;
                x2 = x1;
                f2 = f1;
                x1 = r - phi * (r - l);
                f1 = series.eval(x1).abs();
            }
            if r - l < 1e-14 * (1.0 + x.abs()) {
                break;
            }
        }
        let mid = 0.5 * (l + r);
        // accept only genuine improvements
        if series.eval(mid).abs() >= series.eval(reference[i]).abs() {
            reference[i] = mid;
        }
    }
}

/// Restricted minimax: all roots confined to E. Candidates (projected
/// unrestricted roots, Fekete polynomials) are polished by cyclic
/// coordinate descent of the grid sup norm with cached log sums; only the
/// norm is contract-bearing, the root set is best-effort.
fn chebyshev_restricted(set: &IntervalUnion, n: usize) -> Result<ChebyshevResult> {
    let unrestricted = chebyshev_unrestricted(set, n)?;
    let (grid, _) = grid_points(set, n);

    let clamp_to_set = |x: f64| -> f64 {
        let mut best = x;
        let mut dist = f64::INFINITY;
        for &(a, b) in set.intervals() {
            let c = x.clamp(a, b);
            let d = (c - x).abs();
            if d < dist {
                dist = d;
                best = c;
            }
        }
        best
    };

    let mut candidates: Vec<Vec<f64>> = Vec::new();
    // unrestricted roots, projected into E
    let roots = series_roots(&unrestricted.series, set);
    if roots.len() == n {
        candidates.push(roots.iter().map(|&r| clamp_to_set(r)).collect());
    }
    // Fekete polynomials: drop one point of an (n+1)-point Fekete set
    if n + 1 >= 2 && n + 1 <= MAX_FEKETE {
        if let Ok(fk) = fekete(set, n + 1) {
            let mut best: Option<(f64, Vec<f64>)> = None;
            for k in 0..=n {
                let mut pts = fk.points.clone();
                pts.remove(k);
                let norm = sup_on_grid(&pts, &grid);
                if best.as_ref().map_or(true, |(b, _)| norm < *b) {
                    best = Some((norm, pts));
                }
            }
            if let Some((_, pts)) = best {
                candidates.push(pts);
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::SolveFailed { residual: f64::NAN });
    }

    let mut best_roots = Vec::new();
    let mut best_norm = f64::INFINITY;
    for mut roots in candidates {
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        coordinate_descent(&mut roots, &grid, set);
        let norm = true_sup_from_roots(&roots, set);
        if norm < best_norm {
            best_norm = norm;
            best_roots = roots;
        }
    }

    // the unrestricted optimum wins whenever it is feasible
    let unrestricted_feasible = series_roots(&unrestricted.series, set)
        .iter()
        .all(|&r| set.distance(r) <= 1e-9);
    if unrestricted_feasible && unrestricted.sup_norm <= best_norm {
        let mut roots = series_roots(&unrestricted.series, set);
        roots.iter_mut().for_each(|r| *r = clamp_to_set(*r));
        best_roots = roots;
        best_norm = unrestricted.sup_norm;
    }

    let series = series_from_roots(&best_roots, set);
    Ok(ChebyshevResult {
        degree: n,
        coefficients: series.to_monomial(),
        sup_norm: best_norm,
        equioscillation_points: Vec::new(),
        restricted: true,
        roots: best_roots,
        series,
    })
}

fn sup_on_grid(roots: &[f64], grid: &[f64]) -> f64 {
    grid.iter()
        .map(|&x| roots.iter().map(|&t| (x - t).abs().ln()).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
        .exp()
}

/// Cyclic coordinate descent on log sup norm with cached per-grid-point
/// log sums; each coordinate moves within its containing interval.
fn coordinate_descent(roots: &mut [f64], grid: &[f64], set: &IntervalUnion) {
    let n = roots.len();
    let mut sums: Vec<f64> = grid
        .iter()
        .map(|&x| roots.iter().map(|&t| ln_dist(x, t)).sum::<f64>())
        .collect();
    for _cycle in 0..6 {
        let mut moved = false;
        for j in 0..n {
            let old = roots[j];
            // strip root j out of the sums
            for (s, &x) in sums.iter_mut().zip(grid) {
                *s -= ln_dist(x, old);
            }
            let (a, b) = containing_interval(set, old);
            let objective = |t: f64| -> f64 {
                sums.iter()
                    .zip(grid)
                    .map(|(&s, &x)| s + ln_dist(x, t))
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            // golden-section over [a, b]
            let phi = 0.5 * (5f64.sqrt() - 1.0);
            let (mut l, mut r) = (a, b);
            let mut x1 = r - phi * (r - l);
            let mut x2 = l + phi * (r - l);
            let mut f1 = objective(x1);
            let mut f2 = objective(x2);
            for _ in 0..48 {
                if f1 > f2 {
                    l = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = l + phi * (r - l);
                    f2 = objective(x2);
                } else {
                    r = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = r - phi * (r - l);
                    f1 = objective(x1);
                }
            }
            let cand = 0.5 * (l + r);
            let new = if objective(cand) < objective(old) {
                moved = true;
                cand
            } else {
                old
            };
            roots[j] = new;
            for (s, &x) in sums.iter_mut().zip(grid) {
                *s += ln_dist(x, new);
            }
        }
        if !moved {
            break;
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
}

fn ln_dist(x: f64, t: f64) -> f64 {
    let d = (x - t).abs();
    if d == 0.0 {
        -745.0 // ln of the smallest positive double; a root on a grid point
    } else {
        d.ln()
    }
}

fn containing_interval(set: &IntervalUnion, x: f64) -> (f64, f64) {
    for &(a, b) in set.intervals() {
        if x >= a - 1e-12 && x <= b + 1e-12 {
            return (a, b);
        }
    }
    // nearest interval
    *set.intervals()
        .iter()
        .min_by(|&&(a, b), &&(c, d)| {
            let d1 = (x - a).abs().min((x - b).abs());
            let d2 = (x - c).abs().min((x - d).abs());
            d1.partial_cmp(&d2).unwrap()
        })
        .unwrap()
}

/// Continuous sup norm of prod (x - t_j) over E: dense per-interval scan
/// plus golden refinement at the winning bracket.
fn true_sup_from_roots(roots: &[f64], set: &IntervalUnion) -> f64 {
    let eval_ln = |x: f64| roots.iter().map(|&t| ln_dist(x, t)).sum::<f64>();
    let mut best = f64::NEG_INFINITY;
    for &(a, b) in set.intervals() {
        let m = 48 * roots.len().max(4);
        let mut prev = a;
        let mut best_here = f64::NEG_INFINITY;
        let mut best_x = a;
        for q in 0..=m {
            let x = a + (b - a) * q as f64 / m as f64;
            let v = eval_ln(x);
            if v > best_here {
                best_here = v;
                best_x = x;
            }
            prev = x;
        }
        let _ = prev;
        // refine around best_x
        let h = (b - a) / m as f64;
        let (mut l, mut r) = ((best_x - h).max(a), (best_x + h).min(b));
        for _ in 0..60 {
            let m1 = l + (r - l) / 3.0;
            let m2 = r - (r - l) / 3.0;
            if eval_ln(m1) < eval_ln(m2) {
                l = m1;
            } else {
                r = m2;
            }
        }
        best = best.max(eval_ln(0.5 * (l + r))).max(best_here);
    }
    best.exp()
}

/// Monic series with the given roots, on the hull basis of E.
fn series_from_roots(roots: &[f64], set: &IntervalUnion) -> ChebSeries {
    let (a, b) = set.hull();
    let center = 0.5 * (a + b);
    let radius = 0.5 * (b - a);
    // multiply out in the Chebyshev basis: repeated (x - t) products
    let mut coeffs = vec![1.0f64]; // the constant 1
    for &t in roots {
        // multiply the series by (x - t):
        // x * T_k = (T_{k+1} + T_{|k-1|}) / 2 in the scaled variable
        let n = coeffs.len();
        let mut next = vec![0.0f64; n + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            // x = center + radius * w; w T_k = (T_{k+1} + T_{k-1})/2
            next[k] += (center - t) * c;
            if k == 0 {
                next[1] += radius * c;
            } else {
                next[k + 1] += 0.5 * radius * c;
                next[k - 1] += 0.5 * radius * c;
            }
        }
        coeffs = next;
    }
    ChebSeries {
        center,
        radius,
        coeffs,
    }
}

/// Roots of a degree-n Chebyshev series by sign-change bisection over the
/// hull (minimax polynomials on real sets have real roots).
fn series_roots(series: &ChebSeries, set: &IntervalUnion) -> Vec<f64> {
    let (a, b) = set.hull();
    let n = series.coeffs.len() - 1;
    let m = 64 * n.max(2);
    let mut roots = Vec::with_capacity(n);
    let mut prev_x = a - 1e-9 * (b - a);
    let mut prev_v = series.eval(prev_x);
    for q in 0..=m {
        let x = a + (b - a) * q as f64 / m as f64 + if q == m { 1e-9 * (b - a) } else { 0.0 };
        let v = series.eval(x);
        if v == 0.0 {
            roots.push(x);
        } else if prev_v != 0.0 && prev_v.signum() != v.signum() {
            let (mut lo, mut hi) = (prev_x, x);
            let mut flo = prev_v;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let fm = series.eval(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    roots
}

/// An n-point Fekete set: points of E maximizing prod |z_i - z_j| over
/// all pairs, with the Fekete constant zeta_n and the largest
/// electrostatic residual at unpinned points.
#[derive(Debug, Clone)]
pub struct FeketeSet {
    pub points: Vec<f64>,
    pub zeta: f64,
    pub grad_norm: f64,
    /// log of the full pair product, sum over i != j of log |z_i - z_j|
    pub log_product: f64,
}

/// Maximize the pair product by projected Newton electrostatics with
/// endpoint pinning; occupation numbers per component are discrete, so a
/// small multistart over allocations keeps the best product.
pub fn fekete(set: &IntervalUnion, n: usize) -> Result<FeketeSet> {
    if !(2..=MAX_FEKETE).contains(&n) {
        return Err(Error::Unsupported(format!(
            "fekete size {n} outside 2..={MAX_FEKETE}"
        )));
    }
    let comps = set.intervals();
    let occupations = candidate_occupations(set, n)?;
    let mut best: Option<FeketeSet> = None;
    for occ in occupations {
        if let Ok(fs) = fekete_with_occupation(comps, &occ, n) {
            let better = match &best {
                None => true,
                Some(cur) => {
                    fs.log_product > cur.log_product + 1e-12
                        || ((fs.log_product - cur.log_product).abs() <= 1e-12
                            && fs.points < cur.points)
                }
            };
            if better {
                best = Some(fs);
            }
        }
    }
    best.ok_or(Error::SolveFailed { residual: f64::NAN })
}

fn candidate_occupations(set: &IntervalUnion, n: usize) -> Result<Vec<Vec<usize>>> {
    let comps = set.intervals();
    let m = comps.len();
    if m == 1 {
        return Ok(vec![vec![n]]);
    }
    let mut proportions: Vec<Vec<f64>> = Vec::new();
    if let Ok(eq) = equilibrium(set) {
        proportions.push(
            comps
                .iter()
                .map(|&(a, b)| eq.cdf(b) - eq.cdf(a))
                .collect(),
        );
    }
    let total_len: f64 = set.lebesgue();
    proportions.push(comps.iter().map(|&(a, b)| (b - a) / total_len).collect());

    let mut occs: Vec<Vec<usize>> = Vec::new();
    for p in &proportions {
        occs.push(largest_remainder(p, n));
    }
    // +-1 perturbations of the first allocation
    if let Some(base) = occs.first().cloned() {
        for i in 0..m {
            for j in 0..m {
                if i != j && base[i] > 0 {
                    let mut occ = base.clone();
                    occ[i] -= 1;
                    occ[j] += 1;
                    occs.push(occ);
                }
            }
        }
    }
    // one random allocation for robustness
    let mut rng = ChaCha8Rng::seed_from_u64(0xFE4E7E ^ n as u64);
    let mut random = vec![0usize; m];
    for _ in 0..n {
        random[rng.gen_range(0..m)] += 1;
    }
    occs.push(random);
    occs.sort();
    occs.dedup();
    occs.retain(|occ| occ.iter().sum::<usize>() == n);
    // a component with a single point cannot hold more than the others allow,
    // but any occupation is admissible in principle
    if occs.is_empty() {
        return Err(Error::SolveFailed { residual: f64::NAN });
    }
    Ok(occs)
}

fn largest_remainder(props: &[f64], n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = props.iter().map(|&p| (p * n as f64).floor() as usize).collect();
    let mut rem: Vec<(f64, usize)> = props
        .iter()
        .enumerate()
        .map(|(i, &p)| (p * n as f64 - (p * n as f64).floor(), i))
        .collect();
    rem.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let assigned: usize = out.iter().sum();
    for k in 0..n.saturating_sub(assigned) {
        out[rem[k % rem.len()].1] += 1;
    }
    out
}

fn fekete_with_occupation(
    comps: &[(f64, f64)],
    occ: &[usize],
    n: usize,
) -> Result<FeketeSet> {
    // initial points: Chebyshev-Lobatto layout inside each component
    let mut pts: Vec<f64> = Vec::with_capacity(n);
    let mut comp_of: Vec<usize> = Vec::with_capacity(n);
    for (ci, (&(a, b), &k)) in comps.iter().zip(occ).enumerate() {
        if k == 0 {
            continue;
        }
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        if k == 1 {
            pts.push(c);
            comp_of.push(ci);
        } else {
            for q in 0..k {
                pts.push(c - r * (q as f64 * std::f64::consts::PI / (k - 1) as f64).cos());
                comp_of.push(ci);
            }
        }
    }
    let diam = comps.last().unwrap().1 - comps[0].0;

    let log_obj = |x: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                s += (x[j] - x[i]).abs().ln();
            }
        }
        2.0 * s
    };

    let mut grad_norm = f64::INFINITY;
    for _iter in 0..200 {
        let forces: Vec<f64> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| 1.0 / (pts[i] - pts[j]))
                    .sum()
            })
            .collect();
        let pinned: Vec<bool> = (0..n)
            .map(|i| {
                let (a, b) = comps[comp_of[i]];
                (pts[i] <= a && forces[i] < 0.0) || (pts[i] >= b && forces[i] > 0.0)
            })
            .collect();
        let free: Vec<usize> = (0..n).filter(|&i| !pinned[i]).collect();
        grad_norm = free
            .iter()
            .map(|&i| forces[i].abs())
            .fold(0.0f64, f64::max);
        if grad_norm <= 1e-10 * (n as f64 / diam).max(1.0) {
            break;
        }
        if free.is_empty() {
            grad_norm = 0.0;
            break;
        }
        // reduced Newton system
        let f = free.len();
        let mut h = vec![0.0f64; f * f];
        let mut rhs = vec![0.0f64; f];
        for (fi, &i) in free.iter().enumerate() {
            let mut diag = 0.0;
            for j in 0..n {
                if j == i {
                    continue;
                }
                let inv2 = 1.0 / ((pts[i] - pts[j]) * (pts[i] - pts[j]));
                diag -= inv2;
                if let Some(fj) = free.iter().position(|&x| x == j) {
                    h[fi * f + fj] = inv2;
                }
            }
            h[fi * f + fi] = diag - 1e-12 * (n as f64 / diam / diam);
            rhs[fi] = -forces[i];
        }
        let step = match solve_dense(&mut h, &mut rhs) {
            Ok(s) => s,
            Err(_) => free.iter().map(|&i| forces[i] * 1e-3).collect(),
        };
        let base = log_obj(&pts);
        let mut lambda = 1.0f64;
        let mut accepted = false;
        for _ in 0..45 {
            let mut trial = pts.clone();
            for (fi, &i) in free.iter().enumerate() {
                let (a, b) = comps[comp_of[i]];
                trial[i] = (pts[i] + lambda * step[fi]).clamp(a, b);
            }
            let mut sorted = trial.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let distinct = sorted
                .windows(2)
                .all(|w| w[1] - w[0] > 1e-14 * diam);
            if distinct && log_obj(&trial) >= base - 1e-13 * base.abs() {
                pts = trial;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if !(grad_norm <= 1e-9 * (n as f64 / diam).max(1.0)) {
        return Err(Error::SolveFailed {
            residual: grad_norm,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| pts[i].partial_cmp(&pts[j]).unwrap());
    let points: Vec<f64> = order.iter().map(|&i| pts[i]).collect();
    let log_product = log_obj(&points);
    let zeta = (log_product / (n as f64 * (n as f64 - 1.0))).exp();
    Ok(FeketeSet {
        points,
        zeta,
        grad_norm,
        log_product,
    })
}

/// Fekete constants zeta_2 .. zeta_{n_max}, monotone non-increasing.
pub fn transfinite_diameter(set: &IntervalUnion, n_max: usize) -> Result<Vec<f64>> {
    (2..=n_max).map(|n| Ok(fekete(set, n)?.zeta)).collect()
}

/// Capacity estimate from log q_n data: least squares on the model
/// log q_n = L n^2 + c n log n + d n + e, returning exp(L). The raw
/// zeta_n converge only like log n / n; the fit removes the subleading
/// terms.
pub fn transfinite_extrapolate(ns: &[usize], log_products: &[f64]) -> f64 {
    assert_eq!(ns.len(), log_products.len());
    assert!(ns.len() >= 4);
    let m = ns.len();
    // normal equations for the 4-parameter model
    let basis = |n: f64| [n * n, n * n.ln(), n, 1.0];
    let mut ata = vec![0.0f64; 16];
    let mut atb = vec![0.0f64; 4];
    for i in 0..m {
        let phi = basis(ns[i] as f64);
        for r in 0..4 {
            for c in 0..4 {
                ata[r * 4 + c] += phi[r] * phi[c];
            }
            atb[r] += phi[r] * log_products[i];
        }
    }
    let sol = solve_dense(&mut ata, &mut atb).expect("fit system is nonsingular");
    sol[0].exp()
}

/// The four chain values of the capacity inequality, with a slack check.
#[derive(Debug, Clone)]
pub struct BoundsChain {
    pub capacity: f64,
    pub cheb_norm_root: f64,
    pub restricted_norm_root: f64,
    pub zeta_next: f64,
}

impl BoundsChain {
    pub fn holds(&self, slack: f64) -> bool {
        self.capacity <= self.cheb_norm_root + slack
            && self.cheb_norm_root <= self.restricted_norm_root + slack
            && self.restricted_norm_root <= self.zeta_next + slack
    }
}

pub fn bounds_chain(set: &IntervalUnion, n: usize) -> Result<BoundsChain> {
    let cap = equilibrium(set)?.capacity;
    let t = chebyshev(set, n, false)?;
    let tr = chebyshev(set, n, true)?;
    let fk = fekete(set, n + 1)?;
    Ok(BoundsChain {
        capacity: cap,
        cheb_norm_root: t.sup_norm.powf(1.0 / n as f64),
        restricted_norm_root: tr.sup_norm.powf(1.0 / n as f64),
        zeta_next: fk.zeta,
    })
}

/// KS distances between the uniform measure on Fekete points and the
/// equilibrium measure, for each requested n.
pub fn fekete_counting_convergence(
    set: &IntervalUnion,
    n_list: &[usize],
) -> Result<Vec<f64>> {
    let eq = equilibrium(set)?;
    n_list
        .iter()
        .map(|&n| {
            let fk = fekete(set, n)?;
            Ok(ks_distance(&fk.points, |x| eq.cdf(x)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn iv(spec: &[(f64, f64)]) -> IntervalUnion {
        IntervalUnion::normalize(spec).unwrap()
    }

    #[test]
    fn classical_chebyshev_norm_on_sym_interval() {
        // monic minimax on [-2,2] has sup norm exactly 2 for every degree
        for n in [1usize, 3, 7, 12, 20] {
            let t = chebyshev(&iv(&[(-2.0, 2.0)]), n, false).unwrap();
            assert_abs_diff_eq!(t.sup_norm, 2.0, epsilon = 1e-9);
            assert_eq!(t.equioscillation_points.len(), n + 1);
        }
        // n = 3 on [-2,2]: z^3 - 3z
        let t3 = chebyshev(&iv(&[(-2.0, 2.0)]), 3, false).unwrap();
        assert_abs_diff_eq!(t3.coefficients[3], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t3.coefficients[1], -3.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t3.coefficients[0], 0.0, epsilon = 1e-8);
    }

    #[test]
    fn degree_one_is_midpoint_centering() {
        for restricted in [false, true] {
            let t = chebyshev(&iv(&[(0.0, 1.0)]), 1, restricted).unwrap();
            assert_abs_diff_eq!(t.sup_norm, 0.5, epsilon = 1e-10);
            assert_abs_diff_eq!(t.coefficients[0], -0.5, epsilon = 1e-10);
            assert_abs_diff_eq!(t.coefficients[1], 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn two_interval_even_case_brute_force() {
        // E symmetric: minimax of degree 2 is z^2 - c; scan c
        let e = iv(&[(-1.0, -0.5), (0.5, 1.0)]);
        let t = chebyshev(&e, 2, false).unwrap();
        let mut best = f64::INFINITY;
        for k in 0..=100_000 {
            let c = 0.0 + 1.5 * k as f64 / 100_000.0;
            let sup = [0.5f64, 1.0, (c.max(0.25).min(1.0)).sqrt()]
                .iter()
                .map(|&x| (x * x - c).abs())
                .fold(0.0f64, f64::max);
            best = best.min(sup);
        }
        assert_abs_diff_eq!(t.sup_norm, best, epsilon = 1e-4);
    }

    #[test]
    fn fekete_endpoints_and_stieltjes_oracle() {
        // n = 2 on [a,b]: the endpoints, zeta_2 = b - a
        let f2 = fekete(&iv(&[(0.25, 1.5)]), 2).unwrap();
        assert_abs_diff_eq!(f2.points[0], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(f2.points[1], 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f2.zeta, 1.25, epsilon = 1e-12);
        // n = 3 on [-1,1]: {-1, 0, 1}
        let f3 = fekete(&iv(&[(-1.0, 1.0)]), 3).unwrap();
        for (p, e) in f3.points.iter().zip([-1.0, 0.0, 1.0]) {
            assert_abs_diff_eq!(p, &e, epsilon = 1e-9);
        }
        // n = 5 on [-1,1]: endpoints and the zeros of x(7x^2 - 3)
        let f5 = fekete(&iv(&[(-1.0, 1.0)]), 5).unwrap();
        let s = (3.0f64 / 7.0).sqrt();
        for (p, e) in f5.points.iter().zip([-1.0, -s, 0.0, s, 1.0]) {
            assert_abs_diff_eq!(p, &e, epsilon = 1e-8);
        }
        assert!(f5.grad_norm <= 1e-9);
    }

    #[test]
    fn zeta_monotone_decreasing() {
        let zetas = transfinite_diameter(&iv(&[(0.0, 1.0)]), 16).unwrap();
        for w in zetas.windows(2) {
            assert!(w[1] <= w[0] + 1e-10);
        }
        // zeta_2 on [-2,2] is the diameter
        let z2 = fekete(&iv(&[(-2.0, 2.0)]), 2).unwrap().zeta;
        assert_abs_diff_eq!(z2, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn transfinite_extrapolation_recovers_capacity() {
        let e = iv(&[(0.0, 1.0)]);
        let ns: Vec<usize> = (8..=40).collect();
        let logs: Vec<f64> = ns
            .iter()
            .map(|&n| fekete(&e, n).unwrap().log_product)
            .collect();
        let cap = transfinite_extrapolate(&ns, &logs);
        assert_abs_diff_eq!(cap, 0.25, epsilon = 1e-3);
    }

    #[test]
    fn chain_on_interval_and_union() {
        let chain = bounds_chain(&iv(&[(-2.0, 2.0)]), 10).unwrap();
        assert!(chain.holds(1e-6));
        assert_abs_diff_eq!(chain.capacity, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(chain.cheb_norm_root, 2f64.powf(0.1), epsilon = 1e-8);
        let chain2 = bounds_chain(&iv(&[(-1.0, -0.3), (0.2, 1.0)]), 8).unwrap();
        assert!(chain2.holds(1e-6));
    }

    #[test]
    fn restricted_norm_dominates_unrestricted() {
        let e = iv(&[(-1.0, -0.3), (0.2, 1.0)]);
        for n in [2usize, 4, 6] {
            let t = chebyshev(&e, n, false).unwrap();
            let tr = chebyshev(&e, n, true).unwrap();
            assert!(tr.sup_norm >= t.sup_norm - 1e-9);
            for &r in &tr.roots {
                assert!(e.distance(r) <= 1e-9);
            }
        }
    }

    #[test]
    fn fekete_counting_toward_equilibrium() {
        let ks = fekete_counting_convergence(&iv(&[(-2.0, 2.0)]), &[5, 40]).unwrap();
        assert!(ks[1] <= 0.05);
        assert!(ks[1] < ks[0]);
    }

    #[test]
    fn submultiplicativity_of_cheb_norms() {
        let e = iv(&[(-1.0, -0.2), (0.4, 1.1)]);
        let norms: Vec<f64> = (1..=8)
            .map(|n| chebyshev(&e, n, false).unwrap().sup_norm)
            .collect();
        for n in 1..=4usize {
            for m in 1..=4usize {
                assert!(norms[n + m - 1] <= norms[n - 1] * norms[m - 1] * (1.0 + 1e-9));
            }
        }
    }
}
