//! The orbit-supremum function G, the entropy S = R_sup - G it induces,
//! the constrained minimisation h(y), lower convex envelopes, and the
//! negativity bound functions g (closed-form and pipeline).
//!
//! For every measure that depends on a state only through its spectrum,
//! G has a closed form and no optimization is performed. The relative
//! entropy of coherence is the one measure whose orbit supremum is
//! actually searched for, over a Givens-angle parametrization of the
//! unitary group; the search result is always reported as achieved, never
//! extrapolated.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::entropies::{entropy, shannon_of, EntropyKind};
use crate::measures::{neg_spectrum_g, MeasureDescriptor};
use crate::qcore::{CMatrix, DensityMatrix, Spectrum};
use crate::{Error, Result};
use num_complex::Complex64;

/// Settings for the unitary-orbit supremum search.
#[derive(Debug, Clone)]
pub struct OrbitConfig {
    /// Independent starts; the first is always the identity.
    pub restarts: usize,
    /// Coordinate-descent sweeps over the Givens angles per start.
    pub sweeps: usize,
    /// Golden-section iterations per angle line search.
    pub golden_iters: usize,
    /// Convergence tolerance on the objective.
    pub tol: f64,
    /// Seed for the random starts.
    pub seed: u64,
    /// Optional hard cap on objective evaluations.
    pub max_evals: Option<usize>,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            sweeps: 3,
            golden_iters: 22,
            tol: 1e-6,
            seed: 0,
            max_evals: None,
        }
    }
}

/// Closed-form orbit supremum G of a measure over all states with the
/// given spectrum. Defined for every supported measure except coherence,
/// for which the attainable supremum log d - S_vN is returned (it is an
/// exact supremum, reached in the limit of an optimal basis).
pub fn orbit_sup_from_spectrum(measure: &MeasureDescriptor, spec: &Spectrum) -> Result<f64> {
    let dim = measure.dim();
    let spec = check_rank(spec, dim)?;
    let d = dim as f64;
    let g = match measure {
        MeasureDescriptor::CoherenceRelEnt { .. } | MeasureDescriptor::NonuniformityVN { .. } => {
            d.ln() - entropy(&spec, EntropyKind::VonNeumann)?
        }
        MeasureDescriptor::NonuniformityRenyi { order, .. } => {
            d.ln() - entropy(&spec, EntropyKind::Renyi(*order))?
        }
        MeasureDescriptor::NonuniformityTsallis { order, .. } => {
            let q = *order;
            measure.sup_value() - d.powf(q - 1.0) * entropy(&spec, EntropyKind::Tsallis(q))?
        }
        MeasureDescriptor::NegativityTwoQubitSpectrum => neg_spectrum_g(&spec.truncated(4, 0.0)?)?,
    };
    Ok(g.max(0.0))
}

/// The entropy induced by a measure: S = R_sup - G, evaluated on a
/// spectrum. Non-negative, zero on pure spectra, Schur-concave.
pub fn entropy_from_measure(measure: &MeasureDescriptor, spec: &Spectrum) -> Result<f64> {
    let g = orbit_sup_from_spectrum(measure, spec)?;
    Ok((measure.sup_value() - g).max(0.0))
}

fn check_rank(spec: &Spectrum, dim: usize) -> Result<Spectrum> {
    if spec.rank() > dim {
        return Err(Error::RankTooLarge {
            rank: spec.rank(),
            dim,
        });
    }
    if spec.len() > dim {
        spec.truncated(dim, 1e-12)
    } else {
        Ok(spec.clone())
    }
}

/// Supremum of a measure over the unitary orbit of a state.
///
/// Spectrum-only measures take the closed form; the coherence measure
/// runs a random-restart coordinate-descent search over Givens angles.
/// The returned value never falls below the measure evaluated at the
/// state itself.
pub fn g_orbit_sup(
    measure: &MeasureDescriptor,
    rho: &DensityMatrix,
    cfg: &OrbitConfig,
) -> Result<f64> {
    Ok(g_orbit_sup_traced(measure, rho, cfg)?.0)
}

/// As [`g_orbit_sup`], additionally returning the best value after each
/// restart (monotone non-decreasing by construction).
pub fn g_orbit_sup_traced(
    measure: &MeasureDescriptor,
    rho: &DensityMatrix,
    cfg: &OrbitConfig,
) -> Result<(f64, Vec<f64>)> {
    if measure.is_spectrum_only() {
        let v = orbit_sup_from_spectrum(measure, &rho.spectrum())?;
        return Ok((v, vec![v]));
    }
    if rho.dim() != measure.dim() {
        return Err(Error::DimensionMismatch(format!(
            "measure dimension {} vs state dimension {}",
            measure.dim(),
            rho.dim()
        )));
    }
    let svn = entropy(&rho.spectrum(), EntropyKind::VonNeumann)?;
    // The populations of U rho U^dag in any fixed basis sweep the same set
    // as in the computational basis, so the basis unitary drops out.
    let data = rho.data().clone();
    let dim = rho.dim();
    let objective = move |u: &CMatrix| -> f64 {
        let rotated = u * &data * u.adjoint();
        let populations: Vec<f64> = (0..dim).map(|i| rotated[(i, i)].re.max(0.0)).collect();
        shannon_of(&populations)
    };

    let mut evals_left = cfg.max_evals.unwrap_or(usize::MAX);
    let n_params = dim * (dim - 1); // (theta, phi) per index pair
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let mut best = f64::NEG_INFINITY;
    let mut trace = Vec::with_capacity(cfg.restarts);

    for restart in 0..cfg.restarts {
        let mut params = vec![0.0f64; n_params];
        if restart > 0 {
            for p in params.iter_mut() {
                *p = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            }
        }
        let mut value = f64::NEG_INFINITY;
        if evals_left > 0 {
            value = objective(&givens_unitary(dim, &params));
            evals_left -= 1;
        }
        let mut span = std::f64::consts::FRAC_PI_2;
        for _sweep in 0..cfg.sweeps {
            let before = value;
            for k in 0..n_params {
                if evals_left < cfg.golden_iters + 2 {
                    break;
                }
                let center = params[k];
                let (x, fx, used) = golden_max(
                    |x| {
                        let mut trial = params.clone();
                        trial[k] = x;
                        objective(&givens_unitary(dim, &trial))
                    },
                    center - span,
                    center + span,
                    cfg.golden_iters,
                );
                evals_left -= used;
                if fx > value {
                    value = fx;
                    params[k] = x;
                }
            }
            span *= 0.5;
            if value - before < cfg.tol {
                break;
            }
        }
        best = best.max(value);
        trace.push(best);
        if evals_left == 0 {
            break;
        }
    }

    // The search must have stabilized: the final quarter of the restarts
    // may not move the incumbent by more than the tolerance.
    if trace.len() >= 4 {
        let checkpoint = trace[trace.len() - 1 - trace.len() / 4];
        if trace.last().unwrap() - checkpoint > cfg.tol {
            return Err(Error::OptimizerFailed(format!(
                "best value still improved by {:.3e} over the final restarts",
                trace.last().unwrap() - checkpoint
            )));
        }
    }

    let at_identity = objective(&CMatrix::identity(dim, dim));
    let g = (best.max(at_identity) - svn).max(0.0);
    Ok((g, trace.iter().map(|b| (b - svn).max(0.0)).collect()))
}

/// Product of complex Givens rotations over all index pairs; a full
/// parametrization of U(d) up to diagonal phases, which population-type
/// objectives cannot see.
pub fn givens_unitary(dim: usize, params: &[f64]) -> CMatrix {
    assert_eq!(params.len(), dim * (dim - 1));
    let mut u = CMatrix::identity(dim, dim);
    let mut idx = 0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let (theta, phi) = (params[idx], params[idx + 1]);
            idx += 2;
            let (c, s) = (theta.cos(), theta.sin());
            let e = Complex64::from_polar(1.0, phi);
            // Rows i and j of U get mixed by the rotation.
            for col in 0..dim {
                let a = u[(i, col)];
                let b = u[(j, col)];
                u[(i, col)] = a * c - b * e * s;
                u[(j, col)] = a * e.conj() * s + b * c;
            }
        }
    }
    u
}

fn golden_max<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    iters: usize,
) -> (f64, f64, usize) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut used = 2;
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        used += 1;
    }
    if fc > fd {
        (c, fc, used)
    } else {
        (d, fd, used)
    }
}

// ---------------------------------------------------------------------
// The constrained minimisation h(y) and the envelope pipeline.
// ---------------------------------------------------------------------

/// Number of sweep points on the constraint circle for three
/// probabilities.
const SWEEP_K3: usize = 2048;
/// Number of quasi-random sweep points on the constraint sphere for four
/// probabilities.
const SWEEP_K4: usize = 10_000;
/// Compass-search refinement iterations after the sweep.
const POLISH_ITERS: usize = 80;

/// Infimum of a spectrum entropy over the probability vectors of `d_star`
/// entries with unit sum and square-root sum equal to sqrt(y).
///
/// The feasible set is swept without assuming any maximizer symmetry:
/// vectors with k < d_star nonzero entries are the k-entry constraint
/// sets, handled as separate branches; within each branch the square
/// roots live on a sphere-hyperplane intersection parametrized by k - 1
/// angles, swept on a grid and polished by compass search.
pub fn h_of_y<F>(d_star: usize, y: f64, s_fn: F) -> Result<f64>
where
    F: Fn(&Spectrum) -> Result<f64>,
{
    if !(2..=4).contains(&d_star) {
        return Err(Error::UnsupportedDStar(d_star));
    }
    let d = d_star as f64;
    if !(1.0 - 1e-9..=d + 1e-9).contains(&y) {
        return Err(Error::OutOfRange(format!(
            "y = {y} outside [1, {d_star}]"
        )));
    }
    let y = y.clamp(1.0, d);

    let eval = |probs: &mut Vec<f64>| -> Result<f64> {
        probs.resize(d_star, 0.0);
        let spec = Spectrum::from_raw(probs.clone())?;
        s_fn(&spec)
    };

    let mut best = f64::INFINITY;
    // Two-entry branch: the constraint pins the probabilities down.
    if y <= 2.0 + 1e-12 {
        let r = (2.0 - y).max(0.0).sqrt();
        let t_plus = (y.sqrt() + r) / 2.0;
        let t_minus = (y.sqrt() - r) / 2.0;
        let mut p = vec![t_plus * t_plus, t_minus * t_minus];
        best = best.min(eval(&mut p)?);
    }
    if d_star >= 3 && y <= 3.0 + 1e-12 {
        best = best.min(branch_k3(y.min(3.0), &eval)?);
    }
    if d_star >= 4 {
        best = best.min(branch_k4(y, &eval)?);
    }
    Ok(best)
}

/// Sweep + polish over the circle of three-entry square-root vectors.
fn branch_k3<E>(y: f64, eval: &E) -> Result<f64>
where
    E: Fn(&mut Vec<f64>) -> Result<f64>,
{
    let center = y.sqrt() / 3.0;
    let radius = (1.0 - y / 3.0).max(0.0).sqrt();
    // Orthonormal basis of the plane u1 + u2 + u3 = const.
    let w1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let w2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    let point = |phi: f64| -> Option<Vec<f64>> {
        let (s, c) = phi.sin_cos();
        let mut p = Vec::with_capacity(3);
        for i in 0..3 {
            let u = center + radius * (c * w1[i] + s * w2[i]);
            if u < -1e-12 {
                return None;
            }
            p.push(u.max(0.0) * u.max(0.0));
        }
        Some(p)
    };
    let objective = |phi: f64| -> Result<f64> {
        match point(phi) {
            Some(mut p) => eval(&mut p),
            None => Ok(f64::INFINITY),
        }
    };

    let mut best = f64::INFINITY;
    let mut best_phi = 0.0;
    let step = 2.0 * std::f64::consts::PI / SWEEP_K3 as f64;
    for k in 0..SWEEP_K3 {
        let phi = k as f64 * step;
        let v = objective(phi)?;
        if v < best {
            best = v;
            best_phi = phi;
        }
    }
    // Compass polish in one dimension.
    let mut h = step;
    let mut phi = best_phi;
    for _ in 0..POLISH_ITERS {
        let mut moved = false;
        for cand in [phi - h, phi + h] {
            let v = objective(cand)?;
            if v < best {
                best = v;
                phi = cand;
                moved = true;
            }
        }
        if !moved {
            h *= 0.5;
            if h < 1e-10 {
                break;
            }
        }
    }
    Ok(best)
}

/// Sweep + polish over the 2-sphere of four-entry square-root vectors,
/// seeded with a Fibonacci lattice.
fn branch_k4<E>(y: f64, eval: &E) -> Result<f64>
where
    E: Fn(&mut Vec<f64>) -> Result<f64>,
{
    let center = y.sqrt() / 4.0;
    let radius = (1.0 - y / 4.0).max(0.0).sqrt();
    let w1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0, 0.0];
    let w2 = [0.0, 0.0, 1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt()];
    let w3 = [0.5, 0.5, -0.5, -0.5];
    let point = |theta: f64, phi: f64| -> Option<Vec<f64>> {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let dir = [st * cp, st * sp, ct];
        let mut p = Vec::with_capacity(4);
        for i in 0..4 {
            let u = center + radius * (dir[0] * w1[i] + dir[1] * w2[i] + dir[2] * w3[i]);
            if u < -1e-12 {
                return None;
            }
            p.push(u.max(0.0) * u.max(0.0));
        }
        Some(p)
    };
    let objective = |theta: f64, phi: f64| -> Result<f64> {
        match point(theta, phi) {
            Some(mut p) => eval(&mut p),
            None => Ok(f64::INFINITY),
        }
    };

    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut best = f64::INFINITY;
    let mut at = (0.0, 0.0);
    for k in 0..SWEEP_K4 {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / SWEEP_K4 as f64;
        let theta = z.acos();
        let phi = golden_angle * k as f64;
        let v = objective(theta, phi)?;
        if v < best {
            best = v;
            at = (theta, phi);
        }
    }
    let mut h = 2.0 / (SWEEP_K4 as f64).sqrt();
    let (mut theta, mut phi) = at;
    for _ in 0..POLISH_ITERS {
        let mut moved = false;
        for (dt, dp) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let v = objective(theta + dt, phi + dp)?;
            if v < best {
                best = v;
                theta += dt;
                phi += dp;
                moved = true;
            }
        }
        if !moved {
            h *= 0.5;
            if h < 1e-10 {
                break;
            }
        }
    }
    Ok(best)
}

/// A sampled one-dimensional function together with its lower convex
/// envelope on the same grid.
#[derive(Debug, Clone)]
pub struct EnvelopeFunction {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub hull_ys: Vec<f64>,
    /// Grid indices of the hull vertices.
    pub hull_vertices: Vec<usize>,
}

impl EnvelopeFunction {
    /// Linear interpolation of the envelope; arguments are clamped to
    /// the grid within a small slack.
    pub fn eval_hull(&self, x: f64) -> Result<f64> {
        interp(&self.xs, &self.hull_ys, x)
    }

    /// Linear interpolation of the raw samples.
    pub fn eval_raw(&self, x: f64) -> Result<f64> {
        interp(&self.xs, &self.ys, x)
    }

    /// Where the envelope leaves the sampled function: the start of the
    /// final linear hull segment, with its slope. `None` when the
    /// function is already convex up to the grid resolution, i.e. the
    /// final segment spans only a sliver of the domain.
    pub fn departure_point(&self) -> Option<(f64, f64)> {
        let last = *self.hull_vertices.last()?;
        let prev = *self.hull_vertices.get(self.hull_vertices.len().checked_sub(2)?)?;
        let span = self.xs[last] - self.xs[prev];
        let domain = self.xs[self.xs.len() - 1] - self.xs[0];
        if span < 0.02 * domain {
            return None;
        }
        let slope = (self.hull_ys[last] - self.hull_ys[prev]) / span;
        Some((self.xs[prev], slope))
    }
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> Result<f64> {
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    if x < lo - 1e-9 || x > hi + 1e-9 {
        return Err(Error::OutOfRange(format!("{x} outside [{lo}, {hi}]")));
    }
    let x = x.clamp(lo, hi);
    let idx = match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => return Ok(ys[i]),
        Err(i) => i,
    };
    let (i0, i1) = (idx - 1, idx);
    let t = (x - xs[i0]) / (xs[i1] - xs[i0]);
    Ok(ys[i0] + t * (ys[i1] - ys[i0]))
}

/// Greatest convex function below the samples, via the monotone-chain
/// lower hull of the point set evaluated back on the grid.
pub fn lower_convex_envelope(xs: &[f64], ys: &[f64]) -> Result<EnvelopeFunction> {
    if xs.len() < 3 || xs.len() != ys.len() {
        return Err(Error::BadGrid);
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadGrid);
    }
    // Lower hull: keep slopes strictly increasing.
    let mut hull: Vec<usize> = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Pop b when it lies on or above the chord a -> i.
            let lhs = (ys[b] - ys[a]) * (xs[i] - xs[b]);
            let rhs = (ys[i] - ys[b]) * (xs[b] - xs[a]);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut hull_ys = vec![0.0; xs.len()];
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        for i in a..=b {
            let t = if b == a {
                0.0
            } else {
                (xs[i] - xs[a]) / (xs[b] - xs[a])
            };
            hull_ys[i] = ys[a] + t * (ys[b] - ys[a]);
        }
    }
    if hull.len() == 1 {
        hull_ys[hull[0]] = ys[hull[0]];
    }
    // The hull may sit a hair above a sample through float interpolation.
    for i in 0..xs.len() {
        if hull_ys[i] > ys[i] {
            hull_ys[i] = ys[i];
        }
    }
    Ok(EnvelopeFunction {
        xs: xs.to_vec(),
        ys: ys.to_vec(),
        hull_ys,
    })
}

/// The h / co(h) / g pipeline for the negativity-induced entropy of a
/// two-qubit subsystem, built once over a y-grid and evaluated many
/// times.
#[derive(Debug, Clone)]
pub struct BoundPipeline {
    pub d_star: usize,
    pub envelope: EnvelopeFunction,
}

/// Default number of grid points on [1, d*].
pub const DEFAULT_ENVELOPE_GRID: usize = 2001;

impl BoundPipeline {
    /// Builds the pipeline with the negativity-induced entropy.
    pub fn build(d_star: usize, grid_points: usize) -> Result<Self> {
        let measure = MeasureDescriptor::NegativityTwoQubitSpectrum;
        Self::build_with(d_star, grid_points, |spec| {
            entropy_from_measure(&measure, spec)
        })
    }

    /// Builds the pipeline for an arbitrary spectrum entropy.
    pub fn build_with<F>(d_star: usize, grid_points: usize, s_fn: F) -> Result<Self>
    where
        F: Fn(&Spectrum) -> Result<f64> + Sync,
    {
        if !(2..=4).contains(&d_star) {
            return Err(Error::UnsupportedDStar(d_star));
        }
        if grid_points < 3 {
            return Err(Error::BadGrid);
        }
        let d = d_star as f64;
        let xs: Vec<f64> = (0..grid_points)
            .map(|i| 1.0 + (d - 1.0) * i as f64 / (grid_points - 1) as f64)
            .collect();
        let ys: Vec<f64> = xs
            .iter()
            .map(|&y| h_of_y(d_star, y, &s_fn))
            .collect::<Result<_>>()?;
        let envelope = lower_convex_envelope(&xs, &ys)?;
        Ok(Self { d_star, envelope })
    }

    /// h(y), interpolated from the raw samples.
    pub fn h(&self, y: f64) -> Result<f64> {
        self.envelope.eval_raw(y)
    }

    /// g(x) = co(h)(2x + 1).
    pub fn g(&self, x: f64) -> Result<f64> {
        check_g_domain(self.d_star, x)?;
        self.envelope.eval_hull(2.0 * x + 1.0)
    }
}

fn check_g_domain(d_star: usize, x: f64) -> Result<f64> {
    let hi = (d_star as f64 - 1.0) / 2.0;
    if !(-1e-9..=hi + 1e-9).contains(&x) {
        return Err(Error::OutOfRange(format!("x = {x} outside [0, {hi}]")));
    }
    Ok(x.clamp(0.0, hi))
}

/// One-shot pipeline evaluation of g at a single point, with the default
/// grid. Prefer [`BoundPipeline`] when evaluating more than one point.
pub fn g_numeric(d_star: usize, x: f64) -> Result<f64> {
    BoundPipeline::build(d_star, DEFAULT_ENVELOPE_GRID)?.g(x)
}

/// Closed-form g for d* = 2, 3, 4.
pub fn g_analytic(d_star: usize, x: f64) -> Result<f64> {
    let x = check_g_domain(d_star, x)?;
    match d_star {
        2 => Ok((1.5 - (1.0 - 2.0 * x * x).max(0.0).sqrt() - (0.25 - x * x).max(0.0).sqrt()) / 2.0),
        3 => {
            let k = ((2.0 * x + 1.0).sqrt() - (1.0 - x).max(0.0).sqrt()).powi(2);
            // k * (sqrt(1 + (9/k - 3)^2) - 1) stays finite as k -> 0 when
            // written as sqrt(k^2 + (9 - 3k)^2) - k.
            let t = (k * k + (9.0 - 3.0 * k).powi(2)).sqrt() - k;
            Ok(0.5 - t / 18.0)
        }
        4 => {
            if x <= 1.0 {
                Ok(1.0 - ((1.0 + 2.0 * x).sqrt() + (9.0 - 6.0 * x).sqrt()).powi(2) / 16.0)
            } else {
                Ok(x / 2.0 - 0.25)
            }
        }
        other => Err(Error::UnsupportedDStar(other)),
    }
}
