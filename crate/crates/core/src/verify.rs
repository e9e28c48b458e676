//! Verification harness: oracle comparisons against manufactured solutions,
//! finite-difference residuals, and numerical checks of every growth,
//! gradient, Lipschitz and univalence-radius bound the library computes.
//!
//! Every check produces a [`CheckRecord`] with the worst observed slack
//! (bound minus measured value; negative means violation) and the point at
//! which it occurred. A check passes when the worst slack stays above
//! `-ALLOWANCE`, where the allowance separates genuine violations from
//! quadrature noise.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, BoundParams};
use crate::error::{Error, Result};
use crate::problems::{BihPolynomial, BoundaryTrace, ProblemData, SourceData};
use crate::quadrature::QuadConfig;
use crate::solver::Solver;

/// Numerical allowance on inequality checks: one order above the worst
/// observed quadrature error on the oracle fixtures.
pub const ALLOWANCE: f64 = 1e-6;

const BOUNDARY_SUP_SAMPLES: usize = 4096;
const AREA_SUP_SAMPLES: usize = 256;

/// Outcome of a single check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub points_tested: usize,
    /// Bound minus measured, at the worst point; negative means violation.
    pub worst_slack: f64,
    pub worst_point: Complex64,
    pub passed: bool,
    pub metadata: BTreeMap<String, String>,
}

/// A full suite run; deterministic given seed and config.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    pub seed: u64,
    pub config: QuadConfig,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn to_text_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<38} {:>8} {:>14} {:>7}\n",
            "check", "points", "worst_slack", "status"
        ));
        for r in &self.records {
            out.push_str(&format!(
                "{:<38} {:>8} {:>14.6e} {:>7}\n",
                r.name,
                r.points_tested,
                r.worst_slack,
                if r.passed { "pass" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "\n{} checks, {} failed (seed {})\n",
            self.records.len(),
            self.records.iter().filter(|r| !r.passed).count(),
            self.seed
        ));
        out
    }
}

/// Tracks the minimum slack and where it occurred.
#[derive(Debug, Clone, Copy)]
struct SlackTracker {
    slack: f64,
    point: Complex64,
    points: usize,
}

impl SlackTracker {
    fn new() -> Self {
        SlackTracker {
            slack: f64::MAX,
            point: Complex64::new(0.0, 0.0),
            points: 0,
        }
    }

    fn observe(&mut self, slack: f64, z: Complex64) {
        self.points += 1;
        if slack < self.slack {
            self.slack = slack;
            self.point = z;
        }
    }

    fn into_record(self, name: &str, metadata: BTreeMap<String, String>) -> CheckRecord {
        let slack = if self.points == 0 { 0.0 } else { self.slack };
        CheckRecord {
            name: name.to_string(),
            points_tested: self.points,
            worst_slack: slack,
            worst_point: self.point,
            passed: slack >= -ALLOWANCE,
            metadata,
        }
    }
}

fn base_metadata(config: &QuadConfig) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert(
        "measure".into(),
        "area integrals use dx dy; the source integral is divided by pi".into(),
    );
    m.insert("n_theta".into(), config.n_theta.to_string());
    m.insert("n_r".into(), config.n_r.to_string());
    m.insert("adaptive_tol".into(), format!("{:e}", config.adaptive_tol));
    m
}

fn fmt(v: f64) -> String {
    format!("{v:.17e}")
}

/// Sup norms of one problem's data, estimated by dense sampling (boundary
/// traces at 4096 angles via the maximum principle; the source on a 256x256
/// polar grid). Sampling can only under-estimate a sup, which is the
/// conservative direction for sharpness checks.
pub fn bound_params_of(prob: &ProblemData) -> Result<BoundParams> {
    BoundParams::new(
        prob.gamma0.sup_norm(BOUNDARY_SUP_SAMPLES),
        prob.gamma.sup_norm(BOUNDARY_SUP_SAMPLES),
        prob.g.sup_norm(AREA_SUP_SAMPLES, AREA_SUP_SAMPLES),
        prob.c.norm(),
    )
}

/// Uniformly distributed points in the disk of radius `rmax`.
pub fn sample_points(rng: &mut ChaCha8Rng, n: usize, rmax: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r = rmax * rng.gen_range(0.0..1.0f64).sqrt();
            let t = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, t)
        })
        .collect()
}

/// Random polynomial with a bounded number of monomials of total degree at
/// most `max_degree` and coefficients in the unit box.
pub fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: u32) -> BihPolynomial {
    let mut terms = vec![];
    for p in 0..=max_degree {
        for q in 0..=(max_degree - p) {
            if rng.gen_bool(0.25) {
                terms.push((p, q, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
    }
    if terms.is_empty() {
        terms.push((1, 0, rng.gen_range(0.1..1.0), 0.0));
    }
    BihPolynomial::from_tuples(&terms).expect("generated terms are valid")
}

/// Random manufactured problem normalized so that `w(0) = 0` and
/// `J_w(0) = 1`: no constant term, dominant `z` coefficient, all
/// coefficients rescaled by the square root of the origin Jacobian.
pub fn random_normalized_problem(rng: &mut ChaCha8Rng, max_degree: u32) -> ProblemData {
    let mut terms = vec![];
    for p in 0..=max_degree {
        for q in 0..=(max_degree - p) {
            if p + q == 0 {
                continue;
            }
            if rng.gen_bool(0.25) {
                let scale = if (p, q) == (0, 1) { 0.3 } else { 1.0 };
                terms.push((
                    p,
                    q,
                    scale * rng.gen_range(-1.0..1.0),
                    scale * rng.gen_range(-1.0..1.0),
                ));
            }
        }
    }
    // Dominant z coefficient keeps the origin Jacobian strictly positive.
    terms.retain(|t| (t.0, t.1) != (1, 0));
    terms.push((1, 0, 1.0 + rng.gen_range(0.0..1.0), rng.gen_range(-0.3..0.3)));
    let poly = BihPolynomial::from_tuples(&terms).expect("generated terms are valid");
    let z0 = Complex64::new(0.0, 0.0);
    let j0 = poly.dz(z0).norm_sqr() - poly.dzbar(z0).norm_sqr();
    assert!(j0 > 0.0, "origin Jacobian must be positive");
    let s = 1.0 / j0.sqrt();
    let scaled: Vec<_> = poly
        .terms()
        .iter()
        .map(|t| (t.p, t.q, s * t.coeff.re, s * t.coeff.im))
        .collect();
    let w = BihPolynomial::from_tuples(&scaled).expect("scaled terms are valid");
    ProblemData::from_polynomial(&w)
}

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

/// Compares the solution operator against a manufactured polynomial on a
/// polar grid (radii up to `rmax <= 0.9`); passes when the sup error stays
/// below 1e-4.
pub fn check_oracle(
    w: &BihPolynomial,
    n_r: usize,
    n_theta: usize,
    rmax: f64,
    config: &QuadConfig,
) -> Result<CheckRecord> {
    const TOL: f64 = 1e-4;
    if rmax > 0.9 {
        return Err(Error::Precondition("oracle grid radii must be <= 0.9".into()));
    }
    let solver = Solver::new(ProblemData::from_polynomial(w), *config)?;
    let mut points = vec![];
    for i in 1..=n_r {
        let r = rmax * i as f64 / n_r as f64;
        for j in 0..n_theta {
            let t = std::f64::consts::TAU * j as f64 / n_theta as f64;
            points.push(Complex64::from_polar(r, t));
        }
    }
    let errors: Vec<(f64, Complex64)> = points
        .par_iter()
        .map(|&z| solver.w(z).map(|v| ((v - w.eval(z)).norm(), z)))
        .collect::<Result<_>>()?;
    let mut tracker = SlackTracker::new();
    for (err, z) in errors {
        tracker.observe(TOL - err, z);
    }
    let mut md = base_metadata(config);
    md.insert("sup_error".into(), fmt(TOL - tracker.slack));
    md.insert("tolerance".into(), fmt(TOL));
    Ok(tracker.into_record("oracle_solution_sup_error", md))
}

/// Applies the 13-point biharmonic stencil to the polynomial and compares
/// with 16 times its derived source at interior points (`|z| <= 0.8`).
/// The relative-error budget is `100 h^2`.
pub fn check_pde_residual(w: &BihPolynomial, h: f64) -> Result<CheckRecord> {
    if !(h > 0.0 && h <= 0.01) {
        return Err(Error::Precondition(format!(
            "stencil spacing must lie in (0, 0.01], got {h}"
        )));
    }
    let g = w.source();
    let budget = 100.0 * h * h;
    let n = 9;
    let mut points = vec![];
    for i in 0..n {
        for j in 0..n {
            let x = -0.8 + 1.6 * i as f64 / (n as f64 - 1.0);
            let y = -0.8 + 1.6 * j as f64 / (n as f64 - 1.0);
            let z = Complex64::new(x, y);
            if z.norm() <= 0.8 {
                points.push(z);
            }
        }
    }
    // Errors are measured relative to the size of the target over the whole
    // grid, floored at 1.
    let scale = points
        .iter()
        .map(|&z| 16.0 * g.eval(z).norm())
        .fold(1.0, f64::max);
    let mut tracker = SlackTracker::new();
    for &z in &points {
        let u = |dx: f64, dy: f64| w.eval(z + Complex64::new(dx * h, dy * h));
        let lap2 = (20.0 * u(0.0, 0.0)
            - 8.0 * (u(1.0, 0.0) + u(-1.0, 0.0) + u(0.0, 1.0) + u(0.0, -1.0))
            + 2.0 * (u(1.0, 1.0) + u(1.0, -1.0) + u(-1.0, 1.0) + u(-1.0, -1.0))
            + (u(2.0, 0.0) + u(-2.0, 0.0) + u(0.0, 2.0) + u(0.0, -2.0)))
            / h.powi(4);
        let target = 16.0 * g.eval(z);
        let rel = (lap2 - target).norm() / scale;
        tracker.observe(budget - rel, z);
    }
    let mut md = BTreeMap::new();
    md.insert("h".into(), fmt(h));
    md.insert("relative_budget".into(), fmt(budget));
    Ok(tracker.into_record("pde_residual_stencil", md))
}

fn min_slack_over_points<F>(samples: &[Complex64], f: F) -> Result<SlackTracker>
where
    F: Fn(Complex64) -> Result<f64> + Sync,
{
    let slacks: Vec<(f64, Complex64)> = samples
        .par_iter()
        .map(|&z| f(z).map(|s| (s, z)))
        .collect::<Result<_>>()?;
    let mut tracker = SlackTracker::new();
    for (s, z) in slacks {
        tracker.observe(s, z);
    }
    Ok(tracker)
}

/// Growth bound: `|w(z) - (1-|z|^2)/(1+|z|^2) P[gamma0](0)|` against the
/// pointwise growth bound with dense-sampled sup norms.
pub fn check_thm1(
    prob: &ProblemData,
    samples: &[Complex64],
    config: &QuadConfig,
) -> Result<CheckRecord> {
    let p = bound_params_of(prob)?;
    let solver = Solver::new(prob.clone(), *config)?;
    let p0 = solver.poisson_part(Complex64::new(0.0, 0.0))?;
    let tracker = min_slack_over_points(samples, |z| {
        let t = z.norm();
        let lhs = (solver.w(z)? - (1.0 - t * t) / (1.0 + t * t) * p0).norm();
        Ok(bounds::schwarz_bound(&p, t)? - lhs)
    })?;
    let mut md = base_metadata(config);
    md.insert("l1".into(), fmt(p.l1));
    md.insert("l2".into(), fmt(p.l2));
    md.insert("l3".into(), fmt(p.l3));
    md.insert("c_abs".into(), fmt(p.c_abs));
    md.insert(
        "sup_sampling".into(),
        format!("{BOUNDARY_SUP_SAMPLES} boundary; {AREA_SUP_SAMPLES}x{AREA_SUP_SAMPLES} polar"),
    );
    Ok(tracker.into_record("growth_bound", md))
}

/// Gradient bound: `|w_z| + |w_zbar|` against the Schwarz-Pick type bound.
pub fn check_thm2(
    prob: &ProblemData,
    samples: &[Complex64],
    config: &QuadConfig,
) -> Result<CheckRecord> {
    let p = bound_params_of(prob)?;
    let solver = Solver::new(prob.clone(), *config)?;
    let tracker = min_slack_over_points(samples, |z| {
        let j = solver.jacobian(z)?;
        Ok(bounds::pick_bound(&p, z.norm())? - j.norm)
    })?;
    let md = base_metadata(config);
    Ok(tracker.into_record("gradient_bound", md))
}

/// Operator bounds: `|G1[gamma](z)| <= l2 N1(|z|)` and
/// `|G2[g](z)| <= l3 N2(|z|)`.
pub fn check_g_operator_bounds(
    prob: &ProblemData,
    samples: &[Complex64],
    config: &QuadConfig,
) -> Result<CheckRecord> {
    let p = bound_params_of(prob)?;
    let solver = Solver::new(prob.clone(), *config)?;
    // Identically-zero data satisfies its inequality as 0 <= 0; skip it so
    // the recorded slack reflects the nontrivial side.
    let has_gamma = !prob.gamma.is_zero();
    let has_g = !prob.g.is_zero();
    let tracker = min_slack_over_points(samples, |z| {
        let t = z.norm();
        let mut slack = f64::MAX;
        if has_gamma {
            slack = slack.min(p.l2 * bounds::n1(t)? - solver.g1_part(z)?.norm());
        }
        if has_g {
            slack = slack.min(p.l3 * bounds::n2(t)? - solver.g2_part(z)?.norm());
        }
        if !has_gamma && !has_g {
            slack = 0.0;
        }
        Ok(slack)
    })?;
    let md = base_metadata(config);
    Ok(tracker.into_record("operator_bounds", md))
}

/// Lipschitz bounds at the origin for the derivatives of both kernel
/// integrals; the area-kernel bound carries an extra logarithmic term.
pub fn check_lemma_derivative_bounds(
    prob: &ProblemData,
    samples: &[Complex64],
    config: &QuadConfig,
) -> Result<CheckRecord> {
    if samples.iter().any(|z| z.norm() > 0.9) {
        return Err(Error::Precondition(
            "derivative-difference samples must satisfy |z| <= 0.9".into(),
        ));
    }
    let p = bound_params_of(prob)?;
    let solver = Solver::new(prob.clone(), *config)?;
    let z0 = Complex64::new(0.0, 0.0);
    let g1_dz0 = solver.g1_part_dz(z0)?;
    let g1_dzb0 = solver.g1_part_dzbar(z0)?;
    let g2_dz0 = solver.g2_part_dz(z0)?;
    let g2_dzb0 = solver.g2_part_dzbar(z0)?;
    let m1 = bounds::m1();
    let m2 = bounds::m2();
    let tracker = min_slack_over_points(samples, |z| {
        let t = z.norm();
        let b1 = p.l2 * m1 * t;
        let b2 = p.l3 * (m2 * t + 4.0 * ((1.0 + t) / (1.0 - t)).ln());
        let s = [
            b1 - (solver.g1_part_dz(z)? - g1_dz0).norm(),
            b1 - (solver.g1_part_dzbar(z)? - g1_dzb0).norm(),
            b2 - (solver.g2_part_dz(z)? - g2_dz0).norm(),
            b2 - (solver.g2_part_dzbar(z)? - g2_dzb0).norm(),
        ];
        Ok(s.into_iter().fold(f64::MAX, f64::min))
    })?;
    let mut md = base_metadata(config);
    md.insert(
        "dzbar_reference".into(),
        "differences taken against the value at the origin".into(),
    );
    md.insert("radial_range".into(), "|z| <= 0.9".into());
    Ok(tracker.into_record("derivative_difference_bounds", md))
}

fn trace_dz(trace: &BoundaryTrace, z: Complex64) -> Complex64 {
    trace
        .fourier_view()
        .iter()
        .filter(|&&(k, _)| k >= 1)
        .map(|&(k, c)| c * k as f64 * z.powu(k as u32 - 1))
        .sum()
}

fn trace_dzbar(trace: &BoundaryTrace, z: Complex64) -> Complex64 {
    let zb = z.conj();
    trace
        .fourier_view()
        .iter()
        .filter(|&&(k, _)| k <= -1)
        .map(|&(k, c)| c * (-k) as f64 * zb.powu((-k) as u32 - 1))
        .sum()
}

/// Harmonic coefficient bound `|a_n| + |b_n| <= 4M/pi` for `n >= 1` and
/// `|a_0| <= M`, plus the derivative-difference consequence
/// `|dP(z) - dP(0)| + |dbarP(z) - dbarP(0)| <= (4M/pi) |z|(2-|z|)/(1-|z|)^2`.
pub fn check_harmonic_coefficients(
    gamma0: &BoundaryTrace,
    m: f64,
    samples: &[Complex64],
) -> Result<CheckRecord> {
    if !(m > 0.0) {
        return Err(Error::Precondition("harmonic sup bound must be positive".into()));
    }
    let mut tracker = SlackTracker::new();
    let mut per_freq = BTreeMap::<u64, f64>::new();
    for &(k, c) in gamma0.fourier_view() {
        *per_freq.entry(k.unsigned_abs()).or_insert(0.0) += c.norm();
    }
    let coeff_bound = 4.0 * m / std::f64::consts::PI;
    let mut a1_plus_b1 = 0.0;
    for (&n, &total) in &per_freq {
        if n == 0 {
            tracker.observe(m - total, Complex64::new(0.0, 0.0));
        } else {
            if n == 1 {
                a1_plus_b1 = total;
            }
            tracker.observe(coeff_bound - total, Complex64::new(n as f64, 0.0));
        }
    }
    let z0 = Complex64::new(0.0, 0.0);
    let dz0 = trace_dz(gamma0, z0);
    let dzb0 = trace_dzbar(gamma0, z0);
    for &z in samples {
        let t = z.norm();
        if t >= 1.0 {
            return Err(Error::Precondition("samples must lie inside the disk".into()));
        }
        let lhs = (trace_dz(gamma0, z) - dz0).norm() + (trace_dzbar(gamma0, z) - dzb0).norm();
        let rhs = coeff_bound * t * (2.0 - t) / (1.0 - t).powi(2);
        tracker.observe(rhs - lhs, z);
    }
    let mut md = BTreeMap::new();
    md.insert("a1_plus_b1".into(), fmt(a1_plus_b1));
    md.insert("coefficient_bound".into(), fmt(coeff_bound));
    md.insert("sup_bound".into(), fmt(m));
    Ok(tracker.into_record("harmonic_coefficient_bounds", md))
}

fn check_normalization(solver: &Solver) -> Result<(f64, Complex64)> {
    let z0 = Complex64::new(0.0, 0.0);
    let w0 = solver.w(z0)?;
    if w0.norm() > 1e-10 {
        return Err(Error::Precondition(format!(
            "problem must be normalized to w(0) = 0, got |w(0)| = {:e}",
            w0.norm()
        )));
    }
    let j = solver.jacobian(z0)?;
    if (j.det - 1.0).abs() > 1e-8 {
        return Err(Error::Precondition(format!(
            "problem must be normalized to J_w(0) = 1, got {}",
            j.det
        )));
    }
    Ok((j.lambda.abs(), w0))
}

/// The origin-gradient consequence of normalization:
/// `lambda(D_w(0)) >= 1/L4` for problems with `J_w(0) = 1` whose data is
/// majorized by `p`.
pub fn check_lambda_origin(
    prob: &ProblemData,
    p: &BoundParams,
    config: &QuadConfig,
) -> Result<CheckRecord> {
    let solver = Solver::new(prob.clone(), *config)?;
    let (lambda0, _) = check_normalization(&solver)?;
    let l4 = bounds::l4(p)?;
    if l4 == 0.0 {
        return Err(Error::DegenerateParams);
    }
    let mut tracker = SlackTracker::new();
    tracker.observe(lambda0 - 1.0 / l4, Complex64::new(0.0, 0.0));
    let mut md = base_metadata(config);
    md.insert("lambda_origin".into(), fmt(lambda0));
    md.insert("l4".into(), fmt(l4));
    Ok(tracker.into_record("origin_gradient_lower_bound", md))
}

/// Univalence-radius check on a normalized problem:
/// (a) `lambda(D_w(0)) >= 1/L4`; (b) pairwise injectivity of `w` on a
/// 41x41 polar grid inside the univalence disk; (c) the minimum boundary
/// modulus on 720 samples of `|z| = r0`, recorded against the covered-disk
/// bound (not asserted).
pub fn check_landau(
    prob: &ProblemData,
    p: &BoundParams,
    config: &QuadConfig,
) -> Result<CheckRecord> {
    let solver = Solver::new(prob.clone(), *config)?;
    let (lambda0, _) = check_normalization(&solver)?;
    let landau = bounds::landau_radius(p)?;
    let r0 = landau.r0;

    // (a) origin gradient lower bound.
    let mut tracker = SlackTracker::new();
    tracker.observe(lambda0 - 1.0 / landau.l4, Complex64::new(0.0, 0.0));

    // (b) all-pairs injectivity on a polar grid in the univalence disk.
    let n = 41;
    let mut grid_points = vec![Complex64::new(0.0, 0.0)];
    for i in 1..n {
        let r = r0 * i as f64 / (n as f64 - 1.0);
        for j in 0..n {
            let t = std::f64::consts::TAU * j as f64 / n as f64;
            grid_points.push(Complex64::from_polar(r, t));
        }
    }
    let images: Vec<(Complex64, Complex64)> = grid_points
        .par_iter()
        .map(|&z| solver.w(z).map(|w| (z, w)))
        .collect::<Result<_>>()?;
    let mut collisions = 0usize;
    let mut min_separation = f64::MAX;
    let mut collision_point = Complex64::new(0.0, 0.0);
    for (i, &(_, wi)) in images.iter().enumerate() {
        for &(zj, wj) in images.iter().skip(i + 1) {
            let sep = (wi - wj).norm();
            if sep <= 0.0 {
                collisions += 1;
                collision_point = zj;
            }
            min_separation = min_separation.min(sep);
        }
    }
    tracker.points += images.len();

    // (c) minimum modulus on the univalence circle, recorded only.
    let boundary_min: f64 = (0..720usize)
        .into_par_iter()
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 720.0;
            solver.w(Complex64::from_polar(r0, t)).map(|w| w.norm())
        })
        .try_reduce(|| f64::MAX, |a, b| Ok(a.min(b)))?;

    let mut md = base_metadata(config);
    md.insert("r0".into(), fmt(r0));
    md.insert("r0_image_lower".into(), fmt(landau.r0_image_lower));
    md.insert("lambda_origin".into(), fmt(lambda0));
    md.insert("l4".into(), fmt(landau.l4));
    md.insert("l5".into(), fmt(landau.l5));
    md.insert("grid_collisions".into(), collisions.to_string());
    md.insert("min_pair_separation".into(), fmt(min_separation));
    md.insert("min_boundary_modulus".into(), fmt(boundary_min));
    md.insert(
        "covered_disk_note".into(),
        "min_boundary_modulus vs r0_image_lower is recorded, not asserted".into(),
    );
    let mut record = tracker.into_record("univalence_radius", md);
    if collisions > 0 {
        record.passed = false;
        record.worst_point = collision_point;
    }
    Ok(record)
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

pub fn fixture_z2zb2() -> BihPolynomial {
    BihPolynomial::from_tuples(&[(2, 2, 1.0, 0.0)]).unwrap()
}

pub fn fixture_identity() -> BihPolynomial {
    BihPolynomial::from_tuples(&[(1, 0, 1.0, 0.0)]).unwrap()
}

pub fn fixture_z3zb3() -> BihPolynomial {
    BihPolynomial::from_tuples(&[(3, 3, 1.0, 0.0)]).unwrap()
}

pub fn fixture_z3zb_plus_z() -> BihPolynomial {
    BihPolynomial::from_tuples(&[(3, 1, 1.0, 0.0), (1, 0, 1.0, 0.0)]).unwrap()
}

pub fn fixture_perturbed_identity() -> BihPolynomial {
    BihPolynomial::from_tuples(&[(1, 0, 1.0, 0.0), (2, 1, 0.1, 0.0)]).unwrap()
}

/// Problem with only the Neumann trace set to 1.
pub fn fixture_gamma_one() -> ProblemData {
    let mut prob = ProblemData::zero();
    prob.gamma = BoundaryTrace::constant(Complex64::new(1.0, 0.0));
    prob
}

/// Problem with only the source set to 1.
pub fn fixture_source_one() -> ProblemData {
    let mut prob = ProblemData::zero();
    prob.g = SourceData::Poly(
        BihPolynomial::from_tuples(&[(0, 0, 1.0, 0.0)]).unwrap(),
    );
    prob
}

/// Problem whose only data is the Dirichlet trace `e^{it}`; the solution is
/// the identity map.
pub fn fixture_harmonic_rotation() -> ProblemData {
    let mut prob = ProblemData::zero();
    prob.gamma0 = BoundaryTrace::fourier(vec![(1, Complex64::new(1.0, 0.0))]);
    prob
}

/// Boundary trace of the extremal harmonic map: the step function
/// `M sign(sin t)`, sampled at `n` uniform angles. Its first-frequency
/// coefficient mass is exactly `4M/pi`.
pub fn fixture_extremal_step_trace(m: f64, n: usize) -> BoundaryTrace {
    let samples: Vec<Complex64> = (0..n)
        .map(|k| {
            let s = (std::f64::consts::TAU * k as f64 / n as f64).sin();
            Complex64::new(if s == 0.0 { 0.0 } else { m * s.signum() }, 0.0)
        })
        .collect();
    BoundaryTrace::sampled(samples)
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Named groups of checks runnable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Pde,
    Thm1,
    Thm2,
    Claims,
    Lemmas,
    Coeff,
    Landau,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "oracle" => Suite::Oracle,
            "pde" => Suite::Pde,
            "thm1" => Suite::Thm1,
            "thm2" => Suite::Thm2,
            "claims" => Suite::Claims,
            "lemmas" => Suite::Lemmas,
            "coeff" => Suite::Coeff,
            "landau" => Suite::Landau,
            "all" => Suite::All,
            other => {
                return Err(Error::Config(format!(
                    "unknown suite '{other}' (expected one of oracle, pde, thm1, thm2, claims, lemmas, coeff, landau, all)"
                )))
            }
        })
    }
}

fn named(mut record: CheckRecord, prefix: &str) -> CheckRecord {
    record.name = format!("{prefix}/{}", record.name);
    record
}

/// Runs one suite deterministically for the given seed and configuration.
pub fn run_suite(suite: Suite, seed: u64, config: &QuadConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut records = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    if matches!(suite, Suite::Oracle | Suite::All) {
        for (label, poly) in [
            ("z2zb2", fixture_z2zb2()),
            ("identity", fixture_identity()),
            ("z3zb3", fixture_z3zb3()),
            ("z3zb_plus_z", fixture_z3zb_plus_z()),
            ("random", random_polynomial(&mut rng, 6)),
        ] {
            records.push(named(check_oracle(&poly, 8, 12, 0.9, config)?, label));
        }
    }

    if matches!(suite, Suite::Pde | Suite::All) {
        for (label, poly) in [
            ("z2zb2", fixture_z2zb2()),
            ("identity", fixture_identity()),
            ("z3zb3", fixture_z3zb3()),
        ] {
            records.push(named(check_pde_residual(&poly, 1e-2)?, label));
        }
    }

    if matches!(suite, Suite::Thm1 | Suite::All) {
        let samples = sample_points(&mut rng, 50, 0.9);
        for (label, prob) in [
            ("zero", ProblemData::zero()),
            ("harmonic_rotation", fixture_harmonic_rotation()),
            ("z2zb2", ProblemData::from_polynomial(&fixture_z2zb2())),
        ] {
            records.push(named(check_thm1(&prob, &samples, config)?, label));
        }
    }

    if matches!(suite, Suite::Thm2 | Suite::All) {
        let samples = sample_points(&mut rng, 50, 0.9);
        for (label, prob) in [
            ("zero", ProblemData::zero()),
            ("harmonic_rotation", fixture_harmonic_rotation()),
            (
                "z3zb_plus_z",
                ProblemData::from_polynomial(&fixture_z3zb_plus_z()),
            ),
        ] {
            records.push(named(check_thm2(&prob, &samples, config)?, label));
        }
    }

    if matches!(suite, Suite::Claims | Suite::All) {
        let samples = sample_points(&mut rng, 50, 0.9);
        for (label, prob) in [
            ("gamma_one", fixture_gamma_one()),
            ("source_one", fixture_source_one()),
            ("z2zb2", ProblemData::from_polynomial(&fixture_z2zb2())),
        ] {
            records.push(named(
                check_g_operator_bounds(&prob, &samples, config)?,
                label,
            ));
        }
    }

    if matches!(suite, Suite::Lemmas | Suite::All) {
        let samples = sample_points(&mut rng, 30, 0.9);
        for (label, prob) in [
            ("gamma_one", fixture_gamma_one()),
            ("source_one", fixture_source_one()),
            ("z2zb2", ProblemData::from_polynomial(&fixture_z2zb2())),
        ] {
            records.push(named(
                check_lemma_derivative_bounds(&prob, &samples, config)?,
                label,
            ));
        }
    }

    if matches!(suite, Suite::Coeff | Suite::All) {
        let samples = sample_points(&mut rng, 50, 0.9);
        let cos_trace = BoundaryTrace::fourier(vec![
            (1, Complex64::new(0.5, 0.0)),
            (-1, Complex64::new(0.5, 0.0)),
        ]);
        for (label, trace, m) in [
            ("extremal_step", fixture_extremal_step_trace(1.0, 4096), 1.0),
            (
                "rotation",
                BoundaryTrace::fourier(vec![(1, Complex64::new(1.0, 0.0))]),
                1.0,
            ),
            ("cosine", cos_trace, 1.0),
        ] {
            records.push(named(
                check_harmonic_coefficients(&trace, m, &samples)?,
                label,
            ));
        }
    }

    if matches!(suite, Suite::Landau | Suite::All) {
        let identity = ProblemData::from_polynomial(&fixture_identity());
        let p = BoundParams::new(1.0, 0.0, 0.0, 0.0)?;
        records.push(named(check_landau(&identity, &p, config)?, "identity"));

        let perturbed = ProblemData::from_polynomial(&fixture_perturbed_identity());
        let p = bound_params_of(&perturbed)?;
        records.push(named(check_landau(&perturbed, &p, config)?, "perturbed"));
    }

    Ok(VerificationReport {
        records,
        seed,
        config: *config,
    })
}
