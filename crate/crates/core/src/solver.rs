//! The solution operator: Poisson extension of the boundary trace, the two
//! kernel integrals against the Neumann data and the source, and the
//! normalization term.
//!
//! For a point z in the open disk,
//!
//! ```text
//! w(z) = -c (1 - |z|^2) + P[gamma0](z) + G1[gamma](z) - G2[g](z)
//! ```
//!
//! where `P` is the harmonic (Poisson) extension, `G1` integrates the kernel
//! against the boundary data over the circle with a 1/2 prefactor relative to
//! the circle mean, and `G2` integrates the kernel against the source with
//! the area measure normalized by pi.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{h2, h2_dz};
use crate::problems::ProblemData;
use crate::quadrature::{integrate_circle, integrate_disk, QuadConfig};

/// First-order data of the solution at one point.
#[derive(Debug, Clone, Copy)]
pub struct JacobianSummary {
    pub wz: Complex64,
    pub wzbar: Complex64,
    /// |w_z| + |w_zbar|.
    pub norm: f64,
    /// |w_z| - |w_zbar|; positive means locally sense-preserving.
    pub lambda: f64,
    /// |w_z|^2 - |w_zbar|^2.
    pub det: f64,
}

impl JacobianSummary {
    pub fn from_derivatives(wz: Complex64, wzbar: Complex64) -> Self {
        let (a, b) = (wz.norm(), wzbar.norm());
        JacobianSummary {
            wz,
            wzbar,
            norm: a + b,
            lambda: a - b,
            det: a * a - b * b,
        }
    }
}

/// Full evaluation of the solution at one point, with accuracy metadata.
#[derive(Debug, Clone, Copy)]
pub struct PointEval {
    pub z: Complex64,
    pub w: Complex64,
    pub wz: Complex64,
    pub wzbar: Complex64,
    /// Set when any adaptive area integral hit its depth cap while still
    /// above tolerance.
    pub accuracy_warning: bool,
    /// Total adaptive panels used across the area integrals (0 when the
    /// source vanishes).
    pub panels: usize,
}

/// Evaluates the solution operator for one problem under one quadrature
/// configuration.
pub struct Solver {
    problem: ProblemData,
    config: QuadConfig,
}

impl Solver {
    pub fn new(problem: ProblemData, config: QuadConfig) -> Result<Self> {
        config.validate()?;
        Ok(Solver { problem, config })
    }

    pub fn problem(&self) -> &ProblemData {
        &self.problem
    }

    pub fn config(&self) -> &QuadConfig {
        &self.config
    }

    fn check_inside(&self, z: Complex64) -> Result<()> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite("evaluation point"));
        }
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk(z.norm()));
        }
        Ok(())
    }

    /// Harmonic extension of the boundary trace, via its frequency view:
    /// frequency k extends to z^k for k >= 0 and conj(z)^{-k} for k < 0.
    pub fn poisson_part(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        let zb = z.conj();
        Ok(self
            .problem
            .gamma0
            .fourier_view()
            .iter()
            .map(|&(k, c)| {
                if k >= 0 {
                    c * z.powu(k as u32)
                } else {
                    c * zb.powu((-k) as u32)
                }
            })
            .sum())
    }

    pub fn poisson_part_dz(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        Ok(self
            .problem
            .gamma0
            .fourier_view()
            .iter()
            .filter(|&&(k, _)| k >= 1)
            .map(|&(k, c)| c * k as f64 * z.powu(k as u32 - 1))
            .sum())
    }

    pub fn poisson_part_dzbar(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        let zb = z.conj();
        Ok(self
            .problem
            .gamma0
            .fourier_view()
            .iter()
            .filter(|&&(k, _)| k <= -1)
            .map(|&(k, c)| c * (-k) as f64 * zb.powu((-k) as u32 - 1))
            .sum())
    }

    /// Circle integral of `kernel(z, e^{it}) * gamma(t)` as half the circle
    /// mean; sampled traces are consumed at their own nodes when at least as
    /// fine as the configured rule.
    fn circle_against_gamma<K>(&self, kernel: K) -> Result<Complex64>
    where
        K: Fn(Complex64) -> Result<Complex64>,
    {
        let trace = &self.problem.gamma;
        let kernel_on_circle = |t: f64, gv: Complex64| -> Result<Complex64> {
            Ok(kernel(Complex64::from_polar(1.0, t))? * gv)
        };
        let value = match trace.node_samples() {
            Some(s) if s.len() >= self.config.n_theta => {
                let n = s.len();
                let mut sum = Complex64::new(0.0, 0.0);
                for (k, &gv) in s.iter().enumerate() {
                    let t = std::f64::consts::TAU * k as f64 / n as f64;
                    let v = kernel_on_circle(t, gv)?;
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(Error::NonFiniteSample {
                            node: Complex64::from_polar(1.0, t),
                        });
                    }
                    sum += v;
                }
                sum / n as f64
            }
            _ => integrate_circle(
                |t| {
                    kernel_on_circle(t, trace.eval(t))
                        .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
                },
                self.config.n_theta,
            )?,
        };
        Ok(value * 0.5)
    }

    pub fn g1_part(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        if self.problem.gamma.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.circle_against_gamma(|zeta| h2(z, zeta).map(|v| Complex64::new(v, 0.0)))
    }

    pub fn g1_part_dz(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        if self.problem.gamma.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.circle_against_gamma(|zeta| h2_dz(z, zeta))
    }

    pub fn g1_part_dzbar(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        if self.problem.gamma.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        // The kernel is real, so its dzbar is the conjugate of its dz.
        self.circle_against_gamma(|zeta| h2_dz(z, zeta).map(|v| v.conj()))
    }

    /// Area integral of `kernel(z, .) * g` against the pi-normalized area
    /// measure, adaptive around the kernel's singular point.
    fn disk_against_source<K>(&self, z: Complex64, kernel: K) -> Result<(Complex64, bool, usize)>
    where
        K: Fn(Complex64) -> Result<Complex64>,
    {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let integral = integrate_disk(
            |zeta| {
                // The kernel derivative has a removable zero * log factor on
                // the diagonal; nudge the node rather than special-case it.
                let zeta = if zeta == z {
                    zeta + Complex64::new(1e-14, 0.0)
                } else {
                    zeta
                };
                match kernel(zeta) {
                    Ok(k) => k * self.problem.g.eval(zeta),
                    Err(_) => nan,
                }
            },
            &self.config,
            Some(z),
        )?;
        Ok((
            integral.value / std::f64::consts::PI,
            integral.accuracy_warning,
            integral.panels,
        ))
    }

    pub fn g2_part(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        if self.problem.g.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.disk_against_source(z, |zeta| h2(z, zeta).map(|v| Complex64::new(v, 0.0)))
            .map(|(v, _, _)| v)
    }

    pub fn g2_part_dz(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        if self.problem.g.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.disk_against_source(z, |zeta| h2_dz(z, zeta))
            .map(|(v, _, _)| v)
    }

    pub fn g2_part_dzbar(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        if self.problem.g.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.disk_against_source(z, |zeta| h2_dz(z, zeta).map(|v| v.conj()))
            .map(|(v, _, _)| v)
    }

    pub fn w(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        let c = self.problem.c;
        Ok(-c * (1.0 - z.norm_sqr()) + self.poisson_part(z)? + self.g1_part(z)?
            - self.g2_part(z)?)
    }

    pub fn w_dz(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        Ok(self.problem.c * z.conj() + self.poisson_part_dz(z)? + self.g1_part_dz(z)?
            - self.g2_part_dz(z)?)
    }

    pub fn w_dzbar(&self, z: Complex64) -> Result<Complex64> {
        self.check_inside(z)?;
        Ok(self.problem.c * z + self.poisson_part_dzbar(z)? + self.g1_part_dzbar(z)?
            - self.g2_part_dzbar(z)?)
    }

    pub fn jacobian(&self, z: Complex64) -> Result<JacobianSummary> {
        Ok(JacobianSummary::from_derivatives(
            self.w_dz(z)?,
            self.w_dzbar(z)?,
        ))
    }

    /// Evaluates w and both Wirtinger derivatives at one point.
    pub fn eval_point(&self, z: Complex64) -> Result<PointEval> {
        self.check_inside(z)?;
        let c = self.problem.c;
        let one_minus = 1.0 - z.norm_sqr();

        let mut warning = false;
        let mut panels = 0;
        let mut g2 = Complex64::new(0.0, 0.0);
        let mut g2_dz = Complex64::new(0.0, 0.0);
        let mut g2_dzbar = Complex64::new(0.0, 0.0);
        if !self.problem.g.is_zero() {
            let (v, w1, p1) =
                self.disk_against_source(z, |zeta| h2(z, zeta).map(|x| Complex64::new(x, 0.0)))?;
            let (vdz, w2, p2) = self.disk_against_source(z, |zeta| h2_dz(z, zeta))?;
            let (vdzb, w3, p3) =
                self.disk_against_source(z, |zeta| h2_dz(z, zeta).map(|x| x.conj()))?;
            g2 = v;
            g2_dz = vdz;
            g2_dzbar = vdzb;
            warning = w1 || w2 || w3;
            panels = p1 + p2 + p3;
        }

        let w = -c * one_minus + self.poisson_part(z)? + self.g1_part(z)? - g2;
        let wz = c * z.conj() + self.poisson_part_dz(z)? + self.g1_part_dz(z)? - g2_dz;
        let wzbar = c * z + self.poisson_part_dzbar(z)? + self.g1_part_dzbar(z)? - g2_dzbar;
        Ok(PointEval {
            z,
            w,
            wz,
            wzbar,
            accuracy_warning: warning,
            panels,
        })
    }

    /// Evaluates on the uniform n x n Cartesian grid over [-rmax, rmax]^2,
    /// keeping points with |z| <= rmax. Points are processed in parallel but
    /// returned in row-major order, so results are deterministic.
    pub fn eval_grid(&self, n: usize, rmax: f64) -> Result<Vec<PointEval>> {
        if n < 1 {
            return Err(Error::Config("grid size must be >= 1".into()));
        }
        if !(rmax > 0.0 && rmax < 1.0) {
            return Err(Error::Config(format!(
                "rmax must lie in (0, 1), got {rmax}"
            )));
        }
        let coord = |i: usize| {
            if n == 1 {
                0.0
            } else {
                -rmax + 2.0 * rmax * i as f64 / (n as f64 - 1.0)
            }
        };
        let mut points = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let z = Complex64::new(coord(i), coord(j));
                if z.norm() <= rmax + 1e-12 {
                    points.push(z);
                }
            }
        }
        points
            .into_par_iter()
            .map(|z| self.eval_point(z))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{BihPolynomial, BoundaryTrace};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn solver_for(poly: &BihPolynomial) -> Solver {
        Solver::new(ProblemData::from_polynomial(poly), QuadConfig::default()).unwrap()
    }

    #[test]
    fn poisson_part_reproduces_fourier_modes() {
        // Trace e^{2it} + 0.5 e^{-it} extends to z^2 + 0.5 conj(z).
        let mut prob = ProblemData::zero();
        prob.gamma0 = BoundaryTrace::fourier(vec![(2, c(1.0, 0.0)), (-1, c(0.5, 0.0))]);
        let s = Solver::new(prob, QuadConfig::default()).unwrap();
        let z = c(0.3, 0.4);
        let expect = z * z + 0.5 * z.conj();
        assert!((s.poisson_part(z).unwrap() - expect).norm() <= 1e-15);
        assert!((s.poisson_part_dz(z).unwrap() - 2.0 * z).norm() <= 1e-15);
        assert!((s.poisson_part_dzbar(z).unwrap() - c(0.5, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn constant_source_center_value() {
        // For g = 1, the area term at 0 is (1/pi) * (-3 pi / 4) = -3/4.
        let mut prob = ProblemData::zero();
        prob.g = crate::problems::SourceData::Poly(
            BihPolynomial::from_tuples(&[(0, 0, 1.0, 0.0)]).unwrap(),
        );
        let s = Solver::new(prob, QuadConfig::default()).unwrap();
        let v = s.g2_part(c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, -0.75, epsilon = 1e-8);
        assert!(v.im.abs() <= 1e-10);
    }

    #[test]
    fn harmonic_solution_is_reproduced_exactly() {
        // w = z^3 + conj(z)^2 has zero source, zero Neumann data and c = 0;
        // the solver reduces to the exact Poisson path.
        let w = BihPolynomial::from_tuples(&[(3, 0, 1.0, 0.0), (0, 2, 1.0, 0.0)]).unwrap();
        let s = solver_for(&w);
        for &z in &[c(0.0, 0.0), c(0.5, -0.3), c(-0.7, 0.1)] {
            let p = s.eval_point(z).unwrap();
            assert!((p.w - w.eval(z)).norm() <= 1e-12);
            assert!((p.wz - w.dz(z)).norm() <= 1e-12);
            assert!((p.wzbar - w.dzbar(z)).norm() <= 1e-12);
            assert_eq!(p.panels, 0);
        }
    }

    #[test]
    fn manufactured_biharmonic_solution() {
        let w = BihPolynomial::from_tuples(&[(2, 2, 1.0, 0.0)]).unwrap();
        let s = solver_for(&w);
        for &z in &[c(0.0, 0.0), c(0.3, 0.2), c(-0.5, 0.4), c(0.8, 0.0)] {
            let p = s.eval_point(z).unwrap();
            assert!(
                (p.w - w.eval(z)).norm() <= 1e-7,
                "w error {} at {z}",
                (p.w - w.eval(z)).norm()
            );
            assert!(
                (p.wz - w.dz(z)).norm() <= 1e-6,
                "wz error {} at {z}",
                (p.wz - w.dz(z)).norm()
            );
            assert!(
                (p.wzbar - w.dzbar(z)).norm() <= 1e-6,
                "wzbar error {} at {z}",
                (p.wzbar - w.dzbar(z)).norm()
            );
            assert!(!p.accuracy_warning);
        }
    }

    #[test]
    fn mixed_manufactured_solution() {
        let w = BihPolynomial::from_tuples(&[(3, 1, 1.0, 0.0), (1, 0, 1.0, 0.0)]).unwrap();
        let s = solver_for(&w);
        let z = c(0.4, -0.25);
        let p = s.eval_point(z).unwrap();
        assert!((p.w - w.eval(z)).norm() <= 1e-7);
        assert!((p.wz - w.dz(z)).norm() <= 1e-6);
        assert!((p.wzbar - w.dzbar(z)).norm() <= 1e-6);
    }

    #[test]
    fn jacobian_identity() {
        let w = BihPolynomial::from_tuples(&[(1, 0, 1.0, 0.0), (2, 1, 0.1, 0.0)]).unwrap();
        let s = solver_for(&w);
        let j = s.jacobian(c(0.2, 0.1)).unwrap();
        assert_abs_diff_eq!(j.det, j.lambda * j.norm, epsilon = 1e-12);
        assert_abs_diff_eq!(
            j.det,
            j.wz.norm_sqr() - j.wzbar.norm_sqr(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn rejects_points_outside_disk() {
        let s = solver_for(&BihPolynomial::from_tuples(&[(1, 0, 1.0, 0.0)]).unwrap());
        assert!(matches!(
            s.w(c(1.0, 0.0)),
            Err(crate::error::Error::OutsideDisk(_))
        ));
        assert!(s.w(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn grid_is_deterministic_and_ordered() {
        let s = solver_for(&BihPolynomial::from_tuples(&[(1, 0, 1.0, 0.0)]).unwrap());
        let a = s.eval_grid(5, 0.5).unwrap();
        let b = s.eval_grid(5, 0.5).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.z, y.z);
            assert_eq!(x.w, y.w);
            assert_eq!(x.wz, y.wz);
        }
        // All kept points lie within rmax.
        assert!(a.iter().all(|p| p.z.norm() <= 0.5 + 1e-12));
        assert!(s.eval_grid(5, 1.2).is_err());
    }
}
