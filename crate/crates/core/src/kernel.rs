//! Poisson and biharmonic Green-type kernels on the unit disk.
//!
//! The biharmonic kernel couples `z` and `zeta` through `log(1 - z*conj(zeta))`
//! divided by powers of `z`. Evaluated literally those quotients lose every
//! digit near `z = 0`, so all kernel code is written in terms of the three
//! stable log quotients [`stable_log_family`], which switch to their power
//! series below a configurable radius. After the rewrite no `1/z` factor
//! remains anywhere, and `z = 0` is an ordinary point.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Controls the series/closed-form switch for the log quotient functions.
#[derive(Debug, Clone, Copy)]
pub struct SeriesPolicy {
    /// Use the power series for |u| below this radius, the closed form above.
    pub switch_radius: f64,
    /// Hard cap on series terms.
    pub max_terms: usize,
    /// Stop summing once a term falls below this magnitude.
    pub term_tol: f64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        // At |u| = 0.5 the series converge geometrically with ratio 1/2:
        // fewer than 60 terms reach double precision. The closed forms are
        // catastrophically cancellative only well inside this radius.
        SeriesPolicy {
            switch_radius: 0.5,
            max_terms: 64,
            term_tol: 1e-17,
        }
    }
}

impl SeriesPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.switch_radius > 0.0 && self.switch_radius < 1.0) {
            return Err(Error::Config(format!(
                "switch_radius must lie in (0,1), got {}",
                self.switch_radius
            )));
        }
        if self.term_tol < f64::EPSILON * 1e-2 {
            return Err(Error::Config(format!(
                "term_tol {} is below attainable precision",
                self.term_tol
            )));
        }
        Ok(())
    }
}

/// The three log quotients whose closed forms degenerate at `u = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogQuotient {
    /// `A(u) = ((1-u)/u) log(1-u)`, with `A(0) = -1`.
    A,
    /// `B(u) = log(1-u)/u^2 + 1/u`, with `B(0) = -1/2`.
    B,
    /// `C(u) = ((1-u^2)/u^2) log(1-u) + 1/u - 1`, with `C(0) = -3/2`.
    C,
}

fn require_finite(v: Complex64, what: &'static str) -> Result<()> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Evaluates one of the stable log quotients `A`, `B`, `C` at `u`, `|u| < 1`.
///
/// Below `policy.switch_radius` the Taylor series are used:
/// `A(u) = -1 + sum u^n / (n(n+1))`,
/// `B(u) = -sum u^{n-1} / (n+1)`,
/// `C(u) = -3/2 + 2 sum u^n / (n(n+2))`.
pub fn stable_log_family(u: Complex64, which: LogQuotient, policy: &SeriesPolicy) -> Result<Complex64> {
    require_finite(u, "u")?;
    let r = u.norm();
    if r >= 1.0 {
        return Err(Error::Domain(format!("|u| = {r} must be < 1")));
    }
    if r < policy.switch_radius {
        return Ok(log_quotient_series(u, which, policy));
    }
    let lg = (Complex64::new(1.0, 0.0) - u).ln();
    Ok(match which {
        LogQuotient::A => (1.0 - u) / u * lg,
        LogQuotient::B => lg / (u * u) + 1.0 / u,
        LogQuotient::C => (1.0 - u * u) / (u * u) * lg + 1.0 / u - 1.0,
    })
}

fn log_quotient_series(u: Complex64, which: LogQuotient, policy: &SeriesPolicy) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    for n in 1..=policy.max_terms {
        let nf = n as f64;
        let (coeff, term_pow) = match which {
            // A: sum of u^n / (n(n+1)); first term uses u^1.
            LogQuotient::A => (1.0 / (nf * (nf + 1.0)), pow * u),
            // B: -sum of u^{n-1} / (n+1); first term uses u^0.
            LogQuotient::B => (-1.0 / (nf + 1.0), pow),
            // C: 2 sum of u^n / (n(n+2)); first term uses u^1.
            LogQuotient::C => (2.0 / (nf * (nf + 2.0)), pow * u),
        };
        let term = term_pow * coeff;
        sum += term;
        if term.norm() < policy.term_tol {
            break;
        }
        pow *= u;
    }
    match which {
        LogQuotient::A => sum - 1.0,
        LogQuotient::B => sum,
        LogQuotient::C => sum - 1.5,
    }
}

/// `log(1-u)/u`, extended by `-1` at `u = 0`. Derived from `B`.
fn log1m_over(u: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
    Ok(u * stable_log_family(u, LogQuotient::B, policy)? - 1.0)
}

fn check_interior(z: Complex64) -> Result<()> {
    require_finite(z, "z")?;
    let r = z.norm();
    if r >= 1.0 {
        return Err(Error::OutsideDisk(r));
    }
    Ok(())
}

/// The Poisson kernel `P(z, e^{it}) = (1 - |z|^2) / |1 - z e^{-it}|^2`.
pub fn poisson(z: Complex64, t: f64) -> Result<f64> {
    check_interior(z)?;
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    let d = Complex64::new(1.0, 0.0) - z * Complex64::from_polar(1.0, -t);
    Ok((1.0 - z.norm_sqr()) / d.norm_sqr())
}

/// Analytic `d/dz` of the Poisson kernel at fixed boundary angle `t`.
///
/// With `e = e^{-it}`: `dP/dz = (-conj(z)(1 - z e) + (1 - |z|^2) e)
/// / ((1 - z e)^2 (1 - conj(z) conj(e)))`.
pub fn poisson_dz(z: Complex64, t: f64) -> Result<Complex64> {
    check_interior(z)?;
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    let e = Complex64::from_polar(1.0, -t);
    let a = Complex64::new(1.0, 0.0) - z * e;
    let b = Complex64::new(1.0, 0.0) - z.conj() * e.conj();
    Ok((-z.conj() * a + (1.0 - z.norm_sqr()) * e) / (a * a * b))
}

/// The four terms of the biharmonic kernel, as complex numbers.
///
/// Their sum is real; [`h2`] returns the real part, the complex form is kept
/// for the realness diagnostics. Term 1 is the diagonal term
/// `-|zeta - z|^2 log |zeta - z|^2`, extended by `0` at `zeta = z`.
pub fn h2_terms(z: Complex64, zeta: Complex64, policy: &SeriesPolicy) -> Result<[Complex64; 4]> {
    require_finite(z, "z")?;
    require_finite(zeta, "zeta")?;
    let rz = z.norm();
    let rzeta = zeta.norm();
    let tol = 1e-12;
    if rz > 1.0 + tol {
        return Err(Error::OutsideClosedDisk(rz));
    }
    if rzeta > 1.0 + tol {
        return Err(Error::OutsideClosedDisk(rzeta));
    }
    if rz * rzeta >= 1.0 {
        return Err(Error::Domain(
            "|z| |zeta| must be < 1 for the kernel log factors".into(),
        ));
    }
    let d2 = (zeta - z).norm_sqr();
    let t1 = if d2 > 0.0 {
        Complex64::new(-d2 * d2.ln(), 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let u = z * zeta.conj();
    let a = stable_log_family(u, LogQuotient::A, policy)?;
    let ab = stable_log_family(u.conj(), LogQuotient::A, policy)?;
    let t2 = -(1.0 - z.norm_sqr()) * (4.0 + a + ab);
    let lg = log1m_over(u, policy)?;
    let t3 = -(zeta - z) * (1.0 - u) * zeta.conj() * lg;
    let lgb = log1m_over(u.conj(), policy)?;
    let t4 = -(zeta - z).conj() * (1.0 - u.conj()) * zeta * lgb;
    Ok([t1, t2, t3, t4])
}

/// The biharmonic kernel `H2(z, zeta)`, real-valued.
///
/// `H2` vanishes for `|z| = 1` and its diagonal value is defined by
/// continuity (the `-|zeta-z|^2 log|zeta-z|^2` term extends by zero).
pub fn h2(z: Complex64, zeta: Complex64) -> Result<f64> {
    let terms = h2_terms(z, zeta, &SeriesPolicy::default())?;
    Ok(terms.iter().sum::<Complex64>().re)
}

/// Analytic `d/dz` of `H2(z, zeta)`.
///
/// Returned as the sum of the four derivative components
/// `K5 = (conj(zeta) - conj(z)) (log|zeta - z|^2 + 1)`,
/// `K6 = conj(z) (4 + A(u) + A(conj u))`,
/// `K7 = (1 - |z|^2) conj(zeta) B(u)`,
/// `K8 = conj(zeta) (|zeta|^2 B(u) - log(1-u) - 1)`, with `u = z conj(zeta)`.
/// Since `H2` is real, `d/dzbar H2 = conj(h2_dz)`.
///
/// The diagonal `zeta = z` is rejected: the derivative kernel is only
/// Hoelder there and quadrature must keep its nodes off the point.
pub fn h2_dz(z: Complex64, zeta: Complex64) -> Result<Complex64> {
    let policy = SeriesPolicy::default();
    check_interior(z)?;
    require_finite(zeta, "zeta")?;
    let rzeta = zeta.norm();
    if rzeta > 1.0 + 1e-12 {
        return Err(Error::OutsideClosedDisk(rzeta));
    }
    let d2 = (zeta - z).norm_sqr();
    if d2 == 0.0 {
        return Err(Error::DiagonalPoint);
    }
    let u = z * zeta.conj();
    let a = stable_log_family(u, LogQuotient::A, &policy)?;
    let ab = stable_log_family(u.conj(), LogQuotient::A, &policy)?;
    let b = stable_log_family(u, LogQuotient::B, &policy)?;
    let lg1m = (Complex64::new(1.0, 0.0) - u).ln();
    let k5 = (zeta - z).conj() * (d2.ln() + 1.0);
    let k6 = z.conj() * (4.0 + a + ab);
    let k7 = (1.0 - z.norm_sqr()) * zeta.conj() * b;
    let k8 = zeta.conj() * (zeta.norm_sqr() * b - lg1m - 1.0);
    Ok(k5 + k6 + k7 + k8)
}
