//! Explicit growth, gradient and univalence-radius bounds for solutions of
//! the fourth-order Dirichlet-Neumann problem on the unit disk.
//!
//! All bounds are driven by four nonnegative inputs: `l1` (sup of the
//! harmonic extension of the Dirichlet data), `l2` (sup of the Neumann
//! trace), `l3` (sup of the source) and `c_abs` (modulus of the
//! normalization constant).

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Sup norms of the problem data that enter the bounds.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BoundParams {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub c_abs: f64,
}

impl BoundParams {
    pub fn new(l1: f64, l2: f64, l3: f64, c_abs: f64) -> Result<Self> {
        for (name, v) in [("l1", l1), ("l2", l2), ("l3", l3), ("c_abs", c_abs)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(BoundParams { l1, l2, l3, c_abs })
    }
}

fn check_radius(t: f64) -> Result<()> {
    if !t.is_finite() || !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("radius must lie in [0, 1], got {t}")));
    }
    Ok(())
}

/// Growth-bound coefficient of the Neumann term: decreasing in t, largest at 0.
pub fn n1(t: f64) -> Result<f64> {
    check_radius(t)?;
    Ok(2.0 * 4.0f64.ln()
        + 0.5 * (1.0 - t * t) * (2.0 / 3.0 * PI * PI - 2.0).sqrt()
        + 4.0 * (PI * PI / 6.0).sqrt())
}

/// Growth-bound coefficient of the source term.
pub fn n2(t: f64) -> Result<f64> {
    check_radius(t)?;
    Ok(4.0 * 4.0f64.ln()
        + (1.0 - t * t) * (2.0 / 3.0 * PI * PI - 2.0).sqrt()
        + 16.0 / 3.0 * (PI * PI / 6.0).sqrt())
}

/// Gradient-bound coefficient of the Neumann term.
pub fn n3(t: f64) -> Result<f64> {
    check_radius(t)?;
    Ok(2.0 * (PI * PI / 3.0 + 1.0).sqrt()
        + t * (2.0 / 3.0 * PI * PI - 2.0).sqrt()
        + (1.0 - t * t) * (PI * PI / 6.0 - 1.0).sqrt()
        + (PI * PI / 3.0 - 0.5).sqrt())
}

/// Gradient-bound coefficient of the source term.
pub fn n4(t: f64) -> Result<f64> {
    check_radius(t)?;
    Ok(2.0 * (4.0f64.ln() + 1.0)
        + t * (2.0 / 3.0 * PI * PI - 2.0).sqrt()
        + 2.0 / 3.0 * (1.0 - t * t) * (PI * PI / 6.0 - 1.0).sqrt()
        + 2.0 / 3.0 * (PI * PI / 3.0 - 0.5).sqrt())
}

/// Lipschitz constant of the boundary-kernel derivative integrals at 0.
pub fn m1() -> f64 {
    0.5 * (2.0 * PI / 3.0f64.sqrt()
        + 1.0
        + (2.0 / 3.0 * PI * PI - 2.0).sqrt()
        + (PI * PI / 6.0 - 1.25).sqrt()
        + (PI * PI / 6.0 - 1.0).sqrt()
        + (PI * PI / 3.0 - 2.75).sqrt())
}

/// Smooth part of the Lipschitz constant of the area-kernel derivative
/// integrals at 0 (the logarithmic part is carried separately).
pub fn m2() -> f64 {
    4.0f64.ln()
        + 1.0
        + (2.0 / 3.0 * PI * PI - 2.0).sqrt()
        + 2.0 / 3.0
            * ((PI * PI / 6.0 - 1.25).sqrt()
                + (PI * PI / 6.0 - 1.0).sqrt()
                + (PI * PI / 3.0 - 2.75).sqrt())
}

/// Gradient bound at the origin: `2|c| + (4/pi) l1 + l2 N3(0) + l3 N4(0)`.
pub fn l4(p: &BoundParams) -> Result<f64> {
    Ok(2.0 * p.c_abs + 4.0 / PI * p.l1 + p.l2 * n3(0.0)? + p.l3 * n4(0.0)?)
}

/// Smooth Lipschitz constant of the gradient at 0: `|c| + l2 M1 + l3 M2`.
pub fn l5(p: &BoundParams) -> f64 {
    p.c_abs + p.l2 * m1() + p.l3 * m2()
}

/// Pointwise growth bound:
/// `(4/pi) l1 arctan t + |c| + l2 N1(t) + l3 N2(t)`.
///
/// Bounds `|w(z) - (1 - t^2)/(1 + t^2) * P[gamma0](0)|` at `t = |z|`.
pub fn schwarz_bound(p: &BoundParams, t: f64) -> Result<f64> {
    check_radius(t)?;
    Ok(4.0 / PI * p.l1 * t.atan() + p.c_abs + p.l2 * n1(t)? + p.l3 * n2(t)?)
}

/// Gradient bound `|w_z| + |w_zbar| <=`
/// `(4/pi) l1 / (1 - t^2) + 2|c| + l2 N3(t) + l3 N4(t)`, for `t < 1`.
pub fn pick_bound(p: &BoundParams, t: f64) -> Result<f64> {
    check_radius(t)?;
    if t >= 1.0 {
        return Err(Error::Domain(
            "gradient bound diverges on the boundary".into(),
        ));
    }
    Ok(4.0 / PI * p.l1 / (1.0 - t * t) + 2.0 * p.c_abs + p.l2 * n3(t)? + p.l3 * n4(t)?)
}

/// The univalence-radius function; its unique root in (0, 1) is the radius.
///
/// `phi(r) = 1/L4 - 2r((4 l1/pi)(2-r)/(1-r)^2 + L5) - 8 l3 log((1+r)/(1-r))`.
pub fn phi(p: &BoundParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    if r >= 1.0 {
        return Err(Error::Domain("phi is defined on [0, 1)".into()));
    }
    let l4v = l4(p)?;
    if l4v == 0.0 {
        return Err(Error::DegenerateParams);
    }
    Ok(1.0 / l4v
        - 2.0 * r * (4.0 * p.l1 / PI * (2.0 - r) / (1.0 - r).powi(2) + l5(p))
        - 8.0 * p.l3 * ((1.0 + r) / (1.0 - r)).ln())
}

/// Outcome of the univalence-radius computation.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct LandauResult {
    /// Radius of the disk on which normalized solutions are univalent.
    pub r0: f64,
    /// Lower bound for the radius of the covered disk.
    pub r0_image_lower: f64,
    pub l4: f64,
    pub l5: f64,
    /// Final bisection bracket [lo, hi] around the root.
    pub bracket: (f64, f64),
    pub iterations: u32,
}

/// Solves `phi(r) = 0` by bisection and evaluates the covered-disk bound.
pub fn landau_radius(p: &BoundParams) -> Result<LandauResult> {
    let l4v = l4(p)?;
    if l4v == 0.0 {
        return Err(Error::DegenerateParams);
    }
    let l5v = l5(p);
    let mut lo = 0.0f64;
    let mut hi = 1.0 - 1e-12;
    let flo = phi(p, lo)?;
    let fhi = phi(p, hi)?;
    if flo <= 0.0 || fhi >= 0.0 {
        return Err(Error::NoBracket(format!(
            "phi(0) = {flo}, phi(1-) = {fhi}"
        )));
    }
    let mut iterations = 0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        iterations += 1;
        if phi(p, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r0 = 0.5 * (lo + hi);
    let r0_image_lower = 8.0 * p.l1 / PI * (r0 / (1.0 - r0)).powi(2)
        + l5v * r0 * r0
        + 8.0 * p.l3 * r0 * r0 * (3.0 - r0 * r0) / (1.0 - r0 * r0).powi(2);
    Ok(LandauResult {
        r0,
        r0_image_lower,
        l4: l4v,
        l5: l5v,
        bracket: (lo, hi),
        iterations,
    })
}
