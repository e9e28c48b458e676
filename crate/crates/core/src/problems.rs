//! Test-problem construction: manufactured polynomial solutions, boundary
//! traces, sources, and the compatibility condition.
//!
//! A manufactured solution is a finite sum of monomials `z^p conj(z)^q`.
//! All boundary data, the source and the normalization constant follow from
//! it by coefficient arithmetic, which makes the polynomial an exact oracle
//! for the solution operator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_circle, integrate_disk, QuadConfig};

/// Maximum total degree `p + q` accepted by default.
pub const DEFAULT_MAX_DEGREE: u32 = 12;

/// One monomial `coeff * z^p * conj(z)^q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub p: u32,
    pub q: u32,
    pub coeff: Complex64,
}

/// A finite sum of monomials `z^p conj(z)^q`; the manufactured-solution oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct BihPolynomial {
    terms: Vec<PolyTerm>,
}

impl BihPolynomial {
    pub fn new(terms: Vec<PolyTerm>) -> Result<Self> {
        Self::with_max_degree(terms, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(terms: Vec<PolyTerm>, max_degree: u32) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for t in &terms {
            if t.p + t.q > max_degree {
                return Err(Error::ProblemSpec(format!(
                    "term degree {} exceeds maximum {max_degree}",
                    t.p + t.q
                )));
            }
            if !seen.insert((t.p, t.q)) {
                return Err(Error::ProblemSpec(format!(
                    "duplicate monomial ({}, {})",
                    t.p, t.q
                )));
            }
            if !t.coeff.re.is_finite() || !t.coeff.im.is_finite() {
                return Err(Error::NonFinite("polynomial coefficient"));
            }
        }
        Ok(BihPolynomial { terms })
    }

    /// Convenience constructor from `(p, q, re, im)` tuples.
    pub fn from_tuples(terms: &[(u32, u32, f64, f64)]) -> Result<Self> {
        Self::new(
            terms
                .iter()
                .map(|&(p, q, re, im)| PolyTerm {
                    p,
                    q,
                    coeff: Complex64::new(re, im),
                })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[PolyTerm] {
        &self.terms
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms
            .iter()
            .map(|t| t.coeff * z.powu(t.p) * zb.powu(t.q))
            .sum()
    }

    /// Term-wise Wirtinger derivative d/dz.
    pub fn dz(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms
            .iter()
            .filter(|t| t.p > 0)
            .map(|t| t.coeff * t.p as f64 * z.powu(t.p - 1) * zb.powu(t.q))
            .sum()
    }

    /// Term-wise Wirtinger derivative d/dzbar.
    pub fn dzbar(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms
            .iter()
            .filter(|t| t.q > 0)
            .map(|t| t.coeff * t.q as f64 * z.powu(t.p) * zb.powu(t.q - 1))
            .sum()
    }

    /// The source `g = (d/dz d/dzbar)^2 w`: coefficient `p q (p-1)(q-1)`
    /// shifted to `(p-2, q-2)`.
    pub fn source(&self) -> BihPolynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.p >= 2 && t.q >= 2)
            .map(|t| PolyTerm {
                p: t.p - 2,
                q: t.q - 2,
                coeff: t.coeff
                    * (t.p as f64 * t.q as f64 * (t.p as f64 - 1.0) * (t.q as f64 - 1.0)),
            })
            .collect();
        BihPolynomial { terms }
    }

    /// Boundary trace of `w`: frequency `k = p - q` picks up every `c_{p,q}`.
    pub fn gamma0(&self) -> BoundaryTrace {
        let mut acc = std::collections::BTreeMap::<i64, Complex64>::new();
        for t in &self.terms {
            *acc.entry(t.p as i64 - t.q as i64)
                .or_insert(Complex64::new(0.0, 0.0)) += t.coeff;
        }
        BoundaryTrace::fourier(acc.into_iter().collect())
    }

    /// Boundary trace of the normal derivative of `w_{z zbar}`:
    /// multiplier `p q (p + q - 2)` at frequency `p - q`.
    pub fn gamma(&self) -> BoundaryTrace {
        let mut acc = std::collections::BTreeMap::<i64, Complex64>::new();
        for t in &self.terms {
            if t.p == 0 || t.q == 0 {
                continue;
            }
            let mult = t.p as f64 * t.q as f64 * (t.p as f64 + t.q as f64 - 2.0);
            *acc.entry(t.p as i64 - t.q as i64)
                .or_insert(Complex64::new(0.0, 0.0)) += t.coeff * mult;
        }
        BoundaryTrace::fourier(acc.into_iter().collect())
    }

    /// The normalization constant `c`: the circle mean of `w_{z zbar}` keeps
    /// only diagonal terms, `c = sum p^2 c_{p,p}`.
    pub fn normalization_constant(&self) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.p == t.q && t.p >= 1)
            .map(|t| t.coeff * (t.p as f64 * t.p as f64))
            .sum()
    }
}

/// Boundary data on the unit circle, in Fourier or sampled form.
///
/// Sampled traces live on uniform angles `theta_k = 2 pi k / n`; off-node
/// queries use trigonometric interpolation through the DFT coefficients.
#[derive(Debug, Clone)]
pub struct BoundaryTrace {
    repr: TraceRepr,
}

#[derive(Debug, Clone)]
enum TraceRepr {
    Fourier(Vec<(i64, Complex64)>),
    Sampled {
        samples: Vec<Complex64>,
        /// Trig-interpolation coefficients, ascending frequency.
        coeffs: Vec<(i64, Complex64)>,
    },
}

impl BoundaryTrace {
    pub fn fourier(coeffs: Vec<(i64, Complex64)>) -> Self {
        BoundaryTrace {
            repr: TraceRepr::Fourier(coeffs),
        }
    }

    pub fn zero() -> Self {
        Self::fourier(vec![])
    }

    pub fn constant(v: Complex64) -> Self {
        Self::fourier(vec![(0, v)])
    }

    pub fn sampled(samples: Vec<Complex64>) -> Self {
        let coeffs = dft_coefficients(&samples);
        BoundaryTrace {
            repr: TraceRepr::Sampled { samples, coeffs },
        }
    }

    pub fn is_fourier(&self) -> bool {
        matches!(self.repr, TraceRepr::Fourier(_))
    }

    /// Raw samples at the trace's own uniform nodes, when sampled.
    pub fn node_samples(&self) -> Option<&[Complex64]> {
        match &self.repr {
            TraceRepr::Sampled { samples, .. } => Some(samples),
            TraceRepr::Fourier(_) => None,
        }
    }

    /// Frequency/coefficient view; DFT coefficients for sampled traces.
    pub fn fourier_view(&self) -> &[(i64, Complex64)] {
        match &self.repr {
            TraceRepr::Fourier(c) => c,
            TraceRepr::Sampled { coeffs, .. } => coeffs,
        }
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.fourier_view()
            .iter()
            .map(|&(k, c)| c * Complex64::from_polar(1.0, k as f64 * theta))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.fourier_view().iter().all(|(_, c)| c.norm() == 0.0)
    }

    /// Sup norm estimated over `n` uniform angles.
    pub fn sup_norm(&self, n: usize) -> f64 {
        if let Some(samples) = self.node_samples() {
            if samples.len() >= n {
                return samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
            }
        }
        (0..n)
            .map(|k| self.eval(std::f64::consts::TAU * k as f64 / n as f64).norm())
            .fold(0.0, f64::max)
    }
}

/// DFT of uniform samples, normalized so coefficients interpolate the data;
/// an even-length Nyquist coefficient is split between +-n/2.
fn dft_coefficients(samples: &[Complex64]) -> Vec<(i64, Complex64)> {
    let n = samples.len();
    if n == 0 {
        return vec![];
    }
    let mut buf = samples.to_vec();
    rustfft::FftPlanner::new()
        .plan_fft_forward(n)
        .process(&mut buf);
    let nf = n as f64;
    let half = n / 2;
    let mut out = Vec::with_capacity(n + 1);
    if n % 2 == 0 && half > 0 {
        out.push((-(half as i64), buf[half] / (2.0 * nf)));
    }
    for k in (half + 1)..n {
        out.push((k as i64 - n as i64, buf[k] / nf));
    }
    for (k, v) in buf.iter().enumerate().take(if n % 2 == 0 { half } else { half + 1 }) {
        out.push((k as i64, *v / nf));
    }
    if n % 2 == 0 && half > 0 {
        out.push((half as i64, buf[half] / (2.0 * nf)));
    }
    out.sort_by_key(|&(k, _)| k);
    out
}

/// The right-hand side `g`, in polynomial or tabulated polar form.
#[derive(Debug, Clone)]
pub enum SourceData {
    Poly(BihPolynomial),
    /// Values on the polar grid `r_j = j / (n_r - 1)`, `theta_k = 2 pi k / n_theta`,
    /// row-major by ring; bilinear interpolation (periodic in the angle).
    Table {
        n_r: usize,
        n_theta: usize,
        values: Vec<Complex64>,
    },
}

impl SourceData {
    pub fn zero() -> Self {
        SourceData::Poly(BihPolynomial { terms: vec![] })
    }

    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        match self {
            SourceData::Poly(p) => p.eval(zeta),
            SourceData::Table {
                n_r,
                n_theta,
                values,
            } => {
                let r = zeta.norm().min(1.0);
                let t = zeta.arg().rem_euclid(std::f64::consts::TAU);
                let fr = r * (*n_r as f64 - 1.0);
                let i0 = (fr.floor() as usize).min(n_r - 2);
                let ar = fr - i0 as f64;
                let ft = t / std::f64::consts::TAU * *n_theta as f64;
                let j0 = (ft.floor() as usize).min(n_theta - 1);
                let at = ft - j0 as f64;
                let j1 = (j0 + 1) % n_theta;
                let v = |i: usize, j: usize| values[i * n_theta + j];
                (1.0 - ar) * ((1.0 - at) * v(i0, j0) + at * v(i0, j1))
                    + ar * ((1.0 - at) * v(i0 + 1, j0) + at * v(i0 + 1, j1))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SourceData::Poly(p) => p.terms.iter().all(|t| t.coeff.norm() == 0.0),
            SourceData::Table { values, .. } => values.iter().all(|v| v.norm() == 0.0),
        }
    }

    /// Sup norm over a dense polar sampling grid (`n_r x n_theta` points,
    /// radii including 0 and 1).
    pub fn sup_norm(&self, n_r: usize, n_theta: usize) -> f64 {
        let mut sup: f64 = 0.0;
        for i in 0..n_r {
            let r = i as f64 / (n_r as f64 - 1.0);
            for j in 0..n_theta {
                let t = std::f64::consts::TAU * j as f64 / n_theta as f64;
                sup = sup.max(self.eval(Complex64::from_polar(r, t)).norm());
            }
        }
        sup
    }
}

/// Where a problem came from.
#[derive(Debug, Clone)]
pub enum Provenance {
    Manufactured(BihPolynomial),
    Tabulated,
}

/// The full data of one Dirichlet-Neumann problem.
#[derive(Debug, Clone)]
pub struct ProblemData {
    pub gamma0: BoundaryTrace,
    pub gamma: BoundaryTrace,
    pub g: SourceData,
    pub c: Complex64,
    pub provenance: Provenance,
}

impl ProblemData {
    /// Derives all boundary data, the source and `c` from a manufactured `w`.
    pub fn from_polynomial(w: &BihPolynomial) -> Self {
        ProblemData {
            gamma0: w.gamma0(),
            gamma: w.gamma(),
            g: SourceData::Poly(w.source()),
            c: w.normalization_constant(),
            provenance: Provenance::Manufactured(w.clone()),
        }
    }

    pub fn zero() -> Self {
        ProblemData {
            gamma0: BoundaryTrace::zero(),
            gamma: BoundaryTrace::zero(),
            g: SourceData::zero(),
            c: Complex64::new(0.0, 0.0),
            provenance: Provenance::Tabulated,
        }
    }

    /// `|circle mean of gamma - (2/pi) * integral of g dx dy|`.
    ///
    /// The area integral uses the unnormalized Lebesgue measure: that is the
    /// reading under which the compatibility condition agrees with Green's
    /// identity (check with `w = |z|^4`: both sides equal 8).
    pub fn compatibility_residual(&self, config: &QuadConfig) -> Result<f64> {
        let n = match self.gamma.node_samples() {
            Some(s) => s.len().max(2),
            None => config.n_theta,
        };
        let lhs = integrate_circle(|t| self.gamma.eval(t), n)?;
        let rhs = integrate_disk(|z| self.g.eval(z), config, None)?.value
            * (2.0 / std::f64::consts::PI);
        Ok((lhs - rhs).norm())
    }
}

// ---------------------------------------------------------------------------
// Problem-spec file (JSON)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumOrComplex {
    Re(f64),
    Complex { re: f64, im: f64 },
}

impl From<&NumOrComplex> for Complex64 {
    fn from(v: &NumOrComplex) -> Complex64 {
        match *v {
            NumOrComplex::Re(x) => Complex64::new(x, 0.0),
            NumOrComplex::Complex { re, im } => Complex64::new(re, im),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermSpec {
    p: u32,
    q: u32,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct TableSpec {
    n_r: usize,
    n_theta: usize,
    values: Vec<NumOrComplex>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum ProblemSpecFile {
    Poly {
        terms: Vec<TermSpec>,
    },
    Tabulated {
        gamma0: Vec<NumOrComplex>,
        gamma: Vec<NumOrComplex>,
        g: TableSpec,
        c: NumOrComplex,
    },
}

impl ProblemData {
    /// Parses the JSON problem-spec format.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProblemSpecFile =
            serde_json::from_str(text).map_err(|e| Error::ProblemSpec(e.to_string()))?;
        match spec {
            ProblemSpecFile::Poly { terms } => {
                let poly = BihPolynomial::new(
                    terms
                        .iter()
                        .map(|t| PolyTerm {
                            p: t.p,
                            q: t.q,
                            coeff: Complex64::new(t.re, t.im),
                        })
                        .collect(),
                )?;
                Ok(ProblemData::from_polynomial(&poly))
            }
            ProblemSpecFile::Tabulated {
                gamma0,
                gamma,
                g,
                c,
            } => {
                if g.n_r < 2 || g.n_theta < 1 {
                    return Err(Error::ProblemSpec(
                        "tabulated source needs n_r >= 2 and n_theta >= 1".into(),
                    ));
                }
                if g.values.len() != g.n_r * g.n_theta {
                    return Err(Error::ProblemSpec(format!(
                        "tabulated source has {} values, expected {}",
                        g.values.len(),
                        g.n_r * g.n_theta
                    )));
                }
                Ok(ProblemData {
                    gamma0: BoundaryTrace::sampled(
                        gamma0.iter().map(Complex64::from).collect(),
                    ),
                    gamma: BoundaryTrace::sampled(gamma.iter().map(Complex64::from).collect()),
                    g: SourceData::Table {
                        n_r: g.n_r,
                        n_theta: g.n_theta,
                        values: g.values.iter().map(Complex64::from).collect(),
                    },
                    c: Complex64::from(&c),
                    provenance: Provenance::Tabulated,
                })
            }
        }
    }
}
