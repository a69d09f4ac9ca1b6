use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GridSpec, Solution};
use crate::error::{Error, Result};

/// Parameters of the defocusing family. The evaluator continues the
/// focusing breather through `α → iα`, `β → −β`, `b → ib`, so these are the
/// real inputs before that substitution. Regular members typically have
/// `b² > α² + β²`, outside the focusing domain, which is why they are not an
/// [`EffectiveParams`](crate::spectral_params::EffectiveParams).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefocusingParams {
    pub alpha: f64,
    pub beta: f64,
    pub b: f64,
    pub phi: f64,
    pub psi: f64,
}

/// Regular triple selected by [`scan_regular_defocusing`] over the default
/// candidate lists, with `φ = π`, `ψ = 0`.
pub const DOCUMENTED_REGULAR_TRIPLE: DefocusingParams = DefocusingParams {
    alpha: 0.1,
    beta: 0.5,
    b: 1.0,
    phi: std::f64::consts::PI,
    psi: 0.0,
};

/// Imaginary remainder above which a continued value is rejected.
const CONTINUATION_TOL: f64 = 1e-8;

impl DefocusingParams {
    pub fn new(alpha: f64, beta: f64, b: f64, phi: f64, psi: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            b,
            phi,
            psi,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.alpha, self.beta, self.b, self.phi, self.psi]
            .iter()
            .all(|x| x.is_finite());
        if !finite || !(self.alpha > 0.0) || !(self.beta > 0.0) || self.b < 0.0 {
            return Err(Error::ParameterDomain(format!(
                "defocusing needs alpha > 0, beta > 0, b >= 0, got {self:?}"
            )));
        }
        let r = self.beta * self.beta - self.alpha * self.alpha;
        if r == 0.0 || r + self.b * self.b == 0.0 {
            return Err(Error::Degenerate(format!(
                "continued coefficients are singular for {self:?}"
            )));
        }
        Ok(())
    }

    /// Envelope centre, where the real envelope variable vanishes.
    pub fn envelope_center(&self, t: f64) -> f64 {
        let (al, be, b) = (self.alpha, self.beta, self.b);
        let gamma = 8.0 * be * (3.0 * al * al + be * be) - 12.0 * b * b * be;
        (gamma * t + self.psi) / (2.0 * be)
    }
}

/// The continued value `k̃ = k/i`, with `k` the focusing breather formula
/// evaluated at `a = iα`, `B = −β`, background `ib`.
///
/// The carrier offset `arctan(B/a)` is continued as `−i·log((a + iB)/√(a² + B²))`;
/// the principal real arctangent does not survive the substitution.
pub fn defocusing_eval_complex(p: &DefocusingParams, s: f64, t: f64) -> Result<Complex64> {
    let i = Complex64::i();
    let a = Complex64::new(0.0, p.alpha);
    let bb = Complex64::new(-p.beta, 0.0);
    let bc = Complex64::new(0.0, p.b);
    let r = a * a + bb * bb;
    let rb = r - bc * bc;

    let gamma = 8.0 * bb * (3.0 * a * a - bb * bb) - 12.0 * bc * bc * bb;
    let delta = 8.0 * a * (a * a - 3.0 * bb * bb) - 12.0 * bc * bc * a;
    let c1 = (bb / a) * (r / rb).sqrt();
    let c2 = bc * bb / rb;
    let c3 = bc * bb / (a * rb.sqrt());
    let offset = -i * ((a + i * bb) / r.sqrt()).ln();

    let u = 2.0 * bb * s + gamma * t + p.psi;
    let v = 2.0 * a * s + delta * t + p.phi;
    // Every term carries the factor e^{−|Re u|}; cos v grows like e^{2α|s|}
    // and is folded into the same exponentials to avoid overflow.
    let au = u.re.abs();
    let ep = (u - au).exp();
    let em = (-u - au).exp();
    let cosh = 0.5 * (ep + em);
    let sinh = 0.5 * (ep - em);
    let eiv = (i * v - au).exp();
    let emiv = (-i * v - au).exp();
    let cos_v = 0.5 * (eiv + emiv);
    let sin_v = (eiv - emiv) / (2.0 * i);
    let w = v - offset;
    let eiw = (i * w - au).exp();
    let emiw = (-i * w - au).exp();
    let cos_w = 0.5 * (eiw + emiw);
    let sin_w = (eiw - emiw) / (2.0 * i);

    let g = c1 * cos_v + c2 * em;
    let gp = -2.0 * a * c1 * sin_v - 2.0 * bb * c2 * em;
    let f = cosh + c3 * sin_w;
    let fp = 2.0 * bb * sinh + 2.0 * a * c3 * cos_w;

    let den = f * f + g * g;
    if !(den.norm() >= 1e-300) || !den.is_finite() {
        return Err(Error::Singularity { s, t });
    }
    let k = bc + 2.0 * (gp * f - g * fp) / den;
    if !k.is_finite() {
        return Err(Error::Singularity { s, t });
    }
    Ok(k / i)
}

/// Real part of [`defocusing_eval_complex`], rejecting points where the
/// continuation leaves an imaginary part above `1e-8`.
pub fn defocusing_eval(p: &DefocusingParams, s: f64, t: f64) -> Result<f64> {
    let k = defocusing_eval_complex(p, s, t)?;
    if k.im.abs() > CONTINUATION_TOL {
        return Err(Error::Continuation {
            imag: k.im.abs(),
            s,
            t,
        });
    }
    Ok(k.re)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Defocusing(pub DefocusingParams);

impl Solution for Defocusing {
    fn background(&self) -> f64 {
        self.0.b
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        defocusing_eval(&self.0, s, t)
    }
}

/// Candidate lists and acceptance thresholds for the regularity scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DefocusingScan {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub backgrounds: Vec<f64>,
    pub phi: f64,
    pub psi: f64,
    /// Half-width of the window centred on the envelope at `t = 0`.
    pub half_width: f64,
    pub n: usize,
    /// Maximum tolerated `|Im k̃|` anywhere on the grid.
    pub imag_tol: f64,
    /// Maximum tolerated `|k − b|` at the window ends.
    pub endpoint_tol: f64,
    /// Relative change of `max |k − b|` allowed under 4× grid refinement.
    pub refinement_tol: f64,
}

impl Default for DefocusingScan {
    fn default() -> Self {
        Self {
            alphas: vec![0.1, 0.2, 0.3, 0.5],
            betas: vec![0.5, 0.8, 1.0, 1.5],
            backgrounds: vec![0.5, 1.0, 1.5, 2.0, 3.0],
            phi: std::f64::consts::PI,
            psi: 0.0,
            half_width: 40.0,
            n: 2001,
            imag_tol: 1e-10,
            endpoint_tol: 1e-8,
            refinement_tol: 0.01,
        }
    }
}

struct Profile {
    max_imag: f64,
    max_dev: f64,
    endpoint: f64,
}

fn profile(p: &DefocusingParams, grid: GridSpec) -> Option<Profile> {
    let mut out = Profile {
        max_imag: 0.0,
        max_dev: 0.0,
        endpoint: 0.0,
    };
    for (j, s) in grid.points().enumerate() {
        let k = defocusing_eval_complex(p, s, 0.0).ok()?;
        out.max_imag = out.max_imag.max(k.im.abs());
        let dev = (k.re - p.b).abs();
        out.max_dev = out.max_dev.max(dev);
        if j == 0 || j + 1 == grid.n {
            out.endpoint = out.endpoint.max(dev);
        }
    }
    Some(out)
}

/// Scans the candidate triples in order (`α` outermost, then `β`, then `b`)
/// and returns those whose `t = 0` profile is finite, real to `imag_tol`,
/// decays to `b` at the window ends, and has a peak deviation that is
/// stable under 4× grid refinement (which rules out poles the coarse grid
/// happened to straddle).
pub fn scan_regular_defocusing(scan: &DefocusingScan) -> Vec<DefocusingParams> {
    let mut found = Vec::new();
    for &alpha in &scan.alphas {
        for &beta in &scan.betas {
            for &b in &scan.backgrounds {
                let Ok(p) = DefocusingParams::new(alpha, beta, b, scan.phi, scan.psi) else {
                    continue;
                };
                let c = p.envelope_center(0.0);
                let coarse = GridSpec::new(c - scan.half_width, c + scan.half_width, scan.n);
                let fine = GridSpec::new(c - scan.half_width, c + scan.half_width, 4 * scan.n - 3);
                let (Ok(coarse), Ok(fine)) = (coarse, fine) else {
                    continue;
                };
                let Some(pc) = profile(&p, coarse) else {
                    continue;
                };
                if pc.max_imag >= scan.imag_tol || pc.endpoint >= scan.endpoint_tol {
                    continue;
                }
                let Some(pf) = profile(&p, fine) else {
                    continue;
                };
                let stable = (pf.max_dev - pc.max_dev).abs() <= scan.refinement_tol * pc.max_dev;
                if stable && pf.max_imag < scan.imag_tol && pf.max_dev > 0.0 {
                    found.push(p);
                }
            }
        }
    }
    found
}
