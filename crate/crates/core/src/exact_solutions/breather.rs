use num_complex::Complex64;
use serde::Serialize;

use super::{arctan_log_derivative, scaled_hyperbolics, Solution};
use crate::error::{Error, Result};
use crate::spectral_params::EffectiveParams;

/// The breather over background `b`, from the explicit pair `(g̃, f̃)`:
///
/// ```text
/// g̃ = (β/α)·√(R/(R−b²))·cos v + bβ/(R−b²)·e^{−u}
/// f̃ = cosh u + bβ/(α√(R−b²))·sin(v − arctan(β/α))
/// u = 2βs + γt + ψ,  v = 2αs + δt + φ,  R = α² + β²
/// ```
///
/// All quantities are the effective (tilded) parameters.
pub fn breather_eval(p: &EffectiveParams, s: f64, t: f64) -> Result<f64> {
    let (alpha, beta, b) = (p.alpha(), p.beta(), p.b());
    let r = alpha * alpha + beta * beta;
    let rb = r - b * b;
    let c1 = (beta / alpha) * (r / rb).sqrt();
    let c2 = b * beta / rb;
    let c3 = b * beta / (alpha * rb.sqrt());
    let offset = (beta / alpha).atan();

    let u = 2.0 * beta * s + p.gamma() * t + p.psi();
    let v = 2.0 * alpha * s + p.delta() * t + p.phi();
    let (cosh, sinh, exp_neg, scale) = scaled_hyperbolics(u);
    let (sv, cv) = v.sin_cos();
    let (so, co) = (v - offset).sin_cos();

    let g = c1 * cv * scale + c2 * exp_neg;
    let gp = -2.0 * alpha * c1 * sv * scale - 2.0 * beta * c2 * exp_neg;
    let f = cosh + c3 * so * scale;
    let fp = 2.0 * beta * sinh + 2.0 * alpha * c3 * co * scale;

    arctan_log_derivative(g, gp, f, fp)
        .map(|d| b + d)
        .ok_or(Error::Singularity { s, t })
}

/// Entries of the 2×2 matrices `M(s,t)` and `N(s,t)` together with their
/// `s`-derivatives.
struct DeterminantEntries {
    m: [[Complex64; 2]; 2],
    n: [[Complex64; 2]; 2],
    dm: [[Complex64; 2]; 2],
    dn: [[Complex64; 2]; 2],
}

fn determinant_entries(p: &EffectiveParams, s: f64, t: f64) -> DeterminantEntries {
    let i = Complex64::i();
    let (alpha, beta, gamma, delta) = (p.alpha(), p.beta(), p.gamma(), p.delta());
    let m1 = p.norming_constant();
    let m2 = m1.conj();
    let z1 = Complex64::new(alpha, beta);
    let z2 = Complex64::new(-alpha, beta);
    let w1 = Complex64::new(-gamma, delta) * t;
    let w2 = Complex64::new(-gamma, -delta) * t;

    let k1 = 2.0 * i * z1;
    let k2 = 2.0 * i * z2;
    let kc = Complex64::new(-2.0 * beta, 0.0);
    let e1 = (k1 * s + w1).exp();
    let e2 = (k2 * s + w2).exp();
    let ec1 = (kc * s + w1).exp();
    let ec2 = (kc * s + w2).exp();

    let m = [
        [-m1 * e1 / 2.0, i * z1 * m1 * ec1 / (2.0 * beta)],
        [i * z2 * m2 * ec2 / (2.0 * beta), -m2 * e2 / 2.0],
    ];
    let n = [
        [m1 * e1 / (2.0 * z1), -i * m1 * ec1 / (2.0 * beta)],
        [-i * m2 * ec2 / (2.0 * beta), m2 * e2 / (2.0 * z2)],
    ];
    // Each entry is a constant times one exponential; d/ds multiplies by its rate.
    let rates = [[k1, kc], [kc, k2]];
    let mut dm = m;
    let mut dn = n;
    for r in 0..2 {
        for c in 0..2 {
            dm[r][c] *= rates[r][c];
            dn[r][c] *= rates[r][c];
        }
    }
    DeterminantEntries { m, n, dm, dn }
}

/// `d = det(I − iM − ibN)` and `∂ₛd`.
pub(crate) fn breather_determinant(p: &EffectiveParams, s: f64, t: f64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let b = p.b();
    let DeterminantEntries { m, n, dm, dn } = determinant_entries(p, s, t);
    let mut a = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut da = a;
    for r in 0..2 {
        for c in 0..2 {
            let id = if r == c { 1.0 } else { 0.0 };
            a[r][c] = id - i * m[r][c] - i * b * n[r][c];
            da[r][c] = -i * dm[r][c] - i * b * dn[r][c];
        }
    }
    let d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let dd = da[0][0] * a[1][1] + a[0][0] * da[1][1] - da[0][1] * a[1][0] - a[0][1] * da[1][0];
    (d, dd)
}

/// The breather through the 2×2 determinant `d = det(I − iM − ibN)`:
/// `k = b + 2·∂ₛ arctan(Im d / Re d)`.
pub fn breather_det_eval(p: &EffectiveParams, s: f64, t: f64) -> Result<f64> {
    let (d, dd) = breather_determinant(p, s, t);
    if !(d.re.is_finite() && d.im.is_finite() && dd.re.is_finite() && dd.im.is_finite()) {
        return Err(Error::Singularity { s, t });
    }
    arctan_log_derivative(d.im, dd.im, d.re, dd.re)
        .map(|k| p.b() + k)
        .ok_or(Error::Singularity { s, t })
}

/// Vanishing-background breather `2∂ₛ arctan(g(v)/f(u))` with
/// `g = (β/α)·sin(v − arctan(β/α))`, `f = cosh u`.
pub fn wadati_breather_eval(
    alpha: f64,
    beta: f64,
    u0: f64,
    v0: f64,
    s: f64,
    t: f64,
) -> Result<f64> {
    if alpha == 0.0 || !(beta > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "breather needs alpha != 0 and beta > 0, got ({alpha}, {beta})"
        )));
    }
    let gamma = 8.0 * beta * (3.0 * alpha * alpha - beta * beta);
    let delta = 8.0 * alpha * (alpha * alpha - 3.0 * beta * beta);
    let u = 2.0 * beta * s + gamma * t + u0;
    let v = 2.0 * alpha * s + delta * t + v0;
    let offset = (beta / alpha).atan();
    let (cosh, sinh, _, scale) = scaled_hyperbolics(u);
    let (sv, cv) = (v - offset).sin_cos();
    let g = beta / alpha * sv * scale;
    let gp = 2.0 * beta * cv * scale;
    let f = cosh;
    let fp = 2.0 * beta * sinh;
    arctan_log_derivative(g, gp, f, fp).ok_or(Error::Singularity { s, t })
}

/// Translations `(u0, v0)` that make the vanishing-background breather
/// coincide with `breather_eval` at `b = 0`: `cos v = sin(v + π/2)`.
pub fn wadati_phases(p: &EffectiveParams) -> (f64, f64) {
    let u0 = p.psi();
    let v0 = p.phi() + std::f64::consts::FRAC_PI_2 + (p.beta() / p.alpha()).atan();
    (u0, v0)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Breather(pub EffectiveParams);

impl Solution for Breather {
    fn background(&self) -> f64 {
        self.0.b()
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        breather_eval(&self.0, s, t)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BreatherDeterminant(pub EffectiveParams);

impl Solution for BreatherDeterminant {
    fn background(&self) -> f64 {
        self.0.b()
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        breather_det_eval(&self.0, s, t)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct WadatiBreather {
    pub alpha: f64,
    pub beta: f64,
    pub u0: f64,
    pub v0: f64,
}

impl Solution for WadatiBreather {
    fn background(&self) -> f64 {
        0.0
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        wadati_breather_eval(self.alpha, self.beta, self.u0, self.v0, s, t)
    }
}
