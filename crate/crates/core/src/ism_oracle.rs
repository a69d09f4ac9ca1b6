//! Reconstruction of `k²` from the Gelfand–Levitan determinant of the
//! two-zero discrete spectrum. Shares no algebra with the closed forms:
//! `k² = b² + (log Δ)''` with `Δ = det[[E, B], [−B, E]]`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_solutions::{breather_det_eval, breather_eval};
use crate::spectral_params::EffectiveParams;

/// Time-evolved discrete data entering the 4×4 system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GLCoefficients {
    pub zeta: [Complex64; 2],
    pub a: [Complex64; 2],
    pub a_tilde: [Complex64; 2],
    pub time: f64,
}

/// `a_j = −iζ_j·m_j·e^{θ_j t}`, `ã_j = b·m_j·e^{θ_j t}` with
/// `θ₁ = −γ̃ + iδ̃`, `θ₂ = −γ̃ − iδ̃` and `m₂ = conj(m₁)`.
pub fn gl_coefficients(p: &EffectiveParams, t: f64) -> GLCoefficients {
    let i = Complex64::i();
    let z1 = Complex64::new(p.alpha(), p.beta());
    let z2 = Complex64::new(-p.alpha(), p.beta());
    let m1 = p.norming_constant();
    let m2 = m1.conj();
    let w1 = (Complex64::new(-p.gamma(), p.delta()) * t).exp();
    let w2 = (Complex64::new(-p.gamma(), -p.delta()) * t).exp();
    GLCoefficients {
        zeta: [z1, z2],
        a: [-i * z1 * m1 * w1, -i * z2 * m2 * w2],
        a_tilde: [p.b() * m1 * w1, p.b() * m2 * w2],
        time: t,
    }
}

/// Minimal ring interface so the same cofactor expansion serves plain
/// numbers and truncated Taylor series.
trait Ring:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}
impl<T> Ring for T where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// 4×4 determinant by Laplace expansion along the first two rows.
fn det4<T: Ring>(m: &[[T; 4]; 4]) -> T {
    let minor = |r: usize, c1: usize, c2: usize| m[r][c1] * m[r + 1][c2] - m[r][c2] * m[r + 1][c1];
    let top = [
        minor(0, 0, 1),
        minor(0, 0, 2),
        minor(0, 0, 3),
        minor(0, 1, 2),
        minor(0, 1, 3),
        minor(0, 2, 3),
    ];
    let bot = [
        minor(2, 0, 1),
        minor(2, 0, 2),
        minor(2, 0, 3),
        minor(2, 1, 2),
        minor(2, 1, 3),
        minor(2, 2, 3),
    ];
    top[0] * bot[5] - top[1] * bot[4] + top[2] * bot[3] + top[3] * bot[2] - top[4] * bot[1]
        + top[5] * bot[0]
}

/// Assembles `[[E, B], [−B, E]]` from an exponential builder
/// `x(κ) ≈ e^{κs}`.
fn block_matrix<T: Ring>(
    c: &GLCoefficients,
    one: T,
    zero: T,
    x: impl Fn(Complex64) -> T,
    scale: impl Fn(T, Complex64) -> T,
) -> [[T; 4]; 4] {
    let i = Complex64::i();
    let mut m = [[zero; 4]; 4];
    for j in 0..2 {
        for n in 0..2 {
            let sum = c.zeta[j] + c.zeta[n];
            let e = x(i * sum);
            let e_entry = scale(e, c.a_tilde[j] / (i * sum));
            let b_entry = scale(e, c.a[j] / (i * sum));
            m[j][n] = if j == n { one + e_entry } else { e_entry };
            m[j + 2][n + 2] = m[j][n];
            m[j][n + 2] = b_entry;
            m[j + 2][n] = -b_entry;
        }
    }
    m
}

/// `Δ(s + h)` with each exponential split as `e^{κs}·e^{κh}`, so that the
/// rounding of `s + h` and of large exponents is shared by all points of a
/// difference stencil instead of differing between them.
fn complex_determinant(c: &GLCoefficients, s: f64, h: f64) -> Complex64 {
    let m = block_matrix(
        c,
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        |k| (k * s).exp() * (k * h).exp(),
        |e, w| e * w,
    );
    det4(&m)
}

fn real_determinant(c: &GLCoefficients, s: f64, h: f64) -> Result<f64> {
    let d = complex_determinant(c, s, h);
    let at = s + h;
    if !(d.re.is_finite() && d.im.is_finite()) {
        return Err(Error::Domain(format!("determinant overflows at s = {at}")));
    }
    if d.im.abs() > 1e-10 * (1.0 + d.norm()) {
        return Err(Error::InternalConsistency(format!(
            "determinant is not real at s = {at}: {d}"
        )));
    }
    Ok(d.re)
}

/// `Δ(s)` at the time stored in `c`. Fails if the imaginary remainder
/// exceeds `1e-10·(1 + |Δ|)`.
pub fn gl_determinant(c: &GLCoefficients, s: f64) -> Result<f64> {
    real_determinant(c, s, 0.0)
}

/// Absolute-value counterpart of a real number, for bounding cancellation:
/// every operation accumulates magnitudes.
#[derive(Debug, Clone, Copy)]
struct Magnitude(f64);

impl Add for Magnitude {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Magnitude(self.0 + o.0)
    }
}

// Magnitudes of a difference add.
impl Sub for Magnitude {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: Self) -> Self {
        Magnitude(self.0 + o.0)
    }
}

impl Mul for Magnitude {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Magnitude(self.0 * o.0)
    }
}

impl Neg for Magnitude {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

/// Condition number of the cofactor expansion: the sum of the magnitudes
/// of all terms divided by `|Δ|`. Relative rounding error in `Δ` is a
/// small multiple of `ε` times this.
pub fn gl_condition(c: &GLCoefficients, s: f64) -> f64 {
    let m = block_matrix(
        c,
        Magnitude(1.0),
        Magnitude(0.0),
        |k| Magnitude((k * s).exp().norm()),
        |e, w| Magnitude(e.0 * w.norm()),
    );
    det4(&m).0 / complex_determinant(c, s, 0.0).norm()
}

/// `b² + [log Δ(s+h) − 2 log Δ(s) + log Δ(s−h)]/h²`. The two log ratios
/// are taken as `ln_1p` of relative increments so that the cancellation
/// happens before rounding.
pub fn k_squared_reconstruct(p: &EffectiveParams, s: f64, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Config(format!("step must be positive, got {h}")));
    }
    let c = gl_coefficients(p, t);
    let d0 = real_determinant(&c, s, 0.0)?;
    let dp = real_determinant(&c, s, h)?;
    let dm = real_determinant(&c, s, -h)?;
    if !(d0 > 0.0 && dp > 0.0 && dm > 0.0) {
        return Err(Error::Domain(format!(
            "non-positive determinant near s = {s}: {dm}, {d0}, {dp}"
        )));
    }
    let second = ((dp - d0) / d0).ln_1p() + ((dm - d0) / d0).ln_1p();
    Ok(p.b() * p.b() + second / (h * h))
}

const ORDER: usize = 5;

/// Truncated Taylor series `Σ c_n ε^n`, `n < 5`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Jet([Complex64; ORDER]);

impl Jet {
    fn constant(x: Complex64) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); ORDER];
        c[0] = x;
        Jet(c)
    }

    /// Expansion of `e^{κ(s + ε)}` about `s`.
    fn exp(kappa: Complex64, s: f64) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); ORDER];
        c[0] = (kappa * s).exp();
        for n in 1..ORDER {
            c[n] = c[n - 1] * kappa / n as f64;
        }
        Jet(c)
    }

    fn scale(self, w: Complex64) -> Self {
        Jet(self.0.map(|x| x * w))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|n| self.0[n] + o.0[n]))
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|n| self.0[n] - o.0[n]))
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|x| -x))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|n| {
            (0..=n).map(|k| self.0[k] * o.0[n - k]).sum()
        }))
    }
}

/// `(log Δ)^{(n)}(s)` for `n = 0..=4`, exactly (no step size), by
/// propagating Taylor series through the 4×4 determinant.
pub fn log_delta_derivatives(p: &EffectiveParams, s: f64, t: f64) -> Result<[f64; ORDER]> {
    let c = gl_coefficients(p, t);
    let m = block_matrix(
        &c,
        Jet::constant(Complex64::new(1.0, 0.0)),
        Jet::constant(Complex64::new(0.0, 0.0)),
        |k| Jet::exp(k, s),
        |e, w| e.scale(w),
    );
    let d = det4(&m).0;
    let d0 = d[0];
    if !d.iter().all(|x| x.is_finite()) {
        return Err(Error::Domain(format!("determinant overflows at s = {s}")));
    }
    if d0.im.abs() > 1e-10 * (1.0 + d0.norm()) {
        return Err(Error::InternalConsistency(format!(
            "determinant is not real at s = {s}: {d0}"
        )));
    }
    if !(d0.re > 0.0) {
        return Err(Error::Domain(format!(
            "non-positive determinant at s = {s}: {}",
            d0.re
        )));
    }
    let a: [f64; ORDER] = d.map(|x| x.re);
    let mut l = [0.0; ORDER];
    l[0] = a[0].ln();
    for n in 1..ORDER {
        let conv: f64 = (1..n).map(|k| k as f64 / n as f64 * l[k] * a[n - k]).sum();
        l[n] = (a[n] - conv) / a[0];
    }
    let mut factorial = 1.0;
    for (n, x) in l.iter_mut().enumerate().skip(1) {
        factorial *= n as f64;
        *x *= factorial;
    }
    Ok(l)
}

/// `b² + (log Δ)''` with the second derivative taken from the Taylor
/// series rather than a difference quotient.
pub fn k_squared_taylor(p: &EffectiveParams, s: f64, t: f64) -> Result<f64> {
    let l = log_delta_derivatives(p, s, t)?;
    Ok(p.b() * p.b() + l[2])
}

/// Error budget for [`k_squared_reconstruct`] at step `h`: a floor, the
/// leading truncation term `h²·(log Δ)''''/12`, and rounding in the
/// quotient, which grows with the conditioning of `Δ`.
pub fn difference_quotient_bound(p: &EffectiveParams, s: f64, t: f64, h: f64) -> Result<f64> {
    let l4 = log_delta_derivatives(p, s, t)?[4];
    let cond = gl_condition(&gl_coefficients(p, t), s);
    Ok(5.0 * (h * h).max(1e-8)
        + 1.05 * h * h * l4.abs() / 12.0
        + 40.0 * f64::EPSILON * cond / (h * h))
}

/// One randomized evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathwaySample {
    pub params: EffectiveParams,
    pub s: f64,
    pub t: f64,
}

/// `count` points from [`EffectiveParams::random_regular`], each with
/// `t ∈ [0, 0.1)` and `s` within `3/β̃` of the envelope centre.
pub fn random_pathway_samples(seed: u64, count: usize) -> Vec<PathwaySample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let params = EffectiveParams::random_regular(&mut rng);
            let t = rng.gen_range(0.0..0.1);
            let s = params.envelope_center(t) + rng.gen_range(-3.0..3.0) / params.beta();
            PathwaySample { params, s, t }
        })
        .collect()
}

/// Largest pairwise disagreement between the explicit formula, the 2×2
/// determinant formula and `√k²` from the 4×4 oracle (signed like the
/// explicit value). `quotient_excess` is the largest ratio of the
/// difference-quotient error to [`difference_quotient_bound`] at `step`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PathwayReport {
    pub samples: usize,
    pub explicit_vs_determinant: f64,
    pub explicit_vs_oracle: f64,
    pub determinant_vs_oracle: f64,
    pub step: f64,
    pub quotient_excess: f64,
}

pub fn pathway_agreement(samples: &[PathwaySample], step: f64) -> Result<PathwayReport> {
    let mut r = PathwayReport {
        samples: samples.len(),
        step,
        ..Default::default()
    };
    for x in samples {
        let (p, s, t) = (&x.params, x.s, x.t);
        let k = breather_eval(p, s, t)?;
        let kd = breather_det_eval(p, s, t)?;
        let k2 = k_squared_taylor(p, s, t)?;
        let ko = k.signum() * k2.max(0.0).sqrt();
        r.explicit_vs_determinant = r.explicit_vs_determinant.max((k - kd).abs());
        r.explicit_vs_oracle = r.explicit_vs_oracle.max((k - ko).abs());
        r.determinant_vs_oracle = r.determinant_vs_oracle.max((kd - ko).abs());
        let fd = k_squared_reconstruct(p, s, t, step)?;
        let excess = (fd - k * k).abs() / difference_quotient_bound(p, s, t, step)?;
        r.quotient_excess = r.quotient_excess.max(excess);
    }
    Ok(r)
}
