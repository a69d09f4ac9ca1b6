//! Discrete-spectrum data and the effective breather parameters.
//!
//! A breather over the background `b` is attached to the pair of zeros
//! `λ₁ = α + iβ`, `λ₂ = -conj(λ₁)` of the scattering coefficient. The
//! closed-form solutions are written in terms of `ζ = √(λ² + b²)` taken on the
//! sheet `Im ζ > 0`, whose real and imaginary parts are the effective carrier
//! frequency `α̃` and decay rate `β̃`. Together with the velocity coefficients
//! `γ̃`, `δ̃` and the two phases carried by the norming constant they form
//! [`EffectiveParams`], the input of every evaluator in this crate.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square root on the upper sheet: `Im w ≥ 0`, and `Re w ≥ 0` on the real axis.
///
/// The polar angle is taken in `[0, 2π)` and halved, so the result never
/// leaves the closed upper half plane. `z = 0` is the branch point and maps
/// to `0`.
pub fn principal_sqrt_upper(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut theta = z.im.atan2(z.re);
    if theta < 0.0 {
        theta += 2.0 * std::f64::consts::PI;
    }
    Complex64::from_polar(r.sqrt(), 0.5 * theta)
}

/// Raw zeros `λ₁ = alpha + i·beta` and background `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub alpha: f64,
    pub beta: f64,
    pub b: f64,
}

impl SpectralParams {
    pub fn new(alpha: f64, beta: f64, b: f64) -> Result<Self> {
        let p = Self { alpha, beta, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { alpha, beta, b } = *self;
        if !(alpha.is_finite() && beta.is_finite() && b.is_finite()) {
            return Err(Error::ParameterDomain("non-finite spectral data".into()));
        }
        if alpha < 0.0 || b < 0.0 {
            return Err(Error::ParameterDomain(format!(
                "alpha = {alpha} and b = {b} must be non-negative"
            )));
        }
        if beta <= 0.0 {
            return Err(Error::ParameterDomain(format!(
                "beta = {beta} must be positive"
            )));
        }
        if alpha * alpha + beta * beta <= b * b {
            return Err(Error::ParameterDomain(format!(
                "alpha^2 + beta^2 = {} must exceed b^2 = {}",
                alpha * alpha + beta * beta,
                b * b
            )));
        }
        Ok(())
    }

    pub fn lambda(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }

    /// `ζ₁ = √(λ₁² + b²)` on the upper sheet.
    pub fn zeta(&self) -> Complex64 {
        let l = self.lambda();
        principal_sqrt_upper(l * l + self.b * self.b)
    }
}

/// Envelope speed coefficient `γ̃ = 8β̃(3α̃² − β̃²) − 12b²β̃`.
pub fn gamma_coefficient(alpha: f64, beta: f64, b: f64) -> f64 {
    8.0 * beta * (3.0 * alpha * alpha - beta * beta) - 12.0 * b * b * beta
}

/// Carrier speed coefficient `δ̃ = 8α̃(α̃² − 3β̃²) − 12b²α̃`.
pub fn delta_coefficient(alpha: f64, beta: f64, b: f64) -> f64 {
    8.0 * alpha * (alpha * alpha - 3.0 * beta * beta) - 12.0 * b * b * alpha
}

/// Norming modulus `|m|` that makes `ψ = 0`.
pub fn centered_norming_modulus(alpha_eff: f64, beta_eff: f64, b: f64) -> f64 {
    let r = alpha_eff * alpha_eff + beta_eff * beta_eff;
    2.0 * beta_eff * (r / (r - b * b)).sqrt() / alpha_eff
}

/// Effective breather parameters `(α̃, β̃, γ̃, δ̃, b, φ, ψ)`.
///
/// `γ̃` and `δ̃` are always derived from `(α̃, β̃, b)`; `φ` is the argument of
/// the norming constant and `ψ` the envelope shift it induces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    b: f64,
    phi: f64,
    psi: f64,
}

impl EffectiveParams {
    /// Builds the parameter set directly in effective form.
    pub fn new(alpha: f64, beta: f64, b: f64, phi: f64, psi: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha", alpha),
            ("beta", beta),
            ("b", b),
            ("phi", phi),
            ("psi", psi),
        ] {
            if !v.is_finite() {
                return Err(Error::ParameterDomain(format!("{name} is not finite")));
            }
        }
        if beta <= 0.0 {
            return Err(Error::Degenerate(format!(
                "effective decay rate beta = {beta} must be positive"
            )));
        }
        if alpha <= 0.0 {
            return Err(Error::Degenerate(format!(
                "effective carrier frequency alpha = {alpha} must be positive \
                 (the zero-frequency limit is the double pole solution)"
            )));
        }
        if alpha * alpha + beta * beta <= b * b {
            return Err(Error::ParameterDomain(format!(
                "alpha^2 + beta^2 = {} must exceed b^2 = {}",
                alpha * alpha + beta * beta,
                b * b
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma: gamma_coefficient(alpha, beta, b),
            delta: delta_coefficient(alpha, beta, b),
            b,
            phi,
            psi,
        })
    }

    /// Maps raw spectral data and a norming constant `m = m_abs·e^{i·m_arg}`
    /// to effective parameters.
    pub fn from_raw(raw: SpectralParams, m_abs: f64, m_arg: f64) -> Result<Self> {
        if !(m_abs > 0.0 && m_abs.is_finite()) {
            return Err(Error::ParameterDomain(format!(
                "|m| = {m_abs} must be positive"
            )));
        }
        let (alpha, beta) = raw_to_effective(raw)?;
        let r = alpha * alpha + beta * beta;
        let b = raw.b;
        let e2 = (1.0 - b * b / r) * alpha * alpha * m_abs * m_abs / (4.0 * beta * beta);
        let psi = -0.5 * e2.ln();
        Self::new(alpha, beta, b, m_arg, psi)
    }

    /// Raw data with the centring norming modulus (`ψ = 0`) and `arg m = m_arg`.
    pub fn from_raw_centered(raw: SpectralParams, m_arg: f64) -> Result<Self> {
        let (alpha, beta) = raw_to_effective(raw)?;
        let m_abs = centered_norming_modulus(alpha, beta, raw.b);
        let mut p = Self::from_raw(raw, m_abs, m_arg)?;
        p.psi = 0.0;
        Ok(p)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn phi(&self) -> f64 {
        self.phi
    }
    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn with_phases(&self, phi: f64, psi: f64) -> Self {
        Self { phi, psi, ..*self }
    }

    /// `ζ₁ = α̃ + iβ̃`.
    pub fn zeta(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }

    /// `λ₁` recovered from `λ₁² = ζ₁² − b²`, on the branch with `Re λ₁ ≥ 0`.
    pub fn lambda(&self) -> Complex64 {
        let z = self.zeta();
        let l = (z * z - self.b * self.b).sqrt();
        if l.re < 0.0 {
            -l
        } else {
            l
        }
    }

    /// Norming modulus `|m|` implied by `ψ`.
    pub fn norming_modulus(&self) -> f64 {
        let r = self.alpha * self.alpha + self.beta * self.beta;
        2.0 * self.beta * (-self.psi).exp() / (self.alpha * (1.0 - self.b * self.b / r).sqrt())
    }

    /// Complex norming constant `m(λ₁) = |m|·e^{iφ}`.
    pub fn norming_constant(&self) -> Complex64 {
        Complex64::from_polar(self.norming_modulus(), self.phi)
    }

    /// Position of the envelope maximum region, where `2β̃s + γ̃t + ψ = 0`.
    pub fn envelope_center(&self, t: f64) -> f64 {
        -(self.gamma * t + self.psi) / (2.0 * self.beta)
    }

    /// Sufficient condition for a regular breather: the oscillating term in
    /// `f̃` can never cancel `cosh`.
    pub fn is_regular(&self) -> bool {
        let r = self.alpha * self.alpha + self.beta * self.beta;
        self.b * self.beta / (self.alpha * (r - self.b * self.b).sqrt()) < 1.0
    }

    /// Draws a regular parameter set with `α̃ ∈ [0.3, 4)`, `β̃ ∈ [0.3, 2)`,
    /// `b ∈ [0, 1)`, `φ ∈ [−π, π)`, `ψ ∈ [−1, 1)`, rejecting irregular draws.
    pub fn random_regular<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let alpha = rng.gen_range(0.3..4.0);
            let beta = rng.gen_range(0.3..2.0);
            let b = rng.gen_range(0.0..1.0);
            let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let psi = rng.gen_range(-1.0..1.0);
            if let Ok(p) = Self::new(alpha, beta, b, phi, psi) {
                if p.is_regular() {
                    return p;
                }
            }
        }
    }
}

fn raw_to_effective(raw: SpectralParams) -> Result<(f64, f64)> {
    if !(raw.beta > 0.0) || raw.alpha < 0.0 || raw.b < 0.0 {
        return Err(Error::ParameterDomain(format!(
            "invalid spectral data {raw:?}"
        )));
    }
    let z = raw.zeta();
    if z.im <= 0.0 {
        return Err(Error::Degenerate(format!(
            "beta_eff = {} vanishes for {raw:?}; no spatial decay",
            z.im
        )));
    }
    if z.norm_sqr() <= raw.b * raw.b {
        return Err(Error::ParameterDomain(format!(
            "alpha_eff^2 + beta_eff^2 = {} must exceed b^2 = {}",
            z.norm_sqr(),
            raw.b * raw.b
        )));
    }
    Ok((z.re, z.im))
}

/// Effective parameters from raw data and a norming constant.
pub fn effective_params(raw: SpectralParams, m_abs: f64, m_arg: f64) -> Result<EffectiveParams> {
    EffectiveParams::from_raw(raw, m_abs, m_arg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent of the polar route: the algebraic half-angle formulas.
    fn sqrt_oracle(z: Complex64) -> Complex64 {
        let r = z.norm();
        let re = ((r + z.re) / 2.0).sqrt();
        let im = ((r - z.re) / 2.0).sqrt();
        if z.im < 0.0 {
            Complex64::new(-re, im)
        } else {
            Complex64::new(re, im)
        }
    }

    #[test]
    fn sqrt_examples() {
        let w = principal_sqrt_upper(Complex64::new(1.0, 2.0));
        let o = sqrt_oracle(Complex64::new(1.0, 2.0));
        assert!((w - o).norm() < 1e-15);
        assert!((w.re - 1.272_019_649_514_069).abs() < 1e-12);
        assert!((w.im - 0.786_151_377_757_423_3).abs() < 1e-12);
        assert!((w * w - Complex64::new(1.0, 2.0)).norm() < 1e-14 * 5f64.sqrt());

        let w = principal_sqrt_upper(Complex64::new(-1.0, 0.0));
        assert!((w - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let w = principal_sqrt_upper(Complex64::new(4.0, 0.0));
        assert!((w - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert_eq!(
            principal_sqrt_upper(Complex64::new(0.0, 0.0)),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn sqrt_lower_half_plane_lands_upper() {
        let z = Complex64::new(3.0, -4.0);
        let w = principal_sqrt_upper(z);
        assert!(w.im >= 0.0);
        assert!((w * w - z).norm() < 1e-14 * z.norm());
        assert!((w - Complex64::new(-2.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_background_identities() {
        let raw = SpectralParams::new(1.0, 1.0, 0.0).unwrap();
        let p = effective_params(raw, 2.0, 0.0).unwrap();
        assert!((p.alpha() - 1.0).abs() < 1e-14);
        assert!((p.beta() - 1.0).abs() < 1e-14);
        assert!((p.gamma() - 16.0).abs() < 1e-12);
        assert!((p.delta() + 16.0).abs() < 1e-12);
        assert!(p.psi().abs() < 1e-14);
    }

    #[test]
    fn unit_background_example() {
        let raw = SpectralParams::new(1.0, 1.0, 1.0).unwrap();
        let p = effective_params(raw, 1.0, 0.0).unwrap();
        let z = sqrt_oracle(Complex64::new(1.0, 2.0));
        assert!((p.alpha() - z.re).abs() < 1e-14);
        assert!((p.beta() - z.im).abs() < 1e-14);
        // Direct substitution into 4iζ(2λ² − b²) = −γ̃ + iδ̃ with λ² = 2i.
        let exponent = Complex64::new(0.0, 4.0) * z * (Complex64::new(0.0, 4.0) - 1.0);
        assert!((p.gamma() + exponent.re).abs() < 1e-12);
        assert!((p.delta() - exponent.im).abs() < 1e-12);
        assert!((p.gamma() - 17.21).abs() < 5e-3);
        // The carrier coefficient is −17.667; −21.30 would need a different b² term.
        assert!((p.delta() + 17.6665).abs() < 5e-4);
    }

    #[test]
    fn domain_violation_rejected() {
        assert!(matches!(
            SpectralParams::new(0.1, 1.0, 1.1),
            Err(Error::ParameterDomain(_))
        ));
        // Bypassing the raw check still hits the effective check.
        let raw = SpectralParams {
            alpha: 0.1,
            beta: 1.0,
            b: 1.1,
        };
        assert!(matches!(
            effective_params(raw, 1.0, 0.0),
            Err(Error::ParameterDomain(_))
        ));
    }

    #[test]
    fn degenerate_zero_decay() {
        let raw = SpectralParams {
            alpha: 0.0,
            beta: 1.0,
            b: 1.5,
        };
        assert!(matches!(
            effective_params(raw, 1.0, 0.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn centered_modulus_gives_zero_shift() {
        let raw = SpectralParams::new(0.7, 1.3, 0.4).unwrap();
        let z = raw.zeta();
        let m = centered_norming_modulus(z.re, z.im, raw.b);
        let p = effective_params(raw, m, 0.3).unwrap();
        assert!(p.psi().abs() < 1e-13);
        assert!((p.norming_modulus() - m).abs() < 1e-12 * m);
        assert_eq!(p.phi(), 0.3);
    }

    #[test]
    fn conjugate_zero_gives_mirrored_root() {
        let raw = SpectralParams::new(0.8, 0.6, 0.5).unwrap();
        let l2 = -raw.lambda().conj();
        let z2 = principal_sqrt_upper(l2 * l2 + raw.b * raw.b);
        let z1 = raw.zeta();
        assert!((z2.re + z1.re).abs() < 1e-14);
        assert!((z2.im - z1.im).abs() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn round_trip(alpha in 0.01f64..5.0, beta in 0.01f64..5.0, frac in 0.0f64..0.99) {
            let b = frac * (alpha * alpha + beta * beta).sqrt();
            let raw = SpectralParams::new(alpha, beta, b).unwrap();
            if let Ok(p) = effective_params(raw, 1.0, 0.0) {
                let z = p.zeta();
                let l = raw.lambda();
                let lhs = z * z - b * b;
                prop_assert!((lhs - l * l).norm() <= 1e-12 * (l * l).norm().max(b * b));
                prop_assert!((p.lambda() - l).norm() <= 1e-10 * l.norm());
            }
        }

        #[test]
        fn zero_background_reduction(alpha in 0.01f64..5.0, beta in 0.01f64..5.0) {
            let p = effective_params(SpectralParams::new(alpha, beta, 0.0).unwrap(), 1.0, 0.0).unwrap();
            prop_assert!((p.alpha() - alpha).abs() <= 1e-12 * alpha.max(1.0));
            prop_assert!((p.beta() - beta).abs() <= 1e-12 * beta.max(1.0));
            let g = 8.0 * beta * (3.0 * alpha * alpha - beta * beta);
            let d = 8.0 * alpha * (alpha * alpha - 3.0 * beta * beta);
            prop_assert!((p.gamma() - g).abs() <= 1e-12 * (1.0 + g.abs()) * 10.0);
            prop_assert!((p.delta() - d).abs() <= 1e-12 * (1.0 + d.abs()) * 10.0);
        }

        #[test]
        fn sqrt_squares_back(re in -1e3f64..1e3, im in -1e3f64..1e3) {
            let z = Complex64::new(re, im);
            prop_assume!(z.norm() > 1e-12);
            let w = principal_sqrt_upper(z);
            prop_assert!(w.im >= 0.0);
            prop_assert!((w * w - z).norm() <= 1e-14 * z.norm());
        }
    }
}
