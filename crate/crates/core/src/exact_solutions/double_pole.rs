use serde::{Deserialize, Serialize};

use super::{arctan_log_derivative, scaled_hyperbolics, Solution};
use crate::error::{Error, Result};

/// Zero-frequency limit of the breather: amplitude `beta`, background `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoublePoleParams {
    pub beta: f64,
    pub b: f64,
}

impl DoublePoleParams {
    pub fn new(beta: f64, b: f64) -> Result<Self> {
        let p = Self { beta, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite() && self.b.is_finite()) {
            return Err(Error::ParameterDomain(format!(
                "invalid double pole {self:?}"
            )));
        }
        if self.beta * self.beta <= self.b * self.b {
            return Err(Error::ParameterDomain(format!(
                "double pole needs beta^2 > b^2, got beta = {}, b = {}",
                self.beta, self.b
            )));
        }
        Ok(())
    }

    /// Centre of the pair, where `u = β(2s − 4(2β² + 3b²)t)` vanishes.
    pub fn center(&self, t: f64) -> f64 {
        2.0 * (2.0 * self.beta * self.beta + 3.0 * self.b * self.b) * t
    }
}

/// `k = b + 2·∂ₛ arctan(G̃/F̃)` with
///
/// ```text
/// G̃ = β(1 − 2βX)/√(β²−b²) + bβ(cosh u − sinh u)/(β²−b²)
/// F̃ = cosh u + 2bβX/√(β²−b²)
/// X = s − 6(2β²+b²)t,  u = β(2s − 4(2β²+3b²)t)
/// ```
pub fn double_pole_eval(p: &DoublePoleParams, s: f64, t: f64) -> Result<f64> {
    let DoublePoleParams { beta, b } = *p;
    let q = beta * beta - b * b;
    let r = q.sqrt();
    let x = s - 6.0 * (2.0 * beta * beta + b * b) * t;
    let u = beta * (2.0 * s - 4.0 * (2.0 * beta * beta + 3.0 * b * b) * t);
    let (cosh, sinh, exp_neg, scale) = scaled_hyperbolics(u);

    let g = beta * (1.0 - 2.0 * beta * x) / r * scale + b * beta / q * exp_neg;
    let gp = -2.0 * beta * beta / r * scale - 2.0 * b * beta * beta / q * exp_neg;
    let f = cosh + 2.0 * b * beta * x / r * scale;
    let fp = 2.0 * beta * sinh + 2.0 * b * beta / r * scale;

    arctan_log_derivative(g, gp, f, fp)
        .map(|d| b + d)
        .ok_or(Error::Singularity { s, t })
}

/// Hump phases `(δ₊, δ₋)`, with
/// `δ± = β·log(12β·((β²−b²)/(β²+b²))^{±1/2}·(4β²+2b²)·t)`.
pub fn hump_phases(p: &DoublePoleParams, t: f64) -> Result<(f64, f64)> {
    let DoublePoleParams { beta, b } = *p;
    let ratio = ((beta * beta - b * b) / (beta * beta + b * b)).sqrt();
    let base = 12.0 * beta * (4.0 * beta * beta + 2.0 * b * b) * t;
    let (arg_plus, arg_minus) = (base * ratio, base / ratio);
    if !(arg_plus > 0.0 && arg_minus > 0.0) || !arg_plus.is_finite() {
        return Err(Error::Domain(format!(
            "hump phase logarithm needs a positive argument; t = {t} gives {arg_plus}, {arg_minus}"
        )));
    }
    Ok((beta * arg_plus.ln(), beta * arg_minus.ln()))
}

/// Large-time form `b + A·[sech(u − δ₊) − sech(u − δ₋)]`, `A = 2β²/√(β²+b²)`,
/// taken literally (both humps shifted by their phase with the same sign).
pub fn double_pole_asymptotic_eval(p: &DoublePoleParams, s: f64, t: f64) -> Result<f64> {
    let DoublePoleParams { beta, b } = *p;
    let (dp, dm) = hump_phases(p, t)?;
    let u = beta * (2.0 * s - 4.0 * (2.0 * beta * beta + 3.0 * b * b) * t);
    let amp = 2.0 * beta * beta / (beta * beta + b * b).sqrt();
    let sech = |x: f64| 1.0 / x.cosh();
    Ok(b + amp * (sech(u - dp) - sech(u - dm)))
}

/// How the two phases in the asymptotic form place the humps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HumpReading {
    /// Humps at `u = δ₊` and `u = δ₋`: constant separation.
    Literal,
    /// Humps at `u = δ₊` and `u = −δ₋`: separation grows like `log t`.
    OppositeSigns,
}

/// Predicted distance in `s` between the two humps under a reading.
pub fn predicted_separation(p: &DoublePoleParams, t: f64, reading: HumpReading) -> Result<f64> {
    let (dp, dm) = hump_phases(p, t)?;
    Ok(match reading {
        HumpReading::Literal => (dp - dm).abs() / (2.0 * p.beta),
        HumpReading::OppositeSigns => (dp + dm).abs() / (2.0 * p.beta),
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DoublePole(pub DoublePoleParams);

impl Solution for DoublePole {
    fn background(&self) -> f64 {
        self.0.b
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        double_pole_eval(&self.0, s, t)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DoublePoleAsymptotic(pub DoublePoleParams);

impl Solution for DoublePoleAsymptotic {
    fn background(&self) -> f64 {
        self.0.b
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        double_pole_asymptotic_eval(&self.0, s, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn far_field_is_background() {
        let p = DoublePoleParams::new(1.0, 0.3).unwrap();
        for t in [0.0, 5.0] {
            let c = p.center(t);
            for s in [c - 40.0, c + 40.0, c - 1e4, c + 1e4] {
                let k = double_pole_eval(&p, s, t).unwrap();
                assert!((k - 0.3).abs() < 1e-8, "s = {s}: {k}");
            }
        }
    }

    #[test]
    fn zero_background_reduction() {
        // 2∂ₛ arctan((1 − 2s)/cosh 2s) at s = 1, by a fine central difference.
        let phase = |s: f64| (1.0 - 2.0 * s).atan2((2.0 * s).cosh());
        let h = 1e-4;
        let fd = 2.0 * (phase(1.0 + h) - phase(1.0 - h)) / (2.0 * h);
        let k = double_pole_eval(&DoublePoleParams::new(1.0, 0.0).unwrap(), 1.0, 0.0).unwrap();
        assert!((k - fd).abs() < 1e-7, "{k} vs {fd}");
    }

    #[test]
    fn rejects_small_amplitude() {
        assert!(DoublePoleParams::new(0.3, 0.3).is_err());
        assert!(DoublePoleParams::new(0.2, 0.3).is_err());
    }

    #[test]
    fn phases_coincide_without_background() {
        let p = DoublePoleParams::new(1.3, 0.0).unwrap();
        let (dp, dm) = hump_phases(&p, 7.0).unwrap();
        let expected = 1.3 * (48.0 * 1.3f64.powi(3) * 7.0).ln();
        assert!((dp - expected).abs() < 1e-12);
        assert!((dm - expected).abs() < 1e-12);
    }

    #[test]
    fn phase_difference_is_time_independent() {
        let p = DoublePoleParams::new(1.0, 0.3).unwrap();
        let expected = (0.91f64 / 1.09).ln();
        for t in [0.1, 5.0, 80.0] {
            let (dp, dm) = hump_phases(&p, t).unwrap();
            assert!((dp - dm - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn asymptotic_needs_positive_time() {
        let p = DoublePoleParams::new(1.0, 0.3).unwrap();
        assert!(matches!(
            double_pole_asymptotic_eval(&p, 0.0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            double_pole_asymptotic_eval(&p, 0.0, -1.0),
            Err(Error::Domain(_))
        ));
        assert!(double_pole_asymptotic_eval(&p, 0.0, 1.0).is_ok());
    }

    #[test]
    fn readings_differ_in_growth() {
        let p = DoublePoleParams::new(1.0, 0.3).unwrap();
        let l1 = predicted_separation(&p, 10.0, HumpReading::Literal).unwrap();
        let l2 = predicted_separation(&p, 100.0, HumpReading::Literal).unwrap();
        assert!((l1 - l2).abs() < 1e-12);
        let o1 = predicted_separation(&p, 10.0, HumpReading::OppositeSigns).unwrap();
        let o2 = predicted_separation(&p, 100.0, HumpReading::OppositeSigns).unwrap();
        assert!((o2 - o1 - 10f64.ln()).abs() < 1e-12);
    }
}
