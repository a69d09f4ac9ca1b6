//! Closed-form solutions and the sampling container shared by all checks.
//!
//! Every evaluator has the shape `k = b + 2·∂ₛ arctan(G/F)` and is
//! differentiated in closed form:
//! `k = b + 2(G'F − GF')/(F² + G²)`.

mod breather;
mod defocusing;
mod double_pole;

pub use breather::{
    breather_det_eval, breather_eval, wadati_breather_eval, wadati_phases, Breather,
    BreatherDeterminant, WadatiBreather,
};
pub use defocusing::{
    defocusing_eval, defocusing_eval_complex, scan_regular_defocusing, Defocusing,
    DefocusingParams, DefocusingScan, DOCUMENTED_REGULAR_TRIPLE,
};
pub use double_pole::{
    double_pole_asymptotic_eval, double_pole_eval, hump_phases, predicted_separation, DoublePole,
    DoublePoleAsymptotic, DoublePoleParams, HumpReading,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Anything that can be evaluated as `k(s, t)` over a constant background.
pub trait Solution: Sync {
    fn background(&self) -> f64;
    fn eval(&self, s: f64, t: f64) -> Result<f64>;
}

impl<S: Solution + ?Sized> Solution for &S {
    fn background(&self) -> f64 {
        (**self).background()
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        (**self).eval(s, t)
    }
}

/// The constant state `k ≡ b`.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl Solution for Constant {
    fn background(&self) -> f64 {
        self.0
    }
    fn eval(&self, _s: f64, _t: f64) -> Result<f64> {
        Ok(self.0)
    }
}

/// Wraps a closure as a [`Solution`].
pub struct FnSolution<F> {
    pub background: f64,
    pub f: F,
}

impl<F> Solution for FnSolution<F>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    fn background(&self) -> f64 {
        self.background
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        (self.f)(s, t)
    }
}

/// Uniform grid `s_j = s_min + j·(s_max − s_min)/(n − 1)`, `j = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(s_min: f64, s_max: f64, n: usize) -> Result<Self> {
        let g = Self { s_min, s_max, n };
        g.validate()?;
        Ok(g)
    }

    /// `n` points covering one period `[s_min, s_min + span)`; the last
    /// sample sits one spacing short of the periodic image of the first.
    pub fn periodic(s_min: f64, span: f64, n: usize) -> Result<Self> {
        Self::new(s_min, s_min + span * (n as f64 - 1.0) / n as f64, n)
    }

    /// Periodic grid of total length `2·half_width` centred on `center`.
    pub fn periodic_centered(center: f64, half_width: f64, n: usize) -> Result<Self> {
        Self::periodic(center - half_width, 2.0 * half_width, n)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_min.is_finite() && self.s_max.is_finite()) || self.s_min >= self.s_max {
            return Err(Error::Config(format!(
                "grid needs s_min < s_max, got [{}, {}]",
                self.s_min, self.s_max
            )));
        }
        if self.n < 2 {
            return Err(Error::Config(format!("grid needs n >= 2, got {}", self.n)));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.s_max - self.s_min) / (self.n as f64 - 1.0)
    }

    /// Length of the periodic cell, `n·spacing`.
    pub fn period(&self) -> f64 {
        self.spacing() * self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        self.s_min + j as f64 * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }
}

/// A sampled waveform on a uniform grid at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub s_min: f64,
    pub s_max: f64,
    pub n: usize,
    pub time: f64,
    pub background: f64,
    pub values: Vec<f64>,
}

impl Field {
    pub fn new(grid: GridSpec, time: f64, background: f64, values: Vec<f64>) -> Result<Self> {
        grid.validate()?;
        if values.len() != grid.n {
            return Err(Error::Config(format!(
                "field has {} values for a grid of {} points",
                values.len(),
                grid.n
            )));
        }
        Ok(Self {
            s_min: grid.s_min,
            s_max: grid.s_max,
            n: grid.n,
            time,
            background,
            values,
        })
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec {
            s_min: self.s_min,
            s_max: self.s_max,
            n: self.n,
        }
    }

    pub fn spacing(&self) -> f64 {
        self.grid().spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        self.grid().points().collect()
    }

    /// Samples minus the background.
    pub fn deviation(&self) -> Vec<f64> {
        self.values.iter().map(|v| v - self.background).collect()
    }

    pub fn endpoint_deviation(&self) -> f64 {
        let first = (self.values[0] - self.background).abs();
        let last = (self.values[self.n - 1] - self.background).abs();
        first.max(last)
    }
}

/// Samples `solution` on `grid` at time `t`.
pub fn sample_field<S: Solution + ?Sized>(solution: &S, grid: GridSpec, t: f64) -> Result<Field> {
    grid.validate()?;
    let values = grid
        .points()
        .enumerate()
        .map(|(index, s)| {
            solution.eval(s, t).map_err(|e| Error::Sample {
                index,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Field::new(grid, t, solution.background(), values)
}

/// `2(G'F − GF')/(F² + G²)`, the closed-form derivative of `2·arctan(G/F)`.
#[inline]
pub(crate) fn arctan_log_derivative(g: f64, gp: f64, f: f64, fp: f64) -> Option<f64> {
    let den = f * f + g * g;
    if !(den >= 1e-300) || !den.is_finite() {
        return None;
    }
    let out = 2.0 * (gp * f - g * fp) / den;
    out.is_finite().then_some(out)
}

/// `cosh(u)`, `sinh(u)`, `e^{−u}` multiplied by `e^{−|u|}`, so that large
/// envelopes never overflow. The same factor must scale every other term.
#[inline]
pub(crate) fn scaled_hyperbolics(u: f64) -> (f64, f64, f64, f64) {
    let a = u.abs();
    let scale = (-a).exp();
    let tail = (-2.0 * a).exp();
    let cosh = 0.5 * (1.0 + tail);
    let sinh = 0.5 * u.signum() * (1.0 - tail);
    let exp_neg = (-u - a).exp();
    (cosh, sinh, exp_neg, scale)
}
