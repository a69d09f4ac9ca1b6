//! Integrating-factor Fourier solver for the Gardner form
//! `u_t + u_sss + 6b²u_s + 12b·u·u_s + 6u²u_s = 0` on a periodic cell.
//!
//! The linear part is exact in each mode; the flux `6b·u² + 2u³` is
//! advanced with classical RK4 in the interaction picture (Lawson).

use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_solutions::{sample_field, Field, GridSpec, Solution};
use crate::verification::DECAY_TOL;

/// Dispersive step limit: `dt ≤ STABILITY_C·(span/n)³`.
pub const STABILITY_C: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub n_modes: usize,
    pub domain_span: f64,
    pub dt: f64,
    pub t_final: f64,
    pub background: f64,
    #[serde(default = "default_dealias")]
    pub dealias_fraction: f64,
}

fn default_dealias() -> f64 {
    2.0 / 3.0
}

impl SolverConfig {
    pub fn new(n_modes: usize, domain_span: f64, dt: f64, t_final: f64, background: f64) -> Self {
        Self {
            n_modes,
            domain_span,
            dt,
            t_final,
            background,
            dealias_fraction: default_dealias(),
        }
    }

    pub fn with_dealias(mut self, fraction: f64) -> Self {
        self.dealias_fraction = fraction;
        self
    }

    pub fn max_dt(&self) -> f64 {
        STABILITY_C * (self.domain_span / self.n_modes as f64).powi(3)
    }

    /// The periodic grid `[−span/2, span/2)` the solver works on.
    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::periodic(-0.5 * self.domain_span, self.domain_span, self.n_modes)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_modes < 4 || !self.n_modes.is_power_of_two() {
            return Err(Error::Config(format!(
                "n_modes must be a power of two >= 4, got {}",
                self.n_modes
            )));
        }
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.domain_span) || !positive(self.dt) || !positive(self.t_final) {
            return Err(Error::Config(format!(
                "span, dt and t_final must be positive, got {}, {}, {}",
                self.domain_span, self.dt, self.t_final
            )));
        }
        if !self.background.is_finite() {
            return Err(Error::Config("background must be finite".into()));
        }
        if !(self.dealias_fraction > 0.0 && self.dealias_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "dealias fraction must lie in (0, 1], got {}",
                self.dealias_fraction
            )));
        }
        if self.dt > self.max_dt() {
            return Err(Error::Config(format!(
                "dt = {} exceeds the dispersive limit {} = {}·(span/n)³",
                self.dt,
                self.max_dt(),
                STABILITY_C
            )));
        }
        Ok(())
    }
}

/// Spectral state and buffers for one run.
struct Integrator {
    n: usize,
    b: f64,
    wavenumber: Vec<f64>,
    omega: Vec<f64>,
    mask: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl Integrator {
    fn new(cfg: &SolverConfig) -> Self {
        let n = cfg.n_modes;
        let mut planner = FftPlanner::new();
        let wavenumber: Vec<f64> = (0..n)
            .map(|j| {
                let m = if j <= n / 2 {
                    j as f64
                } else {
                    j as f64 - n as f64
                };
                2.0 * std::f64::consts::PI * m / cfg.domain_span
            })
            .collect();
        let k_max = wavenumber.iter().fold(0.0, |m: f64, k| m.max(k.abs()));
        let cutoff = cfg.dealias_fraction * k_max;
        let b = cfg.background;
        Self {
            n,
            b,
            omega: wavenumber
                .iter()
                .map(|k| k * k * k - 6.0 * b * b * k)
                .collect(),
            mask: wavenumber
                .iter()
                .enumerate()
                .map(|(j, k)| {
                    if k.abs() <= cutoff && !(n.is_multiple_of(2) && j == n / 2) {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect(),
            wavenumber,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
            scratch: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    fn spectral(&self, u: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = u.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.fwd.process(&mut buf);
        buf
    }

    fn physical(&mut self, uh: &[Complex64]) -> Vec<f64> {
        self.scratch.copy_from_slice(uh);
        self.inv.process(&mut self.scratch);
        let n = self.n as f64;
        self.scratch.iter().map(|c| c.re / n).collect()
    }

    /// `−ik·mask·F[6b·u² + 2u³]` with `u = F⁻¹[mask·û]`.
    fn nonlinear(&mut self, uh: &[Complex64]) -> Vec<Complex64> {
        let n = self.n as f64;
        for ((s, &x), &m) in self.scratch.iter_mut().zip(uh).zip(&self.mask) {
            *s = x * m;
        }
        self.inv.process(&mut self.scratch);
        let b = self.b;
        for s in self.scratch.iter_mut() {
            let u = s.re / n;
            *s = Complex64::new(6.0 * b * u * u + 2.0 * u * u * u, 0.0);
        }
        self.fwd.process(&mut self.scratch);
        self.scratch
            .iter()
            .zip(&self.wavenumber)
            .zip(&self.mask)
            .map(|((f, &k), &m)| Complex64::new(0.0, -k * m) * f)
            .collect()
    }

    /// One Lawson RK4 step of size `dt`.
    fn step(&mut self, uh: &mut [Complex64], dt: f64) {
        let half: Vec<Complex64> = self
            .omega
            .iter()
            .map(|w| Complex64::from_polar(1.0, w * dt / 2.0))
            .collect();
        let a = self.nonlinear(uh);
        let stage: Vec<Complex64> = (0..self.n)
            .map(|j| half[j] * (uh[j] + 0.5 * dt * a[j]))
            .collect();
        let b = self.nonlinear(&stage);
        let stage: Vec<Complex64> = (0..self.n)
            .map(|j| half[j] * uh[j] + 0.5 * dt * b[j])
            .collect();
        let c = self.nonlinear(&stage);
        let stage: Vec<Complex64> = (0..self.n)
            .map(|j| half[j] * half[j] * uh[j] + dt * half[j] * c[j])
            .collect();
        let d = self.nonlinear(&stage);
        for j in 0..self.n {
            let e = half[j];
            let e2 = e * e;
            uh[j] = e2 * uh[j] + dt / 6.0 * (e2 * a[j] + 2.0 * e * (b[j] + c[j]) + d[j]);
        }
    }
}

fn check_initial(u0: &Field, cfg: &SolverConfig) -> Result<()> {
    cfg.validate()?;
    if u0.n != cfg.n_modes {
        return Err(Error::Config(format!(
            "initial field has {} samples for {} modes",
            u0.n, cfg.n_modes
        )));
    }
    let period = u0.grid().period();
    if (period - cfg.domain_span).abs() > 1e-9 * cfg.domain_span {
        return Err(Error::Config(format!(
            "initial field covers a period of {period}, expected {}",
            cfg.domain_span
        )));
    }
    if (u0.background - cfg.background).abs() > 1e-15 * (1.0 + cfg.background.abs()) {
        return Err(Error::Config(format!(
            "field background {} differs from configured {}",
            u0.background, cfg.background
        )));
    }
    let deviation = u0.endpoint_deviation();
    if !(deviation < DECAY_TOL) {
        return Err(Error::GridTooSmall { deviation });
    }
    Ok(())
}

fn l_inf(u: &[f64]) -> f64 {
    u.iter().fold(0.0, |m: f64, x| m.max(x.abs()))
}

/// Evolves `u0` (samples of `k`, with `u = k − background`) and returns the
/// field at each checkpoint. Checkpoints must be increasing, in
/// `[0, t_final]`; each is reached exactly by shortening the last step.
pub fn evolve_with_checkpoints(
    u0: &Field,
    cfg: &SolverConfig,
    checkpoints: &[f64],
) -> Result<Vec<Field>> {
    check_initial(u0, cfg)?;
    if checkpoints.windows(2).any(|w| w[1] < w[0])
        || checkpoints
            .iter()
            .any(|&t| !(0.0..=cfg.t_final).contains(&t))
    {
        return Err(Error::Config(format!(
            "checkpoints must be increasing within [0, {}]",
            cfg.t_final
        )));
    }
    let mut integ = Integrator::new(cfg);
    let u = u0.deviation();
    let limit = 10.0 * l_inf(&u).max(f64::MIN_POSITIVE);
    let mut uh = integ.spectral(&u);
    let mut t = 0.0;
    let mut steps_taken: u64 = 0;
    let mut out = Vec::with_capacity(checkpoints.len());
    for &target in checkpoints {
        // Count steps from the origin so rounding does not accumulate in t.
        let full = ((target / cfg.dt) * (1.0 + 1e-12)).floor() as u64;
        while steps_taken < full {
            integ.step(&mut uh, cfg.dt);
            steps_taken += 1;
            t = steps_taken as f64 * cfg.dt;
            let size = l_inf(&integ.physical(&uh));
            if !(size <= limit) {
                return Err(Error::Instability { t, l_inf: size });
            }
        }
        let rest = target - t;
        if steps_taken == 0 && rest == 0.0 {
            out.push(u0.clone());
            continue;
        }
        let mut snapshot = uh.clone();
        if rest > 1e-14 * cfg.dt.max(target) {
            integ.step(&mut snapshot, rest);
        }
        let values: Vec<f64> = integ
            .physical(&snapshot)
            .iter()
            .map(|v| v + cfg.background)
            .collect();
        out.push(Field::new(u0.grid(), target, cfg.background, values)?);
    }
    Ok(out)
}

/// Evolves `u0` to `cfg.t_final`.
pub fn evolve_gardner(u0: &Field, cfg: &SolverConfig) -> Result<Field> {
    let mut fields = evolve_with_checkpoints(u0, cfg, &[cfg.t_final])?;
    Ok(fields.pop().expect("one checkpoint"))
}

/// Sum of periodic images `b + Σ_{|j| ≤ images} (k(s + jL, t) − b)`, the
/// exact counterpart of a solution on a cell of length `L`.
pub struct Periodized<S> {
    pub inner: S,
    pub period: f64,
    pub images: i32,
}

impl<S: Solution> Solution for Periodized<S> {
    fn background(&self) -> f64 {
        self.inner.background()
    }
    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        let b = self.inner.background();
        let mut sum = 0.0;
        for j in -self.images..=self.images {
            sum += self.inner.eval(s + j as f64 * self.period, t)? - b;
        }
        Ok(b + sum)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckpointError {
    pub t: f64,
    pub l_inf: f64,
    pub l2: f64,
}

/// Runs the solver once from the exact data at `t = 0` and compares with
/// the (periodized) exact solution at each checkpoint.
pub fn error_vs_exact<S: Solution>(
    cfg: &SolverConfig,
    exact: S,
    checkpoints: &[f64],
) -> Result<Vec<CheckpointError>> {
    if (exact.background() - cfg.background).abs() > 0.0 {
        return Err(Error::Config(format!(
            "solution background {} differs from configured {}",
            exact.background(),
            cfg.background
        )));
    }
    let grid = cfg.grid()?;
    let periodic = Periodized {
        inner: exact,
        period: cfg.domain_span,
        images: 2,
    };
    let u0 = sample_field(&periodic, grid, 0.0)?;
    let fields = evolve_with_checkpoints(&u0, cfg, checkpoints)?;
    let h = grid.spacing();
    fields
        .iter()
        .map(|f| {
            let reference = sample_field(&periodic, grid, f.time)?;
            let diff: Vec<f64> = f
                .values
                .iter()
                .zip(&reference.values)
                .map(|(a, b)| a - b)
                .collect();
            Ok(CheckpointError {
                t: f.time,
                l_inf: l_inf(&diff),
                l2: (diff.iter().map(|d| d * d).sum::<f64>() * h).sqrt(),
            })
        })
        .collect()
}

/// Writes `t,l_inf,l2` rows with round-trip precision.
pub fn write_checkpoint_csv<W: Write>(mut w: W, rows: &[CheckpointError]) -> Result<()> {
    writeln!(w, "t,l_inf,l2")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.t, r.l_inf, r.l2)?;
    }
    Ok(())
}
