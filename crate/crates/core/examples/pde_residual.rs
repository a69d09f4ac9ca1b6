//! Spectral PDE residuals of the exact solutions on windows that follow
//! the wave, plus conserved quantities of the Figure-1 breather.

use mkdv_nvbc::exact_solutions::{
    Breather, Defocusing, DoublePole, DoublePoleParams, GridSpec, Solution,
    DOCUMENTED_REGULAR_TRIPLE,
};
use mkdv_nvbc::spectral_params::EffectiveParams;
use mkdv_nvbc::verification::{invariant_drift, pde_residual, Equation};

fn report(
    name: &str,
    sol: &dyn Solution,
    center: impl Fn(f64) -> f64,
    half_width: f64,
    eq: Equation,
) -> mkdv_nvbc::Result<()> {
    for t in [0.0, 0.05] {
        let grid = GridSpec::periodic_centered(center(t), half_width, 2048)?;
        let r = pde_residual(sol, grid, t, eq)?;
        println!(
            "{name:<12} t = {t:<5} l_inf {:.3e}  l2 {:.3e}",
            r.l_inf, r.l2
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fig1 = EffectiveParams::new(7.0, 1.0, 0.3, 0.0, 0.0)?;
    report(
        "breather",
        &Breather(fig1),
        |t| fig1.envelope_center(t),
        20.0,
        Equation::Focusing,
    )?;
    report(
        "gardner",
        &Breather(fig1),
        |t| fig1.envelope_center(t),
        20.0,
        Equation::Gardner,
    )?;

    let dp = DoublePoleParams::new(1.0, 0.3)?;
    report(
        "double pole",
        &DoublePole(dp),
        |t| dp.center(t),
        20.0,
        Equation::Focusing,
    )?;

    // beta = 0.5 here, so the window doubles.
    let d = DOCUMENTED_REGULAR_TRIPLE;
    report(
        "defocusing",
        &Defocusing(d),
        |t| d.envelope_center(t),
        40.0,
        Equation::Defocusing,
    )?;

    let times = [0.0, 0.025, 0.05, 0.075, 0.1];
    let drift = invariant_drift(&Breather(fig1), &times, |t| {
        GridSpec::periodic_centered(fig1.envelope_center(t), 20.0, 4096)
    })?;
    let q = drift.samples[0];
    println!(
        "\nmass {:.12}  momentum {:.12}  energy {:.12}\nlargest drift over t in [0, 0.1]: {:.2e}",
        q.mass, q.momentum, q.energy, drift.max_drift
    );
    Ok(())
}
