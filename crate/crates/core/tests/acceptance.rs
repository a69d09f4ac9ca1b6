//! Acceptance run: one `[PASS]`/`[FAIL]` line per criterion, non-zero exit
//! if any criterion fails.

use std::process::ExitCode;

use mkdv_nvbc::exact_solutions::{
    defocusing_eval_complex, Breather, Defocusing, DoublePoleParams, GridSpec, HumpReading,
    DOCUMENTED_REGULAR_TRIPLE,
};
use mkdv_nvbc::ism_oracle::{pathway_agreement, random_pathway_samples};
use mkdv_nvbc::spectral_params::EffectiveParams;
use mkdv_nvbc::spectral_solver::{error_vs_exact, SolverConfig};
use mkdv_nvbc::verification::{
    boundary_sweep, double_pole_asymptotics, double_pole_limit_errors, invariant_drift,
    pde_residual, wadati_limit_error, Equation,
};
use mkdv_nvbc::Result;

struct Check {
    pass: bool,
    detail: String,
}

fn fig1() -> EffectiveParams {
    EffectiveParams::new(7.0, 1.0, 0.3, 0.0, 0.0).expect("valid parameters")
}

fn residual() -> Result<Check> {
    let p = fig1();
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for t in [0.0, 0.05] {
        let grid = GridSpec::periodic_centered(p.envelope_center(t), 20.0, 2048)?;
        let r = pde_residual(&Breather(p), grid, t, Equation::Focusing)?;
        detail.push(format!("t={t}: {:.2e}", r.l_inf));
        worst = worst.max(r.l_inf);
    }
    Ok(Check {
        pass: worst < 1e-6,
        detail: detail.join(", "),
    })
}

fn three_pathways() -> Result<Check> {
    let samples = random_pathway_samples(20_240, 10_000);
    let r = pathway_agreement(&samples, 1e-4)?;
    let pass = r.explicit_vs_determinant < 1e-9
        && r.explicit_vs_oracle < 1e-6
        && r.determinant_vs_oracle < 1e-6;
    Ok(Check {
        pass,
        detail: format!(
            "{} samples: explicit/det {:.2e}, explicit/oracle {:.2e}, det/oracle {:.2e}, quotient budget used {:.2}",
            r.samples, r.explicit_vs_determinant, r.explicit_vs_oracle, r.determinant_vs_oracle, r.quotient_excess
        ),
    })
}

fn zero_background() -> Result<Check> {
    let mut worst = 0.0f64;
    for (alpha, beta, phi, psi) in [
        (7.0, 1.0, 0.0, 0.0),
        (2.0, 1.0, 0.4, -0.3),
        (0.6, 1.3, -2.0, 0.8),
    ] {
        let p = EffectiveParams::new(alpha, beta, 0.0, phi, psi)?;
        let grid = GridSpec::new(-10.0, 10.0, 1024)?;
        worst = worst.max(wadati_limit_error(&p, grid, &[0.0, 0.02, 0.05])?);
    }
    Ok(Check {
        pass: worst < 1e-9,
        detail: format!("max error {worst:.2e}"),
    })
}

fn small_alpha() -> Result<Check> {
    let p = DoublePoleParams::new(1.0, 0.3)?;
    let e = double_pole_limit_errors(
        &p,
        &[1e-2, 1e-3, 1e-4],
        GridSpec::new(-5.0, 25.0, 3001)?,
        5.0,
    )?;
    let monotone = e.windows(2).all(|w| w[1] < w[0]);
    Ok(Check {
        pass: monotone && e[2] < 2e-3,
        detail: format!(
            "errors at alpha 1e-2, 1e-3, 1e-4: {:.2e}, {:.2e}, {:.2e}",
            e[0], e[1], e[2]
        ),
    })
}

fn boundary() -> Result<Check> {
    let r = boundary_sweep(7, 1000)?;
    Ok(Check {
        pass: r.breather < 1e-6 && r.double_pole < 1e-6,
        detail: format!(
            "{} draws each: breather {:.2e}, double pole {:.2e}",
            r.count, r.breather, r.double_pole
        ),
    })
}

fn conservation() -> Result<Check> {
    let p = fig1();
    let times = [0.0, 0.025, 0.05, 0.075, 0.1];
    let d = invariant_drift(&Breather(p), &times, |t| {
        GridSpec::periodic_centered(p.envelope_center(t), 20.0, 4096)
    })?;
    Ok(Check {
        pass: d.max_drift < 1e-8,
        detail: format!("max drift {:.2e}", d.max_drift),
    })
}

fn solver() -> Result<Check> {
    let cfg = SolverConfig::new(1024, 40.0, 2.5e-6, 0.05, 0.3).with_dealias(1.0);
    let tracking = error_vs_exact(&cfg, Breather(fig1()), &[0.05])?[0].l_inf;

    let smooth = EffectiveParams::new(1.0, 1.0, 0.3, 0.0, 0.0)?;
    let mut errors = Vec::new();
    for dt in [2e-5, 1e-5, 5e-6, 2.5e-6] {
        let cfg = SolverConfig::new(1024, 40.0, dt, 0.05, 0.3).with_dealias(1.0);
        errors.push(error_vs_exact(&cfg, Breather(smooth), &[0.05])?[0].l_inf);
    }
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let pass = tracking < 1e-5 && orders.iter().all(|o| (3.7..=4.3).contains(o));
    Ok(Check {
        pass,
        detail: format!(
            "tracking {tracking:.2e}; orders {}",
            orders
                .iter()
                .map(|o| format!("{o:.3}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    })
}

fn asymptotics() -> Result<Check> {
    let times = [5.0, 10.0, 20.0, 40.0, 80.0];
    let mut pass = true;
    let mut detail = Vec::new();
    for b in [0.0, 0.3] {
        let r = double_pole_asymptotics(&DoublePoleParams::new(1.0, b)?, &times)?;
        println!(
            "{}",
            serde_json::to_string(&r).map_err(mkdv_nvbc::Error::from)?
        );
        pass &= r.fit.r_squared > 0.999;
        pass &= r.reading == Some(HumpReading::OppositeSigns) && (r.fit.slope - 1.0).abs() < 0.01;
        detail.push(format!(
            "b={b}: slope {:.4}, R2 {:.7}",
            r.fit.slope, r.fit.r_squared
        ));
    }
    Ok(Check {
        pass,
        detail: detail.join("; "),
    })
}

fn defocusing() -> Result<Check> {
    let p = DOCUMENTED_REGULAR_TRIPLE;
    let mut imag = 0.0f64;
    for s in GridSpec::new(-20.0, 20.0, 512)?.points() {
        imag = imag.max(defocusing_eval_complex(&p, s, 0.0)?.im.abs());
    }
    let grid = GridSpec::periodic_centered(p.envelope_center(0.0), 40.0, 1024)?;
    let r = pde_residual(&Defocusing(p), grid, 0.0, Equation::Defocusing)?;
    Ok(Check {
        pass: imag < 1e-10 && r.l_inf < 1e-6,
        detail: format!(
            "(alpha, beta, b) = ({}, {}, {}): |Im| {imag:.2e}, residual {:.2e}",
            p.alpha, p.beta, p.b, r.l_inf
        ),
    })
}

type Criterion = fn() -> Result<Check>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("1 PDE residual of the Figure-1 breather", residual),
        ("2 three-pathway agreement", three_pathways),
        ("3 zero-background limit", zero_background),
        ("4 small-alpha limit", small_alpha),
        ("5 boundary decay", boundary),
        ("6 conservation", conservation),
        ("7 solver tracking and order", solver),
        ("8 double-pole asymptotics", asymptotics),
        ("9 defocusing transform", defocusing),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let (pass, detail) = match run() {
            Ok(c) => (c.pass, c.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!("[{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
