use mkdv_nvbc::exact_solutions::{sample_field, Breather, DoublePole, DoublePoleParams};
use mkdv_nvbc::spectral_params::EffectiveParams;
use mkdv_nvbc::spectral_solver::{error_vs_exact, evolve_gardner, SolverConfig};
use mkdv_nvbc::Error;

fn fig1() -> Breather {
    Breather(EffectiveParams::new(7.0, 1.0, 0.3, 0.0, 0.0).unwrap())
}

#[test]
fn error_grows_with_time() {
    // With the 2/3 mask at 1024 modes the error sits on a spatial floor that
    // does not grow; the full spectrum exposes the accumulated time error.
    let cfg = SolverConfig::new(1024, 40.0, 2.5e-6, 0.05, 0.3).with_dealias(1.0);
    let rows = error_vs_exact(&cfg, fig1(), &[0.0, 0.01, 0.02, 0.05]).unwrap();
    assert_eq!(rows[0].l_inf, 0.0);
    assert_eq!(rows[0].l2, 0.0);
    assert!(rows.windows(2).all(|w| w[1].l2 >= w[0].l2), "{rows:?}");
}

#[test]
fn double_pole_is_tracked() {
    let p = DoublePoleParams::new(1.0, 0.3).unwrap();
    let cfg = SolverConfig::new(512, 40.0, 2e-4, 0.05, 0.3);
    let rows = error_vs_exact(&cfg, DoublePole(p), &[0.05]).unwrap();
    assert!(rows[0].l_inf < 1e-4, "{rows:?}");
}

#[test]
fn both_dealiasing_choices_track_at_higher_resolution() {
    // At 2048 modes neither mask limits accuracy at the 1e-5 level.
    let mut errors = Vec::new();
    for fraction in [2.0 / 3.0, 0.5] {
        let cfg = SolverConfig::new(2048, 40.0, 1.25e-6, 0.05, 0.3).with_dealias(fraction);
        errors.push(error_vs_exact(&cfg, fig1(), &[0.05]).unwrap()[0].l_inf);
    }
    assert!(errors.iter().all(|&e| e < 1e-5), "{errors:?}");
}

#[test]
fn temporal_order_is_four() {
    let smooth = Breather(EffectiveParams::new(1.0, 1.0, 0.3, 0.0, 0.0).unwrap());
    let errors: Vec<f64> = [2e-5, 1e-5, 5e-6, 2.5e-6]
        .iter()
        .map(|&dt| {
            let cfg = SolverConfig::new(1024, 40.0, dt, 0.05, 0.3).with_dealias(1.0);
            error_vs_exact(&cfg, smooth, &[0.05]).unwrap()[0].l_inf
        })
        .collect();
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((3.7..=4.3).contains(&order), "{errors:?}");
    }
}

#[test]
fn unstable_step_is_a_config_error() {
    let cfg = SolverConfig::new(1024, 40.0, 1e-4, 0.05, 0.3);
    let u0 = sample_field(&fig1(), cfg.grid().unwrap(), 0.0).unwrap();
    assert!(matches!(evolve_gardner(&u0, &cfg), Err(Error::Config(_))));
}
