use proptest::prelude::*;

use mkdv_nvbc::exact_solutions::{
    breather_det_eval, breather_eval, double_pole_eval, DoublePoleParams,
};
use mkdv_nvbc::ism_oracle::k_squared_taylor;
use mkdv_nvbc::spectral_params::{principal_sqrt_upper, EffectiveParams, SpectralParams};
use num_complex::Complex64;

fn regular() -> impl Strategy<Value = EffectiveParams> {
    (
        0.3f64..4.0,
        0.3f64..2.0,
        0.0f64..1.0,
        -3.0f64..3.0,
        -1.0f64..1.0,
    )
        .prop_filter_map("regular breather", |(a, b, bg, phi, psi)| {
            EffectiveParams::new(a, b, bg, phi, psi)
                .ok()
                .filter(|p| p.is_regular())
        })
}

proptest! {
    #[test]
    fn upper_sheet_root(re in -10.0f64..10.0, im in -10.0f64..10.0) {
        let z = Complex64::new(re, im);
        let w = principal_sqrt_upper(z);
        prop_assert!(w.im >= 0.0);
        prop_assert!((w * w - z).norm() <= 1e-12 * (1.0 + z.norm()));
    }

    #[test]
    fn effective_parameters_square_to_shifted_eigenvalue(alpha in 0.0f64..3.0, beta in 0.1f64..3.0, b in 0.0f64..1.5) {
        let raw = SpectralParams::new(alpha, beta, b);
        prop_assume!(raw.is_ok());
        let raw = raw.unwrap();
        let z = raw.zeta();
        let lam = raw.lambda();
        prop_assert!((z * z - (lam * lam + b * b)).norm() < 1e-10 * (1.0 + lam.norm_sqr()));
    }

    #[test]
    fn closed_forms_agree(p in regular(), x in -3.0f64..3.0, t in 0.0f64..0.1) {
        let s = p.envelope_center(t) + x / p.beta();
        let k = breather_eval(&p, s, t).unwrap();
        prop_assert!((k - breather_det_eval(&p, s, t).unwrap()).abs() < 1e-9);
        let k2 = k_squared_taylor(&p, s, t).unwrap();
        prop_assert!((k2 - k * k).abs() < 1e-8 * (1.0 + k * k));
    }

    #[test]
    fn reflection_symmetry_of_phases(p in regular(), x in -3.0f64..3.0) {
        // Shifting the carrier phase by 2π leaves the breather unchanged.
        let q = p.with_phases(p.phi() + 2.0 * std::f64::consts::PI, p.psi());
        let s = p.envelope_center(0.0) + x;
        prop_assert!((breather_eval(&p, s, 0.0).unwrap() - breather_eval(&q, s, 0.0).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn double_pole_decays(beta in 0.3f64..2.0, ratio in 0.0f64..0.9, t in 0.0f64..1.0) {
        let p = DoublePoleParams::new(beta, ratio * beta).unwrap();
        let c = p.center(t);
        for s in [c - 25.0 / beta, c + 25.0 / beta] {
            prop_assert!((double_pole_eval(&p, s, t).unwrap() - p.b).abs() < 1e-6);
        }
    }
}
