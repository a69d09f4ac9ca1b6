//! The two degenerations of the breather: b → 0 gives the Wadati breather,
//! α̃ → 0 (with carrier phase arctan(β/α̃)) gives the double pole.

use mkdv_nvbc::exact_solutions::{DoublePoleParams, GridSpec};
use mkdv_nvbc::spectral_params::EffectiveParams;
use mkdv_nvbc::verification::{double_pole_limit_errors, wadati_limit_error};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = EffectiveParams::new(2.0, 1.0, 0.0, 0.4, -0.3)?;
    let e = wadati_limit_error(&p, GridSpec::new(-10.0, 10.0, 1024)?, &[0.0, 0.02, 0.05])?;
    println!("b = 0 against the Wadati breather: max error {e:.3e}");

    let dp = DoublePoleParams::new(1.0, 0.3)?;
    let alphas = [1e-1, 1e-2, 1e-3, 1e-4];
    let errors = double_pole_limit_errors(&dp, &alphas, GridSpec::new(-5.0, 25.0, 3001)?, 5.0)?;
    println!("small alpha against the double pole at t = 5:");
    for (a, e) in alphas.iter().zip(&errors) {
        println!("  alpha = {a:<7} max error {e:.3e}");
    }
    Ok(())
}
