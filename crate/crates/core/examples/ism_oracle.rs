//! k² rebuilt from the 4×4 Gelfand–Levitan determinant along a line, next
//! to the closed form. Shows the difference quotient converging at second
//! order and how far the Taylor-jet derivative sits from both.

use mkdv_nvbc::exact_solutions::breather_eval;
use mkdv_nvbc::ism_oracle::{
    gl_coefficients, gl_condition, gl_determinant, k_squared_reconstruct, k_squared_taylor,
};
use mkdv_nvbc::spectral_params::EffectiveParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = EffectiveParams::new(7.0, 1.0, 0.3, 0.0, 0.0)?;
    let t = 0.0;
    let c = gl_coefficients(&p, t);

    println!(
        "{:>6} {:>12} {:>12} {:>10} {:>10} {:>10}",
        "s", "k^2", "Delta", "cond", "jet err", "fd err"
    );
    for j in -8..=8 {
        let s = 0.25 * j as f64;
        let k = breather_eval(&p, s, t)?;
        let taylor = k_squared_taylor(&p, s, t)?;
        let fd = k_squared_reconstruct(&p, s, t, 1e-3)?;
        println!(
            "{s:>6.2} {:>12.6} {:>12.4e} {:>10.2e} {:>10.2e} {:>10.2e}",
            k * k,
            gl_determinant(&c, s)?,
            gl_condition(&c, s),
            (taylor - k * k).abs(),
            (fd - k * k).abs()
        );
    }

    let k2 = breather_eval(&p, 0.3, t)?.powi(2);
    println!("\nstep      fd error");
    for h in [4e-3, 2e-3, 1e-3, 5e-4] {
        println!("{h:<8} {:.3e}", k_squared_reconstruct(&p, 0.3, t, h)? - k2);
    }
    Ok(())
}
