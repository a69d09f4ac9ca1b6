//! Scans candidate parameters of the defocusing family for profiles that
//! are real, regular and decaying, then checks the first one against the
//! defocusing equation.

use mkdv_nvbc::exact_solutions::{
    defocusing_eval_complex, scan_regular_defocusing, Defocusing, DefocusingScan, GridSpec,
};
use mkdv_nvbc::verification::{pde_residual, Equation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scan = DefocusingScan::default();
    let found = scan_regular_defocusing(&scan);
    println!("{} regular candidates with phi = pi, psi = 0:", found.len());
    for p in &found {
        println!("  alpha {:<4} beta {:<4} b {}", p.alpha, p.beta, p.b);
    }
    let Some(&p) = found.first() else {
        return Ok(());
    };

    let grid = GridSpec::new(-20.0, 20.0, 512)?;
    let imag = grid
        .points()
        .map(|s| defocusing_eval_complex(&p, s, 0.0).map(|k| k.im.abs()))
        .try_fold(0.0f64, |m, x| x.map(|x| m.max(x)))?;
    println!("\nfirst candidate: max |Im k| on 512 points = {imag:.2e}");

    let grid = GridSpec::periodic_centered(p.envelope_center(0.0), 40.0, 1024)?;
    let r = pde_residual(&Defocusing(p), grid, 0.0, Equation::Defocusing)?;
    println!("defocusing residual l_inf = {:.2e}", r.l_inf);
    Ok(())
}
