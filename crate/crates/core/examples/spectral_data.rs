//! From raw eigenvalue data to the effective parameters used by the
//! evaluators, and what the choice of norming constant does.

use mkdv_nvbc::spectral_params::{effective_params, EffectiveParams, SpectralParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let raw = SpectralParams::new(1.0, 1.0, 1.0)?;
    println!("lambda = {}, zeta = {}", raw.lambda(), raw.zeta());

    let centred = EffectiveParams::from_raw_centered(raw, 0.0)?;
    println!(
        "effective alpha {:.6}, beta {:.6}, gamma {:.4}, delta {:.4}, |m| for psi = 0: {:.6}",
        centred.alpha(),
        centred.beta(),
        centred.gamma(),
        centred.delta(),
        centred.norming_modulus()
    );

    // Scaling |m| by e^{-a} shifts the envelope by a/beta_eff.
    for scale in [0.5, 1.0, 2.0] {
        let p = effective_params(raw, scale * centred.norming_modulus(), 0.3)?;
        println!(
            "|m| x {scale}: psi = {:+.6}, envelope centre at t = 0: {:+.6}",
            p.psi(),
            p.envelope_center(0.0)
        );
    }

    // Outside the domain alpha^2 + beta^2 > b^2 nothing is built.
    match EffectiveParams::new(1.0, 1.0, 1.6, 0.0, 0.0) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
