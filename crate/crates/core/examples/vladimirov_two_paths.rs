//! D^alpha through the hypersingular integral and through the Fourier
//! multiplier |xi|^alpha, side by side.

use vladimirov::fourier::multiplier_on_window;
use vladimirov::functions::ExtendedFunction;
use vladimirov::io::parse_function_file;
use vladimirov::numerics::Exponent;
use vladimirov::operators::{vladimirov_hypersingular, OperatorParams};

fn main() -> vladimirov::Result<()> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/functions/ramp_p2.json");
    let phi = parse_function_file(&path)?;
    let u: ExtendedFunction = (&phi).into();
    for alpha in [Exponent::new(1, 2), 1.into(), 2.into()] {
        let params = OperatorParams::new(*phi.fp(), alpha)?;
        println!("alpha = {alpha}");
        for (x, m) in multiplier_on_window(alpha, &phi, phi.support_radius() + 1)? {
            let h = vladimirov_hypersingular(&params, &u, &x)?;
            println!(
                "  {x:>6}  hypersingular {:>22}  multiplier {:>22}  |diff| {:.1e}",
                h.to_string(),
                m.to_string(),
                h.dist(&m)
            );
        }
    }
    Ok(())
}
