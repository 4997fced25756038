//! ||D^alpha_eps D^-alpha phi - phi||_1 as eps = 2^-nu shrinks: bounded by
//! the modulus of continuity, then exactly zero once nu >= k - 1.

use vladimirov::io::parse_function_file;
use vladimirov::numerics::Exponent;
use vladimirov::operators::{inversion_residual, minkowski_bound, OperatorParams};

fn main() -> vladimirov::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/functions");
    for file in ["fine_p2.json", "lizorkin_fine_p3.json"] {
        let phi = parse_function_file(&dir.join(file))?;
        for alpha in [Exponent::new(1, 2), 1.into()] {
            let params = OperatorParams::new(*phi.fp(), alpha)?;
            println!("{file}, alpha = {alpha}, k = {}", phi.constancy_level());
            for nu in 1..=4 {
                let r = inversion_residual(&params, 1.0, &phi, nu)?;
                let bound = minkowski_bound(&params, 1.0, &phi, nu)?;
                println!("  nu = {nu}: residual {:.6e} (exact zero: {}), bound {bound:.6e}", r.norm, r.exact_zero);
            }
        }
    }
    Ok(())
}
