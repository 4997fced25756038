//! D^-alpha of a Lizorkin function and of the unit-ball indicator, with the
//! radial tail that takes over outside the support.

use vladimirov::field::Point;
use vladimirov::io::parse_function_file;
use vladimirov::numerics::Exponent;
use vladimirov::operators::{riesz_potential, window_cosets, OperatorParams};

fn main() -> vladimirov::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/functions");
    for (file, alpha) in
        [("one_O.json", Exponent::new(1, 2)), ("one_O.json", 1.into()), ("steps_p3.json", Exponent::new(3, 2))]
    {
        let phi = parse_function_file(&dir.join(file))?;
        let params = OperatorParams::new(*phi.fp(), alpha)?;
        let u = riesz_potential(&params, &phi)?;
        println!("D^-{alpha} of {file}, beyond the support: {}", u.tail());
        for x in window_cosets(&phi)?.into_iter().take(6) {
            println!("  {x}: {}", u.eval(&x));
        }
        let far = Point::prime_power(phi.fp(), -4);
        println!("  {far}: {}", u.eval(&far));
    }
    Ok(())
}
