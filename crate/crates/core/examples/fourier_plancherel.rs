//! Characters, the Fourier transform on tabulated functions, and Plancherel.

use vladimirov::field::{FieldParams, Point};
use vladimirov::fourier::{fourier_transform, Character};
use vladimirov::functions::{lp_norm, TestFunction};

fn main() -> vladimirov::Result<()> {
    let fp = FieldParams::new(2, 1)?;
    let chi = Character::new(fp);
    for (n, d) in [(3, 1), (1, 2), (3, 4), (5, 8)] {
        let x = Point::from_ratios(&[(n, d)]);
        println!("chi({x}) = {}", chi.eval(&x));
    }

    let one_o = TestFunction::indicator_ball(fp, 0);
    println!("F 1_O == 1_O: {}", fourier_transform(&one_o, false)? == one_o);

    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/functions");
    let phi = vladimirov::io::parse_function_file(&dir.join("steps_p3.json"))?;
    let t = fourier_transform(&phi, false)?;
    println!(
        "steps_p3: ||phi||_2 = {:.15}, ||F phi||_2 = {:.15}",
        lp_norm(&(&phi).into(), 2.0)?,
        lp_norm(&(&t).into(), 2.0)?
    );
    for (xi, v) in t.cosets().take(5) {
        println!("  F phi({xi}) = {v}");
    }
    Ok(())
}
