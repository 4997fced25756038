//! The Taibleson operator on Q_2^2 with the max norm, against D^alpha over
//! the degree-2 unramified extension of Q_2.

use vladimirov::field::Point;
use vladimirov::functions::TestFunction;
use vladimirov::multidim::{kernel_r_multidim, taibleson_direct, taibleson_via_extension, DimensionBridge};
use vladimirov::numerics::Exponent;

fn main() -> vladimirov::Result<()> {
    for alpha in [Exponent::new(1, 2), 1.into(), Exponent::new(3, 2)] {
        let bridge = DimensionBridge::new(2, 2, alpha)?;
        let f = TestFunction::indicator_ball(bridge.ext, 0);
        println!("alpha = {alpha} (gamma = {}), R(j = 1) = {}", bridge.gamma(), kernel_r_multidim(&bridge, 1)?);
        for x in
            [Point::from_ints(&[1, 0]), Point::from_ratios(&[(1, 2), (0, 1)]), Point::from_ratios(&[(1, 4), (1, 2)])]
        {
            let a = taibleson_direct(&bridge, &f, &x)?;
            let b = taibleson_via_extension(&bridge, &f, &x)?;
            println!("  {x}: direct {a}, via extension {b}");
        }
    }
    Ok(())
}
