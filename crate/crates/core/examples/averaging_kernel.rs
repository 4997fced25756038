//! The averaging kernel per shell: closed form, defining integral, and the
//! normalization of R_1.

use vladimirov::field::FieldParams;
use vladimirov::numerics::Exponent;
use vladimirov::operators::{kernel_r_oracle, kernel_table, KernelOracleDepth, OperatorParams};

fn main() -> vladimirov::Result<()> {
    let fp = FieldParams::new(2, 1)?;
    for alpha in [Exponent::new(1, 2), 1.into(), Exponent::new(3, 2)] {
        let params = OperatorParams::new(fp, alpha)?;
        let table = kernel_table(&params, -1..=5)?;
        println!("alpha = {alpha}, c d = {}, int R_1 = {}", table.cd, table.integral);
        for s in &table.shells {
            let oracle = kernel_r_oracle(&params, s.j, KernelOracleDepth::default())?;
            println!("  j = {:>2}  R = {:>24}  integral {:>10.6}  R_1 = {}", s.j, s.r.to_string(), oracle, s.r1);
        }
    }
    Ok(())
}
