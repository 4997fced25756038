//! Closed-form radial integrals against the coset-sum oracle, and the
//! integration engine applied to a tabulated function.

use vladimirov::field::{FieldParams, Point};
use vladimirov::functions::TestFunction;
use vladimirov::integrate::{
    brute_force_oracle, integrate_product, log_over_ball, power_over_ball, OracleConfig, RadialProfile, Region,
    TailModel,
};
use vladimirov::numerics::{q_power, Cx, Exponent};

fn main() -> vladimirov::Result<()> {
    let fp = FieldParams::new(3, 1)?;
    let alpha = Exponent::new(1, 2);
    for n in -1..=1 {
        let closed = power_over_ball(&fp, alpha, n)?;
        let s = alpha - Exponent::from_integer(1);
        let sampler = |y: &Point| Cx::real(q_power(&fp, s, fp.abs_exp(y).unwrap()));
        let cfg = OracleConfig::bounded(-n + 2, vec![Point::zero(1)], 12, TailModel::singular_power(s));
        let oracle = brute_force_oracle(&fp, &sampler, &Region::Ball { center: Point::zero(1), level: -n }, &cfg)?;
        println!("int_(|x| <= 3^{n}) |x|^(-1/2) dx: closed {closed}, oracle {}", oracle.value.re);
    }
    println!("int_(|x| <= 9) ln|x| dx = {}", log_over_ball(&fp, 2));

    let phi = TestFunction::indicator_ball(fp, 1);
    let prof = RadialProfile::log_abs(Point::zero(1));
    let v = integrate_product(&fp, &prof, &(&phi).into(), &Region::Whole)?;
    println!("int ln|y| 1_(3Z_3)(y) dy = {v}");
    Ok(())
}
