//! Closed forms and operator paths against values frozen from independent
//! computations: hand-derived geometric sums and a coset-by-coset float
//! evaluation of the defining integrals written outside this crate.

#![allow(clippy::excessive_precision)]

mod common;

use common::{fp, shipped};
use vladimirov::field::Point;
use vladimirov::fourier::multiplier_vladimirov;
use vladimirov::functions::{ExtendedFunction, TestFunction};
use vladimirov::integrate::{
    brute_force_oracle, integrate_product, log_over_ball, power_over_ball, shifted_log_over_sphere, OracleConfig,
    RadialProfile, Region, TailModel,
};
use vladimirov::numerics::{Cx, ExactScalar, Exponent, Num};
use vladimirov::operators::{
    kernel_r, kernel_r_oracle, riesz_potential, vladimirov_hypersingular, KernelOracleDepth, OperatorParams,
};

fn params(p: u64, alpha: Exponent) -> OperatorParams {
    OperatorParams::new(fp(p, 1), alpha).unwrap()
}

fn x(n: i64, d: i64) -> Point {
    Point::from_ratios(&[(n, d)])
}

/// `((alpha num, alpha den), (x num, x den), value)`
type Case = ((i64, i64), (i64, i64), f64);

// D^alpha of steps_p3.json (p = 3, m = k = 1), 30-digit float evaluation of
// c * sum over cosets (phi(y) - phi(x)) |y - x|^(-alpha-1).
const HYPERSINGULAR_STEPS_P3: &[Case] = &[
    ((1, 2), (0, 1), 2.838290893118404),
    ((1, 2), (1, 1), -0.048460452829724844),
    ((1, 2), (2, 1), -2.3578615295882279),
    ((1, 2), (1, 3), -1.1545140830413175),
    ((1, 2), (4, 3), 3.1756129358808757),
    ((1, 2), (5, 9), -0.057822554671671787),
    ((1, 2), (1, 9), -0.057822554671671787),
    ((1, 2), (10, 1), -0.048460452829724844),
    ((1, 1), (0, 1), 4.6805555555555556),
    ((1, 1), (2, 1), -4.3194444444444444),
    ((1, 1), (1, 3), -2.7638888888888889),
    ((1, 1), (5, 9), -0.047839506172839506),
    ((3, 2), (0, 1), 8.0319766451946623),
    ((3, 2), (1, 1), -0.62827739264972421),
    ((3, 2), (4, 3), 7.599498329037633),
    ((3, 2), (1, 9), -0.031778100897619424),
];

// D^-alpha of the same function, from d * sum over cosets |y - x|^(gamma-1) phi(y).
const RIESZ_STEPS_P3: &[Case] = &[
    ((1, 2), (0, 1), 2.3368703267882178),
    ((1, 2), (1, 1), 1.3746198781388415),
    ((1, 2), (1, 3), 1.4874168162164588),
    ((1, 2), (5, 9), 0.57407407407407407),
    ((1, 2), (1, 27), 0.33144182120145183),
    ((3, 2), (0, 1), -2.5468105092097347),
    ((3, 2), (1, 1), -2.8675606587595268),
    ((3, 2), (1, 3), -2.3484801979188396),
    ((3, 2), (5, 9), -5.6995240766396442),
    ((3, 2), (1, 27), -9.8718652797019553),
];

#[test]
fn hypersingular_matches_coset_sum_evaluation() {
    let phi = shipped("steps_p3.json");
    let u: ExtendedFunction = (&phi).into();
    for &((an, ad), (xn, xd), want) in HYPERSINGULAR_STEPS_P3 {
        let alpha = Exponent::new(an, ad);
        let got = vladimirov_hypersingular(&params(3, alpha), &u, &x(xn, xd)).unwrap();
        assert!((got.re.to_f64() - want).abs() < 1e-12, "alpha {alpha} x {xn}/{xd}: {got} vs {want}");
        assert!(got.im.is_zero());
        let mult = multiplier_vladimirov(alpha, &phi, &x(xn, xd)).unwrap();
        assert!((mult.re.to_f64() - want).abs() < 1e-11, "multiplier alpha {alpha} x {xn}/{xd}: {mult}");
    }
}

#[test]
fn hypersingular_is_exact_for_integer_order() {
    let phi = shipped("steps_p3.json");
    let v = vladimirov_hypersingular(&params(3, 1.into()), &(&phi).into(), &Point::zero(1)).unwrap();
    // 4.68055... = 337/72
    assert_eq!(v, Cx::ratio(337, 72));
}

#[test]
fn riesz_potential_matches_coset_sum_evaluation() {
    let phi = shipped("steps_p3.json");
    for &((an, ad), (xn, xd), want) in RIESZ_STEPS_P3 {
        let alpha = Exponent::new(an, ad);
        let u = riesz_potential(&params(3, alpha), &phi).unwrap();
        let got = u.eval(&x(xn, xd)).re.to_f64();
        assert!((got - want).abs() < 1e-12, "alpha {alpha} x {xn}/{xd}: {got} vs {want}");
    }
}

#[test]
fn riesz_potential_of_unit_ball() {
    // d int_O |y|^(g-1) dy = (1 - 1/q) / (1 - q^(g-1)) at 0, and d |x|^(g-1) outside O
    let u = riesz_potential(&params(3, Exponent::new(1, 2)), &TestFunction::indicator_ball(fp(3, 1), 0)).unwrap();
    let at0 = (2.0 / 3.0) / (1.0 - 1.0 / 3f64.sqrt());
    assert!((u.eval(&Point::zero(1)).re.to_f64() - at0).abs() < 1e-12);
    assert!((u.eval(&x(1, 3)).re.to_f64() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    assert!((u.eval(&x(1, 81)).re.to_f64() - 1.0 / 9.0).abs() < 1e-12);
}

#[test]
fn haar_closed_forms_spot_values() {
    let f2 = fp(2, 1);
    let v = power_over_ball(&f2, Exponent::new(1, 2), 0).unwrap().to_f64();
    assert!((v - (1.0 + 0.5f64.sqrt())).abs() < 1e-14);
    assert_eq!(power_over_ball(&f2, 1.into(), 3).unwrap(), Num::int(8));
    // (1 - 1/3) / (1 - 1/9) * 3^(2*2) = 3/4 * 81
    assert_eq!(power_over_ball(&fp(3, 1), 2.into(), 2).unwrap(), Num::ratio(243, 4));
    assert_eq!(log_over_ball(&f2, 0), &ExactScalar::from_int(-1) * &ExactScalar::ln_q(2));
    assert_eq!(shifted_log_over_sphere(&f2, 1), &ExactScalar::from_int(-1) * &ExactScalar::ln_q(2));
    // degree 2 over p = 2: q = 4, int_{|x| <= 4} ln|x| = (1 - 1/3) * 4 * ln 4
    let v = log_over_ball(&fp(2, 2), 1).to_f64();
    assert!((v - (2.0 / 3.0) * 4.0 * 4f64.ln()).abs() < 1e-12);
}

#[test]
fn engine_matches_brute_force_on_shipped_functions() {
    for name in ["steps_p3.json", "ramp_p2.json", "fine_p2.json"] {
        let phi = shipped(name);
        let f = *phi.fp();
        let ext: ExtendedFunction = (&phi).into();
        for s in [Exponent::new(-1, 2), Exponent::new(1, 3), Exponent::from_integer(2)] {
            let a = x(1, 1);
            let prof = RadialProfile::power(s, a.clone());
            let region = Region::Ball { center: Point::zero(1), level: -phi.support_radius() };
            let engine = integrate_product(&f, &prof, &ext, &region).unwrap();
            let center = a.clone();
            let phi2 = phi.clone();
            let sampler = move |y: &Point| -> Cx {
                let e = f.abs_exp(&(y - &center)).unwrap();
                phi2.eval(y).scale(&vladimirov::numerics::q_power(&f, s, e))
            };
            let cfg = OracleConfig::bounded(phi.constancy_level(), vec![a], 14, TailModel::singular_power(s));
            let oracle = brute_force_oracle(&f, &sampler, &region, &cfg).unwrap();
            assert!(engine.dist(&oracle.value) < 1e-10, "{name} s={s}: engine {engine} vs oracle {}", oracle.value);
        }
    }
}

#[test]
fn kernel_oracle_at_other_fields() {
    for (p, alpha) in [(5, Exponent::new(3, 10)), (3, Exponent::new(9, 10)), (7, Exponent::new(1, 2))] {
        let pr = params(p, alpha);
        for j in -2..=4 {
            let closed = kernel_r(&pr, j).to_f64();
            let oracle = kernel_r_oracle(&pr, j, KernelOracleDepth::default()).unwrap();
            assert!((closed - oracle).abs() < 1e-10, "p={p} alpha={alpha} j={j}: {closed} vs {oracle}");
        }
    }
}
