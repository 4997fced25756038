mod common;

use common::{fp, random_function, rng};
use proptest::prelude::*;
use vladimirov::field::{CosetGrid, Point};
use vladimirov::fourier::{fourier_transform, multiplier_vladimirov};
use vladimirov::functions::{lizorkin_project, lp_distance, lp_norm, ExtendedFunction, TestFunction};
use vladimirov::io::{function_from_json, function_to_json};
use vladimirov::multidim::max_norm;
use vladimirov::numerics::{Cx, Exponent, Num};
use vladimirov::operators::{
    averaging_apply, inversion_residual, kernel_integral, riesz_potential, truncated_vladimirov,
    vladimirov_hypersingular, window_cosets, OperatorParams,
};

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3u64)]
}

fn small_function(p: u64, n: u32, seed: u64, m: i64, k: i64, complex: bool) -> TestFunction {
    random_function(&mut rng(seed), fp(p, n), m, k, complex)
}

fn gamma() -> impl Strategy<Value = Exponent> {
    (1i64..=12).prop_map(|n| Exponent::new(n, 8))
}

fn random_point(p: u64, n: u32, seed: u64, lo: i64, hi: i64) -> Point {
    let grid = CosetGrid::new(&fp(p, n), lo, hi).unwrap();
    grid.point((seed as usize) % grid.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lp_triangle_inequality(p in prime(), seeds in any::<(u64, u64, u64)>(), lp in 1.0f64..3.0) {
        let f = small_function(p, 1, seeds.0, 1, 1, true);
        let g = small_function(p, 1, seeds.1, 0, 2, false);
        let h = small_function(p, 1, seeds.2, 2, 0, true);
        let (f, g, h): (ExtendedFunction, ExtendedFunction, ExtendedFunction) = (f.into(), g.into(), h.into());
        let fh = lp_distance(&f, &h, lp).unwrap();
        let fg = lp_distance(&f, &g, lp).unwrap();
        let gh = lp_distance(&g, &h, lp).unwrap();
        prop_assert!(fh <= fg + gh + 1e-12);
        prop_assert!((fg - lp_distance(&g, &f, lp).unwrap()).abs() < 1e-12);
        prop_assert_eq!(lp_distance(&f, &f, lp).unwrap(), 0.0);
    }

    #[test]
    fn haar_integral_is_translation_invariant(p in prime(), n in 1u32..=2, seed: u64, hseed: u64) {
        let f = small_function(p, n, seed, 1, 1, true);
        let h = random_point(p, n, hseed, -3, 2);
        prop_assert_eq!(f.translate(&h).integral(), f.integral());
        prop_assert!(f.translate(&h).translate(&(-&h)).same_function(&f));
    }

    #[test]
    fn absolute_value_is_max_norm_to_the_dimension(p in prime(), coords in prop::collection::vec((-40i64..40, 0u32..4, 0u32..3), 1..=3)) {
        let n = coords.len() as u32;
        let field = fp(p, n);
        let ratios: Vec<(i64, i64)> = coords
            .iter()
            .map(|&(a, s, t)| (a * (p as i64).pow(t), (p as i64).pow(s)))
            .collect();
        let x = Point::from_ratios(&ratios);
        let base = field.base_field();
        // |x|_L = q^e and ||x|| = p^b with q = p^n, so |x|_L = ||x||^n iff e = b
        match (field.abs_exp(&x), max_norm(&base, &x).exponent()) {
            (Some(e), Some(b)) => prop_assert_eq!(e, b),
            (None, None) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn lizorkin_projection_is_idempotent(p in prime(), seed: u64, extra in 0i64..2) {
        let f = small_function(p, 1, seed, 1, 1, false);
        let big_m = f.support_radius() + extra;
        let g = lizorkin_project(&f, big_m).unwrap();
        prop_assert!(g.integral().is_zero());
        prop_assert!(lizorkin_project(&g, big_m).unwrap().same_function(&g));
    }

    #[test]
    fn function_files_roundtrip(p in prime(), n in 1u32..=2, seed: u64, m in 0i64..2, k in 0i64..2) {
        let f = small_function(p, n, seed, m, k, true);
        let text = function_to_json(&f).unwrap();
        prop_assert_eq!(function_from_json(&text).unwrap(), f);
    }

    #[test]
    fn plancherel_and_inversion(p in prime(), n in 1u32..=2, seed: u64, m in 0i64..2, k in 0i64..2) {
        let f = small_function(p, n, seed, m, k, true);
        let t = fourier_transform(&f, false).unwrap();
        prop_assert_eq!(t.support_radius(), k);
        prop_assert_eq!(t.constancy_level(), m);
        let a = lp_norm(&(&f).into(), 2.0).unwrap();
        let b = lp_norm(&(&t).into(), 2.0).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
        let back = fourier_transform(&t, true).unwrap();
        for (x, y) in f.values().iter().zip(back.values()) {
            prop_assert!(x.dist(y) < 1e-12);
        }
    }

    #[test]
    fn transform_turns_translation_into_phase(p in prime(), seed: u64, hseed: u64) {
        // F[f(. - h)](xi) = chi(h . xi) F[f](xi)
        let f = small_function(p, 1, seed, 1, 1, false);
        let h = random_point(p, 1, hseed, -1, 1);
        let lhs = fourier_transform(&f.translate(&h), false).unwrap();
        let rhs = fourier_transform(&f, false).unwrap();
        let chi = vladimirov::fourier::Character::new(*f.fp());
        for (xi, v) in lhs.cosets() {
            let expect = &chi.pair(&h, &xi) * &rhs.eval(&xi);
            prop_assert!(v.dist(&expect) < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hypersingular_is_linear(p in prime(), seeds in any::<(u64, u64)>(), a in -4i64..4, b in 1i64..4) {
        let params = OperatorParams::new(fp(p, 1), 1.into()).unwrap();
        let f = small_function(p, 1, seeds.0, 1, 1, false);
        let g = small_function(p, 1, seeds.1, 1, 1, false);
        let (ca, cb) = (Cx::ratio(a, 1), Cx::ratio(1, b));
        let comb = f.scale(&ca).add(&g.scale(&cb)).unwrap();
        for x in window_cosets(&f).unwrap() {
            let l = vladimirov_hypersingular(&params, &(&comb).into(), &x).unwrap();
            let df = vladimirov_hypersingular(&params, &(&f).into(), &x).unwrap();
            let dg = vladimirov_hypersingular(&params, &(&g).into(), &x).unwrap();
            let r = &(&df * &ca) + &(&dg * &cb);
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn hypersingular_commutes_with_translation(p in prime(), seed: u64, hseed: u64, g in gamma()) {
        let params = OperatorParams::new(fp(p, 1), g).unwrap();
        let f = small_function(p, 1, seed, 1, 1, false);
        let h = random_point(p, 1, hseed, -1, 1);
        let moved = f.translate(&h);
        for x in window_cosets(&f).unwrap() {
            let a = vladimirov_hypersingular(&params, &(&moved).into(), &(&x + &h)).unwrap();
            let b = vladimirov_hypersingular(&params, &(&f).into(), &x).unwrap();
            prop_assert!(a.dist(&b) < 1e-12);
        }
    }

    #[test]
    fn multiplier_equals_hypersingular(p in prime(), n in 1u32..=2, seed: u64, alpha in gamma()) {
        let f = small_function(p, n, seed, 0, 1, false);
        let params = OperatorParams::new(fp(p, n), alpha * Exponent::from_integer(n as i64)).unwrap();
        for x in window_cosets(&f).unwrap() {
            let m = multiplier_vladimirov(params.gamma(), &f, &x).unwrap();
            let h = vladimirov_hypersingular(&params, &(&f).into(), &x).unwrap();
            prop_assert!(m.dist(&h) < 1e-9, "{} vs {}", m, h);
        }
    }

    #[test]
    fn truncated_operator_is_kernel_average(p in prime(), seed: u64, m in 0i64..=2, k in 0i64..=2, nu in 1i64..=3, log: bool) {
        let alpha = if log { Exponent::from_integer(1) } else { Exponent::new(1, 2) };
        let params = OperatorParams::new(fp(p, 1), alpha).unwrap();
        let phi = small_function(p, 1, seed, m, k, false);
        let u = riesz_potential(&params, &phi).unwrap();
        for x in window_cosets(&phi).unwrap() {
            let t = truncated_vladimirov(&params, nu, &u, &x).unwrap();
            let a = averaging_apply(&params, nu, &phi, &x).unwrap();
            if log {
                prop_assert_eq!(&t, &a);
            } else {
                prop_assert!(t.dist(&a) < 1e-10);
            }
        }
    }

    #[test]
    fn recovery_is_exact_past_the_constancy_level(p in prime(), n in 1u32..=2, seed: u64, k in 0i64..=2, g in gamma(), extra in 0i64..2) {
        prop_assume!(g <= Exponent::from_integer(1));
        let params = OperatorParams::new(fp(p, n), g * Exponent::from_integer(n as i64)).unwrap();
        let phi = small_function(p, n, seed, 0, k, false);
        let nu = (k - 1).max(1) + extra;
        let r = inversion_residual(&params, 1.0, &phi, nu).unwrap();
        prop_assert!(r.norm <= 1e-12);
    }

    #[test]
    fn kernel_has_unit_integral(p in prime(), n in 1u32..=2, num in 1i64..=24) {
        let params = OperatorParams::new(fp(p, n), Exponent::new(num, 8)).unwrap();
        let total = kernel_integral(&params).unwrap();
        if total.is_exact() {
            prop_assert_eq!(total, Num::one());
        } else {
            prop_assert!((total.to_f64() - 1.0).abs() < 1e-12);
        }
    }
}
