#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vladimirov::field::{CosetGrid, FieldParams};
use vladimirov::functions::{lizorkin_project, TestFunction};
use vladimirov::io::parse_function_file;
use vladimirov::numerics::{Cx, Num};

pub fn fp(p: u64, n: u32) -> FieldParams {
    FieldParams::new(p, n).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_ratio(rng: &mut impl Rng) -> Num {
    Num::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// Rational table on `|x| <= q^m`, constant on level-`k` cosets.
pub fn random_function(rng: &mut impl Rng, fp: FieldParams, m: i64, k: i64, complex: bool) -> TestFunction {
    let len = CosetGrid::new(&fp, -m, k).unwrap().len();
    let values = (0..len)
        .map(|_| {
            let im = if complex { small_ratio(rng) } else { Num::zero() };
            Cx::new(small_ratio(rng), im)
        })
        .collect();
    TestFunction::new(fp, m, k, values).unwrap()
}

/// A random function with `m, k` drawn from `0..=2`.
pub fn random_small(rng: &mut impl Rng, fp: FieldParams) -> TestFunction {
    let m = rng.gen_range(0..=2);
    let k = rng.gen_range(0..=2);
    random_function(rng, fp, m, k, false)
}

pub fn shipped(name: &str) -> TestFunction {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/functions").join(name);
    parse_function_file(&path).unwrap()
}

/// One-dimensional corpus: shipped files, indicators, Lizorkin projections
/// and seeded random tables.
pub fn corpus_1d() -> Vec<(String, TestFunction)> {
    let mut out: Vec<(String, TestFunction)> = [
        "one_O.json",
        "lizorkin_example.json",
        "steps_p3.json",
        "ramp_p2.json",
        "fine_p2.json",
        "lizorkin_fine_p3.json",
    ]
    .iter()
    .map(|n| (n.to_string(), shipped(n)))
    .collect();
    out.push(("indicator_p2_level3".into(), TestFunction::indicator_ball(fp(2, 1), 3)));
    out.push(("indicator_p3_level-1".into(), TestFunction::indicator_ball(fp(3, 1), -1)));
    let mut r = rng(7);
    let g = random_function(&mut r, fp(2, 1), 1, 2, false);
    out.push(("lizorkin_random_p2".into(), lizorkin_project(&g, 2).unwrap()));
    out.push(("random_p3".into(), random_function(&mut r, fp(3, 1), 1, 2, false)));
    out
}

/// Corpus on `Q_p^2`.
pub fn corpus_2d() -> Vec<(String, TestFunction)> {
    let mut out = vec![
        ("one_OO.json".to_string(), shipped("one_OO.json")),
        ("steps_OO_p3.json".to_string(), shipped("steps_OO_p3.json")),
    ];
    let mut r = rng(11);
    out.push(("random_p2".into(), random_function(&mut r, fp(2, 2), 1, 1, false)));
    out.push(("random_p2_fine".into(), random_function(&mut r, fp(2, 2), 0, 2, false)));
    out.push(("random_p3".into(), random_function(&mut r, fp(3, 2), 0, 1, false)));
    out
}
