//! Additive character, Fourier transform on test functions, and the Fourier
//! multiplier form of the Vladimirov operator.
//!
//! The character is `chi(x) = exp(2 pi i {x})` per coordinate, with `{x}` the
//! p-adic fractional part, and pairs points through the coordinate dot
//! product. Phases are kept as exact rationals; only the final exponential is
//! floating, and quarter turns stay exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::field::{valuation, CosetGrid, FieldParams, Point};
use crate::functions::TestFunction;
use crate::numerics::{geometric_tail, q_int_power, q_power, Cx, Exponent, Num};

/// p-adic fractional part: the `r` in `Z[1/p] cap [0, 1)` with `x - r` in `Z_p`.
pub fn fractional_part(x: &BigRational, p: u64) -> BigRational {
    let v = match valuation(x, p) {
        Some(v) if v < 0 => v,
        _ => return BigRational::zero(),
    };
    let modulus = num_traits::pow(BigInt::from(p), (-v) as usize);
    let u = x * BigRational::from_integer(modulus.clone());
    let num = u.numer().mod_floor(&modulus);
    let den = u.denom().mod_floor(&modulus);
    let inv = den.extended_gcd(&modulus).x.mod_floor(&modulus);
    BigRational::new((num * inv).mod_floor(&modulus), modulus)
}

/// Rank-zero character of `Q_p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Character {
    pub fp: FieldParams,
}

impl Character {
    pub fn new(fp: FieldParams) -> Self {
        Character { fp }
    }

    /// Phase of `chi(x)` in turns, in `[0, 1)`.
    pub fn turns(&self, x: &Point) -> BigRational {
        let sum: BigRational = x.coords().iter().map(|c| fractional_part(c, self.fp.p())).sum();
        &sum - sum.floor()
    }

    pub fn eval(&self, x: &Point) -> Cx {
        Cx::unit(&self.turns(x))
    }

    /// `chi(x . xi)`.
    pub fn pair(&self, x: &Point, xi: &Point) -> Cx {
        Cx::unit(&fractional_part(&x.dot(xi), self.fp.p()))
    }
}

pub fn character_eval(chi: &Character, x: &Point) -> Cx {
    chi.eval(x)
}

/// `(F f)(xi) = int chi(x . xi) f(x) dx`; the inverse uses `chi(-x . xi)`.
///
/// Support and constancy levels swap: `f` supported in `|x| <= q^m` and
/// constant on level-`k` cosets gives a transform supported in `|xi| <= q^k`
/// and constant on level-`m` cosets.
pub fn fourier_transform(f: &TestFunction, inverse: bool) -> Result<TestFunction> {
    let fp = *f.fp();
    let (m, k) = (f.support_radius(), f.constancy_level());
    let cell = q_int_power(&fp, -k);
    let inputs: Vec<(Point, Cx)> = f.cosets().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect();
    let out_grid = CosetGrid::new(&fp, -k, m)?;
    let values = out_grid
        .iter()
        .map(|(_, xi)| {
            let s: Cx = inputs
                .iter()
                .map(|(c, v)| {
                    let mut t = fractional_part(&c.dot(&xi), fp.p());
                    if inverse && !t.is_zero() {
                        t = BigRational::one() - t;
                    }
                    v * &Cx::unit(&t)
                })
                .sum();
            s.scale(&cell)
        })
        .collect();
    TestFunction::new(fp, k, m, values)
}

/// `(D^alpha phi)(x) = F^-1[|xi|^alpha (F phi)](x)`, with `|xi|` the
/// normalized absolute value.
///
/// `|xi|^alpha F phi` is constant on the level-`m` cosets away from the
/// central one, where each coset contributes a character integral. On the
/// central coset the sphere integrals of the character vanish except on the
/// two shells next to `|x|^-1`, which leaves a geometric series.
pub fn multiplier_vladimirov(alpha: Exponent, phi: &TestFunction, x: &Point) -> Result<Cx> {
    let psi = fourier_transform(phi, false)?;
    multiplier_from_transform(alpha, phi.support_radius(), &psi, x)
}

fn multiplier_from_transform(alpha: Exponent, m: i64, psi: &TestFunction, x: &Point) -> Result<Cx> {
    if alpha <= Exponent::zero() {
        return invalid(format!("alpha must be positive, got {alpha}"));
    }
    let fp = *psi.fp();
    let chi = Character::new(fp);
    let e = fp.abs_exp(x);
    let mut acc = Cx::zero();
    if e.is_none_or(|e| e <= m) {
        let cell = q_int_power(&fp, -m);
        for (c, v) in psi.cosets() {
            let Some(ec) = fp.abs_exp(&c) else { continue };
            if ec <= -m || v.is_zero() {
                continue;
            }
            let phase = chi.pair(&(-x), &c);
            acc = &acc + &(v * &phase).scale(&(&q_power(&fp, alpha, ec) * &cell));
        }
    }
    let central = psi.eval(&Point::zero(x.dim()));
    if !central.is_zero() {
        let q = fp.q() as i64;
        let one = Exponent::one();
        let start = e.map_or(m, |e| e.max(m));
        let mut radial = &Num::ratio(q - 1, q) * &geometric_tail(&fp, alpha + one, start)?;
        if let Some(e) = e {
            if e > m {
                let edge = &q_power(&fp, alpha, -(e - 1)) * &q_int_power(&fp, -e);
                radial = &radial - &edge;
            }
        }
        acc = &acc + &central.scale(&radial);
    }
    Ok(acc)
}

/// The multiplier path evaluated at every level-`k` coset of `|x| <= q^window`.
pub fn multiplier_on_window(alpha: Exponent, phi: &TestFunction, window: i64) -> Result<Vec<(Point, Cx)>> {
    let psi = fourier_transform(phi, false)?;
    let grid = CosetGrid::new(phi.fp(), -window, phi.constancy_level())?;
    grid.iter()
        .map(|(_, x)| {
            let v = multiplier_from_transform(alpha, phi.support_radius(), &psi, &x)?;
            Ok((x, v))
        })
        .collect()
}
