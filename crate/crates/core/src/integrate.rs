//! Haar integrals of radial profiles against locally constant functions.
//!
//! The four closed forms below are the building blocks. [`integrate_product`]
//! splits a region into shells around the profile's center: shells where the
//! function varies are summed one by one, the ball on which it is constant is
//! closed with a closed form, and the shells far out, where the function has
//! become its radial tail, are summed as geometric series.

pub mod oracle;

use crate::error::{invalid, Error, Result};
use crate::field::{ball_contains, FieldParams, Point};
use crate::functions::{ExtendedFunction, Tail};
use crate::numerics::{geometric_tail, q_int_power, q_power, weighted_geometric_tail, Cx, ExactScalar, Exponent, Num};

pub use oracle::{brute_force_oracle, Mode, OracleConfig, OracleResult, TailModel};

fn one_minus_inv_q(fp: &FieldParams) -> Num {
    let q = fp.q() as i64;
    Num::ratio(q - 1, q)
}

/// `int_{|x| <= q^n} |x|^(alpha - 1) dx = (1 - q^-1) / (1 - q^-alpha) q^(alpha n)`.
pub fn power_over_ball(fp: &FieldParams, alpha: Exponent, n: i64) -> Result<Num> {
    if alpha <= Exponent::from_integer(0) {
        return Err(Error::Divergent(format!("|x|^({alpha} - 1) is not integrable at the origin")));
    }
    let denom = &Num::one() - &q_power(fp, alpha, -1);
    Ok(&(&one_minus_inv_q(fp) / &denom) * &q_power(fp, alpha, n))
}

/// `int_{|x| = q^n} |x - a|^(alpha - 1) dx` for `|a| = q^n`:
/// `(q - 2 + q^-alpha) / (q (1 - q^-alpha)) |a|^alpha`.
pub fn shifted_power_over_sphere(fp: &FieldParams, alpha: Exponent, n: i64) -> Result<Num> {
    if alpha <= Exponent::from_integer(0) {
        return Err(Error::Divergent(format!("|x - a|^({alpha} - 1) is not integrable near a")));
    }
    let q = fp.q() as i64;
    let qa = q_power(fp, alpha, -1);
    let num = &Num::int(q - 2) + &qa;
    let den = &Num::int(q) * &(&Num::one() - &qa);
    Ok(&(&num / &den) * &q_power(fp, alpha, n))
}

/// `int_{|x| <= q^n} ln|x| dx = (n - 1/(q - 1)) q^n ln q`.
pub fn log_over_ball(fp: &FieldParams, n: i64) -> ExactScalar {
    let q = fp.q() as i64;
    let c = &ExactScalar::from_int(n) - &ExactScalar::ratio(1, q - 1);
    let qn = q_int_power(fp, n).as_rational().expect("integer power of q");
    &(&c * &ExactScalar::from_rational(qn)) * &ExactScalar::ln_q(fp.q())
}

/// `int_{|x| = q^n} ln|x - a| dx` for `|a| = q^n`:
/// `((1 - 1/q) ln|a| - ln q / (q - 1)) |a|`.
pub fn shifted_log_over_sphere(fp: &FieldParams, n: i64) -> ExactScalar {
    let q = fp.q() as i64;
    let c = &(&ExactScalar::ratio(q - 1, q) * &ExactScalar::from_int(n)) - &ExactScalar::ratio(1, q - 1);
    let qn = q_int_power(fp, n).as_rational().expect("integer power of q");
    &(&c * &ExactScalar::from_rational(qn)) * &ExactScalar::ln_q(fp.q())
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProfileKind {
    /// `|y - center|^s`
    Power(Exponent),
    /// `ln |y - center|`
    LogAbs,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile {
    pub kind: ProfileKind,
    pub center: Point,
}

impl RadialProfile {
    pub fn power(s: Exponent, center: Point) -> Self {
        RadialProfile { kind: ProfileKind::Power(s), center }
    }

    pub fn log_abs(center: Point) -> Self {
        RadialProfile { kind: ProfileKind::LogAbs, center }
    }

    /// Value on the sphere `|y - center| = q^e`.
    pub fn value_at_exp(&self, fp: &FieldParams, e: i64) -> Num {
        match self.kind {
            ProfileKind::Power(s) => q_power(fp, s, e),
            ProfileKind::LogAbs => &Num::int(e) * &Num::ln_q(fp.q()),
        }
    }

    /// `None` at the center.
    pub fn eval(&self, fp: &FieldParams, y: &Point) -> Option<Num> {
        fp.abs_exp(&(y - &self.center)).map(|e| self.value_at_exp(fp, e))
    }

    /// Integral over `B(center, level)`.
    fn over_centered_ball(&self, fp: &FieldParams, level: i64) -> Result<Num> {
        match self.kind {
            ProfileKind::Power(s) => power_over_ball(fp, s + 1, -level),
            ProfileKind::LogAbs => Ok(log_over_ball(fp, -level).into()),
        }
    }
}

/// Integration domains. Levels follow the ball convention: radius `q^(-level)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Whole,
    /// `|y - center| <= q^(-level)`
    Ball {
        center: Point,
        level: i64,
    },
    /// `|y - center| = q^(-level)`
    Sphere {
        center: Point,
        level: i64,
    },
    /// `|y - center| >= q^(-level)`
    AtLeast {
        center: Point,
        level: i64,
    },
}

impl Region {
    pub fn contains(&self, fp: &FieldParams, y: &Point) -> bool {
        match self {
            Region::Whole => true,
            Region::Ball { center, level } => ball_contains(fp, center, *level, y),
            Region::Sphere { center, level } => {
                ball_contains(fp, center, *level, y) && !ball_contains(fp, center, level + 1, y)
            }
            Region::AtLeast { center, level } => !ball_contains(fp, center, level + 1, y),
        }
    }
}

struct Engine<'a> {
    fp: FieldParams,
    profile: &'a RadialProfile,
    f: &'a ExtendedFunction,
}

impl Engine<'_> {
    fn a(&self) -> &Point {
        &self.profile.center
    }

    fn g(&self, e: i64) -> Num {
        self.profile.value_at_exp(&self.fp, e)
    }

    /// Profile value at a point other than the center.
    fn g_at(&self, y: &Point) -> Num {
        self.profile.eval(&self.fp, y).expect("point differs from the profile center")
    }

    /// Integral over `B(a, level)`.
    fn centered_ball(&self, level: i64) -> Result<Cx> {
        let a = self.a();
        let ka = self.f.constancy_level_at(a);
        let stop = level.max(ka);
        let mut acc = Cx::zero();
        for i in level..stop {
            acc = &acc + &self.f.sphere_integral(a, i).scale(&self.g(-i));
        }
        let fa = self.f.eval(a);
        if !fa.is_zero() {
            acc = &acc + &fa.scale(&self.profile.over_centered_ball(&self.fp, stop)?);
        }
        Ok(acc)
    }

    /// Integral over `|y - a| >= q^(-level)`.
    fn centered_outer(&self, level: i64) -> Result<Cx> {
        let a = self.a();
        let big_m = self.f.window_radius();
        let reach = self.fp.abs_exp(a).map_or(big_m, |e| e.max(big_m));
        let j0 = (reach + 1).max(-level);
        let mut acc = Cx::zero();
        for j in -level..j0 {
            acc = &acc + &self.f.sphere_integral(a, -j).scale(&self.g(j));
        }
        Ok(&acc + &self.tail_closure(j0)?)
    }

    /// `sum_{j >= j0} g(q^j) tail(q^j) (1 - q^-1) q^j`, valid once the spheres
    /// around `a` lie beyond both `|a|` and the window.
    fn tail_closure(&self, j0: i64) -> Result<Cx> {
        let fp = &self.fp;
        let shell = one_minus_inv_q(fp);
        let ln_q = Num::ln_q(fp.q());
        let one = Exponent::from_integer(1);
        match (&self.profile.kind, self.f.tail()) {
            (_, Tail::Zero) => Ok(Cx::zero()),
            (ProfileKind::Power(s), Tail::Power { coeff, exponent }) => {
                let g = geometric_tail(fp, -(s + exponent + one), j0)?;
                Ok(coeff.scale(&(&shell * &g)))
            }
            (ProfileKind::Power(s), Tail::Log { c0, c1 }) => {
                let plain = geometric_tail(fp, -(s + one), j0)?;
                let weighted = weighted_geometric_tail(fp, -(s + one), j0)?;
                let a = c0.scale(&plain);
                let b = c1.scale(&(&ln_q * &weighted));
                Ok((&a + &b).scale(&shell))
            }
            (ProfileKind::LogAbs, Tail::Power { coeff, exponent }) => {
                let weighted = weighted_geometric_tail(fp, -(exponent + one), j0)?;
                Ok(coeff.scale(&(&(&shell * &ln_q) * &weighted)))
            }
            (ProfileKind::LogAbs, Tail::Log { .. }) => {
                Err(Error::Divergent("logarithmic profile against a logarithmic tail".into()))
            }
        }
    }

    fn whole(&self) -> Result<Cx> {
        let ka = self.f.constancy_level_at(self.a());
        Ok(&self.centered_ball(ka)? + &self.centered_outer(ka - 1)?)
    }

    fn region(&self, region: &Region) -> Result<Cx> {
        let fp = &self.fp;
        let a = self.a();
        match region {
            Region::Whole => self.whole(),
            Region::Ball { center, level } => {
                if ball_contains(fp, center, *level, a) {
                    self.centered_ball(*level)
                } else {
                    Ok(self.f.ball_integral(center, *level).scale(&self.g_at(center)))
                }
            }
            Region::Sphere { center, level } => {
                if ball_contains(fp, center, level + 1, a) {
                    Ok(self.f.sphere_integral(a, *level).scale(&self.g(-level)))
                } else if ball_contains(fp, center, *level, a) {
                    let inner = self.f.ball_integral(center, level + 1).scale(&self.g_at(center));
                    Ok(&self.centered_ball(*level)? - &inner)
                } else {
                    Ok(self.f.sphere_integral(center, *level).scale(&self.g_at(center)))
                }
            }
            Region::AtLeast { center, level } => {
                if ball_contains(fp, center, level + 1, a) {
                    self.centered_outer(*level)
                } else {
                    // the excluded ball sits away from a: whole line minus that ball
                    let hole = self.f.ball_integral(center, level + 1).scale(&self.g_at(center));
                    let whole = &self.centered_ball(level + 1)? + &self.centered_outer(*level)?;
                    Ok(&whole - &hole)
                }
            }
        }
    }
}

/// `int_region profile(y) f(y) dy`, exact shell by shell with closed tails.
pub fn integrate_product(
    fp: &FieldParams,
    profile: &RadialProfile,
    f: &ExtendedFunction,
    region: &Region,
) -> Result<Cx> {
    if f.fp() != fp {
        return invalid("function and integral live on different fields");
    }
    if profile.center.dim() != fp.degree() as usize {
        return invalid("profile center has the wrong dimension");
    }
    Engine { fp: *fp, profile, f }.region(region)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::TestFunction;
    use num_rational::BigRational;

    fn fp(p: u64) -> FieldParams {
        FieldParams::new(p, 1).unwrap()
    }

    fn r(n: i64, d: i64) -> Num {
        Num::ratio(n, d)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(power_over_ball(&fp(2), 2.into(), 0).unwrap(), r(2, 3));
        assert_eq!(power_over_ball(&fp(2), 1.into(), 3).unwrap(), r(8, 1));
        let v = power_over_ball(&fp(2), Exponent::new(3, 2), 0).unwrap();
        assert!((v.to_f64() - 0.773459080339014).abs() < 1e-12);
        assert!(power_over_ball(&fp(2), 0.into(), 0).is_err());

        assert_eq!(shifted_power_over_sphere(&fp(2), 2.into(), 0).unwrap(), r(1, 6));
        assert_eq!(shifted_power_over_sphere(&fp(3), 1.into(), 1).unwrap(), r(2, 1));
        let v = shifted_power_over_sphere(&fp(2), Exponent::new(1, 2), 0).unwrap();
        assert!((v.to_f64() - 1.2071067811865475).abs() < 1e-12);

        assert_eq!(log_over_ball(&fp(2), 0), ExactScalar::log_monomial(2, 1, BigRational::from_integer((-1).into())));
        assert_eq!(log_over_ball(&fp(3), 1), ExactScalar::log_monomial(3, 1, BigRational::new(3.into(), 2.into())));
        assert!(log_over_ball(&fp(2), 1).is_zero());

        assert_eq!(
            shifted_log_over_sphere(&fp(2), 0),
            ExactScalar::log_monomial(2, 1, BigRational::from_integer((-1).into()))
        );
        assert_eq!(
            shifted_log_over_sphere(&fp(3), 0),
            ExactScalar::log_monomial(3, 1, BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(
            shifted_log_over_sphere(&fp(2), 1),
            ExactScalar::log_monomial(2, 1, BigRational::from_integer((-1).into()))
        );
    }

    fn one_o(f: FieldParams) -> ExtendedFunction {
        TestFunction::indicator_ball(f, 0).into()
    }

    #[test]
    fn engine_examples() {
        let f = fp(2);
        let zero = Point::zero(1);
        let constant = ExtendedFunction::constant(f, Cx::one());
        let outer = Region::AtLeast { center: zero.clone(), level: 0 };
        let v = integrate_product(&f, &RadialProfile::power((-2).into(), zero.clone()), &constant, &outer).unwrap();
        assert_eq!(v, Cx::one());

        let prof = RadialProfile::power(Exponent::new(-1, 2), zero.clone());
        let v = integrate_product(&f, &prof, &one_o(f), &Region::Whole).unwrap();
        assert!((v.re.to_f64() - 1.7071067811865475).abs() < 1e-12);

        let v = integrate_product(
            &f,
            &RadialProfile::log_abs(zero.clone()),
            &one_o(f),
            &Region::Ball { center: zero.clone(), level: 0 },
        )
        .unwrap();
        assert_eq!(v, Cx::real(Num::Exact(log_over_ball(&f, 0))));
    }

    #[test]
    fn engine_reproduces_closed_forms() {
        for p in [2, 3, 5] {
            let f = fp(p);
            let whole = ExtendedFunction::constant(f, Cx::one());
            for n in -2..=2 {
                for alpha in [1, 2, 3] {
                    let a = Point::prime_power(&f, -n);
                    let prof = RadialProfile::power((alpha - 1).into(), a.clone());
                    let sphere = Region::Sphere { center: Point::zero(1), level: -n };
                    let v = integrate_product(&f, &prof, &whole, &sphere).unwrap();
                    let expect = shifted_power_over_sphere(&f, alpha.into(), n).unwrap();
                    assert_eq!(v, Cx::real(expect), "p={p} n={n} alpha={alpha}");
                }
                let a = Point::prime_power(&f, -n);
                let sphere = Region::Sphere { center: Point::zero(1), level: -n };
                let v = integrate_product(&f, &RadialProfile::log_abs(a), &whole, &sphere).unwrap();
                assert_eq!(v, Cx::real(Num::Exact(shifted_log_over_sphere(&f, n))));
            }
        }
    }

    #[test]
    fn divergence_is_structural() {
        let f = fp(2);
        let zero = Point::zero(1);
        let constant = ExtendedFunction::constant(f, Cx::one());
        let prof = RadialProfile::power((-1).into(), zero.clone());
        assert!(matches!(
            integrate_product(&f, &prof, &constant, &Region::Ball { center: zero.clone(), level: 0 }),
            Err(Error::Divergent(_))
        ));
        let prof = RadialProfile::power(0.into(), zero);
        assert!(matches!(integrate_product(&f, &prof, &constant, &Region::Whole), Err(Error::Divergent(_))));
    }

    #[test]
    fn ball_splits_into_children() {
        let f = fp(3);
        let phi = TestFunction::tabulate(f, 1, 1, |x| Cx::real(Num::int(f.abs_exp(x).unwrap_or(-5) + 2))).unwrap();
        let u = ExtendedFunction::new(phi, Tail::power(Cx::ratio(1, 3), (-2).into()));
        let prof = RadialProfile::power(Exponent::new(1, 1), Point::from_ratios(&[(1, 3)]));
        for level in -2..2 {
            let c = Point::from_ints(&[1]);
            let whole = integrate_product(&f, &prof, &u, &Region::Ball { center: c.clone(), level }).unwrap();
            let step = Point::prime_power(&f, level).coords()[0].clone();
            let parts: Cx = (0..3)
                .map(|d| {
                    let shift = Point::new(vec![step.clone() * BigRational::from_integer(d.into())]);
                    let child = &c + &shift;
                    integrate_product(&f, &prof, &u, &Region::Ball { center: child, level: level + 1 }).unwrap()
                })
                .sum();
            assert_eq!(whole, parts, "level {level}");
        }
    }
}
