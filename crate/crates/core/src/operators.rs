//! The Vladimirov operator `D^alpha`, its truncations `D^alpha_eps`, Riesz
//! potentials `D^-alpha`, and the averaging kernel through which
//! `D^alpha_eps D^-alpha phi` becomes an average of `phi`.
//!
//! On a degree-`n` unramified extension the operators act with the
//! normalized absolute value, so the exponent that enters every formula is
//! `gamma = alpha / n` and `q` is the residue field size of the extension.
//!
//! Conventions: `eps = q^-nu` with `nu >= 1` and `sigma = p^nu`; the kernel
//! shell `j` is `|tau| = q^-j`.

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::field::{CosetGrid, FieldParams, Point};
use crate::functions::{modulus_of_continuity, ExtendedFunction, Tail, TestFunction};
use crate::integrate::{brute_force_oracle, integrate_product, OracleConfig, RadialProfile, Region, TailModel};
use crate::numerics::{
    exponent_to_f64, geometric_tail, q_int_power, q_power, weighted_geometric_tail, Cx, ExactScalar, Exponent, Num,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorParams {
    pub fp: FieldParams,
    pub alpha: Exponent,
}

impl OperatorParams {
    pub fn new(fp: FieldParams, alpha: Exponent) -> Result<Self> {
        if alpha <= Exponent::zero() {
            return invalid(format!("alpha must be positive, got {alpha}"));
        }
        Ok(OperatorParams { fp, alpha })
    }

    /// `alpha / n`, the exponent against the normalized absolute value.
    pub fn gamma(&self) -> Exponent {
        self.alpha / Exponent::from_integer(self.fp.degree() as i64)
    }

    pub fn is_log_case(&self) -> bool {
        self.gamma() == Exponent::one()
    }

    fn q(&self) -> i64 {
        self.fp.q() as i64
    }

    fn qg(&self, k: i64) -> Num {
        q_power(&self.fp, self.gamma(), k)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constants {
    pub c: Num,
    pub d: Num,
    pub cd: Num,
}

/// `c = (1 - q^g) / (1 - q^(-g-1))`, `d = (1 - q^-g) / (1 - q^(g-1))`, and for
/// `g = 1` the logarithmic `d_1 = (1 - q) / (q ln q)`.
pub fn constants(params: &OperatorParams) -> Constants {
    let fp = &params.fp;
    let g = params.gamma();
    let one = Num::one();
    let c = &(&one - &params.qg(1)) / &(&one - &q_power(fp, -g - Exponent::one(), 1));
    let d = if params.is_log_case() {
        let q = params.q();
        Num::Exact(ExactScalar::log_monomial(fp.q(), -1, num_rational::BigRational::new((1 - q).into(), q.into())))
    } else {
        &(&one - &params.qg(-1)) / &(&one - &q_power(fp, g - Exponent::one(), 1))
    };
    let cd = &c * &d;
    Constants { c, d, cd }
}

/// `(1 - q^-g)^2 / (q^(-2g-1) - q^-g - q^(-g-2) + q^-1)`, the closed form of
/// `c d` for `g != 1`.
pub fn cd_product_form(params: &OperatorParams) -> Result<Num> {
    if params.is_log_case() {
        return Err(Error::Unsupported("the product form needs gamma != 1".into()));
    }
    let fp = &params.fp;
    let one = Num::one();
    let a = &one - &params.qg(-1);
    let two_g1 = q_power(fp, -params.gamma() * Exponent::from_integer(2) - Exponent::one(), 1);
    let g2 = q_power(fp, -params.gamma() - Exponent::from_integer(2), 1);
    let den = &(&(&two_g1 - &params.qg(-1)) - &g2) + &q_int_power(fp, -1);
    Ok(&(&a * &a) / &den)
}

/// The function `D^-alpha phi`, exact on the support window of `phi` and
/// beyond it through its radial tail.
pub fn riesz_potential(params: &OperatorParams, phi: &TestFunction) -> Result<ExtendedFunction> {
    let fp = params.fp;
    if phi.fp() != &fp {
        return invalid("test function and operator live on different fields");
    }
    let d = constants(params).d;
    let src: ExtendedFunction = phi.into();
    let mass = phi.integral();
    let g = params.gamma();
    let log = params.is_log_case();
    let core = TestFunction::tabulate(fp, phi.support_radius(), phi.constancy_level(), |x| {
        let prof =
            if log { RadialProfile::log_abs(x.clone()) } else { RadialProfile::power(g - Exponent::one(), x.clone()) };
        let v = integrate_product(&fp, &prof, &src, &Region::Whole)
            .expect("compactly supported integrand against a locally integrable kernel");
        v.scale(&d)
    })?;
    let tail =
        if log { Tail::log(Cx::zero(), mass.scale(&d)) } else { Tail::power(mass.scale(&d), g - Exponent::one()) };
    Ok(ExtendedFunction::new(core, tail))
}

/// `c int_{|y - x| >= q^-nu} (u(y) - u(x)) |y - x|^(-g-1) dy` for any integer `nu`.
fn truncated_at(params: &OperatorParams, nu: i64, u: &ExtendedFunction, x: &Point) -> Result<Cx> {
    let fp = params.fp;
    if u.fp() != &fp {
        return invalid("function and operator live on different fields");
    }
    let c = constants(params).c;
    let prof = RadialProfile::power(-params.gamma() - Exponent::one(), x.clone());
    let region = Region::AtLeast { center: x.clone(), level: nu };
    let ux = u.eval(x);
    let moving = integrate_product(&fp, &prof, u, &region)?;
    let fixed = if ux.is_zero() {
        Cx::zero()
    } else {
        integrate_product(&fp, &prof, &ExtendedFunction::constant(fp, ux), &region)?
    };
    Ok((&moving - &fixed).scale(&c))
}

/// `(D^alpha_eps u)(x)` with `eps = q^-nu`.
pub fn truncated_vladimirov(params: &OperatorParams, nu: i64, u: &ExtendedFunction, x: &Point) -> Result<Cx> {
    if nu <= 0 {
        return invalid(format!("truncation index nu must be a positive integer, got {nu}"));
    }
    truncated_at(params, nu, u, x)
}

/// `(D^alpha u)(x)`. Shells inside the ball where `u` is constant contribute
/// nothing, so the principal value is the truncation just above that ball.
pub fn vladimirov_hypersingular(params: &OperatorParams, u: &ExtendedFunction, x: &Point) -> Result<Cx> {
    truncated_at(params, u.constancy_level_at(x) - 1, u, x)
}

/// `R(tau)` on the shell `|tau| = q^-j`.
pub fn kernel_r(params: &OperatorParams, j: i64) -> Num {
    if j <= 0 {
        return Num::zero();
    }
    let fp = &params.fp;
    let q = params.q();
    if params.is_log_case() {
        let coeff = &Num::ratio(1, q - 1) + &Num::int(j);
        return &coeff * &Num::ln_q(fp.q());
    }
    let a = kernel_a(params);
    &Num::one() - &(&a * &q_power(fp, Exponent::one() - params.gamma(), j))
}

fn kernel_a(params: &OperatorParams) -> Num {
    let q = params.q();
    &Num::ratio(q - 1, q) / &(&Num::one() - &params.qg(-1))
}

/// `R_1 = c d R`.
pub fn kernel_r1(params: &OperatorParams, j: i64) -> Num {
    &constants(params).cd * &kernel_r(params, j)
}

/// `int R_1`, summed in closed form over the shells `j >= 1`.
pub fn kernel_integral(params: &OperatorParams) -> Result<Num> {
    let fp = &params.fp;
    let q = params.q();
    let shell = Num::ratio(q - 1, q);
    let one = Exponent::one();
    let sum = if params.is_log_case() {
        let plain = &Num::ratio(1, q - 1) * &geometric_tail(fp, one, 1)?;
        &(&plain + &weighted_geometric_tail(fp, one, 1)?) * &Num::ln_q(fp.q())
    } else {
        &geometric_tail(fp, one, 1)? - &(&kernel_a(params) * &geometric_tail(fp, params.gamma(), 1)?)
    };
    Ok(&(&constants(params).cd * &shell) * &sum)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelShell {
    pub j: i64,
    pub r: Num,
    pub r1: Num,
    /// Haar measure of the shell.
    pub measure: Num,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelShellTable {
    pub params: OperatorParams,
    pub cd: Num,
    pub shells: Vec<KernelShell>,
    /// `int R_1` over all shells, in closed form.
    pub integral: Num,
}

impl KernelShellTable {
    /// Smallest `R_1` over the tabulated shells with `j >= 1`.
    pub fn min_r1(&self) -> Option<f64> {
        self.shells.iter().filter(|s| s.j >= 1).map(|s| s.r1.to_f64()).reduce(f64::min)
    }
}

pub fn kernel_table(params: &OperatorParams, shells: std::ops::RangeInclusive<i64>) -> Result<KernelShellTable> {
    let q = params.q();
    let shell_measure = Num::ratio(q - 1, q);
    let cd = constants(params).cd;
    let rows = shells
        .map(|j| {
            let r = kernel_r(params, j);
            KernelShell { j, r1: &cd * &r, r, measure: &shell_measure * &q_int_power(&params.fp, -j) }
        })
        .collect();
    Ok(KernelShellTable { params: *params, cd, shells: rows, integral: kernel_integral(params)? })
}

/// Oracle depth settings for [`kernel_r_oracle`].
#[derive(Clone, Copy, Debug)]
pub struct KernelOracleDepth {
    pub refine: i64,
    pub outer_shells: i64,
}

impl Default for KernelOracleDepth {
    fn default() -> Self {
        KernelOracleDepth { refine: 8, outer_shells: 8 }
    }
}

/// `R(tau)` from its defining integral
/// `int_{|xi| >= 1} |xi|^(-g-1) (|xi + tau|^(g-1) - |tau|^(g-1)) dxi`
/// (with logarithms when `g = 1`), evaluated by the coset-sum oracle.
pub fn kernel_r_oracle(params: &OperatorParams, j: i64, depth: KernelOracleDepth) -> Result<f64> {
    let fp = params.fp;
    let g = params.gamma();
    let one = Exponent::one();
    let tau = Point::prime_power(&fp, j);
    let minus_tau = -&tau;
    let log = params.is_log_case();
    let ln_q = Num::ln_q(fp.q());
    let sampler = move |xi: &Point| -> Cx {
        let e_xi = fp.abs_exp(xi).expect("region excludes 0");
        let e_sum = fp.abs_exp(&(xi + &tau)).expect("never sampled at -tau");
        let weight = q_power(&fp, -g - one, e_xi);
        let diff = if log {
            // ln|xi + tau| - ln|tau| = (e + j) ln q
            &Num::int(e_sum + j) * &ln_q
        } else {
            &q_power(&fp, g - one, e_sum) - &q_power(&fp, g - one, -j)
        };
        Cx::real(&weight * &diff)
    };
    let region = Region::AtLeast { center: Point::zero(fp.degree() as usize), level: 0 };
    let (inner, outer) = if log {
        (TailModel::singular_log(), TailModel::decay_log_power(Exponent::from_integer(-2)))
    } else {
        (TailModel::singular_power(g - one), TailModel::decay_powers(&[Exponent::from_integer(-2), -g - one]))
    };
    let singular = if j <= 0 { vec![minus_tau] } else { vec![] };
    let cfg =
        OracleConfig::bounded(1, singular, depth.refine, inner).with_outer((-j).max(0) + depth.outer_shells, 1, outer);
    let res = brute_force_oracle(&fp, &sampler, &region, &cfg)?;
    Ok(res.value.re.to_f64())
}

fn check_averaging_hypotheses(params: &OperatorParams, phi: &TestFunction) -> Result<()> {
    if params.gamma() > Exponent::one() && !phi.integral().is_zero() {
        return Err(Error::Hypothesis(format!(
            "gamma = {} > 1 needs a test function with zero integral",
            params.gamma()
        )));
    }
    Ok(())
}

/// `c d int R(tau) phi(x - sigma tau) dtau` with `sigma = p^nu`.
///
/// Shell `j` of the kernel sees `phi` on the sphere `|t| = q^(-j-nu)` around
/// `x`; once that sphere is inside the constancy ball of `phi` the remaining
/// shells are a geometric series in `phi(x)`.
pub fn averaging_apply(params: &OperatorParams, nu: i64, phi: &TestFunction, x: &Point) -> Result<Cx> {
    if nu <= 0 {
        return invalid(format!("truncation index nu must be a positive integer, got {nu}"));
    }
    check_averaging_hypotheses(params, phi)?;
    let fp = &params.fp;
    let q = params.q();
    let k = phi.constancy_level();
    let stop = (k - nu).max(1);
    let scale = q_int_power(fp, nu);
    let mut acc = Cx::zero();
    for j in 1..stop {
        let s = phi.sphere_integral(x, j + nu);
        acc = &acc + &s.scale(&(&kernel_r(params, j) * &scale));
    }
    let phix = phi.eval(x);
    if !phix.is_zero() {
        let one = Exponent::one();
        let series = if params.is_log_case() {
            let plain = &Num::ratio(1, q - 1) * &geometric_tail(fp, one, stop)?;
            &(&plain + &weighted_geometric_tail(fp, one, stop)?) * &Num::ln_q(fp.q())
        } else {
            &geometric_tail(fp, one, stop)? - &(&kernel_a(params) * &geometric_tail(fp, params.gamma(), stop)?)
        };
        acc = &acc + &phix.scale(&(&Num::ratio(q - 1, q) * &series));
    }
    Ok(acc.scale(&constants(params).cd))
}

/// `int R_1(tau) (phi(x - sigma tau) - phi(x)) dtau`, which equals
/// `averaging_apply - phi(x)` because `R_1` has unit integral. Only the
/// shells on which `phi` still varies around `x` contribute, so this is an
/// exact zero whenever `phi` is constant on `B(x, nu + 1)`.
pub fn averaging_deviation(params: &OperatorParams, nu: i64, phi: &TestFunction, x: &Point) -> Result<Cx> {
    if nu <= 0 {
        return invalid(format!("truncation index nu must be a positive integer, got {nu}"));
    }
    check_averaging_hypotheses(params, phi)?;
    let fp = &params.fp;
    let q = params.q();
    let scale = q_int_power(fp, nu);
    let phix = phi.eval(x);
    let mut acc = Cx::zero();
    for j in 1..(phi.constancy_level() - nu) {
        let moved = phi.sphere_integral(x, j + nu).scale(&scale);
        let fixed = phix.scale(&(&Num::ratio(q - 1, q) * &q_int_power(fp, -j)));
        acc = &acc + &(&moved - &fixed).scale(&kernel_r(params, j));
    }
    Ok(acc.scale(&constants(params).cd))
}

/// Residual `D^alpha_eps D^-alpha phi - phi` on its support.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionResidual {
    pub nu: i64,
    /// `L^p` norm of the residual.
    pub norm: f64,
    /// Every tabulated residual value is an exact zero.
    pub exact_zero: bool,
    pub warnings: Vec<String>,
}

/// Warnings for parameters outside the stated hypotheses that still yield a
/// meaningful computation on test functions.
pub fn hypothesis_warnings(params: &OperatorParams, lp: f64) -> Vec<String> {
    let g = exponent_to_f64(params.gamma());
    let mut out = Vec::new();
    if params.gamma() < Exponent::one() && lp * g >= 1.0 {
        out.push(format!("p = {lp} is outside 1 <= p < 1/gamma = {}", 1.0 / g));
    }
    if params.is_log_case() && lp != 1.0 {
        out.push(format!("gamma = 1 convergence is stated for p = 1 only, got p = {lp}"));
    }
    out
}

/// Window radius on which the residual for truncation `nu` can be nonzero.
pub fn residual_window(phi: &TestFunction, nu: i64) -> i64 {
    phi.support_radius().max(-nu - 1)
}

/// `|| D^alpha_eps (D^-alpha phi) - phi ||_{L^p}` via [`averaging_deviation`].
pub fn inversion_residual(params: &OperatorParams, lp: f64, phi: &TestFunction, nu: i64) -> Result<InversionResidual> {
    if !(lp.is_finite() && lp >= 1.0) {
        return invalid(format!("L^p exponent must be >= 1, got {lp}"));
    }
    check_averaging_hypotheses(params, phi)?;
    let fp = params.fp;
    let k = phi.constancy_level();
    let grid = CosetGrid::new(&fp, -residual_window(phi, nu), k)?;
    let cell = q_int_power(&fp, -k).to_f64();
    let mut total = 0.0;
    let mut exact_zero = true;
    for (_, x) in grid.iter() {
        let r = averaging_deviation(params, nu, phi, &x)?;
        if !(r.is_exact() && r.is_zero()) {
            exact_zero = false;
        }
        let a = r.abs();
        if a != 0.0 {
            total += a.powf(lp) * cell;
        }
    }
    Ok(InversionResidual { nu, norm: total.powf(1.0 / lp), exact_zero, warnings: hypothesis_warnings(params, lp) })
}

/// `int R_1(tau) omega_p(phi, sigma tau) dtau`, the Minkowski bound on the
/// residual. The modulus is integrated over each shell coset by coset.
pub fn minkowski_bound(params: &OperatorParams, lp: f64, phi: &TestFunction, nu: i64) -> Result<f64> {
    if nu <= 0 {
        return invalid(format!("truncation index nu must be a positive integer, got {nu}"));
    }
    let fp = params.fp;
    let k = phi.constancy_level();
    let mut bound = 0.0;
    for j in 1..(k - nu) {
        let level = j + nu;
        let grid = CosetGrid::new(&fp, level, k)?;
        let mut shell = 0.0;
        for (_, h) in grid.iter() {
            if fp.abs_exp(&h).is_none_or(|e| e < -level) {
                continue;
            }
            shell += modulus_of_continuity(phi, &h, lp)?;
        }
        let measure = q_int_power(&fp, -k).to_f64();
        bound += kernel_r1(params, j).to_f64() * q_int_power(&fp, nu).to_f64() * shell * measure;
    }
    Ok(bound)
}

/// Level-`k` cosets of the window dilated by one level, where operator
/// outputs differ from their tail behaviour.
pub fn window_cosets(phi: &TestFunction) -> Result<Vec<Point>> {
    let grid = CosetGrid::new(phi.fp(), -(phi.support_radius() + 1), phi.constancy_level())?;
    Ok(grid.iter().map(|(_, x)| x).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, alpha: Exponent) -> OperatorParams {
        OperatorParams::new(FieldParams::new(p, 1).unwrap(), alpha).unwrap()
    }

    fn half() -> Exponent {
        Exponent::new(1, 2)
    }

    #[test]
    fn constants_examples() {
        let c1 = constants(&params(2, 1.into()));
        assert_eq!(c1.c, Num::ratio(-4, 3));
        let k2 = constants(&params(2, 2.into()));
        assert_eq!(k2.d, Num::ratio(-3, 4));
        assert_eq!(k2.c, Num::ratio(-24, 7));
        assert_eq!(k2.cd, Num::ratio(18, 7));
        assert_eq!(cd_product_form(&params(2, 2.into())).unwrap(), Num::ratio(18, 7));
        let h = constants(&params(2, half()));
        assert!((h.d.to_f64() - 1.0).abs() < 1e-15);
        assert!((h.cd.to_f64() + 0.6407545).abs() < 1e-7);
        assert!((cd_product_form(&params(2, half())).unwrap().to_f64() - h.cd.to_f64()).abs() < 1e-12);
        assert!(OperatorParams::new(FieldParams::new(2, 1).unwrap(), 0.into()).is_err());
    }

    #[test]
    fn log_constant_cancels() {
        let k = constants(&params(2, 1.into()));
        // c_1 d_1 = q (q - 1) / ((q + 1) ln q)
        let expect = ExactScalar::log_monomial(2, -1, num_rational::BigRational::new(2.into(), 3.into()));
        assert_eq!(k.cd, Num::Exact(expect));
    }

    #[test]
    fn kernel_examples() {
        let p = params(2, half());
        assert!((kernel_r(&p, 1).to_f64() + 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(kernel_r(&p, 0), Num::zero());
        let l = params(2, 1.into());
        assert_eq!(kernel_r(&l, 2), &Num::int(3) * &Num::ln_q(2));
        assert_eq!(kernel_r1(&l, 1), Num::ratio(4, 3));
        assert_eq!(kernel_integral(&l).unwrap(), Num::one());
        assert_eq!(kernel_integral(&params(3, 2.into())).unwrap(), Num::one());
        assert!((kernel_integral(&p).unwrap().to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_oracle_examples() {
        let d = KernelOracleDepth::default();
        let p = params(2, half());
        assert!((kernel_r_oracle(&p, 1, d).unwrap() + 2f64.sqrt()).abs() < 1e-10);
        assert!(kernel_r_oracle(&p, -1, d).unwrap().abs() < 1e-10);
        let p = params(3, Exponent::new(7, 10));
        assert!(kernel_r_oracle(&p, 0, d).unwrap().abs() < 1e-10);
        let l = params(2, 1.into());
        assert!((kernel_r_oracle(&l, 2, d).unwrap() - 3.0 * 2f64.ln()).abs() < 1e-10);
    }

    fn one_o(p: u64) -> TestFunction {
        TestFunction::indicator_ball(FieldParams::new(p, 1).unwrap(), 0)
    }

    #[test]
    fn riesz_examples() {
        let u = riesz_potential(&params(2, half()), &one_o(2)).unwrap();
        assert!((u.eval(&Point::zero(1)).re.to_f64() - (1.0 + 0.5f64.sqrt())).abs() < 1e-12);
        assert!((u.eval(&Point::from_ratios(&[(1, 4)])).re.to_f64() - 0.5).abs() < 1e-12);

        let l = riesz_potential(&params(2, 1.into()), &one_o(2)).unwrap();
        assert_eq!(l.eval(&Point::zero(1)), Cx::ratio(1, 2));
        assert_eq!(l.eval(&Point::from_ratios(&[(1, 4)])), Cx::ratio(-1, 1));

        let z = riesz_potential(&params(3, half()), &TestFunction::zero(FieldParams::new(3, 1).unwrap())).unwrap();
        assert!(z.core().values().iter().all(Cx::is_zero) && z.tail().is_zero());
    }

    #[test]
    fn hypersingular_examples() {
        let p = params(2, 1.into());
        let u: ExtendedFunction = one_o(2).into();
        assert_eq!(vladimirov_hypersingular(&p, &u, &Point::from_ints(&[1])).unwrap(), Cx::ratio(2, 3));
        assert_eq!(vladimirov_hypersingular(&p, &u, &Point::from_ratios(&[(1, 2)])).unwrap(), Cx::ratio(-1, 3));
        let v = vladimirov_hypersingular(&params(2, half()), &u, &Point::zero(1)).unwrap();
        assert!((v.re.to_f64() - 0.773459080339014).abs() < 1e-12);
    }

    #[test]
    fn truncated_recovers_indicator() {
        for alpha in [half(), 1.into()] {
            let p = params(2, alpha);
            let u = riesz_potential(&p, &one_o(2)).unwrap();
            let v = truncated_vladimirov(&p, 1, &u, &Point::zero(1)).unwrap();
            assert!(v.dist(&Cx::one()) < 1e-12, "alpha {alpha}: {v}");
        }
        let p = params(2, 1.into());
        let u = riesz_potential(&p, &one_o(2)).unwrap();
        assert_eq!(truncated_vladimirov(&p, 1, &u, &Point::zero(1)).unwrap(), Cx::one());
        assert!(truncated_vladimirov(&p, 0, &u, &Point::zero(1)).is_err());
    }

    #[test]
    fn averaging_examples() {
        for alpha in [half(), 1.into()] {
            let p = params(2, alpha);
            let v = averaging_apply(&p, 1, &one_o(2), &Point::zero(1)).unwrap();
            assert!(v.dist(&Cx::one()) < 1e-12);
            let v = averaging_apply(&p, 1, &one_o(2), &Point::from_ratios(&[(1, 2)])).unwrap();
            assert!(v.abs() < 1e-15);
        }
        let p = params(2, 2.into());
        assert!(matches!(averaging_apply(&p, 1, &one_o(2), &Point::zero(1)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn residual_examples() {
        let p = params(2, half());
        let r = inversion_residual(&p, 1.0, &one_o(2), 1).unwrap();
        assert_eq!(r.norm, 0.0);
        let small = TestFunction::indicator_ball(FieldParams::new(2, 1).unwrap(), 3);
        let r = inversion_residual(&p, 1.0, &small, 1).unwrap();
        let bound = minkowski_bound(&p, 1.0, &small, 1).unwrap();
        assert!(r.norm > 0.0 && r.norm <= bound + 1e-10, "{} vs {bound}", r.norm);
        let r = inversion_residual(&p, 1.0, &small, 2).unwrap();
        assert!(r.exact_zero || r.norm < 1e-14);
        assert!(inversion_residual(&p, 2.5, &one_o(2), 1).unwrap().warnings.len() == 1);
        for x in window_cosets(&small).unwrap() {
            let direct = &averaging_apply(&p, 1, &small, &x).unwrap() - &small.eval(&x);
            let dev = averaging_deviation(&p, 1, &small, &x).unwrap();
            assert!(direct.dist(&dev) < 1e-12);
        }
    }
}
