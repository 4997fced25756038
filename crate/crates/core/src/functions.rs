//! Test functions (locally constant, compactly supported) and the extended
//! class "test function on a window plus an analytic radial tail" in which
//! Riesz potentials take their values.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::field::{CosetGrid, FieldParams, Point};
use crate::numerics::{q_int_power, q_power, Cx, Exponent, Num};

/// A locally constant function supported in `{|x| <= q^m}` and constant on
/// the level-`k` cosets, stored as a table over those cosets.
#[derive(Clone)]
pub struct TestFunction {
    fp: FieldParams,
    m: i64,
    k: i64,
    grid: CosetGrid,
    values: Vec<Cx>,
    // pyramid[l + m][b] = sum of the table over the b-th level-l subball
    pyramid: Vec<Vec<Cx>>,
}

impl TestFunction {
    /// `values` must follow the lexicographic order of [`CosetGrid`].
    pub fn new(fp: FieldParams, m: i64, k: i64, values: Vec<Cx>) -> Result<Self> {
        if k < -m {
            return invalid(format!("constancy level {k} is coarser than the support level {}", -m));
        }
        let grid = CosetGrid::new(&fp, -m, k)?;
        if values.len() != grid.len() {
            return invalid(format!("value table has {} entries, expected q^(m+k) = {}", values.len(), grid.len()));
        }
        let pyramid = build_pyramid(&fp, m, k, &values)?;
        Ok(TestFunction { fp, m, k, grid, values, pyramid })
    }

    pub fn tabulate(fp: FieldParams, m: i64, k: i64, f: impl Fn(&Point) -> Cx) -> Result<Self> {
        if k < -m {
            return invalid(format!("constancy level {k} is coarser than the support level {}", -m));
        }
        let grid = CosetGrid::new(&fp, -m, k)?;
        let values = grid.iter().map(|(_, x)| f(&x)).collect();
        Self::new(fp, m, k, values)
    }

    pub fn zero(fp: FieldParams) -> Self {
        Self::new(fp, 0, 0, vec![Cx::zero()]).expect("trivial table")
    }

    /// Indicator of `B(0, level)`.
    pub fn indicator_ball(fp: FieldParams, level: i64) -> Self {
        Self::new(fp, -level, level, vec![Cx::one()]).expect("single-cell table")
    }

    pub fn fp(&self) -> &FieldParams {
        &self.fp
    }

    /// `m`: the support lies in `{|x| <= q^m}`, the ball of level `-m`.
    pub fn support_radius(&self) -> i64 {
        self.m
    }

    /// `k`: constant on cosets of `{|x| <= q^(-k)}`.
    pub fn constancy_level(&self) -> i64 {
        self.k
    }

    pub fn grid(&self) -> &CosetGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Cx] {
        &self.values
    }

    pub fn cosets(&self) -> impl Iterator<Item = (Point, &Cx)> + '_ {
        self.grid.iter().map(|(i, x)| (x, &self.values[i]))
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Cx::is_exact)
    }

    pub fn eval(&self, x: &Point) -> Cx {
        match self.grid.index_of(x) {
            Some(i) => self.values[i].clone(),
            None => Cx::zero(),
        }
    }

    fn cell_measure(&self) -> Num {
        q_int_power(&self.fp, -self.k)
    }

    pub fn integral(&self) -> Cx {
        self.pyramid[0][0].scale(&self.cell_measure())
    }

    /// Integral over `B(center, level)`.
    pub fn ball_integral(&self, center: &Point, level: i64) -> Cx {
        match self.grid.index_of(center) {
            Some(i) => {
                if level >= self.k {
                    self.values[i].scale(&q_int_power(&self.fp, -level))
                } else if level >= -self.m {
                    let b = self.grid.block_index(i, level);
                    self.pyramid[(level + self.m) as usize][b].scale(&self.cell_measure())
                } else {
                    self.integral()
                }
            }
            None => {
                // center outside the support ball: either the ball swallows it or misses it
                let e = self.fp.abs_exp(center).expect("nonzero center");
                if e <= -level {
                    self.integral()
                } else {
                    Cx::zero()
                }
            }
        }
    }

    /// Integral over the sphere `|y - center| = q^(-level)`.
    pub fn sphere_integral(&self, center: &Point, level: i64) -> Cx {
        &self.ball_integral(center, level) - &self.ball_integral(center, level + 1)
    }

    /// Same function on a larger window and/or finer grid.
    pub fn refine(&self, m: i64, k: i64) -> Result<Self> {
        if m < self.m || k < self.k {
            return invalid("refinement must not shrink the window or coarsen the grid");
        }
        Self::tabulate(self.fp, m, k, |x| self.eval(x))
    }

    /// `x -> f(x - h)`.
    pub fn translate(&self, h: &Point) -> Self {
        let m = self.fp.abs_exp(h).map_or(self.m, |e| e.max(self.m));
        Self::tabulate(self.fp, m, self.k, |x| self.eval(&(x - h))).expect("translation keeps shape")
    }

    pub fn scale(&self, c: &Cx) -> Self {
        let values = self.values.iter().map(|v| v * c).collect();
        Self::new(self.fp, self.m, self.k, values).expect("same shape")
    }

    /// Pointwise combination on the common refinement.
    pub fn combine(&self, other: &Self, op: impl Fn(&Cx, &Cx) -> Cx) -> Result<Self> {
        if self.fp != other.fp {
            return invalid("functions live on different fields");
        }
        let m = self.m.max(other.m);
        let k = self.k.max(other.k);
        Self::tabulate(self.fp, m, k, |x| op(&self.eval(x), &other.eval(x)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    /// Exact table equality after bringing both to a common grid.
    pub fn same_function(&self, other: &Self) -> bool {
        match self.sub(other) {
            Ok(d) => d.values.iter().all(Cx::is_zero),
            Err(_) => false,
        }
    }
}

fn build_pyramid(fp: &FieldParams, m: i64, k: i64, values: &[Cx]) -> Result<Vec<Vec<Cx>>> {
    let mut levels = vec![values.to_vec()];
    for level in (-m..k).rev() {
        let finer = CosetGrid::new(fp, -m, level + 1)?;
        let coarse_len = CosetGrid::new(fp, -m, level)?.len();
        let mut sums = vec![Cx::zero(); coarse_len];
        let prev = levels.last().expect("nonempty");
        for (i, v) in prev.iter().enumerate() {
            let b = finer.block_index(i, level);
            sums[b] = &sums[b] + v;
        }
        levels.push(sums);
    }
    levels.reverse();
    Ok(levels)
}

impl PartialEq for TestFunction {
    fn eq(&self, other: &Self) -> bool {
        self.fp == other.fp && self.m == other.m && self.k == other.k && self.values == other.values
    }
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("fp", &self.fp)
            .field("m", &self.m)
            .field("k", &self.k)
            .field("values", &self.values.len())
            .finish()
    }
}

/// Behaviour of an extended function outside its window, as a function of
/// `|x| = q^e`.
#[derive(Clone, Debug, PartialEq)]
pub enum Tail {
    Zero,
    /// `coeff * |x|^exponent`
    Power {
        coeff: Cx,
        exponent: Exponent,
    },
    /// `c0 + c1 * ln |x|`
    Log {
        c0: Cx,
        c1: Cx,
    },
}

impl Tail {
    pub fn power(coeff: Cx, exponent: Exponent) -> Self {
        if coeff.is_zero() {
            Tail::Zero
        } else {
            Tail::Power { coeff, exponent }
        }
    }

    pub fn log(c0: Cx, c1: Cx) -> Self {
        if c0.is_zero() && c1.is_zero() {
            Tail::Zero
        } else {
            Tail::Log { c0, c1 }
        }
    }

    /// Value at `|x| = q^e`.
    pub fn value_at(&self, fp: &FieldParams, e: i64) -> Cx {
        match self {
            Tail::Zero => Cx::zero(),
            Tail::Power { coeff, exponent } => coeff.scale(&q_power(fp, *exponent, e)),
            Tail::Log { c0, c1 } => c0 + &c1.scale(&(&Num::int(e) * &Num::ln_q(fp.q()))),
        }
    }

    /// Integral over the shell `|x| = q^e`.
    pub fn shell_integral(&self, fp: &FieldParams, e: i64) -> Cx {
        let q = fp.q() as i64;
        let shell = &Num::ratio(q - 1, q) * &q_int_power(fp, e);
        self.value_at(fp, e).scale(&shell)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Tail::Zero)
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::Zero => write!(f, "0"),
            Tail::Power { coeff, exponent } => write!(f, "({coeff})*|x|^({exponent})"),
            Tail::Log { c0, c1 } => write!(f, "({c0}) + ({c1})*ln|x|"),
        }
    }
}

/// Test function core on `{|x| <= q^M}` plus a radial tail beyond it.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedFunction {
    core: TestFunction,
    tail: Tail,
}

impl From<TestFunction> for ExtendedFunction {
    fn from(core: TestFunction) -> Self {
        ExtendedFunction { core, tail: Tail::Zero }
    }
}

impl From<&TestFunction> for ExtendedFunction {
    fn from(core: &TestFunction) -> Self {
        core.clone().into()
    }
}

impl ExtendedFunction {
    pub fn new(core: TestFunction, tail: Tail) -> Self {
        ExtendedFunction { core, tail }
    }

    /// The constant function `c`.
    pub fn constant(fp: FieldParams, c: Cx) -> Self {
        let core = TestFunction::new(fp, 0, 0, vec![c.clone()]).expect("single-cell table");
        ExtendedFunction { core, tail: Tail::power(c, Exponent::from_integer(0)) }
    }

    pub fn fp(&self) -> &FieldParams {
        self.core.fp()
    }

    pub fn core(&self) -> &TestFunction {
        &self.core
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// `M`: the window is `{|x| <= q^M}`.
    pub fn window_radius(&self) -> i64 {
        self.core.support_radius()
    }

    fn in_window(&self, x: &Point) -> bool {
        self.fp().abs_exp(x).is_none_or(|e| e <= self.window_radius())
    }

    pub fn eval(&self, x: &Point) -> Cx {
        if self.in_window(x) {
            self.core.eval(x)
        } else {
            self.tail.value_at(self.fp(), self.fp().abs_exp(x).expect("nonzero"))
        }
    }

    /// Level `l` such that the function is constant on `B(x, l)`.
    pub fn constancy_level_at(&self, x: &Point) -> i64 {
        if self.in_window(x) {
            self.core.constancy_level()
        } else {
            // every y with |y - x| < |x| has |y| = |x|
            1 - self.fp().abs_exp(x).expect("nonzero")
        }
    }

    /// Integral of the tail over the shells `q^M < |x| <= q^(-level)`.
    fn tail_between(&self, level: i64) -> Cx {
        (self.window_radius() + 1..=-level).map(|e| self.tail.shell_integral(self.fp(), e)).sum()
    }

    pub fn ball_integral(&self, center: &Point, level: i64) -> Cx {
        let big_m = self.window_radius();
        match self.fp().abs_exp(center) {
            Some(e) if e > big_m => {
                if level > -e {
                    // the ball misses the window and lies in the shell |y| = |center|
                    self.tail.value_at(self.fp(), e).scale(&q_int_power(self.fp(), -level))
                } else {
                    &self.core.integral() + &self.tail_between(level)
                }
            }
            _ => {
                if level >= -big_m {
                    self.core.ball_integral(center, level)
                } else {
                    &self.core.integral() + &self.tail_between(level)
                }
            }
        }
    }

    pub fn sphere_integral(&self, center: &Point, level: i64) -> Cx {
        &self.ball_integral(center, level) - &self.ball_integral(center, level + 1)
    }

    /// Decay hypothesis `phi = O(|t|^(-beta))`, `beta > 1`, read off the tail.
    pub fn satisfies_decay_gate(&self) -> bool {
        match &self.tail {
            Tail::Zero => true,
            Tail::Power { exponent, .. } => *exponent < Exponent::from_integer(-1),
            Tail::Log { .. } => false,
        }
    }

    /// Re-tabulate the core on a larger window, evaluating the tail there.
    pub fn widen(&self, m: i64) -> Result<Self> {
        if m < self.window_radius() {
            return invalid("cannot shrink the window");
        }
        let k = self.core.constancy_level();
        let core = TestFunction::tabulate(*self.fp(), m, k, |x| self.eval(x))?;
        Ok(ExtendedFunction { core, tail: self.tail.clone() })
    }
}

enum TailDiff {
    Zero,
    Power(Cx, Exponent),
}

fn tail_difference(a: &Tail, b: &Tail) -> Result<TailDiff> {
    use Tail::*;
    let diff = match (a, b) {
        (Zero, Zero) => TailDiff::Zero,
        (Power { coeff, exponent }, Zero) => TailDiff::Power(coeff.clone(), *exponent),
        (Zero, Power { coeff, exponent }) => TailDiff::Power(-coeff, *exponent),
        (Power { coeff: c1, exponent: s1 }, Power { coeff: c2, exponent: s2 }) if s1 == s2 => {
            let c = c1 - c2;
            if c.is_zero() {
                TailDiff::Zero
            } else {
                TailDiff::Power(c, *s1)
            }
        }
        (Power { .. }, Power { .. }) => {
            return Err(Error::Unsupported("difference of tails with distinct exponents".into()))
        }
        (Log { c0: a0, c1: a1 }, Log { c0: b0, c1: b1 }) if (a0 - b0).is_zero() && (a1 - b1).is_zero() => {
            TailDiff::Zero
        }
        _ => return Err(Error::Divergent("logarithmic tail is not in L^p".into())),
    };
    Ok(diff)
}

/// `||f - g||_{L^p}` for `p >= 1`, float path.
pub fn lp_distance(f: &ExtendedFunction, g: &ExtendedFunction, p: f64) -> Result<f64> {
    if f.fp() != g.fp() {
        return invalid("functions live on different fields");
    }
    if !(p.is_finite() && p >= 1.0) {
        return invalid(format!("L^p exponent must be >= 1, got {p}"));
    }
    let fp = *f.fp();
    let q = fp.q() as f64;
    let big_m = f.window_radius().max(g.window_radius());
    let k = f.core.constancy_level().max(g.core.constancy_level());
    let grid = CosetGrid::new(&fp, -big_m, k)?;
    let cell = q.powi(-k as i32);
    let mut total = 0.0;
    for (_, x) in grid.iter() {
        let d = f.eval(&x).dist(&g.eval(&x));
        if d != 0.0 {
            total += d.powf(p) * cell;
        }
    }
    match tail_difference(&f.tail, &g.tail)? {
        TailDiff::Zero => {}
        TailDiff::Power(c, s) => {
            let s = crate::numerics::exponent_to_f64(s);
            let rate = s * p + 1.0;
            if rate >= 0.0 {
                return Err(Error::Divergent(format!("tail |x|^{s} is not in L^{p}")));
            }
            let x = q.powf(rate);
            let shells = x.powi((big_m + 1) as i32) / (1.0 - x);
            total += c.abs().powf(p) * (1.0 - 1.0 / q) * shells;
        }
    }
    Ok(total.powf(1.0 / p))
}

pub fn lp_norm(f: &ExtendedFunction, p: f64) -> Result<f64> {
    let zero = ExtendedFunction::from(TestFunction::zero(*f.fp()));
    lp_distance(f, &zero, p)
}

/// `omega_p(phi, h) = ||phi - phi(. - h)||_{L^p}`.
pub fn modulus_of_continuity(phi: &TestFunction, h: &Point, p: f64) -> Result<f64> {
    match phi.fp().abs_exp(h) {
        None => Ok(0.0),
        Some(e) if e <= -phi.constancy_level() => Ok(0.0),
        Some(_) => lp_distance(&phi.into(), &phi.translate(h).into(), p),
    }
}

/// `phi - (integral(phi) / q^M) * 1_{|x| <= q^M}`, which has integral zero.
pub fn lizorkin_project(phi: &TestFunction, big_m: i64) -> Result<TestFunction> {
    if big_m < phi.support_radius() {
        return invalid(format!("projection window q^{big_m} is smaller than the support q^{}", phi.support_radius()));
    }
    let fp = *phi.fp();
    let mean = phi.integral().scale(&q_int_power(&fp, -big_m));
    TestFunction::tabulate(fp, big_m, phi.constancy_level(), |x| &phi.eval(x) - &mean)
}
