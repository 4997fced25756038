//! Independent validator: coset sums of a pointwise sampler.
//!
//! The oracle knows nothing about closed forms. It walks the coset tree of the
//! region, evaluates the sampler at one representative per cell and multiplies
//! by the cell measure. Cells containing a declared singular point are peeled
//! shell by shell; after `refine_depth` shells the remaining small ball is
//! closed by fitting the last shell sums to the declared decay modes and
//! summing the fitted series. Unbounded regions are handled the same way with
//! shells growing outward. The fitted remainders are reported separately from
//! the finite coset sum, together with how well the fit predicted one shell
//! it was not fitted to.

use crate::error::{invalid, Error, Result};
use crate::field::{ball_contains, CosetGrid, FieldParams, Point};
use crate::numerics::{geometric_tail, q_int_power, q_power, weighted_geometric_tail, Cx, Exponent, Num};

use super::Region;

/// Shape of a shell sum as a function of the shell index `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// `q^(-r t)`
    Geometric(Exponent),
    /// `t q^(-r t)`
    Weighted(Exponent),
}

impl Mode {
    fn value(&self, fp: &FieldParams, t: i64) -> Num {
        match *self {
            Mode::Geometric(r) => q_power(fp, -r, t),
            Mode::Weighted(r) => &Num::int(t) * &q_power(fp, -r, t),
        }
    }

    fn tail_from(&self, fp: &FieldParams, t0: i64) -> Result<Num> {
        match *self {
            Mode::Geometric(r) => geometric_tail(fp, r, t0),
            Mode::Weighted(r) => weighted_geometric_tail(fp, r, t0),
        }
    }
}

/// The decay modes assumed for a sequence of shell sums.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TailModel {
    pub modes: Vec<Mode>,
}

impl TailModel {
    pub fn new(modes: Vec<Mode>) -> Self {
        let mut out: Vec<Mode> = Vec::new();
        for m in modes {
            if !out.contains(&m) {
                out.push(m);
            }
        }
        TailModel { modes: out }
    }

    /// Integrand `A |y - z|^s + B` near a singular point `z`.
    pub fn singular_power(s: Exponent) -> Self {
        let one = Exponent::from_integer(1);
        Self::new(vec![Mode::Geometric(s + one), Mode::Geometric(one)])
    }

    /// Integrand `A + B ln|y - z|` near `z`.
    pub fn singular_log() -> Self {
        let one = Exponent::from_integer(1);
        Self::new(vec![Mode::Geometric(one), Mode::Weighted(one)])
    }

    /// Integrand a combination of `|y|^s` for the given `s` far out; shells
    /// are indexed by `j` with radius `q^j`.
    pub fn decay_powers(exponents: &[Exponent]) -> Self {
        let one = Exponent::from_integer(1);
        Self::new(exponents.iter().map(|s| Mode::Geometric(-(s + one))).collect())
    }

    /// Integrand `(A + B ln|y|) |y|^s` far out.
    pub fn decay_log_power(s: Exponent) -> Self {
        let r = -(s + Exponent::from_integer(1));
        Self::new(vec![Mode::Geometric(r), Mode::Weighted(r)])
    }
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Cells away from singular points are sampled at this level or finer.
    pub resolution: i64,
    /// Points near which the sampler is unbounded or not locally constant.
    pub singular: Vec<Point>,
    /// Shells peeled around each singular point before the fitted closure.
    pub refine_depth: i64,
    pub inner: TailModel,
    /// Shells summed explicitly for unbounded regions.
    pub outer_shells: i64,
    /// Relative cell depth inside each outer shell.
    pub outer_depth: i64,
    pub outer: TailModel,
}

impl OracleConfig {
    pub fn bounded(resolution: i64, singular: Vec<Point>, refine_depth: i64, inner: TailModel) -> Self {
        OracleConfig {
            resolution,
            singular,
            refine_depth,
            inner,
            outer_shells: 0,
            outer_depth: 1,
            outer: TailModel::default(),
        }
    }

    pub fn with_outer(mut self, shells: i64, depth: i64, outer: TailModel) -> Self {
        self.outer_shells = shells;
        self.outer_depth = depth;
        self.outer = outer;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub value: Cx,
    /// Plain coset sums.
    pub finite_part: Cx,
    /// Fitted remainders near singular points and at infinity.
    pub tail_part: Cx,
    /// Largest discrepancy between a fit and the shell just before its window.
    pub fit_residual: f64,
}

#[derive(Clone)]
struct Part {
    finite: Cx,
    tail: Cx,
}

impl Part {
    fn zero() -> Self {
        Part { finite: Cx::zero(), tail: Cx::zero() }
    }

    fn total(&self) -> Cx {
        &self.finite + &self.tail
    }

    fn add(&mut self, other: &Part) {
        self.finite = &self.finite + &other.finite;
        self.tail = &self.tail + &other.tail;
    }
}

struct Walker<'a> {
    fp: FieldParams,
    sampler: &'a dyn Fn(&Point) -> Cx,
    region: &'a Region,
    cfg: &'a OracleConfig,
    boundary: i64,
    fit_residual: f64,
}

impl Walker<'_> {
    fn children(&self, center: &Point, level: i64) -> Result<Vec<Point>> {
        let grid = CosetGrid::new(&self.fp, level, level + 1)?;
        Ok(grid.iter().map(|(_, u)| center + &u).collect())
    }

    fn fit(&mut self, seq: &[(i64, Cx)], model: &TailModel, next: i64) -> Result<Cx> {
        let r = model.modes.len();
        if r == 0 {
            return Ok(Cx::zero());
        }
        if seq.len() < r + 1 {
            return invalid(format!("need at least {} shells to fit {r} modes", r + 1));
        }
        let window = &seq[seq.len() - r..];
        let matrix: Vec<Vec<Num>> =
            window.iter().map(|(t, _)| model.modes.iter().map(|m| m.value(&self.fp, *t)).collect()).collect();
        let rhs: Vec<Cx> = window.iter().map(|(_, s)| s.clone()).collect();
        let coef = solve(matrix, rhs)?;

        let (t_check, s_check) = &seq[seq.len() - r - 1];
        let predicted: Cx = model.modes.iter().zip(&coef).map(|(m, c)| c.scale(&m.value(&self.fp, *t_check))).sum();
        let scale = s_check.abs().max(1e-300);
        let miss = predicted.dist(s_check) / scale.max(1.0);
        if miss > self.fit_residual || miss.is_nan() {
            self.fit_residual = miss;
        }

        let mut closure = Cx::zero();
        for (m, c) in model.modes.iter().zip(&coef) {
            closure = &closure + &c.scale(&m.tail_from(&self.fp, next)?);
        }
        Ok(closure)
    }

    fn sample(&self, x: &Point, level: i64) -> Cx {
        (self.sampler)(x).scale(&q_int_power(&self.fp, -level))
    }

    /// Integral over `B(center, level)` intersected with the region; `inside`
    /// asserts the whole ball lies in the region.
    fn walk(&mut self, center: &Point, level: i64, floor: i64, inside: bool) -> Result<Part> {
        let floor = if inside { floor } else { floor.max(self.boundary) };
        let hits: Vec<Point> =
            self.cfg.singular.iter().filter(|z| ball_contains(&self.fp, center, level, z)).cloned().collect();
        if level >= floor && hits.len() <= 1 {
            if !inside && !self.region.contains(&self.fp, center) {
                return Ok(Part::zero());
            }
            return match hits.first() {
                None => Ok(Part { finite: self.sample(center, level), tail: Cx::zero() }),
                Some(z) => self.peel(z, level, floor),
            };
        }
        let mut acc = Part::zero();
        for child in self.children(center, level)? {
            acc.add(&self.walk(&child, level + 1, floor, inside)?);
        }
        Ok(acc)
    }

    /// `B(z, level)` for a singular point `z`, already known to be in the region.
    fn peel(&mut self, z: &Point, level: i64, floor: i64) -> Result<Part> {
        let depth = self.cfg.refine_depth;
        let mut acc = Part::zero();
        let mut seq = Vec::with_capacity(depth as usize);
        for t in level..level + depth {
            let mut shell = Part::zero();
            for child in self.children(z, t)?.into_iter().skip(1) {
                shell.add(&self.walk(&child, t + 1, floor, true)?);
            }
            seq.push((t, shell.total()));
            acc.add(&shell);
        }
        let model = self.cfg.inner.clone();
        let closure = self.fit(&seq, &model, level + depth)?;
        acc.tail = &acc.tail + &closure;
        Ok(acc)
    }

    /// Shells `|y - center| = q^(-i)` for `i = start, start - 1, ...`.
    fn outward(&mut self, center: &Point, start: i64) -> Result<Part> {
        let n = self.cfg.outer_shells;
        let mut acc = Part::zero();
        let mut seq = Vec::with_capacity(n as usize);
        for k in 0..n {
            let i = start - k;
            let mut shell = Part::zero();
            let floor = i + self.cfg.outer_depth;
            for child in self.children(center, i)?.into_iter().skip(1) {
                shell.add(&self.walk(&child, i + 1, floor, true)?);
            }
            seq.push((-i, shell.total()));
            acc.add(&shell);
        }
        let model = self.cfg.outer.clone();
        let closure = self.fit(&seq, &model, -(start - n + 1) + 1)?;
        acc.tail = &acc.tail + &closure;
        Ok(acc)
    }
}

/// Gaussian elimination with partial pivoting; exact when the matrix is.
fn solve(mut a: Vec<Vec<Num>>, mut b: Vec<Cx>) -> Result<Vec<Cx>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs_f64().total_cmp(&a[j][col].abs_f64())).expect("nonempty");
        if a[pivot][col].is_zero() {
            return Err(Error::Unsupported("decay modes are linearly dependent on the fitted shells".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for row in col + 1..n {
            let factor = &a[row][col] * &inv;
            if factor.is_zero() {
                continue;
            }
            let (upper, lower) = a.split_at_mut(row);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst = &*dst - &(&factor * src);
            }
            b[row] = &b[row] - &b[col].scale(&factor);
        }
    }
    let mut x = vec![Cx::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc = &acc - &x[k].scale(&a[row][k]);
        }
        x[row] = acc.scale(&a[row][row].recip());
    }
    Ok(x)
}

/// Coset-sum estimate of `int_region sampler(y) dy`.
pub fn brute_force_oracle(
    fp: &FieldParams,
    sampler: &dyn Fn(&Point) -> Cx,
    region: &Region,
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    let boundary = match region {
        Region::Whole => i64::MIN,
        Region::Ball { level, .. } => *level,
        Region::Sphere { level, .. } | Region::AtLeast { level, .. } => level + 1,
    };
    let mut w = Walker { fp: *fp, sampler, region, cfg, boundary, fit_residual: 0.0 };
    let part = match region {
        Region::Ball { center, level } | Region::Sphere { center, level } => {
            w.walk(center, *level, cfg.resolution, false)?
        }
        Region::AtLeast { center, level } => w.outward(center, *level)?,
        Region::Whole => {
            let origin = Point::zero(fp.degree() as usize);
            let mut p = w.walk(&origin, 0, cfg.resolution, true)?;
            p.add(&w.outward(&origin, -1)?);
            p
        }
    };
    Ok(OracleResult {
        value: part.total(),
        finite_part: part.finite,
        tail_part: part.tail,
        fit_residual: w.fit_residual,
    })
}
