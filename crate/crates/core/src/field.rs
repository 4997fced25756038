//! Coordinate model of `Q_p^n`, identified with the degree-`n` unramified
//! extension `L` of `Q_p` through its canonical basis.
//!
//! A point is a vector of rationals. The normalized absolute value on `L` is
//! `|x| = (max_j |x_j|_p)^n`, so it is always a power of `q = p^n`; we store
//! only the exponent. Balls are indexed by an integer level `l`:
//! `B(c, l) = { x : |x - c| <= q^(-l) }`, with Haar measure `q^(-l)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Largest coset table we are willing to allocate.
pub const MAX_TABLE_LEN: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u64,
    n: u32,
}

impl FieldParams {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return invalid(format!("p = {p} is not a prime"));
        }
        if n == 0 {
            return invalid("extension degree must be at least 1");
        }
        match p.checked_pow(n) {
            Some(q) if q < (1 << 40) => Ok(FieldParams { p, n }),
            _ => invalid(format!("q = {p}^{n} is too large")),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Residue field cardinality `p^n`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// `Q_p` itself.
    pub fn base_field(&self) -> FieldParams {
        FieldParams { p: self.p, n: 1 }
    }

    pub fn abs_value(&self, x: &Point) -> AbsValue {
        x.coords.iter().filter_map(|c| valuation(c, self.p)).map(|v| -v).max().map_or(AbsValue::Zero, AbsValue::Pow)
    }

    /// Exponent `e` with `|x| = q^e`, `None` for zero.
    pub fn abs_exp(&self, x: &Point) -> Option<i64> {
        self.abs_value(x).exponent()
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}^{}", self.p, self.n)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation of a rational, `None` for zero.
pub fn valuation(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let count = |x: &BigInt| {
        let mut x = x.abs();
        let mut v = 0i64;
        loop {
            let (d, m) = x.div_rem(&pb);
            if !m.is_zero() {
                return v;
            }
            x = d;
            v += 1;
        }
    };
    Some(count(r.numer()) - count(r.denom()))
}

/// Normalized absolute value: zero, or `q^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AbsValue {
    Zero,
    Pow(i64),
}

impl AbsValue {
    pub fn exponent(&self) -> Option<i64> {
        match self {
            AbsValue::Zero => None,
            AbsValue::Pow(e) => Some(*e),
        }
    }

    pub fn to_rational(&self, fp: &FieldParams) -> BigRational {
        match self {
            AbsValue::Zero => BigRational::zero(),
            AbsValue::Pow(e) => q_pow_rational(fp.q(), *e),
        }
    }

    pub fn to_f64(&self, fp: &FieldParams) -> f64 {
        match self {
            AbsValue::Zero => 0.0,
            AbsValue::Pow(e) => (fp.q() as f64).powi(*e as i32),
        }
    }
}

pub(crate) fn q_pow_rational(q: u64, e: i64) -> BigRational {
    let mag = BigRational::from_integer(num_traits::pow(BigInt::from(q), e.unsigned_abs() as usize));
    if e >= 0 {
        mag
    } else {
        mag.recip()
    }
}

/// Element of `Q_p^n` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<BigRational>,
}

impl Point {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Point { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Point { coords: vec![BigRational::zero(); dim] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Point::new(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn from_ratios(v: &[(i64, i64)]) -> Self {
        Point::new(v.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect())
    }

    /// `(r, 0, ..., 0)`.
    pub fn axis(dim: usize, r: BigRational) -> Self {
        let mut p = Point::zero(dim);
        p.coords[0] = r;
        p
    }

    /// `(p^k, 0, ..., 0)`, a point of absolute value `q^(-k)`.
    pub fn prime_power(fp: &FieldParams, k: i64) -> Self {
        Point::axis(fp.degree() as usize, q_pow_rational(fp.p(), k))
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Multiplication by the scalar `p^k` of the base field.
    pub fn scale_prime_power(&self, p: u64, k: i64) -> Point {
        let s = q_pow_rational(p, k);
        Point::new(self.coords.iter().map(|c| c * &s).collect())
    }

    /// Coordinatewise dot product, used by the character of `Q_p^n`.
    pub fn dot(&self, other: &Point) -> BigRational {
        self.coords.iter().zip(&other.coords).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add<&Point> for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        assert_eq!(self.dim(), rhs.dim());
        Point::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Point> for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        assert_eq!(self.dim(), rhs.dim());
        Point::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(self.coords.iter().map(|a| -a).collect())
    }
}

/// `B(center, level) = { x : |x - center| <= q^(-level) }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallSpec {
    pub center: Point,
    pub level: i64,
}

impl BallSpec {
    pub fn new(center: Point, level: i64) -> Self {
        BallSpec { center, level }
    }

    pub fn centered(fp: &FieldParams, level: i64) -> Self {
        BallSpec::new(Point::zero(fp.degree() as usize), level)
    }

    pub fn contains(&self, fp: &FieldParams, x: &Point) -> bool {
        ball_contains(fp, &self.center, self.level, x)
    }

    pub fn measure(&self, fp: &FieldParams) -> BigRational {
        q_pow_rational(fp.q(), -self.level)
    }
}

pub(crate) fn ball_contains(fp: &FieldParams, center: &Point, level: i64, x: &Point) -> bool {
    fp.abs_value(&(x - center)) <= AbsValue::Pow(-level)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `|x| <= q^(-level)`
    Ball,
    /// `|x| = q^(-level)`
    Sphere,
}

/// Haar measure of the ball or sphere of radius `q^(-level)`.
pub fn haar_measure(fp: &FieldParams, shape: Shape, level: i64) -> BigRational {
    let ball = q_pow_rational(fp.q(), -level);
    match shape {
        Shape::Ball => ball,
        Shape::Sphere => {
            let q = BigRational::from_integer(fp.q().into());
            ball * (BigRational::one() - q.recip())
        }
    }
}

/// Canonical coset representatives of the level-`resolution` subballs of
/// `B(0, ambient)`, in lexicographic digit order.
pub fn enumerate_cosets(fp: &FieldParams, ambient: i64, resolution: i64) -> Result<Vec<Point>> {
    let grid = CosetGrid::new(fp, ambient, resolution)?;
    Ok(grid.iter().map(|(_, p)| p).collect())
}

/// Digit address of a coset: for each coordinate, the digits `a_j` for
/// `j = ambient .. resolution - 1` of the representative `sum a_j p^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetAddress {
    pub ambient: i64,
    pub resolution: i64,
    pub digits: Vec<Vec<u32>>,
}

impl CosetAddress {
    pub fn to_point(&self, p: u64) -> Point {
        Point::new(
            self.digits
                .iter()
                .map(|ds| {
                    ds.iter().enumerate().fold(BigRational::zero(), |acc, (t, &a)| {
                        acc + BigRational::from_integer(a.into()) * q_pow_rational(p, self.ambient + t as i64)
                    })
                })
                .collect(),
        )
    }
}

/// The level-`hi` cosets of `B(0, lo)`, indexed lexicographically: the
/// digit arrays of coordinate 0 compare first, and within a coordinate the
/// lowest-order digit `a_lo` is the most significant.
///
/// Under this order the level-`l` subballs of each coordinate occupy
/// contiguous index ranges, which [`CosetGrid::block_index`] exploits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetGrid {
    p: u64,
    dim: usize,
    lo: i64,
    hi: i64,
    base: u64,
    len: usize,
}

impl CosetGrid {
    pub fn new(fp: &FieldParams, lo: i64, hi: i64) -> Result<Self> {
        if hi < lo {
            return invalid(format!("resolution level {hi} is coarser than ambient level {lo}"));
        }
        let depth = (hi - lo) as u32;
        let base = fp
            .p()
            .checked_pow(depth)
            .filter(|b| *b < (1 << 40))
            .ok_or_else(|| crate::Error::InvalidParameter("coset grid too deep".into()))?;
        let len = (base as u128).pow(fp.degree());
        if len > MAX_TABLE_LEN as u128 {
            return invalid(format!("coset grid with {len} cells is too large"));
        }
        Ok(CosetGrid { p: fp.p(), dim: fp.degree() as usize, lo, hi, base, len: len as usize })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ambient(&self) -> i64 {
        self.lo
    }

    pub fn resolution(&self) -> i64 {
        self.hi
    }

    fn depth(&self) -> u32 {
        (self.hi - self.lo) as u32
    }

    /// Per-coordinate lexicographic index, `None` if outside `B(0, lo)`.
    fn coord_index(&self, x: &BigRational) -> Option<u64> {
        if let Some(v) = valuation(x, self.p) {
            if v < self.lo {
                return None;
            }
        }
        let y = x * q_pow_rational(self.p, -self.lo);
        let r = residue(&y, self.base);
        Some(reverse_digits(r, self.p, self.depth()))
    }

    /// Lexicographic index of the coset containing `x`.
    pub fn index_of(&self, x: &Point) -> Option<usize> {
        assert_eq!(x.dim(), self.dim, "point dimension mismatch");
        let mut idx: u64 = 0;
        for c in x.coords() {
            idx = idx * self.base + self.coord_index(c)?;
        }
        Some(idx as usize)
    }

    fn coord_indices(&self, idx: usize) -> Vec<u64> {
        let mut rest = idx as u64;
        let mut out = vec![0u64; self.dim];
        for slot in out.iter_mut().rev() {
            *slot = rest % self.base;
            rest /= self.base;
        }
        out
    }

    pub fn digits(&self, idx: usize) -> Vec<Vec<u32>> {
        let d = self.depth() as usize;
        self.coord_indices(idx)
            .into_iter()
            .map(|mut lex| {
                let mut ds = vec![0u32; d];
                for slot in ds.iter_mut().rev() {
                    *slot = (lex % self.p) as u32;
                    lex /= self.p;
                }
                ds
            })
            .collect()
    }

    pub fn address(&self, idx: usize) -> CosetAddress {
        CosetAddress { ambient: self.lo, resolution: self.hi, digits: self.digits(idx) }
    }

    /// Inverse of [`CosetGrid::digits`]; `None` on malformed digits.
    pub fn index_from_digits(&self, digits: &[Vec<u32>]) -> Option<usize> {
        if digits.len() != self.dim {
            return None;
        }
        let mut idx: u64 = 0;
        for ds in digits {
            if ds.len() != self.depth() as usize || ds.iter().any(|&a| a as u64 >= self.p) {
                return None;
            }
            let lex = ds.iter().fold(0u64, |acc, &a| acc * self.p + a as u64);
            idx = idx * self.base + lex;
        }
        Some(idx as usize)
    }

    /// Canonical representative of a coset.
    pub fn point(&self, idx: usize) -> Point {
        self.address(idx).to_point(self.p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Point)> + '_ {
        (0..self.len).map(move |i| (i, self.point(i)))
    }

    /// Index of the level-`level` ball containing cell `idx`, among the
    /// `q^(level - lo)` such balls (same lexicographic convention).
    pub fn block_index(&self, idx: usize, level: i64) -> usize {
        debug_assert!(level >= self.lo && level <= self.hi);
        let drop = self.p.pow((self.hi - level) as u32);
        let coarse_base = self.p.pow((level - self.lo) as u32);
        self.coord_indices(idx).into_iter().fold(0u64, |acc, lex| acc * coarse_base + lex / drop) as usize
    }
}

/// `y mod m` for `y` in `Z_p` (denominator prime to `m`), as an integer in `[0, m)`.
fn residue(y: &BigRational, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mb = BigInt::from(m);
    let num = y.numer().mod_floor(&mb);
    let den = y.denom().mod_floor(&mb);
    let g = den.extended_gcd(&mb);
    debug_assert!(g.gcd.is_one(), "denominator not invertible modulo p^k");
    let inv = g.x.mod_floor(&mb);
    (num * inv).mod_floor(&mb).to_u64().expect("residue fits u64")
}

/// Little-endian base-`p` digits of `r` read as a big-endian number.
fn reverse_digits(mut r: u64, p: u64, depth: u32) -> u64 {
    let mut out = 0;
    for _ in 0..depth {
        out = out * p + r % p;
        r /= p;
    }
    out
}
