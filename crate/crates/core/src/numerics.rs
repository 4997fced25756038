//! Scalars for exact results.
//!
//! Everything the operators produce lives in the ring of Laurent polynomials
//! in `ln q` with rational coefficients. In practice only the powers -1, 0 and
//! 1 occur: `ln q` enters through logarithmic integrands and the Riesz constant
//! `d_1 = (1 - q) / (q ln q)` carries `1 / ln q`. Products such as
//! `c_1 d_1 R(tau)` cancel back to rationals, and [`ExactScalar`] does that
//! cancellation symbolically.
//!
//! Irrational powers `q^a` fall back to `f64`. Mixing an exact value with a
//! float demotes the result to [`Num::Float`], so the variant of a result
//! records which path produced it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::FieldParams;

/// Rational exponent (alpha, gamma, tail exponents, L^p exponents).
pub type Exponent = Rational64;

/// Default tolerance for comparisons between the exact and float paths.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    let scale = 1f64.max(a.abs()).max(b.abs());
    (a - b).abs() <= tol * scale
}

/// Element of `Q[ln q, 1/ln q]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactScalar {
    // power of ln q -> coefficient; zero coefficients are never stored
    terms: BTreeMap<i32, BigRational>,
    // the q whose logarithm is the indeterminate, present iff some power != 0 is stored
    log_base: Option<u64>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        ExactScalar { terms, log_base: None }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `coeff * (ln q)^power`.
    pub fn log_monomial(q: u64, power: i32, coeff: BigRational) -> Self {
        let mut s = ExactScalar::zero();
        if !coeff.is_zero() {
            s.terms.insert(power, coeff);
            if power != 0 {
                s.log_base = Some(q);
            }
        }
        s
    }

    /// `ln q` itself.
    pub fn ln_q(q: u64) -> Self {
        Self::log_monomial(q, 1, BigRational::one())
    }

    /// Coefficient of `(ln q)^power`.
    pub fn coeff(&self, power: i32) -> BigRational {
        self.terms.get(&power).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The `a` in `a + b ln q`.
    pub fn rational_part(&self) -> BigRational {
        self.coeff(0)
    }

    /// The `b` in `a + b ln q`.
    pub fn log_coeff(&self) -> BigRational {
        self.coeff(1)
    }

    /// `Some` iff no power of `ln q` survives.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.keys().all(|&k| k == 0) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn log_base(&self) -> Option<u64> {
        self.log_base
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn to_f64(&self) -> f64 {
        let ln = self.log_base.map(|q| (q as f64).ln()).unwrap_or(0.0);
        self.terms
            .iter()
            .map(|(&k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                if k == 0 {
                    c
                } else {
                    c * ln.powi(k)
                }
            })
            .sum()
    }

    fn combined_base(&self, other: &Self) -> Option<u64> {
        match (self.log_base, other.log_base) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixing logarithms of different residue cardinalities");
                Some(a)
            }
            (a, b) => a.or(b),
        }
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, v| !v.is_zero());
        if self.terms.keys().all(|&k| k == 0) {
            self.log_base = None;
        }
        self
    }

    /// Exact quotient when `divisor` is a single monomial `c (ln q)^k`.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.terms.len() != 1 {
            return None;
        }
        let (&k, c) = divisor.terms.iter().next()?;
        let log_base = self.combined_base(divisor);
        let terms = self.terms.iter().map(|(&j, v)| (j - k, v / c)).collect();
        Some(ExactScalar { terms, log_base }.normalized())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let q = self.log_base.unwrap_or(0);
        let mut first = true;
        for (&k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*ln({q})")?,
                _ => write!(f, "({c})*ln({q})^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let log_base = self.combined_base(rhs);
        let mut terms = self.terms.clone();
        for (&k, v) in &rhs.terms {
            *terms.entry(k).or_insert_with(BigRational::zero) += v;
        }
        ExactScalar { terms, log_base }.normalized()
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(), log_base: self.log_base }
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let log_base = self.combined_base(rhs);
        let mut terms: BTreeMap<i32, BigRational> = BTreeMap::new();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                *terms.entry(i + j).or_insert_with(BigRational::zero) += a * b;
            }
        }
        ExactScalar { terms, log_base }.normalized()
    }
}

/// Exact-or-float real number.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(ExactScalar),
    Float(f64),
}

impl Num {
    pub fn zero() -> Self {
        Num::Exact(ExactScalar::zero())
    }

    pub fn one() -> Self {
        Num::Exact(ExactScalar::one())
    }

    pub fn int(v: i64) -> Self {
        Num::Exact(ExactScalar::from_int(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Num::Exact(ExactScalar::ratio(num, den))
    }

    pub fn rational(r: BigRational) -> Self {
        Num::Exact(ExactScalar::from_rational(r))
    }

    pub fn ln_q(q: u64) -> Self {
        Num::Exact(ExactScalar::ln_q(q))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(e) => e.to_f64(),
            Num::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    pub fn exact(&self) -> Option<&ExactScalar> {
        match self {
            Num::Exact(e) => Some(e),
            Num::Float(_) => None,
        }
    }

    /// Rational value, if the number is exact and free of `ln q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.exact().and_then(ExactScalar::as_rational)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Num::Exact(e) => e.is_zero(),
            Num::Float(x) => *x == 0.0,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    pub fn recip(&self) -> Num {
        &Num::one() / self
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(e) => write!(f, "{e}"),
            Num::Float(x) => write!(f, "{x:.14e}"),
        }
    }
}

impl From<i64> for Num {
    fn from(v: i64) -> Self {
        Num::int(v)
    }
}

impl From<BigRational> for Num {
    fn from(r: BigRational) -> Self {
        Num::rational(r)
    }
}

impl From<ExactScalar> for Num {
    fn from(e: ExactScalar) -> Self {
        Num::Exact(e)
    }
}

impl Add<&Num> for &Num {
    type Output = Num;
    fn add(self, rhs: &Num) -> Num {
        match (self, rhs) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a + b),
            _ => Num::Float(self.to_f64() + rhs.to_f64()),
        }
    }
}

impl Sub<&Num> for &Num {
    type Output = Num;
    fn sub(self, rhs: &Num) -> Num {
        match (self, rhs) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a - b),
            _ => Num::Float(self.to_f64() - rhs.to_f64()),
        }
    }
}

impl Mul<&Num> for &Num {
    type Output = Num;
    fn mul(self, rhs: &Num) -> Num {
        match (self, rhs) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a * b),
            // an exact zero annihilates a float factor
            (Num::Exact(a), Num::Float(_)) | (Num::Float(_), Num::Exact(a)) if a.is_zero() => Num::zero(),
            _ => Num::Float(self.to_f64() * rhs.to_f64()),
        }
    }
}

impl Div<&Num> for &Num {
    type Output = Num;
    fn div(self, rhs: &Num) -> Num {
        assert!(!matches!(rhs, Num::Exact(e) if e.is_zero()), "division by exact zero");
        match (self, rhs) {
            (Num::Exact(a), Num::Exact(b)) => match a.checked_div(b) {
                Some(v) => Num::Exact(v),
                None => Num::Float(a.to_f64() / b.to_f64()),
            },
            (Num::Exact(a), Num::Float(_)) if a.is_zero() => Num::zero(),
            _ => Num::Float(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Neg for &Num {
    type Output = Num;
    fn neg(self) -> Num {
        match self {
            Num::Exact(a) => Num::Exact(-a),
            Num::Float(x) => Num::Float(-x),
        }
    }
}

impl Neg for Num {
    type Output = Num;
    fn neg(self) -> Num {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Num, Add, add);
forward_owned_binop!(Num, Sub, sub);
forward_owned_binop!(Num, Mul, mul);
forward_owned_binop!(Num, Div, div);
forward_owned_binop!(ExactScalar, Add, add);
forward_owned_binop!(ExactScalar, Sub, sub);
forward_owned_binop!(ExactScalar, Mul, mul);

/// Complex value with exact-or-float parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Num,
    pub im: Num,
}

impl Cx {
    pub fn new(re: Num, im: Num) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx::new(Num::zero(), Num::zero())
    }

    pub fn one() -> Self {
        Cx::real(Num::one())
    }

    pub fn real(re: Num) -> Self {
        Cx::new(re, Num::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Cx::real(Num::ratio(num, den))
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Cx::new(Num::Float(re), Num::Float(im))
    }

    /// `exp(2 pi i * turns)`. Exact for quarter turns.
    pub fn unit(turns: &BigRational) -> Self {
        let one = BigRational::one();
        let mut t = turns - turns.floor();
        if t >= one {
            t -= &one;
        }
        let four = BigInt::from(4);
        let scaled = &t * BigRational::from_integer(four);
        if scaled.is_integer() {
            return match scaled.to_integer().to_i64().unwrap_or(0) {
                0 => Cx::one(),
                1 => Cx::new(Num::zero(), Num::one()),
                2 => Cx::real(Num::int(-1)),
                _ => Cx::new(Num::zero(), Num::int(-1)),
            };
        }
        let theta = 2.0 * std::f64::consts::PI * t.to_f64().unwrap_or(0.0);
        Cx::from_f64(theta.cos(), theta.sin())
    }

    pub fn scale(&self, k: &Num) -> Cx {
        Cx::new(&self.re * k, &self.im * k)
    }

    pub fn conj(&self) -> Cx {
        Cx::new(self.re.clone(), -&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn to_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn abs(&self) -> f64 {
        let (a, b) = self.to_pair();
        a.hypot(b)
    }

    /// Distance in the complex plane, as a float.
    pub fn dist(&self, other: &Cx) -> f64 {
        (self - other).abs()
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + i*({})", self.re, self.im)
        }
    }
}

impl From<Num> for Cx {
    fn from(re: Num) -> Self {
        Cx::real(re)
    }
}

impl Add<&Cx> for &Cx {
    type Output = Cx;
    fn add(self, rhs: &Cx) -> Cx {
        Cx::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Cx> for &Cx {
    type Output = Cx;
    fn sub(self, rhs: &Cx) -> Cx {
        Cx::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Cx> for &Cx {
    type Output = Cx;
    fn mul(self, rhs: &Cx) -> Cx {
        Cx::new(&(&self.re * &rhs.re) - &(&self.im * &rhs.im), &(&self.re * &rhs.im) + &(&self.im * &rhs.re))
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-&self.re, -&self.im)
    }
}

forward_owned_binop!(Cx, Add, add);
forward_owned_binop!(Cx, Sub, sub);
forward_owned_binop!(Cx, Mul, mul);

impl std::iter::Sum for Cx {
    fn sum<I: Iterator<Item = Cx>>(iter: I) -> Cx {
        iter.fold(Cx::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Sum for Num {
    fn sum<I: Iterator<Item = Num>>(iter: I) -> Num {
        iter.fold(Num::zero(), |acc, x| &acc + &x)
    }
}

/// `p^e` for a rational exponent; exact iff `e` is an integer.
pub fn prime_power(p: u64, e: Exponent) -> Num {
    if e.is_integer() {
        let k = *e.numer();
        let base = BigInt::from(p);
        let mag = num_traits::pow(base, k.unsigned_abs() as usize);
        let r = BigRational::from_integer(mag);
        if k >= 0 {
            Num::rational(r)
        } else {
            Num::rational(r.recip())
        }
    } else {
        let ef = *e.numer() as f64 / *e.denom() as f64;
        Num::Float((p as f64).powf(ef))
    }
}

/// `q^(a k)`, exact iff the value is rational.
///
/// Since `q = p^n` with `p` prime, `q^(a k)` is rational exactly when
/// `n a k` is an integer.
pub fn q_power(fp: &FieldParams, a: Exponent, k: i64) -> Num {
    let e = a * Exponent::from_integer(k) * Exponent::from_integer(fp.degree() as i64);
    prime_power(fp.p(), e)
}

/// `q^k` for integer `k`.
pub fn q_int_power(fp: &FieldParams, k: i64) -> Num {
    q_power(fp, Exponent::one(), k)
}

/// `sum_{j >= j0} q^(-s j)`.
pub fn geometric_tail(fp: &FieldParams, s: Exponent, j0: i64) -> Result<Num> {
    if s <= Exponent::zero() {
        return Err(Error::Divergent(format!("geometric tail with ratio q^(-{s}) does not converge")));
    }
    let head = q_power(fp, s, -j0);
    let x = q_power(fp, s, -1);
    Ok(&head / &(&Num::one() - &x))
}

/// `sum_{j >= j0} j q^(-s j)`.
pub fn weighted_geometric_tail(fp: &FieldParams, s: Exponent, j0: i64) -> Result<Num> {
    if s <= Exponent::zero() {
        return Err(Error::Divergent(format!("weighted geometric tail with ratio q^(-{s}) does not converge")));
    }
    let x = q_power(fp, s, -1);
    let head = q_power(fp, s, -j0);
    let one = Num::one();
    let om = &one - &x;
    let inner = &Num::int(j0) - &(&Num::int(j0 - 1) * &x);
    Ok(&(&head * &inner) / &(&om * &om))
}

/// Exact parse of `"3"`, `"-1/2"`, `"0.75"`, `"1e-1"`-free decimal strings.
pub fn parse_exponent(s: &str) -> Result<Exponent> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse exponent {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Exponent::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) || frac_part.len() > 12 {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: i64 = digits.parse().map_err(|_| bad())?;
    let den = 10i64.pow(frac_part.len() as u32);
    let r = Exponent::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Best rational approximation with denominator at most `10^6`.
pub fn exponent_from_f64(x: f64) -> Exponent {
    const MAX_DEN: i64 = 1_000_000;
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    for _ in 0..64 {
        let a = v.floor();
        if a > i64::MAX as f64 / 4.0 {
            break;
        }
        let a = a as i64;
        let h2 = a.saturating_mul(h1).saturating_add(h0);
        let k2 = a.saturating_mul(k1).saturating_add(k0);
        if k2 > MAX_DEN {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a as f64;
        if frac < 1e-12 || (h1 as f64 / k1 as f64 - x.abs()).abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    let r = Exponent::new(h1, k1.max(1));
    if neg {
        -r
    } else {
        r
    }
}

pub fn exponent_to_f64(e: Exponent) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}
