//! The Taibleson operator on `Q_p^n` with the max norm, and its reading as a
//! one-dimensional Vladimirov operator over the degree-`n` unramified
//! extension, where `||x||^n = |x|_L` and `gamma = alpha / n`.

use crate::error::{invalid, Result};
use crate::field::{AbsValue, FieldParams, Point};
use crate::functions::TestFunction;
use crate::numerics::{prime_power, Cx, Exponent, Num};
use crate::operators::{kernel_r, vladimirov_hypersingular, OperatorParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionBridge {
    pub base: FieldParams,
    pub ext: FieldParams,
    pub alpha: Exponent,
}

impl DimensionBridge {
    pub fn new(p: u64, n: u32, alpha: Exponent) -> Result<Self> {
        if alpha <= Exponent::from_integer(0) {
            return invalid(format!("alpha must be positive, got {alpha}"));
        }
        Ok(DimensionBridge { base: FieldParams::new(p, 1)?, ext: FieldParams::new(p, n)?, alpha })
    }

    pub fn dim(&self) -> u32 {
        self.ext.degree()
    }

    pub fn gamma(&self) -> Exponent {
        self.alpha / Exponent::from_integer(self.dim() as i64)
    }

    /// The one-dimensional operator parameters over the extension.
    pub fn ext_params(&self) -> OperatorParams {
        OperatorParams { fp: self.ext, alpha: self.alpha }
    }
}

/// `max_j |x_j|_p`, as a power of `p`.
pub fn max_norm(base: &FieldParams, x: &Point) -> AbsValue {
    x.coords().iter().map(|c| base.abs_value(&Point::new(vec![c.clone()]))).max().unwrap_or(AbsValue::Zero)
}

fn norm_exp(bridge: &DimensionBridge, x: &Point) -> Option<i64> {
    max_norm(&bridge.base, x).exponent()
}

/// `(1 - p^alpha) / (1 - p^(-alpha-n)) int (f(z) - f(x)) ||z - x||^(-n-alpha) dz`,
/// summed over the cosets of `f` in max-norm geometry with base-field powers.
pub fn taibleson_direct(bridge: &DimensionBridge, f: &TestFunction, x: &Point) -> Result<Cx> {
    if f.fp() != &bridge.ext {
        return invalid("test function does not live on the bridge's product space");
    }
    let p = bridge.base.p();
    let n = bridge.dim() as i64;
    let alpha = bridge.alpha;
    let one = Num::one();
    let constant = &(&one - &prime_power(p, alpha)) / &(&one - &prime_power(p, -alpha - Exponent::from_integer(n)));

    let (m, k) = (f.support_radius(), f.constancy_level());
    let fx = f.eval(x);
    let cell = prime_power(p, Exponent::from_integer(-n * k));
    let mut sum = Cx::zero();
    for (c, fc) in f.cosets() {
        let diff = fc - &fx;
        if diff.is_zero() {
            continue;
        }
        let e = norm_exp(bridge, &(&c - x)).expect("distinct cosets");
        let weight = prime_power(p, -(alpha + Exponent::from_integer(n)) * Exponent::from_integer(e));
        sum = &sum + &diff.scale(&(&weight * &cell));
    }
    if !fx.is_zero() {
        // z beyond the window, where ||z - x|| = ||z|| = p^i for i > m
        let shells = &(&one - &prime_power(p, Exponent::from_integer(-n)))
            * &(&prime_power(p, -alpha * Exponent::from_integer(m + 1)) / &(&one - &prime_power(p, -alpha)));
        sum = &sum - &fx.scale(&shells);
    }
    Ok(sum.scale(&constant))
}

/// The same operator as the Vladimirov operator of order `alpha` over the
/// extension, whose kernel is `|z - x|_L^(-gamma-1)`.
pub fn taibleson_via_extension(bridge: &DimensionBridge, f: &TestFunction, x: &Point) -> Result<Cx> {
    vladimirov_hypersingular(&bridge.ext_params(), &f.into(), x)
}

/// The averaging kernel `R` over the extension, on the shell `|tau|_L = q_L^-j`
/// (equivalently `||tau|| = p^-j`).
pub fn kernel_r_multidim(bridge: &DimensionBridge, j: i64) -> Result<Num> {
    if bridge.gamma() > Exponent::from_integer(1) {
        return invalid(format!("alpha = {} exceeds the dimension {}", bridge.alpha, bridge.dim()));
    }
    Ok(kernel_r(&bridge.ext_params(), j))
}
