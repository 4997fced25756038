//! Batch experiments behind the `vladimirov` binary.
//!
//! Each subcommand produces a [`Report`]: fixed columns, rows in canonical
//! order, and the list of in-run assertions that failed. Floats are printed
//! with 15 significant digits so identical configurations give identical
//! bytes. The float tolerance can be overridden with the `ULTRA_TOL`
//! environment variable.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{invalid, Error, Result};
use crate::field::{FieldParams, Point};
use crate::fourier::{fourier_transform, multiplier_on_window};
use crate::functions::{lp_norm, ExtendedFunction, TestFunction};
use crate::integrate::{
    brute_force_oracle, log_over_ball, power_over_ball, shifted_log_over_sphere, shifted_power_over_sphere,
    OracleConfig, Region, TailModel,
};
use crate::io::parse_function_file;
use crate::multidim::{taibleson_direct, taibleson_via_extension, DimensionBridge};
use crate::numerics::{close, parse_exponent, q_power, Cx, Exponent, Num, DEFAULT_TOLERANCE};
use crate::operators::{
    inversion_residual, kernel_r_oracle, kernel_table, minkowski_bound, riesz_potential, truncated_vladimirov,
    vladimirov_hypersingular, window_cosets, KernelOracleDepth, OperatorParams,
};

/// Environment variable overriding the float tolerance.
pub const TOLERANCE_ENV: &str = "ULTRA_TOL";

#[derive(Parser, Debug, Clone)]
#[command(name = "vladimirov", version, about = "Exact experiments with the Vladimirov operator on Q_p^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Closed-form Haar integrals against the coset-sum oracle.
    Integrate(IntegrateArgs),
    /// Averaging kernel R, R_1 per shell, closed form against its defining integral.
    Kernel(KernelArgs),
    /// Apply an operator to a function file on the dilated window.
    Apply(ApplyArgs),
    /// Inversion residuals ||D_eps D^-alpha phi - phi||_p for a range of nu.
    Invert(InvertArgs),
    /// Plancherel, double transform, and the multiplier form of D^alpha.
    FourierCheck(FourierArgs),
    /// Taibleson operator on Q_p^n against the operator over the extension.
    MultidimCheck(MultidimArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Residue characteristic.
    #[arg(long)]
    pub p: Option<u64>,
    /// Dimension n (degree of the unramified extension).
    #[arg(long = "deg")]
    pub degree: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct IntegrateArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long = "deg", default_value_t = 1)]
    pub degree: u32,
    /// Exponent alpha > 0 of the power integrals (decimal or a/b).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Radius exponents n, as `lo..hi` (inclusive).
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    pub levels: String,
    /// Shells peeled around the singular point before the fitted closure.
    #[arg(long, default_value_t = 12)]
    pub depth: i64,
    /// Uniform coset resolution relative to the integration ball.
    #[arg(long, default_value_t = 2)]
    pub resolution: i64,
}

#[derive(Args, Debug, Clone)]
pub struct KernelArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long = "deg", default_value_t = 1)]
    pub degree: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Shell indices j (|tau| = q^-j), as `lo..hi` (inclusive).
    #[arg(long, default_value = "-3..6", allow_hyphen_values = true)]
    pub shells: String,
    /// Also check the normalization and positivity of R_1.
    #[arg(long)]
    pub check_integral: bool,
    #[arg(long, default_value_t = 8)]
    pub depth: i64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    /// D^-alpha phi
    Riesz,
    /// D^alpha phi, hypersingular form
    Vladimirov,
    /// D^alpha_eps applied to D^-alpha phi
    Truncated,
    /// D^alpha phi, Fourier multiplier form
    Multiplier,
}

#[derive(Args, Debug, Clone)]
pub struct ApplyArgs {
    #[arg(value_enum)]
    pub operator: OperatorKind,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Function file (a bare name is also looked up among the shipped files).
    #[arg(long = "fn")]
    pub function: String,
    /// Truncation index for `truncated`: eps = q^-nu.
    #[arg(long, default_value_t = 1)]
    pub nu: i64,
}

#[derive(Args, Debug, Clone)]
pub struct InvertArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// L^p exponent.
    #[arg(long, default_value_t = 1.0)]
    pub lp: f64,
    #[arg(long = "fn")]
    pub function: String,
    #[arg(long, default_value_t = 1)]
    pub nu_min: i64,
    #[arg(long, default_value_t = 4)]
    pub nu_max: i64,
}

#[derive(Args, Debug, Clone)]
pub struct FourierArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Order of D^alpha for the multiplier comparison.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long = "fn")]
    pub function: String,
}

#[derive(Args, Debug, Clone)]
pub struct MultidimArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long = "fn")]
    pub function: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(v) => json!(v),
            Cell::Float(v) => {
                serde_json::Number::from_f64(if *v == 0.0 { 0.0 } else { *v }).map_or(Value::Null, Value::Number)
            }
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

/// Fifteen significant digits; negative zero prints as zero.
pub fn format_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.14e}")
}

fn text(s: impl Into<String>) -> Cell {
    Cell::Text(s.into())
}

fn exact_text(v: &Num) -> Cell {
    text(if v.is_exact() { v.to_string() } else { String::new() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Violated in-run assertions, each naming the identity and both values.
    pub failures: Vec<String>,
}

impl Report {
    fn new(command: &str, columns: &[&'static str]) -> Self {
        Report { command: command.into(), columns: columns.to_vec(), rows: Vec::new(), failures: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// 0 when every assertion held, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 cells")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    m.insert((*c).to_string(), v.json());
                }
                Value::Object(m)
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "columns": self.columns,
            "rows": rows,
            "failures": self.failures,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Human-readable summary of failed assertions.
    pub fn failure_summary(&self) -> String {
        let mut s = String::new();
        for f in &self.failures {
            let _ = writeln!(s, "assertion failed: {f}");
        }
        s
    }
}

/// Float tolerance, from `ULTRA_TOL` when set.
pub fn tolerance_from_env(default: f64) -> Result<f64> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(s) => {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{TOLERANCE_ENV}={s:?} is not a decimal number")))?;
            if !(v.is_finite() && v > 0.0) {
                return invalid(format!("{TOLERANCE_ENV} must be positive, got {s}"));
            }
            Ok(v)
        }
        Err(_) => Ok(default),
    }
}

fn overridable(default: f64) -> Result<f64> {
    if std::env::var_os(TOLERANCE_ENV).is_some() {
        tolerance_from_env(default)
    } else {
        Ok(default)
    }
}

/// `"lo..hi"` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidParameter(format!("cannot parse range {s:?}; expected lo..hi"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        }
        None => {
            let v: i64 = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_alpha(s: &str) -> Result<Exponent> {
    let a = parse_exponent(s)?;
    if a <= Exponent::from_integer(0) {
        return invalid(format!("alpha must be positive, got {s}"));
    }
    Ok(a)
}

/// Directory of the function files shipped with the crate.
pub fn shipped_functions_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("functions")
}

/// The path as given if it exists, else the shipped file of that name.
pub fn resolve_function_path(name: &str) -> PathBuf {
    let given = PathBuf::from(name);
    if given.exists() {
        return given;
    }
    let shipped = shipped_functions_dir().join(name);
    if given.components().count() == 1 && shipped.exists() {
        shipped
    } else {
        given
    }
}

fn load_function(name: &str, field: &FieldArgs) -> Result<TestFunction> {
    let f = parse_function_file(&resolve_function_path(name))?;
    if let Some(p) = field.p {
        if p != f.fp().p() {
            return invalid(format!("--p {p} does not match the function file (p = {})", f.fp().p()));
        }
    }
    if let Some(n) = field.degree {
        if n != f.fp().degree() {
            return invalid(format!("--deg {n} does not match the function file (degree {})", f.fp().degree()));
        }
    }
    Ok(f)
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Integrate(a) => run_integrate(a),
        Command::Kernel(a) => run_kernel(a),
        Command::Apply(a) => run_apply(a),
        Command::Invert(a) => run_invert(a),
        Command::FourierCheck(a) => run_fourier(a),
        Command::MultidimCheck(a) => run_multidim(a),
    }
}

fn compare(closed: &Num, oracle: &Num, tol: f64) -> (f64, bool) {
    let delta = (closed.to_f64() - oracle.to_f64()).abs();
    let ok = if closed.is_exact() && oracle.is_exact() {
        closed == oracle
    } else {
        close(closed.to_f64(), oracle.to_f64(), tol)
    };
    (delta, ok)
}

fn run_integrate(a: &IntegrateArgs) -> Result<Report> {
    let fp = FieldParams::new(a.p, a.degree)?;
    let alpha = parse_alpha(&a.alpha)?;
    let (lo, hi) = parse_range(&a.levels)?;
    if a.depth < 3 || a.resolution < 0 {
        return invalid("--depth must be at least 3 and --resolution nonnegative");
    }
    let tol = overridable(1e-8)?;
    let mut rep = Report::new(
        "integrate",
        &["formula", "q", "alpha", "n", "closed", "oracle", "delta", "closed_exact", "exact_match", "fit_residual"],
    );
    let dim = fp.degree() as usize;
    let one = Exponent::from_integer(1);
    for n in lo..=hi {
        let zero = Point::zero(dim);
        let a_pt = Point::prime_power(&fp, -n);
        let cases: Vec<(&str, Num, Point, Region, bool)> = vec![
            (
                "power_over_ball",
                power_over_ball(&fp, alpha, n)?,
                zero.clone(),
                Region::Ball { center: zero.clone(), level: -n },
                false,
            ),
            (
                "shifted_power_over_sphere",
                shifted_power_over_sphere(&fp, alpha, n)?,
                a_pt.clone(),
                Region::Sphere { center: zero.clone(), level: -n },
                false,
            ),
            (
                "log_over_ball",
                log_over_ball(&fp, n).into(),
                zero.clone(),
                Region::Ball { center: zero.clone(), level: -n },
                true,
            ),
            (
                "shifted_log_over_sphere",
                shifted_log_over_sphere(&fp, n).into(),
                a_pt.clone(),
                Region::Sphere { center: zero.clone(), level: -n },
                true,
            ),
        ];
        for (name, closed, sing, region, log) in cases {
            let ln_q = Num::ln_q(fp.q());
            let center = sing.clone();
            let sampler = move |y: &Point| -> Cx {
                let e = fp.abs_exp(&(y - &center)).expect("never sampled at the singular point");
                if log {
                    Cx::real(&Num::int(e) * &ln_q)
                } else {
                    Cx::real(q_power(&fp, alpha - one, e))
                }
            };
            let model = if log { TailModel::singular_log() } else { TailModel::singular_power(alpha - one) };
            let cfg = OracleConfig::bounded(-n + a.resolution, vec![sing], a.depth, model);
            let res = brute_force_oracle(&fp, &sampler, &region, &cfg)?;
            let oracle = res.value.re.clone();
            let (delta, ok) = compare(&closed, &oracle, tol);
            let exact = closed.is_exact() && oracle.is_exact() && closed == oracle;
            rep.check(ok, || format!("{name}(q={}, alpha={alpha}, n={n}): closed {closed} vs oracle {oracle}", fp.q()));
            rep.push(vec![
                text(name),
                Cell::Int(fp.q() as i64),
                text(alpha.to_string()),
                Cell::Int(n),
                Cell::Float(closed.to_f64()),
                Cell::Float(oracle.to_f64()),
                Cell::Float(delta),
                exact_text(&closed),
                Cell::Bool(exact),
                Cell::Float(res.fit_residual),
            ]);
        }
    }
    Ok(rep)
}

fn run_kernel(a: &KernelArgs) -> Result<Report> {
    let fp = FieldParams::new(a.p, a.degree)?;
    let params = OperatorParams::new(fp, parse_alpha(&a.alpha)?)?;
    let (lo, hi) = parse_range(&a.shells)?;
    let tol = overridable(DEFAULT_TOLERANCE)?;
    let norm_tol = overridable(1e-12)?;
    let table = kernel_table(&params, lo..=hi)?;
    let depth = KernelOracleDepth { refine: a.depth, ..KernelOracleDepth::default() };
    let mut rep = Report::new("kernel", &["row", "j", "R", "R1", "oracle", "delta", "exact", "warnings"]);
    let g = params.gamma();
    let one = Exponent::from_integer(1);
    for s in &table.shells {
        let oracle = kernel_r_oracle(&params, s.j, depth)?;
        let delta = (s.r.to_f64() - oracle).abs();
        rep.check(delta <= tol, || format!("R closed form vs integral at j={}: {} vs {oracle}", s.j, s.r));
        if s.j <= 0 {
            rep.check(s.r.is_exact() && s.r.is_zero(), || format!("R at j={} should be exactly 0, got {}", s.j, s.r));
        }
        let mut warnings = String::new();
        if a.check_integral && s.j >= 1 && g <= one {
            rep.check(s.r1.to_f64() > 0.0, || format!("R_1 > 0 at j={}: got {}", s.j, s.r1));
        }
        if s.j >= 1 && g > one && s.r1.to_f64() <= 0.0 {
            warnings = "R_1 not positive (gamma > 1)".into();
        }
        rep.push(vec![
            text("shell"),
            Cell::Int(s.j),
            Cell::Float(s.r.to_f64()),
            Cell::Float(s.r1.to_f64()),
            Cell::Float(oracle),
            Cell::Float(delta),
            exact_text(&s.r1),
            text(warnings),
        ]);
    }
    if a.check_integral {
        let integral = &table.integral;
        let delta = (integral.to_f64() - 1.0).abs();
        let ok = if integral.is_exact() { *integral == Num::one() } else { delta <= norm_tol };
        rep.check(ok, || format!("int R_1 = 1: got {integral}"));
        let warn = if g > one {
            format!("min R_1 over shells = {}", table.min_r1().map_or("n/a".into(), format_float))
        } else {
            String::new()
        };
        rep.push(vec![
            text("integral"),
            text(""),
            text(""),
            Cell::Float(integral.to_f64()),
            Cell::Float(1.0),
            Cell::Float(delta),
            exact_text(integral),
            text(warn),
        ]);
    }
    Ok(rep)
}

fn run_apply(a: &ApplyArgs) -> Result<Report> {
    let phi = load_function(&a.function, &a.field)?;
    let fp = *phi.fp();
    let params = OperatorParams::new(fp, parse_alpha(&a.alpha)?)?;
    let mut rep = Report::new("apply", &["operator", "x", "re", "im", "exact", "note"]);
    let name = format!("{:?}", a.operator).to_lowercase();
    let xs = window_cosets(&phi)?;
    let mut warnings = String::new();
    let values: Vec<(Point, Cx)> = match a.operator {
        OperatorKind::Riesz => {
            let u = riesz_potential(&params, &phi)?;
            warnings = format!("beyond |x| = q^{}: {}", phi.support_radius(), u.tail());
            xs.into_iter()
                .map(|x| {
                    let v = u.eval(&x);
                    (x, v)
                })
                .collect()
        }
        OperatorKind::Vladimirov => {
            let u: ExtendedFunction = phi.clone().into();
            xs.into_iter().map(|x| vladimirov_hypersingular(&params, &u, &x).map(|v| (x, v))).collect::<Result<_>>()?
        }
        OperatorKind::Truncated => {
            let u = riesz_potential(&params, &phi)?;
            xs.into_iter()
                .map(|x| truncated_vladimirov(&params, a.nu, &u, &x).map(|v| (x, v)))
                .collect::<Result<_>>()?
        }
        OperatorKind::Multiplier => multiplier_on_window(params.gamma(), &phi, phi.support_radius() + 1)?,
    };
    for (x, v) in values {
        let (re, im) = v.to_pair();
        rep.push(vec![
            text(&name),
            text(x.to_string()),
            Cell::Float(re),
            Cell::Float(im),
            Cell::Bool(v.is_exact()),
            text(""),
        ]);
    }
    if !warnings.is_empty() {
        rep.push(vec![text(&name), text("tail"), text(""), text(""), text(""), text(warnings)]);
    }
    Ok(rep)
}

fn run_invert(a: &InvertArgs) -> Result<Report> {
    let phi = load_function(&a.function, &a.field)?;
    let params = OperatorParams::new(*phi.fp(), parse_alpha(&a.alpha)?)?;
    if a.nu_min < 1 || a.nu_max < a.nu_min {
        return invalid("need 1 <= --nu-min <= --nu-max");
    }
    let zero_tol = overridable(1e-12)?;
    let tol = overridable(DEFAULT_TOLERANCE)?;
    let k = phi.constancy_level();
    let mut rep = Report::new("invert", &["nu", "residual", "bound", "exact_zero", "regime", "warnings"]);
    for nu in a.nu_min..=a.nu_max {
        let r = inversion_residual(&params, a.lp, &phi, nu)?;
        let bound = minkowski_bound(&params, a.lp, &phi, nu)?;
        let regime = if nu >= k - 1 { "exact" } else { "bounded" };
        if nu >= k - 1 {
            rep.check(r.norm <= zero_tol, || format!("residual vanishes for nu={nu} >= k-1={}: got {}", k - 1, r.norm));
        } else {
            rep.check(r.norm <= bound + tol, || {
                format!("Minkowski bound at nu={nu}: residual {} > bound {bound}", r.norm)
            });
        }
        rep.push(vec![
            Cell::Int(nu),
            Cell::Float(r.norm),
            Cell::Float(bound),
            Cell::Bool(r.exact_zero),
            text(regime),
            text(r.warnings.join("; ")),
        ]);
    }
    Ok(rep)
}

fn run_fourier(a: &FourierArgs) -> Result<Report> {
    let phi = load_function(&a.function, &a.field)?;
    let params = OperatorParams::new(*phi.fp(), parse_alpha(&a.alpha)?)?;
    let tol = overridable(DEFAULT_TOLERANCE)?;
    let mult_tol = overridable(1e-9)?;
    let mut rep = Report::new("fourier-check", &["check", "a", "b", "delta", "pass"]);

    let ft = fourier_transform(&phi, false)?;
    let n_f = lp_norm(&phi.clone().into(), 2.0)?;
    let n_ft = lp_norm(&ft.clone().into(), 2.0)?;
    let d = (n_f - n_ft).abs();
    let ok = d <= tol;
    rep.check(ok, || format!("Plancherel: ||f||_2 = {n_f} vs ||Ff||_2 = {n_ft}"));
    rep.push(vec![text("plancherel"), Cell::Float(n_f), Cell::Float(n_ft), Cell::Float(d), Cell::Bool(ok)]);

    let back = fourier_transform(&ft, true)?;
    let d = phi.values().iter().zip(back.values()).map(|(x, y)| x.dist(y)).fold(0.0, f64::max);
    let ok = d <= tol;
    rep.check(ok, || format!("inverse transform: max table deviation {d}"));
    rep.push(vec![text("double_transform"), Cell::Float(0.0), Cell::Float(d), Cell::Float(d), Cell::Bool(ok)]);

    let mult = multiplier_on_window(params.gamma(), &phi, phi.support_radius() + 1)?;
    let u: ExtendedFunction = phi.clone().into();
    let mut worst = (0.0f64, 0.0, 0.0);
    for (x, m) in &mult {
        let h = vladimirov_hypersingular(&params, &u, x)?;
        let d = m.dist(&h);
        if d >= worst.0 {
            worst = (d, m.abs(), h.abs());
        }
    }
    let ok = worst.0 <= mult_tol;
    rep.check(ok, || format!("multiplier vs hypersingular D^alpha: max deviation {}", worst.0));
    rep.push(vec![
        text("multiplier_vs_hypersingular"),
        Cell::Float(worst.1),
        Cell::Float(worst.2),
        Cell::Float(worst.0),
        Cell::Bool(ok),
    ]);
    Ok(rep)
}

fn run_multidim(a: &MultidimArgs) -> Result<Report> {
    let f = load_function(&a.function, &a.field)?;
    let bridge = DimensionBridge::new(f.fp().p(), f.fp().degree(), parse_alpha(&a.alpha)?)?;
    let tol = overridable(DEFAULT_TOLERANCE)?;
    let mut rep = Report::new("multidim-check", &["x", "direct", "via_extension", "delta", "exact_match"]);
    let mut worst = 0.0f64;
    for x in window_cosets(&f)? {
        let d = taibleson_direct(&bridge, &f, &x)?;
        let e = taibleson_via_extension(&bridge, &f, &x)?;
        let delta = d.dist(&e);
        worst = worst.max(delta);
        let exact = d.is_exact() && e.is_exact() && d == e;
        rep.push(vec![
            text(x.to_string()),
            Cell::Float(d.re.to_f64()),
            Cell::Float(e.re.to_f64()),
            Cell::Float(delta),
            Cell::Bool(exact),
        ]);
    }
    rep.check(worst <= tol, || format!("direct vs via-extension Taibleson operator: max deviation {worst}"));
    Ok(rep)
}
