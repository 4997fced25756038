//! Function files: exact JSON tables of test functions.
//!
//! ```json
//! {
//!   "p": 2, "degree": 1, "support_level": 1, "constancy_level": 0,
//!   "values": [
//!     {"digits": [[0]], "re": {"num": 1, "den": 2}, "im": {"num": 0, "den": 1}},
//!     {"digits": [[1]], "re": {"num": -1, "den": 2}, "im": {"num": 0, "den": 1}}
//!   ]
//! }
//! ```
//!
//! `support_level` stores `m` (support in `|x| <= q^m`) and `constancy_level`
//! stores `k`. Each record lists, per coordinate, the digits `a_j` for
//! `j = -m .. k-1` of the coset representative `sum a_j p^j`. Records appear
//! in lexicographic order of their digits, coordinate 0 first.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{CosetGrid, FieldParams};
use crate::functions::TestFunction;
use crate::numerics::{Cx, Num};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalRecord {
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueRecord {
    pub digits: Vec<Vec<u32>>,
    pub re: RationalRecord,
    pub im: RationalRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub p: u64,
    pub degree: u32,
    pub support_level: i64,
    pub constancy_level: i64,
    pub values: Vec<ValueRecord>,
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn to_num(r: &RationalRecord) -> Result<Num> {
    if r.den == 0 {
        return Err(format_err("zero denominator"));
    }
    Ok(Num::rational(BigRational::new(r.num.into(), r.den.into())))
}

fn to_record(v: &Num) -> Result<RationalRecord> {
    let r = v.as_rational().ok_or_else(|| format_err(format!("value {v} is not rational")))?;
    let fit = |b: &BigInt| b.to_i64().ok_or_else(|| format_err(format!("{r} does not fit in 64 bits")));
    Ok(RationalRecord { num: fit(r.numer())?, den: fit(r.denom())? })
}

impl FunctionFile {
    pub fn to_function(&self) -> Result<TestFunction> {
        let fp = FieldParams::new(self.p, self.degree).map_err(|e| format_err(e.to_string()))?;
        let (m, k) = (self.support_level, self.constancy_level);
        if k < -m {
            return Err(format_err(format!("constancy level {k} is coarser than the support level {}", -m)));
        }
        let grid = CosetGrid::new(&fp, -m, k).map_err(|e| format_err(e.to_string()))?;
        if self.values.len() != grid.len() {
            return Err(format_err(format!(
                "table has {} entries, expected p^(n(m+k)) = {}",
                self.values.len(),
                grid.len()
            )));
        }
        let depth = (m + k) as usize;
        let mut values = Vec::with_capacity(grid.len());
        for (i, rec) in self.values.iter().enumerate() {
            if rec.digits.len() != self.degree as usize {
                return Err(format_err(format!("entry {i}: expected {} digit arrays", self.degree)));
            }
            if rec.digits.iter().any(|ds| ds.len() != depth) {
                return Err(format_err(format!("entry {i}: digit arrays must have length m + k = {depth}")));
            }
            if rec.digits.iter().flatten().any(|&a| a as u64 >= self.p) {
                return Err(format_err(format!("entry {i}: digit out of range [0, {})", self.p)));
            }
            match grid.index_from_digits(&rec.digits) {
                Some(idx) if idx == i => {}
                _ => return Err(format_err(format!("entry {i}: digits {:?} out of lexicographic order", rec.digits))),
            }
            values.push(Cx::new(to_num(&rec.re)?, to_num(&rec.im)?));
        }
        TestFunction::new(fp, m, k, values).map_err(|e| format_err(e.to_string()))
    }

    pub fn from_function(f: &TestFunction) -> Result<Self> {
        let values = f
            .grid()
            .iter()
            .zip(f.values())
            .map(|((idx, _), v)| {
                Ok(ValueRecord { digits: f.grid().digits(idx), re: to_record(&v.re)?, im: to_record(&v.im)? })
            })
            .collect::<Result<_>>()?;
        Ok(FunctionFile {
            p: f.fp().p(),
            degree: f.fp().degree(),
            support_level: f.support_radius(),
            constancy_level: f.constancy_level(),
            values,
        })
    }
}

pub fn function_from_json(text: &str) -> Result<TestFunction> {
    let file: FunctionFile = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
    file.to_function()
}

pub fn function_to_json(f: &TestFunction) -> Result<String> {
    let file = FunctionFile::from_function(f)?;
    let mut s = serde_json::to_string_pretty(&file).map_err(|e| format_err(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_function_file(path: &Path) -> Result<TestFunction> {
    let text = fs::read_to_string(path).map_err(|e| format_err(format!("{}: {e}", path.display())))?;
    function_from_json(&text).map_err(|e| format_err(format!("{}: {e}", path.display())))
}

pub fn write_function_file(path: &Path, f: &TestFunction) -> Result<()> {
    fs::write(path, function_to_json(f)?).map_err(|e| format_err(format!("{}: {e}", path.display())))
}
