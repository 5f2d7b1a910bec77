//! Output records: one JSON object per line, field order fixed by the
//! struct definitions so identical invocations emit identical bytes.

use serde::Serialize;

#[derive(Serialize)]
pub struct Hilbert {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub dims: Vec<usize>,
}

#[derive(Serialize)]
pub struct Basis {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub degree: i64,
    pub labels: Vec<String>,
}

#[derive(Serialize)]
pub struct Mul {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub a: String,
    pub b: String,
    pub product: String,
    pub degree: i64,
}

#[derive(Serialize)]
pub struct Slices {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub kind: &'static str,
    pub bound: i64,
    pub dims: Vec<usize>,
}

#[derive(Serialize)]
pub struct Discrepancy {
    pub degree: i64,
    pub witness: String,
    pub ideal_dim: usize,
    pub dann_dim: usize,
}

#[derive(Serialize)]
pub struct Dann {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub compare_up_to: i64,
    pub equal: bool,
    pub discrepancy: Option<Discrepancy>,
}

#[derive(Serialize)]
pub struct Poincare {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub pass: bool,
    pub top: Option<i64>,
    pub detail: String,
}

#[derive(Serialize)]
pub struct Probe {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub bound: i64,
    pub zero_input: bool,
    pub rows: Vec<(i64, usize, usize)>,
    pub limitation: &'static str,
}

#[derive(Serialize)]
pub struct Classify {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub degree: i64,
    pub weight: u64,
    pub verdict: String,
    pub witness: String,
}

#[derive(Serialize)]
pub struct BadPair {
    pub degree: i64,
    pub weight: u64,
    pub u: Vec<String>,
    pub v: Vec<String>,
}

#[derive(Serialize)]
pub struct BadPairs {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub weight_cap: u64,
    pub count: usize,
    pub pairs: Vec<BadPair>,
}

#[derive(Serialize)]
pub struct Stage {
    pub tool: &'static str,
    pub version: &'static str,
    pub stage: usize,
    pub weight_handled: u64,
    pub sweep_bound: i64,
    pub pairs_adjoined: usize,
    pub agreement_below: i64,
    pub hilbert: Vec<usize>,
}

#[derive(Serialize)]
pub struct Syzygy {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub dmax: i64,
    pub ok: bool,
    pub per_degree: Vec<(i64, usize, usize)>,
}

#[derive(Serialize)]
pub struct Witness {
    pub tool: &'static str,
    pub version: &'static str,
    pub ring: String,
    pub window: i64,
    pub monomials: usize,
    pub in_ideal: usize,
    pub excluded_with_witness: usize,
    pub dac_certified: bool,
}

#[derive(Serialize)]
pub struct OrdinalValue {
    pub tool: &'static str,
    pub version: &'static str,
    pub op: &'static str,
    pub input: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct OrdinalList {
    pub tool: &'static str,
    pub version: &'static str,
    pub op: &'static str,
    pub delta_cap: u64,
    pub count: usize,
    pub ordinals: Vec<String>,
}

#[derive(Serialize)]
pub struct RootValue {
    pub tool: &'static str,
    pub version: &'static str,
    pub op: &'static str,
    pub prime: u64,
    pub input: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct JGroup {
    pub tool: &'static str,
    pub version: &'static str,
    pub prime: u64,
    pub trunc: u32,
    pub degree: i64,
    pub group: String,
}

#[derive(Serialize)]
pub struct JMul {
    pub tool: &'static str,
    pub version: &'static str,
    pub prime: u64,
    pub trunc: u32,
    pub a: String,
    pub b: String,
    pub product: String,
    pub degree: i64,
}

#[derive(Serialize)]
pub struct DualityRow {
    pub degree: i64,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct Duality {
    pub tool: &'static str,
    pub version: &'static str,
    pub prime: u64,
    pub trunc: u32,
    pub range: i64,
    pub pass: bool,
    pub rows: Vec<DualityRow>,
}
