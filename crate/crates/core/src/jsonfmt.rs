//! Byte-stable JSON numbers: every float is rounded to 12 significant digits
//! before serialization.

use nalgebra::{DMatrix, DVector};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 { 0.0 } else { r }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(round_sig(self.0))
    }
}

pub fn nums(xs: impl IntoIterator<Item = f64>) -> Vec<Num> {
    xs.into_iter().map(Num).collect()
}

pub fn vector(v: &DVector<f64>) -> Vec<Num> {
    nums(v.iter().copied())
}

/// Row-major nested list.
pub fn rows(m: &DMatrix<f64>) -> Vec<Vec<Num>> {
    m.row_iter().map(|r| nums(r.iter().copied())).collect()
}

/// Column-major nested list (one inner list per column).
pub fn columns(m: &DMatrix<f64>) -> Vec<Vec<Num>> {
    m.column_iter().map(|c| nums(c.iter().copied())).collect()
}
