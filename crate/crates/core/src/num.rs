//! Scalar formatting shared by text output and the JSON encoders.

use serde::{Serialize, Serializer};

/// Largest magnitude below which every integer is exactly representable.
const EXACT_INT_LIMIT: f64 = 9_007_199_254_740_992.0;

/// Formats `v` with 12 significant digits; integral values get no decimal point.
pub fn format_scalar(v: f64) -> String {
    if let Some(int) = as_exact_int(v) {
        return int.to_string();
    }
    let rounded: f64 = format!("{:.11e}", v).parse().unwrap_or(v);
    match as_exact_int(rounded) {
        Some(int) => int.to_string(),
        None => rounded.to_string(),
    }
}

fn as_exact_int(v: f64) -> Option<i64> {
    if v.is_finite() && v.fract() == 0.0 && v.abs() < EXACT_INT_LIMIT {
        Some(v as i64)
    } else {
        None
    }
}

/// Serializes integral values as JSON integers and everything else at full precision.
pub(crate) struct Scalar(pub f64);

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match as_exact_int(self.0) {
            Some(int) => serializer.serialize_i64(int),
            None => serializer.serialize_f64(self.0),
        }
    }
}
