use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance used for every order comparison.
///
/// `a ≤ b` holds iff `a ≤ b + eps`, and `a = b` iff `|a - b| ≤ eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    /// Exact comparisons, for integer-valued inputs.
    pub const EXACT: Tolerance = Tolerance(0.0);

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn le(self, a: f64, b: f64) -> bool {
        a <= b + self.0
    }

    #[inline]
    pub fn eq(self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.0
    }

    /// `a < b` by more than the tolerance.
    #[inline]
    pub fn lt(self, a: f64, b: f64) -> bool {
        !self.le(b, a)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(Self::DEFAULT_EPS)
    }
}

/// A non-empty finite sequence of non-negative scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct Array(Vec<f64>);

impl Array {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyArray);
        }
        for (idx, &value) in values.iter().enumerate() {
            if value.is_nan() || value < 0.0 {
                return Err(Error::NegativeComponent {
                    index: idx + 1,
                    value,
                });
            }
            if value.is_infinite() {
                return Err(Error::NonFiniteComponent {
                    index: idx + 1,
                    value,
                });
            }
        }
        Ok(Array(values))
    }

    /// Builds an array from values the caller has already validated.
    pub(crate) fn from_valid(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0));
        Array(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; arrays are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|v| v.fract() == 0.0)
    }

    pub fn prefix_sums(&self) -> PrefixSums {
        let sums = self
            .0
            .iter()
            .scan(0.0, |acc, &v| {
                *acc += v;
                Some(*acc)
            })
            .collect();
        PrefixSums(sums)
    }

    /// Decreasing rearrangement; ties keep their original relative order.
    pub fn sort_desc(&self) -> Array {
        let mut values = self.0.clone();
        values.sort_by(|a, b| b.total_cmp(a));
        Array(values)
    }

    /// Increasing rearrangement; ties keep their original relative order.
    pub fn sort_asc(&self) -> Array {
        let mut values = self.0.clone();
        values.sort_by(|a, b| a.total_cmp(b));
        Array(values)
    }

    /// True when no later component exceeds an earlier one by more than `tol`.
    pub fn is_non_increasing(&self, tol: Tolerance) -> bool {
        self.first_ascent(tol).is_none()
    }

    /// 0-based position `k` of the first pair with `x[k+1] > x[k] + eps`.
    pub(crate) fn first_ascent(&self, tol: Tolerance) -> Option<usize> {
        self.0.windows(2).position(|w| !tol.le(w[1], w[0]))
    }

    pub fn approx_eq(&self, other: &Array, tol: Tolerance) -> bool {
        self.len() == other.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(&a, &b)| tol.eq(a, b))
    }
}

impl Index<usize> for Array {
    type Output = f64;

    fn index(&self, idx: usize) -> &f64 {
        &self.0[idx]
    }
}

impl TryFrom<Vec<f64>> for Array {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Array::new(values)
    }
}

impl fmt::Display for Array {
    /// Writes `(x1,x2,…,xN)`, integers without a decimal point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, v) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", crate::num::format_scalar(*v))?;
        }
        f.write_str(")")
    }
}

impl Serialize for Array {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|&v| crate::num::Scalar(v)))
    }
}

impl<'de> Deserialize<'de> for Array {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(deserializer)?;
        Array::new(values).map_err(serde::de::Error::custom)
    }
}

/// Running totals `I_X(k) = x_1 + … + x_k`, one per position.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixSums(Vec<f64>);

impl PrefixSums {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The array total (last running sum).
    pub fn total(&self) -> f64 {
        self.0.last().copied().unwrap_or(0.0)
    }
}

impl Index<usize> for PrefixSums {
    type Output = f64;

    fn index(&self, idx: usize) -> &f64 {
        &self.0[idx]
    }
}
