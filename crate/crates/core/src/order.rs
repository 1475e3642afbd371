//! The generalized dominance order: `X ≺ Y` iff every running total of `X`
//! is at most the matching running total of `Y`. Neither sorting nor equal
//! totals are required, so arrays can be read as timelines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::array::{Array, Tolerance};
use crate::error::{Error, Result};

/// Four-way result of comparing two arrays under the generalized order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DominanceOutcome {
    Equal,
    LeftStrictlyBelow,
    RightStrictlyBelow,
    Incomparable,
}

impl DominanceOutcome {
    /// True for `Equal` and `LeftStrictlyBelow`, i.e. `left ≺ right`.
    pub fn left_below_or_equal(self) -> bool {
        matches!(self, DominanceOutcome::Equal | DominanceOutcome::LeftStrictlyBelow)
    }

    pub fn reversed(self) -> Self {
        match self {
            DominanceOutcome::LeftStrictlyBelow => DominanceOutcome::RightStrictlyBelow,
            DominanceOutcome::RightStrictlyBelow => DominanceOutcome::LeftStrictlyBelow,
            other => other,
        }
    }

    /// Matrix glyph: `≺`, `≻`, `=` or `∥`.
    pub fn symbol(self) -> &'static str {
        match self {
            DominanceOutcome::Equal => "=",
            DominanceOutcome::LeftStrictlyBelow => "≺",
            DominanceOutcome::RightStrictlyBelow => "≻",
            DominanceOutcome::Incomparable => "∥",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DominanceOutcome::Equal => "Equal",
            DominanceOutcome::LeftStrictlyBelow => "LeftStrictlyBelow",
            DominanceOutcome::RightStrictlyBelow => "RightStrictlyBelow",
            DominanceOutcome::Incomparable => "Incomparable",
        }
    }
}

impl fmt::Display for DominanceOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DominanceOutcome {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Equal" => Ok(DominanceOutcome::Equal),
            "LeftStrictlyBelow" => Ok(DominanceOutcome::LeftStrictlyBelow),
            "RightStrictlyBelow" => Ok(DominanceOutcome::RightStrictlyBelow),
            "Incomparable" => Ok(DominanceOutcome::Incomparable),
            other => Err(format!("unknown outcome {other:?}")),
        }
    }
}

pub(crate) fn check_lengths(x: &Array, y: &Array) -> Result<()> {
    if x.len() == y.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        })
    }
}

/// Compares the running totals of `x` and `y`.
pub fn generalized_compare(x: &Array, y: &Array, tol: Tolerance) -> Result<DominanceOutcome> {
    check_lengths(x, y)?;
    let (px, py) = (x.prefix_sums(), y.prefix_sums());
    let mut left_below = true;
    let mut right_below = true;
    for (&a, &b) in px.as_slice().iter().zip(py.as_slice()) {
        left_below &= tol.le(a, b);
        right_below &= tol.le(b, a);
    }
    Ok(match (left_below, right_below) {
        (true, true) => DominanceOutcome::Equal,
        (true, false) => DominanceOutcome::LeftStrictlyBelow,
        (false, true) => DominanceOutcome::RightStrictlyBelow,
        (false, false) => DominanceOutcome::Incomparable,
    })
}

/// First 1-based position `k` where `I_X(k) > I_Y(k) + eps`, if any.
pub fn dominance_witness(x: &Array, y: &Array, tol: Tolerance) -> Result<Option<usize>> {
    check_lengths(x, y)?;
    let (px, py) = (x.prefix_sums(), y.prefix_sums());
    Ok(px
        .as_slice()
        .iter()
        .zip(py.as_slice())
        .position(|(&a, &b)| !tol.le(a, b))
        .map(|k| k + 1))
}

/// `x_i ≤ y_i + eps` for every position.
pub fn componentwise_leq(x: &Array, y: &Array, tol: Tolerance) -> Result<bool> {
    check_lengths(x, y)?;
    Ok(x.values()
        .iter()
        .zip(y.values())
        .all(|(&a, &b)| tol.le(a, b)))
}
