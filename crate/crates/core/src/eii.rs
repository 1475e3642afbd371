//! Elementary impact increases (EIIs) and the descending re-sort.
//!
//! An EII either moves an amount from a later position to an earlier one
//! (a transfer) or adds an amount at a single position (an increase). Both
//! raise at least one running total and lower none.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::array::{Array, Tolerance};
use crate::error::{Error, Result};
use crate::num::Scalar;

/// One certificate move. Indices are 0-based here and 1-based on the wire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Step {
    /// Move `amount` from `donor` to the earlier position `recipient`.
    Transfer {
        recipient: usize,
        donor: usize,
        amount: f64,
    },
    /// Add `amount` at position `at`.
    Increase { at: usize, amount: f64 },
    /// Rearrange into non-increasing order (stable).
    SortDesc,
}

impl Step {
    pub fn is_eii(&self) -> bool {
        !matches!(self, Step::SortDesc)
    }

    pub fn is_transfer(&self) -> bool {
        matches!(self, Step::Transfer { .. })
    }

    pub fn is_increase(&self) -> bool {
        matches!(self, Step::Increase { .. })
    }

    pub fn amount(&self) -> Option<f64> {
        match *self {
            Step::Transfer { amount, .. } | Step::Increase { amount, .. } => Some(amount),
            Step::SortDesc => None,
        }
    }
}

/// Applies an EII step; `SortDesc` is rejected.
pub fn apply_eii(x: &Array, step: &Step, tol: Tolerance) -> Result<Array> {
    let n = x.len();
    let check_index = |idx: usize| {
        if idx < n {
            Ok(())
        } else {
            Err(Error::IndexOutOfBounds {
                index: idx.saturating_add(1),
                len: n,
            })
        }
    };
    let check_amount = |amount: f64| {
        if amount > 0.0 && amount.is_finite() {
            Ok(())
        } else {
            Err(Error::NonPositiveAmount { amount })
        }
    };

    let mut values = x.values().to_vec();
    match *step {
        Step::Increase { at, amount } => {
            check_index(at)?;
            check_amount(amount)?;
            values[at] += amount;
        }
        Step::Transfer {
            recipient,
            donor,
            amount,
        } => {
            check_index(recipient)?;
            check_index(donor)?;
            if recipient >= donor {
                return Err(Error::TransferOrder {
                    recipient: recipient + 1,
                    donor: donor + 1,
                });
            }
            check_amount(amount)?;
            if !tol.le(amount, values[donor]) {
                return Err(Error::TransferExceedsSource {
                    donor: donor + 1,
                    available: values[donor],
                    amount,
                });
            }
            values[recipient] += amount;
            values[donor] = (values[donor] - amount).max(0.0);
        }
        Step::SortDesc => return Err(Error::SortStepNotEii),
    }
    Ok(Array::from_valid(values))
}

/// Applies any step, including `SortDesc`.
pub fn apply_step(x: &Array, step: &Step, tol: Tolerance) -> Result<Array> {
    match step {
        Step::SortDesc => Ok(x.sort_desc()),
        eii => apply_eii(x, eii, tol),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum StepRepr {
    Transfer { i: usize, j: usize, a: f64 },
    Increase { i: usize, a: f64 },
    SortDesc,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum StepOut {
    Transfer { i: usize, j: usize, a: Scalar },
    Increase { i: usize, a: Scalar },
    SortDesc,
}

impl Serialize for Step {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match *self {
            Step::Transfer {
                recipient,
                donor,
                amount,
            } => StepOut::Transfer {
                i: recipient + 1,
                j: donor + 1,
                a: Scalar(amount),
            },
            Step::Increase { at, amount } => StepOut::Increase {
                i: at + 1,
                a: Scalar(amount),
            },
            Step::SortDesc => StepOut::SortDesc,
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Step {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let zero_based = |idx: usize| {
            idx.checked_sub(1)
                .ok_or_else(|| D::Error::custom("step indices are 1-based"))
        };
        Ok(match StepRepr::deserialize(deserializer)? {
            StepRepr::Transfer { i, j, a } => Step::Transfer {
                recipient: zero_based(i)?,
                donor: zero_based(j)?,
                amount: a,
            },
            StepRepr::Increase { i, a } => Step::Increase {
                at: zero_based(i)?,
                amount: a,
            },
            StepRepr::SortDesc => Step::SortDesc,
        })
    }
}
