//! Constructive decompositions of `X ≺ Y` into elementary impact increases.
//!
//! Each iteration looks at the current array `Z`:
//!
//! * if `Z ≤ Y` componentwise, raise the first deficient position to its
//!   target value (a pure increase);
//! * otherwise let `j` be the first position with `z_j > y_j` and
//!   `c = z_j - y_j`. Earlier positions with a deficit fill up from `j`, in
//!   index order, until `c` has been moved. Afterwards the first `j`
//!   positions are all at or below `Y`, so the next excess lies further on.
//!
//! The general procedure emits whole blocks of transfers. The decreasing
//! procedure takes one step at a time and re-sorts whenever the step leaves
//! the array out of order, so every EII state stays below `Y` once sorted.

use crate::array::{Array, Tolerance};
use crate::certificate::{Certificate, Mode};
use crate::eii::{apply_eii, Step};
use crate::error::{Error, Result};
use crate::order::{check_lengths, dominance_witness};

/// What a single pass over `current` proposes next.
enum Plan {
    Done,
    Steps(Vec<Step>),
}

fn ensure_dominated(x: &Array, y: &Array, tol: Tolerance) -> Result<()> {
    check_lengths(x, y)?;
    match dominance_witness(x, y, tol)? {
        None => Ok(()),
        Some(witness) => Err(Error::NotDominated { witness }),
    }
}

/// The next Case-A step, or the next Case-B block of transfers.
///
/// Positions within `eps` of their target count as settled.
fn plan_block(current: &Array, target: &Array, tol: Tolerance) -> Result<Plan> {
    let z = current.values();
    let y = target.values();

    let Some(excess_at) = z.iter().zip(y).position(|(&a, &b)| !tol.le(a, b)) else {
        return Ok(match z.iter().zip(y).position(|(&a, &b)| tol.lt(a, b)) {
            None => Plan::Done,
            Some(at) => Plan::Steps(vec![Step::Increase {
                at,
                amount: y[at] - z[at],
            }]),
        });
    };

    let excess = z[excess_at] - y[excess_at];
    let mut moved = 0.0;
    let mut steps = Vec::new();
    for recipient in (0..excess_at).filter(|&i| tol.lt(z[i], y[i])) {
        let deficit = y[recipient] - z[recipient];
        if moved + deficit >= excess - tol.eps() {
            steps.push(Step::Transfer {
                recipient,
                donor: excess_at,
                amount: excess - moved,
            });
            return Ok(Plan::Steps(steps));
        }
        steps.push(Step::Transfer {
            recipient,
            donor: excess_at,
            amount: deficit,
        });
        moved += deficit;
    }
    // Only reachable when dominance holds within eps but the slack sits in
    // positions already treated as settled.
    Err(Error::NotDominated {
        witness: excess_at + 1,
    })
}

struct Builder {
    mode: Mode,
    source: Array,
    current: Array,
    steps: Vec<Step>,
    intermediates: Vec<Array>,
}

impl Builder {
    fn new(mode: Mode, source: &Array) -> Self {
        Builder {
            mode,
            source: source.clone(),
            current: source.clone(),
            steps: Vec::new(),
            intermediates: Vec::new(),
        }
    }

    fn push_eii(&mut self, step: Step, tol: Tolerance) -> Result<()> {
        self.current = apply_eii(&self.current, &step, tol)?;
        self.steps.push(step);
        self.intermediates.push(self.current.clone());
        Ok(())
    }

    fn push_sort(&mut self) {
        self.current = self.current.sort_desc();
        self.steps.push(Step::SortDesc);
        self.intermediates.push(self.current.clone());
    }

    fn finish(self, target: &Array) -> Certificate {
        Certificate {
            mode: self.mode,
            source: self.source,
            target: target.clone(),
            steps: self.steps,
            intermediates: self.intermediates,
        }
    }
}

/// Certificate for any `X ≺ Y`.
///
/// At most `N` blocks of at most `N` steps each, so the step count never
/// exceeds `N²`.
pub fn decompose_general(x: &Array, y: &Array, tol: Tolerance) -> Result<Certificate> {
    ensure_dominated(x, y, tol)?;
    let mut builder = Builder::new(Mode::General, x);
    while let Plan::Steps(block) = plan_block(&builder.current, y, tol)? {
        for step in block {
            builder.push_eii(step, tol)?;
        }
    }
    Ok(builder.finish(y))
}

/// Certificate for `X ≺ Y` with both arrays non-increasing.
///
/// One EII per iteration, followed by a descending re-sort whenever the EII
/// left the array out of order. Sorting never happens without a preceding EII,
/// and every EII state, once sorted, stays below `Y`.
///
/// The source must be sorted too: for `X = (0,3,3)`, `Y = (2,2,2)` every
/// single EII leaves a 3 in place, so no such chain exists.
pub fn decompose_decreasing(x: &Array, y: &Array, tol: Tolerance) -> Result<Certificate> {
    check_lengths(x, y)?;
    if let Some(k) = y.first_ascent(tol) {
        return Err(Error::TargetNotDecreasing { index: k + 2 });
    }
    if let Some(k) = x.first_ascent(tol) {
        return Err(Error::SourceNotDecreasing { index: k + 2 });
    }
    ensure_dominated(x, y, tol)?;
    let mut builder = Builder::new(Mode::Decreasing, x);
    while let Plan::Steps(block) = plan_block(&builder.current, y, tol)? {
        builder.push_eii(block[0], tol)?;
        if !builder.current.is_non_increasing(tol) {
            builder.push_sort();
        }
    }
    Ok(builder.finish(y))
}

/// Certificate of transfers only, for `X ≺ Y` with equal totals.
pub fn decompose_transfers(x: &Array, y: &Array, tol: Tolerance) -> Result<Certificate> {
    check_lengths(x, y)?;
    let (left, right) = (x.total(), y.total());
    if !tol.eq(left, right) {
        return Err(Error::SumsNotEqual { left, right });
    }
    let mut cert = decompose_general(x, y, tol)?;
    if let Some(idx) = cert.steps.iter().position(Step::is_increase) {
        return Err(Error::IncreaseInTransferMode { step: idx + 1 });
    }
    cert.mode = Mode::TransfersOnly;
    Ok(cert)
}
