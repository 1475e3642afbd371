//! Certificates of dominance and their independent verifier.
//!
//! A certificate records every step together with the array it produced.
//! Verification replays each step from the recorded predecessor and checks
//! the order claims step by step; it never calls back into the producer.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::array::{Array, Tolerance};
use crate::eii::{apply_step, Step};
use crate::error::{Error, Result};
use crate::order::{generalized_compare, DominanceOutcome};

/// Which construction produced a certificate, and so which extra claims it makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    General,
    Decreasing,
    #[serde(rename = "transfers", alias = "transfers_only")]
    TransfersOnly,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::General => "general",
            Mode::Decreasing => "decreasing",
            Mode::TransfersOnly => "transfers",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub mode: Mode,
    pub source: Array,
    pub target: Array,
    pub steps: Vec<Step>,
    /// State after each step, one entry per step.
    pub intermediates: Vec<Array>,
}

impl Certificate {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn eii_count(&self) -> usize {
        self.steps.iter().filter(|s| s.is_eii()).count()
    }

    /// Every state from source through the last intermediate.
    pub fn chain(&self) -> impl Iterator<Item = &Array> {
        std::iter::once(&self.source).chain(&self.intermediates)
    }

    /// `(4,4) ≺ (7,1) ≺ …` over the recorded chain.
    pub fn chain_notation(&self) -> String {
        self.chain()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" ≺ ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Folds `steps` over `source`; errors carry the 1-based step index.
pub fn replay(source: &Array, steps: &[Step], tol: Tolerance) -> Result<Array> {
    steps
        .iter()
        .enumerate()
        .try_fold(source.clone(), |current, (idx, step)| {
            apply_step(&current, step, tol).map_err(|e| Error::Replay {
                step: idx + 1,
                source: Box::new(e),
            })
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    ChainNotStrict,
    NotSandwichedByTarget,
    ReplayMismatch,
    ModeViolation,
    SortedIntermediateNotBelowTarget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// 1-based step index; 0 refers to the certificate as a whole.
    pub step: usize,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub checked_steps: usize,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    fn pass(checked_steps: usize) -> Self {
        VerificationReport {
            ok: true,
            checked_steps,
            failure: None,
        }
    }

    fn fail(checked_steps: usize, step: usize, reason: FailureReason) -> Self {
        VerificationReport {
            ok: false,
            checked_steps,
            failure: Some(Failure { step, reason }),
        }
    }
}

/// Checks a certificate against the claims of its mode.
///
/// For every step: the recorded state must equal the replayed one, strictly
/// dominate its predecessor and be dominated by the target. Decreasing mode
/// also requires a non-increasing target, sorts only directly after an EII,
/// and the sorted form of every state below the target. Transfer mode
/// requires transfers only and a constant total.
pub fn verify_certificate(cert: &Certificate, tol: Tolerance) -> VerificationReport {
    use FailureReason::*;

    let n = cert.source.len();
    if cert.target.len() != n || cert.intermediates.iter().any(|a| a.len() != n) {
        return VerificationReport::fail(0, 0, ReplayMismatch);
    }
    if cert.mode == Mode::Decreasing && !cert.target.is_non_increasing(tol) {
        return VerificationReport::fail(0, 0, ModeViolation);
    }
    if cert.mode == Mode::TransfersOnly && !tol.eq(cert.source.total(), cert.target.total()) {
        return VerificationReport::fail(0, 0, ModeViolation);
    }

    let below_target = |z: &Array| {
        generalized_compare(z, &cert.target, tol)
            .map(DominanceOutcome::left_below_or_equal)
            .unwrap_or(false)
    };
    if !below_target(&cert.source) {
        return VerificationReport::fail(0, 0, NotSandwichedByTarget);
    }

    let mut previous = &cert.source;
    for (idx, step) in cert.steps.iter().enumerate() {
        let number = idx + 1;
        let fail = |reason| VerificationReport::fail(idx, number, reason);

        match cert.mode {
            Mode::TransfersOnly if !step.is_transfer() => return fail(ModeViolation),
            Mode::Decreasing
                if *step == Step::SortDesc && (idx == 0 || !cert.steps[idx - 1].is_eii()) =>
            {
                return fail(ModeViolation)
            }
            _ => {}
        }

        let Some(recorded) = cert.intermediates.get(idx) else {
            return fail(ReplayMismatch);
        };
        match apply_step(previous, step, tol) {
            Ok(replayed) if replayed.approx_eq(recorded, tol) => {}
            _ => return fail(ReplayMismatch),
        }

        if generalized_compare(previous, recorded, tol) != Ok(DominanceOutcome::LeftStrictlyBelow) {
            return fail(ChainNotStrict);
        }
        if !below_target(recorded) {
            return fail(NotSandwichedByTarget);
        }
        if cert.mode == Mode::Decreasing && !below_target(&recorded.sort_desc()) {
            return fail(SortedIntermediateNotBelowTarget);
        }
        if cert.mode == Mode::TransfersOnly && !tol.eq(previous.total(), recorded.total()) {
            return fail(ModeViolation);
        }
        previous = recorded;
    }

    let checked = cert.steps.len();
    if cert.intermediates.len() != checked {
        return VerificationReport::fail(checked, checked, ReplayMismatch);
    }
    if !previous.approx_eq(&cert.target, tol) {
        return VerificationReport::fail(checked, checked, ReplayMismatch);
    }
    VerificationReport::pass(checked)
}
