//! Generalized Lorenz dominance and certificates of elementary impact increases.
//!
//! `X ≺ Y` holds when every running total `x_1 + … + x_k` is at most the
//! matching total of `Y`. Whenever it holds, `Y` can be reached from `X` by
//! finitely many elementary impact increases (transfers towards earlier
//! positions and pure increases); [`decompose_general`] and friends produce
//! that sequence as a [`Certificate`], and [`verify_certificate`] checks one
//! without trusting its producer.

pub mod array;
pub mod certificate;
pub mod decompose;
pub mod eii;
pub mod error;
pub mod generate;
pub mod lorenz;
pub mod num;
pub mod order;

pub use array::{Array, PrefixSums, Tolerance};
pub use certificate::{
    replay, verify_certificate, Certificate, Failure, FailureReason, Mode, VerificationReport,
};
pub use decompose::{decompose_decreasing, decompose_general, decompose_transfers};
pub use eii::{apply_eii, apply_step, Step};
pub use error::{Error, Result};
pub use generate::{random_dominated_pair, random_pair, PairConfig};
pub use lorenz::{
    classical_majorizes, convex_inequality_holds, default_family, gini, lorenz_points, ConvexFn,
    LorenzCurve, LorenzPoint,
};
pub use order::{componentwise_leq, dominance_witness, generalized_compare, DominanceOutcome};
