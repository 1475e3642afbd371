//! Seeded generation of dominated pairs for property tests and the CLI.
//!
//! A target `Y` is sampled first; `X` is then obtained by applying inverse
//! moves to `Y`. Moving mass from an earlier position to a later one, or
//! deleting mass, can only lower running totals, so `X ≺ Y` by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::array::Array;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConfig {
    pub len: usize,
    /// Number of inverse moves applied to the target.
    pub moves: usize,
    /// Integer entries; otherwise uniform reals.
    pub integer: bool,
    /// Upper bound for every component of both arrays.
    pub max_value: f64,
    /// Sort the target non-increasing before perturbing it.
    pub sorted_target: bool,
    /// Only mass-preserving moves, so both arrays share a total.
    pub transfers_only: bool,
}

impl PairConfig {
    pub fn new(len: usize, moves: usize, integer: bool) -> Self {
        PairConfig {
            len,
            moves,
            integer,
            max_value: 100.0,
            sorted_target: false,
            transfers_only: false,
        }
    }

    pub fn sorted_target(mut self) -> Self {
        self.sorted_target = true;
        self
    }

    pub fn transfers_only(mut self) -> Self {
        self.transfers_only = true;
        self
    }

    pub fn max_value(mut self, max_value: f64) -> Self {
        self.max_value = max_value;
        self
    }
}

/// `(X, Y)` with `X ≺ Y`; `moves = 0` gives `X = Y`.
///
/// # Panics
///
/// Panics if `len` is zero.
pub fn random_dominated_pair(seed: u64, len: usize, moves: usize, integer: bool) -> (Array, Array) {
    random_pair(seed, &PairConfig::new(len, moves, integer))
}

pub fn random_pair(seed: u64, config: &PairConfig) -> (Array, Array) {
    assert!(config.len >= 1, "arrays need at least one component");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = config.max_value;

    let mut target: Vec<f64> = (0..config.len)
        .map(|_| sample_amount(&mut rng, config.integer, max))
        .collect();
    if config.sorted_target {
        target.sort_by(|a, b| b.total_cmp(a));
    }

    let mut source = target.clone();
    for _ in 0..config.moves {
        let delete = !config.transfers_only && rng.random_bool(0.5);
        if delete {
            let at = rng.random_range(0..config.len);
            if source[at] > 0.0 {
                source[at] -= sample_positive(&mut rng, config.integer, source[at]);
            }
        } else if config.len >= 2 {
            let from = rng.random_range(0..config.len - 1);
            let to = rng.random_range(from + 1..config.len);
            let room = source[from].min(max - source[to]);
            if room > 0.0 {
                let amount = sample_positive(&mut rng, config.integer, room);
                source[from] -= amount;
                source[to] += amount;
            }
        }
    }

    let source = Array::new(source).expect("inverse moves keep components non-negative");
    let target = Array::new(target).expect("sampled components are non-negative");
    (source, target)
}

fn sample_amount(rng: &mut ChaCha8Rng, integer: bool, max: f64) -> f64 {
    if integer {
        rng.random_range(0..=max as u64) as f64
    } else {
        rng.random::<f64>() * max
    }
}

/// Amount in `(0, bound]`; integer mode assumes an integral `bound ≥ 1`.
fn sample_positive(rng: &mut ChaCha8Rng, integer: bool, bound: f64) -> f64 {
    if integer {
        rng.random_range(1..=bound as u64) as f64
    } else {
        // (0, 1] scaled; `1 - u` avoids a zero draw.
        (1.0 - rng.random::<f64>()) * bound
    }
}
