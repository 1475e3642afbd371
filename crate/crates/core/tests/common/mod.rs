//! Test-only oracles. These recompute everything from raw slices and do not
//! call into the library's comparison or replay code.
#![allow(dead_code)]

use majorize::{Array, Certificate, Mode, PairConfig, Step};

/// `Σ_{j≤k} x_j` by explicit double loop.
pub fn prefix_oracle(x: &[f64]) -> Vec<f64> {
    (0..x.len()).map(|k| (0..=k).map(|j| x[j]).sum()).collect()
}

/// `x ≺ y` over running totals, with absolute slack `eps`.
pub fn below_oracle(x: &[f64], y: &[f64], eps: f64) -> bool {
    let (px, py) = (prefix_oracle(x), prefix_oracle(y));
    px.iter().zip(&py).all(|(a, b)| *a <= *b + eps)
}

/// `x ≺ y` and the running totals differ somewhere by more than `eps`.
pub fn strictly_below_oracle(x: &[f64], y: &[f64], eps: f64) -> bool {
    let (px, py) = (prefix_oracle(x), prefix_oracle(y));
    below_oracle(x, y, eps) && px.iter().zip(&py).any(|(a, b)| *b - *a > eps)
}

pub fn sorted_desc(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    // insertion sort, stable
    for i in 1..v.len() {
        let mut k = i;
        while k > 0 && v[k - 1] < v[k] {
            v.swap(k - 1, k);
            k -= 1;
        }
    }
    v
}

/// Applies one step to raw values, panicking on inadmissible steps.
pub fn apply_oracle(x: &[f64], step: &Step) -> Vec<f64> {
    let mut v = x.to_vec();
    match *step {
        Step::Transfer {
            recipient,
            donor,
            amount,
        } => {
            assert!(recipient < donor && amount > 0.0 && amount <= v[donor]);
            v[recipient] += amount;
            v[donor] -= amount;
        }
        Step::Increase { at, amount } => {
            assert!(amount > 0.0);
            v[at] += amount;
        }
        Step::SortDesc => v = sorted_desc(&v),
    }
    v
}

/// Every order claim a certificate makes, checked from raw values (exact arithmetic).
pub fn check_chain(cert: &Certificate) -> Result<(), String> {
    let y = cert.target.values();
    let mut current = cert.source.values().to_vec();
    if cert.steps.len() != cert.intermediates.len() {
        return Err("step/intermediate count differs".into());
    }
    for (idx, (step, recorded)) in cert.steps.iter().zip(&cert.intermediates).enumerate() {
        let next = apply_oracle(&current, step);
        if next != recorded.values() {
            return Err(format!("step {}: replay {:?} != recorded {}", idx + 1, next, recorded));
        }
        if !strictly_below_oracle(&current, &next, 0.0) {
            return Err(format!("step {}: not strictly above predecessor", idx + 1));
        }
        if !below_oracle(&next, y, 0.0) {
            return Err(format!("step {}: {} not below target", idx + 1, recorded));
        }
        if cert.mode == Mode::Decreasing && !below_oracle(&sorted_desc(&next), y, 0.0) {
            return Err(format!("step {}: sorted {} not below target", idx + 1, recorded));
        }
        if cert.mode == Mode::TransfersOnly && !step.is_transfer() {
            return Err(format!("step {}: not a transfer", idx + 1));
        }
        current = next;
    }
    if current != y {
        return Err(format!("chain ends at {current:?}, target {}", cert.target));
    }
    Ok(())
}

/// Integer pairs with `N ≤ 12`, entries ≤ 100, from consecutive seeds.
pub fn integer_pair(seed: u64) -> (Array, Array) {
    let len = 1 + (seed % 12) as usize;
    let moves = (seed / 12 % 25) as usize;
    majorize::random_pair(seed, &PairConfig::new(len, moves, true))
}

/// Like [`integer_pair`] but with both arrays non-increasing; `None` when
/// sorting the source breaks dominance.
pub fn sorted_integer_pair(seed: u64) -> Option<(Array, Array)> {
    let len = 1 + (seed % 12) as usize;
    let moves = (seed / 12 % 25) as usize;
    let (x, y) = majorize::random_pair(seed, &PairConfig::new(len, moves, true).sorted_target());
    let x = x.sort_desc();
    below_oracle(x.values(), y.values(), 0.0).then_some((x, y))
}

/// Equal-total integer pairs.
pub fn equal_sum_pair(seed: u64) -> (Array, Array) {
    let len = 1 + (seed % 12) as usize;
    let moves = (seed / 12 % 25) as usize;
    majorize::random_pair(seed, &PairConfig::new(len, moves, true).transfers_only())
}

/// Equal-total pairs with `x` classically majorized by `y`.
///
/// `y` is a sorted random target; `x` comes from Pigou–Dalton moves that
/// shift at most half the gap from a larger component to a smaller one, and
/// is then shuffled. Every such move lowers the Lorenz curve weakly.
pub fn classical_pair(seed: u64) -> (Array, Array) {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    let len = 2 + (seed % 11) as usize;
    let moves = (seed / 11 % 25) as usize;
    let (_, y) = majorize::random_pair(seed, &PairConfig::new(len, 0, true).sorted_target());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut x = y.values().to_vec();
    for _ in 0..moves {
        let a = rng.random_range(0..len);
        let b = rng.random_range(0..len);
        let (rich, poor) = if x[a] >= x[b] { (a, b) } else { (b, a) };
        let half_gap = ((x[rich] - x[poor]) / 2.0).floor();
        if half_gap >= 1.0 {
            let h = rng.random_range(1..=half_gap as u64) as f64;
            x[rich] -= h;
            x[poor] += h;
        }
    }
    x.shuffle(&mut rng);
    let x = Array::new(x).unwrap();
    debug_assert!(below_oracle(&sorted_desc(x.values()), y.values(), 0.0));
    (x, y)
}
