//! Classical majorization, Lorenz curves and the Gini index.
//!
//! Components are ranked decreasingly, so the curve runs from `(0,0)` to
//! `(1,1)` above the diagonal, and a higher curve means more concentration.

use serde::{Deserialize, Serialize};

use crate::array::{Array, Tolerance};
use crate::error::{Error, Result};
use crate::num::format_scalar;
use crate::order::check_lengths;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorenzPoint {
    pub share_of_items: f64,
    pub share_of_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorenzCurve {
    pub points: Vec<LorenzPoint>,
}

impl LorenzCurve {
    /// Ordinates at `k/N` for `k = 0..=N`.
    pub fn ordinates(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.share_of_total)
    }

    /// Area under the polyline, by the trapezoid rule over its segments.
    pub fn area(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| {
                let width = w[1].share_of_items - w[0].share_of_items;
                width * (w[0].share_of_total + w[1].share_of_total) / 2.0
            })
            .sum()
    }

    /// Two-column `abscissa,ordinate` CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("abscissa,ordinate\n");
        for p in &self.points {
            out.push_str(&format_scalar(p.share_of_items));
            out.push(',');
            out.push_str(&format_scalar(p.share_of_total));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let points: Vec<[crate::num::Scalar; 2]> = self
            .points
            .iter()
            .map(|p| [crate::num::Scalar(p.share_of_items), crate::num::Scalar(p.share_of_total)])
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({ "points": points }))
            .expect("curve serializes")
    }
}

/// Points `(k/N, share held by the k largest components)`.
pub fn lorenz_points(x: &Array) -> Result<LorenzCurve> {
    let total = x.total();
    if total <= 0.0 {
        return Err(Error::ZeroTotal);
    }
    let n = x.len();
    let sorted = x.sort_desc();
    let sums = sorted.prefix_sums();
    let mut points = Vec::with_capacity(n + 1);
    points.push(LorenzPoint {
        share_of_items: 0.0,
        share_of_total: 0.0,
    });
    for k in 1..=n {
        let share_of_total = if k == n { 1.0 } else { (sums[k - 1] / total).min(1.0) };
        points.push(LorenzPoint {
            share_of_items: k as f64 / n as f64,
            share_of_total,
        });
    }
    Ok(LorenzCurve { points })
}

/// `X ≺_L Y`: equal totals and decreasing-rank running totals of `X` never above those of `Y`.
pub fn classical_majorizes(x: &Array, y: &Array, tol: Tolerance) -> Result<bool> {
    check_lengths(x, y)?;
    let px = x.sort_desc().prefix_sums();
    let py = y.sort_desc().prefix_sums();
    let n = x.len();
    let prefixes_ok = (0..n - 1).all(|k| tol.le(px[k], py[k]));
    Ok(prefixes_ok && tol.eq(px.total(), py.total()))
}

/// A continuous convex test function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvexFn {
    Square,
    /// `max(x - threshold, 0)`
    Hinge { threshold: f64 },
    /// `exp(x / scale)`
    Exp { scale: f64 },
}

impl ConvexFn {
    pub fn eval(self, v: f64) -> f64 {
        match self {
            ConvexFn::Square => v * v,
            ConvexFn::Hinge { threshold } => (v - threshold).max(0.0),
            ConvexFn::Exp { scale } => (v / scale).exp(),
        }
    }
}

/// `x²`, hinges at the nine deciles of the pooled values, and `exp(x/max)`.
pub fn default_family(x: &Array, y: &Array) -> Vec<ConvexFn> {
    let mut pooled: Vec<f64> = x.values().iter().chain(y.values()).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let last = pooled.len() - 1;
    let quantile = |q: f64| {
        let pos = q * last as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        pooled[lo] + (pooled[hi] - pooled[lo]) * (pos - lo as f64)
    };

    let mut family = vec![ConvexFn::Square];
    family.extend((1..10).map(|d| ConvexFn::Hinge {
        threshold: quantile(d as f64 / 10.0),
    }));
    let max = pooled[last];
    family.push(ConvexFn::Exp {
        scale: if max > 0.0 { max } else { 1.0 },
    });
    family
}

/// `Σ φ(x_i) ≤ Σ φ(y_i) + eps` for every `φ` in `family`.
///
/// Only the direction from majorization to these inequalities is sound; a
/// finite family cannot establish majorization.
pub fn convex_inequality_holds(
    x: &Array,
    y: &Array,
    family: &[ConvexFn],
    tol: Tolerance,
) -> Result<bool> {
    check_lengths(x, y)?;
    Ok(family.iter().all(|&phi| {
        let lhs: f64 = x.values().iter().map(|&v| phi.eval(v)).sum();
        let rhs: f64 = y.values().iter().map(|&v| phi.eval(v)).sum();
        tol.le(lhs, rhs)
    }))
}

/// Gini index `2·A − 1`, where `A` is the area under the decreasing-rank curve.
pub fn gini(x: &Array) -> Result<f64> {
    let curve = lorenz_points(x)?;
    Ok((2.0 * curve.area() - 1.0).max(0.0))
}
