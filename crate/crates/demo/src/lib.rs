//! Browser bindings for three operations: compare two arrays, decompose one
//! into the other, and draw both Lorenz curves.
//!
//! Each operation is a plain function from text to a JSON string so it can be
//! tested natively; the `#[wasm_bindgen]` wrappers only convert the error.

use majorize::num::format_scalar;
use majorize::{
    decompose_decreasing, decompose_general, decompose_transfers, dominance_witness,
    generalized_compare, gini, lorenz_points, Array, Tolerance,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Parses `"1, 2.5, 3"`; whitespace-separated input is accepted too.
pub fn parse_array(text: &str) -> Result<Array, String> {
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|cell| !cell.is_empty())
        .enumerate()
        .map(|(idx, cell)| {
            cell.parse::<f64>()
                .map_err(|_| format!("value {}: {cell:?} is not a number", idx + 1))
        })
        .collect::<Result<Vec<f64>, String>>()?;
    Array::new(values).map_err(|e| e.to_string())
}

fn tolerance(eps: f64) -> Result<Tolerance, String> {
    Tolerance::new(eps).map_err(|e| e.to_string())
}

fn operands(left: &str, right: &str) -> Result<(Array, Array), String> {
    let left = parse_array(left).map_err(|e| format!("X: {e}"))?;
    let right = parse_array(right).map_err(|e| format!("Y: {e}"))?;
    if left.len() != right.len() {
        return Err(format!(
            "X has {} values but Y has {}",
            left.len(),
            right.len()
        ));
    }
    Ok((left, right))
}

fn labels(values: &[f64]) -> Vec<String> {
    values.iter().map(|&v| format_scalar(v)).collect()
}

/// Verdict plus both prefix-sum sequences and the first violating position.
pub fn compare_json(left: &str, right: &str, eps: f64) -> Result<String, String> {
    let tol = tolerance(eps)?;
    let (x, y) = operands(left, right)?;
    let outcome = generalized_compare(&x, &y, tol).map_err(|e| e.to_string())?;
    let witness = dominance_witness(&x, &y, tol).map_err(|e| e.to_string())?;
    let px = x.prefix_sums();
    let py = y.prefix_sums();
    Ok(json!({
        "outcome": outcome.name(),
        "symbol": outcome.symbol(),
        "x_prefix": px.as_slice(),
        "y_prefix": py.as_slice(),
        "x_prefix_labels": labels(px.as_slice()),
        "y_prefix_labels": labels(py.as_slice()),
        "witness": witness,
    })
    .to_string())
}

/// The certificate chain from `source` up to `target`, one state per link.
pub fn decompose_json(source: &str, target: &str, mode: &str, eps: f64) -> Result<String, String> {
    let tol = tolerance(eps)?;
    let (x, y) = operands(source, target)?;
    let cert = match mode {
        "general" => decompose_general(&x, &y, tol),
        "decreasing" => decompose_decreasing(&x, &y, tol),
        "transfers" => decompose_transfers(&x, &y, tol),
        other => return Err(format!("unknown mode {other:?}")),
    }
    .map_err(|e| e.to_string())?;

    let states: Vec<Value> = cert
        .chain()
        .map(|a| Value::from(labels(a.values())))
        .collect();
    Ok(json!({
        "mode": cert.mode.to_string(),
        "eii_count": cert.eii_count(),
        "steps": cert.steps,
        "states": states,
        "notation": cert.chain_notation(),
        "certificate": serde_json::to_value(&cert).expect("certificates serialize"),
    })
    .to_string())
}

/// Lorenz points and Gini index for each of the two arrays.
pub fn lorenz_json(left: &str, right: &str) -> Result<String, String> {
    let curve = |text: &str, name: &str| -> Result<Value, String> {
        let a = parse_array(text).map_err(|e| format!("{name}: {e}"))?;
        let curve = lorenz_points(&a).map_err(|e| format!("{name}: {e}"))?;
        let g = gini(&a).map_err(|e| format!("{name}: {e}"))?;
        Ok(json!({
            "points": curve
                .points
                .iter()
                .map(|p| [p.share_of_items, p.share_of_total])
                .collect::<Vec<_>>(),
            "gini": g,
            "gini_label": format_scalar(g),
        }))
    };
    Ok(json!({ "x": curve(left, "X")?, "y": curve(right, "Y")? }).to_string())
}

#[wasm_bindgen]
pub fn compare(left: &str, right: &str, eps: f64) -> Result<String, JsValue> {
    compare_json(left, right, eps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn decompose(source: &str, target: &str, mode: &str, eps: f64) -> Result<String, JsValue> {
    decompose_json(source, target, mode, eps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lorenz(left: &str, right: &str) -> Result<String, JsValue> {
    lorenz_json(left, right).map_err(|e| JsValue::from_str(&e))
}
