//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Every export takes and returns JSON strings. The `*_json` functions hold
//! the logic and are callable from native code; the exported wrappers only
//! turn errors into JS exceptions.

use std::cell::OnceCell;

use cobord::bounds::fixed_dim_lower_bound;
use cobord::{Dim, GroupDescriptor, Lazard, VarietyExpr};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Truncation used by the page. Lower than the CLI default so the first
/// call stays quick in the browser.
pub const WEB_TRUNCATION: u32 = 10;

thread_local! {
    static LAZARD: OnceCell<Lazard> = const { OnceCell::new() };
}

fn with_lazard<T>(f: impl FnOnce(&Lazard) -> T) -> T {
    LAZARD.with(|cell| f(cell.get_or_init(|| Lazard::new(WEB_TRUNCATION))))
}

#[derive(Serialize)]
struct ChernRow {
    alpha: String,
    value: String,
}

#[derive(Serialize)]
struct ClassView {
    variety: String,
    dim: Option<u32>,
    chern_numbers: Vec<ChernRow>,
    generators: String,
}

#[derive(Serialize)]
struct BoundView {
    variety: String,
    group: String,
    in_ipr: bool,
    reduced: String,
    lower_bound: Dim,
}

#[derive(Serialize)]
struct GridCell {
    degree: u32,
    dim: u32,
    lower_bound: Dim,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

pub fn class_json(expr: &str) -> Result<String, String> {
    let expr: VarietyExpr = expr.parse().map_err(|e: cobord::Error| e.to_string())?;
    with_lazard(|lazard| {
        let class = lazard.evaluate(&expr).map_err(|e| e.to_string())?;
        let coords = lazard.coords(&class).map_err(|e| e.to_string())?;
        to_json(&ClassView {
            variety: expr.to_string(),
            dim: class.dim(),
            chern_numbers: class
                .chern_numbers()
                .map(|(a, c)| ChernRow {
                    alpha: a.to_string(),
                    value: c.to_string(),
                })
                .collect(),
            generators: coords.to_string(),
        })
    })
}

pub fn bound_json(expr: &str, p: u64, group: &str) -> Result<String, String> {
    let expr: VarietyExpr = expr.parse().map_err(|e: cobord::Error| e.to_string())?;
    let group = GroupDescriptor::parse(p, group).map_err(|e| e.to_string())?;
    with_lazard(|lazard| {
        let class = lazard.evaluate(&expr).map_err(|e| e.to_string())?;
        let r = fixed_dim_lower_bound(lazard, &class, &group).map_err(|e| e.to_string())?;
        to_json(&BoundView {
            variety: expr.to_string(),
            group: group.to_string(),
            in_ipr: r.in_ipr,
            reduced: r.reduced.to_string(),
            lower_bound: r.lower_bound,
        })
    })
}

/// Bounds for every hypersurface of degree `1..=max_degree` and dimension
/// `0..=max_dim`.
pub fn hypersurface_grid_json(p: u64, group: &str, max_degree: u32, max_dim: u32) -> Result<String, String> {
    let group = GroupDescriptor::parse(p, group).map_err(|e| e.to_string())?;
    with_lazard(|lazard| {
        if max_dim > lazard.trunc() {
            return Err(format!("dimension {max_dim} exceeds truncation weight {}", lazard.trunc()));
        }
        let mut cells = Vec::new();
        for degree in 1..=max_degree {
            for dim in 0..=max_dim {
                let class = lazard
                    .evaluate(&VarietyExpr::Hyp(degree, dim))
                    .map_err(|e| e.to_string())?;
                let r = fixed_dim_lower_bound(lazard, &class, &group).map_err(|e| e.to_string())?;
                cells.push(GridCell {
                    degree,
                    dim,
                    lower_bound: r.lower_bound,
                });
            }
        }
        to_json(&cells)
    })
}

#[wasm_bindgen]
pub fn class_report(expr: &str) -> Result<String, JsError> {
    class_json(expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound_report(expr: &str, p: u32, group: &str) -> Result<String, JsError> {
    bound_json(expr, p.into(), group).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hypersurface_grid(p: u32, group: &str, max_degree: u32, max_dim: u32) -> Result<String, JsError> {
    hypersurface_grid_json(p.into(), group, max_degree, max_dim).map_err(|e| JsError::new(&e))
}
