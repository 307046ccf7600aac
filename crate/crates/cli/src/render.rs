//! Plain-text tables.

use std::fmt::Write;

use cobord::bounds::BoundReport;
use cobord::{ActionWitness, CobordismClass, GenPoly, VarietyExpr};

use crate::ChernBoundRow;

pub fn class(expr: &VarietyExpr, class: &CobordismClass, coords: &GenPoly) -> String {
    let mut out = String::new();
    let dim = class.dim().map_or("mixed".to_string(), |d| d.to_string());
    writeln!(out, "variety    {expr}").unwrap();
    writeln!(out, "dimension  {dim}").unwrap();
    writeln!(out, "{:<16} value", "Chern number").unwrap();
    for (alpha, c) in class.chern_numbers() {
        writeln!(out, "{:<16} {c}", format!("c_{alpha}")).unwrap();
    }
    writeln!(out, "generators {coords}").unwrap();
    out
}

pub fn bound(expr: &VarietyExpr, r: &BoundReport) -> String {
    let mut out = String::new();
    let certificate = r
        .certificate
        .as_ref()
        .map_or("-".to_string(), |c| format!("l_{} (coeff {})", c.monomial, c.coeff));
    let rows = [
        ("class", expr.to_string()),
        ("group", format!("{} (p={}, q={}, r={})", r.group, r.group.p, r.q, r.r)),
        ("in I_p(r)", r.in_ipr.to_string()),
        ("reduced", r.reduced.to_string()),
        ("bound", r.lower_bound.to_string()),
        ("certificate", certificate),
    ];
    for (k, v) in rows {
        writeln!(out, "{k:<12} {v}").unwrap();
    }
    out
}

pub fn chern_bounds(rows: &[ChernBoundRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{:<16} {:>12} bound", "alpha", "c_alpha").unwrap();
    for row in rows {
        let b = row.bound.map_or("-".to_string(), |b| b.to_string());
        writeln!(out, "{:<16} {:>12} {b}", row.alpha.to_string(), row.c_alpha).unwrap();
    }
    out
}

pub fn witnesses(ws: &[ActionWitness]) -> String {
    let mut out = String::new();
    writeln!(out, "{:<10} {:<12} variety", "fixed_dim", "provenance").unwrap();
    for w in ws {
        writeln!(out, "{:<10} {:<12} {}", w.fixed_dim.to_string(), w.provenance.label(), w.variety).unwrap();
    }
    out
}
