//! Recomputes the summary table of the four boundary 4-manifolds and compares
//! every cell with the catalog's recorded values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use walkup::catalog::{self, Expected, MAIN_PAIRS};
use walkup::homology::{betti_numbers, bundle_sum_name, is_orientable, Field};
use walkup::symmetry::automorphism_group;

use crate::CliError;

pub const COLUMNS: [&str; 6] = ["f0", "chi", "beta1", "aut", "f_vector", "type"];

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub row: String,
    pub column: &'static str,
    pub expected: String,
    pub actual: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub cells: Vec<Cell>,
    pub orientable: BTreeMap<String, bool>,
}

impl Table {
    pub fn matches(&self) -> bool {
        self.cells.iter().all(|c| c.matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.matches)
    }
}

fn f_vector_text(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), |v| v.to_string())
}

fn expected_cells(e: &Expected) -> [String; 6] {
    let aut = match (&e.aut_structure, e.aut_order) {
        (Some(s), _) => s.clone(),
        (None, Some(o)) => format!("order {o}"),
        (None, None) => "-".into(),
    };
    [
        opt(&e.f_vector.as_ref().map(|f| f[0])),
        opt(&e.chi),
        opt(&e.beta1),
        aut,
        e.f_vector.as_deref().map_or_else(|| "-".into(), f_vector_text),
        opt(&e.homeomorphism_type),
    ]
}

/// Applies a JSON object of partial records keyed by entry name.
pub fn apply_overrides(records: &mut [Expected], overrides: &Value) -> Result<(), CliError> {
    let Value::Object(map) = overrides else {
        return Err(CliError::Input("expected-value override must be a JSON object".into()));
    };
    for (name, patch) in map {
        let rec = records
            .iter_mut()
            .find(|r| &r.name == name)
            .ok_or_else(|| CliError::Input(format!("override for unknown row `{name}`")))?;
        let Value::Object(fields) = patch else {
            return Err(CliError::Input(format!("override for `{name}` must be an object")));
        };
        let mut merged = serde_json::to_value(&*rec).expect("record serialises");
        for (k, v) in fields {
            if merged.get(k).is_none() {
                return Err(CliError::Input(format!("unknown field `{k}` in override for `{name}`")));
            }
            merged[k] = v.clone();
        }
        *rec = serde_json::from_value(merged).map_err(|e| CliError::Input(format!("override for `{name}`: {e}")))?;
    }
    Ok(())
}

pub fn expected_records() -> Vec<Expected> {
    MAIN_PAIRS.iter().map(|&(_, m)| catalog::expected(m).expect("catalog row")).collect()
}

pub fn compute(records: &[Expected]) -> Result<Table, CliError> {
    let mut cells = Vec::new();
    let mut orientable = BTreeMap::new();
    for e in records {
        let m = catalog::get(&e.name).map_err(CliError::from_input)?;
        let fv = m.face_vector().map_err(CliError::from_input)?;
        let beta1 = betti_numbers(&m, Field::Gf2).map_err(CliError::from_input)?.get(1);
        let o = is_orientable(&m).map_err(CliError::from_input)?;
        let g = automorphism_group(&m).map_err(CliError::from_input)?;
        orientable.insert(e.name.clone(), o);
        let actual = [
            fv.f(0).to_string(),
            fv.chi.to_string(),
            beta1.to_string(),
            g.structure.clone().unwrap_or_else(|| format!("order {}", g.order)),
            f_vector_text(&fv.counts),
            bundle_sum_name(m.dim(), beta1, o),
        ];
        for ((column, want), got) in COLUMNS.iter().zip(expected_cells(e)).zip(actual) {
            cells.push(Cell { row: e.name.clone(), matches: want == got, column, expected: want, actual: got });
        }
    }
    Ok(Table { cells, orientable })
}

pub fn render_text(t: &Table) -> String {
    let headers = ["M", "f0", "chi", "beta1", "Aut", "f", "|M|"];
    let mut rows: Vec<Vec<String>> = vec![headers.iter().map(|s| s.to_string()).collect()];
    for chunk in t.cells.chunks(COLUMNS.len()) {
        let mut row = vec![chunk[0].row.clone()];
        row.extend(chunk.iter().map(|c| if c.matches { c.actual.clone() } else { format!("{} (!)", c.actual) }));
        rows.push(row);
    }
    let widths: Vec<usize> =
        (0..headers.len()).map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &rows {
        let padded: Vec<String> =
            row.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).expect("writing to a string");
    }
    for c in t.mismatches() {
        writeln!(out, "MISMATCH {} {}: expected {}, got {}", c.row, c.column, c.expected, c.actual)
            .expect("writing to a string");
    }
    let total = t.cells.len();
    let ok = t.cells.iter().filter(|c| c.matches).count();
    writeln!(out, "{ok}/{total} cells match").expect("writing to a string");
    out
}

pub fn render_json(t: &Table, timing_ms: f64) -> Value {
    json!({
        "schema": 1,
        "cells": t.cells,
        "orientable": t.orientable,
        "matches": t.matches(),
        "timing": { "total": timing_ms },
    })
}
