//! Command-line front end for the `walkup` library.
//!
//! Exit codes: 0 success, 1 verification mismatch or failed hypotheses,
//! 2 input error, 3 capacity skip when `--strict` is given.

pub mod input;
pub mod report;
pub mod table1;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use walkup::catalog::{self, Entry};
use walkup::format::{write_facets, write_orbit_presentation, write_tree_family};
use walkup::homology::{betti_numbers, is_orientable};
use walkup::{complex_from_tree_family, tree_family_from_complex, verify_hypotheses, Error};

use crate::report::FieldChoice;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Capacity(String),
}

impl CliError {
    pub fn from_input(e: Error) -> Self {
        match e {
            Error::Capacity(m) => CliError::Capacity(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "walkup", version, about = "Verify neighborly members of Walkup's classes and their boundaries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Treat capacity skips as failures (exit code 3).
    #[arg(long, global = true)]
    pub strict: bool,

    /// Seed for random generator inputs such as `random_stacked_sphere(4,10)`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Emit plain text.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the full verification pipeline on a complex.
    Verify {
        /// Catalog name, generator call, facet file, `.orbit` file, or `-`.
        input: String,
        #[arg(long, value_enum, default_value = "both")]
        field: FieldChoice,
    },
    /// Recompute the summary table of the four boundary 4-manifolds.
    Table1 {
        /// JSON object of per-row overrides for the expected values.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Build a complex from a tree family file.
    Construct {
        /// Tree family file, `-`, or `A5_41_tree_family`.
        family: String,
    },
    /// Write the tree family of a neighborly member of K̄(d).
    Decompose { input: String },
    /// Write a catalog entry as a facet file (or tree family / orbit file).
    Export {
        name: String,
        /// Write the orbit presentation instead of the expanded facets.
        #[arg(long)]
        orbit: bool,
    },
    /// Betti numbers and orientability.
    Homology {
        input: String,
        #[arg(long, value_enum, default_value = "both")]
        field: FieldChoice,
    },
    /// Automorphism group.
    Aut { input: String },
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serialises");
    s.push('\n');
    s
}

/// `key: value` lines for every leaf of a JSON value, in key order.
pub fn flatten(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

impl Cli {
    fn render(&self, v: &Value, default_json: bool) -> String {
        if self.json || (default_json && !self.text) {
            json_text(v)
        } else {
            flatten(v)
        }
    }

    fn capacity_code(&self) -> i32 {
        if self.strict {
            EXIT_CAPACITY
        } else {
            EXIT_OK
        }
    }

    fn execute(&self) -> Result<Output, CliError> {
        match &self.command {
            Command::Verify { input, field } => {
                let loaded = input::load_complex(input, self.seed)?;
                let p = report::verify(&loaded, *field);
                let code = if !p.consistent() {
                    EXIT_MISMATCH
                } else if p.has_capacity_skip() {
                    self.capacity_code()
                } else {
                    EXIT_OK
                };
                Ok(Output { text: self.render(&p.into_json(&loaded.identity), true), code })
            }
            Command::Table1 { expected } => {
                let start = Instant::now();
                let mut records = table1::expected_records();
                if let Some(path) = expected {
                    let text = fs::read_to_string(path)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    let v: Value = serde_json::from_str(&text)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    table1::apply_overrides(&mut records, &v)?;
                }
                let t = table1::compute(&records)?;
                let code = if t.matches() { EXIT_OK } else { EXIT_MISMATCH };
                let text = if self.json {
                    json_text(&table1::render_json(&t, start.elapsed().as_secs_f64() * 1000.0))
                } else {
                    table1::render_text(&t)
                };
                Ok(Output { text, code })
            }
            Command::Construct { family } => {
                let f = input::load_tree_family(family)?;
                let report = verify_hypotheses(&f);
                if !report.passed() {
                    let v = json!({ "schema": 1, "passed": false, "hypotheses": report });
                    let text = if self.json { json_text(&v) } else { report.to_string() };
                    return Ok(Output { text, code: EXIT_MISMATCH });
                }
                match complex_from_tree_family(&f) {
                    Ok(m) => Ok(Output::ok(write_facets(&m))),
                    Err(e) => Ok(Output { text: format!("construction refused: {e}\n"), code: EXIT_MISMATCH }),
                }
            }
            Command::Decompose { input } => {
                let loaded = input::load_complex(input, self.seed)?;
                let f = tree_family_from_complex(&loaded.complex).map_err(CliError::from_input)?;
                Ok(Output::ok(write_tree_family(&f)))
            }
            Command::Export { name, orbit } => {
                if *orbit {
                    let p = catalog::orbit_presentation(name).map_err(CliError::from_input)?;
                    return Ok(Output::ok(write_orbit_presentation(&p)));
                }
                if !catalog::is_known(name) {
                    return Err(CliError::Input(Error::UnknownName(name.clone()).to_string()));
                }
                match catalog::entry(name).map_err(CliError::from_input)? {
                    Entry::Complex(k) => Ok(Output::ok(write_facets(&k))),
                    Entry::TreeFamily(f) => Ok(Output::ok(write_tree_family(&f))),
                }
            }
            Command::Homology { input, field } => {
                let loaded = input::load_complex(input, self.seed)?;
                let k = &loaded.complex;
                let mut betti = serde_json::Map::new();
                for f in field.fields() {
                    let b = betti_numbers(k, f).map_err(CliError::from_input)?;
                    betti.insert(f.to_string().to_lowercase(), json!(b.betti));
                }
                let orientable = is_orientable(k).ok();
                let v = json!({
                    "schema": 1,
                    "input": loaded.identity,
                    "chi": k.face_vector().map_err(CliError::from_input)?.chi,
                    "betti": betti,
                    "orientable": orientable,
                });
                Ok(Output::ok(self.render(&v, true)))
            }
            Command::Aut { input } => {
                let loaded = input::load_complex(input, self.seed)?;
                let start = Instant::now();
                match report::aut_json(&loaded.complex) {
                    Ok((_, aut)) => {
                        let v = json!({
                            "schema": 1,
                            "input": loaded.identity,
                            "aut": aut,
                            "timing": { "aut": start.elapsed().as_secs_f64() * 1000.0 },
                        });
                        Ok(Output::ok(self.render(&v, true)))
                    }
                    Err(Error::Capacity(m)) => {
                        let v = json!({
                            "schema": 1,
                            "input": loaded.identity,
                            "skips": [{ "stage": "aut", "kind": "capacity", "reason": m }],
                        });
                        Ok(Output { text: self.render(&v, true), code: self.capacity_code() })
                    }
                    Err(e) => Err(CliError::from_input(e)),
                }
            }
        }
    }

    /// Runs the command, writing output to `stdout` (or `--out`) and
    /// diagnostics to `stderr`; returns the exit code.
    pub fn run(&self, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
        let result = self.execute();
        let output = match result {
            Ok(o) => o,
            Err(CliError::Input(m)) => {
                let _ = writeln!(stderr, "error: {m}");
                return EXIT_INPUT;
            }
            Err(CliError::Capacity(m)) => {
                let _ = writeln!(stderr, "capacity: {m}");
                return self.capacity_code();
            }
        };
        let written = match &self.out {
            Some(path) => fs::write(path, &output.text).map_err(|e| format!("{}: {e}", path.display())),
            None => stdout.write_all(output.text.as_bytes()).map_err(|e| e.to_string()),
        };
        if let Err(e) = written {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT;
        }
        output.code
    }
}
