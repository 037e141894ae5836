//! Resolving command-line inputs to complexes and tree families.
//!
//! An input is a catalog name, a random generator call such as
//! `random_stacked_sphere(4,10)`, `-` for standard input, or a file path.
//! Files ending in `.orbit` hold orbit presentations; other files hold facets.

use std::fs;
use std::io::Read;

use serde::Serialize;
use sha2::{Digest, Sha256};
use walkup::catalog::{self, Entry};
use walkup::format::{parse_facets, parse_orbit_presentation, parse_tree_family, write_facets};
use walkup::generate::{random_stacked_ball, random_stacked_sphere, random_tree_dual_complex, rng};
use walkup::{expand_orbit, Complex, TreeFamily};

use crate::CliError;

/// Where an input came from, with the SHA-256 of its canonical facet text.
#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub source: &'static str,
    pub name: String,
    pub sha256: String,
}

pub struct Loaded {
    pub complex: Complex,
    pub identity: Identity,
}

pub fn content_hash(k: &Complex) -> String {
    hex::encode(Sha256::digest(write_facets(k).as_bytes()))
}

fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// Parses `name(a,b)` into its integer arguments.
fn call_args(arg: &str, name: &str) -> Option<Vec<usize>> {
    let inner = arg.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|a| a.trim().parse().ok()).collect()
}

const GENERATORS: [&str; 3] = ["random_stacked_ball", "random_stacked_sphere", "random_tree_dual"];

fn generated(arg: &str, seed: u64) -> Option<Result<Complex, CliError>> {
    for name in GENERATORS {
        if let Some(args) = call_args(arg, name) {
            let [d, m] = args[..] else {
                return Some(Err(CliError::Input(format!("{name} takes two arguments (d, facets)"))));
            };
            let mut r = rng(seed);
            let result = match name {
                "random_stacked_ball" => random_stacked_ball(d, m, &mut r),
                "random_stacked_sphere" => random_stacked_sphere(d, m, &mut r),
                _ => random_tree_dual_complex(d, m, &mut r),
            };
            return Some(result.map_err(CliError::from_input));
        }
    }
    None
}

pub fn load_complex(arg: &str, seed: u64) -> Result<Loaded, CliError> {
    let (complex, source, name) = if catalog::is_known(arg) {
        match catalog::entry(arg).map_err(CliError::from_input)? {
            Entry::Complex(c) => (c, "catalog", arg.to_string()),
            Entry::TreeFamily(_) => return Err(CliError::Input(format!("`{arg}` is a tree family, not a complex"))),
        }
    } else if let Some(result) = generated(arg, seed) {
        (result?, "generator", format!("{arg} seed={seed}"))
    } else {
        let text = read_source(arg)?;
        let complex = if arg.ends_with(".orbit") {
            expand_orbit(&parse_orbit_presentation(&text).map_err(CliError::from_input)?).map_err(CliError::from_input)?
        } else {
            parse_facets(&text).map_err(CliError::from_input)?
        };
        (complex, if arg == "-" { "stdin" } else { "file" }, arg.to_string())
    };
    let identity = Identity { source, name, sha256: content_hash(&complex) };
    Ok(Loaded { complex, identity })
}

pub fn load_tree_family(arg: &str) -> Result<TreeFamily, CliError> {
    if catalog::is_known(arg) {
        return match catalog::entry(arg).map_err(CliError::from_input)? {
            Entry::TreeFamily(f) => Ok(f),
            Entry::Complex(_) => Err(CliError::Input(format!("`{arg}` is a complex, not a tree family"))),
        };
    }
    parse_tree_family(&read_source(arg)?).map_err(CliError::from_input)
}
