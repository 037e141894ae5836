//! The `verify` pipeline: every recogniser and invariant applicable to a
//! complex, assembled into one JSON report with internal consistency checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use walkup::classify::{
    check_lower_bounds_strict, dual_graph, in_walkup_class, is_closed_weak_pseudomanifold, is_pseudomanifold,
    is_stacked_ball, is_stacked_sphere, is_weak_pseudomanifold, Manifoldness, WalkupClass,
};
use walkup::homology::{
    betti_numbers, certify_tight, identify_type, is_orientable, is_tight_bruteforce, walkup_euler_characteristic,
    BettiVector, Field, TIGHT_BRUTEFORCE_MAX_VERTICES,
};
use walkup::symmetry::{automorphism_group, verify_aut_equality};
use walkup::{Complex, Error, GroupDescription, Vertex};

use crate::input::Loaded;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FieldChoice {
    Gf2,
    Q,
    Both,
}

impl FieldChoice {
    pub fn fields(self) -> Vec<Field> {
        match self {
            FieldChoice::Gf2 => vec![Field::Gf2],
            FieldChoice::Q => vec![Field::Q],
            FieldChoice::Both => vec![Field::Gf2, Field::Q],
        }
    }
}

/// A stage that was not run, and why.
#[derive(Clone, Debug, Serialize)]
pub struct Skip {
    pub stage: String,
    pub kind: &'static str,
    pub reason: String,
}

/// A named internal consistency check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Default)]
pub struct Pipeline {
    sections: BTreeMap<String, Value>,
    skips: Vec<Skip>,
    checks: Vec<Check>,
    timing: BTreeMap<String, f64>,
}

impl Pipeline {
    fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.timing.entry(stage.to_string()).or_default() += start.elapsed().as_secs_f64() * 1000.0;
        out
    }

    fn set(&mut self, key: &str, value: impl Serialize) {
        self.sections.insert(key.to_string(), to_value(&value));
    }

    fn skip(&mut self, stage: &str, kind: &'static str, reason: impl Into<String>) {
        self.skips.push(Skip { stage: stage.into(), kind, reason: reason.into() });
    }

    fn skip_error(&mut self, stage: &str, e: &Error) {
        let kind = if matches!(e, Error::Capacity(_)) { "capacity" } else { "not_applicable" };
        self.skip(stage, kind, e.to_string());
    }

    fn check(&mut self, name: &'static str, passed: bool) {
        self.checks.push(Check { name, passed });
    }

    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn has_capacity_skip(&self) -> bool {
        self.skips.iter().any(|s| s.kind == "capacity")
    }

    pub fn into_json(mut self, identity: &crate::input::Identity) -> Value {
        let consistent = self.consistent();
        self.sections.insert("schema".into(), json!(1));
        self.sections.insert("input".into(), to_value(identity));
        self.sections.insert("skips".into(), to_value(&self.skips));
        self.sections.insert("checks".into(), to_value(&self.checks));
        self.sections.insert("consistent".into(), json!(consistent));
        self.sections.insert("timing".into(), to_value(&self.timing));
        Value::Object(self.sections.into_iter().collect())
    }
}

pub fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialise to JSON")
}

/// A permutation in cycle notation over the original vertex labels.
pub fn cycles(images: &[Vertex], labels: &[Vertex]) -> String {
    let mut seen = vec![false; images.len()];
    let mut out = String::new();
    for start in 0..images.len() {
        if seen[start] || images[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(labels[x].to_string());
            x = images[x] as usize;
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Automorphism group of any complex, relabelled to dense ids internally and
/// reported in the original labels.
pub fn aut_json(k: &Complex) -> Result<(GroupDescription, Value), Error> {
    let (dense, labels) = k.to_dense();
    let g = automorphism_group(&dense)?;
    let order = u64::try_from(g.order).map(|o| json!(o)).unwrap_or_else(|_| json!(g.order.to_string()));
    let gens: Vec<String> = g.generators.iter().map(|p| cycles(p.images(), &labels)).collect();
    let value = json!({
        "order": order,
        "structure": g.structure,
        "generators": gens,
    });
    Ok((g, value))
}

fn betti_json(b: &BettiVector) -> Value {
    json!(b.betti)
}

pub fn verify(loaded: &Loaded, fields: FieldChoice) -> Pipeline {
    let k = &loaded.complex;
    let mut p = Pipeline::default();
    let d = k.dim();

    let fv = p.timed("f_vector", || k.face_vector().expect("nonempty complex"));
    p.set("dim", d);
    p.set("num_facets", k.num_facets());
    p.set("f_vector", &fv.counts);
    p.set("chi", fv.chi);

    let (dual, weak, pm, closed) =
        p.timed("pseudomanifold", || (dual_graph(k), is_weak_pseudomanifold(k), is_pseudomanifold(k), is_closed_weak_pseudomanifold(k)));
    p.set(
        "pseudomanifold",
        json!({
            "weak_pseudomanifold": weak,
            "pseudomanifold": pm,
            "closed": closed,
            "dual_graph_connected": dual.is_connected(),
            "dual_graph_tree": dual.is_tree(),
            "dual_graph_edges": dual.edges.len(),
        }),
    );

    let ball = p.timed("stacked", || is_stacked_ball(k));
    let sphere = if closed && d >= 1 {
        match p.timed("stacked", || is_stacked_sphere(k)) {
            Ok(s) => Some(s),
            Err(e) => {
                p.skip_error("stacked_sphere", &e);
                None
            }
        }
    } else {
        p.skip("stacked_sphere", "not_applicable", "input is not a closed weak pseudomanifold of positive dimension");
        None
    };
    p.set("stacked", json!({ "ball": ball, "sphere": sphere }));

    let (in_k, in_kbar, in_kstar, neighborly) = p.timed("walkup", || {
        (
            in_walkup_class(k, WalkupClass::K),
            in_walkup_class(k, WalkupClass::Kbar),
            in_walkup_class(k, WalkupClass::Kstar),
            k.is_l_neighborly(2),
        )
    });
    p.set("walkup", json!({ "K": in_k, "Kbar": in_kbar, "Kstar": in_kstar }));
    p.set("neighborly", neighborly);
    if sphere == Some(true) {
        p.check("stacked_sphere_in_K", in_k);
    }

    if weak && !closed && d >= 1 {
        match p.timed("boundary", || k.boundary()) {
            Ok(b) => {
                let bfv = b.face_vector().expect("nonempty boundary");
                let mut section = json!({
                    "f_vector": bfv.counts,
                    "chi": bfv.chi,
                    "walkup": {
                        "K": in_walkup_class(&b, WalkupClass::K),
                        "Kstar": in_walkup_class(&b, WalkupClass::Kstar),
                    },
                });
                if in_kbar && d >= 2 {
                    let same = k.skeleton(d - 2).ok() == b.skeleton(d - 2).ok();
                    p.check("kbar_skeleton_matches_boundary", same);
                    section["skeleton_matches"] = json!(same);
                }
                if in_kbar && d >= 5 {
                    match p.timed("aut_equality", || verify_aut_equality(k)) {
                        Ok(eq) => section["aut_equality"] = json!(eq),
                        Err(e) => p.skip_error("aut_equality", &e),
                    }
                }
                p.set("boundary", section);
            }
            Err(e) => p.skip_error("boundary", &e),
        }
    }

    let mut betti: BTreeMap<String, Value> = BTreeMap::new();
    let mut gf2 = None;
    let mut q = None;
    for field in fields.fields() {
        let b = p.timed(&format!("betti_{}", field.to_string().to_lowercase()), || betti_numbers(k, field));
        match b {
            Ok(b) => {
                betti.insert(field.to_string().to_lowercase(), betti_json(&b));
                match field {
                    Field::Gf2 => gf2 = Some(b),
                    Field::Q => q = Some(b),
                }
            }
            Err(e) => p.skip_error("betti", &e),
        }
    }
    p.set("betti", &betti);
    if let Some(b) = &gf2 {
        p.check("euler_characteristic_gf2", b.euler_characteristic() == fv.chi);
    }
    if let Some(b) = &q {
        p.check("euler_characteristic_q", b.euler_characteristic() == fv.chi);
    }
    let beta1 = match &gf2 {
        Some(b) => b.get(1),
        None => p.timed("betti_gf2", || betti_numbers(k, Field::Gf2).map(|b| b.get(1)).unwrap_or(0)),
    };
    let manifold_like = pm && closed && in_k;
    if manifold_like {
        p.check("walkup_euler_relation", fv.chi == walkup_euler_characteristic(d, beta1));
        if let Some(b) = &gf2 {
            p.check("poincare_duality_gf2", (0..=d).all(|j| b.get(j) == b.get(d - j)));
        }
    }

    let orientable = if pm && closed {
        match p.timed("orientability", || is_orientable(k)) {
            Ok(o) => {
                if let Some(b) = &q {
                    p.check("orientability_matches_top_betti_q", o == (b.get(d) == 1));
                }
                Some(o)
            }
            Err(e) => {
                p.skip_error("orientability", &e);
                None
            }
        }
    } else {
        p.skip("orientability", "not_applicable", "input is not a closed pseudomanifold");
        None
    };
    p.set("orientable", orientable);

    match p.timed("aut", || aut_json(k)) {
        Ok((_, v)) => p.set("aut", v),
        Err(e) => p.skip_error("aut", &e),
    }

    if pm && closed && d >= 3 {
        match p.timed("bounds", || check_lower_bounds_strict(k, beta1 as u64)) {
            Ok(r) => {
                if r.manifoldness != Manifoldness::Unverified {
                    p.check("lower_bounds_hold", r.all_hold());
                }
                p.set("bounds", &r);
            }
            Err(e) => p.skip_error("bounds", &e),
        }
    } else {
        p.skip("bounds", "not_applicable", "needs a closed pseudomanifold of dimension at least 3");
    }

    match p.timed("type", || identify_type(k)) {
        Ok(t) => {
            p.check("type_euler_relation", t.euler_relation_holds);
            p.set("type", &t);
        }
        Err(e) => p.skip_error("type", &e),
    }

    let cert = p.timed("tight_certificate", || certify_tight(k));
    match cert {
        Ok(c) => {
            p.set("tight_certificate", &c);
            if k.num_vertices() <= TIGHT_BRUTEFORCE_MAX_VERTICES {
                let mut brute = BTreeMap::new();
                for field in fields.fields() {
                    let r = p.timed("tight_bruteforce", || is_tight_bruteforce(k, field));
                    match r {
                        Ok(t) => {
                            if c.tight && c.field == Some(field) {
                                p.check("tight_certificate_matches_bruteforce", t);
                            }
                            brute.insert(field.to_string().to_lowercase(), t);
                        }
                        Err(e) => p.skip_error("tight_bruteforce", &e),
                    }
                }
                p.set("tight_bruteforce", &brute);
            } else {
                p.skip(
                    "tight_bruteforce",
                    "capacity",
                    format!(
                        "exhaustive tightness is limited to {TIGHT_BRUTEFORCE_MAX_VERTICES} vertices (got {}); see tight_certificate",
                        k.num_vertices()
                    ),
                );
            }
        }
        Err(e) => p.skip_error("tight_certificate", &e),
    }
    p
}
