//! JSON forms of games, solutions and core reports.
//!
//! Rationals are written as `"p/q"` strings. On input a value may be a
//! string (`"p/q"`, `"p"`, `"0.25"`) or a JSON number.
//!
//! A game file lists every element:
//!
//! ```json
//! {"lattice": "partitions", "n": 3,
//!  "values": {"1|2|3": "0", "1,2|3": "1", "1,3|2": "0", "1|2,3": "0", "1,2,3": "1"}}
//! ```
//!
//! or, for a symmetric game, one worth per class under `"classValues"`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::coresep::{core_system, CoreOutcome};
use crate::error::{Error, Result};
use crate::games::{symmetric_expand, SymmetricGame};
use crate::lattice::{ElementClass, Lattice, LatticeKind};
use crate::limits::Limits;
use crate::rational::{parse_rational, render, Rational};
use crate::solutions::Solution;
use crate::transform::LatticeGame;

pub fn rational_from_json(value: &Value, context: &str) -> Result<Rational> {
    match value {
        Value::String(s) => parse_rational(s).map_err(|e| Error::parse(format!("{context}: {e}"))),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| Error::parse(format!("{context}: {e}"))),
        other => Err(Error::parse(format!("{context}: expected a rational, found {other}"))),
    }
}

pub fn rational_to_json(value: &Rational) -> Value {
    Value::String(render(value))
}

fn object<'a>(value: &'a Value, context: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::parse(format!("{context}: expected a JSON object")))
}

fn header(doc: &Map<String, Value>) -> Result<(LatticeKind, usize)> {
    let kind: LatticeKind = doc
        .get("lattice")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("missing string field \"lattice\""))?
        .parse()?;
    let n = doc
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("missing integer field \"n\""))? as usize;
    Ok((kind, n))
}

/// Parses a game document. Every element must be given exactly once.
pub fn game_from_json(doc: &Value, limits: &Limits) -> Result<LatticeGame> {
    let doc = object(doc, "game")?;
    let (kind, n) = header(doc)?;
    let lattice = Lattice::new(kind, n, limits)?;
    match (doc.get("values"), doc.get("classValues")) {
        (Some(values), None) => game_values(&lattice, object(values, "values")?),
        (None, Some(classes)) => {
            let g = symmetric_from_map(kind, n, object(classes, "classValues")?)?;
            symmetric_expand(&g, &lattice)
        }
        (Some(_), Some(_)) => Err(Error::parse("give either \"values\" or \"classValues\", not both")),
        (None, None) => Err(Error::parse("missing field \"values\"")),
    }
}

fn game_values(lattice: &Arc<Lattice>, values: &Map<String, Value>) -> Result<LatticeGame> {
    let mut slots: Vec<Option<Rational>> = vec![None; lattice.len()];
    for (key, raw) in values {
        let x = lattice.parse_element(key)?;
        if slots[x].is_some() {
            return Err(Error::parse(format!("element {} given twice (as {key:?})", lattice.element(x))));
        }
        slots[x] = Some(rational_from_json(raw, key)?);
    }
    let values = slots
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| Error::Totality(lattice.element(x).to_string())))
        .collect::<Result<Vec<_>>>()?;
    LatticeGame::new(lattice.clone(), values)
}

fn symmetric_from_map(kind: LatticeKind, n: usize, classes: &Map<String, Value>) -> Result<SymmetricGame> {
    let mut class_values = BTreeMap::new();
    for (key, raw) in classes {
        let class = ElementClass::parse(kind, n, key)?;
        if class_values.insert(class, rational_from_json(raw, key)?).is_some() {
            return Err(Error::parse(format!("class {key:?} given twice")));
        }
    }
    Ok(SymmetricGame::new(kind, n, class_values))
}

/// Parses `{"lattice", "n", "classValues"}` without expanding it.
pub fn symmetric_from_json(doc: &Value) -> Result<SymmetricGame> {
    let doc = object(doc, "symmetric game")?;
    let (kind, n) = header(doc)?;
    let classes = doc
        .get("classValues")
        .ok_or_else(|| Error::parse("missing field \"classValues\""))?;
    symmetric_from_map(kind, n, object(classes, "classValues")?)
}

pub fn symmetric_to_json(g: &SymmetricGame) -> Value {
    let classes: Map<String, Value> = g
        .class_values
        .iter()
        .map(|(c, v)| (c.to_string(), rational_to_json(v)))
        .collect();
    json!({"lattice": g.kind.name(), "n": g.n, "classValues": classes})
}

pub fn game_to_json(f: &LatticeGame) -> Value {
    let l = f.lattice();
    let values: Map<String, Value> = (0..l.len())
        .map(|x| (l.element(x).to_string(), rational_to_json(f.value(x))))
        .collect();
    json!({"lattice": l.kind().name(), "n": l.n(), "values": values})
}

pub fn read_game(text: &str, limits: &Limits) -> Result<LatticeGame> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid JSON: {e}")))?;
    game_from_json(&doc, limits)
}

pub fn shares_to_json(sol: &Solution) -> Value {
    let shares: Map<String, Value> = sol
        .entries()
        .into_iter()
        .map(|(k, v)| (k, rational_to_json(v)))
        .collect();
    Value::Object(shares)
}

/// Solution report. `efficiencyCheck` compares the share sum with
/// `f(top) − f(bottom)`.
pub fn solution_to_json(sol: &Solution, f: &LatticeGame) -> Value {
    let l = sol.lattice();
    let target = f.top_value() - f.bottom_value();
    let sum = sol.total();
    json!({
        "lattice": l.kind().name(),
        "n": l.n(),
        "shares": shares_to_json(sol),
        "bottomShift": rational_to_json(sol.bottom_shift()),
        "efficiencyCheck": {
            "sum": rational_to_json(&sum),
            "target": rational_to_json(&target),
            "holds": sum == target,
        },
    })
}

/// Reads shares keyed by atom; every atom must appear once.
pub fn solution_from_json(doc: &Value, lattice: &Arc<Lattice>) -> Result<Solution> {
    let doc = object(doc, "solution")?;
    let shares = object(
        doc.get("shares").ok_or_else(|| Error::parse("missing field \"shares\""))?,
        "shares",
    )?;
    let mut slots: Vec<Option<Rational>> = vec![None; lattice.num_atoms()];
    let mut seen = HashSet::new();
    for (key, raw) in shares {
        let a = lattice.parse_atom(key)?;
        if !seen.insert(a) {
            return Err(Error::parse(format!("atom {key:?} given twice")));
        }
        slots[a] = Some(rational_from_json(raw, key)?);
    }
    let values = slots
        .into_iter()
        .enumerate()
        .map(|(a, v)| v.ok_or_else(|| Error::Totality(lattice.atom_key(a))))
        .collect::<Result<Vec<_>>>()?;
    Solution::new(lattice.clone(), values)
}

/// `{status, witness|certificate, violated}`. `violated` lists the
/// constraints the optional candidate breaks.
pub fn core_report(f: &LatticeGame, outcome: &CoreOutcome, candidate: Option<&Solution>) -> Value {
    let l = f.lattice();
    let mut doc = Map::new();
    match outcome {
        CoreOutcome::Nonempty(w) => {
            doc.insert("status".into(), json!("nonempty"));
            doc.insert("witness".into(), shares_to_json(w));
        }
        CoreOutcome::Empty(cert) => {
            let multipliers: Map<String, Value> = cert
                .multipliers
                .iter()
                .map(|(x, y)| (l.element(*x).to_string(), rational_to_json(y)))
                .collect();
            doc.insert("status".into(), json!("empty"));
            doc.insert("certificate".into(), Value::Object(multipliers));
        }
    }
    let violated: Vec<Value> = candidate
        .map(|sol| {
            core_system(f)
                .violations(sol.shares())
                .into_iter()
                .map(|x| json!(l.element(x).to_string()))
                .collect()
        })
        .unwrap_or_default();
    doc.insert("violated".into(), Value::Array(violated));
    Value::Object(doc)
}
