//! Traffic traces, cluster files, edge weights and graphs.
//!
//! JSON trace:
//!
//! ```json
//! {"n": 3, "periods": [{"period": "t1", "cluster": "1,2|3", "traffic": {"1,2": "4", "1,3": 1}}]}
//! ```
//!
//! CSV trace, one row per edge and period (rows for the same edge add up):
//!
//! ```text
//! period,i,j,volume
//! t1,1,2,4
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use lattice_games::io::rational_from_json;
use lattice_games::rational::parse_rational;
use lattice_games::solutions::EdgeWeights;
use lattice_games::{Partition, Rational};
use num_traits::{Signed, Zero};
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Traffic of one period.
#[derive(Debug, Clone, PartialEq)]
pub struct Period {
    pub label: String,
    /// Clustering in force during the period, if any.
    pub cluster: Option<Partition>,
    /// Volume per edge `(i, j)` with `i < j`.
    pub traffic: BTreeMap<(usize, usize), Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrafficTrace {
    pub n: usize,
    pub periods: Vec<Period>,
}

fn edge(i: usize, j: usize, n: Option<usize>) -> CliResult<(usize, usize)> {
    if i == 0 || j == 0 || i == j || n.is_some_and(|n| i > n || j > n) {
        let range = n.map_or(String::new(), |n| format!(" within 1..{n}"));
        return Err(CliError::input(format!("unknown edge {i},{j}: endpoints must be distinct nodes{range}")));
    }
    Ok((i.min(j), i.max(j)))
}

fn volume(v: Rational, i: usize, j: usize, period: &str) -> CliResult<Rational> {
    if v.is_negative() {
        return Err(CliError::input(format!("negative volume {v} on edge {i},{j} in period {period}")));
    }
    Ok(v)
}

pub fn parse_edge_key(key: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::input(format!("bad edge {key:?}, expected \"i,j\""));
    let (i, j) = key.split_once([',', '-']).ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    Ok((i, j))
}

#[derive(Deserialize)]
struct JsonTrace {
    n: Option<usize>,
    periods: Vec<JsonPeriod>,
}

#[derive(Deserialize)]
struct JsonPeriod {
    period: Option<Value>,
    cluster: Option<String>,
    #[serde(default)]
    traffic: serde_json::Map<String, Value>,
}

impl TrafficTrace {
    /// Parses a JSON trace. `players` overrides the `n` field; without
    /// either, `n` is the largest node mentioned.
    pub fn from_json(text: &str, players: Option<usize>) -> CliResult<Self> {
        let raw: JsonTrace = serde_json::from_str(text)?;
        let declared = players.or(raw.n);
        let mut periods = Vec::with_capacity(raw.periods.len());
        let mut clusters = Vec::new();
        for (t, p) in raw.periods.into_iter().enumerate() {
            let label = match p.period {
                None => (t + 1).to_string(),
                Some(Value::String(s)) => s,
                Some(other) => other.to_string(),
            };
            let mut traffic = BTreeMap::new();
            for (key, value) in &p.traffic {
                let (i, j) = parse_edge_key(key)?;
                let e = edge(i, j, declared)?;
                let v = volume(rational_from_json(value, key)?, i, j, &label)?;
                if traffic.insert(e, v).is_some() {
                    return Err(CliError::input(format!("edge {},{} listed twice in period {label}", e.0, e.1)));
                }
            }
            clusters.push(p.cluster);
            periods.push(Period { label, cluster: None, traffic });
        }
        let mut trace = TrafficTrace::with_periods(declared, periods)?;
        for (period, cluster) in trace.periods.iter_mut().zip(clusters) {
            if let Some(c) = cluster {
                period.cluster = Some(parse_cluster(trace.n, &c)?);
            }
        }
        Ok(trace)
    }

    /// Parses `period,i,j,volume` rows; periods keep first-seen order.
    pub fn from_csv(text: &str, players: Option<usize>) -> CliResult<Self> {
        #[derive(Deserialize)]
        struct Row {
            period: String,
            i: usize,
            j: usize,
            volume: String,
        }
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut periods: Vec<Period> = Vec::new();
        for row in reader.deserialize() {
            let row: Row = row?;
            let e = edge(row.i, row.j, players)?;
            let v = parse_rational(&row.volume).map_err(|e| CliError::input(e.to_string()))?;
            let v = volume(v, row.i, row.j, &row.period)?;
            let idx = match periods.iter().position(|p| p.label == row.period) {
                Some(idx) => idx,
                None => {
                    periods.push(Period {
                        label: row.period.clone(),
                        cluster: None,
                        traffic: BTreeMap::new(),
                    });
                    periods.len() - 1
                }
            };
            *periods[idx].traffic.entry(e).or_insert_with(Rational::zero) += v;
        }
        TrafficTrace::with_periods(players, periods)
    }

    fn with_periods(n: Option<usize>, periods: Vec<Period>) -> CliResult<Self> {
        let seen = periods.iter().flat_map(|p| p.traffic.keys()).map(|&(_, j)| j).max();
        let n = match (n, seen) {
            (Some(n), _) => n,
            (None, Some(m)) => m,
            (None, None) => return Err(CliError::input("trace names no nodes; give \"n\" or --players")),
        };
        Ok(TrafficTrace { n, periods })
    }

    /// Reads a trace, choosing CSV for `.csv` files and JSON otherwise.
    pub fn load(path: &Path, players: Option<usize>) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            TrafficTrace::from_csv(&text, players)
        } else {
            TrafficTrace::from_json(&text, players)
        }
    }

    /// Sets clusterings from a cluster file: a JSON string applies to every
    /// period, an object maps period labels to partitions.
    pub fn apply_cluster_file(&mut self, text: &str) -> CliResult<()> {
        let doc: Value = serde_json::from_str(text)?;
        match doc {
            Value::String(s) => {
                let p = parse_cluster(self.n, &s)?;
                for period in &mut self.periods {
                    period.cluster = Some(p.clone());
                }
            }
            Value::Object(map) => {
                for (label, value) in map {
                    let s = value
                        .as_str()
                        .ok_or_else(|| CliError::input(format!("cluster for period {label} must be a string")))?;
                    let period = self
                        .periods
                        .iter_mut()
                        .find(|p| p.label == label)
                        .ok_or_else(|| CliError::input(format!("cluster file names unknown period {label:?}")))?;
                    period.cluster = Some(parse_cluster(self.n, s)?);
                }
            }
            _ => return Err(CliError::input("cluster file must hold a partition string or an object")),
        }
        Ok(())
    }
}

pub fn parse_cluster(n: usize, text: &str) -> CliResult<Partition> {
    Partition::parse(n, text).map_err(|e| CliError::input(format!("cluster {text:?}: {e}")))
}

/// `{"1,2": ["2/3", "1/3"], ...}`: the first weight goes to the first node.
pub fn parse_weights(text: &str) -> CliResult<EdgeWeights> {
    let doc: serde_json::Map<String, Value> = serde_json::from_str(text)?;
    let mut weights = EdgeWeights::new();
    for (key, value) in &doc {
        let (i, j) = parse_edge_key(key)?;
        let pair = value
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| CliError::input(format!("weights for {key:?} must be a pair")))?;
        let wi = rational_from_json(&pair[0], key)?;
        let wj = rational_from_json(&pair[1], key)?;
        if wi.is_negative() || wj.is_negative() {
            return Err(CliError::input(format!("negative weight on edge {key}")));
        }
        weights.insert(i, j, wi, wj)?;
    }
    Ok(weights)
}

/// `"1-2,2-3"` or `"1,2;2,3"`; an empty string is the empty graph.
pub fn parse_graph(text: &str) -> CliResult<Vec<(usize, usize)>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let sep = if text.contains(';') { ';' } else { ',' };
    text.split(sep)
        .map(|p| {
            let (i, j) = p
                .split_once(['-', ','])
                .ok_or_else(|| CliError::input(format!("bad graph edge {p:?}, expected i-j")))?;
            let i: usize = i.trim().parse().map_err(|_| CliError::input(format!("bad graph edge {p:?}")))?;
            let j: usize = j.trim().parse().map_err(|_| CliError::input(format!("bad graph edge {p:?}")))?;
            Ok((i, j))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_games::rational::{int, ratio};

    #[test]
    fn json_trace() {
        let text = r#"{"periods": [{"traffic": {"1,2": "4", "3,1": 1, "2,3": "0"}}, {"period": 7, "cluster": "1,2|3", "traffic": {}}]}"#;
        let t = TrafficTrace::from_json(text, None).unwrap();
        assert_eq!(t.n, 3);
        assert_eq!(t.periods[0].label, "1");
        assert_eq!(t.periods[0].traffic[&(1, 3)], int(1));
        assert_eq!(t.periods[1].label, "7");
        assert_eq!(t.periods[1].cluster.as_ref().unwrap().to_string(), "1,2|3");
    }

    #[test]
    fn bad_traces() {
        for text in [
            r#"{"n": 3, "periods": [{"traffic": {"1,4": "1"}}]}"#,
            r#"{"periods": [{"traffic": {"2,2": "1"}}]}"#,
            r#"{"periods": [{"traffic": {"1,2": "-1"}}]}"#,
            r#"{"periods": [{"traffic": {"1,2": "1", "2,1": "1"}}]}"#,
            r#"{"periods": []}"#,
        ] {
            assert!(matches!(TrafficTrace::from_json(text, None), Err(CliError::Input(_))), "{text}");
        }
    }

    #[test]
    fn csv_trace_accumulates() {
        let text = "period,i,j,volume\nmorning,1,2,3\nmorning,2,1,1/2\nnight,3,4,1.5\n";
        let t = TrafficTrace::from_csv(text, None).unwrap();
        assert_eq!(t.n, 4);
        assert_eq!(t.periods.len(), 2);
        assert_eq!(t.periods[0].traffic[&(1, 2)], ratio(7, 2));
        assert_eq!(t.periods[1].traffic[&(3, 4)], ratio(3, 2));
        assert!(TrafficTrace::from_csv("period,i,j,volume\na,1,2,x\n", None).is_err());
    }

    #[test]
    fn cluster_files() {
        let mut t = TrafficTrace::from_csv("period,i,j,volume\na,1,2,1\nb,1,3,1\n", None).unwrap();
        t.apply_cluster_file(r#""1,2|3""#).unwrap();
        assert!(t.periods.iter().all(|p| p.cluster.is_some()));
        t.apply_cluster_file(r#"{"b": "1,3|2"}"#).unwrap();
        assert_eq!(t.periods[1].cluster.as_ref().unwrap().to_string(), "1,3|2");
        assert!(t.apply_cluster_file(r#"{"c": "1|2|3"}"#).is_err());
        assert!(t.apply_cluster_file(r#""1,2""#).is_err());
    }

    #[test]
    fn weights_and_graphs() {
        let w = parse_weights(r#"{"2,1": ["1/4", "3/4"]}"#).unwrap();
        assert_eq!(w.get(1, 2), Some(&(ratio(3, 4), ratio(1, 4))));
        assert!(parse_weights(r#"{"1,2": ["1/4", "1/4"]}"#).is_err());
        assert_eq!(parse_graph("1-2, 2-3").unwrap(), vec![(1, 2), (2, 3)]);
        assert_eq!(parse_graph("1,2;2,3").unwrap(), vec![(1, 2), (2, 3)]);
        assert!(parse_graph("").unwrap().is_empty());
        assert!(parse_graph("1-").is_err());
    }
}
