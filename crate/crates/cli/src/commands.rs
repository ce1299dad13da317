//! The `solve`, `core` and `netshare` commands as library functions.

use lattice_games::coresep::{core_feasible, CoreOutcome};
use lattice_games::games::{clustering_restrict, is_supermodular, is_totally_positive, Check};
use lattice_games::io::{core_report, rational_to_json, solution_to_json};
use lattice_games::rational::{approx, render};
use lattice_games::solutions::{
    graph_restrict, is_fixed_point, myerson, solve as run_solver, split_to_nodes, EdgeWeights, Solver,
};
use lattice_games::transform::{zeta_expand, MobiusCoefficients};
use lattice_games::{Element, Lattice, LatticeGame, LatticeKind, Limits, NodeShares, Rational, Solution};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::trace::{Period, TrafficTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// How edge shares are divided between endnodes.
#[derive(Debug, Clone, PartialEq)]
pub enum Split {
    Equal,
    Weights(EdgeWeights),
}

impl Split {
    fn weights(&self) -> Option<&EdgeWeights> {
        match self {
            Split::Equal => None,
            Split::Weights(w) => Some(w),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Split::Equal => "equal",
            Split::Weights(_) => "weights",
        }
    }
}

/// A command result in both output shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    header: Vec<&'static str>,
    rows: Vec<(Vec<String>, Option<Rational>)>,
}

impl Report {
    fn new(json: Value, header: Vec<&'static str>) -> Self {
        Report {
            json,
            header,
            rows: Vec::new(),
        }
    }

    fn row(&mut self, cells: Vec<String>, value: Option<&Rational>) {
        self.rows.push((cells, value.cloned()));
    }

    /// Pretty JSON, or CSV whose optional last column `approx_decimal` is a
    /// floating-point rendering of the exact value.
    pub fn render(&self, format: Format, decimal: bool) -> CliResult<String> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&self.json)?;
                out.push('\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut header = self.header.clone();
                if decimal {
                    header.push("approx_decimal");
                }
                w.write_record(&header)?;
                for (cells, value) in &self.rows {
                    let mut record = cells.clone();
                    if decimal {
                        record.push(value.as_ref().map(|v| approx(v).to_string()).unwrap_or_default());
                    }
                    w.write_record(&record)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::input(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::input(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub solver: Solver,
    pub normalize: bool,
    pub split: Option<Split>,
    /// Communication graph for the Myerson value.
    pub graph: Option<Vec<(usize, usize)>>,
}

impl SolveOptions {
    pub fn new(solver: Solver) -> Self {
        SolveOptions {
            solver,
            normalize: true,
            split: None,
            graph: None,
        }
    }
}

fn normalization_note(f: &LatticeGame, normalize: bool) -> String {
    let bottom = f.bottom_value();
    if bottom.is_zero() {
        "not needed: bottom worth is 0".to_string()
    } else if normalize {
        format!("applied: bottom worth {} subtracted before solving", render(bottom))
    } else {
        format!("disabled: bottom worth {} kept", render(bottom))
    }
}

fn node_json(nodes: &NodeShares) -> Value {
    let map: Map<String, Value> = nodes
        .shares()
        .iter()
        .enumerate()
        .map(|(i, v)| ((i + 1).to_string(), rational_to_json(v)))
        .collect();
    Value::Object(map)
}

pub fn solve(f: &LatticeGame, opts: &SolveOptions) -> CliResult<Report> {
    let (sol, reference) = match (opts.solver, &opts.graph) {
        (Solver::Myerson, None) => {
            return Err(CliError::input("the myerson solver needs --graph"));
        }
        (Solver::Myerson, Some(edges)) => {
            let (game, shift) = if opts.normalize {
                f.normalized()
            } else {
                (f.clone(), Rational::zero())
            };
            let sol = myerson(&game, edges)?.with_bottom_shift(shift);
            (sol, graph_restrict(f, edges)?)
        }
        (_, Some(_)) => {
            return Err(CliError::input("--graph only applies to the myerson solver"));
        }
        (solver, None) => (run_solver(solver, f, opts.normalize)?, f.clone()),
    };
    let nodes = match &opts.split {
        Some(split) => Some(split_to_nodes(&sol, split.weights())?),
        None => None,
    };

    let mut doc = Map::new();
    doc.insert("command".into(), json!("solve"));
    doc.insert("solver".into(), json!(opts.solver.name()));
    if let Value::Object(body) = solution_to_json(&sol, &reference) {
        doc.extend(body);
    }
    doc.insert("bottomNormalization".into(), json!(normalization_note(f, opts.normalize)));
    if let (Some(split), Some(nodes)) = (&opts.split, &nodes) {
        doc.insert("split".into(), json!(split.name()));
        doc.insert("nodes".into(), node_json(nodes));
    }

    let mut report = Report::new(Value::Object(doc), vec!["kind", "key", "value"]);
    for (key, v) in sol.entries() {
        report.row(vec!["atom".into(), key, render(v)], Some(v));
    }
    let total = sol.total();
    report.row(vec!["total".into(), String::new(), render(&total)], Some(&total));
    if let Some(nodes) = &nodes {
        for (i, v) in nodes.shares().iter().enumerate() {
            report.row(vec!["node".into(), (i + 1).to_string(), render(v)], Some(v));
        }
    }
    Ok(report)
}

fn check_json(check: Check, l: &Lattice) -> Value {
    match check {
        Check::Holds => Value::Null,
        Check::FailsPair(x, y) => json!([l.element(x).to_string(), l.element(y).to_string()]),
        Check::FailsAt(x) => json!(l.element(x).to_string()),
    }
}

/// Core status with supermodularity and total-positivity diagnostics.
/// `candidate`, if given, is checked against the same (possibly
/// normalized) game.
pub fn core(f: &LatticeGame, normalize: bool, candidate: Option<&Solution>) -> CliResult<Report> {
    let game = if normalize { f.normalized().0 } else { f.clone() };
    if let Some(c) = candidate {
        if c.lattice() != game.lattice() {
            return Err(CliError::input("candidate shares belong to a different lattice"));
        }
    }
    let l = game.lattice();
    let outcome = core_feasible(&game)?;
    let sm = is_supermodular(&game);
    let tp = is_totally_positive(&game);

    let mut doc = Map::new();
    doc.insert("command".into(), json!("core"));
    doc.insert("lattice".into(), json!(l.kind().name()));
    doc.insert("n".into(), json!(l.n()));
    if let Value::Object(body) = core_report(&game, &outcome, candidate) {
        doc.extend(body);
    }
    doc.insert("supermodular".into(), json!(sm.holds()));
    if !sm.holds() {
        doc.insert("supermodularFailure".into(), check_json(sm, l));
    }
    doc.insert("totallyPositive".into(), json!(tp.holds()));
    if !tp.holds() {
        doc.insert("totallyPositiveFailure".into(), check_json(tp, l));
    }
    doc.insert("bottomNormalization".into(), json!(normalization_note(f, normalize)));

    let mut report = Report::new(Value::Object(doc), vec!["kind", "key", "value"]);
    match &outcome {
        CoreOutcome::Nonempty(w) => {
            report.row(vec!["status".into(), String::new(), "nonempty".into()], None);
            for (key, v) in w.entries() {
                report.row(vec!["witness".into(), key, render(v)], Some(v));
            }
        }
        CoreOutcome::Empty(cert) => {
            report.row(vec!["status".into(), String::new(), "empty".into()], None);
            for (x, y) in &cert.multipliers {
                report.row(vec!["certificate".into(), l.element(*x).to_string(), render(y)], Some(y));
            }
        }
    }
    if let Some(c) = candidate {
        for x in lattice_games::coresep::core_system(&game).violations(c.shares()) {
            report.row(vec!["violated".into(), l.element(x).to_string(), String::new()], None);
        }
    }
    report.row(vec!["supermodular".into(), String::new(), sm.holds().to_string()], None);
    report.row(vec!["totallyPositive".into(), String::new(), tp.holds().to_string()], None);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetshareOptions {
    pub solver: Solver,
    pub split: Split,
}

/// The global game of one period: Möbius mass `w_ij` on each atom `[ij]`,
/// restricted to the down-set of the period's clustering when present.
pub fn period_game(lattice: &std::sync::Arc<Lattice>, period: &Period) -> CliResult<LatticeGame> {
    let mut coeffs = vec![Rational::zero(); lattice.len()];
    for (&(i, j), w) in &period.traffic {
        let a = lattice.parse_atom(&format!("{i},{j}"))?;
        coeffs[lattice.atoms()[a]] = w.clone();
    }
    let f = zeta_expand(&MobiusCoefficients::new(lattice.clone(), coeffs)?);
    match &period.cluster {
        Some(p) => {
            let p_star = lattice.index_of(&Element::Partition(p.clone()))?;
            Ok(clustering_restrict(&f, p_star)?)
        }
        None => Ok(f),
    }
}

pub fn netshare(trace: &TrafficTrace, opts: &NetshareOptions, limits: &Limits) -> CliResult<Report> {
    let lattice = Lattice::new(LatticeKind::Partitions, trace.n, limits)?;
    let mut periods = Vec::with_capacity(trace.periods.len());
    let mut report_rows = Vec::new();
    for period in &trace.periods {
        let f = period_game(&lattice, period)?;
        let sol = run_solver(opts.solver, &f, true)?;
        let nodes = split_to_nodes(&sol, opts.split.weights())?;
        let inside: Vec<Rational> = (0..lattice.num_atoms())
            .map(|a| {
                let x = lattice.atoms()[a];
                let Element::Partition(p) = lattice.element(x) else { unreachable!() };
                let (i, j) = p.atom_pair().expect("atom");
                let kept = period.cluster.as_ref().is_none_or(|c| c.block_of(i) == c.block_of(j));
                match period.traffic.get(&(i, j)) {
                    Some(w) if kept => w.clone(),
                    _ => Rational::zero(),
                }
            })
            .collect();
        let equal_volumes = sol.shares() == inside.as_slice();
        let fixed = is_fixed_point(opts.solver, &f)?;

        let mut doc = Map::new();
        doc.insert("period".into(), json!(period.label));
        doc.insert("cluster".into(), period.cluster.as_ref().map_or(Value::Null, |c| json!(c.to_string())));
        let edges: Map<String, Value> = sol.entries().into_iter().map(|(k, v)| (k, rational_to_json(v))).collect();
        doc.insert("edgeShares".into(), Value::Object(edges));
        doc.insert("nodeShares".into(), node_json(&nodes));
        doc.insert("total".into(), rational_to_json(&sol.total()));
        doc.insert("fixedPoint".into(), json!(fixed));
        doc.insert("sharesEqualVolumes".into(), json!(equal_volumes));
        periods.push(Value::Object(doc));

        for (key, v) in sol.entries() {
            report_rows.push((vec![period.label.clone(), "edge".into(), key, render(v)], Some(v.clone())));
        }
        for (i, v) in nodes.shares().iter().enumerate() {
            report_rows.push((
                vec![period.label.clone(), "node".into(), (i + 1).to_string(), render(v)],
                Some(v.clone()),
            ));
        }
        report_rows.push((
            vec![period.label.clone(), "check".into(), "sharesEqualVolumes".into(), equal_volumes.to_string()],
            None,
        ));
    }
    let doc = json!({
        "command": "netshare",
        "solver": opts.solver.name(),
        "split": opts.split.name(),
        "n": trace.n,
        "periods": periods,
    });
    let mut report = Report::new(doc, vec!["period", "kind", "key", "value"]);
    report.rows = report_rows;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_games::rational::{int, ratio};
    use lattice_games::transform::zeta_game;
    use std::collections::BTreeMap;

    fn p3() -> std::sync::Arc<Lattice> {
        Lattice::new(LatticeKind::Partitions, 3, &Limits::default()).unwrap()
    }

    #[test]
    fn solve_reports() {
        let l = p3();
        let z = zeta_game(&l, l.parse_element("1,2|3").unwrap()).unwrap();
        let r = solve(&z, &SolveOptions::new(Solver::Cu)).unwrap();
        assert_eq!(r.json["shares"], json!({"1,2": "2/3", "1,3": "1/6", "2,3": "1/6"}));
        assert_eq!(r.json["efficiencyCheck"]["holds"], json!(true));
        let csv = r.render(Format::Csv, true).unwrap();
        assert!(csv.starts_with("kind,key,value,approx_decimal\natom,\"1,2\",2/3,0.666"));
        let mut opts = SolveOptions::new(Solver::Su);
        opts.split = Some(Split::Equal);
        let r = solve(&LatticeGame::rank(l.clone()), &opts).unwrap();
        assert_eq!(r.json["nodes"], json!({"1": "2/3", "2": "2/3", "3": "2/3"}));
    }

    #[test]
    fn solve_rejects_bad_combinations() {
        let l = p3();
        let f = LatticeGame::rank(l);
        assert!(matches!(solve(&f, &SolveOptions::new(Solver::Myerson)), Err(CliError::Input(_))));
        let mut opts = SolveOptions::new(Solver::Su);
        opts.graph = Some(vec![(1, 2)]);
        assert!(matches!(solve(&f, &opts), Err(CliError::Input(_))));
        assert!(matches!(solve(&f, &SolveOptions::new(Solver::Shapley)), Err(CliError::Input(_))));
    }

    #[test]
    fn myerson_on_a_path() {
        let l = Lattice::new(LatticeKind::Subsets, 3, &Limits::default()).unwrap();
        let f = zeta_game(&l, l.top()).unwrap();
        let mut opts = SolveOptions::new(Solver::Myerson);
        opts.graph = Some(vec![(1, 2)]);
        let r = solve(&f, &opts).unwrap();
        assert_eq!(r.json["shares"], json!({"1": "0", "2": "0", "3": "0"}));
        assert_eq!(r.json["efficiencyCheck"]["holds"], json!(true));
        opts.graph = Some(vec![(1, 2), (2, 3)]);
        let r = solve(&f, &opts).unwrap();
        assert_eq!(r.json["shares"], json!({"1": "1/3", "2": "1/3", "3": "1/3"}));
    }

    #[test]
    fn core_diagnostics() {
        let l = p3();
        let f = LatticeGame::new(l.clone(), vec![int(0), int(1), int(1), int(1), int(2)]).unwrap();
        let r = core(&f, true, None).unwrap();
        assert_eq!(r.json["status"], json!("empty"));
        assert_eq!(r.json["supermodular"], json!(true));
        assert_eq!(r.json["totallyPositive"], json!(false));
        assert_eq!(r.json["totallyPositiveFailure"], json!("1,2,3"));
        let shifted = LatticeGame::from_fn(l.clone(), |x| LatticeGame::size(l.clone()).value(x) + int(5));
        let r = core(&shifted, true, None).unwrap();
        assert_eq!(r.json["status"], json!("nonempty"));
        let r = core(&shifted, false, None).unwrap();
        assert_eq!(r.json["status"], json!("empty"));
    }

    fn trace(cluster: Option<&str>) -> TrafficTrace {
        let traffic: BTreeMap<(usize, usize), Rational> =
            [((1, 2), int(4)), ((1, 3), int(1)), ((2, 3), int(0))].into_iter().collect();
        TrafficTrace {
            n: 3,
            periods: vec![Period {
                label: "1".into(),
                cluster: cluster.map(|c| c.parse().unwrap()),
                traffic,
            }],
        }
    }

    #[test]
    fn netshare_fixed_point() {
        let opts = NetshareOptions { solver: Solver::Su, split: Split::Equal };
        let r = netshare(&trace(None), &opts, &Limits::default()).unwrap();
        let p = &r.json["periods"][0];
        assert_eq!(p["edgeShares"], json!({"1,2": "4", "1,3": "1", "2,3": "0"}));
        assert_eq!(p["nodeShares"], json!({"1": "5/2", "2": "2", "3": "1/2"}));
        assert_eq!(p["sharesEqualVolumes"], json!(true));
        assert_eq!(p["fixedPoint"], json!(true));

        let r = netshare(&trace(Some("1,2|3")), &opts, &Limits::default()).unwrap();
        let p = &r.json["periods"][0];
        assert_eq!(p["edgeShares"], json!({"1,2": "4", "1,3": "0", "2,3": "0"}));
        assert_eq!(p["sharesEqualVolumes"], json!(true));
    }

    #[test]
    fn netshare_weighted_and_cu() {
        let mut w = EdgeWeights::new();
        w.insert(1, 2, ratio(3, 4), ratio(1, 4)).unwrap();
        let opts = NetshareOptions { solver: Solver::Su, split: Split::Weights(w) };
        let r = netshare(&trace(None), &opts, &Limits::default()).unwrap();
        assert_eq!(r.json["periods"][0]["nodeShares"], json!({"1": "7/2", "2": "1", "3": "1/2"}));
        let opts = NetshareOptions { solver: Solver::Cu, split: Split::Equal };
        let r = netshare(&trace(None), &opts, &Limits::default()).unwrap();
        assert_eq!(r.json["periods"][0]["total"], json!("5"));
        assert_eq!(r.json["periods"][0]["sharesEqualVolumes"], json!(false));
    }
}
