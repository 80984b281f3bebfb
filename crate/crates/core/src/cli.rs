//! The `magtop` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::causal::{achievable_lengths, achievable_lengths_between};
use crate::checks::{betti_table_for, kunneth, magnitude_homology, verify_double_suspension, verify_mainisom};
use crate::error::{Error, Result};
use crate::frame::{framed_betti_prediction, hasse_graph, singular_sequences};
use crate::io::{load_complex, load_gluing, load_space, load_twist, HasseDoc};
use crate::metric::MetricSpace;
use crate::mv::{check_gated, verify_mv, verify_union, GatedGluing};
use crate::projecting::{check_projecting_matching, projecting_matching};
use crate::random::seeded_space;
use crate::rational::{parse_rational, Rational};
use crate::series::{euler_check, magnitude, weighting};
use crate::sycamore::verify_sycamore;

#[derive(Debug, Parser)]
#[command(name = "magtop", version, about = "Exact magnitude and magnitude homology of finite metric spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if r < Rational::from_integer(0.into()) {
        return Err(format!("`{s}` is negative"));
    }
    Ok(r)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Magnitude and weighting as truncated series in q.
    Magnitude {
        input: PathBuf,
        #[arg(long, value_parser = rational_arg, default_value = "3")]
        lmax: Rational,
    },
    /// Betti numbers and torsion of magnitude homology.
    Homology {
        input: PathBuf,
        #[arg(long, value_parser = rational_arg, conflicts_with = "lmax")]
        l: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        lmax: Option<Rational>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Achievable lengths up to a bound.
    Lengths {
        input: PathBuf,
        #[arg(long, value_parser = rational_arg, default_value = "3")]
        lmax: Rational,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Critical cells of the projecting matching of a gluing.
    CriticalCells {
        input: PathBuf,
        #[arg(long, value_parser = rational_arg, conflicts_with = "lmax")]
        l: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        lmax: Option<Rational>,
    },
    /// Singular sequences of length l and the Betti numbers they predict.
    Frames {
        input: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        l: Rational,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Weighted Hasse diagram of the extended face poset of a complex.
    Hasse { input: PathBuf },
    /// Machine-check a structural identity.
    Verify {
        check: Check,
        inputs: Vec<PathBuf>,
        #[arg(long, value_parser = rational_arg, default_value = "3")]
        lmax: Rational,
        /// Use a seeded random space instead of an input file.
        #[arg(long)]
        seed: Option<u64>,
        /// Size of the random space.
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Mainisom,
    Double,
    Kunneth,
    Euler,
    Union,
    Mv,
    Sycamore,
    Frames,
}

/// A named table of string cells.
#[derive(Debug, Clone)]
struct Table {
    name: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Table { name, columns: columns.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Default)]
struct Report {
    tables: Vec<Table>,
    notes: Vec<String>,
    verdict: Option<bool>,
    raw: Option<Value>,
}

impl Report {
    fn render(&self, format: Format) -> String {
        if let Some(raw) = &self.raw {
            return serde_json::to_string_pretty(raw).expect("json") + "\n";
        }
        match format {
            Format::Table => {
                let mut out = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 || self.tables.len() > 1 {
                        let _ = writeln!(out, "# {}", t.name);
                    }
                    let _ = writeln!(out, "{}", t.columns.join("\t"));
                    for r in &t.rows {
                        let _ = writeln!(out, "{}", r.join("\t"));
                    }
                }
                if let Some(v) = self.verdict {
                    let _ = writeln!(out, "verdict\t{}", if v { "PASS" } else { "FAIL" });
                }
                out
            }
            Format::Json => {
                let mut doc = Map::new();
                for t in &self.tables {
                    let rows: Vec<Value> = t
                        .rows
                        .iter()
                        .map(|r| {
                            Value::Object(t.columns.iter().zip(r).map(|(c, v)| (c.to_string(), json!(v))).collect())
                        })
                        .collect();
                    doc.insert(t.name.to_string(), Value::Array(rows));
                }
                if !self.notes.is_empty() {
                    doc.insert("notes".into(), json!(self.notes));
                }
                if let Some(v) = self.verdict {
                    doc.insert("pass".into(), json!(v));
                }
                serde_json::to_string_pretty(&Value::Object(doc)).expect("json") + "\n"
            }
        }
    }
}

/// Outcome of a run: exit code plus what goes to each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(n) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(&cli.command) {
        Ok(report) => {
            let code = match report.verdict {
                Some(false) => 1,
                _ => 0,
            };
            let stderr = report.notes.iter().map(|n| format!("note: {n}\n")).collect();
            Outcome { code, stdout: report.render(cli.format), stderr }
        }
        Err(Failure::Error(e)) => {
            Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
        }
        Err(Failure::Hypothesis(msg)) => {
            Outcome { code: 5, stdout: String::new(), stderr: format!("hypothesis unmet: {msg}\n") }
        }
    }
}

enum Failure {
    Error(Error),
    Hypothesis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcomes = std::result::Result<Report, Failure>;

fn endpoint(x: &MetricSpace, label: &Option<String>) -> Result<Option<usize>> {
    label.as_deref().map(|l| x.resolve(l)).transpose()
}

fn lengths_for(
    x: &MetricSpace,
    l: &Option<Rational>,
    lmax: &Option<Rational>,
    notes: &mut Vec<String>,
) -> Result<Vec<Rational>> {
    match (l, lmax) {
        (Some(l), _) => {
            if achievable_lengths(x, l).contains(l) {
                Ok(vec![l.clone()])
            } else {
                notes.push(format!("{l} is not an achievable length; see `magtop lengths`"));
                Ok(vec![])
            }
        }
        (None, Some(m)) => Ok(achievable_lengths(x, m)),
        (None, None) => Err(Error::Parse("give --l or --lmax".into())),
    }
}

fn torsion_cell(t: &[num_bigint::BigInt]) -> String {
    t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn dispatch(cmd: &Command) -> Outcomes {
    match cmd {
        Command::Magnitude { input, lmax } => {
            let x = load_space(input)?;
            let mut m = Table::new("magnitude", &["lmax", "series"]);
            m.push(vec![lmax.to_string(), magnitude(&x, lmax).to_string()]);
            let mut w = Table::new("weighting", &["point", "series"]);
            for (i, s) in weighting(&x, lmax).iter().enumerate() {
                w.push(vec![x.label(i).to_string(), s.to_string()]);
            }
            Ok(Report { tables: vec![m, w], ..Default::default() })
        }
        Command::Homology { input, l, lmax, from, to } => {
            let x = load_space(input)?;
            let (a, b) = (endpoint(&x, from)?, endpoint(&x, to)?);
            let mut notes = Vec::new();
            let lengths = lengths_for(&x, l, lmax, &mut notes)?;
            let table = betti_table_for(&x, &lengths, a, b)?;
            let cols = ["l", "a", "b", "k", "betti", "torsion"];
            let mut rows = Table::new("homology", &cols);
            for e in &table.entries {
                for (k, g) in &e.homology.groups {
                    rows.push(vec![
                        e.ell.to_string(),
                        x.label(e.a).into(),
                        x.label(e.b).into(),
                        k.to_string(),
                        g.betti.to_string(),
                        torsion_cell(&g.torsion),
                    ]);
                }
            }
            let mut total = Table::new("total", &cols);
            for ell in &lengths {
                for (k, g) in &table.total(ell).groups {
                    total.push(vec![
                        ell.to_string(),
                        "*".into(),
                        "*".into(),
                        k.to_string(),
                        g.betti.to_string(),
                        torsion_cell(&g.torsion),
                    ]);
                }
            }
            Ok(Report { tables: vec![rows, total], notes, ..Default::default() })
        }
        Command::Lengths { input, lmax, from, to } => {
            let x = load_space(input)?;
            let (a, b) = (endpoint(&x, from)?, endpoint(&x, to)?);
            let set: BTreeSet<Rational> = match (a, b) {
                (None, None) => achievable_lengths(&x, lmax).into_iter().collect(),
                _ => {
                    let n = x.len();
                    let mut s = BTreeSet::new();
                    for p in a.map_or(0..n, |p| p..p + 1) {
                        for q in b.map_or(0..n, |q| q..q + 1) {
                            s.extend(achievable_lengths_between(&x, p, q, lmax));
                        }
                    }
                    s
                }
            };
            let mut t = Table::new("lengths", &["l"]);
            for l in set {
                t.push(vec![l.to_string()]);
            }
            Ok(Report { tables: vec![t], ..Default::default() })
        }
        Command::CriticalCells { input, l, lmax } => {
            let g = load_gluing(input)?;
            let mut notes = Vec::new();
            let lengths = lengths_for(&g.glued, l, lmax, &mut notes)?;
            let labels = g.glued.labels();
            let mut counts = Table::new("counts", &["l", "dim", "critical"]);
            let mut cells = Table::new("cells", &["l", "dim", "sequence"]);
            let mut checks = Table::new("matching", &["l", "cells", "pairs", "acyclic", "bounded", "depth"]);
            for ell in &lengths {
                let pm = projecting_matching(&g, ell)?;
                for (dim, c) in pm.critical_counts() {
                    counts.push(vec![ell.to_string(), dim.to_string(), c.to_string()]);
                }
                for s in &pm.critical {
                    cells.push(vec![ell.to_string(), s.degree().to_string(), s.display_with(labels).to_string()]);
                }
                let c = check_projecting_matching(&g, &pm)?;
                checks.push(vec![
                    ell.to_string(),
                    pm.cells.len().to_string(),
                    pm.matching.len().to_string(),
                    c.acyclic.to_string(),
                    c.bounded.to_string(),
                    c.max_depth.to_string(),
                ]);
            }
            Ok(Report { tables: vec![counts, cells, checks], notes, ..Default::default() })
        }
        Command::Frames { input, l, from, to } => {
            let x = load_space(input)?;
            let (fa, fb) = (endpoint(&x, from)?, endpoint(&x, to)?);
            let labels = x.labels();
            let n = x.len();
            let mut frames = Table::new("frames", &["a", "b", "frame", "steps", "length"]);
            let mut predicted = Table::new("prediction", &["l", "a", "b", "k", "predicted", "betti"]);
            for a in fa.map_or(0..n, |p| p..p + 1) {
                for b in fb.map_or(0..n, |q| q..q + 1) {
                    if x.d(a, b) > l {
                        continue;
                    }
                    let fs = singular_sequences(&x, a, b, l).map_err(hypothesis)?;
                    for f in &fs {
                        frames.push(vec![
                            x.label(a).into(),
                            x.label(b).into(),
                            f.display_with(labels).to_string(),
                            f.steps().to_string(),
                            f.length(&x).to_string(),
                        ]);
                    }
                    let p = framed_betti_prediction(&x, a, b, l)?;
                    let h = magnitude_homology(&x, a, b, l)?.betti_vector();
                    let ks: BTreeSet<i32> = p.keys().chain(h.keys()).copied().collect();
                    for k in ks {
                        predicted.push(vec![
                            l.to_string(),
                            x.label(a).into(),
                            x.label(b).into(),
                            k.to_string(),
                            p.get(&k).copied().unwrap_or(0).to_string(),
                            h.get(&k).copied().unwrap_or(0).to_string(),
                        ]);
                    }
                }
            }
            Ok(Report { tables: vec![frames, predicted], ..Default::default() })
        }
        Command::Hasse { input } => {
            let facets = load_complex(input)?;
            let h = hasse_graph(&facets)?;
            let doc = serde_json::to_value(HasseDoc::new(&h)).expect("json");
            Ok(Report { raw: Some(doc), ..Default::default() })
        }
        Command::Verify { check, inputs, lmax, seed, points } => verify(*check, inputs, lmax, *seed, *points),
    }
}

fn hypothesis(e: Error) -> Failure {
    match e {
        Error::FourCutObstruction { .. } => Failure::Hypothesis(e.to_string()),
        e => Failure::Error(e),
    }
}

fn space_input(inputs: &[PathBuf], i: usize, seed: Option<u64>, points: usize) -> Result<MetricSpace> {
    match (inputs.get(i), seed) {
        (Some(p), _) => load_space(p),
        (None, Some(s)) => Ok(seeded_space(points, s.wrapping_add(i as u64))),
        (None, None) => Err(Error::Parse(format!("missing input file #{}", i + 1))),
    }
}

fn gated(inputs: &[PathBuf]) -> std::result::Result<GatedGluing, Failure> {
    let path = inputs.first().ok_or_else(|| Error::Parse("missing gluing document".into()))?;
    check_gated(load_gluing(path)?).map_err(|e| Failure::Hypothesis(e.to_string()))
}

fn pairs_at(x: &MetricSpace, lmax: &Rational) -> Vec<(Rational, usize, usize)> {
    let mut out = Vec::new();
    for ell in achievable_lengths(x, lmax) {
        for a in 0..x.len() {
            for b in 0..x.len() {
                if x.d(a, b) <= &ell {
                    out.push((ell.clone(), a, b));
                }
            }
        }
    }
    out
}

fn verify(check: Check, inputs: &[PathBuf], lmax: &Rational, seed: Option<u64>, points: usize) -> Outcomes {
    let mut report = Report::default();
    let pass = match check {
        Check::Mainisom | Check::Double => {
            let x = space_input(inputs, 0, seed, points)?;
            let mut t = Table::new("checks", &["l", "a", "b", "magnitude", "pair", "pass"]);
            let mut all = true;
            for (ell, a, b) in pairs_at(&x, lmax) {
                let (ok, m, r) = if check == Check::Mainisom {
                    let r = verify_mainisom(&x, a, b, &ell)?;
                    (r.pass, r.magnitude, r.relative)
                } else {
                    let r = verify_double_suspension(&x, a, b, &ell)?;
                    (r.pass, r.magnitude, r.shifted_pair)
                };
                all &= ok;
                t.push(vec![
                    ell.to_string(),
                    x.label(a).into(),
                    x.label(b).into(),
                    m.to_string(),
                    r.to_string(),
                    ok.to_string(),
                ]);
            }
            report.tables.push(t);
            all
        }
        Check::Kunneth => {
            let x = space_input(inputs, 0, seed, points)?;
            let y = space_input(inputs, 1, seed, points)?;
            let r = kunneth(&x, &y, lmax)?;
            let mut t = Table::new("mismatches", &["l", "a", "b", "predicted", "actual"]);
            for m in &r.mismatches {
                t.push(vec![
                    m.ell.to_string(),
                    r.product.label(m.a).into(),
                    r.product.label(m.b).into(),
                    format!("{:?}", m.predicted),
                    format!("{:?}", m.actual),
                ]);
            }
            let mut s = Table::new("summary", &["checked", "mismatches", "torsion_failures"]);
            s.push(vec![r.checked.to_string(), r.mismatches.len().to_string(), r.torsion_failures.to_string()]);
            report.tables.extend([s, t]);
            r.pass()
        }
        Check::Euler => {
            let x = space_input(inputs, 0, seed, points)?;
            let r = euler_check(&x, lmax)?;
            let mut s = Table::new("summary", &["checked", "mismatches", "weighting", "magnitude"]);
            s.push(vec![
                r.checked.to_string(),
                r.mismatches.len().to_string(),
                r.weighting_ok.to_string(),
                r.magnitude_ok.to_string(),
            ]);
            let mut t = Table::new("mismatches", &["l", "a", "b", "series", "euler"]);
            for m in &r.mismatches {
                t.push(vec![
                    m.ell.to_string(),
                    x.label(m.a).into(),
                    x.label(m.b).into(),
                    m.series.to_string(),
                    m.euler.to_string(),
                ]);
            }
            report.tables.extend([s, t]);
            r.pass()
        }
        Check::Union => {
            let g = gated(inputs)?;
            let r = verify_union(&g, lmax)?;
            let mut t = Table::new("union", &["l", "glued", "interior", "g", "pass"]);
            for row in &r.rows {
                t.push(vec![
                    row.ell.to_string(),
                    row.glued.to_string(),
                    row.interior.to_string(),
                    row.g.to_string(),
                    row.pass().to_string(),
                ]);
            }
            for (a, b, c) in &r.shortcut_violations {
                let x = &g.base.glued;
                report.notes.push(format!("{} lies between {} and {}", x.label(*b), x.label(*a), x.label(*c)));
            }
            report.tables.push(t);
            r.pass()
        }
        Check::Mv => {
            let g = gated(inputs)?;
            let r = verify_mv(&g, lmax)?;
            let mut t = Table::new("mv", &["l", "k", "X", "K", "G", "H", "rank", "torsion"]);
            for row in &r.rows {
                let mut cells = vec![row.ell.to_string(), row.degree.to_string()];
                cells.extend(row.ranks.iter().map(ToString::to_string));
                cells.extend([row.rank_ok.to_string(), row.torsion_ok.to_string()]);
                t.push(cells);
            }
            report.tables.push(t);
            r.pass()
        }
        Check::Sycamore => {
            let path = inputs.first().ok_or_else(|| Error::Parse("missing twist document".into()))?;
            let tw = load_twist(path).map_err(|e| match e {
                Error::NotASycamoreTwist(_) => Failure::Hypothesis(e.to_string()),
                e => Failure::Error(e),
            })?;
            let r = verify_sycamore(&tw, lmax)?;
            let mut t = Table::new("critical", &["l", "dim", "critical_X", "critical_Y", "match"]);
            for row in &r.rows {
                t.push(vec![
                    row.ell.to_string(),
                    row.dim.to_string(),
                    row.critical_x.to_string(),
                    row.critical_y.to_string(),
                    row.matches().to_string(),
                ]);
            }
            let mut e = Table::new("euler", &["l", "X", "Y"]);
            for (ell, a, b) in &r.euler {
                e.push(vec![ell.to_string(), a.to_string(), b.to_string()]);
            }
            let mut m = Table::new("magnitude", &["space", "series"]);
            m.push(vec!["X".into(), r.magnitude_x.to_string()]);
            m.push(vec!["Y".into(), r.magnitude_y.to_string()]);
            report.tables.extend([t, e, m]);
            report.notes.extend(r.failures.iter().cloned());
            r.pass()
        }
        Check::Frames => {
            let x = space_input(inputs, 0, seed, points)?;
            let mut t = Table::new("frames", &["l", "a", "b", "predicted", "betti", "pass"]);
            let mut all = true;
            for (ell, a, b) in pairs_at(&x, lmax) {
                let p = framed_betti_prediction(&x, a, b, &ell).map_err(hypothesis)?;
                let h = magnitude_homology(&x, a, b, &ell)?.betti_vector();
                let ok = p == h;
                all &= ok;
                t.push(vec![
                    ell.to_string(),
                    x.label(a).into(),
                    x.label(b).into(),
                    format!("{p:?}"),
                    format!("{h:?}"),
                    ok.to_string(),
                ]);
            }
            report.tables.push(t);
            all
        }
    };
    report.verdict = Some(pass);
    Ok(report)
}
