mod args;
mod cache;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use hgc_core::io::{coeff_string, graph_to_json, sum_from_json, SumJson};
use hgc_core::verify::{self, Check, CRITERIA};
use hgc_core::{
    delta_join, delta_split, differential, mc_check, named_sum, twist_differential, BettiReport, Complex,
    ConeComplex, DifferentialKind, Flavor, FormalSum, HgcError, McElement, Named, Parameters, PrimedElement, Sector,
    Window,
};
use serde::Serialize;
use serde_json::{json, Value};

use args::{Cli, Command, Config, DiffKind, Format, LinfCommand, McCommand, PhiCommand};

/// A problem with the invocation or its inputs; exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// What a command produced: a JSON document, an optional CSV table, and
/// whether every verification it ran passed.
struct Report {
    json: Value,
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    passed: bool,
}

#[derive(Serialize)]
struct WindowInfo {
    m: u32,
    n: u32,
    flavor: &'static str,
    sector: &'static str,
    max_v: usize,
    max_h: usize,
    max_e: usize,
}

impl From<&Window> for WindowInfo {
    fn from(w: &Window) -> Self {
        Self {
            m: w.params.m(),
            n: w.params.n(),
            flavor: w.flavor.name(),
            sector: w.sector.name(),
            max_v: w.max_internal,
            max_h: w.max_hairs,
            max_e: w.max_edges,
        }
    }
}

fn read_sum(path: &Path) -> anyhow::Result<FormalSum> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Ok(sum_from_json(&text)?)
}

fn sum_report(x: &FormalSum) -> Report {
    let rows = x.terms().map(|(g, c)| vec![coeff_string(c), graph_to_json(g, x.params(), x.flavor())]).collect();
    Report {
        json: serde_json::to_value(SumJson::from_sum(x)).expect("sum serializes"),
        csv: Some((vec!["coeff", "graph"], rows)),
        passed: true,
    }
}

fn checks_report(checks: Vec<Check>, extra: Value) -> Report {
    let passed = verify::all_passed(&checks);
    let rows = checks
        .iter()
        .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.join("; ")])
        .collect();
    let mut json = json!({ "passed": passed, "checks": checks });
    if let (Value::Object(o), Value::Object(e)) = (&mut json, extra) {
        o.extend(e);
    }
    Report { json, csv: Some((vec!["check", "passed", "detail"], rows)), passed }
}

fn betti_report(window: &Window, kind: &str, reports: Vec<BettiReport>) -> Report {
    let uncertified: Vec<i64> = reports.iter().filter(|b| !b.certified).map(|b| b.degree).collect();
    let rows = reports
        .iter()
        .map(|b| {
            vec![
                b.degree.to_string(),
                b.dim.to_string(),
                b.kernel_dim.to_string(),
                b.image_dim.to_string(),
                b.betti.to_string(),
                b.certified.to_string(),
            ]
        })
        .collect();
    Report {
        json: json!({
            "window": WindowInfo::from(window),
            "kind": kind,
            "reports": reports,
            "uncertified_degrees": uncertified,
        }),
        csv: Some((vec!["degree", "dim", "kernel_dim", "image_dim", "betti", "certified"], rows)),
        passed: true,
    }
}

/// Window for a homology run: explicit bounds if given, else the smallest
/// window certifying the requested degrees.
fn homology_window(
    p: Parameters,
    flavor: Flavor,
    sector: Sector,
    wargs: &args::WindowArgs,
    degrees: Option<&std::ops::RangeInclusive<i64>>,
    cfg: &Config,
) -> anyhow::Result<Window> {
    match (wargs.bounds(cfg)?, degrees) {
        (None, Some(r)) => Ok(Window::covering(p, flavor, sector, r.start() - 1..=r.end() + 1)?),
        _ => wargs.build(p, flavor, sector, cfg),
    }
}

fn run(cli: &Cli, cfg: &Config) -> anyhow::Result<Report> {
    Ok(match &cli.command {
        Command::Enumerate { params, window, degree } => {
            let p = params.resolve(cfg)?;
            let flavor = window.flavor(cfg)?.unwrap_or(Flavor::A);
            let w = window.build(p, flavor, window.sector(cfg)?, cfg)?;
            let slices = cache::cached_enumerate(&w)?;
            let chosen: Vec<_> = slices.values().filter(|s| degree.is_none_or(|d| s.degree == d)).collect();
            let encode = |s: &hgc_core::BasisSlice| -> Vec<String> {
                s.graphs.iter().map(|g| graph_to_json(g, p, flavor)).collect()
            };
            let rows = chosen
                .iter()
                .map(|s| vec![s.degree.to_string(), s.len().to_string(), s.complete.to_string(), encode(s).join(";")])
                .collect();
            let slices_json: Vec<Value> = chosen
                .iter()
                .map(|s| {
                    let graphs: Vec<Value> =
                        encode(s).iter().map(|g| serde_json::from_str(g).expect("valid json")).collect();
                    json!({ "degree": s.degree, "count": s.len(), "complete": s.complete, "graphs": graphs })
                })
                .collect();
            Report {
                json: json!({ "window": WindowInfo::from(&w), "slices": slices_json }),
                csv: Some((vec!["degree", "count", "complete", "graphs"], rows)),
                passed: true,
            }
        }
        Command::Diff { kind, input } => {
            let x = read_sum(input)?;
            let y = match kind {
                DiffKind::Split => delta_split(&x),
                DiffKind::Join => delta_join(&x)?,
                DiffKind::Full => differential(&x, DifferentialKind::Full)?,
                DiffKind::Prime => differential(&x, DifferentialKind::Prime)?,
            };
            sum_report(&y)
        }
        Command::D2check { params, window } => {
            let p = params.resolve(cfg)?;
            let sector = window.sector(cfg)?;
            let flavors = match window.flavor(cfg)? {
                Some(f) => vec![f],
                None => vec![Flavor::Abar, Flavor::A, Flavor::Aprime],
            };
            let checks = flavors
                .into_iter()
                .map(|f| verify::d_squared(&window.build(p, f, sector, cfg)?).map_err(anyhow::Error::from))
                .collect::<anyhow::Result<Vec<_>>>()?;
            checks_report(checks, json!({}))
        }
        Command::Homology { params, window, degree } => {
            let p = params.resolve(cfg)?;
            let flavor = window.flavor(cfg)?.unwrap_or(Flavor::A);
            let degrees = degree.as_deref().map(args::parse_degrees).transpose()?;
            let w = homology_window(p, flavor, window.sector(cfg)?, window, degrees.as_ref(), cfg)?;
            let kind = DifferentialKind::for_flavor(flavor);
            let c = Complex::from_slices(&w, kind, cache::cached_enumerate(&w)?)?;
            let reports = match degrees {
                Some(r) => r.map(|d| c.betti(d)).collect::<Result<Vec<_>, _>>()?,
                None => c.bettis()?,
            };
            betti_report(&w, kind.name(), reports)
        }
        Command::Cone { params, window, degree } => {
            let p = params.resolve(cfg)?;
            if window.flavor.is_some() || window.sector.is_some() {
                return Err(Usage("the cone is built from the full A complex; drop --flavor/--sector".into()).into());
            }
            let degrees = degree.as_deref().map(args::parse_degrees).transpose()?;
            let w = homology_window(p, Flavor::A, Sector::All, window, degrees.as_ref(), cfg)?;
            let cone = ConeComplex::new(&w)?;
            let reports = match degrees {
                Some(r) => r.map(|k| cone.betti(k)).collect::<Result<Vec<_>, _>>()?,
                None => cone.bettis()?,
            };
            betti_report(&w, "cone", reports)
        }
        Command::Phi { action: PhiCommand::Verify { params, window } } => {
            let p = params.resolve(cfg)?;
            let (v, h, _) = window.bounds(cfg)?.unwrap_or((args::DEFAULT_MAX, args::DEFAULT_MAX, None));
            checks_report(verify::phi_checks(p, v, h)?, json!({}))
        }
        Command::Phi { action: PhiCommand::Apply { input } } => {
            let x = PrimedElement::new(read_sum(input)?)?;
            sum_report(hgc_core::phi(&x)?.value())
        }
        Command::Linf { action: LinfCommand::Verify { arity, params, window, seed, samples } } => {
            let p = params.resolve(cfg)?;
            let (v, h, _) = window.bounds(cfg)?.unwrap_or((2, 3, None));
            let seed = seed.or(cfg.seed).unwrap_or(verify::ACCEPTANCE_SEED);
            let checks = match arity {
                2 => verify::linfty_arity2(p, v, h)?,
                _ => vec![verify::linfty_arity3(p, v, h, *samples, seed)?],
            };
            checks_report(checks, json!({ "seed": seed }))
        }
        Command::Mc { action: McCommand::Check { name, params } } => {
            let p = params.resolve(cfg)?;
            let named = Named::from_name(name)?;
            let ok = mc_check(&named_sum(named, p, Flavor::A)?)?;
            let check = Check::new(format!("mc({}) at {p}", named.name()), ok);
            checks_report(vec![check], json!({}))
        }
        Command::Twist { pi, input } => {
            let pi = McElement::new(read_sum(pi)?)?;
            sum_report(&twist_differential(&pi, &read_sum(input)?)?)
        }
        Command::ParityTable { grid } => {
            let cells = verify::parity_table(&args::parse_grid(grid)?)?;
            let passed = cells.iter().all(|c| c.matches());
            let rows = cells
                .iter()
                .map(|c| {
                    vec![
                        c.name.to_string(),
                        c.m.to_string(),
                        c.n.to_string(),
                        c.predicted_nonzero.to_string(),
                        c.observed_nonzero.to_string(),
                        c.matches().to_string(),
                    ]
                })
                .collect();
            Report {
                json: json!({ "passed": passed, "cells": cells }),
                csv: Some((vec!["name", "m", "n", "predicted_nonzero", "observed_nonzero", "match"], rows)),
                passed,
            }
        }
        Command::VerifyAll { grid, criteria } => {
            if grid != "small" {
                return Err(Usage(format!("unknown preset grid {grid:?}; the only preset is \"small\"")).into());
            }
            let ids: Vec<u8> = criteria.clone().unwrap_or_else(|| CRITERIA.iter().map(|c| c.0).collect());
            let mut reports = Vec::new();
            for id in ids {
                let r = verify::run_criterion(id).map_err(|e| match e {
                    HgcError::UnknownName(_) => anyhow::Error::new(Usage(format!("no criterion {id}"))),
                    e => e.into(),
                })?;
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                eprintln!("criterion {:>2} {verdict}: {} ({:.1}s)", r.id, r.title, r.seconds);
                for c in r.checks.iter().filter(|c| !c.passed) {
                    eprintln!("    failed: {}", c.name);
                    for line in &c.detail {
                        eprintln!("        {line}");
                    }
                }
                reports.push(r);
            }
            let passed = reports.iter().all(|r| r.passed());
            let rows = reports
                .iter()
                .map(|r| vec![r.id.to_string(), r.title.to_string(), if r.passed() { "PASS" } else { "FAIL" }.into()])
                .collect();
            Report {
                json: json!({ "grid": grid, "passed": passed, "criteria": reports }),
                csv: Some((vec!["criterion", "title", "verdict"], rows)),
                passed,
            }
        }
    })
}

fn render(report: &Report, format: Format) -> anyhow::Result<Vec<u8>> {
    match (format, &report.csv) {
        (Format::Csv, Some((header, rows))) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            Ok(w.into_inner()?)
        }
        _ => {
            let mut out = serde_json::to_vec_pretty(&report.json)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

/// Input errors exit with 2; everything else that goes wrong exits with 1.
fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<HgcError>() {
        Some(
            HgcError::InvalidParameters { .. }
            | HgcError::MalformedGraph(_)
            | HgcError::IllegalDecoration { .. }
            | HgcError::Mismatch(_)
            | HgcError::UnsupportedFlavor(_)
            | HgcError::NotHomogeneous
            | HgcError::WrongDegree { .. }
            | HgcError::Arity { .. }
            | HgcError::NotPrimed(_)
            | HgcError::UnknownName(_)
            | HgcError::Window(_)
            | HgcError::Parse(_),
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| -> anyhow::Result<bool> {
        let cfg = Config::load(cli.global.config.as_deref())?;
        if let Some(jobs) = cli.global.jobs.or(cfg.jobs) {
            if jobs == 0 {
                return Err(Usage("--jobs must be at least 1".into()).into());
            }
            rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("thread pool")?;
        }
        let report = run(&cli, &cfg)?;
        let bytes = render(&report, cli.global.format.or(cfg.format).unwrap_or(Format::Json))?;
        match &cli.global.out {
            Some(path) => std::fs::write(path, bytes).with_context(|| path.display().to_string())?,
            None => std::io::stdout().write_all(&bytes)?,
        }
        if !report.passed {
            eprintln!("verification failed");
        }
        Ok(report.passed)
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
