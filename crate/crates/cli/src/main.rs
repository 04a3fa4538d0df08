use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cramer_core::export::{export, Format};
use cramer_core::ogr::{
    cramer_242_quadrics, cross_check, ogr_quadrics, quadric_span, search_identification, verify_identification,
    CoordMap,
};
use cramer_core::variety::{generate_ideal, OmegaMode};
use cramer_core::verify::{run, Suite, VerifyConfig};
use cramer_core::weights::weight_table;

/// Exit status when a check fails; usage and configuration errors exit with 2.
const FAILED: u8 = 1;
const CONFIG_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "cramer", version, about = "Exact computations on Cramer varieties Cr(r, r+s, s)")]
struct Cli {
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Shape {
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Drop ω (only meaningful for r = s = 2)
    #[arg(long)]
    omega_less: bool,
}

impl Shape {
    fn mode(&self) -> OmegaMode {
        if self.omega_less {
            OmegaMode::OmegaLess
        } else {
            OmegaMode::WithOmega
        }
    }
}

#[derive(Args, Clone)]
struct Sampling {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Entries of random group elements are drawn from [-bound, bound]
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    bound: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Write the generators of the ideal
    Ideal {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite: orbit, codim, charts, cartier, weights, limit or all
    Verify {
        suite: Suite,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the torus weight table as JSON
    Weights {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the ω-less Cr(2,4,2) with the spinor variety OGr(5,10)
    Ogr {
        #[command(flatten)]
        sampling: Sampling,
        /// Search for a coordinate map instead of using the committed one
        #[arg(long)]
        search: bool,
        /// Variable assignments tried by the search
        #[arg(long, default_value_t = cramer_core::ogr::COMMITTED_BUDGET)]
        budget: u64,
        /// Read the coordinate map from this file instead of the committed one
        #[arg(long, conflicts_with = "search")]
        map: Option<PathBuf>,
        /// Write the map found by --search here, with the search log next to it
        #[arg(long, requires = "search")]
        map_out: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn cmd_ogr(
    sampling: &Sampling,
    search: bool,
    budget: u64,
    map: Option<&PathBuf>,
    map_out: Option<&PathBuf>,
    output: Option<&PathBuf>,
) -> Result<bool> {
    let cramer = cramer_242_quadrics();
    let ogr = ogr_quadrics();
    let terms = |qs: &[cramer_core::poly::MultiPoly]| qs.iter().map(|q| q.num_terms()).collect::<Vec<_>>();
    let term_counts_ok = cramer.len() == 10 && ogr.len() == 10 && cramer.iter().chain(&ogr).all(|q| q.num_terms() == 4);

    let mut search_report = serde_json::Value::Null;
    let (source, coord_map) = if search {
        let out = search_identification(sampling.seed, budget)?;
        search_report = json!({
            "seed": sampling.seed,
            "budget": budget,
            "nodes": out.nodes,
            "found": out.first().is_some(),
            "log": out.log.lines().collect::<Vec<_>>(),
        });
        if let (Some(path), Some(m)) = (map_out, out.first()) {
            fs::write(path, m.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
            let log_path = path.with_extension("log");
            fs::write(&log_path, &out.log).with_context(|| format!("cannot write {}", log_path.display()))?;
        }
        ("search".to_string(), out.first().cloned())
    } else if let Some(path) = map {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read map {}", path.display()))?;
        (path.display().to_string(), Some(CoordMap::from_json(&text)?))
    } else {
        ("committed".to_string(), Some(CoordMap::committed()?))
    };

    let (identical, cross) = match &coord_map {
        Some(m) => (
            Some(verify_identification(m)?),
            Some(cross_check(m, sampling.samples as usize, sampling.seed, sampling.bound)?),
        ),
        None => (None, None),
    };
    let passed = term_counts_ok && identical == Some(true) && cross.as_ref().is_some_and(|c| c.passed());
    let report = json!({
        "cramer": { "quadrics": cramer.len(), "terms": terms(&cramer), "span_rank": quadric_span(&cramer)?.rank() },
        "ogr": { "quadrics": ogr.len(), "terms": terms(&ogr), "span_rank": quadric_span(&ogr)?.rank() },
        "term_counts_ok": term_counts_ok,
        "map_source": source,
        "map": coord_map.as_ref().map(|m| serde_json::from_str::<serde_json::Value>(&m.to_json()).unwrap()),
        "identical_spans": identical,
        "cross_check": cross,
        "search": search_report,
        "status": if passed { "pass" } else if coord_map.is_none() { "open" } else { "fail" },
    });
    emit(output, &pretty(&report))?;
    Ok(passed)
}

fn execute(cli: Cli) -> Result<bool> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    match cli.command {
        Command::Ideal { shape, format, output } => {
            let ideal = generate_ideal(shape.r, shape.s, shape.mode())?;
            emit(output.as_ref(), &export(&ideal, format))?;
            Ok(true)
        }
        Command::Verify { suite, shape, sampling, output } => {
            if shape.omega_less && (shape.r, shape.s) != (2, 2) {
                bail!("--omega-less is only defined for r = s = 2");
            }
            let config = VerifyConfig {
                r: shape.r,
                s: shape.s,
                omega_mode: shape.mode(),
                seed: sampling.seed,
                samples: sampling.samples as usize,
                bound: sampling.bound,
            };
            let report = run(suite, &config)?;
            emit(output.as_ref(), &report.to_json())?;
            Ok(report.passed())
        }
        Command::Weights { shape, output } => {
            let table = weight_table(shape.r, shape.s)?;
            let mut text = serde_json::to_string_pretty(&table)?;
            text.push('\n');
            emit(output.as_ref(), &text)?;
            Ok(true)
        }
        Command::Ogr { sampling, search, budget, map, map_out, output } => {
            cmd_ogr(&sampling, search, budget, map.as_ref(), map_out.as_ref(), output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(CONFIG_ERROR)
        }
    }
}
