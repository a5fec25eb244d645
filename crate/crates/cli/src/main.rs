mod commands;
mod config;
mod error;
mod parse;
mod verify;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{Report, SpliceArgs};
use config::{Format, RunConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "spectra", version, about = "Markov and Lagrange spectra toolkit")]
struct Cli {
    /// `key = value` config file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// working precision in bits
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate a continued-fraction literal such as `0;2:(2,1)*`.
    Cf {
        literal: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Markov and Lagrange values of a periodic bi-infinite sequence.
    Markov { sequence: String },
    /// Prune words of length `ell` that cannot occur below `t`.
    Prune {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        t: String,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        ell: Option<usize>,
        /// include words, certificates and the component classification
        #[arg(long)]
        full: bool,
    },
    /// Hausdorff-dimension enclosure of a full shift or a graph file.
    Dim {
        #[arg(long = "N", conflicts_with = "graph")]
        n: Option<u32>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Enclosures of `D(t)` along a grid of levels.
    Scan {
        #[arg(long = "N")]
        n: u32,
        /// comma-separated, strictly increasing levels
        #[arg(long)]
        grid: String,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Strongly connected components of a graph file.
    Scc {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Build a spliced expansion through a chain of full shifts.
    Splice {
        #[arg(long, default_value = "0;:(1)*")]
        base: String,
        /// comma-separated alphabet sizes
        #[arg(long, default_value = "3,4")]
        chain: String,
        #[arg(long, default_value_t = 10_000)]
        length: usize,
        #[arg(long)]
        r0: Option<u32>,
        /// also fit the Hölder exponent of the splice map
        #[arg(long)]
        probe: bool,
        /// write the prefix digits to this file
        #[arg(long)]
        digits: Option<PathBuf>,
    },
    /// Recheck the published constants and inequalities.
    VerifyPaper {
        #[arg(long)]
        only: Option<String>,
        /// restrict the branch-sum checks to one `m`
        #[arg(long)]
        m: Option<i64>,
    },
}

fn settings(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut c = RunConfig::load(cli.config.as_deref())?;
    if let Some(p) = cli.precision {
        c.precision = p;
    }
    if let Some(f) = cli.format {
        c.format = Some(f);
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(t) = cli.threads {
        c.threads = t;
    }
    c.apply_env()?;
    if !(53..=4096).contains(&c.precision) {
        return Err(CliError::input(format!("precision {} outside 53..=4096", c.precision)));
    }
    if c.threads == 0 {
        return Err(CliError::input("threads must be at least 1"));
    }
    spectra_core::set_precision(c.precision);
    Ok(c)
}

fn verify_report(only: Option<&str>, m: Option<i64>) -> Result<Report, CliError> {
    let checks = verify::run(only, m)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let mut csv = String::from("group,name,computed,expected,margin,pass\n");
    for c in &checks {
        let margin = c.margin.map_or(String::new(), |m| m.to_string());
        csv.push_str(&format!("{},\"{}\",{},\"{}\",{},{}\n", c.group, c.name, c.computed, c.expected, margin, c.pass));
    }
    let mut body = json!({
        "checks": checks,
        "passed": checks.len() - failed.len(),
        "failed": failed.len(),
    });
    body["schema"] = json!(1);
    body["command"] = json!("verify-paper");
    let exit = (!failed.is_empty()).then(|| CliError::Failed(format!("failed checks: {}", failed.join(", "))));
    Ok(Report { json: body, csv: Some(csv), exit })
}

fn verify_text(r: &Report) -> String {
    let mut out = String::new();
    for c in r.json["checks"].as_array().into_iter().flatten() {
        let status = if c["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        let margin = c["margin"].as_f64().map_or(String::new(), |m| format!(" margin {m:.6}"));
        out.push_str(&format!(
            "{status} {} {}: {} vs {}{margin}\n",
            c["group"].as_str().unwrap_or_default(),
            c["name"].as_str().unwrap_or_default(),
            c["computed"].as_str().unwrap_or_default(),
            c["expected"].as_str().unwrap_or_default(),
        ));
    }
    out
}

fn run(cli: &Cli) -> Result<Option<CliError>, CliError> {
    let cfg = settings(cli)?;
    let (report, default) = match &cli.cmd {
        Cmd::Cf { literal, terms } => (commands::cf(literal, *terms)?, Format::Json),
        Cmd::Markov { sequence } => (commands::markov(sequence)?, Format::Json),
        Cmd::Prune { n, t, eps, ell, full } => {
            (commands::prune(&cfg, *n, t, eps.as_deref(), *ell, *full)?, Format::Json)
        }
        Cmd::Dim { n, graph, depth } => (commands::dim(&cfg, *n, graph.as_deref(), *depth)?, Format::Json),
        Cmd::Scan { n, grid, eps, ell, depth } => {
            (commands::scan(&cfg, *n, grid, eps.as_deref(), *ell, *depth)?, Format::Csv)
        }
        Cmd::Scc { graph } => (commands::scc(graph)?, Format::Json),
        Cmd::Splice { base, chain, length, r0, probe, digits } => {
            let a = SpliceArgs { base, chain, length: *length, r0: *r0, probe: *probe, digits: digits.as_deref() };
            (commands::splice(&cfg, &a)?, Format::Json)
        }
        Cmd::VerifyPaper { only, m } => (verify_report(only.as_deref(), *m)?, Format::Text),
    };
    let format = cfg.format.unwrap_or(default);
    let text = match (&cli.cmd, format) {
        (Cmd::VerifyPaper { .. }, Format::Text) => verify_text(&report),
        _ => report.render(format)?,
    };
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(report.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let err = match run(&cli) {
        Ok(None) => return ExitCode::SUCCESS,
        Ok(Some(e)) | Err(e) => e,
    };
    eprintln!("spectra: {err}");
    ExitCode::from(err.exit_code() as u8)
}
