//! Command-line front end for `flateta-core`.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flateta_core::{
    build_holonomy, class_number, enumerate_spin_structures, eta_series_closed_form,
    eta_series_eval, eta_spectral_partial, holonomy_blocks, holonomy_checks, invariant_records,
    run_suite, spectral_tail_bound, structure_classes, validate, Error, OddPrime, Report,
    SpinStructure, Suite, SweepSpec, ZpParams,
};
use serde::Serialize;
use thiserror::Error;

/// Largest `b + c` for which every spin structure gets its own rows.
const MAX_LISTED_BETTI: u64 = 12;

#[derive(Parser)]
#[command(
    name = "flateta",
    version,
    about = "Eta invariants of flat Z_p-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eta, kernel dimension and reduced eta for every spin structure and twist.
    Invariants {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run verification suites over a parameter sweep.
    Verify {
        /// A suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 13)]
        p_max: u64,
        #[arg(long, default_value_t = 60)]
        n_max: u64,
        #[arg(long)]
        include_even_n: bool,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare the closed-form eta series with its truncated spectral sum.
    Series {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        h: u8,
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 10_000)]
        terms: u64,
    },
    /// Holonomy matrix with its consistency checks, as JSON.
    Holonomy {
        #[command(flatten)]
        params: ParamArgs,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class number of Q(sqrt(-p)) for p ≡ 3 (mod 4).
    Classnumber {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    a: u64,
    #[arg(long, default_value_t = 0)]
    b: u64,
    #[arg(long, default_value_t = 1)]
    c: u64,
}

impl ParamArgs {
    fn validate(&self) -> Result<ZpParams, CliError> {
        Ok(validate(self.p, self.a, self.b, self.c)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// One row of the invariant table.
#[derive(Serialize)]
struct Row {
    p: u64,
    a: u64,
    b: u64,
    c: u64,
    n: u64,
    exceptional: bool,
    structure: String,
    h: u8,
    ell: i64,
    eta: String,
    dim_ker: String,
    eta_bar: String,
    #[serde(rename = "eta_bar_mod_Z")]
    eta_bar_mod_z: String,
    #[serde(rename = "relative_mod_Z")]
    relative_mod_z: String,
}

const HEADER: [&str; 14] = [
    "p",
    "a",
    "b",
    "c",
    "n",
    "exceptional",
    "structure",
    "h",
    "ell",
    "eta",
    "dim_ker",
    "eta_bar",
    "eta_bar_mod_Z",
    "relative_mod_Z",
];

impl Row {
    fn cells(&self) -> [String; 14] {
        [
            self.p.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            self.n.to_string(),
            self.exceptional.to_string(),
            self.structure.clone(),
            self.h.to_string(),
            self.ell.to_string(),
            self.eta.clone(),
            self.dim_ker.clone(),
            self.eta_bar.clone(),
            self.eta_bar_mod_z.clone(),
            self.relative_mod_z.clone(),
        ]
    }
}

fn structures(params: &ZpParams) -> Result<Vec<SpinStructure>, CliError> {
    if params.betti() <= MAX_LISTED_BETTI {
        Ok(enumerate_spin_structures(params)?)
    } else {
        Ok(structure_classes(params)?
            .into_iter()
            .map(|c| c.representative)
            .collect())
    }
}

fn rows(params: &ZpParams) -> Result<Vec<Row>, CliError> {
    let mut out = Vec::new();
    for s in structures(params)? {
        for rec in invariant_records(params, &s)? {
            out.push(Row {
                p: params.p.get(),
                a: params.a,
                b: params.b,
                c: params.c,
                n: params.n(),
                exceptional: params.is_exceptional(),
                structure: format!("[{}]", s.delta_string()),
                h: s.h,
                ell: rec.ell,
                eta: rec.eta.to_string(),
                dim_ker: rec.dim_ker.to_string(),
                eta_bar: rec.eta_bar.to_string(),
                eta_bar_mod_z: rec.eta_bar_mod_z.to_string(),
                relative_mod_z: rec.relative_mod_z.to_string(),
            });
        }
    }
    Ok(out)
}

fn write_table(out: &mut impl Write, rows: &[Row]) -> io::Result<()> {
    let cells: Vec<[String; 14]> = rows.iter().map(Row::cells).collect();
    let mut widths = HEADER.map(str::len);
    for r in &cells {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |out: &mut dyn Write, r: &[&str]| -> io::Result<()> {
        let padded: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end())
    };
    line(out, &HEADER)?;
    for r in &cells {
        line(out, &r.iter().map(String::as_str).collect::<Vec<_>>())?;
    }
    Ok(())
}

fn cmd_invariants(params: &ParamArgs, format: Format) -> Result<ExitCode, CliError> {
    let params = params.validate()?;
    let rows = rows(&params)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            if rows.is_empty() {
                w.write_record(HEADER)?;
            }
            w.flush()?;
        }
        Format::Table => write_table(&mut out, &rows)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: &str, sweep: SweepSpec, jobs: usize) -> Result<ExitCode, CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let reports: Vec<Report> =
        pool.install(|| suites.iter().map(|&s| run_suite(s, &sweep)).collect());
    let ok = reports.iter().all(Report::ok);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let [report] = reports.as_slice() {
        serde_json::to_writer_pretty(&mut out, report)?;
    } else {
        serde_json::to_writer_pretty(&mut out, &reports)?;
    }
    writeln!(out)?;
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_series(
    params: &ParamArgs,
    h: u8,
    ell: i64,
    s: f64,
    terms: u64,
) -> Result<ExitCode, CliError> {
    let params = params.validate()?;
    if !params.is_exceptional() {
        return Err(Error::NotExceptional.into());
    }
    if s.is_nan() || s <= 1.0 {
        return Err(Error::DomainError(s).into());
    }
    let form = eta_series_closed_form(&params, h, ell)?;
    let closed = eta_series_eval(&form, s)?;
    let spectral = eta_spectral_partial(&params, h, ell, s, terms)?;
    let tail = spectral_tail_bound(&params, s, terms);
    println!("closed_form {closed:.11e}");
    println!("spectral    {spectral:.11e}");
    println!("delta       {:.11e}", (closed - spectral).abs());
    println!("tail_bound  {tail:.11e}");
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct HolonomyOutput {
    p: u64,
    blocks: Vec<String>,
    matrix: Vec<Vec<i64>>,
    checks: flateta_core::HolonomyReport,
}

fn cmd_holonomy(params: &ParamArgs, out: Option<&PathBuf>) -> Result<ExitCode, CliError> {
    let params = params.validate()?;
    let m = build_holonomy(&params)?;
    let checks = holonomy_checks(&m, &params);
    let ok = checks.all_passed();
    let doc = HolonomyOutput {
        p: params.p.get(),
        blocks: holonomy_blocks(&params)
            .iter()
            .map(ToString::to_string)
            .collect(),
        matrix: m
            .to_i64_rows()
            .ok_or_else(|| CliError::Usage("matrix entries exceed i64".into()))?,
        checks,
    };
    let json = serde_json::to_string(&doc)?;
    match out {
        Some(path) => fs::write(path, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_classnumber(p: u64) -> Result<ExitCode, CliError> {
    let p = OddPrime::new(p)?;
    println!("{}", class_number(p)?);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Invariants { params, format } => cmd_invariants(&params, format),
        Command::Verify {
            suite,
            p_max,
            n_max,
            include_even_n,
            jobs,
        } => cmd_verify(
            &suite,
            SweepSpec {
                p_max,
                n_max,
                include_even_n,
            },
            jobs,
        ),
        Command::Series {
            params,
            h,
            ell,
            s,
            terms,
        } => cmd_series(&params, h, ell, s, terms),
        Command::Holonomy { params, out } => cmd_holonomy(&params, out.as_ref()),
        Command::Classnumber { p } => cmd_classnumber(p),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
