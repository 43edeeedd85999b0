use anyhow::Context;
use c1macro::error::Error;
use c1macro::mesh::SigmaStrategy;
use c1macro::oracles::{run_all, VerifyReport, SCHEMA_VERSION};
use c1macro::study::{converge, shishkin_study, ConvergeConfig, MeshFamily, Operator, RateTable, ShishkinConfig, ShishkinStudy};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "c1macro", version, about = "C1 macro-element interpolation: verification suites and convergence studies")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the duality, reproduction, continuity, trace and stability suites.
    Verify {
        #[arg(long, default_value_t = 20240611)]
        seed: u64,
        /// JSON report path; the summary always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpolation errors and observed orders on refined tensor meshes.
    Converge {
        #[arg(long, default_value = "full")]
        operator: String,
        #[arg(long, default_value = "sin_sin")]
        field: String,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        /// uniform or stretched (four times as many cells in y).
        #[arg(long, default_value = "uniform")]
        mesh: String,
        #[arg(long, default_value = "toward_corner")]
        sigma: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Composite interpolant on Shishkin meshes: norms, jumps and fitted constants.
    Shishkin {
        #[arg(long, default_value = "layer")]
        field: String,
        /// Comma-separated mesh sizes, multiples of 8.
        #[arg(long = "N", value_delimiter = ',', default_value = "8,16,32,64")]
        n: Vec<usize>,
        /// Comma-separated perturbation parameters.
        #[arg(long, value_delimiter = ',', default_value = "1e-4,1e-6,1e-8")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 3.0)]
        lambda0: f64,
        #[arg(long, default_value_t = 1.0)]
        cstar: f64,
        #[arg(long, default_value = "toward_corner")]
        sigma: String,
        /// Output path; CSV writes the fits next to it with a `_fits` suffix.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Verification(String),
    Config(anyhow::Error),
    Runtime(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Runtime(_) => 1,
            Failure::Config(_) => 2,
        }
    }
}

fn classify(e: Error) -> Failure {
    match e {
        Error::Config(_) | Error::UnknownName(_) | Error::Shishkin(_) => Failure::Config(e.into()),
        other => Failure::Runtime(other.into()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str, what: &str) -> Result<T, Failure> {
    s.parse().map_err(|e: Error| Failure::Config(anyhow::Error::new(e).context(format!("invalid {what}"))))
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_output(out: Option<&Path>, body: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())).map_err(Failure::Runtime),
        None => std::io::stdout().write_all(body).context("writing stdout").map_err(Failure::Runtime),
    }
}

fn csv_bytes(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let run = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    };
    run(&mut w).map_err(|e| Failure::Runtime(e.into()))?;
    w.into_inner().map_err(|e| Failure::Runtime(anyhow::anyhow!(e.to_string())))
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: &'a T,
}

fn json_bytes<T: Serialize>(body: &T) -> Result<Vec<u8>, Failure> {
    let mut v = serde_json::to_vec_pretty(&Versioned { schema_version: SCHEMA_VERSION, body }).map_err(|e| Failure::Runtime(e.into()))?;
    v.push(b'\n');
    Ok(v)
}

fn print_verify(report: &VerifyReport) {
    for c in &report.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{tag} {:<26} cases {:>5}  max error {:.3e}  tolerance {:.1e}", c.name, c.cases, c.max_error, c.tolerance);
    }
}

fn cmd_verify(seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let report = run_all(seed).map_err(classify)?;
    print_verify(&report);
    if let Some(p) = out {
        let mut v = serde_json::to_vec_pretty(&report).map_err(|e| Failure::Runtime(e.into()))?;
        v.push(b'\n');
        write_output(Some(p), &v)?;
    }
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Err(Failure::Verification(format!("failed suites: {}", failed.join(", "))))
    }
}

fn rate_csv(t: &RateTable) -> Result<Vec<u8>, Failure> {
    let mut header = vec!["level".to_string(), "h".to_string()];
    header.extend(t.columns.iter().cloned());
    header.extend(t.columns.iter().map(|c| format!("order_{c}")));
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.level.to_string(), num(r.h)];
            row.extend(r.errors.iter().map(|&e| num(e)));
            row.extend(r.orders.iter().map(|o| o.map(num).unwrap_or_default()));
            row
        })
        .collect();
    csv_bytes(&header, &rows)
}

#[derive(Serialize)]
struct ConvergeOutput<'a> {
    config: &'a ConvergeConfig,
    table: &'a RateTable,
    /// Least-squares orders over the last three levels.
    ls_orders: Vec<(String, f64)>,
}

fn cmd_converge(cfg: ConvergeConfig, out: Option<&Path>, format: Format) -> Result<(), Failure> {
    let t = converge(&cfg).map_err(classify)?;
    let ls_orders: Vec<(String, f64)> = t.columns.iter().enumerate().map(|(c, n)| (n.clone(), t.ls_order(c, 3))).collect();
    let body = match format {
        Format::Csv => rate_csv(&t)?,
        Format::Json => json_bytes(&ConvergeOutput { config: &cfg, table: &t, ls_orders: ls_orders.clone() })?,
    };
    write_output(out, &body)?;
    if out.is_some() {
        for (n, o) in &ls_orders {
            println!("{} {n}: least-squares order {o:.3}", cfg.operator.name());
        }
    }
    Ok(())
}

fn shishkin_csv(s: &ShishkinStudy) -> Result<(Vec<u8>, Vec<u8>), Failure> {
    let header: Vec<String> = ["epsilon", "N", "lambda", "l2", "h1_weighted", "h2_weighted", "jump_I", "jump_II", "jump_III", "jump_IV", "max_value_jump"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<String>> = s
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![num(r.epsilon), r.n.to_string(), num(r.lambda), num(r.l2), num(r.h1_weighted), num(r.h2_weighted)];
            row.extend(r.jumps.iter().map(|&j| num(j)));
            row.push(num(r.max_value_jump));
            row
        })
        .collect();
    let fit_header: Vec<String> = ["quantity", "model", "epsilon", "constant", "order", "spread"].iter().map(|s| s.to_string()).collect();
    let fit_rows: Vec<Vec<String>> = s
        .fits
        .iter()
        .flat_map(|f| {
            (0..f.eps.len()).map(move |k| vec![f.quantity.clone(), f.model.clone(), num(f.eps[k]), num(f.constants[k]), num(f.orders[k]), num(f.spread)])
        })
        .collect();
    Ok((csv_bytes(&header, &rows)?, csv_bytes(&fit_header, &fit_rows)?))
}

fn fits_path(p: &Path) -> PathBuf {
    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "shishkin".into());
    let ext = p.extension().map(|e| format!(".{}", e.to_string_lossy())).unwrap_or_default();
    p.with_file_name(format!("{stem}_fits{ext}"))
}

#[derive(Serialize)]
struct ShishkinOutput<'a> {
    config: &'a ShishkinConfig,
    #[serde(flatten)]
    study: &'a ShishkinStudy,
}

fn cmd_shishkin(cfg: ShishkinConfig, out: Option<&Path>, format: Format) -> Result<(), Failure> {
    cfg.validate().map_err(classify)?;
    let study = shishkin_study(&cfg).map_err(classify)?;
    match format {
        Format::Json => write_output(out, &json_bytes(&ShishkinOutput { config: &cfg, study: &study })?)?,
        Format::Csv => {
            let (rows, fits) = shishkin_csv(&study)?;
            match out {
                Some(p) => {
                    write_output(Some(p), &rows)?;
                    write_output(Some(&fits_path(p)), &fits)?;
                }
                None => {
                    write_output(None, &rows)?;
                    write_output(None, b"\n")?;
                    write_output(None, &fits)?;
                }
            }
        }
    }
    if out.is_some() {
        for f in &study.fits {
            println!("{} against {}: constant spread {:.2}", f.quantity, f.model, f.spread);
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Config(anyhow::anyhow!("--threads must be positive")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Runtime(e.into()))?;
    }
    match cli.command {
        Command::Verify { seed, out } => cmd_verify(seed, out.as_deref()),
        Command::Converge { operator, field, levels, mesh, sigma, out, format } => {
            let cfg = ConvergeConfig {
                operator: parse::<Operator>(&operator, "operator")?,
                field,
                levels,
                family: parse::<MeshFamily>(&mesh, "mesh family")?,
                sigma: parse::<SigmaStrategy>(&sigma, "sigma strategy")?,
            };
            cmd_converge(cfg, out.as_deref(), format)
        }
        Command::Shishkin { field, n, eps, lambda0, cstar, sigma, out, format } => {
            let cfg = ShishkinConfig { field, eps, ns: n, lambda0, c_star: cstar, sigma: parse::<SigmaStrategy>(&sigma, "sigma strategy")? };
            cmd_shishkin(cfg, out.as_deref(), format)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verification(m) => eprintln!("verification failed: {m}"),
                Failure::Config(e) => eprintln!("configuration error: {e:#}"),
                Failure::Runtime(e) => eprintln!("error: {e:#}"),
            }
            ExitCode::from(f.code())
        }
    }
}
