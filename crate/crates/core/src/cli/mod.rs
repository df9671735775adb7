//! The `ped` command line: `estimate`, `verify` and `sweep`.
//!
//! Exit codes: 0 on success, 1 when a verification assertion fails or an
//! estimate has no data, 2 on bad arguments or input files.

mod args;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Parser;

pub use args::{parse_eps_list, parse_n_range, Cli, Command, Format, KPolicyArg};

use crate::error::{Error, Result};
use crate::estimation::{
    estimate, estimate_topological_s_entropy, summary_json, write_csv, Estimate, EstimationGrid,
    KPolicy,
};
use crate::systems::{make_power, make_product, resolve, Point, SystemModel};
use crate::verify::{run_all, run_suite, Corpus, Suite, VerifyConfig};

/// Entry point of the binary; reads `std::env::args` and `PED_THREADS`.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation, writing normal output to `out` and diagnostics to
/// `err`; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::Parse { .. }
        | Error::Domain(_)
        | Error::Io(_)
        | Error::Csv(_) => 2,
        Error::NoData(_)
        | Error::InsufficientData(_)
        | Error::SampleTooCoarse(_)
        | Error::TooDense { .. } => 1,
    }
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("PED_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| {
                Error::Config(format!("PED_THREADS must be a positive integer, got {v:?}"))
            }),
        Err(_) => Ok(None),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let threads = threads_from_env()?;
    match cli.command {
        Command::Estimate(a) => {
            let (id, sys) = system_from(&a.system, &a.product, &a.power)?;
            let grid = grid_from(&a.grid, &sys, threads)?;
            let est = if a.topological {
                estimate_topological_s_entropy(&sys, &id, &grid, None)?
            } else {
                estimate(&sys, &id, &grid)?
            };
            warn_near_ties(&est, err)?;
            write_outputs(&est, a.out.as_deref(), a.format, out)?;
            // Keep stdout machine-readable when the data goes there.
            if a.out.is_some() {
                print_summary(&est, out)?;
            } else {
                print_summary(&est, err)?;
            }
            Ok(0)
        }
        Command::Verify(a) => {
            let mut cfg = VerifyConfig {
                threads,
                ..VerifyConfig::default()
            };
            if let Some(path) = &a.corpus {
                cfg.corpus = Corpus::load(path)?;
            }
            if let Some(m) = &a.m {
                cfg.m_values = args::parse_exponents(m)?;
            }
            if let Some(t) = a.tau {
                cfg.tau = t;
            }
            if let Some(b) = a.budget {
                cfg.solver.budget = b;
            }
            let reports = if a.suite == "all" {
                run_all(&cfg)?
            } else {
                vec![run_suite(a.suite.parse::<Suite>()?, &cfg)?]
            };
            for r in &reports {
                write!(out, "{r}")?;
            }
            if let Some(path) = &a.out {
                let f = BufWriter::new(File::create(path)?);
                serde_json::to_writer_pretty(f, &reports).map_err(|e| Error::Io(e.into()))?;
            }
            let failed = reports.iter().any(|r| !r.passed());
            Ok(i32::from(failed))
        }
        Command::Sweep(a) => {
            let mut rows = Vec::new();
            let mut csv = Vec::new();
            for expr in a
                .systems
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
            {
                let sys = resolve(expr)?;
                let grid = grid_from(&a.grid, &sys, threads)?;
                let pre = estimate(&sys, expr, &grid);
                let top = estimate_topological_s_entropy(&sys, expr, &grid, None);
                if let Ok(est) = &pre {
                    warn_near_ties(est, err)?;
                    let mut buf = Vec::new();
                    write_csv(est, &mut buf)?;
                    let body = String::from_utf8_lossy(&buf);
                    // one header for the combined file
                    let skip = usize::from(!csv.is_empty());
                    for line in body.lines().skip(skip) {
                        writeln!(csv, "{line}")?;
                    }
                }
                rows.push((expr.to_string(), pre, top));
            }
            if let Some(path) = &a.out {
                std::fs::write(path, &csv)?;
            }
            print_sweep(&rows, out)?;
            Ok(0)
        }
    }
}

fn system_from(
    system: &Option<String>,
    product: &Option<String>,
    power: &Option<String>,
) -> Result<(String, SystemModel)> {
    match (system, product, power) {
        (Some(s), None, None) => Ok((s.clone(), resolve(s)?)),
        (None, Some(p), None) => {
            let (a, b) = p
                .split_once(',')
                .ok_or_else(|| Error::Config("--product expects A,B".into()))?;
            Ok((format!("{a}*{b}"), make_product(resolve(a)?, resolve(b)?)))
        }
        (None, None, Some(p)) => {
            let (a, m) = p
                .rsplit_once(',')
                .ok_or_else(|| Error::Config("--power expects SYSTEM,M".into()))?;
            let m: usize = m
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad power exponent {m:?}")))?;
            Ok((format!("{a}^{m}"), make_power(resolve(a)?, m)?))
        }
        (None, None, None) => Err(Error::Config(
            "one of --system, --product or --power is required".into(),
        )),
        _ => Err(Error::Config(
            "--system, --product and --power are mutually exclusive".into(),
        )),
    }
}

fn grid_from(
    a: &args::GridArgs,
    sys: &SystemModel,
    threads: Option<usize>,
) -> Result<EstimationGrid> {
    let mut grid = EstimationGrid::new(parse_n_range(&a.n)?, parse_eps_list(&a.eps)?);
    grid.k_policy = match a.k_policy {
        KPolicyArg::Saturate => KPolicy::Saturate,
        KPolicyArg::Double => KPolicy::Double,
        KPolicyArg::List => {
            let ks =
                a.k.as_deref()
                    .ok_or_else(|| Error::Config("--k-policy list needs --k".into()))?;
            KPolicy::List(parse_n_range(ks)?)
        }
    };
    if let Some(s) = &a.s {
        grid.s_values = args::parse_f64_list(s)?;
    }
    if let Some(b) = a.budget {
        grid.solver.budget = b;
    }
    if let Some(t) = a.threshold {
        grid.solver.exact_threshold = t;
    }
    if let Some(c) = a.max_candidates {
        grid.max_candidates = c;
    }
    if let Some(p) = a.max_pairs {
        grid.solver.max_pairs = p;
    }
    if let Some(t) = a.tau {
        grid.tau = t;
    }
    if a.no_spanning {
        grid.spanning_proxy = false;
    }
    if let Some(path) = &a.samples {
        let text = std::fs::read_to_string(path)?;
        let pts: Vec<Point> = serde_json::from_str(&text)?;
        for p in &pts {
            if !sys.contains(p) {
                return Err(Error::Config(format!(
                    "sample point {p} is not in the system"
                )));
            }
        }
        grid = grid.with_samples(pts);
    }
    grid.threads = threads;
    grid.validate()?;
    Ok(grid)
}

fn warn_near_ties(est: &Estimate, err: &mut dyn Write) -> Result<()> {
    let d = &est.diagnostics;
    if d.near_ties > 0 {
        writeln!(
            err,
            "warning: {} distance comparisons fell within 2^-40 of eps; counts at those scales may depend on rounding",
            d.near_ties
        )?;
    }
    if d.approximate_records > 0 {
        writeln!(
            err,
            "warning: {} (n, eps) suprema are bounds, not exact counts (solver budget)",
            d.approximate_records
        )?;
    }
    if d.truncated_points > 0 {
        writeln!(
            err,
            "warning: {} (n, eps) points left out of the fits because a needed depth exceeded --max-candidates",
            d.truncated_points
        )?;
    }
    Ok(())
}

fn write_outputs(
    est: &Estimate,
    out_path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match (out_path, format) {
        (None, Format::Csv) => write_csv(est, &mut *out),
        (None, Format::Json) | (None, Format::Both) => {
            writeln!(out, "{}", summary_json(est)?)?;
            Ok(())
        }
        (Some(path), Format::Csv) => write_csv(est, File::create(path)?),
        (Some(path), Format::Json) => {
            std::fs::write(path, summary_json(est)? + "\n")?;
            Ok(())
        }
        (Some(path), Format::Both) => {
            let stem = strip_known_extension(path);
            write_csv(est, File::create(stem.with_extension("csv"))?)?;
            std::fs::write(stem.with_extension("json"), summary_json(est)? + "\n")?;
            Ok(())
        }
    }
}

fn strip_known_extension(path: &Path) -> PathBuf {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") | Some("json") => path.with_extension(""),
        _ => path.to_path_buf(),
    }
}

fn print_summary(est: &Estimate, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "system {}", est.system_id)?;
    writeln!(
        out,
        "{:>8} {:>10} {:>10} {:>12} {:>8}",
        "eps", "h", "h/log2", "a_N/N", "points"
    )?;
    for e in &est.entropy.per_eps {
        writeln!(
            out,
            "{:>8} {:>10.4} {:>10.4} {:>12.4} {:>8}",
            e.eps.to_string(),
            e.value,
            e.value_log2,
            e.ratio_at_max_n,
            e.points
        )?;
    }
    match &est.dimension {
        Some(d) => writeln!(
            out,
            "dimension {:.4} (spread {:.4} across eps)",
            d.slope, d.spread
        )?,
        None => writeln!(out, "dimension: not enough window lengths (need 3)")?,
    }
    for p in est
        .curve
        .iter()
        .filter(|p| Some(p.eps) == est.entropy.per_eps.last().map(|e| e.eps))
    {
        writeln!(out, "s = {:<5} value {:>10.4}  {}", p.s, p.value, p.class)?;
    }
    Ok(())
}

fn print_sweep(
    rows: &[(String, Result<Estimate>, Result<Estimate>)],
    out: &mut dyn Write,
) -> Result<()> {
    writeln!(
        out,
        "{:<28} {:>10} {:>10} {:>10} {:>10}",
        "system", "h_pre", "D_pre", "h_top", "D_top"
    )?;
    let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
    for (id, pre, top) in rows {
        let parts = |r: &Result<Estimate>| match r {
            Ok(e) => (Some(e.entropy.value), e.dimension.as_ref().map(|d| d.slope)),
            Err(_) => (None, None),
        };
        let (h, d) = parts(pre);
        let (ht, dt) = parts(top);
        writeln!(
            out,
            "{:<28} {:>10} {:>10} {:>10} {:>10}",
            id,
            fmt(h),
            fmt(d),
            fmt(ht),
            fmt(dt)
        )?;
        for (label, r) in [("preimage", pre), ("topological", top)] {
            if let Err(e) = r {
                writeln!(out, "  {label}: {e}")?;
            }
        }
    }
    Ok(())
}
