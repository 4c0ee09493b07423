//! Command-line front end.
//!
//! Every artifact starts with its configuration: a `# {json}` line for CSV,
//! a header object for JSONL, a `config` field for JSON.

pub mod checks;

use crate::asympt::grid::{tabulate, GridSpec, LawName, LawRequest};
use crate::exactalg::{parse_rational, to_f64};
use crate::genfun::{appendix_b_check, appendix_b_tables, z_single, Family, ZTable};
use crate::planarmap::{enumeration_tables, measure_hulls, MeasureConfig, DEFAULT_ENUMERATION_CAP, DEFAULT_SEED};
use checks::{CheckOptions, Level};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Exact `p/q` or decimal, as a float.
fn real(s: &str) -> Result<f64, String> {
    if s.contains('/') {
        parse_rational(s).map(|q| to_f64(&q)).map_err(|e| e.to_string())
    } else {
        s.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hullmaps",
    version,
    about = "Hull perimeters of random planar quadrangulations and triangulations"
)]
pub struct RunConfig {
    /// Worker threads; defaults to HULLMAPS_THREADS, then to the number of cores.
    #[arg(long, global = true, env = "HULLMAPS_THREADS")]
    pub threads: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact counts Z(α;d,k) by faces and hull perimeter.
    Series {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: i64,
        /// Highest power of g.
        #[arg(long)]
        order: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The twelve reference tables, or their verification.
    Counts {
        #[arg(long)]
        check_appendix_b: bool,
    },
    /// Brute-force hull perimeter histograms over all maps up to N faces.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long = "faces", short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Hull perimeters of uniform quadrangulations, one JSON line per sample.
    Sample {
        #[arg(long = "faces", short = 'n')]
        n: usize,
        /// Comma-separated distances.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// v1 is conditioned to lie at distance ≥ factor · max(d).
        #[arg(long, default_value_t = 5)]
        conditioning_factor: usize,
    },
    /// Tabulates a limit law on a grid, as CSV.
    Law {
        name: LawName,
        /// c as p/q or decimal; defaults to the family's value.
        #[arg(long, value_parser = real)]
        c: Option<f64>,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long, value_parser = real)]
        u: Option<f64>,
        #[arg(long, value_parser = real)]
        v: Option<f64>,
        #[arg(long, value_parser = real)]
        l1: Option<f64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        /// start:stop:step
        #[arg(long)]
        grid: GridSpec,
    },
    /// Runs the acceptance criteria.
    Check {
        #[arg(value_parser = clap::value_parser!(Level), default_value = "fast")]
        level: Level,
        #[arg(long, default_value_t = 2000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 200_000)]
        mc_faces: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cfg.threads {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = match &cfg.output {
        Some(path) => std::fs::File::create(path)
            .map_err(CliError::from)
            .and_then(|f| dispatch(&cfg.command, &mut std::io::BufWriter::new(f))),
        None => dispatch(&cfg.command, &mut std::io::stdout().lock()),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("hullmaps: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Series {
            family,
            d,
            k,
            order,
            format,
        } => {
            if *order < 0 {
                return Err(usage("--order must be non-negative"));
            }
            let z = z_single(*family, *d, *k, *order).map_err(usage)?;
            let config = json!({"command": "series", "family": family.short(), "d": d, "k": k, "order": order});
            write_table(out, &[z], *format, config)
        }
        Command::Counts { check_appendix_b } => {
            if *check_appendix_b {
                let r = appendix_b_check().map_err(usage)?;
                for m in &r.mismatches {
                    writeln!(out, "{m}")?;
                }
                writeln!(out, "{}/{} tables match", r.tables_matching, r.tables_checked)?;
                return if r.all_match() {
                    Ok(())
                } else {
                    Err(CliError::Mismatch(format!(
                        "{} coefficients differ",
                        r.mismatches.len()
                    )))
                };
            }
            let tables = appendix_b_tables()
                .iter()
                .map(|e| z_single(e.family, e.d, e.k, e.order))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            write_table(out, &tables, Format::Json, json!({"command": "counts"}))
        }
        Command::Enumerate { family, n, format } => {
            if *n > DEFAULT_ENUMERATION_CAP || *n == 0 {
                return Err(usage(format!(
                    "enumeration needs 1 ≤ N ≤ {DEFAULT_ENUMERATION_CAP} faces, got {n}"
                )));
            }
            let tables = enumeration_tables(*family, *n).map_err(usage)?;
            let config = json!({"command": "enumerate", "family": family.short(), "faces": n});
            write_table(out, &tables, *format, config)
        }
        Command::Sample {
            n,
            d,
            samples,
            seed,
            conditioning_factor,
        } => {
            let mut cfg = MeasureConfig::new(*n, d.clone(), *samples, *seed);
            cfg.conditioning_factor = *conditioning_factor;
            let batch = measure_hulls(&cfg).map_err(usage)?;
            out.write_all(batch.to_jsonl().as_bytes())?;
            Ok(())
        }
        Command::Law {
            name,
            c,
            family,
            u,
            v,
            l1,
            d,
            k,
            grid,
        } => {
            let c = match (c, family) {
                (Some(c), _) => *c,
                (None, Some(f)) => f.c_f64(),
                (None, None) => return Err(usage("law needs --c or --family")),
            };
            let req = LawRequest {
                law: *name,
                family: *family,
                c,
                u: *u,
                v: *v,
                l1: *l1,
                d: *d,
                k: *k,
                grid: *grid,
            };
            let table = tabulate(&req).map_err(usage)?;
            out.write_all(table.to_csv().as_bytes())?;
            Ok(())
        }
        Command::Check {
            level,
            mc_samples,
            mc_faces,
            seed,
        } => {
            let opts = CheckOptions {
                level: *level,
                mc_samples: *mc_samples,
                mc_faces: *mc_faces,
                seed: *seed,
            };
            writeln!(out, "# {}", serde_json::to_string(&opts).expect("options serialize"))?;
            let mut io = Ok(());
            let outcomes = checks::run_checks(&opts, |o| {
                if io.is_ok() {
                    io = writeln!(out, "{o}").and_then(|_| out.flush());
                }
            });
            io?;
            let failed: Vec<String> = outcomes
                .iter()
                .filter(|o| !o.passed() && o.deterministic)
                .map(|o| o.id.to_string())
                .collect();
            let passed = outcomes.iter().filter(|o| o.passed()).count();
            writeln!(out, "{passed}/{} criteria pass", outcomes.len())?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!("criteria {} failed", failed.join(", "))))
            }
        }
    }
}

fn write_table(
    out: &mut dyn Write,
    tables: &[ZTable],
    format: Format,
    config: serde_json::Value,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let body = json!({"config": config, "tables": tables.iter().map(ZTable::to_json).collect::<Vec<_>>()});
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&body).expect("tables serialize")
            )?;
        }
        Format::Csv => {
            writeln!(out, "# {config}")?;
            writeln!(out, "{}", ZTable::csv_header())?;
            for t in tables {
                for row in t.to_csv_rows() {
                    writeln!(out, "{row}")?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(args: &[&str]) -> Result<String, CliError> {
        let cfg = RunConfig::try_parse_from(std::iter::once("hullmaps").chain(args.iter().copied())).map_err(usage)?;
        let mut buf = Vec::new();
        dispatch(&cfg.command, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn series_json() {
        let out = capture(&["series", "--family", "quad", "--d", "2", "--k", "3", "--order", "3"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let coeffs = &v["tables"][0]["coefficients"];
        assert_eq!(coeffs[0], json!({"N": 2, "terms": [{"L": 2, "count": 1}]}));
        assert_eq!(coeffs[1], json!({"N": 3, "terms": [{"L": 2, "count": 15}]}));
        assert_eq!(v["config"]["family"], "quad");
    }

    #[test]
    fn appendix_b_verification() {
        let out = capture(&["counts", "--check-appendix-b"]).unwrap();
        assert_eq!(out.trim(), "12/12 tables match");
    }

    #[test]
    fn law_csv() {
        let out = capture(&["law", "pinf", "--c", "1/3", "--grid", "0:5:0.01"]).unwrap();
        let mut lines = out.lines();
        assert!(lines.next().unwrap().starts_with("# {"));
        assert_eq!(lines.next(), Some("L,value"));
        assert_eq!(lines.count(), 501);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(
            capture(&["series", "--family", "quad", "--d", "3", "--k", "3", "--order", "2"])
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            capture(&["law", "pu", "--c", "1/2", "--grid", "0:1:0.5"])
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            capture(&["enumerate", "--family", "tri", "-n", "9"])
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(run(["hullmaps", "law", "nope", "--grid", "0:1:1"]), 2);
        assert!(real("1/0").is_err());
        assert_eq!(real("1/4").unwrap(), 0.25);
    }

    #[test]
    fn deterministic_artifacts() {
        let args = [
            "sample",
            "-n",
            "300",
            "--d",
            "2,3",
            "--samples",
            "6",
            "--seed",
            "9",
            "--conditioning-factor",
            "2",
        ];
        let a = capture(&args).unwrap();
        assert_eq!(a, capture(&args).unwrap());
        assert_eq!(a.lines().count(), 7);
        let enumerated = capture(&["enumerate", "--family", "quad", "-n", "3"]).unwrap();
        assert!(enumerated.lines().nth(1) == Some("family,d,k,N,L,count"));
    }
}
