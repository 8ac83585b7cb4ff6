use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cayley_pack::lattice::ray_system;
use cayley_pack::scan::{self, OutputFormat, ScanCheck};
use cayley_pack::witness::{build_witness, BuildRequest, WitnessFile};
use cayley_pack::{Error, DEFAULT_BUDGET};

/// Arc-disjoint Hamiltonian path pairs in two-generated abelian Cayley digraphs.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        default_value = "table",
        env = "CAYLEY_PACK_FORMAT"
    )]
    format: Format,
    /// Write data here instead of standard output.
    #[arg(long, global = true, env = "CAYLEY_PACK_OUT")]
    out: Option<PathBuf>,
    /// Node budget per oracle call.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, env = "CAYLEY_PACK_BUDGET")]
    budget: u64,
    /// Worker threads for scans (0 = one per core).
    #[arg(long, global = true, default_value_t = 0, env = "CAYLEY_PACK_JOBS")]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hamiltonian cut set, reflection distance, caps and rays of Cay(Z_k; a, a+1).
    Cuts { k: u64, a: u64 },
    /// Slope-ordered primitive rays with multiplicities and cut values.
    Rays { k: u64, a: u64 },
    /// Sweep every valid (k, a) in a range and run the selected checks.
    Scan {
        #[arg(long, default_value_t = 3)]
        k_min: u64,
        #[arg(long, default_value_t = 200)]
        k_max: u64,
        /// Comma-separated checks (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Construct a verified witness pair. With --out the file always holds the JSON witness.
    Build {
        #[command(subcommand)]
        family: BuildFamily,
    },
    /// Re-check a witness file.
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum BuildFamily {
    /// Cay(Z_k; a, a+1).
    One { k: u64, a: u64 },
    /// Cay(Z_k; -a, a+1) with k = (2a+1)L.
    Two { a: u64, l: u64 },
    /// C_m x C_n x C_l.
    Product { m: u64, n: u64, l: u64 },
    /// Any small two-generated abelian group, by exhaustive search.
    Search {
        /// Cyclic factor orders, e.g. 2,4.
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        gen_a: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        gen_b: Vec<u64>,
    },
}

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_MALFORMED: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidGroup(_)
        | Error::InvalidGenerators(_)
        | Error::InvalidParameters(_)
        | Error::VertexOutOfRange { .. }
        | Error::NotInCutSet { .. } => EXIT_USAGE,
        Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
        Error::MalformedWitness(_) => EXIT_MALFORMED,
        Error::HostMismatch(_) | Error::Consistency(_) | Error::BuildFailed(_) => EXIT_CHECK,
    }
}

struct Outcome {
    data: Vec<u8>,
    code: u8,
}

fn ok(data: Vec<u8>) -> Outcome {
    Outcome { data, code: 0 }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let format = OutputFormat::from(cli.common.format);
    let mut buf = Vec::new();
    match &cli.command {
        Command::Cuts { k, a } => {
            scan::write_cuts_report(&scan::cuts_report(*k, *a)?, format, &mut buf)?;
            Ok(ok(buf))
        }
        Command::Rays { k, a } => {
            scan::write_rays(&ray_system(*k, *a)?, format, &mut buf)?;
            Ok(ok(buf))
        }
        Command::Scan {
            k_min,
            k_max,
            checks,
        } => {
            let checks: Vec<ScanCheck> = if checks.is_empty() {
                ScanCheck::ALL.to_vec()
            } else {
                checks.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
            };
            let started = Instant::now();
            let report = scan::scan_range(*k_min, *k_max, &checks, cli.common.jobs)?;
            scan::write_scan_rows(&report.rows, format, &mut buf)?;
            let s = &report.summary;
            eprintln!(
                "scanned {} cells in {:.2?}; {} failing",
                s.cells,
                started.elapsed(),
                s.failures
            );
            for (check, n) in &s.failures_by_check {
                eprintln!("  {check}: {n} failing cells");
            }
            eprintln!(
                "even k: pair sums k-2 only in {} cells, k only in {}, both in {}",
                s.even_k_sum_k_minus_2_only, s.even_k_sum_k_only, s.even_k_both_sums
            );
            if let Some((k, a, check)) = s.first_failure {
                eprintln!("first failure: k={k} a={a} check={check}");
                eprintln!("reproduce: cayley-pack scan --k-min {k} --k-max {k} --checks {check}");
                return Ok(Outcome {
                    data: buf,
                    code: EXIT_CHECK,
                });
            }
            Ok(ok(buf))
        }
        Command::Build { family } => {
            let req = match family {
                BuildFamily::One { k, a } => BuildRequest::One { k: *k, a: *a },
                BuildFamily::Two { a, l } => BuildRequest::Two { a: *a, l: *l },
                BuildFamily::Product { m, n, l } => BuildRequest::Product {
                    m: *m,
                    n: *n,
                    l: *l,
                },
                BuildFamily::Search {
                    orders,
                    gen_a,
                    gen_b,
                } => BuildRequest::Search {
                    orders: orders.clone(),
                    gen_a: gen_a.clone(),
                    gen_b: gen_b.clone(),
                },
            };
            let w = build_witness(&req, cli.common.budget)?;
            let check = w.verify();
            if let Some(v) = &check.first_violation {
                return Err(Error::Consistency(format!(
                    "built witness fails re-verification: {v}"
                )));
            }
            if cli.common.out.is_some() {
                buf.extend(w.to_json().bytes());
                write_witness_summary(&w, format, &mut std::io::stdout())?;
            } else {
                write_witness_summary(&w, format, &mut buf)?;
            }
            Ok(ok(buf))
        }
        Command::Verify { file } => {
            let w = WitnessFile::read(file)?;
            let check = w.verify();
            match format {
                OutputFormat::Json => {
                    let v = json!({
                        "file": file.display().to_string(),
                        "family": w.body.family,
                        "vertices": check.vertices,
                        "passed": check.passed(),
                        "first_violation": check.first_violation,
                    });
                    writeln!(buf, "{v}").map_err(write_err)?;
                }
                OutputFormat::Csv => {
                    let mut c = csv::Writer::from_writer(&mut buf);
                    let row = [
                        file.display().to_string(),
                        w.body.family.to_string(),
                        check.vertices.to_string(),
                        check.passed().to_string(),
                        check.first_violation.clone().unwrap_or_default(),
                    ];
                    c.write_record(["file", "family", "vertices", "passed", "first_violation"])
                        .map_err(write_err)?;
                    c.write_record(row).map_err(write_err)?;
                    c.flush().map_err(write_err)?;
                }
                OutputFormat::Table => match &check.first_violation {
                    None => writeln!(
                        buf,
                        "ok: {} ({} family, {} vertices)",
                        file.display(),
                        w.body.family,
                        check.vertices
                    ),
                    Some(v) => writeln!(buf, "FAILED: {}: {v}", file.display()),
                }
                .map_err(write_err)?,
            }
            if let Some(v) = &check.first_violation {
                eprintln!("verification failed: {v}");
                return Ok(Outcome {
                    data: buf,
                    code: EXIT_CHECK,
                });
            }
            Ok(ok(buf))
        }
    }
}

fn write_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidParameters(format!("write failed: {e}"))
}

fn write_witness_summary(
    w: &WitnessFile,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let b = &w.body;
    match format {
        OutputFormat::Json => {
            out.write_all(w.to_json().as_bytes()).map_err(write_err)?;
        }
        OutputFormat::Csv => {
            let mut c = csv::Writer::from_writer(out);
            c.write_record(["path", "start", "labels"])
                .map_err(write_err)?;
            for (name, p) in [("1", &b.path1), ("2", &b.path2)] {
                c.write_record([name.to_string(), p.start.to_string(), p.label_string()])
                    .map_err(write_err)?;
            }
            c.flush().map_err(write_err)?;
        }
        OutputFormat::Table => {
            let mut gens = vec![format!("{:?}", b.gen_a), format!("{:?}", b.gen_b)];
            gens.extend(b.gen_c.as_ref().map(|c| format!("{c:?}")));
            writeln!(
                out,
                "family {}  group Z{:?}  generators {}",
                b.family,
                b.group_orders,
                gens.join(" ")
            )
            .map_err(write_err)?;
            writeln!(
                out,
                "path 1  start {}  {}",
                b.path1.start,
                b.path1.label_string()
            )
            .map_err(write_err)?;
            writeln!(
                out,
                "path 2  start {}  {}",
                b.path2.start,
                b.path2.label_string()
            )
            .map_err(write_err)?;
            writeln!(out, "digest  {}", w.digest).map_err(write_err)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.common.out {
        Some(path) => {
            std::fs::write(path, &outcome.data).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(&outcome.data)
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(outcome.code)
}
