use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use atqc_core::catalog::{self, emit_curves, emit_tables, family_params, favor_z, swap_dual};
use atqc_core::complex::{load_complex, save_complex, SurfaceComplex};
use atqc_core::distance::{checked_distances, OracleDistances, DEFAULT_ORACLE_CEILING};
use atqc_core::geometry::SchlafliPair;
use atqc_core::homology::{betti1, boundary_matrices};
use atqc_core::stabilizer::{
    build_css, export_checks, verify_stabilizers, CheckFormat, CheckMatrix, StabilizerReport,
};
use atqc_core::torus::{
    build_hex_torus, build_square_torus, hex_census_check, HexTorusSpec, SquareTorusSpec,
};
use atqc_core::{DistanceMethod, Error, GeometryClass};

const EXIT_INPUT: u8 = 2;
const EXIT_DISCREPANCY: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "atqc",
    version,
    about = "Asymmetric topological quantum codes on tessellated surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify {p,q} as spherical, euclidean or hyperbolic.
    Classify(PairArgs),
    /// Parameters [[n, k]] and distance bounds of {p,q} at genus g.
    Params {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        g: u32,
        /// Report the dual tessellation instead (exchanges d_x and d_z).
        #[arg(long, conflicts_with = "favor_z")]
        swap: bool,
        /// Swap only if that makes d_z the larger distance.
        #[arg(long)]
        favor_z: bool,
    },
    /// Build a torus complex and write it as JSON.
    Build(BuildArgs),
    /// Validate a complex and its stabilizer algebra.
    Check(InputArgs),
    /// Rewrite a complex in canonical JSON (dense ids, normalized face cycles).
    Normalize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact d_x and d_z, cross-checked by exhaustive enumeration for small n.
    Distance {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, env = "ATQC_ORACLE_CEILING", default_value_t = DEFAULT_ORACLE_CEILING)]
        oracle_ceiling: usize,
    },
    /// Write a check matrix (alist, dense-text) or the whole code (json).
    Export {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_parser = parse_format)]
        format: CheckFormat,
        #[arg(long, value_enum, default_value = "hz")]
        matrix: MatrixArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate both parameter tables as CSV.
    Table(OutArgs),
    /// Per-genus distance and rate curves as CSV.
    Curves {
        /// Pairs such as 7,3 (repeatable).
        #[arg(long = "pair", value_parser = parse_pair, required = true, num_args = 1..)]
        pairs: Vec<SchlafliPair>,
        #[arg(long, default_value_t = 2)]
        g_min: u32,
        #[arg(long, default_value_t = 10)]
        g_max: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare hexagonal-torus counts with the area-based census.
    HexCensus(HexArgs),
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u32,
}

#[derive(Args)]
#[command(group(ArgGroup::new("shape").required(true).args(["square", "hex_apothem", "hex_edge"])))]
struct BuildArgs {
    /// l x l square torus.
    #[arg(long)]
    square: Option<u32>,
    /// Hexagonal torus with fundamental side 2 xi times the apothem.
    #[arg(long)]
    hex_apothem: Option<u32>,
    /// Hexagonal torus with fundamental side lambda times the edge; 3 must divide lambda.
    #[arg(long)]
    hex_edge: Option<u32>,
    /// Emit the dual complex.
    #[arg(long)]
    dual: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("scale").required(true).args(["xi", "lambda"])))]
struct HexArgs {
    #[arg(long)]
    xi: Option<u32>,
    #[arg(long)]
    lambda: Option<u32>,
}

#[derive(Args)]
struct InputArgs {
    /// Complex JSON file; `-` or omitted reads stdin.
    file: Option<PathBuf>,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum MatrixArg {
    Hx,
    Hz,
}

fn parse_format(s: &str) -> Result<CheckFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pair(s: &str) -> Result<SchlafliPair, String> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let (p, q) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected p,q, got '{s}'"))?;
    let p = p.trim().parse().map_err(|_| format!("bad p in '{s}'"))?;
    let q = q.trim().parse().map_err(|_| format!("bad q in '{s}'"))?;
    SchlafliPair::new(p, q).map_err(|e| e.to_string())
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            // a closed downstream pipe is not a failure of ours
            Error::Io(io) if io.kind() == io::ErrorKind::BrokenPipe => 0,
            Error::Json(j) if j.io_error_kind() == Some(io::ErrorKind::BrokenPipe) => 0,
            _ if e.is_io() => EXIT_IO,
            Error::Stabilizer(_) | Error::LogicalDimension { .. } | Error::Construction(_) => {
                EXIT_DISCREPANCY
            }
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

type CmdResult = Result<(), Failure>;

fn read_complex(input: &InputArgs) -> Result<SurfaceComplex, Failure> {
    match input.file.as_deref() {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => {
            let file = File::open(p).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("{}: {e}", p.display()),
            })?;
            Ok(load_complex(BufReader::new(file))?)
        }
    }
}

fn read_stdin() -> Result<SurfaceComplex, Failure> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text)?;
    Ok(atqc_core::complex::load_complex_str(&text)?)
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", p.display()),
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn print_json<T: Serialize>(value: &T) -> CmdResult {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(Error::from)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct ClassifyOutput {
    pair: String,
    class: GeometryClass,
    key: i64,
}

#[derive(Serialize)]
struct CheckOutput {
    label: String,
    genus: u32,
    vertices: usize,
    edges: usize,
    faces: usize,
    euler_characteristic: i64,
    betti1: usize,
    boundary_of_boundary_zero: bool,
    regular_type: Option<(usize, usize)>,
    degenerate_faces: Vec<usize>,
    stabilizers: StabilizerReport,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct DistanceOutput {
    label: String,
    n: usize,
    k: usize,
    d_x: usize,
    d_z: usize,
    witness_x: Vec<usize>,
    witness_z: Vec<usize>,
    method: DistanceMethod,
    oracle: Option<OracleDistances>,
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify(args) => {
            let pair = SchlafliPair::new(args.p, args.q)?;
            print_json(&ClassifyOutput {
                pair: pair.to_string(),
                class: pair.classify(),
                key: pair.key(),
            })
        }
        Command::Params {
            pair,
            g,
            swap,
            favor_z: favor,
        } => {
            let params = family_params(SchlafliPair::new(pair.p, pair.q)?, g)?;
            let params = if swap {
                swap_dual(&params)
            } else if favor {
                favor_z(&params)
            } else {
                params
            };
            print_json(&params)
        }
        Command::Build(args) => {
            let c = if let Some(l) = args.square {
                build_square_torus(SquareTorusSpec::new(l)?)?
            } else if let Some(xi) = args.hex_apothem {
                build_hex_torus(HexTorusSpec::apothem_scaled(xi)?)?
            } else {
                build_hex_torus(HexTorusSpec::edge_scaled(
                    args.hex_edge.expect("clap group"),
                )?)?
            };
            let c = if args.dual { c.dual()? } else { c };
            let mut out = sink(args.out.as_deref())?;
            save_complex(&c, &mut out)?;
            out.flush()?;
            Ok(())
        }
        Command::Check(input) => {
            let c = read_complex(&input)?;
            let chain = boundary_matrices(&c);
            let b1 = betti1(&c)?;
            let code = build_css(&c)?;
            let report = verify_stabilizers(&code)?;
            print_json(&CheckOutput {
                label: c.label().to_string(),
                genus: c.genus(),
                vertices: c.num_vertices(),
                edges: c.num_edges(),
                faces: c.num_faces(),
                euler_characteristic: c.euler_characteristic(),
                betti1: b1,
                boundary_of_boundary_zero: chain.is_exact_pair(),
                regular_type: c.regular_type(),
                degenerate_faces: c.degenerate_faces(),
                stabilizers: report,
                warnings: code.warnings,
            })
        }
        Command::Normalize { input, out } => {
            let c = read_complex(&input)?;
            let mut out = sink(out.as_deref())?;
            save_complex(&c, &mut out)?;
            out.flush()?;
            Ok(())
        }
        Command::Distance {
            input,
            oracle_ceiling,
        } => {
            let c = read_complex(&input)?;
            let code = build_css(&c)?;
            let checked = checked_distances(&c, &code, oracle_ceiling)?;
            let agrees = checked.agrees();
            let r = checked.result;
            print_json(&DistanceOutput {
                label: c.label().to_string(),
                n: code.n,
                k: code.k,
                d_x: r.d_x,
                d_z: r.d_z,
                witness_x: r.witness_x,
                witness_z: r.witness_z,
                method: r.method,
                oracle: checked.oracle,
            })?;
            if agrees {
                Ok(())
            } else {
                let o = checked.oracle.expect("disagreement implies an oracle run");
                Err(Failure {
                    code: EXIT_DISCREPANCY,
                    message: format!(
                        "search (d_x={}, d_z={}) disagrees with oracle (d_x={}, d_z={})",
                        r.d_x, r.d_z, o.d_x, o.d_z
                    ),
                })
            }
        }
        Command::Export {
            input,
            format,
            matrix,
            out,
        } => {
            let c = read_complex(&input)?;
            let code = build_css(&c)?;
            let which = match matrix {
                MatrixArg::Hx => CheckMatrix::Hx,
                MatrixArg::Hz => CheckMatrix::Hz,
            };
            let mut out = sink(out.as_deref())?;
            export_checks(&code, format, which, &mut out)?;
            out.flush()?;
            Ok(())
        }
        Command::Table(out) => {
            let mut out = sink(out.out.as_deref())?;
            emit_tables(&mut out)?;
            out.flush()?;
            Ok(())
        }
        Command::Curves {
            pairs,
            g_min,
            g_max,
            out,
        } => {
            if g_min > g_max
                || !catalog::CURVE_GENUS_RANGE.contains(&g_min)
                || !catalog::CURVE_GENUS_RANGE.contains(&g_max)
            {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: format!("genus range {g_min}..={g_max} must lie within 2..=64"),
                });
            }
            let mut out = sink(out.out.as_deref())?;
            emit_curves(&pairs, g_min..=g_max, &mut out)?;
            out.flush()?;
            Ok(())
        }
        Command::HexCensus(args) => {
            let spec = match (args.xi, args.lambda) {
                (Some(xi), _) => HexTorusSpec::apothem_scaled(xi)?,
                (None, Some(lambda)) => HexTorusSpec::edge_scaled(lambda)?,
                (None, None) => unreachable!("clap group"),
            };
            print_json(&hex_census_check(spec)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("atqc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
