use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;

use wittrig::cochain::Coefficients;
use wittrig::cohomology::{central_extension_dim, cohomology_dim_with, CohomologyError};
use wittrig::deform::{conjugate, jacobi_defect, trivialize, DeformError, DeformedBracket, Equivalence, Trivialization};
use wittrig::replay::{final_solve, run_replay, ReplayError};
use wittrig::report::{self, emit_report, Format, Report};
use wittrig::scalar::{self, Scalar};
use wittrig::symbolic::{SymbolicValue, Tag};
use wittrig::{check_jacobi, load_algebra, make_virasoro, make_witt, GradedLieAlgebra, Window};

const OUT_DIR_VAR: &str = "WITTRIG_OUT_DIR";

/// Exact windowed cohomology and rigidity checks for the Witt and Virasoro
/// algebras.
#[derive(Parser)]
#[command(name = "wittrig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout. Relative paths resolve
    /// against $WITTRIG_OUT_DIR when it is set.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Stable dimension of a weight component of windowed cohomology.
    Cohomology {
        /// witt, virasoro, or a path to an algebra document.
        #[arg(long, default_value = "witt")]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        weight: i64,
        #[arg(long, default_value = "-12:12", allow_hyphen_values = true)]
        window: Window,
        #[arg(long, default_value_t = 4)]
        margin: i64,
        #[arg(long, value_enum, default_value = "adjoint")]
        coefficients: CoefficientsArg,
        /// Expected dim_stable; a mismatch exits with status 1.
        #[arg(long)]
        expect: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Central extensions of the Witt algebra (trivial coefficients, weight 0).
    CentralExtension {
        #[arg(long, default_value = "-12:12", allow_hyphen_values = true)]
        window: Window,
        #[arg(long, default_value_t = 4)]
        margin: i64,
        /// Expected dim_stable; a mismatch exits with status 1.
        #[arg(long)]
        expect: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Symbolic replay of the weight-0 argument on the fact table.
    Replay {
        #[arg(long = "K", default_value_t = 12)]
        k: i64,
        /// Emit only the markdown fact table.
        #[arg(long)]
        emit_table: bool,
        /// Emit only the derivation log.
        #[arg(long, conflicts_with = "emit_table")]
        emit_log: bool,
        /// Expected dimension of the solution space; a mismatch exits with status 1.
        #[arg(long)]
        expect: Option<usize>,
        /// Compare the emitted table or log with this file byte for byte.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Extra assumption `a_k=value` added before the final solve.
        #[arg(long, value_parser = parse_assumption, allow_hyphen_values = true)]
        assume: Vec<(i64, Scalar)>,
        #[command(flatten)]
        out: Output,
    },
    /// Jacobi identity on every triple of window generators.
    Jacobi {
        #[arg(long, default_value = "witt")]
        algebra: String,
        #[arg(long, default_value = "-12:12", allow_hyphen_values = true)]
        window: Window,
        /// Expected number of defective triples; a mismatch exits with status 1.
        #[arg(long)]
        expect: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Per-order Jacobi defects and order-by-order trivialization.
    Deform {
        #[arg(long, default_value = "witt")]
        algebra: String,
        /// Deformation document to read.
        #[arg(long, required_unless_present = "random_seed")]
        input: Option<PathBuf>,
        /// Instead of reading a document, conjugate the trivial deformation by
        /// a random unipotent equivalence drawn from this seed.
        #[arg(long, conflicts_with = "input")]
        random_seed: Option<u64>,
        /// Order of the random deformation.
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Window of the random deformation.
        #[arg(long, default_value = "-12:12", allow_hyphen_values = true)]
        window: Window,
        /// Core shrinkage per order.
        #[arg(long, default_value_t = 2)]
        margin: i64,
        #[arg(long, value_enum)]
        expect: Option<DeformExpect>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoefficientsArg {
    Adjoint,
    Trivial,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DeformExpect {
    Trivialized,
    Obstructed,
    Rejected,
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Contradiction(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Contradiction(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) | Failure::Contradiction(m) => m,
        }
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ReplayError> for Failure {
    fn from(e: ReplayError) -> Self {
        match e {
            ReplayError::Contradiction { .. } => Failure::Contradiction(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<DeformError> for Failure {
    fn from(e: DeformError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_assumption(s: &str) -> Result<(i64, Scalar), String> {
    let (lhs, rhs) = s.split_once('=').ok_or("expected a_k=value")?;
    let k = lhs
        .trim()
        .strip_prefix("a_")
        .map(|x| x.trim_start_matches('{').trim_end_matches('}'))
        .and_then(|x| x.parse().ok())
        .ok_or("expected a_k on the left")?;
    let v = scalar::parse(rhs.trim()).map_err(|e| e.to_string())?;
    Ok((k, v))
}

fn resolve_algebra(selector: &str) -> Result<GradedLieAlgebra, Failure> {
    match selector {
        "witt" => Ok(make_witt()),
        "virasoro" => Ok(make_virasoro()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read algebra file {path}: {e}")))?;
            load_algebra(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
        }
    }
}

fn check_bounds(window: &Window, margin: i64, finite: bool) -> Result<(), Failure> {
    if !finite && !(window.lo < 0 && 0 < window.hi) {
        return Err(Failure::Usage(format!("window {window} must satisfy lo < 0 < hi")));
    }
    if margin < 0 || 2 * margin >= window.hi - window.lo {
        return Err(Failure::Usage(format!("margin {margin} must be nonnegative and below half the width of {window}")));
    }
    Ok(())
}

fn destination(out: &Output, default_name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_VAR).map(PathBuf::from);
    match (&out.output, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(d)) => Some(d.join(format!("{default_name}.{}", out.format.extension()))),
        (None, None) => None,
    }
}

fn write_document(text: &str, dest: Option<&Path>) -> Result<(), Failure> {
    match dest {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", parent.display())))?;
            }
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(report: &Report, out: &Output, name: &str) -> Result<(), Failure> {
    write_document(&emit_report(report, out.format), destination(out, name).as_deref())
}

fn expect_eq(what: &str, expected: Option<usize>, actual: usize) -> Result<(), Failure> {
    match expected {
        Some(e) if e != actual => Err(Failure::Mismatch(format!("{what}: expected {e}, got {actual}"))),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cohomology {
            algebra,
            degree,
            weight,
            window,
            margin,
            coefficients,
            expect,
            out,
        } => {
            let alg = resolve_algebra(&algebra)?;
            check_bounds(&window, margin, alg.is_finite())?;
            let coeffs = match coefficients {
                CoefficientsArg::Adjoint => Coefficients::Adjoint,
                CoefficientsArg::Trivial => Coefficients::Trivial,
            };
            let r = cohomology_dim_with(&alg, degree, weight, window, margin, coeffs)?;
            emit(&report::cohomology_report(&r), &out, "cohomology")?;
            expect_eq("dim_stable", expect, r.dim_stable)
        }
        Command::CentralExtension { window, margin, expect, out } => {
            check_bounds(&window, margin, false)?;
            let r = central_extension_dim(window, margin)?;
            emit(&report::central_report(&make_witt(), &r), &out, "central-extension")?;
            expect_eq("dim_stable", expect, r.dim_stable)
        }
        Command::Replay {
            k,
            emit_table,
            emit_log,
            expect,
            golden,
            assume,
            out,
        } => {
            let mut r = run_replay(k)?;
            if !assume.is_empty() {
                let mut rels = r.table.relations().clone();
                for (k, v) in &assume {
                    rels.push(SymbolicValue::unknown(*k).sub(&SymbolicValue::constant(v.clone())), Tag::Assumed, "assumed");
                }
                r.verdict = final_solve(&r.table, &rels)?;
            }
            let verdict = if r.verdict.all_zero() {
                "all a_k = 0".to_string()
            } else {
                format!("{} free directions", r.verdict.dim)
            };
            if emit_table || emit_log {
                let doc = if emit_table {
                    r.snapshot.emit_table()
                } else {
                    r.table.log().iter().map(|e| format!("{e}\n")).collect()
                };
                write_document(&doc, destination(&out, if emit_table { "replay-table" } else { "replay-log" }).as_deref())?;
                eprintln!("verdict: {verdict} (K = {k})");
                if let Some(path) = golden {
                    let want = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                    if want != doc {
                        return Err(Failure::Mismatch(format!("output differs from {}", path.display())));
                    }
                }
            } else {
                if golden.is_some() {
                    return Err(Failure::Usage("--golden needs --emit-table or --emit-log".into()));
                }
                emit(&report::replay_report(&r), &out, "replay")?;
            }
            expect_eq("solution dimension", expect, r.verdict.dim)
        }
        Command::Jacobi {
            algebra,
            window,
            expect,
            out,
        } => {
            let alg = resolve_algebra(&algebra)?;
            let r = check_jacobi(&alg, &window);
            emit(&report::jacobi_report(&alg, &r), &out, "jacobi")?;
            expect_eq("defective triples", expect, r.defects.len())
        }
        Command::Deform {
            algebra,
            input,
            random_seed,
            order,
            window,
            margin,
            expect,
            out,
        } => {
            let alg = resolve_algebra(&algebra)?;
            let d = match (input, random_seed) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                    DeformedBracket::parse(&alg, &text)?
                }
                (None, Some(seed)) => {
                    let mut rng = StdRng::seed_from_u64(seed);
                    let phi = Equivalence::random(&alg, order, window, &[-1, 0, 1], &mut rng, 0.6, 3);
                    conjugate(&DeformedBracket::trivial(&alg, order, window), &phi)?
                }
                (None, None) => return Err(Failure::Usage("deform needs --input or --random-seed".into())),
            };
            let defects = jacobi_defect(&d);
            let outcome = if defects.is_clean() { Some(trivialize(&d, margin)?) } else { None };
            emit(&report::deform_report(&alg, &defects, outcome.as_ref()), &out, "deform")?;
            let actual = match &outcome {
                None => DeformExpect::Rejected,
                Some(Trivialization::Obstructed { .. }) => DeformExpect::Obstructed,
                Some(t) if t.is_trivialized() => DeformExpect::Trivialized,
                Some(_) => return Err(Failure::Mismatch("trivialization did not verify on the core".into())),
            };
            match expect {
                Some(e) if e != actual => Err(Failure::Mismatch(format!(
                    "expected {}, got {}",
                    e.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
                    actual.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
                ))),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let msg = e.to_string();
                let first = msg.lines().next().unwrap_or("usage error");
                eprintln!("{first}");
                return ExitCode::from(2);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("wittrig: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
