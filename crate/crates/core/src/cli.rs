//! The `delta-cat` command line.
//!
//! Exit codes: 0 success, 1 some law failed, 2 usage or I/O error, 3 a
//! syntax, type or evaluation error.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diff::derive_n;
use crate::laws::{self, check_law, check_law_for_term, check_suite, LawConfig, LawReport, Suite};
use crate::model::{Model, Semantics, Tolerance};
use crate::syntax::{model_directive, parse_document, parse_value, TermDocument};
use crate::tangent::{kleisli_compose, KleisliMap};

pub const EXIT_LAW_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TYPE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "delta-cat",
    version,
    about = "Terms, derivatives and law checking for Cartesian difference categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ModelOpts {
    /// smooth, smooth:rational, findiff, module:r=<k>, stream:depth=<n>[,affine]
    #[arg(long)]
    model: Option<String>,
    /// Float comparison tolerance (absolute and relative).
    #[arg(long)]
    tol: Option<f64>,
    /// Prefix length for the stream model.
    #[arg(long)]
    stream_depth: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct RunOpts {
    #[arg(long, env = "DELTA_CAT_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Maximum nesting of sampled terms.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Defaults to a table on a terminal and JSON lines otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Jsonl,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a definition at a point literal.
    Eval {
        #[command(flatten)]
        model: ModelOpts,
        file: PathBuf,
        name: String,
        point: String,
    },
    /// Print the n-th structural derivative of a definition.
    Diff {
        #[command(flatten)]
        model: ModelOpts,
        #[arg(long, default_value_t = 1)]
        order: usize,
        file: PathBuf,
        name: String,
    },
    /// Run a law suite (or a single law) and report.
    Laws {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        run: RunOpts,
        /// cdc, cad, lemmas, linearity, monad, kleisli, lac, models or all
        #[arg(long, default_value = "cdc")]
        suite: String,
        /// Run only this law id.
        #[arg(long)]
        law: Option<String>,
        /// Fix the law's map to a definition from FILE instead of sampling.
        #[arg(long, requires = "file")]
        term: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Compose two Kleisli maps `g ∘ᵀ f`; each definition is a map `A → B × B`.
    Kleisli {
        #[command(flatten)]
        model: ModelOpts,
        file: PathBuf,
        f: String,
        g: String,
        /// Also evaluate the composite at this point.
        #[arg(long)]
        at: Option<String>,
    },
    /// Run the tangent-monad laws.
    Monad {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Typecheck a document and print it in canonical form.
    Show {
        #[command(flatten)]
        model: ModelOpts,
        file: PathBuf,
    },
}

/// A failure carrying its exit code.
struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn typing(msg: impl ToString) -> Failure {
    Failure(EXIT_TYPE, msg.to_string())
}

fn build_model(opts: &ModelOpts, directive: Option<&str>) -> Result<Model, Failure> {
    let name = opts.model.as_deref().or(directive).unwrap_or("findiff");
    let mut model = Model::by_name(name).map_err(usage)?;
    if let Some(depth) = opts.stream_depth {
        if !matches!(model.semantics(), Semantics::Stream { .. }) {
            return Err(usage("--stream-depth only applies to the stream model"));
        }
        let suffix = if model.name().ends_with(",affine") {
            ",affine"
        } else {
            ""
        };
        model = Model::by_name(&format!("stream:depth={depth}{suffix}")).map_err(usage)?;
    }
    if let Some(tol) = opts.tol {
        model = model.with_tolerance(Tolerance { abs: tol, rel: tol });
    }
    Ok(model)
}

fn load(path: &Path, opts: &ModelOpts) -> Result<(Model, TermDocument), Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let at = |e: crate::syntax::SyntaxError| typing(format!("{}:{e}", path.display()));
    let directive = model_directive(&src).map_err(at)?;
    let model = build_model(opts, directive.as_deref())?;
    let doc = parse_document(&src, &model).map_err(at)?;
    Ok((model, doc))
}

fn lookup<'d>(doc: &'d TermDocument, name: &str) -> Result<&'d crate::term::MapTerm, Failure> {
    doc.get(name)
        .ok_or_else(|| typing(format!("no definition named `{name}`")))
}

fn emit(out: &mut dyn Write, reports: &[LawReport], format: Option<Format>, tty: bool) -> Result<i32, Failure> {
    let format = format.unwrap_or(if tty { Format::Table } else { Format::Jsonl });
    let text = match format {
        Format::Table => laws::to_table(reports),
        Format::Jsonl => laws::to_jsonl(reports),
    };
    out.write_all(text.as_bytes()).map_err(usage)?;
    Ok(if laws::all_passed(reports) { 0 } else { EXIT_LAW_FAILURE })
}

fn config(run: &RunOpts) -> LawConfig {
    LawConfig::default()
        .with_seed(run.seed)
        .with_trials(run.trials)
        .with_depth(run.depth)
}

fn execute(cli: Cli, out: &mut dyn Write, tty: bool) -> Result<i32, Failure> {
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(usage);
    match cli.command {
        Command::Eval {
            model,
            file,
            name,
            point,
        } => {
            let (model, doc) = load(&file, &model)?;
            let f = lookup(&doc, &name)?;
            let x = parse_value(&point, f.dom(), &model).map_err(|e| typing(format!("point: {e}")))?;
            let v = model.eval(f, &x).map_err(typing)?;
            w(out, v.to_literal())?;
        }
        Command::Diff {
            model,
            order,
            file,
            name,
        } => {
            let (_, doc) = load(&file, &model)?;
            let f = lookup(&doc, &name)?;
            let d = derive_n(f, order);
            w(out, d.to_string())?;
            w(out, format!("; {} -> {}", d.dom(), d.cod()))?;
        }
        Command::Laws {
            model,
            run,
            suite,
            law,
            term,
            file,
        } => {
            let cfg = config(&run);
            let reports = match (term, file) {
                (Some(term), Some(file)) => {
                    let (m, doc) = load(&file, &model)?;
                    let f = lookup(&doc, &term)?;
                    let law = law.ok_or_else(|| usage("--term needs --law"))?;
                    vec![check_law_for_term(&m, &law, f, &cfg).map_err(usage)?]
                }
                _ => {
                    let m = build_model(&model, None)?;
                    match law {
                        Some(law) => vec![check_law(&m, &law, &cfg).map_err(usage)?],
                        None => {
                            let suite: Suite = suite.parse().map_err(usage)?;
                            check_suite(&m, suite, &cfg)
                        }
                    }
                }
            };
            return emit(out, &reports, run.format, tty);
        }
        Command::Kleisli { model, file, f, g, at } => {
            let (model, doc) = load(&file, &model)?;
            let as_kleisli = |name: &str| -> Result<KleisliMap, Failure> {
                let t = lookup(&doc, name)?;
                KleisliMap::from_term(t).map_err(|e| typing(format!("`{name}` is not a Kleisli map: {e}")))
            };
            let (kf, kg) = (as_kleisli(&f)?, as_kleisli(&g)?);
            let h = kleisli_compose(&kg, &kf).map_err(typing)?;
            w(out, h.to_string())?;
            if let Some(point) = at {
                let x = parse_value(&point, &h.src, &model).map_err(|e| typing(format!("point: {e}")))?;
                let v = model.eval(&h.to_term(), &x).map_err(typing)?;
                w(out, v.to_literal())?;
            }
        }
        Command::Monad { model, run } => {
            let m = build_model(&model, None)?;
            let reports = check_suite(&m, Suite::Monad, &config(&run));
            return emit(out, &reports, run.format, tty);
        }
        Command::Show { model, file } => {
            let (_, doc) = load(&file, &model)?;
            out.write_all(doc.to_source().as_bytes()).map_err(usage)?;
        }
    }
    Ok(0)
}

/// Runs the command line with explicit arguments and output streams.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, tty: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli, out, tty) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let tty = std::io::stdout().is_terminal();
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        tty,
    )
}
