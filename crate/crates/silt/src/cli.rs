//! Command-line interface.
//!
//! Exit codes: 0 success (including explorations cut short by a limit),
//! 1 internal error, 2 verification failure, 3 input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use silt_core::exactmat::{PrimeField, DEFAULT_PRIME};
use silt_core::explorer::Limits;
use silt_core::orders::{self, Family};

use crate::cache::Cache;
use crate::dot;
use crate::formats::{PosetJson, TorsJson};
use crate::parallel::Threaded;
use crate::run::{self, LoadError, Loaded, Source};
use crate::verify::{self, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "silt", version, about = "Two-term silting posets of finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect an algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Enumerate the exchange quiver of support tau-tilting pairs.
    Explore(RunArgs),
    /// Assemble the Hasse quiver of torsion classes (hereditary family only).
    Tors(RunArgs),
    /// Run checks with known answers.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum AlgebraAction {
    /// Dimension, basis paths and projectives.
    Show(SourceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Hereditary,
    #[value(name = "bass_v")]
    BassV,
    #[value(name = "auslander_bass_v")]
    AuslanderBassV,
    #[value(name = "triangular_a2")]
    TriangularA2,
    Custom,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Dot,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct SourceArgs {
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Family parameter.
    #[arg(long)]
    pub n: Option<usize>,
    /// Algebra description in JSON.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Field characteristic; overrides the file.
    #[arg(long)]
    pub prime: Option<u32>,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_nodes: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_depth: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write the DOT or JSON document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cache directory; SILT_CACHE takes precedence.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Hereditary,
    WeakOrder,
    Reduction,
    Examples,
    All,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    pub check: Check,
    /// Largest family parameter (hereditary: 4, weak-order: 2, reduction: 3).
    #[arg(long)]
    pub max_n: Option<usize>,
    /// A single parameter, for the reduction check.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub prime: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

/// Something went wrong; carries the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }

    fn internal(message: impl ToString) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message: message.to_string(),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Self::input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // A closed pipe on standard output is the reader's choice.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Self {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Self::internal(e)
    }
}

impl From<silt_core::Error> for Failure {
    fn from(e: silt_core::Error) -> Self {
        Self::internal(e)
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` and runs the command, writing reports to `out`.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Algebra {
            action: AlgebraAction::Show(src),
        } => show(src, out),
        Command::Explore(args) => explore(args, out),
        Command::Tors(args) => tors(args, out),
        Command::Verify(args) => verify_cmd(args, out),
    }
}

fn source_of(args: &SourceArgs) -> Result<Source, Failure> {
    let builtin = match (args.builtin, &args.file) {
        (Some(Builtin::Custom) | None, Some(path)) => {
            if args.n.is_some() {
                return Err(Failure::input("--n does not apply to --file"));
            }
            return Ok(Source::File(path.clone()));
        }
        (Some(_), Some(_)) => return Err(Failure::input("give either --builtin or --file, not both")),
        (Some(Builtin::Custom), None) => return Err(Failure::input("--builtin custom needs --file")),
        (None, None) => return Err(Failure::input("an algebra is required: --builtin NAME or --file PATH")),
        (Some(b), None) => b,
    };
    let needs_n = |name: &str| args.n.ok_or_else(|| Failure::input(format!("--builtin {name} needs --n")));
    let no_n = |f: Family| match args.n {
        Some(_) => Err(Failure::input("this builtin takes no --n")),
        None => Ok(f),
    };
    let family = match builtin {
        Builtin::Hereditary => {
            let n = needs_n("hereditary")?;
            if n == 0 {
                return Err(Failure::input("--n must be at least 1 for hereditary"));
            }
            Family::Hereditary(n)
        }
        Builtin::AuslanderBassV => Family::AuslanderBassV(needs_n("auslander_bass_v")?),
        Builtin::BassV => no_n(Family::BassV)?,
        Builtin::TriangularA2 => no_n(Family::TriangularA2)?,
        Builtin::Custom => unreachable!(),
    };
    Ok(Source::Builtin(family))
}

fn load(args: &SourceArgs) -> Result<Loaded, Failure> {
    Ok(run::load(&source_of(args)?, args.prime)?)
}

fn field_of(prime: Option<u32>) -> Result<PrimeField, Failure> {
    PrimeField::new(prime.unwrap_or(DEFAULT_PRIME)).map_err(Failure::input)
}

fn executor(workers: Option<u64>) -> Threaded {
    workers.map_or_else(Threaded::available, |w| Threaded::new(w as usize))
}

fn limits_of(args: &RunArgs) -> Limits {
    Limits {
        max_nodes: args.max_nodes.map(|x| x as usize),
        max_depth: args.max_depth.map(|x| x as usize),
    }
}

fn cache_of(args: &RunArgs) -> Option<Cache> {
    std::env::var_os("SILT_CACHE")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| args.cache.clone())
        .map(Cache::new)
}

fn show(src: &SourceArgs, out: &mut dyn Write) -> Outcome {
    let loaded = load(src)?;
    let alg = &loaded.algebra;
    let q = alg.quiver();
    writeln!(out, "dimension {}", alg.dimension())?;
    writeln!(out, "field F_{}", alg.field().p())?;
    writeln!(out, "vertices {}", q.vertices().join(" "))?;
    writeln!(out, "basis paths")?;
    for s in 0..q.vertex_count() {
        for t in 0..q.vertex_count() {
            let paths = alg.paths_between(s, t);
            if paths.is_empty() {
                continue;
            }
            let names: Vec<String> = paths.iter().map(|&i| alg.basis()[i].display(q)).collect();
            writeln!(out, "  {} -> {}: {}", q.vertices()[s], q.vertices()[t], names.join(", "))?;
        }
    }
    writeln!(out, "projectives")?;
    for v in 0..q.vertex_count() {
        let p = alg.projective_module(v)?;
        let dims: Vec<String> = p.dims().iter().map(usize::to_string).collect();
        writeln!(out, "  P{}: ({})", q.vertices()[v], dims.join(", "))?;
    }
    Ok(EXIT_OK)
}

fn emit(format: Format, dest: &Option<PathBuf>, doc: impl FnOnce(Format) -> String, report: &str, out: &mut dyn Write) -> Outcome {
    match (format, dest) {
        (Format::Text, _) => out.write_all(report.as_bytes())?,
        (f, None) => out.write_all(doc(f).as_bytes())?,
        (f, Some(path)) => {
            fs::write(path, doc(f)).map_err(|e| Failure::internal(format!("{}: {e}", path.display())))?;
            out.write_all(report.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

const INCOMPLETE: &str = "INCOMPLETE: exploration stopped at a node or depth limit\n";

fn explore_report(poset: &PosetJson, hasse: Option<bool>) -> String {
    let mut s = String::new();
    if !poset.complete {
        s.push_str(INCOMPLETE);
    }
    let n = poset.nodes.len();
    s.push_str(&format!("{n} silting modules\n"));
    s.push_str(&format!("{} exchange edges\n", poset.edges.len()));
    s.push_str(&format!("complete: {}\n", if poset.complete { "yes" } else { "no" }));
    s.push_str(&format!("sincere: {}\n", poset.sincere_count()));
    s.push_str(&format!(
        "hasse check: {}\n",
        match hasse {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "skipped",
        }
    ));
    s
}

fn explore(args: &RunArgs, out: &mut dyn Write) -> Outcome {
    let loaded = load(&args.source)?;
    let exec = executor(args.workers);
    let cache = cache_of(args);
    let run = run::explore_cached(&loaded, limits_of(args), &exec, cache.as_ref()).map_err(Failure::internal)?;
    let report = explore_report(&run.poset, run.hasse_check);
    emit(
        args.format,
        &args.out,
        |f| match f {
            Format::Dot => dot::exchange_dot(&run.poset),
            _ => run.poset.to_json(),
        },
        &report,
        out,
    )?;
    Ok(if run.hasse_check == Some(false) { EXIT_VERIFY } else { EXIT_OK })
}

fn tors(args: &RunArgs, out: &mut dyn Write) -> Outcome {
    let loaded = load(&args.source)?;
    match loaded.family {
        Some(f) if f.supports_tors_assembly() => {}
        _ => {
            return Err(Failure::input(
                "tors is only available for the hereditary family, where non-sincere silting \
                 modules are exactly the finite-length ones; no such criterion is known for \
                 this algebra",
            ))
        }
    }
    let exec = executor(args.workers);
    let (eq, hasse) = run::explore_checked(&loaded.algebra, limits_of(args), &exec)?;
    let poset = PosetJson::new(loaded.echo.clone(), &eq);
    if !eq.complete {
        let report = format!("{INCOMPLETE}{} silting modules\ntorsion classes not assembled\n", eq.node_count());
        return emit(args.format, &args.out, |f| match f {
            Format::Dot => dot::exchange_dot(&poset),
            _ => poset.to_json(),
        }, &report, out);
    }
    let sincere = orders::classify_sincere(&eq)?;
    let hasse_t = orders::assemble_tors_hasse(&eq, &sincere)?;
    let doc = TorsJson::new(&hasse_t, poset);
    let report = format!(
        "{} torsion classes\n{} cover relations\n{} silting modules ({} sincere)\nhasse check: {}\n",
        doc.nodes.len(),
        doc.edges.len(),
        eq.node_count(),
        sincere.iter().filter(|&&b| b).count(),
        if hasse == Some(true) { "pass" } else { "FAIL" }
    );
    emit(
        args.format,
        &args.out,
        |f| match f {
            Format::Dot => dot::tors_dot(&doc),
            _ => doc.to_json(),
        },
        &report,
        out,
    )?;
    Ok(if hasse == Some(true) { EXIT_OK } else { EXIT_VERIFY })
}

fn verify_cmd(args: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let field = field_of(args.prime)?;
    let exec = executor(args.workers);
    if args.n.is_some() && args.check != Check::Reduction {
        return Err(Failure::input("--n applies to the reduction check; use --max-n"));
    }
    let mut report = Report::default();
    let run = |c: Check, report: &mut Report| -> Result<(), Failure> {
        let part = match c {
            Check::Hereditary => verify::hereditary(field, args.max_n.unwrap_or(4), &exec)?,
            Check::WeakOrder => verify::weak_order(field, args.max_n.unwrap_or(2), &exec)?,
            Check::Reduction => {
                let ns: Vec<usize> = match (args.n, args.max_n) {
                    (Some(n), _) => vec![n],
                    (None, Some(m)) => (1..=m).collect(),
                    (None, None) => (1..=3).collect(),
                };
                if ns.contains(&0) {
                    return Err(Failure::input("reduction needs n >= 1"));
                }
                verify::reduction(field, &ns, &exec)?
            }
            Check::Examples => verify::examples(field, &exec)?,
            Check::All => unreachable!(),
        };
        report.extend(part);
        Ok(())
    };
    match args.check {
        Check::All => {
            for c in [Check::Examples, Check::Hereditary, Check::WeakOrder, Check::Reduction] {
                run(c, &mut report)?;
            }
        }
        c => run(c, &mut report)?,
    }
    out.write_all(report.render().as_bytes())?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
}
