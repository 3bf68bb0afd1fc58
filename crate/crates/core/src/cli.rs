//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 usage or parse
//! error (including unknown suite names), 3 family or arithmetic error,
//! 4 endomorphism parameter out of range, 5 I/O error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::endo::{classify_from_images, GeneratorImages, InjEndo, Level, ParseEndoError};
use crate::error::AlgebraError;
use crate::green::{green_bounded_search, green_symbolic, GreenQuery, GreenRelation};
use crate::semigroup::{BicyclicExtension, Elem, Family};
use crate::verify::{check_registry, run_suite, Bounds, Failure, Suite, Truncation, VerifyReport};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Family(String),
    Arithmetic(String),
    Range(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Family(_) | CliError::Arithmetic(_) => 3,
            CliError::Range(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Family(m) => write!(f, "family error: {m}"),
            CliError::Arithmetic(m) => write!(f, "arithmetic error: {m}"),
            CliError::Range(m) => write!(f, "parameter error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::ParameterRange { .. } => CliError::Range(e.to_string()),
            AlgebraError::NegativeCoordinate(_) => CliError::Parse(e.to_string()),
            AlgebraError::Domain { .. }
            | AlgebraError::FamilyClosure { .. }
            | AlgebraError::InvalidFamily(_)
            | AlgebraError::NonCanonicalFamily => CliError::Family(e.to_string()),
            AlgebraError::Overflow | AlgebraError::DOrderMismatch { .. } => {
                CliError::Arithmetic(e.to_string())
            }
        }
    }
}

impl From<ParseEndoError> for CliError {
    fn from(e: ParseEndoError) -> Self {
        match e {
            ParseEndoError::Syntax(_) => CliError::Parse(e.to_string()),
            ParseEndoError::Range(inner) => inner.into(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `(i,j,b)` where `b` is the base of a set in `family`.
pub fn parse_elem(s: &str, family: &Family) -> CliResult<Elem> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Parse(format!("cannot parse element {s:?}; expected (i,j,b)"));
    let inner = compact
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let parts: Vec<i64> = inner
        .split(',')
        .map(|p| p.parse::<i64>().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    let [i, j, base] = parts[..] else {
        return Err(bad());
    };
    if i < 0 || j < 0 {
        return Err(CliError::Parse(format!(
            "coordinates of {s:?} must be nonnegative"
        )));
    }
    let f = family.index_of(base).ok_or_else(|| {
        CliError::Parse(format!("[{base}) in {s:?} is not a set of the family"))
    })?;
    Ok(Elem::new(i, j, f)?)
}

pub fn format_elem(x: Elem, family: &Family) -> String {
    let base = family.set(x.f()).map_or(x.f() as i64, |s| s.base());
    format!("({},{},{})", x.i(), x.j(), base)
}

fn parse_family(spec: Option<&str>) -> CliResult<Family> {
    let Some(spec) = spec else {
        return Ok(Family::canonical());
    };
    let bases = spec
        .split(',')
        .map(|b| {
            b.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Parse(format!("cannot parse family {spec:?}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Family::new(&bases).map_err(|e| CliError::Family(e.to_string()))
}

fn require_canonical(spec: Option<&str>) -> CliResult<()> {
    if parse_family(spec)?.is_canonical() {
        Ok(())
    } else {
        Err(CliError::Family(
            "endomorphism and Green's relation results hold only for the family {[0),[1)}".into(),
        ))
    }
}

/// The right-multiplication graph of a truncation: an edge
/// `x --g--> x·g` for every node `x` and generator `g` whose product stays
/// inside the truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    pub family: Family,
    pub nodes: Vec<Elem>,
    pub generators: Vec<Elem>,
    /// `(source, generator, target)` as indices into `nodes` and
    /// `generators`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl CayleyGraph {
    pub fn build(s: &BicyclicExtension, bound: i64, generators: Vec<Elem>) -> crate::Result<Self> {
        let truncation = Truncation::new(bound, s.family().clone());
        let nodes = truncation.elements();
        let index: BTreeMap<Elem, usize> = nodes.iter().enumerate().map(|(n, x)| (*x, n)).collect();
        let mut edges = Vec::new();
        for (src, &x) in nodes.iter().enumerate() {
            for (g, &gen) in generators.iter().enumerate() {
                if let Some(&dst) = index.get(&s.mul(x, gen)?) {
                    edges.push((src, g, dst));
                }
            }
        }
        Ok(Self {
            family: s.family().clone(),
            nodes,
            generators,
            edges,
        })
    }

    pub fn write_dot(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "digraph cayley {{")?;
        for (n, x) in self.nodes.iter().enumerate() {
            writeln!(w, "  n{n} [label=\"{}\"];", format_elem(*x, &self.family))?;
        }
        for &(src, g, dst) in &self.edges {
            writeln!(
                w,
                "  n{src} -> n{dst} [label=\"{}\"];",
                format_elem(self.generators[g], &self.family)
            )?;
        }
        writeln!(w, "}}")
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["source", "generator", "target"])?;
        for &(src, g, dst) in &self.edges {
            out.write_record([
                format_elem(self.nodes[src], &self.family),
                format_elem(self.generators[g], &self.family),
                format_elem(self.nodes[dst], &self.family),
            ])?;
        }
        out.flush()
    }
}

/// Machine-readable rendering of a [`VerifyReport`].
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub suite: Suite,
    pub bounds: Bounds,
    pub cases: u64,
    pub cases_by_invariant: BTreeMap<&'static str, u64>,
    pub failures: Vec<Failure>,
    pub failure_count: u64,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u128,
    pub pass: bool,
}

impl From<&VerifyReport> for ReportDocument {
    fn from(r: &VerifyReport) -> Self {
        Self {
            suite: r.suite,
            bounds: r.bounds,
            cases: r.cases_run,
            cases_by_invariant: r.cases_by_invariant.clone(),
            failures: r.failures.clone(),
            failure_count: r.failure_count,
            witnesses: r.witnesses.clone(),
            elapsed_ms: r.elapsed.as_millis(),
            pass: r.pass(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bicyclic",
    version,
    about = "Exact arithmetic on the bicyclic extension B_w^F, its injective endomorphisms, and exhaustive law checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiply two elements (i,j,b).
    Mul {
        x: String,
        y: String,
        /// Comma-separated set bases, e.g. 0,1,2.
        #[arg(long)]
        family: Option<String>,
    },
    /// Apply, compose or classify injective endomorphisms (a:k,p / b:k,p).
    Endo {
        #[command(subcommand)]
        command: EndoCommand,
        #[arg(long, global = true)]
        family: Option<String>,
    },
    /// Decide a Green's relation between two endomorphisms.
    Green {
        #[arg(short = 'r', long)]
        relation: GreenRelation,
        left: String,
        right: String,
        #[arg(long, default_value_t = 8)]
        kmax: i64,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[arg(long)]
        family: Option<String>,
    },
    /// Run verification suites.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        kmax: Option<i64>,
        #[arg(long)]
        search_kmax: Option<i64>,
        #[arg(long)]
        t_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export the right-multiplication graph of a truncation.
    ExportCayley {
        #[arg(long)]
        bound: i64,
        #[arg(long, short = 'g', num_args = 0..)]
        generators: Vec<String>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Write to this file instead of stdout.
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum EndoCommand {
    Apply {
        endo: String,
        elem: String,
    },
    Compose {
        first: String,
        second: String,
    },
    /// Recover the endomorphism from (1,1,[0)) -> (k,k,[0)) and
    /// (0,0,[1)) -> (p,p,[level))
    Classify {
        #[arg(long)]
        k: i64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        level: u8,
        #[arg(long)]
        p: i64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Symbolic,
    Search,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Csv,
}

fn parse_endo(s: &str) -> CliResult<InjEndo> {
    Ok(s.parse::<InjEndo>()?)
}

/// Entry point for the binary.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one command, writing results to `out` and diagnostics to `err`,
/// and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Mul { x, y, family } => {
            let family = parse_family(family.as_deref())?;
            let (x, y) = (parse_elem(&x, &family)?, parse_elem(&y, &family)?);
            let s = BicyclicExtension::new(family);
            writeln!(out, "{}", format_elem(s.mul(x, y)?, s.family()))?;
        }
        Command::Endo { command, family } => {
            require_canonical(family.as_deref())?;
            let canonical = Family::canonical();
            match command {
                EndoCommand::Apply { endo, elem } => {
                    let e = parse_endo(&endo)?;
                    let x = parse_elem(&elem, &canonical)?;
                    writeln!(out, "{}", format_elem(e.apply(x)?, &canonical))?;
                }
                EndoCommand::Compose { first, second } => {
                    let composed = parse_endo(&first)?.compose(&parse_endo(&second)?)?;
                    writeln!(out, "{composed}")?;
                }
                EndoCommand::Classify { k, level, p } => {
                    let target_level = if level == 1 { Level::One } else { Level::Zero };
                    let e = classify_from_images(GeneratorImages { k, target_level, p })?;
                    writeln!(out, "{e}")?;
                }
            }
        }
        Command::Green {
            relation,
            left,
            right,
            kmax,
            mode,
            family,
        } => {
            require_canonical(family.as_deref())?;
            if kmax < 1 {
                return Err(CliError::Parse("--kmax must be at least 1".into()));
            }
            let q = GreenQuery {
                relation,
                left: parse_endo(&left)?,
                right: parse_endo(&right)?,
                kmax,
            };
            match mode {
                Mode::Symbolic => writeln!(out, "related: {}", green_symbolic(&q))?,
                Mode::Search => {
                    let r = green_bounded_search(&q)?;
                    writeln!(out, "related: {} (bound {})", r.related, r.exhausted_bound)?;
                    if r.related {
                        let w: Vec<String> = r.witnesses.iter().map(ToString::to_string).collect();
                        writeln!(out, "witnesses: {}", w.join(" "))?;
                    }
                }
            }
        }
        Command::Verify {
            suite,
            bound,
            kmax,
            search_kmax,
            t_max,
            format,
        } => {
            check_registry().map_err(CliError::Arithmetic)?;
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite
                    .parse()
                    .map_err(|e: crate::verify::UnknownSuite| CliError::Parse(e.to_string()))?]
            };
            let reports: Vec<VerifyReport> = suites
                .iter()
                .map(|&s| {
                    let mut b = s.default_bounds();
                    if let Some(n) = bound {
                        b.bound = n;
                    }
                    if let Some(k) = kmax {
                        b.kmax = k;
                        b.search_kmax = k + 2;
                    }
                    if let Some(k) = search_kmax {
                        b.search_kmax = k;
                    }
                    if let Some(t) = t_max {
                        b.t_max = t;
                    }
                    run_suite(s, b)
                })
                .collect();
            let pass = reports.iter().all(VerifyReport::pass);
            match format {
                Format::Json => {
                    let docs: Vec<ReportDocument> = reports.iter().map(ReportDocument::from).collect();
                    let text = if docs.len() == 1 {
                        serde_json::to_string_pretty(&docs[0])
                    } else {
                        serde_json::to_string_pretty(&docs)
                    }
                    .map_err(|e| CliError::Io(e.to_string()))?;
                    writeln!(out, "{text}")?;
                }
                Format::Text => write_text_reports(&reports, out)?,
            }
            return Ok(if pass { 0 } else { 1 });
        }
        Command::ExportCayley {
            bound,
            generators,
            format,
            output,
            family,
        } => {
            let family = parse_family(family.as_deref())?;
            let gens = generators
                .iter()
                .map(|g| parse_elem(g, &family))
                .collect::<CliResult<Vec<_>>>()?;
            let graph = CayleyGraph::build(&BicyclicExtension::new(family), bound, gens)?;
            match output {
                Some(path) => {
                    let mut file = File::create(&path)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    write_graph(&graph, format, &mut file)?;
                    file.flush()?;
                }
                None => write_graph(&graph, format, out)?,
            }
        }
    }
    Ok(0)
}

fn write_graph(graph: &CayleyGraph, format: GraphFormat, w: &mut dyn Write) -> io::Result<()> {
    match format {
        GraphFormat::Dot => graph.write_dot(w),
        GraphFormat::Csv => graph.write_csv(w),
    }
}

fn write_text_reports(reports: &[VerifyReport], out: &mut dyn Write) -> io::Result<()> {
    for r in reports {
        writeln!(
            out,
            "{} {} cases={} failures={} elapsed_ms={}",
            if r.pass() { "PASS" } else { "FAIL" },
            r.suite,
            r.cases_run,
            r.failure_count,
            r.elapsed.as_millis()
        )?;
        for f in &r.failures {
            writeln!(
                out,
                "  [{}] {}: expected {}, got {}",
                f.invariant, f.inputs, f.expected, f.got
            )?;
        }
        for w in &r.witnesses {
            writeln!(out, "  witness {w}")?;
        }
    }
    let failed = reports.iter().filter(|r| !r.pass()).count();
    if failed == 0 {
        writeln!(out, "all {} suites passed", reports.len())
    } else {
        writeln!(out, "{failed} of {} suites failed", reports.len())
    }
}
