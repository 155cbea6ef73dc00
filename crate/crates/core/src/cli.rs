//! The `erfs` command line. [`run_cli`] is the whole program; the binary
//! only forwards its arguments and exit code.

use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fuzzy::{gfn_product, gfv_product, Gfn, Gfv};
use crate::grfn::{self, Grfn};
use crate::grfv::{self, Grfv};
use crate::interval::Interval;
use crate::linalg::Vector;
use crate::randomset::{
    self, dempster_consonant, dempster_gaussian_rays, mc_bel_pl_many, mc_conflict,
    mc_contour_many, mc_contour_vec, mc_expectation_bounds, ray_contours, FuzzySampler, MCConfig,
    MCEstimate, TriangularGaussian, DEFAULT_SEED,
};

/// Exit status for argument and validation errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when evidence is fully contradictory.
pub const EXIT_CONFLICT: i32 = 1;
/// Exit status when `mc-check` finds too many disagreements.
pub const EXIT_MC_FAILED: i32 = 3;

/// Fraction of checks that must fall inside their band for `mc-check` to pass.
pub const MC_PASS_RATE: f64 = 0.95;
/// Width of the `mc-check` agreement band in standard errors.
pub const MC_BAND: f64 = 3.0;

/// An evidence document, discriminated by its `"type"` field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EvidenceDocument {
    Gfn(Gfn),
    Gfv(Gfv),
    Grfn(Grfn),
    Grfv(Grfv),
    TriangularGaussian(TriangularGaussian),
}

impl EvidenceDocument {
    fn kind(&self) -> &'static str {
        match self {
            EvidenceDocument::Gfn(_) => "gfn",
            EvidenceDocument::Gfv(_) => "gfv",
            EvidenceDocument::Grfn(_) => "grfn",
            EvidenceDocument::Grfv(_) => "grfv",
            EvidenceDocument::TriangularGaussian(_) => "triangular_gaussian",
        }
    }

    /// Scalar documents with a Gaussian membership, as a GRFN.
    fn as_grfn(&self) -> Option<Grfn> {
        match self {
            EvidenceDocument::Grfn(g) => Some(*g),
            EvidenceDocument::Gfn(g) => Grfn::possibilistic(g).ok(),
            _ => None,
        }
    }

    fn unsupported(&self, what: &str) -> Error {
        Error::validation("type", format!("{what} is not available for {} documents", self.kind()))
    }
}

/// Parses one document or a JSON array of documents.
pub fn parse_documents(text: &str) -> Result<Vec<EvidenceDocument>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::validation("document", e.to_string()))?;
    let one = |v: serde_json::Value| {
        serde_json::from_value::<EvidenceDocument>(v)
            .map_err(|e| Error::validation("document", e.to_string()))
    };
    match value {
        serde_json::Value::Array(items) => items.into_iter().map(one).collect(),
        v => Ok(vec![one(v)?]),
    }
}

/// Points `start, start + step, ...` up to `stop`. The stop value is
/// included when it lies on the grid up to a relative 1e-9 of the step.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |m: &str| Error::validation("--grid", format!("{m} (expected start:stop:step, got {spec:?})"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(bad("three fields required"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(bad("values must be finite"));
    }
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    if stop < start {
        return Err(bad("stop must not be below start"));
    }
    let count = ((stop - start) / step + 1e-9).floor();
    if count > 1e7 {
        return Err(bad("too many points"));
    }
    // Snap to the decimal resolution of the input so that 0.01 steps print
    // as 0.03 rather than 0.029999999999999805.
    let digits = [a, b, c].iter().map(|t| decimals(t)).collect::<Option<Vec<_>>>();
    let digits = digits.and_then(|d| d.into_iter().max());
    let snap = |x: f64| match digits {
        Some(d) if d <= 15 => {
            let scale = 10f64.powi(d as i32);
            (x * scale).round() / scale
        }
        _ => x,
    };
    Ok((0..=count as u64).map(|i| snap(start + i as f64 * step)).collect())
}

/// Number of digits after the decimal point, or `None` for exponent forms.
fn decimals(t: &str) -> Option<usize> {
    let t = t.trim();
    if t.contains(['e', 'E']) {
        return None;
    }
    Some(t.split_once('.').map_or(0, |(_, f)| f.len()))
}

fn parse_extended(s: &str) -> std::result::Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
        "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        t => t.parse::<f64>().map_err(|_| format!("not a number: {s:?}")),
    }
}

/// `lo:hi` with optional infinite endpoints.
pub fn parse_interval(spec: &str) -> Result<Interval> {
    let bad = |m: String| Error::validation("--interval", m);
    let (lo, hi) = spec
        .split_once(':')
        .ok_or_else(|| bad(format!("expected lo:hi, got {spec:?}")))?;
    let lo = parse_extended(lo).map_err(bad)?;
    let hi = parse_extended(hi).map_err(bad)?;
    Interval::new(lo, hi).map_err(|e| bad(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum DocKind {
    Gfn,
    Grfn,
    TriangularGaussian,
}

#[derive(Debug, Args)]
struct DocArgs {
    /// Evidence documents: JSON files, or `-` for stdin. Stdin is read when
    /// neither files nor `--type` are given.
    docs: Vec<PathBuf>,
    /// Build the document from flags instead of JSON.
    #[arg(long = "type", value_enum)]
    kind: Option<DocKind>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    /// Precision of a GRFN; accepts `inf`.
    #[arg(long, value_parser = parse_extended, allow_hyphen_values = true)]
    h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mode: Option<f64>,
    /// Precision of a GFN; accepts `inf`.
    #[arg(long, value_parser = parse_extended, allow_hyphen_values = true)]
    precision: Option<f64>,
    /// Half-width of the triangular support.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Evaluation point; repeat or separate with commas. Vector documents
    /// take one comma-separated point per flag.
    #[arg(long, allow_hyphen_values = true)]
    at: Vec<String>,
    /// Grid `start:stop:step`.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Contour (or membership) at points.
    Eval {
        #[command(flatten)]
        doc: DocArgs,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Fuse two or more documents, printing the result and conflict per step.
    Combine {
        #[command(flatten)]
        doc: DocArgs,
    },
    /// Belief and plausibility of intervals.
    Belpl {
        #[command(flatten)]
        doc: DocArgs,
        /// Interval `lo:hi`; endpoints may be `-inf`/`inf`. Repeatable.
        #[arg(long = "interval", allow_hyphen_values = true)]
        intervals: Vec<String>,
    },
    /// Lower and upper cdf.
    Cdf {
        #[command(flatten)]
        doc: DocArgs,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Lower and upper expectations.
    Expect {
        #[command(flatten)]
        doc: DocArgs,
    },
    /// Degree of conflict between two documents.
    Conflict {
        #[command(flatten)]
        doc: DocArgs,
    },
    /// Compare closed forms with Monte-Carlo estimates.
    McCheck {
        #[command(flatten)]
        doc: DocArgs,
        #[arg(long = "interval", allow_hyphen_values = true)]
        intervals: Vec<String>,
        #[command(flatten)]
        points: PointArgs,
    },
    /// CSV curves over a grid.
    Plotdata {
        /// Two Gaussian possibility distributions, their normalized product,
        /// and the combined consonant random intervals.
        #[arg(long, conflicts_with = "example3")]
        example1: bool,
        /// Triangular fuzzy number with Gaussian mode (uses --mu --sigma --a).
        #[arg(long)]
        example3: bool,
        #[command(flatten)]
        doc: DocArgs,
        #[command(flatten)]
        points: PointArgs,
    },
}

#[derive(Debug, Parser)]
#[command(name = "erfs", version, about = "Epistemic random fuzzy sets")]
struct Cli {
    /// Monte-Carlo seed; the ERFS_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Monte-Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// Failure modes of one invocation.
enum Failure {
    Evidence(Error),
    Io(io::Error),
    McCheck { passed: usize, total: usize },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Evidence(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    cfg: MCConfig,
}

/// Runs the command line with the process's standard streams.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let seed_env = std::env::var("ERFS_SEED").ok();
    run_cli_with(
        args,
        seed_env.as_deref(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}

/// Runs the command line against explicit streams. `seed_env` plays the
/// role of the `ERFS_SEED` variable.
pub fn run_cli_with<I, T>(
    args: I,
    seed_env: Option<&str>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    match execute(cli, seed_env, stdin, out) {
        Ok(()) => 0,
        Err(Failure::Evidence(e)) => {
            let _ = writeln!(err, "erfs: {e}");
            match e {
                Error::ContradictoryEvidence(_) => EXIT_CONFLICT,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "erfs: {e}");
            EXIT_USAGE
        }
        Err(Failure::McCheck { passed, total }) => {
            let _ = writeln!(err, "erfs: mc-check failed ({passed}/{total} within {MC_BAND} standard errors)");
            EXIT_MC_FAILED
        }
    }
}

fn execute(cli: Cli, seed_env: Option<&str>, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let seed = match seed_env {
        Some(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::validation("ERFS_SEED", format!("not an unsigned integer: {s:?}")))?,
        None => cli.seed,
    };
    let cfg = match cli.workers {
        Some(w) => MCConfig::new(seed, cli.samples, w)?,
        None => MCConfig::with_seed(seed, cli.samples)?,
    };
    let mut ctx = Ctx { stdin, out, cfg };
    match cli.command {
        Command::Eval { doc, points } => eval(&mut ctx, &doc, &points),
        Command::Combine { doc } => combine(&mut ctx, &doc),
        Command::Belpl { doc, intervals } => belpl(&mut ctx, &doc, &intervals),
        Command::Cdf { doc, points } => cdf(&mut ctx, &doc, &points),
        Command::Expect { doc } => expect(&mut ctx, &doc),
        Command::Conflict { doc } => conflict(&mut ctx, &doc),
        Command::McCheck { doc, intervals, points } => mc_check(&mut ctx, &doc, &intervals, &points),
        Command::Plotdata { example1, example3, doc, points } => {
            plotdata(&mut ctx, example1, example3, &doc, &points)
        }
    }
}

fn required(v: Option<f64>, flag: &str, kind: &str) -> Result<f64> {
    v.ok_or_else(|| Error::validation(flag, format!("required with --type {kind}")))
}

fn load_documents(ctx: &mut Ctx, args: &DocArgs) -> Result<Vec<EvidenceDocument>> {
    let mut docs = Vec::new();
    if let Some(kind) = args.kind {
        docs.push(match kind {
            DocKind::Gfn => EvidenceDocument::Gfn(Gfn::new(
                required(args.mode, "--mode", "gfn")?,
                required(args.precision, "--precision", "gfn")?,
            )?),
            DocKind::Grfn => EvidenceDocument::Grfn(Grfn::new(
                required(args.mu, "--mu", "grfn")?,
                required(args.sigma2, "--sigma2", "grfn")?,
                required(args.h, "--h", "grfn")?,
            )?),
            DocKind::TriangularGaussian => EvidenceDocument::TriangularGaussian(TriangularGaussian::new(
                required(args.mu, "--mu", "triangular_gaussian")?,
                required(args.sigma, "--sigma", "triangular_gaussian")?,
                required(args.a, "--a", "triangular_gaussian")?,
            )?),
        });
    }
    for path in &args.docs {
        let text = if path.as_os_str() == "-" {
            read_stdin(ctx)?
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| Error::validation("document", format!("{}: {e}", path.display())))?
        };
        docs.extend(parse_documents(&text)?);
    }
    if args.kind.is_none() && args.docs.is_empty() {
        let text = read_stdin(ctx)?;
        docs.extend(parse_documents(&text)?);
    }
    Ok(docs)
}

fn read_stdin(ctx: &mut Ctx) -> Result<String> {
    let mut s = String::new();
    ctx.stdin
        .read_to_string(&mut s)
        .map_err(|e| Error::validation("stdin", e.to_string()))?;
    Ok(s)
}

fn single(docs: Vec<EvidenceDocument>) -> Result<EvidenceDocument> {
    let n = docs.len();
    let mut it = docs.into_iter();
    match (it.next(), n) {
        (Some(d), 1) => Ok(d),
        _ => Err(Error::validation("document", format!("expected exactly one document, got {n}"))),
    }
}

fn scalar_points(p: &PointArgs) -> Result<Vec<f64>> {
    let mut xs = Vec::new();
    for a in &p.at {
        for tok in a.split(',').filter(|t| !t.trim().is_empty()) {
            let x = tok
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::validation("--at", format!("not a number: {tok:?}")))?;
            xs.push(x);
        }
    }
    if let Some(g) = &p.grid {
        xs.extend(parse_grid(g)?);
    }
    if xs.is_empty() {
        return Err(Error::validation("--at", "give --at or --grid"));
    }
    Ok(xs)
}

fn vector_points(p: &PointArgs, dim: usize) -> Result<Vec<Vector>> {
    if p.grid.is_some() {
        return Err(Error::validation("--grid", "grids are one-dimensional; use --at x1,x2,..."));
    }
    if p.at.is_empty() {
        return Err(Error::validation("--at", "give at least one point"));
    }
    p.at.iter()
        .map(|a| {
            let xs = a
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<f64>, _>>()
                .map_err(|_| Error::validation("--at", format!("not a point: {a:?}")))?;
            if xs.len() != dim {
                return Err(Error::validation("--at", format!("expected {dim} coordinates, got {}", xs.len())));
            }
            Ok(Vector::from_vec(xs))
        })
        .collect()
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))
}

fn eval(ctx: &mut Ctx, args: &DocArgs, points: &PointArgs) -> Outcome {
    let doc = single(load_documents(ctx, args)?)?;
    match &doc {
        EvidenceDocument::Gfv(g) => {
            writeln!(ctx.out, "x,membership")?;
            for x in vector_points(points, g.dim())? {
                writeln!(ctx.out, "\"{}\",{}", fmt_vec(&x), g.membership(&x))?;
            }
        }
        EvidenceDocument::Grfv(g) => {
            writeln!(ctx.out, "x,contour")?;
            for x in vector_points(points, g.dim())? {
                writeln!(ctx.out, "\"{}\",{}", fmt_vec(&x), grfv::contour_vec(g, &x)?)?;
            }
        }
        EvidenceDocument::Gfn(g) => {
            writeln!(ctx.out, "x,membership")?;
            for x in scalar_points(points)? {
                writeln!(ctx.out, "{x},{}", g.membership(x))?;
            }
        }
        EvidenceDocument::Grfn(g) => {
            writeln!(ctx.out, "x,contour")?;
            for x in scalar_points(points)? {
                writeln!(ctx.out, "{x},{}", grfn::contour(g, x))?;
            }
        }
        EvidenceDocument::TriangularGaussian(t) => {
            let xs = scalar_points(points)?;
            writeln!(ctx.out, "x,contour,stderr")?;
            for (x, e) in xs.iter().zip(mc_contour_many(t, &xs, &ctx.cfg)) {
                writeln!(ctx.out, "{x},{},{}", e.value, e.stderr)?;
            }
        }
    }
    Ok(())
}

fn fmt_vec(x: &Vector) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn combine(ctx: &mut Ctx, args: &DocArgs) -> Outcome {
    let docs = load_documents(ctx, args)?;
    if docs.len() < 2 {
        return Err(Error::validation("document", "combine needs at least two documents").into());
    }
    let mut acc = docs[0].clone();
    for (step, next) in docs.iter().enumerate().skip(1) {
        let (combined, kappa, extra) = combine_pair(&acc, next)?;
        print_json(
            ctx.out,
            &json!({ "step": step, "combined": combined, "kappa": kappa, "intermediates": extra }),
        )?;
        acc = combined;
    }
    Ok(())
}

fn combine_pair(
    a: &EvidenceDocument,
    b: &EvidenceDocument,
) -> Result<(EvidenceDocument, f64, serde_json::Value)> {
    use EvidenceDocument as D;
    match (a, b) {
        (D::Gfn(x), D::Gfn(y)) => {
            // Constant fuzzy sets: the conflict is one minus the height.
            let r = gfn_product(x, y)?;
            let extra = json!({ "height": r.height });
            Ok((D::Gfn(r.product), 1.0 - r.height, extra))
        }
        (D::Gfv(x), D::Gfv(y)) => {
            let r = gfv_product(x, y)?;
            let extra = json!({ "height": r.height });
            Ok((D::Gfv(r.product), 1.0 - r.height, extra))
        }
        (D::Grfv(x), D::Grfv(y)) => {
            let f = grfv::combine_vec(x, y)?;
            let extra = serde_json::to_value(&f.intermediates).expect("serializable");
            Ok((D::Grfv(f.combined), f.kappa, extra))
        }
        _ => match (a.as_grfn(), b.as_grfn()) {
            (Some(x), Some(y)) => {
                let f = grfn::combine(&x, &y)?;
                let extra = serde_json::to_value(f.intermediates).expect("serializable");
                Ok((D::Grfn(f.combined), f.kappa, extra))
            }
            _ => Err(Error::validation(
                "type",
                format!("cannot combine {} with {}", a.kind(), b.kind()),
            )),
        },
    }
}

fn belpl(ctx: &mut Ctx, args: &DocArgs, intervals: &[String]) -> Outcome {
    let doc = single(load_documents(ctx, args)?)?;
    if intervals.is_empty() {
        return Err(Error::validation("--interval", "give at least one interval lo:hi").into());
    }
    let bs = intervals.iter().map(|s| parse_interval(s)).collect::<Result<Vec<_>>>()?;
    if let Some(g) = doc.as_grfn() {
        writeln!(ctx.out, "lo,hi,bel,pl")?;
        for b in &bs {
            let (bel, pl) = grfn::bel_pl_interval(&g, b);
            writeln!(ctx.out, "{},{},{bel},{pl}", b.lo(), b.hi())?;
        }
        return Ok(());
    }
    match &doc {
        EvidenceDocument::TriangularGaussian(t) => {
            writeln!(ctx.out, "lo,hi,bel,pl,bel_stderr,pl_stderr")?;
            for (b, (bel, pl)) in bs.iter().zip(mc_bel_pl_many(t, &bs, &ctx.cfg)) {
                writeln!(
                    ctx.out,
                    "{},{},{},{},{},{}",
                    b.lo(),
                    b.hi(),
                    bel.value,
                    pl.value,
                    bel.stderr,
                    pl.stderr
                )?;
            }
            Ok(())
        }
        other => Err(other.unsupported("belpl").into()),
    }
}

fn cdf_rows(doc: &EvidenceDocument, xs: &[f64]) -> Result<Vec<(f64, f64)>> {
    if let Some(g) = doc.as_grfn() {
        return Ok(xs.iter().map(|&x| grfn::cdf_bounds(&g, x)).collect());
    }
    match doc {
        EvidenceDocument::TriangularGaussian(t) => Ok(xs.iter().map(|&x| t.cdf_bounds(x)).collect()),
        other => Err(other.unsupported("cdf")),
    }
}

fn cdf(ctx: &mut Ctx, args: &DocArgs, points: &PointArgs) -> Outcome {
    let doc = single(load_documents(ctx, args)?)?;
    let xs = scalar_points(points)?;
    writeln!(ctx.out, "x,lower,upper")?;
    for (x, (lo, hi)) in xs.iter().zip(cdf_rows(&doc, &xs)?) {
        writeln!(ctx.out, "{x},{lo},{hi}")?;
    }
    Ok(())
}

fn expectation_bounds(doc: &EvidenceDocument) -> Result<(f64, f64)> {
    if let Some(g) = doc.as_grfn() {
        return grfn::expectation_bounds(&g);
    }
    match doc {
        EvidenceDocument::TriangularGaussian(t) => Ok(t.expectation_bounds()),
        other => Err(other.unsupported("expect")),
    }
}

fn expect(ctx: &mut Ctx, args: &DocArgs) -> Outcome {
    let doc = single(load_documents(ctx, args)?)?;
    let (lo, hi) = expectation_bounds(&doc)?;
    print_json(ctx.out, &json!({ "lower": lo, "upper": hi }))?;
    Ok(())
}

fn conflict(ctx: &mut Ctx, args: &DocArgs) -> Outcome {
    let docs = load_documents(ctx, args)?;
    if docs.len() != 2 {
        return Err(Error::validation("document", format!("conflict needs two documents, got {}", docs.len())).into());
    }
    let (_, kappa, _) = combine_pair(&docs[0], &docs[1])?;
    print_json(ctx.out, &json!({ "kappa": kappa }))?;
    Ok(())
}

/// One closed-form versus Monte-Carlo comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McComparison {
    pub name: String,
    pub closed: f64,
    pub estimate: MCEstimate,
    pub pass: bool,
}

impl McComparison {
    fn new(name: impl Into<String>, closed: f64, estimate: MCEstimate) -> Self {
        McComparison {
            name: name.into(),
            closed,
            pass: estimate.agrees_with(closed, MC_BAND),
            estimate,
        }
    }
}

fn scalar_checks(
    doc: &EvidenceDocument,
    intervals: &[Interval],
    xs: &[f64],
    cfg: &MCConfig,
) -> Result<Vec<McComparison>> {
    let mut out = Vec::new();
    let sampler: Box<dyn FuzzySampler> = match doc {
        EvidenceDocument::Grfn(g) => Box::new(*g),
        EvidenceDocument::Gfn(g) => Box::new(*g),
        EvidenceDocument::TriangularGaussian(t) => Box::new(*t),
        other => return Err(other.unsupported("scalar checks")),
    };
    let rays: Vec<Interval> = xs.iter().map(|&x| Interval::lower_ray(x)).collect();
    let cdfs = cdf_rows(doc, xs)?;
    for ((x, (lo, hi)), (bel, pl)) in xs.iter().zip(cdfs).zip(mc_bel_pl_many(&sampler, &rays, cfg)) {
        out.push(McComparison::new(format!("lower cdf at {x}"), lo, bel));
        out.push(McComparison::new(format!("upper cdf at {x}"), hi, pl));
    }
    if let Some(g) = doc.as_grfn() {
        for (b, (bel, pl)) in intervals.iter().zip(mc_bel_pl_many(&sampler, intervals, cfg)) {
            let (cb, cp) = grfn::bel_pl_interval(&g, b);
            out.push(McComparison::new(format!("bel [{}, {}]", b.lo(), b.hi()), cb, bel));
            out.push(McComparison::new(format!("pl [{}, {}]", b.lo(), b.hi()), cp, pl));
        }
        for (x, e) in xs.iter().zip(mc_contour_many(&sampler, xs, cfg)) {
            out.push(McComparison::new(format!("contour at {x}"), grfn::contour(&g, x.to_owned()), e));
        }
    }
    if let Ok((lo, hi)) = expectation_bounds(doc) {
        let (elo, ehi) = mc_expectation_bounds(&sampler, cfg)?;
        out.push(McComparison::new("lower expectation", lo, elo));
        out.push(McComparison::new("upper expectation", hi, ehi));
    }
    Ok(out)
}

fn pair_checks(a: &Grfn, b: &Grfn, cfg: &MCConfig) -> Result<Vec<McComparison>> {
    let f = grfn::combine(a, b)?;
    let mut out = vec![McComparison::new("conflict", f.kappa, mc_conflict(a, b, cfg))];
    if a.h().is_proper() && b.h().is_proper() && a.sigma2() > 0.0 && b.sigma2() > 0.0 {
        let w = randomset::soft_conditioning_sampler(a, b, cfg)?;
        let m = &f.intermediates;
        out.push(McComparison::new("conditioned mean 1", m.mu1, w.mean1));
        out.push(McComparison::new("conditioned mean 2", m.mu2, w.mean2));
        out.push(McComparison::new("conditioned variance 1", m.sigma1_sq, w.var1));
        out.push(McComparison::new("conditioned variance 2", m.sigma2_sq, w.var2));
        out.push(McComparison::new("conditioned correlation", m.rho, w.rho));
        out.push(McComparison::new("mean weight", 1.0 - f.kappa, w.mean_weight));
    }
    Ok(out)
}

fn vector_checks(g: &Grfv, xs: &[Vector], cfg: &MCConfig) -> Result<Vec<McComparison>> {
    xs.iter()
        .map(|x| {
            Ok(McComparison::new(
                format!("contour at ({})", fmt_vec(x)),
                grfv::contour_vec(g, x)?,
                mc_contour_vec(g, x, cfg)?,
            ))
        })
        .collect()
}

/// The built-in comparison suite.
pub fn default_mc_checks(cfg: &MCConfig) -> Result<Vec<McComparison>> {
    let mut out = Vec::new();
    let unit = EvidenceDocument::Grfn(Grfn::new(0.0, 1.0, 1.0)?);
    let intervals = [Interval::new(-1.0, 1.0)?, Interval::new(0.0, 2.0)?, Interval::new(-3.0, -0.5)?];
    let xs = [-2.0, -1.0, 0.0, 1.0, 2.0];
    out.extend(scalar_checks(&unit, &intervals, &xs, cfg)?);
    let g2 = EvidenceDocument::Grfn(Grfn::new(1.5, 0.4, 3.0)?);
    out.extend(scalar_checks(&g2, &[Interval::new(1.0, 2.5)?], &[0.5, 1.5, 2.5], cfg)?);
    for a in [0.5, 1.5] {
        let t = EvidenceDocument::TriangularGaussian(TriangularGaussian::new(0.0, 1.0, a)?);
        out.extend(scalar_checks(&t, &[], &xs, cfg)?.into_iter().map(|mut c| {
            c.name = format!("triangular a={a}: {}", c.name);
            c
        }));
    }
    out.extend(pair_checks(&Grfn::new(0.0, 1.0, 1.0)?, &Grfn::new(0.0, 1.0, 1.0)?, cfg)?);
    out.extend(pair_checks(&Grfn::new(-0.5, 0.8, 2.0)?, &Grfn::new(1.0, 1.5, 0.7)?, cfg)?);
    let rays = dempster_gaussian_rays(0.0, 1.0, 1.0, 1.5, cfg)?;
    out.push(McComparison::new("ray conflict", rays.kappa, rays.rejection_rate));
    for (x, e) in xs.iter().zip(mc_contour_many(&rays.sampler, &xs, cfg)) {
        out.push(McComparison::new(
            format!("ray combination contour at {x}"),
            ray_contours(0.0, 1.0, 1.0, 1.5, *x).2,
            e,
        ));
    }
    let v = Grfv::new(
        Vector::from_vec(vec![0.5, -1.0]),
        crate::linalg::from_rows(&[vec![1.0, 0.3], vec![0.3, 2.0]], "Sigma")?,
        crate::linalg::from_rows(&[vec![2.0, -0.4], vec![-0.4, 1.5]], "H")?,
    )?;
    let pts = [vec![0.5, -1.0], vec![1.5, 0.0], vec![-1.0, -2.0]];
    out.extend(vector_checks(&v, &pts.map(Vector::from_vec), cfg)?);
    Ok(out)
}

fn mc_check(ctx: &mut Ctx, args: &DocArgs, intervals: &[String], points: &PointArgs) -> Outcome {
    let have_docs = args.kind.is_some() || !args.docs.is_empty();
    let checks = if !have_docs {
        default_mc_checks(&ctx.cfg)?
    } else {
        let docs = load_documents(ctx, args)?;
        let mut checks = Vec::new();
        for doc in &docs {
            match doc {
                EvidenceDocument::Grfv(g) => {
                    let xs = if points.at.is_empty() {
                        vec![g.mu().clone()]
                    } else {
                        vector_points(points, g.dim())?
                    };
                    checks.extend(vector_checks(g, &xs, &ctx.cfg)?);
                }
                EvidenceDocument::Gfv(_) => return Err(doc.unsupported("mc-check").into()),
                _ => {
                    let (center, spread) = doc_scale(doc);
                    let xs = if points.at.is_empty() && points.grid.is_none() {
                        (-2..=2).map(|k| center + k as f64 * spread).collect()
                    } else {
                        scalar_points(points)?
                    };
                    let bs = if intervals.is_empty() {
                        vec![Interval::new(center - spread, center + spread)?]
                    } else {
                        intervals.iter().map(|s| parse_interval(s)).collect::<Result<_>>()?
                    };
                    checks.extend(scalar_checks(doc, &bs, &xs, &ctx.cfg)?);
                }
            }
        }
        if let [a, b] = docs.as_slice() {
            if let (Some(a), Some(b)) = (a.as_grfn(), b.as_grfn()) {
                checks.extend(pair_checks(&a, &b, &ctx.cfg)?);
            }
        }
        checks
    };
    let passed = checks.iter().filter(|c| c.pass).count();
    for c in &checks {
        let z = c.estimate.z_score(c.closed);
        writeln!(
            ctx.out,
            "{} {}: closed={} mc={} stderr={} z={:.2}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.closed,
            c.estimate.value,
            c.estimate.stderr,
            z
        )?;
    }
    let total = checks.len();
    writeln!(ctx.out, "passed {passed}/{total} (seed {}, {} samples)", ctx.cfg.seed, ctx.cfg.samples)?;
    if total == 0 || (passed as f64) < MC_PASS_RATE * total as f64 {
        return Err(Failure::McCheck { passed, total });
    }
    Ok(())
}

/// A location and a spread suited to probing a scalar document.
fn doc_scale(doc: &EvidenceDocument) -> (f64, f64) {
    match doc {
        EvidenceDocument::TriangularGaussian(t) => (t.mu(), t.sigma() + t.a()),
        _ => match doc.as_grfn() {
            Some(g) => {
                let fuzz = g.h().finite().filter(|h| *h > 0.0).map_or(0.0, |h| 1.0 / h);
                (g.mu(), (g.sigma2() + fuzz).sqrt().max(1e-3))
            }
            None => (0.0, 1.0),
        },
    }
}

fn plotdata(ctx: &mut Ctx, example1: bool, example3: bool, args: &DocArgs, points: &PointArgs) -> Outcome {
    let xs = if points.at.is_empty() && points.grid.is_none() {
        parse_grid("-4:4:0.01")?
    } else {
        scalar_points(points)?
    };
    if example1 {
        return plot_example1(ctx, args, &xs);
    }
    let doc = if example3 {
        EvidenceDocument::TriangularGaussian(TriangularGaussian::new(
            args.mu.unwrap_or(0.0),
            args.sigma.unwrap_or(1.0),
            args.a.unwrap_or(1.5),
        )?)
    } else {
        single(load_documents(ctx, args)?)?
    };
    let rows = cdf_rows(&doc, &xs)?;
    match doc.as_grfn() {
        Some(g) => {
            writeln!(ctx.out, "x,lower,upper,contour")?;
            for (x, (lo, hi)) in xs.iter().zip(rows) {
                writeln!(ctx.out, "{x},{lo},{hi},{}", grfn::contour(&g, *x))?;
            }
        }
        None => {
            writeln!(ctx.out, "x,lower,upper")?;
            for (x, (lo, hi)) in xs.iter().zip(rows) {
                writeln!(ctx.out, "{x},{lo},{hi}")?;
            }
        }
    }
    Ok(())
}

/// Curves for two GFNs combined either as fuzzy evidence (normalized
/// product) or as consonant random intervals (Monte-Carlo).
fn plot_example1(ctx: &mut Ctx, args: &DocArgs, xs: &[f64]) -> Outcome {
    let (a, b) = if args.docs.is_empty() {
        (Gfn::new(0.0, 0.3)?, Gfn::new(1.0, 0.5)?)
    } else {
        match load_documents(ctx, args)?.as_slice() {
            [EvidenceDocument::Gfn(a), EvidenceDocument::Gfn(b)] => (*a, *b),
            _ => return Err(Error::validation("document", "--example1 takes two gfn documents").into()),
        }
    };
    let product = gfn_product(&a, &b)?.product;
    let (_, combined) = dempster_consonant(&a, &b, &ctx.cfg)?;
    let rays: Vec<Interval> = xs.iter().map(|&x| Interval::lower_ray(x)).collect();
    let cdf = mc_bel_pl_many(&combined, &rays, &ctx.cfg);
    let contour = mc_contour_many(&combined, xs, &ctx.cfg);
    writeln!(
        ctx.out,
        "x,pi1,pi2,product,lower,upper,rs_contour,rs_lower,rs_upper"
    )?;
    for (i, &x) in xs.iter().enumerate() {
        let ray = Interval::lower_ray(x);
        writeln!(
            ctx.out,
            "{x},{},{},{},{},{},{},{},{}",
            a.membership(x),
            b.membership(x),
            product.membership(x),
            product.necessity(&ray),
            product.possibility(&ray),
            contour[i].value,
            cdf[i].0.value,
            cdf[i].1.value
        )?;
    }
    Ok(())
}
