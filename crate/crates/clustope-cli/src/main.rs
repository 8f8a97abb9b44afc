//! `clustope` command-line tool. Directions and variable ids are 1-based here.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clustope::compat::SeedCatalog;
use clustope::duality::{
    verify_gbc, verify_inverse_dualities, verify_sign_coherence, verify_sign_synchronicity,
    verify_transpose_duality, IdentityReport,
};
use clustope::fan::{g_sets, ng_fan, verify_edges_are_cvectors};
use clustope::json::{
    exchange_from_json, fan_to_json, laurent_to_json, matrix_to_json,
    polytope_from_json, polytope_to_json, seed_to_json,
};
use clustope::polytope::{mutate_polytope_geometric, verify_polytope_routes};
use clustope::seed::{g_matrix_by_recurrence, Pattern};
use clustope::{sample, Error, ExchangeMatrix};

const MAX_SEEDS: usize = 100_000;

#[derive(Parser)]
#[command(name = "clustope", version, about = "Exact cluster-algebra and Newton-polytope computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArg {
    /// JSON file holding the exchange matrix.
    #[arg(long = "B", value_name = "FILE")]
    b: PathBuf,
}

#[derive(Args)]
struct PathArg {
    /// Mutation directions, e.g. 2,3,1.
    #[arg(long, value_name = "I,J,..", default_value = "")]
    path: String,
}

#[derive(Args)]
struct OutArg {
    /// Write the result here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

impl Sign {
    fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Mutate an exchange matrix along a path.
    MatrixMutate {
        #[command(flatten)]
        b: MatrixArg,
        /// Single direction, an alternative to --path.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        path: PathArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Full seed (matrix, C-matrix, variables, g/d-vectors, F-polynomials) at the end of a path.
    SeedMutate(SeedArgs),
    /// G-matrix at the end of a path: by grading, or by the sign recurrence with --eps.
    Gvec {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<Sign>,
    },
    /// C-matrix at the end of a path.
    Cvec(SeedArgs),
    /// d-vectors of the cluster variables at the end of a path.
    Dvec(SeedArgs),
    /// F-polynomials of the cluster variables at the end of a path.
    Fpoly(SeedArgs),
    /// Geometric mutation of a weighted polytope of degree h.
    PolytopeMutate {
        #[command(flatten)]
        b: MatrixArg,
        /// JSON file holding the polytope.
        #[arg(long, value_name = "FILE")]
        polytope: PathBuf,
        /// Degree vector, e.g. 1,0,-1.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// The normal-set families along a path for one sign vector.
    FanGsets {
        #[command(flatten)]
        b: MatrixArg,
        #[command(flatten)]
        path: PathArg,
        /// Signs, e.g. -1,-1,1.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// The fan N_g, computed by two routes that must agree.
    FanNg {
        #[command(flatten)]
        b: MatrixArg,
        #[command(flatten)]
        bound: DepthArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Enumerate seeds and cluster variables into a catalog.
    Enumerate {
        #[command(flatten)]
        b: MatrixArg,
        #[command(flatten)]
        bound: DepthArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compatibility of two cluster monomials given by their degrees.
    Compat {
        #[command(flatten)]
        source: CatalogArg,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compatibility degree (f | x) of two catalog variables.
    Degree {
        #[command(flatten)]
        source: CatalogArg,
        /// Variable id in the catalog, starting at 1
        #[arg(long)]
        f: usize,
        /// Cluster variable id in the catalog, starting at 1
        #[arg(long)]
        x: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check an identity on one input or on a reproducible random suite.
    Verify {
        #[arg(value_enum)]
        identity: Identity,
        #[command(flatten)]
        input: VerifyInput,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct SeedArgs {
    #[command(flatten)]
    b: MatrixArg,
    #[command(flatten)]
    path: PathArg,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
#[group(multiple = false)]
struct DepthArg {
    /// Stop after this many mutations from the base seed.
    #[arg(long)]
    depth: Option<usize>,
    /// Run to completion; fails if the pattern is not of finite type within the seed limit.
    #[arg(long)]
    finite: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CatalogArg {
    /// Catalog written by `enumerate`.
    #[arg(long, value_name = "FILE")]
    catalog: Option<PathBuf>,
    /// Enumerate a finite-type catalog on the fly.
    #[arg(long = "B", value_name = "FILE")]
    b: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyInput {
    #[arg(long = "B", value_name = "FILE", required_unless_present = "random")]
    b: Option<PathBuf>,
    #[arg(long, default_value = "")]
    path: String,
    /// Number of random (B, path) pairs instead of --B.
    #[arg(long, conflicts_with = "b")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ranks of random matrices, as min,max.
    #[arg(long, default_value = "2,4")]
    ranks: String,
    /// Entry bound of random matrices.
    #[arg(long, default_value_t = 3)]
    bound: i64,
    #[arg(long, default_value_t = 8)]
    max_len: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    Dualities,
    SignCoherence,
    SignSynchronicity,
    Gbc,
    PolytopeRoutes,
    EdgesAreCvectors,
}

enum Failure {
    Usage(String),
    Engine(Error),
    /// Verification ran and found a failing case; the output is already written.
    Violated,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_json(path: &Path) -> Outcome<Value> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{} is not JSON: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Outcome<ExchangeMatrix> {
    Ok(exchange_from_json(&read_json(path)?)?)
}

fn parse_ints(s: &str, what: &str) -> Outcome<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("bad {what} entry {t:?}"))))
        .collect()
}

fn parse_path(s: &str, n: usize) -> Outcome<Vec<usize>> {
    parse_ints(s, "path")?
        .into_iter()
        .map(|k| one_based(k, n, "direction"))
        .collect()
}

fn one_based(k: i64, n: usize, what: &str) -> Outcome<usize> {
    if k >= 1 && (k as usize) <= n {
        Ok(k as usize - 1)
    } else {
        Err(usage(format!("{what} {k} is outside 1..={n}")))
    }
}

fn emit(out: &OutArg, value: &Value) -> Outcome<()> {
    let mut text = serde_json::to_string(value).expect("JSON values serialize");
    text.push('\n');
    match &out.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => write_atomic(path, text.as_bytes()),
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Outcome<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let fail = |e: std::io::Error| usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn depth_of(bound: &DepthArg) -> Option<usize> {
    if bound.finite {
        None
    } else {
        bound.depth
    }
}

fn load_catalog(source: &CatalogArg) -> Outcome<SeedCatalog> {
    match (&source.catalog, &source.b) {
        (Some(path), _) => Ok(SeedCatalog::from_json(&read_json(path)?)?),
        (None, Some(b)) => Ok(SeedCatalog::enumerate(&read_matrix(b)?, None, MAX_SEEDS)?),
        (None, None) => Err(usage("give --catalog or --B")),
    }
}

fn seed_at(args: &SeedArgs) -> Outcome<std::sync::Arc<clustope::seed::SeedState>> {
    let b = read_matrix(&args.b.b)?;
    let path = parse_path(&args.path.path, b.n())?;
    Ok(Pattern::new(b).seed(&path)?)
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::MatrixMutate { b, k, path, out } => {
            let b = read_matrix(&b.b)?;
            let mut dirs = parse_path(&path.path, b.n())?;
            if let Some(k) = k {
                dirs.push(one_based(k as i64, b.n(), "direction")?);
            }
            emit(&out, &matrix_to_json(b.mutate_path(&dirs)?.matrix()))
        }
        Command::SeedMutate(args) => emit(&args.out, &seed_to_json(&*seed_at(&args)?)?),
        Command::Gvec { seed: args, eps } => {
            let g = match eps {
                None => seed_at(&args)?.g_matrix()?,
                Some(sign) => {
                    let b = read_matrix(&args.b.b)?;
                    let path = parse_path(&args.path.path, b.n())?;
                    g_matrix_by_recurrence(&b, &path, sign.value())?
                }
            };
            emit(&args.out, &matrix_to_json(&g))
        }
        Command::Cvec(args) => emit(&args.out, &matrix_to_json(seed_at(&args)?.c())),
        Command::Dvec(args) => {
            let s = seed_at(&args)?;
            let d = (0..s.n()).map(|i| s.d_vector(i)).collect::<Result<Vec<_>, _>>()?;
            emit(&args.out, &json!(d))
        }
        Command::Fpoly(args) => {
            let s = seed_at(&args)?;
            let f = (0..s.n())
                .map(|i| s.f_polynomial(i).map(|f| laurent_to_json(&f)))
                .collect::<Result<Vec<_>, _>>()?;
            emit(&args.out, &Value::Array(f))
        }
        Command::PolytopeMutate { b, polytope, h, k, out } => {
            let b = read_matrix(&b.b)?;
            let poly = polytope_from_json(&read_json(&polytope)?)?;
            let h: Vec<_> = parse_ints(&h, "degree")?.into_iter().map(Into::into).collect();
            let k = one_based(k as i64, b.n(), "direction")?;
            let (image, h1) = mutate_polytope_geometric(&poly, &h, k, &b)?;
            emit(
                &out,
                &json!({
                    "polytope": polytope_to_json(&image),
                    "h": h1.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
            )
        }
        Command::FanGsets { b, path, lambda, out } => {
            let b = read_matrix(&b.b)?;
            let path = parse_path(&path.path, b.n())?;
            let lambda = parse_ints(&lambda, "lambda")?
                .into_iter()
                .map(|s| match s {
                    1 => Ok(1i8),
                    -1 => Ok(-1i8),
                    _ => Err(usage(format!("lambda entries are 1 or -1, got {s}"))),
                })
                .collect::<Outcome<Vec<_>>>()?;
            let sets = g_sets(&b, &path, &lambda)?;
            let value: Vec<Value> = sets
                .iter()
                .map(|s| json!({ "vertex": s.vertex, "matrices": s.matrices.iter().map(matrix_to_json).collect::<Vec<_>>() }))
                .collect();
            emit(&out, &Value::Array(value))
        }
        Command::FanNg { b, bound, out } => {
            let b = read_matrix(&b.b)?;
            let ng = ng_fan(&b, depth_of(&bound))?;
            let mut v = fan_to_json(ng.fan());
            v["seeds"] = json!(ng.seeds);
            v["complete"] = json!(ng.complete);
            emit(&out, &v)
        }
        Command::Enumerate { b, bound, out } => {
            let b = read_matrix(&b.b)?;
            emit(&out, &SeedCatalog::enumerate(&b, depth_of(&bound), MAX_SEEDS)?.to_json())
        }
        Command::Compat { source, g, h, out } => {
            let cat = load_catalog(&source)?;
            let g: Vec<_> = parse_ints(&g, "g")?.into_iter().map(Into::into).collect();
            let h: Vec<_> = parse_ints(&h, "h")?.into_iter().map(Into::into).collect();
            let compatible = cat.are_compatible(&g, &h)?;
            emit(&out, &json!({ "compatible": compatible }))
        }
        Command::Degree { source, f, x, out } => {
            let cat = load_catalog(&source)?;
            let count = cat.variables().len();
            let f = one_based(f as i64, count, "variable")?;
            let x = one_based(x as i64, count, "variable")?;
            emit(&out, &json!({ "degree": cat.compatibility_degree(f, x)? }))
        }
        Command::Verify { identity, input, out } => {
            let cases = verify_cases(&input)?;
            let mut reports: Vec<IdentityReport> = Vec::new();
            for (b, path) in &cases {
                reports.extend(check(identity, b, path)?);
            }
            let failed = reports.iter().any(|r| !r.passed());
            let value = if input.random.is_some() || reports.len() > 1 {
                serde_json::to_value(&reports)
            } else {
                serde_json::to_value(&reports[0])
            }
            .expect("reports serialize");
            emit(&out, &value)?;
            if failed {
                Err(Failure::Violated)
            } else {
                Ok(())
            }
        }
    }
}

fn verify_cases(input: &VerifyInput) -> Outcome<Vec<(ExchangeMatrix, Vec<usize>)>> {
    match (&input.b, input.random) {
        (Some(file), _) => {
            let b = read_matrix(file)?;
            let path = parse_path(&input.path, b.n())?;
            Ok(vec![(b, path)])
        }
        (None, Some(count)) => {
            let ranks = parse_ints(&input.ranks, "ranks")?;
            let (lo, hi) = match ranks[..] {
                [r] => (r, r),
                [a, b] => (a, b),
                _ => return Err(usage("--ranks takes one or two numbers")),
            };
            if lo < 1 || hi < lo || input.bound < 1 {
                return Err(usage("need 1 <= min rank <= max rank and --bound >= 1"));
            }
            let mut rng = sample::rng(input.seed);
            Ok((0..count)
                .map(|i| {
                    let n = (lo + (i as i64) % (hi - lo + 1)) as usize;
                    let (b, _) = sample::exchange_matrix(&mut rng, n, input.bound);
                    let path = sample::path(&mut rng, n, input.max_len);
                    (b, path)
                })
                .collect())
        }
        (None, None) => Err(usage("give --B or --random")),
    }
}

fn check(identity: Identity, b: &ExchangeMatrix, path: &[usize]) -> Outcome<Vec<IdentityReport>> {
    Ok(match identity {
        Identity::Dualities => vec![verify_transpose_duality(b, path)?, verify_inverse_dualities(b, path)?],
        Identity::SignCoherence => vec![verify_sign_coherence(b, path)?],
        Identity::SignSynchronicity => vec![verify_sign_synchronicity(b, path)?],
        Identity::Gbc => vec![verify_gbc(b, path)?],
        Identity::PolytopeRoutes => vec![verify_polytope_routes(b, path)?],
        Identity::EdgesAreCvectors => vec![verify_edges_are_cvectors(b, path)?],
    })
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

fn diagnostic(e: &Error) -> Value {
    let mut v = json!({ "error": error_kind(e), "message": e.to_string() });
    if let Error::IdentityViolation(report) = e {
        if let Ok(w) = serde_json::from_str::<Value>(report) {
            v["witness"] = w;
        }
    }
    v
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violated) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", json!({ "error": "Usage", "message": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(if e.is_violation() { 2 } else { 1 })
        }
    }
}
