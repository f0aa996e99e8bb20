//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::format;
use crate::halfspace::{BestApprox, HalfSpace};
use crate::linalg::TropicalVector;
use crate::metric::{reduce_problem, IndexSet};
use crate::scalar::Scalar;
use crate::semimodule::GeneratedSemimodule;
use crate::solvers::{cyclic_solve, power_solve, InequalitySystem, SolveOptions, SolveReport, SolveStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Overrides the default iteration cap when `--max-iters` is absent.
pub const MAX_ITERS_ENV: &str = "MPS_MAX_ITERS";

#[derive(Debug, Parser)]
#[command(name = "tropical-approx", version, about = "Max-plus projections, distances and inequality solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Numeric mode; inferred from the inputs when omitted (int if every token is integral).
    #[arg(long, value_enum, global = true)]
    pub mode: Option<Mode>,
    /// Stopping tolerance in float mode.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub tol: f64,
    /// Iteration cap (sweeps for cyclic, steps for power).
    #[arg(long, global = true)]
    pub max_iters: Option<usize>,
    /// Include every iterate in the output.
    #[arg(long, global = true)]
    pub trace: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Int,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Cyclic,
    Power,
    Both,
}

#[derive(Debug, Args)]
pub struct SystemFiles {
    /// Matrix A of the system Ax >= Bx.
    #[arg(long)]
    pub a: PathBuf,
    /// Matrix B of the system Ax >= Bx.
    #[arg(long)]
    pub b: PathBuf,
    /// Starting vector u.
    #[arg(long)]
    pub init: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Greatest solution of Ax >= Bx below the starting vector.
    Solve {
        #[command(flatten)]
        files: SystemFiles,
        #[arg(long, value_enum, default_value_t = MethodArg::Cyclic)]
        method: MethodArg,
    },
    /// Projection of a point onto a half-space.
    ProjectHalfspace {
        #[arg(long)]
        halfspace: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Hilbert distance from a point to a half-space or a generated semimodule.
    #[command(group(ArgGroup::new("set").required(true).args(["halfspace", "generators"])))]
    Distance {
        #[arg(long)]
        halfspace: Option<PathBuf>,
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long)]
        point: PathBuf,
    },
    /// Canonical form, apex and sectors of a half-space.
    Canonicalize {
        #[arg(long)]
        halfspace: PathBuf,
    },
    /// Every best approximation of a point in a half-space.
    BestApprox {
        #[arg(long)]
        halfspace: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Projection of a point onto the semimodule spanned by generators.
    ProjectSemimodule {
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Half-space separating a point from a generated semimodule.
    Separate {
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Runs both solvers and checks that cyclic iterates stay below power iterates.
    Compare {
        #[command(flatten)]
        files: SystemFiles,
    },
}

/// A failed command: message for stderr and exit status.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: EXIT_INPUT,
        }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: EXIT_INFEASIBLE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoSeparation | Error::InfiniteDistance | Error::IterationCap { .. } => Self::infeasible(e.to_string()),
            other => Self::input(other.to_string()),
        }
    }
}

/// Rendered result of a command.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses arguments, runs the command and writes its output. Returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(output) => {
            let printed = match cli.global.output {
                OutputFormat::Text => output.text,
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&output.json).expect("serializable") + "\n"
                }
            };
            let _ = out.write_all(printed.as_bytes());
            let _ = out.flush();
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn parse<T>(path: &Path, text: &str, parser: impl Fn(&str) -> crate::Result<T>, mode: Mode) -> CliResult<T> {
    parser(text).map_err(|e| {
        let hint = if mode == Mode::Int && !format::all_tokens_integral(text) {
            " (--mode int accepts integer tokens only)"
        } else {
            ""
        };
        CliError::input(format!("{}:{e}{hint}", path.display()))
    })
}

fn command_paths(cmd: &Command) -> Vec<&Path> {
    match cmd {
        Command::Solve { files, .. } | Command::Compare { files } => {
            vec![&files.a, &files.b, &files.init]
        }
        Command::ProjectHalfspace { halfspace, point } | Command::BestApprox { halfspace, point } => {
            vec![halfspace, point]
        }
        Command::Distance {
            halfspace,
            generators,
            point,
        } => halfspace
            .iter()
            .chain(generators)
            .map(PathBuf::as_path)
            .chain([point.as_path()])
            .collect(),
        Command::Canonicalize { halfspace } => vec![halfspace],
        Command::ProjectSemimodule { generators, point } | Command::Separate { generators, point } => {
            vec![generators, point]
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> CliResult<Output> {
    let paths = command_paths(&cli.command);
    let mut texts = BTreeMap::new();
    for p in &paths {
        texts.insert(p.to_path_buf(), read(p)?);
    }
    let mode = cli
        .global
        .mode
        .unwrap_or_else(|| match texts.values().all(|t| format::all_tokens_integral(t)) {
            true => Mode::Int,
            false => Mode::Float,
        });
    let ctx = Context {
        cli,
        texts: &texts,
        mode,
    };
    match mode {
        Mode::Int => ctx.dispatch::<i64>(err),
        Mode::Float => ctx.dispatch::<f64>(err),
    }
}

struct Context<'a> {
    cli: &'a Cli,
    texts: &'a BTreeMap<PathBuf, String>,
    mode: Mode,
}

fn to_json<S: serde::Serialize>(v: &S) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn index_list(set: &IndexSet) -> String {
    set.members().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

impl Context<'_> {
    fn text(&self, path: &Path) -> &str {
        &self.texts[path]
    }

    fn point<T: Scalar>(&self, path: &Path) -> CliResult<TropicalVector<T>> {
        parse(path, self.text(path), format::parse_vector, self.mode)
    }

    fn halfspace<T: Scalar>(&self, path: &Path) -> CliResult<HalfSpace<T>> {
        parse(path, self.text(path), format::parse_halfspace, self.mode)
    }

    fn generators<T: Scalar>(&self, path: &Path) -> CliResult<GeneratedSemimodule<T>> {
        parse(path, self.text(path), format::parse_generators, self.mode)
    }

    fn same_dim(&self, left: (&Path, usize), right: (&Path, usize)) -> CliResult<()> {
        if left.1 == right.1 {
            Ok(())
        } else {
            Err(CliError::input(format!(
                "dimension mismatch: {} has dimension {} but {} has dimension {}",
                left.0.display(),
                left.1,
                right.0.display(),
                right.1
            )))
        }
    }

    fn system<T: Scalar>(&self, files: &SystemFiles) -> CliResult<(InequalitySystem<T>, TropicalVector<T>)> {
        let a = parse(&files.a, self.text(&files.a), format::parse_matrix, self.mode)?;
        let b = parse(&files.b, self.text(&files.b), format::parse_matrix, self.mode)?;
        let u: TropicalVector<T> = self.point(&files.init)?;
        if a.nrows() != b.nrows() {
            return Err(CliError::input(format!(
                "dimension mismatch: {} has {} rows but {} has {}",
                files.a.display(),
                a.nrows(),
                files.b.display(),
                b.nrows()
            )));
        }
        self.same_dim((&files.a, a.ncols()), (&files.b, b.ncols()))?;
        self.same_dim((&files.a, a.ncols()), (&files.init, u.len()))?;
        Ok((InequalitySystem::new(a, b)?, u))
    }

    fn options(&self) -> SolveOptions {
        let env_cap = std::env::var(MAX_ITERS_ENV).ok().and_then(|v| v.trim().parse().ok());
        let defaults = SolveOptions::default();
        SolveOptions {
            max_iterations: self.cli.global.max_iters.or(env_cap).unwrap_or(defaults.max_iterations),
            tolerance: self.cli.global.tol,
            trace: self.cli.global.trace,
            ..defaults
        }
    }

    fn dispatch<T: Scalar>(&self, err: &mut dyn Write) -> CliResult<Output> {
        match &self.cli.command {
            Command::Solve { files, method } => self.solve::<T>(files, *method, err),
            Command::Compare { files } => self.compare::<T>(files, err),
            Command::ProjectHalfspace { halfspace, point } => {
                let h: HalfSpace<T> = self.halfspace(halfspace)?;
                let x = self.point(point)?;
                self.same_dim((halfspace, h.dim()), (point, x.len()))?;
                let p = h.project(&x)?;
                let inside = h.contains(&x)?;
                Ok(Output {
                    text: format!("{p}\n"),
                    json: json!({ "projection": to_json(&p), "contains": inside }),
                    code: EXIT_OK,
                })
            }
            Command::Distance {
                halfspace,
                generators,
                point,
            } => {
                let x: TropicalVector<T> = self.point(point)?;
                let d = match (halfspace, generators) {
                    (Some(hp), _) => {
                        let h: HalfSpace<T> = self.halfspace(hp)?;
                        self.same_dim((hp, h.dim()), (point, x.len()))?;
                        h.distance(&x)?
                    }
                    (None, Some(gp)) => {
                        let v: GeneratedSemimodule<T> = self.generators(gp)?;
                        self.same_dim((gp, v.dim()), (point, x.len()))?;
                        v.distance_to(&x)?
                    }
                    (None, None) => unreachable!("clap requires one of the two"),
                };
                Ok(Output {
                    text: format!("{d}\n"),
                    json: json!({ "distance": to_json(&d) }),
                    code: EXIT_OK,
                })
            }
            Command::Canonicalize { halfspace } => self.canonicalize::<T>(halfspace),
            Command::BestApprox { halfspace, point } => self.best_approx::<T>(halfspace, point),
            Command::ProjectSemimodule { generators, point } => {
                let v: GeneratedSemimodule<T> = self.generators(generators)?;
                let x = self.point(point)?;
                self.same_dim((generators, v.dim()), (point, x.len()))?;
                let p = v.project(&x)?;
                let d = v.distance_to(&x)?;
                let member = p == x;
                Ok(Output {
                    text: format!("projection: {p}\ndistance: {d}\nmember: {member}\n"),
                    json: json!({ "projection": to_json(&p), "distance": to_json(&d), "member": member }),
                    code: EXIT_OK,
                })
            }
            Command::Separate { generators, point } => self.separate::<T>(generators, point),
        }
    }

    fn solve<T: Scalar>(&self, files: &SystemFiles, method: MethodArg, err: &mut dyn Write) -> CliResult<Output> {
        let (sys, u) = self.system::<T>(files)?;
        let opts = self.options();
        let mut reports = Vec::new();
        if matches!(method, MethodArg::Cyclic | MethodArg::Both) {
            reports.push(cyclic_solve(&sys, &u, &opts)?);
        }
        if matches!(method, MethodArg::Power | MethodArg::Both) {
            warn_inadmissible(&sys, files, err);
            reports.push(power_solve(&sys, &u, &opts)?);
        }
        let code = reports.iter().map(status_code).max().unwrap_or(EXIT_OK);
        let text = reports.iter().map(render_report).collect::<Vec<_>>().join("\n");
        let json = match reports.as_slice() {
            [single] => to_json(single),
            many => Value::Object(
                many.iter()
                    .map(|r| (to_json(&r.method).as_str().unwrap_or_default().to_string(), to_json(r)))
                    .collect(),
            ),
        };
        Ok(Output { text, json, code })
    }

    fn compare<T: Scalar>(&self, files: &SystemFiles, err: &mut dyn Write) -> CliResult<Output> {
        let (sys, u) = self.system::<T>(files)?;
        warn_inadmissible(&sys, files, err);
        let opts = SolveOptions {
            trace: true,
            ..self.options()
        };
        let (cyclic, power) = std::thread::scope(|s| {
            let c = s.spawn(|| cyclic_solve(&sys, &u, &opts));
            let p = s.spawn(|| power_solve(&sys, &u, &opts));
            (c.join().expect("cyclic solver panicked"), p.join().expect("power solver panicked"))
        });
        let (cyclic, power) = (cyclic?, power?);
        let sandwich = sandwich_holds(&cyclic, &power, sys.nrows());
        let same_limit = cyclic.solution == power.solution;
        let mut text = format!(
            "cyclic: {} after {} sweep(s), {} operations\npower: {} after {} step(s), {} operations\n",
            cyclic.solution, cyclic.iterations, cyclic.operations, power.solution, power.iterations, power.operations
        );
        let _ = writeln!(text, "same limit: {same_limit}\nsandwich holds: {sandwich}");
        let code = [status_code(&cyclic), status_code(&power)]
            .into_iter()
            .max()
            .unwrap_or(EXIT_OK);
        let mut shown = [cyclic, power];
        if !self.cli.global.trace {
            for r in &mut shown {
                r.trace = None;
            }
        }
        Ok(Output {
            text,
            json: json!({
                "cyclic": to_json(&shown[0]),
                "power": to_json(&shown[1]),
                "same_limit": same_limit,
                "sandwich": sandwich,
            }),
            code,
        })
    }

    fn canonicalize<T: Scalar>(&self, path: &Path) -> CliResult<Output> {
        let h: HalfSpace<T> = self.halfspace(path)?;
        let c = h.canonicalize()?;
        let (apex, sectors) = c.apex_and_sectors();
        let finite = c.has_finite_apex();
        let sector_ids: Vec<usize> = sectors.iter().map(|s| s.index).collect();
        let text = format!(
            "a': {}\nb': {}\nI: {}\nJ: {}\napex: {apex}\nfinite apex: {finite}\nsectors: {}\n",
            c.a_prime,
            c.b_prime,
            index_list(&c.i_set),
            index_list(&c.j_set),
            sector_ids.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
        );
        Ok(Output {
            text,
            json: json!({
                "a_prime": to_json(&c.a_prime),
                "b_prime": to_json(&c.b_prime),
                "I": c.i_set.members(),
                "J": c.j_set.members(),
                "apex": to_json(&apex),
                "finite_apex": finite,
                "sectors": sector_ids,
            }),
            code: EXIT_OK,
        })
    }

    fn best_approx<T: Scalar>(&self, hp: &Path, xp: &Path) -> CliResult<Output> {
        let h: HalfSpace<T> = self.halfspace(hp)?;
        let x = self.point(xp)?;
        self.same_dim((hp, h.dim()), (xp, x.len()))?;
        let result = h.best_approx_set(&x)?;
        let text = match &result {
            BestApprox::InfiniteDistance => "distance: +inf\nevery element of the half-space is a best approximation\n".to_string(),
            BestApprox::Faces(set) => {
                let mut s = format!("distance: {}\n", set.distance);
                for f in &set.faces {
                    let mut parts: Vec<String> = Vec::new();
                    for k in 0..x.len() {
                        if let Some(v) = f.fixed.get(&k) {
                            parts.push(format!("h{k} = {v}"));
                        } else if let Some((lo, hi)) = f.bounds.get(&k) {
                            parts.push(format!("{lo} <= h{k} <= {hi}"));
                        }
                    }
                    let _ = writeln!(s, "face {}: {}  (up to adding a constant)", f.pivot, parts.join(", "));
                }
                s
            }
        };
        Ok(Output {
            text,
            json: to_json(&result),
            code: EXIT_OK,
        })
    }

    fn separate<T: Scalar>(&self, gp: &Path, xp: &Path) -> CliResult<Output> {
        let v: GeneratedSemimodule<T> = self.generators(gp)?;
        let x = self.point(xp)?;
        self.same_dim((gp, v.dim()), (xp, x.len()))?;
        let p = v.project(&x)?;
        if p == x {
            return Err(Error::NoSeparation.into());
        }
        let (h, support) = match v.universal_halfspace(&x) {
            Ok(h) => (h, IndexSet::full(x.len())),
            Err(Error::NonFiniteProjection(_)) => {
                let r = reduce_problem(&v, &x)?;
                (r.semimodule.universal_halfspace(&r.point)?, r.support)
            }
            Err(e) => return Err(e.into()),
        };
        let d = v.distance_to(&x)?;
        let reduced = support.len() < x.len();
        let mut text = format!("a: {}\nb: {}\nprojection: {p}\ndistance: {d}\n", h.a(), h.b());
        if reduced {
            let _ = writeln!(text, "coordinates: {}", index_list(&support));
        }
        Ok(Output {
            text,
            json: json!({
                "a": to_json(h.a()),
                "b": to_json(h.b()),
                "projection": to_json(&p),
                "distance": to_json(&d),
                "coordinates": support.members(),
            }),
            code: EXIT_OK,
        })
    }
}

fn warn_inadmissible<T: Scalar>(sys: &InequalitySystem<T>, files: &SystemFiles, err: &mut dyn Write) {
    if let Err(Error::Inadmissible { column }) = sys.check_admissible() {
        let _ = writeln!(
            err,
            "warning: column {column} of {} has no finite entry; the power step leaves that coordinate unchanged",
            files.b.display()
        );
    }
}

fn status_code<T: Scalar>(r: &SolveReport<T>) -> i32 {
    match r.status {
        SolveStatus::Solved => EXIT_OK,
        SolveStatus::BottomReached | SolveStatus::IterationCapHit => EXIT_INFEASIBLE,
    }
}

fn render_report<T: Scalar>(r: &SolveReport<T>) -> String {
    let unit = match r.method {
        crate::solvers::Method::Cyclic => "sweeps",
        crate::solvers::Method::Power => "steps",
    };
    let mut s = format!(
        "method: {}\nstatus: {:?}\nsolution: {}\n{unit}: {}\n",
        to_json(&r.method).as_str().unwrap_or_default(),
        r.status,
        r.solution,
        r.iterations
    );
    if !r.truncated.is_empty() {
        let _ = writeln!(
            s,
            "note: coordinates {:?} fell below the divergence cutoff and were set to -inf",
            r.truncated
        );
    }
    if let Some(trace) = &r.trace {
        for (k, p) in trace.points.iter().enumerate() {
            let _ = writeln!(s, "  {k}: {p}");
        }
    }
    s
}

/// `P_V(u) ≤ ξ^{pk} ≤ η^k` along both traces.
fn sandwich_holds<T: Scalar>(cyclic: &SolveReport<T>, power: &SolveReport<T>, p: usize) -> bool {
    let (Some(xi), Some(eta)) = (&cyclic.trace, &power.trace) else {
        return false;
    };
    let (xi, eta) = (&xi.points, &eta.points);
    let k_max = eta.len().max(xi.len() / p.max(1) + 1);
    (0..k_max).all(|k| {
        let x = &xi[(p * k).min(xi.len() - 1)];
        let e = &eta[k.min(eta.len() - 1)];
        cyclic.solution.le(x) && x.le(e)
    })
}
