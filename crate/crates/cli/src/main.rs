use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use yoneda::algebra::{expand_rational_series, AlgebraFile, GradedAlgebra, PresentationFile, DEFAULT_MAX_DEGREE};
use yoneda::bar::{memory_limit_from_env, BarComplex, Cochain};
use yoneda::fk3::Fk3;
use yoneda::report::{run_fk3, Level, ReportOptions, Status};
use yoneda::twisted::{TwistFile, TwistingMap};
use yoneda::yd::{ActionFile, YdStructure};
use yoneda::{Error, Rational};

#[derive(Parser)]
#[command(name = "yoneda", version, about = "Exact Yoneda algebra computations")]
struct Cli {
    /// Worker threads for the report runner.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Leave out timestamps and wall times so output is reproducible.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build algebras from presentations.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// Yoneda algebra dimensions and relations.
    Ext {
        #[command(subcommand)]
        command: ExtCommand,
    },
    /// Spectral sequence pages of twisted tensor products.
    Ce {
        #[command(subcommand)]
        command: CeCommand,
    },
    /// Dimension of the invariants of a group acting on bar cochains.
    Invariants {
        algebra: PathBuf,
        action: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// Restrict to one group degree, e.g. `e` or `(12)`.
        #[arg(long)]
        gdeg: Option<String>,
    },
    /// Coefficients of num/den as a power series; coefficients comma separated, lowest first.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        num: String,
        #[arg(allow_hyphen_values = true)]
        den: String,
        #[arg(long)]
        n: usize,
    },
    /// Print the built-in input files for the Fomin-Kirillov example.
    Fixture { name: FixtureName },
    /// Run a verification suite.
    Report {
        #[command(subcommand)]
        command: ReportCommand,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    Build {
        presentation: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExtCommand {
    Dims {
        algebra: PathBuf,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        per_degree: bool,
    },
    /// Exit 0 iff every relation is a coboundary.
    CheckRelations { algebra: PathBuf, relations: PathBuf },
}

#[derive(Subcommand)]
enum CeCommand {
    Page {
        twist: PathBuf,
        #[arg(long)]
        p_max: usize,
        #[arg(long)]
        q_max: usize,
    },
}

#[derive(Subcommand)]
enum ReportCommand {
    Fk3 {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    A,
    B,
    R,
    Twist,
    Action,
}

/// `{"cocycles": {"x": [[1, ["a"]]]}, "relations": [[[1, ["x", "y"]]]]}`
#[derive(Deserialize, Default)]
#[serde(default)]
struct RelationsFile {
    cocycles: BTreeMap<String, Vec<(Rational, Vec<String>)>>,
    relations: Vec<Vec<(Rational, Vec<String>)>>,
}

enum Failure {
    Input(String, String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::ContainmentViolation | Error::SignResolutionFailure(_) => return Failure::Internal(e.to_string()),
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonHomogeneousRelation { .. } => "NonHomogeneousRelation",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::NotACocycle => "NotACocycle",
            Error::RelationViolation(_) => "RelationViolation",
            Error::RNotDualNumbers => "RNotDualNumbers",
            Error::ResourceLimit(_) => "ResourceLimit",
            Error::Input(_) => "InvalidInput",
        };
        Failure::Input(kind.into(), e.to_string())
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input("InvalidInput".into(), msg.into())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input("ParseError".into(), format!("{}: {e}", path.display())))
}

/// Reads either a computed algebra or a presentation.
fn load_algebra(path: &Path) -> Result<GradedAlgebra, Failure> {
    let value: Value = read_json(path)?;
    if value.get("basis").is_some() {
        let file: AlgebraFile =
            serde_json::from_value(value).map_err(|e| Failure::Input("ParseError".into(), e.to_string()))?;
        Ok(file.to_algebra()?)
    } else {
        let file: PresentationFile =
            serde_json::from_value(value).map_err(|e| Failure::Input("ParseError".into(), e.to_string()))?;
        Ok(GradedAlgebra::from_presentation(&file.to_presentation()?, DEFAULT_MAX_DEGREE)?)
    }
}

fn new_bar<'a>(alg: &'a GradedAlgebra) -> Result<BarComplex<'a>, Failure> {
    let mut bar = BarComplex::new(alg)?;
    bar.set_memory_limit_mb(memory_limit_from_env());
    Ok(bar)
}

fn print(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("serializable"));
}

/// Writes a line to stdout, exiting quietly when the reader has gone away.
fn emit(line: &str) {
    if let Err(e) = writeln!(std::io::stdout().lock(), "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
    }
}

fn parse_coeffs(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',').map(|t| t.trim().parse::<Rational>().map_err(|_| input(format!("bad coefficient {t:?}")))).collect()
}

fn cochain_from_terms(bar: &BarComplex<'_>, terms: &[(Rational, Vec<String>)]) -> Result<Cochain, Failure> {
    let n = terms.first().map_or(0, |t| t.1.len());
    let mut c = Cochain::zero(n);
    for (x, word) in terms {
        if word.len() != n {
            return Err(input("terms of a cocycle have different lengths"));
        }
        let w = word
            .iter()
            .map(|l| bar.label_of(l).ok_or_else(|| input(format!("unknown basis label {l:?}"))))
            .collect::<Result<Vec<u8>, _>>()?;
        c.add_term(w.into_iter().collect(), x);
    }
    Ok(c)
}

fn check_relations(algebra: &Path, relations: &Path) -> Result<bool, Failure> {
    let alg = load_algebra(algebra)?;
    let file: RelationsFile = read_json(relations)?;
    let bar = new_bar(&alg)?;
    let mut named = BTreeMap::new();
    for (name, terms) in &file.cocycles {
        let c = cochain_from_terms(&bar, terms)?;
        if !bar.is_cocycle(&c) {
            return Err(Failure::Input("NotACocycle".into(), format!("{name} is not a cocycle")));
        }
        named.insert(name.clone(), c);
    }
    let mut results = Vec::new();
    for rel in &file.relations {
        let mut total: Option<Cochain> = None;
        for (x, factors) in rel {
            let mut term = Cochain::one();
            for f in factors {
                term = term.cup(named.get(f).ok_or_else(|| input(format!("unknown cocycle {f:?}")))?);
            }
            let term = term.scale(x);
            if total.as_ref().is_some_and(|t| t.n() != term.n()) {
                return Err(input("terms of a relation have different degrees"));
            }
            total = Some(match total {
                None => term,
                Some(t) => t.add(&term),
            });
        }
        let total = total.unwrap_or_else(|| Cochain::zero(0));
        results.push(bar.is_exact(&total)?);
    }
    print(
        &json!({ "relations": results.iter().enumerate().map(|(i, &h)| json!({"index": i, "holds": h})).collect::<Vec<_>>() }),
    );
    Ok(results.iter().all(|&h| h))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Algebra { command: AlgebraCommand::Build { presentation, max_degree, output } } => {
            let file: PresentationFile = read_json(&presentation)?;
            let alg = GradedAlgebra::from_presentation(&file.to_presentation()?, max_degree)?;
            let text = serde_json::to_string_pretty(&AlgebraFile::from_algebra(&alg)).expect("serializable");
            match output {
                Some(p) => fs::write(&p, text + "\n").map_err(|e| input(format!("{}: {e}", p.display())))?,
                None => emit(&text),
            }
            Ok(true)
        }
        Command::Ext { command: ExtCommand::Dims { algebra, n_max, per_degree } } => {
            let alg = load_algebra(&algebra)?;
            let bar = new_bar(&alg)?;
            let mut dims = Vec::new();
            let mut by_degree = Vec::new();
            for n in 0..=n_max {
                let per = bar.ext_dims_by_internal_degree(n)?;
                dims.push(per.iter().map(|e| e.1).sum::<usize>());
                by_degree.push(
                    per.into_iter().filter(|e| e.1 > 0).map(|(p, d)| json!({"p": p, "dim": d})).collect::<Vec<_>>(),
                );
            }
            if per_degree {
                print(&json!({"dims": dims, "by_internal_degree": by_degree}));
            } else {
                print(&json!({ "dims": dims }));
            }
            Ok(true)
        }
        Command::Ext { command: ExtCommand::CheckRelations { algebra, relations } } => {
            check_relations(&algebra, &relations)
        }
        Command::Ce { command: CeCommand::Page { twist, p_max, q_max } } => {
            let file: TwistFile = read_json(&twist)?;
            let a = GradedAlgebra::from_presentation(&file.a.to_presentation()?, DEFAULT_MAX_DEGREE)?;
            let r = GradedAlgebra::from_presentation(&file.r.to_presentation()?, DEFAULT_MAX_DEGREE)?;
            let t = TwistingMap::from_file(&a, &r, &file)?;
            let bar = new_bar(&a)?;
            let page = t.ce_second_page(&bar, p_max, q_max)?;
            let n = p_max.min(q_max);
            print(&json!({"page": page, "upper_bounds": page.upper_bounds(n)?}));
            Ok(true)
        }
        Command::Invariants { algebra, action, n, p, gdeg } => {
            let alg = load_algebra(&algebra)?;
            let file: ActionFile = read_json(&action)?;
            let yd = YdStructure::from_file(&alg, &file)?;
            let mut bar = BarComplex::with_grading(&alg, Some(yd.grading()))?;
            bar.set_memory_limit_mb(memory_limit_from_env());
            let g = gdeg.as_deref().map(|s| yd.group().parse_element(s)).transpose()?;
            let dim = yd.invariant_dims_direct(&bar, n, p, g)?;
            let mut out = json!({"n": n, "p": p, "dim": dim});
            if g == Some(yd.group().identity()) {
                let o = yd.invariant_dims_formula(&bar, n, p)?;
                out["formula"] = json!({"total": o.total, "summary": o.summary()});
                if o.total != dim {
                    return Err(Failure::Internal(format!("projector gives {dim}, orbit counting gives {}", o.total)));
                }
            }
            print(&out);
            Ok(true)
        }
        Command::Hilbert { num, den, n } => {
            let coeffs = expand_rational_series(&parse_coeffs(&num)?, &parse_coeffs(&den)?, n)?;
            print(&json!({ "coefficients": coeffs }));
            Ok(true)
        }
        Command::Fixture { name } => {
            let f = Fk3::new()?;
            let v = match name {
                FixtureName::A => json!(Fk3::presentation_file("A")),
                FixtureName::B => json!(Fk3::presentation_file("B")),
                FixtureName::R => json!(Fk3::presentation_file("R")),
                FixtureName::Twist => json!(f.twist_file()?),
                FixtureName::Action => json!(f.action_file()?),
            };
            print(&v);
            Ok(true)
        }
        Command::Report { command: ReportCommand::Fk3 { level, json } } => {
            let opts = ReportOptions {
                level: match level {
                    LevelArg::Fast => Level::Fast,
                    LevelArg::Full => Level::Full,
                },
                threads: cli.threads,
                timings: !cli.no_timestamp,
                memory_limit_mb: memory_limit_from_env(),
            };
            let mut report = run_fk3(&opts)?;
            if !cli.no_timestamp {
                report.timestamp = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
            }
            for c in &report.checks {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                let time = c.wall_ms.map(|ms| format!(" ({ms} ms)")).unwrap_or_default();
                let note = c.note.as_ref().map(|n| format!(" [{n}]")).unwrap_or_default();
                emit(&format!("{status} {} {}{time}{note}", c.id, c.claim));
            }
            emit(&format!(
                "{} passed, {} failed, {} skipped",
                report.count(Status::Pass),
                report.count(Status::Fail),
                report.count(Status::Skipped)
            ));
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).expect("serializable");
                fs::write(&path, text + "\n").map_err(|e| input(format!("{}: {e}", path.display())))?;
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(kind, message)) => {
            eprintln!("{}", json!({"error": kind, "message": message}));
            ExitCode::from(2)
        }
        Err(Failure::Internal(message)) => {
            eprintln!("{}", json!({"error": "InternalError", "message": message}));
            ExitCode::from(3)
        }
    }
}
