//! `algcat`: command-line access to the algebra checkers.
//!
//! Exit codes: 0 holds / success, 1 fails, 2 unknown at bound, 3 input error.
//! Algebras are files in the `.alg` format or `builtin:<name>[:<param>]`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use algcat::classify::{
    self, CheckOptions, ClassificationReport, Mode, ProbeOutcome, Property, Status,
};
use algcat::constructions::{
    is_symmetric, is_transitive, pullback, reflexive_relations, relations_commute, Closure, Origin,
};
use algcat::io::{self, ReportFormat};
use algcat::points::{self, Point, SchreierVerdict, StableVerdict};
use algcat::{enumerate_homs, validate_axioms, Algebra, Elem, Error, FiniteAlgebra, Homomorphism};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "algcat", version, about = "Points, pullbacks and special objects of finite algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of each algebra
    Validate { files: Vec<String> },

    /// Classify algebras against all five properties
    Classify {
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },

    /// Check a single property; the exit code is its status
    Check {
        property: String,
        file: String,
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },

    /// Enumerate homomorphisms A -> B
    Homs {
        a: String,
        b: String,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },

    /// Strength, Schreier and stable-strength checks for a point (f, s)
    PointCheck {
        #[arg(long = "f")]
        f: PathBuf,
        #[arg(long = "s")]
        s: PathBuf,
        a: String,
        b: String,
        #[arg(long)]
        pool: Option<PathBuf>,
        #[arg(long)]
        schreier: bool,
    },

    /// Pullback of f: A -> B and g: C -> B
    Pullback {
        #[arg(long = "f")]
        f: PathBuf,
        #[arg(long = "g")]
        g: PathBuf,
        a: String,
        c: String,
        b: String,
    },

    /// Reflexive relations on Y, with transitivity and commutation
    Relations {
        y: String,
        #[arg(long, default_value_t = 1000)]
        max: usize,
    },

    /// Free-product probe for the Mal'tsev property of a monoid
    ProbeCoproduct {
        m: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        length: u64,
    },
}

#[derive(clap::Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum, default_value = "both")]
    mode: ModeArg,
    /// Word-weight bound for normal-form monoids
    #[arg(long, default_value_t = 20)]
    bound: u64,
    /// Directory of `.alg` files used as test domains
    #[arg(long)]
    pool: Option<PathBuf>,
    #[arg(long)]
    no_validate: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Exact,
    Bounded,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Machine => ReportFormat::Machine,
        }
    }
}

impl CheckArgs {
    fn options(&self) -> algcat::Result<CheckOptions> {
        Ok(CheckOptions {
            mode: match self.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Bounded => Mode::Bounded,
                ModeArg::Both => Mode::Both,
            },
            pool: self.pool.as_deref().map(io::load_pool).transpose()?,
            bound: self.bound,
        })
    }
}

fn read(path: &Path) -> algcat::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn finite(source: &str) -> algcat::Result<Arc<FiniteAlgebra>> {
    io::load_finite(source, true)
}

fn mapping(path: &Path, a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> algcat::Result<Homomorphism> {
    io::parse_mapping(&read(path)?, a, b)
}

fn element(a: &FiniteAlgebra, name: &str) -> algcat::Result<Elem> {
    a.index_of(name)
        .ok_or_else(|| Error::Input(format!("`{name}` is not an element of {}", a.name())))
}

fn set_names(a: &FiniteAlgebra, es: &[Elem]) -> String {
    let names: Vec<&str> = es.iter().map(|&e| a.element_name(e)).collect();
    format!("{{{}}}", names.join(", "))
}

fn write_trace(out: &mut String, a: &FiniteAlgebra, closure: &Closure<Elem>) {
    for step in closure.trace() {
        let e = a.element_name(step.element);
        match &step.origin {
            Origin::Constant => writeln!(out, "  {e}  constant"),
            Origin::Generator => writeln!(out, "  {e}  generator"),
            Origin::Derived { op, left, right } => writeln!(
                out,
                "  {e} = {op}({}, {})",
                a.element_name(*left),
                a.element_name(*right)
            ),
        }
        .unwrap();
    }
}

/// Worst status across reports: any failure, else any unknown, else success.
fn reports_exit(reports: &[ClassificationReport]) -> u8 {
    let all = reports.iter().flat_map(|r| r.verdicts.iter().map(|v| v.status));
    all.map(|s| s.exit_code() as u8).fold(0, |acc, c| match (acc, c) {
        (1, _) | (_, 1) => 1,
        (a, c) => a.max(c),
    })
}

fn run(cli: Cli) -> algcat::Result<u8> {
    let mut out = String::new();
    let code = match cli.command {
        Command::Validate { files } => {
            let mut code = 0;
            for f in &files {
                let a = io::load_finite(f, false)?;
                let report = validate_axioms(&a);
                match report.first_failure() {
                    None => writeln!(out, "{}: ok", a).unwrap(),
                    Some((axiom, tuple)) => {
                        let names: Vec<&str> = tuple.iter().map(|&e| a.element_name(e)).collect();
                        writeln!(out, "{}: axiom `{axiom}` fails at ({})", a, names.join(", ")).unwrap();
                        code = 1;
                    }
                }
            }
            code
        }
        Command::Classify { files, check, format } => {
            let opts = check.options()?;
            let objects = files
                .iter()
                .map(|f| io::load_algebra(f, !check.no_validate))
                .collect::<algcat::Result<Vec<Algebra>>>()?;
            let reports = classify::classify_table(&objects, &opts)?;
            out.push_str(&io::render_reports(&reports, format.into()));
            reports_exit(&reports)
        }
        Command::Check {
            property,
            file,
            check,
            format,
        } => {
            let property: Property = property.parse()?;
            let opts = check.options()?;
            let object = io::load_algebra(&file, !check.no_validate)?;
            let verdict = classify::check_property(&object, property, &opts)?;
            let report = ClassificationReport {
                object: object.name().to_string(),
                kind: object.kind(),
                verdicts: vec![verdict.clone()],
            };
            match format {
                FormatArg::Machine => out.push_str(&io::render_reports(&[report], ReportFormat::Machine)),
                FormatArg::Text => {
                    writeln!(out, "{} {}: {}", report.object, property, verdict.status).unwrap();
                    writeln!(out, "method: {}", verdict.method.name()).unwrap();
                    if let classify::Method::ExactTheorem(tag) = verdict.method {
                        writeln!(out, "theorem: {tag}").unwrap();
                    }
                    if let Some(c) = verdict.cross_check {
                        writeln!(out, "bounded search: {c}").unwrap();
                    }
                    if let Some(w) = &verdict.witness {
                        writeln!(out, "witness: {w}").unwrap();
                    }
                }
            }
            verdict.status.exit_code() as u8
        }
        Command::Homs { a, b, count, list } => {
            let (a, b) = (finite(&a)?, finite(&b)?);
            let homs = enumerate_homs(&a, &b)?;
            if count || !list {
                writeln!(out, "{}", homs.len()).unwrap();
            }
            if list {
                for h in &homs {
                    writeln!(out, "{}", h.describe()).unwrap();
                }
            }
            0
        }
        Command::PointCheck {
            f,
            s,
            a,
            b,
            pool,
            schreier,
        } => {
            let (a, b) = (finite(&a)?, finite(&b)?);
            let p = Point::new(mapping(&f, &a, &b)?, mapping(&s, &b, &a)?)?;
            let strength = points::is_strong_point(&p);
            let mut code = 0;
            if strength.strong {
                writeln!(out, "strong: kernel and section generate {}", a.name()).unwrap();
            } else {
                let w = strength.witness().unwrap_or_default();
                writeln!(out, "not strong: proper subalgebra {}", set_names(&a, &w)).unwrap();
                code = 1;
            }
            writeln!(out, "trace:").unwrap();
            write_trace(&mut out, &a, &strength.closure);

            if schreier {
                match points::is_schreier_point(&p)? {
                    SchreierVerdict::Schreier { decomposition } => {
                        writeln!(out, "schreier: yes").unwrap();
                        for (x, k) in decomposition.iter().enumerate() {
                            let sfx = p.s().apply(p.f().apply(x));
                            writeln!(
                                out,
                                "  {} = {} · {}",
                                a.element_name(x),
                                a.element_name(*k),
                                a.element_name(sfx)
                            )
                            .unwrap();
                        }
                    }
                    SchreierVerdict::NotSchreier { element, candidates } => {
                        writeln!(
                            out,
                            "schreier: no, at {} (kernel candidates {})",
                            a.element_name(element),
                            set_names(&a, &candidates)
                        )
                        .unwrap();
                        code = 1;
                    }
                }
            }

            let pool = match &pool {
                Some(dir) => io::load_pool(dir)?,
                None => classify::default_pool(b.kind()),
            };
            match points::is_stably_strong(&p, &pool)? {
                StableVerdict::Certified(c) => writeln!(out, "stably strong: certified ({c:?})").unwrap(),
                StableVerdict::Falsified { g, pulled, witness } => {
                    writeln!(out, "stably strong: no; pullback along {} is not strong", g.describe()).unwrap();
                    writeln!(
                        out,
                        "  witness in {}: {}",
                        pulled.domain().name(),
                        set_names(pulled.domain(), &witness)
                    )
                    .unwrap();
                }
                StableVerdict::UnknownAtPool => {
                    writeln!(out, "stably strong: unknown at pool ({} algebras)", pool.len()).unwrap()
                }
            }
            code
        }
        Command::Pullback { f, g, a, c, b } => {
            let (a, c, b) = (finite(&a)?, finite(&c)?, finite(&b)?);
            let pb = pullback(&mapping(&f, &a, &b)?, &mapping(&g, &c, &b)?)?;
            out.push_str(&io::render_algebra(&pb.algebra));
            0
        }
        Command::Relations { y, max } => {
            let y = finite(&y)?;
            let rels = reflexive_relations(&y, max)?;
            for (i, r) in rels.iter().enumerate() {
                writeln!(
                    out,
                    "R{i} {} transitive={} symmetric={}",
                    r.describe(),
                    is_transitive(r),
                    is_symmetric(r)
                )
                .unwrap();
            }
            let mut failing = Vec::new();
            for (i, r) in rels.iter().enumerate() {
                for (j, s) in rels.iter().enumerate().skip(i + 1) {
                    if !relations_commute(r, s)? {
                        failing.push(format!("R{i}R{j}"));
                    }
                }
            }
            if failing.is_empty() {
                writeln!(out, "all pairs commute").unwrap();
            } else {
                writeln!(out, "non-commuting pairs: {}", failing.join(" ")).unwrap();
            }
            0
        }
        Command::ProbeCoproduct { m, element: e, length } => {
            let m = finite(&m)?;
            let e = element(&m, &e)?;
            let setup = classify::ProbeSetup::new(&m, e)?;
            match classify::maltsev_freeproduct_probe(&m, e, length)? {
                ProbeOutcome::Generated { derivation } => {
                    writeln!(out, "generated at bound {length}").unwrap();
                    for step in derivation {
                        let pair = |w: &(algcat::Word, algcat::Word)| {
                            format!("({}, {})", setup.left.display(&w.0), setup.right.display(&w.1))
                        };
                        if let Origin::Derived { left, right, .. } = &step.origin {
                            writeln!(out, "  {} = {} · {}", pair(&step.element), pair(left), pair(right)).unwrap();
                        }
                    }
                    Status::Holds.exit_code() as u8
                }
                ProbeOutcome::AbsentAtBound { closure_size } => {
                    writeln!(out, "absent at bound {length} (closure has {closure_size} pairs)").unwrap();
                    Status::UnknownAtBound.exit_code() as u8
                }
            }
        }
    };
    print!("{out}");
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
