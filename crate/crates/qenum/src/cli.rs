//! Command-line front end. [`run`] does all the work and returns the text and
//! exit code, so the binary is a thin shell around it.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qenum_core::algebra::Rational;
use qenum_core::code::StabilizerCode;
use qenum_core::distributions::{
    b_vars, c_vars, d_vars, distributions_oracle, distributions_symplectic, EnumeratorSet, Kind,
};
use qenum_core::error_basis::DEFAULT_BUDGET;
use qenum_core::field::FieldSpec;
use qenum_core::invariant::{build_case, express_in_generators, CaseId, DEFAULT_DEGREE_CAP};
use qenum_core::macwilliams::{
    check_formally_self_dual, mac_b, mac_c, mac_c_exchanged, mac_d, TransformContext,
};
use qenum_core::Error as CoreError;

use crate::codefile::parse_code;
use crate::corpus::builtin;
use crate::polytext::parse_poly;
use crate::suite::{verify_paper, SuiteConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "qenum", version, about = "Exact weight enumerators of q-ary stabilizer codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the weight distributions of a code as polynomials.
    Enumerate(EnumerateArgs),
    /// Apply a MacWilliams transform to a dual enumerator.
    Transform(TransformArgs),
    /// Decide whether a code is formally self-dual.
    CheckSelfDual(CodeArgs),
    /// Write an invariant polynomial in the generators of an invariant ring.
    Express(ExpressArgs),
    /// Check every identity of the invariant cases and the MacWilliams suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct CodeArgs {
    /// Code file, or `builtin:NAME` for an embedded code.
    #[arg(long)]
    pub code: String,
    /// Largest q^(2n) accepted by dense enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "B")]
    B,
    #[value(name = "Bperp")]
    BPerp,
    #[value(name = "C")]
    C,
    #[value(name = "Cperp")]
    CPerp,
    #[value(name = "D")]
    D,
    #[value(name = "Dperp")]
    DPerp,
    #[value(name = "all")]
    All,
}

impl KindArg {
    fn kinds(self) -> Vec<Kind> {
        match self {
            KindArg::B => vec![Kind::B],
            KindArg::BPerp => vec![Kind::BPerp],
            KindArg::C => vec![Kind::C],
            KindArg::CPerp => vec![Kind::CPerp],
            KindArg::D => vec![Kind::D],
            KindArg::DPerp => vec![Kind::DPerp],
            KindArg::All => Kind::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Symplectic,
    Both,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value = "all")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "oracle")]
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    /// File holding the dual enumerator.
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long, value_enum)]
    pub kind: Family,
    /// Take q, n and K from this code (file or `builtin:NAME`).
    #[arg(long, conflicts_with_all = ["q", "n", "k"])]
    pub code: Option<String>,
    #[arg(long, requires_all = ["n", "k"])]
    pub q: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Code dimension K, as an integer or fraction.
    #[arg(long)]
    pub k: Option<String>,
    /// For C, use the form with the X and Z variable pairs exchanged.
    #[arg(long)]
    pub exchanged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Weight,
    Double,
    #[value(name = "complete-q2")]
    CompleteQ2,
    #[value(name = "complete-q3")]
    CompleteQ3,
}

#[derive(Args, Debug)]
pub struct ExpressArgs {
    /// File holding the invariant polynomial.
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long, value_enum)]
    pub case: CaseArg,
    /// Field order for the weight and double-weight cases.
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: u32,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Field orders for the weight and double-weight cases.
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4, 5])]
    pub q: Vec<u32>,
    /// Largest code length taken from the built-in corpus.
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

/// Result of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

type Step<T> = std::result::Result<T, Outcome>;

fn read(path: &Path) -> Step<String> {
    fs::read_to_string(path).map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))
}

fn load_code(src: &str) -> Step<StabilizerCode> {
    if let Some(name) = src.strip_prefix("builtin:") {
        return builtin(name)
            .map(|b| b.code())
            .ok_or_else(|| Outcome::input_error(format!("no built-in code named '{name}'")));
    }
    let text = read(Path::new(src))?;
    parse_code(&text).map_err(|e| Outcome::input_error(format!("{src}:{e}")))
}

fn core_input(e: CoreError) -> Outcome {
    Outcome::input_error(e)
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Transform(a) => transform(a),
        Command::CheckSelfDual(a) => check_self_dual(a),
        Command::Express(a) => express(a),
        Command::VerifyPaper(a) => verify(a),
    }
    .unwrap_or_else(|o| o);
    if let Some(path) = &cli.out {
        if out.code != EXIT_INPUT {
            if let Err(e) = fs::write(path, &out.stdout) {
                return Outcome::input_error(format!("{}: {e}", path.display()));
            }
            out.stdout.clear();
        }
    }
    out
}

fn enumerate(a: &EnumerateArgs) -> Step<Outcome> {
    let code = load_code(&a.code.code)?;
    let oracle = || distributions_oracle(&code, a.code.budget).map_err(core_input);
    let es: EnumeratorSet = match a.method {
        Method::Oracle => oracle()?,
        Method::Symplectic => distributions_symplectic(&code).map_err(core_input)?,
        Method::Both => {
            let o = oracle()?;
            let s = distributions_symplectic(&code).map_err(core_input)?;
            let bad: Vec<&str> = Kind::ALL
                .iter()
                .filter(|&&k| o.poly(k) != s.poly(k))
                .map(|k| k.name())
                .collect();
            if !bad.is_empty() {
                return Ok(Outcome {
                    code: EXIT_FAIL,
                    stdout: String::new(),
                    stderr: format!("oracle and symplectic paths disagree on {}\n", bad.join(", ")),
                });
            }
            o
        }
    };
    let kinds = a.kind.kinds();
    let mut text = String::new();
    for k in &kinds {
        if kinds.len() == 1 {
            writeln!(text, "{}", es.poly(*k)).unwrap();
        } else {
            writeln!(text, "{} = {}", k.name(), es.poly(*k)).unwrap();
        }
    }
    Ok(Outcome {
        code: EXIT_OK,
        stdout: text,
        stderr: String::new(),
    })
}

fn transform(a: &TransformArgs) -> Step<Outcome> {
    let ctx = match (&a.code, a.q, a.n, &a.k) {
        (Some(src), ..) => TransformContext::for_code(&load_code(src)?),
        (None, Some(q), Some(n), Some(k)) => {
            let k: Rational = k
                .parse()
                .map_err(|_| Outcome::input_error(format!("invalid dimension '{k}'")))?;
            let spec = FieldSpec::new(q).map_err(core_input)?;
            TransformContext::new(spec, n, k).map_err(core_input)?
        }
        _ => return Err(Outcome::input_error("give --code, or all of --q, --n and --k")),
    };
    let q = ctx.spec().q();
    let p = ctx.spec().p();
    let vars = match a.kind {
        Family::B => b_vars(),
        Family::C => c_vars(),
        Family::D => d_vars(q),
    };
    let text = read(&a.poly)?;
    let f = parse_poly(&text, p, &vars)
        .map_err(|e| Outcome::input_error(format!("{}:{e}", a.poly.display())))?;
    let g = match (a.kind, a.exchanged) {
        (Family::B, _) => mac_b(&f, &ctx),
        (Family::C, false) => mac_c(&f, &ctx),
        (Family::C, true) => mac_c_exchanged(&f, &ctx),
        (Family::D, _) => mac_d(&f, &ctx),
    }
    .map_err(core_input)?;
    Ok(Outcome {
        code: EXIT_OK,
        stdout: format!("{g}\n"),
        stderr: String::new(),
    })
}

fn check_self_dual(a: &CodeArgs) -> Step<Outcome> {
    let code = load_code(&a.code)?;
    let es = distributions_oracle(&code, a.budget).map_err(core_input)?;
    let k = code.dimension();
    let sd = check_formally_self_dual(&es, &k);
    let scaled = es.poly(Kind::DPerp).scale_rational(&k.recip());
    let mut text = format!("formally-self-dual: {}\n", sd.formally_self_dual);
    writeln!(text, "K = {k}").unwrap();
    writeln!(text, "D = {}", es.poly(Kind::D)).unwrap();
    writeln!(text, "(1/K)*Dperp = {scaled}").unwrap();
    Ok(Outcome {
        code: if sd.formally_self_dual { EXIT_OK } else { EXIT_FAIL },
        stdout: text,
        stderr: String::new(),
    })
}

fn express(a: &ExpressArgs) -> Step<Outcome> {
    let id = match a.case {
        CaseArg::Weight => CaseId::Weight(a.q),
        CaseArg::Double => CaseId::Double(a.q),
        CaseArg::CompleteQ2 => CaseId::CompleteQ2,
        CaseArg::CompleteQ3 => CaseId::CompleteQ3,
    };
    let case = build_case(id).map_err(core_input)?;
    let text = read(&a.poly)?;
    let f = parse_poly(&text, case.prime, &case.vars)
        .map_err(|e| Outcome::input_error(format!("{}:{e}", a.poly.display())))?;
    match express_in_generators(&f, &case, a.degree_cap) {
        Ok(e) => Ok(Outcome {
            code: EXIT_OK,
            stdout: format!("{e}\n"),
            stderr: String::new(),
        }),
        Err(e @ (CoreError::NotInvariant | CoreError::NoExpression(_))) => Ok(Outcome {
            code: EXIT_FAIL,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }),
        Err(e) => Err(core_input(e)),
    }
}

fn verify(a: &VerifyArgs) -> Step<Outcome> {
    let cfg = SuiteConfig {
        qs: a.q.clone(),
        max_n: a.max_n,
        budget: a.budget,
    };
    let lines = verify_paper(&cfg).map_err(core_input)?;
    let mut text = String::new();
    for l in &lines {
        writeln!(text, "{l}").unwrap();
    }
    let failed: Vec<_> = lines.iter().filter(|l| !l.pass).collect();
    writeln!(text, "{} of {} checks passed", lines.len() - failed.len(), lines.len()).unwrap();
    let mut stderr = String::new();
    if !failed.is_empty() {
        writeln!(stderr, "failed:").unwrap();
        for l in &failed {
            writeln!(stderr, "  {}", l.label).unwrap();
        }
    }
    Ok(Outcome {
        code: if failed.is_empty() { EXIT_OK } else { EXIT_FAIL },
        stdout: text,
        stderr,
    })
}
