//! The `qflat` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::format::{parse_spec, print_fn, SpecFile};
use crate::ideal::{check_flat, net_ideal, NetSpec};
use crate::oracle::gen::{random_tnorm, Rng8};
use crate::oracle::{
    distributivity_suite, equivalence_harness, verify_adjunction, verify_sandwich, BrokenResiduum, Family, GridSpec,
    HarnessConfig,
};
use crate::order::{check_lower_set, check_upper_set, d_l, d_r, principal_lower, principal_upper, tensor};
use crate::pwfn::PwFn;
use crate::rat::Rat;
use crate::report::{CheckReport, Witness};
use crate::tnorm::{OrdinalSumTNorm, Residuated};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qflat", version, about = "Exact ordinal-sum t-norms, fuzzy lower/upper sets and flat ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the conjunction, implication or one of the two fuzzy orders.
    Eval {
        #[arg(long, short)]
        spec: Option<PathBuf>,
        tnorm: String,
        op: EvalOp,
        x: String,
        y: String,
    },
    /// Decide whether a function is a lower set, an upper set or a flat ideal.
    Check {
        #[arg(long, short)]
        spec: Option<PathBuf>,
        tnorm: String,
        kind: CheckKind,
        function: String,
    },
    /// Exact tensor product of a lower set and an upper set.
    Tensor {
        #[arg(long, short)]
        spec: Option<PathBuf>,
        tnorm: String,
        lower: String,
        upper: String,
    },
    /// Run the randomized verification suites.
    Verify {
        #[arg(long, short)]
        spec: Option<PathBuf>,
        /// Restrict to one t-norm instead of the built-in families.
        #[arg(long)]
        tnorm: Option<String>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Random t-norms (adjunction, sandwich), candidates (equivalence) or triples (distributivity).
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        grid: Option<u32>,
        #[arg(long, env = "QFLAT_SEED", default_value_t = 42)]
        seed: u64,
        /// Swap in a deliberately wrong implication; the adjunction suite must fail.
        #[arg(long)]
        mutant: bool,
    },
    /// Sample a function as CSV: `x,left,at,right` in decimal, then the same exactly.
    Csv {
        #[arg(long, short)]
        spec: Option<PathBuf>,
        /// T-norm used by derived expressions such as `lower(1/2)`.
        #[arg(long, default_value = "godel")]
        tnorm: String,
        function: String,
        #[arg(long, short = 'n', default_value_t = 11)]
        samples: usize,
    },
    /// Print a spec file in canonical form.
    Fmt { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalOp {
    Conj,
    Impl,
    Dl,
    Dr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Lower,
    Upper,
    Flat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Adjunction,
    Sandwich,
    Equivalence,
    Distributivity,
    All,
}

/// Text to print plus the exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, stderr: String::new(), code: EXIT_HOLDS }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_parse() || matches!(e, Error::BadSummand { .. }) {
        EXIT_PARSE
    } else {
        EXIT_DOMAIN
    }
}

/// Parses arguments and runs; clap handles `--help` and usage errors itself.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_HOLDS };
        }
    };
    let out = run(cli.command);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

pub fn run(cmd: Command) -> Outcome {
    match execute(cmd) {
        Ok(o) => o,
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) },
    }
}

fn load_spec(path: Option<&PathBuf>) -> Result<SpecFile> {
    let Some(path) = path else {
        return Ok(SpecFile::default());
    };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse { line: 0, msg: format!("stdin: {e}") })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?
    };
    parse_spec(&text)
}

fn resolve_tnorm(spec: &SpecFile, name: &str) -> Result<OrdinalSumTNorm> {
    spec.tnorm(name).cloned().or_else(|| OrdinalSumTNorm::builtin(name)).ok_or_else(|| Error::UnknownName(name.into()))
}

fn unit_arg(s: &str) -> Result<Rat> {
    let v: Rat = s.trim().parse()?;
    if v.in_unit() {
        Ok(v)
    } else {
        Err(Error::OutOfUnit(v))
    }
}

/// A function named in the spec, or one of `lower(x)`, `upper(x)`,
/// `const(k)`, `identity`, `net(x)` (limit not attained).
pub fn resolve_fn(spec: &SpecFile, t: &OrdinalSumTNorm, name: &str) -> Result<PwFn> {
    if let Some(f) = spec.function(name) {
        return Ok(f.clone());
    }
    let name = name.trim();
    if name == "identity" {
        return Ok(PwFn::identity());
    }
    let unknown = || Error::UnknownName(name.into());
    let (head, rest) = name.split_once('(').ok_or_else(unknown)?;
    let arg = rest.strip_suffix(')').ok_or_else(unknown)?;
    let x = unit_arg(arg)?;
    match head.trim() {
        "lower" | "principal_lower" => principal_lower(t, &x),
        "upper" | "principal_upper" => principal_upper(t, &x),
        "const" => Ok(PwFn::constant(x)),
        "net" => {
            if x.is_zero() {
                return Err(Error::Precondition("a net with limit 0 is attained".into()));
            }
            net_ideal(t, &NetSpec { points: vec![&x / &Rat::from_int(2)], limit: x, attained: false })
        }
        _ => Err(unknown()),
    }
}

fn decimal(v: &Rat) -> String {
    let s = v.to_decimal(10);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn report_text(report: &CheckReport) -> String {
    let mut s = format!("{report}\n");
    if let Some(v) = report.violation() {
        if let Witness::Flatness { psi1, psi2, .. } = &v.witness {
            s.push_str(&print_fn("psi1", psi1));
            s.push_str(&print_fn("psi2", psi2));
        }
    }
    s
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Eval { spec, tnorm, op, x, y } => {
            let spec = load_spec(spec.as_ref())?;
            let t = resolve_tnorm(&spec, &tnorm)?;
            let (x, y) = (unit_arg(&x)?, unit_arg(&y)?);
            let v = match op {
                EvalOp::Conj => t.conj(&x, &y),
                EvalOp::Impl => t.residuum(&x, &y),
                EvalOp::Dl => d_l(&t, &x, &y),
                EvalOp::Dr => d_r(&t, &x, &y),
            };
            Ok(Outcome::ok(format!("{v} ~{}\n", decimal(&v))))
        }
        Command::Check { spec, tnorm, kind, function } => {
            let spec = load_spec(spec.as_ref())?;
            let t = resolve_tnorm(&spec, &tnorm)?;
            let f = resolve_fn(&spec, &t, &function)?;
            let report = match kind {
                CheckKind::Lower => check_lower_set(&t, &f)?,
                CheckKind::Upper => check_upper_set(&t, &f)?,
                CheckKind::Flat => check_flat(&t, &f)?,
            };
            let code = if report.holds() { EXIT_HOLDS } else { EXIT_VIOLATED };
            Ok(Outcome { stdout: report_text(&report), stderr: String::new(), code })
        }
        Command::Tensor { spec, tnorm, lower, upper } => {
            let spec = load_spec(spec.as_ref())?;
            let t = resolve_tnorm(&spec, &tnorm)?;
            let phi = resolve_fn(&spec, &t, &lower)?;
            let psi = resolve_fn(&spec, &t, &upper)?;
            let mut stderr = String::new();
            let lr = check_lower_set(&t, &phi)?;
            if !lr.holds() {
                writeln!(stderr, "warning: {lower} is not a lower set: {lr}").unwrap();
            }
            let ur = check_upper_set(&t, &psi)?;
            if !ur.holds() {
                writeln!(stderr, "warning: {upper} is not an upper set: {ur}").unwrap();
            }
            let s = tensor(&t, &phi, &psi)?;
            let stdout = format!("{} ~{} attained={}\n", s.value, decimal(&s.value), s.attained);
            Ok(Outcome { stdout, stderr, code: EXIT_HOLDS })
        }
        Command::Verify { spec, tnorm, suite, trials, grid, seed, mutant } => {
            let spec = load_spec(spec.as_ref())?;
            let fixed = tnorm.map(|n| resolve_tnorm(&spec, &n).map(|t| (n, t))).transpose()?;
            Ok(verify(fixed, suite, trials, grid, seed, mutant))
        }
        Command::Csv { spec, tnorm, function, samples } => {
            if samples < 2 {
                return Err(Error::Precondition("need at least two samples".into()));
            }
            let spec = load_spec(spec.as_ref())?;
            let t = resolve_tnorm(&spec, &tnorm)?;
            let f = resolve_fn(&spec, &t, &function)?;
            Ok(Outcome::ok(csv(&f, samples)))
        }
        Command::Fmt { path } => Ok(Outcome::ok(load_spec(Some(&path))?.print())),
    }
}

/// Cell-centred samples `(k + 1/2)/n` inside the domain, plus every breakpoint.
pub fn csv(f: &PwFn, n: usize) -> String {
    let (lo, hi) = f.domain();
    let width = &hi - &lo;
    let n_r = Rat::from_int(n as i64);
    let mut xs: Vec<Rat> = (0..n).map(|k| &lo + &(&width * &(Rat::new(2 * k as i64 + 1, 2) / &n_r))).collect();
    xs.extend(f.xs().cloned());
    xs.sort();
    xs.dedup();
    let mut out = String::from("x,left,at,right,x_exact,left_exact,at_exact,right_exact\n");
    let pts = f.points();
    for x in xs {
        let (left, at, right) = match pts.iter().find(|p| p.x == x) {
            Some(p) => ((x != lo).then(|| p.left.clone()), p.at.clone(), (x != hi).then(|| p.right.clone())),
            None => {
                let v = f.value(&x);
                (Some(v.clone()), v.clone(), Some(v))
            }
        };
        let dec = |v: &Option<Rat>| v.as_ref().map(decimal).unwrap_or_default();
        let ex = |v: &Option<Rat>| v.as_ref().map(Rat::to_string).unwrap_or_default();
        let at = Some(at);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            decimal(&x),
            dec(&left),
            dec(&at),
            dec(&right),
            x,
            ex(&left),
            ex(&at),
            ex(&right)
        )
        .unwrap();
    }
    out
}

fn suite_tnorms(fixed: &Option<(String, OrdinalSumTNorm)>, count: usize, seed: u64) -> Vec<(String, OrdinalSumTNorm)> {
    if let Some(f) = fixed {
        return vec![f.clone()];
    }
    let mut out: Vec<(String, OrdinalSumTNorm)> = ["godel", "lukasiewicz", "product", "t4"]
        .iter()
        .map(|n| (n.to_string(), OrdinalSumTNorm::builtin(n).unwrap()))
        .collect();
    let mut rng = Rng8::seed_from_u64(seed);
    for k in 0..count {
        let t = random_tnorm(&mut rng);
        out.push((format!("random#{k} [{t}]"), t));
    }
    out
}

fn line(out: &mut String, pass: bool, suite: &str, name: &str, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    writeln!(out, "{verdict} {suite} {name}{}{detail}", if detail.is_empty() { "" } else { " " }).unwrap();
}

/// Runs the requested suites and prints one line per t-norm or family.
pub fn verify(
    fixed: Option<(String, OrdinalSumTNorm)>,
    suite: Suite,
    trials: Option<usize>,
    grid: Option<u32>,
    seed: u64,
    mutant: bool,
) -> Outcome {
    let mut out = String::new();
    let mut all = true;
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let mut record = |out: &mut String, pass: bool, suite: &str, name: &str, detail: &str| {
        all &= pass;
        line(out, pass, suite, name, detail);
    };
    for (label, s, check) in [("adjunction", Suite::Adjunction, true), ("sandwich", Suite::Sandwich, false)] {
        if !wants(s) {
            continue;
        }
        for (name, t) in suite_tnorms(&fixed, trials.unwrap_or(10), seed) {
            let g = GridSpec::new(grid.unwrap_or(60)).with_tnorm(&t);
            let r: &dyn Residuated = if mutant { &BrokenResiduum(t.clone()) } else { &t };
            let rep = if check { verify_adjunction(r, &g) } else { verify_sandwich(r, &g) };
            let detail = rep.violation().map(|v| v.witness.to_string()).unwrap_or_default();
            record(&mut out, rep.holds(), label, &name, &detail);
        }
    }
    if wants(Suite::Equivalence) {
        let families: Vec<Family> = match &fixed {
            Some((n, t)) => vec![Family::Fixed(n.clone(), t.clone())],
            None => Family::ALL.to_vec(),
        };
        let cfg =
            HarnessConfig { candidates: trials.unwrap_or(500), seed, grid: grid.unwrap_or(128), ..Default::default() };
        for fam in families {
            match equivalence_harness(&fam, &cfg) {
                Ok(s) => record(&mut out, s.passed(), "equivalence", fam.name(), &s.to_string()),
                Err(e) => record(&mut out, false, "equivalence", fam.name(), &format!("error: {e}")),
            }
        }
    }
    if wants(Suite::Distributivity) {
        let s = distributivity_suite(trials.unwrap_or(1000), seed);
        let detail = format!("triples={} failures={}", s.triples, s.failures);
        record(&mut out, s.failures == 0, "distributivity", "sup-min", &detail);
    }
    Outcome { stdout: out, stderr: String::new(), code: if all { EXIT_HOLDS } else { EXIT_VIOLATED } }
}
