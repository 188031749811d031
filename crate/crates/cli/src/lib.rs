//! The `ringdef` command line.
//!
//! Exit codes: 0 success, 1 falsification found, 2 usage or input error,
//! 3 budget exhausted where a decision was required.

mod infix;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ringdef::constructions::{
    cert_field, cert_finite, cert_ideal_member, cert_int_classic, doubling_cert, filtration_cert,
    one_poly_cert, polyring_cert, product_cert, quotient_lift, regular_cert, two_ideals,
    weil_restrict, AssumptionStatus, Certificate, RegularMode,
};
use ringdef::formula::{parse_formula, pretty, print_formula, VarId};
use ringdef::rings::{associated_primes, composition_series, Ideal};
use ringdef::verifier::{
    closedness_demo, phi_experiment, random_formula_equivalence, search, verify_cert, Assignment,
    CheckConfig, PhiSystem, Report, SearchBudget, Verdict,
};
use ringdef::{Elem, Error, RingSpec};

pub use infix::parse_poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ringdef", version, about = "Derive and check positive-existential definitions of nonzero sets in rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a certificate along a named derivation path.
    Derive(DeriveArgs),
    /// Check a certificate against its target set.
    Verify(VerifyArgs),
    /// Evaluate a formula under an assignment.
    Eval(EvalArgs),
    /// Solvability of a polynomial system modulo p^q, q = 1..Q, and over Z.
    PhiDemo(PhiArgs),
    /// Evaluate a certificate over Z at p, p^2, ..., p^Q and at 0.
    ClosednessDemo(ClosednessArgs),
    /// Render a certificate file.
    Print(PrintArgs),
    /// Differential test of the normal form on random formulas.
    NfCheck(NfArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Height schedule, strictly increasing.
    #[arg(long, value_name = "h1,h2,...")]
    budget: Option<String>,
    /// Write the JSON result to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Record wall-clock time in the JSON report.
    #[arg(long)]
    timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DerivePath {
    IntClassic,
    Field,
    Finite,
    IdealMember,
    QuotientLift,
    Weil,
    TwoIdeals,
    Polyring,
    Doubling,
    Product,
    Filtration,
    Regular,
    OnePoly,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Quotients,
    Base,
}

#[derive(Args, Debug)]
struct DeriveArgs {
    path: DerivePath,
    #[arg(long)]
    ring: Option<String>,
    /// Ideal generators separated by `;`. Repeat for two-ideals.
    #[arg(long)]
    ideal: Vec<String>,
    /// Certificate files used as inputs instead of the defaults.
    #[arg(long, value_name = "PATH")]
    inner: Vec<PathBuf>,
    /// Polynomial for one-poly.
    #[arg(long)]
    poly: Option<String>,
    /// Bound variables of the one-poly polynomial, comma separated.
    #[arg(long)]
    vars: Option<String>,
    /// Regular certificate from prime quotients or from a base certificate.
    #[arg(long, value_enum, default_value = "quotients")]
    mode: Mode,
    /// Height bound of the doubling quadratic search.
    #[arg(long, default_value_t = 64)]
    search: u64,
    /// Write the certificate to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    cert: PathBuf,
    /// Check every element of a finite ring.
    #[arg(long, conflicts_with = "elements")]
    exhaustive: bool,
    /// Elements separated by `;` (or `,` outside brackets, except for polynomial
    /// rings), or an integer range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    elements: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    ring: String,
    /// Formula as an s-expression.
    #[arg(long)]
    formula: String,
    /// Values of the free variables, e.g. `t=3;x=1`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    assign: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PhiArgs {
    /// Polynomial over Z; repeat for a system.
    #[arg(long, required = true, allow_hyphen_values = true)]
    poly: Vec<String>,
    /// Unknowns, comma separated; by default every variable, sorted.
    #[arg(long)]
    vars: Option<String>,
    #[arg(long)]
    p: u64,
    #[arg(long = "Q")]
    q: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ClosednessArgs {
    cert: PathBuf,
    #[arg(long)]
    p: u64,
    #[arg(long = "Q")]
    q: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Sexpr,
    Json,
}

#[derive(Args, Debug)]
struct PrintArgs {
    cert: PathBuf,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Args, Debug)]
struct NfArgs {
    #[arg(long)]
    ring: String,
    #[arg(long, default_value_t = 500)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

/// Failure of a command, with its exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::BudgetExhausted(_) | Error::InfeasibleScan(_) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Fail(code, e.to_string())
    }
}

type Outcome = std::result::Result<i32, Fail>;

/// Run the command line `argv` (program name first), writing normal output to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Derive(a) => derive(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Eval(a) => eval(a, out),
        Command::PhiDemo(a) => phi_demo(a, out),
        Command::ClosednessDemo(a) => closedness(a, out),
        Command::Print(a) => print(a, out),
        Command::NfCheck(a) => nf_check(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn io_fail(path: &Path, e: std::io::Error) -> Fail {
    usage(format!("{}: {e}", path.display()))
}

fn say(out: &mut dyn Write, text: impl AsRef<str>) -> std::result::Result<(), Fail> {
    writeln!(out, "{}", text.as_ref()).map_err(|e| usage(format!("write failed: {e}")))
}

fn parse_ring(spec: Option<&str>) -> std::result::Result<RingSpec, Fail> {
    let spec = spec.ok_or_else(|| usage("--ring is required for this path"))?;
    Ok(spec.parse::<RingSpec>()?)
}

fn budget(c: &Common) -> std::result::Result<SearchBudget, Fail> {
    Ok(match &c.budget {
        Some(b) => SearchBudget::parse(b)?,
        None => SearchBudget::default(),
    })
}

fn load_cert(path: &Path) -> std::result::Result<Certificate, Fail> {
    let text = fs::read_to_string(path).map_err(|e| io_fail(path, e))?;
    Ok(Certificate::from_json(&text)?)
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Fail> {
    fs::write(path, format!("{text}\n")).map_err(|e| io_fail(path, e))
}

fn emit_report(out: &mut dyn Write, c: &Common, mut report: Report, start: Instant) -> std::result::Result<(), Fail> {
    if c.timing {
        report.wallclock_ms = Some(start.elapsed().as_millis() as u64);
    }
    if let Some(path) = &c.json {
        write_file(path, &report.to_json())?;
    }
    say(out, format!("instance: {}", report.instance))?;
    let t = &report.tally;
    if t.true_ + t.false_ + t.unknown > 0 {
        say(out, format!("verdicts: {} true, {} false, {} unknown", t.true_, t.false_, t.unknown))?;
    }
    for f in &report.falsifications {
        say(out, format!("falsified at {}: verdict {}, expected {}", f.input, f.verdict, f.expected))?;
    }
    for a in &report.assumptions {
        say(out, format!("assumption {} [{}]: {}", a.tag, a.status, a.text))?;
    }
    say(out, format!("conclusion: {}", report.conclusion))
}

/// The certificate used when a derivation needs one for `ring` and none was given.
fn default_cert(ring: &RingSpec) -> std::result::Result<Certificate, Fail> {
    if ring.is_field() {
        return Ok(cert_field(ring)?);
    }
    if ring.is_finite() {
        return Ok(cert_finite(ring)?);
    }
    match ring {
        RingSpec::Int => Ok(cert_int_classic()?),
        RingSpec::Poly { base, .. } if ring.poly_var() == Some("X") => Ok(polyring_cert(&default_cert(base)?)?),
        RingSpec::Product(l, r) => Ok(product_cert(&default_cert(l)?, &default_cert(r)?)?),
        _ => Err(usage(format!("no default certificate for {ring}; pass one with --inner"))),
    }
}

fn quotient_of(ideal: &Ideal) -> std::result::Result<RingSpec, Fail> {
    Ok(ideal.quotient()?.0)
}

/// The `k`-th `--inner` certificate, or the default one for `ring`.
fn inner_or_default(a: &DeriveArgs, k: usize, ring: &RingSpec) -> std::result::Result<Certificate, Fail> {
    match a.inner.get(k) {
        Some(path) => load_cert(path),
        None => default_cert(ring),
    }
}

/// Default certificates for the distinct quotients by `primes`, in order.
fn quotient_certs<'a>(primes: impl Iterator<Item = &'a Ideal>) -> std::result::Result<Vec<Certificate>, Fail> {
    let mut seen = BTreeSet::new();
    let mut certs = Vec::new();
    for p in primes {
        let q = quotient_of(p)?;
        if seen.insert(q.to_string()) {
            certs.push(default_cert(&q)?);
        }
    }
    Ok(certs)
}

fn ideal_arg(a: &DeriveArgs, k: usize, ring: &RingSpec) -> std::result::Result<Ideal, Fail> {
    let text = a.ideal.get(k).ok_or_else(|| usage(format!("this path needs {} --ideal argument(s)", k + 1)))?;
    Ok(Ideal::parse(ring.clone(), text)?)
}

fn derive(a: DeriveArgs, out: &mut dyn Write) -> Outcome {
    let ring = || parse_ring(a.ring.as_deref());
    let cert = match a.path {
        DerivePath::IntClassic => cert_int_classic()?,
        DerivePath::Field => cert_field(&ring()?)?,
        DerivePath::Finite => cert_finite(&ring()?)?,
        DerivePath::IdealMember => cert_ideal_member(&ideal_arg(&a, 0, &ring()?)?)?,
        DerivePath::QuotientLift => {
            let i = ideal_arg(&a, 0, &ring()?)?;
            quotient_lift(&i, &inner_or_default(&a, 0, &quotient_of(&i)?)?)?
        }
        DerivePath::Weil => {
            let inner = match a.inner.first() {
                Some(p) => load_cert(p)?,
                None => default_cert(&ring()?)?,
            };
            weil_restrict(&inner)?
        }
        DerivePath::TwoIdeals => {
            let r = ring()?;
            let (p1, p2) = (ideal_arg(&a, 0, &r)?, ideal_arg(&a, 1, &r)?);
            let c1 = inner_or_default(&a, 0, &quotient_of(&p1)?)?;
            let c2 = inner_or_default(&a, 1, &quotient_of(&p2)?)?;
            two_ideals(&p1, &p2, &c1, &c2)?
        }
        DerivePath::Polyring => polyring_cert(&inner_or_default(&a, 0, &ring()?)?)?,
        DerivePath::Doubling => {
            let r = ring()?;
            let p = ideal_arg(&a, 0, &r)?;
            doubling_cert(&r, &p, &inner_or_default(&a, 0, &quotient_of(&p)?)?, a.search)?
        }
        DerivePath::Product => {
            let (c1, c2) = match (a.inner.first(), a.inner.get(1), a.ring.as_deref()) {
                (Some(x), Some(y), _) => (load_cert(x)?, load_cert(y)?),
                (_, _, Some(_)) => match ring()? {
                    RingSpec::Product(l, r) => (default_cert(&l)?, default_cert(&r)?),
                    other => return Err(usage(format!("{other} is not a product ring"))),
                },
                _ => return Err(usage("product needs two --inner certificates or a product --ring")),
            };
            product_cert(&c1, &c2)?
        }
        DerivePath::Filtration => {
            let data = composition_series(&ring()?)?;
            let certs = quotient_certs(data.primes.iter())?;
            filtration_cert(&data, &certs)?
        }
        DerivePath::Regular => {
            let r = ring()?;
            let data = associated_primes(&r)?;
            let mode = match a.mode {
                Mode::Quotients => RegularMode::ViaQuotients(quotient_certs(data.pairs.iter().map(|(p, _)| p))?),
                Mode::Base => RegularMode::ViaBaseCert(inner_or_default(&a, 0, &r)?),
            };
            regular_cert(&data, &mode)?
        }
        DerivePath::OnePoly => {
            let r = ring()?;
            let text = a.poly.as_deref().ok_or_else(|| usage("one-poly needs --poly"))?;
            let f = parse_poly(text, &r)?;
            let vars: Vec<VarId> = a
                .vars
                .as_deref()
                .unwrap_or("")
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(VarId::new)
                .collect();
            one_poly_cert(&r, &f, &vars)?
        }
    };
    if let Some(path) = &a.json {
        write_file(path, &cert.to_json())?;
    }
    describe_cert(out, &cert)?;
    Ok(EXIT_OK)
}

fn describe_cert(out: &mut dyn Write, c: &Certificate) -> std::result::Result<(), Fail> {
    say(out, format!("rule: {}", c.provenance.rule()))?;
    say(out, format!("ring: {}", c.ring))?;
    say(out, format!("target: {}", c.target.describe(&c.ring)))?;
    say(out, format!("formula: {}", pretty(&c.formula, &c.ring)))?;
    for a in &c.assumptions {
        say(out, format!("assumption {} [{}]: {}", a.tag, a.status, a.text))?;
    }
    if c.assumptions.iter().any(|a| a.status == AssumptionStatus::Violated) {
        say(out, "warning: a hypothesis of this derivation is violated; the formula may define a different set")?;
    }
    Ok(())
}

/// Split on `sep` outside brackets.
fn split_outside(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Elements from `a..b` (inclusive) or a list.
fn parse_elements(ring: &RingSpec, text: &str) -> std::result::Result<Vec<Elem>, Fail> {
    if let Some((lo, hi)) = text.split_once("..") {
        let bound = |s: &str| s.trim().parse::<i64>().map_err(|_| usage(format!("bad range bound `{s}`")));
        let (lo, hi) = (bound(lo)?, bound(hi)?);
        if hi < lo || hi - lo > 1_000_000 {
            return Err(usage(format!("bad range {lo}..{hi}")));
        }
        return Ok((lo..=hi).map(|v| ring.from_i64(v)).collect());
    }
    let items: Vec<&str> = if text.contains(';') || matches!(ring, RingSpec::Poly { .. }) {
        text.split(';').collect()
    } else {
        split_outside(text, ',')
    };
    Ok(items
        .into_iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| ring.decode(s))
        .collect::<ringdef::Result<Vec<_>>>()?)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let cert = load_cert(&a.cert)?;
    let config = match (&a.elements, a.exhaustive) {
        (Some(text), _) => CheckConfig::Elements(parse_elements(&cert.ring, text)?),
        (None, true) => CheckConfig::Exhaustive,
        (None, false) if cert.ring.is_finite() => CheckConfig::Exhaustive,
        (None, false) => return Err(usage(format!("{} is infinite; pass --elements", cert.ring))),
    };
    let report = verify_cert(&cert, &config, &budget(&a.common)?)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_FALSIFIED };
    emit_report(out, &a.common, report, start)?;
    Ok(code)
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let ring: RingSpec = a.ring.parse()?;
    let phi = parse_formula(&a.formula, &ring)?;
    let mut env = Assignment::new();
    for item in a.assign.split(';').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| usage(format!("bad assignment `{item}`")))?;
        env.insert(VarId::new(k.trim()), ring.decode(v)?);
    }
    let b = budget(&a.common)?;
    let outcome = search(&ring, &phi, &env, &b)?;
    let shown: Vec<String> = env.iter().map(|(k, v)| format!("{}={}", k.as_str(), ring.encode(v))).collect();
    let mut report = Report::empty(format!("{} over {ring}", print_formula(&phi, &ring)), &b);
    report.tally.count(&outcome.verdict);
    let entry = ringdef::verifier::report::VerdictEntry::new(&ring, &ring.zero(), &outcome, None);
    report.verdicts.push(ringdef::verifier::report::VerdictEntry { input: shown.join(";"), ..entry });
    let (code, conclusion) = match &outcome.verdict {
        Verdict::True { witness, height } => {
            let w: Vec<String> = witness.iter().map(|(v, e)| format!("{}={}", v.as_str(), ring.encode(e))).collect();
            (EXIT_OK, format!("true at height {height}; witness {}", w.join(", ")))
        }
        Verdict::FalseExhaustive => (EXIT_OK, "false (witness space exhausted)".to_string()),
        Verdict::Unknown { height } => (EXIT_BUDGET, format!("unknown; no witness up to height {height}")),
    };
    report.conclusion = conclusion;
    emit_report(out, &a.common, report, start)?;
    Ok(code)
}

fn phi_demo(a: PhiArgs, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let polys = a.poly.iter().map(|p| parse_poly(p, &RingSpec::Int)).collect::<ringdef::Result<Vec<_>>>()?;
    let vars: Vec<VarId> = match &a.vars {
        Some(v) => v.split(',').map(|s| VarId::new(s.trim())).collect(),
        None => polys.iter().flat_map(|p| p.vars()).collect::<BTreeSet<_>>().into_iter().collect(),
    };
    let sys = PhiSystem::new(polys, vars, a.p)?;
    let report = phi_experiment(&sys, a.q, &budget(&a.common)?)?;
    let phi = report.phi.as_ref().expect("phi section");
    for l in &phi.levels {
        let w = l.witness.as_ref().map(|w| format!(" witness {}", w.join(","))).unwrap_or_default();
        say(out, format!("mod {}^{}: {} ({}){w}", phi.p, l.q, if l.solvable { "solvable" } else { "unsolvable" }, l.method))?;
    }
    say(out, format!("over Z: {} ({})", phi.global.status, phi.global.method))?;
    let undecided = phi.global.status == "unknown" && phi.levels.iter().all(|l| l.solvable);
    emit_report(out, &a.common, report, start)?;
    Ok(if undecided { EXIT_BUDGET } else { EXIT_OK })
}

fn closedness(a: ClosednessArgs, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let cert = load_cert(&a.cert)?;
    let report = closedness_demo(&cert, a.p, a.q, &budget(&a.common)?)?;
    for v in &report.verdicts {
        say(out, format!("t={}: {}", v.input, v.verdict))?;
    }
    let undecided = report.verdicts.iter().any(|v| v.verdict == "unknown") && report.conclusion == "inconclusive";
    emit_report(out, &a.common, report, start)?;
    Ok(if undecided { EXIT_BUDGET } else { EXIT_OK })
}

fn print(a: PrintArgs, out: &mut dyn Write) -> Outcome {
    let cert = load_cert(&a.cert)?;
    match a.format {
        Format::Pretty => describe_cert(out, &cert)?,
        Format::Sexpr => say(out, print_formula(&cert.formula, &cert.ring))?,
        Format::Json => say(out, cert.to_json())?,
    }
    Ok(EXIT_OK)
}

fn nf_check(a: NfArgs, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let ring: RingSpec = a.ring.parse()?;
    let report = random_formula_equivalence(&ring, a.seed, a.count)?;
    for e in &report.equivalence.as_ref().expect("equivalence section").examples {
        say(out, format!("mismatch: {e}"))?;
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_FALSIFIED };
    emit_report(out, &a.common, report, start)?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_lists() {
        let z = RingSpec::Int;
        assert_eq!(parse_elements(&z, "-2..1").ok().unwrap().len(), 4);
        assert_eq!(parse_elements(&z, "1,2,3").ok().unwrap(), vec![Elem::int(1), Elem::int(2), Elem::int(3)]);
        let p: RingSpec = "poly:gfp:5:X".parse().unwrap();
        assert_eq!(parse_elements(&p, "1,2;3").ok().unwrap().len(), 2);
        let m: RingSpec = "monicext:int:[5,1]".parse().unwrap();
        assert_eq!(parse_elements(&m, "[1,2],[0,1]").ok().unwrap().len(), 2);
        assert!(parse_elements(&z, "3..1").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        let mut o = Vec::new();
        let mut e = Vec::new();
        assert_eq!(run(["ringdef", "derive", "field"], &mut o, &mut e), EXIT_USAGE);
        assert_eq!(run(["ringdef", "bogus"], &mut o, &mut e), EXIT_USAGE);
        assert_eq!(run(["ringdef", "derive", "field", "--ring", "zmod:6"], &mut o, &mut e), EXIT_USAGE);
    }
}
