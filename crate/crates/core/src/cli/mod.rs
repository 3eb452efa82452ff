//! Command-line front end: polynomial generation, operator application,
//! verification suites, norm tables and limit operators.
//!
//! Settings come from a flat `key = value` file (`--config`) overridden by
//! flags. JSON goes to `--out` when given and to standard output otherwise;
//! human-readable summaries go to standard output. Exit codes: 0 when every
//! check passes, 1 on a failed check or a computation error, 2 on a
//! configuration error.

mod config;

pub use config::{Mode, RunConfig};

use crate::daha::DahaGens;
use crate::error::{Error, Result};
use crate::families::AWFamily;
use crate::families::Construction;
use crate::laurent::LaurentPoly;
use crate::matshift::{build_named_nonsym, NamedTag};
use crate::quadrature::{norm_table, verify_adjoints_numeric, verify_norms, NormTolerances, QuadConfig, Quadrature};
use crate::report::SuiteReport;
use crate::scalars::{GenFrac, Params, Rat, Scalar, Shift};
use crate::speclimit::{build_limit_matrix, build_limit_operator, standard_pairs, verify_specialisation, LimitTag};
use crate::suites::{verify_daha, verify_matshift, verify_symshift};
use crate::symshift::{build_fundamental, Tag};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

/// Version tag of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "awcalc", version, about = "Exact DAHA and Askey-Wilson shift-operator calculus")]
pub struct Cli {
    /// Flat key = value settings file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every random sample.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Decimal digits for quadrature.
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// symbolic, rational or numeric.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Write JSON here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Render E_n or P_m.
    Gen {
        family: Family,
        #[arg(allow_negative_numbers = true)]
        index: i64,
    },
    /// Apply an operator to E_n, P_m or an explicit term list `exp:coeff,...`.
    Apply {
        /// T0, T0inv, T1, T1inv, Y, Yinv, Z, Zinv, a symmetric tag (G+, G-, E12, ..., L)
        /// or a named non-symmetric tag (Gp, Gm, E1p, E1m, E2p, E2m).
        op: String,
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Run a verification suite.
    Verify { suite: Suite },
    /// Norm table by quadrature next to the closed forms.
    Norms {
        #[arg(long)]
        n_max: Option<i64>,
    },
    /// Print and verify the q -> 1 limit operators.
    Limits {
        #[arg(long)]
        degree: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Family {
    #[value(name = "E")]
    E,
    #[value(name = "P")]
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Daha,
    Symshift,
    Matshift,
    Norms,
    Adjoints,
    Limits,
    All,
}

impl Suite {
    const EACH: [Suite; 6] = [Suite::Adjoints, Suite::Daha, Suite::Limits, Suite::Matshift, Suite::Norms, Suite::Symshift];
}

/// Merges the config file and the flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut c = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(p) = cli.precision {
        c.precision = p;
    }
    if let Some(m) = &cli.mode {
        c.mode = m.parse()?;
    }
    if let Some(o) = &cli.out {
        c.out = Some(o.clone());
    }
    if c.precision < 16 {
        return Err(Error::Config(format!("precision {} is below the 16-digit minimum", c.precision)));
    }
    Ok(c)
}

/// Runs one suite; numeric suites share `quad`.
pub fn run_suite(cfg: &RunConfig, suite: Suite, quad: &mut Option<Quadrature>) -> Result<Vec<SuiteReport>> {
    let mut quadrature = |cfg: &RunConfig| -> Result<Params<Rat>> {
        let p = cfg.numeric_params()?;
        if quad.is_none() {
            *quad = Some(Quadrature::new(QuadConfig { digits: cfg.precision, moment_degree: cfg.truncation }));
        }
        Ok(p)
    };
    Ok(match suite {
        Suite::Daha => {
            let samples = cfg.exact_samples(cfg.samples)?;
            vec![verify_daha(&samples, cfg.relation_degree, cfg.family_degree)?]
        }
        Suite::Symshift => vec![verify_symshift(&cfg.exact_samples(1)?[0], cfg.shift_degree)?],
        Suite::Matshift => vec![verify_matshift(&cfg.exact_samples(1)?[0], cfg.matrix_degree)?],
        Suite::Norms => {
            let p = quadrature(cfg)?;
            vec![verify_norms(quad.as_mut().expect("created"), &p, cfg.norm_max)?]
        }
        Suite::Adjoints => {
            let p = quadrature(cfg)?;
            vec![verify_adjoints_numeric(quad.as_mut().expect("created"), &p, cfg.adjoint_degree, cfg.seed)?]
        }
        Suite::Limits => vec![verify_specialisation(&standard_pairs(), cfg.limit_degree)?],
        Suite::All => {
            if cfg.mode == Mode::Symbolic {
                cfg.numeric_params()?;
            }
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run_suite(cfg, s, quad)?);
            }
            all
        }
    })
}

/// The `verify` JSON document.
#[derive(Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub suite: Suite,
    pub config: RunConfig,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

/// Builds the verify report without touching the outside world.
pub fn verify_report(cfg: &RunConfig, suite: Suite) -> Result<VerifyReport> {
    let suites = run_suite(cfg, suite, &mut None)?;
    let pass = suites.iter().all(|s| s.pass);
    Ok(VerifyReport { schema: REPORT_SCHEMA, suite, config: cfg.clone(), pass, suites })
}

#[derive(Serialize)]
struct Term {
    exp: i64,
    coeff: String,
}

#[derive(Serialize)]
struct PolyJson {
    text: String,
    terms: Vec<Term>,
}

fn poly_json<S: Scalar>(f: &LaurentPoly<S>) -> PolyJson {
    PolyJson { text: f.to_string(), terms: f.terms().map(|(n, c)| Term { exp: *n, coeff: c.to_string() }).collect() }
}

#[derive(Serialize)]
struct GenJson {
    schema: u32,
    family: Family,
    index: i64,
    mode: Mode,
    params: String,
    polynomial: PolyJson,
}

#[derive(Serialize)]
struct ApplyJson {
    schema: u32,
    op: String,
    shift: String,
    mode: Mode,
    params: String,
    input: PolyJson,
    result: PolyJson,
}

/// Parses `E<n>`, `P<m>` or `exp:coeff,exp:coeff,...`.
fn parse_input<S: Scalar>(text: &str, fam: &AWFamily<S>) -> Result<LaurentPoly<S>> {
    let t = text.trim();
    let index = |s: &str| s.parse::<i64>().map_err(|_| Error::Config(format!("bad index in '{t}'")));
    if let Some(n) = t.strip_prefix('E') {
        return fam.e(index(n)?);
    }
    if let Some(m) = t.strip_prefix('P') {
        return fam.p(index(m)?);
    }
    let mut f = LaurentPoly::zero();
    for item in t.split(',') {
        let (e, c) = item
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("input term '{item}' is not exp:coeff")))?;
        let e: i64 = e.trim().parse().map_err(|_| Error::Config(format!("bad exponent '{e}'")))?;
        let c: Rat = c.trim().parse().map_err(|_| Error::Config(format!("bad coefficient '{c}'")))?;
        f.add_term(e, &S::from_rat(&c));
    }
    Ok(f)
}

fn apply_op<S: Scalar>(p: &Params<S>, op: &str, f: &LaurentPoly<S>) -> Result<(LaurentPoly<S>, Shift)> {
    let d = || DahaGens::new(p);
    let plain = |o: &crate::ops::DiffReflOp<S>| Ok((o.apply(f)?, Shift::zero()));
    match op {
        "T0" => plain(&d().t0),
        "T0inv" => plain(&d().t0inv),
        "T1" => plain(&d().t1),
        "T1inv" => plain(&d().t1inv),
        "Y" => plain(&d().y),
        "Yinv" => plain(&d().yinv),
        "Z" => plain(&d().z),
        "Zinv" => plain(&d().zinv),
        _ => {
            if let Some(tag) = Tag::parse(op) {
                let fo = build_fundamental(p, tag);
                Ok((fo.op.apply(f)?, fo.shift))
            } else if let Some(tag) = NamedTag::parse(op) {
                Ok((build_named_nonsym(p, tag)?.apply(f)?, tag.shift()))
            } else {
                Err(Error::Config(format!("unknown operator '{op}'")))
            }
        }
    }
}

fn emit(cfg: &RunConfig, stdout: &mut dyn Write, json: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, format!("{json}\n")).map_err(|e| Error::Config(format!("{}: {e}", path.display()))),
        None => writeln!(stdout, "{json}").map_err(|e| Error::Numeric(e.to_string())),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

fn line(out: &mut dyn Write, s: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{s}").map_err(|e| Error::Numeric(e.to_string()))
}

fn gen_in<S: Scalar>(cfg: &RunConfig, p: Params<S>, family: Family, index: i64, out: &mut dyn Write) -> Result<bool> {
    let fam = AWFamily::new(p.clone(), Construction::TriangularEigen);
    let poly = match family {
        Family::E => fam.e(index)?,
        Family::P => fam.p(index)?,
    };
    line(out, &poly)?;
    let doc = GenJson { schema: REPORT_SCHEMA, family, index, mode: cfg.mode, params: p.to_string(), polynomial: poly_json(&poly) };
    emit(cfg, out, &to_json(&doc))?;
    Ok(true)
}

fn apply_in<S: Scalar>(cfg: &RunConfig, p: Params<S>, op: &str, input: &str, out: &mut dyn Write) -> Result<bool> {
    let fam = AWFamily::new(p.clone(), Construction::TriangularEigen);
    let f = parse_input(input, &fam)?;
    let (g, h) = apply_op(&p, op, &f)?;
    line(out, &g)?;
    let doc = ApplyJson {
        schema: REPORT_SCHEMA,
        op: op.to_string(),
        shift: h.to_string(),
        mode: cfg.mode,
        params: p.to_string(),
        input: poly_json(&f),
        result: poly_json(&g),
    };
    emit(cfg, out, &to_json(&doc))?;
    Ok(true)
}

fn exact_params(cfg: &RunConfig) -> Params<Rat> {
    cfg.explicit_params().unwrap_or_else(Params::numeric_default)
}

fn summary(out: &mut dyn Write, suites: &[SuiteReport]) -> Result<()> {
    for s in suites {
        let failed = s.checks.iter().filter(|c| !c.pass).count();
        let verdict = if s.pass { "PASS" } else { "FAIL" };
        line(out, format!("{verdict} {:<9} {:>3} checks, {failed} failed, max residual {:.1e}", s.suite, s.checks.len(), s.max_residual()))?;
        for c in s.checks.iter().filter(|c| !c.pass) {
            line(out, format!("     {} {}", c.check, c.detail.as_deref().unwrap_or("")))?;
        }
    }
    Ok(())
}

/// Executes a parsed command line; `Ok(false)` means a check failed.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let cfg = resolve_config(cli)?;
    match &cli.command {
        Command::Gen { family, index } => match cfg.mode {
            Mode::Symbolic => gen_in(&cfg, Params::<GenFrac>::symbolic(), *family, *index, out),
            _ => gen_in(&cfg, exact_params(&cfg), *family, *index, out),
        },
        Command::Apply { op, input } => match cfg.mode {
            Mode::Symbolic => apply_in(&cfg, Params::<GenFrac>::symbolic(), op, input, out),
            _ => apply_in(&cfg, exact_params(&cfg), op, input, out),
        },
        Command::Verify { suite } => {
            let report = verify_report(&cfg, *suite)?;
            let json = to_json(&report);
            if cfg.out.is_some() {
                summary(out, &report.suites)?;
            }
            emit(&cfg, out, &json)?;
            Ok(report.pass)
        }
        Command::Norms { n_max } => {
            let p = cfg.numeric_params()?;
            let n_max = n_max.unwrap_or(cfg.norm_max);
            let mut q = Quadrature::new(QuadConfig { digits: cfg.precision, moment_degree: cfg.truncation });
            let rows = norm_table(&mut q, &p, n_max, 30)?;
            let tol = crate::report::from_log10(NormTolerances::for_digits(cfg.precision).closed);
            line(out, format!("parameters: {p}"))?;
            line(out, format!("{:>4}  {:>38}  {:>38}  {:>9}", "n", "h_n (quadrature)", "h_n (closed form)", "residual"))?;
            for r in &rows {
                line(out, format!("{:>4}  {:>38}  {:>38}  {:>9.1e}", r.index, r.numeric, r.closed, r.residual))?;
            }
            let pass = rows.iter().all(|r| r.residual < tol);
            if cfg.out.is_some() {
                #[derive(Serialize)]
                struct NormsJson<'a> {
                    schema: u32,
                    precision: usize,
                    params: String,
                    tolerance: f64,
                    pass: bool,
                    rows: &'a [crate::quadrature::NormRow],
                }
                let doc = NormsJson { schema: REPORT_SCHEMA, precision: cfg.precision, params: p.to_string(), tolerance: tol, pass, rows: &rows };
                emit(&cfg, out, &to_json(&doc))?;
            }
            Ok(pass)
        }
        Command::Limits { degree } => {
            for tag in LimitTag::ALL {
                line(out, format!("{tag:<7} = {}", build_limit_operator(tag)))?;
            }
            for tag in NamedTag::ALL {
                if let Some(m) = build_limit_matrix(tag) {
                    line(out, format!("{tag} matrix = {m}"))?;
                }
            }
            let report = verify_specialisation(&standard_pairs(), degree.unwrap_or(cfg.limit_degree))?;
            #[derive(Serialize)]
            struct LimitsJson {
                schema: u32,
                operators: Vec<(String, String)>,
                report: SuiteReport,
            }
            let operators = LimitTag::ALL.into_iter().map(|t| (t.to_string(), build_limit_operator(t).to_string())).collect();
            summary(out, std::slice::from_ref(&report))?;
            let pass = report.pass;
            if cfg.out.is_some() {
                emit(&cfg, out, &to_json(&LimitsJson { schema: REPORT_SCHEMA, operators, report }))?;
            }
            Ok(pass)
        }
    }
}

/// Exit code for an outcome.
pub fn exit_code(outcome: &Result<bool>) -> i32 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Error::Config(_)) => 2,
        Err(_) => 1,
    }
}

/// Parses `args`, runs, reports errors on standard error, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let outcome = execute(&cli, &mut stdout.lock());
    if let Err(e) = &outcome {
        eprintln!("awcalc: {e}");
    }
    exit_code(&outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (Result<bool>, String) {
        let cli = Cli::try_parse_from(args).unwrap();
        let mut buf = Vec::new();
        let r = execute(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn gen_trivial_members() {
        let (r, s) = run_to_string(&["awcalc", "gen", "E", "0"]);
        assert!(r.unwrap());
        assert_eq!(s.lines().next(), Some("1"));
        let (_, s) = run_to_string(&["awcalc", "gen", "P", "0"]);
        assert_eq!(s.lines().next(), Some("1"));
    }

    #[test]
    fn gen_first_symbolic_member_matches_closed_form() {
        let (r, s) = run_to_string(&["awcalc", "--mode", "symbolic", "gen", "E", "1"]);
        assert!(r.unwrap());
        let p = Params::<GenFrac>::symbolic();
        let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
        let num = c.plus(&d).minus(&a.times(&c).times(&d)).minus(&b.times(&c).times(&d));
        let den = GenFrac::one().minus(&p.abcd());
        let expected = LaurentPoly::from_terms([(1, GenFrac::one()), (0, num.times(&den.inverse().unwrap()).negated())]);
        assert_eq!(s.lines().next().unwrap(), expected.to_string());
    }

    #[test]
    fn apply_y_to_eigenfunction() {
        let (r, s) = run_to_string(&["awcalc", "apply", "Y", "E-2"]);
        assert!(r.unwrap());
        let p = Params::numeric_default();
        let e = AWFamily::new(p.clone(), Construction::TriangularEigen).e(-2).unwrap();
        let expected = e.scale(&crate::families::y_eigenvalue(&p, -2));
        assert_eq!(s.lines().next().unwrap(), expected.to_string());
    }

    #[test]
    fn apply_accepts_term_lists() {
        let (r, s) = run_to_string(&["awcalc", "apply", "Z", "0:1/2,-1:3"]);
        assert!(r.unwrap());
        assert_eq!(s.lines().next().unwrap(), "(1/2)*z + 3");
    }

    #[test]
    fn configuration_errors_exit_two() {
        let (r, _) = run_to_string(&["awcalc", "apply", "Q7", "E1"]);
        assert_eq!(exit_code(&r), 2);
        let (r, _) = run_to_string(&["awcalc", "--mode", "symbolic", "verify", "norms"]);
        assert_eq!(exit_code(&r), 2);
        let (r, _) = run_to_string(&["awcalc", "--mode", "symbolic", "verify", "all"]);
        assert_eq!(exit_code(&r), 2);
        assert_eq!(run(["awcalc", "verify", "everything"]), 2);
    }

    #[test]
    fn verify_limits_json_is_sorted() {
        let (r, s) = run_to_string(&["awcalc", "verify", "limits"]);
        assert!(r.unwrap());
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let names: Vec<&str> = v["suites"][0]["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert_eq!(v["pass"], true);
    }
}
