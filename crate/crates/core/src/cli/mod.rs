//! Command-line front end: expression parsing, state documents, the solver
//! and constructors, the isospectral systems and the verification suites.

mod doc;
mod expr;
pub mod suites;

pub use doc::{parse_state, serialize_state, BladeRecord, LevelRecord, StateDocument, STATE_VERSION};
pub use expr::parse_expr;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::isospec::{self, IsoFamily, IsoParams};
use crate::saes::{self, GeneratorCoefficients};
use crate::states::{self, FamilyParams, UnitaryParams};
use crate::superfock::{self, FockSpace, Sector};

type G = GrassmannElement;

#[derive(Debug, Parser)]
#[command(name = "supergrass", version, about = "Grassmann-valued eigenstates of boson-fermion ladder operators")]
pub struct Cli {
    /// Number of Grassmann generators.
    #[arg(long = "grassmann-order", env = "SUPERGRASS_ORDER", default_value_t = 6, global = true)]
    pub order: usize,
    /// Highest boson level kept.
    #[arg(long = "fock-cutoff", env = "SUPERGRASS_CUTOFF", default_value_t = 32, global = true)]
    pub cutoff: usize,
    /// Levels below the cutoff excluded from every comparison.
    #[arg(long, default_value_t = 8, global = true)]
    pub guard: usize,
    #[arg(long, default_value_t = 1e-10, global = true)]
    pub tol: f64,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve `(A_- a + A_+ a† + A_3 + B_- b + B_+ b†) psi = Z psi`.
    Solve(SolveArgs),
    /// Build a named closed-form family.
    Construct(ConstructArgs),
    /// Build an isospectral system, its ladders and optionally a conjugate.
    Isospec(IsospecArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Check the superalgebra relations on the truncated space.
    Relations,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "A-minus", default_value = "1")]
    pub a_minus: String,
    #[arg(long = "A-plus", default_value = "0")]
    pub a_plus: String,
    #[arg(long = "A3", default_value = "0")]
    pub a3: String,
    #[arg(long = "B-minus", default_value = "0")]
    pub b_minus: String,
    #[arg(long = "B-plus", default_value = "0")]
    pub b_plus: String,
    #[arg(long = "Z", default_value = "0")]
    pub z: String,
    /// Also solve by nullspace lifting and compare.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub family: String,
    /// `name=expr`, repeatable.
    #[arg(long = "param", value_parser = key_value)]
    pub params: Vec<(String, String)>,
    /// Write the state document here instead of printing it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IsospecArgs {
    /// `h2` or `spin`.
    #[arg(long)]
    pub family: String,
    /// `beta1=...` for h2, `gamma0=... delta0=...` for spin.
    #[arg(long = "param", value_parser = key_value)]
    pub params: Vec<(String, String)>,
    /// `G` (supersqueeze) or `U` (orthosymplectic).
    #[arg(long)]
    pub conjugate: Option<String>,
    /// `beta0/gamma1/delta1` for G, `x0/gamma1/delta1` for U.
    #[arg(long = "conj-param", value_parser = key_value)]
    pub conj_params: Vec<(String, String)>,
    /// Highest level of the ladders; defaults to the largest the space allows, at most 20.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Also build the coherent state at this eigenvalue.
    #[arg(long)]
    pub z: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
}

fn key_value(s: &str) -> std::result::Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=expr, got {s:?}"))?;
    Ok((k.trim().to_string(), v.to_string()))
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(true) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Ok(false) => Outcome { code: 1, stdout: out, stderr: String::new() },
        Err(e) => {
            let code = if is_usage(&e) { 2 } else { 1 };
            Outcome { code, stdout: out, stderr: format!("error: {e}\n") }
        }
    }
}

/// Errors caused by the input rather than by a computation.
fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Config(_) | Error::GeneratorOutOfRange { .. } | Error::Parity(_) | Error::Domain(_))
}

fn execute(cli: &Cli, out: &mut String) -> Result<bool> {
    match &cli.command {
        Command::Verify(args) => return verify(args, cli.seed, out),
        Command::Relations => {}
        _ => {}
    }
    let space = FockSpace::new(cli.order, cli.cutoff, cli.guard)?;
    match &cli.command {
        Command::Solve(args) => solve(args, space, cli.tol, out),
        Command::Construct(args) => construct(args, space, cli.tol, out),
        Command::Isospec(args) => iso(args, space, cli.tol, out),
        Command::Relations => relations(space, cli.tol, out),
        Command::Verify(_) => unreachable!(),
    }
}

fn line(out: &mut String, text: impl std::fmt::Display) {
    let _ = writeln!(out, "{text}");
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn relations(space: FockSpace, tol: f64, out: &mut String) -> Result<bool> {
    line(out, format!("relations on L = {}, cutoff {}, guard {}", space.order, space.cutoff, space.guard));
    let report = superfock::check_relations(space);
    for (name, dev) in &report.entries {
        line(out, format!("  {name:<16} {dev:.3e} {}", verdict(*dev <= tol)));
    }
    Ok(report.max_deviation() <= tol)
}

fn solve(args: &SolveArgs, space: FockSpace, tol: f64, out: &mut String) -> Result<bool> {
    let order = space.order;
    let coeffs = GeneratorCoefficients {
        a_minus: parse_expr(&args.a_minus, order)?,
        a_plus: parse_expr(&args.a_plus, order)?,
        a3: parse_expr(&args.a3, order)?,
        b_minus: parse_expr(&args.b_minus, order)?,
        b_plus: parse_expr(&args.b_plus, order)?,
        z: parse_expr(&args.z, order)?,
    };
    let families = saes::solve_sh22(&coeffs, space)?;
    let oracle = if args.oracle { Some(saes::oracle_nullspace_lift(&coeffs.expr(), &coeffs.z, space)?) } else { None };
    let mut ok = true;
    line(out, format!("{} families", families.len()));
    for (i, f) in families.iter().enumerate() {
        let pass = f.residual <= tol;
        ok &= pass;
        line(out, format!("family {i}: method {}, free constant on |n;{}>", f.method, f.sector.symbol()));
        line(out, format!("  residual {:.3e} {}", f.residual, verdict(pass)));
        for c in &f.conditions {
            let holds = c.holds(tol);
            ok &= holds;
            line(out, format!("  condition {}: {}", c.name, if holds { "holds" } else { "violated" }));
        }
        if let Some(o) = &oracle {
            let dev = o.project(&f.state).1;
            let pass = dev <= tol.max(1e-9);
            ok &= pass;
            line(out, format!("  oracle deviation {dev:.3e} {}", verdict(pass)));
        }
    }
    if let Some(o) = &oracle {
        line(out, format!("oracle body dimension {}, constraint levels {:?}", o.body_dimension, o.constraint_levels));
    }
    Ok(ok)
}

fn family_params(order: usize, params: &[(String, String)]) -> Result<FamilyParams> {
    let mut p = FamilyParams::new(order);
    for (k, v) in params {
        p.insert(k, parse_expr(v, order)?);
    }
    Ok(p)
}

fn construct(args: &ConstructArgs, space: FockSpace, tol: f64, out: &mut String) -> Result<bool> {
    let p = family_params(space.order, &args.params)?;
    let f = states::construct_family(&args.family, &p, space)?;
    let pass = f.residual <= tol;
    line(out, format!("family {}", f.name));
    line(out, format!("eigenvalue {}", f.eigenvalue));
    line(out, format!("residual {:.3e} {}", f.residual, verdict(pass)));
    for (name, value) in f.normalization.entries() {
        line(out, format!("normalization {name} = {value}"));
    }
    line(out, format!("norm squared {}", f.norm_squared()));
    let text = serialize_state(&f.state).to_text();
    match &args.out {
        Some(path) => {
            std::fs::write(path, text + "\n").map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
            line(out, format!("state written to {}", path.display()));
        }
        None => line(out, text),
    }
    Ok(pass)
}

fn lookup(order: usize, params: &[(String, String)], key: &str, default: Option<G>) -> Result<G> {
    match params.iter().rev().find(|(k, _)| k == key) {
        Some((_, v)) => parse_expr(v, order),
        None => default.ok_or_else(|| Error::Config(format!("missing parameter {key}"))),
    }
}

fn check_keys(params: &[(String, String)], known: &[&str]) -> Result<()> {
    for (k, _) in params {
        if !known.contains(&k.as_str()) {
            return Err(Error::Config(format!("unknown parameter {k}; expected one of {}", known.join(", "))));
        }
    }
    Ok(())
}

fn iso(args: &IsospecArgs, space: FockSpace, tol: f64, out: &mut String) -> Result<bool> {
    let order = space.order;
    let zero = Some(G::zero(order));
    let family = match args.family.as_str() {
        "spin" => IsoFamily::SpinHalf,
        other => IsoFamily::parse(other)?,
    };
    let params = match family {
        IsoFamily::H2 => {
            check_keys(&args.params, &["beta1"])?;
            IsoParams::H2 { beta1: lookup(order, &args.params, "beta1", None)? }
        }
        IsoFamily::SpinHalf => {
            check_keys(&args.params, &["gamma0", "delta0"])?;
            IsoParams::SpinHalf {
                gamma0: lookup(order, &args.params, "gamma0", None)?,
                delta0: lookup(order, &args.params, "delta0", None)?,
            }
        }
    };
    let mut sys = isospec::build_system(params, space)?;
    if let Some(kind) = &args.conjugate {
        let cp = &args.conj_params;
        let conj = match kind.as_str() {
            "G" | "g" => {
                check_keys(cp, &["beta0", "gamma1", "delta1"])?;
                UnitaryParams::Supersqueeze {
                    beta0: lookup(order, cp, "beta0", zero.clone())?,
                    gamma1: lookup(order, cp, "gamma1", zero.clone())?,
                    delta1: lookup(order, cp, "delta1", zero.clone())?,
                }
            }
            "U" | "u" => {
                check_keys(cp, &["x0", "gamma1", "delta1"])?;
                UnitaryParams::Osp {
                    x0: lookup(order, cp, "x0", zero.clone())?,
                    gamma1: lookup(order, cp, "gamma1", zero.clone())?,
                    delta1: lookup(order, cp, "delta1", zero.clone())?,
                }
            }
            other => return Err(Error::Config(format!("unknown conjugator {other}; expected G or U"))),
        };
        sys = isospec::conjugate_system(&sys, conj)?;
    }
    let levels = args.levels.unwrap_or_else(|| space.band().saturating_sub(2).min(20));
    let mut ok = true;
    line(out, format!("isospectral system {}{}", family.name(), if sys.conjugator.is_some() { " (conjugated)" } else { "" }));
    for c in &sys.checks {
        let pass = c.deviation <= tol;
        ok &= pass;
        line(out, format!("  {:<40} {:.3e} {}", c.name, c.deviation, verdict(pass)));
    }
    let spectrum = isospec::eigenstates(&sys, levels)?;
    line(out, format!("ladders up to n = {levels}"));
    for c in &spectrum.checks {
        let pass = c.deviation <= tol;
        ok &= pass;
        line(out, format!("  {:<40} {:.3e} {}", c.name, c.deviation, verdict(pass)));
    }
    if let Some(z) = &args.z {
        let z = parse_expr(z, order)?;
        for j in [Sector::Minus, Sector::Plus] {
            let cs = isospec::coherent_states(&sys, &z, j)?;
            let pass = cs.residual <= tol;
            ok &= pass;
            line(out, format!("coherent state j = {}: residual {:.3e} {}", j.symbol(), cs.residual, verdict(pass)));
            if let Some(d) = cs.second_route {
                let pass = d <= tol;
                ok &= pass;
                line(out, format!("  against the moved eigenstate {d:.3e} {}", verdict(pass)));
            }
        }
    }
    Ok(ok)
}

fn verify(args: &VerifyArgs, seed: u64, out: &mut String) -> Result<bool> {
    let ids = suites::suite_criteria(&args.suite)?;
    let reports: Vec<suites::CriterionReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = ids.iter().map(|&id| scope.spawn(move || suites::run_criterion(id, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    });
    line(out, format!("suite {} (seed {seed})", args.suite));
    for r in &reports {
        line(out, r.line());
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    line(out, format!("{passed}/{} criteria passed", reports.len()));
    Ok(passed == reports.len())
}

#[cfg(test)]
mod tests;
