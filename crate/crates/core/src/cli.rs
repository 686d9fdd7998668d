//! Command-line front end. Every command writes deterministic plain text.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{
    bernoulli_exponent, bernoulli_exponent_full, divisibility_survey, genus_x0, genus_x0_plus, real_quadratic_data,
    t_valence,
};
use crate::exact::{fmt_rat, IPoly, LaurentSeries};
use crate::galois::{candidate_orders, probe, quadratic_subfield_test};
use crate::newforms::{default_length, eigenforms_from_traces, expand_newform, trace_table};
use crate::param::{
    builtin_registry, elliptic_expansion, find_model, hyperelliptic_expansion, load_registry, CoordinateExpansion,
    CurveModel, Normalization, RSeries,
};
use crate::relation::{find_relation, find_relation_genus0, SURPLUS};
use crate::units::{
    breve_valuation, derived_units, f_chi_breve_series, f_chi_series, int_to_rat, psi_series,
    ramanujan_theta_quotient_check, random_gamma0_pairs, resolve_unit_sign, t_series, verify_heegner_vanishing,
    verify_transformation_law, SeriesData, UnitKind,
};
use crate::zeros::{degree_conjecture_check, plus_level_setup, plus_zero_locus};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(name = "modunit", version, about = "Exact q-series workbench for Ogg-Ligozat modular units")]
pub struct Cli {
    /// Working precision in q.
    #[arg(long, global = true, default_value_t = 200)]
    pub precision: i64,
    /// Curve registry replacing the built-in one.
    #[arg(long, global = true)]
    pub curves: Option<PathBuf>,
    /// Number of sampled primes for the Galois probe.
    #[arg(long, global = true, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Numeric tolerance for the verify commands.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Print bare coefficient lists only.
    #[arg(long, global = true)]
    pub coeffs_only: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// v_χ from both Bernoulli sums, v_N, and the real quadratic data.
    Bernoulli { n: u64 },
    /// Levels 13 < N ≤ max with v_N | v_χ.
    Survey {
        #[arg(long, default_value_t = 3709)]
        max: u64,
    },
    /// q-expansion of psi, f_chi, f_chi_breve, g_chi, g_chi_breve, h_chi, t,
    /// the elliptic coordinates x, y or the genus-two coordinates hx, hy.
    Expand {
        kind: String,
        n: u64,
        #[arg(long)]
        terms: Option<i64>,
    },
    /// Polynomial relation of a unit in the coordinates of a modular curve.
    Identity {
        n: u64,
        #[arg(long, default_value = "g_chi_breve")]
        target: String,
    },
    /// Common zeros of h_χ and the X_0^+(N) model.
    Zeros { n: u64 },
    /// Frobenius cycle types of p_N, or of a polynomial read from a file.
    Galois {
        n: Option<u64>,
        /// File with integer coefficients, highest degree first.
        #[arg(long)]
        poly: Option<PathBuf>,
        /// d for the quadratic subfield test (defaults to N).
        #[arg(long)]
        field: Option<u64>,
    },
    /// Numeric and exact checks of the transformation law, Heegner vanishing and Ramanujan identities.
    Verify { what: VerifyKind, n: u64 },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Transform,
    Heegner,
    Ramanujan,
}

/// Validated global options.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision: i64,
    pub curves_path: Option<PathBuf>,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub coeffs_only: bool,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.precision < 32 {
            return Err(Error::BadInput(format!("precision {} is below 32", cli.precision)));
        }
        if cli.samples == 0 {
            return Err(Error::BadInput("samples must be positive".into()));
        }
        if cli.tolerance.is_nan() || cli.tolerance <= 0.0 {
            return Err(Error::BadInput("tolerance must be positive".into()));
        }
        Ok(RunConfig {
            precision: cli.precision,
            curves_path: cli.curves.clone(),
            samples: cli.samples,
            seed: cli.seed,
            tolerance: cli.tolerance,
            coeffs_only: cli.coeffs_only,
        })
    }

    fn registry(&self) -> Result<Vec<CurveModel>> {
        match &self.curves_path {
            Some(p) => load_registry(p),
            None => Ok(builtin_registry()),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code together with stdout and stderr text.
pub fn execute<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 { (0, e.to_string(), String::new()) } else { (2, String::new(), e.to_string()) };
        }
    };
    match RunConfig::from_cli(&cli).and_then(|cfg| run(&cli.command, &cfg)) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {}: {e}\n", e.tag())),
    }
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<String> {
    match cmd {
        Command::Bernoulli { n } => cmd_bernoulli(*n),
        Command::Survey { max } => cmd_survey(*max, cfg),
        Command::Expand { kind, n, terms } => cmd_expand(kind, *n, terms.unwrap_or(cfg.precision), cfg),
        Command::Identity { n, target } => cmd_identity(*n, target, cfg),
        Command::Zeros { n } => cmd_zeros(*n, cfg),
        Command::Galois { n, poly, field } => cmd_galois(*n, poly.as_ref(), *field, cfg),
        Command::Verify { what, n } => cmd_verify(*what, *n, cfg),
    }
}

pub fn cmd_bernoulli(n: u64) -> Result<String> {
    let half = bernoulli_exponent(n)?;
    let full = bernoulli_exponent_full(n)?;
    let data = real_quadratic_data(n)?;
    let mut out = String::new();
    writeln!(out, "N={n} v_chi={} v_chi_full={} v_N={}", fmt_rat(&half), fmt_rat(&full), t_valence(n)).unwrap();
    writeln!(
        out,
        "u={} norm={} h={} h+={}",
        data.fundamental_unit, data.unit_norm, data.class_number, data.narrow_class_number
    )
    .unwrap();
    if half != full {
        return Err(Error::VerificationFailed(format!("half-range and full-range sums differ at {n}")));
    }
    Ok(out)
}

pub fn cmd_survey(max: u64, cfg: &RunConfig) -> Result<String> {
    let mut out = String::new();
    if !cfg.coeffs_only {
        writeln!(out, "N\tv_N\tv_chi").unwrap();
    }
    for (n, vn, v) in divisibility_survey(max) {
        writeln!(out, "{n}\t{vn}\t{v}").unwrap();
    }
    Ok(out)
}

fn render<D>(s: &LaurentSeries<D>, coeffs_only: bool) -> String
where
    D: crate::exact::Coeff + std::fmt::Display,
{
    if coeffs_only {
        let parts: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    } else {
        s.to_string()
    }
}

fn render_rat(s: &RSeries, coeffs_only: bool) -> String {
    if coeffs_only {
        let parts: Vec<String> = s.coeffs().iter().map(fmt_rat).collect();
        format!("[{}]", parts.join(", "))
    } else {
        s.to_string()
    }
}

fn elliptic_coordinates(n: u64, terms: i64, cfg: &RunConfig) -> Result<CoordinateExpansion> {
    let reg = cfg.registry()?;
    let model = find_model(&reg, n, true).ok_or_else(|| Error::BadInput(format!("no elliptic model at level {n}")))?;
    let f = expand_newform(model, default_length(terms.max(8) as usize))?;
    elliptic_expansion(model, &f, terms)
}

fn genus_two_coordinates(n: u64, terms: i64) -> Result<CoordinateExpansion> {
    if genus_x0(n) != 2 {
        return Err(Error::BadInput(format!("X_0({n}) does not have genus two")));
    }
    let len = (3 * terms.max(8) + 40) as usize;
    let forms = eigenforms_from_traces(&trace_table(n, len)?, len)?;
    let norm = match n {
        29 => Normalization::Sqrt2Pair,
        37 => Normalization::AtkinLehnerPair,
        _ => Normalization::Generic,
    };
    let e = hyperelliptic_expansion(&forms[0], &forms[1], norm)?;
    Ok(CoordinateExpansion { x: e.x.truncate(terms), y: e.y.truncate(terms), ..e })
}

pub fn cmd_expand(kind: &str, n: u64, terms: i64, cfg: &RunConfig) -> Result<String> {
    if terms < 1 {
        return Err(Error::BadInput(format!("terms must be positive, got {terms}")));
    }
    let co = cfg.coeffs_only;
    let body = match kind {
        "psi" => render(&psi_series(n, terms)?, co),
        "f_chi" => match f_chi_series(n, terms, resolve_unit_sign(n)?)?.series {
            SeriesData::Quad(s) => render(&s, co),
            other => other.render(),
        },
        "f_chi_breve" => match f_chi_breve_series(n, terms)?.series {
            SeriesData::Int(s) => render(&s, co),
            other => other.render(),
        },
        "t" => match t_series(n, terms)?.series {
            SeriesData::Int(s) => render(&s, co),
            other => other.render(),
        },
        "g_chi" | "g_chi_breve" | "h_chi" => {
            let d = derived_units(n, terms)?;
            let s = match kind {
                "g_chi" => d.g_chi.ok_or(Error::BadLevel(n))?,
                "h_chi" => d.h_chi.ok_or(Error::BadLevel(n))?,
                _ => d.g_chi_breve,
            };
            render_rat(&s, co)
        }
        "x" | "y" => {
            let e = elliptic_coordinates(n, terms, cfg)?;
            render_rat(if kind == "x" { &e.x } else { &e.y }, co)
        }
        "hx" | "hy" => {
            let e = genus_two_coordinates(n, terms)?;
            render_rat(if kind == "hx" { &e.x } else { &e.y }, co)
        }
        other => return Err(Error::BadInput(format!("unknown series kind {other}"))),
    };
    Ok(format!("{body}\n"))
}

fn needed_precision(n: u64) -> Result<i64> {
    Ok((2 * breve_valuation(n)? + 2 * SURPLUS).max(40))
}

pub fn cmd_identity(n: u64, target: &str, cfg: &RunConfig) -> Result<String> {
    let kind = UnitKind::parse(target).ok_or_else(|| Error::BadInput(format!("unknown target {target}")))?;
    let mut out = String::new();
    if matches!(n, 5 | 13) {
        if kind != UnitKind::GChiBreve {
            return Err(Error::BadInput(format!("at level {n} only g_chi_breve is expressed in t")));
        }
        let p = cfg.precision;
        let d = derived_units(n, p)?;
        let t = match t_series(n, p)?.series {
            SeriesData::Int(s) => int_to_rat(&s),
            _ => unreachable!(),
        };
        let poly = find_relation_genus0(&d.g_chi_breve, &t)?;
        writeln!(out, "N={n} curve=X0({n}) target=g_chi_breve checked_to=q^{}", p - 1).unwrap();
        let mut rel = crate::exact::BiPoly::new();
        rel.add_term(0, 0, poly.coeff(0));
        rel.add_term(1, 0, poly.coeff(1));
        writeln!(out, "g_chi_breve = {}", rel.to_string().replace('X', "t")).unwrap();
        return Ok(out);
    }
    if kind == UnitKind::HChi {
        let setup = plus_level_setup(n, &cfg.registry()?)?;
        writeln!(
            out,
            "N={n} curve={} target=h_chi checked_to=q^{}",
            setup.model.label,
            setup.relation.residual_precision - 1
        )
        .unwrap();
        writeln!(out, "h_chi = {}", setup.relation.poly).unwrap();
        return Ok(out);
    }
    let p = needed_precision(n)?;
    let (label, exp) = match genus_x0(n) {
        1 => {
            let e = elliptic_coordinates(n, p, cfg)?;
            (e.model.as_ref().map(|m| m.label.clone()).unwrap_or_default(), e)
        }
        2 => (format!("X0({n})"), genus_two_coordinates(n, 2 * p)?),
        g => return Err(Error::BadInput(format!("X_0({n}) has genus {g}"))),
    };
    let d = derived_units(n, exp.precision())?;
    let series = match kind {
        UnitKind::GChiBreve => d.g_chi_breve,
        UnitKind::GChi => d.g_chi.ok_or(Error::BadLevel(n))?,
        other => return Err(Error::BadInput(format!("no relation search for {}", other.name()))),
    };
    let rel = find_relation(kind, &series, &exp, None)?;
    writeln!(out, "N={n} curve={label} target={} checked_to=q^{}", kind.name(), rel.residual_precision - 1).unwrap();
    writeln!(out, "{} = {}", kind.name(), rel.poly).unwrap();
    Ok(out)
}

fn coeff_list(p: &IPoly) -> String {
    p.to_string()
}

pub fn cmd_zeros(n: u64, cfg: &RunConfig) -> Result<String> {
    let (setup, r) = plus_zero_locus(n, &cfg.registry()?)?;
    let mut out = String::new();
    if cfg.coeffs_only {
        writeln!(out, "{}", coeff_list(&r.p_n)).unwrap();
        writeln!(out, "{}", coeff_list(&r.p_n_y)).unwrap();
        return Ok(out);
    }
    let factors = |f: &crate::exact::factor::Factorization| {
        f.factors
            .iter()
            .map(|(g, m)| if *m == 1 { format!("({})", g.pretty("T")) } else { format!("({})^{m}", g.pretty("T")) })
            .collect::<Vec<_>>()
            .join("")
    };
    writeln!(out, "N={n} curve={} genus={}", setup.model.label, genus_x0_plus(n)).unwrap();
    writeln!(out, "h_chi = {}", setup.relation.poly).unwrap();
    writeln!(out, "g_X(T) = {}", r.g_x.pretty("T")).unwrap();
    writeln!(out, "  = {}{}", content_prefix(&r.factors_x.content), factors(&r.factors_x)).unwrap();
    writeln!(out, "g_Y(T) = {}", r.g_y.pretty("T")).unwrap();
    writeln!(out, "  = {}{}", content_prefix(&r.factors_y.content), factors(&r.factors_y)).unwrap();
    match &r.trivial_zero {
        Some((x, y)) => writeln!(out, "trivial zero: ({}, {})", fmt_rat(x), fmt_rat(y)).unwrap(),
        None => writeln!(out, "trivial zero: none").unwrap(),
    }
    writeln!(out, "p_{n}(T) = {}", r.p_n.pretty("T")).unwrap();
    writeln!(out, "p_{n}^Y(T) = {}", r.p_n_y.pretty("T")).unwrap();
    let v = breve_valuation(n)?;
    let holds = degree_conjecture_check(n, &r.p_n)?;
    writeln!(
        out,
        "deg p_N = {} v_chi = {v} degree conjecture: {}",
        r.p_n.degree().unwrap_or(0),
        if holds { "holds" } else { "fails" }
    )
    .unwrap();
    Ok(out)
}

fn content_prefix(c: &BigInt) -> String {
    if c.is_one() {
        String::new()
    } else if *c == -BigInt::one() {
        "-".into()
    } else {
        format!("{c}")
    }
}

/// Integer coefficients, highest degree first, separated by whitespace or commas.
pub fn parse_poly(text: &str) -> Result<IPoly> {
    let coeffs: std::result::Result<Vec<BigInt>, _> = text
        .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
        .filter(|s| !s.is_empty())
        .map(str::parse::<BigInt>)
        .collect();
    let mut coeffs = coeffs.map_err(|e| Error::BadInput(format!("polynomial file: {e}")))?;
    coeffs.reverse();
    let p = IPoly::from_coeffs(coeffs, BigInt::zero());
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::BadInput("polynomial must have positive degree".into()));
    }
    Ok(p)
}

pub fn cmd_galois(n: Option<u64>, poly: Option<&PathBuf>, field: Option<u64>, cfg: &RunConfig) -> Result<String> {
    let p = match (n, poly) {
        (_, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Error::BadInput(format!("{}: {e}", path.display())))?;
            parse_poly(&text)?
        }
        (Some(n), None) => plus_zero_locus(n, &cfg.registry()?)?.1.p_n,
        (None, None) => return Err(Error::BadInput("give a level or --poly".into())),
    };
    let stats = probe(&p, cfg.samples)?;
    let deg = p.degree().unwrap_or(0);
    let mut out = String::new();
    writeln!(out, "poly = {}", p.pretty("T")).unwrap();
    writeln!(out, "degree = {deg} primes = {}..{}", stats.sampled_primes[0], stats.sampled_primes.last().unwrap())
        .unwrap();
    write!(out, "{stats}").unwrap();
    if let Some(d) = field.or(n) {
        let ok = quadratic_subfield_test(&p, d)?;
        writeln!(out, "quadratic subfield Q(sqrt {d}): {}", if ok { "VERIFIED" } else { "REFUTED" }).unwrap();
    }
    if let Some([a, b, c]) = candidate_orders(deg) {
        writeln!(out, "candidate orders: 2*(n/2)! = {a}, 2*((n/2)!)^2 = {b}, 2^(n/2)*(n/2)! = {c}").unwrap();
    }
    Ok(out)
}

pub fn cmd_verify(what: VerifyKind, n: u64, cfg: &RunConfig) -> Result<String> {
    match what {
        VerifyKind::Transform => {
            let pairs = random_gamma0_pairs(n, 20, cfg.seed);
            let mut worst = 0f64;
            for (m, tau) in &pairs {
                worst = worst.max(verify_transformation_law(n, m, *tau)?);
            }
            verdict(worst, cfg.tolerance, &format!("max_residual={worst:.3e} samples={}", pairs.len()))
        }
        VerifyKind::Heegner => {
            let r = verify_heegner_vanishing(n)?;
            verdict(
                r.max(),
                cfg.tolerance,
                &format!("rho={} h_chi={:.3e} breve_square_plus_one={:.3e}", r.rho, r.h_chi, r.breve_square_plus_one),
            )
        }
        VerifyKind::Ramanujan => verify_ramanujan(n, cfg),
    }
}

fn verdict(residual: f64, tol: f64, detail: &str) -> Result<String> {
    if residual < tol {
        Ok(format!("OK {detail}\n"))
    } else {
        Err(Error::VerificationFailed(detail.to_string()))
    }
}

/// f̆² + (c + t)f̆ − 1 = 0 through `precision` terms, c = 11 at N = 5 and 3 at N = 13.
fn verify_ramanujan(n: u64, cfg: &RunConfig) -> Result<String> {
    let c = match n {
        5 => 11,
        13 => 3,
        _ => return Err(Error::BadInput(format!("Ramanujan identities exist for N = 5, 13, not {n}"))),
    };
    let p = cfg.precision;
    let fb = match f_chi_breve_series(n, p + 4)?.series {
        SeriesData::Int(s) => s,
        _ => unreachable!(),
    };
    let t = match t_series(n, p + 4)?.series {
        SeriesData::Int(s) => s,
        _ => unreachable!(),
    };
    let shifted = &t + &LaurentSeries::constant(BigInt::from(c), p + 4);
    let one = LaurentSeries::constant(BigInt::one(), p + 4);
    let residual = (&(&(&fb * &fb) + &(&shifted * &fb)) - &one).truncate(p);
    if residual.precision() < p {
        return Err(Error::PrecisionTooLow { needed: p, have: residual.precision() });
    }
    let bad = residual.coeffs().iter().filter(|x| !x.is_zero()).count();
    let mut out = String::new();
    if bad != 0 {
        return Err(Error::VerificationFailed(format!("residual={bad} terms={p}")));
    }
    writeln!(out, "OK residual=0 terms={p}").unwrap();
    let d = derived_units(n, p)?;
    let t_rat = int_to_rat(&t).truncate(p);
    let literal = &d.g_chi_breve - &t_rat;
    let literal_holds = literal.truncate(p) == RSeries::constant(crate::exact::rat_int(c), p);
    writeln!(
        out,
        "note: g_chi_breve = {c} + t {}; the quadratic gives g_chi_breve = -(t + {c})",
        if literal_holds { "holds" } else { "does not hold as printed" }
    )
    .unwrap();
    if n == 13 {
        let r = ramanujan_theta_quotient_check(20)?;
        writeln!(
            out,
            "theta quotients (20 terms): mu2*mu3*mu4 = f_breve {}, mu2*mu3*mu4 = 1/f_breve {}, t + 3 = mu2*mu3*mu4 - mu1*mu5*mu6 {}",
            yes(r.literal_identities),
            yes(r.swapped_identities),
            yes(r.berndt_entry)
        )
        .unwrap();
    }
    Ok(out)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        execute(std::iter::once("modunit").chain(args.iter().copied()))
    }

    #[test]
    fn poly_files() {
        assert_eq!(parse_poly("1 0 -37\n").unwrap(), IPoly::from_i64(&[1, 0, -37]));
        assert_eq!(parse_poly("[1, -23, 44, 2, -3]").unwrap(), IPoly::from_i64(&[1, -23, 44, 2, -3]));
        assert!(matches!(parse_poly("5"), Err(Error::BadInput(_))));
        assert!(matches!(parse_poly("1 x 2"), Err(Error::BadInput(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["bernoulli", "37"]).0, 0);
        let (code, _, err) = run_args(&["bernoulli", "39"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error: BadLevel:"));
        assert_eq!(run_args(&["--precision", "8", "survey"]).0, 2);
        assert_eq!(run_args(&["--samples", "0", "survey"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["verify", "ramanujan", "17"]).0, 2);
        assert_eq!(run_args(&["--samples", "50", "galois", "37"]).0, 2);
    }

    #[test]
    fn deterministic_output() {
        let a = run_args(&["expand", "h_chi", "37", "--terms", "12"]);
        let b = run_args(&["expand", "h_chi", "37", "--terms", "12"]);
        assert_eq!(a, b);
        let c = run_args(&["--coeffs-only", "expand", "h_chi", "37", "--terms", "6"]);
        assert_eq!(c.1, "[-1, -1, 0, -1, -2, -12, -73, -261, -778, -2071, -5070]\n");
    }
}
