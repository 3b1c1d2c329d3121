use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value as Json};

use lsym_core::error::{Error, Result};
use lsym_core::expr::{eval_str, EvalConfig, Value};
use lsym_core::invariants::{
    invariant_dim, oracle_dim, series_coefficient, Group, InvariantQuery, InvariantRecord, PowerKind,
};
use lsym_core::oracles::{haar_mc_dim, multigraph_count};
use lsym_core::prob::{lambda_moment, negation_via_exp, sigma_mgf, theorem_negation_check, RandomVariable, RandomVariableJson};
use lsym_core::random::random_variable;
use lsym_core::ring::{AdamsRing, Laurent, Rational, Var};
use lsym_core::symseries::{render, series_to_json, Basis};
use lsym_core::Partition;

const DEFAULT_MAX_DEGREE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
enum RingSpec {
    Rational,
    Laurent(Vec<String>),
}

impl FromStr for RingSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("q") {
            return Ok(RingSpec::Rational);
        }
        let vars = s
            .strip_prefix("laurent:")
            .ok_or_else(|| format!("unknown ring `{s}` (expected Q or laurent:<vars>)"))?;
        let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
        for v in &vars {
            if v.is_empty() || !v.chars().next().unwrap().is_alphabetic() || !v.chars().all(char::is_alphanumeric) {
                return Err(format!("bad indeterminate name `{v}`"));
            }
        }
        Ok(RingSpec::Laurent(vars))
    }
}

impl std::fmt::Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingSpec::Rational => write!(f, "Q"),
            RingSpec::Laurent(vars) => write!(f, "laurent:{}", vars.join(",")),
        }
    }
}

impl RingSpec {
    fn variables(&self) -> Vec<String> {
        match self {
            RingSpec::Rational => Vec::new(),
            RingSpec::Laurent(vars) => vars.clone(),
        }
    }
}

/// Exact symmetric function computations, invariant dimensions and oracles.
#[derive(Parser, Debug)]
#[command(name = "lsym", version)]
struct Cli {
    /// Degree bound D (capped by LSYM_MAX_DEGREE, default 12).
    #[arg(short = 'D', long = "degree", global = true, default_value_t = 6)]
    degree: usize,

    /// Coefficient ring: Q or laurent:<comma-separated indeterminates>.
    #[arg(long, global = true, default_value = "Q")]
    ring: RingSpec,

    /// Output basis: m, e, h, p or s.
    #[arg(long, global = true, default_value = "m")]
    basis: Basis,

    /// Emit JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression, e.g. `omegat(h_2)` or `inner(exp(e_2), m_[1,1])`.
    Eval { expr: String },
    /// Evaluate an expression and print it in several bases.
    Convert {
        expr: String,
        /// Target bases (default: all).
        #[arg(long, value_delimiter = ',')]
        to: Vec<Basis>,
    },
    /// Dimension of the invariants of O(n) or Sp(n) in ∧^τ V or Sym^τ V.
    Invariant {
        #[arg(long)]
        group: Group,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long)]
        tau: Partition,
        #[arg(long, default_value = "ext")]
        kind: PowerKind,
        /// Report the series coefficient even when |τ| > n. It is not a
        /// dimension in general.
        #[arg(long)]
        unstable: bool,
    },
    /// Compare the exact values with a Monte Carlo estimate for ∧^τ V.
    Oracle {
        #[arg(long)]
        group: Group,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long)]
        tau: Partition,
    },
    /// Check ω̃(E[Exp_σ(X h₁)]) = E[Exp_σ(-X h₁)] on random finite random variables.
    TheoremCheck {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Check this random variable (JSON, or @file) instead of random ones.
        #[arg(long)]
        rv: Option<String>,
    },
    /// σ-moment generating function of a random variable, or one λ-moment.
    Moments {
        /// Random variable as JSON, or @file.
        #[arg(long)]
        rv: String,
        #[arg(long)]
        tau: Option<Partition>,
        /// e, h or s.
        #[arg(long, default_value = "e")]
        kind: Basis,
    },
}

fn max_degree() -> Result<usize> {
    match std::env::var("LSYM_MAX_DEGREE") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Eval(format!("LSYM_MAX_DEGREE must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn read_json_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Eval(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parse_rv(arg: &str) -> Result<RandomVariable<Laurent>> {
    let text = read_json_arg(arg)?;
    let json: RandomVariableJson =
        serde_json::from_str(&text).map_err(|e| Error::InvalidRandomVariable(e.to_string()))?;
    RandomVariable::from_json(&json)
}

/// Rejects random variables mentioning indeterminates outside the ring.
fn check_rv_vars(x: &RandomVariable<Laurent>, ring: &RingSpec) -> Result<()> {
    let allowed = ring.variables();
    for (_, v) in x.outcomes() {
        for (mono, _) in v.terms() {
            for (var, _) in mono.exponents() {
                let name = var.name();
                if !allowed.contains(&name) {
                    return Err(Error::UnknownIndeterminate(name));
                }
            }
        }
    }
    Ok(())
}

fn print(cli: &Cli, text: String, json: Json) {
    let out = if cli.json {
        serde_json::to_string_pretty(&json).expect("plain data")
    } else {
        text
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn eval_value<R: AdamsRing>(cli: &Cli, expr: &str) -> Result<Value<R>> {
    let cfg = EvalConfig {
        degree_bound: cli.degree,
        variables: cli.ring.variables(),
    };
    eval_str(expr, &cfg)
}

fn cmd_eval<R: AdamsRing>(cli: &Cli, expr: &str) -> Result<()> {
    let v = eval_value::<R>(cli, expr)?;
    print(cli, v.render(cli.basis), v.to_json(cli.basis));
    Ok(())
}

fn cmd_convert<R: AdamsRing>(cli: &Cli, expr: &str, to: &[Basis]) -> Result<()> {
    let f = eval_value::<R>(cli, expr)?.into_series(cli.degree);
    let bases: Vec<Basis> = if to.is_empty() { Basis::ALL.to_vec() } else { to.to_vec() };
    let text = bases
        .iter()
        .map(|&b| format!("{b}: {}", render(&f, b)))
        .collect::<Vec<_>>()
        .join("\n");
    let json = Json::Array(
        bases
            .iter()
            .map(|&b| serde_json::to_value(series_to_json(&f, b)).expect("plain data"))
            .collect(),
    );
    print(cli, text, json);
    Ok(())
}

fn power_symbol(kind: PowerKind) -> &'static str {
    match kind {
        PowerKind::Exterior => "∧",
        PowerKind::Symmetric => "Sym",
    }
}

fn cmd_invariant(cli: &Cli, group: Group, n: usize, tau: &Partition, kind: PowerKind, unstable: bool) -> Result<()> {
    let q = InvariantQuery::new(group, n, tau.clone(), kind)?;
    let stable = q.is_stable();
    let dim = if stable {
        invariant_dim(&q)?.to_string()
    } else if unstable {
        series_coefficient(&q).to_string()
    } else {
        return Err(Error::Unstable { weight: tau.weight(), n });
    };
    let mut checks = Map::new();
    if stable {
        let loops = matches!((group, kind), (Group::Sp, PowerKind::Exterior) | (Group::O, PowerKind::Symmetric));
        checks.insert("multigraph".into(), json!(multigraph_count(tau, loops)));
    }
    if group == Group::Sp {
        match oracle_dim(group, n, tau, kind) {
            Ok(d) => {
                checks.insert("weyl_ct".into(), json!(d));
            }
            Err(e @ Error::OracleLimit(_)) => {
                checks.insert("weyl_ct".into(), json!(e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    let record = InvariantRecord {
        group,
        n,
        tau: tau.clone(),
        kind,
        dim: dim.clone(),
        stable,
        oracle_checks: checks.clone(),
    };
    let mut text = if stable {
        format!("dim ({}^{tau} C^{n})^{group}({n}) = {dim}", power_symbol(kind))
    } else {
        format!(
            "series coefficient for {}^{tau} under {group}({n}) = {dim} (|tau| > n: not a dimension in general)",
            power_symbol(kind)
        )
    };
    for (name, v) in &checks {
        text.push_str(&format!("\n  {name}: {v}"));
    }
    print(cli, text, serde_json::to_value(record).expect("plain data"));
    Ok(())
}

fn cmd_oracle(cli: &Cli, group: Group, n: usize, tau: &Partition) -> Result<()> {
    let q = InvariantQuery::new(group, n, tau.clone(), PowerKind::Exterior)?;
    let mut exact = Map::new();
    if q.is_stable() {
        exact.insert("series".into(), json!(invariant_dim(&q)?));
        let loops = group == Group::Sp;
        exact.insert("multigraph".into(), json!(multigraph_count(tau, loops)));
    }
    if group == Group::Sp {
        exact.insert("weyl_ct".into(), json!(oracle_dim(group, n, tau, PowerKind::Exterior)?));
    }
    let mc = haar_mc_dim(group, n, tau, cli.samples, cli.seed)?;
    let values: Vec<u64> = exact.values().filter_map(Json::as_u64).collect();
    let verdict = match values.first() {
        None => "no exact value".to_string(),
        Some(&v) if values.iter().any(|&w| w != v) => "exact values disagree".to_string(),
        Some(&v) => {
            let diff = (mc.estimate - v as f64).abs();
            if diff <= 3.0 * mc.stderr || diff < 1e-9 {
                "agree".to_string()
            } else {
                format!("monte carlo off by {:.2} standard errors", diff / mc.stderr)
            }
        }
    };
    let json = json!({
        "query": { "group": group, "n": n, "tau": tau },
        "exact_values": exact,
        "mc": { "estimate": mc.estimate, "stderr": mc.stderr, "samples": cli.samples, "seed": cli.seed },
        "verdict": verdict,
    });
    let mut text = format!("{group}({n}), ∧^{tau}");
    for (name, v) in &exact {
        text.push_str(&format!("\n  {name}: {v}"));
    }
    text.push_str(&format!(
        "\n  monte carlo: {:.5} ± {:.5} ({} samples, seed {})\n  verdict: {verdict}",
        mc.estimate, mc.stderr, cli.samples, cli.seed
    ));
    print(cli, text, json);
    Ok(())
}

/// Returns whether all checks passed.
fn cmd_theorem_check(cli: &Cli, trials: usize, rv: Option<&str>) -> Result<bool> {
    let xs: Vec<RandomVariable<Laurent>> = match rv {
        Some(arg) => {
            let x = parse_rv(arg)?;
            check_rv_vars(&x, &cli.ring)?;
            vec![x]
        }
        None => {
            let vars: Vec<Var> = cli.ring.variables().iter().map(|v| Var::new(v)).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            (0..trials).map(|_| random_variable(&mut rng, &vars, 4, 2)).collect()
        }
    };
    let d = cli.degree;
    let results: Vec<Result<Option<Json>>> = xs
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let first = theorem_negation_check(x, d)?;
            let second = negation_via_exp(x, d)?;
            if first.holds && second.holds {
                return Ok(None);
            }
            Ok(Some(json!({
                "trial": i,
                "random_variable": x.to_json(),
                "pairing_route": first,
                "exchange_route": second,
            })))
        })
        .collect();
    let mut counterexamples = Vec::new();
    for r in results {
        if let Some(c) = r? {
            counterexamples.push(c);
        }
    }
    let mut text = format!(
        "theorem-check: {} random variable(s), D = {d}, ring {}, seed {}\ncounterexamples: {}",
        xs.len(),
        cli.ring,
        cli.seed,
        counterexamples.len()
    );
    for c in &counterexamples {
        text.push_str(&format!("\n{}", serde_json::to_string(c).expect("plain data")));
    }
    let ok = counterexamples.is_empty();
    let json = json!({
        "trials": xs.len(),
        "degree_bound": d,
        "ring": cli.ring.to_string(),
        "seed": cli.seed,
        "counterexamples": counterexamples,
    });
    print(cli, text, json);
    Ok(ok)
}

fn cmd_moments(cli: &Cli, rv: &str, tau: Option<&Partition>, kind: Basis) -> Result<()> {
    let x = parse_rv(rv)?;
    check_rv_vars(&x, &cli.ring)?;
    match tau {
        None => {
            let mgf = sigma_mgf(&x, cli.degree)?;
            print(
                cli,
                render(mgf.series(), cli.basis),
                serde_json::to_value(series_to_json(mgf.series(), cli.basis)).expect("plain data"),
            );
        }
        Some(tau) => {
            if !matches!(kind, Basis::E | Basis::H | Basis::S) {
                return Err(Error::Eval(format!("moment kind must be e, h or s, got {kind}")));
            }
            let m = lambda_moment(&x, tau, kind)?;
            let text = format!(
                "E[{}_{tau} ∘ X] = {}\n  via pairing: {}\n  routes agree: {}",
                kind.letter(),
                m.direct,
                m.via_pairing,
                m.agree()
            );
            let json = json!({
                "tau": tau,
                "kind": kind,
                "direct": m.direct.to_string(),
                "via_pairing": m.via_pairing.to_string(),
                "agree": m.agree(),
            });
            print(cli, text, json);
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let cap = max_degree()?;
    if cli.degree > cap {
        return Err(Error::Eval(format!(
            "degree bound {} exceeds LSYM_MAX_DEGREE = {cap}",
            cli.degree
        )));
    }
    let laurent = matches!(cli.ring, RingSpec::Laurent(_));
    match &cli.command {
        Command::Eval { expr } if laurent => cmd_eval::<Laurent>(cli, expr)?,
        Command::Eval { expr } => cmd_eval::<Rational>(cli, expr)?,
        Command::Convert { expr, to } if laurent => cmd_convert::<Laurent>(cli, expr, to)?,
        Command::Convert { expr, to } => cmd_convert::<Rational>(cli, expr, to)?,
        Command::Invariant {
            group,
            n,
            tau,
            kind,
            unstable,
        } => cmd_invariant(cli, *group, *n, tau, *kind, *unstable)?,
        Command::Oracle { group, n, tau } => cmd_oracle(cli, *group, *n, tau)?,
        Command::TheoremCheck { trials, rv } => return cmd_theorem_check(cli, *trials, rv.as_deref()),
        Command::Moments { rv, tau, kind } => cmd_moments(cli, rv, tau.as_ref(), *kind)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Syntax { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
