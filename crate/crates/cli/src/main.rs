//! Command-line front end. Every result is one JSON record per line on
//! stdout, with the ring spec and every bound embedded in the record;
//! diagnostics go to stderr. Identical invocations produce byte-identical
//! output.
//!
//! Exit codes: 0 success, 1 check failed (the computation succeeded but a
//! verified property does not hold), 2 usage or configuration error,
//! 3 degree bound exceeded.

mod records;

use clap::{Args, Parser, Subcommand};
use ringlab::adjust::{adjust_tower, PresentedRing};
use ringlab::baer::{classify, enumerate_bad_pairs, Classification, TestPair};
use ringlab::engine::{
    format_element, hilbert, mul, parse_element, split_top_level, Element, RingEngine,
};
use ringlab::error::Error as CoreError;
use ringlab::ideal::{
    ann, conductor, dann_check, ideal_span, incoherence_probe, poincare_check, socle,
    step_check, PoincareReport,
};
use ringlab::jring::{pontrjagin_check, JRing, JValue};
use ringlab::ordinal::{extension_witness, parse_ordinal, phi_decode, Ordinal};
use ringlab::rootalg::{
    baer_witness, classify_ideal, lambda_t, nilpotency_index, parse_rational, parse_series,
    root_inverse, symbolic_ann, SymbolicIdeal,
};
use ringlab::zoo::cube::CubeEngine;
use ringlab::zoo::epsilon::{self, EpsilonEngine};
use ringlab::zoo::rado;
use std::sync::Arc;

const TOOL: &str = "ringlab";
const VERSION: &str = env!("CARGO_PKG_VERSION");

const SYNTAX_HELP: &str = "\
element syntax (sums join monomials with `+`; `0@d` is the zero of degree d):
  exterior, rado   x{0,2}          square-free monomials by index set
  cube variants    y0^2*y1, x3     y-monomials; x<k> expands to y_k + y_{k-1}^2
  epsilon          x[w^2+1]^2      generators indexed by ordinals
  presented rings  x^2*y           monomials in the named generators

ordinal syntax:    0, 1, w, w*3, w^2, w^(w+1)*2+w*3+1
root series:       1 + x^(1/2) + 2*x^(2/3)   (coefficients mod the prime)
jring elements:    eta:c | zeta:n | alpha:k:c (zeta:n means n/p^M mod 1)

entry lists for test pairs split on top-level commas; generator lists for
ideals split on `;`.";

#[derive(Parser)]
#[command(
    name = "ringlab",
    version,
    about = "exact workbench for large graded rings",
    after_long_help = SYNTAX_HELP
)]
struct Cli {
    /// TOML config file mirroring the flags ([defaults] dmax = ..., prime = ..., trunc = ...)
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingArgs {
    /// ring spec: exterior, exterior(n), cube, cube(n,m), cube-bar(n,m), rado, epsilon
    #[arg(long)]
    ring: String,
    /// degree bound; defaults to the config file, then RINGLAB_DMAX, then 16
    #[arg(long)]
    dmax: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Degreewise dimensions of a ring
    Hilbert(RingArgs),
    /// Monomial basis labels of one degree
    Basis {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        degree: i64,
    },
    /// Product of two homogeneous elements
    Mul {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Degreewise annihilator of a generator list (`;`-separated)
    Ann {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        gens: String,
        /// slice bound (default dmax - max generator degree)
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Double annihilator comparison; exit code 1 on a discrepancy
    Dann {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        gens: String,
        /// compare degrees up to this bound (default dmax - 2 max|g|)
        #[arg(long)]
        compare: Option<i64>,
    },
    /// Conductor (J : a) of a span against an element
    Conductor {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        a: String,
    },
    /// Socle slices (annihilator of the maximal ideal)
    Socle(RingArgs),
    /// Poincare duality pairing check; exit code 1 on failure
    Poincare(RingArgs),
    /// Image growth of ann(u) in m/m^2
    Probe {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        u: String,
    },
    /// Classify a test pair: transporter, block, or bad-up-to
    ClassifyPair {
        #[command(flatten)]
        ring: RingArgs,
        /// `,`-separated entries (commas inside braces/brackets are fine)
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// All nondegenerate bad pairs up to a weight cap
    BadPairs {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        weight: u64,
    },
    /// Adjoin blocks for bad pairs over a presented ring and iterate
    Adjust {
        /// generators `name:degree,name:degree,...`
        #[arg(long)]
        gens: String,
        /// relator polynomials, `;`-separated, e.g. `x*y`
        #[arg(long)]
        relators: String,
        #[arg(long, default_value_t = 2)]
        steps: u32,
        #[arg(long, default_value_t = 2)]
        m: i64,
        #[arg(long, default_value_t = 6)]
        start_weight: u64,
        #[arg(long, default_value_t = 4)]
        slack: i64,
        #[arg(long)]
        dmax: Option<i64>,
    },
    /// Cube syzygy stability K(u,p+1) = C[0,p+1].K(u,p)
    SyzygyCheck {
        /// `,`-separated cube elements
        #[arg(long)]
        u: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        dmax: Option<i64>,
    },
    /// Witness-certified double annihilators for Rado monomial ideals
    RadoWitness {
        /// `;`-separated monomials x{i,j,...}
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 40)]
        window: i64,
    },
    /// Witness-certified double annihilators for epsilon monomial ideals
    EpsilonWitness {
        /// `;`-separated monomials x[ordinal]^e*...
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 9)]
        window: i64,
    },
    /// Ordinal calculator
    Ordinal {
        #[command(subcommand)]
        op: OrdinalOp,
    },
    /// Root algebra calculator
    Root {
        #[command(subcommand)]
        op: RootOp,
    },
    /// Truncated p-adic ring calculator
    Jring {
        #[command(subcommand)]
        op: JringOp,
    },
}

#[derive(Subcommand)]
enum OrdinalOp {
    /// delta of an ordinal
    Delta { expr: String },
    /// the reverse polish word over {0, p, +} and its decode check
    Phi { expr: String },
    /// mu(a, b)
    Mu { a: String, b: String },
    /// a fresh ordinal with prescribed mu values, `ord=value;ord=value`
    Extend { targets: String },
    /// all ordinals with delta <= d
    Enumerate { d: u64 },
}

#[derive(Subcommand)]
enum RootOp {
    Mul {
        a: String,
        b: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    Delta {
        a: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    Lambda {
        t: String,
        a: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    Invert {
        a: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    /// nilpotency index of a series with delta > 0
    Nilpotency {
        a: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    /// symbolic form of the ideal generated by `;`-separated series
    Classify {
        gens: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    /// symbolic annihilator of Jbar[t] (or J[t] with --open)
    Ann {
        t: String,
        #[arg(long)]
        open: bool,
    },
    /// Baer witness for a module map on (x^t) sending x^t to a
    Witness {
        t: String,
        a: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
}

#[derive(Subcommand)]
enum JringOp {
    /// the graded piece at one degree
    Group {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// product of two elements, `eta:c` | `zeta:n` | `alpha:k:c`
    Mul {
        a: String,
        b: String,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// duality sweep over all degrees realized by |k| <= range
    Duality {
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        trunc: Option<u32>,
        #[arg(long, default_value_t = 30)]
        range: i64,
    },
}

#[derive(Debug, Default, serde::Deserialize)]
struct ConfigFile {
    #[serde(default)]
    defaults: ConfigDefaults,
}

#[derive(Debug, Default, serde::Deserialize)]
struct ConfigDefaults {
    dmax: Option<i64>,
    prime: Option<u64>,
    trunc: Option<u32>,
}

struct Defaults {
    dmax: i64,
    prime: u64,
    trunc: u32,
}

fn load_defaults(path: &Option<std::path::PathBuf>) -> Result<Defaults, String> {
    let mut dmax = None;
    let mut prime = None;
    let mut trunc = None;
    if let Some(p) = path {
        let text = std::fs::read_to_string(p)
            .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
        let cfg: ConfigFile =
            toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", p.display()))?;
        dmax = cfg.defaults.dmax;
        prime = cfg.defaults.prime;
        trunc = cfg.defaults.trunc;
    }
    if dmax.is_none() {
        if let Ok(v) = std::env::var("RINGLAB_DMAX") {
            dmax = Some(v.parse().map_err(|e| format!("bad RINGLAB_DMAX: {e}"))?);
        }
    }
    Ok(Defaults {
        dmax: dmax.unwrap_or(16),
        prime: prime.unwrap_or(3),
        trunc: trunc.unwrap_or(6),
    })
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ringlab: {e}");
            exit_code_for(&e)
        }
    });
}

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

fn exit_code_for(e: &CliError) -> i32 {
    match e {
        CliError::Core(CoreError::BoundExceeded { .. }) => 3,
        CliError::Core(CoreError::WeightCap { .. }) => 3,
        CliError::Core(CoreError::Truncation { .. }) => 3,
        _ => 2,
    }
}

fn emit<T: serde::Serialize>(record: &T) {
    println!("{}", serde_json::to_string(record).expect("serializable record"));
}

fn parse_elements(engine: &dyn RingEngine, list: &str) -> Result<Vec<Element>, CliError> {
    split_top_level(list, ',')
        .iter()
        .map(|s| parse_element(engine, s).map_err(CliError::Core))
        .collect()
}

fn parse_gens(engine: &dyn RingEngine, list: &str) -> Result<Vec<Element>, CliError> {
    list.split(';')
        .map(|s| parse_element(engine, s).map_err(CliError::Core))
        .collect()
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let defaults = load_defaults(&cli.config).map_err(CliError::Usage)?;
    let resolve = |args: &RingArgs| -> Result<(Arc<dyn RingEngine>, i64), CliError> {
        let dmax = args.dmax.unwrap_or(defaults.dmax);
        let engine = ringlab::zoo::resolve(&args.ring, dmax)?;
        Ok((engine, dmax))
    };

    match cli.command {
        Command::Hilbert(args) => {
            let (engine, dmax) = resolve(&args)?;
            let dims = hilbert(engine.as_ref(), dmax)?;
            emit(&records::Hilbert {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                dims,
            });
            Ok(0)
        }
        Command::Basis { ring, degree } => {
            let (engine, dmax) = resolve(&ring)?;
            if degree > dmax {
                return Err(CoreError::BoundExceeded { degree, dmax }.into());
            }
            emit(&records::Basis {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                degree,
                labels: engine.basis_labels(degree),
            });
            Ok(0)
        }
        Command::Mul { ring, a, b } => {
            let (engine, dmax) = resolve(&ring)?;
            let ea = parse_element(engine.as_ref(), &a)?;
            let eb = parse_element(engine.as_ref(), &b)?;
            let prod = mul(engine.as_ref(), &ea, &eb)?;
            emit(&records::Mul {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                a: format_element(engine.as_ref(), &ea),
                b: format_element(engine.as_ref(), &eb),
                product: format_element(engine.as_ref(), &prod),
                degree: prod.degree,
            });
            Ok(0)
        }
        Command::Ann { ring, gens, bound } => {
            let (engine, dmax) = resolve(&ring)?;
            let gens = parse_gens(engine.as_ref(), &gens)?;
            let gmax = gens.iter().map(|g| g.degree).max().unwrap_or(0);
            let bound = bound.unwrap_or(dmax - gmax);
            let slices = ann(engine.as_ref(), &gens, bound)?;
            emit(&records::Slices {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                kind: "ann",
                bound,
                dims: (0..=bound).map(|d| slices.dim(d)).collect(),
            });
            Ok(0)
        }
        Command::Dann { ring, gens, compare } => {
            let (engine, dmax) = resolve(&ring)?;
            let gens = parse_gens(engine.as_ref(), &gens)?;
            let gmax = gens.iter().map(|g| g.degree).max().unwrap_or(0);
            let compare = compare.unwrap_or((dmax - 2 * gmax).max(0));
            let report = dann_check(engine.as_ref(), &gens, compare)?;
            let record = records::Dann {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                compare_up_to: report.compare_up_to,
                equal: report.equal,
                discrepancy: report.first_discrepancy.as_ref().map(|d| {
                    records::Discrepancy {
                        degree: d.degree,
                        witness: format_element(engine.as_ref(), &d.witness),
                        ideal_dim: d.ideal_dim,
                        dann_dim: d.dann_dim,
                    }
                }),
            };
            emit(&record);
            Ok(if report.equal { 0 } else { 1 })
        }
        Command::Conductor { ring, gens, a } => {
            let (engine, dmax) = resolve(&ring)?;
            let gens = parse_gens(engine.as_ref(), &gens)?;
            let a = parse_element(engine.as_ref(), &a)?;
            let j = ideal_span(engine.as_ref(), &gens, dmax)?;
            let c = conductor(engine.as_ref(), &j, &a, dmax)?;
            emit(&records::Slices {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                kind: "conductor",
                bound: c.bound,
                dims: (0..=c.bound).map(|d| c.dim(d)).collect(),
            });
            Ok(0)
        }
        Command::Socle(args) => {
            let (engine, dmax) = resolve(&args)?;
            let s = socle(engine.as_ref(), dmax)?;
            emit(&records::Slices {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                kind: "socle",
                bound: s.bound,
                dims: (0..=s.bound).map(|d| s.dim(d)).collect(),
            });
            Ok(0)
        }
        Command::Poincare(args) => {
            let (engine, dmax) = resolve(&args)?;
            let (pass, top, detail) = match poincare_check(engine.as_ref()) {
                PoincareReport::Pass { top } => (true, Some(top), String::new()),
                PoincareReport::Fail { top, reason, .. } => (false, top, reason),
            };
            emit(&records::Poincare {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                pass,
                top,
                detail,
            });
            Ok(if pass { 0 } else { 1 })
        }
        Command::Probe { ring, u } => {
            let (engine, dmax) = resolve(&ring)?;
            let u = parse_element(engine.as_ref(), &u)?;
            let probe = incoherence_probe(engine.as_ref(), &u, dmax)?;
            emit(&records::Probe {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                bound: probe.bound,
                zero_input: probe.zero_input,
                rows: probe.rows,
                limitation: probe.limitation,
            });
            Ok(0)
        }
        Command::ClassifyPair { ring, u, v, d } => {
            let (engine, dmax) = resolve(&ring)?;
            let us = parse_elements(engine.as_ref(), &u)?;
            let vs = parse_elements(engine.as_ref(), &v)?;
            let pair = TestPair::new(us, vs, d)?;
            let sweep = dmax - d.max(0);
            let (verdict, witness) = match classify(engine.as_ref(), &pair, sweep)? {
                Classification::GoodTransporter(t) => (
                    "transporter".to_string(),
                    format_element(engine.as_ref(), &t),
                ),
                Classification::GoodBlock { degree, block } => (
                    format!("block@{degree}"),
                    block
                        .iter()
                        .map(|b| format_element(engine.as_ref(), b))
                        .collect::<Vec<_>>()
                        .join(","),
                ),
                Classification::BadUpTo(b) => (format!("bad-up-to-{b}"), String::new()),
            };
            emit(&records::Classify {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                degree: d,
                weight: pair.weight(),
                verdict: verdict.clone(),
                witness,
            });
            Ok(if verdict.starts_with("bad") { 1 } else { 0 })
        }
        Command::BadPairs { ring, weight } => {
            let (engine, dmax) = resolve(&ring)?;
            let bad = enumerate_bad_pairs(engine.as_ref(), weight, dmax)?;
            let pairs: Vec<records::BadPair> = bad
                .iter()
                .map(|p| records::BadPair {
                    degree: p.degree,
                    weight: p.weight(),
                    u: p.us
                        .iter()
                        .map(|e| format_element(engine.as_ref(), e))
                        .collect(),
                    v: p.vs
                        .iter()
                        .map(|e| format_element(engine.as_ref(), e))
                        .collect(),
                })
                .collect();
            emit(&records::BadPairs {
                tool: TOOL,
                version: VERSION,
                ring: engine.name(),
                dmax,
                weight_cap: weight,
                count: pairs.len(),
                pairs,
            });
            Ok(0)
        }
        Command::Adjust {
            gens,
            relators,
            steps,
            m,
            start_weight,
            slack,
            dmax,
        } => {
            let dmax = dmax.unwrap_or(defaults.dmax);
            let gens = parse_gen_list(&gens)?;
            let relator_exprs: Vec<String> =
                relators.split(';').map(|s| s.trim().to_string()).collect();
            let ring = PresentedRing::from_presentation(gens, &relator_exprs, dmax)?;
            let tower = adjust_tower(&ring, steps, m, start_weight, slack)?;
            for (j, stage) in tower.stages.iter().enumerate() {
                emit(&records::Stage {
                    tool: TOOL,
                    version: VERSION,
                    stage: j + 1,
                    weight_handled: stage.weight_handled,
                    sweep_bound: stage.sweep_bound,
                    pairs_adjoined: stage.pairs_adjoined,
                    agreement_below: stage.agreement_below,
                    hilbert: stage.hilbert.clone(),
                });
            }
            Ok(0)
        }
        Command::SyzygyCheck { u, p, dmax } => {
            let dmax = dmax.unwrap_or(defaults.dmax);
            let cube = CubeEngine::full(0, dmax)?;
            let us = parse_elements(cube.as_ref(), &u)?;
            let report = step_check(&cube, &us, p, dmax)?;
            emit(&records::Syzygy {
                tool: TOOL,
                version: VERSION,
                ring: format!("cube[0,{p}] -> cube[0,{}]", p + 1),
                dmax,
                ok: report.ok,
                per_degree: report.per_degree,
            });
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::RadoWitness { gens, window } => {
            let engine = rado::RadoEngine::new(window);
            let parsed: Vec<std::collections::BTreeSet<u64>> = gens
                .split(';')
                .map(|s| {
                    let e = parse_element(engine.as_ref(), s.trim())?;
                    engine
                        .vertex_set(&e)
                        .ok_or_else(|| CoreError::pre("zero generator"))
                })
                .collect::<Result<_, _>>()?;
            let report = rado::monomial_dac_check(&parsed, window)?;
            let mut excluded = 0usize;
            let mut in_ideal = 0usize;
            for (_, status) in &report {
                match status {
                    rado::MonomialStatus::InIdeal => in_ideal += 1,
                    rado::MonomialStatus::Excluded { .. } => excluded += 1,
                }
            }
            emit(&records::Witness {
                tool: TOOL,
                version: VERSION,
                ring: "rado".to_string(),
                window,
                monomials: report.len(),
                in_ideal,
                excluded_with_witness: excluded,
                dac_certified: true,
            });
            Ok(0)
        }
        Command::EpsilonWitness { gens, window } => {
            let engine = EpsilonEngine::new(window);
            let parsed: Vec<epsilon::OrdMono> = gens
                .split(';')
                .map(|s| {
                    let e = parse_element(engine.as_ref(), s.trim())?;
                    if e.is_zero() || e.support.len() != 1 {
                        return Err(CoreError::pre("generators must be nonzero monomials"));
                    }
                    Ok(engine.mono_to_ordinals(engine.mono_at(e.degree, e.support[0])))
                })
                .collect::<Result<_, _>>()?;
            let report = epsilon::monomial_dac_check(&engine, &parsed, window)?;
            let mut excluded = 0usize;
            let mut in_ideal = 0usize;
            for (_, _, status) in &report {
                match status {
                    epsilon::EpsMonomialStatus::InIdeal => in_ideal += 1,
                    epsilon::EpsMonomialStatus::Excluded { .. } => excluded += 1,
                }
            }
            emit(&records::Witness {
                tool: TOOL,
                version: VERSION,
                ring: "epsilon".to_string(),
                window,
                monomials: report.len(),
                in_ideal,
                excluded_with_witness: excluded,
                dac_certified: true,
            });
            Ok(0)
        }
        Command::Ordinal { op } => run_ordinal(op),
        Command::Root { op } => run_root(op),
        Command::Jring { op } => run_jring(op, &defaults),
    }
}

fn parse_gen_list(s: &str) -> Result<Vec<(String, i64)>, CliError> {
    s.split(',')
        .map(|part| {
            let (name, deg) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("expected name:degree, got `{part}`")))?;
            let deg: i64 = deg
                .trim()
                .parse()
                .map_err(|e| CliError::Usage(format!("bad degree in `{part}`: {e}")))?;
            Ok((name.trim().to_string(), deg))
        })
        .collect()
}

fn run_ordinal(op: OrdinalOp) -> Result<i32, CliError> {
    match op {
        OrdinalOp::Delta { expr } => {
            let o = parse_ordinal(&expr)?;
            emit(&records::OrdinalValue {
                tool: TOOL,
                version: VERSION,
                op: "delta",
                input: o.to_string(),
                value: o.delta().to_string(),
            });
        }
        OrdinalOp::Phi { expr } => {
            let o = parse_ordinal(&expr)?;
            let word = o.phi_word();
            assert_eq!(phi_decode(&word).as_ref(), Some(&o), "phi decode mismatch");
            emit(&records::OrdinalValue {
                tool: TOOL,
                version: VERSION,
                op: "phi",
                input: o.to_string(),
                value: word,
            });
        }
        OrdinalOp::Mu { a, b } => {
            let (a, b) = (parse_ordinal(&a)?, parse_ordinal(&b)?);
            let value = a.mu(&b)?;
            emit(&records::OrdinalValue {
                tool: TOOL,
                version: VERSION,
                op: "mu",
                input: format!("{a}, {b}"),
                value: value.to_string(),
            });
        }
        OrdinalOp::Extend { targets } => {
            let mut parsed: Vec<(Ordinal, u64)> = Vec::new();
            for part in targets.split(';') {
                let (o, v) = part
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("expected ord=value, got `{part}`")))?;
                parsed.push((
                    parse_ordinal(o)?,
                    v.trim()
                        .parse()
                        .map_err(|e| CliError::Usage(format!("bad value: {e}")))?,
                ));
            }
            let witness = extension_witness(&parsed)?;
            for (b, nu) in &parsed {
                assert_eq!(witness.mu(b).ok(), Some(*nu), "extension verification");
            }
            emit(&records::OrdinalValue {
                tool: TOOL,
                version: VERSION,
                op: "extend",
                input: targets,
                value: witness.to_string(),
            });
        }
        OrdinalOp::Enumerate { d } => {
            if d > 14 {
                return Err(CliError::Usage("enumeration cap is delta <= 14".into()));
            }
            let all = ringlab::ordinal::enumerate_delta_le(d);
            emit(&records::OrdinalList {
                tool: TOOL,
                version: VERSION,
                op: "enumerate",
                delta_cap: d,
                count: all.len(),
                ordinals: all.iter().map(|o| o.to_string()).collect(),
            });
        }
    }
    Ok(0)
}

fn run_root(op: RootOp) -> Result<i32, CliError> {
    match op {
        RootOp::Mul { a, b, prime } => {
            let (a, b) = (parse_series(prime, &a)?, parse_series(prime, &b)?);
            let prod = a.mul(&b)?;
            emit(&records::RootValue {
                tool: TOOL,
                version: VERSION,
                op: "mul",
                prime,
                input: format!("({a}) * ({b})"),
                value: prod.to_string(),
            });
        }
        RootOp::Delta { a, prime } => {
            let a = parse_series(prime, &a)?;
            let value = a
                .delta()
                .map_or("infinity".to_string(), |d| d.to_string());
            emit(&records::RootValue {
                tool: TOOL,
                version: VERSION,
                op: "delta",
                prime,
                input: a.to_string(),
                value,
            });
        }
        RootOp::Lambda { t, a, prime } => {
            let t = parse_rational(&t)?;
            let a = parse_series(prime, &a)?;
            let l = lambda_t(&a, &t)?;
            emit(&records::RootValue {
                tool: TOOL,
                version: VERSION,
                op: "lambda",
                prime,
                input: format!("t={t}, a={a}"),
                value: l.to_string(),
            });
        }
        RootOp::Invert { a, prime } => {
            let a = parse_series(prime, &a)?;
            let inv = root_inverse(&a)?;
            emit(&records::RootValue {
                tool: TOOL,
                version: VERSION,
                op: "invert",
                prime,
                input: a.to_string(),
                value: inv.to_string(),
            });
        }
        RootOp::Nilpotency { a, prime } => {
            let a = parse_series(prime, &a)?;
            let n = nilpotency_index(&a)?;
            emit(&records::RootValue {
                tool: TOOL,
                version: VERSION,
                op: "nilpotency",
                prime,
                input: a.to_string(),
                value: n.to_string(),
            });
        }
        RootOp::Classify { gens, prime } => {
            let series: Vec<_> = gens
                .split(';')
                .map(|s| parse_series(prime, s.trim()))
                .collect::<Result<_, _>>()?;
            let ideal = classify_ideal(&series);
            emit(&records::RootValue {
                tool: TOOL,
                version: VERSION,
                op: "classify",
                prime,
                input: gens,
                value: ideal.to_string(),
            });
        }
        RootOp::Ann { t, open } => {
            let ideal = SymbolicIdeal {
                t: parse_rational(&t)?,
                closed: !open,
            };
            let a = symbolic_ann(&ideal);
            emit(&records::RootValue {
                tool: TOOL,
                version: VERSION,
                op: "ann",
                prime: 0,
                input: ideal.to_string(),
                value: a.to_string(),
            });
        }
        RootOp::Witness { t, a, prime } => {
            let t = parse_rational(&t)?;
            let a = parse_series(prime, &a)?;
            let w = baer_witness(&t, &a)?;
            emit(&records::RootValue {
                tool: TOOL,
                version: VERSION,
                op: "witness",
                prime,
                input: format!("t={t}, a={a}"),
                value: w.to_string(),
            });
        }
    }
    Ok(0)
}

fn parse_jelem(ring: &JRing, s: &str) -> Result<ringlab::jring::JElem, CliError> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    match parts.as_slice() {
        ["eta", c] => Ok(ring.eta(
            c.parse()
                .map_err(|e| CliError::Usage(format!("bad eta value: {e}")))?,
        )),
        ["zeta", n] => Ok(ring.zeta_inv(
            n.parse()
                .map_err(|e| CliError::Usage(format!("bad zeta numerator: {e}")))?,
        )),
        ["alpha", k, c] => Ok(ring.alpha(
            k.parse()
                .map_err(|e| CliError::Usage(format!("bad alpha index: {e}")))?,
            c.parse()
                .map_err(|e| CliError::Usage(format!("bad alpha multiple: {e}")))?,
        )?),
        _ => Err(CliError::Usage(format!(
            "expected eta:c, zeta:n or alpha:k:c, got `{s}`"
        ))),
    }
}

fn format_jvalue(v: &JValue, ring: &JRing) -> String {
    match v {
        JValue::Zero => "0".to_string(),
        JValue::Unit(c) => format!("eta({c})"),
        JValue::Fraction(n) => {
            let (mut num, mut level) = (*n, ring.m);
            while level > 0 && num % ring.p == 0 {
                num /= ring.p;
                level -= 1;
            }
            format!("zeta^-1({num}/{}^{level})", ring.p)
        }
        JValue::Gen { k, c: 1 } => format!("alpha_{k}"),
        JValue::Gen { k, c } => format!("{c}*alpha_{k}"),
    }
}

fn run_jring(op: JringOp, defaults: &Defaults) -> Result<i32, CliError> {
    match op {
        JringOp::Group { degree, prime, trunc } => {
            let ring = JRing::new(prime.unwrap_or(defaults.prime), trunc.unwrap_or(defaults.trunc))?;
            emit(&records::JGroup {
                tool: TOOL,
                version: VERSION,
                prime: ring.p,
                trunc: ring.m,
                degree,
                group: format!("{:?}", ring.degree_group(degree)),
            });
            Ok(0)
        }
        JringOp::Mul { a, b, prime, trunc } => {
            let ring = JRing::new(prime.unwrap_or(defaults.prime), trunc.unwrap_or(defaults.trunc))?;
            let (ea, eb) = (parse_jelem(&ring, &a)?, parse_jelem(&ring, &b)?);
            let prod = ring.mul(&ea, &eb)?;
            emit(&records::JMul {
                tool: TOOL,
                version: VERSION,
                prime: ring.p,
                trunc: ring.m,
                a: format_jvalue(&ea.value, &ring),
                b: format_jvalue(&eb.value, &ring),
                product: format_jvalue(&prod.value, &ring),
                degree: prod.degree,
            });
            Ok(0)
        }
        JringOp::Duality { prime, trunc, range } => {
            let ring = JRing::new(prime.unwrap_or(defaults.prime), trunc.unwrap_or(defaults.trunc))?;
            let mut degrees = vec![0i64, -2];
            for k in -range..=range {
                if k != 0 {
                    degrees.push(ring.gen_degree(k));
                }
            }
            degrees.sort_unstable();
            degrees.dedup();
            let mut all_pass = true;
            let mut rows = Vec::new();
            for d in degrees {
                let r = pontrjagin_check(&ring, d)?;
                all_pass &= r.pass;
                rows.push(records::DualityRow {
                    degree: d,
                    pass: r.pass,
                    detail: r.detail,
                });
            }
            emit(&records::Duality {
                tool: TOOL,
                version: VERSION,
                prime: ring.p,
                trunc: ring.m,
                range,
                pass: all_pass,
                rows,
            });
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}
