//! Command-line front end: game ingestion and generation, value computation,
//! core construction, projection, and verification-suite runs.
//!
//! Exit codes: 0 when everything holds, 1 when a verification produced a
//! witnessed failure, 2 on usage or parse errors, 3 when a resource budget
//! was exceeded.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use kcore::allocation::{
    marginal_value, parse_selector, parse_sharing, selector_value, shapley_value,
    sharing_value, Permutation, SharingFunction,
};
use kcore::cores::{build_core, project_core, CoreSpec, CoreVariant};
use kcore::games::{self, GameClass};
use kcore::polyhedra::{dd, fm, DdConfig, FmConfig, HPolyhedron, Relation, VPolyhedron};
use kcore::set_functions::{game_to_json, parse_game, PayoffVector, SetFunction};
use kcore::verify::{run_suite, Suite, SuiteOptions, VerifyConfig};
use kcore::Rat;
use num_traits::Zero;

#[derive(Parser)]
#[command(
    name = "kcore",
    about = "Exact-rational cooperative game toolkit: transforms, values, order-k cores, projections, and verification suites",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output rendering. Structured output is byte-reproducible.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Ceiling on intermediate constraint counts during elimination.
    #[arg(long = "budget-fm", global = true, default_value_t = 50_000)]
    budget_fm: usize,

    /// Ceiling on selector enumeration size.
    #[arg(long = "budget-selectors", global = true, default_value_t = 25_000)]
    budget_selectors: u128,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Möbius table of a game (or rebuild game values with --inverse).
    Transform {
        #[arg(long)]
        game: PathBuf,
        /// Treat the input as Möbius coefficients and print game values.
        #[arg(long)]
        inverse: bool,
    },
    /// Compute a payoff vector: shapley, marginal:<ranks>, selector:<file>, sharing:<file>.
    Value {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        value: String,
    },
    /// Build a core polyhedron and report feasibility.
    Core {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "plain")]
        variant: String,
        /// Also enumerate vertices and extreme rays.
        #[arg(long)]
        generators: bool,
    },
    /// Project a core into payoff space under a value map.
    Project {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "plain")]
        variant: String,
        #[arg(long, default_value = "shapley")]
        value: String,
    },
    /// Run a verification suite over the default corpus.
    Verify {
        /// th1 th2 th3 th4 th5 prop1 prop3 remark1 c2 all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Restrict to a single order k (default: every feasible k in 2..=3).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of seeded random games added to the named corpus.
        #[arg(long, default_value_t = 5)]
        games: usize,
    },
    /// Generate a reproducible random game file.
    RandomGame {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// general, monotone, or convex
        #[arg(long, default_value = "general")]
        class: String,
    },
}

enum CliError {
    Core(kcore::Error),
    Io(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(e) => write!(f, "{e}"),
        }
    }
}

impl From<kcore::Error> for CliError {
    fn from(e: kcore::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(kcore::Error::Resource(_)) => 3,
            _ => 2,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_game(path: &Path) -> Result<SetFunction<Rat>, CliError> {
    Ok(parse_game::<Rat>(&read_file(path)?)?)
}

enum ValueSpec {
    Shapley,
    Marginal(Permutation),
    Selector(PathBuf),
    Sharing(PathBuf),
}

fn parse_value_spec(text: &str) -> Result<ValueSpec, CliError> {
    if text == "shapley" {
        return Ok(ValueSpec::Shapley);
    }
    if let Some(ranks) = text.strip_prefix("marginal:") {
        return Ok(ValueSpec::Marginal(Permutation::parse_list(ranks)?));
    }
    if let Some(path) = text.strip_prefix("selector:") {
        return Ok(ValueSpec::Selector(PathBuf::from(path)));
    }
    if let Some(path) = text.strip_prefix("sharing:") {
        return Ok(ValueSpec::Sharing(PathBuf::from(path)));
    }
    Err(CliError::Usage(format!(
        "bad value specifier {text:?}: expected shapley, marginal:<ranks>, selector:<file>, or sharing:<file>"
    )))
}

/// The sharing rule a value specifier induces, used for projections.
fn sharing_of_spec(
    spec: &ValueSpec,
    n: usize,
) -> Result<SharingFunction<Rat>, CliError> {
    Ok(match spec {
        ValueSpec::Shapley => SharingFunction::uniform(n),
        ValueSpec::Marginal(sigma) => {
            if sigma.player_count() != n {
                return Err(CliError::Usage(format!(
                    "permutation covers {} players, game has {n}",
                    sigma.player_count()
                )));
            }
            sigma.last_member_selector().to_sharing()
        }
        ValueSpec::Selector(path) => parse_selector(&read_file(path)?, n)?.to_sharing(),
        ValueSpec::Sharing(path) => parse_sharing(&read_file(path)?, n)?,
    })
}

fn payoff_of_spec(
    spec: &ValueSpec,
    v: &SetFunction<Rat>,
) -> Result<PayoffVector<Rat>, CliError> {
    let n = v.player_count();
    Ok(match spec {
        ValueSpec::Shapley => shapley_value(v),
        ValueSpec::Marginal(sigma) => {
            if sigma.player_count() != n {
                return Err(CliError::Usage(format!(
                    "permutation covers {} players, game has {n}",
                    sigma.player_count()
                )));
            }
            marginal_value(sigma, v)
        }
        ValueSpec::Selector(path) => {
            selector_value(&parse_selector(&read_file(path)?, n)?, v)
        }
        ValueSpec::Sharing(path) => sharing_value(&parse_sharing(&read_file(path)?, n)?, v),
    })
}

fn variant_of(text: &str) -> Result<CoreVariant, CliError> {
    CoreVariant::parse(text)
        .ok_or_else(|| CliError::Usage(format!("unknown variant {text:?}")))
}

fn hpoly_json(p: &HPolyhedron<Rat>) -> serde_json::Value {
    let constraints: Vec<serde_json::Value> = p
        .constraints()
        .iter()
        .map(|c| {
            serde_json::json!({
                "coeffs": c.coeffs.iter().map(Rat::to_string).collect::<Vec<_>>(),
                "relation": match c.relation {
                    Relation::Ge => ">=",
                    Relation::Gt => ">",
                    Relation::Eq => "=",
                },
                "rhs": c.rhs.to_string(),
            })
        })
        .collect();
    serde_json::json!({ "vars": p.vars(), "constraints": constraints })
}

fn vpoly_json(v: &VPolyhedron<Rat>) -> serde_json::Value {
    let rows = |items: &Vec<Vec<Rat>>| -> Vec<Vec<String>> {
        items
            .iter()
            .map(|g| g.iter().map(Rat::to_string).collect())
            .collect()
    };
    serde_json::json!({ "vertices": rows(&v.vertices), "rays": rows(&v.rays) })
}

fn render_h(p: &HPolyhedron<Rat>) -> String {
    let mut out = String::new();
    for c in p.constraints() {
        out.push_str(&format!("  {}\n", c.render(p.vars())));
    }
    if p.constraints().is_empty() {
        out.push_str("  (no constraints: whole space)\n");
    }
    out
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    let fm_cfg = FmConfig {
        max_rows: cli.budget_fm,
        ..FmConfig::default()
    };
    match &cli.command {
        Command::Transform { game, inverse } => {
            let input = load_game(game)?;
            let output = if *inverse {
                input.zeta_transform()
            } else {
                input.mobius_transform()
            };
            let text = match cli.format {
                Format::Json => game_to_json(&output),
                Format::Human => {
                    let mut lines = String::new();
                    for (c, value) in output.iter() {
                        if !c.is_empty() && !value.is_zero() {
                            lines.push_str(&format!("{} -> {}\n", c.key(), value));
                        }
                    }
                    if lines.is_empty() {
                        lines.push_str("(zero on every coalition)\n");
                    }
                    lines.trim_end().to_string()
                }
            };
            emit(&text, &cli.out)?;
            Ok(0)
        }
        Command::Value { game, value } => {
            let v = load_game(game)?;
            let spec = parse_value_spec(value)?;
            let payoff = payoff_of_spec(&spec, &v)?;
            let grand = v.value(v.grand_coalition()).clone();
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "x": payoff.as_slice().iter().map(Rat::to_string).collect::<Vec<_>>(),
                    "total": payoff.total().to_string(),
                    "grand_worth": grand.to_string(),
                }))
                .expect("plain data"),
                Format::Human => {
                    let mut lines = String::new();
                    for (i, x) in payoff.as_slice().iter().enumerate() {
                        lines.push_str(&format!("x[{}] = {}\n", i + 1, x));
                    }
                    lines.push_str(&format!("sum = {} = v(N)", payoff.total()));
                    lines
                }
            };
            emit(&text, &cli.out)?;
            Ok(0)
        }
        Command::Core {
            game,
            k,
            variant,
            generators,
        } => {
            let v = load_game(game)?;
            let spec = CoreSpec::new(&v, *k, variant_of(variant)?)?;
            let core = build_core(&spec);
            let sample = fm::sample_point(&core, &fm_cfg)?;
            let gens = if *generators {
                Some(dd::enumerate_generators(&core, &DdConfig::default())?)
            } else {
                None
            };
            let text = match cli.format {
                Format::Json => {
                    let mut doc = hpoly_json(&core);
                    let obj = doc.as_object_mut().expect("object");
                    obj.insert("empty".into(), serde_json::json!(sample.is_none()));
                    obj.insert(
                        "sample".into(),
                        match &sample {
                            Some(p) => serde_json::json!(p
                                .iter()
                                .map(Rat::to_string)
                                .collect::<Vec<_>>()),
                            None => serde_json::Value::Null,
                        },
                    );
                    if let Some(g) = &gens {
                        obj.insert("generators".into(), vpoly_json(g));
                    }
                    serde_json::to_string_pretty(&doc).expect("plain data")
                }
                Format::Human => {
                    let mut out = format!(
                        "order-{k} {} core over {} variables:\n",
                        variant,
                        core.dimension()
                    );
                    out.push_str(&render_h(&core));
                    match &sample {
                        Some(p) => {
                            let coords: Vec<String> = core
                                .vars()
                                .iter()
                                .zip(p)
                                .map(|(name, val)| format!("{name} = {val}"))
                                .collect();
                            out.push_str(&format!("feasible, e.g. {}\n", coords.join(", ")));
                        }
                        None => out.push_str("EMPTY\n"),
                    }
                    if let Some(g) = &gens {
                        out.push_str("generators:\n");
                        out.push_str(&g.to_text());
                    }
                    out.trim_end().to_string()
                }
            };
            emit(&text, &cli.out)?;
            Ok(0)
        }
        Command::Project {
            game,
            k,
            variant,
            value,
        } => {
            let v = load_game(game)?;
            let spec = CoreSpec::new(&v, *k, variant_of(variant)?)?;
            let value_spec = parse_value_spec(value)?;
            let q = sharing_of_spec(&value_spec, v.player_count())?;
            let projected = project_core(&spec, &q, &fm_cfg)?;
            let sample = fm::sample_point(&projected, &fm_cfg)?;
            let text = match cli.format {
                Format::Json => {
                    let mut doc = hpoly_json(&projected);
                    let obj = doc.as_object_mut().expect("object");
                    obj.insert("empty".into(), serde_json::json!(sample.is_none()));
                    serde_json::to_string_pretty(&doc).expect("plain data")
                }
                Format::Human => {
                    let mut out = format!("image of the order-{k} {variant} core in payoff space:\n");
                    out.push_str(&render_h(&projected));
                    if sample.is_none() {
                        out.push_str("EMPTY\n");
                    }
                    out.trim_end().to_string()
                }
            };
            emit(&text, &cli.out)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            n,
            k,
            seed,
            games,
        } => {
            let suite = Suite::parse(suite)
                .ok_or_else(|| CliError::Usage(format!("unknown suite {suite:?}")))?;
            let mut opts = SuiteOptions::new(*n);
            opts.seed = *seed;
            opts.random_games = *games;
            opts.config = VerifyConfig {
                fm: fm_cfg,
                dd: DdConfig::default(),
                selector_budget: cli.budget_selectors,
            };
            if let Some(k) = k {
                opts.ks = vec![*k];
            }
            if opts.ks.is_empty() {
                return Err(CliError::Usage(format!(
                    "no feasible order k for n = {n}; the identities need k >= 2"
                )));
            }
            let result = run_suite::<Rat>(suite, &opts)?;
            let text = match cli.format {
                Format::Json => result.to_json(),
                Format::Human => {
                    let mut out = String::new();
                    for report in &result.reports {
                        out.push_str(&report.render_human());
                        out.push('\n');
                    }
                    out.push_str(&format!(
                        "suite {} on n={} seed={}: {} hold, {} fail, {} skipped",
                        result.suite,
                        result.n,
                        result.seed,
                        result.summary.holds,
                        result.summary.fails,
                        result.summary.skipped
                    ));
                    out
                }
            };
            emit(&text, &cli.out)?;
            Ok(if result.all_hold() { 0 } else { 1 })
        }
        Command::RandomGame { n, seed, class } => {
            let class = GameClass::parse(class)
                .ok_or_else(|| CliError::Usage(format!("unknown game class {class:?}")))?;
            if *n < 1 || *n > 6 {
                return Err(CliError::Usage("random games support 1..=6 players".into()));
            }
            let v: SetFunction<Rat> = games::random_game(*n, *seed, class);
            debug_assert!(match class {
                GameClass::Monotone => v.is_monotone(),
                GameClass::Convex => v.is_supermodular(),
                GameClass::General => true,
            });
            emit(&game_to_json(&v), &cli.out)?;
            Ok(0)
        }
    }
}
