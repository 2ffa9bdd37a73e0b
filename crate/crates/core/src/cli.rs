//! The `dirclust` command-line tool.
//!
//! Exit codes: 0 success, 2 invalid input or arguments, 3 complexity guard
//! exceeded, 4 I/O failure, 5 a property check failed. Data goes to standard
//! output (or `--output`), diagnostics to standard error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;

use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};
use crate::io::{self, NetworkFormat};
use crate::methods::{ClusteringMethod, MethodSpec};
use crate::metric::network_distance_exact;
use crate::network::Network;
use crate::properties::{self as props, CheckReport};
use crate::representable::{
    nonreciprocal_family, representable_cluster, stability_constant, symmetrize, Budget, Representer,
    RepresenterFamily,
};
use crate::ultrametric::Ultrametric;
use crate::uses::{normalize_uses_table, ZeroUse};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_COMPLEXITY: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_PROPERTY_FAILED: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "dirclust", version, about = "Hierarchical clustering of directed networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a network and print its dendrogram.
    Cluster {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        method: MethodArgs,
        /// Output layout of the dendrogram.
        #[arg(long, value_enum, default_value_t = OutputFormat::Newick)]
        format: OutputFormat,
        /// Also write the ultrametric as a dense CSV matrix.
        #[arg(long)]
        ultrametric_out: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Partition at a resolution: cluster a network, or cut a given ultrametric.
    Cut {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        method: MethodArgs,
        /// Treat the input CSV as an ultrametric instead of a network.
        #[arg(long)]
        ultrametric: bool,
        #[arg(long)]
        delta: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Exact network distance between two small networks.
    Distance {
        left: PathBuf,
        right: PathBuf,
        /// Compare the clustering outputs instead of the networks.
        #[arg(long)]
        compare_outputs: bool,
        #[command(flatten)]
        method: MethodArgs,
    },
    /// Print the symmetric matrix of optimal multiples of a representer family.
    Symmetrize {
        #[command(flatten)]
        input: InputArgs,
        /// Representer file or built-in family (omega-r, omega3[:R], cycles[:K]).
        #[arg(long)]
        representers: String,
        #[arg(long, env = "DIRCLUST_BUDGET", default_value_t = Budget::DEFAULT.0)]
        budget: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Turn an input-output uses table (dense CSV) into a network CSV.
    NormalizeUses {
        #[arg(long)]
        input: PathBuf,
        /// `error` or `cap=VALUE` for zero off-diagonal uses.
        #[arg(long, default_value = "error")]
        zero_use: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a property check and print a JSON report.
    Check(CheckArgs),
    /// Validate a file.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FileKind::Network)]
        kind: FileKind,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to the file extension (`.json` for edge lists, CSV otherwise).
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormat>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Newick,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FileKind {
    Network,
    Ultrametric,
    Representers,
    Dendrogram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodKind {
    Reciprocal,
    Nonreciprocal,
    Semireciprocal,
    Grafting,
    SingleLinkage,
    Representable,
}

#[derive(Debug, Args)]
pub struct MethodArgs {
    #[arg(long, value_enum, default_value_t = MethodKind::Reciprocal)]
    pub method: MethodKind,
    /// Chain length bound for semi-reciprocal clustering.
    #[arg(long)]
    pub t: Option<usize>,
    /// Threshold for grafting.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Representer file or built-in family (omega-r, omega3[:R], cycles[:K]).
    #[arg(long)]
    pub representers: Option<String>,
    /// Maximum number of node maps per enumeration.
    #[arg(long, env = "DIRCLUST_BUDGET", default_value_t = Budget::DEFAULT.0)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyKind {
    Value,
    Transformation,
    Excisive,
    Scale,
    Stability,
    Sandwich,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub property: PropertyKind,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Network to check; random networks are generated when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Second network, for stability.
    #[arg(long)]
    pub input2: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Largest random network size.
    #[arg(long, default_value_t = 6)]
    pub nodes: usize,
    /// Scale factor for the scale check.
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    /// Single resolution for the excisiveness check (default: full sweep).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Lipschitz constant for stability (default: 1 / sep for representable
    /// methods, 1 otherwise).
    #[arg(long)]
    pub lipschitz: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::ComplexityGuard { .. } | Error::TooLargeForExact { .. } => EXIT_COMPLEXITY,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn load_input(input: &InputArgs) -> Result<Network> {
    let format = match input.input_format {
        Some(InputFormat::Csv) => NetworkFormat::Csv,
        Some(InputFormat::Json) => NetworkFormat::Json,
        None => NetworkFormat::from_path(&input.input),
    };
    io::load_network(&input.input, format)
}

/// Representable clustering with the cycle family sized to each network.
#[derive(Debug, Clone, Copy)]
pub struct AutoCycles {
    pub budget: Budget,
}

impl ClusteringMethod for AutoCycles {
    fn cluster(&self, network: &Network) -> Result<Ultrametric> {
        representable_cluster(&nonreciprocal_family(network.len()), network, self.budget)
    }

    fn name(&self) -> String {
        "representable(cycles up to 2n-2)".into()
    }
}

enum Resolved {
    Spec(MethodSpec),
    Cycles(AutoCycles),
}

impl Resolved {
    fn method(&self) -> &dyn ClusteringMethod {
        match self {
            Resolved::Spec(s) => s,
            Resolved::Cycles(c) => c,
        }
    }

    fn default_lipschitz(&self) -> f64 {
        match self {
            Resolved::Spec(MethodSpec::Representable { family, .. }) => stability_constant(family),
            _ => 1.0,
        }
    }
}

enum FamilyChoice {
    Fixed(RepresenterFamily),
    AutoCycles,
}

fn parse_family(spec: &str) -> Result<FamilyChoice> {
    let builtin = |name: &str| -> Option<Result<FamilyChoice>> {
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let bad = |a: &str| Error::InvalidArgument(format!("bad parameter `{a}` in `{name}`"));
        Some(match (head, arg) {
            ("omega-r", None) => Ok(FamilyChoice::Fixed(RepresenterFamily::single(Representer::reciprocal()))),
            ("omega3", a) => a
                .map_or(Ok(3.0), |a| a.parse::<f64>().map_err(|_| bad(a)))
                .and_then(Representer::three_cycle)
                .map(|r| FamilyChoice::Fixed(RepresenterFamily::single(r))),
            ("cycles", None) => Ok(FamilyChoice::AutoCycles),
            ("cycles", Some(a)) => a
                .parse::<usize>()
                .map_err(|_| bad(a))
                .and_then(crate::representable::cycle_family)
                .map(FamilyChoice::Fixed),
            _ => return None,
        })
    };
    match builtin(spec) {
        Some(r) => r,
        None => io::load_family(Path::new(spec)).map(FamilyChoice::Fixed),
    }
}

fn resolve_method(args: &MethodArgs) -> Result<Resolved> {
    let budget = Budget(args.budget);
    let spec = match args.method {
        MethodKind::Reciprocal => MethodSpec::Reciprocal,
        MethodKind::Nonreciprocal => MethodSpec::Nonreciprocal,
        MethodKind::SingleLinkage => MethodSpec::SingleLinkage,
        MethodKind::Semireciprocal => {
            let t = args
                .t
                .ok_or_else(|| Error::InvalidArgument("--t is required for semireciprocal".into()))?;
            MethodSpec::semi_reciprocal(t)?
        }
        MethodKind::Grafting => {
            let beta = args
                .beta
                .ok_or_else(|| Error::InvalidArgument("--beta is required for grafting".into()))?;
            MethodSpec::grafting(beta)?
        }
        MethodKind::Representable => {
            let name = args.representers.as_deref().ok_or_else(|| {
                Error::InvalidArgument("--representers is required for representable".into())
            })?;
            match parse_family(name)? {
                FamilyChoice::Fixed(family) => MethodSpec::Representable {
                    family: family.into(),
                    budget,
                },
                FamilyChoice::AutoCycles => return Ok(Resolved::Cycles(AutoCycles { budget })),
            }
        }
    };
    Ok(Resolved::Spec(spec))
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Cluster {
            input,
            method,
            format,
            ultrametric_out,
            output,
        } => {
            let network = load_input(&input)?;
            let method = resolve_method(&method)?;
            let text = cluster_command(&network, method.method(), format)?;
            if let Some(path) = ultrametric_out {
                let u = method.method().cluster(&network)?;
                emit(Some(&path), &io::write_matrix_csv(u.labels(), u.matrix()), stdout)?;
            }
            emit(output.as_deref(), &text, stdout)?;
        }
        Command::Cut {
            input,
            method,
            ultrametric,
            delta,
            output,
        } => {
            let u = if ultrametric {
                let text = io::read_file(&input.input)?;
                let name = input.input.display().to_string();
                let (labels, rows) = io::read_matrix_csv(&text, &name)?;
                Ultrametric::new(labels, &rows).map_err(|e| e.located(name))?
            } else {
                let network = load_input(&input)?;
                resolve_method(&method)?.method().cluster(&network)?
            };
            emit(output.as_deref(), &io::partition_to_json(&u.cut(delta)?), stdout)?;
        }
        Command::Distance {
            left,
            right,
            compare_outputs,
            method,
        } => {
            let mut a = io::load_network(&left, NetworkFormat::from_path(&left))?;
            let mut b = io::load_network(&right, NetworkFormat::from_path(&right))?;
            if compare_outputs {
                let m = resolve_method(&method)?;
                a = m.method().cluster(&a)?.to_network();
                b = m.method().cluster(&b)?.to_network();
            }
            let d = network_distance_exact(&a, &b)?;
            emit(None, &format!("{}\n", io::format_number(d)), stdout)?;
        }
        Command::Symmetrize {
            input,
            representers,
            budget,
            output,
        } => {
            let network = load_input(&input)?;
            let family = match parse_family(&representers)? {
                FamilyChoice::Fixed(f) => f,
                FamilyChoice::AutoCycles => nonreciprocal_family(network.len()),
            };
            let lambda = symmetrize(&family, &network, Budget(budget))?;
            emit(
                output.as_deref(),
                &io::write_matrix_csv(lambda.labels(), lambda.matrix()),
                stdout,
            )?;
        }
        Command::NormalizeUses {
            input,
            zero_use,
            output,
        } => {
            let policy: ZeroUse = zero_use.parse()?;
            let text = io::read_file(&input)?;
            let name = input.display().to_string();
            let (labels, rows) = io::read_matrix_csv(&text, &name)?;
            let table = crate::CostMatrix::from_rows(&rows)
                .ok_or_else(|| Error::parse(&name, "uses table is not square"))?;
            let network = normalize_uses_table(labels, &table, policy).map_err(|e| e.located(name))?;
            emit(
                output.as_deref(),
                &io::write_matrix_csv(network.labels(), network.matrix()),
                stdout,
            )?;
        }
        Command::Check(args) => {
            let report = check_command(&args)?;
            let mut text = serde_json::to_string_pretty(&report).expect("serializable report");
            text.push('\n');
            emit(args.output.as_deref(), &text, stdout)?;
            return Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_PROPERTY_FAILED
            });
        }
        Command::Validate { input, kind } => {
            let name = input.display().to_string();
            match kind {
                FileKind::Network => {
                    io::load_network(&input, NetworkFormat::from_path(&input))?;
                }
                FileKind::Ultrametric => {
                    let (labels, rows) = io::read_matrix_csv(&io::read_file(&input)?, &name)?;
                    Ultrametric::new(labels, &rows).map_err(|e| e.located(&name))?;
                }
                FileKind::Representers => {
                    io::load_family(&input)?;
                }
                FileKind::Dendrogram => {
                    let text = io::read_file(&input)?;
                    if text.trim_start().starts_with('{') {
                        io::dendrogram_from_json(&text, &name)?;
                    } else {
                        io::dendrogram_from_newick(text.trim(), None).map_err(|e| e.located(&name))?;
                    }
                }
            }
            emit(None, &format!("{name}: ok\n"), stdout)?;
        }
    }
    Ok(EXIT_OK)
}

/// Clusters `network` and renders the dendrogram (or, for
/// [`OutputFormat::Csv`], the ultrametric matrix).
pub fn cluster_command(network: &Network, method: &dyn ClusteringMethod, format: OutputFormat) -> Result<String> {
    let u = method.cluster(network)?;
    Ok(match format {
        OutputFormat::Newick => {
            let mut s = io::dendrogram_to_newick(&Dendrogram::from_ultrametric(&u));
            s.push('\n');
            s
        }
        OutputFormat::Json => io::dendrogram_to_json(&Dendrogram::from_ultrametric(&u)),
        OutputFormat::Csv => io::write_matrix_csv(u.labels(), u.matrix()),
    })
}

fn random_size(rng: &mut impl Rng, max_nodes: usize) -> usize {
    rng.gen_range(2..=max_nodes.max(2))
}

/// Runs the property check described by `args`.
pub fn check_command(args: &CheckArgs) -> Result<CheckReport> {
    let resolved = resolve_method(&args.method)?;
    let method = resolved.method();
    let given = args
        .input
        .as_ref()
        .map(|p| io::load_network(p, NetworkFormat::from_path(p)))
        .transpose()?;
    let trials = args.trials.max(1);
    let mut reports = Vec::new();

    // One seeded generator per trial so a failing trial replays on its own.
    let trial_seed = |i: usize| args.seed.wrapping_add(i as u64);
    let networks = |max_nodes: usize| -> Vec<(Option<u64>, Network)> {
        match &given {
            Some(n) => vec![(None, n.clone())],
            None => (0..trials)
                .map(|i| {
                    let mut rng = props::rng(trial_seed(i));
                    let n = random_size(&mut rng, max_nodes);
                    (Some(trial_seed(i)), props::random_network(&mut rng, n))
                })
                .collect(),
        }
    };
    let seeded = |r: CheckReport, seed: Option<u64>| match seed {
        Some(s) => r.with_seed(s),
        None => r,
    };

    match args.property {
        PropertyKind::Value => {
            for i in 0..trials {
                let mut rng = props::rng(trial_seed(i));
                let (a, b) = (rng.gen_range(0.1..=10.0), rng.gen_range(0.1..=10.0));
                reports.push(props::check_value_axiom(method, a, b)?.with_seed(trial_seed(i)));
            }
        }
        PropertyKind::Transformation => {
            for i in 0..trials {
                let mut rng = props::rng(trial_seed(i));
                let ny = rng.gen_range(1..=args.nodes.max(1));
                let nx = rng.gen_range(ny..=args.nodes.max(ny));
                let pair = props::generate_reducing_pair(trial_seed(i), ny, nx)?;
                reports.push(
                    props::check_transformation_axiom(method, &pair.nx, &pair.ny, &pair.phi)?
                        .with_seed(trial_seed(i)),
                );
            }
        }
        PropertyKind::Excisive => {
            for (seed, n) in networks(args.nodes) {
                let r = match args.delta {
                    Some(delta) => props::check_excisiveness(method, &n, delta)?,
                    None => props::check_excisiveness_all(method, &n)?,
                };
                reports.push(seeded(r, seed));
            }
        }
        PropertyKind::Scale => {
            for (seed, n) in networks(args.nodes) {
                reports.push(seeded(props::check_scale_preservation(method, &n, args.alpha)?, seed));
            }
        }
        PropertyKind::Sandwich => {
            for (seed, n) in networks(args.nodes) {
                reports.push(seeded(props::check_sandwich(method, &n)?, seed));
            }
        }
        PropertyKind::Stability => {
            let lipschitz = args.lipschitz.unwrap_or_else(|| resolved.default_lipschitz());
            match (&given, &args.input2) {
                (Some(nx), Some(p)) => {
                    let ny = io::load_network(p, NetworkFormat::from_path(p))?;
                    reports.push(props::check_stability(method, nx, &ny, lipschitz)?);
                }
                (None, None) => {
                    let max_nodes = args.nodes.min(5);
                    for i in 0..trials {
                        let mut rng = props::rng(trial_seed(i));
                        let n = random_size(&mut rng, max_nodes);
                        let nx = props::random_network(&mut rng, n);
                        let ny = props::random_network(&mut rng, n);
                        reports.push(
                            props::check_stability(method, &nx, &ny, lipschitz)?.with_seed(trial_seed(i)),
                        );
                    }
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "stability needs both --input and --input2, or neither".into(),
                    ))
                }
            }
        }
    }
    Ok(CheckReport::merge(reports).expect("at least one trial"))
}
