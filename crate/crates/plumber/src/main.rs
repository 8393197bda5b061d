//! plumber: build, convert, check, enumerate, count, verify, and render
//! staircase polyomino pipe cities.
//!
//! Exit codes: 0 success, 1 failed check or count mismatch, 2 invalid
//! input, 3 target permutation not realizable on the city, 4 resource
//! guard exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use plumbing::{
    antigreedy_facet, enumerate_configs_with_guard, greedy_facet, mu_nu_box_report, render_city,
    render_config, verify_bijection, yoshi_count_threaded, BoxReport, CellId, City, ConfigFilter,
    Error as LibError, Family, Permutation, PipeConfig, RenderFormat, RenderOptions, VerifyReport,
};

#[derive(Parser)]
#[command(name = "plumber", version, about = "Staircase polyomino pipe cities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a city and print it with its derived data
    City(CitySpec),
    /// The crossings-first (greedy) configuration realizing a permutation
    Mario(FacetArgs),
    /// The crossings-last (antigreedy) configuration realizing a permutation
    Luigi(FacetArgs),
    /// Trace a configuration and print the realized permutation
    Trace(InputArg),
    /// Print the predicate checklist of a configuration
    Check(InputArg),
    /// Enumerate configurations of a city
    Enumerate(EnumerateArgs),
    /// Count one of the median Genocchi families
    Count(CountArgs),
    /// Run the full bijection and bounds verification on a city
    Verify(CitySpec),
    /// Compare two permutations in strong Bruhat order
    Bruhat(BruhatArgs),
    /// Print the reachability bounds of a city
    Munu(CitySpec),
    /// Render a city or a configuration
    Render(RenderArgs),
}

#[derive(Args)]
struct CitySpec {
    /// Triangular city on n floors (2n wires)
    #[arg(long, value_name = "N", conflicts_with_all = ["graph", "top", "random"])]
    yoshi: Option<usize>,
    /// Strip city for graphs on [n] (2n wires)
    #[arg(long, value_name = "N", conflicts_with_all = ["top", "random"])]
    graph: Option<usize>,
    /// Top step path over {U, D}
    #[arg(long, value_name = "STEPS", requires = "bottom")]
    top: Option<String>,
    /// Bottom step path over {U, D}
    #[arg(long, value_name = "STEPS", requires = "top")]
    bottom: Option<String>,
    /// Seeded random city; requires --m and --seed
    #[arg(long, requires = "m", requires = "seed")]
    random: bool,
    /// Wire count for --random
    #[arg(long, value_name = "M")]
    m: Option<usize>,
    /// Cell cap for --random
    #[arg(long, value_name = "CELLS", default_value_t = 14)]
    max_cells: usize,
    /// Seed for --random
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
}

impl CitySpec {
    fn build(&self) -> Result<City, CliFailure> {
        if let Some(n) = self.yoshi {
            return Ok(City::yoshi_hill(n)?);
        }
        if let Some(n) = self.graph {
            return Ok(City::yoshi_graph(n)?);
        }
        if let (Some(top), Some(bottom)) = (&self.top, &self.bottom) {
            return Ok(City::from_paths(top.parse()?, bottom.parse()?)?);
        }
        if self.random {
            let m = self.m.expect("clap enforces --m");
            let seed = self.seed.expect("clap enforces --seed");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            return Ok(City::random(&mut rng, m, self.max_cells)?);
        }
        Err(CliFailure::input(
            "no city given: use --yoshi, --graph, --top/--bottom, or --random",
        ))
    }
}

#[derive(Args)]
struct FacetArgs {
    #[command(flatten)]
    city: CitySpec,
    /// Target permutation (digit string or comma-separated)
    #[arg(long, value_name = "PERM")]
    sigma: String,
}

#[derive(Args)]
struct InputArg {
    /// Configuration JSON file; stdin when omitted or "-"
    #[arg(long, value_name = "FILE")]
    input: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    city: CitySpec,
    /// all, bottom-closed, top-closed, or facet:<permutation>
    #[arg(long, default_value = "all")]
    filter: String,
    /// Print only the number of matching configurations
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct CountArgs {
    /// Object family: intervals, graphs, permutations, or derangements
    #[arg(long, value_name = "FAMILY")]
    family: String,
    /// Family parameter
    #[arg(long)]
    n: usize,
    /// Exit nonzero unless the count equals this value
    #[arg(long)]
    expect: Option<u64>,
    /// Worker threads for subset families
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct BruhatArgs {
    /// Lower candidate
    sigma: String,
    /// Upper candidate
    tau: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    city: CitySpec,
    /// Render a configuration JSON (file or "-" for stdin) instead of a city
    #[arg(long, value_name = "FILE")]
    config: Option<String>,
    #[arg(long, value_enum, default_value = "ascii")]
    format: FormatArg,
    /// Dye each wire with its palette color
    #[arg(long)]
    color: bool,
    /// Omit faucet and customer labels
    #[arg(long)]
    no_labels: bool,
    /// Pixels per lattice unit (SVG)
    #[arg(long, default_value_t = 32.0)]
    scale: f64,
    /// Write to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

struct CliFailure {
    message: String,
    code: u8,
}

impl CliFailure {
    fn input(message: impl Into<String>) -> Self {
        CliFailure {
            message: message.into(),
            code: 2,
        }
    }

    fn check_failed(message: impl Into<String>) -> Self {
        CliFailure {
            message: message.into(),
            code: 1,
        }
    }
}

impl From<LibError> for CliFailure {
    fn from(e: LibError) -> Self {
        let code = match &e {
            LibError::NotRealizable { .. } => 3,
            LibError::GuardExceeded(_) => 4,
            _ => 2,
        };
        CliFailure {
            message: e.to_string(),
            code,
        }
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure::input(e.to_string())
    }
}

impl From<serde_json::Error> for CliFailure {
    fn from(e: serde_json::Error) -> Self {
        CliFailure::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

#[derive(Serialize)]
struct CityReport {
    top: String,
    bottom: String,
    m: usize,
    cells: Vec<CellId>,
    word: Vec<usize>,
    tau: String,
}

#[derive(Serialize)]
struct Checklist {
    trace: String,
    crossings: usize,
    elbows: usize,
    is_facet: bool,
    bottom_closed: bool,
    top_closed: bool,
    no_cross_after_elbow: bool,
    no_cross_before_elbow: bool,
}

impl Checklist {
    fn of(cfg: &PipeConfig) -> Self {
        let sigma = cfg.trace().permutation;
        Checklist {
            trace: sigma.to_string(),
            crossings: cfg.crossing_count(),
            elbows: cfg.elbow_count(),
            is_facet: cfg.is_facet(&sigma).expect("same city"),
            bottom_closed: cfg.is_bottom_closed(),
            top_closed: cfg.is_top_closed(),
            no_cross_after_elbow: cfg.no_cross_after_elbow(),
            no_cross_before_elbow: cfg.no_cross_before_elbow(),
        }
    }
}

#[derive(Serialize)]
struct FacetReport {
    city: City,
    elbows: Vec<CellId>,
    sigma: String,
    checks: Checklist,
}

#[derive(Serialize)]
struct FullVerifyReport {
    #[serde(flatten)]
    bijections: VerifyReport,
    #[serde(rename = "box")]
    bounds_box: BoxReport,
}

fn run(command: Command) -> Result<(), CliFailure> {
    match command {
        Command::City(spec) => {
            let city = spec.build()?;
            let mut cells = city.cells().to_vec();
            cells.sort();
            let report = CityReport {
                top: city.top_path().to_string(),
                bottom: city.bottom_path().to_string(),
                m: city.m(),
                cells,
                word: city.word().letters().to_vec(),
                tau: city.grid_permutation().to_string(),
            };
            println!("{}", serde_json::to_string(&report)?);
            Ok(())
        }
        Command::Mario(args) => facet_command(args, greedy_facet),
        Command::Luigi(args) => facet_command(args, antigreedy_facet),
        Command::Trace(input) => {
            let cfg = read_config(&input.input)?;
            println!("{}", cfg.trace().permutation);
            Ok(())
        }
        Command::Check(input) => {
            let cfg = read_config(&input.input)?;
            println!("{}", serde_json::to_string(&Checklist::of(&cfg))?);
            Ok(())
        }
        Command::Enumerate(args) => {
            let city = args.city.build()?;
            let filter = ConfigFilter::parse(&args.filter)?;
            let guard = cell_guard_from_env()?;
            let configs = enumerate_configs_with_guard(&city, filter, guard)?;
            if args.count_only {
                println!("{}", configs.count());
            } else {
                for cfg in configs {
                    let elbows: Vec<CellId> = cfg.elbows().iter().copied().collect();
                    println!("{}", serde_json::to_string(&elbows)?);
                }
            }
            Ok(())
        }
        Command::Count(args) => {
            let family: Family = args.family.parse()?;
            let count = yoshi_count_threaded(args.n, family, args.threads)?;
            println!("{count}");
            match args.expect {
                Some(expected) if expected != count => Err(CliFailure::check_failed(format!(
                    "count {count} does not match expected {expected}"
                ))),
                _ => Ok(()),
            }
        }
        Command::Verify(spec) => {
            let city = spec.build()?;
            let bijections = verify_bijection(&city)?;
            let bounds_box = mu_nu_box_report(&city)?;
            let pass = bijections.pass && bounds_box.pass;
            let report = FullVerifyReport {
                bijections,
                bounds_box,
            };
            println!("{}", serde_json::to_string(&report)?);
            if pass {
                Ok(())
            } else {
                Err(CliFailure::check_failed("verification failed"))
            }
        }
        Command::Bruhat(args) => {
            let sigma: Permutation = args.sigma.parse()?;
            let tau: Permutation = args.tau.parse()?;
            println!("{}", sigma.bruhat_leq(&tau)?);
            Ok(())
        }
        Command::Munu(spec) => {
            let city = spec.build()?;
            let bounds = city.mu_nu();
            println!(
                "{}",
                serde_json::json!({ "mu": bounds.lo(), "nu": bounds.hi() })
            );
            Ok(())
        }
        Command::Render(args) => {
            let opts = RenderOptions {
                format: match args.format {
                    FormatArg::Ascii => RenderFormat::Ascii,
                    FormatArg::Svg => RenderFormat::Svg,
                },
                color: args.color,
                scale: args.scale,
                labels: !args.no_labels,
            };
            let document = match &args.config {
                Some(source) => render_config(&read_config(&Some(source.clone()))?, &opts)?,
                None => render_city(&args.city.build()?, &opts)?,
            };
            match &args.out {
                Some(path) => std::fs::write(path, document)?,
                None => print!("{document}"),
            }
            Ok(())
        }
    }
}

fn facet_command(
    args: FacetArgs,
    construct: fn(&City, &Permutation) -> plumbing::Result<PipeConfig>,
) -> Result<(), CliFailure> {
    let city = args.city.build()?;
    let sigma: Permutation = args.sigma.parse()?;
    let cfg = construct(&city, &sigma)?;
    let report = FacetReport {
        elbows: cfg.elbows().iter().copied().collect(),
        sigma: sigma.to_string(),
        checks: Checklist::of(&cfg),
        city,
    };
    println!("{}", serde_json::to_string(&report)?);
    Ok(())
}

fn read_config(input: &Option<String>) -> Result<PipeConfig, CliFailure> {
    let text = match input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
        Some(path) => std::fs::read_to_string(path)?,
    };
    Ok(serde_json::from_str(&text)?)
}

fn cell_guard_from_env() -> Result<usize, CliFailure> {
    match std::env::var("PLUMBER_GUARD_CELLS") {
        Ok(value) => value
            .parse()
            .map_err(|_| CliFailure::input("PLUMBER_GUARD_CELLS must be an integer")),
        Err(_) => Ok(plumbing::config::DEFAULT_CELL_GUARD),
    }
}
