use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use digitop::afpp::{self, Counterexample, DecideOptions, Meeting, Opponents, Verdict};
use digitop::maps::{self, enumerate_continuous_maps};
use digitop::search::DEFAULT_BUDGET;
use digitop::subdivision::{self, enumerate_continuous_multimaps, find_inducer, induce_multimap, subdivide};
use digitop::{grid, Adjacency, DigitalImage, Error, Point, SearchConfig, Status};

mod dot;
mod format;

use format::{parse_image, parse_map, write_image, write_map, MapFile};

const EXIT_USAGE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "digitop", version, about = "Continuity and approximate fixed points of finite digital images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Node budget per decision (default: $DIGITOP_BUDGET or 100000000).
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Accept the first witness found instead of the least one.
    #[arg(long, conflicts_with = "deterministic")]
    fast: bool,
    /// Report least witnesses (the default).
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args, Clone)]
struct AdjArgs {
    /// Domain adjacency, `c<u>` or `c<u>^<k>`.
    #[arg(long, default_value = "c1")]
    adjacency: Adjacency,
    /// Codomain adjacency (defaults to the domain adjacency).
    #[arg(long)]
    codomain_adjacency: Option<Adjacency>,
}

impl AdjArgs {
    fn kappa(&self) -> Adjacency {
        self.adjacency
    }

    fn lambda(&self) -> Adjacency {
        self.codomain_adjacency.unwrap_or(self.adjacency)
    }
}

#[derive(Args, Clone)]
struct MapArgs {
    /// Map or multimap file.
    #[arg(long)]
    map: PathBuf,
    /// Domain image (defaults to the points listed in the map).
    #[arg(long)]
    domain: Option<PathBuf>,
    /// Codomain image (defaults to the domain when every value lies in it, else the set of values).
    #[arg(long)]
    codomain: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeetingArg {
    Weak,
    Strict,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpponentsArg {
    Single,
    Multi,
}

#[derive(Subcommand)]
enum Command {
    /// Test a single-valued map for continuity.
    CheckContinuity {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        adj: AdjArgs,
    },
    /// Write the subdivision S(X, r) as an image file.
    Subdivide {
        #[arg(long)]
        image: PathBuf,
        #[arg(short = 'r', long = "level")]
        r: i64,
    },
    /// Write the multimap induced on X by a map defined on S(X, r).
    Induce {
        /// Base image X.
        #[arg(long)]
        image: PathBuf,
        #[arg(short = 'r', long = "level")]
        r: i64,
        /// Map from the lattice of S(X, r).
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        codomain: Option<PathBuf>,
    },
    /// Search subdivision levels for a continuous map inducing a multimap.
    FindInducer {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        adj: AdjArgs,
        #[arg(long, default_value_t = subdivision::DEFAULT_R_MAX)]
        rmax: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decide whether every continuous self-map has an approximate fixed point.
    DecideAfpps {
        #[arg(long)]
        image: PathBuf,
        #[command(flatten)]
        adj: AdjArgs,
        /// Adjacency for approximate fixed points (defaults to the codomain adjacency).
        #[arg(long)]
        mu: Option<Adjacency>,
        /// Skip structural certificates.
        #[arg(long)]
        no_certificates: bool,
        /// Enumerate every continuous map rather than only candidate counterexamples.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The multivalued version, searching subdivisions up to --rmax.
    DecideAfppm {
        #[arg(long)]
        image: PathBuf,
        #[command(flatten)]
        adj: AdjArgs,
        #[arg(long)]
        mu: Option<Adjacency>,
        #[arg(long)]
        no_certificates: bool,
        #[arg(long, default_value_t = subdivision::DEFAULT_R_MAX)]
        rmax: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check that a map meets every continuous opponent.
    Universality {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        adj: AdjArgs,
        #[arg(long, value_enum, default_value = "weak")]
        mode: MeetingArg,
        #[arg(long, value_enum, default_value = "single")]
        opponents: OpponentsArg,
        #[arg(long, default_value_t = subdivision::DEFAULT_R_MAX)]
        rmax: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List continuous maps in lexicographic order.
    EnumerateMaps {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        codomain: Option<PathBuf>,
        #[command(flatten)]
        adj: AdjArgs,
        /// List distinct multimaps induced at this subdivision level instead.
        #[arg(long)]
        multi_level: Option<u32>,
        /// Stop after this many maps.
        #[arg(long)]
        limit: Option<usize>,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Eccentricity of one point, or of every point.
    Eccentricity {
        #[arg(long)]
        image: PathBuf,
        #[arg(long, default_value = "c1")]
        adjacency: Adjacency,
        /// Whitespace- or comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Render an image, optionally with a map's arrows, as Graphviz DOT.
    ExportDot {
        #[arg(long)]
        image: PathBuf,
        #[arg(long, default_value = "c1")]
        adjacency: Adjacency,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    VerifyPaper {
        /// Run only criteria whose id contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
}

type Run = Result<u8, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_image(path: &Path) -> Result<Arc<DigitalImage>, Failure> {
    parse_image(&read(path)?).map(Arc::new).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<MapFile, Failure> {
    parse_map(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

struct Loaded {
    file: MapFile,
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
}

fn load_with_images(args: &MapArgs) -> Result<Loaded, Failure> {
    let file = load_map(&args.map)?;
    let domain = match &args.domain {
        Some(p) => load_image(p)?,
        None => Arc::new(file.listed_domain()),
    };
    let codomain = match &args.codomain {
        Some(p) => load_image(p)?,
        None => file.default_codomain(&domain),
    };
    Ok(Loaded { file, domain, codomain })
}

fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("DIGITOP_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("DIGITOP_BUDGET is not a count: {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn search_config(args: &SearchArgs) -> Result<SearchConfig, Failure> {
    if args.workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    Ok(SearchConfig { budget: budget(args.budget)?, workers: args.workers, fast: args.fast })
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Holds => 0,
        Status::Fails => 1,
        Status::Unknown => 2,
    }
}

fn print_verdict(v: &Verdict, fast: bool) -> u8 {
    println!("verdict: {}", v.status);
    if let Some(c) = &v.certificate {
        println!("certificate: {c}");
    }
    match &v.counterexample {
        Some(Counterexample::Single(f)) => {
            println!("witness: map");
            print!("{}", write_map(&MapFile::from_point_map(f)));
        }
        Some(Counterexample::Multi { r, inducer, multimap }) => {
            println!("witness: multimap induced at r={r}");
            print!("{}", write_map(&MapFile::from_multimap(multimap)));
            println!("inducer:");
            print!("{}", write_map(&MapFile::from_point_map(inducer)));
        }
        None => {}
    }
    if v.levels_searched > 0 {
        println!("levels-searched: {}", v.levels_searched);
    }
    for n in &v.notes {
        println!("note: {n}");
    }
    if fast && v.counterexample.is_some() {
        println!("note: fast mode, the witness is the first found and not necessarily the least");
    }
    exit_for(v.status)
}

/// Library outcomes that mean "no answer" rather than misuse.
fn unknown_or(e: Error) -> Run {
    match e {
        Error::BudgetExhausted { .. } | Error::NotVerifiablyContinuous { .. } => {
            println!("verdict: {}", Status::Unknown);
            println!("note: {e}");
            Ok(exit_for(Status::Unknown))
        }
        e => Err(e.into()),
    }
}

fn parse_point(text: &str, dim: usize) -> Result<Point, Failure> {
    let coords: Vec<i64> = text
        .split(|c: char| c.is_whitespace() || c == ',' || c == '(' || c == ')')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("bad coordinate {t:?}"))))
        .collect::<Result<_, _>>()?;
    if coords.len() != dim {
        return Err(Failure::Usage(format!("point {text:?} needs {dim} coordinates")));
    }
    Ok(Point::from(coords))
}

fn run(command: Command) -> Run {
    match command {
        Command::CheckContinuity { map, adj } => {
            let l = load_with_images(&map)?;
            if !l.file.is_single_valued() {
                return Err(Failure::Usage("check-continuity takes a single-valued map; use find-inducer".into()));
            }
            let f = l.file.to_point_map(l.domain, l.codomain)?;
            let report = maps::is_continuous(&f, adj.kappa(), adj.lambda())?;
            if report.continuous {
                println!("verdict: continuous");
                Ok(0)
            } else {
                println!("verdict: discontinuous");
                if let Some((a, b)) = report.witness {
                    println!("witness: {a} {b}");
                }
                Ok(1)
            }
        }
        Command::Subdivide { image, r } => {
            let x = load_image(&image)?;
            let s = subdivide(&x, r)?;
            print!("{}", write_image(s.lattice()));
            Ok(0)
        }
        Command::Induce { image, r, map, codomain } => {
            let x = load_image(&image)?;
            let s = Arc::new(subdivide(&x, r)?);
            let file = load_map(&map)?;
            if !file.is_single_valued() {
                return Err(Failure::Usage("induce takes a single-valued map on the subdivision".into()));
            }
            let cod = match codomain {
                Some(p) => load_image(&p)?,
                None => file.default_codomain(s.lattice()),
            };
            let f = file.to_point_map(Arc::clone(s.lattice()), cod)?;
            print!("{}", write_map(&MapFile::from_multimap(&induce_multimap(&s, &f)?)));
            Ok(0)
        }
        Command::FindInducer { map, adj, rmax, search } => {
            let l = load_with_images(&map)?;
            let f = l.file.to_multimap(l.domain, l.codomain)?;
            let config = search_config(&search)?;
            let report = match find_inducer(&f, adj.kappa(), adj.lambda(), rmax, &config) {
                Ok(r) => r,
                Err(e) => return unknown_or(e),
            };
            match report.inducer {
                Some(ind) => {
                    println!("verdict: {}", Status::Holds);
                    println!("certificate: inducer r={}", ind.r());
                    println!("witness: map");
                    print!("{}", write_map(&MapFile::from_point_map(&ind.map)));
                    Ok(0)
                }
                None => {
                    println!("verdict: {}", Status::Unknown);
                    println!("levels-searched: {}", report.levels_searched);
                    println!("note: no continuous inducer at r <= {rmax}");
                    Ok(2)
                }
            }
        }
        Command::DecideAfpps { image, adj, mu, no_certificates, exhaustive, search } => {
            let x = load_image(&image)?;
            let mut opts = DecideOptions { search: search_config(&search)?, ..DecideOptions::default() };
            if no_certificates {
                opts = opts.without_certificates();
            }
            if exhaustive {
                opts = opts.exhaustive();
            }
            let mu = mu.unwrap_or(adj.lambda());
            match afpp::decide_afpp_s(&x, adj.kappa(), adj.lambda(), mu, &opts) {
                Ok(v) => Ok(print_verdict(&v, search.fast)),
                Err(e) => unknown_or(e),
            }
        }
        Command::DecideAfppm { image, adj, mu, no_certificates, rmax, search } => {
            let x = load_image(&image)?;
            let mut opts =
                DecideOptions { search: search_config(&search)?, ..DecideOptions::default() }.with_r_max(rmax);
            if no_certificates {
                opts = opts.without_certificates();
            }
            let mu = mu.unwrap_or(adj.lambda());
            match afpp::decide_afpp_m(&x, adj.kappa(), adj.lambda(), mu, &opts) {
                Ok(v) => Ok(print_verdict(&v, search.fast)),
                Err(e) => unknown_or(e),
            }
        }
        Command::Universality { map, adj, mode, opponents, rmax, search } => {
            let l = load_with_images(&map)?;
            let f = l.file.to_multimap(l.domain, l.codomain)?;
            let opts = DecideOptions { search: search_config(&search)?, ..DecideOptions::default() }.with_r_max(rmax);
            let mode = match mode {
                MeetingArg::Weak => Meeting::Weak,
                MeetingArg::Strict => Meeting::Strict,
            };
            let opponents = match opponents {
                OpponentsArg::Single => Opponents::Single,
                OpponentsArg::Multi => Opponents::Multi,
            };
            match afpp::universality_check(&f, adj.kappa(), adj.lambda(), mode, opponents, &opts) {
                Ok(v) => Ok(print_verdict(&v, search.fast)),
                Err(e) => unknown_or(e),
            }
        }
        Command::EnumerateMaps { domain, codomain, adj, multi_level, limit, count, budget: b } => {
            let x = load_image(&domain)?;
            let y = match codomain {
                Some(p) => load_image(&p)?,
                None => Arc::clone(&x),
            };
            let b = budget(b)?;
            let limit = limit.unwrap_or(usize::MAX);
            let files: Box<dyn Iterator<Item = digitop::Result<MapFile>>> = match multi_level {
                None => Box::new(
                    enumerate_continuous_maps(&x, &y, adj.kappa(), adj.lambda(), b)?
                        .map(|f| f.map(|f| MapFile::from_point_map(&f))),
                ),
                Some(r) => Box::new(
                    enumerate_continuous_multimaps(&x, &y, adj.kappa(), adj.lambda(), r, b)?
                        .map(|f| f.map(|f| MapFile::from_multimap(&f))),
                ),
            };
            let mut n = 0usize;
            for file in files.take(limit) {
                match file {
                    Ok(file) => {
                        if !count {
                            if n > 0 {
                                println!();
                            }
                            print!("{}", write_map(&file));
                        }
                        n += 1;
                    }
                    Err(e) => {
                        println!("count: {n}");
                        println!("note: {e}");
                        return Ok(2);
                    }
                }
            }
            if !count && n > 0 {
                println!();
            }
            println!("count: {n}");
            Ok(0)
        }
        Command::Eccentricity { image, adjacency, point } => {
            let x = load_image(&image)?;
            let points = match point {
                Some(text) => vec![parse_point(&text, x.dim())?],
                None => x.points().to_vec(),
            };
            for p in points {
                match grid::eccentricity(&x, adjacency, &p)? {
                    Some(e) => println!("{p} {e}"),
                    None => println!("{p} infinite"),
                }
            }
            Ok(0)
        }
        Command::ExportDot { image, adjacency, map } => {
            let x = load_image(&image)?;
            let overlay = match map {
                Some(p) => {
                    let file = load_map(&p)?;
                    // a total map on the image
                    let codomain = file.default_codomain(&x);
                    Some(file.to_multimap(Arc::clone(&x), codomain)?)
                }
                None => None,
            };
            print!("{}", dot::export_dot(&x, adjacency, overlay.as_ref())?);
            Ok(0)
        }
        Command::VerifyPaper { filter } => {
            let results = digitop_verify::run(filter.as_deref(), &digitop_verify::Hooks::default());
            for r in &results {
                println!("{r}");
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("summary: {} passed, {failed} failed", results.len() - failed);
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
