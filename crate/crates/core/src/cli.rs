//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::constructions::{double_star_pack, three_trees, two_paths, two_trees, ConstructionError};
use crate::crossing::{crossing_family_greedy, max_crossing_family_exact, CrossingError};
use crate::geom::PointSet;
use crate::hierarchical::{hierarchical_pack, HierarchicalError};
use crate::io::codec::{
    packing_to_string, pointset_to_string, read_packing, read_pointset, write_packing, write_pointset,
    CodecError, PackingDoc, Provenance,
};
use crate::io::generate::{convex_points, random_points};
use crate::io::svg::render_svg;
use crate::oracle::{max_path_packing_exact, max_tree_packing_exact, OracleError, OracleResult};
use crate::packing::{verify_packing, Ground, Packing};
use crate::wheel::{wheel_partition, wheel_partition_path_impossibility, wheel_zigzag_paths, WheelConfig, WheelError};

const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Parser, Debug)]
#[command(name = "plane-packing", version, about = "Edge-disjoint plane spanning trees and paths")]
struct Cli {
    /// Log progress to standard error.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a point set.
    Generate {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Required for random sets.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build a packing on a point set.
    Pack {
        #[arg(long, value_enum)]
        method: Method,
        /// Number of trees (double-star target, hierarchical k).
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a packing; exits 0 iff every required property holds.
    Verify {
        /// Also require every edge to be covered.
        #[arg(long)]
        partition: bool,
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Exact search on a small instance.
    Oracle {
        #[arg(long, value_enum)]
        kind: OracleKind,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(short, long)]
        input: PathBuf,
        /// Write the witness packing here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate all wheel partitions and count path members.
    WheelCertify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Draw a packing as SVG.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Random,
    Convex,
    Wheel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    DoubleStar,
    TwoTrees,
    ThreeTrees,
    TwoPaths,
    WheelPartition,
    WheelPaths,
    Hierarchical,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::DoubleStar => "double-star",
            Method::TwoTrees => "two-trees",
            Method::ThreeTrees => "three-trees",
            Method::TwoPaths => "two-paths",
            Method::WheelPartition => "wheel-partition",
            Method::WheelPaths => "wheel-paths",
            Method::Hierarchical => "hierarchical",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum OracleKind {
    MaxTrees,
    MaxPaths,
    MaxCrossingFamily,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("construction failed: {message}\ninstance:\n{instance}")]
    Construction { message: String, instance: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Usage(_) | CliError::Codec(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Construction { .. } => 4,
        }
    }
}

fn construction(ground: &Ground, e: impl std::fmt::Display) -> CliError {
    CliError::Construction { message: e.to_string(), instance: pointset_to_string(ground) }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Codec(CodecError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if cli.verbose {
        // explicit configuration only; the environment is not consulted
        let _ = env_logger::Builder::new().filter_level(log::LevelFilter::Debug).try_init();
    }
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Generate { kind, n, seed, output } => {
            let ground = match kind {
                GenKind::Random => {
                    let seed = seed.ok_or_else(|| CliError::Usage("--seed is required for random sets".into()))?;
                    Ground::Points(random_points(n, seed).map_err(|e| CliError::Usage(e.to_string()))?)
                }
                GenKind::Convex => Ground::Points(
                    convex_points(n, seed.unwrap_or(0)).map_err(|e| CliError::Usage(e.to_string()))?,
                ),
                GenKind::Wheel => Ground::Wheel(WheelConfig::new(n).map_err(|e| CliError::Usage(e.to_string()))?),
            };
            write_pointset(&output, &ground)?;
            log::info!("wrote {} vertices to {}", ground.vertex_count(), output.display());
            Ok(0)
        }
        Command::Pack { method, k, input, output } => {
            let ground = read_pointset(&input)?;
            let packing = pack(method, k, &ground)?;
            let report = verify_packing(&packing, false);
            if !report.all_ok() {
                return Err(construction(&ground, report.first_failure().unwrap_or_default()));
            }
            let doc = PackingDoc {
                packing,
                provenance: Provenance {
                    method: method.name().into(),
                    seed: None,
                    k,
                    input: Some(input.display().to_string()),
                },
                points_file: None,
            };
            write_packing(&output, &doc)?;
            writeln!(out, "{} members written to {}", doc.packing.members.len(), output.display())
                .map_err(|e| io_err(&output, e))?;
            Ok(0)
        }
        Command::Verify { partition, input } => {
            let doc = read_packing(&input)?;
            let report = verify_packing(&doc.packing, partition);
            write!(out, "{report}").map_err(|e| io_err(&input, e))?;
            if report.all_ok() {
                Ok(0)
            } else {
                Err(CliError::Verify(report.first_failure().unwrap_or_default()))
            }
        }
        Command::Oracle { kind, budget, input, output } => oracle(kind, budget, &input, output.as_deref(), out),
        Command::WheelCertify { n, budget } => {
            let r = wheel_partition_path_impossibility(n, budget).map_err(|e| match e {
                WheelError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
                other => CliError::Usage(other.to_string()),
            })?;
            let hist: Vec<String> = r.histogram.iter().map(u64::to_string).collect();
            writeln!(
                out,
                "n {}: {} plane spanning trees, {} partitions, max path members {}, histogram [{}], {} nodes",
                r.n,
                r.plane_spanning_trees,
                r.partitions,
                r.max_path_members,
                hist.join(", "),
                r.nodes
            )
            .map_err(|e| io_err(Path::new("-"), e))?;
            Ok(0)
        }
        Command::Render { input, output } => {
            let doc = read_packing(&input)?;
            let svg = render_svg(&doc.packing, &doc.provenance.method);
            std::fs::write(&output, svg).map_err(|e| io_err(&output, e))?;
            Ok(0)
        }
    }
}

fn points(ground: &Ground, method: Method) -> Result<&PointSet, CliError> {
    ground.as_points().ok_or_else(|| {
        CliError::Usage(format!("method {} needs explicit coordinates, not a wheel", method.name()))
    })
}

fn wheel_n(ground: &Ground, method: Method) -> Result<usize, CliError> {
    match ground {
        Ground::Wheel(w) => Ok(w.n()),
        Ground::Points(_) => Err(CliError::Usage(format!("method {} needs a wheel point set", method.name()))),
    }
}

fn pack(method: Method, k: Option<usize>, ground: &Ground) -> Result<Packing, CliError> {
    let fail = |e: ConstructionError| match e {
        ConstructionError::TooFewPoints { .. } => CliError::Usage(e.to_string()),
        other => construction(ground, other),
    };
    match method {
        Method::DoubleStar => {
            let s = points(ground, method)?;
            let f = crossing_family_greedy(s, k.unwrap_or(0));
            if let Some(k) = k.filter(|&k| f.len() < k) {
                return Err(construction(ground, format!("crossing family of size {} < {k}", f.len())));
            }
            double_star_pack(s, &f).map_err(fail)
        }
        Method::TwoTrees => two_trees(points(ground, method)?).map_err(fail),
        Method::ThreeTrees => three_trees(points(ground, method)?).map_err(fail),
        Method::TwoPaths => two_paths(points(ground, method)?).map_err(fail),
        Method::WheelPartition => wheel_partition(wheel_n(ground, method)?).map_err(|e| construction(ground, e)),
        Method::WheelPaths => wheel_zigzag_paths(wheel_n(ground, method)?).map_err(|e| construction(ground, e)),
        Method::Hierarchical => {
            hierarchical_pack(points(ground, method)?, k.unwrap_or(1)).map_err(|e| match e {
                HierarchicalError::InvalidK { .. } => CliError::Usage(e.to_string()),
                other => construction(ground, other),
            })
        }
    }
}

fn oracle(
    kind: OracleKind,
    budget: u64,
    input: &Path,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ground = read_pointset(input)?;
    let w = |out: &mut dyn Write, text: String| writeln!(out, "{text}").map_err(|e| io_err(input, e));
    match kind {
        OracleKind::MaxCrossingFamily => {
            let s = points(&ground, Method::DoubleStar)?;
            let (fam, complete) = match max_crossing_family_exact(s, budget) {
                Ok(f) => (f, true),
                Err(CrossingError::BudgetExceeded { best }) => (best, false),
            };
            let edges: Vec<String> = fam.edges.iter().map(|e| e.to_string()).collect();
            let label = if complete { "maximum" } else { "lower bound" };
            w(out, format!("crossing family {label} {}: {}", fam.len(), edges.join(" ")))?;
            if complete {
                Ok(0)
            } else {
                Err(CliError::Budget(format!("best crossing family so far has {} edges", fam.len())))
            }
        }
        OracleKind::MaxTrees | OracleKind::MaxPaths => {
            let (what, result) = match kind {
                OracleKind::MaxTrees => ("trees", max_tree_packing_exact(&ground, budget)),
                _ => ("paths", max_path_packing_exact(&ground, budget)),
            };
            let (r, complete): (OracleResult, bool) = match result {
                Ok(r) => (r, true),
                Err(OracleError::BudgetExceeded { best }) => (best, false),
                Err(e @ OracleError::TooLarge(_)) => return Err(CliError::Usage(e.to_string())),
            };
            let label = if complete { "maximum" } else { "lower bound" };
            w(out, format!("{label} edge-disjoint plane spanning {what}: {} ({} nodes)", r.count, r.nodes))?;
            if let Some(path) = output {
                let doc = PackingDoc {
                    provenance: Provenance {
                        method: format!("oracle-max-{what}"),
                        seed: None,
                        k: None,
                        input: Some(input.display().to_string()),
                    },
                    packing: r.packing,
                    points_file: None,
                };
                write_packing(path, &doc)?;
            } else {
                let doc = PackingDoc {
                    provenance: Provenance { method: format!("oracle-max-{what}"), ..Default::default() },
                    packing: r.packing,
                    points_file: None,
                };
                log::debug!("witness:\n{}", packing_to_string(&doc));
            }
            if complete {
                Ok(0)
            } else {
                Err(CliError::Budget(format!("node budget {budget} exhausted; result is a lower bound")))
            }
        }
    }
}
