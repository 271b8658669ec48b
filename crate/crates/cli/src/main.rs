use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use biparcel_tv::biparcel::check_move_consistency;
use biparcel_tv::catalog;
use biparcel_tv::complex::generators::{self, disjoint_union};
use biparcel_tv::complex::{
    barycentric_subdivide, pachner_move, DirectedTriangulation, Mode, MoveKind, Site, StratifiedComplex,
    TriangulationFile,
};
use biparcel_tv::constructions::{pointed_biparcel, sharp_construction, Cochain3, CochainFile};
use biparcel_tv::gaunt::{cyclic_table, group_as_groupoid, poset_chain, FiniteGroupoid};
use biparcel_tv::json::to_canonical_string;
use biparcel_tv::state_sum::{dw_oracle, invariance_check, invariant_with, random_moves, EvalOptions};
use biparcel_tv::{Bicategory, BicategoryData, Biparcel, Error, Report};

/// State-sum invariants of stratified 3-manifolds.
#[derive(Parser)]
#[command(name = "biparcel-tv", version)]
struct Cli {
    /// Absolute tolerance for comparisons.
    #[arg(long, global = true, env = "BIPARCEL_TV_TOLERANCE", default_value_t = 1e-9)]
    tolerance: f64,
    /// Worker threads for the state sum.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for random move sequences.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every validator on a category file.
    Validate { category: String },
    /// Compute the invariant of a triangulation.
    Invariant { category: String, triangulation: PathBuf },
    /// Apply moves and check that the invariant does not change.
    MovesCheck {
        category: String,
        triangulation: PathBuf,
        /// Number of random moves; ignored when --move is given.
        #[arg(long, default_value_t = 5)]
        moves: usize,
        /// Move kinds to draw from, e.g. 1-4,2-3. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<String>,
        /// Explicit move `KIND:SITE`, site as comma-separated vertices or
        /// `prev` for the simplex created by the previous move. Repeatable.
        #[arg(long = "move")]
        explicit: Vec<String>,
    },
    /// Emit a generator triangulation. Join names with `+` for a disjoint union.
    Generate { name: String },
    /// Emit a constructed category or cochain file.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Dijkgraaf-Witten state sum computed directly from a cochain.
    OracleDw { cochain: PathBuf, triangulation: PathBuf },
    /// Barycentric subdivision of a triangulation.
    Subdivide { triangulation: PathBuf },
}

#[derive(Subcommand)]
enum Construct {
    /// A shipped category by name.
    Catalog { name: String },
    /// Pointed data of a cyclic group over a chain.
    Pointed {
        /// Cyclic group, e.g. z2.
        #[arg(long)]
        group: String,
        /// `trivial`, `nontrivial` or the level k of the standard cocycle.
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        /// `point` or `chainN`; every step of the chain goes to the generator.
        #[arg(long, default_value = "point")]
        base: String,
    },
    /// Sharp construction of a category over a groupoid.
    Sharp {
        /// Category file or catalog name.
        #[arg(long)]
        c: String,
        /// `zN` or `codiscreteN`.
        #[arg(long)]
        groupoid: String,
    },
    /// Standard 3-cocycle of a cyclic group.
    Cochain {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
    },
}

/// Exit status for everything that stops a command.
enum Failure {
    /// Input could not be read or does not make sense.
    Input(String),
    /// Inputs are fine but a check failed; the payload is still printed.
    Domain(String),
    NoMove(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::Malformed(_) | Error::InvalidArgument(_) => {
                Failure::Input(e.to_string())
            }
            Error::NoApplicableMove { .. } => Failure::NoMove(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type CmdResult = Result<Option<String>, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn canonical<T: Serialize>(value: &T) -> Result<String, Failure> {
    Ok(to_canonical_string(value)?)
}

/// A category file, or a catalog name when no such file exists.
fn load_bicategory(arg: &str) -> Result<Bicategory, Failure> {
    let path = Path::new(arg);
    if !path.exists() && catalog::NAMES.contains(&arg) {
        return Ok(catalog::by_name(arg)?.into_inner());
    }
    let data: BicategoryData = read_json(path)?;
    Bicategory::from_data(&data).map_err(|e| Failure::Input(e.to_string()))
}

fn load_biparcel(arg: &str, tolerance: f64) -> Result<Biparcel, Failure> {
    let b = load_bicategory(arg)?;
    let report = b.validate(tolerance);
    if !report.passed() {
        return Err(Failure::Domain(format!("category fails validation: {}", summary(&report))));
    }
    Ok(Biparcel::new(b)?)
}

fn load_triangulation(path: &Path) -> Result<DirectedTriangulation, Failure> {
    let file: TriangulationFile = read_json(path)?;
    let (complex, order) = StratifiedComplex::from_file(&file).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(DirectedTriangulation::direct(&complex, order.as_ref(), Mode::ExitDimension)?)
}

fn summary(report: &Report) -> String {
    let failed: Vec<String> = report.failed().map(|c| format!("{} ({})", c.name, c.witnesses.join("; "))).collect();
    failed.join(", ")
}

fn cyclic_order(group: &str) -> Result<usize, Failure> {
    group
        .strip_prefix('z')
        .and_then(|n| n.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("unknown group {group}, expected zN")))
}

fn cocycle_level(cocycle: &str) -> Result<usize, Failure> {
    match cocycle {
        "trivial" => Ok(0),
        "nontrivial" => Ok(1),
        k => k.parse().map_err(|_| Failure::Input(format!("unknown cocycle {k}"))),
    }
}

fn groupoid(spec: &str) -> Result<FiniteGroupoid, Failure> {
    if let Some(n) = spec.strip_prefix("codiscrete").and_then(|n| n.parse().ok()) {
        return Ok(FiniteGroupoid::codiscrete(n)?);
    }
    Ok(group_as_groupoid(&cyclic_table(cyclic_order(spec)?))?)
}

fn parse_move(spec: &str, prev: Option<&Site>) -> Result<(MoveKind, Site), Failure> {
    let (kind, site) = spec.split_once(':').ok_or_else(|| Failure::Input(format!("move {spec} is not KIND:SITE")))?;
    let kind: MoveKind = kind.parse()?;
    if site == "prev" {
        let prev = prev.ok_or_else(|| Failure::Input("`prev` needs an earlier move".into()))?;
        return Ok((kind, prev.clone()));
    }
    let v: Vec<u32> = site
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Input(format!("bad site {site}")))?;
    let site = match v[..] {
        [a] => Site::Vertex(a),
        [a, b] => Site::Edge([a, b]),
        [a, b, c] => Site::Triangle([a, b, c]),
        [a, b, c, d] => Site::Tet([a, b, c, d]),
        _ => return Err(Failure::Input(format!("site {site} needs 1 to 4 vertices"))),
    };
    Ok((kind, site))
}

fn validate(category: &str, tolerance: f64) -> CmdResult {
    let b = load_bicategory(category)?;
    let mut report = b.validate(tolerance);
    if report.passed() {
        report.merge(check_move_consistency(&b, tolerance));
    }
    let out = canonical(&serde_json::json!({ "passed": report.passed(), "checks": report.checks }))?;
    if report.passed() {
        Ok(Some(out))
    } else {
        Err(Failure::Domain(out))
    }
}

fn run(cli: &Cli) -> CmdResult {
    let options = EvalOptions { threads: cli.threads, tolerance: cli.tolerance };
    match &cli.command {
        Command::Validate { category } => validate(category, cli.tolerance),
        Command::Invariant { category, triangulation } => {
            let b = load_biparcel(category, cli.tolerance)?;
            let t = load_triangulation(triangulation)?;
            Ok(Some(canonical(&invariant_with(&b, &t, &options)?.record())?))
        }
        Command::MovesCheck { category, triangulation, moves, kinds, explicit } => {
            let b = load_biparcel(category, cli.tolerance)?;
            let t = load_triangulation(triangulation)?;
            let trace = if explicit.is_empty() {
                let kinds: Vec<MoveKind> = if kinds.is_empty() {
                    MoveKind::ALL.to_vec()
                } else {
                    kinds.iter().map(|k| k.parse()).collect::<Result<_, _>>()?
                };
                random_moves(&b, &t, &kinds, *moves, cli.seed, &options)?
            } else {
                // resolve `prev` by replaying the moves on the bare triangulation
                let mut current = t.clone();
                let mut prev = None;
                let mut sequence = Vec::new();
                for spec in explicit {
                    let (kind, site) = parse_move(spec, prev.as_ref())?;
                    let out = pachner_move(&current, kind, &site)
                        .map_err(|e| Failure::Domain(format!("move {spec}: {e}")))?;
                    current = out.triangulation;
                    prev = Some(out.created);
                    sequence.push((kind, site));
                }
                invariance_check(&b, &t, &sequence, &options)?
            };
            let out = canonical(&trace)?;
            if trace.passed {
                Ok(Some(out))
            } else {
                Err(Failure::Domain(out))
            }
        }
        Command::Generate { name } => {
            let mut parts = name.split('+');
            let mut complex = generators::by_name(parts.next().unwrap_or_default())?;
            for part in parts {
                complex = disjoint_union(&complex, &generators::by_name(part)?);
            }
            let t = DirectedTriangulation::direct(&complex, None, Mode::ExitDimension)?;
            Ok(Some(canonical(&complex.to_file(Some(t.orders())))?))
        }
        Command::Construct { kind } => construct(kind, cli.tolerance),
        Command::OracleDw { cochain, triangulation } => {
            let file: CochainFile = read_json(cochain)?;
            let omega = Cochain3::from_file(&file).map_err(|e| Failure::Input(e.to_string()))?;
            let t = load_triangulation(triangulation)?;
            Ok(Some(canonical(&dw_oracle(&omega, &t, cli.tolerance)?.record())?))
        }
        Command::Subdivide { triangulation } => {
            let t = load_triangulation(triangulation)?;
            let complex = barycentric_subdivide(t.complex())?;
            let t = DirectedTriangulation::direct(&complex, None, Mode::ExitDimension)?;
            Ok(Some(canonical(&complex.to_file(Some(t.orders())))?))
        }
    }
}

fn construct(kind: &Construct, tolerance: f64) -> CmdResult {
    let data = match kind {
        Construct::Catalog { name } => catalog::by_name(name)?.to_data(),
        Construct::Pointed { group, cocycle, base } => {
            let n = cyclic_order(group)?;
            let omega = Cochain3::cyclic(n, cocycle_level(cocycle)?)?;
            let len = match base.as_str() {
                "point" => 1,
                b => b
                    .strip_prefix("chain")
                    .and_then(|l| l.parse().ok())
                    .filter(|&l| l > 0)
                    .ok_or_else(|| Failure::Input(format!("unknown base {b}, expected point or chainN")))?,
            };
            let chain = poset_chain(len)?;
            pointed_biparcel(&omega, &chain, &catalog::chain_to_cyclic(len, n))?.to_data()
        }
        Construct::Sharp { c, groupoid: g } => sharp_construction(&load_bicategory(c)?, &groupoid(g)?)?,
        Construct::Cochain { group, cocycle } => {
            let omega = Cochain3::cyclic(cyclic_order(group)?, cocycle_level(cocycle)?)?;
            return Ok(Some(canonical(&omega.to_file())?));
        }
    };
    let report = Bicategory::from_data(&data)?.validate(tolerance);
    if !report.passed() {
        return Err(Failure::Domain(format!("constructed category fails validation: {}", summary(&report))));
    }
    Ok(Some(canonical(&data)?))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tolerance > 0.0) || cli.threads == 0 {
        eprintln!("error: --tolerance must be positive and --threads at least 1");
        return ExitCode::from(2);
    }
    let result = run(&cli).and_then(|text| text.map_or(Ok(()), |t| emit(&t, cli.out.as_deref())));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(payload)) => {
            // reports and traces go to the usual destination, plain errors to stderr
            if payload.starts_with('{') {
                let _ = emit(&payload, cli.out.as_deref());
            } else {
                eprintln!("error: {payload}");
            }
            ExitCode::from(1)
        }
        Err(Failure::NoMove(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
