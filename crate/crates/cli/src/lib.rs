//! The `homix` command line. [`run_with_io`] does the work so that tests can
//! drive it without spawning a process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use homix_core::config::{Budget, RunConfig, DEFAULT_MAX_MAPS, DEFAULT_MAX_NODES};
use homix_core::gadgets::{
    build_gstar, build_sum_gadget, extract_colouring, verify_nt_basis, witness_hom, GadgetError, ReductionArtifact,
    ThreeColouring,
};
use homix_core::graph::{export_dot, ClosedWalk, Graph, GraphError, Homomorphism, MapJson};
use homix_core::homology::{h1_presentation, ClassVector, HomologyError};
use homix_core::homsearch::{count_homs, enumerate_homs, mix_bruteforce, reconfig_path, SearchError};
use homix_core::verify::{run_all, Suite, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Search(e) | CliError::Gadget(GadgetError::Search(e)) => search_code(e),
            CliError::Gadget(GadgetError::NotNonflat | GadgetError::ClaimViolation(_) | GadgetError::Invariant(_)) => {
                EXIT_VIOLATION
            }
            CliError::Homology(HomologyError::Overflow) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

fn search_code(e: &SearchError) -> i32 {
    match e {
        SearchError::BudgetExceeded { .. } | SearchError::UnsatWithinBudget(_) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "homix", version, about = "Clique-complex homology, Hom-graphs and flatness gadgets")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// master seed for sampling and verification
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// search nodes per enumeration or sample
    #[arg(long, global = true, env = "HOMIX_BUDGET_NODES", default_value_t = DEFAULT_MAX_NODES)]
    pub budget_nodes: u64,
    /// maps kept in memory by an enumeration or a path search
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_MAPS)]
    pub budget_maps: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// trials per randomized suite
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
}

impl Global {
    fn budget(&self) -> Result<Budget, CliError> {
        if self.budget_nodes == 0 || self.budget_maps == 0 {
            return Err(CliError::Usage("budgets must be positive".into()));
        }
        Ok(Budget::default().with_nodes(self.budget_nodes).with_maps(self.budget_maps))
    }

    fn run_config(&self) -> Result<RunConfig, CliError> {
        Ok(RunConfig { budget: self.budget()?, seed: self.seed, trials: self.trials })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First homology of the clique complex: rank, torsion and a basis of cycles
    H1 { graph: PathBuf },
    /// Whether a homomorphism is flat, with the image class of every basis cycle
    Flat { source: PathBuf, target: PathBuf, map: PathBuf },
    /// Enumerate or count homomorphisms
    Homs {
        source: PathBuf,
        target: PathBuf,
        /// pin source vertex v to target vertex h
        #[arg(long = "pin", value_name = "V=H", value_parser = parse_pin)]
        pins: Vec<(usize, usize)>,
        #[arg(long)]
        count_only: bool,
    },
    /// Connectivity of the Hom-graph by brute force
    Mix { source: PathBuf, target: PathBuf },
    /// Shortest Hom-graph walk between two maps
    Path { source: PathBuf, target: PathBuf, from: PathBuf, to: PathBuf },
    /// Gadget constructions
    Gadget {
        #[command(subcommand)]
        kind: GadgetCommand,
    },
    /// Build G* from a source graph and a target
    Reduce {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// also check the NT-basis of G*
        #[arg(long)]
        check: bool,
    },
    /// The non-flat map of G* built from a 3-colouring of the source
    Witness { artifact: PathBuf, colouring: PathBuf },
    /// The 3-colouring read off a non-flat map of G*
    Extract { artifact: PathBuf, map: PathBuf },
    /// Run a verification suite, or `all`
    Verify { suite: String },
    /// DOT export of a graph, sum gadget or reduction artifact
    Dot {
        file: PathBuf,
        /// name of a walk to highlight (repeatable)
        #[arg(long = "highlight", value_name = "NAME")]
        highlights: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GadgetCommand {
    /// The sum gadget S_s over a g-cycle
    Sum {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pin(s: &str) -> Result<(usize, usize), String> {
    let (v, h) = s.split_once('=').ok_or_else(|| format!("expected V=H, got `{s}`"))?;
    let v = v.trim().parse().map_err(|e| format!("bad source vertex in `{s}`: {e}"))?;
    let h = h.trim().parse().map_err(|e| format!("bad target vertex in `{s}`: {e}"))?;
    Ok((v, h))
}

/// What a command hands back before formatting.
enum Output {
    Value(serde_json::Value),
    /// a value plus the graph it describes, for `--format dot`
    WithGraph(serde_json::Value, Graph, Vec<(String, ClosedWalk)>),
    Dot(String),
    Reports(Vec<VerificationReport>),
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let format = cli.global.format;
    match dispatch(&cli).and_then(|o| render(o, format)) {
        Ok((text, code)) => {
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "homix: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "homix: {e}");
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value).map_err(|source| CliError::Parse { path: path.into(), source })?;
    fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.into(), source })
}

fn read_map(path: &Path, g: &Graph, h: &Graph) -> Result<Homomorphism, CliError> {
    let m: MapJson = read_json(path)?;
    Ok(Homomorphism::new(g, h, m.map)?)
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("plain data serializes")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ColouringFile {
    Bare(Vec<u8>),
    Wrapped { colouring: Vec<u8> },
}

#[derive(Serialize)]
struct H1Out {
    rank: usize,
    torsion: Vec<i64>,
    basis: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct BasisImage {
    cycle: Vec<usize>,
    class: ClassVector,
}

#[derive(Serialize)]
struct FlatOut {
    flat: bool,
    images: Vec<BasisImage>,
}

#[derive(Serialize)]
struct HomsOut {
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    maps: Option<Vec<Homomorphism>>,
}

#[derive(Serialize)]
struct MixOut {
    connected: bool,
    components: usize,
    homomorphisms: usize,
    component_sizes: Vec<usize>,
    constant_components: Vec<usize>,
    representatives: Vec<Homomorphism>,
}

#[derive(Serialize)]
struct PathOut {
    connected: bool,
    /// maps from `from` to `to`, both ends included
    path: Option<Vec<Homomorphism>>,
}

#[derive(Serialize)]
struct SumOut {
    s: usize,
    g: usize,
    ell: usize,
    vertices: usize,
    edges: usize,
    z: ClosedWalk,
    a: Vec<ClosedWalk>,
    t: Vec<usize>,
}

#[derive(Serialize)]
struct ReduceOut {
    source_vertices: usize,
    gstar_vertices: usize,
    gstar_edges: usize,
    ga_vertices: usize,
    plugs: usize,
    tstar: usize,
    ell: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    nt_basis: Option<homix_core::gadgets::NtBasisReport>,
}

#[derive(Serialize)]
struct ColouringOut {
    colouring: Vec<u8>,
}

/// The parts of a saved sum gadget that export needs.
#[derive(Deserialize)]
struct GadgetFile {
    graph: Graph,
    ell: usize,
    z: ClosedWalk,
    a: Vec<ClosedWalk>,
    a_prime: Vec<ClosedWalk>,
    gadget_cycles: Vec<ClosedWalk>,
}

impl GadgetFile {
    fn named_walks(&self) -> Vec<(String, ClosedWalk)> {
        let mut out = vec![("Z".to_string(), self.z.clone())];
        out.extend(self.a.iter().enumerate().map(|(i, c)| (format!("A[{i}]"), c.clone())));
        out.extend(self.a_prime.iter().enumerate().map(|(i, c)| (format!("A'[{i}]"), c.clone())));
        out.extend(self.gadget_cycles.iter().take(self.ell).enumerate().map(|(t, c)| (format!("slice[{t}]"), c.clone())));
        out
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let gl = &cli.global;
    match &cli.command {
        Command::H1 { graph } => {
            let g: Graph = read_json(graph)?;
            let p = h1_presentation(&g)?;
            let basis: Vec<ClosedWalk> = p.basis_cycles().to_vec();
            let named = basis.iter().enumerate().map(|(i, c)| (format!("basis[{i}]"), c.clone())).collect();
            let v = to_value(&H1Out {
                rank: p.rank(),
                torsion: p.torsion().to_vec(),
                basis: basis.iter().map(|c| c.vertices().to_vec()).collect(),
            });
            Ok(Output::WithGraph(v, g, named))
        }
        Command::Flat { source, target, map } => {
            let g: Graph = read_json(source)?;
            let h: Graph = read_json(target)?;
            let phi = read_map(map, &g, &h)?;
            let pg = h1_presentation(&g)?;
            let ph = h1_presentation(&h)?;
            let images = pg
                .basis_cycles()
                .iter()
                .map(|c| {
                    let class = ph.cycle_class(&c.map_with(|v| phi.apply(v)))?;
                    Ok(BasisImage { cycle: c.vertices().to_vec(), class })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let flat = images.iter().all(|b| b.class.is_zero());
            Ok(Output::Value(to_value(&FlatOut { flat, images })))
        }
        Command::Homs { source, target, pins, count_only } => {
            let g: Graph = read_json(source)?;
            let h: Graph = read_json(target)?;
            let budget = gl.budget()?;
            let out = if *count_only {
                HomsOut { count: count_homs(&g, &h, pins, &budget)?, maps: None }
            } else {
                let set = enumerate_homs(&g, &h, pins, &budget)?;
                HomsOut { count: set.maps.len() as u64, maps: Some(set.maps) }
            };
            Ok(Output::Value(to_value(&out)))
        }
        Command::Mix { source, target } => {
            let g: Graph = read_json(source)?;
            let h: Graph = read_json(target)?;
            let r = mix_bruteforce(&g, &h, &gl.budget()?)?;
            Ok(Output::Value(to_value(&MixOut {
                connected: r.connected(),
                components: r.component_count,
                homomorphisms: r.vertex_count,
                component_sizes: r.component_sizes(),
                constant_components: r.constant_components(),
                representatives: r.representatives.clone(),
            })))
        }
        Command::Path { source, target, from, to } => {
            let g: Graph = read_json(source)?;
            let h: Graph = read_json(target)?;
            let f = read_map(from, &g, &h)?;
            let t = read_map(to, &g, &h)?;
            let path = reconfig_path(&g, &h, &f, &t, &gl.budget()?)?.map(|rest| std::iter::once(f).chain(rest).collect());
            Ok(Output::Value(to_value(&PathOut { connected: path.is_some(), path })))
        }
        Command::Gadget { kind: GadgetCommand::Sum { s, g, out } } => {
            let sg = build_sum_gadget(*s, *g)?;
            let named = vec![("Z".to_string(), sg.z.clone())];
            let v = match out {
                Some(path) => {
                    write_json(path, &sg)?;
                    to_value(&SumOut {
                        s: sg.s,
                        g: sg.g,
                        ell: sg.ell,
                        vertices: sg.graph.n(),
                        edges: sg.graph.edge_count(),
                        z: sg.z.clone(),
                        a: sg.a.clone(),
                        t: sg.t.clone(),
                    })
                }
                None => to_value(&sg),
            };
            Ok(Output::WithGraph(v, sg.graph, named))
        }
        Command::Reduce { source, target, out, check } => {
            let g: Graph = read_json(source)?;
            let h: Graph = read_json(target)?;
            let r = build_gstar(&g, &h)?;
            let nt_basis = if *check { Some(verify_nt_basis(&r)?) } else { None };
            if nt_basis.as_ref().is_some_and(|n| !n.passed) {
                return Err(GadgetError::Invariant("NT-basis check failed".into()).into());
            }
            let named = vec![("Zstar".to_string(), r.zstar.clone())];
            let v = match out {
                Some(path) => {
                    write_json(path, &r)?;
                    to_value(&ReduceOut {
                        source_vertices: r.source.n(),
                        gstar_vertices: r.gstar.n(),
                        gstar_edges: r.gstar.edge_count(),
                        ga_vertices: r.ga_vertices,
                        plugs: r.plug_vertices.len(),
                        tstar: r.tstar.len(),
                        ell: r.ell,
                        nt_basis,
                    })
                }
                None => to_value(&r),
            };
            Ok(Output::WithGraph(v, r.gstar, named))
        }
        Command::Witness { artifact, colouring } => {
            let r: ReductionArtifact = read_json(artifact)?;
            let colours = match read_json::<ColouringFile>(colouring)? {
                ColouringFile::Bare(c) | ColouringFile::Wrapped { colouring: c } => c,
            };
            let c = ThreeColouring::new(&r.source, colours)?;
            let phi = witness_hom(&r, &c)?;
            Ok(Output::Value(to_value(&MapJson { map: phi.into_vec() })))
        }
        Command::Extract { artifact, map } => {
            let r: ReductionArtifact = read_json(artifact)?;
            let phi = read_map(map, &r.gstar, &r.target)?;
            let c = extract_colouring(&r, &phi)?;
            Ok(Output::Value(to_value(&ColouringOut { colouring: c.0 })))
        }
        Command::Verify { suite } => {
            let cfg = gl.run_config()?;
            let reports = if suite == "all" {
                run_all(&cfg)
            } else {
                let s: Suite = suite.parse().map_err(CliError::Usage)?;
                let start = std::time::Instant::now();
                let mut r = s.run(&cfg);
                r.elapsed = start.elapsed();
                vec![r]
            };
            Ok(Output::Reports(reports))
        }
        Command::Dot { file, highlights } => {
            let value: serde_json::Value = read_json(file)?;
            let parse = |v: serde_json::Value| -> Result<_, CliError> {
                match v.get("gstar").is_some() {
                    true => {
                        let r: ReductionArtifact = from_value(file, v)?;
                        Ok((r.gstar.clone(), r.named_walks()))
                    }
                    false if v.get("graph").is_some() => {
                        let s: GadgetFile = from_value(file, v)?;
                        Ok((s.graph.clone(), s.named_walks()))
                    }
                    false => Ok((from_value::<Graph>(file, v)?, Vec::new())),
                }
            };
            let (g, named) = parse(value)?;
            let chosen = highlights
                .iter()
                .map(|name| {
                    named
                        .iter()
                        .find(|(n, _)| n == name)
                        .cloned()
                        .ok_or_else(|| CliError::Usage(format!("unknown walk `{name}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (_, w) in &chosen {
                w.validate(&g)?;
            }
            Ok(Output::Dot(export_dot(&g, &chosen)))
        }
    }
}

fn from_value<T: DeserializeOwned>(path: &Path, v: serde_json::Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn render(o: Output, format: Format) -> Result<(String, i32), CliError> {
    match (o, format) {
        (Output::Dot(text), _) => Ok((text, EXIT_OK)),
        (Output::WithGraph(_, g, named), Format::Dot) => Ok((export_dot(&g, &named), EXIT_OK)),
        (Output::Value(_) | Output::Reports(_), Format::Dot) => {
            Err(CliError::Usage("this command has no graph to render as DOT".into()))
        }
        (Output::Value(v) | Output::WithGraph(v, _, _), Format::Json) => Ok((format!("{v}\n"), EXIT_OK)),
        (Output::Value(v) | Output::WithGraph(v, _, _), Format::Text) => Ok((text_lines(&v), EXIT_OK)),
        (Output::Reports(rs), fmt) => {
            let code = exit_code(&rs);
            let text = match fmt {
                Format::Text => rs.iter().map(report_text).collect(),
                _ if rs.len() == 1 => format!("{}\n", to_value(&rs[0])),
                _ => format!("{}\n", to_value(&rs)),
            };
            Ok((text, code))
        }
    }
}

/// 1 if any suite failed, else 3 if any was inconclusive, else 0.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    let codes: Vec<i32> = reports.iter().map(VerificationReport::exit_code).collect();
    if codes.contains(&EXIT_VIOLATION) {
        EXIT_VIOLATION
    } else {
        codes.into_iter().max().unwrap_or(EXIT_OK)
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!("{} {}\n", if r.passed() { "PASS" } else { "FAIL" }, r.summary());
    for n in &r.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    for f in &r.failures {
        s.push_str(&format!("  failure {} (seed {}): {}\n", f.case, f.seed, f.message));
    }
    s
}

fn text_lines(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(m) => m.iter().map(|(k, x)| format!("{k}: {x}\n")).collect(),
        other => format!("{other}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pins_parse() {
        assert_eq!(parse_pin("3=1"), Ok((3, 1)));
        assert!(parse_pin("3").is_err());
        assert!(parse_pin("a=1").is_err());
    }

    #[test]
    fn worst_report_wins() {
        let mut bad = VerificationReport::new("x", 0);
        bad.fail("c", 1, serde_json::Value::Null, "m");
        let mut unsure = VerificationReport::new("y", 0);
        unsure.inconclusive = 1;
        let ok = VerificationReport::new("z", 0);
        assert_eq!(exit_code(&[ok.clone(), unsure.clone()]), EXIT_BUDGET);
        assert_eq!(exit_code(&[unsure, bad, ok.clone()]), EXIT_VIOLATION);
        assert_eq!(exit_code(&[ok]), EXIT_OK);
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_with_io(["homix", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run_with_io(["homix", "verify", "nope"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run_with_io(["homix", "h1", "/nonexistent/g.json"], &mut out, &mut err), EXIT_USAGE);
    }
}
