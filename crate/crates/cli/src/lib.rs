//! The `dpcolor` command line.
//!
//! Every subcommand prints one JSON document (to stdout, or to `--out`).
//! Exit codes depend on the verdict only: `0` for a positive result (a
//! transversal exists, the cover is valid, a bound was computed), `1` for a
//! certified negative one (no transversal, invalid cover, the guarantee
//! fails) and `2` for usage, parse and resource errors.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use dpcolor::bounds::zdp_search;
use dpcolor::io::{parse_cover_data, parse_edge_list, parse_graph_json, CoverData};
use dpcolor::{
    chi_dp, chi_equals_chidp_guaranteed, chromatic_number, cover_from_lists, find_transversal,
    hard_instance, is_dp_colorable_at, sigma_report, transversal_to_list_coloring,
    validate_cover, validate_explicit_cover, verify_hard_instance, zdp_n_bounds, zdp_upper,
    BoundsReport, DpError, Graph, Limits, ListAssignment, SolveResult, Status, ZdpNBounds,
};

/// Version of the JSON report layouts.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "dpcolor", about = "Exact DP-coloring toolkit", disable_version_flag = true)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Node cap for the backtracking searches.
    #[arg(long, global = true)]
    node_cap: Option<u64>,
    /// Cap on slot assignments in the DP-colorability check.
    #[arg(long, global = true)]
    max_assignments: Option<usize>,
    /// Worker threads for the refuting-cover search. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print toolkit and report-schema versions.
    #[arg(long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search a cover for a transversal.
    Solve { cover: PathBuf },
    /// DP-chromatic number, or the verdict at a single list size with --k.
    ChiDp {
        graph: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Smallest s <= s-max with chi_DP(J(G, s)) = chi(G) + s.
    #[command(name = "z-dp")]
    ZDp {
        graph: PathBuf,
        #[arg(long)]
        s_max: usize,
    },
    /// Build the lower-bound cover for an even n >= 6.
    ConstructHard {
        #[arg(long)]
        n: usize,
        /// Also run the transversal search on the cover.
        #[arg(long)]
        refute: bool,
        /// Write the cover JSON here.
        #[arg(long)]
        cover_out: Option<PathBuf>,
        /// Write the `{id: [name, i, j]}` labeling here.
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
    /// Check the cover axioms.
    VerifyCover {
        cover: PathBuf,
        /// Expect every intra-list edge to be listed.
        #[arg(long)]
        explicit: bool,
    },
    /// Closed-form upper bounds on Z_DP.
    Bounds { graph: PathBuf },
    /// List coloring through the cover reduction; lists are a JSON array of arrays.
    ReduceList { graph: PathBuf, lists: PathBuf },
    /// The list-size sufficiency condition for J(G, A).
    Sigma {
        graph: PathBuf,
        #[arg(long)]
        a_size: usize,
        /// |L(v)| per base vertex, comma separated; a single value applies to all.
        #[arg(long, value_delimiter = ',', required = true)]
        list_sizes: Vec<usize>,
        /// Smallest |L(a)| over a in A; required when --a-size > 0.
        #[arg(long)]
        a_list_min: Option<usize>,
        /// chi(G); computed when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Input(PathBuf, DpError),
    Lib(DpError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Input(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<DpError> for CliError {
    fn from(e: DpError) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    if cli.version {
        let _ = writeln!(out, "dpcolor {} (report schema {SCHEMA_VERSION})", env!("CARGO_PKG_VERSION"));
        return 0;
    }
    let Some(command) = &cli.command else {
        let _ = writeln!(err, "error: a subcommand is required, see --help");
        return 2;
    };
    let mut limits = Limits::default().with_jobs(cli.jobs);
    if let Some(cap) = cli.node_cap {
        limits = limits.with_max_nodes(cap);
    }
    if let Some(cap) = cli.max_assignments {
        limits = limits.with_max_assignments(cap);
    }
    let result = execute(command, &limits).and_then(|(text, code)| {
        match &cli.out {
            Some(path) => write_file(path, &text)?,
            None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io("<stdout>".into(), e))?,
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Edge-list text, or graph JSON when the file name ends in `.json`.
fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = read_file(path)?;
    let parsed = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_graph_json(&text)
    } else {
        parse_edge_list(&text)
    };
    parsed.map_err(|e| CliError::Input(path.to_path_buf(), e))
}

fn read_cover_data(path: &Path) -> CliResult<CoverData> {
    parse_cover_data(&read_file(path)?).map_err(|e| CliError::Input(path.to_path_buf(), e))
}

/// Pretty JSON with a trailing newline.
fn pretty(report: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

fn verdict(positive: bool) -> i32 {
    if positive {
        0
    } else {
        1
    }
}

#[derive(Serialize)]
struct ChiDpOutput {
    chi_dp: usize,
}

#[derive(Serialize)]
struct ListSizeVerdict {
    k: usize,
    colorable: bool,
    /// Decimal strings: family sizes overflow 64-bit integers quickly.
    family_size: Option<String>,
    refuting_index: Option<String>,
    refuting_cover: Option<CoverData>,
}

#[derive(Serialize)]
struct ReduceListOutput {
    result: SolveResult,
    coloring: Option<Vec<usize>>,
    /// Color of each cover vertex.
    colors: Vec<usize>,
    cover: CoverData,
}

#[derive(Serialize)]
struct BoundsOutput {
    #[serde(flatten)]
    graph: BoundsReport,
    n_bounds: ZdpNBounds,
    /// Whether `2χ - n ≥ 6(n - χ)²` forces `χ_DP = χ` for this `n` and `χ`.
    chi_equals_chidp_guaranteed: bool,
}

fn execute(command: &Command, limits: &Limits) -> CliResult<(String, i32)> {
    match command {
        Command::Solve { cover } => {
            let data = read_cover_data(cover)?;
            let c = data.to_cover().map_err(|e| CliError::Input(cover.clone(), e))?;
            let result = find_transversal(&c, limits)?;
            Ok((pretty(&result), verdict(result.is_sat())))
        }
        Command::ChiDp { graph, k: None } => {
            let g = read_graph(graph)?;
            Ok((pretty(&ChiDpOutput { chi_dp: chi_dp(&g, limits)? }), 0))
        }
        Command::ChiDp { graph, k: Some(k) } => {
            let g = read_graph(graph)?;
            let v = is_dp_colorable_at(&g, *k, limits)?;
            let report = ListSizeVerdict {
                k: v.k,
                colorable: v.colorable,
                family_size: v.family_size.map(|s| s.to_string()),
                refuting_index: v.refuting_index.map(|s| s.to_string()),
                refuting_cover: v.refuting.as_ref().map(CoverData::from_cover),
            };
            Ok((pretty(&report), verdict(v.colorable)))
        }
        Command::ZDp { graph, s_max } => {
            let g = read_graph(graph)?;
            let search = zdp_search(&g, *s_max, limits)?;
            Ok((pretty(&search), verdict(search.z_dp.is_some())))
        }
        Command::ConstructHard { n, refute, cover_out, labels_out } => {
            let report = verify_hard_instance(*n, *refute, limits)?;
            if cover_out.is_some() || labels_out.is_some() {
                let inst = hard_instance(*n)?;
                if let Some(path) = cover_out {
                    write_file(path, &pretty(&CoverData::from_cover(&inst.cover)))?;
                }
                if let Some(path) = labels_out {
                    write_file(path, &pretty(&inst.labeling))?;
                }
            }
            let negative = report.refutation == Some(Status::Unsat) || !report.all_checks_pass;
            Ok((pretty(&report), verdict(!negative)))
        }
        Command::VerifyCover { cover, explicit } => {
            let data = read_cover_data(cover)?;
            let base = data.base.to_graph().map_err(|e| CliError::Input(cover.clone(), e))?;
            let edges = data.edge_pairs();
            let report = if *explicit {
                validate_explicit_cover(&base, &data.lists, &edges)
            } else {
                validate_cover(&base, &data.lists, &edges)
            };
            Ok((pretty(&report), verdict(report.ok)))
        }
        Command::Bounds { graph } => {
            let g = read_graph(graph)?;
            let report = zdp_upper(&g, limits)?;
            let output = BoundsOutput {
                n_bounds: zdp_n_bounds(g.n()),
                chi_equals_chidp_guaranteed: chi_equals_chidp_guaranteed(g.n(), report.k),
                graph: report,
            };
            Ok((pretty(&output), 0))
        }
        Command::ReduceList { graph, lists } => {
            let g = read_graph(graph)?;
            let raw: Vec<Vec<usize>> = serde_json::from_str(&read_file(lists)?)
                .map_err(|e| CliError::Input(lists.clone(), e.into()))?;
            let lc = cover_from_lists(&g, &ListAssignment::new(raw))?;
            let result = find_transversal(&lc.cover, limits)?;
            let coloring = match &result.witness {
                Some(t) => Some(transversal_to_list_coloring(&lc, t)?),
                None => None,
            };
            let sat = result.is_sat();
            let report = ReduceListOutput {
                result,
                coloring,
                colors: lc.colors.clone(),
                cover: CoverData::from_cover(&lc.cover),
            };
            Ok((pretty(&report), verdict(sat)))
        }
        Command::Sigma { graph, a_size, list_sizes, a_list_min, k } => {
            let g = read_graph(graph)?;
            let sizes = match list_sizes.as_slice() {
                [one] if g.n() != 1 => vec![*one; g.n()],
                many => many.to_vec(),
            };
            let k = match k {
                Some(k) => *k,
                None => chromatic_number(&g, limits)?,
            };
            if *a_size > 0 && a_list_min.is_none() {
                return Err(CliError::Usage("--a-list-min is required when --a-size > 0".into()));
            }
            let report = sigma_report(&g, *a_size, &sizes, *a_list_min, k)?;
            Ok((pretty(&report), verdict(report.certified)))
        }
    }
}
