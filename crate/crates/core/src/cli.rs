//! `raagfp {fg|fpn|table|coabelian|verify|gog}`.
//!
//! Exit codes: 0 verdict true, 1 verdict false or verification failure,
//! 2 unreadable or malformed input, 3 input outside the mathematical domain
//! (zero character, rank-0 matrix, bad index), 4 internal defect.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coabelian::{fg_coabelian, fpn_coabelian, is_full, CoabelianFpn, CoabelianSpec, FullnessReport};
use crate::error::{Error, Result};
use crate::fpcheck::{analyze, check_surjective, is_fg, max_fp, Character, FpLevel, FpnReport, Normalization};
use crate::gog::{BoundsReport, EulerReport, GogDocument, GraphOfFiniteGroups};
use crate::graph::SimplicialGraph;
use crate::report::{braces, text_fields, text_table, AnalysisReport, InputEcho};
use crate::verify::{self, VerifyOptions, VerifyReport};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_DEFECT: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "raagfp", version, about = "FP_n decisions for coabelian kernels of pro-p RAAGs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for table and verify (default: all cores).
    #[arg(long, global = true, env = "RAAGFP_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite generation of Ker(χ).
    Fg {
        graph: PathBuf,
        character: PathBuf,
        /// Override the prime given in the character file.
        #[arg(long)]
        p: Option<u64>,
    },
    /// FP_n table by both routes, with the decomposition check.
    Fpn {
        graph: PathBuf,
        character: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        /// Highest degree to report (default: clique number).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// fg and max FP level for every nonempty support.
    Table {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Kernel of a matrix-defined map onto Z_p^k.
    Coabelian {
        graph: PathBuf,
        matrix: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Randomized self-check of all invariants.
    Verify {
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyOptions::default().trials)]
        trials: usize,
        #[arg(long, default_value_t = VerifyOptions::default().max_vertices)]
        max_vertices: usize,
        /// Corrupt one boundary entry in the d∘d suite (negative control).
        #[arg(long, hide = true)]
        inject_boundary_fault: bool,
    },
    /// Euler characteristic, free ranks and index bounds of a graph of finite groups.
    Gog {
        file: PathBuf,
        /// Index m of the free subgroup (default: lcm of vertex orders).
        #[arg(long)]
        index: Option<u64>,
        /// Number of multiples of the lcm listed in the rank table.
        #[arg(long, default_value_t = 4)]
        multiples: u64,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotEpimorphism | Error::FiniteQuotient | Error::IndexNotMultiple { .. } | Error::NonIntegralRank(_) => {
            EXIT_DOMAIN
        }
        _ => EXIT_INPUT,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgResult {
    pub support: Vec<String>,
    pub connected: bool,
    pub dominant: bool,
    pub fg: bool,
    pub normalization: Normalization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub support: Vec<String>,
    pub fg: bool,
    pub max_fp: FpLevel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableResult {
    pub p: u64,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoabelianResult {
    pub rank: usize,
    pub fg: bool,
    /// Zero set of a quotient whose kernel is not finitely generated.
    pub fg_witness: Option<Vec<String>>,
    pub fpn: CoabelianFpn,
    pub fullness: FullnessReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GogResult {
    pub reduced: bool,
    pub dihedral: bool,
    pub fictitious_edges: Vec<String>,
    pub reduced_form: GogDocument,
    pub euler: EulerReport,
    pub bounds: BoundsReport,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_graph(path: &Path) -> Result<SimplicialGraph> {
    SimplicialGraph::parse_json(&read(path)?)
}

fn load_character(g: &SimplicialGraph, path: &Path, p: Option<u64>) -> Result<Character> {
    let chi = Character::parse_json(g, &read(path)?)?;
    match p {
        Some(p) => chi.with_prime(p),
        None => Ok(chi),
    }
}

fn names(g: &SimplicialGraph, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter().map(|v| g.name(v).to_string()).collect()
}

fn normalization_warning(n: &Normalization, p: u64) -> Option<String> {
    n.rescaled.then(|| format!("character divided by {p}^{} to make it surjective", n.exponent))
}

fn render<T: Serialize>(report: &AnalysisReport<T>, format: Format, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => {
            let mut out = text(&report.result);
            for w in &report.warnings {
                out.push_str(&format!("\nwarning: {w}"));
            }
            out
        }
    }
}

fn yes(b: bool) -> String {
    b.to_string()
}

fn cmd_fg(graph: &Path, character: &Path, p: Option<u64>, format: Format) -> Result<(String, i32)> {
    let g = load_graph(graph)?;
    let chi = load_character(&g, character, p)?;
    let fg = is_fg(&g, &chi)?;
    let surj = check_surjective(&chi);
    let support = surj.normalized.support();
    let result = FgResult {
        support: names(&g, support.iter().copied()),
        connected: g.is_connected_within(&support),
        dominant: g.is_dominant(&support)?,
        fg,
        normalization: Normalization {
            rescaled: surj.rescaled(),
            exponent: surj.rescale_exponent,
            normalized: surj.normalized.values().to_vec(),
        },
    };
    let input = InputEcho { character: Some(chi.to_document(&g)), p: Some(chi.prime()), ..InputEcho::for_graph(&g) };
    let mut report = AnalysisReport::new("fg", input, result);
    report.warnings.extend(normalization_warning(&report.result.normalization, chi.prime()));
    let out = render(&report, format, |r| {
        text_fields(&[
            ("support", braces(&r.support)),
            ("connected", yes(r.connected)),
            ("dominant", yes(r.dominant)),
            ("fg", yes(r.fg)),
        ])
    });
    Ok((out, if fg { EXIT_TRUE } else { EXIT_FALSE }))
}

fn fpn_text(r: &FpnReport) -> String {
    let head = text_fields(&[
        ("p", r.p.to_string()),
        ("support", braces(&r.support)),
        ("connected", yes(r.connected)),
        ("dominant", yes(r.dominant)),
        ("fg", yes(r.fg)),
        ("clique number", r.clique_number.to_string()),
        ("max_fp", r.max_fp.to_string()),
        ("routes agree", yes(r.routes_agree)),
        ("decomposition", yes(r.decomposition.pass)),
    ]);
    let rows: Vec<Vec<String>> = r
        .degrees
        .iter()
        .map(|d| {
            let nonzero: Vec<String> = d
                .per_clique
                .iter()
                .filter(|c| c.dim > 0)
                .map(|c| format!("{}:H{}={}", braces(&c.clique), c.link_degree, c.dim))
                .collect();
            vec![d.n.to_string(), yes(d.fp_links), yes(d.fp_complex), d.dim_h_c.to_string(), nonzero.join(" ")]
        })
        .collect();
    format!("{head}\n\n{}", text_table(&["n", "fp_links", "fp_complex", "dim H_n(C)", "nonzero links"], &rows))
}

fn cmd_fpn(graph: &Path, character: &Path, p: Option<u64>, max_n: Option<usize>, format: Format) -> Result<(String, i32)> {
    let g = load_graph(graph)?;
    let chi = load_character(&g, character, p)?;
    let max_n = max_n.unwrap_or_else(|| g.clique_number()).max(1);
    let result = analyze(&g, &chi, max_n)?;
    let input = InputEcho {
        character: Some(chi.to_document(&g)),
        p: Some(chi.prime()),
        max_n: Some(max_n),
        ..InputEcho::for_graph(&g)
    };
    let mut report = AnalysisReport::new("fpn", input, result);
    report.warnings.extend(normalization_warning(&report.result.normalization, chi.prime()));
    let defect = !report.result.routes_agree || !report.result.decomposition.pass;
    if defect {
        report.warnings.push("defect: the complex and link routes disagree".to_string());
    }
    let code = if defect {
        EXIT_DEFECT
    } else if report.result.fp(max_n) {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    };
    Ok((render(&report, format, fpn_text), code))
}

/// One row per nonempty support, in increasing bitmask order (bit `i` is
/// vertex `i`).
pub fn support_table(g: &SimplicialGraph, p: u64, cap: usize) -> Result<TableResult> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { count: n, cap });
    }
    let rows = (1u64..1 << n)
        .into_par_iter()
        .map(|mask| {
            let support = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let chi = Character::indicator(p, n, &support)?;
            Ok(TableRow { support: names(g, support), fg: is_fg(g, &chi)?, max_fp: max_fp(g, &chi)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TableResult { p, rows })
}

fn cmd_table(graph: &Path, p: u64, cap: usize, format: Format) -> Result<(String, i32)> {
    let g = load_graph(graph)?;
    let result = support_table(&g, p, cap)?;
    let report = AnalysisReport::new("table", InputEcho { p: Some(p), ..InputEcho::for_graph(&g) }, result);
    let out = render(&report, format, |r| {
        let rows: Vec<Vec<String>> =
            r.rows.iter().map(|row| vec![braces(&row.support), yes(row.fg), row.max_fp.to_string()]).collect();
        text_table(&["support", "fg", "max_fp"], &rows)
    });
    Ok((out, EXIT_TRUE))
}

fn cmd_coabelian(
    graph: &Path,
    matrix: &Path,
    p: Option<u64>,
    max_n: Option<usize>,
    format: Format,
) -> Result<(String, i32)> {
    let g = load_graph(graph)?;
    let mut m = CoabelianSpec::parse_json(&read(matrix)?)?;
    if let Some(p) = p {
        m = CoabelianSpec::new(p, m.rows)?;
    }
    let max_n = max_n.unwrap_or_else(|| g.clique_number()).max(1);
    let fg = fg_coabelian(&g, &m)?;
    let fpn = fpn_coabelian(&g, &m, max_n)?;
    let fullness = is_full(&g, &m)?;
    let result = CoabelianResult {
        rank: m.rank(),
        fg: fg.fg,
        fg_witness: fg.witness.map(|w| names(&g, w.zero_set)),
        fpn,
        fullness,
    };
    let input =
        InputEcho { matrix: Some(m.clone()), p: Some(m.p), max_n: Some(max_n), ..InputEcho::for_graph(&g) };
    let mut report = AnalysisReport::new("coabelian", input, result);
    if report.result.fpn.per_pattern.iter().any(|r| !r.report.routes_agree || !r.report.decomposition.pass) {
        report.warnings.push("defect: the complex and link routes disagree".to_string());
    }
    let code = if !report.warnings.is_empty() {
        EXIT_DEFECT
    } else if report.result.fpn.fp {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    };
    let out = render(&report, format, |r| {
        let head = text_fields(&[
            ("rank", r.rank.to_string()),
            ("patterns", r.fpn.per_pattern.len().to_string()),
            ("fg", yes(r.fg)),
            ("fg witness", r.fg_witness.as_ref().map_or("-".to_string(), |w| braces(w))),
            (&format!("FP_{}", r.fpn.n), yes(r.fpn.fp)),
            ("full", yes(r.fullness.full)),
            ("marker", r.fullness.marker.clone().unwrap_or_else(|| "-".to_string())),
        ]);
        let rows: Vec<Vec<String>> = r
            .fpn
            .per_pattern
            .iter()
            .map(|pr| {
                let cert: Vec<String> = pr.pattern.certificate.iter().map(|c| c.to_string()).collect();
                vec![
                    braces(&pr.zero_set_names),
                    format!("({})", cert.join(",")),
                    yes(pr.report.fg),
                    pr.report.max_fp.to_string(),
                ]
            })
            .collect();
        format!("{head}\n\n{}", text_table(&["zero set", "certificate", "fg", "max_fp"], &rows))
    });
    Ok((out, code))
}

fn cmd_verify(opts: VerifyOptions, format: Format) -> (String, i32) {
    let result: VerifyReport = verify::run(&opts);
    let code = if result.pass { EXIT_TRUE } else { EXIT_FALSE };
    let input = InputEcho { seed: Some(opts.seed), ..Default::default() };
    let report = AnalysisReport::new("verify", input, result);
    let out = render(&report, format, |r| {
        let rows: Vec<Vec<String>> = r
            .suites
            .iter()
            .map(|s| vec![s.name.clone(), s.instances.to_string(), s.failures.to_string()])
            .collect();
        let mut out = text_table(&["suite", "instances", "failures"], &rows);
        for s in r.suites.iter().filter(|s| s.witness.is_some()) {
            out.push_str(&format!("\nminimal failing instance ({}): {}", s.name, s.witness.as_deref().unwrap_or("")));
        }
        out.push_str(&format!("\n{}", if r.pass { "PASS" } else { "FAIL" }));
        out
    });
    (out, code)
}

fn cmd_gog(file: &Path, index: Option<u64>, multiples: u64, format: Format) -> Result<(String, i32)> {
    let x = GraphOfFiniteGroups::parse_json(&read(file)?)?;
    let m = index.unwrap_or_else(|| x.lcm_vertex_orders());
    let result = GogResult {
        reduced: x.is_reduced(),
        dihedral: x.is_dihedral_type(),
        fictitious_edges: x.fictitious_edges().into_iter().map(String::from).collect(),
        reduced_form: x.reduce().to_document(),
        euler: x.euler_report(multiples)?,
        bounds: x.check_bounds(m)?,
    };
    let input = InputEcho { graph_of_groups: Some(x.to_document()), index: Some(m), ..Default::default() };
    let mut report = AnalysisReport::new("gog", input, result);
    report.warnings.extend(report.result.bounds.defects.iter().map(|d| format!("defect: {d}")));
    let code = if report.result.bounds.all_hold() { EXIT_TRUE } else { EXIT_DEFECT };
    let out = render(&report, format, |r| {
        let head = text_fields(&[
            ("chi", r.euler.chi.clone()),
            ("lcm", r.euler.lcm_orders.to_string()),
            ("reduced", yes(r.reduced)),
            ("dihedral", yes(r.dihedral)),
            ("fictitious", if r.fictitious_edges.is_empty() { "-".into() } else { r.fictitious_edges.join(",") }),
            ("index", r.bounds.index.to_string()),
            ("rank", r.bounds.rank.to_string()),
        ]);
        let ranks: Vec<Vec<String>> =
            r.euler.ranks.iter().map(|e| vec![e.index.to_string(), e.rank.to_string()]).collect();
        let edges: Vec<Vec<String>> = r
            .bounds
            .edges
            .iter()
            .map(|e| {
                let a: Vec<String> =
                    e.vertex_index.iter().map(|b| format!("{}:{}{}", b.vertex, b.index, if b.holds { "" } else { "!" })).collect();
                let b = match e.holds_b {
                    Some(h) => format!("{} ({})", e.coset_index, if h { "ok" } else { "FAILS" }),
                    None => "skipped".to_string(),
                };
                vec![e.edge.clone(), a.join(" "), b]
            })
            .collect();
        let mut out = format!(
            "{head}\n\n{}\n\n{}",
            text_table(&["m", "rank"], &ranks),
            text_table(&["edge", "(a) [G_v:G_e]", "(b) [G:FG_e]"], &edges)
        );
        if let Some(reason) = &r.bounds.bound_b_skipped {
            out.push_str(&format!("\n(b) skipped: {reason}"));
        }
        out
    });
    Ok((out, code))
}

fn dispatch(cli: Cli) -> Result<(String, i32)> {
    let format = cli.format;
    match cli.command {
        Command::Fg { graph, character, p } => cmd_fg(&graph, &character, p, format),
        Command::Fpn { graph, character, p, max_n } => cmd_fpn(&graph, &character, p, max_n, format),
        Command::Table { graph, p, cap } => cmd_table(&graph, p, cap, format),
        Command::Coabelian { graph, matrix, p, max_n } => cmd_coabelian(&graph, &matrix, p, max_n, format),
        Command::Verify { seed, trials, max_vertices, inject_boundary_fault } => {
            Ok(cmd_verify(VerifyOptions { seed, trials, max_vertices, inject_boundary_fault }, format))
        }
        Command::Gog { file, index, multiples } => cmd_gog(&file, index, multiples, format),
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code }
            } else {
                Outcome { stdout: text, stderr: String::new(), code }
            };
        }
    };
    let pool = match cli.jobs {
        Some(0) => return Outcome { stdout: String::new(), stderr: "error: --jobs must be positive\n".into(), code: EXIT_INPUT },
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .expect("thread pool");
    match pool.install(|| dispatch(cli)) {
        Ok((mut stdout, code)) => {
            stdout.push('\n');
            Outcome { stdout, stderr: String::new(), code }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) },
    }
}
