//! Command line front end: decide curvature conditions on a graph read from
//! a file (or built from a named family), report per-vertex curvature data,
//! compute girths, sweep the small-graph classification, and survey the
//! physical stars.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cdg_core::{
    cd_at, curvature::CurvatureReport, decimal_string, exact_string, graph_reports, make_family,
    parse_graph, parse_number, rational_to_f64, resolve_star_question, significant_digits,
    verify_classification, ClassificationOutcome, Dimension, EnumerationConfig, Family,
    LaplacianMode, Rational, SmallGraph, StarVerdict, Vertex, WeightedGraph,
};

#[derive(Parser)]
#[command(
    name = "cdg",
    version,
    about = "Curvature dimension conditions on weighted graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Normalized,
    Physical,
    Custom,
}

impl From<ModeArg> for LaplacianMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Normalized => LaplacianMode::Normalized,
            ModeArg::Physical => LaplacianMode::Physical,
            ModeArg::Custom => LaplacianMode::Custom,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether CD(K, n) holds at every vertex
    Check {
        /// Graph file, or a family shorthand such as family:cycle:5
        #[arg(long)]
        input: String,
        /// Laplacian normalization of the graph
        #[arg(long, value_enum, default_value_t = ModeArg::Normalized)]
        mode: ModeArg,
        /// Curvature lower bound, a decimal or fraction p/q
        #[arg(long = "K", default_value = "0", allow_hyphen_values = true)]
        k: String,
        /// Dimension parameter, a positive decimal, fraction, or "inf"
        #[arg(long, default_value = "inf")]
        n: String,
        /// Decide with exact rational arithmetic
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Per-vertex curvature report: degree, girth, curvature weights, the
    /// exact CD(0, inf) verdict, and the largest feasible K
    CurvatureMap {
        /// Graph file, or a family shorthand such as family:cycle:5
        #[arg(long)]
        input: String,
        /// Laplacian normalization of the graph
        #[arg(long, value_enum, default_value_t = ModeArg::Normalized)]
        mode: ModeArg,
        /// Also list the curvature weights alpha as exact fractions
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Shortest cycle through each vertex and through the graph
    Girth {
        /// Graph file, or a family shorthand such as family:cycle:5
        #[arg(long)]
        input: String,
        /// Laplacian normalization of the graph
        #[arg(long, value_enum, default_value_t = ModeArg::Normalized)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Enumerate small connected graph classes, test CD(0, inf) on each,
    /// and compare the survivors against the predicted families
    Enumerate {
        /// Largest vertex count to enumerate (at most 8)
        #[arg(long, default_value_t = 7)]
        max_vertices: u8,
        /// Keep only graphs with at least this minimum degree
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
        /// Keep only graphs with no cycle shorter than this
        #[arg(long, default_value_t = 5)]
        girth_floor: u32,
        /// Laplacian normalization (normalized or physical)
        #[arg(long, value_enum, default_value_t = ModeArg::Normalized)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Survey stars with the physical Laplacian: exact CD(0, inf) verdicts
    /// at the center and a pendant for each leg count
    ResolveStar {
        /// Largest leg count to survey (at least 6)
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(cmd: Cmd) -> Result<ExitCode, AnyError> {
    match cmd {
        Cmd::Check {
            input,
            mode,
            k,
            n,
            exact,
            format,
        } => check(&input, mode.into(), &k, &n, exact, format),
        Cmd::CurvatureMap {
            input,
            mode,
            exact,
            format,
        } => curvature_map(&input, mode.into(), exact, format),
        Cmd::Girth {
            input,
            mode,
            format,
        } => girth(&input, mode.into(), format),
        Cmd::Enumerate {
            max_vertices,
            min_degree,
            girth_floor,
            mode,
            format,
        } => enumerate(
            EnumerationConfig {
                max_vertices,
                min_degree,
                girth_floor,
            },
            mode.into(),
            format,
        ),
        Cmd::ResolveStar { max_n, format } => resolve_star(max_n, format),
    }
}

fn load_graph(input: &str, mode: LaplacianMode) -> Result<WeightedGraph, AnyError> {
    if let Some(shorthand) = input.strip_prefix("family:") {
        let family: Family = shorthand.parse()?;
        return Ok(make_family(family, mode)?);
    }
    let text = std::fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))?;
    Ok(parse_graph(&text, mode)?)
}

fn rat_str(r: &Rational) -> String {
    decimal_string(r).unwrap_or_else(|| exact_string(r))
}

fn parse_k(text: &str) -> Result<Rational, AnyError> {
    parse_number(text).ok_or_else(|| format!("invalid curvature bound `{text}`").into())
}

fn parse_dim(text: &str) -> Result<Dimension<Rational>, AnyError> {
    if text == "inf" {
        return Ok(Dimension::Infinite);
    }
    let n = parse_number(text).ok_or_else(|| format!("invalid dimension `{text}`"))?;
    Ok(Dimension::finite(n)?)
}

fn dim_str(dim: &Dimension<Rational>) -> String {
    match dim {
        Dimension::Finite(n) => rat_str(n),
        Dimension::Infinite => "inf".into(),
    }
}

fn check(
    input: &str,
    mode: LaplacianMode,
    k_text: &str,
    n_text: &str,
    exact: bool,
    format: FormatArg,
) -> Result<ExitCode, AnyError> {
    let g = load_graph(input, mode)?;
    let k = parse_k(k_text)?;
    let dim = parse_dim(n_text)?;

    let mut verdicts: Vec<(Vertex, bool)> = Vec::new();
    if exact {
        for x in g.vertices() {
            verdicts.push((x, cd_at::<Rational>(&g, &k, &dim, x)?));
        }
    } else {
        let kf = rational_to_f64(&k);
        let dimf = match &dim {
            Dimension::Finite(n) => Dimension::Finite(rational_to_f64(n)),
            Dimension::Infinite => Dimension::Infinite,
        };
        for x in g.vertices() {
            verdicts.push((x, cd_at::<f64>(&g, &kf, &dimf, x)?));
        }
    }
    let failing: Vec<Vertex> = verdicts
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|&(x, _)| x)
        .collect();

    let mut out = String::new();
    match format {
        FormatArg::Text => {
            let label = format!("CD({}, {})", rat_str(&k), dim_str(&dim));
            if failing.is_empty() {
                writeln!(out, "{label} holds at every vertex")?;
            } else {
                let list = failing
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(
                    out,
                    "{label} fails at {} of {} vertices: {list}",
                    failing.len(),
                    g.vertex_count()
                )?;
            }
        }
        FormatArg::Tsv => {
            writeln!(out, "vertex\tcd")?;
            for (x, ok) in &verdicts {
                writeln!(out, "{x}\t{ok}")?;
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::from(if failing.is_empty() { 0 } else { 1 }))
}

fn curvature_map(
    input: &str,
    mode: LaplacianMode,
    exact: bool,
    format: FormatArg,
) -> Result<ExitCode, AnyError> {
    let g = load_graph(input, mode)?;
    let reports = graph_reports(&g)?;
    let mut out = String::new();
    match format {
        FormatArg::Text => {
            for r in &reports {
                write_report_line(&mut out, r)?;
                if exact {
                    let alphas = r
                        .alphas
                        .iter()
                        .map(|(y, a)| format!("{y} -> {}", exact_string(a)))
                        .collect::<Vec<_>>()
                        .join(", ");
                    writeln!(out, "  alpha: {alphas}")?;
                }
            }
        }
        FormatArg::Tsv => {
            writeln!(out, "vertex\tdegree\tgirth\tq\tcd0inf\tK")?;
            for r in &reports {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.vertex,
                    r.degree,
                    r.girth,
                    r.q,
                    r.cd_zero_infinity,
                    significant_digits(r.curvature_value)
                )?;
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn write_report_line(out: &mut String, r: &CurvatureReport) -> Result<(), AnyError> {
    writeln!(
        out,
        "vertex {}: degree {}, girth {}, q {}, cd0inf {}, K {}",
        r.vertex,
        r.degree,
        r.girth,
        r.q,
        if r.cd_zero_infinity { "pass" } else { "fail" },
        significant_digits(r.curvature_value)
    )?;
    Ok(())
}

fn girth(input: &str, mode: LaplacianMode, format: FormatArg) -> Result<ExitCode, AnyError> {
    let g = load_graph(input, mode)?;
    let mut out = String::new();
    match format {
        FormatArg::Text => {
            writeln!(out, "graph girth: {}", g.girth())?;
            for x in g.vertices() {
                writeln!(out, "vertex {x}: {}", g.girth_at(x)?)?;
            }
        }
        FormatArg::Tsv => {
            writeln!(out, "vertex\tgirth")?;
            for x in g.vertices() {
                writeln!(out, "{x}\t{}", g.girth_at(x)?)?;
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn edges_str(g: &SmallGraph) -> String {
    g.edges()
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn family_str(family: Option<Family>) -> String {
    family.map_or_else(|| "none".into(), |f| f.to_string())
}

fn enumerate(
    opts: EnumerationConfig,
    mode: LaplacianMode,
    format: FormatArg,
) -> Result<ExitCode, AnyError> {
    let outcome: ClassificationOutcome = verify_classification(&opts, mode)?;
    let mut out = String::new();
    match format {
        FormatArg::Text => {
            writeln!(
                out,
                "classes: {} (max vertices {}, min degree {}, girth floor {}, {} mode)",
                outcome.total_classes,
                opts.max_vertices,
                opts.min_degree,
                opts.girth_floor,
                outcome.mode
            )?;
            writeln!(out, "survivors: {}", outcome.survivors.len())?;
            for s in &outcome.survivors {
                let flag = if s.expected { "" } else { "  UNEXPECTED" };
                writeln!(
                    out,
                    "  n={} edges={} family={}{flag}",
                    s.graph.vertex_count(),
                    edges_str(&s.graph),
                    family_str(s.family)
                )?;
            }
            let t = outcome.tally;
            writeln!(
                out,
                "tally: paths {}, cycles {}, stars {}, star3ext {}, unrecognized {}",
                t.paths, t.cycles, t.stars, t.star3exts, t.unrecognized
            )?;
            let anomalies = outcome.anomalies();
            if anomalies.is_empty() {
                writeln!(out, "anomalies: none")?;
            } else {
                writeln!(out, "anomalies: {}", anomalies.len())?;
            }
        }
        FormatArg::Tsv => {
            writeln!(out, "vertices\tedges\tfamily\texpected")?;
            for s in &outcome.survivors {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    s.graph.vertex_count(),
                    edges_str(&s.graph),
                    family_str(s.family),
                    s.expected
                )?;
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::from(if outcome.is_clean() { 0 } else { 1 }))
}

fn resolve_star(max_n: usize, format: FormatArg) -> Result<ExitCode, AnyError> {
    let verdicts: Vec<StarVerdict> = resolve_star_question(max_n)?;
    let mut out = String::new();
    let word = |ok: bool| if ok { "pass" } else { "fail" };
    match format {
        FormatArg::Text => {
            for v in &verdicts {
                writeln!(
                    out,
                    "legs {}: center {}, pendant {}, overall {}",
                    v.legs,
                    word(v.center),
                    word(v.pendant),
                    word(v.overall)
                )?;
            }
        }
        FormatArg::Tsv => {
            writeln!(out, "legs\tcenter\tpendant\toverall")?;
            for v in &verdicts {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    v.legs, v.center, v.pendant, v.overall
                )?;
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}
