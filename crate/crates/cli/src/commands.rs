use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nbhdcx::asymptotics::{
    cor1_window, cor2_alpha_bounds, cor3_window, cor4_alpha_window, extension_bound,
    sharp_threshold_alpha, theorem1_bound, theorem1_log10, theorem2_bound, theorem2_log10,
    WindowReport,
};
use nbhdcx::certificates::{analyze_clique, bound_comparison, find_sphere_certificates};
use nbhdcx::complex::{
    closed_set_poset, lovasz_retract, neighborhood_complex, FaceSource, GraphFaces,
    SimplicialComplex,
};
use nbhdcx::experiments::{
    aggregate, betti_sweep, records_to_csv, records_to_jsonl, run_survey, summary_to_csv,
    ExperimentConfig, Features, RecordFormat,
};
use nbhdcx::graph::{
    gnp_sample, maximal_cliques, parse_edge_list, serialize_edge_list, GnpParams, Graph,
    NamedGraph,
};
use nbhdcx::homology::{
    compute_homology, graph_homology, graph_homology_auto, Coefficients, HomologyRoute,
};
use nbhdcx::{Caps, Error, Result};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "nbhdcx", version, about = "Neighborhood complexes of graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph as an edge list: a named family or a G(n, p) sample.
    Gen(GenArgs),
    /// Facets of the neighborhood complex.
    Complex(ComplexArgs),
    /// Reduced homology of a complex or of a graph's neighborhood complex.
    Homology(HomologyArgs),
    /// Closed-set poset and Lovász retract of a graph.
    Retract(RetractArgs),
    /// Sphere certificates from maximal cliques.
    Certify(CertifyArgs),
    /// Probability bounds and threshold windows.
    Bounds(BoundsArgs),
    /// Chromatic number against its lower bounds.
    Chromatic(ChromaticArgs),
    /// Seeded survey over G(n, p).
    Survey(SurveyArgs),
    /// Betti-number sweep across a p grid with a local-maxima diagnostic.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Edge-list file (`n <count>` header, then `u v` lines).
    #[arg(short = 'i', long = "input", conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Named family, e.g. `complete:5`, `cycle:7`, `kneser:2,1`, `xn:3`.
    #[arg(long)]
    family: Option<NamedGraph>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        match (&self.input, &self.family) {
            (Some(path), None) => parse_edge_list(&fs::read_to_string(path)?),
            (None, Some(f)) => f.build(),
            _ => Err(Error::Argument("give a graph with -i PATH or --family SPEC".into())),
        }
    }
}

#[derive(Args, Debug)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

#[derive(Args, Debug, Default)]
struct CapArgs {
    /// Vertex cap for maximal-clique enumeration.
    #[arg(long)]
    clique_cap: Option<usize>,
    /// Vertex cap for the exhaustive strict-balance check.
    #[arg(long)]
    balance_cap: Option<usize>,
    /// Vertex cap for building the closed-set poset.
    #[arg(long)]
    poset_vertex_cap: Option<usize>,
    /// Cap on the number of closed sets.
    #[arg(long)]
    poset_cap: Option<usize>,
    /// Cap on maximal chains in the retract.
    #[arg(long)]
    chain_cap: Option<usize>,
    /// Cap on faces enumerated for a chain complex.
    #[arg(long)]
    face_cap: Option<usize>,
    /// Cap on subset evaluations in exhaustive searches.
    #[arg(long)]
    work_cap: Option<u64>,
    /// Vertex cap for the exact chromatic solver.
    #[arg(long)]
    chromatic_cap: Option<usize>,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            clique_vertices: self.clique_cap.unwrap_or(d.clique_vertices),
            balance_vertices: self.balance_cap.unwrap_or(d.balance_vertices),
            poset_vertices: self.poset_vertex_cap.unwrap_or(d.poset_vertices),
            poset_elements: self.poset_cap.unwrap_or(d.poset_elements),
            chains: self.chain_cap.unwrap_or(d.chains),
            faces: self.face_cap.unwrap_or(d.faces),
            search_work: self.work_cap.unwrap_or(d.search_work),
            chromatic_vertices: self.chromatic_cap.unwrap_or(d.chromatic_vertices),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CoeffArg {
    Z,
    F2,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Auto,
    Retract,
    Direct,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Named family, e.g. `complete:4`.
    #[arg(long, conflicts_with_all = ["n", "p"])]
    family: Option<NamedGraph>,
    /// Vertex count for a G(n, p) sample.
    #[arg(long, requires = "p")]
    n: Option<usize>,
    /// Edge probability for a G(n, p) sample.
    #[arg(long, requires = "n")]
    p: Option<f64>,
    /// Seed for G(n, p).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ComplexArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long, value_enum, default_value_t = TextFormat::Json)]
    format: TextFormat,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct HomologyArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Read the input file as an edge list and use its neighborhood complex.
    /// Without it the file is a facet list.
    #[arg(long = "graph")]
    graph_input: bool,
    /// Highest dimension to compute; the whole complex when omitted.
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = CoeffArg::Both)]
    coeff: CoeffArg,
    /// Chain complex used for graphs.
    #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
    route: RouteArg,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct RetractArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Also report, for every maximal clique, the obstruction analysis and
    /// any X_n extension.
    #[arg(long)]
    analyze: bool,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Vanishing window for l at p = 1/2 (needs --n, --eps).
    #[arg(long)]
    cor1: bool,
    /// Alpha thresholds for H_l (needs --l).
    #[arg(long)]
    cor2: bool,
    /// Non-vanishing window for k at p = 1/2 (needs --n, --eps).
    #[arg(long)]
    cor3: bool,
    /// Alpha window for H_k (needs --k).
    #[arg(long)]
    cor4: bool,
    /// C(n,i)(1-p^i)^(n-i) (needs --n, --i, --p).
    #[arg(long)]
    theorem1: bool,
    /// C(n,j)C(n,k)p^(jk) (needs --n, --j, --k, --p).
    #[arg(long)]
    theorem2: bool,
    /// n p^(k+2) (needs --n, --p, --k).
    #[arg(long)]
    extension: bool,
    /// Sharp threshold exponent of a strictly balanced graph (needs a graph).
    #[arg(long)]
    threshold: bool,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    i: Option<u64>,
    #[arg(long)]
    j: Option<u64>,
    #[arg(long)]
    p: Option<f64>,
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long, value_enum, default_value_t = TextFormat::Json)]
    format: TextFormat,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ChromaticArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    format: TableFormat,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct SurveyCommon {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    no_homology: bool,
    #[arg(long)]
    no_neighborliness: bool,
    #[arg(long)]
    no_certificates: bool,
    #[arg(long)]
    no_clique_stats: bool,
    /// Record per-trial wall time (makes output irreproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value_t = RecordsFormat::Jsonl)]
    format: RecordsFormat,
    /// Write the aggregated summary as JSON to this file.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Write the summary table as CSV to this file.
    #[arg(long)]
    summary_csv: Option<PathBuf>,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RecordsFormat {
    Jsonl,
    Csv,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    /// Edge probabilities, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<f64>,
    #[command(flatten)]
    common: SurveyCommon,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Number of evenly spaced grid points in [0, 1].
    #[arg(long, default_value_t = 11, conflicts_with = "p")]
    points: usize,
    /// Explicit grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[command(flatten)]
    common: SurveyCommon,
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Domain(e.to_string()))
}

fn need<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Argument(format!("{what} needs --{flag}")))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Complex(a) => complex(a),
        Command::Homology(a) => homology(a),
        Command::Retract(a) => retract(a),
        Command::Certify(a) => certify(a),
        Command::Bounds(a) => bounds(a),
        Command::Chromatic(a) => chromatic(a),
        Command::Survey(a) => survey(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn gen(a: GenArgs) -> Result<()> {
    let g = match (&a.family, a.n, a.p) {
        (Some(f), None, None) => f.build()?,
        (None, Some(n), Some(p)) => gnp_sample(&GnpParams::new(n, p, a.seed)?)?,
        _ => return Err(Error::Argument("give --family SPEC or --n N --p P".into())),
    };
    a.out.emit(&serialize_edge_list(&g))
}

fn complex(a: ComplexArgs) -> Result<()> {
    let c = neighborhood_complex(&a.graph.load()?)?;
    let text = match a.format {
        TextFormat::Text => c.to_facet_text(),
        TextFormat::Json => to_json(&json!({
            "dimension": c.dimension(),
            "facets": c.facets(),
        }))?,
    };
    a.out.emit(&text)
}

fn coefficients(c: CoeffArg) -> Coefficients {
    match c {
        CoeffArg::Z => Coefficients::Z,
        CoeffArg::F2 => Coefficients::F2,
        CoeffArg::Both => Coefficients::Both,
    }
}

fn homology(a: HomologyArgs) -> Result<()> {
    let caps = a.caps.caps();
    let coeff = coefficients(a.coeff);
    let is_graph = a.graph_input || a.graph.family.is_some();
    let result = if is_graph {
        let g = a.graph.load()?;
        match a.route {
            RouteArg::Auto => graph_homology_auto(&g, a.max_dim, coeff, &caps)?.result,
            RouteArg::Retract | RouteArg::Direct => {
                let route = if a.route == RouteArg::Retract {
                    HomologyRoute::Retract
                } else {
                    HomologyRoute::Direct
                };
                let dim = match a.max_dim {
                    Some(d) => d,
                    None if route == HomologyRoute::Retract => {
                        closed_set_poset(&g, &caps)?.height().max(0) as usize
                    }
                    None => GraphFaces::new(&g)?.dimension().max(0) as usize,
                };
                graph_homology(&g, route, dim, coeff, &caps)?
            }
        }
    } else {
        let path = a
            .graph
            .input
            .as_ref()
            .ok_or_else(|| Error::Argument("give a facet-list file with -i PATH".into()))?;
        let c = SimplicialComplex::parse_facet_text(&fs::read_to_string(path)?)?;
        let dim = a.max_dim.unwrap_or(c.dimension().max(0) as usize);
        let mut h = compute_homology(&c, dim, coeff, &caps)?;
        h.empty = c.is_empty();
        h
    };
    a.out.emit(&(result.to_json() + "\n"))
}

fn retract(a: RetractArgs) -> Result<()> {
    let caps = a.caps.caps();
    let g = a.graph.load()?;
    let p = closed_set_poset(&g, &caps)?;
    let r = lovasz_retract(&p, &caps)?;
    a.out.emit(&to_json(&json!({
        "poset": p.to_json(),
        "height": p.height(),
        "retract": {"dimension": r.dimension(), "facets": r.facets()},
    }))?)
}

fn certify(a: CertifyArgs) -> Result<()> {
    let caps = a.caps.caps();
    let g = a.graph.load()?;
    let certs = find_sphere_certificates(&g, &caps)?;
    if !a.analyze {
        return a.out.emit(&to_json(&certs)?);
    }
    let analyses = maximal_cliques(&g, &caps)?
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| analyze_clique(&g, &c))
        .collect::<Result<Vec<_>>>()?;
    a.out.emit(&to_json(&json!({
        "certificates": certs,
        "cliques": analyses,
    }))?)
}

fn window_text(r: &WindowReport) -> String {
    let exact = |e: &Option<String>, x: f64| e.clone().unwrap_or_else(|| format!("{x:.6}"));
    let mut s = format!(
        "{:<20} {:>14} {:>14}  {}\n",
        serde_json::to_value(r.kind).unwrap().as_str().unwrap(),
        exact(&r.exact_lower, r.lower),
        exact(&r.exact_upper, r.upper),
        r.precision
    );
    for note in &r.notes {
        s.push_str(&format!("  note: {note}\n"));
    }
    s
}

fn bounds(a: BoundsArgs) -> Result<()> {
    let chosen = [
        a.cor1, a.cor2, a.cor3, a.cor4, a.theorem1, a.theorem2, a.extension, a.threshold,
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen != 1 {
        return Err(Error::Argument(
            "choose exactly one of --cor1 --cor2 --cor3 --cor4 --theorem1 --theorem2 --extension --threshold".into(),
        ));
    }
    let report = if a.cor1 {
        Some(cor1_window(need(a.n, "n", "cor1")?, a.eps.unwrap_or(0.0))?)
    } else if a.cor2 {
        Some(cor2_alpha_bounds(need(a.l, "l", "cor2")?))
    } else if a.cor3 {
        Some(cor3_window(need(a.n, "n", "cor3")?, a.eps.unwrap_or(0.0))?)
    } else if a.cor4 {
        Some(cor4_alpha_window(need(a.k, "k", "cor4")?)?)
    } else {
        None
    };
    if let Some(r) = report {
        return a.out.emit(&match a.format {
            TextFormat::Json => to_json(&r)?,
            TextFormat::Text => window_text(&r),
        });
    }
    let value = if a.theorem1 {
        let (n, i, p) = (need(a.n, "n", "theorem1")?, need(a.i, "i", "theorem1")?, need(a.p, "p", "theorem1")?);
        json!({"kind": "theorem1", "n": n, "i": i, "p": p,
               "value": theorem1_bound(n, i, p)?, "log10": theorem1_log10(n, i, p)?})
    } else if a.theorem2 {
        let n = need(a.n, "n", "theorem2")?;
        let (j, k, p) = (need(a.j, "j", "theorem2")?, need(a.k, "k", "theorem2")?, need(a.p, "p", "theorem2")?);
        json!({"kind": "theorem2", "n": n, "j": j, "k": k, "p": p,
               "value": theorem2_bound(n, j, k, p)?, "log10": theorem2_log10(n, j, k, p)?})
    } else if a.extension {
        let (n, p, k) = (need(a.n, "n", "extension")?, need(a.p, "p", "extension")?, need(a.k, "k", "extension")?);
        json!({"kind": "extension", "n": n, "p": p, "k": k, "value": extension_bound(n, p, k)?})
    } else {
        let g = a.graph.load()?;
        let alpha = sharp_threshold_alpha(&g, &a.caps.caps())?;
        json!({"kind": "threshold", "alpha": format!("{}/{}", alpha.numer(), alpha.denom()),
               "value": *alpha.numer() as f64 / *alpha.denom() as f64})
    };
    a.out.emit(&match a.format {
        TextFormat::Json => to_json(&value)?,
        TextFormat::Text => {
            let obj = value.as_object().unwrap();
            obj.iter().map(|(k, v)| format!("{k:<8} {v}\n")).collect()
        }
    })
}

fn chromatic(a: ChromaticArgs) -> Result<()> {
    let r = bound_comparison(&a.graph.load()?, &a.caps.caps())?;
    a.out.emit(&match a.format {
        TableFormat::Json => to_json(&r)?,
        TableFormat::Csv => {
            let o = |v: Option<String>| v.unwrap_or_default();
            format!(
                "vertices,edges,chromatic_number,clique_number,neighborliness_bound,homological_connectivity,heuristic_connectivity_bound,best_sphere_dim\n{},{},{},{},{},{},{},{}\n",
                r.vertices,
                r.edges,
                o(r.chromatic_number.map(|x| x.to_string())),
                o(r.clique_number.map(|x| x.to_string())),
                o(r.neighborliness_bound.map(|x| x.to_string())),
                o(r.homological_connectivity.map(|x| x.to_string())),
                o(r.heuristic_connectivity_bound.map(|x| x.to_string())),
                o(r.best_sphere_dim.map(|x| x.to_string())),
            )
        }
    })
}

fn config(common: &SurveyCommon, p_grid: Vec<f64>) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(common.n, p_grid, common.trials, common.seed, common.max_dim);
    cfg.features = Features {
        homology: !common.no_homology,
        neighborliness: !common.no_neighborliness,
        certificates: !common.no_certificates,
        clique_stats: !common.no_clique_stats,
    };
    cfg.caps = common.caps.caps();
    cfg.record_timing = common.timing;
    cfg
}

fn emit_survey(
    common: &SurveyCommon,
    records: &[nbhdcx::experiments::TrialRecord],
    summary: &nbhdcx::experiments::SurveySummary,
) -> Result<()> {
    let format = match common.format {
        RecordsFormat::Jsonl => RecordFormat::Jsonl,
        RecordsFormat::Csv => RecordFormat::Csv,
    };
    let text = match format {
        RecordFormat::Jsonl => records_to_jsonl(records)?,
        RecordFormat::Csv => records_to_csv(records)?,
    };
    common.out.emit(&text)?;
    if let Some(path) = &common.summary {
        fs::write(path, to_json(summary)?)?;
    }
    if let Some(path) = &common.summary_csv {
        fs::write(path, summary_to_csv(summary)?)?;
    }
    Ok(())
}

fn survey(a: SurveyArgs) -> Result<()> {
    let cfg = config(&a.common, a.p);
    let records = run_survey(&cfg, a.common.jobs)?;
    let summary = aggregate(&records, &cfg)?;
    emit_survey(&a.common, &records, &summary)
}

fn sweep(a: SweepArgs) -> Result<()> {
    let grid = match a.p {
        Some(g) => g,
        None => {
            if a.points < 2 {
                return Err(Error::Argument("--points must be at least 2".into()));
            }
            let m = (a.points - 1) as f64;
            (0..a.points).map(|i| i as f64 / m).collect()
        }
    };
    let cfg = config(&a.common, grid);
    let (records, summary) = betti_sweep(&cfg, a.common.jobs)?;
    emit_survey(&a.common, &records, &summary)
}
