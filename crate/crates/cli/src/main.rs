use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use cyclespace::caps::{Caps, CAPS_ENV};
use cyclespace::cube::cube_report;
use cyclespace::family::{uniqueness, GraphFamily};
use cyclespace::graph::{canonical_graph, torus_graph_capped, GraphFile, MetricFile, OrientedGraph};
use cyclespace::invariant::{commutant_dimension, commutant_family_with, projection_report, ProjectionReport, AUTO};
use cyclespace::symmetry::{find_automorphisms, torus_generators, GroupSpec};
use cyclespace::transport::{dual_certificate, tc_norm, wasserstein1, TransportationProblem};
use cyclespace::Rational;

#[derive(Parser)]
#[command(name = "cyclespace", version, about = "Exact cycle spaces, invariant projections and transportation cost norms")]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CapArgs {
    /// Size limits as key=value pairs, e.g. "vertices=512,group=2000000".
    /// Keys: vertices, group, averaging, edges, torus.
    #[arg(long, global = true, env = CAPS_ENV)]
    caps: Option<String>,
    /// Override the vertex cap.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    /// Override the group order cap.
    #[arg(long, global = true)]
    max_group: Option<usize>,
    /// Override the edge cap for dense matrices.
    #[arg(long, global = true)]
    max_edges: Option<usize>,
}

impl CapArgs {
    fn resolve(&self) -> Result<Caps> {
        let mut caps = match &self.caps {
            Some(spec) => Caps::parse(spec)?,
            None => Caps::default(),
        };
        if let Some(v) = self.max_vertices {
            caps.max_vertices = v;
        }
        if let Some(v) = self.max_group {
            caps.max_group = v;
        }
        if let Some(v) = self.max_edges {
            caps.max_dense_edges = v;
        }
        Ok(caps)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Norms of the orthogonal and minimal invariant projections on ℤₙ².
    TorusTable {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Add k-digit decimal approximations next to the exact values.
        #[arg(long)]
        decimal: Option<usize>,
    },
    /// Minimal invariant projection on ℤₙ².
    TorusMin {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = AUTO)]
        strategy: String,
    },
    /// Dimension of the invariant maps B -> Z under the full automorphism group.
    InvariantDim {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = AUTO)]
        strategy: String,
    },
    /// Whether the orthogonal projection is the only invariant projection.
    Uniqueness {
        #[arg(long)]
        family: GraphFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value = AUTO)]
        strategy: String,
    },
    /// Transportation cost norm and an optimal flow.
    Tc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        /// Also emit optimal 1-Lipschitz potentials.
        #[arg(long)]
        dual: bool,
    },
    /// Wasserstein-1 distance between two probability vectors.
    Wasserstein {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        nu: PathBuf,
    },
    /// Order and generators of the automorphism group.
    Automorphisms {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Norms and coefficients for the Hamming cube ℤ₂ⁿ.
    Cube {
        #[arg(long)]
        n: usize,
    },
    /// Canonical weighted graph of a finite metric space.
    CanonicalGraph {
        #[arg(long)]
        metric: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<OrientedGraph> {
    Ok(OrientedGraph::from_json(&read(path)?)?)
}

fn load_distribution(path: &Path, vertices: usize) -> Result<Vec<Rational>> {
    #[derive(serde::Deserialize)]
    struct File {
        values: BTreeMap<usize, Rational>,
    }
    let file: File = serde_json::from_str(&read(path)?).map_err(|e| cyclespace::Error::Parse(e.to_string()))?;
    let mut out = vec![Rational::zero(); vertices];
    for (v, x) in file.values {
        if v >= vertices {
            return Err(cyclespace::Error::VertexOutOfRange { index: v, count: vertices }.into());
        }
        out[v] = x;
    }
    Ok(out)
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    p_orth_norm: Rational,
    i_minus_p_orth: Rational,
    dim: usize,
    p_min_norm: Rational,
    i_minus_p_min: Rational,
    lambda_lip0: Option<Rational>,
    unique_minimizer: bool,
}

impl TableRow {
    fn from_report(n: usize, r: ProjectionReport) -> Self {
        TableRow {
            n,
            p_orth_norm: r.p_orth_norm,
            i_minus_p_orth: r.i_minus_p_orth,
            dim: r.dimension,
            p_min_norm: r.p_min_norm,
            i_minus_p_min: r.i_minus_p_min,
            lambda_lip0: r.lambda_exact,
            unique_minimizer: r.unique_minimizer,
        }
    }

    fn exact_columns(&self) -> [(&'static str, Option<&Rational>); 5] {
        [
            ("p_orth_norm", Some(&self.p_orth_norm)),
            ("i_minus_p_orth", Some(&self.i_minus_p_orth)),
            ("p_min_norm", Some(&self.p_min_norm)),
            ("i_minus_p_min", Some(&self.i_minus_p_min)),
            ("lambda_lip0", self.lambda_lip0.as_ref()),
        ]
    }
}

fn torus_report(n: usize, strategy: &str, caps: &Caps) -> Result<ProjectionReport> {
    let g = torus_graph_capped(n, 2, caps)?;
    let group = if n == 2 { GroupSpec::full(&g, caps)? } else { torus_generators(n, 2)? };
    let family = commutant_family_with(&g, &group, strategy, caps)?;
    Ok(projection_report(&family)?)
}

fn torus_table(n_min: usize, n_max: usize, format: Format, decimal: Option<usize>, caps: &Caps) -> Result<String> {
    if n_min < 2 || n_min > n_max {
        bail!(cyclespace::Error::UnsupportedParameter(format!("need 2 <= n-min <= n-max, got {n_min}..{n_max}")));
    }
    if n_max > caps.max_torus_n {
        bail!(cyclespace::Error::SizeCapExceeded {
            what: "torus side",
            requested: n_max,
            limit: caps.max_torus_n,
        });
    }
    let rows: Vec<TableRow> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| Ok(TableRow::from_report(n, torus_report(n, AUTO, caps)?)))
        .collect::<Result<_>>()?;
    match format {
        Format::Json => {
            let out: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut v = serde_json::to_value(row).expect("row serializes");
                    if let Some(k) = decimal {
                        let approx: BTreeMap<&str, String> = row
                            .exact_columns()
                            .into_iter()
                            .filter_map(|(name, x)| x.map(|x| (name, x.to_decimal_string(k))))
                            .collect();
                        v["approx"] = json!(approx);
                    }
                    v
                })
                .collect();
            Ok(serde_json::to_string_pretty(&json!({ "rows": out }))?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["n".to_string()];
            header.extend(row_names(&rows).iter().map(|s| s.to_string()));
            header.extend(["dim", "unique_minimizer"].map(String::from));
            if decimal.is_some() {
                header.extend(row_names(&rows).iter().map(|s| format!("{s}_approx")));
            }
            w.write_record(&header)?;
            for row in &rows {
                let cols = row.exact_columns();
                let mut rec = vec![row.n.to_string()];
                rec.extend(cols.iter().map(|(_, x)| x.map(ToString::to_string).unwrap_or_default()));
                rec.push(row.dim.to_string());
                rec.push(row.unique_minimizer.to_string());
                if let Some(k) = decimal {
                    rec.extend(cols.iter().map(|(_, x)| x.map(|x| x.to_decimal_string(k)).unwrap_or_default()));
                }
                w.write_record(&rec)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?.trim_end().to_string())
        }
    }
}

fn row_names(rows: &[TableRow]) -> Vec<&'static str> {
    rows.first()
        .map(|r| r.exact_columns().iter().map(|(name, _)| *name).collect())
        .unwrap_or_default()
}

fn run(cli: &Cli) -> Result<String> {
    let caps = cli.caps.resolve()?;
    let value = match &cli.command {
        Command::TorusTable {
            n_max,
            n_min,
            format,
            decimal,
        } => return torus_table(*n_min, *n_max, *format, *decimal, &caps),
        Command::TorusMin { n, strategy } => {
            let r = torus_report(*n, strategy, &caps)?;
            json!({
                "n": n,
                "dim": r.dimension,
                "p_orth_norm": r.p_orth_norm,
                "i_minus_p_orth": r.i_minus_p_orth,
                "p_min_norm": r.p_min_norm,
                "i_minus_p_min": r.i_minus_p_min,
                "unique_minimizer": r.unique_minimizer,
                "params": r.params,
                "lambda_lip0": r.lambda_exact,
            })
        }
        Command::InvariantDim { graph, strategy } => {
            let g = load_graph(graph)?;
            let group = GroupSpec::full(&g, &caps)?;
            let (dim, chosen) = commutant_dimension(&g, &group, strategy, &caps)?;
            json!({
                "dimension": dim,
                "strategy": chosen,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "group_order": group.vertex_order(),
            })
        }
        Command::Uniqueness { family, n, m, strategy } => {
            let r = uniqueness(*family, *n, *m, strategy, &caps)?;
            let mut v = serde_json::to_value(&r)?;
            v["verdict"] = json!(if r.unique { "unique" } else { "non-unique" });
            v
        }
        Command::Tc { graph, problem, dual } => {
            let g = load_graph(graph)?;
            let f = TransportationProblem::parse(&read(problem)?)?;
            let (norm, plan) = tc_norm(&f, &g)?;
            let mut v = json!({ "norm": norm, "flow": plan.flow });
            if *dual {
                v["witness"] = json!(dual_certificate(&f, &g)?.potentials);
            }
            v
        }
        Command::Wasserstein { graph, mu, nu } => {
            let g = load_graph(graph)?;
            let mu = load_distribution(mu, g.vertex_count())?;
            let nu = load_distribution(nu, g.vertex_count())?;
            json!({ "distance": wasserstein1(&mu, &nu, &g)? })
        }
        Command::Automorphisms { graph } => {
            let g = load_graph(graph)?;
            let order = find_automorphisms(&g, &caps)?.len();
            let group = GroupSpec::full(&g, &caps)?;
            let gens: Vec<&[usize]> = group.vertex_generators().iter().map(|a| a.as_slice()).collect();
            json!({ "order": order, "generators": gens })
        }
        Command::Cube { n } => {
            let r = cube_report(*n)?;
            json!({
                "n": n,
                "q_norm": r.q_norm,
                "p_norm": r.p_norm,
                "b": r.b,
                "lambda_lip0": r.lambda_lip0,
                "bm_bounds": [r.bm_bounds.0, r.bm_bounds.1],
            })
        }
        Command::CanonicalGraph { metric } => {
            let x = MetricFile::parse(&read(metric)?)?.into_metric()?;
            serde_json::to_value(GraphFile::from_graph(&canonical_graph(&x)?))?
        }
    };
    Ok(serde_json::to_string_pretty(&value)?)
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    if let Some(e) = e.downcast_ref::<cyclespace::Error>() {
        e.kind()
    } else if e.downcast_ref::<std::io::Error>().is_some() {
        "Io"
    } else if e.downcast_ref::<serde_json::Error>().is_some() {
        "Parse"
    } else {
        "Other"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let message = format!("{e:#}");
            println!("{}", json!({ "error": { "kind": error_kind(&e), "message": message } }));
            ExitCode::FAILURE
        }
    }
}
