//! Command-line front end. Every subcommand reads its inputs from files,
//! runs the library, and prints one deterministic report: JSON with sorted
//! keys by default, a plain-text rendering with `--format text`. Exit
//! codes: 0 success, 2 unreadable or invalid input files, 3 dimension or
//! index mismatches, 4 group validation failures, 5 cell-count cap.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::graphprod::{
    commutation_graph, extension_exists, non_extension_certificate, GraphProductError,
};
use crate::groups::{FiniteGroup, TcClass};
use crate::homology::{homology_of, HomologyGroup};
use crate::io::{parse_complex, parse_group, parse_subgroups, IoError};
use crate::polyproduct::{
    classify_em, rank_agreement, splitting_homology, CubicalComplex, Marks, PolyError,
};
use crate::simplicial::SimplicialComplex;

const DEFAULT_CELL_LIMIT: u128 = 10_000_000;

const EXIT_PARSE: i32 = 2;
const EXIT_DIMENSION: i32 = 3;
const EXIT_GROUP: i32 = 4;
const EXIT_CELL_LIMIT: i32 = 5;

#[derive(Parser)]
#[command(
    name = "polyprod",
    version,
    about = "polyhedral products, homology and group analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// seed for the sampled associativity check on large group tables
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// f-vector, Euler characteristic, flag detection, minimal non-faces
    Complex {
        #[arg(long)]
        complex: PathBuf,
    },
    /// cell model of the product of marked intervals over the complex
    Polyprod {
        #[arg(long)]
        complex: PathBuf,
        /// comma-separated marked-point counts, one per vertex
        #[arg(long)]
        marks: String,
        #[arg(long, value_enum)]
        mode: PolyMode,
    },
    /// finite group analysis from a Cayley-table or permutation file
    Group {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_enum)]
        mode: GroupMode,
        /// tuple length for --mode tuples
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// extension decision for a family of subgroups over a complex
    Extension {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        subgroups: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        /// also build the stage-l non-extension certificate
        #[arg(long)]
        certify_l: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyMode {
    Homology,
    Rank,
    Splitting,
    Classify,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupMode {
    Analyze,
    Tc,
    Series,
    Tuples,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = match &e {
            IoError::Parse(_) | IoError::Complex(_) => EXIT_PARSE,
            IoError::Group(_) | IoError::BadSubgroup { .. } => EXIT_GROUP,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        let code = match &e {
            PolyError::DimensionMismatch { .. } => EXIT_DIMENSION,
            PolyError::CellLimitExceeded { .. } => EXIT_CELL_LIMIT,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<GraphProductError> for Failure {
    fn from(e: GraphProductError) -> Self {
        let code = match &e {
            GraphProductError::DimensionMismatch { .. } => EXIT_DIMENSION,
            _ => EXIT_GROUP,
        };
        Failure::new(code, e.to_string())
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => print!("{}", render_text(&report, 0)),
            }
            0
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Complex { complex } => cmd_complex(complex),
        Command::Polyprod {
            complex,
            marks,
            mode,
        } => cmd_polyprod(complex, marks, *mode),
        Command::Group { group, mode, k } => cmd_group(group, *mode, *k, cli.seed),
        Command::Extension {
            group,
            subgroups,
            complex,
            certify_l,
        } => cmd_extension(group, subgroups, complex, *certify_l, cli.seed),
    }
}

fn read_input(path: &Path) -> Result<(String, Value), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().fold(String::new(), |mut acc, b| {
        let _ = write!(acc, "{b:02x}");
        acc
    });
    let text = String::from_utf8(bytes)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{} is not UTF-8: {e}", path.display())))?;
    let meta = json!({ "path": path.display().to_string(), "sha256": hex });
    Ok((text, meta))
}

fn report(command: &str, inputs: Value, result: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

fn cell_limit() -> u128 {
    std::env::var("POLYPROD_MAX_CELLS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CELL_LIMIT)
}

fn bigint_value(b: &BigInt) -> Value {
    match u64::try_from(b) {
        Ok(v) => json!(v),
        Err(_) => json!(b.to_string()),
    }
}

fn homology_value(groups: &[HomologyGroup]) -> Value {
    Value::Array(
        groups
            .iter()
            .enumerate()
            .map(|(degree, g)| {
                json!({
                    "degree": degree,
                    "betti": g.betti,
                    "torsion": g.torsion.iter().map(bigint_value).collect::<Vec<_>>(),
                    "group": g.to_string(),
                })
            })
            .collect(),
    )
}

fn faces_value(faces: &[crate::simplicial::Face]) -> Value {
    Value::Array(
        faces
            .iter()
            .map(|f| Value::Array(f.vertices().iter().map(|&v| json!(v)).collect()))
            .collect(),
    )
}

fn cmd_complex(path: &Path) -> Result<Value, Failure> {
    let (text, meta) = read_input(path)?;
    let k = parse_complex(&text)?;
    let nonfaces = k.minimal_nonfaces(3);
    let completion = k.flag_completion();
    let result = json!({
        "n": k.vertex_count(),
        "facet_count": k.facets().len(),
        "facets": faces_value(k.facets()),
        "f_vector": k.f_vector(),
        "euler_characteristic": k.euler_characteristic(),
        "is_flag": k.is_flag(),
        "minimal_nonfaces": faces_value(&nonfaces),
        "flag_completion_facets": faces_value(completion.facets()),
    });
    Ok(report("complex", json!({ "complex": meta }), result))
}

fn parse_marks(arg: &str, k: &SimplicialComplex) -> Result<Marks, Failure> {
    let counts: Result<Vec<usize>, _> = arg.split(',').map(|s| s.trim().parse()).collect();
    let counts = counts.map_err(|e| Failure::new(EXIT_PARSE, format!("bad --marks value: {e}")))?;
    if counts.contains(&0) {
        return Err(Failure::new(EXIT_PARSE, "marks must be positive"));
    }
    if counts.len() != k.vertex_count() {
        return Err(Failure::new(
            EXIT_DIMENSION,
            format!(
                "{} marks supplied for a complex on {} vertices",
                counts.len(),
                k.vertex_count()
            ),
        ));
    }
    Ok(Marks::new(counts))
}

fn cmd_polyprod(path: &Path, marks_arg: &str, mode: PolyMode) -> Result<Value, Failure> {
    let (text, meta) = read_input(path)?;
    let k = parse_complex(&text)?;
    let marks = parse_marks(marks_arg, &k)?;
    let result = match mode {
        PolyMode::Homology => {
            let complex = CubicalComplex::build_with_limit(&k, &marks, cell_limit())?;
            let groups = homology_of(&complex.chain_complex(), true)
                .expect("cubical boundary composes to zero");
            json!({
                "mode": "homology",
                "cell_counts": complex.cell_counts(),
                "reduced_homology": homology_value(&groups),
            })
        }
        PolyMode::Rank => {
            let (closed, recurrence, oracle, agree) = rank_agreement(&marks);
            json!({
                "mode": "rank",
                "closed": closed,
                "recurrence": recurrence,
                "oracle": oracle,
                "agree": agree,
            })
        }
        PolyMode::Splitting => {
            let split = splitting_homology(&k, &marks)?;
            let complex = CubicalComplex::build_with_limit(&k, &marks, cell_limit())?;
            let cubical = homology_of(&complex.chain_complex(), true)
                .expect("cubical boundary composes to zero");
            let agree = crate::homology::groups_equal(&split, &cubical);
            json!({
                "mode": "splitting",
                "splitting_homology": homology_value(&split),
                "cubical_homology": homology_value(&cubical),
                "agree": agree,
            })
        }
        PolyMode::Classify => {
            let report = classify_em(&k);
            json!({
                "mode": "classify",
                "aspherical": report.aspherical,
                "witness": report.witness.as_ref().map(|f| f.vertices().to_vec()),
                "verified_sphere_degree": report.verified_sphere_degree,
            })
        }
    };
    Ok(report("polyprod", json!({ "complex": meta }), result))
}

fn subgroup_value(g: &FiniteGroup, s: &crate::groups::Subgroup) -> Value {
    json!({
        "elements": s.elements(),
        "names": s.names(g),
        "order": s.order(),
    })
}

fn cmd_group(path: &Path, mode: GroupMode, k: usize, seed: u64) -> Result<Value, Failure> {
    let (text, meta) = read_input(path)?;
    let g = parse_group(&text, seed)?;
    let result = match mode {
        GroupMode::Analyze => {
            let center = g.center();
            let maxab = g.maximal_abelian_subgroups();
            json!({
                "mode": "analyze",
                "order": g.order(),
                "abelian": g.is_abelian(),
                "center": subgroup_value(&g, &center),
                "is_simple": g.is_simple(),
                "nilpotency_class": g.nilpotency_class(),
                "maximal_abelian_subgroups": maxab.iter().map(|s| subgroup_value(&g, s)).collect::<Vec<_>>(),
            })
        }
        GroupMode::Tc => {
            let series = g.descending_central_series();
            let ks: Vec<usize> = (2..=series.stages.len() + 1).collect();
            let flags: Vec<Value> = ks
                .iter()
                .map(|&kk| json!({ "k": kk, "is_k_tc": g.is_k_tc(kk) }))
                .collect();
            let class = match g.tc_class() {
                TcClass::Class(c) => json!(c),
                TcClass::Unbounded => json!("unbounded"),
            };
            let equivalences = if g.is_abelian() {
                Value::Null
            } else {
                let e = g.tc_equivalences().expect("nonabelian input");
                json!({
                    "abelian_centralizers": e.abelian_centralizers,
                    "equal_centralizers": e.equal_centralizers,
                    "transitive_commuting": e.transitive_commuting,
                    "centralizer_chain": e.centralizer_chain,
                    "all_agree": e.all_agree(),
                })
            };
            json!({
                "mode": "tc",
                "tc_class": class,
                "is_k_tc": flags,
                "equivalences": equivalences,
                "is_simple": g.is_simple(),
            })
        }
        GroupMode::Series => {
            let series = g.descending_central_series();
            json!({
                "mode": "series",
                "stage_orders": series.stage_orders(),
                "stages": series.stages.iter().map(|s| subgroup_value(&g, s)).collect::<Vec<_>>(),
                "nilpotency_class": g.nilpotency_class(),
                "stable_order": series.stable_term().order(),
            })
        }
        GroupMode::Tuples => {
            if k == 0 || k > 12 {
                return Err(Failure::new(EXIT_PARSE, "--k must be between 1 and 12"));
            }
            let count = g.commuting_tuple_count(k);
            let enumerable = (g.order() as u128)
                .checked_pow(k.min(8) as u32)
                .is_some_and(|n| n <= 1_000_000);
            let enumerated = enumerable.then(|| g.commuting_tuple_count_enumerated(k));
            json!({
                "mode": "tuples",
                "k": k,
                "count": count.to_string(),
                "enumerated": enumerated.map(|c| c.to_string()),
                "agree": enumerated.map(|c| c == count),
            })
        }
    };
    Ok(report("group", json!({ "group": meta }), result))
}

fn cmd_extension(
    group_path: &Path,
    subgroups_path: &Path,
    complex_path: &Path,
    certify_l: Option<usize>,
    seed: u64,
) -> Result<Value, Failure> {
    let (group_text, group_meta) = read_input(group_path)?;
    let (subs_text, subs_meta) = read_input(subgroups_path)?;
    let (complex_text, complex_meta) = read_input(complex_path)?;
    let g = parse_group(&group_text, seed)?;
    let subgroups = parse_subgroups(&subs_text, &g)?;
    let k = parse_complex(&complex_text)?;
    let ext = extension_exists(&k, &g, &subgroups)?;
    let graph = commutation_graph(&g, &subgroups);
    let flag = graph.as_complex().flag_completion();
    let violation = ext.violation.as_ref().map(|v| {
        json!({
            "edge": [v.edge.0, v.edge.1],
            "left": v.left,
            "left_name": v.left_name,
            "right": v.right,
            "right_name": v.right_name,
        })
    });
    let certificate = match certify_l {
        None => Value::Null,
        Some(l) => {
            let cert = non_extension_certificate(&g, &subgroups, l)?;
            json!({
                "stage": cert.stage,
                "witnesses": cert.witnesses,
                "witness_names": cert.witness_names,
                "centralizer_orders": cert.centralizer_orders,
                "graph_edgeless": cert.graph.is_edgeless(),
            })
        }
    };
    let result = json!({
        "commutation_graph_edges": graph.edges().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
        "flag_completion_facets": faces_value(flag.facets()),
        "extends": ext.extends,
        "violation": violation,
        "certificate": certificate,
    });
    Ok(report(
        "extension",
        json!({ "complex": complex_meta, "group": group_meta, "subgroups": subs_meta }),
        result,
    ))
}

fn render_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let mut out = String::new();
            for (key, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}{key}:");
                        out.push_str(&render_text(val, indent + 1));
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{key}: {}", scalar_text(val));
                    }
                }
            }
            out
        }
        Value::Array(items) => {
            let scalar_only = items
                .iter()
                .all(|i| !matches!(i, Value::Object(_) | Value::Array(_)));
            if scalar_only {
                format!(
                    "{pad}[{}]\n",
                    items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
                )
            } else if items.iter().all(|i| matches!(i, Value::Array(_))) {
                let rows: Vec<String> = items
                    .iter()
                    .map(|row| match row {
                        Value::Array(cells) => format!(
                            "[{}]",
                            cells.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
                        ),
                        _ => unreachable!(),
                    })
                    .collect();
                format!("{pad}[{}]\n", rows.join(", "))
            } else {
                let mut out = String::new();
                for item in items {
                    out.push_str(&render_text(item, indent));
                }
                out
            }
        }
        _ => format!("{pad}{}\n", scalar_text(v)),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
