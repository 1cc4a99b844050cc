use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use edgering::census::{self, CensusConfig};
use edgering::cone::facet_oracle;
use edgering::facets::enumerate_facet_subgraphs;
use edgering::io::{self, ParsedGraph};
use edgering::serre::{self, cm_from};
use edgering::verify::{require_all, verify_graph, Routes};
use edgering::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_SCALE: u8 = 3;
const EXIT_DISAGREEMENT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "edgering",
    version,
    about = "Classify edge rings of mixed signed, directed graphs"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, facet subgraphs, R1, normality and the CM verdict.
    Analyze { path: PathBuf },
    /// Facet subgraphs next to the polyhedral facets.
    Facets { path: PathBuf },
    /// Serre's R1 by facet subgraphs and by supporting forms.
    R1 { path: PathBuf },
    /// Normality (with hole certificate) and the CM verdict.
    Normal { path: PathBuf },
    /// Run every cross-check; exits 4 on any disagreement.
    Verify { path: PathBuf },
    /// Classify all small mixed graphs up to isomorphism.
    Census {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Random raw graphs per vertex count instead of exhaustive enumeration.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graph documents to classify alongside the enumeration.
        #[arg(long)]
        inject: Vec<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Io(_) => EXIT_PARSE,
        Failure::Lib(e) => match e {
            Error::Parse(_)
            | Error::InvalidGraph(_)
            | Error::Domain(_)
            | Error::DimensionMismatch { .. } => EXIT_PARSE,
            Error::ScaleExceeded { .. } | Error::Inconclusive(_) => EXIT_SCALE,
            Error::OracleDisagreement(_) | Error::Internal(_) => EXIT_DISAGREEMENT,
        },
    }
}

fn load(path: &Path) -> Result<ParsedGraph, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))?;
    let parsed = io::parse_graph(&bytes)?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {}", path.display(), w);
    }
    Ok(parsed)
}

fn emit(format: Format, value: serde_json::Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        Format::Text => print!("{}", text),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { path } => {
            let p = load(&path)?;
            let report = serre::analyze(&p.graph)?;
            emit(
                format,
                io::report_json(&report, p.name.as_deref()),
                io::report_text(&report, p.name.as_deref()),
            );
        }
        Command::Facets { path } => {
            let g = load(&path)?.graph;
            let subgraphs = enumerate_facet_subgraphs(&g)?;
            let polyhedral = facet_oracle(&g)?;
            let mut text = format!("{} facet subgraphs\n", subgraphs.len());
            for f in &subgraphs {
                text.push_str(&format!("  H = {}  comp {}\n", f.subgraph(g.n()), f.comp()));
            }
            text.push_str(&format!("{} polyhedral facets\n", polyhedral.len()));
            for f in &polyhedral {
                let zero = f
                    .zero_edges
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>();
                text.push_str(&format!(
                    "  support {}  zero edges {{{}}}\n",
                    f.support,
                    zero.join(",")
                ));
            }
            let value = json!({
                "facet_subgraphs": subgraphs.iter().map(|f| io::facet_subgraph_json(g.n(), f)).collect::<Vec<_>>(),
                "polyhedral_facets": polyhedral.iter().map(|f| json!({
                    "support": f.support.0,
                    "zero_edges": f.zero_edges.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    "dim": f.dim,
                })).collect::<Vec<_>>(),
            });
            emit(format, value, text);
        }
        Command::R1 { path } => {
            let g = load(&path)?.graph;
            let theorem = serre::r1(&g)?;
            let direct = serre::r1_by_support_forms(&g)?;
            let mut text = format!("R1: {}\n", theorem.satisfied);
            for c in &theorem.per_facet_report {
                let edges = c.edges.iter().map(|e| e.to_string()).collect::<Vec<_>>();
                text.push_str(&format!(
                    "  H = {{{}}}  comp(H) {}  comp(G) {}  lattice equality {}\n",
                    edges.join(","),
                    c.comp_h,
                    c.comp_g,
                    c.lattice_equal
                ));
            }
            text.push_str(&format!(
                "supporting forms agree: {}\n",
                direct.satisfied == theorem.satisfied
            ));
            let value = json!({
                "facet_subgraphs": io::r1_json(&theorem),
                "supporting_forms": io::support_forms_json(&direct),
            });
            emit(format, value, text);
        }
        Command::Normal { path } => {
            let g = load(&path)?.graph;
            let normality = serre::normality(&g)?;
            let r1 = serre::r1_by_theorem(&g)?.satisfied;
            let cm = cm_from(r1, &normality);
            let text = format!(
                "normal: {}\nR1: {}\nCM: {} ({})\n",
                match (&normality.is_normal(), normality.hole()) {
                    (Some(false), Some(h)) => format!("false, hole {}", h),
                    (Some(b), _) => b.to_string(),
                    (None, _) => "undetermined".to_string(),
                },
                r1,
                cm.status,
                cm.rationale
            );
            let value = json!({
                "normality": io::normality_json(&normality),
                "r1": r1,
                "cm": {"status": cm.status.as_str(), "rationale": cm.rationale},
            });
            emit(format, value, text);
        }
        Command::Verify { path } => {
            let g = load(&path)?.graph;
            let outcomes = verify_graph(&g, &Routes::default())?;
            let mut text = String::new();
            for o in &outcomes {
                text.push_str(&format!(
                    "{} {}: {}\n",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                ));
            }
            let value = json!({
                "checks": outcomes.iter().map(|o| json!({
                    "name": o.name, "passed": o.passed, "detail": o.detail,
                })).collect::<Vec<_>>(),
            });
            emit(format, value, text);
            require_all(&outcomes)?;
        }
        Command::Census {
            max_n,
            out,
            sample,
            seed,
            inject,
        } => {
            let mut extra = Vec::new();
            for p in &inject {
                extra.push(load(p)?.graph);
            }
            let cfg = CensusConfig {
                max_n,
                sample,
                seed,
                inject: extra,
            };
            let records = census::run_census(&cfg)?;
            let file =
                File::create(&out).map_err(|e| Failure::Io(format!("{}: {}", out.display(), e)))?;
            census::write_json_lines(&records, BufWriter::new(file))
                .map_err(|e| Failure::Io(format!("{}: {}", out.display(), e)))?;
            let s = census::summarize(&records);
            let text = format!(
                "classes {}\nR1 {}\nnormal {}\nundetermined {}\nR1 and not normal {}\nnormal and not R1 {}\nR1 method disagreements {}\nnot Cohen-Macaulay {}\n",
                s.classes,
                s.r1,
                s.normal,
                s.undetermined,
                s.r1_and_not_normal,
                s.normal_and_not_r1,
                s.method_disagreements,
                s.not_cohen_macaulay
            );
            emit(format, serde_json::to_value(&s).expect("json"), text);
            if s.method_disagreements > 0 {
                return Err(Error::OracleDisagreement(format!(
                    "{} census classes where the R1 methods disagree",
                    s.method_disagreements
                ))
                .into());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {}", e),
                Failure::Io(m) => eprintln!("error: {}", m),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}
