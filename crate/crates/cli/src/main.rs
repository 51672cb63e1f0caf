//! `lawvere`: explore `Ω`, topologies, closures and sheaf conditions on small
//! presheaf categories and fuzzy sets.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error. Errors are
//! printed to stderr as a single `error: <kind>: <message>` line.

mod doc;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use lawvere::closure::{classify, closure_recursive, closure_via_chi, ClosureError};
use lawvere::fincat::{CategoryError, CategoryKind};
use lawvere::fuzzy::{classify_fuzzy, FuzzyError, QClosureOperator};
use lawvere::omega::{OmegaError, OmegaObject};
use lawvere::suite::{run_suite, Suite, SuiteConfig, SuiteError};
use lawvere::topology::{construct_jw, enumerate_topologies, parse_tag, EnumerationMethod, TopologyError};
use serde_json::json;
use thiserror::Error;

use crate::doc::DocError;

#[derive(Parser)]
#[command(name = "lawvere", version, about = "Topologies, closures and sheaves on finite presheaf categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Constrained,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureMethod {
    Chi,
    Recursive,
}

#[derive(Subcommand)]
enum Command {
    /// Print the levels of Ω and their Hasse diagrams.
    Omega {
        /// set, graph, reflgraph, bicolor, semi:N or sset:N
        category: String,
        /// Restrict to one object (by name, e.g. E or 2).
        #[arg(long)]
        level: Option<String>,
        /// Emit DOT instead of text.
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate all topologies on Ω.
    Topologies {
        category: String,
        #[arg(long, value_enum, default_value = "constrained")]
        method: Method,
        /// Per-level cap on |Ω(c)|^|Ω(c)| for the brute method.
        #[arg(long, default_value_t = lawvere::topology::DEFAULT_BRUTE_BUDGET)]
        budget: u128,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Close a subobject under j^w.
    Closure {
        /// Bit string w, or a two-digit label for bicolored graphs.
        #[arg(long)]
        topology: String,
        /// Presheaf document; defaults to the one the subobject refers to.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Subobject document.
        #[arg(long)]
        sub: PathBuf,
        #[arg(long, value_enum, default_value = "chi")]
        method: ClosureMethod,
    },
    /// Decide separated / complete / sheaf for a presheaf or a fuzzy set.
    Classify {
        /// Topology tag for a presheaf input.
        #[arg(long, conflicts_with_all = ["nucleus", "trivial"])]
        topology: Option<String>,
        /// Nucleus document for a fuzzy set input.
        #[arg(long, conflicts_with = "trivial")]
        nucleus: Option<PathBuf>,
        /// Use the trivial closure on a fuzzy set input.
        #[arg(long)]
        trivial: bool,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest corpus presheaf, by total number of elements.
        #[arg(long, default_value_t = lawvere::corpus::DEFAULT_CORPUS_TOTAL)]
        corpus_total: usize,
        /// Largest ambient presheaf in the factorization oracle.
        #[arg(long, default_value_t = lawvere::closure::DEFAULT_AMBIENT_TOTAL)]
        ambient_total: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("input: {0}")]
    Doc(#[from] DocError),
    #[error("category: {0}")]
    Category(#[from] CategoryError),
    #[error("omega: {0}")]
    Omega(#[from] OmegaError),
    #[error("topology: {0}")]
    Topology(#[from] TopologyError),
    #[error("closure: {0}")]
    Closure(#[from] ClosureError),
    #[error("fuzzy: {0}")]
    Fuzzy(#[from] FuzzyError),
    #[error("suite: {0}")]
    Suite(#[from] SuiteError),
    #[error("usage: {0}")]
    Usage(String),
}

/// Successful outcomes: text to print and whether verification passed.
struct Outcome {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn omega_for(category: &str) -> Result<Arc<OmegaObject>, CliError> {
    let kind: CategoryKind = category.parse()?;
    Ok(Arc::new(OmegaObject::new(&kind.build()?)?))
}

fn run(command: Command) -> Result<Outcome, CliError> {
    let text = match command {
        Command::Omega { category, level, dot } => cmd_omega(&category, level.as_deref(), dot)?,
        Command::Topologies { category, method, budget, format } => cmd_topologies(&category, method, budget, format)?,
        Command::Closure { topology, input, sub, method } => cmd_closure(&topology, input, &sub, method)?,
        Command::Classify { topology, nucleus, trivial, input, format } => cmd_classify(topology, nucleus, trivial, &input, format)?,
        Command::Verify { suite, corpus_total, ambient_total } => {
            let suite: Suite = suite.parse()?;
            let config = SuiteConfig { corpus_total, ambient_total, ..SuiteConfig::default() };
            let report = run_suite(suite, &config)?;
            return Ok(Outcome { text: format!("{report}\n"), ok: report.passed() });
        }
    };
    Ok(Outcome { text, ok: true })
}

fn cmd_omega(category: &str, level: Option<&str>, dot: bool) -> Result<String, CliError> {
    let o = omega_for(category)?;
    let c = o.category();
    let levels: Vec<usize> = match level {
        Some(name) => vec![c.object_by_name(name)?],
        None => (0..c.object_count()).collect(),
    };
    let mut out = String::new();
    if dot {
        for k in levels {
            out.push_str(&o.level_dot(k)?);
        }
        return Ok(out);
    }
    let sizes: Vec<String> = o.level_sizes().iter().map(ToString::to_string).collect();
    out.push_str(&format!("levels: {}\n", sizes.join(", ")));
    for k in levels {
        out.push_str(&format!("Ω({}): {} sieves\n", c.object(k).name, o.level(k).size()));
        match o.level_algebra(k) {
            Ok(alg) => {
                for (a, b) in alg.hasse_edges() {
                    out.push_str(&format!("  {} < {}\n", o.sieve_summary(k, a), o.sieve_summary(k, b)));
                }
            }
            Err(OmegaError::LevelTooLarge { .. }) => out.push_str("  (Hasse diagram omitted: level too large)\n"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn cmd_topologies(category: &str, method: Method, budget: u128, format: Format) -> Result<String, CliError> {
    let o = omega_for(category)?;
    let method = match method {
        Method::Brute => EnumerationMethod::Brute { budget },
        Method::Constrained => EnumerationMethod::Constrained,
    };
    let mut ts = enumerate_topologies(&o, method)?;
    ts.sort_by_key(|j| j.tag().map(ToString::to_string));
    let c = o.category();
    Ok(match format {
        Format::Json => {
            let records: Vec<_> = ts.iter().map(|j| j.to_record()).collect();
            serde_json::to_string_pretty(&records).expect("records serialize") + "\n"
        }
        Format::Text => {
            let mut out = format!("{} topologies on {}\n", ts.len(), c.kind());
            for j in &ts {
                let fills: Vec<String> = j
                    .object_bits()
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| format!("{}:{}", c.object(k).name, if b { "fill" } else { "keep" }))
                    .collect();
                out.push_str(&format!("j^{}  {}\n", j.tag().unwrap(), fills.join(" ")));
            }
            out
        }
    })
}

fn cmd_closure(topology: &str, input: Option<PathBuf>, sub: &std::path::Path, method: ClosureMethod) -> Result<String, CliError> {
    let (ambient, subobject) = match input {
        Some(path) => {
            let p = doc::load_presheaf(&path)?;
            let levels = doc::load_subobject_levels(sub)?;
            let s = doc::subobject_of(sub, &p, &levels)?;
            (p, s)
        }
        None => doc::load_subobject(sub)?,
    };
    let c = ambient.category().clone();
    let o = Arc::new(OmegaObject::new(&c)?);
    let j = construct_jw(&o, topology)?;
    let bits = parse_tag(&c, topology)?.1;
    let result = match method {
        ClosureMethod::Chi => closure_via_chi(&j, &ambient, &subobject)?,
        ClosureMethod::Recursive => closure_recursive(&bits, &ambient, &subobject)?,
    };
    let mut out = format!("closure of {} under j^{}\n", ambient.describe_sub(&subobject), j.tag().unwrap());
    out.push_str(&format!("closed: {}\n", ambient.describe_sub(&result.closed)));
    out.push_str("added:\n");
    for line in result.describe_added(&ambient).lines() {
        out.push_str(&format!("  {line}\n"));
    }
    out.push_str(&format!("dense: {}\n", if result.is_everything(&ambient) { "yes" } else { "no" }));
    Ok(out)
}

fn cmd_classify(
    topology: Option<String>,
    nucleus: Option<PathBuf>,
    trivial: bool,
    input: &std::path::Path,
    format: Format,
) -> Result<String, CliError> {
    if let Some(w) = topology {
        let b = doc::load_presheaf(input)?;
        let c = b.category().clone();
        // Validates the tag, including the degeneracy restriction.
        construct_jw(&Arc::new(OmegaObject::new(&c)?), &w)?;
        let bits = parse_tag(&c, &w)?.1;
        let k = classify(&b, &bits)?;
        return Ok(match format {
            Format::Json => serde_json::to_string_pretty(&k).expect("serializable") + "\n",
            Format::Text => {
                let mut out = format!("separated: {}\ncomplete: {}\nsheaf: {}\n", k.separated, k.complete, k.sheaf);
                for l in &k.levels {
                    out.push_str(&format!(
                        "  {}: bit {} simple {} complete {}\n",
                        l.object, l.bit as u8, l.simple, l.complete
                    ));
                }
                for w in &k.witnesses {
                    out.push_str(&format!("witness: {w}\n"));
                }
                out
            }
        });
    }
    if nucleus.is_none() && !trivial {
        return Err(CliError::Usage("give one of --topology, --nucleus or --trivial".into()));
    }
    let b = doc::load_fuzzy_set(input)?;
    let op = match nucleus {
        Some(path) => QClosureOperator::NucleusInduced(doc::load_nucleus(&path, b.algebra())?),
        None => QClosureOperator::Trivial,
    };
    let k = classify_fuzzy(&b, &op)?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "separated": k.separated,
            "complete": k.complete,
            "sheaf": k.sheaf,
            "outside_image": k.outside_image,
            "by_oracle": k.by_oracle,
        }))
        .expect("serializable")
            + "\n",
        Format::Text => {
            let mut out = format!("separated: {}\ncomplete: {}\nsheaf: {}\n", k.separated, k.complete, k.sheaf);
            if !k.outside_image.is_empty() {
                out.push_str(&format!("witness: memberships outside the image of φ: {}\n", k.outside_image.join(", ")));
            }
            if k.by_oracle {
                out.push_str("(decided by the factorization oracle)\n");
            }
            out
        }
    })
}
