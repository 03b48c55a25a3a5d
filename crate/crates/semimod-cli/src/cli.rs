//! Command-line surface.
//!
//! Every subcommand prints one deterministic JSON report (canonical form:
//! sorted keys, no insignificant whitespace) to standard output, or to
//! `--out PATH`. Exit codes: `0` when the computation completed (verdicts,
//! true or false, are data in the report), `1` when a law suite found a
//! counterexample or the corpus drifted from its goldens, `2` for usage
//! and validation errors.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use semimod::budget::Budget;
use semimod::category::{c_pushout, pullback, pushout, Span};
use semimod::exact::{classify_exactness, find_splittings, is_short_exact};
use semimod::hom::enumerate_hom;
use semimod::laws;
use semimod::morphism::kernel_image;
use semimod::projective::{relative_projectivity, Flavor};
use semimod::semimodule::FiniteSemimodule;
use semimod::subquot::{
    generated_congruence, quotient_by_congruence, quotient_by_subsemimodule, subtractive_closure,
    Subsemimodule,
};

use crate::corpus;
use crate::model::{canonical_json, parse_model, Model};

#[derive(Parser)]
#[command(
    name = "semimod",
    version,
    about = "Finite semirings and semimodules: quotients, pushouts, exact sequences, projectivity"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on candidate assignments in hom enumeration and search.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Args)]
struct FileArg {
    /// Path to a JSON model file.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every instance in a model file.
    Validate(FileArg),
    /// Enumerate the hom-set between two semimodules.
    Hom {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        dom: String,
        #[arg(long)]
        cod: String,
    },
    /// Kernel and image of a morphism.
    Kernel {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        map: String,
    },
    /// Subtractive closure of a subset.
    Closure {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        module: String,
        /// Comma-separated element indices, e.g. `0,2`.
        #[arg(long)]
        subset: String,
    },
    /// Quotient by a subsemimodule (`--subset`) or by the congruence
    /// generated by pairs (`--pairs a=b,c=d`).
    Quotient {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        module: String,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Pullback of two morphisms with a shared codomain.
    Pullback {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Pushout of two morphisms with a shared domain.
    Pushout {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// C-pushout (the cancellative-subcategory pushout) of a span.
    CPushout {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Classify a named sequence under the four exactness notions.
    CheckExact {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        seq: String,
    },
    /// Search for left and right splittings of a two-map sequence.
    Splittings {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        seq: String,
    },
    /// Decide relative projectivity of `--P` with respect to `--M`.
    Projective {
        #[command(flatten)]
        file: FileArg,
        #[arg(long = "P")]
        p: String,
        #[arg(long = "M")]
        m: String,
        #[arg(long, default_value = "e")]
        flavor: String,
    },
    /// Run a named law suite over seeded random instances.
    Laws {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 50)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "size-cap", default_value_t = 4)]
        size_cap: usize,
    },
    /// Run the worked-example corpus against its golden reports.
    Corpus,
}

/// A fully assembled run: the report value, the envelope extras, and the
/// process exit code.
struct Run {
    command: &'static str,
    seed: Option<u64>,
    samples: Option<u64>,
    result: Value,
    exit: i32,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Engine(#[from] semimod::AlgebraError),
}

fn read_model(path: &Path) -> Result<Model, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_model(&text).map_err(|e| CliError::Usage(e.to_string()))
}

fn lookup_module(model: &Model, name: &str) -> Result<Arc<FiniteSemimodule>, CliError> {
    model
        .module(name)
        .ok_or_else(|| CliError::Usage(format!("unknown semimodule {name:?}")))
}

fn lookup_morphism<'m>(
    model: &'m Model,
    name: &str,
) -> Result<&'m semimod::LinearMap, CliError> {
    model
        .morphism(name)
        .ok_or_else(|| CliError::Usage(format!("unknown morphism {name:?}")))
}

fn parse_subset(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad element index {s:?}")))
        })
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (a, b) = s
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("bad pair {s:?}, expected a=b")))?;
            Ok((
                a.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad element index {a:?}")))?,
                b.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad element index {b:?}")))?,
            ))
        })
        .collect()
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn module_value(m: &FiniteSemimodule) -> Value {
    to_value(&m.snapshot())
}

fn execute(command: &Command, budget: &Budget) -> Result<Run, CliError> {
    match command {
        Command::Validate(file) => {
            let text = std::fs::read_to_string(&file.file).map_err(|e| CliError::Io {
                path: file.file.display().to_string(),
                message: e.to_string(),
            })?;
            match parse_model(&text) {
                Ok(model) => Ok(Run {
                    command: "validate",
                    seed: None,
                    samples: None,
                    result: json!({
                        "valid": true,
                        "semirings": model.semirings.keys().collect::<Vec<_>>(),
                        "semimodules": model.semimodules.keys().collect::<Vec<_>>(),
                        "morphisms": model.morphisms.keys().collect::<Vec<_>>(),
                        "sequences": model.sequences.keys().collect::<Vec<_>>(),
                    }),
                    exit: 0,
                }),
                Err(crate::model::ModelError::Invalid(errors)) => Ok(Run {
                    command: "validate",
                    seed: None,
                    samples: None,
                    result: json!({"valid": false, "errors": to_value(&errors)}),
                    exit: 2,
                }),
                Err(e) => Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Hom { file, dom, cod } => {
            let model = read_model(&file.file)?;
            let d = lookup_module(&model, dom)?;
            let c = lookup_module(&model, cod)?;
            let homs = enumerate_hom(&d, &c, budget)?;
            Ok(Run {
                command: "hom",
                seed: None,
                samples: None,
                result: json!({
                    "dom": dom,
                    "cod": cod,
                    "count": homs.len(),
                    "maps": homs.maps(),
                }),
                exit: 0,
            })
        }
        Command::Kernel { file, map } => {
            let model = read_model(&file.file)?;
            let f = lookup_morphism(&model, map)?;
            let (ker, im) = kernel_image(f);
            Ok(Run {
                command: "kernel",
                seed: None,
                samples: None,
                result: json!({
                    "map": map,
                    "kernel": ker.elems(),
                    "image": im.elems(),
                }),
                exit: 0,
            })
        }
        Command::Closure {
            file,
            module,
            subset,
        } => {
            let model = read_model(&file.file)?;
            let m = lookup_module(&model, module)?;
            let elems = parse_subset(subset)?;
            if elems.iter().any(|&e| e >= m.size()) {
                return Err(CliError::Usage(format!(
                    "subset element out of range for {module}"
                )));
            }
            let report = subtractive_closure(&m, &elems);
            Ok(Run {
                command: "closure",
                seed: None,
                samples: None,
                result: to_value(&report),
                exit: 0,
            })
        }
        Command::Quotient {
            file,
            module,
            subset,
            pairs,
        } => {
            let model = read_model(&file.file)?;
            let m = lookup_module(&model, module)?;
            let (quotient, projection, kernel) = match (subset, pairs) {
                (Some(subset), None) => {
                    let elems = parse_subset(subset)?;
                    let sub = Subsemimodule::new(&m, &elems)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    let q = quotient_by_subsemimodule(&m, &sub);
                    (q.module, q.projection, Some(q.kernel.elems().to_vec()))
                }
                (None, Some(pairs)) => {
                    let pairs = parse_pairs(pairs)?;
                    if pairs.iter().any(|&(a, b)| a >= m.size() || b >= m.size()) {
                        return Err(CliError::Usage(String::from("pair element out of range")));
                    }
                    let rho = generated_congruence(&m, &pairs);
                    let q = quotient_by_congruence(&m, &rho);
                    (q.module, q.projection, None)
                }
                _ => {
                    return Err(CliError::Usage(String::from(
                        "quotient needs exactly one of --subset or --pairs",
                    )))
                }
            };
            Ok(Run {
                command: "quotient",
                seed: None,
                samples: None,
                result: json!({
                    "module": module_value(&quotient),
                    "projection": projection.map(),
                    "kernel": kernel,
                }),
                exit: 0,
            })
        }
        Command::Pullback { file, f, g } => {
            let model = read_model(&file.file)?;
            let f = lookup_morphism(&model, f)?.clone();
            let g = lookup_morphism(&model, g)?.clone();
            let pb = pullback(&f, &g)?;
            Ok(Run {
                command: "pullback",
                seed: None,
                samples: None,
                result: json!({
                    "object": module_value(&pb.object),
                    "ambient_elements": pb.ambient.elems(),
                    "to_a": pb.to_a.map(),
                    "to_b": pb.to_b.map(),
                }),
                exit: 0,
            })
        }
        Command::Pushout { file, f, g } => {
            let model = read_model(&file.file)?;
            let span = Span::new(
                lookup_morphism(&model, f)?.clone(),
                lookup_morphism(&model, g)?.clone(),
            )?;
            let po = pushout(&span)?;
            Ok(Run {
                command: "pushout",
                seed: None,
                samples: None,
                result: json!({
                    "apex": module_value(&po.apex),
                    "congruence_classes": po.rho.class_of(),
                    "from_m": po.from_m.map(),
                    "from_n": po.from_n.map(),
                }),
                exit: 0,
            })
        }
        Command::CPushout { file, f, g } => {
            let model = read_model(&file.file)?;
            let span = Span::new(
                lookup_morphism(&model, f)?.clone(),
                lookup_morphism(&model, g)?.clone(),
            )?;
            let po = c_pushout(&span)?;
            Ok(Run {
                command: "c-pushout",
                seed: None,
                samples: None,
                result: json!({
                    "apex": module_value(&po.apex),
                    "congruence_classes": po.rho.class_of(),
                    "from_m": po.from_m.map(),
                    "from_n": po.from_n.map(),
                }),
                exit: 0,
            })
        }
        Command::CheckExact { file, seq } => {
            let model = read_model(&file.file)?;
            let spec = model
                .sequence(seq)
                .ok_or_else(|| CliError::Usage(format!("unknown sequence {seq:?}")))?;
            let report = classify_exactness(&spec);
            Ok(Run {
                command: "check-exact",
                seed: None,
                samples: None,
                result: json!({
                    "sequence": seq,
                    "exact": report.all_exact(),
                    "positions": to_value(&report.positions),
                }),
                exit: 0,
            })
        }
        Command::Splittings { file, seq } => {
            let model = read_model(&file.file)?;
            let spec = model
                .sequence(seq)
                .ok_or_else(|| CliError::Usage(format!("unknown sequence {seq:?}")))?;
            if spec.maps().len() != 2 {
                return Err(CliError::Usage(String::from(
                    "splittings needs a two-map sequence",
                )));
            }
            let f = &spec.maps()[0];
            let g = &spec.maps()[1];
            let short = is_short_exact(f, g, budget)?;
            let s = find_splittings(f, g, budget)?;
            Ok(Run {
                command: "splittings",
                seed: None,
                samples: None,
                result: json!({
                    "sequence": seq,
                    "short_exact": to_value(&short),
                    "left": s.left.as_ref().map(|h| h.map().to_vec()),
                    "right": s.right.as_ref().map(|h| h.map().to_vec()),
                }),
                exit: 0,
            })
        }
        Command::Projective {
            file,
            p,
            m,
            flavor,
        } => {
            let model = read_model(&file.file)?;
            let flavor = Flavor::parse(flavor)
                .ok_or_else(|| CliError::Usage(format!("unknown flavor {flavor:?}")))?;
            let subject = lookup_module(&model, p)?;
            let target = lookup_module(&model, m)?;
            let report = relative_projectivity(&subject, &target, flavor, budget)?;
            Ok(Run {
                command: "projective",
                seed: None,
                samples: None,
                result: to_value(&report),
                exit: 0,
            })
        }
        Command::Laws {
            suite,
            samples,
            seed,
            size_cap,
        } => {
            let outcome = laws::run_suite(suite, *samples, *seed, *size_cap, budget)
                .map_err(|e| match e {
                    semimod::AlgebraError::UnknownSuite(_) => CliError::Usage(e.to_string()),
                    other => CliError::Engine(other),
                })?;
            let exit = if outcome.pass { 0 } else { 1 };
            Ok(Run {
                command: "laws",
                seed: Some(*seed),
                samples: Some(*samples),
                result: to_value(&outcome),
                exit,
            })
        }
        Command::Corpus => {
            let outcome = corpus::corpus_verify(budget);
            let exit = if outcome.pass && outcome.matches_golden {
                0
            } else {
                1
            };
            Ok(Run {
                command: "corpus",
                seed: None,
                samples: None,
                result: json!({
                    "report": outcome.result,
                    "matches_golden": outcome.matches_golden,
                }),
                exit,
            })
        }
    }
}

fn envelope(run: &Run, budget: &Budget) -> Value {
    json!({
        "format": crate::model::FORMAT_VERSION,
        "tool": "semimod",
        "version": env!("CARGO_PKG_VERSION"),
        "command": run.command,
        "seed": run.seed,
        "samples": run.samples,
        "budget": to_value(budget),
        "result": run.result,
    })
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut budget = Budget::default();
    if let Some(cap) = cli.budget {
        budget = budget.with_hom_candidates(cap);
    }
    match execute(&cli.command, &budget) {
        Ok(run) => {
            let text = canonical_json(&envelope(&run, &budget));
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => println!("{text}"),
            }
            run.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
