//! The `burnloc` command-line front end.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::ActionCatalog;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::{FiniteGroup, GroupDesc};
use crate::lattice::GroupStructure;
use crate::model::{
    check_blowup, class_of_action, validate_model, verdict, BlowupCenter, Counts, ModelDescription,
    NO_OBSTRUCTION, OBSTRUCTED,
};
use crate::relations::{phi_g, FilterSpec, FilteredPresentation, Presentation};
use crate::symbol::{BurnsideClass, Context};

pub const BANNER: &str = concat!("# burnloc ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(name = "burnloc", version, about = "Curve-localized Burnside group computations")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Omit the version banner from text output.
    #[arg(long, global = true)]
    pub no_banner: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Where the group and catalog come from: a model, or a catalog with an
/// optional group override.
#[derive(Debug, Args, Clone)]
pub struct Source {
    /// Group fixture name or JSON file; defaults to the catalog's group.
    #[arg(long)]
    pub group: Option<String>,
    /// Catalog fixture name or JSON file.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Model fixture name or JSON file; supplies group and catalog.
    #[arg(long)]
    pub model: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum FilterArg {
    All,
    Maximal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free rank and torsion of the presented group.
    Structure {
        #[command(flatten)]
        source: Source,
        /// Restrict to a filter quotient.
        #[arg(long, value_enum, default_value = "all")]
        filter: FilterArg,
    },
    /// Class of a model.
    Class {
        #[arg(long)]
        model: String,
        /// Also print the reduced normal form.
        #[arg(long)]
        reduce: bool,
    },
    /// Whether two classes agree in the presented group.
    Equal {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The invariant I from counts or from a model.
    Invariant {
        /// `I1,I2,I3`
        #[arg(long, conflicts_with = "model")]
        counts: Option<String>,
        #[arg(long)]
        model: Option<String>,
    },
    /// Invariant, phi of the filtered class, and the verdict for a model.
    Verdict {
        #[arg(long)]
        model: String,
    },
    /// Blow up a center and compare classes.
    VerifyBlowup {
        #[arg(long)]
        model: String,
        #[arg(long)]
        center: String,
    },
    /// Relation instances over a group and catalog.
    Relations {
        #[command(flatten)]
        source: Source,
        /// Print every instance with its provenance.
        #[arg(long)]
        dump: bool,
    },
    /// phi^G of a class (a file, or a model's class), after filtering.
    Phi {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        a: Option<String>,
    },
}

/// Inline JSON, a file path, or the name of a shipped fixture.
fn read_input(what: &'static str, arg: &str, named: impl Fn(&str) -> Option<&'static str>) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).map_err(|e| Error::parse(what, format!("{arg}: {e}")));
    }
    named(arg)
        .map(str::to_string)
        .ok_or_else(|| Error::parse(what, format!("`{arg}` is neither a file nor a shipped fixture")))
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &'static str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(what, e.to_string()))
}

pub fn load_model(arg: &str) -> Result<ModelDescription> {
    parse_json("model", &read_input("model", arg, fixtures::model_json)?)
}

pub fn load_catalog(arg: &str) -> Result<ActionCatalog> {
    parse_json("catalog", &read_input("catalog", arg, fixtures::catalog_json)?)
}

pub fn load_group(arg: &str) -> Result<FiniteGroup> {
    let value: Value = parse_json("group", &read_input("group", arg, fixtures::group_json)?)?;
    check_group_keys(&value)?;
    let desc: GroupDesc = serde_json::from_value(value).map_err(|e| Error::parse("group", e.to_string()))?;
    Ok(FiniteGroup::build(&desc)?)
}

/// Serde ignores unknown keys on internally tagged enums, so they are
/// rejected here.
fn check_group_keys(value: &Value) -> Result<()> {
    let Some(obj) = value.as_object() else {
        return Err(Error::parse("group", "expected an object"));
    };
    let allowed: &[&str] = match obj.get("kind").and_then(Value::as_str) {
        Some("cyclic") => &["kind", "n"],
        Some("abelian") => &["kind", "factors"],
        Some("table") => &["kind", "mul"],
        Some("perm") => &["kind", "degree", "gens"],
        _ => return Ok(()),
    };
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::parse("group", format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

pub fn load_center(arg: &str) -> Result<BlowupCenter> {
    parse_json("center", &read_input("center", arg, fixtures::center_json)?)
}

fn load_class(ctx: &Context, arg: &str) -> Result<BurnsideClass> {
    let text = std::fs::read_to_string(arg).map_err(|e| Error::parse("class", format!("{arg}: {e}")))?;
    ctx.class_from_json(&parse_json::<Value>("class", &text)?)
}

impl Source {
    fn context(&self) -> Result<Context> {
        if let Some(m) = &self.model {
            if self.catalog.is_some() || self.group.is_some() {
                return Err(Error::parse("arguments", "--model excludes --group and --catalog"));
            }
            return load_model(m)?.context();
        }
        let catalog = self
            .catalog
            .as_deref()
            .ok_or_else(|| Error::parse("arguments", "--catalog or --model is required"))?;
        load_context(self.group.as_deref(), catalog)
    }
}

/// Context from a catalog and an optional group; the group defaults to the
/// one named by the catalog.
pub fn load_context(group: Option<&str>, catalog: &str) -> Result<Context> {
    let catalog = load_catalog(catalog)?;
    let group = match (group, &catalog.group) {
        (Some(g), _) => load_group(g)?,
        (None, Some(d)) => FiniteGroup::build(d)?,
        (None, None) => return Err(Error::parse("arguments", "--group is required for this catalog")),
    };
    Context::new(group, catalog)
}

fn structure_json(s: &GroupStructure) -> Value {
    serde_json::to_value(s).expect("structure serializes")
}

/// Text lines or a JSON document.
enum Report {
    Text(Vec<String>),
    Json(Value),
}

fn execute(cli: &Cli) -> Result<Report> {
    let json = cli.json;
    let report = match &cli.command {
        Command::Structure { source, filter } => {
            let ctx = source.context()?;
            let p = Presentation::new(&ctx)?;
            let s = match filter {
                FilterArg::All => p.structure(),
                FilterArg::Maximal => {
                    FilteredPresentation::new(&ctx, &p, FilterSpec::MaximalStabilizer)?.structure()
                }
            };
            if json {
                Report::Json(structure_json(&s))
            } else {
                let torsion: Vec<String> = s.torsion.iter().map(ToString::to_string).collect();
                Report::Text(vec![
                    format!("symbols: {}", p.symbols.len()),
                    format!("relations: {}", p.relations.len()),
                    format!("structure: {s}"),
                    format!("free_rank: {}", s.free_rank),
                    format!("torsion: [{}]", torsion.join(", ")),
                ])
            }
        }
        Command::Class { model, reduce } => {
            let m = load_model(model)?;
            let ctx = m.context()?;
            validate_model(&ctx, &m)?;
            let class = class_of_action(&ctx, &m)?;
            let reduced = if *reduce {
                Some(Presentation::new(&ctx)?.reduce(&class)?)
            } else {
                None
            };
            if json {
                let mut v = ctx.class_to_json(&class);
                if let Some(r) = &reduced {
                    v["reduced"] = ctx.class_to_json(r);
                }
                Report::Json(v)
            } else {
                let mut lines = vec![format!("class: {}", ctx.render_class(&class))];
                if let Some(r) = &reduced {
                    lines.push(format!("reduced: {}", ctx.render_class(r)));
                }
                Report::Text(lines)
            }
        }
        Command::Equal { source, a, b } => {
            let ctx = source.context()?;
            let (a, b) = (load_class(&ctx, a)?, load_class(&ctx, b)?);
            let equal = Presentation::new(&ctx)?.classes_equal(&a, &b)?;
            if json {
                Report::Json(json!({ "equal": equal }))
            } else {
                Report::Text(vec![format!("equal: {equal}")])
            }
        }
        Command::Invariant { counts, model } => {
            let counts = match (counts, model) {
                (Some(c), _) => Counts::parse(c)?,
                (None, Some(m)) => {
                    let m = load_model(m)?;
                    let ctx = m.context()?;
                    validate_model(&ctx, &m)?;
                    crate::model::invariant_counts(&ctx, &m)?
                }
                (None, None) => return Err(Error::parse("arguments", "--counts or --model is required")),
            };
            let i = counts.invariant()?;
            let verdict = if i != 0 { OBSTRUCTED } else { NO_OBSTRUCTION };
            if json {
                Report::Json(json!({ "counts": counts, "invariant": i, "verdict": verdict }))
            } else {
                Report::Text(vec![
                    format!("I1={} I2={} I3={}", counts.i1, counts.i2, counts.i3),
                    format!("I={i}"),
                    verdict.to_string(),
                ])
            }
        }
        Command::Verdict { model } => {
            let m = load_model(model)?;
            let ctx = m.context()?;
            let r = verdict(&ctx, &m)?;
            if json {
                Report::Json(serde_json::to_value(&r).expect("report serializes"))
            } else {
                let mut lines = Vec::new();
                if let Some(name) = &r.model {
                    lines.push(format!("model: {name}"));
                }
                lines.extend([
                    format!("I1={} I2={} I3={}", r.counts.i1, r.counts.i2, r.counts.i3),
                    format!("I={}", r.invariant),
                    format!("phi^G(filtered class)={}", r.phi),
                    format!("consistent: {}", r.consistent),
                    format!("class: {}", r.class),
                    format!("filtered class: {}", r.filtered_class),
                    format!("verdict: {}", r.verdict),
                ]);
                lines.extend(r.notes.iter().map(|n| format!("note: {n}")));
                Report::Text(lines)
            }
        }
        Command::VerifyBlowup { model, center } => {
            let m = load_model(model)?;
            let ctx = m.context()?;
            validate_model(&ctx, &m)?;
            let c = load_center(center)?;
            let p = Presentation::new(&ctx)?;
            let check = check_blowup(&ctx, &p, &m, &c)?;
            if json {
                Report::Json(json!({
                    "case": c.case,
                    "before": ctx.class_to_json(&check.before),
                    "after": ctx.class_to_json(&check.after),
                    "delta": check.delta,
                    "invariant": check.equal,
                }))
            } else {
                let mut lines = vec![format!("case: {}", c.case)];
                if let Some(i) = check.delta.removed_stratum {
                    lines.push(format!("removed stratum: {i}"));
                }
                lines.extend([
                    format!("before: {}", ctx.render_class(&check.before)),
                    format!("after: {}", ctx.render_class(&check.after)),
                    format!("difference: {}", ctx.render_class(&(&check.after - &check.before))),
                    format!("invariant: {}", check.equal),
                ]);
                Report::Text(lines)
            }
        }
        Command::Relations { source, dump } => {
            let ctx = source.context()?;
            let p = Presentation::new(&ctx)?;
            if json {
                let relations: Vec<Value> = p
                    .relations
                    .iter()
                    .map(|r| {
                        json!({
                            "rule": r.rule,
                            "source": ctx.render(&r.source),
                            "vector": ctx.class_to_json(&r.vector),
                        })
                    })
                    .collect();
                let symbols: Vec<String> = p.symbols.iter().map(|s| ctx.render(s)).collect();
                let mut v = json!({ "symbols": symbols, "structure": structure_json(&p.structure()) });
                if *dump {
                    v["relations"] = Value::Array(relations);
                } else {
                    v["relation_count"] = json!(p.relations.len());
                }
                Report::Json(v)
            } else {
                let mut lines: Vec<String> = p
                    .symbols
                    .iter()
                    .enumerate()
                    .map(|(i, s)| format!("symbol {i}: {}", ctx.render(s)))
                    .collect();
                if *dump {
                    for r in &p.relations {
                        lines.push(format!(
                            "{}: {} = 0  [from {}]",
                            r.rule,
                            ctx.render_class(&r.vector),
                            ctx.render(&r.source)
                        ));
                    }
                } else {
                    lines.push(format!("relations: {}", p.relations.len()));
                }
                lines.push(format!("structure: {}", p.structure()));
                Report::Text(lines)
            }
        }
        Command::Phi { source, a } => {
            let ctx = source.context()?;
            let class = match (a, &source.model) {
                (Some(path), _) => load_class(&ctx, path)?,
                (None, Some(m)) => {
                    let m = load_model(m)?;
                    validate_model(&ctx, &m)?;
                    class_of_action(&ctx, &m)?
                }
                (None, None) => return Err(Error::parse("arguments", "--a or --model is required")),
            };
            let filtered = FilterSpec::MaximalStabilizer.project(&ctx, &class);
            let phi = phi_g(&ctx, &filtered)?;
            if json {
                Report::Json(json!({ "filtered_class": ctx.class_to_json(&filtered), "phi": phi }))
            } else {
                Report::Text(vec![
                    format!("filtered class: {}", ctx.render_class(&filtered)),
                    format!("phi: {phi}"),
                ])
            }
        }
    };
    Ok(report)
}

/// Runs one invocation, writing the report to `out` and errors to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(Report::Json(v)) => {
            let _ = writeln!(out, "{}", serde_json::to_string(&v).expect("json"));
            0
        }
        Ok(Report::Text(lines)) => {
            if !cli.no_banner {
                let _ = writeln!(out, "{BANNER}");
            }
            for l in lines {
                let _ = writeln!(out, "{l}");
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
