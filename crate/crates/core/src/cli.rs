//! The `mvk` command line.
//!
//! Exit codes: 0 success or pass, 1 verification counterexample, 2 usage,
//! parse or I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::centripetal::{game_fixpoint, CentralCone};
use crate::error::{Error, Result};
use crate::format::{self, element_value, parse_element, Document};
use crate::lgroup::good_sequence_of;
use crate::mcnaughton::PLFunction;
use crate::mv::{ChainProduct, MvElement};
use crate::plot::{self, Generator};
use crate::spectra::below_order;
use crate::term::Term;
use crate::verifier::{self, Bounds, Model, Mutant, Mutation, Outcome, Standard, Suite, SuiteReport, Witnesses};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mvk", version, about = "Finite MV-algebras, the centripetal order and the σ-game")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    ObjectNotation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MutationArg {
    OplusBound,
    NegOffset,
    BelowFlip,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::OplusBound => Mutation::OplusBound,
            MutationArg::NegOffset => Mutation::NegOffset,
            MutationArg::BelowFlip => Mutation::BelowFlip,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summarize a document: carrier, boolean skeleton and primes for algebras.
    Info { file: PathBuf },
    /// Iterate the game map to its fixpoint and print the trace.
    Fixpoint { file: PathBuf },
    /// List the central elements below an element.
    Center { file: PathBuf },
    /// Compare two elements in both orders and report their distance.
    Order { x: PathBuf, y: PathBuf },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        /// Largest carrier for the element-level sweeps.
        #[arg(long)]
        max_carrier: Option<u64>,
        /// Run against a corrupted copy of one operation.
        #[arg(long, value_enum)]
        mutation: Option<MutationArg>,
    },
    /// Draw a graph (`.svg` or `.ppm`) or a density plot (`.ppm`).
    ///
    /// SOURCE is `sigma`, the path of a `pl1` document, or `free2:<gen>` with
    /// gen one of x, y, dist, sum, prod for a density plot.
    Plot {
        source: String,
        #[arg(long)]
        out: PathBuf,
        /// Raster side length in pixels.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Unary term applied to the source, e.g. `sigma(sigma(X))`.
        #[arg(long)]
        term: Option<String>,
    },
}

/// Failure that decides the exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Counterexample,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs the command line with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Counterexample) => EXIT_COUNTEREXAMPLE,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let json = cli.format == OutputFormat::ObjectNotation;
    let text = match &cli.command {
        Command::Info { file } => info(&read(file)?, json)?,
        Command::Fixpoint { file } => fixpoint(&read(file)?, json)?,
        Command::Center { file } => center(&read(file)?, json)?,
        Command::Order { x, y } => order(&read(x)?, &read(y)?, json)?,
        Command::Verify {
            suite,
            max_carrier,
            mutation,
        } => {
            let model: Box<dyn Model> = match mutation {
                Some(m) => Box::new(Mutant((*m).into())),
                None => Box::new(Standard),
            };
            let (reports, passed) = verify(suite, *max_carrier, model.as_ref())?;
            emit(out, &render_reports(&reports, json))?;
            return if passed { Ok(()) } else { Err(Failure::Counterexample) };
        }
        Command::Plot {
            source,
            out: path,
            grid,
            term,
        } => plot_cmd(source, path, *grid, term.as_deref(), json)?,
    };
    emit(out, &text)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn info(src: &str, json: bool) -> Result<String> {
    let doc = Document::parse(src)?;
    let algebra_summary = |a: &ChainProduct| {
        if json {
            json!({
                "kind": "info",
                "denominators": a.denominators(),
                "carrier": a.carrier_size(),
                "booleans": a.boolean_count(),
                "primes": a.rank(),
            })
            .to_string()
        } else {
            format!(
                "carrier {}, booleans {}, primes {}\ndenominators {:?}",
                a.carrier_size(),
                a.boolean_count(),
                a.rank(),
                a.denominators()
            )
        }
    };
    Ok(match &doc {
        Document::ChainProduct(a) => algebra_summary(a),
        Document::Element(e) => {
            let summary = algebra_summary(e.algebra());
            if json {
                summary
            } else {
                format!(
                    "{summary}\nelement {e} in {}, boolean {}",
                    e.algebra(),
                    yes_no(e.is_boolean())
                )
            }
        }
        Document::Pl(f) => {
            let breaks: Vec<String> = f.breakpoints().iter().map(ToString::to_string).collect();
            if json {
                json!({
                    "kind": "info",
                    "pieces": f.pieces().len(),
                    "breakpoints": breaks,
                    "mcnaughton": f.is_mcnaughton(),
                })
                .to_string()
            } else {
                format!(
                    "pieces {}, breakpoints {}, mcnaughton {}",
                    f.pieces().len(),
                    breaks.join(" "),
                    yes_no(f.is_mcnaughton())
                )
            }
        }
        Document::LGroupElement(g) => {
            let seq = good_sequence_of(g).ok().map(|s| {
                s.entries.iter().map(ToString::to_string).collect::<Vec<_>>()
            });
            if json {
                json!({
                    "kind": "info",
                    "unit": g.group().unit(),
                    "coords": g.coords(),
                    "good_sequence": seq,
                })
                .to_string()
            } else {
                let seq = seq.map_or("none (negative coordinate)".to_string(), |s| {
                    format!("[{}]", s.join(", "))
                });
                format!("group {}, element {g}, good sequence {seq}", g.group())
            }
        }
    })
}

fn fixpoint(src: &str, json: bool) -> Result<String> {
    let a = parse_element(src)?.element;
    let trace = game_fixpoint(&a);
    Ok(if json {
        json!({
            "kind": "game_trace",
            "steps": trace.steps[..=trace.n].iter().map(element_value).collect::<Vec<_>>(),
            "n": trace.n,
        })
        .to_string()
    } else {
        trace.to_string()
    })
}

fn center(src: &str, json: bool) -> Result<String> {
    let a = parse_element(src)?.element;
    let cone = CentralCone::of(&a);
    Ok(if json {
        json!({
            "kind": "central_cone",
            "members": cone.members.iter().map(element_value).collect::<Vec<_>>(),
            "singleton": cone.is_singleton(),
            "fixpoint": element_value(&cone.fixpoint),
            "fixpoint_oplus": element_value(&cone.fixpoint_oplus),
            "fixpoint_odot": element_value(&cone.fixpoint_odot),
        })
        .to_string()
    } else {
        let members: Vec<String> = cone.members.iter().map(ToString::to_string).collect();
        format!(
            "C_p = {{{}}}, {}\nfixpoint {}\nfixpoint ⊕ fixpoint {}\nfixpoint ⊙ fixpoint {}",
            members.join(","),
            if cone.is_singleton() { "singleton" } else { "non-singleton" },
            cone.fixpoint,
            cone.fixpoint_oplus,
            cone.fixpoint_odot
        )
    })
}

/// Brings two element documents into one algebra. Named algebras must agree;
/// an inferred one is re-read in the other's algebra; two inferred ones meet
/// in the coordinatewise lcm.
fn common_pair(x: &str, y: &str) -> Result<(MvElement, MvElement)> {
    let (x, y) = (parse_element(x)?, parse_element(y)?);
    let (a, b) = (&x.element, &y.element);
    if a.rank() != b.rank() {
        return Err(Error::ArityMismatch {
            expected: a.rank(),
            found: b.rank(),
        });
    }
    let target = match (x.explicit_algebra, y.explicit_algebra) {
        (true, true) => {
            a.same_algebra(b)?;
            a.algebra().clone()
        }
        (true, false) => a.algebra().clone(),
        (false, true) => b.algebra().clone(),
        (false, false) => ChainProduct::new(
            a.algebra()
                .denominators()
                .iter()
                .zip(b.algebra().denominators())
                .map(|(&p, &q)| num_integer::lcm(p, q))
                .collect(),
        )?,
    };
    Ok((target.element(&a.values())?, target.element(&b.values())?))
}

fn order(x: &str, y: &str, json: bool) -> Result<String> {
    let (a, b) = common_pair(x, y)?;
    let below = below_order(&a, &b)?;
    let above = below_order(&b, &a)?;
    let leq = a.natural_leq(&b)?;
    let geq = b.natural_leq(&a)?;
    let dist = a.chang_distance(&b)?;
    Ok(if json {
        json!({
            "kind": "order",
            "below": below,
            "above": above,
            "leq": leq,
            "geq": geq,
            "distance": element_value(&dist),
        })
        .to_string()
    } else {
        format!(
            "⊑: {}\n⊒: {}\n≤: {}\n≥: {}\ndistance: {dist}",
            yes_no(below),
            yes_no(above),
            yes_no(leq),
            yes_no(geq)
        )
    })
}

fn verify(
    name: &str,
    max_carrier: Option<u64>,
    model: &dyn Model,
) -> Result<(Vec<SuiteReport>, bool), Failure> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name.parse().map_err(|e: verifier::UnknownSuite| Failure::Usage(e.to_string()))?]
    };
    let bounds = match max_carrier {
        Some(n) if n < 2 => {
            return Err(Failure::Usage(format!("--max-carrier must be at least 2, got {n}")))
        }
        Some(n) => Bounds::with_max_carrier(n),
        None => Bounds::default(),
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|s| s.run(model, &bounds)).collect();
    let passed = reports.iter().all(SuiteReport::passed);
    Ok((reports, passed))
}

fn render_reports(reports: &[SuiteReport], json: bool) -> String {
    if !json {
        return reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    }
    let items: Vec<Value> = reports.iter().map(report_value).collect();
    if items.len() == 1 {
        items[0].to_string()
    } else {
        Value::Array(items).to_string()
    }
}

fn report_value(r: &SuiteReport) -> Value {
    let counts: serde_json::Map<String, Value> =
        r.counts.iter().map(|(k, v)| ((*k).to_string(), json!(v))).collect();
    let outcome = match &r.outcome {
        Outcome::Pass => json!("pass"),
        Outcome::Counterexample(c) => json!({
            "law": c.law.description(),
            "witnesses": witnesses_value(&c.witnesses),
        }),
    };
    json!({
        "kind": "suite_report",
        "suite": r.suite.name(),
        "model": r.model,
        "instances": r.instances(),
        "counts": counts,
        "outcome": outcome,
        "elapsed_ms": r.elapsed.as_millis() as u64,
        "notes": r.notes,
    })
}

fn witnesses_value(w: &Witnesses) -> Value {
    json!({
        "algebra": w.algebra.as_ref().map(format::chain_product_value),
        "elements": w.elements.iter().map(element_value).collect::<Vec<_>>(),
        "groups": w.groups.iter().map(|g| Document::LGroupElement(g.clone()).to_value()).collect::<Vec<_>>(),
        "values": w.rationals.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "indices": w.indices,
    })
}

fn plot_cmd(source: &str, path: &Path, grid: usize, term: Option<&str>, json: bool) -> Result<String, Failure> {
    let term = term.map(Term::parse).transpose()?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let bytes = if let Some(gen) = source.strip_prefix("free2:") {
        if ext != "ppm" {
            return Err(Failure::Usage("density plots are written as .ppm".into()));
        }
        let gen: Generator = gen.parse()?;
        plot::ppm_density(&term.unwrap_or_else(Term::var), gen, grid)?
    } else {
        let base = if source == "sigma" {
            PLFunction::sigma_star()
        } else {
            match Document::parse(&read(Path::new(source))?)? {
                Document::Pl(f) => f,
                other => {
                    return Err(Failure::Usage(format!(
                        "expected a pl1 document, got {}",
                        other.kind()
                    )))
                }
            }
        };
        let f = match &term {
            Some(t) => base.apply_term(t),
            None => base,
        };
        match ext {
            "svg" => plot::svg_graph(&f).into_bytes(),
            "ppm" => plot::ppm_graph(&f, grid)?,
            _ => return Err(Failure::Usage("output must end in .svg or .ppm".into())),
        }
    };
    std::fs::write(path, &bytes)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(if json {
        json!({"kind": "plot", "out": path.display().to_string(), "bytes": bytes.len()}).to_string()
    } else {
        format!("wrote {} ({} bytes)", path.display(), bytes.len())
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
