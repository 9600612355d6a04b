//! The `cactus` command line.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or input error,
//! 3 budget exceeded. Data goes to the output stream wrapped in the envelope
//! `{tool_version, invocation, result}`; diagnostics go to the error stream.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley::{ball_with_budget, CayleyBall, CayleyError, ExportFormat, DEFAULT_VERTEX_BUDGET};
use crate::graph::{GraphJson, SquareGraph};
use crate::group::{Family, GroupSpec};
use crate::hyperbolic::{
    embed_ball, four_point_delta, qi_fit_with_additive, render_svg, HyperbolicError, DEFAULT_SEED, DEFAULT_SWEEP_BUDGET,
};
use crate::rewriting::{equal, normalize, Word};
use crate::verify::{self, VerificationReport, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "cactus", version, about = "Cactus and affine cactus groups: normal forms, Cayley balls, checks")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long, default_value = "affine")]
    pub family: Family,
    #[arg(long, default_value_t = 3)]
    pub n: u32,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, CliError> {
        GroupSpec::new(self.family, self.n).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Squares,
    Edges,
    Cubes,
    Median,
    ClaimPhi,
    ClaimPsi,
    SquareNormalForms,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Print the normal form of a word.
    Normalize {
        #[command(flatten)]
        group: GroupArgs,
        /// Word such as "1,2;2,3"; "" or "e" is the identity.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Decide whether two words represent the same element.
    Equal {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        word2: String,
    },
    /// Build a Cayley ball and export it.
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Maximum number of vertices.
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET as u64)]
        budget: u64,
    },
    /// Sphere sizes of a Cayley ball.
    Growth {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET as u64)]
        budget: u64,
    },
    /// Run one of the checks; exits 1 on failure.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Check a graph stored in the ball JSON schema instead of a ball.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET as u64)]
        budget: u64,
    },
    /// Embed a ball of AJ_3 in the Poincaré disk and render it.
    Embed {
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Draw the graph geodesic and hyperbolic geodesic from e to this word.
        #[arg(long)]
        highlight: Option<String>,
    },
    /// Quasi-isometry constants of the AJ_3 embedding.
    QiFit {
        #[arg(long)]
        radius: u32,
        /// Additive constant allowed in the fit.
        #[arg(long, default_value_t = 0.0)]
        c: f64,
    },
    /// Four-point hyperbolicity constant of a Cayley ball.
    Delta {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Quadruple count above which the sweep is sampled.
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Budget(String),
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<HyperbolicError> for CliError {
    fn from(e: HyperbolicError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

struct Outcome {
    result: Value,
    /// Plain text printed instead of the envelope.
    text: Option<String>,
    passed: bool,
}

impl Outcome {
    fn ok(result: impl Serialize) -> Self {
        Outcome { result: serde_json::to_value(result).expect("serializable"), text: None, passed: true }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli.verb)),
            Err(e) => Err(CliError::Usage(e.to_string())),
        },
        None => execute(&cli.verb),
    };
    match outcome {
        Ok(o) => {
            let written = match &o.text {
                Some(t) => writeln!(out, "{t}"),
                None => {
                    let envelope = json!({
                        "tool_version": TOOL_VERSION,
                        "invocation": argv[1..],
                        "result": o.result,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&envelope).expect("serializable"))
                }
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if o.passed {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAILED
            }
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Budget(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_BUDGET
        }
    }
}

fn parse_word(spec: GroupSpec, text: &str) -> Result<Word, CliError> {
    Word::parse(spec, text).map_err(|e| CliError::Usage(format!("bad word {text:?}: {e}")))
}

fn build(spec: GroupSpec, radius: u32, budget: u64) -> Result<CayleyBall, CliError> {
    Ok(ball_with_budget(spec, radius, usize::try_from(budget).unwrap_or(usize::MAX))?)
}

fn report(r: VerificationReport) -> Outcome {
    Outcome { passed: r.passed, ..Outcome::ok(&r) }
}

/// Reads a graph in the ball JSON schema, bare or inside a CLI envelope.
fn load_graph(path: &PathBuf) -> Result<SquareGraph, CliError> {
    let text = fs::read_to_string(path)?;
    let mut value: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(inner) = value.get_mut("result") {
        value = inner.take();
    }
    let json: GraphJson = serde_json::from_value(value).map_err(|e| CliError::Usage(e.to_string()))?;
    SquareGraph::from_json(&json).map_err(|e| CliError::Usage(e.to_string()))
}

fn affine3() -> GroupSpec {
    GroupSpec { family: Family::Affine, degree: 3 }
}

fn execute(verb: &Verb) -> Result<Outcome, CliError> {
    match verb {
        Verb::Normalize { group, word, format } => {
            let spec = group.spec()?;
            let w = parse_word(spec, word)?;
            let nf = normalize(&w);
            match format {
                OutFormat::Text => Ok(Outcome { text: Some(nf.to_string()), ..Outcome::ok(()) }),
                _ => Ok(Outcome::ok(json!({
                    "input": w.to_string(),
                    "normal_form": nf.to_string(),
                    "length": nf.len(),
                }))),
            }
        }
        Verb::Equal { group, word, word2 } => {
            let spec = group.spec()?;
            let (a, b) = (parse_word(spec, word)?, parse_word(spec, word2)?);
            let same = equal(&a, &b).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Outcome::ok(
                json!({ "equal": same, "normal_form": normalize(&a).to_string(), "normal_form2": normalize(&b).to_string() }),
            ))
        }
        Verb::Ball { group, radius, format, out, budget } => {
            let b = build(group.spec()?, *radius, *budget)?;
            let text = match format {
                OutFormat::Dot => {
                    let mut buf = Vec::new();
                    b.export(ExportFormat::Dot, &mut buf)?;
                    Some(String::from_utf8(buf).expect("utf8").trim_end().to_string())
                }
                _ => None,
            };
            let outcome = Outcome { text, ..Outcome::ok(b.to_json()) };
            match out {
                Some(path) => {
                    let body = match &outcome.text {
                        Some(t) => format!("{t}\n"),
                        None => serde_json::to_string_pretty(&outcome.result).expect("serializable") + "\n",
                    };
                    fs::write(path, body)?;
                    Ok(Outcome::ok(json!({ "path": path, "vertices": b.len(), "edges": b.edges().len() })))
                }
                None => Ok(outcome),
            }
        }
        Verb::Growth { group, radius, budget } => {
            let b = build(group.spec()?, *radius, *budget)?;
            Ok(Outcome::ok(json!({ "sphere_sizes": b.sphere_sizes(), "vertices": b.len() })))
        }
        Verb::Verify { group, check, radius, depth, graph, budget } => {
            if let Some(path) = graph {
                let g = load_graph(path)?;
                return match check {
                    Check::Edges => Ok(report(verify::check_no_shared_consecutive_edges(&g))),
                    Check::Cubes => Ok(report(verify::check_cube_spans(&g))),
                    Check::Median => Ok(report(verify::check_median(&g, *depth)?)),
                    other => Err(CliError::Usage(format!("check {other:?} needs a group, not --graph"))),
                };
            }
            let spec = group.spec()?;
            let n = spec.n();
            match check {
                Check::ClaimPhi => return Ok(report(verify::verify_claim_phi(n)?)),
                Check::ClaimPsi => return Ok(report(verify::verify_claim_psi(n)?)),
                _ => {}
            }
            if *check == Check::Median && 3 * depth > *radius {
                return Err(VerifyError::PreconditionViolated(format!(
                    "3·depth = {} exceeds radius {radius}",
                    3 * depth
                ))
                .into());
            }
            let b = build(spec, *radius, *budget)?;
            Ok(report(match check {
                Check::Squares => verify::check_squares_embedded(&b),
                Check::Edges => verify::check_no_shared_consecutive_edges_ball(&b),
                Check::Cubes => verify::check_cube_spans_ball(&b),
                Check::Median => verify::check_median_ball(&b, *depth)?,
                Check::SquareNormalForms => verify::check_square_normal_forms(&b)?,
                Check::ClaimPhi | Check::ClaimPsi => unreachable!("handled above"),
            }))
        }
        Verb::Embed { radius, out, highlight } => {
            let b = build(affine3(), *radius, DEFAULT_VERTEX_BUDGET as u64)?;
            let target = match highlight {
                Some(w) => Some(b.require(&parse_word(affine3(), w)?)?),
                None => None,
            };
            let e = embed_ball(b)?;
            let geometry = e.geometry();
            let svg = render_svg(&e, target.map(|t| (e.ball.identity(), t)));
            let passed = geometry.passed(1e-9, 1e-9, 1e-8);
            match out {
                Some(path) => {
                    fs::write(path, &svg)?;
                    Ok(Outcome { passed, ..Outcome::ok(json!({ "path": path, "geometry": geometry })) })
                }
                None => Ok(Outcome { text: Some(svg.trim_end().to_string()), passed, ..Outcome::ok(()) }),
            }
        }
        Verb::QiFit { radius, c } => {
            let e = embed_ball(build(affine3(), *radius, DEFAULT_VERTEX_BUDGET as u64)?)?;
            Ok(Outcome::ok(qi_fit_with_additive(&e, *c)?))
        }
        Verb::Delta { group, radius, seed, budget } => {
            let b = build(group.spec()?, *radius, DEFAULT_VERTEX_BUDGET as u64)?;
            Ok(Outcome::ok(four_point_delta(&b, *budget, *seed)?))
        }
    }
}
