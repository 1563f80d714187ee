//! Command-line front end. Every command renders to a string plus an exit
//! code so the binary stays a thin wrapper.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cluster::enriques_dot;
use crate::error::Error;
use crate::exactpoly::{parse_form, TernaryForm};
use crate::linsys::base_cluster;
use crate::rational::{analyze, verify_theorem, CheckStatus, Options, TheoremReport};
use crate::resolution::{singular_cluster_with_depth, DEFAULT_MAX_DEPTH};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "curvesys", version, about = "Singular clusters and rational linear systems of plane curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Skip the irreducibility heuristic.
    #[arg(long, global = true)]
    pub assume_irreducible: bool,
    /// Seed for general members and sub-pencils.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of blow-ups above a proper point.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEPTH)]
    pub max_depth: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singular cluster, genus and the system L_C of one curve.
    Analyze { curve: String },
    /// Enriques diagram of the singular cluster.
    Diagram { curve: String },
    /// Run the theorem checks over a corpus file, one form per line.
    Verify { corpus: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Cli {
    fn options(&self) -> Options {
        Options { assume_irreducible: self.assume_irreducible, max_depth: self.max_depth }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let opts = cli.options();
    match &cli.command {
        Command::Analyze { curve } => cmd_analyze(curve, &opts, cli.format.unwrap_or(Format::Json)),
        Command::Diagram { curve } => cmd_diagram(curve, &opts, cli.format.unwrap_or(Format::Dot)),
        Command::Verify { corpus } => cmd_verify(corpus, &opts, cli.seed, cli.format.unwrap_or(Format::Json)),
    }
}

fn error_json(curve: &str, e: &Error) -> Value {
    json!({ "curve": curve, "error": { "kind": e.kind(), "message": e.to_string() } })
}

fn error_outcome(curve: &str, e: &Error, format: Format) -> Outcome {
    let output = match format {
        Format::Json => pretty(&error_json(curve, e)),
        _ => format!("error: {}: {e}\n", e.kind()),
    };
    Outcome { output, code: EXIT_INPUT_ERROR }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn parse(curve: &str) -> Result<TernaryForm, Error> {
    parse_form(curve.trim())
}

pub fn cmd_analyze(curve: &str, opts: &Options, format: Format) -> Outcome {
    if format == Format::Dot {
        return cmd_diagram(curve, opts, format);
    }
    let analysis = match parse(curve).and_then(|f| analyze(&f, opts)) {
        Ok(a) => a,
        Err(e) => return error_outcome(curve, &e, format),
    };
    let output = match format {
        Format::Json => {
            let mut v = analysis.to_json();
            if let Some(l) = &analysis.lc {
                let mut lc = l.to_json();
                lc["baseCluster"] = match base_cluster(l) {
                    Ok(b) => b.to_json(),
                    Err(e) => json!({ "error": e.kind() }),
                };
                v["LC"] = lc;
            } else {
                v["LC"] = Value::Null;
            }
            pretty(&v)
        }
        _ => {
            let mut s = format!(
                "curve: {}\ndegree: {}\nnuTilde: {}\ngenus: {}\nomegaNonempty: {}\n",
                analysis.form, analysis.degree, analysis.nu_tilde, analysis.geometric_genus, analysis.omega_nonempty
            );
            match analysis.dim_lc() {
                Some(d) => s.push_str(&format!("dimLC: {d}\n")),
                None => s.push_str("dimLC: -\n"),
            }
            s.push_str("cluster:\n");
            for (p, m) in analysis.singular_cluster.iter() {
                s.push_str(&format!("  {p}  weight {m}\n"));
            }
            s
        }
    };
    Outcome { output, code: EXIT_OK }
}

pub fn cmd_diagram(curve: &str, opts: &Options, format: Format) -> Outcome {
    let kw = match parse(curve).and_then(|f| singular_cluster_with_depth(&f, opts.max_depth)) {
        Ok(k) => k,
        Err(e) => return error_outcome(curve, &e, format),
    };
    let output = match format {
        Format::Json => pretty(&kw.to_json()),
        Format::Dot => enriques_dot(&kw),
        Format::Text => kw.iter().map(|(p, m)| format!("{p}  weight {m}\n")).collect(),
    };
    Outcome { output, code: EXIT_OK }
}

/// Non-comment, non-blank lines of a corpus with their 1-based line numbers.
pub fn corpus_entries(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.to_string()))
        .collect()
}

pub fn cmd_verify(path: &Path, opts: &Options, seed: u64, format: Format) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let output = match format {
                Format::Json => pretty(&json!({ "error": { "kind": "Io", "message": e.to_string() } })),
                _ => format!("error: cannot read {}: {e}\n", path.display()),
            };
            return Outcome { output, code: EXIT_INPUT_ERROR };
        }
    };
    verify_corpus(&text, opts, seed, format)
}

pub fn verify_corpus(text: &str, opts: &Options, seed: u64, format: Format) -> Outcome {
    let entries = corpus_entries(text);
    let results: Vec<(usize, String, Result<TheoremReport, Error>)> = entries
        .par_iter()
        .map(|(line, curve)| (*line, curve.clone(), parse(curve).and_then(|f| verify_theorem(&f, opts, seed))))
        .collect();
    let failed = results.iter().filter(|(_, _, r)| matches!(r, Ok(rep) if !rep.all_passed())).count();
    let errors = results.iter().filter(|(_, _, r)| r.is_err()).count();
    let code = if failed > 0 {
        EXIT_CHECK_FAILED
    } else if errors > 0 {
        EXIT_INPUT_ERROR
    } else {
        EXIT_OK
    };
    let output = match format {
        Format::Text => verify_table(&results),
        _ => {
            let curves: Vec<Value> = results
                .iter()
                .map(|(line, curve, r)| {
                    let mut v = match r {
                        Ok(rep) => rep.to_json(),
                        Err(e) => error_json(curve, e),
                    };
                    v["line"] = json!(line);
                    v
                })
                .collect();
            pretty(&json!({
                "seed": seed,
                "curves": curves,
                "summary": { "total": results.len(), "failed": failed, "errors": errors },
            }))
        }
    };
    Outcome { output, code }
}

fn verify_table(results: &[(usize, String, Result<TheoremReport, Error>)]) -> String {
    let mut s = String::from("line  curve                          nuTilde  genus  dimLC  checks\n");
    for (line, curve, r) in results {
        match r {
            Ok(rep) => {
                let a = &rep.analysis;
                let checks: Vec<String> = rep
                    .checks
                    .iter()
                    .map(|(n, st)| match st {
                        CheckStatus::Skipped => format!("{n}=n/a"),
                        _ => format!("{n}={}", st.as_str()),
                    })
                    .collect();
                let dim = a.dim_lc().map_or("-".to_string(), |d| d.to_string());
                s.push_str(&format!(
                    "{line:<5} {curve:<30} {:>7}  {:>5}  {dim:>5}  {}\n",
                    a.nu_tilde,
                    a.geometric_genus,
                    checks.join(" ")
                ));
            }
            Err(e) => s.push_str(&format!("{line:<5} {curve:<30} error {}: {e}\n", e.kind())),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json_of(o: &Outcome) -> Value {
        serde_json::from_str(&o.output).unwrap()
    }

    #[test]
    fn analyze_examples() {
        let opts = Options::default();
        let o = cmd_analyze("y^2*z - x^3 - x^2*z", &opts, Format::Json);
        assert_eq!(o.code, 0);
        let v = json_of(&o);
        assert_eq!((v["nuTilde"].as_i64(), v["genus"].as_i64(), v["dimLC"].as_i64()), (Some(5), Some(0), Some(6)));
        assert_eq!(v["omegaNonempty"], json!(true));
        let o = cmd_analyze("x + y^2", &opts, Format::Json);
        assert_eq!(o.code, 2);
        assert_eq!(json_of(&o)["error"]["kind"], json!("NotHomogeneous"));
        let v = json_of(&cmd_analyze("y^2*z - x^3 + x*z^2", &opts, Format::Json));
        assert_eq!((v["genus"].as_i64(), v["omegaNonempty"].as_bool()), (Some(1), Some(false)));
    }

    #[test]
    fn diagram_examples() {
        let opts = Options::default();
        let nodes = |c: &str| cmd_diagram(c, &opts, Format::Dot).output.matches("label=").count();
        assert_eq!(nodes("y^2*z - x^3 - x^2*z"), 1);
        assert_eq!(nodes("x^2 + y*z"), 0);
        let quintic = cmd_diagram("y^2*z^3 - x^5", &opts, Format::Dot).output;
        assert_eq!(quintic.matches("label=").count(), 4);
        assert_eq!(quintic.matches("->").count(), 2);
    }

    #[test]
    fn verify_corpus_exit_codes() {
        let opts = Options::default();
        assert_eq!(verify_corpus("", &opts, 0, Format::Json).code, 0);
        let o = verify_corpus("# smooth cubic\ny^2*z - x^3 + x*z^2\n", &opts, 0, Format::Json);
        assert_eq!(o.code, 0);
        assert_eq!(json_of(&o)["curves"][0]["checks"]["generalMember"], json!("skipped"));
        assert_eq!(verify_corpus("x + y^2\n", &opts, 0, Format::Json).code, 2);
        let text = verify_corpus("x^2 + y*z\nx + y^2\n", &opts, 0, Format::Text).output;
        assert!(text.contains("NotHomogeneous"));
    }
}
