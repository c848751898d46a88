//! Command-line front end. Every verb prints one JSON document (or DOT for
//! Bratteli graphs) on stdout; progress and errors go to stderr.
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 verification failure.

use std::ffi::OsString;
use std::fs;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{Element, GenericElement, Scalar, SpecialElement};
use crate::combinatorics::{bell, syt_dimension, BratteliGraph, GraphKind, Partition};
use crate::diagrams::{enumerate_with_limit, evaluate_word, factorize, Diagram, Rank, DEFAULT_ENUM_LIMIT};
use crate::error::{Error, Result};
use crate::scalars::{format_rational, parse_rational, Poly, Rational};
use crate::{murphy, presentation, structure, tensor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Generic,
    Special(Rational),
}

fn parse_rank(s: &str) -> std::result::Result<Rank, String> {
    Rank::parse(s).map_err(|e| e.to_string())
}

fn parse_param(s: &str) -> std::result::Result<Param, String> {
    if s.trim() == "x" {
        return Ok(Param::Generic);
    }
    parse_rational(s).map(Param::Special).map_err(|e| e.to_string())
}

fn parse_partition(s: &str) -> std::result::Result<Partition, String> {
    Partition::parse(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "partalg", version, about = "Exact computations in partition algebras")]
pub struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// JSON output (the default for every verb).
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct RankArg {
    /// Rank, `k` or `m/2`.
    #[arg(long, value_parser = parse_rank)]
    pub k: Rank,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the diagrams of a rank.
    Enum {
        #[command(flatten)]
        rank: RankArg,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        /// Largest double rank to enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUM_LIMIT)]
        limit: usize,
    },
    /// Multiply two elements (diagram or element JSON, inline or a file).
    Mul {
        #[command(flatten)]
        rank: RankArg,
        /// Parameter: a rational or `x`.
        #[arg(long, value_parser = parse_param)]
        n: Param,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Subalgebra membership and propagating number of a diagram.
    Classify {
        #[arg(long)]
        diagram: String,
    },
    /// A word in the generators evaluating to a diagram.
    Factor {
        #[arg(long)]
        diagram: String,
    },
    /// The abstract Bratteli graph, or the one for a given `n`.
    Bratteli {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Walk counts at the top level and the dimension identities.
    Dims {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Gram matrix of a trace form.
    Gram {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, value_parser = parse_param)]
        n: Param,
        /// `regular` or `diagram`.
        #[arg(long, default_value = "regular")]
        trace: String,
        /// Include the determinant.
        #[arg(long)]
        det: bool,
        /// Include the matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Semisimplicity by the rank bound and by the Gram determinant.
    Semisimple {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        n: usize,
    },
    /// Character polynomial `tr^mu`.
    Chars {
        /// Partition such as `2,1`; empty for the empty partition.
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        mu: Partition,
        #[arg(long)]
        half: bool,
    },
    /// Murphy element checks up to a rank.
    MurphyCheck {
        #[command(flatten)]
        rank: RankArg,
        /// Parameters for the kappa identity.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        witness: Vec<usize>,
        /// Parameter for the joint spectra.
        #[arg(long)]
        spectral: Option<usize>,
    },
    /// Tensor space action: homomorphism, commutant and bimodule checks.
    SchurWeyl {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        n: usize,
        /// Check this many seeded random pairs instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Matrix units at a specialized parameter.
    Units {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, value_parser = parse_param)]
        n: Param,
        /// Check relations, the ideal idempotent and minimality.
        #[arg(long)]
        verify: bool,
    },
    /// Rank of a Specht module.
    Specht {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        lam: Partition,
        #[arg(long)]
        n: Option<String>,
    },
    /// Check the generator relations by diagram composition.
    VerifyPresentation {
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Payload {
    Json(Value),
    Text(String),
}

struct Report {
    payload: Payload,
    verified: bool,
}

impl Report {
    fn json(v: Value) -> Report {
        Report { payload: Payload::Json(v), verified: true }
    }

    fn checked(v: Value, ok: bool) -> Report {
        Report { payload: Payload::Json(v), verified: ok }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let stdout = match report.payload {
                Payload::Json(v) => format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
                Payload::Text(s) => s,
            };
            let (code, stderr) = if report.verified {
                (EXIT_OK, String::new())
            } else {
                (EXIT_VERIFY, "verification failed\n".to_string())
            };
            Outcome { code, stdout, stderr }
        }
        Err(e) => Outcome { code: EXIT_DOMAIN, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_json(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

fn read_diagram(arg: &str) -> Result<Diagram> {
    serde_json::from_value(read_json(arg)?).map_err(|e| Error::Parse(e.to_string()))
}

fn read_element<C: Scalar>(arg: &str, rank: Rank, param: C) -> Result<Element<C>> {
    let v = read_json(arg)?;
    let e = if v.get("terms").is_some() {
        Element::from_json(&v)?
    } else {
        let d: Diagram = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        Element::from_diagram(&d, param.clone())
    };
    if e.rank() != rank {
        return Err(Error::RankMismatch(e.rank().to_string(), rank.to_string()));
    }
    if e.param() != &param {
        return Err(Error::ModeMismatch);
    }
    Ok(e)
}

fn rat_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn poly_json(p: &Poly) -> Value {
    Value::String(p.to_string())
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Enum { rank, count, limit } => {
            let ds = enumerate_with_limit(rank.k, *limit)?;
            if *count {
                Ok(Report::json(json!({"count": ds.len()})))
            } else {
                Ok(Report::json(json!({"count": ds.len(), "diagrams": ds})))
            }
        }
        Command::Mul { rank, n, lhs, rhs } => match n {
            Param::Generic => {
                let a: GenericElement = read_element(lhs, rank.k, Poly::x())?;
                let b = read_element(rhs, rank.k, Poly::x())?;
                Ok(Report::json(a.mul(&b)?.to_json()))
            }
            Param::Special(n) => {
                let a: SpecialElement = read_element(lhs, rank.k, n.clone())?;
                let b = read_element(rhs, rank.k, n.clone())?;
                Ok(Report::json(a.mul(&b)?.to_json()))
            }
        },
        Command::Classify { diagram } => {
            let d = read_diagram(diagram)?;
            let c = d.classify();
            Ok(Report::json(json!({
                "diagram": d,
                "classification": c,
                "propagating_number": d.propagating_number(),
                "blocks": d.num_blocks(),
            })))
        }
        Command::Factor { diagram } => {
            let d = read_diagram(diagram)?;
            let word = factorize(&d)?;
            let (back, removed) = evaluate_word(&word, d.rank())?;
            let ok = back == d;
            let names: Vec<String> = word.iter().map(|g| g.to_string()).collect();
            Ok(Report::checked(
                json!({"word": names, "evaluates_back": ok, "closed_loops": removed}),
                ok,
            ))
        }
        Command::Bratteli { rank, n, dot } => {
            let kind = n.map_or(GraphKind::Abstract, GraphKind::Concrete);
            let g = BratteliGraph::build(kind, rank.k)?;
            if *dot {
                Ok(Report { payload: Payload::Text(g.to_dot()), verified: true })
            } else {
                Ok(Report::json(g.to_json()))
            }
        }
        Command::Dims { rank, n } => dims(rank.k, *n),
        Command::Gram { rank, n, trace, det, matrix } => {
            let kind = structure::TraceKind::parse(trace)?;
            eprintln!("building the {} Gram matrix at rank {}", kind.name(), rank.k);
            let mut out = json!({"rank": rank.k.to_string(), "trace": kind.name()});
            match n {
                Param::Generic => {
                    let g = structure::gram_generic(rank.k, kind)?;
                    out["n"] = json!("x");
                    out["size"] = json!(g.basis.len());
                    if *det {
                        out["det"] = poly_json(&g.det);
                    }
                    if *matrix {
                        out["matrix"] = json!(g.matrix.iter().map(|r| r.iter().map(poly_json).collect::<Vec<_>>()).collect::<Vec<_>>());
                    }
                }
                Param::Special(n) => {
                    let g = structure::gram_special(rank.k, n, kind)?;
                    out["n"] = rat_json(n);
                    out["size"] = json!(g.basis.len());
                    if *det {
                        out["det"] = rat_json(&g.det);
                    }
                    if *matrix {
                        out["matrix"] = json!(g.matrix.iter().map(|r| r.iter().map(rat_json).collect::<Vec<_>>()).collect::<Vec<_>>());
                    }
                }
            }
            Ok(Report::json(out))
        }
        Command::Semisimple { rank, n } => {
            let v = structure::semisimple_verdict(rank.k, *n)?;
            Ok(Report::checked(
                json!({
                    "rank": rank.k.to_string(),
                    "n": n,
                    "verdict": v.verdict,
                    "by_theorem": v.by_theorem,
                    "by_gram": v.by_gram,
                    "gram_det": v.gram_det.as_ref().map(format_rational),
                }),
                v.agrees(),
            ))
        }
        Command::Chars { mu, half } => {
            let c = structure::char_poly(mu, *half);
            Ok(Report::json(json!({
                "mu": mu,
                "half": half,
                "poly": poly_json(&c.poly),
                "coeffs": c.poly.coeffs().iter().map(rat_json).collect::<Vec<_>>(),
                "roots": c.poly.rational_roots().iter().map(rat_json).collect::<Vec<_>>(),
            })))
        }
        Command::MurphyCheck { rank, witness, spectral } => {
            let r = murphy::verify_murphy(rank.k, witness, *spectral)?;
            let ok = r.ok();
            Ok(Report::checked(json!(r), ok))
        }
        Command::SchurWeyl { rank, n, samples } => {
            let hom = tensor::homomorphism_check(*n, rank.k, samples.map(|c| (c, cli.seed)))?;
            let comm = tensor::commutant_dims(*n, rank.k)?;
            let bim = tensor::bimodule_dimension_check(*n, rank.k)?;
            let ok = hom.failures == 0 && comm.kernel_matches() && bim.ok();
            Ok(Report::checked(
                json!({"homomorphism": hom, "commutant": comm, "bimodule": bim}),
                ok,
            ))
        }
        Command::Units { rank, n, verify } => {
            let Param::Special(n) = n else {
                return Err(Error::ModeMismatch);
            };
            if *verify {
                let r = structure::units_report(rank.k, n)?;
                let ok = r.ok();
                Ok(Report::checked(units_json(&r), ok))
            } else {
                let sys = structure::matrix_units(rank.k, n)?;
                let blocks: Vec<Value> = sys
                    .blocks
                    .iter()
                    .map(|(mu, ps)| json!({"mu": mu, "paths": ps.len()}))
                    .collect();
                Ok(Report::json(json!({"rank": rank.k.to_string(), "n": rat_json(n), "units": sys.len(), "blocks": blocks})))
            }
        }
        Command::Specht { rank, lam, n } => {
            let witness = n.as_deref().map(parse_rational).transpose()?;
            let r = structure::specht(rank.k, lam, witness)?;
            Ok(Report::checked(
                json!({
                    "rank": rank.k.to_string(),
                    "lambda": lam,
                    "n": rat_json(&r.n),
                    "module_rank": r.rank,
                    "expected": r.expected,
                    "psi_nonzero": r.psi_nonzero,
                }),
                r.ok(),
            ))
        }
        Command::VerifyPresentation { kmax } => {
            let r = presentation::verify_presentation(*kmax)?;
            let ok = r.ok();
            Ok(Report::checked(json!(r), ok))
        }
    }
}

fn units_json(r: &structure::UnitsReport) -> Value {
    json!({
        "rank": r.level.to_string(),
        "n": rat_json(&r.n),
        "units": r.units,
        "blocks": r.blocks.iter().map(|(mu, d)| json!({"mu": mu, "paths": d})).collect::<Vec<_>>(),
        "products_checked": r.check.products_checked,
        "product_failures": r.check.product_failures,
        "sums_to_one": r.check.sums_to_one,
        "z_idempotent": r.z_idempotent,
        "z_spans_ideal": r.z_spans_ideal,
        "minimal_idempotents": r.minimal_idempotents,
        "t_independent": r.t_independent,
    })
}

fn dims(rank: Rank, n: Option<usize>) -> Result<Report> {
    match n {
        None => {
            let g = BratteliGraph::build(GraphKind::Abstract, rank)?;
            let counts = g.counts_at(rank);
            let squares: num_bigint::BigInt = counts.iter().map(|(_, c)| c * c).sum();
            let expect = bell(rank.double_rank());
            Ok(Report::checked(
                json!({
                    "rank": rank.to_string(),
                    "dims": counts.iter().map(|(mu, c)| json!({"mu": mu, "paths": c.to_string()})).collect::<Vec<_>>(),
                    "sum_of_squares": squares.to_string(),
                    "bell": expect.to_string(),
                }),
                squares == expect,
            ))
        }
        Some(n) => {
            let g = BratteliGraph::build(GraphKind::Concrete(n), rank)?;
            let counts = g.counts_at(rank);
            let weighted: num_bigint::BigInt = counts.iter().map(|(l, c)| syt_dimension(l) * c).sum();
            let space = num_bigint::BigInt::from(n).pow(rank.floor() as u32);
            Ok(Report::checked(
                json!({
                    "rank": rank.to_string(),
                    "n": n,
                    "dims": counts.iter().map(|(l, c)| json!({"lambda": l, "paths": c.to_string(), "sym_dim": syt_dimension(l).to_string()})).collect::<Vec<_>>(),
                    "weighted_sum": weighted.to_string(),
                    "tensor_dim": space.to_string(),
                }),
                weighted == space,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("partalg").chain(args.iter().copied()))
    }

    fn json_of(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn enum_count() {
        let o = go(&["enum", "--k", "2", "--count"]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(json_of(&o), json!({"count": 15}));
        assert_eq!(json_of(&go(&["enum", "--k", "5/2", "--count"]))["count"], 52);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["enum"]).code, EXIT_USAGE);
        assert_eq!(go(&["enum", "--k", "one"]).code, EXIT_USAGE);
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(go(&["--help"]).code, EXIT_OK);
        assert_eq!(go(&["enum", "--k", "9", "--count"]).code, EXIT_DOMAIN);
        assert_eq!(go(&["specht", "--k", "1", "--lam", "2"]).code, EXIT_DOMAIN);
    }

    #[test]
    fn generic_product() {
        let p1 = r#"{"double_rank": 2, "blocks": [[1], [-1]]}"#;
        let o = go(&["mul", "--k", "1", "--n", "x", "--lhs", p1, "--rhs", p1]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        let v = json_of(&o);
        assert_eq!(v["terms"].as_array().unwrap().len(), 1);
        assert_eq!(v["terms"][0]["coeff"], json!(["0", "1"]));
        let o = go(&["mul", "--k", "2", "--n", "x", "--lhs", p1, "--rhs", p1]);
        assert_eq!(o.code, EXIT_DOMAIN);
    }

    #[test]
    fn semisimple_rank_two() {
        let o = go(&["semisimple", "--k", "2", "--n", "2"]);
        assert_eq!(o.code, EXIT_OK);
        let v = json_of(&o);
        assert_eq!(v["verdict"], json!(false));
        assert_eq!(v["gram_det"], json!("0"));
    }

    #[test]
    fn chars_and_gram() {
        let v = json_of(&go(&["chars", "--mu", "2", "--half"]));
        assert_eq!(v["roots"], json!(["0", "1", "4"]));
        let v = json_of(&go(&["chars", "--mu", ""]));
        assert_eq!(v["coeffs"], json!(["1"]));
        let v = json_of(&go(&["gram", "--k", "1", "--n", "x", "--trace", "diagram", "--det"]));
        assert_eq!(v["det"], json!(Poly::from_ints(&[0, 0, -1, 1]).to_string()));
    }

    #[test]
    fn factor_and_classify() {
        let d = r#"{"double_rank": 4, "blocks": [[1, -2], [2], [-1]]}"#;
        let o = go(&["factor", "--diagram", d]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(json_of(&o)["evaluates_back"], json!(true));
        let v = json_of(&go(&["classify", "--diagram", d]));
        assert_eq!(v["propagating_number"], json!(1));
    }

    #[test]
    fn bratteli_outputs() {
        let o = go(&["bratteli", "--k", "1", "--dot"]);
        assert!(o.stdout.starts_with("digraph"));
        let o = go(&["dims", "--k", "2"]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(json_of(&o)["sum_of_squares"], json!("15"));
        assert_eq!(go(&["dims", "--k", "2", "--n", "3"]).code, EXIT_OK);
    }

    #[test]
    fn verification_verbs() {
        assert_eq!(go(&["units", "--k", "1", "--n", "7", "--verify"]).code, EXIT_OK);
        assert_eq!(go(&["units", "--k", "2", "--n", "2"]).code, EXIT_DOMAIN);
        let v = json_of(&go(&["specht", "--k", "2", "--lam", "1"]));
        assert_eq!(v["module_rank"], json!(3));
        assert_eq!(go(&["verify-presentation", "--kmax", "2"]).code, EXIT_OK);
        assert_eq!(go(&["schur-weyl", "--k", "1", "--n", "2", "--samples", "5", "--seed", "4"]).code, EXIT_OK);
        assert_eq!(go(&["murphy-check", "--k", "1"]).code, EXIT_OK);
    }

    #[test]
    fn output_is_stable() {
        let a = go(&["enum", "--k", "3/2"]).stdout;
        let b = go(&["enum", "--k", "3/2"]).stdout;
        assert_eq!(a, b);
    }
}
