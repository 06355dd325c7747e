//! The `arithspace` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage
//! errors (bad flags, unparsable domains, elements or expressions).

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coefficients::Field;
use crate::domains::{splitting_type, DomainDescriptor, SplitType};
use crate::error::{Error, Result};
use crate::expr::parse_fn;
use crate::monoid::{MonoidDescriptor, PrimeIndex};
use crate::series::phi;
use crate::space::{spec_embedding, witness_check_sqrtm5, FiniteSpace};
use crate::valuation::valuation;
use crate::verify::{run_suite, Suite};

const SCHEMA: &str = "v1";

#[derive(Debug, Parser)]
#[command(name = "arithspace", version, about = "Arithmetic functions, Dedekind domains and their arithmetic spaces")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient field: Q or Fp:<p>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Comma-separated primes for windowed scans.
    #[arg(long, global = true)]
    window: Option<String>,
    /// Truncation depth for windowed scans.
    #[arg(long, global = true, default_value_t = 4)]
    depth: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an arithmetic function at a monoid element.
    Eval {
        #[arg(long = "fn")]
        expr: String,
        #[arg(long)]
        at: String,
        /// Z+, free(n), or a domain whose ideals form the monoid.
        #[arg(long, default_value = "Z+")]
        monoid: String,
    },
    /// Factor the principal ideal of an element.
    Factor {
        #[arg(long)]
        domain: String,
        element: String,
    },
    /// Multiply two ideals given by generators or prime labels.
    IdealMul {
        #[arg(long)]
        domain: String,
        left: String,
        right: String,
    },
    /// Absolute norm of the principal ideal of an element.
    Norm {
        #[arg(long)]
        domain: String,
        element: String,
    },
    /// Splitting of a rational prime in a quadratic order.
    Split {
        #[arg(long)]
        domain: String,
        prime: u64,
    },
    /// Windowed valuation of an arithmetic function.
    Valuation {
        #[arg(long = "fn")]
        expr: String,
        #[arg(long, default_value = "Z+")]
        monoid: String,
    },
    /// Truncated power series of an arithmetic function.
    Series {
        #[arg(long = "fn")]
        expr: String,
        #[arg(long, default_value = "Z+")]
        monoid: String,
    },
    /// Topology, poset and sheaf reports for a semi-local domain.
    Space {
        #[arg(long, required_unless_present = "example")]
        domain: Option<String>,
        #[arg(long, value_enum, default_value = "topology")]
        report: Report,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Run a worked example instead of a report.
        #[arg(long, value_enum)]
        example: Option<Example>,
    },
    /// Run acceptance suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Report {
    Topology,
    Poset,
    Sheaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Example {
    #[value(name = "sqrt-5")]
    SqrtMinus5,
}

/// Command outcome: text or JSON body, and whether a verification failed.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, failed: false }
    }
}

/// Run with the given arguments (including the program name) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let body = if cli.json || wants_json(&cli) {
                let mut v = json!({ "schema": SCHEMA });
                if let (Value::Object(m), Value::Object(extra)) = (&mut v, o.json) {
                    m.extend(extra);
                }
                serde_json::to_string_pretty(&v).expect("json values serialize")
            } else {
                o.text
            };
            let _ = writeln!(out, "{}", body.trim_end());
            i32::from(o.failed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Verification(_) => 1,
                _ => 2,
            }
        }
    }
}

fn wants_json(cli: &Cli) -> bool {
    matches!(cli.command, Command::Space { format: Format::Json, .. })
}

fn window_for(cli: &Cli, monoid: &MonoidDescriptor) -> Result<Vec<PrimeIndex>> {
    if let Some(w) = &cli.window {
        return w
            .split(',')
            .map(|t| {
                let a = monoid.parse_element(t)?;
                let p = a.support().next().cloned();
                match (a.lambda(), p) {
                    (1, Some(p)) => Ok(p),
                    _ => Err(Error::Parse(format!("{t:?} is not a prime of {monoid}"))),
                }
            })
            .collect();
    }
    Ok(monoid.finite_primes().unwrap_or_else(|| monoid.first_primes(3)))
}

fn labels(ps: &[PrimeIndex]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn execute(cli: &Cli) -> Result<Output> {
    let field: Field = cli.field.parse()?;
    match &cli.command {
        Command::Eval { expr, at, monoid } => {
            let m: MonoidDescriptor = monoid.parse()?;
            let f = parse_fn(&m, field, expr)?;
            let a = m.parse_element(at)?;
            let v = f.try_eval(&a)?;
            Ok(Output::ok(v.to_string(), json!({ "fn": expr, "at": a.to_string(), "value": v })))
        }
        Command::Factor { domain, element } => {
            let d: DomainDescriptor = domain.parse()?;
            let x = d.parse_element(element)?;
            if x.is_zero() {
                return Err(Error::ZeroElement);
            }
            let f = d.factor_principal(&x)?;
            Ok(Output::ok(
                f.to_string(),
                json!({ "domain": d.to_string(), "element": x.to_string(), "factors": f.to_string() }),
            ))
        }
        Command::IdealMul { domain, left, right } => {
            let m = MonoidDescriptor::ideals(domain.parse()?);
            let (a, b) = (m.parse_element(left)?, m.parse_element(right)?);
            let c = a.mul(&b);
            let d = m.domain().expect("ideal monoid");
            let mut text = c.to_string();
            let mut j = json!({ "domain": d.to_string(), "product": c.to_string() });
            if let Ok(h) = d.quad_ideal(&c) {
                text.push_str(&format!("\nHNF {h}"));
                j["hnf"] = json!(h.to_string());
            }
            Ok(Output::ok(text, j))
        }
        Command::Norm { domain, element } => {
            let d: DomainDescriptor = domain.parse()?;
            let x = d.parse_element(element)?;
            if x.is_zero() {
                return Err(Error::ZeroElement);
            }
            let n = d.ideal_norm(&d.factor_principal(&x)?)?;
            Ok(Output::ok(n.to_string(), json!({ "element": x.to_string(), "norm": n.to_string() })))
        }
        Command::Split { domain, prime } => {
            let d: DomainDescriptor = domain.parse()?;
            let DomainDescriptor::QuadraticOrder(disc) = d.base() else {
                return Err(Error::Unsupported(format!("split needs a quadratic order, not {d}")));
            };
            let (kind, primes) = match splitting_type(*disc, *prime)? {
                SplitType::Split(a, b) => ("split", vec![a, b]),
                SplitType::Inert(a) => ("inert", vec![a]),
                SplitType::Ramified(a) => ("ramified", vec![a]),
            };
            let names: Vec<String> = primes.iter().map(|q| q.prime_label()).collect();
            let hnfs: Vec<String> = primes.iter().map(|q| q.to_string()).collect();
            let text = format!(
                "{prime} is {kind}: {}",
                names.iter().zip(&hnfs).map(|(n, h)| format!("{n} = {h}")).collect::<Vec<_>>().join(", ")
            );
            Ok(Output::ok(text, json!({ "prime": prime, "type": kind, "primes": names, "hnf": hnfs })))
        }
        Command::Valuation { expr, monoid } => {
            let m: MonoidDescriptor = monoid.parse()?;
            let f = parse_fn(&m, field, expr)?;
            let w = window_for(cli, &m)?;
            let r = valuation(&f, &w, cli.depth);
            let note = if r.certified { "certified" } else { "window scan only" };
            Ok(Output::ok(format!("v = {} ({note})", r.value), json!({ "report": r })))
        }
        Command::Series { expr, monoid } => {
            let m: MonoidDescriptor = monoid.parse()?;
            let f = parse_fn(&m, field, expr)?;
            let w = window_for(cli, &m)?;
            let s = phi(&f, &w, cli.depth);
            let text = format!("variables {}\n{s}", labels(&w).join(", "));
            Ok(Output::ok(text, json!({ "window": labels(&w), "degree": cli.depth, "series": s })))
        }
        Command::Space { example: Some(Example::SqrtMinus5), .. } => {
            let r = witness_check_sqrtm5()?;
            let mut text = String::new();
            for s in &r.steps {
                text.push_str(&format!("[{}] {}: {}\n", if s.passed { "ok" } else { "FAIL" }, s.name, s.detail));
            }
            let failed = !r.passed();
            Ok(Output { text, json: json!({ "example": "sqrt-5", "report": r }), failed })
        }
        Command::Space { domain, report, format, .. } => {
            let d: DomainDescriptor = domain.as_deref().unwrap_or_default().parse()?;
            space_report(&FiniteSpace::new(&d)?, *report, *format)
        }
        Command::Verify { suite } => {
            let results = run_suite(Suite::parse(suite)?, cli.seed);
            let mut text = String::new();
            for r in &results {
                text.push_str(&format!(
                    "criterion {:>2} {:<28} {}\n",
                    r.id,
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" }
                ));
                for c in &r.counterexamples {
                    text.push_str(&format!("    {c}\n"));
                }
            }
            let failed = results.iter().any(|r| !r.passed);
            Ok(Output { text, json: json!({ "suite": suite, "seed": cli.seed, "results": results }), failed })
        }
    }
}

fn space_report(x: &FiniteSpace, report: Report, format: Format) -> Result<Output> {
    let domain = x.domain().to_string();
    match report {
        Report::Topology => {
            let census = x.closed_set_census()?;
            let chain: Vec<Vec<String>> = x.witness_chain()?.into_iter().map(|c| x.point_labels(c)).collect();
            let spectral = x.spectral_report()?;
            let embedding = spec_embedding(x)?;
            let closed: Vec<String> = x.closed_points().into_iter().map(|z| x.label(z)).collect();
            let generic: Vec<String> = x.generic_points(x.all_points()).into_iter().map(|z| x.label(z)).collect();
            let text = format!(
                "domain {domain}\npoints {}\nclosed sets {} (up-sets {})\ndimension {}\ngeneric point {}\nclosed points {}\nT0 {}  spectral {}\nSpec embeds onto points with at most one zero: {}",
                x.point_count(),
                census.via_generators,
                census.via_up_sets,
                x.dimension()?,
                generic.join(" "),
                closed.join(" "),
                spectral.t0,
                spectral.spectral,
                embedding.passed(),
            );
            let j = json!({
                "domain": domain,
                "points": x.point_count(),
                "closed_sets": census,
                "dimension": x.dimension()?,
                "witness_chain": chain,
                "generic_points": generic,
                "closed_points": closed,
                "spectral": spectral,
                "spec_embedding": embedding.passed(),
                "lattice": x.closed_sets_json()?,
            });
            Ok(Output::ok(text, j))
        }
        Report::Poset => {
            let edges: Vec<(String, String)> =
                x.covering_relations().into_iter().map(|(a, b)| (x.label(a), x.label(b))).collect();
            let text = if format == Format::Dot {
                x.to_dot()
            } else {
                edges.iter().map(|(a, b)| format!("{a} -> {b}")).collect::<Vec<_>>().join("\n")
            };
            Ok(Output::ok(text, json!({ "domain": domain, "covering_relations": edges })))
        }
        Report::Sheaf => {
            let mut text = String::from("stalks\n");
            let mut stalks = Vec::new();
            for z in 0..x.point_count() {
                let s = x.stalk(z);
                text.push_str(&format!("  {}: {s}\n", x.label(z)));
                stalks.push(json!({ "point": x.label(z), "stalk": s }));
            }
            text.push_str("sections over basic opens\n");
            let mut sections = Vec::new();
            for t in 0..x.point_count() {
                let a = x.element_with_support(t);
                let s = x.sections(a)?;
                text.push_str(&format!("  D({a}): {s}\n"));
                sections.push(json!({ "element": a.to_string(), "sections": s }));
            }
            Ok(Output::ok(text, json!({ "domain": domain, "stalks": stalks, "sections": sections })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["arithspace"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn factor_one_plus_w() {
        assert_eq!(call(&["factor", "--domain", "qsqrt:-5", "1+w"]), (0, "P2 * P3+\n".into()));
    }

    #[test]
    fn eval_moebius_unit() {
        assert_eq!(call(&["eval", "--fn", "conv(mu,u)", "--at", "60"]), (0, "0\n".into()));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["factor", "--domain", "qsqrt:4", "3"]).0, 2);
        assert_eq!(call(&["eval", "--fn", "nope", "--at", "2"]).0, 2);
    }

    #[test]
    fn json_carries_schema() {
        let (code, out) = call(&["--json", "norm", "--domain", "qsqrt:-5", "1+w"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], "v1");
        assert_eq!(v["norm"], "6");
    }

    #[test]
    fn space_reports() {
        let (code, out) = call(&["space", "--domain", "zloc:2,3,5", "--report", "topology"]);
        assert_eq!(code, 0);
        assert!(out.contains("closed sets 20 (up-sets 20)"));
        let (_, dot) = call(&["space", "--domain", "zloc:2,3", "--report", "poset", "--format", "dot"]);
        assert!(dot.starts_with("digraph"));
        let (code, out) = call(&["space", "--example", "sqrt-5"]);
        assert_eq!(code, 0);
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn split_three() {
        let (_, out) = call(&["split", "--domain", "qsqrt:-5", "3"]);
        assert!(out.starts_with("3 is split: P3+"));
    }
}
