//! Command-line front end: restriction tables, single restrictions,
//! products, factorial functions, the Giambelli identity, the quotient
//! presentation, index bijections, and the named invariant suites.
//!
//! All outputs carry a `"schema": "lgschub/1"` tag, and identical
//! arguments (plus seed) produce byte-identical output.  Usage problems
//! exit with code 2; failed checks and internal inconsistencies exit with
//! code 1.

use clap::{Args, Parser, Subcommand, ValueEnum};
use lgschub::checks::{run_suite, CheckConfig, MAX_ORDER};
use lgschub::equivariant::{giambelli_check, structure_constants, EqError, RestrictionTable};
use lgschub::index::{
    diagram_to_perm, diagram_to_strict, mask_to_strict, perm_to_diagram, strict_to_diagram,
    strict_to_mask, strict_to_perm, BitMask, SignedPerm, StrictPartition, SymDiagram,
};
use lgschub::poly::{Poly, PolyJson};
use lgschub::presentation::{normal_form_counted, parse_xpoly, relation_x, XPoly};
use lgschub::qfun::{factorial_q, QContext};
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lgschub",
    version,
    about = "Exact equivariant Schubert calculus on the Lagrangian Grassmannian"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Thread count for table construction (overrides LGSCHUB_PARALLELISM).
    #[arg(long, global = true)]
    parallelism: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Csv,
}

#[derive(Args)]
struct OrderArg {
    /// Order of the Grassmannian (number of variables), between 1 and 8.
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the full table of restrictions of classes to fixed points.
    Table {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Restrict one class to one fixed point.
    Restrict {
        #[command(flatten)]
        order: OrderArg,
        /// Class shape, comma-separated parts (empty for the unit class).
        #[arg(long)]
        lambda: String,
        /// Fixed-point shape, comma-separated parts.
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Expand the product of two classes in the Schubert basis.
    Multiply {
        #[command(flatten)]
        order: OrderArg,
        /// First factor, comma-separated parts.
        #[arg(long)]
        w: String,
        /// Second factor, comma-separated parts.
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print a factorial Q-function with symbolic parameters.
    Qfun {
        #[command(flatten)]
        order: OrderArg,
        /// Strict partition, comma-separated parts.
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify the Pfaffian expansion of classes into two-row classes.
    Giambelli {
        #[command(flatten)]
        order: OrderArg,
        /// Single shape to verify (default: all shapes of the order).
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Inspect the quotient presentation: ideal generators or a normal form.
    Present {
        #[command(flatten)]
        order: OrderArg,
        /// List the diagonal relations generating the defining ideal.
        #[arg(long)]
        relations: bool,
        /// Reduce an expression in X1..Xn, x1..xn onto strict monomials.
        #[arg(long, value_name = "EXPR")]
        normal_form: Option<String>,
    },
    /// Run a named invariant suite and report machine-readable results.
    Check {
        #[command(flatten)]
        order: OrderArg,
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Random seed (overrides LGSCHUB_SEED; default 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Sample count for point-based oracles.
        #[arg(long, default_value_t = 20)]
        points: u32,
    },
    /// Convert between the four index encodings of a fixed point.
    Bijection {
        #[command(flatten)]
        order: OrderArg,
        /// Increasing unbarred images, e.g. 1,3,4,6,9.
        #[arg(long)]
        perm: Option<String>,
        /// Strict partition parts, e.g. 5,3,2.
        #[arg(long)]
        strict: Option<String>,
        /// 0/1 mask over the variables, e.g. 1,0,1,1,0.
        #[arg(long)]
        mask: Option<String>,
        /// Self-conjugate diagram rows, e.g. 5,4,4,3,1.
        #[arg(long)]
        diagram: Option<String>,
    },
}

enum CliError {
    /// Bad arguments or malformed input: exit 2.
    Usage(String),
    /// A mathematical check failed or an internal inconsistency: exit 1.
    Failure(String),
}

impl From<EqError> for CliError {
    fn from(e: EqError) -> Self {
        match e {
            EqError::BadInput(_) | EqError::Index(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    apply_parallelism(cli.parallelism);
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn apply_parallelism(flag: Option<usize>) {
    let threads = flag.or_else(|| {
        std::env::var("LGSCHUB_PARALLELISM")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(k) = threads {
        // A duplicate initialization (say, in tests) is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global();
    }
}

fn check_order(n: u32) -> Result<(), CliError> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(CliError::Usage(format!(
            "order must be between 1 and {MAX_ORDER}, got {n}"
        )));
    }
    if n > 6 {
        eprintln!(
            "warning: order {n} is large; commands that build the full restriction table may take a long time"
        );
    }
    Ok(())
}

fn parse_parts(label: &str, s: &str) -> Result<Vec<u32>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("{label}: '{p}' is not a number")))
        })
        .collect()
}

fn parse_strict(label: &str, s: &str) -> Result<StrictPartition, CliError> {
    let parts = parse_parts(label, s)?;
    StrictPartition::new(parts).map_err(|e| CliError::Usage(format!("{label}: {e}")))
}

fn shape_label(s: &StrictPartition) -> String {
    format!("{s}")
}

fn poly_plain(p: &Poly) -> String {
    format!("{p}")
}

/// Print a line, exiting quietly when the consumer closed the pipe.
fn out_line(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{text}").is_err() {
        std::process::exit(0);
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<ExitCode, CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Failure(format!("serialization failed: {e}")))?;
    out_line(&text);
    Ok(ExitCode::SUCCESS)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const SCHEMA: &str = "lgschub/1";

#[derive(Serialize)]
struct TableOut {
    schema: &'static str,
    n: u32,
    shapes: Vec<String>,
    /// entries[i][j] = restriction of the class of shapes[i] at shapes[j].
    entries: Vec<Vec<PolyJson>>,
}

#[derive(Serialize)]
struct RestrictOut {
    schema: &'static str,
    n: u32,
    lambda: Vec<u32>,
    mu: Vec<u32>,
    value: PolyJson,
    display: String,
    latex: String,
}

#[derive(Serialize)]
struct ConstantOut {
    u: Vec<u32>,
    value: PolyJson,
    display: String,
    latex: String,
}

#[derive(Serialize)]
struct MultiplyOut {
    schema: &'static str,
    n: u32,
    w: Vec<u32>,
    v: Vec<u32>,
    constants: Vec<ConstantOut>,
}

#[derive(Serialize)]
struct QfunOut {
    schema: &'static str,
    n: u32,
    lambda: Vec<u32>,
    value: PolyJson,
    display: String,
    latex: String,
}

#[derive(Serialize)]
struct GiambelliCase {
    lambda: Vec<u32>,
    verified: bool,
}

#[derive(Serialize)]
struct GiambelliOut {
    schema: &'static str,
    n: u32,
    results: Vec<GiambelliCase>,
    passed: bool,
}

#[derive(Serialize)]
struct XTermOut {
    /// Exponents of X_1..X_n.
    exps: Vec<u32>,
    coeff: PolyJson,
}

#[derive(Serialize)]
struct RelationOut {
    k: u32,
    display: String,
    terms: Vec<XTermOut>,
}

#[derive(Serialize)]
struct RelationsOut {
    schema: &'static str,
    n: u32,
    relations: Vec<RelationOut>,
}

#[derive(Serialize)]
struct NormalFormOut {
    schema: &'static str,
    n: u32,
    input: String,
    display: String,
    steps: u64,
    terms: Vec<XTermOut>,
}

#[derive(Serialize)]
struct BijectionOut {
    schema: &'static str,
    n: u32,
    diagram: Vec<u32>,
    strict: Vec<u32>,
    mask: Vec<u8>,
    perm: Vec<u32>,
    barred: String,
}

fn xpoly_terms(p: &XPoly, n: u32) -> Vec<XTermOut> {
    p.terms()
        .map(|(m, c)| XTermOut {
            exps: (1..=n).map(|j| m.exp(j)).collect(),
            coeff: c.to_json(),
        })
        .collect()
}

fn dispatch(cmd: Command) -> Result<ExitCode, CliError> {
    match cmd {
        Command::Table { order, format } => {
            check_order(order.n)?;
            let table = RestrictionTable::build(order.n)?;
            match format {
                Format::Json => {
                    let out = TableOut {
                        schema: SCHEMA,
                        n: order.n,
                        shapes: table.shapes().iter().map(shape_label).collect(),
                        entries: table
                            .shapes()
                            .iter()
                            .map(|lam| table.row(lam).iter().map(Poly::to_json).collect())
                            .collect(),
                    };
                    emit_json(&out)
                }
                Format::Csv => {
                    let mut line = vec![csv_field("lambda\\mu")];
                    line.extend(table.shapes().iter().map(|s| csv_field(&shape_label(s))));
                    out_line(&line.join(","));
                    for lam in table.shapes() {
                        let mut line = vec![csv_field(&shape_label(lam))];
                        line.extend(table.row(lam).iter().map(|p| csv_field(&poly_plain(p))));
                        out_line(&line.join(","));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Format::Latex => {
                    for lam in table.shapes() {
                        for (mu, entry) in table.shapes().iter().zip(table.row(lam)) {
                            if entry.is_zero() {
                                continue;
                            }
                            out_line(&format!("\\sigma_{{{lam}}}|_{{{mu}}} = {}", entry.latex()));
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Restrict {
            order,
            lambda,
            mu,
            format,
        } => {
            check_order(order.n)?;
            let lam = parse_strict("--lambda", &lambda)?;
            let mu = parse_strict("--mu", &mu)?;
            let value = lgschub::equivariant::restrict(&lam, &mu, order.n)?;
            match format {
                Format::Latex => {
                    out_line(&value.latex());
                    Ok(ExitCode::SUCCESS)
                }
                Format::Json => emit_json(&RestrictOut {
                    schema: SCHEMA,
                    n: order.n,
                    lambda: lam.parts().to_vec(),
                    mu: mu.parts().to_vec(),
                    display: poly_plain(&value),
                    latex: value.latex(),
                    value: value.to_json(),
                }),
                Format::Csv => Err(CliError::Usage("csv output only applies to `table`".into())),
            }
        }
        Command::Multiply {
            order,
            w,
            v,
            format,
        } => {
            check_order(order.n)?;
            let w = parse_strict("--w", &w)?;
            let v = parse_strict("--v", &v)?;
            let table = RestrictionTable::build(order.n)?;
            if table.position(&w).is_none() {
                return Err(CliError::Usage(format!(
                    "--w: {w} does not fit the staircase at order {}",
                    order.n
                )));
            }
            if table.position(&v).is_none() {
                return Err(CliError::Usage(format!(
                    "--v: {v} does not fit the staircase at order {}",
                    order.n
                )));
            }
            let sc = structure_constants(&w, &v, &table)?;
            // Report in enumeration order of the shapes.
            let constants: Vec<ConstantOut> = table
                .shapes()
                .iter()
                .filter_map(|u| {
                    sc.coeffs().get(u).map(|c| ConstantOut {
                        u: u.parts().to_vec(),
                        display: poly_plain(c),
                        latex: c.latex(),
                        value: c.to_json(),
                    })
                })
                .collect();
            match format {
                Format::Json => emit_json(&MultiplyOut {
                    schema: SCHEMA,
                    n: order.n,
                    w: w.parts().to_vec(),
                    v: v.parts().to_vec(),
                    constants,
                }),
                Format::Latex => {
                    for (u, c) in table
                        .shapes()
                        .iter()
                        .filter_map(|u| sc.coeffs().get(u).map(|c| (u, c)))
                    {
                        out_line(&format!("c^{{{u}}} = {}", c.latex()));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Format::Csv => Err(CliError::Usage("csv output only applies to `table`".into())),
            }
        }
        Command::Qfun {
            order,
            lambda,
            format,
        } => {
            check_order(order.n)?;
            let lam = parse_strict("--lambda", &lambda)?;
            let ctx = QContext::new(order.n);
            let value =
                factorial_q(lam.parts(), &ctx).map_err(|e| CliError::Usage(e.to_string()))?;
            match format {
                Format::Latex => {
                    out_line(&value.latex());
                    Ok(ExitCode::SUCCESS)
                }
                Format::Json => emit_json(&QfunOut {
                    schema: SCHEMA,
                    n: order.n,
                    lambda: lam.parts().to_vec(),
                    display: poly_plain(&value),
                    latex: value.latex(),
                    value: value.to_json(),
                }),
                Format::Csv => Err(CliError::Usage("csv output only applies to `table`".into())),
            }
        }
        Command::Giambelli { order, lambda } => {
            check_order(order.n)?;
            let table = RestrictionTable::build(order.n)?;
            let shapes: Vec<StrictPartition> = match lambda {
                Some(s) => vec![parse_strict("--lambda", &s)?],
                None => table.shapes().to_vec(),
            };
            let mut results = Vec::new();
            for lam in &shapes {
                let verified = giambelli_check(lam, &table)?;
                results.push(GiambelliCase {
                    lambda: lam.parts().to_vec(),
                    verified,
                });
            }
            let passed = results.iter().all(|r| r.verified);
            let code = emit_json(&GiambelliOut {
                schema: SCHEMA,
                n: order.n,
                results,
                passed,
            })?;
            if passed {
                Ok(code)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Present {
            order,
            relations,
            normal_form,
        } => {
            check_order(order.n)?;
            match (relations, normal_form) {
                (true, None) => {
                    let n = order.n;
                    let rels = (1..=n)
                        .map(|k| {
                            relation_x(k, k, n).map(|r| RelationOut {
                                k,
                                display: format!("{r}"),
                                terms: xpoly_terms(&r, n),
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    emit_json(&RelationsOut {
                        schema: SCHEMA,
                        n,
                        relations: rels,
                    })
                }
                (false, Some(expr)) => {
                    let n = order.n;
                    let parsed = parse_xpoly(&expr, n)?;
                    let (nf, steps) = normal_form_counted(&parsed, n)?;
                    emit_json(&NormalFormOut {
                        schema: SCHEMA,
                        n,
                        input: expr,
                        display: format!("{nf}"),
                        steps,
                        terms: xpoly_terms(&nf, n),
                    })
                }
                _ => Err(CliError::Usage(
                    "pass exactly one of --relations or --normal-form EXPR".into(),
                )),
            }
        }
        Command::Check {
            order,
            suite,
            seed,
            points,
        } => {
            check_order(order.n)?;
            let seed = seed
                .or_else(|| {
                    std::env::var("LGSCHUB_SEED")
                        .ok()
                        .and_then(|v| v.parse().ok())
                })
                .unwrap_or(0);
            let cfg = CheckConfig {
                n: order.n,
                seed,
                points,
            };
            let run = run_suite(&suite, &cfg)?;
            let passed = run.passed;
            emit_json(&run)?;
            if passed {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Bijection {
            order,
            perm,
            strict,
            mask,
            diagram,
        } => {
            check_order(order.n)?;
            let n = order.n;
            let given = [
                perm.is_some(),
                strict.is_some(),
                mask.is_some(),
                diagram.is_some(),
            ]
            .iter()
            .filter(|b| **b)
            .count();
            if given != 1 {
                return Err(CliError::Usage(
                    "pass exactly one of --perm, --strict, --mask, --diagram".into(),
                ));
            }
            let lam: StrictPartition = if let Some(s) = strict {
                let lam = parse_strict("--strict", &s)?;
                if !lam.fits_staircase(n) {
                    return Err(CliError::Usage(format!(
                        "--strict: {lam} does not fit the staircase at order {n}"
                    )));
                }
                lam
            } else if let Some(s) = perm {
                let images = parse_parts("--perm", &s)?;
                let w = SignedPerm::new(n, images)
                    .map_err(|e| CliError::Usage(format!("--perm: {e}")))?;
                diagram_to_strict(&perm_to_diagram(&w))
            } else if let Some(s) = mask {
                let ints = parse_parts("--mask", &s)?;
                if ints.len() != n as usize {
                    return Err(CliError::Usage(format!(
                        "--mask: expected {n} entries, got {}",
                        ints.len()
                    )));
                }
                let bytes: Vec<u8> =
                    ints.iter()
                        .map(|&v| {
                            u8::try_from(v).ok().filter(|b| *b <= 1).ok_or_else(|| {
                                CliError::Usage("--mask: entries must be 0 or 1".into())
                            })
                        })
                        .collect::<Result<_, _>>()?;
                let mask = BitMask::from_ints(&bytes)
                    .map_err(|e| CliError::Usage(format!("--mask: {e}")))?;
                mask_to_strict(&mask)
            } else {
                let rows = parse_parts("--diagram", &diagram.expect("checked above"))?;
                let d = SymDiagram::new(rows)
                    .map_err(|e| CliError::Usage(format!("--diagram: {e}")))?;
                let lam = diagram_to_strict(&d);
                // Round-trip to reject diagrams too large for the order.
                if !lam.fits_staircase(n) {
                    return Err(CliError::Usage(format!(
                        "--diagram: shape {lam} does not fit the staircase at order {n}"
                    )));
                }
                lam
            };
            let d = strict_to_diagram(&lam, n).map_err(|e| CliError::Usage(e.to_string()))?;
            let w = strict_to_perm(&lam, n).map_err(|e| CliError::Usage(e.to_string()))?;
            debug_assert_eq!(diagram_to_perm(&d).unwrap(), w);
            let m = strict_to_mask(&lam, n).map_err(|e| CliError::Usage(e.to_string()))?;
            emit_json(&BijectionOut {
                schema: SCHEMA,
                n,
                diagram: d.rows().to_vec(),
                strict: lam.parts().to_vec(),
                mask: m.bits().iter().map(|&b| u8::from(b)).collect(),
                perm: w.images().to_vec(),
                barred: w.barred_string(),
            })
        }
    }
}
