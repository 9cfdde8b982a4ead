use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use coha_hilb::chow::{
    hilbert_function, hilbert_series, kernel_ideal, local_multiplicity, presentation_report,
    verify_chern_basis, verify_poincare_match,
};
use coha_hilb::coha::{
    coha_mul, forbidden_polynomial, kernel_generators, psi, psi_product, CohaElement, LoopCount,
};
use coha_hilb::forest::{
    enumerate_forests, forest_to_jtuple, jtuple_to_btuple, poincare_polynomial,
    poincare_polynomial_codim, Forest,
};
use coha_hilb::groebner::{buchberger, MonomialOrder};
use coha_hilb::symmetric::to_elementary;
use coha_hilb::{parse_poly, Basis, SparsePoly};

#[derive(Parser)]
#[command(
    name = "coha-hilb",
    version,
    about = "Chow rings of non-commutative Hilbert schemes"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// m-ary forests and their statistics
    Forests {
        #[command(subcommand)]
        action: ForestAction,
    },
    /// Products in the Cohomological Hall algebra
    Coha {
        #[command(subcommand)]
        action: CohaAction,
    },
    /// Presentations of the Chow ring
    Chow {
        #[command(subcommand)]
        action: ChowAction,
    },
    /// The m=2, d=3, n=1 example end to end
    PaperExample {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Clone, Copy)]
struct Shape {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

#[derive(Subcommand)]
enum ForestAction {
    Enum(Shape),
    Count(Shape),
    Poincare {
        #[command(flatten)]
        shape: Shape,
        /// Index by codimension instead of dimension
        #[arg(long)]
        codim: bool,
    },
    Bijection(Shape),
}

#[derive(Subcommand)]
enum CohaAction {
    /// f * g, or a product of psi generators
    Mul {
        #[arg(long)]
        m: u32,
        /// Comma-separated psi indices
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["left", "right"])]
        ks: Option<Vec<u32>>,
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long)]
        left_d: Option<usize>,
        #[arg(long, requires = "left")]
        right: Option<String>,
        #[arg(long)]
        right_d: Option<usize>,
    },
    Psi {
        #[arg(long)]
        k: u32,
    },
    Forbidden {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        d: usize,
    },
    /// Kernel-ideal generators
    Relations {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args, Clone)]
struct Grid {
    /// One or more loop counts, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<u32>,
    /// One or more dimensions, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<usize>,
}

#[derive(Subcommand)]
enum ChowAction {
    Presentation(Grid),
    Hilbert(Grid),
    Verify(Grid),
    /// Generic length of a zero-dimensional specialization
    Multiplicity {
        /// Polynomial in the text grammar; repeat for each generator
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
        /// How many leading variables are local; the rest are parameters
        #[arg(long, default_value_t = 2)]
        local: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<coha_hilb::Error> for Failure {
    fn from(e: coha_hilb::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(format: Format, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
    let out = match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(&json()).expect("serializable"),
    };
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn domain(m: u32, d: usize) -> Result<(), Failure> {
    if d == 0 {
        return Err(Failure::Usage(format!("d must be at least 1 here (m={m})")));
    }
    Ok(())
}

fn run_forests(action: ForestAction, format: Format) -> Outcome {
    match action {
        ForestAction::Enum(s) => {
            let fs = enumerate_forests(s.m, s.d, s.n as usize);
            emit(
                format,
                || {
                    fs.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || json!(fs.iter().map(Forest::to_word_lists).collect::<Vec<_>>()),
            );
        }
        ForestAction::Count(s) => {
            let count = enumerate_forests(s.m, s.d, s.n as usize).len();
            emit(format, || count.to_string(), || json!({ "count": count }));
        }
        ForestAction::Poincare { shape: s, codim } => {
            let poly = if codim {
                poincare_polynomial_codim(s.m, s.d, s.n as usize)
            } else {
                poincare_polynomial(s.m, s.d, s.n as usize)
            };
            emit(
                format,
                || poly.to_string(),
                || json!({ "coefficients": poly.coefficients(), "text": poly.to_string() }),
            );
        }
        ForestAction::Bijection(s) => {
            let rows: Vec<(Forest, String, String)> = enumerate_forests(s.m, s.d, s.n as usize)
                .into_iter()
                .map(|f| {
                    let j = forest_to_jtuple(&f);
                    let b = jtuple_to_btuple(&j, s.d);
                    (f, j.to_string(), b.to_string())
                })
                .collect();
            emit(
                format,
                || {
                    rows.iter()
                        .map(|(f, j, b)| format!("{f}\tJ={j}\tB={b}"))
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || {
                    json!(rows
                        .iter()
                        .map(|(f, j, b)| json!({ "forest": f.to_word_lists(), "j": j, "b": b }))
                        .collect::<Vec<_>>())
                },
            );
        }
    }
    Ok(())
}

fn parse_element(text: &str, d: Option<usize>) -> Result<CohaElement, Failure> {
    let (p, basis) = parse_poly(text, d).map_err(|e| Failure::Usage(e.to_string()))?;
    if basis == Basis::E {
        return Err(Failure::Usage(
            "CoHa elements are written in x1, x2, …".into(),
        ));
    }
    CohaElement::new(p).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit_element(format: Format, f: &CohaElement) {
    emit(
        format,
        || f.value().to_text(Basis::X),
        || json!(f.to_json()),
    );
}

fn run_coha(action: CohaAction, format: Format) -> Outcome {
    match action {
        CohaAction::Mul {
            m,
            ks,
            left,
            left_d,
            right,
            right_d,
        } => {
            let product = match (ks, left, right) {
                (Some(ks), _, _) => psi_product(&ks, LoopCount(m))?,
                (None, Some(l), Some(r)) => {
                    let f = parse_element(&l, left_d)?;
                    let g = parse_element(&r, right_d)?;
                    coha_mul(&f, &g, LoopCount(m))?
                }
                _ => {
                    return Err(Failure::Usage(
                        "give --ks or both --left and --right".into(),
                    ))
                }
            };
            emit_element(format, &product);
        }
        CohaAction::Psi { k } => emit_element(format, &psi(k)),
        CohaAction::Forbidden { m, p, d } => {
            if p >= d {
                return Err(Failure::Usage(format!("need p < d, got p={p}, d={d}")));
            }
            let f = forbidden_polynomial(p, d, LoopCount(m))?;
            emit(
                format,
                || f.to_text(Basis::X),
                || json!(f.to_json(Basis::X)),
            );
        }
        CohaAction::Relations { m, d } => {
            domain(m, d)?;
            let gens = kernel_generators(d, LoopCount(m))?;
            let rows = gens
                .iter()
                .map(|g| Ok((g, to_elementary(g.element.value())?)))
                .collect::<Result<Vec<_>, coha_hilb::Error>>()?;
            emit(
                format,
                || {
                    rows.iter()
                        .map(|(g, e)| {
                            format!(
                                "p={} λ={}\t{}\t= {}",
                                g.p,
                                g.lambda,
                                g.element.value().to_text(Basis::X),
                                e.to_text(Basis::E)
                            )
                        })
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || {
                    json!(rows
                        .iter()
                        .map(|(g, e)| json!({
                            "p": g.p,
                            "lambda": g.lambda.parts(),
                            "element": g.element.to_json(),
                            "elementary": e.to_text(Basis::E),
                        }))
                        .collect::<Vec<_>>())
                },
            );
        }
    }
    Ok(())
}

fn grid_jobs(grid: &Grid) -> Result<Vec<(u32, usize)>, Failure> {
    let jobs: Vec<(u32, usize)> = grid
        .m
        .iter()
        .flat_map(|&m| grid.d.iter().map(move |&d| (m, d)))
        .collect();
    for &(m, d) in &jobs {
        domain(m, d)?;
    }
    Ok(jobs)
}

/// Runs the grid in parallel and returns results in input order.
fn fan_out<T: Send>(
    jobs: &[(u32, usize)],
    f: impl Fn(u32, usize) -> coha_hilb::Result<T> + Sync,
) -> Result<Vec<T>, Failure> {
    let results: Vec<coha_hilb::Result<T>> = jobs.par_iter().map(|&(m, d)| f(m, d)).collect();
    results
        .into_iter()
        .map(|r| r.map_err(Failure::from))
        .collect()
}

#[derive(Serialize)]
struct VerifyRow {
    m: u32,
    d: usize,
    chern_basis: bool,
    poincare_match: bool,
    chern_monomials_are_standard: bool,
    forests: Vec<u64>,
    hilbert: Option<Vec<u64>>,
}

fn run_chow(action: ChowAction, format: Format) -> Outcome {
    match action {
        ChowAction::Presentation(grid) => {
            let jobs = grid_jobs(&grid)?;
            let reports = fan_out(&jobs, presentation_report)?;
            emit(
                format,
                || {
                    reports
                        .iter()
                        .map(|r| {
                            format!(
                                "m={} d={}\ngenerators: {}\ngroebner: {}\nhilbert: {:?}\nstandard monomials: {}\nchern basis: {}\npoincare match: {}",
                                r.m,
                                r.d,
                                r.generators.join(", "),
                                r.groebner.join(", "),
                                r.hilbert,
                                r.standard_monomials.join(", "),
                                r.verdicts.chern_basis,
                                r.verdicts.poincare_match
                            )
                        })
                        .collect::<Vec<_>>()
                        .join("\n\n")
                },
                || {
                    if reports.len() == 1 {
                        json!(reports[0])
                    } else {
                        json!(reports)
                    }
                },
            );
        }
        ChowAction::Hilbert(grid) => {
            let jobs = grid_jobs(&grid)?;
            let rows = fan_out(&jobs, |m, d| {
                let g = kernel_ideal(m, d)?;
                Ok(hilbert_series(&g).unwrap_or_else(|| hilbert_function(&g, 10)))
            })?;
            emit(
                format,
                || {
                    jobs.iter()
                        .zip(&rows)
                        .map(|((m, d), h)| format!("m={m} d={d}\t{h:?}"))
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || {
                    json!(jobs
                        .iter()
                        .zip(&rows)
                        .map(|((m, d), h)| json!({ "m": m, "d": d, "hilbert": h }))
                        .collect::<Vec<_>>())
                },
            );
        }
        ChowAction::Verify(grid) => {
            let jobs = grid_jobs(&grid)?;
            let rows = fan_out(&jobs, |m, d| {
                let c = verify_chern_basis(m, d)?;
                let p = verify_poincare_match(m, d)?;
                Ok(VerifyRow {
                    m,
                    d,
                    chern_basis: c.is_basis,
                    poincare_match: p.matches,
                    chern_monomials_are_standard: c.equals_standard_monomials,
                    forests: p.forests,
                    hilbert: p.hilbert,
                })
            })?;
            emit(
                format,
                || {
                    rows.iter()
                        .map(|r| {
                            format!(
                                "m={} d={}\tchern_basis={}\tpoincare_match={}",
                                r.m, r.d, r.chern_basis, r.poincare_match
                            )
                        })
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || json!(rows),
            );
            if rows.iter().any(|r| !r.chern_basis || !r.poincare_match) {
                return Err(Failure::Compute("verification failed".into()));
            }
        }
        ChowAction::Multiplicity {
            polys,
            local,
            seed,
            trials,
        } => {
            let parsed = polys
                .iter()
                .map(|p| parse_poly(p, None).map(|(p, _)| p))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let nvars = parsed
                .iter()
                .map(SparsePoly::nvars)
                .max()
                .unwrap_or(0)
                .max(local);
            let polys = polys
                .iter()
                .map(|p| parse_poly(p, Some(nvars)).map(|(p, _)| p))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let length = local_multiplicity(&polys, local, trials, seed)?;
            emit(
                format,
                || length.to_string(),
                || json!({ "multiplicity": length, "seed": seed, "trials": trials }),
            );
        }
    }
    Ok(())
}

fn run_paper_example(seed: u64, format: Format) -> Outcome {
    let mut checks: Vec<(&str, bool, String)> = Vec::new();

    let forests = enumerate_forests(2, 3, 1);
    let shown: Vec<String> = forests.iter().map(ToString::to_string).collect();
    checks.push(("forests", forests.len() == 5, shown.join(" ")));

    let poincare = poincare_polynomial(2, 3, 1).to_string();
    checks.push((
        "poincare",
        poincare == "t^12 + t^11 + 2*t^10 + t^9",
        poincare,
    ));

    let js: Vec<String> = forests
        .iter()
        .map(|f| forest_to_jtuple(f).to_string())
        .collect();
    checks.push((
        "j-tuples",
        js == ["3333", "2333", "2233", "1333", "1233"],
        js.join(" "),
    ));
    let bs: Vec<String> = forests
        .iter()
        .map(|f| jtuple_to_btuple(&forest_to_jtuple(f), 3).to_string())
        .collect();
    checks.push((
        "b-tuples",
        bs == ["000", "001", "002", "010", "011"],
        bs.join(" "),
    ));

    let g = kernel_ideal(2, 3)?;
    let expected: Vec<SparsePoly> = ["e3", "e2^2", "e1^3 - 4*e1*e2", "e1^4"]
        .iter()
        .map(|s| parse_poly(s, Some(3)).map(|p| p.0))
        .collect::<coha_hilb::Result<_>>()?;
    let same = g.same_ideal(&buchberger(&expected, &MonomialOrder::elementary(3))?)?;
    let gb: Vec<String> = g.polys().iter().map(|p| p.to_text(Basis::E)).collect();
    checks.push(("kernel ideal", same, gb.join(", ")));

    let report = presentation_report(2, 3)?;
    checks.push((
        "presentation",
        report.hilbert == [1, 1, 2, 1]
            && report.verdicts.chern_basis
            && report.verdicts.poincare_match,
        format!(
            "hilbert {:?}, basis {}",
            report.hilbert,
            report.standard_monomials.join(", ")
        ),
    ));

    let pair: Vec<SparsePoly> = [
        "x1^2 + x6*x1*x2 - x5*x2^2",
        "x9*x1^2 + x12*x1*x2 - x8*x1*x2 - x3*x2 - x11*x2^2",
    ]
    .iter()
    .map(|s| parse_poly(s, Some(12)).map(|p| p.0))
    .collect::<coha_hilb::Result<_>>()?;
    let length = local_multiplicity(&pair, 2, 5, seed)?;
    checks.push(("multiplicity", length == 4, length.to_string()));

    let ok = checks.iter().all(|c| c.1);
    emit(
        format,
        || {
            checks
                .iter()
                .map(|(name, pass, detail)| {
                    format!("{} {name}: {detail}", if *pass { "ok  " } else { "FAIL" })
                })
                .collect::<Vec<_>>()
                .join("\n")
        },
        || {
            json!({
                "ok": ok,
                "checks": checks
                    .iter()
                    .map(|(name, pass, detail)| json!({ "name": name, "pass": pass, "value": detail }))
                    .collect::<Vec<_>>(),
            })
        },
    );
    if ok {
        Ok(())
    } else {
        Err(Failure::Compute("some pinned values did not match".into()))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("COHA_HILB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "COHA_HILB_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Compute(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = configure_threads().and_then(|()| match cli.command {
        Command::Forests { action } => run_forests(action, cli.format),
        Command::Coha { action } => run_coha(action, cli.format),
        Command::Chow { action } => run_chow(action, cli.format),
        Command::PaperExample { seed } => run_paper_example(seed, cli.format),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
