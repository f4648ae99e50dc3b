//! `qsieve`: command-line surface over the exact q-Catalan / q-Kreweras /
//! q-Narayana engine and its verifiers.
//!
//! Exit codes: 0 = pass, 1 = verification failure, 2 = usage error.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use qsieve_core::error::Error;
use qsieve_core::exceptional;
use qsieve_core::kreweras;
use qsieve_core::ncmodels;
use qsieve_core::nilcount;
use qsieve_core::partitions::Partition;
use qsieve_core::qpoly::QPoly;
use qsieve_core::report::{Report, ReportValue};
use qsieve_core::sieve;
use qsieve_core::weyl::{degrees_of, Family, WeylType};

#[derive(Parser)]
#[command(
    name = "qsieve",
    version,
    about = "Exact Weyl-group q-Catalan/Kreweras/Narayana computations and verifiers"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Enumeration guard on ground-set size (at most 14).
    #[arg(long, global = true, default_value_t = ncmodels::MAX_GROUND)]
    max_ground: usize,

    /// Exceptional table file (default: built-in; env QSIEVE_TABLE_PATH overrides).
    #[arg(long, global = true)]
    table: Option<String>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cat(W,m;q) for a Weyl type.
    Catalan {
        weyl_type: String,
        n: String,
        m: u64,
    },
    /// q-Kreweras polynomial of one orbit (classical types).
    Kreweras {
        weyl_type: String,
        n: u64,
        lambda: String,
        m: u64,
    },
    /// q-Narayana polynomial (types A, B, C).
    Narayana {
        weyl_type: String,
        n: u64,
        m: u64,
        k: u64,
    },
    /// Root-of-unity evaluation with closed-form cross-check.
    Sieve {
        weyl_type: String,
        n: u64,
        lambda: String,
        s: u64,
        d: u64,
    },
    /// Cyclic sieving verification by brute-force fixed-point census.
    Csp { weyl_type: String, n: u64, s: u64 },
    /// Finite-field nilpotent censuses against the closed forms.
    Nilcount { weyl_type: String, n: u64, q: u64 },
    /// Exceptional-table sum identity at one parameter value.
    Exceptional { group: String, m: u64 },
    /// Quick identity battery across all modules.
    Selftest,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    parameters: BTreeMap<String, String>,
    verdict: String,
    items: Vec<RunItem>,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct RunItem {
    key: String,
    value: serde_json::Value,
    status: String,
}

fn value_to_json(v: &ReportValue) -> serde_json::Value {
    match v {
        // Polynomials are [[exponent, coefficient], ...] ascending by
        // exponent; coefficients as strings to keep them exact.
        ReportValue::Poly(p) => serde_json::Value::Array(
            p.terms()
                .map(|(e, c)| {
                    serde_json::Value::Array(vec![
                        serde_json::Value::from(e),
                        serde_json::Value::String(c.to_string()),
                    ])
                })
                .collect(),
        ),
        ReportValue::Int(n) => serde_json::Value::String(n.to_string()),
        ReportValue::Text(t) => serde_json::Value::String(t.clone()),
    }
}

fn render(
    report: &Report,
    command: &str,
    params: &[(&str, String)],
    format: Format,
    start: Instant,
) -> bool {
    let pass = report.pass();
    let run = RunReport {
        command: command.to_string(),
        parameters: params
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        verdict: if pass { "pass" } else { "fail" }.to_string(),
        items: report
            .items
            .iter()
            .map(|i| RunItem {
                key: i.key.clone(),
                value: value_to_json(&i.value),
                status: if i.pass { "pass" } else { "fail" }.to_string(),
            })
            .collect(),
        elapsed_ms: start.elapsed().as_millis(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&run).unwrap()),
        Format::Csv => {
            println!("key,value,status");
            for i in &report.items {
                let v = i.value.to_string().replace('"', "\"\"");
                println!(
                    "\"{}\",\"{}\",{}",
                    i.key,
                    v,
                    if i.pass { "pass" } else { "fail" }
                );
            }
        }
        Format::Text => {
            println!("{}", report.title);
            for i in &report.items {
                println!(
                    "  {}: {} [{}]",
                    i.key,
                    i.value,
                    if i.pass { "pass" } else { "fail" }
                );
            }
            println!("verdict: {}", if pass { "pass" } else { "fail" });
        }
    }
    pass
}

fn parse_weyl(type_str: &str, n: &str) -> Result<WeylType, Error> {
    let family = Family::parse(type_str)?;
    let n: u64 = if family.is_exceptional() {
        0
    } else {
        n.parse()
            .map_err(|_| Error::BadRank(format!("bad rank parameter {n:?}")))?
    };
    degrees_of(family, n)
}

fn parse_lambda(s: &str) -> Result<Partition, Error> {
    s.parse()
}

fn load_table(cli_table: &Option<String>) -> Result<Vec<exceptional::TableEntry>, Error> {
    let path = cli_table
        .clone()
        .or_else(|| std::env::var("QSIEVE_TABLE_PATH").ok());
    match path {
        None => exceptional::builtin_entries(),
        Some(p) => {
            let src = std::fs::read_to_string(&p).map_err(|e| Error::ParseError {
                line: 0,
                col: 0,
                msg: format!("{p}: {e}"),
            })?;
            exceptional::parse_table(&src)
        }
    }
}

fn check_ground(requested: usize, max_ground: usize) -> Result<(), Error> {
    if max_ground > ncmodels::MAX_GROUND {
        return Err(Error::TooLarge(format!(
            "--max-ground={} exceeds the hard guard {}",
            max_ground,
            ncmodels::MAX_GROUND
        )));
    }
    if requested > max_ground {
        return Err(Error::TooLarge(format!(
            "ground set {requested} exceeds the guard {max_ground}"
        )));
    }
    Ok(())
}

fn poly_report(title: String, poly: &QPoly, extra: Vec<(String, ReportValue)>) -> Report {
    let mut r = Report::new(title);
    r.push_poly("polynomial", poly, true);
    r.push_int("value at q=1", poly.eval_at_one(), true);
    for (k, v) in extra {
        r.push(k, v, true);
    }
    r
}

fn run(cli: &Cli, start: Instant) -> Result<bool, Error> {
    Ok(match &cli.command {
        Cmd::Catalan { weyl_type, n, m } => {
            let w = parse_weyl(weyl_type, n)?;
            let cat = qsieve_core::weyl::q_catalan(&w, *m)?;
            let report = poly_report(format!("Cat({w}, {m}; q)"), &cat, vec![]);
            render(
                &report,
                "catalan",
                &[
                    ("type", weyl_type.clone()),
                    ("n", n.clone()),
                    ("m", m.to_string()),
                ],
                cli.format,
                start,
            )
        }
        Cmd::Kreweras {
            weyl_type,
            n,
            lambda,
            m,
        } => {
            let w = parse_weyl(weyl_type, &n.to_string())?;
            let lam = parse_lambda(lambda)?;
            let kr = kreweras::krew(&w, &lam, *m)?;
            let mut extra = vec![
                (
                    "principal-in-levi".to_string(),
                    ReportValue::Text(kr.principal_in_levi.to_string()),
                ),
                (
                    "d-statistic".to_string(),
                    ReportValue::Int(BigInt::from(kr.d_stat)),
                ),
                (
                    "exponent offset".to_string(),
                    ReportValue::Int(BigInt::from(kr.exponent_offset)),
                ),
            ];
            if kr.very_even {
                extra.push((
                    "very even".to_string(),
                    ReportValue::Text("polynomial is the orthogonal-orbit value; each special-orthogonal orbit carries half".to_string()),
                ));
            }
            let report = poly_report(format!("Krew({w}, {lam}, {m}; q)"), &kr.poly, extra);
            render(
                &report,
                "kreweras",
                &[
                    ("type", weyl_type.clone()),
                    ("n", n.to_string()),
                    ("lambda", lam.to_string()),
                    ("m", m.to_string()),
                ],
                cli.format,
                start,
            )
        }
        Cmd::Narayana { weyl_type, n, m, k } => {
            let w = parse_weyl(weyl_type, &n.to_string())?;
            let nar = kreweras::narayana(&w, *m, *k)?;
            let report = poly_report(format!("Nar({w}, {m}, {k}; q)"), &nar, vec![]);
            render(
                &report,
                "narayana",
                &[
                    ("type", weyl_type.clone()),
                    ("n", n.to_string()),
                    ("m", m.to_string()),
                    ("k", k.to_string()),
                ],
                cli.format,
                start,
            )
        }
        Cmd::Sieve {
            weyl_type,
            n,
            lambda,
            s,
            d,
        } => {
            let family = Family::parse(weyl_type)?;
            let lam = parse_lambda(lambda)?;
            let se = sieve::cross_check(family, *n, &lam, *s, *d)?;
            let mut report = Report::new(format!(
                "Krew({}, {lam}, {}; q) at a primitive {d}-th root of unity",
                se.weyl, se.m
            ));
            match se.exact_value.as_integer() {
                Some(v) => report.push_int("exact value", v, true),
                None => report.push_text(
                    "exact residue",
                    format!("{:?}", se.exact_value.residue()),
                    true,
                ),
            }
            if let Some(cf) = &se.closed_form {
                report.push_int("closed form", cf.clone(), true);
            }
            report.push_text("agrees", se.agrees.to_string(), se.agrees);
            report.push_text(
                "complex modulus (report only)",
                format!("{:.6}", se.exact_value.complex_modulus()),
                true,
            );
            render(
                &report,
                "sieve",
                &[
                    ("type", weyl_type.clone()),
                    ("n", n.to_string()),
                    ("lambda", lam.to_string()),
                    ("s", s.to_string()),
                    ("d", d.to_string()),
                ],
                cli.format,
                start,
            )
        }
        Cmd::Csp { weyl_type, n, s } => {
            let family = Family::parse(weyl_type)?;
            let ground = match family {
                Family::A => s * n,
                Family::B | Family::C => 2 * s * n,
                Family::D => 2 * s * n,
                _ => return Err(Error::UnsupportedType("classical types only".into())),
            };
            check_ground(ground as usize, cli.max_ground)?;
            let report = ncmodels::verify_csp(family, *n, *s)?;
            render(
                &report,
                "csp",
                &[
                    ("type", weyl_type.clone()),
                    ("n", n.to_string()),
                    ("s", s.to_string()),
                ],
                cli.format,
                start,
            )
        }
        Cmd::Nilcount { weyl_type, n, q } => {
            let family = Family::parse(weyl_type)?;
            let mut report = Report::new(format!("nilpotent census {family:?} n={n} over F_{q}"));
            match family {
                Family::A => {
                    let census = nilcount::count_nilpotent_by_rank_a(*n as usize, *q)?;
                    for (rank, count) in &census {
                        report.push_int(format!("rank {rank}"), count.clone(), true);
                    }
                    report.push_text("closed forms", "match", true);
                }
                Family::B | Family::C => {
                    let (b, c) = nilcount::verify_bc_rank_lemma(*n, *q)?;
                    for (rank, count) in &b {
                        report.push_int(format!("so rank {rank}"), count.clone(), true);
                    }
                    for (rank, count) in &c {
                        report.push_int(format!("sp rank {rank}"), count.clone(), true);
                    }
                    report.push_text("rank lemma", "match", true);
                }
                other => return Err(Error::UnsupportedType(format!("{other:?}"))),
            }
            render(
                &report,
                "nilcount",
                &[
                    ("type", weyl_type.clone()),
                    ("n", n.to_string()),
                    ("q", q.to_string()),
                ],
                cli.format,
                start,
            )
        }
        Cmd::Exceptional { group, m } => {
            let family = Family::parse(group)?;
            let entries = load_table(&cli.table)?;
            let report = exceptional::verify_exceptional_sum(&entries, family, *m)?;
            render(
                &report,
                "exceptional",
                &[("group", group.clone()), ("m", m.to_string())],
                cli.format,
                start,
            )
        }
        Cmd::Selftest => {
            type Check = Box<dyn Fn() -> Result<(), Error>>;
            let mut report = Report::new("selftest".to_string());
            let checks: Vec<(&str, Check)> = vec![
                (
                    "sum identity A3 m=5",
                    Box::new(|| {
                        kreweras::verify_sum_identity(&degrees_of(Family::A, 4)?, 5).map(|_| ())
                    }),
                ),
                (
                    "sum identity B2 m=5",
                    Box::new(|| {
                        kreweras::verify_sum_identity(&degrees_of(Family::B, 2)?, 5).map(|_| ())
                    }),
                ),
                (
                    "sum identity D4 m=7",
                    Box::new(|| {
                        kreweras::verify_sum_identity(&degrees_of(Family::D, 4)?, 7).map(|_| ())
                    }),
                ),
                (
                    "divisibility/positivity C3 m=7",
                    Box::new(|| {
                        kreweras::verify_divisibility_positivity(&degrees_of(Family::C, 3)?, 7)
                            .map(|_| ())
                    }),
                ),
                (
                    "narayana grid B=C n=3",
                    Box::new(|| {
                        let b = degrees_of(Family::B, 3)?;
                        let c = degrees_of(Family::C, 3)?;
                        for k in 0..=3 {
                            if kreweras::narayana(&b, 7, k)? != kreweras::narayana(&c, 7, k)? {
                                return Err(Error::Mismatch(format!("k={k}")));
                            }
                        }
                        Ok(())
                    }),
                ),
                (
                    "csp A n=4 s=1",
                    Box::new(|| ncmodels::verify_csp(Family::A, 4, 1).map(|_| ())),
                ),
                (
                    "csp B n=2 s=1",
                    Box::new(|| ncmodels::verify_csp(Family::B, 2, 1).map(|_| ())),
                ),
                (
                    "csp D n=3 s=1",
                    Box::new(|| ncmodels::verify_csp(Family::D, 3, 1).map(|_| ())),
                ),
                (
                    "nilcount gl2 F3",
                    Box::new(|| nilcount::count_nilpotent_by_rank_a(2, 3).map(|_| ())),
                ),
                (
                    "exceptional G2 m=7",
                    Box::new(|| {
                        let entries = exceptional::builtin_entries()?;
                        exceptional::verify_exceptional_sum(&entries, Family::G2, 7).map(|_| ())
                    }),
                ),
            ];
            for (name, check) in checks {
                match check() {
                    Ok(()) => report.push_text(name, "ok", true),
                    Err(e) => report.push_text(name, e.to_string(), false),
                }
            }
            render(&report, "selftest", &[], cli.format, start)
        }
    })
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::IdentityViolation(_)
        | Error::PropertyViolation(_)
        | Error::CspViolation(_)
        | Error::Mismatch(_)
        | Error::FormulaMismatch(_) => 1,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli, start) {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}
