//! Command line front end for the syntomic cohomology engine.
//!
//! Exit codes: 0 on success, 1 on usage or computation errors, 2 when a
//! computed group contradicts the closed-form cross-check.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use syntomic_core::basecase::PerfectBaseData;
use syntomic_core::linalg::HomologyGroup;
use syntomic_core::syntomic::{relative_k_group, zp_i, ZpiOptions};
use syntomic_core::witt::WittRing;
use syntomic_core::{CohomologyResult, Error};

#[derive(Parser)]
#[command(
    name = "syntomic",
    version,
    about = "Exact p-adic syntomic cohomology of truncated polynomial rings over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute H^*(Z_p(i)) of F_{p^f}[x]/x^e.
    Zpi {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        e: u64,
        #[arg(long)]
        i: u64,
        #[arg(long, default_value_t = 1)]
        f: usize,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        wmax: Option<u64>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Accept only parameters covered by the closed-form cross-check.
        #[arg(long)]
        strict: bool,
    },
    /// Tabulate relative K-groups K_{2i-1}(k[x]/x^e, (x); Z_p) for i <= imax.
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        e: u64,
        #[arg(long)]
        imax: u64,
        #[arg(long, default_value_t = 1)]
        f: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        strict: bool,
    },
    /// Sweep i = 1..=imax at e = 2 and check every H^1 against the closed form.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        imax: u64,
        #[arg(long, default_value_t = 1)]
        f: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Fixed-point invariants of the base field in degrees 2j, 2j-1.
    Tc {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: usize,
        #[arg(long, default_value_t = -6, allow_negative_numbers = true)]
        jmin: i64,
        #[arg(long, default_value_t = 12, allow_negative_numbers = true)]
        jmax: i64,
        #[arg(long, default_value_t = 6)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Weight-zero syntomic block of the base field at level i.
    Point {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u64,
        #[arg(long, default_value_t = 1)]
        f: usize,
        #[arg(long, default_value_t = 6)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::ValidationMismatch { .. } => 2,
                _ => 1,
            };
            std::process::exit(code);
        }
    }
}

fn check_strict(strict: bool, p: u64, e: u64) -> Result<(), Error> {
    if strict && (p == 2 || e != 2) {
        return Err(Error::Unsupported {
            what: format!("--strict covers odd p with e = 2 only, got p = {p}, e = {e}"),
        });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Zpi {
            p,
            e,
            i,
            f,
            precision,
            wmax,
            jobs,
            format,
            strict,
        } => {
            check_strict(strict, p, e)?;
            let opts = ZpiOptions {
                precision,
                wmax,
                jobs,
                ..ZpiOptions::default()
            };
            let r = zp_i(p, e, i, f, &opts)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&r.to_document()).unwrap()
                ),
                Format::Text => print_result_text(&r),
                Format::Csv => {
                    return Err(Error::Unsupported {
                        what: "csv applies to `table` only".into(),
                    })
                }
            }
            Ok(())
        }
        Cmd::Table {
            p,
            e,
            imax,
            f,
            jobs,
            format,
            strict,
        } => {
            check_strict(strict, p, e)?;
            let opts = ZpiOptions {
                jobs,
                ..ZpiOptions::default()
            };
            let mut rows = Vec::new();
            for i in 1..=imax {
                rows.push(relative_k_group(p, e, i, f, &opts)?);
            }
            match format {
                Format::Csv => {
                    println!("p,e,f,i,k_degree,order_exponent,factors");
                    for k in &rows {
                        let factors: Vec<String> = k
                            .factors
                            .iter()
                            .map(|(d, n)| format!("d={d}:n={n}"))
                            .collect();
                        println!(
                            "{},{},{},{},{},{},{}",
                            k.p,
                            k.e,
                            k.f,
                            k.i,
                            k.degree,
                            k.order_exponent,
                            factors.join(";")
                        );
                    }
                }
                Format::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|k| {
                            serde_json::json!({
                                "i": k.i,
                                "k_degree": k.degree,
                                "order_exponent": k.order_exponent,
                                "factors": k.factors.iter().map(|(d, n)| {
                                    serde_json::json!({"d": d, "witt_length": n})
                                }).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&items).unwrap());
                }
                Format::Text => {
                    for k in &rows {
                        let factors: Vec<String> = k
                            .factors
                            .iter()
                            .map(|(d, n)| format!("W_{n}(k) [d={d}]"))
                            .collect();
                        println!(
                            "K_{}(k[x]/x^{}, (x); Z_{}) = {}  (order {}^{})",
                            k.degree,
                            k.e,
                            k.p,
                            if factors.is_empty() {
                                "0".to_string()
                            } else {
                                factors.join(" + ")
                            },
                            k.p,
                            k.order_exponent
                        );
                    }
                }
            }
            Ok(())
        }
        Cmd::Verify { p, imax, f, jobs } => {
            let opts = ZpiOptions {
                jobs,
                ..ZpiOptions::default()
            };
            for i in 1..=imax {
                match zp_i(p, 2, i, f, &opts) {
                    Ok(r) => {
                        println!(
                            "i={i} ok: |H^1| = {p}^{} across {} towers, precision {}",
                            r.order_exponent(1),
                            r.h[1].len(),
                            r.precision
                        );
                    }
                    Err(Error::ValidationMismatch { detail }) => {
                        println!(
                            "{}",
                            serde_json::json!({
                                "status": "mismatch",
                                "p": p,
                                "e": 2,
                                "i": i,
                                "f": f,
                                "detail": detail,
                            })
                        );
                        return Err(Error::ValidationMismatch {
                            detail: format!("i = {i}"),
                        });
                    }
                    Err(other) => return Err(other),
                }
            }
            println!("verified: closed form reproduced for p={p}, f={f}, i=1..={imax}");
            Ok(())
        }
        Cmd::Tc {
            p,
            f,
            jmin,
            jmax,
            precision,
            format,
        } => {
            if jmin > jmax {
                return Err(Error::Unsupported {
                    what: "jmin exceeds jmax".into(),
                });
            }
            let data = PerfectBaseData::new(WittRing::new(p, precision, f)?);
            let mut rows = Vec::new();
            for j in jmin..=jmax {
                let (even, odd) = data.tc_homotopy(j)?;
                rows.push((j, even, odd));
            }
            match format {
                Format::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(j, even, odd)| {
                            serde_json::json!({
                                "j": j,
                                "degree_even": 2 * j,
                                "group_even": group_label(even, precision),
                                "degree_odd": 2 * j - 1,
                                "group_odd": group_label(odd, precision),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&items).unwrap());
                }
                _ => {
                    for (j, even, odd) in &rows {
                        println!(
                            "degree {:>4}: {:<12} degree {:>4}: {}",
                            2 * j,
                            group_label(even, precision),
                            2 * j - 1,
                            group_label(odd, precision)
                        );
                    }
                }
            }
            Ok(())
        }
        Cmd::Point {
            p,
            i,
            f,
            precision,
            format,
        } => {
            let ring = WittRing::new(p, precision, f)?;
            let (h0, h1) = syntomic_core::basecase::zp_i_point(&ring, i)?;
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "p": p,
                            "f": f,
                            "i": i,
                            "h0": group_label(&h0, precision),
                            "h1": group_label(&h1, precision),
                        }))
                        .unwrap()
                    );
                }
                _ => {
                    println!(
                        "H^0(Z_p({i}) of F_{{{p}^{f}}}) = {}",
                        group_label(&h0, precision)
                    );
                    println!(
                        "H^1(Z_p({i}) of F_{{{p}^{f}}}) = {}",
                        group_label(&h1, precision)
                    );
                }
            }
            Ok(())
        }
    }
}

fn group_label(g: &HomologyGroup, precision: u32) -> String {
    if g.factors.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = g
        .factors
        .iter()
        .map(|&a| {
            if a == precision && g.saturated {
                "Z_p".to_string()
            } else {
                format!("Z/p^{a}")
            }
        })
        .collect();
    parts.join(" + ")
}

fn print_result_text(r: &CohomologyResult) {
    println!(
        "Z_p({}) of F_{{{}^{}}}[x]/x^{}  (precision {}, window {}, escalations {})",
        r.i, r.p, r.f, r.e, r.precision, r.wmax, r.escalations
    );
    for deg in 0..3 {
        let mut parts: Vec<String> = Vec::new();
        let point_rank = match deg {
            0 => r.point.0,
            1 => r.point.1,
            _ => 0,
        };
        if point_rank > 0 {
            parts.push(format!("Z_p^{point_rank}"));
        }
        for t in &r.h[deg] {
            for &n in &t.witt_lengths {
                parts.push(format!("W_{n}(k) [d={}]", t.d));
            }
        }
        println!(
            "H^{deg} = {}",
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        );
    }
    println!("validated: {}", r.validated.as_str());
    for t in &r.truncations {
        println!(
            "tower d={}: kept positions 0..={}, tail probe {} positions",
            t.d, t.a_max, t.tail_positions_checked
        );
    }
}
