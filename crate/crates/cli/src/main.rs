//! Command-line front end: generation of representations and tensor tables,
//! and the verification suites (quadratic, Casimir, Yang-Baxter, RTT,
//! monodromy, spectrum).
//!
//! Exit codes: 0 when every check in the run passed exactly, 1 on a
//! verification failure, 2 on a usage/configuration error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lieosc::loper::build_l_su;
use lieosc::report::Report;
use lieosc::rootsys::{Family, RootSystem};
use lieosc::scalar::{parse_rational, Rational};
use lieosc::suite;
use lieosc::tensors::{complete_basis, structure_tensors, v_tensor, SparseSym3};
use lieosc::{build_rep, su_oscillator_rep, Error};

#[derive(Parser)]
#[command(name = "lieosc", version, about = "Exact Lie-algebra oscillator toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TensorKind {
    C,
    D,
    H,
    Dyyy,
    V,
}

#[derive(Args)]
struct Target {
    /// Algebra family: a, b, c or d
    #[arg(long)]
    family: String,
    /// Rank of the algebra
    #[arg(long)]
    rank: usize,
}

#[derive(Args)]
struct OutputOpts {
    /// Output path (resolved against LIEOSC_OUTPUT_DIR when relative)
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the defining representation (metric, Cartan, ladders, basis)
    GenRep {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Generate an ad-invariant tensor table
    GenTensors {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum)]
        tensor: TensorKind,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Build an oscillator representation and export its matrices
    OscRep {
        #[command(flatten)]
        target: Target,
        /// Bosonic cutoff (required for families a and c)
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify the quadratic relation of the L-operator
    CheckQuadratic {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cutoff: Option<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify Casimir values, the Casimir decomposition and product laws
    CheckCasimir {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cutoff: Option<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify the Yang-Baxter equation at seeded rational parameters
    CheckYbe {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify the RTT relation at explicit rational parameters
    CheckRtt {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        eta: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify the RTT relation for an N-site monodromy chain
    Monodromy {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        sites: usize,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        eta: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Exact spectral structure of the L-operator per parity sector
    Spectrum {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cutoff: Option<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run the complete verification pipeline for one family and rank
    VerifyAll {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn classify(err: &Error) -> ExitCode {
    match err {
        Error::InvalidRank { .. }
        | Error::InvalidScalar(_)
        | Error::CutoffTooSmall(_)
        | Error::FamilyMismatch(_)
        | Error::Pole(_)
        | Error::IndexRange(_) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        _ => {
            eprintln!("verification error: {err}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &OutputOpts, payload: String) -> std::io::Result<()> {
    match &out.output {
        None => {
            print!("{payload}");
            std::io::stdout().flush()
        }
        Some(path) => {
            let resolved = if path.is_relative() {
                match std::env::var_os("LIEOSC_OUTPUT_DIR") {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            if let Some(parent) = resolved.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(&resolved, payload)?;
            eprintln!("wrote {}", resolved.display());
            Ok(())
        }
    }
}

fn finish_report(report: Report, out: &OutputOpts) -> ExitCode {
    for line in &report.checks {
        eprintln!(
            "[{}] {}: {}",
            if line.pass { "pass" } else { "FAIL" },
            line.identity,
            line.description
        );
    }
    let pass = report.pass;
    if emit(out, report.to_json_string()).is_err() {
        return usage_error("unwritable output path");
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_family(target: &Target) -> Result<Family, Error> {
    Family::parse(&target.family)
}

/// Bosonic pipelines (families a and c) need an explicit cutoff.
fn require_cutoff(family: Family, cutoff: Option<usize>) -> Result<Option<usize>, ExitCode> {
    if cutoff.is_none() && matches!(family, Family::A | Family::C) {
        Err(usage_error(
            "a bosonic representation is involved: --cutoff is required",
        ))
    } else {
        Ok(cutoff)
    }
}

fn tensor_csv(t: &SparseSym3, header: &str) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for ((i, j, k), v) in t.iter_canonical() {
        s.push_str(&format!("{},{},{},{}\n", i + 1, j + 1, k + 1, v));
    }
    s
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::GenRep { target, format, out } => {
            let family = match parse_family(&target) {
                Ok(f) => f,
                Err(e) => return classify(&e),
            };
            if family == Family::A {
                // the a-family defining basis is the hermitian su(n+1) set
                let basis = match lieosc::definingrep::gellmann_basis(target.rank + 1) {
                    Ok(b) => b,
                    Err(e) => return classify(&e),
                };
                let payload = match format {
                    Format::Json => {
                        let js = serde_json::json!({
                            "family": "A",
                            "rank": target.rank,
                            "basis": basis.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
                        });
                        format!("{}\n", serde_json::to_string_pretty(&js).unwrap())
                    }
                    Format::Csv => {
                        let mut s = String::from("matrix,r,c,value\n");
                        for (idx, m) in basis.iter().enumerate() {
                            for (r, c, v) in m.iter() {
                                s.push_str(&format!("x{},{},{},{}\n", idx + 1, r + 1, c + 1, v));
                            }
                        }
                        s
                    }
                };
                if emit(&out, payload).is_err() {
                    return usage_error("unwritable output path");
                }
                return ExitCode::SUCCESS;
            }
            let rep = match build_rep(family, target.rank) {
                Ok(r) => r,
                Err(e) => return classify(&e),
            };
            let payload = match format {
                Format::Json => {
                    let js = serde_json::json!({
                        "family": family.letter().to_ascii_uppercase().to_string(),
                        "rank": rep.rank,
                        "dim_v": rep.dim_v,
                        "roots": rep.roots.to_json(),
                        "metric": rep.metric.to_json(),
                        "cartan": rep.cartan.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
                        "ladders": rep.ladders.iter().map(|lp| serde_json::json!({
                            "label": lp.label.word(),
                            "plus": lp.plus.to_json(),
                            "minus": lp.minus.to_json(),
                        })).collect::<Vec<_>>(),
                        "basis_x": rep.basis_x.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&js).unwrap())
                }
                Format::Csv => {
                    let mut s = String::from("matrix,r,c,value\n");
                    for (idx, m) in rep.basis_x.iter().enumerate() {
                        for (r, c, v) in m.iter() {
                            s.push_str(&format!("x{},{},{},{}\n", idx + 1, r + 1, c + 1, v));
                        }
                    }
                    s
                }
            };
            if emit(&out, payload).is_err() {
                return usage_error("unwritable output path");
            }
            ExitCode::SUCCESS
        }
        Command::GenTensors {
            target,
            tensor,
            format,
            out,
        } => {
            let family = match parse_family(&target) {
                Ok(f) => f,
                Err(e) => return classify(&e),
            };
            let rep = match build_rep(family, target.rank) {
                Ok(r) => r,
                Err(e) => return classify(&e),
            };
            let comp = match complete_basis(&rep) {
                Ok(c) => c,
                Err(e) => return classify(&e),
            };
            let st = match structure_tensors(&rep, &comp) {
                Ok(s) => s,
                Err(e) => return classify(&e),
            };
            let payload = match tensor {
                TensorKind::V => {
                    let vt = match v_tensor(&st, &rep) {
                        Ok(v) => v,
                        Err(e) => return classify(&e),
                    };
                    match format {
                        Format::Csv => {
                            let mut s = String::from("i,j,k,l,value\n");
                            for (idx, v) in vt.iter_canonical() {
                                s.push_str(&format!(
                                    "{},{},{},{},{}\n",
                                    idx[0] + 1,
                                    idx[1] + 1,
                                    idx[2] + 1,
                                    idx[3] + 1,
                                    v
                                ));
                            }
                            s
                        }
                        Format::Json => {
                            let entries: Vec<serde_json::Value> = vt
                                .iter_canonical()
                                .map(|(idx, v)| {
                                    serde_json::json!({
                                        "i": idx[0]+1, "j": idx[1]+1, "k": idx[2]+1, "l": idx[3]+1,
                                        "v": v,
                                    })
                                })
                                .collect();
                            format!(
                                "{}\n",
                                serde_json::to_string_pretty(&serde_json::json!({
                                    "tensor": "v", "entries": entries
                                }))
                                .unwrap()
                            )
                        }
                    }
                }
                other => {
                    let (t, name) = match other {
                        TensorKind::C => (&st.c, "c"),
                        TensorKind::D => (&st.d_xxy, "d"),
                        TensorKind::H => (&st.h_xyy, "h"),
                        TensorKind::Dyyy => (&st.d_yyy, "dyyy"),
                        TensorKind::V => unreachable!(),
                    };
                    match format {
                        Format::Csv => tensor_csv(t, "i,j,k,value"),
                        Format::Json => {
                            let entries: Vec<serde_json::Value> = t
                                .iter_canonical()
                                .map(|((i, j, k), v)| {
                                    serde_json::json!({"i": i+1, "j": j+1, "k": k+1, "v": v})
                                })
                                .collect();
                            format!(
                                "{}\n",
                                serde_json::to_string_pretty(&serde_json::json!({
                                    "tensor": name, "entries": entries
                                }))
                                .unwrap()
                            )
                        }
                    }
                }
            };
            if emit(&out, payload).is_err() {
                return usage_error("unwritable output path");
            }
            ExitCode::SUCCESS
        }
        Command::OscRep {
            target,
            cutoff,
            format,
            out,
        } => {
            let family = match parse_family(&target) {
                Ok(f) => f,
                Err(e) => return classify(&e),
            };
            if matches!(family, Family::A | Family::C) && cutoff.is_none() {
                return usage_error("a bosonic representation needs --cutoff");
            }
            let Format::Json = format else {
                return usage_error("osc-rep supports --format json");
            };
            let (basis, ops): (Vec<Vec<u32>>, Vec<serde_json::Value>) = if family == Family::A {
                let rep = match su_oscillator_rep(target.rank + 1, cutoff.unwrap()) {
                    Ok(r) => r,
                    Err(e) => return classify(&e),
                };
                (
                    rep.space.basis.clone(),
                    rep.x_ops.iter().map(|m| m.to_json()).collect(),
                )
            } else {
                let rep = match build_rep(family, target.rank) {
                    Ok(r) => r,
                    Err(e) => return classify(&e),
                };
                let op = match suite::oscillator_for(&rep, cutoff) {
                    Ok(o) => o,
                    Err(e) => return classify(&e),
                };
                (
                    op.space.basis.clone(),
                    op.x_ops.iter().map(|m| m.to_json()).collect(),
                )
            };
            let js = serde_json::json!({
                "family": family.letter().to_ascii_uppercase().to_string(),
                "rank": target.rank,
                "cutoff": cutoff,
                "basis": basis,
                "operators": ops,
            });
            if emit(&out, format!("{}\n", serde_json::to_string_pretty(&js).unwrap())).is_err() {
                return usage_error("unwritable output path");
            }
            ExitCode::SUCCESS
        }
        Command::CheckQuadratic { target, cutoff, out } => {
            let cutoff = match parse_family(&target).map_err(|e| classify(&e)).and_then(|f| require_cutoff(f, cutoff)) {
                Ok(c) => c,
                Err(code) => return code,
            };
            run_report(&target, |family| match family {
                Family::A => {
                    let rep = su_oscillator_rep(target.rank + 1, cutoff.unwrap_or(suite::DEFAULT_CUTOFF))?;
                    let l = build_l_su(&rep)?;
                    Ok(lieosc::loper::quadratic_residual_su(&rep, &l))
                }
                _ => {
                    let rep = build_rep(family, target.rank)?;
                    let op = suite::oscillator_for(&rep, cutoff)?;
                    let l = lieosc::build_l(&rep, &op)?;
                    let spec = lieosc::QuadraticSpec::for_l(&l)?;
                    let mut report = Report::new("quadratic");
                    report.set_param("family", family.to_string());
                    report.set_param("rank", target.rank.to_string());
                    report.push(lieosc::loper::quadratic_residual(&l, &spec));
                    Ok(report)
                }
            }, &out)
        }
        Command::CheckCasimir { target, cutoff, out } => {
            let cutoff = match parse_family(&target).map_err(|e| classify(&e)).and_then(|f| require_cutoff(f, cutoff)) {
                Ok(c) => c,
                Err(code) => return code,
            };
            run_report(&target, |family| match family {
                Family::A => {
                    let rep = su_oscillator_rep(target.rank + 1, cutoff.unwrap_or(suite::DEFAULT_CUTOFF))?;
                    lieosc::loper::su_level_laws(&rep)
                }
                _ => suite::l_operator_report(family, target.rank, cutoff),
            }, &out)
        }
        Command::CheckYbe {
            target,
            samples,
            seed,
            out,
        } => run_report(&target, |family| {
            suite::ybe_report(family, target.rank, samples, seed)
        }, &out),
        Command::CheckRtt {
            target,
            cutoff,
            u,
            v,
            eta,
            out,
        } => {
            let cutoff = match parse_family(&target).map_err(|e| classify(&e)).and_then(|f| require_cutoff(f, cutoff)) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let (u, v, eta) = match parse_uve(&u, &v, &eta) {
                Ok(t) => t,
                Err(code) => return code,
            };
            run_report(&target, |family| {
                let rep = build_rep(family, target.rank)?;
                let op = suite::oscillator_for(&rep, cutoff)?;
                let l = lieosc::build_l(&rep, &op)?;
                let mut report = Report::new("rtt");
                report.set_param("family", family.to_string());
                report.set_param("rank", target.rank.to_string());
                report.push(lieosc::check_rtt(&rep, &l, &u, &v, &eta)?);
                Ok(report)
            }, &out)
        }
        Command::Monodromy {
            target,
            sites,
            cutoff,
            u,
            v,
            eta,
            out,
        } => {
            let cutoff = match parse_family(&target).map_err(|e| classify(&e)).and_then(|f| require_cutoff(f, cutoff)) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let (u, v, eta) = match parse_uve(&u, &v, &eta) {
                Ok(t) => t,
                Err(code) => return code,
            };
            run_report(&target, |family| {
                suite::monodromy_report(family, target.rank, sites, cutoff, &u, &v, &eta)
            }, &out)
        }
        Command::Spectrum { target, cutoff, out } => {
            let cutoff = match parse_family(&target).map_err(|e| classify(&e)).and_then(|f| require_cutoff(f, cutoff)) {
                Ok(c) => c,
                Err(code) => return code,
            };
            run_report(&target, |family| match family {
                Family::A => suite::su_report(target.rank + 1, cutoff.unwrap_or(suite::DEFAULT_CUTOFF), 42),
                _ => {
                    let rep = build_rep(family, target.rank)?;
                    let op = suite::oscillator_for(&rep, cutoff)?;
                    let l = lieosc::build_l(&rep, &op)?;
                    suite::spectrum_report_from(&rep, &op, &l)
                }
            }, &out)
        }
        Command::VerifyAll {
            target,
            cutoff,
            seed,
            out,
        } => {
            let cutoff = match parse_family(&target).map_err(|e| classify(&e)).and_then(|f| require_cutoff(f, cutoff)) {
                Ok(c) => c,
                Err(code) => return code,
            };
            run_report(&target, |family| {
                suite::verify_all(family, target.rank, cutoff, seed)
            }, &out)
        }
    }
}

fn parse_uve(u: &str, v: &str, eta: &str) -> Result<(Rational, Rational, Rational), ExitCode> {
    let parse = |s: &str| -> Result<Rational, ExitCode> {
        parse_rational(s).map_err(|e| usage_error(&format!("{e}")))
    };
    Ok((parse(u)?, parse(v)?, parse(eta)?))
}

fn run_report<F>(target: &Target, f: F, out: &OutputOpts) -> ExitCode
where
    F: FnOnce(Family) -> Result<Report, Error>,
{
    let family = match Family::parse(&target.family) {
        Ok(f) => f,
        Err(e) => return classify(&e),
    };
    // surface invalid ranks as usage errors before running anything
    if family != Family::A {
        if let Err(e) = RootSystem::new(family, target.rank) {
            return classify(&e);
        }
    }
    match f(family) {
        Ok(report) => finish_report(report, out),
        Err(e) => classify(&e),
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
