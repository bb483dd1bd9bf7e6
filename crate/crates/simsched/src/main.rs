//! `simsched` command-line front end.
//!
//! Exit codes: 0 success, 1 a verified claim failed, 2 bad parameters or an
//! unknown claim, 3 unsupported instance/mode combination, 4 enumeration
//! budget exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use simsched::analysis::{
    self, closed_f, table1_report, verify_claim, ClaimParams, SpeedProfile, Verdict,
};
use simsched::error::Error;
use simsched::instance::{
    gen_random, gen_rm_instance, gen_sar_unrelated, gen_tight_related, parse_instance,
    serialize_instance, Dist, EnvKind, Instance, MachineEnv, Mode,
};
use simsched::json;
use simsched::loads;
use simsched::oracle::{
    brute_prefix_envelope, enumerate_assignments, EnumerationBudget, PrefixEnvelope, Provenance,
};
use simsched::schedule::{
    load_vector, lpt, mcr, min_work_assignment, optimal_regular_fractional, parse_schedule,
    uniform_fractional, Schedule,
};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "simsched", version, about = "simultaneous-approximation scheduling toolkit")]
struct Cli {
    /// Output format; JSON is the stable contract, text is human-oriented.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance of one of the built-in families.
    Generate(GenerateArgs),
    /// Compute s(S) and c(S) of a schedule for an instance.
    Analyze(AnalyzeArgs),
    /// Compute the prefix envelope f(1..m) of an instance.
    Envelope(EnvelopeArgs),
    /// Run bound-verification claims and emit JSON-lines reports.
    Verify(VerifyArgs),
    /// Emit the bound-corridor table for a machine count.
    Report(ReportArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Instance family.
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Granularity parameter of the sar-unrelated family.
    #[arg(long, default_value_t = 10.0)]
    k: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Machine environment for the random family.
    #[arg(long, default_value = "identical")]
    env: String,
    /// Processing mode for the random family: NP, PP or FP.
    #[arg(long, default_value = "NP")]
    mode: String,
    /// Size distribution for the random family.
    #[arg(long, default_value = "uniform-int")]
    dist: String,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Rm,
    TightRelated,
    SarUnrelated,
    Random,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Instance JSON file.
    #[arg(long)]
    instance: PathBuf,
    /// Schedule source: lpt, mcr, uniform-fp, regular-fp, min-work, or
    /// file:<path> for a schedule JSON file.
    #[arg(long)]
    schedule: String,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnvelopeArgs {
    /// Instance JSON file.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim ids, or "all" for the pinned suite.
    #[arg(required = true)]
    claims: Vec<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn budget_from(flag: Option<u64>) -> EnumerationBudget {
    let max_states = flag
        .or_else(|| {
            std::env::var("SIMSCHED_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(EnumerationBudget::default().max_states);
    EnumerationBudget { max_states }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Unsupported(_) => 3,
        Error::BudgetExceeded { .. } => 4,
        _ => 2,
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> simsched::Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> simsched::Result<()> {
    let inst = match args.kind {
        GenKind::Rm => gen_rm_instance(args.m)?,
        GenKind::TightRelated => gen_tight_related(args.m)?,
        GenKind::SarUnrelated => gen_sar_unrelated(args.k)?,
        GenKind::Random => {
            let env = match args.env.as_str() {
                "identical" => EnvKind::Identical,
                "related" => EnvKind::Related,
                "unrelated" => EnvKind::Unrelated,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown environment {other:?}"
                    )))
                }
            };
            let mode = Mode::from_str(&args.mode).ok_or_else(|| {
                Error::InvalidParameter(format!("unknown mode {:?}", args.mode))
            })?;
            let dist = Dist::from_str(&args.dist).ok_or_else(|| {
                Error::InvalidParameter(format!("unknown distribution {:?}", args.dist))
            })?;
            gen_random(env, mode, args.m, args.n, args.seed, dist)?
        }
    };
    emit(&args.out, &format!("{}\n", serialize_instance(&inst)))
}

/// Picks the envelope method for the instance's mode and environment.
fn envelope_for(inst: &Instance, budget: &EnumerationBudget) -> simsched::Result<PrefixEnvelope> {
    match (inst.mode, &inst.env) {
        (Mode::NonPreemptive, _) => brute_prefix_envelope(inst, budget),
        (Mode::Fractional, MachineEnv::Identical { machines }) => {
            let profile = SpeedProfile::new(vec![1.0; *machines])?;
            let w = inst.total_work();
            let f = (1..=*machines)
                .map(|i| Ok(w * closed_f(&profile, i)?))
                .collect::<simsched::Result<_>>()?;
            Ok(PrefixEnvelope {
                f,
                provenance: Provenance::ClosedForm,
            })
        }
        (Mode::Fractional, MachineEnv::Related { speeds }) => {
            let profile = SpeedProfile::new(speeds.clone())?;
            let w = inst.total_work();
            let f = (1..=speeds.len())
                .map(|i| Ok(w * closed_f(&profile, i)?))
                .collect::<simsched::Result<_>>()?;
            Ok(PrefixEnvelope {
                f,
                provenance: Provenance::ClosedForm,
            })
        }
        (Mode::Preemptive, MachineEnv::Identical { .. }) => {
            // the recursive McNaughton schedule attains the infimum in every
            // prefix coordinate
            let sched = mcr(inst)?;
            let f = sched.load_vector(inst)?.sorted_desc().prefix_sums();
            if f.iter().any(|&v| !(v > 0.0)) {
                return Err(Error::Unsupported(
                    "preemptive envelope degenerates with fewer jobs than machines".into(),
                ));
            }
            Ok(PrefixEnvelope {
                f,
                provenance: Provenance::ClosedForm,
            })
        }
        (mode, env) => Err(Error::Unsupported(format!(
            "no envelope method for mode {} in this machine environment ({})",
            mode.as_str(),
            match env {
                MachineEnv::Identical { .. } => "identical",
                MachineEnv::Related { .. } => "related",
                MachineEnv::Unrelated { .. } => "unrelated",
            }
        ))),
    }
}

/// Per-coordinate infima of sorted loads over all feasible schedules, the
/// denominators of c(X).
fn coordinate_minima(inst: &Instance, budget: &EnumerationBudget) -> simsched::Result<Vec<f64>> {
    let m = inst.machines();
    match (inst.mode, &inst.env) {
        (Mode::NonPreemptive, _) => {
            let mut minima = vec![f64::INFINITY; m];
            let mut sorted = vec![0.0f64; m];
            enumerate_assignments(inst, budget, |_, machine_loads| {
                sorted.copy_from_slice(machine_loads);
                sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
                for (slot, &l) in minima.iter_mut().zip(&sorted) {
                    if l < *slot {
                        *slot = l;
                    }
                }
            })?;
            Ok(minima)
        }
        (Mode::Fractional, MachineEnv::Identical { .. })
        | (Mode::Fractional, MachineEnv::Related { .. })
        | (Mode::Preemptive, MachineEnv::Identical { .. }) => {
            // largest coordinate cannot drop below spreading everything out
            // (and, preemptively, below the largest job); every later
            // coordinate can be driven to zero by stacking one machine
            let w = inst.total_work();
            let top = match &inst.env {
                MachineEnv::Identical { machines } => {
                    let spread = w / *machines as f64;
                    if inst.mode == Mode::Preemptive {
                        spread.max(inst.jobs.iter().fold(0.0f64, |a, &b| a.max(b)))
                    } else {
                        spread
                    }
                }
                MachineEnv::Related { speeds } => w / speeds.iter().sum::<f64>(),
                MachineEnv::Unrelated { .. } => unreachable!(),
            };
            let mut minima = vec![0.0; m];
            minima[0] = top;
            Ok(minima)
        }
        _ => Err(Error::Unsupported(
            "no coordinate-minima method for this mode/environment".into(),
        )),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    s: f64,
    c: f64,
    witness_index: usize,
    loads: Vec<f64>,
    envelope: Vec<f64>,
}

fn schedule_from_source(inst: &Instance, source: &str) -> simsched::Result<Schedule> {
    Ok(match source {
        "lpt" => Schedule::NonPreemptive(lpt(inst)?),
        "mcr" => Schedule::Preemptive(mcr(inst)?),
        "uniform-fp" => Schedule::Fractional(uniform_fractional(inst)?),
        "regular-fp" => match &inst.env {
            MachineEnv::Related { speeds } => {
                Schedule::Fractional(optimal_regular_fractional(speeds)?)
            }
            MachineEnv::Identical { machines } => {
                Schedule::Fractional(optimal_regular_fractional(&vec![1.0; *machines])?)
            }
            MachineEnv::Unrelated { .. } => {
                return Err(Error::Unsupported(
                    "regular-fp needs identical or related machines".into(),
                ))
            }
        },
        "min-work" => Schedule::NonPreemptive(min_work_assignment(inst)?),
        other => match other.strip_prefix("file:") {
            Some(path) => parse_schedule(&fs::read_to_string(path)?)?,
            None => {
                return Err(Error::InvalidParameter(format!(
                    "unknown schedule source {other:?}"
                )))
            }
        },
    })
}

fn cmd_analyze(args: &AnalyzeArgs, format: Format) -> simsched::Result<()> {
    let mut inst = parse_instance(&fs::read_to_string(&args.instance)?)?;
    inst.validate()?;
    let budget = budget_from(args.budget);
    let sched = schedule_from_source(&inst, &args.schedule)?;
    let lv = load_vector(&sched, &inst)?;

    let envelope = envelope_for(&inst, &budget)?;
    let report = loads::ratio_s_envelope(&lv, &envelope.f)?;

    let minima = coordinate_minima(&inst, &budget)?;
    let sorted = lv.sorted_desc();
    let c = sorted
        .loads()
        .iter()
        .zip(&minima)
        .map(|(&x, &y)| loads::ratio(x, y))
        .fold(0.0f64, f64::max);

    let out = AnalyzeReport {
        s: report.value,
        c,
        witness_index: report.witness_index,
        loads: lv.loads().to_vec(),
        envelope: envelope.f.clone(),
    };
    let text = match format {
        Format::Json => format!("{}\n", json::to_string(&out)),
        Format::Text => format!(
            "s = {:.6}  (witness prefix {})\nc = {}\nloads = {:?}\nenvelope = {:?}\n",
            out.s,
            out.witness_index,
            if out.c.is_finite() {
                format!("{:.6}", out.c)
            } else {
                "unbounded".to_string()
            },
            out.loads,
            out.envelope,
        ),
    };
    emit(&args.out, &text)
}

fn cmd_envelope(args: &EnvelopeArgs, format: Format) -> simsched::Result<()> {
    let mut inst = parse_instance(&fs::read_to_string(&args.instance)?)?;
    inst.validate()?;
    let envelope = envelope_for(&inst, &budget_from(args.budget))?;
    let text = match format {
        Format::Json => format!("{}\n", json::to_string(&envelope)),
        Format::Text => format!("f = {:?}  ({:?})\n", envelope.f, envelope.provenance),
    };
    emit(&args.out, &text)
}

fn default_m(claim: &str) -> usize {
    match claim {
        "lpt_three_halves" | "q_fp_tight" | "f_closed_form" | "discretize_demo" | "q_fp_formula" => 4,
        "p2_np_one" | "r_sqrt_m" => 2,
        _ => 3,
    }
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> simsched::Result<bool> {
    let budget = budget_from(args.budget);
    let runs: Vec<(String, ClaimParams)> =
        if args.claims.len() == 1 && args.claims[0] == "all" {
            analysis::default_suite(args.seed, budget)
        } else {
            for id in &args.claims {
                if !analysis::CLAIM_IDS.contains(&id.as_str()) {
                    return Err(Error::UnknownClaim(id.clone()));
                }
            }
            let mut runs: Vec<(String, ClaimParams)> = args
                .claims
                .iter()
                .map(|id| {
                    (
                        id.clone(),
                        ClaimParams {
                            m: args.m.unwrap_or_else(|| default_m(id)),
                            seed: args.seed,
                            budget,
                        },
                    )
                })
                .collect();
            runs.sort_by(|a, b| (a.0.as_str(), a.1.m).cmp(&(b.0.as_str(), b.1.m)));
            runs
        };

    let mut lines = String::new();
    let mut all_pass = true;
    for (id, params) in &runs {
        let report = verify_claim(id, params)?;
        all_pass &= matches!(report.verdict, Verdict::Pass);
        match format {
            Format::Json => {
                lines.push_str(&json::to_string(&report));
                lines.push('\n');
            }
            Format::Text => lines.push_str(&format!(
                "{:<18} m={:<2} measured={:<12.6} bound={:<12.6} {}\n",
                report.claim,
                params.m,
                report.measured,
                report.bound,
                match report.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                }
            )),
        }
    }
    emit(&args.out, &lines)?;
    Ok(all_pass)
}

fn cmd_report(args: &ReportArgs, format: Format) -> simsched::Result<()> {
    let report = table1_report(args.m, args.seed, budget_from(args.budget))?;
    let text = match format {
        Format::Json => format!("{}\n", json::to_string(&report)),
        Format::Text => {
            let mut t = format!("bound corridor, m = {}\n", report.m);
            for cell in &report.cells {
                t.push_str(&format!(
                    "{:<10} {:<44} {:<14} {}\n",
                    cell.problem,
                    cell.claimed,
                    cell.measured
                        .map_or_else(|| "-".to_string(), |v| format!("{v:.6}")),
                    cell.status
                ));
            }
            t
        }
    };
    emit(&args.out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(args) => cmd_generate(args).map(|()| 0),
        Command::Analyze(args) => cmd_analyze(args, cli.format).map(|()| 0),
        Command::Envelope(args) => cmd_envelope(args, cli.format).map(|()| 0),
        Command::Verify(args) => cmd_verify(args, cli.format).map(|ok| if ok { 0 } else { 1 }),
        Command::Report(args) => cmd_report(args, cli.format).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
