//! Instance data model, validation, JSON round-trip, and generators for both
//! random instances and the extremal constructions used by the bound checks.

use crate::analysis;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Machine environment. Related speeds are kept in normal form: non-increasing.
/// Unrelated times are indexed `times[machine][job]`.
#[derive(Debug, Clone, PartialEq)]
pub enum MachineEnv {
    Identical { machines: usize },
    Related { speeds: Vec<f64> },
    Unrelated { times: Vec<Vec<f64>> },
}

impl MachineEnv {
    pub fn machine_count(&self) -> usize {
        match self {
            MachineEnv::Identical { machines } => *machines,
            MachineEnv::Related { speeds } => speeds.len(),
            MachineEnv::Unrelated { times } => times.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "NP")]
    NonPreemptive,
    #[serde(rename = "PP")]
    Preemptive,
    #[serde(rename = "FP")]
    Fractional,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::NonPreemptive => "NP",
            Mode::Preemptive => "PP",
            Mode::Fractional => "FP",
        }
    }

    pub fn from_str(s: &str) -> Option<Mode> {
        match s {
            "NP" => Some(Mode::NonPreemptive),
            "PP" => Some(Mode::Preemptive),
            "FP" => Some(Mode::Fractional),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub label: String,
    pub env: MachineEnv,
    pub mode: Mode,
    /// Standard processing times. Empty for unrelated environments, where the
    /// times matrix carries everything.
    pub jobs: Vec<f64>,
}

impl Instance {
    pub fn machines(&self) -> usize {
        self.env.machine_count()
    }

    pub fn job_count(&self) -> usize {
        match &self.env {
            MachineEnv::Unrelated { times } => times.first().map_or(0, |row| row.len()),
            _ => self.jobs.len(),
        }
    }

    pub fn total_work(&self) -> f64 {
        self.jobs.iter().sum()
    }

    /// Checks all invariants. Related speeds that arrive out of normal form
    /// are re-sorted in place and a warning is recorded.
    pub fn validate(&mut self) -> Result<Vec<String>> {
        let mut errors = Vec::new();
        let mut warnings = Vec::new();

        match &mut self.env {
            MachineEnv::Identical { machines } => {
                if *machines == 0 {
                    errors.push("identical environment needs m >= 1".into());
                }
            }
            MachineEnv::Related { speeds } => {
                if speeds.is_empty() {
                    errors.push("related environment needs at least one speed".into());
                }
                if speeds.iter().any(|&s| !s.is_finite() || s <= 0.0) {
                    errors.push("non-positive machine speed".into());
                }
                if errors.is_empty() && speeds.windows(2).any(|w| w[0] < w[1]) {
                    let original = speeds.clone();
                    speeds.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    warnings.push(format!(
                        "speeds {original:?} re-sorted into normal form {speeds:?}"
                    ));
                }
            }
            MachineEnv::Unrelated { times } => {
                if times.is_empty() {
                    errors.push("unrelated environment needs at least one machine row".into());
                } else {
                    let n = times[0].len();
                    if n == 0 {
                        errors.push("unrelated times matrix needs at least one job column".into());
                    }
                    if times.iter().any(|row| row.len() != n) {
                        errors.push("unrelated times matrix rows have unequal lengths".into());
                    }
                    if times
                        .iter()
                        .flatten()
                        .any(|&p| !p.is_finite() || p <= 0.0)
                    {
                        errors.push("non-positive processing time in times matrix".into());
                    }
                }
                if !self.jobs.is_empty() {
                    errors.push("unrelated instances must leave the jobs list empty".into());
                }
            }
        }

        if !matches!(self.env, MachineEnv::Unrelated { .. }) {
            if self.jobs.is_empty() {
                errors.push("needs at least one job".into());
            }
            if self.jobs.iter().any(|&p| !p.is_finite() || p <= 0.0) {
                errors.push("non-positive processing time".into());
            }
        }

        if errors.is_empty() {
            Ok(warnings)
        } else {
            Err(Error::InvalidInstance(errors))
        }
    }
}

// ---------------------------------------------------------------------------
// JSON round-trip

#[derive(Serialize)]
struct InstanceWire<'a> {
    #[serde(skip_serializing_if = "str::is_empty")]
    label: &'a str,
    env: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    speeds: Option<&'a [f64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    times: Option<&'a [Vec<f64>]>,
    mode: &'static str,
    jobs: &'a [f64],
}

pub fn serialize_instance(inst: &Instance) -> String {
    let (env, m, speeds, times) = match &inst.env {
        MachineEnv::Identical { machines } => ("identical", Some(*machines), None, None),
        MachineEnv::Related { speeds } => ("related", None, Some(speeds.as_slice()), None),
        MachineEnv::Unrelated { times } => ("unrelated", None, None, Some(times.as_slice())),
    };
    crate::json::to_string(&InstanceWire {
        label: &inst.label,
        env,
        m,
        speeds,
        times,
        mode: inst.mode.as_str(),
        jobs: &inst.jobs,
    })
}

fn schema_err(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn get_f64(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| schema_err(path, "expected a number"))
}

fn get_f64_array(v: &Value, path: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema_err(path, "expected an array of numbers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| get_f64(x, &format!("{path}[{i}]")))
        .collect()
}

/// Parses and validates an instance document, normalizing related speeds.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| schema_err("$", format!("not valid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| schema_err("$", "expected a JSON object"))?;

    let label = match obj.get("label") {
        None => String::new(),
        Some(v) => v
            .as_str()
            .ok_or_else(|| schema_err("$.label", "expected a string"))?
            .to_string(),
    };

    let env_kind = obj
        .get("env")
        .and_then(Value::as_str)
        .ok_or_else(|| schema_err("$.env", "expected \"identical\", \"related\" or \"unrelated\""))?;
    let env = match env_kind {
        "identical" => {
            let m = obj
                .get("m")
                .and_then(Value::as_u64)
                .ok_or_else(|| schema_err("$.m", "identical instances need a positive integer m"))?;
            MachineEnv::Identical {
                machines: m as usize,
            }
        }
        "related" => {
            let speeds = obj
                .get("speeds")
                .ok_or_else(|| schema_err("$.speeds", "related instances need a speeds array"))?;
            MachineEnv::Related {
                speeds: get_f64_array(speeds, "$.speeds")?,
            }
        }
        "unrelated" => {
            let rows = obj
                .get("times")
                .and_then(Value::as_array)
                .ok_or_else(|| schema_err("$.times", "unrelated instances need a times matrix"))?;
            let times = rows
                .iter()
                .enumerate()
                .map(|(i, row)| get_f64_array(row, &format!("$.times[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            MachineEnv::Unrelated { times }
        }
        other => {
            return Err(schema_err("$.env", format!("unknown environment {other:?}")));
        }
    };

    let mode = obj
        .get("mode")
        .and_then(Value::as_str)
        .and_then(Mode::from_str)
        .ok_or_else(|| schema_err("$.mode", "expected \"NP\", \"PP\" or \"FP\""))?;

    let jobs = match obj.get("jobs") {
        Some(v) => get_f64_array(v, "$.jobs")?,
        None if matches!(env, MachineEnv::Unrelated { .. }) => Vec::new(),
        None => return Err(schema_err("$.jobs", "expected an array of processing times")),
    };

    let mut inst = Instance {
        label,
        env,
        mode,
        jobs,
    };
    inst.validate()?;
    Ok(inst)
}

// ---------------------------------------------------------------------------
// Extremal constructions

/// Lower-bound instance for non-preemptive identical machines: m jobs of size
/// m-1, (m-1)(m-2) jobs of size m, and one big job of size (m-1)^2 + r_m.
pub fn gen_rm_instance(m: usize) -> Result<Instance> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "the lower-bound construction needs m >= 3, got {m}"
        )));
    }
    let r = analysis::r_m(m)?;
    let mf = m as f64;
    let mut jobs = vec![mf - 1.0; m];
    jobs.extend(std::iter::repeat(mf).take((m - 1) * (m - 2)));
    jobs.push((mf - 1.0) * (mf - 1.0) + r);
    Ok(Instance {
        label: format!("rm-m{m}"),
        env: MachineEnv::Identical { machines: m },
        mode: Mode::NonPreemptive,
        jobs,
    })
}

/// Tight fractional instance on related machines: one fast machine of speed
/// sqrt(m)+1, the rest unit speed, a single unit job.
pub fn gen_tight_related(m: usize) -> Result<Instance> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "the tight related construction needs m >= 2, got {m}"
        )));
    }
    let mut speeds = vec![1.0; m];
    speeds[0] = (m as f64).sqrt() + 1.0;
    Ok(Instance {
        label: format!("tight-related-m{m}"),
        env: MachineEnv::Related { speeds },
        mode: Mode::Fractional,
        jobs: vec![1.0],
    })
}

/// 2x2 unrelated family whose best simultaneous ratio grows with K.
pub fn gen_sar_unrelated(k: f64) -> Result<Instance> {
    if !(k > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "the unrelated family needs K > 1, got {k}"
        )));
    }
    Ok(Instance {
        label: format!("sar-unrelated-K{k}"),
        env: MachineEnv::Unrelated {
            times: vec![vec![1.0, k], vec![k, 1.0]],
        },
        mode: Mode::NonPreemptive,
        jobs: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvKind {
    Identical,
    Related,
    Unrelated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dist {
    /// Integers drawn uniformly from [1, 20].
    UniformInt,
    /// Reals drawn uniformly from (0, 1].
    UniformReal,
    /// Exponential with rate 1.
    Exponential,
}

impl Dist {
    pub fn from_str(s: &str) -> Option<Dist> {
        match s {
            "uniform-int" => Some(Dist::UniformInt),
            "uniform-real" => Some(Dist::UniformReal),
            "exponential" => Some(Dist::Exponential),
            _ => None,
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Dist::UniformInt => rng.gen_range(1..=20) as f64,
            Dist::UniformReal => 1.0 - rng.gen::<f64>(),
            Dist::Exponential => loop {
                let u: f64 = rng.gen();
                let x = -(1.0 - u).ln();
                if x > 0.0 {
                    break x;
                }
            },
        }
    }
}

/// Deterministic random instance: the same arguments always produce the same
/// instance, byte for byte after serialization.
pub fn gen_random(
    kind: EnvKind,
    mode: Mode,
    m: usize,
    n: usize,
    seed: u64,
    dist: Dist,
) -> Result<Instance> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need m >= 1 and n >= 1, got m={m}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inst = match kind {
        EnvKind::Identical => Instance {
            label: format!("random-identical-m{m}-n{n}-s{seed}"),
            env: MachineEnv::Identical { machines: m },
            mode,
            jobs: (0..n).map(|_| dist.sample(&mut rng)).collect(),
        },
        EnvKind::Related => {
            let mut speeds: Vec<f64> = (0..m).map(|_| dist.sample(&mut rng)).collect();
            speeds.sort_by(|a, b| b.partial_cmp(a).unwrap());
            Instance {
                label: format!("random-related-m{m}-n{n}-s{seed}"),
                env: MachineEnv::Related { speeds },
                mode,
                jobs: (0..n).map(|_| dist.sample(&mut rng)).collect(),
            }
        }
        EnvKind::Unrelated => {
            let times = (0..m)
                .map(|_| (0..n).map(|_| dist.sample(&mut rng)).collect())
                .collect();
            Instance {
                label: format!("random-unrelated-m{m}-n{n}-s{seed}"),
                env: MachineEnv::Unrelated { times },
                mode,
                jobs: Vec::new(),
            }
        }
    };
    inst.validate()?;
    Ok(inst)
}
