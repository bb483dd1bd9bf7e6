//! Schedule representations and the constructive algorithms: list scheduling
//! and LPT, McNaughton's wrap-around rule and its recursive variant, the
//! fractional constructions on related machines, the min-work assignment for
//! unrelated machines, and the discretization of a fractional instance.

use crate::analysis::SpeedProfile;
use crate::error::{Error, Result};
use crate::instance::{Instance, MachineEnv, Mode};
use crate::loads::LoadVector;
use serde::{Deserialize, Serialize};

/// Job-to-machine assignment, machine indices 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPreemptiveSchedule {
    pub assignment: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub job: usize,
    pub start: f64,
    pub end: f64,
}

/// Per machine, an ordered list of processing segments. Schedules produced
/// here are left-compacted: no idle time before the last segment.
#[derive(Debug, Clone, PartialEq)]
pub struct PreemptiveSchedule {
    pub segments: Vec<Vec<Segment>>,
}

/// Split fractions `split[machine][job]`; every column sums to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSchedule {
    pub split: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Schedule {
    NonPreemptive(NonPreemptiveSchedule),
    Preemptive(PreemptiveSchedule),
    Fractional(FractionalSchedule),
}

// ---------------------------------------------------------------------------
// Load vectors

/// Processing time of job `j` on machine `i` for non-preemptive placement.
fn np_cost(inst: &Instance, machine: usize, job: usize) -> f64 {
    match &inst.env {
        MachineEnv::Identical { .. } => inst.jobs[job],
        MachineEnv::Related { speeds } => inst.jobs[job] / speeds[machine],
        MachineEnv::Unrelated { times } => times[machine][job],
    }
}

impl NonPreemptiveSchedule {
    pub fn load_vector(&self, inst: &Instance) -> Result<LoadVector> {
        let m = inst.machines();
        let n = inst.job_count();
        if self.assignment.len() != n {
            return Err(Error::LengthMismatch {
                left: self.assignment.len(),
                right: n,
            });
        }
        let mut loads = vec![0.0; m];
        for (j, &i) in self.assignment.iter().enumerate() {
            if i >= m {
                return Err(Error::InvalidParameter(format!(
                    "job {j} assigned to machine {i}, but only {m} machines exist"
                )));
            }
            loads[i] += np_cost(inst, i, j);
        }
        LoadVector::new(loads)
    }
}

impl PreemptiveSchedule {
    pub fn load_vector(&self, inst: &Instance) -> Result<LoadVector> {
        if self.segments.len() != inst.machines() {
            return Err(Error::LengthMismatch {
                left: self.segments.len(),
                right: inst.machines(),
            });
        }
        let loads = self
            .segments
            .iter()
            .map(|segs| segs.iter().map(|s| s.end - s.start).sum())
            .collect();
        LoadVector::new(loads)
    }

    /// Checks that no two segments of the same job overlap in time and that
    /// per-machine segments do not overlap either.
    pub fn check_no_overlap(&self, n_jobs: usize) -> Result<()> {
        let mut per_job: Vec<Vec<(f64, f64)>> = vec![Vec::new(); n_jobs];
        for (machine, segs) in self.segments.iter().enumerate() {
            let mut cursor = f64::NEG_INFINITY;
            for s in segs {
                if s.start < cursor - 1e-9 {
                    return Err(Error::InvalidParameter(format!(
                        "machine {machine} has overlapping segments"
                    )));
                }
                cursor = s.end;
                per_job[s.job].push((s.start, s.end));
            }
        }
        for (job, mut spans) in per_job.into_iter().enumerate() {
            spans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for w in spans.windows(2) {
                if w[1].0 < w[0].1 - 1e-9 {
                    return Err(Error::InvalidParameter(format!(
                        "job {job} processed on two machines at once"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl FractionalSchedule {
    pub fn load_vector(&self, inst: &Instance) -> Result<LoadVector> {
        let m = inst.machines();
        let n = inst.job_count();
        if self.split.len() != m || self.split.iter().any(|row| row.len() != n) {
            return Err(Error::LengthMismatch {
                left: self.split.len(),
                right: m,
            });
        }
        for j in 0..n {
            let col: f64 = self.split.iter().map(|row| row[j]).sum();
            if (col - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "split column {j} sums to {col}, expected 1"
                )));
            }
        }
        let mut loads = vec![0.0; m];
        for (i, row) in self.split.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                loads[i] += x * np_cost(inst, i, j);
            }
        }
        LoadVector::new(loads)
    }
}

pub fn load_vector(sched: &Schedule, inst: &Instance) -> Result<LoadVector> {
    match sched {
        Schedule::NonPreemptive(s) => s.load_vector(inst),
        Schedule::Preemptive(s) => s.load_vector(inst),
        Schedule::Fractional(s) => s.load_vector(inst),
    }
}

// ---------------------------------------------------------------------------
// List scheduling

/// Greedy list scheduling: each job in the given order goes to the machine
/// finishing it earliest (current load plus its processing time there), ties
/// to the lowest machine index. Identical and related environments only.
pub fn list_schedule(inst: &Instance, order: &[usize]) -> Result<NonPreemptiveSchedule> {
    let m = inst.machines();
    let n = inst.job_count();
    if matches!(inst.env, MachineEnv::Unrelated { .. }) {
        return Err(Error::Unsupported(
            "list scheduling is defined for identical and related machines only".into(),
        ));
    }
    let mut seen = vec![false; n];
    for &j in order {
        if j >= n || seen[j] {
            return Err(Error::InvalidParameter(format!(
                "order must be a permutation of 0..{n}"
            )));
        }
        seen[j] = true;
    }
    if order.len() != n {
        return Err(Error::InvalidParameter(format!(
            "order must be a permutation of 0..{n}"
        )));
    }

    let mut loads = vec![0.0; m];
    let mut assignment = vec![0usize; n];
    for &j in order {
        let mut best = 0;
        let mut best_finish = loads[0] + np_cost(inst, 0, j);
        for i in 1..m {
            let finish = loads[i] + np_cost(inst, i, j);
            if finish < best_finish {
                best = i;
                best_finish = finish;
            }
        }
        assignment[j] = best;
        loads[best] = best_finish;
    }
    Ok(NonPreemptiveSchedule { assignment })
}

/// Longest-processing-time order: jobs sorted non-increasing, ties by
/// original index.
pub fn lpt_order(jobs: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by(|&a, &b| jobs[b].partial_cmp(&jobs[a]).unwrap());
    order
}

pub fn lpt(inst: &Instance) -> Result<NonPreemptiveSchedule> {
    list_schedule(inst, &lpt_order(&inst.jobs))
}

// ---------------------------------------------------------------------------
// Preemptive constructions

fn mcnaughton_into(
    jobs: &[(usize, f64)],
    machine_ids: &[usize],
    deadline: f64,
    segments: &mut [Vec<Segment>],
) -> Result<()> {
    let total: f64 = jobs.iter().map(|&(_, p)| p).sum();
    let p_max = jobs.iter().map(|&(_, p)| p).fold(0.0, f64::max);
    let m = machine_ids.len();
    let lower = p_max.max(total / m as f64);
    let fuzz = 1e-9 * lower.max(1.0);
    if deadline < lower - fuzz {
        return Err(Error::InvalidParameter(format!(
            "deadline {deadline} is below the feasibility bound {lower}"
        )));
    }

    let mut machine = 0usize;
    let mut cursor = 0.0f64;
    for &(job, p) in jobs {
        let mut remaining = p;
        while remaining > 0.0 {
            let avail = deadline - cursor;
            // allow a sliver of overshoot so float residue never spills onto
            // a machine that does not exist
            if remaining <= avail + fuzz || machine + 1 == m {
                segments[machine_ids[machine]].push(Segment {
                    job,
                    start: cursor,
                    end: cursor + remaining,
                });
                cursor += remaining;
                remaining = 0.0;
            } else {
                if avail > 0.0 {
                    segments[machine_ids[machine]].push(Segment {
                        job,
                        start: cursor,
                        end: deadline,
                    });
                    remaining -= avail;
                }
                machine += 1;
                cursor = 0.0;
            }
        }
    }
    Ok(())
}

/// McNaughton's wrap-around rule: fill machines consecutively up to the
/// deadline; a job cut at the deadline continues on the next machine at time
/// zero. Feasible whenever `deadline >= max(max p_j, sum p_j / m)`.
pub fn mcnaughton(jobs: &[f64], m: usize, deadline: f64) -> Result<PreemptiveSchedule> {
    if m == 0 {
        return Err(Error::InvalidParameter("need at least one machine".into()));
    }
    let with_ids: Vec<(usize, f64)> = jobs.iter().copied().enumerate().collect();
    let machine_ids: Vec<usize> = (0..m).collect();
    let mut segments = vec![Vec::new(); m];
    mcnaughton_into(&with_ids, &machine_ids, deadline, &mut segments)?;
    Ok(PreemptiveSchedule { segments })
}

/// Recursive McNaughton: while the longest remaining job exceeds the average
/// remaining load, it gets a machine of its own (lowest remaining index);
/// the rest is wrapped evenly across the remaining machines.
///
/// The sorted loads then satisfy `L_i = p_(i)` for the peeled prefix and are
/// all equal to the remaining average past it.
pub fn mcr(inst: &Instance) -> Result<PreemptiveSchedule> {
    let m = match inst.env {
        MachineEnv::Identical { machines } => machines,
        _ => {
            return Err(Error::Unsupported(
                "the recursive McNaughton construction needs identical machines".into(),
            ))
        }
    };
    let order = lpt_order(&inst.jobs);
    let mut segments = vec![Vec::new(); m];
    let mut sum: f64 = inst.total_work();
    let mut machines_left = m;
    let mut k = 0;
    while k < order.len() {
        let job = order[k];
        let p = inst.jobs[job];
        if p <= sum / machines_left as f64 {
            let rest: Vec<(usize, f64)> =
                order[k..].iter().map(|&j| (j, inst.jobs[j])).collect();
            let machine_ids: Vec<usize> = (m - machines_left..m).collect();
            let deadline = sum / machines_left as f64;
            mcnaughton_into(&rest, &machine_ids, deadline, &mut segments)?;
            break;
        }
        segments[m - machines_left].push(Segment {
            job,
            start: 0.0,
            end: p,
        });
        sum -= p;
        machines_left -= 1;
        k += 1;
    }
    Ok(PreemptiveSchedule { segments })
}

// ---------------------------------------------------------------------------
// Fractional constructions

/// Every job split evenly over all machines; all loads equal.
pub fn uniform_fractional(inst: &Instance) -> Result<FractionalSchedule> {
    let m = match inst.env {
        MachineEnv::Identical { machines } => machines,
        _ => {
            return Err(Error::Unsupported(
                "the uniform split needs identical machines".into(),
            ))
        }
    };
    let n = inst.job_count();
    Ok(FractionalSchedule {
        split: vec![vec![1.0 / m as f64; n]; m],
    })
}

/// The optimal regular split of a merged unit job on related machines: the
/// first `t` machines carry equal loads, machine `t+1` carries the
/// fractional remainder, the rest stay idle.
pub fn optimal_regular_fractional(speeds: &[f64]) -> Result<FractionalSchedule> {
    let profile = SpeedProfile::new(speeds.to_vec())?;
    let m = speeds.len();
    let t = profile.t();
    let denom = profile.leading_capacity();
    let lead = 1.0 / denom;
    let mut loads = vec![0.0; m];
    for load in loads.iter_mut().take(t) {
        *load = lead;
    }
    if t < m {
        loads[t] = profile.delta() * lead;
    }
    let split = loads
        .iter()
        .zip(speeds)
        .map(|(&load, &s)| vec![load * s])
        .collect();
    Ok(FractionalSchedule { split })
}

/// Rebuilds a target fractional load vector into a regular schedule whose
/// loads coordinate-dominate the sorted target: machine `i` takes the work
/// the `i`-th largest target load represents, until the unit job is used up.
pub fn regularize_fractional(speeds: &[f64], target: &LoadVector) -> Result<FractionalSchedule> {
    let profile = SpeedProfile::new(speeds.to_vec())?;
    let speeds = profile.speeds();
    let m = speeds.len();
    if target.len() != m {
        return Err(Error::LengthMismatch {
            left: target.len(),
            right: m,
        });
    }
    let sorted = target.sorted_desc();
    let capacity: f64 = speeds.iter().zip(sorted.loads()).map(|(&s, &l)| s * l).sum();
    if capacity < 1.0 - 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "target loads carry only {capacity} of the unit job under speed-ordered pairing"
        )));
    }
    let mut work = vec![0.0; m];
    let mut assigned = 0.0;
    for i in 0..m {
        let w = speeds[i] * sorted.loads()[i];
        if assigned + w >= 1.0 {
            work[i] = 1.0 - assigned;
            assigned = 1.0;
            break;
        }
        work[i] = w;
        assigned += w;
    }
    if assigned < 1.0 {
        // capacity passed the tolerance check but summed just below 1
        work[m - 1] += 1.0 - assigned;
    }
    Ok(FractionalSchedule {
        split: work.into_iter().map(|w| vec![w]).collect(),
    })
}

// ---------------------------------------------------------------------------
// Unrelated machines

/// Each job goes to a machine where its processing time is minimal, ties to
/// the lowest machine index. Total load equals the sum of column minima.
pub fn min_work_assignment(inst: &Instance) -> Result<NonPreemptiveSchedule> {
    let times = match &inst.env {
        MachineEnv::Unrelated { times } => times,
        _ => {
            return Err(Error::Unsupported(
                "the min-work assignment is defined for unrelated machines".into(),
            ))
        }
    };
    let n = inst.job_count();
    let assignment = (0..n)
        .map(|j| {
            let mut best = 0;
            for i in 1..times.len() {
                if times[i][j] < times[best][j] {
                    best = i;
                }
            }
            best
        })
        .collect();
    Ok(NonPreemptiveSchedule { assignment })
}

// ---------------------------------------------------------------------------
// Discretization

/// Splits the merged unit job into `ceil(1/epsilon)` equal non-preemptive
/// pieces, each of size at most `epsilon`, on the given related machines.
pub fn discretize(speeds: &[f64], epsilon: f64) -> Result<Instance> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let profile = SpeedProfile::new(speeds.to_vec())?;
    let count = (1.0 / epsilon).ceil() as usize;
    let mut inst = Instance {
        label: format!("discretized-eps{epsilon}"),
        env: MachineEnv::Related {
            speeds: profile.speeds().to_vec(),
        },
        mode: Mode::NonPreemptive,
        jobs: vec![1.0 / count as f64; count],
    };
    inst.validate()?;
    Ok(inst)
}

// ---------------------------------------------------------------------------
// Schedule JSON (machine and job indices 1-based on the wire)

#[derive(Serialize, Deserialize)]
struct SegmentWire {
    job: usize,
    start: f64,
    end: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScheduleWire {
    NonPreemptive { assignment: Vec<usize> },
    Preemptive { segments: Vec<Vec<SegmentWire>> },
    Fractional { split: Vec<Vec<f64>> },
}

pub fn serialize_schedule(sched: &Schedule) -> String {
    let wire = match sched {
        Schedule::NonPreemptive(s) => ScheduleWire::NonPreemptive {
            assignment: s.assignment.iter().map(|&i| i + 1).collect(),
        },
        Schedule::Preemptive(s) => ScheduleWire::Preemptive {
            segments: s
                .segments
                .iter()
                .map(|machine| {
                    machine
                        .iter()
                        .map(|seg| SegmentWire {
                            job: seg.job + 1,
                            start: seg.start,
                            end: seg.end,
                        })
                        .collect()
                })
                .collect(),
        },
        Schedule::Fractional(s) => ScheduleWire::Fractional {
            split: s.split.clone(),
        },
    };
    crate::json::to_string(&wire)
}

pub fn parse_schedule(text: &str) -> Result<Schedule> {
    let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Schema {
        path: "$".into(),
        message: format!("not valid JSON: {e}"),
    })?;
    let obj = doc.as_object().ok_or_else(|| Error::Schema {
        path: "$".into(),
        message: "expected a JSON object".into(),
    })?;
    if obj.contains_key("assignment") {
        let raw: Vec<usize> =
            serde_json::from_value(obj["assignment"].clone()).map_err(|e| Error::Schema {
                path: "$.assignment".into(),
                message: e.to_string(),
            })?;
        if raw.iter().any(|&i| i == 0) {
            return Err(Error::Schema {
                path: "$.assignment".into(),
                message: "machine indices are 1-based".into(),
            });
        }
        Ok(Schedule::NonPreemptive(NonPreemptiveSchedule {
            assignment: raw.into_iter().map(|i| i - 1).collect(),
        }))
    } else if obj.contains_key("segments") {
        let raw: Vec<Vec<SegmentWire>> =
            serde_json::from_value(obj["segments"].clone()).map_err(|e| Error::Schema {
                path: "$.segments".into(),
                message: e.to_string(),
            })?;
        let segments = raw
            .into_iter()
            .map(|machine| {
                machine
                    .into_iter()
                    .map(|seg| {
                        if seg.job == 0 {
                            return Err(Error::Schema {
                                path: "$.segments".into(),
                                message: "job indices are 1-based".into(),
                            });
                        }
                        Ok(Segment {
                            job: seg.job - 1,
                            start: seg.start,
                            end: seg.end,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Schedule::Preemptive(PreemptiveSchedule { segments }))
    } else if obj.contains_key("split") {
        let split: Vec<Vec<f64>> =
            serde_json::from_value(obj["split"].clone()).map_err(|e| Error::Schema {
                path: "$.split".into(),
                message: e.to_string(),
            })?;
        Ok(Schedule::Fractional(FractionalSchedule { split }))
    } else {
        Err(Error::Schema {
            path: "$".into(),
            message: "expected one of assignment / segments / split".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_rm_instance, gen_sar_unrelated};

    fn identical(m: usize, jobs: &[f64], mode: Mode) -> Instance {
        Instance {
            label: String::new(),
            env: MachineEnv::Identical { machines: m },
            mode,
            jobs: jobs.to_vec(),
        }
    }

    #[test]
    fn np_load_vector_examples() {
        let inst = identical(2, &[3.0, 2.0, 2.0], Mode::NonPreemptive);
        let sched = NonPreemptiveSchedule {
            assignment: vec![0, 1, 1],
        };
        assert_eq!(sched.load_vector(&inst).unwrap().loads(), &[3.0, 4.0]);

        let inst = gen_sar_unrelated(5.0).unwrap();
        let inst = Instance {
            env: MachineEnv::Unrelated {
                times: vec![vec![1.0, 5.0], vec![4.0, 2.0]],
            },
            ..inst
        };
        let sched = NonPreemptiveSchedule {
            assignment: vec![0, 1],
        };
        assert_eq!(sched.load_vector(&inst).unwrap().loads(), &[1.0, 2.0]);
    }

    #[test]
    fn fp_load_vector_example() {
        let inst = Instance {
            label: String::new(),
            env: MachineEnv::Related {
                speeds: vec![3.0, 1.0],
            },
            mode: Mode::Fractional,
            jobs: vec![1.0],
        };
        let sched = FractionalSchedule {
            split: vec![vec![0.9], vec![0.1]],
        };
        let loads = sched.load_vector(&inst).unwrap();
        assert!((loads.loads()[0] - 0.3).abs() < 1e-15);
        assert!((loads.loads()[1] - 0.1).abs() < 1e-15);

        let bad = FractionalSchedule {
            split: vec![vec![0.9], vec![0.2]],
        };
        assert!(bad.load_vector(&inst).is_err());
    }

    #[test]
    fn list_schedule_examples() {
        let inst = identical(2, &[5.0, 4.0, 3.0, 3.0, 3.0], Mode::NonPreemptive);
        let order: Vec<usize> = (0..5).collect();
        let sched = list_schedule(&inst, &order).unwrap();
        let mut loads = sched.load_vector(&inst).unwrap().loads().to_vec();
        loads.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(loads, vec![8.0, 10.0]);

        // m >= n: each job alone
        let inst = identical(4, &[2.0, 1.0], Mode::NonPreemptive);
        let sched = list_schedule(&inst, &[0, 1]).unwrap();
        assert_eq!(sched.assignment, vec![0, 1]);

        // single machine
        let inst = identical(1, &[2.0, 1.0, 4.0], Mode::NonPreemptive);
        let sched = list_schedule(&inst, &[0, 1, 2]).unwrap();
        assert_eq!(sched.assignment, vec![0, 0, 0]);
    }

    #[test]
    fn list_schedule_rejects_unrelated() {
        let inst = gen_sar_unrelated(2.0).unwrap();
        assert!(list_schedule(&inst, &[0, 1]).is_err());
    }

    #[test]
    fn lpt_example() {
        let inst = identical(2, &[5.0, 4.0, 3.0, 3.0, 3.0], Mode::NonPreemptive);
        let sched = lpt(&inst).unwrap();
        let mut loads = sched.load_vector(&inst).unwrap().loads().to_vec();
        loads.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(loads, vec![8.0, 10.0]);
    }

    #[test]
    fn lpt_on_rm_instance_is_feasible() {
        let inst = gen_rm_instance(3).unwrap();
        let sched = lpt(&inst).unwrap();
        let loads = sched.load_vector(&inst).unwrap();
        assert!((loads.total() - inst.total_work()).abs() < 1e-9);
    }

    #[test]
    fn mcnaughton_examples() {
        let sched = mcnaughton(&[5.0, 3.0, 2.0, 2.0], 2, 6.0).unwrap();
        let inst = identical(2, &[5.0, 3.0, 2.0, 2.0], Mode::Preemptive);
        assert_eq!(sched.load_vector(&inst).unwrap().loads(), &[6.0, 6.0]);
        sched.check_no_overlap(4).unwrap();
        // the job of 3 is split across the deadline
        assert_eq!(sched.segments[0].last().unwrap().job, 1);
        assert_eq!(sched.segments[1][0].job, 1);
        assert_eq!(sched.segments[1][0].start, 0.0);
        assert_eq!(sched.segments[1][0].end, 2.0);

        let sched = mcnaughton(&[4.0], 1, 4.0).unwrap();
        assert_eq!(sched.segments[0].len(), 1);

        let sched = mcnaughton(&[4.0, 4.0], 2, 4.0).unwrap();
        sched.check_no_overlap(2).unwrap();
        assert_eq!(sched.segments[0].len(), 1);
        assert_eq!(sched.segments[1].len(), 1);
    }

    #[test]
    fn mcnaughton_rejects_infeasible_deadline() {
        assert!(mcnaughton(&[5.0, 3.0], 2, 3.0).is_err());
        assert!(mcnaughton(&[2.0, 2.0, 2.0], 2, 2.5).is_err());
    }

    #[test]
    fn mcr_examples() {
        let inst = identical(3, &[9.0, 5.0, 4.0, 4.0, 2.0], Mode::Preemptive);
        let sched = mcr(&inst).unwrap();
        let loads = sched.load_vector(&inst).unwrap().sorted_desc();
        assert_eq!(loads.loads(), &[9.0, 7.5, 7.5]);
        sched.check_no_overlap(5).unwrap();

        let inst = identical(2, &[6.0, 2.0, 2.0, 2.0], Mode::Preemptive);
        let sched = mcr(&inst).unwrap();
        assert_eq!(
            sched.load_vector(&inst).unwrap().sorted_desc().loads(),
            &[6.0, 6.0]
        );

        let inst = identical(3, &[4.0, 4.0, 4.0], Mode::Preemptive);
        let sched = mcr(&inst).unwrap();
        assert_eq!(sched.load_vector(&inst).unwrap().loads(), &[4.0, 4.0, 4.0]);
    }

    #[test]
    fn mcr_with_fewer_jobs_than_machines() {
        let inst = identical(3, &[9.0, 1.0], Mode::Preemptive);
        let sched = mcr(&inst).unwrap();
        let loads = sched.load_vector(&inst).unwrap().sorted_desc();
        assert_eq!(loads.loads(), &[9.0, 1.0, 0.0]);
    }

    #[test]
    fn uniform_fractional_balances_everything() {
        let inst = identical(2, &[3.0, 1.0], Mode::Fractional);
        let sched = uniform_fractional(&inst).unwrap();
        assert_eq!(sched.load_vector(&inst).unwrap().loads(), &[2.0, 2.0]);

        let inst = identical(4, &[1.0], Mode::Fractional);
        let sched = uniform_fractional(&inst).unwrap();
        assert_eq!(
            sched.load_vector(&inst).unwrap().loads(),
            &[0.25, 0.25, 0.25, 0.25]
        );
    }

    #[test]
    fn optimal_regular_fractional_examples() {
        let inst = Instance {
            label: String::new(),
            env: MachineEnv::Related {
                speeds: vec![3.0, 1.0],
            },
            mode: Mode::Fractional,
            jobs: vec![1.0],
        };
        let sched = optimal_regular_fractional(&[3.0, 1.0]).unwrap();
        let loads = sched.load_vector(&inst).unwrap();
        assert!((loads.loads()[0] - 0.3).abs() < 1e-12);
        assert!((loads.loads()[1] - 0.1).abs() < 1e-12);

        let sched = optimal_regular_fractional(&[3.0, 1.0, 1.0, 1.0]).unwrap();
        let works: Vec<f64> = sched.split.iter().map(|row| row[0]).collect();
        let loads: Vec<f64> = works
            .iter()
            .zip(&[3.0, 1.0, 1.0, 1.0])
            .map(|(&w, &s)| w / s)
            .collect();
        assert!((loads[0] - 0.25).abs() < 1e-12);
        assert!((loads[1] - 0.25).abs() < 1e-12);
        assert_eq!(&loads[2..], &[0.0, 0.0]);

        let sched = optimal_regular_fractional(&[1.0; 5]).unwrap();
        let works: Vec<f64> = sched.split.iter().map(|row| row[0]).collect();
        assert!(works.iter().all(|&w| (w - 0.2).abs() < 1e-12));
    }

    #[test]
    fn regularize_fractional_examples() {
        let target = LoadVector::new(vec![0.2, 0.6]).unwrap();
        let sched = regularize_fractional(&[2.0, 1.0], &target).unwrap();
        let works: Vec<f64> = sched.split.iter().map(|row| row[0]).collect();
        assert_eq!(works, vec![1.0, 0.0]);
        // loads (0.5, 0): regular, coordinate-dominated by sorted target (0.6, 0.2)

        let target = LoadVector::new(vec![0.5, 0.5]).unwrap();
        let sched = regularize_fractional(&[1.0, 1.0], &target).unwrap();
        let works: Vec<f64> = sched.split.iter().map(|row| row[0]).collect();
        assert_eq!(works, vec![0.5, 0.5]);

        let thin = LoadVector::new(vec![0.1, 0.1]).unwrap();
        assert!(regularize_fractional(&[2.0, 1.0], &thin).is_err());
    }

    #[test]
    fn min_work_assignment_examples() {
        let inst = Instance {
            label: String::new(),
            env: MachineEnv::Unrelated {
                times: vec![vec![1.0, 5.0], vec![4.0, 2.0]],
            },
            mode: Mode::NonPreemptive,
            jobs: Vec::new(),
        };
        let sched = min_work_assignment(&inst).unwrap();
        assert_eq!(sched.assignment, vec![0, 1]);
        assert_eq!(sched.load_vector(&inst).unwrap().loads(), &[1.0, 2.0]);

        let inst = Instance {
            label: String::new(),
            env: MachineEnv::Unrelated {
                times: vec![vec![2.0, 3.0], vec![2.0, 3.0]],
            },
            mode: Mode::NonPreemptive,
            jobs: Vec::new(),
        };
        let sched = min_work_assignment(&inst).unwrap();
        assert_eq!(sched.assignment, vec![0, 0]);
    }

    #[test]
    fn discretize_examples() {
        let inst = discretize(&[3.0, 1.0], 0.25).unwrap();
        assert_eq!(inst.jobs, vec![0.25; 4]);

        let inst = discretize(&[3.0, 1.0], 0.3).unwrap();
        assert_eq!(inst.jobs, vec![0.25; 4]);

        let inst = discretize(&[3.0, 1.0], 1.0).unwrap();
        assert_eq!(inst.jobs, vec![1.0]);

        assert!(discretize(&[3.0, 1.0], 0.0).is_err());
    }

    #[test]
    fn schedule_json_round_trips() {
        let np = Schedule::NonPreemptive(NonPreemptiveSchedule {
            assignment: vec![0, 1, 1],
        });
        let back = parse_schedule(&serialize_schedule(&np)).unwrap();
        assert_eq!(np, back);

        let pp = Schedule::Preemptive(mcnaughton(&[5.0, 3.0, 2.0, 2.0], 2, 6.0).unwrap());
        let back = parse_schedule(&serialize_schedule(&pp)).unwrap();
        assert_eq!(pp, back);

        let fp = Schedule::Fractional(FractionalSchedule {
            split: vec![vec![0.9], vec![0.1]],
        });
        let back = parse_schedule(&serialize_schedule(&fp)).unwrap();
        assert_eq!(fp, back);
    }
}
