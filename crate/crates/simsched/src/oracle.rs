//! Independent ground truth at desk scale: exhaustive enumeration of
//! non-preemptive assignments, exact prefix envelopes and best ratios,
//! extremal-objective schedules, and randomized feasible samplers for the
//! preemptive and fractional modes.

use crate::error::{Error, Result};
use crate::instance::{Instance, MachineEnv};
use crate::loads::{self, LoadVector};
use crate::schedule::{mcnaughton, NonPreemptiveSchedule};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExactEnumeration,
    ClosedForm,
    SampledLowerConfidence,
}

/// `f[i-1]` is the infimum, over feasible schedules, of the sum of the `i`
/// largest machine loads.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefixEnvelope {
    pub f: Vec<f64>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_states: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_states: 10_000_000,
        }
    }
}

fn np_cost_matrix(inst: &Instance) -> Vec<Vec<f64>> {
    let m = inst.machines();
    let n = inst.job_count();
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| match &inst.env {
                    MachineEnv::Identical { .. } => inst.jobs[j],
                    MachineEnv::Related { speeds } => inst.jobs[j] / speeds[i],
                    MachineEnv::Unrelated { times } => times[i][j],
                })
                .collect()
        })
        .collect()
}

fn check_budget(m: usize, n: usize, budget: &EnumerationBudget) -> Result<u64> {
    let states = (m as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if states > budget.max_states as u128 {
        return Err(Error::BudgetExceeded {
            required: states,
            budget: budget.max_states,
        });
    }
    Ok(states as u64)
}

/// Visits every job-to-machine assignment exactly once, in lexicographic
/// order, handing the visitor the assignment and its machine loads.
pub fn enumerate_assignments<F>(
    inst: &Instance,
    budget: &EnumerationBudget,
    mut visitor: F,
) -> Result<u64>
where
    F: FnMut(&[usize], &[f64]),
{
    let m = inst.machines();
    let n = inst.job_count();
    let states = check_budget(m, n, budget)?;
    let cost = np_cost_matrix(inst);
    let mut assignment = vec![0usize; n];
    let mut loads = vec![0.0f64; m];

    // depth-first over jobs; loads are restored from a saved copy so float
    // values never drift
    fn rec<F: FnMut(&[usize], &[f64])>(
        job: usize,
        n: usize,
        m: usize,
        cost: &[Vec<f64>],
        assignment: &mut [usize],
        loads: &mut [f64],
        visitor: &mut F,
    ) {
        if job == n {
            visitor(assignment, loads);
            return;
        }
        for i in 0..m {
            let saved = loads[i];
            assignment[job] = i;
            loads[i] = saved + cost[i][job];
            rec(job + 1, n, m, cost, assignment, loads, visitor);
            loads[i] = saved;
        }
    }
    rec(0, n, m, &cost, &mut assignment, &mut loads, &mut visitor);
    Ok(states)
}

/// Exact prefix envelope of a non-preemptive instance by full enumeration.
pub fn brute_prefix_envelope(inst: &Instance, budget: &EnumerationBudget) -> Result<PrefixEnvelope> {
    let m = inst.machines();
    let mut f = vec![f64::INFINITY; m];
    let mut sorted = vec![0.0; m];
    enumerate_assignments(inst, budget, |_, machine_loads| {
        sorted.copy_from_slice(machine_loads);
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut acc = 0.0;
        for (i, &l) in sorted.iter().enumerate() {
            acc += l;
            if acc < f[i] {
                f[i] = acc;
            }
        }
    })?;
    Ok(PrefixEnvelope {
        f,
        provenance: Provenance::ExactEnumeration,
    })
}

/// Exact best prefix-sum ratio `s*` with a witnessing schedule
/// (lexicographically smallest among the minimizers).
pub fn brute_s_star(
    inst: &Instance,
    budget: &EnumerationBudget,
) -> Result<(f64, NonPreemptiveSchedule, PrefixEnvelope)> {
    let envelope = brute_prefix_envelope(inst, budget)?;
    let m = inst.machines();
    let mut best = f64::INFINITY;
    let mut witness = Vec::new();
    let mut sorted = vec![0.0; m];
    enumerate_assignments(inst, budget, |assignment, machine_loads| {
        sorted.copy_from_slice(machine_loads);
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut acc = 0.0;
        let mut s = 0.0f64;
        for (i, &l) in sorted.iter().enumerate() {
            acc += l;
            s = s.max(acc / envelope.f[i]);
        }
        if s < best {
            best = s;
            witness = assignment.to_vec();
        }
    })?;
    Ok((
        best,
        NonPreemptiveSchedule { assignment: witness },
        envelope,
    ))
}

/// Exact best coordinate ratio `c*`: a double loop over the distinct
/// sorted load vectors (machine symmetry collapsed).
pub fn brute_c_star(
    inst: &Instance,
    budget: &EnumerationBudget,
) -> Result<(f64, NonPreemptiveSchedule)> {
    let m = inst.machines();
    let mut distinct: Vec<(Vec<f64>, Vec<usize>)> = Vec::new();
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut sorted = vec![0.0; m];
    enumerate_assignments(inst, budget, |assignment, machine_loads| {
        sorted.copy_from_slice(machine_loads);
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let key: Vec<u64> = sorted.iter().map(|l| l.to_bits()).collect();
        if !index.contains_key(&key) {
            index.insert(key, distinct.len());
            distinct.push((sorted.clone(), assignment.to_vec()));
        }
    })?;

    let mut best = f64::INFINITY;
    let mut witness = &distinct[0].1;
    for (x, assignment) in &distinct {
        let mut c = 0.0f64;
        for (y, _) in &distinct {
            c = c.max(loads::ratio_c_sorted(x, y));
            if c >= best {
                break;
            }
        }
        if c < best {
            best = c;
            witness = assignment;
        }
    }
    Ok((
        best,
        NonPreemptiveSchedule {
            assignment: witness.clone(),
        },
    ))
}

/// Assignment minimizing the makespan, ties to the lexicographically
/// smallest assignment.
pub fn brute_makespan_min(
    inst: &Instance,
    budget: &EnumerationBudget,
) -> Result<NonPreemptiveSchedule> {
    let mut best = f64::INFINITY;
    let mut witness = Vec::new();
    enumerate_assignments(inst, budget, |assignment, machine_loads| {
        let makespan = machine_loads.iter().fold(0.0f64, |a, &b| a.max(b));
        if makespan < best {
            best = makespan;
            witness = assignment.to_vec();
        }
    })?;
    Ok(NonPreemptiveSchedule { assignment: witness })
}

/// Assignment maximizing the machine cover (minimum load), ties to the
/// lexicographically smallest assignment.
pub fn brute_cover_max(
    inst: &Instance,
    budget: &EnumerationBudget,
) -> Result<NonPreemptiveSchedule> {
    let mut best = f64::NEG_INFINITY;
    let mut witness = Vec::new();
    enumerate_assignments(inst, budget, |assignment, machine_loads| {
        let cover = machine_loads.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        if cover > best {
            best = cover;
            witness = assignment.to_vec();
        }
    })?;
    Ok(NonPreemptiveSchedule { assignment: witness })
}

/// Load vectors of randomly constructed, genuinely feasible preemptive
/// schedules on identical machines: jobs are split into groups, each group
/// gets a disjoint set of machines and is wrapped by McNaughton's rule at a
/// random feasible deadline.
pub fn sample_preemptive_loads(
    inst: &Instance,
    seed: u64,
    count: usize,
) -> Result<Vec<LoadVector>> {
    let m = match inst.env {
        MachineEnv::Identical { machines } => machines,
        _ => {
            return Err(Error::Unsupported(
                "the preemptive sampler needs identical machines".into(),
            ))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let groups = rng.gen_range(1..=m);
        let mut machine_ids: Vec<usize> = (0..m).collect();
        machine_ids.shuffle(&mut rng);
        // g-1 distinct cut points make g nonempty chunks
        let mut cuts: Vec<usize> = (1..m).collect();
        cuts.shuffle(&mut rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(groups - 1).collect();
        cuts.push(0);
        cuts.push(m);
        cuts.sort_unstable();

        let mut group_jobs: Vec<Vec<f64>> = vec![Vec::new(); groups];
        for &p in &inst.jobs {
            group_jobs[rng.gen_range(0..groups)].push(p);
        }

        let mut loads = vec![0.0; m];
        for g in 0..groups {
            let members = &machine_ids[cuts[g]..cuts[g + 1]];
            let jobs = &group_jobs[g];
            if jobs.is_empty() {
                continue;
            }
            let total: f64 = jobs.iter().sum();
            let p_max = jobs.iter().fold(0.0f64, |a, &b| a.max(b));
            let lower = p_max.max(total / members.len() as f64);
            let deadline = if rng.gen_bool(0.5) {
                lower
            } else {
                lower * (1.0 + rng.gen::<f64>())
            };
            let sched = mcnaughton(jobs, members.len(), deadline)?;
            let local = sched
                .segments
                .iter()
                .map(|segs| segs.iter().map(|s| s.end - s.start).sum::<f64>());
            for (slot, load) in members.iter().zip(local) {
                loads[*slot] = load;
            }
        }
        out.push(LoadVector::new(loads)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Numeric fractional envelope

/// Sum of the `i` largest entries of `work[k] / speeds[k]`.
fn prefix_objective(work: &[f64], speeds: &[f64], i: usize, scratch: &mut Vec<f64>) -> f64 {
    scratch.clear();
    scratch.extend(work.iter().zip(speeds).map(|(&w, &s)| w / s));
    scratch.sort_by(|a, b| b.partial_cmp(a).unwrap());
    scratch[..i].iter().sum()
}

/// Numeric search for the fractional prefix envelope `f(i)` on related
/// machines with a merged unit job: random restarts over work shares
/// followed by pairwise-transfer coordinate descent. The result is an upper
/// bound on the true infimum.
pub fn numeric_fractional_envelope(speeds: &[f64], i: usize, seed: u64) -> Result<f64> {
    let m = speeds.len();
    if i == 0 || i > m {
        return Err(Error::InvalidParameter(format!(
            "prefix index {i} out of range 1..={m}"
        )));
    }
    if speeds.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::InvalidParameter("speeds must be positive".into()));
    }

    const SAMPLES: usize = 100_000;
    const KEEP: usize = 5;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scratch = Vec::with_capacity(m);
    // best few (objective, work-share) candidates from the random phase
    let mut top: Vec<(f64, Vec<f64>)> = Vec::new();
    for _ in 0..SAMPLES {
        let mut w: Vec<f64> = (0..m)
            .map(|_| {
                let u: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
                -u.ln()
            })
            .collect();
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
        let val = prefix_objective(&w, speeds, i, &mut scratch);
        if top.len() < KEEP {
            top.push((val, w));
            top.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        } else if val < top[KEEP - 1].0 {
            top[KEEP - 1] = (val, w);
            top.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        }
    }

    let mut best = f64::INFINITY;
    for (_, start) in top {
        let refined = refine_work_shares(start, speeds, i, &mut scratch);
        if refined < best {
            best = refined;
        }
    }
    Ok(best)
}

/// Coordinate descent over work transfers; the objective is convex along any
/// transfer direction, so a ternary search per direction suffices.
///
/// Machines whose loads are tied move as one block: descent converges onto
/// equal-load plateaus, and once two machines are tied at the top (or at the
/// prefix boundary) no single-machine transfer improves — mass has to leave
/// the whole tied block at once.
fn refine_work_shares(mut w: Vec<f64>, speeds: &[f64], i: usize, scratch: &mut Vec<f64>) -> f64 {
    let mut current = prefix_objective(&w, speeds, i, scratch);
    for _sweep in 0..400 {
        let mut improved = false;

        // group machines by equal load, descending
        let mut order: Vec<usize> = (0..w.len()).collect();
        order.sort_by(|&a, &b| {
            (w[b] / speeds[b]).partial_cmp(&(w[a] / speeds[a])).unwrap()
        });
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &k in &order {
            let load = w[k] / speeds[k];
            match groups.last_mut() {
                Some(g) if {
                    let head = w[g[0]] / speeds[g[0]];
                    (head - load).abs() <= 1e-9 * head.max(1e-30)
                } =>
                {
                    g.push(k)
                }
                _ => groups.push(vec![k]),
            }
        }

        for ai in 0..groups.len() {
            for bi in 0..groups.len() {
                if ai == bi {
                    continue;
                }
                let donors = groups[ai].clone();
                let recips = groups[bi].clone();
                let load_a = w[donors[0]] / speeds[donors[0]];
                if load_a <= 0.0 {
                    continue;
                }
                let s_a: f64 = donors.iter().map(|&k| speeds[k]).sum();
                let s_b: f64 = recips.iter().map(|&k| speeds[k]).sum();
                // drop every donor load by d, raise every recipient load by
                // d * s_a / s_b; total work is conserved
                let apply = |d: f64, w: &mut Vec<f64>| {
                    let rise = d * s_a / s_b;
                    for &k in &donors {
                        w[k] -= d * speeds[k];
                    }
                    for &k in &recips {
                        w[k] += rise * speeds[k];
                    }
                };
                let eval = |d: f64, w: &mut Vec<f64>, scratch: &mut Vec<f64>| {
                    apply(d, w);
                    let v = prefix_objective(w, speeds, i, scratch);
                    apply(-d, w);
                    v
                };
                let (mut lo, mut hi) = (0.0f64, load_a);
                for _ in 0..90 {
                    let d1 = lo + (hi - lo) / 3.0;
                    let d2 = hi - (hi - lo) / 3.0;
                    if eval(d1, &mut w, scratch) <= eval(d2, &mut w, scratch) {
                        hi = d2;
                    } else {
                        lo = d1;
                    }
                }
                let mid = 0.5 * (lo + hi);
                let (d, candidate) = if eval(load_a, &mut w, scratch) <= eval(mid, &mut w, scratch)
                {
                    (load_a, eval(load_a, &mut w, scratch))
                } else {
                    (mid, eval(mid, &mut w, scratch))
                };
                if candidate < current - 1e-15 {
                    apply(d, &mut w);
                    for x in w.iter_mut() {
                        *x = x.max(0.0);
                    }
                    current = candidate;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
        // keep float drift from accumulating across sweeps
        let total: f64 = w.iter().sum();
        for x in w.iter_mut() {
            *x /= total;
        }
        current = prefix_objective(&w, speeds, i, scratch);
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_sar_unrelated, Instance, MachineEnv, Mode};

    fn identical(m: usize, jobs: &[f64]) -> Instance {
        Instance {
            label: String::new(),
            env: MachineEnv::Identical { machines: m },
            mode: Mode::NonPreemptive,
            jobs: jobs.to_vec(),
        }
    }

    #[test]
    fn enumeration_counts() {
        let budget = EnumerationBudget::default();
        let inst = identical(2, &[1.0, 1.0, 1.0]);
        assert_eq!(enumerate_assignments(&inst, &budget, |_, _| {}).unwrap(), 8);

        let inst = identical(3, &[1.0; 6]);
        assert_eq!(
            enumerate_assignments(&inst, &budget, |_, _| {}).unwrap(),
            729
        );

        let inst = identical(4, &[1.0; 20]);
        match enumerate_assignments(&inst, &budget, |_, _| {}) {
            Err(Error::BudgetExceeded { required, .. }) => {
                assert_eq!(required, 4u128.pow(20));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let inst = identical(2, &[1.0, 2.0]);
        let mut seen = Vec::new();
        enumerate_assignments(&inst, &EnumerationBudget::default(), |a, _| {
            seen.push(a.to_vec());
        })
        .unwrap();
        assert_eq!(
            seen,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn envelope_examples() {
        let budget = EnumerationBudget::default();
        let env = brute_prefix_envelope(&identical(2, &[3.0, 2.0, 2.0]), &budget).unwrap();
        assert_eq!(env.f, vec![4.0, 7.0]);
        assert_eq!(env.provenance, Provenance::ExactEnumeration);

        let env = brute_prefix_envelope(&identical(2, &[5.0, 4.0, 3.0, 3.0, 3.0]), &budget)
            .unwrap();
        assert_eq!(env.f, vec![9.0, 18.0]);

        let env = brute_prefix_envelope(&identical(1, &[2.0, 5.0]), &budget).unwrap();
        assert_eq!(env.f, vec![7.0]);
    }

    #[test]
    fn s_star_examples() {
        let budget = EnumerationBudget::default();
        let (s, witness, _) = brute_s_star(&identical(2, &[3.0, 2.0, 2.0]), &budget).unwrap();
        assert_eq!(s, 1.0);
        let loads = witness
            .load_vector(&identical(2, &[3.0, 2.0, 2.0]))
            .unwrap()
            .sorted_desc();
        assert_eq!(loads.prefix_sums(), vec![4.0, 7.0]);
    }

    #[test]
    fn c_star_examples() {
        let budget = EnumerationBudget::default();
        // 3 unit jobs on 3 machines: only the all-on-one-machine vector works
        let (c, witness) = brute_c_star(&identical(3, &[1.0, 1.0, 1.0]), &budget).unwrap();
        assert_eq!(c, 3.0);
        assert_eq!(witness.assignment, vec![0, 0, 0]);

        let inst = gen_sar_unrelated(10.0).unwrap();
        let (c, _) = brute_c_star(&inst, &budget).unwrap();
        assert_eq!(c, 11.0);

        let inst = gen_sar_unrelated(2.0).unwrap();
        let (c, _) = brute_c_star(&inst, &budget).unwrap();
        assert_eq!(c, 3.0);
    }

    #[test]
    fn extremal_schedules() {
        let budget = EnumerationBudget::default();
        let inst = identical(2, &[3.0, 2.0, 2.0]);
        let mk = brute_makespan_min(&inst, &budget).unwrap();
        let loads = mk.load_vector(&inst).unwrap();
        assert_eq!(loads.sorted_desc().loads()[0], 4.0);

        let cv = brute_cover_max(&inst, &budget).unwrap();
        let loads = cv.load_vector(&inst).unwrap();
        let min = loads.loads().iter().fold(f64::INFINITY, |a, &b| a.min(b));
        assert_eq!(min, 3.0);

        // n < m: some machine is always empty
        let inst = identical(3, &[1.0, 1.0]);
        let cv = brute_cover_max(&inst, &budget).unwrap();
        let loads = cv.load_vector(&inst).unwrap();
        assert_eq!(loads.loads().iter().fold(f64::INFINITY, |a, &b| a.min(b)), 0.0);
    }

    #[test]
    fn sampler_respects_prefix_lower_bound() {
        let inst = Instance {
            mode: Mode::Preemptive,
            ..identical(3, &[5.0, 4.0, 3.0, 2.0, 2.0])
        };
        let samples = sample_preemptive_loads(&inst, 42, 200).unwrap();
        assert_eq!(samples.len(), 200);
        let sorted_jobs = crate::loads::sorted_desc(&inst.jobs);
        let job_prefix = crate::loads::prefix_sums(&sorted_jobs);
        for lv in &samples {
            let prefix = lv.sorted_desc().prefix_sums();
            for k in 0..inst.machines() {
                let bound = if k < job_prefix.len() {
                    job_prefix[k]
                } else {
                    *job_prefix.last().unwrap()
                };
                assert!(
                    prefix[k] >= bound - 1e-9,
                    "prefix {k} of {prefix:?} below job bound {bound}"
                );
            }
        }
    }

    #[test]
    fn sampler_count_zero_is_empty() {
        let inst = identical(2, &[1.0]);
        assert!(sample_preemptive_loads(&inst, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn numeric_envelope_examples() {
        let f1 = numeric_fractional_envelope(&[3.0, 1.0], 1, 1).unwrap();
        assert!((f1 - 0.25).abs() < 1e-6, "f(1) = {f1}");

        let f2 = numeric_fractional_envelope(&[3.0, 1.0], 2, 1).unwrap();
        assert!((f2 - 1.0 / 3.0).abs() < 1e-6, "f(2) = {f2}");

        let f1 = numeric_fractional_envelope(&[1.0, 1.0], 1, 7).unwrap();
        assert!((f1 - 0.5).abs() < 1e-6, "f(1) = {f1}");
    }
}
