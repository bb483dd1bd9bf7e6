//! Load vectors and the two dominance orders on them.
//!
//! Everything downstream (ratios, envelopes, bound checks) is built from the
//! primitives here: descending sort, prefix sums, coordinate dominance and
//! prefix-sum dominance, and the induced approximation ratios of a vector
//! against a competitor or against a prefix envelope.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Comparison slack for dominance and ratio checks.
///
/// `a` counts as "at most" `b` when `a <= b + abs_eps + rel_eps * max(|a|,|b|)`.
/// Property tests on integer inputs use [`Tolerance::EXACT`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-12,
            rel_eps: 1e-9,
        }
    }
}

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance {
        abs_eps: 0.0,
        rel_eps: 0.0,
    };

    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self> {
        if !abs_eps.is_finite() || !rel_eps.is_finite() || abs_eps < 0.0 || rel_eps < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be finite and nonnegative, got abs={abs_eps} rel={rel_eps}"
            )));
        }
        Ok(Tolerance { abs_eps, rel_eps })
    }

    /// `a <= b` up to this tolerance.
    pub fn leq(&self, a: f64, b: f64) -> bool {
        a <= b + self.abs_eps + self.rel_eps * a.abs().max(b.abs())
    }
}

/// Per-machine completion loads. Nonnegative, at least one machine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadVector {
    loads: Vec<f64>,
}

impl LoadVector {
    pub fn new(loads: Vec<f64>) -> Result<Self> {
        if loads.is_empty() {
            return Err(Error::InvalidLoadVector("must have at least one machine".into()));
        }
        for (i, &v) in loads.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidLoadVector(format!(
                    "entry {i} is {v}, expected a finite nonnegative real"
                )));
            }
        }
        Ok(LoadVector { loads })
    }

    pub fn len(&self) -> usize {
        self.loads.len()
    }

    pub fn is_empty(&self) -> bool {
        // construction rejects empty vectors
        false
    }

    pub fn loads(&self) -> &[f64] {
        &self.loads
    }

    pub fn total(&self) -> f64 {
        self.loads.iter().sum()
    }

    /// Entries re-sorted in non-increasing order.
    pub fn sorted_desc(&self) -> LoadVector {
        LoadVector {
            loads: sorted_desc(&self.loads),
        }
    }

    /// `out[i] = loads[0] + ... + loads[i]`.
    pub fn prefix_sums(&self) -> Vec<f64> {
        prefix_sums(&self.loads)
    }

    pub fn concat(&self, other: &LoadVector) -> LoadVector {
        LoadVector {
            loads: concat(&self.loads, &other.loads),
        }
    }
}

pub fn sorted_desc(values: &[f64]) -> Vec<f64> {
    let mut out = values.to_vec();
    out.sort_by(|a, b| b.partial_cmp(a).unwrap());
    out
}

pub fn prefix_sums(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    for &v in values {
        acc += v;
        out.push(acc);
    }
    out
}

pub fn concat(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    out.extend_from_slice(x);
    out.extend_from_slice(y);
    out
}

fn check_len(x: &LoadVector, y: &LoadVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// Coordinate dominance of the sorted vectors: every coordinate of
/// `sorted_desc(x)` is at most the corresponding coordinate of
/// `sorted_desc(y)` up to `tol`.
pub fn coord_dominates(x: &LoadVector, y: &LoadVector, tol: &Tolerance) -> Result<bool> {
    check_len(x, y)?;
    let xs = sorted_desc(x.loads());
    let ys = sorted_desc(y.loads());
    Ok(xs.iter().zip(&ys).all(|(&a, &b)| tol.leq(a, b)))
}

/// Prefix-sum dominance: every prefix sum of `sorted_desc(x)` is at most the
/// corresponding prefix sum of `sorted_desc(y)` up to `tol`.
pub fn prefix_dominates(x: &LoadVector, y: &LoadVector, tol: &Tolerance) -> Result<bool> {
    check_len(x, y)?;
    let sx = prefix_sums(&sorted_desc(x.loads()));
    let sy = prefix_sums(&sorted_desc(y.loads()));
    Ok(sx.iter().zip(&sy).all(|(&a, &b)| tol.leq(a, b)))
}

/// Coordinate ratio with the zero conventions `ratio(0,0) = 0` and
/// `ratio(p,0) = +inf` for `p > 0`.
pub fn ratio(p: f64, q: f64) -> f64 {
    if q == 0.0 {
        if p == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        p / q
    }
}

/// Least `alpha` with `sorted_desc(x) <= alpha * sorted_desc(y)` coordinatewise.
pub fn ratio_c_pair(x: &LoadVector, y: &LoadVector) -> Result<f64> {
    check_len(x, y)?;
    let xs = sorted_desc(x.loads());
    let ys = sorted_desc(y.loads());
    Ok(ratio_c_sorted(&xs, &ys))
}

/// As [`ratio_c_pair`] but on already descending-sorted slices.
pub fn ratio_c_sorted(xs: &[f64], ys: &[f64]) -> f64 {
    xs.iter()
        .zip(ys)
        .map(|(&a, &b)| ratio(a, b))
        .fold(0.0, f64::max)
}

/// Least `alpha` with `x` prefix-dominated by `alpha * y`.
pub fn ratio_s_pair(x: &LoadVector, y: &LoadVector) -> Result<f64> {
    check_len(x, y)?;
    let sx = prefix_sums(&sorted_desc(x.loads()));
    let sy = prefix_sums(&sorted_desc(y.loads()));
    Ok(ratio_c_sorted(&sx, &sy))
}

/// Ratio value together with the binding prefix index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    /// Least feasible `alpha`; `+inf` when some competitor coordinate is zero
    /// where ours is not.
    pub value: f64,
    /// 1-based prefix index achieving the maximum; ties go to the smallest.
    pub witness_index: usize,
    pub witness_vector: Option<LoadVector>,
}

/// `s(x)` against a prefix envelope: `max_i prefix_i(sorted x) / f(i)`.
pub fn ratio_s_envelope(x: &LoadVector, envelope: &[f64]) -> Result<RatioReport> {
    if envelope.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: envelope.len(),
        });
    }
    if let Some(&bad) = envelope.iter().find(|&&f| !(f > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "prefix envelope entries must be strictly positive, got {bad}"
        )));
    }
    let sx = prefix_sums(&sorted_desc(x.loads()));
    let mut best = f64::NEG_INFINITY;
    let mut witness = 1;
    for (i, (&p, &f)) in sx.iter().zip(envelope).enumerate() {
        let r = p / f;
        if r > best {
            best = r;
            witness = i + 1;
        }
    }
    Ok(RatioReport {
        value: best,
        witness_index: witness,
        witness_vector: None,
    })
}
