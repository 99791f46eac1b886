//! Exact decision procedures for phase retrieval and norm retrieval by
//! vector frames, driven by partitions of the index set, plus the
//! measurement-equal pair constructor.
//!
//! Partitions are enumerated canonically as bitmasks over the first m-1
//! indices (the last vector is pinned to the complement side, which covers
//! each unordered partition exactly once). Sweeps report the first failing
//! partition in this order regardless of internal parallelism.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::frames::Frame;
use crate::linalg::{orthocomplement, rank_rows, Subspace, Vector};
use crate::scalar::Scalar;
use crate::Settings;

/// Index sets of a partition under the canonical bitmask scheme.
pub(crate) fn partition_indices(mask: u64, m: usize) -> (Vec<usize>, Vec<usize>) {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for i in 0..m {
        if i < m - 1 && (mask >> i) & 1 == 1 {
            inside.push(i);
        } else {
            outside.push(i);
        }
    }
    (inside, outside)
}

pub(crate) fn partition_count(m: usize) -> u64 {
    1u64 << (m - 1)
}

fn subset<'a>(frame: &'a Frame, idx: &[usize]) -> Vec<Vector> {
    idx.iter().map(|&i| frame.vector(i).clone()).collect()
}

/// A partition together with vectors orthogonal to each side's span and the
/// derived measurement-equal pair `x = (u+v)/2`, `y = (v-u)/2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionWitness {
    /// 0-based indices of the partition side `I`.
    pub indices: Vec<usize>,
    pub u: Vector,
    pub v: Vector,
    pub x: Vector,
    pub y: Vector,
    /// `<u, v>`, which equals `||x||^2 - ||y||^2`.
    pub inner_uv: Scalar,
}

impl PartitionWitness {
    fn from_generators(indices: Vec<usize>, u: Vector, v: Vector) -> Self {
        let half = Scalar::ratio(1, 2);
        let x = u.add(&v).scale(&half);
        let y = v.sub(&u).scale(&half);
        let inner_uv = u.inner(&v).expect("same dim");
        PartitionWitness {
            indices,
            u,
            v,
            x,
            y,
            inner_uv,
        }
    }
}

/// Outcome of the complement-property sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplementProperty {
    pub holds: bool,
    /// First partition (canonical order) where neither side spans.
    pub failing_partition: Option<Vec<usize>>,
    pub partitions_checked: u64,
}

/// For every `I`, `span{x_i : i in I} = R^n` or the complement side spans.
pub fn has_complement_property(frame: &Frame, settings: &Settings) -> Result<ComplementProperty> {
    let m = frame.len();
    let n = frame.dim();
    if m > settings.exact_cap {
        return Err(Error::CapExceeded {
            m,
            cap: settings.exact_cap,
        });
    }
    let tol = settings.tol;
    let total = partition_count(m);
    let failing = exec::scan_first(total, |mask| {
        let (inside, outside) = partition_indices(mask, m);
        let span_in = rank_rows(&subset(frame, &inside), tol) == n;
        if span_in {
            return None;
        }
        let span_out = rank_rows(&subset(frame, &outside), tol) == n;
        if span_out {
            None
        } else {
            Some(inside)
        }
    });
    Ok(ComplementProperty {
        holds: failing.is_none(),
        failing_partition: failing,
        partitions_checked: total,
    })
}

/// Phase-retrieval verdict with its certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseRetrieval {
    pub verdict: bool,
    pub certificate: String,
    pub failing_partition: Option<Vec<usize>>,
    /// Measurement-equal pair with `x != +-y` derived from the failing
    /// partition, when one exists.
    pub witness: Option<PartitionWitness>,
    /// Full-spark cross-check, populated when m = 2n-1; must agree with the
    /// verdict there.
    pub full_spark_crosscheck: Option<bool>,
}

/// Phase retrieval is decided by the complement property; at m = 2n-1 the
/// verdict is cross-checked against full spark (the two are equivalent
/// there).
pub fn does_phase_retrieval(frame: &Frame, settings: &Settings) -> Result<PhaseRetrieval> {
    let cp = has_complement_property(frame, settings)?;
    let witness = match &cp.failing_partition {
        None => None,
        Some(inside) => {
            let outside: Vec<usize> = (0..frame.len()).filter(|i| !inside.contains(i)).collect();
            let u_space = orthocomplement(frame.dim(), &subset(frame, inside), settings.tol)?;
            let v_space = orthocomplement(frame.dim(), &subset(frame, &outside), settings.tol)?;
            // both complements are nontrivial because neither side spans
            let u = u_space.basis()[0].clone();
            let v = v_space.basis()[0].clone();
            Some(PartitionWitness::from_generators(inside.clone(), u, v))
        }
    };
    let full_spark_crosscheck = if frame.len() == 2 * frame.dim() - 1 {
        Some(frame.is_full_spark(settings.exact_cap, settings.tol)?)
    } else {
        None
    };
    let certificate = if cp.holds {
        format!(
            "complement property verified over all {} partitions",
            cp.partitions_checked
        )
    } else {
        format!(
            "complement property fails at partition {:?} (0-based): neither side spans",
            cp.failing_partition.as_ref().unwrap()
        )
    };
    Ok(PhaseRetrieval {
        verdict: cp.holds,
        certificate,
        failing_partition: cp.failing_partition,
        witness,
        full_spark_crosscheck,
    })
}

/// Norm-retrieval verdict; on failure carries the partition witness with
/// `<u,v> != 0` and the derived pair of different norms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormRetrieval {
    pub verdict: bool,
    pub witness: Option<PartitionWitness>,
    pub partitions_checked: u64,
}

/// Norm retrieval holds iff for every partition the two complement spaces
/// `span_I^perp` and `span_{I^c}^perp` are orthogonal. A failing basis pair
/// `(u, v)` yields the pair `x = (u+v)/2`, `y = (v-u)/2` with equal
/// measurement magnitudes and `||x||^2 - ||y||^2 = <u,v> != 0`.
pub fn does_norm_retrieval(frame: &Frame, settings: &Settings) -> Result<NormRetrieval> {
    let m = frame.len();
    let n = frame.dim();
    if m > settings.exact_cap {
        return Err(Error::CapExceeded {
            m,
            cap: settings.exact_cap,
        });
    }
    let tol = settings.tol;
    let total = partition_count(m);
    let witness = exec::scan_first(total, |mask| {
        let (inside, outside) = partition_indices(mask, m);
        let u_space = orthocomplement(n, &subset(frame, &inside), tol).ok()?;
        if u_space.dim() == 0 {
            return None;
        }
        let v_space = orthocomplement(n, &subset(frame, &outside), tol).ok()?;
        if v_space.dim() == 0 {
            return None;
        }
        for u in u_space.basis() {
            for v in v_space.basis() {
                let ip = u.inner(v).expect("same dim");
                if !ip.is_zero_tol(tol) {
                    return Some(PartitionWitness::from_generators(
                        inside.clone(),
                        u.clone(),
                        v.clone(),
                    ));
                }
            }
        }
        None
    });
    Ok(NormRetrieval {
        verdict: witness.is_none(),
        witness,
        partitions_checked: total,
    })
}

/// For a basis (n independent vectors spanning R^n), norm retrieval forces
/// orthogonality; the two predicates are equal on bases.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrthogonalityNecessity {
    pub is_orthogonal: bool,
    pub does_norm_retrieval: bool,
    /// The implication "norm retrieval => orthogonal" observed on this input.
    pub implication_holds: bool,
}

pub fn orthogonality_necessity(frame: &Frame, settings: &Settings) -> Result<OrthogonalityNecessity> {
    let n = frame.dim();
    if frame.len() != n || frame.rank(settings.tol) != n {
        return Err(Error::Precondition(format!(
            "expected a basis of R^{n} ({} vectors of rank {})",
            frame.len(),
            frame.rank(settings.tol)
        )));
    }
    let is_orthogonal = frame.is_orthogonal_set(settings.tol);
    let nr = does_norm_retrieval(frame, settings)?;
    Ok(OrthogonalityNecessity {
        is_orthogonal,
        does_norm_retrieval: nr.verdict,
        implication_holds: !nr.verdict || is_orthogonal,
    })
}

/// Builds the measurement-equal pair `x = (u+v)/2`, `y = (v-u)/2` after
/// validating that `u` is orthogonal to the `I`-side vectors and `v` to the
/// complement side. The pair satisfies `|<x,x_i>| = |<y,x_i>|` for all `i`,
/// with `<x,x_i> = <y,x_i>` on `I` and `<x,x_i> = -<y,x_i>` off it.
pub fn measurement_pair(
    frame: &Frame,
    indices: &[usize],
    u: &Vector,
    v: &Vector,
    settings: &Settings,
) -> Result<(Vector, Vector)> {
    let tol = settings.tol;
    for &i in indices {
        if i >= frame.len() {
            return Err(Error::Precondition(format!("index {i} out of range")));
        }
        let ip = u.inner(frame.vector(i))?;
        if !ip.is_zero_tol(tol) {
            return Err(Error::Precondition(format!(
                "u is not orthogonal to frame vector {i}"
            )));
        }
    }
    for i in 0..frame.len() {
        if indices.contains(&i) {
            continue;
        }
        let ip = v.inner(frame.vector(i))?;
        if !ip.is_zero_tol(tol) {
            return Err(Error::Precondition(format!(
                "v is not orthogonal to frame vector {i}"
            )));
        }
    }
    let half = Scalar::ratio(1, 2);
    let x = u.add(v).scale(&half);
    let y = v.sub(u).scale(&half);
    Ok((x, y))
}

/// Magnitude equality of the frame measurements of `x` and `y`
/// (exact on rationals, tolerance-scaled otherwise).
pub fn measurements_equal(frame: &Frame, x: &Vector, y: &Vector, tol: f64) -> Result<bool> {
    for phi in frame.vectors() {
        let a = x.inner(phi)?.abs();
        let b = y.inner(phi)?.abs();
        if !a.approx_eq(&b, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complement spaces of a specific partition (`span_I^perp`, `span_{I^c}^perp`).
pub fn partition_complements(
    frame: &Frame,
    indices: &[usize],
    tol: f64,
) -> Result<(Subspace, Subspace)> {
    let outside: Vec<usize> = (0..frame.len()).filter(|i| !indices.contains(i)).collect();
    let u_space = orthocomplement(frame.dim(), &subset(frame, indices), tol)?;
    let v_space = orthocomplement(frame.dim(), &subset(frame, &outside), tol)?;
    Ok((u_space, v_space))
}
