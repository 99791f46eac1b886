//! Falsification engine: exact partition-driven weak-phase decisions where
//! complements are one-dimensional, seeded randomized sampling otherwise,
//! and optimization-based search for projection-family span deficiencies.
//!
//! All randomness is counter-based: every trial derives its generator from
//! (seed, partition, trial), so outcomes are identical for a given budget
//! and seed no matter how the sweep is scheduled.

use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::frames::Frame;
use crate::linalg::{canonicalize, orthocomplement, Subspace, Vector};
use crate::projections::{span_criterion_at, ProjectionFamily, SpanCheck, SpanWitness};
use crate::retrieval::{partition_complements, partition_count, partition_indices};
use crate::scalar::Scalar;
use crate::weak_phase::{
    nonspanning_counterexample, phase_relation, scan_line_pairs, ConstructionTag, PhaseRelation,
    WeakWitness,
};
use crate::Settings;

/// Trial budget for randomized search. Identical budget and seed give
/// identical outcomes.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SearchBudget {
    pub trials: u64,
    pub seed: u64,
    pub samples_per_partition: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            trials: 10_000,
            seed: 0,
            samples_per_partition: 64,
        }
    }
}

fn trial_rng(seed: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let mixed = seed
        ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ trial.wrapping_mul(0xD1B5_4A32_D192_ED03);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Standard normal via Box-Muller; normalized samples are uniform on the
/// sphere.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Random vector in the span of `basis`. Exact bases get dyadic rational
/// coefficients so the verification stays exact.
fn sample_in_span(basis: &[Vector], rng: &mut ChaCha8Rng, exact: bool) -> Vector {
    let n = basis[0].dim();
    let mut acc = Vector::zero(n);
    for b in basis {
        let g = gaussian(rng);
        let coeff = if exact {
            Scalar::ratio((g * 1024.0).round() as i64, 1024)
        } else {
            Scalar::Float(g)
        };
        acc = acc.add(&b.scale(&coeff));
    }
    acc
}

/// Coverage statistics for an exhausted falsification sweep.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExhaustStats {
    /// Partitions decided exactly (trivial pair structure or the
    /// one-parameter interval scan).
    pub partitions_exact: u64,
    /// Partitions that only admitted randomized sampling.
    pub partitions_sampled: u64,
    pub trials: u64,
    /// True when every partition was decided exactly: "exhausted" is then a
    /// complete decision, not a budget limit.
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum FalsifyOutcome {
    Witness(WeakWitness),
    Exhausted(ExhaustStats),
}

impl FalsifyOutcome {
    pub fn witness(&self) -> Option<&WeakWitness> {
        match self {
            FalsifyOutcome::Witness(w) => Some(w),
            FalsifyOutcome::Exhausted(_) => None,
        }
    }

    pub fn is_complete_decision(&self) -> bool {
        matches!(self, FalsifyOutcome::Exhausted(s) if s.complete)
    }
}

/// Searches for a measurement-equal pair with incomparable phases.
///
/// Every partition of the index set contributes pairs
/// `x = alpha*u + v, y = v - alpha*u` with `u, v` in the two complement
/// spaces. One-dimensional complements are decided exactly by the interval
/// scan; larger complements are sampled under the budget. Non-spanning
/// frames short-circuit to the constructive generator.
pub fn wpr_falsify(
    frame: &Frame,
    budget: &SearchBudget,
    settings: &Settings,
) -> Result<FalsifyOutcome> {
    let tol = settings.tol;
    if !frame.spans(tol) {
        return Ok(FalsifyOutcome::Witness(nonspanning_counterexample(
            frame, settings,
        )?));
    }
    let m = frame.len();
    if m > settings.exact_cap {
        return Err(Error::CapExceeded {
            m,
            cap: settings.exact_cap,
        });
    }
    let exact_frame = frame.is_exact();
    let total = partition_count(m);
    let exact_count = AtomicU64::new(0);
    let sampled_count = AtomicU64::new(0);
    let trials_run = AtomicU64::new(0);

    let witness = exec::scan_first(total, |mask| -> Option<WeakWitness> {
        let (inside, _) = partition_indices(mask, m);
        let (u_space, v_space) = partition_complements(frame, &inside, tol).ok()?;
        let (du, dv) = (u_space.dim(), v_space.dim());
        if du == 0 || dv == 0 {
            // pairs collapse to x = +-y
            exact_count.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        if du == 1 && dv == 1 {
            exact_count.fetch_add(1, Ordering::Relaxed);
            let u = canonicalize(&u_space.basis()[0]);
            let v = canonicalize(&v_space.basis()[0]);
            if let Some((alpha, x, y)) = crate::weak_phase::decide_partition_line(&u, &v, tol) {
                let tag = ConstructionTag::PartitionScan {
                    indices: inside.clone(),
                    alpha,
                };
                return WeakWitness::build(frame, x, y, tag, tol).ok();
            }
            return None;
        }
        sampled_count.fetch_add(1, Ordering::Relaxed);
        for trial in 0..budget.samples_per_partition {
            trials_run.fetch_add(1, Ordering::Relaxed);
            let mut rng = trial_rng(budget.seed, mask, trial);
            let u = sample_in_span(u_space.basis(), &mut rng, exact_frame);
            let v = sample_in_span(v_space.basis(), &mut rng, exact_frame);
            if u.is_zero_tol(tol) || v.is_zero_tol(tol) {
                continue;
            }
            let x = u.add(&v);
            let y = v.sub(&u);
            if phase_relation(&x, &y, tol).ok()? == PhaseRelation::Incomparable {
                let tag = ConstructionTag::PartitionSample {
                    indices: inside.clone(),
                    trial,
                };
                let w = WeakWitness::build(frame, x, y, tag, tol).ok()?;
                if w.verified {
                    return Some(w);
                }
            }
        }
        None
    });

    match witness {
        Some(w) => Ok(FalsifyOutcome::Witness(w)),
        None => {
            let sampled = sampled_count.load(Ordering::Relaxed);
            Ok(FalsifyOutcome::Exhausted(ExhaustStats {
                partitions_exact: exact_count.load(Ordering::Relaxed),
                partitions_sampled: sampled,
                trials: trials_run.load(Ordering::Relaxed),
                complete: sampled == 0,
            }))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ProjFalsifyOutcome {
    /// A nonzero point whose projected images do not span; `exact` marks a
    /// rational witness re-verified in exact arithmetic.
    Witness { witness: SpanWitness, exact: bool },
    Exhausted { best_sigma_min: f64, restarts: u64 },
}

/// Seeks `x != 0` with `rank{P_i x} < n`: deterministic rational probes
/// first, then random unit-sphere restarts refined by coordinatewise
/// descent on the smallest singular value of `[P_1 x .. P_m x]`.
pub fn projection_pr_falsify(
    family: &ProjectionFamily,
    budget: &SearchBudget,
    settings: &Settings,
) -> Result<ProjFalsifyOutcome> {
    let tol = settings.tol;
    let n = family.dim();
    let exact_family = family.is_exact();

    // cheap exact probes: basis vectors, pair sums/differences, all-ones
    let mut probes: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            probes.push(Vector::basis(n, i).add(&Vector::basis(n, j)));
            probes.push(Vector::basis(n, i).sub(&Vector::basis(n, j)));
        }
    }
    probes.push(Vector::from_ints(&vec![1i64; n]));
    for x in &probes {
        if let SpanCheck::Deficient(w) = span_criterion_at(family, x, tol)? {
            return Ok(ProjFalsifyOutcome::Witness {
                witness: w,
                exact: exact_family,
            });
        }
    }

    let sigma_min = |x: &[f64]| -> f64 {
        let images: Vec<Vec<f64>> = (0..family.len())
            .map(|i| {
                let xv = Vector::from_f64s(x);
                family.project(i, &xv).expect("dims").to_f64_vec()
            })
            .collect();
        let m = DMatrix::from_fn(n, family.len(), |r, c| images[c][r]);
        let svd = m.svd(false, false);
        svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min)
    };

    let restarts = (budget.trials / 200).max(1);
    let mut best = f64::INFINITY;
    for restart in 0..restarts {
        let mut rng = trial_rng(budget.seed, 0xB0B5, restart);
        let mut x: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        x.iter_mut().for_each(|a| *a /= norm);
        let mut val = sigma_min(&x);
        let mut step = 0.5f64;
        for iter in 0..200 {
            if val < 1e-8 {
                break;
            }
            let k = iter % n;
            let mut improved = false;
            for dir in [1.0, -1.0] {
                let mut cand = x.clone();
                cand[k] += dir * step;
                let norm = cand.iter().map(|a| a * a).sum::<f64>().sqrt();
                if norm < 1e-12 {
                    continue;
                }
                cand.iter_mut().for_each(|a| *a /= norm);
                let cv = sigma_min(&cand);
                if cv < val {
                    x = cand;
                    val = cv;
                    improved = true;
                    break;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        best = best.min(val);
        if val < 1e-8 {
            // try to pin the direction to small rationals and re-verify
            if exact_family {
                if let Some(w) = rationalize_and_verify(family, &x, tol) {
                    return Ok(ProjFalsifyOutcome::Witness {
                        witness: w,
                        exact: true,
                    });
                }
            }
            let xv = Vector::from_f64s(&x);
            if let SpanCheck::Deficient(w) = span_criterion_at(family, &xv, tol)? {
                return Ok(ProjFalsifyOutcome::Witness {
                    witness: w,
                    exact: false,
                });
            }
        }
    }
    Ok(ProjFalsifyOutcome::Exhausted {
        best_sigma_min: best,
        restarts,
    })
}

fn rationalize_and_verify(
    family: &ProjectionFamily,
    x: &[f64],
    tol: f64,
) -> Option<SpanWitness> {
    let scale = x.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    if scale == 0.0 {
        return None;
    }
    for denom in [1i64, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64] {
        let approx: Vec<Scalar> = x
            .iter()
            .map(|&c| Scalar::ratio((c / scale * denom as f64).round() as i64, denom))
            .collect();
        let v = Vector::new(approx).ok()?;
        if v.is_zero() {
            continue;
        }
        if let Ok(SpanCheck::Deficient(w)) = span_criterion_at(family, &v, tol) {
            return Some(SpanWitness {
                x: canonicalize(&v),
                ..w
            });
        }
    }
    None
}

/// A measurement-equal pair for a projection family with incomparable
/// phases, found through a deficient base point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjWeakWitness {
    pub x: Vector,
    pub y: Vector,
    /// The deficient point the pair was built around.
    pub base: Vector,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ProjWeakPhaseOutcome {
    Witness(ProjWeakWitness),
    Exhausted { base_points_tested: u64 },
}

/// Refutation search for weak phase retrieval by projections.
///
/// Every measurement-equal pair has the form `(b + z, b - z)` with
/// `z` orthogonal to `span{P_i b}`, so the search walks deficient base
/// points `b` and scans the one-parameter family `(b + t z, b - t z)`.
pub fn proj_weak_phase_falsify(
    family: &ProjectionFamily,
    budget: &SearchBudget,
    settings: &Settings,
) -> Result<ProjWeakPhaseOutcome> {
    let tol = settings.tol;
    let n = family.dim();
    let mut bases: Vec<Vector> = Vec::new();

    fn push_unique(v: Vector, bases: &mut Vec<Vector>, tol: f64) {
        if !bases.iter().any(|b| b.sub(&v).is_zero_tol(tol)) {
            bases.push(v);
        }
    }

    // deterministic probes plus the optimizer's find
    let mut probes: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            probes.push(Vector::basis(n, i).add(&Vector::basis(n, j)));
            probes.push(Vector::basis(n, i).sub(&Vector::basis(n, j)));
        }
    }
    probes.push(Vector::from_ints(&vec![1i64; n]));
    for p in probes {
        if let SpanCheck::Deficient(_) = span_criterion_at(family, &p, tol)? {
            push_unique(p, &mut bases, tol);
        }
    }
    if let ProjFalsifyOutcome::Witness { witness, .. } =
        projection_pr_falsify(family, budget, settings)?
    {
        push_unique(witness.x.clone(), &mut bases, tol);
    }

    let mut tested = 0u64;
    for base in &bases {
        tested += 1;
        let images = family.images(base)?;
        let z_space: Subspace = orthocomplement(n, &images, tol)?;
        if z_space.dim() == 0 {
            continue;
        }
        // one-parameter scan along each complement direction
        for z in z_space.basis() {
            for (_, x, y) in scan_line_pairs(z, base, tol) {
                if phase_relation(&x, &y, tol)? == PhaseRelation::Incomparable {
                    let verified = family.measurements_equal(&x, &y, tol)?;
                    if verified {
                        return Ok(ProjWeakPhaseOutcome::Witness(ProjWeakWitness {
                            x,
                            y,
                            base: base.clone(),
                            verified,
                        }));
                    }
                }
            }
        }
        // sampled combinations for higher-dimensional complements
        if z_space.dim() >= 2 {
            for trial in 0..budget.samples_per_partition {
                let mut rng = trial_rng(budget.seed, 0x51AB ^ tested, trial);
                let z = sample_in_span(z_space.basis(), &mut rng, family.is_exact());
                if z.is_zero_tol(tol) {
                    continue;
                }
                let x = base.add(&z);
                let y = base.sub(&z);
                if phase_relation(&x, &y, tol)? == PhaseRelation::Incomparable
                    && family.measurements_equal(&x, &y, tol)?
                {
                    return Ok(ProjWeakPhaseOutcome::Witness(ProjWeakWitness {
                        x,
                        y,
                        base: base.clone(),
                        verified: true,
                    }));
                }
            }
        }
    }
    Ok(ProjWeakPhaseOutcome::Exhausted {
        base_points_tested: tested,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum OracleOutcome {
    Consistent { trials: u64 },
    /// A partition with non-orthogonal complements found by sampling and
    /// re-verified exactly: the derived pair breaks norm equality.
    Witness(crate::retrieval::PartitionWitness),
}

/// Randomized cross-validation of the exact norm-retrieval decision:
/// random partitions, random complement vectors, flagging any pair with
/// `||x|| != ||y||`. Float screening, exact confirmation; a verdict that
/// contradicts the exact decider is impossible by construction.
pub fn norm_retrieval_sampling_oracle(
    frame: &Frame,
    budget: &SearchBudget,
    settings: &Settings,
) -> Result<OracleOutcome> {
    let tol = settings.tol;
    let m = frame.len();
    let n = frame.dim();
    if m >= 63 {
        return Err(Error::CapExceeded { m, cap: 62 });
    }
    let masks = 1u64 << m;

    let hit = exec::scan_first(budget.trials, |trial| {
        let mut rng = trial_rng(budget.seed, 0x0906, trial);
        let mask = rng.gen_range(0..masks);
        let inside: Vec<usize> = (0..m).filter(|i| (mask >> i) & 1 == 1).collect();
        let (u_space, v_space) = partition_complements(frame, &inside, tol).ok()?;
        if u_space.dim() == 0 || v_space.dim() == 0 {
            return None;
        }
        // float screening
        let fu: Vec<Vec<f64>> = u_space.basis().iter().map(Vector::to_f64_vec).collect();
        let fv: Vec<Vec<f64>> = v_space.basis().iter().map(Vector::to_f64_vec).collect();
        let mut u = vec![0.0f64; n];
        for b in &fu {
            let g = gaussian(&mut rng);
            u.iter_mut().zip(b).for_each(|(a, c)| *a += g * c);
        }
        let mut v = vec![0.0f64; n];
        for b in &fv {
            let g = gaussian(&mut rng);
            v.iter_mut().zip(b).for_each(|(a, c)| *a += g * c);
        }
        let ip: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
        let scale = 1.0f64
            .max(u.iter().map(|a| a * a).sum::<f64>())
            .max(v.iter().map(|a| a * a).sum::<f64>());
        if ip.abs() <= tol * scale {
            return None;
        }
        // confirm on the exact bases: some basis pair must have a nonzero
        // inner product for the span combination to have one
        for ub in u_space.basis() {
            for vb in v_space.basis() {
                let ipx = ub.inner(vb).expect("dims");
                if !ipx.is_zero_tol(tol) {
                    let half = Scalar::ratio(1, 2);
                    let x = ub.add(vb).scale(&half);
                    let y = vb.sub(ub).scale(&half);
                    return Some(crate::retrieval::PartitionWitness {
                        indices: inside.clone(),
                        u: ub.clone(),
                        v: vb.clone(),
                        x,
                        y,
                        inner_uv: ipx,
                    });
                }
            }
        }
        None
    });

    Ok(match hit {
        Some(w) => OracleOutcome::Witness(w),
        None => OracleOutcome::Consistent {
            trials: budget.trials,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::retrieval::measurements_equal;

    fn v(entries: &[i64]) -> Vector {
        Vector::from_ints(entries)
    }

    fn settings() -> Settings {
        Settings::default()
    }

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn falsifies_full_spark_four_vector_frame() {
        let f = Frame::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -3]]).unwrap();
        match wpr_falsify(&f, &budget(), &settings()).unwrap() {
            FalsifyOutcome::Witness(w) => {
                assert!(w.verified);
                assert!(matches!(w.construction, ConstructionTag::PartitionScan { .. }));
                assert!(measurements_equal(&f, &w.x, &w.y, 1e-9).unwrap());
            }
            FalsifyOutcome::Exhausted(_) => panic!("expected witness"),
        }
    }

    #[test]
    fn mirror_pair_survives_falsification_completely() {
        let f = Frame::from_ints(2, &[&[1, 1], &[1, -1]]).unwrap();
        match wpr_falsify(&f, &budget(), &settings()).unwrap() {
            FalsifyOutcome::Exhausted(stats) => {
                assert!(stats.complete);
                assert_eq!(stats.partitions_sampled, 0);
            }
            FalsifyOutcome::Witness(w) => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn falsifier_agrees_with_classifier_on_slope_pair() {
        let s = settings();
        let f = Frame::from_ints(2, &[&[1, 2], &[1, 3]]).unwrap();
        let out = wpr_falsify(&f, &budget(), &s).unwrap();
        assert!(out.witness().is_some());
        let c = crate::weak_phase::classify_wpr_r2(f.vector(0), f.vector(1), &s).unwrap();
        assert!(!c.does_wpr);
    }

    #[test]
    fn falsifier_redirects_nonspanning_input() {
        let f = Frame::from_ints(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        match wpr_falsify(&f, &budget(), &settings()).unwrap() {
            FalsifyOutcome::Witness(w) => {
                assert!(w.verified);
                assert!(matches!(
                    w.construction,
                    ConstructionTag::NonspanningOverlap | ConstructionTag::NonspanningDisjoint
                ));
            }
            FalsifyOutcome::Exhausted(_) => panic!("expected redirect"),
        }
    }

    #[test]
    fn falsifier_is_deterministic() {
        let f = Frame::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -3]]).unwrap();
        let a = wpr_falsify(&f, &budget(), &settings()).unwrap();
        let b = exec::with_sequential(|| wpr_falsify(&f, &budget(), &settings())).unwrap();
        match (a, b) {
            (FalsifyOutcome::Witness(wa), FalsifyOutcome::Witness(wb)) => {
                assert_eq!(wa.x, wb.x);
                assert_eq!(wa.y, wb.y);
            }
            _ => panic!("outcomes differ between parallel and sequential"),
        }
    }

    #[test]
    fn projection_falsifier_finds_coordinate_witness() {
        // two coordinate lines in R^2: e1 projects to zero on one member
        let f = Frame::from_ints(2, &[&[0, 1], &[1, 0]]).unwrap();
        let fam = ProjectionFamily::perp_from_frame(&f, 1e-9).unwrap();
        match projection_pr_falsify(&fam, &budget(), &settings()).unwrap() {
            ProjFalsifyOutcome::Witness { witness, exact } => {
                assert!(exact);
                assert_eq!(witness.achieved_rank, 1);
            }
            ProjFalsifyOutcome::Exhausted { .. } => panic!("expected witness"),
        }
    }

    #[test]
    fn projection_falsifier_on_sign_hyperplanes() {
        let f = Frame::from_ints(3, &[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]]).unwrap();
        let fam = ProjectionFamily::perp_from_frame(&f, 1e-9).unwrap();
        match projection_pr_falsify(&fam, &budget(), &settings()).unwrap() {
            ProjFalsifyOutcome::Witness { witness, exact } => {
                assert!(exact);
                assert_eq!(witness.achieved_rank, 2);
            }
            ProjFalsifyOutcome::Exhausted { .. } => panic!("expected witness"),
        }
    }

    #[test]
    fn proj_weak_phase_falsifier_finds_known_pair() {
        let s2 = std::f64::consts::SQRT_2;
        let f = Frame::new(
            3,
            vec![
                v(&[0, 0, 1]),
                v(&[1, 0, 1]),
                v(&[0, 1, 1]),
                Vector::from_f64s(&[1.0, 1.0 - s2, 2.0]),
                v(&[1, 1, 1]),
            ],
        )
        .unwrap();
        let fam = ProjectionFamily::perp_from_frame(&f, 1e-9).unwrap();
        match proj_weak_phase_falsify(&fam, &budget(), &settings()).unwrap() {
            ProjWeakPhaseOutcome::Witness(w) => {
                assert!(w.verified);
            }
            ProjWeakPhaseOutcome::Exhausted { .. } => panic!("expected witness"),
        }
    }

    #[test]
    fn oracle_finds_riesz_violation_and_respects_consistency() {
        let s = settings();
        let riesz = Frame::from_ints(
            3,
            &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1], &[0, 1, 1], &[1, 0, 1]],
        )
        .unwrap();
        match norm_retrieval_sampling_oracle(&riesz, &budget(), &s).unwrap() {
            OracleOutcome::Witness(w) => {
                assert!(!w.inner_uv.is_zero());
            }
            OracleOutcome::Consistent { .. } => panic!("expected witness"),
        }

        let onb = Frame::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(matches!(
            norm_retrieval_sampling_oracle(&onb, &budget(), &s).unwrap(),
            OracleOutcome::Consistent { .. }
        ));
    }

    #[test]
    fn oracle_finds_mirror_line_scale_class() {
        let s = settings();
        let f = Frame::from_ints(2, &[&[1, 3], &[1, -3]]).unwrap();
        match norm_retrieval_sampling_oracle(&f, &budget(), &s).unwrap() {
            OracleOutcome::Witness(w) => {
                assert!(!w.inner_uv.is_zero());
                assert!(measurements_equal(&f, &w.x, &w.y, 1e-9).unwrap());
            }
            OracleOutcome::Consistent { .. } => panic!("expected witness"),
        }
    }
}
