//! Retrieval properties of orthogonal projection families: the span
//! criterion for phase retrieval, weak phase retrieval by projections,
//! hyperplane and rank-one transfers, complement-family transfer, fusion
//! norm retrieval through orthogonal basis expansion, the two-subspace
//! invertible-operator dichotomy, and subspace-count bound advisories.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{Frame, FusionFrame};
use crate::linalg::{
    orthocomplement, orthogonalize_skip, rank_rows, rational_sqrt, Matrix, Subspace, Vector,
};
use crate::retrieval::NormRetrieval;
use crate::scalar::Scalar;
use crate::search::{proj_weak_phase_falsify, ProjWeakPhaseOutcome, SearchBudget};
use crate::weak_phase::{phase_relation, PhaseRelation};
use crate::Settings;

/// A family of subspaces with their orthogonal projections cached.
#[derive(Clone, Debug)]
pub struct ProjectionFamily {
    dim: usize,
    members: Vec<Subspace>,
    projections: Vec<Matrix>,
    weights: Vec<Scalar>,
}

impl ProjectionFamily {
    pub fn new(dim: usize, members: Vec<Subspace>, weights: Option<Vec<Scalar>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Empty);
        }
        for s in &members {
            if s.ambient_dim() != dim {
                return Err(Error::DimensionMismatch(dim, s.ambient_dim()));
            }
        }
        let weights = match weights {
            Some(w) if w.len() != members.len() => {
                return Err(Error::Precondition(format!(
                    "{} weights for {} members",
                    w.len(),
                    members.len()
                )))
            }
            Some(w) => w,
            None => vec![Scalar::one(); members.len()],
        };
        let projections: Vec<Matrix> = members.iter().map(Subspace::projection_matrix).collect();
        for p in &projections {
            debug_assert!(p.is_symmetric(1e-9));
            debug_assert!(!p.is_exact() || p.mul(p) == *p);
        }
        Ok(ProjectionFamily {
            dim,
            members,
            projections,
            weights,
        })
    }

    pub fn from_fusion(ff: &FusionFrame) -> Result<Self> {
        ProjectionFamily::new(
            ff.dim(),
            ff.subspaces().to_vec(),
            Some(ff.weights().to_vec()),
        )
    }

    pub fn to_fusion(&self) -> Result<FusionFrame> {
        FusionFrame::new(self.dim, self.members.clone(), Some(self.weights.clone()))
    }

    /// Rank-one family projecting onto each frame vector's line.
    pub fn rank1_from_frame(frame: &Frame, tol: f64) -> Result<Self> {
        let members = frame
            .vectors()
            .iter()
            .map(|x| Subspace::new(frame.dim(), vec![x.clone()], tol))
            .collect::<Result<Vec<_>>>()?;
        ProjectionFamily::new(frame.dim(), members, None)
    }

    /// Hyperplane family `x_i^perp` with projections `I - x_i x_i^T / ||x_i||^2`.
    pub fn perp_from_frame(frame: &Frame, tol: f64) -> Result<Self> {
        let members = frame
            .vectors()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if x.is_zero() {
                    return Err(Error::ZeroVector(i));
                }
                orthocomplement(frame.dim(), std::slice::from_ref(x), tol)
            })
            .collect::<Result<Vec<_>>>()?;
        ProjectionFamily::new(frame.dim(), members, None)
    }

    /// The complementary family `{I - P_i}`, i.e. each member replaced by
    /// its orthocomplement.
    pub fn complements(&self, tol: f64) -> Result<ProjectionFamily> {
        let members = self
            .members
            .iter()
            .map(|s| Ok(s.orthocomplement(tol)))
            .collect::<Result<Vec<_>>>()?;
        ProjectionFamily::new(self.dim, members, Some(self.weights.clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn member_dims(&self) -> Vec<usize> {
        self.members.iter().map(Subspace::dim).collect()
    }

    pub fn projection(&self, i: usize) -> &Matrix {
        &self.projections[i]
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn is_exact(&self) -> bool {
        self.members
            .iter()
            .all(|s| s.basis().iter().all(Vector::is_exact))
    }

    pub fn project(&self, i: usize, x: &Vector) -> Result<Vector> {
        self.members[i].project(x)
    }

    /// Squared projection norms `||P_i x||^2`; squared to stay rational in
    /// exact mode.
    pub fn measurements_sq(&self, x: &Vector) -> Result<Vec<Scalar>> {
        self.members
            .iter()
            .map(|s| Ok(s.project(x)?.norm_sq()))
            .collect()
    }

    /// Magnitude equality of the projection measurements of `x` and `y`.
    pub fn measurements_equal(&self, x: &Vector, y: &Vector, tol: f64) -> Result<bool> {
        let mx = self.measurements_sq(x)?;
        let my = self.measurements_sq(y)?;
        Ok(mx.iter().zip(&my).all(|(a, b)| a.approx_eq(b, tol)))
    }

    /// The projected images `P_i x`.
    pub fn images(&self, x: &Vector) -> Result<Vec<Vector>> {
        self.members.iter().map(|s| s.project(x)).collect()
    }
}

/// A nonzero point whose projected images fail to span.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpanWitness {
    pub x: Vector,
    pub achieved_rank: usize,
    /// Independent subset of the projected images spanning their joint span.
    pub spanned: Vec<Vector>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum SpanCheck {
    /// `span{P_i x} = R^n` at this point.
    Spans,
    Deficient(SpanWitness),
}

/// Rank test of `{P_i x}` at a single point. Phase retrieval by the family
/// requires every nonzero point to pass.
pub fn span_criterion_at(family: &ProjectionFamily, x: &Vector, tol: f64) -> Result<SpanCheck> {
    if x.is_zero() {
        return Err(Error::ZeroVector(0));
    }
    let images = family.images(x)?;
    let rank = rank_rows(&images, tol);
    if rank == family.dim() {
        return Ok(SpanCheck::Spans);
    }
    // greedy independent subset as the span's basis
    let mut basis: Vec<Vector> = Vec::new();
    for img in images {
        if img.is_zero_tol(tol) {
            continue;
        }
        let mut trial = basis.clone();
        trial.push(img.clone());
        if rank_rows(&trial, tol) == trial.len() {
            basis = trial;
        }
    }
    Ok(SpanCheck::Deficient(SpanWitness {
        x: x.clone(),
        achieved_rank: rank,
        spanned: basis,
    }))
}

/// Outcome of testing one candidate pair against a projection family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjWeakPhaseCheck {
    pub norms_equal: bool,
    pub relation: Option<PhaseRelation>,
    /// Equal norms with incomparable phases refute weak phase retrieval.
    pub refutes: bool,
}

pub fn weak_phase_by_projections_check(
    family: &ProjectionFamily,
    x: &Vector,
    y: &Vector,
    settings: &Settings,
) -> Result<ProjWeakPhaseCheck> {
    let norms_equal = family.measurements_equal(x, y, settings.tol)?;
    let relation = if norms_equal {
        Some(phase_relation(x, y, settings.tol)?)
    } else {
        None
    };
    Ok(ProjWeakPhaseCheck {
        norms_equal,
        relation,
        refutes: norms_equal && relation == Some(PhaseRelation::Incomparable),
    })
}

/// Rank-one transfer: `||P_i w||^2 * ||x_i||^2 = <w, x_i>^2` for the
/// projection onto each line, so measurement-magnitude equality for the
/// frame is norm equality for the rank-one family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Rank1Equivalence {
    pub identity_verified: bool,
    pub samples_checked: usize,
}

pub fn rank1_equivalence(frame: &Frame, settings: &Settings) -> Result<Rank1Equivalence> {
    let family = ProjectionFamily::rank1_from_frame(frame, settings.tol)?;
    let n = frame.dim();
    let mut samples: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    samples.push(Vector::from_ints(&vec![1i64; n]));
    samples.extend(frame.vectors().iter().cloned());
    let mut checked = 0;
    for w in &samples {
        for (i, x_i) in frame.vectors().iter().enumerate() {
            let lhs = family.project(i, w)?.norm_sq() * x_i.norm_sq();
            let ip = w.inner(x_i)?;
            let rhs = &ip * &ip;
            if !lhs.approx_eq(&rhs, settings.tol) {
                return Ok(Rank1Equivalence {
                    identity_verified: false,
                    samples_checked: checked,
                });
            }
            checked += 1;
        }
    }
    Ok(Rank1Equivalence {
        identity_verified: true,
        samples_checked: checked,
    })
}

/// Norm retrieval for a fusion frame, decided through orthogonal basis
/// expansion: the verdict equals the vector-level decision on the
/// concatenated bases and does not depend on the basis choice.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionNormRetrieval {
    pub expanded_count: usize,
    pub report: NormRetrieval,
}

pub fn fusion_norm_retrieval(ff: &FusionFrame, settings: &Settings) -> Result<FusionNormRetrieval> {
    let expanded = ff.expand_orthogonal()?;
    let report = crate::retrieval::does_norm_retrieval(&expanded, settings)?;
    Ok(FusionNormRetrieval {
        expanded_count: expanded.len(),
        report,
    })
}

/// Transfer report for the complementary family `{I - P_i}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IpTransfer {
    /// Norm retrieval of the complementary family, via expansion.
    pub complement_norm_retrieval: bool,
    /// The transfer applies when the input family does weak phase retrieval
    /// and the complements do norm retrieval.
    pub transfer_applies: bool,
    /// Asserted verdict for the complements when the transfer applies.
    pub complements_do_wpr: Option<bool>,
    /// Budgeted falsification of the complements, run as a consistency
    /// check when the transfer asserts weak phase retrieval; `true` means
    /// the falsifier found nothing, as the transfer predicts.
    pub consistency_ok: Option<bool>,
}

pub fn ip_transfer_check(
    family: &ProjectionFamily,
    given_wpr: bool,
    budget: &SearchBudget,
    settings: &Settings,
) -> Result<IpTransfer> {
    let complements = family.complements(settings.tol)?;
    let fnr = fusion_norm_retrieval(&complements.to_fusion()?, settings)?;
    let complement_norm_retrieval = fnr.report.verdict;
    let transfer_applies = given_wpr && complement_norm_retrieval;
    let (complements_do_wpr, consistency_ok) = if transfer_applies {
        let outcome = proj_weak_phase_falsify(&complements, budget, settings)?;
        let found = matches!(outcome, ProjWeakPhaseOutcome::Witness(_));
        (Some(true), Some(!found))
    } else {
        (None, None)
    };
    Ok(IpTransfer {
        complement_norm_retrieval,
        transfer_applies,
        complements_do_wpr,
        consistency_ok,
    })
}

/// Pair of vectors with equal projected norms onto both subspaces but
/// different lengths, certifying that norm retrieval fails.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormFailWitness {
    /// 1: the residual subspaces are orthogonal; 2: they are oblique.
    pub case: u8,
    pub y1: Vector,
    pub y2: Vector,
    pub proj_norms_sq: Vec<(Scalar, Scalar)>,
    pub norms_sq: (Scalar, Scalar),
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum TwoSubspaceOutcome {
    /// Intersection is trivial: an invertible operator maps the pair onto
    /// complementary coordinate subspaces, which do norm retrieval.
    Disjoint {
        operator: Vec<Vector>,
        det: Scalar,
        norm_retrieval: bool,
    },
    /// One member is the whole space, so its projection is the identity and
    /// norm retrieval is immediate.
    TrivialMember,
    /// Nontrivial intersection of proper subspaces: no invertible operator
    /// helps, and a failure witness is produced for the given operator.
    Intersecting(NormFailWitness),
}

/// The two-subspace dichotomy. `operator` applies only to the intersecting
/// case (identity when absent).
pub fn two_subspace_operator(
    w1: &Subspace,
    w2: &Subspace,
    operator: Option<&Matrix>,
    settings: &Settings,
) -> Result<TwoSubspaceOutcome> {
    let tol = settings.tol;
    let n = w1.ambient_dim();
    if w2.ambient_dim() != n {
        return Err(Error::DimensionMismatch(n, w2.ambient_dim()));
    }
    let mut joint: Vec<Vector> = w1.basis().to_vec();
    joint.extend(w2.basis().iter().cloned());
    if rank_rows(&joint, tol) != n {
        return Err(Error::Precondition(
            "the two subspaces do not span the space".into(),
        ));
    }
    let intersection_dim = w1.dim() + w2.dim() - n;
    if intersection_dim == 0 {
        // map the joint basis onto the canonical basis
        let b = Matrix::from_rows(&joint)?.transpose();
        let t = b.inverse()?;
        let det = t.det()?;
        let map = |s: &Subspace| -> Result<Subspace> {
            let imgs: Vec<Vector> = s.basis().iter().map(|v| t.mul_vec(v)).collect();
            Subspace::new(n, imgs, tol)
        };
        let tw1 = map(w1)?;
        let tw2 = map(w2)?;
        let fnr = fusion_norm_retrieval(&FusionFrame::new(n, vec![tw1, tw2], None)?, settings)?;
        let rows: Vec<Vector> = (0..n).map(|r| t.row(r)).collect();
        return Ok(TwoSubspaceOutcome::Disjoint {
            operator: rows,
            det,
            norm_retrieval: fnr.report.verdict,
        });
    }

    if w1.dim() == n || w2.dim() == n {
        return Ok(TwoSubspaceOutcome::TrivialMember);
    }
    if n < 3 {
        return Err(Error::Precondition(
            "intersecting proper subspaces need ambient dimension >= 3".into(),
        ));
    }

    // apply the supplied operator, identity otherwise
    let (tw1, tw2) = match operator {
        None => (w1.clone(), w2.clone()),
        Some(t) => {
            if t.det()?.is_zero_tol(tol) {
                return Err(Error::Precondition("operator is not invertible".into()));
            }
            let map = |s: &Subspace| -> Result<Subspace> {
                let imgs: Vec<Vector> = s.basis().iter().map(|v| t.mul_vec(v)).collect();
                Subspace::new(n, imgs, tol)
            };
            (map(w1)?, map(w2)?)
        }
    };

    // TW3 = TW1 ∩ TW2 = (TW1^perp + TW2^perp)^perp
    let mut perps: Vec<Vector> = tw1.orthocomplement(tol).basis().to_vec();
    perps.extend(tw2.orthocomplement(tol).basis().iter().cloned());
    let tw3 = orthocomplement(n, &perps, tol)?;

    // residuals of TW3 inside each member
    let residual = |outer: &Subspace| -> Vec<Vector> {
        let reduced: Vec<Vector> = outer
            .basis()
            .iter()
            .map(|v| {
                let p = tw3.project(v).expect("dims");
                v.sub(&p)
            })
            .collect();
        orthogonalize_skip(&reduced, tol)
    };
    let w1p = residual(&tw1);
    let w2p = residual(&tw2);

    let orthogonal = w1p.iter().all(|a| {
        w2p.iter()
            .all(|b| a.inner(b).expect("dims").is_zero_tol(tol))
    });

    let witness = if orthogonal {
        case1_witness(&tw1, &tw2, &tw3, &w1p, &w2p, tol)?
    } else {
        case2_witness(&tw1, &tw2, &w1p, &w2p, tol)?
    };
    Ok(TwoSubspaceOutcome::Intersecting(witness))
}

/// Orthogonal residuals: with an equal-norm orthogonal triple
/// `x1 in W1', x2 in TW3, x3 in W2'`, the pair `x1 + 2 x2 + x3` and
/// `2 x1 + x2 + 2 x3` has equal projected norms and norm ratio 6:9.
fn case1_witness(
    tw1: &Subspace,
    tw2: &Subspace,
    tw3: &Subspace,
    w1p: &[Vector],
    w2p: &[Vector],
    tol: f64,
) -> Result<NormFailWitness> {
    let x1 = w1p
        .first()
        .ok_or_else(|| Error::Precondition("empty residual in first subspace".into()))?;
    let x2 = tw3
        .ortho_basis()
        .first()
        .ok_or_else(|| Error::Precondition("trivial intersection in the orthogonal case".into()))?;
    let x3 = w2p
        .first()
        .ok_or_else(|| Error::Precondition("empty residual in second subspace".into()))?;

    // scale to equal norms, exactly when the ratios are rational squares
    let (x1, x2, x3) = equalize_norms(x1, x2, x3);
    let two = Scalar::from_int(2);
    let y1 = x1.add(&x2.scale(&two)).add(&x3);
    let y2 = x1.scale(&two).add(&x2).add(&x3.scale(&two));
    finish_witness(1, tw1, tw2, y1, y2, tol)
}

fn equalize_norms(x1: &Vector, x2: &Vector, x3: &Vector) -> (Vector, Vector, Vector) {
    let q1 = x1.norm_sq();
    let scale_to = |x: &Vector| -> Vector {
        let q = x.norm_sq();
        if let (Some(r1), Some(r)) = (q1.rational(), q.rational()) {
            if let Some(c) = rational_sqrt(&(r1 / r)) {
                return x.scale(&Scalar::from_rational(c));
            }
        }
        let c = (q1.to_f64() / q.to_f64()).sqrt();
        x.scale(&Scalar::Float(c))
    };
    (x1.clone(), scale_to(x2), scale_to(x3))
}

/// Oblique residuals: pick `x` in the first residual with `P_2 x != 0`; a
/// vector `w = t w0` in `TW1^perp` with `t = -2 <P_2 x, w0> / ||P_2 w0||^2`
/// leaves both projected norms unchanged while `||x + w|| > ||x||`.
fn case2_witness(
    tw1: &Subspace,
    tw2: &Subspace,
    w1p: &[Vector],
    w2p: &[Vector],
    tol: f64,
) -> Result<NormFailWitness> {
    // try both orientations of the roles
    for (a, b, residual) in [(tw1, tw2, w1p), (tw2, tw1, w2p)] {
        let a_perp = a.orthocomplement(tol);
        let mut w0_candidates: Vec<Vector> = a_perp.basis().to_vec();
        for i in 0..a_perp.dim() {
            for j in (i + 1)..a_perp.dim() {
                w0_candidates.push(a_perp.basis()[i].add(&a_perp.basis()[j]));
            }
        }
        let mut x_candidates: Vec<Vector> = residual.to_vec();
        for i in 0..residual.len() {
            for j in (i + 1)..residual.len() {
                x_candidates.push(residual[i].add(&residual[j]));
            }
        }
        for x in &x_candidates {
            let p2x = b.project(x)?;
            if p2x.is_zero_tol(tol) {
                continue;
            }
            for w0 in &w0_candidates {
                let ip = p2x.inner(w0)?;
                if ip.is_zero_tol(tol) {
                    continue;
                }
                let p2w0 = b.project(w0)?;
                let denom = p2w0.norm_sq();
                if denom.is_zero_tol(tol) {
                    continue;
                }
                let t = -(Scalar::from_int(2) * &ip) / denom;
                let y2 = x.add(&w0.scale(&t));
                return finish_witness(2, a, b, x.clone(), y2, tol);
            }
        }
    }
    Err(Error::Precondition(
        "no oblique-case witness found; residuals may be degenerate".into(),
    ))
}

fn finish_witness(
    case: u8,
    p1: &Subspace,
    p2: &Subspace,
    y1: Vector,
    y2: Vector,
    tol: f64,
) -> Result<NormFailWitness> {
    let n1 = (p1.project(&y1)?.norm_sq(), p1.project(&y2)?.norm_sq());
    let n2 = (p2.project(&y1)?.norm_sq(), p2.project(&y2)?.norm_sq());
    let norms = (y1.norm_sq(), y2.norm_sq());
    let verified = n1.0.approx_eq(&n1.1, tol)
        && n2.0.approx_eq(&n2.1, tol)
        && !norms.0.approx_eq(&norms.1, tol);
    Ok(NormFailWitness {
        case,
        y1,
        y2,
        proj_norms_sq: vec![n1, n2],
        norms_sq: norms,
        verified,
    })
}

/// Count-based impossibility advisories for phase retrieval by projections.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundAdvisories {
    pub dim: usize,
    pub members: usize,
    pub all_hyperplanes: bool,
    /// dim = 2^k - 1 requires 2n-1 subspaces.
    pub subspace_count_insufficient: bool,
    /// hyperplane families require 2n-2 members.
    pub hyperplane_count_insufficient: bool,
    pub phase_retrieval_impossible: bool,
    pub reasons: Vec<String>,
}

pub fn bound_advisories(dim: usize, member_dims: &[usize]) -> BoundAdvisories {
    let members = member_dims.len();
    let all_hyperplanes = !member_dims.is_empty() && member_dims.iter().all(|&d| d + 1 == dim);
    let pow2_minus1 = dim >= 1 && (dim + 1).is_power_of_two();
    let mut reasons = Vec::new();
    let subspace_count_insufficient = pow2_minus1 && members + 1 < 2 * dim;
    if subspace_count_insufficient {
        reasons.push(format!(
            "dimension {dim} = 2^k - 1 needs at least {} subspaces, got {members}",
            2 * dim - 1
        ));
    }
    let hyperplane_count_insufficient = all_hyperplanes && members + 2 < 2 * dim;
    if hyperplane_count_insufficient {
        reasons.push(format!(
            "hyperplane families in dimension {dim} need at least {} members, got {members}",
            2 * dim - 2
        ));
    }
    BoundAdvisories {
        dim,
        members,
        all_hyperplanes,
        subspace_count_insufficient,
        hyperplane_count_insufficient,
        phase_retrieval_impossible: subspace_count_insufficient || hyperplane_count_insufficient,
        reasons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DEFAULT_TOL;

    fn v(entries: &[i64]) -> Vector {
        Vector::from_ints(entries)
    }

    fn settings() -> Settings {
        Settings::default()
    }

    fn sub(ambient: usize, basis: &[&[i64]]) -> Subspace {
        Subspace::new(
            ambient,
            basis.iter().map(|b| Vector::from_ints(b)).collect(),
            DEFAULT_TOL,
        )
        .unwrap()
    }

    /// Sign patterns over (1,1,1): the hyperplane family whose projections
    /// have a shared deficient direction.
    fn sign_hyperplane_family() -> ProjectionFamily {
        let frame =
            Frame::from_ints(3, &[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]]).unwrap();
        ProjectionFamily::perp_from_frame(&frame, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn coordinate_measurements() {
        let fam =
            ProjectionFamily::new(2, vec![sub(2, &[&[1, 0]]), sub(2, &[&[0, 1]])], None).unwrap();
        let m = fam.measurements_sq(&v(&[3, 4])).unwrap();
        assert_eq!(m, vec![Scalar::from_int(9), Scalar::from_int(16)]);
    }

    #[test]
    fn hyperplane_projection_formulas() {
        let fam = sign_hyperplane_family();
        // (1,1,1) lies on the first normal, so P_1 kills it
        let p1 = fam.project(0, &v(&[1, 1, 1])).unwrap();
        assert!(p1.is_zero());

        // closed form for the (1,1,0) normal
        let f2 = Frame::from_ints(3, &[&[1, 1, 0]]).unwrap();
        let fam2 = ProjectionFamily::perp_from_frame(&f2, DEFAULT_TOL).unwrap();
        let p = fam2.project(0, &v(&[1, 2, 3])).unwrap();
        let expect = Vector::new(vec![
            Scalar::ratio(-1, 2),
            Scalar::ratio(1, 2),
            Scalar::from_int(3),
        ])
        .unwrap();
        assert_eq!(p, expect);

        // e3 normal gives diag(1,1,0)
        let f3 = Frame::from_ints(3, &[&[0, 0, 1]]).unwrap();
        let fam3 = ProjectionFamily::perp_from_frame(&f3, DEFAULT_TOL).unwrap();
        assert_eq!(fam3.project(0, &v(&[4, 5, 6])).unwrap(), v(&[4, 5, 0]));
    }

    #[test]
    fn span_criterion_on_sign_family() {
        let fam = sign_hyperplane_family();
        // (1,1,0) has deficient image span
        match span_criterion_at(&fam, &v(&[1, 1, 0]), DEFAULT_TOL).unwrap() {
            SpanCheck::Deficient(w) => {
                assert_eq!(w.achieved_rank, 2);
                assert_eq!(w.spanned.len(), 2);
            }
            SpanCheck::Spans => panic!("expected deficiency at (1,1,0)"),
        }
        // the all-ones direction spans for the orthogonal projections
        assert!(matches!(
            span_criterion_at(&fam, &v(&[1, 1, 1]), DEFAULT_TOL).unwrap(),
            SpanCheck::Spans
        ));
        assert!(span_criterion_at(&fam, &Vector::zero(3), DEFAULT_TOL).is_err());
    }

    #[test]
    fn span_witness_for_complementary_pair() {
        let w = sub(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let wc = w.orthocomplement(DEFAULT_TOL);
        let fam = ProjectionFamily::new(3, vec![w, wc], None).unwrap();
        // a point inside the first member projects to zero on the second
        match span_criterion_at(&fam, &v(&[1, 2, 0]), DEFAULT_TOL).unwrap() {
            SpanCheck::Deficient(w) => assert_eq!(w.achieved_rank, 1),
            SpanCheck::Spans => panic!("image span cannot exceed the line"),
        }
    }

    #[test]
    fn weak_phase_check_detects_refutation() {
        let s = settings();
        let s2 = std::f64::consts::SQRT_2;
        let frame = Frame::new(
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
        let fam = ProjectionFamily::perp_from_frame(&frame, s.tol).unwrap();
        let r = weak_phase_by_projections_check(&fam, &v(&[1, 1, 3]), &v(&[1, 1, -1]), &s).unwrap();
        assert!(r.norms_equal);
        assert_eq!(r.relation, Some(PhaseRelation::Incomparable));
        assert!(r.refutes);

        // y = -x always has equal norms and opposite signs
        let r =
            weak_phase_by_projections_check(&fam, &v(&[1, 2, 3]), &v(&[-1, -2, -3]), &s).unwrap();
        assert!(r.norms_equal);
        assert_eq!(r.relation, Some(PhaseRelation::OppositeSigns));
        assert!(!r.refutes);
    }

    #[test]
    fn rank1_norm_equality_without_norm_retrieval() {
        let s = settings();
        // lines through (1,3), (1,-3): x = (1,1), y = (3, 1/3) have equal
        // projected norms but different lengths
        let frame = Frame::from_ints(2, &[&[1, 3], &[1, -3]]).unwrap();
        let fam = ProjectionFamily::rank1_from_frame(&frame, s.tol).unwrap();
        let x = v(&[1, 1]);
        let y = Vector::new(vec![Scalar::from_int(3), Scalar::ratio(1, 3)]).unwrap();
        let r = weak_phase_by_projections_check(&fam, &x, &y, &s).unwrap();
        assert!(r.norms_equal);
        assert_eq!(r.relation, Some(PhaseRelation::SameSigns));
        assert!(!r.refutes);
        assert!(x.norm_sq() != y.norm_sq());
    }

    #[test]
    fn rank1_identity_holds() {
        let s = settings();
        let frame =
            Frame::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -3]]).unwrap();
        let r = rank1_equivalence(&frame, &s).unwrap();
        assert!(r.identity_verified);
        assert!(r.samples_checked > 0);
    }

    #[test]
    fn fusion_norm_retrieval_on_six_subspaces() {
        let s = settings();
        let subs = vec![
            sub(3, &[&[1, 0, 0], &[0, 1, 0]]),
            sub(3, &[&[0, 1, 0]]),
            sub(3, &[&[0, 0, 1]]),
            sub(3, &[&[1, 1, 0]]),
            sub(3, &[&[0, 1, 1]]),
            sub(3, &[&[1, 0, 1]]),
        ];
        let ff = FusionFrame::new(3, subs, None).unwrap();
        let r = fusion_norm_retrieval(&ff, &s).unwrap();
        assert!(r.report.verdict);
        assert_eq!(r.expanded_count, 7);
    }

    #[test]
    fn oblique_two_dimensional_pair_fails_norm_retrieval() {
        let s = settings();
        let ff = FusionFrame::new(
            3,
            vec![sub(3, &[&[1, -1, 0]]), sub(3, &[&[0, 1, 0], &[0, 0, 1]])],
            None,
        )
        .unwrap();
        let r = fusion_norm_retrieval(&ff, &s).unwrap();
        assert!(!r.report.verdict);
    }

    #[test]
    fn ip_transfer_on_orthogonal_lines() {
        let s = settings();
        let frame = Frame::from_ints(2, &[&[1, 1], &[1, -1]]).unwrap();
        let fam = ProjectionFamily::rank1_from_frame(&frame, s.tol).unwrap();
        let r = ip_transfer_check(&fam, true, &SearchBudget::default(), &s).unwrap();
        assert!(r.complement_norm_retrieval);
        assert!(r.transfer_applies);
        assert_eq!(r.complements_do_wpr, Some(true));
        assert_eq!(r.consistency_ok, Some(true));
    }

    #[test]
    fn ip_transfer_hypothesis_fails_for_unequal_mirror_lines() {
        let s = settings();
        let frame = Frame::from_ints(2, &[&[1, 3], &[1, -3]]).unwrap();
        let fam = ProjectionFamily::rank1_from_frame(&frame, s.tol).unwrap();
        let r = ip_transfer_check(&fam, true, &SearchBudget::default(), &s).unwrap();
        assert!(!r.complement_norm_retrieval);
        assert!(!r.transfer_applies);
    }

    #[test]
    fn two_subspace_disjoint_case() {
        let s = settings();
        let w1 = sub(3, &[&[1, 0, 0]]);
        let w2 = sub(3, &[&[0, 1, 0], &[0, 0, 1]]);
        match two_subspace_operator(&w1, &w2, None, &s).unwrap() {
            TwoSubspaceOutcome::Disjoint {
                det, norm_retrieval, ..
            } => {
                assert!(!det.is_zero());
                assert!(norm_retrieval);
            }
            other => panic!("expected disjoint outcome, got {other:?}"),
        }
    }

    #[test]
    fn two_subspace_orthogonal_residual_case() {
        let s = settings();
        let w1 = sub(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let w2 = sub(3, &[&[0, 1, 0], &[0, 0, 1]]);
        match two_subspace_operator(&w1, &w2, None, &s).unwrap() {
            TwoSubspaceOutcome::Intersecting(w) => {
                assert_eq!(w.case, 1);
                assert!(w.verified);
                assert_eq!(w.y1, v(&[1, 2, 1]));
                assert_eq!(w.y2, v(&[2, 1, 2]));
                assert_eq!(w.norms_sq.0, Scalar::from_int(6));
                assert_eq!(w.norms_sq.1, Scalar::from_int(9));
                assert_eq!(w.proj_norms_sq[0].0, w.proj_norms_sq[0].1);
                assert_eq!(w.proj_norms_sq[1].0, w.proj_norms_sq[1].1);
            }
            other => panic!("expected intersecting outcome, got {other:?}"),
        }
    }

    #[test]
    fn two_subspace_oblique_residual_case() {
        let s = settings();
        let w1 = sub(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let w2 = sub(3, &[&[0, 1, 0], &[1, 0, 1]]);
        match two_subspace_operator(&w1, &w2, None, &s).unwrap() {
            TwoSubspaceOutcome::Intersecting(w) => {
                assert_eq!(w.case, 2);
                assert!(w.verified, "{w:?}");
                assert!(w.norms_sq.0 != w.norms_sq.1);
            }
            other => panic!("expected intersecting outcome, got {other:?}"),
        }
    }

    #[test]
    fn two_subspace_requires_spanning() {
        let s = settings();
        let w1 = sub(3, &[&[1, 0, 0]]);
        let w2 = sub(3, &[&[0, 1, 0]]);
        assert!(two_subspace_operator(&w1, &w2, None, &s).is_err());
    }

    #[test]
    fn bound_advisory_examples() {
        // 4 subspaces in R^3 (3 = 2^2 - 1 needs 5)
        let b = bound_advisories(3, &[2, 2, 2, 2]);
        assert!(b.subspace_count_insufficient);
        assert!(b.phase_retrieval_impossible);

        // 5 hyperplanes in R^4 (needs 6)
        let b = bound_advisories(4, &[3, 3, 3, 3, 3]);
        assert!(!b.subspace_count_insufficient); // 4 is not 2^k - 1
        assert!(b.hyperplane_count_insufficient);
        assert!(b.phase_retrieval_impossible);

        // 5 subspaces in R^3: no objection
        let b = bound_advisories(3, &[2, 2, 1, 2, 2]);
        assert!(!b.phase_retrieval_impossible);
    }
}
