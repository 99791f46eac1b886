//! Frames and fusion frames: the frame operator and bounds, spark and full
//! spark by subset enumeration, and Riesz/tight/Parseval predicates.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{rank_rows, Matrix, Subspace, Vector};
use crate::scalar::Scalar;

/// Ordered list of m nonzero vectors in `R^n`.
#[derive(Clone, Debug)]
pub struct Frame {
    dim: usize,
    vectors: Vec<Vector>,
    label: Option<String>,
}

impl Frame {
    /// Rejects zero vectors; they carry no measurement information and make
    /// spark degenerate. Use [`Frame::new_allow_zero`] to override.
    pub fn new(dim: usize, vectors: Vec<Vector>) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::ZeroVector(i));
            }
        }
        Frame::new_allow_zero(dim, vectors)
    }

    pub fn new_allow_zero(dim: usize, vectors: Vec<Vector>) -> Result<Self> {
        if dim == 0 || vectors.is_empty() {
            return Err(Error::Empty);
        }
        for v in &vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(dim, v.dim()));
            }
        }
        Ok(Frame {
            dim,
            vectors,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn from_ints(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        Frame::new(dim, rows.iter().map(|r| Vector::from_ints(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &Vector {
        &self.vectors[i]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.vectors.iter().all(Vector::is_exact)
    }

    pub fn rank(&self, tol: f64) -> usize {
        rank_rows(&self.vectors, tol)
    }

    pub fn spans(&self, tol: f64) -> bool {
        self.rank(tol) == self.dim
    }

    /// `S = sum x_i x_i^T`, symmetric positive semidefinite.
    pub fn frame_operator(&self) -> Matrix {
        let n = self.dim;
        let mut s = Matrix::zeros(n, n);
        for x in &self.vectors {
            for r in 0..n {
                for c in 0..n {
                    let add = x.entry(r) * x.entry(c);
                    let v = s.get(r, c) + &add;
                    s.set(r, c, v);
                }
            }
        }
        s
    }

    /// Optimal frame bounds: extreme eigenvalues of the frame operator
    /// (float only; no decision procedure depends on them).
    pub fn frame_bounds(&self, tol: f64) -> FrameBounds {
        FrameBounds::from_operator(&self.frame_operator().to_dmatrix(), tol)
    }

    /// Size of the smallest linearly dependent subfamily, `m + 1` when all
    /// of the frame is independent. Exact on rational inputs.
    pub fn spark(&self, cap: usize, tol: f64) -> Result<usize> {
        let m = self.len();
        if m > cap {
            return Err(Error::CapExceeded { m, cap });
        }
        let max_size = m.min(self.dim + 1);
        for k in 1..=max_size {
            let total = binomial(m, k);
            let dependent = exec::scan_first(total, |idx| {
                let subset = unrank_combination(idx, m, k);
                let rows: Vec<Vector> =
                    subset.iter().map(|&i| self.vectors[i].clone()).collect();
                if rank_rows(&rows, tol) < k {
                    Some(())
                } else {
                    None
                }
            });
            if dependent.is_some() {
                return Ok(k);
            }
        }
        if m <= self.dim {
            Ok(m + 1)
        } else {
            // every (n+1)-subset of R^n is dependent
            Ok(self.dim + 1)
        }
    }

    /// Full spark: every n-element subset spans, i.e. spark = n + 1.
    pub fn is_full_spark(&self, cap: usize, tol: f64) -> Result<bool> {
        let m = self.len();
        let n = self.dim;
        if m < n {
            return Ok(false);
        }
        if m > cap {
            return Err(Error::CapExceeded { m, cap });
        }
        let total = binomial(m, n);
        let deficient = exec::scan_first(total, |idx| {
            let subset = unrank_combination(idx, m, n);
            let rows: Vec<Vector> = subset.iter().map(|&i| self.vectors[i].clone()).collect();
            if rank_rows(&rows, tol) < n {
                Some(())
            } else {
                None
            }
        });
        Ok(deficient.is_none())
    }

    pub fn is_orthogonal_set(&self, tol: f64) -> bool {
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let ip = self.vectors[i].inner(&self.vectors[j]).expect("same dim");
                if !ip.is_zero_tol(tol) {
                    return false;
                }
            }
        }
        true
    }

    /// Gram matrix `G_{ij} = <x_i, x_j>`.
    pub fn gram(&self) -> Matrix {
        let m = self.len();
        let mut g = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                g.set(i, j, self.vectors[i].inner(&self.vectors[j]).expect("dim"));
            }
        }
        g
    }
}

/// Lower/upper frame bounds.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    fn from_operator(op: &DMatrix<f64>, _tol: f64) -> FrameBounds {
        let eig = op.clone().symmetric_eigen();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &e in eig.eigenvalues.iter() {
            lo = lo.min(e);
            hi = hi.max(e);
        }
        // clamp tiny negative eigenvalues of a PSD operator
        FrameBounds {
            lower: lo.max(0.0),
            upper: hi.max(0.0),
        }
    }

    pub fn is_frame(&self, tol: f64) -> bool {
        self.lower > tol
    }

    pub fn is_tight(&self, tol: f64) -> bool {
        self.is_frame(tol) && (self.upper - self.lower).abs() <= tol.max(1e-12) * self.upper
    }

    pub fn is_parseval(&self, tol: f64) -> bool {
        let t = tol.max(1e-9);
        self.is_tight(tol) && (self.lower - 1.0).abs() <= t && (self.upper - 1.0).abs() <= t
    }
}

/// Linear independence plus the Gram spectrum as Riesz bounds.
pub fn is_riesz_sequence(vectors: &[Vector], tol: f64) -> Result<(bool, FrameBounds)> {
    if vectors.is_empty() {
        return Err(Error::Empty);
    }
    let independent = rank_rows(vectors, tol) == vectors.len();
    let m = vectors.len();
    let gram = DMatrix::from_fn(m, m, |i, j| {
        vectors[i].inner(&vectors[j]).expect("dim").to_f64()
    });
    Ok((independent, FrameBounds::from_operator(&gram, tol)))
}

/// Weighted list of subspaces.
#[derive(Clone, Debug)]
pub struct FusionFrame {
    dim: usize,
    subspaces: Vec<Subspace>,
    weights: Vec<Scalar>,
}

impl FusionFrame {
    pub fn new(dim: usize, subspaces: Vec<Subspace>, weights: Option<Vec<Scalar>>) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::Empty);
        }
        for s in &subspaces {
            if s.ambient_dim() != dim {
                return Err(Error::DimensionMismatch(dim, s.ambient_dim()));
            }
        }
        let weights = match weights {
            Some(w) => {
                if w.len() != subspaces.len() {
                    return Err(Error::Precondition(format!(
                        "{} weights for {} subspaces",
                        w.len(),
                        subspaces.len()
                    )));
                }
                for s in &w {
                    if s.sign() <= 0 {
                        return Err(Error::Precondition("weights must be positive".into()));
                    }
                }
                w
            }
            None => vec![Scalar::one(); subspaces.len()],
        };
        Ok(FusionFrame {
            dim,
            subspaces,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    /// `S = sum v_i^2 P_i`.
    pub fn fusion_operator(&self) -> Matrix {
        let mut s = Matrix::zeros(self.dim, self.dim);
        for (w, sub) in self.weights.iter().zip(&self.subspaces) {
            let p = sub.projection_matrix();
            s = s.add(&p.scale(&(w * w)));
        }
        s
    }

    pub fn bounds(&self, tol: f64) -> FrameBounds {
        FrameBounds::from_operator(&self.fusion_operator().to_dmatrix(), tol)
    }

    /// Concatenates the orthogonalized bases of all members into one vector
    /// family. In exact mode the bases are orthogonal rather than
    /// orthonormal; retrieval verdicts are invariant under that positive
    /// rescaling.
    pub fn expand_orthogonal(&self) -> Result<Frame> {
        let mut vectors = Vec::new();
        for s in &self.subspaces {
            vectors.extend(s.ortho_basis().iter().cloned());
        }
        if vectors.is_empty() {
            return Err(Error::Empty);
        }
        Frame::new(self.dim, vectors)
    }
}

/// Binomial coefficient as u64 (sizes here are small).
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Lexicographic unranking of k-subsets of {0..m-1}.
pub(crate) fn unrank_combination(mut rank: u64, m: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0usize;
    let mut remaining = k;
    while remaining > 0 {
        let with_next = binomial(m - next - 1, remaining - 1);
        if rank < with_next {
            out.push(next);
            remaining -= 1;
        } else {
            rank -= with_next;
        }
        next += 1;
    }
    out
}
