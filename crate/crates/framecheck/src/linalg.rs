//! Dense vectors, matrices, and subspaces over [`Scalar`], with the exact
//! and float kernels behind rank, determinant, orthogonal complements, and
//! orthogonal projections.
//!
//! Exact mode uses fraction-free (Bareiss) elimination for rank and
//! determinant and reduced row echelon form for nullspaces, so decisions on
//! rational inputs never depend on rounding. Float mode goes through SVD
//! with a relative singular-value cutoff.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense real vector with positive dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Vector { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector {
            entries: entries.iter().map(|&n| Scalar::from_int(n)).collect(),
        }
    }

    pub fn from_f64s(entries: &[f64]) -> Self {
        Vector {
            entries: entries.iter().map(|&f| Scalar::from_f64(f)).collect(),
        }
    }

    /// Canonical basis vector `e_i` (0-based) in dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut entries = vec![Scalar::zero(); n];
        entries[i] = Scalar::one();
        Vector { entries }
    }

    pub fn zero(n: usize) -> Self {
        Vector {
            entries: vec![Scalar::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(Scalar::is_rational)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.is_zero_tol(tol))
    }

    /// Euclidean inner product; exact when both inputs are rational.
    pub fn inner(&self, other: &Vector) -> Result<Scalar> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn norm_sq(&self) -> Scalar {
        self.inner(self).expect("same dims")
    }

    pub fn norm_f64(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.entries.iter().map(Scalar::to_f64).collect()
    }

    pub(crate) fn rational_entries(&self) -> Option<Vec<BigRational>> {
        self.entries
            .iter()
            .map(|e| e.rational().cloned())
            .collect()
    }

    /// Support of the vector: indices of entries that are nonzero beyond
    /// `tol` (exact on rationals).
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero_tol(tol))
            .map(|(i, _)| i)
            .collect()
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Precondition(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty);
        }
        let cols = rows[0].dim();
        for v in rows {
            if v.dim() != cols {
                return Err(Error::DimensionMismatch(cols, v.dim()));
            }
        }
        let entries = rows
            .iter()
            .flat_map(|v| v.entries().iter().cloned())
            .collect();
        Matrix::new(rows.len(), cols, entries)
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector {
            entries: self.entries[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(Scalar::is_rational)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &Vector) -> Vector {
        assert_eq!(self.cols, x.dim(), "matrix/vector shape mismatch");
        let entries = (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(Scalar::zero(), |acc, c| acc + self.get(r, c) * x.entry(c))
            })
            .collect();
        Vector { entries }
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).to_f64())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if !self.get(r, c).approx_eq(self.get(c, r), tol) {
                    return false;
                }
            }
        }
        true
    }

    /// Rank, exact on all-rational inputs and via SVD otherwise.
    pub fn rank(&self, tol: f64) -> usize {
        let rows: Vec<Vector> = (0..self.rows).map(|r| self.row(r)).collect();
        rank_rows(&rows, tol)
    }

    /// Inverse, exact on all-rational inputs.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if self.is_exact() {
            // Gauss-Jordan on the augmented system
            let mut m: Vec<Vec<BigRational>> = (0..n)
                .map(|r| {
                    let mut row = self.row(r).rational_entries().expect("exact");
                    row.extend((0..n).map(|c| {
                        if c == r {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    }));
                    row
                })
                .collect();
            let (rank, _, rref) = rref_exact(std::mem::take(&mut m));
            if rank < n {
                return Err(Error::Precondition("matrix is singular".into()));
            }
            let entries = rref
                .iter()
                .flat_map(|row| row[n..].iter().cloned().map(Scalar::Rational))
                .collect();
            Matrix::new(n, n, entries)
        } else {
            let inv = self
                .to_dmatrix()
                .try_inverse()
                .ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
            let entries = (0..n)
                .flat_map(|r| (0..n).map(move |c| (r, c)))
                .map(|(r, c)| Scalar::Float(inv[(r, c)]))
                .collect();
            Matrix::new(n, n, entries)
        }
    }

    /// Determinant, exact on all-rational inputs.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.is_exact() {
            let rat: Vec<Vec<BigRational>> = (0..self.rows)
                .map(|r| self.row(r).rational_entries().expect("exact"))
                .collect();
            Ok(Scalar::Rational(det_exact(&rat)))
        } else {
            Ok(Scalar::Float(self.to_dmatrix().determinant()))
        }
    }
}

/// Rank of a list of row vectors; dispatches exact/float by content.
pub fn rank_rows(rows: &[Vector], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let all_exact = rows.iter().all(Vector::is_exact);
    if all_exact {
        let rat: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|v| v.rational_entries().expect("exact"))
            .collect();
        rank_exact(&rat)
    } else {
        let n = rows[0].dim();
        let dm = DMatrix::from_fn(rows.len(), n, |r, c| rows[r].entry(c).to_f64());
        rank_float(&dm, tol)
    }
}

// ---------- exact kernels ----------

/// Clears denominators row by row; rank and zero/nonzero determinant
/// structure are preserved, and the returned factors recover the exact
/// determinant.
fn clear_denominators(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut factors = Vec::with_capacity(rows.len());
    for row in rows {
        let mut l = BigInt::one();
        for e in row {
            l = l.lcm(e.denom());
        }
        out.push(row.iter().map(|e| (e * &l).to_integer()).collect());
        factors.push(l);
    }
    (out, factors)
}

/// Fraction-free Gaussian elimination (Bareiss). Returns the rank and, for
/// square full-rank input, the exact determinant (zero otherwise).
fn bareiss(mut m: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = match (rank..rows).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        if pivot != rank {
            m.swap(pivot, rank);
            sign = -sign;
        }
        for r in (rank + 1)..rows {
            for c in (col + 1)..cols {
                let t = &m[r][c] * &m[rank][col] - &m[r][col] * &m[rank][c];
                m[r][c] = t / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows && rows > 0 {
        if sign < 0 {
            -prev
        } else {
            prev
        }
    } else if rows == 0 {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    (rank, det)
}

pub(crate) fn rank_exact(rows: &[Vec<BigRational>]) -> usize {
    let (m, _) = clear_denominators(rows);
    bareiss(m).0
}

pub(crate) fn det_exact(rows: &[Vec<BigRational>]) -> BigRational {
    let (m, factors) = clear_denominators(rows);
    let (_, det) = bareiss(m);
    let mut denom = BigInt::one();
    for f in &factors {
        denom *= f;
    }
    BigRational::new(det, denom)
}

/// Reduced row echelon form over the rationals.
/// Returns (rank, pivot columns, rref rows).
fn rref_exact(mut m: Vec<Vec<BigRational>>) -> (usize, Vec<usize>, Vec<Vec<BigRational>>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = match (rank..rows).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(pivot, rank);
        let inv = m[rank][col].recip();
        for c in col..cols {
            let v = &m[rank][c] * &inv;
            m[rank][c] = v;
        }
        for r in 0..rows {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..cols {
                let v = &m[r][c] - &f * &m[rank][c];
                m[r][c] = v;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    (rank, pivots, m)
}

/// Nullspace basis of the row system, one vector per free column.
fn nullspace_exact(rows: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![BigRational::zero(); n];
                v[i] = BigRational::one();
                v
            })
            .collect();
    }
    let (_, pivots, rref) = rref_exact(rows.to_vec());
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; n];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -rref[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

// ---------- float kernels ----------

pub(crate) fn rank_float(dm: &DMatrix<f64>, tol: f64) -> usize {
    if dm.nrows() == 0 || dm.ncols() == 0 {
        return 0;
    }
    let svd = dm.clone().svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values.iter().filter(|&&s| s > tol * smax).count()
}

/// Right nullspace basis (unit rows) of the float row system.
fn nullspace_float(rows: &[Vec<f64>], n: usize, tol: f64) -> Vec<Vec<f64>> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                v
            })
            .collect();
    }
    // Pad with zero rows so the SVD carries all n right singular vectors.
    let padded = rows.len().max(n);
    let dm = DMatrix::from_fn(padded, n, |r, c| if r < rows.len() { rows[r][c] } else { 0.0 });
    let svd = dm.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let rank = if smax == 0.0 {
        0
    } else {
        svd.singular_values.iter().filter(|&&s| s > tol * smax).count()
    };
    (rank..n)
        .map(|i| v_t.row(i).iter().cloned().collect())
        .collect()
}

/// Scales an exact vector to primitive integer entries with positive leading
/// coordinate; float vectors are normalized to unit length with positive
/// leading coordinate. Canonical representatives keep witnesses readable and
/// reproducible.
pub fn canonicalize(v: &Vector) -> Vector {
    if v.is_zero() {
        return v.clone();
    }
    if v.is_exact() {
        let rat = v.rational_entries().expect("exact");
        let mut l = BigInt::one();
        for e in &rat {
            l = l.lcm(e.denom());
        }
        let ints: Vec<BigInt> = rat.iter().map(|e| (e * &l).to_integer()).collect();
        let mut g = BigInt::zero();
        for e in &ints {
            g = g.gcd(e);
        }
        let lead_neg = ints.iter().find(|e| !e.is_zero()).map(|e| e.is_negative());
        let flip = lead_neg == Some(true);
        let entries = ints
            .into_iter()
            .map(|e| {
                let mut q = e / &g;
                if flip {
                    q = -q;
                }
                Scalar::Rational(BigRational::from_integer(q))
            })
            .collect();
        Vector { entries }
    } else {
        let fs = v.to_f64_vec();
        let norm = fs.iter().map(|x| x * x).sum::<f64>().sqrt();
        let lead = fs.iter().find(|x| **x != 0.0).cloned().unwrap_or(1.0);
        let s = if lead < 0.0 { -1.0 / norm } else { 1.0 / norm };
        Vector {
            entries: fs.iter().map(|x| Scalar::Float(x * s)).collect(),
        }
    }
}

/// Basis-represented subspace of `R^n` with a cached orthogonalized basis:
/// orthogonal rational vectors in exact mode (no normalization, to stay
/// rational), orthonormal floats otherwise.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    ortho: Vec<Vector>,
}

impl Subspace {
    pub fn new(ambient: usize, basis: Vec<Vector>, tol: f64) -> Result<Self> {
        for v in &basis {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch(ambient, v.dim()));
            }
        }
        if rank_rows(&basis, tol) != basis.len() {
            return Err(Error::DependentBasis);
        }
        let ortho = orthogonalize(&basis, tol)?;
        Ok(Subspace { ambient, basis, ortho })
    }

    /// The zero subspace.
    pub fn trivial(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            ortho: Vec::new(),
        }
    }

    pub fn full(ambient: usize, _tol: f64) -> Self {
        let basis: Vec<Vector> = (0..ambient).map(|i| Vector::basis(ambient, i)).collect();
        Subspace {
            ambient,
            basis: basis.clone(),
            ortho: basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn ortho_basis(&self) -> &[Vector] {
        &self.ortho
    }

    pub fn is_exact(&self) -> bool {
        self.basis.iter().all(Vector::is_exact)
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.ambient {
            return Err(Error::DimensionMismatch(self.ambient, x.dim()));
        }
        let mut acc = Vector::zero(self.ambient);
        for b in &self.ortho {
            let coeff = x.inner(b)? / b.norm_sq();
            acc = acc.add(&b.scale(&coeff));
        }
        Ok(acc)
    }

    /// The projection matrix `P = sum b b^T / <b,b>` over the orthogonalized
    /// basis; exact for rational bases.
    pub fn projection_matrix(&self) -> Matrix {
        let n = self.ambient;
        let mut p = Matrix::zeros(n, n);
        for b in &self.ortho {
            let nn = b.norm_sq();
            for r in 0..n {
                for c in 0..n {
                    let add = b.entry(r) * b.entry(c) / &nn;
                    let v = p.get(r, c) + &add;
                    p.set(r, c, v);
                }
            }
        }
        p
    }

    pub fn contains(&self, v: &Vector, tol: f64) -> bool {
        match self.project(v) {
            Ok(p) => p.sub(v).is_zero_tol(tol),
            Err(_) => false,
        }
    }

    pub fn orthocomplement(&self, tol: f64) -> Subspace {
        orthocomplement(self.ambient, &self.basis, tol).expect("basis validated")
    }
}

/// Orthogonal complement of the span of `vectors` in `R^ambient`.
/// Empty input yields the full space. Complement basis vectors are
/// canonicalized (primitive integer / unit float, positive leading entry).
pub fn orthocomplement(ambient: usize, vectors: &[Vector], tol: f64) -> Result<Subspace> {
    for v in vectors {
        if v.dim() != ambient {
            return Err(Error::DimensionMismatch(ambient, v.dim()));
        }
    }
    let all_exact = vectors.iter().all(Vector::is_exact);
    let basis: Vec<Vector> = if all_exact {
        let rows: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| v.rational_entries().expect("exact"))
            .collect();
        nullspace_exact(&rows, ambient)
            .into_iter()
            .map(|v| {
                canonicalize(&Vector {
                    entries: v.into_iter().map(Scalar::Rational).collect(),
                })
            })
            .collect()
    } else {
        let rows: Vec<Vec<f64>> = vectors.iter().map(Vector::to_f64_vec).collect();
        nullspace_float(&rows, ambient, tol)
            .into_iter()
            .map(|v| canonicalize(&Vector::from_f64s(&v)))
            .collect()
    };
    Subspace::new(ambient, basis, tol)
}

/// Modified Gram-Schmidt. Exact inputs keep rational entries (orthogonal,
/// not orthonormal); float inputs are orthonormalized with a
/// reorthogonalization pass.
pub fn orthogonalize(basis: &[Vector], tol: f64) -> Result<Vec<Vector>> {
    let all_exact = basis.iter().all(Vector::is_exact);
    let mut out: Vec<Vector> = Vec::with_capacity(basis.len());
    for v in basis {
        let mut w = v.clone();
        for b in &out {
            let coeff = w.inner(b)? / b.norm_sq();
            w = w.sub(&b.scale(&coeff));
        }
        if all_exact {
            if w.is_zero() {
                return Err(Error::DependentBasis);
            }
            out.push(canonicalize(&w));
        } else {
            // second pass for float stability
            for b in &out {
                let coeff = w.inner(b)? / b.norm_sq();
                w = w.sub(&b.scale(&coeff));
            }
            let norm = w.norm_f64();
            if norm <= tol * v.norm_f64().max(1.0) {
                return Err(Error::DependentBasis);
            }
            let inv = Scalar::Float(1.0 / norm);
            out.push(w.scale(&inv));
        }
    }
    Ok(out)
}

/// Gram-Schmidt that drops dependent inputs instead of failing; the result
/// spans the same space as the input.
pub fn orthogonalize_skip(vectors: &[Vector], tol: f64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &out {
            let coeff = w.inner(b).expect("same dim") / b.norm_sq();
            w = w.sub(&b.scale(&coeff));
        }
        if w.is_exact() {
            if !w.is_zero() {
                out.push(canonicalize(&w));
            }
        } else {
            for b in &out {
                let coeff = w.inner(b).expect("same dim") / b.norm_sq();
                w = w.sub(&b.scale(&coeff));
            }
            let norm = w.norm_f64();
            if norm > tol * v.norm_f64().max(1.0) {
                let inv = Scalar::Float(1.0 / norm);
                out.push(w.scale(&inv));
            }
        }
    }
    out
}

/// Exact square root of a nonnegative rational, when one exists.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Reflection of `x` across the hyperplane data: `x - (<x,n>/<n,n>) n`,
/// i.e. the orthogonal projection onto the hyperplane with normal `n`.
pub fn project_hyperplane(normal: &Vector, x: &Vector) -> Result<Vector> {
    if normal.is_zero() {
        return Err(Error::ZeroVector(0));
    }
    if normal.dim() != x.dim() {
        return Err(Error::DimensionMismatch(normal.dim(), x.dim()));
    }
    let coeff = x.inner(normal)? / normal.norm_sq();
    Ok(x.sub(&normal.scale(&coeff)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[i64]) -> Vector {
        Vector::from_ints(entries)
    }

    #[test]
    fn inner_products() {
        // magnitudes match on both sides of the measurement pair
        assert_eq!(
            v(&[4, 3, 1]).inner(&v(&[1, 1, -3])).unwrap(),
            Scalar::from_int(4)
        );
        assert_eq!(
            v(&[4, -3, -1]).inner(&v(&[1, 1, -3])).unwrap(),
            Scalar::from_int(4)
        );
        assert_eq!(
            Vector::basis(3, 0).inner(&Vector::basis(3, 1)).unwrap(),
            Scalar::zero()
        );
        assert_eq!(v(&[1, 1]).inner(&v(&[1, -1])).unwrap(), Scalar::zero());
        assert!(v(&[1, 2]).inner(&v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn det_identity_and_known() {
        assert_eq!(Matrix::identity(3).det().unwrap(), Scalar::from_int(1));
        let m = Matrix::from_rows(&[v(&[1, 1, 0]), v(&[-1, 0, 1]), v(&[0, 1, -1])]).unwrap();
        assert_eq!(m.det().unwrap(), Scalar::from_int(-2));
    }

    #[test]
    fn rank_of_dependent_triple() {
        // x4 = -x2 - x3 forces rank 2
        let rows = [v(&[-1, 0, 1]), v(&[1, -1, 0]), v(&[0, 1, -1])];
        assert_eq!(rank_rows(&rows, 1e-9), 2);
        let rows = [
            Vector::basis(3, 0),
            Vector::basis(3, 1),
            Vector::basis(3, 2),
            v(&[1, 1, -3]),
        ];
        assert_eq!(rank_rows(&rows, 1e-9), 3);
    }

    #[test]
    fn rank_float_matches_exact_on_rationals() {
        let rows = [v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        let dm = DMatrix::from_fn(3, 3, |r, c| rows[r].entry(c).to_f64());
        assert_eq!(rank_rows(&rows, 1e-9), rank_float(&dm, 1e-9));
        assert_eq!(rank_rows(&rows, 1e-9), 2);
    }

    #[test]
    fn orthocomplement_examples() {
        let e = |i| Vector::basis(3, i);
        let s = orthocomplement(3, &[e(1), e(2), v(&[0, 1, 1])], 1e-9).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0], v(&[1, 0, 0]));

        // complement of {e1+e2, e1+e3}
        let s = orthocomplement(3, &[v(&[1, 1, 0]), v(&[1, 0, 1])], 1e-9).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0], v(&[1, -1, -1]));

        let s = orthocomplement(2, &[], 1e-9).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn orthocomplement_twice_restores_span() {
        let basis = [v(&[1, 2, 0, 1]), v(&[0, 1, 1, -1])];
        let c = orthocomplement(4, &basis, 1e-9).unwrap();
        let cc = orthocomplement(4, c.basis(), 1e-9).unwrap();
        let mut all: Vec<Vector> = basis.to_vec();
        all.extend(cc.basis().iter().cloned());
        assert_eq!(rank_rows(&all, 1e-9), 2);
        assert_eq!(cc.dim(), 2);
    }

    #[test]
    fn hyperplane_projection_closed_form() {
        let p = project_hyperplane(&v(&[1, 1, 1]), &v(&[1, 2, 3])).unwrap();
        assert_eq!(p, v(&[-1, 0, 1]));
        let q = project_hyperplane(&v(&[1, 1, 1]), &p).unwrap();
        assert_eq!(q, p); // idempotent
        assert!(project_hyperplane(&Vector::zero(3), &v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn coordinate_projection() {
        let s = Subspace::new(2, vec![Vector::basis(2, 0)], 1e-9).unwrap();
        assert_eq!(s.project(&v(&[5, 7])).unwrap(), v(&[5, 0]));
    }

    #[test]
    fn projection_matrix_is_idempotent_and_symmetric() {
        let s = Subspace::new(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])], 1e-9).unwrap();
        let p = s.projection_matrix();
        assert!(p.is_symmetric(1e-12));
        assert_eq!(p.mul(&p), p);
    }

    #[test]
    fn pythagoras_exact() {
        let s = Subspace::new(3, vec![v(&[1, 2, 2]), v(&[3, 0, 1])], 1e-9).unwrap();
        let x = v(&[4, -1, 7]);
        let px = s.project(&x).unwrap();
        let rx = x.sub(&px);
        assert_eq!(x.norm_sq(), px.norm_sq() + rx.norm_sq());
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(Subspace::new(2, vec![v(&[1, 1]), v(&[2, 2])], 1e-9).is_err());
    }

    #[test]
    fn canonicalize_primitive() {
        let w = Vector::new(vec![
            Scalar::ratio(-1, 2),
            Scalar::ratio(1, 4),
            Scalar::ratio(1, 4),
        ])
        .unwrap();
        assert_eq!(canonicalize(&w), v(&[2, -1, -1]));
    }

    #[test]
    fn float_nullspace_dimensions() {
        let rows = vec![vec![1.0, 0.0, 1.0]];
        let ns = nullspace_float(&rows, 3, 1e-9);
        assert_eq!(ns.len(), 2);
        for b in &ns {
            let dot: f64 = b.iter().zip(&rows[0]).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-9);
        }
    }
}
