//! Dense complex linear algebra for the two small dimensions the toolkit
//! needs: single qubits (2) and qubit pairs (4).
//!
//! Everything here is closed-form. Two-dimensional eigenproblems are solved
//! with the quadratic formula; four-dimensional eigensystems are assembled
//! from the tensor structure of the operator rather than a general solver.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Shorthand constructor.
#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub const fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn all_finite(xs: &[C64]) -> bool {
    xs.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Relative threshold used to decide degeneracy and singularity.
const DEGENERACY_TOL: f64 = 1e-12;

/// A state vector of a qubit (dim 2) or a qubit pair (dim 4).
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct CVector {
    entries: Vec<C64>,
}

impl CVector {
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if entries.len() != 2 && entries.len() != 4 {
            return Err(Error::InvalidDimension {
                expected: "2 or 4",
                found: entries.len(),
            });
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Self { entries })
    }

    pub fn from_real(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| r(x)).collect())
    }

    /// Computational basis vector |k⟩.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        let mut v = vec![ZERO; dim];
        if k >= dim {
            return Err(Error::InvalidDimension {
                expected: "basis index below dimension",
                found: k,
            });
        }
        v[k] = ONE;
        Self::new(v)
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<C64>) -> Self {
        debug_assert!(entries.len() == 2 || entries.len() == 4);
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> C64 {
        self.entries[i]
    }

    pub fn conj(&self) -> Self {
        Self::from_vec_unchecked(self.entries.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::from_vec_unchecked(self.entries.iter().map(|z| z * k).collect())
    }

    fn check_same_dim(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(())
    }

    /// Hilbert pairing `conj(self)ᵀ · other`.
    pub fn dot_conj(&self, other: &Self) -> Result<C64> {
        self.check_same_dim(other, "dot_conj")?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Bilinear pairing `selfᵀ · other`, no conjugation.
    pub fn dot_plain(&self, other: &Self) -> Result<C64> {
        self.check_same_dim(other, "dot_plain")?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize the zero vector".into()));
        }
        Ok(self.scale(r(1.0 / n)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "add")?;
        Ok(Self::from_vec_unchecked(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Phase `e^{iφ}` such that `self ≈ e^{iφ} · other`, taken from the
    /// entry where `other` has maximal modulus.
    pub fn relative_phase(&self, other: &Self) -> C64 {
        let (k, _) = other
            .entries
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
        let ratio = self.entries[k] / other.entries[k];
        if ratio.norm() == 0.0 || !ratio.re.is_finite() {
            ONE
        } else {
            ratio / ratio.norm()
        }
    }

    /// Maximal entrywise deviation after removing a single global phase.
    pub fn max_abs_diff_up_to_phase(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        let phase = self.relative_phase(other);
        self.max_abs_diff(&other.scale(phase))
    }

    /// `|self⟩⟨other|`, i.e. `self · other†`.
    pub fn outer(&self, other: &Self) -> CMatrix {
        let n = self.dim();
        let m = other.dim();
        let mut data = Vec::with_capacity(n * m);
        for a in &self.entries {
            for b in &other.entries {
                data.push(a * b.conj());
            }
        }
        CMatrix::from_vec_unchecked(n, m, data)
    }

    /// `self · otherᵀ`, the plain (unconjugated) outer product.
    pub fn outer_plain(&self, other: &Self) -> CMatrix {
        let n = self.dim();
        let m = other.dim();
        let mut data = Vec::with_capacity(n * m);
        for a in &self.entries {
            for b in &other.entries {
                data.push(a * b);
            }
        }
        CMatrix::from_vec_unchecked(n, m, data)
    }

    /// Entrywise phase fix: first component with non-negligible modulus is
    /// made real and positive.
    pub fn with_canonical_phase(&self) -> Self {
        let scale = self.norm().max(f64::MIN_POSITIVE);
        match self.entries.iter().find(|z| z.norm() > DEGENERACY_TOL * scale) {
            Some(z) => self.scale(z.conj() / z.norm()),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != data.len() {
            return Err(Error::InvalidDimension {
                expected: "rows * cols entries",
                found: data.len(),
            });
        }
        if !all_finite(&data) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }

    /// Build a square matrix from rows of equal length.
    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Result<Self> {
        Self::new(N, N, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Result<Self> {
        Self::new(N, N, rows.iter().flatten().map(|&x| r(x)).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[CVector]) -> Result<Self> {
        let n = cols.first().map(CVector::dim).ok_or(Error::InvalidDimension {
            expected: "at least one column",
            found: 0,
        })?;
        if cols.iter().any(|v| v.dim() != n) {
            return Err(Error::InvalidDimension {
                expected: "columns of equal length",
                found: cols.len(),
            });
        }
        let mut data = vec![ZERO; n * cols.len()];
        for (j, v) in cols.iter().enumerate() {
            for i in 0..n {
                data[i * cols.len() + j] = v.get(i);
            }
        }
        Ok(Self::from_vec_unchecked(n, cols.len(), data))
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec_unchecked(rows, cols, vec![ZERO; rows * cols])
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = *d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, z: C64) {
        self.data[i * self.cols + j] = z;
    }

    pub fn column(&self, j: usize) -> Result<CVector> {
        CVector::new((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self::from_vec_unchecked(self.rows, self.cols, self.data.iter().map(|&z| f(z)).collect())
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, k: C64) -> Self {
        self.map(|z| z * k)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: (self.rows, self.cols),
                right: (v.dim(), 1),
            });
        }
        let out = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v.get(j)).sum())
            .collect();
        CVector::new(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&matmul(self, other)? - &matmul(other, self)?)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<_> = (0..self.cols).map(|j| self.get(i, j)).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        CMatrix::from_vec_unchecked(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        CMatrix::from_vec_unchecked(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        )
    }
}

/// Panicking product for internally conformable operands. Use [`matmul`]
/// when the shapes come from the caller.
impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        matmul(self, rhs).expect("non-conformable matrix product")
    }
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "matmul",
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    let mut out = CMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik == ZERO {
                continue;
            }
            for j in 0..b.cols {
                out.data[i * b.cols + j] += aik * b.get(k, j);
            }
        }
    }
    Ok(out)
}

/// Kronecker product; `a` is the slow (leftmost) factor.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = CMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.set(i * b.rows + k, j * b.cols + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Kronecker product of two qubit vectors.
pub fn tensor_vec(a: &CVector, b: &CVector) -> Result<CVector> {
    let mut out = Vec::with_capacity(a.dim() * b.dim());
    for x in a.entries() {
        for y in b.entries() {
            out.push(x * y);
        }
    }
    CVector::new(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: C64,
    /// Right eigenvector with unit Euclidean norm and canonical phase.
    pub vector: CVector,
}

fn order_desc(a: &C64, b: &C64) -> std::cmp::Ordering {
    let scale = 1.0 + a.norm().max(b.norm());
    if (a.re - b.re).abs() <= DEGENERACY_TOL * scale {
        b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal)
    } else {
        b.re.partial_cmp(&a.re).unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Both eigenpairs of a 2×2 matrix, ordered by descending real part and then
/// descending imaginary part.
pub fn eig_2x2(m: &CMatrix) -> Result<[EigenPair; 2]> {
    if m.rows != 2 || m.cols != 2 {
        return Err(Error::InvalidDimension {
            expected: "2x2 matrix",
            found: m.rows * m.cols,
        });
    }
    let (a, b, cc, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let scale = 1.0 + m.max_abs();
    let mean = (a + d) * 0.5;
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * cc).sqrt();

    if disc.norm() <= DEGENERACY_TOL * scale {
        let off = b.norm().max(cc.norm()).max(half_diff.norm());
        if off <= DEGENERACY_TOL * scale {
            // scalar matrix: any basis is an eigenbasis
            return Ok([
                EigenPair { value: mean, vector: CVector::from_vec_unchecked(vec![ONE, ZERO]) },
                EigenPair { value: mean, vector: CVector::from_vec_unchecked(vec![ZERO, ONE]) },
            ]);
        }
        return Err(Error::NonDiagonalizable);
    }

    let eigvec = |lambda: C64| -> CVector {
        // null vector of (M − λI) from whichever row is better conditioned
        let from_first = [b, lambda - a];
        let from_second = [lambda - d, cc];
        let n1 = from_first[0].norm_sqr() + from_first[1].norm_sqr();
        let n2 = from_second[0].norm_sqr() + from_second[1].norm_sqr();
        let v = if n1 >= n2 { from_first } else { from_second };
        let n = n1.max(n2).sqrt();
        CVector::from_vec_unchecked(vec![v[0] / n, v[1] / n]).with_canonical_phase()
    };

    let mut values = [mean + disc, mean - disc];
    values.sort_by(order_desc);
    let [l0, l1] = values;
    Ok([
        EigenPair { value: l0, vector: eigvec(l0) },
        EigenPair { value: l1, vector: eigvec(l1) },
    ])
}

/// Eigenvalues with matching right eigenvectors (columns of `V`).
#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem {
    pub values: Vec<C64>,
    pub vectors: Vec<CVector>,
}

impl Eigensystem {
    pub fn of_2x2(m: &CMatrix) -> Result<Self> {
        let [p, q] = eig_2x2(m)?;
        Ok(Self {
            values: vec![p.value, q.value],
            vectors: vec![p.vector, q.vector],
        })
    }

    /// Eigensystem of `A ⊗ B`: products of eigenvalues, tensor products of vectors.
    pub fn kron_product(a: &Self, b: &Self) -> Result<Self> {
        Self::kron_with(a, b, |x, y| x * y)
    }

    /// Eigensystem of `A ⊗ I + I ⊗ B`.
    pub fn kron_sum(a: &Self, b: &Self) -> Result<Self> {
        Self::kron_with(a, b, |x, y| x + y)
    }

    fn kron_with(a: &Self, b: &Self, combine: impl Fn(C64, C64) -> C64) -> Result<Self> {
        let mut values = Vec::new();
        let mut vectors = Vec::new();
        for (la, va) in a.values.iter().zip(&a.vectors) {
            for (lb, vb) in b.values.iter().zip(&b.vectors) {
                values.push(combine(*la, *lb));
                vectors.push(tensor_vec(va, vb)?);
            }
        }
        Ok(Self { values, vectors })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector_matrix(&self) -> Result<CMatrix> {
        CMatrix::from_columns(&self.vectors)
    }

    /// `V · diag(f(λ)) · V⁻¹`.
    pub fn apply_function(&self, f: impl Fn(C64) -> C64) -> Result<CMatrix> {
        let v = self.vector_matrix()?;
        let v_inv = inverse(&v)?;
        let d = CMatrix::diagonal(&self.values.iter().map(|&l| f(l)).collect::<Vec<_>>());
        Ok(&(&v * &d) * &v_inv)
    }

    pub fn reconstruct(&self) -> Result<CMatrix> {
        self.apply_function(|l| l)
    }
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::InvalidDimension {
            expected: "square matrix",
            found: m.rows * m.cols,
        });
    }
    let n = m.rows;
    let scale = m.max_abs();
    if scale == 0.0 {
        return Err(Error::Singular);
    }
    let mut a = m.clone();
    let mut inv = CMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a.get(i, col).norm().total_cmp(&a.get(j, col).norm()))
            .expect("non-empty range");
        if a.get(pivot, col).norm() <= DEGENERACY_TOL * scale {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                let (x, y) = (a.get(col, j), a.get(pivot, j));
                a.set(col, j, y);
                a.set(pivot, j, x);
                let (x, y) = (inv.get(col, j), inv.get(pivot, j));
                inv.set(col, j, y);
                inv.set(pivot, j, x);
            }
        }
        let p = a.get(col, col);
        for j in 0..n {
            a.set(col, j, a.get(col, j) / p);
            inv.set(col, j, inv.get(col, j) / p);
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a.get(i, col);
            if f == ZERO {
                continue;
            }
            for j in 0..n {
                a.set(i, j, a.get(i, j) - f * a.get(col, j));
                inv.set(i, j, inv.get(i, j) - f * inv.get(col, j));
            }
        }
    }
    Ok(inv)
}

/// `exp(scale · m)` for a diagonalizable 2×2 matrix via its eigensystem.
///
/// Four-dimensional operators are exponentiated with [`spectral_exp_eigen`]
/// from an eigensystem assembled out of their tensor factors.
pub fn spectral_exp(m: &CMatrix, scale: C64) -> Result<CMatrix> {
    match (m.rows, m.cols) {
        (2, 2) => spectral_exp_eigen(&Eigensystem::of_2x2(m)?, scale),
        _ => Err(Error::Unsupported(
            "spectral_exp takes 2x2 input; build 4x4 eigensystems from tensor factors",
        )),
    }
}

pub fn spectral_exp_eigen(eig: &Eigensystem, scale: C64) -> Result<CMatrix> {
    eig.apply_function(|l| (scale * l).exp())
}

/// Which factor of a two-qubit operator survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subsystem {
    First,
    Second,
}

/// Partial trace of a 4×4 operator. `keep = First` sums over the paired
/// indices of the second factor and vice versa.
pub fn partial_trace(rho: &CMatrix, keep: Subsystem) -> Result<CMatrix> {
    if rho.rows != 4 || rho.cols != 4 {
        return Err(Error::InvalidDimension {
            expected: "4x4 operator",
            found: rho.rows * rho.cols,
        });
    }
    let mut out = CMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let z = (0..2)
                .map(|k| match keep {
                    Subsystem::First => rho.get(2 * i + k, 2 * j + k),
                    Subsystem::Second => rho.get(2 * k + i, 2 * k + j),
                })
                .sum();
            out.set(i, j, z);
        }
    }
    Ok(out)
}

/// Shannon entropy in bits of a probability vector, with `0·log 0 = 0`.
pub fn entropy_bits(probabilities: &[f64]) -> f64 {
    probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6};

    fn pauli_x() -> CMatrix {
        CMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]).unwrap()
    }

    /// Closed form of the C operator, written out by hand.
    fn c_closed(alpha: f64) -> CMatrix {
        let k = 1.0 / alpha.cos();
        CMatrix::from_rows([[c(0.0, alpha.sin() * k), r(k)], [r(k), c(0.0, -alpha.sin() * k)]]).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = CMatrix::from_rows([[c(1.0, 2.0), c(-0.5, 0.0)], [c(0.0, 3.0), c(4.0, -1.0)]]).unwrap();
        assert_eq!(matmul(&CMatrix::identity(2), &m).unwrap(), m);
    }

    #[test]
    fn parity_is_an_involution() {
        let p = pauli_x();
        assert_eq!(matmul(&p, &p).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn c_operator_squares_to_identity() {
        let cm = c_closed(FRAC_PI_6);
        assert!(matmul(&cm, &cm).unwrap().max_abs_diff(&CMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = CMatrix::identity(2);
        let b = CMatrix::identity(4);
        assert!(matches!(matmul(&a, &b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn tensor_of_identities() {
        assert_eq!(tensor(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
    }

    #[test]
    fn tensor_of_parity_with_identity() {
        let p4 = tensor(&pauli_x(), &CMatrix::identity(2));
        let expected = CMatrix::from_real_rows([
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(p4, expected);
    }

    #[test]
    fn rejects_bad_vector_dims_and_non_finite() {
        assert!(CVector::new(vec![ONE; 3]).is_err());
        assert!(matches!(CVector::new(vec![ONE, c(f64::NAN, 0.0)]), Err(Error::NonFinite(_))));
        assert!(CMatrix::new(2, 2, vec![ONE, ONE, ONE, c(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn eig_of_diagonal() {
        let m = CMatrix::from_real_rows([[1.0, 0.0], [0.0, 3.0]]).unwrap();
        let [p, q] = eig_2x2(&m).unwrap();
        assert_eq!(p.value, r(3.0));
        assert_eq!(q.value, r(1.0));
        assert!(p.vector.max_abs_diff(&CVector::basis(2, 1).unwrap()) < 1e-15);
        assert!(q.vector.max_abs_diff(&CVector::basis(2, 0).unwrap()) < 1e-15);
    }

    #[test]
    fn eig_orders_ties_by_imaginary_part() {
        // eigenvalues ±i
        let m = CMatrix::from_real_rows([[0.0, -1.0], [1.0, 0.0]]).unwrap();
        let [p, q] = eig_2x2(&m).unwrap();
        assert!((p.value - I).norm() < 1e-15);
        assert!((q.value + I).norm() < 1e-15);
    }

    #[test]
    fn eig_of_pt_hamiltonian() {
        let a = FRAC_PI_6;
        let h = CMatrix::from_rows([[c(0.0, a.sin()), ONE], [ONE, c(0.0, -a.sin())]]).unwrap();
        let pairs = eig_2x2(&h).unwrap();
        assert!((pairs[0].value - r(a.cos())).norm() < 1e-14);
        assert!((pairs[1].value + r(a.cos())).norm() < 1e-14);
        for p in &pairs {
            let residual = h.apply(&p.vector).unwrap().max_abs_diff(&p.vector.scale(p.value));
            assert!(residual < 1e-12);
            assert!((p.vector.norm() - 1.0).abs() < 1e-14);
            assert!(p.vector.get(0).im.abs() < 1e-15 && p.vector.get(0).re > 0.0);
        }
    }

    #[test]
    fn eig_of_reduced_density_closed_form() {
        let a = FRAC_PI_4;
        let (s, co) = (a.sin(), a.cos());
        let rho = CMatrix::from_rows([[r(0.5 * (1.0 + s * co)), c(0.0, 0.5 * s)], [c(0.0, -0.5 * s), r(0.5 * (1.0 - s * co))]])
            .unwrap();
        // quadratic formula by hand: trace 1, det = (1 − s²c² − s²)/4
        let det = (1.0 - s * s * co * co - s * s) / 4.0;
        let hand = [(1.0 + (1.0 - 4.0 * det).sqrt()) / 2.0, (1.0 - (1.0 - 4.0 * det).sqrt()) / 2.0];
        let closed = [(1.0 + (1.0 - co.powi(4)).sqrt()) / 2.0, (1.0 - (1.0 - co.powi(4)).sqrt()) / 2.0];
        let pairs = eig_2x2(&rho).unwrap();
        for k in 0..2 {
            assert!((hand[k] - closed[k]).abs() < 1e-14);
            assert!((pairs[k].value - r(closed[k])).norm() < 1e-12);
        }
        assert!((closed[0] - 0.9330127018922193).abs() < 1e-4);
        assert!((closed[1] - 0.0669872981077807).abs() < 1e-4);
    }

    #[test]
    fn eig_detects_defective() {
        let jordan = CMatrix::from_real_rows([[1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(eig_2x2(&jordan), Err(Error::NonDiagonalizable));
        // the exceptional point of the PT family is defective too
        let ep = CMatrix::from_rows([[I, ONE], [ONE, -I]]).unwrap();
        assert_eq!(eig_2x2(&ep), Err(Error::NonDiagonalizable));
        assert!(spectral_exp(&ep, -I).is_err());
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = CMatrix::zeros(2, 2);
        assert!(spectral_exp(&z, ONE).unwrap().max_abs_diff(&CMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn half_period_evolution_has_eigenphases_minus_plus_i() {
        let a = FRAC_PI_6;
        let h = CMatrix::from_rows([[c(0.0, a.sin()), ONE], [ONE, c(0.0, -a.sin())]]).unwrap();
        let tau = std::f64::consts::PI / (2.0 * a.cos());
        let u = spectral_exp(&h, c(0.0, -tau)).unwrap();
        let pairs = eig_2x2(&h).unwrap();
        // E₊τ = π/2 ⇒ e^{−iπ/2} = −i; E₋τ = −π/2 ⇒ +i
        let expected = [-I, I];
        for (p, e) in pairs.iter().zip(expected) {
            let uv = u.apply(&p.vector).unwrap();
            assert!(uv.max_abs_diff(&p.vector.scale(e)) < 1e-12);
        }
        // and U(τ) = −i C
        assert!(u.max_abs_diff(&c_closed(a).scale(-I)) < 1e-12);
    }

    #[test]
    fn spectral_exp_refuses_4x4_without_structure() {
        assert!(matches!(spectral_exp(&CMatrix::identity(4), ONE), Err(Error::Unsupported(_))));
    }

    #[test]
    fn inverse_round_trip_and_singular() {
        let m = CMatrix::from_rows([
            [c(1.0, 0.5), r(2.0), ZERO, c(0.0, 1.0)],
            [r(0.0), c(3.0, -1.0), r(1.0), ZERO],
            [c(0.5, 0.5), ZERO, r(1.0), r(2.0)],
            [ZERO, r(1.0), c(0.0, -2.0), r(1.0)],
        ])
        .unwrap();
        let inv = inverse(&m).unwrap();
        assert!((&m * &inv).max_abs_diff(&CMatrix::identity(4)) < 1e-13);
        let singular = CMatrix::from_real_rows([[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(inverse(&singular), Err(Error::Singular));
    }

    #[test]
    fn partial_trace_of_maximally_mixed() {
        let rho = CMatrix::identity(4).scale(r(0.25));
        for keep in [Subsystem::First, Subsystem::Second] {
            let red = partial_trace(&rho, keep).unwrap();
            assert!(red.max_abs_diff(&CMatrix::identity(2).scale(r(0.5))) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let psi0 = CVector::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).unwrap();
        // |ψ₀⟩⟨ψ₀| written out: ½ at the four corners of the {00,11} block
        let mut rho = CMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            rho.set(i, j, r(0.5));
        }
        assert!(psi0.outer(&psi0).max_abs_diff(&rho) < 1e-15);
        let red = partial_trace(&rho, Subsystem::Second).unwrap();
        assert!(red.max_abs_diff(&CMatrix::identity(2).scale(r(0.5))) < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_the_right_factor() {
        let a = CMatrix::from_rows([[r(0.7), c(0.1, 0.2)], [c(0.1, -0.2), r(0.3)]]).unwrap();
        let b = CMatrix::from_rows([[r(0.4), c(0.0, 0.3)], [c(0.0, -0.3), r(0.6)]]).unwrap();
        let ab = tensor(&a, &b);
        assert!(partial_trace(&ab, Subsystem::First).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(partial_trace(&ab, Subsystem::Second).unwrap().max_abs_diff(&b) < 1e-15);
        assert!(partial_trace(&a, Subsystem::First).is_err());
    }

    #[test]
    fn phase_insensitive_comparison() {
        let v = CVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let w = v.scale(C64::from_polar(1.0, 1.234));
        assert!(v.max_abs_diff(&w) > 0.1);
        assert!(v.max_abs_diff_up_to_phase(&w) < 1e-15);
    }

    #[test]
    fn entropy_of_fair_coin_is_one_bit() {
        assert!((entropy_bits(&[0.5, 0.5]) - 1.0).abs() < 1e-15);
        assert_eq!(entropy_bits(&[1.0, 0.0]), 0.0);
    }
}
