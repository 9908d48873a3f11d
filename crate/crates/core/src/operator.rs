//! Dense complex linear algebra for operators on a handful of qubits.
//!
//! Everything here is stored densely in row-major order. Dimensions stay at
//! or below 2¹², so no sparse structure is attempted.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// A dense `dim × dim` complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. `data.len()` must be `dim²`.
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// `|ket⟩⟨bra|`.
    pub fn outer(ket: &[C64], bra: &[C64]) -> Result<Self> {
        if ket.len() != bra.len() {
            return Err(Error::DimensionMismatch {
                expected: ket.len(),
                got: bra.len(),
            });
        }
        Ok(Self::from_fn(ket.len(), |i, j| ket[i] * bra[j].conj()))
    }

    pub fn pauli_x() -> Self {
        Self::from_fn(2, |i, j| if i != j { ONE } else { ZERO })
    }

    pub fn pauli_y() -> Self {
        Self {
            dim: 2,
            data: vec![ZERO, -I, I, ZERO],
        }
    }

    pub fn pauli_z() -> Self {
        Self {
            dim: 2,
            data: vec![ONE, ZERO, ZERO, -ONE],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest deviation from Hermiticity, `max |m_ij - conj(m_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self` occupies the leftmost tensor slot.
    pub fn tensor(&self, other: &Self) -> Self {
        tensor(self, other)
    }

    /// `tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<C64> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i * n + j] * other.data[j * n + i];
            }
        }
        Ok(acc)
    }

    /// `⟨u|self|v⟩`.
    pub fn sandwich(&self, u: &[C64], v: &[C64]) -> Result<C64> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: if u.len() != self.dim {
                    u.len()
                } else {
                    v.len()
                },
            });
        }
        let n = self.dim;
        let mut acc = ZERO;
        for (ui, row) in u.iter().zip(self.data.chunks_exact(n)) {
            if *ui == ZERO {
                continue;
            }
            let dot: C64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
            acc += ui.conj() * dot;
        }
        Ok(acc)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: C64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale(C64::new(rhs, 0.0))
    }
}

/// Kronecker product: entry `(i·db + k, j·db + l)` is `a(i,j)·b(k,l)`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    let n = da * db;
    let mut data = vec![ZERO; n * n];
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..db {
                let row = (i * db + k) * n + j * db;
                for l in 0..db {
                    data[row + l] = aij * b.data[k * db + l];
                }
            }
        }
    }
    ComplexMatrix { dim: n, data }
}

/// Tensor product of a non-empty sequence, leftmost factor first.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    let mut iter = factors.into_iter();
    let first = iter
        .next()
        .expect("tensor_all needs at least one factor")
        .clone();
    iter.fold(first, |acc, m| tensor(&acc, m))
}

/// A matrix known to equal its adjoint.
#[derive(Clone, PartialEq, Debug)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, Tolerances::DEFAULT.hermiticity)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let deviation = matrix.hermiticity_defect();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self(tensor(&self.0, &other.0))
    }

    /// Real linear combination `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        Self(&(&self.0 * a) + &(&other.0 * b))
    }
}

/// Splits `f` into Hermitian parts with `f = re + i·im`:
/// `re = (f + f†)/2`, `im = (f − f†)/(2i)`.
pub fn hermitian_split(f: &ComplexMatrix) -> (HermitianOperator, HermitianOperator) {
    let n = f.dim;
    let mut re = ComplexMatrix::zeros(n);
    let mut im = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let a = f[(i, j)];
            let b = f[(j, i)].conj();
            re[(i, j)] = (a + b) * 0.5;
            im[(i, j)] = (a - b) * C64::new(0.0, -0.5);
        }
    }
    (HermitianOperator(re), HermitianOperator(im))
}

/// Trace-one positive semidefinite Hermitian matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (via a full
    /// eigendecomposition).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        let deviation = matrix.hermiticity_defect();
        if deviation > tol.hermiticity {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace - ONE).norm() > tol.hermiticity {
            return Err(Error::NotDensityMatrix(format!("trace is {trace}")));
        }
        let spectrum = spectral_check(&matrix)?;
        if !spectrum.is_psd {
            return Err(Error::NotDensityMatrix(format!(
                "minimum eigenvalue {:e}",
                spectrum.min()
            )));
        }
        Ok(Self(matrix))
    }

    /// `|ψ⟩⟨ψ|` for a normalized ket.
    pub fn pure(ket: &[C64]) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > Tolerances::DEFAULT.hermiticity {
            return Err(Error::NotDensityMatrix(format!("ket norm is {norm}")));
        }
        Ok(Self(ComplexMatrix::outer(ket, ket)?))
    }

    /// `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self(&ComplexMatrix::identity(dim) * (1.0 / dim as f64))
    }

    /// Convex combination `w·self + (1−w)·other`, `w ∈ [0,1]`.
    pub fn mix(&self, weight: f64, other: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::OutOfRange {
                name: "weight",
                value: weight,
                range: "[0, 1]",
            });
        }
        self.0.check_same_dim(&other.0)?;
        Ok(Self(&(&self.0 * weight) + &(&other.0 * (1.0 - weight))))
    }

    /// Product state; positivity and unit trace are preserved by `⊗`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self(tensor(&self.0, &other.0))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Number of qubits, if the dimension is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        self.0
            .dim
            .is_power_of_two()
            .then(|| self.0.dim.trailing_zeros() as usize)
    }
}

/// Result of `tr[ρ O]` together with the discarded imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectation {
    pub value: f64,
    pub imaginary_residue: f64,
}

/// `tr[ρ O]`.
pub fn expectation(rho: &DensityMatrix, o: &HermitianOperator) -> Result<f64> {
    expectation_detailed(rho, o).map(|e| e.value)
}

pub fn expectation_detailed(rho: &DensityMatrix, o: &HermitianOperator) -> Result<Expectation> {
    let t = rho.0.trace_product(&o.0)?;
    Ok(Expectation {
        value: t.re,
        imaginary_residue: t.im.abs(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
    pub is_psd: bool,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
pub fn spectral_check(m: &ComplexMatrix) -> Result<Spectrum> {
    let deviation = m.hermiticity_defect();
    if deviation > Tolerances::DEFAULT.comparison {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = m.to_nalgebra().symmetric_eigenvalues();
    let mut eigenvalues: Vec<f64> = eig.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let is_psd = eigenvalues
        .first()
        .is_none_or(|&v| v >= -Tolerances::DEFAULT.psd);
    Ok(Spectrum {
        eigenvalues,
        is_psd,
    })
}
