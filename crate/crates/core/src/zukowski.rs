//! The Bell-Żukowski operator
//!
//! ```text
//! Z_n = 2^{−n} ∫₀^π…∫₀^π cos(φ¹ + … + φⁿ) ⊗ₖ σ_{φᵏ} dφ¹…dφⁿ
//! ```
//!
//! and everything derived from it: its GHZ closed form, its relation to the
//! Bell-Mermin operator, the visibility thresholds, and the bound on the
//! response-function integrals `z′ = ∫₀^π f(φ) e^{iφ} dφ` behind `|⟨Z_n⟩| ≤ 1`.
//!
//! # Reference frames
//!
//! The closed form of `Z_n` is diagonal in the GHZ pair `(|0ⁿ⟩ ± |1ⁿ⟩)/√2`,
//! while the Bell-Mermin operator built from σx/σy is diagonal in
//! `(|0ⁿ⟩ ± e^{iθ}|1ⁿ⟩)/√2` with `θ = (n−1)π/4`. Rotating the kernel to
//! `cos(Σφ − Δ)` with `Δ = θ` (a rotation of one party's reference frame in
//! the xy plane) moves `Z_n` onto the Bell-Mermin GHZ pair; the bound is
//! unchanged because `|Re(e^{−iΔ} ∏ z′ₖ)| ≤ ∏|z′ₖ|`. The operator identity
//! `Z = ½(π/2)ⁿ 2^{−(n−1)/2} B` holds for the rotated operator, see
//! [`zukowski_aligned`].

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mermin::PhaseAlignment;
use crate::operator::{expectation, tensor_all, ComplexMatrix, HermitianOperator, C64, ZERO};
use crate::rng::XorShift64Star;
use crate::state::{
    check_qubits, check_visibility, copies, ghz_basis, ghz_zero_pair, phase_matrix, Ket,
};
use crate::tolerance::BoundVerdict;

/// Equispaced midpoint rule on `[0, π]` with `M` nodes per axis.
///
/// For `m = 2k` the nodes give `Σⱼ e^{imφⱼ} = e^{ikπ/M} Σⱼ e^{2πikj/M}`,
/// which vanishes unless `M | k`. Every per-axis factor of `Z_n` has
/// `m ∈ {−2, 0, 2}`, so any `M ≥ 2` integrates it exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureGrid {
    nodes: usize,
}

impl QuadratureGrid {
    pub const MAX_NODES: usize = 1 << 20;

    pub fn new(nodes: usize) -> Result<Self> {
        if !(2..=Self::MAX_NODES).contains(&nodes) {
            return Err(Error::OutOfRange {
                name: "nodes_per_axis",
                value: nodes as f64,
                range: "[2, 2^20]",
            });
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// `(j + ½)π/M`, `j = 0..M`.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = PI / self.nodes as f64;
        (0..self.nodes).map(move |j| (j as f64 + 0.5) * h)
    }

    pub fn weight(&self) -> f64 {
        PI / self.nodes as f64
    }
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self { nodes: 8 }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            range: "[2, 12]",
        });
    }
    check_qubits(n)
}

/// `½(π/2)ⁿ`, the nonzero eigenvalue magnitude of `Z_n`.
pub fn zukowski_eigenvalue(n: usize) -> f64 {
    0.5 * (PI / 2.0).powi(n as i32)
}

/// `Z_n = ½(π/2)ⁿ(|Ψ₀⁺⟩⟨Ψ₀⁺| − |Ψ₀⁻⟩⟨Ψ₀⁻|)`.
pub fn zukowski_closed(n: usize) -> Result<HermitianOperator> {
    zukowski_closed_rotated(n, 0.0)
}

/// Closed form of the operator with kernel `cos(Σφ − Δ)`:
/// `½(π/2)ⁿ(e^{−iΔ}|0ⁿ⟩⟨1ⁿ| + e^{iΔ}|1ⁿ⟩⟨0ⁿ|)`.
pub fn zukowski_closed_rotated(n: usize, delta: f64) -> Result<HermitianOperator> {
    check_n(n)?;
    let (plus, minus) = ghz_zero_pair(n, delta)?;
    let m = &(&plus.projector() - &minus.projector()) * zukowski_eigenvalue(n);
    HermitianOperator::new(m)
}

/// `Z_n` rotated onto the GHZ pair of the Bell-Mermin operator, `Δ = (n−1)π/4`.
pub fn zukowski_aligned(n: usize) -> Result<HermitianOperator> {
    zukowski_closed_rotated(n, PhaseAlignment::expected_theta(n))
}

/// `Z_n` from its integral definition.
pub fn zukowski_quadrature(n: usize, grid: QuadratureGrid) -> Result<HermitianOperator> {
    zukowski_quadrature_rotated(n, 0.0, grid)
}

/// Integral definition with kernel `cos(Σφ − Δ)`, evaluated separably.
///
/// Writing `cos(Σφ − Δ) = ½(e^{−iΔ}∏ₖe^{iφᵏ} + e^{iΔ}∏ₖe^{−iφᵏ})`, the
/// integrand factorizes over parties and
/// `Z = 2^{−n}·½(e^{−iΔ} T₊^{⊗n} + e^{iΔ} T₋^{⊗n})` where the 2×2 tables are
/// the one-dimensional quadratures `T± = Σⱼ wⱼ e^{±iφⱼ} σ_{φⱼ}`.
pub fn zukowski_quadrature_rotated(
    n: usize,
    delta: f64,
    grid: QuadratureGrid,
) -> Result<HermitianOperator> {
    check_n(n)?;
    let w = grid.weight();
    let mut t_plus = ComplexMatrix::zeros(2);
    let mut t_minus = ComplexMatrix::zeros(2);
    for phi in grid.points() {
        let sigma = phase_matrix(phi);
        let e = C64::from_polar(w, phi);
        t_plus = &t_plus + &sigma.scale(e);
        t_minus = &t_minus + &sigma.scale(e.conj());
    }
    let plus = tensor_all(std::iter::repeat_n(&t_plus, n));
    let minus = tensor_all(std::iter::repeat_n(&t_minus, n));
    let pre = 0.5 * 0.5f64.powi(n as i32);
    let z = &plus.scale(C64::from_polar(pre, -delta)) + &minus.scale(C64::from_polar(pre, delta));
    HermitianOperator::with_tolerance(z, 1e-10)
}

/// `⟨u|O|v⟩` for all pairs of GHZ basis states, in [`ghz_basis`] order.
///
/// Each GHZ ket has two nonzero amplitudes, so every element reads four
/// entries of `O`.
pub fn in_ghz_basis(o: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    if o.dim() != 1 << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            got: o.dim(),
        });
    }
    let basis = ghz_basis(n)?;
    let support: Vec<[(usize, C64); 2]> = basis.iter().map(two_term_support).collect();
    let dim = basis.len();
    Ok(ComplexMatrix::from_fn(dim, |a, b| {
        let mut acc = ZERO;
        for &(i, ui) in &support[a] {
            for &(j, vj) in &support[b] {
                acc += ui.conj() * o[(i, j)] * vj;
            }
        }
        acc
    }))
}

fn two_term_support(k: &Ket) -> [(usize, C64); 2] {
    let mut it = k
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != ZERO)
        .map(|(i, a)| (i, *a));
    let first = it.next().expect("GHZ ket has two terms");
    let second = it.next().expect("GHZ ket has two terms");
    [first, second]
}

/// Largest off-diagonal modulus of a square matrix.
pub fn max_off_diagonal(m: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// `½(π/2)^{2N} 2^{−(2N−1)/2}`, the factor converting `⟨B⟩` into `⟨Z_{2N}⟩`.
pub fn mermin_to_zukowski_factor(n_copies: usize) -> f64 {
    let n = 2 * n_copies as i32;
    0.5 * (PI / 2.0).powi(n) * 2f64.powf(-(n as f64 - 1.0) / 2.0)
}

/// `⟨Z_{2N}⟩` computed from a measured `⟨B⟩`.
pub fn zukowski_from_mermin(mermin_value: f64, n_copies: usize) -> f64 {
    mermin_to_zukowski_factor(n_copies) * mermin_value
}

/// `2(2/π)^{2N} 2^{(2N−1)/2}`: the largest `|⟨B⟩|` compatible with
/// `|⟨Z_{2N}⟩| ≤ 1`.
pub fn modified_mermin_bound(n_copies: usize) -> f64 {
    let n = 2 * n_copies as i32;
    2.0 * (2.0 / PI).powi(n) * 2f64.powf((n as f64 - 1.0) / 2.0)
}

/// Smallest visibility for which `N` copies violate `|⟨Z_{2N}⟩| ≤ 1`:
/// the `N`-th root of [`modified_mermin_bound`]. Defined for `N ≥ 2` only;
/// at `N = 1` the bound exceeds one.
pub fn threshold_visibility(n_copies: usize) -> Result<f64> {
    if n_copies < 2 {
        return Err(Error::OutOfRange {
            name: "n_copies",
            value: n_copies as f64,
            range: "[2, ∞)",
        });
    }
    Ok(modified_mermin_bound(n_copies).powf(1.0 / n_copies as f64))
}

/// Large-`N` limit of [`threshold_visibility`], `2(2/π)² = 8/π²`.
pub fn asymptotic_threshold() -> f64 {
    8.0 / (PI * PI)
}

/// `|⟨Z_n⟩| ≤ 1`. A violation is the signal that no rotationally invariant
/// local realistic model reproduces the data.
pub fn zukowski_bound_check(value: f64) -> BoundVerdict {
    BoundVerdict::from_abs(value, 1.0)
}

/// `⟨Z_{2N}⟩` on `N` copies, through the Bell-Mermin value and by direct trace
/// against [`zukowski_aligned`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZukowskiExpectation {
    pub from_mermin: f64,
    pub direct_trace: f64,
}

pub fn zukowski_expectation(visibility: f64, n_copies: usize) -> Result<ZukowskiExpectation> {
    check_visibility(visibility)?;
    check_qubits(2 * n_copies)?;
    let rho = copies(visibility, n_copies)?;
    let z = zukowski_aligned(2 * n_copies)?;
    Ok(ZukowskiExpectation {
        from_mermin: zukowski_from_mermin(visibility.powi(n_copies as i32), n_copies),
        direct_trace: expectation(&rho, &z)?,
    })
}

/// A ±1-valued function on `[0, π)`, constant on `G` equal cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    values: Vec<i8>,
}

impl StepFunction {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::OutOfRange {
                name: "cells",
                value: 0.0,
                range: "[1, ∞)",
            });
        }
        if let Some(&bad) = values.iter().find(|v| v.abs() != 1) {
            return Err(Error::OutOfRange {
                name: "step value",
                value: bad as f64,
                range: "{-1, +1}",
            });
        }
        Ok(Self { values })
    }

    pub fn constant(cells: usize, value: i8) -> Result<Self> {
        Self::new(vec![value; cells])
    }

    /// `sign(cos(φ − ψ))` sampled at cell midpoints; exact when `ψ ± π/2`
    /// falls on cell boundaries.
    pub fn sign_of_cos(cells: usize, psi: f64) -> Result<Self> {
        let h = PI / cells as f64;
        Self::new(
            (0..cells)
                .map(|j| {
                    let mid = (j as f64 + 0.5) * h;
                    if (mid - psi).cos() >= 0.0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
        )
    }

    pub fn random(cells: usize, rng: &mut XorShift64Star) -> Result<Self> {
        Self::new((0..cells).map(|_| rng.sign()).collect())
    }

    pub fn cells(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }
}

/// `z′ = ∫₀^π f(φ) e^{iφ} dφ = Σⱼ fⱼ (e^{iφ_{j+1}} − e^{iφⱼ})/i`, integrated
/// exactly cell by cell.
pub fn z_prime_functional(f: &StepFunction) -> C64 {
    let g = f.cells();
    let h = PI / g as f64;
    let boundary = |j: usize| -> C64 {
        // endpoints 0, π/2, π are written exactly
        if 2 * j == g {
            C64::new(0.0, 1.0)
        } else if j == g {
            C64::new(-1.0, 0.0)
        } else {
            C64::from_polar(1.0, j as f64 * h)
        }
    };
    let mut acc = ZERO;
    let mut left = boundary(0);
    for (j, &v) in f.values().iter().enumerate() {
        let right = boundary(j + 1);
        acc += (right - left) * v as f64;
        left = right;
    }
    // divide by i
    C64::new(acc.im, -acc.re)
}

/// `S = Re ∏ₖ z′ₖ`.
pub fn s_functional(fs: &[StepFunction]) -> f64 {
    s_functional_rotated(fs, 0.0)
}

/// `S = Re(e^{−iΔ} ∏ₖ z′ₖ)`, the functional bounding the rotated operator.
pub fn s_functional_rotated(fs: &[StepFunction], delta: f64) -> f64 {
    let prod = fs
        .iter()
        .map(z_prime_functional)
        .fold(C64::from_polar(1.0, -delta), |acc, z| acc * z);
    prod.re
}

/// `(1/√(π/2))·max_ψ ∫ f cos(φ − ψ) dφ`, the norm of the projection of `f`
/// onto span{cos, sin}; equals `|z′|/√(π/2)`.
pub fn projection_norm(f: &StepFunction) -> f64 {
    z_prime_functional(f).norm() * (2.0 / PI).sqrt()
}

/// `2/√(π/2)`, the largest [`projection_norm`] of a ±1 function.
pub fn max_projection_norm() -> f64 {
    2.0 * (2.0 / PI).sqrt()
}
