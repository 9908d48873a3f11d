//! Bell-Mermin operators.
//!
//! A pair `(B_α, B′_α)` on a set of sites `α` is characterised by
//! `f(B_α, B′_α) = ⊗_{k∈α} f(A_k, A′_k)` with
//! `f(x, y) = e^{−iπ/4}(x + iy)/√2`. Inverting `f` gives
//! `x = ℜf − ℑf`, `y = ℜf + ℑf`, where `ℜ`/`ℑ` are the Hermitian parts
//! returned by [`hermitian_split`].

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::operator::{
    expectation, hermitian_split, tensor, ComplexMatrix, HermitianOperator, C64, ZERO,
};
use crate::state::{
    check_qubits, check_visibility, copies, ghz_zero_pair, phase_observable, PhaseSetting,
};
use crate::tolerance::{BoundVerdict, Tolerances};

/// `e^{−iπ/4}/√2`
fn f_prefactor() -> C64 {
    C64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4)
}

/// `f(a, a′) = e^{−iπ/4}(a + i a′)/√2`.
pub fn local_f(a: &HermitianOperator, a_prime: &HermitianOperator) -> Result<ComplexMatrix> {
    if a.dim() != a_prime.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: a_prime.dim(),
        });
    }
    let sum = a.matrix() + &a_prime.matrix().scale(C64::new(0.0, 1.0));
    Ok(sum.scale(f_prefactor()))
}

/// Recovers `(x, y)` from `F = f(x, y)`.
pub fn invert_f(f: &ComplexMatrix) -> (HermitianOperator, HermitianOperator) {
    let (re, im) = hermitian_split(f);
    (re.combine(1.0, &im, -1.0), re.combine(1.0, &im, 1.0))
}

/// Bell-Mermin operators `B_α`, `B′_α` on the sites `α` (1-based, in
/// tensor order).
#[derive(Debug, Clone, PartialEq)]
pub struct MerminPair {
    pub b: HermitianOperator,
    pub b_prime: HermitianOperator,
    pub parties: Vec<usize>,
}

impl MerminPair {
    /// Single-site pair: `B_{k} = A_k`, `B′_{k} = A′_k`.
    pub fn single(site: usize, a: HermitianOperator, a_prime: HermitianOperator) -> Result<Self> {
        if a.dim() != a_prime.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: a_prime.dim(),
            });
        }
        Ok(Self {
            b: a,
            b_prime: a_prime,
            parties: vec![site],
        })
    }

    /// `A = σx`, `A′ = σy` at `site`.
    pub fn xy(site: usize) -> Self {
        Self::single(
            site,
            phase_observable(PhaseSetting::X),
            phase_observable(PhaseSetting::Y),
        )
        .expect("σx and σy are both 2x2")
    }

    /// `f(B, B′)` of this pair.
    pub fn f_value(&self) -> ComplexMatrix {
        local_f(&self.b, &self.b_prime).expect("B and B′ share a dimension")
    }
}

/// Merges pairs on disjoint site sets, `alpha` occupying the left tensor slots:
///
/// ```text
/// B_{α∪β}  = ½ B_α ⊗ (B_β + B′_β) + ½ B′_α ⊗ (B_β − B′_β)
/// B′_{α∪β} = ½ B′_α ⊗ (B′_β + B_β) + ½ B_α ⊗ (B′_β − B_β)
/// ```
pub fn compose(alpha: &MerminPair, beta: &MerminPair) -> Result<MerminPair> {
    if let Some(&site) = alpha.parties.iter().find(|s| beta.parties.contains(s)) {
        return Err(Error::OverlappingParties(site));
    }
    let (ba, bpa) = (alpha.b.matrix(), alpha.b_prime.matrix());
    let (bb, bpb) = (beta.b.matrix(), beta.b_prime.matrix());
    let plus = bb + bpb;
    let minus = bb - bpb;
    let b = &(&tensor(ba, &plus) + &tensor(bpa, &minus)) * 0.5;
    let b_prime = &(&tensor(bpa, &plus) - &tensor(ba, &minus)) * 0.5;
    let mut parties = alpha.parties.clone();
    parties.extend_from_slice(&beta.parties);
    Ok(MerminPair {
        b: HermitianOperator::new(b)?,
        b_prime: HermitianOperator::new(b_prime)?,
        parties,
    })
}

/// Largest entry of `f(B, B′) − ⊗_k f(A_k, A′_k)`.
pub fn f_consistency_defect(pair: &MerminPair, locals: &[MerminPair]) -> Result<f64> {
    let product = locals
        .iter()
        .map(MerminPair::f_value)
        .reduce(|acc, f| tensor(&acc, &f))
        .ok_or(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        })?;
    pair.f_value().max_abs_diff(&product)
}

fn check_party_count(n_parties: usize) -> Result<()> {
    if n_parties < 2 || !n_parties.is_multiple_of(2) {
        return Err(Error::OutOfRange {
            name: "n_parties",
            value: n_parties as f64,
            range: "even, [2, 12]",
        });
    }
    check_qubits(n_parties)
}

/// `(B, B′)` for `n_parties` sites measuring σx/σy, folded left to right
/// over the singletons `{1}, {2}, …`.
pub fn mermin_operators(n_parties: usize) -> Result<MerminPair> {
    check_party_count(n_parties)?;
    let mut acc = MerminPair::xy(1);
    for site in 2..=n_parties {
        acc = compose(&acc, &MerminPair::xy(site))?;
    }
    Ok(acc)
}

/// `2^{(n−1)/2}(|Ψ₀⁺⟩⟨Ψ₀⁺| − |Ψ₀⁻⟩⟨Ψ₀⁻|)` with computational-basis GHZ states.
pub fn mermin_closed_form(n_parties: usize) -> Result<HermitianOperator> {
    mermin_closed_form_phased(n_parties, 0.0)
}

/// Closed form written in the GHZ pair `(|0ⁿ⟩ ± e^{iθ}|1ⁿ⟩)/√2`; its
/// `|0ⁿ⟩⟨1ⁿ|` entry carries the phase `e^{−iθ}`.
pub fn mermin_closed_form_phased(n_parties: usize, theta: f64) -> Result<HermitianOperator> {
    check_party_count(n_parties)?;
    let (plus, minus) = ghz_zero_pair(n_parties, theta)?;
    let scale = 2f64.powf((n_parties as f64 - 1.0) / 2.0);
    let m = &(&plus.projector() - &minus.projector()) * scale;
    HermitianOperator::new(m)
}

/// Phase of the `|0ⁿ⟩⟨1ⁿ|` entry of the recursive `B`, i.e. `e^{−iθ}` in
/// [`mermin_closed_form_phased`]. Analytically `θ = (n−1)π/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAlignment {
    /// `θ`, reduced to `(−π, π]`.
    pub theta: f64,
    /// Max entry difference between recursive `B` and the aligned closed form.
    pub max_entry_error: f64,
}

impl PhaseAlignment {
    /// The value `θ` must take for `n` parties, reduced to `(−π, π]`.
    pub fn expected_theta(n_parties: usize) -> f64 {
        wrap_phase((n_parties as f64 - 1.0) * FRAC_PI_4)
    }
}

pub(crate) fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Measures the global phase relating the recursive `B` to the GHZ closed
/// form and reports the entrywise error after alignment.
pub fn align_closed_form(pair: &MerminPair) -> Result<PhaseAlignment> {
    let b = pair.b.matrix();
    let n = pair.parties.len();
    let corner = b[(0, b.dim() - 1)];
    if corner == ZERO {
        return Err(Error::SolverFailure(
            "recursive B has no GHZ coherence".into(),
        ));
    }
    let theta = wrap_phase(-corner.arg());
    let closed = mermin_closed_form_phased(n, theta)?;
    Ok(PhaseAlignment {
        theta,
        max_entry_error: b.max_abs_diff(closed.matrix())?,
    })
}

/// `⟨B⟩` on `N` copies of the noisy pair, analytically and by trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MerminExpectation {
    /// `V^N`.
    pub analytic: f64,
    /// `tr[ρ^{⊗N} B]`.
    pub matrix_b: f64,
    /// `tr[ρ^{⊗N} B′]`.
    pub matrix_b_prime: f64,
}

impl MerminExpectation {
    pub fn max_disagreement(&self) -> f64 {
        (self.analytic - self.matrix_b)
            .abs()
            .max((self.analytic - self.matrix_b_prime).abs())
    }
}

pub fn mermin_expectation(visibility: f64, n_copies: usize) -> Result<MerminExpectation> {
    check_visibility(visibility)?;
    if n_copies == 0 {
        return Err(Error::OutOfRange {
            name: "n_copies",
            value: 0.0,
            range: "[1, 6]",
        });
    }
    check_qubits(2 * n_copies)?;
    let rho = copies(visibility, n_copies)?;
    let pair = mermin_operators(2 * n_copies)?;
    let out = MerminExpectation {
        analytic: visibility.powi(n_copies as i32),
        matrix_b: expectation(&rho, &pair.b)?,
        matrix_b_prime: expectation(&rho, &pair.b_prime)?,
    };
    if out.max_disagreement() > Tolerances::DEFAULT.comparison {
        return Err(Error::SolverFailure(format!(
            "⟨B⟩ disagrees with V^N: {out:?}"
        )));
    }
    Ok(out)
}

/// `|⟨B⟩| ≤ 1`.
pub fn mermin_bound_check(value: f64) -> BoundVerdict {
    BoundVerdict::from_abs(value, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::spectral_check;
    use crate::state::noisy_pair;

    fn sx() -> HermitianOperator {
        phase_observable(PhaseSetting::X)
    }

    fn sy() -> HermitianOperator {
        phase_observable(PhaseSetting::Y)
    }

    #[test]
    fn local_f_of_x_and_y() {
        let f = local_f(&sx(), &sy()).unwrap();
        let expected = C64::from_polar(2f64.sqrt(), -FRAC_PI_4);
        assert!((f[(0, 1)] - expected).norm() < 1e-15);
        assert_eq!(f[(0, 0)], ZERO);
        assert_eq!(f[(1, 0)], ZERO);
        assert_eq!(f[(1, 1)], ZERO);
    }

    #[test]
    fn local_f_of_identities_is_identity() {
        let id = HermitianOperator::new(ComplexMatrix::identity(2)).unwrap();
        let f = local_f(&id, &id).unwrap();
        assert!(f.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-15);
    }

    #[test]
    fn f_is_invertible() {
        let (x, y) = invert_f(&local_f(&sx(), &sy()).unwrap());
        assert!(x.matrix().max_abs_diff(sx().matrix()).unwrap() < 1e-15);
        assert!(y.matrix().max_abs_diff(sy().matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn two_site_compose_matches_substitution() {
        let pair = compose(&MerminPair::xy(1), &MerminPair::xy(2)).unwrap();
        let (x, y) = (sx().into_matrix(), sy().into_matrix());
        let expected = &(&tensor(&x, &(&x + &y)) + &tensor(&y, &(&x - &y))) * 0.5;
        assert!(pair.b.matrix().max_abs_diff(&expected).unwrap() < 1e-15);
        assert_eq!(pair.parties, vec![1, 2]);
    }

    #[test]
    fn compose_rejects_overlap() {
        let a = compose(&MerminPair::xy(1), &MerminPair::xy(2)).unwrap();
        assert_eq!(
            compose(&a, &MerminPair::xy(2)),
            Err(Error::OverlappingParties(2))
        );
    }

    #[test]
    fn compose_on_product_state_factorizes() {
        let (a, b) = (MerminPair::xy(1), MerminPair::xy(2));
        let ab = compose(&a, &b).unwrap();
        let ra = crate::state::Ket::new(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)])
            .unwrap()
            .density();
        let rb = crate::state::phase_eigenvector(PhaseSetting::new(0.4).unwrap(), true).density();
        let rho = ra.tensor(&rb);
        let ea = expectation(&ra, &a.b).unwrap();
        let epa = expectation(&ra, &a.b_prime).unwrap();
        let eb = expectation(&rb, &b.b).unwrap();
        let epb = expectation(&rb, &b.b_prime).unwrap();
        let lhs = expectation(&rho, &ab.b).unwrap();
        assert!((lhs - (0.5 * ea * (eb + epb) + 0.5 * epa * (eb - epb))).abs() < 1e-14);
    }

    #[test]
    fn two_party_spectrum() {
        let pair = mermin_operators(2).unwrap();
        let s = spectral_check(pair.b.matrix()).unwrap();
        let r2 = 2f64.sqrt();
        let expected = [-r2, 0.0, 0.0, r2];
        for (got, want) in s.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-13, "{:?}", s.eigenvalues);
        }
    }

    #[test]
    fn f_of_full_pair_is_ghz_coherence() {
        for n in [2, 4] {
            let pair = mermin_operators(n).unwrap();
            let f = pair.f_value();
            let dim = 1 << n;
            let corner = C64::from_polar(2f64.powi(n as i32 / 2), -(n as f64) * PI / 4.0);
            let expected =
                ComplexMatrix::from_fn(
                    dim,
                    |i, j| if (i, j) == (0, dim - 1) { corner } else { ZERO },
                );
            assert!(f.max_abs_diff(&expected).unwrap() < 1e-12);
        }
    }

    #[test]
    fn closed_form_two_parties() {
        let c = mermin_closed_form(2).unwrap();
        let r = 2f64.sqrt();
        assert!((c.matrix()[(0, 3)] - C64::new(r, 0.0)).norm() < 1e-15);
        assert!((c.matrix()[(3, 0)] - C64::new(r, 0.0)).norm() < 1e-15);
        assert!(c.matrix().trace().norm() < 1e-15);
        let s = spectral_check(c.matrix()).unwrap();
        assert!((s.max() - r).abs() < 1e-14);
    }

    #[test]
    fn alignment_phase_is_n_minus_one_quarter_turns() {
        for n in [2, 4, 6] {
            let al = align_closed_form(&mermin_operators(n).unwrap()).unwrap();
            assert!(
                (al.theta - PhaseAlignment::expected_theta(n)).abs() < 1e-12,
                "n={n}"
            );
            assert!(al.max_entry_error < 1e-10);
        }
    }

    #[test]
    fn expectation_small_cases() {
        let e = mermin_expectation(1.0, 1).unwrap();
        assert!((e.matrix_b - 1.0).abs() < 1e-12);
        let e = mermin_expectation(0.8, 2).unwrap();
        assert!((e.analytic - 0.64).abs() < 1e-15);
        assert!((e.matrix_b - 0.64).abs() < 1e-10);
        for n in 1..=3 {
            assert!(mermin_expectation(0.0, n).unwrap().matrix_b.abs() < 1e-12);
        }
        assert!(mermin_expectation(1.2, 1).is_err());
        assert!(mermin_expectation(0.5, 7).is_err());
    }

    #[test]
    fn pair_b_on_noisy_pair() {
        let pair = mermin_operators(2).unwrap();
        let e = expectation(&noisy_pair(0.3).unwrap(), &pair.b).unwrap();
        assert!((e - 0.3).abs() < 1e-14);
    }

    #[test]
    fn bound_check() {
        assert!(mermin_bound_check(0.9).is_satisfied());
        assert!(mermin_bound_check(-1.0).is_satisfied());
        assert!(!mermin_bound_check(1.05).is_satisfied());
        for i in 0..=20 {
            let v = i as f64 / 20.0;
            assert!(mermin_bound_check(v.powi(3)).is_satisfied());
        }
    }

    #[test]
    fn odd_or_oversized_party_counts_rejected() {
        assert!(mermin_operators(3).is_err());
        assert!(mermin_operators(0).is_err());
        assert!(mermin_operators(14).is_err());
    }
}
