//! States, local observables and correlation functions.
//!
//! Conventions used throughout the crate:
//!
//! * the σz eigenstate with eigenvalue +1 is basis index 0;
//! * party `k` occupies tensor slot `k`, party 1 leftmost (most significant
//!   bit of a basis index);
//! * σ_φ = cos φ σx + sin φ σy, so σ₀ = σx and σ_{π/2} = σy.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{ComplexMatrix, DensityMatrix, HermitianOperator, C64, I, ONE, ZERO};
use crate::tolerance::Tolerances;

/// Largest supported qubit count (matrices up to 4096 × 4096).
pub const MAX_QUBITS: usize = 12;

pub(crate) fn check_qubits(qubits: usize) -> Result<()> {
    if qubits > MAX_QUBITS {
        return Err(Error::CapExceeded {
            qubits,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

/// One of the two measurement settings used per party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Setting {
    X,
    Y,
}

impl Setting {
    pub fn phase(self) -> PhaseSetting {
        match self {
            Setting::X => PhaseSetting::X,
            Setting::Y => PhaseSetting::Y,
        }
    }

    pub fn label(self) -> char {
        match self {
            Setting::X => 'X',
            Setting::Y => 'Y',
        }
    }
}

/// Measurement angle in the xy plane, `0 ≤ φ < π`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PhaseSetting(f64);

impl PhaseSetting {
    pub const X: PhaseSetting = PhaseSetting(0.0);
    pub const Y: PhaseSetting = PhaseSetting(PI / 2.0);

    pub fn new(phi: f64) -> Result<Self> {
        if !(0.0..PI).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                range: "[0, π)",
            });
        }
        Ok(Self(phi))
    }

    pub fn phi(self) -> f64 {
        self.0
    }
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket(Vec<C64>);

impl Ket {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > Tolerances::DEFAULT.hermiticity {
            return Err(Error::OutOfRange {
                name: "ket norm",
                value: norm,
                range: "1 ± 1e-12",
            });
        }
        Ok(Self(amplitudes))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Ket) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.0, &self.0).expect("ket and bra have equal length")
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::pure(&self.0).expect("ket is normalized")
    }
}

/// `(|00⟩ + i|11⟩)/√2`, the pure state behind the noisy pair.
pub fn bell_pair() -> Ket {
    let a = C64::new(FRAC_1_SQRT_2, 0.0);
    Ket(vec![a, ZERO, ZERO, a * I])
}

/// `V |ψ⟩⟨ψ| + (1 − V) I/4`.
pub fn noisy_pair(visibility: f64) -> Result<DensityMatrix> {
    check_visibility(visibility)?;
    bell_pair()
        .density()
        .mix(visibility, &DensityMatrix::maximally_mixed(4))
}

pub(crate) fn check_visibility(v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::OutOfRange {
            name: "visibility",
            value: v,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// `N` independent copies of the noisy pair; parties `2k−1, 2k` share copy `k`.
pub fn copies(visibility: f64, n_copies: usize) -> Result<DensityMatrix> {
    if n_copies == 0 {
        return Err(Error::OutOfRange {
            name: "n_copies",
            value: 0.0,
            range: "[1, 6]",
        });
    }
    check_qubits(2 * n_copies)?;
    let pair = noisy_pair(visibility)?;
    let mut rho = pair.clone();
    for _ in 1..n_copies {
        rho = rho.tensor(&pair);
    }
    Ok(rho)
}

/// σ_φ = `e^{−iφ}|0⟩⟨1| + e^{iφ}|1⟩⟨0|`.
pub fn phase_observable(s: PhaseSetting) -> HermitianOperator {
    let m = phase_matrix(s.phi());
    HermitianOperator::new(m).expect("σ_φ is Hermitian")
}

pub(crate) fn phase_matrix(phi: f64) -> ComplexMatrix {
    // exact σy, since cos(π/2) rounds to 6e-17
    let (sin, cos) = if phi == PI / 2.0 {
        (1.0, 0.0)
    } else {
        phi.sin_cos()
    };
    ComplexMatrix::new(2, vec![ZERO, C64::new(cos, -sin), C64::new(cos, sin), ZERO])
        .expect("2x2 data")
}

/// Eigenvector of σ_φ for eigenvalue `+1` (`positive`) or `−1`:
/// `(|0⟩ ± e^{iφ}|1⟩)/√2`.
pub fn phase_eigenvector(s: PhaseSetting, positive: bool) -> Ket {
    let sign = if positive { 1.0 } else { -1.0 };
    let a = C64::new(FRAC_1_SQRT_2, 0.0);
    Ket(vec![a, a * C64::from_polar(sign, s.phi())])
}

/// Sign of a GHZ state, `|Ψ_j^±⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhzSign {
    Plus,
    Minus,
}

/// `|Ψ_j^±⟩ = (|j⟩|0⟩ ± |2^{n−1}−j−1⟩|1⟩)/√2` on `n` qubits, where `j` is
/// read as an `(n−1)`-bit number.
pub fn ghz_ket(n: usize, j: usize, sign: GhzSign) -> Result<Ket> {
    check_ghz_size(n)?;
    let half = 1usize << (n - 1);
    if j >= half {
        return Err(Error::OutOfRange {
            name: "j",
            value: j as f64,
            range: "[0, 2^(n-1))",
        });
    }
    let dim = 1usize << n;
    let mut amps = vec![ZERO; dim];
    let a = FRAC_1_SQRT_2;
    amps[2 * j] = C64::new(a, 0.0);
    let s = match sign {
        GhzSign::Plus => a,
        GhzSign::Minus => -a,
    };
    amps[2 * (half - j - 1) + 1] = C64::new(s, 0.0);
    Ok(Ket(amps))
}

/// All `2ⁿ` GHZ states ordered `(0,+), (0,−), (1,+), (1,−), …`.
pub fn ghz_basis(n: usize) -> Result<Vec<Ket>> {
    check_ghz_size(n)?;
    let half = 1usize << (n - 1);
    let mut out = Vec::with_capacity(2 * half);
    for j in 0..half {
        out.push(ghz_ket(n, j, GhzSign::Plus)?);
        out.push(ghz_ket(n, j, GhzSign::Minus)?);
    }
    Ok(out)
}

/// `(|0ⁿ⟩ ± e^{iθ}|1ⁿ⟩)/√2`. With `θ = 0` these are `|Ψ₀^±⟩`.
pub fn ghz_zero_pair(n: usize, relative_phase: f64) -> Result<(Ket, Ket)> {
    check_ghz_size(n)?;
    let dim = 1usize << n;
    let a = C64::new(FRAC_1_SQRT_2, 0.0);
    let w = C64::from_polar(FRAC_1_SQRT_2, relative_phase);
    let mut plus = vec![ZERO; dim];
    let mut minus = vec![ZERO; dim];
    plus[0] = a;
    minus[0] = a;
    plus[dim - 1] = w;
    minus[dim - 1] = -w;
    Ok((Ket(plus), Ket(minus)))
}

/// The two-to-one labelling `g(β)` of GHZ states by party subsets.
///
/// `β` is given as a list of 1-based party indices. With `l_m = 1` for
/// `m ∈ β` and `j(β)` the number written `l₁⋯l_{n−1}`, the label is `j(β)`
/// when `l_n = 0` and `2^{n−1} − j(β) − 1` otherwise.
pub fn ghz_label_of_subset(n: usize, subset: &[usize]) -> Result<usize> {
    check_ghz_size(n)?;
    let mut bits = 0usize;
    for &m in subset {
        if m == 0 || m > n {
            return Err(Error::OutOfRange {
                name: "party",
                value: m as f64,
                range: "[1, n]",
            });
        }
        bits |= 1 << (n - m);
    }
    let j = bits >> 1;
    Ok(if bits & 1 == 0 {
        j
    } else {
        (1 << (n - 1)) - j - 1
    })
}

fn check_ghz_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            range: "[2, 12]",
        });
    }
    check_qubits(n)
}

/// `tr[ρ ⊗ₖ σ_{φᵏ}]`.
///
/// `⊗ₖσ_{φᵏ}` has exactly one nonzero per row, at the bitwise complement of
/// the row index, so the trace is a single pass over the anti-diagonal of ρ.
pub fn correlation(rho: &DensityMatrix, settings: &[PhaseSetting]) -> Result<f64> {
    let n = settings.len();
    match rho.qubits() {
        Some(q) if q == n && n >= 1 => {}
        _ => {
            return Err(Error::DimensionMismatch {
                expected: rho.dim(),
                got: 1usize.checked_shl(n as u32).unwrap_or(0),
            })
        }
    }
    let phases: Vec<C64> = settings
        .iter()
        .map(|s| C64::from_polar(1.0, s.phi()))
        .collect();
    let m = rho.matrix();
    let dim = m.dim();
    let mask = dim - 1;
    let mut acc = ZERO;
    for j in 0..dim {
        // ⟨j|⊗σ|j̄⟩: a factor e^{−iφ} where bit k of j is 0, e^{iφ} where it is 1.
        let mut o = ONE;
        for (k, p) in phases.iter().enumerate() {
            let bit = (j >> (n - 1 - k)) & 1;
            o *= if bit == 0 { p.conj() } else { *p };
        }
        acc += m[(j ^ mask, j)] * o;
    }
    let value = acc.re;
    if value.abs() > 1.0 + Tolerances::DEFAULT.comparison {
        return Err(Error::OutOfRange {
            name: "correlation",
            value,
            range: "[-1, 1]",
        });
    }
    Ok(value)
}

/// Correlations for every X/Y setting tuple, `2ⁿ` entries.
///
/// Entries are indexed by reading a tuple as a binary number with `X = 0`,
/// `Y = 1` and party 1 as the most significant digit, which is also the
/// lexicographic order of the keys `"XX…X" < … < "YY…Y"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, f64>", into = "BTreeMap<String, f64>")]
pub struct CorrelationTable {
    parties: usize,
    values: Vec<f64>,
}

impl CorrelationTable {
    pub fn new(parties: usize, values: Vec<f64>) -> Result<Self> {
        if parties == 0 || parties > MAX_QUBITS {
            return Err(Error::InvalidTable(format!(
                "party count {parties} outside [1, {MAX_QUBITS}]"
            )));
        }
        if values.len() != 1 << parties {
            return Err(Error::InvalidTable(format!(
                "{} entries for {parties} parties, expected {}",
                values.len(),
                1usize << parties
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v.abs() > 1.0 + Tolerances::DEFAULT.comparison {
                return Err(Error::InvalidTable(format!(
                    "entry {} = {v} outside [-1, 1]",
                    key_of(parties, i)
                )));
            }
        }
        Ok(Self { parties, values })
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, settings: &[Setting]) -> Option<f64> {
        if settings.len() != self.parties {
            return None;
        }
        let idx = settings
            .iter()
            .fold(0usize, |acc, s| (acc << 1) | (*s == Setting::Y) as usize);
        self.values.get(idx).copied()
    }

    pub fn get_key(&self, key: &str) -> Option<f64> {
        let settings = parse_key(key)?;
        self.get(&settings)
    }

    pub fn iter(&self) -> impl Iterator<Item = (String, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (key_of(self.parties, i), v))
    }

    /// `w·self + (1 − w)·other`.
    pub fn mix(&self, weight: f64, other: &Self) -> Result<Self> {
        if self.parties != other.parties {
            return Err(Error::InvalidTable(
                "mixing tables of different size".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| weight * a + (1.0 - weight) * b)
            .collect();
        Self::new(self.parties, values)
    }
}

/// Setting string for table index `idx`, e.g. `"XYX"`.
pub fn key_of(parties: usize, idx: usize) -> String {
    (0..parties)
        .map(|k| {
            if (idx >> (parties - 1 - k)) & 1 == 0 {
                'X'
            } else {
                'Y'
            }
        })
        .collect()
}

fn parse_key(key: &str) -> Option<Vec<Setting>> {
    key.chars()
        .map(|c| match c {
            'X' => Some(Setting::X),
            'Y' => Some(Setting::Y),
            _ => None,
        })
        .collect()
}

impl TryFrom<BTreeMap<String, f64>> for CorrelationTable {
    type Error = Error;

    fn try_from(map: BTreeMap<String, f64>) -> Result<Self> {
        let parties = map
            .keys()
            .next()
            .map(|k| k.len())
            .ok_or_else(|| Error::InvalidTable("empty table".into()))?;
        if parties == 0 || parties > MAX_QUBITS {
            return Err(Error::InvalidTable(format!(
                "key length {parties} unsupported"
            )));
        }
        let mut values = vec![f64::NAN; 1 << parties];
        for (key, v) in &map {
            let settings = parse_key(key)
                .filter(|s| s.len() == parties)
                .ok_or_else(|| Error::InvalidTable(format!("bad key {key:?}")))?;
            let idx = settings
                .iter()
                .fold(0usize, |acc, s| (acc << 1) | (*s == Setting::Y) as usize);
            values[idx] = *v;
        }
        if map.len() != values.len() {
            return Err(Error::InvalidTable(format!(
                "{} entries for {parties} parties, expected {}",
                map.len(),
                values.len()
            )));
        }
        Self::new(parties, values)
    }
}

impl From<CorrelationTable> for BTreeMap<String, f64> {
    fn from(t: CorrelationTable) -> Self {
        t.iter().collect()
    }
}

impl fmt::Display for CorrelationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.iter() {
            writeln!(f, "{k} {v:+.12}")?;
        }
        Ok(())
    }
}

/// All X/Y correlations of an `n`-qubit state.
pub fn full_correlation_table(rho: &DensityMatrix, n: usize) -> Result<CorrelationTable> {
    check_qubits(n)?;
    if rho.qubits() != Some(n) {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: 1 << n,
        });
    }
    let mut values = Vec::with_capacity(1 << n);
    let mut settings = vec![PhaseSetting::X; n];
    for idx in 0..1usize << n {
        for (k, s) in settings.iter_mut().enumerate() {
            *s = if (idx >> (n - 1 - k)) & 1 == 0 {
                PhaseSetting::X
            } else {
                PhaseSetting::Y
            };
        }
        values.push(correlation(rho, &settings)?);
    }
    CorrelationTable::new(n, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{expectation, tensor};

    const X: PhaseSetting = PhaseSetting::X;
    const Y: PhaseSetting = PhaseSetting::Y;

    fn pauli(s: PhaseSetting) -> ComplexMatrix {
        phase_observable(s).into_matrix()
    }

    #[test]
    fn bell_pair_correlators() {
        let psi = bell_pair();
        assert!((psi.norm() - 1.0).abs() < 1e-15);
        let rho = psi.density();
        let xy = HermitianOperator::new(tensor(&pauli(X), &pauli(Y))).unwrap();
        let xx = HermitianOperator::new(tensor(&pauli(X), &pauli(X))).unwrap();
        assert!((expectation(&rho, &xy).unwrap() - 1.0).abs() < 1e-15);
        assert!(expectation(&rho, &xx).unwrap().abs() < 1e-15);
    }

    #[test]
    fn noisy_pair_endpoints() {
        let rho = noisy_pair(0.0).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed(4).matrix())
                .unwrap()
                < 1e-15
        );
        let rho = noisy_pair(1.0).unwrap();
        assert!(rho.matrix().max_abs_diff(&bell_pair().projector()).unwrap() < 1e-15);
        let rho = noisy_pair(0.5).unwrap();
        assert!((correlation(&rho, &[X, Y]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn noisy_pair_rejects_out_of_range() {
        assert!(noisy_pair(-0.01).is_err());
        assert!(noisy_pair(1.01).is_err());
        assert!(noisy_pair(f64::NAN).is_err());
    }

    #[test]
    fn copies_basics() {
        assert_eq!(copies(0.7, 1).unwrap(), noisy_pair(0.7).unwrap());
        let mixed = copies(0.0, 2).unwrap();
        assert!(
            mixed
                .matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed(16).matrix())
                .unwrap()
                < 1e-15
        );
        assert!((copies(0.9, 2).unwrap().matrix().trace().re - 1.0).abs() < 1e-14);
        assert!(matches!(copies(0.9, 7), Err(Error::CapExceeded { .. })));
        assert!(copies(0.9, 0).is_err());
    }

    #[test]
    fn phase_observable_at_x_and_y() {
        assert!(pauli(X).max_abs_diff(&ComplexMatrix::pauli_x()).unwrap() < 1e-15);
        assert!(pauli(Y).max_abs_diff(&ComplexMatrix::pauli_y()).unwrap() < 1e-15);
    }

    #[test]
    fn phase_eigenvectors() {
        for phi in [0.0, 0.3, 1.2, 2.9] {
            let s = PhaseSetting::new(phi).unwrap();
            let m = pauli(s);
            for (positive, eig) in [(true, 1.0), (false, -1.0)] {
                let v = phase_eigenvector(s, positive);
                let mv: Vec<C64> = (0..2)
                    .map(|i| (0..2).map(|j| m[(i, j)] * v.amplitudes()[j]).sum())
                    .collect();
                for i in 0..2 {
                    assert!((mv[i] - v.amplitudes()[i] * eig).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn phase_setting_range() {
        assert!(PhaseSetting::new(0.0).is_ok());
        assert!(PhaseSetting::new(PI).is_err());
        assert!(PhaseSetting::new(-1e-9).is_err());
    }

    #[test]
    fn ghz_small_cases() {
        let a = FRAC_1_SQRT_2;
        let plus = ghz_ket(2, 0, GhzSign::Plus).unwrap();
        assert_eq!(plus.amplitudes()[0b00], C64::new(a, 0.0));
        assert_eq!(plus.amplitudes()[0b11], C64::new(a, 0.0));
        let minus = ghz_ket(2, 0, GhzSign::Minus).unwrap();
        assert_eq!(minus.amplitudes()[0b11], C64::new(-a, 0.0));

        // j = 1 on three qubits: |01⟩|0⟩ ± |10⟩|1⟩
        let k = ghz_ket(3, 1, GhzSign::Minus).unwrap();
        let nonzero: Vec<usize> = (0..8).filter(|&i| k.amplitudes()[i] != ZERO).collect();
        assert_eq!(nonzero, vec![0b010, 0b101]);
        assert_eq!(k.amplitudes()[0b101], C64::new(-a, 0.0));
    }

    #[test]
    fn ghz_size_limits() {
        assert!(ghz_basis(1).is_err());
        assert!(ghz_basis(13).is_err());
        assert_eq!(ghz_basis(5).unwrap().len(), 32);
    }

    #[test]
    fn ghz_labels_of_subsets() {
        // Empty set and the full set both label j = 0.
        assert_eq!(ghz_label_of_subset(3, &[]).unwrap(), 0);
        assert_eq!(ghz_label_of_subset(3, &[1, 2, 3]).unwrap(), 0);
        // {2} → l = 010, even, j = 01.
        assert_eq!(ghz_label_of_subset(3, &[2]).unwrap(), 1);
        // {1, 3} → l = 101, odd, j = 10, 2² − 2 − 1 = 1.
        assert_eq!(ghz_label_of_subset(3, &[1, 3]).unwrap(), 1);
        assert!(ghz_label_of_subset(3, &[4]).is_err());
    }

    #[test]
    fn correlation_on_copies() {
        let v: f64 = 0.73;
        let rho = copies(v, 2).unwrap();
        assert!((correlation(&rho, &[X, Y, X, Y]).unwrap() - v * v).abs() < 1e-14);
        assert!(correlation(&rho, &[X, X, X, Y]).unwrap().abs() < 1e-14);
        assert!(correlation(&rho, &[X, Y]).is_err());
    }

    #[test]
    fn correlation_matches_dense_trace() {
        let rho = copies(0.6, 2).unwrap();
        let settings = [0.1, 1.0, 2.0, 3.0].map(|p| PhaseSetting::new(p).unwrap());
        let op = settings
            .iter()
            .map(|s| pauli(*s))
            .reduce(|a, b| tensor(&a, &b))
            .unwrap();
        let dense = expectation(&rho, &HermitianOperator::new(op).unwrap()).unwrap();
        assert!((correlation(&rho, &settings).unwrap() - dense).abs() < 1e-14);
    }

    #[test]
    fn pair_table() {
        let v = 0.4;
        let t = full_correlation_table(&noisy_pair(v).unwrap(), 2).unwrap();
        let keys: Vec<String> = t.iter().map(|(k, _)| k).collect();
        assert_eq!(keys, ["XX", "XY", "YX", "YY"]);
        assert!(t.get_key("XX").unwrap().abs() < 1e-15);
        assert!((t.get_key("XY").unwrap() - v).abs() < 1e-15);
        assert!((t.get_key("YX").unwrap() - v).abs() < 1e-15);
        assert!(t.get_key("YY").unwrap().abs() < 1e-15);

        let zero = full_correlation_table(&noisy_pair(0.0).unwrap(), 2).unwrap();
        assert!(zero.values().iter().all(|e| e.abs() < 1e-15));
    }

    #[test]
    fn table_json_roundtrip_and_validation() {
        let t = CorrelationTable::new(2, vec![0.0, 0.5, 0.5, 0.0]).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"XX":0.0,"XY":0.5,"YX":0.5,"YY":0.0}"#);
        let back: CorrelationTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);

        for bad in [
            r#"{"XX":0.0,"XY":0.5,"YX":0.5}"#,
            r#"{"XX":0.0,"XY":0.5,"YX":0.5,"YZ":0.0}"#,
            r#"{"XX":0.0,"XY":1.5,"YX":0.5,"YY":0.0}"#,
            r#"{"XX":0.0,"XY":0.5,"YX":0.5,"YYY":0.0}"#,
            r#"{}"#,
        ] {
            assert!(
                serde_json::from_str::<CorrelationTable>(bad).is_err(),
                "{bad}"
            );
        }
    }
}
