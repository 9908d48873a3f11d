//! Local hidden variable oracle for two-setting, full-correlation data.
//!
//! A table of `2ⁿ` correlations `E(x₁…xₙ)` is reproducible by a local
//! realistic model exactly when it lies in the convex hull of the tables of
//! deterministic strategies (each party holding predetermined ±1 answers for
//! X and Y). Two independent routes decide this:
//!
//! * [`lhv_feasible`] solves the membership LP over all `4ⁿ` strategies;
//! * [`complete_set_check`] evaluates the complete set of two-setting
//!   inequalities, `Σ_s |Ê(s)| ≤ 2ⁿ`, through a sign transform over the
//!   hypercube.

pub mod simplex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{key_of, CorrelationTable, Setting};
use crate::tolerance::{BoundVerdict, Tolerances};
use simplex::{phase1, Phase1};

/// Largest party count accepted by [`lhv_feasible`] (`4⁶` LP columns).
pub const MAX_LP_PARTIES: usize = 6;
/// Largest party count accepted by [`enumerate_strategies`].
pub const MAX_ENUM_PARTIES: usize = 8;

/// The four two-party combinations, each bounded by 2 for local models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FineQuadruple {
    /// `|xx − yy + xy + yx|`, `|xx + yy − xy + yx|`,
    /// `|xx + yy + xy − yx|`, `|xx − yy − xy − yx|`.
    pub values: [f64; 4],
    pub verdict: BoundVerdict,
}

impl FineQuadruple {
    /// Index of the largest combination.
    pub fn most_violated(&self) -> usize {
        (0..4)
            .max_by(|&a, &b| self.values[a].total_cmp(&self.values[b]).then(b.cmp(&a)))
            .expect("four entries")
    }
}

pub fn fine_quadruple(e_xx: f64, e_yy: f64, e_xy: f64, e_yx: f64) -> FineQuadruple {
    let values = [
        (e_xx - e_yy + e_xy + e_yx).abs(),
        (e_xx + e_yy - e_xy + e_yx).abs(),
        (e_xx + e_yy + e_xy - e_yx).abs(),
        (e_xx - e_yy - e_xy - e_yx).abs(),
    ];
    let worst = values.iter().copied().fold(0.0, f64::max);
    FineQuadruple {
        values,
        verdict: BoundVerdict::from_abs(worst, 2.0),
    }
}

/// The quadruple of a two-party table.
pub fn fine_quadruple_of(table: &CorrelationTable) -> Result<FineQuadruple> {
    if table.parties() != 2 {
        return Err(Error::InvalidTable(format!(
            "Fine quadruple needs 2 parties, got {}",
            table.parties()
        )));
    }
    let v = table.values();
    // index order XX, XY, YX, YY
    Ok(fine_quadruple(v[0], v[3], v[1], v[2]))
}

/// Predetermined answers `(at X, at Y)` for every party.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DeterministicStrategy {
    outcomes: Vec<[i8; 2]>,
}

impl DeterministicStrategy {
    pub fn new(outcomes: Vec<[i8; 2]>) -> Result<Self> {
        if outcomes.iter().flatten().any(|o| o.abs() != 1) {
            return Err(Error::InvalidTable("strategy outcomes must be ±1".into()));
        }
        Ok(Self { outcomes })
    }

    /// Strategy number `idx` in lexicographic order (`−1 < +1`).
    fn from_index(parties: usize, idx: usize) -> Self {
        let outcomes = (0..parties)
            .map(|k| {
                let digit = (idx >> (2 * (parties - 1 - k))) & 3;
                let pm = |bit: usize| if bit == 0 { -1 } else { 1 };
                [pm(digit >> 1), pm(digit & 1)]
            })
            .collect();
        Self { outcomes }
    }

    pub fn parties(&self) -> usize {
        self.outcomes.len()
    }

    pub fn outcome(&self, party: usize, setting: Setting) -> i8 {
        self.outcomes[party][setting as usize]
    }

    pub fn outcomes(&self) -> &[[i8; 2]] {
        &self.outcomes
    }

    /// `E(x) = ∏ₖ oₖ(xₖ)` for table index `x`.
    fn correlation_at(&self, idx: usize) -> f64 {
        let n = self.outcomes.len();
        let mut prod = 1i8;
        for (k, o) in self.outcomes.iter().enumerate() {
            prod *= o[(idx >> (n - 1 - k)) & 1];
        }
        prod as f64
    }
}

/// All `4ⁿ` deterministic strategies in lexicographic order.
pub fn enumerate_strategies(n: usize) -> Result<Vec<DeterministicStrategy>> {
    if n == 0 || n > MAX_ENUM_PARTIES {
        return Err(Error::CapExceeded {
            qubits: n,
            cap: MAX_ENUM_PARTIES,
        });
    }
    Ok((0..1usize << (2 * n))
        .map(|i| DeterministicStrategy::from_index(n, i))
        .collect())
}

pub fn strategy_correlations(s: &DeterministicStrategy) -> CorrelationTable {
    let n = s.parties();
    let values = (0..1usize << n).map(|i| s.correlation_at(i)).collect();
    CorrelationTable::new(n, values).expect("±1 entries form a valid table")
}

/// Evidence attached to a feasibility verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Weights over [`enumerate_strategies`] reproducing the table.
    Distribution(Vec<f64>),
    /// `Σₓ coefficients[x]·E(x) ≤ bound` holds for every local model but
    /// the table reaches `value > bound`.
    Inequality {
        coefficients: Vec<f64>,
        bound: f64,
        value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub witness: Witness,
    /// Feasible: max reconstruction error. Infeasible: phase-1 optimum
    /// (ℓ₁ distance of the constraint residual).
    pub residual: f64,
}

impl FeasibilityVerdict {
    /// Nonzero weights, as `(strategy index, weight)`.
    pub fn support(&self) -> Vec<(usize, f64)> {
        match &self.witness {
            Witness::Distribution(p) => p
                .iter()
                .enumerate()
                .filter(|(_, w)| **w > 1e-12)
                .map(|(i, w)| (i, *w))
                .collect(),
            Witness::Inequality { .. } => Vec::new(),
        }
    }
}

/// Membership of the table in the full-correlation local polytope, by LP.
pub fn lhv_feasible(table: &CorrelationTable) -> Result<FeasibilityVerdict> {
    let n = table.parties();
    if n > MAX_LP_PARTIES {
        return Err(Error::CapExceeded {
            qubits: n,
            cap: MAX_LP_PARTIES,
        });
    }
    let strategies = enumerate_strategies(n)?;
    let rows = 1usize << n;
    let mut a: Vec<Vec<f64>> = (0..rows)
        .map(|x| strategies.iter().map(|s| s.correlation_at(x)).collect())
        .collect();
    a.push(vec![1.0; strategies.len()]);
    let mut b = table.values().to_vec();
    b.push(1.0);

    let tol = Tolerances::DEFAULT.feasibility;
    match phase1(&a, &b, tol)? {
        Phase1::Feasible { x, .. } => {
            let residual = (0..=rows)
                .map(|i| {
                    let got: f64 = a[i].iter().zip(&x).map(|(u, v)| u * v).sum();
                    (got - b[i]).abs()
                })
                .fold(0.0, f64::max);
            if residual > 1e-8 || x.iter().any(|&w| w < -1e-10) {
                return Err(Error::SolverFailure(format!(
                    "feasible basis reconstructs the table only to {residual:e}"
                )));
            }
            Ok(FeasibilityVerdict {
                feasible: true,
                witness: Witness::Distribution(x),
                residual,
            })
        }
        Phase1::Infeasible { y, objective } => {
            let coefficients = y[..rows].to_vec();
            // Tightest bound of c·E over local models: its max over vertices.
            let bound = strategies
                .iter()
                .map(|s| {
                    (0..rows)
                        .map(|x| coefficients[x] * s.correlation_at(x))
                        .sum::<f64>()
                })
                .fold(f64::NEG_INFINITY, f64::max);
            let value: f64 = coefficients
                .iter()
                .zip(table.values())
                .map(|(c, e)| c * e)
                .sum();
            if value <= bound {
                return Err(Error::SolverFailure(
                    "phase-1 certificate does not separate the table".into(),
                ));
            }
            Ok(FeasibilityVerdict {
                feasible: false,
                witness: Witness::Inequality {
                    coefficients,
                    bound,
                    value,
                },
                residual: objective,
            })
        }
    }
}

/// Outcome of the complete two-setting inequality set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompleteSetVerdict {
    /// `Σ_s |Ê(s)|`.
    pub total: f64,
    /// `2ⁿ`.
    pub bound: f64,
    pub satisfied: bool,
    /// Coefficients of the most violated member, `Σₓ cₓE(x) ≤ 2ⁿ`, with
    /// `cₓ = Σ_s sign(Ê(s)) ∏ₖ sₖ^{[xₖ = Y]}`.
    pub coefficients: Vec<f64>,
}

/// `Ê(s) = Σₓ (∏ₖ sₖ^{[xₖ = Y]}) E(x)` for every sign vector `s`, indexed like
/// the table with bit `1` meaning `sₖ = −1`.
pub fn sign_transform(table: &CorrelationTable) -> Vec<f64> {
    let mut e = table.values().to_vec();
    walsh_hadamard(&mut e);
    e
}

fn walsh_hadamard(v: &mut [f64]) {
    let mut h = 1;
    while h < v.len() {
        for block in (0..v.len()).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

pub fn complete_set_check(table: &CorrelationTable) -> CompleteSetVerdict {
    let n = table.parties();
    let transformed = sign_transform(table);
    let total: f64 = transformed.iter().map(|v| v.abs()).sum();
    let bound = (1usize << n) as f64;
    let mut coefficients: Vec<f64> = transformed
        .iter()
        .map(|v| if *v < 0.0 { -1.0 } else { 1.0 })
        .collect();
    // The transform is its own inverse up to 2ⁿ; the Walsh matrix is symmetric.
    walsh_hadamard(&mut coefficients);
    CompleteSetVerdict {
        total,
        bound,
        satisfied: total <= bound + Tolerances::DEFAULT.feasibility,
        coefficients,
    }
}

/// Human-readable form of an inequality over table entries.
pub fn describe_inequality(parties: usize, coefficients: &[f64], bound: f64) -> String {
    let mut terms = Vec::new();
    for (i, c) in coefficients.iter().enumerate() {
        if c.abs() > 1e-9 {
            terms.push(format!("{c:+.6}·E({})", key_of(parties, i)));
        }
    }
    format!("{} ≤ {bound:.6}", terms.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_table(xx: f64, yy: f64, xy: f64, yx: f64) -> CorrelationTable {
        CorrelationTable::new(2, vec![xx, xy, yx, yy]).unwrap()
    }

    #[test]
    fn quadruple_of_pair_correlators() {
        for v in [0.0, 0.3, 1.0] {
            let q = fine_quadruple(0.0, 0.0, v, v);
            assert_eq!(q.values, [2.0 * v, 0.0, 0.0, 2.0 * v]);
            assert!(q.verdict.is_satisfied());
        }
        let q = fine_quadruple(1.0, -1.0, 1.0, 1.0);
        assert_eq!(q.values[0], 4.0);
        assert!(!q.verdict.is_satisfied());
        assert_eq!(q.most_violated(), 0);
        assert_eq!(fine_quadruple(0.0, 0.0, 0.0, 0.0).values, [0.0; 4]);
    }

    #[test]
    fn strategy_counts_and_order() {
        assert_eq!(enumerate_strategies(1).unwrap().len(), 4);
        let two = enumerate_strategies(2).unwrap();
        assert_eq!(two.len(), 16);
        assert_eq!(two[0].outcomes(), &[[-1, -1], [-1, -1]]);
        assert_eq!(two[1].outcomes(), &[[-1, -1], [-1, 1]]);
        assert_eq!(two[15].outcomes(), &[[1, 1], [1, 1]]);
        assert!(enumerate_strategies(9).is_err());
        assert!(enumerate_strategies(0).is_err());
    }

    #[test]
    fn strategy_tables() {
        let all_plus = DeterministicStrategy::new(vec![[1, 1], [1, 1]]).unwrap();
        assert!(strategy_correlations(&all_plus)
            .values()
            .iter()
            .all(|&e| e == 1.0));

        let s = DeterministicStrategy::new(vec![[1, -1], [1, 1]]).unwrap();
        assert_eq!(
            strategy_correlations(&s).get(&[Setting::Y, Setting::X]),
            Some(-1.0)
        );

        let flipped = DeterministicStrategy::new(vec![[-1, 1], [1, 1]]).unwrap();
        let (a, b) = (strategy_correlations(&s), strategy_correlations(&flipped));
        for (x, y) in a.values().iter().zip(b.values()) {
            assert_eq!(*x, -*y);
        }
        assert!(DeterministicStrategy::new(vec![[0, 1]]).is_err());
    }

    #[test]
    fn pair_tables_are_feasible() {
        for i in 0..=10 {
            let v = i as f64 / 10.0;
            let verdict = lhv_feasible(&pair_table(0.0, 0.0, v, v)).unwrap();
            assert!(verdict.feasible, "v = {v}");
            assert!(verdict.residual < 1e-8);
        }
    }

    #[test]
    fn pr_box_is_infeasible_with_separating_witness() {
        let t = pair_table(1.0, -1.0, 1.0, 1.0);
        let verdict = lhv_feasible(&t).unwrap();
        assert!(!verdict.feasible);
        let Witness::Inequality {
            coefficients,
            bound,
            value,
        } = verdict.witness
        else {
            panic!("expected inequality witness");
        };
        assert!(value > bound + 1e-6);
        for s in enumerate_strategies(2).unwrap() {
            let e = strategy_correlations(&s);
            let lhs: f64 = coefficients
                .iter()
                .zip(e.values())
                .map(|(c, v)| c * v)
                .sum();
            assert!(lhs <= bound + 1e-12);
        }
    }

    #[test]
    fn complete_set_small_cases() {
        let v = 0.7;
        let c = complete_set_check(&pair_table(0.0, 0.0, v, v));
        assert!((c.total - 4.0 * v).abs() < 1e-15);
        assert!(c.satisfied);

        let c = complete_set_check(&pair_table(1.0, -1.0, 1.0, 1.0));
        assert!(!c.satisfied);
        let lhs: f64 = c
            .coefficients
            .iter()
            .zip([1.0, 1.0, 1.0, -1.0])
            .map(|(a, b)| a * b)
            .sum();
        assert!((lhs - c.total).abs() < 1e-12);

        let zero = CorrelationTable::new(3, vec![0.0; 8]).unwrap();
        assert!(complete_set_check(&zero).satisfied);
    }

    #[test]
    fn deterministic_tables_sit_on_the_boundary() {
        for s in enumerate_strategies(3).unwrap() {
            let c = complete_set_check(&strategy_correlations(&s));
            assert!((c.total - 8.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lp_rejects_oversized_tables() {
        let t = CorrelationTable::new(7, vec![0.0; 128]).unwrap();
        assert!(matches!(lhv_feasible(&t), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn describe() {
        let s = describe_inequality(2, &[1.0, 0.0, 1.0, -1.0], 2.0);
        assert_eq!(
            s,
            "+1.000000·E(XX) +1.000000·E(YX) -1.000000·E(YY) ≤ 2.000000"
        );
    }
}
