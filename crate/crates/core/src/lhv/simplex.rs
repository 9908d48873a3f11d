//! Dense phase-1 simplex for `A x = b, x ≥ 0`.
//!
//! Sized for the local polytope membership problem: at most 65 rows and a few
//! thousand columns. Bland's rule is used throughout so degenerate pivots
//! cannot cycle.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Phase1 {
    /// A point with `A x = b`, `x ≥ 0`.
    Feasible { x: Vec<f64>, objective: f64 },
    /// Farkas certificate: `yᵀA ≤ 0` columnwise and `yᵀb = objective > 0`.
    Infeasible { y: Vec<f64>, objective: f64 },
}

/// Solves the phase-1 problem `min Σ artificials` for the rows `a` (each of
/// equal length) and right-hand side `b`. An optimum at or below
/// `feasibility_tol` counts as feasible.
pub fn phase1(a: &[Vec<f64>], b: &[f64], feasibility_tol: f64) -> Result<Phase1> {
    let m = a.len();
    if m == 0 || b.len() != m {
        return Err(Error::SolverFailure(
            "empty or ragged constraint system".into(),
        ));
    }
    let k = a[0].len();
    if a.iter().any(|row| row.len() != k) {
        return Err(Error::SolverFailure("ragged constraint matrix".into()));
    }

    // Tableau columns: k originals, m artificials, then the right-hand side.
    let width = k + m + 1;
    let rhs = k + m;
    let mut sign = vec![1.0; m];
    let mut t = vec![0.0; m * width];
    for i in 0..m {
        if b[i] < 0.0 {
            sign[i] = -1.0;
        }
        let row = &mut t[i * width..(i + 1) * width];
        for j in 0..k {
            row[j] = sign[i] * a[i][j];
        }
        row[k + i] = 1.0;
        row[rhs] = sign[i] * b[i];
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    // Reduced costs for c = (0, …, 0, 1, …, 1).
    let mut d = vec![0.0; width];
    for i in 0..m {
        for j in 0..k {
            d[j] -= t[i * width + j];
        }
        d[rhs] -= t[i * width + rhs];
    }

    let max_iter = 50 * (m + k) + 1000;
    let mut iter = 0;
    loop {
        let entering = (0..k + m).find(|&j| d[j] < -PIVOT_EPS);
        let Some(q) = entering else { break };

        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let aiq = t[i * width + q];
            if aiq > PIVOT_EPS {
                let ratio = t[i * width + rhs] / aiq;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - 1e-15
                            || ((ratio - best).abs() <= 1e-15 && basis[i] < basis[r])
                        {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        // Phase 1 is bounded below by zero, so an unbounded ray is a numerical fault.
        let (p, _) = leave.ok_or_else(|| Error::SolverFailure("unbounded phase-1 ray".into()))?;

        pivot(&mut t, &mut d, width, m, p, q);
        basis[p] = q;

        iter += 1;
        if iter > max_iter {
            return Err(Error::SolverFailure(format!(
                "no convergence after {max_iter} pivots"
            )));
        }
    }

    let objective = -d[rhs];
    if !objective.is_finite() {
        return Err(Error::SolverFailure("non-finite phase-1 objective".into()));
    }
    if objective <= feasibility_tol {
        let mut x = vec![0.0; k];
        for (i, &var) in basis.iter().enumerate() {
            if var < k {
                x[var] = t[i * width + rhs];
            }
        }
        Ok(Phase1::Feasible { x, objective })
    } else {
        // Reduced cost of artificial i is 1 − y_i (in the sign-flipped rows).
        let y = (0..m).map(|i| sign[i] * (1.0 - d[k + i])).collect();
        Ok(Phase1::Infeasible { y, objective })
    }
}

fn pivot(t: &mut [f64], d: &mut [f64], width: usize, m: usize, p: usize, q: usize) {
    let inv = 1.0 / t[p * width + q];
    for v in &mut t[p * width..(p + 1) * width] {
        *v *= inv;
    }
    let pivot_row: Vec<f64> = t[p * width..(p + 1) * width].to_vec();
    for i in 0..m {
        if i == p {
            continue;
        }
        let factor = t[i * width + q];
        if factor != 0.0 {
            let row = &mut t[i * width..(i + 1) * width];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= factor * pv;
            }
        }
    }
    let factor = d[q];
    for (v, pv) in d.iter_mut().zip(&pivot_row) {
        *v -= factor * pv;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasible_system() {
        // x + y = 1, x − y = 0.5
        let a = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
        let Phase1::Feasible { x, .. } = phase1(&a, &[1.0, 0.5], 1e-9).unwrap() else {
            panic!("expected feasible");
        };
        assert!((x[0] - 0.75).abs() < 1e-12);
        assert!((x[1] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn infeasible_system_has_farkas_certificate() {
        // x + y = 1, x + y = 2
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let b = [1.0, 2.0];
        let Phase1::Infeasible { y, objective } = phase1(&a, &b, 1e-9).unwrap() else {
            panic!("expected infeasible");
        };
        assert!((objective - 1.0).abs() < 1e-12);
        for j in 0..2 {
            let col: f64 = (0..2).map(|i| y[i] * a[i][j]).sum();
            assert!(col <= 1e-12);
        }
        let yb: f64 = y.iter().zip(b).map(|(u, v)| u * v).sum();
        assert!((yb - objective).abs() < 1e-12);
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // −x = −0.3, x + y = 1
        let a = vec![vec![-1.0, 0.0], vec![1.0, 1.0]];
        let Phase1::Feasible { x, .. } = phase1(&a, &[-0.3, 1.0], 1e-9).unwrap() else {
            panic!("expected feasible");
        };
        assert!((x[0] - 0.3).abs() < 1e-12);
        assert!((x[1] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn ragged_input_is_a_solver_failure() {
        let a = vec![vec![1.0, 1.0], vec![1.0]];
        assert!(matches!(
            phase1(&a, &[1.0, 1.0], 1e-9),
            Err(Error::SolverFailure(_))
        ));
    }
}
