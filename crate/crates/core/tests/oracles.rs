//! Independent oracles for derived values. None of these reuse the code path
//! they check.

use std::f64::consts::PI;

use bell_workbench::lhv::{complete_set_check, lhv_feasible};
use bell_workbench::mermin::{local_f, mermin_operators, MerminPair};
use bell_workbench::operator::{expectation, hermitian_split};
use bell_workbench::rng::XorShift64Star;
use bell_workbench::state::{copies, ghz_ket, CorrelationTable, GhzSign};
use bell_workbench::zukowski::{
    modified_mermin_bound, threshold_visibility, zukowski_closed, zukowski_expectation,
    zukowski_from_mermin, zukowski_quadrature, QuadratureGrid,
};
use bell_workbench::{ComplexMatrix, C64};

/// Walks the full n-dimensional midpoint grid and sums
/// `cos(Σφ) ⊗ σ_φ` entry by entry.
fn brute_force_zukowski(n: usize, m: usize) -> ComplexMatrix {
    let dim = 1usize << n;
    let h = PI / m as f64;
    let mut out = ComplexMatrix::zeros(dim);
    let total = m.pow(n as u32);
    for flat in 0..total {
        let mut rest = flat;
        let phis: Vec<f64> = (0..n)
            .map(|_| {
                let j = rest % m;
                rest /= m;
                (j as f64 + 0.5) * h
            })
            .collect();
        let kernel = phis.iter().sum::<f64>().cos();
        for r in 0..dim {
            for c in 0..dim {
                let mut entry = C64::new(1.0, 0.0);
                for (k, phi) in phis.iter().enumerate() {
                    let (rb, cb) = ((r >> (n - 1 - k)) & 1, (c >> (n - 1 - k)) & 1);
                    entry *= match (rb, cb) {
                        (0, 1) => C64::from_polar(1.0, -phi),
                        (1, 0) => C64::from_polar(1.0, *phi),
                        _ => C64::new(0.0, 0.0),
                    };
                }
                out[(r, c)] += entry * kernel;
            }
        }
    }
    let scale = h.powi(n as i32) / 2f64.powi(n as i32);
    &out * scale
}

#[test]
fn separable_quadrature_matches_grid_walk() {
    for (n, m) in [(2, 4), (2, 8), (3, 4), (3, 8)] {
        let brute = brute_force_zukowski(n, m);
        let fast = zukowski_quadrature(n, QuadratureGrid::new(m).unwrap()).unwrap();
        assert!(
            brute.max_abs_diff(fast.matrix()).unwrap() < 1e-12,
            "n={n} m={m}"
        );
        let closed = zukowski_closed(n).unwrap();
        assert!(
            brute.max_abs_diff(closed.matrix()).unwrap() < 1e-12,
            "n={n} m={m}"
        );
    }
}

#[test]
fn recursive_mermin_equals_expanded_f_product() {
    // Oracle: ⊗ f(σx, σy), then invert f entrywise.
    for n in [2, 4] {
        let local = local_f(&MerminPair::xy(1).b, &MerminPair::xy(1).b_prime).unwrap();
        let mut product = local.clone();
        for _ in 1..n {
            product = product.tensor(&local);
        }
        // f = e^{−iπ/4}(x + iy)/√2  ⇒  x + iy = √2 e^{iπ/4} f
        let g = product.scale(C64::from_polar(2f64.sqrt(), PI / 4.0));
        let (x, y) = hermitian_split(&g);
        let pair = mermin_operators(n).unwrap();
        assert!(pair.b.matrix().max_abs_diff(x.matrix()).unwrap() < 1e-12);
        assert!(pair.b_prime.matrix().max_abs_diff(y.matrix()).unwrap() < 1e-12);
    }
}

#[test]
fn closed_form_constants_from_direct_arithmetic() {
    // Frozen from a separate evaluation of ½(π/2)^{2N}·2^{−(2N−1)/2}.
    let expected = [0.8723580249548599, 1.0762285753025131, 1.3277437854229768];
    for (i, want) in expected.iter().enumerate() {
        assert!((zukowski_from_mermin(1.0, i + 1) - want).abs() < 1e-12);
    }
    assert!((modified_mermin_bound(1) - 1.1463183365015128).abs() < 1e-12);
    assert!((modified_mermin_bound(2) - 0.9291706454819915).abs() < 1e-12);
}

#[test]
fn threshold_matches_bisection() {
    for n in 2..=6 {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if zukowski_from_mermin(mid.powi(n as i32), n) > 1.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!(
            (threshold_visibility(n).unwrap() - lo).abs() < 1e-12,
            "N={n}"
        );
    }
}

#[test]
fn direct_trace_on_ghz_state() {
    let plus = ghz_ket(2, 0, GhzSign::Plus).unwrap().density();
    let e = expectation(&plus, &zukowski_closed(2).unwrap()).unwrap();
    assert!((e - 0.5 * (PI / 2.0).powi(2)).abs() < 1e-12);
}

#[test]
fn bridge_identity_on_visibility_grid() {
    for n in 1..=2 {
        for i in 0..=20 {
            let v = i as f64 / 20.0;
            let e = zukowski_expectation(v, n).unwrap();
            assert!(
                (e.direct_trace - e.from_mermin).abs() < 1e-10,
                "N={n} v={v}"
            );
        }
    }
    // sanity: the density matrix used is the product state
    assert_eq!(copies(0.5, 2).unwrap().dim(), 16);
}

/// `Σ_s |Σ_x ∏_k s_k^{[x_k = Y]} E(x)|` by looping over every `(s, x)` pair.
fn complete_set_total(t: &CorrelationTable) -> f64 {
    let n = t.parties();
    let mut total = 0.0;
    for s in 0..1usize << n {
        let mut acc = 0.0;
        for x in 0..1usize << n {
            let minus = (s & x).count_ones();
            let sign = if minus % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * t.values()[x];
        }
        total += f64::abs(acc);
    }
    total
}

#[test]
fn sign_transform_matches_enumeration() {
    let mut rng = XorShift64Star::new(11);
    for n in 1..=5 {
        for _ in 0..20 {
            let v = (0..1 << n).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let t = CorrelationTable::new(n, v).unwrap();
            assert!((complete_set_check(&t).total - complete_set_total(&t)).abs() < 1e-12);
        }
    }
}

#[test]
fn pr_box_infeasible_by_both_routes() {
    let t = CorrelationTable::new(2, vec![1.0, 1.0, 1.0, -1.0]).unwrap();
    assert!((complete_set_total(&t) - 8.0).abs() < 1e-15);
    assert!(!lhv_feasible(&t).unwrap().feasible);
}
