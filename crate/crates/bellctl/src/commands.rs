use bell_workbench::lhv::{
    complete_set_check, describe_inequality, enumerate_strategies, fine_quadruple_of, lhv_feasible,
    Witness,
};
use bell_workbench::mermin::PhaseAlignment;
use bell_workbench::mermin::{mermin_bound_check, mermin_expectation};
use bell_workbench::operator::spectral_check;
use bell_workbench::rng::XorShift64Star;
use bell_workbench::state::{
    full_correlation_table, key_of, noisy_pair, CorrelationTable, Setting,
};
use bell_workbench::zukowski::{
    in_ghz_basis, max_off_diagonal, modified_mermin_bound, s_functional, threshold_visibility,
    z_prime_functional, zukowski_aligned, zukowski_bound_check, zukowski_closed,
    zukowski_eigenvalue, zukowski_expectation, zukowski_from_mermin, zukowski_quadrature,
    zukowski_quadrature_rotated, QuadratureGrid, StepFunction,
};
use bell_workbench::BoundVerdict;
use serde_json::{json, Map, Value};

use crate::report::{format_float, round_sig, RunReport};
use crate::{CliError, CliResult};

/// Largest copy count accepted by `analyze` and `sweep`.
pub const MAX_COPIES: usize = 6;
/// Above this many qubits `analyze` reports analytic values only.
pub const MAX_TRACE_QUBITS: usize = 8;

fn check_visibility(v: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("visibility {v} outside [0, 1]")))
    }
}

fn check_copies(n: usize) -> CliResult<()> {
    if (1..=MAX_COPIES).contains(&n) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "copies {n} outside [1, {MAX_COPIES}]"
        )))
    }
}

fn verdict_name(v: BoundVerdict) -> &'static str {
    match v {
        BoundVerdict::Satisfied => "satisfied",
        BoundVerdict::Violated => "violated",
    }
}

fn table_object(t: &CorrelationTable) -> Value {
    Value::Object(t.iter().map(|(k, v)| (k, Value::from(v))).collect())
}

pub fn correlators(visibility: f64) -> CliResult<RunReport> {
    check_visibility(visibility)?;
    let table = full_correlation_table(&noisy_pair(visibility)?, 2)?;
    let e = |a, b| table.get(&[a, b]).expect("two-party key");
    let quad = fine_quadruple_of(&table)?;
    let lp = lhv_feasible(&table)?;
    let cs = complete_set_check(&table);

    let mut r = RunReport::new("correlators");
    r.parameter("visibility", visibility)
        .result("E_xx", e(Setting::X, Setting::X))
        .result("E_yy", e(Setting::Y, Setting::Y))
        .result("E_xy", e(Setting::X, Setting::Y))
        .result("E_yx", e(Setting::Y, Setting::X))
        .result("fine_quadruple", quad.values.to_vec())
        .result("table", table_object(&table))
        .verdict("fine_satisfied", quad.verdict.is_satisfied())
        .verdict("lhv_feasible", lp.feasible)
        .verdict("complete_set_satisfied", cs.satisfied);
    Ok(r)
}

pub fn analyze(visibility: f64, n_copies: usize) -> CliResult<RunReport> {
    check_visibility(visibility)?;
    check_copies(n_copies)?;
    let mermin_value = visibility.powi(n_copies as i32);
    let zukowski_value = zukowski_from_mermin(mermin_value, n_copies);
    let mermin_verdict = mermin_bound_check(mermin_value);
    let zukowski_verdict = zukowski_bound_check(zukowski_value);

    let mut r = RunReport::new("analyze");
    r.parameter("visibility", visibility)
        .parameter("copies", n_copies)
        .result("mermin_value", mermin_value)
        .result("mermin_verdict", verdict_name(mermin_verdict))
        .result("zukowski_value", zukowski_value)
        .result("zukowski_verdict", verdict_name(zukowski_verdict))
        .result("modified_bound", modified_mermin_bound(n_copies));
    if n_copies >= 2 {
        r.result("threshold", threshold_visibility(n_copies)?);
    }
    if 2 * n_copies <= MAX_TRACE_QUBITS {
        let m = mermin_expectation(visibility, n_copies)?;
        let z = zukowski_expectation(visibility, n_copies)?;
        if (z.direct_trace - z.from_mermin).abs() > 1e-10 {
            return Err(CliError::Numerical(format!(
                "direct trace {} disagrees with {}",
                z.direct_trace, z.from_mermin
            )));
        }
        r.result("mermin_trace_b", m.matrix_b)
            .result("mermin_trace_b_prime", m.matrix_b_prime)
            .result("zukowski_trace", z.direct_trace);
    }
    r.verdict("mermin_satisfied", mermin_verdict.is_satisfied())
        .verdict("zukowski_satisfied", zukowski_verdict.is_satisfied())
        .verdict(
            "conflict_revealed",
            mermin_verdict.is_satisfied() && !zukowski_verdict.is_satisfied(),
        );
    Ok(r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub visibility: f64,
    pub copies: usize,
    pub mermin: f64,
    pub zukowski: f64,
    pub modified_bound: f64,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub v_min: f64,
    pub v_max: f64,
    pub v_step: f64,
    pub copies: Vec<usize>,
    pub rows: Vec<SweepRow>,
}

pub const SWEEP_HEADER: &str = "V,N,mermin,zukowski,modified_bound,violated";

impl Sweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                format_float(row.visibility),
                row.copies,
                format_float(row.mermin),
                format_float(row.zukowski),
                format_float(row.modified_bound),
                row.violated
            ));
        }
        out
    }

    pub fn to_report(&self) -> RunReport {
        let mut r = RunReport::new("sweep");
        r.parameter("v_min", self.v_min)
            .parameter("v_max", self.v_max)
            .parameter("v_step", self.v_step)
            .parameter("copies", self.copies.clone());
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                json!({
                    "V": row.visibility,
                    "N": row.copies,
                    "mermin": row.mermin,
                    "zukowski": row.zukowski,
                    "modified_bound": row.modified_bound,
                    "violated": row.violated,
                })
            })
            .collect();
        let mut thresholds = Map::new();
        for &n in self.copies.iter().filter(|&&n| n >= 2) {
            thresholds.insert(
                n.to_string(),
                Value::from(threshold_visibility(n).expect("n ≥ 2")),
            );
        }
        r.result("rows", rows)
            .result("thresholds", Value::Object(thresholds));
        r.verdict("any_violated", self.rows.iter().any(|row| row.violated));
        r
    }
}

/// Grid points `v_min + i·v_step` up to `v_max`, each rounded to 12
/// significant digits so the printed column matches the request.
pub fn visibility_grid(v_min: f64, v_max: f64, v_step: f64) -> CliResult<Vec<f64>> {
    if v_step.is_nan() || v_step <= 0.0 || !v_min.is_finite() || !v_max.is_finite() {
        return Err(CliError::Usage(
            "v-step must be positive and bounds finite".into(),
        ));
    }
    check_visibility(v_min)?;
    check_visibility(v_max)?;
    if v_min > v_max {
        return Err(CliError::Usage(format!(
            "empty grid: v-min {v_min} > v-max {v_max}"
        )));
    }
    let count = ((v_max - v_min) / v_step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(CliError::Usage(format!(
            "grid of {count} points is too large"
        )));
    }
    Ok((0..count)
        .map(|i| round_sig(v_min + i as f64 * v_step).min(1.0))
        .collect())
}

pub fn sweep(v_min: f64, v_max: f64, v_step: f64, copies: &[usize]) -> CliResult<Sweep> {
    if copies.is_empty() {
        return Err(CliError::Usage("empty copies list".into()));
    }
    for &n in copies {
        check_copies(n)?;
    }
    let grid = visibility_grid(v_min, v_max, v_step)?;
    let mut rows = Vec::with_capacity(grid.len() * copies.len());
    for &n in copies {
        let bound = modified_mermin_bound(n);
        for &v in &grid {
            let mermin = v.powi(n as i32);
            let zukowski = zukowski_from_mermin(mermin, n);
            rows.push(SweepRow {
                visibility: v,
                copies: n,
                mermin,
                zukowski,
                modified_bound: bound,
                violated: !zukowski_bound_check(zukowski).is_satisfied(),
            });
        }
    }
    Ok(Sweep {
        v_min,
        v_max,
        v_step,
        copies: copies.to_vec(),
        rows,
    })
}

pub fn verify_appendix(grid_cells: usize, trials: usize, seed: u64) -> CliResult<RunReport> {
    if grid_cells < 2 {
        return Err(CliError::Usage(format!(
            "grid {grid_cells} must be at least 2"
        )));
    }
    if trials < 1 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    let quad_grid = QuadratureGrid::new(8)?;

    let mut quadrature_error: f64 = 0.0;
    let mut off_diagonal: f64 = 0.0;
    let mut eigenvalue_error: f64 = 0.0;
    for n in 2..=4 {
        let closed = zukowski_closed(n)?;
        let numeric = zukowski_quadrature(n, quad_grid)?;
        quadrature_error = quadrature_error.max(numeric.matrix().max_abs_diff(closed.matrix())?);
        let delta = PhaseAlignment::expected_theta(n);
        let rotated = zukowski_quadrature_rotated(n, delta, quad_grid)?;
        quadrature_error = quadrature_error.max(
            rotated
                .matrix()
                .max_abs_diff(zukowski_aligned(n)?.matrix())?,
        );
        off_diagonal = off_diagonal.max(max_off_diagonal(&in_ghz_basis(numeric.matrix(), n)?));

        let spectrum = spectral_check(closed.matrix())?;
        let lambda = zukowski_eigenvalue(n);
        eigenvalue_error = eigenvalue_error
            .max((spectrum.min() + lambda).abs())
            .max((spectrum.max() - lambda).abs());
    }

    let extremal = z_prime_functional(&StepFunction::sign_of_cos(grid_cells, 0.0)?);

    let mut rng = XorShift64Star::new(seed);
    let mut max_z: f64 = 0.0;
    let mut max_s2: f64 = 0.0;
    let mut max_s3: f64 = 0.0;
    for _ in 0..trials {
        let f = StepFunction::random(grid_cells, &mut rng)?;
        max_z = max_z.max(z_prime_functional(&f).norm());
        let two: Vec<StepFunction> = (0..2)
            .map(|_| StepFunction::random(grid_cells, &mut rng))
            .collect::<Result<_, _>>()?;
        max_s2 = max_s2.max(s_functional(&two).abs());
        let three: Vec<StepFunction> = (0..3)
            .map(|_| StepFunction::random(grid_cells, &mut rng))
            .collect::<Result<_, _>>()?;
        max_s3 = max_s3.max(s_functional(&three).abs());
    }

    let slack = 1e-12;
    let mut r = RunReport::new("verify-appendix");
    r.parameter("grid", grid_cells)
        .parameter("trials", trials)
        .parameter("seed", seed)
        .parameter("quadrature_nodes", 8)
        .result("max_quadrature_error", quadrature_error)
        .result("max_off_diagonal", off_diagonal)
        .result("max_eigenvalue_error", eigenvalue_error)
        .result(
            "extremal_z_prime",
            json!({ "re": extremal.re, "im": extremal.im, "abs": extremal.norm() }),
        )
        .result("max_abs_z_prime", max_z)
        .result("max_abs_s_n2", max_s2)
        .result("max_abs_s_n3", max_s3)
        .verdict("quadrature_agrees", quadrature_error < 1e-10)
        .verdict("ghz_diagonal", off_diagonal < 1e-12)
        .verdict("eigenvalues_agree", eigenvalue_error < 1e-12)
        .verdict(
            "extremal_reaches_two",
            (extremal.norm() - 2.0).abs() < slack,
        )
        .verdict("z_prime_bounded", max_z <= 2.0 + slack)
        .verdict("s_bounded", max_s2 <= 4.0 + slack && max_s3 <= 8.0 + slack);
    Ok(r)
}

/// Reads a correlation table from JSON: either a bare table object or a
/// `correlators` report carrying one under `results.table`.
pub fn parse_table(text: &str) -> CliResult<CorrelationTable> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid JSON: {e}")))?;
    let inner = value
        .get("results")
        .and_then(|r| r.get("table"))
        .cloned()
        .unwrap_or(value);
    serde_json::from_value(inner)
        .map_err(|e| CliError::Usage(format!("invalid correlation table: {e}")))
}

fn strategy_label(outcomes: &[[i8; 2]]) -> String {
    outcomes
        .iter()
        .map(|[x, y]| {
            let sign = |o: &i8| if *o > 0 { '+' } else { '-' };
            format!("X{}Y{}", sign(x), sign(y))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn lhv(table: &CorrelationTable, source: &str) -> CliResult<RunReport> {
    let n = table.parties();
    let lp = lhv_feasible(table)?;
    let cs = complete_set_check(table);

    let mut r = RunReport::new("lhv");
    r.parameter("input", source).parameter("parties", n);
    r.result("feasible", lp.feasible)
        .result("residual", lp.residual)
        .result("complete_set_total", cs.total)
        .result("complete_set_bound", cs.bound);
    let witness = match &lp.witness {
        Witness::Distribution(_) => {
            let strategies = enumerate_strategies(n)?;
            let support: Vec<Value> = lp
                .support()
                .into_iter()
                .map(|(i, w)| json!({ "strategy": strategy_label(strategies[i].outcomes()), "weight": w }))
                .collect();
            json!({ "kind": "distribution", "support": support })
        }
        Witness::Inequality {
            coefficients,
            bound,
            value,
        } => {
            let coeffs: Map<String, Value> = coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| (key_of(n, i), Value::from(*c)))
                .collect();
            json!({
                "kind": "inequality",
                "coefficients": coeffs,
                "bound": bound,
                "value": value,
                "description": describe_inequality(n, coefficients, *bound),
            })
        }
    };
    r.result("witness", witness);
    if n == 2 {
        let quad = fine_quadruple_of(table)?;
        r.result("fine_quadruple", quad.values.to_vec())
            .result("most_violated_quadruple", quad.most_violated());
    }
    r.verdict("lhv_feasible", lp.feasible)
        .verdict("complete_set_satisfied", cs.satisfied)
        .verdict("routes_agree", lp.feasible == cs.satisfied);
    Ok(r)
}
