use serde::Serialize;

use orbivol::curvature::{dual_path_defect, verify_holomorphic_normalization, ScanReport};
use orbivol::lie::{verify_bracket_identities, CartanPart, IdentityReport};
use orbivol::volume::{
    self as volume, bound_value, cell_label, compare_cell, BoundMode, BoundReport, BoundSpec,
    BoundVariant, LogValue, MAX_RANK, PRINTED_CELLS, TABLE_TOL,
};
use orbivol::matrix::MATRIX_TOL;
use orbivol::{Error, GroundField, LieAlgebraModel, MetricModel, Result};

use crate::render;
use crate::{BoundsArgs, Format, HurwitzArgs, ModeArg, ScanArgs, VariantArg, VerifyArgs, WangArgs};

const KILLING_TRIALS: usize = 100;
const DUAL_PATH_TRIALS: usize = 500;
const HOLOMORPHIC_TRIALS: usize = 200;

/// Rendered report and whether every fatal check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
struct Suite {
    name: &'static str,
    passed: bool,
    /// Failures of non-fatal suites are reported without failing the run.
    fatal: bool,
    max_deviation: f64,
    tolerance: f64,
}

impl Suite {
    fn measured(name: &'static str, max_deviation: f64, tolerance: f64) -> Self {
        Self { name, passed: max_deviation <= tolerance, fatal: true, max_deviation, tolerance }
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    command: &'static str,
    field: GroundField,
    algebra: String,
    n: usize,
    dim: usize,
    seed: u64,
    tol: f64,
    passed: bool,
    suites: Vec<Suite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bracket_identities: Option<IdentityReport>,
}

fn closure_residual(alg: &LieAlgebraModel) -> Result<f64> {
    let basis = alg.basis();
    let mut worst = 0.0f64;
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let m = orbivol::mat_bracket(&basis[i].matrix, &basis[j].matrix)?;
            let (coords, residual) = alg.expand(&m)?;
            worst = worst.max(residual).max((coords - alg.structure().bracket_unit(i, j)).amax());
        }
    }
    Ok(worst)
}

/// Largest relative gap between `trace(ad e_i ad e_j)` and `∓c δ_ij`, with `c = 8(n+2)` for
/// sp(n,1) and the fitted uniform constant otherwise.
fn killing_gap(metric: &MetricModel) -> f64 {
    let want = match metric.field() {
        GroundField::Quaternion => 8.0 * (metric.n() as f64 + 2.0),
        _ => metric.canonical_scale(),
    };
    let b = metric.killing_matrix();
    let alg = metric.algebra();
    let mut worst = 0.0f64;
    for i in 0..metric.dim() {
        for j in 0..metric.dim() {
            let sign = if alg.part(i) == CartanPart::K { -1.0 } else { 1.0 };
            let expect = if i == j { sign * want } else { 0.0 };
            worst = worst.max((b[(i, j)] - expect).abs() / want);
        }
    }
    worst
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let field = GroundField::from(a.field);
    let alg = LieAlgebraModel::build(field, a.n)?;
    let mut suites = vec![Suite::measured("structure_closure", closure_residual(&alg)?, a.tol)];
    let graded = alg.verify_cartan_relations() && alg.structure().is_antisymmetric();
    suites.push(Suite { name: "cartan_grading", passed: graded, fatal: true, max_deviation: 0.0, tolerance: 0.0 });
    suites.push(Suite::measured("jacobi", alg.jacobi_defect(), a.tol));

    let identities = match field {
        GroundField::Quaternion => Some(verify_bracket_identities(&alg)?),
        _ => None,
    };
    if let Some(r) = &identities {
        suites.push(Suite {
            name: "printed_bracket_table",
            passed: r.all_passed(),
            fatal: false,
            max_deviation: r
                .families
                .iter()
                .flat_map(|f| f.failures.iter().map(|x| x.max_abs_deviation))
                .fold(0.0, f64::max),
            tolerance: MATRIX_TOL,
        });
    }

    let canonical = MetricModel::canonical(alg.clone())?;
    suites.push(Suite::measured("killing_closed_form", killing_gap(&canonical), a.tol));
    suites.push(Suite::measured("killing_invariance", canonical.verify_killing_invariance(KILLING_TRIALS, a.seed), a.tol));

    let metric = MetricModel::scaled(alg)?;
    suites.push(Suite::measured("curvature_dual_path", dual_path_defect(&metric, DUAL_PATH_TRIALS, a.seed), a.tol));
    let holo = verify_holomorphic_normalization(&metric, HOLOMORPHIC_TRIALS, a.seed)?;
    suites.push(Suite::measured("holomorphic_normalization", holo.max_deviation(), a.tol));

    let passed = suites.iter().all(|s| s.passed || !s.fatal);
    let report = VerifyReport {
        command: "verify",
        field,
        algebra: format!("{}({},1)", field.algebra_name(), a.n),
        n: a.n,
        dim: metric.dim(),
        seed: a.seed,
        tol: a.tol,
        passed,
        suites,
        bracket_identities: identities,
    };
    let text = match a.out.format {
        Format::Json => render::json(&report),
        Format::Csv => render::csv(&report.suites)?,
        Format::Md => render::markdown(
            &["suite", "passed", "fatal", "max deviation", "tolerance"],
            report.suites.iter().map(|s| {
                vec![s.name.to_string(), s.passed.to_string(), s.fatal.to_string(), format!("{:.3e}", s.max_deviation), format!("{:e}", s.tolerance)]
            }),
        ),
    };
    Ok(Outcome { text, passed })
}

#[derive(Debug, Serialize)]
struct BoundRow {
    label: String,
    #[serde(flatten)]
    report: BoundReport,
}

#[derive(Debug, Serialize)]
struct CellCheck {
    label: String,
    printed: &'static str,
    computed: LogValue,
    relative_deviation: f64,
    within_tolerance: bool,
    matches_printed_digits: bool,
}

#[derive(Debug, Serialize)]
struct TableCheck {
    tolerance: f64,
    passed: bool,
    cells: Vec<CellCheck>,
}

#[derive(Debug, Serialize)]
struct BoundsReport {
    command: &'static str,
    mode: BoundMode,
    reports: Vec<BoundRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table_check: Option<TableCheck>,
}

#[derive(Debug, Serialize)]
struct CsvBound<'a> {
    field: &'static str,
    variant: BoundVariant,
    n: usize,
    mantissa: String,
    exp10: i32,
    value: String,
    log10: f64,
    mode: BoundMode,
    printed: Option<&'a str>,
    relative_deviation: Option<f64>,
}

fn printed_literal(field: GroundField, variant: BoundVariant, n: usize) -> Option<&'static str> {
    PRINTED_CELLS.iter().find(|c| c.0 == field && c.1 == variant && c.2 == n).map(|c| c.3)
}

/// Requested `(field, variant, n)` triples in table order.
fn selection(a: &BoundsArgs) -> Result<Vec<(GroundField, BoundVariant, usize)>> {
    let (lo, hi) = match (a.n, a.n_range) {
        (Some(n), _) => (n, n),
        (None, Some(r)) => r,
        (None, None) => (1, 4),
    };
    if lo < 1 || hi > MAX_RANK {
        return Err(Error::Domain(format!("n range {lo}..{hi} outside 1..{MAX_RANK}")));
    }
    let fields: Vec<GroundField> = match a.field {
        Some(f) => vec![f.into()],
        None => GroundField::ALL.to_vec(),
    };
    let variants: Vec<BoundVariant> = match a.variant {
        Some(VariantArg::Original) => vec![BoundVariant::Original],
        Some(VariantArg::Improved) => vec![BoundVariant::Improved],
        None => vec![BoundVariant::Original, BoundVariant::Improved],
    };
    let mut out = Vec::new();
    for &field in &fields {
        let vs: &[BoundVariant] = if field == GroundField::Quaternion { &[BoundVariant::Original] } else { &variants };
        for &variant in vs {
            for n in lo..=hi {
                // real bounds start at n = 2; an explicit request for n = 1 falls through to the error
                if field == GroundField::Real && n < 2 && (lo != hi || fields.len() > 1) {
                    continue;
                }
                out.push((field, variant, n));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Domain("selection contains no bounds".into()));
    }
    Ok(out)
}

pub fn bounds(a: &BoundsArgs) -> Result<Outcome> {
    let mode = match a.mode {
        ModeArg::Printed => BoundMode::PrintedFormula,
        ModeArg::FirstPrinciples => BoundMode::FirstPrinciples,
    };
    let mut rows = Vec::new();
    for (field, variant, n) in selection(a)? {
        let report = bound_value(&BoundSpec::new(field, variant, n, mode)?)?;
        rows.push(BoundRow { label: cell_label(field, variant, n), report });
    }
    let table_check = if a.check_table {
        let cells: Vec<CellCheck> = rows
            .iter()
            .filter_map(|r| {
                let s = &r.report.spec;
                let literal = printed_literal(s.field, s.variant, s.n)?;
                let c = compare_cell(r.report.clone(), literal);
                Some(CellCheck {
                    label: c.label,
                    printed: literal,
                    computed: c.report.value,
                    relative_deviation: c.relative_deviation,
                    within_tolerance: c.within_tolerance,
                    matches_printed_digits: c.matches_printed_digits,
                })
            })
            .collect();
        if cells.is_empty() {
            return Err(Error::Domain("no published cells in the selection".into()));
        }
        let passed = cells.iter().all(|c| c.within_tolerance);
        Some(TableCheck { tolerance: TABLE_TOL, passed, cells })
    } else {
        None
    };
    let passed = table_check.as_ref().is_none_or(|t| t.passed);
    let report = BoundsReport { command: "bounds", mode, reports: rows, table_check };
    let text = match a.out.format {
        Format::Json => render::json(&report),
        Format::Csv => {
            let rows: Vec<CsvBound> = report
                .reports
                .iter()
                .map(|r| {
                    let s = &r.report.spec;
                    let d = r.report.value.decimal();
                    let printed = report.table_check.as_ref().and_then(|_| printed_literal(s.field, s.variant, s.n));
                    CsvBound {
                        field: s.field.short_name(),
                        variant: s.variant,
                        n: s.n,
                        mantissa: format!("{:.5}", d.mantissa),
                        exp10: d.exp10,
                        value: d.value,
                        log10: d.log10,
                        mode,
                        printed,
                        relative_deviation: printed
                            .map(|p| (r.report.value / LogValue::from_f64(p.parse().expect("literal"))).to_f64() - 1.0),
                    }
                })
                .collect();
            render::csv(&rows)?
        }
        Format::Md => bounds_markdown(&report),
    };
    Ok(Outcome { text, passed })
}

/// Rows `n`; columns R old/new, C old/new and Q, as in the published table.
fn bounds_markdown(report: &BoundsReport) -> String {
    let columns = [
        (GroundField::Real, BoundVariant::Original),
        (GroundField::Real, BoundVariant::Improved),
        (GroundField::Complex, BoundVariant::Original),
        (GroundField::Complex, BoundVariant::Improved),
        (GroundField::Quaternion, BoundVariant::Original),
    ];
    let mut ns: Vec<usize> = report.reports.iter().map(|r| r.report.spec.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let cell = |f: GroundField, v: BoundVariant, n: usize| {
        report
            .reports
            .iter()
            .find(|r| r.report.spec.field == f && r.report.spec.variant == v && r.report.spec.n == n)
            .map_or_else(String::new, |r| r.report.value.to_string())
    };
    let mut text = render::markdown(
        &["n", "R old", "R new", "C old", "C new", "Q"],
        ns.iter().map(|&n| {
            let mut row = vec![n.to_string()];
            row.extend(columns.iter().map(|&(f, v)| cell(f, v, n)));
            row
        }),
    );
    let mode = serde_json::to_value(report.mode).expect("mode serializes");
    text.push_str(&format!("\nmode: {}\n", mode.as_str().unwrap_or_default()));
    if let Some(t) = &report.table_check {
        text.push('\n');
        text.push_str(&render::markdown(
            &["cell", "computed", "printed", "relative deviation", "status"],
            t.cells.iter().map(|c| {
                vec![
                    c.label.clone(),
                    c.computed.to_string(),
                    c.printed.to_string(),
                    format!("{:+.2e}", c.relative_deviation),
                    if c.within_tolerance { "ok".into() } else { "MISMATCH".into() },
                ]
            }),
        ));
    }
    text
}

#[derive(Debug, Serialize)]
struct ScanOutput {
    command: &'static str,
    tol: f64,
    passed: bool,
    #[serde(flatten)]
    scan: ScanReport,
}

pub fn curvature_scan(a: &ScanArgs) -> Result<Outcome> {
    let metric = MetricModel::scaled(LieAlgebraModel::build(a.field.into(), a.n)?)?;
    let scan = ScanReport::run(&metric, a.samples, a.ascent_iters, a.seed)?;
    let passed = scan.within_bound(a.tol);
    let report = ScanOutput { command: "curvature-scan", tol: a.tol, passed, scan };
    let text = render::record(&report, a.out.format)?;
    Ok(Outcome { text, passed })
}

#[derive(Debug, Serialize)]
struct Tagged<T> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_max: Option<f64>,
    #[serde(flatten)]
    result: T,
}

pub fn wang_root(a: &WangArgs) -> Result<Outcome> {
    let result = volume::wang_root(a.c1, a.c2, a.t_max)?;
    let report = Tagged { command: "wang-root", t_max: Some(a.t_max), result };
    Ok(Outcome { text: render::record(&report, a.out.format)?, passed: true })
}

pub fn hurwitz(a: &HurwitzArgs) -> Result<Outcome> {
    let result = volume::hurwitz_order_bound(a.volume, a.n)?;
    let report = Tagged { command: "hurwitz", t_max: None, result };
    Ok(Outcome { text: render::record(&report, a.out.format)?, passed: true })
}
