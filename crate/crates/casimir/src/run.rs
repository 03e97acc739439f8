//! Point evaluations, sweep grids and the asymptotic report.

use casimir_core::asymptotics::{
    classify_distance_law, local_exponent, long_distance_slab, long_distance_standard,
    short_distance_closed_form, short_distance_error_bound, short_distance_numeric,
    validity_scales, DistanceLaw, DEFAULT_MARGIN,
};
use casimir_core::force::{ForceEngine, Mode};
use casimir_core::oned::{casimir_ideal_1d, force_1d_both_channels};
use casimir_core::{casimir_ideal, Permittivity, Stack};
use rayon::prelude::*;

use crate::config::{Model, Run, Target};
use crate::error::CliError;

/// Quantity reported in the value columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Pressure in N/m².
    Pressure,
    /// One-dimensional force in N for a unit normalization area, both channels.
    OneD,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Values {
    pub value: f64,
    pub f0: f64,
    pub f_over_f0: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub axes: Vec<f64>,
    /// The ideal-mirror reference, when the geometry allows one.
    pub f0: Option<f64>,
    pub result: Result<Values, String>,
}

impl Row {
    pub fn is_ok(&self) -> bool {
        self.result.is_ok()
    }

    pub fn status(&self) -> String {
        match &self.result {
            Ok(_) => "ok".into(),
            Err(e) => format!("error: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: Kind,
    pub axis_count: usize,
    pub rows: Vec<Row>,
}

/// One grid point: axis values and the model they produce.
struct Point {
    axes: Vec<f64>,
    model: Model,
}

fn grid(run: &Run) -> Vec<Point> {
    let mut points = vec![Point {
        axes: Vec::new(),
        model: run.model.clone(),
    }];
    for axis in &run.axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.values.iter().map(move |&v| {
                    let mut model = p.model.clone();
                    for t in &axis.targets {
                        model.set(t, v);
                    }
                    let mut axes = p.axes.clone();
                    axes.push(v);
                    Point { axes, model }
                })
            })
            .collect();
    }
    points
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Io(format!("cannot start worker pool: {e}")))
}

fn evaluate_point(
    kind: Kind,
    engine: &ForceEngine,
    run: &Run,
    model: &Model,
) -> (Option<f64>, Result<Values, String>) {
    let d = model.gap_width();
    let f0 = match kind {
        Kind::Pressure => casimir_ideal(d),
        Kind::OneD => casimir_ideal_1d(d).map(|f| 2.0 * f),
    }
    .ok();
    let result = model
        .to_stack()
        .map_err(|e| e.to_string())
        .and_then(|stack| {
            let (value, rel_err) = match kind {
                Kind::Pressure => engine
                    .evaluate(&stack)
                    .map(|r| (r.pressure, r.rel_err_estimate)),
                Kind::OneD => force_1d_both_channels(&stack, &run.quadrature)
                    .map(|r| (r.force_per_area_unit, r.rel_err_estimate)),
            }
            .map_err(|e| e.to_string())?;
            let f0 = f0.ok_or_else(|| format!("no ideal reference at gap width {d}"))?;
            Ok(Values {
                value,
                f0,
                f_over_f0: value / f0,
                rel_err,
            })
        });
    if let Err(e) = &result {
        log::warn!("point failed: {e}");
    }
    (f0, result)
}

fn engine(run: &Run, kind: Kind) -> Result<ForceEngine, CliError> {
    if kind == Kind::OneD {
        if let Mode::FiniteTemperature(_) = run.mode {
            return Err(CliError::config(
                "mode: one-dimensional forces are only available at zero temperature",
            ));
        }
    }
    let mode = if kind == Kind::OneD {
        Mode::ZeroTemperature
    } else {
        run.mode
    };
    ForceEngine::new(mode, run.quadrature, run.matsubara)
        .map_err(|e| CliError::config(e.to_string()))
}

fn single_model(run: &Run, distance: Option<f64>) -> Result<Model, CliError> {
    let mut model = run.model.clone();
    if let Some(d) = distance {
        if !(d.is_finite() && d > 0.0) {
            return Err(CliError::config(format!(
                "--distance: must be finite and positive, got {d}"
            )));
        }
        model.set(&Target::Gap, d);
    }
    Ok(model)
}

/// A single evaluation, reported as a one-row table with the gap width as axis.
pub fn single(run: &Run, kind: Kind, distance: Option<f64>) -> Result<Table, CliError> {
    let engine = engine(run, kind)?;
    let model = single_model(run, distance)?;
    let (f0, result) = evaluate_point(kind, &engine, run, &model);
    if let Err(e) = &result {
        return Err(CliError::Numeric(e.clone()));
    }
    Ok(Table {
        kind,
        axis_count: 1,
        rows: vec![Row {
            axes: vec![model.gap_width()],
            f0,
            result,
        }],
    })
}

/// Every grid point of the configured sweep, in row-major order.
pub fn sweep(run: &Run, kind: Kind, threads: usize) -> Result<Table, CliError> {
    if run.axes.is_empty() {
        return Err(CliError::config(
            "sweep: section with at least one axis required",
        ));
    }
    let engine = engine(run, kind)?;
    let points = grid(run);
    let rows: Vec<Row> = pool(threads)?.install(|| {
        points
            .par_iter()
            .map(|p| {
                let (f0, result) = evaluate_point(kind, &engine, run, &p.model);
                Row {
                    axes: p.axes.clone(),
                    f0,
                    result,
                }
            })
            .collect()
    });
    if !rows.is_empty() && rows.iter().all(|r| !r.is_ok()) {
        return Err(CliError::Numeric(format!(
            "numeric failure: all {} grid points failed, first: {}",
            rows.len(),
            rows[0].status()
        )));
    }
    Ok(Table {
        kind,
        axis_count: run.axes.len(),
        rows,
    })
}

/// A report entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Number(f64),
    Integer(i64),
    Text(String),
}

pub type Report = Vec<(&'static str, Field)>;

/// Ratio between neighbouring distances used for the measured exponent.
const EXPONENT_STEP: f64 = 1.25;

/// Distance-law classification, validity scales, the long-distance
/// prediction against the full integral at `margin` times the largest
/// validity scale, the measured local exponent there, and the
/// short-distance coefficients.
pub fn asymptote(run: &Run, margin: f64) -> Result<Report, CliError> {
    if !(margin.is_finite() && margin > 0.0) {
        return Err(CliError::config(format!(
            "--margin: must be finite and positive, got {margin}"
        )));
    }
    let numeric = |e: casimir_core::Error| CliError::Numeric(e.to_string());
    let stack = &run.stack;
    let law = classify_distance_law(stack);
    let scales = validity_scales(stack).map_err(numeric)?;
    let reference = if scales.max() > 0.0 {
        scales.max()
    } else {
        stack.gap_width()
    };
    let d = margin * reference;

    let engine = ForceEngine::zero_temperature(run.quadrature)
        .map_err(|e| CliError::config(e.to_string()))?;
    let curve = [d / EXPONENT_STEP, d, d * EXPONENT_STEP]
        .iter()
        .map(|&x| {
            let s = stack.with_gap_width(x)?;
            Ok((x, engine.evaluate(&s)?.pressure))
        })
        .collect::<casimir_core::Result<Vec<_>>>()
        .map_err(numeric)?;
    let full = curve[1].1;

    let mut report: Report = vec![
        (
            "distance_law_exponent",
            Field::Integer(law.exponent() as i64),
        ),
        ("frequency_scale_m", Field::Number(scales.frequency)),
        ("geometric_scale_m", Field::Number(scales.geometric)),
        ("margin", Field::Number(margin)),
        ("evaluation_distance_m", Field::Number(d)),
        ("full_pressure_N_per_m2", Field::Number(full)),
    ];
    if margin < DEFAULT_MARGIN {
        log::warn!(
            "margin {margin} is below {DEFAULT_MARGIN}; long-distance laws may not apply yet"
        );
    }
    let prediction = match law {
        DistanceLaw::Standard => {
            Some(long_distance_standard(stack, &run.quadrature).and_then(|l| l.pressure(d)))
        }
        DistanceLaw::Slab => {
            Some(long_distance_slab(stack, &run.quadrature).and_then(|l| l.pressure(d)))
        }
        DistanceLaw::Mixed => None,
    };
    match prediction {
        Some(p) => {
            let p = p.map_err(numeric)?;
            report.push(("predicted_pressure_N_per_m2", Field::Number(p)));
            report.push(("relative_difference", Field::Number((p - full) / full)));
        }
        None => report.push((
            "predicted_pressure_N_per_m2",
            Field::Text("no closed form for this wall combination".into()),
        )),
    }
    let measured = local_exponent(&curve, 1).map_err(numeric)?;
    report.push(("measured_exponent", Field::Number(measured)));

    match short_distance_numeric(stack, &run.quadrature) {
        Ok(law) => report.push((
            "short_distance_coefficient_N_m",
            Field::Number(law.coefficient),
        )),
        Err(e) => report.push((
            "short_distance_coefficient_N_m",
            Field::Text(format!("n/a: {e}")),
        )),
    }
    if let Some(params) = identical_oscillator_neighbours(stack) {
        let closed = short_distance_closed_form(&params, 1.0)
            .and_then(|c| Ok((c, short_distance_error_bound(&params)?)));
        match closed {
            Ok((c, bound)) => {
                report.push(("short_distance_closed_form_N_m", Field::Number(c)));
                report.push(("short_distance_closed_form_rel_bound", Field::Number(bound)));
            }
            Err(e) => report.push((
                "short_distance_closed_form_N_m",
                Field::Text(format!("n/a: {e}")),
            )),
        }
    }
    Ok(report)
}

/// Oscillator parameters shared by the two layers facing the gap.
fn identical_oscillator_neighbours(stack: &Stack) -> Option<casimir_core::DrudeLorentzParams> {
    let j = stack.gap_index();
    let layers = stack.layers();
    match (&layers[j - 1].material, &layers[j + 1].material) {
        (Permittivity::DrudeLorentz(a), Permittivity::DrudeLorentz(b)) if a == b => Some(*a),
        _ => None,
    }
}
