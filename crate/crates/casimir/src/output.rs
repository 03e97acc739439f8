//! CSV and JSON emission.

use std::io::Write;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliError;
use crate::run::{Field, Kind, Report, Table};

/// Floats carry 17 significant digits so that values survive a round trip.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn header(table: &Table) -> Vec<&'static str> {
    let mut h = vec!["axis1"];
    if table.axis_count > 1 {
        h.push("axis2");
    }
    match table.kind {
        Kind::Pressure => h.extend(["pressure_N_per_m2", "f0_N_per_m2"]),
        Kind::OneD => h.extend(["force_N_per_unit_area", "f0_N_per_unit_area"]),
    }
    h.extend(["f_over_f0", "rel_err", "status"]);
    h
}

fn row_fields(table: &Table) -> impl Iterator<Item = (Vec<Option<f64>>, String)> + '_ {
    table.rows.iter().map(move |r| {
        let mut v: Vec<Option<f64>> = r.axes.iter().copied().map(Some).collect();
        match &r.result {
            Ok(x) => v.extend([
                Some(x.value),
                Some(x.f0),
                Some(x.f_over_f0),
                Some(x.rel_err),
            ]),
            Err(_) => v.extend([None, r.f0, None, None]),
        }
        (v, r.status())
    })
}

pub fn write_table(table: &Table, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header(table))?;
            for (values, status) in row_fields(table) {
                let mut record: Vec<String> = values
                    .into_iter()
                    .map(|v| v.map(fmt_float).unwrap_or_default())
                    .collect();
                record.push(status);
                w.write_record(&record)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let names = header(table);
            let rows: Vec<Value> = row_fields(table)
                .map(|(values, status)| {
                    let mut m = Map::new();
                    for (name, v) in names.iter().zip(values) {
                        m.insert((*name).into(), v.map(Value::from).unwrap_or(Value::Null));
                    }
                    m.insert("status".into(), Value::from(status));
                    Value::Object(m)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn field_value(f: &Field) -> Value {
    match f {
        Field::Number(x) => Value::from(*x),
        Field::Integer(n) => Value::from(*n),
        Field::Text(s) => Value::from(s.as_str()),
    }
}

/// Key/value pairs, as a two-column CSV or a JSON object.
pub fn write_report(report: &Report, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["key", "value"])?;
            for (k, f) in report {
                let v = match f {
                    Field::Number(x) => fmt_float(*x),
                    Field::Integer(n) => n.to_string(),
                    Field::Text(s) => s.clone(),
                };
                w.write_record([*k, v.as_str()])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let m: Map<String, Value> = report
                .iter()
                .map(|(k, f)| ((*k).to_string(), field_value(f)))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &Value::Object(m))?;
            writeln!(out)?;
        }
    }
    Ok(())
}
