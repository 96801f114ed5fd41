//! JSON and CSV output with a fixed field order.
//!
//! Numbers are printed in scientific notation with `precision` significant
//! digits. The standard formatter rounds the exact binary value, ties to even.

use extfd::fracdiff::PfdTerm;
use extfd::numkernel::QuadResult;
use extfd::C64;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One evaluated quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub value: C64,
    pub abs_err: f64,
    pub evals: usize,
    pub route: String,
    pub branch_notes: Vec<String>,
}

impl Record {
    pub fn exact(value: C64, route: impl Into<String>) -> Self {
        Record {
            value,
            abs_err: 0.0,
            evals: 0,
            route: route.into(),
            branch_notes: Vec::new(),
        }
    }

    pub fn from_quad(q: &QuadResult, route: impl Into<String>) -> Self {
        Record {
            value: q.value,
            abs_err: q.abs_err,
            evals: q.evals,
            route: route.into(),
            branch_notes: Vec::new(),
        }
    }
}

pub fn check_precision(precision: usize) -> Result<(), CliError> {
    if (1..=17).contains(&precision) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("precision must be within 1..=17, got {precision}")))
    }
}

pub fn num(x: f64, precision: usize) -> String {
    if x.is_finite() {
        format!("{:.*e}", precision - 1, x)
    } else {
        "null".into()
    }
}

/// Like [`num`] with an explicit leading sign.
pub fn signed(x: f64, precision: usize) -> String {
    if x.is_finite() {
        format!("{:+.*e}", precision - 1, x)
    } else {
        "nan".into()
    }
}

pub fn complex_text(z: C64, precision: usize) -> String {
    format!("{}{}i", num(z.re, precision), signed(z.im, precision))
}

pub fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialise")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const RECORD_HEADER: &str = "value_re,value_im,abs_err,evals,route,branch_notes";

pub fn record_json(r: &Record, precision: usize) -> String {
    let notes: Vec<String> = r.branch_notes.iter().map(|n| json_str(n)).collect();
    format!(
        "{{\"value_re\":{},\"value_im\":{},\"abs_err\":{},\"evals\":{},\"route\":{},\"branch_notes\":[{}]}}",
        num(r.value.re, precision),
        num(r.value.im, precision),
        num(r.abs_err, precision),
        r.evals,
        json_str(&r.route),
        notes.join(",")
    )
}

pub fn record_csv_row(r: &Record, precision: usize) -> String {
    format!(
        "{},{},{},{},{},{}",
        num(r.value.re, precision),
        signed(r.value.im, precision),
        num(r.abs_err, precision),
        r.evals,
        csv_field(&r.route),
        csv_field(&r.branch_notes.join("; "))
    )
}

pub fn emit_record(r: &Record, format: Format, precision: usize) -> Result<String, CliError> {
    check_precision(precision)?;
    Ok(match format {
        Format::Json => record_json(r, precision) + "\n",
        Format::Csv => format!("{RECORD_HEADER}\n{}\n", record_csv_row(r, precision)),
    })
}

pub const PFD_HEADER: &str = "pole_re,pole_im,order,coeff_re,coeff_im";

pub fn emit_pfd(terms: &[PfdTerm<C64>], format: Format, precision: usize) -> Result<String, CliError> {
    check_precision(precision)?;
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(PFD_HEADER);
            out.push('\n');
            for t in terms {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    num(t.pole.re, precision),
                    signed(t.pole.im, precision),
                    t.order,
                    num(t.coeff.re, precision),
                    signed(t.coeff.im, precision)
                ));
            }
        }
        Format::Json => {
            let rows: Vec<String> = terms
                .iter()
                .map(|t| {
                    format!(
                        "{{\"pole_re\":{},\"pole_im\":{},\"order\":{},\"coeff_re\":{},\"coeff_im\":{}}}",
                        num(t.pole.re, precision),
                        num(t.pole.im, precision),
                        t.order,
                        num(t.coeff.re, precision),
                        num(t.coeff.im, precision)
                    )
                })
                .collect();
            out.push('[');
            out.push_str(&rows.join(","));
            out.push_str("]\n");
        }
    }
    Ok(out)
}
