//! CSV and JSON output. CSV numbers carry 17 significant digits; JSON uses
//! the shortest representation that parses back to the same bits.

use std::io::Write;

use lzc_core::PropagationConfig;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sweep::{Output, SpectrumRow, SweepRow};
use crate::template::Template;

/// Which optional columns a sweep table has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Columns {
    pub analytic: usize,
    pub numeric: usize,
    pub max_abs_err: bool,
    pub dt_deviation: bool,
    pub max_abs_err_halved: bool,
    pub norm_drift: bool,
    pub log10_ica: bool,
    pub lzc_estimate: bool,
    pub lz_estimate: bool,
    pub decoupled_amplitude: bool,
}

impl Columns {
    /// Every column some row fills.
    pub fn of(rows: &[SweepRow]) -> Self {
        let mut c = Columns::default();
        for r in rows {
            c.analytic = c.analytic.max(r.analytic.as_ref().map_or(0, Vec::len));
            c.numeric = c.numeric.max(r.numeric.len());
            c.max_abs_err |= r.max_abs_err.is_some();
            c.dt_deviation |= r.dt_deviation.is_some();
            c.max_abs_err_halved |= r.max_abs_err_halved.is_some();
            c.norm_drift |= r.norm_drift.is_some();
            c.log10_ica |= r.log10_ica.is_some();
            c.lzc_estimate |= r.lzc_estimate.is_some();
            c.lz_estimate |= r.lz_estimate.is_some();
            c.decoupled_amplitude |= r.decoupled_amplitude.is_some();
        }
        c
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["sweep_value".to_string()];
        h.extend((0..self.analytic).map(|i| format!("analytic_{i}")));
        h.extend((0..self.numeric).map(|i| format!("numeric_{i}")));
        let flags = [
            (self.max_abs_err, "max_abs_err"),
            (self.dt_deviation, "dt_deviation"),
            (self.max_abs_err_halved, "max_abs_err_halved"),
            (self.norm_drift, "norm_drift"),
            (self.log10_ica, "log10_ica"),
            (self.lzc_estimate, "lzc_estimate"),
            (self.lz_estimate, "lz_estimate"),
            (self.decoupled_amplitude, "decoupled_amplitude"),
        ];
        h.extend(flags.iter().filter(|f| f.0).map(|f| f.1.to_string()));
        h
    }

    fn cells(&self, r: &SweepRow) -> Vec<String> {
        fn list(v: Option<&Vec<f64>>, n: usize) -> impl Iterator<Item = String> + '_ {
            (0..n).map(move |i| opt(v.and_then(|v| v.get(i).copied())))
        }
        let mut out = vec![num(r.sweep_value)];
        out.extend(list(r.analytic.as_ref(), self.analytic));
        out.extend(list(Some(&r.numeric), self.numeric));
        let optional = [
            (self.max_abs_err, r.max_abs_err),
            (self.dt_deviation, r.dt_deviation),
            (self.max_abs_err_halved, r.max_abs_err_halved),
            (self.norm_drift, r.norm_drift),
            (self.log10_ica, r.log10_ica),
            (self.lzc_estimate, r.lzc_estimate),
            (self.lz_estimate, r.lz_estimate),
            (self.decoupled_amplitude, r.decoupled_amplitude),
        ];
        out.extend(optional.iter().filter(|c| c.0).map(|c| opt(c.1)));
        out
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], columns: &Columns, mut out: W) -> Result<()> {
    writeln!(out, "{}", columns.header().join(","))?;
    for r in rows {
        writeln!(out, "{}", columns.cells(r).join(","))?;
    }
    Ok(())
}

pub fn write_spectrum_csv<W: Write>(rows: &[SpectrumRow], dim: usize, mut out: W) -> Result<()> {
    let mut header = vec!["t".to_string()];
    header.extend((0..dim).map(|i| format!("lambda_{i}")));
    writeln!(out, "{}", header.join(","))?;
    for r in rows {
        let mut cells = vec![num(r.t)];
        cells.extend(r.lambda.iter().map(|&x| num(x)));
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub scenario: String,
    pub model: Template,
    /// Absent for analytic-only tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<PropagationConfig>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub scenario: String,
    pub model: Template,
    pub rows: Vec<SpectrumRow>,
}

pub fn write_json<W: Write, T: Serialize>(doc: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, doc)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_sweep_json(text: &str) -> Result<SweepDocument> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Writes a scenario output in `format`. `columns` fixes the CSV layout of
/// an empty sweep.
pub fn emit<W: Write>(
    name: &str,
    model: &Template,
    config: Option<&PropagationConfig>,
    output: &Output,
    columns: Option<Columns>,
    format: Format,
    out: W,
) -> Result<()> {
    match (output, format) {
        (Output::Sweep(rows), Format::Csv) => write_csv(rows, &columns.unwrap_or_else(|| Columns::of(rows)), out),
        (Output::Sweep(rows), Format::Json) => write_json(
            &SweepDocument { scenario: name.to_string(), model: model.clone(), config: config.copied(), rows: rows.clone() },
            out,
        ),
        (Output::Spectrum(rows), Format::Csv) => write_spectrum_csv(rows, model.builder().dim(), out),
        (Output::Spectrum(rows), Format::Json) => write_json(
            &SpectrumDocument { scenario: name.to_string(), model: model.clone(), rows: rows.clone() },
            out,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lzc_core::LzcModel;

    fn sample_row() -> SweepRow {
        SweepRow {
            sweep_value: 0.1,
            analytic: Some(vec![0.1 + 0.2, 1.0 / 3.0]),
            numeric: vec![0.30000000000000004, 0.333333333333333],
            max_abs_err: Some(3.3e-16),
            dt_deviation: Some(1e-300),
            max_abs_err_halved: None,
            norm_drift: Some(f64::MIN_POSITIVE),
            log10_ica: Some(-42.123456789012345),
            lzc_estimate: None,
            lz_estimate: None,
            decoupled_amplitude: None,
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        let columns = Columns { analytic: 3, numeric: 3, max_abs_err: true, dt_deviation: true, ..Default::default() };
        let mut buf = Vec::new();
        write_csv(&[], &columns, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "sweep_value,analytic_0,analytic_1,analytic_2,numeric_0,numeric_1,numeric_2,max_abs_err,dt_deviation\n"
        );
    }

    #[test]
    fn absent_columns_are_omitted() {
        let mut row = sample_row();
        row.analytic = None;
        row.max_abs_err = None;
        let c = Columns::of(&[row]);
        assert_eq!(c.header(), ["sweep_value", "numeric_0", "numeric_1", "dt_deviation", "norm_drift", "log10_ica"]);
    }

    #[test]
    fn csv_numbers_have_17_digits() {
        let mut buf = Vec::new();
        write_csv(&[sample_row()], &Columns::of(&[sample_row()]), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        let first = line.split(',').next().unwrap();
        assert_eq!(first, "1.0000000000000001e-1");
        for cell in line.split(',') {
            let x: f64 = cell.parse().unwrap();
            assert_eq!(num(x), cell);
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let doc = SweepDocument {
            scenario: "fig3a".into(),
            model: Template::Lzc(LzcModel::from_pairs(0.7, &[(0.3, 1.0), (0.1, 0.5)]).unwrap()),
            config: Some(PropagationConfig::default()),
            rows: vec![sample_row(), sample_row()],
        };
        let mut buf = Vec::new();
        write_json(&doc, &mut buf).unwrap();
        let back = read_sweep_json(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, doc);
        let bits = |d: &SweepDocument| -> Vec<u64> { d.rows.iter().flat_map(|r| r.numeric.iter().map(|x| x.to_bits())).collect() };
        assert_eq!(bits(&back), bits(&doc));
    }

    #[test]
    fn spectrum_csv_columns() {
        let rows = vec![SpectrumRow { t: 1.0, lambda: vec![-1.0, 0.5, 2.0] }];
        let mut buf = Vec::new();
        write_spectrum_csv(&rows, 3, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("t,lambda_0,lambda_1,lambda_2\n"));
    }
}
