//! File formats: JSON for sets, bounds, states and optimizer results, CSV
//! for sweeps and convergence tables.
//!
//! Floating-point JSON values are written with 17 significant digits
//! (`{:.16e}`), so a set written and read back serializes to the same bytes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Result, SteeringError};
use crate::hemisphere::ConvergenceRow;
use crate::lhsbound::MeasurementSet;
use crate::optimizer::{AnnealingConfig, OptimizationResult};
use crate::qstate::{ComplexMatrix4, DensityMatrix};
use crate::violation::SweepRow;

/// Rows further than this from unit length are rejected on read.
pub const MAX_RENORMALIZATION: f64 = 1e-3;
/// Rows within this of unit length are read without rescaling.
const UNIT_TOLERANCE: f64 = 1e-12;

pub const SWEEP_HEADER: [&str; 6] = ["param1", "param2", "quantum_value", "lhs_bound", "margin", "detected"];
pub const CONVERGENCE_HEADER: [&str; 4] = ["n", "N", "all_ones", "analytic"];

/// Pretty JSON with every float printed as `{:.16e}`; non-finite values
/// become `null`.
struct SigFormatter<'a>(PrettyFormatter<'a>);

impl Formatter for SigFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes `value` as pretty JSON with 17-significant-digit floats and a
/// trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    fs::write(path, to_json(value)?)?;
    Ok(())
}

fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Formats `x` with 12 significant digits, fixed-point where readable.
pub fn format_sig12(x: f64) -> String {
    format_sig(x, 12)
}

pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    // round first so that 9.999…→10 lands in the right decade
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// On-disk measurement set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetFile {
    pub label: String,
    pub directions: Vec<[f64; 3]>,
}

impl From<&MeasurementSet> for SetFile {
    fn from(set: &MeasurementSet) -> Self {
        SetFile {
            label: set.label().to_string(),
            directions: set.rows(),
        }
    }
}

impl SetFile {
    /// Converts to a set. Rows within 1e-12 of unit length are kept as
    /// written; others are rescaled if within [`MAX_RENORMALIZATION`].
    /// Returns the set and the largest renormalization delta.
    pub fn into_set(self) -> Result<(MeasurementSet, f64)> {
        let exact = self
            .directions
            .iter()
            .all(|r| ((r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt() - 1.0).abs() <= UNIT_TOLERANCE);
        if exact {
            return Ok((MeasurementSet::from_rows(self.label, &self.directions)?, 0.0));
        }
        let (set, delta) = MeasurementSet::from_rows_normalized(self.label, &self.directions)?;
        if !(delta <= MAX_RENORMALIZATION) {
            return Err(SteeringError::validation(format!(
                "direction norm deviates from 1 by {delta:.3e} (limit {MAX_RENORMALIZATION:.0e})"
            )));
        }
        Ok((set, delta))
    }
}

pub fn set_to_json(set: &MeasurementSet) -> Result<String> {
    to_json(&SetFile::from(set))
}

pub fn set_from_json(text: &str) -> Result<(MeasurementSet, f64)> {
    serde_json::from_str::<SetFile>(text)?.into_set()
}

pub fn write_set(path: impl AsRef<Path>, set: &MeasurementSet) -> Result<()> {
    write_json(path, &SetFile::from(set))
}

pub fn read_set(path: impl AsRef<Path>) -> Result<(MeasurementSet, f64)> {
    read_json::<SetFile>(path)?.into_set()
}

/// On-disk density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub re: [[f64; 4]; 4],
    pub im: [[f64; 4]; 4],
}

impl From<&DensityMatrix> for StateFile {
    fn from(rho: &DensityMatrix) -> Self {
        let e = rho.matrix().entries();
        let mut f = StateFile {
            re: [[0.0; 4]; 4],
            im: [[0.0; 4]; 4],
        };
        for i in 0..4 {
            for j in 0..4 {
                f.re[i][j] = e[i][j].re;
                f.im[i][j] = e[i][j].im;
            }
        }
        f
    }
}

impl StateFile {
    pub fn into_state(self) -> Result<DensityMatrix> {
        let mut e = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                e[i][j] = Complex64::new(self.re[i][j], self.im[i][j]);
            }
        }
        DensityMatrix::new(ComplexMatrix4::new(e)?)
    }
}

pub fn write_state(path: impl AsRef<Path>, rho: &DensityMatrix) -> Result<()> {
    write_json(path, &StateFile::from(rho))
}

pub fn read_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    read_json::<StateFile>(path)?.into_state()
}

/// Optimizer output with the full configuration echoed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationReport {
    pub config: AnnealingConfig,
    pub best_bound: f64,
    pub best_set: SetFile,
    pub history: Vec<(usize, f64)>,
    pub evaluations: u64,
}

impl OptimizationReport {
    pub fn new(config: &AnnealingConfig, result: &OptimizationResult) -> Self {
        OptimizationReport {
            config: *config,
            best_bound: result.best_bound,
            best_set: SetFile::from(&result.best_set),
            history: result.history.clone(),
            evaluations: result.evaluations,
        }
    }
}

pub fn read_config(path: impl AsRef<Path>) -> Result<AnnealingConfig> {
    let config: AnnealingConfig = read_json(path)?;
    config.validate()?;
    Ok(config)
}

fn num(x: f64) -> String {
    format!("{x}")
}

/// Writes sweep rows; `param2` is left empty for one-parameter sweeps.
pub fn write_sweep_csv<W: Write>(writer: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        let r = &row.result;
        w.write_record([
            num(row.param1),
            row.param2.map(num).unwrap_or_default(),
            num(r.quantum_value),
            num(r.lhs_bound),
            num(r.margin),
            if r.detected { "1" } else { "0" }.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_convergence_csv<W: Write>(writer: W, rows: &[ConvergenceRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CONVERGENCE_HEADER)?;
    for row in rows {
        w.write_record([row.n.to_string(), row.total.to_string(), num(row.all_ones), num(row.analytic)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn sweep_csv_file(path: impl AsRef<Path>, rows: &[SweepRow]) -> Result<()> {
    write_sweep_csv(fs::File::create(path)?, rows)
}

pub fn convergence_csv_file(path: impl AsRef<Path>, rows: &[ConvergenceRow]) -> Result<()> {
    write_convergence_csv(fs::File::create(path)?, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::make_werner;

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.5270462766947299), "0.527046276695");
        assert_eq!(format_sig12(1.0), "1.00000000000");
        assert_eq!(format_sig12(-0.25), "-0.250000000000");
        assert_eq!(format_sig12(0.0), "0.00000000000");
        assert_eq!(format_sig12(0.99999999999999), "1.00000000000");
        assert_eq!(format_sig12(1.5e-12), "1.50000000000e-12");
        assert_eq!(format_sig12(123456.0), "123456.000000");
    }

    #[test]
    fn floats_use_seventeen_digits() {
        let text = to_json(&[0.1f64, -2.0]).unwrap();
        assert!(text.contains("1.0000000000000001e-1"), "{text}");
        assert!(text.contains("-2.0000000000000000e0"), "{text}");
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, vec![0.1, -2.0]);
        assert!(to_json(&f64::NAN).unwrap().starts_with("null"));
    }

    #[test]
    fn set_round_trip_is_byte_identical() {
        let s = 0.5f64.sqrt();
        let set = MeasurementSet::from_rows("pair", &[[s, 0.0, s], [-s, 0.0, s]]).unwrap();
        let a = set_to_json(&set).unwrap();
        let (back, delta) = set_from_json(&a).unwrap();
        assert_eq!(delta, 0.0);
        assert_eq!(back, set);
        assert_eq!(set_to_json(&back).unwrap(), a);
    }

    #[test]
    fn set_reader_renormalizes_printed_rows() {
        let (set, delta) =
            set_from_json(r#"{"label":"x","directions":[[0.7071,0,0.7071],[0,0,1]]}"#).unwrap();
        assert!(delta > 1e-6 && delta < 1e-4);
        assert!((set.directions()[0].vec().norm() - 1.0).abs() < 1e-15);
        let err = set_from_json(r#"{"label":"x","directions":[[0.5,0,0.5]]}"#).unwrap_err();
        assert!(err.is_validation());
        assert!(set_from_json(r#"{"label":"x","directions":[]}"#).is_err());
    }

    #[test]
    fn state_round_trip() {
        let rho = make_werner(0.3).unwrap();
        let text = to_json(&StateFile::from(&rho)).unwrap();
        let back = serde_json::from_str::<StateFile>(&text).unwrap().into_state().unwrap();
        assert_eq!(back, rho);
        let mut bad = StateFile::from(&rho);
        bad.re[0][0] += 0.5;
        assert!(bad.into_state().is_err());
    }

    #[test]
    fn convergence_csv_header() {
        let rows = [ConvergenceRow {
            n: 2,
            total: 3,
            all_ones: 0.75,
            analytic: 0.7,
        }];
        let mut out = Vec::new();
        write_convergence_csv(&mut out, &rows).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "n,N,all_ones,analytic\n2,3,0.75,0.7\n");
    }
}
