//! Line-oriented CSV formats for signals, spectra, features and spectrograms.
//!
//! Every file starts with `# key=value` header lines followed by one column
//! name line and comma-separated rows. Floats are written with 17 significant
//! digits (`{:.16e}`), which round-trips `f64` exactly. The layout is
//! specified in `docs/formats.md`.

use std::fmt::{Display, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::features::{InstFeatures, SampleFlags};
use crate::qft::QSpectrum;
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;
use crate::signal::{ComplexSignal, QuaternionSignal};
use crate::stqft::Spectrogram;

pub const FORMAT_NAME: &str = "hyperan";
pub const SCHEMA_VERSION: u32 = 1;

/// Relative tolerance on the spacing of the `t` column.
const UNIFORM_TOL: f64 = 1e-9;

/// Ordered `key=value` metadata.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    entries: Vec<(String, String)>,
}

impl Metadata {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts or replaces a key. Newlines in values are flattened to spaces.
    pub fn set(&mut self, key: &str, value: impl Display) -> &mut Self {
        let value = value.to_string().replace(['\n', '\r'], " ");
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
        self
    }

    pub fn with(mut self, key: &str, value: impl Display) -> Self {
        self.set(key, value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn remove(&mut self, key: &str) -> Option<String> {
        let i = self.entries.iter().position(|(k, _)| k == key)?;
        Some(self.entries.remove(i).1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Appends the entries of `other` that are not already present.
    pub fn extend_missing(&mut self, other: &Metadata) {
        for (k, v) in other.iter() {
            if self.get(k).is_none() {
                self.set(k, v);
            }
        }
    }
}

/// Sample type of a signal file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    Real,
    Complex,
    Quaternion,
}

impl SignalKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Real => "real",
            Self::Complex => "complex",
            Self::Quaternion => "quaternion",
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            Self::Real => &["t", "value"],
            Self::Complex => &["t", "re", "im"],
            Self::Quaternion => &["t", "w", "x", "y", "z"],
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        match s {
            "real" => Some(Self::Real),
            "complex" => Some(Self::Complex),
            "quaternion" => Some(Self::Quaternion),
            _ => None,
        }
    }
}

/// Contents of a signal file.
#[derive(Debug, Clone, PartialEq)]
pub enum SignalData<T> {
    Real { values: Vec<T>, dt: T },
    Complex(ComplexSignal<T>),
    Quaternion(QuaternionSignal<T>),
}

impl<T: Scalar> SignalData<T> {
    pub fn kind(&self) -> SignalKind {
        match self {
            Self::Real { .. } => SignalKind::Real,
            Self::Complex(_) => SignalKind::Complex,
            Self::Quaternion(_) => SignalKind::Quaternion,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Real { values, .. } => values.len(),
            Self::Complex(s) => s.len(),
            Self::Quaternion(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dt(&self) -> T {
        match self {
            Self::Real { dt, .. } => *dt,
            Self::Complex(s) => s.dt(),
            Self::Quaternion(s) => s.dt(),
        }
    }

    /// Real and complex data as a complex signal.
    pub fn into_complex(self) -> Result<ComplexSignal<T>> {
        match self {
            Self::Real { values, dt } => ComplexSignal::from_real(&values, dt),
            Self::Complex(s) => Ok(s),
            Self::Quaternion(_) => {
                Err(Error::InvalidSignal("expected a real or complex signal, found quaternion".into()))
            }
        }
    }

    pub fn into_quaternion(self) -> Result<QuaternionSignal<T>> {
        match self {
            Self::Quaternion(s) => Ok(s),
            other => Ok(other.into_complex()?.to_quaternion()),
        }
    }

    fn row(&self, n: usize) -> Vec<T> {
        match self {
            Self::Real { values, .. } => vec![values[n]],
            Self::Complex(s) => {
                let c = s.samples()[n];
                vec![c.re, c.im]
            }
            Self::Quaternion(s) => {
                let q = s.samples()[n];
                vec![q.w, q.x, q.y, q.z]
            }
        }
    }
}

fn num<T: Scalar>(x: T) -> String {
    format!("{:.16e}", x.as_f64())
}

fn header(kind: &str, fixed: &[(&str, String)], extra: &Metadata) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# format={FORMAT_NAME}");
    let _ = writeln!(out, "# schema={SCHEMA_VERSION}");
    let _ = writeln!(out, "# kind={kind}");
    for (k, v) in fixed {
        let _ = writeln!(out, "# {k}={v}");
    }
    let reserved = |k: &str| matches!(k, "format" | "schema" | "kind") || fixed.iter().any(|(f, _)| *f == k);
    for (k, v) in extra.iter().filter(|(k, _)| !reserved(k)) {
        let _ = writeln!(out, "# {k}={v}");
    }
    out
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn format_signal<T: Scalar>(s: &SignalData<T>, meta: &Metadata) -> String {
    let kind = s.kind();
    let mut out = header(kind.name(), &[("n", s.len().to_string()), ("dt", num(s.dt()))], meta);
    out.push_str(&kind.columns().join(","));
    out.push('\n');
    // an optional `t0` key offsets the time column, e.g. frame centres
    let t0 = meta.get("t0").and_then(|v| v.parse::<f64>().ok()).map_or(T::zero(), T::lit);
    for n in 0..s.len() {
        out.push_str(&num(t0 + T::from_usize_lossy(n) * s.dt()));
        for v in s.row(n) {
            out.push(',');
            out.push_str(&num(v));
        }
        out.push('\n');
    }
    out
}

pub fn write_signal<T: Scalar>(path: &Path, s: &SignalData<T>, meta: &Metadata) -> Result<()> {
    write_file(path, &format_signal(s, meta))
}

pub fn read_signal<T: Scalar>(path: &Path) -> Result<(SignalData<T>, Metadata)> {
    parse_signal(&read_file(path)?, path)
}

pub fn parse_signal<T: Scalar>(text: &str, path: &Path) -> Result<(SignalData<T>, Metadata)> {
    let table = Table::parse(text, path)?;
    let kind_name = table.require("kind")?;
    let kind = SignalKind::from_name(kind_name)
        .ok_or_else(|| table.error(1, format!("kind `{kind_name}` is not a signal kind (real|complex|quaternion)")))?;
    table.expect_columns(kind.columns())?;
    let n: usize = table.parse_key("n")?;
    let dt: f64 = table.parse_key("dt")?;
    table.expect_rows(n)?;
    table.check_uniform_time(0, dt)?;
    let dtt = T::lit(dt);
    let col = |c: usize| table.rows.iter().map(move |r| T::lit(r[c]));
    let data = match kind {
        SignalKind::Real => SignalData::Real { values: col(1).collect(), dt: dtt },
        SignalKind::Complex => SignalData::Complex(
            ComplexSignal::new(col(1).zip(col(2)).map(|(re, im)| Complex::new(re, im)).collect(), dtt)
                .map_err(|e| table.error(table.body_line, e.to_string()))?,
        ),
        SignalKind::Quaternion => {
            let samples = table
                .rows
                .iter()
                .map(|r| Quaternion::new(T::lit(r[1]), T::lit(r[2]), T::lit(r[3]), T::lit(r[4])))
                .collect();
            SignalData::Quaternion(
                QuaternionSignal::new(samples, dtt).map_err(|e| table.error(table.body_line, e.to_string()))?,
            )
        }
    };
    Ok((data, table.meta))
}

const SPECTRUM_COLUMNS: &[&str] = &["nu", "w", "x", "y", "z"];

/// Spectrum rows in centered (fftshift) frequency order.
pub fn format_spectrum<T: Scalar>(spec: &QSpectrum<T>, meta: &Metadata) -> String {
    let mut out = header("spectrum", &[("n", spec.len().to_string()), ("df", num(spec.df()))], meta);
    out.push_str(&SPECTRUM_COLUMNS.join(","));
    out.push('\n');
    for (nu, b) in spec.centered() {
        let _ = writeln!(out, "{},{},{},{},{}", num(nu), num(b.w), num(b.x), num(b.y), num(b.z));
    }
    out
}

pub fn write_spectrum<T: Scalar>(path: &Path, spec: &QSpectrum<T>, meta: &Metadata) -> Result<()> {
    write_file(path, &format_spectrum(spec, meta))
}

pub fn read_spectrum<T: Scalar>(path: &Path) -> Result<(QSpectrum<T>, Metadata)> {
    parse_spectrum(&read_file(path)?, path)
}

pub fn parse_spectrum<T: Scalar>(text: &str, path: &Path) -> Result<(QSpectrum<T>, Metadata)> {
    let table = Table::parse(text, path)?;
    table.expect_kind("spectrum")?;
    table.expect_columns(SPECTRUM_COLUMNS)?;
    let n: usize = table.parse_key("n")?;
    let df: f64 = table.parse_key("df")?;
    table.expect_rows(n)?;
    let mut bins = vec![Quaternion::zero(); n];
    let placeholder =
        QSpectrum::new(vec![Quaternion::<T>::zero(); n], T::lit(df)).map_err(|e| table.error(1, e.to_string()))?;
    for (row, k) in table.rows.iter().zip(placeholder.centered_order()) {
        bins[k] = Quaternion::new(T::lit(row[1]), T::lit(row[2]), T::lit(row[3]), T::lit(row[4]));
    }
    let spec = QSpectrum::new(bins, T::lit(df)).map_err(|e| table.error(1, e.to_string()))?;
    Ok((spec, table.meta))
}

const FEATURE_COLUMNS: &[&str] = &["t", "rho_re", "rho_im", "phi", "freq", "nx", "ny", "nz", "mask"];

pub fn format_features<T: Scalar>(f: &InstFeatures<T>, meta: &Metadata) -> String {
    let mut out = header("features", &[("n", f.len().to_string()), ("dt", num(f.dt))], meta);
    out.push_str(&FEATURE_COLUMNS.join(","));
    out.push('\n');
    for i in 0..f.len() {
        let r = f.rho[i];
        let v = f.normal[i];
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            num(f.time(i)),
            num(r.re),
            num(r.im),
            num(f.phi[i]),
            num(f.freq[i]),
            num(v[0]),
            num(v[1]),
            num(v[2]),
            f.mask[i]
        );
    }
    out
}

pub fn write_features<T: Scalar>(path: &Path, f: &InstFeatures<T>, meta: &Metadata) -> Result<()> {
    write_file(path, &format_features(f, meta))
}

pub fn read_features<T: Scalar>(path: &Path) -> Result<(InstFeatures<T>, Metadata)> {
    parse_features(&read_file(path)?, path)
}

/// The phase axis is not stored; read-back features carry `u = 1`.
pub fn parse_features<T: Scalar>(text: &str, path: &Path) -> Result<(InstFeatures<T>, Metadata)> {
    let table = Table::parse(text, path)?;
    table.expect_kind("features")?;
    table.expect_columns(FEATURE_COLUMNS)?;
    let n: usize = table.parse_key("n")?;
    let dt: f64 = table.parse_key("dt")?;
    table.expect_rows(n)?;
    table.check_uniform_time(0, dt)?;
    let mut mask = Vec::with_capacity(n);
    for (i, r) in table.rows.iter().enumerate() {
        let m = r[8];
        if !(m.fract() == 0.0 && (0.0..8.0).contains(&m)) {
            return Err(table.error(table.body_line + i, format!("mask value {m} is not a flag set in 0..=7")));
        }
        mask.push(SampleFlags::from_bits(m as u8));
    }
    let c = |k: usize| table.rows.iter().map(move |r| T::lit(r[k]));
    let f = InstFeatures {
        rho: c(1).zip(c(2)).map(|(re, im)| Complex::new(re, im)).collect(),
        phi: c(3).collect(),
        freq: c(4).collect(),
        normal: table.rows.iter().map(|r| [T::lit(r[5]), T::lit(r[6]), T::lit(r[7])]).collect(),
        axis: vec![Complex::new(T::one(), T::zero()); n],
        mask,
        dt: T::lit(dt),
    };
    Ok((f, table.meta))
}

/// Frame-major matrix: the column line is `t\nu` followed by the bin
/// frequencies, then one row per frame starting with the frame-center time.
pub fn format_spectrogram<T: Scalar>(s: &Spectrogram<T>, meta: &Metadata) -> String {
    let fixed = [
        ("frames", s.n_frames().to_string()),
        ("bins", s.n_bins().to_string()),
        ("window_len", s.window_len.to_string()),
        ("hop", s.frame_hop.to_string()),
        ("df", num(s.df)),
        ("dt_frame", num(s.dt_frame)),
        ("dt", num(s.dt)),
        ("one_sided", s.one_sided.to_string()),
    ];
    let mut out = header("spectrogram", &fixed, meta);
    out.push_str("t\\nu");
    for f in s.frequencies() {
        out.push(',');
        out.push_str(&num(f));
    }
    out.push('\n');
    for (i, row) in s.mags.iter().enumerate() {
        out.push_str(&num(s.frame_time(i)));
        for &m in row {
            out.push(',');
            out.push_str(&num(m));
        }
        out.push('\n');
    }
    out
}

pub fn write_spectrogram<T: Scalar>(path: &Path, s: &Spectrogram<T>, meta: &Metadata) -> Result<()> {
    write_file(path, &format_spectrogram(s, meta))
}

pub fn read_spectrogram<T: Scalar>(path: &Path) -> Result<(Spectrogram<T>, Metadata)> {
    parse_spectrogram(&read_file(path)?, path)
}

pub fn parse_spectrogram<T: Scalar>(text: &str, path: &Path) -> Result<(Spectrogram<T>, Metadata)> {
    let table = Table::parse(text, path)?;
    table.expect_kind("spectrogram")?;
    let frames: usize = table.parse_key("frames")?;
    let bins: usize = table.parse_key("bins")?;
    if table.columns.len() != bins + 1 || table.columns[0] != "t\\nu" {
        return Err(table.error(
            table.body_line - 1,
            format!("expected `t\\nu` and {bins} frequency columns, found {} columns", table.columns.len()),
        ));
    }
    table.expect_rows(frames)?;
    let one_sided = match table.require("one_sided")? {
        "true" => true,
        "false" => false,
        other => return Err(table.error(1, format!("one_sided must be true or false, got `{other}`"))),
    };
    let s = Spectrogram {
        mags: table.rows.iter().map(|r| r[1..].iter().map(|&v| T::lit(v)).collect()).collect(),
        frame_hop: table.parse_key("hop")?,
        window_len: table.parse_key("window_len")?,
        df: T::lit(table.parse_key("df")?),
        dt_frame: T::lit(table.parse_key("dt_frame")?),
        dt: T::lit(table.parse_key("dt")?),
        one_sided,
    };
    Ok((s, table.meta))
}

/// Reads only the header of any file written by this module.
pub fn read_metadata(path: &Path) -> Result<Metadata> {
    Ok(Table::parse(&read_file(path)?, path)?.meta)
}

/// Parsed header, column names and numeric rows.
struct Table {
    path: PathBuf,
    meta: Metadata,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    /// 1-based line number of the first data row.
    body_line: usize,
}

impl Table {
    fn parse(text: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, message: String| Error::Format { path: path.to_path_buf(), line, message };
        let mut meta = Metadata::new();
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let mut columns = None;
        for (no, line) in lines.by_ref() {
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let (k, v) = rest
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| err(no, format!("header line is not `# key=value`: {line:?}")))?;
                meta.set(k.trim(), v.trim());
            } else {
                columns = Some((no, line.split(',').map(|c| c.trim().to_string()).collect::<Vec<_>>()));
                break;
            }
        }
        let (col_line, columns) =
            columns.ok_or_else(|| err(text.lines().count().max(1), "no column header line".into()))?;
        match meta.get("format") {
            Some(FORMAT_NAME) => {}
            Some(other) => return Err(err(1, format!("unsupported format `{other}`"))),
            None => return Err(Error::MissingKey { path: path.to_path_buf(), key: "format".into() }),
        }
        let schema =
            meta.get("schema").ok_or_else(|| Error::MissingKey { path: path.to_path_buf(), key: "schema".into() })?;
        if schema != SCHEMA_VERSION.to_string() {
            return Err(err(1, format!("unsupported schema version `{schema}` (expected {SCHEMA_VERSION})")));
        }
        let mut rows = Vec::new();
        for (no, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|f| f.trim().parse::<f64>().map_err(|_| err(no, format!("not a number: {:?}", f.trim()))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != columns.len() {
                return Err(err(no, format!("expected {} columns, found {}", columns.len(), row.len())));
            }
            rows.push(row);
        }
        Ok(Self { path: path.to_path_buf(), meta, columns, rows, body_line: col_line + 1 })
    }

    fn error(&self, line: usize, message: String) -> Error {
        Error::Format { path: self.path.clone(), line, message }
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.meta.get(key).ok_or_else(|| Error::MissingKey { path: self.path.clone(), key: key.into() })
    }

    fn parse_key<V: std::str::FromStr>(&self, key: &str) -> Result<V> {
        let v = self.require(key)?;
        v.parse().map_err(|_| self.error(1, format!("header key `{key}` has invalid value `{v}`")))
    }

    fn expect_kind(&self, kind: &str) -> Result<()> {
        let found = self.require("kind")?;
        if found != kind {
            return Err(self.error(1, format!("expected a {kind} file, found kind `{found}`")));
        }
        Ok(())
    }

    fn expect_columns(&self, want: &[&str]) -> Result<()> {
        if self.columns.iter().map(String::as_str).ne(want.iter().copied()) {
            return Err(self.error(
                self.body_line - 1,
                format!(
                    "columns `{}` do not match the declared kind (expected `{}`)",
                    self.columns.join(","),
                    want.join(",")
                ),
            ));
        }
        Ok(())
    }

    fn expect_rows(&self, n: usize) -> Result<()> {
        if self.rows.len() != n || n == 0 {
            return Err(self.error(
                self.body_line,
                format!("header declares n={n} but the file has {} data rows", self.rows.len()),
            ));
        }
        Ok(())
    }

    fn check_uniform_time(&self, col: usize, dt: f64) -> Result<()> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(self.error(1, format!("dt must be positive, got {dt}")));
        }
        let t0 = self.rows[0][col];
        for (i, r) in self.rows.iter().enumerate() {
            let want = t0 + i as f64 * dt;
            if (r[col] - want).abs() > UNIFORM_TOL * want.abs().max(dt) {
                return Err(self.error(
                    self.body_line + i,
                    format!("time {} breaks the uniform spacing dt={dt} (expected {want})", r[col]),
                ));
            }
        }
        Ok(())
    }
}
