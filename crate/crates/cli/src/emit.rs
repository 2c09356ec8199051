//! Report serialization. Floating values are printed with 17 significant
//! digits everywhere (JSON and CSV) so reruns are byte-identical and values
//! round-trip the underlying doubles exactly.

use serde::Serialize;
use std::io;

/// `{:.16e}` gives one leading digit plus 16 fractional digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize to JSON with fixed field order (struct declaration order) and
/// 17-significant-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("reports contain no non-serializable values");
    let mut text = String::from_utf8(out).expect("serde_json emits utf-8");
    text.push('\n');
    text
}

/// One CSV line from pre-rendered fields. Field contents here never contain
/// commas or quotes (space ids are comma-free by construction).
pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}
