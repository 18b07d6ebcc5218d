//! Deterministic rendering: every float is printed with 17 significant
//! digits (round-trip exact for doubles) in both CSV and JSON, so the
//! two formats carry identical numeric values and identical configs
//! produce byte-identical output.

use std::io::Write;

use serde::Serialize;

/// 17-significant-digit scientific notation; non-finite values print as
/// `inf`/`-inf`/`nan` (CSV only; JSON renders them as null).
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// CSV cell for an optional float; absent values render as empty cells.
pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize a document to JSON with the shared float formatting and a
/// trailing newline. Key order follows struct declaration order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serializer emits utf-8")
}

/// Assemble a CSV document: header line plus rows, LF endings.
pub fn to_csv(header: &str, rows: &[String]) -> String {
    let mut out = String::with_capacity(header.len() + 1 + rows.len() * 32);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_17_significant_digits() {
        assert_eq!(float(0.875), "8.7500000000000000e-1");
        assert_eq!(float(-0.875), "-8.7500000000000000e-1");
        assert_eq!(float(0.0), "0.0000000000000000e0");
        assert_eq!(float(f64::INFINITY), "inf");
        assert_eq!(float(f64::NEG_INFINITY), "-inf");
        assert_eq!(float(f64::NAN), "nan");
        // Round trip is exact.
        let x = 0.3142857142857143f64;
        assert_eq!(float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn json_floats_match_csv_floats() {
        #[derive(Serialize)]
        struct Doc {
            value: f64,
        }
        let doc = to_json(&Doc { value: 0.875 });
        assert_eq!(doc, "{\"value\":8.7500000000000000e-1}\n");
    }

    #[test]
    fn json_renders_non_finite_as_null() {
        #[derive(Serialize)]
        struct Doc {
            value: f64,
        }
        assert_eq!(to_json(&Doc { value: f64::NAN }), "{\"value\":null}\n");
    }
}
