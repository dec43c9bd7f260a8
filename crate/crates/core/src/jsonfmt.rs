//! JSON serialization with floats written to 17 significant digits, which
//! is enough to reproduce every f64 bit-exactly on re-parse.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` as one line of JSON with 17-significant-digit floats.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    value.serialize(&mut ser).expect("serialization failed");
    String::from_utf8(out).expect("serializer produced invalid utf8")
}

/// Formats a single float the same way the JSON writer does.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_bit_exactly() {
        let vals = [
            0.1,
            -1.0 / 3.0,
            std::f64::consts::PI,
            1.0e-300,
            6.02214076e23,
            -0.0,
        ];
        for v in vals {
            let s = to_string(&v);
            let back: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "{v} -> {s} -> {back}");
        }
    }

    #[test]
    fn nested_structures() {
        #[derive(Serialize)]
        struct Demo {
            name: &'static str,
            xs: Vec<f64>,
        }
        let s = to_string(&Demo { name: "d", xs: vec![1.5, 2.0] });
        assert!(s.contains("1.5000000000000000e0"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["name"], "d");
    }
}
