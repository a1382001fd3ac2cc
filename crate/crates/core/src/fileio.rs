//! Serialization helpers shared by the library and the CLI: JSON and CSV
//! writers that render every float with 17 significant digits so files are
//! lossless and byte-stable across runs and platforms.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

/// Reproducibility metadata embedded in every output file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FileMeta {
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub generator: String,
}

impl FileMeta {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        FileMeta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            seed,
            generator: crate::rng::GENERATOR_ID.to_string(),
        }
    }
}

/// Formats a float with 17 significant digits (scientific, lossless).
pub fn fmt_f64(value: f64) -> String {
    debug_assert!(value.is_finite(), "output floats must be finite, got {value}");
    format!("{value:.16e}")
}

struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes to JSON with the 17-significant-digit float convention and a
/// trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> crate::error::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigitFormatter);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits utf-8"))
}

/// Writes `# key=value` comment lines for a CSV header block.
pub fn write_csv_meta<W: Write>(w: &mut W, meta: &FileMeta) -> io::Result<()> {
    writeln!(w, "# version={}", meta.version)?;
    writeln!(w, "# command={}", meta.command)?;
    writeln!(w, "# seed={}", meta.seed)?;
    writeln!(w, "# generator={}", meta.generator)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for &x in &[0.5, 1.0 / 3.0, 6.02e23, -1.25e-17, 0.0] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }

    #[test]
    fn json_floats_use_sig_digits() {
        #[derive(Serialize)]
        struct Row {
            x: f64,
            n: u32,
        }
        let s = to_json_string(&Row { x: 0.5, n: 3 }).unwrap();
        assert_eq!(s, "{\"x\":5.0000000000000000e-1,\"n\":3}\n");
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["x"].as_f64().unwrap(), 0.5);
    }
}
