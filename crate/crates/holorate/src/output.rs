//! Output plumbing shared by the CLI commands.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// Where and how a command renders. Identical inputs render byte-identically:
/// all maps serialized here are ordered and nothing time- or
/// environment-dependent enters the payload.
#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub format: Format,
    /// `None` writes to standard output.
    pub destination: Option<PathBuf>,
    /// Decimal places for real-valued fields.
    pub precision: usize,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { format: Format::Pretty, destination: None, precision: 6 }
    }
}

impl OutputSpec {
    pub fn write_payload(&self, payload: &str) -> io::Result<()> {
        match &self.destination {
            Some(path) => fs::write(path, payload),
            None => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(payload.as_bytes())
            }
        }
    }

    pub fn real(&self, x: f64) -> String {
        format!("{:.*}", self.precision, x)
    }

    /// JSON number carrying `precision` decimals.
    pub fn json_real(&self, x: f64) -> serde_json::Value {
        serde_json::Value::from(round_half_away(x, self.precision as u32))
    }
}

/// Round to `places` decimals, halves away from zero — the presentation
/// rounding used by the summary tables.
pub fn round_half_away(x: f64, places: u32) -> f64 {
    let scale = 10f64.powi(places as i32);
    (x.abs() * scale + 0.5).floor() / scale * x.signum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round_half_away(0.9195, 3), 0.92);
        assert_eq!(round_half_away(0.0005, 3), 0.001);
        assert_eq!(round_half_away(-0.0005, 3), -0.001);
        assert_eq!(round_half_away(2.4299294, 3), 2.43);
        assert_eq!(round_half_away(0.5186176928, 3), 0.519);
    }

    #[test]
    fn real_formatting_uses_precision() {
        let spec = OutputSpec { precision: 3, ..OutputSpec::default() };
        assert_eq!(spec.real(0.5186176928), "0.519");
        assert_eq!(OutputSpec::default().real(0.5), "0.500000");
    }
}
