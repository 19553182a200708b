use pcw_core::formats::write_plain;
use pcw_core::gf2::BinaryMatrix;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// Everything printed on stdout for one invocation.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub tool: Tool,
    pub input_digest: String,
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub timing: Timing,
}

impl AnalysisReport {
    pub fn new(h: &BinaryMatrix, command: &str, parameters: Value, results: Value, elapsed_ms: u64) -> Self {
        Self {
            tool: Tool {
                name: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            input_digest: input_digest(h),
            command: command.to_string(),
            parameters,
            results,
            timing: Timing { elapsed_ms },
        }
    }
}

/// SHA-256 of the matrix in canonical plain form, so the same matrix read
/// from either format hashes the same.
pub fn input_digest(h: &BinaryMatrix) -> String {
    let digest = Sha256::digest(write_plain(h).as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcw_core::fixtures::dumbbell;

    #[test]
    fn digest_is_stable() {
        let a = input_digest(&dumbbell());
        assert_eq!(a, input_digest(&dumbbell()));
        assert!(a.starts_with("sha256:"));
        assert_eq!(a.len(), 7 + 64);
    }

    #[test]
    fn field_order() {
        let r = AnalysisReport::new(&dumbbell(), "info", Value::Null, Value::Null, 0);
        let text = serde_json::to_string(&r).unwrap();
        let keys = ["\"tool\"", "\"input_digest\"", "\"command\"", "\"parameters\"", "\"results\"", "\"timing\""];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}
