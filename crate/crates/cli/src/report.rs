//! The machine-readable result of one computation.

use serde::{Deserialize, Serialize};

/// Printed to stdout as a single JSON object. Field order is the struct
/// order, so serialized reports are stable and diffable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// The family descriptor or file path the graph came from.
    pub input: String,
    /// `"det"` or `"per"`.
    pub quantity: String,
    /// The strategy actually used (`auto` is resolved before reporting).
    pub method: String,
    /// Exact integer value in decimal. Never a float: the value of a
    /// 40-vertex block graph does not fit in an `f64`.
    pub value: String,
    /// Wall-clock time of the computation itself, excluding input parsing
    /// and the cross-check.
    pub elapsed_ms: f64,
    /// `"ok"`, `"skipped"`, or `"mismatch"`.
    pub cross_check: String,
    /// Present only for the families whose determinant also has a spectral
    /// product form evaluated in floating point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float_check: Option<FloatCheck>,
}

/// Floating-point side value for families with a spectral product formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloatCheck {
    pub value: f64,
    /// `|float - exact| / max(1, |exact|)`.
    pub relative_error: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let r = RunReport {
            input: "complete:4".into(),
            quantity: "per".into(),
            method: "dense".into(),
            value: "9".into(),
            elapsed_ms: 0.25,
            cross_check: "ok".into(),
            float_check: None,
        };
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RunReport>(&text).unwrap(), r);
        // No nulls for absent optional fields.
        assert!(!text.contains("float_check"));
    }

    #[test]
    fn float_check_round_trips() {
        let r = RunReport {
            input: "neg-mixed-complete:5".into(),
            quantity: "det".into(),
            method: "dense".into(),
            value: "11".into(),
            elapsed_ms: 1.0,
            cross_check: "ok".into(),
            float_check: Some(FloatCheck {
                value: 11.000000000000002,
                relative_error: 1.8e-16,
            }),
        };
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RunReport>(&text).unwrap(), r);
    }
}
