//! The run configuration: every knob that can influence a result, frozen into
//! a single struct that is recorded verbatim inside each report envelope. Two
//! runs with equal configs and equal inputs must print byte-identical output.

use serde::{Deserialize, Serialize};
use symlab_core::scalar::FieldSpec;
use symlab_core::{EngineError, MonomialOrder};

/// Output format for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

/// Everything that can influence a computation, recorded verbatim in every
/// report. The cache key hashes this struct, so any knob change invalidates
/// prior entries instead of replaying stale output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    /// Coefficient field: "rationals" or "prime:P".
    pub field: String,
    /// Monomial order used for all Gröbner bases.
    pub order: String,
    /// Seed for every pseudo-random choice (point coordinates, star forms).
    pub seed: u64,
    /// Random point coordinates are drawn from [-bound, bound].
    pub coordinate_bound: u64,
    /// Buchberger guard: maximum S-pairs processed per basis.
    pub max_pairs: u64,
    /// Buchberger guard: maximum total degree seen during a basis run.
    pub max_degree: u32,
    /// Wall-clock budget for one invocation; 0 disables the watchdog.
    pub timeout_seconds: u64,
    /// Output format; part of the config so cached output replays exactly.
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: "rationals".to_string(),
            order: "degrevlex".to_string(),
            seed: 42,
            coordinate_bound: 1000,
            max_pairs: 2_000_000,
            max_degree: 80,
            timeout_seconds: 600,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    /// Parse and validate the field spec.
    pub fn field_spec(&self) -> Result<FieldSpec, EngineError> {
        FieldSpec::parse(&self.field)
    }

    /// Parse the monomial order name.
    pub fn monomial_order(&self) -> Result<MonomialOrder, EngineError> {
        match self.order.as_str() {
            "degrevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(EngineError::parse(format!(
                "unknown monomial order {other:?} (expected degrevlex or lex)"
            ))),
        }
    }

    /// Reject configurations the engine cannot honor before doing any work.
    pub fn validate(&self) -> Result<(), EngineError> {
        self.field_spec()?;
        self.monomial_order()?;
        if self.coordinate_bound == 0 {
            return Err(EngineError::parse(
                "coordinate bound must be at least 1".to_string(),
            ));
        }
        if self.max_pairs == 0 || self.max_degree == 0 {
            return Err(EngineError::parse(
                "resource guards must be positive".to_string(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn bad_field_is_rejected() {
        let cfg = RunConfig {
            field: "prime:6".to_string(),
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn bad_order_is_rejected() {
        let cfg = RunConfig {
            order: "grevlex".to_string(),
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_serialization_is_stable() {
        let cfg = RunConfig::default();
        let a = serde_json::to_string(&cfg).unwrap();
        let b = serde_json::to_string(&serde_json::from_str::<RunConfig>(&a).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
