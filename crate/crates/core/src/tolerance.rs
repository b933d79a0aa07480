use crate::error::{PrepError, Result};

/// Numerical tolerances shared by every stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Magnitudes at or below this are exact zeros when classifying edges.
    pub eps_zero: f64,
    pub eps_norm: f64,
    /// Bucket width for weight deduplication and unique-table keys.
    pub eps_distinct: f64,
    pub eps_verify: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_zero: 1e-12,
            eps_norm: 1e-10,
            eps_distinct: 1e-10,
            eps_verify: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("eps_zero", self.eps_zero),
            ("eps_norm", self.eps_norm),
            ("eps_distinct", self.eps_distinct),
            ("eps_verify", self.eps_verify),
        ];
        for (name, v) in all {
            if !(v.is_finite() && v > 0.0) {
                return Err(PrepError::Parameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let t = ToleranceConfig::default();
        assert!(t.validate().is_ok());
        assert_eq!(t.eps_zero, 1e-12);
        assert_eq!(t.eps_verify, 1e-9);
    }

    #[test]
    fn rejects_non_positive() {
        let t = ToleranceConfig { eps_norm: 0.0, ..Default::default() };
        assert!(t.validate().is_err());
    }
}
