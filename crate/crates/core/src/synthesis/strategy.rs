//! Preparation strategies: how the state becomes the diagram that gets
//! synthesized. Selected by name through a [`StrategyRegistry`].

use std::collections::BTreeMap;

use crate::dd::{approximate, build_tree, reduce, DecisionDiagram};
use crate::error::{PrepError, Result};
use crate::state::StateVector;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone)]
pub struct PreparedDiagram {
    pub dd: DecisionDiagram,
    pub removed_mass: f64,
    /// Fidelity of `dd` against the input state.
    pub fidelity: f64,
}

pub trait PreparationStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn prepare(
        &self,
        state: &StateVector,
        threshold: f64,
        tol: &ToleranceConfig,
    ) -> Result<PreparedDiagram>;
}

/// Unreduced weighted tree, synthesized as is.
pub struct ExactTree;

/// Reduce, then prune nodes down to the fidelity threshold.
pub struct Approximate;

impl PreparationStrategy for ExactTree {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn prepare(&self, state: &StateVector, _threshold: f64, tol: &ToleranceConfig) -> Result<PreparedDiagram> {
        Ok(PreparedDiagram { dd: build_tree(state, tol)?, removed_mass: 0.0, fidelity: 1.0 })
    }
}

impl PreparationStrategy for Approximate {
    fn name(&self) -> &'static str {
        "approx"
    }

    fn prepare(&self, state: &StateVector, threshold: f64, tol: &ToleranceConfig) -> Result<PreparedDiagram> {
        let reduced = reduce(&build_tree(state, tol)?, tol);
        let res = approximate(&reduced, threshold, tol)?;
        Ok(PreparedDiagram { dd: res.dd, removed_mass: res.removed_mass, fidelity: res.achieved_fidelity })
    }
}

pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, Box<dyn PreparationStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(ExactTree));
        reg.register(Box::new(Approximate));
        reg
    }

    pub fn register(&mut self, strategy: Box<dyn PreparationStrategy>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn PreparationStrategy> {
        self.entries
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| PrepError::Unknown { kind: "strategy", name: name.to_string() })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
