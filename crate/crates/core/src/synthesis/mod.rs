//! Circuit synthesis from a decision diagram.
//!
//! The diagram is walked depth-first from the root over live nodes only. Each
//! visited node contributes its local sequence (see [`node_sequence`]) on its
//! qudit, guarded by one control per non-elided ancestor on the current path.
//! An ancestor whose live edges all reach one child is elided and that child is
//! visited once; otherwise each live edge is descended separately.

mod controls;
mod sequence;
mod strategy;

use std::time::Instant;

use serde::Serialize;

use crate::circuit::{Circuit, ControlSpec};
use crate::dd::{distinct_weight_count, reduce, tree_node_count, Child, DDForm, DDMetrics, DecisionDiagram, NodeId};
use crate::error::{PrepError, Result};
use crate::simulator;
use crate::state::StateVector;
use crate::tolerance::ToleranceConfig;

pub use controls::{control_path, is_elidable};
pub use sequence::{node_sequence, LocalOp, LocalSequence};
pub use strategy::{Approximate, ExactTree, PreparationStrategy, PreparedDiagram, StrategyRegistry};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    /// Synthesize from the unreduced tree.
    Exact,
    /// Reduce and prune down to the given fidelity first.
    Approx { threshold: f64 },
}

impl Variant {
    pub fn strategy_name(&self) -> &'static str {
        match self {
            Variant::Exact => "exact",
            Variant::Approx { .. } => "approx",
        }
    }

    pub fn threshold(&self) -> f64 {
        match *self {
            Variant::Exact => 1.0,
            Variant::Approx { threshold } => threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisMode {
    pub variant: Variant,
    pub prune_identity: bool,
    pub merge_shared_siblings: bool,
}

impl SynthesisMode {
    pub fn exact() -> Self {
        Self { variant: Variant::Exact, prune_identity: false, merge_shared_siblings: false }
    }

    pub fn approx(threshold: f64) -> Self {
        Self { variant: Variant::Approx { threshold }, ..Self::exact() }
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.variant.threshold();
        if !(t > 0.0 && t <= 1.0) {
            return Err(PrepError::Parameter(format!("fidelity threshold must lie in (0, 1], got {t}")));
        }
        Ok(())
    }
}

/// Options for the traversal itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmitOptions {
    pub prune_identity: bool,
    pub merge_shared_siblings: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisReport {
    pub strategy: String,
    pub threshold: f64,
    #[serde(flatten)]
    pub metrics: DDMetrics,
    pub operations: usize,
    pub controls_median: usize,
    pub elapsed_seconds: f64,
    pub removed_mass: f64,
    /// Fidelity of the simulated circuit output against the source state.
    pub fidelity: f64,
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    pub circuit: Circuit,
    pub report: SynthesisReport,
    pub dd: DecisionDiagram,
}

struct Emitter<'a> {
    dd: &'a DecisionDiagram,
    opts: EmitOptions,
    tol: &'a ToleranceConfig,
    circuit: Circuit,
}

impl Emitter<'_> {
    fn visit(&mut self, node: NodeId, controls: &mut Vec<ControlSpec>) -> Result<()> {
        let n = self.dd.node(node);
        let target = self.dd.position_of_level(n.level);
        for op in node_sequence(&n.weights(), self.tol)?.ops {
            if self.opts.prune_identity && op.is_identity(self.tol.eps_zero) {
                continue;
            }
            self.circuit.push(op.to_operation(target, controls.clone()))?;
        }
        let groups = controls::grouped_children(self.dd, node);
        if groups.len() == 1 {
            if let (Child::Node(child), _) = groups[0] {
                self.visit(child, controls)?;
            }
            return Ok(());
        }
        for (child, edges) in groups {
            let Child::Node(child) = child else { continue };
            if self.opts.merge_shared_siblings {
                controls.push(ControlSpec::with_levels(target, edges));
                self.visit(child, controls)?;
                controls.pop();
            } else {
                for k in edges {
                    controls.push(ControlSpec::new(target, k));
                    self.visit(child, controls)?;
                    controls.pop();
                }
            }
        }
        Ok(())
    }
}

/// Emits the preparation circuit for a frozen diagram.
pub fn emit_circuit(dd: &DecisionDiagram, opts: EmitOptions, tol: &ToleranceConfig) -> Result<Circuit> {
    let mut emitter = Emitter { dd, opts, tol, circuit: Circuit::new(dd.register().clone()) };
    emitter.visit(dd.root(), &mut Vec::new())?;
    // the root weight only carries a global phase and is not synthesized
    Ok(emitter.circuit)
}

/// Full pipeline with the built-in strategies.
pub fn synthesize(source: &StateVector, mode: &SynthesisMode, tol: &ToleranceConfig) -> Result<Synthesis> {
    synthesize_with(&StrategyRegistry::with_builtins(), source, mode, tol)
}

/// Runs the strategy selected by `mode`, emits the circuit and verifies it by
/// simulation against `source`.
pub fn synthesize_with(
    registry: &StrategyRegistry,
    source: &StateVector,
    mode: &SynthesisMode,
    tol: &ToleranceConfig,
) -> Result<Synthesis> {
    mode.validate()?;
    let strategy = registry.get(mode.variant.strategy_name())?;
    let opts = EmitOptions {
        prune_identity: mode.prune_identity,
        merge_shared_siblings: mode.merge_shared_siblings,
    };

    let start = Instant::now();
    let prepared = strategy.prepare(source, mode.variant.threshold(), tol)?;
    let circuit = emit_circuit(&prepared.dd, opts, tol)?;
    let elapsed_seconds = start.elapsed().as_secs_f64();

    let reduced_count = match prepared.dd.form() {
        DDForm::Reduced => prepared.dd.node_count(),
        DDForm::Tree => reduce(&prepared.dd, tol).node_count(),
    };
    let metrics = DDMetrics {
        tree_node_count: tree_node_count(source.register()),
        reduced_node_count: reduced_count + 1,
        distinct_weight_count: distinct_weight_count(&prepared.dd, tol),
    };
    let fidelity = simulator::verify(&circuit, source)?;
    let report = SynthesisReport {
        strategy: strategy.name().to_string(),
        threshold: mode.variant.threshold(),
        metrics,
        operations: circuit.len(),
        controls_median: circuit.control_median(),
        elapsed_seconds,
        removed_mass: prepared.removed_mass,
        fidelity,
    };
    Ok(Synthesis { circuit, report, dd: prepared.dd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::build_tree;
    use crate::generators::{ghz, random_state, w_embedded, w_qudit};
    use crate::register::QuditRegister;
    use num_complex::Complex64;

    fn reg(d: &[usize]) -> QuditRegister {
        QuditRegister::new(d.to_vec()).unwrap()
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn small_counts() {
        let r = reg(&[3, 6, 2]);
        let t = tol();
        let ops = |s| synthesize(&s, &SynthesisMode::exact(), &t).unwrap().report.operations;
        assert_eq!(ops(ghz(&r)), 19);
        assert_eq!(ops(w_embedded(&r)), 21);
        assert_eq!(ops(w_qudit(&r)), 37);
        let rnd = synthesize(&random_state(&r, 3), &SynthesisMode::exact(), &t).unwrap();
        assert_eq!(rnd.report.operations, 57);
        assert_eq!(rnd.report.controls_median, 2);
        assert!(rnd.report.fidelity >= 1.0 - t.eps_verify);
    }

    #[test]
    fn fig3_state_round_trip() {
        let s = 1.0 / 3f64.sqrt();
        let z = Complex64::new(0.0, 0.0);
        let st = StateVector::new(reg(&[3, 2]), vec![Complex64::new(s, 0.0), z, z, Complex64::new(-s, 0.0), z, Complex64::new(s, 0.0)]).unwrap();
        for merge in [false, true] {
            for variant in [Variant::Exact, Variant::Approx { threshold: 1.0 }] {
                let mode = SynthesisMode { variant, prune_identity: false, merge_shared_siblings: merge };
                let out = synthesize(&st, &mode, &tol()).unwrap();
                let sim = simulator::run(&out.circuit).unwrap();
                for (a, b) in sim.amplitudes().iter().zip(st.amplitudes()) {
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn ghz_two_qutrits() {
        let out = synthesize(&ghz(&reg(&[3, 3])), &SynthesisMode::exact(), &tol()).unwrap();
        assert!((out.report.fidelity - 1.0).abs() < 1e-12);
        // root: 3 ops; each of three children: 3 ops with one control
        assert_eq!(out.report.operations, 12);
        assert!(out.circuit.ops()[..3].iter().all(|op| op.controls().is_empty()));
        assert!(out.circuit.ops()[3..].iter().all(|op| op.controls().len() == 1));
    }

    #[test]
    fn prune_identity_drops_trivial_ops() {
        let t = tol();
        let s = ghz(&reg(&[3, 6, 2]));
        let mode = SynthesisMode { prune_identity: true, ..SynthesisMode::exact() };
        let out = synthesize(&s, &mode, &t).unwrap();
        assert!(out.report.operations < 19);
        assert!(out.report.fidelity >= 1.0 - t.eps_verify);
        assert!(out.circuit.ops().iter().all(|op| !op.is_identity(t.eps_zero)));
    }

    #[test]
    fn per_node_arity_and_local_contract() {
        let t = tol();
        let s = random_state(&reg(&[2, 3, 4]), 9);
        let dd = build_tree(&s, &t).unwrap();
        let circuit = emit_circuit(&dd, EmitOptions::default(), &t).unwrap();
        let live_arity: usize = dd.reachable().iter().map(|&id| dd.node(id).arity()).sum();
        assert_eq!(circuit.len(), live_arity);
        assert_eq!(circuit.len(), tree_node_count(s.register()) - 1);
    }

    #[test]
    fn invalid_threshold() {
        let s = ghz(&reg(&[2, 2]));
        assert!(matches!(synthesize(&s, &SynthesisMode::approx(0.0), &tol()), Err(PrepError::Parameter(_))));
    }
}
