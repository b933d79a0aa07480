//! State preparation for mixed-dimensional qudit registers.
//!
//! A target state is split into an edge-weighted decision diagram
//! ([`dd`]), optionally reduced and pruned to a fidelity budget, and then
//! walked to emit multi-controlled two-level rotations ([`synthesis`]). Every
//! circuit can be checked with the state-vector [`simulator`].
//!
//! ```
//! use qudit_prep::{generators, synthesis, QuditRegister, ToleranceConfig};
//!
//! let reg = QuditRegister::new(vec![3, 6, 2]).unwrap();
//! let state = generators::ghz(&reg);
//! let out = synthesis::synthesize(&state, &synthesis::SynthesisMode::exact(), &ToleranceConfig::default()).unwrap();
//! assert_eq!(out.report.operations, 19);
//! assert!(out.report.fidelity > 1.0 - 1e-9);
//! ```

pub mod circuit;
pub mod cli;
pub mod dd;
pub mod error;
pub mod generators;
pub mod register;
pub mod simulator;
pub mod state;
pub mod synthesis;
pub mod tolerance;

pub use circuit::{Circuit, ControlSpec, GivensRotation, Operation, PhaseRotation};
pub use dd::DecisionDiagram;
pub use error::{PrepError, Result};
pub use register::{decode_index, encode_index, BasisIndex, QuditRegister};
pub use state::{fidelity, normalize_state, StateVector};
pub use tolerance::ToleranceConfig;
