//! Mixed-dimensional state-vector simulator.
//!
//! Each op mixes the amplitude pairs that differ only in the target digit
//! (levels `i` and `j`) on the basis states whose control digits match. The
//! full matrix is never materialized.

use crate::circuit::{Circuit, Operation};
use crate::error::{PrepError, Result};
use crate::register::QuditRegister;
use crate::state::{fidelity, StateVector};

/// Flat offsets of every basis state with target digit 0 that satisfies the
/// op's controls.
fn firing_offsets(reg: &QuditRegister, op: &Operation) -> Vec<usize> {
    let mut offsets = vec![0usize];
    for pos in 0..reg.num_qudits() {
        if pos == op.target() {
            continue;
        }
        let stride = reg.strides()[pos];
        let digits: Vec<usize> = match op.controls().iter().find(|c| c.qudit == pos) {
            Some(c) => c.levels.clone(),
            None => (0..reg.dim(pos)).collect(),
        };
        offsets = offsets
            .iter()
            .flat_map(|&base| digits.iter().map(move |&d| base + d * stride))
            .collect();
    }
    offsets
}

pub fn apply_op_in_place(state: &mut StateVector, op: &Operation) -> Result<()> {
    op.validate(state.register())?;
    let reg = state.register().clone();
    let stride = reg.strides()[op.target()];
    let (i, j) = op.levels();
    let [[a, b], [c, d]] = op.block();
    let amps = state.amplitudes_mut();
    for base in firing_offsets(&reg, op) {
        let (lo, hi) = (base + i * stride, base + j * stride);
        let (x, y) = (amps[lo], amps[hi]);
        amps[lo] = a * x + b * y;
        amps[hi] = c * x + d * y;
    }
    Ok(())
}

pub fn apply_op(state: &StateVector, op: &Operation) -> Result<StateVector> {
    let mut out = state.clone();
    apply_op_in_place(&mut out, op)?;
    Ok(out)
}

pub fn run_from(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if initial.register() != circuit.register() {
        return Err(PrepError::Shape(format!(
            "circuit register {:?} does not match state register {:?}",
            circuit.register().dims(),
            initial.register().dims()
        )));
    }
    let mut state = initial.clone();
    for op in circuit.ops() {
        apply_op_in_place(&mut state, op)?;
    }
    Ok(state)
}

/// Runs the circuit from `|0…0⟩`.
pub fn run(circuit: &Circuit) -> Result<StateVector> {
    run_from(circuit, &StateVector::zero_state(circuit.register().clone()))
}

/// Fidelity of the circuit's output against `target`.
pub fn verify(circuit: &Circuit, target: &StateVector) -> Result<f64> {
    if target.register() != circuit.register() {
        return Err(PrepError::Shape(format!(
            "circuit register {:?} does not match state register {:?}",
            circuit.register().dims(),
            target.register().dims()
        )));
    }
    fidelity(&run(circuit)?, target)
}

/// A completed simulation.
#[derive(Debug, Clone)]
pub struct SimulationRun {
    pub circuit: Circuit,
    pub initial: StateVector,
    pub final_state: StateVector,
}

impl SimulationRun {
    pub fn execute(circuit: Circuit, initial: Option<StateVector>) -> Result<Self> {
        let initial = initial.unwrap_or_else(|| StateVector::zero_state(circuit.register().clone()));
        let final_state = run_from(&circuit, &initial)?;
        Ok(Self { circuit, initial, final_state })
    }
}
