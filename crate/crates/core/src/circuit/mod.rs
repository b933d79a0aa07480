//! Circuit intermediate representation.
//!
//! Two-level rotations on one qudit, each guarded by a list of controls on
//! other qudits. The Givens rotation on levels `(i, j)` is
//!
//! ```text
//! R(θ, φ) = exp(-iθ/2 · (cos φ σx + sin φ σy))
//!         = [[ cos(θ/2),            -i e^{-iφ} sin(θ/2) ],
//!            [ -i e^{iφ} sin(θ/2),   cos(θ/2)           ]]
//! ```
//!
//! with row/column `i` first, and the phase rotation is
//! `diag(e^{-iα/2}, e^{iα/2})` on `(i, j)`. Ops are listed earliest-applied first.

mod json;
mod rz;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{PrepError, Result};
use crate::register::QuditRegister;

pub use json::{deserialize, serialize};
pub use rz::rz_decompose;

/// Control on one qudit: the op fires when its digit lies in `levels`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ControlSpec {
    pub qudit: usize,
    pub levels: Vec<usize>,
}

impl ControlSpec {
    pub fn new(qudit: usize, level: usize) -> Self {
        Self { qudit, levels: vec![level] }
    }

    pub fn with_levels(qudit: usize, mut levels: Vec<usize>) -> Self {
        levels.sort_unstable();
        levels.dedup();
        Self { qudit, levels }
    }

    pub fn accepts(&self, digit: usize) -> bool {
        self.levels.contains(&digit)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GivensRotation {
    pub target: usize,
    pub levels: (usize, usize),
    pub theta: f64,
    pub phi: f64,
    pub controls: Vec<ControlSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseRotation {
    pub target: usize,
    pub levels: (usize, usize),
    pub angle: f64,
    pub controls: Vec<ControlSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Operation {
    Givens(GivensRotation),
    Phase(PhaseRotation),
}

impl Operation {
    pub fn target(&self) -> usize {
        match self {
            Operation::Givens(g) => g.target,
            Operation::Phase(p) => p.target,
        }
    }

    pub fn levels(&self) -> (usize, usize) {
        match self {
            Operation::Givens(g) => g.levels,
            Operation::Phase(p) => p.levels,
        }
    }

    pub fn controls(&self) -> &[ControlSpec] {
        match self {
            Operation::Givens(g) => &g.controls,
            Operation::Phase(p) => &p.controls,
        }
    }

    pub fn controls_mut(&mut self) -> &mut Vec<ControlSpec> {
        match self {
            Operation::Givens(g) => &mut g.controls,
            Operation::Phase(p) => &mut p.controls,
        }
    }

    /// The 2×2 block acting on levels `(i, j)`, row `i` first.
    pub fn block(&self) -> [[Complex64; 2]; 2] {
        match self {
            Operation::Givens(g) => givens_block(g.theta, g.phi),
            Operation::Phase(p) => {
                let z = Complex64::new(0.0, 0.0);
                [
                    [Complex64::from_polar(1.0, -p.angle / 2.0), z],
                    [z, Complex64::from_polar(1.0, p.angle / 2.0)],
                ]
            }
        }
    }

    pub fn inverse(&self) -> Operation {
        match self {
            Operation::Givens(g) => Operation::Givens(GivensRotation { theta: -g.theta, ..g.clone() }),
            Operation::Phase(p) => Operation::Phase(PhaseRotation { angle: -p.angle, ..p.clone() }),
        }
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        match self {
            Operation::Givens(g) => g.theta.abs() <= eps,
            Operation::Phase(p) => p.angle.abs() <= eps,
        }
    }

    pub fn validate(&self, reg: &QuditRegister) -> Result<()> {
        let target = self.target();
        if target >= reg.num_qudits() {
            return Err(PrepError::InvalidOp(format!(
                "target {target} outside a register of {} qudits",
                reg.num_qudits()
            )));
        }
        check_levels(self.levels(), reg.dim(target))?;
        let mut seen = Vec::new();
        for c in self.controls() {
            if c.qudit == target {
                return Err(PrepError::InvalidOp(format!("control on target qudit {target}")));
            }
            if c.qudit >= reg.num_qudits() {
                return Err(PrepError::InvalidOp(format!("control qudit {} out of range", c.qudit)));
            }
            if seen.contains(&c.qudit) {
                return Err(PrepError::InvalidOp(format!("qudit {} controlled twice", c.qudit)));
            }
            seen.push(c.qudit);
            if c.levels.is_empty() {
                return Err(PrepError::InvalidOp(format!("empty control set on qudit {}", c.qudit)));
            }
            if let Some(&l) = c.levels.iter().find(|&&l| l >= reg.dim(c.qudit)) {
                return Err(PrepError::InvalidOp(format!(
                    "control level {l} exceeds dimension {} of qudit {}",
                    reg.dim(c.qudit),
                    c.qudit
                )));
            }
        }
        Ok(())
    }
}

fn check_levels((i, j): (usize, usize), dim: usize) -> Result<()> {
    if i >= j || j >= dim {
        return Err(PrepError::InvalidOp(format!(
            "levels ({i}, {j}) invalid for dimension {dim}, need i < j < d"
        )));
    }
    Ok(())
}

pub(crate) fn givens_block(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let minus_i = Complex64::new(0.0, -1.0);
    [
        [Complex64::new(c, 0.0), minus_i * Complex64::from_polar(s, -phi)],
        [minus_i * Complex64::from_polar(s, phi), Complex64::new(c, 0.0)],
    ]
}

/// `d × d` matrix of the op on its target qudit, ignoring controls.
pub fn local_matrix(op: &Operation, dim: usize) -> Result<DMatrix<Complex64>> {
    let (i, j) = op.levels();
    check_levels((i, j), dim)?;
    let mut m = DMatrix::identity(dim, dim);
    let b = op.block();
    m[(i, i)] = b[0][0];
    m[(i, j)] = b[0][1];
    m[(j, i)] = b[1][0];
    m[(j, j)] = b[1][1];
    Ok(m)
}

/// Dense matrix over the whole register, controls included.
pub fn full_matrix(op: &Operation, reg: &QuditRegister) -> Result<DMatrix<Complex64>> {
    op.validate(reg)?;
    let total = reg.total_dimension();
    let target = op.target();
    let local = local_matrix(op, reg.dim(target))?;
    let stride = reg.strides()[target];
    let mut m = DMatrix::zeros(total, total);
    for col in 0..total {
        let fires = op.controls().iter().all(|c| c.accepts(reg.digit(col, c.qudit)));
        if !fires {
            m[(col, col)] = Complex64::new(1.0, 0.0);
            continue;
        }
        let digit = reg.digit(col, target);
        let base = col - digit * stride;
        for row_digit in 0..reg.dim(target) {
            m[(base + row_digit * stride, col)] = local[(row_digit, digit)];
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    register: QuditRegister,
    ops: Vec<Operation>,
}

impl Circuit {
    pub fn new(register: QuditRegister) -> Self {
        Self { register, ops: Vec::new() }
    }

    pub fn from_ops(register: QuditRegister, ops: Vec<Operation>) -> Result<Self> {
        for (k, op) in ops.iter().enumerate() {
            op.validate(&register)
                .map_err(|e| PrepError::InvalidOp(format!("op {k}: {e}")))?;
        }
        Ok(Self { register, ops })
    }

    pub fn push(&mut self, op: Operation) -> Result<()> {
        op.validate(&self.register)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Lower median of per-op control counts (0 for an empty circuit).
    pub fn control_median(&self) -> usize {
        let mut counts: Vec<usize> = self.ops.iter().map(|op| op.controls().len()).collect();
        if counts.is_empty() {
            return 0;
        }
        counts.sort_unstable();
        counts[(counts.len() - 1) / 2]
    }
}
