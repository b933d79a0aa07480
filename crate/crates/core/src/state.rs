//! Dense state vectors over a mixed-radix register.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PrepError, Result};
use crate::register::QuditRegister;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: QuditRegister,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(register: QuditRegister, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != register.total_dimension() {
            return Err(PrepError::Shape(format!(
                "{} amplitudes for a register of dimension {}",
                amplitudes.len(),
                register.total_dimension()
            )));
        }
        if let Some(pos) = amplitudes.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(PrepError::Parse(format!("amplitude {pos} is not finite")));
        }
        Ok(Self { register, amplitudes })
    }

    /// The computational basis state `|flat⟩`.
    pub fn basis(register: QuditRegister, flat: usize) -> Result<Self> {
        let n = register.total_dimension();
        if flat >= n {
            return Err(PrepError::Range(format!("basis index {flat} outside 0..{n}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        amplitudes[flat] = Complex64::new(1.0, 0.0);
        Ok(Self { register, amplitudes })
    }

    pub fn zero_state(register: QuditRegister) -> Self {
        Self::basis(register, 0).expect("index 0 is always valid")
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: &ToleranceConfig) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol.eps_norm
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_register(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn check_same_register(&self, other: &StateVector) -> Result<()> {
        if self.register != other.register {
            return Err(PrepError::Shape(format!(
                "register {:?} does not match {:?}",
                self.register.dims(),
                other.register.dims()
            )));
        }
        Ok(())
    }

    pub fn normalized(&self, tol: &ToleranceConfig) -> Result<Self> {
        normalize_state(self, tol)
    }
}

pub fn normalize_state(s: &StateVector, tol: &ToleranceConfig) -> Result<StateVector> {
    let norm = s.norm();
    if norm <= tol.eps_zero {
        return Err(PrepError::DegenerateState { norm });
    }
    Ok(StateVector {
        register: s.register.clone(),
        amplitudes: s.amplitudes.iter().map(|a| a / norm).collect(),
    })
}

/// Squared overlap `|⟨a|b⟩|²`, clamped to `[0, 1]`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}

#[derive(Serialize, Deserialize)]
struct StateDocument {
    dims: Vec<usize>,
    amplitudes: Vec<[f64; 2]>,
}

impl StateVector {
    pub fn to_json(&self) -> String {
        let doc = StateDocument {
            dims: self.register.dims().to_vec(),
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string(&doc).expect("state document always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StateDocument =
            serde_json::from_str(text).map_err(|e| PrepError::Parse(format!("state file: {e}")))?;
        let register = QuditRegister::new(doc.dims)?;
        let amplitudes = doc
            .amplitudes
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        StateVector::new(register, amplitudes)
    }
}
