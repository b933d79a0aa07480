//! Mixed-radix index space of a qudit register.
//!
//! Dimensions are stored most-significant first: `dims[0]` is the qudit at the
//! root of the decision diagram and the flat index is big-endian over digits.

use serde::{Deserialize, Serialize};

use crate::error::{PrepError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct QuditRegister {
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl QuditRegister {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(PrepError::InvalidRegister("register has no qudits".into()));
        }
        if let Some((pos, &d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(PrepError::InvalidRegister(format!(
                "qudit at position {pos} has dimension {d}, need at least 2"
            )));
        }
        let mut strides = vec![1usize; dims.len()];
        let mut acc: usize = 1;
        for k in (0..dims.len()).rev() {
            strides[k] = acc;
            acc = acc.checked_mul(dims[k]).ok_or_else(|| {
                PrepError::InvalidRegister("total dimension overflows".into())
            })?;
        }
        Ok(Self { dims, strides })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_qudits(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, position: usize) -> usize {
        self.dims[position]
    }

    /// Place value of each position in the flat index.
    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn total_dimension(&self) -> usize {
        self.strides[0] * self.dims[0]
    }

    /// Decision-diagram level of a register position (root = n-1).
    pub fn level_of(&self, position: usize) -> usize {
        self.dims.len() - 1 - position
    }

    pub fn position_of(&self, level: usize) -> usize {
        self.dims.len() - 1 - level
    }

    pub fn encode(&self, digits: &BasisIndex) -> Result<usize> {
        self.encode_digits(digits.digits())
    }

    pub fn encode_digits(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.dims.len() {
            return Err(PrepError::Range(format!(
                "expected {} digits, got {}",
                self.dims.len(),
                digits.len()
            )));
        }
        let mut flat = 0;
        for (k, (&digit, &dim)) in digits.iter().zip(&self.dims).enumerate() {
            if digit >= dim {
                return Err(PrepError::Range(format!(
                    "digit {digit} at position {k} exceeds dimension {dim}"
                )));
            }
            flat += digit * self.strides[k];
        }
        Ok(flat)
    }

    pub fn decode(&self, flat: usize) -> Result<BasisIndex> {
        if flat >= self.total_dimension() {
            return Err(PrepError::Range(format!(
                "flat index {flat} outside 0..{}",
                self.total_dimension()
            )));
        }
        Ok(BasisIndex(self.digits_unchecked(flat)))
    }

    /// Digit of `position` inside a flat index known to be in range.
    #[inline]
    pub fn digit(&self, flat: usize, position: usize) -> usize {
        (flat / self.strides[position]) % self.dims[position]
    }

    fn digits_unchecked(&self, flat: usize) -> Vec<usize> {
        (0..self.dims.len()).map(|k| self.digit(flat, k)).collect()
    }
}

impl TryFrom<Vec<usize>> for QuditRegister {
    type Error = PrepError;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<QuditRegister> for Vec<usize> {
    fn from(reg: QuditRegister) -> Self {
        reg.dims
    }
}

/// One digit per qudit, most-significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisIndex(Vec<usize>);

impl BasisIndex {
    pub fn new(digits: Vec<usize>) -> Self {
        Self(digits)
    }

    pub fn digits(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for BasisIndex {
    fn from(digits: Vec<usize>) -> Self {
        Self(digits)
    }
}

pub fn encode_index(digits: &BasisIndex, reg: &QuditRegister) -> Result<usize> {
    reg.encode(digits)
}

pub fn decode_index(flat: usize, reg: &QuditRegister) -> Result<BasisIndex> {
    reg.decode(flat)
}
