//! Benchmark state families.
//!
//! Every family sits behind [`StateGenerator`] and is looked up by name in a
//! [`GeneratorRegistry`]. Random states use `ChaCha8Rng::seed_from_u64(seed)`;
//! real and imaginary parts are drawn independently from U[-1, 1] in flat
//! index order (real part first) before normalization.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PrepError, Result};
use crate::register::QuditRegister;
use crate::state::StateVector;

fn uniform_over(reg: &QuditRegister, support: &[usize]) -> StateVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); reg.total_dimension()];
    let a = 1.0 / (support.len() as f64).sqrt();
    for &flat in support {
        amps[flat] = Complex64::new(a, 0.0);
    }
    StateVector::new(reg.clone(), amps).expect("length matches register")
}

/// `(1/√m) Σ_k |k…k⟩` with `m = min(dims)`.
pub fn ghz(reg: &QuditRegister) -> StateVector {
    let m = *reg.dims().iter().min().expect("register is non-empty");
    let all_ones: usize = reg.strides().iter().sum();
    let support: Vec<usize> = (0..m).map(|k| k * all_ones).collect();
    uniform_over(reg, &support)
}

/// Single excitation to level 1, spread evenly over all qudits.
pub fn w_embedded(reg: &QuditRegister) -> StateVector {
    uniform_over(reg, reg.strides())
}

/// Single excitation over every nonzero level of every qudit.
pub fn w_qudit(reg: &QuditRegister) -> StateVector {
    let support: Vec<usize> = reg
        .dims()
        .iter()
        .zip(reg.strides())
        .flat_map(|(&d, &stride)| (1..d).map(move |k| k * stride))
        .collect();
    uniform_over(reg, &support)
}

pub fn random_state(reg: &QuditRegister, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps: Vec<Complex64> = (0..reg.total_dimension())
        .map(|_| {
            let re = rng.random_range(-1.0..=1.0);
            let im = rng.random_range(-1.0..=1.0);
            Complex64::new(re, im)
        })
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let amps = amps.into_iter().map(|a| a / norm).collect();
    StateVector::new(reg.clone(), amps).expect("length matches register")
}

pub trait StateGenerator: Send + Sync {
    fn name(&self) -> &'static str;

    fn generate(&self, reg: &QuditRegister, seed: u64) -> StateVector;

    /// Whether the output depends on the seed.
    fn is_seeded(&self) -> bool {
        false
    }
}

struct Ghz;
struct EmbeddedW;
struct QuditW;
struct Random;

impl StateGenerator for Ghz {
    fn name(&self) -> &'static str {
        "ghz"
    }

    fn generate(&self, reg: &QuditRegister, _seed: u64) -> StateVector {
        ghz(reg)
    }
}

impl StateGenerator for EmbeddedW {
    fn name(&self) -> &'static str {
        "embedded_w"
    }

    fn generate(&self, reg: &QuditRegister, _seed: u64) -> StateVector {
        w_embedded(reg)
    }
}

impl StateGenerator for QuditW {
    fn name(&self) -> &'static str {
        "w"
    }

    fn generate(&self, reg: &QuditRegister, _seed: u64) -> StateVector {
        w_qudit(reg)
    }
}

impl StateGenerator for Random {
    fn name(&self) -> &'static str {
        "random"
    }

    fn generate(&self, reg: &QuditRegister, seed: u64) -> StateVector {
        random_state(reg, seed)
    }

    fn is_seeded(&self) -> bool {
        true
    }
}

pub struct GeneratorRegistry {
    entries: BTreeMap<&'static str, Box<dyn StateGenerator>>,
}

impl GeneratorRegistry {
    pub fn empty() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(Ghz));
        reg.register(Box::new(EmbeddedW));
        reg.register(Box::new(QuditW));
        reg.register(Box::new(Random));
        reg
    }

    /// Adds a generator, replacing any previous one with the same name.
    pub fn register(&mut self, generator: Box<dyn StateGenerator>) {
        self.entries.insert(generator.name(), generator);
    }

    pub fn get(&self, name: &str) -> Result<&dyn StateGenerator> {
        self.entries
            .get(name)
            .map(|g| g.as_ref())
            .ok_or_else(|| PrepError::Unknown { kind: "generator", name: name.to_string() })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for GeneratorRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

/// One benchmark instance: a generator family over a register.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub family: String,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl BenchmarkSpec {
    pub fn new(family: &str, dims: &[usize]) -> Self {
        Self { family: family.to_string(), dims: dims.to_vec(), seed: None }
    }

    pub fn register(&self) -> Result<QuditRegister> {
        QuditRegister::new(self.dims.clone())
    }

    pub fn generate(&self, registry: &GeneratorRegistry, seed: u64) -> Result<StateVector> {
        Ok(registry.get(&self.family)?.generate(&self.register()?, seed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::ToleranceConfig;
    use proptest::prelude::*;

    fn reg(d: &[usize]) -> QuditRegister {
        QuditRegister::new(d.to_vec()).unwrap()
    }

    fn support(s: &StateVector) -> Vec<usize> {
        (0..s.amplitudes().len()).filter(|&i| s.amplitudes()[i].norm() > 0.0).collect()
    }

    #[test]
    fn ghz_examples() {
        let s = ghz(&reg(&[3, 3]));
        assert_eq!(support(&s), vec![0, 4, 8]);
        assert!((s.amplitudes()[4].re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(support(&ghz(&reg(&[3, 6, 2]))), vec![0, 12 + 2 + 1]);
        let bell = ghz(&reg(&[2, 2]));
        assert_eq!(support(&bell), vec![0, 3]);
    }

    #[test]
    fn w_examples() {
        assert_eq!(support(&w_embedded(&reg(&[2, 2, 2]))), vec![1, 2, 4]);
        assert_eq!(w_qudit(&reg(&[2, 2])), w_embedded(&reg(&[2, 2])));
        let w = w_qudit(&reg(&[3, 6, 2]));
        assert_eq!(support(&w).len(), 8);
    }

    #[test]
    fn random_is_deterministic() {
        let r = reg(&[3, 6, 2]);
        assert_eq!(random_state(&r, 7), random_state(&r, 7));
        assert_ne!(random_state(&r, 7), random_state(&r, 8));
        assert!(random_state(&r, 7).is_normalized(&ToleranceConfig::default()));
    }

    #[test]
    fn registry_lookup() {
        let registry = GeneratorRegistry::with_builtins();
        assert_eq!(registry.names().collect::<Vec<_>>(), vec!["embedded_w", "ghz", "random", "w"]);
        assert!(registry.get("random").unwrap().is_seeded());
        assert!(matches!(registry.get("cat"), Err(PrepError::Unknown { .. })));
        let spec = BenchmarkSpec::new("ghz", &[3, 3]);
        assert_eq!(spec.generate(&registry, 0).unwrap(), ghz(&reg(&[3, 3])));
    }

    fn permuted(s: &StateVector, perm: &[usize]) -> StateVector {
        // qudit k of the new register is qudit perm[k] of the old one
        let old = s.register();
        let new = QuditRegister::new(perm.iter().map(|&p| old.dim(p)).collect()).unwrap();
        let mut amps = vec![Complex64::new(0.0, 0.0); new.total_dimension()];
        for flat in 0..old.total_dimension() {
            let digits = old.decode(flat).unwrap();
            let moved: Vec<usize> = perm.iter().map(|&p| digits.digits()[p]).collect();
            amps[new.encode_digits(&moved).unwrap()] = s.amplitudes()[flat];
        }
        StateVector::new(new, amps).unwrap()
    }

    proptest! {
        #[test]
        fn normalized_and_permutation_covariant(dims in proptest::collection::vec(2usize..6, 1..5), seed in any::<u64>()) {
            let t = ToleranceConfig::default();
            let r = reg(&dims);
            let mut perm: Vec<usize> = (0..dims.len()).collect();
            perm.rotate_left(seed as usize % dims.len());
            if seed % 2 == 0 { perm.reverse(); }
            let pr = reg(&perm.iter().map(|&p| dims[p]).collect::<Vec<_>>());
            for (s, f) in [(ghz(&r), ghz as fn(&QuditRegister) -> StateVector), (w_qudit(&r), w_qudit), (w_embedded(&r), w_embedded)] {
                prop_assert!(s.is_normalized(&t));
                prop_assert_eq!(permuted(&s, &perm), f(&pr));
            }
            prop_assert!(random_state(&r, seed).is_normalized(&t));
            let w = w_qudit(&r);
            let expected: usize = dims.iter().map(|d| d - 1).sum();
            let nz: Vec<_> = w.amplitudes().iter().filter(|a| a.norm() > 0.0).collect();
            prop_assert_eq!(nz.len(), expected);
            prop_assert!(nz.iter().all(|a| **a == *nz[0]));
        }
    }
}
