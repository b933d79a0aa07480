use std::f64::consts::FRAC_PI_2;

use super::{GivensRotation, PhaseRotation};

/// Expresses a phase rotation as three Givens rotations, returned in
/// application order: `R(-π/2, 0)`, then `R(α, π/2)`, then `R(π/2, 0)`.
/// The product equals `diag(e^{-iα/2}, e^{iα/2})` exactly.
pub fn rz_decompose(phase: &PhaseRotation) -> [GivensRotation; 3] {
    let make = |theta, phi| GivensRotation {
        target: phase.target,
        levels: phase.levels,
        theta,
        phi,
        controls: phase.controls.clone(),
    };
    [make(-FRAC_PI_2, 0.0), make(phase.angle, FRAC_PI_2), make(FRAC_PI_2, 0.0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::tests::max_dev;
    use crate::circuit::{local_matrix, Operation};
    use nalgebra::DMatrix;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    /// Deviation from the phase matrix after removing the best global phase.
    fn deviation_up_to_phase(angle: f64, dim: usize, levels: (usize, usize)) -> f64 {
        let phase = PhaseRotation { target: 0, levels, angle, controls: vec![] };
        let target = local_matrix(&Operation::Phase(phase.clone()), dim).unwrap();
        let mut product = DMatrix::<Complex64>::identity(dim, dim);
        for g in rz_decompose(&phase) {
            product = local_matrix(&Operation::Givens(g), dim).unwrap() * product;
        }
        let overlap: Complex64 = target.iter().zip(product.iter()).map(|(a, b)| a.conj() * b).sum();
        let global = overlap / overlap.norm();
        max_dev(&(product / global), &target)
    }

    #[test]
    fn zero_angle_is_identity() {
        assert!(deviation_up_to_phase(0.0, 2, (0, 1)) < 1e-12);
    }

    #[test]
    fn third_pi_on_qubit() {
        assert!(deviation_up_to_phase(PI / 3.0, 2, (0, 1)) < 1e-12);
    }

    #[test]
    fn embedded_in_larger_qudit() {
        assert!(deviation_up_to_phase(1.234, 5, (1, 3)) < 1e-12);
    }

    proptest! {
        #[test]
        fn identity_holds_for_random_angles(angle in -10.0f64..10.0) {
            prop_assert!(deviation_up_to_phase(angle, 2, (0, 1)) < 1e-12);
        }
    }
}
