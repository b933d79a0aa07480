use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::{ControlSpec, GivensRotation, Operation, PhaseRotation};
use crate::error::{PrepError, Result};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalOp {
    Givens { levels: (usize, usize), theta: f64, phi: f64 },
    /// Phase rotation on levels (0, 1).
    Phase { angle: f64 },
}

impl LocalOp {
    pub fn to_operation(self, target: usize, controls: Vec<ControlSpec>) -> Operation {
        match self {
            LocalOp::Givens { levels, theta, phi } => {
                Operation::Givens(GivensRotation { target, levels, theta, phi, controls })
            }
            LocalOp::Phase { angle } => {
                Operation::Phase(PhaseRotation { target, levels: (0, 1), angle, controls })
            }
        }
    }

    pub fn is_identity(self, eps: f64) -> bool {
        match self {
            LocalOp::Givens { theta, .. } => theta.abs() <= eps,
            LocalOp::Phase { angle } => angle.abs() <= eps,
        }
    }
}

/// Ops preparing one node's weight vector from `|0⟩`, earliest applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSequence {
    pub ops: Vec<LocalOp>,
}

/// Argument with `arg 0 = 0`, also for negative zero.
fn phase(z: Complex64) -> f64 {
    if z.norm() == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Builds `U` with `U·e₀ = weights` out of `d - 1` adjacent Givens rotations and
/// a closing phase rotation on levels (0, 1).
///
/// The residual vector is merged pairwise from the top, `(d-2, d-1)` first: the
/// rotation `R(θ, φ)` with `θ = 2·atan2(|b|, |a|)` and `φ = arg b − arg a − π/2`
/// sends `(a, b)` to `(e^{i·arg a}·√(|a|² + |b|²), 0)`. The preparation applies
/// the inverses `R(θ, φ + π)` in reverse, i.e. on pairs `(0,1), (1,2), …`.
/// The phase angle is `−2·arg w₀`, zero for canonical (phase-extracted)
/// weights; the Givens chain targets the weights with that phase undone. The
/// phase angle is not wrapped: shifting it by 2π flips the sign of the (0, 1)
/// block only.
pub fn node_sequence(weights: &[Complex64], tol: &ToleranceConfig) -> Result<LocalSequence> {
    let d = weights.len();
    if d < 2 {
        return Err(PrepError::Contract(format!("node arity {d} is below 2")));
    }
    let mass: f64 = weights.iter().map(|w| w.norm_sqr()).sum();
    if (mass - 1.0).abs() > tol.eps_norm {
        return Err(PrepError::Contract(format!("weights have squared norm {mass}, expected 1")));
    }

    let live_lead = weights[0].norm() > tol.eps_zero;
    let angle = if live_lead { -2.0 * weights[0].arg() } else { 0.0 };
    let mut residual = weights.to_vec();
    residual[0] = if live_lead { Complex64::new(weights[0].norm(), 0.0) } else { Complex64::new(0.0, 0.0) };
    residual[1] *= Complex64::from_polar(1.0, -angle / 2.0);

    let mut merges = Vec::with_capacity(d - 1);
    for j in (1..d).rev() {
        let (a, b) = (residual[j - 1], residual[j]);
        let theta = 2.0 * b.norm().atan2(a.norm());
        let phi = phase(b) - phase(a) - PI / 2.0;
        residual[j - 1] = Complex64::from_polar(a.norm().hypot(b.norm()), phase(a));
        residual[j] = Complex64::new(0.0, 0.0);
        merges.push(LocalOp::Givens { levels: (j - 1, j), theta, phi: wrap_angle(phi + PI) });
    }
    merges.reverse();
    merges.push(LocalOp::Phase { angle });
    Ok(LocalSequence { ops: merges })
}
