use super::build::{rebuild, reduce};
use super::{check_threshold, DDForm, DecisionDiagram, NodeId};
use crate::error::{PrepError, Result};
use crate::state::fidelity;
use crate::tolerance::ToleranceConfig;

/// Outcome of fidelity-budgeted pruning.
#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub dd: DecisionDiagram,
    /// Probability mass of the original state that no longer has a path.
    pub removed_mass: f64,
    /// Fidelity of the pruned state against the original, checked on vectors.
    pub achieved_fidelity: f64,
    /// `(node_count, removed_mass)` after each committed removal.
    pub steps: Vec<(usize, f64)>,
}

/// Cuts every in-edge of `node`, then renormalizes and re-reduces the diagram.
/// Returns `None` if nothing is left (or `node` is the root).
pub fn remove_node(
    dd: &DecisionDiagram,
    node: NodeId,
    tol: &ToleranceConfig,
) -> Option<DecisionDiagram> {
    if node == dd.root() {
        return None;
    }
    let (factor, root, nodes) = rebuild(dd, Some(node), tol)?;
    let weight = dd.root_weight() * factor;
    let root_weight = weight / weight.norm() * dd.root_weight().norm();
    Some(DecisionDiagram::from_parts(dd.register().clone(), root_weight, root, nodes, DDForm::Reduced))
}

/// Greedily removes the live non-root node with the smallest contribution as
/// long as the fidelity against the original stays at or above `threshold`.
/// The first removal that would violate the threshold ends the search.
pub fn approximate(
    dd: &DecisionDiagram,
    threshold: f64,
    tol: &ToleranceConfig,
) -> Result<ApproxResult> {
    check_threshold(threshold)?;
    let original = dd.to_state_vector();
    let original_mass = original.norm_sqr();
    if original_mass <= tol.eps_zero {
        return Err(PrepError::DegenerateState { norm: original_mass.sqrt() });
    }
    let mut current = match dd.form() {
        DDForm::Tree => reduce(dd, tol),
        DDForm::Reduced => dd.clone(),
    };
    let mut achieved = fidelity(&original, &current.to_state_vector())?;
    let mut removed_mass = 0.0;
    let mut steps = Vec::new();

    while threshold < 1.0 {
        let contrib = current.contributions();
        let root = current.root();
        let Some(candidate) = current
            .reachable()
            .into_iter()
            .filter(|&id| id != root)
            .min_by(|a, b| contrib[*a].total_cmp(&contrib[*b]))
        else {
            break;
        };
        let Some(next) = remove_node(&current, candidate, tol) else {
            break;
        };
        let pruned = next.to_state_vector();
        let f = fidelity(&original, &pruned)?;
        if f < threshold {
            break;
        }
        let kept: f64 = original
            .amplitudes()
            .iter()
            .zip(pruned.amplitudes())
            .filter(|(_, p)| p.norm() > 0.0)
            .map(|(a, _)| a.norm_sqr())
            .sum();
        removed_mass = 1.0 - kept / original_mass;
        achieved = f;
        current = next;
        steps.push((current.node_count(), removed_mass));
    }

    Ok(ApproxResult { dd: current, removed_mass, achieved_fidelity: achieved, steps })
}
