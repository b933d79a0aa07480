use crate::circuit::ControlSpec;
use crate::dd::{Child, DecisionDiagram, NodeId};

/// Live children of a node in first-edge order, each with the edge indices
/// that reach it.
pub(crate) fn grouped_children(dd: &DecisionDiagram, node: NodeId) -> Vec<(Child, Vec<usize>)> {
    let mut groups: Vec<(Child, Vec<usize>)> = Vec::new();
    for (k, e) in dd.node(node).live_edges() {
        match groups.iter_mut().find(|(c, _)| *c == e.child) {
            Some((_, idx)) => idx.push(k),
            None => groups.push((e.child, vec![k])),
        }
    }
    groups
}

/// True when every live edge of the node reaches the same child, so the node's
/// qudit is in a product with everything below it.
pub fn is_elidable(dd: &DecisionDiagram, node: NodeId) -> bool {
    grouped_children(dd, node).len() <= 1
}

/// Control contributed by descending `edge` out of `node`, if any.
pub(crate) fn control_for(
    dd: &DecisionDiagram,
    node: NodeId,
    edge: usize,
    elision: bool,
    merge_shared: bool,
) -> Option<ControlSpec> {
    if elision && is_elidable(dd, node) {
        return None;
    }
    let qudit = dd.position_of_level(dd.node(node).level);
    if merge_shared {
        let child = dd.node(node).edges[edge].child;
        let levels = grouped_children(dd, node)
            .into_iter()
            .find(|(c, _)| *c == child)
            .map(|(_, idx)| idx)
            .unwrap_or_else(|| vec![edge]);
        Some(ControlSpec::with_levels(qudit, levels))
    } else {
        Some(ControlSpec::new(qudit, edge))
    }
}

/// Controls for an op emitted at the end of `path`, root first. Each entry is
/// an ancestor node and the edge index taken out of it.
pub fn control_path(
    dd: &DecisionDiagram,
    path: &[(NodeId, usize)],
    elision: bool,
    merge_shared: bool,
) -> Vec<ControlSpec> {
    path.iter()
        .filter_map(|&(node, edge)| control_for(dd, node, edge, elision, merge_shared))
        .collect()
}
