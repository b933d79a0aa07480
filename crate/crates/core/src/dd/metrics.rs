use std::collections::HashSet;

use serde::Serialize;

use super::build::bucket;
use super::DecisionDiagram;
use crate::register::QuditRegister;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DDMetrics {
    pub tree_node_count: usize,
    pub reduced_node_count: usize,
    pub distinct_weight_count: usize,
}

/// Node count of the full tree: root, every internal node and one leaf per
/// amplitude slot, i.e. the sum over k of the product of the k leading dims.
pub fn tree_node_count(reg: &QuditRegister) -> usize {
    let mut total = 1;
    let mut width = 1;
    for &d in reg.dims() {
        width *= d;
        total += width;
    }
    total
}

/// Number of `eps_distinct` buckets over all edge weights and the root weight.
pub fn distinct_weight_count(dd: &DecisionDiagram, tol: &ToleranceConfig) -> usize {
    let mut seen = HashSet::new();
    seen.insert(bucket(dd.root_weight(), tol.eps_distinct));
    for id in dd.reachable() {
        for e in &dd.node(id).edges {
            seen.insert(bucket(e.weight, tol.eps_distinct));
        }
    }
    seen.len()
}

pub fn metrics(tree: &DecisionDiagram, reduced: &DecisionDiagram, tol: &ToleranceConfig) -> DDMetrics {
    DDMetrics {
        tree_node_count: tree_node_count(tree.register()),
        reduced_node_count: reduced.node_count() + 1,
        distinct_weight_count: distinct_weight_count(tree, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::{build_tree, reduce};
    use crate::generators::{ghz, random_state, w_embedded, w_qudit};

    fn reg(d: &[usize]) -> QuditRegister {
        QuditRegister::new(d.to_vec()).unwrap()
    }

    #[test]
    fn tree_counts_match_table() {
        assert_eq!(tree_node_count(&reg(&[3, 6, 2])), 58);
        assert_eq!(tree_node_count(&reg(&[9, 5, 6, 3])), 1135);
        assert_eq!(tree_node_count(&reg(&[4, 7, 4, 4, 3, 5])), 8657);
        assert_eq!(tree_node_count(&reg(&[6, 6, 5, 3, 3])), 2383);
        assert_eq!(tree_node_count(&reg(&[5, 4, 2, 5, 5, 2])), 3266);
    }

    #[test]
    fn distinct_weights_small_register() {
        let t = ToleranceConfig::default();
        let r = reg(&[3, 6, 2]);
        let count = |s| {
            let tree = build_tree(&s, &t).unwrap();
            let red = reduce(&tree, &t);
            metrics(&tree, &red, &t)
        };
        let g = count(ghz(&r));
        assert_eq!((g.tree_node_count, g.distinct_weight_count, g.reduced_node_count), (58, 3, 6));
        assert_eq!(count(w_qudit(&r)).distinct_weight_count, 5);
        assert_eq!(count(w_embedded(&r)).distinct_weight_count, 5);
        assert_eq!(count(random_state(&r, 1)).distinct_weight_count, 58);
    }
}
