use std::collections::HashMap;

use num_complex::Complex64;

use super::{Child, DDForm, DDNode, DecisionDiagram, Edge, NodeId};
use crate::error::{PrepError, Result};
use crate::state::StateVector;
use crate::tolerance::ToleranceConfig;

/// Rescales live out-edges to unit L2 norm with the first live weight real and
/// non-negative. Returns the factor that moves to the in-edge, or `None` when
/// the node carries no mass.
pub(crate) fn normalize_edges(edges: &mut [Edge], eps_zero: f64) -> Option<Complex64> {
    let norm = edges
        .iter()
        .filter(|e| e.child.is_live())
        .map(|e| e.weight.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if norm <= eps_zero {
        return None;
    }
    let lead = edges.iter().position(|e| e.child.is_live())?;
    let lead_weight = edges[lead].weight;
    let factor = Complex64::from_polar(norm, lead_weight.arg());
    for e in edges.iter_mut() {
        if e.child.is_live() {
            e.weight /= factor;
        } else {
            *e = Edge::ZERO;
        }
    }
    edges[lead].weight = Complex64::new(lead_weight.norm() / norm, 0.0);
    Some(factor)
}

pub(crate) fn bucket(w: Complex64, eps: f64) -> (i64, i64) {
    ((w.re / eps).round() as i64, (w.im / eps).round() as i64)
}

type NodeKey = (usize, Vec<((i64, i64), Child)>);

/// Hash-consing table: one node per (level, bucketed weights, children).
pub(crate) struct UniqueTable {
    eps: f64,
    map: HashMap<NodeKey, NodeId>,
    nodes: Vec<DDNode>,
}

impl UniqueTable {
    pub(crate) fn new(eps_distinct: f64) -> Self {
        Self { eps: eps_distinct, map: HashMap::new(), nodes: Vec::new() }
    }

    pub(crate) fn intern(&mut self, node: DDNode) -> NodeId {
        let key = (
            node.level,
            node.edges.iter().map(|e| (bucket(e.weight, self.eps), e.child)).collect(),
        );
        *self.map.entry(key).or_insert_with(|| {
            self.nodes.push(node);
            self.nodes.len() - 1
        })
    }

    pub(crate) fn into_nodes(self) -> Vec<DDNode> {
        self.nodes
    }
}

struct TreeBuilder<'a> {
    state: &'a StateVector,
    eps_zero: f64,
    nodes: Vec<DDNode>,
}

impl TreeBuilder<'_> {
    fn build(&mut self, pos: usize, offset: usize) -> Option<(Complex64, NodeId)> {
        let reg = self.state.register();
        let dim = reg.dim(pos);
        let stride = reg.strides()[pos];
        let last = pos + 1 == reg.num_qudits();
        let mut edges = Vec::with_capacity(dim);
        for k in 0..dim {
            let off = offset + k * stride;
            let edge = if last {
                let a = self.state.amplitudes()[off];
                if a.norm() > self.eps_zero {
                    Edge { weight: a, child: Child::Terminal }
                } else {
                    Edge::ZERO
                }
            } else {
                match self.build(pos + 1, off) {
                    Some((f, id)) => Edge { weight: f, child: Child::Node(id) },
                    None => Edge::ZERO,
                }
            };
            edges.push(edge);
        }
        let factor = normalize_edges(&mut edges, self.eps_zero)?;
        self.nodes.push(DDNode { level: reg.level_of(pos), edges });
        Some((factor, self.nodes.len() - 1))
    }
}

/// Splits the state recursively by qudit into an unshared weighted tree.
pub fn build_tree(s: &StateVector, tol: &ToleranceConfig) -> Result<DecisionDiagram> {
    let mut builder = TreeBuilder { state: s, eps_zero: tol.eps_zero, nodes: Vec::new() };
    let (root_weight, root) =
        builder.build(0, 0).ok_or(PrepError::DegenerateState { norm: s.norm() })?;
    Ok(DecisionDiagram::from_parts(
        s.register().clone(),
        root_weight,
        root,
        builder.nodes,
        DDForm::Tree,
    ))
}

/// Rebuilds `dd` bottom-up through a unique table, optionally cutting every
/// in-edge of `removed`. Emptied nodes collapse into zero stubs and every
/// surviving node is renormalized. Returns the root factor alongside.
pub(crate) fn rebuild(
    dd: &DecisionDiagram,
    removed: Option<NodeId>,
    tol: &ToleranceConfig,
) -> Option<(Complex64, NodeId, Vec<DDNode>)> {
    struct Rebuild<'a> {
        dd: &'a DecisionDiagram,
        removed: Option<NodeId>,
        eps_zero: f64,
        memo: Vec<Option<Option<(Complex64, NodeId)>>>,
        table: UniqueTable,
    }

    impl Rebuild<'_> {
        fn visit(&mut self, id: NodeId) -> Option<(Complex64, NodeId)> {
            if self.removed == Some(id) {
                return None;
            }
            if let Some(done) = self.memo[id] {
                return done;
            }
            let old = &self.dd.nodes[id];
            let level = old.level;
            let old_edges = old.edges.clone();
            let mut edges = Vec::with_capacity(old_edges.len());
            for e in old_edges {
                let edge = match e.child {
                    Child::Zero => Edge::ZERO,
                    Child::Terminal => e,
                    Child::Node(c) => match self.visit(c) {
                        Some((f, nid)) => Edge { weight: e.weight * f, child: Child::Node(nid) },
                        None => Edge::ZERO,
                    },
                };
                edges.push(edge);
            }
            let result = normalize_edges(&mut edges, self.eps_zero)
                .map(|f| (f, self.table.intern(DDNode { level, edges })));
            self.memo[id] = Some(result);
            result
        }
    }

    let mut r = Rebuild {
        dd,
        removed,
        eps_zero: tol.eps_zero,
        memo: vec![None; dd.nodes.len()],
        table: UniqueTable::new(tol.eps_distinct),
    };
    let (factor, root) = r.visit(dd.root)?;
    Some((factor, root, r.table.into_nodes()))
}

/// Merges structurally identical sub-diagrams. The represented state is kept.
pub fn reduce(dd: &DecisionDiagram, tol: &ToleranceConfig) -> DecisionDiagram {
    let (factor, root, nodes) = rebuild(dd, None, tol).expect("a well-formed diagram has a live root");
    DecisionDiagram::from_parts(
        dd.register.clone(),
        dd.root_weight * factor,
        root,
        nodes,
        DDForm::Reduced,
    )
}
