//! Edge-weighted decision diagrams with a variable number of successors.
//!
//! Nodes live in an arena and are addressed by [`NodeId`]. Levels count up from
//! the last qudit: the root sits at level `n - 1`, level-0 nodes point at the
//! single terminal. An edge whose weight is (treated as) zero points to
//! [`Child::Zero`] and carries no subtree.

mod approx;
mod build;
mod dot;
mod metrics;

use num_complex::Complex64;

use crate::error::{PrepError, Result};
use crate::register::{BasisIndex, QuditRegister};
use crate::state::StateVector;

pub use approx::{approximate, remove_node, ApproxResult};
pub use build::{build_tree, reduce};
pub use dot::to_dot;
pub use metrics::{distinct_weight_count, metrics, tree_node_count, DDMetrics};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Child {
    /// Zero stub: the edge carries no amplitude.
    Zero,
    Terminal,
    Node(NodeId),
}

impl Child {
    pub fn is_live(self) -> bool {
        !matches!(self, Child::Zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub weight: Complex64,
    pub child: Child,
}

impl Edge {
    pub const ZERO: Edge = Edge { weight: Complex64::new(0.0, 0.0), child: Child::Zero };
}

#[derive(Debug, Clone, PartialEq)]
pub struct DDNode {
    pub level: usize,
    pub edges: Vec<Edge>,
}

impl DDNode {
    pub fn arity(&self) -> usize {
        self.edges.len()
    }

    pub fn weights(&self) -> Vec<Complex64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn live_edges(&self) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(|(_, e)| e.child.is_live())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DDForm {
    Tree,
    Reduced,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionDiagram {
    register: QuditRegister,
    root_weight: Complex64,
    root: NodeId,
    nodes: Vec<DDNode>,
    form: DDForm,
}

impl DecisionDiagram {
    pub(crate) fn from_parts(
        register: QuditRegister,
        root_weight: Complex64,
        root: NodeId,
        nodes: Vec<DDNode>,
        form: DDForm,
    ) -> Self {
        Self { register, root_weight, root, nodes, form }
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn root_weight(&self) -> Complex64 {
        self.root_weight
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn form(&self) -> DDForm {
        self.form
    }

    pub fn node(&self, id: NodeId) -> &DDNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[DDNode] {
        &self.nodes
    }

    /// Register position targeted by nodes at `level`.
    pub fn position_of_level(&self, level: usize) -> usize {
        self.register.position_of(level)
    }

    /// Nodes reachable from the root, ordered by level from the root down
    /// (parents always precede their children).
    pub fn reachable(&self) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        let mut out = Vec::new();
        seen[self.root] = true;
        while let Some(id) = stack.pop() {
            out.push(id);
            for e in &self.nodes[id].edges {
                if let Child::Node(c) = e.child {
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
        }
        out.sort_by(|a, b| self.nodes[*b].level.cmp(&self.nodes[*a].level).then(a.cmp(b)));
        out
    }

    /// Number of reachable non-terminal nodes.
    pub fn node_count(&self) -> usize {
        self.reachable().len()
    }

    pub fn amplitude(&self, idx: &BasisIndex) -> Result<Complex64> {
        let flat = self.register.encode(idx)?;
        Ok(self.amplitude_flat(flat))
    }

    pub(crate) fn amplitude_flat(&self, flat: usize) -> Complex64 {
        let mut acc = self.root_weight;
        let mut current = Child::Node(self.root);
        for pos in 0..self.register.num_qudits() {
            let id = match current {
                Child::Node(id) => id,
                Child::Zero => return Complex64::new(0.0, 0.0),
                Child::Terminal => break,
            };
            let edge = &self.nodes[id].edges[self.register.digit(flat, pos)];
            if !edge.child.is_live() {
                return Complex64::new(0.0, 0.0);
            }
            acc *= edge.weight;
            current = edge.child;
        }
        acc
    }

    pub fn to_state_vector(&self) -> StateVector {
        let total = self.register.total_dimension();
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        self.fill(self.root, self.root_weight, 0, &mut amps);
        StateVector::new(self.register.clone(), amps).expect("length matches register")
    }

    fn fill(&self, id: NodeId, prefix: Complex64, offset: usize, out: &mut [Complex64]) {
        let node = &self.nodes[id];
        let stride = self.register.strides()[self.register.position_of(node.level)];
        for (k, edge) in node.live_edges() {
            let w = prefix * edge.weight;
            match edge.child {
                Child::Terminal => out[offset + k * stride] = w,
                Child::Node(c) => self.fill(c, w, offset + k * stride, out),
                Child::Zero => unreachable!(),
            }
        }
    }

    /// Probability mass routed through each node, indexed by `NodeId`.
    ///
    /// Every normalized subtree carries unit mass, so a single downward pass
    /// accumulating `parent · |w|²` yields the sum of `|amplitude|²` over all
    /// basis states whose path crosses the node. Unreachable nodes get 0.
    pub fn contributions(&self) -> Vec<f64> {
        let mut contrib = vec![0.0; self.nodes.len()];
        contrib[self.root] = self.root_weight.norm_sqr();
        for id in self.reachable() {
            let here = contrib[id];
            for e in &self.nodes[id].edges {
                if let Child::Node(c) = e.child {
                    contrib[c] += here * e.weight.norm_sqr();
                }
            }
        }
        contrib
    }
}

pub fn amplitude(dd: &DecisionDiagram, idx: &BasisIndex) -> Result<Complex64> {
    dd.amplitude(idx)
}

pub fn to_state_vector(dd: &DecisionDiagram) -> StateVector {
    dd.to_state_vector()
}

pub fn contributions(dd: &DecisionDiagram) -> Vec<f64> {
    dd.contributions()
}

pub(crate) fn check_threshold(threshold: f64) -> Result<()> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(PrepError::Parameter(format!(
            "fidelity threshold must lie in (0, 1], got {threshold}"
        )));
    }
    Ok(())
}
