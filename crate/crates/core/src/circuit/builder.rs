use std::collections::HashMap;

use super::{Literal, NnfCircuit, NnfNode, NodeId, Var};

/// Hash-consing circuit builder. Structurally identical nodes are shared;
/// empty conjunctions become `True` and empty disjunctions `False`.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    nodes: Vec<NnfNode>,
    index: HashMap<NnfNode, NodeId>,
    num_vars: u32,
}

impl CircuitBuilder {
    pub fn new(num_vars: u32) -> CircuitBuilder {
        CircuitBuilder { nodes: Vec::new(), index: HashMap::new(), num_vars }
    }

    /// Starts from the nodes of an existing circuit, keeping their ids.
    pub fn from_circuit(c: &NnfCircuit) -> CircuitBuilder {
        let mut b = CircuitBuilder::new(c.num_vars());
        for node in c.nodes() {
            b.index.entry(node.clone()).or_insert(b.nodes.len());
            b.nodes.push(node.clone());
        }
        b
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn node(&self, id: NodeId) -> &NnfNode {
        &self.nodes[id]
    }

    fn push(&mut self, node: NnfNode) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.index.insert(node.clone(), id);
        self.nodes.push(node);
        id
    }

    pub fn constant(&mut self, value: bool) -> NodeId {
        self.push(if value { NnfNode::True } else { NnfNode::False })
    }

    pub fn lit(&mut self, lit: Literal) -> NodeId {
        assert!(lit.var().index() <= self.num_vars, "literal {lit} out of range");
        self.push(NnfNode::Lit(lit))
    }

    pub fn and(&mut self, children: Vec<NodeId>) -> NodeId {
        if children.is_empty() {
            return self.constant(true);
        }
        self.push(NnfNode::And(children))
    }

    pub fn or(&mut self, children: Vec<NodeId>) -> NodeId {
        self.or_with_hint(None, children)
    }

    pub fn or_with_hint(&mut self, decision: Option<Var>, children: Vec<NodeId>) -> NodeId {
        if children.is_empty() {
            return self.constant(false);
        }
        self.push(NnfNode::Or { decision, children })
    }

    /// Conjunction with constant children folded away.
    pub fn and_folded(&mut self, children: Vec<NodeId>) -> NodeId {
        if children.iter().any(|&c| self.nodes[c] == NnfNode::False) {
            return self.constant(false);
        }
        let kept = children.into_iter().filter(|&c| self.nodes[c] != NnfNode::True).collect();
        self.and(kept)
    }

    /// Disjunction with constant children folded away.
    pub fn or_folded(&mut self, decision: Option<Var>, children: Vec<NodeId>) -> NodeId {
        if children.iter().any(|&c| self.nodes[c] == NnfNode::True) {
            return self.constant(true);
        }
        let kept = children.into_iter().filter(|&c| self.nodes[c] != NnfNode::False).collect();
        self.or_with_hint(decision, kept)
    }

    /// Keeps only the nodes reachable from `root`, in their original order,
    /// so that `root` becomes the last node.
    pub fn finish(self, root: NodeId) -> NnfCircuit {
        let mut reach = vec![false; root + 1];
        reach[root] = true;
        for id in (0..=root).rev() {
            if reach[id] {
                for &c in self.nodes[id].children() {
                    reach[c] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; root + 1];
        let mut nodes = Vec::new();
        for (id, node) in self.nodes.into_iter().take(root + 1).enumerate() {
            if !reach[id] {
                continue;
            }
            let node = match node {
                NnfNode::And(ch) => NnfNode::And(ch.iter().map(|&c| map[c]).collect()),
                NnfNode::Or { decision, children } => {
                    NnfNode::Or { decision, children: children.iter().map(|&c| map[c]).collect() }
                }
                other => other,
            };
            map[id] = nodes.len();
            nodes.push(node);
        }
        NnfCircuit::from_nodes(nodes, self.num_vars).expect("builder output is well formed")
    }
}
