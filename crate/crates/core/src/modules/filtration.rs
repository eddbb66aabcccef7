//! Action graph on `≈`-classes and the filtration read off its condensation.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::condensation;
use petgraph::graph::DiGraph;
use petgraph::visit::EdgeRef;
use petgraph::Direction;
use serde::Serialize;

use crate::algebra::Generator;
use crate::error::{Error, Result};

use super::class::ClassDescriptor;
use super::module::{ExplicitModule, WeightBox};

/// Classes met by a box, with an edge `s → t` whenever a generator maps a
/// vector of class `s` to a nonzero vector of class `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionGraph {
    pub nodes: Vec<ClassDescriptor>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl ActionGraph {
    pub fn build(m: &ExplicitModule, bx: WeightBox) -> Result<Self> {
        let sig = m.sig();
        let indices = sig.indices().map_err(|_| Error::InfiniteClassSet)?;
        let mut ids: BTreeMap<ClassDescriptor, usize> = BTreeMap::new();
        let mut nodes = Vec::new();
        let mut id_of = |c: ClassDescriptor, nodes: &mut Vec<ClassDescriptor>| {
            *ids.entry(c.clone()).or_insert_with(|| {
                nodes.push(c);
                nodes.len() - 1
            })
        };
        let mut edges = BTreeSet::new();
        for lam in m.support_box(bx) {
            let s = id_of(ClassDescriptor::of_weight(&lam, &sig)?, &mut nodes);
            for &i in &indices {
                for g in [Generator::raising(i), Generator::lowering(i)] {
                    if let Some((t, _)) = m.act_generator(g, &lam) {
                        let t = id_of(ClassDescriptor::of_weight(&t, &sig)?, &mut nodes);
                        if s != t {
                            edges.insert((s, t));
                        }
                    }
                }
            }
        }
        Ok(ActionGraph { nodes, edges })
    }

    /// Layers ordered from the sinks: every edge goes from a later layer to an
    /// earlier one. Each strongly connected component must be a single class.
    pub fn filtration(&self) -> Result<Vec<ClassDescriptor>> {
        let mut g: DiGraph<usize, ()> = DiGraph::new();
        let ix: Vec<_> = (0..self.nodes.len()).map(|i| g.add_node(i)).collect();
        for &(s, t) in &self.edges {
            g.add_edge(ix[s], ix[t], ());
        }
        let dag = condensation(g, true);
        if dag.node_weights().any(|scc| scc.len() != 1) {
            return Err(Error::NonSimpleLayer);
        }
        let class_of = |n: petgraph::graph::NodeIndex| &self.nodes[dag[n][0]];
        let mut placed = BTreeSet::new();
        let mut order = Vec::with_capacity(dag.node_count());
        while order.len() < dag.node_count() {
            // smallest class whose successors are all placed
            let next = dag
                .node_indices()
                .filter(|n| !placed.contains(n))
                .filter(|&n| {
                    dag.edges_directed(n, Direction::Outgoing)
                        .all(|e| placed.contains(&e.target()))
                })
                .min_by(|a, b| class_of(*a).cmp(class_of(*b)))
                .expect("condensation is acyclic");
            placed.insert(next);
            order.push(class_of(next).clone());
        }
        Ok(order)
    }
}

pub fn condensation_filtration(m: &ExplicitModule, bx: WeightBox) -> Result<Vec<ClassDescriptor>> {
    ActionGraph::build(m, bx)?.filtration()
}
