//! IGTree: an instance base compressed into a trie ordered by feature gain.
//!
//! Paths are stored only as deep as needed to disambiguate the class of the
//! instances reaching them. Every interior node keeps the majority label of
//! its instance subset, returned when a query leaves the stored paths.

use std::fmt::Write as _;

use thiserror::Error;

use crate::base::{Alphabet, ClassDistribution, InstanceBase, UNSEEN};
use crate::corpus::Label;

#[derive(Clone, Debug, PartialEq)]
enum NodeKind {
    Leaf,
    /// Arcs sorted by symbol id.
    Interior(Vec<(u32, usize)>),
}

#[derive(Clone, Debug, PartialEq)]
struct Node {
    /// Leaf label, or the default label of an interior node.
    label: Label,
    kind: NodeKind,
}

#[derive(Clone, Debug)]
pub struct IgTree {
    order: Vec<usize>,
    alphabet: Alphabet,
    nodes: Vec<Node>,
    unique_vectors: usize,
}

/// Result of a trie lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeMatch {
    pub label: Label,
    /// Number of features matched along the path.
    pub depth: usize,
    /// Whether the label came from a leaf rather than a default.
    pub leaf: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeStats {
    pub nodes: usize,
    pub arcs: usize,
    /// 1 − (arcs + nodes) / (unique vectors × width).
    pub compression: f64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("feature order {0:?} is not a permutation of the base features")]
    BadOrder(Vec<usize>),
    #[error("cannot build a tree from an empty instance base")]
    EmptyBase,
    #[error("tree format: {0}")]
    Format(String),
}

impl IgTree {
    /// Builds the trie over `base`, testing features in `order`.
    pub fn build(base: &InstanceBase, order: &[usize]) -> Result<Self, TreeError> {
        let n = base.width();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&f| f >= n || std::mem::replace(&mut seen[f], true)) {
            return Err(TreeError::BadOrder(order.to_vec()));
        }
        if base.is_empty() {
            return Err(TreeError::EmptyBase);
        }
        let mut tree = IgTree {
            order: order.to_vec(),
            alphabet: base.alphabet().clone(),
            nodes: Vec::new(),
            unique_vectors: base.len(),
        };
        let all: Vec<usize> = (0..base.len()).collect();
        tree.grow(base, &all, *base.global(), 0);
        Ok(tree)
    }

    fn grow(&mut self, base: &InstanceBase, subset: &[usize], dist: ClassDistribution, depth: usize) -> usize {
        let label = dist
            .majority(base.global())
            .expect("every subset reaching a node is non-empty");
        let id = self.nodes.len();
        self.nodes.push(Node { label, kind: NodeKind::Leaf });
        if dist.is_single_class() || depth == self.order.len() {
            return id;
        }
        let f = self.order[depth];
        let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
        let mut sorted = subset.to_vec();
        sorted.sort_by_key(|&e| base.vector(e)[f]);
        for e in sorted {
            let v = base.vector(e)[f];
            match groups.last_mut() {
                Some((gv, members)) if *gv == v => members.push(e),
                _ => groups.push((v, vec![e])),
            }
        }
        let mut arcs = Vec::with_capacity(groups.len());
        for (v, members) in groups {
            let mut child_dist = ClassDistribution::new();
            for &e in &members {
                child_dist.merge(base.distribution(e));
            }
            let child = self.grow(base, &members, child_dist, depth + 1);
            arcs.push((v, child));
        }
        self.nodes[id].kind = NodeKind::Interior(arcs);
        id
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn width(&self) -> usize {
        self.order.len()
    }

    /// Classifies a query by traversal, falling back to the default label of
    /// the last matching interior node.
    ///
    /// Panics if the query width differs from the tree width.
    pub fn classify(&self, query: &[char]) -> TreeMatch {
        self.classify_ids(&self.alphabet.encode(query))
    }

    pub fn classify_ids(&self, query: &[u32]) -> TreeMatch {
        assert_eq!(query.len(), self.width(), "query width does not match the tree");
        let mut node = &self.nodes[0];
        let mut depth = 0;
        loop {
            let arcs = match &node.kind {
                NodeKind::Leaf => {
                    return TreeMatch { label: node.label, depth, leaf: true };
                }
                NodeKind::Interior(arcs) => arcs,
            };
            let value = query[self.order[depth]];
            let next = if value == UNSEEN {
                None
            } else {
                arcs.binary_search_by_key(&value, |&(v, _)| v).ok()
            };
            match next {
                Some(i) => {
                    node = &self.nodes[arcs[i].1];
                    depth += 1;
                }
                None => return TreeMatch { label: node.label, depth, leaf: false },
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match &n.kind {
                NodeKind::Leaf => 0,
                NodeKind::Interior(arcs) => arcs.len(),
            })
            .sum()
    }

    /// Number of unique vectors in the base the tree was built from.
    pub fn unique_vectors(&self) -> usize {
        self.unique_vectors
    }

    pub fn stats(&self) -> TreeStats {
        let nodes = self.node_count();
        let arcs = self.arc_count();
        let stored = (self.unique_vectors * self.width()) as f64;
        TreeStats {
            nodes,
            arcs,
            compression: 1.0 - (arcs + nodes) as f64 / stored,
        }
    }

    /// Appends the preorder text form: one `L label` or `N default arcs`
    /// line per node, each child preceded by an `A symbol` line.
    pub fn write_nodes(&self, out: &mut String) {
        self.write_node(0, out);
    }

    fn write_node(&self, id: usize, out: &mut String) {
        let node = &self.nodes[id];
        match &node.kind {
            NodeKind::Leaf => {
                let _ = writeln!(out, "L {}", node.label);
            }
            NodeKind::Interior(arcs) => {
                let _ = writeln!(out, "N {} {}", node.label, arcs.len());
                let mut arcs = arcs.clone();
                arcs.sort_by_key(|&(v, _)| self.alphabet.symbol(v));
                for (v, child) in arcs {
                    let _ = writeln!(out, "A {}", self.alphabet.symbol(v));
                    self.write_node(child, out);
                }
            }
        }
    }

    /// Reads nodes written by [`IgTree::write_nodes`].
    pub fn read_nodes<'a>(
        order: Vec<usize>,
        unique_vectors: usize,
        lines: &mut impl Iterator<Item = &'a str>,
    ) -> Result<Self, TreeError> {
        let mut tree = IgTree {
            order,
            alphabet: Alphabet::default(),
            nodes: Vec::new(),
            unique_vectors,
        };
        tree.read_node(lines, 0)?;
        Ok(tree)
    }

    fn read_node<'a>(&mut self, lines: &mut impl Iterator<Item = &'a str>, depth: usize) -> Result<usize, TreeError> {
        let line = lines
            .next()
            .ok_or_else(|| TreeError::Format("unexpected end of node list".into()))?;
        let fields: Vec<&str> = line.split(' ').collect();
        let bad = || TreeError::Format(format!("bad node line `{line}`"));
        let label: Label = fields.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let id = self.nodes.len();
        self.nodes.push(Node { label, kind: NodeKind::Leaf });
        match fields[0] {
            "L" if fields.len() == 2 => {}
            "N" if fields.len() == 3 => {
                if depth >= self.order.len() {
                    return Err(TreeError::Format("path deeper than the feature count".into()));
                }
                let k: usize = fields[2].parse().map_err(|_| bad())?;
                let mut arcs = Vec::with_capacity(k);
                for _ in 0..k {
                    let arc = lines
                        .next()
                        .ok_or_else(|| TreeError::Format("missing arc line".into()))?;
                    let symbol = arc
                        .strip_prefix("A ")
                        .and_then(|s| {
                            let mut cs = s.chars();
                            match (cs.next(), cs.next()) {
                                (Some(c), None) => Some(c),
                                _ => None,
                            }
                        })
                        .ok_or_else(|| TreeError::Format(format!("bad arc line `{arc}`")))?;
                    let v = self.alphabet.intern(symbol);
                    let child = self.read_node(lines, depth + 1)?;
                    arcs.push((v, child));
                }
                arcs.sort_by_key(|&(v, _)| v);
                if arcs.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(TreeError::Format("duplicate arc symbol under one node".into()));
                }
                self.nodes[id].kind = NodeKind::Interior(arcs);
            }
            _ => return Err(bad()),
        }
        Ok(id)
    }
}
