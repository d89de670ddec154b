//! Crystal graphs: nodes plus `i`-labelled edges `u → v` meaning `f̃_i u = v`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use serde_json::{json, Value};

#[derive(Debug, Clone)]
pub struct CrystalGraph<N> {
    nodes: Vec<N>,
    depths: Vec<usize>,
    edges: Vec<(usize, usize, usize)>,
    index: HashMap<N, usize>,
}

impl<N: Clone + Eq + Hash> CrystalGraph<N> {
    /// A graph holding only `root` (index 0, depth 0).
    pub fn new(root: N) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Self {
            nodes: vec![root],
            depths: vec![0],
            edges: Vec::new(),
            index,
        }
    }

    /// Inserts `node` if absent. Returns its index and whether it was new.
    pub fn insert(&mut self, node: N, depth: usize) -> (usize, bool) {
        if let Some(&idx) = self.index.get(&node) {
            return (idx, false);
        }
        let idx = self.nodes.len();
        self.index.insert(node.clone(), idx);
        self.nodes.push(node);
        self.depths.push(depth);
        (idx, true)
    }

    pub fn add_edge(&mut self, src: usize, i: usize, dst: usize) {
        self.edges.push((src, i, dst));
    }

    pub fn root(&self) -> &N {
        &self.nodes[0]
    }

    pub fn node(&self, idx: usize) -> &N {
        &self.nodes[idx]
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    /// Number of `f̃` applications from the root on a shortest path.
    pub fn depth(&self, idx: usize) -> usize {
        self.depths[idx]
    }

    /// `(src, i, dst)` triples, in discovery order.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, node: &N) -> Option<usize> {
        self.index.get(node).copied()
    }

    pub fn contains(&self, node: &N) -> bool {
        self.index.contains_key(node)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// True if the edges form one path `root → ⋯` that uses only colour `i`.
    pub fn is_chain(&self, i: usize) -> bool {
        if self.edges.len() + 1 != self.nodes.len() {
            return false;
        }
        let mut out_deg = vec![0usize; self.nodes.len()];
        let mut in_deg = vec![0usize; self.nodes.len()];
        for &(s, c, d) in &self.edges {
            if c != i {
                return false;
            }
            out_deg[s] += 1;
            in_deg[d] += 1;
        }
        in_deg[0] == 0 && out_deg.iter().all(|&d| d <= 1) && in_deg.iter().skip(1).all(|&d| d == 1)
    }

    /// Graphviz rendering with edges labelled by their colour.
    pub fn to_dot(&self, label: impl Fn(&N) -> String) -> String {
        let mut out = String::from("digraph crystal {\n    rankdir=TB;\n");
        for (idx, node) in self.nodes.iter().enumerate() {
            let text = label(node).replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "    n{idx} [label=\"{text}\"];");
        }
        for &(s, i, d) in &self.edges {
            let _ = writeln!(out, "    n{s} -> n{d} [label=\"{i}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// `{"nodes": [...], "edges": [[src, i, dst], ...], "root": 0}`.
    pub fn to_json(&self, encode: impl Fn(&N) -> Value) -> Value {
        json!({
            "nodes": self.nodes.iter().map(encode).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(s, i, d)| json!([s, i, d])).collect::<Vec<_>>(),
            "root": 0,
        })
    }
}
