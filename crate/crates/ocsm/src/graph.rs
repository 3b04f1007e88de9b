//! Simple undirected graphs with dense integer ids, edge-list ingestion,
//! and k-core machinery.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};

/// A simple undirected graph. No self-loops, no duplicate edges.
///
/// Nodes carry external string labels; dense ids are assigned in
/// first-seen order, so loading the same edge list always produces the
/// same ids. Immutable after construction, safe to share across threads.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    labels: Vec<String>,
    index: HashMap<String, u32>,
    edge_count: usize,
}

impl Graph {
    /// Parse a whitespace-separated edge list. Lines starting with `#` or
    /// `%` are comments; blank lines are skipped. Self-loops are dropped
    /// and duplicate edges collapsed.
    pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();

        let intern = |tok: &str, labels: &mut Vec<String>, index: &mut HashMap<String, u32>| {
            if let Some(&id) = index.get(tok) {
                id
            } else {
                let id = labels.len() as u32;
                labels.push(tok.to_string());
                index.insert(tok.to_string(), id);
                id
            }
        };

        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let mut toks = trimmed.split_whitespace();
            let a = toks.next();
            let b = toks.next();
            let rest = toks.count();
            match (a, b, rest) {
                (Some(a), Some(b), 0) => {
                    let u = intern(a, &mut labels, &mut index);
                    let v = intern(b, &mut labels, &mut index);
                    if u != v {
                        edges.push((u, v));
                    }
                }
                (a, b, rest) => {
                    let found = a.is_some() as usize + b.is_some() as usize + rest;
                    return Err(Error::MalformedEdgeLine {
                        line: lineno + 1,
                        found,
                    });
                }
            }
        }

        Ok(Self::assemble(labels, index, edges))
    }

    /// Convenience wrapper over [`Graph::load_edge_list`] for in-memory text.
    pub fn parse(text: &str) -> Result<Graph> {
        Self::load_edge_list(text.as_bytes())
    }

    /// Build a graph over `node_count` nodes labelled `"0"`, `"1"`, ...
    /// from explicit id pairs. Self-loops and duplicates are dropped.
    pub fn from_edges(node_count: u32, edges: &[(u32, u32)]) -> Result<Graph> {
        let labels: Vec<String> = (0..node_count).map(|i| i.to_string()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        for &(u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::Construction(format!(
                    "edge ({u},{v}) out of range for {node_count} nodes"
                )));
            }
        }
        let edges: Vec<(u32, u32)> = edges.iter().copied().filter(|&(u, v)| u != v).collect();
        Ok(Self::assemble(labels, index, edges))
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, u32>, edges: Vec<(u32, u32)>) -> Graph {
        let n = labels.len();
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut edge_count = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Graph {
            adj,
            labels,
            index,
            edge_count: edge_count / 2,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn id_of(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    /// All edges as normalized pairs `(u, v)` with `u < v`, in
    /// lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.node_count() as u32).flat_map(move |u| {
            self.adj[u as usize]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Core number of every node via bucket peeling (Batagelj-Zaversnik),
    /// linear in the number of edges.
    pub fn coreness(&self) -> Vec<u32> {
        let n = self.node_count();
        if n == 0 {
            return Vec::new();
        }
        let mut deg: Vec<usize> = (0..n).map(|v| self.adj[v].len()).collect();
        let max_deg = deg.iter().copied().max().unwrap_or(0);

        // Counting sort of nodes by degree.
        let mut bin = vec![0usize; max_deg + 2];
        for &d in &deg {
            bin[d] += 1;
        }
        let mut start = 0;
        for b in bin.iter_mut().take(max_deg + 1) {
            let count = *b;
            *b = start;
            start += count;
        }
        let mut vert = vec![0u32; n];
        let mut pos = vec![0usize; n];
        for v in 0..n {
            pos[v] = bin[deg[v]];
            vert[pos[v]] = v as u32;
            bin[deg[v]] += 1;
        }
        // Restore bucket starts.
        for d in (1..=max_deg).rev() {
            bin[d] = bin[d - 1];
        }
        bin[0] = 0;

        let mut core = vec![0u32; n];
        for i in 0..n {
            let v = vert[i] as usize;
            core[v] = deg[v] as u32;
            for &u in &self.adj[v] {
                let u = u as usize;
                if deg[u] > deg[v] {
                    let du = deg[u];
                    let pu = pos[u];
                    let pw = bin[du];
                    let w = vert[pw] as usize;
                    if u != w {
                        vert[pu] = w as u32;
                        vert[pw] = u as u32;
                        pos[u] = pw;
                        pos[w] = pu;
                    }
                    bin[du] += 1;
                    deg[u] -= 1;
                }
            }
        }
        core
    }

    pub fn max_coreness(&self) -> u32 {
        self.coreness().into_iter().max().unwrap_or(0)
    }

    /// The unique maximal node set whose induced subgraph has minimum
    /// degree at least `k`; empty if no such set exists.
    pub fn k_core(&self, k: u32) -> NodeSet {
        let core = self.coreness();
        NodeSet::from_sorted(
            (0..self.node_count() as u32)
                .filter(|&v| core[v as usize] >= k)
                .collect(),
        )
    }

    /// Connected components of the subgraph induced by `restrict`,
    /// ordered by smallest member id.
    pub fn connected_components(&self, restrict: &NodeSet) -> Vec<NodeSet> {
        let n = self.node_count();
        let mut member = vec![false; n];
        for &v in restrict.iter() {
            assert!((v as usize) < n, "restrict node {v} out of range");
            member[v as usize] = true;
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for &root in restrict.iter() {
            if seen[root as usize] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![root];
            seen[root as usize] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in &self.adj[v as usize] {
                    if member[u as usize] && !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(NodeSet::from_sorted(comp));
        }
        out
    }

    /// Minimum induced degree over `s`. Errors on an empty set.
    pub fn min_degree(&self, s: &NodeSet) -> Result<u32> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut best = u32::MAX;
        for &v in s.iter() {
            let d = self.adj[v as usize]
                .iter()
                .filter(|&&u| s.contains(u))
                .count() as u32;
            best = best.min(d);
        }
        Ok(best)
    }
}

/// A set of dense node ids, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    ids: Vec<u32>,
}

impl NodeSet {
    pub fn new(ids: impl IntoIterator<Item = u32>) -> NodeSet {
        let mut ids: Vec<u32> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        NodeSet { ids }
    }

    pub(crate) fn from_sorted(ids: Vec<u32>) -> NodeSet {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        NodeSet { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u32> {
        self.ids.iter()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.ids
    }

    /// External labels of the members, sorted as strings. This is the
    /// canonical serialization of a node set.
    pub fn sorted_labels(&self, g: &Graph) -> Vec<String> {
        let mut labels: Vec<String> = self.ids.iter().map(|&v| g.label(v).to_string()).collect();
        labels.sort();
        labels
    }
}

impl FromIterator<u32> for NodeSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        NodeSet::new(iter)
    }
}
