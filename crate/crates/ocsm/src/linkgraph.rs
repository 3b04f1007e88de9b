//! Link-space and link-skein graphs: weighted transformed graphs whose
//! nodes are the edges of the original graph, plus translation of link
//! subgraphs back to node sets.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkMode {
    /// Link nodes adjacent whenever the original edges share an endpoint.
    Space,
    /// Only adjacencies whose two edges lie in a common triangle.
    Skein,
}

impl LinkMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            LinkMode::Space => "space",
            LinkMode::Skein => "skein",
        }
    }
}

/// Weighted transformed graph with one node per original edge.
///
/// Link node ids follow the lexicographic order of the normalized
/// endpoint pairs, so ids are stable across runs. Immutable after
/// construction.
#[derive(Debug)]
pub struct LinkGraph {
    source: Arc<Graph>,
    pairs: Vec<(u32, u32)>,
    pair_index: HashMap<(u32, u32), u32>,
    adj: Vec<Vec<(u32, f64)>>,
    edge_count: usize,
    mode: LinkMode,
}

/// Closed-neighborhood Jaccard similarity of two distinct nodes:
/// `|Γ(i) ∩ Γ(j)| / |Γ(i) ∪ Γ(j)|` with `Γ(v) = {v} ∪ N(v)`.
///
/// Counts are exact integers; the result is a rational in (0, 1] whenever
/// the nodes share a neighbor or are adjacent.
pub fn closed_neighborhood_similarity(g: &Graph, i: u32, j: u32) -> Result<f64> {
    if i == j {
        return Err(Error::IdenticalEndpoints(i));
    }
    let common = sorted_intersection_len(g.neighbors(i), g.neighbors(j));
    let adjacent = g.has_edge(i, j);
    let inter = common + if adjacent { 2 } else { 0 };
    let union = g.degree(i) + g.degree(j) + 2 - inter;
    Ok(inter as f64 / union as f64)
}

fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn norm(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

struct LinkGraphBuilder {
    source: Arc<Graph>,
    pairs: Vec<(u32, u32)>,
    pair_index: HashMap<(u32, u32), u32>,
    adj: Vec<Vec<(u32, f64)>>,
}

impl LinkGraphBuilder {
    fn new(source: Arc<Graph>) -> Self {
        let pairs: Vec<(u32, u32)> = source.edges().collect();
        let pair_index = pairs
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u32))
            .collect();
        let adj = vec![Vec::new(); pairs.len()];
        LinkGraphBuilder {
            source,
            pairs,
            pair_index,
            adj,
        }
    }

    fn connect(&mut self, a: u32, b: u32, w: f64) {
        self.adj[a as usize].push((b, w));
        self.adj[b as usize].push((a, w));
    }

    fn finish(mut self, mode: LinkMode) -> LinkGraph {
        let mut edge_count = 0;
        for list in self.adj.iter_mut() {
            list.sort_unstable_by_key(|&(id, _)| id);
            edge_count += list.len();
        }
        LinkGraph {
            source: self.source,
            pairs: self.pairs,
            pair_index: self.pair_index,
            adj: self.adj,
            edge_count: edge_count / 2,
            mode,
        }
    }
}

/// Build the link-skein graph: for each edge `{u, v}` and each common
/// neighbor `w`, the links `{u, w}` and `{v, w}` are connected and carry
/// the similarity of `u` and `v`. A triangle-free graph yields an
/// edgeless link graph.
pub fn build_link_skein(source: Arc<Graph>) -> LinkGraph {
    let g = source.clone();
    let mut b = LinkGraphBuilder::new(source);
    for (u, v) in g.edges() {
        let common = sorted_intersection(g.neighbors(u), g.neighbors(v));
        if common.is_empty() {
            continue;
        }
        let sim = closed_neighborhood_similarity(&g, u, v).expect("distinct endpoints");
        for w in common {
            let a = b.pair_index[&norm(u, w)];
            let c = b.pair_index[&norm(v, w)];
            b.connect(a, c, sim);
        }
    }
    b.finish(LinkMode::Skein)
}

/// Build the link-space graph: links adjacent whenever they share an
/// endpoint, weighted by the similarity of the two non-shared endpoints.
pub fn build_link_space(source: Arc<Graph>) -> LinkGraph {
    let g = source.clone();
    let mut b = LinkGraphBuilder::new(source);
    for x in 0..g.node_count() as u32 {
        let nbrs = g.neighbors(x);
        for (i, &p) in nbrs.iter().enumerate() {
            let lp = b.pair_index[&norm(x, p)];
            for &q in &nbrs[i + 1..] {
                let lq = b.pair_index[&norm(x, q)];
                let sim = closed_neighborhood_similarity(&g, p, q).expect("distinct endpoints");
                b.connect(lp, lq, sim);
            }
        }
    }
    b.finish(LinkMode::Space)
}

impl LinkGraph {
    /// Raw constructor from an explicit weighted link adjacency. Link
    /// nodes are the edges of `source`; `edges` holds `(a, b, w)` with
    /// link node ids and weights in (0, 1]. Intended for synthetic and
    /// deserialized graphs; mode-specific structural invariants are the
    /// caller's responsibility.
    pub fn from_parts(source: Arc<Graph>, edges: &[(u32, u32, f64)], mode: LinkMode) -> Result<LinkGraph> {
        let mut b = LinkGraphBuilder::new(source);
        let n = b.pairs.len() as u32;
        let mut seen: HashSet<(u32, u32)> = HashSet::new();
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::Construction(format!(
                    "link edge ({u},{v}) out of range for {n} link nodes"
                )));
            }
            if u == v {
                return Err(Error::Construction(format!("self-adjacent link node {u}")));
            }
            if !(w > 0.0 && w <= 1.0) {
                return Err(Error::Construction(format!("weight {w} outside (0, 1]")));
            }
            if !seen.insert(norm(u, v)) {
                return Err(Error::Construction(format!("duplicate link edge ({u},{v})")));
            }
            b.connect(u, v, w);
        }
        Ok(b.finish(mode))
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn mode(&self) -> LinkMode {
        self.mode
    }

    pub fn link_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Endpoint pair `(i, j)` with `i < j` of a link node.
    pub fn pair(&self, id: u32) -> (u32, u32) {
        self.pairs[id as usize]
    }

    /// Link node id of the original edge `{u, v}`, if it exists.
    pub fn link_id(&self, u: u32, v: u32) -> Option<u32> {
        self.pair_index.get(&norm(u, v)).copied()
    }

    /// Sorted `(neighbor, weight)` adjacency of a link node.
    pub fn neighbors(&self, id: u32) -> &[(u32, f64)] {
        &self.adj[id as usize]
    }

    pub fn weight(&self, a: u32, b: u32) -> Option<f64> {
        self.adj[a as usize]
            .binary_search_by_key(&b, |&(id, _)| id)
            .ok()
            .map(|i| self.adj[a as usize][i].1)
    }

    /// Maximum edge weight, 0 for an edgeless graph.
    pub fn max_edge_weight(&self) -> f64 {
        self.adj
            .iter()
            .flat_map(|l| l.iter().map(|&(_, w)| w))
            .fold(0.0, f64::max)
    }

    /// Induced edges among `nodes` (sorted link ids) as `(a, b, w)` with
    /// `a < b`, in ascending order. Cost is proportional to the adjacency
    /// of the subset, not the whole link graph.
    pub(crate) fn induced_edges(&self, nodes: &[u32]) -> Vec<(u32, u32, f64)> {
        let member: HashSet<u32> = nodes.iter().copied().collect();
        let mut out = Vec::new();
        for &a in nodes {
            for &(b, w) in &self.adj[a as usize] {
                if b > a && member.contains(&b) {
                    out.push((a, b, w));
                }
            }
        }
        out
    }

    pub(crate) fn membership(&self, nodes: &[u32]) -> Vec<bool> {
        let mut member = vec![false; self.link_count()];
        for &v in nodes {
            member[v as usize] = true;
        }
        member
    }

    /// Connected components of the induced sub-link-graph, ordered by
    /// smallest link id, each sorted.
    pub(crate) fn components(&self, nodes: &[u32]) -> Vec<Vec<u32>> {
        let member: HashSet<u32> = nodes.iter().copied().collect();
        let mut seen: HashSet<u32> = HashSet::with_capacity(nodes.len());
        let mut out = Vec::new();
        for &root in nodes {
            if seen.contains(&root) {
                continue;
            }
            seen.insert(root);
            let mut comp = vec![root];
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(u, _) in &self.adj[v as usize] {
                    if member.contains(&u) && !seen.contains(&u) {
                        seen.insert(u);
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Text serialization: header `mode node_count edge_count`, then one
    /// line per link-graph edge using external labels, weights with six
    /// decimals.
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {} {}", self.mode.as_str(), self.link_count(), self.edge_count())?;
        let g = self.source.as_ref();
        for a in 0..self.link_count() as u32 {
            let (i, j) = self.pair(a);
            for &(b, weight) in self.neighbors(a) {
                if b < a {
                    continue;
                }
                let (k, l) = self.pair(b);
                writeln!(
                    w,
                    "{},{} {},{} {:.6}",
                    g.label(i),
                    g.label(j),
                    g.label(k),
                    g.label(l),
                    weight
                )?;
            }
        }
        Ok(())
    }
}

/// A set of link nodes of one link graph: the unit candidate solution.
#[derive(Debug, Clone)]
pub struct LinkSubgraph {
    lg: Arc<LinkGraph>,
    nodes: Vec<u32>,
}

impl LinkSubgraph {
    pub fn new(lg: Arc<LinkGraph>, nodes: impl IntoIterator<Item = u32>) -> Result<LinkSubgraph> {
        let mut nodes: Vec<u32> = nodes.into_iter().collect();
        nodes.sort_unstable();
        nodes.dedup();
        let n = lg.link_count() as u32;
        if let Some(&bad) = nodes.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidLinkNode(bad));
        }
        Ok(LinkSubgraph { lg, nodes })
    }

    pub fn link_graph(&self) -> &Arc<LinkGraph> {
        &self.lg
    }

    pub fn nodes(&self) -> &[u32] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Translate back to the original graph: the union of the endpoint
    /// pairs of the member links.
    pub fn restore(&self) -> Result<NodeSet> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self
            .nodes
            .iter()
            .flat_map(|&id| {
                let (i, j) = self.lg.pair(id);
                [i, j]
            })
            .collect())
    }

    /// How many member links are incident to each restored node. A node's
    /// occurrence equals its degree in the edge set the subgraph stands for.
    pub fn occurrence_profile(&self) -> Result<BTreeMap<u32, u32>> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut profile = BTreeMap::new();
        for &id in &self.nodes {
            let (i, j) = self.lg.pair(id);
            *profile.entry(i).or_insert(0) += 1;
            *profile.entry(j).or_insert(0) += 1;
        }
        Ok(profile)
    }

    /// Minimum occurrence over the restored nodes. At least `k` certifies
    /// that the restored subgraph meets the minimum-degree constraint.
    pub fn min_occurrence(&self) -> Result<u32> {
        Ok(*self.occurrence_profile()?.values().min().expect("non-empty"))
    }

    /// Whether the restored node set is connected through the edges the
    /// subgraph represents.
    pub fn r_connected(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
        for &id in &self.nodes {
            let (i, j) = self.lg.pair(id);
            adj.entry(i).or_default().push(j);
            adj.entry(j).or_default().push(i);
        }
        let start = self.lg.pair(self.nodes[0]).0;
        let mut seen: HashSet<u32> = HashSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &u in adj.get(&v).into_iter().flatten() {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        Ok(seen.len() == adj.len())
    }
}

/// Mutable view of link-graph edge weights used by the miners: either
/// occurrence discounting (`w / (count + 1)`) or zeroing of already
/// selected edges. With no recorded members it is the identity view.
#[derive(Debug, Clone)]
pub struct EffectiveWeights {
    zeroing: bool,
    counts: HashMap<(u32, u32), u32>,
}

impl EffectiveWeights {
    pub fn occurrence() -> EffectiveWeights {
        EffectiveWeights {
            zeroing: false,
            counts: HashMap::new(),
        }
    }

    pub fn zeroing() -> EffectiveWeights {
        EffectiveWeights {
            zeroing: true,
            counts: HashMap::new(),
        }
    }

    pub fn weight(&self, a: u32, b: u32, base: f64) -> f64 {
        match self.counts.get(&norm(a, b)) {
            None => base,
            Some(_) if self.zeroing => 0.0,
            Some(&c) => base / (c + 1) as f64,
        }
    }

    /// Record the edges induced by an accepted member.
    pub fn record_member(&mut self, lg: &LinkGraph, member: &[u32]) {
        for (a, b, _) in lg.induced_edges(member) {
            *self.counts.entry((a, b)).or_insert(0) += 1;
        }
    }

    /// Total effective weight of the edges induced by `nodes`.
    pub(crate) fn induced_weight(&self, lg: &LinkGraph, nodes: &[u32]) -> f64 {
        lg.induced_edges(nodes)
            .iter()
            .map(|&(a, b, w)| self.weight(a, b, w))
            .sum()
    }
}
