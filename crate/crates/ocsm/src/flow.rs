//! Max-flow/min-cut solver and the binary-search densest-subgraph
//! routine used to seed the expansion miner.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linkgraph::{EffectiveWeights, LinkGraph, LinkSubgraph};

/// Residual capacities below this are treated as saturated.
const RESIDUAL_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
struct FlowArc {
    to: u32,
    cap: f64,
    rev: u32,
}

/// Directed flow network with real capacities and paired reverse arcs.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<FlowArc>>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Result<FlowNetwork> {
        if source == sink {
            return Err(Error::InvalidConfig("source equals sink".into()));
        }
        if source >= node_count || sink >= node_count {
            return Err(Error::InvalidConfig(format!(
                "source/sink out of range for {node_count} nodes"
            )));
        }
        Ok(FlowNetwork {
            adj: vec![Vec::new(); node_count],
            source,
            sink,
        })
    }

    /// Add a directed arc with the given capacity and a paired reverse
    /// arc of capacity zero.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: f64) {
        debug_assert!(cap >= 0.0);
        let rev_from = self.adj[to].len() as u32;
        let rev_to = self.adj[from].len() as u32;
        self.adj[from].push(FlowArc {
            to: to as u32,
            cap,
            rev: rev_from,
        });
        self.adj[to].push(FlowArc {
            to: from as u32,
            cap: 0.0,
            rev: rev_to,
        });
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Maximum flow via Dinic's algorithm; returns the cut value and the
    /// source-reachable side of the residual network (sorted node ids).
    /// The value equals the total capacity of arcs leaving that side.
    pub fn min_st_cut(mut self) -> (f64, Vec<usize>) {
        let n = self.adj.len();
        let mut total = 0.0;
        let mut level = vec![-1i32; n];
        let mut iter = vec![0usize; n];

        loop {
            // BFS levels over residual arcs.
            level.iter_mut().for_each(|l| *l = -1);
            let mut queue = VecDeque::new();
            level[self.source] = 0;
            queue.push_back(self.source);
            while let Some(v) = queue.pop_front() {
                for arc in &self.adj[v] {
                    if arc.cap > RESIDUAL_EPS && level[arc.to as usize] < 0 {
                        level[arc.to as usize] = level[v] + 1;
                        queue.push_back(arc.to as usize);
                    }
                }
            }
            if level[self.sink] < 0 {
                break;
            }
            iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.push_blocking(self.source, f64::INFINITY, &level, &mut iter);
                if pushed <= 0.0 {
                    break;
                }
                total += pushed;
            }
        }

        // Source side of the residual network.
        let mut side = vec![false; n];
        side[self.source] = true;
        let mut stack = vec![self.source];
        while let Some(v) = stack.pop() {
            for arc in &self.adj[v] {
                if arc.cap > RESIDUAL_EPS && !side[arc.to as usize] {
                    side[arc.to as usize] = true;
                    stack.push(arc.to as usize);
                }
            }
        }
        let side: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
        (total, side)
    }

    fn push_blocking(&mut self, v: usize, limit: f64, level: &[i32], iter: &mut [usize]) -> f64 {
        if v == self.sink {
            return limit;
        }
        while iter[v] < self.adj[v].len() {
            let (to, cap, rev) = {
                let arc = &self.adj[v][iter[v]];
                (arc.to as usize, arc.cap, arc.rev as usize)
            };
            if cap > RESIDUAL_EPS && level[v] + 1 == level[to] {
                let pushed = self.push_blocking(to, limit.min(cap), level, iter);
                if pushed > 0.0 {
                    self.adj[v][iter[v]].cap -= pushed;
                    self.adj[to][rev].cap += pushed;
                    return pushed;
                }
            }
            iter[v] += 1;
        }
        0.0
    }
}

/// Densest subgraph of the link graph restricted to `restrict`, under the
/// given weight view, by binary search over the density guess with one
/// min s-t cut per step (Goldberg's reduction). The maximizer is narrowed
/// to its densest connected component; ties break toward the component
/// holding the smallest link id. Returns a single lowest-id node when no
/// positive-weight edge is available.
pub fn goldberg_densest(
    lg: &Arc<LinkGraph>,
    restrict: &[u32],
    weights: &EffectiveWeights,
) -> Result<LinkSubgraph> {
    if restrict.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut restrict: Vec<u32> = restrict.to_vec();
    restrict.sort_unstable();
    restrict.dedup();

    let r = restrict.len();
    let mut local = vec![u32::MAX; lg.link_count()];
    for (i, &v) in restrict.iter().enumerate() {
        local[v as usize] = i as u32;
    }

    // Induced edges under the effective view, in local indices.
    let mut edges: Vec<(u32, u32, f64)> = Vec::new();
    let mut weighted_degree = vec![0.0f64; r];
    for (a, b, base) in lg.induced_edges(&restrict) {
        let w = weights.weight(a, b, base);
        if w <= 0.0 {
            continue;
        }
        let (la, lb) = (local[a as usize], local[b as usize]);
        edges.push((la, lb, w));
        weighted_degree[la as usize] += w;
        weighted_degree[lb as usize] += w;
    }
    let total_weight: f64 = edges.iter().map(|&(_, _, w)| w).sum();

    if total_weight <= 0.0 {
        // Degenerate input: no usable edge, return the lowest-id node.
        return LinkSubgraph::new(lg.clone(), [restrict[0]]);
    }

    let solve = |guess: f64| -> (f64, Vec<usize>) {
        let s = r;
        let t = r + 1;
        let mut net = FlowNetwork::new(r + 2, s, t).expect("valid network");
        for v in 0..r {
            net.add_arc(s, v, weighted_degree[v]);
            net.add_arc(v, t, 2.0 * guess);
        }
        for &(a, b, w) in &edges {
            net.add_arc(a as usize, b as usize, w);
            net.add_arc(b as usize, a as usize, w);
        }
        net.min_st_cut()
    };

    // A subgraph denser than the guess exists iff the cut drops below 2W.
    let two_w = 2.0 * total_weight;
    let slack = 1e-9 * two_w.max(1.0);
    let tolerance = 1e-9 * total_weight.max(1.0);

    // Seed with the best single edge so a candidate exists even if every
    // binary-search guess overshoots.
    let mut best: Vec<u32> = {
        let &(a, b, _) = edges
            .iter()
            .max_by(|x, y| x.2.total_cmp(&y.2).then_with(|| (y.0, y.1).cmp(&(x.0, x.1))))
            .expect("at least one edge");
        vec![restrict[a as usize], restrict[b as usize]]
    };

    let mut lo = 0.0f64;
    let mut hi = total_weight;
    for _ in 0..64 {
        if hi - lo < tolerance {
            break;
        }
        let guess = 0.5 * (lo + hi);
        let (cut, side) = solve(guess);
        let members: Vec<u32> = side
            .into_iter()
            .filter(|&v| v < r)
            .map(|v| restrict[v])
            .collect();
        if cut < two_w - slack && !members.is_empty() {
            best = members;
            lo = guess;
        } else {
            hi = guess;
        }
    }

    // Keep the densest connected component of the maximizer.
    let comps = lg.components(&best);
    let mut chosen = &comps[0];
    let mut chosen_density = f64::MIN;
    for comp in &comps {
        let density = weights.induced_weight(lg, comp) / comp.len() as f64;
        if density > chosen_density {
            chosen_density = density;
            chosen = comp;
        }
    }
    LinkSubgraph::new(lg.clone(), chosen.iter().copied())
}
