//! Ground-truth generation at desk scale: enumerate every connected
//! minimum-degree-feasible node set and pick the best top-t combination,
//! either exhaustively or greedily.

use std::sync::Arc;
use std::time::Instant;

use crate::density::{link_density, Solution};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::linkgraph::{build_link_skein, LinkGraph, LinkSubgraph};
use crate::miners::{Diagnostics, MinerOutcome};

#[derive(Debug, Clone)]
pub struct OracleLimits {
    /// Hard cap on the input size; enumeration is exponential.
    pub max_graph_nodes: usize,
    /// Abort once more feasible candidates than this are found.
    pub max_candidates: usize,
    /// Exhaustive top-t combination search up to this many candidates,
    /// greedy beyond it.
    pub exact_combination_limit: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_graph_nodes: 40,
            max_candidates: 5_000_000,
            exact_combination_limit: 200,
        }
    }
}

impl OracleLimits {
    fn validate(&self, g: &Graph) -> Result<()> {
        if self.max_graph_nodes > 63 {
            return Err(Error::InvalidConfig(
                "max_graph_nodes cannot exceed 63 (bitmask enumeration)".into(),
            ));
        }
        if g.node_count() > self.max_graph_nodes {
            return Err(Error::GraphTooLarge {
                nodes: g.node_count(),
                limit: self.max_graph_nodes,
            });
        }
        Ok(())
    }
}

/// All connected node sets whose induced subgraph has minimum degree at
/// least `k`, in deterministic order (size, then lexicographic ids).
///
/// Any feasible set lies inside the k-core, so enumeration runs on the
/// core only; within it, connected subsets are enumerated without
/// degree-based pruning (feasibility is not monotone under extension).
pub fn enumerate_feasible_subgraphs(
    g: &Graph,
    k: u32,
    limits: &OracleLimits,
) -> Result<Vec<NodeSet>> {
    limits.validate(g)?;
    let core = g.k_core(k);
    let mut universe: u64 = 0;
    for &v in core.iter() {
        universe |= 1 << v;
    }
    let adj: Vec<u64> = (0..g.node_count() as u32)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u64, |mask, &u| mask | (1 << u))
        })
        .collect();

    let mut found: Vec<u64> = Vec::new();
    let feasible = |mask: u64| -> bool {
        if (mask.count_ones() as u32) < k + 1 {
            return false;
        }
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if ((adj[v] & mask).count_ones() as u32) < k {
                return false;
            }
        }
        true
    };

    for root in 0..g.node_count() as u32 {
        if universe & (1 << root) == 0 {
            continue;
        }
        // Connected subsets whose minimum id is `root`.
        let allowed = universe & !((1u64 << root) - 1);
        let root_bit = 1u64 << root;
        let start_ext = adj[root as usize] & allowed;
        let start_np = (root_bit | adj[root as usize]) & allowed;
        enumerate_from(
            root_bit,
            start_ext,
            start_np,
            allowed,
            &adj,
            &feasible,
            &mut found,
            limits.max_candidates,
        )?;
    }

    let mut out: Vec<NodeSet> = found
        .into_iter()
        .map(|mask| {
            NodeSet::from_sorted(
                (0..64u32)
                    .filter(|&v| mask & (1 << v) != 0)
                    .collect::<Vec<u32>>(),
            )
        })
        .collect();
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.as_slice().cmp(b.as_slice()))
    });
    Ok(out)
}

/// Branching enumeration of connected supersets of `set`: extension
/// candidates are processed lowest-id first; once a candidate is skipped
/// it stays excluded in that subtree, so each subset appears exactly once.
#[allow(clippy::too_many_arguments)]
fn enumerate_from(
    set: u64,
    ext: u64,
    visited: u64,
    allowed: u64,
    adj: &[u64],
    feasible: &dyn Fn(u64) -> bool,
    found: &mut Vec<u64>,
    max_candidates: usize,
) -> Result<()> {
    if feasible(set) {
        if found.len() >= max_candidates {
            return Err(Error::CandidateOverflow {
                limit: max_candidates,
                found: found.len(),
            });
        }
        found.push(set);
    }
    let mut remaining = ext;
    while remaining != 0 {
        let u = remaining.trailing_zeros() as usize;
        let u_bit = 1u64 << u;
        remaining &= !u_bit;
        let fresh = adj[u] & allowed & !visited;
        enumerate_from(
            set | u_bit,
            remaining | fresh,
            visited | u_bit | fresh,
            allowed,
            adj,
            feasible,
            found,
            max_candidates,
        )?;
    }
    Ok(())
}

/// Best top-t selection over the feasible candidates: exhaustive over all
/// t-multisubsets when the candidate list is small enough, greedy
/// marginal-gain otherwise. Candidates are mapped to link subgraphs over
/// the full edge set of their induced subgraph.
pub fn exact_top_t(
    g: &Arc<Graph>,
    k: u32,
    t: usize,
    limits: &OracleLimits,
) -> Result<MinerOutcome> {
    let started = Instant::now();
    let candidates = enumerate_feasible_subgraphs(g, k, limits)?;
    if candidates.is_empty() {
        return Err(Error::Infeasible {
            k,
            max_coreness: g.max_coreness(),
        });
    }
    let lg = Arc::new(build_link_skein(g.clone()));
    let link_sets: Vec<Vec<u32>> = candidates
        .iter()
        .map(|s| induced_link_set(&lg, s))
        .collect();

    let chosen: Vec<usize> = if candidates.len() <= limits.exact_combination_limit {
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut pick = vec![0usize; t];
        multiset_search(&lg, &link_sets, t, 0, 0, &mut pick, &mut best);
        best.expect("at least one combination").1
    } else {
        greedy_top_t(&lg, &link_sets, t)
    };

    // Exact duplicates contribute nothing beyond their first copy.
    let mut members: Vec<usize> = Vec::new();
    for idx in chosen {
        if !members.contains(&idx) {
            members.push(idx);
        }
    }
    let mut solution = Solution::new(lg.clone());
    for &idx in &members {
        solution.push(LinkSubgraph::new(lg.clone(), link_sets[idx].iter().copied())?)?;
    }
    let member_gamma: Vec<f64> = (0..solution.len())
        .map(|i| solution.member_contribution(i))
        .collect();
    Ok(MinerOutcome {
        complete: solution.len() == t,
        diagnostics: Diagnostics {
            member_gamma,
            outer_iterations: t,
            mining_time: started.elapsed(),
        },
        solution,
    })
}

/// Link nodes of every edge of the subgraph induced by `s`.
fn induced_link_set(lg: &LinkGraph, s: &NodeSet) -> Vec<u32> {
    let g = lg.source();
    let mut out = Vec::new();
    for &u in s.iter() {
        for &v in g.neighbors(u) {
            if v > u && s.contains(v) {
                out.push(lg.link_id(u, v).expect("edge of the source graph"));
            }
        }
    }
    out.sort_unstable();
    out
}

fn gamma_of(lg: &Arc<LinkGraph>, link_sets: &[Vec<u32>], pick: &[usize]) -> f64 {
    let mut sol = Solution::new(lg.clone());
    for &idx in pick {
        sol.push(LinkSubgraph::new(lg.clone(), link_sets[idx].iter().copied()).expect("valid"))
            .expect("non-empty");
    }
    link_density(&sol).expect("non-empty members")
}

/// All multisets of `t` candidate indices, kept non-decreasing.
fn multiset_search(
    lg: &Arc<LinkGraph>,
    link_sets: &[Vec<u32>],
    t: usize,
    depth: usize,
    from: usize,
    pick: &mut Vec<usize>,
    best: &mut Option<(f64, Vec<usize>)>,
) {
    if depth == t {
        let gamma = gamma_of(lg, link_sets, pick);
        if best.as_ref().is_none_or(|(g, _)| gamma > *g) {
            *best = Some((gamma, pick.clone()));
        }
        return;
    }
    for idx in from..link_sets.len() {
        pick[depth] = idx;
        multiset_search(lg, link_sets, t, depth + 1, idx, pick, best);
    }
}

fn greedy_top_t(lg: &Arc<LinkGraph>, link_sets: &[Vec<u32>], t: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for _ in 0..t {
        let mut best_idx = 0usize;
        let mut best_gamma = f64::MIN;
        for idx in 0..link_sets.len() {
            chosen.push(idx);
            let gamma = gamma_of(lg, link_sets, &chosen);
            chosen.pop();
            if gamma > best_gamma {
                best_gamma = gamma;
                best_idx = idx;
            }
        }
        chosen.push(best_idx);
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::miners::{pa_mine, MinerConfig};

    fn arc(text: &str) -> Arc<Graph> {
        Arc::new(Graph::parse(text).unwrap())
    }

    #[test]
    fn triangle_has_one_feasible_set() {
        let g = arc("1 2\n2 3\n3 1");
        let sets = enumerate_feasible_subgraphs(&g, 2, &OracleLimits::default()).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn bowtie_has_three_feasible_sets() {
        let g = arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5");
        let sets = enumerate_feasible_subgraphs(&g, 2, &OracleLimits::default()).unwrap();
        assert_eq!(sets.len(), 3);
        assert_eq!(sets[0].len(), 3);
        assert_eq!(sets[1].len(), 3);
        assert_eq!(sets[2].len(), 5);
    }

    #[test]
    fn enumeration_matches_naive_bitmask() {
        let g = arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5\n2 4\n1 5");
        for k in 1..=3 {
            let fast = enumerate_feasible_subgraphs(&g, k, &OracleLimits::default()).unwrap();
            let naive = naive_enumeration(&g, k);
            assert_eq!(fast.len(), naive.len(), "k={k}");
            for (a, b) in fast.iter().zip(naive.iter()) {
                assert_eq!(a.as_slice(), b.as_slice(), "k={k}");
            }
        }
    }

    #[test]
    fn every_enumerated_set_is_feasible_and_connected() {
        let g = arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5\n2 4");
        for set in enumerate_feasible_subgraphs(&g, 2, &OracleLimits::default()).unwrap() {
            assert!(g.min_degree(&set).unwrap() >= 2);
            assert_eq!(g.connected_components(&set).len(), 1);
        }
    }

    #[test]
    fn overflow_aborts_with_partial_count() {
        let g = arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5");
        let limits = OracleLimits {
            max_candidates: 2,
            ..OracleLimits::default()
        };
        match enumerate_feasible_subgraphs(&g, 2, &limits) {
            Err(Error::CandidateOverflow { limit, found }) => {
                assert_eq!(limit, 2);
                assert_eq!(found, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn oversized_graph_is_rejected() {
        let edges: Vec<(u32, u32)> = (0..50).map(|i| (i, (i + 1) % 50)).collect();
        let g = Graph::from_edges(50, &edges).unwrap();
        assert!(matches!(
            enumerate_feasible_subgraphs(&g, 2, &OracleLimits::default()),
            Err(Error::GraphTooLarge { nodes: 50, .. })
        ));
    }

    #[test]
    fn exact_top_t_triangle() {
        let g = arc("1 2\n2 3\n3 1");
        let outcome = exact_top_t(&g, 2, 1, &OracleLimits::default()).unwrap();
        assert!(outcome.complete);
        assert!((outcome.link_density() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exact_top_t_bowtie_prefers_disjoint_triangles() {
        let g = arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5");
        let outcome = exact_top_t(&g, 2, 2, &OracleLimits::default()).unwrap();
        assert!(outcome.complete);
        let gamma = outcome.link_density();
        assert!((gamma - 4.4 / 3.0).abs() < 1e-9, "got {gamma}");
        for member in outcome.solution.members() {
            assert_eq!(member.len(), 3);
        }
    }

    #[test]
    fn exact_top_t_errors_without_candidates() {
        let g = arc("1 2\n2 3\n3 4");
        assert!(matches!(
            exact_top_t(&g, 2, 1, &OracleLimits::default()),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn oracle_dominates_miners_on_small_instances() {
        let g = arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5");
        let oracle = exact_top_t(&g, 2, 2, &OracleLimits::default()).unwrap();
        let pa = pa_mine(&g, &MinerConfig::new(2, 2)).unwrap();
        assert!(oracle.link_density() + 1e-9 >= pa.link_density());
    }

    /// All 2^n subsets filtered on connectivity and minimum degree.
    fn naive_enumeration(g: &Graph, k: u32) -> Vec<NodeSet> {
        let n = g.node_count();
        let mut out = Vec::new();
        for mask in 1u64..(1 << n) {
            let set: NodeSet = (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect();
            if set.len() < (k + 1) as usize {
                continue;
            }
            if g.connected_components(&set).len() != 1 {
                continue;
            }
            if g.min_degree(&set).unwrap() >= k {
                out.push(set);
            }
        }
        out.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.as_slice().cmp(b.as_slice()))
        });
        out
    }
}
