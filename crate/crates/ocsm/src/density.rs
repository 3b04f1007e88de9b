//! The link-density objective with occurrence discounting, plus the
//! evaluation metrics reported alongside mining results.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linkgraph::{LinkGraph, LinkSubgraph};

/// An ordered list of link subgraphs together with the occurrence
/// counter: for every link-graph edge, the number of members whose
/// induced edge set contains it.
#[derive(Debug, Clone)]
pub struct Solution {
    lg: Arc<LinkGraph>,
    members: Vec<LinkSubgraph>,
    occurrence: HashMap<(u32, u32), u32>,
}

impl Solution {
    pub fn new(lg: Arc<LinkGraph>) -> Solution {
        Solution {
            lg,
            members: Vec::new(),
            occurrence: HashMap::new(),
        }
    }

    /// Append a member. It must be non-empty and belong to the same link
    /// graph as the solution.
    pub fn push(&mut self, member: LinkSubgraph) -> Result<()> {
        if member.is_empty() {
            return Err(Error::EmptySet);
        }
        if !Arc::ptr_eq(member.link_graph(), &self.lg) {
            return Err(Error::MismatchedLinkGraph);
        }
        for (a, b, _) in self.lg.induced_edges(member.nodes()) {
            *self.occurrence.entry((a, b)).or_insert(0) += 1;
        }
        self.members.push(member);
        Ok(())
    }

    pub fn link_graph(&self) -> &Arc<LinkGraph> {
        &self.lg
    }

    pub fn members(&self) -> &[LinkSubgraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Occurrence count of the link-graph edge `{a, b}` among the members.
    pub fn occurrence(&self, a: u32, b: u32) -> u32 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.occurrence.get(&key).copied().unwrap_or(0)
    }

    /// The member's term of the link-density sum, with the solution's
    /// final occurrence counts.
    pub fn member_contribution(&self, idx: usize) -> f64 {
        let member = &self.members[idx];
        let sum: f64 = self
            .lg
            .induced_edges(member.nodes())
            .iter()
            .map(|&(a, b, w)| w / self.occurrence(a, b) as f64)
            .sum();
        sum / member.len() as f64
    }
}

/// Link-density of a solution: the sum over members of the induced edge
/// weights, each divided by its occurrence count, divided by the member
/// size. Sharing edges across members is discounted, so nested or
/// duplicated members do not pay off.
pub fn link_density(sol: &Solution) -> Result<f64> {
    let mut total = 0.0;
    for (idx, member) in sol.members().iter().enumerate() {
        if member.is_empty() {
            return Err(Error::EmptySet);
        }
        total += sol.member_contribution(idx);
    }
    Ok(total)
}

/// Plain weighted density of one link subgraph: induced weight sum over
/// node count. For a single-member solution this equals the link-density.
pub fn weighted_subgraph_density(h: &LinkSubgraph) -> Result<f64> {
    if h.is_empty() {
        return Err(Error::EmptySet);
    }
    let sum: f64 = h
        .link_graph()
        .induced_edges(h.nodes())
        .iter()
        .map(|&(_, _, w)| w)
        .sum();
    Ok(sum / h.len() as f64)
}

/// Upper-bound ratio `w_max / density` where `w_max` is the maximum edge
/// weight of the link graph. This mirrors the published bound for the
/// single-subgraph optimum; treat it as a heuristic indicator rather than
/// a proven guarantee.
pub fn ratio_bound(lg: &LinkGraph, result_density: f64) -> Result<f64> {
    if result_density <= 0.0 {
        return Err(Error::DensityNotPositive(result_density));
    }
    Ok(lg.max_edge_weight() / result_density)
}

/// Newman modularity of the node partition induced by the solution: each
/// original node goes to the first member containing it, uncovered nodes
/// become singleton communities.
pub fn modularity_eval(g: &Graph, sol: &Solution) -> f64 {
    let m = g.edge_count();
    if m == 0 {
        return 0.0;
    }
    let n = g.node_count();
    let mut community: Vec<usize> = vec![usize::MAX; n];
    let mut next = 0usize;
    for member in sol.members() {
        let restored = member.restore().expect("members are non-empty");
        let mut used = false;
        for &v in restored.iter() {
            if community[v as usize] == usize::MAX {
                community[v as usize] = next;
                used = true;
            }
        }
        if used {
            next += 1;
        }
    }
    for c in community.iter_mut() {
        if *c == usize::MAX {
            *c = next;
            next += 1;
        }
    }

    let mut internal = vec![0usize; next];
    let mut degree_sum = vec![0usize; next];
    for v in 0..n as u32 {
        degree_sum[community[v as usize]] += g.degree(v);
        for &u in g.neighbors(v) {
            if u > v && community[u as usize] == community[v as usize] {
                internal[community[v as usize]] += 1;
            }
        }
    }
    let m = m as f64;
    (0..next)
        .map(|c| internal[c] as f64 / m - (degree_sum[c] as f64 / (2.0 * m)).powi(2))
        .sum()
}

/// Mean over members of `1 - cut(S) / min(vol(S), vol(V \ S))` for the
/// restored node sets, on the unweighted original graph. Members whose
/// restored set covers the whole graph (or has a zero-volume side) are
/// skipped with a warning.
pub fn conductance_eval(g: &Graph, sol: &Solution) -> f64 {
    let total_volume = 2 * g.edge_count();
    let mut sum = 0.0;
    let mut counted = 0usize;
    for (idx, member) in sol.members().iter().enumerate() {
        let restored = member.restore().expect("members are non-empty");
        if restored.len() == g.node_count() {
            log::warn!("conductance: member {idx} covers the whole graph, skipped");
            continue;
        }
        let mut cut = 0usize;
        let mut volume = 0usize;
        for &v in restored.iter() {
            volume += g.degree(v);
            cut += g
                .neighbors(v)
                .iter()
                .filter(|&&u| !restored.contains(u))
                .count();
        }
        let denom = volume.min(total_volume - volume);
        if denom == 0 {
            log::warn!("conductance: member {idx} has zero volume, skipped");
            continue;
        }
        sum += 1.0 - cut as f64 / denom as f64;
        counted += 1;
    }
    if counted == 0 {
        0.0
    } else {
        sum / counted as f64
    }
}

/// Free-rider comparison of the two transforms: the density change when
/// `opt` is merged into `c`, measured on the link-space graph and on the
/// link-skein graph of the same original edge set. Returns
/// `(space_delta, skein_delta)`.
pub fn free_rider_gap(
    space: &LinkGraph,
    skein: &LinkGraph,
    c: &LinkSubgraph,
    opt: &LinkSubgraph,
) -> (f64, f64) {
    debug_assert_eq!(space.link_count(), skein.link_count());
    let mut union: Vec<u32> = c.nodes().iter().chain(opt.nodes()).copied().collect();
    union.sort_unstable();
    union.dedup();

    let density = |lg: &LinkGraph, nodes: &[u32]| -> f64 {
        if nodes.is_empty() {
            return 0.0;
        }
        let sum: f64 = lg.induced_edges(nodes).iter().map(|&(_, _, w)| w).sum();
        sum / nodes.len() as f64
    };

    let space_delta = density(space, &union) - density(space, c.nodes());
    let skein_delta = density(skein, &union) - density(skein, c.nodes());
    (space_delta, skein_delta)
}

/// Per-solution quality metrics.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub link_density: f64,
    pub member_densities: Vec<f64>,
    pub w_max: f64,
    /// `w_max / link_density`; absent when the density is not positive.
    pub ratio_bound: Option<f64>,
    pub modularity: f64,
    pub mean_conductance: f64,
}

/// Assemble the full report for a solution over `g`.
pub fn evaluate(g: &Graph, sol: &Solution) -> Result<DensityReport> {
    let gamma = link_density(sol)?;
    let member_densities = sol
        .members()
        .iter()
        .map(weighted_subgraph_density)
        .collect::<Result<Vec<f64>>>()?;
    let w_max = sol.link_graph().max_edge_weight();
    let ratio = if gamma > 0.0 { Some(w_max / gamma) } else { None };
    Ok(DensityReport {
        link_density: gamma,
        member_densities,
        w_max,
        ratio_bound: ratio,
        modularity: modularity_eval(g, sol),
        mean_conductance: conductance_eval(g, sol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkgraph::{build_link_skein, build_link_space, LinkMode};

    fn arc(text: &str) -> Arc<Graph> {
        Arc::new(Graph::parse(text).unwrap())
    }

    fn sub(lg: &Arc<LinkGraph>, ids: &[u32]) -> LinkSubgraph {
        LinkSubgraph::new(lg.clone(), ids.iter().copied()).unwrap()
    }

    /// The two-triangle toy with encoded weights 0.5/0.5/1.0 per triangle.
    /// Links: 0 = {1,2}, 1 = {1,6}, 2 = {1,3}, 3 = {2,6}, 4 = {2,3}.
    fn encoded_toy() -> Arc<LinkGraph> {
        let g = arc("1 2\n1 6\n2 6\n1 3\n2 3");
        let edges = [
            (0, 1, 0.5),
            (0, 3, 0.5),
            (1, 3, 1.0),
            (0, 2, 0.5),
            (0, 4, 0.5),
            (2, 4, 1.0),
        ];
        Arc::new(LinkGraph::from_parts(g, &edges, LinkMode::Skein).unwrap())
    }

    /// A graph whose real link-skein weights reproduce the encoded toy:
    /// both triangles at node pair {1,2} carry weights 0.5/0.5/1.0.
    fn toy_graph() -> Arc<Graph> {
        arc("1 2\n1 3\n2 3\n1 6\n2 6\n1 4\n2 4\n3 5\n5 6")
    }

    #[test]
    fn link_density_disjoint_triangle_pair() {
        let lg = encoded_toy();
        let mut sol = Solution::new(lg.clone());
        sol.push(sub(&lg, &[0, 1, 3])).unwrap();
        sol.push(sub(&lg, &[0, 2, 4])).unwrap();
        let gamma = link_density(&sol).unwrap();
        assert!((gamma - 4.0 / 3.0).abs() < 1e-9, "got {gamma}");
    }

    #[test]
    fn link_density_discounts_nested_members() {
        let lg = encoded_toy();
        let mut sol = Solution::new(lg.clone());
        sol.push(sub(&lg, &[0, 1, 3])).unwrap();
        sol.push(sub(&lg, &[0, 1, 2, 3, 4])).unwrap();
        let gamma = link_density(&sol).unwrap();
        assert!((gamma - 0.9333333333).abs() < 1e-9, "got {gamma}");
    }

    #[test]
    fn toy_graph_reproduces_encoded_weights() {
        let g = toy_graph();
        let lg = Arc::new(build_link_skein(g));
        let src = lg.source();
        let lid = |a: &str, b: &str| {
            lg.link_id(src.id_of(a).unwrap(), src.id_of(b).unwrap()).unwrap()
        };
        let v12 = lid("1", "2");
        let v16 = lid("1", "6");
        let v26 = lid("2", "6");
        let v13 = lid("1", "3");
        let v23 = lid("2", "3");
        assert_eq!(lg.weight(v12, v16), Some(0.5));
        assert_eq!(lg.weight(v12, v26), Some(0.5));
        assert_eq!(lg.weight(v16, v26), Some(1.0));
        assert_eq!(lg.weight(v12, v13), Some(0.5));
        assert_eq!(lg.weight(v12, v23), Some(0.5));
        assert_eq!(lg.weight(v13, v23), Some(1.0));

        let mut s1 = Solution::new(lg.clone());
        s1.push(sub(&lg, &[v12, v16, v26])).unwrap();
        s1.push(sub(&lg, &[v12, v13, v23])).unwrap();
        assert!((link_density(&s1).unwrap() - 4.0 / 3.0).abs() < 1e-9);

        let mut s2 = Solution::new(lg.clone());
        s2.push(sub(&lg, &[v12, v16, v26])).unwrap();
        s2.push(sub(&lg, &[v12, v16, v26, v13, v23])).unwrap();
        assert!((link_density(&s2).unwrap() - 0.9333333333).abs() < 1e-9);
    }

    #[test]
    fn diamond_full_skein_density() {
        let lg = Arc::new(build_link_skein(arc("1 2\n1 3\n1 4\n2 3\n2 4")));
        let mut sol = Solution::new(lg.clone());
        sol.push(sub(&lg, &[0, 1, 2, 3, 4])).unwrap();
        assert!((link_density(&sol).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn weighted_density_examples() {
        let tri = Arc::new(build_link_skein(arc("1 2\n2 3\n3 1")));
        assert_eq!(weighted_subgraph_density(&sub(&tri, &[0, 1, 2])).unwrap(), 1.0);
        assert_eq!(weighted_subgraph_density(&sub(&tri, &[0])).unwrap(), 0.0);

        let bow = Arc::new(build_link_skein(arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5")));
        let bg = bow.source();
        let lid = |a: &str, b: &str| {
            bow.link_id(bg.id_of(a).unwrap(), bg.id_of(b).unwrap()).unwrap()
        };
        let tri_a = sub(&bow, &[lid("1", "2"), lid("1", "3"), lid("2", "3")]);
        let d = weighted_subgraph_density(&tri_a).unwrap();
        assert!((d - 2.2 / 3.0).abs() < 1e-9, "got {d}");
    }

    #[test]
    fn single_member_density_matches_weighted_density() {
        let lg = encoded_toy();
        let member = sub(&lg, &[0, 1, 2, 3, 4]);
        let mut sol = Solution::new(lg.clone());
        sol.push(member.clone()).unwrap();
        assert!(
            (link_density(&sol).unwrap() - weighted_subgraph_density(&member).unwrap()).abs()
                < 1e-12
        );
    }

    #[test]
    fn duplicating_a_member_never_doubles_density() {
        let lg = encoded_toy();
        let member = sub(&lg, &[0, 1, 3]);
        let mut single = Solution::new(lg.clone());
        single.push(member.clone()).unwrap();
        let mut double = Solution::new(lg.clone());
        double.push(member.clone()).unwrap();
        double.push(member).unwrap();
        let one = link_density(&single).unwrap();
        let two = link_density(&double).unwrap();
        assert!(two < 2.0 * one);
        assert!((two - one).abs() < 1e-12);
    }

    #[test]
    fn density_is_member_order_invariant() {
        let lg = encoded_toy();
        let a = sub(&lg, &[0, 1, 3]);
        let b = sub(&lg, &[0, 1, 2, 3, 4]);
        let mut fwd = Solution::new(lg.clone());
        fwd.push(a.clone()).unwrap();
        fwd.push(b.clone()).unwrap();
        let mut rev = Solution::new(lg.clone());
        rev.push(b).unwrap();
        rev.push(a).unwrap();
        assert!((link_density(&fwd).unwrap() - link_density(&rev).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn ratio_bound_values() {
        let tri = Arc::new(build_link_skein(arc("1 2\n2 3\n3 1")));
        assert_eq!(ratio_bound(&tri, 1.0).unwrap(), 1.0);
        let dia = Arc::new(build_link_skein(arc("1 2\n1 3\n1 4\n2 3\n2 4")));
        assert_eq!(ratio_bound(&dia, 0.5).unwrap(), 2.0);
        assert!(matches!(
            ratio_bound(&tri, 0.0),
            Err(Error::DensityNotPositive(_))
        ));
    }

    #[test]
    fn modularity_two_disjoint_triangles() {
        let g = arc("1 2\n2 3\n3 1\n4 5\n5 6\n6 4");
        let lg = Arc::new(build_link_skein(g.clone()));
        let mut sol = Solution::new(lg.clone());
        sol.push(sub(&lg, &[0, 1, 2])).unwrap();
        sol.push(sub(&lg, &[3, 4, 5])).unwrap();
        let q = modularity_eval(&g, &sol);
        assert!((q - 0.5).abs() < 1e-12, "got {q}");
    }

    #[test]
    fn modularity_whole_graph_is_zero() {
        let g = arc("1 2\n2 3\n3 1");
        let lg = Arc::new(build_link_skein(g.clone()));
        let mut sol = Solution::new(lg.clone());
        sol.push(sub(&lg, &[0, 1, 2])).unwrap();
        assert!(modularity_eval(&g, &sol).abs() < 1e-12);
    }

    #[test]
    fn modularity_empty_solution_matches_formula_oracle() {
        let g = arc("1 2\n2 3\n3 1\n3 4");
        let lg = Arc::new(build_link_skein(g.clone()));
        let sol = Solution::new(lg);
        let q = modularity_eval(&g, &sol);
        // All-singleton partition: Q = -sum((deg/2m)^2).
        let m = 2.0 * g.edge_count() as f64;
        let expected: f64 = -(0..g.node_count() as u32)
            .map(|v| (g.degree(v) as f64 / m).powi(2))
            .sum::<f64>();
        assert!((q - expected).abs() < 1e-12);
        assert!(q <= 0.0);
    }

    #[test]
    fn conductance_examples() {
        // Isolated triangle next to an extra component: zero cut.
        let g = arc("1 2\n2 3\n3 1\n4 5");
        let lg = Arc::new(build_link_skein(g.clone()));
        let mut sol = Solution::new(lg.clone());
        sol.push(sub(&lg, &[0, 1, 2])).unwrap();
        assert!((conductance_eval(&g, &sol) - 1.0).abs() < 1e-12);

        // Bowtie triangle {1,2,3}: cut 2, vol 8, rest 4.
        let bow = arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5");
        let blg = Arc::new(build_link_skein(bow.clone()));
        let bg = blg.source();
        let lid = |a: &str, b: &str| {
            blg.link_id(bg.id_of(a).unwrap(), bg.id_of(b).unwrap()).unwrap()
        };
        let mut bsol = Solution::new(blg.clone());
        bsol.push(sub(&blg, &[lid("1", "2"), lid("1", "3"), lid("2", "3")])).unwrap();
        assert!((conductance_eval(&bow, &bsol) - 0.5).abs() < 1e-12);

        // Half of a six-cycle: cut 2, both volumes 6.
        let cyc = arc("1 2\n2 3\n3 4\n4 5\n5 6\n6 1");
        let clg = Arc::new(build_link_space(cyc.clone()));
        let cg = clg.source();
        let lid = |a: &str, b: &str| {
            clg.link_id(cg.id_of(a).unwrap(), cg.id_of(b).unwrap()).unwrap()
        };
        let mut csol = Solution::new(clg.clone());
        csol.push(sub(&clg, &[lid("1", "2"), lid("2", "3")])).unwrap();
        let c = conductance_eval(&cyc, &csol);
        assert!((c - (1.0 - 2.0 / 6.0)).abs() < 1e-12, "got {c}");
    }

    #[test]
    fn conductance_skips_full_graph_member() {
        let g = arc("1 2\n2 3\n3 1");
        let lg = Arc::new(build_link_skein(g.clone()));
        let mut sol = Solution::new(lg.clone());
        sol.push(sub(&lg, &[0, 1, 2])).unwrap();
        assert_eq!(conductance_eval(&g, &sol), 0.0);
    }

    #[test]
    fn free_rider_gap_idempotent_union() {
        let g = arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5");
        let space = Arc::new(build_link_space(g.clone()));
        let skein = Arc::new(build_link_skein(g));
        let c = sub(&skein, &[0, 1, 2]);
        let (fd, gd) = free_rider_gap(&space, &skein, &c, &c);
        assert_eq!(fd, 0.0);
        assert_eq!(gd, 0.0);
    }

    #[test]
    fn occurrence_counter_tracks_members() {
        let lg = encoded_toy();
        let mut sol = Solution::new(lg.clone());
        sol.push(sub(&lg, &[0, 1, 3])).unwrap();
        sol.push(sub(&lg, &[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(sol.occurrence(0, 1), 2);
        assert_eq!(sol.occurrence(0, 2), 1);
        assert_eq!(sol.occurrence(2, 4), 1);
        assert_eq!(sol.occurrence(1, 2), 0);
    }
}
