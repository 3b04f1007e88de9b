//! The three mining heuristics: PA (baseline peeling), APA
//! (density-guided peeling), and SEA (seed expansion around max-flow
//! densest subgraphs with zero-reweighting).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::density::{link_density, Solution};
use crate::error::{Error, Result};
use crate::flow::goldberg_densest;
use crate::graph::Graph;
use crate::linkgraph::{build_link_skein, EffectiveWeights, LinkGraph, LinkSubgraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionStrategy {
    /// Add the frontier node with the most connections into the set.
    Li,
    /// Add the frontier node with the largest minimum-occurrence increment.
    Lg,
}

impl ExpansionStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExpansionStrategy::Li => "li",
            ExpansionStrategy::Lg => "lg",
        }
    }
}

/// Mining parameters. `expansion_cap` defaults to the link node count
/// and `max_outer_iterations` to `3 * t` when left unset.
#[derive(Debug, Clone)]
pub struct MinerConfig {
    pub k: u32,
    pub t: usize,
    pub strategy: ExpansionStrategy,
    pub expansion_cap: Option<usize>,
    pub max_outer_iterations: Option<usize>,
}

impl MinerConfig {
    pub fn new(k: u32, t: usize) -> MinerConfig {
        MinerConfig {
            k,
            t,
            strategy: ExpansionStrategy::Lg,
            expansion_cap: None,
            max_outer_iterations: None,
        }
    }

    pub fn with_strategy(mut self, strategy: ExpansionStrategy) -> MinerConfig {
        self.strategy = strategy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if self.t < 1 {
            return Err(Error::InvalidConfig("t must be at least 1".into()));
        }
        if let Some(cap) = self.expansion_cap {
            if cap < self.k as usize + 1 {
                return Err(Error::InvalidConfig(format!(
                    "expansion_cap {cap} is below k + 1"
                )));
            }
        }
        if self.max_outer_iterations == Some(0) {
            return Err(Error::InvalidConfig(
                "max_outer_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn cap(&self, lg: &LinkGraph) -> usize {
        self.expansion_cap.unwrap_or(lg.link_count()).max(1)
    }

    fn outer_limit(&self) -> usize {
        self.max_outer_iterations.unwrap_or(3 * self.t).max(1)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    /// Each member's term of the final link-density sum.
    pub member_gamma: Vec<f64>,
    pub outer_iterations: usize,
    pub mining_time: Duration,
}

/// Result of a mining run. `complete` is false when fewer than `t`
/// members were found.
#[derive(Debug, Clone)]
pub struct MinerOutcome {
    pub solution: Solution,
    pub complete: bool,
    pub diagnostics: Diagnostics,
}

impl MinerOutcome {
    pub fn link_density(&self) -> f64 {
        link_density(&self.solution).unwrap_or(0.0)
    }
}

/// Cascading removal of links incident to under-occurring nodes until the
/// minimum occurrence reaches `k` or nothing is left. The fixed point is
/// unique, so the deletion order does not matter.
pub fn peel_to_feasible(h: &LinkSubgraph, k: u32) -> LinkSubgraph {
    let kept = peel_ids(h.link_graph(), h.nodes(), k);
    LinkSubgraph::new(h.link_graph().clone(), kept).expect("ids stay valid")
}

fn peel_ids(lg: &LinkGraph, nodes: &[u32], k: u32) -> Vec<u32> {
    let mut alive: HashMap<u32, bool> = nodes.iter().map(|&id| (id, true)).collect();
    let mut occurrence: HashMap<u32, u32> = HashMap::new();
    let mut incident: HashMap<u32, Vec<u32>> = HashMap::new();
    for &id in nodes {
        let (i, j) = lg.pair(id);
        *occurrence.entry(i).or_insert(0) += 1;
        *occurrence.entry(j).or_insert(0) += 1;
        incident.entry(i).or_default().push(id);
        incident.entry(j).or_default().push(id);
    }
    let mut queue: Vec<u32> = occurrence
        .iter()
        .filter(|&(_, &c)| c < k)
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = queue.pop() {
        if occurrence.get(&v).copied().unwrap_or(0) >= k {
            continue;
        }
        for &link in incident.get(&v).into_iter().flatten() {
            if !alive[&link] {
                continue;
            }
            alive.insert(link, false);
            let (i, j) = lg.pair(link);
            for endpoint in [i, j] {
                let c = occurrence.get_mut(&endpoint).expect("tracked endpoint");
                *c -= 1;
                if *c < k {
                    queue.push(endpoint);
                }
            }
        }
    }
    let mut kept: Vec<u32> = nodes.iter().copied().filter(|id| alive[id]).collect();
    kept.sort_unstable();
    kept
}

fn min_occurrence_of(lg: &LinkGraph, nodes: &[u32]) -> u32 {
    let mut occurrence: HashMap<u32, u32> = HashMap::new();
    for &id in nodes {
        let (i, j) = lg.pair(id);
        *occurrence.entry(i).or_insert(0) += 1;
        *occurrence.entry(j).or_insert(0) += 1;
    }
    occurrence.values().copied().min().unwrap_or(0)
}

/// Peel a working set and split it into link-connected components,
/// keeping the ones that stay feasible on their own.
fn feasible_components(lg: &LinkGraph, nodes: &[u32], k: u32) -> Vec<Vec<u32>> {
    let peeled = peel_ids(lg, nodes, k);
    if peeled.is_empty() {
        return Vec::new();
    }
    lg.components(&peeled)
        .into_iter()
        .filter(|comp| min_occurrence_of(lg, comp) >= k)
        .collect()
}

/// Split a link set into groups connected through shared original nodes,
/// ordered by smallest link id. Every link incident to a node lands in
/// the same group, so the occurrence profile of a feasible set carries
/// over to each group unchanged: the groups of a feasible set are
/// feasible, and each restores to a connected node set.
fn r_components(lg: &LinkGraph, nodes: &[u32]) -> Vec<Vec<u32>> {
    let mut by_endpoint: HashMap<u32, Vec<u32>> = HashMap::new();
    for &id in nodes {
        let (i, j) = lg.pair(id);
        by_endpoint.entry(i).or_default().push(id);
        by_endpoint.entry(j).or_default().push(id);
    }
    let mut seen: HashMap<u32, bool> = nodes.iter().map(|&id| (id, false)).collect();
    let mut out = Vec::new();
    for &root in nodes {
        if seen[&root] {
            continue;
        }
        seen.insert(root, true);
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(link) = stack.pop() {
            let (i, j) = lg.pair(link);
            for endpoint in [i, j] {
                for &other in &by_endpoint[&endpoint] {
                    if !seen[&other] {
                        seen.insert(other, true);
                        comp.push(other);
                        stack.push(other);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Link nodes whose both endpoints lie in the k-core, or the feasibility
/// error carrying the maximum coreness when the core is empty.
fn core_restricted(g: &Graph, lg: &LinkGraph, k: u32) -> Result<Vec<u32>> {
    let core = g.k_core(k);
    if core.is_empty() {
        return Err(Error::Infeasible {
            k,
            max_coreness: g.max_coreness(),
        });
    }
    Ok((0..lg.link_count() as u32)
        .filter(|&id| {
            let (i, j) = lg.pair(id);
            core.contains(i) && core.contains(j)
        })
        .collect())
}

fn finish_outcome(
    lg: &Arc<LinkGraph>,
    members: Vec<Vec<u32>>,
    t: usize,
    outer_iterations: usize,
    started: Instant,
) -> Result<MinerOutcome> {
    let mut solution = Solution::new(lg.clone());
    for member in members {
        solution.push(LinkSubgraph::new(lg.clone(), member)?)?;
    }
    let member_gamma: Vec<f64> = (0..solution.len())
        .map(|i| solution.member_contribution(i))
        .collect();
    let complete = solution.len() == t;
    Ok(MinerOutcome {
        complete,
        diagnostics: Diagnostics {
            member_gamma,
            outer_iterations,
            mining_time: started.elapsed(),
        },
        solution,
    })
}

/// Baseline peeling: peel each link-connected component of the
/// core-restricted skein down to feasibility and keep the `t` densest
/// surviving components.
pub fn pa_mine(g: &Arc<Graph>, cfg: &MinerConfig) -> Result<MinerOutcome> {
    cfg.validate()?;
    let started = Instant::now();
    let lg = Arc::new(build_link_skein(g.clone()));
    let working = core_restricted(g, &lg, cfg.k)?;
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    for comp in lg.components(&working) {
        candidates.extend(feasible_components(&lg, &comp, cfg.k));
    }
    // Surviving candidates are disjoint; rank by plain weighted density.
    let mut ranked: Vec<(f64, Vec<u32>)> = candidates
        .into_iter()
        .map(|c| {
            let density = EffectiveWeights::occurrence().induced_weight(&lg, &c) / c.len() as f64;
            (density, c)
        })
        .collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1[0].cmp(&b.1[0])));
    let members: Vec<Vec<u32>> = ranked.into_iter().take(cfg.t).map(|(_, c)| c).collect();
    finish_outcome(&lg, members, cfg.t, 1, started)
}

/// Density-guided peeling. Each round picks the feasible component with
/// the highest effective density, peels it node by node (smallest average
/// incident effective weight first, with cascading feasibility repair),
/// and keeps whichever intermediate adds the most link-density to the
/// current solution. Accepted edges are discounted for later rounds.
pub fn apa_mine(g: &Arc<Graph>, cfg: &MinerConfig) -> Result<MinerOutcome> {
    cfg.validate()?;
    let started = Instant::now();
    let lg = Arc::new(build_link_skein(g.clone()));
    let working = core_restricted(g, &lg, cfg.k)?;

    let mut pool: Vec<Vec<u32>> = Vec::new();
    for comp in lg.components(&working) {
        for cand in feasible_components(&lg, &comp, cfg.k) {
            if !pool.contains(&cand) {
                pool.push(cand);
            }
        }
    }

    let mut weights = EffectiveWeights::occurrence();
    let mut accepted: Vec<Vec<u32>> = Vec::new();
    let mut solution = Solution::new(lg.clone());
    let mut outer = 0usize;
    let limit = cfg.outer_limit();

    while accepted.len() < cfg.t && outer < limit {
        outer += 1;
        // Accepted components stay in the pool: with their edges
        // discounted, their peeling chains can still surface dense
        // sub-members. Only the appended member itself is deduplicated.
        let mut ranked: Vec<&Vec<u32>> = pool.iter().collect();
        ranked.sort_by(|a, b| {
            let da = weights.induced_weight(&lg, a) / a.len() as f64;
            let db = weights.induced_weight(&lg, b) / b.len() as f64;
            db.total_cmp(&da).then_with(|| a[0].cmp(&b[0]))
        });
        if ranked.is_empty() {
            break;
        }

        let mut chosen: Option<Vec<u32>> = None;
        let mut fragments: Vec<Vec<u32>> = Vec::new();
        for candidate in ranked {
            let chain = peel_chain(&lg, candidate, cfg.k, &weights, &mut fragments);
            // Earliest recorded intermediate wins ties.
            let mut best: Option<(f64, Vec<u32>)> = None;
            for t_i in chain {
                if accepted.contains(&t_i) {
                    continue;
                }
                let mut trial = solution.clone();
                trial
                    .push(LinkSubgraph::new(lg.clone(), t_i.iter().copied()).expect("valid"))
                    .expect("non-empty member");
                let gamma = link_density(&trial).expect("non-empty members");
                if best.as_ref().is_none_or(|(g, _)| gamma > *g) {
                    best = Some((gamma, t_i));
                }
            }
            if let Some((_, member)) = best {
                chosen = Some(member);
                break;
            }
        }
        for fragment in fragments {
            if !pool.contains(&fragment) && !accepted.contains(&fragment) {
                pool.push(fragment);
            }
        }
        let Some(member) = chosen else { break };
        weights.record_member(&lg, &member);
        solution
            .push(LinkSubgraph::new(lg.clone(), member.iter().copied())?)
            .expect("validated member");
        accepted.push(member);
    }

    finish_outcome(&lg, accepted, cfg.t, outer, started)
}

/// The shrinking chain of intermediates for one candidate: start from the
/// candidate, repeatedly drop the node with the smallest average incident
/// effective weight, re-peel, and continue on the densest surviving
/// component. Split-off feasible components land in `fragments`.
fn peel_chain(
    lg: &LinkGraph,
    candidate: &[u32],
    k: u32,
    weights: &EffectiveWeights,
    fragments: &mut Vec<Vec<u32>>,
) -> Vec<Vec<u32>> {
    let mut chain: Vec<Vec<u32>> = vec![candidate.to_vec()];
    let mut current = candidate.to_vec();
    loop {
        if current.len() <= 1 {
            break;
        }
        // Node with the smallest average incident effective weight.
        let member: HashSet<u32> = current.iter().copied().collect();
        let weakest = current
            .iter()
            .copied()
            .map(|v| {
                let mut sum = 0.0;
                let mut deg = 0usize;
                for &(u, base) in lg.neighbors(v) {
                    if member.contains(&u) {
                        sum += weights.weight(v, u, base);
                        deg += 1;
                    }
                }
                let avg = if deg == 0 { 0.0 } else { sum / deg as f64 };
                (avg, v)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
            .map(|(_, v)| v)
            .expect("non-empty current");

        let shrunk: Vec<u32> = current.iter().copied().filter(|&v| v != weakest).collect();
        let peeled = peel_ids(lg, &shrunk, k);
        if peeled.is_empty() {
            break;
        }
        // The peeled set may fall apart; its R-connected groups inherit
        // feasibility as-is. Continue on the densest group, the others go
        // back to the candidate pool. Groups are ordered by smallest link
        // id, so a strict comparison breaks ties that way.
        let mut survivors = r_components(lg, &peeled);
        debug_assert!(survivors.iter().all(|c| min_occurrence_of(lg, c) >= k));
        let mut best_idx = 0;
        let mut best_density = f64::MIN;
        for (i, comp) in survivors.iter().enumerate() {
            let density = weights.induced_weight(lg, comp) / comp.len() as f64;
            if density > best_density {
                best_density = density;
                best_idx = i;
            }
        }
        let next = survivors.remove(best_idx);
        fragments.extend(survivors);
        chain.push(next.clone());
        current = next;
    }
    chain
}

/// Grow a seed along the link-graph frontier until the minimum occurrence
/// reaches `k`. Returns `None` when the frontier empties or the size cap
/// is hit first. Only nodes from `within` are eligible.
pub fn sea_expand(
    seed: &LinkSubgraph,
    within: &[u32],
    cfg: &MinerConfig,
) -> Option<LinkSubgraph> {
    if seed.is_empty() {
        return None;
    }
    let lg = seed.link_graph();
    let cap = cfg.cap(lg);
    let allowed = lg.membership(within);

    let mut current: Vec<u32> = seed.nodes().to_vec();
    let mut member = lg.membership(&current);
    // Occurrence profile plus a multiset of counts for fast minima.
    let mut occurrence: HashMap<u32, u32> = HashMap::new();
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &id in &current {
        let (i, j) = lg.pair(id);
        for endpoint in [i, j] {
            let c = occurrence.entry(endpoint).or_insert(0);
            if *c > 0 {
                remove_count(&mut counts, *c);
            }
            *c += 1;
            *counts.entry(*c).or_insert(0) += 1;
        }
    }

    loop {
        let beta = *counts.keys().next().expect("non-empty profile");
        if beta >= cfg.k {
            current.sort_unstable();
            return Some(LinkSubgraph::new(lg.clone(), current).expect("valid ids"));
        }
        if current.len() >= cap {
            return None;
        }
        // Frontier: link-graph neighbors of the current set.
        let mut frontier: Vec<u32> = Vec::new();
        let mut in_frontier = vec![false; lg.link_count()];
        for &v in &current {
            for &(u, _) in lg.neighbors(v) {
                if allowed[u as usize] && !member[u as usize] && !in_frontier[u as usize] {
                    in_frontier[u as usize] = true;
                    frontier.push(u);
                }
            }
        }
        if frontier.is_empty() {
            return None;
        }
        frontier.sort_unstable();

        let pick = match cfg.strategy {
            ExpansionStrategy::Li => frontier
                .iter()
                .copied()
                .map(|v| {
                    let connections = lg
                        .neighbors(v)
                        .iter()
                        .filter(|&&(u, _)| member[u as usize])
                        .count();
                    (connections as i64, v)
                })
                .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
                .map(|(_, v)| v),
            ExpansionStrategy::Lg => frontier
                .iter()
                .copied()
                .map(|v| {
                    let (i, j) = lg.pair(v);
                    let beta_after = hypothetical_beta(&occurrence, &counts, i, j);
                    (beta_after as i64 - beta as i64, v)
                })
                .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
                .map(|(_, v)| v),
        }
        .expect("non-empty frontier");

        member[pick as usize] = true;
        current.push(pick);
        let (i, j) = lg.pair(pick);
        for endpoint in [i, j] {
            let c = occurrence.entry(endpoint).or_insert(0);
            if *c > 0 {
                remove_count(&mut counts, *c);
            }
            *c += 1;
            *counts.entry(*c).or_insert(0) += 1;
        }
    }
}

fn remove_count(counts: &mut BTreeMap<u32, usize>, value: u32) {
    match counts.get_mut(&value) {
        Some(n) if *n > 1 => *n -= 1,
        Some(_) => {
            counts.remove(&value);
        }
        None => unreachable!("count multiset out of sync"),
    }
}

/// Minimum occurrence after hypothetically adding a link with endpoints
/// `i` and `j`.
fn hypothetical_beta(
    occurrence: &HashMap<u32, u32>,
    counts: &BTreeMap<u32, usize>,
    i: u32,
    j: u32,
) -> u32 {
    let mut scratch = counts.clone();
    for endpoint in [i, j] {
        let c = occurrence.get(&endpoint).copied().unwrap_or(0);
        if c > 0 {
            remove_count(&mut scratch, c);
        }
        *scratch.entry(c + 1).or_insert(0) += 1;
    }
    *scratch.keys().next().expect("non-empty profile")
}

/// Seed expansion: restrict to the core, then repeatedly seed with the
/// densest subgraph under the current weights, expand it to feasibility,
/// and zero the weights of accepted edges so later seeds move elsewhere.
/// A failed or duplicate expansion removes the seed from the working set.
pub fn sea_mine(g: &Arc<Graph>, cfg: &MinerConfig) -> Result<MinerOutcome> {
    cfg.validate()?;
    let started = Instant::now();
    let lg = Arc::new(build_link_skein(g.clone()));
    let mut working = core_restricted(g, &lg, cfg.k)?;

    let mut weights = EffectiveWeights::zeroing();
    let mut accepted: Vec<Vec<u32>> = Vec::new();
    let mut outer = 0usize;
    let limit = cfg.outer_limit();

    while accepted.len() < cfg.t && !working.is_empty() && outer < limit {
        outer += 1;
        let seed = goldberg_densest(&lg, &working, &weights)?;
        let expanded = sea_expand(&seed, &working, cfg);
        match expanded {
            Some(member) if !accepted.contains(&member.nodes().to_vec()) => {
                weights.record_member(&lg, member.nodes());
                accepted.push(member.nodes().to_vec());
            }
            _ => {
                // Drop the failed seed's links from the working set.
                let seed_member: HashSet<u32> = seed.nodes().iter().copied().collect();
                working.retain(|v| !seed_member.contains(v));
            }
        }
    }

    finish_outcome(&lg, accepted, cfg.t, outer, started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkgraph::build_link_skein;

    fn arc(text: &str) -> Arc<Graph> {
        Arc::new(Graph::parse(text).unwrap())
    }

    fn bowtie() -> Arc<Graph> {
        arc("1 2\n1 3\n2 3\n3 4\n3 5\n4 5")
    }

    fn lid(lg: &LinkGraph, a: &str, b: &str) -> u32 {
        let g = lg.source();
        lg.link_id(g.id_of(a).unwrap(), g.id_of(b).unwrap()).unwrap()
    }

    #[test]
    fn peel_keeps_feasible_triangle() {
        let lg = Arc::new(build_link_skein(arc("1 2\n2 3\n3 1")));
        let h = LinkSubgraph::new(lg, 0..3).unwrap();
        let peeled = peel_to_feasible(&h, 2);
        assert_eq!(peeled.nodes(), h.nodes());
    }

    #[test]
    fn peel_drops_pendant_link() {
        let lg = Arc::new(build_link_skein(arc("1 2\n1 3\n2 3\n3 4")));
        let v34 = lid(&lg, "3", "4");
        let h = LinkSubgraph::new(lg.clone(), 0..4).unwrap();
        let peeled = peel_to_feasible(&h, 2);
        assert_eq!(peeled.len(), 3);
        assert!(!peeled.nodes().contains(&v34));
    }

    #[test]
    fn peel_cascades_to_empty() {
        let lg = Arc::new(build_link_skein(arc("1 2\n3 4")));
        let h = LinkSubgraph::new(lg, 0..2).unwrap();
        let peeled = peel_to_feasible(&h, 2);
        assert!(peeled.is_empty());
    }

    #[test]
    fn pa_two_disjoint_triangles() {
        let g = arc("1 2\n2 3\n3 1\n4 5\n5 6\n6 4");
        let outcome = pa_mine(&g, &MinerConfig::new(2, 2)).unwrap();
        assert!(outcome.complete);
        assert_eq!(outcome.solution.len(), 2);
        assert!((outcome.link_density() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn pa_bowtie() {
        let outcome = pa_mine(&bowtie(), &MinerConfig::new(2, 2)).unwrap();
        assert!(outcome.complete);
        let gamma = outcome.link_density();
        assert!((gamma - 4.4 / 3.0).abs() < 1e-9, "got {gamma}");
    }

    #[test]
    fn pa_path_has_no_core() {
        let g = arc("1 2\n2 3\n3 4");
        let err = pa_mine(&g, &MinerConfig::new(2, 1)).unwrap_err();
        match err {
            Error::Infeasible { k, max_coreness } => {
                assert_eq!(k, 2);
                assert_eq!(max_coreness, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn apa_triangle_single() {
        let g = arc("1 2\n2 3\n3 1");
        let outcome = apa_mine(&g, &MinerConfig::new(2, 1)).unwrap();
        assert!(outcome.complete);
        assert!((outcome.link_density() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn apa_bowtie_finds_both_triangles() {
        let outcome = apa_mine(&bowtie(), &MinerConfig::new(2, 2)).unwrap();
        assert!(outcome.complete);
        let gamma = outcome.link_density();
        assert!((gamma - 4.4 / 3.0).abs() < 1e-9, "got {gamma}");
        for member in outcome.solution.members() {
            assert_eq!(member.len(), 3);
        }
    }

    #[test]
    fn sea_expand_feasible_seed_unchanged() {
        let lg = Arc::new(build_link_skein(arc("1 2\n2 3\n3 1")));
        let seed = LinkSubgraph::new(lg.clone(), 0..3).unwrap();
        let within: Vec<u32> = (0..3).collect();
        let cfg = MinerConfig::new(2, 1);
        let out = sea_expand(&seed, &within, &cfg).unwrap();
        assert_eq!(out.nodes(), seed.nodes());
    }

    #[test]
    fn sea_expand_diamond_li_adds_shared_link() {
        let lg = Arc::new(build_link_skein(arc("1 2\n1 3\n1 4\n2 3\n2 4")));
        let v12 = lid(&lg, "1", "2");
        let v13 = lid(&lg, "1", "3");
        let v23 = lid(&lg, "2", "3");
        let seed = LinkSubgraph::new(lg.clone(), [v13, v23]).unwrap();
        let within: Vec<u32> = (0..5).collect();
        let cfg = MinerConfig::new(2, 1).with_strategy(ExpansionStrategy::Li);
        let out = sea_expand(&seed, &within, &cfg).unwrap();
        let mut expected = vec![v12, v13, v23];
        expected.sort_unstable();
        assert_eq!(out.nodes(), expected.as_slice());
    }

    #[test]
    fn sea_expand_fails_without_frontier() {
        let lg = Arc::new(build_link_skein(arc("1 2\n2 3\n3 4")));
        let seed = LinkSubgraph::new(lg.clone(), [0]).unwrap();
        let within: Vec<u32> = (0..3).collect();
        let cfg = MinerConfig::new(2, 1);
        assert!(sea_expand(&seed, &within, &cfg).is_none());
    }

    #[test]
    fn sea_diamond_single() {
        let g = arc("1 2\n1 3\n1 4\n2 3\n2 4");
        let outcome = sea_mine(&g, &MinerConfig::new(2, 1)).unwrap();
        assert!(outcome.complete);
        assert_eq!(outcome.solution.members()[0].len(), 5);
        assert!((outcome.link_density() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sea_two_disjoint_triangles() {
        let g = arc("1 2\n2 3\n3 1\n4 5\n5 6\n6 4");
        let outcome = sea_mine(&g, &MinerConfig::new(2, 2)).unwrap();
        assert!(outcome.complete);
        assert!((outcome.link_density() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn miners_respect_member_invariants() {
        let g = bowtie();
        let cfg = MinerConfig::new(2, 2);
        for outcome in [
            pa_mine(&g, &cfg).unwrap(),
            apa_mine(&g, &cfg).unwrap(),
            sea_mine(&g, &cfg).unwrap(),
        ] {
            for member in outcome.solution.members() {
                assert!(member.min_occurrence().unwrap() >= 2);
                assert!(member.r_connected().unwrap());
                let restored = member.restore().unwrap();
                assert!(g.min_degree(&restored).unwrap() >= 2);
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(MinerConfig::new(0, 1).validate().is_err());
        assert!(MinerConfig::new(1, 0).validate().is_err());
        let mut cfg = MinerConfig::new(3, 1);
        cfg.expansion_cap = Some(2);
        assert!(cfg.validate().is_err());
        cfg.expansion_cap = Some(4);
        assert!(cfg.validate().is_ok());
    }
}
