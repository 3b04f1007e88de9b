// Temporary probe of the Karate numbers; deleted before finalizing.

use std::sync::Arc;

use ocsm::miners::{apa_mine, pa_mine, sea_mine, ExpansionStrategy, MinerConfig};
use ocsm::oracle::{enumerate_feasible_subgraphs, exact_top_t, OracleLimits};
use ocsm::Graph;

fn karate() -> Arc<Graph> {
    let text = include_str!("data/karate.tsv");
    Arc::new(Graph::parse(text).unwrap())
}

#[test]
fn probe_karate() {
    let g = karate();
    println!("nodes={} edges={}", g.node_count(), g.edge_count());
    println!("max coreness={}", g.max_coreness());

    let start = std::time::Instant::now();
    let limits = OracleLimits::default();
    let at3 = enumerate_feasible_subgraphs(&g, 3, &limits).unwrap();
    let at4 = enumerate_feasible_subgraphs(&g, 4, &limits).unwrap();
    println!("candidates k=3: {}", at3.len());
    println!("candidates k=4: {}", at4.len());
    println!("enumeration took {:?}", start.elapsed());

    let start = std::time::Instant::now();
    let oracle = exact_top_t(&g, 3, 4, &limits).unwrap();
    println!(
        "oracle greedy gamma={} complete={} ({:?})",
        oracle.link_density(),
        oracle.complete,
        start.elapsed()
    );

    let cfg = MinerConfig::new(3, 4);
    let pa = pa_mine(&g, &cfg).unwrap();
    println!("pa gamma={} members={} complete={}", pa.link_density(), pa.solution.len(), pa.complete);
    let apa = apa_mine(&g, &cfg).unwrap();
    println!("apa gamma={} members={} complete={}", apa.link_density(), apa.solution.len(), apa.complete);
    let sea_lg = sea_mine(&g, &cfg).unwrap();
    println!("sea(lg) gamma={} members={} complete={}", sea_lg.link_density(), sea_lg.solution.len(), sea_lg.complete);
    let sea_li = sea_mine(&g, &cfg.clone().with_strategy(ExpansionStrategy::Li)).unwrap();
    println!("sea(li) gamma={} members={} complete={}", sea_li.link_density(), sea_li.solution.len(), sea_li.complete);

    for (i, m) in sea_lg.solution.members().iter().enumerate() {
        let r = m.restore().unwrap();
        println!("sea member {i}: {:?}", r.sorted_labels(&g));
    }
}

#[test]
fn probe_apa_chain() {
    use ocsm::{build_link_skein, EffectiveWeights, LinkSubgraph};
    let g = karate();
    let lg = Arc::new(build_link_skein(g.clone()));
    let core = g.k_core(3);
    let working: Vec<u32> = (0..lg.link_count() as u32)
        .filter(|&id| {
            let (i, j) = lg.pair(id);
            core.contains(i) && core.contains(j)
        })
        .collect();
    println!("core size={} core links={}", core.len(), working.len());
    // PA pipeline by hand
    let outcome = pa_mine(&g, &MinerConfig::new(3, 10)).unwrap();
    for (i, m) in outcome.solution.members().iter().enumerate() {
        println!("pa member {i}: links={} nodes={:?}", m.len(), m.restore().unwrap().sorted_labels(&g));
        // try deleting each link node and re-peel, see survivor sizes
        let h = m.nodes().to_vec();
        let mut best_after = 0usize;
        for &drop in &h {
            let shrunk: Vec<u32> = h.iter().copied().filter(|&v| v != drop).collect();
            let sub = LinkSubgraph::new(lg.clone(), shrunk).unwrap();
            let peeled = ocsm::miners::peel_to_feasible(&sub, 3);
            best_after = best_after.max(peeled.len());
        }
        println!("  best survivor size over all single deletions: {best_after}");
        let ew = EffectiveWeights::occurrence();
        let _ = ew;
    }
}

#[test]
fn probe_free_rider() {
    use ocsm::density::free_rider_gap;
    use ocsm::flow::goldberg_densest;
    use ocsm::{build_link_skein, build_link_space, EffectiveWeights, LinkSubgraph};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut pairs = 0usize;
    let mut violations = 0usize;
    let mut worst: f64 = 0.0;
    'outer: for trial in 0..200 {
        let n = rng.random_range(6..=25u32);
        let p = rng.random_range(0.15..0.5f64);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        let g = Arc::new(Graph::from_edges(n, &edges).unwrap());
        let space = Arc::new(build_link_space(g.clone()));
        let skein = Arc::new(build_link_skein(g.clone()));
        let all: Vec<u32> = (0..space.link_count() as u32).collect();
        let opt = goldberg_densest(&space, &all, &EffectiveWeights::occurrence()).unwrap();
        let opt = LinkSubgraph::new(skein.clone(), opt.nodes().iter().copied()).unwrap();

        for _ in 0..10 {
            // random connected link subgraph of the skein (fallback: random subset)
            let m = space.link_count() as u32;
            let size = rng.random_range(1..=m.min(10));
            let start = rng.random_range(0..m);
            let mut cur = vec![start];
            let mut member = vec![false; m as usize];
            member[start as usize] = true;
            while (cur.len() as u32) < size {
                let frontier: Vec<u32> = cur
                    .iter()
                    .flat_map(|&v| skein.neighbors(v).iter().map(|&(u, _)| u))
                    .filter(|&u| !member[u as usize])
                    .collect();
                if frontier.is_empty() {
                    break;
                }
                let pick = frontier[rng.random_range(0..frontier.len())];
                member[pick as usize] = true;
                cur.push(pick);
            }
            let c = LinkSubgraph::new(skein.clone(), cur).unwrap();
            let (fd, gd) = free_rider_gap(&space, &skein, &c, &opt);
            pairs += 1;
            if fd + 1e-9 < gd {
                violations += 1;
                worst = worst.max(gd - fd);
                if violations <= 3 {
                    println!("violation at trial {trial}: fd={fd} gd={gd} c={:?}", c.nodes());
                }
            }
        }
        if pairs >= 1500 { break 'outer; }
    }
    println!("pairs={pairs} violations={violations} worst={worst}");
}
