//! `ocsm`: mine top-t overlapping cohesive subgraphs with a minimum
//! degree guarantee from edge-list files.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use ocsm::density::{evaluate, Solution};
use ocsm::miners::{apa_mine, pa_mine, sea_mine, ExpansionStrategy, MinerConfig, MinerOutcome};
use ocsm::oracle::{enumerate_feasible_subgraphs, exact_top_t, OracleLimits};
use ocsm::report::{MemberReport, OracleReport, RunReport, Timings};
use ocsm::{build_link_skein, build_link_space, Graph, LinkSubgraph};

#[derive(Parser)]
#[command(name = "ocsm", version, about = "Overlapping cohesive subgraph mining")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Pa,
    Apa,
    Sea,
}

impl AlgoArg {
    fn as_str(&self) -> &'static str {
        match self {
            AlgoArg::Pa => "pa",
            AlgoArg::Apa => "apa",
            AlgoArg::Sea => "sea",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Space,
    Skein,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Li,
    Lg,
}

#[derive(Subcommand)]
enum Command {
    /// Build a link graph and write its text serialization.
    Linkgraph {
        #[arg(long, value_enum, default_value = "skein")]
        mode: ModeArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the miners and write a run report.
    Mine {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: usize,
        /// Expansion strategy (sea only).
        #[arg(long, value_enum, default_value = "lg")]
        strategy: StrategyArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Reserved; the algorithms are deterministic.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate node communities from a file (one whitespace-separated
    /// label list per line) under the link-density and quality metrics.
    Eval {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        communities: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate feasible subgraphs and report the exact/greedy top-t.
    Oracle {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 40)]
        max_nodes: usize,
        #[arg(long, default_value_t = 5_000_000)]
        max_candidates: usize,
        #[arg(long, default_value_t = 200)]
        combo_limit: usize,
    },
    /// Replay a k x t config matrix and emit one CSV row per run.
    Bench {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated algorithms.
        #[arg(long, default_value = "pa,apa,sea")]
        algos: String,
        /// Inclusive range, e.g. 3:6.
        #[arg(long, default_value = "3:4")]
        k_range: String,
        /// Inclusive range, e.g. 1:4.
        #[arg(long, default_value = "1:4")]
        t_range: String,
        #[arg(long, value_enum, default_value = "lg")]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let Some(ocsm::Error::Infeasible { k, max_coreness }) =
                err.downcast_ref::<ocsm::Error>()
            {
                eprintln!(
                    "error: no {k}-core exists; the maximum coreness is {max_coreness}, \
                     pick k <= {max_coreness}"
                );
                return ExitCode::from(3);
            }
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_graph(path: &Path) -> anyhow::Result<Arc<Graph>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let graph = Graph::load_edge_list(BufReader::new(file))
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(Arc::new(graph))
}

fn write_output(out: &Option<PathBuf>, content: &str, summary: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            w.write_all(content.as_bytes())?;
            w.flush()?;
            println!("{summary}");
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Linkgraph { mode, input, out } => {
            let g = load_graph(&input)?;
            let started = Instant::now();
            let lg = match mode {
                ModeArg::Skein => build_link_skein(g),
                ModeArg::Space => build_link_space(g),
            };
            let elapsed = started.elapsed();
            let mut buf = Vec::new();
            lg.write_text(&mut buf)?;
            let text = String::from_utf8(buf).expect("labels are valid utf-8");
            write_output(
                &out,
                &text,
                &format!(
                    "{}: {} link nodes, {} edges ({:.3} ms)",
                    lg.mode().as_str(),
                    lg.link_count(),
                    lg.edge_count(),
                    elapsed.as_secs_f64() * 1e3
                ),
            )
        }
        Command::Mine {
            algo,
            k,
            t,
            strategy,
            input,
            out,
            seed: _,
        } => {
            let g = load_graph(&input)?;
            let mut cfg = MinerConfig::new(k, t);
            cfg.strategy = match strategy {
                StrategyArg::Li => ExpansionStrategy::Li,
                StrategyArg::Lg => ExpansionStrategy::Lg,
            };
            let build_start = Instant::now();
            let build_ms = {
                // The miners rebuild the link graph internally; measure a
                // representative build so the report carries the cost.
                let lg = build_link_skein(g.clone());
                let ms = build_start.elapsed().as_secs_f64() * 1e3;
                drop(lg);
                ms
            };
            let outcome = match algo {
                AlgoArg::Pa => pa_mine(&g, &cfg)?,
                AlgoArg::Apa => apa_mine(&g, &cfg)?,
                AlgoArg::Sea => sea_mine(&g, &cfg)?,
            };
            let eval_start = Instant::now();
            let density = evaluate(&g, &outcome.solution)?;
            let members = member_reports(&g, &outcome, k)?;
            let eval_ms = eval_start.elapsed().as_secs_f64() * 1e3;
            let report = RunReport {
                algorithm: algo.as_str().into(),
                k,
                t,
                strategy: matches!(algo, AlgoArg::Sea).then(|| cfg.strategy.as_str().into()),
                mode: "skein".into(),
                input: input.display().to_string(),
                complete: outcome.complete,
                members,
                density: density.clone(),
                timings: Timings {
                    build_ms,
                    mine_ms: outcome.diagnostics.mining_time.as_secs_f64() * 1e3,
                    eval_ms,
                },
            };
            write_output(
                &out,
                &report.to_json(),
                &format!(
                    "{} k={} t={}: link_density={:.6} members={} complete={}",
                    algo.as_str(),
                    k,
                    t,
                    density.link_density,
                    outcome.solution.len(),
                    outcome.complete
                ),
            )
        }
        Command::Eval {
            k,
            input,
            communities,
            out,
        } => {
            let g = load_graph(&input)?;
            let text = std::fs::read_to_string(&communities)
                .with_context(|| format!("reading {}", communities.display()))?;
            let build_start = Instant::now();
            let lg = Arc::new(build_link_skein(g.clone()));
            let build_ms = build_start.elapsed().as_secs_f64() * 1e3;

            let eval_start = Instant::now();
            let mut solution = Solution::new(lg.clone());
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut ids = Vec::new();
                for label in line.split_whitespace() {
                    let id = g
                        .id_of(label)
                        .ok_or_else(|| anyhow!("line {}: unknown node {label}", lineno + 1))?;
                    ids.push(id);
                }
                let set: ocsm::NodeSet = ids.into_iter().collect();
                let mut links = Vec::new();
                for &u in set.iter() {
                    for &v in g.neighbors(u) {
                        if v > u && set.contains(v) {
                            links.push(lg.link_id(u, v).expect("edge exists"));
                        }
                    }
                }
                if links.is_empty() {
                    return Err(anyhow!(
                        "line {}: community induces no edges",
                        lineno + 1
                    ));
                }
                solution.push(LinkSubgraph::new(lg.clone(), links)?)?;
            }
            if solution.is_empty() {
                return Err(anyhow!("no communities found in {}", communities.display()));
            }
            let density = evaluate(&g, &solution)?;
            let members = solution_reports(&g, &solution, k);
            let eval_ms = eval_start.elapsed().as_secs_f64() * 1e3;
            let report = RunReport {
                algorithm: "eval".into(),
                k,
                t: solution.len(),
                strategy: None,
                mode: "skein".into(),
                input: input.display().to_string(),
                complete: true,
                members,
                density: density.clone(),
                timings: Timings {
                    build_ms,
                    mine_ms: 0.0,
                    eval_ms,
                },
            };
            write_output(
                &out,
                &report.to_json(),
                &format!(
                    "eval k={}: link_density={:.6} members={}",
                    k,
                    density.link_density,
                    solution.len()
                ),
            )
        }
        Command::Oracle {
            k,
            t,
            input,
            out,
            max_nodes,
            max_candidates,
            combo_limit,
        } => {
            let g = load_graph(&input)?;
            let limits = OracleLimits {
                max_graph_nodes: max_nodes,
                max_candidates,
                exact_combination_limit: combo_limit,
            };
            let mine_start = Instant::now();
            let at_k = enumerate_feasible_subgraphs(&g, k, &limits)?;
            let at_k_plus_1 = enumerate_feasible_subgraphs(&g, k + 1, &limits)?;
            let outcome = exact_top_t(&g, k, t, &limits)?;
            let mine_ms = mine_start.elapsed().as_secs_f64() * 1e3;
            let method = if at_k.len() <= limits.exact_combination_limit {
                "exhaustive"
            } else {
                "greedy"
            };
            let eval_start = Instant::now();
            let density = evaluate(&g, &outcome.solution)?;
            let members = member_reports(&g, &outcome, k)?;
            let eval_ms = eval_start.elapsed().as_secs_f64() * 1e3;
            let report = OracleReport {
                k,
                t,
                input: input.display().to_string(),
                candidates_min_degree_k: at_k.len(),
                candidates_min_degree_k_plus_1: at_k_plus_1.len(),
                method: method.into(),
                complete: outcome.complete,
                members,
                density: density.clone(),
                timings: Timings {
                    build_ms: 0.0,
                    mine_ms,
                    eval_ms,
                },
            };
            write_output(
                &out,
                &report.to_json(),
                &format!(
                    "oracle k={} t={} ({}): link_density={:.6} candidates={}",
                    k,
                    t,
                    method,
                    density.link_density,
                    at_k.len()
                ),
            )
        }
        Command::Bench {
            input,
            algos,
            k_range,
            t_range,
            strategy,
            out,
        } => {
            let g = load_graph(&input)?;
            let algos: Vec<AlgoArg> = algos
                .split(',')
                .map(|a| match a.trim() {
                    "pa" => Ok(AlgoArg::Pa),
                    "apa" => Ok(AlgoArg::Apa),
                    "sea" => Ok(AlgoArg::Sea),
                    other => Err(anyhow!("unknown algorithm {other:?}")),
                })
                .collect::<anyhow::Result<_>>()?;
            let (k_lo, k_hi) = parse_range(&k_range)?;
            let (t_lo, t_hi) = parse_range(&t_range)?;
            let mut rows = String::from("algo,k,t,status,gamma,members,build_ms,mine_ms,eval_ms\n");
            for &algo in &algos {
                for k in k_lo..=k_hi {
                    for t in t_lo..=t_hi {
                        let mut cfg = MinerConfig::new(k as u32, t);
                        cfg.strategy = match strategy {
                            StrategyArg::Li => ExpansionStrategy::Li,
                            StrategyArg::Lg => ExpansionStrategy::Lg,
                        };
                        let build_start = Instant::now();
                        let lg = build_link_skein(g.clone());
                        let build_ms = build_start.elapsed().as_secs_f64() * 1e3;
                        drop(lg);
                        let result = match algo {
                            AlgoArg::Pa => pa_mine(&g, &cfg),
                            AlgoArg::Apa => apa_mine(&g, &cfg),
                            AlgoArg::Sea => sea_mine(&g, &cfg),
                        };
                        match result {
                            Ok(outcome) => {
                                let eval_start = Instant::now();
                                let gamma = outcome.link_density();
                                let eval_ms = eval_start.elapsed().as_secs_f64() * 1e3;
                                rows.push_str(&format!(
                                    "{},{},{},ok,{:.6},{},{:.3},{:.3},{:.3}\n",
                                    algo.as_str(),
                                    k,
                                    t,
                                    gamma,
                                    outcome.solution.len(),
                                    build_ms,
                                    outcome.diagnostics.mining_time.as_secs_f64() * 1e3,
                                    eval_ms
                                ));
                            }
                            Err(ocsm::Error::Infeasible { .. }) => {
                                rows.push_str(&format!(
                                    "{},{},{},infeasible,,0,{:.3},,\n",
                                    algo.as_str(),
                                    k,
                                    t,
                                    build_ms
                                ));
                            }
                            Err(err) => return Err(err.into()),
                        }
                    }
                }
            }
            write_output(&out, &rows, &format!("bench: {} rows", rows.lines().count() - 1))
        }
    }
}

fn parse_range(spec: &str) -> anyhow::Result<(usize, usize)> {
    let (lo, hi) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("range must look like LO:HI, got {spec:?}"))?;
    let lo: usize = lo.parse().context("range start")?;
    let hi: usize = hi.parse().context("range end")?;
    if lo == 0 || hi < lo {
        return Err(anyhow!("invalid range {spec:?}"));
    }
    Ok((lo, hi))
}

/// Independent feasibility recheck of every member before it is emitted.
fn member_reports(g: &Graph, outcome: &MinerOutcome, k: u32) -> anyhow::Result<Vec<MemberReport>> {
    let mut out = Vec::new();
    for (idx, member) in outcome.solution.members().iter().enumerate() {
        let restored = member.restore()?;
        let feasible = member.min_occurrence()? >= k
            && member.r_connected()?
            && g.min_degree(&restored)? >= k;
        if !feasible {
            return Err(anyhow!(
                "internal error: member {idx} failed the feasibility recheck"
            ));
        }
        out.push(MemberReport {
            nodes: restored.sorted_labels(g),
            link_nodes: member.len(),
            gamma_contribution: outcome.diagnostics.member_gamma[idx],
            feasible,
        });
    }
    Ok(out)
}

/// Member rows for user-supplied communities; infeasible ones are
/// reported rather than rejected.
fn solution_reports(g: &Graph, solution: &Solution, k: u32) -> Vec<MemberReport> {
    solution
        .members()
        .iter()
        .enumerate()
        .map(|(idx, member)| {
            let restored = member.restore().expect("non-empty member");
            let feasible = member.min_occurrence().unwrap_or(0) >= k
                && member.r_connected().unwrap_or(false)
                && g.min_degree(&restored).map(|d| d >= k).unwrap_or(false);
            MemberReport {
                nodes: restored.sorted_labels(g),
                link_nodes: member.len(),
                gamma_contribution: solution.member_contribution(idx),
                feasible,
            }
        })
        .collect()
}
