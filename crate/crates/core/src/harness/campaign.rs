//! Grid campaigns over seeded instances, reported as JSON lines.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::generate::{degree_floor, random_decomposition, random_dense_graph, side_condition};
use super::theorem::{sandwich_check, verify_theorem, Equality, TheoremRecord};
use super::HarnessError;
use crate::alternating::{sample_colorings, verify_part_degree_bound};
use crate::budget::Budget;
use crate::graph::{Decomposition, Graph};
use crate::par;
use crate::sigma::{build_sigma, DegradationPolicy, StageRecord};

/// A list of integers written as `3`, `[3, 4]` or the inclusive range
/// `"3..5"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum IntList {
    One(u64),
    Many(Vec<u64>),
    Range(String),
}

impl IntList {
    fn values(&self) -> Result<Vec<u64>, HarnessError> {
        match self {
            IntList::One(x) => Ok(vec![*x]),
            IntList::Many(xs) => Ok(xs.clone()),
            IntList::Range(s) => {
                let bad = || HarnessError::Config(format!("bad range {s:?}; expected \"a..b\" (inclusive)"));
                let (a, b) = s.split_once("..").ok_or_else(bad)?;
                let b = b.trim_start_matches('=');
                let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                Ok((a..=b).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum FloatList {
    One(f64),
    Many(Vec<f64>),
}

impl FloatList {
    fn values(&self) -> Vec<f64> {
        match self {
            FloatList::One(x) => vec![*x],
            FloatList::Many(xs) => xs.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Theorem,
    Sandwich,
    Sigma,
}

impl Task {
    fn name(self) -> &'static str {
        match self {
            Task::Theorem => "theorem",
            Task::Sandwich => "sandwich",
            Task::Sigma => "sigma",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default = "default_tasks")]
    pub tasks: Vec<Task>,
    pub n: IntList,
    #[serde(default = "default_r")]
    pub r: IntList,
    /// Minimum-degree fraction of the host; values at or above
    /// `(n − 1)/n` give `K_n`.
    #[serde(default = "default_delta")]
    pub delta: FloatList,
    /// Number of parts; `1` is the one-part decomposition.
    #[serde(default = "default_k")]
    pub k: IntList,
}

fn default_tasks() -> Vec<Task> {
    vec![Task::Theorem]
}
fn default_r() -> IntList {
    IntList::One(0)
}
fn default_delta() -> FloatList {
    FloatList::One(1.0)
}
fn default_k() -> IntList {
    IntList::One(1)
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default = "default_seeds")]
    pub seeds: IntList,
    /// Per-instance search-node limit; deterministic, unlike `budget_ms`.
    #[serde(default = "default_nodes")]
    pub budget_nodes: u64,
    /// Per-instance time limit.
    pub budget_ms: Option<u64>,
    /// Add wall-clock times to records, which makes reports differ between
    /// runs.
    #[serde(default)]
    pub timing: bool,
    /// Colorings sampled per σ for the degree bound.
    #[serde(default = "default_samples")]
    pub sigma_samples: usize,
    #[serde(default)]
    pub grid: Vec<Grid>,
}

fn default_seeds() -> IntList {
    IntList::One(0)
}
fn default_nodes() -> u64 {
    2_000_000
}
fn default_samples() -> usize {
    200
}

impl CampaignConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }
}

/// One grid point.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct InstanceSpec {
    pub task: Task,
    pub n: usize,
    pub r: usize,
    pub delta: f64,
    pub k: usize,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn key(&self) -> String {
        format!(
            "{}/n={}/r={}/delta={:.3}/k={}/seed={}",
            self.task.name(),
            self.n,
            self.r,
            self.delta,
            self.k,
            self.seed
        )
    }
}

/// Instances of `config` in key order, duplicates removed.
pub fn expand_grid(config: &CampaignConfig) -> Result<Vec<InstanceSpec>, HarnessError> {
    let seeds = config.seeds.values()?;
    let mut out = Vec::new();
    for grid in &config.grid {
        let (ns, rs, ks, deltas) = (grid.n.values()?, grid.r.values()?, grid.k.values()?, grid.delta.values());
        for &task in &grid.tasks {
            for &n in &ns {
                for &r in &rs {
                    for &delta in &deltas {
                        for &k in &ks {
                            for &seed in &seeds {
                                out.push(InstanceSpec {
                                    task,
                                    n: n as usize,
                                    r: r as usize,
                                    delta,
                                    k: k as usize,
                                    seed,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    out.dedup_by(|a, b| a.key() == b.key());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaSummary {
    pub l_target: u64,
    pub l: usize,
    pub emitted: bool,
    pub stages: Vec<StageRecord>,
    pub colorings_sampled: usize,
    /// Sampled colorings breaking `2·max(red, blue) <= deg_{G_k} + 7`.
    pub degree_bound_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignRecord {
    pub key: String,
    #[serde(flatten)]
    pub spec: InstanceSpec,
    pub m: Option<usize>,
    pub min_degree: Option<usize>,
    /// Size condition on the three smallest parts (or `k <= 2`).
    pub side_condition: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<super::theorem::SandwichRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// The host for `(n, delta, seed)`: `K_n` when the degree floor reaches
/// `n − 1`, otherwise a seeded random graph with that floor.
pub fn campaign_graph(n: usize, delta: f64, seed: u64) -> Result<Graph, HarnessError> {
    if n < 2 {
        return Err(HarnessError::InfeasibleFloor { n, need: 1 });
    }
    if degree_floor(n, delta) >= n - 1 {
        Ok(Graph::complete(n))
    } else {
        random_dense_graph(n, delta, seed)
    }
}

fn run_instance(spec: InstanceSpec, budget: Budget, samples: usize) -> CampaignRecord {
    let mut rec = CampaignRecord {
        key: spec.key(),
        spec,
        m: None,
        min_degree: None,
        side_condition: None,
        theorem: None,
        sandwich: None,
        sigma: None,
        error: None,
        elapsed_ms: None,
    };
    let outcome = (|| -> Result<(), HarnessError> {
        let g = campaign_graph(spec.n, spec.delta, spec.seed)?;
        rec.m = Some(g.edge_count());
        rec.min_degree = Some(g.min_degree());
        let d = if spec.k <= 1 {
            Decomposition::trivial(&g)
        } else {
            random_decomposition(&g, spec.k, spec.seed)?
        };
        rec.side_condition = Some(side_condition(&d));
        match spec.task {
            Task::Theorem => rec.theorem = Some(verify_theorem(&g, &d, spec.r, budget)?),
            Task::Sandwich => {
                let t = spec.n.checked_sub(spec.r).filter(|&t| t >= 2).ok_or(HarnessError::TreeTooSmall {
                    n: spec.n,
                    r: spec.r,
                })?;
                rec.sandwich = Some(sandwich_check(&g, &d, t, budget)?);
            }
            Task::Sigma => {
                let report = build_sigma(&g, &d, spec.r, spec.seed, DegradationPolicy::BestEffort)?;
                let gk = d.part(d.len() - 1);
                let (sampled, violations) = match &report.ordering {
                    Some(sigma) => {
                        let cs = sample_colorings(sigma, samples, spec.seed);
                        let bad = cs.iter().filter(|c| !verify_part_degree_bound(&g, gk, c, 7)).count();
                        (cs.len(), bad)
                    }
                    None => (0, 0),
                };
                rec.sigma = Some(SigmaSummary {
                    l_target: report.l_target,
                    l: report.l,
                    emitted: report.ordering.is_some(),
                    stages: report.stages,
                    colorings_sampled: sampled,
                    degree_bound_violations: violations,
                });
            }
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        rec.error = Some(e.to_string());
    }
    rec
}

/// Run every instance not in `done`, concurrently, returning records in
/// key order.
pub fn run_campaign(config: &CampaignConfig, done: &BTreeSet<String>) -> Result<Vec<CampaignRecord>, HarnessError> {
    let specs: Vec<InstanceSpec> = expand_grid(config)?
        .into_iter()
        .filter(|s| !done.contains(&s.key()))
        .collect();
    let budget = match config.budget_ms {
        Some(ms) => Budget::nodes(config.budget_nodes).with_time_limit(std::time::Duration::from_millis(ms)),
        None => Budget::nodes(config.budget_nodes),
    };
    let timing = config.timing;
    let samples = config.sigma_samples;
    Ok(par::map(&specs, |&spec| {
        let start = Instant::now();
        let mut rec = run_instance(spec, budget, samples);
        if timing {
            rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        rec
    }))
}

/// Keys already present in an earlier report.
pub fn completed_keys(report: &str) -> BTreeSet<String> {
    report
        .lines()
        .filter_map(|line| serde_json::from_str::<serde_json::Value>(line).ok())
        .filter_map(|v| v.get("key").and_then(|k| k.as_str()).map(str::to_owned))
        .collect()
}

/// One JSON object per line.
pub fn records_to_jsonl(records: &[CampaignRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
        .collect()
}

/// Theorem records grouped by `(n, r, delta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub n: usize,
    pub r: usize,
    pub delta: f64,
    pub instances: usize,
    pub exact: usize,
    pub equal: usize,
    /// Mean of `cut − χ` over exact instances.
    pub mean_gap: Option<f64>,
    pub max_gap: Option<usize>,
    /// Instances where the coloring from the cut witness confirmed
    /// `χ <= cut`.
    pub upper_bound_confirmed: usize,
}

pub fn gap_table(records: &[CampaignRecord]) -> Vec<GapRow> {
    let mut rows: Vec<GapRow> = Vec::new();
    for rec in records {
        let Some(th) = &rec.theorem else { continue };
        let s = rec.spec;
        let at = rows.iter().position(|row| row.n == s.n && row.r == s.r && row.delta == s.delta);
        let row = match at {
            Some(i) => &mut rows[i],
            None => {
                rows.push(GapRow {
                    n: s.n,
                    r: s.r,
                    delta: s.delta,
                    instances: 0,
                    exact: 0,
                    equal: 0,
                    mean_gap: None,
                    max_gap: None,
                    upper_bound_confirmed: 0,
                });
                rows.last_mut().expect("just pushed")
            }
        };
        row.instances += 1;
        row.upper_bound_confirmed += th.upper_bound_holds as usize;
        row.equal += (th.equal == Equality::Yes) as usize;
        if th.chi.exact && th.cut.exact {
            let gap = th.cut.upper.saturating_sub(th.chi.upper);
            let prev = row.mean_gap.unwrap_or(0.0) * row.exact as f64;
            row.exact += 1;
            row.mean_gap = Some((prev + gap as f64) / row.exact as f64);
            row.max_gap = Some(row.max_gap.map_or(gap, |g| g.max(gap)));
        }
    }
    rows.sort_by(|a, b| (a.n, a.r).cmp(&(b.n, b.r)).then(a.delta.total_cmp(&b.delta)));
    rows
}

pub fn render_gap_table(rows: &[GapRow]) -> String {
    let mut out = String::from("n  r  delta  inst  exact  equal  mean_gap  max_gap  chi<=cut\n");
    for r in rows {
        let mean = r.mean_gap.map_or("-".to_string(), |g| format!("{g:.2}"));
        let max = r.max_gap.map_or("-".to_string(), |g| g.to_string());
        out.push_str(&format!(
            "{:<2} {:<2} {:<6.3} {:<5} {:<6} {:<6} {:<9} {:<8} {}/{}\n",
            r.n, r.r, r.delta, r.instances, r.exact, r.equal, mean, max, r.upper_bound_confirmed, r.instances
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_instance_grid() {
        let cfg = CampaignConfig::parse("[[grid]]\nn = \"4..5\"\nr = 0\n").unwrap();
        let recs = run_campaign(&cfg, &BTreeSet::new()).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs.iter().all(|r| r.theorem.is_some() && r.error.is_none()));
        assert_eq!(recs[0].key, "theorem/n=4/r=0/delta=1.000/k=1/seed=0");
    }

    #[test]
    fn empty_grid() {
        let cfg = CampaignConfig::parse("seeds = [1, 2]\n").unwrap();
        assert!(run_campaign(&cfg, &BTreeSet::new()).unwrap().is_empty());
    }

    #[test]
    fn infeasible_r_is_recorded() {
        let cfg = CampaignConfig::parse("[[grid]]\nn = 4\nr = [0, 3]\n").unwrap();
        let recs = run_campaign(&cfg, &BTreeSet::new()).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs[0].error.is_none());
        assert!(recs[1].error.is_some());
    }

    #[test]
    fn malformed_config_names_the_line() {
        let err = CampaignConfig::parse("[[grid]]\nn = 4\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn resume_and_determinism() {
        let cfg = CampaignConfig::parse("seeds = \"0..1\"\n[[grid]]\nn = 5\ndelta = [0.6, 1.0]\n").unwrap();
        let all = run_campaign(&cfg, &BTreeSet::new()).unwrap();
        let text = records_to_jsonl(&all);
        assert_eq!(text, records_to_jsonl(&run_campaign(&cfg, &BTreeSet::new()).unwrap()));
        let done = completed_keys(&text[..text.find('\n').unwrap() + 1]);
        assert_eq!(run_campaign(&cfg, &done).unwrap().len(), all.len() - 1);
        let table = gap_table(&all);
        assert_eq!(table.len(), 2);
        assert!(table.iter().all(|r| r.upper_bound_confirmed == r.instances));
    }
}
