use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use kneser_core::alternating::{ex_alt_fixed, ex_alt_min, AltMode, EdgeOrdering};
use kneser_core::cuts::{cut_decomp, cut_r, turan_ex};
use kneser_core::forest::{
    forest_property_criteria, rainbow_cycle_condition, verify_forest_property_exhaustive,
    verify_forest_property_sampled,
};
use kneser_core::graph::parse_decomposition;
use kneser_core::harness::{
    completed_keys, families_crosscheck, gap_table, records_to_jsonl, render_gap_table, run_campaign,
    verify_theorem_with, CampaignConfig, KnownFamily, TheoremOptions,
};
use kneser_core::kneser::{build_kneser_capped, chromatic_number_capped, clique_number, DEFAULT_EXACT_CAP, DEFAULT_VERTEX_CAP};
use kneser_core::sigma::{build_sigma, DegradationPolicy};
use kneser_core::{Budget, Decomposition, FamilyDescriptor, Graph};

/// Tree Kneser graphs, cut numbers and alternating Turán numbers.
///
/// GRAPH is an edge-list file ("n m" then one "u v" per line) or one of
/// K<n>, C<n>, P<n> (path on n vertices), S<n> (star with n leaves),
/// M<k> (k disjoint edges).
#[derive(Parser)]
#[command(name = "kneser", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit per solver call.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Ordering search for ex-alt.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    /// Kneser vertex cap.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Block,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic number (and optionally clique number) of KG(G, 𝒢, ℱ).
    KneserChi {
        graph: String,
        /// trees:T, matching:K or path:D.
        #[arg(long, default_value = "trees:0")]
        family: String,
        /// Parts file (one line of edge indices per part), or "trivial" /
        /// "singletons".
        #[arg(long, default_value = "trivial")]
        decomp: String,
        /// Also compute the clique number.
        #[arg(long)]
        clique: bool,
    },
    /// cut_r(G), or cut_i(G, 𝒢) when --index is given.
    Cut {
        graph: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, default_value = "trivial")]
        decomp: String,
    },
    /// Generalized Turán number ex(G, 𝒢, ℱ).
    Ex {
        graph: String,
        #[arg(long, default_value = "trees:0")]
        family: String,
        #[arg(long, default_value = "trivial")]
        decomp: String,
    },
    /// Alternating Turán number, minimized per --mode or for a fixed order.
    ExAlt {
        graph: String,
        #[arg(long, default_value = "trees:0")]
        family: String,
        #[arg(long, default_value = "trivial")]
        decomp: String,
        /// File with one edge index per line; evaluates this σ only.
        #[arg(long)]
        order: Option<PathBuf>,
        /// Orderings drawn in sampled mode.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Build the block-structured ordering σ and report every stage.
    Sigma {
        graph: String,
        #[arg(long, default_value = "trivial")]
        decomp: String,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Policy::BestEffort)]
        policy: Policy,
        /// Write σ here, one edge per line with '#' span annotations.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rainbow-cycle condition, size criteria and the direct check of the
    /// 𝒢-forest property.
    ForestCheck {
        graph: String,
        #[arg(long, default_value = "trivial")]
        decomp: String,
        /// Check this many random block orderings instead of all of them.
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// χ(KG(G, 𝒢, 𝒯_{n−r})) against cut_{r+1}(G, 𝒢).
    VerifyTheorem {
        graph: String,
        #[arg(long, default_value = "trivial")]
        decomp: String,
        #[arg(long, default_value_t = 0)]
        r: usize,
    },
    /// χ of known families: kneser:N,K  schrijver:N,K  circular:N,D.
    Families {
        #[arg(required = true)]
        instances: Vec<String>,
    },
    /// Run a campaign config and write JSON lines.
    Campaign {
        config: PathBuf,
        /// Report file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip instances already in --out and append the rest.
        #[arg(long)]
        resume: bool,
        /// Print the χ-vs-cut gap table to stderr.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Strict,
    BestEffort,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let budget = match cli.budget_ms {
        Some(ms) => Budget::default().with_time_limit(Duration::from_millis(ms)),
        None => Budget::default(),
    };
    match &cli.command {
        Command::KneserChi {
            graph,
            family,
            decomp,
            clique,
        } => {
            let g = load_graph(graph)?;
            let d = load_decomposition(&g, decomp)?;
            let f = load_family(&g, family)?;
            let kg = build_kneser_capped(&g, &d, &f, cli.cap)?;
            let chi = chromatic_number_capped(&kg, budget, DEFAULT_EXACT_CAP);
            let omega = clique.then(|| clique_number(&kg, budget));
            if cli.json {
                print_json(&json!({
                    "kneser_vertices": kg.vertex_count(),
                    "kneser_edges": kg.edge_count(),
                    "chi": chi,
                    "omega": omega,
                }));
            } else {
                println!("Kneser graph: {} vertices, {} edges", kg.vertex_count(), kg.edge_count());
                println!("chi {}", interval(chi.lower, chi.upper));
                if let Some(w) = omega {
                    println!("omega {}", interval(w.lower, w.upper));
                }
            }
        }
        Command::Cut { graph, r, index, decomp } => {
            let g = load_graph(graph)?;
            match index {
                Some(i) => {
                    let d = load_decomposition(&g, decomp)?;
                    let c = cut_decomp(&g, &d, *i, budget)?;
                    if cli.json {
                        print_json(&c);
                    } else {
                        println!("cut_{i}(G, 𝒢) {}", interval(c.lower, c.upper));
                    }
                }
                None => {
                    let c = cut_r(&g, *r)?;
                    if cli.json {
                        print_json(&c);
                    } else {
                        println!("cut_{r}(G) = {}", c.value);
                        println!("side {:?}", c.side);
                    }
                }
            }
        }
        Command::Ex { graph, family, decomp } => {
            let g = load_graph(graph)?;
            let d = load_decomposition(&g, decomp)?;
            let f = load_family(&g, family)?;
            let ex = turan_ex(&g, &d, &f, budget);
            if cli.json {
                print_json(&ex);
            } else {
                println!("ex {}", interval(ex.value, ex.upper));
                println!("witness {:?}", ex.witness.to_vec());
            }
        }
        Command::ExAlt {
            graph,
            family,
            decomp,
            order,
            samples,
        } => {
            let g = load_graph(graph)?;
            let d = load_decomposition(&g, decomp)?;
            let f = load_family(&g, family)?;
            match order {
                Some(path) => {
                    let perm = read_order(path)?;
                    let sigma = EdgeOrdering::new(perm)?;
                    let res = ex_alt_fixed(&g, &d, &f, &sigma, budget);
                    if cli.json {
                        print_json(&json!({"result": res, "letters": res.coloring.to_letters(&sigma)}));
                    } else {
                        println!("ex_alt(σ) {}", interval(res.value, res.upper));
                        println!("coloring {}", res.coloring.to_letters(&sigma));
                    }
                }
                None => {
                    let mode = match cli.mode {
                        Mode::Exhaustive => AltMode::Exhaustive,
                        Mode::Block => AltMode::BlockStructured,
                        Mode::Sampled => AltMode::Sampled {
                            count: *samples,
                            seed: cli.seed,
                        },
                    };
                    let res = ex_alt_min(&g, &d, &f, mode, budget)?;
                    if cli.json {
                        print_json(&res);
                    } else {
                        let tag = if res.exact { "=" } else { "<=" };
                        println!("ex_alt {tag} {} ({}, {} orderings)", res.value, res.mode, res.orderings_examined);
                        println!("ordering {:?}", res.ordering.perm());
                        println!("coloring {}", res.coloring.to_letters(&res.ordering));
                    }
                }
            }
        }
        Command::Sigma {
            graph,
            decomp,
            r,
            policy,
            out,
        } => {
            let g = load_graph(graph)?;
            let d = load_decomposition(&g, decomp)?;
            let policy = match policy {
                Policy::Strict => DegradationPolicy::Strict,
                Policy::BestEffort => DegradationPolicy::BestEffort,
            };
            let report = build_sigma(&g, &d, *r, cli.seed, policy)?;
            if let (Some(path), Some(sigma)) = (out, &report.ordering) {
                fs::write(path, sigma.to_text()).with_context(|| format!("writing {}", path.display()))?;
            }
            if cli.json {
                print_json(&report);
            } else {
                println!("l target {}, used {}", report.l_target, report.l);
                for s in &report.stages {
                    let mark = if s.succeeded { "ok  " } else { "MISS" };
                    println!("{mark} {:<22} {:>6} / {:<6} {}", s.stage, s.achieved, s.target, s.note);
                }
                println!("σ {}", if report.ordering.is_some() { "emitted" } else { "not emitted" });
            }
        }
        Command::ForestCheck { graph, decomp, sampled } => {
            let g = load_graph(graph)?;
            let d = load_decomposition(&g, decomp)?;
            let rainbow = rainbow_cycle_condition(&g, &d);
            let criterion = forest_property_criteria(&g, &d);
            let direct = match sampled {
                Some(count) => verify_forest_property_sampled(&g, &d, *count, cli.seed, budget),
                None => verify_forest_property_exhaustive(&g, &d, budget),
            };
            if cli.json {
                print_json(&json!({
                    "rainbow_cycles": rainbow.checks.len(),
                    "rainbow_condition": rainbow.holds,
                    "rainbow_witness": rainbow.witness,
                    "criterion": criterion,
                    "direct": direct.as_ref().ok(),
                    "direct_error": direct.as_ref().err().map(ToString::to_string),
                }));
            } else {
                println!("rainbow cycles: {}", rainbow.checks.len());
                println!("rainbow-cycle condition: {}", if rainbow.holds { "holds" } else { "fails" });
                if let Some(w) = &rainbow.witness {
                    println!("  failing cycle through vertices {:?}", w.vertices);
                }
                match criterion {
                    Some(c) => println!("size criterion {} holds ({c:?})", c.index()),
                    None => println!("no size criterion holds"),
                }
                match direct {
                    Ok(v) => println!(
                        "forest property: {} ({} orderings, {} colorings{})",
                        if v.holds { "holds" } else { "FAILS" },
                        v.orderings_examined,
                        v.colorings_examined,
                        if v.sampled { ", sampled" } else { "" }
                    ),
                    Err(e) => println!("forest property: not checked: {e}"),
                }
            }
        }
        Command::VerifyTheorem { graph, decomp, r } => {
            let g = load_graph(graph)?;
            let d = load_decomposition(&g, decomp)?;
            let opts = TheoremOptions {
                vertex_cap: cli.cap,
                ..TheoremOptions::default()
            };
            let rec = verify_theorem_with(&g, &d, *r, budget, &opts)?;
            if cli.json {
                print_json(&rec);
            } else {
                println!("chi {}", interval(rec.chi.lower, rec.chi.upper));
                println!("cut_{} {}", r + 1, interval(rec.cut.lower, rec.cut.upper));
                println!("equal {:?}", rec.equal);
                println!(
                    "chi <= cut via the cut witness: {}",
                    if rec.upper_bound_holds { "confirmed" } else { "NOT confirmed" }
                );
            }
        }
        Command::Families { instances } => {
            let selection = instances
                .iter()
                .map(|s| KnownFamily::parse(s).with_context(|| format!("cannot parse family instance {s:?}")))
                .collect::<Result<Vec<_>>>()?;
            let recs = families_crosscheck(&selection, cli.cap, budget);
            if cli.json {
                print_json(&recs);
            } else {
                for r in recs {
                    let chi = r.chi.as_ref().map_or("-".into(), |c| interval(c.lower, c.upper));
                    let note = r.note.unwrap_or_default();
                    println!("{:<16} vertices {:<6} chi {:<8} known {} {note}", r.instance.to_string(), r.kneser_vertices, chi, r.known_chi);
                }
            }
        }
        Command::Campaign {
            config,
            out,
            resume,
            table,
        } => {
            let text = fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
            let cfg = CampaignConfig::parse(&text)?;
            let done = match (resume, out) {
                (true, Some(path)) if path.exists() => completed_keys(&fs::read_to_string(path)?),
                (true, None) => bail!("--resume needs --out"),
                _ => BTreeSet::new(),
            };
            let records = run_campaign(&cfg, &done)?;
            let lines = records_to_jsonl(&records);
            match out {
                Some(path) => {
                    let mut existing = if *resume && path.exists() { fs::read_to_string(path)? } else { String::new() };
                    existing.push_str(&lines);
                    fs::write(path, existing).with_context(|| format!("writing {}", path.display()))?;
                }
                None => print!("{lines}"),
            }
            if *table {
                eprint!("{}", render_gap_table(&gap_table(&records)));
            }
        }
    }
    Ok(())
}

fn interval(lower: usize, upper: usize) -> String {
    if lower == upper {
        format!("= {lower}")
    } else {
        format!("in [{lower}, {upper}]")
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn load_graph(spec: &str) -> Result<Graph> {
    if Path::new(spec).exists() {
        let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        return Ok(Graph::parse(&text)?);
    }
    let (kind, size) = spec.split_at(1.min(spec.len()));
    let size: usize = size
        .parse()
        .with_context(|| format!("{spec:?} is neither a file nor one of K<n>, C<n>, P<n>, S<n>, M<k>"))?;
    Ok(match kind {
        "K" => Graph::complete(size),
        "C" if size >= 3 => Graph::cycle(size),
        "C" => bail!("a cycle needs at least 3 vertices"),
        "P" => Graph::path(size),
        "S" => Graph::star(size),
        "M" => Graph::matching(size),
        _ => bail!("unknown graph {spec:?}"),
    })
}

fn load_decomposition(g: &Graph, spec: &str) -> Result<Decomposition> {
    if g.edge_count() == 0 {
        bail!("the graph has no edges");
    }
    Ok(match spec {
        "trivial" => Decomposition::trivial(g),
        "singletons" => Decomposition::singletons(g),
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            parse_decomposition(g, &text, true)?
        }
    })
}

/// `trees:0` stands for spanning trees of the host.
fn load_family(g: &Graph, spec: &str) -> Result<FamilyDescriptor> {
    let f: FamilyDescriptor = spec.parse()?;
    Ok(match f {
        FamilyDescriptor::Trees(0) => FamilyDescriptor::Trees(g.vertex_count()),
        other => other,
    })
}

fn read_order(path: &Path) -> Result<Vec<usize>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<usize>().with_context(|| format!("bad edge index {l:?}")))
        .collect()
}
