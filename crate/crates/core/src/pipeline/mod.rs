//! Staged classification of graphs by `P_q` equality.
//!
//! All graphs start in one class. Each stage computes a key per graph,
//! splits every class by key and drops the singletons. The stages are
//! ordered from cheap to expensive and each is determined by `P_q`, so
//! graphs with equal `P_q` are never separated and the expensive keys are
//! only computed on the few graphs that survive the cheap ones.

mod search;
mod store;

pub use search::{
    potts_classes, search_chromatic_anomalies, search_potts_pairs, search_u_classes, ChromaticAnomaly, PottsPair,
    UClass,
};
pub use store::{read_classes, read_progress, write_classes, write_progress, ClassRecord, Progress, STORE_VERSION};

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::canon::canonical_code;
use crate::graph::invariants::{edge_connectivity, triangle_count};
use crate::graph::Graph;
use crate::homopoly::{hom_poly, Budget};
use crate::specialize::{colour_count, independence_polynomial, ising_direct, matching_polynomial};

/// Rough cost of a stage key, for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostTier {
    Linear,
    Subsets,
    Maps,
}

/// A named key function `Graph -> String`.
#[derive(Clone, Copy)]
pub struct Stage {
    pub name: &'static str,
    pub tier: CostTier,
    key: fn(&Graph) -> Result<String>,
}

impl Stage {
    pub const fn new(name: &'static str, tier: CostTier, key: fn(&Graph) -> Result<String>) -> Stage {
        Stage { name, tier, key }
    }

    pub fn key(&self, g: &Graph) -> Result<String> {
        (self.key)(g)
    }
}

impl fmt::Debug for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Stage")
            .field("name", &self.name)
            .field("tier", &self.tier)
            .finish()
    }
}

/// Stages ending in the `P_q` key for the target order `q`.
#[derive(Clone, Debug)]
pub struct StagePlan {
    pub q: usize,
    pub stages: Vec<Stage>,
}

fn edges_key(g: &Graph) -> Result<String> {
    Ok(g.m().to_string())
}

fn degrees_key(g: &Graph) -> Result<String> {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    Ok(d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn triangles_connectivity_key(g: &Graph) -> Result<String> {
    Ok(format!("{};{}", triangle_count(g), edge_connectivity(g)))
}

fn matching_key(g: &Graph) -> Result<String> {
    Ok(matching_polynomial(g).canonical_text())
}

fn independence_key(g: &Graph) -> Result<String> {
    let a = independence_polynomial(g)?;
    let b = independence_polynomial(&g.complement())?;
    Ok(format!("{a} | {b}"))
}

fn ising_key(g: &Graph) -> Result<String> {
    Ok(ising_direct(g)?.canonical_text())
}

fn p2_key(g: &Graph) -> Result<String> {
    Ok(hom_poly(g, 2, Budget::default())?.canonical_text())
}

fn p3_key(g: &Graph) -> Result<String> {
    Ok(hom_poly(g, 3, Budget::default())?.canonical_text())
}

fn p4_key(g: &Graph) -> Result<String> {
    Ok(hom_poly(g, 4, Budget::default())?.canonical_text())
}

fn colourings3_key(g: &Graph) -> Result<String> {
    Ok(colour_count(g, 3).to_string())
}

fn colourings4_key(g: &Graph) -> Result<String> {
    Ok(colour_count(g, 4).to_string())
}

/// The stage list for `q` in `{2, 3, 4}`: edge count, degree sequence,
/// triangles with edge connectivity, matching polynomial, independence
/// polynomials of the graph and its complement, bivariate Ising, `P_2`;
/// then for `q >= 3` the 3-colouring count and `P_3`, and for `q = 4` the
/// 4-colouring count and `P_4`.
pub fn default_stages(q: usize) -> Result<StagePlan> {
    if !(2..=4).contains(&q) {
        return Err(Error::Order(q));
    }
    let mut stages = vec![
        Stage::new("edges", CostTier::Linear, edges_key),
        Stage::new("degree_sequence", CostTier::Linear, degrees_key),
        Stage::new(
            "triangles_edge_connectivity",
            CostTier::Subsets,
            triangles_connectivity_key,
        ),
        Stage::new("matching", CostTier::Subsets, matching_key),
        Stage::new("independence_pair", CostTier::Subsets, independence_key),
        Stage::new("ising", CostTier::Subsets, ising_key),
        Stage::new("p2", CostTier::Maps, p2_key),
    ];
    if q >= 3 {
        stages.push(Stage::new("colourings_3", CostTier::Maps, colourings3_key));
        stages.push(Stage::new("p3", CostTier::Maps, p3_key));
    }
    if q >= 4 {
        stages.push(Stage::new("colourings_4", CostTier::Maps, colourings4_key));
        stages.push(Stage::new("p4", CostTier::Maps, p4_key));
    }
    Ok(StagePlan { q, stages })
}

/// Graphs that agreed on every stage up to and including `stage`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub stage: String,
    pub members: Vec<Graph>,
    /// Key of the last stage applied.
    pub key: String,
}

impl EquivalenceClass {
    pub fn member_graph6(&self) -> Vec<String> {
        self.members.iter().map(Graph::to_graph6).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageStats {
    pub name: String,
    /// Non-trivial classes left after the stage.
    pub classes: usize,
    /// Graphs in those classes.
    pub graphs: usize,
}

/// Counts from one classification run. Everything here is reproducible
/// bit for bit; elapsed times are kept apart in [`Classification::timings`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub q: usize,
    pub input_graphs: usize,
    pub stages: Vec<StageStats>,
    pub nontrivial_classes: usize,
    /// Class size to number of classes of that size.
    pub class_sizes: BTreeMap<usize, usize>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n = {}, q = {}, graphs = {}", self.n, self.q, self.input_graphs).unwrap();
        writeln!(out, "{:<30}{:>10}{:>10}", "stage", "classes", "graphs").unwrap();
        for s in &self.stages {
            writeln!(out, "{:<30}{:>10}{:>10}", s.name, s.classes, s.graphs).unwrap();
        }
        writeln!(out, "non-trivial classes: {}", self.nontrivial_classes).unwrap();
        let sizes: Vec<String> = self
            .class_sizes
            .iter()
            .map(|(s, c)| format!("{c} of size {s}"))
            .collect();
        if !sizes.is_empty() {
            writeln!(out, "class sizes: {}", sizes.join(", ")).unwrap();
        }
        out
    }
}

/// The smallest `n` among the reports (all for the same `q`) with a
/// non-trivial class.
pub fn smallest_nontrivial_order(reports: &[ClassificationReport]) -> Option<usize> {
    reports.iter().filter(|r| r.nontrivial_classes > 0).map(|r| r.n).min()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub name: String,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub classes: Vec<EquivalenceClass>,
    pub report: ClassificationReport,
    pub timings: Vec<StageTiming>,
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
    /// Directory for the class store, rewritten after every stage.
    pub store: Option<PathBuf>,
    /// Continue from the store instead of starting over, when it holds
    /// progress.
    pub resume: bool,
}

/// Runs `f` on a pool with the requested number of threads.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        builder = builder.num_threads(k.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Keys for `graphs` in input order, computed in parallel.
pub(crate) fn parallel_keys<F>(graphs: &[&Graph], key: F) -> Result<Vec<String>>
where
    F: Fn(&Graph) -> Result<String> + Sync,
{
    graphs.par_iter().map(|g| key(g)).collect()
}

/// Splits `members` by key, keeping groups of two or more in key order.
fn split(members: Vec<Graph>, keys: Vec<String>) -> Vec<(String, Vec<Graph>)> {
    let mut groups: BTreeMap<String, Vec<Graph>> = BTreeMap::new();
    for (g, k) in members.into_iter().zip(keys) {
        groups.entry(k).or_default().push(g);
    }
    groups.into_iter().filter(|(_, v)| v.len() > 1).collect()
}

/// Classifies pairwise non-isomorphic graphs, all on the same number of
/// vertices, through the stages of `plan`.
pub fn classify(graphs: &[Graph], plan: &StagePlan, opts: &ClassifyOptions) -> Result<Classification> {
    if plan.stages.is_empty() {
        return Err(Error::Invalid("no stages".into()));
    }
    with_threads(opts.threads, || classify_in_pool(graphs, plan, opts))?
}

fn classify_in_pool(graphs: &[Graph], plan: &StagePlan, opts: &ClassifyOptions) -> Result<Classification> {
    let n = graphs.first().map_or(0, Graph::n);
    if graphs.iter().any(|g| g.n() != n) {
        return Err(Error::Invalid("input graphs have different vertex counts".into()));
    }
    let names: Vec<String> = plan.stages.iter().map(|s| s.name.to_owned()).collect();
    let mut progress = Progress {
        version: STORE_VERSION,
        n,
        q: plan.q,
        input_graphs: graphs.len(),
        stages: Vec::new(),
    };
    let mut classes: Vec<EquivalenceClass> = if graphs.len() > 1 {
        vec![EquivalenceClass {
            stage: "input".into(),
            members: graphs.to_vec(),
            key: String::new(),
        }]
    } else {
        Vec::new()
    };
    if let (Some(dir), true) = (&opts.store, opts.resume) {
        if let Some(saved) = read_progress(dir)? {
            if saved.n != n || saved.input_graphs != graphs.len() {
                return Err(Error::Invalid(format!(
                    "store holds {} graphs on {} vertices; this run has {} graphs on {n}",
                    saved.input_graphs,
                    saved.n,
                    graphs.len()
                )));
            }
            let done: Vec<&String> = saved.stages.iter().map(|s| &s.name).collect();
            if done.len() > names.len() || done.iter().zip(&names).any(|(a, b)| *a != b) {
                return Err(Error::Invalid("store was written with a different stage list".into()));
            }
            if !done.is_empty() {
                classes = records_to_classes(&read_classes(&dir.join(store::CLASSES_FILE))?, done.len() - 1)?;
            }
            // a lower-q store is a prefix of a higher-q plan
            progress = Progress { q: plan.q, ..saved };
        }
    }
    let mut timings = Vec::new();
    for (index, stage) in plan.stages.iter().enumerate().skip(progress.stages.len()) {
        let start = Instant::now();
        let flat: Vec<&Graph> = classes.iter().flat_map(|c| &c.members).collect();
        let mut keys = parallel_keys(&flat, |g| stage.key(g))?.into_iter();
        let mut next = Vec::new();
        for class in classes {
            let k: Vec<String> = keys.by_ref().take(class.members.len()).collect();
            for (key, members) in split(class.members, k) {
                next.push(EquivalenceClass {
                    stage: stage.name.to_owned(),
                    members,
                    key,
                });
            }
        }
        next.sort_by(|a, b| {
            a.key
                .cmp(&b.key)
                .then_with(|| a.members[0].to_graph6().cmp(&b.members[0].to_graph6()))
        });
        classes = next;
        progress.stages.push(StageStats {
            name: stage.name.to_owned(),
            classes: classes.len(),
            graphs: classes.iter().map(|c| c.members.len()).sum(),
        });
        timings.push(StageTiming {
            name: stage.name.to_owned(),
            seconds: start.elapsed().as_secs_f64(),
        });
        if index + 1 == plan.stages.len() {
            check_final(&classes, stage)?;
        }
        if let Some(dir) = &opts.store {
            std::fs::create_dir_all(dir)?;
            write_classes(&dir.join(store::CLASSES_FILE), &classes_to_records(&classes, index))?;
            write_progress(dir, &progress)?;
        }
    }
    let mut class_sizes = BTreeMap::new();
    for c in &classes {
        *class_sizes.entry(c.members.len()).or_insert(0) += 1;
    }
    let report = ClassificationReport {
        n,
        q: plan.q,
        input_graphs: progress.input_graphs,
        stages: progress.stages,
        nontrivial_classes: classes.len(),
        class_sizes,
    };
    Ok(Classification {
        classes,
        report,
        timings,
    })
}

/// Members of a final class must be pairwise non-isomorphic, and the final
/// key must come out the same when computed again.
fn check_final(classes: &[EquivalenceClass], stage: &Stage) -> Result<()> {
    let results: Vec<Result<()>> = classes
        .par_iter()
        .map(|class| {
            let mut seen: BTreeMap<u128, &Graph> = BTreeMap::new();
            for g in &class.members {
                if let Some(other) = seen.insert(canonical_code(g).0, g) {
                    return Err(Error::DuplicateGraphs(other.to_graph6(), g.to_graph6()));
                }
                if stage.key(g)? != class.key {
                    return Err(Error::Nondeterministic(format!("{} on {}", stage.name, g.to_graph6())));
                }
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect()
}

fn classes_to_records(classes: &[EquivalenceClass], stage_index: usize) -> Vec<ClassRecord> {
    classes
        .iter()
        .map(|c| ClassRecord {
            version: STORE_VERSION,
            stage: c.stage.clone(),
            stage_index,
            key_digest: store::digest(&c.key),
            members: c.member_graph6(),
            polynomial: c.key.clone(),
        })
        .collect()
}

fn records_to_classes(records: &[ClassRecord], stage_index: usize) -> Result<Vec<EquivalenceClass>> {
    records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if r.stage_index != stage_index {
                return Err(Error::CorruptRecord {
                    line: i + 1,
                    msg: format!("stage index {} but progress is at {stage_index}", r.stage_index),
                });
            }
            let members = r
                .members
                .iter()
                .map(|s| s.parse::<Graph>())
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::CorruptRecord {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            Ok(EquivalenceClass {
                stage: r.stage.clone(),
                members,
                key: r.polynomial.clone(),
            })
        })
        .collect()
}
