//! Depth-first search for a clutter `D = C ∪ S` passing every solution
//! condition.
//!
//! With `bn(D) = bn(C)` the minimum transversals of `D` are those of `C`
//! that hit every added edge, so they shrink as edges are added. A node
//! whose added edges change the blocking number, break the affine hull of
//! the minimum transversals, or let an added edge into `tilde(D)` therefore
//! fails for its whole subtree. The remaining conditions are checked at
//! each node without pruning below it.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{b_against, if_against, CoreData};
use crate::clutter::{Clutter, ClutterJson};
use crate::conditions::SCHEMA_VERSION;
use crate::error::Result;
use crate::minor;
use crate::polytope;
use crate::rational::{self, RationalVector};
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of edges added to `C`.
    pub max_extra_edges: usize,
    /// Largest candidate edge; the default bound `|E| - bn + 1` always applies.
    pub max_edge_size: Option<usize>,
    /// Maximum number of nodes evaluated.
    pub node_cap: u64,
    pub time_cap: Option<Duration>,
    /// Also require `D` to be minimally non-packing.
    pub require_mnp: bool,
    /// Worker threads for top-level subtrees; results do not depend on it.
    pub jobs: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_extra_edges: 2,
            max_edge_size: None,
            node_cap: 1_000_000,
            time_cap: None,
            require_mnp: true,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    Exhausted,
    LimitReached,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub schema_version: u32,
    pub status: SearchStatus,
    pub found: Option<ClutterJson>,
    /// Edges added to `C` in the found clutter.
    pub added: Vec<Vec<String>>,
    pub nodes_explored: u64,
    /// Candidate edges surviving the pool filters.
    pub pool_size: usize,
    /// Rejection counts: pool filters, and the first failing gate per node.
    pub prune_stats: BTreeMap<String, u64>,
    #[serde(skip)]
    pub found_clutter: Option<Clutter>,
}

/// Candidate edges for `D - C`, in canonical order, with filter counts.
fn candidate_pool(core: &CoreData<'_>, limits: &SearchLimits, stats: &mut BTreeMap<String, u64>) -> Vec<ElementSet> {
    let c = core.clutter;
    let n = c.ground_size();
    let bn = core.minb[0].len();
    let mut hi = (n + 1).saturating_sub(bn);
    if let Some(m) = limits.max_edge_size {
        hi = hi.min(m);
    }
    let mut pool = Vec::new();
    for bits in 1..(1u64 << n) {
        let h = ElementSet::from_bits(bits);
        let size = h.len();
        let reason = if size < 2 || size > hi {
            Some("pool_size_bound")
        } else if c.edges().iter().any(|&e| e.is_subset(h) || h.is_subset(e)) {
            Some("pool_comparable")
        } else if !core.minb.iter().any(|b| b.meet(h) >= 2) {
            Some("pool_condition_h")
        } else {
            None
        };
        match reason {
            Some(r) => *stats.entry(r.to_string()).or_default() += 1,
            None => pool.push(h),
        }
    }
    pool.sort_unstable();
    pool
}

struct Searcher<'c, 'a> {
    core: &'c CoreData<'a>,
    pool: Vec<ElementSet>,
    limits: SearchLimits,
    start: Instant,
}

/// Result of exploring one subtree.
struct Partial {
    nodes: u64,
    found: Option<Vec<ElementSet>>,
    limit_hit: bool,
    stats: BTreeMap<String, u64>,
}

impl Partial {
    fn new() -> Self {
        Partial {
            nodes: 0,
            found: None,
            limit_hit: false,
            stats: BTreeMap::new(),
        }
    }

    fn bump(&mut self, key: &str) {
        *self.stats.entry(key.to_string()).or_default() += 1;
    }

    fn absorb(&mut self, other: Partial) {
        self.nodes += other.nodes;
        for (k, v) in other.stats {
            *self.stats.entry(k).or_default() += v;
        }
        self.found = other.found;
        self.limit_hit = other.limit_hit;
    }

    fn done(&self) -> bool {
        self.found.is_some() || self.limit_hit
    }
}

enum Gate {
    Pass,
    /// Fails here and in every extension.
    PruneSubtree(&'static str),
    /// Fails here only.
    Reject(&'static str),
}

impl Searcher<'_, '_> {
    fn evaluate(&self, added: &[ElementSet]) -> Result<Gate> {
        let core = self.core;
        let c = core.clutter;
        let alive: Vec<ElementSet> = core
            .minb
            .iter()
            .copied()
            .filter(|b| added.iter().all(|h| h.intersects(*b)))
            .collect();
        if alive.is_empty() {
            return Ok(Gate::PruneSubtree("im_blocking_number"));
        }
        if added.iter().any(|h| alive.iter().all(|b| b.meet(*h) == 1)) {
            return Ok(Gate::PruneSubtree("tilde_added_edge"));
        }
        if c.edges().iter().any(|h| alive.iter().any(|b| b.meet(*h) != 1)) {
            return Ok(Gate::Reject("tilde_core_edge"));
        }
        if alive.len() < core.minb.len() {
            let n = c.ground_size();
            let hull: Vec<RationalVector> = alive
                .iter()
                .map(|&b| (0..n).map(|i| rational::int(b.contains(i) as i64)).collect())
                .collect();
            let escapes = core.minb_points.iter().any(|p| !rational::in_affine_hull(&hull, p));
            if escapes {
                return Ok(Gate::PruneSubtree("im_affine_hull"));
            }
        }
        let mut edges = c.edges().to_vec();
        edges.extend_from_slice(added);
        let d = c.with_edges(edges)?;
        let b_d = core.blocker_with(added)?;
        if !if_against(core, &b_d).holds {
            return Ok(Gate::Reject("if"));
        }
        if !b_against(core, &d).holds {
            return Ok(Gate::Reject("b"));
        }
        if !polytope::is_ideal(&d)?.ideal {
            return Ok(Gate::Reject("ideal"));
        }
        if self.limits.require_mnp && !minor::is_minimally_non_packing(&d)?.holds {
            return Ok(Gate::Reject("mnp"));
        }
        Ok(Gate::Pass)
    }

    fn out_of_time(&self) -> bool {
        self.limits.time_cap.is_some_and(|t| self.start.elapsed() >= t)
    }

    /// Preorder DFS from the node `added`, whose last edge is `pool[from - 1]`.
    fn explore(&self, added: &mut Vec<ElementSet>, from: usize, budget: u64, out: &mut Partial) -> Result<()> {
        if out.nodes >= budget || self.out_of_time() {
            out.limit_hit = true;
            return Ok(());
        }
        out.nodes += 1;
        match self.evaluate(added)? {
            Gate::Pass => {
                out.found = Some(added.clone());
                return Ok(());
            }
            Gate::PruneSubtree(why) => {
                out.bump(why);
                return Ok(());
            }
            Gate::Reject(why) => out.bump(why),
        }
        if added.len() >= self.limits.max_extra_edges {
            return Ok(());
        }
        for i in from..self.pool.len() {
            let h = self.pool[i];
            if added.iter().any(|&g| g.is_subset(h) || h.is_subset(g)) {
                out.bump("antichain");
                continue;
            }
            added.push(h);
            self.explore(added, i + 1, budget, out)?;
            added.pop();
            if out.done() {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Explore the root's subtrees in order, `jobs` at a time. Each batch
    /// runs with the budget left before it; a subtree that would have been
    /// cut short by the budget actually left is replayed with that budget,
    /// so the merged result is the sequential one.
    fn children_in_batches(&self, total: &mut Partial) -> Result<()> {
        let cap = self.limits.node_cap;
        let jobs = self.limits.jobs.max(1);
        let n = self.pool.len();
        let mut next = 0;
        while next < n {
            let batch: Vec<usize> = (next..n.min(next + jobs)).collect();
            let offered = cap - total.nodes;
            let results: Vec<Result<Partial>> = if jobs > 1 {
                batch.par_iter().map(|&i| self.subtree(i, offered)).collect()
            } else {
                batch.iter().map(|&i| self.subtree(i, offered)).collect()
            };
            for (&i, r) in batch.iter().zip(results) {
                let mut p = r?;
                let left = cap - total.nodes;
                if left < offered && (p.limit_hit || p.nodes > left) {
                    p = self.subtree(i, left)?;
                }
                total.absorb(p);
                if total.done() {
                    return Ok(());
                }
            }
            next += jobs;
        }
        Ok(())
    }

    fn subtree(&self, i: usize, budget: u64) -> Result<Partial> {
        let mut p = Partial::new();
        self.explore(&mut vec![self.pool[i]], i + 1, budget, &mut p)?;
        Ok(p)
    }
}

/// Search supersets `D = C ∪ S` of a precore `C` for a clutter passing the
/// tilde, IM, IF, B, idealness and (optionally) minimal non-packing gates.
///
/// The outcome, node counts included, is that of a sequential preorder
/// traversal in canonical candidate order regardless of `jobs`, except
/// that a time cap stops wherever the clock runs out.
pub fn search_solutions(c: &Clutter, limits: &SearchLimits) -> Result<SearchOutcome> {
    minor::guard_sweep(c, minor::DEFAULT_SWEEP_MAX_ELEMENTS)?;
    let core = CoreData::new(c)?;
    let mut pool_stats = BTreeMap::new();
    let pool = candidate_pool(&core, limits, &mut pool_stats);
    let searcher = Searcher {
        core: &core,
        pool,
        limits: limits.clone(),
        start: Instant::now(),
    };
    let cap = limits.node_cap;
    let mut total = Partial::new();
    if cap == 0 {
        total.limit_hit = true;
    } else {
        total.nodes = 1;
        match searcher.evaluate(&[])? {
            Gate::Pass => total.found = Some(Vec::new()),
            Gate::PruneSubtree(why) => total.bump(why),
            Gate::Reject(why) => {
                total.bump(why);
                if limits.max_extra_edges > 0 {
                    searcher.children_in_batches(&mut total)?;
                }
            }
        }
    }
    let status = if total.found.is_some() {
        SearchStatus::Found
    } else if total.limit_hit {
        SearchStatus::LimitReached
    } else {
        SearchStatus::Exhausted
    };
    let found_clutter = match &total.found {
        Some(s) => {
            let mut edges = c.edges().to_vec();
            edges.extend_from_slice(s);
            Some(c.with_edges(edges)?)
        }
        None => None,
    };
    let mut prune_stats = pool_stats;
    for (k, v) in total.stats {
        *prune_stats.entry(k).or_default() += v;
    }
    Ok(SearchOutcome {
        schema_version: SCHEMA_VERSION,
        status,
        found: found_clutter.as_ref().map(Clutter::to_json),
        added: total.found.iter().flatten().map(|&h| c.labels_of(h)).collect(),
        nodes_explored: total.nodes,
        pool_size: searcher.pool.len(),
        prune_stats,
        found_clutter,
    })
}
