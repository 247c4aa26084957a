//! Minimum-size Kakeya sets at tiny parameters.
//!
//! A Kakeya set contains a whole line in every direction, so a minimal one is
//! a union of exactly one line per canonical direction. The exact search
//! branches over those line choices; raw subset enumeration is kept as an
//! independent oracle for `q^n <= 16`.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::kakeya::{greedy_lines, is_kakeya, PointSet};
use crate::space::{LineRecord, Space};

/// Largest `q^n` handled by [`minimal_kakeya_subsets`].
pub const SUBSET_ORACLE_MAX_POINTS: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest `q^n` accepted by the exact search.
    pub max_points: u64,
    /// Search-tree nodes to visit before giving up on optimality.
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_points: 4096,
            node_budget: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimality {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub field: FieldSpec,
    pub n: usize,
    pub minimum: u64,
    pub optimal: Optimality,
    pub witness: PointSet,
    /// The line chosen for each canonical direction, when known.
    pub lines: Vec<LineRecord>,
    pub nodes: u64,
    pub budget_exhausted: bool,
    pub wall_time_ms: u64,
}

/// Serializable summary row. Wall time is left out unless asked for, so that
/// repeated runs produce identical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub field: String,
    pub q: u64,
    pub n: usize,
    pub minimum: u64,
    pub optimal: Optimality,
    pub budget_exhausted: bool,
    pub nodes: u64,
    pub lines: Vec<LineRecord>,
    pub witness: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl SearchResult {
    pub fn summary(&self, with_time: bool) -> SearchSummary {
        SearchSummary {
            field: self.field.to_string(),
            q: self.field.order() as u64,
            n: self.n,
            minimum: self.minimum,
            optimal: self.optimal,
            budget_exhausted: self.budget_exhausted,
            nodes: self.nodes,
            lines: self.lines.clone(),
            witness: self.witness.point_values(),
            wall_time_ms: with_time.then_some(self.wall_time_ms),
        }
    }
}

struct Lines {
    /// `lines[dir][t]`: encodings of the `t`-th line of direction `dir`.
    lines: Vec<Vec<Vec<u64>>>,
    records: Vec<Vec<LineRecord>>,
}

fn all_lines(sp: &Space) -> Lines {
    let dirs = sp.canonical_directions();
    let mut lines = Vec::with_capacity(dirs.len());
    let mut records = Vec::with_capacity(dirs.len());
    for d in &dirs {
        let (ls, rs): (Vec<_>, Vec<_>) = (0..sp.transversal_len())
            .map(|t| {
                let base = sp.transversal_point(d, t);
                (
                    sp.line(&base, d.coords()),
                    LineRecord {
                        direction: d.values(),
                        base: base.iter().map(|c| c.value()).collect(),
                    },
                )
            })
            .unzip();
        lines.push(ls);
        records.push(rs);
    }
    Lines { lines, records }
}

struct Cover {
    counts: Vec<u32>,
    size: u64,
}

impl Cover {
    fn add(&mut self, line: &[u64]) {
        for &c in line {
            self.counts[c as usize] += 1;
            if self.counts[c as usize] == 1 {
                self.size += 1;
            }
        }
    }

    fn remove(&mut self, line: &[u64]) {
        for &c in line {
            self.counts[c as usize] -= 1;
            if self.counts[c as usize] == 0 {
                self.size -= 1;
            }
        }
    }

    fn fresh(&self, line: &[u64]) -> u64 {
        line.iter().filter(|&&c| self.counts[c as usize] == 0).count() as u64
    }
}

struct Dfs<'a> {
    lines: &'a Lines,
    cover: Cover,
    choice: Vec<usize>,
    best: u64,
    best_choice: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Dfs<'_> {
    fn run(&mut self, i: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let dirs = self.lines.lines.len();
        if i == dirs {
            if self.cover.size < self.best {
                self.best = self.cover.size;
                self.best_choice = self.choice.clone();
            }
            return;
        }
        // every remaining direction still needs a line: the cheapest one is a lower bound
        let lb = (i..dirs)
            .map(|j| self.lines.lines[j].iter().map(|l| self.cover.fresh(l)).min().unwrap_or(0))
            .max()
            .unwrap_or(0);
        if self.cover.size + lb >= self.best {
            return;
        }
        // translating a Kakeya set keeps it Kakeya, so the first line may pass through 0
        let options = if i == 0 { 1 } else { self.lines.lines[i].len() };
        for t in 0..options {
            let line = &self.lines.lines[i][t];
            self.cover.add(line);
            self.choice[i] = t;
            if self.cover.size < self.best {
                self.run(i + 1);
            }
            self.cover.remove(line);
            if self.exhausted {
                return;
            }
        }
    }
}

fn finish(
    sp: &Space,
    lines: &Lines,
    choice: &[usize],
    optimal: Optimality,
    nodes: u64,
    exhausted: bool,
    start: Instant,
) -> Result<SearchResult> {
    let codes: Vec<u64> = choice
        .iter()
        .enumerate()
        .flat_map(|(i, &t)| lines.lines[i][t].iter().copied())
        .collect();
    let witness = PointSet::from_encodings(sp, codes)?;
    let records = choice
        .iter()
        .enumerate()
        .map(|(i, &t)| lines.records[i][t].clone())
        .collect();
    result(sp, witness, records, optimal, nodes, exhausted, start)
}

fn result(
    sp: &Space,
    witness: PointSet,
    lines: Vec<LineRecord>,
    optimal: Optimality,
    nodes: u64,
    budget_exhausted: bool,
    start: Instant,
) -> Result<SearchResult> {
    if let Some(d) = is_kakeya(&witness).failing_direction {
        return Err(Error::Inconsistent(format!("search witness misses direction {d:?}")));
    }
    Ok(SearchResult {
        field: sp.spec().clone(),
        n: sp.dim(),
        minimum: witness.len() as u64,
        optimal,
        witness,
        lines,
        nodes,
        budget_exhausted,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Exact minimum by branch-and-bound over one line per canonical direction.
///
/// Directions are taken in canonical order and base points by increasing
/// encoding; the search starts from the greedy set and only accepts strictly
/// smaller unions, so the result is deterministic. If the node budget runs out
/// the best set found so far is returned with [`Optimality::Heuristic`].
pub fn minimal_kakeya_exact(spec: &FieldSpec, n: usize, limits: &SearchLimits) -> Result<SearchResult> {
    let start = Instant::now();
    let sp = Space::new(spec, n)?;
    if sp.size() > limits.max_points {
        return Err(Error::Resource(format!(
            "exact search over q^n = {} points exceeds the limit {}; use the greedy search instead",
            sp.size(),
            limits.max_points
        )));
    }
    let lines = all_lines(&sp);
    let dirs = sp.canonical_directions();
    let order: Vec<usize> = (0..dirs.len()).collect();
    let (greedy, greedy_records) = greedy_lines(&sp, &dirs, &order);
    let greedy_choice: Vec<usize> = greedy_records
        .iter()
        .enumerate()
        .map(|(i, r)| lines.records[i].iter().position(|x| x == r).expect("greedy picks a transversal line"))
        .collect();

    let mut dfs = Dfs {
        lines: &lines,
        cover: Cover {
            counts: vec![0; sp.size() as usize],
            size: 0,
        },
        choice: vec![0; dirs.len()],
        best: greedy.len() as u64,
        best_choice: greedy_choice,
        nodes: 0,
        budget: limits.node_budget,
        exhausted: false,
    };
    dfs.run(0);
    let optimal = if dfs.exhausted {
        Optimality::Heuristic
    } else {
        Optimality::Exact
    };
    let (choice, nodes, exhausted) = (dfs.best_choice.clone(), dfs.nodes, dfs.exhausted);
    finish(&sp, &lines, &choice, optimal, nodes, exhausted, start)
}

/// Brute force over every one-line-per-direction choice, without symmetry
/// reduction or pruning. `leaf_limit` caps `(q^{n-1})^{#directions}`.
pub fn minimal_kakeya_line_enumeration(spec: &FieldSpec, n: usize, leaf_limit: u64) -> Result<SearchResult> {
    let start = Instant::now();
    let sp = Space::new(spec, n)?;
    let lines = all_lines(&sp);
    let per = sp.transversal_len();
    let dirs = lines.lines.len();
    let leaves = per
        .checked_pow(dirs as u32)
        .filter(|&l| l <= leaf_limit)
        .ok_or_else(|| Error::Resource(format!("{per}^{dirs} leaves exceed the limit {leaf_limit}")))?;
    let mut cover = Cover {
        counts: vec![0; sp.size() as usize],
        size: 0,
    };
    let mut best: Option<(u64, Vec<usize>)> = None;
    for leaf in 0..leaves {
        let mut rest = leaf;
        let choice: Vec<usize> = (0..dirs)
            .map(|_| {
                let t = (rest % per) as usize;
                rest /= per;
                t
            })
            .collect();
        for (i, &t) in choice.iter().enumerate() {
            cover.add(&lines.lines[i][t]);
        }
        if best.as_ref().is_none_or(|(b, _)| cover.size < *b) {
            best = Some((cover.size, choice.clone()));
        }
        for (i, &t) in choice.iter().enumerate() {
            cover.remove(&lines.lines[i][t]);
        }
    }
    let (_, choice) = best.expect("at least one leaf");
    finish(&sp, &lines, &choice, Optimality::Exact, leaves, false, start)
}

/// Oracle: scans all subsets of `F_q^n` (`q^n <= 16`) by increasing size, then
/// increasing bitmask, and returns the first Kakeya one.
pub fn minimal_kakeya_subsets(spec: &FieldSpec, n: usize) -> Result<SearchResult> {
    let start = Instant::now();
    let sp = Space::new(spec, n)?;
    if sp.size() > SUBSET_ORACLE_MAX_POINTS {
        return Err(Error::Resource(format!(
            "subset enumeration needs q^n <= {SUBSET_ORACLE_MAX_POINTS}, got {}",
            sp.size()
        )));
    }
    let masks: Vec<Vec<u32>> = all_lines(&sp)
        .lines
        .iter()
        .map(|ls| ls.iter().map(|l| l.iter().fold(0u32, |m, &c| m | 1 << c)).collect())
        .collect();
    let total = 1u32 << sp.size();
    let mut subsets: Vec<u32> = (0..total).collect();
    subsets.sort_by_key(|&m| (m.count_ones(), m));
    let hit = subsets
        .iter()
        .position(|&s| masks.iter().all(|ls| ls.iter().any(|l| l & !s == 0)))
        .expect("the whole space is Kakeya");
    let s = subsets[hit];
    let codes = (0..sp.size()).filter(|&c| s >> c & 1 == 1).collect();
    let witness = PointSet::from_encodings(&sp, codes)?;
    result(&sp, witness, Vec::new(), Optimality::Exact, hit as u64 + 1, false, start)
}

/// Best of `restarts` greedy passes, each over a random direction order drawn
/// from `ChaCha8Rng::seed_from_u64(seed + i)`. Ties between restarts go to the
/// smaller witness encoding, so the result does not depend on thread count.
/// A request for zero restarts runs one.
pub fn minimal_kakeya_greedy(spec: &FieldSpec, n: usize, restarts: u64, seed: u64) -> Result<SearchResult> {
    let start = Instant::now();
    let sp = Space::new(spec, n)?;
    let dirs = sp.canonical_directions();
    let restarts = restarts.max(1);
    let (witness, records) = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
            let mut order: Vec<usize> = (0..dirs.len()).collect();
            order.shuffle(&mut rng);
            let (set, mut records) = greedy_lines(&sp, &dirs, &order);
            // report lines in canonical direction order
            let mut paired: Vec<_> = order.into_iter().zip(records.drain(..)).collect();
            paired.sort_by_key(|(i, _)| *i);
            (set, paired.into_iter().map(|(_, r)| r).collect::<Vec<_>>())
        })
        .min_by(|a, b| (a.0.len(), a.0.members()).cmp(&(b.0.len(), b.0.members())))
        .expect("at least one restart");
    result(&sp, witness, records, Optimality::Heuristic, restarts, false, start)
}
