//! Exhaustive study of level-2 complementations on small bipartite
//! instances.
//!
//! The objects scanned here are bipartite graphs with parts `S` and a
//! `k`-element outside such that `S` (as a set, one weight each) is
//! 2-incident, twin-free, and has minimum degree 2. Up to relabeling, such
//! an instance is determined by the list of neighbourhoods of `S` written
//! as `k`-bit words: 2-incidence fixes the weight-2 and weight-3 words as
//! parity completions of the free choice of weight-≥4 words, so instances
//! are in bijection with subsets of the weight-≥4 words and can be
//! enumerated as integers.
//!
//! For each instance the level-2 complementation over `S` acts on the
//! outside by toggling a set of pairs (the vector `x` over the `C(k,2)`
//! pair coordinates), and each vertex `u ∈ S` contributes a local
//! complementation toggling exactly the pairs inside its neighbourhood.
//! Because the graph is bipartite and `S` independent, those single-vertex
//! actions compose by XOR, so the level-2 move is implementable by local
//! complementations over vertices of `S` exactly when `x` lies in the span
//! of the per-vertex pair masks.
//!
//! The scan classifies every instance as identity (`x = 0`), implementable,
//! or counterexample, streams counters, and dumps counterexamples; at
//! `k = 6` the smallest counterexamples have 21-word supports and complete
//! to 27-vertex graphs. `lift_reduce` connects arbitrary graphs carrying a
//! level-2 multiset to this class by the strip/trim/twin-cancel reduction,
//! preserving implementability on the non-implementable side.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::g6::to_graph6;
use crate::graph::{Graph, VertexSet};
use crate::linalg::F2Span;
use crate::multiset::{decompose_2lc, VertexMultiset};

/// Hard cap on `k` for the exhaustive scan: the instance count is
/// `2^(C(k,4)+...+C(k,k))`, which is 2^22 at `k = 6` and 2^64 at `k = 7`.
pub const MAX_SCAN_K: u32 = 6;

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of instances with a `k`-element outside:
/// `2^(C(k,4) + C(k,5) + ... + C(k,k))`.
///
/// Supported for `1 ≤ k ≤ 7` (the count is 2^64 at `k = 7` and overflows
/// u128 soon after).
pub fn count_gk(k: u32) -> u128 {
    assert!((1..=7).contains(&k), "count_gk supports 1 <= k <= 7");
    let exponent: u128 = (4..=k).map(|i| binomial(k, i)).sum();
    1u128 << exponent
}

/// Lexicographic index of the pair `{i, j}` (`i < j < k`) among the
/// `C(k,2)` outside pairs.
fn pair_index(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

/// The outside pairs in coordinate order.
fn pair_list(k: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Action vector of a word: the set of pairs with both ends in the word,
/// packed over the pair coordinates.
fn pair_mask_of(word: u32, k: usize) -> u32 {
    let mut mask = 0u32;
    for i in 0..k {
        if word >> i & 1 == 0 {
            continue;
        }
        for j in i + 1..k {
            if word >> j & 1 == 1 {
                mask |= 1 << pair_index(i, j, k);
            }
        }
    }
    mask
}

fn weight(word: u32) -> u32 {
    word.count_ones()
}

/// All words of the completed support, ascending: the chosen weight-≥4
/// words plus the parity-forced weight-3 and weight-2 words.
///
/// A word of weight 3 is its own only weight-3 superset candidate, so the
/// triple conditions fix the weight-3 layer from the chosen words alone:
/// triple `t` joins iff an odd number of chosen words contain it. The pair
/// layer then follows the same way from the two layers above it. The
/// result has an even number of words above every pair and triple, which
/// is exactly 2-incidence for a set.
fn complete_words(k: usize, chosen_high: &[u32]) -> Vec<u32> {
    let mut words: Vec<u32> = chosen_high.to_vec();
    for layer in [3u32, 2] {
        let mut forced = Vec::new();
        for cand in 0..1u32 << k {
            if weight(cand) != layer {
                continue;
            }
            let above = words.iter().filter(|&&w| w & cand == cand).count();
            if above % 2 == 1 {
                forced.push(cand);
            }
        }
        words.extend(forced);
    }
    words.sort_unstable();
    words
}

/// One bipartite instance: the completed support words, the graph, and the
/// level-2 action data.
#[derive(Debug, Clone)]
pub struct GkInstance {
    /// Outside size.
    pub k: usize,
    /// The free choice: words of weight at least 4, ascending.
    pub chosen_high: Vec<u32>,
    /// All support words (weight at least 2), ascending.
    pub s_words: Vec<u32>,
    /// The completed graph: outside vertices `0..k`, then one vertex per
    /// word of `s_words` in order, adjacent to the word's bits.
    pub graph: Graph,
    /// Per-word local-complementation action over the pair coordinates.
    pub action_vectors: Vec<u32>,
    /// Action of the level-2 complementation over the whole support: bit
    /// `pair_index(i, j, k)` is set iff the pair `{i, j}` toggles.
    pub x: u32,
}

/// Classification of an instance by the action of its level-2 move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GkClass {
    /// `x = 0`: the level-2 complementation leaves the graph unchanged.
    Identity,
    /// `x ≠ 0` but realizable by local complementations over the support.
    Implementable,
    /// `x` outside the span of the support's local complementations.
    Counterexample,
}

/// Builds the instance determined by a choice of weight-≥4 words.
///
/// The chosen words must be distinct `k`-bit words of weight at least 4;
/// `k` is capped at 8 so pair coordinates pack into a `u32`.
pub fn complete_from_high(k: usize, chosen_high: &[u32]) -> GkInstance {
    assert!((1..=8).contains(&k), "outside size must be in 1..=8");
    let mut chosen: Vec<u32> = chosen_high.to_vec();
    chosen.sort_unstable();
    chosen.windows(2).for_each(|w| {
        assert!(w[0] != w[1], "chosen words must be distinct");
    });
    for &w in &chosen {
        assert!(w < 1 << k, "word {w:#b} does not fit {k} outside vertices");
        assert!(weight(w) >= 4, "chosen words must have weight at least 4");
    }
    let s_words = complete_words(k, &chosen);
    let n = k + s_words.len();
    let mut graph = Graph::new(n).expect("instance orders stay small");
    for (idx, &w) in s_words.iter().enumerate() {
        for b in 0..k {
            if w >> b & 1 == 1 {
                graph.set_edge(k + idx, b, true);
            }
        }
    }
    let action_vectors: Vec<u32> = s_words.iter().map(|&w| pair_mask_of(w, k)).collect();
    let mut x = 0u32;
    for (pi, &(i, j)) in pair_list(k).iter().enumerate() {
        let above = s_words
            .iter()
            .filter(|&&w| w >> i & 1 == 1 && w >> j & 1 == 1)
            .count();
        debug_assert!(above % 2 == 0, "completion must leave even pair counts");
        if above % 4 == 2 {
            x |= 1 << pi;
        }
    }
    GkInstance {
        k,
        chosen_high: chosen,
        s_words,
        graph,
        action_vectors,
        x,
    }
}

impl GkInstance {
    /// The support as a level-2 multiset on the completed graph (weight 1
    /// per word vertex).
    pub fn support_multiset(&self) -> VertexMultiset {
        let pairs: Vec<(usize, u32)> = (0..self.s_words.len()).map(|i| (self.k + i, 1)).collect();
        VertexMultiset::from_pairs(self.graph.order(), 2, &pairs)
    }

    /// Support size `|S|`.
    pub fn support_size(&self) -> usize {
        self.s_words.len()
    }

    /// Classifies the instance.
    pub fn classify(&self) -> GkClass {
        if self.x == 0 {
            GkClass::Identity
        } else if implementable_by_lc(self) {
            GkClass::Implementable
        } else {
            GkClass::Counterexample
        }
    }
}

/// Reduces `vec` against a sorted-insertion F2 basis of `u32` vectors,
/// inserting when independent. Returns the residue.
fn reduce_u32(basis: &mut Vec<u32>, mut vec: u32) -> u32 {
    for &b in basis.iter() {
        let high = 31 - b.leading_zeros();
        if vec >> high & 1 == 1 {
            vec ^= b;
        }
    }
    if vec != 0 {
        basis.push(vec);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    vec
}

/// F2 span membership for a packed vector against packed generators.
fn u32_span_contains(generators: impl IntoIterator<Item = u32>, x: u32) -> (bool, usize) {
    let mut basis = Vec::new();
    for g in generators {
        reduce_u32(&mut basis, g);
    }
    let rank = basis.len();
    let mut v = x;
    for &b in basis.iter() {
        let high = 31 - b.leading_zeros();
        if v >> high & 1 == 1 {
            v ^= b;
        }
    }
    (v == 0, rank)
}

/// True iff the level-2 action `x` lies in the F2 span of the per-word
/// local-complementation actions; equivalently, some `A ⊆ S` satisfies
/// `G ⋆2 S = G ⋆1 A`.
pub fn implementable_by_lc(inst: &GkInstance) -> bool {
    u32_span_contains(inst.action_vectors.iter().copied(), inst.x).0
}

// ============================================================================
// Exhaustive scan
// ============================================================================

/// Precomputed superset tables for the streaming classifier: everything a
/// mask classification needs, with no per-instance allocation.
struct ScanTables {
    k: usize,
    /// Weight-≥4 words ascending; bit `b` of an instance index selects
    /// `high_words[b]`.
    high_words: Vec<u32>,
    /// Weight-3 words ascending (`t` layer of the completion).
    triples: Vec<u32>,
    /// The `C(k,2)` pair words in pair-coordinate order.
    pairs: Vec<u32>,
    /// Per triple: bitmask over `high_words` containing it.
    high_above_triple: Vec<u64>,
    /// Per pair: bitmask over `high_words` containing it.
    high_above_pair: Vec<u64>,
    /// Per pair: bitmask over `triples` containing it.
    triple_above_pair: Vec<u32>,
    /// Pair mask (action vector) of every `k`-bit word.
    mask_of_word: Vec<u32>,
}

impl ScanTables {
    fn new(k: usize) -> Self {
        let all = 0..1u32 << k;
        let high_words: Vec<u32> = all.clone().filter(|&w| weight(w) >= 4).collect();
        let triples: Vec<u32> = all.clone().filter(|&w| weight(w) == 3).collect();
        let pairs: Vec<u32> = pair_list(k)
            .iter()
            .map(|&(i, j)| (1 << i) | (1 << j))
            .collect();
        let above = |sub: u32| -> u64 {
            high_words
                .iter()
                .enumerate()
                .filter(|&(_, &w)| w & sub == sub)
                .fold(0u64, |m, (b, _)| m | 1 << b)
        };
        let high_above_triple = triples.iter().map(|&t| above(t)).collect();
        let high_above_pair = pairs.iter().map(|&p| above(p)).collect();
        let triple_above_pair = pairs
            .iter()
            .map(|&p| {
                triples
                    .iter()
                    .enumerate()
                    .filter(|&(_, &t)| t & p == p)
                    .fold(0u32, |m, (b, _)| m | 1 << b)
            })
            .collect();
        let mask_of_word = (0..1u32 << k).map(|w| pair_mask_of(w, k)).collect();
        ScanTables {
            k,
            high_words,
            triples,
            pairs,
            high_above_triple,
            high_above_pair,
            triple_above_pair,
            mask_of_word,
        }
    }

    /// Chosen words selected by an instance index.
    fn chosen_of(&self, index: u64) -> Vec<u32> {
        self.high_words
            .iter()
            .enumerate()
            .filter(|&(b, _)| index >> b & 1 == 1)
            .map(|(_, &w)| w)
            .collect()
    }

    /// Completion layers of an instance index: (triple layer as a bitmask
    /// over `triples`, pair layer as a bitmask over `pairs`).
    fn layers_of(&self, index: u64) -> (u32, u32) {
        let mut added3 = 0u32;
        for (ti, &mask) in self.high_above_triple.iter().enumerate() {
            if (index & mask).count_ones() % 2 == 1 {
                added3 |= 1 << ti;
            }
        }
        let mut added2 = 0u32;
        for (pi, &mask) in self.high_above_pair.iter().enumerate() {
            let above =
                (index & mask).count_ones() + (added3 & self.triple_above_pair[pi]).count_ones();
            if above % 2 == 1 {
                added2 |= 1 << pi;
            }
        }
        (added3, added2)
    }

    /// Support size, level-2 action vector, span rank, and class of an
    /// instance index.
    fn classify_index(&self, index: u64) -> (usize, u32, usize, GkClass) {
        let (added3, added2) = self.layers_of(index);
        let support = (index.count_ones() + added3.count_ones() + added2.count_ones()) as usize;
        let mut x = 0u32;
        for pi in 0..self.pairs.len() {
            let above = (index & self.high_above_pair[pi]).count_ones()
                + (added3 & self.triple_above_pair[pi]).count_ones()
                + (added2 >> pi & 1);
            debug_assert!(above % 2 == 0);
            if above % 4 == 2 {
                x |= 1 << pi;
            }
        }
        let words = self
            .chosen_of(index)
            .into_iter()
            .chain(
                self.triples
                    .iter()
                    .enumerate()
                    .filter(|&(ti, _)| added3 >> ti & 1 == 1)
                    .map(|(_, &t)| t),
            )
            .chain(
                self.pairs
                    .iter()
                    .enumerate()
                    .filter(|&(pi, _)| added2 >> pi & 1 == 1)
                    .map(|(_, &p)| p),
            );
        let (inside, rank) = u32_span_contains(words.map(|w| self.mask_of_word[w as usize]), x);
        let class = if x == 0 {
            GkClass::Identity
        } else if inside {
            GkClass::Implementable
        } else {
            GkClass::Counterexample
        };
        (support, x, rank, class)
    }
}

/// Per-support-size class counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub identity: u64,
    pub implementable: u64,
    pub counterexample: u64,
}

impl ClassCounts {
    fn bump(&mut self, class: GkClass) {
        match class {
            GkClass::Identity => self.identity += 1,
            GkClass::Implementable => self.implementable += 1,
            GkClass::Counterexample => self.counterexample += 1,
        }
    }
}

/// A dumped counterexample: enough to rebuild and recheck the instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    /// Instance index (bitmask over the weight-≥4 words, ascending).
    pub index: u64,
    /// Support size `|S|`.
    pub support: usize,
    /// graph6 of the completed graph (outside first, then word vertices).
    pub graph6: String,
    /// Support words as binary strings; character `i` is outside vertex `i`.
    pub s_words: Vec<String>,
    /// The toggled outside pairs (the nonzero coordinates of `x`).
    pub toggled_pairs: Vec<(usize, usize)>,
    /// F2 rank of the span of local-complementation actions.
    pub span_rank: usize,
}

/// Scan configuration.
#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Classify only instances with support size at most this; larger ones
    /// are counted as skipped.
    pub max_support: Option<usize>,
    /// Worker threads (1 = run on the calling thread).
    pub jobs: usize,
    /// Checkpoint file: written periodically, resumed from when present.
    pub checkpoint: Option<PathBuf>,
    /// Write the checkpoint after this many instances.
    pub checkpoint_every: u64,
    /// Keep at most this many counterexample dumps (all are counted).
    pub max_counterexamples: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            max_support: None,
            jobs: 1,
            checkpoint: None,
            checkpoint_every: 1 << 20,
            max_counterexamples: 64,
        }
    }
}

/// Aggregated scan results.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub k: u32,
    pub max_support: Option<usize>,
    /// Total instance count (`count_gk(k)`).
    pub total: u64,
    /// Instances classified (within the support filter).
    pub visited: u64,
    /// Instances skipped by the support filter.
    pub skipped: u64,
    pub identity: u64,
    pub implementable: u64,
    pub counterexample: u64,
    /// Class counters keyed by support size (classified instances only).
    pub by_support: BTreeMap<usize, ClassCounts>,
    /// First counterexamples in index order (capped by the scan options).
    pub counterexamples: Vec<Counterexample>,
    pub runtime_ms: u64,
}

impl ScanReport {
    fn empty(k: u32, total: u64, max_support: Option<usize>) -> Self {
        ScanReport {
            k,
            max_support,
            total,
            visited: 0,
            skipped: 0,
            identity: 0,
            implementable: 0,
            counterexample: 0,
            by_support: BTreeMap::new(),
            counterexamples: Vec::new(),
            runtime_ms: 0,
        }
    }

    fn absorb(&mut self, part: Partial, cap: usize) {
        self.visited += part.visited;
        self.skipped += part.skipped;
        self.identity += part.identity;
        self.implementable += part.implementable;
        self.counterexample += part.counterexample;
        for (support, counts) in part.by_support {
            let slot = self.by_support.entry(support).or_default();
            slot.identity += counts.identity;
            slot.implementable += counts.implementable;
            slot.counterexample += counts.counterexample;
        }
        for ce in part.counterexamples {
            if self.counterexamples.len() < cap {
                self.counterexamples.push(ce);
            }
        }
    }
}

#[derive(Default)]
struct Partial {
    visited: u64,
    skipped: u64,
    identity: u64,
    implementable: u64,
    counterexample: u64,
    by_support: BTreeMap<usize, ClassCounts>,
    counterexamples: Vec<Counterexample>,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    next_index: u64,
    report: ScanReport,
}

fn scan_range(tables: &ScanTables, range: std::ops::Range<u64>, opts: &ScanOptions) -> Partial {
    let mut part = Partial::default();
    for index in range {
        let (support, x, rank, class) = tables.classify_index(index);
        if opts.max_support.is_some_and(|cap| support > cap) {
            part.skipped += 1;
            continue;
        }
        part.visited += 1;
        part.by_support.entry(support).or_default().bump(class);
        match class {
            GkClass::Identity => part.identity += 1,
            GkClass::Implementable => part.implementable += 1,
            GkClass::Counterexample => {
                part.counterexample += 1;
                if part.counterexamples.len() < opts.max_counterexamples {
                    part.counterexamples.push(dump(tables, index, x, rank));
                }
            }
        }
    }
    part
}

fn dump(tables: &ScanTables, index: u64, x: u32, rank: usize) -> Counterexample {
    let inst = complete_from_high(tables.k, &tables.chosen_of(index));
    debug_assert_eq!(inst.x, x);
    let s_words = inst
        .s_words
        .iter()
        .map(|&w| {
            (0..tables.k)
                .map(|b| if w >> b & 1 == 1 { '1' } else { '0' })
                .collect()
        })
        .collect();
    let toggled_pairs = pair_list(tables.k)
        .into_iter()
        .enumerate()
        .filter(|&(pi, _)| x >> pi & 1 == 1)
        .map(|(_, p)| p)
        .collect();
    Counterexample {
        index,
        support: inst.s_words.len(),
        graph6: to_graph6(&inst.graph),
        s_words,
        toggled_pairs,
        span_rank: rank,
    }
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(cp)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Streams every instance at outside size `k`, classifying each within the
/// support filter and aggregating counters and counterexample dumps.
///
/// With a checkpoint path, progress is written periodically and an
/// existing checkpoint (matching `k` and filter) is resumed; a finished
/// checkpoint returns its report unchanged. Work is split over `jobs`
/// rayon workers in contiguous index blocks; output order is deterministic
/// (counterexamples ascend by index).
pub fn scan_gk(k: u32, opts: &ScanOptions) -> Result<ScanReport> {
    if k < 1 || k > MAX_SCAN_K {
        return Err(Error::ResourceLimit {
            what: format!("scan outside size k = {k} (instances grow double-exponentially)"),
            limit: MAX_SCAN_K as usize,
        });
    }
    if opts.jobs < 1 {
        return Err(Error::ShapeMismatch("jobs must be at least 1".into()));
    }
    let start = Instant::now();
    let tables = ScanTables::new(k as usize);
    let total = count_gk(k) as u64;

    let (mut report, mut next_index) = match &opts.checkpoint {
        Some(path) if path.exists() => {
            let cp: Checkpoint = serde_json::from_slice(&fs::read(path)?)?;
            if cp.report.k != k || cp.report.max_support != opts.max_support {
                return Err(Error::ShapeMismatch(format!(
                    "checkpoint was made for k = {}, max_support = {:?}",
                    cp.report.k, cp.report.max_support
                )));
            }
            (cp.report, cp.next_index)
        }
        _ => (ScanReport::empty(k, total, opts.max_support), 0),
    };
    let base_runtime = report.runtime_ms;

    let pool = if opts.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    const BLOCK: u64 = 1 << 16;
    let mut since_checkpoint = 0u64;
    while next_index < total {
        let end = (next_index + BLOCK).min(total);
        let part = match &pool {
            None => scan_range(&tables, next_index..end, opts),
            Some(pool) => pool.install(|| {
                let chunk = ((end - next_index) / opts.jobs as u64 + 1).max(1);
                let starts: Vec<u64> = (next_index..end).step_by(chunk as usize).collect();
                starts
                    .into_par_iter()
                    .map(|s| scan_range(&tables, s..(s + chunk).min(end), opts))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .fold(Partial::default(), |mut acc, p| {
                        acc.visited += p.visited;
                        acc.skipped += p.skipped;
                        acc.identity += p.identity;
                        acc.implementable += p.implementable;
                        acc.counterexample += p.counterexample;
                        for (k, v) in p.by_support {
                            let slot = acc.by_support.entry(k).or_default();
                            slot.identity += v.identity;
                            slot.implementable += v.implementable;
                            slot.counterexample += v.counterexample;
                        }
                        acc.counterexamples.extend(p.counterexamples);
                        acc
                    })
            }),
        };
        report.absorb(part, opts.max_counterexamples);
        since_checkpoint += end - next_index;
        next_index = end;
        if let Some(path) = &opts.checkpoint {
            if since_checkpoint >= opts.checkpoint_every && next_index < total {
                report.runtime_ms = base_runtime + start.elapsed().as_millis() as u64;
                write_checkpoint(path, &Checkpoint {
                    next_index,
                    report: report.clone(),
                })?;
                since_checkpoint = 0;
            }
        }
    }

    report.runtime_ms = base_runtime + start.elapsed().as_millis() as u64;
    debug_assert_eq!(report.visited + report.skipped, report.total);
    if let Some(path) = &opts.checkpoint {
        write_checkpoint(path, &Checkpoint {
            next_index,
            report: report.clone(),
        })?;
    }
    Ok(report)
}

/// Number of instances at outside size `k` with support size at most
/// `max_support`, computed by the straightforward completion — a second,
/// independent route to the scan's filtered cardinality.
pub fn count_with_support_at_most(k: u32, max_support: usize) -> Result<u64> {
    if k < 1 || k > MAX_SCAN_K {
        return Err(Error::ResourceLimit {
            what: format!("support census outside size k = {k}"),
            limit: MAX_SCAN_K as usize,
        });
    }
    let k = k as usize;
    let high_words: Vec<u32> = (0..1u32 << k).filter(|&w| weight(w) >= 4).collect();
    let total = 1u64 << high_words.len();
    let mut count = 0u64;
    let mut chosen = Vec::with_capacity(high_words.len());
    for index in 0..total {
        chosen.clear();
        chosen.extend(
            high_words
                .iter()
                .enumerate()
                .filter(|&(b, _)| index >> b & 1 == 1)
                .map(|(_, &w)| w),
        );
        if complete_words(k, &chosen).len() <= max_support {
            count += 1;
        }
    }
    Ok(count)
}

// ============================================================================
// Lifting arbitrary graphs into the class
// ============================================================================

/// Span test on an arbitrary graph: true iff some `A ⊆ supp(s)` satisfies
/// `G ⋆2 s = G ⋆1 A`.
///
/// Both sides only toggle pairs outside the support (every common
/// neighbourhood involving a support vertex lies outside the support, where
/// `s` vanishes), and level-1 complementations over subsets of an
/// independent support act by XOR of their pair masks, so the question is
/// F2 span membership over the outside-pair coordinates.
pub fn implementable_over_support(g: &Graph, s: &VertexMultiset) -> Result<bool> {
    validate_level2(g, s)?;
    let supp = s.support();
    let outside = supp.complement();
    let outside_list = outside.to_vec();
    let mut pairs = Vec::new();
    for (a, &u) in outside_list.iter().enumerate() {
        for &v in &outside_list[a + 1..] {
            pairs.push((u, v));
        }
    }
    let mut span = F2Span::new(pairs.len(), supp.len() + 1);
    let words = crate::linalg::words_for(pairs.len());
    for u in supp.iter() {
        let nbhd = g.neighborhood(u);
        let mut mask = vec![0u64; words];
        for (pi, &(a, b)) in pairs.iter().enumerate() {
            if nbhd.contains(a) && nbhd.contains(b) {
                mask[pi / 64] |= 1 << (pi % 64);
            }
        }
        span.insert(&mask);
    }
    let mut x = vec![0u64; words];
    for (pi, &(a, b)) in pairs.iter().enumerate() {
        let kset = VertexSet::from_iter(g.order(), [a, b]);
        let dot = g.s_dot_lambda(s, &kset)? % 4;
        debug_assert!(dot % 2 == 0);
        if dot == 2 {
            x[pi / 64] |= 1 << (pi % 64);
        }
    }
    Ok(span.express(&x).is_some())
}

fn validate_level2(g: &Graph, s: &VertexMultiset) -> Result<()> {
    if s.level() != 2 {
        return Err(Error::WrongLevel {
            expected: "level exactly 2".into(),
            got: s.level(),
        });
    }
    if let Some((u, v)) = g.independence_violation(&s.support()) {
        return Err(Error::SupportNotIndependent { u, v });
    }
    if let Some(viol) = g.r_incidence_violation(s) {
        return Err(viol.into_error(s.level()));
    }
    Ok(())
}

/// Reduces an arbitrary graph with a level-2 multiset to a class instance:
/// split off the level-1 part, restrict to the 2-incident set against its
/// outside (dropping all outside-outside edges), remove support vertices of
/// degree 0 or 1, and cancel twins in pairs.
///
/// Returns the reduced bipartite graph and its support set (new ids;
/// outside vertices come first in original order, then the kept support).
/// Every step preserves the level-2 action vector's span relation on the
/// non-implementable side: if no `A ⊆ supp(s)` implements the original
/// move, no subset of the reduced support implements the reduced one.
pub fn lift_reduce(g: &Graph, s: &VertexMultiset) -> Result<(Graph, VertexSet)> {
    validate_level2(g, s)?;
    let (s2, _s1) = decompose_2lc(s)?;
    let outside = s.support().complement();
    let outside_list = outside.to_vec();

    // Words of the 2-incident set, trimmed: drop degree <= 1, keep one
    // vertex per word class of odd size (twins cancel in pairs — dropping
    // two equal words composes a trivial move with a local complementation
    // at one of them, neither of which touches the action).
    let mut word_counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for u in s2.iter() {
        let word = g.neighborhood(u).to_vec();
        if word.len() >= 2 {
            *word_counts.entry(word).or_default() += 1;
        }
    }
    let kept: Vec<Vec<usize>> = word_counts
        .into_iter()
        .filter(|(_, count)| count % 2 == 1)
        .map(|(word, _)| word)
        .collect();

    let mut back = vec![usize::MAX; g.order()];
    for (i, &v) in outside_list.iter().enumerate() {
        back[v] = i;
    }
    let mut reduced = Graph::new(outside_list.len() + kept.len())?;
    let mut s_prime = VertexSet::new(reduced.order());
    for (i, word) in kept.iter().enumerate() {
        let id = outside_list.len() + i;
        s_prime.insert(id);
        for &v in word {
            reduced.set_edge(id, back[v], true);
        }
    }
    debug_assert!(reduced.is_independent(&s_prime));
    debug_assert!({
        let set = VertexMultiset::from_pairs(
            reduced.order(),
            2,
            &s_prime.iter().map(|v| (v, 1)).collect::<Vec<_>>(),
        );
        reduced.is_r_incident(&set)
    });
    Ok((reduced, s_prime))
}
