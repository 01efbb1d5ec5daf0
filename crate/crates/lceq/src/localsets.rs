//! Local sets, minimal local sets, generators, covers, and vertex types.
//!
//! A *local set* of a graph is a non-empty `L = D ∪ Odd(D)` for some
//! `D ⊆ V`, called a *generator* of `L`. Local sets are invariant under
//! local complementation (only their generators move), which makes a cover
//! of the vertex set by inclusion-minimal local sets a useful frame of
//! reference: relative to such a cover every vertex gets a type `X`, `Y`,
//! `Z` or `⊥` describing how the covering generators see it, and those
//! types drive the standard-form reduction.
//!
//! Everything here is exact. Enumeration is capped (`LocalSetCaps`) and the
//! caps fail hard with a resource error — a returned cover or verdict is
//! never a heuristic.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::linalg::{get_bit, F2System};

/// Kernel dimensions above this would mean enumerating more than ~64M
/// generator candidates; refuse rather than hang.
const MAX_KERNEL_DIM: usize = 26;

/// Enumeration caps for cover construction.
///
/// `cap_d` bounds the size of candidate generators tried when searching for
/// covering sets; `cap_l` bounds the size of local sets admitted into a
/// cover. Exceeding a cap is a hard error, never a silently wrong answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalSetCaps {
    pub cap_d: usize,
    pub cap_l: usize,
}

impl Default for LocalSetCaps {
    fn default() -> Self {
        Self { cap_d: 6, cap_l: 16 }
    }
}

/// A local set together with all of its generators.
///
/// `dimension` is `log2(#generators + 1)`: for an inclusion-minimal local
/// set the generators together with `∅` form an F2-linear space (every
/// non-zero solution of the defining system generates a local set inside
/// `L`, which by minimality equals `L`), so the count is `2^k − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSetRecord {
    pub set: VertexSet,
    pub generators: Vec<VertexSet>,
    pub dimension: u32,
}

/// A family of minimal local sets whose union is the whole vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlsCover {
    pub sets: Vec<LocalSetRecord>,
}

impl MlsCover {
    /// Union of all covered vertices.
    pub fn union(&self, n: usize) -> VertexSet {
        let mut u = VertexSet::new(n);
        for rec in &self.sets {
            u.union_with(&rec.set);
        }
        u
    }

    /// The records whose set contains `v`.
    pub fn sets_containing(&self, v: usize) -> impl Iterator<Item = &LocalSetRecord> {
        self.sets.iter().filter(move |rec| rec.set.contains(v))
    }

    /// Whether `l` appears in the cover as a set.
    pub fn contains_set(&self, l: &VertexSet) -> bool {
        self.sets.iter().any(|rec| rec.set == *l)
    }
}

/// Per-vertex type relative to an MLS cover.
///
/// `X`/`Y`/`Z` when every generator of every covering set places the vertex
/// in `D∖Odd(D)` / `D∩Odd(D)` / `Odd(D)∖D` respectively; `Bot` when the
/// placements disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexType {
    X,
    Y,
    Z,
    Bot,
}

impl VertexType {
    /// ASCII label, used in JSON output.
    pub fn label(self) -> &'static str {
        match self {
            VertexType::X => "X",
            VertexType::Y => "Y",
            VertexType::Z => "Z",
            VertexType::Bot => "bot",
        }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexType::Bot => write!(f, "\u{22a5}"),
            other => write!(f, "{}", other.label()),
        }
    }
}

/// `D ∪ Odd(D)`: the local set generated by `D` (empty iff `D` is empty).
pub fn local_set_of(g: &Graph, d: &VertexSet) -> VertexSet {
    d.union(&g.odd_neighborhood(d))
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic
/// order; returns `false` once exhausted.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `D ⊆ bound` whose odd neighbourhood stays inside `bound`
/// (equivalently: all generators of local sets contained in `bound`),
/// including the empty set. Solved as an F2 kernel: one parity equation per
/// outside vertex.
fn confined_generators(g: &Graph, bound: &VertexSet) -> Result<Vec<VertexSet>> {
    let n = g.order();
    let cols: Vec<usize> = bound.to_vec();
    let mut sys = F2System::new(cols.len());
    let col_of: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for w in bound.complement().iter() {
        let touching: Vec<usize> = g
            .neighborhood(w)
            .intersection(bound)
            .iter()
            .map(|v| col_of[&v])
            .collect();
        sys.add_sparse_equation(&touching, false);
    }
    let sol = sys
        .solve()
        .ok_or_else(|| Error::Internal("homogeneous system reported inconsistent".into()))?;
    let k = sol.kernel.len();
    if k > MAX_KERNEL_DIM {
        return Err(Error::ResourceLimit {
            what: "local-set kernel dimension".into(),
            limit: MAX_KERNEL_DIM,
        });
    }
    let mut out = Vec::with_capacity(1usize << k);
    for mask in 0..(1u64 << k) {
        let words = sol.combination(mask);
        let mut d = VertexSet::new(n);
        for (i, &v) in cols.iter().enumerate() {
            if get_bit(&words, i) {
                d.insert(v);
            }
        }
        out.push(d);
    }
    out.sort_by_key(|d| (d.len(), d.to_vec()));
    Ok(out)
}

/// All generators of `L`: every `D` with `D ∪ Odd(D) = L`, sorted by size
/// then lexicographically. An empty result means `L` is not a local set.
pub fn generators_of(g: &Graph, l: &VertexSet) -> Result<Vec<VertexSet>> {
    Ok(confined_generators(g, l)?
        .into_iter()
        .filter(|d| local_set_of(g, d) == *l)
        .collect())
}

/// Whether `L` is a local set at all.
pub fn is_local_set(g: &Graph, l: &VertexSet) -> Result<bool> {
    Ok(!generators_of(g, l)?.is_empty())
}

/// Whether `L` is an inclusion-minimal local set. Returns `false` when `L`
/// is not a local set. Errors if `|L|` exceeds the enumeration cap.
pub fn is_minimal_local_set(g: &Graph, l: &VertexSet, caps: &LocalSetCaps) -> Result<bool> {
    if l.len() > caps.cap_l {
        return Err(Error::ResourceLimit {
            what: format!("local set of size {}", l.len()),
            limit: caps.cap_l,
        });
    }
    let mut found_l = false;
    for d in confined_generators(g, l)? {
        if d.is_empty() {
            continue;
        }
        let inner = local_set_of(g, &d);
        if inner == *l {
            found_l = true;
        } else {
            // A strictly smaller local set inside L.
            return Ok(false);
        }
    }
    Ok(found_l)
}

/// Dimension label from a generator count: `log2(count + 1)`, rejecting
/// counts that are not one less than a power of two (which cannot happen
/// for a minimal local set).
fn dimension_from_count(count: usize) -> Result<u32> {
    if count == 0 || !(count + 1).is_power_of_two() {
        return Err(Error::BadGeneratorCount { count });
    }
    Ok((count + 1).trailing_zeros())
}

/// Builds the full record (all generators + dimension) for a minimal local
/// set.
fn build_record(g: &Graph, l: &VertexSet) -> Result<LocalSetRecord> {
    let generators = generators_of(g, l)?;
    let dimension = dimension_from_count(generators.len())?;
    Ok(LocalSetRecord {
        set: l.clone(),
        generators,
        dimension,
    })
}

/// The lexicographically least inclusion-minimal local set contained in
/// `bound`, if any. Exact: every local set inside `bound` is generated by a
/// solution of the confinement system, so none can be missed.
pub fn minimal_local_set_within(g: &Graph, bound: &VertexSet) -> Result<Option<LocalSetRecord>> {
    let mut locals: Vec<VertexSet> = confined_generators(g, bound)?
        .into_iter()
        .filter(|d| !d.is_empty())
        .map(|d| local_set_of(g, &d))
        .collect();
    locals.sort();
    locals.dedup();
    let mut best: Option<VertexSet> = None;
    for l in &locals {
        if locals.iter().any(|m| m != l && m.is_subset_of(l)) {
            continue;
        }
        match &best {
            Some(b) if b.to_vec() <= l.to_vec() => {}
            _ => best = Some(l.clone()),
        }
    }
    best.map(|l| build_record(g, &l)).transpose()
}

/// Computes a minimal local set cover: candidate generators are enumerated
/// by increasing size (lexicographic tie-break, sizes up to `cap_d`), their
/// local sets recorded when no larger than `cap_l`, and a greedy pass picks
/// for the lowest uncovered vertex the first candidate that is genuinely
/// minimal. Deterministic by construction.
pub fn mls_cover(g: &Graph, caps: &LocalSetCaps) -> Result<MlsCover> {
    let n = g.order();
    // Candidate local sets in first-discovery order.
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut candidates: Vec<VertexSet> = Vec::new();
    let mut indices: Vec<usize> = Vec::new();
    for size in 1..=caps.cap_d.min(n) {
        indices.clear();
        indices.extend(0..size);
        loop {
            let d = VertexSet::from_iter(n, indices.iter().copied());
            let l = local_set_of(g, &d);
            if l.len() <= caps.cap_l && seen.insert(l.clone()) {
                candidates.push(l);
            }
            if !next_combination(&mut indices, n) {
                break;
            }
        }
    }

    let mut minimal_cache: HashMap<VertexSet, bool> = HashMap::new();
    let mut covered = VertexSet::new(n);
    let mut sets: Vec<LocalSetRecord> = Vec::new();
    while covered.len() < n {
        let v = covered
            .complement()
            .first()
            .expect("an uncovered vertex exists");
        let mut chosen: Option<&VertexSet> = None;
        for l in &candidates {
            if !l.contains(v) {
                continue;
            }
            let minimal = match minimal_cache.get(l) {
                Some(&m) => m,
                None => {
                    let m = is_minimal_local_set(g, l, caps)?;
                    minimal_cache.insert(l.clone(), m);
                    m
                }
            };
            if minimal {
                chosen = Some(l);
                break;
            }
        }
        let l = chosen.ok_or(Error::NoCoveringSet { v })?;
        covered.union_with(l);
        sets.push(build_record(g, l)?);
    }
    Ok(MlsCover { sets })
}

/// Per-vertex types relative to a cover: the placement `(v ∈ D, v ∈ Odd(D))`
/// must agree across all generators of all covering sets, otherwise `⊥`.
///
/// Generators are recomputed in `g` — the cover sets are invariant under
/// local complementation but their generators are not, so the stored ones
/// only describe the graph the cover was built from.
pub fn vertex_types(g: &Graph, cover: &MlsCover) -> Vec<VertexType> {
    let n = g.order();
    let generators: Vec<Vec<VertexSet>> = cover
        .sets
        .iter()
        .map(|rec| generators_of(g, &rec.set).unwrap_or_default())
        .collect();
    (0..n)
        .map(|v| {
            let mut agreed: Option<VertexType> = None;
            for (rec, gens) in cover.sets.iter().zip(&generators) {
                if !rec.set.contains(v) {
                    continue;
                }
                debug_assert!(!gens.is_empty(), "cover set must stay a local set of g");
                for d in gens {
                    let odd = g.odd_neighborhood(d);
                    let t = match (d.contains(v), odd.contains(v)) {
                        (true, false) => VertexType::X,
                        (true, true) => VertexType::Y,
                        (false, true) => VertexType::Z,
                        (false, false) => unreachable!("v lies in D ∪ Odd(D)"),
                    };
                    match agreed {
                        None => agreed = Some(t),
                        Some(prev) if prev == t => {}
                        Some(_) => return VertexType::Bot,
                    }
                }
            }
            debug_assert!(agreed.is_some(), "cover must reach every vertex");
            agreed.unwrap_or(VertexType::Bot)
        })
        .collect()
}

/// Whether `cover` is also an MLS cover of `g2`: every set must again be a
/// minimal local set there (generators recomputed, minimality rechecked).
pub fn is_cover_of(g2: &Graph, cover: &MlsCover, caps: &LocalSetCaps) -> Result<bool> {
    for rec in &cover.sets {
        if rec.set.universe() != g2.order() {
            return Err(Error::OrderMismatch {
                a: rec.set.universe(),
                b: g2.order(),
            });
        }
        if !is_minimal_local_set(g2, &rec.set, caps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of a minimal local set of `g`. Errors if `l` is not a local
/// set or its generator count is impossible for a minimal one.
pub fn mls_dimension(g: &Graph, l: &VertexSet) -> Result<u32> {
    let count = generators_of(g, l)?.len();
    if count == 0 {
        return Err(Error::NotALocalSet(format!("{:?}", l.to_vec())));
    }
    dimension_from_count(count)
}

/// Whether a set that is a minimal local set of both graphs has the same
/// dimension in both. Errors if it is not a local set of either.
pub fn mls_dimension_equal(g1: &Graph, g2: &Graph, l: &VertexSet) -> Result<bool> {
    Ok(mls_dimension(g1, l)? == mls_dimension(g2, l)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    fn vs(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    /// Every local set of `g` (as a set), by brute force over all `D ⊆ V`.
    fn all_local_sets(g: &Graph) -> Vec<VertexSet> {
        let n = g.order();
        let mut out: Vec<VertexSet> = Vec::new();
        for mask in 1u64..(1 << n) {
            let d = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            out.push(local_set_of(g, &d));
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn star_center_and_isolated_vertex_generators() {
        // K_{1,3}: the centre generates the whole vertex set.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let gens = generators_of(&star, &VertexSet::full(4)).unwrap();
        assert!(gens.contains(&vs(4, &[0])));

        // An isolated vertex is its own local set with generator itself.
        let mut g = Graph::new(3).unwrap();
        g.set_edge(0, 1, true);
        assert_eq!(generators_of(&g, &vs(3, &[2])).unwrap(), vec![vs(3, &[2])]);

        // A non-local set yields no generators.
        assert!(generators_of(&g, &vs(3, &[1, 2])).unwrap().is_empty());
    }

    #[test]
    fn generators_match_bruteforce() {
        let mut rng = StdRng::seed_from_u64(0x10ca1);
        for _ in 0..60 {
            let n = rng.random_range(2..8);
            let g = random_graph(&mut rng, n, 0.5);
            let mask: u64 = rng.random_range(1..1 << n);
            let l = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            let mut expected: Vec<VertexSet> = (1u64..1 << n)
                .map(|dm| VertexSet::from_iter(n, (0..n).filter(|&v| dm >> v & 1 == 1)))
                .filter(|d| local_set_of(&g, d) == l)
                .collect();
            expected.sort_by_key(|d| (d.len(), d.to_vec()));
            assert_eq!(generators_of(&g, &l).unwrap(), expected);
        }
    }

    #[test]
    fn minimality_examples_and_bruteforce() {
        let caps = LocalSetCaps::default();
        // A single-vertex local set is minimal.
        let mut g = Graph::new(3).unwrap();
        g.set_edge(0, 1, true);
        assert!(is_minimal_local_set(&g, &vs(3, &[2]), &caps).unwrap());

        // The union of two disjoint edges is a local set but not minimal.
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(is_local_set(&two, &VertexSet::full(4)).unwrap());
        assert!(!is_minimal_local_set(&two, &VertexSet::full(4), &caps).unwrap());

        // Random graphs against the brute-force local-set lattice.
        let mut rng = StdRng::seed_from_u64(0x3141);
        for _ in 0..40 {
            let n = rng.random_range(2..8);
            let g = random_graph(&mut rng, n, 0.5);
            let locals = all_local_sets(&g);
            for l in &locals {
                let minimal = !locals.iter().any(|m| m != l && m.is_subset_of(l));
                assert_eq!(is_minimal_local_set(&g, l, &caps).unwrap(), minimal);
            }
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let g = Graph::new(20).unwrap();
        let caps = LocalSetCaps { cap_d: 6, cap_l: 4 };
        let big = VertexSet::full(20);
        assert!(matches!(
            is_minimal_local_set(&g, &big, &caps),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn cover_of_single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cover = mls_cover(&g, &LocalSetCaps::default()).unwrap();
        assert_eq!(cover.sets.len(), 1);
        assert_eq!(cover.sets[0].set, VertexSet::full(2));
        // Generators {0}, {1}, {0,1} — dimension 2.
        assert_eq!(cover.sets[0].generators.len(), 3);
        assert_eq!(cover.sets[0].dimension, 2);
    }

    #[test]
    fn cover_of_path3_uses_two_sets() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let cover = mls_cover(&g, &LocalSetCaps::default()).unwrap();
        assert!(cover.sets.len() <= 2);
        assert_eq!(cover.union(3), VertexSet::full(3));
    }

    #[test]
    fn cover_union_is_total() {
        let caps = LocalSetCaps::default();
        // Exhaustive up to 5 vertices.
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0..(1u64 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let cover = mls_cover(&g, &caps).unwrap();
                assert_eq!(cover.union(n), VertexSet::full(n));
                for rec in &cover.sets {
                    assert!(is_minimal_local_set(&g, &rec.set, &caps).unwrap());
                }
            }
        }
        // Sampled for 6..=8.
        let mut rng = StdRng::seed_from_u64(0xc07e7);
        for _ in 0..150 {
            let n = rng.random_range(6..9);
            let g = random_graph(&mut rng, n, 0.4);
            let cover = mls_cover(&g, &caps).unwrap();
            assert_eq!(cover.union(n), VertexSet::full(n));
        }
    }

    #[test]
    fn edge_cover_types_are_bot() {
        // Dimension-2 sets see each vertex from disagreeing generators.
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cover = mls_cover(&g, &LocalSetCaps::default()).unwrap();
        assert_eq!(vertex_types(&g, &cover), vec![VertexType::Bot; 2]);
        assert_eq!(cover.sets[0].dimension, 2);
    }

    #[test]
    fn pendant_vertex_is_type_x() {
        // P4: {0,1} is an MLS with unique generator {0}, so 0 has type X
        // whenever that is the only covering set of 0.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let l = vs(4, &[0, 1]);
        assert_eq!(generators_of(&g, &l).unwrap(), vec![vs(4, &[0])]);
        let cover = mls_cover(&g, &LocalSetCaps::default()).unwrap();
        let covering: Vec<_> = cover.sets_containing(0).collect();
        assert_eq!(covering.len(), 1);
        assert_eq!(covering[0].set, l);
        assert_eq!(vertex_types(&g, &cover)[0], VertexType::X);
    }

    #[test]
    fn local_set_family_is_lc_invariant() {
        let mut rng = StdRng::seed_from_u64(0x1cfa);
        for _ in 0..500 {
            let n = rng.random_range(2..9);
            let g = random_graph(&mut rng, n, 0.5);
            let mut h = g.clone();
            for _ in 0..rng.random_range(1..6) {
                let v = rng.random_range(0..n);
                if h.degree(v) >= 1 {
                    h.local_complement_in_place(v);
                }
            }
            assert_eq!(all_local_sets(&g), all_local_sets(&h));
        }
    }

    #[test]
    fn cover_survives_local_complementation() {
        let caps = LocalSetCaps::default();
        let mut rng = StdRng::seed_from_u64(0xc0fe);
        for _ in 0..80 {
            let n = rng.random_range(2..9);
            let g = random_graph(&mut rng, n, 0.5);
            let cover = mls_cover(&g, &caps).unwrap();
            assert!(is_cover_of(&g, &cover, &caps).unwrap());
            let v = rng.random_range(0..n);
            let h = g.local_complement(v);
            assert!(is_cover_of(&h, &cover, &caps).unwrap());
        }
        // And a genuine failure: the K_2 cover against the empty graph.
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cover = mls_cover(&k2, &caps).unwrap();
        let empty = Graph::new(2).unwrap();
        assert!(!is_cover_of(&empty, &cover, &caps).unwrap());
    }

    #[test]
    fn type_update_tables() {
        let caps = LocalSetCaps::default();
        let mut rng = StdRng::seed_from_u64(0x7ab1e5);
        let lc_at = |t: VertexType| match t {
            VertexType::Y => VertexType::Z,
            VertexType::Z => VertexType::Y,
            other => other,
        };
        let lc_nbr = |t: VertexType| match t {
            VertexType::X => VertexType::Y,
            VertexType::Y => VertexType::X,
            other => other,
        };
        let pivot_end = |t: VertexType| match t {
            VertexType::X => VertexType::Z,
            VertexType::Z => VertexType::X,
            other => other,
        };
        let mut pivots = 0;
        for _ in 0..120 {
            let n = rng.random_range(2..9);
            let g = random_graph(&mut rng, n, 0.5);
            let cover = mls_cover(&g, &caps).unwrap();
            let before = vertex_types(&g, &cover);

            let v = rng.random_range(0..n);
            let h = g.local_complement(v);
            let after = vertex_types(&h, &cover);
            for u in 0..n {
                let expect = if u == v {
                    lc_at(before[u])
                } else if g.has_edge(u, v) {
                    lc_nbr(before[u])
                } else {
                    before[u]
                };
                assert_eq!(after[u], expect, "lc at {v}, vertex {u}");
            }

            let edges = g.edges();
            if let Some(&(a, b)) = edges.first() {
                pivots += 1;
                let h = g.pivot(a, b).unwrap();
                let after = vertex_types(&h, &cover);
                for u in 0..n {
                    let expect = if u == a || u == b {
                        pivot_end(before[u])
                    } else {
                        before[u]
                    };
                    assert_eq!(after[u], expect, "pivot {a}-{b}, vertex {u}");
                }
            }
        }
        assert!(pivots > 50, "pivot table must actually get exercised");
    }

    #[test]
    fn dimension_comparison() {
        let caps = LocalSetCaps::default();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let l = VertexSet::full(2);
        assert!(mls_dimension_equal(&k2, &k2, &l).unwrap());

        // In the empty graph {0,1} is a local set (generator {0,1}) of
        // dimension 1, against dimension 2 in K_2.
        let empty = Graph::new(2).unwrap();
        assert!(!mls_dimension_equal(&k2, &empty, &l).unwrap());

        // LC images keep dimensions of minimal local sets.
        let mut rng = StdRng::seed_from_u64(0xd1);
        for _ in 0..40 {
            let n = rng.random_range(2..8);
            let g = random_graph(&mut rng, n, 0.5);
            let cover = mls_cover(&g, &caps).unwrap();
            let v = rng.random_range(0..n);
            let h = g.local_complement(v);
            for rec in &cover.sets {
                assert!(mls_dimension_equal(&g, &h, &rec.set).unwrap());
            }
        }
    }

    #[test]
    fn minimal_within_bound() {
        // In P4 the closed neighbourhood of 1 is {0,1,2}; the least minimal
        // local set inside it is {0,1}.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let rec = minimal_local_set_within(&g, &vs(4, &[0, 1, 2]))
            .unwrap()
            .expect("a local set exists inside");
        assert_eq!(rec.set, vs(4, &[0, 1]));

        // No local set lives strictly inside a bound that isn't one.
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(minimal_local_set_within(&k3, &vs(3, &[0]))
            .unwrap()
            .is_none());
    }
}
