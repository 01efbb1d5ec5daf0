//! Simple undirected graphs over bit-packed adjacency rows, together with the
//! vertex-set type used throughout the crate.
//!
//! Vertices are `0..n`. The adjacency matrix is symmetric with a zero
//! diagonal; each row is stored as a fixed number of `u64` words so that
//! neighbourhood algebra (odd neighbourhoods, common neighbourhoods, local
//! complementation) reduces to word-wise XOR/AND/popcount.

use crate::error::{Error, Result};
use std::fmt;

/// Hard cap on the number of vertices.
///
/// Everything is word-packed, so the cap is a compile-level constant rather
/// than a type parameter. 256 leaves ample room for the auxiliary graphs
/// built during level-r decisions, which can be larger than their inputs.
pub const MAX_VERTICES: usize = 256;

const WORD_BITS: usize = 64;

#[inline(always)]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[inline(always)]
fn bit(v: usize) -> u64 {
    1u64 << (v % WORD_BITS)
}

#[inline(always)]
fn word(v: usize) -> usize {
    v / WORD_BITS
}

// ============================================================================
// VertexSet
// ============================================================================

/// A set of vertices of a fixed universe `0..n`, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    /// Empty set over the universe `0..n`.
    pub fn new(n: usize) -> Self {
        VertexSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    /// Full set `0..n`.
    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Builds a set from an iterator of vertex ids.
    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, vs: I) -> Self {
        let mut s = VertexSet::new(n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// Size of the universe (not the cardinality).
    #[inline(always)]
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        self.bits[word(v)] |= bit(v);
    }

    #[inline(always)]
    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        self.bits[word(v)] &= !bit(v);
    }

    #[inline(always)]
    pub fn toggle(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        self.bits[word(v)] ^= bit(v);
    }

    #[inline(always)]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[word(v)] & bit(v) != 0
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.bits.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterates members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(&self.bits)
    }

    /// In-place union.
    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    /// In-place intersection.
    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    /// In-place symmetric difference.
    pub fn symdiff_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
    }

    /// In-place difference (`self \ other`).
    pub fn difference_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn symdiff(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.symdiff_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// Complement within the universe.
    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet::full(self.n);
        s.difference_with(self);
        s
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    /// Members as a sorted vector (handy for reports and error messages).
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Raw words (little-endian bit order), mainly for hashing and linalg.
    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }

}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// ============================================================================
// Graph
// ============================================================================

/// An undirected simple graph on `n` labelled vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>, // n * words, row-major neighbour bitmasks
}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let words = words_for(n).max(1);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    /// Graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Graph6(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    #[inline(always)]
    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n })
        }
    }

    /// Number of vertices.
    #[inline(always)]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u * self.words + word(v)] & bit(v) != 0
    }

    /// Sets or clears the edge `u`–`v` (no-op allowed in either direction).
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u < self.n && v < self.n && u != v);
        if present {
            self.rows[u * self.words + word(v)] |= bit(v);
            self.rows[v * self.words + word(u)] |= bit(u);
        } else {
            self.rows[u * self.words + word(v)] &= !bit(v);
            self.rows[v * self.words + word(u)] &= !bit(u);
        }
    }

    /// Toggles the edge `u`–`v`.
    #[inline(always)]
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.n && v < self.n && u != v);
        self.rows[u * self.words + word(v)] ^= bit(v);
        self.rows[v * self.words + word(u)] ^= bit(u);
    }

    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighborhood(u).iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The open neighbourhood `N(v)` as a set.
    pub fn neighborhood(&self, v: usize) -> VertexSet {
        debug_assert!(v < self.n);
        VertexSet {
            n: self.n,
            bits: self.row(v).to_vec(),
        }
    }

    /// `Odd(D)`: vertices with an odd number of neighbours in `d`.
    ///
    /// Computed as the XOR of the adjacency rows of `d`'s members.
    pub fn odd_neighborhood(&self, d: &VertexSet) -> VertexSet {
        debug_assert_eq!(d.universe(), self.n);
        let mut acc = VertexSet::new(self.n);
        for v in d.iter() {
            for (a, b) in acc.bits.iter_mut().zip(self.row(v)) {
                *a ^= b;
            }
        }
        acc
    }

    /// `Λ(K)`: vertices adjacent to every member of `k`.
    ///
    /// The empty `k` is rejected: its common neighbourhood would be all of
    /// `V` by convention, which is never what callers mean here.
    pub fn common_neighborhood(&self, k: &VertexSet) -> Result<VertexSet> {
        debug_assert_eq!(k.universe(), self.n);
        if k.is_empty() {
            return Err(Error::EmptyCommonNeighborhood);
        }
        let mut acc = VertexSet::full(self.n);
        for v in k.iter() {
            for (a, b) in acc.bits.iter_mut().zip(self.row(v)) {
                *a &= b;
            }
        }
        Ok(acc)
    }

    /// `δ(S)`: vertices outside `s` with at least one neighbour in `s`.
    pub fn strict_neighborhood(&self, s: &VertexSet) -> VertexSet {
        debug_assert_eq!(s.universe(), self.n);
        let mut acc = VertexSet::new(self.n);
        for v in s.iter() {
            for (a, b) in acc.bits.iter_mut().zip(self.row(v)) {
                *a |= b;
            }
        }
        acc.difference_with(s);
        acc
    }

    /// Local complementation `G ⋆ v`: complements the subgraph induced on
    /// `N(v)`. Involutive; `N(v)` itself never changes.
    pub fn local_complement(&self, v: usize) -> Graph {
        let mut g = self.clone();
        g.local_complement_in_place(v);
        g
    }

    pub fn local_complement_in_place(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        let nv: Vec<u64> = self.row(v).to_vec();
        for u in BitIter::new(&nv) {
            // Complement u's adjacency on N(v) \ {u}. The u-v edge is safe:
            // v is not its own neighbour, so nv leaves bit v alone.
            let row_u = u * self.words;
            for (i, &w) in nv.iter().enumerate() {
                self.rows[row_u + i] ^= w;
            }
            self.rows[row_u + word(u)] ^= bit(u); // undo the self-bit flip
        }
    }

    /// Pivot `G ∧ uv = G ⋆u ⋆v ⋆u`; requires the edge `u`–`v`.
    pub fn pivot(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::PivotNonEdge { u, v });
        }
        let mut g = self.clone();
        g.local_complement_in_place(u);
        g.local_complement_in_place(v);
        g.local_complement_in_place(u);
        Ok(g)
    }

    /// All unordered twin pairs: distinct non-adjacent `u`, `v` with
    /// `N(u) = N(v)`.
    pub fn twins(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) && self.row(u) == self.row(v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced on `keep`, with vertices relabelled to `0..keep.len()`
    /// in increasing original order. Returns the graph and the map from new
    /// ids to original ids.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut g = Graph::new(map.len()).expect("induced subgraph is no larger");
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        (g, map)
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            comp.insert(start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                for u in self.neighborhood(v).iter() {
                    if !comp.contains(u) {
                        comp.insert(u);
                        frontier.push(u);
                    }
                }
            }
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Upper-triangle adjacency bits packed into words; a compact hash key
    /// for orbit searches (column-major order, matching the graph6 layout).
    pub fn bitkey(&self) -> Vec<u64> {
        let nbits = self.n * (self.n.saturating_sub(1)) / 2;
        let mut key = vec![0u64; words_for(nbits).max(1)];
        let mut idx = 0;
        for v in 1..self.n {
            for u in 0..v {
                if self.has_edge(u, v) {
                    key[idx / WORD_BITS] |= 1u64 << (idx % WORD_BITS);
                }
                idx += 1;
            }
        }
        key
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Iterator over set bits of a word slice.
pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        let cur = words.first().copied().unwrap_or(0);
        BitIter {
            words,
            idx: 0,
            cur,
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD_BITS + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The running 6-vertex example: vertices a..f = 0..5 with edges
    /// a-d a-e a-f b-e b-f c-e c-f d-e e-f.
    pub(crate) fn demo_graph() -> Graph {
        Graph::from_edges(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (2, 4),
                (2, 5),
                (3, 4),
                (4, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new(70);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(65);
        s.insert(3);
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![0, 3, 65]);
        assert!(s.contains(65));
        s.remove(3);
        assert_eq!(s.to_vec(), vec![0, 65]);
        assert_eq!(s.first(), Some(0));
        let c = s.complement();
        assert_eq!(c.len(), 68);
        assert!(!c.contains(0) && c.contains(3));
    }

    #[test]
    fn odd_neighborhood_examples() {
        // Path a-b-c: Odd({a,c}) = ∅ (b sees both, evenly).
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let d = VertexSet::from_iter(3, [0, 2]);
        assert!(path.odd_neighborhood(&d).is_empty());
        assert!(path.odd_neighborhood(&VertexSet::new(3)).is_empty());

        // Demo graph: Odd({d}) = N(d) = {a, e}.
        let g = demo_graph();
        let d = VertexSet::from_iter(6, [3]);
        assert_eq!(g.odd_neighborhood(&d).to_vec(), vec![0, 4]);
    }

    #[test]
    fn common_neighborhood_examples() {
        let g = demo_graph();
        let k = VertexSet::from_iter(6, [4, 5]);
        assert_eq!(g.common_neighborhood(&k).unwrap().to_vec(), vec![0, 1, 2]);
        let k = VertexSet::from_iter(6, [3, 4]);
        assert_eq!(g.common_neighborhood(&k).unwrap().to_vec(), vec![0]);
        let k = VertexSet::from_iter(6, [3, 5]);
        assert_eq!(g.common_neighborhood(&k).unwrap().to_vec(), vec![0, 4]);

        // Empty K is rejected, an isolated vertex gives the empty set.
        assert!(g.common_neighborhood(&VertexSet::new(6)).is_err());
        let iso = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let k = VertexSet::from_iter(3, [2]);
        assert!(iso.common_neighborhood(&k).unwrap().is_empty());
    }

    #[test]
    fn strict_neighborhood_examples() {
        let g = demo_graph();
        let s = VertexSet::from_iter(6, [0, 1]);
        // N(a) ∪ N(b) = {d,e,f} ∪ {e,f}; minus S itself.
        assert_eq!(g.strict_neighborhood(&s).to_vec(), vec![3, 4, 5]);
    }

    #[test]
    fn local_complement_triangle() {
        let tri = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let star = tri.local_complement(0);
        assert!(star.has_edge(0, 1) && star.has_edge(0, 2) && !star.has_edge(1, 2));
    }

    #[test]
    fn local_complement_demo() {
        let g = demo_graph();
        let h = g.local_complement(0);
        // N(a) = {d,e,f}: d-e toggled off, d-f on, e-f off.
        assert!(!h.has_edge(3, 4));
        assert!(h.has_edge(3, 5));
        assert!(!h.has_edge(4, 5));
        // Everything else untouched.
        assert!(h.has_edge(0, 3) && h.has_edge(0, 4) && h.has_edge(0, 5));
        assert!(h.has_edge(1, 4) && h.has_edge(1, 5) && h.has_edge(2, 4) && h.has_edge(2, 5));
        assert_eq!(h.local_complement(0), g);
    }

    #[test]
    fn pivot_path() {
        // Path a-b-c pivoted on ab: ⋆a⋆b⋆a gives edges {ab, ac}.
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let p = path.pivot(0, 1).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(p.pivot(0, 1).unwrap(), path);
        assert!(path.pivot(0, 2).is_err());
    }

    #[test]
    fn pivot_is_three_complementations_and_symmetric() {
        let g = demo_graph();
        for (u, v) in g.edges() {
            let p = g.pivot(u, v).unwrap();
            let q = g
                .local_complement(u)
                .local_complement(v)
                .local_complement(u);
            assert_eq!(p, q);
            assert_eq!(p, g.pivot(v, u).unwrap());
        }
    }

    #[test]
    fn twins_examples() {
        let g = demo_graph();
        assert_eq!(g.twins(), vec![(1, 2)]);
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(k3.twins().is_empty());
        let e3 = Graph::new(3).unwrap();
        assert_eq!(e3.twins(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].to_vec(), vec![0, 1]);
        assert_eq!(comps[1].to_vec(), vec![2, 3]);
        assert_eq!(comps[2].to_vec(), vec![4]);
        assert!(!g.is_connected());

        let (sub, map) = g.induced_subgraph(&VertexSet::from_iter(5, [1, 2, 3]));
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(sub.edges(), vec![(1, 2)]);
    }

    #[test]
    fn size_cap_enforced() {
        assert!(Graph::new(MAX_VERTICES).is_ok());
        assert!(matches!(
            Graph::new(MAX_VERTICES + 1),
            Err(Error::TooManyVertices { .. })
        ));
    }

    #[test]
    fn bitkey_distinguishes_graphs() {
        let g = demo_graph();
        let h = g.local_complement(0);
        assert_ne!(g.bitkey(), h.bitkey());
        assert_eq!(g.bitkey(), demo_graph().bitkey());
    }
}
