//! Vertex multisets over `Z/2^r` and generalized local complementation.
//!
//! A level-`r` multiset assigns each vertex a residue mod `2^r`. Multisets
//! with independent support that satisfy the *r-incidence* conditions act on
//! graphs: the pair `u`–`v` is toggled exactly when `S·Λ({u,v}) ≡ 2^(r-1)
//! (mod 2^r)`, where `S·Λ(K)` sums the multiset over the common
//! neighbourhood of `K`. At level 1 this is ordinary simultaneous local
//! complementation; higher levels interpolate between it and the identity.

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, VertexSet};
use std::collections::BTreeMap;

/// Largest supported level; keeps `2^r` comfortably inside `u32`.
pub const MAX_LEVEL: u32 = 30;

/// A multiset of vertices with multiplicities in `Z/2^r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexMultiset {
    n: usize,
    r: u32,
    vals: Vec<u32>, // each strictly below 2^r
}

impl VertexMultiset {
    /// The zero multiset on `0..n` at level `r`.
    pub fn new(n: usize, r: u32) -> Self {
        assert!((1..=MAX_LEVEL).contains(&r), "level {r} out of range");
        VertexMultiset {
            n,
            r,
            vals: vec![0; n],
        }
    }

    /// Builds a multiset from `(vertex, multiplicity)` pairs; repeated
    /// vertices accumulate mod `2^r`.
    pub fn from_pairs(n: usize, r: u32, pairs: &[(usize, u32)]) -> Self {
        let mut s = VertexMultiset::new(n, r);
        for &(v, m) in pairs {
            let cur = s.get(v);
            s.set(v, cur.wrapping_add(m));
        }
        s
    }

    #[inline(always)]
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn level(&self) -> u32 {
        self.r
    }

    /// `2^r`, the modulus of the multiplicities.
    #[inline(always)]
    pub fn modulus(&self) -> u32 {
        1 << self.r
    }

    #[inline(always)]
    pub fn get(&self, v: usize) -> u32 {
        self.vals[v]
    }

    /// Sets the multiplicity of `v`, reduced mod `2^r`.
    #[inline(always)]
    pub fn set(&mut self, v: usize, m: u32) {
        self.vals[v] = m & (self.modulus() - 1);
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|&m| m == 0)
    }

    /// Vertices with nonzero multiplicity.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_iter(
            self.n,
            self.vals
                .iter()
                .enumerate()
                .filter(|(_, &m)| m != 0)
                .map(|(v, _)| v),
        )
    }

    /// Nonzero entries as `(vertex, multiplicity)`, increasing by vertex.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.vals
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(v, &m)| (v, m))
    }

    /// Pointwise sum mod `2^r`; the levels must agree.
    pub fn add(&self, other: &VertexMultiset) -> Result<VertexMultiset> {
        if self.r != other.r {
            return Err(Error::LevelMismatch {
                a: self.r,
                b: other.r,
            });
        }
        debug_assert_eq!(self.n, other.n);
        let mask = self.modulus() - 1;
        let vals = self
            .vals
            .iter()
            .zip(&other.vals)
            .map(|(a, b)| (a + b) & mask)
            .collect();
        Ok(VertexMultiset {
            n: self.n,
            r: self.r,
            vals,
        })
    }

    /// The same action one level up: every multiplicity doubled at level
    /// `r+1`. `G ⋆(r+1) 2S = G ⋆r S`.
    pub fn double_lifted(&self) -> VertexMultiset {
        assert!(self.r < MAX_LEVEL, "level {} cannot be lifted", self.r);
        VertexMultiset {
            n: self.n,
            r: self.r + 1,
            vals: self.vals.iter().map(|&m| m << 1).collect(),
        }
    }

    /// Halves an all-even multiset down to level `r-1`.
    ///
    /// # Panics
    /// If the level is 1 or any multiplicity is odd.
    pub fn halved(&self) -> VertexMultiset {
        assert!(self.r > 1, "cannot halve below level 1");
        assert!(
            self.vals.iter().all(|&m| m % 2 == 0),
            "halving requires every multiplicity to be even"
        );
        VertexMultiset {
            n: self.n,
            r: self.r - 1,
            vals: self.vals.iter().map(|&m| m >> 1).collect(),
        }
    }
}

impl std::fmt::Debug for VertexMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{m}")?;
        }
        write!(f, "}}@{}", self.r)
    }
}

/// A witness that a multiset fails the r-incidence conditions.
#[derive(Debug, Clone)]
pub struct IncidenceViolation {
    pub k: VertexSet,
    pub value: u64,
    pub modulus: u64,
}

impl IncidenceViolation {
    pub(crate) fn into_error(self, r: u32) -> Error {
        Error::NotIncident {
            r,
            k: self
                .k
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            value: self.value,
            modulus: self.modulus,
        }
    }
}

impl Graph {
    /// True when no two members of `s` are adjacent.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        self.independence_violation(s).is_none()
    }

    /// First adjacent pair inside `s`, if any.
    pub fn independence_violation(&self, s: &VertexSet) -> Option<(usize, usize)> {
        for u in s.iter() {
            let hit = self.neighborhood(u).intersection(s);
            if let Some(v) = hit.first() {
                return Some((u.min(v), u.max(v)));
            }
        }
        None
    }

    /// `S·Λ(K)`: the multiset summed over the common neighbourhood of `k`.
    ///
    /// `k` must be nonempty (the common neighbourhood of `∅` is rejected).
    pub fn s_dot_lambda(&self, s: &VertexMultiset, k: &VertexSet) -> Result<u64> {
        debug_assert_eq!(s.universe(), self.order());
        let lambda = self.common_neighborhood(k)?;
        Ok(lambda.iter().map(|v| s.get(v) as u64).sum())
    }

    /// Checks the level-`r` incidence conditions for `s`.
    ///
    /// For every `k` in `[0, r)` and every `K ⊆ V∖supp(S)` with `|K| = k+2`,
    /// the sum `S·Λ(K)` must vanish mod `2^(r-k-δ)` where `δ = 1` exactly
    /// when `k = 0`. At level 1 all moduli degenerate to 1, so every
    /// multiset qualifies.
    pub fn is_r_incident(&self, s: &VertexMultiset) -> bool {
        self.r_incidence_violation(s).is_none()
    }

    /// First failing incidence condition in depth-first lexicographic order,
    /// or `None` when `s` is r-incident.
    pub fn r_incidence_violation(&self, s: &VertexMultiset) -> Option<IncidenceViolation> {
        debug_assert_eq!(s.universe(), self.order());
        let r = s.level();
        if r == 1 {
            return None;
        }
        let supp = s.support();
        let candidates: Vec<usize> = supp.complement().to_vec();
        // Λ(K) ∩ supp(S) is all that matters for the sums; carry that
        // intersection down the subset tree and prune once it is empty
        // (every extension then sums to zero and passes trivially).
        let supp_words: Vec<u64> = supp.words().to_vec();
        let max_size = (r + 1) as usize;
        let mut chosen: Vec<usize> = Vec::with_capacity(max_size);

        fn dfs(
            g: &Graph,
            s: &VertexMultiset,
            candidates: &[usize],
            start: usize,
            chosen: &mut Vec<usize>,
            partial: &[u64],
            max_size: usize,
        ) -> Option<IncidenceViolation> {
            let t = chosen.len();
            if t >= 2 {
                let value: u64 = BitIter::new(partial).map(|v| s.get(v) as u64).sum();
                let r = s.level();
                let exp = if t == 2 { r - 1 } else { r + 2 - t as u32 };
                let modulus = 1u64 << exp;
                if !value.is_multiple_of(modulus) {
                    return Some(IncidenceViolation {
                        k: VertexSet::from_iter(g.order(), chosen.iter().copied()),
                        value,
                        modulus,
                    });
                }
            }
            if t == max_size || partial.iter().all(|&w| w == 0) {
                return None;
            }
            for i in start..candidates.len() {
                let v = candidates[i];
                let next: Vec<u64> = partial
                    .iter()
                    .zip(g.row(v))
                    .map(|(a, b)| a & b)
                    .collect();
                chosen.push(v);
                if let Some(viol) = dfs(g, s, candidates, i + 1, chosen, &next, max_size) {
                    return Some(viol);
                }
                chosen.pop();
            }
            None
        }

        dfs(self, s, &candidates, 0, &mut chosen, &supp_words, max_size)
    }

    /// Generalized local complementation `G ⋆r S`.
    ///
    /// Validates that the support is independent and that `s` is r-incident
    /// (returning the offending edge or set `K` otherwise), then toggles
    /// every pair `u`–`v` with `S·Λ({u,v}) ≡ 2^(r-1) (mod 2^r)`. With
    /// `S = {v: 1}` at level 1 this is exactly `local_complement(v)`.
    pub fn apply_rlc(&self, s: &VertexMultiset) -> Result<Graph> {
        let supp = s.support();
        if let Some((u, v)) = self.independence_violation(&supp) {
            return Err(Error::SupportNotIndependent { u, v });
        }
        if let Some(viol) = self.r_incidence_violation(s) {
            return Err(viol.into_error(s.level()));
        }
        Ok(self.apply_rlc_unchecked(s, None))
    }

    /// `apply_rlc` with a zone hint: additionally asserts (debug builds) that
    /// every toggled edge stays inside `z`, the expected toggle zone.
    pub fn apply_rlc_hinted(&self, s: &VertexMultiset, z: &VertexSet) -> Result<Graph> {
        let supp = s.support();
        if let Some((u, v)) = self.independence_violation(&supp) {
            return Err(Error::SupportNotIndependent { u, v });
        }
        if let Some(viol) = self.r_incidence_violation(s) {
            return Err(viol.into_error(s.level()));
        }
        Ok(self.apply_rlc_unchecked(s, Some(z)))
    }

    /// Toggle pass of `apply_rlc` without the (expensive) precondition
    /// checks. Callers must know `s` is independent and r-incident; the bulk
    /// scan uses this on instances that are incident by construction.
    pub fn apply_rlc_unchecked(&self, s: &VertexMultiset, z_hint: Option<&VertexSet>) -> Graph {
        debug_assert_eq!(s.universe(), self.order());
        let supp = s.support();
        let n = self.order();
        let r = s.level();
        let half = 1u64 << (r - 1);
        let modulus = 1u64 << r;
        let supp_words: Vec<u64> = supp.words().to_vec();
        let mut out = self.clone();
        for u in 0..n {
            for v in u + 1..n {
                // Only support members contribute to S·Λ({u,v}).
                let sum: u64 = BitIter::new(
                    &self
                        .row(u)
                        .iter()
                        .zip(self.row(v))
                        .zip(&supp_words)
                        .map(|((a, b), c)| a & b & c)
                        .collect::<Vec<u64>>(),
                )
                .map(|w| s.get(w) as u64)
                .sum();
                if sum % modulus == half {
                    // Independence makes Λ of a support-touching pair miss
                    // the support entirely, so such pairs never toggle.
                    debug_assert!(!supp.contains(u) && !supp.contains(v));
                    if let Some(z) = z_hint {
                        debug_assert!(
                            z.contains(u) && z.contains(v),
                            "toggled edge {u}-{v} leaves the hinted zone"
                        );
                    }
                    out.toggle_edge(u, v);
                }
            }
        }
        out
    }

    /// Whether an r-incident, independent multiset is *genuine*: some
    /// `K ⊆ V∖supp(S)` with `|K| ≥ 2` has `S·Λ(K)` odd.
    ///
    /// Only `K` equal to a common neighbourhood class matters: grouping the
    /// support by neighbourhood, `S·Λ(K)` is the total weight of the classes
    /// whose neighbourhood contains `K`, so an odd value exists iff some
    /// class with `|N(u)| ≥ 2` has odd weight (take an inclusion-maximal
    /// one).
    pub fn is_genuine(&self, s: &VertexMultiset) -> Result<bool> {
        let supp = s.support();
        if let Some((u, v)) = self.independence_violation(&supp) {
            return Err(Error::SupportNotIndependent { u, v });
        }
        if let Some(viol) = self.r_incidence_violation(s) {
            return Err(viol.into_error(s.level()));
        }
        Ok(self
            .support_classes(s)
            .iter()
            .any(|(nbhd, &w)| nbhd.len() >= 2 && w % 2 == 1))
    }

    /// Support vertices grouped by neighbourhood, with total weights.
    fn support_classes(&self, s: &VertexMultiset) -> BTreeMap<VertexSet, u64> {
        let mut classes: BTreeMap<VertexSet, u64> = BTreeMap::new();
        for (v, m) in s.iter() {
            *classes.entry(self.neighborhood(v)).or_insert(0) += m as u64;
        }
        classes
    }

    /// Reduces a non-genuine multiset one level down.
    ///
    /// Each neighbourhood class of the support is concentrated onto its
    /// smallest vertex; classes whose neighbourhood has fewer than two
    /// vertices are dropped entirely (they influence no `Λ(K)` with
    /// `|K| ≥ 2`, hence neither the incidence conditions nor the toggles).
    /// Non-genuineness makes every surviving total even, so the result can
    /// be halved to level `r-1` with `G ⋆r S = G ⋆(r-1) S'`.
    pub fn reduce_nongenuine(&self, s: &VertexMultiset) -> Result<VertexMultiset> {
        if s.level() < 2 {
            return Err(Error::WrongLevel {
                expected: "level at least 2".into(),
                got: s.level(),
            });
        }
        if self.is_genuine(s)? {
            return Err(Error::GenuineMultiset);
        }
        let mut concentrated = VertexMultiset::new(s.universe(), s.level());
        for (nbhd, w) in self.support_classes(s) {
            if nbhd.len() < 2 {
                continue;
            }
            debug_assert_eq!(w % 2, 0, "non-genuine multisets have even classes");
            let rep = s
                .iter()
                .map(|(v, _)| v)
                .find(|&v| self.neighborhood(v) == nbhd)
                .expect("class has at least one member");
            concentrated.set(rep, (w % s.modulus() as u64) as u32);
        }
        Ok(concentrated.halved())
    }
}

/// Splits a level-2 multiset into a level-2 set part and a level-1 set part
/// with `G ⋆2 S = (G ⋆2 S2) ⋆1 S1`.
///
/// `S1` collects the vertices with multiplicity 2 or 3; `S2` those with odd
/// multiplicity. A plain set (multiplicities in `{0,1}`) yields `S1 = ∅`.
pub fn decompose_2lc(s: &VertexMultiset) -> Result<(VertexSet, VertexSet)> {
    if s.level() != 2 {
        return Err(Error::WrongLevel {
            expected: "level exactly 2".into(),
            got: s.level(),
        });
    }
    let n = s.universe();
    let s1 = VertexSet::from_iter(n, (0..n).filter(|&v| s.get(v) >= 2));
    let s2 = VertexSet::from_iter(n, (0..n).filter(|&v| s.get(v) % 2 == 1));
    Ok((s2, s1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_graph() -> Graph {
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

    /// `S = {a:2, b:1, c:1}` at level 2: the running 2-incident example.
    fn demo_multiset() -> VertexMultiset {
        VertexMultiset::from_pairs(6, 2, &[(0, 2), (1, 1), (2, 1)])
    }

    #[test]
    fn multiset_arithmetic() {
        let a = VertexMultiset::from_pairs(6, 2, &[(0, 3)]);
        let b = VertexMultiset::from_pairs(6, 2, &[(0, 2)]);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.get(0), 1);
        assert_eq!(sum.support().to_vec(), vec![0]);

        let other_level = VertexMultiset::new(6, 3);
        assert!(matches!(
            a.add(&other_level),
            Err(Error::LevelMismatch { a: 2, b: 3 })
        ));

        let lifted = a.double_lifted();
        assert_eq!((lifted.level(), lifted.get(0)), (3, 6));
        assert_eq!(lifted.halved(), a);
    }

    #[test]
    fn s_dot_lambda_demo_values() {
        let g = demo_graph();
        let s = demo_multiset();
        let k = VertexSet::from_iter(6, [3, 4, 5]);
        assert_eq!(g.s_dot_lambda(&s, &k).unwrap(), 2); // Λ = {a}
        let k = VertexSet::from_iter(6, [4, 5]);
        assert_eq!(g.s_dot_lambda(&s, &k).unwrap(), 4); // Λ = {a,b,c}
        let k = VertexSet::from_iter(6, [3, 4]);
        assert_eq!(g.s_dot_lambda(&s, &k).unwrap(), 2); // Λ = {a}
        let k = VertexSet::from_iter(6, [3, 5]);
        assert_eq!(g.s_dot_lambda(&s, &k).unwrap(), 2); // Λ = {a,e}
        assert!(g.s_dot_lambda(&s, &VertexSet::new(6)).is_err());
    }

    #[test]
    fn incidence_demo() {
        let g = demo_graph();
        assert!(g.is_r_incident(&demo_multiset()));

        // The all-ones multiset on {a,b,c} is not 2-incident; the first
        // violation in search order is Λ({d,e}) = {a} with odd sum 1.
        let bad = VertexMultiset::from_pairs(6, 2, &[(0, 1), (1, 1), (2, 1)]);
        let viol = g.r_incidence_violation(&bad).unwrap();
        assert_eq!(viol.k.to_vec(), vec![3, 4]);
        assert_eq!((viol.value, viol.modulus), (1, 2));

        // Level 1 accepts anything.
        let any = VertexMultiset::from_pairs(6, 1, &[(0, 1), (3, 1)]);
        assert!(g.is_r_incident(&any));
    }

    #[test]
    fn rlc_demo_action() {
        let g = demo_graph();
        let h = g.apply_rlc(&demo_multiset()).unwrap();
        // Exactly d-e turns off and d-f turns on.
        let mut expected = g.clone();
        expected.toggle_edge(3, 4);
        expected.toggle_edge(3, 5);
        assert_eq!(h, expected);
    }

    #[test]
    fn rlc_level_one_singleton_is_local_complement() {
        let g = demo_graph();
        for v in 0..6 {
            let s = VertexMultiset::from_pairs(6, 1, &[(v, 1)]);
            assert_eq!(g.apply_rlc(&s).unwrap(), g.local_complement(v));
        }
    }

    #[test]
    fn rlc_rejects_bad_inputs() {
        let g = demo_graph();
        // d and e are adjacent.
        let s = VertexMultiset::from_pairs(6, 1, &[(3, 1), (4, 1)]);
        assert!(matches!(
            g.apply_rlc(&s),
            Err(Error::SupportNotIndependent { u: 3, v: 4 })
        ));
        let bad = VertexMultiset::from_pairs(6, 2, &[(0, 1), (1, 1), (2, 1)]);
        assert!(matches!(g.apply_rlc(&bad), Err(Error::NotIncident { .. })));
    }

    #[test]
    fn rlc_is_self_inverse_here() {
        let g = demo_graph();
        let s = demo_multiset();
        let h = g.apply_rlc(&s).unwrap();
        assert_eq!(h.apply_rlc(&s).unwrap(), g);
    }

    #[test]
    fn rlc_variants_agree() {
        let g = demo_graph();
        let s = demo_multiset();
        let checked = g.apply_rlc(&s).unwrap();
        assert_eq!(g.apply_rlc_unchecked(&s, None), checked);
        // Both toggled edges live inside {d,e,f}, so that zone hint passes.
        let zone = VertexSet::from_iter(6, [3, 4, 5]);
        assert_eq!(g.apply_rlc_hinted(&s, &zone).unwrap(), checked);
    }

    #[test]
    #[should_panic(expected = "leaves the hinted zone")]
    #[cfg(debug_assertions)]
    fn rlc_zone_hint_catches_stray_toggles() {
        let g = demo_graph();
        let zone = VertexSet::from_iter(6, [3, 4]); // misses f
        let _ = g.apply_rlc_hinted(&demo_multiset(), &zone);
    }

    #[test]
    fn doubling_lifts_level() {
        // ⋆1 on an independent set equals ⋆2 of the doubled multiset.
        let g = demo_graph();
        let s = VertexMultiset::from_pairs(6, 1, &[(1, 1), (2, 1)]); // b, c independent
        let lifted = s.double_lifted();
        assert!(g.is_r_incident(&lifted));
        assert_eq!(g.apply_rlc(&s).unwrap(), g.apply_rlc(&lifted).unwrap());
    }

    #[test]
    fn decompose_demo() {
        let (s2, s1) = decompose_2lc(&demo_multiset()).unwrap();
        assert_eq!(s1.to_vec(), vec![0]);
        assert_eq!(s2.to_vec(), vec![1, 2]);

        // Plain sets decompose trivially.
        let set = VertexMultiset::from_pairs(6, 2, &[(1, 1), (2, 1)]);
        let (s2, s1) = decompose_2lc(&set).unwrap();
        assert!(s1.is_empty());
        assert_eq!(s2.to_vec(), vec![1, 2]);

        let wrong = VertexMultiset::new(6, 3);
        assert!(matches!(
            decompose_2lc(&wrong),
            Err(Error::WrongLevel { got: 3, .. })
        ));
    }

    #[test]
    fn decompose_identity_holds() {
        let g = demo_graph();
        let s = demo_multiset();
        let (s2, s1) = decompose_2lc(&s).unwrap();
        let set_part = VertexMultiset::from_pairs(6, 2, &[(1, 1), (2, 1)]);
        assert_eq!(VertexSet::from_iter(6, set_part.iter().map(|(v, _)| v)), s2);
        let mut h = g.apply_rlc(&set_part).unwrap();
        for v in s1.iter() {
            h = h.local_complement(v);
        }
        assert_eq!(h, g.apply_rlc(&s).unwrap());
    }

    #[test]
    fn genuineness_demo() {
        let g = demo_graph();
        assert!(!g.is_genuine(&demo_multiset()).unwrap());

        // Doubled multisets are never genuine.
        let s = VertexMultiset::from_pairs(6, 1, &[(1, 1), (2, 1)]);
        assert!(!g.is_genuine(&s.double_lifted()).unwrap());
    }

    #[test]
    fn reduction_demo() {
        let g = demo_graph();
        let s = demo_multiset();
        let reduced = g.reduce_nongenuine(&s).unwrap();
        assert_eq!(reduced.level(), 1);
        assert_eq!(
            reduced,
            VertexMultiset::from_pairs(6, 1, &[(0, 1), (1, 1)])
        );
        // The reduction preserves the action.
        assert_eq!(g.apply_rlc(&s).unwrap(), g.apply_rlc(&reduced).unwrap());

        let level1 = VertexMultiset::from_pairs(6, 1, &[(0, 1)]);
        assert!(matches!(
            g.reduce_nongenuine(&level1),
            Err(Error::WrongLevel { got: 1, .. })
        ));
    }
}
