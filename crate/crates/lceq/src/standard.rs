//! Standard form: reshaping a pair of graphs against a shared MLS cover.
//!
//! A graph is in *standard form* with respect to a minimal-local-set cover
//! when no vertex has type `Y`, every neighbour of a type-`X` vertex has
//! type `Z` with the `X` vertex preceding it in the integer order (so the
//! `X` vertices form an independent set), and every closed `X`-star
//! `{u} ∪ N(u)` belongs to the cover. Both input graphs are driven into
//! this shape by plain local complementations and pivots, tracked as
//! witnesses; several intermediate checks can already certify that the
//! graphs are not equivalent under any local unitary.
//!
//! The reduction is a small state machine:
//!
//! 1. compute a cover of the first graph and require it to also cover the
//!    second;
//! 2. pivot away `XX`-edges;
//! 3. complement on the `X` end of `XY`-edges (back to 2);
//! 4. complement on `Y` vertices (back to 2);
//! 5. pivot away `X⊥`-edges;
//! 6. pivot `XZ`-edges whose `Z` end precedes the `X` end;
//! 7. for an `X` vertex whose closed star is not a minimal local set of
//!    dimension 1, adjoin a minimal local set found inside the star to the
//!    cover — rejecting if that set has different dimensions in the two
//!    graphs — and return to 5;
//! 8. adjoin every closed `X`-star to the cover.
//!
//! Between 7 and 8 the types of the two graphs and the neighbourhoods of
//! their `X` vertices must already agree; disagreement is a definitive
//! non-equivalence verdict.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::localsets::{
    is_cover_of, is_minimal_local_set, minimal_local_set_within, mls_cover, mls_dimension,
    mls_dimension_equal, vertex_types, LocalSetCaps, MlsCover, VertexType,
};
use crate::witness::{LocalOp, Witness};

/// Options for [`standardize_pair`].
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardizeOptions {
    /// Enumeration caps passed through to the local-set machinery.
    pub caps: LocalSetCaps,
    /// Optional pass that adjoins minimal local sets found inside oversized
    /// type-`Z` populations (> ⌊n/2⌋ + 1) to shrink them. Purely a
    /// performance knob for the later pipeline stages; off by default.
    pub reduce_z: bool,
}

/// A standardized pair: both graphs, the shared cover, the common type
/// map, and replayable per-graph operation witnesses.
#[derive(Debug, Clone)]
pub struct StandardFormResult {
    pub g1: Graph,
    pub g2: Graph,
    pub cover: MlsCover,
    pub types: Vec<VertexType>,
    pub w1: Witness,
    pub w2: Witness,
    /// Minimal local sets chosen and adjoined to the cover at step 7 (and
    /// by the optional Z-reduction pass), in order. The closed `X`-stars
    /// adjoined by the final step are forced and therefore not recorded.
    pub added_sets: Vec<VertexSet>,
}

impl StandardFormResult {
    /// Vertices of the given type.
    pub fn vertices_of_type(&self, t: VertexType) -> VertexSet {
        let mut s = VertexSet::new(self.types.len());
        for (v, &tv) in self.types.iter().enumerate() {
            if tv == t {
                s.insert(v);
            }
        }
        s
    }
}

/// Outcome of the standardization stage.
#[derive(Debug, Clone)]
pub enum StandardizeOutcome {
    Standardized(Box<StandardFormResult>),
    /// The named check certifies the graphs are not LU-equivalent.
    NotEquivalent { check: &'static str },
}

struct State<'a> {
    opts: &'a StandardizeOptions,
    orig: [Graph; 2],
    h: [Graph; 2],
    ops: [Vec<LocalOp>; 2],
    cover: MlsCover,
    types: [Vec<VertexType>; 2],
    added_sets: Vec<VertexSet>,
    extensions: usize,
}

impl State<'_> {
    fn n(&self) -> usize {
        self.h[0].order()
    }

    /// `2|V_Y| + |V_X|` summed over both graphs — strictly decreases at
    /// every action of steps 2–5.
    fn measure(&self) -> usize {
        self.types
            .iter()
            .flat_map(|ts| ts.iter())
            .map(|t| match t {
                VertexType::Y => 2,
                VertexType::X => 1,
                _ => 0,
            })
            .sum()
    }

    fn retype(&mut self, i: usize) {
        self.types[i] = vertex_types(&self.h[i], &self.cover);
    }

    /// Local complementation on graph `i` at `v`, recorded and retyped.
    fn lc(&mut self, i: usize, v: usize) {
        #[cfg(debug_assertions)]
        let predicted = predict_lc(&self.types[i], &self.h[i], v);
        self.h[i].local_complement_in_place(v);
        self.ops[i].push(LocalOp::Lc { v });
        self.retype(i);
        #[cfg(debug_assertions)]
        debug_assert_eq!(self.types[i], predicted, "type table for \u{22c6}{v}");
    }

    /// Pivot on graph `i` along the edge `u`–`v`, recorded and retyped.
    fn pivot(&mut self, i: usize, u: usize, v: usize) -> Result<()> {
        #[cfg(debug_assertions)]
        let predicted = predict_pivot(&self.types[i], u, v);
        self.h[i] = self.h[i].pivot(u, v)?;
        self.ops[i].push(LocalOp::Pivot { u, v });
        self.retype(i);
        #[cfg(debug_assertions)]
        debug_assert_eq!(self.types[i], predicted, "type table for pivot {u}-{v}");
        Ok(())
    }

    fn ty(&self, i: usize, v: usize) -> VertexType {
        self.types[i][v]
    }

    /// First edge of graph `i` whose endpoint types match `(a, b)` in
    /// either orientation; returned with the `a`-typed endpoint first.
    fn find_edge(&self, i: usize, a: VertexType, b: VertexType) -> Option<(usize, usize)> {
        for (u, v) in self.h[i].edges() {
            if self.ty(i, u) == a && self.ty(i, v) == b {
                return Some((u, v));
            }
            if self.ty(i, u) == b && self.ty(i, v) == a {
                return Some((v, u));
            }
        }
        None
    }

    /// Adjoins a set to the cover and retypes both graphs. The caller must
    /// have verified it is a minimal local set of both.
    ///
    /// Every extension before the final closed-star pass blanks at least
    /// one vertex to ⊥ and ⊥ never reverts, so a run can only add O(n)
    /// sets; the budget turns a violation of that argument into an error
    /// instead of a loop.
    fn adjoin(&mut self, l: &VertexSet) -> Result<()> {
        if self.cover.contains_set(l) {
            return Err(Error::Internal(
                "cover extension made no progress (set already present)".into(),
            ));
        }
        if self.extensions > 4 * self.n() + 4 {
            return Err(Error::Internal("cover extension budget exceeded".into()));
        }
        self.extensions += 1;
        let generators = crate::localsets::generators_of(&self.h[0], l)?;
        let dimension = mls_dimension(&self.h[0], l)?;
        self.cover.sets.push(crate::localsets::LocalSetRecord {
            set: l.clone(),
            generators,
            dimension,
        });
        self.retype(0);
        self.retype(1);
        Ok(())
    }

    /// Steps 2–4: eliminate `XX`-edges, `XY`-edges, and `Y` vertices.
    fn steps_two_to_four(&mut self) -> Result<()> {
        loop {
            let before = self.measure();
            let mut acted = false;
            for i in 0..2 {
                if let Some((u, v)) = self.find_edge(i, VertexType::X, VertexType::X) {
                    self.pivot(i, u, v)?;
                    acted = true;
                    break;
                }
            }
            if !acted {
                for i in 0..2 {
                    if let Some((x, _)) = self.find_edge(i, VertexType::X, VertexType::Y) {
                        self.lc(i, x);
                        acted = true;
                        break;
                    }
                }
            }
            if !acted {
                for i in 0..2 {
                    if let Some(y) = (0..self.n()).find(|&v| self.ty(i, v) == VertexType::Y) {
                        self.lc(i, y);
                        acted = true;
                        break;
                    }
                }
            }
            if !acted {
                return Ok(());
            }
            debug_assert!(
                self.measure() < before,
                "the 2|Y|+|X| measure must strictly decrease in steps 2-4"
            );
        }
    }

    /// Step 5: eliminate `X⊥`-edges.
    fn step_five(&mut self) -> Result<()> {
        loop {
            let before = self.measure();
            let mut acted = false;
            for i in 0..2 {
                if let Some((u, v)) = self.find_edge(i, VertexType::X, VertexType::Bot) {
                    self.pivot(i, u, v)?;
                    acted = true;
                    break;
                }
            }
            if !acted {
                return Ok(());
            }
            debug_assert!(
                self.measure() < before,
                "the 2|Y|+|X| measure must strictly decrease in step 5"
            );
        }
    }

    /// Step 6: orient `XZ`-edges so the `X` end precedes the `Z` end.
    fn step_six(&mut self) -> Result<()> {
        loop {
            let mut acted = false;
            for i in 0..2 {
                let bad = self.h[i].edges().into_iter().find_map(|(u, v)| {
                    let (tu, tv) = (self.ty(i, u), self.ty(i, v));
                    match (tu, tv) {
                        // u < v always holds in the edge list; a violation
                        // means the Z end is the smaller one.
                        (VertexType::Z, VertexType::X) => Some((v, u)),
                        _ => None,
                    }
                });
                if let Some((x, z)) = bad {
                    debug_assert!(z < x);
                    self.pivot(i, x, z)?;
                    acted = true;
                    break;
                }
            }
            if !acted {
                return Ok(());
            }
        }
    }

    /// Optional pass: while some graph has more than ⌊n/2⌋ + 1 type-`Z`
    /// vertices, adjoin a minimal local set found among them. Returns true
    /// if the cover changed (caller restarts from step 2).
    fn reduce_z_once(&mut self) -> Result<bool> {
        if !self.opts.reduce_z {
            return Ok(false);
        }
        for i in 0..2 {
            let zs = {
                let mut s = VertexSet::new(self.n());
                for v in 0..self.n() {
                    if self.ty(i, v) == VertexType::Z {
                        s.insert(v);
                    }
                }
                s
            };
            if zs.len() <= self.n() / 2 + 1 {
                continue;
            }
            if let Some(rec) = minimal_local_set_within(&self.h[i], &zs)? {
                if !self.cover.contains_set(&rec.set)
                    && is_minimal_local_set(&self.h[1 - i], &rec.set, &self.opts.caps)?
                    && mls_dimension_equal(&self.h[0], &self.h[1], &rec.set)?
                {
                    self.adjoin(&rec.set)?;
                    self.added_sets.push(rec.set);
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Step 7 body: find an `X` vertex whose closed star is not a minimal
    /// local set of dimension 1 and adjoin an inner minimal local set.
    fn step_seven(&mut self) -> Result<Step7> {
        for i in 0..2 {
            for u in 0..self.n() {
                if self.ty(i, u) != VertexType::X {
                    continue;
                }
                let closed = closed_star(&self.h[i], u);
                if is_minimal_local_set(&self.h[i], &closed, &self.opts.caps)?
                    && mls_dimension(&self.h[i], &closed)? == 1
                {
                    continue;
                }
                let rec = minimal_local_set_within(&self.h[i], &closed)?.ok_or_else(|| {
                    Error::Internal("a closed star always contains a local set".into())
                })?;
                if !is_minimal_local_set(&self.h[1 - i], &rec.set, &self.opts.caps)? {
                    return Ok(Step7::Reject("step7-minimality"));
                }
                if !mls_dimension_equal(&self.h[0], &self.h[1], &rec.set)? {
                    return Ok(Step7::Reject("step7-dimension"));
                }
                #[cfg(debug_assertions)]
                let bots_before = self.count_bot();
                self.adjoin(&rec.set)?;
                self.added_sets.push(rec.set);
                #[cfg(debug_assertions)]
                debug_assert!(
                    self.count_bot() > bots_before,
                    "each cover extension at step 7 must blank out a vertex"
                );
                return Ok(Step7::Extended);
            }
        }
        Ok(Step7::Clean)
    }

    #[cfg(debug_assertions)]
    fn count_bot(&self) -> usize {
        self.types
            .iter()
            .flat_map(|ts| ts.iter())
            .filter(|&&t| t == VertexType::Bot)
            .count()
    }
}

enum Step7 {
    /// Every closed `X`-star is a minimal local set of dimension 1.
    Clean,
    /// The cover grew; resume from step 5.
    Extended,
    /// A chosen inner set fails minimality or dimension in the other graph.
    Reject(&'static str),
}

fn closed_star(g: &Graph, u: usize) -> VertexSet {
    let mut s = g.neighborhood(u);
    s.insert(u);
    s
}

#[cfg(debug_assertions)]
fn predict_lc(types: &[VertexType], g_before: &Graph, v: usize) -> Vec<VertexType> {
    types
        .iter()
        .enumerate()
        .map(|(u, &t)| {
            if u == v {
                match t {
                    VertexType::Y => VertexType::Z,
                    VertexType::Z => VertexType::Y,
                    other => other,
                }
            } else if g_before.has_edge(u, v) {
                match t {
                    VertexType::X => VertexType::Y,
                    VertexType::Y => VertexType::X,
                    other => other,
                }
            } else {
                t
            }
        })
        .collect()
}

#[cfg(debug_assertions)]
fn predict_pivot(types: &[VertexType], a: usize, b: usize) -> Vec<VertexType> {
    types
        .iter()
        .enumerate()
        .map(|(u, &t)| {
            if u == a || u == b {
                match t {
                    VertexType::X => VertexType::Z,
                    VertexType::Z => VertexType::X,
                    other => other,
                }
            } else {
                t
            }
        })
        .collect()
}

/// Drive both graphs into standard form over a shared cover, or certify
/// non-equivalence along the way.
///
/// Both graphs must have the same order and be connected. The returned
/// witnesses replay the recorded operations: applying `w1` to `g1` yields
/// the standardized first graph, and likewise for `w2`.
pub fn standardize_pair(
    g1: &Graph,
    g2: &Graph,
    opts: &StandardizeOptions,
) -> Result<StandardizeOutcome> {
    if g1.order() != g2.order() {
        return Err(Error::OrderMismatch {
            a: g1.order(),
            b: g2.order(),
        });
    }
    for (g, which) in [(g1, "first"), (g2, "second")] {
        let comps = g.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected {
                components: comps.len(),
                hint: format!(
                    "standard form requires connected inputs; the {which} graph has {} components",
                    comps.len()
                ),
            });
        }
    }

    // Step 1: a cover of the first graph that must also cover the second.
    let cover = mls_cover(g1, &opts.caps)?;
    if !is_cover_of(g2, &cover, &opts.caps)? {
        return Ok(StandardizeOutcome::NotEquivalent { check: "mls-cover" });
    }

    let types1 = vertex_types(g1, &cover);
    let types2 = vertex_types(g2, &cover);
    let mut st = State {
        opts,
        orig: [g1.clone(), g2.clone()],
        h: [g1.clone(), g2.clone()],
        ops: [Vec::new(), Vec::new()],
        cover,
        types: [types1, types2],
        added_sets: Vec::new(),
        extensions: 0,
    };

    loop {
        st.steps_two_to_four()?;
        loop {
            st.step_five()?;
            st.step_six()?;
            if st.reduce_z_once()? {
                break; // cover changed: restart from step 2
            }
            match st.step_seven()? {
                Step7::Extended => continue, // back to step 5
                Step7::Reject(check) => {
                    return Ok(StandardizeOutcome::NotEquivalent { check });
                }
                Step7::Clean => {
                    return finish(st);
                }
            }
        }
    }
}

/// Final agreement checks and step 8.
fn finish(mut st: State<'_>) -> Result<StandardizeOutcome> {
    if st.types[0] != st.types[1] {
        return Ok(StandardizeOutcome::NotEquivalent { check: "types" });
    }
    let n = st.n();
    for v in 0..n {
        if st.ty(0, v) == VertexType::X && st.h[0].neighborhood(v) != st.h[1].neighborhood(v) {
            return Ok(StandardizeOutcome::NotEquivalent {
                check: "x-neighbourhoods",
            });
        }
    }

    // Step 8: adjoin every closed X-star. Types agree and so do the
    // X-neighbourhoods, so one pass over the first graph suffices.
    for u in 0..n {
        if st.ty(0, u) != VertexType::X {
            continue;
        }
        let closed = closed_star(&st.h[0], u);
        debug_assert_eq!(closed, closed_star(&st.h[1], u));
        if !st.cover.contains_set(&closed) {
            debug_assert!(is_minimal_local_set(&st.h[0], &closed, &st.opts.caps)?);
            debug_assert_eq!(mls_dimension(&st.h[0], &closed)?, 1);
            st.adjoin(&closed)?;
        }
    }

    check_postconditions(&st)?;

    let w1 = Witness::new(&st.orig[0], &st.h[0], st.ops[0].clone());
    let w2 = Witness::new(&st.orig[1], &st.h[1], st.ops[1].clone());
    let [gg1, gg2] = st.h;
    Ok(StandardizeOutcome::Standardized(Box::new(
        StandardFormResult {
            g1: gg1,
            g2: gg2,
            cover: st.cover,
            types: st.types[0].clone(),
            w1,
            w2,
            added_sets: st.added_sets,
        },
    )))
}

fn check_postconditions(st: &State<'_>) -> Result<()> {
    let n = st.n();
    let fail = |what: &str| Err(Error::Internal(format!("standard form violated: {what}")));
    if st.types[0] != st.types[1] {
        return fail("type maps diverged after step 8");
    }
    for i in 0..2 {
        for v in 0..n {
            if st.ty(i, v) == VertexType::Y {
                return fail("a type-Y vertex survived");
            }
        }
        for (u, v) in st.h[i].edges() {
            let (tu, tv) = (st.ty(i, u), st.ty(i, v));
            // Edge lists are ordered u < v, so an X endpoint must sit at
            // the smaller slot and see a Z at the larger one.
            let xz_ok = match (tu, tv) {
                (VertexType::X, VertexType::Z) => true,
                (VertexType::X, _) | (_, VertexType::X) => false,
                _ => true,
            };
            if !xz_ok {
                return fail("an X vertex has a neighbour that is not a later Z");
            }
        }
        for u in 0..n {
            if st.ty(i, u) == VertexType::X {
                let closed = closed_star(&st.h[i], u);
                if !st.cover.contains_set(&closed) {
                    return fail("a closed X-star is missing from the cover");
                }
            }
        }
    }
    Ok(())
}

/// Convenience check used by the equivalence pipeline: do two standardized
/// graphs have identical types and identical `X`-neighbourhoods? (True by
/// construction for results of [`standardize_pair`].)
pub fn check_same_types_and_x_neighbourhoods(res: &StandardFormResult) -> bool {
    let t1 = vertex_types(&res.g1, &res.cover);
    let t2 = vertex_types(&res.g2, &res.cover);
    if t1 != t2 {
        return false;
    }
    (0..res.g1.order()).all(|v| {
        t1[v] != VertexType::X || res.g1.neighborhood(v) == res.g2.neighborhood(v)
    })
}
