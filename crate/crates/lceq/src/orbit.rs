//! Brute-force orbit enumeration.
//!
//! These breadth-first searches are the reference oracles the fast solvers
//! are measured against in the test suite. They are exact but exponential,
//! so they carry hard caps on graph order and on explored states.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::multiset::VertexMultiset;
use crate::witness::LocalOp;

/// Caps for the orbit searches.
#[derive(Debug, Clone, Copy)]
pub struct OrbitLimits {
    /// Largest graph order accepted.
    pub max_order: usize,
    /// Largest number of distinct states explored before giving up.
    pub max_states: usize,
}

impl OrbitLimits {
    /// Default caps for the plain local-complementation orbit.
    pub fn lc_default() -> OrbitLimits {
        OrbitLimits {
            max_order: 12,
            max_states: 4_000_000,
        }
    }

    /// Default caps for the level-2 orbit (heavier per-state move set).
    pub fn lcr_default() -> OrbitLimits {
        OrbitLimits {
            max_order: 10,
            max_states: 1_000_000,
        }
    }
}

/// A fully enumerated orbit with parent pointers for path extraction.
pub struct Orbit {
    index: HashMap<Vec<u64>, usize>,
    graphs: Vec<Graph>,
    parents: Vec<Option<(usize, LocalOp)>>,
}

impl Orbit {
    /// Number of distinct graphs in the orbit.
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    /// Always false: an orbit contains at least its root.
    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// The graphs, in BFS discovery order (root first).
    pub fn members(&self) -> &[Graph] {
        &self.graphs
    }

    /// Index of `g` in discovery order, if present.
    pub fn index_of(&self, g: &Graph) -> Option<usize> {
        self.index.get(&g.bitkey()).copied()
    }

    /// Whether `g` lies in the orbit.
    pub fn contains(&self, g: &Graph) -> bool {
        self.index_of(g).is_some()
    }

    /// Operation sequence from the root to `g`, if `g` is in the orbit.
    pub fn path_to(&self, g: &Graph) -> Option<Vec<LocalOp>> {
        let mut at = self.index_of(g)?;
        let mut ops = Vec::new();
        while let Some((parent, op)) = &self.parents[at] {
            ops.push(op.clone());
            at = *parent;
        }
        ops.reverse();
        Some(ops)
    }
}

fn bfs<F>(g: &Graph, limits: OrbitLimits, mut moves: F) -> Result<Orbit>
where
    F: FnMut(&Graph, &mut Vec<(Graph, LocalOp)>),
{
    if g.order() > limits.max_order {
        return Err(Error::ResourceLimit {
            what: "orbit graph order".into(),
            limit: limits.max_order,
        });
    }
    let mut orbit = Orbit {
        index: HashMap::new(),
        graphs: vec![g.clone()],
        parents: vec![None],
    };
    orbit.index.insert(g.bitkey(), 0);
    let mut frontier = 0;
    let mut buf: Vec<(Graph, LocalOp)> = Vec::new();
    while frontier < orbit.graphs.len() {
        let here = orbit.graphs[frontier].clone();
        buf.clear();
        moves(&here, &mut buf);
        for (next, op) in buf.drain(..) {
            let key = next.bitkey();
            if orbit.index.contains_key(&key) {
                continue;
            }
            if orbit.graphs.len() == limits.max_states {
                return Err(Error::ResourceLimit {
                    what: "orbit states".into(),
                    limit: limits.max_states,
                });
            }
            orbit.index.insert(key, orbit.graphs.len());
            orbit.graphs.push(next);
            orbit.parents.push(Some((frontier, op)));
        }
        frontier += 1;
    }
    Ok(orbit)
}

/// Orbit of `g` under local complementation, optionally restricted to
/// complementing inside `allowed`.
pub fn lc_orbit(g: &Graph, allowed: Option<&VertexSet>, limits: OrbitLimits) -> Result<Orbit> {
    let verts: Vec<usize> = match allowed {
        Some(set) => set.to_vec(),
        None => (0..g.order()).collect(),
    };
    bfs(g, limits, |here, out| {
        for &v in &verts {
            // Degree <= 1 complementations are identities; skip the clone.
            if here.degree(v) >= 2 {
                out.push((here.local_complement(v), LocalOp::Lc { v }));
            }
        }
    })
}

/// Enumerates the independent, 2-incident vertex *sets* of `g` with at least
/// two members. Together with plain complementations these generate every
/// level-2 move (a level-2 multiset splits into a set part at level 2 plus a
/// level-1 part).
fn two_incident_sets(g: &Graph) -> Vec<VertexSet> {
    let mut found = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn dfs(g: &Graph, start: usize, chosen: &mut Vec<usize>, found: &mut Vec<VertexSet>) {
        if chosen.len() >= 2 {
            let set = VertexSet::from_iter(g.order(), chosen.iter().copied());
            let s = VertexMultiset::from_pairs(
                g.order(),
                2,
                &chosen.iter().map(|&v| (v, 1)).collect::<Vec<_>>(),
            );
            if g.is_r_incident(&s) {
                found.push(set);
            }
        }
        for v in start..g.order() {
            if chosen.iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            chosen.push(v);
            dfs(g, v + 1, chosen, found);
            chosen.pop();
        }
    }
    dfs(g, 0, &mut chosen, &mut found);
    found
}

/// Orbit of `g` under level-2 moves: local complementations plus `⋆2` of
/// independent 2-incident sets.
pub fn lcr_orbit_small(g: &Graph, limits: OrbitLimits) -> Result<Orbit> {
    bfs(g, limits, |here, out| {
        for v in 0..here.order() {
            if here.degree(v) >= 2 {
                out.push((here.local_complement(v), LocalOp::Lc { v }));
            }
        }
        for set in two_incident_sets(here) {
            let s = VertexMultiset::from_pairs(
                here.order(),
                2,
                &set.iter().map(|v| (v, 1)).collect::<Vec<_>>(),
            );
            let next = here.apply_rlc_unchecked(&s, None);
            if next != *here {
                out.push((next, LocalOp::rlc_from_multiset(&s)));
            }
        }
    })
}
