//! Machine-checkable equivalence witnesses.
//!
//! A [`Witness`] packages the source and target graphs (as graph6 strings)
//! together with a sequence of local operations transforming one into the
//! other. The JSON shape is stable so external tooling can audit results:
//!
//! ```json
//! {
//!   "source": "DqK",
//!   "target": "Dhc",
//!   "ops": [
//!     {"op": "lc", "v": 3},
//!     {"op": "pivot", "u": 0, "v": 1},
//!     {"op": "rlc", "r": 2, "mult": {"0": 2, "1": 1}}
//!   ]
//! }
//! ```
//!
//! Replay validates every precondition as it goes: pivots must sit on edges,
//! generalized complementations must have independent, r-incident
//! multipliers. A witness that replays to its stated target is a proof of
//! equivalence that needs no trust in the solver that produced it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::g6::{from_graph6, to_graph6};
use crate::graph::Graph;
use crate::multiset::{VertexMultiset, MAX_LEVEL};

/// One local operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum LocalOp {
    /// Local complementation at vertex `v`.
    Lc { v: usize },
    /// Pivot on the edge `u`–`v` (same effect as `lc u, lc v, lc u`).
    Pivot { u: usize, v: usize },
    /// Level-`r` generalized local complementation with the given
    /// vertex-to-multiplicity map (residues mod `2^r`).
    Rlc {
        r: u32,
        #[serde(with = "mult_map")]
        mult: BTreeMap<usize, u32>,
    },
}

/// JSON object keys are strings; spell the vertex keys out explicitly so the
/// map survives the internally-tagged enum round trip.
mod mult_map {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<usize, u32>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        ser.collect_map(m.iter().map(|(v, c)| (v.to_string(), *c)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<usize, u32>, D::Error> {
        let raw = BTreeMap::<String, u32>::deserialize(de)?;
        raw.into_iter()
            .map(|(k, c)| {
                let v = k
                    .parse::<usize>()
                    .map_err(|_| D::Error::custom(format!("bad vertex key {k:?}")))?;
                Ok((v, c))
            })
            .collect()
    }
}

impl fmt::Display for LocalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalOp::Lc { v } => write!(f, "lc {v}"),
            LocalOp::Pivot { u, v } => write!(f, "pivot {u}-{v}"),
            LocalOp::Rlc { r, mult } => {
                write!(f, "rlc level {r} {{")?;
                for (i, (v, m)) in mult.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}:{m}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl LocalOp {
    /// Convenience constructor for an `rlc` entry from a multiset.
    pub fn rlc_from_multiset(s: &VertexMultiset) -> LocalOp {
        LocalOp::Rlc {
            r: s.level(),
            mult: s.iter().collect(),
        }
    }
}

/// Applies a single operation, validating its preconditions.
pub fn apply_op(g: &Graph, op: &LocalOp) -> Result<Graph> {
    let n = g.order();
    match op {
        LocalOp::Lc { v } => {
            if *v >= n {
                return Err(Error::VertexOutOfRange { v: *v, n });
            }
            Ok(g.local_complement(*v))
        }
        LocalOp::Pivot { u, v } => {
            if *u >= n {
                return Err(Error::VertexOutOfRange { v: *u, n });
            }
            if *v >= n {
                return Err(Error::VertexOutOfRange { v: *v, n });
            }
            g.pivot(*u, *v)
        }
        LocalOp::Rlc { r, mult } => {
            if *r == 0 || *r > MAX_LEVEL {
                return Err(Error::WrongLevel {
                    expected: format!("1..={MAX_LEVEL}"),
                    got: *r,
                });
            }
            let mut s = VertexMultiset::new(n, *r);
            for (&v, &m) in mult {
                if v >= n {
                    return Err(Error::VertexOutOfRange { v, n });
                }
                s.set(v, m);
            }
            g.apply_rlc(&s)
        }
    }
}

/// A replayable certificate that `source` transforms into `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// graph6 of the starting graph.
    pub source: String,
    /// graph6 of the resulting graph.
    pub target: String,
    /// Operations applied left to right.
    pub ops: Vec<LocalOp>,
}

impl Witness {
    /// Builds a witness from in-memory graphs; does not validate `ops`.
    pub fn new(source: &Graph, target: &Graph, ops: Vec<LocalOp>) -> Witness {
        Witness {
            source: to_graph6(source),
            target: to_graph6(target),
            ops,
        }
    }

    /// The do-nothing witness for `g`.
    pub fn identity(g: &Graph) -> Witness {
        Witness::new(g, g, Vec::new())
    }

    /// Parses the stored source graph.
    pub fn source_graph(&self) -> Result<Graph> {
        from_graph6(&self.source)
    }

    /// Parses the stored target graph.
    pub fn target_graph(&self) -> Result<Graph> {
        from_graph6(&self.target)
    }

    /// Number of `rlc` entries (level-r complementations).
    pub fn rlc_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, LocalOp::Rlc { .. }))
            .count()
    }

    /// Replays the operations from `source` and checks the result against
    /// `target`, returning the final graph.
    pub fn replay(&self) -> Result<Graph> {
        let invalid = |stage: &str, detail: String| Error::WitnessInvalid {
            stage: stage.to_string(),
            detail,
        };
        let mut g = self
            .source_graph()
            .map_err(|e| invalid("source", e.to_string()))?;
        let target = self
            .target_graph()
            .map_err(|e| invalid("target", e.to_string()))?;
        for (i, op) in self.ops.iter().enumerate() {
            g = apply_op(&g, op).map_err(|e| invalid(&format!("op {i} ({op})"), e.to_string()))?;
        }
        if g != target {
            return Err(invalid(
                "result",
                format!(
                    "replayed graph {} does not match target {}",
                    to_graph6(&g),
                    self.target
                ),
            ));
        }
        Ok(g)
    }

    /// Full check against explicit endpoint graphs: the stored strings must
    /// decode to `g1`/`g2` and the replay must succeed.
    pub fn verify(&self, g1: &Graph, g2: &Graph) -> Result<()> {
        if self.source != to_graph6(g1) {
            return Err(Error::WitnessInvalid {
                stage: "source".into(),
                detail: "stored source differs from the supplied graph".into(),
            });
        }
        if self.target != to_graph6(g2) {
            return Err(Error::WitnessInvalid {
                stage: "target".into(),
                detail: "stored target differs from the supplied graph".into(),
            });
        }
        self.replay()?;
        Ok(())
    }

    /// Serializes to the stable JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serialization cannot fail")
    }

    /// Parses a witness from JSON.
    pub fn from_json(text: &str) -> Result<Witness> {
        Ok(serde_json::from_str(text)?)
    }
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

    #[test]
    fn json_shape_is_stable() {
        let ops = vec![
            LocalOp::Lc { v: 3 },
            LocalOp::Pivot { u: 0, v: 1 },
            LocalOp::Rlc {
                r: 2,
                mult: [(0, 2), (1, 1)].into_iter().collect(),
            },
        ];
        let w = Witness {
            source: "DqK".into(),
            target: "Dhc".into(),
            ops,
        };
        let compact = serde_json::to_string(&w).unwrap();
        assert_eq!(
            compact,
            r#"{"source":"DqK","target":"Dhc","ops":[{"op":"lc","v":3},{"op":"pivot","u":0,"v":1},{"op":"rlc","r":2,"mult":{"0":2,"1":1}}]}"#
        );
        assert_eq!(Witness::from_json(&compact).unwrap(), w);
    }

    #[test]
    fn replay_demo_rlc() {
        let g = demo_graph();
        let s = VertexMultiset::from_pairs(6, 2, &[(0, 2), (1, 1), (2, 1)]);
        let h = g.apply_rlc(&s).unwrap();
        let w = Witness::new(&g, &h, vec![LocalOp::rlc_from_multiset(&s)]);
        assert_eq!(w.replay().unwrap(), h);
        w.verify(&g, &h).unwrap();
        assert_eq!(w.rlc_count(), 1);
    }

    #[test]
    fn replay_lc_and_pivot() {
        let g = demo_graph();
        // lc 4 toggles 0-1 on (both neighbours of 4), leaving a pivotable edge.
        let h = g.local_complement(4).pivot(0, 1).unwrap();
        let w = Witness::new(
            &g,
            &h,
            vec![LocalOp::Lc { v: 4 }, LocalOp::Pivot { u: 0, v: 1 }],
        );
        w.verify(&g, &h).unwrap();

        // Involution: running the sequence backwards restores the source.
        let back = Witness::new(
            &h,
            &g,
            vec![LocalOp::Pivot { u: 0, v: 1 }, LocalOp::Lc { v: 4 }],
        );
        back.verify(&h, &g).unwrap();
    }

    #[test]
    fn replay_rejects_bad_witnesses() {
        let g = demo_graph();
        let h = g.local_complement(0);

        // Wrong target.
        let w = Witness::new(&g, &g, vec![LocalOp::Lc { v: 0 }]);
        match w.replay() {
            Err(Error::WitnessInvalid { stage, .. }) => assert_eq!(stage, "result"),
            other => panic!("expected result mismatch, got {other:?}"),
        }

        // Pivot off an edge: vertices 1 and 2 are non-adjacent.
        let w = Witness::new(&g, &h, vec![LocalOp::Pivot { u: 1, v: 2 }]);
        match w.replay() {
            Err(Error::WitnessInvalid { stage, detail }) => {
                assert!(stage.starts_with("op 0"), "stage was {stage}");
                assert!(detail.contains("pivot"), "detail was {detail}");
            }
            other => panic!("expected pivot failure, got {other:?}"),
        }

        // Non-incident rlc multiset.
        let w = Witness::new(
            &g,
            &h,
            vec![LocalOp::Rlc {
                r: 2,
                mult: [(0, 1), (1, 1), (2, 1)].into_iter().collect(),
            }],
        );
        assert!(matches!(
            w.replay(),
            Err(Error::WitnessInvalid { stage, .. }) if stage.starts_with("op 0")
        ));

        // Garbled source string.
        let w = Witness {
            source: "~~~not graph6".into(),
            target: "DqK".into(),
            ops: vec![],
        };
        assert!(matches!(
            w.replay(),
            Err(Error::WitnessInvalid { stage, .. }) if stage == "source"
        ));

        // Vertex out of range.
        let w = Witness::new(&g, &h, vec![LocalOp::Lc { v: 9 }]);
        assert!(w.replay().is_err());
    }

    #[test]
    fn verify_pins_endpoints() {
        let g = demo_graph();
        let h = g.local_complement(0);
        let w = Witness::new(&g, &h, vec![LocalOp::Lc { v: 0 }]);
        // Supplying the wrong endpoint graphs is rejected even though the
        // witness itself replays fine.
        assert!(w.verify(&h, &g).is_err());
        assert!(w.verify(&g, &g).is_err());
        w.verify(&g, &h).unwrap();
    }

    #[test]
    fn identity_witness() {
        let g = demo_graph();
        let w = Witness::identity(&g);
        w.verify(&g, &g).unwrap();
        assert!(w.ops.is_empty());
    }
}
