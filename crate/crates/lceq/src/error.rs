//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the equivalence library.
///
/// Variants are grouped by the subsystem that raises them; the CLI maps them
/// onto exit codes (resource limits and the unresolved Class-α case get
/// dedicated codes so scripted callers can distinguish "don't know" from
/// "no").
#[derive(Debug, Error)]
pub enum Error {
    // ---- graphs ------------------------------------------------------
    #[error("graphs support at most {max} vertices, requested {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {v} out of range for a graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("graphs have different orders: {a} vs {b}")]
    OrderMismatch { a: usize, b: usize },

    #[error("pivot requires an edge: vertices {u} and {v} are not adjacent")]
    PivotNonEdge { u: usize, v: usize },

    #[error("common neighbourhood of the empty set is rejected (it would be all of V)")]
    EmptyCommonNeighborhood,

    #[error("invalid graph6 data: {0}")]
    Graph6(String),

    #[error("graph is disconnected ({components} components): {hint}")]
    Disconnected { components: usize, hint: String },

    // ---- multisets and generalized local complementation --------------
    #[error("multiset level mismatch: {a} vs {b}")]
    LevelMismatch { a: u32, b: u32 },

    #[error("multiset support is not independent: vertices {u} and {v} are adjacent")]
    SupportNotIndependent { u: usize, v: usize },

    #[error(
        "multiset is not {r}-incident: K = {{{k}}} gives S._\u{39b}^K = {value}, not divisible by {modulus}"
    )]
    NotIncident {
        r: u32,
        k: String,
        value: u64,
        modulus: u64,
    },

    #[error("operation requires {expected}, multiset has level {got}")]
    WrongLevel { expected: String, got: u32 },

    #[error("multiset is genuine; the level-lowering reduction does not apply")]
    GenuineMultiset,

    // ---- linear algebra ------------------------------------------------
    #[error("linear system shape mismatch: {0}")]
    ShapeMismatch(String),

    // ---- local sets / standard form -------------------------------------
    #[error("resource limit exceeded in {what} (limit {limit})")]
    ResourceLimit { what: String, limit: usize },

    #[error("{0} is not a local set")]
    NotALocalSet(String),

    #[error("minimal local set has {count} generators; {count}+1 is not a power of two")]
    BadGeneratorCount { count: usize },

    #[error("no minimal local set covering vertex {v} was found within the enumeration caps")]
    NoCoveringSet { v: usize },

    // ---- equivalence decision -------------------------------------------
    #[error("graphs are Class \u{3b1} and the basis-pair search was inconclusive")]
    ClassAlphaUnresolved,

    #[error("witness invalid at {stage}: {detail}")]
    WitnessInvalid { stage: String, detail: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    // ---- io ----------------------------------------------------------------
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
