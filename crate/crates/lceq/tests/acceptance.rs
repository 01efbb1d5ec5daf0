//! End-to-end acceptance checks; populated alongside the decision pipeline.
