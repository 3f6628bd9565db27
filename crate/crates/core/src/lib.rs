//! Parallel and sequential black pebbling of DAGs: legality checking and
//! cost metrics, exact optimal-cost search, depth-reducibility oracles,
//! hardness-reduction gadgets, and integer-program models with exact
//! rational verification.

pub mod b2lc;
pub mod depth_reduce;
pub mod graph;
pub mod lp;
pub mod pebbling;
pub mod reductions;
pub mod search;
pub mod suite;
