//! Exact independent-set counting on small graphs, and mechanical checks of
//! the classical extremal bounds on `i(G)` and the hard-core partition
//! function.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bitset graphs on at most 64 vertices, constructors, double
//!   covers, BFS layers, graph6 and edge-list I/O.
//! * [`counting`]: the pivot recursion `i(G) = i(G - w) + i(G - N[w])` for
//!   counts, one- and two-variable independence polynomials, plus a
//!   brute-force oracle.
//! * [`bounds`]: closed-form upper and lower bounds in log2 space, the
//!   `j`-functional and its one-step inequality.
//! * [`swap`]: the bipartite swapping bijection `I(G) x I(G) <-> J(G)`.
//! * [`entropy`]: exact entropies of the uniform independent set and an
//!   audit of the entropy chain for regular bipartite graphs.
//! * [`harness`]: corpora, the verification sweep, and reports.

pub mod bounds;
pub mod counting;
pub mod entropy;
mod error;
pub mod graph;
pub mod harness;
pub mod parallel;
pub mod rational;
pub mod swap;

pub use error::{Error, Result};
pub use graph::{Bigraph, Graph, VertexSet};
