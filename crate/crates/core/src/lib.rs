//! Generic rank oracles for the symmetric completion, hyperconnectivity,
//! birigidity and rigidity matroids of graphs, evaluated by randomized
//! prime-field linear algebra, together with the combinatorial machinery
//! used to reason about them: vertex-addition operations, matroid seeds,
//! bipartite connectivity notions, vertex covers, pairings and sparse
//! connectivity certificates.

pub mod connectivity;
pub mod extensions;
pub mod graphs;
pub mod linalg;
pub mod matroids;
pub mod rng;
pub mod seeds;
