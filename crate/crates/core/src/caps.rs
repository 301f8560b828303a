use serde::{Deserialize, Serialize};

/// Work caps for the exponential searches. Every exact routine in the crate
/// checks one of these and reports `Error::Resource` instead of running away.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Vertex cap for maximal-clique enumeration (`--clique-cap`).
    pub clique_vertices: usize,
    /// Vertex cap for the exhaustive strict-balance check.
    pub balance_vertices: usize,
    /// Vertex cap for building the closed-set poset.
    pub poset_vertices: usize,
    /// Maximum number of closed sets in the poset.
    pub poset_elements: usize,
    /// Maximum number of maximal chains in an order complex.
    pub chains: usize,
    /// Maximum number of faces enumerated for a chain complex.
    pub faces: usize,
    /// Subset evaluations allowed for neighborliness and subgraph searches.
    pub search_work: u64,
    /// Vertex cap for the exact chromatic solver.
    pub chromatic_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            clique_vertices: 64,
            balance_vertices: 12,
            poset_vertices: 16,
            poset_elements: 100_000,
            chains: 2_000_000,
            faces: 4_000_000,
            search_work: 50_000_000,
            chromatic_vertices: 20,
        }
    }
}
