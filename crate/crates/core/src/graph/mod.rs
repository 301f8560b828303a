//! Simple undirected graphs on dense integer vertices, their generators and
//! the exact subgraph detectors used by the topological bounds.

mod density;
mod families;
mod io;
mod search;
mod vertex_set;

pub use density::{density, is_strictly_balanced};
pub use families::{gnp_sample, make_named_graph, pair_draw, Family, GnpParams, NamedGraph};
pub use io::{parse_edge_list, serialize_edge_list};
pub use search::{
    clique_number, contains_complete_bipartite, contains_x_n, maximal_cliques,
    validate_witness, SubgraphWitness, WitnessKind,
};
pub use vertex_set::{for_each_subset_of_size, VertexSet, MAX_SET_VERTICES};
pub(crate) use search::x_n_partners;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric, and never contain loops.
/// Graphs on at most [`MAX_SET_VERTICES`] vertices also carry bitmask
/// neighborhoods, which every set-valued algorithm in the crate relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    masks: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::argument(format!(
                    "edge ({u}, {v}) has a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::argument(format!("loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(adjacency))
    }

    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<usize>>) -> Self {
        let n = adjacency.len();
        let masks = if n <= MAX_SET_VERTICES {
            adjacency.iter().map(|l| l.iter().collect()).collect()
        } else {
            Vec::new()
        };
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            masks,
            edge_count,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.vertex_count() || v >= self.vertex_count() {
            return false;
        }
        match self.masks.get(u) {
            Some(m) => m.contains(v),
            None => self.adjacency[u].binary_search(&v).is_ok(),
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Bitmask neighborhoods, available when `n <= 128`.
    pub fn masks(&self) -> Result<&[VertexSet]> {
        if self.vertex_count() > MAX_SET_VERTICES {
            return Err(Error::resource(
                "vertex count for set-based algorithms",
                MAX_SET_VERTICES as u64,
            ));
        }
        Ok(&self.masks)
    }

    pub(crate) fn mask(&self, v: usize) -> VertexSet {
        self.masks[v]
    }

    /// `{0, .., n-1}` as a set. Requires `n <= 128`.
    pub fn vertex_set(&self) -> Result<VertexSet> {
        self.masks()?;
        Ok(VertexSet::full(self.vertex_count()))
    }

    /// The induced subgraph on `keep`, relabeled to `0..keep.len()` in
    /// increasing order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = keep
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adjacency[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX).map(|&w| index[w])
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph::from_sorted_adjacency(adjacency)
    }

    /// Disjoint union, with `other`'s vertices shifted after `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|l| l.iter().map(|&v| v + shift).collect()),
        );
        Graph::from_sorted_adjacency(adjacency)
    }

    /// Checks symmetry, loop-freeness and index range.
    pub fn check_invariants(&self) -> bool {
        let n = self.vertex_count();
        self.adjacency.iter().enumerate().all(|(u, l)| {
            l.windows(2).all(|w| w[0] < w[1])
                && l.iter()
                    .all(|&v| v < n && v != u && self.adjacency[v].binary_search(&u).is_ok())
        })
    }
}
