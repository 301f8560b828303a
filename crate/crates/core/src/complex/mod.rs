//! Neighborhood complexes, the common-neighbor operator `Γ` and its closure,
//! the closed-set poset and its order complex (the Lovász retract).

mod neighborhood;
mod poset;
mod simplicial;

pub use neighborhood::{
    closure, gamma, is_face, is_graph_face, neighborhood_complex, neighborliness, GraphFaces,
};
pub use poset::{closed_set_poset, lovasz_retract, poset_height, ChainFaces, ClosedSetPoset};
pub use simplicial::{FaceSource, Simplex, SimplicialComplex};
