//! Exact reduced simplicial homology.
//!
//! Chain complexes are augmented (`∂_0` sends each vertex to 1), so the Betti
//! numbers computed here are reduced ones: a cone has all of them zero.

mod chain;
mod gf2;
mod route;
mod smith;

use serde::{Deserialize, Serialize};

pub use chain::{boundary_matrices, ChainComplexData, SparseMatrix};
pub use gf2::rank_mod2;
pub use route::{chain_count, direct_face_count, graph_homology_auto, GraphHomology};
pub use smith::{smith_invariants, SmithSummary};

use crate::caps::Caps;
use crate::complex::FaceSource;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Reduced homology in dimensions `0..=max_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    /// Reduced integral Betti numbers.
    pub betti: Vec<u64>,
    /// Invariant factors greater than one of `H̃_k(ℤ)`, per dimension.
    pub torsion: Vec<Vec<u64>>,
    /// Reduced Betti numbers over the two-element field, when computed.
    pub field2: Option<Vec<u64>>,
    /// Set when the complex has faces above `max_dim`.
    pub truncated: bool,
    /// Set for the empty complex; all reported groups are then zero.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empty: bool,
}

impl HomologyResult {
    pub fn max_dim(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    /// Whether `H̃_k` is nonzero, counting torsion.
    pub fn nonzero_in(&self, k: usize) -> bool {
        self.betti.get(k).is_some_and(|&b| b > 0) || self.torsion.get(k).is_some_and(|t| !t.is_empty())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("homology results serialize")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Z,
    F2,
    #[default]
    Both,
}

/// Per-dimension ranks of `∂_k` over the two-element field.
fn ranks_mod2(d: &ChainComplexData) -> Vec<usize> {
    d.boundaries.iter().map(rank_mod2).collect()
}

/// Reduced Betti numbers over the two-element field:
/// `β̃_k = dim ker ∂_k − rank ∂_{k+1}`.
pub fn betti_field2(d: &ChainComplexData) -> Vec<u64> {
    let ranks = ranks_mod2(d);
    (0..=d.max_dim)
        .map(|k| (d.faces_by_dim[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect()
}

/// Integral reduced homology through Smith normal form of every `∂_k`.
pub fn homology_integer(d: &ChainComplexData) -> Result<HomologyResult> {
    let smith: Vec<SmithSummary> = d
        .boundaries
        .iter()
        .map(smith_invariants)
        .collect::<Result<_>>()?;
    let betti = (0..=d.max_dim)
        .map(|k| (d.faces_by_dim[k].len() - smith[k].rank - smith[k + 1].rank) as u64)
        .collect();
    let torsion = (0..=d.max_dim).map(|k| smith[k + 1].torsion.clone()).collect();
    Ok(HomologyResult {
        betti,
        torsion,
        field2: None,
        truncated: d.truncated(),
        empty: d.is_empty_complex(),
    })
}

/// Homology with the requested coefficient systems. With `F2` alone the
/// `betti` field holds the field ranks and no torsion is reported.
pub fn homology_with(d: &ChainComplexData, coeff: Coefficients) -> Result<HomologyResult> {
    match coeff {
        Coefficients::Z => homology_integer(d),
        Coefficients::Both => {
            let mut h = homology_integer(d)?;
            h.field2 = Some(betti_field2(d));
            Ok(h)
        }
        Coefficients::F2 => {
            let f2 = betti_field2(d);
            Ok(HomologyResult {
                betti: f2.clone(),
                torsion: vec![Vec::new(); f2.len()],
                field2: Some(f2),
                truncated: d.truncated(),
                empty: d.is_empty_complex(),
            })
        }
    }
}

/// Builds the chain complex of `source` through `max_dim + 1` and computes
/// its homology.
pub fn compute_homology(
    source: &impl FaceSource,
    max_dim: usize,
    coeff: Coefficients,
    caps: &Caps,
) -> Result<HomologyResult> {
    homology_with(&boundary_matrices(source, max_dim, caps)?, coeff)
}

/// Unreduced Euler characteristic `Σ (−1)^k f_k`. Requires every face of the
/// complex to be enumerated.
pub fn euler_characteristic(d: &ChainComplexData) -> Result<i64> {
    if d.truncated() {
        return Err(Error::domain(format!(
            "chain complex stops at dimension {} below the complex dimension {}",
            d.max_dim + 1,
            d.complex_dim
        )));
    }
    Ok(d
        .faces_by_dim
        .iter()
        .enumerate()
        .map(|(k, f)| if k % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
        .sum())
}

/// Homological connectivity: one less than the first dimension with
/// nonvanishing reduced homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    Exact(i64),
    /// Every computed dimension vanished; carries the last dimension checked.
    AtLeast(i64),
}

impl std::fmt::Display for Connectivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Connectivity::Exact(k) => write!(f, "{k}"),
            Connectivity::AtLeast(k) => write!(f, "≥{k}"),
        }
    }
}

pub fn homological_connectivity(h: &HomologyResult) -> Connectivity {
    match (0..h.betti.len()).find(|&k| h.nonzero_in(k)) {
        Some(k) => Connectivity::Exact(k as i64 - 1),
        None => Connectivity::AtLeast(h.max_dim() as i64),
    }
}

/// `β̃_0` of `N[G]` from its 1-skeleton alone: vertices with a neighbor,
/// joined when they share a common neighbor. Zero for the empty complex.
pub fn betti0_from_skeleton(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // every neighborhood spans a simplex, so its members share a component
    for v in 0..n {
        let nb = g.neighbors(v);
        for w in nb.iter().skip(1) {
            let (a, b) = (find(&mut parent, nb[0]), find(&mut parent, *w));
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = (0..n)
        .filter(|&v| g.degree(v) > 0)
        .map(|v| find(&mut parent, v))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len().saturating_sub(1) as u64
}

/// Which chain complex computed a graph's homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomologyRoute {
    /// Order complex of the closed-set poset.
    Retract,
    /// Faces of `N[G]` directly.
    Direct,
}

/// Homology of `N[G]` through either route.
pub fn graph_homology(
    g: &Graph,
    route: HomologyRoute,
    max_dim: usize,
    coeff: Coefficients,
    caps: &Caps,
) -> Result<HomologyResult> {
    match route {
        HomologyRoute::Direct => {
            compute_homology(&crate::complex::GraphFaces::new(g)?, max_dim, coeff, caps)
        }
        HomologyRoute::Retract => {
            let p = crate::complex::closed_set_poset(g, caps)?;
            let mut h = compute_homology(&crate::complex::ChainFaces(&p), max_dim, coeff, caps)?;
            // the retract is empty exactly when N[G] is
            h.empty = p.is_empty();
            Ok(h)
        }
    }
}
