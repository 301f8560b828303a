//! Sphere retractions from maximal cliques, the neighborliness lower bound
//! for the chromatic number, and an exact coloring solver to compare against.

mod chromatic;
mod comparison;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use chromatic::{chromatic_number_exact, greedy_coloring};
pub use comparison::{bound_comparison, BoundComparison};

use crate::caps::Caps;
use crate::complex::neighborliness;
use crate::error::{Error, Result};
use crate::graph::{maximal_cliques, x_n_partners, Graph, SubgraphWitness, VertexSet, WitnessKind};

/// A maximal clique `X` together with an index `i` such that the simplicial
/// map sending everything outside `X` to `u_i` is a retraction of `N[G]` onto
/// the boundary of the simplex on `X`, a sphere of dimension `|X| - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereCertificate {
    pub clique: Vec<usize>,
    #[serde(rename = "index")]
    pub retract_index: usize,
    pub sphere_dim: usize,
    /// Set once the certificate has been rechecked by the naive scanner.
    pub validated: bool,
}

/// A face `(X ∖ {u_i}) ∪ {u*}` of `N[G]`, with `v` a common neighbor, that
/// blocks the retraction for index `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub u_star: usize,
    pub v: usize,
    pub index: usize,
}

/// Checks that `clique` is a sorted maximal clique of `g` and returns it as a
/// set.
fn checked_maximal_clique(g: &Graph, clique: &[usize]) -> Result<VertexSet> {
    let masks = g.masks()?;
    if clique.is_empty() {
        return Err(Error::argument("clique must be nonempty"));
    }
    if clique.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::argument("clique must be strictly increasing"));
    }
    if let Some(&v) = clique.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::argument(format!("vertex {v} is out of range")));
    }
    let x: VertexSet = clique.iter().collect();
    for &u in clique {
        if !x.without(u).is_subset(masks[u]) {
            return Err(Error::argument(format!("{clique:?} is not a clique")));
        }
    }
    if !common_neighbors(masks, x).is_empty() {
        return Err(Error::argument(format!("clique {clique:?} is not maximal")));
    }
    Ok(x)
}

fn common_neighbors(masks: &[VertexSet], s: VertexSet) -> VertexSet {
    s.iter()
        .fold(VertexSet::full(masks.len()), |acc, w| acc.intersection(masks[w]))
}

fn search_obstruction(
    g: &Graph,
    x: VertexSet,
    clique: &[usize],
    i: usize,
    outside_only: bool,
) -> Option<ObstructionWitness> {
    let masks = g.masks().expect("checked by caller");
    let common = common_neighbors(masks, x.without(clique[i]));
    let outside = VertexSet::full(g.vertex_count()).difference(x);
    outside.iter().find_map(|u_star| {
        let mut vs = common.intersection(masks[u_star]);
        if outside_only {
            vs = vs.difference(x);
        }
        vs.first().map(|v| ObstructionWitness {
            u_star,
            v,
            index: i,
        })
    })
}

/// Lexicographically first `(u*, v)` obstructing the retraction onto index
/// `i` of the maximal clique, or `None` when the retraction exists.
///
/// `v` may be `u_i` itself.
pub fn obstruction_test(
    g: &Graph,
    clique: &[usize],
    i: usize,
) -> Result<Option<ObstructionWitness>> {
    let x = checked_maximal_clique(g, clique)?;
    if i >= clique.len() {
        return Err(Error::argument(format!(
            "index {i} out of range for a clique of size {}",
            clique.len()
        )));
    }
    Ok(search_obstruction(g, x, clique, i, false))
}

/// Like [`obstruction_test`] but only accepts `v` outside the clique, which
/// is the kind of obstruction that assembles into an `X_n`.
pub fn outside_obstruction_test(
    g: &Graph,
    clique: &[usize],
    i: usize,
) -> Result<Option<ObstructionWitness>> {
    let x = checked_maximal_clique(g, clique)?;
    if i >= clique.len() {
        return Err(Error::argument(format!("index {i} out of range")));
    }
    Ok(search_obstruction(g, x, clique, i, true))
}

/// Certificate for the first unobstructed index, or `None` when every index
/// is obstructed. Cliques need at least two vertices.
pub fn sphere_certificate(g: &Graph, clique: &[usize]) -> Result<Option<SphereCertificate>> {
    let x = checked_maximal_clique(g, clique)?;
    if clique.len() < 2 {
        return Err(Error::argument(
            "sphere certificates need a clique with at least two vertices",
        ));
    }
    let free = (0..clique.len()).find(|&i| search_obstruction(g, x, clique, i, false).is_none());
    Ok(free.map(|i| SphereCertificate {
        clique: clique.to_vec(),
        retract_index: i,
        sphere_dim: clique.len() - 2,
        validated: false,
    }))
}

/// Certificates from every maximal clique with at least two vertices, each
/// rechecked by [`revalidate`]. Sorted by sphere dimension descending, then
/// by clique.
pub fn find_sphere_certificates(g: &Graph, caps: &Caps) -> Result<Vec<SphereCertificate>> {
    let cliques = maximal_cliques(g, caps)?;
    let found: Vec<Option<SphereCertificate>> = cliques
        .par_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| sphere_certificate(g, c))
        .collect::<Result<_>>()?;
    let mut certs = Vec::new();
    for mut c in found.into_iter().flatten() {
        if !revalidate(g, &c) {
            return Err(Error::domain(format!(
                "certificate for {:?} failed independent validation",
                c.clique
            )));
        }
        c.validated = true;
        certs.push(c);
    }
    certs.sort_by(|a, b| b.sphere_dim.cmp(&a.sphere_dim).then_with(|| a.clique.cmp(&b.clique)));
    Ok(certs)
}

/// Independent check of a certificate using adjacency lists only.
///
/// An obstruction at index `i` exists iff some vertex `v` has
/// `N(v) ⊇ X ∖ {u_i}` and a neighbor outside `X`.
pub fn revalidate(g: &Graph, cert: &SphereCertificate) -> bool {
    let x = &cert.clique;
    let n = g.vertex_count();
    let i = cert.retract_index;
    if x.len() < 2 || i >= x.len() || cert.sphere_dim != x.len() - 2 {
        return false;
    }
    if x.iter().any(|&v| v >= n) {
        return false;
    }
    let in_x = |v: usize| x.contains(&v);
    let is_clique = x
        .iter()
        .enumerate()
        .all(|(a, &p)| x[a + 1..].iter().all(|&q| g.has_edge(p, q)));
    let maximal = (0..n)
        .filter(|&w| !in_x(w))
        .all(|w| !x.iter().all(|&u| g.has_edge(u, w)));
    let obstructed = (0..n).any(|v| {
        let nb = g.neighbors(v);
        x.iter()
            .enumerate()
            .all(|(j, u)| j == i || nb.binary_search(u).is_ok())
            && nb.iter().any(|&w| !in_x(w))
    });
    is_clique && maximal && !obstructed
}

/// What the exact obstruction search and the `X_n` criterion say about one
/// maximal clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueAnalysis {
    pub clique: Vec<usize>,
    pub certificate: Option<SphereCertificate>,
    /// The `X_n` extension of the clique, when one exists.
    pub x_n: Option<SubgraphWitness>,
    /// `X_n` assembled from obstructions whose `v` lies outside the clique,
    /// when every index has one.
    pub reconstructed_x_n: Option<SubgraphWitness>,
    /// The clique admits no `X_n` extension, yet every index is obstructed.
    pub disagreement: bool,
}

/// Compares the exact retraction criterion with the `X_n`-freeness
/// condition for one maximal clique of size at least two.
pub fn analyze_clique(g: &Graph, clique: &[usize]) -> Result<CliqueAnalysis> {
    let certificate = sphere_certificate(g, clique)?;
    let x = checked_maximal_clique(g, clique)?;
    let x_n = x_n_partners(g, clique).map(|vs| SubgraphWitness {
        kind: WitnessKind::XN,
        parts: vec![clique.to_vec(), vs],
    });
    let outside: Option<Vec<usize>> = (0..clique.len())
        .map(|i| search_obstruction(g, x, clique, i, true).map(|w| w.v))
        .collect();
    let reconstructed_x_n = outside.map(|vs| SubgraphWitness {
        kind: WitnessKind::XN,
        parts: vec![clique.to_vec(), vs],
    });
    let disagreement = certificate.is_none() && x_n.is_none();
    Ok(CliqueAnalysis {
        clique: clique.to_vec(),
        certificate,
        x_n,
        reconstructed_x_n,
        disagreement,
    })
}

/// `i + 1` where `N[G]` is `i`-neighborly. A rigorous lower bound for `χ`.
///
/// On a work-cap overflow the error's `partial` is the bound implied by the
/// largest neighborliness verified.
pub fn neighborliness_chromatic_bound(g: &Graph, caps: &Caps) -> Result<usize> {
    match neighborliness(g, caps) {
        Ok(i) => Ok(i + 1),
        Err(Error::Resource {
            what,
            limit,
            partial,
        }) => Err(Error::Resource {
            what,
            limit,
            partial: partial.map(|i| i + 1),
        }),
        Err(e) => Err(e),
    }
}
