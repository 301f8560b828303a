use serde::{Deserialize, Serialize};

use super::{chromatic_number_exact, find_sphere_certificates, neighborliness_chromatic_bound};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{clique_number, Graph};
use crate::homology::{graph_homology_auto, homological_connectivity, Coefficients, Connectivity};

/// Chromatic number against its lower bounds for one graph.
///
/// Fields that could not be computed within the caps are `None` and listed
/// in `missing` with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub vertices: usize,
    pub edges: usize,
    pub chromatic_number: Option<usize>,
    pub clique_number: Option<usize>,
    /// Rigorous: one more than the neighborliness of `N[G]`.
    pub neighborliness_bound: Option<usize>,
    /// Homological connectivity of `N[G]`. Only a proxy for topological
    /// connectivity, so the bound below is heuristic.
    pub homological_connectivity: Option<Connectivity>,
    /// Connectivity plus three. Heuristic.
    pub heuristic_connectivity_bound: Option<i64>,
    /// Largest sphere dimension among validated certificates; `None` also
    /// when no certificate exists, see `missing`.
    pub best_sphere_dim: Option<usize>,
    pub missing: Vec<String>,
}

fn capture<T>(field: &str, r: Result<T>, missing: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_resource() => {
            missing.push(format!("{field}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Builds the comparison record. Sub-computations that hit a cap leave their
/// field empty; any other error is returned. Fails if `χ < ω` or `χ` is
/// below the neighborliness bound, which would mean a bug.
pub fn bound_comparison(g: &Graph, caps: &Caps) -> Result<BoundComparison> {
    if g.vertex_count() == 0 {
        return Err(Error::argument("bound comparison needs a nonempty graph"));
    }
    let mut missing = Vec::new();
    let chi = capture(
        "chromatic_number",
        chromatic_number_exact(g, caps.chromatic_vertices),
        &mut missing,
    )?;
    let omega = capture("clique_number", clique_number(g, caps), &mut missing)?;
    let nbhd = capture(
        "neighborliness_bound",
        neighborliness_chromatic_bound(g, caps),
        &mut missing,
    )?;
    let homology = capture(
        "homological_connectivity",
        graph_homology_auto(g, None, Coefficients::Z, caps),
        &mut missing,
    )?;
    let conn = homology.map(|h| homological_connectivity(&h.result));
    let heuristic = conn.map(|c| match c {
        Connectivity::Exact(k) | Connectivity::AtLeast(k) => k + 3,
    });
    let certs = capture("best_sphere_dim", find_sphere_certificates(g, caps), &mut missing)?;
    let best_sphere_dim = match &certs {
        Some(list) if list.is_empty() => {
            missing.push("best_sphere_dim: no certificate exists".into());
            None
        }
        Some(list) => Some(list[0].sphere_dim),
        None => None,
    };

    if let Some(chi) = chi {
        if omega.is_some_and(|w| chi < w) {
            return Err(Error::domain(format!("chromatic number {chi} below the clique number")));
        }
        if nbhd.is_some_and(|b| chi < b) {
            return Err(Error::domain(format!(
                "chromatic number {chi} below the neighborliness bound"
            )));
        }
    }
    Ok(BoundComparison {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        chromatic_number: chi,
        clique_number: omega,
        neighborliness_bound: nbhd,
        homological_connectivity: conn,
        heuristic_connectivity_bound: heuristic,
        best_sphere_dim,
        missing,
    })
}
