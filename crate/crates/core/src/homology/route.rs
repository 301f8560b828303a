use serde::{Deserialize, Serialize};

use super::{compute_homology, Coefficients, HomologyResult, HomologyRoute};
use crate::caps::Caps;
use crate::complex::{closed_set_poset, ChainFaces, ClosedSetPoset, GraphFaces};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

/// Homology of `N[G]` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphHomology {
    pub result: HomologyResult,
    pub route: HomologyRoute,
    /// Number of closed sets, when the poset was built.
    pub closed_sets: Option<usize>,
    /// Dimension of the Lovász retract, when the poset was built.
    pub retract_dimension: Option<i64>,
}

/// Number of chains with at most `max_len` elements in the poset.
pub fn chain_count(p: &ClosedSetPoset, max_len: usize) -> u128 {
    let m = p.len();
    // ending[j] = chains of the current length whose top element is j
    let mut ending = vec![1u128; m];
    let mut total: u128 = m as u128;
    for _ in 1..max_len {
        let mut next = vec![0u128; m];
        for (i, &count) in ending.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for &j in p.above(i) {
                next[j as usize] = next[j as usize].saturating_add(count);
            }
        }
        let layer: u128 = next.iter().fold(0u128, |a, &b| a.saturating_add(b));
        if layer == 0 {
            break;
        }
        total = total.saturating_add(layer);
        ending = next;
    }
    total
}

/// Number of faces of `N[G]` with at most `max_size` vertices, or `None`
/// when the count exceeds `limit`.
pub fn direct_face_count(g: &Graph, max_size: usize, limit: usize) -> Result<Option<usize>> {
    let masks = g.masks()?;
    fn rec(
        masks: &[VertexSet],
        start: usize,
        depth: usize,
        max_size: usize,
        common: VertexSet,
        count: &mut usize,
        limit: usize,
    ) -> bool {
        if depth == max_size {
            return true;
        }
        for v in start..masks.len() {
            let next = common.intersection(masks[v]);
            if next.is_empty() {
                continue;
            }
            *count += 1;
            if *count > limit {
                return false;
            }
            if !rec(masks, v + 1, depth + 1, max_size, next, count, limit) {
                return false;
            }
        }
        true
    }
    let mut count = 0;
    let ok = rec(
        masks,
        0,
        0,
        max_size,
        VertexSet::full(masks.len()),
        &mut count,
        limit,
    );
    Ok(ok.then_some(count))
}

/// Computes the homology of `N[G]` through whichever chain complex has fewer
/// faces in the needed range: the order complex of the closed-set poset, or
/// `N[G]` itself. Ties go to the retract.
///
/// With `max_dim = None` the full homology is computed, up to the dimension
/// of the chosen complex.
pub fn graph_homology_auto(
    g: &Graph,
    max_dim: Option<usize>,
    coeff: Coefficients,
    caps: &Caps,
) -> Result<GraphHomology> {
    let poset = if g.vertex_count() <= caps.poset_vertices {
        match closed_set_poset(g, caps) {
            Ok(p) => Some(p),
            Err(e) if e.is_resource() => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let direct = GraphFaces::new(g)?;
    let direct_dim = crate::complex::FaceSource::dimension(&direct);

    let retract_dim = poset.as_ref().map(|p| p.height());
    let retract_cost = poset.as_ref().map(|p| {
        let dim = max_dim.map_or(p.height().max(0) as usize, |d| d);
        chain_count(p, dim + 2)
    });
    let direct_dim_used = max_dim.unwrap_or(direct_dim.max(0) as usize);
    let direct_cost = direct_face_count(g, direct_dim_used + 2, caps.faces)?.map(|c| c as u128);

    let use_retract = match (retract_cost, direct_cost) {
        (Some(r), Some(d)) => r <= d,
        (Some(_), None) => true,
        _ => false,
    };
    let closed_sets = poset.as_ref().map(ClosedSetPoset::len);
    let (result, route) = if use_retract {
        let p = poset.as_ref().unwrap();
        let dim = max_dim.unwrap_or(p.height().max(0) as usize);
        let mut h = compute_homology(&ChainFaces(p), dim, coeff, caps)?;
        h.empty = p.is_empty();
        (h, HomologyRoute::Retract)
    } else {
        let h = compute_homology(&direct, direct_dim_used, coeff, caps)?;
        (h, HomologyRoute::Direct)
    };
    Ok(GraphHomology {
        result,
        route,
        closed_sets,
        retract_dimension: retract_dim,
    })
}
