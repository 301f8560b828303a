use num_rational::Ratio;

use super::{Graph, VertexSet};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Edge density `e / v` as an exact rational.
pub fn density(g: &Graph) -> Result<Ratio<i64>> {
    if g.vertex_count() == 0 {
        return Err(Error::argument("density of the null graph is undefined"));
    }
    Ok(Ratio::new(g.edge_count() as i64, g.vertex_count() as i64))
}

/// True iff every proper subgraph has strictly smaller density than `g`.
///
/// Only induced subgraphs on proper nonempty vertex subsets need checking:
/// dropping edges never raises density, and a spanning subgraph with fewer
/// edges is strictly sparser.
pub fn is_strictly_balanced(g: &Graph, caps: &Caps) -> Result<bool> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::argument("strict balance of the null graph is undefined"));
    }
    if n > caps.balance_vertices {
        return Err(Error::resource(
            format!("vertex count {n} for the exhaustive balance check"),
            caps.balance_vertices as u64,
        ));
    }
    let masks = g.masks()?;
    let whole = density(g)?;
    let full = (1u128 << n) - 1;
    for bits in 1..full {
        let s = VertexSet::from_bits(bits);
        let edges: usize = s.iter().map(|v| masks[v].intersection(s).len()).sum::<usize>() / 2;
        if Ratio::new(edges as i64, s.len() as i64) >= whole {
            return Ok(false);
        }
    }
    Ok(true)
}
