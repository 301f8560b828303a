use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::simplicial::{FaceSource, Simplex, SimplicialComplex};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The sets fixed by `X ↦ Γ(Γ(X))` among nonempty faces of `N[G]`, ordered
/// by inclusion.
///
/// Elements are sorted by size, then lexicographically, so inclusion always
/// runs from lower to higher index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSetPoset {
    elements: Vec<VertexSet>,
    /// Cover pairs `(lower, upper)` of the inclusion order.
    covers: Vec<(u32, u32)>,
    height: i64,
    #[serde(skip)]
    above: Vec<Vec<u32>>,
}

impl ClosedSetPoset {
    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    /// Length of the longest chain minus one; `-1` for the empty poset.
    pub fn height(&self) -> i64 {
        self.height
    }

    /// Indices of the elements strictly containing element `i`.
    pub fn above(&self, i: usize) -> &[u32] {
        &self.above[i]
    }

    /// Inclusion test between two elements.
    pub fn less_than(&self, i: usize, j: usize) -> bool {
        self.above[i].binary_search(&(j as u32)).is_ok()
    }

    /// JSON form: element list plus cover pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "elements": self.elements,
            "covers": self.covers,
            "height": self.height,
        })
    }

    fn from_elements(mut elements: Vec<VertexSet>) -> Self {
        elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.lex_cmp(*b)));
        let m = elements.len();
        let words = m.div_ceil(64);
        // below[j] as a bitset over element indices
        let mut below = vec![vec![0u64; words]; m];
        let mut above: Vec<Vec<u32>> = vec![Vec::new(); m];
        for j in 0..m {
            for i in 0..j {
                if elements[i].len() < elements[j].len() && elements[i].is_subset(elements[j]) {
                    below[j][i / 64] |= 1 << (i % 64);
                    above[i].push(j as u32);
                }
            }
        }
        let mut covers = Vec::new();
        let mut chain_len = vec![1i64; m];
        let mut reached = vec![0u64; words];
        for j in 0..m {
            reached.iter_mut().for_each(|w| *w = 0);
            for i in (0..j).rev() {
                let bit = 1u64 << (i % 64);
                if below[j][i / 64] & bit == 0 || reached[i / 64] & bit != 0 {
                    continue;
                }
                // i is maximal among the remaining elements below j
                covers.push((i as u32, j as u32));
                chain_len[j] = chain_len[j].max(chain_len[i] + 1);
                for (r, b) in reached.iter_mut().zip(&below[i]) {
                    *r |= *b;
                }
            }
        }
        covers.sort_unstable();
        let height = chain_len.iter().copied().max().unwrap_or(0) - 1;
        ClosedSetPoset {
            elements,
            covers,
            height,
            above,
        }
    }
}

/// Builds the closed-set poset as the closure of the nonempty neighborhoods
/// under nonempty pairwise intersection. Since `Γ³ = Γ` on faces, this is
/// exactly the image of `Γ∘Γ` on nonempty faces; the face poset of `N[G]`
/// is never materialized.
pub fn closed_set_poset(g: &Graph, caps: &Caps) -> Result<ClosedSetPoset> {
    let n = g.vertex_count();
    if n > caps.poset_vertices {
        return Err(Error::resource(
            format!("vertex count {n} for the closed-set poset"),
            caps.poset_vertices as u64,
        ));
    }
    let masks = g.masks()?;
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut elements: Vec<VertexSet> = Vec::new();
    for &m in masks {
        if !m.is_empty() && seen.insert(m) {
            elements.push(m);
        }
    }
    let mut i = 0;
    while i < elements.len() {
        let current = elements[i];
        for j in 0..i {
            let meet = current.intersection(elements[j]);
            if !meet.is_empty() && seen.insert(meet) {
                elements.push(meet);
                if elements.len() > caps.poset_elements {
                    return Err(Error::Resource {
                        what: "closed-set count".into(),
                        limit: caps.poset_elements as u64,
                        partial: Some(elements.len() as i64),
                    });
                }
            }
        }
        i += 1;
    }
    Ok(ClosedSetPoset::from_elements(elements))
}

/// Longest chain length minus one.
pub fn poset_height(p: &ClosedSetPoset) -> i64 {
    p.height()
}

/// The order complex of the closed-set poset: one vertex per element (its
/// index in [`ClosedSetPoset::elements`]) and one facet per maximal chain.
pub fn lovasz_retract(p: &ClosedSetPoset, caps: &Caps) -> Result<SimplicialComplex> {
    let m = p.len();
    let mut has_lower = vec![false; m];
    let mut upper_covers: Vec<Vec<u32>> = vec![Vec::new(); m];
    for &(lo, hi) in p.covers() {
        has_lower[hi as usize] = true;
        upper_covers[lo as usize].push(hi);
    }
    let mut facets: Vec<Simplex> = Vec::new();
    let mut chain = Vec::new();
    for start in (0..m).filter(|&i| !has_lower[i]) {
        chain.push(start as u32);
        extend_chains(&upper_covers, &mut chain, &mut facets, caps.chains)?;
        chain.pop();
    }
    Ok(SimplicialComplex::from_facets_unchecked(m, facets))
}

fn extend_chains(
    upper: &[Vec<u32>],
    chain: &mut Vec<u32>,
    out: &mut Vec<Simplex>,
    limit: usize,
) -> Result<()> {
    let top = *chain.last().unwrap() as usize;
    if upper[top].is_empty() {
        if out.len() >= limit {
            return Err(Error::resource("maximal chain count", limit as u64));
        }
        out.push(chain.clone());
        return Ok(());
    }
    for &next in &upper[top] {
        chain.push(next);
        extend_chains(upper, chain, out, limit)?;
        chain.pop();
    }
    Ok(())
}

/// The order complex as a face source: `k`-faces are the chains of `k + 1`
/// elements, enumerated directly from the inclusion relation.
pub struct ChainFaces<'a>(pub &'a ClosedSetPoset);

impl FaceSource for ChainFaces<'_> {
    fn dimension(&self) -> i64 {
        self.0.height()
    }

    fn faces(&self, k: usize, limit: usize) -> Result<Vec<Simplex>> {
        let p = self.0;
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(k + 1);
        for start in 0..p.len() {
            chain.push(start as u32);
            if !chain_dfs(p, k + 1, &mut chain, &mut out, limit) {
                return Err(Error::resource(format!("chain count in dimension {k}"), limit as u64));
            }
            chain.pop();
        }
        Ok(out)
    }
}

fn chain_dfs(
    p: &ClosedSetPoset,
    size: usize,
    chain: &mut Vec<u32>,
    out: &mut Vec<Simplex>,
    limit: usize,
) -> bool {
    if chain.len() == size {
        if out.len() >= limit {
            return false;
        }
        out.push(chain.clone());
        return true;
    }
    let top = *chain.last().unwrap() as usize;
    for &next in p.above(top) {
        chain.push(next);
        let ok = chain_dfs(p, size, chain, out, limit);
        chain.pop();
        if !ok {
            return false;
        }
    }
    true
}
