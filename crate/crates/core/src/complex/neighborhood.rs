use super::simplicial::{FaceSource, Simplex, SimplicialComplex};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The neighborhood complex `N[G]`: its faces are the vertex sets with a
/// common neighbor, so its facets are the maximal nonempty neighborhoods.
pub fn neighborhood_complex(g: &Graph) -> Result<SimplicialComplex> {
    let facets = (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().map(|&w| w as u32).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    SimplicialComplex::new(g.vertex_count(), facets)
}

/// Common neighbors of every vertex of `s`. `Γ(∅)` is the whole vertex set.
pub fn gamma(g: &Graph, s: VertexSet) -> Result<VertexSet> {
    let masks = g.masks()?;
    let n = g.vertex_count();
    if s.max_bound() > n {
        return Err(Error::argument(format!(
            "vertex {} outside 0..{n}",
            s.max_bound() - 1
        )));
    }
    Ok(s.iter()
        .fold(VertexSet::full(n), |acc, v| acc.intersection(masks[v])))
}

/// `Γ(Γ(s))`. Defined for faces of `N[G]` and for the empty set.
pub fn closure(g: &Graph, s: VertexSet) -> Result<VertexSet> {
    let common = gamma(g, s)?;
    if !s.is_empty() && common.is_empty() {
        return Err(Error::domain(format!(
            "{:?} has no common neighbor, so it is not a face of N[G]",
            s
        )));
    }
    gamma(g, common)
}

/// Face test against the graph: `s` is a face of `N[G]` iff `Γ(s) ≠ ∅`.
pub fn is_graph_face(g: &Graph, s: VertexSet) -> Result<bool> {
    Ok(!gamma(g, s)?.is_empty())
}

/// Face test on a complex; the empty set is a face of any nonempty complex.
pub fn is_face(c: &SimplicialComplex, s: &[u32]) -> bool {
    c.is_face(s)
}

/// Largest `i` such that every `i`-subset of `V(G)` has a common neighbor,
/// checked with `Γ` on the graph. Zero when some vertex is isolated.
///
/// On a work-cap overflow the error's `partial` field is the largest `i`
/// verified so far.
pub fn neighborliness(g: &Graph, caps: &Caps) -> Result<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::argument("neighborliness needs a nonempty vertex set"));
    }
    let masks = g.masks()?;
    let mut work = 0u64;
    let mut verified = 0usize;
    for i in 1..=n {
        match all_subsets_have_common_neighbor(masks, i, &mut work, caps.search_work) {
            Some(true) => verified = i,
            Some(false) => return Ok(verified),
            None => {
                return Err(Error::Resource {
                    what: format!("neighborliness subset checks at size {i}"),
                    limit: caps.search_work,
                    partial: Some(verified as i64),
                })
            }
        }
    }
    Ok(verified)
}

/// `None` when the work budget ran out.
fn all_subsets_have_common_neighbor(
    masks: &[VertexSet],
    size: usize,
    work: &mut u64,
    limit: u64,
) -> Option<bool> {
    fn rec(
        masks: &[VertexSet],
        start: usize,
        left: usize,
        common: VertexSet,
        work: &mut u64,
        limit: u64,
    ) -> Option<bool> {
        if left == 0 {
            return Some(true);
        }
        let n = masks.len();
        for v in start..=n - left {
            *work += 1;
            if *work > limit {
                return None;
            }
            let next = common.intersection(masks[v]);
            // any extension of a set without common neighbors also fails
            if next.is_empty() {
                return Some(false);
            }
            if !rec(masks, v + 1, left - 1, next, work, limit)? {
                return Some(false);
            }
        }
        Some(true)
    }
    rec(masks, 0, size, VertexSet::full(masks.len()), work, limit)
}

/// `N[G]` as a face source that enumerates faces by depth-first search with
/// a running common-neighbor set, never expanding facets.
pub struct GraphFaces<'a> {
    graph: &'a Graph,
    masks: &'a [VertexSet],
}

impl<'a> GraphFaces<'a> {
    pub fn new(graph: &'a Graph) -> Result<Self> {
        Ok(GraphFaces {
            graph,
            masks: graph.masks()?,
        })
    }
}

impl FaceSource for GraphFaces<'_> {
    fn dimension(&self) -> i64 {
        (0..self.graph.vertex_count())
            .map(|v| self.graph.degree(v) as i64)
            .max()
            .unwrap_or(0)
            - 1
    }

    fn faces(&self, k: usize, limit: usize) -> Result<Vec<Simplex>> {
        let n = self.masks.len();
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(k + 1);
        let mut examined = 0usize;
        let ok = face_dfs(
            self.masks,
            0,
            k + 1,
            VertexSet::full(n),
            &mut buf,
            &mut out,
            &mut examined,
            limit,
        );
        if !ok {
            return Err(Error::resource(format!("face count in dimension {k}"), limit as u64));
        }
        Ok(out)
    }
}

#[allow(clippy::too_many_arguments)]
fn face_dfs(
    masks: &[VertexSet],
    start: usize,
    size: usize,
    common: VertexSet,
    buf: &mut Vec<u32>,
    out: &mut Vec<Simplex>,
    examined: &mut usize,
    limit: usize,
) -> bool {
    if buf.len() == size {
        out.push(buf.clone());
        return true;
    }
    for v in start..masks.len() {
        if masks.len() - v < size - buf.len() {
            break;
        }
        *examined += 1;
        if *examined > limit {
            return false;
        }
        let next = common.intersection(masks[v]);
        if next.is_empty() {
            continue;
        }
        buf.push(v as u32);
        let ok = face_dfs(masks, v + 1, size, next, buf, out, examined, limit);
        buf.pop();
        if !ok {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named_graph, Family};

    fn fam(f: Family, p: &[usize]) -> Graph {
        make_named_graph(f, p).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn complexes_of_small_graphs() {
        let c = neighborhood_complex(&fam(Family::Complete, &[4])).unwrap();
        assert_eq!(
            c.facets(),
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        let c = neighborhood_complex(&fam(Family::Cycle, &[4])).unwrap();
        assert_eq!(c.facets(), &[vec![0, 2], vec![1, 3]]);
        let c = neighborhood_complex(&fam(Family::Path, &[3])).unwrap();
        assert_eq!(c.facets(), &[vec![0, 2], vec![1]]);
        let c = neighborhood_complex(&Graph::empty(3)).unwrap();
        assert_eq!(c.dimension(), -1);
    }

    #[test]
    fn gamma_and_closure() {
        let k3 = fam(Family::Complete, &[3]);
        assert_eq!(gamma(&k3, set(&[0])).unwrap(), set(&[1, 2]));
        assert_eq!(gamma(&k3, set(&[0, 1])).unwrap(), set(&[2]));
        assert_eq!(gamma(&k3, VertexSet::EMPTY).unwrap(), set(&[0, 1, 2]));
        assert!(gamma(&k3, set(&[3])).is_err());

        let c5 = fam(Family::Cycle, &[5]);
        assert_eq!(gamma(&c5, set(&[1, 4])).unwrap(), set(&[0]));
        assert_eq!(closure(&c5, set(&[2])).unwrap(), set(&[2]));

        // star with center 0 and leaves 1, 2, 3
        let star = fam(Family::CompleteBipartite, &[1, 3]);
        assert_eq!(closure(&star, set(&[1])).unwrap(), set(&[1, 2, 3]));
        assert_eq!(closure(&star, VertexSet::EMPTY).unwrap(), VertexSet::EMPTY);
        assert!(matches!(closure(&star, set(&[0, 1])), Err(Error::Domain(_))));
    }

    #[test]
    fn face_tests() {
        let k4 = neighborhood_complex(&fam(Family::Complete, &[4])).unwrap();
        assert!(is_face(&k4, &[0, 1, 2]));
        assert!(!is_face(&k4, &[0, 1, 2, 3]));
        let c4 = neighborhood_complex(&fam(Family::Cycle, &[4])).unwrap();
        assert!(!is_face(&c4, &[0, 1]));
    }

    #[test]
    fn neighborliness_examples() {
        let caps = Caps::default();
        assert_eq!(neighborliness(&fam(Family::Complete, &[4]), &caps).unwrap(), 3);
        assert_eq!(neighborliness(&fam(Family::Cycle, &[4]), &caps).unwrap(), 1);
        assert_eq!(neighborliness(&fam(Family::Complete, &[2]), &caps).unwrap(), 1);
        assert_eq!(neighborliness(&fam(Family::Path, &[3]), &caps).unwrap(), 1);
        assert_eq!(neighborliness(&Graph::empty(3), &caps).unwrap(), 0);
        for n in 2..=8 {
            assert_eq!(neighborliness(&fam(Family::Complete, &[n]), &caps).unwrap(), n - 1);
        }
        let tight = Caps {
            search_work: 20,
            ..Caps::default()
        };
        match neighborliness(&fam(Family::Complete, &[8]), &tight) {
            Err(Error::Resource { partial: Some(p), .. }) => assert!(p >= 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graph_faces_match_facet_expansion() {
        let g = fam(Family::Kneser, &[2, 1]);
        let c = neighborhood_complex(&g).unwrap();
        let gf = GraphFaces::new(&g).unwrap();
        assert_eq!(FaceSource::dimension(&gf), c.dimension());
        for k in 0..=3 {
            assert_eq!(gf.faces(k, 1 << 20).unwrap(), c.faces(k, 1 << 20).unwrap());
        }
    }
}
