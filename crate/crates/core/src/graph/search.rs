use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::caps::Caps;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Clique,
    CompleteBipartite,
    XN,
}

/// An embedded subgraph. Cliques carry one part; `K_{a,b}` carries the two
/// sides; `X_n` carries `[u_0..u_{n-1}]` and `[v_0..v_{n-1}]` in matching
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphWitness {
    pub kind: WitnessKind,
    pub parts: Vec<Vec<usize>>,
}

/// Rechecks a witness against `g` using adjacency lookups only.
pub fn validate_witness(g: &Graph, w: &SubgraphWitness) -> bool {
    let all: Vec<usize> = w.parts.iter().flatten().copied().collect();
    let mut sorted = all.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != all.len() || all.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let clique = |vs: &[usize]| {
        vs.iter()
            .enumerate()
            .all(|(i, &x)| vs[i + 1..].iter().all(|&y| g.has_edge(x, y)))
    };
    match w.kind {
        WitnessKind::Clique => w.parts.len() == 1 && clique(&w.parts[0]),
        WitnessKind::CompleteBipartite => {
            w.parts.len() == 2
                && !w.parts[0].is_empty()
                && !w.parts[1].is_empty()
                && w.parts[0]
                    .iter()
                    .all(|&a| w.parts[1].iter().all(|&b| g.has_edge(a, b)))
        }
        WitnessKind::XN => {
            if w.parts.len() != 2 || w.parts[0].len() != w.parts[1].len() || w.parts[0].is_empty()
            {
                return false;
            }
            let (us, vs) = (&w.parts[0], &w.parts[1]);
            clique(us)
                && us.iter().enumerate().all(|(i, &u)| {
                    vs.iter()
                        .enumerate()
                        .all(|(j, &v)| g.has_edge(u, v) == (i != j))
                })
        }
    }
}

fn check_clique_cap(g: &Graph, caps: &Caps) -> Result<()> {
    if g.vertex_count() > caps.clique_vertices {
        return Err(Error::Resource {
            what: format!(
                "vertex count {} for clique enumeration (raise --clique-cap)",
                g.vertex_count()
            ),
            limit: caps.clique_vertices as u64,
            partial: None,
        });
    }
    g.masks().map(|_| ())
}

/// All inclusion-maximal cliques, each sorted, the list in lexicographic
/// order. Bron–Kerbosch with Tomita pivoting.
pub fn maximal_cliques(g: &Graph, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    check_clique_cap(g, caps)?;
    let mut out = Vec::new();
    if g.vertex_count() > 0 {
        bron_kerbosch(g, VertexSet::EMPTY, g.vertex_set()?, VertexSet::EMPTY, &mut out);
    }
    let mut cliques: Vec<Vec<usize>> = out.into_iter().map(VertexSet::to_vec).collect();
    cliques.sort();
    Ok(cliques)
}

fn bron_kerbosch(
    g: &Graph,
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    // pivot maximizing |P ∩ N(u)|, smallest index on ties
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| (p.intersection(g.mask(u)).len(), std::cmp::Reverse(u)))
        .unwrap();
    for v in p.difference(g.mask(pivot)) {
        let nv = g.mask(v);
        bron_kerbosch(g, r.with(v), p.intersection(nv), x.intersection(nv), out);
        p.remove(v);
        x.insert(v);
    }
}

/// Size of the largest clique: 0 for the null graph, 1 for a nonempty
/// edgeless graph.
pub fn clique_number(g: &Graph, caps: &Caps) -> Result<usize> {
    check_clique_cap(g, caps)?;
    let mut best = 0;
    if g.vertex_count() > 0 {
        max_clique(g, 0, g.vertex_set()?, &mut best);
    }
    Ok(best)
}

fn max_clique(g: &Graph, size: usize, p: VertexSet, best: &mut usize) {
    if p.is_empty() {
        *best = (*best).max(size);
        return;
    }
    let mut p = p;
    while !p.is_empty() {
        if size + p.len() <= *best {
            return;
        }
        let v = p.first().unwrap();
        max_clique(g, size + 1, p.intersection(g.mask(v)), best);
        p.remove(v);
    }
}

struct Budget {
    used: u64,
    limit: u64,
    what: &'static str,
}

impl Budget {
    fn new(caps: &Caps, what: &'static str) -> Self {
        Budget {
            used: 0,
            limit: caps.search_work,
            what,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::resource(self.what, self.limit));
        }
        Ok(())
    }
}

/// Finds a (not necessarily induced) `K_{a,b}`: disjoint `A`, `B` with
/// `|A| = a`, `|B| = b` and every cross edge present. Searches `A` in
/// lexicographic order and takes the `b` smallest common neighbors.
pub fn contains_complete_bipartite(
    g: &Graph,
    a: usize,
    b: usize,
    caps: &Caps,
) -> Result<Option<SubgraphWitness>> {
    if a == 0 || b == 0 {
        return Err(Error::argument("complete bipartite parts must be nonempty"));
    }
    let n = g.vertex_count();
    g.masks()?;
    let mut budget = Budget::new(caps, "complete bipartite search work");
    let mut chosen = Vec::with_capacity(a);
    let found = bipartite_dfs(g, a, b, 0, VertexSet::full(n), &mut chosen, &mut budget)?;
    Ok(found.map(|common| SubgraphWitness {
        kind: WitnessKind::CompleteBipartite,
        parts: vec![chosen, common.iter().take(b).collect()],
    }))
}

fn bipartite_dfs(
    g: &Graph,
    a: usize,
    b: usize,
    start: usize,
    common: VertexSet,
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<Option<VertexSet>> {
    if chosen.len() == a {
        return Ok(Some(common));
    }
    let n = g.vertex_count();
    let remaining = a - chosen.len();
    for v in start..n {
        if n - v < remaining {
            break;
        }
        budget.tick()?;
        let next = common.intersection(g.mask(v));
        if next.len() < b {
            continue;
        }
        chosen.push(v);
        if let Some(found) = bipartite_dfs(g, a, b, v + 1, next, chosen, budget)? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}

/// Finds an `X_k` subgraph: a clique `u_0 < .. < u_{k-1}` and distinct
/// `v_0..v_{k-1}` outside it with `u_i ~ v_j` for `i != j` and `u_i ≁ v_i`.
/// Edges among the `v`s are allowed. Cliques are searched in lexicographic
/// order and each `v_i` is the smallest admissible vertex.
pub fn contains_x_n(g: &Graph, k: usize, caps: &Caps) -> Result<Option<SubgraphWitness>> {
    if k == 0 {
        return Err(Error::argument("x_n requires k >= 1"));
    }
    let n = g.vertex_count();
    g.masks()?;
    let mut budget = Budget::new(caps, "x_n search work");
    let mut clique = Vec::with_capacity(k);
    let found = x_n_dfs(g, k, VertexSet::full(n), &mut clique, &mut budget)?;
    Ok(found.map(|vs| SubgraphWitness {
        kind: WitnessKind::XN,
        parts: vec![clique, vs],
    }))
}

fn x_n_dfs(
    g: &Graph,
    k: usize,
    candidates: VertexSet,
    clique: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    if clique.len() == k {
        budget.tick()?;
        return Ok(x_n_partners(g, clique));
    }
    for v in candidates {
        if clique.len() + candidates.len() < k {
            break;
        }
        budget.tick()?;
        let above = VertexSet::from_bits(!((2u128 << v) - 1));
        clique.push(v);
        let next = candidates.intersection(g.mask(v)).intersection(above);
        if let Some(found) = x_n_dfs(g, k, next, clique, budget)? {
            return Ok(Some(found));
        }
        clique.pop();
    }
    Ok(None)
}

/// For a clique `U`, the smallest `v_i` for each `u_i`, or `None` when some
/// `u_i` has no partner. Partners of different `u_i` are automatically
/// distinct: a partner of `u_i` is adjacent to every other `u_j`.
pub(crate) fn x_n_partners(g: &Graph, clique: &[usize]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let u_set: VertexSet = clique.iter().collect();
    clique
        .iter()
        .map(|&u| {
            let rest = u_set.without(u);
            let common = rest
                .iter()
                .fold(VertexSet::full(n), |acc, w| acc.intersection(g.mask(w)));
            common.difference(g.mask(u)).difference(u_set).first()
        })
        .collect()
}
