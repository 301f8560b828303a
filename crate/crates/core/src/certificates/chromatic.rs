use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{clique_number, Graph};

/// Colors vertices in DSATUR order, each with its smallest free color.
/// Returns the color of every vertex.
pub fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut color = vec![usize::MAX; n];
    for _ in 0..n {
        let v = pick_vertex(g, &color);
        let used = forbidden(g, &color, v);
        color[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    color
}

fn forbidden(g: &Graph, color: &[usize], v: usize) -> Vec<usize> {
    let mut used: Vec<usize> = g
        .neighbors(v)
        .iter()
        .map(|&w| color[w])
        .filter(|&c| c != usize::MAX)
        .collect();
    used.sort_unstable();
    used.dedup();
    used
}

/// Uncolored vertex of largest saturation, then largest uncolored degree,
/// then smallest index.
fn pick_vertex(g: &Graph, color: &[usize]) -> usize {
    (0..g.vertex_count())
        .filter(|&v| color[v] == usize::MAX)
        .max_by_key(|&v| {
            let sat = forbidden(g, color, v).len();
            let free_deg = g.neighbors(v).iter().filter(|&&w| color[w] == usize::MAX).count();
            (sat, free_deg, std::cmp::Reverse(v))
        })
        .expect("an uncolored vertex remains")
}

/// Exact chromatic number by branch and bound. The clique number is the
/// lower bound and the greedy coloring the initial upper bound; branching
/// takes the most constrained vertex and tries colors in increasing order.
pub fn chromatic_number_exact(g: &Graph, vertex_cap: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n > vertex_cap {
        return Err(Error::resource(
            "vertex count for the exact chromatic solver",
            vertex_cap as u64,
        ));
    }
    if n == 0 {
        return Ok(0);
    }
    let lower = clique_number(g, &Caps::default())?;
    let mut best = greedy_coloring(g).into_iter().max().unwrap() + 1;
    if best > lower {
        let mut color = vec![usize::MAX; n];
        branch(g, &mut color, 0, 0, lower, &mut best);
    }
    Ok(best)
}

/// Returns true once a coloring with `lower` colors is found.
fn branch(
    g: &Graph,
    color: &mut [usize],
    colored: usize,
    used: usize,
    lower: usize,
    best: &mut usize,
) -> bool {
    if colored == color.len() {
        *best = used;
        return used == lower;
    }
    let v = pick_vertex(g, color);
    let taken = forbidden(g, color, v);
    // color `used` opens a new class; only worth it while below the best
    for c in 0..=used {
        if c + 1 >= *best {
            break;
        }
        if taken.binary_search(&c).is_ok() {
            continue;
        }
        color[v] = c;
        let done = branch(g, color, colored + 1, used.max(c + 1), lower, best);
        color[v] = usize::MAX;
        if done {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named_graph, Family};
    use proptest::prelude::*;

    fn fam(f: Family, p: &[usize]) -> Graph {
        make_named_graph(f, p).unwrap()
    }

    #[test]
    fn small_families() {
        assert_eq!(chromatic_number_exact(&fam(Family::Complete, &[4]), 20).unwrap(), 4);
        assert_eq!(chromatic_number_exact(&fam(Family::Cycle, &[5]), 20).unwrap(), 3);
        assert_eq!(chromatic_number_exact(&fam(Family::Cycle, &[6]), 20).unwrap(), 2);
        assert_eq!(chromatic_number_exact(&fam(Family::Kneser, &[2, 1]), 20).unwrap(), 3);
        assert_eq!(chromatic_number_exact(&Graph::empty(3), 20).unwrap(), 1);
        assert_eq!(chromatic_number_exact(&Graph::empty(0), 20).unwrap(), 0);
        assert!(chromatic_number_exact(&Graph::empty(21), 20).unwrap_err().is_resource());
    }

    #[test]
    fn greedy_is_proper() {
        let g = fam(Family::Kneser, &[2, 1]);
        let c = greedy_coloring(&g);
        assert!(g.edges().all(|(u, v)| c[u] != c[v]));
    }

    /// Brute force: smallest k admitting a proper coloring, trying all k^n maps.
    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.vertex_count();
        (1..=n.max(1))
            .find(|&k| {
                let total = k.pow(n as u32);
                (0..total).any(|mut code| {
                    let mut c = vec![0; n];
                    for slot in c.iter_mut() {
                        *slot = code % k;
                        code /= k;
                    }
                    g.edges().all(|(u, v)| c[u] != c[v])
                })
            })
            .unwrap()
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..8, bits in proptest::collection::vec(any::<bool>(), 28)) {
            let mut edges = Vec::new();
            let mut t = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[t] { edges.push((u, v)); }
                    t += 1;
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            prop_assert_eq!(chromatic_number_exact(&g, 20).unwrap(), brute_chromatic(&g));
        }
    }
}
