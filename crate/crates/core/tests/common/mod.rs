//! Shared test corpus and a brute-force homology oracle that shares no code
//! with the library's chain-complex pipeline.

#![allow(dead_code)]

use nbhdcx::graph::{gnp_sample, GnpParams, Graph};

/// All connected graphs on 1..=5 vertices, one per isomorphism class.
pub fn small_connected_graphs() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if !connected(n, &edges) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|perm| {
                    let mut relabeled: Vec<(usize, usize)> = edges
                        .iter()
                        .map(|&(u, v)| {
                            let (a, b) = (perm[u], perm[v]);
                            (a.min(b), a.max(b))
                        })
                        .collect();
                    relabeled.sort_unstable();
                    relabeled
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                out.push(Graph::from_edges(n, edges).unwrap());
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == u { b } else if b == u { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// `G(n, p)` samples for n in 6..=10 and p in {0.2, 0.5, 0.8}.
pub fn gnp_corpus(per_point: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 6..=10usize {
        for (pi, &p) in [0.2, 0.5, 0.8].iter().enumerate() {
            for t in 0..per_point {
                let seed = 1_000_003 * n as u64 + 7919 * pi as u64 + t as u64;
                out.push(gnp_sample(&GnpParams::new(n, p, seed).unwrap()).unwrap());
            }
        }
    }
    out
}

/// The shared corpus: 31 small connected graphs plus 180 random samples.
pub fn corpus() -> Vec<Graph> {
    let mut out = small_connected_graphs();
    out.extend(gnp_corpus(12));
    out
}

/// Every vertex subset with a common neighbor, as bitmasks, by size.
fn naive_faces(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    assert!(n <= 16);
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for s in 1u32..(1 << n) {
        let common = (0..n).any(|w| (0..n).all(|v| s >> v & 1 == 0 || g.has_edge(v, w)));
        if common {
            by_size[s.count_ones() as usize].push(s);
        }
    }
    by_size
}

/// Rank of a matrix over the prime field of order `q`.
fn rank_mod(mut rows: Vec<Vec<i64>>, q: i64) -> usize {
    for r in rows.iter_mut() {
        for x in r.iter_mut() {
            *x = x.rem_euclid(q);
        }
    }
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], q - 2, q);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % q;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] - f * rows[rank][k]).rem_euclid(q);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, q: i64) -> i64 {
    let mut acc = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// Reduced Betti numbers of `N[G]` over the field of order `q`, through
/// `max_dim`, from the naive face list with an augmented chain complex.
pub fn naive_betti_mod(g: &Graph, max_dim: usize, q: i64) -> Vec<u64> {
    let faces = naive_faces(g);
    // chain group k holds faces of size k + 1; size 0 is the augmentation
    let group = |k: isize| -> Vec<u32> {
        if k == -1 {
            if faces.iter().all(|f| f.is_empty()) {
                vec![]
            } else {
                vec![0]
            }
        } else {
            faces.get(k as usize + 1).cloned().unwrap_or_default()
        }
    };
    // rank of the boundary from group k to group k - 1
    let boundary_rank = |k: isize| -> usize {
        let (src, dst) = (group(k), group(k - 1));
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let index: std::collections::HashMap<u32, usize> =
            dst.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows: Vec<Vec<i64>> = src
            .iter()
            .map(|&s| {
                let mut row = vec![0i64; dst.len()];
                let verts: Vec<u32> = (0..32).filter(|v| s >> v & 1 == 1).collect();
                for (pos, &v) in verts.iter().enumerate() {
                    let face = if k == 0 { 0 } else { s & !(1 << v) };
                    row[index[&face]] = if pos % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        rank_mod(rows, q)
    };
    (0..=max_dim as isize)
        .map(|k| (group(k).len() - boundary_rank(k) - boundary_rank(k + 1)) as u64)
        .collect()
}

/// Primes for the coefficient checks. The last one stands in for the
/// rationals.
pub const ORACLE_PRIMES: [i64; 5] = [2, 3, 5, 7, 1_000_003];

/// Checks an integral homology result against the naive ranks: the free
/// part against the large prime and each small prime through the universal
/// coefficient count `β_k + t_k(q) + t_{k-1}(q)`.
pub fn check_against_oracle(
    g: &Graph,
    betti: &[u64],
    torsion: &[Vec<u64>],
) -> Result<(), String> {
    let max_dim = betti.len() - 1;
    for &q in &ORACLE_PRIMES {
        let naive = naive_betti_mod(g, max_dim, q);
        let t = |k: usize| -> u64 {
            torsion
                .get(k)
                .map_or(0, |f| f.iter().filter(|&&x| x as i64 % q == 0).count() as u64)
        };
        let predicted: Vec<u64> = (0..=max_dim)
            .map(|k| betti[k] + t(k) + if k > 0 { t(k - 1) } else { 0 })
            .collect();
        if predicted != naive {
            return Err(format!(
                "mod {q}: pipeline predicts {predicted:?}, naive gives {naive:?}"
            ));
        }
    }
    Ok(())
}
