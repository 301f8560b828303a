use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Largest vertex count a Kneser graph may have before construction refuses.
const KNESER_VERTEX_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complete,
    Cycle,
    Path,
    CompleteBipartite,
    Kneser,
    XN,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Kneser => "kneser",
            Family::XN => "xn",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "complete" | "k" => Family::Complete,
            "cycle" | "c" => Family::Cycle,
            "path" | "p" => Family::Path,
            "complete_bipartite" | "bipartite" | "kab" => Family::CompleteBipartite,
            "kneser" | "kg" => Family::Kneser,
            "xn" | "x_n" | "x" => Family::XN,
            other => return Err(Error::argument(format!("unknown graph family `{other}`"))),
        })
    }
}

/// A family together with its parameters, as written on the command line:
/// `complete:5`, `cycle:7`, `kneser:2,1`, `xn:3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub family: Family,
    pub params: Vec<usize>,
}

impl NamedGraph {
    pub fn build(&self) -> Result<Graph> {
        make_named_graph(self.family, &self.params)
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let family = name.trim().parse()?;
        let params = rest
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|e| Error::argument(format!("bad parameter `{p}` in `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NamedGraph { family, params })
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(usize::to_string).collect();
        write!(f, "{}:{}", self.family.name(), params.join(","))
    }
}

/// Builds a member of one of the named families.
///
/// Labelings: `cycle(m)` and `path(m)` follow `0-1-..-(m-1)`;
/// `complete_bipartite(a, b)` puts the `a` side first; `kneser(n, k)` lists
/// the `n`-subsets of `{0, .., 2n+k-1}` in lexicographic order; `xn(n)` puts
/// `u_0..u_{n-1}` first, then `v_0..v_{n-1}`.
pub fn make_named_graph(family: Family, params: &[usize]) -> Result<Graph> {
    let want = |count: usize| -> Result<()> {
        if params.len() != count {
            return Err(Error::argument(format!(
                "family {} takes {count} parameter(s), got {}",
                family.name(),
                params.len()
            )));
        }
        Ok(())
    };
    match family {
        Family::Complete => {
            want(1)?;
            let m = params[0];
            Graph::from_edges(m, (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))))
        }
        Family::Cycle => {
            want(1)?;
            let m = params[0];
            if m < 3 {
                return Err(Error::argument(format!("cycle length must be >= 3, got {m}")));
            }
            Graph::from_edges(m, (0..m).map(|u| (u, (u + 1) % m)))
        }
        Family::Path => {
            want(1)?;
            let m = params[0];
            Graph::from_edges(m, (1..m).map(|u| (u - 1, u)))
        }
        Family::CompleteBipartite => {
            want(2)?;
            let (a, b) = (params[0], params[1]);
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        Family::Kneser => {
            want(2)?;
            kneser(params[0], params[1])
        }
        Family::XN => {
            want(1)?;
            let n = params[0];
            if n < 1 {
                return Err(Error::argument("xn requires n >= 1"));
            }
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i < j {
                        edges.push((i, j));
                    }
                    if i != j {
                        edges.push((i, n + j));
                    }
                }
            }
            Graph::from_edges(2 * n, edges)
        }
    }
}

fn kneser(n: usize, k: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::argument("kneser requires n >= 1"));
    }
    let ground = 2 * n + k;
    if ground > 64 {
        return Err(Error::argument(format!(
            "kneser ground set of size {ground} is too large"
        )));
    }
    let mut subsets: Vec<u64> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    'outer: loop {
        subsets.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        if subsets.len() > KNESER_VERTEX_LIMIT {
            return Err(Error::argument(format!(
                "kneser({n},{k}) has more than {KNESER_VERTEX_LIMIT} vertices"
            )));
        }
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            if idx[pos] < ground - n + pos {
                idx[pos] += 1;
                for j in pos + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        break;
    }
    let mut edges = Vec::new();
    for (a, &sa) in subsets.iter().enumerate() {
        for (b, &sb) in subsets.iter().enumerate().skip(a + 1) {
            if sa & sb == 0 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(subsets.len(), edges)
}

/// Parameters of the Erdős–Rényi model `G(n, p)` plus a master seed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::argument(format!("edge probability {p} outside [0, 1]")));
        }
        Ok(GnpParams { n, p, seed })
    }
}

/// Samples `G(n, p)`.
///
/// The unordered pair with lexicographic index `t` (pairs `(u, v)`, `u < v`,
/// in lexicographic order) is present iff the 64-bit word at position
/// `2t` of the ChaCha8 stream keyed by `seed`, read as a uniform in
/// `[0, 1)`, is below `p`. The draw for a pair depends only on
/// `(seed, t)`.
pub fn gnp_sample(params: &GnpParams) -> Result<Graph> {
    let GnpParams { n, p, seed } = *params;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::argument(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if unit_interval(rng.next_u64()) < p {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    Ok(Graph::from_sorted_adjacency(adjacency))
}

/// The uniform draw for pair index `t`, addressed directly by stream position.
pub fn pair_draw(seed: u64, pair_index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(2 * pair_index as u128);
    unit_interval(rng.next_u64())
}

fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
