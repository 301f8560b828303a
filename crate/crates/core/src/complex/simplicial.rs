use std::collections::HashSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simplex as a strictly increasing vertex list.
pub type Simplex = Vec<u32>;

/// Anything that can list its `k`-faces in lexicographic order.
///
/// Chain complexes are built through this trait so that complexes with a
/// cheaper face oracle than facet expansion (graphs, posets) can supply one.
pub trait FaceSource {
    /// Dimension of the complex, `-1` when empty.
    fn dimension(&self) -> i64;

    /// All faces with `k + 1` vertices, sorted lexicographically. `limit`
    /// caps the number of candidate faces examined.
    fn faces(&self, k: usize, limit: usize) -> Result<Vec<Simplex>>;
}

/// A finite simplicial complex stored by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    ground_set: usize,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Normalizes `facets`: sorts each, drops empties, duplicates and any set
    /// contained in another.
    pub fn new(ground_set: usize, facets: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let mut sets: Vec<Simplex> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        if let Some(&bad) = sets.iter().flatten().find(|&&v| v as usize >= ground_set) {
            return Err(Error::argument(format!(
                "vertex {bad} outside the ground set 0..{ground_set}"
            )));
        }
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut kept: Vec<Simplex> = Vec::with_capacity(sets.len());
        for s in sets {
            if !kept.iter().any(|k| is_sorted_subset(&s, k)) {
                kept.push(s);
            }
        }
        kept.sort();
        Ok(SimplicialComplex {
            ground_set,
            facets: kept,
        })
    }

    /// Trusts that `facets` are sorted, nonempty and mutually incomparable.
    pub(crate) fn from_facets_unchecked(ground_set: usize, mut facets: Vec<Simplex>) -> Self {
        facets.sort();
        SimplicialComplex { ground_set, facets }
    }

    pub fn empty(ground_set: usize) -> Self {
        SimplicialComplex {
            ground_set,
            facets: Vec::new(),
        }
    }

    pub fn ground_set(&self) -> usize {
        self.ground_set
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64).max().unwrap_or(0) - 1
    }

    /// `s` is a face iff it lies in some facet. The empty set is a face of
    /// every nonempty complex.
    pub fn is_face(&self, s: &[u32]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        self.facets.iter().any(|f| is_sorted_subset(&s, f))
    }

    /// Face counts `f_0, .., f_dim`.
    pub fn f_vector(&self, limit: usize) -> Result<Vec<usize>> {
        (0..=self.dimension().max(-1))
            .map(|k| self.faces(k as usize, limit).map(|f| f.len()))
            .collect()
    }

    /// The `dim <d>` header plus one facet per line.
    pub fn to_facet_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dimension());
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    /// Parses the facet-list format. The ground set is one past the largest
    /// vertex mentioned. The header's dimension must match the facets.
    pub fn parse_facet_text(text: &str) -> Result<Self> {
        let mut declared: Option<i64> = None;
        let mut facets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            if declared.is_none() {
                let mut it = line.split_whitespace();
                let (Some("dim"), Some(d), None) = (it.next(), it.next(), it.next()) else {
                    return Err(parse_err(format!("expected header `dim <d>`, got `{line}`")));
                };
                declared = Some(
                    d.parse()
                        .map_err(|e| parse_err(format!("bad dimension `{d}`: {e}")))?,
                );
                continue;
            }
            let facet = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|e| parse_err(format!("bad vertex `{t}`: {e}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            facets.push(facet);
        }
        let declared = declared.ok_or(Error::Parse {
            line: 1,
            message: "missing `dim <d>` header".into(),
        })?;
        let ground = facets.iter().flatten().map(|&v| v as usize + 1).max().unwrap_or(0);
        let c = SimplicialComplex::new(ground, facets)?;
        if c.dimension() != declared {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "header declares dimension {declared} but the facets span dimension {}",
                    c.dimension()
                ),
            });
        }
        Ok(c)
    }
}

impl FaceSource for SimplicialComplex {
    fn dimension(&self) -> i64 {
        SimplicialComplex::dimension(self)
    }

    fn faces(&self, k: usize, limit: usize) -> Result<Vec<Simplex>> {
        let mut seen: HashSet<Simplex> = HashSet::new();
        let mut examined = 0usize;
        for f in self.facets.iter().filter(|f| f.len() > k) {
            let mut buf = Vec::with_capacity(k + 1);
            let mut overflow = false;
            for_each_combination(f, k + 1, &mut buf, &mut |s| {
                examined += 1;
                if examined > limit {
                    overflow = true;
                    return false;
                }
                if !seen.contains(s) {
                    seen.insert(s.to_vec());
                }
                true
            });
            if overflow {
                return Err(Error::resource(format!("face count in dimension {k}"), limit as u64));
            }
        }
        let mut out: Vec<Simplex> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }
}

pub(crate) fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn for_each_combination(
    items: &[u32],
    k: usize,
    buf: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]) -> bool,
) -> bool {
    if buf.len() == k {
        return f(buf);
    }
    let need = k - buf.len();
    for i in 0..items.len() {
        if items.len() - i < need {
            break;
        }
        buf.push(items[i]);
        let go_on = for_each_combination(&items[i + 1..], k, buf, f);
        buf.pop();
        if !go_on {
            return false;
        }
    }
    true
}
