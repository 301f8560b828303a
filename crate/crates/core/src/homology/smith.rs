use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive};

use super::chain::SparseMatrix;
use crate::error::{Error, Result};

/// Rank and nontrivial invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithSummary {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<u64>,
}

/// Smith normal form invariants of `m`.
///
/// Unit pivots are eliminated on the sparse structure first (each removes one
/// invariant factor equal to 1); the remainder goes through a dense Smith
/// reduction that always pivots on the smallest nonzero absolute value,
/// breaking ties by lowest row then column. Arithmetic runs in checked `i64`
/// and restarts in arbitrary precision on overflow.
pub fn smith_invariants(m: &SparseMatrix) -> Result<SmithSummary> {
    let (rank, factors) = match eliminate::<i64>(m) {
        Some((rank, f)) => (rank, f.into_iter().map(BigInt::from).collect::<Vec<_>>()),
        None => eliminate::<BigInt>(m).expect("arbitrary precision cannot overflow"),
    };
    let mut torsion = factors
        .into_iter()
        .filter(|f| !f.is_one())
        .map(|f| {
            f.to_u64()
                .ok_or_else(|| Error::domain(format!("torsion coefficient {f} exceeds 64 bits")))
        })
        .collect::<Result<Vec<u64>>>()?;
    torsion.sort_unstable();
    Ok(SmithSummary { rank, torsion })
}

trait Scalar:
    Clone + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i8>
{
}

impl<T> Scalar for T where
    T: Clone + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i8>
{
}

/// Returns the rank and the absolute nonzero diagonal of the reduced
/// remainder, or `None` on overflow.
fn eliminate<T: Scalar>(m: &SparseMatrix) -> Option<(usize, Vec<T>)> {
    let ncols = m.ncols();
    let mut cols: Vec<Vec<(u32, T)>> = m
        .cols
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, T::from(v))).collect())
        .collect();
    let mut rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); m.nrows];
    for (c, col) in cols.iter().enumerate() {
        for (r, _) in col {
            rows[*r as usize].insert(c as u32);
        }
    }
    let mut active = vec![true; ncols];
    let mut rank = 0usize;

    loop {
        let mut progress = false;
        for c in 0..ncols {
            if !active[c] || cols[c].is_empty() {
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(r, _)| (rows[*r as usize].len(), *r))
                .map(|(r, v)| (*r, v.clone()));
            let Some((r, unit)) = pivot else { continue };
            let pivot_col = std::mem::take(&mut cols[c]);
            active[c] = false;
            for (row, _) in &pivot_col {
                rows[*row as usize].remove(&(c as u32));
            }
            let others: Vec<u32> = rows[r as usize].iter().copied().collect();
            for c2 in others {
                let c2 = c2 as usize;
                let entry = cols[c2]
                    .iter()
                    .find(|(row, _)| *row == r)
                    .map(|(_, v)| v.clone())?;
                let factor = entry.checked_mul(&unit)?;
                let updated = axpy(&cols[c2], &factor, &pivot_col)?;
                for (row, _) in &cols[c2] {
                    rows[*row as usize].remove(&(c2 as u32));
                }
                for (row, _) in &updated {
                    rows[*row as usize].insert(c2 as u32);
                }
                cols[c2] = updated;
            }
            rank += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let rest: Vec<usize> = (0..ncols)
        .filter(|&c| active[c] && !cols[c].is_empty())
        .collect();
    if rest.is_empty() {
        return Some((rank, Vec::new()));
    }
    let used_rows: Vec<u32> = rows
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(r, _)| r as u32)
        .collect();
    let mut dense = vec![vec![T::zero(); rest.len()]; used_rows.len()];
    for (j, &c) in rest.iter().enumerate() {
        for (r, v) in &cols[c] {
            let i = used_rows.binary_search(r).expect("row index is current");
            dense[i][j] = v.clone();
        }
    }
    let diagonal = dense_smith(dense)?;
    rank += diagonal.len();
    Some((rank, diagonal))
}

/// `x - factor * y` on sparse columns.
fn axpy<T: Scalar>(x: &[(u32, T)], factor: &T, y: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            let v = T::zero().checked_sub(&factor.checked_mul(&y[j].1)?)?;
            out.push((y[j].0, v));
            j += 1;
        } else {
            let v = x[i].1.checked_sub(&factor.checked_mul(&y[j].1)?)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Dense Smith reduction; returns the absolute values of the nonzero
/// diagonal entries in order.
fn dense_smith<T: Scalar>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    for t in 0..nrows.min(ncols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, t) else {
                return Some(diagonal);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                for j in t..ncols {
                    let delta = q.checked_mul(&a[t][j])?;
                    a[i][j] = a[i][j].checked_sub(&delta)?;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for row in a.iter_mut().skip(t) {
                    let delta = q.checked_mul(&row[t])?;
                    row[j] = row[j].checked_sub(&delta)?;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole remaining block
            let offender = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    for j in t..ncols {
                        a[t][j] = a[t][j].checked_add(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    Some(diagonal)
}

fn smallest_nonzero<T: Scalar>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(T, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| abs < *b) {
                best = Some((abs, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}
