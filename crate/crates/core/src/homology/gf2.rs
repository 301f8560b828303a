use std::collections::HashMap;

use super::chain::SparseMatrix;

/// Rank over the two-element field by column reduction on sparse columns:
/// each column is reduced by earlier columns sharing its lowest row until its
/// lowest row is unclaimed or it vanishes.
pub fn rank_mod2(m: &SparseMatrix) -> usize {
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    for col in &m.cols {
        let mut current: Vec<u32> = col
            .iter()
            .filter(|&&(_, v)| v % 2 != 0)
            .map(|&(r, _)| r)
            .collect();
        while let Some(&low) = current.last() {
            match pivots.get(&low) {
                Some(other) => current = symmetric_difference(&current, other),
                None => break,
            }
        }
        if let Some(&low) = current.last() {
            pivots.insert(low, current);
        }
    }
    pivots.len()
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
