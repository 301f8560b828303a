use std::collections::HashMap;

use crate::caps::Caps;
use crate::complex::{FaceSource, Simplex};
use crate::error::{Error, Result};

/// A sparse integer matrix stored by columns; each column lists
/// `(row, coefficient)` with rows strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<Vec<(u32, i8)>>,
}

impl SparseMatrix {
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.ncols()]; self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                d[r as usize][c] = v as i64;
            }
        }
        d
    }

    /// `self * rhs` as a dense matrix.
    pub fn compose_dense(&self, rhs: &SparseMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.ncols(), rhs.nrows);
        let mut out = vec![vec![0i64; rhs.ncols()]; self.nrows];
        for (c, col) in rhs.cols.iter().enumerate() {
            for &(mid, a) in col {
                for &(r, b) in &self.cols[mid as usize] {
                    out[r as usize][c] += a as i64 * b as i64;
                }
            }
        }
        out
    }
}

/// Oriented chain complex of a simplicial complex, augmented for reduced
/// homology.
///
/// `faces_by_dim[k]` lists the `k`-faces for `k = 0..=max_dim + 1`;
/// `boundaries[k]` is `∂_k`, where `∂_0` is the augmentation `C_0 → ℤ`
/// sending every vertex to 1.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub max_dim: usize,
    pub complex_dim: i64,
    pub faces_by_dim: Vec<Vec<Simplex>>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    /// Whether dimensions above `max_dim` exist in the complex.
    pub fn truncated(&self) -> bool {
        (self.max_dim as i64) < self.complex_dim
    }

    pub fn is_empty_complex(&self) -> bool {
        self.complex_dim < 0
    }

    /// Face counts for the enumerated dimensions.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(Vec::len).collect()
    }
}

/// Enumerates faces through dimension `max_dim + 1` and builds every
/// boundary map with the alternating-sign convention
/// `∂[v_0 < .. < v_k] = Σ (-1)^i [.. v̂_i ..]`.
pub fn boundary_matrices(
    source: &impl FaceSource,
    max_dim: usize,
    caps: &Caps,
) -> Result<ChainComplexData> {
    let complex_dim = source.dimension();
    let mut faces_by_dim: Vec<Vec<Simplex>> = Vec::with_capacity(max_dim + 2);
    let mut total = 0usize;
    for k in 0..=max_dim + 1 {
        let faces = if (k as i64) <= complex_dim {
            source.faces(k, caps.faces)?
        } else {
            Vec::new()
        };
        total += faces.len();
        if total > caps.faces {
            return Err(Error::resource(
                format!("face count through dimension {k}"),
                caps.faces as u64,
            ));
        }
        faces_by_dim.push(faces);
    }

    let mut boundaries = Vec::with_capacity(max_dim + 2);
    boundaries.push(SparseMatrix {
        nrows: 1,
        cols: vec![vec![(0, 1)]; faces_by_dim[0].len()],
    });
    for k in 1..=max_dim + 1 {
        let index: HashMap<&[u32], u32> = faces_by_dim[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i as u32))
            .collect();
        let mut cols = Vec::with_capacity(faces_by_dim[k].len());
        let mut facet = Vec::with_capacity(k);
        for face in &faces_by_dim[k] {
            let mut col: Vec<(u32, i8)> = (0..face.len())
                .map(|i| {
                    facet.clear();
                    facet.extend(face.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                    let row = *index
                        .get(facet.as_slice())
                        .expect("faces are closed under taking subsets");
                    (row, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable_by_key(|&(r, _)| r);
            cols.push(col);
        }
        boundaries.push(SparseMatrix {
            nrows: faces_by_dim[k - 1].len(),
            cols,
        });
    }
    Ok(ChainComplexData {
        max_dim,
        complex_dim,
        faces_by_dim,
        boundaries,
    })
}
