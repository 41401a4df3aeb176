//! Modular Aomoto-Betti numbers.
//!
//! Over the field with `p` elements, take the degree one and two parts of the
//! Orlik-Solomon algebra and multiply by the diagonal element
//! `sigma = sum of all e_l`. The number `beta_p` is the dimension of the
//! kernel of that map modulo the span of `sigma` itself.
//!
//! For a point `P` with incident lines `l0 < l1 < ...` the degree two part is
//! spanned by `e_{l0} e_{lj}`, `j >= 1`, and the remaining products rewrite
//! as `e_{li} e_{lj} = e_{l0} e_{lj} - e_{l0} e_{li}`.

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::IntersectionLattice;
use crate::linalg::{is_prime, rank_mod_p_small};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResonanceError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// The multiplication-by-sigma map from degree one to degree two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AomotoComplexSlice {
    pub p: u64,
    pub dim1: usize,
    pub dim2: usize,
    /// `dim2` rows by `dim1` columns, entries in `0..p`.
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AomotoReport {
    pub p: u64,
    pub dim1: usize,
    pub dim2: usize,
    pub rank: usize,
    pub beta: usize,
}

pub fn aomoto_complex(
    lattice: &IntersectionLattice,
    p: u64,
) -> Result<AomotoComplexSlice, ResonanceError> {
    if !is_prime(p) {
        return Err(ResonanceError::NotPrime(p));
    }
    let n = lattice.n_lines();
    // Row offset of each point's block; block size is multiplicity - 1.
    let mut offsets = Vec::with_capacity(lattice.points().len());
    let mut dim2 = 0;
    for pt in lattice.points() {
        offsets.push(dim2);
        dim2 += pt.multiplicity() - 1;
    }
    let mut matrix = vec![vec![0u64; n]; dim2];
    let add = |m: &mut Vec<Vec<u64>>, row: usize, col: usize, neg: bool| {
        let e = &mut m[row][col];
        *e = if neg { (*e + p - 1) % p } else { (*e + 1) % p };
    };
    for (pt, &off) in lattice.points().iter().zip(&offsets) {
        let lines: Vec<usize> = pt.incident.iter().copied().collect();
        // Position of e_{l0} e_{l_t} in the block is t - 1.
        for ti in 0..lines.len() {
            for (tj, &lj) in lines.iter().enumerate() {
                if ti == tj {
                    continue;
                }
                // Term e_{li} e_{lj} contributed by x_{lj} in column lj.
                let (a, b, sign_neg) = if ti < tj {
                    (ti, tj, false)
                } else {
                    (tj, ti, true)
                };
                if a == 0 {
                    add(&mut matrix, off + b - 1, lj, sign_neg);
                } else {
                    add(&mut matrix, off + b - 1, lj, sign_neg);
                    add(&mut matrix, off + a - 1, lj, !sign_neg);
                }
            }
        }
    }
    Ok(AomotoComplexSlice {
        p,
        dim1: n,
        dim2,
        matrix,
    })
}

/// `beta_p` of the arrangement together with the sizes it came from.
pub fn aomoto_betti(lattice: &IntersectionLattice, p: u64) -> Result<AomotoReport, ResonanceError> {
    let slice = aomoto_complex(lattice, p)?;
    let rank = rank_mod_p_small(slice.matrix.clone(), p);
    Ok(AomotoReport {
        p,
        dim1: slice.dim1,
        dim2: slice.dim2,
        rank,
        beta: slice.dim1 - rank - 1,
    })
}
