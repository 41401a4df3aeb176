//! Graded pieces of `R / J_f` by exact linear algebra.
//!
//! The degree `k` piece of the Jacobian ideal is spanned by `m * df/dv_i`
//! with `m` running over monomials of the complementary degree, so its
//! dimension is a matrix rank. No Groebner bases are involved.

use std::collections::HashMap;

use serde::Serialize;

use super::poly::{monomials_of_degree, weighted_degree, Monomial, Poly};
use super::PolyError;
use crate::linalg::{integer_rows, is_prime, rank_bareiss, rank_mod_p};
use crate::rational::Q;

/// Prime used for the modular cross-check unless the caller picks another.
pub const DEFAULT_CHECK_PRIME: u64 = 2_147_483_647;

/// Keeps only monomials whose `weights`-degree is `residue` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicRestriction {
    pub weights: Vec<u32>,
    pub modulus: u32,
    pub residue: u32,
}

impl CyclicRestriction {
    fn class(&self, e: &[u32]) -> u32 {
        weighted_degree(e, &self.weights) % self.modulus
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientOptions {
    /// Positive grading weights; all ones when absent.
    pub weights: Option<Vec<u32>>,
    pub restriction: Option<CyclicRestriction>,
    pub check_prime: u64,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            weights: None,
            restriction: None,
            check_prime: DEFAULT_CHECK_PRIME,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedQuotientReport {
    pub poly: String,
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction: Option<CyclicRestriction>,
    pub k: u32,
    pub dim_rk: usize,
    pub rank: usize,
    pub dim_quotient: usize,
    pub check_prime: u64,
    pub check_rank: usize,
}

impl GradedQuotientReport {
    pub fn modular_agrees(&self) -> bool {
        self.rank == self.check_rank
    }
}

/// Partial derivatives in variable order.
pub fn jacobian_generators(f: &Poly) -> Result<Vec<Poly>, PolyError> {
    if f.is_constant() {
        return Err(PolyError::Constant);
    }
    Ok((0..f.nvars()).map(|i| f.derivative(i)).collect())
}

/// Dimension of the degree `k` piece of the Milnor algebra in the standard grading.
pub fn graded_quotient_dim(f: &Poly, k: u32) -> Result<GradedQuotientReport, PolyError> {
    quotient_dim(f, k, &QuotientOptions::default())
}

/// Dimension of a graded piece of `R / J_f`.
///
/// Every nonzero partial derivative must be homogeneous for the grading (and
/// for the cyclic grading, if a restriction is given); this is the case for
/// weighted-homogeneous `f` and also for sums of pure powers.
pub fn quotient_dim(
    f: &Poly,
    k: u32,
    opts: &QuotientOptions,
) -> Result<GradedQuotientReport, PolyError> {
    let v = f.nvars();
    let weights = opts.weights.clone().unwrap_or_else(|| vec![1; v]);
    if weights.len() != v || weights.contains(&0) {
        return Err(PolyError::BadWeights(format!(
            "need {v} positive weights, got {weights:?}"
        )));
    }
    if let Some(r) = &opts.restriction {
        if r.weights.len() != v || r.modulus == 0 || r.residue >= r.modulus {
            return Err(PolyError::BadWeights(format!(
                "bad cyclic restriction {r:?}"
            )));
        }
    }
    if !is_prime(opts.check_prime) {
        return Err(PolyError::NotPrime(opts.check_prime));
    }

    let mut generators: Vec<(Poly, u32, u32)> = Vec::new();
    for g in jacobian_generators(f)? {
        if g.is_zero() {
            continue;
        }
        let deg = g
            .weighted_homogeneous_degree(&weights)
            .ok_or(PolyError::Inhomogeneous)?;
        let class = match &opts.restriction {
            None => 0,
            Some(r) => {
                let mut classes = g.terms().keys().map(|e| r.class(e));
                let first = classes.next().unwrap();
                if !classes.all(|c| c == first) {
                    return Err(PolyError::Inhomogeneous);
                }
                first
            }
        };
        generators.push((g, deg, class));
    }

    let keep = |e: &Monomial, extra: u32| match &opts.restriction {
        None => true,
        Some(r) => (r.class(e) + extra) % r.modulus == r.residue,
    };
    let basis: Vec<Monomial> = monomials_of_degree(&weights, k)
        .into_iter()
        .filter(|e| keep(e, 0))
        .collect();
    let column: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();

    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (g, deg, class) in &generators {
        if *deg > k {
            continue;
        }
        for m in monomials_of_degree(&weights, k - deg) {
            if !keep(&m, *class) {
                continue;
            }
            let mut row = vec![Q::default(); basis.len()];
            for (e, c) in g.shift(&m).terms() {
                row[column[e]] = c.clone();
            }
            rows.push(row);
        }
    }
    let int_rows = integer_rows(&rows);
    let check_rank = rank_mod_p(&int_rows, opts.check_prime);
    let rank = rank_bareiss(int_rows);
    Ok(GradedQuotientReport {
        poly: f.to_string(),
        variables: f.vars().to_vec(),
        weights,
        restriction: opts.restriction.clone(),
        k,
        dim_rk: basis.len(),
        rank,
        dim_quotient: basis.len() - rank,
        check_prime: opts.check_prime,
        check_rank,
    })
}
