//! Counting invariant polar forms and solving for the eigenspace dimensions.

use num_traits::Zero;
use serde::Serialize;

use super::AlexanderError;
use crate::gradedalg::{parse_poly, Poly};
use crate::rational::{q_frac, Q};
use crate::spectrum::{
    spectrum_to_table, steenbrink_spectrum, thom_sebastiani_join, MonodromyTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantCount {
    pub n: u32,
    pub t: u32,
    pub count: u64,
    /// Set when the degree `t n - 4` is negative, so the count is vacuously zero.
    pub negative_degree: bool,
}

/// Monomials `y^a z^b x0^c x2^d` of degree `t n - 4` with `a, b <= n - 2` and
/// `a + b = n - 2`: numerators of invariant forms `h Omega / f^t` surviving
/// the pure powers in the Jacobian ideal.
///
/// There are `n - 1` choices of `(a, b)` and `(t - 1) n - 1` of `(c, d)`.
pub fn invariant_monomial_count(n: u32, t: u32) -> Result<InvariantCount, AlexanderError> {
    if n < 2 {
        return Err(AlexanderError::DegreeTooSmall(n));
    }
    if !(1..=3).contains(&t) {
        return Err(AlexanderError::PoleOrder(t));
    }
    let negative_degree = (t * n) < 4;
    let cd = ((t - 1) * n) as i64 - 1;
    let count = if cd <= 0 {
        0
    } else {
        (n as u64 - 1) * cd as u64
    };
    Ok(InvariantCount {
        n,
        t,
        count,
        negative_degree,
    })
}

/// Upper bound `(n-1)^2` on the monodromy-invariant part of the primitive cohomology.
pub fn invariant_bound(n: u32) -> Result<u64, AlexanderError> {
    if n < 2 {
        return Err(AlexanderError::DegreeTooSmall(n));
    }
    Ok(((n - 1) as u64).pow(2))
}

/// Monodromy table of `y^n` in reduced degree 0.
pub fn pure_power_table(n: u32) -> Result<MonodromyTable, AlexanderError> {
    let f: Poly = parse_poly(&format!("y^{n}"), &["y"])?;
    Ok(spectrum_to_table(&steenbrink_spectrum(&f, n, &[1])?, 0))
}

/// Degree-1 table of `y^n + z^n`, as the join of two pure powers.
pub fn fermat_table(n: u32) -> Result<MonodromyTable, AlexanderError> {
    let t = pure_power_table(n)?;
    Ok(thom_sebastiani_join(&t, &t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonSolution {
    pub n: u32,
    pub bound: u64,
    /// `epsilon_0 = n - 1`, the multiplicity of the eigenvalue 1.
    pub epsilon0: u64,
    /// Coefficient of `epsilon_i` in the fixed-part dimension, for `i = 0..n`.
    pub coefficients: Vec<u64>,
    pub fixed_part: u64,
    pub epsilons: Vec<u64>,
}

/// Solves `sum_i c_i epsilon_i <= bound` for `epsilon_1 .. epsilon_{n-1}`.
///
/// `c_i` is the multiplicity of the exponent `-i/n` in `table` (degree 1),
/// since the invariant part of `H^1(F_g) (x) H^1(F_f)` pairs eigenvalues
/// `exp(-2 pi i a)` and `exp(2 pi i a)`. With `epsilon_0 = n - 1` the
/// remaining unknowns must all vanish when every `c_i` exceeds the slack.
pub fn epsilon_solve_with_table(
    n: u32,
    bound: u64,
    table: &MonodromyTable,
) -> Result<EpsilonSolution, AlexanderError> {
    if n < 2 {
        return Err(AlexanderError::DegreeTooSmall(n));
    }
    let coefficients: Vec<u64> = (0..n as i64)
        .map(|i| table.multiplicity(1, &-q_frac(i, n as i64)))
        .collect();
    let epsilon0 = (n - 1) as u64;
    let fixed_part = coefficients[0] * epsilon0;
    if fixed_part > bound {
        return Err(AlexanderError::BoundBelowFixedPart { bound, fixed_part });
    }
    let slack = bound - fixed_part;
    let rest = &coefficients[1..];
    if rest.iter().all(|&c| c == 0) {
        return Err(AlexanderError::Inconclusive(n));
    }
    if rest.iter().any(|&c| c <= slack) {
        return Err(AlexanderError::NotUnique { slack });
    }
    Ok(EpsilonSolution {
        n,
        bound,
        epsilon0,
        coefficients,
        fixed_part,
        epsilons: vec![0; n as usize - 1],
    })
}

/// [`epsilon_solve_with_table`] with the table of `y^n + z^n`.
pub fn epsilon_solve(n: u32, bound: u64) -> Result<EpsilonSolution, AlexanderError> {
    if n < 2 {
        return Err(AlexanderError::DegreeTooSmall(n));
    }
    epsilon_solve_with_table(n, bound, &fermat_table(n)?)
}

/// Multiplicity of the eigenvalue 1 in degree 1.
pub fn fixed_dimension(table: &MonodromyTable) -> u64 {
    table.multiplicity(1, &Q::zero())
}
