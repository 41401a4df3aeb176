//! Alexander polynomials of arrangements covered by two pencils.
//!
//! For `f = prod (x0 - lambda_i x1) prod (x0 - mu_j x2)` of degree `n` the
//! pipeline considers the threefold `y^n + z^n = f` and a generic hyperplane
//! section `Y`, bounds the monodromy-invariant part of `H^2(Y)` by counting
//! invariant polar forms, and compares the bound with the invariant part of
//! the Thom-Sebastiani join. The comparison forces every nontrivial
//! eigenspace of the Milnor fiber monodromy to vanish.

mod counting;
mod cyclo;
mod family;

pub use counting::{
    epsilon_solve, epsilon_solve_with_table, fermat_table, fixed_dimension, invariant_bound,
    invariant_monomial_count, pure_power_table, EpsilonSolution, InvariantCount,
};
pub use cyclo::{cyclotomic, format_int_poly, CycloPoly, IntPoly};
pub use family::{
    fiber_polynomial, pick_generic_parameter, singular_locus, special_fibers, Locus,
    MonodromyAction, PencilFamily, PencilParam, SingularComponent, SingularLocusReport, FIBER_VARS,
    INFINITY_VARS, TOTAL_VARS,
};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{
    pencil_form, Arrangement, ArrangementError, BiPencil, IntersectionLattice, Matrix3,
};
use crate::gradedalg::{quotient_dim, CyclicRestriction, PolyError, QuotientOptions};
use crate::rational::{format_rational, Q};
use crate::resonance::{aomoto_betti, ResonanceError};
use crate::spectrum::{MonodromyTable, SpectrumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Resonance(#[from] ResonanceError),
    #[error("degree {0} is too small, need at least 2 lines")]
    DegreeTooSmall(u32),
    #[error("pole order {0} is outside 1..=3")]
    PoleOrder(u32),
    #[error("bound {bound} is below the fixed part {fixed_part}")]
    BoundBelowFixedPart { bound: u64, fixed_part: u64 },
    #[error("inconclusive for n = {0}: no unknown enters the inequality")]
    Inconclusive(u32),
    #[error("slack {slack} admits nonzero solutions")]
    NotUnique { slack: u64 },
    #[error("cyclotomic index {0} must exceed 1")]
    BadCyclotomicIndex(u32),
    #[error("cyclotomic index {k} does not divide {d}")]
    IndexNotDividing { k: u32, d: u32 },
    #[error("number of lines must be at least 1")]
    NoLines,
    #[error("pipeline check failed: {0}")]
    CheckFailed(String),
}

/// `(t-1)^{r-1} prod Phi_k^{e_k}` after checking every `k` divides `d`.
pub fn generic_alexander_shape(
    d: u32,
    r: u32,
    e: BTreeMap<u32, u32>,
) -> Result<CycloPoly, AlexanderError> {
    if r == 0 {
        return Err(AlexanderError::NoLines);
    }
    CycloPoly::new(d, r - 1, e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilData {
    #[serde(with = "crate::rational::serde_q_vec")]
    pub lambdas: Vec<Q>,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub mus: Vec<Q>,
    pub p: usize,
    pub q: usize,
    pub n: usize,
    /// Rows of the coordinate change into normal form, when one was needed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub change: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantPiece {
    pub t: u32,
    pub degree: i64,
    /// Count of invariant monomials surviving the pure powers.
    pub count: u64,
    pub negative_degree: bool,
    /// Exact dimension of the invariant part of the graded piece, when the degree is nonnegative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modular_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderReport {
    pub pencil: PencilData,
    pub special_fibers: Vec<PencilParam>,
    #[serde(with = "crate::rational::serde_q")]
    pub generic_parameter: Q,
    pub fiber_polynomial: String,
    pub total_space_locus: SingularLocusReport,
    pub fiber_locus: SingularLocusReport,
    pub invariant_pieces: Vec<InvariantPiece>,
    pub bound: u64,
    pub join_table: MonodromyTable,
    pub join_fixed_dimension: u64,
    /// `None` for two lines, where the shape alone decides.
    pub epsilon: Option<EpsilonSolution>,
    pub polynomial: CycloPoly,
}

fn matrix_strings(m: &Matrix3) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), AlexanderError> {
    if cond {
        Ok(())
    } else {
        Err(AlexanderError::CheckFailed(what()))
    }
}

/// Runs the pipeline on an arrangement, moving it into normal form first.
pub fn alexander_bipencil(a: &Arrangement) -> Result<AlexanderReport, AlexanderError> {
    let form = pencil_form(a)?;
    let mut report = alexander_from_pencil(&form.pencil)?;
    report.pencil.change = Some(matrix_strings(&form.change));
    Ok(report)
}

/// Runs the pipeline on a bi-pencil given in normal form.
pub fn alexander_from_pencil(pencil: &BiPencil) -> Result<AlexanderReport, AlexanderError> {
    let fam = PencilFamily::new(pencil.clone());
    let n = fam.n() as u32;
    let s = pick_generic_parameter(&fam);
    let param = PencilParam::Finite(s.clone());
    let f = fiber_polynomial(&fam, &param);

    let total_space_locus = singular_locus(&fam, &Locus::TotalSpace);
    let fiber_locus = singular_locus(&fam, &Locus::Fiber(param));
    check(total_space_locus.verified, || "singular points of X".into())?;
    check(fiber_locus.verified, || {
        "singular points of the generic fiber".into()
    })?;

    // Invariant forms h Omega / f^t need a + b = -2 mod n, i.e. class n - 2
    // for the grading counting only y and z.
    let restriction = CyclicRestriction {
        weights: vec![1, 1, 0, 0],
        modulus: n,
        residue: (n - 2) % n,
    };
    let opts = QuotientOptions {
        restriction: Some(restriction),
        ..Default::default()
    };
    let mut invariant_pieces = Vec::new();
    for t in [1u32, 2] {
        let count = invariant_monomial_count(n, t)?;
        let degree = (t * n) as i64 - 4;
        let (exact_dim, modular_agrees) = if degree >= 0 {
            let r = quotient_dim(&f, degree as u32, &opts)?;
            check(r.dim_quotient as u64 <= count.count, || {
                format!(
                    "invariant piece of degree {degree} has dimension {} above the count {}",
                    r.dim_quotient, count.count
                )
            })?;
            (Some(r.dim_quotient), Some(r.modular_agrees()))
        } else {
            (None, None)
        };
        invariant_pieces.push(InvariantPiece {
            t,
            degree,
            count: count.count,
            negative_degree: count.negative_degree,
            exact_dim,
            modular_agrees,
        });
    }
    check(invariant_pieces[0].count == 0, || {
        "invariant forms with a simple pole".into()
    })?;

    let bound = invariant_bound(n)?;
    check(invariant_pieces[1].count <= bound, || {
        "count above the bound".into()
    })?;
    let join_table = fermat_table(n)?;
    let join_fixed_dimension = fixed_dimension(&join_table);
    check(join_fixed_dimension == (n - 1) as u64, || {
        format!("fixed part of the join is {join_fixed_dimension}")
    })?;

    let epsilon = if n == 2 {
        None
    } else {
        Some(epsilon_solve_with_table(n, bound, &join_table)?)
    };
    let polynomial = generic_alexander_shape(n, n, BTreeMap::new())?;

    Ok(AlexanderReport {
        pencil: PencilData {
            lambdas: pencil.lambdas().to_vec(),
            mus: pencil.mus().to_vec(),
            p: pencil.p(),
            q: pencil.q(),
            n: pencil.n(),
            change: None,
        },
        special_fibers: special_fibers(&fam),
        generic_parameter: s,
        fiber_polynomial: f.to_string(),
        total_space_locus,
        fiber_locus,
        invariant_pieces,
        bound,
        join_table,
        join_fixed_dimension,
        epsilon,
        polynomial,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjecturalReport {
    pub conjectural: bool,
    pub n: usize,
    pub beta2: usize,
    pub beta3: usize,
    pub polynomial: CycloPoly,
}

/// `(t-1)^{n-1} Phi_3^{beta_3} (Phi_2 Phi_4)^{beta_2}` from the lattice alone.
///
/// Fails if a needed cyclotomic index does not divide `n`.
pub fn conjectural_alexander(
    lattice: &IntersectionLattice,
) -> Result<ConjecturalReport, AlexanderError> {
    let n = lattice.n_lines();
    if n == 0 {
        return Err(AlexanderError::NoLines);
    }
    let beta2 = aomoto_betti(lattice, 2)?.beta;
    let beta3 = aomoto_betti(lattice, 3)?.beta;
    let mut e = BTreeMap::new();
    if beta3 > 0 {
        e.insert(3, beta3 as u32);
    }
    if beta2 > 0 {
        e.insert(2, beta2 as u32);
        e.insert(4, beta2 as u32);
    }
    let polynomial = generic_alexander_shape(n as u32, n as u32, e)?;
    Ok(ConjecturalReport {
        conjectural: true,
        n,
        beta2,
        beta3,
        polynomial,
    })
}
