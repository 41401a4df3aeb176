//! Spectra of weighted-homogeneous isolated singularities and monodromy
//! eigenvalue tables.
//!
//! Eigenvalues are stored as exponents `e` in `[0, 1)`, standing for
//! `exp(2 pi i e)`. A spectral number `alpha` contributes to the exponent
//! `-alpha mod 1`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::gradedalg::{quotient_dim, Poly, PolyError, QuotientOptions};
use crate::rational::{format_rational, frac_part, parse_rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("polynomial is not weighted homogeneous of degree {degree} for weights {weights:?}")]
    NotWeightedHomogeneous { degree: u32, weights: Vec<u32> },
    #[error("singularity is not isolated: Milnor algebra is nonzero in degree {degree}")]
    NonIsolated { degree: u32 },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("invalid monodromy table: {0}")]
    BadTable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    #[serde(with = "crate::rational::serde_q")]
    pub alpha: Q,
    pub nu: usize,
}

/// Weighted degree of `f`, if it is weighted homogeneous for `weights`.
pub fn infer_degree(f: &Poly, weights: &[u32]) -> Option<u32> {
    f.weighted_homogeneous_degree(weights)
}

/// Spectrum `alpha = (j + w)/d - 1` with multiplicity `dim M(f)_j`, sorted by `alpha`.
///
/// The Milnor algebra of an isolated singularity vanishes above its socle
/// degree `sum (d - 2 w_i)`; a nonzero piece just above it means the
/// singularity is not isolated.
pub fn steenbrink_spectrum(
    f: &Poly,
    d: u32,
    weights: &[u32],
) -> Result<Vec<SpectrumEntry>, SpectrumError> {
    if weights.len() != f.nvars() {
        return Err(SpectrumError::WeightCount {
            expected: f.nvars(),
            got: weights.len(),
        });
    }
    if weights.contains(&0) {
        return Err(SpectrumError::ZeroWeight);
    }
    if f.weighted_homogeneous_degree(weights) != Some(d) || d == 0 {
        return Err(SpectrumError::NotWeightedHomogeneous {
            degree: d,
            weights: weights.to_vec(),
        });
    }
    let w: u32 = weights.iter().sum();
    let socle = weights
        .iter()
        .map(|&wi| d as i64 - 2 * wi as i64)
        .sum::<i64>()
        .max(0) as u32;
    let opts = QuotientOptions {
        weights: Some(weights.to_vec()),
        ..Default::default()
    };
    let max_w = *weights.iter().max().unwrap_or(&1);
    for j in socle + 1..=socle + max_w {
        if quotient_dim(f, j, &opts)?.dim_quotient > 0 {
            return Err(SpectrumError::NonIsolated { degree: j });
        }
    }
    let mut out = Vec::new();
    for j in 0..=socle {
        let nu = quotient_dim(f, j, &opts)?.dim_quotient;
        if nu > 0 {
            out.push(SpectrumEntry {
                alpha: Q::new((j + w).into(), d.into()) - Q::one(),
                nu,
            });
        }
    }
    Ok(out)
}

/// Eigenvalue multiplicities per cohomological degree (reduced cohomology).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonodromyTable {
    degrees: BTreeMap<u32, BTreeMap<Q, u64>>,
}

impl MonodromyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` to the exponent `e mod 1` in the given degree.
    pub fn add(&mut self, degree: u32, exponent: &Q, mult: u64) {
        if mult == 0 {
            return;
        }
        *self
            .degrees
            .entry(degree)
            .or_default()
            .entry(frac_part(exponent))
            .or_insert(0) += mult;
    }

    pub fn degrees(&self) -> &BTreeMap<u32, BTreeMap<Q, u64>> {
        &self.degrees
    }

    pub fn multiplicity(&self, degree: u32, exponent: &Q) -> u64 {
        self.degrees
            .get(&degree)
            .and_then(|m| m.get(&frac_part(exponent)))
            .copied()
            .unwrap_or(0)
    }

    pub fn degree_dimension(&self, degree: u32) -> u64 {
        self.degrees.get(&degree).map_or(0, |m| m.values().sum())
    }

    pub fn total_dimension(&self) -> u64 {
        self.degrees.values().flat_map(|m| m.values()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// Table concentrated in one degree with exponents `-alpha mod 1`.
pub fn spectrum_to_table(entries: &[SpectrumEntry], degree: u32) -> MonodromyTable {
    let mut t = MonodromyTable::new();
    for e in entries {
        t.add(degree, &-&e.alpha, e.nu as u64);
    }
    t
}

/// Tensor product of monodromies: degrees `n` and `k` land in `n + k + 1`,
/// exponents add modulo one and multiplicities multiply.
pub fn thom_sebastiani_join(tf: &MonodromyTable, tg: &MonodromyTable) -> MonodromyTable {
    let mut out = MonodromyTable::new();
    for (&n, ef) in &tf.degrees {
        for (&k, eg) in &tg.degrees {
            for (a, ma) in ef {
                for (b, mb) in eg {
                    out.add(n + k + 1, &(a + b), ma * mb);
                }
            }
        }
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    degrees: BTreeMap<String, BTreeMap<String, u64>>,
}

impl Serialize for MonodromyTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // Degrees are written in numeric order, not string order.
        use serde::ser::SerializeMap;
        struct Inner<'a>(&'a BTreeMap<Q, u64>);
        impl Serialize for Inner<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (e, mult) in self.0 {
                    m.serialize_entry(&format_rational(e), mult)?;
                }
                m.end()
            }
        }
        struct Degrees<'a>(&'a BTreeMap<u32, BTreeMap<Q, u64>>);
        impl Serialize for Degrees<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (d, inner) in self.0 {
                    m.serialize_entry(&d.to_string(), &Inner(inner))?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("degrees", &Degrees(&self.degrees))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for MonodromyTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = TableJson::deserialize(d)?;
        let mut t = MonodromyTable::new();
        for (deg, inner) in raw.degrees {
            let deg: u32 = deg
                .parse()
                .map_err(|_| D::Error::custom(format!("bad degree {deg:?}")))?;
            for (e, mult) in inner {
                let x = parse_rational(&e).map_err(D::Error::custom)?;
                if x < Q::zero() || x >= Q::one() {
                    return Err(D::Error::custom(format!("exponent {e} outside [0, 1)")));
                }
                if mult == 0 {
                    return Err(D::Error::custom(format!(
                        "zero multiplicity for exponent {e}"
                    )));
                }
                if t.multiplicity(deg, &x) > 0 {
                    return Err(D::Error::custom(format!("exponent {e} listed twice")));
                }
                t.add(deg, &x, mult);
            }
        }
        Ok(t)
    }
}

/// Reads a table from JSON text.
pub fn parse_table(text: &str) -> Result<MonodromyTable, SpectrumError> {
    serde_json::from_str(text).map_err(|e| SpectrumError::BadTable(e.to_string()))
}
