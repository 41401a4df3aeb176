//! Products of cyclotomic polynomials `(t-1)^a * prod Phi_k(t)^{e_k}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::AlexanderError;

/// Integer polynomial, coefficients in ascending degree.
pub type IntPoly = Vec<BigInt>;

/// `(t-1)^{t_minus_one} * prod_{1 < k | d} Phi_k(t)^{e_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPoly {
    d: u32,
    t_minus_one: u32,
    e: BTreeMap<u32, u32>,
}

impl CycloPoly {
    /// Checks that every key exceeds one and divides `d`; zero exponents are dropped.
    pub fn new(d: u32, t_minus_one: u32, e: BTreeMap<u32, u32>) -> Result<Self, AlexanderError> {
        for &k in e.keys() {
            if k <= 1 {
                return Err(AlexanderError::BadCyclotomicIndex(k));
            }
            if d == 0 || d % k != 0 {
                return Err(AlexanderError::IndexNotDividing { k, d });
            }
        }
        Ok(CycloPoly {
            d,
            t_minus_one,
            e: e.into_iter().filter(|(_, x)| *x > 0).collect(),
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn t_minus_one(&self) -> u32 {
        self.t_minus_one
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.e
    }

    /// True when the cyclotomic part is 1.
    pub fn is_trivial(&self) -> bool {
        self.e.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.t_minus_one as u64
            + self
                .e
                .iter()
                .map(|(&k, &x)| euler_phi(k) as u64 * x as u64)
                .sum::<u64>()
    }

    /// Coefficients in ascending degree.
    pub fn expand(&self) -> IntPoly {
        let mut acc: IntPoly = vec![BigInt::one()];
        let t_minus_1 = vec![-BigInt::one(), BigInt::one()];
        for _ in 0..self.t_minus_one {
            acc = mul(&acc, &t_minus_1);
        }
        for (&k, &x) in &self.e {
            let phi = cyclotomic(k);
            for _ in 0..x {
                acc = mul(&acc, &phi);
            }
        }
        acc
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.t_minus_one {
            0 => {}
            1 => parts.push("(t-1)".to_string()),
            a => parts.push(format!("(t-1)^{a}")),
        }
        for (&k, &x) in &self.e {
            parts.push(if x == 1 {
                format!("Phi_{k}(t)")
            } else {
                format!("Phi_{k}(t)^{x}")
            });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

impl Serialize for CycloPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            factored: String,
            d: u32,
            t_minus_one: u32,
            cyclotomic: BTreeMap<String, u32>,
            expanded: String,
            coefficients: Vec<String>,
        }
        let coeffs = self.expand();
        View {
            factored: self.to_string(),
            d: self.d,
            t_minus_one: self.t_minus_one,
            cyclotomic: self.e.iter().map(|(k, x)| (k.to_string(), *x)).collect(),
            expanded: format_int_poly(&coeffs),
            coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

fn euler_phi(k: u32) -> u32 {
    (1..=k).filter(|&j| num_integer::gcd(j, k) == 1).count() as u32
}

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn div_exact(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    if rem.len() <= dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quo[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    trim(quo)
}

/// `Phi_k`, from `t^k - 1 = prod_{j | k} Phi_j`.
pub fn cyclotomic(k: u32) -> IntPoly {
    assert!(k >= 1);
    let mut num = vec![BigInt::zero(); k as usize + 1];
    num[0] = -BigInt::one();
    num[k as usize] = BigInt::one();
    for j in 1..k {
        if k % j == 0 {
            num = div_exact(&num, &cyclotomic(j));
        }
    }
    num
}

/// `t^3 - 3*t^2 + 3*t - 1` style text.
pub fn format_int_poly(c: &IntPoly) -> String {
    let mut out = String::new();
    for (deg, coef) in c.iter().enumerate().rev() {
        if coef.is_zero() {
            continue;
        }
        let neg = coef.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = coef.abs();
        let mono = match deg {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{deg}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
