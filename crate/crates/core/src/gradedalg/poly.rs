use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::PolyError;
use crate::rational::{display_rational, Q};

/// Exponent vector, one entry per declared variable.
pub type Monomial = Vec<u32>;

/// Sparse polynomial with rational coefficients over named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_owned(vars.iter().map(|s| s.to_string()).collect())
    }

    pub(crate) fn zero_owned(vars: Vec<String>) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Q) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The variable with index `i`.
    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Q::one())
    }

    pub fn monomial(vars: &[&str], exps: Monomial, c: Q) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    /// Builds from explicit terms; zero coefficients are dropped and repeats summed.
    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn coefficient(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub(crate) fn add_term(&mut self, e: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Poly) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different variables"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut r = Poly::zero_owned(self.vars.clone());
        if !c.is_zero() {
            r.terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        }
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        let mut r = Poly::zero_owned(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::zero_owned(self.vars.clone());
        acc.add_term(vec![0; self.nvars()], Q::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &[u32]) -> Poly {
        let mut r = Poly::zero_owned(self.vars.clone());
        r.terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        r
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero_owned(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * Q::from_integer(e[i].into()));
            }
        }
        r
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars());
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        t *= x;
                    }
                }
                t
            })
            .sum()
    }

    /// Degree of each term under the given positive weights.
    pub fn weighted_degrees(&self, weights: &[u32]) -> impl Iterator<Item = u32> + '_ {
        let w = weights.to_vec();
        self.terms.keys().map(move |e| weighted_degree(e, &w))
    }

    /// Common weighted degree of all terms, if there is one (and the polynomial is nonzero).
    pub fn weighted_homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.weighted_degrees(weights);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.weighted_homogeneous_degree(&vec![1; self.nvars()])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.weighted_degrees(&vec![1; self.nvars()]).max()
    }

    /// Substitutes `x_i -> sum_j m[i][j] x_j`.
    pub fn linear_substitute(&self, m: &[Vec<Q>]) -> Poly {
        let v = self.nvars();
        assert_eq!(m.len(), v);
        let images: Vec<Poly> = m
            .iter()
            .map(|row| {
                let mut p = Poly::zero_owned(self.vars.clone());
                for (j, c) in row.iter().enumerate() {
                    let mut e = vec![0; v];
                    e[j] = 1;
                    p.add_term(e, c.clone());
                }
                p
            })
            .collect();
        let mut r = Poly::zero_owned(self.vars.clone());
        for (e, c) in &self.terms {
            let mut t = Poly::zero_owned(self.vars.clone());
            t.add_term(vec![0; v], c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&images[i]);
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Terms in printing order: higher total degree first, then lexicographically larger.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// Renames variables without touching the terms.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Poly, PolyError> {
        if vars.len() != self.nvars() {
            return Err(PolyError::VariableCount {
                expected: self.nvars(),
                got: vars.len(),
            });
        }
        Ok(Poly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: self.terms.clone(),
        })
    }
}

pub fn weighted_degree(e: &[u32], w: &[u32]) -> u32 {
    e.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Every exponent vector of weighted degree `k`, lexicographically descending.
pub fn monomials_of_degree(weights: &[u32], k: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == weights.len() {
            if left % weights[i] == 0 {
                cur[i] = left / weights[i];
                out.push(cur.clone());
            }
            return;
        }
        for a in (0..=left / weights[i]).rev() {
            cur[i] = a;
            rec(weights, i + 1, left - a * weights[i], cur, out);
        }
        cur[i] = 0;
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    if weights.is_empty() {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, k, &mut cur, &mut out);
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            if factors.is_empty() {
                f.write_str(&display_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", display_rational(&abs))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    const YZ: [&str; 2] = ["y", "z"];

    #[test]
    fn arithmetic() {
        let y = Poly::var(&YZ, 0);
        let z = Poly::var(&YZ, 1);
        let s = y.add(&z);
        let sq = s.mul(&s);
        assert_eq!(sq.coefficient(&[1, 1]), q(2));
        assert_eq!(sq.terms().len(), 3);
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.pow(3).coefficient(&[2, 1]), q(3));
        assert_eq!(s.pow(0), Poly::constant(&YZ, q(1)));
    }

    #[test]
    fn derivatives() {
        // y^3 z - 2 z^2
        let f = Poly::from_terms(&YZ, [(vec![3, 1], q(1)), (vec![0, 2], q(-2))]);
        assert_eq!(f.derivative(0), Poly::from_terms(&YZ, [(vec![2, 1], q(3))]));
        assert_eq!(
            f.derivative(1),
            Poly::from_terms(&YZ, [(vec![3, 0], q(1)), (vec![0, 1], q(-4))])
        );
    }

    #[test]
    fn degrees() {
        let f = Poly::from_terms(&YZ, [(vec![3, 0], q(1)), (vec![0, 2], q(1))]);
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!(f.weighted_homogeneous_degree(&[2, 3]), Some(6));
        assert_eq!(f.total_degree(), Some(3));
        assert_eq!(Poly::zero(&YZ).homogeneous_degree(), None);
    }

    #[test]
    fn eval_and_substitution() {
        let f = Poly::from_terms(&YZ, [(vec![2, 0], q(1)), (vec![0, 1], q_frac(1, 2))]);
        assert_eq!(f.eval(&[q(3), q(4)]), q(11));
        // y -> y + z, z -> 2 z
        let m = vec![vec![q(1), q(1)], vec![q(0), q(2)]];
        let g = f.linear_substitute(&m);
        assert_eq!(g.eval(&[q(3), q(4)]), f.eval(&[q(7), q(8)]));
    }

    #[test]
    fn display() {
        let f = Poly::from_terms(
            &YZ,
            [
                (vec![0, 0], q(-5)),
                (vec![1, 1], q_frac(3, 2)),
                (vec![2, 0], q(-1)),
                (vec![0, 2], q(1)),
            ],
        );
        assert_eq!(f.to_string(), "-y^2 + 3/2*y*z + z^2 - 5");
        assert_eq!(Poly::zero(&YZ).to_string(), "0");
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
        assert_eq!(
            monomials_of_degree(&[1, 1], 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(
            monomials_of_degree(&[2, 3], 6),
            vec![vec![3, 0], vec![0, 2]]
        );
        assert!(monomials_of_degree(&[2], 3).is_empty());
    }
}
