//! Multinet structures on an intersection lattice.
//!
//! A candidate is a partition of the lines into `k >= 3` classes, a positive
//! multiplicity per line and a base locus of multiple points. It is checked
//! against four axioms:
//!
//! * (i) every class has the same total multiplicity `d`;
//! * (ii) lines from different classes meet inside the base locus;
//! * (iii) at each base point the multiplicity carried by each class is the same;
//! * (iv) within a class any two lines are joined by a chain whose
//!   consecutive meets avoid the base locus.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::IntersectionLattice;

/// Default bound on the number of candidates a search may visit.
pub const DEFAULT_SEARCH_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultinetError {
    #[error("a multinet needs at least 3 classes, got {0}")]
    TooFewClasses(usize),
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("unknown line {0}")]
    UnknownLine(usize),
    #[error("line {0} appears in more than one class")]
    RepeatedLine(usize),
    #[error("line {0} is in no class")]
    UnassignedLine(usize),
    #[error("multiplicities given for {got} lines, arrangement has {expected}")]
    MultiplicityLength { expected: usize, got: usize },
    #[error("line {0} has multiplicity zero")]
    ZeroMultiplicity(usize),
    #[error("unknown point {0}")]
    UnknownPoint(usize),
    #[error("maximal multiplicity must be at least 1")]
    BadMultiplicityBound,
    #[error("search would visit {count} candidates, above the cap of {cap}")]
    BudgetExceeded { count: u128, cap: u128 },
}

/// A partition with multiplicities and base locus. Points are lattice indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultinetCandidate {
    pub classes: Vec<Vec<usize>>,
    pub multiplicities: Vec<u32>,
    pub base_locus: BTreeSet<usize>,
}

impl MultinetCandidate {
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// Reduced candidate whose base locus is every point joining two classes.
    pub fn with_minimal_base(
        lattice: &IntersectionLattice,
        classes: Vec<Vec<usize>>,
        multiplicities: Vec<u32>,
    ) -> Self {
        let class_of = class_index(lattice.n_lines(), &classes);
        let base_locus = minimal_base_locus(lattice, &class_of);
        MultinetCandidate {
            classes,
            multiplicities,
            base_locus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    None,
    Weak,
    Multinet,
    Reduced,
    Net,
    TrivialNet,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::None => "none",
            Level::Weak => "weak",
            Level::Multinet => "multinet",
            Level::Reduced => "reduced",
            Level::Net => "net",
            Level::TrivialNet => "trivial-net",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    #[serde(rename = "i")]
    EqualWeights,
    #[serde(rename = "ii")]
    CrossInBase,
    #[serde(rename = "iii")]
    BalancedBase,
    #[serde(rename = "iv")]
    Connected,
    #[serde(rename = "reduced")]
    Reduced,
    #[serde(rename = "net")]
    Net,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Class whose weight differs from class 0.
    Weight {
        class: usize,
        weight: u64,
        expected: u64,
    },
    /// Two lines of different classes meeting outside the base locus.
    CrossPoint { lines: (usize, usize), point: usize },
    /// A base point with unequal class contributions.
    Unbalanced {
        point: usize,
        contributions: Vec<u64>,
    },
    /// Two lines of one class with no chain avoiding the base locus.
    Disconnected { class: usize, lines: (usize, usize) },
    /// A line with multiplicity above one.
    Multiple { line: usize, multiplicity: u32 },
    /// A base point where some class contributes more than one.
    Thick { point: usize, n_p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultinetVerdict {
    pub level: Level,
    pub k: usize,
    /// Common class weight, when axiom (i) holds.
    pub d: Option<u64>,
    pub violations: Vec<Violation>,
}

impl MultinetVerdict {
    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

fn class_index(n: usize, classes: &[Vec<usize>]) -> Vec<usize> {
    let mut class_of = vec![usize::MAX; n];
    for (c, lines) in classes.iter().enumerate() {
        for &l in lines {
            class_of[l] = c;
        }
    }
    class_of
}

fn minimal_base_locus(lattice: &IntersectionLattice, class_of: &[usize]) -> BTreeSet<usize> {
    lattice
        .points()
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            let first = class_of[*p.incident.iter().next().unwrap()];
            p.incident.iter().any(|&l| class_of[l] != first)
        })
        .map(|(i, _)| i)
        .collect()
}

fn validate(
    lattice: &IntersectionLattice,
    cand: &MultinetCandidate,
) -> Result<Vec<usize>, MultinetError> {
    let n = lattice.n_lines();
    if cand.k() < 3 {
        return Err(MultinetError::TooFewClasses(cand.k()));
    }
    let mut class_of = vec![usize::MAX; n];
    for (c, lines) in cand.classes.iter().enumerate() {
        if lines.is_empty() {
            return Err(MultinetError::EmptyClass(c));
        }
        for &l in lines {
            if l >= n {
                return Err(MultinetError::UnknownLine(l));
            }
            if class_of[l] != usize::MAX {
                return Err(MultinetError::RepeatedLine(l));
            }
            class_of[l] = c;
        }
    }
    if let Some(l) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(MultinetError::UnassignedLine(l));
    }
    if cand.multiplicities.len() != n {
        return Err(MultinetError::MultiplicityLength {
            expected: n,
            got: cand.multiplicities.len(),
        });
    }
    if let Some(l) = cand.multiplicities.iter().position(|&m| m == 0) {
        return Err(MultinetError::ZeroMultiplicity(l));
    }
    if let Some(&p) = cand
        .base_locus
        .iter()
        .find(|&&p| p >= lattice.points().len())
    {
        return Err(MultinetError::UnknownPoint(p));
    }
    Ok(class_of)
}

/// Classifies a candidate, reporting the first witness for each failed axiom.
pub fn check_multinet(
    lattice: &IntersectionLattice,
    cand: &MultinetCandidate,
) -> Result<MultinetVerdict, MultinetError> {
    let class_of = validate(lattice, cand)?;
    let meet = lattice.meet_table();
    Ok(classify(lattice, cand, &class_of, &meet))
}

fn classify(
    lattice: &IntersectionLattice,
    cand: &MultinetCandidate,
    class_of: &[usize],
    meet: &[Vec<Option<usize>>],
) -> MultinetVerdict {
    let k = cand.k();
    let m = &cand.multiplicities;
    let mut violations = Vec::new();

    let weights: Vec<u64> = cand
        .classes
        .iter()
        .map(|c| c.iter().map(|&l| m[l] as u64).sum())
        .collect();
    let d = match weights.iter().position(|&w| w != weights[0]) {
        None => Some(weights[0]),
        Some(class) => {
            violations.push(Violation {
                axiom: Axiom::EqualWeights,
                witness: Witness::Weight {
                    class,
                    weight: weights[class],
                    expected: weights[0],
                },
            });
            None
        }
    };

    let n = lattice.n_lines();
    'cross: for a in 0..n {
        for b in a + 1..n {
            if class_of[a] != class_of[b] {
                let p = meet[a][b].expect("distinct lines meet");
                if !cand.base_locus.contains(&p) {
                    violations.push(Violation {
                        axiom: Axiom::CrossInBase,
                        witness: Witness::CrossPoint {
                            lines: (a, b),
                            point: p,
                        },
                    });
                    break 'cross;
                }
            }
        }
    }

    let mut n_p = Vec::with_capacity(cand.base_locus.len());
    for &p in &cand.base_locus {
        let mut contrib = vec![0u64; k];
        for &l in &lattice.points()[p].incident {
            contrib[class_of[l]] += m[l] as u64;
        }
        if contrib.iter().any(|&c| c != contrib[0]) {
            violations.push(Violation {
                axiom: Axiom::BalancedBase,
                witness: Witness::Unbalanced {
                    point: p,
                    contributions: contrib,
                },
            });
            break;
        }
        n_p.push((p, contrib[0]));
    }

    let weak = violations.is_empty();

    'conn: for (c, lines) in cand.classes.iter().enumerate() {
        // Union-find over the class, joining lines whose meet avoids the base.
        let mut parent: Vec<usize> = (0..lines.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let p = meet[lines[i]][lines[j]].expect("distinct lines meet");
                if !cand.base_locus.contains(&p) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        for j in 1..lines.len() {
            if find(&mut parent, 0) != find(&mut parent, j) {
                violations.push(Violation {
                    axiom: Axiom::Connected,
                    witness: Witness::Disconnected {
                        class: c,
                        lines: (lines[0], lines[j]),
                    },
                });
                break 'conn;
            }
        }
    }

    let multinet = violations.is_empty();
    if let Some(line) = m.iter().position(|&x| x > 1) {
        violations.push(Violation {
            axiom: Axiom::Reduced,
            witness: Witness::Multiple {
                line,
                multiplicity: m[line],
            },
        });
    }
    let reduced = multinet && violations.is_empty();
    let thick = n_p.iter().find(|(_, v)| *v != 1);
    let net = multinet && thick.is_none();
    if let Some(&(point, v)) = thick {
        if multinet {
            violations.push(Violation {
                axiom: Axiom::Net,
                witness: Witness::Thick { point, n_p: v },
            });
        }
    }

    let level = if !weak {
        Level::None
    } else if net && d == Some(1) {
        Level::TrivialNet
    } else if net && reduced {
        Level::Net
    } else if reduced {
        Level::Reduced
    } else if multinet {
        Level::Multinet
    } else {
        Level::Weak
    };
    MultinetVerdict {
        level,
        k,
        d,
        violations,
    }
}

/// Classes (0-based) containing a line through the given point.
pub fn support(
    lattice: &IntersectionLattice,
    cand: &MultinetCandidate,
    point: usize,
) -> Result<BTreeSet<usize>, MultinetError> {
    let class_of = validate(lattice, cand)?;
    let p = lattice
        .points()
        .get(point)
        .ok_or(MultinetError::UnknownPoint(point))?;
    Ok(p.incident.iter().map(|&l| class_of[l]).collect())
}

/// Number of candidates visited by [`search_multinets`]: S(n,k) * m_max^n.
pub fn search_size(n: usize, k: usize, m_max: u32) -> u128 {
    let stirling = stirling2(n, k);
    let mut total = stirling;
    for _ in 0..n {
        total = total.saturating_mul(m_max as u128);
    }
    total
}

fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = row[j - 1].saturating_add((j as u128).saturating_mul(row[j]));
        }
        row[0] = 0;
    }
    row[k]
}

/// All set partitions of `0..n` into exactly `k` blocks, as restricted growth
/// strings in lexicographic order.
pub fn partitions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(pos: usize, max: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = cur.len();
        if pos == n {
            if max + 1 == k {
                out.push(cur.clone());
            }
            return;
        }
        // Not enough positions left to open the missing blocks.
        if (max + 1) + (n - pos) < k {
            return;
        }
        for b in 0..=(max + 1).min(k - 1) {
            cur[pos] = b;
            rec(pos + 1, max.max(b), k, cur, out);
        }
    }
    if k == 0 || k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    rec(1, 0, k, &mut cur, &mut out);
    out
}

/// Searches every partition into `k` classes and multiplicities up to
/// `m_max`, with the base locus fixed to the cross-class points. Returns the
/// candidates reaching at least the weak level, in enumeration order.
pub fn search_multinets(
    lattice: &IntersectionLattice,
    k: usize,
    m_max: u32,
    cap: u128,
) -> Result<Vec<(MultinetCandidate, MultinetVerdict)>, MultinetError> {
    let n = lattice.n_lines();
    if k < 3 {
        return Err(MultinetError::TooFewClasses(k));
    }
    if m_max == 0 {
        return Err(MultinetError::BadMultiplicityBound);
    }
    let count = search_size(n, k, m_max);
    if count > cap {
        return Err(MultinetError::BudgetExceeded { count, cap });
    }
    let meet = lattice.meet_table();
    let found = partitions_into(n, k)
        .into_par_iter()
        .map(|rgs| {
            let mut classes = vec![Vec::new(); k];
            for (l, &c) in rgs.iter().enumerate() {
                classes[c].push(l);
            }
            let base_locus = minimal_base_locus(lattice, &rgs);
            let mut hits = Vec::new();
            let mut m = vec![1u32; n];
            loop {
                let cand = MultinetCandidate {
                    classes: classes.clone(),
                    multiplicities: m.clone(),
                    base_locus: base_locus.clone(),
                };
                let verdict = classify(lattice, &cand, &rgs, &meet);
                if verdict.level > Level::None {
                    hits.push((cand, verdict));
                }
                // Odometer over multiplicity vectors, last line fastest.
                let mut i = n;
                loop {
                    if i == 0 {
                        return hits;
                    }
                    i -= 1;
                    if m[i] < m_max {
                        m[i] += 1;
                        break;
                    }
                    m[i] = 1;
                }
            }
        })
        .collect::<Vec<_>>();
    Ok(found.into_iter().flatten().collect())
}

/// Cap from `LINARR_PARTITION_CAP` if set and valid, else the default.
pub fn configured_cap() -> u128 {
    std::env::var("LINARR_PARTITION_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SEARCH_CAP)
}
