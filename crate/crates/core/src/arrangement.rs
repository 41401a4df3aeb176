//! Line arrangements in the projective plane over the rationals.
//!
//! A line `a x0 + b x1 + c x2 = 0` is stored by its coefficient triple scaled
//! so the first nonzero entry is one; points use the same normalization. The
//! intersection lattice records every point lying on at least two lines
//! together with the full set of lines through it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, normalize_projective, parse_rational, q, Q};

pub type Matrix3 = [[Q; 3]; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("line {0} has all coefficients zero")]
    ZeroLine(usize),
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("an arrangement needs at least one line")]
    Empty,
    #[error("invalid arrangement file: {0}")]
    Format(String),
    #[error("invalid bi-pencil: {0}")]
    InvalidBiPencil(String),
    #[error("invalid intersection lattice: {0}")]
    InvalidLattice(String),
    #[error("arrangement is not a bi-pencil")]
    NotBiPencil,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("input carries no coordinates; this operation needs an explicit arrangement")]
    NoCoordinates,
}

/// A projective line with normalized coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    coeffs: [Q; 3],
}

impl Line {
    pub fn new(a: Q, b: Q, c: Q) -> Option<Self> {
        let n = normalize_projective(&[a, b, c])?;
        Some(Line {
            coeffs: [n[0].clone(), n[1].clone(), n[2].clone()],
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Option<Self> {
        Self::new(q(a), q(b), q(c))
    }

    pub fn coeffs(&self) -> &[Q; 3] {
        &self.coeffs
    }

    pub fn eval(&self, p: &[Q; 3]) -> Q {
        dot(&self.coeffs, p)
    }

    pub fn contains(&self, p: &[Q; 3]) -> bool {
        self.eval(p).is_zero()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x0", "x1", "x2"];
        let mut first = true;
        for (c, v) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if abs.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{}*{v}", crate::rational::display_rational(&abs))?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A reduced line arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<Line>,
}

impl Arrangement {
    /// Builds an arrangement, rejecting zero and repeated lines.
    pub fn new(coeffs: Vec<[Q; 3]>) -> Result<Self, ArrangementError> {
        if coeffs.is_empty() {
            return Err(ArrangementError::Empty);
        }
        let mut lines: Vec<Line> = Vec::with_capacity(coeffs.len());
        for (i, [a, b, c]) in coeffs.into_iter().enumerate() {
            let line = Line::new(a, b, c).ok_or(ArrangementError::ZeroLine(i))?;
            if let Some(j) = lines.iter().position(|l| l == &line) {
                return Err(ArrangementError::DuplicateLine(j, i));
            }
            lines.push(line);
        }
        Ok(Arrangement { lines })
    }

    pub fn from_lines(lines: Vec<Line>) -> Result<Self, ArrangementError> {
        Self::new(lines.into_iter().map(|l| l.coeffs).collect())
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn degree(&self) -> usize {
        self.lines.len()
    }

    /// Applies the point transformation `x -> m x`; line coefficients move by `m^{-1}`.
    pub fn apply_projective(&self, m: &Matrix3) -> Result<Self, ArrangementError> {
        let inv = invert3(m).ok_or(ArrangementError::SingularMatrix)?;
        Self::new(
            self.lines
                .iter()
                .map(|l| row_times_matrix(&l.coeffs, &inv))
                .collect(),
        )
    }

    /// Reorders the lines: line `i` of the result is line `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Arrangement {
            lines: perm.iter().map(|&i| self.lines[i].clone()).collect(),
        }
    }

    pub fn lattice(&self) -> IntersectionLattice {
        let pts = intersection_points(self);
        IntersectionLattice {
            n_lines: self.degree(),
            points: pts
                .into_iter()
                .map(|p| LatticePoint {
                    coords: Some(p.point),
                    incident: p.incident,
                })
                .collect(),
        }
    }
}

/// A multiple point of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatPoint {
    pub point: [Q; 3],
    pub incident: BTreeSet<usize>,
}

impl FlatPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// Every point on at least two lines, sorted lexicographically by normalized coordinates.
pub fn intersection_points(a: &Arrangement) -> Vec<FlatPoint> {
    let mut by_point: BTreeMap<[Q; 3], BTreeSet<usize>> = BTreeMap::new();
    let lines = a.lines();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = normalize3(&cross(&lines[i].coeffs, &lines[j].coeffs))
                .expect("distinct lines meet in a point");
            let entry = by_point.entry(p).or_default();
            entry.insert(i);
            entry.insert(j);
        }
    }
    by_point
        .into_iter()
        .map(|(point, incident)| FlatPoint { point, incident })
        .collect()
}

/// One rank-two flat of the intersection lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoint {
    pub coords: Option<[Q; 3]>,
    pub incident: BTreeSet<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// Combinatorial intersection data: the lines are `0..n_lines`, the points are
/// the multiple points with their incident lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    n_lines: usize,
    points: Vec<LatticePoint>,
}

impl IntersectionLattice {
    /// Builds a lattice from incidences alone. Pairs of lines not listed
    /// together in any point are added as double points after the listed ones.
    pub fn from_incidences(
        n_lines: usize,
        points: Vec<Vec<usize>>,
    ) -> Result<Self, ArrangementError> {
        if n_lines == 0 {
            return Err(ArrangementError::Empty);
        }
        let bad = |m: String| ArrangementError::InvalidLattice(m);
        let mut covered = vec![vec![false; n_lines]; n_lines];
        let mut out = Vec::new();
        for (k, pt) in points.into_iter().enumerate() {
            let set: BTreeSet<usize> = pt.iter().copied().collect();
            if set.len() != pt.len() {
                return Err(bad(format!("point {k} repeats a line")));
            }
            if set.len() < 2 {
                return Err(bad(format!("point {k} lies on fewer than two lines")));
            }
            if let Some(&l) = set.iter().find(|&&l| l >= n_lines) {
                return Err(bad(format!("point {k} references unknown line {l}")));
            }
            let v: Vec<usize> = set.iter().copied().collect();
            for (x, &i) in v.iter().enumerate() {
                for &j in &v[x + 1..] {
                    if covered[i][j] {
                        return Err(bad(format!("lines {i} and {j} meet in two points")));
                    }
                    covered[i][j] = true;
                }
            }
            out.push(LatticePoint {
                coords: None,
                incident: set,
            });
        }
        for i in 0..n_lines {
            for j in i + 1..n_lines {
                if !covered[i][j] {
                    out.push(LatticePoint {
                        coords: None,
                        incident: [i, j].into_iter().collect(),
                    });
                }
            }
        }
        Ok(IntersectionLattice {
            n_lines,
            points: out,
        })
    }

    pub fn n_lines(&self) -> usize {
        self.n_lines
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Index of the point where two distinct lines meet.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.points
            .iter()
            .position(|p| p.incident.contains(&i) && p.incident.contains(&j))
    }

    /// `meet` for all pairs at once; `table[i][j]` is `None` on the diagonal.
    pub fn meet_table(&self) -> Vec<Vec<Option<usize>>> {
        let mut t = vec![vec![None; self.n_lines]; self.n_lines];
        for (k, p) in self.points.iter().enumerate() {
            for &i in &p.incident {
                for &j in &p.incident {
                    if i != j {
                        t[i][j] = Some(k);
                    }
                }
            }
        }
        t
    }

    /// Relabels the lines: line `i` becomes line `perm[i]`. Points keep their order.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        IntersectionLattice {
            n_lines: self.n_lines,
            points: self
                .points
                .iter()
                .map(|p| LatticePoint {
                    coords: p.coords.clone(),
                    incident: p.incident.iter().map(|&i| perm[i]).collect(),
                })
                .collect(),
        }
    }

    /// Number of points of each multiplicity.
    pub fn multiplicity_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for p in &self.points {
            *m.entry(p.multiplicity()).or_insert(0) += 1;
        }
        m
    }
}

/// The normal form `prod (x0 - lambda_i x1) prod (x0 - mu_j x2)`.
///
/// The first pencil passes through `(0:0:1)`, the second through `(0:1:0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiPencil {
    #[serde(with = "crate::rational::serde_q_vec")]
    lambdas: Vec<Q>,
    #[serde(with = "crate::rational::serde_q_vec")]
    mus: Vec<Q>,
}

impl BiPencil {
    pub fn new(lambdas: Vec<Q>, mus: Vec<Q>) -> Result<Self, ArrangementError> {
        let bad = |m: &str| ArrangementError::InvalidBiPencil(m.to_string());
        if mus.is_empty() {
            return Err(bad("the second pencil needs at least one line"));
        }
        if lambdas.len() < mus.len() {
            return Err(bad(
                "the first pencil must have at least as many lines as the second",
            ));
        }
        if !all_distinct(&lambdas) || !all_distinct(&mus) {
            return Err(bad("parameters within a pencil must be distinct"));
        }
        let zeros = lambdas.iter().chain(&mus).filter(|x| x.is_zero()).count();
        if zeros > 1 {
            return Err(bad("at most one parameter may be zero"));
        }
        // The zero parameter gives x0 = 0, which passes through both centres.
        let lone_zero = |xs: &[Q]| xs.len() == 1 && xs[0].is_zero();
        if lone_zero(&lambdas) || lone_zero(&mus) {
            return Err(bad("a one-line pencil with parameter zero makes a single pencil"));
        }
        Ok(BiPencil { lambdas, mus })
    }

    pub fn from_ints(lambdas: &[i64], mus: &[i64]) -> Result<Self, ArrangementError> {
        Self::new(
            lambdas.iter().map(|&x| q(x)).collect(),
            mus.iter().map(|&x| q(x)).collect(),
        )
    }

    pub fn lambdas(&self) -> &[Q] {
        &self.lambdas
    }

    pub fn mus(&self) -> &[Q] {
        &self.mus
    }

    pub fn p(&self) -> usize {
        self.lambdas.len()
    }

    pub fn q(&self) -> usize {
        self.mus.len()
    }

    pub fn n(&self) -> usize {
        self.p() + self.q()
    }

    /// The lines `x0 - lambda x1` followed by `x0 - mu x2`.
    pub fn arrangement(&self) -> Arrangement {
        let coeffs = self
            .lambdas
            .iter()
            .map(|l| [Q::one(), -l.clone(), Q::zero()])
            .chain(self.mus.iter().map(|m| [Q::one(), Q::zero(), -m.clone()]))
            .collect();
        Arrangement::new(coeffs).expect("bi-pencil lines are distinct")
    }
}

fn all_distinct(xs: &[Q]) -> bool {
    let set: BTreeSet<&Q> = xs.iter().collect();
    set.len() == xs.len()
}

/// Two multiple points covering every line, each line through exactly one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPencilCover {
    pub p1: FlatPoint,
    pub p2: FlatPoint,
    pub p: usize,
    pub q: usize,
}

/// Finds two multiple points whose pencils partition the lines.
///
/// Orientation puts the larger pencil first (the lexicographically smaller
/// point first on ties); among several valid pairs the lexicographically
/// smallest `(P1, P2)` wins.
pub fn is_bipencil(a: &Arrangement) -> Option<BiPencilCover> {
    let n = a.degree();
    let pts = intersection_points(a);
    let mut best: Option<BiPencilCover> = None;
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if x.multiplicity() + y.multiplicity() != n || !x.incident.is_disjoint(&y.incident) {
                continue;
            }
            // pts is sorted, so x < y lexicographically.
            let (p1, p2) = if y.multiplicity() > x.multiplicity() {
                (y, x)
            } else {
                (x, y)
            };
            let cand = BiPencilCover {
                p: p1.multiplicity(),
                q: p2.multiplicity(),
                p1: p1.clone(),
                p2: p2.clone(),
            };
            let better = match &best {
                None => true,
                Some(b) => (&cand.p1.point, &cand.p2.point) < (&b.p1.point, &b.p2.point),
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best
}

/// A bi-pencil together with the coordinate change producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilForm {
    pub pencil: BiPencil,
    /// Rows are the new coordinates as linear forms in the old ones: `x' = change * x`.
    pub change: Matrix3,
}

impl PencilForm {
    /// Maps the normal-form lines back to the original coordinates.
    pub fn reconstruct(&self) -> Arrangement {
        let normal = self.pencil.arrangement();
        Arrangement::new(
            normal
                .lines()
                .iter()
                .map(|l| row_times_matrix(l.coeffs(), &self.change))
                .collect(),
        )
        .expect("a coordinate change keeps lines distinct")
    }
}

/// Moves the two pencil centres to `(0:0:1)` and `(0:1:0)`.
///
/// The new `x0` is the line joining the centres. The new `x1` (resp. `x2`) is
/// the line joining the first centre (resp. second) to the first reference
/// point in a fixed list that is off the joining line and yields a line not in
/// the arrangement. If the centres are already in standard position the
/// change is the identity.
pub fn pencil_form(a: &Arrangement) -> Result<PencilForm, ArrangementError> {
    let cover = is_bipencil(a).ok_or(ArrangementError::NotBiPencil)?;
    let c1 = &cover.p1.point;
    let c2 = &cover.p2.point;
    let x0 = normalize3(&cross(c1, c2)).expect("distinct centres");
    let pick = |centre: &[Q; 3]| -> [Q; 3] {
        reference_points()
            .find_map(|r| {
                if &r == centre || dot(&x0, &r).is_zero() {
                    return None;
                }
                let l = normalize3(&cross(centre, &r))?;
                let in_arrangement = a.lines().iter().any(|line| line.coeffs() == &l);
                (!in_arrangement).then_some(l)
            })
            .expect("finitely many lines are excluded")
    };
    let x1 = pick(c1);
    let x2 = pick(c2);
    let change: Matrix3 = [x0, x1, x2];
    let inv = invert3(&change).expect("independent by construction");

    let mut lambdas = Vec::with_capacity(cover.p);
    let mut mus = Vec::with_capacity(cover.q);
    for line in a.lines() {
        let c = row_times_matrix(line.coeffs(), &inv);
        let through_first = cover.p1.incident.iter().any(|&i| &a.lines()[i] == line);
        if through_first {
            debug_assert!(c[2].is_zero());
            lambdas.push(-&c[1] / &c[0]);
        } else {
            debug_assert!(c[1].is_zero());
            mus.push(-&c[2] / &c[0]);
        }
    }
    Ok(PencilForm {
        pencil: BiPencil::new(lambdas, mus)?,
        change,
    })
}

/// Deterministic stream of normalized small-integer points, coordinate axes first.
fn reference_points() -> impl Iterator<Item = [Q; 3]> {
    let axes = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let rest = (1i64..).flat_map(|r| {
        let mut v = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                for c in -r..=r {
                    if a.abs().max(b.abs()).max(c.abs()) == r {
                        v.push([a, b, c]);
                    }
                }
            }
        }
        v
    });
    let mut seen: BTreeSet<[Q; 3]> = BTreeSet::new();
    axes.into_iter()
        .chain(rest)
        .filter_map(|[a, b, c]| normalize3(&[q(a), q(b), q(c)]))
        .filter(move |p| seen.insert(p.clone()))
}

pub fn cross(u: &[Q; 3], v: &[Q; 3]) -> [Q; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub fn dot(u: &[Q; 3], v: &[Q; 3]) -> Q {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

pub fn normalize3(v: &[Q; 3]) -> Option<[Q; 3]> {
    let n = normalize_projective(v)?;
    Some([n[0].clone(), n[1].clone(), n[2].clone()])
}

pub fn row_times_matrix(row: &[Q; 3], m: &Matrix3) -> [Q; 3] {
    std::array::from_fn(|j| (0..3).map(|i| &row[i] * &m[i][j]).sum())
}

pub fn matrix_times_column(m: &Matrix3, col: &[Q; 3]) -> [Q; 3] {
    std::array::from_fn(|i| dot(&m[i], col))
}

pub fn det3(m: &Matrix3) -> Q {
    dot(&m[0], &cross(&m[1], &m[2]))
}

/// Inverse by the adjugate.
pub fn invert3(m: &Matrix3) -> Option<Matrix3> {
    let d = det3(m);
    if d.is_zero() {
        return None;
    }
    // Columns of the inverse are the cross products of pairs of rows.
    let c0 = cross(&m[1], &m[2]);
    let c1 = cross(&m[2], &m[0]);
    let c2 = cross(&m[0], &m[1]);
    Some(std::array::from_fn(|i| {
        [&c0[i] / &d, &c1[i] / &d, &c2[i] / &d]
    }))
}

// ---------------------------------------------------------------------------
// File format

/// What an arrangement file can describe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangementInput {
    Lines(Arrangement),
    BiPencil(BiPencil),
    /// Incidences only; enough for every lattice-level invariant.
    Lattice(IntersectionLattice),
}

impl ArrangementInput {
    pub fn arrangement(&self) -> Option<Arrangement> {
        match self {
            ArrangementInput::Lines(a) => Some(a.clone()),
            ArrangementInput::BiPencil(b) => Some(b.arrangement()),
            ArrangementInput::Lattice(_) => None,
        }
    }

    pub fn lattice(&self) -> IntersectionLattice {
        match self {
            ArrangementInput::Lines(a) => a.lattice(),
            ArrangementInput::BiPencil(b) => b.arrangement().lattice(),
            ArrangementInput::Lattice(l) => l.clone(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    lines: Option<Vec<Vec<serde_json::Value>>>,
    bipencil: Option<RawBiPencil>,
    lattice: Option<RawLattice>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBiPencil {
    lambdas: Vec<serde_json::Value>,
    mus: Vec<serde_json::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    lines: usize,
    points: Vec<Vec<usize>>,
}

fn rational_value(v: &serde_json::Value) -> Result<Q, ArrangementError> {
    match v {
        serde_json::Value::String(s) => {
            parse_rational(s).map_err(|_| ArrangementError::MalformedRational(s.clone()))
        }
        serde_json::Value::Number(n) if n.is_i64() => Ok(q(n.as_i64().unwrap())),
        other => Err(ArrangementError::MalformedRational(other.to_string())),
    }
}

/// Parses the JSON arrangement format.
pub fn parse_arrangement(text: &str) -> Result<ArrangementInput, ArrangementError> {
    let raw: RawFile =
        serde_json::from_str(text).map_err(|e| ArrangementError::Format(e.to_string()))?;
    match (raw.lines, raw.bipencil, raw.lattice) {
        (Some(lines), None, None) => {
            let mut coeffs = Vec::with_capacity(lines.len());
            for (i, l) in lines.iter().enumerate() {
                if l.len() != 3 {
                    return Err(ArrangementError::Format(format!(
                        "line {i} must have three coefficients"
                    )));
                }
                coeffs.push([
                    rational_value(&l[0])?,
                    rational_value(&l[1])?,
                    rational_value(&l[2])?,
                ]);
            }
            Ok(ArrangementInput::Lines(Arrangement::new(coeffs)?))
        }
        (None, Some(bp), None) => {
            let lambdas = bp
                .lambdas
                .iter()
                .map(rational_value)
                .collect::<Result<_, _>>()?;
            let mus = bp
                .mus
                .iter()
                .map(rational_value)
                .collect::<Result<_, _>>()?;
            Ok(ArrangementInput::BiPencil(BiPencil::new(lambdas, mus)?))
        }
        (None, None, Some(lat)) => Ok(ArrangementInput::Lattice(
            IntersectionLattice::from_incidences(lat.lines, lat.points)?,
        )),
        _ => Err(ArrangementError::Format(
            "expected exactly one of \"lines\", \"bipencil\" or \"lattice\"".into(),
        )),
    }
}

/// Writes normalized representatives in the `{"lines": ...}` form.
pub fn serialize_arrangement(a: &Arrangement) -> String {
    let lines: Vec<Vec<String>> = a
        .lines()
        .iter()
        .map(|l| l.coeffs().iter().map(format_rational).collect())
        .collect();
    serde_json::json!({ "lines": lines }).to_string()
}

/// JSON view of a point as `"num/den"` strings.
pub fn point_json(p: &[Q; 3]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}
