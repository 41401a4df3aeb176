//! Cubical and semisimplicial index combinatorics on labelled diagrams, and a
//! checker for the codimension hypotheses of the Gysin comparison theorem.
//!
//! Subsets of `{0, .., n-1}` are bitmasks. A diagram is contravariant: the
//! arrow for `I ⊂ J` goes from `X_J` to `X_I`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported index.
pub const MAX_INDEX: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicalError {
    #[error("malformed subset `{0}`")]
    BadSubset(String),
    #[error("index {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("node {0} is missing")]
    MissingNode(String),
    #[error("arrow {0} is missing")]
    MissingArrow(String),
    #[error("arrow {0} is not a covering pair")]
    NotCovering(String),
    #[error("node {node}: declared dimension {declared} but components give {actual}")]
    DimensionMismatch {
        node: String,
        declared: i64,
        actual: i64,
    },
    #[error("node {0}: component dimensions must be nonnegative")]
    NegativeComponent(String),
    #[error("arrow {0}: codimension data on a map that is not a closed immersion")]
    CodimOnNonImmersion(String),
    #[error("arrow {arrow}: unknown source component `{component}`")]
    UnknownArrowComponent { arrow: String, component: String },
    #[error("composites from {from} to {to} disagree: {left} vs {right}")]
    InconsistentComposite {
        from: String,
        to: String,
        left: MorphismKind,
        right: MorphismKind,
    },
    #[error("index must be at least {need}, got {got}")]
    IndexTooSmall { need: usize, got: usize },
    #[error("{what}: index {left} does not match {right}")]
    IndexMismatch {
        what: String,
        left: usize,
        right: usize,
    },
    #[error("face map {beta:?} is not strictly increasing into [0, {r}]")]
    BadFace { beta: Vec<usize>, r: usize },
    #[error("missing codimension datum for component `{component}` of {cube} at {index}")]
    MissingCodim {
        cube: String,
        index: String,
        component: String,
    },
    #[error("{cube} at {index} has no component `{component}`")]
    UnknownComponent {
        cube: String,
        index: String,
        component: String,
    },
    #[error("{cube} at {index}: `{component}` has codimension {declared} but the dimensions give {actual}")]
    InconsistentCodim {
        cube: String,
        index: String,
        component: String,
        declared: u32,
        actual: i64,
    },
    #[error("malformed diagram: {0}")]
    Format(String),
}

/// `{0,2}` style text; `{}` for the empty set.
pub fn subset_key(mask: u32) -> String {
    let elems: Vec<String> = (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

pub fn parse_subset(text: &str, n: usize) -> Result<u32, CubicalError> {
    let bad = || CubicalError::BadSubset(text.to_string());
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(bad)?;
    let mut mask = 0u32;
    if inner.trim().is_empty() {
        return Ok(0);
    }
    for part in inner.split(',') {
        let i: usize = part.trim().parse().map_err(|_| bad())?;
        if i >= n || mask & (1 << i) != 0 {
            return Err(bad());
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Subsets of `{0..n-1}` with `size` elements, in lexicographic order of sorted lists.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .collect();
    out.sort_by_key(|&m| elements(m));
    out
}

fn serialize_mask<S: Serializer>(mask: &u32, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&subset_key(*mask))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub dimension: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub name: String,
    pub dimension: i64,
    #[serde(default)]
    pub components: Vec<Component>,
    #[serde(default)]
    pub smooth: bool,
}

impl SpaceDescriptor {
    /// Dimension is the maximum over `components`, or -1 when there are none.
    pub fn new(name: &str, components: Vec<Component>, smooth: bool) -> Self {
        let dimension = components.iter().map(|c| c.dimension).max().unwrap_or(-1);
        SpaceDescriptor {
            name: name.to_string(),
            dimension,
            components,
            smooth,
        }
    }

    pub fn empty(name: &str) -> Self {
        Self::new(name, Vec::new(), true)
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    fn validate(&self, node: &str) -> Result<(), CubicalError> {
        if self.components.iter().any(|c| c.dimension < 0) {
            return Err(CubicalError::NegativeComponent(node.to_string()));
        }
        let actual = self
            .components
            .iter()
            .map(|c| c.dimension)
            .max()
            .unwrap_or(-1);
        if actual != self.dimension {
            return Err(CubicalError::DimensionMismatch {
                node: node.to_string(),
                declared: self.dimension,
                actual,
            });
        }
        Ok(())
    }
}

pub fn comp(name: &str, dimension: i64) -> Component {
    Component {
        name: name.to_string(),
        dimension,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismKind {
    ClosedImmersion,
    ProperModification,
    Proper,
    Iso,
    Other,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::ClosedImmersion => "closed-immersion",
            MorphismKind::ProperModification => "proper-modification",
            MorphismKind::Proper => "proper",
            MorphismKind::Iso => "iso",
            MorphismKind::Other => "other",
        })
    }
}

impl MorphismKind {
    /// Kind of `g ∘ f` where `self = g` and `first = f`.
    pub fn after(self, first: MorphismKind) -> MorphismKind {
        use MorphismKind::*;
        match (self, first) {
            (Iso, k) | (k, Iso) => k,
            (Other, _) | (_, Other) => Other,
            (a, b) if a == b => a,
            _ => Proper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDescriptor {
    pub kind: MorphismKind,
    /// Codimension of each source component, for closed immersions only.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub codim: BTreeMap<String, u32>,
}

impl MorphismDescriptor {
    pub fn of(kind: MorphismKind) -> Self {
        MorphismDescriptor {
            kind,
            codim: BTreeMap::new(),
        }
    }
}

/// An `n`-cubical diagram of labelled spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalDiagram {
    n: usize,
    nodes: Vec<SpaceDescriptor>,
    /// Keyed by `(source J, target I)` with `J = I ∪ {j}`.
    arrows: BTreeMap<(u32, u32), MorphismDescriptor>,
}

fn arrow_key(from: u32, to: u32) -> String {
    format!("{}->{}", subset_key(from), subset_key(to))
}

impl CubicalDiagram {
    /// Validates nodes, covering arrows and the composite audit.
    pub fn new(
        n: usize,
        nodes: Vec<SpaceDescriptor>,
        arrows: BTreeMap<(u32, u32), MorphismDescriptor>,
    ) -> Result<Self, CubicalError> {
        if n > MAX_INDEX {
            return Err(CubicalError::TooLarge(n));
        }
        let size = 1usize << n;
        if nodes.len() != size {
            return Err(CubicalError::MissingNode(subset_key(nodes.len() as u32)));
        }
        for (m, node) in nodes.iter().enumerate() {
            node.validate(&subset_key(m as u32))?;
        }
        for &(from, to) in arrows.keys() {
            let covering = from < size as u32 && from & to == to && (from ^ to).count_ones() == 1;
            if !covering {
                return Err(CubicalError::NotCovering(arrow_key(from, to)));
            }
        }
        for from in 0..size as u32 {
            for j in elements(from) {
                let to = from & !(1 << j);
                let key = arrow_key(from, to);
                let a = arrows
                    .get(&(from, to))
                    .ok_or_else(|| CubicalError::MissingArrow(key.clone()))?;
                if !a.codim.is_empty() && a.kind != MorphismKind::ClosedImmersion {
                    return Err(CubicalError::CodimOnNonImmersion(key));
                }
                for c in a.codim.keys() {
                    if nodes[from as usize].component(c).is_none() {
                        return Err(CubicalError::UnknownArrowComponent {
                            arrow: key,
                            component: c.clone(),
                        });
                    }
                }
            }
        }
        let d = CubicalDiagram { n, nodes, arrows };
        d.audit()?;
        Ok(d)
    }

    /// Every node given by `node`, every arrow of kind `kind`.
    pub fn uniform(
        n: usize,
        node: impl Fn(u32) -> SpaceDescriptor,
        kind: impl Fn(u32, u32) -> MorphismKind,
    ) -> Result<Self, CubicalError> {
        if n > MAX_INDEX {
            return Err(CubicalError::TooLarge(n));
        }
        let nodes = (0u32..1 << n).map(node).collect();
        let mut arrows = BTreeMap::new();
        for from in 0u32..1 << n {
            for j in elements(from) {
                let to = from & !(1 << j);
                arrows.insert((from, to), MorphismDescriptor::of(kind(from, to)));
            }
        }
        Self::new(n, nodes, arrows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node(&self, mask: u32) -> &SpaceDescriptor {
        &self.nodes[mask as usize]
    }

    pub fn nodes(&self) -> &[SpaceDescriptor] {
        &self.nodes
    }

    pub fn arrow(&self, from: u32, to: u32) -> Option<&MorphismDescriptor> {
        self.arrows.get(&(from, to))
    }

    pub fn arrows(&self) -> &BTreeMap<(u32, u32), MorphismDescriptor> {
        &self.arrows
    }

    /// Kind of the unique morphism `X_from -> X_to`, or `None` unless `to ⊆ from`.
    pub fn composite(&self, from: u32, to: u32) -> Option<MorphismKind> {
        if from & to != to || from >= 1 << self.n {
            return None;
        }
        let mut kind = MorphismKind::Iso;
        let mut cur = from;
        for j in elements(from ^ to) {
            let next = cur & !(1 << j);
            kind = self.arrows[&(cur, next)].kind.after(kind);
            cur = next;
        }
        Some(kind)
    }

    /// All chains of covering arrows between the same endpoints compose to the same kind.
    fn audit(&self) -> Result<(), CubicalError> {
        // comp[(J, I)] for |J \ I| = len, built up from len = 1.
        let mut comp: BTreeMap<(u32, u32), MorphismKind> =
            self.arrows.iter().map(|(&k, a)| (k, a.kind)).collect();
        for len in 2..=self.n {
            let mut next = BTreeMap::new();
            for from in 0u32..1 << self.n {
                for to in 0u32..1 << self.n {
                    if from & to != to || (from ^ to).count_ones() as usize != len {
                        continue;
                    }
                    let mut seen: Option<MorphismKind> = None;
                    for a in elements(from ^ to) {
                        let mid = from & !(1 << a);
                        let k = comp[&(mid, to)].after(self.arrows[&(from, mid)].kind);
                        match seen {
                            None => seen = Some(k),
                            Some(s) if s != k => {
                                return Err(CubicalError::InconsistentComposite {
                                    from: subset_key(from),
                                    to: subset_key(to),
                                    left: s,
                                    right: k,
                                })
                            }
                            _ => {}
                        }
                    }
                    next.insert((from, to), seen.expect("len >= 2"));
                }
            }
            comp.extend(next);
        }
        Ok(())
    }

    pub fn component_count(&self) -> usize {
        self.nodes.iter().map(|s| s.components.len()).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    n: usize,
    nodes: BTreeMap<String, SpaceDescriptor>,
    #[serde(default)]
    arrows: BTreeMap<String, MorphismDescriptor>,
}

impl DiagramJson {
    fn into_diagram(self) -> Result<CubicalDiagram, CubicalError> {
        let n = self.n;
        if n > MAX_INDEX {
            return Err(CubicalError::TooLarge(n));
        }
        let mut nodes: Vec<Option<SpaceDescriptor>> = vec![None; 1 << n];
        for (k, v) in self.nodes {
            let m = parse_subset(&k, n)? as usize;
            if nodes[m].is_some() {
                return Err(CubicalError::Format(format!("node {k} given twice")));
            }
            nodes[m] = Some(v);
        }
        let nodes = nodes
            .into_iter()
            .enumerate()
            .map(|(m, v)| v.ok_or_else(|| CubicalError::MissingNode(subset_key(m as u32))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut arrows = BTreeMap::new();
        for (k, v) in self.arrows {
            let (a, b) = k
                .split_once("->")
                .ok_or_else(|| CubicalError::Format(format!("arrow key `{k}`")))?;
            let key = (parse_subset(a, n)?, parse_subset(b, n)?);
            if arrows.insert(key, v).is_some() {
                return Err(CubicalError::Format(format!("arrow {k} given twice")));
            }
        }
        CubicalDiagram::new(n, nodes, arrows)
    }
}

impl Serialize for CubicalDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramJson {
            n: self.n,
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(m, v)| (subset_key(m as u32), v.clone()))
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|(&(a, b), v)| (arrow_key(a, b), v.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CubicalDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        DiagramJson::deserialize(d)?
            .into_diagram()
            .map_err(D::Error::custom)
    }
}

pub fn parse_diagram(text: &str) -> Result<CubicalDiagram, CubicalError> {
    let raw: DiagramJson =
        serde_json::from_str(text).map_err(|e| CubicalError::Format(e.to_string()))?;
    raw.into_diagram()
}

/// `β(I) = {i_{β(0)}, .., i_{β(s)}}` for `I = {i_0 < .. < i_r}`.
pub fn apply_face(beta: &[usize], mask: u32) -> u32 {
    let el = elements(mask);
    beta.iter().fold(0, |acc, &b| acc | 1 << el[b])
}

/// Strictly increasing maps `[0, s] -> [0, r]`.
pub fn increasing_maps(s: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, left: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=r {
            if r + 1 - v < left {
                break;
            }
            cur.push(v);
            go(v + 1, left - 1, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, s + 1, r, &mut Vec::new(), &mut out);
    out
}

/// `β ∘ β'`, as a map `[0, u] -> [0, r]`.
pub fn compose_faces(beta: &[usize], beta_prime: &[usize]) -> Vec<usize> {
    beta_prime.iter().map(|&i| beta[i]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    #[serde(serialize_with = "serialize_mask")]
    pub subset: u32,
    pub space: SpaceDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemisimplicialLevel {
    pub k: usize,
    pub blocks: Vec<Block>,
}

impl SemisimplicialLevel {
    /// Components of all blocks, concatenated in block order.
    pub fn components(&self) -> Vec<&Component> {
        self.blocks
            .iter()
            .flat_map(|b| &b.space.components)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockMap {
    #[serde(serialize_with = "serialize_mask")]
    pub from: u32,
    #[serde(serialize_with = "serialize_mask")]
    pub to: u32,
    pub kind: MorphismKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemisimplicialDiagram {
    pub levels: Vec<SemisimplicialLevel>,
    pub augmented: SpaceDescriptor,
    pub augmentation: Vec<BlockMap>,
    #[serde(skip)]
    cube: CubicalDiagram,
}

impl SemisimplicialDiagram {
    /// Block maps of `d_β : X_r -> X_s` for `β : [0, s] -> [0, r]`.
    pub fn face_map(&self, beta: &[usize], r: usize) -> Result<Vec<BlockMap>, CubicalError> {
        let bad = || CubicalError::BadFace {
            beta: beta.to_vec(),
            r,
        };
        if beta.is_empty()
            || r >= self.levels.len()
            || beta.windows(2).any(|w| w[0] >= w[1])
            || beta.iter().any(|&b| b > r)
        {
            return Err(bad());
        }
        Ok(self.levels[r]
            .blocks
            .iter()
            .map(|b| {
                let to = apply_face(beta, b.subset);
                BlockMap {
                    from: b.subset,
                    to,
                    kind: self.cube.composite(b.subset, to).expect("face of a subset"),
                }
            })
            .collect())
    }
}

/// `X_k = ∐_{|I| = k+1} X_I` for `k = 0..n-1`, augmented to `X_∅`.
pub fn semisimplicialize(d: &CubicalDiagram) -> Result<SemisimplicialDiagram, CubicalError> {
    if d.n == 0 {
        return Err(CubicalError::IndexTooSmall { need: 1, got: 0 });
    }
    let levels = (0..d.n)
        .map(|k| SemisimplicialLevel {
            k,
            blocks: subsets_of_size(d.n, k + 1)
                .into_iter()
                .map(|m| Block {
                    subset: m,
                    space: d.node(m).clone(),
                })
                .collect(),
        })
        .collect();
    let augmentation = subsets_of_size(d.n, 1)
        .into_iter()
        .map(|m| BlockMap {
            from: m,
            to: 0,
            kind: d.arrows[&(m, 0)].kind,
        })
        .collect();
    Ok(SemisimplicialDiagram {
        levels,
        augmented: d.node(0).clone(),
        augmentation,
        cube: d.clone(),
    })
}

/// An `(n+1)`-cube read as a morphism `Y -> Z` of `n`-cubes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeMorphism {
    /// `Y_I = X_{I ∪ {n}}`.
    pub source: CubicalDiagram,
    /// `Z_I = X_I`.
    pub target: CubicalDiagram,
    /// `X_{I ∪ {n}} -> X_I`, keyed by `I`.
    #[serde(serialize_with = "serialize_mask_map")]
    pub connecting: BTreeMap<u32, MorphismDescriptor>,
}

fn serialize_mask_map<S: Serializer, V: Serialize>(
    m: &BTreeMap<u32, V>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (subset_key(*k), v)))
}

/// Restriction to the subcube `{J ∪ base : J ⊆ free}` where `free` is `{0..m-1}`.
fn subcube(d: &CubicalDiagram, m: usize, lift: impl Fn(u32) -> u32) -> CubicalDiagram {
    let nodes = (0u32..1 << m).map(|j| d.node(lift(j)).clone()).collect();
    let mut arrows = BTreeMap::new();
    for from in 0u32..1 << m {
        for i in elements(from) {
            let to = from & !(1 << i);
            arrows.insert((from, to), d.arrows[&(lift(from), lift(to))].clone());
        }
    }
    CubicalDiagram::new(m, nodes, arrows).expect("subcube of a valid diagram")
}

pub fn as_morphism_of_cubes(d: &CubicalDiagram) -> Result<CubeMorphism, CubicalError> {
    if d.n == 0 {
        return Err(CubicalError::IndexTooSmall { need: 1, got: 0 });
    }
    let n = d.n - 1;
    let top = 1u32 << n;
    Ok(CubeMorphism {
        source: subcube(d, n, |j| j | top),
        target: subcube(d, n, |j| j),
        connecting: (0u32..top)
            .map(|i| (i, d.arrows[&(i | top, i)].clone()))
            .collect(),
    })
}

impl CubeMorphism {
    /// Reassembles the `(n+1)`-cube.
    pub fn assemble(&self) -> Result<CubicalDiagram, CubicalError> {
        let n = self.source.n;
        if self.target.n != n {
            return Err(CubicalError::IndexMismatch {
                what: "source and target".into(),
                left: n,
                right: self.target.n,
            });
        }
        let top = 1u32 << n;
        let mut nodes = self.target.nodes.clone();
        nodes.extend(self.source.nodes.iter().cloned());
        let mut arrows = self.target.arrows.clone();
        for (&(a, b), v) in &self.source.arrows {
            arrows.insert((a | top, b | top), v.clone());
        }
        for (&i, v) in &self.connecting {
            arrows.insert((i | top, i), v.clone());
        }
        CubicalDiagram::new(n + 1, nodes, arrows)
    }
}

/// An `m`-cube viewed as a 2-cube of `(m-2)`-cubes over its last two indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCube {
    pub m: usize,
    /// Indexed by `S ⊆ {0, 1}` as a bitmask; index `0` of `S` is `m-2`, index `1` is `m-1`.
    pub nodes: Vec<CubicalDiagram>,
    /// Componentwise maps `Y'_T -> Y'_S` for covering `S ⊂ T`, keyed by `(T, S)` then `J`.
    pub arrows: BTreeMap<(u32, u32), BTreeMap<u32, MorphismDescriptor>>,
}

fn lift_two(m: usize, s: u32) -> u32 {
    (s & 0b11) << (m - 2)
}

pub fn reshape_2x2(d: &CubicalDiagram) -> Result<TwoCube, CubicalError> {
    let m = d.n;
    if m < 2 {
        return Err(CubicalError::IndexTooSmall { need: 2, got: m });
    }
    let inner = m - 2;
    let nodes = (0u32..4)
        .map(|s| subcube(d, inner, |j| j | lift_two(m, s)))
        .collect();
    let mut arrows = BTreeMap::new();
    for t in 0u32..4 {
        for i in elements(t) {
            let s = t & !(1 << i);
            let maps = (0u32..1 << inner)
                .map(|j| {
                    (
                        j,
                        d.arrows[&(j | lift_two(m, t), j | lift_two(m, s))].clone(),
                    )
                })
                .collect();
            arrows.insert((t, s), maps);
        }
    }
    Ok(TwoCube { m, nodes, arrows })
}

impl TwoCube {
    /// The original `m`-cube.
    pub fn flatten(&self) -> Result<CubicalDiagram, CubicalError> {
        let m = self.m;
        if m < 2 || self.nodes.len() != 4 {
            return Err(CubicalError::IndexTooSmall { need: 2, got: m });
        }
        let inner = m - 2;
        let low = (1u32 << inner) - 1;
        let mut nodes = Vec::with_capacity(1 << m);
        for mask in 0u32..1 << m {
            let s = mask >> inner;
            nodes.push(self.nodes[s as usize].node(mask & low).clone());
        }
        let mut arrows = BTreeMap::new();
        for (s, cube) in self.nodes.iter().enumerate() {
            let base = lift_two(m, s as u32);
            for (&(a, b), v) in &cube.arrows {
                arrows.insert((a | base, b | base), v.clone());
            }
        }
        for (&(t, s), maps) in &self.arrows {
            for (&j, v) in maps {
                arrows.insert((j | lift_two(m, t), j | lift_two(m, s)), v.clone());
            }
        }
        CubicalDiagram::new(m, nodes, arrows)
    }
}

impl Serialize for TwoCube {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            m: usize,
            nodes: BTreeMap<String, &'a CubicalDiagram>,
        }
        View {
            m: self.m,
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(k, v)| (subset_key(k as u32), v))
                .collect(),
        }
        .serialize(s)
    }
}

/// Where a component of the smaller diagram sits, and with what codimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedComponent {
    pub into: String,
    pub codim: u32,
}

/// Per-index, per-component embedding data for the two pairs of diagrams.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embeddings {
    /// `D_Y` into `D_X`, keyed by subset text then source component.
    pub d: BTreeMap<String, BTreeMap<String, EmbeddedComponent>>,
    /// `Σ_Y` into `Σ_X`.
    pub sigma: BTreeMap<String, BTreeMap<String, EmbeddedComponent>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Input {
    pub dx: CubicalDiagram,
    pub dy: CubicalDiagram,
    pub sx: CubicalDiagram,
    pub sy: CubicalDiagram,
    pub embeddings: Embeddings,
    pub dim_y: u32,
    pub dim_sigma_x: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    Smooth,
    CodimOne,
    ConstantCodim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisViolation {
    pub hypothesis: Hypothesis,
    pub cube: String,
    pub index: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    pub dim_y: u32,
    pub dim_sigma_x: u32,
    /// Conclusions hold for `k >= valid_from` only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid_from: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surjection_at: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_from: Option<u32>,
    pub summary: String,
    pub violations: Vec<HypothesisViolation>,
}

/// Codimensions of every component of `small` at nonempty indices.
fn embedded_codims(
    cube: &str,
    small: &CubicalDiagram,
    big: &CubicalDiagram,
    data: &BTreeMap<String, BTreeMap<String, EmbeddedComponent>>,
) -> Result<Vec<(u32, String, u32)>, CubicalError> {
    let mut by_index: BTreeMap<u32, &BTreeMap<String, EmbeddedComponent>> = BTreeMap::new();
    for (k, v) in data {
        let m = parse_subset(k, small.n)?;
        if m == 0 {
            return Err(CubicalError::BadSubset(k.clone()));
        }
        by_index.insert(m, v);
    }
    let mut out = Vec::new();
    for mask in 1u32..1 << small.n {
        let index = subset_key(mask);
        let entries = by_index.get(&mask);
        if let Some(entries) = entries {
            for name in entries.keys() {
                if small.node(mask).component(name).is_none() {
                    return Err(CubicalError::UnknownComponent {
                        cube: cube.into(),
                        index,
                        component: name.clone(),
                    });
                }
            }
        }
        for c in &small.node(mask).components {
            let e =
                entries
                    .and_then(|m| m.get(&c.name))
                    .ok_or_else(|| CubicalError::MissingCodim {
                        cube: cube.into(),
                        index: index.clone(),
                        component: c.name.clone(),
                    })?;
            let target = big.node(mask).component(&e.into).ok_or_else(|| {
                CubicalError::UnknownComponent {
                    cube: format!("{cube} target"),
                    index: index.clone(),
                    component: e.into.clone(),
                }
            })?;
            let actual = target.dimension - c.dimension;
            if actual != e.codim as i64 {
                return Err(CubicalError::InconsistentCodim {
                    cube: cube.into(),
                    index,
                    component: c.name.clone(),
                    declared: e.codim,
                    actual,
                });
            }
            out.push((mask, c.name.clone(), e.codim));
        }
    }
    Ok(out)
}

fn smoothness(cube: &str, d: &CubicalDiagram, out: &mut Vec<HypothesisViolation>) {
    for mask in 1u32..1 << d.n {
        let s = d.node(mask);
        if !s.smooth && !s.is_empty() {
            out.push(HypothesisViolation {
                hypothesis: Hypothesis::Smooth,
                cube: cube.into(),
                index: subset_key(mask),
                component: None,
                detail: format!("{} at {} is not smooth", s.name, subset_key(mask)),
            });
        }
    }
}

/// Checks the codimension hypotheses and reports the Gysin range they give.
///
/// Every component of `D_Y` at a nonempty index must sit in codimension one,
/// and every component of `Σ_Y` in one common codimension `c ∈ {0, 1}`. With
/// `c = 1` the comparison maps are isomorphisms for `k > dim Y` and onto at
/// `k = dim Y`; with `c = 0` the same holds only for `k > 2 dim Σ_X + 1`.
pub fn check_theorem2(input: &Theorem2Input) -> Result<Theorem2Verdict, CubicalError> {
    let Theorem2Input {
        dx,
        dy,
        sx,
        sy,
        embeddings,
        dim_y,
        dim_sigma_x,
    } = input;
    let (dim_y, dim_sigma_x) = (*dim_y, *dim_sigma_x);
    if dx.n != dy.n {
        return Err(CubicalError::IndexMismatch {
            what: "exceptional divisor diagrams".into(),
            left: dx.n,
            right: dy.n,
        });
    }
    if sx.n != sy.n {
        return Err(CubicalError::IndexMismatch {
            what: "singular locus diagrams".into(),
            left: sx.n,
            right: sy.n,
        });
    }
    let d_codims = embedded_codims("dy", dy, dx, &embeddings.d)?;
    let s_codims = embedded_codims("sy", sy, sx, &embeddings.sigma)?;

    let mut violations = Vec::new();
    for (name, cube) in [("dx", dx), ("dy", dy), ("sx", sx), ("sy", sy)] {
        smoothness(name, cube, &mut violations);
    }
    for (mask, name, codim) in &d_codims {
        if *codim != 1 {
            violations.push(HypothesisViolation {
                hypothesis: Hypothesis::CodimOne,
                cube: "dy".into(),
                index: subset_key(*mask),
                component: Some(name.clone()),
                detail: format!(
                    "component {name} at {} has codimension {codim}",
                    subset_key(*mask)
                ),
            });
        }
    }
    let distinct: BTreeSet<u32> = s_codims.iter().map(|x| x.2).collect();
    // No components at all is the vacuous case and behaves as c = 1.
    let c = match distinct.len() {
        0 => Some(1),
        1 if *distinct.iter().next().unwrap() <= 1 => distinct.iter().next().copied(),
        _ => {
            let (mask, name, codim) = s_codims
                .iter()
                .find(|x| x.2 > 1 || x.2 != s_codims[0].2)
                .unwrap_or(&s_codims[0]);
            violations.push(HypothesisViolation {
                hypothesis: Hypothesis::ConstantCodim,
                cube: "sy".into(),
                index: subset_key(*mask),
                component: Some(name.clone()),
                detail: format!(
                    "singular locus codimensions {distinct:?} are not a single value in {{0, 1}} ({name} has {codim})"
                ),
            });
            None
        }
    };

    if !violations.is_empty() {
        return Ok(Theorem2Verdict {
            holds: false,
            c: None,
            dim_y,
            dim_sigma_x,
            valid_from: None,
            surjection_at: None,
            iso_from: None,
            summary: format!("fails: {}", violations[0].detail),
            violations,
        });
    }
    let c = c.expect("no violations");
    let (valid_from, surjection_at, iso_from) = if c == 1 {
        (None, Some(dim_y), dim_y + 1)
    } else {
        let from = 2 * dim_sigma_x + 2;
        (
            Some(from),
            (dim_y >= from).then_some(dim_y),
            (dim_y + 1).max(from),
        )
    };
    let summary = match surjection_at {
        Some(k) => format!("holds, c={c}, Gysin surjection at k={k} for dimY={dim_y}"),
        None => format!(
            "holds, c={c}, no Gysin surjection in range k>{} for dimY={dim_y}",
            2 * dim_sigma_x + 1
        ),
    };
    Ok(Theorem2Verdict {
        holds: true,
        c: Some(c),
        dim_y,
        dim_sigma_x,
        valid_from,
        surjection_at,
        iso_from: Some(iso_from),
        summary,
        violations,
    })
}

/// Fixtures built from the resolutions of the threefold singularities.
pub mod fixtures {
    use super::*;
    use MorphismKind::*;

    fn square(
        nodes: [SpaceDescriptor; 4],
        kinds: [((u32, u32), MorphismKind); 4],
    ) -> CubicalDiagram {
        let arrows = kinds
            .into_iter()
            .map(|(k, kind)| (k, MorphismDescriptor::of(kind)))
            .collect();
        CubicalDiagram::new(2, nodes.into(), arrows).expect("fixture square")
    }

    /// Resolution square of a divisor: separated components at `{0}`, the
    /// double locus at `{1}`, and its two preimages at `{0,1}`.
    fn resolution_square(
        name: &str,
        whole: Vec<Component>,
        double: Vec<Component>,
        smooth_whole: bool,
    ) -> CubicalDiagram {
        let copies: Vec<Component> = double
            .iter()
            .flat_map(|c| [0, 1].map(|t| comp(&format!("{}#{t}", c.name), c.dimension)))
            .collect();
        square(
            [
                SpaceDescriptor::new(name, whole.clone(), smooth_whole),
                SpaceDescriptor::new(&format!("{name}'"), whole, true),
                SpaceDescriptor::new(&format!("K({name})"), double, true),
                SpaceDescriptor::new(&format!("K'({name})"), copies, true),
            ],
            [
                ((0b01, 0b00), Proper),
                ((0b10, 0b00), ClosedImmersion),
                ((0b11, 0b01), ClosedImmersion),
                ((0b11, 0b10), Proper),
            ],
        )
    }

    fn embed(into: &str, codim: u32) -> EmbeddedComponent {
        EmbeddedComponent {
            into: into.into(),
            codim,
        }
    }

    /// `Σ_X` and `Σ_Y` are smooth and sit in the identity 1-cube; `Σ_Y = {P_p}`.
    fn sigma(extra_points: usize) -> (CubicalDiagram, CubicalDiagram, Embeddings) {
        let mut pts = vec![comp("P_p", 0), comp("P_q", 0)];
        pts.extend((1..=extra_points).map(|i| comp(&format!("R_{i}"), 0)));
        let one = |name: &str, cs: Vec<Component>| {
            let nodes = vec![
                SpaceDescriptor::new(name, cs.clone(), true),
                SpaceDescriptor::new(name, cs, true),
            ];
            let arrows = BTreeMap::from([((1, 0), MorphismDescriptor::of(Iso))]);
            CubicalDiagram::new(1, nodes, arrows).expect("identity cube")
        };
        let sx = one("Sigma_X", pts);
        let sy = one("Sigma_Y", vec![comp("P_p", 0)]);
        let emb = Embeddings {
            d: BTreeMap::new(),
            sigma: BTreeMap::from([(
                "{0}".to_string(),
                BTreeMap::from([("P_p".to_string(), embed("P_p", 0))]),
            )]),
        };
        (sx, sy, emb)
    }

    /// `p = q`: `D_X` has the surface `E` and `p` disjoint planes `W_i`
    /// meeting `E` in lines `L_i`; `D_Y` is the curve `F = E ∩ H`, resolved
    /// by the square `{Q'} -> D_Y` over `{Q'} -> D_Y`.
    pub fn equal_pencils(p: usize) -> Theorem2Input {
        assert!(p >= 1);
        let mut whole = vec![comp("E", 2)];
        whole.extend((1..=p).map(|i| comp(&format!("W_{i}"), 2)));
        let double: Vec<Component> = (1..=p).map(|i| comp(&format!("L_{i}"), 1)).collect();
        let dx = resolution_square("D_X", whole, double, false);

        let f = || SpaceDescriptor::new("D_Y", vec![comp("F", 1)], true);
        let qp = || SpaceDescriptor::new("Q'", vec![comp("Q'", 0)], true);
        let dy = square(
            [f(), f(), qp(), qp()],
            [
                ((0b01, 0b00), Iso),
                ((0b10, 0b00), ClosedImmersion),
                ((0b11, 0b01), ClosedImmersion),
                ((0b11, 0b10), Iso),
            ],
        );
        let (sx, sy, mut embeddings) = sigma(1);
        embeddings.d = BTreeMap::from([
            ("{0}".into(), BTreeMap::from([("F".into(), embed("E", 1))])),
            (
                "{1}".into(),
                BTreeMap::from([("Q'".into(), embed("L_1", 1))]),
            ),
            (
                "{0,1}".into(),
                BTreeMap::from([("Q'".into(), embed("L_1#0", 1))]),
            ),
        ]);
        Theorem2Input {
            dx,
            dy,
            sx,
            sy,
            embeddings,
            dim_y: 2,
            dim_sigma_x: 0,
        }
    }

    /// `p ≠ q`: `D_X` has `E`, chains of planes `Z_i^(t)` (`t = 0..=r`,
    /// `i = 1..=p`) and `Y_i^(t)` (`t = 0..=u`, `i = 1..=m`), consecutive
    /// planes of a chain meeting in lines and the `t = 0` planes meeting `E`.
    /// `D_Y` has `F` and lines `K_i^(t) = Y_i^(t) ∩ H`.
    pub fn distinct_pencils(p: usize, m: usize, r: usize, u: usize) -> Theorem2Input {
        let z = |i: usize, t: usize| format!("Z_{i}^({t})");
        let y = |i: usize, t: usize| format!("Y_{i}^({t})");
        let k = |i: usize, t: usize| format!("K_{i}^({t})");

        let mut whole = vec![comp("E", 2)];
        let mut double = Vec::new();
        // (dx line, dy point, dy line, dx plane) for the Y chains
        let mut y_links = Vec::new();
        for i in 1..=p {
            whole.extend((0..=r).map(|t| comp(&z(i, t), 2)));
            double.push(comp(&format!("{}.E", z(i, 0)), 1));
            double.extend((0..r).map(|t| comp(&format!("{}.{}", z(i, t), z(i, t + 1)), 1)));
        }
        for i in 1..=m {
            whole.extend((0..=u).map(|t| comp(&y(i, t), 2)));
            y_links.push((format!("{}.E", y(i, 0)), format!("{}.F", k(i, 0))));
            y_links.extend((0..u).map(|t| {
                (
                    format!("{}.{}", y(i, t), y(i, t + 1)),
                    format!("{}.{}", k(i, t), k(i, t + 1)),
                )
            }));
        }
        double.extend(y_links.iter().map(|(l, _)| comp(l, 1)));
        let dx = resolution_square("D_X", whole, double, false);

        let mut curves = vec![comp("F", 1)];
        curves.extend(
            (1..=m)
                .flat_map(|i| (0..=u).map(move |t| (i, t)))
                .map(|(i, t)| comp(&k(i, t), 1)),
        );
        let points: Vec<Component> = y_links.iter().map(|(_, q)| comp(q, 0)).collect();
        let dy = resolution_square("D_Y", curves, points, false);

        let mut at0 = BTreeMap::from([("F".to_string(), embed("E", 1))]);
        for i in 1..=m {
            for t in 0..=u {
                at0.insert(k(i, t), embed(&y(i, t), 1));
            }
        }
        let mut at1 = BTreeMap::new();
        let mut at01 = BTreeMap::new();
        for (l, q) in &y_links {
            at1.insert(q.clone(), embed(l, 1));
            for t in 0..2 {
                at01.insert(format!("{q}#{t}"), embed(&format!("{l}#{t}"), 1));
            }
        }
        let (sx, sy, mut embeddings) = sigma(1);
        embeddings.d = BTreeMap::from([
            ("{0}".into(), at0),
            ("{1}".into(), at1),
            ("{0,1}".into(), at01),
        ]);
        Theorem2Input {
            dx,
            dy,
            sx,
            sy,
            embeddings,
            dim_y: 2,
            dim_sigma_x: 0,
        }
    }

    /// [`equal_pencils`] with `F` replaced by a point of `E`.
    pub fn codim_two_mutant() -> Theorem2Input {
        let mut input = equal_pencils(2);
        let mut nodes = input.dy.nodes.clone();
        for m in [0, 1] {
            nodes[m] = SpaceDescriptor::new("D_Y", vec![comp("F", 0)], true);
        }
        input.dy = CubicalDiagram::new(2, nodes, input.dy.arrows.clone()).expect("mutant");
        input
            .embeddings
            .d
            .get_mut("{0}")
            .unwrap()
            .insert("F".into(), embed("E", 2));
        input
    }
}
