//! Cayley digraphs, labeled walks and the verification predicates every
//! construction in this crate is checked against.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, Vertex};

/// Index of the generator an arc follows. `A` and `B` are the two generators
/// of a two-generated digraph; `C` is the extra cycle direction of a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u8);

impl Label {
    pub const A: Label = Label(0);
    pub const B: Label = Label(1);
    pub const C: Label = Label(2);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn as_char(self) -> char {
        (b'A' + self.0) as char
    }

    pub fn from_char(c: char) -> Option<Label> {
        match c {
            'A'..='Z' => Some(Label(c as u8 - b'A')),
            _ => None,
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.as_char())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn labels_to_string(labels: &[Label]) -> String {
    labels.iter().map(|l| l.as_char()).collect()
}

pub fn labels_from_str(s: &str) -> Result<Vec<Label>> {
    s.chars()
        .map(|c| {
            Label::from_char(c)
                .ok_or_else(|| Error::InvalidParameters(format!("label {c:?} is not a letter A-Z")))
        })
        .collect()
}

mod label_string {
    use super::*;
    use serde::Deserializer;

    pub fn serialize<S: Serializer>(
        labels: &[Label],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&labels_to_string(labels))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Label>, D::Error> {
        let s = String::deserialize(d)?;
        labels_from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// A walk given by its start and the generator taken at each step. Vertices
/// are recomputed from a host digraph on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledWalk {
    pub start: Vertex,
    #[serde(with = "label_string")]
    pub labels: Vec<Label>,
}

impl LabeledWalk {
    pub fn new(start: Vertex, labels: Vec<Label>) -> Self {
        Self { start, labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of arcs labelled by the second generator.
    pub fn delta_b(&self) -> usize {
        self.count(Label::B)
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn label_string(&self) -> String {
        labels_to_string(&self.labels)
    }
}

/// Arcs of a Cayley digraph are determined by tail and label.
pub type Arc = (Vertex, Label);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcSet(pub BTreeSet<Arc>);

impl ArcSet {
    pub fn contains(&self, tail: &Vertex, label: Label) -> bool {
        self.0.contains(&(tail.clone(), label))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc> {
        self.0.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkMode {
    Path,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    StartOutsideGroup { start: Vertex },
    UnknownLabel { step: usize, label: Label },
    WrongLength { expected: usize, actual: usize },
    RepeatedVertex { step: usize, vertex: Vertex },
    NotClosed { end: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StartOutsideGroup { start } => write!(f, "start {start} is not a vertex"),
            Violation::UnknownLabel { step, label } => {
                write!(f, "unknown label {label} at step {step}")
            }
            Violation::WrongLength { expected, actual } => {
                write!(
                    f,
                    "wrong length: expected {expected} labels, found {actual}"
                )
            }
            Violation::RepeatedVertex { step, vertex } => {
                write!(f, "repeated vertex {vertex} at step {step}")
            }
            Violation::NotClosed { end } => write!(f, "cycle does not close (ends at {end})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub mode: WalkMode,
    pub violation: Option<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairViolation {
    First(Violation),
    Second(Violation),
    ArcOverlap { tail: Vertex, label: Label },
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairViolation::First(v) => write!(f, "path 1: {v}"),
            PairViolation::Second(v) => write!(f, "path 2: {v}"),
            PairViolation::ArcOverlap { tail, label } => {
                write!(f, "arc overlap: both paths use {tail} -{label}->")
            }
        }
    }
}

/// Directed Cayley digraph `Cay(G; s_0, s_1, ...)` with arcs `x -> x + s_i`.
///
/// Two generators is the main case; the three-generator form only arises as
/// the product of a two-generated base with a directed cycle.
#[derive(Clone, Debug)]
pub struct CayleyDigraph {
    group: FiniteAbelianGroup,
    generators: Vec<Vertex>,
    // successor[label][vertex index]
    successor: Vec<Vec<usize>>,
    predecessor: Vec<Vec<usize>>,
}

impl PartialEq for CayleyDigraph {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.generators == other.generators
    }
}

impl Eq for CayleyDigraph {}

impl CayleyDigraph {
    pub fn new(group: FiniteAbelianGroup, gen_a: Vertex, gen_b: Vertex) -> Result<Self> {
        Self::with_generators(group, vec![gen_a, gen_b])
    }

    /// The one-vertex digraph on the trivial group, which has no nonzero generator.
    pub fn trivial() -> Self {
        let group = FiniteAbelianGroup::cyclic(1).expect("Z_1 is a group");
        Self {
            group,
            generators: Vec::new(),
            successor: Vec::new(),
            predecessor: Vec::new(),
        }
    }

    /// `Cay(Z_k; a, b)`.
    pub fn circulant(k: u64, a: u64, b: u64) -> Result<Self> {
        let g = FiniteAbelianGroup::cyclic(k)?;
        let (ga, gb) = (g.cyclic_element(a), g.cyclic_element(b));
        Self::new(g, ga, gb)
    }

    pub fn with_generators(group: FiniteAbelianGroup, generators: Vec<Vertex>) -> Result<Self> {
        if generators.is_empty() || generators.len() > 26 {
            return Err(Error::InvalidGenerators(
                "between 1 and 26 generators required".into(),
            ));
        }
        for g in &generators {
            group.check(g)?;
            if *g == group.zero() {
                return Err(Error::InvalidGenerators(format!("generator {g} is zero")));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::InvalidGenerators(format!(
                    "generator {g} is repeated"
                )));
            }
        }
        if !group.generates(&generators) {
            return Err(Error::InvalidGenerators(format!(
                "{} do not generate {group}",
                generators
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        let n = group.size();
        let mut successor = vec![vec![0usize; n]; generators.len()];
        let mut predecessor = vec![vec![0usize; n]; generators.len()];
        for i in 0..n {
            let x = group.vertex_at(i);
            for (l, g) in generators.iter().enumerate() {
                let j = group.index_of(&group.add(&x, g));
                successor[l][i] = j;
                predecessor[l][j] = i;
            }
        }
        Ok(Self {
            group,
            generators,
            successor,
            predecessor,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Vertex] {
        &self.generators
    }

    pub fn gen_a(&self) -> &Vertex {
        &self.generators[0]
    }

    pub fn gen_b(&self) -> &Vertex {
        &self.generators[1]
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> usize {
        self.group.size()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        (0..self.generators.len() as u8).map(Label)
    }

    pub fn generator(&self, label: Label) -> Result<&Vertex> {
        self.generators
            .get(label.index())
            .ok_or_else(|| Error::HostMismatch(format!("label {label} has no generator")))
    }

    pub fn successor(&self, v: &Vertex, label: Label) -> Result<Vertex> {
        self.group.check(v)?;
        Ok(self.group.add(v, self.generator(label)?))
    }

    pub(crate) fn succ_index(&self, v: usize, label: usize) -> usize {
        self.successor[label][v]
    }

    pub(crate) fn pred_index(&self, v: usize, label: usize) -> usize {
        self.predecessor[label][v]
    }

    fn check_walk(&self, w: &LabeledWalk) -> Result<()> {
        if !self.group.contains(&w.start) {
            return Err(Error::HostMismatch(format!(
                "start {} is not in {}",
                w.start, self.group
            )));
        }
        if let Some(l) = w.labels.iter().find(|l| l.index() >= self.generators.len()) {
            return Err(Error::HostMismatch(format!("label {l} has no generator")));
        }
        Ok(())
    }

    /// The implied vertex sequence, `len() + 1` entries.
    pub fn vertices(&self, w: &LabeledWalk) -> Result<Vec<Vertex>> {
        self.check_walk(w)?;
        let mut out = Vec::with_capacity(w.len() + 1);
        let mut x = w.start.clone();
        out.push(x.clone());
        for &l in &w.labels {
            x = self.group.add(&x, &self.generators[l.index()]);
            out.push(x.clone());
        }
        Ok(out)
    }

    pub fn end(&self, w: &LabeledWalk) -> Result<Vertex> {
        Ok(self.vertices(w)?.pop().expect("walk has a start"))
    }

    pub fn verify_hamiltonian(&self, w: &LabeledWalk, mode: WalkMode) -> VerificationReport {
        VerificationReport {
            mode,
            violation: self.first_violation(w, mode),
        }
    }

    fn first_violation(&self, w: &LabeledWalk, mode: WalkMode) -> Option<Violation> {
        if !self.group.contains(&w.start) {
            return Some(Violation::StartOutsideGroup {
                start: w.start.clone(),
            });
        }
        if let Some((step, &label)) = w
            .labels
            .iter()
            .enumerate()
            .find(|(_, l)| l.index() >= self.generators.len())
        {
            return Some(Violation::UnknownLabel { step, label });
        }
        let n = self.order();
        let expected = match mode {
            WalkMode::Path => n - 1,
            WalkMode::Cycle => n,
        };
        if w.len() != expected {
            return Some(Violation::WrongLength {
                expected,
                actual: w.len(),
            });
        }
        let mut seen = vec![false; n];
        let start = self.group.index_of(&w.start);
        let mut x = start;
        seen[x] = true;
        for (step, l) in w.labels.iter().enumerate() {
            x = self.successor[l.index()][x];
            let closing = mode == WalkMode::Cycle && step + 1 == n;
            if closing {
                if x != start {
                    return Some(Violation::NotClosed {
                        end: self.group.vertex_at(x),
                    });
                }
            } else if seen[x] {
                return Some(Violation::RepeatedVertex {
                    step: step + 1,
                    vertex: self.group.vertex_at(x),
                });
            }
            seen[x] = true;
        }
        None
    }

    pub fn arc_set(&self, w: &LabeledWalk) -> Result<ArcSet> {
        let vs = self.vertices(w)?;
        Ok(ArcSet(
            vs.into_iter().zip(w.labels.iter().copied()).collect(),
        ))
    }

    pub fn arc_disjoint(&self, w1: &LabeledWalk, w2: &LabeledWalk) -> Result<bool> {
        Ok(self.first_overlap(w1, w2)?.is_none())
    }

    fn first_overlap(&self, w1: &LabeledWalk, w2: &LabeledWalk) -> Result<Option<Arc>> {
        let first = self.arc_set(w1)?;
        let second = self.arc_set(w2)?;
        Ok(first.0.intersection(&second.0).next().cloned())
    }

    /// Both walks Hamiltonian paths and arc-disjoint.
    pub fn verify_pair(&self, w1: &LabeledWalk, w2: &LabeledWalk) -> Option<PairViolation> {
        if let Some(v) = self.first_violation(w1, WalkMode::Path) {
            return Some(PairViolation::First(v));
        }
        if let Some(v) = self.first_violation(w2, WalkMode::Path) {
            return Some(PairViolation::Second(v));
        }
        self.first_overlap(w1, w2)
            .expect("walks were checked against this digraph")
            .map(|(tail, label)| PairViolation::ArcOverlap { tail, label })
    }

    pub fn translate_walk(&self, w: &LabeledWalk, g: &Vertex) -> Result<LabeledWalk> {
        self.group.check(g)?;
        self.check_walk(w)?;
        Ok(LabeledWalk::new(
            self.group.add(&w.start, g),
            w.labels.clone(),
        ))
    }

    /// Label of the arc `from -> to`, if there is one.
    pub fn label_between(&self, from: &Vertex, to: &Vertex) -> Option<Label> {
        let d = self.group.sub(to, from);
        self.generators
            .iter()
            .position(|g| *g == d)
            .map(|i| Label(i as u8))
    }

    /// Walk through an explicit vertex sequence, if consecutive vertices are joined by arcs.
    pub fn walk_through(&self, vertices: &[Vertex]) -> Result<LabeledWalk> {
        let start = vertices
            .first()
            .cloned()
            .ok_or_else(|| Error::InvalidParameters("empty vertex sequence".into()))?;
        self.group.check(&start)?;
        let labels = vertices
            .windows(2)
            .map(|p| {
                self.label_between(&p[0], &p[1])
                    .ok_or_else(|| Error::InvalidParameters(format!("no arc {} -> {}", p[0], p[1])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledWalk::new(start, labels))
    }
}
