//! Exhaustive depth-first search for Hamiltonian paths, cycles and
//! arc-disjoint path pairs.
//!
//! This is the ground truth the structured constructions are checked
//! against, so it shares nothing with them beyond the digraph tables.
//! Branches are explored in label order (A before B). Pruning is admissible:
//!
//! - the next vertex must be unvisited, and the required end may only be
//!   entered on the last step;
//! - the required number of B-arcs must stay reachable;
//! - every unvisited vertex must keep an allowed in-arc from an unvisited
//!   vertex or from the current head;
//! - at most one unvisited vertex may have no allowed arc to an unvisited
//!   vertex, since such a vertex can only be the final one.
//!
//! Every expansion costs one unit of budget. Running out is reported as
//! [`SearchOutcome::Inconclusive`], never as absence.

use std::cell::Cell;
use std::ops::ControlFlow;

use crate::digraph::{ArcSet, CayleyDigraph, Label, LabeledWalk, WalkMode};
use crate::error::{Error, Result};
use crate::group::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted: no witness exists.
    Absent,
    /// The node budget ran out before the search finished.
    Inconclusive {
        nodes: u64,
    },
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Absent => SearchOutcome::Absent,
            SearchOutcome::Inconclusive { nodes } => SearchOutcome::Inconclusive { nodes },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConstraints {
    pub required_start: Option<Vertex>,
    pub required_end: Option<Vertex>,
    pub forbidden_arcs: ArcSet,
    pub required_b_count: Option<usize>,
    pub node_budget: u64,
}

impl SearchConstraints {
    pub fn with_budget(node_budget: u64) -> Self {
        Self {
            required_start: None,
            required_end: None,
            forbidden_arcs: ArcSet::default(),
            required_b_count: None,
            node_budget,
        }
    }

    pub fn start(mut self, v: Vertex) -> Self {
        self.required_start = Some(v);
        self
    }

    pub fn end(mut self, v: Vertex) -> Self {
        self.required_end = Some(v);
        self
    }

    pub fn b_count(mut self, count: usize) -> Self {
        self.required_b_count = Some(count);
        self
    }

    pub fn forbid(mut self, arcs: ArcSet) -> Self {
        self.forbidden_arcs = arcs;
        self
    }

    pub(crate) fn validate(&self, d: &CayleyDigraph) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::InvalidParameters(
                "node budget must be positive".into(),
            ));
        }
        if let Some(b) = self.required_b_count {
            if b + 1 > d.order() {
                return Err(Error::InvalidParameters(format!(
                    "required b count {b} exceeds |G| - 1 = {}",
                    d.order() - 1
                )));
            }
        }
        for v in self.required_start.iter().chain(&self.required_end) {
            d.group().check(v)?;
        }
        for (tail, label) in self.forbidden_arcs.iter() {
            d.group().check(tail)?;
            d.generator(*label)?;
        }
        Ok(())
    }
}

/// Node counter shared by nested searches.
pub(crate) struct Budget {
    used: Cell<u64>,
    limit: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Self {
            used: Cell::new(0),
            limit,
        }
    }

    fn spend(&self) -> bool {
        self.used.set(self.used.get() + 1);
        self.used.get() <= self.limit
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.get()
    }
}

enum Flow {
    Done,
    Stopped,
    Exhausted,
}

/// Search state over vertex indices.
struct Engine<'a> {
    d: &'a CayleyDigraph,
    n: usize,
    g: usize,
    allowed: Vec<bool>,
    visited: Vec<bool>,
    avail_in: Vec<u32>,
    avail_out: Vec<u32>,
    dead: usize,
    labels: Vec<Label>,
    b_used: usize,
    end: Option<usize>,
    b_target: Option<usize>,
    close_to: Option<usize>,
}

impl<'a> Engine<'a> {
    fn new(d: &'a CayleyDigraph, forbidden: &ArcSet) -> Self {
        let n = d.order();
        let g = d.num_generators();
        let mut allowed = vec![true; n * g];
        for (tail, label) in forbidden.iter() {
            allowed[d.group().index_of(tail) * g + label.index()] = false;
        }
        Self {
            d,
            n,
            g,
            allowed,
            visited: vec![false; n],
            avail_in: vec![0; n],
            avail_out: vec![0; n],
            dead: 0,
            labels: Vec::with_capacity(n),
            b_used: 0,
            end: None,
            b_target: None,
            close_to: None,
        }
    }

    fn arc_ok(&self, v: usize, l: usize) -> bool {
        self.allowed[v * self.g + l]
    }

    fn reset(&mut self) {
        self.visited.iter_mut().for_each(|x| *x = false);
        self.avail_in.iter_mut().for_each(|x| *x = 0);
        self.avail_out.iter_mut().for_each(|x| *x = 0);
        for v in 0..self.n {
            for l in 0..self.g {
                if self.arc_ok(v, l) {
                    self.avail_out[v] += 1;
                    self.avail_in[self.d.succ_index(v, l)] += 1;
                }
            }
        }
        self.dead = self.avail_out.iter().filter(|&&c| c == 0).count();
        self.labels.clear();
        self.b_used = 0;
    }

    fn mark_visited(&mut self, v: usize) {
        if self.avail_out[v] == 0 {
            self.dead -= 1;
        }
        self.visited[v] = true;
        for l in 0..self.g {
            let u = self.d.pred_index(v, l);
            if self.arc_ok(u, l) {
                self.avail_out[u] -= 1;
                if !self.visited[u] && self.avail_out[u] == 0 {
                    self.dead += 1;
                }
            }
        }
    }

    fn unmark_visited(&mut self, v: usize) {
        for l in (0..self.g).rev() {
            let u = self.d.pred_index(v, l);
            if self.arc_ok(u, l) {
                if !self.visited[u] && self.avail_out[u] == 0 {
                    self.dead -= 1;
                }
                self.avail_out[u] += 1;
            }
        }
        self.visited[v] = false;
        if self.avail_out[v] == 0 {
            self.dead += 1;
        }
    }

    fn retire_head(&mut self, v: usize) {
        for l in 0..self.g {
            if self.arc_ok(v, l) {
                self.avail_in[self.d.succ_index(v, l)] -= 1;
            }
        }
    }

    fn restore_head(&mut self, v: usize) {
        for l in 0..self.g {
            if self.arc_ok(v, l) {
                self.avail_in[self.d.succ_index(v, l)] += 1;
            }
        }
    }

    /// Label of an allowed arc `head -> close_to`, when closing a cycle.
    fn closing_label(&self, head: usize, target: usize) -> Option<Label> {
        (0..self.g)
            .find(|&l| self.arc_ok(head, l) && self.d.succ_index(head, l) == target)
            .map(|l| Label(l as u8))
    }

    fn run(
        &mut self,
        start: usize,
        budget: &Budget,
        on_found: &mut dyn FnMut(usize, &[Label]) -> ControlFlow<()>,
    ) -> Flow {
        self.reset();
        if self.end == Some(start) && self.n > 1 {
            return Flow::Done;
        }
        self.mark_visited(start);
        let flow = self.extend(start, 1, budget, on_found);
        self.unmark_visited(start);
        flow
    }

    fn extend(
        &mut self,
        head: usize,
        depth: usize,
        budget: &Budget,
        on_found: &mut dyn FnMut(usize, &[Label]) -> ControlFlow<()>,
    ) -> Flow {
        if depth == self.n {
            if self.end.is_some_and(|e| e != head) {
                return Flow::Done;
            }
            if self.b_target.is_some_and(|b| b != self.b_used) {
                return Flow::Done;
            }
            if let Some(start) = self.close_to {
                let Some(l) = self.closing_label(head, start) else {
                    return Flow::Done;
                };
                self.labels.push(l);
                let r = on_found(head, &self.labels);
                self.labels.pop();
                return match r {
                    ControlFlow::Break(()) => Flow::Stopped,
                    ControlFlow::Continue(()) => Flow::Done,
                };
            }
            return match on_found(head, &self.labels) {
                ControlFlow::Break(()) => Flow::Stopped,
                ControlFlow::Continue(()) => Flow::Done,
            };
        }
        let remaining_after = self.n - depth - 1;
        for l in 0..self.g {
            if !self.arc_ok(head, l) {
                continue;
            }
            let next = self.d.succ_index(head, l);
            if self.visited[next] {
                continue;
            }
            if remaining_after > 0 && self.end == Some(next) {
                continue;
            }
            let is_b = usize::from(l == Label::B.index());
            if let Some(target) = self.b_target {
                let used = self.b_used + is_b;
                if used > target || target - used > remaining_after {
                    continue;
                }
            }
            if !budget.spend() {
                return Flow::Exhausted;
            }

            self.retire_head(head);
            self.mark_visited(next);
            self.labels.push(Label(l as u8));
            self.b_used += is_b;

            let flow = if self.feasible(head, next, remaining_after) {
                self.extend(next, depth + 1, budget, on_found)
            } else {
                Flow::Done
            };

            self.b_used -= is_b;
            self.labels.pop();
            self.unmark_visited(next);
            self.restore_head(head);

            match flow {
                Flow::Done => {}
                other => return other,
            }
        }
        Flow::Done
    }

    fn feasible(&self, old_head: usize, new_head: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        for l in 0..self.g {
            if !self.arc_ok(old_head, l) {
                continue;
            }
            let w = self.d.succ_index(old_head, l);
            if w != new_head && !self.visited[w] && self.avail_in[w] == 0 {
                return false;
            }
        }
        if self.dead > 1 {
            return false;
        }
        if let Some(e) = self.end {
            if self.dead == 1 && self.avail_out[e] != 0 {
                return false;
            }
        }
        if let Some(s) = self.close_to {
            if self.avail_in[s] == 0 {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` on every Hamiltonian path satisfying `c`, in DFS order,
/// until it breaks. Returns `Found(())` when the visitor broke.
pub fn for_each_hamiltonian_path(
    d: &CayleyDigraph,
    c: &SearchConstraints,
    mut visit: impl FnMut(LabeledWalk) -> ControlFlow<()>,
) -> Result<SearchOutcome<()>> {
    c.validate(d)?;
    let budget = Budget::new(c.node_budget);
    Ok(paths_with_budget(d, c, &budget, &mut visit))
}

pub(crate) fn paths_with_budget(
    d: &CayleyDigraph,
    c: &SearchConstraints,
    budget: &Budget,
    visit: &mut dyn FnMut(LabeledWalk) -> ControlFlow<()>,
) -> SearchOutcome<()> {
    let group = d.group();
    let mut engine = Engine::new(d, &c.forbidden_arcs);
    engine.end = c.required_end.as_ref().map(|v| group.index_of(v));
    engine.b_target = c.required_b_count;
    let starts: Vec<usize> = match &c.required_start {
        Some(s) => vec![group.index_of(s)],
        None => (0..d.order()).collect(),
    };
    for s in starts {
        let start = group.vertex_at(s);
        let mut on_found =
            |_end: usize, labels: &[Label]| visit(LabeledWalk::new(start.clone(), labels.to_vec()));
        match engine.run(s, budget, &mut on_found) {
            Flow::Done => {}
            Flow::Stopped => return SearchOutcome::Found(()),
            Flow::Exhausted => {
                return SearchOutcome::Inconclusive {
                    nodes: budget.used(),
                }
            }
        }
    }
    SearchOutcome::Absent
}

pub fn find_hamiltonian_path(
    d: &CayleyDigraph,
    c: &SearchConstraints,
) -> Result<SearchOutcome<LabeledWalk>> {
    let mut found = None;
    let outcome = for_each_hamiltonian_path(d, c, |w| {
        found = Some(w);
        ControlFlow::Break(())
    })?;
    Ok(outcome.map(|()| found.expect("visitor stored the path")))
}

/// Hamiltonian directed cycle through vertex 0 (every vertex lies on any
/// Hamiltonian cycle, and translation is an automorphism).
pub fn find_hamiltonian_cycle(
    d: &CayleyDigraph,
    budget: u64,
) -> Result<SearchOutcome<LabeledWalk>> {
    if budget == 0 {
        return Err(Error::InvalidParameters(
            "node budget must be positive".into(),
        ));
    }
    let budget = Budget::new(budget);
    let mut engine = Engine::new(d, &ArcSet::default());
    engine.close_to = Some(0);
    let start = d.group().vertex_at(0);
    let mut found = None;
    let mut on_found = |_end: usize, labels: &[Label]| {
        found = Some(LabeledWalk::new(start.clone(), labels.to_vec()));
        ControlFlow::Break(())
    };
    if d.order() == 1 {
        // A single vertex carries no directed cycle without a loop.
        return Ok(SearchOutcome::Absent);
    }
    Ok(match engine.run(0, &budget, &mut on_found) {
        Flow::Stopped => {
            let w = found.expect("cycle recorded");
            debug_assert!(d.verify_hamiltonian(&w, WalkMode::Cycle).passed());
            SearchOutcome::Found(w)
        }
        Flow::Done => SearchOutcome::Absent,
        Flow::Exhausted => SearchOutcome::Inconclusive {
            nodes: budget.used(),
        },
    })
}

/// Enumerates arc-disjoint Hamiltonian path pairs `(P, Q)` with `P` starting
/// at vertex 0, backtracking over both paths, until the visitor breaks.
/// Pinning the start of `P` loses nothing: translating both paths by the
/// same element preserves Hamiltonicity and disjointness.
pub fn for_each_disjoint_pair(
    d: &CayleyDigraph,
    budget: u64,
    mut visit: impl FnMut(&LabeledWalk, &LabeledWalk) -> ControlFlow<()>,
) -> Result<SearchOutcome<()>> {
    if budget == 0 {
        return Err(Error::InvalidParameters(
            "node budget must be positive".into(),
        ));
    }
    let budget = Budget::new(budget);
    let outer = SearchConstraints::with_budget(budget.limit).start(d.group().zero());
    let mut inner_exhausted = false;
    let mut visit_first = |p: LabeledWalk| {
        let arcs = d
            .arc_set(&p)
            .expect("search produced a walk of this digraph");
        let inner = SearchConstraints::with_budget(budget.limit).forbid(arcs);
        let mut visit_second = |q: LabeledWalk| visit(&p, &q);
        match paths_with_budget(d, &inner, &budget, &mut visit_second) {
            SearchOutcome::Found(()) => ControlFlow::Break(()),
            SearchOutcome::Absent => ControlFlow::Continue(()),
            SearchOutcome::Inconclusive { .. } => {
                inner_exhausted = true;
                ControlFlow::Break(())
            }
        }
    };
    let outcome = paths_with_budget(d, &outer, &budget, &mut visit_first);
    Ok(match outcome {
        SearchOutcome::Found(()) if inner_exhausted => SearchOutcome::Inconclusive {
            nodes: budget.used(),
        },
        other => other,
    })
}

pub fn find_arc_disjoint_pair(
    d: &CayleyDigraph,
    budget: u64,
) -> Result<SearchOutcome<(LabeledWalk, LabeledWalk)>> {
    let mut found = None;
    let outcome = for_each_disjoint_pair(d, budget, |p, q| {
        found = Some((p.clone(), q.clone()));
        ControlFlow::Break(())
    })?;
    Ok(outcome.map(|()| found.expect("visitor stored the pair")))
}

/// Hamiltonian cut set of `Cay(Z_k; a, a+1)` by walking each candidate
/// path directly: below the cut take `+(a+1)`, above it take `+a`, and
/// accept when all `k` vertices are met and the walk stops at the cut.
pub fn oracle_cut_set(k: u64, a: u64) -> Result<Vec<u64>> {
    let a = crate::arith::first_family_params(k, a)?;
    let mut cuts = Vec::new();
    for cut in 0..k {
        let mut seen = vec![false; k as usize];
        let mut x = a;
        let mut count = 0u64;
        loop {
            if seen[x as usize] {
                break;
            }
            seen[x as usize] = true;
            count += 1;
            if x == cut {
                break;
            }
            x = if x < cut {
                (x + a + 1) % k
            } else {
                (x + a) % k
            };
        }
        if x == cut && count == k {
            cuts.push(cut);
        }
    }
    Ok(cuts)
}
