//! Products of directed cycles and lifting through a cycle factor.
//!
//! An ordered pair `(P, Q)` of arc-disjoint Hamiltonian paths in `D` is
//! strongly switchable when `P` misses `Q + gamma` and the terminals avoid
//! `tau_Q` and `tau_Q + gamma`. Such a pair lifts to `D □ C_l` by stacking
//! alternating translates of `P` and `Q` in the layers.

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::digraph::{ArcSet, CayleyDigraph, Label, LabeledWalk, WalkMode};
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, Vertex};
use crate::oracle::{self, Budget, SearchConstraints, SearchOutcome};

/// `C_{o_1} □ ... □ C_{o_r}` with unit-vector generators labelled `A, B, C, ...`.
pub fn product_digraph(orders: &[u64]) -> Result<CayleyDigraph> {
    if orders.is_empty() {
        return Err(Error::InvalidGroup(
            "at least one cycle factor required".into(),
        ));
    }
    if let Some(o) = orders.iter().find(|&&o| o < 2) {
        return Err(Error::InvalidGroup(format!(
            "cycle length {o} must be at least 2"
        )));
    }
    let group = FiniteAbelianGroup::new(orders.to_vec())?;
    let gens = (0..orders.len()).map(|i| unit(orders.len(), i)).collect();
    CayleyDigraph::with_generators(group, gens)
}

fn unit(rank: usize, i: usize) -> Vertex {
    let mut v = vec![0; rank];
    v[i] = 1;
    Vertex(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchabilityData {
    pub iota_p: Vertex,
    pub tau_p: Vertex,
    pub iota_q: Vertex,
    pub tau_q: Vertex,
    /// `tau_P - iota_Q`
    pub alpha: Vertex,
    /// `tau_Q - iota_P`
    pub beta: Vertex,
    /// `alpha - beta`
    pub gamma: Vertex,
}

impl SwitchabilityData {
    pub fn new(d: &CayleyDigraph, p: &LabeledWalk, q: &LabeledWalk) -> Result<Self> {
        let g = d.group();
        let (iota_p, tau_p) = (p.start.clone(), d.end(p)?);
        let (iota_q, tau_q) = (q.start.clone(), d.end(q)?);
        let alpha = g.sub(&tau_p, &iota_q);
        let beta = g.sub(&tau_q, &iota_p);
        let gamma = g.sub(&alpha, &beta);
        Ok(Self {
            iota_p,
            tau_p,
            iota_q,
            tau_q,
            alpha,
            beta,
            gamma,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwitchClause {
    /// `P` shares an arc with `Q + gamma`.
    ShiftedOverlap { tail: Vertex, label: Label },
    /// `tau_P = tau_Q`.
    TerminalEquality,
    /// `tau_P = tau_Q + gamma`.
    ShiftedTerminalEquality,
}

impl fmt::Display for SwitchClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwitchClause::ShiftedOverlap { tail, label } => {
                write!(
                    f,
                    "shifted overlap: arc {tail} --{}-> lies in P and Q + gamma",
                    label.as_char()
                )
            }
            SwitchClause::TerminalEquality => write!(f, "terminal equality: tau_P = tau_Q"),
            SwitchClause::ShiftedTerminalEquality => {
                write!(f, "shifted terminal equality: tau_P = tau_Q + gamma")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchabilityReport {
    pub data: SwitchabilityData,
    pub violations: Vec<SwitchClause>,
}

impl SwitchabilityReport {
    pub fn switchable(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tests the ordered pair `(P, Q)`. Fails with an input error unless the
/// two walks are verified arc-disjoint Hamiltonian paths.
pub fn is_strongly_switchable(
    d: &CayleyDigraph,
    p: &LabeledWalk,
    q: &LabeledWalk,
) -> Result<SwitchabilityReport> {
    if let Some(v) = d.verify_pair(p, q) {
        return Err(Error::InvalidParameters(format!(
            "not an arc-disjoint Hamiltonian pair: {v}"
        )));
    }
    let data = SwitchabilityData::new(d, p, q)?;
    let g = d.group();
    let p_arcs = d.arc_set(p)?;
    let shifted = d.arc_set(&d.translate_walk(q, &data.gamma)?)?;
    let mut violations: Vec<SwitchClause> = p_arcs
        .0
        .intersection(&shifted.0)
        .map(|(tail, label)| SwitchClause::ShiftedOverlap {
            tail: tail.clone(),
            label: *label,
        })
        .collect();
    if data.tau_p == data.tau_q {
        violations.push(SwitchClause::TerminalEquality);
    }
    if data.tau_p == g.add(&data.tau_q, &data.gamma) {
        violations.push(SwitchClause::ShiftedTerminalEquality);
    }
    Ok(SwitchabilityReport { data, violations })
}

/// First strongly switchable ordered pair in DFS order.
///
/// `P` runs over Hamiltonian paths from 0 (switchability is translation
/// invariant). For each `P` and each choice of `(iota_Q, tau_Q)`, `gamma`
/// is determined, and `Q` is searched with the arcs of `P` and `P - gamma`
/// forbidden, which is exactly the disjointness part of the definition.
pub fn find_strongly_switchable_pair(
    d: &CayleyDigraph,
    budget: u64,
) -> Result<SearchOutcome<(LabeledWalk, LabeledWalk)>> {
    if budget == 0 {
        return Err(Error::InvalidParameters(
            "node budget must be positive".into(),
        ));
    }
    let g = d.group();
    let budget = Budget::new(budget);
    let outer = SearchConstraints::with_budget(1).start(g.zero());
    let mut found = None;
    let mut inner_exhausted = false;
    let mut visit_first = |p: LabeledWalk| {
        let iota_p = p.start.clone();
        let tau_p = d.end(&p).expect("walk of this digraph");
        let p_arcs = d.arc_set(&p).expect("walk of this digraph");
        for iota_q in g.elements() {
            for tau_q in g.elements() {
                if tau_q == tau_p || tau_q == iota_q {
                    continue;
                }
                // gamma = (tau_P - iota_Q) - (tau_Q - iota_P)
                let gamma = g.sub(&g.add(&tau_p, &iota_p), &g.add(&iota_q, &tau_q));
                if tau_p == g.add(&tau_q, &gamma) {
                    continue;
                }
                let mut forbidden = p_arcs.0.clone();
                forbidden.extend(p_arcs.iter().map(|(t, l)| (g.sub(t, &gamma), *l)));
                let inner = SearchConstraints::with_budget(1)
                    .start(iota_q.clone())
                    .end(tau_q.clone())
                    .forbid(ArcSet(forbidden));
                let mut visit_second = |q: LabeledWalk| {
                    found = Some((p.clone(), q));
                    ControlFlow::Break(())
                };
                match oracle::paths_with_budget(d, &inner, &budget, &mut visit_second) {
                    SearchOutcome::Found(()) => return ControlFlow::Break(()),
                    SearchOutcome::Absent => {}
                    SearchOutcome::Inconclusive { .. } => {
                        inner_exhausted = true;
                        return ControlFlow::Break(());
                    }
                }
            }
        }
        ControlFlow::Continue(())
    };
    let outcome = oracle::paths_with_budget(d, &outer, &budget, &mut visit_first);
    Ok(match outcome {
        SearchOutcome::Found(()) if inner_exhausted => SearchOutcome::Inconclusive {
            nodes: budget.used(),
        },
        SearchOutcome::Found(()) => {
            let (p, q) = found.expect("visitor stored the pair");
            let report = is_strongly_switchable(d, &p, &q)?;
            if !report.switchable() {
                return Err(Error::Consistency(format!(
                    "search returned a pair that is not strongly switchable: {}",
                    report.violations[0]
                )));
            }
            SearchOutcome::Found((p, q))
        }
        other => other.map(|()| unreachable!()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftPlan {
    pub p: Vec<Vertex>,
    pub q: Vec<Vertex>,
}

impl LiftPlan {
    /// `p_0 = q_0 = 0`, `q_{i+1} = p_i + alpha`, `p_{i+1} = q_i + beta`.
    pub fn new(group: &FiniteAbelianGroup, data: &SwitchabilityData, layers: usize) -> Self {
        let mut p = vec![group.zero()];
        let mut q = vec![group.zero()];
        for i in 0..layers.saturating_sub(1) {
            q.push(group.add(&p[i], &data.alpha));
            p.push(group.add(&q[i], &data.beta));
        }
        Self { p, q }
    }
}

/// `D □ C_l`: the base generators padded with 0, then the new unit vector.
pub fn extend_by_cycle(d: &CayleyDigraph, l: u64) -> Result<CayleyDigraph> {
    if l < 2 {
        return Err(Error::InvalidGroup(format!(
            "cycle length {l} must be at least 2"
        )));
    }
    let mut orders = d.group().orders().to_vec();
    orders.push(l);
    let group = FiniteAbelianGroup::new(orders)?;
    let mut gens: Vec<Vertex> = d
        .generators()
        .iter()
        .map(|v| {
            let mut c = v.0.clone();
            c.push(0);
            Vertex(c)
        })
        .collect();
    gens.push(unit(group.rank(), group.rank() - 1));
    CayleyDigraph::with_generators(group, gens)
}

/// Lifts a strongly switchable pair to two arc-disjoint Hamiltonian paths in
/// `D □ C_l`. Path one runs `P + p_0, Q + q_1, P + p_2, ...` and path two
/// runs `Q + q_0, P + p_1, Q + q_2, ...`, one layer each, joined by
/// vertical arcs.
pub fn lift_through_cycle(
    d: &CayleyDigraph,
    p: &LabeledWalk,
    q: &LabeledWalk,
    l: u64,
) -> Result<(CayleyDigraph, LabeledWalk, LabeledWalk)> {
    let report = is_strongly_switchable(d, p, q)?;
    if !report.switchable() {
        return Err(Error::InvalidParameters(format!(
            "pair is not strongly switchable: {}",
            report.violations[0]
        )));
    }
    let lifted = extend_by_cycle(d, l)?;
    let plan = LiftPlan::new(d.group(), &report.data, l as usize);
    let vertical = Label(d.num_generators() as u8);
    let layer_start = |base: &Vertex, shift: &Vertex| {
        let mut c = d.group().add(base, shift).0;
        c.push(0);
        Vertex(c)
    };
    let build = |first: &LabeledWalk, second: &LabeledWalk, shift0: &Vertex| {
        let mut labels = Vec::with_capacity(lifted.order() - 1);
        for i in 0..l as usize {
            if i > 0 {
                labels.push(vertical);
            }
            let w = if i % 2 == 0 { first } else { second };
            labels.extend_from_slice(&w.labels);
        }
        LabeledWalk::new(layer_start(&first.start, shift0), labels)
    };
    let one = build(p, q, &plan.p[0]);
    let two = build(q, p, &plan.q[0]);
    if let Some(v) = lifted.verify_pair(&one, &two) {
        return Err(Error::Consistency(format!(
            "lifted pair fails verification: {v}"
        )));
    }
    Ok((lifted, one, two))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductStrategy {
    /// Switchable pair in `C_m □ C_n`, lifted through `C_l`.
    SwitchableLift,
    /// Switchable pair in another two-factor base, lifted through the third.
    RegroupedLift,
    /// Pair in `C_{mn} □ C_l` pulled back along a Hamiltonian cycle of `C_m □ C_n`.
    CycleRelabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeFactorBuild {
    pub digraph: CayleyDigraph,
    pub paths: (LabeledWalk, LabeledWalk),
    pub strategy: ProductStrategy,
    /// One line per strategy attempted before the successful one.
    pub diagnostics: Vec<String>,
}

/// Moves a walk of the product with factor order `perm` (factor `i` of the
/// source is factor `perm[i]` of the target) into the target product.
fn permute_factors(w: &LabeledWalk, perm: &[usize]) -> LabeledWalk {
    let mut start = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        start[j] = w.start.0[i];
    }
    let labels = w
        .labels
        .iter()
        .map(|l| Label(perm[l.index()] as u8))
        .collect();
    LabeledWalk::new(Vertex(start), labels)
}

fn describe<T>(o: &SearchOutcome<T>) -> String {
    match o {
        SearchOutcome::Found(_) => "found".into(),
        SearchOutcome::Absent => "none exists".into(),
        SearchOutcome::Inconclusive { nodes } => format!("inconclusive after {nodes} nodes"),
    }
}

/// Lifts a switchable pair of the base made of factors `perm[0], perm[1]`
/// through factor `perm[2]`, then restores the factor order `(m, n, l)`.
pub fn build_by_lift(
    orders: [u64; 3],
    perm: [usize; 3],
    budget: u64,
) -> Result<SearchOutcome<(LabeledWalk, LabeledWalk)>> {
    let target = product_digraph(&orders)?;
    let base = product_digraph(&[orders[perm[0]], orders[perm[1]]])?;
    let (p, q) = match find_strongly_switchable_pair(&base, budget)? {
        SearchOutcome::Found(pair) => pair,
        SearchOutcome::Absent => return Ok(SearchOutcome::Absent),
        SearchOutcome::Inconclusive { nodes } => return Ok(SearchOutcome::Inconclusive { nodes }),
    };
    let (_, one, two) = lift_through_cycle(&base, &p, &q, orders[perm[2]])?;
    let paths = (permute_factors(&one, &perm), permute_factors(&two, &perm));
    if let Some(v) = target.verify_pair(&paths.0, &paths.1) {
        return Err(Error::Consistency(format!(
            "lifted pair fails verification after regrouping: {v}"
        )));
    }
    Ok(SearchOutcome::Found(paths))
}

/// Finds a Hamiltonian cycle `H` of `C_m □ C_n`, a pair in `C_{mn} □ C_l`,
/// and maps `(j, i)` to `(H_j, i)`. The image uses only arcs of `H` and
/// vertical arcs, so it lives in the spanning subdigraph `C_{mn} □ C_l`.
pub fn build_by_cycle_relabel(
    m: u64,
    n: u64,
    l: u64,
    budget: u64,
) -> Result<(SearchOutcome<()>, Option<(LabeledWalk, LabeledWalk)>)> {
    let target = product_digraph(&[m, n, l])?;
    let base = product_digraph(&[m, n])?;
    let cycle = match oracle::find_hamiltonian_cycle(&base, budget)? {
        SearchOutcome::Found(c) => c,
        other => return Ok((other.map(|_| ()), None)),
    };
    let long = product_digraph(&[m * n, l])?;
    let (p, q) = match oracle::find_arc_disjoint_pair(&long, budget)? {
        SearchOutcome::Found(pair) => pair,
        other => return Ok((other.map(|_| ()), None)),
    };
    let cycle_vertices = base.vertices(&cycle)?;
    let relabel = |w: &LabeledWalk| -> LabeledWalk {
        let (mut j, i) = (w.start.0[0] as usize, w.start.0[1]);
        let start = Vertex(vec![cycle_vertices[j].0[0], cycle_vertices[j].0[1], i]);
        let labels = w
            .labels
            .iter()
            .map(|&lab| {
                if lab == Label::A {
                    let out = cycle.labels[j];
                    j = (j + 1) % cycle.labels.len();
                    out
                } else {
                    Label::C
                }
            })
            .collect();
        LabeledWalk::new(start, labels)
    };
    let paths = (relabel(&p), relabel(&q));
    for w in [&paths.0, &paths.1] {
        if let Some(v) = target.verify_hamiltonian(w, WalkMode::Path).violation {
            return Err(Error::Consistency(format!(
                "relabelled path fails verification: {v}"
            )));
        }
    }
    if let Some(v) = target.verify_pair(&paths.0, &paths.1) {
        return Err(Error::Consistency(format!(
            "relabelled pair fails verification: {v}"
        )));
    }
    Ok((SearchOutcome::Found(()), Some(paths)))
}

/// Two verified arc-disjoint Hamiltonian paths in `C_m □ C_n □ C_l`
/// (labels `A, B, C` for the three unit vectors).
///
/// Strategies in order, each with its own `budget`: a switchable pair in
/// `C_m □ C_n` lifted through `C_l`; the same with `C_m □ C_l` or
/// `C_n □ C_l` as the base; a pair in `C_{mn} □ C_l` pulled back along a
/// Hamiltonian cycle of `C_m □ C_n`.
pub fn build_three_factor(m: u64, n: u64, l: u64, budget: u64) -> Result<ThreeFactorBuild> {
    let orders = [m, n, l];
    let target = product_digraph(&orders)?;
    let mut diagnostics = Vec::new();
    let groupings: [([usize; 3], ProductStrategy); 3] = [
        ([0, 1, 2], ProductStrategy::SwitchableLift),
        ([0, 2, 1], ProductStrategy::RegroupedLift),
        ([1, 2, 0], ProductStrategy::RegroupedLift),
    ];
    for (perm, strategy) in groupings {
        match build_by_lift(orders, perm, budget)? {
            SearchOutcome::Found(paths) => {
                return Ok(ThreeFactorBuild {
                    digraph: target,
                    paths,
                    strategy,
                    diagnostics,
                })
            }
            other => diagnostics.push(format!(
                "switchable pair in C_{} x C_{}: {}",
                orders[perm[0]],
                orders[perm[1]],
                describe(&other)
            )),
        }
    }
    match build_by_cycle_relabel(m, n, l, budget)? {
        (_, Some(paths)) => Ok(ThreeFactorBuild {
            digraph: target,
            paths,
            strategy: ProductStrategy::CycleRelabel,
            diagnostics,
        }),
        (outcome, None) => {
            diagnostics.push(format!(
                "cycle relabelling through C_{} x C_{l}: {}",
                m * n,
                describe(&outcome)
            ));
            let text = diagnostics.join("; ");
            if text.contains("inconclusive") {
                Err(Error::Inconclusive(text))
            } else {
                Err(Error::BuildFailed(text))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::labels_from_str;

    const BUDGET: u64 = 10_000_000;

    #[test]
    fn product_examples() {
        let d = product_digraph(&[2, 3]).unwrap();
        assert_eq!(d.order(), 6);
        assert_eq!(d.generators(), &[Vertex(vec![1, 0]), Vertex(vec![0, 1])]);
        let d = product_digraph(&[2, 2]).unwrap();
        assert_eq!(d.order() * d.num_generators(), 8);
        assert_eq!(extend_by_cycle(&d, 3).unwrap().order(), 12);
        assert!(product_digraph(&[1, 3]).is_err());
    }

    #[test]
    fn terminal_equality_clause() {
        // first enumerated pair whose two paths end at the same vertex
        let d = product_digraph(&[2, 2]).unwrap();
        let mut checked = false;
        oracle::for_each_disjoint_pair(&d, BUDGET, |p, q| {
            if d.end(p).unwrap() == d.end(q).unwrap() {
                let r = is_strongly_switchable(&d, p, q).unwrap();
                assert!(r.violations.contains(&SwitchClause::TerminalEquality));
                checked = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(checked);
    }

    #[test]
    fn rejects_unverified_input() {
        let d = product_digraph(&[2, 3]).unwrap();
        let w = LabeledWalk::new(Vertex(vec![0, 0]), labels_from_str("AAAAA").unwrap());
        assert!(is_strongly_switchable(&d, &w, &w).is_err());
    }

    #[test]
    fn switchable_pair_in_two_by_three() {
        let d = product_digraph(&[2, 3]).unwrap();
        let (p, q) = find_strongly_switchable_pair(&d, BUDGET)
            .unwrap()
            .found()
            .unwrap();
        assert!(is_strongly_switchable(&d, &p, &q).unwrap().switchable());
        let (lifted, one, two) = lift_through_cycle(&d, &p, &q, 3).unwrap();
        assert_eq!(lifted.order(), 18);
        assert!(lifted.verify_pair(&one, &two).is_none());
    }

    /// Every ordered pair found by plain enumeration, filtered by the
    /// definition, agrees with the pruned search on whether one exists.
    #[test]
    fn pruned_search_matches_filter() {
        for orders in [[2u64, 2], [2, 3], [3, 2], [2, 4], [3, 3]] {
            let d = product_digraph(&orders).unwrap();
            let mut by_filter = false;
            oracle::for_each_disjoint_pair(&d, BUDGET, |p, q| {
                if is_strongly_switchable(&d, p, q).unwrap().switchable() {
                    by_filter = true;
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            })
            .unwrap();
            let pruned = find_strongly_switchable_pair(&d, BUDGET).unwrap();
            assert!(!matches!(pruned, SearchOutcome::Inconclusive { .. }));
            assert_eq!(pruned.is_found(), by_filter, "{orders:?}");
        }
    }

    #[test]
    fn lift_plan_parity() {
        let d = product_digraph(&[2, 3]).unwrap();
        let (p, q) = find_strongly_switchable_pair(&d, BUDGET)
            .unwrap()
            .found()
            .unwrap();
        let data = SwitchabilityData::new(&d, &p, &q).unwrap();
        let g = d.group();
        let plan = LiftPlan::new(g, &data, 6);
        assert_eq!(plan.q[1], data.alpha);
        assert_eq!(plan.p[1], data.beta);
        for i in 0..6 {
            let diff = g.sub(&plan.q[i], &plan.p[i]);
            assert_eq!(
                diff,
                if i % 2 == 0 {
                    g.zero()
                } else {
                    data.gamma.clone()
                }
            );
        }
    }

    #[test]
    fn three_factor_examples() {
        let b = build_three_factor(2, 2, 2, BUDGET).unwrap();
        assert_eq!(b.digraph.order(), 8);
        let b = build_three_factor(2, 3, 2, BUDGET).unwrap();
        assert_eq!(b.strategy, ProductStrategy::SwitchableLift);
        let b = build_three_factor(2, 3, 4, BUDGET).unwrap();
        assert!(b.digraph.verify_pair(&b.paths.0, &b.paths.1).is_none());
        assert!(b.diagnostics.is_empty());
    }

    #[test]
    fn regrouped_lifts_verify() {
        for perm in [[0, 2, 1], [1, 2, 0], [2, 1, 0]] {
            let paths = build_by_lift([2, 3, 4], perm, BUDGET)
                .unwrap()
                .found()
                .unwrap();
            let d = product_digraph(&[2, 3, 4]).unwrap();
            assert!(d.verify_pair(&paths.0, &paths.1).is_none());
        }
    }

    #[test]
    fn cycle_relabel_strategy() {
        let (outcome, paths) = build_by_cycle_relabel(2, 2, 3, BUDGET).unwrap();
        assert!(outcome.is_found());
        let (p, q) = paths.unwrap();
        let d = product_digraph(&[2, 2, 3]).unwrap();
        assert!(d.verify_pair(&p, &q).is_none());
        // C_2 x C_3 has no Hamiltonian cycle to relabel along.
        let (outcome, paths) = build_by_cycle_relabel(2, 3, 2, BUDGET).unwrap();
        assert_eq!(outcome, SearchOutcome::Absent);
        assert!(paths.is_none());
    }
}
