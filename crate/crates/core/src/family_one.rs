//! `Cay(Z_k; a, a+1)`: cut permutations, the Hamiltonian cut set, its
//! reflection distance, and realization of two arc-disjoint Hamiltonian paths.
//!
//! For a cut value `d`, the candidate path takes `+(a+1)` (label B) below
//! `d` and `+a` (label A) above it. Closing it with `d -> a` gives the cut
//! permutation, which is a single `k`-cycle exactly when the candidate is a
//! Hamiltonian path from `a` to `d`. Such a path uses `d` B-arcs.

use serde::Serialize;

use crate::arith::first_family_params;
use crate::digraph::{CayleyDigraph, Label, LabeledWalk};
use crate::error::{Error, Result};
use crate::group::Vertex;
use crate::oracle::{self, SearchOutcome};

/// The cut permutation for `(k, a, d)` as an image table on `0..k`.
pub fn cut_permutation(k: u64, a: u64, d: u64) -> Result<Vec<u64>> {
    let a = first_family_params(k, a)?;
    if d >= k {
        return Err(Error::InvalidParameters(format!(
            "cut value {d} must be below k = {k}"
        )));
    }
    Ok((0..k)
        .map(|i| match i.cmp(&d) {
            std::cmp::Ordering::Less => (i + a + 1) % k,
            std::cmp::Ordering::Equal => a,
            std::cmp::Ordering::Greater => (i + a) % k,
        })
        .collect())
}

/// A permutation is a `k`-cycle iff the orbit of 0 has length `k`.
fn is_full_cycle(perm: &[u64]) -> bool {
    let mut x = perm[0];
    let mut len = 1;
    while x != 0 {
        x = perm[x as usize];
        len += 1;
        if len > perm.len() {
            return false;
        }
    }
    len == perm.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutProfile {
    pub k: u64,
    pub a: u64,
    /// `k - 1`
    pub n: u64,
    /// Hamiltonian cut values in increasing order.
    pub cuts: Vec<u64>,
    /// `dist(Z, N - Z)`.
    pub delta: u64,
    /// First pair `u <= v` (lexicographic) with `|u + v - N| = delta`.
    pub witness: (u64, u64),
    pub count_pair: Option<(u64, u64)>,
}

impl CutProfile {
    pub fn reflected(&self) -> Vec<u64> {
        self.cuts.iter().map(|z| self.n - z).collect()
    }
}

pub fn cut_set(k: u64, a: u64) -> Result<CutProfile> {
    let a = first_family_params(k, a)?;
    let mut cuts = Vec::new();
    for d in 0..k {
        if is_full_cycle(&cut_permutation(k, a, d)?) {
            cuts.push(d);
        }
    }
    if cuts.is_empty() {
        return Err(Error::Consistency(format!(
            "empty cut set for (k={k}, a={a})"
        )));
    }
    let n = k - 1;
    let mut best: Option<(u64, (u64, u64))> = None;
    for (i, &u) in cuts.iter().enumerate() {
        for &v in &cuts[i..] {
            let dist = (u + v).abs_diff(n);
            if best.is_none_or(|(b, _)| dist < b) {
                best = Some((dist, (u, v)));
            }
        }
    }
    let (delta, witness) = best.expect("cut set is nonempty");
    let count_pair = select_count_pair(k, &cuts);
    Ok(CutProfile {
        k,
        a,
        n,
        cuts,
        delta,
        witness,
        count_pair,
    })
}

/// Sum preference `k-1`, then `k-2`, then `k`; within a sum, smallest `d`.
fn select_count_pair(k: u64, cuts: &[u64]) -> Option<(u64, u64)> {
    [k - 1, k - 2, k].into_iter().find_map(|sum| {
        cuts.iter()
            .filter_map(|&d| {
                let e = sum.checked_sub(d)?;
                (e >= d && cuts.binary_search(&e).is_ok()).then_some((d, e))
            })
            .next()
    })
}

/// Cut values `(d, e)` with `d + e` in `{k-2, k-1, k}`.
pub fn count_pair(k: u64, a: u64) -> Result<(u64, u64)> {
    let profile = cut_set(k, a)?;
    profile.count_pair.ok_or_else(|| {
        Error::Consistency(format!(
            "no count pair in Z = {:?} for (k={k}, a={}); the cut-reflection bound fails here",
            profile.cuts, profile.a
        ))
    })
}

pub fn digraph(k: u64, a: u64) -> Result<CayleyDigraph> {
    let a = first_family_params(k, a)?;
    CayleyDigraph::circulant(k, a, a + 1)
}

/// The Hamiltonian cut path `a -> ... -> d` obtained by unfolding the cut
/// permutation from `a` and dropping the closing step.
pub fn cut_path(k: u64, a: u64, d: u64) -> Result<LabeledWalk> {
    let a = first_family_params(k, a)?;
    let perm = cut_permutation(k, a, d)?;
    if !is_full_cycle(&perm) {
        return Err(Error::NotInCutSet { k, a, d });
    }
    let mut labels = Vec::with_capacity(k as usize - 1);
    let mut x = a;
    while x != d {
        labels.push(if x < d { Label::B } else { Label::A });
        x = perm[x as usize];
    }
    Ok(LabeledWalk::new(Vertex(vec![a]), labels))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationStage {
    /// Translates of the two cut paths chosen by [`count_pair`].
    CountPairTranslates,
    /// Translates of some other pair of cut paths.
    AnyCutPairTranslates,
    /// Exhaustive oracle search.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub digraph: CayleyDigraph,
    pub paths: (LabeledWalk, LabeledWalk),
    pub stage: RealizationStage,
    /// Cut values of the two paths, for the translate stages.
    pub cuts: Option<(u64, u64)>,
}

/// Translates `P_d + g`, `P_e + h` over all `g, h`, first disjoint pair.
fn translate_search(
    dg: &CayleyDigraph,
    first: &LabeledWalk,
    second: &LabeledWalk,
) -> Option<(LabeledWalk, LabeledWalk)> {
    let k = dg.order() as u64;
    let first_arcs: Vec<_> = dg.arc_set(first).ok()?.iter().cloned().collect();
    let second_arcs: Vec<_> = dg.arc_set(second).ok()?.iter().cloned().collect();
    for g in 0..k {
        // Arc (x, l) of P_e + h hits P_d + g iff (x + h - g, l) is in P_d.
        let mut used = vec![[false; 2]; k as usize];
        for (tail, l) in &first_arcs {
            used[((tail.0[0] + g) % k) as usize][l.index()] = true;
        }
        for h in 0..k {
            let clash = second_arcs
                .iter()
                .any(|(tail, l)| used[((tail.0[0] + h) % k) as usize][l.index()]);
            if !clash {
                let p = dg.translate_walk(first, &Vertex(vec![g])).ok()?;
                let q = dg.translate_walk(second, &Vertex(vec![h])).ok()?;
                return Some((p, q));
            }
        }
    }
    None
}

/// Two verified arc-disjoint Hamiltonian paths in `Cay(Z_k; a, a+1)`.
///
/// Stages run in order and every candidate is re-verified before it is
/// returned: translates of the count-pair cut paths, translates of any two
/// cut paths, then the exhaustive oracle with `budget` nodes.
pub fn realize_disjoint_pair(k: u64, a: u64, budget: u64) -> Result<Realization> {
    let dg = digraph(k, a)?;
    let profile = cut_set(k, a)?;
    let a = profile.a;
    let accept = |paths: (LabeledWalk, LabeledWalk)| match dg.verify_pair(&paths.0, &paths.1) {
        None => Some(paths),
        Some(_) => None,
    };

    let mut tried = Vec::new();
    if let Some((d, e)) = profile.count_pair {
        let (pd, pe) = (cut_path(k, a, d)?, cut_path(k, a, e)?);
        if let Some(paths) = translate_search(&dg, &pd, &pe).and_then(accept) {
            return Ok(Realization {
                digraph: dg,
                paths,
                stage: RealizationStage::CountPairTranslates,
                cuts: Some((d, e)),
            });
        }
        tried.push((d, e));
    }
    for &d in &profile.cuts {
        for &e in &profile.cuts {
            if tried.contains(&(d, e)) {
                continue;
            }
            let (pd, pe) = (cut_path(k, a, d)?, cut_path(k, a, e)?);
            if let Some(paths) = translate_search(&dg, &pd, &pe).and_then(accept) {
                return Ok(Realization {
                    digraph: dg,
                    paths,
                    stage: RealizationStage::AnyCutPairTranslates,
                    cuts: Some((d, e)),
                });
            }
        }
    }
    match oracle::find_arc_disjoint_pair(&dg, budget)? {
        SearchOutcome::Found(paths) => {
            let paths = accept(paths)
                .ok_or_else(|| Error::Consistency("oracle returned an unverified pair".into()))?;
            Ok(Realization {
                digraph: dg,
                paths,
                stage: RealizationStage::Oracle,
                cuts: None,
            })
        }
        SearchOutcome::Absent => Err(Error::Consistency(format!(
            "oracle certifies no arc-disjoint pair in Cay(Z_{k}; {a}, {})",
            a + 1
        ))),
        SearchOutcome::Inconclusive { nodes } => Err(Error::Inconclusive(format!(
            "Cay(Z_{k}; {a}, {}): translate stages found no disjoint pair among Z = {:?}; \
             oracle inconclusive after {nodes} nodes",
            a + 1,
            profile.cuts
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::WalkMode;

    #[test]
    fn permutation_example_by_hand() {
        // i < 1: i+3; i = 1: 2; i > 1: i+2 (mod 5)
        assert_eq!(cut_permutation(5, 2, 1).unwrap(), vec![3, 2, 4, 0, 1]);
    }

    #[test]
    fn permutation_is_bijection() {
        for k in 3..30u64 {
            for a in 1..k - 1 {
                for d in 0..k {
                    let mut p = cut_permutation(k, a, d).unwrap();
                    p.sort_unstable();
                    assert_eq!(p, (0..k).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn orbit_of_zero_for_5_2_0() {
        let p = cut_permutation(5, 2, 0).unwrap();
        let mut orbit = vec![0u64];
        let mut x = p[0];
        while x != 0 {
            orbit.push(x);
            x = p[x as usize];
        }
        assert_eq!(orbit, vec![0, 2, 4, 1, 3]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(cut_permutation(5, 2, 5).is_err());
        assert!(cut_permutation(2, 1, 0).is_err());
        assert!(cut_set(7, 6).is_err());
        assert!(cut_set(7, 0).is_err());
    }

    #[test]
    fn cut_set_examples() {
        let p = cut_set(10, 4).unwrap();
        assert_eq!(p.cuts, vec![1, 3, 5]);
        assert_eq!(p.delta, 1);
        assert_eq!(p.witness, (3, 5));
        assert_eq!(p.reflected(), vec![8, 6, 4]);

        let p = cut_set(15, 3).unwrap();
        assert_eq!(p.cuts, vec![2, 4, 6, 8, 14]);
        assert_eq!(p.delta, 0);
        assert_eq!(p.witness, (6, 8));

        let p = cut_set(6, 2).unwrap();
        assert_eq!(p.cuts, vec![1, 3]);
        assert_eq!(p.delta, 1);
    }

    #[test]
    fn count_pair_examples() {
        assert_eq!(count_pair(15, 3).unwrap(), (6, 8));
        assert_eq!(count_pair(10, 4).unwrap(), (3, 5));
        assert_eq!(cut_set(10, 6).unwrap().cuts, vec![1, 3, 9]);
        assert_eq!(count_pair(10, 6).unwrap(), (1, 9));
        assert_eq!(cut_set(10, 3).unwrap().cuts, vec![0, 6, 8]);
        assert_eq!(count_pair(10, 3).unwrap(), (0, 8));
    }

    #[test]
    fn cut_path_examples() {
        let w = cut_path(5, 2, 0).unwrap();
        assert_eq!(w.start, Vertex(vec![2]));
        assert_eq!(w.label_string(), "AAAA");
        let d = digraph(5, 2).unwrap();
        let vs: Vec<u64> = d.vertices(&w).unwrap().iter().map(|v| v.0[0]).collect();
        assert_eq!(vs, vec![2, 4, 1, 3, 0]);

        let w = cut_path(10, 4, 3).unwrap();
        let d = digraph(10, 4).unwrap();
        assert_eq!(w.delta_b(), 3);
        assert_eq!(w.start, Vertex(vec![4]));
        assert_eq!(d.end(&w).unwrap(), Vertex(vec![3]));
        assert!(matches!(cut_path(10, 4, 2), Err(Error::NotInCutSet { .. })));
    }

    #[test]
    fn every_cut_path_verifies() {
        for k in 3..40u64 {
            for a in 1..k - 1 {
                let d = digraph(k, a).unwrap();
                for z in cut_set(k, a).unwrap().cuts {
                    let w = cut_path(k, a, z).unwrap();
                    assert!(d.verify_hamiltonian(&w, WalkMode::Path).passed());
                    assert_eq!(w.delta_b() as u64, z);
                    assert_eq!(d.end(&w).unwrap(), Vertex(vec![z]));
                }
            }
        }
    }

    #[test]
    fn realization_examples() {
        for (k, a) in [(10, 4), (3, 1), (6, 2)] {
            let r = realize_disjoint_pair(k, a, 1_000_000).unwrap();
            assert_eq!(r.digraph.verify_pair(&r.paths.0, &r.paths.1), None);
        }
        let r = realize_disjoint_pair(6, 2, 1).unwrap();
        assert_eq!(r.stage, RealizationStage::CountPairTranslates);
        assert_eq!(r.cuts, Some((1, 3)));
    }
}
