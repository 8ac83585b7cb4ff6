//! `Cay(Z_k; -a, a+1)` with `k = (2a+1)L`.
//!
//! Both generators raise the quotient coordinate `t(x) = x / (a+1) mod M`
//! by one, so a rule that picks a generator from `t(x)` alone is a
//! permutation of `Z_k`. Its cycles are orbits of the fiber shift
//! `a + 1 - |S|` after each full round of `M` steps.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{gcd, mod_inverse};
use crate::digraph::{CayleyDigraph, Label, LabeledWalk, WalkMode};
use crate::error::{Error, Result};
use crate::group::Vertex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientFiberConfig {
    pub a: u64,
    /// `2a + 1`
    pub m: u64,
    pub l: u64,
    pub k: u64,
    /// `-a mod k`
    pub gen_a: u64,
    /// `a + 1`
    pub gen_b: u64,
    /// Quotient positions that use generator A.
    pub s: BTreeSet<u64>,
    inv_b: u64,
}

impl QuotientFiberConfig {
    /// `S = {0, 1, ..., a+1}`.
    pub fn canonical(a: u64, l: u64) -> Result<Self> {
        Self::with_positions(a, l, (0..a + 2).collect())
    }

    pub fn with_positions(a: u64, l: u64, s: BTreeSet<u64>) -> Result<Self> {
        if a < 1 {
            return Err(Error::InvalidParameters("a must be at least 1".into()));
        }
        if l < 2 {
            return Err(Error::InvalidParameters(format!(
                "L = {l} must be at least 2 (L = 1 makes the generators equal)"
            )));
        }
        let m = 2 * a + 1;
        if let Some(&t) = s.iter().find(|&&t| t >= m) {
            return Err(Error::InvalidParameters(format!(
                "quotient position {t} is outside Z_{m}"
            )));
        }
        let inv_b = mod_inverse(a + 1, m).expect("gcd(a+1, 2a+1) = 1");
        let k = m * l;
        Ok(Self {
            a,
            m,
            l,
            k,
            gen_a: k - a,
            gen_b: a + 1,
            s,
            inv_b,
        })
    }

    /// Same parameters, positions `Z_M \ S`.
    pub fn complement(&self) -> Self {
        let s = (0..self.m).filter(|t| !self.s.contains(t)).collect();
        Self { s, ..self.clone() }
    }

    pub fn digraph(&self) -> Result<CayleyDigraph> {
        CayleyDigraph::circulant(self.k, self.gen_a, self.gen_b)
    }

    /// `a + 1 - |S| mod L`.
    pub fn return_shift(&self) -> u64 {
        let l = self.l as i64;
        (self.a as i64 + 1 - self.s.len() as i64).rem_euclid(l) as u64
    }

    pub fn label_at(&self, x: u64) -> Label {
        if self.s.contains(&quotient_coordinate(self, x)) {
            Label::A
        } else {
            Label::B
        }
    }
}

/// The unique `t` with `x = t(a+1) mod M`.
pub fn quotient_coordinate(cfg: &QuotientFiberConfig, x: u64) -> u64 {
    (x % cfg.m) * cfg.inv_b % cfg.m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewCover {
    pub config: QuotientFiberConfig,
    /// `F_S(x)` for every `x`.
    pub perm: Vec<u64>,
    /// Each cycle listed from its smallest vertex.
    pub cycles: Vec<Vec<u64>>,
    pub shift: u64,
}

impl SkewCover {
    pub fn cycle_of(&self) -> Vec<usize> {
        let mut id = vec![0; self.perm.len()];
        for (c, cycle) in self.cycles.iter().enumerate() {
            for &x in cycle {
                id[x as usize] = c;
            }
        }
        id
    }

    pub fn predecessor(&self) -> Vec<u64> {
        let mut pred = vec![0; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            pred[y as usize] = x as u64;
        }
        pred
    }

    /// Expected number of cycles, `gcd(L, shift)` with `gcd(L, 0) = L`.
    pub fn predicted_cycles(&self) -> u64 {
        gcd(self.config.l, self.shift)
    }
}

pub fn skew_cover(cfg: &QuotientFiberConfig) -> SkewCover {
    let k = cfg.k;
    let perm: Vec<u64> = (0..k)
        .map(|x| match cfg.label_at(x) {
            Label::A => (x + cfg.gen_a) % k,
            _ => (x + cfg.gen_b) % k,
        })
        .collect();
    let mut seen = vec![false; k as usize];
    let mut cycles = Vec::new();
    for x0 in 0..k {
        if seen[x0 as usize] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = x0;
        while !seen[x as usize] {
            seen[x as usize] = true;
            cycle.push(x);
            x = perm[x as usize];
        }
        cycles.push(cycle);
    }
    SkewCover {
        config: cfg.clone(),
        perm,
        cycles,
        shift: cfg.return_shift(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTwoBuild {
    pub digraph: CayleyDigraph,
    /// Hamiltonian cover from the canonical positions.
    pub cover_p: SkewCover,
    /// Cover from the complementary positions.
    pub cover_q: SkewCover,
    /// Arc `u -> v` of the P-cycle moved into the Q-cover when `L` is even.
    pub splice: Option<(u64, u64)>,
    pub paths: (LabeledWalk, LabeledWalk),
}

fn walk_from(dg: &CayleyDigraph, vertices: &[u64]) -> Result<LabeledWalk> {
    let vs: Vec<Vertex> = vertices.iter().map(|&x| Vertex(vec![x])).collect();
    dg.walk_through(&vs)
}

/// Follows `perm` from `start` until `stop` is reached (inclusive).
fn follow(perm: &[u64], start: u64, stop: u64, out: &mut Vec<u64>) {
    let mut x = start;
    out.push(x);
    while x != stop {
        x = perm[x as usize];
        out.push(x);
    }
}

/// Two verified arc-disjoint Hamiltonian paths in `Cay(Z_k; -a, a+1)`, `k = (2a+1)L`.
///
/// For odd `L` both covers are Hamiltonian cycles and each loses its arc
/// with tail 0. For even `L` the complementary cover has two cycles, which
/// are joined through the first arc of the P-cycle (from 0) that crosses them.
pub fn build_family_two(a: u64, l: u64) -> Result<FamilyTwoBuild> {
    let cfg = QuotientFiberConfig::canonical(a, l)?;
    let dg = cfg.digraph()?;
    let cover_p = skew_cover(&cfg);
    let cover_q = skew_cover(&cfg.complement());
    let (k, p, q) = (cfg.k, &cover_p.perm, &cover_q.perm);

    if cover_p.cycles.len() != 1 {
        return Err(Error::Consistency(format!(
            "canonical cover for (a={a}, L={l}) has {} cycles, expected 1",
            cover_p.cycles.len()
        )));
    }
    let expected_q = gcd(l, 2);
    if cover_q.cycles.len() as u64 != expected_q {
        return Err(Error::Consistency(format!(
            "complementary cover for (a={a}, L={l}) has {} cycles, expected {expected_q}",
            cover_q.cycles.len()
        )));
    }

    let (p_vertices, q_vertices, splice) = if l % 2 == 1 {
        let (mut pv, mut qv) = (
            Vec::with_capacity(k as usize),
            Vec::with_capacity(k as usize),
        );
        follow(p, p[0], 0, &mut pv);
        follow(q, q[0], 0, &mut qv);
        (pv, qv, None)
    } else {
        let id = cover_q.cycle_of();
        let mut u = 0u64;
        let v = loop {
            let v = p[u as usize];
            if id[u as usize] != id[v as usize] {
                break v;
            }
            u = v;
            if u == 0 {
                return Err(Error::Consistency(format!(
                    "no P-arc crosses the two complementary cycles for (a={a}, L={l})"
                )));
            }
        };
        let pred_q = cover_q.predecessor();
        let mut qv = Vec::with_capacity(k as usize);
        follow(q, q[u as usize], u, &mut qv);
        let mut rest = Vec::new();
        follow(q, v, pred_q[v as usize], &mut rest);
        qv.extend(rest);
        let mut pv = Vec::with_capacity(k as usize);
        follow(p, v, u, &mut pv);
        (pv, qv, Some((u, v)))
    };

    let paths = (walk_from(&dg, &p_vertices)?, walk_from(&dg, &q_vertices)?);
    for w in [&paths.0, &paths.1] {
        let report = dg.verify_hamiltonian(w, WalkMode::Path);
        if let Some(v) = report.violation {
            return Err(Error::Consistency(format!(
                "family-two path fails for (a={a}, L={l}): {v}"
            )));
        }
    }
    if let Some(v) = dg.verify_pair(&paths.0, &paths.1) {
        return Err(Error::Consistency(format!(
            "family-two pair fails for (a={a}, L={l}): {v}"
        )));
    }
    Ok(FamilyTwoBuild {
        digraph: dg,
        cover_p,
        cover_q,
        splice,
        paths,
    })
}
