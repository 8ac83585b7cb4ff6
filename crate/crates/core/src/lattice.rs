//! Primitive-ray description of the Hamiltonian cut set of `Cay(Z_k; a, a+1)`.
//!
//! With `m = ord(a)`, `n = [Z_k : <a>]` and `e` defined by
//! `n(a+1) = e*a (mod k)`, the relevant lattice triangle has vertices
//! `(0,0)`, `(n,0)`, `(e,m)` and its far side lies on `L(x,y) = m*x + (n-e)*y = mn`.
//! Rays are the primitive directions inside that triangle ordered by slope;
//! ray `R` carries multiplicity `floor(N / L(R))` with `N = k - 1`, and prefix
//! sums of the multiplicities give the cut values.
//!
//! Everything is exact integer arithmetic; slopes are compared by cross product.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::{first_family_params, gcd, mod_inverse};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ray {
    pub x: i64,
    pub y: i64,
}

impl Ray {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Positive when `self` has the smaller slope.
    pub fn cross(self, other: Ray) -> i64 {
        self.x * other.y - other.x * self.y
    }

    pub fn primitive(self) -> Ray {
        let g = gcd(self.x, self.y).max(1);
        Ray::new(self.x / g, self.y / g)
    }

    pub fn slope_cmp(self, other: Ray) -> Ordering {
        0.cmp(&self.cross(other))
    }
}

impl std::fmt::Display for Ray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeParams {
    pub k: u64,
    pub a: u64,
    /// Order of `a` in `Z_k`.
    pub m: u64,
    /// Index of `<a>` in `Z_k`, equal to `gcd(k, a)`.
    pub n: u64,
    pub e: u64,
    /// `k - 1`
    pub big_n: u64,
}

impl LatticeParams {
    pub fn linear_form(&self, r: Ray) -> i64 {
        self.m as i64 * r.x + (self.n as i64 - self.e as i64) * r.y
    }

    /// Primitive direction of the far boundary point `(e, m)`.
    pub fn last_boundary(&self) -> Ray {
        if self.e == 0 {
            Ray::new(0, 1)
        } else {
            Ray::new(self.e as i64, self.m as i64).primitive()
        }
    }
}

pub fn lattice_params(k: u64, a: u64) -> Result<LatticeParams> {
    let a = first_family_params(k, a)?;
    let n = gcd(k, a);
    let m = k / n;
    // n(a+1) = e*a (mod nm)  <=>  a+1 = e*(a/n) (mod m)
    let inv = mod_inverse((a / n) % m, m).ok_or_else(|| {
        Error::Consistency(format!("a/n not invertible mod m for (k={k}, a={a})"))
    })?;
    let e = ((a + 1) % m) * inv % m;
    let params = LatticeParams {
        k,
        a,
        m,
        n,
        e,
        big_n: k - 1,
    };
    debug_assert_eq!((n * (a + 1)) % k, (e * a) % k);
    Ok(params)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaySystem {
    pub params: LatticeParams,
    /// Slope-ordered rays, boundary rays first and last.
    pub rays: Vec<Ray>,
    /// `H_r = floor(N / L(A_r))`.
    pub mults: Vec<u64>,
    /// `U_1 .. U_{f-1}`.
    pub cut_values: Vec<u64>,
}

impl RaySystem {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Total multiplicity of rays strictly between rays `i < j` (0-based).
    pub fn sector_mass(&self, i: usize, j: usize) -> Result<u64> {
        if i >= j || j >= self.rays.len() {
            return Err(Error::InvalidParameters(format!(
                "ray indices must satisfy i < j < {} (got {i}, {j})",
                self.rays.len()
            )));
        }
        Ok(self.mults[i + 1..j].iter().sum())
    }

    /// Ray pairs `(i, j)` with positive multiplicities where the mass
    /// between them falls below `theta`.
    pub fn sector_filling_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rays.len() {
            for j in i + 1..self.rays.len() {
                let (p, q) = (self.mults[i], self.mults[j]);
                if p == 0 || q == 0 {
                    continue;
                }
                let mass = self.mults[i + 1..j].iter().sum::<u64>();
                if mass < theta_unchecked(p, q) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Positions `i` where blocks `i` and `i+1` both have multiplicity at least 2.
    pub fn adjacent_large(&self) -> Vec<usize> {
        self.mults
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] >= 2 && w[1] >= 2)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Every primitive `(x, y)`, `y >= 1`, strictly between `(1,0)` and the far
/// boundary direction, with `L(x, y) <= N`.
fn internal_rays(p: &LatticeParams) -> Vec<Ray> {
    let last = p.last_boundary();
    let (big_n, m, slope_y) = (p.big_n as i64, p.m as i64, p.n as i64 - p.e as i64);
    let mut rays = Vec::new();
    for y in 1..=m {
        // strictly right of the far boundary: x * last.y > y * last.x
        let x_min = (y * last.x).div_euclid(last.y) + 1;
        // L(x, y) <= N
        let x_max = (big_n - slope_y * y).div_euclid(m);
        for x in x_min.max(0)..=x_max {
            if gcd(x, y) == 1 {
                rays.push(Ray::new(x, y));
            }
        }
    }
    rays
}

pub fn ray_system(k: u64, a: u64) -> Result<RaySystem> {
    let params = lattice_params(k, a)?;
    let mut rays = vec![Ray::new(1, 0)];
    let mut internal = internal_rays(&params);
    internal.sort_by(|r, s| r.slope_cmp(*s));
    rays.extend(internal);
    rays.push(params.last_boundary());

    let mults: Vec<u64> = rays
        .iter()
        .map(|&r| {
            let l = params.linear_form(r);
            debug_assert!(l > 0);
            params.big_n / l as u64
        })
        .collect();
    let f = rays.len();
    let mut cut_values = Vec::with_capacity(f - 1);
    let mut u = mults[0];
    cut_values.push(u);
    for &h in &mults[1..f - 1] {
        u += 2 * h;
        cut_values.push(u);
    }
    if cut_values[f - 2] + mults[f - 1] != params.big_n {
        return Err(Error::Consistency(format!(
            "endpoint identity U_(f-1) + H_f = N fails for (k={k}, a={a})"
        )));
    }
    Ok(RaySystem {
        params,
        rays,
        mults,
        cut_values,
    })
}

/// The cut set read off a ray system.
pub fn cut_values_from_rays(rs: &RaySystem) -> Vec<u64> {
    rs.cut_values.clone()
}

/// `(gcd(k, a) - 1, gcd(k, a + 1) - 1)`.
pub fn endpoint_caps(k: u64, a: u64) -> Result<(u64, u64)> {
    let a = first_family_params(k, a)?;
    Ok((gcd(k, a) - 1, gcd(k, a + 1) - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapProfile {
    pub cuts: Vec<u64>,
    pub c_l: u64,
    pub c_r: u64,
    /// Half-gaps `(z_{r+1} - z_r) / 2`.
    pub lambdas: Vec<u64>,
}

impl GapProfile {
    /// Block heights `c_L, lambda_0, ..., c_R`.
    pub fn blocks(&self) -> Vec<u64> {
        let mut b = vec![self.c_l];
        b.extend(&self.lambdas);
        b.push(self.c_r);
        b
    }

    /// Compares against a ray system: the blocks must equal its multiplicities.
    pub fn matches_rays(&self, rs: &RaySystem) -> bool {
        self.blocks() == rs.mults
    }
}

pub fn gap_profile(cuts: &[u64], big_n: u64) -> Result<GapProfile> {
    let (&first, &last) = cuts
        .first()
        .zip(cuts.last())
        .ok_or_else(|| Error::InvalidParameters("cut set must be nonempty".into()))?;
    if last > big_n {
        return Err(Error::InvalidParameters(format!(
            "cut value {last} exceeds N = {big_n}"
        )));
    }
    let mut lambdas = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidParameters(
                "cut values must be strictly increasing".into(),
            ));
        }
        let gap = w[1] - w[0];
        if gap % 2 != 0 {
            return Err(Error::Consistency(format!(
                "odd gap between cut values {} and {}",
                w[0], w[1]
            )));
        }
        lambdas.push(gap / 2);
    }
    Ok(GapProfile {
        cuts: cuts.to_vec(),
        c_l: first,
        c_r: big_n - last,
        lambdas,
    })
}

/// Number of positive `(r, s)` with `r/p + s/q <= 1`, i.e. `r*q + s*p <= p*q`.
pub fn theta(p: u64, q: u64) -> Result<u64> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidParameters(format!(
            "theta needs p, q >= 1 (got {p}, {q})"
        )));
    }
    Ok(theta_unchecked(p, q))
}

fn theta_unchecked(p: u64, q: u64) -> u64 {
    (1..p).map(|r| q * (p - r) / p).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectedGapGraph {
    pub big_n: u64,
    pub delta: u64,
    pub vertices: Vec<u64>,
    /// Pairs `u <= v` with `u + v = N - delta`; `u == v` is a loop.
    pub negative: Vec<(u64, u64)>,
    /// Pairs `u <= v` with `u + v = N + delta`.
    pub positive: Vec<(u64, u64)>,
}

impl ReflectedGapGraph {
    pub fn is_empty(&self) -> bool {
        self.negative.is_empty() && self.positive.is_empty()
    }
}

pub fn reflected_gap_graph(cuts: &[u64], big_n: u64) -> Result<ReflectedGapGraph> {
    if cuts.is_empty() {
        return Err(Error::InvalidParameters("cut set must be nonempty".into()));
    }
    let delta = cuts
        .iter()
        .flat_map(|&u| cuts.iter().map(move |&v| (u + v).abs_diff(big_n)))
        .min()
        .expect("nonempty");
    let edges = |target: Option<u64>| -> Vec<(u64, u64)> {
        let Some(t) = target else { return Vec::new() };
        let mut out = Vec::new();
        for (i, &u) in cuts.iter().enumerate() {
            for &v in &cuts[i..] {
                if u + v == t {
                    out.push((u, v));
                }
            }
        }
        out
    };
    Ok(ReflectedGapGraph {
        big_n,
        delta,
        vertices: cuts.to_vec(),
        negative: edges(big_n.checked_sub(delta)),
        positive: edges(Some(big_n + delta)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One internal ray checked against a cap of multiplicity two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cap2Check {
    pub side: Side,
    pub ray: usize,
    pub alpha: u64,
    pub mass: u64,
    /// `alpha - 2`, or `alpha - 1` when `N = 4*alpha - 2`.
    pub bound: u64,
    pub strengthened: bool,
    pub passed: bool,
}

/// Mass between a cap of multiplicity two and each internal ray.
/// Empty unless `c_L = 2` or `c_R = 2`.
pub fn cap2_bound_report(rs: &RaySystem) -> Vec<Cap2Check> {
    let f = rs.rays.len();
    let big_n = rs.params.big_n;
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let cap = match side {
            Side::Left => rs.mults[0],
            Side::Right => rs.mults[f - 1],
        };
        if cap != 2 {
            continue;
        }
        for ray in 1..f - 1 {
            let alpha = rs.mults[ray];
            let mass = match side {
                Side::Left => rs.mults[1..ray].iter().sum(),
                Side::Right => rs.mults[ray + 1..f - 1].iter().sum(),
            };
            let strengthened = 4 * alpha == big_n + 2;
            let bound = if strengthened {
                alpha - 1
            } else {
                alpha.saturating_sub(2)
            };
            out.push(Cap2Check {
                side,
                ray,
                alpha,
                mass,
                bound,
                strengthened,
                passed: mass >= bound,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family_one::cut_set;

    /// Direct enumeration over the whole box.
    fn theta_brute(p: u64, q: u64) -> u64 {
        let mut c = 0;
        for r in 1..=p {
            for s in 1..=q {
                if r * q + s * p <= p * q {
                    c += 1;
                }
            }
        }
        c
    }

    /// Primitive rays by scanning a box that contains the triangle.
    fn rays_brute(p: &LatticeParams) -> Vec<Ray> {
        let last = p.last_boundary();
        let bound = (p.k + p.m + p.n) as i64;
        let mut out = Vec::new();
        for x in 0..=bound {
            for y in 1..=bound {
                let r = Ray::new(x, y);
                if gcd(x, y) == 1
                    && Ray::new(1, 0).cross(r) > 0
                    && r.cross(last) > 0
                    && p.linear_form(r) <= p.big_n as i64
                {
                    out.push(r);
                }
            }
        }
        out.sort_by(|r, s| r.slope_cmp(*s));
        out
    }

    #[test]
    fn params_examples() {
        let p = lattice_params(10, 4).unwrap();
        assert_eq!((p.m, p.n, p.e, p.big_n), (5, 2, 0, 9));
        assert_eq!(p.linear_form(Ray::new(1, 0)), 5);
        assert_eq!(p.linear_form(Ray::new(0, 1)), 2);
        let p = lattice_params(15, 3).unwrap();
        assert_eq!((p.m, p.n, p.big_n), (5, 3, 14));
        let p = lattice_params(11, 4).unwrap();
        assert_eq!((p.m, p.n), (11, 1));
    }

    #[test]
    fn params_invariants() {
        for k in 3..80u64 {
            for a in 1..k - 1 {
                let p = lattice_params(k, a).unwrap();
                assert_eq!(p.m * p.n, k);
                assert!(p.e < p.m);
                let brute_e = (0..p.m).find(|&e| (p.n * (a + 1)) % k == (e * a) % k);
                assert_eq!(Some(p.e), brute_e);
                let mn = (p.m * p.n) as i64;
                assert_eq!(p.linear_form(Ray::new(p.n as i64, 0)), mn);
                assert_eq!(p.linear_form(Ray::new(p.e as i64, p.m as i64)), mn);
            }
        }
    }

    #[test]
    fn ray_system_example() {
        let rs = ray_system(10, 4).unwrap();
        assert_eq!(
            rs.rays,
            vec![
                Ray::new(1, 0),
                Ray::new(1, 1),
                Ray::new(1, 2),
                Ray::new(0, 1)
            ]
        );
        assert_eq!(rs.mults, vec![1, 1, 1, 4]);
        assert_eq!(rs.cut_values, vec![1, 3, 5]);
        assert_eq!(
            cut_values_from_rays(&ray_system(15, 3).unwrap()),
            vec![2, 4, 6, 8, 14]
        );
        assert_eq!(cut_values_from_rays(&ray_system(6, 2).unwrap()), vec![1, 3]);
    }

    #[test]
    fn rays_match_box_enumeration() {
        for k in 3..60u64 {
            for a in 1..k - 1 {
                let rs = ray_system(k, a).unwrap();
                let f = rs.rays.len();
                assert_eq!(
                    rs.rays[1..f - 1].to_vec(),
                    rays_brute(&rs.params),
                    "k={k} a={a}"
                );
                for w in rs.rays.windows(2) {
                    assert!(w[0].cross(w[1]) > 0);
                }
            }
        }
    }

    #[test]
    fn rays_agree_with_cut_permutations() {
        for k in 3..70u64 {
            for a in 1..k - 1 {
                let rs = ray_system(k, a).unwrap();
                assert_eq!(
                    cut_values_from_rays(&rs),
                    cut_set(k, a).unwrap().cuts,
                    "k={k} a={a}"
                );
            }
        }
    }

    #[test]
    fn caps_examples() {
        assert_eq!(endpoint_caps(10, 4).unwrap(), (1, 4));
        assert_eq!(endpoint_caps(15, 3).unwrap(), (2, 0));
        assert_eq!(endpoint_caps(7, 3).unwrap().0, 0);
    }

    #[test]
    fn gap_profile_examples() {
        let g = gap_profile(&[1, 3, 5], 9).unwrap();
        assert_eq!((g.c_l, g.lambdas.clone(), g.c_r), (1, vec![1, 1], 4));
        assert!(g.matches_rays(&ray_system(10, 4).unwrap()));
        let g = gap_profile(&[2, 4, 6, 8, 14], 14).unwrap();
        assert_eq!((g.lambdas.clone(), g.c_r), (vec![1, 1, 1, 3], 0));
        let g = gap_profile(&[4], 9).unwrap();
        assert!(g.lambdas.is_empty());
        assert!(matches!(
            gap_profile(&[1, 4], 9),
            Err(Error::Consistency(_))
        ));
        assert!(gap_profile(&[], 9).is_err());
    }

    #[test]
    fn theta_examples_and_brute_force() {
        for q in 1..20 {
            assert_eq!(theta(1, q).unwrap(), 0);
        }
        assert_eq!(theta(2, 2).unwrap(), 1);
        assert_eq!(theta(3, 3).unwrap(), 3);
        assert!(theta(0, 3).is_err());
        for p in 1..=50 {
            for q in 1..=50 {
                let t = theta(p, q).unwrap();
                assert_eq!(t, theta_brute(p, q));
                assert_eq!(t, theta(q, p).unwrap());
                assert!(2 * t >= (p - 1) * (q - 1));
                if q >= p && p >= 2 {
                    assert!(t >= p - 1);
                }
            }
        }
    }

    #[test]
    fn sector_mass_examples() {
        let rs = ray_system(10, 4).unwrap();
        assert_eq!(rs.sector_mass(0, 1).unwrap(), 0);
        assert_eq!(rs.sector_mass(0, 3).unwrap(), 2);
        assert!(rs.sector_mass(2, 2).is_err());
        assert!(rs.sector_mass(0, 4).is_err());
    }

    #[test]
    fn reflected_gap_graph_examples() {
        let g = reflected_gap_graph(&[1, 3, 5], 9).unwrap();
        assert_eq!(g.delta, 1);
        assert_eq!(g.negative, vec![(3, 5)]);
        assert_eq!(g.positive, vec![(5, 5)]);
        let g = reflected_gap_graph(&[2, 4, 6, 8, 14], 14).unwrap();
        assert_eq!(g.delta, 0);
        assert_eq!(g.negative, vec![(6, 8)]);
        assert!(!reflected_gap_graph(&[7], 30).unwrap().is_empty());
    }

    /// The `N = 4*alpha - 2` alignment never arises from real parameters in
    /// the tested range, so the branch is exercised on hand-made multiplicities.
    #[test]
    fn cap2_strengthened_branch() {
        let mut rs = ray_system(15, 3).unwrap();
        rs.params.big_n = 14;
        rs.mults = vec![2, 1, 4, 0];
        rs.rays.truncate(4);
        let report = cap2_bound_report(&rs);
        let c = report.iter().find(|c| c.ray == 2).unwrap();
        assert!(c.strengthened);
        assert_eq!((c.alpha, c.mass, c.bound), (4, 1, 3));
        assert!(!c.passed);
        let mut rs = ray_system(15, 3).unwrap();
        rs.mults = vec![2, 1, 1, 1, 4, 0];
        let report = cap2_bound_report(&rs);
        assert!(report.iter().any(|c| c.strengthened && c.mass == 3));
        assert!(report.iter().all(|c| c.passed));
    }

    #[test]
    fn cap2_examples() {
        let report = cap2_bound_report(&ray_system(15, 3).unwrap());
        assert!(!report.is_empty());
        assert!(report.iter().all(|c| c.passed && c.side == Side::Left));
        assert!(cap2_bound_report(&ray_system(10, 4).unwrap()).is_empty());
    }
}
