//! Witness files: a pair of walks plus the digraph they claim to live in.
//!
//! The layout is a single JSON document with a fixed field order. `digest`
//! is the SHA-256 of the compact JSON of every other field, so a file that
//! was edited by hand still verifies structurally but is reported as
//! tampered if the paths are fine and only the digest disagrees.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::digraph::{CayleyDigraph, LabeledWalk, WalkMode};
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, Vertex};
use crate::oracle::{self, SearchOutcome};
use crate::{family_one, family_two, products};

pub const WITNESS_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    One,
    Two,
    Product,
    Search,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::One => "one",
            Family::Two => "two",
            Family::Product => "product",
            Family::Search => "search",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub big_l: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u64>>,
}

/// Everything except the digest, in file order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBody {
    pub version: u32,
    pub family: Family,
    pub params: WitnessParams,
    pub group_orders: Vec<u64>,
    pub gen_a: Vec<u64>,
    pub gen_b: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_c: Option<Vec<u64>>,
    pub path1: LabeledWalk,
    pub path2: LabeledWalk,
}

impl WitnessBody {
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("witness body serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn digraph(&self) -> Result<CayleyDigraph> {
        let group = FiniteAbelianGroup::new(self.group_orders.clone())?;
        let mut gens = vec![Vertex(self.gen_a.clone()), Vertex(self.gen_b.clone())];
        if let Some(c) = &self.gen_c {
            gens.push(Vertex(c.clone()));
        }
        CayleyDigraph::with_generators(group, gens)
    }

    /// Group orders and generators implied by `family` and `params`.
    /// `None` for generators means the family does not pin them.
    fn expected_header(&self) -> std::result::Result<(Vec<u64>, Option<Vec<Vec<u64>>>), String> {
        let p = &self.params;
        let need = |v: Option<u64>, name: &str| v.ok_or_else(|| format!("params.{name} missing"));
        match self.family {
            Family::One => {
                let (k, a) = (need(p.k, "k")?, need(p.a, "a")?);
                Ok((vec![k], Some(vec![vec![a % k], vec![(a + 1) % k]])))
            }
            Family::Two => {
                let (a, l) = (need(p.a, "a")?, need(p.big_l, "L")?);
                let k = (2 * a + 1) * l;
                Ok((vec![k], Some(vec![vec![k - a], vec![a + 1]])))
            }
            Family::Product => {
                let orders = vec![need(p.m, "m")?, need(p.n, "n")?, need(p.l, "l")?];
                let units = (0..3)
                    .map(|i| (0..3).map(|j| u64::from(i == j)).collect())
                    .collect();
                Ok((orders, Some(units)))
            }
            Family::Search => {
                let orders = p
                    .orders
                    .clone()
                    .ok_or_else(|| "params.orders missing".to_string())?;
                Ok((orders, None))
            }
        }
    }

    fn header_generators(&self) -> Vec<Vec<u64>> {
        let mut g = vec![self.gen_a.clone(), self.gen_b.clone()];
        g.extend(self.gen_c.clone());
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    #[serde(flatten)]
    pub body: WitnessBody,
    pub digest: String,
}

/// Result of re-checking a witness. `first_violation` is `None` iff every check passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub vertices: usize,
    pub first_violation: Option<String>,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

impl WitnessFile {
    pub fn new(
        family: Family,
        params: WitnessParams,
        digraph: &CayleyDigraph,
        path1: LabeledWalk,
        path2: LabeledWalk,
    ) -> Self {
        let gens = digraph.generators();
        let body = WitnessBody {
            version: WITNESS_VERSION,
            family,
            params,
            group_orders: digraph.group().orders().to_vec(),
            gen_a: gens[0].0.clone(),
            gen_b: gens[1].0.clone(),
            gen_c: gens.get(2).map(|v| v.0.clone()),
            path1,
            path2,
        };
        let digest = body.digest();
        Self { body, digest }
    }

    /// One line of JSON plus a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("witness serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: WitnessFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedWitness(e.to_string()))?;
        if file.body.version != WITNESS_VERSION {
            return Err(Error::MalformedWitness(format!(
                "unsupported version {} (expected {WITNESS_VERSION})",
                file.body.version
            )));
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MalformedWitness(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Structure first (digraph, both paths, disjointness, header against
    /// params), then the digest.
    pub fn verify(&self) -> WitnessCheck {
        let body = &self.body;
        let fail = |vertices, msg: String| WitnessCheck {
            vertices,
            first_violation: Some(msg),
        };
        let d = match body.digraph() {
            Ok(d) => d,
            Err(e) => return fail(0, format!("header: {e}")),
        };
        let n = d.order();
        for (name, w) in [("path 1", &body.path1), ("path 2", &body.path2)] {
            if let Some(v) = d.verify_hamiltonian(w, WalkMode::Path).violation {
                return fail(n, format!("{name}: {v}"));
            }
        }
        if let Some(v) = d.verify_pair(&body.path1, &body.path2) {
            return fail(n, v.to_string());
        }
        match body.expected_header() {
            Err(msg) => return fail(n, format!("header: {msg}")),
            Ok((orders, gens)) => {
                if orders != body.group_orders {
                    return fail(
                        n,
                        format!(
                            "header: group orders {:?} do not match {} parameters ({orders:?})",
                            body.group_orders, body.family
                        ),
                    );
                }
                if let Some(gens) = gens {
                    if gens != body.header_generators() {
                        return fail(
                            n,
                            format!(
                                "header: generators {:?} do not match {} parameters ({gens:?})",
                                body.header_generators(),
                                body.family
                            ),
                        );
                    }
                }
            }
        }
        let expected = body.digest();
        if expected != self.digest {
            return fail(
                n,
                format!(
                    "digest mismatch: file has {}, content hashes to {expected}",
                    self.digest
                ),
            );
        }
        WitnessCheck {
            vertices: n,
            first_violation: None,
        }
    }
}

/// What to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildRequest {
    /// `Cay(Z_k; a, a+1)`.
    One { k: u64, a: u64 },
    /// `Cay(Z_{(2a+1)L}; -a, a+1)`.
    Two { a: u64, l: u64 },
    /// `C_m □ C_n □ C_l`.
    Product { m: u64, n: u64, l: u64 },
    /// Any small two-generated abelian Cayley digraph, by exhaustive search.
    Search {
        orders: Vec<u64>,
        gen_a: Vec<u64>,
        gen_b: Vec<u64>,
    },
}

pub fn build_witness(req: &BuildRequest, budget: u64) -> Result<WitnessFile> {
    let none = WitnessParams::default();
    match req {
        &BuildRequest::One { k, a } => {
            let r = family_one::realize_disjoint_pair(k, a, budget)?;
            let a = a % k;
            let params = WitnessParams {
                k: Some(k),
                a: Some(a),
                ..none
            };
            Ok(WitnessFile::new(
                Family::One,
                params,
                &r.digraph,
                r.paths.0,
                r.paths.1,
            ))
        }
        &BuildRequest::Two { a, l } => {
            let b = family_two::build_family_two(a, l)?;
            let params = WitnessParams {
                a: Some(a),
                big_l: Some(l),
                ..none
            };
            Ok(WitnessFile::new(
                Family::Two,
                params,
                &b.digraph,
                b.paths.0,
                b.paths.1,
            ))
        }
        &BuildRequest::Product { m, n, l } => {
            let b = products::build_three_factor(m, n, l, budget)?;
            let params = WitnessParams {
                m: Some(m),
                n: Some(n),
                l: Some(l),
                ..none
            };
            Ok(WitnessFile::new(
                Family::Product,
                params,
                &b.digraph,
                b.paths.0,
                b.paths.1,
            ))
        }
        BuildRequest::Search {
            orders,
            gen_a,
            gen_b,
        } => {
            let group = FiniteAbelianGroup::new(orders.clone())?;
            let to_i64 = |v: &[u64]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
            let (ga, gb) = (
                group.element(&to_i64(gen_a))?,
                group.element(&to_i64(gen_b))?,
            );
            let d = CayleyDigraph::new(group, ga, gb)?;
            match oracle::find_arc_disjoint_pair(&d, budget)? {
                SearchOutcome::Found((p, q)) => {
                    let params = WitnessParams { orders: Some(orders.clone()), ..none };
                    Ok(WitnessFile::new(Family::Search, params, &d, p, q))
                }
                SearchOutcome::Absent => Err(Error::BuildFailed(format!(
                    "no arc-disjoint Hamiltonian path pair exists in Cay(Z_{orders:?}; {gen_a:?}, {gen_b:?})"
                ))),
                SearchOutcome::Inconclusive { nodes } => Err(Error::Inconclusive(format!(
                    "pair search stopped after {nodes} nodes"
                ))),
            }
        }
    }
}
