//! Parameter sweeps over `Cay(Z_k; a, a+1)` and their output formats.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::family_one::{cut_set, CutProfile};
use crate::lattice::{
    cap2_bound_report, gap_profile, ray_system, reflected_gap_graph, GapProfile, RaySystem,
    ReflectedGapGraph,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanCheck {
    /// Reflection distance 0 for odd `k`, 1 for even `k`.
    ParitySharp,
    /// Cut values read off the rays equal the cut set.
    LatticeEquality,
    /// Boundary gaps equal `gcd(k, a) - 1` and `gcd(k, a+1) - 1`.
    Caps,
    /// Mass between two rays is at least `theta` of their multiplicities.
    SectorFilling,
    /// No two neighbouring blocks are both at least 2.
    AdjacentLarge,
    /// Mass bounds next to a cap of multiplicity 2.
    Cap2,
}

impl ScanCheck {
    pub const ALL: [ScanCheck; 6] = [
        ScanCheck::ParitySharp,
        ScanCheck::LatticeEquality,
        ScanCheck::Caps,
        ScanCheck::SectorFilling,
        ScanCheck::AdjacentLarge,
        ScanCheck::Cap2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScanCheck::ParitySharp => "parity-sharp",
            ScanCheck::LatticeEquality => "lattice-equality",
            ScanCheck::Caps => "caps",
            ScanCheck::SectorFilling => "sector-filling",
            ScanCheck::AdjacentLarge => "adjacent-large",
            ScanCheck::Cap2 => "cap2",
        }
    }
}

impl fmt::Display for ScanCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|c| c.name()).collect();
                Error::InvalidParameters(format!(
                    "unknown check {s:?} (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub check: ScanCheck,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub k: u64,
    pub a: u64,
    #[serde(rename = "Z")]
    pub cuts: Vec<u64>,
    #[serde(rename = "N_minus_Z")]
    pub reflected: Vec<u64>,
    pub delta: u64,
    pub count_pair: Option<(u64, u64)>,
    pub c_l: u64,
    pub c_r: u64,
    pub lattice_agrees: bool,
    /// For even `k`: whether some pair of cut values sums to `k - 2`, and to `k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_sums: Option<(bool, bool)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<CheckFailure>,
}

fn has_pair_sum(cuts: &[u64], sum: u64) -> bool {
    cuts.iter().any(|&u| {
        sum.checked_sub(u)
            .is_some_and(|v| cuts.binary_search(&v).is_ok())
    })
}

/// One `(k, a)` cell with the selected checks.
pub fn scan_cell(k: u64, a: u64, checks: &[ScanCheck]) -> Result<ScanRow> {
    let profile = cut_set(k, a)?;
    let a = profile.a;
    let (c_l, c_r) = (gcd(k, a) - 1, gcd(k, a + 1) - 1);
    let rays = ray_system(k, a);
    let lattice_agrees = rays.as_ref().is_ok_and(|rs| rs.cut_values == profile.cuts);
    let mut failures = Vec::new();
    let mut fail = |check, detail: String| failures.push(CheckFailure { check, detail });
    for &check in checks {
        match check {
            ScanCheck::ParitySharp => {
                let expected = u64::from(k.is_multiple_of(2));
                if profile.delta != expected {
                    fail(
                        check,
                        format!("delta = {}, expected {expected}", profile.delta),
                    );
                }
            }
            ScanCheck::LatticeEquality => match &rays {
                Err(e) => fail(check, e.to_string()),
                Ok(rs) if !lattice_agrees => fail(
                    check,
                    format!(
                        "rays give {:?}, cut set is {:?}",
                        rs.cut_values, profile.cuts
                    ),
                ),
                Ok(_) => {}
            },
            ScanCheck::Caps => match gap_profile(&profile.cuts, profile.n) {
                Err(e) => fail(check, e.to_string()),
                Ok(g) if (g.c_l, g.c_r) != (c_l, c_r) => fail(
                    check,
                    format!(
                        "gaps ({}, {}) but gcd formulas give ({c_l}, {c_r})",
                        g.c_l, g.c_r
                    ),
                ),
                Ok(_) => {}
            },
            ScanCheck::SectorFilling | ScanCheck::AdjacentLarge | ScanCheck::Cap2 => {
                let rs = match &rays {
                    Ok(rs) => rs,
                    Err(e) => {
                        fail(check, e.to_string());
                        continue;
                    }
                };
                match check {
                    ScanCheck::SectorFilling => {
                        if let Some(&(i, j)) = rs.sector_filling_violations().first() {
                            fail(check, format!("rays {i} and {j}"));
                        }
                    }
                    ScanCheck::AdjacentLarge => {
                        if let Some(&i) = rs.adjacent_large().first() {
                            fail(check, format!("blocks {i} and {} both at least 2", i + 1));
                        }
                    }
                    _ => {
                        if let Some(c) = cap2_bound_report(rs).into_iter().find(|c| !c.passed) {
                            fail(
                                check,
                                format!(
                                    "{:?} side, ray {}: mass {} < {}",
                                    c.side, c.ray, c.mass, c.bound
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    let even_sums = k.is_multiple_of(2).then(|| {
        (
            has_pair_sum(&profile.cuts, k - 2),
            has_pair_sum(&profile.cuts, k),
        )
    });
    Ok(ScanRow {
        k,
        a,
        reflected: profile.reflected(),
        cuts: profile.cuts,
        delta: profile.delta,
        count_pair: profile.count_pair,
        c_l,
        c_r,
        lattice_agrees,
        even_sums,
        failures,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub cells: usize,
    pub failures: usize,
    /// Failure count per check, in [`ScanCheck::ALL`] order, zeros omitted.
    pub failures_by_check: Vec<(ScanCheck, usize)>,
    /// Smallest failing `(k, a)` and the first check it fails.
    pub first_failure: Option<(u64, u64, ScanCheck)>,
    /// Even-`k` cells where some pair of cut values sums to `k - 2` only, `k` only, or both.
    pub even_k_sum_k_minus_2_only: usize,
    pub even_k_sum_k_only: usize,
    pub even_k_both_sums: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

/// All valid `(k, a)` with `k_min <= k <= k_max`, in order.
pub fn scan_range(k_min: u64, k_max: u64, checks: &[ScanCheck], jobs: usize) -> Result<ScanReport> {
    if k_min < 3 || k_min > k_max {
        return Err(Error::InvalidParameters(format!(
            "need 3 <= k_min <= k_max (got {k_min}..{k_max})"
        )));
    }
    let cells: Vec<(u64, u64)> = (k_min..=k_max)
        .flat_map(|k| (1..k - 1).map(move |a| (k, a)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    let rows: Vec<ScanRow> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(k, a)| scan_cell(k, a, checks))
            .collect::<Result<_>>()
    })?;
    let mut summary = ScanSummary {
        cells: rows.len(),
        ..Default::default()
    };
    for check in ScanCheck::ALL {
        let n = rows
            .iter()
            .filter(|r| r.failures.iter().any(|f| f.check == check))
            .count();
        if n > 0 {
            summary.failures_by_check.push((check, n));
        }
    }
    summary.failures = rows.iter().filter(|r| !r.failures.is_empty()).count();
    summary.first_failure = rows
        .iter()
        .find_map(|r| r.failures.first().map(|f| (r.k, r.a, f.check)));
    for r in &rows {
        match r.even_sums {
            Some((true, false)) => summary.even_k_sum_k_minus_2_only += 1,
            Some((false, true)) => summary.even_k_sum_k_only += 1,
            Some((true, true)) => summary.even_k_both_sums += 1,
            _ => {}
        }
    }
    Ok(ScanReport { rows, summary })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::InvalidParameters(format!(
                "unknown format {s:?} (expected table, json or csv)"
            ))),
        }
    }
}

fn join(values: &[u64], sep: &str) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn io_err(e: impl fmt::Display) -> Error {
    Error::InvalidParameters(format!("write failed: {e}"))
}

/// Rows as a table, JSON lines, or CSV with columns
/// `k,a,Z,delta,c_L,c_R,count_d,count_e,lattice_agrees` (Z space-separated).
pub fn write_scan_rows(rows: &[ScanRow], format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Json => {
            for r in rows {
                serde_json::to_writer(&mut *out, r).map_err(io_err)?;
                writeln!(out).map_err(io_err)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "k",
                "a",
                "Z",
                "delta",
                "c_L",
                "c_R",
                "count_d",
                "count_e",
                "lattice_agrees",
            ])
            .map_err(io_err)?;
            for r in rows {
                let (d, e) = r
                    .count_pair
                    .map_or((String::new(), String::new()), |(d, e)| {
                        (d.to_string(), e.to_string())
                    });
                w.write_record([
                    r.k.to_string(),
                    r.a.to_string(),
                    join(&r.cuts, " "),
                    r.delta.to_string(),
                    r.c_l.to_string(),
                    r.c_r.to_string(),
                    d,
                    e,
                    r.lattice_agrees.to_string(),
                ])
                .map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
        }
        OutputFormat::Table => {
            writeln!(
                out,
                "{:>5} {:>5} {:>6} {:>4} {:>4} {:>12} {:>7}  Z",
                "k", "a", "delta", "c_L", "c_R", "count pair", "rays"
            )
            .map_err(io_err)?;
            for r in rows {
                let pair = r
                    .count_pair
                    .map_or("-".to_string(), |(d, e)| format!("({d},{e})"));
                let status = if r.failures.is_empty() { "" } else { "  FAIL" };
                writeln!(
                    out,
                    "{:>5} {:>5} {:>6} {:>4} {:>4} {:>12} {:>7}  {{{}}}{status}",
                    r.k,
                    r.a,
                    r.delta,
                    r.c_l,
                    r.c_r,
                    pair,
                    if r.lattice_agrees { "agree" } else { "differ" },
                    join(&r.cuts, ",")
                )
                .map_err(io_err)?;
            }
        }
    }
    Ok(())
}

/// Everything `cuts` reports for one `(k, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutsReport {
    pub profile: CutProfile,
    #[serde(rename = "N_minus_Z")]
    pub reflected: Vec<u64>,
    pub gaps: GapProfile,
    pub gap_graph: ReflectedGapGraph,
    pub rays: RaySystem,
}

pub fn cuts_report(k: u64, a: u64) -> Result<CutsReport> {
    let profile = cut_set(k, a)?;
    let gaps = gap_profile(&profile.cuts, profile.n)?;
    let gap_graph = reflected_gap_graph(&profile.cuts, profile.n)?;
    let rays = ray_system(k, profile.a)?;
    Ok(CutsReport {
        reflected: profile.reflected(),
        profile,
        gaps,
        gap_graph,
        rays,
    })
}

fn pairs(edges: &[(u64, u64)]) -> String {
    if edges.is_empty() {
        return "-".into();
    }
    edges
        .iter()
        .map(|(u, v)| format!("{u}+{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_cuts_report(r: &CutsReport, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, r).map_err(io_err)?;
            writeln!(out).map_err(io_err)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "k",
                "a",
                "Z",
                "N_minus_Z",
                "delta",
                "witness_u",
                "witness_v",
                "c_L",
                "c_R",
                "count_d",
                "count_e",
            ])
            .map_err(io_err)?;
            let p = &r.profile;
            let (d, e) = p
                .count_pair
                .map_or((String::new(), String::new()), |(d, e)| {
                    (d.to_string(), e.to_string())
                });
            w.write_record([
                p.k.to_string(),
                p.a.to_string(),
                join(&p.cuts, " "),
                join(&r.reflected, " "),
                p.delta.to_string(),
                p.witness.0.to_string(),
                p.witness.1.to_string(),
                r.gaps.c_l.to_string(),
                r.gaps.c_r.to_string(),
                d,
                e,
            ])
            .map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        OutputFormat::Table => {
            let p = &r.profile;
            let lines = [
                format!("Cay(Z_{}; {}, {})   N = {}", p.k, p.a, p.a + 1, p.n),
                format!("Z            {{{}}}", join(&p.cuts, ",")),
                format!("N - Z        {{{}}}", join(&r.reflected, ",")),
                format!(
                    "dist         {}  (witness {} + {} = {})",
                    p.delta,
                    p.witness.0,
                    p.witness.1,
                    p.witness.0 + p.witness.1
                ),
                format!(
                    "count pair   {}",
                    p.count_pair
                        .map_or("none".to_string(), |(d, e)| format!("({d}, {e})"))
                ),
                format!("caps         c_L = {}, c_R = {}", r.gaps.c_l, r.gaps.c_r),
                format!("half-gaps    [{}]", join(&r.gaps.lambdas, ",")),
                format!(
                    "gap graph    N-delta: {}   N+delta: {}",
                    pairs(&r.gap_graph.negative),
                    pairs(&r.gap_graph.positive)
                ),
            ];
            for l in lines {
                writeln!(out, "{l}").map_err(io_err)?;
            }
            write_rays_table(&r.rays, out)?;
        }
    }
    Ok(())
}

fn write_rays_table(rs: &RaySystem, out: &mut dyn Write) -> Result<()> {
    let p = &rs.params;
    writeln!(
        out,
        "rays         m = {}, n = {}, e = {}, L(x,y) = {}x + ({})y",
        p.m,
        p.n,
        p.e,
        p.m,
        p.n as i64 - p.e as i64
    )
    .map_err(io_err)?;
    writeln!(
        out,
        "{:>4} {:>10} {:>6} {:>4} {:>6}",
        "r", "ray", "L", "H", "U"
    )
    .map_err(io_err)?;
    for (i, (&ray, &h)) in rs.rays.iter().zip(&rs.mults).enumerate() {
        let u = rs.cut_values.get(i).map_or("-".to_string(), u64::to_string);
        writeln!(
            out,
            "{:>4} {:>10} {:>6} {:>4} {:>6}",
            i + 1,
            ray.to_string(),
            p.linear_form(ray),
            h,
            u
        )
        .map_err(io_err)?;
    }
    Ok(())
}

pub fn write_rays(rs: &RaySystem, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, rs).map_err(io_err)?;
            writeln!(out).map_err(io_err)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["r", "x", "y", "L", "H", "U"])
                .map_err(io_err)?;
            for (i, (&ray, &h)) in rs.rays.iter().zip(&rs.mults).enumerate() {
                let u = rs.cut_values.get(i).map_or(String::new(), u64::to_string);
                w.write_record([
                    (i + 1).to_string(),
                    ray.x.to_string(),
                    ray.y.to_string(),
                    rs.params.linear_form(ray).to_string(),
                    h.to_string(),
                    u,
                ])
                .map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
        }
        OutputFormat::Table => write_rays_table(rs, out)?,
    }
    Ok(())
}
