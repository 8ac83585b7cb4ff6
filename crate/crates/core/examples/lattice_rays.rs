// Ray description of a cut set, with sector masses and theta.

use cayley_pack::lattice::{cap2_bound_report, gap_profile, ray_system, theta};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rs = ray_system(15, 3)?;
    let p = rs.params;
    println!("k=15 a=3: m={} n={} e={} N={}", p.m, p.n, p.e, p.big_n);
    for (i, (ray, h)) in rs.rays.iter().zip(&rs.mults).enumerate() {
        println!(
            "  A_{} = {ray}  L = {:>2}  H = {h}",
            i + 1,
            p.linear_form(*ray)
        );
    }
    println!("cut values from rays: {:?}", rs.cut_values);

    let gaps = gap_profile(&rs.cut_values, p.big_n)?;
    println!(
        "c_L={} half-gaps={:?} c_R={}",
        gaps.c_l, gaps.lambdas, gaps.c_r
    );
    assert!(gaps.matches_rays(&rs));

    for c in cap2_bound_report(&rs) {
        println!(
            "cap 2 on the {:?}: ray {} has alpha={} mass={} >= {}",
            c.side,
            c.ray + 1,
            c.alpha,
            c.mass,
            c.bound
        );
    }
    println!("theta(3,5)={} theta(4,4)={}", theta(3, 5)?, theta(4, 4)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
