// Strongly switchable pairs in C_m x C_n and their lift to C_m x C_n x C_l.

use cayley_pack::products::{
    build_three_factor, find_strongly_switchable_pair, is_strongly_switchable, lift_through_cycle,
    product_digraph,
};
use cayley_pack::DEFAULT_BUDGET;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base = product_digraph(&[2, 3])?;
    let (p, q) = find_strongly_switchable_pair(&base, DEFAULT_BUDGET)?
        .found()
        .ok_or("no switchable pair in C_2 x C_3")?;
    let report = is_strongly_switchable(&base, &p, &q)?;
    println!("P = {} {}", p.start, p.label_string());
    println!("Q = {} {}", q.start, q.label_string());
    println!(
        "alpha={} beta={} gamma={}",
        report.data.alpha, report.data.beta, report.data.gamma
    );

    let (lifted, one, two) = lift_through_cycle(&base, &p, &q, 3)?;
    println!(
        "lifted to {} vertices:\n  {}\n  {}",
        lifted.order(),
        one.label_string(),
        two.label_string()
    );

    let b = build_three_factor(4, 4, 5, DEFAULT_BUDGET)?;
    println!(
        "C_4 x C_4 x C_5 via {:?}: {} vertices",
        b.strategy,
        b.digraph.order()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
