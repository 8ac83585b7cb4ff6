// Quotient-position covers of Cay(Z_k; -a, a+1), k = (2a+1)L, and the splice.

use cayley_pack::family_two::{build_family_two, skew_cover, QuotientFiberConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuotientFiberConfig::canonical(1, 2)?;
    println!("P cover cycles: {:?}", skew_cover(&cfg).cycles);
    println!("Q cover cycles: {:?}", skew_cover(&cfg.complement()).cycles);

    let b = build_family_two(1, 2)?;
    let (u, v) = b.splice.expect("even L splices");
    println!("splice arc {u} -> {v}");
    for w in [&b.paths.0, &b.paths.1] {
        let vs: Vec<String> = b
            .digraph
            .vertices(w)?
            .iter()
            .map(|x| x.to_string())
            .collect();
        println!("  {}", vs.join(" -> "));
    }

    for (a, l) in [(2, 3), (3, 4), (5, 7)] {
        let b = build_family_two(a, l)?;
        println!(
            "a={a} L={l}: k={} verified, Q cover has {} cycle(s)",
            b.digraph.order(),
            b.cover_q.cycles.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
