// Hamiltonian cut set of Cay(Z_k; a, a+1) and a disjoint pair built from it.

use cayley_pack::family_one::{cut_path, cut_set, realize_disjoint_pair};
use cayley_pack::DEFAULT_BUDGET;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (k, a) in [(5, 2), (6, 2), (10, 4), (15, 3)] {
        let p = cut_set(k, a)?;
        println!(
            "k={k:>2} a={a}  Z={:?}  N-Z={:?}  dist={}",
            p.cuts,
            p.reflected(),
            p.delta
        );
    }

    let (k, a) = (10, 4);
    let d = cut_set(k, a)?.cuts[1];
    println!(
        "P_{d} in Cay(Z_{k}; {a}, {}) = start {} labels {}",
        a + 1,
        a,
        cut_path(k, a, d)?.label_string()
    );

    let r = realize_disjoint_pair(k, a, DEFAULT_BUDGET)?;
    println!("pair via {:?} (cuts {:?}):", r.stage, r.cuts);
    println!("  {} {}", r.paths.0.start, r.paths.0.label_string());
    println!("  {} {}", r.paths.1.start, r.paths.1.label_string());
    assert!(r.digraph.verify_pair(&r.paths.0, &r.paths.1).is_none());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
