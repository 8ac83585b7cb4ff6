// Exhaustive search on an arbitrary small two-generated abelian Cayley digraph.

use cayley_pack::oracle::{find_arc_disjoint_pair, find_hamiltonian_cycle, oracle_cut_set};
use cayley_pack::{CayleyDigraph, FiniteAbelianGroup, SearchOutcome, DEFAULT_BUDGET};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = FiniteAbelianGroup::new(vec![2, 6])?;
    let d = CayleyDigraph::new(g.clone(), g.element(&[1, 1])?, g.element(&[0, 1])?)?;
    match find_arc_disjoint_pair(&d, DEFAULT_BUDGET)? {
        SearchOutcome::Found((p, q)) => {
            println!("Z_2 x Z_6 with (1,1), (0,1):");
            println!("  {} {}", p.start, p.label_string());
            println!("  {} {}", q.start, q.label_string());
        }
        other => println!("no pair: {other:?}"),
    }
    let cycle = find_hamiltonian_cycle(&d, DEFAULT_BUDGET)?;
    println!("Hamiltonian cycle found: {}", cycle.is_found());
    println!(
        "cut set of (10,4) by direct walking: {:?}",
        oracle_cut_set(10, 4)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
