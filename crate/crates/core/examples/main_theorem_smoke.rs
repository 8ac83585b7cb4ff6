// Every two-generated abelian group of order at most 8: each generating pair
// of distinct nonzero elements carries two arc-disjoint Hamiltonian paths.

use cayley_pack::oracle::find_arc_disjoint_pair;
use cayley_pack::{CayleyDigraph, FiniteAbelianGroup, DEFAULT_BUDGET};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let shapes: [&[u64]; 8] = [&[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4]];
    for orders in shapes {
        let g = FiniteAbelianGroup::new(orders.to_vec())?;
        let elems: Vec<_> = g.elements().filter(|x| *x != g.zero()).collect();
        let (mut pairs, mut found) = (0, 0);
        for a in &elems {
            for b in &elems {
                if a == b || !g.generates(&[a.clone(), b.clone()]) {
                    continue;
                }
                pairs += 1;
                let d = CayleyDigraph::new(g.clone(), a.clone(), b.clone())?;
                found += usize::from(find_arc_disjoint_pair(&d, DEFAULT_BUDGET)?.is_found());
            }
        }
        println!("Z{orders:?}: {found}/{pairs} generating pairs have a disjoint pair");
        assert_eq!(found, pairs);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
