// Build a witness file, read it back, verify it, then corrupt it.

use cayley_pack::witness::{build_witness, BuildRequest, WitnessFile};
use cayley_pack::{Label, DEFAULT_BUDGET};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w = build_witness(&BuildRequest::Two { a: 1, l: 2 }, DEFAULT_BUDGET)?;
    let json = w.to_json();
    print!("{json}");

    let back = WitnessFile::from_json(&json)?;
    println!("re-verified: {}", back.verify().passed());

    let mut bad = back.clone();
    bad.body.path2.labels[2] = Label::B;
    println!(
        "after flipping one label: {}",
        bad.verify().first_violation.unwrap_or_default()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
