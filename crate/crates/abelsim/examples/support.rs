//! Run a circuit through the stabilizer pipeline and print its support.
//!
//! `cargo run --example support`

use abelsim::exactalg::q;
use abelsim::groups::{canonicalize, GroupSpec};
use abelsim::stabilizer::{self, Circuit, Gate};
use abelsim::{support, Result};

fn main() -> Result<()> {
    // Z_4 × Z_4, Fourier on the first register then SUM into the second.
    let g = GroupSpec::cyclic(&[4, 4]);
    let input = canonicalize(&[q(0, 1), q(1, 1)], &g)?;
    let sum = abelsim::homs::validate(&abelsim::exactalg::RationalMatrix::from_ints(&[&[1, 0], &[1, 1]]), &g, &g)?;
    let c = Circuit::new(g, input, vec![Gate::PartialFourier(vec![0]), Gate::Automorphism(sum)])?;

    let desc = stabilizer::run_circuit(&c)?;
    println!("final group: {}", desc.group_now());
    println!("lambda:\n{:?}", desc.lambda().matrix());
    let sup = support::support(&desc)?;
    println!("support: {}", sup.to_json());
    for x in ["0/1 1/1", "1/1 2/1", "2/1 1/1"] {
        let coords: Vec<_> = x.split(' ').map(|s| s.parse().unwrap()).collect();
        let e = canonicalize(&coords, desc.group_now())?;
        println!("{e} in support: {}", sup.contains(&e)?);
    }
    Ok(())
}
