//! Compare the stabilizer simulation of a Bell-type circuit with the dense
//! state-vector oracle.
//!
//! `cargo run --example oracle`

use abelsim::groups::{GroupElement, GroupSpec};
use abelsim::oracle;
use abelsim::stabilizer::{self, Circuit, Gate};
use abelsim::{homs, Result};

fn main() -> Result<()> {
    let g = GroupSpec::cyclic(&[3, 3]);
    let cnot = homs::validate(&abelsim::exactalg::RationalMatrix::from_ints(&[&[1, 0], &[1, 1]]), &g, &g)?;
    let c = Circuit::new(g.clone(), GroupElement::zero(&g), vec![Gate::PartialFourier(vec![0]), Gate::Automorphism(cnot)])?;

    let dense = oracle::dense_run(&c, oracle::DEFAULT_CAP)?;
    for (i, p) in dense.probabilities().into_iter().enumerate() {
        if p > oracle::SUPPORT_TOL {
            println!("{}: {p:.4}", oracle::element_at(&c.final_group()?, i)?);
        }
    }
    let desc = stabilizer::run_circuit(&c)?;
    let cmp = oracle::compare(&desc, &dense, 5000, 1, oracle::DEFAULT_CAP)?;
    println!("comparison: {cmp:?}");
    println!("stabilizer check: {:?}", oracle::check_stabilized(&desc, &dense)?);
    Ok(())
}
