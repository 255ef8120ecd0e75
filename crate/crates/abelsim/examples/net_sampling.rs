//! Build an epsilon-net for the image of a homomorphism into T × Z × Z_4 and
//! sample from it.
//!
//! `cargo run --example net_sampling`

use abelsim::exactalg::{q, RationalMatrix};
use abelsim::groups::{Factor, GroupElement, GroupSpec};
use abelsim::{homs, sampler, Result};

fn main() -> Result<()> {
    // E: R × Z -> T × Z × Z_4, t ↦ (t, 0, 0), k ↦ (k/3, 2k, k)
    let dom = GroupSpec::new(vec![Factor::R, Factor::Z])?;
    let cod = GroupSpec::new(vec![Factor::T, Factor::Z, Factor::ZN(4)])?;
    let e = homs::validate(
        &RationalMatrix::from_nested(vec![vec![q(1, 1), q(1, 3)], vec![q(0, 1), q(2, 1)], vec![q(0, 1), q(1, 1)]])?,
        &dom,
        &cod,
    )?;
    let net = sampler::build_net(&e, &q(1, 8), &[3], &GroupElement::zero(&cod))?;
    println!("{}", net.summary());
    for x in sampler::sample(&net, 11, 8) {
        println!("{x}");
    }
    Ok(())
}
