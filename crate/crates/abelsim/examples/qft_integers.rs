//! Fourier transform over Z: a basis state becomes a uniform state on the
//! circle T, which is sampled through a finite net.
//!
//! `cargo run --example qft_integers`

use abelsim::exactalg::q;
use abelsim::groups::{GroupElement, GroupSpec};
use abelsim::stabilizer::{self, Circuit, Gate};
use abelsim::{sampler, support, Result};

fn main() -> Result<()> {
    let g = GroupSpec::new(vec![abelsim::groups::Factor::Z])?;
    let c = Circuit::new(g.clone(), GroupElement::zero(&g), vec![Gate::PartialFourier(vec![0])])?;
    let desc = stabilizer::run_circuit(&c)?;
    let sup = support::support(&desc)?;
    println!("support: {}", sup.to_json());

    for eps in [q(1, 4), q(1, 16)] {
        let net = sampler::build_net(&sup.e_h, &eps, &[], &sup.x0)?;
        let pts = sampler::enumerate_net(&net, 1000)?;
        let shown: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
        println!("epsilon {eps}: {} points {}", pts.len(), shown.join(" "));
    }
    let net = sampler::build_net(&sup.e_h, &q(1, 64), &[], &sup.x0)?;
    for x in sampler::sample(&net, 7, 5) {
        println!("sample {x}");
    }
    Ok(())
}
