//! Time a random 20-register, 100-gate circuit end to end.
//!
//! `cargo run --release --example scale`

use std::time::Instant;

use abelsim::exactalg::q;
use abelsim::{random, sampler, stabilizer, support, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = random::circuit_group(&mut rng, 20);
    let c = random::circuit(&mut rng, &g, 100);
    println!("group {g}");

    let t = Instant::now();
    let desc = stabilizer::run_circuit(&c)?;
    println!("circuit: {:?}", t.elapsed());

    let t = Instant::now();
    let sup = support::support(&desc)?;
    println!("support: {:?}, domain dims {:?}", t.elapsed(), sup.domain_dims());

    let t = Instant::now();
    let net = sampler::build_net(&sup.e_h, &q(1, 64), &[], &sup.x0)?;
    println!("net: {:?}, {} points", t.elapsed(), net.point_count());

    let t = Instant::now();
    let xs = sampler::sample(&net, 1, 1000);
    println!("1000 samples: {:?}", t.elapsed());
    println!("first sample has {} coordinates", xs[0].coords().len());
    Ok(())
}
