//! Quadratic functions: evaluation, the associated bicharacter and pulling
//! back along an automorphism.
//!
//! `cargo run --example quadratic`

use abelsim::exactalg::{q, RationalMatrix};
use abelsim::groups::{canonicalize, Factor, GroupSpec};
use abelsim::quadratic::{self, QuadraticFunc};
use abelsim::{homs, Result};

fn main() -> Result<()> {
    let g = GroupSpec::new(vec![Factor::Z, Factor::ZN(4)])?;
    let m = RationalMatrix::from_nested(vec![vec![q(1, 3), q(1, 4)], vec![q(1, 4), q(1, 4)]])?;
    let xi = QuadraticFunc::new(&g, m, vec![q(1, 3), q(1, 4)])?;
    let x = canonicalize(&[q(2, 1), q(3, 1)], &g)?;
    let y = canonicalize(&[q(-1, 1), q(1, 1)], &g)?;
    println!("xi(x) = {}", quadratic::evaluate(&xi, &x)?.exponent());
    println!("beta(x, y) = {}", quadratic::bicharacter(&xi, &x, &y)?.exponent());

    let shear = homs::validate(&RationalMatrix::from_ints(&[&[1, 0], &[1, 1]]), &g, &g)?;
    let pulled = quadratic::compose_with_automorphism(&xi, &shear)?;
    println!("pulled back: M = {:?}, v = {:?}", pulled.m(), pulled.v());
    println!("(xi∘a)(x) = {}", quadratic::evaluate(&pulled, &x)?.exponent());
    println!("xi(a x)   = {}", quadratic::evaluate(&xi, &homs::apply(&shear, &x)?)?.exponent());
    Ok(())
}
