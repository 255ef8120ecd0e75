//! Solve a linear system over a mixed group and list the kernel generators.
//!
//! `cargo run --example solve_system`

use abelsim::exactalg::{q, RationalMatrix};
use abelsim::groups::{canonicalize, Factor, GroupSpec};
use abelsim::homs;
use abelsim::linsolve::{self, Feasibility};
use abelsim::Result;

fn main() -> Result<()> {
    // A: Z × T -> T × Z_6
    let g = GroupSpec::new(vec![Factor::Z, Factor::T])?;
    let h = GroupSpec::new(vec![Factor::T, Factor::ZN(6)])?;
    let a = homs::validate(&RationalMatrix::from_nested(vec![vec![q(1, 3), q(2, 1)], vec![q(2, 1), q(0, 1)]])?, &g, &h)?;
    let b = canonicalize(&[q(1, 2), q(4, 1)], &h)?;

    match linsolve::solve_group_system(&a, &b)? {
        Feasibility::Feasible(sol) => {
            println!("x0 = {}", sol.x0);
            println!("A x0 = {}", homs::apply(&a, &sol.x0)?);
            println!("kernel from {}:\n{:?}", sol.e.domain(), sol.e.matrix());
        }
        Feasibility::Infeasible => println!("no solution"),
    }

    let odd = canonicalize(&[q(0, 1), q(1, 1)], &h)?;
    println!("A x = {odd} feasible: {}", linsolve::solve_group_system(&a, &odd)?.is_feasible());
    Ok(())
}
