//! Smith normal form of an integer matrix.
//!
//! `cargo run --example smith_form`

use abelsim::exactalg::{snf, RationalMatrix};
use abelsim::Result;

fn main() -> Result<()> {
    let a = RationalMatrix::from_ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let f = snf(&a)?;
    println!("S = {:?}", f.s);
    println!("diagonal = {:?}, rank {}", f.diagonal(), f.rank());
    assert_eq!(f.u.mul(&f.s).mul(&f.v), a);
    println!("U S V == A");
    Ok(())
}
