//! Drive the command-line interface in-process on the bundled circuits.
//!
//! `cargo run --example cli`

use std::io;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/circuits");
    let runs: [&[&str]; 4] = [
        &["validate", "--circuit", "mixed.json"],
        &["support", "--circuit", "comb.json"],
        &["simulate", "--circuit", "bell.json", "--count", "4"],
        &["oracle-check", "--circuit", "sum_z4.json", "--count", "2000"],
    ];
    for args in runs {
        let args: Vec<String> =
            args.iter().map(|a| if a.ends_with(".json") { format!("{dir}/{a}") } else { a.to_string() }).collect();
        println!("$ abelsim {}", args.join(" "));
        let code = abelsim::cli::run(std::iter::once("abelsim".to_string()).chain(args), &mut io::stdout(), &mut io::stderr());
        println!("exit {code}\n");
    }
}
