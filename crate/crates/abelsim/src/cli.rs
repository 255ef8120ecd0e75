//! Command-line driver and the JSON circuit file format.
//!
//! ```json
//! {"group": ["Z", "T", {"ZN": 4}],
//!  "input": ["0", "1/2", "3"],
//!  "gates": [{"automorphism": [["1","0","0"],["0","1","0"],["0","0","1"]]},
//!            {"quadratic": {"M": [["1/2","0","0"],["0","0","0"],["0","0","0"]], "v": ["0","0","0"]}},
//!            {"fourier": [0]}],
//!  "sampling": {"epsilon": "1/64", "delta": [10], "count": 1000, "seed": 7}}
//! ```

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix};
use crate::groups::{canonicalize, GroupSpec};
use crate::homs;
use crate::oracle::{self, Comparison};
use crate::quadratic::QuadraticFunc;
use crate::sampler;
use crate::stabilizer::{self, Circuit, Gate, StabilizerDesc};
use crate::support;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

pub const DEFAULT_COUNT: usize = 1000;
pub const DEFAULT_ORACLE_SAMPLES: usize = 10_000;

pub fn default_epsilon() -> Rational {
    Rational::new(1, 64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateFile {
    Automorphism(RationalMatrix),
    Quadratic {
        #[serde(rename = "M")]
        m: RationalMatrix,
        v: Vec<Rational>,
    },
    Fourier(Vec<usize>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub group: GroupSpec,
    pub input: Vec<Rational>,
    #[serde(default)]
    pub gates: Vec<GateFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingFile>,
}

impl CircuitFile {
    pub fn parse(text: &str) -> Result<CircuitFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<CircuitFile> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        CircuitFile::parse(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Validate every gate against the group it acts on.
    pub fn to_circuit(&self) -> Result<Circuit> {
        self.group.ensure_circuit()?;
        let input = canonicalize(&self.input, &self.group)?;
        let mut g = self.group.clone();
        let mut gates = Vec::with_capacity(self.gates.len());
        for gf in &self.gates {
            let gate = match gf {
                GateFile::Automorphism(a) => Gate::Automorphism(homs::validate(a, &g, &g)?),
                GateFile::Quadratic { m, v } => Gate::QuadraticPhase(QuadraticFunc::new(&g, m.clone(), v.clone())?),
                GateFile::Fourier(regs) => Gate::PartialFourier(regs.clone()),
            };
            g = gate.output_group(&g)?;
            gates.push(gate);
        }
        Circuit::new(self.group.clone(), input, gates)
    }

    pub fn from_circuit(c: &Circuit) -> CircuitFile {
        let gates = c
            .gates
            .iter()
            .map(|g| match g {
                Gate::Automorphism(a) => GateFile::Automorphism(a.matrix().clone()),
                Gate::QuadraticPhase(q) => GateFile::Quadratic { m: q.m().clone(), v: q.v().to_vec() },
                Gate::PartialFourier(r) => GateFile::Fourier(r.clone()),
            })
            .collect();
        CircuitFile { group: c.group0.clone(), input: c.input.coords().to_vec(), gates, sampling: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

#[derive(Parser, Debug)]
#[command(name = "abelsim", version, about = "Exact simulation of normalizer circuits over elementary Abelian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the circuit, print the support and sample measurement outcomes.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        epsilon: Option<Rational>,
        #[arg(long, value_delimiter = ',')]
        delta: Option<Vec<u64>>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the circuit and print its chain of groups.
    Validate {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Print the support of the output state.
    Support {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare against the dense simulator (finite groups only).
    OracleCheck {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Sampling parameters after merging flags, file and defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    pub epsilon: Rational,
    pub deltas: Vec<u64>,
    pub count: usize,
    pub seed: u64,
}

impl SampleOptions {
    pub fn resolve(file: Option<&SamplingFile>, epsilon: Option<Rational>, delta: Option<Vec<u64>>, count: Option<usize>, seed: Option<u64>) -> SampleOptions {
        let f = file.cloned().unwrap_or_default();
        SampleOptions {
            epsilon: epsilon.or(f.epsilon).unwrap_or_else(default_epsilon),
            deltas: delta.or(f.delta).unwrap_or_default(),
            count: count.or(f.count).unwrap_or(DEFAULT_COUNT),
            seed: seed.or(f.seed).unwrap_or(0),
        }
    }
}

fn open_out<'a>(out: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    match out {
        Some(p) => {
            let f = File::create(p).map_err(|source| Error::Io { path: p.display().to_string(), source })?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(stdout)),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io { path: "<output>".into(), source: e }
}

/// Header line plus `count` sample lines.
pub fn simulate(c: &Circuit, opts: &SampleOptions, w: &mut dyn Write) -> Result<()> {
    let desc = stabilizer::run_circuit(c)?;
    let sup = support::support(&desc)?;
    let net = sampler::build_net(&sup.e_h, &opts.epsilon, &opts.deltas, &sup.x0)?;
    let header = json!({ "support": sup.to_json(), "net": net.summary(), "seed": opts.seed, "count": opts.count });
    writeln!(w, "{header}").map_err(io_err)?;
    for x in sampler::sample(&net, opts.seed, opts.count) {
        writeln!(w, "{}", json!({ "sample": x.coords() })).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Human-readable group chain, after full validation including invertibility.
pub fn validate(c: &Circuit) -> Result<String> {
    for g in &c.gates {
        if let Gate::Automorphism(a) = g {
            homs::invert_automorphism(a)?;
        }
    }
    let chain = c.group_chain()?;
    if chain.iter().all(|g| *g == chain[0]) {
        return Ok(format!("{} (unchanged × {} gates)", chain[0], c.gates.len()));
    }
    Ok(chain.iter().enumerate().map(|(t, g)| format!("G({t}) = {g}")).collect::<Vec<_>>().join("\n"))
}

/// Compare the stabilizer description produced by `desc_of` with the dense
/// oracle. Returns the exit code and writes one JSON report line.
pub fn oracle_check_with(
    c: &Circuit,
    samples: usize,
    seed: u64,
    desc_of: impl Fn(&Circuit) -> Result<StabilizerDesc>,
    w: &mut dyn Write,
) -> Result<i32> {
    let cap = oracle::oracle_cap();
    let dense = oracle::dense_run(c, cap)?;
    let desc = desc_of(c)?;
    let cmp = oracle::compare(&desc, &dense, samples, seed, cap)?;
    let (code, report) = match &cmp {
        Comparison::Match { support_size, p_value } => {
            (EXIT_OK, json!({ "result": "match", "support_size": support_size, "p_value": p_value }))
        }
        Comparison::SupportMismatch { element, in_stabilizer } => (
            EXIT_MISMATCH,
            json!({ "result": "support mismatch", "element": element.coords(), "only_in": if *in_stabilizer { "stabilizer" } else { "dense" } }),
        ),
        Comparison::NotUniform { element } => {
            (EXIT_MISMATCH, json!({ "result": "dense distribution not uniform", "element": element.coords() }))
        }
        Comparison::Frequencies { p_value } => (EXIT_MISMATCH, json!({ "result": "frequency test failed", "p_value": p_value })),
    };
    writeln!(w, "{report}").map_err(io_err)?;
    w.flush().map_err(io_err)?;
    Ok(code)
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Simulate { circuit, epsilon, delta, count, seed, out } => {
            let file = CircuitFile::load(&circuit)?;
            let c = file.to_circuit()?;
            let opts = SampleOptions::resolve(file.sampling.as_ref(), epsilon, delta, count, seed);
            let mut w = open_out(out.as_deref(), stdout)?;
            simulate(&c, &opts, &mut w)?;
        }
        Command::Validate { circuit } => {
            let c = CircuitFile::load(&circuit)?.to_circuit()?;
            writeln!(stdout, "{}", validate(&c)?).map_err(io_err)?;
        }
        Command::Support { circuit, out } => {
            let c = CircuitFile::load(&circuit)?.to_circuit()?;
            let sup = support::support(&stabilizer::run_circuit(&c)?)?;
            let mut w = open_out(out.as_deref(), stdout)?;
            writeln!(w, "{}", sup.to_json()).map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        Command::OracleCheck { circuit, count, seed, out } => {
            let file = CircuitFile::load(&circuit)?;
            let c = file.to_circuit()?;
            let sampling = file.sampling.unwrap_or_default();
            let samples = count.unwrap_or(DEFAULT_ORACLE_SAMPLES);
            let mut w = open_out(out.as_deref(), stdout)?;
            return oracle_check_with(&c, samples, seed.or(sampling.seed).unwrap_or(0), stabilizer::run_circuit, &mut w);
        }
    }
    Ok(EXIT_OK)
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(Error::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = r#"{"group":["Z",{"ZN":4}],"input":["2","3"],
            "gates":[{"fourier":[0]},{"quadratic":{"M":[["1/2","0"],["0","0"]],"v":["0","0"]}}]}"#;
        let f = CircuitFile::parse(text).unwrap();
        assert!(f.to_circuit().is_err());
        let text = r#"{"group":["Z",{"ZN":4}],"input":["2","3"],
            "gates":[{"quadratic":{"M":[["1/2","0"],["0","0"]],"v":["1/2","0"]}},{"fourier":[0]}]}"#;
        let f = CircuitFile::parse(text).unwrap();
        let c = f.to_circuit().unwrap();
        let again = CircuitFile::parse(&CircuitFile::from_circuit(&c).to_json()).unwrap();
        assert_eq!(again, f);
        assert_eq!(validate(&c).unwrap(), "G(0) = Z × Z_4\nG(1) = Z × Z_4\nG(2) = T × Z_4");
    }

    #[test]
    fn bad_rational_is_parse_error() {
        let e = CircuitFile::parse(r#"{"group":["Z"],"input":["1/0"]}"#).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_PARSE);
        assert!(e.to_string().contains("column"), "{e}");
    }

    #[test]
    fn options_precedence() {
        let file = SamplingFile { epsilon: Some(Rational::new(1, 8)), delta: None, count: Some(5), seed: Some(3) };
        let o = SampleOptions::resolve(Some(&file), None, Some(vec![2]), None, Some(9));
        assert_eq!(o, SampleOptions { epsilon: Rational::new(1, 8), deltas: vec![2], count: 5, seed: 9 });
        let d = SampleOptions::resolve(None, None, None, None, None);
        assert_eq!(d.epsilon, default_epsilon());
        assert_eq!(d.count, DEFAULT_COUNT);
    }
}
