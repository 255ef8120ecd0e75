//! Acceptance criteria 1-8. Prints one line per criterion and exits nonzero
//! if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use abelsim::exactalg::{determinant, q, snf, Rational, RationalMatrix};
use abelsim::groups::{canonicalize, Factor, GroupElement, GroupSpec, Phase};
use abelsim::homs::{self, MatrixRep};
use abelsim::linsolve::{self, Feasibility};
use abelsim::oracle::{self, DenseState};
use abelsim::quadratic::{self, QuadraticFunc};
use abelsim::stabilizer::{self, Circuit, Gate, StabilizerDesc};
use abelsim::{random, sampler, support};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn el(g: &GroupSpec, x: &[Rational]) -> GroupElement {
    canonicalize(x, g).unwrap()
}

fn ints(g: &GroupSpec, x: &[i64]) -> GroupElement {
    el(g, &x.iter().map(|&v| Rational::from(v)).collect::<Vec<_>>())
}

fn c1_differential() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cap = oracle::DEFAULT_CAP;
    let mut total_support = 0usize;
    let mut min_p = 1.0f64;
    for k in 0..200 {
        let g = random::finite_group(&mut rng, 4, 512);
        let depth = rng.random_range(1..=12);
        let c = random::finite_circuit(&mut rng, &g, depth);
        let desc = stabilizer::run_circuit(&c).map_err(|e| format!("circuit {k}: {e}"))?;
        let dense = oracle::dense_run(&c, cap).map_err(|e| format!("circuit {k}: {e}"))?;
        let cmp = oracle::compare(&desc, &dense, 10_000, k, cap).map_err(|e| format!("circuit {k}: {e}"))?;
        match cmp {
            oracle::Comparison::Match { support_size, p_value } => {
                total_support += support_size;
                min_p = min_p.min(p_value);
            }
            other => return Err(format!("circuit {k} over {g}: {other:?}")),
        }
        if let Some(p) = oracle::check_stabilized(&desc, &dense).map_err(|e| e.to_string())? {
            return Err(format!("circuit {k}: state not stabilized by {p:?}"));
        }
    }
    Ok(format!("200 circuits, mean support {:.1}, min p {:.2e}", total_support as f64 / 200.0, min_p))
}

struct Qubits {
    group: GroupSpec,
    gates: Vec<(String, Gate)>,
}

fn qubit_gates(n: usize) -> Qubits {
    let g = GroupSpec::cyclic(&vec![2; n]);
    let mut gates = Vec::new();
    for i in 0..n {
        gates.push((format!("H{i}"), Gate::PartialFourier(vec![i])));
    }
    for i in 0..n {
        let mut m = RationalMatrix::zeros(n, n);
        m[(i, i)] = q(1, 2);
        let mut v = vec![Rational::zero(); n];
        v[i] = q(1, 2);
        gates.push((format!("S{i}"), Gate::QuadraticPhase(QuadraticFunc::new(&g, m, v).unwrap())));
    }
    if n == 2 {
        for (c, t) in [(0, 1), (1, 0)] {
            let mut a = RationalMatrix::identity(2);
            a[(t, c)] = Rational::one();
            gates.push((format!("CX{c}{t}"), Gate::Automorphism(homs::validate(&a, &g, &g).unwrap())));
        }
    }
    Qubits { group: g, gates }
}

fn c2_check(desc: &StabilizerDesc, dense: &DenseState, path: &[String]) -> Result<(), String> {
    let cmp = oracle::compare(desc, dense, 0, 0, oracle::DEFAULT_CAP).map_err(|e| format!("{path:?}: {e}"))?;
    ensure!(cmp.is_match(), "{path:?}: {cmp:?}");
    if let Some(p) = oracle::check_stabilized(desc, dense).map_err(|e| e.to_string())? {
        return Err(format!("{path:?}: not stabilized by {p:?}"));
    }
    Ok(())
}

fn c2_dfs(q: &Qubits, desc: &StabilizerDesc, dense: &DenseState, path: &mut Vec<String>, depth: usize, count: &mut usize) -> Result<(), String> {
    c2_check(desc, dense, path)?;
    *count += 1;
    if depth == 0 {
        return Ok(());
    }
    for (name, gate) in &q.gates {
        let d2 = stabilizer::apply_gate(desc, gate).map_err(|e| e.to_string())?;
        let s2 = oracle::apply_gate_dense(dense, gate, oracle::DEFAULT_CAP).map_err(|e| e.to_string())?;
        path.push(name.clone());
        c2_dfs(q, &d2, &s2, path, depth - 1, count)?;
        path.pop();
    }
    Ok(())
}

fn c2_gottesman_knill() -> Outcome {
    let mut count = 0;
    for n in [1, 2] {
        let qb = qubit_gates(n);
        let zero = GroupElement::zero(&qb.group);
        let desc = stabilizer::initial_state(&qb.group, &zero).map_err(|e| e.to_string())?;
        let dense = DenseState::basis(&qb.group, &zero, oracle::DEFAULT_CAP).map_err(|e| e.to_string())?;
        c2_dfs(&qb, &desc, &dense, &mut Vec::new(), 6, &mut count)?;
    }
    Ok(format!("{count} circuits of depth <= 6 on 1 and 2 qubits"))
}

/// Circular distance on T.
fn circle_dist(a: &Rational, b: &Rational) -> Rational {
    let d = (a - b).modulo(&Rational::one());
    let e = Rational::one() - &d;
    if d < e {
        d
    } else {
        e
    }
}

fn c3_qft_tables() -> Outcome {
    // Z, |0⟩, QFT: support is all of T.
    let z = GroupSpec::new(vec![Factor::Z]).unwrap();
    let c = Circuit::new(z.clone(), ints(&z, &[0]), vec![Gate::PartialFourier(vec![0])]).map_err(|e| e.to_string())?;
    let sup = support::support(&stabilizer::run_circuit(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure!(sup.domain_dims() == (1, 0), "expected one real generator, got {:?}", sup.domain_dims());
    let t = sup.group().clone();
    let net = sampler::build_net(&sup.e_h, &q(1, 8), &[], &sup.x0).map_err(|e| e.to_string())?;
    let pts = sampler::enumerate_net(&net, 1000).map_err(|e| e.to_string())?;
    ensure!(pts.len() == 4, "expected a 4-point net, got {}", pts.len());
    for k in 0..80 {
        let x = q(k, 80);
        ensure!(sup.contains(&el(&t, std::slice::from_ref(&x))).map_err(|e| e.to_string())?, "{x} not in support");
        let best = pts.iter().map(|p| circle_dist(&p.coords()[0], &x)).min().unwrap();
        ensure!(best <= q(1, 8), "grid point {x} at distance {best} from the net");
    }

    // Comb on T: Σ_k |k/3⟩|k⟩ from T × Z_3 via QFT on Z_3 and t += k/3.
    let g = GroupSpec::new(vec![Factor::T, Factor::ZN(3)]).unwrap();
    let shear = homs::validate(&RationalMatrix::from_nested(vec![vec![q(1, 1), q(1, 3)], vec![q(0, 1), q(1, 1)]]).unwrap(), &g, &g)
        .map_err(|e| e.to_string())?;
    let c = Circuit::new(g.clone(), ints(&g, &[0, 0]), vec![Gate::PartialFourier(vec![1]), Gate::Automorphism(shear)])
        .map_err(|e| e.to_string())?;
    let sup = support::support(&stabilizer::run_circuit(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let net = sampler::build_net(&sup.e_h, &q(1, 8), &[], &sup.x0).map_err(|e| e.to_string())?;
    let pts = sampler::enumerate_net(&net, 1000).map_err(|e| e.to_string())?;
    let ts: BTreeSet<Rational> = pts.iter().map(|p| p.coords()[0].clone()).collect();
    let want: BTreeSet<Rational> = [q(0, 1), q(1, 3), q(2, 3)].into_iter().collect();
    ensure!(pts.len() == 3 && ts == want, "comb support {pts:?}");
    Ok("Z QFT support = T, 4-point net covers 80-point grid at 1/8; comb support {0, 1/3, 2/3}".into())
}

/// Dual certificate for infeasibility: a character trivial on im A but not on b.
fn separating_character(a: &MatrixRep, b: &GroupElement) -> Result<bool, String> {
    let ker = linsolve::kernel(&homs::dual(a)).map_err(|e| e.to_string())?;
    let dom = ker.domain();
    for j in 0..dom.m() {
        let col = ker.matrix().col(j);
        let ups = b.group().upsilon();
        let pairing: Rational = col.iter().zip(b.coords()).zip(&ups).map(|((m, x), u)| m * x * u).sum();
        let nontrivial = if dom.factor(j) == Factor::R { !pairing.is_zero() } else { !pairing.is_integer() };
        if nontrivial {
            return Ok(true);
        }
    }
    Ok(false)
}

fn all_elements(g: &GroupSpec) -> Vec<GroupElement> {
    let n = g.order().unwrap() as usize;
    (0..n).map(|i| oracle::element_at(g, i).unwrap()).collect()
}

fn span(e: &MatrixRep) -> BTreeSet<GroupElement> {
    let h = e.codomain();
    let gens: Vec<GroupElement> = (0..e.domain().m()).map(|j| el(h, &e.matrix().col(j))).collect();
    let mut seen: BTreeSet<GroupElement> = [GroupElement::zero(h)].into_iter().collect();
    let mut frontier: Vec<GroupElement> = seen.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.add(g).unwrap();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn c4_solver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut feasible, mut infeasible, mut finite) = (0, 0, 0);
    for k in 0..500 {
        let all_finite = k % 2 == 0;
        let (g, h) = if all_finite {
            (random::finite_group(&mut rng, 3, 36), random::finite_group(&mut rng, 3, 36))
        } else {
            let n = rng.random_range(1..=6);
            let m = rng.random_range(1..=6);
            (random::circuit_group(&mut rng, n), random::circuit_group(&mut rng, m))
        };
        let a = random::hom(&mut rng, &g, &h);
        let b = if rng.random_bool(0.5) {
            homs::apply(&a, &random::element(&mut rng, &g)).unwrap()
        } else {
            random::element(&mut rng, &h)
        };
        let sol = linsolve::solve_group_system(&a, &b).map_err(|e| format!("system {k}: {e}"))?;
        let brute = all_finite.then(|| all_elements(&g));
        match sol {
            Feasibility::Feasible(s) => {
                feasible += 1;
                ensure!(homs::apply(&a, &s.x0).unwrap() == b, "system {k}: A x0 != b");
                for _ in 0..100 {
                    let w = random::element(&mut rng, s.e.domain());
                    let x = homs::apply(&s.e, &w).unwrap();
                    ensure!(homs::apply(&a, &x).unwrap().is_zero(), "system {k}: A E(w) != 0 at {w}");
                }
                if let Some(all) = brute {
                    finite += 1;
                    let kernel: BTreeSet<GroupElement> = all.into_iter().filter(|x| homs::apply(&a, x).unwrap().is_zero()).collect();
                    ensure!(kernel == span(&s.e), "system {k}: kernel mismatch");
                }
            }
            Feasibility::Infeasible => {
                infeasible += 1;
                if let Some(all) = brute {
                    finite += 1;
                    ensure!(all.iter().all(|x| homs::apply(&a, x).unwrap() != b), "system {k}: brute force finds a solution");
                } else {
                    ensure!(separating_character(&a, &b)?, "system {k}: no separating character for infeasible verdict");
                }
            }
        }
    }
    Ok(format!("500 systems: {feasible} feasible, {infeasible} infeasible, {finite} brute-forced"))
}

fn c5_snf() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..500 {
        let r = rng.random_range(1..=8);
        let c = rng.random_range(1..=8);
        let a = RationalMatrix::from_fn(r, c, |_, _| Rational::from(rng.random_range(-100i64..=100)));
        let s = snf(&a).map_err(|e| e.to_string())?;
        ensure!(s.u.mul(&s.s).mul(&s.v) == a, "matrix {k}: USV != A");
        for (m, inv) in [(&s.u, &s.u_inv), (&s.v, &s.v_inv)] {
            ensure!(m.is_integral() && inv.is_integral(), "matrix {k}: non-integral multiplier");
            ensure!(determinant(m).abs() == Rational::one(), "matrix {k}: multiplier not unimodular");
            ensure!(m.mul(inv) == RationalMatrix::identity(m.rows()), "matrix {k}: inverse mismatch");
        }
        let d = s.diagonal();
        for i in 0..r {
            for j in 0..c {
                ensure!(i == j || s.s[(i, j)].is_zero(), "matrix {k}: S not diagonal");
            }
        }
        ensure!(d.iter().all(|x| !x.is_negative()), "matrix {k}: negative invariant factor");
        for w in d.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure!(ok, "matrix {k}: divisibility fails for {:?}", d);
        }
    }
    Ok("500 matrices: USV = A, unimodular, divisibility chain".into())
}

fn c6_quadratic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..100 {
        let m = rng.random_range(1..=5);
        let g = random::circuit_group(&mut rng, m);
        let qf = random::quadratic(&mut rng, &g);
        for _ in 0..1000 {
            let x = random::element(&mut rng, &g);
            let y = random::element(&mut rng, &g);
            let lhs = quadratic::evaluate(&qf, &x.add(&y).unwrap())
                .unwrap()
                .mul(&quadratic::evaluate(&qf, &x).unwrap().conj())
                .mul(&quadratic::evaluate(&qf, &y).unwrap().conj());
            let gmh: Rational = (0..m).map(|i| (0..m).map(|j| &x.coords()[i] * &qf.m()[(i, j)] * &y.coords()[j]).sum::<Rational>()).sum();
            ensure!(lhs == Phase::from_turns(&gmh), "function {k} at {x}, {y}: {lhs} vs e^(2πi {gmh})");
            let base = quadratic::evaluate(&qf, &x).unwrap();
            for (i, f) in g.factors().iter().enumerate() {
                let c = Rational::from_int(f.characteristic());
                if c.is_zero() {
                    continue;
                }
                let mut shifted = x.coords().to_vec();
                shifted[i] += &c;
                ensure!(quadratic::evaluate_raw(&qf, &shifted) == base, "function {k}: shift of coordinate {i} changes the value");
            }
        }
    }
    Ok("100 functions x 1000 pairs: bicharacter law and shift invariance exact".into())
}

fn c7_conjugation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cap = oracle::DEFAULT_CAP;
    let mut checked = 0;
    for kind in 0..3 {
        for _ in 0..4 {
            let g = random::finite_group(&mut rng, 3, 64);
            let gate = match kind {
                0 => Gate::Automorphism(random::automorphism(&mut rng, &g, 4)),
                1 => Gate::QuadraticPhase(random::quadratic(&mut rng, &g)),
                _ => Gate::PartialFourier((0..g.m()).filter(|_| rng.random_bool(0.6)).collect()),
            };
            let u = oracle::gate_matrix(&gate, &g, cap).map_err(|e| e.to_string())?;
            let ud = u.adjoint();
            for _ in 0..50 {
                let p = random::pauli(&mut rng, &g);
                let dense = u.mul(&oracle::pauli_matrix(&p, cap).unwrap()).mul(&ud);
                let sym = stabilizer::conjugate_pauli(&gate, &p).map_err(|e| e.to_string())?;
                let diff = dense.max_diff(&oracle::pauli_matrix(&sym, cap).unwrap());
                ensure!(diff < oracle::TOLERANCE, "{gate:?} on {p:?}: entrywise difference {diff}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} conjugations over groups of order <= 64"))
}

fn c8_scale() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = random::circuit_group(&mut rng, 20);
    let c = random::circuit(&mut rng, &g, 100);
    let start = Instant::now();
    let opts = abelsim::cli::SampleOptions::resolve(None, None, None, Some(1000), Some(1));
    let mut out = Vec::new();
    abelsim::cli::simulate(&c, &opts, &mut out).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let lines = out.split(|b| *b == b'\n').filter(|l| !l.is_empty()).count();
    ensure!(lines == 1001, "expected header plus 1000 samples, got {lines} lines");
    ensure!(took < Duration::from_secs(10), "took {took:?}");
    Ok(format!("m = 20 over {g}, 100 gates, 1000 samples in {:.2}s", took.as_secs_f64()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("differential vs dense oracle", c1_differential),
        ("1-2 qubit Clifford circuits", c2_gottesman_knill),
        ("QFT over Z and the T comb", c3_qft_tables),
        ("group-linear solver", c4_solver),
        ("Smith normal form", c5_snf),
        ("quadratic functions", c6_quadratic),
        ("Pauli conjugation", c7_conjugation),
        ("scale smoke test", c8_scale),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
