//! Seeded generators for groups, homomorphisms, quadratic functions and
//! circuits. Used by the tests, the examples and the pointwise checks.

use num_integer::Integer;
use rand::Rng;

use crate::exactalg::{Rational, RationalMatrix};
use crate::groups::{canonicalize, Factor, GroupElement, GroupSpec};
use crate::homs::{self, MatrixRep};
use crate::quadratic::QuadraticFunc;
use crate::stabilizer::{Circuit, Gate, PauliOp};
use crate::groups::Phase;

fn small_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    Rational::new(rng.random_range(-max_num..=max_num), rng.random_range(1..=max_den))
}

/// Random element in canonical form. Continuous coordinates are drawn from a
/// grid of small denominators.
pub fn element<R: Rng + ?Sized>(rng: &mut R, g: &GroupSpec) -> GroupElement {
    let x: Vec<Rational> = g
        .factors()
        .iter()
        .map(|f| match f {
            Factor::Z => Rational::from(rng.random_range(-6i64..=6)),
            Factor::ZN(n) => Rational::from(rng.random_range(0..*n)),
            Factor::T => Rational::new(rng.random_range(0i64..60), 60),
            Factor::R => small_rational(rng, 12, 6),
        })
        .collect();
    canonicalize(&x, g).expect("coordinates are integral where required")
}

/// Product of `1..=max_factors` cyclic groups with order at most `max_order`.
pub fn finite_group<R: Rng + ?Sized>(rng: &mut R, max_factors: usize, max_order: u64) -> GroupSpec {
    let k = rng.random_range(1..=max_factors);
    let mut ns = Vec::new();
    let mut order = 1u64;
    for _ in 0..k {
        let cap = (max_order / order).min(7);
        if cap < 2 {
            break;
        }
        let n = rng.random_range(2..=cap);
        order *= n;
        ns.push(n);
    }
    if ns.is_empty() {
        ns.push(2);
    }
    GroupSpec::cyclic(&ns)
}

/// Circuit group with `m` factors mixing `Z`, `T` and `Z_N`.
pub fn circuit_group<R: Rng + ?Sized>(rng: &mut R, m: usize) -> GroupSpec {
    let f = (0..m)
        .map(|_| match rng.random_range(0..3) {
            0 => Factor::Z,
            1 => Factor::T,
            _ => Factor::ZN(rng.random_range(2..=6)),
        })
        .collect();
    GroupSpec::new(f).expect("valid factors")
}

/// A random entry allowed at row `codomain`, column `domain` of a matrix
/// representation. Zero on forbidden pairs.
pub fn hom_entry<R: Rng + ?Sized>(rng: &mut R, codomain: Factor, domain: Factor) -> Rational {
    if homs::forbidden(codomain, domain) {
        return Rational::zero();
    }
    match (codomain, domain) {
        (Factor::Z, _) | (Factor::ZN(_), Factor::Z) => Rational::from(rng.random_range(-3i64..=3)),
        (Factor::ZN(n), Factor::ZN(m)) => Rational::from((n / n.gcd(&m)) as i64 * rng.random_range(-3i64..=3)),
        (Factor::T, Factor::ZN(m)) => Rational::new(rng.random_range(0..m as i64), m as i64),
        (Factor::T, Factor::T) => Rational::from(rng.random_range(-2i64..=2)),
        _ => small_rational(rng, 6, 6),
    }
}

/// Random homomorphism `g -> h`; each entry is zero with probability 1/2.
pub fn hom<R: Rng + ?Sized>(rng: &mut R, g: &GroupSpec, h: &GroupSpec) -> MatrixRep {
    let a = RationalMatrix::from_fn(h.m(), g.m(), |i, j| {
        if rng.random_bool(0.5) {
            Rational::zero()
        } else {
            hom_entry(rng, h.factor(i), g.factor(j))
        }
    });
    homs::validate(&a, g, h).expect("entries chosen from valid ranges")
}

/// Product of `steps` elementary automorphisms: shears, negations, unit
/// multiples on `Z_N` and swaps of equal factors.
pub fn automorphism<R: Rng + ?Sized>(rng: &mut R, g: &GroupSpec, steps: usize) -> MatrixRep {
    let m = g.m();
    let mut acc = RationalMatrix::identity(m);
    for _ in 0..steps {
        let mut e = RationalMatrix::identity(m);
        match rng.random_range(0..4) {
            0 if m >= 2 => {
                let i = rng.random_range(0..m);
                let j = (i + rng.random_range(1..m)) % m;
                e[(j, i)] = hom_entry(rng, g.factor(j), g.factor(i));
            }
            1 => {
                let i = rng.random_range(0..m);
                e[(i, i)] = -Rational::one();
            }
            2 => {
                let i = rng.random_range(0..m);
                if let Factor::ZN(n) = g.factor(i) {
                    let units: Vec<u64> = (1..n.max(2)).filter(|u| u.gcd(&n) == 1).collect();
                    if let Some(u) = units.get(rng.random_range(0..units.len().max(1))) {
                        e[(i, i)] = Rational::from(*u);
                    }
                }
            }
            _ if m >= 2 => {
                let i = rng.random_range(0..m);
                let j = rng.random_range(0..m);
                if i != j && g.factor(i) == g.factor(j) {
                    e[(i, i)] = Rational::zero();
                    e[(j, j)] = Rational::zero();
                    e[(i, j)] = Rational::one();
                    e[(j, i)] = Rational::one();
                }
            }
            _ => {}
        }
        acc = e.mul(&acc);
    }
    homs::validate(&acc, g, g).expect("product of automorphisms")
}

/// Symmetric entry allowed at `(i, j)` of the matrix of a quadratic function.
pub fn quadratic_entry<R: Rng + ?Sized>(rng: &mut R, fi: Factor, fj: Factor, diagonal: bool) -> Rational {
    match (fi, fj) {
        (Factor::Z, Factor::Z) => small_rational(rng, 4, 4),
        (Factor::Z, Factor::T) | (Factor::T, Factor::Z) => Rational::from(rng.random_range(-2i64..=2)),
        (Factor::Z, Factor::ZN(n)) | (Factor::ZN(n), Factor::Z) => Rational::new(rng.random_range(0..n as i64), n as i64),
        (Factor::ZN(n), Factor::ZN(m)) => {
            let d = if diagonal { n } else { n.gcd(&m) } as i64;
            Rational::new(rng.random_range(0..d), d)
        }
        _ => Rational::zero(),
    }
}

pub fn quadratic<R: Rng + ?Sized>(rng: &mut R, g: &GroupSpec) -> QuadraticFunc {
    let m = g.m();
    let mut mm = RationalMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            if rng.random_bool(0.5) {
                continue;
            }
            let x = quadratic_entry(rng, g.factor(i), g.factor(j), i == j);
            mm[(i, j)] = x.clone();
            mm[(j, i)] = x;
        }
    }
    let v = g
        .factors()
        .iter()
        .map(|f| match f {
            Factor::Z => Rational::new(rng.random_range(0i64..12), 12),
            Factor::T => Rational::from(rng.random_range(-2i64..=2)),
            Factor::ZN(n) => Rational::new(rng.random_range(0..*n as i64), *n as i64),
            Factor::R => small_rational(rng, 4, 4),
        })
        .collect();
    QuadraticFunc::new(g, mm, v).expect("entries chosen from valid ranges")
}

pub fn pauli<R: Rng + ?Sized>(rng: &mut R, g: &GroupSpec) -> PauliOp {
    let phase = Phase::new(Rational::new(rng.random_range(0i64..24), 12));
    PauliOp::new(phase, element(rng, &g.dual()), element(rng, g)).expect("matching groups")
}

/// Random gate acting on `g`.
pub fn gate<R: Rng + ?Sized>(rng: &mut R, g: &GroupSpec) -> Gate {
    match rng.random_range(0..3) {
        0 => Gate::Automorphism(automorphism(rng, g, 3)),
        1 => Gate::QuadraticPhase(quadratic(rng, g)),
        _ => {
            let regs: Vec<usize> = (0..g.m()).filter(|_| rng.random_bool(0.5)).collect();
            Gate::PartialFourier(regs)
        }
    }
}

/// Random circuit with `depth` gates starting from a random basis state of `g0`.
pub fn circuit<R: Rng + ?Sized>(rng: &mut R, g0: &GroupSpec, depth: usize) -> Circuit {
    let input = element(rng, g0);
    let mut g = g0.clone();
    let mut gates = Vec::with_capacity(depth);
    for _ in 0..depth {
        let gate = gate(rng, &g);
        g = gate.output_group(&g).expect("gate built for g");
        gates.push(gate);
    }
    Circuit::new(g0.clone(), input, gates).expect("consistent chain")
}

/// As [`circuit`] but keeping every designated group finite, so the dense
/// simulator applies. Fourier gates are only placed on `Z_N` factors.
pub fn finite_circuit<R: Rng + ?Sized>(rng: &mut R, g0: &GroupSpec, depth: usize) -> Circuit {
    let input = element(rng, g0);
    let gates = (0..depth)
        .map(|_| match rng.random_range(0..3) {
            0 => Gate::Automorphism(automorphism(rng, g0, 3)),
            1 => Gate::QuadraticPhase(quadratic(rng, g0)),
            _ => Gate::PartialFourier((0..g0.m()).filter(|_| rng.random_bool(0.5)).collect()),
        })
        .collect();
    Circuit::new(g0.clone(), input, gates).expect("finite groups are self-dual")
}
