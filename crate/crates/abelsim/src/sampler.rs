//! `(Δ, ε)`-nets of subgroups `im E` with `E: R^α × Z^β -> G`, and uniform
//! sampling from them.
//!
//! Real directions are discretized to `ε₁ Z`, the lattice `Z^{α+β}` is
//! divided by the kernel of the discretized map via a Smith normal form, and
//! the resulting cyclic and free generators are read off `E' U`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactalg::{snf, Rational, RationalMatrix};
use crate::groups::{canonicalize, Factor, GroupElement, GroupSpec};
use crate::homs::{self, MatrixRep};
use crate::linsolve;

pub const DEFAULT_DELTA: u64 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetSpec {
    pub epsilon: Rational,
    /// Grid step used on the real directions.
    pub eps1: Rational,
    pub compact_generators: Vec<(GroupElement, u64)>,
    pub free_basis: Vec<GroupElement>,
    pub deltas: Vec<u64>,
    pub x_offset: GroupElement,
}

impl NetSpec {
    pub fn group(&self) -> &GroupSpec {
        self.x_offset.group()
    }

    /// `Π σ_i · Π (2Δ_j + 1)`.
    pub fn point_count(&self) -> BigInt {
        let c: BigInt = self.compact_generators.iter().map(|(_, s)| BigInt::from(*s)).product();
        let f: BigInt = self.deltas.iter().map(|d| BigInt::from(2 * d + 1)).product();
        c * f
    }

    pub fn summary(&self) -> serde_json::Value {
        json!({
            "epsilon": self.epsilon,
            "eps1": self.eps1,
            "compact_orders": self.compact_generators.iter().map(|(_, s)| *s).collect::<Vec<_>>(),
            "free_rank": self.free_basis.len(),
            "deltas": self.deltas,
            "point_count": self.point_count().to_string(),
        })
    }

    fn point(&self, xs: &[u64], ys: &[i64]) -> GroupElement {
        Scaled::new(self).point(self, xs, ys)
    }
}

/// Net generators over per-coordinate common denominators, so that a point
/// is an integer combination followed by a single reduction.
struct Scaled {
    dens: Vec<BigInt>,
    offset: Vec<BigInt>,
    compact: Vec<Vec<BigInt>>,
    free: Vec<Vec<BigInt>>,
}

impl Scaled {
    fn new(net: &NetSpec) -> Scaled {
        let m = net.group().m();
        let all = || std::iter::once(&net.x_offset).chain(net.compact_generators.iter().map(|(f, _)| f)).chain(&net.free_basis);
        let dens: Vec<BigInt> = (0..m).map(|i| all().fold(BigInt::one(), |d, g| d.lcm(g.coords()[i].denom()))).collect();
        let scale = |g: &GroupElement| -> Vec<BigInt> {
            g.coords().iter().zip(&dens).map(|(c, d)| c.numer() * (d / c.denom())).collect()
        };
        Scaled {
            offset: scale(&net.x_offset),
            compact: net.compact_generators.iter().map(|(f, _)| scale(f)).collect(),
            free: net.free_basis.iter().map(scale).collect(),
            dens,
        }
    }

    fn point(&self, net: &NetSpec, xs: &[u64], ys: &[i64]) -> GroupElement {
        let mut acc = self.offset.clone();
        let terms = self.compact.iter().zip(xs.iter().map(|&x| BigInt::from(x))).chain(self.free.iter().zip(ys.iter().map(|&y| BigInt::from(y))));
        for (gen, k) in terms {
            if k.is_zero() {
                continue;
            }
            for (a, c) in acc.iter_mut().zip(gen) {
                if !c.is_zero() {
                    *a += &k * c;
                }
            }
        }
        let x: Vec<Rational> = acc.into_iter().zip(&self.dens).map(|(n, d)| Rational::new(n, d.clone())).collect();
        canonicalize(&x, net.group()).expect("generators are group elements")
    }
}

/// Smallest `k/8` whose square is at least `a`.
fn sqrt_upper(a: usize) -> Rational {
    let mut k = 0i64;
    while (k * k) < 64 * a as i64 {
        k += 1;
    }
    Rational::new(k, 8)
}

/// Largest unit fraction `1/n` not above `bound` (and at most 1).
fn unit_fraction_below(bound: &Rational) -> Rational {
    if *bound >= 1 {
        return Rational::one();
    }
    Rational::new(1, bound.recip().ceil())
}

pub fn build_net(e: &MatrixRep, eps: &Rational, deltas: &[u64], offset: &GroupElement) -> Result<NetSpec> {
    if *eps <= 0 || *eps > Rational::new(1, 2) {
        return Err(Error::EpsilonOutOfRange(eps.clone()));
    }
    e.codomain().ensure_same(offset.group())?;
    let dom = e.domain();
    let alpha = dom.count(|f| f == Factor::R);
    let beta = dom.count(|f| f == Factor::Z);
    if alpha + beta != dom.m() || dom.factors()[..alpha].iter().any(|f| *f != Factor::R) {
        return Err(Error::Contract(format!("net domain must be R^a × Z^b, got {dom}")));
    }
    let g = e.codomain();
    let a = g.count(|f| f == Factor::T);
    let emax = e.matrix().max_abs();
    let eps1 = if alpha == 0 || a == 0 || emax.is_zero() {
        Rational::one()
    } else {
        let bound = &(eps * &Rational::from(2)) / &(&(&Rational::from(alpha) * &sqrt_upper(a)) * &emax);
        unit_fraction_below(&bound)
    };

    // E' = E (ε₁ I ⊕ I) on the lattice Z^{α+β}.
    let n = alpha + beta;
    let scale: Vec<Rational> = (0..n).map(|i| if i < alpha { eps1.clone() } else { Rational::one() }).collect();
    let e1 = e.matrix().mul(&RationalMatrix::diagonal(&scale));
    let lattice = GroupSpec::new(vec![Factor::Z; n])?;
    let e1 = homs::validate(&e1, &lattice, g).map_err(|err| Error::Internal(format!("discretized map invalid: {err}")))?;
    let ker = linsolve::kernel(&e1)?;
    let s = snf(ker.matrix())?;
    let diag = s.diagonal();
    let iso = e1.matrix().mul(&s.u);

    let mut compact = Vec::new();
    let mut free = Vec::new();
    for i in 0..n {
        let col = canonicalize(&iso.col(i), g)?;
        if i < diag.len() && !diag[i].is_zero() {
            if diag[i].is_one() {
                continue;
            }
            let order = diag[i]
                .to_u64()
                .ok_or_else(|| Error::CapExceeded { what: "cyclic net generator".into(), count: diag[i].to_string(), cap: u64::MAX })?;
            compact.push((col, order));
        } else {
            free.push(col);
        }
    }
    let mut ds: Vec<u64> = deltas.iter().copied().take(free.len()).collect();
    ds.resize(free.len(), DEFAULT_DELTA);
    if let Some(i) = ds.iter().position(|d| *d == 0) {
        return Err(Error::Contract(format!("delta {i} must be positive")));
    }
    Ok(NetSpec { epsilon: eps.clone(), eps1, compact_generators: compact, free_basis: free, deltas: ds, x_offset: offset.clone() })
}

/// `count` uniform net points, reproducible from `seed` (ChaCha8).
pub fn sample(net: &NetSpec, seed: u64, count: usize) -> Vec<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scaled = Scaled::new(net);
    (0..count)
        .map(|_| {
            let (xs, ys) = coefficients(net, &mut rng);
            scaled.point(net, &xs, &ys)
        })
        .collect()
}

pub fn sample_one<R: Rng + ?Sized>(net: &NetSpec, rng: &mut R) -> GroupElement {
    let (xs, ys) = coefficients(net, rng);
    net.point(&xs, &ys)
}

fn coefficients<R: Rng + ?Sized>(net: &NetSpec, rng: &mut R) -> (Vec<u64>, Vec<i64>) {
    let xs = net.compact_generators.iter().map(|(_, s)| rng.random_range(0..*s)).collect();
    let ys = net.deltas.iter().map(|&d| rng.random_range(-(d as i64)..=d as i64)).collect();
    (xs, ys)
}

/// Every net point, in coefficient order.
pub fn enumerate_net(net: &NetSpec, cap: u64) -> Result<Vec<GroupElement>> {
    let count = net.point_count();
    if count > BigInt::from(cap) {
        return Err(Error::CapExceeded { what: "net".into(), count: count.to_string(), cap });
    }
    let radices: Vec<u64> =
        net.compact_generators.iter().map(|(_, s)| *s).chain(net.deltas.iter().map(|d| 2 * d + 1)).collect();
    let k = net.compact_generators.len();
    let mut digits = vec![0u64; radices.len()];
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let scaled = Scaled::new(net);
    loop {
        let xs = &digits[..k];
        let ys: Vec<i64> = digits[k..].iter().zip(&net.deltas).map(|(&t, &d)| t as i64 - d as i64).collect();
        out.push(scaled.point(net, xs, &ys));
        let mut i = radices.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn map(rows: &[&[i64]], dom: Vec<Factor>, cod: Vec<Factor>) -> MatrixRep {
        homs::validate(&RationalMatrix::from_ints(rows), &GroupSpec::new(dom).unwrap(), &GroupSpec::new(cod).unwrap()).unwrap()
    }

    #[test]
    fn circle_net() {
        let e = map(&[&[1]], vec![Factor::R], vec![Factor::T]);
        let t = e.codomain().clone();
        let net = build_net(&e, &q(1, 8), &[], &GroupElement::zero(&t)).unwrap();
        assert_eq!(net.eps1, q(1, 4));
        assert_eq!(net.compact_generators.len(), 1);
        assert_eq!(net.compact_generators[0].1, 4);
        let pts = enumerate_net(&net, 100).unwrap();
        let mut xs: Vec<Rational> = pts.iter().map(|p| p.coords()[0].clone()).collect();
        xs.sort();
        assert_eq!(xs, vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4)]);
    }

    #[test]
    fn integer_net() {
        let e = map(&[&[1]], vec![Factor::Z], vec![Factor::Z]);
        let net = build_net(&e, &q(1, 64), &[10], &GroupElement::zero(e.codomain())).unwrap();
        assert_eq!(net.free_basis.len(), 1);
        let pts = enumerate_net(&net, 100).unwrap();
        assert_eq!(pts.len(), 21);
        assert_eq!(pts[0].coords()[0], Rational::from(-10));
        assert_eq!(pts[20].coords()[0], Rational::from(10));
    }

    #[test]
    fn trivial_net() {
        let g = GroupSpec::cyclic(&[3]);
        let dom = GroupSpec::new(vec![]).unwrap();
        let e = MatrixRep::zero(&dom, &g);
        let off = canonicalize(&[Rational::from(2)], &g).unwrap();
        let net = build_net(&e, &q(1, 8), &[], &off).unwrap();
        assert_eq!(enumerate_net(&net, 10).unwrap(), vec![off.clone()]);
        assert_eq!(sample(&net, 1, 3), vec![off.clone(), off.clone(), off]);
    }

    #[test]
    fn z2_net_and_rejections() {
        let e = map(&[&[1]], vec![Factor::Z], vec![Factor::ZN(2)]);
        let net = build_net(&e, &q(1, 8), &[], &GroupElement::zero(e.codomain())).unwrap();
        assert_eq!(enumerate_net(&net, 10).unwrap().len(), 2);
        assert!(enumerate_net(&net, 1).is_err());
        assert!(matches!(build_net(&e, &q(3, 4), &[], &GroupElement::zero(e.codomain())), Err(Error::EpsilonOutOfRange(_))));
        assert!(build_net(&e, &Rational::zero(), &[], &GroupElement::zero(e.codomain())).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let e = map(&[&[1]], vec![Factor::R], vec![Factor::T]);
        let net = build_net(&e, &q(1, 8), &[], &GroupElement::zero(e.codomain())).unwrap();
        assert_eq!(sample(&net, 9, 50), sample(&net, 9, 50));
        assert!(sample(&net, 9, 0).is_empty());
    }
}
