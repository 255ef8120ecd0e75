//! Elementary Abelian groups `Z^a x T^b x Z_N1 x ... (x R^c)`, their elements,
//! characters and the bullet map.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Z,
    T,
    ZN(u64),
    /// Real line; only appears in solver domains.
    R,
}

impl Factor {
    pub fn characteristic(&self) -> BigInt {
        match *self {
            Factor::Z | Factor::R => BigInt::zero(),
            Factor::T => BigInt::one(),
            Factor::ZN(n) => BigInt::from(n),
        }
    }

    pub fn dual(&self) -> Factor {
        match *self {
            Factor::Z => Factor::T,
            Factor::T => Factor::Z,
            f => f,
        }
    }

    /// Z and Z_N factors; their coordinates are integers.
    pub fn is_discrete(&self) -> bool {
        matches!(self, Factor::Z | Factor::ZN(_))
    }

    /// Entry of the bullet-map matrix: 1/N on Z_N, 1 elsewhere.
    pub fn upsilon(&self) -> Rational {
        match *self {
            Factor::ZN(n) => Rational::new(1, n),
            _ => Rational::one(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Z => f.write_str("Z"),
            Factor::T => f.write_str("T"),
            Factor::R => f.write_str("R"),
            Factor::ZN(n) => write!(f, "Z_{n}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FactorRepr {
    Name(String),
    Cyclic {
        #[serde(rename = "ZN")]
        zn: u64,
    },
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Factor::ZN(n) => FactorRepr::Cyclic { zn: n },
            other => FactorRepr::Name(other.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Factor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Factor, D::Error> {
        match FactorRepr::deserialize(d)? {
            FactorRepr::Name(n) => match n.as_str() {
                "Z" => Ok(Factor::Z),
                "T" => Ok(Factor::T),
                "R" => Ok(Factor::R),
                other => Err(serde::de::Error::custom(format!("unknown group factor {other:?}"))),
            },
            FactorRepr::Cyclic { zn: 0 } => Err(serde::de::Error::custom("Z_N needs N >= 1")),
            FactorRepr::Cyclic { zn } => Ok(Factor::ZN(zn)),
        }
    }
}

/// Ordered product of primitive factors.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupSpec {
    factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Factor>) -> Result<GroupSpec> {
        if let Some(Factor::ZN(0)) = factors.iter().find(|f| **f == Factor::ZN(0)) {
            return Err(Error::BadModulus(0));
        }
        Ok(GroupSpec { factors })
    }

    pub fn cyclic(ns: &[u64]) -> GroupSpec {
        GroupSpec::new(ns.iter().map(|&n| Factor::ZN(n)).collect()).expect("moduli >= 1")
    }

    pub fn m(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> Factor {
        self.factors[i]
    }

    pub fn dual(&self) -> GroupSpec {
        dual_group(self)
    }

    pub fn concat(&self, other: &GroupSpec) -> GroupSpec {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        GroupSpec { factors: f }
    }

    pub fn characteristics(&self) -> Vec<BigInt> {
        self.factors.iter().map(Factor::characteristic).collect()
    }

    pub fn upsilon(&self) -> Vec<Rational> {
        self.factors.iter().map(Factor::upsilon).collect()
    }

    pub fn upsilon_matrix(&self) -> RationalMatrix {
        RationalMatrix::diagonal(&self.upsilon())
    }

    pub fn upsilon_inv_matrix(&self) -> RationalMatrix {
        let d: Vec<Rational> = self.upsilon().iter().map(Rational::recip).collect();
        RationalMatrix::diagonal(&d)
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::ZN(_)))
    }

    /// Order of a finite group, `None` if infinite or overflowing.
    pub fn order(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, f| match f {
            Factor::ZN(n) => acc.checked_mul(*n),
            _ => None,
        })
    }

    pub fn count(&self, pred: impl Fn(Factor) -> bool) -> usize {
        self.factors.iter().filter(|f| pred(**f)).count()
    }

    /// Reject solver-internal R factors.
    pub fn ensure_circuit(&self) -> Result<()> {
        if self.factors.contains(&Factor::R) {
            Err(Error::RealFactorInCircuit)
        } else {
            Ok(())
        }
    }

    pub fn ensure_same(&self, other: &GroupSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch { expected: self.to_string(), found: other.to_string() })
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("{0}");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" × "))
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn dual_group(g: &GroupSpec) -> GroupSpec {
    GroupSpec { factors: g.factors.iter().map(Factor::dual).collect() }
}

/// Element of a group with canonical coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: GroupSpec,
    coords: Vec<Rational>,
}

impl GroupElement {
    pub fn zero(group: &GroupSpec) -> GroupElement {
        GroupElement { group: group.clone(), coords: vec![Rational::zero(); group.m()] }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// Basis generator `e_i` (for continuous factors this is the representative 1).
    pub fn unit(group: &GroupSpec, i: usize) -> GroupElement {
        let mut x = vec![Rational::zero(); group.m()];
        x[i] = Rational::one();
        canonicalize(&x, group).expect("unit vector is integral")
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.ensure_same(&other.group)?;
        let x: Vec<Rational> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        canonicalize(&x, &self.group)
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupElement {
        let x: Vec<Rational> = self.coords.iter().map(|a| -a).collect();
        canonicalize(&x, &self.group).expect("negation preserves integrality")
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let k = Rational::from_int(k.clone());
        let x: Vec<Rational> = self.coords.iter().map(|a| a * &k).collect();
        canonicalize(&x, &self.group).expect("integer multiple preserves integrality")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

/// Canonical representative of one coordinate.
pub fn canonical_coord(x: &Rational, f: Factor, index: usize) -> Result<Rational> {
    match f {
        Factor::R => Ok(x.clone()),
        Factor::T => Ok(x.modulo(&Rational::one())),
        Factor::Z | Factor::ZN(_) => {
            if !x.is_integer() {
                return Err(Error::NonIntegralCoordinate { index, value: x.clone(), factor: f.to_string() });
            }
            Ok(x.modulo_int(&f.characteristic()))
        }
    }
}

pub fn canonicalize(x: &[Rational], g: &GroupSpec) -> Result<GroupElement> {
    if x.len() != g.m() {
        return Err(Error::Dimension(format!("tuple of length {} for group {g} with {} factors", x.len(), g.m())));
    }
    let coords = x
        .iter()
        .zip(g.factors())
        .enumerate()
        .map(|(i, (v, f))| canonical_coord(v, *f, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupElement { group: g.clone(), coords })
}

/// Canonical representative of a tuple in the bullet group `G•`
/// (`Z• = T`, `T• = Z`, `Z_N• = {0, 1/N, ..}`, `R• = R`).
pub fn canonicalize_bullet(x: &[Rational], g: &GroupSpec) -> Result<Vec<Rational>> {
    if x.len() != g.m() {
        return Err(Error::Dimension(format!("bullet tuple of length {} for {g}", x.len())));
    }
    x.iter()
        .zip(g.factors())
        .enumerate()
        .map(|(i, (v, f))| match f {
            Factor::Z => Ok(v.modulo(&Rational::one())),
            Factor::R => Ok(v.clone()),
            Factor::T => {
                if v.is_integer() {
                    Ok(v.clone())
                } else {
                    Err(Error::NonIntegralCoordinate { index: i, value: v.clone(), factor: "T•".into() })
                }
            }
            Factor::ZN(n) => {
                let scaled = v * &Rational::from(*n);
                if scaled.is_integer() {
                    Ok(v.modulo(&Rational::one()))
                } else {
                    Err(Error::NonIntegralCoordinate { index: i, value: v.clone(), factor: format!("Z_{n}•") })
                }
            }
        })
        .collect()
}

/// Bullet image `Υ μ` of a character label `μ ∈ G*` (coordinates of `μ` taken in `G*`).
pub fn bullet(mu: &GroupElement) -> Vec<Rational> {
    mu.coords.iter().zip(mu.group.factors()).map(|(x, f)| x * &f.upsilon()).collect()
}

/// Unit-circle value `e^{iπr}` stored as the exponent `r ∈ [0, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Rational);

impl Phase {
    pub fn new(r: Rational) -> Phase {
        Phase(r.modulo(&Rational::from(2)))
    }

    pub fn one() -> Phase {
        Phase(Rational::zero())
    }

    /// `e^{2πi t}`.
    pub fn from_turns(t: &Rational) -> Phase {
        Phase::new(t * &Rational::from(2))
    }

    pub fn exponent(&self) -> &Rational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        Phase::new(&self.0 + &other.0)
    }

    pub fn conj(&self) -> Phase {
        Phase::new(-&self.0)
    }

    pub fn to_complex(&self) -> Complex64 {
        let t = self.0.to_f64() * std::f64::consts::PI;
        Complex64::new(t.cos(), t.sin())
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(iπ·{})", self.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `χ_μ(g) = exp(2πi μ•·g)` on raw coordinate tuples of `G*` and `G`.
pub fn character_raw(mu: &[Rational], g: &[Rational], group: &GroupSpec) -> Phase {
    let mut t = Rational::zero();
    for ((a, b), f) in mu.iter().zip(g).zip(group.factors()) {
        if !a.is_zero() && !b.is_zero() {
            t += a * b * f.upsilon();
        }
    }
    Phase::from_turns(&t)
}

pub fn character(mu: &GroupElement, g: &GroupElement) -> Result<Phase> {
    g.group.dual().ensure_same(&mu.group)?;
    Ok(character_raw(&mu.coords, &g.coords, &g.group))
}

/// Squared group norm using minimal-modulus representatives.
pub fn norm_sq(g: &GroupElement) -> Rational {
    let half = Rational::new(1, 2);
    g.coords
        .iter()
        .zip(g.group.factors())
        .map(|(x, f)| {
            let rep = match f {
                Factor::Z | Factor::R => x.clone(),
                Factor::T => {
                    if x > &half {
                        x - Rational::one()
                    } else {
                        x.clone()
                    }
                }
                Factor::ZN(n) => {
                    let n = Rational::from(*n);
                    if x * Rational::from(2) > n {
                        x - n
                    } else {
                        x.clone()
                    }
                }
            };
            &rep * &rep
        })
        .sum()
}
