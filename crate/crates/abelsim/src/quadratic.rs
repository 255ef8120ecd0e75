//! Quadratic functions `ξ(g) = exp(iπ(gᵀMg + Cᵀg + 2vᵀg))` in normal form.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix};
use crate::groups::{canonicalize, canonicalize_bullet, GroupElement, GroupSpec, Phase};
use crate::homs::{self, MatrixRep};
use crate::random;

/// Normal-form data `(M, v)` of a quadratic function on `group`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticFunc {
    group: GroupSpec,
    m: RationalMatrix,
    v: Vec<Rational>,
}

impl std::fmt::Debug for QuadraticFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuadraticFunc(on {}, M={:?}, v={:?})", self.group, self.m, self.v)
    }
}

impl QuadraticFunc {
    /// Validate `M` (symmetric, a representation `G -> G•`) and reduce `v` into `G•`.
    pub fn new(group: &GroupSpec, m: RationalMatrix, v: Vec<Rational>) -> Result<QuadraticFunc> {
        if m.shape() != (group.m(), group.m()) {
            return Err(Error::Dimension(format!("M is {}x{} on a group with {} factors", m.rows(), m.cols(), group.m())));
        }
        if let Some((i, j)) = first_asymmetry(&m) {
            return Err(Error::NotSymmetric { row: i, col: j, mod_z: false });
        }
        let beta = group.upsilon_inv_matrix().mul(&m);
        homs::validate(&beta, group, &group.dual())
            .map_err(|e| Error::InvalidQuadratic(format!("M is not a homomorphism into the bullet group: {e}")))?;
        let v = canonicalize_bullet(&v, group).map_err(|e| Error::InvalidQuadratic(format!("v is not in the bullet group: {e}")))?;
        Ok(QuadraticFunc { group: group.clone(), m, v })
    }

    pub(crate) fn trusted(group: &GroupSpec, m: RationalMatrix, v: Vec<Rational>) -> QuadraticFunc {
        let v = canonicalize_bullet(&v, group).expect("trusted v lies in the bullet group");
        let q = QuadraticFunc { group: group.clone(), m, v };
        debug_assert!(
            QuadraticFunc::new(group, q.m.clone(), q.v.clone()).is_ok(),
            "trusted quadratic function is invalid: {q:?}"
        );
        q
    }

    pub fn zero(group: &GroupSpec) -> QuadraticFunc {
        QuadraticFunc {
            group: group.clone(),
            m: RationalMatrix::zeros(group.m(), group.m()),
            v: vec![Rational::zero(); group.m()],
        }
    }

    /// Pure character `exp(2πi vᵀg)`.
    pub fn character(group: &GroupSpec, v: Vec<Rational>) -> Result<QuadraticFunc> {
        QuadraticFunc::new(group, RationalMatrix::zeros(group.m(), group.m()), v)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn m(&self) -> &RationalMatrix {
        &self.m
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    /// `C(i) = M(i,i) c_i`.
    pub fn c(&self) -> Vec<Rational> {
        c_vector(&self.m, &self.group)
    }

    /// Homomorphism `β: G -> G*` with `B(g,h) = χ_{β(g)}(h)`.
    pub fn beta(&self) -> MatrixRep {
        MatrixRep::trusted(self.group.upsilon_inv_matrix().mul(&self.m), &self.group, &self.group.dual())
    }

    /// Same function with `M` reduced on discrete pairs: off-diagonal entries
    /// modulo 1, diagonal ones modulo 2.
    pub fn reduced(&self) -> QuadraticFunc {
        let g = &self.group;
        let mut m = self.m.clone();
        let one = Rational::one();
        let two = Rational::from(2);
        for i in 0..g.m() {
            if !g.factor(i).is_discrete() {
                continue;
            }
            for j in i..g.m() {
                if !g.factor(j).is_discrete() || m[(i, j)].is_zero() {
                    continue;
                }
                let r = m[(i, j)].modulo(if i == j { &two } else { &one });
                m[(j, i)] = r.clone();
                m[(i, j)] = r;
            }
        }
        QuadraticFunc::trusted(g, m, self.v.clone())
    }

    /// Pointwise product of two quadratic functions on the same group.
    pub fn product(&self, other: &QuadraticFunc) -> Result<QuadraticFunc> {
        self.group.ensure_same(&other.group)?;
        let v: Vec<Rational> = self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect();
        Ok(QuadraticFunc::trusted(&self.group, self.m.add(&other.m), v))
    }
}

fn first_asymmetry(m: &RationalMatrix) -> Option<(usize, usize)> {
    (0..m.rows()).flat_map(|i| (0..i).map(move |j| (i, j))).find(|&(i, j)| m[(i, j)] != m[(j, i)])
}

pub(crate) fn c_vector(m: &RationalMatrix, g: &GroupSpec) -> Vec<Rational> {
    g.factors().iter().enumerate().map(|(i, f)| &m[(i, i)] * &Rational::from_int(f.characteristic())).collect()
}

/// Exponent `gᵀMg + Cᵀg + 2vᵀg` for any representative tuple `x`.
pub fn evaluate_raw(q: &QuadraticFunc, x: &[Rational]) -> Phase {
    let mut t = Rational::zero();
    let c = q.c();
    let two = Rational::from(2);
    for i in 0..x.len() {
        if x[i].is_zero() {
            continue;
        }
        let mut lin = &c[i] + &(&two * &q.v[i]);
        let mut row = Rational::zero();
        for j in 0..x.len() {
            let mij = &q.m[(i, j)];
            if !mij.is_zero() && !x[j].is_zero() {
                row += mij * &x[j];
            }
        }
        lin += row;
        t += lin * &x[i];
    }
    Phase::new(t)
}

pub fn evaluate(q: &QuadraticFunc, g: &GroupElement) -> Result<Phase> {
    q.group.ensure_same(g.group())?;
    Ok(evaluate_raw(q, g.coords()))
}

pub fn bicharacter_matrix(q: &QuadraticFunc) -> RationalMatrix {
    q.m.clone()
}

/// `B(g,h) = exp(2πi gᵀMh)`.
pub fn bicharacter(q: &QuadraticFunc, g: &GroupElement, h: &GroupElement) -> Result<Phase> {
    q.group.ensure_same(g.group())?;
    q.group.ensure_same(h.group())?;
    let mh = q.m.mul_vec(h.coords());
    let t: Rational = g.coords().iter().zip(&mh).map(|(a, b)| a * b).sum();
    Ok(Phase::from_turns(&t))
}

/// Copy the lower triangle onto the upper one. The input must be symmetric
/// modulo integers on discrete pairs and exactly symmetric elsewhere.
pub fn symmetrize(m: &RationalMatrix, g: &GroupSpec) -> Result<RationalMatrix> {
    if m.shape() != (g.m(), g.m()) {
        return Err(Error::Dimension(format!("M is {}x{} on {g}", m.rows(), m.cols())));
    }
    for i in 0..g.m() {
        for j in 0..i {
            let d = &m[(i, j)] - &m[(j, i)];
            let discrete = g.factor(i).is_discrete() && g.factor(j).is_discrete();
            let ok = if discrete { d.is_integer() } else { d.is_zero() };
            if !ok {
                return Err(Error::NotSymmetric { row: i, col: j, mod_z: true });
            }
        }
    }
    Ok(RationalMatrix::from_fn(g.m(), g.m(), |i, j| if i >= j { m[(i, j)].clone() } else { m[(j, i)].clone() }))
}

/// `ξ ∘ α` for an automorphism `α` of the group of `q`.
pub fn compose_with_automorphism(q: &QuadraticFunc, a: &MatrixRep) -> Result<QuadraticFunc> {
    q.group.ensure_same(a.domain())?;
    q.group.ensure_same(a.codomain())?;
    compose_with_hom_checked(q, a, 100)
}

/// `ξ ∘ α` for a homomorphism `α: K' -> K`, with the result on `K'`.
pub fn compose_with_hom(q: &QuadraticFunc, a: &MatrixRep) -> Result<QuadraticFunc> {
    compose_with_hom_checked(q, a, 0)
}

/// As [`compose_with_hom`], with an extra pointwise check on all factor
/// generators plus `samples` seeded random elements.
pub fn compose_with_hom_checked(q: &QuadraticFunc, a: &MatrixRep, samples: usize) -> Result<QuadraticFunc> {
    q.group.ensure_same(a.codomain())?;
    let k2 = a.domain();
    let at = a.matrix().transpose();
    let m2 = at.mul(&q.m).mul(a.matrix());
    let c1 = q.c();
    let c2 = c_vector(&m2, k2);
    let atv = at.mul_vec(&q.v);
    let atc = at.mul_vec(&c1);
    let half = Rational::new(1, 2);

    for scale in [half, Rational::one()] {
        let raw: Vec<Rational> = (0..k2.m()).map(|i| &atv[i] + &(&(&atc[i] - &c2[i]) * &scale)).collect();
        let Ok(v2) = canonicalize_bullet(&raw, k2) else { continue };
        if !linear_term_matches(&c2, &v2, &atc, &atv, k2) {
            continue;
        }
        let out = QuadraticFunc::trusted(k2, m2.clone(), v2);
        pointwise_check(q, a, &out, samples)?;
        return Ok(out);
    }
    Err(Error::Internal(format!("no candidate v' reproduces ξ∘α for {q:?} and {a:?}")))
}

/// The two normal forms agree iff `C' + 2v' - AᵀC - 2Aᵀv` pairs to an even
/// integer with every representative: zero on continuous coordinates and in
/// `2Z` on discrete ones.
fn linear_term_matches(c2: &[Rational], v2: &[Rational], atc: &[Rational], atv: &[Rational], k: &GroupSpec) -> bool {
    let two = Rational::from(2);
    (0..k.m()).all(|i| {
        let w = &c2[i] + &(&two * &v2[i]) - &atc[i] - &(&two * &atv[i]);
        if k.factor(i).is_discrete() {
            (w / &two).is_integer()
        } else {
            w.is_zero()
        }
    })
}

fn pointwise_check(q: &QuadraticFunc, a: &MatrixRep, out: &QuadraticFunc, samples: usize) -> Result<()> {
    if samples == 0 {
        return Ok(());
    }
    let k2 = a.domain();
    let mut points: Vec<GroupElement> = (0..k2.m()).map(|i| GroupElement::unit(k2, i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0fc0);
    points.extend((0..samples).map(|_| random::element(&mut rng, k2)));
    for g in &points {
        let lhs = evaluate_raw(out, g.coords());
        let img = homs::apply(a, g)?;
        let rhs = evaluate_raw(q, img.coords());
        if lhs != rhs {
            return Err(Error::Internal(format!("ξ∘α mismatch at {g}: {lhs} vs {rhs}")));
        }
    }
    Ok(())
}

/// Lift a quadratic function on `G` to `G* × G` depending only on the second block.
pub(crate) fn lift_to_second_block(q: &QuadraticFunc, gamma: &GroupSpec) -> QuadraticFunc {
    let m = q.group.m();
    let mut big = RationalMatrix::zeros(2 * m, 2 * m);
    big.set_block(m, m, &q.m);
    let mut v = vec![Rational::zero(); 2 * m];
    v[m..].clone_from_slice(&q.v);
    QuadraticFunc::trusted(gamma, big, v)
}

/// Evaluate at an element, canonicalizing a raw tuple first.
pub fn evaluate_tuple(q: &QuadraticFunc, x: &[Rational]) -> Result<Phase> {
    let g = canonicalize(x, &q.group)?;
    evaluate(q, &g)
}
