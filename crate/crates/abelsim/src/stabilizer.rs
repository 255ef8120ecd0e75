//! Pauli operators over `G` and the stabilizer description `(Λ, M, v)` of a
//! normalizer circuit's state.
//!
//! Labels live in `Γ = G* × G`: the first `m` coordinates are the character
//! label `μ`, the last `m` the shift `g`, so `(μ, g)` stands for `Z(μ) X(g)`.

use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix};
use crate::groups::{canonicalize, canonicalize_bullet, character, character_raw, GroupElement, GroupSpec, Phase};
use crate::homs::{self, MatrixRep};
use crate::quadratic::{self, QuadraticFunc};

/// `γ Z(μ) X(g)` with `μ ∈ G*`, `g ∈ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliOp {
    pub phase: Phase,
    pub mu: GroupElement,
    pub g: GroupElement,
}

impl PauliOp {
    pub fn new(phase: Phase, mu: GroupElement, g: GroupElement) -> Result<PauliOp> {
        g.group().dual().ensure_same(mu.group())?;
        Ok(PauliOp { phase, mu, g })
    }

    pub fn identity(group: &GroupSpec) -> PauliOp {
        PauliOp { phase: Phase::one(), mu: GroupElement::zero(&group.dual()), g: GroupElement::zero(group) }
    }

    pub fn group(&self) -> &GroupSpec {
        self.g.group()
    }

    /// Label `(μ, g)` as an element of `Γ = G* × G`.
    pub fn label(&self) -> GroupElement {
        let mut x = self.mu.coords().to_vec();
        x.extend_from_slice(self.g.coords());
        canonicalize(&x, &gamma(self.group())).expect("canonical parts")
    }

    pub fn from_label(phase: Phase, label: &GroupElement, group: &GroupSpec) -> Result<PauliOp> {
        gamma(group).ensure_same(label.group())?;
        let m = group.m();
        let mu = canonicalize(&label.coords()[..m], &group.dual())?;
        let g = canonicalize(&label.coords()[m..], group)?;
        Ok(PauliOp { phase, mu, g })
    }
}

/// `Γ(G) = G* × G`.
pub fn gamma(g: &GroupSpec) -> GroupSpec {
    g.dual().concat(g)
}

/// Product in `Z`-then-`X` order: `X(g) Z(ν) = χ̄_ν(g) Z(ν) X(g)`.
pub fn pauli_multiply(a: &PauliOp, b: &PauliOp) -> Result<PauliOp> {
    a.group().ensure_same(b.group())?;
    let swap = character(&b.mu, &a.g)?.conj();
    Ok(PauliOp { phase: a.phase.mul(&b.phase).mul(&swap), mu: a.mu.add(&b.mu)?, g: a.g.add(&b.g)? })
}

/// Whether two Pauli operators commute.
pub fn commute(a: &PauliOp, b: &PauliOp) -> Result<bool> {
    Ok(character(&a.mu, &b.g)? == character(&b.mu, &a.g)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    Automorphism(MatrixRep),
    QuadraticPhase(QuadraticFunc),
    /// Fourier transform on the listed registers.
    PartialFourier(Vec<usize>),
}

impl Gate {
    /// Check that the gate acts on `g` and return the group after it.
    pub fn output_group(&self, g: &GroupSpec) -> Result<GroupSpec> {
        match self {
            Gate::Automorphism(a) => {
                g.ensure_same(a.domain())?;
                g.ensure_same(a.codomain())?;
                Ok(g.clone())
            }
            Gate::QuadraticPhase(q) => {
                g.ensure_same(q.group())?;
                Ok(g.clone())
            }
            Gate::PartialFourier(regs) => {
                let mut f = g.factors().to_vec();
                let mut seen = vec![false; g.m()];
                for &i in regs {
                    if i >= g.m() {
                        return Err(Error::RegisterOutOfRange { index: i, m: g.m() });
                    }
                    if seen[i] {
                        return Err(Error::Contract(format!("register {i} listed twice in a Fourier gate")));
                    }
                    seen[i] = true;
                    f[i] = f[i].dual();
                }
                GroupSpec::new(f)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Circuit {
    pub group0: GroupSpec,
    pub input: GroupElement,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(group0: GroupSpec, input: GroupElement, gates: Vec<Gate>) -> Result<Circuit> {
        group0.ensure_circuit()?;
        group0.ensure_same(input.group())?;
        let c = Circuit { group0, input, gates };
        c.group_chain()?;
        Ok(c)
    }

    /// Designated groups `G(0), ..., G(T)`.
    pub fn group_chain(&self) -> Result<Vec<GroupSpec>> {
        let mut chain = vec![self.group0.clone()];
        for gate in &self.gates {
            let next = gate.output_group(chain.last().expect("nonempty"))?;
            chain.push(next);
        }
        Ok(chain)
    }

    pub fn final_group(&self) -> Result<GroupSpec> {
        Ok(self.group_chain()?.pop().expect("nonempty"))
    }
}

/// `(Λ, ξ)`: `im Λ` is the label group of the stabilizer and `ξ` (stored on
/// all of `Γ(t)`) gives the phase of each label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerDesc {
    group0: GroupSpec,
    group_now: GroupSpec,
    lambda: MatrixRep,
    phase: QuadraticFunc,
}

impl StabilizerDesc {
    pub fn from_parts(group0: GroupSpec, group_now: GroupSpec, lambda: RationalMatrix, phase: QuadraticFunc) -> Result<StabilizerDesc> {
        let lambda = homs::validate(&lambda, &gamma(&group0), &gamma(&group_now))?;
        gamma(&group_now).ensure_same(phase.group())?;
        Ok(StabilizerDesc { group0, group_now, lambda, phase })
    }

    pub fn group0(&self) -> &GroupSpec {
        &self.group0
    }

    pub fn group_now(&self) -> &GroupSpec {
        &self.group_now
    }

    pub fn lambda(&self) -> &MatrixRep {
        &self.lambda
    }

    pub fn phase_function(&self) -> &QuadraticFunc {
        &self.phase
    }

    pub fn m_matrix(&self) -> &RationalMatrix {
        self.phase.m()
    }

    pub fn v(&self) -> &[Rational] {
        self.phase.v()
    }

    /// Stabilizer element with label `Λ u`.
    pub fn member(&self, u: &GroupElement) -> Result<PauliOp> {
        let label = homs::apply(&self.lambda, u)?;
        let phase = quadratic::evaluate(&self.phase, &label)?;
        PauliOp::from_label(phase, &label, &self.group_now)
    }
}

pub fn initial_state(g0: &GroupSpec, g: &GroupElement) -> Result<StabilizerDesc> {
    g0.ensure_circuit()?;
    g0.ensure_same(g.group())?;
    let m = g0.m();
    let gam = gamma(g0);
    let mut lam = RationalMatrix::zeros(2 * m, 2 * m);
    lam.set_block(0, 0, &RationalMatrix::identity(m));
    let mut v: Vec<Rational> = g.coords().iter().zip(g0.upsilon()).map(|(x, u)| -(x * &u)).collect();
    v.resize(2 * m, Rational::zero());
    let v = canonicalize_bullet(&v, &gam)?;
    let phase = QuadraticFunc::trusted(&gam, RationalMatrix::zeros(2 * m, 2 * m), v);
    Ok(StabilizerDesc {
        group0: g0.clone(),
        group_now: g0.clone(),
        lambda: MatrixRep::trusted(lam, &gam, &gam),
        phase,
    })
}

/// Action of a gate on Pauli labels: `(μ, g) -> a(μ, g)` with the phase
/// multiplied by `corr(μ, g)`.
#[derive(Clone, Debug)]
pub struct GateAction {
    pub a: MatrixRep,
    pub a_inv: MatrixRep,
    pub corr: QuadraticFunc,
    pub group_out: GroupSpec,
}

pub fn gate_action(gate: &Gate, g: &GroupSpec) -> Result<GateAction> {
    let group_out = gate.output_group(g)?;
    let m = g.m();
    let gam = gamma(g);
    let gam_out = gamma(&group_out);
    match gate {
        Gate::Automorphism(a) => {
            let x = homs::invert_automorphism(a)?;
            let a_star = homs::dual(a);
            let x_star = homs::dual(&x);
            let fwd = x_star.matrix().block_diag(a.matrix());
            let bwd = a_star.matrix().block_diag(x.matrix());
            Ok(GateAction {
                a: MatrixRep::trusted(fwd, &gam, &gam),
                a_inv: MatrixRep::trusted(bwd, &gam, &gam),
                corr: QuadraticFunc::zero(&gam),
                group_out,
            })
        }
        Gate::QuadraticPhase(q) => {
            let mb = q.beta().matrix().clone();
            let mut fwd = RationalMatrix::identity(2 * m);
            fwd.set_block(0, m, &mb);
            let mut bwd = RationalMatrix::identity(2 * m);
            bwd.set_block(0, m, &mb.neg());
            // ξ_Q(g) χ̄_{β(g)}(g) has normal form (-M_Q, v_Q) on the G block.
            let neg = QuadraticFunc::trusted(g, q.m().neg(), q.v().to_vec());
            Ok(GateAction {
                a: MatrixRep::trusted(fwd, &gam, &gam),
                a_inv: MatrixRep::trusted(bwd, &gam, &gam),
                corr: quadratic::lift_to_second_block(&neg, &gam),
                group_out,
            })
        }
        Gate::PartialFourier(regs) => {
            let mut fwd = RationalMatrix::identity(2 * m);
            let mut bwd = RationalMatrix::identity(2 * m);
            let mut mf = RationalMatrix::zeros(2 * m, 2 * m);
            for &i in regs {
                fwd[(i, i)] = Rational::zero();
                fwd[(m + i, m + i)] = Rational::zero();
                fwd[(i, m + i)] = Rational::one();
                fwd[(m + i, i)] = -Rational::one();
                bwd[(i, i)] = Rational::zero();
                bwd[(m + i, m + i)] = Rational::zero();
                bwd[(i, m + i)] = -Rational::one();
                bwd[(m + i, i)] = Rational::one();
                let u = g.factor(i).upsilon();
                mf[(i, m + i)] = u.clone();
                mf[(m + i, i)] = u;
            }
            Ok(GateAction {
                a: MatrixRep::trusted(fwd, &gam, &gam_out),
                a_inv: MatrixRep::trusted(bwd, &gam_out, &gam),
                corr: QuadraticFunc::trusted(&gam, mf, vec![Rational::zero(); 2 * m]),
                group_out,
            })
        }
    }
}

/// `U σ U†` computed symbolically.
pub fn conjugate_pauli(gate: &Gate, p: &PauliOp) -> Result<PauliOp> {
    let act = gate_action(gate, p.group())?;
    let label = p.label();
    let new_label = homs::apply(&act.a, &label)?;
    let phase = p.phase.mul(&quadratic::evaluate(&act.corr, &label)?);
    PauliOp::from_label(phase, &new_label, &act.group_out)
}

/// Number of random points used to double-check each phase update.
const UPDATE_CHECK_SAMPLES: usize = 0;

pub fn apply_gate(s: &StabilizerDesc, gate: &Gate) -> Result<StabilizerDesc> {
    let act = gate_action(gate, &s.group_now)?;
    let lambda = homs::reduce(&homs::compose(&act.a, &s.lambda)?);
    let pre = s.phase.product(&act.corr)?;
    let phase = quadratic::compose_with_hom_checked(&pre, &act.a_inv, UPDATE_CHECK_SAMPLES)?.reduced();
    Ok(StabilizerDesc { group0: s.group0.clone(), group_now: act.group_out, lambda, phase })
}

pub fn run_circuit(c: &Circuit) -> Result<StabilizerDesc> {
    let mut s = initial_state(&c.group0, &c.input)?;
    for gate in &c.gates {
        s = apply_gate(&s, gate)?;
    }
    Ok(s)
}

/// `χ_{μ}(g)` for a label `(μ, g)` in `Γ(G)`, i.e. the commutation phase
/// between its `Z` and `X` parts.
pub fn label_twist(label: &GroupElement, group: &GroupSpec) -> Phase {
    let m = group.m();
    character_raw(&label.coords()[..m], &label.coords()[m..], group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::groups::Factor;

    fn el(g: &GroupSpec, x: &[i64]) -> GroupElement {
        let v: Vec<Rational> = x.iter().map(|&a| Rational::from(a)).collect();
        canonicalize(&v, g).unwrap()
    }

    #[test]
    fn initial_state_examples() {
        let z2 = GroupSpec::cyclic(&[2]);
        let s = initial_state(&z2, &el(&z2, &[0])).unwrap();
        assert_eq!(s.lambda().matrix(), &RationalMatrix::from_ints(&[&[1, 0], &[0, 0]]));
        assert!(s.m_matrix().is_zero());
        assert_eq!(s.v(), &[Rational::zero(), Rational::zero()]);

        let s1 = initial_state(&z2, &el(&z2, &[1])).unwrap();
        assert_eq!(s1.v(), &[q(1, 2), Rational::zero()]);
        let gam = gamma(&z2);
        assert!(quadratic::evaluate(s1.phase_function(), &el(&gam, &[0, 0])).unwrap().is_one());
        assert_eq!(quadratic::evaluate(s1.phase_function(), &el(&gam, &[1, 0])).unwrap(), Phase::new(Rational::one()));
    }

    #[test]
    fn fourier_on_z2() {
        let z2 = GroupSpec::cyclic(&[2]);
        let s = initial_state(&z2, &el(&z2, &[0])).unwrap();
        let s = apply_gate(&s, &Gate::PartialFourier(vec![0])).unwrap();
        assert_eq!(s.lambda().matrix(), &RationalMatrix::from_ints(&[&[0, 0], &[1, 0]]));
    }

    #[test]
    fn fourier_flips_group() {
        let g = GroupSpec::new(vec![Factor::Z, Factor::ZN(4)]).unwrap();
        let out = Gate::PartialFourier(vec![0]).output_group(&g).unwrap();
        assert_eq!(out, GroupSpec::new(vec![Factor::T, Factor::ZN(4)]).unwrap());
        assert!(Gate::PartialFourier(vec![2]).output_group(&g).is_err());
    }

    #[test]
    fn pauli_product_phases() {
        let z4 = GroupSpec::cyclic(&[4]);
        let z = PauliOp::new(Phase::one(), el(&z4, &[1]), el(&z4, &[0])).unwrap();
        let x = PauliOp::new(Phase::one(), el(&z4, &[0]), el(&z4, &[1])).unwrap();
        let zx = pauli_multiply(&z, &x).unwrap();
        let xz = pauli_multiply(&x, &z).unwrap();
        assert_eq!(zx.mu, xz.mu);
        assert_eq!(zx.phase, xz.phase.mul(&Phase::new(q(1, 2))));
        let id = PauliOp::identity(&z4);
        assert_eq!(pauli_multiply(&id, &zx).unwrap(), zx);
    }

    #[test]
    fn fourier_twice_negates() {
        let g = GroupSpec::new(vec![Factor::Z, Factor::ZN(3)]).unwrap();
        let f = Gate::PartialFourier(vec![0, 1]);
        let a1 = gate_action(&f, &g).unwrap();
        let a2 = gate_action(&f, &a1.group_out).unwrap();
        let both = homs::compose(&a2.a, &a1.a).unwrap();
        assert_eq!(both.matrix(), &RationalMatrix::identity(4).neg());
    }
}
