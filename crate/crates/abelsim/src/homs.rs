//! Matrix representations of continuous homomorphisms between elementary groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result, Side};
use crate::exactalg::{Rational, RationalMatrix};
use crate::groups::{canonicalize, Factor, GroupElement, GroupSpec};
use crate::linsolve::{self, Feasibility, MixedSystem};

/// Certified matrix representation `A` of a homomorphism `domain -> codomain`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixRep {
    domain: GroupSpec,
    codomain: GroupSpec,
    a: RationalMatrix,
}

impl std::fmt::Debug for MatrixRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatrixRep({} -> {}, {:?})", self.domain, self.codomain, self.a)
    }
}

impl MatrixRep {
    pub fn domain(&self) -> &GroupSpec {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupSpec {
        &self.codomain
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn identity(g: &GroupSpec) -> MatrixRep {
        MatrixRep { domain: g.clone(), codomain: g.clone(), a: RationalMatrix::identity(g.m()) }
    }

    pub fn zero(g: &GroupSpec, h: &GroupSpec) -> MatrixRep {
        MatrixRep { domain: g.clone(), codomain: h.clone(), a: RationalMatrix::zeros(h.m(), g.m()) }
    }

    /// Wrap a matrix the caller knows to be valid; checked in debug builds.
    pub(crate) fn trusted(a: RationalMatrix, g: &GroupSpec, h: &GroupSpec) -> MatrixRep {
        debug_assert!(validate(&a, g, h).is_ok(), "trusted rep is invalid: {:?}", validate(&a, g, h).err());
        MatrixRep { domain: g.clone(), codomain: h.clone(), a }
    }
}

/// Whether a nonzero entry from `domain` into `codomain` is impossible.
pub fn forbidden(codomain: Factor, domain: Factor) -> bool {
    use Factor::*;
    matches!(
        (codomain, domain),
        (Z, R) | (Z, ZN(_)) | (Z, T) | (R, ZN(_)) | (R, T) | (ZN(_), R) | (ZN(_), T)
    )
}

fn divisible(x: &Rational, modulus: &BigInt) -> bool {
    if modulus.is_zero() {
        x.is_zero()
    } else {
        (x / &Rational::from_int(modulus.clone())).is_integer()
    }
}

/// Entry-level form allowed by the block structure of valid representations.
fn entry_form_ok(x: &Rational, codomain: Factor, domain: Factor) -> bool {
    use Factor::*;
    if x.is_zero() {
        return true;
    }
    if forbidden(codomain, domain) {
        return false;
    }
    match (codomain, domain) {
        (Z, Z) | (ZN(_), Z) | (T, T) => x.is_integer(),
        (ZN(n), ZN(m)) => x.is_integer() && (x.numer() % BigInt::from(n / n.gcd(&m))).is_zero(),
        (T, ZN(m)) => (BigInt::from(m) % x.denom()).is_zero(),
        _ => true,
    }
}

/// Check that `a` represents a continuous homomorphism `g -> h`.
pub fn validate(a: &RationalMatrix, g: &GroupSpec, h: &GroupSpec) -> Result<MatrixRep> {
    if a.rows() != h.m() || a.cols() != g.m() {
        return Err(Error::Dimension(format!(
            "matrix is {}x{} but {g} -> {h} needs {}x{}",
            a.rows(),
            a.cols(),
            h.m(),
            g.m()
        )));
    }
    if (0..h.m()).all(|i| (0..g.m()).all(|j| entry_form_ok(&a[(i, j)], h.factor(i), g.factor(j)))) {
        return Ok(MatrixRep { domain: g.clone(), codomain: h.clone(), a: a.clone() });
    }
    // Invalid: locate the first violated condition.
    for i in 0..h.m() {
        if h.factor(i).is_discrete() {
            if let Some(j) = (0..g.m()).find(|&j| !a[(i, j)].is_integer()) {
                return Err(Error::NonIntegerRow {
                    row: i,
                    col: j,
                    value: a[(i, j)].clone(),
                    factor: h.factor(i),
                });
            }
        }
    }
    for i in 0..h.m() {
        for j in 0..g.m() {
            let x = &a[(i, j)];
            if let Some(side) = entry_violation(x, h.factor(i), g.factor(j)) {
                if forbidden(h.factor(i), g.factor(j)) {
                    return Err(Error::ForbiddenBlock {
                        row: i,
                        col: j,
                        domain: g.factor(j),
                        codomain: h.factor(i),
                        value: x.clone(),
                    });
                }
                return Err(Error::ConsistencyViolation { row: i, col: j, side, value: x.clone() });
            }
        }
    }
    Err(Error::Internal(format!("consistency conditions pass but block form fails for {a:?}")))
}

/// First violated consistency condition of a single entry, if any.
pub(crate) fn entry_violation(x: &Rational, codomain: Factor, domain: Factor) -> Option<Side> {
    if x.is_zero() {
        return None;
    }
    let primal = Rational::from_int(domain.characteristic()) * x;
    if !divisible(&primal, &codomain.characteristic()) {
        return Some(Side::Primal);
    }
    let star = x * &codomain.upsilon() / domain.upsilon();
    let lhs = Rational::from_int(codomain.dual().characteristic()) * star;
    (!divisible(&lhs, &domain.dual().characteristic())).then_some(Side::Dual)
}

/// `α(x) ≡ A x (mod H)` for any representative tuple `x` of a domain element.
pub fn apply_raw(f: &MatrixRep, x: &[Rational]) -> Result<GroupElement> {
    canonicalize(&f.a.mul_vec(x), &f.codomain)
}

pub fn apply(f: &MatrixRep, g: &GroupElement) -> Result<GroupElement> {
    f.domain.ensure_same(g.group())?;
    apply_raw(f, g.coords())
}

/// `f2 ∘ f1`.
pub fn compose(f2: &MatrixRep, f1: &MatrixRep) -> Result<MatrixRep> {
    f2.domain.ensure_same(&f1.codomain)?;
    validate(&f2.a.mul(&f1.a), &f1.domain, &f2.codomain)
}

/// Dual homomorphism `H* -> G*`, `A* = Υ_G⁻¹ Aᵀ Υ_H`.
pub fn dual(f: &MatrixRep) -> MatrixRep {
    let a = f.domain.upsilon_inv_matrix().mul(&f.a.transpose()).mul(&f.codomain.upsilon_matrix());
    MatrixRep::trusted(a, &f.codomain.dual(), &f.domain.dual())
}

/// Same homomorphism with entries of discrete columns reduced modulo the
/// characteristic of their row.
pub fn reduce(f: &MatrixRep) -> MatrixRep {
    let mut a = f.a.clone();
    for j in 0..f.domain.m() {
        if !f.domain.factor(j).is_discrete() {
            continue;
        }
        for i in 0..f.codomain.m() {
            let c = f.codomain.factor(i).characteristic();
            if !c.is_zero() && !a[(i, j)].is_zero() {
                a[(i, j)] = a[(i, j)].modulo_int(&c);
            }
        }
    }
    MatrixRep::trusted(a, &f.domain, &f.codomain)
}

/// Whether two representations define the same homomorphism.
pub fn same_map(f: &MatrixRep, g: &MatrixRep) -> bool {
    if f.domain != g.domain || f.codomain != g.codomain {
        return false;
    }
    let d = f.a.sub(&g.a);
    (0..f.domain.m()).all(|j| {
        let col = d.col(j);
        if f.domain.factor(j).is_discrete() {
            canonicalize(&col, &f.codomain).map(|e| e.is_zero()).unwrap_or(false)
        } else {
            col.iter().all(Rational::is_zero)
        }
    })
}

/// Representation of the inverse of an automorphism `G -> G`.
///
/// Tries the plain matrix inverse first and falls back to solving one linear
/// system per column.
pub fn invert_automorphism(f: &MatrixRep) -> Result<MatrixRep> {
    f.domain.ensure_same(&f.codomain)?;
    let g = &f.domain;
    let id = MatrixRep::identity(g);
    let accept = |x: &MatrixRep| -> Result<bool> {
        Ok(same_map(&compose(f, x)?, &id) && same_map(&compose(x, f)?, &id))
    };
    if let Some(inv) = f.a.inverse() {
        if let Ok(x) = validate(&inv, g, g) {
            if accept(&x)? {
                return Ok(x);
            }
        }
    }
    let m = g.m();
    let mut x = RationalMatrix::zeros(m, m);
    for j in 0..m {
        let col = match g.factor(j) {
            Factor::Z | Factor::ZN(_) => {
                let e = GroupElement::unit(g, j);
                match linsolve::solve_group_system(f, &e)? {
                    Feasibility::Feasible(sol) => sol.x0.into_coords(),
                    Feasibility::Infeasible => {
                        return Err(Error::NotInvertible(format!("no preimage for generator e_{j}")))
                    }
                }
            }
            Factor::T => continuous_column(f, j, |k| k == Factor::T, false)?,
            Factor::R => continuous_column(f, j, |k| matches!(k, Factor::R | Factor::T), true)?,
        };
        for (i, v) in col.into_iter().enumerate() {
            x[(i, j)] = v;
        }
    }
    let xr = validate(&x, g, g).map_err(|e| Error::NotInvertible(format!("column solution is not a valid rep: {e}")))?;
    if !accept(&xr)? {
        return Err(Error::NotInvertible("column solution does not invert the map".into()));
    }
    Ok(xr)
}

/// Column `j` of the inverse for a continuous factor: solve `A x = e_j` exactly with
/// `x` supported on the coordinates selected by `support`, integral unless `real`.
fn continuous_column(f: &MatrixRep, j: usize, support: impl Fn(Factor) -> bool, real: bool) -> Result<Vec<Rational>> {
    let g = &f.domain;
    let m = g.m();
    let idx: Vec<usize> = (0..m).filter(|&i| support(g.factor(i))).collect();
    let block = f.a.select_cols(&idx);
    let mut rhs = vec![Rational::zero(); m];
    rhs[j] = Rational::one();
    let sys = if real {
        MixedSystem::new(RationalMatrix::zeros(m, 0), block, rhs)?
    } else {
        MixedSystem::new(block, RationalMatrix::zeros(m, 0), rhs)?
    };
    match linsolve::solve_mixed(&sys) {
        Feasibility::Feasible(sol) => {
            let vals = if real { sol.y0 } else { sol.x0 };
            let mut col = vec![Rational::zero(); m];
            for (k, &i) in idx.iter().enumerate() {
                col[i] = vals[k].clone();
            }
            Ok(col)
        }
        Feasibility::Infeasible => Err(Error::NotInvertible(format!("column system for e_{j} is infeasible"))),
    }
}
