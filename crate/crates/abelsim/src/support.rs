//! Measurement support of a stabilizer state: the coset `x0 + im E_H`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix};
use crate::groups::{canonicalize, Factor, GroupElement, GroupSpec};
use crate::homs::{self, MatrixRep};
use crate::linsolve::{self, Feasibility};
use crate::stabilizer::StabilizerDesc;

/// `x0 + E_H(R^α × Z^β)` inside the final group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDesc {
    pub x0: GroupElement,
    pub e_h: MatrixRep,
}

#[derive(Serialize)]
struct SupportJson<'a> {
    group: &'a GroupSpec,
    x0: &'a [Rational],
    #[serde(rename = "E_H")]
    e_h: &'a RationalMatrix,
    domain: [usize; 2],
}

impl SupportDesc {
    pub fn group(&self) -> &GroupSpec {
        self.x0.group()
    }

    /// `(α, β)`: number of real and integer generators.
    pub fn domain_dims(&self) -> (usize, usize) {
        let d = self.e_h.domain();
        (d.count(|f| f == Factor::R), d.count(|f| f == Factor::Z))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (a, b) = self.domain_dims();
        serde_json::to_value(SupportJson { group: self.group(), x0: self.x0.coords(), e_h: self.e_h.matrix(), domain: [a, b] })
            .expect("plain data serializes")
    }

    /// Whether `x` lies in the support.
    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        let d = x.sub(&self.x0)?;
        Ok(linsolve::solve_group_system(&self.e_h, &d)?.is_feasible())
    }
}

fn block(lambda: &MatrixRep, rows: std::ops::Range<usize>, codomain: &GroupSpec) -> Result<MatrixRep> {
    let a = lambda.matrix().row_range(rows.start, rows.end);
    homs::validate(&a, lambda.domain(), codomain)
}

/// Labels of the diagonal stabilizer elements `Z(μ)`: a map `E_D: R^α × Z^β -> G*`
/// whose image is `{μ : (μ, 0) ∈ im Λ}`.
pub fn diagonal_labels(s: &StabilizerDesc) -> Result<MatrixRep> {
    let g = s.group_now();
    let m = g.m();
    let lam1 = block(s.lambda(), 0..m, &g.dual())?;
    let lam2 = block(s.lambda(), m..2 * m, g)?;
    let e_ker = linsolve::kernel(&lam2)?;
    homs::compose(&lam1, &e_ker)
}

/// Map `Γ0 -> G` onto the shift parts of the stabilizer labels, re-expressed
/// on a domain `R^α × Z^β`.
fn shift_image(s: &StabilizerDesc) -> Result<MatrixRep> {
    let g = s.group_now();
    let m = g.m();
    let lam2 = s.lambda().matrix().row_range(m, 2 * m);
    let g0 = s.lambda().domain();
    let mut order: Vec<usize> = (0..g0.m()).filter(|&j| g0.factor(j) == Factor::T).collect();
    let alpha = order.len();
    order.extend((0..g0.m()).filter(|&j| g0.factor(j) != Factor::T));
    let cols = lam2.select_cols(&order);
    let keep: Vec<usize> = (0..cols.cols()).filter(|&c| cols.col(c).iter().any(|v| !v.is_zero())).collect();
    let a = keep.iter().filter(|&&c| c < alpha).count();
    let mut dom = vec![Factor::R; a];
    dom.extend(std::iter::repeat_n(Factor::Z, keep.len() - a));
    let dom = GroupSpec::new(dom)?;
    homs::validate(&cols.select_cols(&keep), &dom, g).map_err(|e| Error::Internal(format!("support map invalid: {e}")))
}

pub fn support(s: &StabilizerDesc) -> Result<SupportDesc> {
    let g = s.group_now();
    let m = g.m();
    let e_d = diagonal_labels(s)?;
    let x_dom = e_d.domain().clone();
    let ed = e_d.matrix();

    let phase = s.phase_function();
    let m11 = phase.m().row_range(0, m).col_range(0, m);
    let c = phase.c();
    let lin: Vec<Rational> = (0..m).map(|i| &c[i] + &(&phase.v()[i] * &Rational::from(2))).collect();
    let mp = ed.transpose().mul(&m11).mul(ed);
    let l = ed.transpose().mul_vec(&lin);

    let k = x_dom.m();
    let mut target = Vec::with_capacity(k);
    for i in 0..k {
        let real = x_dom.factor(i) == Factor::R;
        for j in 0..k {
            let bad = if real || x_dom.factor(j) == Factor::R { !mp[(i, j)].is_zero() } else { !mp[(i, j)].is_integer() };
            if bad {
                return Err(Error::Internal(format!("diagonal stabilizer phases are not a character: M' = {mp}")));
            }
        }
        let d = if real { Rational::zero() } else { mp[(i, i)].clone() };
        target.push(-(&l[i] + &d) / Rational::from(2));
    }
    let dual = homs::dual(&e_d);
    let target = canonicalize(&target, dual.codomain())?;
    let x0 = match linsolve::solve_group_system(&dual, &target)? {
        Feasibility::Feasible(sol) => sol.x0,
        Feasibility::Infeasible => return Err(Error::Internal("no basis state satisfies the diagonal stabilizers".into())),
    };
    Ok(SupportDesc { x0, e_h: shift_image(s)? })
}
