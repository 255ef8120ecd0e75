//! General solutions of linear systems over elementary groups.
//!
//! A system `A x ≡ b (mod H)` is lifted to a mixed real-integer system by
//! giving every discrete domain coordinate an integer variable, every
//! continuous one a real variable, and every codomain factor of nonzero
//! characteristic an integer modulus variable.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{clear_denominators, snf, Rational, RationalMatrix};
use crate::groups::{canonicalize, Factor, GroupElement, GroupSpec};
use crate::homs::{self, MatrixRep};

/// Solvable or not; infeasibility is an ordinary outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility<T> {
    Feasible(T),
    Infeasible,
}

impl<T> Feasibility<T> {
    pub fn feasible(self) -> Option<T> {
        match self {
            Feasibility::Feasible(t) => Some(t),
            Feasibility::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// `A x + B y = c` with `x` integral and `y` real.
#[derive(Clone, Debug)]
pub struct MixedSystem {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    pub c: Vec<Rational>,
}

impl MixedSystem {
    pub fn new(a: RationalMatrix, b: RationalMatrix, c: Vec<Rational>) -> Result<MixedSystem> {
        if a.rows() != c.len() || b.rows() != c.len() {
            return Err(Error::Dimension(format!(
                "mixed system with {} and {} rows but {} right-hand sides",
                a.rows(),
                b.rows(),
                c.len()
            )));
        }
        Ok(MixedSystem { a, b, c })
    }
}

/// Particular solution plus kernel generators.
///
/// `kernel` has one row per variable (integer variables first, then real ones)
/// and its columns are `real_dirs` real directions followed by integer ones.
#[derive(Clone, Debug)]
pub struct MixedSolution {
    pub x0: Vec<Rational>,
    pub y0: Vec<Rational>,
    pub kernel: RationalMatrix,
    pub real_dirs: usize,
}

pub fn solve_mixed(sys: &MixedSystem) -> Feasibility<MixedSolution> {
    let n = sys.c.len();
    let p = sys.a.cols();
    let qn = sys.b.cols();
    // [B | A | c], eliminate on the real block first.
    let mut aug = sys.b.hstack(&sys.a).hstack(&RationalMatrix::column_vector(&sys.c));
    let pivots = aug.rref_in_place(qn);
    let r = pivots.len();

    // Residual pure-integer system C x = d.
    let resid_rows: Vec<usize> = (r..n).collect();
    let mut c = RationalMatrix::zeros(resid_rows.len(), p);
    let mut d = Vec::with_capacity(resid_rows.len());
    for (k, &i) in resid_rows.iter().enumerate() {
        let mut row: Vec<Rational> = (0..p).map(|j| aug[(i, qn + j)].clone()).collect();
        row.push(aug[(i, qn + p)].clone());
        let (scaled, _) = clear_denominators(&RationalMatrix::from_rows(vec![row], p + 1).expect("row width"));
        for j in 0..p {
            c[(k, j)] = scaled[(0, j)].clone();
        }
        d.push(scaled[(0, p)].clone());
    }
    let s = snf(&c).expect("cleared matrix is integral");
    let e = s.u_inv.mul_vec(&d);
    let diag = s.diagonal();
    let rank = s.rank();
    let mut z = vec![Rational::zero(); p];
    for i in 0..e.len() {
        if i < rank {
            let si = Rational::from_int(diag[i].clone());
            let zi = &e[i] / &si;
            if !zi.is_integer() {
                return Feasibility::Infeasible;
            }
            z[i] = zi;
        } else if !e[i].is_zero() {
            return Feasibility::Infeasible;
        }
    }
    let x0 = s.v_inv.mul_vec(&z);
    let int_kernel = s.v_inv.col_range(rank, p);

    // Real variables: pivots determined by x, free ones set to zero.
    let real_for = |x: &[Rational], with_rhs: bool| -> Vec<Rational> {
        let mut y = vec![Rational::zero(); qn];
        for (k, &pc) in pivots.iter().enumerate() {
            let mut v = if with_rhs { aug[(k, qn + p)].clone() } else { Rational::zero() };
            for (j, xj) in x.iter().enumerate() {
                let a = &aug[(k, qn + j)];
                if !a.is_zero() && !xj.is_zero() {
                    v -= a * xj;
                }
            }
            y[pc] = v;
        }
        y
    };
    let y0 = real_for(&x0, true);

    let free_real: Vec<usize> = (0..qn).filter(|c| !pivots.contains(c)).collect();
    let dims = free_real.len() + int_kernel.cols();
    let mut kernel = RationalMatrix::zeros(p + qn, dims);
    for (col, &f) in free_real.iter().enumerate() {
        kernel[(p + f, col)] = Rational::one();
        for (k, &pc) in pivots.iter().enumerate() {
            kernel[(p + pc, col)] = -&aug[(k, f)];
        }
    }
    for t in 0..int_kernel.cols() {
        let col = free_real.len() + t;
        let x = int_kernel.col(t);
        let y = real_for(&x, false);
        for (j, v) in x.into_iter().enumerate() {
            kernel[(j, col)] = v;
        }
        for (j, v) in y.into_iter().enumerate() {
            kernel[(p + j, col)] = v;
        }
    }
    Feasibility::Feasible(MixedSolution { x0, y0, kernel, real_dirs: free_real.len() })
}

/// Particular solution and a homomorphism from `R^α × Z^β` onto the kernel.
#[derive(Clone, Debug)]
pub struct GeneralSolution {
    pub x0: GroupElement,
    pub e: MatrixRep,
}

/// Solve `A x ≡ b (mod H)`.
pub fn solve_group_system(a: &MatrixRep, b: &GroupElement) -> Result<Feasibility<GeneralSolution>> {
    a.codomain().ensure_same(b.group())?;
    let g = a.domain();
    let h = a.codomain();
    let mat = a.matrix();
    let int_cols: Vec<usize> = (0..g.m()).filter(|&j| g.factor(j).is_discrete()).collect();
    let real_cols: Vec<usize> = (0..g.m()).filter(|&j| !g.factor(j).is_discrete()).collect();
    let moduli: Vec<(usize, BigInt)> = (0..h.m())
        .map(|i| (i, h.factor(i).characteristic()))
        .filter(|(_, d)| !d.is_zero())
        .collect();

    let mut ia = mat.select_cols(&int_cols).hstack(&RationalMatrix::zeros(h.m(), moduli.len()));
    for (k, (i, d)) in moduli.iter().enumerate() {
        ia[(*i, int_cols.len() + k)] = Rational::from_int(d.clone());
    }
    let rb = mat.select_cols(&real_cols);
    let sys = MixedSystem::new(ia, rb, b.coords().to_vec())?;
    let sol = match solve_mixed(&sys) {
        Feasibility::Feasible(s) => s,
        Feasibility::Infeasible => return Ok(Feasibility::Infeasible),
    };

    // Project back onto G's coordinates (drop modulus variables).
    let p = int_cols.len() + moduli.len();
    let mut x = vec![Rational::zero(); g.m()];
    for (k, &j) in int_cols.iter().enumerate() {
        x[j] = sol.x0[k].clone();
    }
    for (k, &j) in real_cols.iter().enumerate() {
        x[j] = sol.y0[k].clone();
    }
    let x0 = canonicalize(&x, g)?;

    let mut rows_of_g = vec![0usize; g.m()];
    for (k, &j) in int_cols.iter().enumerate() {
        rows_of_g[j] = k;
    }
    for (k, &j) in real_cols.iter().enumerate() {
        rows_of_g[j] = p + k;
    }
    let projected = sol.kernel.select_rows(&rows_of_g);
    let keep: Vec<usize> = (0..projected.cols()).filter(|&c| projected.col(c).iter().any(|v| !v.is_zero())).collect();
    let alpha = keep.iter().filter(|&&c| c < sol.real_dirs).count();
    let e = projected.select_cols(&keep);
    let mut dom = vec![Factor::R; alpha];
    dom.extend(std::iter::repeat_n(Factor::Z, keep.len() - alpha));
    let dom = GroupSpec::new(dom)?;
    let e = homs::validate(&e, &dom, g).map_err(|err| Error::Internal(format!("kernel map invalid: {err}")))?;
    Ok(Feasibility::Feasible(GeneralSolution { x0, e }))
}

/// Homomorphism from `R^α × Z^β` whose image is `ker A`.
pub fn kernel(a: &MatrixRep) -> Result<MatrixRep> {
    let zero = GroupElement::zero(a.codomain());
    match solve_group_system(a, &zero)? {
        Feasibility::Feasible(s) => Ok(s.e),
        Feasibility::Infeasible => Err(Error::Internal("homogeneous system reported infeasible".into())),
    }
}
