use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Smith normal form `A = U S V` with unimodular `U`, `V`.
///
/// The inverses of `U` and `V` are tracked alongside so that solvers do not
/// need to invert them again.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: RationalMatrix,
    pub s: RationalMatrix,
    pub v: RationalMatrix,
    pub u_inv: RationalMatrix,
    pub v_inv: RationalMatrix,
}

impl SnfResult {
    /// Diagonal entries `s_1 | s_2 | ...`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s[(i, i)].to_integer().expect("integral SNF")).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

type IntMat = Vec<Vec<BigInt>>;

fn identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_rational(m: &IntMat, rows: usize, cols: usize) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |i, j| Rational::from_int(m[i][j].clone()))
}

struct Work {
    s: IntMat,
    l: IntMat,
    u: IntMat,
    r: IntMat,
    v: IntMat,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.s.swap(a, b);
        self.l.swap(a, b);
        for row in self.u.iter_mut() {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.s.iter_mut() {
            row.swap(a, b);
        }
        for row in self.r.iter_mut() {
            row.swap(a, b);
        }
        self.v.swap(a, b);
    }

    fn neg_row(&mut self, i: usize) {
        for x in self.s[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.l[i].iter_mut() {
            *x = -&*x;
        }
        for row in self.u.iter_mut() {
            row[i] = -&row[i];
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self.s[src][j] * k;
            self.s[dst][j] += t;
        }
        for j in 0..self.rows {
            let t = &self.l[src][j] * k;
            self.l[dst][j] += t;
        }
        for row in self.u.iter_mut() {
            let t = &row[dst] * k;
            row[src] -= t;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in self.s.iter_mut() {
            let t = &row[src] * k;
            row[dst] += t;
        }
        for row in self.r.iter_mut() {
            let t = &row[src] * k;
            row[dst] += t;
        }
        for j in 0..self.cols {
            let t = &self.v[dst][j] * k;
            self.v[src][j] -= t;
        }
    }

    /// Minimum-|.| nonzero entry of the trailing block, ties to the smallest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.s[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.s[bi][bj].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.s[t][t].clone();
            let mut clean = true;
            for i in t + 1..self.rows {
                if !self.s[i][t].is_zero() {
                    let (qt, rem) = self.s[i][t].div_rem(&p);
                    self.add_row(i, t, &-qt);
                    clean &= rem.is_zero();
                }
            }
            for j in t + 1..self.cols {
                if !self.s[t][j].is_zero() {
                    let (qt, rem) = self.s[t][j].div_rem(&p);
                    self.add_col(j, t, &-qt);
                    clean &= rem.is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..self.rows)
                .find(|&i| (t + 1..self.cols).any(|j| !self.s[i][j].is_multiple_of(&p)));
            if let Some(i) = bad {
                self.add_row(t, i, &BigInt::one());
                continue;
            }
            if p.is_negative() {
                self.neg_row(t);
            }
            t += 1;
        }
    }
}

/// Smith normal form of an integral matrix.
pub fn snf(a: &RationalMatrix) -> Result<SnfResult> {
    let (rows, cols) = a.shape();
    let mut s = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for j in 0..cols {
            let x = a[(i, j)].to_integer().ok_or_else(|| {
                Error::Contract(format!("snf input entry ({i}, {j}) = {} is not integral", a[(i, j)]))
            })?;
            row.push(x);
        }
        s.push(row);
    }
    let mut w = Work { s, l: identity(rows), u: identity(rows), r: identity(cols), v: identity(cols), rows, cols };
    w.run();
    Ok(SnfResult {
        u: to_rational(&w.u, rows, rows),
        s: to_rational(&w.s, rows, cols),
        v: to_rational(&w.v, cols, cols),
        u_inv: to_rational(&w.l, rows, rows),
        v_inv: to_rational(&w.r, cols, cols),
    })
}

/// Integer determinant by fraction-free elimination (Bareiss).
pub fn determinant(a: &RationalMatrix) -> Rational {
    assert!(a.is_square());
    let n = a.rows();
    let mut m = a.clone();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Rational::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = x;
            }
        }
        prev = m[(k, k)].clone();
    }
    if n == 0 {
        Rational::one()
    } else {
        sign * &m[(n - 1, n - 1)]
    }
}
