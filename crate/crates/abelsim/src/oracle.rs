//! Brute-force state-vector simulation over finite groups `Z_N1 × ... × Z_Nc`.
//!
//! Amplitudes are indexed lexicographically with the first factor most
//! significant. Used as ground truth for the stabilizer pipeline.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::groups::{canonicalize, Factor, GroupElement, GroupSpec};
use crate::homs::MatrixRep;
use crate::quadratic::QuadraticFunc;
use crate::sampler;
use crate::stabilizer::{Circuit, Gate, PauliOp, StabilizerDesc};
use crate::support;

pub const DEFAULT_CAP: u64 = 4096;
pub const TOLERANCE: f64 = 1e-9;
pub const SUPPORT_TOL: f64 = 1e-6;
/// Chi-square acceptance threshold for sampled frequencies.
pub const P_THRESHOLD: f64 = 1e-4;

/// Dimension cap, overridable through `ABELSIM_ORACLE_CAP`.
pub fn oracle_cap() -> u64 {
    std::env::var("ABELSIM_ORACLE_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

fn moduli(g: &GroupSpec) -> Result<Vec<u64>> {
    g.factors()
        .iter()
        .enumerate()
        .map(|(i, f)| match f {
            Factor::ZN(n) => Ok(*n),
            other => Err(Error::InfiniteFactor { index: i, factor: *other }),
        })
        .collect()
}

fn dimension(g: &GroupSpec, cap: u64) -> Result<usize> {
    let ns = moduli(g)?;
    let mut d: u128 = 1;
    for n in &ns {
        d *= *n as u128;
        if d > cap as u128 {
            return Err(Error::CapExceeded { what: format!("dense space of {g}"), count: format!(">= {d}"), cap });
        }
    }
    Ok(d as usize)
}

fn digits(mut idx: usize, ns: &[u64]) -> Vec<u64> {
    let mut out = vec![0; ns.len()];
    for i in (0..ns.len()).rev() {
        out[i] = (idx as u64) % ns[i];
        idx /= ns[i] as usize;
    }
    out
}

fn index(ds: &[u64], ns: &[u64]) -> usize {
    ds.iter().zip(ns).fold(0usize, |acc, (d, n)| acc * *n as usize + *d as usize)
}

/// Element with lexicographic index `idx`.
pub fn element_at(g: &GroupSpec, idx: usize) -> Result<GroupElement> {
    let ns = moduli(g)?;
    let x: Vec<Rational> = digits(idx, &ns).into_iter().map(Rational::from).collect();
    canonicalize(&x, g)
}

pub fn index_of(x: &GroupElement) -> Result<usize> {
    let ns = moduli(x.group())?;
    let ds: Vec<u64> = x.coords().iter().map(|c| c.to_integer().and_then(|v| v.to_u64()).expect("canonical")).collect();
    Ok(index(&ds, &ns))
}

#[derive(Clone, Debug)]
pub struct DenseState {
    pub group: GroupSpec,
    pub amplitudes: Vec<Complex64>,
}

impl DenseState {
    pub fn basis(g: &GroupSpec, x: &GroupElement, cap: u64) -> Result<DenseState> {
        g.ensure_same(x.group())?;
        let d = dimension(g, cap)?;
        let mut amplitudes = vec![Complex64::zero(); d];
        amplitudes[index_of(x)?] = Complex64::new(1.0, 0.0);
        Ok(DenseState { group: g.clone(), amplitudes })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Integer form of an automorphism on a finite group: `α(h)_i = Σ A_ij h_j mod N_i`.
fn integer_matrix(a: &MatrixRep) -> Result<Vec<Vec<i64>>> {
    (0..a.codomain().m())
        .map(|i| {
            (0..a.domain().m())
                .map(|j| {
                    a.matrix()[(i, j)]
                        .to_i64()
                        .ok_or_else(|| Error::Internal(format!("non-integral entry in a finite-group map: {}", a.matrix()[(i, j)])))
                })
                .collect()
        })
        .collect()
}

fn apply_automorphism(state: &DenseState, a: &MatrixRep) -> Result<DenseState> {
    let ns = moduli(&state.group)?;
    let am = integer_matrix(a)?;
    let mut out = vec![Complex64::zero(); state.amplitudes.len()];
    for (idx, amp) in state.amplitudes.iter().enumerate() {
        if amp.is_zero() {
            continue;
        }
        let h = digits(idx, &ns);
        let img: Vec<u64> = am
            .iter()
            .zip(&ns)
            .map(|(row, n)| {
                let s: i128 = row.iter().zip(&h).map(|(a, x)| *a as i128 * *x as i128).sum();
                s.rem_euclid(*n as i128) as u64
            })
            .collect();
        out[index(&img, &ns)] += amp;
    }
    Ok(DenseState { group: state.group.clone(), amplitudes: out })
}

/// `ξ(h) = e^{iπ E(h)}` for every `h`, with `E` computed exactly over a common denominator.
pub fn quadratic_phases(q: &QuadraticFunc, cap: u64) -> Result<Vec<Complex64>> {
    let g = q.group();
    let d = dimension(g, cap)?;
    let ns = moduli(g)?;
    let m = g.m();
    let c = q.c();
    let lin: Vec<Rational> = (0..m).map(|i| &c[i] + &(&q.v()[i] * &Rational::from(2))).collect();
    let den = q.m().entries().chain(lin.iter()).fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let den_i = den.to_i128().ok_or_else(|| Error::Internal("phase denominator too large for the dense oracle".into()))?;
    let scaled = |x: &Rational| -> i128 { (x * &Rational::from_int(den.clone())).to_integer().and_then(|v| v.to_i128()).expect("cleared") };
    let mm: Vec<Vec<i128>> = (0..m).map(|i| (0..m).map(|j| scaled(&q.m()[(i, j)])).collect()).collect();
    let ll: Vec<i128> = lin.iter().map(scaled).collect();
    let modulus = 2 * den_i;
    Ok((0..d)
        .map(|idx| {
            let h = digits(idx, &ns);
            let mut e: i128 = 0;
            for i in 0..m {
                let hi = h[i] as i128;
                if hi == 0 {
                    continue;
                }
                e += ll[i] * hi;
                for j in 0..m {
                    e = (e + mm[i][j] * hi * h[j] as i128).rem_euclid(modulus);
                }
            }
            let e = e.rem_euclid(modulus);
            Complex64::from_polar(1.0, std::f64::consts::PI * e as f64 / den_i as f64)
        })
        .collect())
}

fn apply_fourier(state: &DenseState, regs: &[usize]) -> Result<DenseState> {
    let ns = moduli(&state.group)?;
    let mut amps = state.amplitudes.clone();
    for &r in regs {
        let n = ns[r] as usize;
        let stride: usize = ns[r + 1..].iter().map(|&x| x as usize).product();
        let block = n * stride;
        let norm = 1.0 / (n as f64).sqrt();
        let roots: Vec<Complex64> =
            (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
        let mut out = vec![Complex64::zero(); amps.len()];
        for base in (0..amps.len()).step_by(block) {
            for off in 0..stride {
                for y in 0..n {
                    let mut acc = Complex64::zero();
                    for x in 0..n {
                        acc += amps[base + x * stride + off] * roots[(x * y) % n];
                    }
                    out[base + y * stride + off] = acc * norm;
                }
            }
        }
        amps = out;
    }
    Ok(DenseState { group: state.group.clone(), amplitudes: amps })
}

pub fn apply_gate_dense(state: &DenseState, gate: &Gate, cap: u64) -> Result<DenseState> {
    let out_group = gate.output_group(&state.group)?;
    let mut next = match gate {
        Gate::Automorphism(a) => apply_automorphism(state, a)?,
        Gate::QuadraticPhase(q) => {
            let ph = quadratic_phases(q, cap)?;
            DenseState { group: state.group.clone(), amplitudes: state.amplitudes.iter().zip(ph).map(|(a, p)| a * p).collect() }
        }
        Gate::PartialFourier(regs) => apply_fourier(state, regs)?,
    };
    next.group = out_group;
    Ok(next)
}

pub fn dense_run(c: &Circuit, cap: u64) -> Result<DenseState> {
    for g in c.group_chain()? {
        dimension(&g, cap)?;
    }
    let mut s = DenseState::basis(&c.group0, &c.input, cap)?;
    for gate in &c.gates {
        s = apply_gate_dense(&s, gate, cap)?;
        let nrm = s.norm();
        if (nrm - 1.0).abs() > TOLERANCE {
            return Err(Error::Internal(format!("dense norm drifted to {nrm}")));
        }
    }
    Ok(s)
}

/// Elements with `|ψ(x)| > tol · max |ψ|`.
pub fn dense_support(s: &DenseState, tol: f64) -> Result<BTreeSet<GroupElement>> {
    let max = s.amplitudes.iter().map(|a| a.norm()).fold(0.0, f64::max);
    s.amplitudes
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > tol * max)
        .map(|(i, _)| element_at(&s.group, i))
        .collect()
}

/// Square dense matrix, row-major.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn max_diff(&self, other: &DenseMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let n = self.n;
        let mut data = vec![Complex64::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        DenseMatrix { n, data }
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let n = self.n;
        DenseMatrix { n, data: (0..n * n).map(|k| self.data[(k % n) * n + k / n].conj()).collect() }
    }

    pub fn identity(n: usize) -> DenseMatrix {
        DenseMatrix { n, data: (0..n * n).map(|k| if k % (n + 1) == 0 { Complex64::new(1.0, 0.0) } else { Complex64::zero() }).collect() }
    }
}

/// `γ Z(μ) X(g)`: `|x⟩ -> γ χ_μ(x + g) |x + g⟩`.
pub fn pauli_matrix(p: &PauliOp, cap: u64) -> Result<DenseMatrix> {
    let g = p.group();
    let n = dimension(g, cap)?;
    let mut data = vec![Complex64::zero(); n * n];
    let gamma = p.phase.to_complex();
    for x in 0..n {
        let y = element_at(g, x)?.add(&p.g)?;
        let amp = gamma * crate::groups::character(&p.mu, &y)?.to_complex();
        data[index_of(&y)? * n + x] = amp;
    }
    Ok(DenseMatrix { n, data })
}

/// `σ |ψ⟩` without forming the matrix.
pub fn apply_pauli(p: &PauliOp, s: &DenseState) -> Result<Vec<Complex64>> {
    p.group().ensure_same(&s.group)?;
    let mut out = vec![Complex64::zero(); s.amplitudes.len()];
    let gamma = p.phase.to_complex();
    for (x, a) in s.amplitudes.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let y = element_at(&s.group, x)?.add(&p.g)?;
        out[index_of(&y)?] = a * gamma * crate::groups::character(&p.mu, &y)?.to_complex();
    }
    Ok(out)
}

/// Whether `ψ` is a +1 eigenvector of the stabilizer elements labelled by the
/// images of the factor generators of `Γ(0)`. Returns the first failing one.
pub fn check_stabilized(desc: &StabilizerDesc, s: &DenseState) -> Result<Option<PauliOp>> {
    let g0 = desc.lambda().domain();
    for j in 0..g0.m() {
        let p = desc.member(&GroupElement::unit(g0, j))?;
        let img = apply_pauli(&p, s)?;
        if img.iter().zip(&s.amplitudes).any(|(a, b)| (a - b).norm() > TOLERANCE) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Dense matrix of a gate acting on `g`.
pub fn gate_matrix(gate: &Gate, g: &GroupSpec, cap: u64) -> Result<DenseMatrix> {
    let n = dimension(g, cap)?;
    let mut data = vec![Complex64::zero(); n * n];
    for x in 0..n {
        let col = apply_gate_dense(&DenseState::basis(g, &element_at(g, x)?, cap)?, gate, cap)?;
        for (y, a) in col.amplitudes.into_iter().enumerate() {
            data[y * n + x] = a;
        }
    }
    Ok(DenseMatrix { n, data })
}

/// `U σ U†` as a dense matrix.
pub fn dense_conjugate(gate: &Gate, p: &PauliOp, cap: u64) -> Result<DenseMatrix> {
    let u = gate_matrix(gate, p.group(), cap)?;
    Ok(u.mul(&pauli_matrix(p, cap)?).mul(&u.adjoint()))
}

/// Upper-tail p-value of Pearson's statistic against the uniform law.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let k = counts.len();
    let total: u64 = counts.iter().sum();
    if k < 2 || total == 0 {
        return 1.0;
    }
    let expected = total as f64 / k as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dist = ChiSquared::new((k - 1) as f64).expect("positive degrees of freedom");
    1.0 - dist.cdf(stat)
}

/// Outcome of comparing the stabilizer pipeline against the dense oracle.
#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    Match { support_size: usize, p_value: f64 },
    /// First element (in index order) present in exactly one of the supports.
    SupportMismatch { element: GroupElement, in_stabilizer: bool },
    /// Some dense probabilities are not flat over the support.
    NotUniform { element: GroupElement },
    Frequencies { p_value: f64 },
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        matches!(self, Comparison::Match { .. })
    }
}

/// Compare a stabilizer description with the dense final state: exact support
/// equality, then a chi-square test on `samples` net samples.
pub fn compare(desc: &StabilizerDesc, dense: &DenseState, samples: usize, seed: u64, cap: u64) -> Result<Comparison> {
    desc.group_now().ensure_same(&dense.group)?;
    let sup = support::support(desc)?;
    let net = sampler::build_net(&sup.e_h, &Rational::new(1, 64), &[], &sup.x0)?;
    let ours: BTreeSet<GroupElement> = sampler::enumerate_net(&net, cap)?.into_iter().collect();
    let theirs = dense_support(dense, SUPPORT_TOL)?;
    if let Some(first) = ours.symmetric_difference(&theirs).min() {
        return Ok(Comparison::SupportMismatch { element: first.clone(), in_stabilizer: ours.contains(first) });
    }
    let probs = dense.probabilities();
    let flat = 1.0 / theirs.len() as f64;
    for x in &theirs {
        if (probs[index_of(x)?] - flat).abs() > 1e-6 {
            return Ok(Comparison::NotUniform { element: x.clone() });
        }
    }
    let mut counts: BTreeMap<GroupElement, u64> = ours.iter().map(|x| (x.clone(), 0)).collect();
    for x in sampler::sample(&net, seed, samples) {
        *counts.get_mut(&x).ok_or_else(|| Error::Internal(format!("sample {x} outside the net")))? += 1;
    }
    let counts: Vec<u64> = counts.into_values().collect();
    let p = chi_square_uniform(&counts);
    if p < P_THRESHOLD {
        return Ok(Comparison::Frequencies { p_value: p });
    }
    Ok(Comparison::Match { support_size: theirs.len(), p_value: p })
}
