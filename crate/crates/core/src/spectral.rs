//! Hermitian adjacency matrices, their spectra, inertia and rank.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics;
use crate::error::{Error, Result};
use crate::graph::GainGraph;
use crate::Limits;

/// Dense Hermitian matrix; only built through constructors that fill
/// `(i, j)` and `(j, i)` with conjugate values.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> HermitianMatrix {
        HermitianMatrix { n, entries: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    fn set_pair(&mut self, i: usize, j: usize, z: Complex64) {
        self.entries[i * self.n + j] = z;
        self.entries[j * self.n + i] = z.conj();
    }

    /// Principal submatrix on the given rows/columns.
    pub fn principal(&self, idx: &[usize]) -> HermitianMatrix {
        let k = idx.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                entries.push(self.get(i, j));
            }
        }
        HermitianMatrix { n: k, entries }
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Determinant by LU decomposition.
    pub fn determinant(&self) -> Complex64 {
        if self.n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        self.to_nalgebra().determinant()
    }
}

/// `H(G, φ)`: entry `(i, j)` is `φ(e_{i,j})` on edges, 0 elsewhere.
pub fn hermitian_adjacency(g: &GainGraph) -> HermitianMatrix {
    let mut h = HermitianMatrix::zeros(g.n());
    for e in g.edges() {
        h.set_pair(e.u, e.v, e.gain.value());
    }
    h
}

/// Eigenvalues in ascending order.
pub fn eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>> {
    if h.n == 0 {
        return Ok(Vec::new());
    }
    let eig = SymmetricEigen::try_new(h.to_nalgebra(), f64::EPSILON, 1000 * h.n.max(10))
        .ok_or(Error::Convergence)?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InertiaResult {
    pub p_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
    pub rank: usize,
    pub tol_used: f64,
}

/// `max(1e-10, n·ε·max|λ|)`.
pub fn auto_tolerance(values: &[f64]) -> f64 {
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (values.len() as f64 * f64::EPSILON * max_abs).max(1e-10)
}

pub fn inertia_of_spectrum(values: &[f64], tol: Option<f64>) -> InertiaResult {
    let tol = tol.unwrap_or_else(|| auto_tolerance(values));
    let p_plus = values.iter().filter(|&&v| v > tol).count();
    let n_minus = values.iter().filter(|&&v| v < -tol).count();
    InertiaResult {
        p_plus,
        n_zero: values.len() - p_plus - n_minus,
        n_minus,
        rank: p_plus + n_minus,
        tol_used: tol,
    }
}

/// Signature of `h`; eigenvalues with `|λ| <= tol` count as zero. `None` selects the automatic tolerance.
pub fn inertia(h: &HermitianMatrix, tol: Option<f64>) -> Result<InertiaResult> {
    Ok(inertia_of_spectrum(&eigenvalues(h)?, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    /// Inertia of the numerically computed spectrum.
    Numeric,
    /// Fraction-free elimination over the Gaussian integers; gains must lie in {±1, ±i}.
    Exact,
    /// Largest nonzero characteristic coefficient from the elementary-subgraph expansion.
    Oracle,
}

impl std::str::FromStr for RankMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "numeric" => Ok(RankMode::Numeric),
            "exact" => Ok(RankMode::Exact),
            "oracle" => Ok(RankMode::Oracle),
            other => Err(format!("unknown rank mode {other:?} (numeric|exact|oracle)")),
        }
    }
}

impl std::fmt::Display for RankMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RankMode::Numeric => "numeric",
            RankMode::Exact => "exact",
            RankMode::Oracle => "oracle",
        })
    }
}

pub fn rank(g: &GainGraph, mode: RankMode) -> Result<usize> {
    rank_with(g, mode, &Limits::default())
}

pub fn rank_with(g: &GainGraph, mode: RankMode, limits: &Limits) -> Result<usize> {
    match mode {
        RankMode::Numeric => Ok(inertia(&hermitian_adjacency(g), None)?.rank),
        RankMode::Exact => exact_rank(g),
        RankMode::Oracle => combinatorics::rank_combinatorial_with(g, limits),
    }
}

#[derive(Clone, Debug, PartialEq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact in Z[i].
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num_re = &self.re * &d.re + &self.im * &d.im;
        let num_im = &self.im * &d.re - &self.re * &d.im;
        debug_assert!((&num_re % &norm).is_zero() && (&num_im % &norm).is_zero());
        GaussInt { re: num_re / &norm, im: num_im / norm }
    }
}

fn gaussian_entry(z: Complex64) -> GaussInt {
    GaussInt { re: BigInt::from(z.re.round() as i64), im: BigInt::from(z.im.round() as i64) }
}

/// Rank by Bareiss elimination over Z[i]; every intermediate entry is a minor
/// of the input, so the divisions are exact.
pub fn exact_rank(g: &GainGraph) -> Result<usize> {
    if !g.has_gaussian_gains() {
        return Err(Error::Precondition(
            "exact rank requires every gain to be one of 1, -1, i, -i".into(),
        ));
    }
    let n = g.n();
    let mut m = vec![vec![GaussInt::zero(); n]; n];
    for e in g.edges() {
        let z = e.gain.value();
        m[e.u][e.v] = gaussian_entry(z);
        m[e.v][e.u] = gaussian_entry(z.conj());
    }
    let mut prev = GaussInt { re: BigInt::one(), im: BigInt::zero() };
    let mut rank = 0;
    for col in 0..n {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..n {
            let lead = m[i][col].clone();
            for j in col + 1..n {
                let t = pivot.mul(&m[i][j]).sub(&lead.mul(&m[rank][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][col] = GaussInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    debug_assert!(prev.re.abs() + prev.im.abs() > BigInt::zero());
    Ok(rank)
}

/// `(a_1, ..., a_n)` of `det(λI - H) = λⁿ + a_1 λⁿ⁻¹ + … + a_n`, from the
/// spectrum via elementary symmetric polynomials: `a_k = (-1)^k e_k(λ)`.
pub fn char_poly_numeric(h: &HermitianMatrix) -> Result<Vec<f64>> {
    let values = eigenvalues(h)?;
    let mut e = vec![0.0f64; values.len() + 1];
    e[0] = 1.0;
    for (count, &lambda) in values.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            e[k] += lambda * e[k - 1];
        }
    }
    Ok((1..=values.len())
        .map(|k| if k % 2 == 0 { e[k] } else { -e[k] })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Gain, SimpleGraph};

    fn cycle_with_gain(l: usize, gain: Gain) -> GainGraph {
        let mut edges: Vec<_> = (1..l).map(|i| (i - 1, i, Gain::ONE)).collect();
        edges.push((l - 1, 0, gain));
        GainGraph::new(l, edges).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn adjacency_entries() {
        let phi = Gain::root_of_unity(1, 8).unwrap();
        let h = hermitian_adjacency(&GainGraph::new(2, [(0, 1, phi)]).unwrap());
        assert_eq!(h.get(0, 1), phi.value());
        assert_eq!(h.get(1, 0), phi.value().conj());
        assert_eq!(h.get(0, 0), Complex64::new(0.0, 0.0));

        let tri = hermitian_adjacency(&GainGraph::with_unit_gains(&SimpleGraph::cycle(3)));
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { 1.0 };
                assert_eq!(tri.get(i, j), Complex64::new(want, 0.0));
            }
        }
        assert_eq!(hermitian_adjacency(&GainGraph::new(3, []).unwrap()), HermitianMatrix::zeros(3));
    }

    #[test]
    fn spectra() {
        let tri = hermitian_adjacency(&GainGraph::with_unit_gains(&SimpleGraph::cycle(3)));
        assert!(close(&eigenvalues(&tri).unwrap(), &[-1.0, -1.0, 2.0], 1e-12));
        let k2 = hermitian_adjacency(&GainGraph::new(2, [(0, 1, Gain::from_radians(0.7))]).unwrap());
        assert!(close(&eigenvalues(&k2).unwrap(), &[-1.0, 1.0], 1e-12));
        assert_eq!(eigenvalues(&HermitianMatrix::zeros(3)).unwrap(), vec![0.0; 3]);
        assert!(eigenvalues(&HermitianMatrix::zeros(0)).unwrap().is_empty());
    }

    #[test]
    fn cycle_inertia() {
        let c3 = hermitian_adjacency(&cycle_with_gain(3, Gain::ONE));
        let r = inertia(&c3, None).unwrap();
        assert_eq!((r.p_plus, r.n_zero, r.n_minus), (1, 0, 2));

        let c5 = hermitian_adjacency(&cycle_with_gain(5, Gain::I));
        let r = inertia(&c5, None).unwrap();
        assert_eq!((r.p_plus, r.n_zero, r.n_minus), (2, 1, 2));

        let c4 = hermitian_adjacency(&cycle_with_gain(4, Gain::ONE));
        let r = inertia(&c4, None).unwrap();
        assert_eq!((r.p_plus, r.n_zero, r.n_minus, r.rank), (1, 2, 1, 2));
        assert_eq!(r.p_plus + r.n_zero + r.n_minus, 4);
    }

    #[test]
    fn explicit_tolerance() {
        let r = inertia_of_spectrum(&[-1e-3, 0.0, 5e-4, 2.0], Some(1e-3));
        assert_eq!((r.p_plus, r.n_zero, r.n_minus), (1, 3, 0));
        assert_eq!(auto_tolerance(&[1.0, -3.0]), 1e-10);
    }

    #[test]
    fn rank_modes_agree_on_small_cases() {
        let c4 = cycle_with_gain(4, Gain::ONE);
        for mode in [RankMode::Numeric, RankMode::Exact, RankMode::Oracle] {
            assert_eq!(rank(&c4, mode).unwrap(), 2, "{mode}");
        }
        let c4i = cycle_with_gain(4, Gain::I);
        for mode in [RankMode::Numeric, RankMode::Exact, RankMode::Oracle] {
            assert_eq!(rank(&c4i, mode).unwrap(), 4, "{mode}");
        }
        let path = GainGraph::new(4, [(0, 1, Gain::I), (1, 2, Gain::MINUS_ONE), (2, 3, Gain::MINUS_I)]).unwrap();
        for mode in [RankMode::Numeric, RankMode::Exact, RankMode::Oracle] {
            assert_eq!(rank(&path, mode).unwrap(), 4, "{mode}");
        }
        assert_eq!(rank(&GainGraph::new(5, []).unwrap(), RankMode::Exact).unwrap(), 0);
    }

    #[test]
    fn exact_mode_requires_gaussian_gains() {
        let g = cycle_with_gain(3, Gain::root_of_unity(1, 8).unwrap());
        assert!(matches!(rank(&g, RankMode::Exact), Err(Error::Precondition(_))));
        let float = GainGraph::new(2, [(0, 1, Gain::from_radians(0.0))]).unwrap();
        assert!(matches!(rank(&float, RankMode::Exact), Err(Error::Precondition(_))));
    }

    #[test]
    fn oracle_mode_respects_limit() {
        let g = GainGraph::with_unit_gains(&SimpleGraph::path(13));
        assert!(matches!(rank(&g, RankMode::Oracle), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn characteristic_coefficients() {
        let tri = hermitian_adjacency(&GainGraph::with_unit_gains(&SimpleGraph::cycle(3)));
        assert!(close(&char_poly_numeric(&tri).unwrap(), &[0.0, -3.0, -2.0], 1e-10));
        let k2 = hermitian_adjacency(&GainGraph::new(2, [(0, 1, Gain::I)]).unwrap());
        assert!(close(&char_poly_numeric(&k2).unwrap(), &[0.0, -1.0], 1e-12));
        let c4 = hermitian_adjacency(&GainGraph::with_unit_gains(&SimpleGraph::cycle(4)));
        assert!(close(&char_poly_numeric(&c4).unwrap(), &[0.0, -4.0, 0.0, 0.0], 1e-10));
    }

    #[test]
    fn determinant_of_principal_minor() {
        let c4 = hermitian_adjacency(&GainGraph::with_unit_gains(&SimpleGraph::cycle(4)));
        assert!(c4.determinant().norm() < 1e-12);
        let edge = c4.principal(&[0, 1]);
        assert!((edge.determinant() - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }
}
