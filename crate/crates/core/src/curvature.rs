//! Ricci curvature of left-invariant metrics on Lie groups, computed on a
//! frame of left-invariant vector fields from the structure constants.
//!
//! Levi-Civita coefficients come from the Koszul formula on the frame,
//!
//! ```text
//! 2 g(∇_i e_j, e_k) = g([e_i,e_j], e_k) - g([e_j,e_k], e_i) + g([e_k,e_i], e_j)
//! ```
//!
//! and `Ric(e_j, e_k) = tr(X ↦ R(X, e_j) e_k)` with
//! `R(X,Y) = ∇_X∇_Y - ∇_Y∇_X - ∇_[X,Y]`. Everything is generic over
//! [`Scalar`], so rational inputs give exact curvature.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};

/// Field the curvature is computed over.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed {
    fn from_i64(n: i64) -> Self;
    /// Exact zero test for rationals, a small absolute tolerance for floats.
    fn negligible(&self) -> bool;
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn negligible(&self) -> bool {
        self.is_zero()
    }
}

/// Absolute tolerance of the floating path.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn negligible(&self) -> bool {
        self.abs() < FLOAT_TOLERANCE
    }
}

/// Square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = T::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, x) in entries.into_iter().enumerate() {
            m.data[i * m.dim + i] = x;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidAlgebra("matrix is not square".into()));
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.dim + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim)
            .all(|i| (0..i).all(|j| (self.get(i, j).clone() - self.get(j, i).clone()).negligible()))
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .filter(|&i| !a.get(i, c).negligible())
                .max_by(|&i, &j| {
                    a.get(i, c)
                        .abs()
                        .partial_cmp(&a.get(j, c).abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })?;
            for j in 0..n {
                a.data.swap(c * n + j, p * n + j);
                inv.data.swap(c * n + j, p * n + j);
            }
            let pivot = a.get(c, c).clone();
            for j in 0..n {
                *a.get_mut(c, j) = a.get(c, j).clone() / pivot.clone();
                *inv.get_mut(c, j) = inv.get(c, j).clone() / pivot.clone();
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let da = f.clone() * a.get(c, j).clone();
                    let di = f.clone() * inv.get(c, j).clone();
                    *a.get_mut(i, j) = a.get(i, j).clone() - da;
                    *inv.get_mut(i, j) = inv.get(i, j).clone() - di;
                }
            }
        }
        Some(inv)
    }

    /// Sylvester's criterion on leading principal minors, via elimination
    /// without pivoting.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.dim;
        let mut a = self.clone();
        for c in 0..n {
            let pivot = a.get(c, c).clone();
            if !pivot.is_positive() || pivot.negligible() {
                return false;
            }
            for i in c + 1..n {
                let f = a.get(i, c).clone() / pivot.clone();
                for j in c..n {
                    let d = f.clone() * a.get(c, j).clone();
                    *a.get_mut(i, j) = a.get(i, j).clone() - d;
                }
            }
        }
        true
    }

    /// `max |a_ij|`.
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|x| x.abs())
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }
}

/// A Lie algebra with a left-invariant inner product on a frame `e_0..e_{dim-1}`
/// and a frame vector playing the Reeb field `ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricAlgebra<T = BigRational> {
    dim: usize,
    /// `c[(i*dim + j)*dim + k] = c^k_{ij}` with `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
    structure: Vec<T>,
    metric: Matrix<T>,
    reeb_index: usize,
}

impl<T: Scalar> MetricAlgebra<T> {
    /// Validates antisymmetry, the Jacobi identity, symmetry and positivity
    /// of the metric, and the Reeb index.
    pub fn new(structure: Vec<T>, metric: Matrix<T>, reeb_index: usize) -> Result<Self> {
        let dim = metric.dim();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("empty frame".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                structure.len()
            )));
        }
        if reeb_index >= dim {
            return Err(Error::InvalidAlgebra(format!(
                "Reeb index {reeb_index} outside frame of size {dim}"
            )));
        }
        if !metric.is_symmetric() {
            return Err(Error::InvalidAlgebra("metric is not symmetric".into()));
        }
        let alg = Self {
            dim,
            structure,
            metric,
            reeb_index,
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if !(alg.c(i, j, k).clone() + alg.c(j, i, k).clone()).negligible() {
                        return Err(Error::InvalidAlgebra(format!(
                            "bracket [e{i}, e{j}] is not antisymmetric"
                        )));
                    }
                }
            }
        }
        if !alg.satisfies_jacobi() {
            return Err(Error::InvalidAlgebra("Jacobi identity fails".into()));
        }
        if !alg.metric.is_positive_definite() {
            return Err(Error::DegenerateMetric);
        }
        Ok(alg)
    }

    /// Builds the structure tensor from the nonzero brackets
    /// `[e_i, e_j] = Σ coeff e_k` given as `(i, j, k, coeff)`; `[e_j, e_i]` is
    /// filled in by antisymmetry.
    pub fn from_brackets(
        dim: usize,
        brackets: &[(usize, usize, usize, T)],
        metric: Matrix<T>,
        reeb_index: usize,
    ) -> Result<Self> {
        let mut structure = vec![T::zero(); dim * dim * dim];
        for (i, j, k, coeff) in brackets {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidAlgebra("bracket index out of range".into()));
            }
            structure[(i * dim + j) * dim + k] = coeff.clone();
            structure[(j * dim + i) * dim + k] = -coeff.clone();
        }
        Self::new(structure, metric, reeb_index)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &Matrix<T> {
        &self.metric
    }

    pub fn reeb_index(&self) -> usize {
        self.reeb_index
    }

    /// `c^k_{ij}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &T {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim;
        // Σ_cyclic [[e_i, e_j], e_k] = Σ_l c^l_ij c^m_lk + ...
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut s = T::zero();
                        for l in 0..n {
                            s = s
                                + self.c(i, j, l).clone() * self.c(l, k, m).clone()
                                + self.c(j, k, l).clone() * self.c(l, i, m).clone()
                                + self.c(k, i, l).clone() * self.c(l, j, m).clone();
                        }
                        if !s.negligible() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `η(e_i) = g(ξ, e_i)`.
    pub fn eta(&self) -> Vec<T> {
        self.metric.row(self.reeb_index).to_vec()
    }
}

/// `Γ^m_{ij}` with `∇_{e_i} e_j = Σ_m Γ^m_{ij} e_m`, indexed `[(i*n + j)*n + m]`.
fn connection<T: Scalar>(alg: &MetricAlgebra<T>) -> Result<Vec<T>> {
    let n = alg.dim;
    let g = &alg.metric;
    let g_inv = g.inverse().ok_or(Error::DegenerateMetric)?;
    // C_ijk = g([e_i, e_j], e_k)
    let mut bracket_g = vec![T::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = T::zero();
                for l in 0..n {
                    s = s + alg.c(i, j, l).clone() * g.get(l, k).clone();
                }
                bracket_g[(i * n + j) * n + k] = s;
            }
        }
    }
    let cg = |i: usize, j: usize, k: usize| bracket_g[(i * n + j) * n + k].clone();
    let two = T::from_i64(2);
    let mut gamma = vec![T::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            // lowered coefficients g(∇_i e_j, e_k)
            let lowered: Vec<T> = (0..n)
                .map(|k| (cg(i, j, k) - cg(j, k, i) + cg(k, i, j)) / two.clone())
                .collect();
            for m in 0..n {
                let mut s = T::zero();
                for (k, low) in lowered.iter().enumerate() {
                    s = s + low.clone() * g_inv.get(k, m).clone();
                }
                gamma[(i * n + j) * n + m] = s;
            }
        }
    }
    Ok(gamma)
}

/// Ricci tensor `Ric(e_j, e_k)` on the frame.
pub fn ricci<T: Scalar>(alg: &MetricAlgebra<T>) -> Result<Matrix<T>> {
    let n = alg.dim;
    let gamma = connection(alg)?;
    let gm = |i: usize, j: usize, m: usize| gamma[(i * n + j) * n + m].clone();
    let mut ric = Matrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            let mut total = T::zero();
            for i in 0..n {
                // e_i-component of R(e_i, e_j) e_k
                let mut r = T::zero();
                for m in 0..n {
                    // ∇_i ∇_j e_k - ∇_j ∇_i e_k
                    r = r + gm(j, k, m) * gm(i, m, i) - gm(i, k, m) * gm(j, m, i);
                    // - ∇_[e_i, e_j] e_k
                    r = r - alg.c(i, j, m).clone() * gm(m, k, i);
                }
                total = total + r;
            }
            *ric.get_mut(j, k) = total;
        }
    }
    Ok(ric)
}

/// Best η-Einstein fit of the Ricci tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciFit<T = BigRational> {
    pub lambda_fit: T,
    pub nu_fit: T,
    /// `max |Ric - λ g - ν η⊗η|` over frame components.
    pub residual: T,
    /// `max |Ric(ξ, e_i) - 2n η(e_i)|`.
    pub k_contact_residual: T,
    pub ricci: Matrix<T>,
}

impl<T: Scalar> RicciFit<T> {
    pub fn is_eta_einstein(&self) -> bool {
        self.residual.negligible()
    }

    pub fn k_contact_holds(&self) -> bool {
        self.k_contact_residual.negligible()
    }
}

/// Least-squares solve of `Ric = λ g + ν η⊗η` in the Frobenius inner product
/// on frame components.
pub fn eta_fit<T: Scalar>(alg: &MetricAlgebra<T>) -> Result<RicciFit<T>> {
    let n = alg.dim;
    if n.is_multiple_of(2) {
        return Err(Error::InvalidAlgebra(format!(
            "contact frames have odd dimension, got {n}"
        )));
    }
    let ric = ricci(alg)?;
    let g = alg.metric();
    let eta = alg.eta();
    let mut gg = T::zero();
    let mut ge = T::zero();
    let mut ee = T::zero();
    let mut rg = T::zero();
    let mut re = T::zero();
    for i in 0..n {
        for j in 0..n {
            let gij = g.get(i, j).clone();
            let eij = eta[i].clone() * eta[j].clone();
            let rij = ric.get(i, j).clone();
            gg = gg + gij.clone() * gij.clone();
            ge = ge + gij.clone() * eij.clone();
            ee = ee + eij.clone() * eij.clone();
            rg = rg + rij.clone() * gij;
            re = re + rij * eij;
        }
    }
    let det = gg.clone() * ee.clone() - ge.clone() * ge.clone();
    if det.negligible() {
        return Err(Error::DegenerateMetric);
    }
    let lambda = (rg.clone() * ee - re.clone() * ge.clone()) / det.clone();
    let nu = (gg * re - ge * rg) / det;

    let mut residual = T::zero();
    for i in 0..n {
        for j in 0..n {
            let diff = (ric.get(i, j).clone()
                - lambda.clone() * g.get(i, j).clone()
                - nu.clone() * eta[i].clone() * eta[j].clone())
            .abs();
            if diff > residual {
                residual = diff;
            }
        }
    }
    let two_n = T::from_i64((n - 1) as i64);
    let xi = alg.reeb_index();
    let mut k_contact = T::zero();
    for i in 0..n {
        let diff = (ric.get(xi, i).clone() - two_n.clone() * eta[i].clone()).abs();
        if diff > k_contact {
            k_contact = diff;
        }
    }
    Ok(RicciFit {
        lambda_fit: lambda,
        nu_fit: nu,
        residual,
        k_contact_residual: k_contact,
        ricci: ric,
    })
}

/// The Heisenberg algebra `h(n)` with frame `X_1..X_n, Y_1..Y_n, ξ`,
/// orthonormal, and `[X_i, Y_i] = 2ξ` (the Sasakian normalization
/// `dη = 2 g(·, Φ·)`).
pub fn heisenberg<T: Scalar>(n: usize) -> Result<MetricAlgebra<T>> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("n must be positive".into()));
    }
    let dim = 2 * n + 1;
    let xi = 2 * n;
    let brackets: Vec<_> = (0..n).map(|i| (i, n + i, xi, T::from_i64(2))).collect();
    MetricAlgebra::from_brackets(dim, &brackets, Matrix::identity(dim), xi)
}

/// `su(2)` with the D-homothetic deformation of the round metric by scale `a`.
///
/// The round metric has orthonormal `e_1, e_2, e_3` with
/// `[e_i, e_j] = 2 ε_{ijk} e_k` (so `Ric = 2g`) and Reeb field `e_3`. After
/// the homothety `g' = a g + a(a-1) η⊗η`, `ξ' = e_3/a`; the frame used is
/// `(e_1, e_2, ξ')`, in which `g' = diag(a, a, 1)`.
pub fn berger<T: Scalar>(a: T) -> Result<MetricAlgebra<T>> {
    if !a.is_positive() || a.negligible() {
        return Err(Error::NonPositiveScale(format!("{a:?}")));
    }
    let two = T::from_i64(2);
    let brackets = vec![
        (0, 1, 2, two.clone() * a.clone()),
        (1, 2, 0, two.clone() / a.clone()),
        (2, 0, 1, two / a.clone()),
    ];
    let metric = Matrix::diagonal(vec![a.clone(), a, T::one()]);
    MetricAlgebra::from_brackets(3, &brackets, metric, 2)
}

/// Distance below which a sample counts as sitting on a pole of `tan`.
pub const POLE_TOLERANCE: f64 = 1e-6;

/// Checks `f² - ξ̄(f) = -α²` for `f = α tan(z + c)` and `ξ̄(f) = α ∂_z f`,
/// with `α² = (2n+2)/(2n-1)`. Returns the largest `|f² - ξ̄(f) + α²|`.
pub fn ew_function_check(n: u32, samples: &[f64], c: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidWeights("n must be positive".into()));
    }
    let alpha_sq = (2.0 * n as f64 + 2.0) / (2.0 * n as f64 - 1.0);
    let alpha = alpha_sq.sqrt();
    let mut worst = 0.0f64;
    for &z in samples {
        let t = z + c - std::f64::consts::FRAC_PI_2;
        let off = t - std::f64::consts::PI * (t / std::f64::consts::PI).round();
        if off.abs() < POLE_TOLERANCE {
            return Err(Error::PoleProximity(z));
        }
        let f = alpha * (z + c).tan();
        let sec = 1.0 / (z + c).cos();
        let df = alpha * sec * sec;
        let xi_f = alpha * df;
        worst = worst.max((f * f - xi_f + alpha_sq).abs());
    }
    Ok(worst)
}
