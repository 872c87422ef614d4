//! Spin-ℓ representations of SU(2) and their characters.
//!
//! Basis vectors are ordered by weight m = ℓ, ℓ−1, …, −ℓ, so index `i` carries m = ℓ − i.
//! Matrices are built from the action of U on homogeneous polynomials of degree 2ℓ:
//! |m⟩ = ξ^{ℓ+m} η^{ℓ−m} / √((ℓ+m)!(ℓ−m)!), with ξ ↦ U₁₁ξ + U₂₁η and η ↦ U₁₂ξ + U₂₂η.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{haar_class_quadrature, haar_sample_with, So4Element, Su2Element};

/// A spin label ℓ ∈ {0, 1/2, 1, …}, stored as 2ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SpinLabel {
    pub twice_ell: u32,
}

impl SpinLabel {
    pub const ZERO: SpinLabel = SpinLabel { twice_ell: 0 };
    pub const HALF: SpinLabel = SpinLabel { twice_ell: 1 };
    pub const ONE: SpinLabel = SpinLabel { twice_ell: 2 };

    pub const fn from_twice(twice_ell: u32) -> Self {
        Self { twice_ell }
    }

    /// Accepts non-negative multiples of 1/2.
    pub fn from_f64(ell: f64) -> Result<Self> {
        let twice = 2.0 * ell;
        if !(twice >= 0.0) || (twice - twice.round()).abs() > 1e-12 || twice > u32::MAX as f64 {
            return Err(Error::InvalidArgument(format!(
                "{ell} is not a non-negative half-integer"
            )));
        }
        Ok(Self {
            twice_ell: twice.round() as u32,
        })
    }

    pub fn value(&self) -> f64 {
        0.5 * self.twice_ell as f64
    }

    pub fn dim(&self) -> usize {
        self.twice_ell as usize + 1
    }

    pub fn is_integer(&self) -> bool {
        self.twice_ell.is_multiple_of(2)
    }

    /// Δm²_ℓ = ℓ(ℓ+1).
    pub fn casimir(&self) -> f64 {
        let l = self.value();
        l * (l + 1.0)
    }

    /// Twice the weight m carried by basis index `i`.
    pub fn twice_weight(&self, i: usize) -> i64 {
        self.twice_ell as i64 - 2 * i as i64
    }

    /// All labels 0, 1/2, …, up to and including `self`.
    pub fn up_to(self) -> impl Iterator<Item = SpinLabel> {
        (0..=self.twice_ell).map(SpinLabel::from_twice)
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_ell / 2)
        } else {
            write!(f, "{}/2", self.twice_ell)
        }
    }
}

impl FromStr for SpinLabel {
    type Err = Error;

    /// Parses "3", "1.5" or "3/2".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let bad = || Error::InvalidArgument(format!("invalid spin label {s:?}"));
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(Self::from_twice(2 * num)),
                "2" => Ok(Self::from_twice(num)),
                _ => Err(bad()),
            };
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("invalid spin label {s:?}")))?;
        Self::from_f64(v)
    }
}

/// An (ℓ_A, ℓ_B) label of SU(2)×SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RepLabel {
    pub ell_a: SpinLabel,
    pub ell_b: SpinLabel,
}

impl RepLabel {
    pub const fn new(ell_a: SpinLabel, ell_b: SpinLabel) -> Self {
        Self { ell_a, ell_b }
    }

    pub fn dim(&self) -> usize {
        self.ell_a.dim() * self.ell_b.dim()
    }

    /// The four-vector representation (1/2, 1/2).
    pub const fn vector() -> Self {
        Self::new(SpinLabel::HALF, SpinLabel::HALF)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WignerDMatrix {
    pub ell: SpinLabel,
    pub matrix: DMatrix<Complex64>,
}

#[derive(Debug, Clone, Copy)]
struct Term {
    row: usize,
    col: usize,
    // Exponents of U₁₁, U₁₂, U₂₁, U₂₂.
    pow: [u32; 4],
    coef: f64,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Expansion coefficients of D^ℓ as polynomials in the entries of U.
fn terms(ell: SpinLabel) -> Arc<Vec<Term>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<Term>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().unwrap().get(&ell.twice_ell) {
        return Arc::clone(t);
    }
    let n = ell.twice_ell;
    let mut out = Vec::new();
    for col in 0..=n {
        // Column m: a = ℓ+m powers of ξ, b = ℓ−m powers of η.
        let a = n - col;
        let b = col;
        let norm_col = (factorial(a) * factorial(b)).sqrt();
        for k in 0..=a {
            for l in 0..=b {
                // ξ-degree of the product term is k + l.
                let xi_deg = k + l;
                let row = (n - xi_deg) as usize;
                let norm_row = (factorial(xi_deg) * factorial(n - xi_deg)).sqrt();
                out.push(Term {
                    row,
                    col: col as usize,
                    pow: [k, l, a - k, b - l],
                    coef: binomial(a, k) * binomial(b, l) * norm_row / norm_col,
                });
            }
        }
    }
    let out = Arc::new(out);
    cache
        .write()
        .unwrap()
        .entry(ell.twice_ell)
        .or_insert(out)
        .clone()
}

fn powers(z: Complex64, n: u32) -> Vec<Complex64> {
    let mut p = Vec::with_capacity(n as usize + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        p.push(acc);
        acc *= z;
    }
    p
}

/// D^ℓ(A) for any 2×2 complex matrix A; a homomorphism on GL(2,ℂ).
pub fn wigner_d_matrix(ell: SpinLabel, a: &Matrix2<Complex64>) -> DMatrix<Complex64> {
    let n = ell.twice_ell;
    let p = [
        powers(a[(0, 0)], n),
        powers(a[(0, 1)], n),
        powers(a[(1, 0)], n),
        powers(a[(1, 1)], n),
    ];
    let dim = ell.dim();
    let mut d = DMatrix::zeros(dim, dim);
    for t in terms(ell).iter() {
        d[(t.row, t.col)] += p[0][t.pow[0] as usize]
            * p[1][t.pow[1] as usize]
            * p[2][t.pow[2] as usize]
            * p[3][t.pow[3] as usize]
            * t.coef;
    }
    d
}

pub fn wigner_d(ell: SpinLabel, u: &Su2Element) -> WignerDMatrix {
    WignerDMatrix {
        ell,
        matrix: wigner_d_matrix(ell, &u.matrix()),
    }
}

/// The derivative of D^ℓ at the identity along X ∈ gl(2,ℂ).
pub fn algebra_action(ell: SpinLabel, x: &Matrix2<Complex64>) -> DMatrix<Complex64> {
    let n = ell.twice_ell;
    let dim = ell.dim();
    let mut g = DMatrix::zeros(dim, dim);
    // N_i = √((ℓ+m)!(ℓ−m)!) for basis index i.
    let norm = |i: usize| (factorial(n - i as u32) * factorial(i as u32)).sqrt();
    for i in 0..dim {
        let a = (n as usize - i) as f64;
        let b = i as f64;
        g[(i, i)] = x[(0, 0)] * a + x[(1, 1)] * b;
        if i + 1 < dim {
            g[(i + 1, i)] = x[(1, 0)] * (a * norm(i + 1) / norm(i));
        }
        if i > 0 {
            g[(i - 1, i)] = x[(0, 1)] * (b * norm(i - 1) / norm(i));
        }
    }
    g
}

/// Generators G_k with D^ℓ(exp(−iθσ_k/2)) = exp(θ G_k); G_k = −i J_k.
pub fn rotation_generators(ell: SpinLabel) -> [DMatrix<Complex64>; 3] {
    let half = Complex64::new(0.0, -0.5);
    crate::groups::pauli().map(|s| algebra_action(ell, &(s * half)))
}

/// χ^ℓ(U) = U_{2ℓ}(cos(θ/2)), the Chebyshev polynomial of the second kind.
pub fn character(ell: SpinLabel, u: &Su2Element) -> f64 {
    character_from_scalar(ell, u.scalar())
}

/// χ^ℓ as a function of the class angle θ.
pub fn character_of_angle(ell: SpinLabel, theta: f64) -> f64 {
    character_from_scalar(ell, (0.5 * theta).cos())
}

fn character_from_scalar(ell: SpinLabel, w: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..ell.twice_ell {
        let next = 2.0 * w * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// χ^{(ℓ_A,ℓ_B)}(g) = χ^{ℓ_A}(g.left)·χ^{ℓ_B}(g.right).
pub fn character_product(rep: RepLabel, g: &So4Element) -> f64 {
    character(rep.ell_a, &g.left) * character(rep.ell_b, &g.right)
}

/// ∫dB χ^{ℓ1}(B)χ^{ℓ2}(B) by `n`-node class quadrature.
pub fn character_orthonormality(ell1: SpinLabel, ell2: SpinLabel, n: usize) -> f64 {
    haar_class_quadrature(
        |th| character_of_angle(ell1, th) * character_of_angle(ell2, th),
        n,
    )
}

/// Monte Carlo check of ∫dU D_{ab}(U) D_{cd}(U)* = δ_ac δ_bd/(2ℓ+1) over `n_mc`
/// Haar samples drawn from `seed`. Returns the largest deviation.
pub fn matrix_orthogonality_check(ell: SpinLabel, n_mc: usize, seed: u64) -> f64 {
    let dim = ell.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = DMatrix::<Complex64>::zeros(dim * dim, dim * dim);
    for _ in 0..n_mc {
        let u = haar_sample_with(&mut rng);
        let d = wigner_d_matrix(ell, &u.matrix());
        let flat = DMatrix::from_iterator(dim * dim, 1, d.iter().copied());
        acc += &flat * flat.adjoint();
    }
    acc /= Complex64::new(n_mc as f64, 0.0);
    let expected = 1.0 / dim as f64;
    let mut worst: f64 = 0.0;
    for i in 0..dim * dim {
        for j in 0..dim * dim {
            let target = if i == j { expected } else { 0.0 };
            worst = worst.max((acc[(i, j)] - target).norm());
        }
    }
    worst
}
