//! Standard boosts, Wigner rotations and the spin frames (u, v, P) attached to a
//! timelike unit vector, for the scalar, Dirac spinor and vector representations.

mod propagator;
mod wave;

pub use propagator::{
    nonscalar_propagator, onshell_kernel, onshell_kernel_matrix, onshell_kernel_matrix_with,
    OnshellQuadrature,
};
pub use wave::{
    newton_wigner_position, newton_wigner_wavefunction, plane_wave_amplitude, plane_wave_position,
    position_eigen_residual_newton_wigner, position_eigen_residual_plane_wave, FD_STEP,
};

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::{DMatrix, Matrix2, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{boost_from_spatial, pauli, sigma4, LorentzMatrix, Sl2c, Su2Element};
use crate::minkowski::FourVector;
use crate::repr::{rotation_generators, wigner_d, RepLabel, SpinLabel};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest entry modulus of a complex matrix.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A timelike unit vector n with n·n = −1, future or past pointing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitTimelike(FourVector);

impl UnitTimelike {
    pub fn new(n: FourVector) -> Result<Self> {
        let nn = n.norm_sq();
        if !n.is_finite() || n.t == 0.0 || (nn + 1.0).abs() > 1e-12 * n.t * n.t {
            return Err(Error::NotUnitTimelike(nn));
        }
        Ok(Self(n))
    }

    /// e = (1, 0, 0, 0).
    pub fn rest() -> Self {
        Self(FourVector::time_unit())
    }

    /// (±√(1 + |u⃗|²), u⃗), future pointing when `future` is set.
    pub fn from_spatial(u: &Vector3<f64>, future: bool) -> Self {
        let t = (1.0 + u.norm_squared()).sqrt();
        Self(FourVector::from_parts(if future { t } else { -t }, *u))
    }

    /// p/m for a timelike momentum p with p·p = −m².
    pub fn from_momentum(p: &FourVector, m: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::NonPositiveMass(m));
        }
        Self::new(*p * (1.0 / m))
    }

    pub fn vector(&self) -> FourVector {
        self.0
    }

    pub fn is_future(&self) -> bool {
        self.0.t > 0.0
    }

    /// The future-pointing member of {n, −n}.
    pub fn future(&self) -> Self {
        if self.is_future() {
            *self
        } else {
            Self(-self.0)
        }
    }

    pub fn reversed(&self) -> Self {
        Self(-self.0)
    }

    /// Λn for a proper orthochronous Λ given through its cover.
    pub fn transformed(&self, a: &Sl2c) -> Self {
        Self(a.to_lorentz().apply(&self.0))
    }
}

/// L(n): the pure boost taking e to n, with L(n) = L(−n) for past-pointing n.
pub fn standard_boost(n: &UnitTimelike) -> LorentzMatrix {
    boost_from_spatial(&n.future().0.spatial())
}

/// The hermitian SL(2,ℂ) cover of [`standard_boost`].
pub fn standard_boost_cover(n: &UnitTimelike) -> Sl2c {
    Sl2c::standard_boost(&n.future().0)
}

/// W(Λ, n) = L(Λn)⁻¹ Λ L(n).
pub fn wigner_rotation(lambda: &LorentzMatrix, n: &UnitTimelike) -> LorentzMatrix {
    let f = n.future();
    let ln = standard_boost(&f);
    let lambda_n = boost_from_spatial(&lambda.apply(&f.0).spatial());
    lambda_n.inverse() * *lambda * ln
}

/// The SU(2) element A_L(Λn)⁻¹ A A_L(n) covering W(Λ, n).
pub fn wigner_rotation_cover(a: &Sl2c, n: &UnitTimelike) -> Su2Element {
    let f = n.future();
    let image = f.transformed(a);
    let w = standard_boost_cover(&image).inverse() * *a * standard_boost_cover(&f);
    Su2Element::from_matrix_unchecked(w.matrix())
}

/// The three finite-dimensional Lorentz representations handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LorentzRepresentation {
    /// (0, 0), spin 0.
    Scalar,
    /// (1/2, 0) ⊕ (0, 1/2) in the chiral basis, spin 1/2.
    DiracSpinor,
    /// (1/2, 1/2) realized by the 4×4 Lorentz matrices, spin 1.
    Vector,
}

impl LorentzRepresentation {
    pub const ALL: [LorentzRepresentation; 3] = [Self::Scalar, Self::DiracSpinor, Self::Vector];

    pub fn dim(&self) -> usize {
        match self {
            Self::Scalar => 1,
            Self::DiracSpinor | Self::Vector => 4,
        }
    }

    pub fn spin(&self) -> SpinLabel {
        match self {
            Self::Scalar => SpinLabel::ZERO,
            Self::DiracSpinor => SpinLabel::HALF,
            Self::Vector => SpinLabel::ONE,
        }
    }

    /// The SU(2)×SU(2) summands.
    pub fn summands(&self) -> Vec<RepLabel> {
        match self {
            Self::Scalar => vec![RepLabel::default()],
            Self::DiracSpinor => vec![
                RepLabel::new(SpinLabel::HALF, SpinLabel::ZERO),
                RepLabel::new(SpinLabel::ZERO, SpinLabel::HALF),
            ],
            Self::Vector => vec![RepLabel::vector()],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Scalar => "scalar",
            Self::DiracSpinor => "dirac",
            Self::Vector => "vector",
        }
    }

    /// The invariant form g with 𝒟†g𝒟 = g: 1, β or η.
    pub fn invariant_form(&self) -> DMatrix<Complex64> {
        match self {
            Self::Scalar => DMatrix::identity(1, 1),
            Self::DiracSpinor => beta(),
            Self::Vector => DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c(-1.0),
                c(1.0),
                c(1.0),
                c(1.0),
            ])),
        }
    }

    /// 𝒟(A) for A in SL(2,ℂ).
    pub fn rep_matrix(&self, a: &Sl2c) -> DMatrix<Complex64> {
        match self {
            Self::Scalar => DMatrix::identity(1, 1),
            Self::DiracSpinor => {
                let m = a.matrix();
                let r = m
                    .adjoint()
                    .try_inverse()
                    .expect("SL(2,C) elements are invertible");
                block_diag(m, &r)
            }
            Self::Vector => {
                let l = a.to_lorentz();
                DMatrix::from_fn(4, 4, |i, j| c(l.matrix()[(i, j)]))
            }
        }
    }

    /// The derivative of 𝒟 at the identity along X ∈ sl(2,ℂ).
    pub fn algebra(&self, x: &Matrix2<Complex64>) -> DMatrix<Complex64> {
        match self {
            Self::Scalar => DMatrix::zeros(1, 1),
            Self::DiracSpinor => block_diag(x, &(-x.adjoint())),
            Self::Vector => {
                let s = sigma4();
                DMatrix::from_fn(4, 4, |mu, nu| {
                    c(0.5 * (s[mu] * (x * s[nu] + s[nu] * x.adjoint())).trace().re)
                })
            }
        }
    }

    /// The rest-frame intertwiner u(e), a dim × (2j+1) matrix.
    pub fn rest_intertwiner(&self) -> &'static DMatrix<Complex64> {
        static CELLS: [OnceLock<DMatrix<Complex64>>; 3] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let idx = match self {
            Self::Scalar => 0,
            Self::DiracSpinor => 1,
            Self::Vector => 2,
        };
        CELLS[idx].get_or_init(|| solve_rest_intertwiner(*self))
    }

    /// P(p/m) as a polynomial in p; equals the spin-frame projector for future on-shell p.
    pub fn projector_polynomial(&self, p: &FourVector, m: f64) -> DMatrix<Complex64> {
        match self {
            Self::Scalar => DMatrix::identity(1, 1),
            Self::DiracSpinor => {
                let mut out = DMatrix::identity(4, 4) * c(0.5);
                out += gamma_slash(p) * c(0.5 / m);
                out
            }
            Self::Vector => {
                let up = p.components();
                let down = p.lowered();
                DMatrix::from_fn(4, 4, |mu, nu| {
                    c(if mu == nu { 1.0 } else { 0.0 } + up[mu] * down[nu] / (m * m))
                })
            }
        }
    }
}

impl fmt::Display for LorentzRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LorentzRepresentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "scalar" => Ok(Self::Scalar),
            "dirac" | "dirac_spinor" | "spinor" => Ok(Self::DiracSpinor),
            "vector" => Ok(Self::Vector),
            other => Err(Error::InvalidArgument(format!(
                "unknown representation {other:?}"
            ))),
        }
    }
}

fn block_diag(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = a[(i, j)];
            m[(i + 2, j + 2)] = b[(i, j)];
        }
    }
    m
}

/// β = [[0, I], [I, 0]] in the chiral basis.
pub fn beta() -> DMatrix<Complex64> {
    let mut b = DMatrix::zeros(4, 4);
    for i in 0..2 {
        b[(i, i + 2)] = c(1.0);
        b[(i + 2, i)] = c(1.0);
    }
    b
}

/// Γ_i = [[0, σ_i], [−σ_i, 0]], so that P(n) = (I + n⁰β + nⁱΓ_i)/2.
pub fn gamma_spatial() -> [DMatrix<Complex64>; 3] {
    pauli().map(|s| {
        let mut g = DMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                g[(i, j + 2)] = s[(i, j)];
                g[(i + 2, j)] = -s[(i, j)];
            }
        }
        g
    })
}

/// a⁰β + aⁱΓ_i.
pub fn gamma_slash(a: &FourVector) -> DMatrix<Complex64> {
    let [g1, g2, g3] = gamma_spatial();
    beta() * c(a.t) + g1 * c(a.x) + g2 * c(a.y) + g3 * c(a.z)
}

/// Solves 𝒟(X_k)u = u D^j(X_k) for the rotation generators, with g·u = u selecting the
/// particle combination when the spin occurs twice, then fixes ūu = I and the phase.
fn solve_rest_intertwiner(rep: LorentzRepresentation) -> DMatrix<Complex64> {
    let dim = rep.dim();
    let j = rep.spin();
    let d = j.dim();
    let half = Complex64::new(0.0, -0.5);
    let rep_gens: Vec<DMatrix<Complex64>> =
        pauli().iter().map(|s| rep.algebra(&(s * half))).collect();
    let spin_gens = rotation_generators(j);
    let g = rep.invariant_form();
    let unknowns = dim * d;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for k in 0..3 {
        for l in 0..dim {
            for s in 0..d {
                let mut row = vec![c(0.0); unknowns];
                for lp in 0..dim {
                    row[lp + dim * s] += rep_gens[k][(l, lp)];
                }
                for sp in 0..d {
                    row[l + dim * sp] -= spin_gens[k][(sp, s)];
                }
                rows.push(row);
            }
        }
    }
    if rep == LorentzRepresentation::DiracSpinor {
        for l in 0..dim {
            for s in 0..d {
                let mut row = vec![c(0.0); unknowns];
                for lp in 0..dim {
                    row[lp + dim * s] += g[(l, lp)];
                }
                row[l + dim * s] -= c(1.0);
                rows.push(row);
            }
        }
    }
    let system = DMatrix::from_fn(rows.len(), unknowns, |r, col| rows[r][col]);
    let svd = system.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let (null_idx, smallest) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, s)| (i, *s))
        .expect("nonempty system");
    assert!(smallest < 1e-10, "no intertwiner for {rep}");
    let mut u = DMatrix::from_fn(dim, d, |l, s| v_t[(null_idx, l + dim * s)].conj());
    let gram = u.adjoint() * &g * &u;
    let scale = gram[(0, 0)].re;
    assert!(scale > 0.0, "intertwiner has non-positive norm for {rep}");
    u /= c(scale.sqrt());
    let pivot = (0..dim)
        .map(|l| u[(l, 0)])
        .find(|z| z.norm() > 1e-12)
        .expect("nonzero column");
    u *= pivot.conj() / pivot.norm();
    u
}

/// The spin frame (L(n), u(n), v(n), P(n)) of a representation at n.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinFrame {
    pub n: UnitTimelike,
    pub rep: LorentzRepresentation,
    pub l_n: LorentzMatrix,
    pub u: DMatrix<Complex64>,
    pub v: DMatrix<Complex64>,
    pub p: DMatrix<Complex64>,
}

/// u(n) = 𝒟(L(n)) u(e), with u(−n) = u(n).
pub fn u_matrix(rep: LorentzRepresentation, n: &UnitTimelike) -> DMatrix<Complex64> {
    rep.rep_matrix(&standard_boost_cover(n)) * rep.rest_intertwiner()
}

/// v_σ(n) = (−1)^{j+σ} u_{−σ}(−n).
pub fn v_matrix(rep: LorentzRepresentation, n: &UnitTimelike) -> DMatrix<Complex64> {
    let u = u_matrix(rep, &n.reversed());
    let twice_j = rep.spin().twice_ell as usize;
    let d = twice_j + 1;
    DMatrix::from_fn(rep.dim(), d, |l, i| {
        let sign = if (twice_j - i).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        u[(l, d - 1 - i)] * sign
    })
}

/// ā = a†g.
pub fn bar(rep: LorentzRepresentation, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.adjoint() * rep.invariant_form()
}

pub fn build_spin_frame(rep: LorentzRepresentation, n: &UnitTimelike) -> SpinFrame {
    let u = u_matrix(rep, n);
    let v = v_matrix(rep, n);
    let p = &u * bar(rep, &u);
    SpinFrame {
        n: *n,
        rep,
        l_n: standard_boost(n),
        u,
        v,
        p,
    }
}

impl SpinFrame {
    pub fn u_bar(&self) -> DMatrix<Complex64> {
        bar(self.rep, &self.u)
    }

    pub fn v_bar(&self) -> DMatrix<Complex64> {
        bar(self.rep, &self.v)
    }

    /// P evaluated as v v̄.
    pub fn projector_from_v(&self) -> DMatrix<Complex64> {
        &self.v * self.v_bar()
    }

    /// P with both indices up (P g⁻¹ = u u†); for the vector representation this is P^{μν}.
    pub fn projector_raised(&self) -> DMatrix<Complex64> {
        &self.u * self.u.adjoint()
    }

    /// max |ūu − I|.
    pub fn normalization_residual(&self) -> f64 {
        let d = self.u.ncols();
        max_abs(&(self.u_bar() * &self.u - DMatrix::identity(d, d)))
    }

    /// max |P² − P|.
    pub fn idempotency_residual(&self) -> f64 {
        max_abs(&(&self.p * &self.p - &self.p))
    }

    /// max |P u − u|.
    pub fn absorption_residual(&self) -> f64 {
        max_abs(&(&self.p * &self.u - &self.u))
    }

    /// max |u ū − v v̄|.
    pub fn uv_projector_residual(&self) -> f64 {
        max_abs(&(&self.p - self.projector_from_v()))
    }
}

/// max |u(Λn) D^j(W(Λ,n)) − 𝒟(Λ) u(n)|.
pub fn covariance_residual_u(rep: LorentzRepresentation, a: &Sl2c, n: &UnitTimelike) -> f64 {
    let w = wigner_rotation_cover(a, n);
    let d = wigner_d(rep.spin(), &w).matrix;
    let lhs = u_matrix(rep, &n.transformed(a)) * d;
    let rhs = rep.rep_matrix(a) * u_matrix(rep, n);
    max_abs(&(lhs - rhs))
}

/// max |v(Λn) D^j(W(Λ,n))* − 𝒟(Λ) v(n)|.
pub fn covariance_residual_v(rep: LorentzRepresentation, a: &Sl2c, n: &UnitTimelike) -> f64 {
    let w = wigner_rotation_cover(a, n);
    let d = wigner_d(rep.spin(), &w).matrix.map(|z| z.conj());
    let lhs = v_matrix(rep, &n.transformed(a)) * d;
    let rhs = rep.rep_matrix(a) * v_matrix(rep, n);
    max_abs(&(lhs - rhs))
}
