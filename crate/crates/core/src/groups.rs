//! SU(2), its SO(4) double, the SL(2,ℂ) cover of the Lorentz group and 4×4 Lorentz
//! matrices, together with Haar quadrature on SU(2).
//!
//! SU(2) elements are unit quaternions (w, v⃗) standing for U = w·I − i v⃗·σ⃗.

use std::f64::consts::PI;
use std::ops::{Mul, Neg};

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::minkowski::{metric, FourVector};
use crate::quad::gauss_rule;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli() -> [Matrix2<Complex64>; 3] {
    let z = c(0.0);
    let o = c(1.0);
    [
        Matrix2::new(z, o, o, z),
        Matrix2::new(z, -I, I, z),
        Matrix2::new(o, z, z, -o),
    ]
}

/// σ_μ with σ₀ = I, used for the four-vector ↔ hermitian-matrix map.
pub fn sigma4() -> [Matrix2<Complex64>; 4] {
    let [s1, s2, s3] = pauli();
    [Matrix2::identity(), s1, s2, s3]
}

/// An angle vector θ⃗ = θ·n̂ parametrizing SU(2).
pub type Su2AngleVector = Vector3<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Element {
    w: f64,
    v: Vector3<f64>,
}

impl Default for Su2Element {
    fn default() -> Self {
        Self::identity()
    }
}

impl Su2Element {
    pub fn identity() -> Self {
        Self {
            w: 1.0,
            v: Vector3::zeros(),
        }
    }

    /// Builds an element from quaternion components, renormalizing to unit length.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        Self {
            w: w / n,
            v: Vector3::new(x / n, y / n, z / n),
        }
    }

    pub fn quaternion(&self) -> [f64; 4] {
        [self.w, self.v[0], self.v[1], self.v[2]]
    }

    pub fn scalar(&self) -> f64 {
        self.w
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.v
    }

    pub fn matrix(&self) -> Matrix2<Complex64> {
        let (w, x, y, z) = (self.w, self.v[0], self.v[1], self.v[2]);
        Matrix2::new(
            Complex64::new(w, -z),
            Complex64::new(-y, -x),
            Complex64::new(y, -x),
            Complex64::new(w, z),
        )
    }

    /// Accepts a 2×2 matrix that is unitary with unit determinant within `1e-10`.
    pub fn from_matrix(m: &Matrix2<Complex64>) -> Result<Self> {
        let unitarity = (m.adjoint() * m - Matrix2::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let det = (m.determinant() - c(1.0)).norm();
        if unitarity > 1e-10 || det > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "matrix is not in SU(2) (unitarity {unitarity:e}, det {det:e})"
            )));
        }
        Ok(Self::from_matrix_unchecked(m))
    }

    pub(crate) fn from_matrix_unchecked(m: &Matrix2<Complex64>) -> Self {
        let w = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
        let z = 0.5 * (m[(1, 1)].im - m[(0, 0)].im);
        let x = -0.5 * (m[(0, 1)].im + m[(1, 0)].im);
        let y = 0.5 * (m[(1, 0)].re - m[(0, 1)].re);
        Self::from_quaternion(w, x, y, z)
    }

    pub fn inverse(&self) -> Self {
        Self {
            w: self.w,
            v: -self.v,
        }
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.w
    }

    /// max |U − V| over matrix entries.
    pub fn distance(&self, other: &Su2Element) -> f64 {
        (self.matrix() - other.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Su2Element {
    type Output = Su2Element;
    fn mul(self, o: Su2Element) -> Su2Element {
        let w = self.w * o.w - self.v.dot(&o.v);
        let v = o.v * self.w + self.v * o.w + self.v.cross(&o.v);
        Su2Element::from_quaternion(w, v[0], v[1], v[2])
    }
}

impl Neg for Su2Element {
    type Output = Su2Element;
    fn neg(self) -> Su2Element {
        Su2Element {
            w: -self.w,
            v: -self.v,
        }
    }
}

/// exp(−i θ⃗·σ⃗/2) = cos(θ/2)·I − i sin(θ/2)·θ̂·σ⃗.
pub fn su2_exp(theta: &Su2AngleVector) -> Su2Element {
    let angle = theta.norm();
    if angle == 0.0 {
        return Su2Element::identity();
    }
    let s = (0.5 * angle).sin() / angle;
    Su2Element::from_quaternion(
        (0.5 * angle).cos(),
        s * theta[0],
        s * theta[1],
        s * theta[2],
    )
}

/// Class angle θ ∈ [0, 2π] with tr U = 2cos(θ/2). Only U = −I reaches 2π.
pub fn su2_class_angle(u: &Su2Element) -> f64 {
    2.0 * u.v.norm().atan2(u.w)
}

/// Principal logarithm. At U = −I the axis is degenerate and fixed to (1, 0, 0).
pub fn su2_log(u: &Su2Element) -> Su2AngleVector {
    let angle = su2_class_angle(u);
    let s = u.v.norm();
    if s == 0.0 {
        return if u.w > 0.0 {
            Vector3::zeros()
        } else {
            Vector3::new(angle, 0.0, 0.0)
        };
    }
    u.v * (angle / s)
}

/// An SO(4) element through its SU(2)×SU(2) cover.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct So4Element {
    pub left: Su2Element,
    pub right: Su2Element,
}

impl So4Element {
    pub fn new(left: Su2Element, right: Su2Element) -> Self {
        Self { left, right }
    }

    pub fn identity() -> Self {
        Self::default()
    }
}

impl Mul for So4Element {
    type Output = So4Element;
    fn mul(self, o: So4Element) -> So4Element {
        So4Element::new(self.left * o.left, self.right * o.right)
    }
}

/// ∫dB f(B) for a class function given through its class angle:
/// (1/π)∫₀^{2π} sin²(θ/2) f(θ) dθ with an `n`-node Gauss–Legendre rule.
pub fn haar_class_quadrature<F: Fn(f64) -> f64>(f: F, n: usize) -> f64 {
    haar_class_quadrature_complex(|th| Complex64::new(f(th), 0.0), n).re
}

/// Gauss–Legendre in θ, divided by the same rule applied to the measure alone so that constants
/// integrate to exactly 1 at every node count.
pub fn haar_class_quadrature_complex<F: Fn(f64) -> Complex64>(f: F, n: usize) -> Complex64 {
    let rule = gauss_rule(n.max(2));
    let mut total = Complex64::new(0.0, 0.0);
    let mut volume = 0.0;
    for (th, w) in rule.mapped(0.0, 2.0 * PI) {
        let s = (0.5 * th).sin();
        total += f(th) * (w * s * s);
        volume += w * s * s;
    }
    total / volume
}

/// Node counts for [`haar_group_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaarGrid {
    pub angle: usize,
    pub polar: usize,
    pub azimuth: usize,
}

impl Default for HaarGrid {
    fn default() -> Self {
        Self {
            angle: 64,
            polar: 24,
            azimuth: 40,
        }
    }
}

/// ∫dB f(B) over all of SU(2) with unit total measure, in axis-angle coordinates:
/// Gauss–Legendre in θ and cos β, trapezoid in the periodic azimuth.
pub fn haar_group_quadrature<F: FnMut(&Su2Element) -> Complex64>(
    mut f: F,
    grid: HaarGrid,
) -> Complex64 {
    let theta_rule = gauss_rule(grid.angle);
    let polar_rule = gauss_rule(grid.polar);
    let dphi = 2.0 * PI / grid.azimuth as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (th, wt) in theta_rule.mapped(0.0, 2.0 * PI) {
        let s = (0.5 * th).sin();
        let class_weight = wt * s * s / PI;
        for (cb, wc) in polar_rule.mapped(-1.0, 1.0) {
            let sb = (1.0 - cb * cb).sqrt();
            for k in 0..grid.azimuth {
                let phi = dphi * k as f64;
                let axis = Vector3::new(sb * phi.cos(), sb * phi.sin(), cb);
                let b = su2_exp(&(axis * th));
                acc += f(&b) * (class_weight * wc * 0.5 / grid.azimuth as f64);
            }
        }
    }
    acc
}

/// A Haar-random element drawn with `rng` (uniform on the unit 3-sphere).
pub fn haar_sample_with<R: Rng + ?Sized>(rng: &mut R) -> Su2Element {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n2: f64 = q.iter().map(|a| a * a).sum();
        if n2 > 1e-24 {
            return Su2Element::from_quaternion(q[0], q[1], q[2], q[3]);
        }
    }
}

/// A Haar-random element determined by `seed`.
pub fn haar_sample(seed: u64) -> Su2Element {
    haar_sample_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// A proper orthochronous Lorentz matrix Λ with ΛᵀηΛ = η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Matrix4<f64>);

impl LorentzMatrix {
    pub const TOLERANCE: f64 = 1e-10;

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let residual = check_pseudo_orthogonality(&m);
        if residual > Self::TOLERANCE || m[(0, 0)] < 1.0 - Self::TOLERANCE || m.determinant() < 0.0
        {
            return Err(Error::NotLorentz { residual });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Λ⁻¹ = ηΛᵀη.
    pub fn inverse(&self) -> Self {
        let eta = metric();
        Self(eta * self.0.transpose() * eta)
    }

    pub fn apply(&self, x: &FourVector) -> FourVector {
        self.0 * *x
    }

    /// Max-norm distance between the underlying matrices.
    pub fn distance(&self, other: &LorentzMatrix) -> f64 {
        (self.0 - other.0).amax()
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, o: LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * o.0)
    }
}

/// max |MᵀηM − η|.
pub fn check_pseudo_orthogonality(m: &Matrix4<f64>) -> f64 {
    let eta = metric();
    (m.transpose() * eta * m - eta).amax()
}

/// Pure boost with velocity `velocity` along `axis` (normalized internally).
pub fn boost_matrix(velocity: f64, axis: &Vector3<f64>) -> Result<LorentzMatrix> {
    if !(velocity.abs() < 1.0) {
        return Err(Error::SuperluminalVelocity(velocity));
    }
    let norm = axis.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::InvalidAxis);
    }
    let gamma = 1.0 / (1.0 - velocity * velocity).sqrt();
    Ok(boost_from_spatial(&(axis * (gamma * velocity / norm))))
}

/// The pure boost taking e = (1,0,0,0) to (√(1+|u⃗|²), u⃗).
pub fn boost_from_spatial(u: &Vector3<f64>) -> LorentzMatrix {
    let gamma = (1.0 + u.norm_squared()).sqrt();
    let mut m = Matrix4::identity();
    m[(0, 0)] = gamma;
    for i in 0..3 {
        m[(0, i + 1)] = u[i];
        m[(i + 1, 0)] = u[i];
        for j in 0..3 {
            m[(i + 1, j + 1)] += u[i] * u[j] / (1.0 + gamma);
        }
    }
    LorentzMatrix(m)
}

/// The SO(3) image of U embedded in the spatial block; U and −U give the same matrix.
pub fn rotation_matrix_from_su2(u: &Su2Element) -> LorentzMatrix {
    Sl2c::from_su2(u).to_lorentz()
}

/// Rotation matrix R(θ⃗) acting on 3-vectors, the spatial block of
/// [`rotation_matrix_from_su2`] at `su2_exp(θ⃗)`.
pub fn rotation3(theta: &Su2AngleVector) -> Matrix3<f64> {
    rotation_matrix_from_su2(&su2_exp(theta))
        .0
        .fixed_view::<3, 3>(1, 1)
        .into_owned()
}

/// An element of SL(2,ℂ), the double cover of the proper orthochronous Lorentz group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2c(Matrix2<Complex64>);

impl Sl2c {
    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        let det = m.determinant();
        if (det - c(1.0)).norm() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "determinant {det} is not 1"
            )));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn from_su2(u: &Su2Element) -> Self {
        Self(u.matrix())
    }

    /// exp(ξ n̂·σ⃗/2): a boost of rapidity ξ along n̂.
    pub fn boost(rapidity: f64, axis: &Vector3<f64>) -> Result<Self> {
        let norm = axis.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidAxis);
        }
        let n = axis / norm;
        let [s1, s2, s3] = pauli();
        let ns = s1 * c(n[0]) + s2 * c(n[1]) + s3 * c(n[2]);
        Ok(Self(
            Matrix2::identity() * c((0.5 * rapidity).cosh()) + ns * c((0.5 * rapidity).sinh()),
        ))
    }

    /// The hermitian cover of the pure boost taking e to the future unit vector `n`.
    pub fn standard_boost(n: &FourVector) -> Self {
        let [s1, s2, s3] = pauli();
        let ns = s1 * c(n.x) + s2 * c(n.y) + s3 * c(n.z);
        let norm = (2.0 * (n.t + 1.0)).sqrt();
        Self((Matrix2::identity() * c(n.t + 1.0) + ns) / c(norm))
    }

    pub fn inverse(&self) -> Self {
        let m = &self.0;
        Self(Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    /// Λ^μ_ν = ½ tr(σ_μ A σ_ν A†).
    pub fn to_lorentz(&self) -> LorentzMatrix {
        let s = sigma4();
        let a = self.0;
        let ad = a.adjoint();
        let mut m = Matrix4::zeros();
        for nu in 0..4 {
            let img = a * s[nu] * ad;
            for mu in 0..4 {
                m[(mu, nu)] = 0.5 * (s[mu] * img).trace().re;
            }
        }
        LorentzMatrix(m)
    }

    /// Lifts a Lorentz matrix through its polar decomposition Λ = L(Λe)·R, taking the
    /// SU(2) preimage of R with non-negative scalar part.
    pub fn from_lorentz(lambda: &LorentzMatrix) -> Self {
        let le = lambda.apply(&FourVector::time_unit());
        let boost = Self::standard_boost(&le);
        let rot = boost_from_spatial(&le.spatial()).inverse() * *lambda;
        let r = rot.0.fixed_view::<3, 3>(1, 1).into_owned();
        boost * Self::from_su2(&su2_from_rotation(&r))
    }

    /// Max-norm distance between the underlying matrices.
    pub fn distance(&self, other: &Sl2c) -> f64 {
        (self.0 - other.0)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Sl2c {
    type Output = Sl2c;
    fn mul(self, o: Sl2c) -> Sl2c {
        Sl2c(self.0 * o.0)
    }
}

/// The SU(2) preimage with w ≥ 0 of a 3×3 rotation matrix.
pub fn su2_from_rotation(r: &Matrix3<f64>) -> Su2Element {
    // Under U = w − i v⃗·σ⃗ the induced rotation is R = (w² − |v|²)I + 2vvᵀ + 2w[v]ₓ.
    let tr = r.trace();
    let (w, x, y, z);
    if tr > 0.0 {
        let s = 2.0 * (1.0 + tr).sqrt();
        w = 0.25 * s;
        x = (r[(2, 1)] - r[(1, 2)]) / s;
        y = (r[(0, 2)] - r[(2, 0)]) / s;
        z = (r[(1, 0)] - r[(0, 1)]) / s;
    } else if r[(0, 0)] > r[(1, 1)] && r[(0, 0)] > r[(2, 2)] {
        let s = 2.0 * (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).sqrt();
        w = (r[(2, 1)] - r[(1, 2)]) / s;
        x = 0.25 * s;
        y = (r[(0, 1)] + r[(1, 0)]) / s;
        z = (r[(0, 2)] + r[(2, 0)]) / s;
    } else if r[(1, 1)] > r[(2, 2)] {
        let s = 2.0 * (1.0 + r[(1, 1)] - r[(0, 0)] - r[(2, 2)]).sqrt();
        w = (r[(0, 2)] - r[(2, 0)]) / s;
        x = (r[(0, 1)] + r[(1, 0)]) / s;
        y = 0.25 * s;
        z = (r[(1, 2)] + r[(2, 1)]) / s;
    } else {
        let s = 2.0 * (1.0 + r[(2, 2)] - r[(0, 0)] - r[(1, 1)]).sqrt();
        w = (r[(1, 0)] - r[(0, 1)]) / s;
        x = (r[(0, 2)] + r[(2, 0)]) / s;
        y = (r[(1, 2)] + r[(2, 1)]) / s;
        z = 0.25 * s;
    }
    let q = Su2Element::from_quaternion(w, x, y, z);
    if q.w < 0.0 {
        -q
    } else {
        q
    }
}

/// The tangent Ω = Ṁ M⁻¹ of a path of Lorentz matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraTangent(Matrix4<f64>);

impl AlgebraTangent {
    /// Central-difference estimate of Ω at `lambda` with step `h`.
    pub fn from_path<F: Fn(f64) -> Matrix4<f64>>(path: F, lambda: f64, h: f64) -> Self {
        let dm = (path(lambda + h) - path(lambda - h)) / (2.0 * h);
        let m = path(lambda);
        let eta = metric();
        let m_inv = eta * m.transpose() * eta;
        Self(dm * m_inv)
    }

    pub fn mixed(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Ω^{μν} = Ω^μ_ρ η^{ρν}.
    pub fn raised(&self) -> Matrix4<f64> {
        self.0 * metric()
    }

    /// max |Ω^{μν} + Ω^{νμ}|.
    pub fn antisymmetry_residual(&self) -> f64 {
        let r = self.raised();
        (r + r.transpose()).amax()
    }
}
