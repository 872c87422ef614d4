//! Scalar kernels and propagators, and character-sum kernels on SU(2) and SO(4).

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use puruspe::{Inu_Knu, Jnu_Ynu};

use crate::error::{Error, Result};
use crate::groups::{So4Element, Su2Element};
use crate::minkowski::FourVector;
use crate::quad::gauss_rule;
use crate::repr::{character, RepLabel, SpinLabel};

pub type ComplexAmplitude = Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Separations with |x·x| below this are treated as lying on the light cone.
pub const LIGHT_CONE_TOLERANCE: f64 = 1e-6;

/// Default character-sum truncation.
pub const DEFAULT_ELL_MAX: SpinLabel = SpinLabel::from_twice(16);

/// Imaginary part given to a real path parameter: λ ↦ λ(1 − i·REAL_LAMBDA_REGULATOR).
pub const REAL_LAMBDA_REGULATOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub mass: f64,
    pub lambda: f64,
    pub epsilon: f64,
    pub ell_max: SpinLabel,
}

impl KernelParams {
    pub fn new(mass: f64, lambda: f64) -> Result<Self> {
        let p = Self {
            mass,
            lambda,
            epsilon: 1e-3,
            ell_max: DEFAULT_ELL_MAX,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass >= 0.0) {
            return Err(Error::NegativeMass(self.mass));
        }
        if !(self.lambda > 0.0) {
            return Err(Error::NonPositiveLambda(self.lambda));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::NonPositiveEpsilon(self.epsilon));
        }
        Ok(())
    }
}

/// κ(dx; λ) = (2π)⁻⁴∫d⁴p e^{ip·dx} e^{−iλ(p²+m²)} = −i/(16π²λ²) · e^{i(dx·dx/(4λ) − λm²)}.
pub fn scalar_kernel(dx: &FourVector, params: &KernelParams) -> Result<ComplexAmplitude> {
    params.validate()?;
    let lambda = params.lambda;
    let phase = dx.norm_sq() / (4.0 * lambda) - lambda * params.mass * params.mass;
    Ok(-I * Complex64::from_polar(1.0, phase) / (16.0 * PI * PI * lambda * lambda))
}

/// The momentum-space kernel e^{−iλ(p²+m²)}.
pub fn scalar_kernel_momentum(p: &FourVector, mass: f64, lambda: f64) -> ComplexAmplitude {
    Complex64::from_polar(1.0, -lambda * (p.norm_sq() + mass * mass))
}

/// −i/(p² + m² − iε).
pub fn feynman_propagator_momentum(p: &FourVector, m: f64, eps: f64) -> Result<ComplexAmplitude> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEpsilon(eps));
    }
    Ok(-I / Complex64::new(p.norm_sq() + m * m, -eps))
}

/// ∫₀^{Λ} dλ e^{−iλ(p²+m²−iε)} by composite Gauss–Legendre quadrature, with Λ = `lambda_max`.
/// Panels where the damping factor e^{−ελ} has fallen below 10⁻²⁰ are skipped.
pub fn feynman_propagator_momentum_by_lambda(
    p: &FourVector,
    m: f64,
    eps: f64,
    lambda_max: f64,
) -> Result<ComplexAmplitude> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEpsilon(eps));
    }
    let a = p.norm_sq() + m * m;
    let upper = lambda_max.min(20.0 * std::f64::consts::LN_10 / eps);
    // About two radians of phase per panel, and never coarser than 1/ε.
    let width = (2.0 / a.abs().max(1e-12)).min(1.0 / eps);
    let panels = (upper / width).ceil().max(1.0) as usize;
    let rule = gauss_rule(12);
    Ok(rule.composite_complex(0.0, upper, panels, |l| {
        Complex64::from_polar((-eps * l).exp(), -a * l)
    }))
}

/// ∂ⁿf/∂aⁿ of the scalar Feynman propagator f as a function of a = x·x, for a off the cone.
///
/// Spacelike: f = m K₁(z)/(4π² √a) with z = m√a. Timelike values follow from a + i0,
/// i.e. √a = iτ, via K_ν(iy) = (π/2)(−i)^{ν+1}(J_ν(y) − iY_ν(y)).
pub fn feynman_invariant_derivative(a: f64, m: f64, n: u32) -> Complex64 {
    let nu = (n + 1) as f64;
    let pref =
        (-1f64).powi(n as i32) * m.powi(2 * n as i32 + 2) / (2f64.powi(n as i32) * 4.0 * PI * PI);
    if a > 0.0 {
        let z = m * a.sqrt();
        let (_, k) = Inu_Knu(nu, z);
        Complex64::new(pref * k / z.powf(nu), 0.0)
    } else {
        let y = m * (-a).sqrt();
        let (j, yv) = Jnu_Ynu(nu, y);
        let k = (-I).powu(n + 2) * Complex64::new(j, -yv) * (PI / 2.0);
        let z_pow = (I * y).powu(n + 1);
        k / z_pow * pref
    }
}

fn check_off_cone(dx: &FourVector) -> Result<f64> {
    let a = dx.norm_sq();
    if !(a.abs() >= LIGHT_CONE_TOLERANCE) {
        return Err(Error::LightCone(a));
    }
    Ok(a)
}

/// Δ(dx) = −i(2π)⁻⁴∫d⁴p e^{ip·dx}/(p² + m² − iε) in the ε → 0 limit, off the light cone.
///
/// Spacelike: m K₁(ms)/(4π²s), s = √(dx·dx). Timelike: m(Y₁(mτ) + iJ₁(mτ))/(8πτ), τ = √(−dx·dx).
pub fn feynman_propagator_position(dx: &FourVector, m: f64, eps: f64) -> Result<ComplexAmplitude> {
    if !(m > 0.0) {
        return Err(Error::NonPositiveMass(m));
    }
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEpsilon(eps));
    }
    let a = check_off_cone(dx)?;
    Ok(feynman_invariant_derivative(a, m, 0))
}

fn su2_kernel_from_characters<F: Fn(SpinLabel) -> f64>(
    chi: F,
    lambda: Complex64,
    ell_max: SpinLabel,
) -> Complex64 {
    ell_max
        .up_to()
        .map(|ell| (-I * lambda * ell.casimir()).exp() * (ell.dim() as f64 * chi(ell)))
        .sum()
}

/// Σ_{ℓ ≤ ℓ_max} e^{−iℓ(ℓ+1)λ}(2ℓ+1)χ^ℓ(dB) at complex λ; λ = −iτ is the heat kernel.
pub fn su2_kernel_complex(
    db: &Su2Element,
    lambda: Complex64,
    ell_max: SpinLabel,
) -> ComplexAmplitude {
    su2_kernel_from_characters(|ell| character(ell, db), lambda, ell_max)
}

/// The same sum as a function of the class angle.
pub fn su2_kernel_of_angle(theta: f64, lambda: Complex64, ell_max: SpinLabel) -> ComplexAmplitude {
    su2_kernel_from_characters(
        |ell| crate::repr::character_of_angle(ell, theta),
        lambda,
        ell_max,
    )
}

/// The group kernel at a real path parameter, continued from the Euclidean sum as λ(1 − i0⁺).
pub fn su2_kernel(db: &Su2Element, lambda: f64, ell_max: SpinLabel) -> ComplexAmplitude {
    su2_kernel_complex(db, regulated_lambda(lambda), ell_max)
}

/// λ(1 − i·REAL_LAMBDA_REGULATOR).
pub fn regulated_lambda(lambda: f64) -> Complex64 {
    Complex64::new(lambda, -lambda.abs() * REAL_LAMBDA_REGULATOR)
}

/// Euclidean parameter τ as the complex path parameter λ = −iτ.
pub fn euclidean_lambda(tau: f64) -> Complex64 {
    Complex64::new(0.0, -tau)
}

/// Σ_{ℓ_A,ℓ_B} e^{−i(Δm²_A+Δm²_B)λ}(2ℓ_A+1)(2ℓ_B+1)χ^{(ℓ_A,ℓ_B)}(dg) at complex λ.
pub fn so4_kernel_complex(
    dg: &So4Element,
    lambda: Complex64,
    ell_max: SpinLabel,
) -> ComplexAmplitude {
    let mut total = Complex64::new(0.0, 0.0);
    for la in ell_max.up_to() {
        let ca = la.dim() as f64 * character(la, &dg.left);
        for lb in ell_max.up_to() {
            let cb = lb.dim() as f64 * character(lb, &dg.right);
            total += (-I * lambda * (la.casimir() + lb.casimir())).exp() * (ca * cb);
        }
    }
    total
}

pub fn so4_kernel(dg: &So4Element, lambda: f64, ell_max: SpinLabel) -> ComplexAmplitude {
    so4_kernel_complex(dg, regulated_lambda(lambda), ell_max)
}

/// Σ_{ℓ > ℓ_max}(2ℓ+1)² e^{−ℓ(ℓ+1)τ}, summed until terms drop below 10⁻³⁰.
pub fn su2_tail_bound(tau: f64, ell_max: SpinLabel) -> f64 {
    let mut total = 0.0;
    let mut twice = ell_max.twice_ell + 1;
    loop {
        let ell = SpinLabel::from_twice(twice);
        let d = ell.dim() as f64;
        let term = d * d * (-ell.casimir() * tau).exp();
        total += term;
        if term < 1e-30 * total.max(1e-300) || twice > 100_000 {
            return total;
        }
        twice += 1;
    }
}

/// m′ with m′² = m² + 2Δm²_ℓ for (ℓ, ℓ), and m² + 2Δm²_{ℓ_A} + 2Δm²_{ℓ_B} otherwise.
pub fn shifted_mass(m: f64, rep: RepLabel) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::NegativeMass(m));
    }
    let shift = if rep.ell_a == rep.ell_b {
        2.0 * rep.ell_a.casimir()
    } else {
        2.0 * rep.ell_a.casimir() + 2.0 * rep.ell_b.casimir()
    };
    Ok((m * m + shift).sqrt())
}

/// δ^{l′}_{l} over the direct sum of the given summands.
pub fn group_propagator_matrix(summands: &[RepLabel]) -> DMatrix<f64> {
    let dim = summands.iter().map(RepLabel::dim).sum();
    DMatrix::identity(dim, dim)
}
