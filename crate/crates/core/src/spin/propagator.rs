//! On-shell kernels Δ± and the position-space propagators of the three representations.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{beta, gamma_slash, gamma_spatial, LorentzRepresentation};
use crate::error::{Error, Result};
use crate::kernels::{feynman_invariant_derivative, LIGHT_CONE_TOLERANCE};
use crate::minkowski::FourVector;
use crate::quad::{gauss_rule, richardson_halving};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Regularization and node layout for the radial on-shell integrals.
///
/// Each integral carries a convergence factor e^{−δ|p⃗|}, is cut at |p⃗| = `cutoff`/δ and is
/// Richardson-extrapolated to δ → 0 over `levels` successively halved values of δ. The damped
/// integrals are analytic in δ within a disc of radius ρ = ||dx⁰| − |dx⃗||, so the first δ is
/// min(`max_delta`, `delta_fraction`·ρ).
#[derive(Debug, Clone, PartialEq)]
pub struct OnshellQuadrature {
    pub max_delta: f64,
    pub delta_fraction: f64,
    pub levels: usize,
    pub cutoff: f64,
    pub nodes_per_panel: usize,
    /// Largest phase advance across one panel, in radians.
    pub phase_per_panel: f64,
}

impl Default for OnshellQuadrature {
    fn default() -> Self {
        Self {
            max_delta: 0.1,
            delta_fraction: 0.125,
            levels: 4,
            cutoff: 40.0,
            nodes_per_panel: 16,
            phase_per_panel: 2.0,
        }
    }
}

impl OnshellQuadrature {
    fn validate(&self) -> Result<()> {
        let positive = [
            self.max_delta,
            self.delta_fraction,
            self.cutoff,
            self.phase_per_panel,
        ];
        if positive.iter().any(|x| !(*x > 0.0)) || self.levels == 0 || self.nodes_per_panel == 0 {
            return Err(Error::Quadrature(format!(
                "invalid on-shell quadrature {self:?}"
            )));
        }
        Ok(())
    }

    /// The halving sequence of damping parameters used at separation (t, r).
    pub fn deltas(&self, t: f64, r: f64) -> Vec<f64> {
        let first = self
            .max_delta
            .min(self.delta_fraction * (t.abs() - r).abs());
        (0..self.levels)
            .map(|i| first / f64::powi(2.0, i as i32))
            .collect()
    }
}

/// Power series of j_ℓ(z)/z^ℓ, summed until the terms stop contributing.
fn bessel_series(ell: i32, z2: f64) -> f64 {
    let mut lead = 1.0;
    for k in 0..=ell {
        lead /= (2 * k + 1) as f64;
    }
    let mut term = lead;
    let mut sum = term;
    for k in 1..40 {
        term *= -z2 / (2.0 * k as f64 * (2 * k + 2 * ell + 1) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// j₀(z), j₁(z), j₁(z)/z, j₂(z), with series near the origin.
fn spherical_bessel(z: f64) -> [f64; 4] {
    if z < 0.5 {
        let z2 = z * z;
        let j1_over = bessel_series(1, z2);
        [
            bessel_series(0, z2),
            j1_over * z,
            j1_over,
            bessel_series(2, z2) * z2,
        ]
    } else {
        let (s, co) = z.sin_cos();
        let j0 = s / z;
        let j1 = s / (z * z) - co / z;
        let j2 = (3.0 / (z * z) - 1.0) * s / z - 3.0 * co / (z * z);
        [j0, j1, j1 / z, j2]
    }
}

/// Radial moments, each (1/2π²)∫dk k²/(2E) e^{−isEt − δk} · weight · Bessel factor.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    /// 1·j₀, E·j₀, E²·j₀
    j0: [Complex64; 3],
    /// k·j₁, kE·j₁
    j1: [Complex64; 2],
    /// k²·j₁/(kr), k²·j₂
    j2: [Complex64; 2],
}

fn moments(t: f64, r: f64, m: f64, sign: f64, delta: f64, q: &OnshellQuadrature) -> Moments {
    let kmax = q.cutoff / delta;
    let freq = t.abs() + r + delta;
    let width = (q.phase_per_panel / freq).min(1.0);
    let panels = (kmax / width).ceil() as usize;
    let rule = gauss_rule(q.nodes_per_panel);
    let mut acc = [Complex64::new(0.0, 0.0); 7];
    rule.composite_vec(0.0, kmax, panels, &mut acc, |k, out| {
        let e = (k * k + m * m).sqrt();
        let base = Complex64::from_polar((-delta * k).exp() * k * k / (2.0 * e), -sign * e * t);
        let [j0, j1, j1_over, j2] = spherical_bessel(k * r);
        out[0] = base * j0;
        out[1] = base * (e * j0);
        out[2] = base * (e * e * j0);
        out[3] = base * (k * j1);
        out[4] = base * (k * e * j1);
        out[5] = base * (k * k * j1_over);
        out[6] = base * (k * k * j2);
    });
    let s = 1.0 / (2.0 * PI * PI);
    Moments {
        j0: [acc[0] * s, acc[1] * s, acc[2] * s],
        j1: [acc[3] * s, acc[4] * s],
        j2: [acc[5] * s, acc[6] * s],
    }
}

fn assemble(
    rep: LorentzRepresentation,
    mo: &Moments,
    xhat: [f64; 3],
    m: f64,
    sign: f64,
) -> DMatrix<Complex64> {
    match rep {
        LorentzRepresentation::Scalar => DMatrix::from_element(1, 1, mo.j0[0]),
        LorentzRepresentation::DiracSpinor => {
            // P = I/2 + (p⁰β + pⁱΓ_i)/(2m) with p⁰ = sE and ∫ p̂_i ↦ i x̂_i j₁.
            let mut out = DMatrix::identity(4, 4) * (mo.j0[0] * 0.5);
            out += beta() * (mo.j0[1] * (sign / (2.0 * m)));
            for (g, xh) in gamma_spatial().iter().zip(xhat) {
                out += g * (I * xh * mo.j1[0] / (2.0 * m));
            }
            out
        }
        LorentzRepresentation::Vector => {
            // P^μ_ν = δ^μ_ν + p^μ p_ν/m².
            let m2 = m * m;
            DMatrix::from_fn(4, 4, |mu, nu| {
                let delta = if mu == nu { mo.j0[0] } else { c(0.0) };
                let pp = match (mu, nu) {
                    (0, 0) => -mo.j0[2],
                    (0, j) => I * xhat[j - 1] * mo.j1[1] * sign,
                    (i, 0) => -I * xhat[i - 1] * mo.j1[1] * sign,
                    (i, j) => {
                        let kron = if i == j { mo.j2[0] } else { c(0.0) };
                        kron - mo.j2[1] * (xhat[i - 1] * xhat[j - 1])
                    }
                };
                delta + pp / m2
            })
        }
    }
}

/// Δ±(dx) = (2π)⁻³∫d³p (2E)⁻¹ P(p±/m) e^{i(∓E dx⁰ + p⃗·dx⃗)} with p± = (±E, p⃗).
pub fn onshell_kernel_matrix_with(
    rep: LorentzRepresentation,
    dx: &FourVector,
    m: f64,
    sign: i32,
    quad: &OnshellQuadrature,
) -> Result<DMatrix<Complex64>> {
    if !(m > 0.0) {
        return Err(Error::NonPositiveMass(m));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!(
            "sign must be ±1, got {sign}"
        )));
    }
    quad.validate()?;
    let s = sign as f64;
    let space = dx.spatial();
    let r = space.norm();
    let xhat = if r > 0.0 {
        [space[0] / r, space[1] / r, space[2] / r]
    } else {
        [0.0; 3]
    };
    if (dx.t.abs() - r).abs() < LIGHT_CONE_TOLERANCE {
        return Err(Error::LightCone(dx.norm_sq()));
    }
    let estimates: Vec<DMatrix<Complex64>> = quad
        .deltas(dx.t, r)
        .iter()
        .map(|&d| assemble(rep, &moments(dx.t, r, m, s, d, quad), xhat, m, s))
        .collect();
    let (rows, cols) = estimates[0].shape();
    let out = DMatrix::from_fn(rows, cols, |i, j| {
        let seq: Vec<Complex64> = estimates.iter().map(|e| e[(i, j)]).collect();
        richardson_halving(&seq)
    });
    if out.iter().any(|z| !z.is_finite()) {
        return Err(Error::Quadrature(format!(
            "non-finite on-shell integral at dx = {dx:?}"
        )));
    }
    Ok(out)
}

pub fn onshell_kernel_matrix(
    rep: LorentzRepresentation,
    dx: &FourVector,
    m: f64,
    sign: i32,
) -> Result<DMatrix<Complex64>> {
    onshell_kernel_matrix_with(rep, dx, m, sign, &OnshellQuadrature::default())
}

/// The scalar on-shell kernel: sign +1 gives Δ₊, −1 gives Δ₋.
pub fn onshell_kernel(dx: &FourVector, m: f64, sign: i32) -> Result<Complex64> {
    Ok(onshell_kernel_matrix(LorentzRepresentation::Scalar, dx, m, sign)?[(0, 0)])
}

/// −i(2π)⁻⁴∫d⁴p P(p/m) e^{ip·dx}/(p² + m² − iε), with P applied as the differential operator
/// p^μ ↦ −i∂^μ on the scalar propagator f(dx·dx).
pub fn nonscalar_propagator(
    rep: LorentzRepresentation,
    dx: &FourVector,
    m: f64,
    eps: f64,
) -> Result<DMatrix<Complex64>> {
    if !(m > 0.0) {
        return Err(Error::NonPositiveMass(m));
    }
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEpsilon(eps));
    }
    let a = dx.norm_sq();
    if !(a.abs() >= LIGHT_CONE_TOLERANCE) {
        return Err(Error::LightCone(a));
    }
    let f = feynman_invariant_derivative(a, m, 0);
    Ok(match rep {
        LorentzRepresentation::Scalar => DMatrix::from_element(1, 1, f),
        LorentzRepresentation::DiracSpinor => {
            let f1 = feynman_invariant_derivative(a, m, 1);
            DMatrix::identity(4, 4) * (f * 0.5) + gamma_slash(dx) * (-I * f1 / m)
        }
        LorentzRepresentation::Vector => {
            let f1 = feynman_invariant_derivative(a, m, 1);
            let f2 = feynman_invariant_derivative(a, m, 2);
            let up = dx.components();
            let down = dx.lowered();
            DMatrix::from_fn(4, 4, |mu, nu| {
                let kron = if mu == nu { 1.0 } else { 0.0 };
                f * kron - (f1 * (2.0 * kron) + f2 * (4.0 * up[mu] * down[nu])) / (m * m)
            })
        }
    })
}
