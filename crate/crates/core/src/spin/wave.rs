//! Momentum-space wave functions of localized states and their position operators.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;

use super::{bar, max_abs, u_matrix, v_matrix, LorentzRepresentation, UnitTimelike};
use crate::error::{Error, Result};
use crate::minkowski::{on_shell_momentum, FourVector, ThreeMomentum};
use crate::repr::SpinLabel;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Step used for the central differences in momentum.
pub const FD_STEP: f64 = 1e-4;

fn norm() -> f64 {
    (2.0 * PI).powf(-1.5)
}

fn check(m: f64, sign: i32) -> Result<f64> {
    if !(m > 0.0) {
        return Err(Error::NonPositiveMass(m));
    }
    match sign {
        1 | -1 => Ok(sign as f64),
        _ => Err(Error::InvalidArgument(format!(
            "sign must be ±1, got {sign}"
        ))),
    }
}

/// e^{i(±E t − p⃗·x⃗)}.
fn phase(p: &ThreeMomentum, x: &FourVector, m: f64, s: f64) -> Complex64 {
    let e = (p.norm_sq() + m * m).sqrt();
    Complex64::from_polar(1.0, s * e * x.t - (p.px * x.x + p.py * x.y + p.pz * x.z))
}

/// (2π)^{−3/2} δ^{σ′}_σ e^{i(±E_p t − p⃗·x⃗)}.
pub fn plane_wave_amplitude(
    p: &ThreeMomentum,
    x: &FourVector,
    m: f64,
    sign: i32,
    j: SpinLabel,
) -> Result<DMatrix<Complex64>> {
    let s = check(m, sign)?;
    Ok(DMatrix::identity(j.dim(), j.dim()) * (phase(p, x, m, s) * norm()))
}

/// The spin coefficient matrix at n_p = (±E, p⃗)/m: u for sign +1, v for sign −1.
fn coefficients(
    rep: LorentzRepresentation,
    p: &ThreeMomentum,
    m: f64,
    sign: i32,
) -> Result<DMatrix<Complex64>> {
    let n = UnitTimelike::from_momentum(&on_shell_momentum(p, m, sign as f64)?, m)?;
    Ok(if sign > 0 {
        u_matrix(rep, &n)
    } else {
        v_matrix(rep, &n)
    })
}

/// (2π)^{−3/2} ū(n_p) e^{i(±E_p t − p⃗·x⃗)} (v̄ for sign −1), a (2j+1) × dim matrix.
pub fn newton_wigner_wavefunction(
    p: &ThreeMomentum,
    x: &FourVector,
    m: f64,
    sign: i32,
    rep: LorentzRepresentation,
) -> Result<DMatrix<Complex64>> {
    let s = check(m, sign)?;
    let w = coefficients(rep, p, m, sign)?;
    Ok(bar(rep, &w) * (phase(p, x, m, s) * norm()))
}

fn shifted(p: &ThreeMomentum, axis: usize, h: f64) -> ThreeMomentum {
    let mut v = p.to_vector();
    v[axis] += h;
    ThreeMomentum::from_vector(&v)
}

/// e^{±iEt} i∂/∂p⃗ e^{∓iEt} applied to `f` by central differences of step `h`.
fn translated_derivative<F>(
    p: &ThreeMomentum,
    t: f64,
    m: f64,
    s: f64,
    h: f64,
    f: F,
) -> Result<[DMatrix<Complex64>; 3]>
where
    F: Fn(&ThreeMomentum) -> Result<DMatrix<Complex64>>,
{
    let untranslate = |q: &ThreeMomentum| -> Result<DMatrix<Complex64>> {
        let e = (q.norm_sq() + m * m).sqrt();
        Ok(f(q)? * Complex64::from_polar(1.0, -s * e * t))
    };
    let e0 = (p.norm_sq() + m * m).sqrt();
    let back = Complex64::from_polar(1.0, s * e0 * t);
    let mut out: [DMatrix<Complex64>; 3] = std::array::from_fn(|_| DMatrix::zeros(0, 0));
    for (axis, slot) in out.iter_mut().enumerate() {
        let fwd = untranslate(&shifted(p, axis, h))?;
        let bwd = untranslate(&shifted(p, axis, -h))?;
        *slot = (fwd - bwd) * (I * back / (2.0 * h));
    }
    Ok(out)
}

/// The translated position operator applied to the plane wave, one matrix per axis.
pub fn plane_wave_position(
    p: &ThreeMomentum,
    x: &FourVector,
    m: f64,
    sign: i32,
    j: SpinLabel,
    h: f64,
) -> Result<[DMatrix<Complex64>; 3]> {
    let s = check(m, sign)?;
    translated_derivative(p, x.t, m, s, h, |q| plane_wave_amplitude(q, x, m, sign, j))
}

/// ū(n_p) e^{iEt} i∂/∂p⃗ e^{−iEt} u(n_p) applied to the Newton–Wigner function ψ: the Lorentz
/// index of ψ is contracted with u(n_p) before differentiating and restored with ū(n_p) after
/// (v and v̄ for sign −1).
pub fn newton_wigner_position(
    p: &ThreeMomentum,
    x: &FourVector,
    m: f64,
    sign: i32,
    rep: LorentzRepresentation,
    h: f64,
) -> Result<[DMatrix<Complex64>; 3]> {
    let s = check(m, sign)?;
    let reduced = translated_derivative(p, x.t, m, s, h, |q| {
        Ok(newton_wigner_wavefunction(q, x, m, sign, rep)? * coefficients(rep, q, m, sign)?)
    })?;
    let w_bar = bar(rep, &coefficients(rep, p, m, sign)?);
    Ok(reduced.map(|r| r * &w_bar))
}

fn eigen_residual(
    applied: &[DMatrix<Complex64>; 3],
    psi: &DMatrix<Complex64>,
    x: &Vector3<f64>,
) -> f64 {
    applied
        .iter()
        .enumerate()
        .map(|(k, a)| max_abs(&(a - psi * Complex64::new(x[k], 0.0))))
        .fold(0.0, f64::max)
}

/// max |X̂ψ − x⃗ψ| for the plane wave.
pub fn position_eigen_residual_plane_wave(
    p: &ThreeMomentum,
    x: &FourVector,
    m: f64,
    sign: i32,
    j: SpinLabel,
) -> Result<f64> {
    let applied = plane_wave_position(p, x, m, sign, j, FD_STEP)?;
    let psi = plane_wave_amplitude(p, x, m, sign, j)?;
    Ok(eigen_residual(&applied, &psi, &x.spatial()))
}

/// max |X̂ψ − x⃗ψ| for the Newton–Wigner function.
pub fn position_eigen_residual_newton_wigner(
    p: &ThreeMomentum,
    x: &FourVector,
    m: f64,
    sign: i32,
    rep: LorentzRepresentation,
) -> Result<f64> {
    let applied = newton_wigner_position(p, x, m, sign, rep, FD_STEP)?;
    let psi = newton_wigner_wavefunction(p, x, m, sign, rep)?;
    Ok(eigen_residual(&applied, &psi, &x.spatial()))
}
