//! Python bindings for `spinpath`.
//!
//! Matrices come back as nested lists of Python `complex`, row-major.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spinpath_core::fock::{self, Direction, Species, Statistics};
use spinpath_core::groups::{su2_exp, Sl2c};
use spinpath_core::kernels::{self, KernelParams};
use spinpath_core::minkowski;
use spinpath_core::repr::{self, SpinLabel};
use spinpath_core::spin::{self, LorentzRepresentation, UnitTimelike};

fn err(e: spinpath_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn parse_rep(name: &str) -> PyResult<LorentzRepresentation> {
    name.parse().map_err(err)
}

fn spin_label(ell: f64) -> PyResult<SpinLabel> {
    SpinLabel::from_f64(ell).map_err(err)
}

/// A Minkowski four-vector (t, x, y, z), metric (−+++).
#[pyclass(frozen, from_py_object, module = "spinpath")]
#[derive(Clone, Copy)]
struct FourVector(minkowski::FourVector);

#[pymethods]
impl FourVector {
    #[new]
    fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self(minkowski::FourVector::new(t, x, y, z))
    }

    #[getter]
    fn t(&self) -> f64 {
        self.0.t
    }

    #[getter]
    fn x(&self) -> f64 {
        self.0.x
    }

    #[getter]
    fn y(&self) -> f64 {
        self.0.y
    }

    #[getter]
    fn z(&self) -> f64 {
        self.0.z
    }

    fn components(&self) -> [f64; 4] {
        self.0.components()
    }

    fn dot(&self, other: &FourVector) -> f64 {
        self.0.dot(&other.0)
    }

    fn norm_sq(&self) -> f64 {
        self.0.norm_sq()
    }

    /// Applies the Lorentz transformation covering the boost of `rapidity` along `axis`
    /// composed with the rotation exp(−i θ·σ/2).
    #[pyo3(signature = (rapidity, axis, theta = [0.0; 3]))]
    fn transformed(&self, rapidity: f64, axis: [f64; 3], theta: [f64; 3]) -> PyResult<Self> {
        let a = lorentz(rapidity, axis, theta)?;
        Ok(Self(a.to_lorentz().apply(&self.0)))
    }

    fn __sub__(&self, other: &FourVector) -> Self {
        Self(self.0 - other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-self.0)
    }

    fn __repr__(&self) -> String {
        let v = self.0;
        format!("FourVector({}, {}, {}, {})", v.t, v.x, v.y, v.z)
    }
}

fn lorentz(rapidity: f64, axis: [f64; 3], theta: [f64; 3]) -> PyResult<Sl2c> {
    let boost = if rapidity == 0.0 {
        Sl2c::identity()
    } else {
        Sl2c::boost(rapidity, &Vector3::from(axis)).map_err(err)?
    };
    Ok(boost * Sl2c::from_su2(&su2_exp(&Vector3::from(theta))))
}

/// A particle type: index, representation name, mass and statistics.
#[pyclass(frozen, from_py_object, module = "spinpath")]
#[derive(Clone, Copy)]
struct Particle(fock::ParticleSpec);

#[pymethods]
impl Particle {
    /// `statistics` defaults to the one fixed by the spin.
    #[new]
    #[pyo3(signature = (type_index, rep, mass, statistics = None))]
    fn new(type_index: u32, rep: &str, mass: f64, statistics: Option<&str>) -> PyResult<Self> {
        let rep = parse_rep(rep)?;
        let spec = match statistics {
            Some(s) => fock::ParticleSpec::new(
                type_index,
                rep,
                mass,
                s.parse::<Statistics>().map_err(err)?,
            ),
            None => fock::ParticleSpec::natural(type_index, rep, mass),
        };
        spec.map(Self).map_err(err)
    }

    #[getter]
    fn type_index(&self) -> u32 {
        self.0.type_index
    }

    #[getter]
    fn rep(&self) -> &'static str {
        self.0.rep.name()
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.0.mass
    }

    #[getter]
    fn statistics(&self) -> String {
        self.0.statistics.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Particle({}, {:?}, {}, {:?})",
            self.0.type_index,
            self.0.rep.name(),
            self.0.mass,
            self.statistics()
        )
    }
}

/// One leg of a multiparticle label: position, particle type and component index.
#[pyclass(frozen, from_py_object, module = "spinpath")]
#[derive(Clone, Copy)]
struct Leg(fock::Leg);

#[pymethods]
impl Leg {
    #[new]
    fn new(position: FourVector, particle: Particle, component: usize) -> PyResult<Self> {
        fock::Leg::new(position.0, particle.0, component)
            .map(Self)
            .map_err(err)
    }
}

/// χ_ℓ at class angle θ.
#[pyfunction]
fn character(ell: f64, theta: f64) -> PyResult<f64> {
    Ok(repr::character_of_angle(spin_label(ell)?, theta))
}

/// Spin-ℓ matrix of the SU(2) element exp(−i θ·σ/2).
#[pyfunction]
fn wigner_d(ell: f64, theta: [f64; 3]) -> PyResult<Vec<Vec<Complex64>>> {
    let u = su2_exp(&Vector3::from(theta));
    Ok(rows(&repr::wigner_d(spin_label(ell)?, &u).matrix))
}

/// Character-sum SU(2) kernel at class angle θ and Euclidean time τ.
#[pyfunction]
#[pyo3(signature = (theta, tau, ell_max = 8.0))]
fn su2_kernel(theta: f64, tau: f64, ell_max: f64) -> PyResult<Complex64> {
    if !(tau > 0.0) {
        return Err(PyValueError::new_err("tau must be positive"));
    }
    Ok(kernels::su2_kernel_of_angle(
        theta,
        kernels::euclidean_lambda(tau),
        spin_label(ell_max)?,
    ))
}

/// Scalar kernel at separation `dx` and path parameter λ.
#[pyfunction]
fn scalar_kernel(dx: FourVector, mass: f64, lam: f64) -> PyResult<Complex64> {
    let params = KernelParams::new(mass, lam).map_err(err)?;
    kernels::scalar_kernel(&dx.0, &params).map_err(err)
}

/// Scalar Feynman propagator in position space.
#[pyfunction]
#[pyo3(signature = (dx, mass, eps = 1e-6))]
fn feynman_propagator(dx: FourVector, mass: f64, eps: f64) -> PyResult<Complex64> {
    kernels::feynman_propagator_position(&dx.0, mass, eps).map_err(err)
}

/// Feynman propagator of a representation ("scalar", "dirac" or "vector").
#[pyfunction]
#[pyo3(signature = (rep, dx, mass, eps = 1e-6))]
fn propagator(rep: &str, dx: FourVector, mass: f64, eps: f64) -> PyResult<Vec<Vec<Complex64>>> {
    spin::nonscalar_propagator(parse_rep(rep)?, &dx.0, mass, eps)
        .map(|m| rows(&m))
        .map_err(err)
}

/// Positive (`sign = 1`) or negative (`sign = -1`) frequency on-shell kernel.
#[pyfunction]
fn onshell_kernel(
    rep: &str,
    dx: FourVector,
    mass: f64,
    sign: i32,
) -> PyResult<Vec<Vec<Complex64>>> {
    spin::onshell_kernel_matrix(parse_rep(rep)?, &dx.0, mass, sign)
        .map(|m| rows(&m))
        .map_err(err)
}

/// Spin frame at the unit timelike vector along `momentum`: u, v, P and the identity residuals.
#[pyfunction]
fn spin_frame(py: Python<'_>, rep: &str, momentum: FourVector, mass: f64) -> PyResult<Py<PyAny>> {
    let n = UnitTimelike::from_momentum(&momentum.0, mass).map_err(err)?;
    let frame = spin::build_spin_frame(parse_rep(rep)?, &n);
    let d = pyo3::types::PyDict::new(py);
    d.set_item("u", rows(&frame.u))?;
    d.set_item("v", rows(&frame.v))?;
    d.set_item("p", rows(&frame.p))?;
    d.set_item("normalization", frame.normalization_residual())?;
    d.set_item("idempotency", frame.idempotency_residual())?;
    d.set_item("absorption", frame.absorption_residual())?;
    d.set_item("uv_projector", frame.uv_projector_residual())?;
    Ok(d.into_any().unbind())
}

/// ⟨bra|ket⟩ as `(value, type_mismatch)`.
#[pyfunction]
#[pyo3(signature = (bra, ket, eps = fock::DEFAULT_EPSILON))]
fn inner_product(bra: Vec<Leg>, ket: Vec<Leg>, eps: f64) -> PyResult<(Complex64, bool)> {
    let bra = fock::MultiParticleLabel::new(bra.into_iter().map(|l| l.0).collect()).map_err(err)?;
    let ket = fock::MultiParticleLabel::new(ket.into_iter().map(|l| l.0).collect()).map_err(err)?;
    let ip = fock::multiparticle_inner_product_with(&bra, &ket, eps).map_err(err)?;
    Ok((ip.value, ip.type_mismatch))
}

fn parse_direction(s: &str) -> PyResult<Direction> {
    match s {
        "in" | "incoming" => Ok(Direction::Incoming),
        "out" | "outgoing" => Ok(Direction::Outgoing),
        _ => Err(PyValueError::new_err(format!("unknown direction {s:?}"))),
    }
}

fn parse_species(s: &str) -> PyResult<Species> {
    match s {
        "particle" => Ok(Species::Particle),
        "antiparticle" => Ok(Species::Antiparticle),
        _ => Err(PyValueError::new_err(format!("unknown species {s:?}"))),
    }
}

/// External-line factor for 3-momentum `p` at the vertex `x`.
#[pyfunction]
#[pyo3(signature = (p, x, particle, direction, species = "particle"))]
fn leg_factor(
    p: [f64; 3],
    x: FourVector,
    particle: Particle,
    direction: &str,
    species: &str,
) -> PyResult<Vec<Vec<Complex64>>> {
    let p = minkowski::ThreeMomentum::new(p[0], p[1], p[2]);
    fock::external_leg_factor(
        &p,
        &x.0,
        &particle.0,
        parse_direction(direction)?,
        parse_species(species)?,
    )
    .map(|m| rows(&m))
    .map_err(err)
}

/// First-order amplitude with a constant coupling `g` on every tensor entry.
///
/// Legs are `(p, particle, species, sigma)` tuples.
#[pyfunction]
fn vertex_amplitude(
    incoming: Vec<([f64; 3], Particle, String, usize)>,
    outgoing: Vec<([f64; 3], Particle, String, usize)>,
    g: Complex64,
) -> PyResult<Complex64> {
    let legs = |v: Vec<([f64; 3], Particle, String, usize)>| -> PyResult<Vec<fock::ExternalLeg>> {
        v.into_iter()
            .map(|(p, spec, species, sigma)| {
                Ok(fock::ExternalLeg {
                    momentum: minkowski::ThreeMomentum::new(p[0], p[1], p[2]),
                    spec: spec.0,
                    species: parse_species(&species)?,
                    sigma,
                })
            })
            .collect()
    };
    let (ins, outs) = (legs(incoming)?, legs(outgoing)?);
    let vertex = fock::VertexSpec::constant(
        ins.iter().map(|l| l.spec.rep.dim()).collect(),
        outs.iter().map(|l| l.spec.rep.dim()).collect(),
        g,
    )
    .map_err(err)?;
    let bx =
        fock::VertexBox::for_masses(ins.iter().chain(&outs).map(|l| l.spec.mass)).map_err(err)?;
    fock::vertex_amplitude_first_order(&ins, &outs, &vertex, &bx).map_err(err)
}

#[pymodule]
fn spinpath(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FourVector>()?;
    m.add_class::<Particle>()?;
    m.add_class::<Leg>()?;
    m.add_function(wrap_pyfunction!(character, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_d, m)?)?;
    m.add_function(wrap_pyfunction!(su2_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(feynman_propagator, m)?)?;
    m.add_function(wrap_pyfunction!(propagator, m)?)?;
    m.add_function(wrap_pyfunction!(onshell_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(spin_frame, m)?)?;
    m.add_function(wrap_pyfunction!(inner_product, m)?)?;
    m.add_function(wrap_pyfunction!(leg_factor, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_amplitude, m)?)?;
    Ok(())
}
