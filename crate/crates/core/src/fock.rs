//! Multiparticle inner products, external-leg factors and the first-order vertex amplitude.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::minkowski::{on_shell_momentum, FourVector, ThreeMomentum};
use crate::spin::{nonscalar_propagator, u_matrix, v_matrix, LorentzRepresentation, UnitTimelike};

/// Default upper bound on the number of legs in a multiparticle label.
pub const DEFAULT_MAX_PARTICLES: usize = 6;

/// Regulator handed to the single-particle propagators.
pub const DEFAULT_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        })
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boson" => Ok(Statistics::Boson),
            "fermion" => Ok(Statistics::Fermion),
            other => Err(Error::InvalidLabel(format!("unknown statistics '{other}'"))),
        }
    }
}

/// A particle type: index, Lorentz representation, mass and statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleSpec {
    pub type_index: u32,
    pub rep: LorentzRepresentation,
    pub mass: f64,
    pub statistics: Statistics,
}

impl ParticleSpec {
    /// Fails unless the mass is positive and the statistics agree with the spin.
    pub fn new(
        type_index: u32,
        rep: LorentzRepresentation,
        mass: f64,
        statistics: Statistics,
    ) -> Result<Self> {
        let spec = Self {
            type_index,
            rep,
            mass,
            statistics,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Statistics implied by the spin of `rep`.
    pub fn natural(type_index: u32, rep: LorentzRepresentation, mass: f64) -> Result<Self> {
        let statistics = if rep.spin().is_integer() {
            Statistics::Boson
        } else {
            Statistics::Fermion
        };
        Self::new(type_index, rep, mass, statistics)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) {
            return Err(Error::NonPositiveMass(self.mass));
        }
        let integer = self.rep.spin().is_integer();
        match (self.statistics, integer) {
            (Statistics::Boson, true) | (Statistics::Fermion, false) => Ok(()),
            _ => Err(Error::SpinStatistics(format!(
                "{} with spin {} cannot be a {}",
                self.rep,
                self.rep.spin(),
                self.statistics
            ))),
        }
    }

    pub fn is_fermion(&self) -> bool {
        self.statistics == Statistics::Fermion
    }
}

/// One particle in a multiparticle label: position, type and a Lorentz component index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leg {
    pub position: FourVector,
    pub spec: ParticleSpec,
    pub component: usize,
}

impl Leg {
    pub fn new(position: FourVector, spec: ParticleSpec, component: usize) -> Result<Self> {
        spec.validate()?;
        if component >= spec.rep.dim() {
            return Err(Error::InvalidLabel(format!(
                "component {component} out of range for {} (dimension {})",
                spec.rep,
                spec.rep.dim()
            )));
        }
        Ok(Self {
            position,
            spec,
            component,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiParticleLabel {
    legs: Vec<Leg>,
}

impl MultiParticleLabel {
    pub fn new(legs: Vec<Leg>) -> Result<Self> {
        Self::with_max(legs, DEFAULT_MAX_PARTICLES)
    }

    pub fn with_max(legs: Vec<Leg>, max: usize) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::InvalidLabel(
                "a multiparticle label needs at least one leg".into(),
            ));
        }
        if legs.len() > max {
            return Err(Error::InvalidLabel(format!(
                "{} legs exceed the maximum of {max}",
                legs.len()
            )));
        }
        for leg in &legs {
            Leg::new(leg.position, leg.spec, leg.component)?;
        }
        Ok(Self { legs })
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn len(&self) -> usize {
        self.legs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }

    /// The same label with legs `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut legs = self.legs.clone();
        legs.swap(i, j);
        Self { legs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProduct {
    pub value: Complex64,
    /// Set when the particle counts or type multisets of the two labels differ.
    pub type_mismatch: bool,
}

/// Δ^{l′}_l(x′ − x) between a bra leg and a ket leg, `None` if the types differ.
pub fn leg_propagator(bra: &Leg, ket: &Leg, eps: f64) -> Result<Option<Complex64>> {
    if bra.spec != ket.spec {
        return Ok(None);
    }
    let dx = bra.position - ket.position;
    let d = nonscalar_propagator(ket.spec.rep, &dx, ket.spec.mass, eps)?;
    Ok(Some(d[(bra.component, ket.component)]))
}

/// ±1 from the number of inversions among the fermionic entries of `perm`.
pub fn fermion_parity(perm: &[usize], fermion: &[bool]) -> f64 {
    let picked: Vec<usize> = perm
        .iter()
        .zip(fermion)
        .filter(|(_, &f)| f)
        .map(|(&p, _)| p)
        .collect();
    let mut inversions = 0usize;
    for i in 0..picked.len() {
        for j in i + 1..picked.len() {
            if picked[i] > picked[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn same_multiset(bra: &MultiParticleLabel, ket: &MultiParticleLabel) -> bool {
    let mut used = vec![false; bra.len()];
    ket.legs.iter().all(|k| {
        match bra
            .legs
            .iter()
            .enumerate()
            .position(|(j, b)| !used[j] && b.spec == k.spec)
        {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

/// Σ_P δ_P Π_i Δ^{l′_{P(i)}}_{l_i}(x′_{P(i)} − x_i) over permutations P of the ket legs onto
/// the bra legs, δ_P being the sign of the induced fermion permutation.
///
/// Permutations are visited in lexicographic order and products are accumulated left to right.
pub fn multiparticle_inner_product(
    bra: &MultiParticleLabel,
    ket: &MultiParticleLabel,
) -> Result<InnerProduct> {
    multiparticle_inner_product_with(bra, ket, DEFAULT_EPSILON)
}

pub fn multiparticle_inner_product_with(
    bra: &MultiParticleLabel,
    ket: &MultiParticleLabel,
    eps: f64,
) -> Result<InnerProduct> {
    let zero = InnerProduct {
        value: Complex64::new(0.0, 0.0),
        type_mismatch: true,
    };
    if bra.len() != ket.len() || !same_multiset(bra, ket) {
        return Ok(zero);
    }
    let n = ket.len();
    let mut table = vec![vec![None; n]; n];
    for (i, k) in ket.legs.iter().enumerate() {
        for (j, b) in bra.legs.iter().enumerate() {
            table[i][j] = leg_propagator(b, k, eps)?;
        }
    }
    let fermion: Vec<bool> = ket.legs.iter().map(|l| l.spec.is_fermion()).collect();

    struct Search<'a> {
        table: &'a [Vec<Option<Complex64>>],
        fermion: &'a [bool],
        perm: Vec<usize>,
        used: Vec<bool>,
        total: Complex64,
    }

    impl Search<'_> {
        fn descend(&mut self, depth: usize, product: Option<Complex64>) {
            let n = self.table.len();
            if depth == n {
                let term = product.expect("nonempty label");
                self.total += term * fermion_parity(&self.perm, self.fermion);
                return;
            }
            for j in 0..n {
                if self.used[j] {
                    continue;
                }
                let Some(factor) = self.table[depth][j] else {
                    continue;
                };
                self.used[j] = true;
                self.perm.push(j);
                let next = match product {
                    None => factor,
                    Some(p) => p * factor,
                };
                self.descend(depth + 1, Some(next));
                self.perm.pop();
                self.used[j] = false;
            }
        }
    }

    let mut search = Search {
        table: &table,
        fermion: &fermion,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        total: Complex64::new(0.0, 0.0),
    };
    search.descend(0, None);
    Ok(InnerProduct {
        value: search.total,
        type_mismatch: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Incoming,
    Outgoing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    Particle,
    Antiparticle,
}

/// An on-shell external line: momentum, type, direction, species and spin component σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExternalLeg {
    pub momentum: ThreeMomentum,
    pub spec: ParticleSpec,
    pub species: Species,
    pub sigma: usize,
}

/// External-line factor at a vertex `x`.
///
/// Outgoing particle: (2π)^{−3/2} e^{i(E x⁰ − p⃗·x⃗)} u(n_p)†, a (2j+1) × dim matrix.
/// Incoming particle: (2π)^{−3/2} e^{i(−E x⁰ + p⃗·x⃗)} u(n_p), dim × (2j+1).
/// Antiparticles take E → −E and v in place of u, with n_p = (−E, p⃗)/m.
pub fn external_leg_factor(
    p: &ThreeMomentum,
    vertex_x: &FourVector,
    spec: &ParticleSpec,
    direction: Direction,
    species: Species,
) -> Result<DMatrix<Complex64>> {
    spec.validate()?;
    let m = spec.mass;
    let s = match species {
        Species::Particle => 1.0,
        Species::Antiparticle => -1.0,
    };
    let n = UnitTimelike::from_momentum(&on_shell_momentum(p, m, s)?, m)?;
    let w = match species {
        Species::Particle => u_matrix(spec.rep, &n),
        Species::Antiparticle => v_matrix(spec.rep, &n),
    };
    let e = s * (p.norm_sq() + m * m).sqrt();
    let arg = e * vertex_x.t - (p.px * vertex_x.x + p.py * vertex_x.y + p.pz * vertex_x.z);
    let norm = (2.0 * PI).powf(-1.5);
    Ok(match direction {
        Direction::Outgoing => w.adjoint() * Complex64::from_polar(norm, arg),
        Direction::Incoming => w * Complex64::from_polar(norm, -arg),
    })
}

/// Coupling tensor g with `incoming` slots followed by `outgoing` slots, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSpec {
    pub incoming: Vec<usize>,
    pub outgoing: Vec<usize>,
    pub data: Vec<Complex64>,
}

impl VertexSpec {
    pub fn new(incoming: Vec<usize>, outgoing: Vec<usize>, data: Vec<Complex64>) -> Result<Self> {
        if incoming.len() > 3 || outgoing.len() > 3 {
            return Err(Error::InvalidArgument(
                "a vertex has at most three incoming and three outgoing slots".into(),
            ));
        }
        let expected: usize = incoming.iter().chain(&outgoing).product();
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: data.len(),
            });
        }
        Ok(Self {
            incoming,
            outgoing,
            data,
        })
    }

    /// g with every entry equal to `value`.
    pub fn constant(incoming: Vec<usize>, outgoing: Vec<usize>, value: Complex64) -> Result<Self> {
        let len = incoming.iter().chain(&outgoing).product();
        Self::new(incoming, outgoing, vec![value; len])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.incoming
            .iter()
            .chain(&self.outgoing)
            .copied()
            .collect()
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        Self {
            data: self.data.iter().map(|g| g * k).collect(),
            ..self.clone()
        }
    }
}

/// Half-extents (T, L) of the vertex integration box [−T, T] × [−L, L]³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexBox {
    pub half_time: f64,
    pub half_space: f64,
}

impl VertexBox {
    /// T = L = 20/m_min.
    pub fn for_masses(masses: impl IntoIterator<Item = f64>) -> Result<Self> {
        let m_min = masses.into_iter().fold(f64::INFINITY, f64::min);
        if !(m_min > 0.0 && m_min.is_finite()) {
            return Err(Error::NonPositiveMass(m_min));
        }
        Ok(Self {
            half_time: 20.0 / m_min,
            half_space: 20.0 / m_min,
        })
    }
}

/// ∫_{−a}^{a} e^{iωs} ds = 2a sinc(ωa).
pub fn box_factor(omega: f64, half_width: f64) -> f64 {
    let z = omega * half_width;
    let sinc = if z.abs() < 1e-4 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    };
    2.0 * half_width * sinc
}

/// −i Σ g^{l′…}{}_{l…} Π (leg factors) ∫_box d⁴x e^{i(ω x⁰ − k⃗·x⃗)} at first order in g.
///
/// Incoming legs contribute their factor's column σ, indexed by the incoming slots of g;
/// outgoing legs contribute row σ, indexed by the outgoing slots. The plane-wave phases of all
/// legs are integrated over the box analytically.
pub fn vertex_amplitude_first_order(
    in_legs: &[ExternalLeg],
    out_legs: &[ExternalLeg],
    vertex: &VertexSpec,
    bx: &VertexBox,
) -> Result<Complex64> {
    if in_legs.len() != vertex.incoming.len() || out_legs.len() != vertex.outgoing.len() {
        return Err(Error::InvalidArgument(format!(
            "vertex has {} incoming and {} outgoing slots, got {} and {} legs",
            vertex.incoming.len(),
            vertex.outgoing.len(),
            in_legs.len(),
            out_legs.len()
        )));
    }
    if in_legs.len() + out_legs.len() > DEFAULT_MAX_PARTICLES {
        return Err(Error::InvalidArgument("too many legs".into()));
    }
    if !(bx.half_time > 0.0
        && bx.half_space > 0.0
        && bx.half_time.is_finite()
        && bx.half_space.is_finite())
    {
        return Err(Error::Quadrature(format!("invalid vertex box {bx:?}")));
    }

    let origin = FourVector::default();
    let mut vectors: Vec<Vec<Complex64>> = Vec::new();
    let mut omega = 0.0;
    let mut k = [0.0; 3];
    let legs = in_legs
        .iter()
        .map(|l| (l, Direction::Incoming))
        .chain(out_legs.iter().map(|l| (l, Direction::Outgoing)));
    for ((leg, direction), &slot) in legs.zip(vertex.dims().iter()) {
        if slot != leg.spec.rep.dim() {
            return Err(Error::DimensionMismatch {
                expected: slot,
                actual: leg.spec.rep.dim(),
            });
        }
        let twice = leg.spec.rep.spin().dim();
        if leg.sigma >= twice {
            return Err(Error::InvalidLabel(format!(
                "spin component {} out of range",
                leg.sigma
            )));
        }
        let f = external_leg_factor(&leg.momentum, &origin, &leg.spec, direction, leg.species)?;
        let e = (leg.momentum.norm_sq() + leg.spec.mass * leg.spec.mass).sqrt();
        let s = if leg.species == Species::Particle {
            1.0
        } else {
            -1.0
        };
        let p = leg.momentum;
        // Outgoing legs carry e^{i(sE x⁰ − p⃗·x⃗)}, incoming the conjugate.
        let d = if direction == Direction::Outgoing {
            1.0
        } else {
            -1.0
        };
        omega += d * s * e;
        k[0] += d * p.px;
        k[1] += d * p.py;
        k[2] += d * p.pz;
        vectors.push(match direction {
            Direction::Incoming => f.column(leg.sigma).iter().copied().collect(),
            Direction::Outgoing => f.row(leg.sigma).iter().copied().collect(),
        });
    }

    let dims = vertex.dims();
    let mut contraction = Complex64::new(0.0, 0.0);
    let mut index = vec![0usize; dims.len()];
    for g in &vertex.data {
        let mut term = *g;
        for (slot, &i) in index.iter().enumerate() {
            term *= vectors[slot][i];
        }
        contraction += term;
        for slot in (0..dims.len()).rev() {
            index[slot] += 1;
            if index[slot] < dims[slot] {
                break;
            }
            index[slot] = 0;
        }
    }

    let volume = box_factor(omega, bx.half_time)
        * box_factor(k[0], bx.half_space)
        * box_factor(k[1], bx.half_space)
        * box_factor(k[2], bx.half_space);
    let amplitude = Complex64::new(0.0, -1.0) * contraction * volume;
    if !amplitude.is_finite() {
        return Err(Error::Quadrature("non-finite vertex amplitude".into()));
    }
    Ok(amplitude)
}
