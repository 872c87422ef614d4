use itertools::Itertools;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinpath::fock::{
    multiparticle_inner_product, vertex_amplitude_first_order, ExternalLeg, Leg,
    MultiParticleLabel, ParticleSpec, Species, VertexBox, VertexSpec, DEFAULT_EPSILON,
};
use spinpath::minkowski::{FourVector, ThreeMomentum};
use spinpath::spin::{nonscalar_propagator, LorentzRepresentation};

use super::Outcome;
use crate::config::RunConfig;
use crate::table::Table;

/// Width of one momentum cell in the vertex peak scan.
const PEAK_CELL: f64 = 0.01;

fn specs() -> [ParticleSpec; 3] {
    [
        ParticleSpec::natural(0, LorentzRepresentation::DiracSpinor, 1.0).expect("valid"),
        ParticleSpec::natural(1, LorentzRepresentation::Scalar, 0.7).expect("valid"),
        ParticleSpec::natural(2, LorentzRepresentation::Vector, 1.3).expect("valid"),
    ]
}

fn random_leg(rng: &mut ChaCha8Rng, spec: ParticleSpec, t0: f64) -> Leg {
    let position = FourVector::new(
        t0 + rng.random_range(-0.3..0.3),
        rng.random_range(-0.4..0.4),
        rng.random_range(-0.4..0.4),
        rng.random_range(-0.4..0.4),
    );
    Leg::new(position, spec, rng.random_range(0..spec.rep.dim())).expect("component in range")
}

/// A ket near the origin and a bra near t = 2.5 carrying the same types in shuffled order,
/// so every pairing is timelike-separated.
fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (MultiParticleLabel, MultiParticleLabel) {
    let all = specs();
    let types: Vec<ParticleSpec> = (0..n)
        .map(|_| all[rng.random_range(0..all.len())])
        .collect();
    let mut shuffled = types.clone();
    shuffled.shuffle(rng);
    let ket = types.iter().map(|&s| random_leg(rng, s, 0.0)).collect();
    let bra = shuffled.iter().map(|&s| random_leg(rng, s, 2.5)).collect();
    (
        MultiParticleLabel::new(bra).expect("valid"),
        MultiParticleLabel::new(ket).expect("valid"),
    )
}

/// Σ over all N! assignments in lexicographic order, propagators recomputed per term.
fn brute_force(bra: &MultiParticleLabel, ket: &MultiParticleLabel) -> Complex64 {
    let n = ket.len();
    let mut total = Complex64::new(0.0, 0.0);
    'perms: for perm in (0..n).permutations(n) {
        let mut product: Option<Complex64> = None;
        for (i, &j) in perm.iter().enumerate() {
            let (b, k) = (&bra.legs()[j], &ket.legs()[i]);
            if b.spec != k.spec {
                continue 'perms;
            }
            let d = nonscalar_propagator(
                k.spec.rep,
                &(b.position - k.position),
                k.spec.mass,
                DEFAULT_EPSILON,
            )
            .expect("off the light cone")[(b.component, k.component)];
            product = Some(product.map_or(d, |p| p * d));
        }
        let fermions: Vec<usize> = perm
            .iter()
            .enumerate()
            .filter(|(i, _)| ket.legs()[*i].spec.is_fermion())
            .map(|(_, &j)| j)
            .collect();
        let odd = fermions
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| a > b)
            .count()
            % 2
            == 1;
        let term = product.expect("nonempty");
        total += if odd { -term } else { term };
    }
    total
}

fn scalar_two_to_one(qx: f64) -> Complex64 {
    let light = ParticleSpec::natural(0, LorentzRepresentation::Scalar, 1.0).expect("valid");
    let heavy = ParticleSpec::natural(1, LorentzRepresentation::Scalar, 2.0).expect("valid");
    let leg = |p: ThreeMomentum, spec| ExternalLeg {
        momentum: p,
        spec,
        species: Species::Particle,
        sigma: 0,
    };
    let incoming = [
        leg(ThreeMomentum::new(0.3, 0.0, 0.1), light),
        leg(ThreeMomentum::new(-0.2, 0.4, 0.0), light),
    ];
    let outgoing = [leg(ThreeMomentum::new(qx, 0.4, 0.1), heavy)];
    let vertex =
        VertexSpec::constant(vec![1, 1], vec![1], Complex64::new(1.0, 0.0)).expect("valid");
    let bx = VertexBox::for_masses([1.0, 2.0]).expect("positive masses");
    vertex_amplitude_first_order(&incoming, &outgoing, &vertex, &bx).expect("valid vertex")
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let tol = cfg.tolerance(|t| t.fock);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Outcome::new(Table::new(vec![
        "check",
        "n",
        "trial",
        "value_re",
        "value_im",
        "reference_re",
        "reference_im",
        "residual",
        "pass",
    ]));
    let push = |out: &mut Outcome,
                check: &str,
                n: usize,
                trial: usize,
                v: Complex64,
                r: Complex64,
                residual: f64,
                ok: bool| {
        let pass = out.check(ok, || {
            format!("{check} n = {n} trial {trial}: residual {residual:e}")
        });
        out.table.push(vec![
            check.into(),
            n.into(),
            trial.into(),
            v.re.into(),
            v.im.into(),
            r.re.into(),
            r.im.into(),
            residual.into(),
            pass.into(),
        ]);
    };

    for n in 1..=cfg.fock.max_n {
        for trial in 0..cfg.fock.trials {
            let (bra, ket) = random_pair(&mut rng, n);
            let v = multiparticle_inner_product(&bra, &ket)
                .expect("timelike pairs")
                .value;
            let r = brute_force(&bra, &ket);
            let residual = (v - r).norm();
            push(
                &mut out,
                "oracle",
                n,
                trial,
                v,
                r,
                residual,
                residual <= tol * r.norm().max(1.0),
            );
        }
    }

    let fermion = specs()[0];
    for trial in 0..cfg.fock.trials {
        let ket = MultiParticleLabel::new(vec![
            random_leg(&mut rng, fermion, 0.0),
            random_leg(&mut rng, fermion, 0.0),
        ])
        .expect("valid");
        let bra = MultiParticleLabel::new(vec![
            random_leg(&mut rng, fermion, 2.5),
            random_leg(&mut rng, fermion, 2.5),
        ])
        .expect("valid");
        let v = multiparticle_inner_product(&bra, &ket)
            .expect("timelike pairs")
            .value;
        let swapped = multiparticle_inner_product(&bra.swapped(0, 1), &ket)
            .expect("timelike pairs")
            .value;
        let residual = (v + swapped).norm();
        push(
            &mut out,
            "antisymmetry",
            2,
            trial,
            v,
            -swapped,
            residual,
            residual <= tol * v.norm().max(1.0),
        );
    }

    if cfg.fock.vertex_demo {
        let balance = 0.1;
        let (offset, peak) = (-20i64..=20)
            .map(|i| (i, scalar_two_to_one(balance + i as f64 * PEAK_CELL)))
            .fold((0i64, Complex64::new(0.0, 0.0)), |best, (i, a)| {
                if a.norm() > best.1.norm() {
                    (i, a)
                } else {
                    best
                }
            });
        let at_balance = scalar_two_to_one(balance);
        push(
            &mut out,
            "vertex_peak",
            3,
            0,
            peak,
            at_balance,
            offset.abs() as f64,
            offset.abs() <= 1,
        );
    }
    out
}
