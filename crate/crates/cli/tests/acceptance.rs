//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use itertools::Itertools;
use nalgebra::{DMatrix, Matrix4, Vector3};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinpath::fock::{
    multiparticle_inner_product, Leg, MultiParticleLabel, ParticleSpec, DEFAULT_EPSILON,
};
use spinpath::groups::{
    haar_class_quadrature, haar_group_quadrature, haar_sample, haar_sample_with, HaarGrid, Sl2c,
    So4Element, Su2Element,
};
use spinpath::kernels::{
    euclidean_lambda, feynman_propagator_momentum_by_lambda, feynman_propagator_position,
    shifted_mass, so4_kernel, so4_kernel_complex, su2_kernel, su2_kernel_complex,
};
use spinpath::minkowski::{FourVector, ThreeMomentum};
use spinpath::repr::{character_orthonormality, RepLabel, SpinLabel};
use spinpath::spin::{
    build_spin_frame, covariance_residual_u, covariance_residual_v, nonscalar_propagator,
    onshell_kernel_matrix, position_eigen_residual_newton_wigner,
    position_eigen_residual_plane_wave, LorentzRepresentation, UnitTimelike,
};

struct Verdict {
    pass: bool,
    detail: String,
}

fn run(id: u32, title: &str, budget: Duration, check: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let v = check();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let pass = v.pass && in_time;
    println!(
        "criterion {id:>2} {}: {title}: {} [{:.3} s, budget {:.0} s]",
        if pass { "PASS" } else { "FAIL" },
        v.detail,
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    pass
}

fn chi(twice: u32, theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    if s.abs() < 1e-12 {
        let sign = if ((0.5 * theta / PI).round() as i64 * twice as i64) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        return sign * (twice + 1) as f64;
    }
    ((twice + 1) as f64 * 0.5 * theta).sin() / s
}

fn class_angle(u: &Su2Element) -> f64 {
    2.0 * u.scalar().clamp(-1.0, 1.0).acos()
}

fn heat_kernel(u: &Su2Element, tau: f64, twice_max: u32) -> f64 {
    let th = class_angle(u);
    (0..=twice_max)
        .map(|t| {
            let ell = t as f64 / 2.0;
            (-tau * ell * (ell + 1.0)).exp() * (t + 1) as f64 * chi(t, th)
        })
        .sum()
}

fn criterion_1() -> Verdict {
    let mut worst: f64 = 0.0;
    for a in 0..=8u32 {
        for b in 0..=8u32 {
            let expected = if a == b { 1.0 } else { 0.0 };
            let lib =
                character_orthonormality(SpinLabel::from_twice(a), SpinLabel::from_twice(b), 64);
            let own = haar_class_quadrature(|th| chi(a, th) * chi(b, th), 64);
            worst = worst
                .max((lib - expected).abs())
                .max((own - expected).abs());
        }
    }
    Verdict {
        pass: worst < 1e-10,
        detail: format!("max |<χ_a,χ_b> − δ_ab| = {worst:.2e} (tol 1e-10)"),
    }
}

fn criterion_2() -> Verdict {
    let ell_max = SpinLabel::from_twice(16);
    let grid = HaarGrid {
        angle: 96,
        polar: 24,
        azimuth: 40,
    };
    let mut worst: f64 = 0.0;
    for seed in [3u64, 17] {
        let b = haar_sample(seed);
        let conv = haar_group_quadrature(
            |c| {
                su2_kernel_complex(&(b * c.inverse()), euclidean_lambda(0.3), ell_max)
                    * su2_kernel_complex(c, euclidean_lambda(0.3), ell_max)
            },
            grid,
        );
        worst = worst.max((conv - Complex64::new(heat_kernel(&b, 0.6, 16), 0.0)).norm());
    }
    let vector = shifted_mass(1.0, RepLabel::vector()).unwrap();
    let weyl = shifted_mass(2.0, RepLabel::new(SpinLabel::HALF, SpinLabel::ZERO)).unwrap();
    let masses_ok = vector == 2.5f64.sqrt() && weyl == 5.5f64.sqrt();
    Verdict {
        pass: worst < 1e-8 && masses_ok,
        detail: format!(
            "semigroup residual {worst:.2e} (tol 1e-8); shifted masses {vector:.16} {weyl:.16}"
        ),
    }
}

fn criterion_3() -> Verdict {
    let ell_max = SpinLabel::from_twice(16);
    let mut worst: f64 = 0.0;
    for i in 0..100u64 {
        let g = So4Element::new(haar_sample(2 * i + 1000), haar_sample(2 * i + 1001));
        let real = so4_kernel(&g, 0.7, ell_max);
        let real_ref = su2_kernel(&g.left, 0.7, ell_max) * su2_kernel(&g.right, 0.7, ell_max);
        let eu = so4_kernel_complex(&g, euclidean_lambda(0.3), ell_max);
        let eu_ref = su2_kernel_complex(&g.left, euclidean_lambda(0.3), ell_max)
            * su2_kernel_complex(&g.right, euclidean_lambda(0.3), ell_max);
        worst = worst
            .max((real - real_ref).norm() / real_ref.norm().max(1.0))
            .max((eu - eu_ref).norm() / eu_ref.norm().max(1.0));
    }
    Verdict {
        pass: worst < 1e-12,
        detail: format!("max relative factorization residual {worst:.2e} (tol 1e-12)"),
    }
}

fn criterion_4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (m, eps) = (1.0, 0.01);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = FourVector::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let a = -p.t * p.t + p.x * p.x + p.y * p.y + p.z * p.z + m * m;
        let closed = Complex64::new(0.0, -1.0) / Complex64::new(a, -eps);
        let integrated = feynman_propagator_momentum_by_lambda(&p, m, eps, 1e6).unwrap();
        worst = worst.max((closed - integrated).norm());
    }
    Verdict {
        pass: worst < 1e-6,
        detail: format!("max |∫dλ − closed form| = {worst:.2e} (tol 1e-6)"),
    }
}

fn random_pair(rng: &mut ChaCha8Rng) -> (Sl2c, UnitTimelike) {
    let rotation = Sl2c::from_su2(&haar_sample_with(rng));
    let axis = Vector3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(0.1..1.0),
    );
    let a = Sl2c::boost(rng.random_range(0.0..2.0), &axis).unwrap() * rotation;
    let u = Vector3::new(
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
    );
    (a, UnitTimelike::from_spatial(&u, rng.random_bool(0.5)))
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs: Vec<_> = (0..100).map(|_| random_pair(&mut rng)).collect();
    let mut frame: f64 = 0.0;
    let mut covariance: f64 = 0.0;
    for rep in LorentzRepresentation::ALL {
        for (a, n) in &pairs {
            let f = build_spin_frame(rep, n);
            frame = frame
                .max(f.normalization_residual())
                .max(f.idempotency_residual())
                .max(f.uv_projector_residual());
            covariance = covariance
                .max(covariance_residual_u(rep, a, n))
                .max(covariance_residual_v(rep, a, n));
        }
    }
    Verdict {
        pass: frame < 1e-10 && covariance < 1e-9,
        detail: format!(
            "frame identities {frame:.2e} (tol 1e-10), covariance {covariance:.2e} (tol 1e-9)"
        ),
    }
}

/// Σ_σ ε_σ ε_σ† with ε_σ the spatial unit vectors carried by the pure boost e → n.
fn polarization_sum(n: &FourVector) -> Matrix4<f64> {
    let (n0, nv) = (n.t.abs(), Vector3::new(n.x, n.y, n.z) * n.t.signum());
    let mut boost = Matrix4::identity();
    boost[(0, 0)] = n0;
    for i in 0..3 {
        boost[(0, i + 1)] = nv[i];
        boost[(i + 1, 0)] = nv[i];
        for j in 0..3 {
            boost[(i + 1, j + 1)] += nv[i] * nv[j] / (1.0 + n0);
        }
    }
    boost * Matrix4::from_diagonal(&nalgebra::Vector4::new(0.0, 1.0, 1.0, 1.0)) * boost.transpose()
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let u = Vector3::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let n = UnitTimelike::from_spatial(&u, rng.random_bool(0.5));
        let v = n.vector();
        let c = v.components();
        let closed = Matrix4::from_fn(|i, j| if i == j { if i == 0 { -1.0 } else { 1.0 } } else { 0.0 } + c[i] * c[j]);
        let oracle = polarization_sum(&v);
        let p = build_spin_frame(LorentzRepresentation::Vector, &n).projector_raised();
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((p[(i, j)] - Complex64::new(closed[(i, j)], 0.0)).norm());
                worst = worst.max((oracle[(i, j)] - closed[(i, j)]).abs());
            }
        }
    }
    Verdict {
        pass: worst < 1e-10,
        detail: format!("max |P^μν − (η^μν + n^μ n^ν)| = {worst:.2e} (tol 1e-10)"),
    }
}

fn criterion_7() -> Verdict {
    let points: Vec<FourVector> = [0.5, 1.0, 2.0, 3.0, 5.0]
        .iter()
        .flat_map(|&t: &f64| {
            [
                FourVector::new(t, 0.3 * t, -0.2 * t, 0.1 * t),
                FourVector::new(-t, 0.1 * t, 0.25 * t, -0.3 * t),
            ]
        })
        .collect();
    let mut worst: f64 = 0.0;
    for dx in &points {
        let sign = if dx.t > 0.0 { 1 } else { -1 };
        for rep in [
            LorentzRepresentation::Scalar,
            LorentzRepresentation::DiracSpinor,
        ] {
            let d = nonscalar_propagator(rep, dx, 1.0, 1e-9).unwrap();
            let k = onshell_kernel_matrix(rep, dx, 1.0, sign).unwrap();
            let diff: DMatrix<Complex64> = &d - &k;
            worst = diff.iter().map(|z| z.norm()).fold(worst, f64::max);
        }
        let scalar = feynman_propagator_position(dx, 1.0, 1e-9).unwrap();
        let k =
            onshell_kernel_matrix(LorentzRepresentation::Scalar, dx, 1.0, sign).unwrap()[(0, 0)];
        worst = worst.max((scalar - k).norm());
    }
    Verdict {
        pass: worst < 1e-3,
        detail: format!(
            "max |Δ − θ(t)Δ₊ − θ(−t)Δ₋| = {worst:.2e} over 10 timelike points (tol 1e-3)"
        ),
    }
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let p = ThreeMomentum::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let x = FourVector::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let m = rng.random_range(0.5..2.0);
        for sign in [1, -1] {
            for j in [SpinLabel::ZERO, SpinLabel::HALF, SpinLabel::ONE] {
                worst = worst.max(position_eigen_residual_plane_wave(&p, &x, m, sign, j).unwrap());
            }
            for rep in LorentzRepresentation::ALL {
                worst =
                    worst.max(position_eigen_residual_newton_wigner(&p, &x, m, sign, rep).unwrap());
            }
        }
    }
    Verdict {
        pass: worst < 1e-5,
        detail: format!("max |X̂ψ − x⃗ψ| = {worst:.2e} (tol 1e-5)"),
    }
}

fn brute_force(bra: &MultiParticleLabel, ket: &MultiParticleLabel) -> Complex64 {
    let n = ket.len();
    let mut total = Complex64::new(0.0, 0.0);
    'perms: for perm in (0..n).permutations(n) {
        let mut product: Option<Complex64> = None;
        for (i, &pi) in perm.iter().enumerate() {
            let (b, k) = (&bra.legs()[pi], &ket.legs()[i]);
            if b.spec != k.spec {
                continue 'perms;
            }
            let d = nonscalar_propagator(
                k.spec.rep,
                &(b.position - k.position),
                k.spec.mass,
                DEFAULT_EPSILON,
            )
            .unwrap()[(b.component, k.component)];
            product = Some(product.map_or(d, |p| p * d));
        }
        let images: Vec<usize> = (0..n)
            .filter(|&i| ket.legs()[i].spec.is_fermion())
            .map(|i| perm[i])
            .collect();
        let inversions = images
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| a > b)
            .count();
        let term = product.unwrap();
        total += if inversions % 2 == 1 { -term } else { term };
    }
    total
}

fn leg(rng: &mut ChaCha8Rng, spec: ParticleSpec, t0: f64) -> Leg {
    let x = FourVector::new(
        t0 + rng.random_range(-0.3..0.3),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
    );
    Leg::new(x, spec, rng.random_range(0..spec.rep.dim())).unwrap()
}

fn criterion_9() -> Verdict {
    let specs = [
        ParticleSpec::natural(0, LorentzRepresentation::DiracSpinor, 1.0).unwrap(),
        ParticleSpec::natural(1, LorentzRepresentation::Scalar, 0.6).unwrap(),
        ParticleSpec::natural(2, LorentzRepresentation::Vector, 1.4).unwrap(),
        ParticleSpec::natural(3, LorentzRepresentation::DiracSpinor, 0.8).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases = 0;
    let mut mismatches = 0;
    let mut sign_failures = 0;
    for n in 1..=4 {
        for _ in 0..25 {
            let types: Vec<ParticleSpec> = (0..n)
                .map(|_| specs[rng.random_range(0..specs.len())])
                .collect();
            let mut shuffled = types.clone();
            shuffled.shuffle(&mut rng);
            let ket =
                MultiParticleLabel::new(types.iter().map(|&s| leg(&mut rng, s, 0.0)).collect())
                    .unwrap();
            let bra =
                MultiParticleLabel::new(shuffled.iter().map(|&s| leg(&mut rng, s, 3.0)).collect())
                    .unwrap();
            let value = multiparticle_inner_product(&bra, &ket).unwrap().value;
            cases += 1;
            if value != brute_force(&bra, &ket) {
                mismatches += 1;
            }
            for (i, j) in (0..n).tuple_combinations() {
                let (a, b) = (bra.legs()[i].spec, bra.legs()[j].spec);
                if a == b {
                    let swapped = multiparticle_inner_product(&bra.swapped(i, j), &ket)
                        .unwrap()
                        .value;
                    let expected = if a.is_fermion() { -value } else { value };
                    // Exact for two legs; beyond that the permuted sum is reassociated.
                    let exact_required = n == 2;
                    let close = (swapped - expected).norm() <= 1e-12 * value.norm();
                    if (exact_required && swapped != expected) || !close {
                        sign_failures += 1;
                    }
                }
            }
        }
    }
    Verdict {
        pass: mismatches == 0 && sign_failures == 0,
        detail: format!("{cases} labels with N ≤ 4: {mismatches} oracle mismatches, {sign_failures} exchange-sign failures (exact for N = 2, 1e-12 relative otherwise)"),
    }
}

fn criterion_10() -> Verdict {
    let dir = std::env::temp_dir().join(format!("spinpath-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut differing = Vec::new();
    for command in ["characters", "kernel", "spin-check", "propagator", "fock"] {
        let outputs: Vec<Vec<u8>> = ["1", "3"]
            .iter()
            .enumerate()
            .map(|(i, threads)| {
                let path = dir.join(format!("{command}-{i}.json"));
                let status = Command::new(env!("CARGO_BIN_EXE_spinpath"))
                    .args([
                        command,
                        "--seed",
                        "42",
                        "--format",
                        "json",
                        "--out",
                        path.to_str().unwrap(),
                    ])
                    .env("SPINPATH_THREADS", threads)
                    .status()
                    .unwrap();
                assert!(status.success(), "{command} failed");
                std::fs::read(&path).unwrap()
            })
            .collect();
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            differing.push(command);
        }
    }
    std::fs::remove_dir_all(&dir).ok();
    Verdict {
        pass: differing.is_empty(),
        detail: if differing.is_empty() {
            "all five suites byte-identical across reruns".into()
        } else {
            format!("outputs differ for {differing:?}")
        },
    }
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(1, "character orthonormality", s(1), criterion_1),
        run(
            2,
            "Euclidean kernel semigroup and mass shift",
            s(5),
            criterion_2,
        ),
        run(3, "SO(4) kernel factorization", s(5), criterion_3),
        run(
            4,
            "path-parameter integral of the momentum kernel",
            s(1),
            criterion_4,
        ),
        run(
            5,
            "spin-frame identities and covariance",
            s(10),
            criterion_5,
        ),
        run(6, "spin-1 projector", s(1), criterion_6),
        run(7, "propagator on-shell decomposition", s(60), criterion_7),
        run(8, "position-operator eigenvalues", s(5), criterion_8),
        run(
            9,
            "multiparticle inner product against brute force",
            s(10),
            criterion_9,
        ),
        run(10, "CLI determinism", s(120), criterion_10),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
