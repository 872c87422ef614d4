use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use spinpath::groups::{haar_sample_with, Sl2c};
use spinpath::spin::{
    build_spin_frame, covariance_residual_u, covariance_residual_v, LorentzRepresentation,
    UnitTimelike,
};

use super::Outcome;
use crate::config::RunConfig;
use crate::table::Table;

/// Seeded (Λ, n) pairs: Λ a boost of rapidity up to `max_rapidity` times a Haar rotation,
/// n with spatial part uniform in [−1.5, 1.5]³ and a random time orientation.
pub fn samples(seed: u64, count: usize, max_rapidity: f64) -> Vec<(Sl2c, UnitTimelike)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rotation = Sl2c::from_su2(&haar_sample_with(&mut rng));
            let axis = loop {
                let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
                if v.norm() > 1e-3 {
                    break v;
                }
            };
            let rapidity = rng.random_range(0.0..=max_rapidity);
            let a = Sl2c::boost(rapidity, &axis).expect("nonzero axis") * rotation;
            let u = Vector3::from_fn(|_, _| rng.random_range(-1.5..1.5));
            let n = UnitTimelike::from_spatial(&u, rng.random_bool(0.5));
            (a, n)
        })
        .collect()
}

#[derive(Default, Clone, Copy)]
struct Maxima([f64; 6]);

impl Maxima {
    fn merge(self, other: Self) -> Self {
        Maxima(std::array::from_fn(|i| self.0[i].max(other.0[i])))
    }
}

/// Maximum frame and covariance residuals per representation.
pub fn run(cfg: &RunConfig) -> Outcome {
    let tol = cfg.tolerance(|t| t.spin_check);
    let reps = cfg.spin_check_reps().expect("validated");
    let pairs = samples(
        cfg.seed,
        cfg.spin_check.samples,
        cfg.spin_check.max_rapidity,
    );
    let mut out = Outcome::new(Table::new(vec![
        "rep",
        "samples",
        "normalization",
        "idempotency",
        "absorption",
        "u_v_projector",
        "covariance_u",
        "covariance_v",
        "pass",
    ]));
    for rep in reps {
        let m = residuals(rep, &pairs);
        let worst = m.0.iter().copied().fold(0.0, f64::max);
        let pass = out.check(worst < tol, || {
            format!("{rep}: max residual {worst:e} exceeds {tol:e}")
        });
        let mut row = vec![rep.name().into(), pairs.len().into()];
        row.extend(m.0.iter().map(|&x| x.into()));
        row.push(pass.into());
        out.table.push(row);
    }
    out
}

fn residuals(rep: LorentzRepresentation, pairs: &[(Sl2c, UnitTimelike)]) -> Maxima {
    pairs
        .par_iter()
        .map(|(a, n)| {
            let f = build_spin_frame(rep, n);
            Maxima([
                f.normalization_residual(),
                f.idempotency_residual(),
                f.absorption_residual(),
                f.uv_projector_residual(),
                covariance_residual_u(rep, a, n),
                covariance_residual_v(rep, a, n),
            ])
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Maxima::default(), Maxima::merge)
}
