use rayon::prelude::*;
use spinpath::kernels::LIGHT_CONE_TOLERANCE;
use spinpath::minkowski::FourVector;
use spinpath::spin::{max_abs, nonscalar_propagator, onshell_kernel_matrix, LorentzRepresentation};

use super::Outcome;
use crate::config::RunConfig;
use crate::table::{Cell, Table};

/// Regulator passed to the propagator; only its sign matters off the light cone.
const EPSILON: f64 = 1e-9;

enum Point {
    LightCone,
    Value {
        feynman: (f64, f64),
        onshell: (f64, f64),
        residual: f64,
    },
    Failed(String),
}

fn evaluate(rep: LorentzRepresentation, dx: &FourVector, m: f64) -> Point {
    if dx.norm_sq().abs() < LIGHT_CONE_TOLERANCE {
        return Point::LightCone;
    }
    let sign = if dx.t >= 0.0 { 1 } else { -1 };
    let result = nonscalar_propagator(rep, dx, m, EPSILON)
        .and_then(|d| Ok((d, onshell_kernel_matrix(rep, dx, m, sign)?)));
    match result {
        Ok((d, k)) => Point::Value {
            feynman: (d[(0, 0)].re, d[(0, 0)].im),
            onshell: (k[(0, 0)].re, k[(0, 0)].im),
            residual: max_abs(&(d - k)),
        },
        Err(e) => Point::Failed(e.to_string()),
    }
}

/// Δ against θ(t)Δ₊ + θ(−t)Δ₋ on the configured grid; light-cone points are flagged and skipped.
pub fn run(cfg: &RunConfig) -> Outcome {
    let tol = cfg.tolerance(|t| t.propagator);
    let m = cfg.propagator.mass;
    let reps = cfg.propagator_reps().expect("validated");
    let jobs: Vec<(LorentzRepresentation, FourVector)> = reps
        .iter()
        .flat_map(|&rep| {
            cfg.propagator
                .points
                .iter()
                .map(move |p| (rep, FourVector::new(p[0], p[1], p[2], p[3])))
        })
        .collect();
    let points: Vec<Point> = jobs
        .par_iter()
        .map(|(rep, dx)| evaluate(*rep, dx, m))
        .collect();
    let mut out = Outcome::new(Table::new(vec![
        "rep",
        "t",
        "x",
        "y",
        "z",
        "interval",
        "region",
        "light_cone",
        "feynman_re",
        "feynman_im",
        "onshell_re",
        "onshell_im",
        "residual",
        "pass",
    ]));
    for ((rep, dx), point) in jobs.iter().zip(points) {
        let a = dx.norm_sq();
        let region = if a.abs() < LIGHT_CONE_TOLERANCE {
            "light-cone"
        } else if a < 0.0 {
            "timelike"
        } else {
            "spacelike"
        };
        let mut row: Vec<Cell> = vec![
            rep.name().into(),
            dx.t.into(),
            dx.x.into(),
            dx.y.into(),
            dx.z.into(),
            a.into(),
            region.into(),
        ];
        let nan = f64::NAN;
        match point {
            Point::LightCone => {
                row.extend([
                    true.into(),
                    nan.into(),
                    nan.into(),
                    nan.into(),
                    nan.into(),
                    nan.into(),
                    true.into(),
                ]);
            }
            Point::Value {
                feynman,
                onshell,
                residual,
            } => {
                let pass = out.check(residual < tol, || {
                    format!(
                        "{rep} at {:?}: residual {residual:e} exceeds {tol:e}",
                        dx.components()
                    )
                });
                row.extend([
                    false.into(),
                    feynman.0.into(),
                    feynman.1.into(),
                    onshell.0.into(),
                    onshell.1.into(),
                    residual.into(),
                    pass.into(),
                ]);
            }
            Point::Failed(msg) => {
                out.check(false, || format!("{rep} at {:?}: {msg}", dx.components()));
                row.extend([
                    false.into(),
                    nan.into(),
                    nan.into(),
                    nan.into(),
                    nan.into(),
                    nan.into(),
                    false.into(),
                ]);
            }
        }
        out.table.push(row);
    }
    out
}
