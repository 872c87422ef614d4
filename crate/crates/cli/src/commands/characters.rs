use std::f64::consts::PI;

use spinpath::repr::{character_of_angle, character_orthonormality};

use super::Outcome;
use crate::config::RunConfig;
use crate::table::Table;

/// χ^ℓ at θ = 0, π/2, π, 3π/2 and the orthonormality residuals against every ℓ′ ≤ ℓ_max.
pub fn run(cfg: &RunConfig) -> Outcome {
    let tol = cfg.tolerance(|t| t.characters);
    let labels: Vec<_> = cfg.ell_max_label().up_to().collect();
    let n = cfg.haar.class_nodes;
    let mut out = Outcome::new(Table::new(vec![
        "ell",
        "dim",
        "chi_0",
        "chi_half_pi",
        "chi_pi",
        "chi_three_half_pi",
        "norm_residual",
        "max_cross_residual",
        "pass",
    ]));
    for &ell in &labels {
        let norm = (character_orthonormality(ell, ell, n) - 1.0).abs();
        let cross = labels
            .iter()
            .filter(|&&other| other != ell)
            .map(|&other| character_orthonormality(ell, other, n).abs())
            .fold(0.0, f64::max);
        let pass = out.check(norm < tol && cross < tol, || {
            format!("ell = {ell}: orthonormality residuals {norm:e}, {cross:e} exceed {tol:e}")
        });
        let chi = |th: f64| character_of_angle(ell, th);
        out.table.push(vec![
            ell.to_string().into(),
            ell.dim().into(),
            chi(0.0).into(),
            chi(0.5 * PI).into(),
            chi(PI).into(),
            chi(1.5 * PI).into(),
            norm.into(),
            cross.into(),
            pass.into(),
        ]);
    }
    out
}
