use num_complex::Complex64;
use spinpath::groups::{haar_group_quadrature, haar_sample, HaarGrid, So4Element};
use spinpath::kernels::{euclidean_lambda, so4_kernel_complex, su2_kernel_complex, su2_tail_bound};

use super::Outcome;
use crate::config::RunConfig;
use crate::table::Table;

const FACTORIZATION_TOLERANCE: f64 = 1e-12;

/// Euclidean SU(2) and SO(4) kernels at seeded group points, with semigroup, factorization and
/// truncation-tail columns. Residuals are relative to max(1, |K|).
pub fn run(cfg: &RunConfig) -> Outcome {
    let tol = cfg.tolerance(|t| t.kernel);
    let ell_max = cfg.ell_max_label();
    let grid = HaarGrid {
        angle: cfg.haar.angle,
        polar: cfg.haar.polar,
        azimuth: cfg.haar.azimuth,
    };
    let b = haar_sample(cfg.seed);
    let g = So4Element::new(b, haar_sample(cfg.seed.wrapping_add(1)));
    let mut out = Outcome::new(Table::new(vec![
        "tau",
        "su2_re",
        "su2_im",
        "so4_re",
        "so4_im",
        "factorization_residual",
        "semigroup_residual",
        "tail_bound",
        "deviation_from_one",
        "pass",
    ]));
    for &tau in &cfg.kernel.taus {
        let lam = euclidean_lambda(tau);
        let k = su2_kernel_complex(&b, lam, ell_max);
        let so4 = so4_kernel_complex(&g, lam, ell_max);
        let product =
            su2_kernel_complex(&g.left, lam, ell_max) * su2_kernel_complex(&g.right, lam, ell_max);
        let factorization = (so4 - product).norm() / so4.norm().max(1.0);
        let half = euclidean_lambda(0.5 * tau);
        let convolution = haar_group_quadrature(
            |c| {
                su2_kernel_complex(&(b * c.inverse()), half, ell_max)
                    * su2_kernel_complex(c, half, ell_max)
            },
            grid,
        );
        let semigroup = (convolution - k).norm() / k.norm().max(1.0);
        let deviation = (k - Complex64::new(1.0, 0.0)).norm();
        let ok = semigroup < tol && factorization < FACTORIZATION_TOLERANCE;
        let pass = out.check(ok, || {
            format!("tau = {tau}: semigroup {semigroup:e} (tol {tol:e}), factorization {factorization:e}")
        });
        out.table.push(vec![
            tau.into(),
            k.re.into(),
            k.im.into(),
            so4.re.into(),
            so4.im.into(),
            factorization.into(),
            semigroup.into(),
            su2_tail_bound(tau, ell_max).into(),
            deviation.into(),
            pass.into(),
        ]);
    }
    out
}
