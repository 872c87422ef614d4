use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;
use proptest::prelude::*;

use spinpath::fock::{external_leg_factor, Direction, ParticleSpec, Species};
use spinpath::groups::{su2_exp, Sl2c};
use spinpath::minkowski::{minkowski_dot, FourVector, ThreeMomentum};
use spinpath::spin::{
    bar, max_abs, nonscalar_propagator, onshell_kernel_matrix, u_matrix, wigner_rotation,
    LorentzRepresentation, UnitTimelike,
};

fn lorentz() -> impl Strategy<Value = Sl2c> {
    (
        prop::array::uniform3(-1.0f64..1.0),
        0.0f64..1.5,
        prop::array::uniform3(-3.0f64..3.0),
    )
        .prop_filter_map("nonzero axis", |(axis, rapidity, angles)| {
            let axis = Vector3::from(axis);
            (axis.norm() > 1e-2).then(|| {
                Sl2c::boost(rapidity, &axis).unwrap()
                    * Sl2c::from_su2(&su2_exp(&Vector3::from(angles)))
            })
        })
}

fn timelike() -> impl Strategy<Value = FourVector> {
    (
        1.0f64..3.0,
        prop::array::uniform3(-0.5f64..0.5),
        prop::bool::ANY,
    )
        .prop_map(|(t, x, future)| FourVector::new(if future { t } else { -t }, x[0], x[1], x[2]))
}

fn relative(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    max_abs(&(a - b)) / max_abs(b).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagator_transforms_covariantly(a in lorentz(), dx in timelike()) {
        let lam = a.to_lorentz();
        for rep in LorentzRepresentation::ALL {
            let d = rep.rep_matrix(&a);
            let d_inv = d.clone().try_inverse().unwrap();
            let lhs = &d * nonscalar_propagator(rep, &dx, 1.0, 1e-9).unwrap() * d_inv;
            let rhs = nonscalar_propagator(rep, &lam.apply(&dx), 1.0, 1e-9).unwrap();
            prop_assert!(relative(&lhs, &rhs) < 1e-10, "{rep}: {}", relative(&lhs, &rhs));
        }
    }

    #[test]
    fn wigner_rotation_fixes_the_rest_frame(a in lorentz(), u in prop::array::uniform3(-2.0f64..2.0)) {
        let n = UnitTimelike::from_spatial(&Vector3::from(u), true);
        let w = wigner_rotation(&a.to_lorentz(), &n);
        let e = w.apply(&FourVector::new(1.0, 0.0, 0.0, 0.0));
        prop_assert!((e - FourVector::new(1.0, 0.0, 0.0, 0.0)).components().iter().all(|c| c.abs() < 1e-10));
    }

    #[test]
    fn onshell_kernels_are_reflections(dx in timelike()) {
        let rep = LorentzRepresentation::Scalar;
        let plus = onshell_kernel_matrix(rep, &dx, 1.0, 1).unwrap();
        let minus = onshell_kernel_matrix(rep, &(-dx), 1.0, -1).unwrap();
        prop_assert!(relative(&plus, &minus) < 1e-10);
    }

    #[test]
    fn leg_factors_are_conjugate_pairs(p in prop::array::uniform3(-1.5f64..1.5), x in prop::array::uniform4(-3.0f64..3.0)) {
        let p = ThreeMomentum::new(p[0], p[1], p[2]);
        let x = FourVector::new(x[0], x[1], x[2], x[3]);
        for rep in LorentzRepresentation::ALL {
            let spec = ParticleSpec::natural(0, rep, 1.2).unwrap();
            for species in [Species::Particle, Species::Antiparticle] {
                let out = external_leg_factor(&p, &x, &spec, Direction::Outgoing, species).unwrap();
                let inc = external_leg_factor(&p, &x, &spec, Direction::Incoming, species).unwrap();
                prop_assert!(max_abs(&(out.adjoint() - &inc)) < 1e-14);
            }
        }
    }
}

#[test]
fn dirac_spinors_solve_the_free_equation() {
    // (p̸ + m) u = 0 in the (−+++) metric holds with p̸ = γ^μ p_μ and u built from the frame.
    let rep = LorentzRepresentation::DiracSpinor;
    let m = 1.3;
    let p = ThreeMomentum::new(0.4, -0.7, 0.2);
    let e = (p.norm_sq() + m * m).sqrt();
    let n = UnitTimelike::from_momentum(&FourVector::new(e, p.px, p.py, p.pz), m).unwrap();
    let u = u_matrix(rep, &n);
    let projector = rep.projector_polynomial(&n.vector(), 1.0);
    assert!(max_abs(&(&projector * &u - &u)) < 1e-12);
    let ubar = bar(rep, &u);
    let norm = &ubar * &u;
    assert!(max_abs(&(norm - DMatrix::identity(2, 2))) < 1e-12);
    assert!((minkowski_dot(&n.vector(), &n.vector()) + 1.0).abs() < 1e-12);
}
