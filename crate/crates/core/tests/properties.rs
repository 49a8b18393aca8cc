use std::f64::consts::PI;

use dkp_s3::angular::{sigma_apply, wigner_d};
use dkp_s3::dkp_algebra::{parity_matrix, Vector10};
use dkp_s3::hypergeom::Profile;
use dkp_s3::modes::{build_mode, spectrum, ModeKind, ModeSpec};
use dkp_s3::oracles::fd_ricci_rotation;
use dkp_s3::radial::residual_second_order;
use dkp_s3::Complex64;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = ModeKind> {
    prop_oneof![Just(ModeKind::Magnetic), Just(ModeKind::Electric)]
}

fn interior() -> impl Strategy<Value = f64> {
    0.05..(PI - 0.05)
}

fn complex10() -> impl Strategy<Value = Vector10> {
    prop::array::uniform10((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex64::new(a, b)))
}

proptest! {
    #[test]
    fn spectrum_is_integer_times_scale(j in 1u32..=10, n in 0u32..=10, e1 in -20i32..20, e2 in -20i32..20) {
        // power-of-two units keep the scale exact
        let rho = 2f64.powi(e1);
        let c = 2f64.powi(e2);
        let w = spectrum(j, n, rho, c).unwrap();
        prop_assert_eq!(w * rho / c, f64::from(n + 1 + j));
        prop_assert_eq!(spectrum(j, n, 1.0, 1.0).unwrap(), f64::from(n + 1 + j));
    }

    #[test]
    fn spectrum_scales_linearly(j in 1u32..=10, n in 0u32..=10, rho in 1e-3..1e9f64, c in 1e-3..1e9f64) {
        let w = spectrum(j, n, rho, c).unwrap();
        let k = f64::from(n + 1 + j);
        prop_assert!((w * rho / c - k).abs() <= 4.0 * f64::EPSILON * k);
    }

    #[test]
    fn radial_amplitudes_ignore_m(kind in kind(), j in 1u32..=4, n in 0u32..=4, m1 in -4i32..=4, m2 in -4i32..=4, chi in interior()) {
        prop_assume!(m1.unsigned_abs() <= j && m2.unsigned_abs() <= j);
        let a = build_mode(&ModeSpec::new(kind, j, n, m1).unwrap()).unwrap();
        let b = build_mode(&ModeSpec::new(kind, j, n, m2).unwrap()).unwrap();
        prop_assert_eq!(a.eval(chi).unwrap(), b.eval(chi).unwrap());
    }

    #[test]
    fn parity_constraints_hold_exactly(kind in kind(), j in 1u32..=5, n in 0u32..=5, chi in interior()) {
        let st = build_mode(&ModeSpec::new(kind, j, n, 0).unwrap()).unwrap().eval(chi).unwrap();
        match kind {
            ModeKind::Magnetic => prop_assert_eq!(st.magnetic_parity_violation(), 0.0),
            ModeKind::Electric => {
                prop_assert_eq!(st.electric_parity_violation(), 0.0);
                prop_assert_eq!(st.f[0], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn profile_solves_second_order_equation(j in 1u32..=6, n in 0u32..=6, chi in interior()) {
        let p = Profile::new(j, n).unwrap();
        let f = p.value(chi);
        let r = residual_second_order(f, p.second_derivative(chi), p.omega(), j, chi).unwrap();
        let scale = f.norm().max(p.second_derivative(chi).norm()).max(1.0);
        prop_assert!(r.norm() <= 1e-9 * scale);
    }

    #[test]
    fn wigner_rows_are_unit_vectors(j in 0u32..=8, m in -8i32..=8, theta in 0.0..PI) {
        prop_assume!(m.unsigned_abs() <= j);
        let ji = j as i32;
        let norm: f64 = (-ji..=ji).map(|s| wigner_d(j, m, s, theta).powi(2)).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wigner_transpose_symmetry(j in 0u32..=8, m in -8i32..=8, s in -8i32..=8, theta in 0.0..PI) {
        prop_assume!(m.unsigned_abs() <= j && s.unsigned_abs() <= j);
        let sign = if (m - s).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        prop_assert!((wigner_d(j, m, s, theta) - sign * wigner_d(j, s, m, theta)).abs() < 1e-12);
    }

    #[test]
    fn sigma_closed_form_is_linear(f in complex10(), g in complex10(), a in -2.0..2.0f64, j in 1u32..=4, theta in interior()) {
        let mix: Vector10 = std::array::from_fn(|k| f[k] * a + g[k]);
        let lhs = sigma_apply(&mix, j, 0, theta).unwrap();
        let sf = sigma_apply(&f, j, 0, theta).unwrap();
        let sg = sigma_apply(&g, j, 0, theta).unwrap();
        for k in 0..10 {
            prop_assert!((lhs[k] - (sf[k] * a + sg[k])).norm() < 1e-12);
        }
    }

    #[test]
    fn parity_is_an_involution(v in complex10()) {
        let p = parity_matrix();
        prop_assert_eq!(p.apply(&p.apply(&v)), v);
    }

    #[test]
    fn fd_rotation_coefficients_are_antisymmetric(chi in interior(), theta in interior()) {
        prop_assert!(fd_ricci_rotation(chi, theta).unwrap().antisymmetry_residual() <= 1e-8);
    }
}
