//! Small hand-checked instances across the public API.

use nullcone::isotropic::{
    dim_flag2, dim_grassmannian, dim_isotropic_grassmannian, max_isotropic_dim, tangent_dim_isotropic_at,
    IsotropicSubspace,
};
use nullcone::nullcone::{eval_phi, eval_q, tangent_dim_at, GlSetting, NullPoint, OrthSympSetting, Setting};
use nullcone::resolutions::{
    dim_resolution_total, in_orbit_closure_gl, in_orbit_closure_os, mu, orbit_unique_preimage, quotient_ba,
    quotient_r, unique_preimage, OrbitPoint, ResolutionPoint, Variant,
};
use nullcone::{Error, ExactMatrix, FormKind, FormedSpace, Subspace};

fn ints(rows: &[&[(i64, i64)]]) -> ExactMatrix {
    ExactMatrix::from_gaussian_ints(rows)
}

fn os(kind: FormKind, n: usize, m: usize) -> OrthSympSetting {
    OrthSympSetting::standard(kind, n, m).unwrap()
}

fn e2() -> Subspace {
    Subspace::column_space(&ints(&[&[(0, 0)], &[(1, 0)]]))
}

#[test]
fn dimension_values() {
    assert_eq!(max_isotropic_dim(&FormedSpace::standard(FormKind::Symmetric, 5).unwrap()), 2);
    assert_eq!(max_isotropic_dim(&FormedSpace::standard(FormKind::Symplectic, 4).unwrap()), 2);
    assert_eq!(dim_isotropic_grassmannian(4, 2, FormKind::Symmetric).unwrap(), 1);
    assert_eq!(dim_isotropic_grassmannian(2, 1, FormKind::Symplectic).unwrap(), 1);
    assert_eq!(dim_isotropic_grassmannian(6, 3, FormKind::Symmetric).unwrap(), 3);
    assert_eq!(dim_grassmannian(1, 2).unwrap(), 1);
    assert_eq!(dim_flag2(1, 1, 2).unwrap(), 1);
    assert_eq!(dim_flag2(2, 1, 4).unwrap(), 5);
}

#[test]
fn isotropic_tangent_oracle_on_coordinate_examples() {
    let symp2 = FormedSpace::standard(FormKind::Symplectic, 2).unwrap();
    let line = Subspace::column_space(&ints(&[&[(1, 0)], &[(0, 0)]]));
    assert_eq!(tangent_dim_isotropic_at(&IsotropicSubspace::new(symp2, line).unwrap()).unwrap(), 1);
    let sym4 = FormedSpace::standard(FormKind::Symmetric, 4).unwrap();
    let plane = Subspace::column_space(&ints(&[&[(1, 0), (0, 0)], &[(0, 1), (0, 0)], &[(0, 0), (1, 0)], &[(0, 0), (0, 1)]]));
    assert_eq!(tangent_dim_isotropic_at(&IsotropicSubspace::new(sym4, plane).unwrap()).unwrap(), 1);
}

#[test]
fn null_cone_tangent_examples() {
    let s = os(FormKind::Symmetric, 4, 1);
    let t = ints(&[&[(1, 0)], &[(0, 1)], &[(0, 0)], &[(0, 0)]]);
    assert!(eval_q(&s, &t).unwrap().is_zero());
    assert_eq!(tangent_dim_at(&Setting::Os(s), &NullPoint::Os { t }).unwrap(), 3);

    let gl = GlSetting::new(2, 1, 1).unwrap();
    let (a, b) = (ints(&[&[(1, 0), (0, 0)]]), ints(&[&[(0, 0)], &[(1, 0)]]));
    assert!(eval_phi(&gl, &a, &b).unwrap().is_zero());
    assert_eq!(tangent_dim_at(&Setting::Gl(gl), &NullPoint::Gl { a, b }).unwrap(), 3);

    let zero = NullPoint::Os { t: ExactMatrix::zeros(2, 1) };
    assert_eq!(tangent_dim_at(&Setting::Os(os(FormKind::Symmetric, 2, 1)), &zero).unwrap(), 2);
}

#[test]
fn resolution_totals() {
    let total = |s: Setting, v| dim_resolution_total(v, &s).unwrap();
    assert_eq!(total(Setting::Os(os(FormKind::Symmetric, 4, 2)), Variant::Nc0), 5);
    assert_eq!(total(Setting::Os(os(FormKind::Symplectic, 2, 1)), Variant::Nc0), 2);
    assert_eq!(total(Setting::Gl(GlSetting::new(2, 1, 1).unwrap()), Variant::Nc), 3);
}

#[test]
fn forced_preimages() {
    let s = Setting::Os(os(FormKind::Symmetric, 2, 1));
    let t = ints(&[&[(1, 0)], &[(0, 1)]]);
    let pre = unique_preimage(Variant::Nc0, &s, &NullPoint::Os { t: t.clone() }).unwrap();
    assert_eq!(pre, ResolutionPoint::Nc0 { t: t.clone(), u: Subspace::column_space(&t) });
    assert_eq!(mu(&pre), NullPoint::Os { t });

    let gl = Setting::Gl(GlSetting::new(2, 1, 1).unwrap());
    let x = NullPoint::Gl { a: ints(&[&[(1, 0), (0, 0)]]), b: ints(&[&[(0, 0)], &[(1, 0)]]) };
    match unique_preimage(Variant::Nc, &gl, &x).unwrap() {
        ResolutionPoint::Nc { u1, u2, .. } => assert_eq!((u1, u2), (e2(), e2())),
        other => panic!("unexpected preimage {other:?}"),
    }
    // with n = s + m a rank-one A still pins U₁ = U₂ = ker A
    let b_zero = NullPoint::Gl { a: ints(&[&[(1, 0), (0, 0)]]), b: ExactMatrix::zeros(2, 1) };
    assert!(unique_preimage(Variant::Nc, &gl, &b_zero).is_ok());
    let zero = NullPoint::Gl { a: ExactMatrix::zeros(1, 2), b: ExactMatrix::zeros(2, 1) };
    assert!(matches!(unique_preimage(Variant::Nc, &gl, &zero), Err(Error::NotUnique(_))));
    let wider = Setting::Gl(GlSetting::new(3, 1, 1).unwrap());
    let b_zero = NullPoint::Gl { a: ints(&[&[(1, 0), (0, 0), (0, 0)]]), b: ExactMatrix::zeros(3, 1) };
    assert!(matches!(unique_preimage(Variant::Nc, &wider, &b_zero), Err(Error::NotUnique(_))));
}

#[test]
fn quotient_examples() {
    let s = os(FormKind::Symmetric, 4, 2);
    let w = FormedSpace::opposite_standard(FormKind::Symmetric, 2).unwrap();
    let t = ints(&[&[(1, 0), (0, 0)], &[(0, 1), (0, 0)], &[(0, 0), (1, 0)], &[(0, 0), (0, 1)]]);
    let g = quotient_r(&s, &t, &w).unwrap();
    assert!(g.transpose() == g.neg());
    assert_eq!(g.rank(), 2);
    assert!(g.matmul(&g).unwrap().is_zero());
    assert_eq!(Subspace::column_space(&g), Subspace::column_space(&t));
    assert!(in_orbit_closure_os(&g, 2, s.space()).unwrap());
    assert!(quotient_r(&s, &ExactMatrix::zeros(4, 2), &w).unwrap().is_zero());

    let gl = GlSetting::new(2, 1, 1).unwrap();
    let ba = quotient_ba(&gl, &ints(&[&[(1, 0), (0, 0)]]), &ints(&[&[(0, 0)], &[(1, 0)]])).unwrap();
    assert_eq!(ba, ints(&[&[(0, 0), (0, 0)], &[(1, 0), (0, 0)]]));
    let jordan3 = ints(&[&[(0, 0), (1, 0), (0, 0)], &[(0, 0), (0, 0), (1, 0)], &[(0, 0), (0, 0), (0, 0)]]);
    assert!(!in_orbit_closure_gl(&jordan3, 2).unwrap());
    assert!(in_orbit_closure_gl(&ExactMatrix::zeros(3, 3), 1).unwrap());
}

#[test]
fn forced_orbit_preimage() {
    let gl = Setting::Gl(GlSetting::new(2, 1, 1).unwrap());
    let g = ints(&[&[(0, 0), (0, 0)], &[(1, 0), (0, 0)]]);
    match orbit_unique_preimage(Variant::Nc, &gl, &g).unwrap() {
        OrbitPoint::P { u1, u2, .. } => assert_eq!((u1, u2), (e2(), e2())),
        other => panic!("unexpected orbit point {other:?}"),
    }
}
