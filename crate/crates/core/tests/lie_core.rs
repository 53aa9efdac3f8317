use nalgebra::DVector;
use orbivol::lie::{BasisKind, CartanPart};
use orbivol::{build_basis, rng, Error, GroundField, LieAlgebraModel};
use proptest::prelude::*;

#[test]
fn dimensions_for_all_fields() {
    for n in 1..=8 {
        for field in GroundField::ALL {
            let m = build_basis(field, n).unwrap();
            let want = match field {
                GroundField::Quaternion => 2 * n * n + 5 * n + 3,
                GroundField::Complex => n * n + 2 * n,
                GroundField::Real => n * (n + 1) / 2,
            };
            assert_eq!(m.dim(), want, "{field:?} n={n}");
            let p = m.indices_of(CartanPart::P).len();
            assert_eq!(p, n * field.imaginary_units().len() + n);
        }
    }
}

#[test]
fn quaternionic_block_counts() {
    let m = build_basis(GroundField::Quaternion, 2).unwrap();
    let count = |f: fn(&BasisKind) -> bool| m.basis().iter().filter(|e| f(&e.kind)).count();
    assert_eq!(count(|k| matches!(k, BasisKind::Alpha { .. } | BasisKind::ImBeta { .. })), 4);
    assert_eq!(count(|k| matches!(k, BasisKind::ImDiag { .. })), 9);
    assert_eq!(count(|k| matches!(k, BasisKind::BetaP { .. } | BasisKind::ImAlphaP { .. })), 8);
}

#[test]
fn rank_zero_rejected() {
    assert!(matches!(build_basis(GroundField::Quaternion, 0), Err(Error::Domain(_))));
}

#[test]
fn noncompact_pair_brackets_to_alpha() {
    let m = build_basis(GroundField::Quaternion, 3).unwrap();
    let b1 = m.index_of(BasisKind::BetaP { j: 1 }).unwrap();
    let b2 = m.index_of(BasisKind::BetaP { j: 2 }).unwrap();
    let a12 = m.index_of(BasisKind::Alpha { j: 1, k: 2 }).unwrap();
    assert_eq!(m.structure().get(b1, b2), &[(a12, 1.0)]);
    assert!(m.structure().get(b1, b1).is_empty());
}

#[test]
fn imaginary_diagonal_coefficient() {
    let m = build_basis(GroundField::Quaternion, 1).unwrap();
    let i = m.index_of(BasisKind::ImDiag { t: 1, i: 1 }).unwrap();
    let j = m.index_of(BasisKind::ImDiag { t: 2, i: 1 }).unwrap();
    let k = m.index_of(BasisKind::ImDiag { t: 3, i: 1 }).unwrap();
    let terms = m.structure().get(i, j);
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].0, k);
    assert!((terms[0].1 - 2.0 * 2f64.sqrt()).abs() < 1e-14);
}

#[test]
fn grading_and_jacobi_for_every_field() {
    for field in GroundField::ALL {
        for n in 1..=3 {
            let m = build_basis(field, n).unwrap();
            assert!(m.verify_cartan_relations(), "{field:?} {n}");
            assert!(m.structure().is_antisymmetric());
            assert!(m.jacobi_defect() <= 1e-9);
        }
    }
    assert!(build_basis(GroundField::Real, 4).unwrap().verify_cartan_relations());
}

#[test]
fn ad_matrix_checks_length() {
    let m = build_basis(GroundField::Complex, 2).unwrap();
    assert!(matches!(m.ad_matrix(&DVector::zeros(3)), Err(Error::Dimension { .. })));
    assert_eq!(m.ad_matrix(&DVector::zeros(m.dim())).unwrap().amax(), 0.0);
}

fn model_strategy() -> impl Strategy<Value = LieAlgebraModel> {
    (0usize..3, 1usize..=3).prop_map(|(f, n)| build_basis(GroundField::ALL[f], n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ad_matrix_matches_matrix_commutator(m in model_strategy(), seed in any::<u64>()) {
        let mut r = rng::stream(seed, 0);
        let x = rng::gaussian_vector(&mut r, m.dim());
        let y = rng::gaussian_vector(&mut r, m.dim());
        let via_ad = m.ad_matrix(&x).unwrap() * &y;
        let bracket = orbivol::mat_bracket(&m.assemble(&x).unwrap(), &m.assemble(&y).unwrap()).unwrap();
        let (oracle, residual) = m.expand(&bracket).unwrap();
        prop_assert!(residual <= 1e-10);
        prop_assert!((via_ad - oracle).amax() <= 1e-10);
    }

    #[test]
    fn ad_is_linear(m in model_strategy(), seed in any::<u64>(), s in -3.0f64..3.0) {
        let mut r = rng::stream(seed, 1);
        let x = rng::gaussian_vector(&mut r, m.dim());
        let y = rng::gaussian_vector(&mut r, m.dim());
        let lhs = m.ad_matrix(&(&x * s + &y)).unwrap();
        let rhs = m.ad_matrix(&x).unwrap() * s + m.ad_matrix(&y).unwrap();
        prop_assert!((lhs - rhs).amax() <= 1e-12);
    }
}
