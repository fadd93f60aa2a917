use omega_core::closed_forms::*;
use omega_core::exact::rational::int;
use omega_core::exact::UniPoly;
use omega_core::omega::OmegaSpec;
use omega_core::tr::RelationInput;

#[test]
fn afandi_families_match_engine() {
    for g in 1..=2 {
        for a_extra in 0..=1 {
            let rep = verify(&VerifyKind::Afandi { g, a_extra }).unwrap();
            assert!(rep.matches, "{}: {} vs {}", rep.case, rep.computed, rep.predicted);
        }
        let rep = verify(&VerifyKind::NonWeierstrass { g, a_extra: 0 }).unwrap();
        assert!(rep.matches, "{}: {} vs {}", rep.case, rep.computed, rep.predicted);
    }
}

#[test]
fn genus_three_weierstrass() {
    let rep = verify(&VerifyKind::Afandi { g: 3, a_extra: 0 }).unwrap();
    assert!(rep.matches, "{} vs {}", rep.computed, rep.predicted);
}

#[test]
fn higher_r_golden() {
    let rep = verify(&VerifyKind::HigherR { r: 13, mu_bar: 4, b: vec![4, 3, 6, 2, 7] }).unwrap();
    assert!(rep.matches);
    assert_eq!(rep.computed_roots.unwrap(), vec![(int(0), 2), (int(9), 1)]);
}

#[test]
fn higher_r_past_boundedness() {
    let rep = verify(&VerifyKind::HigherR { r: 13, mu_bar: 4, b: vec![4, 3, 6, 1, 8] }).unwrap();
    assert!(!rep.matches);
    assert!(rep.case.contains("outside hypotheses"));
    let roots = rep.computed_roots.unwrap();
    assert!(roots.iter().any(|(x, _)| *x == int(8)), "{roots:?}");
    assert!(!rep.residual.is_zero());
}

#[test]
fn relation_string_shift_and_vanishing() {
    let rep = verify(&VerifyKind::TrVanishing(RelationInput::new(3, vec![2], vec![2, 2, 2, 2]).unwrap())).unwrap();
    assert!(rep.matches);
    let spec = OmegaSpec::new(3, 1, vec![1, 2, 0, 2]).unwrap();
    assert!(verify(&VerifyKind::String { spec: spec.clone(), point: 0 }).unwrap().matches);
    assert!(verify(&VerifyKind::Shift { spec: spec.clone(), index: 1, point: 0 }).unwrap().matches);
    let spec = OmegaSpec::new(3, 0, vec![2, 1, 1, 2]).unwrap();
    let rep = verify(&VerifyKind::Jkv { spec, point: 0 }).unwrap();
    assert!(rep.matches, "{}", rep.computed);
}

#[test]
fn vanishing_root_of_higher_r_formula() {
    // ⟨b⟩ = 0 cancels the x^{-1}
    let p = higher_r_formula(5, &[2, 3]);
    assert_eq!(p, UniPoly::new(vec![omega_core::exact::rational::frac(1, 5)]));
    let p = higher_r_formula(5, &[1, 4, 1, 4]);
    assert_eq!(p, UniPoly::from_roots(&[int(0), int(5)]).scale(&omega_core::exact::rational::frac(1, 125)));
    let rep = verify(&VerifyKind::HigherR { r: 5, mu_bar: 0, b: vec![2, 3] }).unwrap();
    assert!(rep.matches, "{}", rep.computed);
}
