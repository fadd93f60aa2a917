use omega_core::exact::rational::{frac, int};
use omega_core::exact::{Rational, UniPoly};
use omega_core::omega::{
    descendant_polynomial, descendant_polynomial_with, omega_psi_integral, Denominator, OmegaEngine, OmegaSpec,
    Strategy,
};

fn spec(r: u32, s: u32, a: &[i64]) -> OmegaSpec {
    OmegaSpec::new(r, s, a.to_vec()).unwrap()
}

fn poly(coeffs: &[(i64, i64)]) -> UniPoly {
    UniPoly::new(coeffs.iter().map(|&(p, q)| frac(p, q)).collect())
}

#[test]
fn three_points() {
    for (r, s, a) in [(1, 0, vec![0, 0, 0]), (5, 0, vec![1, 2, 2]), (4, 3, vec![1, 1, 1])] {
        let sp = spec(r, s, &a);
        assert_eq!(omega_psi_integral(&sp, &[0, 0, 0]).unwrap(), frac(1, r as i64));
        assert_eq!(descendant_polynomial(&sp, 0).unwrap().poly, UniPoly::constant(frac(1, r as i64)));
    }
}

#[test]
fn four_points_r2() {
    let sp = spec(2, 2, &[1, 1, 1, 1]);
    assert_eq!(omega_psi_integral(&sp, &[1, 0, 0, 0]).unwrap(), frac(1, 2));
    assert_eq!(omega_psi_integral(&sp, &[0, 0, 0, 0]).unwrap(), frac(-1, 4));
    assert_eq!(descendant_polynomial(&sp, 0).unwrap().poly, poly(&[(-1, 4), (1, 4)]));
}

#[test]
fn section_four_one() {
    let sp = spec(2, 0, &[1, 1, 1, 1, 1, 1]).with_xscale(int(2));
    let p = descendant_polynomial(&sp, 0).unwrap();
    assert_eq!(p.denominator, Denominator::Plain);
    assert_eq!(p.poly, poly(&[(0, 1), (3, 2), (-2, 1), (1, 2)]));
}

#[test]
fn section_four_two() {
    let sp = spec(13, 0, &[4, 4, 3, 6, 2, 7]);
    let p = descendant_polynomial(&sp, 0).unwrap().poly;
    let expect = UniPoly::from_roots(&[int(0), int(0), int(9)]).scale(&frac(1, 13i64.pow(4)));
    assert_eq!(p, expect);
}

#[test]
fn strategies_agree() {
    let cases = [
        spec(2, 0, &[1, 1, 1, 1, 2]).with_xscale(frac(-3, 2)),
        spec(3, 1, &[1, 2, 0, 2, 1]),
        spec(5, 0, &[4, 1, 2, 9, -1]),
        spec(3, 0, &[2, 1, 2, 2, 1, 1]),
        spec(4, 2, &[5, 3, 0, 1, 1, 2]),
    ];
    for sp in cases {
        let n = sp.n();
        let f = OmegaEngine::new(sp.clone()).unwrap();
        let t = OmegaEngine::new(sp.clone()).unwrap().strategy(Strategy::TreeSum);
        let g = OmegaEngine::new(sp.clone()).unwrap().strategy(Strategy::Graded);
        let mut psi = vec![0u32; n];
        for k in 0..=(n - 3) as u32 {
            psi[0] = k;
            psi[n - 1] = if k < (n - 3) as u32 { 1 } else { 0 };
            let a = f.integral(&psi).unwrap();
            assert_eq!(a, t.integral(&psi).unwrap(), "{sp} {psi:?}");
            assert_eq!(a, g.integral(&psi).unwrap(), "{sp} {psi:?}");
        }
    }
}

#[test]
fn plain_and_rscaled_differ_by_rescaling() {
    let sp = spec(3, 0, &[1, 2, 2, 1, 1, 2]);
    let e = OmegaEngine::new(sp).unwrap();
    let a = descendant_polynomial_with(&e, 2, Denominator::RScaled).unwrap().poly;
    let b = descendant_polynomial_with(&e, 2, Denominator::Plain).unwrap().poly;
    assert_eq!(a, b.rescale_variable(&frac(1, 3)));
    let _: Rational = a.coeff(0);
}

#[test]
fn geometric_insertions_agree_across_strategies() {
    let sp = spec(2, 0, &[1, 1, 2, 0, 2]);
    let c = [frac(1, 2), frac(3, 2), int(0), int(1), frac(-1, 3)];
    let f = OmegaEngine::new(sp.clone()).unwrap().geometric_integral(&c).unwrap();
    let t = OmegaEngine::new(sp.clone()).unwrap().strategy(Strategy::TreeSum).geometric_integral(&c).unwrap();
    let g = OmegaEngine::new(sp.clone()).unwrap().strategy(Strategy::Graded).geometric_integral(&c).unwrap();
    assert_eq!(f, t);
    assert_eq!(f, g);
}

#[test]
fn rejects_constraint_violations() {
    for (r, a) in [(13u32, vec![4i64, 1, 2, 9, 2, 7]), (3, vec![1, 2, 2, 2, 2, 2])] {
        let err = OmegaSpec::new(r, 0, a).unwrap_err();
        assert!(err.to_string().contains("class undefined for these parameters"), "{err}");
    }
}
