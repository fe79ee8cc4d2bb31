use super::*;
use crate::construct::{
    deligne_product, fibonacci, ising, pointed, so5_level9, trivial, MetricGroup,
};
use crate::cyclo::rat;

fn sqrt5() -> Cyc {
    Cyc::from_terms(
        5,
        [
            (1, rat(1, 1)),
            (2, rat(-1, 1)),
            (3, rat(-1, 1)),
            (4, rat(1, 1)),
        ],
    )
}

#[test]
fn ising_invariants() {
    for j in [1, 3, 5, 7, 9, 11, 13, 15] {
        for eps in [1, -1] {
            let md = ising(j, eps).unwrap();
            let rep = md.verify();
            assert!(rep.all_passed(), "ising({j},{eps}):\n{rep}");
            assert_eq!(md.fs_exponent(), 16);
            assert_eq!(*md.global_dim(), Cyc::from_int(4));
            assert_eq!(md.ndim().unwrap(), 4);
            // τ₁⁺ = 2εζ and ξ = ζ²
            let zeta = Cyc::root_of_unity(16, j);
            let tau = md.gauss_sum(1, GaussSign::Plus);
            assert_eq!(tau, zeta.scale(&rat(2 * eps, 1)));
            assert_eq!(md.anomaly().unwrap(), RootOfUnity::new(16, 2 * j));
            let (_, n_t) = md.normalized_t_order().unwrap();
            assert!(n_t % 16 == 0 && 192 % n_t == 0);
        }
    }
}

#[test]
fn ising_fusion_rules() {
    let ft = ising(1, 1).unwrap().verlinde_fusion().unwrap();
    assert_eq!(
        (ft.get(2, 2, 0), ft.get(2, 2, 1), ft.get(2, 2, 2)),
        (1, 1, 0)
    );
    assert_eq!((ft.get(1, 1, 0), ft.get(1, 2, 2)), (1, 1));
    assert_eq!(ft.invertibles(), vec![0, 1]);
}

#[test]
fn fibonacci_invariants() {
    let golden_plus = (Cyc::one() + sqrt5()).scale(&rat(1, 2));
    let golden_minus = (Cyc::one() - sqrt5()).scale(&rat(1, 2));
    let mut pseudo = 0;
    for j in 1..5 {
        let md = fibonacci(j).unwrap();
        assert!(md.verify().all_passed());
        assert_eq!(md.fs_exponent(), 5);
        assert_eq!(md.ndim().unwrap(), 5);
        let d = &md.dims()[1];
        assert!(*d == golden_plus || *d == golden_minus);
        let ft = md.verlinde_fusion().unwrap();
        assert_eq!((ft.get(1, 1, 0), ft.get(1, 1, 1)), (1, 1));
        let fp = md.fpdim_pseudounitary().unwrap();
        assert_eq!(fp.pseudounitary, *d == golden_plus);
        pseudo += fp.pseudounitary as usize;
        let (_, n_t) = md.normalized_t_order().unwrap();
        assert!(n_t % 5 == 0 && 60 % n_t == 0);
    }
    assert_eq!(pseudo, 2);
}

#[test]
fn so5_invariants() {
    for j in [1, 2, 4, 5, 7, 8] {
        let md = so5_level9(j).unwrap();
        let rep = md.verify();
        assert!(rep.all_passed(), "so5({j}):\n{rep}");
        assert_eq!(*md.global_dim(), Cyc::from_int(9));
        assert_eq!(md.ndim().unwrap(), 9);
        assert_eq!(md.fs_exponent(), 9);
        let fp = md.fpdim_pseudounitary().unwrap();
        assert!(!fp.pseudounitary);
        assert!((fp.global - 9.0).abs() > 1e-6);
    }
}

#[test]
fn pointed_c5() {
    let md = pointed(&MetricGroup::cyclic_standard(5, 1).unwrap());
    assert!(md.verify().all_passed());
    assert_eq!((md.fs_exponent(), md.ndim().unwrap()), (5, 5));
    assert_eq!(md.verlinde_fusion().unwrap().invertibles().len(), 5);
    assert_eq!(md.symmetric_center(), vec![0]);
}

#[test]
fn degenerate_form_fails_verify() {
    // q(g) = ζ₃^{3g²} = 1 on C₃ is degenerate
    let md = pointed(&MetricGroup::cyclic_standard(3, 3).unwrap());
    assert!(!md.verify().all_passed());
}

#[test]
fn perturbed_s_fails_unitarity() {
    let md = ising(1, 1).unwrap();
    let mut s = md.s().to_vec();
    s[1][1] = Cyc::from_int(-1);
    let bad = ModularDatum::new(md.labels().to_vec(), s, md.t().to_vec()).unwrap();
    let rep = bad.verify();
    let check = rep.get("S conj(S) = dim(C) I").unwrap();
    assert!(!check.passed && check.witness.is_some());
}

#[test]
fn centralizer_and_trivial() {
    let md = ising(1, 1).unwrap();
    assert!((0..3).all(|y| md.centralizes(0, y)));
    assert!(!md.centralizes(1, 2));
    let triv = trivial();
    assert!(triv.verify().all_passed());
    assert_eq!(triv.normalized_t_order().unwrap(), (RootOfUnity::ONE, 1));
    assert_eq!(triv.anomaly().unwrap(), RootOfUnity::ONE);
}

#[test]
fn anomaly_is_multiplicative() {
    let a = ising(3, -1).unwrap();
    let b = fibonacci(2).unwrap();
    let p = deligne_product(&a, &b);
    assert_eq!(
        p.anomaly().unwrap(),
        a.anomaly().unwrap().mul(&b.anomaly().unwrap())
    );
    let ft = p.verlinde_fusion().unwrap();
    let delta = p.label_index("delta⊠1").unwrap();
    assert_eq!(ft.subcategory_generated(&[delta]), vec![0, delta]);
}

#[test]
fn structural_validation() {
    let md = ising(1, 1).unwrap();
    let mut s = md.s().to_vec();
    s[0][0] = Cyc::from_int(2);
    let err = ModularDatum::new(md.labels().to_vec(), s, md.t().to_vec()).unwrap_err();
    assert!(err.to_string().contains("unit normalization"));
    let mut s = md.s().to_vec();
    s[0][1] = Cyc::from_int(3);
    assert!(ModularDatum::new(md.labels().to_vec(), s, md.t().to_vec()).is_err());
    let mut s = md.s().to_vec();
    s[2][2] = Cyc::root_of_unity(7, 1);
    assert!(ModularDatum::new(md.labels().to_vec(), s, md.t().to_vec()).is_err());
}
