use mdtk::bounds::{bound_check, ExtremalClass, Tier};
use mdtk::catalog::{builtin_catalog, sweep};
use mdtk::construct::{
    deligne_product, double_abelian, fibonacci, fsexp_vec_g_omega, ising, pointed, CocycleSpec,
    MetricGroup,
};
use mdtk::galois::conjugate_category;

fn cyclic(n: u64) -> mdtk::ModularDatum {
    pointed(&MetricGroup::cyclic_standard(n, 1).unwrap())
}

#[test]
fn odd_cyclic_forms_are_extremal() {
    for n in [3, 5, 7, 9, 25, 27] {
        let v = bound_check(&cyclic(n)).unwrap();
        assert_eq!((v.fsexp, v.ndim), (n, n));
        assert_eq!(v.tier, Some(Tier::Ndim));
        assert_eq!(v.extremal_class, Some(ExtremalClass::PointedCyclic));
    }
}

#[test]
fn two_power_cyclic_forms_respect_four_ndim() {
    for n in [2, 4, 8, 16, 32] {
        for j in [1, 3, 5, 7] {
            let Ok(mg) = MetricGroup::cyclic_standard(n, j) else {
                continue;
            };
            let v = bound_check(&pointed(&mg)).unwrap();
            assert!(v.bound_holds, "C{n}, j = {j}: {v}");
            assert!(v.fsexp <= 4 * v.ndim);
        }
    }
}

#[test]
fn cyclic_groups_with_generator_cocycle() {
    for n in 2..=16 {
        assert_eq!(
            fsexp_vec_g_omega(&CocycleSpec::cyclic_generator(n)).unwrap(),
            n * n
        );
        assert_eq!(fsexp_vec_g_omega(&CocycleSpec::trivial(&[n])).unwrap(), n);
    }
}

#[test]
fn doubles_are_pointed_and_not_extremal() {
    let md = double_abelian(&[2, 2]).unwrap();
    assert!(md.verify().all_passed());
    assert_eq!(md.verlinde_fusion().unwrap().invertibles().len(), 16);
    let v = bound_check(&md).unwrap();
    assert_eq!((v.fsexp, v.ndim, v.extremal), (2, 16, false));
}

#[test]
fn product_takes_lcm_fsexp_and_norm_of_product_dim() {
    let a = ising(1, 1).unwrap();
    let b = fibonacci(1).unwrap();
    let p = deligne_product(&a, &b);
    assert_eq!(p.fs_exponent(), 80);
    // N(4·dim Fib) = 4²·5 over the quadratic field
    assert_eq!(p.ndim().unwrap(), 80);
    let v = bound_check(&p).unwrap();
    assert_eq!(v.prime, None);
    assert!(v.bound_holds);
}

#[test]
fn conjugation_keeps_fsexp() {
    let md = ising(3, -1).unwrap();
    for k in [5, 7, 11, 13, 17, 19, 23, 25] {
        let c = conjugate_category(&md, k).unwrap();
        assert_eq!(c.fs_exponent(), 16);
        assert!(c.verify().all_passed());
    }
}

#[test]
fn small_sweep_finds_no_bound_violation() {
    let cat: Vec<_> = builtin_catalog()
        .into_iter()
        .filter(|e| {
            e.name.starts_with("fibonacci") || e.name == "ising-j1-p" || e.name == "pointed-c5"
        })
        .collect();
    let s = sweep(&cat);
    assert_eq!(s.entries.len(), 6);
    assert_eq!(s.bound_violations, 0);
    // fibonacci pairs, pointed-c5 with itself and with each fibonacci, ising with itself
    assert_eq!(s.products.len(), 10 + 1 + 4 + 1);
    assert!(s.table().contains("fibonacci-j3"));
}
