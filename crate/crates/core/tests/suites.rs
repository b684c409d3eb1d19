use steiner_lab::json;
use steiner_lab::simplex::{c_delta_arc, c_of_map, MonotoneMap};
use steiner_lab::slice::sample_triangle;
use steiner_lab::sset::nerve;
use steiner_lab::theorem_a::{retract_suite, theta_check, verify_s_of_t, verify_suite};
use steiner_lab::AdcMorphism;

#[test]
fn suite_report_is_deterministic() {
    let a = serde_json::to_string(&verify_suite(2, 2)).unwrap();
    let b = serde_json::to_string(&verify_suite(2, 2)).unwrap();
    assert_eq!(a, b);
    let r = verify_suite(2, 2);
    assert!(r.passed());
    assert!(r.identities.iter().all(|i| i.checked > 0));
}

#[test]
fn retract_along_a_face() {
    let u = c_of_map(&MonotoneMap::new(1, 3, vec![1, 3]).unwrap());
    let r = retract_suite(&u, 1, 1, None).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
}

#[test]
fn theta_along_an_inclusion() {
    let u = c_of_map(&MonotoneMap::new(1, 2, vec![1, 2]).unwrap());
    let c = c_delta_arc(2).gen("(0)").unwrap();
    for n in 0..=2 {
        let r = theta_check(&u, &c, n, None).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.nerve_side > 0);
    }
}

#[test]
fn s_of_t_with_deeper_tables() {
    let tri = sample_triangle();
    let na = nerve(tri.u.source(), 4, None).unwrap();
    let nb = nerve(tri.w.source(), 4, None).unwrap();
    let r = verify_s_of_t(&tri, &na, &nb, &nb).unwrap();
    assert!(r.iter().all(|x| x.counterexample.is_none()), "{r:?}");
}

#[test]
fn tensor_json_round_trip() {
    let t = steiner_lab::gray::Tensor::new(c_delta_arc(1), c_delta_arc(2));
    let v = json::complex_to_value(&t.complex);
    let back = json::complex_from_value(&v).unwrap();
    assert_eq!(json::to_string(&json::complex_to_value(&back)), json::to_string(&v));
    let id = AdcMorphism::identity(t.complex.clone());
    let w = json::morphism_to_value(&id);
    assert_eq!(json::morphism_from_value(t.complex.clone(), t.complex.clone(), &w).unwrap(), id);
}
