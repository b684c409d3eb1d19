use std::sync::Arc;

use proptest::prelude::*;

use steiner_lab::cell::{compose, map_cell, validate_cell};
use steiner_lab::complex::{is_loopfree, is_unitary, pos_neg_decompose, strong_loopfree_order, validate_complex, Complex};
use steiner_lab::gray::{pushout_complex, tensor_morphism, Tensor};
use steiner_lab::nu::enumerate_cells;
use steiner_lab::simplex::{c_delta_arc, c_of_map, simplex, MonotoneMap};
use steiner_lab::sset::nerve;
use steiner_lab::theorem_a::{f_n_endo, f_phi_map, Wedge};
use steiner_lab::{AdcMorphism, Chain};

fn monotone(src: usize, dst: usize) -> impl Strategy<Value = MonotoneMap> {
    prop::collection::vec(0..=dst, src + 1).prop_map(move |mut v| {
        v.sort();
        MonotoneMap::new(src, dst, v).unwrap()
    })
}

fn chain(degree: usize, rank: usize) -> impl Strategy<Value = Chain> {
    prop::collection::vec(-3i64..=3, rank).prop_map(move |c| Chain::from_terms(degree, c.into_iter().enumerate()))
}

/// A downward-closed family of faces of Δⁿ, given as a complex.
fn face_complex(n: usize, keep: &[bool]) -> Option<Complex> {
    let d = simplex(n);
    let mut basis: Vec<Vec<String>> = Vec::new();
    let mut chosen: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut k = 0;
    for p in 0..=n {
        let mut level = Vec::new();
        for t in d.tuples(p) {
            let faces_in = p == 0
                || (0..=p).all(|i| {
                    let mut f = t.clone();
                    f.remove(i);
                    chosen[p - 1].contains(&f)
                });
            if faces_in && keep[k % keep.len()] {
                level.push(t.clone());
            }
            k += 1;
        }
        if level.is_empty() {
            break;
        }
        basis.push(level.iter().map(|t| steiner_lab::simplex::tuple_token(t)).collect());
        chosen.push(level);
    }
    if basis.is_empty() {
        return None;
    }
    let mut diff = Vec::new();
    for p in 1..chosen.len() {
        for t in &chosen[p] {
            let terms = (0..=p)
                .map(|i| {
                    let mut f = t.clone();
                    f.remove(i);
                    (steiner_lab::simplex::tuple_token(&f), if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            diff.push((steiner_lab::simplex::tuple_token(t), terms));
        }
    }
    let aug: Vec<(String, i64)> = basis[0].iter().map(|t| (t.clone(), 1)).collect();
    Complex::from_named(basis, &diff, &aug).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pos_neg_splits(x in chain(1, 6)) {
        let (p, n) = pos_neg_decompose(&x);
        prop_assert!(p.is_positive() && n.is_positive());
        prop_assert_eq!(p.sub(&n), x);
        prop_assert!(p.support().all(|i| n.coeff(i) == 0));
    }

    #[test]
    fn c_is_a_functor((phi, psi) in (0usize..4, 0usize..4, 0usize..4).prop_flat_map(|(a, b, c)| (monotone(b, c), monotone(a, b)))) {
        let lhs = c_of_map(&phi.after(&psi));
        let rhs = c_of_map(&phi).after(&c_of_map(&psi)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let a = psi.src();
        prop_assert_eq!(c_of_map(&MonotoneMap::identity(a)), AdcMorphism::identity(c_delta_arc(a)));
    }

    #[test]
    fn tensor_is_bifunctorial(phi in monotone(1, 2), psi in monotone(1, 2), phi2 in monotone(2, 3), psi2 in monotone(2, 2)) {
        let one = tensor_morphism(&c_of_map(&phi2), &c_of_map(&psi2));
        let two = tensor_morphism(&c_of_map(&phi), &c_of_map(&psi));
        let whole = tensor_morphism(&c_of_map(&phi2.after(&phi)), &c_of_map(&psi2.after(&psi)));
        prop_assert_eq!(one.after(&two).unwrap(), whole);
    }

    #[test]
    fn pushout_is_universal(m in 0usize..4, n in 0usize..4) {
        // the copairing of the two injections is the identity
        let w = Wedge::new(m, n);
        let id = w.glued.copair(&w.glued.inj_k, &w.glued.inj_l).unwrap();
        prop_assert_eq!(id, AdcMorphism::identity(w.glued.complex.clone()));
        // and a map out of the pushout is determined by its restrictions
        let f = f_n_endo(m, n);
        let back = w.glued.copair(&w.inclusion.after(&w.glued.inj_k).unwrap(), &w.inclusion.after(&w.glued.inj_l).unwrap()).unwrap();
        prop_assert_eq!(back, w.inclusion.clone());
        prop_assert_eq!(f.after(&w.inclusion).unwrap(), w.inclusion.clone());
    }

    #[test]
    fn f_phi_is_idempotent_at_the_ends(m in 0usize..3, phi in monotone(2, 1)) {
        let f = f_phi_map(m, &phi);
        let e = f_n_endo(m, 2);
        prop_assert_eq!(e.after(&f).unwrap(), e);
    }

    #[test]
    fn strong_implies_loopfree(n in 1usize..5, keep in prop::collection::vec(prop::bool::weighted(0.8), 7)) {
        if let Some(k) = face_complex(n, &keep) {
            prop_assert!(validate_complex(&k).is_empty());
            if strong_loopfree_order(&k).is_some() {
                prop_assert!(is_loopfree(&k));
            }
            prop_assert!(is_unitary(&k));
        }
    }
}

#[test]
fn nu_of_a_morphism_is_a_functor() {
    let k = c_delta_arc(2);
    let cells = enumerate_cells(&k, 2, None);
    for phi in MonotoneMap::all(2, 3) {
        let f = c_of_map(&phi);
        for level in &cells.by_dim {
            for x in level {
                let fx = map_cell(&f, x);
                assert!(validate_cell(f.target(), &fx).is_ok());
                for j in 0..x.dim() {
                    assert_eq!(map_cell(&f, &x.s(j).unwrap()), fx.s(j).unwrap());
                    assert_eq!(map_cell(&f, &x.t(j).unwrap()), fx.t(j).unwrap());
                }
                for y in level {
                    for j in 0..x.dim() {
                        if let Ok(xy) = compose(x, y, j) {
                            assert_eq!(map_cell(&f, &xy), compose(&fx, &map_cell(&f, y), j).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn nerve_identities_up_to_cap_four() {
    let mut family: Vec<Arc<Complex>> = (0..=3).map(c_delta_arc).collect();
    family.push(Tensor::new(c_delta_arc(1), c_delta_arc(1)).complex.clone());
    for k in &family {
        let n = nerve(k, 4, None).unwrap();
        assert!(n.complete);
        n.set.check_identities().unwrap();
    }
}

#[test]
fn glued_pushouts_are_strong() {
    for m in 0..=2 {
        let f = c_of_map(&MonotoneMap::constant(0, m, m));
        let g = c_of_map(&MonotoneMap::constant(0, 1, 0));
        let p = pushout_complex(&f, &g).unwrap();
        assert!(strong_loopfree_order(&p.complex).is_some());
    }
}

#[test]
fn cells_of_the_lax_square() {
    // Δ¹ ⊗ Δ¹: four objects, four edges and two composite paths, one square
    let sq = Tensor::new(c_delta_arc(1), c_delta_arc(1)).complex.clone();
    let e = enumerate_cells(&sq, 3, None);
    assert!(e.complete);
    assert_eq!((e.by_dim[0].len(), e.non_identity(1), e.non_identity(2), e.non_identity(3)), (4, 6, 1, 0));
}
