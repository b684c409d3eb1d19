//! Enumeration of morphisms between complexes by boundary-constrained search.

use std::collections::HashMap;
use std::sync::Arc;

use crate::chain::Chain;
use crate::complex::Complex;
use crate::morphism::AdcMorphism;
use crate::simplex::c_delta_arc;
use crate::solve::Solver;

#[derive(Clone, Debug)]
pub struct HomEnumeration {
    pub morphisms: Vec<AdcMorphism>,
    pub complete: bool,
}

/// All morphisms `source → solver.complex()` agreeing with `fixed` on the
/// prescribed generators `(degree, index)`.
pub fn hom_enumerate_with(
    solver: &Solver,
    source: &Arc<Complex>,
    fixed: &HashMap<(usize, usize), Chain>,
) -> HomEnumeration {
    let target = solver.complex().clone();
    let order: Vec<(usize, usize)> =
        (0..source.num_degrees()).flat_map(|p| (0..source.rank(p)).map(move |i| (p, i))).collect();
    let mut images: Vec<Vec<Chain>> =
        (0..source.num_degrees()).map(|p| vec![Chain::zero(p); source.rank(p)]).collect();
    let mut out = Vec::new();
    let mut complete = true;
    rec(solver, source, &target, fixed, &order, 0, &mut images, &mut out, &mut complete);
    HomEnumeration { morphisms: out, complete }
}

#[allow(clippy::too_many_arguments)]
fn rec(
    solver: &Solver,
    source: &Arc<Complex>,
    target: &Arc<Complex>,
    fixed: &HashMap<(usize, usize), Chain>,
    order: &[(usize, usize)],
    pos: usize,
    images: &mut Vec<Vec<Chain>>,
    out: &mut Vec<AdcMorphism>,
    complete: &mut bool,
) {
    if pos == order.len() {
        out.push(AdcMorphism::new(source.clone(), target.clone(), images.clone()).expect("degrees match"));
        return;
    }
    let (p, i) = order[pos];
    let candidates: Vec<Chain> = if p == 0 {
        let want = source.augmentation(i);
        match fixed.get(&(p, i)) {
            Some(x) => {
                if x.is_positive() && target.e(x) == want { vec![x.clone()] } else { vec![] }
            }
            None => {
                let s = solver.vertices_with_aug(want);
                *complete &= s.complete;
                s.chains.clone()
            }
        }
    } else {
        let rhs = source.boundary(p, i).map_linear(p - 1, |j| images[p - 1][j].clone());
        match fixed.get(&(p, i)) {
            Some(x) => {
                if x.is_positive() && target.d(x) == rhs { vec![x.clone()] } else { vec![] }
            }
            None => {
                let s = solver.fill(&rhs);
                *complete &= s.complete;
                s.chains.clone()
            }
        }
    };
    for c in candidates {
        images[p][i] = c;
        rec(solver, source, target, fixed, order, pos + 1, images, out, complete);
    }
    images[p][i] = Chain::zero(p);
}

/// `Hom(c(Δⁿ), K)`, i.e. the n-simplices of the Street nerve of ν(K).
pub fn hom_enumerate(n: usize, k: &Arc<Complex>, bound: Option<i64>) -> HomEnumeration {
    let solver = Solver::new(k.clone(), bound);
    hom_enumerate_with(&solver, &c_delta_arc(n), &HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_hom_counts() {
        let k2 = c_delta_arc(2);
        let h = hom_enumerate(1, &k2, None);
        assert!(h.complete);
        assert_eq!(h.morphisms.len(), 7);
        assert_eq!(hom_enumerate(2, &k2, None).morphisms.len(), 15);
        assert_eq!(hom_enumerate(3, &c_delta_arc(0), None).morphisms.len(), 1);
        assert!(h.morphisms.iter().all(|f| f.is_valid()));
    }
}
