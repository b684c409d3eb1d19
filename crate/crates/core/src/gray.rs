//! Tensor products of complexes and pushouts along rigid monomorphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::chain::Chain;
use crate::complex::{precedence_is_total, Complex};
use crate::error::{Error, Result};
use crate::morphism::{check_morphism, AdcMorphism};

/// `K ⊗ L` with bookkeeping to move between pairs and basis indices.
pub struct Tensor {
    pub complex: Arc<Complex>,
    pub left: Arc<Complex>,
    pub right: Arc<Complex>,
    // (p, i, q, j) for each basis element, degree p + q
    pairs: Vec<Vec<(usize, usize, usize, usize)>>,
    index: HashMap<(usize, usize, usize, usize), usize>,
}

impl Tensor {
    pub fn new(left: Arc<Complex>, right: Arc<Complex>) -> Tensor {
        let top = left.top_degree() + right.top_degree();
        let mut pairs = vec![Vec::new(); top + 1];
        for (deg, level) in pairs.iter_mut().enumerate() {
            for p in 0..=deg.min(left.top_degree()) {
                let q = deg - p;
                if q > right.top_degree() {
                    continue;
                }
                for i in 0..left.rank(p) {
                    for j in 0..right.rank(q) {
                        level.push((p, i, q, j));
                    }
                }
            }
        }
        let mut index = HashMap::new();
        for level in &pairs {
            for (n, &key) in level.iter().enumerate() {
                index.insert(key, n);
            }
        }
        let basis: Vec<Vec<String>> = pairs
            .iter()
            .map(|l| l.iter().map(|&(p, i, q, j)| format!("{}⊗{}", left.token(p, i), right.token(q, j))).collect())
            .collect();
        let aug: Vec<i64> = pairs[0]
            .iter()
            .map(|&(_, i, _, j)| left.augmentation(i) * right.augmentation(j))
            .collect();
        let mut t = Tensor { complex: Arc::new(Complex::new(vec![vec![]], vec![], vec![]).unwrap()), left, right, pairs, index };
        let diff: Vec<Vec<Chain>> = t
            .pairs
            .iter()
            .enumerate()
            .map(|(deg, level)| {
                if deg == 0 {
                    return Vec::new();
                }
                level
                    .iter()
                    .map(|&(p, i, q, j)| {
                        let mut acc = Chain::zero(deg - 1);
                        if p > 0 {
                            acc = acc.add(&t.pair(t.left.boundary(p, i), &Chain::basis(q, j)));
                        }
                        if q > 0 {
                            let sign = if p % 2 == 0 { 1 } else { -1 };
                            acc = acc.add_scaled(&t.pair(&Chain::basis(p, i), t.right.boundary(q, j)), sign);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        t.complex = Arc::new(Complex::new(basis, diff, aug).expect("tensor complex is well formed"));
        t
    }

    /// `x ⊗ y`, extended bilinearly.
    pub fn pair(&self, x: &Chain, y: &Chain) -> Chain {
        let (p, q) = (x.degree(), y.degree());
        let mut terms = Vec::with_capacity(x.terms().len() * y.terms().len());
        for &(i, a) in x.terms() {
            for &(j, b) in y.terms() {
                terms.push((self.index[&(p, i, q, j)], a * b));
            }
        }
        Chain::from_terms(p + q, terms)
    }

    /// The factors `(p, i, q, j)` of basis element `n` in degree `deg`.
    pub fn factors(&self, deg: usize, n: usize) -> (usize, usize, usize, usize) {
        self.pairs[deg][n]
    }

    /// `{v}⊗−: L → K ⊗ L` for a vertex chain `v` of the left factor.
    pub fn left_slot(&self, v: &Chain) -> AdcMorphism {
        AdcMorphism::from_fn(self.right.clone(), self.complex.clone(), |q, j| self.pair(v, &Chain::basis(q, j)))
            .expect("slot inclusion is well formed")
    }

    /// `−⊗{w}: K → K ⊗ L` for a vertex chain `w` of the right factor.
    pub fn right_slot(&self, w: &Chain) -> AdcMorphism {
        AdcMorphism::from_fn(self.left.clone(), self.complex.clone(), |p, i| self.pair(&Chain::basis(p, i), w))
            .expect("slot inclusion is well formed")
    }
}

pub fn tensor_complex(k: &Complex, l: &Complex) -> Complex {
    (*Tensor::new(Arc::new(k.clone()), Arc::new(l.clone())).complex).clone()
}

/// `f ⊗ g` between two already-built tensors.
pub fn tensor_morphism_between(src: &Tensor, dst: &Tensor, f: &AdcMorphism, g: &AdcMorphism) -> Result<AdcMorphism> {
    if **f.source() != *src.left || **g.source() != *src.right || **f.target() != *dst.left || **g.target() != *dst.right {
        return Err(Error::Domain("tensor factors do not match the given morphisms".into()));
    }
    AdcMorphism::from_fn(src.complex.clone(), dst.complex.clone(), |deg, n| {
        let (p, i, q, j) = src.factors(deg, n);
        dst.pair(f.image(p, i), g.image(q, j))
    })
}

pub fn tensor_morphism(f: &AdcMorphism, g: &AdcMorphism) -> AdcMorphism {
    let src = Tensor::new(f.source().clone(), g.source().clone());
    let dst = Tensor::new(f.target().clone(), g.target().clone());
    tensor_morphism_between(&src, &dst, f, g).expect("factors match by construction")
}

/// Injective and basis-to-basis.
pub fn rigid_mono_check(f: &AdcMorphism) -> bool {
    for (p, level) in f.images().iter().enumerate() {
        let mut seen = vec![false; f.target().rank(p)];
        for x in level {
            match x.terms() {
                [(j, 1)] if !seen[*j] => seen[*j] = true,
                _ => return false,
            }
        }
    }
    true
}

/// `K ⨿_M L` together with its injections.
pub struct Pushout {
    pub complex: Arc<Complex>,
    pub inj_k: AdcMorphism,
    pub inj_l: AdcMorphism,
    f: AdcMorphism,
    g: AdcMorphism,
}

fn single(x: &Chain) -> usize {
    x.terms()[0].0
}

pub fn pushout_complex(f: &AdcMorphism, g: &AdcMorphism) -> Result<Pushout> {
    if **f.source() != **g.source() {
        return Err(Error::Precondition("the two legs have different sources".into()));
    }
    for (name, h) in [("f", f), ("g", g)] {
        if !check_morphism(h).is_empty() {
            return Err(Error::Precondition(format!("leg {name} is not a morphism")));
        }
        if !rigid_mono_check(h) {
            return Err(Error::Precondition(format!("leg {name} is not a rigid monomorphism")));
        }
    }
    let m = f.source();
    if !precedence_is_total(m) {
        return Err(Error::Precondition("the precedence relation on M is not a total order".into()));
    }
    let (k, l) = (f.target().clone(), g.target().clone());
    let top = k.top_degree().max(l.top_degree());
    let mut basis = Vec::with_capacity(top + 1);
    let mut lmap: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let mut level: Vec<String> = k.tokens(p).iter().map(|t| format!("K:{t}")).collect();
        let mut from_m = vec![None; l.rank(p)];
        for mi in 0..m.rank(p) {
            from_m[single(g.image(p, mi))] = Some(single(f.image(p, mi)));
        }
        let mut map = Vec::with_capacity(l.rank(p));
        for (j, hit) in from_m.into_iter().enumerate() {
            match hit {
                Some(kj) => map.push(kj),
                None => {
                    map.push(level.len());
                    level.push(format!("L:{}", l.token(p, j)));
                }
            }
        }
        basis.push(level);
        lmap.push(map);
    }
    let relabel = |x: &Chain| Chain::from_terms(x.degree(), x.terms().iter().map(|&(j, c)| (lmap[x.degree()][j], c)));
    let mut diff = vec![Vec::new()];
    for p in 1..=top {
        let mut level: Vec<Chain> = (0..k.rank(p)).map(|i| k.boundary(p, i).clone()).collect();
        level.resize(basis[p].len(), Chain::zero(p - 1));
        for j in 0..l.rank(p) {
            let n = lmap[p][j];
            if n >= k.rank(p) {
                level[n] = relabel(l.boundary(p, j));
            }
        }
        diff.push(level);
    }
    let mut aug: Vec<i64> = (0..k.rank(0)).map(|i| k.augmentation(i)).collect();
    aug.resize(basis[0].len(), 0);
    for j in 0..l.rank(0) {
        if lmap[0][j] >= k.rank(0) {
            aug[lmap[0][j]] = l.augmentation(j);
        }
    }
    let complex = Arc::new(Complex::new(basis, diff, aug)?);
    let inj_k = AdcMorphism::from_fn(k.clone(), complex.clone(), |p, i| Chain::basis(p, i))?;
    let inj_l = AdcMorphism::from_fn(l.clone(), complex.clone(), |p, j| Chain::basis(p, lmap[p][j]))?;
    Ok(Pushout { complex, inj_k, inj_l, f: f.clone(), g: g.clone() })
}

impl Pushout {
    pub fn left(&self) -> &Arc<Complex> {
        self.f.target()
    }

    pub fn right(&self) -> &Arc<Complex> {
        self.g.target()
    }

    /// The morphism `K ⨿_M L → T` induced by `u` and `v`.
    pub fn copair(&self, u: &AdcMorphism, v: &AdcMorphism) -> Result<AdcMorphism> {
        if **u.source() != **self.left() || **v.source() != **self.right() || **u.target() != **v.target() {
            return Err(Error::Domain("co-pairing: morphisms do not start at the pushout legs".into()));
        }
        if u.after(&self.f)? != v.after(&self.g)? {
            return Err(Error::Domain("co-pairing: morphisms disagree on the common part".into()));
        }
        let k_rank: Vec<usize> = (0..self.complex.num_degrees()).map(|p| self.left().rank(p)).collect();
        let mut images: Vec<Vec<Chain>> = (0..self.complex.num_degrees())
            .map(|p| {
                (0..self.complex.rank(p))
                    .map(|n| if n < k_rank[p] { u.image(p, n).clone() } else { Chain::zero(p) })
                    .collect()
            })
            .collect();
        for (p, level) in self.inj_l.images().iter().enumerate() {
            for (j, x) in level.iter().enumerate() {
                let n = single(x);
                if n >= k_rank[p] {
                    images[p][n] = v.image(p, j).clone();
                }
            }
        }
        AdcMorphism::new(self.complex.clone(), u.target().clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{is_unitary, strong_loopfree_order, validate_complex};
    use crate::simplex::{c_delta, c_delta_arc, c_of_map, MonotoneMap};

    #[test]
    fn square_tensor() {
        let t = Tensor::new(c_delta_arc(1), c_delta_arc(1));
        let k = &t.complex;
        assert_eq!(k.sizes(), vec![4, 4, 1]);
        let d = k.d(&k.gen("(0,1)⊗(0,1)").unwrap());
        assert_eq!(k.fmt_chain(&d), "-(0)⊗(0,1) + (1)⊗(0,1) + (0,1)⊗(0) - (0,1)⊗(1)");
        assert!(validate_complex(k).is_empty());
        assert!(strong_loopfree_order(k).is_some());
        assert!(is_unitary(k));
    }

    #[test]
    fn tensor_sizes_and_unit() {
        assert_eq!(tensor_complex(&c_delta(1), &c_delta(2)).sizes(), vec![6, 9, 5, 1]);
        let u = tensor_complex(&c_delta(0), &c_delta(3));
        assert_eq!(u.sizes(), c_delta(3).sizes());
    }

    #[test]
    fn collapse_left_factor() {
        let s = c_of_map(&MonotoneMap::constant(1, 0, 0));
        let id = AdcMorphism::identity(c_delta_arc(1));
        let f = tensor_morphism(&s, &id);
        assert!(f.image_of("(0,1)⊗(0,1)").unwrap().is_zero());
        assert!(check_morphism(&f).is_empty());
        let ii = tensor_morphism(&id, &id);
        assert_eq!(ii, AdcMorphism::identity(ii.source().clone()));
    }

    #[test]
    fn rigid_examples() {
        assert!(rigid_mono_check(&c_of_map(&MonotoneMap::j_map(1, 2))));
        assert!(!rigid_mono_check(&c_of_map(&MonotoneMap::constant(1, 0, 0))));
        let t = Tensor::new(c_delta_arc(1), c_delta_arc(2));
        assert!(rigid_mono_check(&t.left_slot(&Chain::basis(0, 1))));
    }

    #[test]
    fn glued_edges() {
        let f = c_of_map(&MonotoneMap::constant(0, 1, 0));
        let g = c_of_map(&MonotoneMap::constant(0, 1, 1));
        let po = pushout_complex(&f, &g).unwrap();
        assert_eq!(po.complex.sizes(), vec![3, 2]);
        assert!(validate_complex(&po.complex).is_empty());
        let id = AdcMorphism::identity(c_delta_arc(2));
        let k = AdcMorphism::identity(c_delta_arc(0));
        let along = pushout_complex(&k, &k).unwrap();
        assert_eq!(along.complex.sizes(), vec![1]);
        assert!(pushout_complex(&c_of_map(&MonotoneMap::constant(1, 0, 0)), &id).is_err());
    }
}
