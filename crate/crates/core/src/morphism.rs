//! Morphisms of augmented directed complexes, given on basis elements.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::chain::Chain;
use crate::complex::Complex;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct AdcMorphism {
    source: Arc<Complex>,
    target: Arc<Complex>,
    images: Vec<Vec<Chain>>,
}

fn same(a: &Arc<Complex>, b: &Arc<Complex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for AdcMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && same(&self.source, &other.source) && same(&self.target, &other.target)
    }
}

impl Eq for AdcMorphism {}

impl Hash for AdcMorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl fmt::Debug for AdcMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (p, level) in self.images.iter().enumerate() {
            for (i, x) in level.iter().enumerate() {
                m.entry(&self.source.token(p, i), &self.target.fmt_chain(x));
            }
        }
        m.finish()
    }
}

/// A basis element on which a claimed morphism misbehaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismViolation {
    pub degree: usize,
    pub token: String,
    pub message: String,
}

impl AdcMorphism {
    pub fn new(source: Arc<Complex>, target: Arc<Complex>, images: Vec<Vec<Chain>>) -> Result<Self> {
        if images.len() != source.num_degrees() {
            return Err(Error::Structural(format!(
                "images given in {} degrees for a source with {}",
                images.len(),
                source.num_degrees()
            )));
        }
        for (p, level) in images.iter().enumerate() {
            if level.len() != source.rank(p) {
                return Err(Error::Structural(format!("wrong number of images in degree {p}")));
            }
            for (i, x) in level.iter().enumerate() {
                if x.degree() != p || x.support().any(|j| j >= target.rank(p)) {
                    return Err(Error::Structural(format!(
                        "image of {} is not a chain of degree {p} in the target",
                        source.token(p, i)
                    )));
                }
            }
        }
        Ok(AdcMorphism { source, target, images })
    }

    pub fn from_fn<F>(source: Arc<Complex>, target: Arc<Complex>, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Chain,
    {
        let images = (0..source.num_degrees())
            .map(|p| (0..source.rank(p)).map(|i| f(p, i)).collect())
            .collect();
        AdcMorphism::new(source, target, images)
    }

    pub fn identity(k: Arc<Complex>) -> Self {
        let images = (0..k.num_degrees()).map(|p| (0..k.rank(p)).map(|i| Chain::basis(p, i)).collect()).collect();
        AdcMorphism { source: k.clone(), target: k, images }
    }

    /// Sends every vertex to `v` and everything else to 0.
    pub fn constant(source: Arc<Complex>, target: Arc<Complex>, v: &Chain) -> Self {
        let images = (0..source.num_degrees())
            .map(|p| {
                (0..source.rank(p))
                    .map(|_| if p == 0 { v.clone() } else { Chain::zero(p) })
                    .collect()
            })
            .collect();
        AdcMorphism { source, target, images }
    }

    pub fn source(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn images(&self) -> &[Vec<Chain>] {
        &self.images
    }

    pub fn image(&self, p: usize, i: usize) -> &Chain {
        &self.images[p][i]
    }

    /// Image of the generator with the given token.
    pub fn image_of(&self, token: &str) -> Result<&Chain> {
        let (p, i) = self
            .source
            .locate(token)
            .ok_or_else(|| Error::Structural(format!("unknown token {token}")))?;
        Ok(&self.images[p][i])
    }

    pub fn apply(&self, x: &Chain) -> Chain {
        let p = x.degree();
        if p >= self.images.len() {
            return Chain::zero(p);
        }
        x.map_linear(p, |i| self.images[p][i].clone())
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &AdcMorphism) -> Result<AdcMorphism> {
        if !same(&g.target, &self.source) {
            return Err(Error::Domain("composing morphisms whose ends do not match".into()));
        }
        let images = g.images.iter().map(|level| level.iter().map(|x| self.apply(x)).collect()).collect();
        Ok(AdcMorphism { source: g.source.clone(), target: self.target.clone(), images })
    }

    /// Same data viewed with a different (equal) source or target handle.
    pub fn with_ends(&self, source: Arc<Complex>, target: Arc<Complex>) -> Result<AdcMorphism> {
        if !same(&source, &self.source) || !same(&target, &self.target) {
            return Err(Error::Domain("replacement ends are not equal to the original ones".into()));
        }
        Ok(AdcMorphism { source, target, images: self.images.clone() })
    }

    pub fn is_valid(&self) -> bool {
        check_morphism(self).is_empty()
    }
}

pub fn check_morphism(f: &AdcMorphism) -> Vec<MorphismViolation> {
    let (k, l) = (&f.source, &f.target);
    let mut out = Vec::new();
    for p in 0..k.num_degrees() {
        for i in 0..k.rank(p) {
            let fb = &f.images[p][i];
            let mut bad = |message: String| {
                out.push(MorphismViolation { degree: p, token: k.token(p, i).to_string(), message })
            };
            if !fb.is_positive() {
                bad(format!("image {} is not positive", l.fmt_chain(fb)));
            }
            if p == 0 {
                if l.e(fb) != k.augmentation(i) {
                    bad(format!("e(f b) = {} but e(b) = {}", l.e(fb), k.augmentation(i)));
                }
            } else {
                let lhs = f.apply(k.boundary(p, i));
                let rhs = l.d(fb);
                if lhs != rhs {
                    bad(format!("f(d b) = {} but d(f b) = {}", l.fmt_chain(&lhs), l.fmt_chain(&rhs)));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{c_delta, c_of_map, MonotoneMap};

    #[test]
    fn degeneracy_collapse_is_valid() {
        let f = c_of_map(&MonotoneMap::new(1, 0, vec![0, 0]).unwrap());
        assert!(check_morphism(&f).is_empty());
        assert!(f.image_of("(0,1)").unwrap().is_zero());
    }

    #[test]
    fn negative_edge_is_flagged() {
        let k = Arc::new(c_delta(1));
        let f = AdcMorphism::from_fn(k.clone(), k.clone(), |p, i| {
            if p == 1 { Chain::basis(1, i).neg() } else { Chain::basis(0, i) }
        })
        .unwrap();
        let v = check_morphism(&f);
        assert!(v.iter().any(|x| x.token == "(0,1)" && x.message.contains("positive")));
    }

    #[test]
    fn identities_are_valid() {
        for n in 0..4 {
            assert!(AdcMorphism::identity(Arc::new(c_delta(n))).is_valid());
        }
    }
}
