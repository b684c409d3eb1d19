//! The simplex category: monotone maps, joins, and normalized chains c(Δⁿ).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::chain::Chain;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::morphism::AdcMorphism;

/// A weakly increasing map `Δsrc → Δdst`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    src: usize,
    dst: usize,
    image: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(src: usize, dst: usize, image: Vec<usize>) -> Result<Self> {
        if image.len() != src + 1 {
            return Err(Error::Structural(format!("a map out of Δ{src} needs {} values", src + 1)));
        }
        if image.iter().any(|&v| v > dst) || image.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Structural(format!("{image:?} is not a monotone map into Δ{dst}")));
        }
        Ok(MonotoneMap { src, dst, image })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { src: n, dst: n, image: (0..=n).collect() }
    }

    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        assert!(v <= n);
        MonotoneMap { src: m, dst: n, image: vec![v; m + 1] }
    }

    /// `i_{m,n}: Δm → Δ(m+1+n)`, `k ↦ k`.
    pub fn i_map(m: usize, n: usize) -> Self {
        MonotoneMap { src: m, dst: m + 1 + n, image: (0..=m).collect() }
    }

    /// `j_{m,n}: Δn → Δ(m+1+n)`, `l ↦ m+1+l`.
    pub fn j_map(m: usize, n: usize) -> Self {
        MonotoneMap { src: n, dst: m + 1 + n, image: (0..=n).map(|l| m + 1 + l).collect() }
    }

    /// The map `Δk → Δn` picking out `indices`.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Structural("empty index list".into()));
        }
        MonotoneMap::new(indices.len() - 1, n, indices.to_vec())
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn at(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(other.dst, self.src, "composing monotone maps with mismatched ends");
        MonotoneMap { src: other.src, dst: self.dst, image: other.image.iter().map(|&i| self.image[i]).collect() }
    }

    pub fn is_injective(&self) -> bool {
        self.image.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.image[0] == 0 && self.image[self.src] == self.dst && self.image.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// All monotone maps `Δm → Δn`, lexicographically.
    pub fn all(m: usize, n: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if cur.len() == m + 1 {
                out.push(MonotoneMap { src: m, dst: n, image: cur.clone() });
                return;
            }
            for v in lo..=n {
                cur.push(v);
                rec(m, n, v, cur, out);
                cur.pop();
            }
        }
        rec(m, n, 0, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.image.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", v.join(","))
    }
}

/// `φ ⨿ ψ: Δ(m′+1+n′) → Δ(m+1+n)`.
pub fn join_maps(phi: &MonotoneMap, psi: &MonotoneMap) -> MonotoneMap {
    let (m1, m) = (phi.src, phi.dst);
    let mut image = phi.image.clone();
    image.extend(psi.image.iter().map(|&v| m + 1 + v));
    MonotoneMap { src: m1 + 1 + psi.src, dst: m + 1 + psi.dst, image }
}

pub fn tuple_token(t: &[usize]) -> String {
    let v: Vec<String> = t.iter().map(|i| i.to_string()).collect();
    format!("({})", v.join(","))
}

/// Cached data for `c(Δⁿ)`: the complex and its tuples.
pub struct SimplexData {
    pub complex: Arc<Complex>,
    tuples: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SimplexData {
    pub fn tuple(&self, p: usize, i: usize) -> &[usize] {
        &self.tuples[p][i]
    }

    pub fn tuples(&self, p: usize) -> &[Vec<usize>] {
        self.tuples.get(p).map_or(&[], |v| v.as_slice())
    }

    /// Index of a strictly increasing tuple in its degree.
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// The chain of a tuple: the generator, or 0 if the tuple repeats an index.
    pub fn tuple_chain(&self, t: &[usize]) -> Chain {
        let p = t.len() - 1;
        if t.windows(2).any(|w| w[0] == w[1]) {
            return Chain::zero(p);
        }
        let i = self.index_of(t).unwrap_or_else(|| panic!("{t:?} is not a simplex"));
        Chain::basis(p, i)
    }
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

fn build_simplex(n: usize) -> SimplexData {
    let tuples: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| combos(n, p + 1)).collect();
    let mut index = HashMap::new();
    for level in &tuples {
        for (i, t) in level.iter().enumerate() {
            index.insert(t.clone(), i);
        }
    }
    let basis: Vec<Vec<String>> = tuples.iter().map(|l| l.iter().map(|t| tuple_token(t)).collect()).collect();
    let diff: Vec<Vec<Chain>> = tuples
        .iter()
        .enumerate()
        .map(|(p, level)| {
            if p == 0 {
                return Vec::new();
            }
            level
                .iter()
                .map(|t| {
                    Chain::from_terms(
                        p - 1,
                        (0..t.len()).map(|k| {
                            let mut f = t.clone();
                            f.remove(k);
                            (index[&f], if k % 2 == 0 { 1 } else { -1 })
                        }),
                    )
                })
                .collect()
        })
        .collect();
    let aug = vec![1; n + 1];
    let complex = Arc::new(Complex::new(basis, diff, aug).expect("c(Δⁿ) is well formed"));
    SimplexData { complex, tuples, index }
}

/// Shared, cached data for `c(Δⁿ)`.
pub fn simplex(n: usize) -> Arc<SimplexData> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SimplexData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&n) {
        return s.clone();
    }
    let s = Arc::new(build_simplex(n));
    cache.lock().unwrap().entry(n).or_insert(s).clone()
}

pub fn c_delta(n: usize) -> Complex {
    (*simplex(n).complex).clone()
}

pub fn c_delta_arc(n: usize) -> Arc<Complex> {
    simplex(n).complex.clone()
}

/// `c(φ)`: tuples go to image tuples, or to 0 when an index repeats.
pub fn c_of_map(phi: &MonotoneMap) -> AdcMorphism {
    let (s, t) = (simplex(phi.src), simplex(phi.dst));
    AdcMorphism::from_fn(s.complex.clone(), t.complex.clone(), |p, i| {
        let img: Vec<usize> = s.tuple(p, i).iter().map(|&v| phi.image[v]).collect();
        t.tuple_chain(&img)
    })
    .expect("c(φ) is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::check_morphism;

    #[test]
    fn join_examples() {
        let phi = MonotoneMap::new(0, 1, vec![1]).unwrap();
        let j = join_maps(&phi, &MonotoneMap::identity(1));
        assert_eq!(j.image(), &[1, 2, 3]);
        assert_eq!(j.src(), 2);
        assert_eq!(j.dst(), 3);
        assert_eq!(join_maps(&MonotoneMap::identity(2), &MonotoneMap::identity(1)), MonotoneMap::identity(4));
        assert_eq!(MonotoneMap::j_map(1, 1).image(), &[2, 3]);
    }

    #[test]
    fn simplex_sizes_and_boundary() {
        let k = c_delta(2);
        assert_eq!(k.sizes(), vec![3, 3, 1]);
        let d = k.d(&k.gen("(0,1,2)").unwrap());
        assert_eq!(k.fmt_chain(&d), "(0,1) - (0,2) + (1,2)");
        assert_eq!(c_delta(0).sizes(), vec![1]);
        assert_eq!(c_delta(4).sizes(), vec![5, 10, 10, 5, 1]);
    }

    #[test]
    fn c_of_degeneracy_and_face() {
        let s = c_of_map(&MonotoneMap::new(2, 1, vec![0, 0, 1]).unwrap());
        assert!(s.image_of("(0,1)").unwrap().is_zero());
        assert_eq!(s.target().fmt_chain(s.image_of("(1,2)").unwrap()), "(0,1)");
        assert!(s.image_of("(0,1,2)").unwrap().is_zero());
        assert!(check_morphism(&s).is_empty());
        let d0 = c_of_map(&MonotoneMap::new(1, 2, vec![1, 2]).unwrap());
        assert_eq!(d0.target().fmt_chain(d0.image_of("(0,1)").unwrap()), "(1,2)");
        let id = c_of_map(&MonotoneMap::identity(3));
        assert_eq!(id, AdcMorphism::identity(c_delta_arc(3)));
    }

    #[test]
    fn monotone_map_counts() {
        // C(m+n+1, m+1)
        assert_eq!(MonotoneMap::all(1, 2).len(), 6);
        assert_eq!(MonotoneMap::all(2, 2).len(), 10);
        assert_eq!(MonotoneMap::all(0, 4).len(), 5);
    }
}
