//! Integer chains over a graded basis.
//!
//! A chain lives in a single degree and stores its non-zero coefficients
//! sorted by basis index. Indices refer to the basis of whichever complex the
//! chain is interpreted in; the chain itself does not carry the complex.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    degree: usize,
    terms: Vec<(usize, i64)>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: Vec::new() }
    }

    pub fn basis(degree: usize, index: usize) -> Self {
        Chain { degree, terms: vec![(index, 1)] }
    }

    /// Builds a chain from arbitrary (index, coefficient) pairs, merging
    /// repeated indices and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (usize, i64)>>(degree: usize, terms: I) -> Self {
        let mut v: Vec<(usize, i64)> = terms.into_iter().collect();
        v.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Chain { degree, terms: out }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(usize, i64)] {
        &self.terms
    }

    pub fn coeff(&self, index: usize) -> i64 {
        match self.terms.binary_search_by_key(&index, |t| t.0) {
            Ok(p) => self.terms[p].1,
            Err(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.terms.iter().all(|t| t.1 > 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|t| t.0)
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.terms.iter().map(|t| t.1).sum()
    }

    pub fn max_coeff(&self) -> i64 {
        self.terms.iter().map(|t| t.1.abs()).max().unwrap_or(0)
    }

    /// Splits `x` as `x₊ − x₋` with both parts positive and disjoint supports.
    pub fn split(&self) -> (Chain, Chain) {
        let pos = self.terms.iter().filter(|t| t.1 > 0).copied().collect();
        let neg = self.terms.iter().filter(|t| t.1 < 0).map(|&(i, c)| (i, -c)).collect();
        (
            Chain { degree: self.degree, terms: pos },
            Chain { degree: self.degree, terms: neg },
        )
    }

    pub fn positive_part(&self) -> Chain {
        self.split().0
    }

    pub fn negative_part(&self) -> Chain {
        self.split().1
    }

    pub fn scale(&self, k: i64) -> Chain {
        if k == 0 {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self.terms.iter().map(|&(i, c)| (i, c * k)).collect(),
        }
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &Chain, k: i64) -> Chain {
        assert_eq!(self.degree, other.degree, "adding chains of different degrees");
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, k * b[j].1));
                j += 1;
            } else {
                let c = a[i].1 + k * b[j].1;
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.retain(|t| t.1 != 0);
        Chain { degree: self.degree, terms: out }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add_scaled(other, -1)
    }

    pub fn neg(&self) -> Chain {
        self.scale(-1)
    }

    /// Applies a linear map given on basis indices.
    pub fn map_linear<F>(&self, target_degree: usize, mut f: F) -> Chain
    where
        F: FnMut(usize) -> Chain,
    {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for &(i, c) in &self.terms {
            let img = f(i);
            debug_assert_eq!(img.degree, target_degree);
            acc.extend(img.terms.iter().map(|&(j, d)| (j, c * d)));
        }
        Chain::from_terms(target_degree, acc)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:+}[{i}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_of_boundary_of_triangle() {
        // indices 0=(01), 1=(02), 2=(12)
        let d = Chain::from_terms(1, [(2, 1), (1, -1), (0, 1)]);
        let (p, n) = d.split();
        assert_eq!(p, Chain::from_terms(1, [(0, 1), (2, 1)]));
        assert_eq!(n, Chain::basis(1, 1));
        assert_eq!(p.sub(&n), d);
    }

    #[test]
    fn zero_and_positive_split() {
        let z = Chain::zero(3);
        assert_eq!(z.split(), (Chain::zero(3), Chain::zero(3)));
        let x = Chain::basis(1, 0).scale(3);
        assert_eq!(x.split(), (x.clone(), Chain::zero(1)));
    }

    #[test]
    fn from_terms_merges_and_cancels() {
        let x = Chain::from_terms(0, [(1, 2), (0, 1), (1, -2)]);
        assert_eq!(x, Chain::basis(0, 0));
    }
}
