//! Basis-presented augmented directed complexes.
//!
//! Positivity is always the non-negative span of the declared basis, so a
//! complex is fully described by its graded basis, the differential of each
//! basis element and the augmentation of each vertex.

use std::collections::{BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;

use crate::cell::{validate_cell, Cell};
use crate::chain::Chain;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Complex {
    basis: Vec<Vec<String>>,
    lookup: Vec<HashMap<String, usize>>,
    // diff[p][i] has degree p - 1; diff[0] is empty.
    diff: Vec<Vec<Chain>>,
    aug: Vec<i64>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.diff == other.diff && self.aug == other.aug
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex{:?}", self.sizes())
    }
}

/// A basis element violating `d∘d = 0` or `e∘d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: usize,
    pub token: String,
    pub message: String,
}

impl Complex {
    /// `diff[p]` must have one chain of degree `p-1` per basis element of
    /// degree `p` (and be empty for `p = 0`); `aug` has one entry per vertex.
    pub fn new(basis: Vec<Vec<String>>, diff: Vec<Vec<Chain>>, aug: Vec<i64>) -> Result<Self> {
        let mut basis = basis;
        let mut diff = diff;
        while basis.len() > 1 && basis.last().is_some_and(|b| b.is_empty()) {
            basis.pop();
        }
        diff.truncate(basis.len());
        while diff.len() < basis.len() {
            diff.push(Vec::new());
        }
        if basis.is_empty() {
            basis.push(Vec::new());
            diff.push(Vec::new());
        }
        if !diff[0].is_empty() {
            return Err(Error::Structural("degree-0 generators have no differential".into()));
        }
        if aug.len() != basis[0].len() {
            return Err(Error::Structural(format!(
                "augmentation has {} entries for {} vertices",
                aug.len(),
                basis[0].len()
            )));
        }
        let mut lookup = Vec::with_capacity(basis.len());
        for (p, level) in basis.iter().enumerate() {
            let mut m = HashMap::with_capacity(level.len());
            for (i, t) in level.iter().enumerate() {
                if m.insert(t.clone(), i).is_some() {
                    return Err(Error::Structural(format!("duplicate token {t} in degree {p}")));
                }
            }
            lookup.push(m);
        }
        for p in 1..basis.len() {
            if diff[p].len() != basis[p].len() {
                return Err(Error::Structural(format!(
                    "degree {p}: {} differentials for {} generators",
                    diff[p].len(),
                    basis[p].len()
                )));
            }
            for (i, c) in diff[p].iter().enumerate() {
                if c.degree() != p - 1 || c.support().any(|j| j >= basis[p - 1].len()) {
                    return Err(Error::Structural(format!(
                        "differential of {} is not a chain of degree {}",
                        basis[p][i],
                        p - 1
                    )));
                }
            }
        }
        Ok(Complex { basis, lookup, diff, aug })
    }

    /// Builds a complex from token-keyed data. Differential keys are resolved
    /// by searching all degrees, so they must be unambiguous.
    pub fn from_named(
        basis: Vec<Vec<String>>,
        diff: &[(String, Vec<(String, i64)>)],
        aug: &[(String, i64)],
    ) -> Result<Self> {
        let mut owner: HashMap<&str, Vec<(usize, usize)>> = HashMap::new();
        for (p, level) in basis.iter().enumerate() {
            for (i, t) in level.iter().enumerate() {
                owner.entry(t.as_str()).or_default().push((p, i));
            }
        }
        let locate = |t: &str| -> Result<(usize, usize)> {
            match owner.get(t).map(|v| v.as_slice()) {
                Some([one]) => Ok(*one),
                Some(_) => Err(Error::Structural(format!("token {t} occurs in several degrees"))),
                None => Err(Error::Structural(format!("unknown token {t}"))),
            }
        };
        let mut d: Vec<Vec<Chain>> = basis
            .iter()
            .enumerate()
            .map(|(p, l)| if p == 0 { Vec::new() } else { vec![Chain::zero(p - 1); l.len()] })
            .collect();
        for (t, terms) in diff {
            let (p, i) = locate(t)?;
            if p == 0 {
                if terms.is_empty() {
                    continue;
                }
                return Err(Error::Structural(format!("vertex {t} given a differential")));
            }
            let mut v = Vec::with_capacity(terms.len());
            for (s, c) in terms {
                let j = basis[p - 1]
                    .iter()
                    .position(|x| x == s)
                    .ok_or_else(|| Error::Structural(format!("{s} is not in degree {}", p - 1)))?;
                v.push((j, *c));
            }
            d[p][i] = Chain::from_terms(p - 1, v);
        }
        let mut a = vec![0i64; basis.first().map_or(0, |l| l.len())];
        for (t, c) in aug {
            let (p, i) = locate(t)?;
            if p != 0 {
                return Err(Error::Structural(format!("augmentation given on {t} of degree {p}")));
            }
            a[i] = *c;
        }
        Complex::new(basis, d, a)
    }

    /// Number of stored degrees (top degree + 1).
    pub fn num_degrees(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn rank(&self, p: usize) -> usize {
        self.basis.get(p).map_or(0, |l| l.len())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.basis.iter().map(|l| l.len()).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.basis.iter().map(|l| l.len()).sum()
    }

    pub fn tokens(&self, p: usize) -> &[String] {
        self.basis.get(p).map_or(&[], |l| l.as_slice())
    }

    pub fn token(&self, p: usize, i: usize) -> &str {
        &self.basis[p][i]
    }

    pub fn index(&self, p: usize, token: &str) -> Option<usize> {
        self.lookup.get(p)?.get(token).copied()
    }

    /// Finds a token in any degree.
    pub fn locate(&self, token: &str) -> Option<(usize, usize)> {
        self.lookup.iter().enumerate().find_map(|(p, m)| m.get(token).map(|&i| (p, i)))
    }

    pub fn boundary(&self, p: usize, i: usize) -> &Chain {
        &self.diff[p][i]
    }

    pub fn augmentation(&self, i: usize) -> i64 {
        self.aug[i]
    }

    pub fn generator(&self, p: usize, i: usize) -> Chain {
        Chain::basis(p, i)
    }

    pub fn d(&self, x: &Chain) -> Chain {
        let p = x.degree();
        assert!(p >= 1, "differential of a degree-0 chain");
        if p >= self.basis.len() {
            return Chain::zero(p - 1);
        }
        x.map_linear(p - 1, |i| self.diff[p][i].clone())
    }

    pub fn e(&self, x: &Chain) -> i64 {
        assert_eq!(x.degree(), 0, "augmentation of a positive-degree chain");
        x.terms().iter().map(|&(i, c)| c * self.aug[i]).sum()
    }

    pub fn chain(&self, p: usize, terms: &[(&str, i64)]) -> Result<Chain> {
        let mut v = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            let i = self
                .index(p, t)
                .ok_or_else(|| Error::Structural(format!("{t} is not a generator of degree {p}")))?;
            v.push((i, *c));
        }
        Ok(Chain::from_terms(p, v))
    }

    /// The generator with the given token, as a chain.
    pub fn gen(&self, token: &str) -> Result<Chain> {
        let (p, i) = self.locate(token).ok_or_else(|| Error::Structural(format!("unknown token {token}")))?;
        Ok(Chain::basis(p, i))
    }

    pub fn fmt_chain(&self, x: &Chain) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, &(i, c)) in x.terms().iter().enumerate() {
            let t = &self.basis[x.degree()][i];
            if n == 0 {
                match c {
                    1 => {}
                    -1 => s.push('-'),
                    _ => s.push_str(&c.to_string()),
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
                if c.abs() != 1 {
                    s.push_str(&c.abs().to_string());
                }
            }
            s.push_str(t);
        }
        s
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.basis.len() + 1);
        let mut acc = 0;
        for l in &self.basis {
            off.push(acc);
            acc += l.len();
        }
        off.push(acc);
        off
    }
}

pub fn validate_complex(k: &Complex) -> Vec<Violation> {
    let mut out = Vec::new();
    for p in 1..k.num_degrees() {
        for i in 0..k.rank(p) {
            let db = k.boundary(p, i);
            if p == 1 {
                let e = k.e(db);
                if e != 0 {
                    out.push(Violation {
                        degree: p,
                        token: k.token(p, i).to_string(),
                        message: format!("e(d b) = {e}"),
                    });
                }
            } else {
                let dd = k.d(db);
                if !dd.is_zero() {
                    out.push(Violation {
                        degree: p,
                        token: k.token(p, i).to_string(),
                        message: format!("d(d b) = {}", k.fmt_chain(&dd)),
                    });
                }
            }
        }
    }
    out
}

pub fn pos_neg_decompose(x: &Chain) -> (Chain, Chain) {
    x.split()
}

/// The atom ⟨b⟩ of a basis element together with whether it is a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub cell: Cell,
    pub is_cell: bool,
}

pub fn atom_tableau(k: &Complex, p: usize, i: usize) -> Atom {
    let cell = atom_rows(k, &Chain::basis(p, i));
    let is_cell = validate_cell(k, &cell).is_ok();
    Atom { cell, is_cell }
}

/// Rows of ⟨x⟩ for an arbitrary chain, built by descending recursion.
pub fn atom_rows(k: &Complex, x: &Chain) -> Cell {
    let top = x.degree();
    let mut rows = vec![[Chain::zero(0), Chain::zero(0)]; top + 1];
    rows[top] = [x.clone(), x.clone()];
    for q in (1..=top).rev() {
        let lo = k.d(&rows[q][0]).negative_part();
        let hi = k.d(&rows[q][1]).positive_part();
        rows[q - 1] = [lo, hi];
    }
    Cell::from_rows(rows)
}

pub fn is_unitary(k: &Complex) -> bool {
    (0..k.num_degrees()).all(|p| (0..k.rank(p)).all(|i| atom_tableau(k, p, i).is_cell))
}

fn has_cycle(n: usize, edges: &[Vec<usize>]) -> bool {
    topo_order(n, edges).is_none()
}

/// Kahn's algorithm, ties broken by smallest node id.
fn topo_order(n: usize, edges: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for adj in edges {
        for &v in adj {
            indeg[v] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        out.push(v);
        for &w in &edges[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    (out.len() == n).then_some(out)
}

pub fn is_loopfree(k: &Complex) -> bool {
    let atoms: Vec<Vec<Cell>> = (0..k.num_degrees())
        .map(|p| (0..k.rank(p)).map(|i| atom_rows(k, &Chain::basis(p, i))).collect())
        .collect();
    for q in 0..k.num_degrees() {
        let n = k.rank(q);
        let mut edges = vec![Vec::new(); n];
        for level in atoms.iter().skip(q + 1) {
            for a in level {
                let [lo, hi] = a.row(q);
                for u in lo.support() {
                    for v in hi.support() {
                        edges[u].push(v);
                    }
                }
            }
        }
        if has_cycle(n, &edges) {
            return false;
        }
    }
    true
}

fn precedence_graph(k: &Complex) -> (Vec<usize>, Vec<Vec<usize>>) {
    let off = k.offsets();
    let n = *off.last().unwrap();
    let mut edges = vec![Vec::new(); n];
    for p in 1..k.num_degrees() {
        for i in 0..k.rank(p) {
            let b = off[p] + i;
            let (plus, minus) = k.boundary(p, i).split();
            for c in minus.support() {
                edges[off[p - 1] + c].push(b);
            }
            for c in plus.support() {
                edges[b].push(off[p - 1] + c);
            }
        }
    }
    (off, edges)
}

/// A linear extension of ≼ as (degree, index) pairs, or `None` when the
/// generating relation has a cycle.
pub fn strong_loopfree_order(k: &Complex) -> Option<Vec<(usize, usize)>> {
    let (off, edges) = precedence_graph(k);
    let order = topo_order(*off.last().unwrap(), &edges)?;
    let to_pair = |v: usize| {
        let p = off.partition_point(|&o| o <= v) - 1;
        (p, v - off[p])
    };
    Some(order.into_iter().map(to_pair).collect())
}

/// True when ≼ is a total order, i.e. the linear extension is unique.
pub fn precedence_is_total(k: &Complex) -> bool {
    let (off, edges) = precedence_graph(k);
    let Some(order) = topo_order(*off.last().unwrap(), &edges) else {
        return false;
    };
    order.windows(2).all(|w| edges[w[0]].contains(&w[1]))
}

pub fn is_strong_steiner(k: &Complex) -> bool {
    validate_complex(k).is_empty() && is_unitary(k) && strong_loopfree_order(k).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::c_delta;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn corrupted_triangle_is_flagged() {
        let k = Complex::from_named(
            vec![s(&["0", "1", "2"]), s(&["01", "02", "12"]), s(&["012"])],
            &[
                ("01".into(), vec![("1".into(), 1), ("0".into(), -1)]),
                ("02".into(), vec![("2".into(), 1), ("0".into(), -1)]),
                ("12".into(), vec![("2".into(), 1), ("1".into(), -1)]),
                ("012".into(), vec![("12".into(), 1), ("02".into(), 1), ("01".into(), 1)]),
            ],
            &[("0".into(), 1), ("1".into(), 1), ("2".into(), 1)],
        )
        .unwrap();
        let v = validate_complex(&k);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].token, "012");
    }

    #[test]
    fn single_vertex_is_valid() {
        let k = Complex::from_named(vec![s(&["v"])], &[], &[("v".into(), 1)]).unwrap();
        assert!(validate_complex(&k).is_empty());
        assert!(is_strong_steiner(&k));
    }

    #[test]
    fn atom_of_triangle() {
        let k = c_delta(2);
        let a = atom_tableau(&k, 2, 0);
        assert!(a.is_cell);
        let r = |q: usize, e: usize| k.fmt_chain(&a.cell.row(q)[e]);
        assert_eq!((r(0, 0), r(0, 1)), ("(0)".to_string(), "(2)".to_string()));
        assert_eq!((r(1, 0), r(1, 1)), ("(0,2)".to_string(), "(0,1) + (1,2)".to_string()));
        assert_eq!((r(2, 0), r(2, 1)), ("(0,1,2)".to_string(), "(0,1,2)".to_string()));
    }

    #[test]
    fn atom_with_augmentation_two_is_not_a_cell() {
        let k = Complex::from_named(
            vec![s(&["v1", "v2", "w"]), s(&["g"])],
            &[("g".into(), vec![("v1".into(), 1), ("v2".into(), 1), ("w".into(), -1)])],
            &[("v1".into(), 1), ("v2".into(), 1), ("w".into(), 2)],
        )
        .unwrap();
        assert!(validate_complex(&k).is_empty());
        let a = atom_tableau(&k, 1, 0);
        assert!(!a.is_cell);
        assert_eq!(k.fmt_chain(&a.cell.row(0)[0]), "w");
        assert_eq!(k.fmt_chain(&a.cell.row(0)[1]), "v1 + v2");
        assert!(!is_unitary(&k));
    }

    #[test]
    fn two_cycle_is_not_strongly_loopfree() {
        let k = Complex::from_named(
            vec![s(&["a", "b"]), s(&["g1", "g2"])],
            &[
                ("g1".into(), vec![("b".into(), 1), ("a".into(), -1)]),
                ("g2".into(), vec![("a".into(), 1), ("b".into(), -1)]),
            ],
            &[("a".into(), 1), ("b".into(), 1)],
        )
        .unwrap();
        assert!(validate_complex(&k).is_empty());
        assert!(strong_loopfree_order(&k).is_none());
        assert!(!is_loopfree(&k));
    }

    #[test]
    fn simplices_are_strong_steiner_with_total_order() {
        for n in 0..=4 {
            let k = c_delta(n);
            assert!(is_unitary(&k));
            assert!(is_loopfree(&k));
            assert!(strong_loopfree_order(&k).is_some());
            assert!(precedence_is_total(&k), "n = {n}");
        }
    }
}
