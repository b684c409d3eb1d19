//! Cells of ν(K): double-row tableaux of positive chains.

use std::fmt;

use crate::chain::Chain;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::morphism::AdcMorphism;

/// An i-cell stored as rows `[x⁰_k, x¹_k]` for `k = 0..=i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    rows: Vec<[Chain; 2]>,
}

/// Which tableau condition a candidate cell violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellDefect {
    Shape(String),
    NotPositive { row: usize },
    Boundary { row: usize },
    Augmentation,
    TopRowsDiffer,
}

impl fmt::Display for CellDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellDefect::Shape(s) => write!(f, "malformed tableau: {s}"),
            CellDefect::NotPositive { row } => write!(f, "(a) row {row} has a negative entry"),
            CellDefect::Boundary { row } => write!(f, "(b) d-row identity fails at row {row}"),
            CellDefect::Augmentation => write!(f, "(c) row 0 entries do not have augmentation 1"),
            CellDefect::TopRowsDiffer => write!(f, "(d) top row entries differ"),
        }
    }
}

impl Cell {
    pub fn from_rows(rows: Vec<[Chain; 2]>) -> Self {
        assert!(!rows.is_empty(), "a cell has at least one row");
        Cell { rows }
    }

    /// The 0-cell `(x|x)`.
    pub fn object(x: Chain) -> Self {
        Cell { rows: vec![[x.clone(), x]] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[[Chain; 2]] {
        &self.rows
    }

    pub fn row(&self, k: usize) -> &[Chain; 2] {
        &self.rows[k]
    }

    /// The common top entry `x⁰_i = x¹_i`.
    pub fn top(&self) -> &Chain {
        &self.rows[self.dim()][0]
    }

    pub fn is_identity(&self) -> bool {
        self.dim() > 0 && self.top().is_zero()
    }

    /// Iterated source `s_j`; `s_i` of an i-cell is the cell itself.
    pub fn s(&self, j: usize) -> Result<Cell> {
        self.truncate(j, 0)
    }

    pub fn t(&self, j: usize) -> Result<Cell> {
        self.truncate(j, 1)
    }

    fn truncate(&self, j: usize, eps: usize) -> Result<Cell> {
        if j > self.dim() {
            return Err(Error::Domain(format!("{j}-boundary of a {}-cell", self.dim())));
        }
        if j == self.dim() {
            return Ok(self.clone());
        }
        let mut rows = self.rows[..j].to_vec();
        let x = self.rows[j][eps].clone();
        rows.push([x.clone(), x]);
        Ok(Cell { rows })
    }

    pub fn source(&self) -> Result<Cell> {
        if self.dim() == 0 {
            return Err(Error::Domain("source of a 0-cell".into()));
        }
        self.s(self.dim() - 1)
    }

    pub fn target(&self) -> Result<Cell> {
        if self.dim() == 0 {
            return Err(Error::Domain("target of a 0-cell".into()));
        }
        self.t(self.dim() - 1)
    }

    pub fn identity(&self) -> Cell {
        let mut rows = self.rows.clone();
        let z = Chain::zero(self.dim() + 1);
        rows.push([z.clone(), z]);
        Cell { rows }
    }

    /// Iterated identity up to dimension `d` (no-op when `d <= dim`).
    pub fn pad_to(&self, d: usize) -> Cell {
        let mut c = self.clone();
        while c.dim() < d {
            c = c.identity();
        }
        c
    }

    pub fn map_rows<F: FnMut(&Chain) -> Chain>(&self, mut f: F) -> Cell {
        Cell { rows: self.rows.iter().map(|[a, b]| [f(a), f(b)]).collect() }
    }
}

pub fn validate_cell(k: &Complex, c: &Cell) -> std::result::Result<(), CellDefect> {
    for (q, r) in c.rows.iter().enumerate() {
        for x in r {
            if x.degree() != q {
                return Err(CellDefect::Shape(format!("row {q} holds a chain of degree {}", x.degree())));
            }
            if x.support().any(|i| i >= k.rank(q)) {
                return Err(CellDefect::Shape(format!("row {q} refers to a missing generator")));
            }
        }
    }
    for (q, r) in c.rows.iter().enumerate() {
        if !r[0].is_positive() || !r[1].is_positive() {
            return Err(CellDefect::NotPositive { row: q });
        }
    }
    for q in 1..c.rows.len() {
        let diff = c.rows[q - 1][1].sub(&c.rows[q - 1][0]);
        if k.d(&c.rows[q][0]) != diff || k.d(&c.rows[q][1]) != diff {
            return Err(CellDefect::Boundary { row: q });
        }
    }
    if k.e(&c.rows[0][0]) != 1 || k.e(&c.rows[0][1]) != 1 {
        return Err(CellDefect::Augmentation);
    }
    if c.rows[c.dim()][0] != c.rows[c.dim()][1] {
        return Err(CellDefect::TopRowsDiffer);
    }
    Ok(())
}

/// `x ∗_j y`, padding the lower-dimensional argument with identities.
pub fn compose(x: &Cell, y: &Cell, j: usize) -> Result<Cell> {
    if j >= x.dim().min(y.dim()) {
        return Err(Error::Domain(format!(
            "∗_{j} needs both cells of dimension > {j} (got {} and {})",
            x.dim(),
            y.dim()
        )));
    }
    let i = x.dim().max(y.dim());
    let (x, y) = (x.pad_to(i), y.pad_to(i));
    if x.s(j)? != y.t(j)? {
        return Err(Error::Domain(format!("cells are not ∗_{j}-composable: s_{j}(x) ≠ t_{j}(y)")));
    }
    let mut rows = Vec::with_capacity(i + 1);
    rows.extend_from_slice(&x.rows[..j]);
    rows.push([y.rows[j][0].clone(), x.rows[j][1].clone()]);
    for q in j + 1..=i {
        rows.push([x.rows[q][0].add(&y.rows[q][0]), x.rows[q][1].add(&y.rows[q][1])]);
    }
    Ok(Cell { rows })
}

pub fn composable(x: &Cell, y: &Cell, j: usize) -> bool {
    if j >= x.dim().min(y.dim()) {
        return false;
    }
    let i = x.dim().max(y.dim());
    matches!((x.pad_to(i).s(j), y.pad_to(i).t(j)), (Ok(a), Ok(b)) if a == b)
}

/// ν(f) on a cell: apply f entrywise.
pub fn map_cell(f: &AdcMorphism, c: &Cell) -> Cell {
    c.map_rows(|x| f.apply(x))
}

pub fn fmt_cell(k: &Complex, c: &Cell) -> String {
    c.rows
        .iter()
        .map(|[a, b]| format!("({} | {})", k.fmt_chain(a), k.fmt_chain(b)))
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::atom_tableau;
    use crate::simplex::c_delta;

    fn atom(k: &Complex, t: &str) -> Cell {
        let (p, i) = k.locate(t).unwrap();
        atom_tableau(k, p, i).cell
    }

    #[test]
    fn source_of_triangle_atom() {
        let k = c_delta(2);
        let a = atom(&k, "(0,1,2)");
        let s = a.source().unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(k.fmt_chain(s.top()), "(0,2)");
        assert!(validate_cell(&k, &s).is_ok());
        assert_eq!(k.fmt_chain(a.s(0).unwrap().top()), "(0)");
        assert_eq!(a.identity().target().unwrap(), a);
        assert!(a.source().unwrap().source().is_ok());
        assert!(atom(&k, "(0)").source().is_err());
    }

    #[test]
    fn whiskered_path() {
        let k = c_delta(2);
        let c = compose(&atom(&k, "(1,2)"), &atom(&k, "(0,1)"), 0).unwrap();
        assert_eq!(k.fmt_chain(c.top()), "(0,1) + (1,2)");
        assert!(validate_cell(&k, &c).is_ok());
        assert!(compose(&atom(&k, "(0,1)"), &atom(&k, "(1,2)"), 0).is_err());
    }

    #[test]
    fn padded_units() {
        let k = c_delta(2);
        let t = atom(&k, "(0,1,2)");
        let v0 = atom(&k, "(0)");
        assert_eq!(compose(&t, &v0.identity(), 0).unwrap(), t);
        let s0 = t.s(0).unwrap().identity();
        assert_eq!(compose(&t, &s0, 0).unwrap(), t);
        let s1 = t.s(1).unwrap().identity();
        assert_eq!(compose(&t, &s1, 1).unwrap(), t);
    }

    #[test]
    fn tableau_conditions() {
        let k = c_delta(2);
        let bad = Cell::object(k.chain(0, &[("(0)", 1), ("(1)", 1)]).unwrap());
        assert_eq!(validate_cell(&k, &bad), Err(CellDefect::Augmentation));
        let v = atom(&k, "(1)");
        assert!(validate_cell(&k, &v.identity().identity()).is_ok());
        assert!(validate_cell(&k, &atom(&k, "(0,1,2)")).is_ok());
    }
}
