//! The ω-category ν(K): cell enumeration and the λν comparison.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::cell::{compose, validate_cell, Cell};
use crate::complex::{atom_tableau, Complex};
use crate::error::{Error, Result};
use crate::omega::{composable_pairs, OmegaCategory};
use crate::snf::cokernel;
use crate::solve::Solver;

/// ν(K) as an [`OmegaCategory`].
#[derive(Clone)]
pub struct Nu {
    pub complex: Arc<Complex>,
}

impl Nu {
    pub fn new(complex: Arc<Complex>) -> Self {
        Nu { complex }
    }

    /// The atom ⟨b⟩ for the generator with the given token.
    pub fn atom(&self, token: &str) -> Result<Cell> {
        let (p, i) = self
            .complex
            .locate(token)
            .ok_or_else(|| Error::Structural(format!("unknown token {token}")))?;
        Ok(atom_tableau(&self.complex, p, i).cell)
    }
}

impl OmegaCategory for Nu {
    type Cell = Cell;

    fn dim(&self, x: &Cell) -> usize {
        x.dim()
    }

    fn s(&self, x: &Cell, j: usize) -> Result<Cell> {
        x.s(j)
    }

    fn t(&self, x: &Cell, j: usize) -> Result<Cell> {
        x.t(j)
    }

    fn identity(&self, x: &Cell) -> Cell {
        x.identity()
    }

    fn compose(&self, x: &Cell, y: &Cell, j: usize) -> Result<Cell> {
        compose(x, y, j)
    }

    fn is_valid(&self, x: &Cell) -> bool {
        validate_cell(&self.complex, x).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct CellEnumeration {
    /// `by_dim[i]` lists the i-cells, sorted.
    pub by_dim: Vec<Vec<Cell>>,
    pub complete: bool,
}

impl CellEnumeration {
    pub fn non_identity(&self, i: usize) -> usize {
        self.by_dim[i].iter().filter(|c| !c.is_identity()).count()
    }
}

/// All cells of ν(K) of dimension ≤ `max_dim`.
///
/// An i-cell is a pair of parallel (i−1)-cells (a, b) together with a
/// positive filler x of `b_top − a_top`; parallel means equal rows below
/// i−1.
pub fn enumerate_cells(k: &Arc<Complex>, max_dim: usize, bound: Option<i64>) -> CellEnumeration {
    let solver = Solver::new(k.clone(), bound);
    enumerate_cells_with(&solver, max_dim)
}

pub fn enumerate_cells_with(solver: &Solver, max_dim: usize) -> CellEnumeration {
    let mut complete = true;
    let v = solver.vertices_with_aug(1);
    complete &= v.complete;
    let mut by_dim: Vec<Vec<Cell>> = vec![v.chains.iter().cloned().map(Cell::object).collect()];
    by_dim[0].sort();
    for i in 1..=max_dim {
        let prev = &by_dim[i - 1];
        let mut groups: HashMap<&[[crate::Chain; 2]], Vec<&Cell>> = HashMap::new();
        for c in prev {
            groups.entry(&c.rows()[..i - 1]).or_default().push(c);
        }
        let mut level = Vec::new();
        for c in prev {
            let lower = &c.rows()[..i - 1];
            for b in &groups[lower] {
                let y = b.top().sub(c.top());
                let sol = solver.fill(&y);
                complete &= sol.complete;
                for x in &sol.chains {
                    let mut rows = lower.to_vec();
                    rows.push([c.top().clone(), b.top().clone()]);
                    rows.push([x.clone(), x.clone()]);
                    level.push(Cell::from_rows(rows));
                }
            }
        }
        level.sort();
        by_dim.push(level);
    }
    CellEnumeration { by_dim, complete }
}

/// One degree of the λν comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaDegree {
    pub degree: usize,
    pub generators: usize,
    pub relations: usize,
    pub rank: usize,
    pub torsion: Vec<i128>,
    pub basis_size: usize,
}

impl LambdaDegree {
    pub fn matches(&self) -> bool {
        self.rank == self.basis_size && self.torsion.is_empty()
    }
}

/// Presents λ(ν K)_i by the i-cells modulo `[x ∗_j y] = [x] + [y]` and reads
/// off rank and torsion.
pub fn lambda_of_nu(k: &Arc<Complex>, max_dim: usize, bound: Option<i64>) -> Result<Vec<LambdaDegree>> {
    let cells = enumerate_cells(k, max_dim, bound);
    if !cells.complete {
        return Err(Error::Incomplete("cell enumeration is not certified complete".into()));
    }
    let nu = Nu::new(k.clone());
    let mut out = Vec::new();
    for i in 0..=max_dim {
        let level = &cells.by_dim[i];
        let index: HashMap<&Cell, usize> = level.iter().enumerate().map(|(n, c)| (c, n)).collect();
        let mut rels: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
        for j in 0..i {
            for (x, y, xy) in composable_pairs(&nu, level, j) {
                let z = *index
                    .get(&xy)
                    .ok_or_else(|| Error::Domain("a composite fell outside the enumerated cells".into()))?;
                let mut row: HashMap<usize, i64> = HashMap::new();
                *row.entry(z).or_default() += 1;
                *row.entry(index[&x]).or_default() -= 1;
                *row.entry(index[&y]).or_default() -= 1;
                let mut r: Vec<(usize, i64)> = row.into_iter().filter(|t| t.1 != 0).collect();
                r.sort();
                if !r.is_empty() {
                    rels.insert(r);
                }
            }
        }
        let dense: Vec<Vec<i64>> = rels
            .iter()
            .map(|r| {
                let mut v = vec![0; level.len()];
                for &(c, x) in r {
                    v[c] = x;
                }
                v
            })
            .collect();
        let (rank, torsion) = cokernel(&dense, level.len());
        out.push(LambdaDegree {
            degree: i,
            generators: level.len(),
            relations: dense.len(),
            rank,
            torsion,
            basis_size: k.rank(i),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::c_delta_arc;

    #[test]
    fn triangle_cells() {
        let e = enumerate_cells(&c_delta_arc(2), 2, None);
        assert!(e.complete);
        assert_eq!(e.by_dim[0].len(), 3);
        assert_eq!(e.by_dim[1].len(), 7);
        assert_eq!(e.non_identity(1), 4);
        assert_eq!(e.non_identity(2), 1);
        let p = enumerate_cells(&c_delta_arc(0), 3, None);
        assert!(p.by_dim.iter().all(|l| l.len() == 1));
    }

    #[test]
    fn lambda_small() {
        let l = lambda_of_nu(&c_delta_arc(2), 2, None).unwrap();
        assert_eq!(l[1].generators, 7);
        assert!(l.iter().all(|d| d.matches()), "{l:?}");
        let p = lambda_of_nu(&c_delta_arc(0), 0, None).unwrap();
        assert_eq!(p[0].rank, 1);
    }
}
