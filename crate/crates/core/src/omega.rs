//! A minimal strict ω-category interface and an exhaustive axiom checker
//! over a finite list of cells.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::Result;

pub trait OmegaCategory {
    type Cell: Clone + Eq + Hash + Debug;

    fn dim(&self, x: &Self::Cell) -> usize;
    /// Iterated source; `s(x, dim x) = x`.
    fn s(&self, x: &Self::Cell, j: usize) -> Result<Self::Cell>;
    fn t(&self, x: &Self::Cell, j: usize) -> Result<Self::Cell>;
    fn identity(&self, x: &Self::Cell) -> Self::Cell;
    /// `x ∗_j y`; cells of lower dimension are padded with identities.
    fn compose(&self, x: &Self::Cell, y: &Self::Cell, j: usize) -> Result<Self::Cell>;
    fn is_valid(&self, x: &Self::Cell) -> bool;

    fn pad_to(&self, x: &Self::Cell, d: usize) -> Self::Cell {
        let mut c = x.clone();
        while self.dim(&c) < d {
            c = self.identity(&c);
        }
        c
    }
}

/// Counts of checked instances per law, with the first failure if any.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub laws: BTreeMap<String, (usize, Option<String>)>,
}

impl AxiomReport {
    fn record(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        let e = self.laws.entry(law.to_string()).or_insert((0, None));
        e.0 += 1;
        if !ok && e.1.is_none() {
            e.1 = Some(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.laws.values().all(|(_, f)| f.is_none())
    }

    pub fn total(&self) -> usize {
        self.laws.values().map(|(n, _)| n).sum()
    }

    pub fn failures(&self) -> Vec<(String, String)> {
        self.laws.iter().filter_map(|(k, (_, f))| f.clone().map(|f| (k.clone(), f))).collect()
    }
}

/// Checks globularity, validity and closure of composites, associativity,
/// unit laws, identity functoriality, boundaries of composites and
/// interchange on every composable configuration of the given cells.
/// `cells[i]` must list the i-cells.
pub fn check_axioms<C: OmegaCategory>(cat: &C, cells: &[Vec<C::Cell>]) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let known: Vec<std::collections::HashSet<&C::Cell>> = cells.iter().map(|l| l.iter().collect()).collect();
    for (i, level) in cells.iter().enumerate() {
        for x in level {
            rep.record("valid", cat.is_valid(x), || format!("{x:?}"));
            rep.record("dimension", cat.dim(x) == i, || format!("{x:?}"));
            for k in 0..i {
                for j in 0..k {
                    let ok = matches!(
                        (cat.s(x, j), cat.s(&cat.s(x, k).unwrap(), j), cat.s(&cat.t(x, k).unwrap(), j),
                         cat.t(x, j), cat.t(&cat.s(x, k).unwrap(), j), cat.t(&cat.t(x, k).unwrap(), j)),
                        (Ok(a), Ok(b), Ok(c), Ok(d), Ok(e), Ok(f)) if a == b && b == c && d == e && e == f
                    );
                    rep.record("globularity", ok, || format!("{x:?} at ({j},{k})"));
                }
            }
            let id = cat.identity(x);
            let ok = cat.s(&id, i).ok().as_ref() == Some(x) && cat.t(&id, i).ok().as_ref() == Some(x);
            rep.record("identity boundaries", ok, || format!("{x:?}"));
        }
    }
    for i in 1..cells.len() {
        for j in 0..i {
            let pairs = composable_pairs(cat, &cells[i], j);
            // closure, validity, boundaries, identities
            for (x, y, xy) in &pairs {
                rep.record("composite valid", cat.is_valid(xy) && known[i].contains(xy), || format!("{x:?} ∗{j} {y:?}"));
                let sb = if j + 1 == i {
                    cat.s(y, i - 1).ok() == cat.s(xy, i - 1).ok()
                        && cat.t(x, i - 1).ok() == cat.t(xy, i - 1).ok()
                } else {
                    let (sx, sy) = (cat.s(x, i - 1).unwrap(), cat.s(y, i - 1).unwrap());
                    let (tx, ty) = (cat.t(x, i - 1).unwrap(), cat.t(y, i - 1).unwrap());
                    cat.compose(&sx, &sy, j).ok() == cat.s(xy, i - 1).ok()
                        && cat.compose(&tx, &ty, j).ok() == cat.t(xy, i - 1).ok()
                };
                rep.record("boundary of composite", sb, || format!("{x:?} ∗{j} {y:?}"));
                let lhs = cat.identity(xy);
                let rhs = cat.compose(&cat.identity(x), &cat.identity(y), j);
                rep.record("identity functoriality", rhs.ok() == Some(lhs), || format!("{x:?} ∗{j} {y:?}"));
            }
            for x in &cells[i] {
                let sx = cat.pad_to(&cat.s(x, j).unwrap(), i);
                let tx = cat.pad_to(&cat.t(x, j).unwrap(), i);
                rep.record("right unit", cat.compose(x, &sx, j).ok().as_ref() == Some(x), || format!("{x:?} at {j}"));
                rep.record("left unit", cat.compose(&tx, x, j).ok().as_ref() == Some(x), || format!("{x:?} at {j}"));
            }
            // associativity
            let mut by_target: HashMap<C::Cell, Vec<&C::Cell>> = HashMap::new();
            for z in &cells[i] {
                by_target.entry(cat.t(z, j).unwrap()).or_default().push(z);
            }
            for (x, y, xy) in &pairs {
                let sy = cat.s(y, j).unwrap();
                for z in by_target.get(&sy).into_iter().flatten() {
                    let l = cat.compose(xy, z, j);
                    let r = cat.compose(y, z, j).and_then(|yz| cat.compose(x, &yz, j));
                    rep.record("associativity", matches!((&l, &r), (Ok(a), Ok(b)) if a == b), || {
                        format!("({x:?} ∗{j} {y:?}) ∗{j} {z:?}")
                    });
                }
            }
            // interchange with k < j
            for k in 0..j {
                let mut by_tk: HashMap<C::Cell, Vec<usize>> = HashMap::new();
                for (n, (_, _, zw)) in pairs.iter().enumerate() {
                    by_tk.entry(cat.t(zw, k).unwrap()).or_default().push(n);
                }
                for (x, y, xy) in &pairs {
                    let key = cat.s(xy, k).unwrap();
                    for &n in by_tk.get(&key).into_iter().flatten() {
                        let (z, w, zw) = &pairs[n];
                        let l = cat.compose(xy, zw, k);
                        let r = match (cat.compose(x, z, k), cat.compose(y, w, k)) {
                            (Ok(xz), Ok(yw)) => cat.compose(&xz, &yw, j),
                            (Err(e), _) | (_, Err(e)) => Err(e),
                        };
                        rep.record("interchange", matches!((&l, &r), (Ok(a), Ok(b)) if a == b), || {
                            format!("({x:?} ∗{j} {y:?}) ∗{k} ({z:?} ∗{j} {w:?})")
                        });
                    }
                }
            }
        }
    }
    rep
}

/// All `(x, y, x ∗_j y)` with x, y in `level`.
pub fn composable_pairs<C: OmegaCategory>(cat: &C, level: &[C::Cell], j: usize) -> Vec<(C::Cell, C::Cell, C::Cell)> {
    let mut by_target: HashMap<C::Cell, Vec<&C::Cell>> = HashMap::new();
    for y in level {
        by_target.entry(cat.t(y, j).unwrap()).or_default().push(y);
    }
    let mut out = Vec::new();
    for x in level {
        let sx = cat.s(x, j).unwrap();
        for y in by_target.get(&sx).into_iter().flatten() {
            if let Ok(xy) = cat.compose(x, y, j) {
                out.push((x.clone(), (*y).clone(), xy));
            }
        }
    }
    out
}
