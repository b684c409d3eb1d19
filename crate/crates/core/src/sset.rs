//! Truncated simplicial sets materialized as tables, with slices, products,
//! the décalage homotopy and the Street nerve.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::hom::hom_enumerate_with;
use crate::morphism::AdcMorphism;
use crate::simplex::{c_delta_arc, c_of_map, join_maps, MonotoneMap};
use crate::solve::Solver;

/// A simplicial set known in dimensions `0..=cap`. Simplices are stored as
/// records of type `T`; every monotone map between dimensions up to the cap
/// has a precomputed action table.
#[derive(Clone)]
pub struct SimplicialSet<T> {
    cap: usize,
    simplices: Vec<Vec<T>>,
    lookup: Vec<HashMap<T, usize>>,
    action: HashMap<MonotoneMap, Vec<usize>>,
}

/// All monotone maps between `Δm` and `Δn` for `m, n ≤ cap`.
pub fn all_maps(cap: usize) -> Vec<MonotoneMap> {
    let mut v = Vec::new();
    for m in 0..=cap {
        for n in 0..=cap {
            v.extend(MonotoneMap::all(m, n));
        }
    }
    v
}

impl<T: Clone + Eq + Hash + Send + Sync> SimplicialSet<T> {
    /// `simplices[n]` lists the n-simplices; `act(φ, x)` computes `X_φ(x)`
    /// for `φ: Δm → Δn` and an n-simplex `x`.
    pub fn build<F>(cap: usize, simplices: Vec<Vec<T>>, act: F) -> Result<Self>
    where
        F: Fn(&MonotoneMap, &T) -> T + Sync,
    {
        if simplices.len() != cap + 1 {
            return Err(Error::Structural(format!("{} levels given for cap {cap}", simplices.len())));
        }
        let lookup: Vec<HashMap<T, usize>> = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect())
            .collect();
        let maps = all_maps(cap);
        let tables: Vec<Result<(MonotoneMap, Vec<usize>)>> = maps
            .into_par_iter()
            .map(|phi| {
                let (m, n) = (phi.src(), phi.dst());
                let mut table = Vec::with_capacity(simplices[n].len());
                for x in &simplices[n] {
                    let y = act(&phi, x);
                    match lookup[m].get(&y) {
                        Some(&i) => table.push(i),
                        None => {
                            return Err(Error::Structural(format!(
                                "the action of ({phi}) leaves the listed {m}-simplices"
                            )))
                        }
                    }
                }
                Ok((phi, table))
            })
            .collect();
        let mut action = HashMap::new();
        for t in tables {
            let (phi, table) = t?;
            action.insert(phi, table);
        }
        Ok(SimplicialSet { cap, simplices, lookup, action })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices.get(n).map_or(0, |l| l.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|l| l.len()).collect()
    }

    pub fn simplex(&self, n: usize, i: usize) -> &T {
        &self.simplices[n][i]
    }

    pub fn simplices(&self, n: usize) -> &[T] {
        &self.simplices[n]
    }

    pub fn index_of(&self, n: usize, x: &T) -> Option<usize> {
        self.lookup.get(n)?.get(x).copied()
    }

    /// `X_φ` on the n-simplex with index `i`.
    pub fn act(&self, phi: &MonotoneMap, i: usize) -> usize {
        self.action[phi][i]
    }

    /// The accessor `x_{i₀,…,i_m}`.
    pub fn facet(&self, n: usize, i: usize, indices: &[usize]) -> Result<usize> {
        let phi = MonotoneMap::from_indices(n, indices).map_err(|_| {
            Error::Domain(format!("{indices:?} is not a weakly increasing list in [0,{n}]"))
        })?;
        if phi.src() > self.cap {
            return Err(Error::Cap(format!("a {}-simplex is beyond cap {}", phi.src(), self.cap)));
        }
        Ok(self.act(&phi, i))
    }

    /// True when the simplex is in the image of some degeneracy.
    pub fn is_degenerate(&self, n: usize, i: usize) -> bool {
        (0..n).any(|k| {
            let sigma = MonotoneMap::new(n, n - 1, (0..=n).map(|v| if v <= k { v } else { v - 1 }).collect()).unwrap();
            let delta = MonotoneMap::new(n - 1, n, (0..n).map(|v| if v < k { v } else { v + 1 }).collect()).unwrap();
            // X_σ(X_δ(x)) = X_{δσ}(x)
            self.act(&delta.after(&sigma), i) == i
        })
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.cap).map(|n| (0..self.count(n)).filter(|&i| !self.is_degenerate(n, i)).count()).collect()
    }

    /// Checks `X_id = id` and `X_{ψφ} = X_φ X_ψ` for every composable pair.
    pub fn check_identities(&self) -> std::result::Result<usize, String> {
        let mut checked = 0;
        for n in 0..=self.cap {
            let id = MonotoneMap::identity(n);
            if self.action[&id].iter().enumerate().any(|(i, &j)| i != j) {
                return Err(format!("identity of Δ{n} acts non-trivially"));
            }
        }
        let maps = all_maps(self.cap);
        let mut by_dst: HashMap<usize, Vec<&MonotoneMap>> = HashMap::new();
        for f in &maps {
            by_dst.entry(f.dst()).or_default().push(f);
        }
        for psi in &maps {
            for phi in by_dst.get(&psi.src()).into_iter().flatten() {
                let comp = psi.after(phi);
                let (t_comp, t_phi, t_psi) = (&self.action[&comp], &self.action[*phi], &self.action[psi]);
                for (x, &y) in t_psi.iter().enumerate() {
                    if t_comp[x] != t_phi[y] {
                        return Err(format!("X_(ψφ) ≠ X_φ X_ψ for ψ = ({psi}), φ = ({phi})"));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }
}

/// A simplicial map given by per-dimension index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn apply(&self, n: usize, i: usize) -> usize {
        self.levels[n][i]
    }

    /// Builds `f` from a record-level function, looking results up in `y`.
    pub fn from_fn<S, T, F>(x: &SimplicialSet<S>, y: &SimplicialSet<T>, cap: usize, f: F) -> Result<Self>
    where
        S: Clone + Eq + Hash + Send + Sync,
        T: Clone + Eq + Hash + Send + Sync,
        F: Fn(usize, &S) -> T,
    {
        let mut levels = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut l = Vec::with_capacity(x.count(n));
            for s in x.simplices(n) {
                let t = f(n, s);
                l.push(
                    y.index_of(n, &t)
                        .ok_or_else(|| Error::Domain(format!("image of an {n}-simplex is not in the target")))?,
                );
            }
            levels.push(l);
        }
        Ok(SimplicialMap { levels })
    }

    /// Checks `f X_φ = Y_φ f` for every φ up to the map's cap.
    pub fn is_simplicial<S, T>(&self, x: &SimplicialSet<S>, y: &SimplicialSet<T>) -> bool
    where
        S: Clone + Eq + Hash + Send + Sync,
        T: Clone + Eq + Hash + Send + Sync,
    {
        let cap = self.levels.len() - 1;
        all_maps(cap).iter().all(|phi| {
            (0..x.count(phi.dst())).all(|i| {
                self.apply(phi.src(), x.act(phi, i)) == y.act(phi, self.apply(phi.dst(), i))
            })
        })
    }
}

/// The standard simplex Δⁿ up to a cap: k-simplices are maps Δk → Δn.
pub fn standard_simplex(n: usize, cap: usize) -> SimplicialSet<MonotoneMap> {
    let simplices = (0..=cap).map(|k| MonotoneMap::all(k, n)).collect();
    SimplicialSet::build(cap, simplices, |phi, x| x.after(phi)).expect("Δⁿ is closed under precomposition")
}

/// `X × Y`.
pub fn product<S, T>(x: &SimplicialSet<S>, y: &SimplicialSet<T>) -> SimplicialSet<(usize, usize)>
where
    S: Clone + Eq + Hash + Send + Sync,
    T: Clone + Eq + Hash + Send + Sync,
{
    let cap = x.cap().min(y.cap());
    let simplices = (0..=cap)
        .map(|n| (0..x.count(n)).flat_map(|a| (0..y.count(n)).map(move |b| (a, b))).collect())
        .collect();
    SimplicialSet::build(cap, simplices, |phi, &(a, b)| (x.act(phi, a), y.act(phi, b))).expect("products are closed")
}

/// An under- or over-slice of a table `Y` at a simplex, with its projection.
pub struct Slice {
    pub set: SimplicialSet<usize>,
    /// Index in `Y` of the projected n-simplex, per dimension.
    pub projection: SimplicialMap,
    pub base_dim: usize,
    pub base: usize,
}

/// `y\Y`: n-simplices are `y′ ∈ Y_{m+1+n}` with `y′_{0..m} = y`.
pub fn slice_under<T: Clone + Eq + Hash + Send + Sync>(y: &SimplicialSet<T>, m: usize, base: usize) -> Result<Slice> {
    slice_generic(y, m, base, true)
}

/// `Y/y`: n-simplices are `y′ ∈ Y_{n+1+m}` with `y′_{n+1..n+1+m} = y`.
pub fn slice_over<T: Clone + Eq + Hash + Send + Sync>(y: &SimplicialSet<T>, m: usize, base: usize) -> Result<Slice> {
    slice_generic(y, m, base, false)
}

fn slice_generic<T: Clone + Eq + Hash + Send + Sync>(y: &SimplicialSet<T>, m: usize, base: usize, under: bool) -> Result<Slice> {
    if m + 1 > y.cap() {
        return Err(Error::Cap(format!("slicing at an {m}-simplex needs cap > {m}, have {}", y.cap())));
    }
    if base >= y.count(m) {
        return Err(Error::Domain(format!("no {m}-simplex with index {base}")));
    }
    let cap = y.cap() - m - 1;
    let fix = |n: usize| if under { MonotoneMap::i_map(m, n) } else { MonotoneMap::j_map(n, m) };
    let proj = |n: usize| if under { MonotoneMap::j_map(m, n) } else { MonotoneMap::i_map(n, m) };
    let simplices: Vec<Vec<usize>> = (0..=cap)
        .map(|n| (0..y.count(m + 1 + n)).filter(|&z| y.act(&fix(n), z) == base).collect())
        .collect();
    let projection = SimplicialMap {
        levels: simplices.iter().enumerate().map(|(n, l)| l.iter().map(|&z| y.act(&proj(n), z)).collect()).collect(),
    };
    let idm = MonotoneMap::identity(m);
    let set = SimplicialSet::build(cap, simplices, |psi, &z| {
        let op = if under { join_maps(&idm, psi) } else { join_maps(psi, &idm) };
        y.act(&op, z)
    })?;
    Ok(Slice { set, projection, base_dim: m, base })
}

/// `X/y` relative to `f: X → Y` under `y ∈ Y_m`: pairs `(y′, x)` with
/// `y′ ∈ Y_{m+1+n}`, `y′_{0..m} = y` and `y′_{m+1..m+1+n} = f(x)`.
pub fn relative_under<S, T>(
    x: &SimplicialSet<S>,
    y: &SimplicialSet<T>,
    f: &SimplicialMap,
    m: usize,
    base: usize,
) -> Result<SimplicialSet<(usize, usize)>>
where
    S: Clone + Eq + Hash + Send + Sync,
    T: Clone + Eq + Hash + Send + Sync,
{
    if m + 1 > y.cap() {
        return Err(Error::Cap(format!("slicing at an {m}-simplex needs cap > {m}, have {}", y.cap())));
    }
    let cap = (y.cap() - m - 1).min(x.cap()).min(f.levels.len() - 1);
    let simplices: Vec<Vec<(usize, usize)>> = (0..=cap)
        .map(|n| {
            let (i, j) = (MonotoneMap::i_map(m, n), MonotoneMap::j_map(m, n));
            let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
            for a in 0..x.count(n) {
                by_image.entry(f.apply(n, a)).or_default().push(a);
            }
            let mut out = Vec::new();
            for z in 0..y.count(m + 1 + n) {
                if y.act(&i, z) != base {
                    continue;
                }
                for &a in by_image.get(&y.act(&j, z)).into_iter().flatten() {
                    out.push((z, a));
                }
            }
            out
        })
        .collect();
    let idm = MonotoneMap::identity(m);
    SimplicialSet::build(cap, simplices, |psi, &(z, a)| (y.act(&join_maps(&idm, psi), z), x.act(psi, a)))
}

/// A bisimplicial set known in bidegrees `(m, n)` with `m + 1 + n ≤ cap`.
/// Built as `S(f)` for a simplicial map `f: X → Y`: the (m, n)-cells are
/// pairs `(y, x)` with `y ∈ Y_{m+1+n}`, `x ∈ X_n` and `y_{m+1..m+1+n} = f(x)`.
pub struct Bisimplicial {
    cap: usize,
    cells: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    lookup: HashMap<(usize, usize), HashMap<(usize, usize), usize>>,
    // (φ, ψ) ↦ index table on the (φ.dst, ψ.dst) cells
    action: HashMap<(MonotoneMap, MonotoneMap), Vec<usize>>,
}

impl Bisimplicial {
    pub fn build<S, T>(x: &SimplicialSet<S>, y: &SimplicialSet<T>, f: &SimplicialMap) -> Result<Bisimplicial>
    where
        S: Clone + Eq + Hash + Send + Sync,
        T: Clone + Eq + Hash + Send + Sync,
    {
        if y.cap() == 0 {
            return Err(Error::Cap("S(f) needs a target known in dimension 1".into()));
        }
        let cap = y.cap();
        let xcap = x.cap().min(f.levels.len() - 1);
        let degrees: Vec<(usize, usize)> =
            (0..cap).flat_map(|m| (0..cap - m).map(move |n| (m, n))).filter(|&(_, n)| n <= xcap).collect();
        let cells: BTreeMap<(usize, usize), Vec<(usize, usize)>> = degrees
            .par_iter()
            .map(|&(m, n)| {
                let j = MonotoneMap::j_map(m, n);
                let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
                for a in 0..x.count(n) {
                    by_image.entry(f.apply(n, a)).or_default().push(a);
                }
                let mut out = Vec::new();
                for z in 0..y.count(m + 1 + n) {
                    for &a in by_image.get(&y.act(&j, z)).into_iter().flatten() {
                        out.push((z, a));
                    }
                }
                ((m, n), out)
            })
            .collect();
        let lookup = cells
            .iter()
            .map(|(&k, l)| (k, l.iter().enumerate().map(|(i, &c)| (c, i)).collect::<HashMap<_, _>>()))
            .collect::<HashMap<_, _>>();
        let ops: Vec<(MonotoneMap, MonotoneMap)> = degrees
            .iter()
            .flat_map(|&(m, n)| {
                degrees.iter().flat_map(move |&(m2, n2)| {
                    MonotoneMap::all(m2, m)
                        .into_iter()
                        .flat_map(move |phi| MonotoneMap::all(n2, n).into_iter().map(move |psi| (phi.clone(), psi)))
                })
            })
            .collect();
        let action = ops
            .into_par_iter()
            .map(|(phi, psi)| {
                let (m, n, m2, n2) = (phi.dst(), psi.dst(), phi.src(), psi.src());
                let op = join_maps(&phi, &psi);
                let table = cells[&(m, n)]
                    .iter()
                    .map(|&(z, a)| {
                        let c = (y.act(&op, z), x.act(&psi, a));
                        lookup[&(m2, n2)].get(&c).copied().ok_or_else(|| {
                            Error::Domain(format!("the action of ({phi}; {psi}) leaves the ({m2},{n2})-cells"))
                        })
                    })
                    .collect::<Result<Vec<usize>>>()?;
                Ok(((phi, psi), table))
            })
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(Bisimplicial { cap, cells, lookup, action })
    }

    /// Bidegrees satisfy `m + 1 + n ≤ cap`.
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn cells(&self) -> &BTreeMap<(usize, usize), Vec<(usize, usize)>> {
        &self.cells
    }

    pub fn count(&self, m: usize, n: usize) -> usize {
        self.cells.get(&(m, n)).map_or(0, |l| l.len())
    }

    pub fn cell(&self, m: usize, n: usize, i: usize) -> (usize, usize) {
        self.cells[&(m, n)][i]
    }

    pub fn index_of(&self, m: usize, n: usize, c: &(usize, usize)) -> Option<usize> {
        self.lookup.get(&(m, n))?.get(c).copied()
    }

    /// The action of `(φ, ψ)` on the cell with index `i` in bidegree
    /// `(φ.dst, ψ.dst)`.
    pub fn act(&self, phi: &MonotoneMap, psi: &MonotoneMap, i: usize) -> usize {
        self.action[&(phi.clone(), psi.clone())][i]
    }

    /// Checks `(φ, ψ)(φ′, ψ′) = (φφ′, ψψ′)` and the identity action on every
    /// cell. Returns the number of instances checked.
    pub fn check_bifunctoriality(&self) -> std::result::Result<usize, String> {
        let mut checked = 0;
        for ((phi, psi), table) in &self.action {
            if phi.src() == phi.dst() && psi.src() == psi.dst() && *phi == MonotoneMap::identity(phi.src()) && *psi == MonotoneMap::identity(psi.src()) {
                if table.iter().enumerate().any(|(i, &v)| i != v) {
                    return Err(format!("identity acts nontrivially in bidegree ({}, {})", phi.src(), psi.src()));
                }
            }
            let (m2, n2) = (phi.src(), psi.src());
            for (&(m3, n3), _) in &self.cells {
                for phi2 in MonotoneMap::all(m3, m2) {
                    for psi2 in MonotoneMap::all(n3, n2) {
                        let Some(inner) = self.action.get(&(phi2.clone(), psi2.clone())) else { continue };
                        let whole = &self.action[&(phi.after(&phi2), psi.after(&psi2))];
                        for (i, &v) in table.iter().enumerate() {
                            checked += 1;
                            if inner[v] != whole[i] {
                                return Err(format!("bifunctoriality fails at ({phi}; {psi}) then ({phi2}; {psi2})"));
                            }
                        }
                    }
                }
            }
        }
        Ok(checked)
    }

    /// The forgetful map `U` in bidegree (m, n): `(y, x) ↦ x`.
    pub fn forget(&self, m: usize, n: usize, i: usize) -> usize {
        self.cell(m, n, i).1
    }

    /// Sizes of the diagonal `Diag(S)_n = S_{n,n}` within the cap.
    pub fn diagonal_counts(&self) -> Vec<usize> {
        (0..).take_while(|&n| self.cells.contains_key(&(n, n))).map(|n| self.count(n, n)).collect()
    }

    /// Checks the diagonal is a simplicial set: `(φ, φ)` composes correctly.
    pub fn diagonal_is_simplicial(&self) -> bool {
        let d = self.diagonal_counts().len();
        for n in 0..d {
            for n2 in 0..d {
                for n3 in 0..d {
                    for phi in MonotoneMap::all(n2, n) {
                        for phi2 in MonotoneMap::all(n3, n2) {
                            let comp = phi.after(&phi2);
                            for i in 0..self.count(n, n) {
                                if self.act(&phi2, &phi2, self.act(&phi, &phi, i)) != self.act(&comp, &comp, i) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// Outcome of comparing one column or row of `S(f)` with its slice
/// decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub index: usize,
    pub pieces: usize,
    pub matched: usize,
    pub total: usize,
    pub failure: Option<String>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.matched == self.total
    }
}

/// `S(f)_{m,•} ≅ ∐_{y ∈ Y_m} y\X` relative to `f`: every cell lies in
/// exactly one relative under-slice and the ψ-actions agree.
pub fn column_decomposition<S, T>(
    s: &Bisimplicial,
    x: &SimplicialSet<S>,
    y: &SimplicialSet<T>,
    f: &SimplicialMap,
    m: usize,
) -> Result<DecompositionReport>
where
    S: Clone + Eq + Hash + Send + Sync,
    T: Clone + Eq + Hash + Send + Sync,
{
    let idm = MonotoneMap::identity(m);
    let mut matched = 0;
    let mut total = 0;
    let mut failure = None;
    let ns: Vec<usize> = (0..).take_while(|&n| s.cells.contains_key(&(m, n))).collect();
    for b in 0..y.count(m) {
        let piece = relative_under(x, y, f, m, b)?;
        for &n in ns.iter().filter(|&&n| n <= piece.cap()) {
            for (i, c) in piece.simplices(n).iter().enumerate() {
                match s.index_of(m, n, c) {
                    Some(k) => {
                        matched += 1;
                        for &n2 in ns.iter().filter(|&&n2| n2 <= piece.cap()) {
                            for psi in MonotoneMap::all(n2, n) {
                                let a = s.cell(m, n2, s.act(&idm, &psi, k));
                                if a != *piece.simplex(n2, piece.act(&psi, i)) && failure.is_none() {
                                    failure = Some(format!("ψ=({psi}) disagrees over the {m}-simplex {b}"));
                                }
                            }
                        }
                    }
                    None => failure = failure.or(Some(format!("slice cell over {b} missing from S(f)"))),
                }
            }
        }
    }
    for &n in &ns {
        total += s.count(m, n);
    }
    Ok(DecompositionReport { index: m, pieces: y.count(m), matched, total, failure })
}

/// `S(f)_{•,n} ≅ ∐_{x ∈ X_n} Y/f(x)`, with `U` constant on each piece.
pub fn row_decomposition<S, T>(
    s: &Bisimplicial,
    x: &SimplicialSet<S>,
    y: &SimplicialSet<T>,
    f: &SimplicialMap,
    n: usize,
) -> Result<DecompositionReport>
where
    S: Clone + Eq + Hash + Send + Sync,
    T: Clone + Eq + Hash + Send + Sync,
{
    let idn = MonotoneMap::identity(n);
    let ms: Vec<usize> = (0..).take_while(|&m| s.cells.contains_key(&(m, n))).collect();
    let mut matched = 0;
    let mut failure = None;
    for a in 0..x.count(n) {
        let piece = slice_over(y, n, f.apply(n, a))?;
        for &m in ms.iter().filter(|&&m| m <= piece.set.cap()) {
            for (i, &z) in piece.set.simplices(m).iter().enumerate() {
                match s.index_of(m, n, &(z, a)) {
                    Some(k) => {
                        matched += 1;
                        if s.forget(m, n, k) != a {
                            failure = failure.or(Some(format!("U moves a cell over the {n}-simplex {a}")));
                        }
                        for &m2 in ms.iter().filter(|&&m2| m2 <= piece.set.cap()) {
                            for phi in MonotoneMap::all(m2, m) {
                                let c = s.cell(m2, n, s.act(&phi, &idn, k));
                                if c != (*piece.set.simplex(m2, piece.set.act(&phi, i)), a) && failure.is_none() {
                                    failure = Some(format!("φ=({phi}) disagrees over the {n}-simplex {a}"));
                                }
                            }
                        }
                    }
                    None => failure = failure.or(Some(format!("slice simplex over {a} missing from S(f)"))),
                }
            }
        }
    }
    let total = ms.iter().map(|&m| s.count(m, n)).sum();
    Ok(DecompositionReport { index: n, pieces: x.count(n), matched, total, failure })
}

/// `θ_φ: Δ(k+1+n) → Δ(k+1+n)` for `φ: Δk → Δ1`.
pub fn theta_map(phi: &MonotoneMap, n: usize) -> MonotoneMap {
    let k = phi.src();
    let image = (0..=k + 1 + n)
        .map(|i| if i <= k { if phi.at(i) == 0 { i } else { k + 1 } } else { i })
        .collect();
    MonotoneMap::new(k + 1 + n, k + 1 + n, image).expect("θ_φ is monotone")
}

#[derive(Clone, Debug, Default)]
pub struct DecalageReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl DecalageReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the contraction of `X/x` for an n-simplex `x`: the map
/// `h(φ, x′) = X_{θ_φ}(x′)` lands in the slice, is simplicial, is the
/// identity at φ ≡ 0 and the constant map through `X_{σ₀}(x)` at φ ≡ 1.
pub fn decalage_homotopy<T: Clone + Eq + Hash + Send + Sync>(
    x: &SimplicialSet<T>,
    n: usize,
    base: usize,
) -> Result<DecalageReport> {
    let over = slice_over(x, n, base)?;
    let s = &over.set;
    let mut rep = DecalageReport::default();
    let sigma0 = MonotoneMap::new(n + 1, n, std::iter::once(0).chain(0..=n).collect()).unwrap();
    let v0 = x.act(&sigma0, base);
    let Some(v0) = s.index_of(0, &v0) else {
        rep.failures.push("X_σ₀(x) is not a vertex of the slice".into());
        return Ok(rep);
    };
    let cap = s.cap();
    let delta1 = standard_simplex(1, cap);
    let h = |k: usize, phi: &MonotoneMap, z: usize| -> Option<usize> {
        let zz = x.act(&theta_map(phi, n), *s.simplex(k, z));
        s.index_of(k, &zz)
    };
    for k in 0..=cap {
        let to_point = MonotoneMap::constant(k, 0, 0);
        let const_k = s.act(&to_point, v0);
        for (pi, phi) in delta1.simplices(k).iter().enumerate() {
            for z in 0..s.count(k) {
                rep.checked += 1;
                let Some(hz) = h(k, phi, z) else {
                    rep.failures.push(format!("h({phi}, {z}) leaves the slice in dimension {k}"));
                    continue;
                };
                if phi.image().iter().all(|&v| v == 0) && hz != z {
                    rep.failures.push(format!("h(0, {z}) ≠ {z} in dimension {k}"));
                }
                if phi.image().iter().all(|&v| v == 1) && hz != const_k {
                    rep.failures.push(format!("h(1, {z}) is not the constant simplex in dimension {k}"));
                }
                for k2 in 0..=k {
                    for psi in MonotoneMap::all(k2, k) {
                        let lhs = h(k2, delta1.simplex(k2, delta1.act(&psi, pi)), s.act(&psi, z));
                        if lhs != Some(s.act(&psi, hz)) {
                            rep.failures.push(format!("h is not simplicial at ψ = ({psi}), φ = ({phi})"));
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Checks `θ_φ (ψ ⨿ Δn) = (ψ ⨿ Δn) θ_{φψ}` for all `ψ: Δk′ → Δk`,
/// `φ: Δk → Δ1`, `k, k′ ≤ cap`.
pub fn theta_square_holds(n: usize, cap: usize) -> bool {
    let idn = MonotoneMap::identity(n);
    (0..=cap).all(|k| {
        MonotoneMap::all(k, 1).iter().all(|phi| {
            (0..=cap).all(|k2| {
                MonotoneMap::all(k2, k).iter().all(|psi| {
                    let j = join_maps(psi, &idn);
                    theta_map(phi, n).after(&j) == j.after(&theta_map(&phi.after(psi), n))
                })
            })
        })
    })
}

/// Street nerve tables: n-simplices are morphisms `c(Δⁿ) → K`.
pub struct Nerve {
    pub set: SimplicialSet<AdcMorphism>,
    pub complete: bool,
    pub complex: Arc<Complex>,
}

pub fn nerve(k: &Arc<Complex>, cap: usize, bound: Option<i64>) -> Result<Nerve> {
    let solver = Solver::new(k.clone(), bound);
    nerve_with(&solver, cap)
}

pub fn nerve_with(solver: &Solver, cap: usize) -> Result<Nerve> {
    let levels: Vec<_> = (0..=cap)
        .into_par_iter()
        .map(|n| hom_enumerate_with(solver, &c_delta_arc(n), &HashMap::new()))
        .collect();
    let complete = levels.iter().all(|l| l.complete);
    let simplices: Vec<Vec<AdcMorphism>> = levels.into_iter().map(|l| l.morphisms).collect();
    let cmaps: HashMap<MonotoneMap, AdcMorphism> = all_maps(cap).into_iter().map(|p| (p.clone(), c_of_map(&p))).collect();
    let set = SimplicialSet::build(cap, simplices, |phi, x| x.after(&cmaps[phi]).expect("ends match"))?;
    Ok(Nerve { set, complete, complex: solver.complex().clone() })
}

impl Nerve {
    /// Index of the simplex given by a morphism out of `c(Δⁿ)`.
    pub fn index_of(&self, x: &AdcMorphism) -> Option<usize> {
        let n = x.source().top_degree();
        self.set.index_of(n, x)
    }

    /// `N(f): N(K) → N(L)` on tables.
    pub fn map_to(&self, other: &Nerve, f: &AdcMorphism) -> Result<SimplicialMap> {
        let cap = self.set.cap().min(other.set.cap());
        SimplicialMap::from_fn(&self.set, &other.set, cap, |_, x| f.after(x).expect("ends match"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::c_delta_arc;

    #[test]
    fn standard_triangle() {
        let d2 = standard_simplex(2, 3);
        assert!(d2.check_identities().is_ok());
        assert_eq!(d2.nondegenerate_counts(), vec![3, 3, 1, 0]);
        let top = d2.index_of(2, &MonotoneMap::identity(2)).unwrap();
        let long = d2.facet(2, top, &[0, 2]).unwrap();
        assert_eq!(d2.simplex(1, long).image(), &[0, 2]);
        let loop0 = d2.facet(2, top, &[0, 0]).unwrap();
        assert!(d2.is_degenerate(1, loop0));
        let over = slice_over(&d2, 0, 2).unwrap();
        assert_eq!(over.set.count(0), 3);
    }

    #[test]
    fn nerve_of_o1_is_delta1() {
        let n = nerve(&c_delta_arc(1), 2, None).unwrap();
        assert!(n.complete);
        assert_eq!(n.set.nondegenerate_counts(), vec![2, 1, 0]);
        assert_eq!(n.set.counts(), standard_simplex(1, 2).counts());
        let total: usize = (0..2).map(|v| slice_under(&n.set, 0, v).unwrap().set.count(0)).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn point_slices() {
        let p = standard_simplex(0, 2);
        let s = slice_under(&p, 0, 0).unwrap();
        assert_eq!(s.set.counts(), vec![1, 1]);
        let r = decalage_homotopy(&p, 0, 0).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn decalage_on_triangle() {
        let d2 = standard_simplex(2, 3);
        let r = decalage_homotopy(&d2, 0, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(theta_square_holds(0, 2) && theta_square_holds(2, 2));
    }
}
