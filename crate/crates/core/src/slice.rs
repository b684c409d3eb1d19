//! Under-slices `A\c` of presented ω-categories, oplax transformations as
//! morphisms out of the cylinder `cΔ¹ ⊗ K`, their vertical composition, and
//! the slice functor induced by an oplax triangle.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cell::{compose, map_cell, validate_cell, Cell};
use crate::chain::Chain;
use crate::complex::{atom_tableau, Complex};
use crate::error::{Error, Result};
use crate::gray::{pushout_complex, tensor_morphism_between, Pushout, Tensor};
use crate::hom::hom_enumerate_with;
use crate::morphism::{check_morphism, AdcMorphism};
use crate::omega::{AxiomReport, OmegaCategory};
use crate::simplex::{c_delta_arc, c_of_map, simplex, MonotoneMap};
use crate::solve::Solver;

/// `x ∗_j y` after padding both sides to dimension at least `j + 1`.
pub fn pcomp(x: &Cell, y: &Cell, j: usize) -> Result<Cell> {
    let d = x.dim().max(y.dim()).max(j + 1);
    compose(&x.pad_to(d), &y.pad_to(d), j)
}

/// The globe complex `G_i`: generators `s{k}`, `t{k}` in degrees `k < i` and
/// `x{i}` on top, with `d s_k = d t_k = t_{k-1} - s_{k-1}`.
pub fn globe(i: usize) -> Arc<Complex> {
    let mut basis = Vec::new();
    let mut diff = vec![Vec::new()];
    for k in 0..=i {
        let level = if k < i { vec![format!("s{k}"), format!("t{k}")] } else { vec![format!("x{i}")] };
        if k > 0 {
            let d = Chain::from_terms(k - 1, [(1, 1), (0, -1)]);
            diff.push(vec![d; level.len()]);
        }
        basis.push(level);
    }
    let aug = vec![1; basis[0].len()];
    Arc::new(Complex::new(basis, diff, aug).expect("globes are well formed"))
}

fn vertex(k: usize) -> Chain {
    Chain::basis(0, k)
}

/// The (i+1)-cell of `ν(cΔ¹ ⊗ K)` swept out by an i-cell `a` of `ν(K)`.
/// `tensor` must be `cΔ¹ ⊗ K`.
pub fn cylinder_cell(tensor: &Tensor, a: &Cell) -> Cell {
    let i = a.dim();
    let (v0, v1, e) = (vertex(0), vertex(1), Chain::basis(1, 0));
    let mut rows = Vec::with_capacity(i + 2);
    for r in 0..=i {
        let [a0, a1] = a.row(r);
        let mut lo = tensor.pair(&v0, a0);
        let mut hi = tensor.pair(&v1, a1);
        if r > 0 {
            let [b0, b1] = a.row(r - 1);
            lo = lo.add(&tensor.pair(&e, b1));
            hi = hi.add(&tensor.pair(&e, b0));
        }
        rows.push([lo, hi]);
    }
    let top = tensor.pair(&e, a.top());
    rows.push([top.clone(), top]);
    Cell::from_rows(rows)
}

/// An oplax transformation presented by `H: cΔ¹ ⊗ K → L`.
#[derive(Clone)]
pub struct OplaxTransformation {
    h: AdcMorphism,
    tensor: Arc<Tensor>,
}

impl std::fmt::Debug for OplaxTransformation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Oplax({:?})", self.h)
    }
}

impl PartialEq for OplaxTransformation {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h
    }
}

impl OplaxTransformation {
    /// Checks that `H` starts at `cΔ¹ ⊗ K` and is a morphism.
    pub fn new(h: AdcMorphism) -> Result<Self> {
        let k = cylinder_base(h.source())?;
        let tensor = Arc::new(Tensor::new(c_delta_arc(1), k));
        if *tensor.complex != **h.source() {
            return Err(Error::Domain("H does not start at a cylinder cΔ¹ ⊗ K".into()));
        }
        if let Some(v) = check_morphism(&h).first() {
            return Err(Error::Domain(format!("H is not a morphism: {} at {}", v.message, v.token)));
        }
        let h = h.with_ends(tensor.complex.clone(), h.target().clone())?;
        Ok(OplaxTransformation { h, tensor })
    }

    /// Builds from a tensor already known to be `cΔ¹ ⊗ K`.
    pub fn from_parts(tensor: Arc<Tensor>, h: AdcMorphism) -> Result<Self> {
        let h = h.with_ends(tensor.complex.clone(), h.target().clone())?;
        if !h.is_valid() {
            return Err(Error::Domain("H is not a morphism".into()));
        }
        Ok(OplaxTransformation { h, tensor })
    }

    /// The identity transformation of `u`, i.e. `u` composed with the
    /// projection `cΔ¹ ⊗ K → K`.
    pub fn identity(u: &AdcMorphism) -> Self {
        let tensor = Arc::new(Tensor::new(c_delta_arc(1), u.source().clone()));
        let h = AdcMorphism::from_fn(tensor.complex.clone(), u.target().clone(), |deg, n| {
            let (p, _, q, j) = tensor.factors(deg, n);
            if p == 0 { u.image(q, j).clone() } else { Chain::zero(deg) }
        })
        .expect("projection is a morphism");
        OplaxTransformation { h, tensor }
    }

    pub fn h(&self) -> &AdcMorphism {
        &self.h
    }

    pub fn tensor(&self) -> &Arc<Tensor> {
        &self.tensor
    }

    pub fn base(&self) -> &Arc<Complex> {
        &self.tensor.right
    }

    pub fn codomain(&self) -> &Arc<Complex> {
        self.h.target()
    }

    /// `u = H ∘ ({0} ⊗ −)`.
    pub fn source_functor(&self) -> AdcMorphism {
        self.h.after(&self.tensor.left_slot(&vertex(0))).expect("ends match").with_ends(self.base().clone(), self.codomain().clone()).unwrap()
    }

    /// `v = H ∘ ({1} ⊗ −)`.
    pub fn target_functor(&self) -> AdcMorphism {
        self.h.after(&self.tensor.left_slot(&vertex(1))).expect("ends match").with_ends(self.base().clone(), self.codomain().clone()).unwrap()
    }

    /// `α_a = ν(H)(cylinder(a))`.
    pub fn component(&self, a: &Cell) -> Cell {
        map_cell(&self.h, &cylinder_cell(&self.tensor, a))
    }

    /// `α ∘ f` for `f: K′ → K`.
    pub fn whisker_right(&self, f: &AdcMorphism) -> Result<Self> {
        if **f.target() != **self.base() {
            return Err(Error::Domain("whiskering: the functor does not land in the base".into()));
        }
        let src = Arc::new(Tensor::new(c_delta_arc(1), f.source().clone()));
        let id1 = AdcMorphism::identity(c_delta_arc(1));
        let f1 = tensor_morphism_between(&src, &self.tensor, &id1, f)?;
        Ok(OplaxTransformation { h: self.h.after(&f1)?, tensor: src })
    }

    /// `g ∘ α` for `g: L → L′`.
    pub fn whisker_left(&self, g: &AdcMorphism) -> Result<Self> {
        Ok(OplaxTransformation { h: g.after(&self.h)?, tensor: self.tensor.clone() })
    }

    /// `α_{t_{i−1}a} ∗_{i−1} ⋯ ∗₁ α_{t₀a} ∗₀ u(a)`.
    pub fn component_source(&self, a: &Cell) -> Result<Cell> {
        let u = self.source_functor();
        let mut x = map_cell(&u, a);
        for k in 0..a.dim() {
            x = pcomp(&self.component(&a.t(k)?), &x, k)?;
        }
        Ok(x)
    }

    /// `v(a) ∗₀ α_{s₀a} ∗₁ ⋯ ∗_{i−1} α_{s_{i−1}a}`.
    pub fn component_target(&self, a: &Cell) -> Result<Cell> {
        let v = self.target_functor();
        let mut x = map_cell(&v, a);
        for k in 0..a.dim() {
            x = pcomp(&x, &self.component(&a.s(k)?), k)?;
        }
        Ok(x)
    }

    /// Checks, over the given cells of `ν(K)` (`cells[i]` = i-cells), that
    /// each component is a valid cell with the prescribed boundary, that
    /// identities go to identities, and the composition axiom.
    pub fn check_axioms(&self, cells: &[Vec<Cell>]) -> AxiomReport {
        let mut rep = AxiomReport::default();
        let u = self.source_functor();
        let v = self.target_functor();
        let l = self.codomain();
        let mut record = |law: &str, ok: bool, w: &dyn Fn() -> String| {
            let e = rep.laws.entry(law.to_string()).or_insert((0, None));
            e.0 += 1;
            if !ok && e.1.is_none() {
                e.1 = Some(w());
            }
        };
        for level in cells {
            for a in level {
                let c = self.component(a);
                record("component valid", validate_cell(l, &c).is_ok(), &|| format!("{a:?}"));
                let ok = c.source().ok() == self.component_source(a).ok() && c.target().ok() == self.component_target(a).ok();
                record("component boundary", ok, &|| format!("{a:?}"));
                record("identity axiom", self.component(&a.identity()) == c.identity(), &|| format!("{a:?}"));
            }
        }
        for (i, level) in cells.iter().enumerate() {
            for j in 0..i {
                for x in level {
                    for y in level {
                        let Ok(xy) = compose(x, y, j) else { continue };
                        let rhs = (|| -> Result<Cell> {
                            let mut left = map_cell(&v, &x.t(j + 1)?);
                            for k in 0..j {
                                left = pcomp(&left, &self.component(&y.s(k)?), k)?;
                            }
                            left = pcomp(&left, &self.component(y), j)?;
                            let mut right = map_cell(&u, &y.s(j + 1)?);
                            for k in 0..j {
                                right = pcomp(&self.component(&x.t(k)?), &right, k)?;
                            }
                            right = pcomp(&self.component(x), &right, j)?;
                            pcomp(&left, &right, j + 1)
                        })();
                        let ok = rhs.as_ref().ok() == Some(&self.component(&xy));
                        record("composition axiom", ok, &|| format!("{x:?} ∗{j} {y:?}"));
                    }
                }
            }
        }
        rep
    }
}

/// Recovers `K` from a complex of the form `cΔ¹ ⊗ K` by reading the right
/// factors of the `(0)⊗−` generators.
fn cylinder_base(c: &Complex) -> Result<Arc<Complex>> {
    let mut basis = Vec::new();
    let mut lookup: Vec<HashMap<String, usize>> = Vec::new();
    for p in 0..c.num_degrees() {
        let level: Vec<String> =
            c.tokens(p).iter().filter_map(|t| t.strip_prefix("(0)⊗").map(str::to_string)).collect();
        if level.is_empty() {
            break;
        }
        lookup.push(level.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect());
        basis.push(level);
    }
    if basis.is_empty() {
        return Err(Error::Domain("not a cylinder: no (0)⊗ generators".into()));
    }
    let mut diff = vec![Vec::new()];
    for p in 1..basis.len() {
        let mut level = Vec::new();
        for t in &basis[p] {
            let n = c.index(p, &format!("(0)⊗{t}")).unwrap();
            let d = c.boundary(p, n);
            let mut terms = Vec::new();
            for &(m, x) in d.terms() {
                let tok = c.token(p - 1, m);
                let inner = tok
                    .strip_prefix("(0)⊗")
                    .and_then(|s| lookup[p - 1].get(s))
                    .ok_or_else(|| Error::Domain("not a cylinder: boundary leaves the (0) end".into()))?;
                terms.push((*inner, x));
            }
            level.push(Chain::from_terms(p - 1, terms));
        }
        diff.push(level);
    }
    let aug = basis[0]
        .iter()
        .map(|t| c.augmentation(c.index(0, &format!("(0)⊗{t}")).unwrap()))
        .collect();
    Ok(Arc::new(Complex::new(basis, diff, aug)?))
}

/// `λ(δ): cΔ¹ → cΔ¹ ⨿_{cΔ⁰} cΔ¹` together with the pushout it lands in.
/// The left copy is glued at its vertex 0 to vertex 1 of the right copy.
pub fn delta_into_glued() -> (Pushout, AdcMorphism) {
    let f = c_of_map(&MonotoneMap::constant(0, 1, 0));
    let g = c_of_map(&MonotoneMap::constant(0, 1, 1));
    let d = pushout_complex(&f, &g).expect("two intervals glue along a point");
    let pick = |inj: &AdcMorphism, p: usize, i: usize| inj.image(p, i).clone();
    let images = vec![
        vec![pick(&d.inj_l, 0, 0), pick(&d.inj_k, 0, 1)],
        vec![pick(&d.inj_k, 1, 0).add(&pick(&d.inj_l, 1, 0))],
    ];
    let delta = AdcMorphism::new(c_delta_arc(1), d.complex.clone(), images).expect("λ(δ) has the right shape");
    (d, delta)
}

/// `(λ(δ) ⊗ 1)` followed by `(cΔ¹ ⨿_{cΔ⁰} cΔ¹) ⊗ K ≅ (cΔ¹⊗K) ⨿_K (cΔ¹⊗K)`,
/// where the left copy is glued along `{0}⊗K` and the right one along
/// `{1}⊗K`. Returns the glued complex and the map into it.
pub fn cylinder_split(cyl: &Arc<Tensor>) -> Result<(Pushout, AdcMorphism)> {
    let k = cyl.right.clone();
    let (d, delta) = delta_into_glued();
    let dk = Tensor::new(d.complex.clone(), k.clone());
    let q2 = pushout_complex(&cyl.left_slot(&vertex(0)), &cyl.left_slot(&vertex(1)))?;
    // (K:t)⊗x ↦ inj_K(t⊗x), (L:t)⊗x ↦ inj_L(t⊗x)
    let iso = AdcMorphism::from_fn(dk.complex.clone(), q2.complex.clone(), |deg, n| {
        let (p, i, q, j) = dk.factors(deg, n);
        let tok = d.complex.token(p, i);
        let (inj, inner) = match tok.strip_prefix("K:") {
            Some(t) => (&q2.inj_k, t),
            None => (&q2.inj_l, tok.strip_prefix("L:").expect("pushout tokens are tagged")),
        };
        let t = c_delta_arc(1).index(p, inner).expect("factor of cΔ¹");
        inj.apply(&cyl.pair(&Chain::basis(p, t), &Chain::basis(q, j)))
    })?;
    let lift = tensor_morphism_between(cyl, &dk, &delta, &AdcMorphism::identity(k))?;
    let split = iso.after(&lift)?;
    Ok((q2, split))
}

/// `βα`: the composite through `(cΔ¹ ⨿_{cΔ⁰} cΔ¹) ⊗ K`, where the two copies
/// of the cylinder are glued along `{0}⊗K` of `β` and `{1}⊗K` of `α`.
pub fn vertical_compose(beta: &OplaxTransformation, alpha: &OplaxTransformation) -> Result<OplaxTransformation> {
    if **beta.base() != **alpha.base() || **beta.codomain() != **alpha.codomain() {
        return Err(Error::Domain("vertical composition: transformations live between different complexes".into()));
    }
    if beta.source_functor() != alpha.target_functor() {
        return Err(Error::Domain("vertical composition: the target of α is not the source of β".into()));
    }
    let cyl = alpha.tensor.clone();
    let (q2, split) = cylinder_split(&cyl)?;
    let glue = q2.copair(&beta.h.with_ends(cyl.complex.clone(), beta.codomain().clone())?, &alpha.h)?;
    let h = glue.after(&split)?;
    OplaxTransformation::from_parts(cyl, h)
}

/// A cell of `A\c` for `u: A → C` and an object `c` of `C`. `a[k]` holds
/// `[a⁰_k, a¹_k]` for `k = 0..=i` and `alpha[k-1]` holds `[α⁰_k, α¹_k]` for
/// `k = 1..=i+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceCell {
    pub a: Vec<[Cell; 2]>,
    pub alpha: Vec<[Cell; 2]>,
}

impl SliceCell {
    pub fn dim(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a_top(&self) -> &Cell {
        &self.a[self.dim()][0]
    }

    pub fn alpha_top(&self) -> &Cell {
        &self.alpha[self.dim()][0]
    }

    /// `α^ε_k` with the convention `k ≥ 1`.
    pub fn alpha_at(&self, k: usize, eps: usize) -> &Cell {
        &self.alpha[k - 1][eps]
    }
}

/// `A\c` for `u: K → L` and an object `c` of `ν(L)`.
#[derive(Clone)]
pub struct SliceCategory {
    pub u: AdcMorphism,
    pub c: Cell,
}

impl SliceCategory {
    pub fn new(u: AdcMorphism, c: Cell) -> Result<Self> {
        if c.dim() != 0 || validate_cell(u.target(), &c).is_err() {
            return Err(Error::Domain("the base point must be an object of ν(L)".into()));
        }
        Ok(SliceCategory { u, c })
    }

    pub fn over(&self) -> &Arc<Complex> {
        self.u.source()
    }

    pub fn under(&self) -> &Arc<Complex> {
        self.u.target()
    }

    fn uc(&self, a: &Cell) -> Cell {
        map_cell(&self.u, a)
    }

    /// `u(a^ε_{k−1}) ∗₀ α⁰₁ ∗₁ ⋯ ∗_{k−2} α⁰_{k−1}`, grouped from the left.
    fn alpha_goal(&self, a_prev: &Cell, alpha: &[[Cell; 2]], k: usize) -> Result<Cell> {
        let mut x = self.uc(a_prev);
        for l in 1..k {
            x = pcomp(&x, &alpha[l - 1][0], l - 1)?;
        }
        Ok(x)
    }

    pub fn validate(&self, x: &SliceCell) -> Result<()> {
        let i = x.dim();
        if x.alpha.len() != i + 1 {
            return Err(Error::Domain("α-row has the wrong length".into()));
        }
        let (k_a, l) = (self.over(), self.under());
        for k in 0..=i {
            for eps in 0..2 {
                let ak = &x.a[k][eps];
                if ak.dim() != k || validate_cell(k_a, ak).is_err() {
                    return Err(Error::Domain(format!("a^{eps}_{k} is not a {k}-cell")));
                }
                if k > 0 && (ak.source()? != x.a[k - 1][0] || ak.target()? != x.a[k - 1][1]) {
                    return Err(Error::Domain(format!("a^{eps}_{k} has the wrong boundary")));
                }
                let al = &x.alpha[k][eps];
                if al.dim() != k + 1 || validate_cell(l, al).is_err() {
                    return Err(Error::Domain(format!("α^{eps}_{} is not a {}-cell", k + 1, k + 1)));
                }
                let src = if k == 0 { self.c.clone() } else { x.alpha[k - 1][1].clone() };
                if al.source()? != src {
                    return Err(Error::Domain(format!("α^{eps}_{} has the wrong source", k + 1)));
                }
                if al.target()? != self.alpha_goal(ak, &x.alpha, k + 1)? {
                    return Err(Error::Domain(format!("α^{eps}_{} has the wrong target", k + 1)));
                }
            }
        }
        if x.a[i][0] != x.a[i][1] || x.alpha[i][0] != x.alpha[i][1] {
            return Err(Error::Domain("top entries differ".into()));
        }
        Ok(())
    }

    /// The object `(a₀, α₁)`.
    pub fn object(&self, a0: Cell, alpha1: Cell) -> SliceCell {
        SliceCell { a: vec![[a0.clone(), a0]], alpha: vec![[alpha1.clone(), alpha1]] }
    }

    /// The slice cell carried by `x` under `(a, τ)` where `a: X → K` and
    /// `τ: c ⇒ u∘a` is presented on `cΔ¹ ⊗ X`.
    pub fn cell_of(&self, a: &AdcMorphism, tau: &OplaxTransformation, x: &Cell) -> Result<SliceCell> {
        let i = x.dim();
        let ax = map_cell(a, x);
        let mut arow = Vec::with_capacity(i + 1);
        let mut alrow = Vec::with_capacity(i + 1);
        for k in 0..i {
            arow.push([ax.s(k)?, ax.t(k)?]);
            alrow.push([tau.component(&x.s(k)?), tau.component(&x.t(k)?)]);
        }
        arow.push([ax.clone(), ax]);
        let top = tau.component(x);
        alrow.push([top.clone(), top]);
        Ok(SliceCell { a: arow, alpha: alrow })
    }

    /// The pair `(t: G_i → K, τ)` classifying an i-cell.
    pub fn classify(&self, z: &SliceCell) -> Result<(AdcMorphism, OplaxTransformation)> {
        self.validate(z)?;
        let i = z.dim();
        let g = globe(i);
        let pick = |p: usize, n: usize, row: &[[Cell; 2]]| -> Chain {
            if p == i { row[i][0].rows()[p][0].clone() } else { row[p][n].rows()[p][0].clone() }
        };
        let t = AdcMorphism::from_fn(g.clone(), self.over().clone(), |p, n| pick(p, n, &z.a))?;
        let tensor = Arc::new(Tensor::new(c_delta_arc(1), g.clone()));
        let cchain = self.c.top().clone();
        let h = AdcMorphism::from_fn(tensor.complex.clone(), self.under().clone(), |deg, n| {
            let (p, e, q, j) = tensor.factors(deg, n);
            match (p, e) {
                (0, 0) => if q == 0 { cchain.clone() } else { Chain::zero(deg) },
                (0, _) => self.u.apply(t.image(q, j)),
                _ => {
                    let cell = if q == i { &z.alpha[i][0] } else { &z.alpha[q][j] };
                    cell.top().clone()
                }
            }
        })?;
        let tau = OplaxTransformation::from_parts(tensor, h)?;
        Ok((t, tau))
    }

    /// All i-cells for `i ≤ max_dim`, through `Hom(G_i, K)` and the
    /// transformations `c ⇒ u∘t` on `cΔ¹ ⊗ G_i`.
    pub fn enumerate(&self, max_dim: usize, bound: Option<i64>) -> (Vec<Vec<SliceCell>>, bool) {
        let sa = Solver::new(self.over().clone(), bound);
        let sl = Solver::new(self.under().clone(), bound);
        let mut complete = true;
        let mut out = Vec::new();
        for i in 0..=max_dim {
            let g = globe(i);
            let ts = hom_enumerate_with(&sa, &g, &HashMap::new());
            complete &= ts.complete;
            let tensor = Arc::new(Tensor::new(c_delta_arc(1), g.clone()));
            let top = atom_tableau(&g, i, 0).cell;
            let mut level = Vec::new();
            for t in &ts.morphisms {
                let mut fixed = HashMap::new();
                for deg in 0..=i {
                    for n in 0..tensor.complex.rank(deg) {
                        let (p, e, q, j) = tensor.factors(deg, n);
                        if p != 0 {
                            continue;
                        }
                        let val = match (e, q) {
                            (0, 0) => self.c.top().clone(),
                            (0, _) => Chain::zero(deg),
                            _ => self.u.apply(t.image(q, j)),
                        };
                        fixed.insert((deg, n), val);
                    }
                }
                let taus = hom_enumerate_with(&sl, &tensor.complex, &fixed);
                complete &= taus.complete;
                for h in taus.morphisms {
                    let tau = OplaxTransformation { h, tensor: tensor.clone() };
                    level.push(self.cell_of(t, &tau, &top).expect("globe cells have all boundaries"));
                }
            }
            level.sort();
            out.push(level);
        }
        (out, complete)
    }
}

impl OmegaCategory for SliceCategory {
    type Cell = SliceCell;

    fn dim(&self, x: &SliceCell) -> usize {
        x.dim()
    }

    fn s(&self, x: &SliceCell, j: usize) -> Result<SliceCell> {
        truncate(x, j, 0)
    }

    fn t(&self, x: &SliceCell, j: usize) -> Result<SliceCell> {
        truncate(x, j, 1)
    }

    fn identity(&self, x: &SliceCell) -> SliceCell {
        let i = x.dim();
        let mut z = x.clone();
        let a = x.a[i][0].identity();
        let al = x.alpha[i][0].identity();
        z.a.push([a.clone(), a]);
        z.alpha.push([al.clone(), al]);
        z
    }

    fn compose(&self, x: &SliceCell, y: &SliceCell, j: usize) -> Result<SliceCell> {
        let i = x.dim().max(y.dim());
        if j >= x.dim().min(y.dim()) {
            return Err(Error::Domain(format!("∗_{j} needs both slice cells of dimension > {j}")));
        }
        let (x, y) = (self.pad_to(x, i), self.pad_to(y, i));
        let ok = (0..j).all(|k| x.a[k] == y.a[k] && x.alpha[k] == y.alpha[k])
            && x.a[j][0] == y.a[j][1]
            && x.alpha[j][0] == y.alpha[j][1];
        if !ok {
            return Err(Error::Domain(format!("slice cells are not ∗_{j}-composable")));
        }
        let (a, al, b, be) = (&x.a, &x.alpha, &y.a, &y.alpha);
        let mut za = Vec::with_capacity(i + 1);
        let mut zal = Vec::with_capacity(i + 1);
        for k in 0..=j {
            za.push([b[k][0].clone(), a[k][1].clone()]);
            zal.push([be[k][0].clone(), al[k][1].clone()]);
        }
        for k in j + 1..=i {
            za.push([compose(&a[k][0], &b[k][0], j)?, compose(&a[k][1], &b[k][1], j)?]);
        }
        for k in j + 2..=i + 1 {
            let mut g = [None, None];
            for eps in 0..2 {
                let lead = if k == j + 2 { &a[j + 1][eps] } else { &a[j + 1][1] };
                let mut x = self.uc(lead);
                for l in 1..=j {
                    x = pcomp(&x, &be[l - 1][0], l - 1)?;
                }
                x = pcomp(&x, &be[k - 1][eps], j)?;
                x = pcomp(&x, &al[k - 1][eps], j + 1)?;
                g[eps] = Some(x);
            }
            let [g0, g1] = g;
            zal.push([g0.unwrap(), g1.unwrap()]);
        }
        Ok(SliceCell { a: za, alpha: zal })
    }

    fn is_valid(&self, x: &SliceCell) -> bool {
        self.validate(x).is_ok()
    }
}

fn truncate(x: &SliceCell, j: usize, eps: usize) -> Result<SliceCell> {
    let i = x.dim();
    if j > i {
        return Err(Error::Domain(format!("{j}-boundary of a {i}-cell of the slice")));
    }
    if j == i {
        return Ok(x.clone());
    }
    let mut a = x.a[..j].to_vec();
    let mut alpha = x.alpha[..j].to_vec();
    let (aj, alj) = (x.a[j][eps].clone(), x.alpha[j][eps].clone());
    a.push([aj.clone(), aj]);
    alpha.push([alj.clone(), alj]);
    Ok(SliceCell { a, alpha })
}

/// An oplax triangle `α: v ⇒ w∘u` with `u: A → B`, `v: A → C`, `w: B → C`.
#[derive(Clone)]
pub struct Triangle {
    pub u: AdcMorphism,
    pub v: AdcMorphism,
    pub w: AdcMorphism,
    pub alpha: OplaxTransformation,
}

impl Triangle {
    pub fn new(u: AdcMorphism, v: AdcMorphism, w: AdcMorphism, alpha: OplaxTransformation) -> Result<Self> {
        if **u.target() != **w.source() || **u.source() != **v.source() || **v.target() != **w.target() {
            return Err(Error::Domain("triangle: functors do not fit together".into()));
        }
        if alpha.source_functor() != v || alpha.target_functor() != w.after(&u)? {
            return Err(Error::Domain("triangle: α does not go from v to w∘u".into()));
        }
        Ok(Triangle { u, v, w, alpha })
    }

    /// The induced `A\c → B\c` with `A\c` taken over `v` and `B\c` over `w`.
    pub fn slice_functor(&self, c: &Cell) -> Result<SliceFunctor> {
        Ok(SliceFunctor {
            src: SliceCategory::new(self.v.clone(), c.clone())?,
            dst: SliceCategory::new(self.w.clone(), c.clone())?,
            triangle: self.clone(),
        })
    }
}

pub struct SliceFunctor {
    pub src: SliceCategory,
    pub dst: SliceCategory,
    triangle: Triangle,
}

impl SliceFunctor {
    /// `(t, τ) ↦ (u t, (α ∘ t) τ)`.
    pub fn apply(&self, z: &SliceCell) -> Result<SliceCell> {
        let (t, tau) = self.src.classify(z)?;
        let ut = self.triangle.u.after(&t)?;
        let at = self.triangle.alpha.whisker_right(&t)?;
        let tau2 = vertical_compose(&at, &tau)?;
        let top = atom_tableau(&globe(z.dim()), z.dim(), 0).cell;
        self.dst.cell_of(&ut, &tau2, &top)
    }
}

/// A small triangle used in tests and demos: `A = O₁`, `B = C = O₂`,
/// `u = (1,2)`, `v = (0,2)`, `w = id`, with `α` the 2-cell `(0,1,2)` swept
/// along the edge.
pub fn sample_triangle() -> Triangle {
    let a = c_delta_arc(1);
    let k = c_delta_arc(2);
    let u = c_of_map(&MonotoneMap::new(1, 2, vec![1, 2]).unwrap());
    let v = c_of_map(&MonotoneMap::new(1, 2, vec![0, 2]).unwrap());
    let w = AdcMorphism::identity(k.clone());
    let cyl = Arc::new(Tensor::new(c_delta_arc(1), a));
    let images = [
        ("(0)⊗(0)", "(0)"),
        ("(0)⊗(1)", "(2)"),
        ("(0)⊗(0,1)", "(0,2)"),
        ("(1)⊗(0)", "(1)"),
        ("(1)⊗(1)", "(2)"),
        ("(1)⊗(0,1)", "(1,2)"),
        ("(0,1)⊗(0)", "(0,1)"),
        ("(0,1)⊗(0,1)", "(0,1,2)"),
    ];
    let h = AdcMorphism::from_fn(cyl.complex.clone(), k.clone(), |p, i| {
        let tok = cyl.complex.token(p, i);
        match images.iter().find(|x| x.0 == tok) {
            Some((_, im)) => k.gen(im).unwrap(),
            None => Chain::zero(p),
        }
    })
    .unwrap();
    let alpha = OplaxTransformation::from_parts(cyl, h).unwrap();
    Triangle::new(u, v, w, alpha).expect("the sample triangle is well formed")
}

/// Objects of `ν(cΔⁿ)` indexed by vertex, for convenience.
pub fn simplex_vertex(n: usize, v: usize) -> Cell {
    let d = simplex(n);
    Cell::object(d.tuple_chain(&[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nu::enumerate_cells;
    use crate::omega::{check_axioms, composable_pairs};

    fn direct_vertical(beta: &OplaxTransformation, alpha: &OplaxTransformation) -> AdcMorphism {
        let t = alpha.tensor();
        AdcMorphism::from_fn(t.complex.clone(), alpha.codomain().clone(), |deg, n| {
            let (p, e, _, _) = t.factors(deg, n);
            match (p, e) {
                (0, 0) => alpha.h().image(deg, n).clone(),
                (0, _) => beta.h().image(deg, n).clone(),
                _ => alpha.h().image(deg, n).add(beta.h().image(deg, n)),
            }
        })
        .unwrap()
    }

    #[test]
    fn globes_are_strong_steiner() {
        for i in 0..4 {
            let g = globe(i);
            assert!(crate::complex::is_strong_steiner(&g));
            assert!(crate::complex::precedence_is_total(&g));
        }
    }

    #[test]
    fn cylinder_of_edge() {
        let k = c_delta_arc(2);
        let t = Tensor::new(c_delta_arc(1), k.clone());
        let a = atom_tableau(&k, 1, k.index(1, "(1,2)").unwrap()).cell;
        let cyl = cylinder_cell(&t, &a);
        let tc = &t.complex;
        assert_eq!(tc.fmt_chain(&cyl.row(1)[0]), "(0)⊗(1,2) + (0,1)⊗(2)");
        assert_eq!(tc.fmt_chain(&cyl.row(1)[1]), "(1)⊗(1,2) + (0,1)⊗(1)");
        let cells = enumerate_cells(&k, 2, None);
        for level in &cells.by_dim {
            for c in level {
                assert!(validate_cell(tc, &cylinder_cell(&t, c)).is_ok());
            }
        }
    }

    #[test]
    fn identity_transformation_and_composition() {
        let k = c_delta_arc(2);
        let id = OplaxTransformation::identity(&AdcMorphism::identity(k.clone()));
        let cells = enumerate_cells(&k, 2, None);
        for level in &cells.by_dim {
            for c in level {
                assert_eq!(id.component(c), c.identity());
            }
        }
        assert!(id.check_axioms(&cells.by_dim).passed());
    }

    #[test]
    fn vertical_matches_direct_formula() {
        let k = c_delta_arc(1);
        let l = c_delta_arc(2);
        let cyl = Tensor::new(c_delta_arc(1), k.clone());
        let all = hom_enumerate_with(&Solver::new(l.clone(), None), &cyl.complex, &HashMap::new());
        let ts: Vec<_> = all.morphisms.into_iter().map(|h| OplaxTransformation::new(h).unwrap()).collect();
        let mut pairs = 0;
        for b in &ts {
            for a in &ts {
                if b.source_functor() != a.target_functor() {
                    continue;
                }
                let ba = vertical_compose(b, a).unwrap();
                assert_eq!(*ba.h(), direct_vertical(b, a));
                assert_eq!(ba.source_functor(), a.source_functor());
                assert_eq!(ba.target_functor(), b.target_functor());
                pairs += 1;
            }
            let id_src = OplaxTransformation::identity(&b.source_functor());
            assert_eq!(vertical_compose(b, &id_src).unwrap(), *b);
        }
        assert!(pairs > 0);
        let (_, delta) = delta_into_glued();
        let d = delta.target();
        assert_eq!(d.fmt_chain(delta.image(1, 0)), "K:(0,1) + L:(0,1)");
    }

    #[test]
    fn slice_basics_on_triangle() {
        let k = c_delta_arc(2);
        let cat = SliceCategory::new(AdcMorphism::identity(k.clone()), simplex_vertex(2, 0)).unwrap();
        let (cells, complete) = cat.enumerate(2, None);
        assert!(complete);
        // objects of O₂\0: an object a and a 1-cell 0 → a
        assert_eq!(cells[0].len(), 4);
        for level in &cells {
            for z in level {
                cat.validate(z).unwrap();
                let (t, tau) = cat.classify(z).unwrap();
                let top = atom_tableau(&globe(z.dim()), z.dim(), 0).cell;
                assert_eq!(cat.cell_of(&t, &tau, &top).unwrap(), *z);
            }
        }
        let rep = check_axioms(&cat, &cells);
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn vertical_composition_is_associative() {
        let k = c_delta_arc(1);
        let l = c_delta_arc(2);
        let cyl = Tensor::new(c_delta_arc(1), k.clone());
        let all = hom_enumerate_with(&Solver::new(l.clone(), None), &cyl.complex, &HashMap::new());
        let ts: Vec<_> = all.morphisms.into_iter().map(|h| OplaxTransformation::new(h).unwrap()).collect();
        let mut triples = 0;
        for c in &ts {
            for b in ts.iter().filter(|b| b.source_functor() == c.target_functor()) {
                let bc = vertical_compose(b, c).unwrap();
                for a in ts.iter().filter(|a| a.source_functor() == b.target_functor()) {
                    let l = vertical_compose(&vertical_compose(a, b).unwrap(), c).unwrap();
                    let r = vertical_compose(a, &bc).unwrap();
                    assert_eq!(l, r);
                    triples += 1;
                }
            }
        }
        assert!(triples > 10);
    }

    #[test]
    fn slice_functor_respects_structure() {
        let tri = sample_triangle();
        let f = tri.slice_functor(&simplex_vertex(2, 0)).unwrap();
        let (cells, complete) = f.src.enumerate(2, None);
        assert!(complete);
        assert!(cells[0].len() > 1);
        let mut image: HashMap<SliceCell, SliceCell> = HashMap::new();
        for level in &cells {
            for z in level {
                let fz = f.apply(z).unwrap();
                f.dst.validate(&fz).unwrap();
                assert_eq!(fz.dim(), z.dim());
                for j in 0..z.dim() {
                    assert_eq!(f.apply(&f.src.s(z, j).unwrap()).unwrap(), f.dst.s(&fz, j).unwrap());
                    assert_eq!(f.apply(&f.src.t(z, j).unwrap()).unwrap(), f.dst.t(&fz, j).unwrap());
                }
                if z.dim() < 2 {
                    assert_eq!(f.apply(&f.src.identity(z)).unwrap(), f.dst.identity(&fz));
                }
                image.insert(z.clone(), fz);
            }
        }
        let mut pairs = 0;
        for level in &cells[1..] {
            for (x, y, xy) in composable_pairs(&f.src, level, 0) {
                let lhs = &image[&xy];
                let rhs = f.dst.compose(&image[&x], &image[&y], 0).unwrap();
                assert_eq!(*lhs, rhs);
                pairs += 1;
            }
        }
        assert!(pairs > 0);
    }

    #[test]
    fn whiskering_does_not_interchange() {
        // α: 0 ⇒ 1 between points of O₁, β the identity cylinder of O₁
        let point = c_delta_arc(0);
        let edge = c_delta_arc(1);
        let acyl = Tensor::new(c_delta_arc(1), point.clone());
        let ah = AdcMorphism::from_fn(acyl.complex.clone(), edge.clone(), |p, i| {
            let (q, e, _, _) = acyl.factors(p, i);
            Chain::basis(q, e)
        })
        .unwrap();
        let alpha = OplaxTransformation::new(ah).unwrap();
        let bcyl = Tensor::new(c_delta_arc(1), edge.clone());
        let beta = OplaxTransformation::new(AdcMorphism::identity(bcyl.complex.clone())).unwrap();
        let (f, g) = (alpha.source_functor(), alpha.target_functor());
        let (h, k) = (beta.source_functor(), beta.target_functor());
        let one = vertical_compose(&beta.whisker_right(&g).unwrap(), &alpha.whisker_left(&h).unwrap()).unwrap();
        let two = vertical_compose(&alpha.whisker_left(&k).unwrap(), &beta.whisker_right(&f).unwrap()).unwrap();
        let c = one.codomain();
        let top = |t: &OplaxTransformation| c.fmt_chain(&t.h().apply(&t.tensor().complex.gen("(0,1)⊗(0)").unwrap()));
        assert_eq!(top(&one), "(0)⊗(0,1) + (0,1)⊗(1)");
        assert_eq!(top(&two), "(1)⊗(0,1) + (0,1)⊗(0)");
        assert_ne!(one, two);
    }
}
