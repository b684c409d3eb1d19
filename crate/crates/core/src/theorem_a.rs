//! The explicit chain maps behind the Theorem A argument (π_n, κ_{m,n},
//! f_n, f_φ), their exhaustive verification, the slice/nerve comparison θ_n,
//! and the deformation retract on nerve tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::Chain;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::gray::{pushout_complex, tensor_morphism_between, Pushout, Tensor};
use crate::hom::hom_enumerate_with;
use crate::morphism::{check_morphism, AdcMorphism};
use crate::simplex::{c_delta_arc, c_of_map, join_maps, simplex, MonotoneMap};
use crate::slice::{cylinder_split, OplaxTransformation, SliceCategory, SliceCell};
use crate::solve::Solver;
use crate::sset::{relative_under, standard_simplex, Nerve, SimplicialMap};

/// `cΔ¹ ⊗ cΔⁿ`, cached.
pub fn simplex_cylinder(n: usize) -> Arc<Tensor> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Tensor>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(Tensor::new(c_delta_arc(1), c_delta_arc(n)));
    cache.lock().unwrap().entry(n).or_insert(t).clone()
}

fn tuple_chain(n: usize, t: &[usize]) -> Chain {
    simplex(n).tuple_chain(t)
}

fn shifted(t: &[usize], by: isize) -> Vec<usize> {
    t.iter().map(|&i| (i as isize + by) as usize).collect()
}

/// `π_n: cΔ¹ ⊗ cΔⁿ → cΔ^{1+n}`.
pub fn pi_n(n: usize) -> AdcMorphism {
    let cyl = simplex_cylinder(n);
    let sd = simplex(n);
    AdcMorphism::from_fn(cyl.complex.clone(), c_delta_arc(1 + n), |deg, idx| {
        let (p, e, q, j) = cyl.factors(deg, idx);
        let t = shifted(sd.tuple(q, j), 1);
        match (p, e) {
            (0, 0) => if q == 0 { tuple_chain(1 + n, &[0]) } else { Chain::zero(deg) },
            (0, _) => tuple_chain(1 + n, &t),
            _ => {
                let mut u = vec![0];
                u.extend(t);
                tuple_chain(1 + n, &u)
            }
        }
    })
    .expect("π_n has the right shape")
}

/// `κ_{m,n}` and its target `cΔ^{m+1+n} ⨿_{cΔⁿ} (cΔ¹ ⊗ cΔⁿ)`, glued along
/// `c(j_{m,n})` and `{0} ⊗ −`.
pub struct Kappa {
    pub m: usize,
    pub n: usize,
    pub glued: Pushout,
    pub map: AdcMorphism,
}

pub fn kappa_target(m: usize, n: usize) -> Pushout {
    let cyl = simplex_cylinder(n);
    pushout_complex(&c_of_map(&MonotoneMap::j_map(m, n)), &cyl.left_slot(&tuple_chain(1, &[0])))
        .expect("legs are rigid monomorphisms")
}

pub fn kappa_mn(m: usize, n: usize) -> Kappa {
    let glued = kappa_target(m, n);
    let cyl = simplex_cylinder(n);
    let big = m + 1 + n;
    let sd = simplex(big);
    let tensor_tuple = |left: &[usize], t: &[usize]| {
        let x = tuple_chain(1, left);
        let y = tuple_chain(n, &shifted(t, -((m + 1) as isize)));
        glued.inj_l.apply(&cyl.pair(&x, &y))
    };
    let map = AdcMorphism::from_fn(c_delta_arc(big), glued.complex.clone(), |p, i| {
        let t = sd.tuple(p, i);
        let r = t.iter().filter(|&&x| x <= m).count();
        let own = glued.inj_k.apply(&Chain::basis(p, i));
        match r {
            0 => tensor_tuple(&[1], t),
            1 if p > 0 => own.add(&tensor_tuple(&[0, 1], &t[1..])),
            _ => own,
        }
    })
    .expect("κ has the right shape");
    Kappa { m, n, glued, map }
}

/// `cΔᵐ ⨿_{cΔ⁰} cΔ^{1+n}` glued along `m` and `0`, with the inclusion into
/// `cΔ^{m+1+n}`.
pub struct Wedge {
    pub m: usize,
    pub n: usize,
    pub glued: Pushout,
    pub inclusion: AdcMorphism,
}

impl Wedge {
    pub fn new(m: usize, n: usize) -> Wedge {
        let f = c_of_map(&MonotoneMap::constant(0, m, m));
        let g = c_of_map(&MonotoneMap::constant(0, 1 + n, 0));
        let glued = pushout_complex(&f, &g).expect("point legs are rigid");
        let shift = MonotoneMap::new(1 + n, m + 1 + n, (m..=m + 1 + n).collect()).unwrap();
        let inclusion = glued
            .copair(&c_of_map(&MonotoneMap::i_map(m, n)), &c_of_map(&shift))
            .expect("both legs agree on m");
        Wedge { m, n, glued, inclusion }
    }

    /// A tuple of `cΔ^{m+1+n}` lying in one of the two pieces.
    pub fn element(&self, t: &[usize]) -> Chain {
        let m = self.m;
        if t.last().is_some_and(|&x| x <= m) {
            self.glued.inj_k.apply(&tuple_chain(m, t))
        } else {
            assert!(t[0] >= m, "tuple {t:?} straddles the wedge point");
            self.glued.inj_l.apply(&tuple_chain(1 + self.n, &shifted(t, -(m as isize))))
        }
    }
}

/// The five-case formula for `f_n` on a strictly increasing tuple.
/// `mutant` flips the sign of the second term in the `p = 1` straddling case.
pub fn f_n_terms(m: usize, t: &[usize], mutant: bool) -> Vec<(Vec<usize>, i64)> {
    let p = t.len() - 1;
    if t[p] <= m || m <= t[0] {
        return vec![(t.to_vec(), 1)];
    }
    if p == 1 {
        return vec![(vec![t[0], m], 1), (vec![m, t[1]], if mutant { -1 } else { 1 })];
    }
    if t[0] < m && m < t[1] {
        let mut u = vec![m];
        u.extend_from_slice(&t[1..]);
        return vec![(u, 1)];
    }
    if t[p - 1] < m && m < t[p] {
        let mut u = t[..p].to_vec();
        u.push(m);
        return vec![(u, 1)];
    }
    vec![]
}

fn f_n_with(m: usize, n: usize, mutant: bool) -> (Wedge, AdcMorphism) {
    let w = Wedge::new(m, n);
    let big = m + 1 + n;
    let sd = simplex(big);
    let map = AdcMorphism::from_fn(c_delta_arc(big), w.glued.complex.clone(), |p, i| {
        f_n_terms(m, sd.tuple(p, i), mutant)
            .iter()
            .fold(Chain::zero(p), |acc, (u, c)| acc.add_scaled(&w.element(u), *c))
    });
    (w, map.expect("degrees always match"))
}

/// `f_n: cΔ^{m+1+n} → cΔᵐ ⨿_{cΔ⁰} cΔ^{1+n}`.
pub fn f_n_map(m: usize, n: usize) -> (Wedge, AdcMorphism) {
    f_n_with(m, n, false)
}

/// `f_n` with the sign of one term flipped; used to confirm the checks bite.
pub fn f_n_mutant(m: usize, n: usize) -> (Wedge, AdcMorphism) {
    f_n_with(m, n, true)
}

/// `f_n` followed by the inclusion, as an endomorphism of `cΔ^{m+1+n}`.
pub fn f_n_endo(m: usize, n: usize) -> AdcMorphism {
    let (w, f) = f_n_map(m, n);
    w.inclusion.after(&f).expect("ends match")
}

/// `f_φ` for `φ: Δn → Δ1`.
pub fn f_phi_map(m: usize, phi: &MonotoneMap) -> AdcMorphism {
    assert_eq!(phi.dst(), 1, "f_φ needs φ: Δn → Δ1");
    let n = phi.src();
    let big = m + 1 + n;
    let sd = simplex(big);
    let bar = |i: usize| if i <= m { 0 } else { phi.at(i - m - 1) };
    AdcMorphism::from_fn(c_delta_arc(big), c_delta_arc(big), |p, i| {
        let t = sd.tuple(p, i);
        let split = t.iter().take_while(|&&x| bar(x) == 0).count();
        if split == 0 {
            return Chain::basis(p, i);
        }
        let (head, tail) = t.split_at(split);
        f_n_terms(m, head, false).iter().fold(Chain::zero(p), |acc, (u, c)| {
            let mut v = u.clone();
            v.extend_from_slice(tail);
            acc.add_scaled(&tuple_chain(big, &v), *c)
        })
    })
    .expect("f_φ has the right shape")
}

/// Outcome of one family of identities.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub m_max: usize,
    pub n_max: usize,
    pub identities: Vec<IdentityResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|r| r.counterexample.is_none())
    }

    pub fn get(&self, name: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|r| r.name == name)
    }
}

fn collect(name: &str, outcomes: Vec<Option<String>>) -> IdentityResult {
    let checked = outcomes.len();
    let counterexample = outcomes.into_iter().flatten().next();
    IdentityResult { name: name.to_string(), checked, counterexample }
}

/// First failing token of `check_morphism`, if any.
pub fn first_chain_failure(f: &AdcMorphism) -> Option<String> {
    check_morphism(f).first().map(|v| format!("{}: {}", v.token, v.message))
}

fn eq_or(a: &AdcMorphism, b: &AdcMorphism, what: impl FnOnce() -> String) -> Option<String> {
    if a == b {
        return None;
    }
    for p in 0..a.source().num_degrees() {
        for i in 0..a.source().rank(p) {
            if a.image(p, i) != b.image(p, i) {
                return Some(format!("{} at {}", what(), a.source().token(p, i)));
            }
        }
    }
    Some(what())
}

fn pairs(max: usize) -> Vec<(usize, usize)> {
    (0..=max).flat_map(|a| (0..=max).map(move |b| (a, b))).collect()
}

/// Chain-map checks for π_n, κ_{m,n}, f_n and every f_φ within the bounds.
pub fn verify_chain_maps(m_max: usize, n_max: usize) -> Vec<IdentityResult> {
    let mn = pairs(m_max.max(n_max)).into_iter().filter(|&(m, n)| m <= m_max && n <= n_max).collect::<Vec<_>>();
    let pi: Vec<_> = (0..=n_max).into_par_iter().map(|n| first_chain_failure(&pi_n(n)).map(|e| format!("π_{n}: {e}"))).collect();
    let kappa: Vec<_> = mn
        .par_iter()
        .map(|&(m, n)| first_chain_failure(&kappa_mn(m, n).map).map(|e| format!("κ_{m},{n}: {e}")))
        .collect();
    let f: Vec<_> = mn
        .par_iter()
        .map(|&(m, n)| first_chain_failure(&f_n_map(m, n).1).map(|e| format!("f_n (m={m}, n={n}): {e}")))
        .collect();
    let fphi: Vec<_> = mn
        .par_iter()
        .flat_map(|&(m, n)| {
            MonotoneMap::all(n, 1)
                .into_iter()
                .map(|phi| first_chain_failure(&f_phi_map(m, &phi)).map(|e| format!("f_φ (m={m}, φ={phi}): {e}")))
                .collect::<Vec<_>>()
        })
        .collect();
    vec![
        collect("chain map: pi_n", pi),
        collect("chain map: kappa_mn", kappa),
        collect("chain map: f_n", f),
        collect("chain map: f_phi", fphi),
    ]
}

/// All identities within the bounds. Every entry is checked exhaustively
/// over `m, m′ ≤ m_max`, `n, n′ ≤ n_max` and all monotone maps in range.
pub fn verify_suite(m_max: usize, n_max: usize) -> SuiteReport {
    let mut ids = verify_chain_maps(m_max, n_max);
    let ns: Vec<usize> = (0..=n_max).collect();
    let ms: Vec<usize> = (0..=m_max).collect();
    let mn: Vec<(usize, usize)> = ms.iter().flat_map(|&m| ns.iter().map(move |&n| (m, n))).collect();

    // π naturality: π_n (1 ⊗ c ψ) = c(Δ⁰ ⨿ ψ) π_{n′}
    let pis: Vec<AdcMorphism> = ns.iter().map(|&n| pi_n(n)).collect();
    let id1 = AdcMorphism::identity(c_delta_arc(1));
    let out: Vec<_> = ns
        .par_iter()
        .flat_map(|&n| {
            let pis = &pis;
            let id1 = &id1;
            (0..=n_max).into_par_iter().flat_map(move |n2| {
                MonotoneMap::all(n2, n)
                    .into_iter()
                    .map(|psi| {
                        let lhs = pis[n].after(&tensor_morphism_between(&simplex_cylinder(n2), &simplex_cylinder(n), id1, &c_of_map(&psi)).unwrap()).unwrap();
                        let rhs = c_of_map(&join_maps(&MonotoneMap::identity(0), &psi)).after(&pis[n2]).unwrap();
                        eq_or(&lhs, &rhs, || format!("n={n}, ψ=({psi})"))
                    })
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    ids.push(collect("naturality: pi_n", out));

    // π on the two ends
    let out: Vec<_> = ns
        .iter()
        .map(|&n| {
            let cyl = simplex_cylinder(n);
            let one = pis[n].after(&cyl.left_slot(&tuple_chain(1, &[1]))).unwrap();
            let zero = pis[n].after(&cyl.left_slot(&tuple_chain(1, &[0]))).unwrap();
            let j = c_of_map(&MonotoneMap::j_map(0, n));
            let k = AdcMorphism::constant(c_delta_arc(n), c_delta_arc(1 + n), &tuple_chain(1 + n, &[0]));
            eq_or(&one, &j, || format!("{{1}}⊗ end, n={n}")).or_else(|| eq_or(&zero, &k, || format!("{{0}}⊗ end, n={n}")))
        })
        .collect();
    ids.push(collect("ends: pi_n", out));

    // κ naturality
    let kappas: HashMap<(usize, usize), Kappa> = mn.par_iter().map(|&(m, n)| ((m, n), kappa_mn(m, n))).collect();
    let quads: Vec<(usize, usize, usize, usize)> = mn
        .iter()
        .flat_map(|&(m, n)| mn.iter().map(move |&(m2, n2)| (m, n, m2, n2)))
        .collect();
    let out: Vec<_> = quads
        .par_iter()
        .flat_map(|&(m, n, m2, n2)| {
            let (k, k2) = (&kappas[&(m, n)], &kappas[&(m2, n2)]);
            let (cyl, cyl2) = (simplex_cylinder(n), simplex_cylinder(n2));
            let mut res = Vec::new();
            for phi in MonotoneMap::all(m2, m) {
                for psi in MonotoneMap::all(n2, n) {
                    let jp = c_of_map(&join_maps(&phi, &psi));
                    let lhs = k.map.after(&jp).unwrap();
                    let side_k = k.glued.inj_k.after(&jp).unwrap();
                    let side_l = k
                        .glued
                        .inj_l
                        .after(&tensor_morphism_between(&cyl2, &cyl, &id1, &c_of_map(&psi)).unwrap())
                        .unwrap();
                    let res_map = match k2.glued.copair(&side_k, &side_l) {
                        Ok(g) => g,
                        Err(e) => {
                            res.push(Some(format!("gluing map undefined for φ=({phi}), ψ=({psi}): {e}")));
                            continue;
                        }
                    };
                    let rhs = res_map.after(&k2.map).unwrap();
                    res.push(eq_or(&lhs, &rhs, || format!("m={m}, n={n}, φ=({phi}), ψ=({psi})")));
                }
            }
            res
        })
        .collect();
    ids.push(collect("naturality: kappa_mn", out));

    // κ on the two pieces
    let out: Vec<_> = mn
        .iter()
        .map(|&(m, n)| {
            let k = &kappas[&(m, n)];
            let i = c_of_map(&MonotoneMap::i_map(m, n));
            let j = c_of_map(&MonotoneMap::j_map(m, n));
            let one = simplex_cylinder(n).left_slot(&tuple_chain(1, &[1]));
            eq_or(&k.map.after(&i).unwrap(), &k.glued.inj_k.after(&i).unwrap(), || format!("κ c(i), m={m}, n={n}"))
                .or_else(|| {
                    eq_or(&k.map.after(&j).unwrap(), &k.glued.inj_l.after(&one).unwrap(), || format!("κ c(j), m={m}, n={n}"))
                })
        })
        .collect();
    ids.push(collect("restrictions: kappa_mn", out));

    // f_n naturality and idempotence
    let fs: HashMap<(usize, usize), (Wedge, AdcMorphism)> = mn.par_iter().map(|&(m, n)| ((m, n), f_n_map(m, n))).collect();
    let triples: Vec<(usize, usize, usize)> = mn.iter().flat_map(|&(m, n)| ns.iter().map(move |&n2| (m, n, n2))).collect();
    let out: Vec<_> = triples
        .par_iter()
        .flat_map(|&(m, n, n2)| {
            let (w, f) = &fs[&(m, n)];
            let (w2, f2) = &fs[&(m, n2)];
            MonotoneMap::all(n2, n)
                .into_iter()
                .map(|psi| {
                    let psi1 = c_of_map(&join_maps(&MonotoneMap::identity(m), &psi));
                    let psi2 = c_of_map(&join_maps(&MonotoneMap::identity(0), &psi));
                    let lhs = f.after(&psi1).unwrap();
                    let g = w2.glued.copair(&w.glued.inj_k, &w.glued.inj_l.after(&psi2).unwrap()).unwrap();
                    eq_or(&lhs, &g.after(f2).unwrap(), || format!("m={m}, n={n}, ψ=({psi})"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    ids.push(collect("naturality: f_n", out));

    let out: Vec<_> = mn
        .par_iter()
        .map(|&(m, n)| {
            let (w, f) = &fs[&(m, n)];
            let endo = w.inclusion.after(f).unwrap();
            eq_or(&endo.after(&endo).unwrap(), &endo, || format!("f_n f_n, m={m}, n={n}")).or_else(|| {
                eq_or(&f.after(&w.inclusion).unwrap(), &AdcMorphism::identity(w.glued.complex.clone()), || {
                    format!("f_n ι, m={m}, n={n}")
                })
            })
        })
        .collect();
    ids.push(collect("idempotence: f_n", out));

    // f_φ naturality, endpoints, absorption
    let out: Vec<_> = triples
        .par_iter()
        .flat_map(|&(m, n, n2)| {
            let mut res = Vec::new();
            for phi in MonotoneMap::all(n, 1) {
                let fphi = f_phi_map(m, &phi);
                for psi in MonotoneMap::all(n2, n) {
                    let psi1 = c_of_map(&join_maps(&MonotoneMap::identity(m), &psi));
                    let lhs = fphi.after(&psi1).unwrap();
                    let rhs = psi1.after(&f_phi_map(m, &phi.after(&psi))).unwrap();
                    res.push(eq_or(&lhs, &rhs, || format!("m={m}, φ=({phi}), ψ=({psi})")));
                }
            }
            res
        })
        .collect();
    ids.push(collect("naturality: f_phi", out));

    let out: Vec<_> = mn
        .par_iter()
        .flat_map(|&(m, n)| {
            let (w, f) = &fs[&(m, n)];
            let endo = w.inclusion.after(f).unwrap();
            let id = AdcMorphism::identity(c_delta_arc(m + 1 + n));
            MonotoneMap::all(n, 1)
                .into_iter()
                .map(|phi| {
                    let fphi = f_phi_map(m, &phi);
                    let mut r = eq_or(&endo.after(&fphi).unwrap(), &endo, || format!("f_n f_φ, m={m}, φ=({phi})"));
                    if phi.image().iter().all(|&v| v == 0) {
                        r = r.or_else(|| eq_or(&fphi, &endo, || format!("φ ≡ 0, m={m}, n={n}")));
                    }
                    if phi.image().iter().all(|&v| v == 1) {
                        r = r.or_else(|| eq_or(&fphi, &id, || format!("φ ≡ 1, m={m}, n={n}")));
                    }
                    r
                })
                .collect::<Vec<_>>()
        })
        .collect();
    ids.push(collect("endpoints and absorption: f_phi", out));

    // the closing square κ_{0,n} π_n = (inj_L, inj_K π_n) ∘ split
    let out: Vec<_> = ns
        .par_iter()
        .map(|&n| {
            let k = kappa_mn(0, n);
            let lhs = k.map.after(&pis[n]).unwrap();
            let (q2, split) = match cylinder_split(&simplex_cylinder(n)) {
                Ok(x) => x,
                Err(e) => return Some(format!("n={n}: {e}")),
            };
            let glue = match q2.copair(&k.glued.inj_l, &k.glued.inj_k.after(&pis[n]).unwrap()) {
                Ok(g) => g,
                Err(e) => return Some(format!("n={n}: {e}")),
            };
            eq_or(&lhs, &glue.after(&split).unwrap(), || format!("n={n}"))
        })
        .collect();
    ids.push(collect("closing square: kappa_0n pi_n", out));

    SuiteReport { m_max, n_max, identities: ids }
}

/// `Hom(cΔ¹ ⊗ X, L)` restricted to `(0)⊗− = c` and `(1)⊗− = target`.
pub fn transformations_from_point(
    solver: &Solver,
    tensor: &Arc<Tensor>,
    c: &Chain,
    target: &AdcMorphism,
) -> (Vec<OplaxTransformation>, bool) {
    let mut fixed = HashMap::new();
    for deg in 0..tensor.complex.num_degrees() {
        for n in 0..tensor.complex.rank(deg) {
            let (p, e, q, j) = tensor.factors(deg, n);
            if p != 0 {
                continue;
            }
            let val = match (e, q) {
                (0, 0) => c.clone(),
                (0, _) => Chain::zero(deg),
                _ => target.image(q, j).clone(),
            };
            fixed.insert((deg, n), val);
        }
    }
    let h = hom_enumerate_with(solver, &tensor.complex, &fixed);
    let ts = h
        .morphisms
        .into_iter()
        .map(|h| OplaxTransformation::from_parts(tensor.clone(), h).expect("enumerated morphisms are valid"))
        .collect();
    (ts, h.complete)
}

/// `θ_n(c′, a) = (a, c′ ∘ π_n)`.
pub fn theta_forward(c_prime: &AdcMorphism, a: &AdcMorphism) -> Result<(AdcMorphism, OplaxTransformation)> {
    let n = a.source().top_degree();
    let tau = OplaxTransformation::from_parts(simplex_cylinder(n), c_prime.after(&pi_n(n))?)?;
    Ok((a.clone(), tau))
}

/// Rebuilds `c′: cΔ^{1+n} → L` from `τ` generator by generator.
pub fn theta_inverse(a: &AdcMorphism, tau: &OplaxTransformation) -> Result<AdcMorphism> {
    let n = a.source().top_degree();
    let cyl = simplex_cylinder(n);
    let sd = simplex(1 + n);
    let img = |left: &[usize], t: &[usize]| -> Chain {
        let x = cyl.pair(&tuple_chain(1, left), &tuple_chain(n, t));
        tau.h().apply(&x)
    };
    let c = AdcMorphism::from_fn(c_delta_arc(1 + n), tau.codomain().clone(), |p, i| {
        let t = sd.tuple(p, i);
        if t[0] == 0 {
            if p == 0 {
                img(&[0], &[0])
            } else {
                img(&[0, 1], &shifted(&t[1..], -1))
            }
        } else {
            img(&[1], &shifted(t, -1))
        }
    })?;
    if let Some(e) = first_chain_failure(&c) {
        return Err(Error::Domain(format!("reconstructed c′ is not a morphism: {e}")));
    }
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub n: usize,
    pub nerve_side: usize,
    pub slice_side: usize,
    pub round_trips: bool,
    pub families_round_trip: bool,
    pub complete: bool,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.complete && self.nerve_side == self.slice_side && self.round_trips && self.families_round_trip
    }
}

/// The slice cells carried by the atoms of `X` under `(a, τ)`, in basis order.
pub fn slice_family(cat: &SliceCategory, x: &Arc<Complex>, a: &AdcMorphism, tau: &OplaxTransformation) -> Result<Vec<SliceCell>> {
    let mut out = Vec::new();
    for p in 0..x.num_degrees() {
        for i in 0..x.rank(p) {
            let atom = crate::complex::atom_tableau(x, p, i).cell;
            out.push(cat.cell_of(a, tau, &atom)?);
        }
    }
    Ok(out)
}

/// Inverse of [`slice_family`]: reads `a` and `τ` off the top entries.
pub fn pair_of_family(cat: &SliceCategory, x: &Arc<Complex>, family: &[SliceCell]) -> Result<(AdcMorphism, OplaxTransformation)> {
    let mut at = HashMap::new();
    let mut k = 0;
    for p in 0..x.num_degrees() {
        for i in 0..x.rank(p) {
            cat.validate(&family[k])?;
            at.insert((p, i), k);
            k += 1;
        }
    }
    let a = AdcMorphism::from_fn(x.clone(), cat.over().clone(), |p, i| family[at[&(p, i)]].a_top().top().clone())?;
    let tensor = Arc::new(Tensor::new(c_delta_arc(1), x.clone()));
    let h = AdcMorphism::from_fn(tensor.complex.clone(), cat.under().clone(), |deg, n| {
        let (p, e, q, j) = tensor.factors(deg, n);
        match (p, e) {
            (0, 0) => if q == 0 { cat.c.top().clone() } else { Chain::zero(deg) },
            (0, _) => cat.u.apply(a.image(q, j)),
            _ => family[at[&(q, j)]].alpha_top().top().clone(),
        }
    })?;
    Ok((a, OplaxTransformation::from_parts(tensor, h)?))
}

/// Checks θ_n for `u: K → L`, an object `c` of `ν(L)` and dimension `n`:
/// both sides are enumerated independently, θ and its inverse are applied,
/// and every simplex of the slice side is pushed through the slice-cell
/// family and back.
pub fn theta_check(u: &AdcMorphism, c: &Chain, n: usize, bound: Option<i64>) -> Result<ThetaReport> {
    let (k, l) = (u.source().clone(), u.target().clone());
    let sk = Solver::new(k.clone(), bound);
    let sl = Solver::new(l.clone(), bound);
    let src = c_delta_arc(n);
    let big = c_delta_arc(1 + n);
    let mut complete = true;
    // nerve side: c′: cΔ^{1+n} → L with c′(0) = c and c′ j_{0,n} = u a
    let as_ = hom_enumerate_with(&sk, &src, &HashMap::new());
    complete &= as_.complete;
    let mut nerve_side = Vec::new();
    let j = c_of_map(&MonotoneMap::j_map(0, n));
    for a in &as_.morphisms {
        let ua = u.after(a)?;
        let mut fixed = HashMap::new();
        fixed.insert((0, 0), c.clone());
        for p in 0..src.num_degrees() {
            for i in 0..src.rank(p) {
                let t = j.image(p, i).terms()[0].0;
                fixed.insert((p, t), ua.image(p, i).clone());
            }
        }
        let cs = hom_enumerate_with(&sl, &big, &fixed);
        complete &= cs.complete;
        for cp in cs.morphisms {
            nerve_side.push((cp, a.clone()));
        }
    }
    // slice side: (a, τ) with τ: c ⇒ u a
    let cyl = simplex_cylinder(n);
    let mut slice_side = Vec::new();
    for a in &as_.morphisms {
        let (ts, ok) = transformations_from_point(&sl, &cyl, c, &u.after(a)?);
        complete &= ok;
        for t in ts {
            slice_side.push((a.clone(), t));
        }
    }
    let mut round_trips = true;
    let slice_index: HashMap<(&AdcMorphism, &AdcMorphism), usize> =
        slice_side.iter().enumerate().map(|(i, (a, t))| ((a, t.h()), i)).collect();
    let mut hit = vec![false; slice_side.len()];
    for (cp, a) in &nerve_side {
        let (a2, tau) = theta_forward(cp, a)?;
        match slice_index.get(&(&a2, tau.h())) {
            Some(&i) => hit[i] = true,
            None => round_trips = false,
        }
        round_trips &= theta_inverse(&a2, &tau)? == *cp;
    }
    round_trips &= hit.iter().all(|&h| h);
    let cat = SliceCategory::new(u.clone(), crate::cell::Cell::object(c.clone()))?;
    let mut families_round_trip = true;
    for (a, tau) in &slice_side {
        let cp = theta_inverse(a, tau)?;
        round_trips &= theta_forward(&cp, a)?.1 == *tau;
        let fam = slice_family(&cat, &src, a, tau)?;
        let (a2, tau2) = pair_of_family(&cat, &src, &fam)?;
        families_round_trip &= a2 == *a && tau2 == *tau;
    }
    Ok(ThetaReport { n, nerve_side: nerve_side.len(), slice_side: slice_side.len(), round_trips, families_round_trip, complete })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RetractReport {
    pub dims: usize,
    pub checks: Vec<IdentityResult>,
}

impl RetractReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.counterexample.is_none())
    }
}

/// The strong deformation retraction of `b\N A` onto `b_m\N A` on nerve
/// tables, for a simplicial map `u: N A → N B` and an m-simplex `b` of
/// `N B`. Checks that `s` and `r` land in the right slices and are
/// simplicial, `r s = id`, `h(0, −) = s r`, `h(1, −) = id`, `h` is
/// simplicial, and `h(φ, s z) = s z`.
pub fn verify_retract(
    na: &Nerve,
    nb: &Nerve,
    u: &SimplicialMap,
    m: usize,
    b: usize,
    max_dim: usize,
) -> Result<RetractReport> {
    let big = relative_under(&na.set, &nb.set, u, m, b)?;
    let bm = nb.set.facet(m, b, &[m])?;
    let small = relative_under(&na.set, &nb.set, u, 0, bm)?;
    let dims = big.cap().min(small.cap()).min(max_dim);
    let bmor = nb.set.simplex(m, b).clone();
    let delta1 = standard_simplex(1, dims);
    let mut checks: HashMap<&str, Vec<Option<String>>> = HashMap::new();
    let mut note = |k: &'static str, v: Option<String>| checks.entry(k).or_default().push(v);
    let mut s_tab: Vec<Vec<usize>> = Vec::new();
    let mut r_tab: Vec<Vec<usize>> = Vec::new();
    for n in 0..=dims {
        let w = Wedge::new(m, n);
        let (_, f) = f_n_map(m, n);
        let tail = MonotoneMap::new(1 + n, m + 1 + n, (m..=m + 1 + n).collect()).unwrap();
        // r
        let mut rt = Vec::new();
        for &(y, x) in big.simplices(n) {
            let y2 = nb.set.act(&tail, y);
            match small.index_of(n, &(y2, x)) {
                Some(i) => rt.push(i),
                None => {
                    note("r lands in the slice", Some(format!("n={n}")));
                    rt.push(usize::MAX);
                }
            }
        }
        // s
        let mut st = Vec::new();
        for &(y, x) in small.simplices(n) {
            let yp = nb.set.simplex(1 + n, y);
            let glued = w.glued.copair(&bmor, yp)?;
            let z = glued.after(&f)?;
            match nb.set.index_of(m + 1 + n, &z).and_then(|zi| big.index_of(n, &(zi, x))) {
                Some(i) => st.push(i),
                None => {
                    note("s lands in the slice", Some(format!("n={n}")));
                    st.push(usize::MAX);
                }
            }
        }
        r_tab.push(rt);
        s_tab.push(st);
    }
    for n in 0..=dims {
        for (i, &si) in s_tab[n].iter().enumerate() {
            let ok = si != usize::MAX && r_tab[n][si] == i;
            note("r s = id", (!ok).then(|| format!("n={n}, simplex {i}")));
        }
    }
    for psi in crate::sset::all_maps(dims) {
        let (n2, n) = (psi.src(), psi.dst());
        for i in 0..small.count(n) {
            let ok = big.act(&psi, s_tab[n][i]) == s_tab[n2][small.act(&psi, i)];
            note("s simplicial", (!ok).then(|| format!("ψ=({psi}), simplex {i}")));
        }
        for i in 0..big.count(n) {
            let ok = small.act(&psi, r_tab[n][i]) == r_tab[n2][big.act(&psi, i)];
            note("r simplicial", (!ok).then(|| format!("ψ=({psi}), simplex {i}")));
        }
    }
    // h(φ, (y, x)) = (y f_φ, x)
    let h = |n: usize, phi: &MonotoneMap, z: usize| -> Option<usize> {
        let (y, x) = big.simplices(n)[z];
        let yz = nb.set.simplex(m + 1 + n, y).after(&f_phi_map(m, phi)).ok()?;
        let yi = nb.set.index_of(m + 1 + n, &yz)?;
        big.index_of(n, &(yi, x))
    };
    let mut htab: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for n in 0..=dims {
        for (pi, phi) in delta1.simplices(n).iter().enumerate() {
            for z in 0..big.count(n) {
                match h(n, phi, z) {
                    Some(v) => {
                        htab.insert((n, pi, z), v);
                    }
                    None => note("h lands in the slice", Some(format!("n={n}, φ=({phi}), simplex {z}"))),
                }
            }
        }
    }
    for n in 0..=dims {
        for (pi, phi) in delta1.simplices(n).iter().enumerate() {
            let zero = phi.image().iter().all(|&v| v == 0);
            let one = phi.image().iter().all(|&v| v == 1);
            for z in 0..big.count(n) {
                let Some(&hz) = htab.get(&(n, pi, z)) else { continue };
                if zero {
                    let ok = r_tab[n][z] != usize::MAX && hz == s_tab[n][r_tab[n][z]];
                    note("h(0, −) = s r", (!ok).then(|| format!("n={n}, simplex {z}")));
                }
                if one {
                    note("h(1, −) = id", (hz != z).then(|| format!("n={n}, simplex {z}")));
                }
                for n2 in 0..=n {
                    for psi in MonotoneMap::all(n2, n) {
                        let lhs = htab.get(&(n2, delta1.act(&psi, pi), big.act(&psi, z)));
                        let ok = lhs == Some(&big.act(&psi, hz));
                        note("h simplicial", (!ok).then(|| format!("φ=({phi}), ψ=({psi}), simplex {z}")));
                    }
                }
            }
            for (i, &si) in s_tab[n].iter().enumerate() {
                let ok = htab.get(&(n, pi, si)) == Some(&si);
                note("h(φ, s z) = s z", (!ok).then(|| format!("φ=({phi}), simplex {i}")));
            }
        }
    }
    let mut names: Vec<&str> = checks.keys().copied().collect();
    names.sort();
    let checks = names.into_iter().map(|k| collect(k, checks[k].clone())).collect();
    Ok(RetractReport { dims, checks })
}

/// Runs [`verify_retract`] for `u: cΔᵃ → cΔᵇ` over every m-simplex with
/// `m ≤ m_max`, slice dimensions up to `max_dim`, and merges the reports.
pub fn retract_suite(u: &AdcMorphism, m_max: usize, max_dim: usize, bound: Option<i64>) -> Result<RetractReport> {
    let cap = m_max + 1 + max_dim;
    let na = crate::sset::nerve(u.source(), cap, bound)?;
    let nb = crate::sset::nerve(u.target(), cap, bound)?;
    if !na.complete || !nb.complete {
        return Err(Error::Incomplete("nerve tables are not certified complete".into()));
    }
    let f = na.map_to(&nb, u)?;
    let jobs: Vec<(usize, usize)> = (0..=m_max).flat_map(|m| (0..nb.set.count(m)).map(move |b| (m, b))).collect();
    let reports = jobs
        .par_iter()
        .map(|&(m, b)| verify_retract(&na, &nb, &f, m, b, max_dim).map(|r| (m, b, r)))
        .collect::<Result<Vec<_>>>()?;
    let mut merged: std::collections::BTreeMap<String, IdentityResult> = Default::default();
    for (m, b, r) in reports {
        for c in r.checks {
            let e = merged.entry(c.name.clone()).or_insert(IdentityResult { name: c.name.clone(), checked: 0, counterexample: None });
            e.checked += c.checked;
            if e.counterexample.is_none() {
                e.counterexample = c.counterexample.map(|x| format!("m={m}, base {b}: {x}"));
            }
        }
    }
    Ok(RetractReport { dims: max_dim, checks: merged.into_values().collect() })
}

/// The bisimplicial map `S(T): S(v) → S(w)` for a triangle, on nerve tables:
/// `(c′, a) ↦ ((c′, α(1 ⊗ a)) κ_{m,n}, u a)`. Checks that it lands in
/// `S(w)`, commutes with the bi-action and the forgetful maps, and keeps
/// `c′ i_{m,n}` fixed.
pub fn verify_s_of_t(
    tri: &crate::slice::Triangle,
    na: &Nerve,
    nb: &Nerve,
    nc: &Nerve,
) -> Result<Vec<IdentityResult>> {
    let fv = na.map_to(nc, &tri.v)?;
    let fw = nb.map_to(nc, &tri.w)?;
    let fu = na.map_to(nb, &tri.u)?;
    let sv = crate::sset::Bisimplicial::build(&na.set, &nc.set, &fv)?;
    let sw = crate::sset::Bisimplicial::build(&nb.set, &nc.set, &fw)?;
    let mut lands = Vec::new();
    let mut table: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut column = Vec::new();
    let mut forget = Vec::new();
    for (&(m, n), cells) in sv.cells() {
        let k = kappa_mn(m, n);
        let cyl = simplex_cylinder(n);
        let im = MonotoneMap::i_map(m, n);
        for (idx, &(y, x)) in cells.iter().enumerate() {
            let cp = nc.set.simplex(m + 1 + n, y);
            let a = na.set.simplex(n, x);
            let whisk = tri.alpha.whisker_right(a)?;
            let glue = k.glued.copair(cp, &whisk.h().with_ends(cyl.complex.clone(), whisk.codomain().clone())?)?;
            let z = glue.after(&k.map)?;
            let ua = fu.apply(n, x);
            let found = nc.set.index_of(m + 1 + n, &z).and_then(|zi| sw.index_of(m, n, &(zi, ua)));
            lands.push(found.is_none().then(|| format!("(m,n)=({m},{n}), simplex {idx}")));
            if let Some(t) = found {
                table.insert((m, n, idx), t);
                let zi = sw.cell(m, n, t).0;
                let ok = nc.set.act(&im, zi) == nc.set.act(&im, y);
                column.push((!ok).then(|| format!("(m,n)=({m},{n}), simplex {idx}")));
                let ok = sw.cell(m, n, t).1 == fu.apply(n, x);
                forget.push((!ok).then(|| format!("(m,n)=({m},{n}), simplex {idx}")));
            }
        }
    }
    let mut natural = Vec::new();
    for (&(m, n), cells) in sv.cells() {
        for m2 in 0..=m + n {
            for n2 in 0..=m + n {
                if m2 + 1 + n2 > sv.cap() {
                    continue;
                }
                for phi in MonotoneMap::all(m2, m) {
                    for psi in MonotoneMap::all(n2, n) {
                        for idx in 0..cells.len() {
                            let (Some(&t), Some(&t2)) =
                                (table.get(&(m, n, idx)), table.get(&(m2, n2, sv.act(&phi, &psi, idx))))
                            else {
                                continue;
                            };
                            let ok = sw.act(&phi, &psi, t) == t2;
                            natural.push((!ok).then(|| format!("φ=({phi}), ψ=({psi}), simplex {idx}")));
                        }
                    }
                }
            }
        }
    }
    Ok(vec![
        collect("S(T) lands in S(w)", lands),
        collect("S(T) bisimplicial", natural),
        collect("S(T) fixes the column index", column),
        collect("S(T) over N(u)", forget),
    ])
}

/// `S(f)` for a nerve-level map induced by an ADC morphism.
pub fn s_of(na: &Nerve, nb: &Nerve, f: &AdcMorphism) -> Result<crate::sset::Bisimplicial> {
    crate::sset::Bisimplicial::build(&na.set, &nb.set, &na.map_to(nb, f)?)
}
