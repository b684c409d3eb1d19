//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every check is exhaustive over the stated range.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use steiner_lab::complex::{atom_tableau, is_loopfree, is_unitary, strong_loopfree_order, validate_complex, Complex};
use steiner_lab::gray::Tensor;
use steiner_lab::nu::{enumerate_cells, lambda_of_nu, Nu};
use steiner_lab::omega::check_axioms;
use steiner_lab::simplex::{c_delta_arc, c_of_map, MonotoneMap};
use steiner_lab::slice::cylinder_split;
use steiner_lab::sset::{decalage_homotopy, nerve, standard_simplex, theta_square_holds, SimplicialMap};
use steiner_lab::theorem_a::{
    f_n_mutant, f_phi_map, first_chain_failure, kappa_mn, kappa_target, pi_n, retract_suite, simplex_cylinder,
    theta_check, verify_chain_maps, verify_suite, Wedge,
};
use steiner_lab::{check_morphism, AdcMorphism, Chain};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every complex named in the structural criterion.
fn structural_family() -> Vec<(String, Arc<Complex>)> {
    let mut out = Vec::new();
    for n in 0..=5 {
        out.push((format!("cΔ{n}"), c_delta_arc(n)));
    }
    for p in 0..=5 {
        for q in 0..=5 - p {
            let t = Tensor::new(c_delta_arc(p), c_delta_arc(q));
            out.push((format!("cΔ{p}⊗cΔ{q}"), t.complex.clone()));
        }
    }
    for m in 0..=3 {
        for n in 0..=3 {
            out.push((format!("κ target ({m},{n})"), kappa_target(m, n).complex.clone()));
            out.push((format!("wedge ({m},{n})"), Wedge::new(m, n).glued.complex.clone()));
        }
    }
    for n in 0..=3 {
        let (q, _) = cylinder_split(&simplex_cylinder(n)).expect("split exists");
        out.push((format!("split cylinder {n}"), q.complex.clone()));
    }
    out
}

fn structural() -> Check {
    let family = structural_family();
    for (name, k) in &family {
        let v = validate_complex(k);
        ensure(v.is_empty(), || format!("{name}: {}", v[0].message))?;
        ensure(is_unitary(k), || format!("{name} is not unitary"))?;
        ensure(is_loopfree(k), || format!("{name} is not loop-free"))?;
        ensure(strong_loopfree_order(k).is_some(), || format!("{name} is not strongly loop-free"))?;
    }
    Ok(format!("{} complexes", family.len()))
}

fn atoms() -> Check {
    let k = c_delta_arc(2);
    let top = atom_tableau(&k, 2, 0).cell;
    let rows: Vec<String> =
        top.rows().iter().map(|[a, b]| format!("({}|{})", k.fmt_chain(a), k.fmt_chain(b))).collect();
    let want = ["((0)|(2))", "((0,2)|(0,1) + (1,2))", "((0,1,2)|(0,1,2))"];
    ensure(rows == want, || format!("⟨(0,1,2)⟩ rows are {rows:?}"))?;
    let mut count = 0;
    for (name, k) in structural_family() {
        for p in 0..k.num_degrees() {
            for i in 0..k.rank(p) {
                let c = atom_tableau(&k, p, i).cell;
                for e in 0..2 {
                    ensure(k.e(&c.row(0)[e]) == 1, || format!("{name}: e of ⟨{}⟩ row 0", k.token(p, i)))?;
                }
                for r in 1..=c.dim() {
                    let diff = c.row(r - 1)[1].sub(&c.row(r - 1)[0]);
                    for e in 0..2 {
                        ensure(k.d(&c.row(r)[e]) == diff, || format!("{name}: d-row identity fails on ⟨{}⟩ row {r}", k.token(p, i)))?;
                        ensure(c.row(r)[e].is_positive(), || format!("{name}: negative entry in ⟨{}⟩", k.token(p, i)))?;
                    }
                }
                ensure(c.top() == &Chain::basis(p, i), || format!("{name}: top of ⟨{}⟩", k.token(p, i)))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} atoms"))
}

/// Brute-force Hom(cΔⁿ, K) over images with coefficients in {0, 1}.
fn brute_hom(n: usize, k: &Arc<Complex>) -> usize {
    let src = c_delta_arc(n);
    let choices: Vec<Vec<Chain>> = (0..k.num_degrees().max(n + 1))
        .map(|p| {
            let r = if p < k.num_degrees() { k.rank(p) } else { 0 };
            (0..1u32 << r)
                .map(|mask| Chain::from_terms(p, (0..r).filter(|i| mask >> i & 1 == 1).map(|i| (i, 1))))
                .collect()
        })
        .collect();
    let slots: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..src.rank(p)).map(move |i| (p, i))).collect();
    let mut idx = vec![0usize; slots.len()];
    let mut found = 0;
    loop {
        let mut images: Vec<Vec<Chain>> = (0..=n).map(|p| vec![Chain::zero(p); src.rank(p)]).collect();
        for (s, &(p, i)) in slots.iter().enumerate() {
            images[p][i] = choices[p][idx[s]].clone();
        }
        if let Ok(f) = AdcMorphism::new(src.clone(), k.clone(), images) {
            if check_morphism(&f).is_empty() {
                found += 1;
            }
        }
        let mut s = 0;
        loop {
            if s == slots.len() {
                return found;
            }
            idx[s] += 1;
            if idx[s] < choices[slots[s].0].len() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

fn orientals() -> Check {
    let e = enumerate_cells(&c_delta_arc(2), 2, None);
    ensure(e.complete, || "cell enumeration of O₂ not certified".into())?;
    let got = (e.by_dim[0].len(), e.non_identity(1), e.non_identity(2));
    ensure(got == (3, 4, 1), || format!("ν(cΔ²) has {got:?}"))?;
    let n1 = nerve(&c_delta_arc(1), 3, None).map_err(|e| e.to_string())?;
    let d1 = standard_simplex(1, 3);
    let iso = SimplicialMap::from_fn(&d1, &n1.set, 3, |_, phi| c_of_map(phi)).map_err(|e| e.to_string())?;
    ensure(iso.is_simplicial(&d1, &n1.set), || "Δ¹ → N(O₁) is not simplicial".into())?;
    ensure(d1.counts() == n1.set.counts(), || format!("N(O₁) counts {:?}", n1.set.counts()))?;
    for n in 0..=3 {
        let mut seen: Vec<usize> = (0..d1.count(n)).map(|i| iso.apply(n, i)).collect();
        seen.sort();
        seen.dedup();
        ensure(seen.len() == d1.count(n), || format!("Δ¹ → N(O₁) not injective in dim {n}"))?;
    }
    let n2 = nerve(&c_delta_arc(2), 2, None).map_err(|e| e.to_string())?;
    let (c, nd) = (n2.set.counts(), n2.set.nondegenerate_counts());
    ensure(c[1] == 7 && c[2] == 15 && nd[2] == 4, || format!("N(O₂) counts {c:?}, nondegenerate {nd:?}"))?;
    let k = c_delta_arc(2);
    let brute = (brute_hom(1, &k), brute_hom(2, &k));
    ensure(brute == (7, 15), || format!("brute-force Hom counts {brute:?}"))?;
    Ok("O₂ cells 3/4/1, N(O₁) ≅ Δ¹, N(O₂) 7/15 (4 nondegenerate)".into())
}

fn lambda_nu() -> Check {
    for n in 0..=3 {
        let l = lambda_of_nu(&c_delta_arc(n), n, None).map_err(|e| e.to_string())?;
        for d in &l {
            ensure(d.matches(), || format!("cΔ{n} degree {}: rank {} torsion {:?}, basis {}", d.degree, d.rank, d.torsion, d.basis_size))?;
        }
    }
    Ok("cΔ0..cΔ3".into())
}

fn omega_axioms() -> Check {
    let k = c_delta_arc(3);
    let e = enumerate_cells(&k, 3, None);
    ensure(e.complete, || "cell enumeration of O₃ not certified".into())?;
    let rep = check_axioms(&Nu::new(k), &e.by_dim);
    ensure(rep.passed(), || format!("{:?}", rep.failures()[0]))?;
    for law in ["associativity", "interchange", "left unit", "right unit"] {
        ensure(rep.laws.get(law).is_some_and(|l| l.0 > 0), || format!("no instances of {law}"))?;
    }
    Ok(format!("{} instances over {} cells", rep.total(), e.by_dim.iter().map(|l| l.len()).sum::<usize>()))
}

/// `f` with the image of one generator replaced.
fn mutate(f: &AdcMorphism, token: &str, image: Chain) -> AdcMorphism {
    let (p, i) = f.source().locate(token).expect("token exists");
    AdcMorphism::from_fn(f.source().clone(), f.target().clone(), |q, j| {
        if (q, j) == (p, i) {
            image.clone()
        } else {
            f.image(q, j).clone()
        }
    })
    .expect("same shape")
}

fn chain_maps() -> Check {
    let ids = verify_chain_maps(4, 4);
    let mut checked = 0;
    for r in &ids {
        ensure(r.counterexample.is_none(), || format!("{}: {}", r.name, r.counterexample.as_ref().unwrap()))?;
        checked += r.checked;
    }
    let mut mutants = Vec::new();
    for m in 1..=4 {
        for n in 0..=4 {
            mutants.push((format!("f_n sign flip ({m},{n})"), f_n_mutant(m, n).1));
        }
    }
    let pi = pi_n(2);
    mutants.push(("π_2 drops (0,1)⊗(0)".into(), mutate(&pi, "(0,1)⊗(0)", Chain::zero(1))));
    let k = kappa_mn(1, 1);
    let short = k.glued.inj_k.apply(&c_delta_arc(3).gen("(1,3)").unwrap());
    mutants.push(("κ_1,1 drops its cylinder term".into(), mutate(&k.map, "(1,3)", short)));
    let fphi = f_phi_map(1, &MonotoneMap::identity(1));
    let one = c_delta_arc(3).gen("(0,1,3)").unwrap();
    mutants.push(("f_φ drops a term".into(), mutate(&fphi, "(0,2,3)", one)));
    for (name, f) in &mutants {
        ensure(first_chain_failure(f).is_some(), || format!("mutant {name} passed"))?;
    }
    Ok(format!("{checked} maps, {} mutants rejected", mutants.len()))
}

fn naturality_and_retract() -> Check {
    let rep = verify_suite(3, 3);
    for r in &rep.identities {
        ensure(r.counterexample.is_none(), || format!("{}: {}", r.name, r.counterexample.as_ref().unwrap()))?;
        ensure(r.checked > 0, || format!("{} checked nothing", r.name))?;
    }
    for name in ["idempotence: f_n", "endpoints and absorption: f_phi", "closing square: kappa_0n pi_n"] {
        ensure(rep.get(name).is_some(), || format!("missing identity {name}"))?;
    }
    let o2 = c_delta_arc(2);
    let maps = [AdcMorphism::identity(o2.clone()), c_of_map(&MonotoneMap::new(1, 2, vec![0, 2]).unwrap())];
    let mut retract_checks = 0;
    for u in &maps {
        let r = retract_suite(u, 2, 2, None).map_err(|e| e.to_string())?;
        for c in &r.checks {
            ensure(c.counterexample.is_none(), || format!("retract {}: {}", c.name, c.counterexample.as_ref().unwrap()))?;
            retract_checks += c.checked;
        }
        for name in ["r s = id", "h(0, −) = s r", "h(1, −) = id", "h simplicial", "h(φ, s z) = s z"] {
            ensure(r.checks.iter().any(|c| c.name == name && c.checked > 0), || format!("retract check {name} empty"))?;
        }
    }
    let total: usize = rep.identities.iter().map(|r| r.checked).sum();
    Ok(format!("{} identities ({total} instances), retract {retract_checks} instances", rep.identities.len()))
}

fn theta() -> Check {
    let mut n_pairs = 0;
    for (a, n_max) in [(1, 2), (2, 1)] {
        let k = c_delta_arc(a);
        let id = AdcMorphism::identity(k.clone());
        for n in 0..=n_max {
            let r = theta_check(&id, &k.gen("(0)").unwrap(), n, None).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("O{a}, n={n}: {r:?}"))?;
            n_pairs += r.nerve_side;
        }
    }
    Ok(format!("{n_pairs} simplices round-trip"))
}

fn decalage() -> Check {
    let cap = 2;
    let mut checked = 0;
    let d2 = standard_simplex(2, 2 + cap + 1);
    let n2 = nerve(&c_delta_arc(2), 2 + cap + 1, None).map_err(|e| e.to_string())?;
    let mut cases: Vec<(&str, usize, usize)> = Vec::new();
    for n in 0..=2 {
        for i in 0..d2.count(n) {
            cases.push(("Δ²", n, i));
        }
        for i in 0..n2.set.count(n) {
            cases.push(("N(O₂)", n, i));
        }
    }
    for (which, n, i) in &cases {
        let table_cap = n + 1 + cap;
        let r = if *which == "Δ²" {
            decalage_homotopy(&standard_simplex(2, table_cap), *n, *i)
        } else {
            decalage_homotopy(&n2.set, *n, *i)
        }
        .map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{which} over {n}-simplex {i}: {}", r.failures[0]))?;
        checked += r.checked;
    }
    ensure((0..=2).all(|n| theta_square_holds(n, cap)), || "θ_φ square fails".into())?;
    Ok(format!("{} base simplices, {checked} instances", cases.len()))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Check, Duration)> = vec![
        ("1 structural validity", structural, Duration::from_secs(10)),
        ("2 atoms", atoms, Duration::MAX),
        ("3 oriental and nerve counts", orientals, Duration::MAX),
        ("4 lambda nu", lambda_nu, Duration::from_secs(60)),
        ("5 omega axioms on O3", omega_axioms, Duration::from_secs(120)),
        ("6 chain maps and mutants", chain_maps, Duration::from_secs(60)),
        ("7 naturality and retract suite", naturality_and_retract, Duration::from_secs(300)),
        ("8 theta round-trips", theta, Duration::MAX),
        ("9 decalage homotopy", decalage, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let res = match res {
            Ok(s) if took > limit => Err(format!("{s}, but took {took:.2?} (limit {limit:?})")),
            other => other,
        };
        match res {
            Ok(s) => println!("PASS {name}: {s} [{took:.2?}]"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e} [{took:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
