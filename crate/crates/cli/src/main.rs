use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use steiner_lab::cell::fmt_cell;
use steiner_lab::complex::{is_loopfree, is_unitary, strong_loopfree_order, validate_complex, Complex};
use steiner_lab::gray::{pushout_complex, Tensor};
use steiner_lab::json;
use steiner_lab::nu::enumerate_cells;
use steiner_lab::simplex::{c_delta_arc, c_of_map, MonotoneMap};
use steiner_lab::slice::SliceCategory;
use steiner_lab::sset::{self, Bisimplicial};
use steiner_lab::theorem_a::{self, IdentityResult};
use steiner_lab::{AdcMorphism, Cell};

#[derive(Parser)]
#[command(name = "steiner-lab", version, about = "Exact computations with augmented directed complexes")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest coefficient tried when enumerating chains (default: certified search).
    #[arg(long, global = true, value_name = "B")]
    coeff_bound: Option<i64>,
    /// Truncation dimension for simplicial tables.
    #[arg(long, global = true, value_name = "D")]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on a complex file.
    Adc {
        #[command(subcommand)]
        op: AdcOp,
    },
    /// Cells of the oriental O_N, or its complex with --complex.
    Oriental {
        n: usize,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, alias = "count")]
        counts: bool,
        /// Print the complex c(Δ^N) as JSON instead.
        #[arg(long)]
        complex: bool,
    },
    /// Tensor product of two complexes.
    Tensor { a: PathBuf, b: PathBuf },
    /// Pushout of f: M → K and g: M → L.
    Pushout { m: PathBuf, k: PathBuf, l: PathBuf, f: PathBuf, g: PathBuf },
    /// Cells of ν(K) up to a dimension.
    Cells {
        k: PathBuf,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, alias = "count")]
        counts: bool,
    },
    /// Street nerve tables of ν(K).
    Nerve {
        k: PathBuf,
        #[arg(long, alias = "count")]
        counts: bool,
    },
    /// Cells of the slice c\u for u: A → K; u.json carries "source".
    Slice {
        k: PathBuf,
        u: PathBuf,
        /// A vertex token of K.
        c: String,
        #[arg(long, default_value_t = 1)]
        cells: usize,
    },
    /// Under- or over-slice of the nerve of K at a simplex, with décalage data.
    SliceSimplicial(SliceSimplicialArgs),
    /// The bisimplicial set S(f) for f: A → B.
    Bisimplicial { a: PathBuf, b: PathBuf, f: PathBuf },
    /// Exhaustive verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Graphviz output for a complex or the 1-skeleton of its nerve.
    ExportDot {
        k: PathBuf,
        #[arg(long)]
        nerve: bool,
    },
}

#[derive(Subcommand)]
enum AdcOp {
    /// Structural checks: complex, unitary, loop-free, strongly loop-free.
    Validate { k: PathBuf },
}

#[derive(Args)]
struct SliceSimplicialArgs {
    k: PathBuf,
    /// Dimension of the simplex sliced at.
    #[arg(long, default_value_t = 0)]
    base_dim: usize,
    /// Index of that simplex in the nerve table.
    #[arg(long, default_value_t = 0)]
    simplex: usize,
    /// Take the over-slice instead of the under-slice.
    #[arg(long)]
    over: bool,
    /// Check the contraction homotopy of the over-slice.
    #[arg(long)]
    decalage: bool,
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// The chain maps, naturality squares, θ_n and the nerve retract.
    TheoremA {
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, value_name = "FILE")]
        json_report: Option<PathBuf>,
    },
}

struct Ctx {
    json: bool,
    bound: Option<i64>,
    cap: Option<usize>,
}

/// Output and whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn read_value(path: &Path) -> anyhow::Result<Value> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&s).with_context(|| format!("parsing {}", path.display()))
}

fn read_complex(path: &Path) -> anyhow::Result<Arc<Complex>> {
    let v = read_value(path)?;
    Ok(Arc::new(json::complex_from_value(&v).with_context(|| format!("in {}", path.display()))?))
}

/// A complex given inline or as a path relative to `base`.
fn complex_field(v: &Value, key: &str, base: &Path) -> anyhow::Result<Option<Arc<Complex>>> {
    match v.get(key) {
        None => Ok(None),
        Some(Value::String(p)) => {
            let path = base.parent().unwrap_or(Path::new(".")).join(p);
            Ok(Some(read_complex(&path)?))
        }
        Some(obj) => Ok(Some(Arc::new(json::complex_from_value(obj)?))),
    }
}

fn read_morphism(path: &Path, source: Option<Arc<Complex>>, target: Option<Arc<Complex>>) -> anyhow::Result<AdcMorphism> {
    let v = read_value(path)?;
    let source = match source {
        Some(s) => s,
        None => complex_field(&v, "source", path)?.ok_or_else(|| anyhow!("{} names no source", path.display()))?,
    };
    let target = match target {
        Some(t) => t,
        None => complex_field(&v, "target", path)?.ok_or_else(|| anyhow!("{} names no target", path.display()))?,
    };
    let f = json::morphism_from_value(source, target, &v).with_context(|| format!("in {}", path.display()))?;
    let bad = steiner_lab::check_morphism(&f);
    if let Some(b) = bad.first() {
        bail!("{} is not a morphism: {}: {}", path.display(), b.token, b.message);
    }
    Ok(f)
}

fn counts_line(counts: &[(usize, usize)]) -> String {
    counts
        .iter()
        .enumerate()
        .map(|(i, &(all, nondeg))| if i == 0 { format!("dim0:{all}") } else { format!("dim{i}(nondeg):{nondeg}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cells_output(ctx: &Ctx, k: &Arc<Complex>, dim: usize, counts: bool) -> anyhow::Result<Outcome> {
    let e = enumerate_cells(k, dim, ctx.bound);
    let per: Vec<(usize, usize)> = (0..=dim).map(|i| (e.by_dim[i].len(), e.non_identity(i))).collect();
    if ctx.json {
        let v = if counts {
            json!({ "complete": e.complete, "cells": per.iter().map(|c| c.0).collect::<Vec<_>>(),
                    "non_identity": per.iter().map(|c| c.1).collect::<Vec<_>>() })
        } else {
            let levels: Vec<Vec<Value>> =
                e.by_dim.iter().map(|l| l.iter().map(|c| json::cell_to_value(k, c)).collect()).collect();
            json!({ "complete": e.complete, "cells": levels })
        };
        return Ok(Outcome::ok(json::to_string(&v)));
    }
    let mut s = String::new();
    if counts {
        s.push_str(&counts_line(&per));
    } else {
        for (i, level) in e.by_dim.iter().enumerate() {
            let _ = writeln!(s, "dim {i}: {} cells", level.len());
            for c in level {
                let _ = writeln!(s, "  {}", fmt_cell(k, c));
            }
        }
        s = s.trim_end().to_string();
    }
    if !e.complete {
        s.push_str("\nwarning: enumeration not certified complete; raise --coeff-bound");
    }
    Ok(Outcome::ok(s))
}

fn validate(ctx: &Ctx, path: &Path) -> anyhow::Result<Outcome> {
    let k = read_complex(path)?;
    let violations: Vec<String> = validate_complex(&k).iter().map(|v| format!("{}: {}", v.token, v.message)).collect();
    let unitary = is_unitary(&k);
    let loopfree = is_loopfree(&k);
    let strong = strong_loopfree_order(&k).is_some();
    let ok = violations.is_empty() && unitary && loopfree && strong;
    let text = if ctx.json {
        json::to_string(&json!({
            "ok": ok, "violations": violations, "unitary": unitary,
            "loopfree": loopfree, "strongly_loopfree": strong,
        }))
    } else if ok {
        "OK".to_string()
    } else {
        let mut s = String::new();
        for v in &violations {
            let _ = writeln!(s, "FAIL complex: {v}");
        }
        for (name, good) in [("unitary", unitary), ("loop-free", loopfree), ("strongly loop-free", strong)] {
            if !good {
                let _ = writeln!(s, "FAIL {name}");
            }
        }
        s.trim_end().to_string()
    };
    Ok(Outcome { text, ok })
}

fn nerve_output(ctx: &Ctx, path: &Path, counts: bool) -> anyhow::Result<Outcome> {
    let k = read_complex(path)?;
    let cap = ctx.cap.unwrap_or(2);
    let n = sset::nerve(&k, cap, ctx.bound)?;
    let all = n.set.counts();
    let nd = n.set.nondegenerate_counts();
    if ctx.json {
        let v = if counts {
            json!({ "complete": n.complete, "simplices": all, "nondegenerate": nd })
        } else {
            let levels: Vec<Vec<Value>> =
                (0..=cap).map(|d| n.set.simplices(d).iter().map(json::morphism_to_value).collect()).collect();
            json!({ "complete": n.complete, "simplices": levels })
        };
        return Ok(Outcome::ok(json::to_string(&v)));
    }
    let mut s = String::new();
    if counts {
        s = (0..=cap).map(|d| format!("dim{d}:{} dim{d}(nondeg):{}", all[d], nd[d])).collect::<Vec<_>>().join(" ");
    } else {
        for d in 0..=cap {
            let _ = writeln!(s, "dim {d}: {} simplices, {} nondegenerate", all[d], nd[d]);
            for (i, x) in n.set.simplices(d).iter().enumerate() {
                let _ = writeln!(s, "  {i}: {}", json::to_string(&json::morphism_to_value(x)["images"]));
            }
        }
        s = s.trim_end().to_string();
    }
    if !n.complete {
        s.push_str("\nwarning: enumeration not certified complete; raise --coeff-bound");
    }
    Ok(Outcome::ok(s))
}

fn slice_output(ctx: &Ctx, kp: &Path, up: &Path, c: &str, dim: usize) -> anyhow::Result<Outcome> {
    let k = read_complex(kp)?;
    let u = read_morphism(up, None, Some(k.clone()))?;
    let a = u.source().clone();
    let c = k.gen(c).with_context(|| format!("{c} is not a generator of K"))?;
    if c.degree() != 0 {
        bail!("the base of a slice must be a vertex");
    }
    let cat = SliceCategory::new(u, Cell::object(c))?;
    let (cells, complete) = cat.enumerate(dim, ctx.bound);
    if ctx.json {
        let levels: Vec<Vec<Value>> = cells
            .iter()
            .map(|l| {
                l.iter()
                    .map(|z| json!({ "a": json::cell_to_value(&a, z.a_top()), "alpha": json::cell_to_value(&k, z.alpha_top()) }))
                    .collect()
            })
            .collect();
        return Ok(Outcome::ok(json::to_string(&json!({ "complete": complete, "cells": levels }))));
    }
    let mut s = String::new();
    for (i, l) in cells.iter().enumerate() {
        let _ = writeln!(s, "dim {i}: {} cells", l.len());
        for z in l {
            let _ = writeln!(s, "  a = {}  α = {}", fmt_cell(&a, z.a_top()), fmt_cell(&k, z.alpha_top()));
        }
    }
    let mut s = s.trim_end().to_string();
    if !complete {
        s.push_str("\nwarning: enumeration not certified complete; raise --coeff-bound");
    }
    Ok(Outcome::ok(s))
}

fn slice_simplicial(ctx: &Ctx, args: &SliceSimplicialArgs) -> anyhow::Result<Outcome> {
    let k = read_complex(&args.k)?;
    let m = args.base_dim;
    let cap = ctx.cap.unwrap_or(2) + m + 1;
    let n = sset::nerve(&k, cap, ctx.bound)?;
    if args.simplex >= n.set.count(m) {
        bail!("the nerve has {} simplices of dimension {m}", n.set.count(m));
    }
    let sl = if args.over { sset::slice_over(&n.set, m, args.simplex)? } else { sset::slice_under(&n.set, m, args.simplex)? };
    let counts = sl.set.counts();
    let nd = sl.set.nondegenerate_counts();
    let deca = if args.decalage { Some(sset::decalage_homotopy(&n.set, m, args.simplex)?) } else { None };
    let ok = deca.as_ref().is_none_or(|d| d.passed());
    let text = if ctx.json {
        let mut v = json!({ "simplices": counts, "nondegenerate": nd });
        if let Some(d) = &deca {
            v["decalage"] = json!({ "passed": d.passed(), "checked": d.checked, "failures": d.failures });
        }
        json::to_string(&v)
    } else {
        let mut s = (0..counts.len())
            .map(|d| format!("dim{d}:{} dim{d}(nondeg):{}", counts[d], nd[d]))
            .collect::<Vec<_>>()
            .join(" ");
        if let Some(d) = &deca {
            match d.failures.first() {
                None => {
                    let _ = write!(s, "\nPASS decalage homotopy ({} checked)", d.checked);
                }
                Some(f) => {
                    let _ = write!(s, "\nFAIL decalage homotopy: {f}");
                }
            }
        }
        s
    };
    Ok(Outcome { text, ok })
}

fn result_line(r: &IdentityResult) -> String {
    match &r.counterexample {
        None => format!("PASS {} ({} checked)", r.name, r.checked),
        Some(c) => format!("FAIL {}: {c}", r.name),
    }
}

fn bisimplicial(ctx: &Ctx, ap: &Path, bp: &Path, fp: &Path) -> anyhow::Result<Outcome> {
    let a = read_complex(ap)?;
    let b = read_complex(bp)?;
    let f = read_morphism(fp, Some(a.clone()), Some(b.clone()))?;
    let cap = ctx.cap.unwrap_or(3);
    let na = sset::nerve(&a, cap, ctx.bound)?;
    let nb = sset::nerve(&b, cap, ctx.bound)?;
    let nf = na.map_to(&nb, &f)?;
    let s = Bisimplicial::build(&na.set, &nb.set, &nf)?;
    let mut checks = Vec::new();
    let bif = s.check_bifunctoriality();
    checks.push(IdentityResult {
        name: "bifunctoriality".into(),
        checked: *bif.as_ref().unwrap_or(&0),
        counterexample: bif.err(),
    });
    let diag = s.diagonal_is_simplicial();
    checks.push(IdentityResult {
        name: "diagonal simplicial".into(),
        checked: s.diagonal_counts().len(),
        counterexample: (!diag).then(|| "diagonal action does not compose".to_string()),
    });
    let ms: Vec<usize> = s.cells().keys().map(|k| k.0).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    for &m in &ms {
        let r = sset::column_decomposition(&s, &na.set, &nb.set, &nf, m)?;
        let fail = r.failure.clone().or_else(|| (r.matched != r.total).then(|| format!("{} of {} cells covered", r.matched, r.total)));
        checks.push(IdentityResult { name: format!("column {m} as under-slices"), checked: r.matched, counterexample: fail });
    }
    let ns: Vec<usize> = s.cells().keys().map(|k| k.1).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    for &n in &ns {
        let r = sset::row_decomposition(&s, &na.set, &nb.set, &nf, n)?;
        let fail = r.failure.clone().or_else(|| (r.matched != r.total).then(|| format!("{} of {} cells covered", r.matched, r.total)));
        checks.push(IdentityResult { name: format!("row {n} as over-slices"), checked: r.matched, counterexample: fail });
    }
    let ok = checks.iter().all(|c| c.counterexample.is_none());
    let text = if ctx.json {
        let counts: Vec<Value> = s.cells().iter().map(|(&(m, n), l)| json!({ "m": m, "n": n, "count": l.len() })).collect();
        json::to_string(&json!({ "counts": counts, "diagonal": s.diagonal_counts(), "checks": checks, "passed": ok }))
    } else {
        let mut t = String::new();
        for (&(m, n), l) in s.cells() {
            let _ = writeln!(t, "({m},{n}):{}", l.len());
        }
        let _ = writeln!(t, "diagonal: {:?}", s.diagonal_counts());
        for c in &checks {
            let _ = writeln!(t, "{}", result_line(c));
        }
        t.trim_end().to_string()
    };
    Ok(Outcome { text, ok })
}

fn verify_theorem_a(ctx: &Ctx, m_max: usize, n_max: usize, report: Option<&Path>) -> anyhow::Result<Outcome> {
    let suite = theorem_a::verify_suite(m_max, n_max);
    let mut all: Vec<IdentityResult> = suite.identities.clone();
    // mutant of f_n must be rejected
    let caught = (1..=m_max.max(1)).all(|m| {
        (1..=n_max.max(1)).all(|n| theorem_a::first_chain_failure(&theorem_a::f_n_mutant(m, n).1).is_some())
    });
    all.push(IdentityResult {
        name: "mutant f_n rejected".into(),
        checked: m_max.max(1) * n_max.max(1),
        counterexample: (!caught).then(|| "a sign-flipped f_n passed the chain-map check".to_string()),
    });
    let dims = ctx.cap.unwrap_or(2);
    let retract_m = m_max.min(2);
    let o2 = c_delta_arc(2);
    let inclusions = [
        ("id of O2", AdcMorphism::identity(o2.clone())),
        ("O1 to O2 along (0,2)", c_of_map(&MonotoneMap::new(1, 2, vec![0, 2]).expect("monotone"))),
    ];
    for (label, u) in &inclusions {
        let r = theorem_a::retract_suite(u, retract_m, dims, ctx.bound)?;
        for c in r.checks {
            all.push(IdentityResult { name: format!("retract ({label}): {}", c.name), ..c });
        }
    }
    for (a, n_top) in [(1usize, 2usize), (2, 1)] {
        let k = c_delta_arc(a);
        let id = AdcMorphism::identity(k.clone());
        let c = k.gen("(0)")?;
        for n in 0..=n_top {
            let r = theorem_a::theta_check(&id, &c, n, ctx.bound)?;
            all.push(IdentityResult {
                name: format!("theta bijection (O{a} under 0, n={n})"),
                checked: r.nerve_side,
                counterexample: (!r.passed()).then(|| format!("{r:?}")),
            });
        }
    }
    let tri = steiner_lab::slice::sample_triangle();
    let na = sset::nerve(tri.u.source(), 3, ctx.bound)?;
    let nb = sset::nerve(tri.w.source(), 3, ctx.bound)?;
    all.extend(theorem_a::verify_s_of_t(&tri, &na, &nb, &nb)?);
    let ok = all.iter().all(|r| r.counterexample.is_none());
    let value = json!({ "m_max": m_max, "n_max": n_max, "passed": ok, "identities": all });
    if let Some(p) = report {
        std::fs::write(p, json::to_string_pretty(&value) + "\n").with_context(|| format!("writing {}", p.display()))?;
    }
    let text = if ctx.json {
        json::to_string(&value)
    } else {
        let mut s: Vec<String> = all.iter().map(result_line).collect();
        s.push(format!("{}: {} of {} identities hold", if ok { "PASS" } else { "FAIL" }, all.iter().filter(|r| r.counterexample.is_none()).count(), all.len()));
        s.join("\n")
    };
    Ok(Outcome { text, ok })
}

fn export_dot(ctx: &Ctx, path: &Path, nerve: bool) -> anyhow::Result<Outcome> {
    let k = read_complex(path)?;
    if !nerve {
        return Ok(Outcome::ok(steiner_lab::dot::complex_to_dot(&k).trim_end().to_string()));
    }
    let n = sset::nerve(&k, ctx.cap.unwrap_or(1).max(1), ctx.bound)?;
    let dot = steiner_lab::dot::skeleton_to_dot(&n.set, |d, i| {
        let x = n.set.simplex(d, i);
        let top = x.source().top_degree();
        k.fmt_chain(x.image(top, 0))
    });
    Ok(Outcome::ok(dot.trim_end().to_string()))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let ctx = Ctx { json: cli.json, bound: cli.coeff_bound, cap: cli.cap };
    match cli.command {
        Command::Adc { op: AdcOp::Validate { k } } => validate(&ctx, &k),
        Command::Oriental { n, dim, counts, complex } => {
            let k = c_delta_arc(n);
            if complex {
                return Ok(Outcome::ok(json::to_string(&json::complex_to_value(&k))));
            }
            cells_output(&ctx, &k, dim.unwrap_or(n), counts)
        }
        Command::Tensor { a, b } => {
            let t = Tensor::new(read_complex(&a)?, read_complex(&b)?);
            Ok(Outcome::ok(json::to_string(&json::complex_to_value(&t.complex))))
        }
        Command::Pushout { m, k, l, f, g } => {
            let (m, k, l) = (read_complex(&m)?, read_complex(&k)?, read_complex(&l)?);
            let f = read_morphism(&f, Some(m.clone()), Some(k))?;
            let g = read_morphism(&g, Some(m), Some(l))?;
            let p = pushout_complex(&f, &g)?;
            Ok(Outcome::ok(json::to_string(&json::complex_to_value(&p.complex))))
        }
        Command::Cells { k, dim, counts } => cells_output(&ctx, &read_complex(&k)?, dim, counts),
        Command::Nerve { k, counts } => nerve_output(&ctx, &k, counts),
        Command::Slice { k, u, c, cells } => slice_output(&ctx, &k, &u, &c, cells),
        Command::SliceSimplicial(args) => slice_simplicial(&ctx, &args),
        Command::Bisimplicial { a, b, f } => bisimplicial(&ctx, &a, &b, &f),
        Command::Verify { what: VerifyWhat::TheoremA { m_max, n_max, json_report } } => {
            verify_theorem_a(&ctx, m_max, n_max, json_report.as_deref())
        }
        Command::ExportDot { k, nerve } => export_dot(&ctx, &k, nerve),
    }
}

fn main() -> ExitCode {
    if let Some(t) = std::env::var("STEINER_LAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
