//! Non-negative integer solutions of boundary constraints.
//!
//! For a target complex K and degree p, [`Solver`] lists all positive chains
//! x with `d x = y` (or `e(x) = k` when p = 0). Coefficients are bounded by a
//! weight certificate when K is strongly loop-free: pick a linear extension of
//! ≼ and weight the generators of degree p−1 by `W^rank` with W exceeding
//! every coefficient sum of a `d(b)₋`. Each `ψ(d b)` is then strictly
//! positive, and `ψ(y) = Σ x_b ψ(d b)` bounds every `x_b`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::chain::Chain;
use crate::complex::{strong_loopfree_order, Complex};

/// Coefficient bound used when no certificate is available and none was given.
pub const FALLBACK_BOUND: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solutions {
    pub chains: Vec<Chain>,
    /// True when the search provably found every solution.
    pub complete: bool,
}

struct DegreeData {
    // boundary of each generator as (row, coeff); for p = 0 a single (0, e(b)).
    cols: Vec<Vec<(usize, i64)>>,
    // per row, the last column touching it
    last_touch: Vec<Option<usize>>,
    // ψ on rows and ψ(d b) per column, when certified
    cert: Option<(Vec<i128>, Vec<i128>)>,
}

pub struct Solver {
    complex: Arc<Complex>,
    bound: Option<i64>,
    degrees: Vec<DegreeData>,
    memo: Mutex<HashMap<(usize, Chain), Arc<Solutions>>>,
}

fn weights(k: &Complex) -> Option<Vec<Vec<i128>>> {
    let order = strong_loopfree_order(k)?;
    let mut rank = vec![Vec::new(); k.num_degrees()];
    for (p, r) in rank.iter_mut().enumerate() {
        *r = vec![0usize; k.rank(p)];
    }
    let mut counter = vec![0usize; k.num_degrees()];
    for (p, i) in order {
        rank[p][i] = counter[p];
        counter[p] += 1;
    }
    let mut out = Vec::with_capacity(k.num_degrees());
    for p in 0..k.num_degrees() {
        // weights on degree p, used for generators of degree p+1
        let base: i128 = 1 + (0..k.rank(p + 1))
            .map(|b| k.boundary(p + 1, b).negative_part().total() as i128)
            .max()
            .unwrap_or(0);
        let mut w = Vec::with_capacity(k.rank(p));
        for i in 0..k.rank(p) {
            let mut acc: i128 = 1;
            for _ in 0..rank[p][i] {
                acc = acc.checked_mul(base)?;
            }
            w.push(acc);
        }
        out.push(w);
    }
    Some(out)
}

impl Solver {
    /// `bound` caps every coefficient; `None` relies on the certificate alone.
    pub fn new(complex: Arc<Complex>, bound: Option<i64>) -> Solver {
        let w = weights(&complex);
        let mut degrees = Vec::with_capacity(complex.num_degrees());
        for p in 0..complex.num_degrees() {
            let (cols, rows): (Vec<Vec<(usize, i64)>>, usize) = if p == 0 {
                ((0..complex.rank(0)).map(|v| vec![(0, complex.augmentation(v))]).collect(), 1)
            } else {
                ((0..complex.rank(p)).map(|b| complex.boundary(p, b).terms().to_vec()).collect(), complex.rank(p - 1))
            };
            let mut last_touch = vec![None; rows];
            for (b, col) in cols.iter().enumerate() {
                for &(r, _) in col {
                    last_touch[r] = Some(b);
                }
            }
            let cert = if p == 0 {
                let e: Vec<i128> = (0..complex.rank(0)).map(|v| complex.augmentation(v) as i128).collect();
                e.iter().all(|&x| x > 0).then(|| (vec![1], e))
            } else {
                w.as_ref().and_then(|w| {
                    let psi = w[p - 1].clone();
                    let mut dpsi = Vec::with_capacity(cols.len());
                    for col in &cols {
                        let mut acc: i128 = 0;
                        for &(r, c) in col {
                            acc = acc.checked_add(psi[r].checked_mul(c as i128)?)?;
                        }
                        if acc <= 0 {
                            return None;
                        }
                        dpsi.push(acc);
                    }
                    Some((psi, dpsi))
                })
            };
            degrees.push(DegreeData { cols, last_touch, cert });
        }
        Solver { complex, bound, degrees, memo: Mutex::new(HashMap::new()) }
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn bound(&self) -> Option<i64> {
        self.bound
    }

    /// True when degree p carries a weight certificate.
    pub fn certified(&self, p: usize) -> bool {
        self.degrees.get(p).is_some_and(|d| d.cert.is_some())
    }

    /// Positive chains x of degree 0 with `e(x) = value`.
    pub fn vertices_with_aug(&self, value: i64) -> Arc<Solutions> {
        self.solve_raw(0, Chain::from_terms(0, [(0, value)]))
    }

    /// Positive chains x of degree p ≥ 1 with `d x = y`.
    pub fn fill(&self, y: &Chain) -> Arc<Solutions> {
        let p = y.degree() + 1;
        if p >= self.complex.num_degrees() {
            return Arc::new(Solutions { chains: if y.is_zero() { vec![Chain::zero(p)] } else { vec![] }, complete: true });
        }
        self.solve_raw(p, y.clone())
    }

    fn solve_raw(&self, p: usize, rhs: Chain) -> Arc<Solutions> {
        let key = (p, rhs);
        if let Some(s) = self.memo.lock().unwrap().get(&key) {
            return s.clone();
        }
        let s = Arc::new(self.search(p, &key.1));
        self.memo.lock().unwrap().insert(key, s.clone());
        s
    }

    fn search(&self, p: usize, rhs: &Chain) -> Solutions {
        let data = &self.degrees[p];
        let n = data.cols.len();
        let mut residual = vec![0i64; data.last_touch.len()];
        for &(r, c) in rhs.terms() {
            residual[r] = c;
        }
        if residual.iter().zip(&data.last_touch).any(|(&r, t)| r != 0 && t.is_none()) {
            return Solutions { chains: vec![], complete: data.cert.is_some() };
        }
        let mut caps = vec![self.bound.unwrap_or(FALLBACK_BOUND); n];
        let mut complete = false;
        let mut budget: Option<i128> = None;
        if let Some((psi, dpsi)) = &data.cert {
            let total: i128 = residual.iter().zip(psi).map(|(&r, &w)| r as i128 * w).sum();
            if total < 0 {
                return Solutions { chains: vec![], complete: true };
            }
            complete = true;
            for b in 0..n {
                let c = total / dpsi[b];
                match self.bound {
                    Some(u) if (u as i128) < c => {
                        complete = false;
                        caps[b] = u;
                    }
                    _ => caps[b] = c.min(i64::MAX as i128) as i64,
                }
            }
            budget = Some(total);
        }
        let mut closes: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (r, t) in data.last_touch.iter().enumerate() {
            if let Some(b) = t {
                closes[*b].push(r);
            }
        }
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        let ctx = Dfs { data, caps: &caps, closes: &closes };
        ctx.run(0, &mut residual, budget, &mut x, &mut out, p);
        Solutions { chains: out, complete }
    }
}

struct Dfs<'a> {
    data: &'a DegreeData,
    caps: &'a [i64],
    closes: &'a [Vec<usize>],
}

impl Dfs<'_> {
    fn run(&self, b: usize, residual: &mut [i64], budget: Option<i128>, x: &mut [i64], out: &mut Vec<Chain>, p: usize) {
        if b == x.len() {
            if residual.iter().all(|&r| r == 0) {
                out.push(Chain::from_terms(p, x.iter().enumerate().map(|(i, &c)| (i, c))));
            }
            return;
        }
        let mut cap = self.caps[b];
        if let (Some(t), Some((_, dpsi))) = (budget, &self.data.cert) {
            cap = cap.min((t / dpsi[b]).min(i64::MAX as i128) as i64);
        }
        let col = &self.data.cols[b];
        for v in 0..=cap {
            if v > 0 {
                for &(r, c) in col {
                    residual[r] -= c;
                }
            }
            x[b] = v;
            if self.closes[b].iter().all(|&r| residual[r] == 0) {
                let nb = match (budget, &self.data.cert) {
                    (Some(t), Some((_, dpsi))) => Some(t - v as i128 * dpsi[b]),
                    _ => None,
                };
                self.run(b + 1, residual, nb, x, out, p);
            }
        }
        for &(r, c) in col {
            residual[r] += c * cap;
        }
        x[b] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::c_delta_arc;

    #[test]
    fn paths_in_triangle() {
        let k = c_delta_arc(2);
        let s = Solver::new(k.clone(), None);
        let y = k.chain(0, &[("(2)", 1), ("(0)", -1)]).unwrap();
        let sol = s.fill(&y);
        assert!(sol.complete);
        let mut got: Vec<String> = sol.chains.iter().map(|c| k.fmt_chain(c)).collect();
        got.sort();
        assert_eq!(got, vec!["(0,1) + (1,2)", "(0,2)"]);
        let v = s.vertices_with_aug(1);
        assert_eq!(v.chains.len(), 3);
        assert!(s.fill(&Chain::zero(0)).chains == vec![Chain::zero(1)]);
    }

    #[test]
    fn explicit_small_bound_is_flagged() {
        let k = c_delta_arc(2);
        let s = Solver::new(k.clone(), Some(0));
        let y = k.chain(0, &[("(2)", 1), ("(0)", -1)]).unwrap();
        let sol = s.fill(&y);
        assert!(sol.chains.is_empty());
        assert!(!sol.complete);
    }
}
