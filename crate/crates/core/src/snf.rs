//! Smith normal form over the integers, enough to read off rank and torsion.

/// Non-zero invariant factors of an integer matrix given as dense rows.
pub fn invariant_factors(rows: &[Vec<i64>], ncols: usize) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let nrows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest non-zero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.is_none_or(|(br, bc)| v.abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((r, c)) = best else { break };
        a.swap(t, r);
        for row in a.iter_mut() {
            row.swap(t, c);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for r in t + 1..nrows {
                let q = a[r][t] / p;
                if q != 0 {
                    let (head, tail) = a.split_at_mut(r);
                    for (x, &y) in tail[0].iter_mut().zip(&head[t]).skip(t) {
                        *x -= q * y;
                    }
                }
                if a[r][t] != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..ncols {
                let q = a[t][c] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[c] -= q * row[t];
                    }
                }
                if a[t][c] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..nrows).find_map(|r| (t + 1..ncols).find(|&c| a[r][c] % p != 0).map(|_| r));
                match bad {
                    None => break,
                    Some(r) => {
                        let (head, tail) = a.split_at_mut(r);
                        for (x, &y) in head[t].iter_mut().zip(&tail[0]).skip(t) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for r in t..nrows {
                if a[r][t] != 0 && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..ncols {
                if a[t][c] != 0 && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Rank and torsion coefficients of `Z^ncols / rowspace(rows)`.
pub fn cokernel(rows: &[Vec<i64>], ncols: usize) -> (usize, Vec<i128>) {
    let d = invariant_factors(rows, ncols);
    let torsion = d.iter().copied().filter(|&x| x > 1).collect();
    (ncols - d.len(), torsion)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_forms() {
        assert_eq!(invariant_factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3), vec![2, 6, 12]);
        assert_eq!(cokernel(&[vec![2, 0], vec![0, 3]], 2), (0, vec![6]));
        assert_eq!(cokernel(&[vec![1, -1, -1]], 3), (2, vec![]));
        assert_eq!(cokernel(&[], 4), (4, vec![]));
    }
}
