//! Graphviz output for documentation figures.

use std::fmt::Write;
use std::hash::Hash;

use crate::complex::Complex;
use crate::sset::SimplicialSet;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Generators as nodes ranked by degree; an edge `x → y` labelled `±c` for
/// each term `c·y` of `d x`.
pub fn complex_to_dot(k: &Complex) -> String {
    let mut s = String::from("digraph complex {\n  rankdir=BT;\n  node [shape=box];\n");
    for p in 0..k.num_degrees() {
        let _ = write!(s, "  {{ rank=same;");
        for t in k.tokens(p) {
            let _ = write!(s, " {};", quote(t));
        }
        s.push_str(" }\n");
    }
    for p in 1..k.num_degrees() {
        for i in 0..k.rank(p) {
            for &(j, c) in k.boundary(p, i).terms() {
                let style = if c > 0 { "solid" } else { "dashed" };
                let _ = writeln!(
                    s,
                    "  {} -> {} [label=\"{c:+}\", style={style}];",
                    quote(k.token(p, i)),
                    quote(k.token(p - 1, j))
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Vertices and nondegenerate edges of a simplicial table, with the given
/// label function.
pub fn skeleton_to_dot<T, F>(x: &SimplicialSet<T>, label: F) -> String
where
    T: Clone + Eq + Hash + Send + Sync,
    F: Fn(usize, usize) -> String,
{
    let mut s = String::from("digraph skeleton {\n  rankdir=LR;\n");
    for v in 0..x.count(0) {
        let _ = writeln!(s, "  v{v} [label={}];", quote(&label(0, v)));
    }
    if x.cap() >= 1 {
        for e in 0..x.count(1) {
            if x.is_degenerate(1, e) {
                continue;
            }
            let (a, b) = (x.facet(1, e, &[0]).unwrap(), x.facet(1, e, &[1]).unwrap());
            let _ = writeln!(s, "  v{a} -> v{b} [label={}];", quote(&label(1, e)));
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::c_delta_arc;
    use crate::sset::standard_simplex;

    #[test]
    fn triangle_dot() {
        let d = complex_to_dot(&c_delta_arc(2));
        assert!(d.contains("\"(0,1,2)\" -> \"(0,2)\" [label=\"-1\", style=dashed];"));
        let e = skeleton_to_dot(&standard_simplex(2, 1), |n, i| format!("{n}:{i}"));
        assert_eq!(e.matches("->").count(), 3);
    }
}
