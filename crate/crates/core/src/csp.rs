//! Backtracking search over finite-domain assignments with binary
//! constraints. Used by every enumeration of strings, costrings, virtual
//! cells and virtual cones.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Results of a capped search. `truncated` is set when the node budget ran
/// out; `items` then holds the solutions found so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub truncated: bool,
    pub nodes: usize,
}

impl<T> Enumeration<T> {
    /// The items, or `CapExceeded` if the search was cut short.
    pub fn complete(self, cap: usize) -> Result<Vec<T>> {
        if self.truncated {
            Err(Error::CapExceeded { cap })
        } else {
            Ok(self.items)
        }
    }

    pub fn map<U>(self, f: impl FnMut(T) -> U) -> Enumeration<U> {
        Enumeration { items: self.items.into_iter().map(f).collect(), truncated: self.truncated, nodes: self.nodes }
    }
}

/// Default node budget for enumerations.
pub const DEFAULT_CAP: usize = 2_000_000;

/// All assignments `x[v] ∈ domains[v]` such that `compatible(u, a, v, b)`
/// holds for every constrained pair `(u, v)` in `pairs`. Solutions are
/// produced in lexicographic order of domain positions.
pub fn solve(
    domains: &[Vec<usize>],
    pairs: &[(usize, usize)],
    cap: usize,
    mut compatible: impl FnMut(usize, usize, usize, usize) -> bool,
) -> Enumeration<Vec<usize>> {
    let n = domains.len();
    // earlier[v]: variables u < v constrained with v.
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in pairs {
        if a != b {
            earlier[a.max(b)].push(a.min(b));
        }
    }
    for e in &mut earlier {
        e.sort_unstable();
        e.dedup();
    }
    let mut memo: HashMap<(usize, usize, usize, usize), bool> = HashMap::new();
    let mut check = |u: usize, a: usize, v: usize, b: usize| -> bool {
        *memo.entry((u, a, v, b)).or_insert_with(|| compatible(u, a, v, b))
    };
    let mut out = Enumeration { items: Vec::new(), truncated: false, nodes: 0 };
    if domains.iter().any(|d| d.is_empty()) {
        return out;
    }
    let mut pos = vec![0usize; n];
    let mut assign: Vec<usize> = Vec::with_capacity(n);
    // Iterative depth-first search; `pos[k]` is the next domain index to try at depth k.
    let mut depth = 0usize;
    if n == 0 {
        out.items.push(Vec::new());
        return out;
    }
    loop {
        if pos[depth] == domains[depth].len() {
            if depth == 0 {
                break;
            }
            pos[depth] = 0;
            depth -= 1;
            assign.pop();
            continue;
        }
        let b = domains[depth][pos[depth]];
        pos[depth] += 1;
        out.nodes += 1;
        if out.nodes > cap {
            out.truncated = true;
            break;
        }
        if earlier[depth].iter().all(|&u| check(u, assign[u], depth, b)) {
            if depth + 1 == n {
                let mut sol = assign.clone();
                sol.push(b);
                out.items.push(sol);
            } else {
                assign.push(b);
                depth += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_colourings_of_a_triangle() {
        let domains = vec![vec![0, 1, 2]; 3];
        let pairs = [(0, 1), (1, 2), (0, 2)];
        let e = solve(&domains, &pairs, 1000, |_, a, _, b| a != b);
        assert_eq!(e.items.len(), 6);
        assert!(!e.truncated);
        assert_eq!(e.items[0], vec![0, 1, 2]);
    }

    #[test]
    fn cap_is_reported() {
        let domains = vec![vec![0, 1]; 10];
        let e = solve(&domains, &[], 5, |_, _, _, _| true);
        assert!(e.truncated);
        assert_eq!(e.complete(5), Err(Error::CapExceeded { cap: 5 }));
    }

    #[test]
    fn empty_domain_has_no_solutions() {
        let e = solve(&[vec![0], vec![]], &[], 10, |_, _, _, _| true);
        assert!(e.items.is_empty() && !e.truncated);
    }
}
