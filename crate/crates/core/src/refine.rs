//! Refinement of a finite family of convex regions into the cells
//! `cell(p) = ∩{X : p ∈ X}`.
//!
//! Two strategies are provided. [`refine_complete`] walks across facets of
//! full-dimensional cells and suits families whose union is full-dimensional
//! and pure (projected polytopes, projected normal fans). [`refine_closure`]
//! closes the family under intersection and keeps the sets that are cells;
//! it works for any family but grows quickly.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyhedron::{Cone, Polyhedron};
use crate::rational::{add, dot, frac, int, scale, sub, Rational, Vector};

/// A closed convex region: a cone or a polyhedron.
pub trait Region: Clone + Ord + Send + Sync {
    fn ambient(&self) -> usize;
    fn region_dim(&self) -> usize;
    fn has_point(&self, p: &[Rational]) -> bool;
    fn has_relint_point(&self, p: &[Rational]) -> bool;
    fn inner_point(&self) -> Vector;
    /// Each facet as `(a, b, r)`: region ⊆ `{a·x >= b}`, `r` in the facet's relative interior.
    fn facet_data(&self) -> Vec<(Vector, Rational, Vector)>;
    /// True iff some point `x` of the region has `a·x < b`.
    fn reaches_below(&self, a: &[Rational], b: &Rational) -> bool;
    fn meet_all(ambient: usize, items: &[&Self]) -> Option<Self>;
    fn all_faces(&self) -> Vec<Self>;
}

impl Region for Cone {
    fn ambient(&self) -> usize {
        self.ambient_dim()
    }
    fn region_dim(&self) -> usize {
        self.dim()
    }
    fn has_point(&self, p: &[Rational]) -> bool {
        self.contains(p)
    }
    fn has_relint_point(&self, p: &[Rational]) -> bool {
        self.relint_contains(p)
    }
    fn inner_point(&self) -> Vector {
        self.relint_point()
    }
    fn facet_data(&self) -> Vec<(Vector, Rational, Vector)> {
        self.facets()
            .iter()
            .map(|a| {
                let mut r = vec![Rational::zero(); self.ambient_dim()];
                for ray in self.rays().iter().filter(|ray| dot(a, ray).is_zero()) {
                    r = add(&r, ray);
                }
                (a.clone(), Rational::zero(), r)
            })
            .collect()
    }
    fn reaches_below(&self, a: &[Rational], b: &Rational) -> bool {
        debug_assert!(b.is_zero());
        self.rays().iter().any(|r| dot(a, r).is_negative()) || self.lineality_basis().iter().any(|l| !dot(a, l).is_zero())
    }
    fn meet_all(ambient: usize, items: &[&Self]) -> Option<Self> {
        Some(Cone::intersect_all(ambient, items.iter().copied()))
    }
    fn all_faces(&self) -> Vec<Self> {
        self.faces()
    }
}

impl Region for Polyhedron {
    fn ambient(&self) -> usize {
        self.ambient_dim()
    }
    fn region_dim(&self) -> usize {
        self.dim()
    }
    fn has_point(&self, p: &[Rational]) -> bool {
        self.contains(p)
    }
    fn has_relint_point(&self, p: &[Rational]) -> bool {
        self.relint_contains(p)
    }
    fn inner_point(&self) -> Vector {
        self.relint_point()
    }
    fn facet_data(&self) -> Vec<(Vector, Rational, Vector)> {
        self.facets()
            .iter()
            .map(|(a, b)| {
                let verts: Vec<Vector> = self.vertices().iter().filter(|v| dot(a, v) == *b).cloned().collect();
                let mut r = crate::polyhedron::barycenter(&verts);
                for ray in self.rays().iter().filter(|ray| dot(a, ray).is_zero()) {
                    r = add(&r, ray);
                }
                (a.clone(), b.clone(), r)
            })
            .collect()
    }
    fn reaches_below(&self, a: &[Rational], b: &Rational) -> bool {
        self.vertices().iter().any(|v| dot(a, v) < *b)
            || self.rays().iter().any(|r| dot(a, r).is_negative())
            || self.lineality().iter().any(|l| !dot(a, l).is_zero())
    }
    fn meet_all(ambient: usize, items: &[&Self]) -> Option<Self> {
        Polyhedron::intersect_all(ambient, items.iter().copied())
    }
    fn all_faces(&self) -> Vec<Self> {
        self.faces()
    }
}

/// One cell of a refinement: its region, the indices of the family members
/// containing it, and a relative-interior witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedCell<R> {
    pub region: R,
    pub members: Vec<usize>,
    pub witness: Vector,
}

pub fn membership<R: Region>(family: &[R], p: &[Rational]) -> Vec<usize> {
    (0..family.len()).filter(|&i| family[i].has_point(p)).collect()
}

/// `∩{X : p ∈ X}`, or `None` when `p` lies in no member.
pub fn cell_at<R: Region>(family: &[R], ambient: usize, p: &[Rational]) -> Option<(R, Vec<usize>)> {
    let idx = membership(family, p);
    if idx.is_empty() {
        return None;
    }
    let items: Vec<&R> = idx.iter().map(|&i| &family[i]).collect();
    R::meet_all(ambient, &items).map(|r| (r, idx))
}

fn sorted_cells<R: Region>(family: &[R], regions: BTreeSet<R>) -> Vec<RefinedCell<R>> {
    let mut by_members: BTreeMap<(usize, Vec<usize>), RefinedCell<R>> = BTreeMap::new();
    for region in regions {
        let witness = region.inner_point();
        let members = membership(family, &witness);
        by_members
            .entry((region.region_dim(), members.clone()))
            .or_insert(RefinedCell { region, members, witness });
    }
    by_members.into_values().collect()
}

/// Deterministic pseudo-random integers in `[1, modulus]`.
pub fn pseudo_random(seed: u64, count: usize, modulus: u64) -> Vec<i64> {
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..count)
        .map(|_| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((x >> 33) % modulus) as i64 + 1
        })
        .collect()
}

/// Seeds for [`refine_complete`] inside a full-dimensional polytope: convex
/// combinations of its vertices with pseudo-random weights.
pub fn polytope_seeds(q: &Polyhedron, count: usize) -> Vec<Vector> {
    let n = q.vertices().len();
    (0..count as u64)
        .map(|s| {
            let w = pseudo_random(s, n, 997);
            let total: i64 = w.iter().sum();
            let mut p = vec![Rational::zero(); q.ambient_dim()];
            for (v, wi) in q.vertices().iter().zip(&w) {
                p = add(&p, &scale(v, &frac(*wi, total)));
            }
            p
        })
        .collect()
}

/// Seeds for [`refine_complete`] over a complete fan: pseudo-random vectors.
pub fn vector_seeds(ambient: usize, count: usize) -> Vec<Vector> {
    (0..count as u64)
        .map(|s| pseudo_random(s + 101, ambient, 2001).into_iter().map(|x| int(x - 1001)).collect())
        .collect()
}

const MAX_HALVINGS: usize = 200;

/// Refinement of a family whose union is pure of dimension `full_dim`,
/// discovered by walking across the facets of full-dimensional cells.
pub fn refine_complete<R: Region>(
    family: &[R],
    ambient: usize,
    full_dim: usize,
    seeds: &[Vector],
) -> Result<Vec<RefinedCell<R>>> {
    let start = seeds
        .iter()
        .filter_map(|s| cell_at(family, ambient, s))
        .find(|(c, _)| c.region_dim() == full_dim)
        .ok_or_else(|| Error::DegenerateInput("no generic seed found".into()))?;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut chambers: Vec<R> = Vec::new();
    let mut queue: VecDeque<(R, Vec<usize>)> = VecDeque::new();
    seen.insert(start.1.clone());
    queue.push_back(start);
    while let Some((cell, _)) = queue.pop_front() {
        for (a, b, r) in cell.facet_data() {
            let around = membership(family, &r);
            if !around.iter().any(|&i| family[i].reaches_below(&a, &b)) {
                continue;
            }
            let mut eps = Rational::one();
            let mut found = None;
            for _ in 0..MAX_HALVINGS {
                let p = sub(&r, &scale(&a, &eps));
                if let Some((c, idx)) = cell_at(family, ambient, &p) {
                    if c.region_dim() == full_dim && c.has_point(&r) && !c.has_point(&add(&r, &scale(&a, &eps))) {
                        found = Some((c, idx));
                        break;
                    }
                }
                eps /= int(2);
            }
            let (c, idx) = found.ok_or_else(|| Error::DegenerateInput("could not cross a wall".into()))?;
            if seen.insert(idx.clone()) {
                queue.push_back((c, idx));
            }
        }
        chambers.push(cell);
    }
    let mut all: BTreeSet<R> = BTreeSet::new();
    for c in &chambers {
        all.extend(c.all_faces());
    }
    Ok(sorted_cells(family, all))
}

/// Refinement by closing the family under pairwise intersection.
pub fn refine_closure<R: Region>(family: &[R], ambient: usize) -> Vec<RefinedCell<R>> {
    let mut set: BTreeSet<R> = family.iter().cloned().collect();
    let mut frontier: Vec<R> = set.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for m in family {
            if let Some(y) = R::meet_all(ambient, &[&x, m]) {
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    let cells: BTreeSet<R> = set
        .into_iter()
        .filter(|x| cell_at(family, ambient, &x.inner_point()).is_some_and(|(c, _)| c == *x))
        .collect();
    sorted_cells(family, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ivec;

    #[test]
    fn interval_family_refines_into_five_cells() {
        let seg = |a: i64, b: i64| Polyhedron::from_points(1, &[ivec(&[a]), ivec(&[b])]);
        let pt = |a: i64| Polyhedron::from_points(1, &[ivec(&[a])]);
        let family = vec![seg(0, 2), seg(0, 1), seg(1, 2), pt(0), pt(1), pt(2)];
        let q = seg(0, 2);
        let bfs = refine_complete(&family, 1, 1, &polytope_seeds(&q, 8)).unwrap();
        let closure = refine_closure(&family, 1);
        assert_eq!(bfs.len(), 5);
        assert_eq!(bfs, closure);
    }

    #[test]
    fn quadrant_family_refines_plane() {
        let halves = vec![
            Cone::from_inequalities(2, &[ivec(&[1, 0])], &[]),
            Cone::from_inequalities(2, &[ivec(&[-1, 0])], &[]),
            Cone::from_inequalities(2, &[ivec(&[0, 1])], &[]),
            Cone::from_inequalities(2, &[ivec(&[0, -1])], &[]),
        ];
        let cells = refine_complete(&halves, 2, 2, &vector_seeds(2, 4)).unwrap();
        assert_eq!(cells.len(), 9);
        assert_eq!(cells, refine_closure(&halves, 2));
    }
}
