//! Cones and polyhedra with both representations kept in canonical form.
//!
//! All conversions reduce to [`cone_structure`]: facets of a finitely
//! generated cone, found by brute force over linearly independent subsets of
//! generators. Desk-scale inputs (ambient dimension at most about 7, a few
//! dozen generators) keep this well within budget.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, project_onto_span, rank, rref, span_basis, Matrix};
use crate::rational::{add, dot, neg, primitive, scale, sub, Rational, Vector};

/// Facet data of `cone(generators)` inside its linear span.
#[derive(Clone, Debug)]
pub struct ConeStructure {
    pub span: Vec<Vector>,
    /// Basis of the orthogonal complement of the span.
    pub orth: Vec<Vector>,
    pub lineality: Vec<Vector>,
    /// Facet covectors, primitive and lying in the span; `n · g >= 0`.
    pub facets: Vec<Vector>,
    /// Extreme rays of the pointed part, projected orthogonally to the
    /// lineality space and made primitive.
    pub rays: Vec<Vector>,
}

pub(crate) fn dedup_primitive(vs: &[Vector]) -> Vec<Vector> {
    let set: BTreeSet<Vector> = vs.iter().filter(|v| v.iter().any(|x| !x.is_zero())).map(|v| primitive(v)).collect();
    set.into_iter().collect()
}

/// Visits every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        if idx[i] == i + n - k {
            return;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Fixed-width bitset over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn combine(sa: &Rational, a: &[Rational], sb: &Rational, b: &[Rational]) -> Vector {
    primitive(&a.iter().zip(b).map(|(x, y)| sa * x - sb * y).collect::<Vec<_>>())
}

/// Double description: lineality basis and extreme rays of
/// `{x : a·x >= 0 for every row a}`.
pub fn double_description(rows: &[Vector], d: usize) -> (Vec<Vector>, Vec<Vector>) {
    let m = rows.len();
    let mut lin: Vec<Vector> = (0..d).map(|i| crate::rational::unit_vec(d, i)).collect();
    let mut rays: Vec<(Vector, Bits)> = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        if let Some(j) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(j);
            let mut s0 = dot(a, &l0);
            if s0.is_negative() {
                l0 = neg(&l0);
                s0 = -s0;
            }
            for l in lin.iter_mut() {
                let s = dot(a, l);
                if !s.is_zero() {
                    *l = combine(&s0, l, &s, &l0);
                }
            }
            for (r, z) in rays.iter_mut() {
                let s = dot(a, r);
                if !s.is_zero() {
                    *r = combine(&s0, r, &s, &l0);
                }
                z.insert(i);
            }
            let mut z = Bits::new(m);
            for k in 0..i {
                z.insert(k);
            }
            rays.push((l0, z));
            continue;
        }
        let signs: Vec<Rational> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let pointed_dim = d - lin.len();
        let mut next: Vec<(Vector, Bits)> = Vec::new();
        for (k, (r, z)) in rays.iter().enumerate() {
            if !signs[k].is_negative() {
                let mut z = z.clone();
                if signs[k].is_zero() {
                    z.insert(i);
                }
                next.push((r.clone(), z));
            }
        }
        for (p, (rp, zp)) in rays.iter().enumerate() {
            if !signs[p].is_positive() {
                continue;
            }
            for (n, (rn, zn)) in rays.iter().enumerate() {
                if !signs[n].is_negative() {
                    continue;
                }
                let z = zp.and(zn);
                if pointed_dim >= 2 && z.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, (_, zk))| k == p || k == n || !z.is_subset(zk));
                if adjacent {
                    let mut z = z;
                    z.insert(i);
                    next.push((combine(&signs[p], rn, &signs[n], rp), z));
                }
            }
        }
        rays = next;
    }
    (lin, rays.into_iter().map(|(r, _)| r).collect())
}

pub fn cone_structure(generators: &[Vector], ambient: usize) -> ConeStructure {
    let gens = dedup_primitive(generators);
    let span = span_basis(&gens, ambient);
    let orth = nullspace(&span, ambient);
    let r = span.len();
    if r == 0 {
        return ConeStructure { span, orth, lineality: Vec::new(), facets: Vec::new(), rays: Vec::new() };
    }
    // Facet normals are the extreme rays of the dual cone, taken modulo span^perp.
    let (_, dual_rays) = double_description(&gens, ambient);
    let facets: Vec<Vector> = dedup_primitive(
        &dual_rays.iter().map(|y| sub(y, &project_onto_span(&orth, y))).collect::<Vec<_>>(),
    );
    finish_structure(gens, span, orth, facets, ambient)
}

fn finish_structure(gens: Vec<Vector>, span: Vec<Vector>, orth: Vec<Vector>, facets: Vec<Vector>, ambient: usize) -> ConeStructure {
    let r = span.len();
    let lineality = if facets.is_empty() {
        span.clone()
    } else {
        let mut rows = orth.clone();
        rows.extend(facets.iter().cloned());
        span_basis(&nullspace(&rows, ambient), ambient)
    };
    let l = lineality.len();
    let mut rays: BTreeSet<Vector> = BTreeSet::new();
    if r > l {
        for g in &gens {
            let p = sub(g, &project_onto_span(&lineality, g));
            if p.iter().all(|x| x.is_zero()) {
                continue;
            }
            let tight: Vec<Vector> = facets.iter().filter(|n| dot(n, g).is_zero()).cloned().collect();
            if rank(&tight, ambient) == r - l - 1 {
                rays.insert(primitive(&p));
            }
        }
    }
    ConeStructure { span, orth, lineality, facets, rays: rays.into_iter().collect() }
}

/// Facets by exhaustive search over `(rank - 1)`-subsets of generators.
/// Exponential; kept as an independent check of [`cone_structure`].
pub fn cone_structure_exhaustive(generators: &[Vector], ambient: usize) -> ConeStructure {
    let gens = dedup_primitive(generators);
    let span = span_basis(&gens, ambient);
    let orth = nullspace(&span, ambient);
    let r = span.len();
    if r == 0 {
        return ConeStructure { span, orth, lineality: Vec::new(), facets: Vec::new(), rays: Vec::new() };
    }
    let mut facets: BTreeSet<Vector> = BTreeSet::new();
    for_each_combination(gens.len(), r - 1, |subset| {
        let mut rows: Vec<Vector> = subset.iter().map(|&i| gens[i].clone()).collect();
        if rank(&rows, ambient) != r - 1 {
            return;
        }
        rows.extend(orth.iter().cloned());
        let ns = nullspace(&rows, ambient);
        let n = &ns[0];
        let pos = gens.iter().any(|g| dot(n, g).is_positive());
        let negv = gens.iter().any(|g| dot(n, g).is_negative());
        match (pos, negv) {
            (true, false) => {
                facets.insert(n.clone());
            }
            (false, true) => {
                facets.insert(neg(n));
            }
            _ => {}
        }
    });
    finish_structure(gens, span, orth, facets.into_iter().collect(), ambient)
}

/// A rational polyhedral cone. Equality is geometric: the canonical key is
/// the sorted primitive rays (orthogonal to the lineality space) together
/// with the reduced echelon basis of the lineality space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
    facets: Vec<Vector>,
    equations: Vec<Vector>,
    dim: usize,
}

pub type ConeKey = (Vec<Vector>, Vec<Vector>);

impl Cone {
    pub fn zero(ambient: usize) -> Cone {
        Cone::from_generators(ambient, &[], &[])
    }

    pub fn whole_space(ambient: usize) -> Cone {
        let basis: Vec<Vector> = (0..ambient).map(|i| crate::rational::unit_vec(ambient, i)).collect();
        Cone::from_generators(ambient, &[], &basis)
    }

    pub fn from_generators(ambient: usize, rays: &[Vector], lineality: &[Vector]) -> Cone {
        let mut gens: Vec<Vector> = rays.to_vec();
        for l in lineality {
            gens.push(l.clone());
            gens.push(neg(l));
        }
        for g in &gens {
            assert_eq!(g.len(), ambient, "generator dimension");
        }
        let cs = cone_structure(&gens, ambient);
        let dim = cs.span.len();
        let equations = span_basis(&cs.orth, ambient);
        Cone { ambient, rays: cs.rays, lineality: cs.lineality, facets: cs.facets, equations, dim }
    }

    pub fn from_i64_rays(rays: &[&[i64]]) -> Cone {
        let ambient = rays.first().map_or(0, |r| r.len());
        let rs: Vec<Vector> = rays.iter().map(|r| crate::rational::ivec(r)).collect();
        Cone::from_generators(ambient, &rs, &[])
    }

    /// `{x : a·x >= 0 for a in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(ambient: usize, ineqs: &[Vector], eqs: &[Vector]) -> Cone {
        let mut rows: Vec<Vector> = dedup_primitive(ineqs);
        for e in eqs {
            rows.push(e.clone());
            rows.push(neg(e));
        }
        let (lin, rays) = double_description(&rows, ambient);
        Cone::from_generators(ambient, &rays, &lin)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality_basis(&self) -> &[Vector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vector] {
        &self.equations
    }

    pub fn key(&self) -> ConeKey {
        (self.rays.clone(), self.lineality.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot(e, p).is_zero()) && self.facets.iter().all(|a| !dot(a, p).is_negative())
    }

    pub fn relint_contains(&self, p: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot(e, p).is_zero()) && self.facets.iter().all(|a| dot(a, p).is_positive())
    }

    /// Sum of the primitive rays; lies in the relative interior.
    pub fn relint_point(&self) -> Vector {
        let mut p = vec![Rational::zero(); self.ambient];
        for r in &self.rays {
            p = add(&p, r);
        }
        p
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| self.contains(l) && self.contains(&neg(l)))
    }

    fn check_dim(&self, other: &Cone) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch { expected: self.ambient, got: other.ambient });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_dim(other)?;
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Ok(Cone::from_inequalities(self.ambient, &ineqs, &eqs))
    }

    pub fn intersect_all<'a>(ambient: usize, cones: impl IntoIterator<Item = &'a Cone>) -> Cone {
        let mut ineqs = Vec::new();
        let mut eqs = Vec::new();
        for c in cones {
            ineqs.extend(c.facets.iter().cloned());
            eqs.extend(c.equations.iter().cloned());
        }
        Cone::from_inequalities(ambient, &ineqs, &eqs)
    }

    pub fn image(&self, m: &Matrix) -> Result<Cone> {
        if m.cols() != self.ambient {
            return Err(Error::DimMismatch { expected: self.ambient, got: m.cols() });
        }
        let rays: Vec<Vector> = self.rays.iter().map(|r| m.mul_vec(r)).collect();
        let lin: Vec<Vector> = self.lineality.iter().map(|l| m.mul_vec(l)).collect();
        Ok(Cone::from_generators(m.rows(), &rays, &lin))
    }

    /// Smallest face of `self` containing `p` (assumed to lie in the cone).
    pub fn face_containing(&self, p: &[Rational]) -> Cone {
        let tight: Vec<&Vector> = self.facets.iter().filter(|a| dot(a, p).is_zero()).collect();
        let rays: Vec<Vector> =
            self.rays.iter().filter(|r| tight.iter().all(|a| dot(a, r).is_zero())).cloned().collect();
        Cone::from_generators(self.ambient, &rays, &self.lineality)
    }

    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        self.check_dim(other)?;
        if !other.contains_cone(self) {
            return Ok(false);
        }
        Ok(other.face_containing(&self.relint_point()) == *self)
    }

    /// All faces, including the cone itself and its lineality space.
    pub fn faces(&self) -> Vec<Cone> {
        let full: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        sets.insert(full.clone());
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|a| (0..self.rays.len()).filter(|&i| dot(a, &self.rays[i]).is_zero()).collect())
            .collect();
        let mut frontier: Vec<BTreeSet<usize>> = vec![full];
        while let Some(s) = frontier.pop() {
            for f in &facet_sets {
                let t: BTreeSet<usize> = s.intersection(f).cloned().collect();
                if sets.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let mut out: Vec<Cone> = sets
            .into_iter()
            .map(|s| {
                let rays: Vec<Vector> = s.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_generators(self.ambient, &rays, &self.lineality)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// A nonempty polyhedron `conv(vertices) + cone(rays) + span(lineality)` with
/// its irredundant inequality description.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyhedron {
    ambient: usize,
    vertices: Vec<Vector>,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
    /// `(a, b)` meaning `a·x = b`.
    equations: Vec<(Vector, Rational)>,
    /// `(a, b)` meaning `a·x >= b`.
    facets: Vec<(Vector, Rational)>,
    dim: usize,
}

fn homogenize(v: &[Rational], t: Rational) -> Vector {
    let mut h = v.to_vec();
    h.push(t);
    h
}

impl Polyhedron {
    pub fn from_points(ambient: usize, points: &[Vector]) -> Polyhedron {
        Polyhedron::from_vrep(ambient, points, &[], &[]).expect("nonempty point set")
    }

    pub fn from_vrep(ambient: usize, points: &[Vector], rays: &[Vector], lineality: &[Vector]) -> Option<Polyhedron> {
        if points.is_empty() {
            return None;
        }
        let mut gens: Vec<Vector> = points.iter().map(|p| homogenize(p, Rational::one())).collect();
        gens.extend(rays.iter().map(|r| homogenize(r, Rational::zero())));
        for l in lineality {
            gens.push(homogenize(l, Rational::zero()));
            gens.push(homogenize(&neg(l), Rational::zero()));
        }
        let cs = cone_structure(&gens, ambient + 1);
        let mut vertices = BTreeSet::new();
        let mut out_rays = BTreeSet::new();
        for r in &cs.rays {
            let t = &r[ambient];
            if t.is_positive() {
                vertices.insert(scale(&r[..ambient], &t.recip()));
            } else {
                out_rays.insert(primitive(&r[..ambient]));
            }
        }
        let lin: Vec<Vector> = cs.lineality.iter().map(|l| l[..ambient].to_vec()).collect();
        let lineality = span_basis(&lin, ambient);
        let point_gens: Vec<Vector> = gens.iter().filter(|g| g[ambient].is_positive()).cloned().collect();
        let facets: Vec<(Vector, Rational)> = cs
            .facets
            .iter()
            .filter(|n| point_gens.iter().any(|g| dot(n, g).is_zero()))
            .map(|n| (n[..ambient].to_vec(), -n[ambient].clone()))
            .collect();
        let (eq_rows, _) = rref(&cs.orth, ambient + 1);
        let equations: Vec<(Vector, Rational)> =
            eq_rows.iter().map(|e| (e[..ambient].to_vec(), -e[ambient].clone())).collect();
        Some(Polyhedron {
            ambient,
            vertices: vertices.into_iter().collect(),
            rays: out_rays.into_iter().collect(),
            lineality,
            equations,
            facets,
            dim: cs.span.len() - 1,
        })
    }

    /// `{x : a·x >= b}` intersected with `{x : e·x = f}`; `None` when empty.
    pub fn from_hrep(ambient: usize, ineqs: &[(Vector, Rational)], eqs: &[(Vector, Rational)]) -> Option<Polyhedron> {
        let mut rows: Vec<Vector> = ineqs.iter().map(|(a, b)| homogenize(a, -b.clone())).collect();
        rows.push(crate::rational::unit_vec(ambient + 1, ambient));
        for (e, f) in eqs {
            let h = homogenize(e, -f.clone());
            rows.push(neg(&h));
            rows.push(h);
        }
        let (lin, gens) = double_description(&rows, ambient + 1);
        let mut points = Vec::new();
        let mut rays = Vec::new();
        for g in &gens {
            let t = &g[ambient];
            if t.is_positive() {
                points.push(scale(&g[..ambient], &t.recip()));
            } else {
                rays.push(g[..ambient].to_vec());
            }
        }
        if points.is_empty() {
            return None;
        }
        let lin: Vec<Vector> = lin.iter().map(|l| l[..ambient].to_vec()).collect();
        Polyhedron::from_vrep(ambient, &points, &rays, &lin)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    pub fn equations(&self) -> &[(Vector, Rational)] {
        &self.equations
    }

    pub fn facets(&self) -> &[(Vector, Rational)] {
        &self.facets
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.equations.iter().all(|(e, f)| dot(e, p) == *f) && self.facets.iter().all(|(a, b)| dot(a, p) >= *b)
    }

    pub fn relint_contains(&self, p: &[Rational]) -> bool {
        self.equations.iter().all(|(e, f)| dot(e, p) == *f) && self.facets.iter().all(|(a, b)| dot(a, p) > *b)
    }

    /// Vertex barycenter plus the sum of rays.
    pub fn relint_point(&self) -> Vector {
        let n = Rational::from_integer((self.vertices.len() as i64).into());
        let mut p = vec![Rational::zero(); self.ambient];
        for v in &self.vertices {
            p = add(&p, v);
        }
        p = scale(&p, &n.recip());
        for r in &self.rays {
            p = add(&p, r);
        }
        p
    }

    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
            && other.rays.iter().all(|r| self.recession_contains(r))
            && other.lineality.iter().all(|l| self.recession_contains(l) && self.recession_contains(&neg(l)))
    }

    fn recession_contains(&self, r: &[Rational]) -> bool {
        self.equations.iter().all(|(e, _)| dot(e, r).is_zero()) && self.facets.iter().all(|(a, _)| !dot(a, r).is_negative())
    }

    pub fn intersect_all<'a>(ambient: usize, items: impl IntoIterator<Item = &'a Polyhedron>) -> Option<Polyhedron> {
        let mut ineqs = Vec::new();
        let mut eqs = Vec::new();
        for p in items {
            ineqs.extend(p.facets.iter().cloned());
            eqs.extend(p.equations.iter().cloned());
        }
        Polyhedron::from_hrep(ambient, &ineqs, &eqs)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Option<Polyhedron> {
        Polyhedron::intersect_all(self.ambient, [self, other])
    }

    /// Smallest face containing `p`.
    pub fn face_containing(&self, p: &[Rational]) -> Polyhedron {
        let tight: Vec<&(Vector, Rational)> = self.facets.iter().filter(|(a, b)| dot(a, p) == *b).collect();
        let verts: Vec<Vector> =
            self.vertices.iter().filter(|v| tight.iter().all(|(a, b)| dot(a, v) == *b)).cloned().collect();
        let rays: Vec<Vector> = self.rays.iter().filter(|r| tight.iter().all(|(a, _)| dot(a, r).is_zero())).cloned().collect();
        Polyhedron::from_vrep(self.ambient, &verts, &rays, &self.lineality).expect("face of nonempty polyhedron")
    }

    pub fn is_face_of(&self, other: &Polyhedron) -> bool {
        other.contains_polyhedron(self) && other.face_containing(&self.relint_point()) == *self
    }

    /// Nonempty faces of a polytope, as polyhedra.
    pub fn faces(&self) -> Vec<Polyhedron> {
        let n = self.vertices.len();
        let full: BTreeSet<usize> = (0..n).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|(a, b)| (0..n).filter(|&i| dot(a, &self.vertices[i]) == *b).collect())
            .collect();
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        sets.insert(full.clone());
        let mut frontier = vec![full];
        while let Some(s) = frontier.pop() {
            for f in &facet_sets {
                let t: BTreeSet<usize> = s.intersection(f).cloned().collect();
                if !t.is_empty() && sets.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        sets.into_iter()
            .map(|s| {
                let pts: Vec<Vector> = s.iter().map(|&i| self.vertices[i].clone()).collect();
                Polyhedron::from_vrep(self.ambient, &pts, &self.rays, &self.lineality).expect("nonempty")
            })
            .collect()
    }

    /// Affine hull direction space basis.
    pub fn direction_space(&self) -> Vec<Vector> {
        let mut dirs: Vec<Vector> = self.vertices.iter().skip(1).map(|v| sub(v, &self.vertices[0])).collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lineality.iter().cloned());
        span_basis(&dirs, self.ambient)
    }
}

pub fn barycenter(points: &[Vector]) -> Vector {
    let n = Rational::from_integer((points.len() as i64).into());
    let mut p = vec![Rational::zero(); points[0].len()];
    for v in points {
        p = add(&p, v);
    }
    scale(&p, &n.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ivec};

    #[test]
    fn combinations_enumerate_all() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        for_each_combination(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn double_description_matches_exhaustive_search() {
        let gens = vec![
            ivec(&[1, 0, 0, 1]),
            ivec(&[0, 1, 0, 1]),
            ivec(&[0, 0, 1, 1]),
            ivec(&[1, 1, 1, 1]),
            ivec(&[1, 1, 0, 1]),
            ivec(&[2, -1, 3, 1]),
            ivec(&[-1, 2, 2, 1]),
        ];
        let fast = cone_structure(&gens, 4);
        let slow = cone_structure_exhaustive(&gens, 4);
        assert_eq!(fast.facets, slow.facets);
        assert_eq!(fast.rays, slow.rays);
        let c = Cone::from_generators(4, &gens, &[]);
        let back = Cone::from_inequalities(4, c.facets(), c.equations());
        assert_eq!(back, c);
    }

    #[test]
    fn quadrant_structure() {
        let q = Cone::from_i64_rays(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(q.rays(), &[ivec(&[0, 1]), ivec(&[1, 0])]);
        assert_eq!(q.facets().len(), 2);
        assert!(q.is_strongly_convex());
        assert_eq!(q.dim(), 2);
        assert!(q.relint_contains(&q.relint_point()));
    }

    #[test]
    fn half_plane_has_lineality() {
        let h = Cone::from_i64_rays(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(h.lineality_basis().len(), 1);
        assert_eq!(h.rays(), &[ivec(&[0, 1])]);
        assert!(!h.is_strongly_convex());
        let w = Cone::from_i64_rays(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(w, Cone::whole_space(2));
    }

    #[test]
    fn cone_intersections() {
        let q1 = Cone::from_i64_rays(&[&[1, 0], &[0, 1]]);
        let q3 = Cone::from_i64_rays(&[&[-1, 0], &[0, -1]]);
        assert!(q1.intersect(&q3).unwrap().is_zero());
        let h = Cone::from_inequalities(2, &[ivec(&[0, 1])], &[]);
        assert_eq!(h.intersect(&q1).unwrap(), q1);
        let ray = Cone::from_i64_rays(&[&[1, 0]]);
        assert!(ray.is_face_of(&q1).unwrap());
        assert!(!Cone::from_i64_rays(&[&[1, 1]]).is_face_of(&q1).unwrap());
        assert_eq!(q1.faces().len(), 4);
    }

    #[test]
    fn cone_images() {
        let q1 = Cone::from_i64_rays(&[&[1, 0], &[0, 1]]);
        let m = Matrix::from_i64(&[&[1, 0]]);
        assert_eq!(q1.image(&m).unwrap(), Cone::from_i64_rays(&[&[1]]));
        let wedge = Cone::from_i64_rays(&[&[1, 1], &[-1, 1]]);
        assert!(!wedge.image(&m).unwrap().is_strongly_convex());
    }

    #[test]
    fn square_polyhedron() {
        let sq = Polyhedron::from_points(2, &[ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[0, 1]), vec![frac(1, 2), frac(1, 2)]]);
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.facets().len(), 4);
        assert_eq!(sq.dim(), 2);
        assert_eq!(sq.faces().len(), 9);
        let back = Polyhedron::from_hrep(2, sq.facets(), sq.equations()).unwrap();
        assert_eq!(back, sq);
        let seg = Polyhedron::from_points(2, &[ivec(&[0, 0]), ivec(&[2, 0])]);
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.equations().len(), 1);
        let cut = sq.intersect(&seg).unwrap();
        assert_eq!(cut.vertices(), &[ivec(&[0, 0]), ivec(&[1, 0])]);
        assert!(cut.is_face_of(&sq));
        let far = Polyhedron::from_points(2, &[ivec(&[5, 5])]);
        assert!(sq.intersect(&far).is_none());
        assert_eq!(far.dim(), 0);
        assert!(far.facets().is_empty());
        assert_eq!(far.relint_point(), ivec(&[5, 5]));
        let _ = int(0);
    }
}
