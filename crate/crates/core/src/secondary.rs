//! Point configurations as projections of a simplex: triangulations,
//! regularity, the secondary fan, bistellar flips and the fan over a
//! triangulation.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chamber::PolytopeProjection;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::graph::Graph;
use crate::linalg::{nullspace, rank, solve, Matrix};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polyhedron::{barycenter, for_each_combination, Cone, Polyhedron};
use crate::polytope::{Face, Polytope};
use crate::projection::make_projection;
use crate::rational::{dot, format_vec, frac, neg, primitive, to_bigints, Rational, Vector};
use crate::refine::pseudo_random;
use crate::toric::LatticeFan;

/// Labelled lattice points `a_0, ..., a_n` spanning `R^d` affinely.
/// Repeated and interior points are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<Vector>,
    dim: usize,
}

fn homogenize(p: &[Rational]) -> Vector {
    let mut v = p.to_vec();
    v.push(Rational::one());
    v
}

impl PointConfiguration {
    pub fn new(points: Vec<Vector>) -> Result<PointConfiguration> {
        let Some(first) = points.first() else {
            return Err(Error::TooFewPoints { needed: 1, got: 0 });
        };
        let dim = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimMismatch { expected: dim, got: p.len() });
        }
        if points.len() > 64 {
            return Err(Error::DegenerateInput("at most 64 points are supported".into()));
        }
        if points.iter().any(|p| to_bigints(p).is_none()) {
            return Err(Error::DegenerateInput("points must have integer coordinates".into()));
        }
        if points.len() < dim + 1 {
            return Err(Error::TooFewPoints { needed: dim + 1, got: points.len() });
        }
        let lifted: Vec<Vector> = points.iter().map(|p| homogenize(p)).collect();
        if rank(&lifted, dim + 1) != dim + 1 {
            return Err(Error::NotFullDimensional);
        }
        Ok(PointConfiguration { points, dim })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<PointConfiguration> {
        PointConfiguration::new(rows.iter().map(|r| crate::rational::ivec(r)).collect())
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Vector {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn lifted(&self, labels: &[usize]) -> Vec<Vector> {
        labels.iter().map(|&i| homogenize(&self.points[i])).collect()
    }

    /// `conv(A)`.
    pub fn hull(&self) -> Polyhedron {
        Polyhedron::from_points(self.dim, &self.points)
    }

    fn is_independent(&self, f: Face) -> bool {
        let l = f.labels();
        rank(&self.lifted(&l), self.dim + 1) == l.len()
    }

    /// Barycentric coordinates of `x` in the simplex `s` (affinely independent, `d+1` points).
    fn barycentric(&self, s: Face, x: &[Rational]) -> Vector {
        let l = s.labels();
        let cols = self.lifted(&l);
        let m = Matrix::from_rows(&cols, self.dim + 1).expect("width d+1").transpose();
        solve(&m, &homogenize(x)).expect("simplex is independent")
    }
}

/// `P` = standard n-simplex with vertex `i ↦ a_i − a_0`; `Q = conv(A) − a_0`.
pub fn simplex_projection(a: &PointConfiguration) -> Result<PolytopeProjection> {
    if a.len() < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: a.len() });
    }
    let n = a.len() - 1;
    let rows: Vec<Vector> =
        (0..a.dim).map(|r| (1..=n).map(|i| &a.points[i][r] - &a.points[0][r]).collect()).collect();
    let forward = Matrix::from_rows(&rows, n)?;
    PolytopeProjection::new(Polytope::standard_simplex(n), make_projection(forward)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regularity {
    Unknown,
    /// Heights whose lower envelope is the triangulation.
    Regular { heights: Vec<String> },
    NonRegular { optimum: String },
}

/// Maximal simplices as label sets, sorted.
#[derive(Clone, Debug, Serialize)]
pub struct Triangulation {
    pub simplices: Vec<Face>,
    pub used: Face,
    pub regularity: Regularity,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for Triangulation {}

impl PartialOrd for Triangulation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Triangulation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.simplices.cmp(&other.simplices)
    }
}

impl Triangulation {
    pub fn new(mut simplices: Vec<Face>) -> Triangulation {
        simplices.sort();
        simplices.dedup();
        let used = simplices.iter().fold(Face::EMPTY, |acc, s| acc.union(*s));
        Triangulation { simplices, used, regularity: Regularity::Unknown }
    }

    /// All nonempty faces of the simplices.
    pub fn face_set(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for s in &self.simplices {
            let l = s.labels();
            for mask in 1u64..(1 << l.len()) {
                out.insert(Face::from_labels((0..l.len()).filter(|b| mask >> b & 1 == 1).map(|b| l[b])));
            }
        }
        out
    }

    pub fn label(&self) -> String {
        self.simplices.iter().map(|s| s.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>().join("")).collect::<Vec<_>>().join(" ")
    }

    pub fn is_regular(&self) -> Option<bool> {
        match self.regularity {
            Regularity::Unknown => None,
            Regularity::Regular { .. } => Some(true),
            Regularity::NonRegular { .. } => Some(false),
        }
    }
}

/// Shared geometric data for searching and validating triangulations.
struct Geometry<'a> {
    a: &'a PointConfiguration,
    simplices: Vec<Face>,
    hull_facets: Vec<(Vector, Rational)>,
    proper: RefCell<HashMap<(Face, Face), bool>>,
}

impl<'a> Geometry<'a> {
    fn new(a: &'a PointConfiguration) -> Geometry<'a> {
        let mut simplices = Vec::new();
        for_each_combination(a.len(), a.dim + 1, |c| {
            let f = Face::from_labels(c.iter().copied());
            if a.is_independent(f) {
                simplices.push(f);
            }
        });
        simplices.sort();
        Geometry { a, simplices, hull_facets: a.hull().facets().to_vec(), proper: RefCell::new(HashMap::new()) }
    }

    /// A facet (d labels) on the boundary of `conv(A)`.
    fn on_boundary(&self, g: Face) -> bool {
        self.hull_facets.iter().any(|(n, b)| g.labels().iter().all(|&i| dot(n, &self.a.points[i]) == *b))
    }

    /// `conv(S) ∩ conv(T) = conv(S ∩ T)`, by maximizing the weight a common
    /// point puts outside the shared labels.
    fn proper(&self, s: Face, t: Face) -> bool {
        let key = (s.min(t), s.max(t));
        if let Some(&v) = self.proper.borrow().get(&key) {
            return v;
        }
        let v = self.proper_lp(key.0, key.1);
        self.proper.borrow_mut().insert(key, v);
        v
    }

    fn proper_lp(&self, s: Face, t: Face) -> bool {
        let (sl, tl) = (s.labels(), t.labels());
        let shared = s.intersect(t);
        let nv = sl.len() + tl.len();
        let mut lp = LinearProgram::new(nv);
        lp.set_all_nonneg();
        let d = self.a.dim;
        for r in 0..=d {
            let mut row = vec![Rational::zero(); nv];
            for (k, &i) in sl.iter().enumerate() {
                row[k] = homogenize(&self.a.points[i])[r].clone();
            }
            for (k, &i) in tl.iter().enumerate() {
                row[sl.len() + k] = -homogenize(&self.a.points[i])[r].clone();
            }
            lp.add(row, Relation::Eq, Rational::zero());
        }
        let mut norm = vec![Rational::zero(); nv];
        norm[..sl.len()].iter_mut().for_each(|x| *x = Rational::one());
        lp.add(norm, Relation::Eq, Rational::one());
        let mut obj = vec![Rational::zero(); nv];
        for (k, &i) in sl.iter().enumerate() {
            if !shared.contains(i) {
                obj[k] = Rational::one();
            }
        }
        for (k, &i) in tl.iter().enumerate() {
            if !shared.contains(i) {
                obj[sl.len() + k] = Rational::one();
            }
        }
        lp.maximize(obj);
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => value.is_zero(),
            // Infeasible: disjoint hulls.
            _ => true,
        }
    }

    /// Facets of `s` as (facet, opposite label).
    fn facets_of(s: Face) -> Vec<(Face, usize)> {
        s.labels().into_iter().map(|v| (Face(s.0 & !(1 << v)), v)).collect()
    }

    /// Interior facets of `chosen` used by exactly one simplex, in sorted order.
    fn open_facets(&self, chosen: &[Face]) -> Vec<Face> {
        let mut count: BTreeMap<Face, usize> = BTreeMap::new();
        for s in chosen {
            for (g, _) in Geometry::facets_of(*s) {
                *count.entry(g).or_default() += 1;
            }
        }
        count.into_iter().filter(|&(g, n)| n == 1 && !self.on_boundary(g)).map(|(g, _)| g).collect()
    }

    /// A point of `conv(A)` off every hyperplane spanned by `d` points.
    fn generic_point(&self) -> Vector {
        let d = self.a.dim;
        let s = self.simplices[0];
        let l = s.labels();
        let mut hyperplanes: Vec<Vector> = Vec::new();
        for_each_combination(self.a.len(), d, |c| {
            let lifted = self.a.lifted(c);
            if rank(&lifted, d + 1) == d {
                hyperplanes.push(nullspace(&lifted, d + 1).remove(0));
            }
        });
        for attempt in 0u64.. {
            let w = pseudo_random(attempt + 1, l.len(), 997);
            let total: i64 = w.iter().map(|x| x + 1).sum();
            let mut x = vec![Rational::zero(); d];
            for (k, &i) in l.iter().enumerate() {
                let c = frac(w[k] + 1, total);
                for (xr, pr) in x.iter_mut().zip(&self.a.points[i]) {
                    *xr += &c * pr;
                }
            }
            let hx = homogenize(&x);
            if hyperplanes.iter().all(|h| !dot(h, &hx).is_zero()) {
                return x;
            }
        }
        unreachable!()
    }

    fn enumerate(&self, cap: usize) -> Result<Vec<Triangulation>> {
        let x0 = self.generic_point();
        let seeds: Vec<Face> =
            self.simplices.iter().copied().filter(|&s| self.a.barycentric(s, &x0).iter().all(|c| c.is_positive())).collect();
        let mut out = Vec::new();
        let mut nodes = 0usize;
        for seed in seeds {
            let mut chosen = vec![seed];
            self.extend(&mut chosen, &mut out, &mut nodes, cap)?;
        }
        out.sort();
        Ok(out)
    }

    fn extend(&self, chosen: &mut Vec<Face>, out: &mut Vec<Triangulation>, nodes: &mut usize, cap: usize) -> Result<()> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::CapExceeded { cap });
        }
        let open = self.open_facets(chosen);
        let Some(&g) = open.first() else {
            out.push(Triangulation::new(chosen.clone()));
            return Ok(());
        };
        for &t in &self.simplices {
            if !g.is_subset(t) || chosen.contains(&t) {
                continue;
            }
            if chosen.iter().all(|&s| self.proper(s, t)) {
                chosen.push(t);
                self.extend(chosen, out, nodes, cap)?;
                chosen.pop();
            }
        }
        Ok(())
    }

    /// Full-dimensional, pairwise proper, every interior facet shared twice.
    fn validate(&self, t: &Triangulation) -> Result<()> {
        let d = self.a.dim;
        let bad = |m: String| Err(Error::InvalidTriangulation(m));
        if t.simplices.is_empty() {
            return bad("no simplices".into());
        }
        for s in &t.simplices {
            if s.labels().iter().any(|&i| i >= self.a.len()) {
                return bad(format!("{s:?} uses an unknown label"));
            }
            if s.len() != d + 1 || !self.a.is_independent(*s) {
                return bad(format!("{s:?} is not a full-dimensional simplex"));
            }
        }
        for (i, s) in t.simplices.iter().enumerate() {
            for u in &t.simplices[i + 1..] {
                if !self.proper(*s, *u) {
                    return bad(format!("{s:?} and {u:?} overlap"));
                }
            }
        }
        let mut count: BTreeMap<Face, usize> = BTreeMap::new();
        for s in &t.simplices {
            for (g, _) in Geometry::facets_of(*s) {
                *count.entry(g).or_default() += 1;
            }
        }
        for (g, n) in count {
            if (self.on_boundary(g) && n != 1) || (!self.on_boundary(g) && n != 2) {
                return bad(format!("facet {g:?} is not matched"));
            }
        }
        Ok(())
    }
}

/// All triangulations of `A`, sorted; points may be left unused.
pub fn enumerate_triangulations(a: &PointConfiguration, cap: usize) -> Result<Vec<Triangulation>> {
    Geometry::new(a).enumerate(cap)
}

/// Triangulations using every point of `A`.
pub fn enumerate_fine_triangulations(a: &PointConfiguration, cap: usize) -> Result<Vec<Triangulation>> {
    let all = Face::full(a.len());
    Ok(enumerate_triangulations(a, cap)?.into_iter().filter(|t| t.used == all).collect())
}

pub fn validate_triangulation(a: &PointConfiguration, t: &Triangulation) -> Result<()> {
    Geometry::new(a).validate(t)
}

/// Height LP over `h ∈ Q^A` and a slack `s ≤ 1`: for each simplex S and
/// each point `j ∉ S`, `h_j − Σ_i β_i h_i ≥ s` where `β` are the barycentric
/// coordinates of `a_j` in S (the lift of S evaluated at `a_j`). Regular iff
/// the optimum is positive.
pub fn regularity(a: &PointConfiguration, t: &Triangulation) -> Result<Regularity> {
    validate_triangulation(a, t)?;
    Ok(regularity_lp(a, t))
}

fn regularity_lp(a: &PointConfiguration, t: &Triangulation) -> Regularity {
    let n = a.len();
    let nv = n + 1;
    let mut lp = LinearProgram::new(nv);
    for s in &t.simplices {
        let labels = s.labels();
        for j in (0..n).filter(|&j| !s.contains(j)) {
            let beta = a.barycentric(*s, &a.points[j]);
            let mut row = vec![Rational::zero(); nv];
            row[j] = Rational::one();
            for (b, &i) in beta.iter().zip(&labels) {
                row[i] -= b;
            }
            row[n] = -Rational::one();
            lp.add(row, Relation::Ge, Rational::zero());
        }
    }
    let mut cap = vec![Rational::zero(); nv];
    cap[n] = Rational::one();
    lp.add(cap.clone(), Relation::Le, Rational::one());
    lp.maximize(cap);
    match lp.solve() {
        LpOutcome::Optimal { value, x } if value.is_positive() => Regularity::Regular { heights: format_vec(&x[..n]) },
        LpOutcome::Optimal { value, .. } => Regularity::NonRegular { optimum: value.to_string() },
        _ => Regularity::NonRegular { optimum: "infeasible".into() },
    }
}

pub fn is_regular(a: &PointConfiguration, t: &Triangulation) -> Result<bool> {
    Ok(matches!(regularity(a, t)?, Regularity::Regular { .. }))
}

/// Enumerates and attaches a regularity certificate to every triangulation.
pub fn classified_triangulations(a: &PointConfiguration, cap: usize) -> Result<Vec<Triangulation>> {
    let mut ts = enumerate_triangulations(a, cap)?;
    let regs: Vec<Regularity> = ts.par_iter().map(|t| regularity_lp(a, t)).collect();
    for (t, r) in ts.iter_mut().zip(regs) {
        t.regularity = r;
    }
    Ok(ts)
}

/// The simplices of a tight string: faces of size `d+1` with full-dimensional image.
pub fn triangulation_of_string(pp: &PolytopeProjection, faces: &BTreeSet<Face>) -> Triangulation {
    let d = pp.projection().target_dim();
    Triangulation::new(faces.iter().copied().filter(|f| f.len() == d + 1 && pp.image(*f).dim() == d).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondaryReport {
    pub maximal_cones: usize,
    pub triangulations: usize,
    pub regular: usize,
    /// `map[i]`: index into the enumeration of the triangulation of maximal cone i.
    pub map: Vec<Option<usize>>,
    pub bijective: bool,
    /// Pairs of maximal cones sharing a wall, as enumeration indices.
    pub wall_edges: Vec<(usize, usize)>,
}

/// The fiber fan of the simplex projection, compared against the regular
/// triangulations found by enumeration.
pub fn secondary_fan(a: &PointConfiguration, triangulations: &[Triangulation]) -> Result<SecondaryReport> {
    let pp = simplex_projection(a)?;
    let gs = pp.fiber_fan();
    let maximal = gs.maximal();
    let mut map = Vec::with_capacity(maximal.len());
    for &m in &maximal {
        let s = pp.coherent_string(&gs.cones()[m].witness)?;
        let t = triangulation_of_string(&pp, &s.faces);
        map.push(triangulations.iter().position(|x| *x == t));
    }
    let regular: Vec<usize> = (0..triangulations.len()).filter(|&i| triangulations[i].is_regular() == Some(true)).collect();
    let hit: BTreeSet<usize> = map.iter().flatten().copied().collect();
    let bijective = map.iter().all(Option::is_some) && hit.len() == maximal.len() && hit.iter().copied().eq(regular.iter().copied());
    let k = pp.projection().kernel_dim();
    let mut wall_edges = Vec::new();
    for i in 0..maximal.len() {
        for j in i + 1..maximal.len() {
            let w = gs.cones()[maximal[i]].cone.intersect(&gs.cones()[maximal[j]].cone)?;
            if w.dim() + 1 == k {
                if let (Some(x), Some(y)) = (map[i], map[j]) {
                    wall_edges.push((x.min(y), x.max(y)));
                }
            }
        }
    }
    wall_edges.sort_unstable();
    Ok(SecondaryReport {
        maximal_cones: maximal.len(),
        triangulations: triangulations.len(),
        regular: regular.len(),
        map,
        bijective,
        wall_edges,
    })
}

/// Minimal affinely dependent subsets with their sign partition `(Z+, Z−)`.
pub fn circuits(a: &PointConfiguration) -> Vec<(Face, Face)> {
    let d = a.dim;
    let mut out = Vec::new();
    for size in 2..=(d + 2).min(a.len()) {
        for_each_combination(a.len(), size, |c| {
            let lifted = a.lifted(c);
            if rank(&lifted, d + 1) != size - 1 {
                return;
            }
            let ker = nullspace(&Matrix::from_rows(&lifted, d + 1).unwrap().transpose().row_vecs(), size);
            if ker.len() != 1 || ker[0].iter().any(|x| x.is_zero()) {
                return;
            }
            let plus = Face::from_labels(c.iter().zip(&ker[0]).filter(|(_, x)| x.is_positive()).map(|(&i, _)| i));
            let minus = Face::from_labels(c.iter().zip(&ker[0]).filter(|(_, x)| x.is_negative()).map(|(&i, _)| i));
            out.push((plus, minus));
        });
    }
    out
}

/// True iff `t2` arises from `t1` by one bistellar flip over a circuit.
fn is_flip(circuits: &[(Face, Face)], t1: &Triangulation, t2: &Triangulation) -> bool {
    let s1: BTreeSet<Face> = t1.simplices.iter().copied().collect();
    let s2: BTreeSet<Face> = t2.simplices.iter().copied().collect();
    let d1: BTreeSet<Face> = s1.difference(&s2).copied().collect();
    let d2: BTreeSet<Face> = s2.difference(&s1).copied().collect();
    if d1.is_empty() || d2.is_empty() {
        return false;
    }
    let join = |side: Face, z: Face, links: &BTreeSet<Face>| -> BTreeSet<Face> {
        side.labels().into_iter().flat_map(|v| links.iter().map(move |l| Face(z.0 & !(1 << v)).union(*l))).collect()
    };
    circuits.iter().any(|&(p, m)| {
        [(p, m), (m, p)].into_iter().any(|(up, down)| {
            let z = up.union(down);
            let links: BTreeSet<Face> = d1.iter().map(|s| Face(s.0 & !z.0)).collect();
            join(up, z, &links) == d1 && join(down, z, &links) == d2
        })
    })
}

/// Flip graph on `triangulations` (in the given order).
pub fn flip_graph(a: &PointConfiguration, triangulations: &[Triangulation]) -> Graph {
    let cs = circuits(a);
    let n = triangulations.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let cs = &cs;
            (i + 1..n).filter(move |&j| is_flip(cs, &triangulations[i], &triangulations[j])).map(move |j| (i, j))
        })
        .collect();
    Graph::new(triangulations.iter().map(Triangulation::label).collect(), edges)
}

/// Subgraph induced on the regular triangulations, keeping original indices.
pub fn regular_flip_edges(graph: &Graph, triangulations: &[Triangulation]) -> Vec<(usize, usize)> {
    graph
        .edges
        .iter()
        .copied()
        .filter(|&(i, j)| triangulations[i].is_regular() == Some(true) && triangulations[j].is_regular() == Some(true))
        .collect()
}

/// The extra ray closing the cone over `conv(A)` into a complete fan:
/// `(0, −1)` when the origin is interior to `conv(A)`, else the primitive
/// vector along `−(barycenter, 1)`.
pub fn closing_ray(a: &PointConfiguration) -> Vector {
    let d = a.dim;
    let hull = a.hull();
    let origin = vec![Rational::zero(); d];
    if hull.dim() == d && hull.facets().iter().all(|(n, b)| dot(n, &origin) != *b) && hull.contains(&origin) {
        let mut r = origin;
        r.push(-Rational::one());
        return r;
    }
    let b = barycenter(&a.points);
    primitive(&neg(&homogenize(&b)))
}

/// `Δ_T`: cones over the simplices at height one, and the boundary faces of
/// `cone(A)` joined with [`closing_ray`].
pub fn fan_of_triangulation(a: &PointConfiguration, t: &Triangulation) -> Result<LatticeFan> {
    let geo = Geometry::new(a);
    geo.validate(t)?;
    let d = a.dim;
    let r = closing_ray(a);
    let mut cones: Vec<Cone> = Vec::new();
    for s in &t.simplices {
        cones.push(Cone::from_generators(d + 1, &a.lifted(&s.labels()), &[]));
        for (g, _) in Geometry::facets_of(*s) {
            if geo.on_boundary(g) {
                let mut gens = a.lifted(&g.labels());
                gens.push(r.clone());
                cones.push(Cone::from_generators(d + 1, &gens, &[]));
            }
        }
    }
    let fan = LatticeFan::from_fan(Fan::new(d + 1, cones))?;
    if !fan.is_complete() {
        return Err(Error::NotFullDimensional);
    }
    Ok(fan)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::toric::is_projective_fan;

    pub(crate) fn convex_polygon(n: usize) -> PointConfiguration {
        let rows: &[&[i64]] = match n {
            4 => &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]],
            5 => &[&[0, 0], &[2, 0], &[3, 2], &[1, 4], &[-1, 2]],
            6 => &[&[0, 0], &[2, 0], &[3, 1], &[2, 2], &[0, 2], &[-1, 1]],
            7 => &[&[0, 0], &[2, 0], &[4, 1], &[5, 3], &[4, 5], &[1, 5], &[-1, 2]],
            _ => panic!("no fixture"),
        };
        PointConfiguration::from_i64(rows).unwrap()
    }

    pub(crate) fn moae() -> PointConfiguration {
        PointConfiguration::from_i64(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 1], &[1, 2]]).unwrap()
    }

    fn catalan(n: usize) -> usize {
        (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
    }

    #[test]
    fn polygon_fixtures_are_convex() {
        for n in 4..=7 {
            assert!(Polytope::new(convex_polygon(n).points().to_vec()).is_ok());
        }
    }

    #[test]
    fn configuration_errors() {
        assert_eq!(PointConfiguration::from_i64(&[&[0, 0], &[1, 0]]).unwrap_err(), Error::TooFewPoints { needed: 3, got: 2 });
        assert_eq!(PointConfiguration::from_i64(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap_err(), Error::NotFullDimensional);
    }

    #[test]
    fn collinear_projection() {
        let a = PointConfiguration::from_i64(&[&[0], &[1], &[2]]).unwrap();
        let pp = simplex_projection(&a).unwrap();
        assert_eq!(pp.polytope().dim(), 2);
        assert_eq!(pp.target(), &Polyhedron::from_points(1, &[crate::rational::ivec(&[0]), crate::rational::ivec(&[2])]));
        let ts = enumerate_triangulations(&a, 1000).unwrap();
        // {02} and {01, 12}.
        assert_eq!(ts.len(), 2);
    }

    #[test]
    fn catalan_counts_small() {
        for n in 4..=6 {
            let a = convex_polygon(n);
            let ts = classified_triangulations(&a, 100_000).unwrap();
            assert_eq!(ts.len(), catalan(n - 2), "n = {n}");
            assert!(ts.iter().all(|t| t.is_regular() == Some(true)));
        }
    }

    #[test]
    fn single_simplex_is_regular() {
        let a = PointConfiguration::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let ts = enumerate_triangulations(&a, 100).unwrap();
        assert_eq!(ts.len(), 1);
        assert!(is_regular(&a, &ts[0]).unwrap());
    }

    #[test]
    fn invalid_triangulations_are_rejected() {
        let a = convex_polygon(4);
        let overlapping = Triangulation::new(vec![Face::from_labels([0, 1, 2]), Face::from_labels([0, 1, 3])]);
        assert!(matches!(is_regular(&a, &overlapping), Err(Error::InvalidTriangulation(_))));
        let partial = Triangulation::new(vec![Face::from_labels([0, 1, 2])]);
        assert!(matches!(is_regular(&a, &partial), Err(Error::InvalidTriangulation(_))));
    }

    #[test]
    fn moae_has_non_regular_triangulations() {
        let a = moae();
        let ts = classified_triangulations(&a, 1_000_000).unwrap();
        let regular = ts.iter().filter(|t| t.is_regular() == Some(true)).count();
        assert!(regular < ts.len());
        // Oracle: each trapezoid between parallel outer and inner edges is cut
        // by the diagonal in one rotational sense; no height function does that.
        let twisted = Triangulation::new(
            [[0, 1, 3], [1, 3, 4], [1, 2, 4], [2, 4, 5], [0, 2, 5], [0, 3, 5], [3, 4, 5]]
                .iter()
                .map(|s| Face::from_labels(s.iter().copied()))
                .collect(),
        );
        let found = ts.iter().find(|t| **t == twisted).expect("twisted triangulation enumerated");
        assert_eq!(found.is_regular(), Some(false));
        for t in ts.iter().filter(|t| t.is_regular() == Some(false)) {
            let f = fan_of_triangulation(&a, t).unwrap();
            assert!(!is_projective_fan(&f).unwrap().0);
        }
    }

    #[test]
    fn quadrilateral_flip_and_fans() {
        let a = convex_polygon(4);
        let ts = classified_triangulations(&a, 1000).unwrap();
        let g = flip_graph(&a, &ts);
        assert_eq!(g.edges, vec![(0, 1)]);
        for t in &ts {
            let f = fan_of_triangulation(&a, t).unwrap();
            assert_eq!(f.rank(), 3);
            assert!(is_projective_fan(&f).unwrap().0);
        }
        let rep = secondary_fan(&a, &ts).unwrap();
        assert_eq!(rep.maximal_cones, 2);
        assert!(rep.bijective);
        assert_eq!(rep.wall_edges, vec![(0, 1)]);
    }

    #[test]
    fn segment_fan() {
        let a = PointConfiguration::from_i64(&[&[0], &[2]]).unwrap();
        let t = Triangulation::new(vec![Face::from_labels([0, 1])]);
        let f = fan_of_triangulation(&a, &t).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.maximal_cones().len(), 3);
    }

    #[test]
    fn pentagon_secondary_fan_and_flips() {
        let a = convex_polygon(5);
        let ts = classified_triangulations(&a, 10_000).unwrap();
        assert_eq!(ts.len(), 5);
        let g = flip_graph(&a, &ts);
        assert_eq!(g.edges.len(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2) && g.is_connected());
        let rep = secondary_fan(&a, &ts).unwrap();
        assert_eq!(rep.maximal_cones, 5);
        assert!(rep.bijective);
        assert_eq!(rep.wall_edges, regular_flip_edges(&g, &ts));
        let pp = simplex_projection(&a).unwrap();
        for t in &ts {
            let fs = t.face_set();
            assert!(pp.is_locally_coherent_string(&fs) && pp.is_tight_string(&fs));
        }
    }
}
