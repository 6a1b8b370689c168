//! Vertex-labeled polytopes, their face lattices and normal fans.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::rank;
use crate::polyhedron::{Cone, Polyhedron};
use crate::rational::{dot, neg, sub, Rational, Vector};

/// A set of vertex labels, stored as a bitmask (at most 64 vertices).
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(pub u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Face {
        let mut m = 0u64;
        for l in labels {
            assert!(l < 64, "at most 64 labels are supported");
            m |= 1 << l;
        }
        Face(m)
    }

    pub fn full(n: usize) -> Face {
        Face::from_labels(0..n)
    }

    pub fn labels(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.0 >> i & 1 == 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, label: usize) -> bool {
        label < 64 && self.0 >> label & 1 == 1
    }

    pub fn is_subset(&self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(&self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn union(&self, other: Face) -> Face {
        Face(self.0 | other.0)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels())
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// Affine dimension of a nonempty point set.
pub fn affine_dim(points: &[Vector]) -> isize {
    match points.split_first() {
        None => -1,
        Some((p0, rest)) => {
            let diffs: Vec<Vector> = rest.iter().map(|p| sub(p, p0)).collect();
            rank(&diffs, p0.len()) as isize
        }
    }
}

/// A polytope given by its vertices; vertex `i` carries label `i` forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    vertices: Vec<Vector>,
    hull: Polyhedron,
}

impl Polytope {
    /// Fails with `DegenerateInput` unless every listed point is a vertex.
    pub fn new(vertices: Vec<Vector>) -> Result<Polytope> {
        let Some(first) = vertices.first() else {
            return Err(Error::DegenerateInput("polytope needs at least one vertex".into()));
        };
        let ambient = first.len();
        if let Some(v) = vertices.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimMismatch { expected: ambient, got: v.len() });
        }
        if vertices.len() > 64 {
            return Err(Error::DegenerateInput("at most 64 vertices are supported".into()));
        }
        let hull = Polyhedron::from_points(ambient, &vertices);
        let distinct: BTreeSet<&Vector> = vertices.iter().collect();
        if distinct.len() != vertices.len() || hull.vertices().len() != vertices.len() {
            return Err(Error::DegenerateInput("points are not in convex position".into()));
        }
        Ok(Polytope { vertices, hull })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Polytope> {
        Polytope::new(rows.iter().map(|r| crate::rational::ivec(r)).collect())
    }

    /// The standard simplex `conv{0, e_1, ..., e_n}` with label 0 at the origin.
    pub fn standard_simplex(n: usize) -> Polytope {
        let mut vs = vec![crate::rational::zero_vec(n)];
        vs.extend((0..n).map(|i| crate::rational::unit_vec(n, i)));
        Polytope::new(vs).expect("simplex vertices are in convex position")
    }

    pub fn ambient_dim(&self) -> usize {
        self.hull.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.hull.dim()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vector {
        &self.vertices[i]
    }

    pub fn hull(&self) -> &Polyhedron {
        &self.hull
    }

    pub fn all(&self) -> Face {
        Face::full(self.vertices.len())
    }

    pub fn points_of(&self, f: Face) -> Vec<Vector> {
        f.labels().into_iter().map(|i| self.vertices[i].clone()).collect()
    }

    /// Labels of the vertices on a supporting hyperplane `a·x = b` of the hull.
    fn labels_on(&self, a: &[Rational], b: &Rational) -> Face {
        Face::from_labels((0..self.vertices.len()).filter(|&i| dot(a, &self.vertices[i]) == *b))
    }

    /// Label sets of the facets of P.
    pub fn facet_faces(&self) -> Vec<Face> {
        self.hull.facets().iter().map(|(a, b)| self.labels_on(a, b)).collect()
    }

    /// Smallest face containing the point `x` of P.
    pub fn face_containing(&self, x: &[Rational]) -> Face {
        let mut f = self.all();
        for ((a, b), labels) in self.hull.facets().iter().zip(self.facet_faces()) {
            if dot(a, x) == *b {
                f = f.intersect(labels);
            }
        }
        f
    }

    pub fn face_lattice(&self) -> FaceLattice {
        let facets = self.facet_faces();
        let mut set: BTreeSet<Face> = BTreeSet::new();
        set.insert(self.all());
        let mut frontier = vec![self.all()];
        while let Some(f) = frontier.pop() {
            for g in &facets {
                let h = f.intersect(*g);
                if set.insert(h) {
                    frontier.push(h);
                }
            }
        }
        set.insert(Face::EMPTY);
        let mut faces: Vec<(isize, Face)> =
            set.into_iter().map(|f| (affine_dim(&self.points_of(f)), f)).collect();
        faces.sort();
        FaceLattice { faces: faces.iter().map(|x| x.1).collect(), dims: faces.iter().map(|x| x.0).collect() }
    }

    pub fn is_face(&self, f: Face) -> bool {
        if f.is_empty() {
            return true;
        }
        if !f.is_subset(self.all()) {
            return false;
        }
        let pts = self.points_of(f);
        let centre = crate::polyhedron::barycenter(&pts);
        self.face_containing(&centre) == f
    }

    /// `N(P, F)`: covectors whose maximum over P is attained on all of F.
    pub fn normal_cone(&self, f: Face) -> Result<Cone> {
        if f.is_empty() || !self.is_face(f) {
            return Err(Error::NotAFace(f.labels()));
        }
        let mut rays = Vec::new();
        for ((a, _), labels) in self.hull.facets().iter().zip(self.facet_faces()) {
            if f.is_subset(labels) {
                rays.push(neg(a));
            }
        }
        let lin: Vec<Vector> = self.hull.equations().iter().map(|(e, _)| e.clone()).collect();
        Ok(Cone::from_generators(self.ambient_dim(), &rays, &lin))
    }

    pub fn normal_fan(&self) -> Fan {
        let lattice = self.face_lattice();
        let cones = lattice.nonempty().map(|f| self.normal_cone(f).expect("lattice member is a face")).collect();
        Fan::new(self.ambient_dim(), cones)
    }

    /// Face of P maximizing the covector `psi`.
    pub fn maximizing_face(&self, psi: &[Rational]) -> Face {
        let vals: Vec<Rational> = self.vertices.iter().map(|v| dot(psi, v)).collect();
        let best = vals.iter().max().expect("nonempty").clone();
        Face::from_labels((0..vals.len()).filter(|&i| vals[i] == best))
    }
}

/// All faces of a polytope as label sets, sorted by dimension, with the
/// empty face first and P last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    faces: Vec<Face>,
    dims: Vec<isize>,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dim_of(&self, f: Face) -> Option<isize> {
        self.faces.iter().position(|&g| g == f).map(|i| self.dims[i])
    }

    pub fn contains(&self, f: Face) -> bool {
        self.faces.contains(&f)
    }

    pub fn nonempty(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied().filter(|f| !f.is_empty())
    }

    pub fn of_dim(&self, d: isize) -> Vec<Face> {
        self.faces.iter().zip(&self.dims).filter(|(_, &e)| e == d).map(|(f, _)| *f).collect()
    }

    /// Number of faces in each dimension, starting at dimension -1.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = *self.dims.last().unwrap_or(&-1);
        (-1..=top).map(|d| self.of_dim(d).len()).collect()
    }

    /// Pairs `(i, j)` with face `i` covered by face `j`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.faces.len() {
            for j in 0..self.faces.len() {
                if self.dims[j] == self.dims[i] + 1 && self.faces[i].is_subset(self.faces[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
