//! The cell complex Γ of a polytope projection and its fiber fan Γ*.
//!
//! A [`PolytopeProjection`] precomputes, for every nonempty face `F` of P,
//! the image `π(F)`, the normal cone `N(F)` and its image `π∨N(F)`. Cells and
//! cones are then membership classes of points in these two families.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::graph::Graph;
use crate::polyhedron::{Cone, Polyhedron};
use crate::polytope::{Face, FaceLattice, Polytope};
use crate::projection::ProjectionPair;
use crate::rational::{format_vec, Rational, Vector};
use crate::refine::{cell_at, polytope_seeds, refine_complete, vector_seeds};

/// A cell `c(q)` of Γ: the intersection of `π(F)` over all faces F with
/// `q ∈ π(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub polytope: Polyhedron,
    /// Sorted; equal sets mean equal cells.
    pub defining_faces: Vec<Face>,
    pub dim: usize,
    pub witness: Vector,
}

/// Γ: cells sorted by `(dim, defining_faces)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    cells: Vec<Cell>,
    full_dim: usize,
}

fn is_sorted_subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

impl CellComplex {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Indices of the maximal cells.
    pub fn chambers(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim == self.full_dim).collect()
    }

    /// `cells[i] ⊆ cells[j]`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        is_sorted_subset(&self.cells[j].defining_faces, &self.cells[i].defining_faces)
    }

    pub fn index_of(&self, defining_faces: &[Face]) -> Option<usize> {
        self.cells.iter().position(|c| c.defining_faces == defining_faces)
    }

    /// Pairs `(i, j)` with `cells[i]` a facet of `cells[j]`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.cells.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.cells[j].dim == self.cells[i].dim + 1 && self.le(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// One cone of Γ* with the faces whose projected normal cones contain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCone {
    pub cone: Cone,
    pub members: Vec<Face>,
    pub witness: Vector,
}

/// Γ*: cones sorted by `(dim, members)`, each with a relative-interior witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberFan {
    cones: Vec<FiberCone>,
    ambient: usize,
}

impl FiberFan {
    pub fn cones(&self) -> &[FiberCone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn fan(&self) -> Fan {
        Fan::new(self.ambient, self.cones.iter().map(|c| c.cone.clone()).collect())
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cones[i].cone.dim() == self.ambient).collect()
    }

    /// `cones[i] ⊆ cones[j]`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        is_sorted_subset(&self.cones[j].members, &self.cones[i].members)
    }

    pub fn witnesses(&self) -> Vec<Vector> {
        self.cones.iter().map(|c| c.witness.clone()).collect()
    }

    pub fn index_of_cone(&self, c: &Cone) -> Option<usize> {
        self.cones.iter().position(|x| x.cone == *c)
    }
}

/// A polytope, a projection of it, and per-face projected data.
#[derive(Debug)]
pub struct PolytopeProjection {
    polytope: Polytope,
    pp: ProjectionPair,
    lattice: FaceLattice,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    images: Vec<Polyhedron>,
    normal_cones: Vec<Cone>,
    dual_images: Vec<Cone>,
    q: Polyhedron,
    gamma: OnceLock<CellComplex>,
    gamma_star: OnceLock<FiberFan>,
}

impl PolytopeProjection {
    pub fn new(polytope: Polytope, pp: ProjectionPair) -> Result<PolytopeProjection> {
        if pp.source_dim() != polytope.ambient_dim() {
            return Err(Error::DimMismatch { expected: polytope.ambient_dim(), got: pp.source_dim() });
        }
        if polytope.dim() != polytope.ambient_dim() {
            return Err(Error::NotFullDimensional);
        }
        let lattice = polytope.face_lattice();
        let faces: Vec<Face> = lattice.nonempty().collect();
        let index = faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let m = pp.target_dim();
        let images: Vec<Polyhedron> = faces
            .iter()
            .map(|f| {
                let pts: Vec<Vector> = polytope.points_of(*f).iter().map(|v| pp.apply(v)).collect();
                Polyhedron::from_points(m, &pts)
            })
            .collect();
        let normal_cones: Vec<Cone> = faces.iter().map(|f| polytope.normal_cone(*f)).collect::<Result<_>>()?;
        let dual_images: Vec<Cone> =
            normal_cones.iter().map(|n| n.image(pp.dual())).collect::<Result<_>>()?;
        let all: Vec<Vector> = polytope.vertices().iter().map(|v| pp.apply(v)).collect();
        let q = Polyhedron::from_points(m, &all);
        Ok(PolytopeProjection {
            polytope,
            pp,
            lattice,
            faces,
            index,
            images,
            normal_cones,
            dual_images,
            q,
            gamma: OnceLock::new(),
            gamma_star: OnceLock::new(),
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn projection(&self) -> &ProjectionPair {
        &self.pp
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    /// Nonempty faces of P in lattice order.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_index(&self, f: Face) -> Option<usize> {
        self.index.get(&f).copied()
    }

    fn idx(&self, f: Face) -> usize {
        self.index[&f]
    }

    /// `π(F)`.
    pub fn image(&self, f: Face) -> &Polyhedron {
        &self.images[self.idx(f)]
    }

    pub fn normal_cone(&self, f: Face) -> &Cone {
        &self.normal_cones[self.idx(f)]
    }

    /// `π∨ N(F)`.
    pub fn dual_image(&self, f: Face) -> &Cone {
        &self.dual_images[self.idx(f)]
    }

    /// `Q = π(P)`.
    pub fn target(&self) -> &Polyhedron {
        &self.q
    }

    /// Face whose normal cone equals `c`, if any.
    pub fn face_of_normal_cone(&self, c: &Cone) -> Option<Face> {
        self.normal_cones.iter().position(|n| n == c).map(|i| self.faces[i])
    }

    fn check_point(&self, q: &[Rational]) -> Result<()> {
        if q.len() != self.pp.target_dim() {
            return Err(Error::DimMismatch { expected: self.pp.target_dim(), got: q.len() });
        }
        if !self.q.contains(q) {
            return Err(Error::PointOutsideQ);
        }
        Ok(())
    }

    fn check_covector(&self, psi: &[Rational]) -> Result<()> {
        if psi.len() != self.pp.kernel_dim() {
            return Err(Error::DimMismatch { expected: self.pp.kernel_dim(), got: psi.len() });
        }
        Ok(())
    }

    pub fn cell_of(&self, q: &[Rational]) -> Result<Cell> {
        self.check_point(q)?;
        let (polytope, idx) = cell_at(&self.images, self.pp.target_dim(), q).ok_or(Error::PointOutsideQ)?;
        let dim = polytope.dim();
        let witness = polytope.relint_point();
        let mut defining_faces: Vec<Face> = idx.iter().map(|&i| self.faces[i]).collect();
        defining_faces.sort();
        Ok(Cell { polytope, defining_faces, dim, witness })
    }

    pub fn chamber_complex(&self) -> &CellComplex {
        self.gamma.get_or_init(|| {
            let m = self.pp.target_dim();
            let refined = refine_complete(&self.images, m, m, &polytope_seeds(&self.q, 256))
                .expect("projected faces of a full-dimensional polytope refine Q");
            let mut cells: Vec<Cell> = refined
                .into_iter()
                .map(|c| Cell {
                    dim: c.region.dim(),
                    polytope: c.region,
                    defining_faces: c.members.iter().map(|&i| self.faces[i]).collect(),
                    witness: c.witness,
                })
                .collect();
            for c in &mut cells {
                c.defining_faces.sort();
            }
            cells.sort_by(|a, b| (a.dim, &a.defining_faces).cmp(&(b.dim, &b.defining_faces)));
            CellComplex { cells, full_dim: m }
        })
    }

    /// `σ(ψ) = ∩{π∨N(F) : ψ ∈ π∨N(F)}`.
    pub fn cone_of(&self, psi: &[Rational]) -> Result<Cone> {
        self.check_covector(psi)?;
        Ok(cell_at(&self.dual_images, self.pp.kernel_dim(), psi).expect("projected normal fan is complete").0)
    }

    pub fn fiber_fan(&self) -> &FiberFan {
        self.gamma_star.get_or_init(|| {
            let k = self.pp.kernel_dim();
            let refined = refine_complete(&self.dual_images, k, k, &vector_seeds(k, 256))
                .expect("projected normal fan is complete");
            let mut cones: Vec<FiberCone> = refined
                .into_iter()
                .map(|c| {
                    let mut members: Vec<Face> = c.members.iter().map(|&i| self.faces[i]).collect();
                    members.sort();
                    FiberCone { cone: c.region, members, witness: c.witness }
                })
                .collect();
            cones.sort_by(|a, b| (a.cone.dim(), &a.members).cmp(&(b.cone.dim(), &b.members)));
            FiberFan { cones, ambient: k }
        })
    }

    fn cell_index(&self, cell: &Cell) -> Result<usize> {
        self.chamber_complex().index_of(&cell.defining_faces).ok_or(Error::CellNotInComplex)
    }

    /// Faces F with `relint c ⊆ relint π(F)`.
    pub fn relint_faces(&self, cell: &Cell) -> Vec<Face> {
        (0..self.faces.len())
            .filter(|&i| self.images[i].relint_contains(&cell.witness))
            .map(|i| self.faces[i])
            .collect()
    }

    /// `Δ(c)`: the normal fan of the fiber over `relint c`, in kernel-dual coordinates.
    pub fn fiber_normal_fan(&self, cell: &Cell) -> Result<Fan> {
        self.cell_index(cell)?;
        let cones = self.relint_faces(cell).into_iter().map(|f| self.dual_image(f).clone()).collect();
        Ok(Fan::new(self.pp.kernel_dim(), cones))
    }

    /// `[ψ]_c`: the cone of `Δ(c)` containing ψ in its relative interior.
    pub fn local_cone(&self, cell: &Cell, psi: &[Rational]) -> Result<Cone> {
        self.cell_index(cell)?;
        let f = self.minimal_face_over(&cell.witness, psi)?;
        Ok(self.dual_image(f).clone())
    }

    /// `F_{q,ψ}`: the unique face F with `q ∈ relint π(F)` and
    /// `ψ ∈ relint π∨N(F)`; it is the smallest face of P containing the
    /// ψ-maximal face of the fiber over q.
    pub fn minimal_face_over(&self, q: &[Rational], psi: &[Rational]) -> Result<Face> {
        self.check_point(q)?;
        self.check_covector(psi)?;
        let mut found = (0..self.faces.len())
            .filter(|&i| self.images[i].relint_contains(q) && self.dual_images[i].relint_contains(psi));
        let i = found.next().expect("every (q, psi) selects a face");
        debug_assert!(found.next().is_none());
        Ok(self.faces[i])
    }

    /// Cells whose closure contains a vertex of Q.
    pub fn lexicographic_cells(&self) -> Vec<usize> {
        let gamma = self.chamber_complex();
        (0..gamma.len())
            .filter(|&i| self.q.vertices().iter().any(|v| gamma.cells[i].polytope.contains(v)))
            .collect()
    }

    /// Chambers, joined when they share a cell of codimension one.
    pub fn chamber_adjacency(&self) -> Graph {
        let gamma = self.chamber_complex();
        let chambers = gamma.chambers();
        let walls: Vec<usize> = (0..gamma.len()).filter(|&i| gamma.cells[i].dim + 1 == gamma.full_dim).collect();
        let mut edges = Vec::new();
        for a in 0..chambers.len() {
            for b in a + 1..chambers.len() {
                if walls.iter().any(|&w| gamma.le(w, chambers[a]) && gamma.le(w, chambers[b])) {
                    edges.push((a, b));
                }
            }
        }
        let nodes = chambers.iter().map(|&c| format!("{:?}", format_vec(&gamma.cells[c].witness))).collect();
        Graph::new(nodes, edges)
    }

    /// Fiber `P ∩ π^{-1}(q)` as a polyhedron in V.
    pub fn fiber(&self, q: &[Rational]) -> Result<Polyhedron> {
        self.check_point(q)?;
        let eqs: Vec<(Vector, Rational)> =
            (0..self.pp.target_dim()).map(|r| (self.pp.forward().row(r).to_vec(), q[r].clone())).collect();
        let hull = self.polytope.hull();
        let mut all_eqs = hull.equations().to_vec();
        all_eqs.extend(eqs);
        Ok(Polyhedron::from_hrep(self.polytope.ambient_dim(), hull.facets(), &all_eqs).expect("q lies in Q"))
    }

    /// Faces of P meeting `relint` of the fiber-face set, for reports.
    pub fn face_set_images(&self, faces: &BTreeSet<Face>) -> Vec<&Polyhedron> {
        faces.iter().map(|f| self.image(*f)).collect()
    }
}

/// Serializable summary of a cell.
#[derive(Serialize)]
pub struct CellJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub defining_faces: Vec<Face>,
    pub witness: Vec<String>,
}

impl From<&Cell> for CellJson {
    fn from(c: &Cell) -> CellJson {
        CellJson {
            dim: c.dim,
            vertices: c.polytope.vertices().iter().map(|v| format_vec(v)).collect(),
            defining_faces: c.defining_faces.clone(),
            witness: format_vec(&c.witness),
        }
    }
}

/// Serializable summary of a cone.
#[derive(Serialize)]
pub struct ConeJson {
    pub dim: usize,
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
}

impl From<&Cone> for ConeJson {
    fn from(c: &Cone) -> ConeJson {
        ConeJson {
            dim: c.dim(),
            rays: c.rays().iter().map(|v| format_vec(v)).collect(),
            lineality: c.lineality_basis().iter().map(|v| format_vec(v)).collect(),
        }
    }
}
