//! Strings and costrings of a polytope projection, virtual cells and virtual
//! cones, and the transport between face and cone collections.
//!
//! Face collections are label sets of faces of P. Cone collections over the
//! normal fan are stored through the faces whose normal cones they contain,
//! so that `N(F) ⊆ N(F')` reads `F' ⊆ F`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::chamber::PolytopeProjection;
use crate::csp::{solve, Enumeration};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::Matrix;
use crate::poset::{check_anti_isomorphism, PosetReport};
use crate::polyhedron::{Cone, Polyhedron};
use crate::polytope::Face;
use crate::rational::{format_vec, Rational, Vector};
use crate::refine::{refine_closure, RefinedCell};

/// Where a collection came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    Coherent { witness: Vec<String> },
    LocallyCoherent,
    Transported,
    Candidate,
}

/// A set of faces of P. Equality ignores provenance.
#[derive(Clone, Debug, Serialize)]
pub struct FaceCollection {
    pub faces: BTreeSet<Face>,
    pub provenance: Provenance,
}

impl PartialEq for FaceCollection {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl Eq for FaceCollection {}

impl FaceCollection {
    pub fn candidate(faces: impl IntoIterator<Item = Face>) -> FaceCollection {
        FaceCollection { faces: faces.into_iter().collect(), provenance: Provenance::Candidate }
    }
}

/// A set of cones drawn from a host fan. Equality ignores provenance.
#[derive(Clone, Debug)]
pub struct ConeCollection {
    pub cones: BTreeSet<Cone>,
    pub provenance: Provenance,
}

impl PartialEq for ConeCollection {
    fn eq(&self, other: &Self) -> bool {
        self.cones == other.cones
    }
}

impl Eq for ConeCollection {}

/// Pass/fail with the first violated condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub reason: Option<String>,
}

impl Verdict {
    pub fn ok() -> Verdict {
        Verdict { pass: true, reason: None }
    }

    pub fn fail(reason: impl Into<String>) -> Verdict {
        Verdict { pass: false, reason: Some(reason.into()) }
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Verdict::fail(format!($($msg)+));
        }
    };
}

/// `relint a ⊆ relint b` for polytopes.
pub fn relint_within(a: &Polyhedron, b: &Polyhedron) -> bool {
    b.contains_polyhedron(a) && b.relint_contains(&a.relint_point())
}

/// `relint a ⊆ relint b` for cones.
pub fn relint_within_cone(a: &Cone, b: &Cone) -> bool {
    b.contains_cone(a) && b.relint_contains(&a.relint_point())
}

/// `∪A ⊆ ∪B` for collections of faces of one polytope.
pub fn face_union_le(a: &BTreeSet<Face>, b: &BTreeSet<Face>) -> bool {
    a.iter().all(|f| b.iter().any(|g| f.is_subset(*g)))
}

/// `∪N(A) ⊆ ∪N(B)` for collections of normal cones, given by their faces.
pub fn normal_union_le(a: &BTreeSet<Face>, b: &BTreeSet<Face>) -> bool {
    a.iter().all(|f| b.iter().any(|g| g.is_subset(*f)))
}

/// Faces of a face-collection that are minimal under inclusion.
fn minimal_faces(set: &BTreeSet<Face>) -> Vec<Face> {
    set.iter().copied().filter(|f| !set.iter().any(|g| g != f && g.is_subset(*f))).collect()
}

fn pair_face_to_face(a: &Polyhedron, b: &Polyhedron) -> bool {
    match a.intersect(b) {
        None => true,
        Some(m) => m.is_face_of(a) && m.is_face_of(b),
    }
}

fn cone_face_to_face(a: &Cone, b: &Cone) -> bool {
    let m = a.intersect(b).expect("same ambient space");
    m.is_face_of(a).expect("same ambient") && m.is_face_of(b).expect("same ambient")
}

impl PolytopeProjection {
    /// Faces F with `ψ ∈ relint π∨N(F)`; these are exactly the faces
    /// `F_{c,ψ}` over all cells c.
    fn selected_by(&self, psi: &[Rational]) -> BTreeSet<Face> {
        self.faces().iter().copied().filter(|&f| self.dual_image(f).relint_contains(psi)).collect()
    }

    /// `{v ∈ F : π(v) ∈ G}`, the face of F over a face G of `π(F)`.
    fn face_over(&self, f: Face, g: &Polyhedron) -> Face {
        Face::from_labels(f.labels().into_iter().filter(|&v| g.contains(&self.projection().apply(self.polytope().vertex(v)))))
    }

    /// `F(ψ) = {F_{c,ψ} : c ∈ Γ}`.
    pub fn coherent_string(&self, psi: &[Rational]) -> Result<FaceCollection> {
        if psi.len() != self.projection().kernel_dim() {
            return Err(Error::DimMismatch { expected: self.projection().kernel_dim(), got: psi.len() });
        }
        Ok(FaceCollection { faces: self.selected_by(psi), provenance: Provenance::Coherent { witness: format_vec(psi) } })
    }

    /// Checks that the images of `faces` subdivide Q without repetition
    /// (distinct, face-to-face, closed under faces, covering Q) and that
    /// `π(F) ⊆ π(F')` forces `F = F' ∩ π^{-1}(π(F))`.
    pub fn validate_string_subdivision(&self, faces: &BTreeSet<Face>) -> Verdict {
        ensure!(!faces.is_empty(), "empty collection");
        for f in faces {
            ensure!(self.face_index(*f).is_some(), "{f:?} is not a face");
        }
        let list: Vec<Face> = faces.iter().copied().collect();
        let images: Vec<&Polyhedron> = list.iter().map(|f| self.image(*f)).collect();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                ensure!(images[i] != images[j], "{:?} and {:?} have the same image", list[i], list[j]);
                ensure!(
                    pair_face_to_face(images[i], images[j]),
                    "images of {:?} and {:?} do not meet in a common face",
                    list[i],
                    list[j]
                );
            }
        }
        let image_set: BTreeSet<&Polyhedron> = images.iter().copied().collect();
        for (f, img) in list.iter().zip(&images) {
            for g in img.faces() {
                ensure!(image_set.contains(&g), "a face of the image of {f:?} is not an image");
            }
        }
        let gamma = self.chamber_complex();
        for c in gamma.chambers() {
            let w = &gamma.cells()[c].witness;
            ensure!(images.iter().any(|img| img.contains(w)), "chamber {} is not covered", c);
        }
        for i in 0..list.len() {
            for j in 0..list.len() {
                if i != j && images[j].contains_polyhedron(images[i]) {
                    ensure!(
                        self.face_over(list[j], images[i]) == list[i],
                        "{:?} is not the part of {:?} over its image",
                        list[i],
                        list[j]
                    );
                }
            }
        }
        Verdict::ok()
    }

    pub fn is_locally_coherent_string(&self, faces: &BTreeSet<Face>) -> bool {
        self.validate_string_subdivision(faces).pass
    }

    /// No member drops dimension under π.
    pub fn is_tight_string(&self, faces: &BTreeSet<Face>) -> bool {
        faces.iter().all(|f| self.lattice().dim_of(*f) == Some(self.image(*f).dim() as isize))
    }

    /// All locally coherent strings. Each is determined by the faces chosen
    /// over the chambers; lower cells take the part of a chosen face over
    /// the face of its image that contains them.
    pub fn enumerate_locally_coherent_strings(&self, cap: usize) -> Enumeration<FaceCollection> {
        let gamma = self.chamber_complex();
        let chambers = gamma.chambers();
        let below: Vec<Vec<usize>> =
            chambers.iter().map(|&c| (0..gamma.len()).filter(|&l| gamma.le(l, c)).collect()).collect();
        let derived = |f: Face, cell: usize| -> Face {
            let g = self.image(f).face_containing(&gamma.cells()[cell].witness);
            self.face_over(f, &g)
        };
        let faces = self.faces();
        let domains: Vec<Vec<usize>> = chambers
            .iter()
            .map(|&c| {
                (0..faces.len()).filter(|&i| self.image(faces[i]).relint_contains(&gamma.cells()[c].witness)).collect()
            })
            .collect();
        let mut pairs = Vec::new();
        for a in 0..chambers.len() {
            for b in a + 1..chambers.len() {
                pairs.push((a, b));
            }
        }
        let found = solve(&domains, &pairs, cap, |a, fa, b, fb| {
            if fa == fb {
                return true;
            }
            let (ia, ib) = (self.image(faces[fa]), self.image(faces[fb]));
            if ia == ib || !pair_face_to_face(ia, ib) {
                return false;
            }
            below[a]
                .iter()
                .filter(|l| below[b].contains(l))
                .all(|&l| derived(faces[fa], l) == derived(faces[fb], l))
        });
        let candidates: BTreeSet<BTreeSet<Face>> = found
            .items
            .iter()
            .map(|sol| {
                let mut set = BTreeSet::new();
                for (k, &fi) in sol.iter().enumerate() {
                    for &l in &below[k] {
                        set.insert(derived(faces[fi], l));
                    }
                }
                set
            })
            .collect();
        let candidates: Vec<BTreeSet<Face>> = candidates.into_iter().collect();
        let items: Vec<FaceCollection> = candidates
            .into_par_iter()
            .filter(|s| self.is_locally_coherent_string(s))
            .map(|faces| FaceCollection { faces, provenance: Provenance::LocallyCoherent })
            .collect();
        Enumeration { items, truncated: found.truncated, nodes: found.nodes }
    }

    /// `Δ(c)` as the faces `F_{c,ψ}` over all Γ*-witnesses ψ.
    pub fn coherent_costring_faces(&self, cell: usize) -> BTreeSet<Face> {
        let gamma = self.chamber_complex();
        let q = &gamma.cells()[cell].witness;
        self.fiber_fan()
            .cones()
            .iter()
            .map(|s| self.minimal_face_over(q, &s.witness).expect("witness lies in Q"))
            .collect()
    }

    /// `Δ(c) = {N(P, F_{c,ψ})}` for the cell with index `cell` in Γ.
    pub fn coherent_costring(&self, cell: usize) -> ConeCollection {
        let w = format_vec(&self.chamber_complex().cells()[cell].witness);
        self.transport_faces(&self.coherent_costring_faces(cell), Provenance::Coherent { witness: w })
    }

    /// `F ↦ N(P, F)`.
    pub fn transport_faces(&self, faces: &BTreeSet<Face>, provenance: Provenance) -> ConeCollection {
        ConeCollection { cones: faces.iter().map(|f| self.normal_cone(*f).clone()).collect(), provenance }
    }

    /// `N(P, F) ↦ F`; fails with `ConeNotInHost` on a cone outside Δ(P).
    pub fn transport_cones(&self, cones: &BTreeSet<Cone>) -> Result<FaceCollection> {
        let faces = cones
            .iter()
            .map(|c| self.face_of_normal_cone(c).ok_or(Error::ConeNotInHost))
            .collect::<Result<BTreeSet<Face>>>()?;
        Ok(FaceCollection { faces, provenance: Provenance::Transported })
    }
}

/// Per-instance data for virtual cell and virtual cone checks:
/// every coherent string (one per Γ*-cone) and every coherent costring (one
/// per Γ-cell), both as face sets.
pub struct Duality<'a> {
    pp: &'a PolytopeProjection,
    strings: Vec<BTreeSet<Face>>,
    costrings: Vec<BTreeSet<Face>>,
    costring_context: CostringContext,
}

impl<'a> Duality<'a> {
    pub fn new(pp: &'a PolytopeProjection) -> Duality<'a> {
        let strings = pp.fiber_fan().cones().iter().map(|s| pp.selected_by(&s.witness)).collect();
        let costrings = (0..pp.chamber_complex().len()).map(|c| pp.coherent_costring_faces(c)).collect();
        Duality { pp, strings, costrings, costring_context: CostringContext::for_projection(pp) }
    }

    pub fn projection(&self) -> &PolytopeProjection {
        self.pp
    }

    /// Coherent strings indexed like the cones of Γ*.
    pub fn coherent_strings(&self) -> &[BTreeSet<Face>] {
        &self.strings
    }

    /// Coherent costrings (as faces) indexed like the cells of Γ.
    pub fn coherent_costrings(&self) -> &[BTreeSet<Face>] {
        &self.costrings
    }

    pub fn costring_context(&self) -> &CostringContext {
        &self.costring_context
    }

    /// For each coherent string, the unique minimal face it shares with
    /// `faces`, or `None` if some intersection is empty or has two minima.
    fn minima_per_string(&self, faces: &BTreeSet<Face>) -> Option<Vec<Face>> {
        self.strings
            .iter()
            .map(|s| {
                let common: BTreeSet<Face> = s.intersection(faces).copied().collect();
                match minimal_faces(&common).as_slice() {
                    [m] => Some(*m),
                    _ => None,
                }
            })
            .collect()
    }

    fn minima_per_costring(&self, faces: &BTreeSet<Face>) -> Option<Vec<Face>> {
        self.costrings
            .iter()
            .map(|s| {
                let common: BTreeSet<Face> = s.intersection(faces).copied().collect();
                match minimal_faces(&common).as_slice() {
                    [m] => Some(*m),
                    _ => None,
                }
            })
            .collect()
    }

    /// The literal test: `faces` meets every coherent string in a nonempty
    /// set with exactly one minimal element.
    pub fn meets_every_coherent_string_once(&self, faces: &BTreeSet<Face>) -> bool {
        self.minima_per_string(faces).is_some()
    }

    /// The literal test on the cone side: every coherent costring meets the
    /// collection in a nonempty set with exactly one maximal cone.
    pub fn meets_every_coherent_costring_once(&self, faces: &BTreeSet<Face>) -> bool {
        self.minima_per_costring(faces).is_some()
    }

    /// A face collection is a virtual cell when the selected minima `m(σ)`
    /// exhaust it and satisfy `relint π(m(σ)) ⊆ relint π(m(σ'))` for `σ' ≤ σ`.
    pub fn is_virtual_cell(&self, faces: &BTreeSet<Face>) -> bool {
        let Some(m) = self.minima_per_string(faces) else {
            return false;
        };
        if m.iter().copied().collect::<BTreeSet<Face>>() != *faces {
            return false;
        }
        let gs = self.pp.fiber_fan();
        (0..gs.len()).all(|s| {
            (0..gs.len()).all(|t| !(t != s && gs.le(t, s)) || relint_within(self.pp.image(m[s]), self.pp.image(m[t])))
        })
    }

    /// A cone collection (given by its faces) is a virtual cone when the
    /// selected maximal cones `M(c)` exhaust it and satisfy
    /// `relint π∨M(c) ⊆ relint π∨M(c')` for `c' ≤ c`.
    pub fn is_virtual_cone(&self, faces: &BTreeSet<Face>) -> bool {
        let Some(m) = self.minima_per_costring(faces) else {
            return false;
        };
        if m.iter().copied().collect::<BTreeSet<Face>>() != *faces {
            return false;
        }
        let gamma = self.pp.chamber_complex();
        (0..gamma.len()).all(|c| {
            (0..gamma.len()).all(|d| {
                !(d != c && gamma.le(d, c)) || relint_within_cone(self.pp.dual_image(m[c]), self.pp.dual_image(m[d]))
            })
        })
    }

    /// `is_virtual_cone` on cones of Δ(P).
    pub fn is_virtual_cone_of_cones(&self, cones: &BTreeSet<Cone>) -> Result<bool> {
        Ok(self.is_virtual_cone(&self.pp.transport_cones(cones)?.faces))
    }

    pub fn enumerate_virtual_cells(&self, cap: usize) -> Enumeration<BTreeSet<Face>> {
        let gs = self.pp.fiber_fan();
        let domains: Vec<Vec<Face>> = self.strings.iter().map(|s| s.iter().copied().collect()).collect();
        let idx: Vec<Vec<usize>> = domains.iter().map(|d| (0..d.len()).collect()).collect();
        let mut pairs = Vec::new();
        for s in 0..gs.len() {
            for t in 0..gs.len() {
                if s != t && gs.le(t, s) {
                    pairs.push((s, t));
                }
            }
        }
        let pp = self.pp;
        let found = solve(&idx, &pairs, cap, |u, a, v, b| {
            let (fu, fv) = (domains[u][a], domains[v][b]);
            // σ_t ≤ σ_s ⇒ relint π(m(s)) ⊆ relint π(m(t)).
            let (big, small) = if gs.le(v, u) { (fu, fv) } else { (fv, fu) };
            relint_within(pp.image(big), pp.image(small))
        });
        self.finish(found, &domains, |f| self.is_virtual_cell(f))
    }

    pub fn enumerate_virtual_cones(&self, cap: usize) -> Enumeration<BTreeSet<Face>> {
        let gamma = self.pp.chamber_complex();
        let domains: Vec<Vec<Face>> = self.costrings.iter().map(|s| s.iter().copied().collect()).collect();
        let idx: Vec<Vec<usize>> = domains.iter().map(|d| (0..d.len()).collect()).collect();
        let mut pairs = Vec::new();
        for c in 0..gamma.len() {
            for d in 0..gamma.len() {
                if c != d && gamma.le(d, c) {
                    pairs.push((c, d));
                }
            }
        }
        let pp = self.pp;
        let found = solve(&idx, &pairs, cap, |u, a, v, b| {
            let (fu, fv) = (domains[u][a], domains[v][b]);
            let (big, small) = if gamma.le(v, u) { (fu, fv) } else { (fv, fu) };
            relint_within_cone(pp.dual_image(big), pp.dual_image(small))
        });
        self.finish(found, &domains, |f| self.is_virtual_cone(f))
    }

    fn finish(
        &self,
        found: Enumeration<Vec<usize>>,
        domains: &[Vec<Face>],
        keep: impl Fn(&BTreeSet<Face>) -> bool + Sync,
    ) -> Enumeration<BTreeSet<Face>> {
        let sets: BTreeSet<BTreeSet<Face>> = found
            .items
            .iter()
            .map(|sol| sol.iter().enumerate().map(|(v, &a)| domains[v][a]).collect())
            .collect();
        let sets: Vec<BTreeSet<Face>> = sets.into_iter().collect();
        let items = sets.into_par_iter().filter(|s| keep(s)).collect();
        Enumeration { items, truncated: found.truncated, nodes: found.nodes }
    }

    /// Locally coherent costrings of Δ(P), as face sets.
    pub fn enumerate_locally_coherent_costrings(&self, cap: usize) -> Enumeration<BTreeSet<Face>> {
        let faces = self.pp.faces();
        self.costring_context
            .enumerate(cap)
            .map(|idx| idx.into_iter().map(|i| faces[i]).collect())
    }

    pub fn is_locally_coherent_costring(&self, faces: &BTreeSet<Face>) -> bool {
        let idx: Vec<usize> = faces.iter().map(|f| self.pp.face_index(*f).expect("face of P")).collect();
        self.costring_context.check_indices(&idx).pass
    }

    /// No member drops dimension under π∨.
    pub fn is_tight_costring(&self, faces: &BTreeSet<Face>) -> bool {
        faces.iter().all(|f| self.pp.normal_cone(*f).dim() == self.pp.dual_image(*f).dim())
    }

    /// `σ ↦ F(σ)` reverses Γ* onto the coherent
    /// strings and `c ↦ Δ(c)` reverses Γ onto the coherent costrings.
    pub fn coherent_anti_isomorphisms(&self) -> (PosetReport, PosetReport) {
        let gs = self.pp.fiber_fan();
        let distinct_strings: Vec<&BTreeSet<Face>> = self.strings.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let map: Vec<Option<usize>> =
            self.strings.iter().map(|s| distinct_strings.iter().position(|t| *t == s)).collect();
        let strings_report = check_anti_isomorphism(
            "fiber-fan cone -> coherent string",
            gs.len(),
            |a, b| gs.le(a, b),
            distinct_strings.len(),
            |a, b| face_union_le(distinct_strings[a], distinct_strings[b]),
            &map,
        );
        let gamma = self.pp.chamber_complex();
        let distinct: Vec<&BTreeSet<Face>> = self.costrings.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let map: Vec<Option<usize>> = self.costrings.iter().map(|s| distinct.iter().position(|t| *t == s)).collect();
        let costrings_report = check_anti_isomorphism(
            "cell -> coherent costring",
            gamma.len(),
            |a, b| gamma.le(a, b),
            distinct.len(),
            |a, b| normal_union_le(distinct[a], distinct[b]),
            &map,
        );
        (strings_report, costrings_report)
    }

    /// Order on virtual cells induced by their defining maps `Γ* → Q`:
    /// `a ≤ b` iff `m_a(σ) ⊆ m_b(σ)` for every cone σ of Γ*. For strings the
    /// analogous pointwise order coincides with union inclusion.
    pub fn virtual_cell_le(&self, a: &BTreeSet<Face>, b: &BTreeSet<Face>) -> bool {
        match (self.minima_per_string(a), self.minima_per_string(b)) {
            (Some(ma), Some(mb)) => ma.iter().zip(&mb).all(|(x, y)| x.is_subset(*y)),
            _ => false,
        }
    }

    /// Order on virtual cones induced by their defining maps `Γ → (ker π)*`:
    /// `a ≤ b` iff `M_a(c) ⊆ M_b(c)` as cones for every cell c.
    pub fn virtual_cone_le(&self, a: &BTreeSet<Face>, b: &BTreeSet<Face>) -> bool {
        match (self.minima_per_costring(a), self.minima_per_costring(b)) {
            (Some(ma), Some(mb)) => ma.iter().zip(&mb).all(|(x, y)| y.is_subset(*x)),
            _ => false,
        }
    }

    /// Checked on fully enumerated posets: the transport of the locally
    /// coherent strings is the set of virtual cones and the transport of the
    /// locally coherent costrings is the set of virtual cells, both
    /// order-reversing.
    pub fn virtual_duality(&self, cap: usize) -> Result<VirtualDualityReport> {
        let t: Vec<BTreeSet<Face>> = self
            .pp
            .enumerate_locally_coherent_strings(cap)
            .complete(cap)?
            .into_iter()
            .map(|c| c.faces)
            .collect();
        let t_star = self.enumerate_locally_coherent_costrings(cap).complete(cap)?;
        let vcones = self.enumerate_virtual_cones(cap).complete(cap)?;
        let vcells = self.enumerate_virtual_cells(cap).complete(cap)?;
        let strings_to_cones = check_anti_isomorphism(
            "locally coherent string -> virtual cone",
            t.len(),
            |a, b| face_union_le(&t[a], &t[b]),
            vcones.len(),
            |a, b| self.virtual_cone_le(&vcones[a], &vcones[b]),
            &t.iter().map(|x| vcones.iter().position(|y| y == x)).collect::<Vec<_>>(),
        );
        let costrings_to_cells = check_anti_isomorphism(
            "locally coherent costring -> virtual cell",
            t_star.len(),
            |a, b| normal_union_le(&t_star[a], &t_star[b]),
            vcells.len(),
            |a, b| self.virtual_cell_le(&vcells[a], &vcells[b]),
            &t_star.iter().map(|x| vcells.iter().position(|y| y == x)).collect::<Vec<_>>(),
        );
        Ok(VirtualDualityReport {
            strings: t.len(),
            costrings: t_star.len(),
            virtual_cells: vcells.len(),
            virtual_cones: vcones.len(),
            strings_to_cones,
            costrings_to_cells,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VirtualDualityReport {
    pub strings: usize,
    pub costrings: usize,
    pub virtual_cells: usize,
    pub virtual_cones: usize,
    pub strings_to_cones: PosetReport,
    pub costrings_to_cells: PosetReport,
}

impl VirtualDualityReport {
    pub fn passed(&self) -> bool {
        self.strings_to_cones.passed() && self.costrings_to_cells.passed()
    }
}

/// A host fan `Δ0` in `V*` with a linear map `π∨: V* → W`, and the common
/// refinement of the images of its cones.
#[derive(Clone, Debug)]
pub struct CostringContext {
    host: Vec<Cone>,
    index: HashMap<Cone, usize>,
    dual: Matrix,
    images: Vec<Cone>,
    cells: Vec<RefinedCell<Cone>>,
    maximal: Vec<usize>,
    /// `below[k]`: cells contained in the maximal cell `maximal[k]`.
    below: Vec<Vec<usize>>,
}

impl CostringContext {
    /// The host is closed under faces before use.
    pub fn new(host: &Fan, dual: Matrix) -> Result<CostringContext> {
        if dual.cols() != host.ambient_dim() {
            return Err(Error::DimMismatch { expected: host.ambient_dim(), got: dual.cols() });
        }
        let closed = Fan::with_faces(host.ambient_dim(), host.cones().to_vec());
        let host: Vec<Cone> = closed.cones().to_vec();
        let images: Vec<Cone> = host.iter().map(|c| c.image(&dual)).collect::<Result<_>>()?;
        let cells = refine_closure(&images, dual.rows());
        Ok(CostringContext::assemble(host, dual, images, cells))
    }

    /// Host = Δ(P) indexed like `pp.faces()`, refinement = Γ*.
    pub fn for_projection(pp: &PolytopeProjection) -> CostringContext {
        let host: Vec<Cone> = pp.faces().iter().map(|f| pp.normal_cone(*f).clone()).collect();
        let images: Vec<Cone> = pp.faces().iter().map(|f| pp.dual_image(*f).clone()).collect();
        let cells = pp
            .fiber_fan()
            .cones()
            .iter()
            .map(|s| {
                let mut members: Vec<usize> = s.members.iter().map(|f| pp.face_index(*f).expect("face")).collect();
                members.sort_unstable();
                RefinedCell { region: s.cone.clone(), members, witness: s.witness.clone() }
            })
            .collect();
        CostringContext::assemble(host, pp.projection().dual().clone(), images, cells)
    }

    fn assemble(host: Vec<Cone>, dual: Matrix, images: Vec<Cone>, cells: Vec<RefinedCell<Cone>>) -> CostringContext {
        let index = host.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let le = |a: usize, b: usize| cells[a].members.iter().all(|m| cells[b].members.binary_search(m).is_ok());
        // Cell a ⊆ cell b iff every member containing b contains a.
        let contained = |a: usize, b: usize| le(b, a);
        let maximal: Vec<usize> =
            (0..cells.len()).filter(|&a| !(0..cells.len()).any(|b| b != a && contained(a, b) && !contained(b, a))).collect();
        let below = maximal.iter().map(|&k| (0..cells.len()).filter(|&l| contained(l, k)).collect()).collect();
        CostringContext { host, index, dual, images, cells, maximal, below }
    }

    pub fn host(&self) -> &[Cone] {
        &self.host
    }

    pub fn dual(&self) -> &Matrix {
        &self.dual
    }

    pub fn image(&self, i: usize) -> &Cone {
        &self.images[i]
    }

    pub fn host_index(&self, c: &Cone) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Refinement of the host images.
    pub fn cells(&self) -> &[RefinedCell<Cone>] {
        &self.cells
    }

    pub fn indices_of(&self, cones: &[Cone]) -> Result<Vec<usize>> {
        let mut idx = cones.iter().map(|c| self.host_index(c).ok_or(Error::ConeNotInHost)).collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    pub fn check(&self, cones: &[Cone]) -> Result<Verdict> {
        Ok(self.check_indices(&self.indices_of(cones)?))
    }

    /// `σ' ∩ (π∨)^{-1}(G)` for a face G of `π∨σ'`.
    fn part_over(&self, sigma: usize, g: &Cone) -> Cone {
        let s = &self.host[sigma];
        let rays: Vec<Vector> = s.rays().iter().filter(|r| g.contains(&self.dual.mul_vec(r))).cloned().collect();
        Cone::from_generators(s.ambient_dim(), &rays, s.lineality_basis())
    }

    /// The images of the members are distinct, meet pairwise in common
    /// faces, are closed under faces and cover the image of the host; and
    /// `π∨σ ⊆ π∨σ'` forces `σ = (π∨)^{-1}(π∨σ) ∩ σ'`.
    pub fn check_indices(&self, idx: &[usize]) -> Verdict {
        ensure!(!idx.is_empty(), "empty collection");
        let imgs: Vec<&Cone> = idx.iter().map(|&i| &self.images[i]).collect();
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                ensure!(imgs[a] != imgs[b], "cones {} and {} have the same image", idx[a], idx[b]);
                ensure!(cone_face_to_face(imgs[a], imgs[b]), "images of cones {} and {} overlap", idx[a], idx[b]);
            }
        }
        let set: BTreeSet<&Cone> = imgs.iter().copied().collect();
        for (a, img) in imgs.iter().enumerate() {
            for f in img.faces() {
                ensure!(set.contains(&f), "a face of the image of cone {} is not an image", idx[a]);
            }
        }
        for &k in &self.maximal {
            let w = &self.cells[k].witness;
            ensure!(imgs.iter().any(|img| img.contains(w)), "the images miss part of the support");
        }
        for a in 0..idx.len() {
            for b in 0..idx.len() {
                if a != b && imgs[b].contains_cone(imgs[a]) {
                    ensure!(
                        self.part_over(idx[b], imgs[a]) == self.host[idx[a]],
                        "cone {} is not the part of cone {} over its image",
                        idx[a],
                        idx[b]
                    );
                }
            }
        }
        Verdict::ok()
    }

    /// No member drops dimension under π∨.
    pub fn is_tight(&self, idx: &[usize]) -> bool {
        idx.iter().all(|&i| self.host[i].dim() == self.images[i].dim())
    }

    /// `∪A ⊆ ∪B` for host-index collections.
    pub fn union_le(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|&x| b.iter().any(|&y| self.host[y].contains_cone(&self.host[x])))
    }

    /// All locally coherent costrings, as sorted host-index sets. Each is
    /// determined by the cones chosen over the maximal refinement cells.
    pub fn enumerate(&self, cap: usize) -> Enumeration<Vec<usize>> {
        let derived = |sigma: usize, cell: usize| -> Option<usize> {
            let g = self.images[sigma].face_containing(&self.cells[cell].witness);
            self.host_index(&self.part_over(sigma, &g))
        };
        let domains: Vec<Vec<usize>> = self
            .maximal
            .iter()
            .enumerate()
            .map(|(k, &cell)| {
                (0..self.host.len())
                    .filter(|&i| self.images[i].relint_contains(&self.cells[cell].witness))
                    .filter(|&i| self.below[k].iter().all(|&l| derived(i, l).is_some()))
                    .collect()
            })
            .collect();
        let mut pairs = Vec::new();
        for a in 0..self.maximal.len() {
            for b in a + 1..self.maximal.len() {
                pairs.push((a, b));
            }
        }
        let found = solve(&domains, &pairs, cap, |a, sa, b, sb| {
            if sa == sb {
                return true;
            }
            let (ia, ib) = (&self.images[sa], &self.images[sb]);
            if ia == ib || !cone_face_to_face(ia, ib) {
                return false;
            }
            self.below[a].iter().filter(|l| self.below[b].contains(l)).all(|&l| derived(sa, l) == derived(sb, l))
        });
        let candidates: BTreeSet<Vec<usize>> = found
            .items
            .iter()
            .map(|sol| {
                let set: BTreeSet<usize> = sol
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &s)| self.below[k].iter().map(move |&l| (s, l)))
                    .map(|(s, l)| derived(s, l).expect("filtered domain"))
                    .collect();
                set.into_iter().collect()
            })
            .collect();
        let candidates: Vec<Vec<usize>> = candidates.into_iter().collect();
        let items = candidates.into_par_iter().filter(|c| self.check_indices(c).pass).collect();
        Enumeration { items, truncated: found.truncated, nodes: found.nodes }
    }

    /// The image fan `π∨(Δ)` of a collection.
    pub fn image_fan(&self, idx: &[usize]) -> Fan {
        Fan::new(self.dual.rows(), idx.iter().map(|&i| self.images[i].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::polytope::Polytope;
    use crate::projection::make_projection;
    use crate::rational::{frac, int, ivec};

    fn sq() -> PolytopeProjection {
        let p = Polytope::from_i64(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap();
        PolytopeProjection::new(p, make_projection(Matrix::from_i64(&[&[1, 0]])).unwrap()).unwrap()
    }

    fn f(labels: &[usize]) -> Face {
        Face::from_labels(labels.iter().copied())
    }

    fn set(faces: &[&[usize]]) -> BTreeSet<Face> {
        faces.iter().map(|l| f(l)).collect()
    }

    #[test]
    fn square_coherent_strings() {
        let s = sq();
        assert_eq!(s.coherent_string(&ivec(&[1])).unwrap().faces, set(&[&[2, 3], &[3], &[2]]));
        assert_eq!(s.coherent_string(&ivec(&[0])).unwrap().faces, set(&[&[0, 1, 2, 3], &[0, 3], &[1, 2]]));
        // Oracle: per-cell selection through the fiber.
        for psi in [ivec(&[1]), ivec(&[-1]), ivec(&[0])] {
            let per_cell: BTreeSet<Face> = s
                .chamber_complex()
                .cells()
                .iter()
                .map(|c| s.minimal_face_over(&c.witness, &psi).unwrap())
                .collect();
            assert_eq!(s.coherent_string(&psi).unwrap().faces, per_cell);
        }
    }

    #[test]
    fn square_string_checks() {
        let s = sq();
        let up = s.coherent_string(&ivec(&[1])).unwrap().faces;
        assert!(s.is_locally_coherent_string(&up));
        assert!(s.is_tight_string(&up));
        let flat = s.coherent_string(&ivec(&[0])).unwrap().faces;
        assert!(s.is_locally_coherent_string(&flat));
        assert!(!s.is_tight_string(&flat));
        assert!(!s.validate_string_subdivision(&set(&[&[2, 3]])).pass);
        assert!(!s.is_locally_coherent_string(&set(&[&[2, 3], &[0, 1], &[2], &[3]])));
        let e = s.enumerate_locally_coherent_strings(1000);
        assert_eq!(e.items.len(), 3);
        assert!(!e.truncated);
    }

    #[test]
    fn square_costrings() {
        let s = sq();
        let gamma = s.chamber_complex();
        let chamber = gamma.chambers()[0];
        assert_eq!(s.coherent_costring_faces(chamber), set(&[&[2, 3], &[0, 1], &[0, 1, 2, 3]]));
        let left = gamma.index_of(&s.cell_of(&[int(0)]).unwrap().defining_faces).unwrap();
        assert_eq!(s.coherent_costring_faces(left), set(&[&[3], &[0], &[0, 3]]));
        let d = Duality::new(&s);
        assert!(d.is_tight_costring(&d.coherent_costrings()[chamber]));
        assert!(!d.is_tight_costring(&d.coherent_costrings()[left]));
        for c in d.coherent_costrings() {
            assert!(d.is_locally_coherent_costring(c));
        }
        assert_eq!(d.enumerate_locally_coherent_costrings(1000).items.len(), 3);
        let cc = s.coherent_costring(chamber);
        assert_eq!(s.transport_cones(&cc.cones).unwrap().faces, set(&[&[2, 3], &[0, 1], &[0, 1, 2, 3]]));
    }

    #[test]
    fn square_virtual_objects() {
        let s = sq();
        let d = Duality::new(&s);
        let chamber = s.chamber_complex().chambers()[0];
        assert!(d.is_virtual_cell(&d.coherent_costrings()[chamber]));
        assert!(!d.is_virtual_cell(&BTreeSet::new()));
        // Passes the literal test only.
        let odd = set(&[&[2, 3], &[0, 1], &[1, 2]]);
        assert!(d.meets_every_coherent_string_once(&odd));
        assert!(!d.is_virtual_cell(&odd));
        let up = s.coherent_string(&ivec(&[1])).unwrap().faces;
        assert!(d.is_virtual_cone(&up));
        let all: BTreeSet<Face> = s.faces().iter().copied().collect();
        assert!(!d.is_virtual_cone(&all));
        assert_eq!(d.enumerate_virtual_cells(1000).items.len(), 3);
        assert_eq!(d.enumerate_virtual_cones(1000).items.len(), 3);
    }

    #[test]
    fn square_dualities() {
        let s = sq();
        let d = Duality::new(&s);
        let (a, b) = d.coherent_anti_isomorphisms();
        assert!(a.passed(), "{a:?}");
        assert!(b.passed(), "{b:?}");
        let r = d.virtual_duality(10_000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!((r.strings, r.costrings, r.virtual_cells, r.virtual_cones), (3, 3, 3, 3));
    }

    #[test]
    fn collapsed_triangle_has_three_strings() {
        let p = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let s = PolytopeProjection::new(p, make_projection(Matrix::from_i64(&[&[1, 0]])).unwrap()).unwrap();
        assert_eq!(s.enumerate_locally_coherent_strings(1000).items.len(), 3);
        let _ = frac(1, 2);
    }

    fn c2fan() -> CostringContext {
        let host = Fan::with_faces(2, vec![Cone::from_i64_rays(&[&[1, 0], &[0, 1]])]);
        CostringContext::new(&host, Matrix::from_i64(&[&[1, 0]])).unwrap()
    }

    #[test]
    fn c2fan_costrings() {
        let ctx = c2fan();
        let e1 = Cone::from_i64_rays(&[&[1, 0]]);
        let e2 = Cone::from_i64_rays(&[&[0, 1]]);
        let both = Cone::from_i64_rays(&[&[1, 0], &[0, 1]]);
        assert!(ctx.check(&[both.clone(), e2.clone()]).unwrap().pass);
        assert!(!ctx.check(&[e1.clone(), e2.clone()]).unwrap().pass);
        assert!(ctx.check(&[e1.clone(), Cone::zero(2)]).unwrap().pass);
        let all: Vec<Cone> = both.faces();
        assert!(!ctx.check(&all).unwrap().pass);
        assert_eq!(ctx.check(&[Cone::from_i64_rays(&[&[1, 1]])]), Err(Error::ConeNotInHost));
        let found: Vec<BTreeSet<Cone>> = ctx
            .enumerate(1000)
            .items
            .iter()
            .map(|idx| idx.iter().map(|&i| ctx.host()[i].clone()).collect())
            .collect();
        let expected: Vec<BTreeSet<Cone>> = vec![[both, e2].into_iter().collect(), [e1, Cone::zero(2)].into_iter().collect()];
        assert_eq!(found.len(), 2);
        for e in &expected {
            assert!(found.contains(e));
        }
    }

    #[test]
    fn zero_host_has_one_costring() {
        let host = Fan::new(1, vec![Cone::zero(1)]);
        let ctx = CostringContext::new(&host, Matrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(ctx.enumerate(10).items, vec![vec![0]]);
    }

    #[test]
    fn pentagon_duality() {
        let s = crate::chamber::tests::pent();
        let strings = s.enumerate_locally_coherent_strings(100_000);
        assert!(!strings.truncated);
        assert_eq!(strings.items.len(), 11);
        let minimal: Vec<&FaceCollection> = strings
            .items
            .iter()
            .filter(|a| !strings.items.iter().any(|b| b != *a && face_union_le(&b.faces, &a.faces)))
            .collect();
        assert_eq!(minimal.len(), 5);
        assert!(minimal.iter().all(|m| s.is_tight_string(&m.faces)));
        let d = Duality::new(&s);
        let (a, b) = d.coherent_anti_isomorphisms();
        assert!(a.passed() && b.passed());
        let r = d.virtual_duality(1_000_000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.strings, 11);
        assert_eq!(r.virtual_cones, 11);
        assert_eq!(r.costrings, r.virtual_cells);
        assert!(r.costrings >= 41);
    }
}
