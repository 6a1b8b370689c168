//! Finite collections of cones and their common refinements.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::polyhedron::{Cone, Polyhedron};
use num::Zero;

use crate::rational::{dot, Rational};
use crate::refine::refine_closure;

/// A finite set of cones in a common ambient space, sorted by canonical key.
/// Cones may carry lineality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(ambient: usize, cones: Vec<Cone>) -> Fan {
        let set: BTreeSet<Cone> = cones.into_iter().collect();
        Fan { ambient, cones: set.into_iter().collect() }
    }

    /// The smallest collection containing `cones` that is closed under faces.
    pub fn with_faces(ambient: usize, cones: Vec<Cone>) -> Fan {
        let mut set: BTreeSet<Cone> = BTreeSet::new();
        for c in cones {
            set.extend(c.faces());
        }
        Fan { ambient, cones: set.into_iter().collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains(&self, c: &Cone) -> bool {
        self.cones.binary_search(c).is_ok()
    }

    pub fn position(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn is_closed_under_faces(&self) -> bool {
        self.cones.iter().all(|c| c.faces().iter().all(|f| self.contains(f)))
    }

    /// First pair of members whose intersection is not a face of both.
    pub fn face_to_face_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                let m = self.cones[i].intersect(&self.cones[j]).expect("same ambient space");
                if !m.is_face_of(&self.cones[i]).unwrap() || !m.is_face_of(&self.cones[j]).unwrap() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_face_to_face(&self) -> bool {
        self.face_to_face_violation().is_none()
    }

    pub fn validate(&self) -> Result<()> {
        if let Some((i, j)) = self.face_to_face_violation() {
            return Err(Error::DegenerateInput(format!("cones {i} and {j} do not meet in a common face")));
        }
        Ok(())
    }

    /// Members not properly contained in another member.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d != *c && d.dim() > c.dim() && d.contains_cone(c)))
            .collect()
    }

    pub fn cones_of_dim(&self, d: usize) -> Vec<&Cone> {
        self.cones.iter().filter(|c| c.dim() == d).collect()
    }

    /// Sorted primitive generators of all pointed one-dimensional members.
    pub fn rays(&self) -> Vec<crate::rational::Vector> {
        let set: BTreeSet<_> = self
            .cones
            .iter()
            .filter(|c| c.dim() == 1 && c.is_strongly_convex())
            .map(|c| c.rays()[0].clone())
            .collect();
        set.into_iter().collect()
    }

    pub fn support_contains(&self, p: &[Rational]) -> bool {
        self.cones.iter().any(|c| c.contains(p))
    }

    /// Smallest member containing `p`, if the fan is face-to-face and closed.
    pub fn cone_containing(&self, p: &[Rational]) -> Option<&Cone> {
        self.cones.iter().filter(|c| c.contains(p)).min_by_key(|c| c.dim())
    }

    /// True iff every point of the ambient space lies in some member.
    ///
    /// Checked by facet matching on the full-dimensional members: every facet
    /// must be shared by exactly two of them.
    pub fn is_complete(&self) -> bool {
        let full: Vec<&Cone> = self.cones.iter().filter(|c| c.dim() == self.ambient).collect();
        if self.ambient == 0 {
            return !self.cones.is_empty();
        }
        if full.is_empty() {
            return false;
        }
        covers_by_facet_matching(&full, |_| false)
    }

    /// True iff every cone of `other` is a union of cones of `self`, given
    /// that `self` covers the support of `other`: each member of `self` meets
    /// each member of `other` either entirely or in a proper face of itself.
    pub fn refines(&self, other: &Fan) -> bool {
        self.cones.iter().all(|s| {
            other.cones.iter().all(|t| {
                let m = s.intersect(t).expect("same ambient space");
                m == *s || m.is_face_of(s).unwrap()
            })
        })
    }

    /// True iff the union of `self` contains the union of `other`.
    pub fn support_covers(&self, other: &Fan) -> bool {
        other.cones.iter().all(|t| cone_is_covered(t, &self.cones))
    }
}

/// Facet-matching test: the full-dimensional `pieces` (face-to-face) cover a
/// region whose boundary facets are recognised by `on_boundary`.
fn covers_by_facet_matching(pieces: &[&Cone], on_boundary: impl Fn(&Cone) -> bool) -> bool {
    let mut count: BTreeMap<Cone, usize> = BTreeMap::new();
    for p in pieces {
        for a in p.facets() {
            let rays: Vec<_> = p.rays().iter().filter(|r| dot(a, r).is_zero()).cloned().collect();
            let f = Cone::from_generators(p.ambient_dim(), &rays, p.lineality_basis());
            *count.entry(f).or_default() += 1;
        }
    }
    count.iter().all(|(f, &n)| n == 2 || (n == 1 && on_boundary(f)))
}

/// True iff `sigma` is contained in the union of `cover` (a face-to-face
/// collection).
pub fn cone_is_covered(sigma: &Cone, cover: &[Cone]) -> bool {
    let d = sigma.dim();
    let pieces: BTreeSet<Cone> = cover
        .iter()
        .map(|t| sigma.intersect(t).expect("same ambient space"))
        .filter(|c| c.dim() == d)
        .collect();
    if pieces.is_empty() {
        return false;
    }
    if pieces.contains(sigma) {
        return true;
    }
    // Within span(sigma): a piece facet is boundary iff it lies in a facet of sigma.
    let sigma_facets: Vec<Cone> = sigma.faces().into_iter().filter(|f| f.dim() + 1 == d).collect();
    let refs: Vec<&Cone> = pieces.iter().collect();
    let mut count: BTreeMap<Cone, usize> = BTreeMap::new();
    for p in &refs {
        for f in p.faces().into_iter().filter(|f| f.dim() + 1 == d) {
            *count.entry(f).or_default() += 1;
        }
    }
    count.iter().all(|(f, &n)| n == 2 || (n == 1 && sigma_facets.iter().any(|s| s.contains_cone(f))))
}

/// Common refinement of fans with a common support: all intersections
/// `s_1 ∩ ... ∩ s_k` with `s_i` drawn from the face closure of part `i`.
pub fn common_refinement(parts: &[Fan]) -> Result<Fan> {
    let Some(first) = parts.first() else {
        return Err(Error::DegenerateInput("no fans to refine".into()));
    };
    let ambient = first.ambient;
    for p in parts {
        if p.ambient != ambient {
            return Err(Error::DimMismatch { expected: ambient, got: p.ambient });
        }
    }
    for p in &parts[1..] {
        if !p.support_covers(first) || !first.support_covers(p) {
            return Err(Error::SupportMismatch);
        }
    }
    let mut acc = Fan::with_faces(ambient, first.cones.clone());
    for p in &parts[1..] {
        let other = Fan::with_faces(ambient, p.cones.clone());
        let mut next: BTreeSet<Cone> = BTreeSet::new();
        for a in &acc.cones {
            for b in &other.cones {
                let m = a.intersect(b)?;
                next.insert(m);
            }
        }
        acc = Fan { ambient, cones: next.into_iter().collect() };
    }
    Ok(acc)
}

/// Common refinement of a family of polytopal cells: every nonempty set of
/// the form `∩{X : x ∈ X}` for a point `x` of the union.
pub fn common_refinement_cells(members: &[Polyhedron]) -> Result<Vec<Polyhedron>> {
    let Some(first) = members.first() else {
        return Ok(Vec::new());
    };
    let ambient = first.ambient_dim();
    if let Some(m) = members.iter().find(|m| m.ambient_dim() != ambient) {
        return Err(Error::DimMismatch { expected: ambient, got: m.ambient_dim() });
    }
    Ok(refine_closure(members, ambient).into_iter().map(|c| c.region).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ivec;

    fn ray(v: &[i64]) -> Cone {
        Cone::from_i64_rays(&[v])
    }

    #[test]
    fn line_refinement() {
        let halves = Fan::new(1, vec![ray(&[1]), ray(&[-1])]);
        let line = Fan::new(1, vec![Cone::whole_space(1)]);
        let r = common_refinement(&[halves, line]).unwrap();
        let expected: BTreeSet<Cone> = [Cone::zero(1), ray(&[-1]), ray(&[1])].into_iter().collect();
        assert_eq!(r.cones().iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert!(r.is_face_to_face());
        assert!(r.is_complete());
    }

    #[test]
    fn support_mismatch_detected() {
        let a = Fan::new(1, vec![ray(&[1])]);
        let b = Fan::new(1, vec![Cone::whole_space(1)]);
        assert_eq!(common_refinement(&[a, b]), Err(Error::SupportMismatch));
    }

    #[test]
    fn completeness_and_refinement() {
        let quadrants = Fan::with_faces(
            2,
            vec![
                Cone::from_i64_rays(&[&[1, 0], &[0, 1]]),
                Cone::from_i64_rays(&[&[0, 1], &[-1, 0]]),
                Cone::from_i64_rays(&[&[-1, 0], &[0, -1]]),
                Cone::from_i64_rays(&[&[0, -1], &[1, 0]]),
            ],
        );
        assert!(quadrants.is_complete());
        assert!(quadrants.is_closed_under_faces());
        assert_eq!(quadrants.maximal_cones().len(), 4);
        let halves = Fan::with_faces(
            2,
            vec![Cone::from_inequalities(2, &[ivec(&[0, 1])], &[]), Cone::from_inequalities(2, &[ivec(&[0, -1])], &[])],
        );
        assert!(halves.is_complete());
        assert!(quadrants.refines(&halves));
        assert!(!halves.refines(&quadrants));
        let three = Fan::with_faces(2, quadrants.maximal_cones().into_iter().take(3).cloned().collect());
        assert!(!three.is_complete());
    }

    #[test]
    fn polytopal_cells_on_segment() {
        let seg = Polyhedron::from_points(1, &[ivec(&[0]), ivec(&[1])]);
        let a = Polyhedron::from_points(1, &[ivec(&[0])]);
        let b = Polyhedron::from_points(1, &[ivec(&[1])]);
        let cells = common_refinement_cells(&[seg.clone(), a.clone(), b.clone()]).unwrap();
        assert_eq!(cells.len(), 3);
        assert!(cells.contains(&seg) && cells.contains(&a) && cells.contains(&b));
    }
}
