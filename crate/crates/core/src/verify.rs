//! Cross-module invariant suites over one input. Each suite returns a
//! serializable report whose `passed()` is the conjunction of its checks.
//! Reports contain no timings, so equal inputs give byte-identical JSON.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::chamber::PolytopeProjection;
use crate::error::Result;
use crate::polyhedron::Cone;
use crate::polytope::Face;
use crate::poset::{minimal_elements, PosetReport};
use crate::secondary::{
    classified_triangulations, fan_of_triangulation, flip_graph, regular_flip_edges, secondary_fan,
    simplex_projection, PointConfiguration, SecondaryReport,
};
use crate::strings::{face_union_le, normal_union_le, Duality, VirtualDualityReport};
use crate::toric::{
    cox_construction, fiber_fan_domination, is_projective_fan, quotient_fan, sign_vector_report, DominationReport,
    LatticeFan, SignVectorReport, SublatticeData,
};

#[derive(Clone, Debug, Serialize)]
pub struct DualitySuite {
    pub cells: usize,
    pub chambers: usize,
    pub fiber_cones: usize,
    pub maximal_fiber_cones: usize,
    pub coherent_strings: usize,
    pub locally_coherent_strings: usize,
    pub coherent_costrings: usize,
    pub locally_coherent_costrings: usize,
    pub coherent_strings_are_locally_coherent: bool,
    pub coherent_costrings_are_locally_coherent: bool,
    pub tight_iff_minimal_strings: bool,
    pub tight_iff_minimal_costrings: bool,
    pub strings_anti_isomorphism: PosetReport,
    pub costrings_anti_isomorphism: PosetReport,
    pub virtual_duality: VirtualDualityReport,
    pub domination: DominationReport,
}

impl DualitySuite {
    pub fn passed(&self) -> bool {
        self.coherent_strings_are_locally_coherent
            && self.coherent_costrings_are_locally_coherent
            && self.tight_iff_minimal_strings
            && self.tight_iff_minimal_costrings
            && self.strings_anti_isomorphism.passed()
            && self.costrings_anti_isomorphism.passed()
            && self.virtual_duality.passed()
            && self.domination.failures.is_empty()
    }
}

/// Minimal elements under `le` coincide with the elements passing `tight`.
fn tight_iff_minimal(items: &[BTreeSet<Face>], le: impl Fn(&BTreeSet<Face>, &BTreeSet<Face>) -> bool, tight: impl Fn(&BTreeSet<Face>) -> bool) -> bool {
    let minimal: BTreeSet<usize> = minimal_elements(items.len(), |a, b| le(&items[a], &items[b])).into_iter().collect();
    (0..items.len()).all(|i| minimal.contains(&i) == tight(&items[i]))
}

pub fn duality_suite(pp: &PolytopeProjection, cap: usize) -> Result<DualitySuite> {
    let d = Duality::new(pp);
    let gamma = pp.chamber_complex();
    let gs = pp.fiber_fan();
    let coherent: BTreeSet<&BTreeSet<Face>> = d.coherent_strings().iter().collect();
    let cocoherent: BTreeSet<&BTreeSet<Face>> = d.coherent_costrings().iter().collect();
    let t: Vec<BTreeSet<Face>> =
        pp.enumerate_locally_coherent_strings(cap).complete(cap)?.into_iter().map(|c| c.faces).collect();
    let t_star = d.enumerate_locally_coherent_costrings(cap).complete(cap)?;
    let (strings_anti_isomorphism, costrings_anti_isomorphism) = d.coherent_anti_isomorphisms();
    Ok(DualitySuite {
        cells: gamma.len(),
        chambers: gamma.chambers().len(),
        fiber_cones: gs.len(),
        maximal_fiber_cones: gs.maximal().len(),
        coherent_strings: coherent.len(),
        locally_coherent_strings: t.len(),
        coherent_costrings: cocoherent.len(),
        locally_coherent_costrings: t_star.len(),
        coherent_strings_are_locally_coherent: coherent.iter().all(|s| t.contains(s) && pp.is_locally_coherent_string(s)),
        coherent_costrings_are_locally_coherent: cocoherent
            .iter()
            .all(|s| t_star.contains(s) && d.is_locally_coherent_costring(s)),
        tight_iff_minimal_strings: tight_iff_minimal(&t, face_union_le, |s| pp.is_tight_string(s)),
        tight_iff_minimal_costrings: tight_iff_minimal(&t_star, normal_union_le, |s| d.is_tight_costring(s)),
        strings_anti_isomorphism,
        costrings_anti_isomorphism,
        virtual_duality: d.virtual_duality(cap)?,
        domination: fiber_fan_domination(pp, cap)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangulationSuite {
    pub points: usize,
    pub triangulations: usize,
    pub regular: usize,
    pub fine: usize,
    pub secondary: SecondaryReport,
    pub flip_edges: usize,
    pub regular_flip_edges: usize,
    /// Wall adjacencies of the secondary fan are regular flips.
    pub walls_are_flips: bool,
    pub regular_iff_projective: bool,
    pub projectivity_mismatches: Vec<usize>,
    pub triangulations_are_tight_strings: bool,
    /// Asserted only for configurations in convex position.
    pub flip_graph_connected: bool,
}

impl TriangulationSuite {
    pub fn passed(&self) -> bool {
        self.secondary.bijective
            && self.walls_are_flips
            && self.regular_iff_projective
            && self.triangulations_are_tight_strings
    }
}

pub fn triangulation_suite(a: &PointConfiguration, cap: usize) -> Result<TriangulationSuite> {
    use rayon::prelude::*;
    let ts = classified_triangulations(a, cap)?;
    let secondary = secondary_fan(a, &ts)?;
    let g = flip_graph(a, &ts);
    let regular_edges = regular_flip_edges(&g, &ts);
    let projective: Vec<bool> = ts
        .par_iter()
        .map(|t| fan_of_triangulation(a, t).and_then(|f| is_projective_fan(&f)).map(|(p, _)| p))
        .collect::<Result<_>>()?;
    let projectivity_mismatches: Vec<usize> =
        (0..ts.len()).filter(|&i| ts[i].is_regular() != Some(projective[i])).collect();
    let pp = simplex_projection(a)?;
    let tight = ts.par_iter().all(|t| {
        let fs = t.face_set();
        pp.is_tight_string(&fs) && pp.is_locally_coherent_string(&fs)
    });
    let all = Face::full(a.len());
    Ok(TriangulationSuite {
        points: a.len(),
        triangulations: ts.len(),
        regular: ts.iter().filter(|t| t.is_regular() == Some(true)).count(),
        fine: ts.iter().filter(|t| t.used == all).count(),
        walls_are_flips: secondary.wall_edges.iter().all(|e| regular_edges.contains(e)),
        secondary,
        flip_edges: g.edges.len(),
        regular_flip_edges: regular_edges.len(),
        regular_iff_projective: projectivity_mismatches.is_empty(),
        projectivity_mismatches,
        triangulations_are_tight_strings: tight,
        flip_graph_connected: g.is_connected(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientSummary {
    pub delta: Vec<String>,
    pub valid_costring: bool,
    pub strongly_convex: bool,
    pub categorical: bool,
    pub geometric: bool,
    pub tight: bool,
    pub degenerate: bool,
    pub image_cones: usize,
    pub reduction_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FanSuite {
    pub rank: usize,
    pub rays: usize,
    pub cones: usize,
    pub complete: bool,
    pub simplicial: bool,
    pub cox_free_rank: usize,
    pub cox_torsion: Vec<String>,
    pub cox_geometric: bool,
    pub cox_round_trip: bool,
    pub cox_geometric_iff_tight: bool,
    pub projective: Option<bool>,
    pub sign_vectors: Option<SignVectorReport>,
    pub quotients: Vec<QuotientSummary>,
}

impl FanSuite {
    pub fn passed(&self) -> bool {
        self.cox_round_trip
            && self.cox_geometric_iff_tight
            && self.sign_vectors.as_ref().is_none_or(SignVectorReport::passed)
            && self.quotients.iter().all(|q| (!q.geometric || q.categorical) && (!q.degenerate || !q.strongly_convex))
    }
}

/// `deltas`: named subsets of the fan to classify against `sublattice`.
pub fn fan_suite(fan: &LatticeFan, sublattice: Option<&SublatticeData>, deltas: &[(String, Vec<Cone>)]) -> Result<FanSuite> {
    let cox = cox_construction(fan)?;
    let mut quotients = Vec::new();
    if let Some(sub) = sublattice {
        for (name, delta) in deltas {
            let r = quotient_fan(fan, delta, sub)?;
            quotients.push(QuotientSummary {
                delta: name.split(',').map(str::to_string).collect(),
                valid_costring: r.valid_costring,
                strongly_convex: r.strongly_convex,
                categorical: r.categorical,
                geometric: r.geometric,
                tight: r.tight,
                degenerate: r.degenerate,
                image_cones: r.image_fan.len(),
                reduction_dim: r.reduction.as_ref().map(|x| x.fan.ambient_dim()),
            });
        }
    }
    Ok(FanSuite {
        rank: fan.rank(),
        rays: fan.rays().len(),
        cones: fan.fan().len(),
        complete: fan.is_complete(),
        simplicial: fan.is_simplicial(),
        cox_free_rank: cox.free_rank,
        cox_torsion: cox.torsion.iter().map(|x| x.to_string()).collect(),
        cox_geometric: cox.geometric,
        cox_round_trip: cox.quotient.quotient_fan.as_ref() == Some(fan),
        cox_geometric_iff_tight: cox.geometric == cox.quotient.geometric,
        projective: if fan.is_complete() { Some(is_projective_fan(fan)?.0) } else { None },
        sign_vectors: if fan.is_complete() { Some(sign_vector_report(fan)?) } else { None },
        quotients,
    })
}
