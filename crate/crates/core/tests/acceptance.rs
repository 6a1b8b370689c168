//! The eight acceptance criteria, each with its wall-clock limit. Prints one
//! PASS/FAIL line per criterion and fails if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use fiberfan::chamber::PolytopeProjection;
use fiberfan::io::Document;
use fiberfan::linalg::Matrix;
use fiberfan::polyhedron::Cone;
use fiberfan::polytope::{Face, Polytope};
use fiberfan::poset::minimal_elements;
use fiberfan::projection::make_projection;
use fiberfan::rational::ivec;
use fiberfan::secondary::{
    classified_triangulations, enumerate_triangulations, fan_of_triangulation, secondary_fan, simplex_projection,
    PointConfiguration,
};
use fiberfan::strings::{face_union_le, normal_union_le, Duality};
use fiberfan::toric::{
    cox_construction, fiber_fan_domination, generalized_sign_vectors, is_projective_fan, quotient_fan,
    sign_vector_report, span_arrangement, LatticeFan, Sign, SublatticeData,
};

const CAP: usize = 2_000_000;

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn sq() -> PolytopeProjection {
    let p = Polytope::from_i64(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap();
    PolytopeProjection::new(p, make_projection(Matrix::from_i64(&[&[1, 0]])).unwrap()).unwrap()
}

fn pent() -> PolytopeProjection {
    simplex_projection(&polygon(5)).unwrap()
}

fn polygon(n: usize) -> PointConfiguration {
    let rows: &[&[i64]] = match n {
        4 => &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]],
        5 => &[&[0, 0], &[2, 0], &[3, 2], &[1, 4], &[-1, 2]],
        6 => &[&[0, 0], &[2, 0], &[3, 1], &[2, 2], &[0, 2], &[-1, 1]],
        7 => &[&[0, 0], &[2, 0], &[4, 1], &[5, 3], &[4, 5], &[1, 5], &[-1, 2]],
        _ => unreachable!(),
    };
    PointConfiguration::from_i64(rows).unwrap()
}

fn tight_iff_minimal(items: &[BTreeSet<Face>], le: impl Fn(&BTreeSet<Face>, &BTreeSet<Face>) -> bool, tight: impl Fn(&BTreeSet<Face>) -> bool) -> bool {
    let minimal: BTreeSet<usize> = minimal_elements(items.len(), |a, b| le(&items[a], &items[b])).into_iter().collect();
    (0..items.len()).all(|i| minimal.contains(&i) == tight(&items[i]))
}

fn square_micro_suite() -> Check {
    let pp = sq();
    let gamma = pp.chamber_complex();
    ensure(gamma.len() == 3 && gamma.chambers().len() == 1, format!("Γ has {} cells", gamma.len()))?;
    ensure(pp.fiber_fan().len() == 3, format!("Γ* has {} cones", pp.fiber_fan().len()))?;
    let d = Duality::new(&pp);
    let t: Vec<BTreeSet<Face>> =
        pp.enumerate_locally_coherent_strings(CAP).complete(CAP).unwrap().into_iter().map(|c| c.faces).collect();
    let coherent: BTreeSet<&BTreeSet<Face>> = d.coherent_strings().iter().collect();
    ensure(t.len() == 3 && coherent.len() == 3 && t.iter().all(|s| coherent.contains(s)), "T ≠ T_coh")?;
    let (a, b) = d.coherent_anti_isomorphisms();
    ensure(a.passed() && b.passed(), "coherent anti-isomorphism")?;
    let t_star = d.enumerate_locally_coherent_costrings(CAP).complete(CAP).unwrap();
    ensure(tight_iff_minimal(&t, face_union_le, |s| pp.is_tight_string(s)), "tight ⇔ minimal in T")?;
    ensure(tight_iff_minimal(&t_star, normal_union_le, |s| d.is_tight_costring(s)), "tight ⇔ minimal in T*")?;
    Ok(format!("3 cells, 3 cones, |T| = |T_coh| = 3, |T*| = {}", t_star.len()))
}

fn catalan_counts() -> Check {
    let mut out = Vec::new();
    for (n, expected) in [(4, 2), (5, 5), (6, 14), (7, 42)] {
        let start = Instant::now();
        let a = polygon(n);
        let found = enumerate_triangulations(&a, CAP).unwrap().len();
        let ts = classified_triangulations(&a, CAP).unwrap();
        let regular = ts.iter().filter(|t| t.is_regular() == Some(true)).count();
        let report = secondary_fan(&a, &ts).unwrap();
        let took = start.elapsed();
        ensure(
            found == expected && report.maximal_cones == expected && regular == expected && report.bijective,
            format!("{n}-gon: {found} triangulations, {} cones, {regular} regular", report.maximal_cones),
        )?;
        ensure(took < Duration::from_secs(60), format!("{n}-gon took {took:?}"))?;
        out.push(format!("{expected}"));
    }
    Ok(format!("counts {} match, all regular with heights", out.join("/")))
}

fn moae_suite() -> Check {
    let a = PointConfiguration::from_i64(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 1], &[1, 2]]).unwrap();
    let ts = classified_triangulations(&a, CAP).unwrap();
    let regular = ts.iter().filter(|t| t.is_regular() == Some(true)).count();
    ensure(regular < ts.len(), "no non-regular triangulation")?;
    for t in &ts {
        let (projective, _) = is_projective_fan(&fan_of_triangulation(&a, t).unwrap()).unwrap();
        ensure(t.is_regular() == Some(projective), format!("{}: regular and projective disagree", t.label()))?;
    }
    Ok(format!("{} triangulations, {regular} regular; regular ⇔ projective on all", ts.len()))
}

fn virtual_duality() -> Check {
    let mut out = Vec::new();
    for (name, pp) in [("SQ", sq()), ("PENT", pent())] {
        let r = Duality::new(&pp).virtual_duality(CAP).unwrap();
        ensure(r.passed(), format!("{name}: {r:?}"))?;
        out.push(format!("{name} {}↔{} / {}↔{}", r.strings, r.virtual_cones, r.costrings, r.virtual_cells));
    }
    Ok(out.join(", "))
}

fn quotient_fans() -> Check {
    let c2 = LatticeFan::new(2, &[ivec(&[1, 0]), ivec(&[0, 1])], &[vec![0, 1]]).unwrap();
    let sub = SublatticeData::from_sublattice(2, &[ivec(&[0, 1])]).unwrap();
    let s12 = Cone::from_i64_rays(&[&[1, 0], &[0, 1]]);
    let s1 = Cone::from_i64_rays(&[&[1, 0]]);
    let s2 = Cone::from_i64_rays(&[&[0, 1]]);
    let zero = Cone::zero(2);
    let q = |d: &[Cone]| quotient_fan(&c2, d, &sub).unwrap();
    let a = q(&[s12.clone(), s2.clone()]);
    ensure(a.valid_costring && a.categorical && !a.geometric, "{σ12, σ2}: expected categorical, not geometric")?;
    let b = q(&[s1.clone(), zero.clone()]);
    ensure(b.valid_costring && b.categorical && b.geometric, "{σ1, 0}: expected categorical and geometric")?;
    ensure(a.quotient_fan == b.quotient_fan, "the two quotient fans differ")?;
    ensure(!q(&[s1.clone(), s2.clone()]).valid_costring, "{σ1, σ2} accepted")?;
    ensure(!q(&[s12, s1, s2, zero]).valid_costring, "all faces accepted")?;
    for (name, geometric) in [("P2FAN", true), ("SQUARECONE", false)] {
        let fan = Document::read(&fixture(name)).unwrap().lattice_fan().unwrap();
        let cox = cox_construction(&fan).unwrap();
        ensure(cox.quotient.quotient_fan.as_ref() == Some(&fan), format!("{name}: Cox round trip"))?;
        ensure(cox.geometric == geometric, format!("{name}: geometric = {}", cox.geometric))?;
    }
    Ok("C2FAN flags exact; Cox round trip on P2FAN (geometric) and SQUARECONE (not)".into())
}

fn domination() -> Check {
    let mut out = Vec::new();
    for (name, pp) in [("SQ", sq()), ("PENT", pent())] {
        let r = fiber_fan_domination(&pp, CAP).unwrap();
        ensure(r.costrings > 0 && r.failures.is_empty(), format!("{name}: {r:?}"))?;
        out.push(format!("{name} {} costrings", r.costrings));
    }
    Ok(out.join(", "))
}

fn sign_vectors() -> Check {
    let fan = Document::read(&fixture("P2FAN")).unwrap().lattice_fan().unwrap();
    let arr = span_arrangement(&fan).unwrap();
    let diagonal = arr.hyperplanes.iter().position(|h| *h == ivec(&[1, -1])).ok_or("no x = y hyperplane")?;
    let quadrant = Cone::from_i64_rays(&[&[1, 0], &[0, 1]]);
    let gsv = generalized_sign_vectors(&fan, &arr).unwrap();
    let v = gsv.iter().find(|g| g.cone == quadrant).ok_or("cone(e1, e2) missing")?;
    ensure(v.entries[diagonal] == Sign::Both, "cone(e1, e2) is not u on x = y")?;
    let r = sign_vector_report(&fan).unwrap();
    ensure(r.passed() && r.covectors == 13, format!("{r:?}"))?;
    Ok(format!("u entry present; extension = {} covectors, idempotent", r.covectors))
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_fiberfan");
    let mut names: Vec<PathBuf> = std::fs::read_dir(fixture("SQ").parent().unwrap())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    for path in &names {
        let run = |threads: &str| {
            let o = Command::new(bin).args(["verify-all", path.to_str().unwrap(), "--threads", threads]).output().unwrap();
            (o.status.code(), o.stdout)
        };
        let first = run("1");
        ensure(first.0 == Some(0), format!("{}: exit {:?}", path.display(), first.0))?;
        ensure(run("1") == first, format!("{}: differs between runs", path.display()))?;
        ensure(run("4") == first, format!("{}: differs across pool sizes", path.display()))?;
    }
    Ok(format!("{} fixtures pass with identical bytes at 1 and 4 threads", names.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 SQ micro-suite", 1, square_micro_suite),
        ("2 Catalan counts", 240, catalan_counts),
        ("3 MOAE regular vs projective", 300, moae_suite),
        ("4 string/cone duality", 300, virtual_duality),
        ("5 quotient fans and Cox", 1, quotient_fans),
        ("6 fiber fan domination", 120, domination),
        ("7 sign vectors", 1, sign_vectors),
        ("8 verify-all determinism", 1800, determinism),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(limit) => Err(format!("{msg}; over the {limit} s limit")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  {name:<30} {took:>9.2?} (limit {limit} s)  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<30} {took:>9.2?} (limit {limit} s)  {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
