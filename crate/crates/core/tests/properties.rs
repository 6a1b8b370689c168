//! Randomized invariants over small instances.

use std::collections::BTreeSet;

use fiberfan::io::Document;
use fiberfan::rational::{format_rational, parse_rational, primitive, Rational, Vector};
use fiberfan::secondary::{
    classified_triangulations, fan_of_triangulation, secondary_fan, simplex_projection, PointConfiguration,
};
use fiberfan::snf::{mat_mul, smith, IntMatrix};
use fiberfan::toric::{cox_construction, is_projective_fan, sign_vector_report, LatticeFan};
use num::{BigInt, Integer, Signed, Zero};
use proptest::prelude::*;

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        let minor: IntMatrix =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][c] * det(&minor);
        total = if c % 2 == 0 { total + term } else { total - term };
    }
    total
}

fn int_matrix() -> impl Strategy<Value = (IntMatrix, usize, usize)> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r)
            .prop_map(move |m| (m.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect(), r, c))
    })
}

/// Distinct x-coordinates on the parabola y = x² are in convex position.
fn parabola(xs: &BTreeSet<i64>) -> PointConfiguration {
    let pts: Vec<Vector> = xs.iter().map(|&x| vec![Rational::from_integer(x.into()), Rational::from_integer((x * x).into())]).collect();
    PointConfiguration::new(pts).unwrap()
}

/// Complete simplicial fans in the plane: primitive rays sorted by angle
/// with every consecutive gap below π.
fn plane_fan(raw: &[(i64, i64)]) -> Option<LatticeFan> {
    let mut rays: Vec<Vector> = raw
        .iter()
        .filter(|(x, y)| (*x, *y) != (0, 0))
        .map(|&(x, y)| primitive(&[Rational::from_integer(x.into()), Rational::from_integer(y.into())]))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let angle = |v: &Vector| {
        let f = |q: &Rational| q.numer().to_string().parse::<f64>().unwrap();
        f(&v[1]).atan2(f(&v[0]))
    };
    rays.sort_by(|a, b| angle(a).partial_cmp(&angle(b)).unwrap());
    let k = rays.len();
    if k < 3 {
        return None;
    }
    let cross = |a: &Vector, b: &Vector| &a[0] * &b[1] - &a[1] * &b[0];
    if (0..k).any(|i| !cross(&rays[i], &rays[(i + 1) % k]).is_positive()) {
        return None;
    }
    let cones: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    LatticeFan::new(2, &rays, &cones).ok()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization((a, r, c) in int_matrix()) {
        let s = smith(&a, r, c);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &a, r, c), &s.v, c, c), s.d.clone());
        prop_assert_eq!(det(&s.u).abs(), BigInt::from(1));
        prop_assert_eq!(det(&s.v).abs(), BigInt::from(1));
        for i in 0..r {
            for j in 0..c {
                prop_assert!(i == j || s.d[i][j].is_zero());
            }
        }
        let divs = s.divisors();
        prop_assert!(divs.iter().all(|d| d.is_positive()));
        prop_assert!(divs.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..50) {
        let q = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn documents_round_trip(rows in proptest::collection::vec((-9i64..10, 1i64..5), 1..6)) {
        let cells: Vec<String> = rows.iter().map(|(n, d)| format!("\"{n}/{d}\"")).collect();
        let text = format!("{{\"schema\": 1, \"name\": \"m\", \"matrix\": [[{}]]}}", cells.join(","));
        let doc = Document::parse(&text).unwrap();
        prop_assert_eq!(Document::parse(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn plane_fans_have_consistent_sign_vectors_and_cox_data(raw in proptest::collection::vec((-3i64..4, -3i64..4), 3..7)) {
        let Some(fan) = plane_fan(&raw) else { return Ok(()) };
        let report = sign_vector_report(&fan).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
        let cox = cox_construction(&fan).unwrap();
        prop_assert!(cox.geometric);
        prop_assert_eq!(cox.free_rank, fan.rays().len() - 2);
        prop_assert_eq!(cox.quotient.quotient_fan.as_ref(), Some(&fan));
        // Every complete fan in the plane is projective.
        prop_assert!(is_projective_fan(&fan).unwrap().0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn convex_position_gives_catalan_many_regular_triangulations(xs in proptest::collection::btree_set(-4i64..5, 4..7)) {
        let a = parabola(&xs);
        let ts = classified_triangulations(&a, 1_000_000).unwrap();
        prop_assert_eq!(ts.len(), catalan(a.len() - 2));
        prop_assert!(ts.iter().all(|t| t.is_regular() == Some(true)));
        let report = secondary_fan(&a, &ts).unwrap();
        prop_assert!(report.bijective);
    }

    #[test]
    fn regular_iff_projective_with_an_inner_point(xs in proptest::collection::btree_set(-3i64..4, 3..5), lift in 0i64..16) {
        // A point above a middle vertex and not above the chord between the
        // extreme vertices: interior, or on the top edge.
        let v: Vec<i64> = xs.iter().copied().collect();
        let (lo, m, hi) = (v[0], v[v.len() / 2], v[v.len() - 1]);
        let y = m * m + 1 + lift % ((m - lo) * (hi - m));
        let mut pts: Vec<Vector> = parabola(&xs).points().to_vec();
        pts.push(vec![Rational::from_integer(m.into()), Rational::from_integer(y.into())]);
        let a = PointConfiguration::new(pts).unwrap();
        let ts = classified_triangulations(&a, 1_000_000).unwrap();
        for t in &ts {
            let (projective, _) = is_projective_fan(&fan_of_triangulation(&a, t).unwrap()).unwrap();
            prop_assert_eq!(t.is_regular(), Some(projective), "{}", t.label());
        }
        // Triangulations are tight locally coherent strings of the simplex projection.
        let pp = simplex_projection(&a).unwrap();
        for t in &ts {
            let fs = t.face_set();
            prop_assert!(pp.is_locally_coherent_string(&fs) && pp.is_tight_string(&fs), "{}", t.label());
        }
    }
}
