//! Lattice fans and their quotients: quotient fans of costrings, Cox's
//! construction, projectivity of complete fans, and generalized sign vectors
//! relative to the hyperplane arrangement spanned by a fan's walls.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::chamber::PolytopeProjection;
use crate::csp::Enumeration;
use crate::error::{Error, Result};
use crate::fan::{common_refinement, Fan};
use crate::linalg::{self, nullspace, Matrix};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polyhedron::Cone;
use crate::rational::{dot, format_vec, primitive, primitive_oriented, sub, to_bigints, unit_vec, Rational, Vector};
use crate::snf::{smith, IntMatrix};
use crate::strings::CostringContext;

/// A fan of strongly convex cones with primitive integer rays in `Z^rank`,
/// closed under faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFan {
    rank: usize,
    fan: Fan,
    complete: bool,
}

fn check_primitive(r: &[Rational]) -> Result<()> {
    let ok = to_bigints(r).is_some() && primitive(r) == r && r.iter().any(|x| !x.is_zero());
    if ok {
        Ok(())
    } else {
        Err(Error::NonPrimitiveRay(format_vec(r)))
    }
}

impl LatticeFan {
    /// `cones[i]` lists indices into `rays`.
    pub fn new(rank: usize, rays: &[Vector], cones: &[Vec<usize>]) -> Result<LatticeFan> {
        for r in rays {
            if r.len() != rank {
                return Err(Error::DimMismatch { expected: rank, got: r.len() });
            }
            check_primitive(r)?;
        }
        let mut members = Vec::with_capacity(cones.len());
        for c in cones {
            let gens = c
                .iter()
                .map(|&i| rays.get(i).cloned().ok_or_else(|| Error::Schema(format!("ray index {i} out of range"))))
                .collect::<Result<Vec<_>>>()?;
            let cone = Cone::from_generators(rank, &gens, &[]);
            if cone.rays().len() != gens.iter().collect::<BTreeSet<_>>().len() {
                return Err(Error::DegenerateInput(format!("cone {c:?}: listed rays are not all extreme")));
            }
            members.push(cone);
        }
        LatticeFan::from_fan(Fan::with_faces(rank, members))
    }

    /// Validates an existing fan: face-to-face, strongly convex, primitive rays.
    pub fn from_fan(fan: Fan) -> Result<LatticeFan> {
        let fan = Fan::with_faces(fan.ambient_dim(), fan.cones().to_vec());
        if let Some(c) = fan.cones().iter().find(|c| !c.is_strongly_convex()) {
            return Err(Error::DegenerateInput(format!("cone of dimension {} contains a line", c.dim())));
        }
        for r in fan.rays() {
            check_primitive(&r)?;
        }
        // Faces of cones meeting in common faces also do, so maximal cones suffice.
        Fan::new(fan.ambient_dim(), fan.maximal_cones().into_iter().cloned().collect()).validate()?;
        let complete = fan.is_complete();
        Ok(LatticeFan { rank: fan.ambient_dim(), fan, complete })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Rays in sorted order; the index space for [`LatticeFan::cone_indices`].
    pub fn rays(&self) -> Vec<Vector> {
        self.fan.rays()
    }

    /// Each cone as the sorted indices of its rays.
    pub fn cone_indices(&self) -> Vec<Vec<usize>> {
        let rays = self.rays();
        self.fan
            .cones()
            .iter()
            .map(|c| c.rays().iter().map(|r| rays.iter().position(|x| x == r).expect("ray of fan")).collect())
            .collect()
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.fan.maximal_cones()
    }

    pub fn is_simplicial(&self) -> bool {
        self.fan.cones().iter().all(|c| c.rays().len() == c.dim())
    }
}

fn to_rational_matrix(m: &IntMatrix, cols: usize) -> Matrix {
    let rows: Vec<Vector> = m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    Matrix::from_rows(&rows, cols).expect("rectangular")
}

fn int_rows(rows: &[Vector]) -> Result<IntMatrix> {
    rows.iter()
        .map(|r| to_bigints(r).ok_or_else(|| Error::DegenerateInput("entries must be integers".into())))
        .collect()
}

fn divisors_above_one(d: &[BigInt]) -> Vec<BigInt> {
    d.iter().filter(|x| !x.is_one()).cloned().collect()
}

/// A sublattice `N¹ ⊆ N = Z^n` and the integer map `π∨: N → N²`.
///
/// `saturation_torsion` holds the invariant factors `> 1` of `N / N¹`;
/// `cokernel_torsion` those of `N² / π∨(N)`. Both are empty exactly when the
/// sequence `0 → N¹ → N → N² → 0` is exact over Z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SublatticeData {
    pub rank: usize,
    #[serde(serialize_with = "ser_int_matrix")]
    pub n1_basis: IntMatrix,
    #[serde(serialize_with = "ser_int_matrix")]
    pub projection: IntMatrix,
    #[serde(serialize_with = "ser_ints")]
    pub saturation_torsion: Vec<BigInt>,
    #[serde(serialize_with = "ser_ints")]
    pub cokernel_torsion: Vec<BigInt>,
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_int_matrix<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

impl SublatticeData {
    /// `N¹` spanned by the rows of `basis`; `π∨` is the quotient onto the
    /// free part of `N / N¹`, read off a Smith form `U·B·V = D`: in the
    /// coordinates `x ↦ xV`, `N¹` lives in the first `r` coordinates.
    pub fn from_sublattice(rank: usize, basis: &[Vector]) -> Result<SublatticeData> {
        for b in basis {
            if b.len() != rank {
                return Err(Error::DimMismatch { expected: rank, got: b.len() });
            }
        }
        let b = int_rows(basis)?;
        let s = smith(&b, b.len(), rank);
        let r = s.rank();
        let projection: IntMatrix = (r..rank).map(|j| (0..rank).map(|i| s.v[i][j].clone()).collect()).collect();
        let n1_basis = b.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())).collect();
        Ok(SublatticeData {
            rank,
            n1_basis,
            projection,
            saturation_torsion: divisors_above_one(&s.divisors()),
            cokernel_torsion: Vec::new(),
        })
    }

    /// `π∨` given directly as an integer matrix with `rank` columns; `N¹` is
    /// its integer kernel.
    pub fn from_projection(rank: usize, matrix: &[Vector]) -> Result<SublatticeData> {
        for row in matrix {
            if row.len() != rank {
                return Err(Error::DimMismatch { expected: rank, got: row.len() });
            }
        }
        let p = int_rows(matrix)?;
        let s = smith(&p, p.len(), rank);
        let r = s.rank();
        if r < p.len() {
            return Err(Error::NotSurjective);
        }
        let n1_basis: IntMatrix = (r..rank).map(|j| (0..rank).map(|i| s.v[i][j].clone()).collect()).collect();
        Ok(SublatticeData {
            rank,
            n1_basis,
            projection: p,
            saturation_torsion: Vec::new(),
            cokernel_torsion: divisors_above_one(&s.divisors()),
        })
    }

    pub fn target_rank(&self) -> usize {
        self.projection.len()
    }

    pub fn dual_matrix(&self) -> Matrix {
        to_rational_matrix(&self.projection, self.rank)
    }
}

/// Quotient by the lineality common to the images that contain lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub lineality: Vec<Vector>,
    pub map: Matrix,
    pub fan: Fan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub valid_costring: bool,
    pub reason: Option<String>,
    pub strongly_convex: bool,
    pub tight: bool,
    pub image_fan: Fan,
    /// `π∨(Δ)` as a lattice fan; present iff `categorical`.
    pub quotient_fan: Option<LatticeFan>,
    pub categorical: bool,
    pub geometric: bool,
    pub degenerate: bool,
    pub reduction: Option<Reduction>,
}

/// Classifies `Δ ⊆ Δ0` as a costring of `π∨` and builds `π∨(Δ)`.
pub fn quotient_fan(host: &LatticeFan, delta: &[Cone], sub: &SublatticeData) -> Result<QuotientReport> {
    if sub.rank != host.rank {
        return Err(Error::DimMismatch { expected: host.rank, got: sub.rank });
    }
    if delta.iter().any(|c| !host.fan.contains(c)) {
        return Err(Error::NotASubset);
    }
    let ctx = CostringContext::new(&host.fan, sub.dual_matrix())?;
    Ok(quotient_in_context(&ctx, &ctx.indices_of(delta)?))
}

/// [`quotient_fan`] for a host-index collection of a prepared context.
pub fn quotient_in_context(ctx: &CostringContext, idx: &[usize]) -> QuotientReport {
    let verdict = ctx.check_indices(idx);
    let image_fan = ctx.image_fan(idx);
    let strongly_convex = image_fan.cones().iter().all(Cone::is_strongly_convex);
    let tight = ctx.is_tight(idx);
    let categorical = verdict.pass && strongly_convex;
    let quotient = if categorical { LatticeFan::from_fan(image_fan.clone()).ok() } else { None };
    let degenerate = !strongly_convex;
    let reduction = degenerate.then(|| reduce(&image_fan));
    QuotientReport {
        valid_costring: verdict.pass,
        reason: verdict.reason,
        strongly_convex,
        tight,
        image_fan,
        categorical: categorical && quotient.is_some(),
        geometric: categorical && quotient.is_some() && tight,
        quotient_fan: quotient,
        degenerate,
        reduction,
    }
}

/// Divides out `L = ∩ lin(image)` over the images with lineality.
fn reduce(fan: &Fan) -> Reduction {
    let n = fan.ambient_dim();
    // Complement of L = span of the complements of the offending lineality spaces.
    let mut complement: Vec<Vector> = Vec::new();
    for c in fan.cones().iter().filter(|c| !c.is_strongly_convex()) {
        complement.extend(nullspace(c.lineality_basis(), n));
    }
    let lineality: Vec<Vector> = nullspace(&complement, n).iter().map(|v| primitive(v)).collect();
    let rows: Vec<Vector> = nullspace(&lineality, n).iter().map(|v| primitive(v)).collect();
    let map = Matrix::from_rows(&rows, n).expect("rows of width n");
    let cones = fan.cones().iter().map(|c| c.image(&map).expect("width n")).collect();
    Reduction { lineality, fan: Fan::new(rows.len(), cones), map }
}

/// Cox's presentation of a fan as a quotient of `R^{|Δ(1)|}`.
#[derive(Clone, Debug)]
pub struct CoxData {
    pub rays: Vec<Vector>,
    pub ambient: SublatticeData,
    pub host: LatticeFan,
    pub costring: Vec<Cone>,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub geometric: bool,
    pub quotient: QuotientReport,
}

/// Coordinate cones `span{e_ρ : ρ ∈ σ(1)}` over the cones of `fan`, with
/// `e_ρ ↦ ρ`. The group `Hom(coker Rᵀ, C*)` is reported by its free rank
/// and torsion divisors.
pub fn cox_construction(fan: &LatticeFan) -> Result<CoxData> {
    let rays = fan.rays();
    let m = rays.len();
    if m == 0 {
        return Err(Error::DegenerateInput("fan has no rays".into()));
    }
    let coordinate = |idx: &[usize]| {
        let gens: Vec<Vector> = idx.iter().map(|&i| unit_vec(m, i)).collect();
        Cone::from_generators(m, &gens, &[])
    };
    let costring: Vec<Cone> = fan.cone_indices().iter().map(|c| coordinate(c)).collect();
    let host = LatticeFan::from_fan(Fan::with_faces(m, costring.clone()))?;
    let ray_matrix: Vec<Vector> = (0..fan.rank).map(|i| rays.iter().map(|r| r[i].clone()).collect()).collect();
    let ambient = SublatticeData::from_projection(m, &ray_matrix)?;
    let rt = int_rows(&rays)?;
    let s = smith(&rt, m, fan.rank);
    let quotient = quotient_fan(&host, &costring, &ambient)?;
    Ok(CoxData {
        free_rank: m - s.rank(),
        torsion: divisors_above_one(&s.divisors()),
        geometric: fan.is_simplicial(),
        rays,
        ambient,
        host,
        costring,
        quotient,
    })
}

/// Linear functionals `m_σ`, one per maximal cone in `maximal_cones()` order,
/// defining a strictly convex piecewise linear function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityCertificate {
    pub functionals: Vec<Vector>,
    pub slack: Rational,
}

/// Exact LP test for a strictly convex support function. Across each wall
/// `σ ∩ τ` the pieces agree on the wall and `⟨m_τ − m_σ, r⟩ ≥ t` for every
/// ray `r` of τ off the wall; the fan is projective iff the optimum `t` is
/// positive.
pub fn is_projective_fan(fan: &LatticeFan) -> Result<(bool, Option<ProjectivityCertificate>)> {
    if !fan.complete {
        return Err(Error::NotComplete);
    }
    if fan.is_simplicial() {
        projective_simplicial(fan)
    } else {
        projective_by_functionals(fan)
    }
}

/// One functional per maximal cone; works for any complete fan.
fn projective_by_functionals(fan: &LatticeFan) -> Result<(bool, Option<ProjectivityCertificate>)> {
    let n = fan.rank;
    let maximal: Vec<&Cone> = fan.maximal_cones();
    let k = maximal.len();
    let nv = k * n + 1;
    let t = nv - 1;
    let mut lp = LinearProgram::new(nv);
    let row = |s: usize, tau: usize, r: &[Rational]| -> Vector {
        let mut c = vec![Rational::zero(); nv];
        for j in 0..n {
            c[tau * n + j] += r[j].clone();
            c[s * n + j] -= r[j].clone();
        }
        c
    };
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            // Cones of a fan are pointed and meet in a common face, so the
            // wall is spanned by the shared rays.
            let wall: Vec<&Vector> = maximal[b].rays().iter().filter(|r| maximal[a].rays().contains(r)).collect();
            let owned: Vec<Vector> = wall.iter().map(|r| (*r).clone()).collect();
            if linalg::rank(&owned, n) + 1 != n {
                continue;
            }
            if a < b {
                for r in &wall {
                    lp.add(row(a, b, r), Relation::Eq, Rational::zero());
                }
            }
            for r in maximal[b].rays().iter().filter(|r| !wall.contains(r)) {
                let mut c = row(a, b, r);
                c[t] = -Rational::one();
                lp.add(c, Relation::Ge, Rational::zero());
            }
        }
    }
    let mut cap = vec![Rational::zero(); nv];
    cap[t] = Rational::one();
    lp.add(cap.clone(), Relation::Le, Rational::one());
    lp.maximize(cap);
    match lp.solve() {
        LpOutcome::Optimal { value, x } if value.is_positive() => {
            let functionals = (0..k).map(|s| x[s * n..(s + 1) * n].to_vec()).collect();
            Ok((true, Some(ProjectivityCertificate { functionals, slack: value })))
        }
        _ => Ok((false, None)),
    }
}

/// On a simplicial fan a piecewise linear function is its values `h` on the
/// rays. Across a wall of `σ` with opposite ray `r = Σ β_i ρ_i` (ρ_i the rays
/// of σ), convexity reads `h_r − Σ β_i h_i ≥ t`.
fn projective_simplicial(fan: &LatticeFan) -> Result<(bool, Option<ProjectivityCertificate>)> {
    let n = fan.rank;
    let rays = fan.rays();
    let maximal = fan.cone_indices().into_iter().filter(|c| c.len() == n).collect::<Vec<_>>();
    let nv = rays.len() + 1;
    let t = nv - 1;
    let mut lp = LinearProgram::new(nv);
    // Columns ρ_i of each maximal cone, for solving r = Σ β_i ρ_i.
    let bases: Vec<Matrix> = maximal
        .iter()
        .map(|c| Matrix::from_rows(&c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(), n).map(|m| m.transpose()))
        .collect::<Result<_>>()?;
    for (a, sa) in maximal.iter().enumerate() {
        for sb in &maximal {
            let shared = sa.iter().filter(|i| sb.contains(i)).count();
            if shared + 1 != n {
                continue;
            }
            let r = *sb.iter().find(|i| !sa.contains(i)).expect("one ray off the wall");
            let beta = linalg::solve(&bases[a], &rays[r]).expect("maximal simplicial cone spans");
            let mut row = vec![Rational::zero(); nv];
            row[r] += Rational::one();
            for (i, b) in sa.iter().zip(&beta) {
                row[*i] -= b.clone();
            }
            row[t] = -Rational::one();
            lp.add(row, Relation::Ge, Rational::zero());
        }
    }
    let mut cap = vec![Rational::zero(); nv];
    cap[t] = Rational::one();
    lp.add(cap.clone(), Relation::Le, Rational::one());
    lp.maximize(cap);
    match lp.solve() {
        LpOutcome::Optimal { value, x } if value.is_positive() => {
            // m_σ solves ⟨m_σ, ρ_i⟩ = h_i on the rays of σ.
            let functionals = fan
                .maximal_cones()
                .iter()
                .map(|c| {
                    let idx: Vec<usize> = c.rays().iter().map(|r| rays.iter().position(|q| q == r).expect("ray")).collect();
                    let m = Matrix::from_rows(c.rays(), n)?;
                    let h: Vector = idx.iter().map(|&i| x[i].clone()).collect();
                    Ok(linalg::solve(&m, &h).expect("simplicial cone rays are independent"))
                })
                .collect::<Result<_>>()?;
            Ok((true, Some(ProjectivityCertificate { functionals, slack: value })))
        }
        _ => Ok((false, None)),
    }
}

/// Oriented hyperplanes spanned by the codimension-one cones, and the
/// refinement of the fan by all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub hyperplanes: Vec<Vector>,
    pub extended: Fan,
}

pub fn span_arrangement(fan: &LatticeFan) -> Result<Arrangement> {
    if !fan.complete {
        return Err(Error::NotComplete);
    }
    let n = fan.rank;
    let mut set: BTreeSet<Vector> = BTreeSet::new();
    for c in fan.fan.cones().iter().filter(|c| c.dim() + 1 == n) {
        let normal = nullspace(c.rays(), n);
        debug_assert_eq!(normal.len(), 1);
        set.insert(primitive_oriented(&normal[0]));
    }
    let hyperplanes: Vec<Vector> = set.into_iter().collect();
    let mut parts = vec![fan.fan.clone()];
    for h in &hyperplanes {
        let up = Cone::from_inequalities(n, std::slice::from_ref(h), &[]);
        let down = Cone::from_inequalities(n, &[h.iter().map(|x| -x).collect()], &[]);
        parts.push(Fan::new(n, vec![up, down]));
    }
    Ok(Arrangement { extended: common_refinement(&parts)?, hyperplanes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
    /// Meets both open sides.
    Both,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_positive() {
            Sign::Plus
        } else if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            s => s,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Zero => "0",
            Sign::Minus => "-",
            Sign::Both => "u",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn sign_string(v: &[Sign]) -> String {
    v.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedSignVector {
    pub entries: Vec<Sign>,
    #[serde(skip)]
    pub cone: Cone,
}

fn cone_sign(cone: &Cone, h: &[Rational]) -> Sign {
    let mut signs: BTreeSet<Sign> = cone.rays().iter().map(|r| Sign::of(&dot(h, r))).collect();
    for l in cone.lineality_basis() {
        let s = Sign::of(&dot(h, l));
        signs.insert(s);
        signs.insert(s.neg());
    }
    signs.remove(&Sign::Zero);
    match (signs.contains(&Sign::Plus), signs.contains(&Sign::Minus)) {
        (false, false) => Sign::Zero,
        (true, false) => Sign::Plus,
        (false, true) => Sign::Minus,
        (true, true) => Sign::Both,
    }
}

/// One vector per cone of `fan`, in fan order.
pub fn generalized_sign_vectors(fan: &LatticeFan, arr: &Arrangement) -> Result<Vec<GeneralizedSignVector>> {
    if arr.extended.ambient_dim() != fan.rank || arr.hyperplanes.iter().any(|h| h.len() != fan.rank) {
        return Err(Error::ArrangementMismatch);
    }
    Ok(fan
        .fan
        .cones()
        .iter()
        .map(|c| GeneralizedSignVector { entries: arr.hyperplanes.iter().map(|h| cone_sign(c, h)).collect(), cone: c.clone() })
        .collect())
}

/// Sign vectors of the cones of the extended fan: the covectors of its
/// oriented matroid.
pub fn covectors(arr: &Arrangement) -> BTreeSet<Vec<Sign>> {
    arr.extended
        .cones()
        .iter()
        .map(|c| {
            let p = c.relint_point();
            arr.hyperplanes.iter().map(|h| Sign::of(&dot(h, &p))).collect()
        })
        .collect()
}

/// Replaces each `u` by every sign and keeps the realized covectors.
pub fn canonical_extension(vectors: &[Vec<Sign>], arr: &Arrangement) -> Result<BTreeSet<Vec<Sign>>> {
    let k = arr.hyperplanes.len();
    if vectors.iter().any(|v| v.len() != k) {
        return Err(Error::ArrangementMismatch);
    }
    let realized = covectors(arr);
    Ok(realized
        .into_iter()
        .filter(|w| vectors.iter().any(|v| v.iter().zip(w).all(|(a, b)| *a == Sign::Both || a == b)))
        .collect())
}

fn compose(x: &[Sign], y: &[Sign]) -> Vec<Sign> {
    x.iter().zip(y).map(|(&a, &b)| if a == Sign::Zero { b } else { a }).collect()
}

/// Violations of the covector axioms: zero vector, symmetry, composition and
/// elimination.
pub fn covector_axiom_violations(set: &BTreeSet<Vec<Sign>>) -> Vec<String> {
    let mut out = Vec::new();
    let Some(k) = set.iter().next().map(Vec::len) else {
        return vec!["empty set".into()];
    };
    if !set.contains(&vec![Sign::Zero; k]) {
        out.push("zero vector missing".into());
    }
    for x in set {
        if !set.contains(&x.iter().map(|s| s.neg()).collect::<Vec<_>>()) {
            out.push(format!("negation of {} missing", sign_string(x)));
        }
        for y in set {
            let xy = compose(x, y);
            if !set.contains(&xy) {
                out.push(format!("composition {}∘{} missing", sign_string(x), sign_string(y)));
            }
            let sep: Vec<usize> = (0..k).filter(|&e| x[e] != Sign::Zero && x[e] == y[e].neg()).collect();
            for &e in &sep {
                let ok = set.iter().any(|z| {
                    z[e] == Sign::Zero && (0..k).filter(|f| !sep.contains(f)).all(|f| z[f] == xy[f])
                });
                if !ok {
                    out.push(format!("elimination of {} and {} at {e} fails", sign_string(x), sign_string(y)));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignVectorReport {
    pub hyperplanes: Vec<Vec<String>>,
    pub vectors: Vec<String>,
    pub extension: Vec<String>,
    pub covectors: usize,
    pub matches_covectors: bool,
    pub idempotent: bool,
    pub no_all_u: bool,
    pub axiom_violations: Vec<String>,
}

impl SignVectorReport {
    pub fn passed(&self) -> bool {
        self.matches_covectors && self.idempotent && self.no_all_u && self.axiom_violations.is_empty()
    }
}

pub fn sign_vector_report(fan: &LatticeFan) -> Result<SignVectorReport> {
    let arr = span_arrangement(fan)?;
    let gsv = generalized_sign_vectors(fan, &arr)?;
    let raw: Vec<Vec<Sign>> = gsv.iter().map(|g| g.entries.clone()).collect();
    let ext = canonical_extension(&raw, &arr)?;
    let ext_list: Vec<Vec<Sign>> = ext.iter().cloned().collect();
    let again = canonical_extension(&ext_list, &arr)?;
    let cov = covectors(&arr);
    Ok(SignVectorReport {
        hyperplanes: arr.hyperplanes.iter().map(|h| format_vec(h)).collect(),
        vectors: raw.iter().map(|v| sign_string(v)).collect(),
        extension: ext.iter().map(|v| sign_string(v)).collect(),
        covectors: cov.len(),
        matches_covectors: ext == cov,
        idempotent: again == ext,
        no_all_u: raw.iter().all(|v| v.is_empty() || v.iter().any(|s| *s != Sign::Both)),
        axiom_violations: covector_axiom_violations(&ext),
    })
}

/// For every locally coherent costring Δ of the normal fan Δ(P), checks
/// that the fiber fan Γ* refines `π∨(Δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationReport {
    pub costrings: usize,
    pub failures: Vec<Vec<usize>>,
}

pub fn fiber_fan_domination(pp: &PolytopeProjection, cap: usize) -> Result<DominationReport> {
    let ctx = CostringContext::for_projection(pp);
    let found: Enumeration<Vec<usize>> = ctx.enumerate(cap);
    let all = found.complete(cap)?;
    let gamma = pp.fiber_fan().fan();
    let failures = all.iter().filter(|idx| !gamma.refines(&ctx.image_fan(idx))).cloned().collect();
    Ok(DominationReport { costrings: all.len(), failures })
}

/// `⟨a − b, r⟩`, the jump of a piecewise linear function across a wall.
pub fn functional_gap(a: &[Rational], b: &[Rational], r: &[Rational]) -> Rational {
    dot(&sub(a, b), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ivec;

    fn rays(v: &[&[i64]]) -> Vec<Vector> {
        v.iter().map(|r| ivec(r)).collect()
    }

    pub(crate) fn p2fan() -> LatticeFan {
        LatticeFan::new(2, &rays(&[&[1, 0], &[0, 1], &[-1, -1]]), &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
    }

    fn c2fan() -> LatticeFan {
        LatticeFan::new(2, &rays(&[&[1, 0], &[0, 1]]), &[vec![0, 1]]).unwrap()
    }

    fn cone(v: &[&[i64]]) -> Cone {
        Cone::from_i64_rays(v)
    }

    #[test]
    fn sublattice_projection_for_c2() {
        let s = SublatticeData::from_sublattice(2, &rays(&[&[0, 1]])).unwrap();
        assert_eq!(s.dual_matrix(), Matrix::from_i64(&[&[1, 0]]));
        assert!(s.saturation_torsion.is_empty());
        let t = SublatticeData::from_sublattice(2, &rays(&[&[0, 2]])).unwrap();
        assert_eq!(t.saturation_torsion, vec![BigInt::from(2)]);
        let p = SublatticeData::from_projection(3, &rays(&[&[1, 0, -1], &[0, 1, -1]])).unwrap();
        // Kernel of the P2 ray matrix is the diagonal.
        let k: Vector = p.n1_basis[0].iter().map(|x| Rational::from_integer(x.clone())).collect();
        assert_eq!(primitive_oriented(&k), ivec(&[1, 1, 1]));
    }

    #[test]
    fn c2_quotients() {
        let host = c2fan();
        let sub = SublatticeData::from_sublattice(2, &rays(&[&[0, 1]])).unwrap();
        let expected = LatticeFan::new(1, &rays(&[&[1]]), &[vec![0]]).unwrap();

        let r = quotient_fan(&host, &[cone(&[&[1, 0]]), Cone::zero(2)], &sub).unwrap();
        assert!(r.valid_costring && r.categorical && r.geometric && !r.degenerate);
        assert_eq!(r.quotient_fan.as_ref(), Some(&expected));

        let r = quotient_fan(&host, &[cone(&[&[1, 0], &[0, 1]]), cone(&[&[0, 1]])], &sub).unwrap();
        assert!(r.valid_costring && r.categorical && !r.geometric);
        assert_eq!(r.quotient_fan.as_ref(), Some(&expected));

        let r = quotient_fan(&host, &[cone(&[&[1, 0]]), cone(&[&[0, 1]])], &sub).unwrap();
        assert!(!r.valid_costring && !r.categorical);

        let err = quotient_fan(&host, &[cone(&[&[1, 1]])], &sub).unwrap_err();
        assert_eq!(err, Error::NotASubset);
    }

    #[test]
    fn full_line_image_is_degenerate() {
        let host = LatticeFan::new(2, &rays(&[&[1, 1], &[-1, 1]]), &[vec![0, 1]]).unwrap();
        let sub = SublatticeData::from_sublattice(2, &rays(&[&[0, 1]])).unwrap();
        let top = cone(&[&[1, 1], &[-1, 1]]);
        let r = quotient_fan(&host, &[top], &sub).unwrap();
        assert!(r.degenerate && !r.strongly_convex && !r.categorical && !r.geometric);
        let red = r.reduction.unwrap();
        assert_eq!(red.lineality, vec![ivec(&[1])]);
        assert_eq!(red.fan.ambient_dim(), 0);
        assert_eq!(red.fan.len(), 1);
    }

    #[test]
    fn cox_of_p2() {
        let f = p2fan();
        let cox = cox_construction(&f).unwrap();
        assert_eq!(cox.ambient.rank, 3);
        assert_eq!((cox.free_rank, cox.torsion.len()), (1, 0));
        assert!(cox.geometric && cox.quotient.geometric);
        assert_eq!(cox.quotient.quotient_fan.as_ref(), Some(&f));
    }

    #[test]
    fn cox_of_cone_over_square() {
        let f = LatticeFan::new(3, &rays(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]), &[vec![0, 1, 2, 3]]).unwrap();
        let cox = cox_construction(&f).unwrap();
        assert!(!cox.geometric);
        assert!(cox.quotient.categorical && !cox.quotient.geometric);
        assert_eq!(cox.quotient.quotient_fan.as_ref(), Some(&f));
        assert_eq!(cox.free_rank, 1);
    }

    #[test]
    fn cox_rank_one() {
        let err = LatticeFan::new(1, &rays(&[&[2]]), &[vec![0]]).unwrap_err();
        assert!(matches!(err, Error::NonPrimitiveRay(_)));
        let f = LatticeFan::new(1, &rays(&[&[1]]), &[vec![0]]).unwrap();
        let cox = cox_construction(&f).unwrap();
        assert_eq!((cox.free_rank, cox.torsion.len()), (0, 0));
        assert_eq!(cox.quotient.quotient_fan.as_ref(), Some(&f));
    }

    #[test]
    fn projective_line_group() {
        let f = LatticeFan::new(1, &rays(&[&[1], &[-1]]), &[vec![0], vec![1]]).unwrap();
        let cox = cox_construction(&f).unwrap();
        assert_eq!((cox.free_rank, cox.torsion.len()), (1, 0));
    }

    #[test]
    fn torsion_from_cokernel() {
        // Rays (1,0),(1,2) span a sublattice of index 2.
        let f = LatticeFan::new(2, &rays(&[&[1, 0], &[1, 2]]), &[vec![0, 1]]).unwrap();
        let cox = cox_construction(&f).unwrap();
        assert_eq!(cox.free_rank, 0);
        assert_eq!(cox.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn octahedron_normal_fan_is_projective_and_not_simplicial() {
        let rays: Vec<Vector> = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1], [-1, 1, 1], [-1, 1, -1], [-1, -1, 1], [-1, -1, -1]]
            .iter()
            .map(|r| ivec(r))
            .collect();
        // Cube faces, each listing the four corners with a fixed coordinate sign.
        let faces: Vec<Vec<usize>> = (0..3)
            .flat_map(|axis| {
                [1i64, -1].map(|sign| (0..8).filter(|&i| rays[i][axis] == Rational::from_integer(sign.into())).collect())
            })
            .collect();
        let fan = LatticeFan::new(3, &rays, &faces).unwrap();
        assert!(fan.is_complete() && !fan.is_simplicial());
        let (projective, cert) = is_projective_fan(&fan).unwrap();
        assert!(projective && cert.unwrap().functionals.len() == 6);
    }

    #[test]
    fn both_projectivity_formulations_agree() {
        let a = crate::secondary::tests::moae();
        for t in crate::secondary::enumerate_triangulations(&a, 1_000_000).unwrap() {
            let fan = crate::secondary::fan_of_triangulation(&a, &t).unwrap();
            assert_eq!(projective_simplicial(&fan).unwrap().0, projective_by_functionals(&fan).unwrap().0, "{}", t.label());
        }
    }

    #[test]
    fn p2_is_projective() {
        let f = p2fan();
        let (ok, cert) = is_projective_fan(&f).unwrap();
        assert!(ok);
        let cert = cert.unwrap();
        assert!(cert.slack.is_positive());
        // Oracle: the certificate is strictly convex across each wall.
        let maximal = f.maximal_cones();
        for a in 0..maximal.len() {
            for b in 0..maximal.len() {
                if a != b {
                    for r in maximal[b].rays().iter().filter(|r| !maximal[a].contains(r)) {
                        assert!(functional_gap(&cert.functionals[b], &cert.functionals[a], r).is_positive());
                    }
                }
            }
        }
    }

    #[test]
    fn incomplete_fan_is_rejected() {
        assert_eq!(is_projective_fan(&c2fan()).unwrap_err(), Error::NotComplete);
        assert_eq!(span_arrangement(&c2fan()).unwrap_err(), Error::NotComplete);
    }

    #[test]
    fn p2_arrangement_and_sign_vectors() {
        let f = p2fan();
        let arr = span_arrangement(&f).unwrap();
        assert_eq!(arr.hyperplanes, rays(&[&[0, 1], &[1, -1], &[1, 0]]));
        assert_eq!(arr.extended.maximal_cones().len(), 6);
        let gsv = generalized_sign_vectors(&f, &arr).unwrap();
        let top = gsv.iter().find(|g| g.cone == cone(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(top.entries[1], Sign::Both);
        let e1 = gsv.iter().find(|g| g.cone == cone(&[&[1, 0]])).unwrap();
        assert_eq!(e1.entries[0], Sign::Zero);
        let report = sign_vector_report(&f).unwrap();
        assert_eq!(report.covectors, 13);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn square_normal_fan_arrangement_is_itself() {
        let f = LatticeFan::new(
            2,
            &rays(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]),
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        let arr = span_arrangement(&f).unwrap();
        assert_eq!(arr.hyperplanes.len(), 2);
        assert_eq!(&arr.extended, f.fan());
        assert!(is_projective_fan(&f).unwrap().0);
    }

    #[test]
    fn axiom_checker_flags_a_broken_set() {
        let set: BTreeSet<Vec<Sign>> = [vec![Sign::Zero], vec![Sign::Plus]].into_iter().collect();
        assert!(!covector_axiom_violations(&set).is_empty());
    }

    #[test]
    fn domination_on_square() {
        let pp = crate::chamber::tests::sq();
        let r = fiber_fan_domination(&pp, 10_000).unwrap();
        assert!(r.costrings >= 3 && r.failures.is_empty(), "{r:?}");
    }
}
