//! Batch front end behind the `fiberfan` binary.
//!
//! Every command writes one JSON report `{"schema": 1, "command", "input",
//! "result"}` (plus `"pass"` for predicates). Reports carry no timings and
//! list everything in a fixed order, so output bytes depend only on the input.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chamber::{CellJson, ConeJson, PolytopeProjection};
use crate::csp::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{parse_faces, parse_vector, parse_vectors, Document, Kind, SCHEMA};
use crate::polyhedron::Cone;
use crate::polytope::Face;
use crate::rational::format_vec;
use crate::secondary::{classified_triangulations, enumerate_triangulations, flip_graph, secondary_fan};
use crate::strings::Duality;
use crate::toric::{cox_construction, is_projective_fan, quotient_fan, sign_vector_report, LatticeFan, SublatticeData};
use crate::verify::{duality_suite, fan_suite, triangulation_suite};

/// Point configurations up to this size also get the string/costring suite.
pub const DUALITY_SUITE_MAX_POINTS: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "fiberfan", version, about = "Exact fiber fans, strings, quotient fans and secondary fans")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for per-candidate checks (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Search-node budget for enumerations; overrides FIBERFAN_CAP.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write a Graphviz graph (chambers, fiberfan, secondary, flips).
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// JSON input document.
    pub file: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct FacesArg {
    #[command(flatten)]
    pub input: Input,
    /// Label sets, e.g. "0,1;1,2;2".
    #[arg(long)]
    pub faces: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum What {
    CoherentStrings,
    Strings,
    CoherentCostrings,
    Costrings,
    VirtualCells,
    VirtualCones,
    Triangulations,
    FineTriangulations,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Face lattice of a polytope (of conv(points) lifted to a simplex for point input).
    Faces(Input),
    /// Normal cone of every nonempty face.
    Normalfan(Input),
    /// Chamber complex Γ of a projection.
    Chambers(Input),
    /// Fiber fan Γ* of a projection.
    Fiberfan(Input),
    /// Coherent string selected by a generic covector.
    String {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
    },
    /// Coherent costring of the cell containing a point of Q.
    Costring {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Is the face set a locally coherent string?
    CheckLcs(FacesArg),
    /// Is the face set (via normal cones) a locally coherent costring?
    CheckLcc(FacesArg),
    /// Is the face set a virtual cell?
    CheckVcell(FacesArg),
    /// Is the face set (via normal cones) a virtual cone?
    CheckVcone(FacesArg),
    /// List all objects of one kind.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Quotient fans π∨(Δ) for subsets Δ of a fan.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Cones named by 1-based ray digits, e.g. "σ12,σ2"; overrides the file's deltas.
        #[arg(long)]
        delta: Option<String>,
        /// Sublattice basis, e.g. "(0,1)"; overrides the file's sublattice.
        #[arg(long, allow_hyphen_values = true)]
        sublattice: Option<String>,
    },
    /// Cox presentation of a fan.
    Cox(Input),
    /// Is a complete fan projective? Prints a certificate when it is.
    Projective(Input),
    /// Triangulations with regularity and the secondary fan.
    Secondary(Input),
    /// Bistellar flip graph of all triangulations.
    Flips(Input),
    /// Generalized sign vectors of a complete fan.
    Signvectors(Input),
    /// Every invariant suite that applies to the input.
    VerifyAll(Input),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Faces(_) => "faces",
            Command::Normalfan(_) => "normalfan",
            Command::Chambers(_) => "chambers",
            Command::Fiberfan(_) => "fiberfan",
            Command::String { .. } => "string",
            Command::Costring { .. } => "costring",
            Command::CheckLcs(_) => "check-lcs",
            Command::CheckLcc(_) => "check-lcc",
            Command::CheckVcell(_) => "check-vcell",
            Command::CheckVcone(_) => "check-vcone",
            Command::Enumerate { .. } => "enumerate",
            Command::Quotient { .. } => "quotient",
            Command::Cox(_) => "cox",
            Command::Projective(_) => "projective",
            Command::Secondary(_) => "secondary",
            Command::Flips(_) => "flips",
            Command::Signvectors(_) => "signvectors",
            Command::VerifyAll(_) => "verify-all",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::Faces(i)
            | Command::Normalfan(i)
            | Command::Chambers(i)
            | Command::Fiberfan(i)
            | Command::Cox(i)
            | Command::Projective(i)
            | Command::Secondary(i)
            | Command::Flips(i)
            | Command::Signvectors(i)
            | Command::VerifyAll(i) => &i.file,
            Command::String { input, .. }
            | Command::Costring { input, .. }
            | Command::Enumerate { input, .. }
            | Command::Quotient { input, .. } => &input.file,
            Command::CheckLcs(f) | Command::CheckLcc(f) | Command::CheckVcell(f) | Command::CheckVcone(f) => {
                &f.input.file
            }
        }
    }

    fn draws_graph(&self) -> bool {
        matches!(self, Command::Chambers(_) | Command::Fiberfan(_) | Command::Secondary(_) | Command::Flips(_))
    }
}

/// A finished report: JSON text, optional DOT text, and whether the
/// command's predicate held (`true` for commands without one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub json: String,
    pub dot: Option<String>,
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            2
        }
    }
}

/// `--cap`, else `FIBERFAN_CAP`, else the library default.
pub fn resolve_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("FIBERFAN_CAP") {
        Ok(s) => s.trim().parse().map_err(|e| Error::Parse(format!("FIBERFAN_CAP={s:?}: {e}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn face_labels(fs: &BTreeSet<Face>) -> Vec<Vec<usize>> {
    fs.iter().map(Face::labels).collect()
}

fn cone_value(c: &Cone) -> Value {
    to_value(&ConeJson::from(c))
}

fn fan_value(f: &LatticeFan) -> Value {
    json!({
        "rays": f.rays().iter().map(|r| format_vec(r)).collect::<Vec<_>>(),
        "cones": f.cone_indices(),
    })
}

fn face_set(pp: &PolytopeProjection, labels: &str) -> Result<BTreeSet<Face>> {
    parse_faces(labels)?
        .into_iter()
        .map(|labels| {
            let f = Face::from_labels(labels.iter().copied());
            if pp.face_index(f).is_some() {
                Ok(f)
            } else {
                Err(Error::NotAFace(labels))
            }
        })
        .collect()
}

/// Hasse diagram of a poset given by `le` on `0..n`.
fn hasse(n: usize, le: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && le(a, b) && !(0..n).any(|c| c != a && c != b && le(a, c) && le(c, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Runs one command on a parsed document.
pub fn execute(command: &Command, doc: &Document, cap: usize) -> Result<(Value, Option<Graph>, Option<bool>)> {
    let kind = doc.kind()?;
    Ok(match command {
        Command::Faces(_) => {
            let p = doc.polytope()?;
            let lattice = p.face_lattice();
            let faces: Vec<Value> = lattice
                .faces()
                .iter()
                .map(|f| json!({"labels": f.labels(), "dim": lattice.dim_of(*f)}))
                .collect();
            (json!({"f_vector": lattice.f_vector(), "faces": faces, "hasse_edges": lattice.hasse_edges()}), None, None)
        }
        Command::Normalfan(_) => {
            let p = doc.polytope()?;
            let cones = p
                .face_lattice()
                .nonempty()
                .map(|f| Ok(json!({"face": f.labels(), "cone": cone_value(&p.normal_cone(f)?)})))
                .collect::<Result<Vec<_>>>()?;
            (json!({"cones": cones}), None, None)
        }
        Command::Chambers(_) => {
            let pp = doc.projection()?;
            let gamma = pp.chamber_complex();
            let cells: Vec<CellJson> = gamma.cells().iter().map(CellJson::from).collect();
            let result = json!({"cells": cells, "chambers": gamma.chambers(), "hasse_edges": gamma.hasse_edges()});
            (result, Some(pp.chamber_adjacency()), None)
        }
        Command::Fiberfan(_) => {
            let pp = doc.projection()?;
            let gs = pp.fiber_fan();
            let cones: Vec<Value> = gs
                .cones()
                .iter()
                .map(|c| json!({"cone": cone_value(&c.cone), "members": c.members, "witness": format_vec(&c.witness)}))
                .collect();
            let edges = hasse(gs.len(), |a, b| gs.le(a, b));
            let g = Graph::new((0..gs.len()).map(|i| format!("σ{i}")).collect(), edges.clone());
            (json!({"cones": cones, "maximal": gs.maximal(), "hasse_edges": edges}), Some(g), None)
        }
        Command::String { witness, .. } => {
            let pp = doc.projection()?;
            let psi = parse_vector(witness)?;
            let s = pp.coherent_string(&psi)?;
            let result = json!({
                "witness": format_vec(&psi),
                "faces": face_labels(&s.faces),
                "tight": pp.is_tight_string(&s.faces),
                "locally_coherent": pp.is_locally_coherent_string(&s.faces),
            });
            (result, None, None)
        }
        Command::Costring { point, .. } => {
            let pp = doc.projection()?;
            let q = parse_vector(point)?;
            let cell = pp.cell_of(&q)?;
            let idx = pp.chamber_complex().index_of(&cell.defining_faces).ok_or(Error::CellNotInComplex)?;
            let faces = pp.coherent_costring_faces(idx);
            let cones: Vec<Value> = faces.iter().map(|f| cone_value(pp.normal_cone(*f))).collect();
            let d = Duality::new(&pp);
            let result = json!({
                "point": format_vec(&q),
                "cell": idx,
                "faces": face_labels(&faces),
                "cones": cones,
                "tight": d.is_tight_costring(&faces),
            });
            (result, None, None)
        }
        Command::CheckLcs(a) => {
            let pp = doc.projection()?;
            let fs = face_set(&pp, &a.faces)?;
            let v = pp.validate_string_subdivision(&fs);
            let pass = v.pass;
            (json!({"faces": face_labels(&fs), "verdict": v, "tight": pp.is_tight_string(&fs)}), None, Some(pass))
        }
        Command::CheckLcc(a) => {
            let pp = doc.projection()?;
            let fs = face_set(&pp, &a.faces)?;
            let d = Duality::new(&pp);
            let idx: Vec<usize> = fs.iter().map(|f| pp.face_index(*f).expect("checked")).collect();
            let v = d.costring_context().check_indices(&idx);
            let pass = v.pass;
            (json!({"faces": face_labels(&fs), "verdict": v, "tight": d.is_tight_costring(&fs)}), None, Some(pass))
        }
        Command::CheckVcell(a) => {
            let pp = doc.projection()?;
            let fs = face_set(&pp, &a.faces)?;
            let pass = Duality::new(&pp).is_virtual_cell(&fs);
            (json!({"faces": face_labels(&fs), "virtual_cell": pass}), None, Some(pass))
        }
        Command::CheckVcone(a) => {
            let pp = doc.projection()?;
            let fs = face_set(&pp, &a.faces)?;
            let pass = Duality::new(&pp).is_virtual_cone(&fs);
            (json!({"faces": face_labels(&fs), "virtual_cone": pass}), None, Some(pass))
        }
        Command::Enumerate { what, .. } => (enumerate(doc, *what, cap)?, None, None),
        Command::Quotient { delta, sublattice, .. } => (quotient(doc, delta.as_deref(), sublattice.as_deref())?, None, None),
        Command::Cox(_) => {
            let fan = doc.lattice_fan()?;
            let cox = cox_construction(&fan)?;
            let result = json!({
                "rays": cox.rays.iter().map(|r| format_vec(r)).collect::<Vec<_>>(),
                "coordinate_cones": fan.cone_indices(),
                "ambient": cox.ambient,
                "free_rank": cox.free_rank,
                "torsion": cox.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "geometric": cox.geometric,
                "tight": cox.quotient.tight,
                "round_trip": cox.quotient.quotient_fan.as_ref() == Some(&fan),
            });
            (result, None, None)
        }
        Command::Projective(_) => {
            let fan = doc.lattice_fan()?;
            let (projective, cert) = is_projective_fan(&fan)?;
            let certificate = cert.map(|c| {
                json!({
                    "functionals": c.functionals.iter().map(|f| format_vec(f)).collect::<Vec<_>>(),
                    "slack": crate::rational::format_rational(&c.slack),
                })
            });
            (json!({"projective": projective, "certificate": certificate}), None, Some(projective))
        }
        Command::Secondary(_) => {
            let a = doc.point_configuration()?;
            let ts = classified_triangulations(&a, cap)?;
            let report = secondary_fan(&a, &ts)?;
            let g = flip_graph(&a, &ts);
            let pass = report.bijective;
            let result = json!({
                "triangulations": ts.iter().map(|t| json!({"label": t.label(), "simplices": t.simplices, "regularity": t.regularity})).collect::<Vec<_>>(),
                "secondary": report,
            });
            (result, Some(g), Some(pass))
        }
        Command::Flips(_) => {
            let a = doc.point_configuration()?;
            let ts = enumerate_triangulations(&a, cap)?;
            let g = flip_graph(&a, &ts);
            let degrees: Vec<usize> = (0..g.nodes.len()).map(|v| g.degree(v)).collect();
            (json!({"graph": g, "degrees": degrees, "connected": g.is_connected()}), Some(g), None)
        }
        Command::Signvectors(_) => {
            let r = sign_vector_report(&doc.lattice_fan()?)?;
            let pass = r.passed();
            (to_value(&r), None, Some(pass))
        }
        Command::VerifyAll(_) => {
            let (v, pass) = verify_all(doc, kind, cap)?;
            (v, None, Some(pass))
        }
    })
}

fn enumerate(doc: &Document, what: What, cap: usize) -> Result<Value> {
    if matches!(what, What::Triangulations | What::FineTriangulations) {
        let a = doc.point_configuration()?;
        let ts = if what == What::Triangulations {
            crate::secondary::enumerate_triangulations(&a, cap)?
        } else {
            crate::secondary::enumerate_fine_triangulations(&a, cap)?
        };
        let items: Vec<Value> = ts.iter().map(|t| json!({"label": t.label(), "simplices": t.simplices})).collect();
        return Ok(json!({"count": items.len(), "items": items}));
    }
    let pp = doc.projection()?;
    let d = Duality::new(&pp);
    let sets: Vec<BTreeSet<Face>> = match what {
        What::CoherentStrings => d.coherent_strings().to_vec(),
        What::CoherentCostrings => d.coherent_costrings().to_vec(),
        What::Strings => pp.enumerate_locally_coherent_strings(cap).complete(cap)?.into_iter().map(|c| c.faces).collect(),
        What::Costrings => d.enumerate_locally_coherent_costrings(cap).complete(cap)?,
        What::VirtualCells => d.enumerate_virtual_cells(cap).complete(cap)?,
        What::VirtualCones => d.enumerate_virtual_cones(cap).complete(cap)?,
        What::Triangulations | What::FineTriangulations => unreachable!(),
    };
    let tight = |s: &BTreeSet<Face>| match what {
        What::Strings | What::CoherentStrings => Some(pp.is_tight_string(s)),
        What::Costrings | What::CoherentCostrings => Some(d.is_tight_costring(s)),
        _ => None,
    };
    let items: Vec<Value> = sets.iter().map(|s| json!({"faces": face_labels(s), "tight": tight(s)})).collect();
    Ok(json!({"count": items.len(), "items": items}))
}

fn sublattice_for(doc: &Document, flag: Option<&str>) -> Result<SublatticeData> {
    match flag {
        Some(s) => SublatticeData::from_sublattice(doc.rank()?, &parse_vectors(s)?),
        None => doc.sublattice()?.ok_or_else(|| Error::Schema("quotient needs a sublattice (file or --sublattice)".into())),
    }
}

fn quotient(doc: &Document, delta: Option<&str>, sublattice: Option<&str>) -> Result<Value> {
    let fan = doc.lattice_fan()?;
    let sub = sublattice_for(doc, sublattice)?;
    let names: Vec<String> = match delta {
        Some(d) => vec![d.to_string()],
        None if !doc.deltas.is_empty() => doc.deltas.clone(),
        None => return Err(Error::Schema("quotient needs deltas (file or --delta)".into())),
    };
    let mut reports = Vec::new();
    for name in names {
        let cones = doc.named_cones(&name)?;
        let r = quotient_fan(&fan, &cones, &sub)?;
        reports.push(json!({
            "delta": name,
            "valid_costring": r.valid_costring,
            "reason": r.reason,
            "strongly_convex": r.strongly_convex,
            "tight": r.tight,
            "categorical": r.categorical,
            "geometric": r.geometric,
            "degenerate": r.degenerate,
            "image_fan": r.image_fan.cones().iter().map(cone_value).collect::<Vec<_>>(),
            "quotient_fan": r.quotient_fan.as_ref().map(fan_value),
            "reduction": r.reduction.as_ref().map(|x| json!({
                "lineality": x.lineality.iter().map(|v| format_vec(v)).collect::<Vec<_>>(),
                "map": x.map.row_vecs().iter().map(|v| format_vec(v)).collect::<Vec<_>>(),
                "fan": x.fan.cones().iter().map(cone_value).collect::<Vec<_>>(),
            })),
        }));
    }
    Ok(json!({"sublattice": sub, "quotients": reports}))
}

fn verify_all(doc: &Document, kind: Kind, cap: usize) -> Result<(Value, bool)> {
    match kind {
        Kind::Projection => {
            let s = duality_suite(&doc.projection()?, cap)?;
            Ok((json!({"duality": s}), s.passed()))
        }
        Kind::Points => {
            let a = doc.point_configuration()?;
            let t = triangulation_suite(&a, cap)?;
            let mut pass = t.passed();
            let duality = if a.len() <= DUALITY_SUITE_MAX_POINTS {
                let s = duality_suite(&doc.projection()?, cap)?;
                pass &= s.passed();
                Some(s)
            } else {
                None
            };
            Ok((json!({"triangulations": t, "duality": duality}), pass))
        }
        Kind::Fan => {
            let fan = doc.lattice_fan()?;
            let sub = doc.sublattice()?;
            let deltas = doc
                .deltas
                .iter()
                .map(|n| Ok((n.clone(), doc.named_cones(n)?)))
                .collect::<Result<Vec<(String, Vec<Cone>)>>>()?;
            let s = fan_suite(&fan, sub.as_ref(), &deltas)?;
            Ok((json!({"fan": s}), s.passed()))
        }
        Kind::Polytope | Kind::Matrix => {
            Err(Error::Schema("verify-all needs vertices + matrix, points, or rays + cones".into()))
        }
    }
}

/// Parses, runs and renders a command. Worker threads come from `--threads`.
pub fn run(cli: &Cli) -> Result<Outcome> {
    if cli.dot.is_some() && !cli.command.draws_graph() {
        return Err(Error::Schema(format!("--dot is not available for {}", cli.command.name())));
    }
    let cap = resolve_cap(cli.cap)?;
    let doc = Document::read(cli.command.file())?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    let (result, graph, pass) = pool.install(|| execute(&cli.command, &doc, cap))?;
    Ok(render(cli.command.name(), &doc.name, result, graph, pass))
}

pub fn render(command: &str, input: &str, result: Value, graph: Option<Graph>, pass: Option<bool>) -> Outcome {
    let mut report = json!({"schema": SCHEMA, "command": command, "input": input, "result": result});
    if let Some(p) = pass {
        report["pass"] = json!(p);
    }
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    Outcome { json: text, dot: graph.map(|g| g.to_dot(input)), pass: pass.unwrap_or(true) }
}
