//! JSON codecs for point sets and packings.
//!
//! Writers produce a fixed layout so identical values give identical bytes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geom::{GeomError, Point, PointSet};
use crate::packing::{EdgeRef, GraphStructure, Ground, Packing, StructureKind};
use crate::wheel::WheelConfig;

pub const POINTS_FORMAT: &str = "plane-packing/points";
pub const PACKING_FORMAT: &str = "plane-packing/packing";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("format error at {field}: {message}")]
    Format { field: String, message: String },
    #[error("general position violated: {0}")]
    GeneralPosition(GeomError),
    #[error("member {member} edge {edge} references vertex {vertex}, but there are only {n} vertices")]
    DanglingIndex { member: usize, edge: usize, vertex: usize, n: usize },
    #[error("point-set digest mismatch: packing records {expected}, points hash to {found}")]
    DigestMismatch { expected: String, found: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn format_err(field: impl Into<String>, message: impl Into<String>) -> CodecError {
    CodecError::Format { field: field.into(), message: message.into() }
}

fn json_err(e: serde_json::Error) -> CodecError {
    format_err(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

/// How a packing was produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub method: String,
    pub seed: Option<u64>,
    pub k: Option<usize>,
    /// Path of the point-set file the packing was computed from.
    pub input: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingDoc {
    pub packing: Packing,
    pub provenance: Provenance,
    /// When set, the ground set is stored by reference to this file instead
    /// of being embedded.
    pub points_file: Option<String>,
}

/// Canonical text hashed by [`digest`].
fn canonical(ground: &Ground) -> String {
    match ground {
        Ground::Wheel(w) => format!("wheel {}\n", w.n()),
        Ground::Points(s) => {
            let mut out = format!("points {}\n", s.len());
            for p in s.points() {
                let _ = writeln!(out, "{} {}", p.x, p.y);
            }
            out
        }
    }
}

/// `sha256:` followed by the hex digest of the canonical encoding.
pub fn digest(ground: &Ground) -> String {
    let hash = Sha256::digest(canonical(ground).as_bytes());
    let mut out = String::from("sha256:");
    for b in hash {
        let _ = write!(out, "{b:02x}");
    }
    out
}

fn ground_body(ground: &Ground, indent: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{indent}\"format\": \"{POINTS_FORMAT}\",");
    let _ = writeln!(out, "{indent}\"version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "{indent}\"n\": {},", ground.vertex_count());
    match ground {
        Ground::Wheel(w) => {
            let _ = writeln!(out, "{indent}\"wheel\": {}", w.n());
        }
        Ground::Points(s) => {
            let _ = writeln!(out, "{indent}\"points\": [");
            let rows: Vec<String> = s.points().iter().map(|p| format!("{indent}  [{}, {}]", p.x, p.y)).collect();
            let _ = writeln!(out, "{}", rows.join(",\n"));
            let _ = writeln!(out, "{indent}]");
        }
    }
    out
}

pub fn pointset_to_string(ground: &Ground) -> String {
    format!("{{\n{}}}\n", ground_body(ground, "  "))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoints {
    format: String,
    version: u32,
    n: usize,
    #[serde(default)]
    points: Option<Vec<[i64; 2]>>,
    #[serde(default)]
    wheel: Option<usize>,
}

fn ground_from_raw(raw: RawPoints, field: &str) -> Result<Ground, CodecError> {
    if raw.format != POINTS_FORMAT {
        return Err(format_err(format!("{field}format"), format!("expected \"{POINTS_FORMAT}\", found \"{}\"", raw.format)));
    }
    if raw.version != FORMAT_VERSION {
        return Err(format_err(format!("{field}version"), format!("unsupported version {}", raw.version)));
    }
    let ground = match (raw.points, raw.wheel) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(format_err(field.trim_end_matches('.'), "exactly one of \"points\" and \"wheel\" is required"))
        }
        (None, Some(n)) => Ground::Wheel(
            WheelConfig::new(n).map_err(|e| format_err(format!("{field}wheel"), e.to_string()))?,
        ),
        (Some(pts), None) => {
            let pts: Vec<Point> = pts.into_iter().map(|[x, y]| Point::new(x, y)).collect();
            Ground::Points(PointSet::new(pts).map_err(|e| match e {
                GeomError::Collinear(..) => CodecError::GeneralPosition(e),
                GeomError::DuplicatePoint { first, second } => format_err(
                    format!("{field}points[{second}]"),
                    format!("repeats point {first}"),
                ),
                other => format_err(format!("{field}points"), other.to_string()),
            })?)
        }
    };
    if ground.vertex_count() != raw.n {
        return Err(format_err(
            format!("{field}n"),
            format!("declares {} vertices but the set has {}", raw.n, ground.vertex_count()),
        ));
    }
    Ok(ground)
}

pub fn pointset_from_str(text: &str) -> Result<Ground, CodecError> {
    let raw: RawPoints = serde_json::from_str(text).map_err(json_err)?;
    ground_from_raw(raw, "")
}

fn read_text(path: &Path) -> Result<String, CodecError> {
    std::fs::read_to_string(path)
        .map_err(|e| CodecError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn write_text(path: &Path, text: &str) -> Result<(), CodecError> {
    std::fs::write(path, text).map_err(|e| CodecError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_pointset(path: &Path) -> Result<Ground, CodecError> {
    pointset_from_str(&read_text(path)?)
}

pub fn write_pointset(path: &Path, ground: &Ground) -> Result<(), CodecError> {
    write_text(path, &pointset_to_string(ground))
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

pub fn packing_to_string(doc: &PackingDoc) -> String {
    let p = &doc.packing;
    let prov = &doc.provenance;
    let opt = |v: Option<String>| v.unwrap_or_else(|| "null".into());
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"format\": \"{PACKING_FORMAT}\",");
    let _ = writeln!(out, "  \"version\": {FORMAT_VERSION},");
    let _ = writeln!(
        out,
        "  \"provenance\": {{\"method\": {}, \"seed\": {}, \"k\": {}, \"input\": {}}},",
        json_string(&prov.method),
        opt(prov.seed.map(|s| s.to_string())),
        opt(prov.k.map(|k| k.to_string())),
        opt(prov.input.as_deref().map(json_string)),
    );
    let _ = writeln!(out, "  \"digest\": \"{}\",", digest(&p.ground));
    match &doc.points_file {
        Some(f) => {
            let _ = writeln!(out, "  \"points_file\": {},", json_string(f));
        }
        None => {
            let _ = write!(out, "  \"ground\": {{\n{}  }},\n", ground_body(&p.ground, "    "));
        }
    }
    let _ = writeln!(out, "  \"members\": [");
    let members: Vec<String> = p
        .members
        .iter()
        .map(|m| {
            let edges: Vec<String> = m.edges().iter().map(|e| format!("[{}, {}]", e.a(), e.b())).collect();
            format!("    {{\"kind\": \"{}\", \"edges\": [{}]}}", m.kind.as_str(), edges.join(", "))
        })
        .collect();
    if !members.is_empty() {
        let _ = writeln!(out, "{}", members.join(",\n"));
    }
    out.push_str("  ]\n}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProvenance {
    method: String,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    input: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMember {
    kind: String,
    edges: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPacking {
    format: String,
    version: u32,
    provenance: RawProvenance,
    #[serde(default)]
    digest: Option<String>,
    #[serde(default)]
    ground: Option<RawPoints>,
    #[serde(default)]
    points_file: Option<String>,
    members: Vec<RawMember>,
}

/// Parses a packing; `base` resolves a relative `points_file`.
pub fn packing_from_str(text: &str, base: Option<&Path>) -> Result<PackingDoc, CodecError> {
    let raw: RawPacking = serde_json::from_str(text).map_err(json_err)?;
    if raw.format != PACKING_FORMAT {
        return Err(format_err("format", format!("expected \"{PACKING_FORMAT}\", found \"{}\"", raw.format)));
    }
    if raw.version != FORMAT_VERSION {
        return Err(format_err("version", format!("unsupported version {}", raw.version)));
    }
    let ground = match (raw.ground, &raw.points_file) {
        (Some(g), None) => ground_from_raw(g, "ground.")?,
        (None, Some(f)) => {
            let path = base.map_or_else(|| PathBuf::from(f), |b| b.join(f));
            let g = read_pointset(&path)?;
            if raw.digest.is_none() {
                return Err(format_err("digest", "required when the point set is referenced by path"));
            }
            g
        }
        _ => return Err(format_err("ground", "exactly one of \"ground\" and \"points_file\" is required")),
    };
    if let Some(expected) = raw.digest {
        let found = digest(&ground);
        if expected != found {
            return Err(CodecError::DigestMismatch { expected, found });
        }
    }
    let n = ground.vertex_count();
    let mut members = Vec::with_capacity(raw.members.len());
    for (mi, m) in raw.members.into_iter().enumerate() {
        let kind: StructureKind =
            m.kind.parse().map_err(|_| format_err(format!("members[{mi}].kind"), format!("unknown kind \"{}\"", m.kind)))?;
        let mut edges = Vec::with_capacity(m.edges.len());
        for (ei, [a, b]) in m.edges.into_iter().enumerate() {
            if let Some(&vertex) = [a, b].iter().find(|&&v| v >= n) {
                return Err(CodecError::DanglingIndex { member: mi, edge: ei, vertex, n });
            }
            let e = EdgeRef::try_new(a, b)
                .ok_or_else(|| format_err(format!("members[{mi}].edges[{ei}]"), format!("loop at vertex {a}")))?;
            edges.push(e);
        }
        members.push(GraphStructure::new(kind, edges));
    }
    let p = raw.provenance;
    Ok(PackingDoc {
        packing: Packing::new(ground, members),
        provenance: Provenance { method: p.method, seed: p.seed, k: p.k, input: p.input },
        points_file: raw.points_file,
    })
}

pub fn read_packing(path: &Path) -> Result<PackingDoc, CodecError> {
    packing_from_str(&read_text(path)?, path.parent())
}

pub fn write_packing(path: &Path, doc: &PackingDoc) -> Result<(), CodecError> {
    write_text(path, &packing_to_string(doc))
}
