//! JSON documents for graphs, bundles, series, prelinked data and matrices
//! over `Q[t]`.
//!
//! Rationals are `"p/q"` strings (or plain integers as strings), vertices
//! and edges are referred to by id, and maps are keyed in sorted order so
//! [`to_canonical`] is deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve_model::CurveBundle;
use crate::degree_graph::{DegreeConfig, DualGraph, Multidegree};
use crate::detloci::GluingFamily;
use crate::error::{schema, Error, Result};
use crate::exactlinalg::{format_rational, parse_rational, MatQ, Poly, PolyMatrix, Rational, Subspace};
use crate::prelinked::{PrelinkedData, PrelinkedPoint};
use crate::series::eht::component_space;
use crate::series::{EhtSeries, LinkedSeries, Variant};

pub type RatMatrix = Vec<Vec<String>>;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: String,
    pub genus: u32,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub r: i64,
    pub d: i64,
    pub k: usize,
    pub b: i64,
    pub dv: BTreeMap<String, i64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct NodeJson {
    pub tail_coord: String,
    pub head_coord: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BundleJson {
    pub splits: BTreeMap<String, Vec<i64>>,
    pub nodes: BTreeMap<String, NodeJson>,
    pub gluings: BTreeMap<String, RatMatrix>,
}

/// Spaces keyed by multidegree (`"1,0,1"`), as basis rows in the common ambient.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LinkedJson {
    pub variant: String,
    pub spaces: BTreeMap<String, RatMatrix>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PrelinkedEdgeJson {
    pub tail: String,
    pub head: String,
    pub matrix: RatMatrix,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PrelinkedJson {
    pub vertices: Vec<String>,
    pub d: usize,
    pub edges: Vec<PrelinkedEdgeJson>,
}

/// `entries[i][j]` is the coefficient array of the `(i, j)` entry, constant term first.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PolyMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub gluings: BTreeMap<String, PolyMatrixJson>,
    pub bases: BTreeMap<String, PolyMatrixJson>,
}

/// Any combination of sections; each command reads the ones it needs.
#[derive(Serialize, Deserialize, Clone, Debug, Default, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleJson>,
    /// Vertex id to basis rows in component coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eht: Option<BTreeMap<String, RatMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linked: Option<LinkedJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prelinked: Option<PrelinkedJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<BTreeMap<String, RatMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<PolyMatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyJson>,
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("line {}, column {}: {e}", e.line(), e.column())))
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn rat_to_json(q: &Rational) -> String {
    format_rational(q)
}

pub fn rows_to_json(rows: &[Vec<Rational>]) -> RatMatrix {
    rows.iter().map(|r| r.iter().map(rat_to_json).collect()).collect()
}

pub fn rows_from_json(m: &RatMatrix) -> Result<Vec<Vec<Rational>>> {
    m.iter().map(|r| r.iter().map(|x| parse_rational(x)).collect()).collect()
}

pub fn matq_to_json(m: &MatQ) -> RatMatrix {
    rows_to_json(&m.to_rows())
}

pub fn matq_from_json(m: &RatMatrix, cols: usize) -> Result<MatQ> {
    let rows = rows_from_json(m)?;
    if rows.iter().any(|r| r.len() != cols) {
        return schema(format!("expected rows of length {cols}"));
    }
    Ok(MatQ::from_rows_with_cols(rows, cols))
}

pub fn subspace_to_json(s: &Subspace) -> RatMatrix {
    rows_to_json(s.basis())
}

pub fn subspace_from_json(m: &RatMatrix, ambient: usize) -> Result<Subspace> {
    let rows = rows_from_json(m)?;
    if rows.iter().any(|r| r.len() != ambient) {
        return schema(format!("basis vectors must have length {ambient}"));
    }
    Ok(Subspace::from_vectors(ambient, rows))
}

pub fn multidegree_key(w: &[i64]) -> String {
    w.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_multidegree(s: &str, n: usize) -> Result<Multidegree> {
    let w: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Schema(format!("bad multidegree {s:?}"))))
        .collect::<Result<_>>()?;
    if w.len() != n {
        return schema(format!("multidegree {s:?} must have {n} entries"));
    }
    Ok(w)
}

pub fn poly_to_json(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rat_to_json).collect()
}

pub fn poly_from_json(cs: &[String]) -> Result<Poly> {
    Ok(Poly::new(cs.iter().map(|x| parse_rational(x)).collect::<Result<_>>()?))
}

pub fn polymatrix_to_json(m: &PolyMatrix) -> PolyMatrixJson {
    PolyMatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|i| (0..m.cols()).map(|j| poly_to_json(&m[(i, j)])).collect()).collect(),
    }
}

pub fn polymatrix_from_json(m: &PolyMatrixJson) -> Result<PolyMatrix> {
    if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
        return schema("polynomial matrix entries do not match rows/cols");
    }
    let rows = m.entries.iter().map(|r| r.iter().map(|p| poly_from_json(p)).collect()).collect::<Result<_>>()?;
    Ok(PolyMatrix::from_rows(rows, m.cols))
}

pub fn graph_to_json(g: &DualGraph) -> GraphJson {
    let vid = |v: usize| g.vertices()[v].id.clone();
    GraphJson {
        vertices: g.vertices().iter().map(|v| VertexJson { id: v.id.clone(), genus: v.genus }).collect(),
        edges: g.edges().iter().map(|e| EdgeJson { id: e.id.clone(), tail: vid(e.tail), head: vid(e.head) }).collect(),
    }
}

pub fn graph_from_json(g: &GraphJson) -> Result<DualGraph> {
    DualGraph::new(
        g.vertices.iter().map(|v| (v.id.clone(), v.genus)).collect(),
        g.edges.iter().map(|e| (e.id.clone(), e.tail.clone(), e.head.clone())).collect(),
    )
}

/// Looks up one value per vertex (or edge) id, rejecting missing and extra keys.
fn per_id<'a, T>(map: &'a BTreeMap<String, T>, ids: impl Iterator<Item = &'a str>, what: &str) -> Result<Vec<&'a T>> {
    let ids: Vec<&str> = ids.collect();
    if let Some(extra) = map.keys().find(|k| !ids.contains(&k.as_str())) {
        return schema(format!("{what}: unknown id {extra:?}"));
    }
    ids.iter().map(|id| map.get(*id).ok_or_else(|| Error::Schema(format!("{what}: missing id {id:?}")))).collect()
}

fn vertex_ids(g: &DualGraph) -> impl Iterator<Item = &str> {
    g.vertices().iter().map(|v| v.id.as_str())
}

fn edge_ids(g: &DualGraph) -> impl Iterator<Item = &str> {
    g.edges().iter().map(|e| e.id.as_str())
}

pub fn config_to_json(c: &DegreeConfig) -> ConfigJson {
    ConfigJson {
        r: c.r,
        d: c.d,
        k: c.k,
        b: c.b,
        dv: vertex_ids(&c.graph).zip(&c.dv).map(|(id, d)| (id.to_string(), *d)).collect(),
    }
}

pub fn config_from_json(g: &GraphJson, c: &ConfigJson) -> Result<DegreeConfig> {
    let graph = graph_from_json(g)?;
    let dv = per_id(&c.dv, vertex_ids(&graph), "dv")?.into_iter().copied().collect();
    DegreeConfig::new(graph.clone(), c.r, c.d, c.k, c.b, dv)
}

pub fn bundle_to_json(b: &CurveBundle) -> BundleJson {
    let g = &b.cfg.graph;
    BundleJson {
        splits: vertex_ids(g).zip(&b.splits).map(|(id, s)| (id.to_string(), s.clone())).collect(),
        nodes: edge_ids(g)
            .zip(&b.nodes)
            .map(|(id, (p, q))| (id.to_string(), NodeJson { tail_coord: rat_to_json(p), head_coord: rat_to_json(q) }))
            .collect(),
        gluings: edge_ids(g).zip(&b.gluings).map(|(id, m)| (id.to_string(), matq_to_json(m))).collect(),
    }
}

/// Full document for a bundle: graph, configuration and bundle sections.
pub fn bundle_document(b: &CurveBundle) -> Document {
    Document {
        graph: Some(graph_to_json(&b.cfg.graph)),
        config: Some(config_to_json(&b.cfg)),
        bundle: Some(bundle_to_json(b)),
        ..Document::default()
    }
}

fn need<'a, T>(x: &'a Option<T>, what: &str) -> Result<&'a T> {
    x.as_ref().ok_or_else(|| Error::Schema(format!("missing section {what:?}")))
}

pub fn bundle_from_document(doc: &Document) -> Result<CurveBundle> {
    let cfg = config_from_json(need(&doc.graph, "graph")?, need(&doc.config, "config")?)?;
    let bj = need(&doc.bundle, "bundle")?;
    let g = cfg.graph.clone();
    let r = cfg.r as usize;
    let splits = per_id(&bj.splits, vertex_ids(&g), "splits")?.into_iter().cloned().collect();
    let nodes = per_id(&bj.nodes, edge_ids(&g), "nodes")?
        .into_iter()
        .map(|n| Ok((parse_rational(&n.tail_coord)?, parse_rational(&n.head_coord)?)))
        .collect::<Result<_>>()?;
    let gluings = per_id(&bj.gluings, edge_ids(&g), "gluings")?
        .into_iter()
        .map(|m| matq_from_json(m, r))
        .collect::<Result<_>>()?;
    CurveBundle::new(cfg, splits, nodes, gluings)
}

pub fn eht_document(s: &EhtSeries) -> Document {
    let mut doc = bundle_document(&s.bundle);
    doc.eht = Some(vertex_ids(&s.cfg().graph).zip(&s.spaces).map(|(id, sp)| (id.to_string(), subspace_to_json(sp))).collect());
    doc
}

pub fn eht_from_document(doc: &Document) -> Result<EhtSeries> {
    let bundle = bundle_from_document(doc)?;
    let map = need(&doc.eht, "eht")?;
    let g = bundle.cfg.graph.clone();
    let spaces = per_id(map, vertex_ids(&g), "eht")?
        .into_iter()
        .enumerate()
        .map(|(v, m)| subspace_from_json(m, component_space(&bundle, v).dim()))
        .collect::<Result<_>>()?;
    EhtSeries::new(bundle, spaces)
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::I => "I",
        Variant::II => "II",
    }
}

pub fn linked_document(ls: &LinkedSeries) -> Document {
    let mut doc = bundle_document(&ls.bundle);
    doc.linked = Some(LinkedJson {
        variant: variant_name(ls.variant).into(),
        spaces: ls.spaces.iter().map(|(w, s)| (multidegree_key(w), subspace_to_json(s))).collect(),
    });
    doc
}

pub fn linked_from_document(doc: &Document) -> Result<LinkedSeries> {
    let bundle = bundle_from_document(doc)?;
    let lj = need(&doc.linked, "linked")?;
    let variant = match lj.variant.as_str() {
        "I" => Variant::I,
        "II" => Variant::II,
        other => return schema(format!("unknown variant {other:?}")),
    };
    let amb = bundle.layout_q().dim();
    let n = bundle.n();
    let spaces = lj
        .spaces
        .iter()
        .map(|(k, m)| Ok((parse_multidegree(k, n)?, subspace_from_json(m, amb)?)))
        .collect::<Result<_>>()?;
    LinkedSeries::new(bundle, variant, spaces)
}

pub fn prelinked_document(data: &PrelinkedData, point: Option<&PrelinkedPoint>) -> Document {
    let name = |v: usize| data.vertices[v].clone();
    Document {
        prelinked: Some(PrelinkedJson {
            vertices: data.vertices.clone(),
            d: data.d,
            edges: data
                .edges
                .iter()
                .map(|(t, h, m)| PrelinkedEdgeJson { tail: name(*t), head: name(*h), matrix: matq_to_json(m) })
                .collect(),
        }),
        point: point.map(|p| data.vertices.iter().cloned().zip(p.spaces.iter().map(subspace_to_json)).collect()),
        ..Document::default()
    }
}

pub fn prelinked_from_document(doc: &Document) -> Result<(PrelinkedData, Option<PrelinkedPoint>)> {
    let pj = need(&doc.prelinked, "prelinked")?;
    let index = |id: &str| {
        pj.vertices.iter().position(|v| v == id).ok_or_else(|| Error::Schema(format!("unknown vertex {id:?}")))
    };
    let edges = pj
        .edges
        .iter()
        .map(|e| Ok((index(&e.tail)?, index(&e.head)?, matq_from_json(&e.matrix, pj.d)?)))
        .collect::<Result<_>>()?;
    let data = PrelinkedData::new(pj.vertices.clone(), pj.d, edges)?;
    let point = match &doc.point {
        None => None,
        Some(map) => {
            let spaces = per_id(map, pj.vertices.iter().map(String::as_str), "point")?
                .into_iter()
                .map(|m| subspace_from_json(m, pj.d))
                .collect::<Result<_>>()?;
            Some(PrelinkedPoint { spaces })
        }
    };
    Ok((data, point))
}

pub fn matrix_document(m: &PolyMatrix) -> Document {
    Document { matrix: Some(polymatrix_to_json(m)), ..Document::default() }
}

pub fn matrix_from_document(doc: &Document) -> Result<PolyMatrix> {
    polymatrix_from_json(need(&doc.matrix, "matrix")?)
}

pub fn family_document(fam: &GluingFamily, bases: &[PolyMatrix]) -> Document {
    let mut doc = bundle_document(&fam.bundle);
    let g = &fam.bundle.cfg.graph;
    doc.family = Some(FamilyJson {
        gluings: edge_ids(g).zip(&fam.gluings).map(|(id, m)| (id.to_string(), polymatrix_to_json(m))).collect(),
        bases: vertex_ids(g).zip(bases).map(|(id, m)| (id.to_string(), polymatrix_to_json(m))).collect(),
    });
    doc
}

pub fn family_from_document(doc: &Document) -> Result<(GluingFamily, Vec<PolyMatrix>)> {
    let bundle = bundle_from_document(doc)?;
    let fj = need(&doc.family, "family")?;
    let g = bundle.cfg.graph.clone();
    let gluings = per_id(&fj.gluings, edge_ids(&g), "family.gluings")?
        .into_iter()
        .map(polymatrix_from_json)
        .collect::<Result<_>>()?;
    let bases = per_id(&fj.bases, vertex_ids(&g), "family.bases")?
        .into_iter()
        .map(polymatrix_from_json)
        .collect::<Result<_>>()?;
    Ok((GluingFamily::new(bundle, gluings)?, bases))
}
