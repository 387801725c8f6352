//! JSON documents for resolution and plumbing graphs.
//!
//! Both formats are plain JSON objects with a fixed field order, so a
//! parse/serialize round trip is byte-identical on canonical documents.
//!
//! Resolution documents:
//!
//! ```json
//! {
//!   "vertices": [ { "id": "v1", "euler": -3 } ],
//!   "edges": [ [ "v1", "v2" ] ],
//!   "arrows": [ { "id": "f1", "attach": "v2", "kind": "f", "m": 1, "l": 0 } ],
//!   "mult": { "m": { "v1": 2 }, "l": { "v1": 2 } }
//! }
//! ```
//!
//! The arrowhead decorations are part of the arrow rows; the optional
//! `mult` tables carry the multiplicities of the exceptional vertices
//! only, and must be complete when present.
//!
//! Plumbing documents:
//!
//! ```json
//! {
//!   "vertices": [ { "id": "w2.v2+", "euler": -1, "m": 1, "n": -1,
//!                   "piece": "w2-pair:v2" } ],
//!   "edges": [ { "a": "w2.v2+", "b": "w2.v2-", "sign": -1 } ]
//! }
//! ```
//!
//! `genus` and `n` default to zero and are omitted at zero; `m` values are
//! either present on every vertex (a multiplicity system) or absent
//! everywhere; `piece` tags are optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::construct::PieceTag;
use crate::error::{Error, Result};
use crate::plumbing::{MultiplicitySystem, PlumbingGraph, Sign, VertexId};
use crate::resolution::{ArrowKind, MultPair, ResolutionGraph};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResolutionDoc {
    vertices: Vec<ResolutionVertexRow>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    arrows: Vec<ArrowRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mult: Option<MultTables>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResolutionVertexRow {
    id: String,
    euler: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowRow {
    id: String,
    attach: String,
    kind: KindTag,
    m: i64,
    l: i64,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum KindTag {
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
}

impl From<KindTag> for ArrowKind {
    fn from(tag: KindTag) -> Self {
        match tag {
            KindTag::F => ArrowKind::F,
            KindTag::G => ArrowKind::G,
        }
    }
}

impl From<ArrowKind> for KindTag {
    fn from(kind: ArrowKind) -> Self {
        match kind {
            ArrowKind::F => KindTag::F,
            ArrowKind::G => KindTag::G,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultTables {
    m: BTreeMap<String, i64>,
    l: BTreeMap<String, i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlumbingDoc {
    vertices: Vec<PlumbingVertexRow>,
    #[serde(default)]
    edges: Vec<EdgeRow>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlumbingVertexRow {
    id: String,
    euler: i64,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<i64>,
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    n: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    piece: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRow {
    a: String,
    b: String,
    sign: i64,
}

fn is_zero_u32(v: &u32) -> bool {
    *v == 0
}

fn is_zero_i64(v: &i64) -> bool {
    *v == 0
}

fn to_pretty<T: Serialize>(doc: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| Error::Json(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Parses a resolution document. The returned pair always carries the
/// arrowhead decorations; it carries the vertex multiplicities exactly
/// when the document has a `mult` member.
pub fn parse_resolution(text: &str) -> Result<(ResolutionGraph, MultPair)> {
    let doc: ResolutionDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let mut graph = ResolutionGraph::new();
    for row in &doc.vertices {
        graph.add_vertex(row.id.clone(), row.euler)?;
    }
    for row in &doc.arrows {
        graph.add_arrow(row.id.clone(), row.attach.clone(), row.kind.into())?;
    }
    for (a, b) in &doc.edges {
        graph.add_edge(a.clone(), b.clone())?;
    }
    let mut pair = MultPair::new();
    for row in &doc.arrows {
        pair.set(row.id.clone(), row.m, row.l);
    }
    pair.validate_arrows(&graph)?;
    if let Some(tables) = &doc.mult {
        for (family, table) in [("m", &tables.m), ("l", &tables.l)] {
            for (id, &value) in table {
                if !graph.is_vertex(id) {
                    return Err(Error::StrayMult(format!("{family} of {id}")));
                }
                match family {
                    "m" => pair.set_m(id.clone(), value),
                    _ => pair.set_l(id.clone(), value),
                }
            }
        }
        pair.validate(&graph)?;
    }
    Ok((graph, pair))
}

/// Serializes a resolution graph with its decorations. The `mult` tables
/// are included exactly when `pair` covers the vertices.
pub fn serialize_resolution(graph: &ResolutionGraph, pair: &MultPair) -> Result<String> {
    let vertices = graph
        .vertices()
        .map(|(id, euler)| ResolutionVertexRow {
            id: id.clone(),
            euler,
        })
        .collect();
    let arrows = graph
        .arrows()
        .map(|(id, arrow)| {
            Ok(ArrowRow {
                id: id.clone(),
                attach: arrow.attach.clone(),
                kind: arrow.kind.into(),
                m: pair.m(id)?,
                l: pair.l(id)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mult = if pair.covers_vertices(graph) {
        let mut tables = MultTables {
            m: BTreeMap::new(),
            l: BTreeMap::new(),
        };
        for (id, _) in graph.vertices() {
            tables.m.insert(id.clone(), pair.m(id)?);
            tables.l.insert(id.clone(), pair.l(id)?);
        }
        Some(tables)
    } else {
        None
    };
    to_pretty(&ResolutionDoc {
        vertices,
        edges: graph.edges().to_vec(),
        arrows,
        mult,
    })
}

/// Parses a plumbing document into the graph, the multiplicity system when
/// the document carries one, and the piece tags.
pub fn parse_plumbing(
    text: &str,
) -> Result<(
    PlumbingGraph,
    Option<MultiplicitySystem>,
    BTreeMap<VertexId, PieceTag>,
)> {
    let doc: PlumbingDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let mut graph = PlumbingGraph::new();
    for row in &doc.vertices {
        graph.add_vertex(row.id.clone(), row.euler, row.genus)?;
    }
    for row in &doc.edges {
        graph.add_edge(row.a.clone(), row.b.clone(), Sign::from_value(row.sign)?)?;
    }

    let with_m = doc.vertices.iter().filter(|r| r.m.is_some()).count();
    let sys = if with_m == 0 {
        if let Some(row) = doc.vertices.iter().find(|r| r.n != 0) {
            return Err(Error::MissingSystemValue(row.id.clone()));
        }
        None
    } else if with_m < doc.vertices.len() {
        let missing = doc
            .vertices
            .iter()
            .find(|r| r.m.is_none())
            .expect("some row has no multiplicity");
        return Err(Error::MissingSystemValue(missing.id.clone()));
    } else {
        let mut sys = MultiplicitySystem::new();
        for row in &doc.vertices {
            sys.set_m(row.id.clone(), row.m.expect("coverage checked"));
            sys.set_n(row.id.clone(), row.n);
        }
        Some(sys)
    };

    let mut pieces = BTreeMap::new();
    for row in &doc.vertices {
        if let Some(piece) = &row.piece {
            pieces.insert(row.id.clone(), piece.parse::<PieceTag>()?);
        }
    }
    Ok((graph, sys, pieces))
}

/// Serializes a plumbing graph, optionally with a multiplicity system and
/// piece tags.
pub fn serialize_plumbing(
    graph: &PlumbingGraph,
    sys: Option<&MultiplicitySystem>,
    pieces: Option<&BTreeMap<VertexId, PieceTag>>,
) -> Result<String> {
    let vertices = graph
        .vertices()
        .map(|(id, data)| {
            let (m, n) = match sys {
                Some(sys) => (Some(sys.m(id)?), sys.n(id)),
                None => (None, 0),
            };
            Ok(PlumbingVertexRow {
                id: id.clone(),
                euler: data.euler,
                genus: data.genus,
                m,
                n,
                piece: pieces
                    .and_then(|map| map.get(id))
                    .map(|tag| tag.to_string()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = graph
        .edges()
        .iter()
        .map(|e| EdgeRow {
            a: e.a.clone(),
            b: e.b.clone(),
            sign: e.sign.value(),
        })
        .collect();
    to_pretty(&PlumbingDoc { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_plumbing;
    use crate::resolution::tests::cusp_graph;

    #[test]
    fn resolution_documents_round_trip_byte_identically() {
        let (graph, pair) = cusp_graph();
        let text = serialize_resolution(&graph, &pair).unwrap();
        let (parsed_graph, parsed_pair) = parse_resolution(&text).unwrap();
        assert_eq!(parsed_graph, graph);
        assert_eq!(parsed_pair, pair);
        assert_eq!(
            serialize_resolution(&parsed_graph, &parsed_pair).unwrap(),
            text
        );
    }

    #[test]
    fn resolution_documents_may_omit_the_tables() {
        let (graph, pair) = cusp_graph();
        let mut arrows_only = MultPair::new();
        for (id, _) in graph.arrows() {
            arrows_only.set(id.clone(), pair.m(id).unwrap(), pair.l(id).unwrap());
        }
        let text = serialize_resolution(&graph, &arrows_only).unwrap();
        assert!(!text.contains("\"mult\""));
        let (parsed_graph, parsed_pair) = parse_resolution(&text).unwrap();
        assert_eq!(parsed_graph, graph);
        assert_eq!(parsed_pair, arrows_only);
    }

    #[test]
    fn plumbing_documents_round_trip_byte_identically() {
        let (res, pair) = cusp_graph();
        let out = build_plumbing(&res, &pair).unwrap();
        let text = serialize_plumbing(&out.graph, Some(&out.zsys), Some(&out.provenance)).unwrap();
        let (graph, sys, pieces) = parse_plumbing(&text).unwrap();
        assert_eq!(graph, out.graph);
        assert_eq!(sys.as_ref(), Some(&out.zsys));
        assert_eq!(pieces, out.provenance);
        assert_eq!(
            serialize_plumbing(&graph, sys.as_ref(), Some(&pieces)).unwrap(),
            text
        );
    }

    #[test]
    fn bare_plumbing_documents_round_trip() {
        let (res, pair) = cusp_graph();
        let out = build_plumbing(&res, &pair).unwrap();
        let text = serialize_plumbing(&out.graph, None, None).unwrap();
        assert!(!text.contains("\"m\""));
        let (graph, sys, pieces) = parse_plumbing(&text).unwrap();
        assert_eq!(graph, out.graph);
        assert_eq!(sys, None);
        assert!(pieces.is_empty());
    }

    #[test]
    fn the_exact_document_shape_is_frozen() {
        let mut graph = PlumbingGraph::new();
        graph.add_vertex("a", -2, 1).unwrap();
        graph.add_vertex("b", 3, 0).unwrap();
        graph.add_edge("a", "b", Sign::Minus).unwrap();
        let mut sys = MultiplicitySystem::new();
        sys.set_m("a", 4);
        sys.set_m("b", -5);
        sys.set_n("a", -1);
        let text = serialize_plumbing(&graph, Some(&sys), None).unwrap();
        let expected = r#"{
  "vertices": [
    {
      "id": "a",
      "euler": -2,
      "genus": 1,
      "m": 4,
      "n": -1
    },
    {
      "id": "b",
      "euler": 3,
      "m": -5
    }
  ],
  "edges": [
    {
      "a": "a",
      "b": "b",
      "sign": -1
    }
  ]
}
"#;
        assert_eq!(text, expected);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(matches!(parse_resolution("{"), Err(Error::Json(_))));
        assert!(matches!(
            parse_resolution(r#"{"vertices": [], "unknown": 1}"#),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            parse_resolution(
                r#"{"vertices": [{"id": "v", "euler": -1}],
                    "arrows": [{"id": "x", "attach": "v", "kind": "q", "m": 1, "l": 0}]}"#
            ),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            parse_resolution(
                r#"{"vertices": [{"id": "v", "euler": -1}],
                    "arrows": [{"id": "x", "attach": "v", "kind": "f", "m": 0, "l": 0}]}"#
            ),
            Err(Error::ArrowMult { .. })
        ));
        assert_eq!(
            parse_resolution(
                r#"{"vertices": [{"id": "v", "euler": -1}],
                    "mult": {"m": {"v": 1, "w": 2}, "l": {"v": 1}}}"#
            ),
            Err(Error::StrayMult("m of w".into()))
        );
        assert_eq!(
            parse_resolution(
                r#"{"vertices": [{"id": "v", "euler": -1}],
                    "mult": {"m": {"v": 1}, "l": {}}}"#
            ),
            Err(Error::MissingMult("l of v".into()))
        );

        assert_eq!(
            parse_plumbing(
                r#"{"vertices": [{"id": "v", "euler": -1}],
                    "edges": [{"a": "v", "b": "v", "sign": 2}]}"#
            ),
            Err(Error::BadSign(2))
        );
        assert_eq!(
            parse_plumbing(
                r#"{"vertices": [{"id": "v", "euler": -1, "m": 1},
                                 {"id": "w", "euler": -1}], "edges": []}"#
            ),
            Err(Error::MissingSystemValue("w".into()))
        );
        assert_eq!(
            parse_plumbing(r#"{"vertices": [{"id": "v", "euler": -1, "n": 2}], "edges": []}"#),
            Err(Error::MissingSystemValue("v".into()))
        );
        assert!(matches!(
            parse_plumbing(
                r#"{"vertices": [{"id": "v", "euler": -1, "piece": "oops"}], "edges": []}"#
            ),
            Err(Error::BadPieceTag(_))
        ));
    }
}
