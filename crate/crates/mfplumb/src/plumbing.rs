//! Plumbing graphs, multiplicity systems, and the residual identity.
//!
//! A plumbing graph describes a graph manifold: each vertex stands for a
//! circle bundle over a surface, decorated with the Euler number of the
//! bundle and the genus of the base, and each edge stands for a plumbing
//! operation between the bundles, decorated with a sign. Parallel edges are
//! allowed, loops are not.
//!
//! A multiplicity system attaches to every vertex a multiplicity `m_v` and a
//! dual multiplicity `n_v`. The system describes the divisor of a function
//! on the plumbed manifold exactly when the residual
//!
//! ```text
//! euler_v * m_v + sum over edges e at v of sign_e * m_(other end) - n_v
//! ```
//!
//! vanishes at every vertex. [`top_ident_residual`] computes that quantity;
//! the construction and the calculus moves both promise to keep it at zero.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Vertex identifier. Identifiers are opaque, nonempty strings over
/// `[A-Za-z0-9._+~-]`; the restricted alphabet keeps serialized documents,
/// piece tags and DOT output unambiguous.
pub type VertexId = String;

/// Returns the identifier unchanged if it fits the allowed alphabet.
pub fn validate_id(id: &str) -> Result<()> {
    let ok = !id.is_empty()
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b"._+~-".contains(&b));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidId(id.to_owned()))
    }
}

/// Edge sign of a plumbing graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(value: i64) -> Result<Self> {
        match value {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::BadSign(other)),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Product of two signs.
    pub fn times(self, other: Self) -> Self {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Decorations of a plumbing vertex. `euler` is the Euler number of the
/// circle bundle, stored with its sign (no `-b` conversion anywhere).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlumbingVertex {
    pub euler: i64,
    pub genus: u32,
}

/// Undirected signed edge. Endpoints are stored in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub sign: Sign,
}

impl Edge {
    fn new(a: VertexId, b: VertexId, sign: Sign) -> Result<Self> {
        if a == b {
            return Err(Error::LoopEdge(a, b));
        }
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Ok(Edge { a, b, sign })
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(&self, v: &str) -> Option<&VertexId> {
        if self.a == v {
            Some(&self.b)
        } else if self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }
}

/// Plumbing graph: decorated vertices and a multiset of signed edges,
/// kept in canonical (sorted) order so that equal graphs compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlumbingGraph {
    vertices: BTreeMap<VertexId, PlumbingVertex>,
    edges: Vec<Edge>,
}

impl PlumbingGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>, euler: i64, genus: u32) -> Result<()> {
        let id = id.into();
        validate_id(&id)?;
        if self.vertices.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        self.vertices.insert(id, PlumbingVertex { euler, genus });
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        a: impl Into<VertexId>,
        b: impl Into<VertexId>,
        sign: Sign,
    ) -> Result<()> {
        let (a, b) = (a.into(), b.into());
        for end in [&a, &b] {
            if !self.vertices.contains_key(end) {
                return Err(Error::UnknownVertex(end.clone()));
            }
        }
        let edge = Edge::new(a, b, sign)?;
        let at = self.edges.partition_point(|e| e <= &edge);
        self.edges.insert(at, edge);
        Ok(())
    }

    pub fn vertex(&self, id: &str) -> Option<&PlumbingVertex> {
        self.vertices.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.vertices.contains_key(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices in identifier order.
    pub fn vertices(&self) -> impl Iterator<Item = (&VertexId, &PlumbingVertex)> {
        self.vertices.iter()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.keys()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges incident to `v`.
    pub fn edges_at<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Edge> {
        self.edges.iter().filter(move |e| e.a == v || e.b == v)
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges_at(v).count()
    }

    /// Replaces the Euler number of an existing vertex.
    pub fn set_euler(&mut self, id: &str, euler: i64) -> Result<()> {
        match self.vertices.get_mut(id) {
            Some(data) => {
                data.euler = euler;
                Ok(())
            }
            None => Err(Error::UnknownVertex(id.to_owned())),
        }
    }

    /// Removes a vertex together with all incident edges.
    pub fn remove_vertex(&mut self, id: &str) -> Result<()> {
        if self.vertices.remove(id).is_none() {
            return Err(Error::UnknownVertex(id.to_owned()));
        }
        self.edges.retain(|e| e.a != id && e.b != id);
        Ok(())
    }

    /// Flips the sign of every edge incident to `id`.
    pub fn flip_signs_at(&mut self, id: &str) -> Result<()> {
        if !self.vertices.contains_key(id) {
            return Err(Error::UnknownVertex(id.to_owned()));
        }
        for edge in &mut self.edges {
            if edge.a == id || edge.b == id {
                edge.sign = edge.sign.flip();
            }
        }
        self.edges.sort();
        Ok(())
    }
}

/// Multiplicity system on a plumbing graph: `m` has one entry per vertex,
/// `n` is sparse with absent entries meaning zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiplicitySystem {
    m: BTreeMap<VertexId, i64>,
    n: BTreeMap<VertexId, i64>,
}

impl MultiplicitySystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_m(&mut self, id: impl Into<VertexId>, value: i64) {
        self.m.insert(id.into(), value);
    }

    /// Stores a dual multiplicity; zero entries are dropped.
    pub fn set_n(&mut self, id: impl Into<VertexId>, value: i64) {
        let id = id.into();
        if value == 0 {
            self.n.remove(&id);
        } else {
            self.n.insert(id, value);
        }
    }

    pub fn m(&self, id: &str) -> Result<i64> {
        self.m
            .get(id)
            .copied()
            .ok_or_else(|| Error::MissingSystemValue(id.to_owned()))
    }

    pub fn n(&self, id: &str) -> i64 {
        self.n.get(id).copied().unwrap_or(0)
    }

    /// Vertices with nonzero dual multiplicity, in identifier order.
    pub fn nonzero_n(&self) -> impl Iterator<Item = (&VertexId, i64)> {
        self.n.iter().map(|(id, &v)| (id, v))
    }

    pub fn remove(&mut self, id: &str) {
        self.m.remove(id);
        self.n.remove(id);
    }

    /// Negates both values at one vertex.
    pub fn negate_at(&mut self, id: &str) -> Result<()> {
        let m = self.m(id)?;
        self.set_m(id.to_owned(), -m);
        let n = self.n(id);
        self.set_n(id.to_owned(), -n);
        Ok(())
    }

    pub fn m_entries(&self) -> impl Iterator<Item = (&VertexId, i64)> {
        self.m.iter().map(|(id, &v)| (id, v))
    }
}

/// Residual of the multiplicity identity at `v`:
///
/// ```text
/// euler_v * m_v + sum of sign_e * m_(other end of e) over edges e at v - n_v
/// ```
///
/// A multiplicity system describes the divisor of a function exactly when
/// this vanishes at every vertex.
pub fn top_ident_residual(graph: &PlumbingGraph, sys: &MultiplicitySystem, v: &str) -> Result<i64> {
    let data = graph
        .vertex(v)
        .ok_or_else(|| Error::UnknownVertex(v.to_owned()))?;
    let mut total = data.euler as i128 * sys.m(v)? as i128;
    for edge in graph.edges_at(v) {
        let other = edge.other(v).expect("edge at v has v as an endpoint");
        total += edge.sign.value() as i128 * sys.m(other)? as i128;
    }
    total -= sys.n(v) as i128;
    i64::try_from(total).map_err(|_| Error::Overflow("residual"))
}

/// Residuals at every vertex, in identifier order.
pub fn all_residuals(
    graph: &PlumbingGraph,
    sys: &MultiplicitySystem,
) -> Result<Vec<(VertexId, i64)>> {
    graph
        .vertex_ids()
        .map(|id| Ok((id.clone(), top_ident_residual(graph, sys, id)?)))
        .collect()
}
