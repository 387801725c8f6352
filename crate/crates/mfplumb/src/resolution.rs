//! Decorated resolution graphs of a pair of plane curve germs.
//!
//! A resolution graph has exceptional vertices (decorated with Euler
//! numbers), a multiset of unsigned edges between them, and arrowheads for
//! the branches of the two germs. Each arrowhead attaches to exactly one
//! exceptional vertex and is marked `f` or `g` according to which germ the
//! branch belongs to.
//!
//! A [`MultPair`] assigns to every vertex and arrowhead two multiplicities
//! `(m, l)`: the orders of vanishing of the pullbacks of `f` and of `g`.
//! The pair is balanced when, for both families, every exceptional vertex
//! satisfies
//!
//! ```text
//! euler_w * x_w + sum of x over all neighbours of w (edges and arrows) = 0
//! ```
//!
//! Vertex multiplicities are determined by the arrowhead decorations;
//! [`solve_multiplicities`] recovers them by exact integer elimination.
//!
//! The pair splits the vertices into `W1 = {m <= l}` and `W2 = {m > l}`.
//! Connected components of the subgraph induced on `W1` each contribute,
//! per [`components_gamma1`], a divisor `d`, a genus and an Euler number;
//! those are the decorations of the surface pieces of the final plumbing
//! graph, and their boundary edges say where chains attach.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cfrac::gcd;
use crate::error::{Error, Result};
use crate::plumbing::{validate_id, VertexId};

/// Which germ an arrowhead belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrowKind {
    F,
    G,
}

impl ArrowKind {
    pub fn letter(self) -> char {
        match self {
            ArrowKind::F => 'f',
            ArrowKind::G => 'g',
        }
    }
}

/// Arrowhead: a branch of one of the two germs, attached to one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub attach: VertexId,
    pub kind: ArrowKind,
}

/// Resolution graph: exceptional vertices with Euler numbers, a multiset of
/// edges, and arrowheads. Vertices and arrowheads share one namespace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: BTreeMap<VertexId, i64>,
    edges: Vec<(VertexId, VertexId)>,
    arrows: BTreeMap<VertexId, Arrow>,
}

impl ResolutionGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>, euler: i64) -> Result<()> {
        let id = id.into();
        validate_id(&id)?;
        if self.vertices.contains_key(&id) || self.arrows.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        self.vertices.insert(id, euler);
        Ok(())
    }

    /// Adds one edge between exceptional vertices; parallel edges stack.
    pub fn add_edge(&mut self, a: impl Into<VertexId>, b: impl Into<VertexId>) -> Result<()> {
        let (a, b) = (a.into(), b.into());
        for (end, other) in [(&a, &b), (&b, &a)] {
            if self.arrows.contains_key(end) {
                return Err(Error::EdgeToArrow {
                    edge_end: end.clone(),
                    other: other.clone(),
                });
            }
            if !self.vertices.contains_key(end) {
                return Err(Error::UnknownVertex(end.clone()));
            }
        }
        if a == b {
            return Err(Error::LoopEdge(a, b));
        }
        let pair = if a <= b { (a, b) } else { (b, a) };
        let at = self.edges.partition_point(|e| e <= &pair);
        self.edges.insert(at, pair);
        Ok(())
    }

    pub fn add_arrow(
        &mut self,
        id: impl Into<VertexId>,
        attach: impl Into<VertexId>,
        kind: ArrowKind,
    ) -> Result<()> {
        let (id, attach) = (id.into(), attach.into());
        validate_id(&id)?;
        if self.vertices.contains_key(&id) || self.arrows.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        if !self.vertices.contains_key(&attach) {
            return Err(Error::ArrowAttach(id, attach));
        }
        self.arrows.insert(id, Arrow { attach, kind });
        Ok(())
    }

    pub fn euler(&self, id: &str) -> Result<i64> {
        self.vertices
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub fn is_vertex(&self, id: &str) -> bool {
        self.vertices.contains_key(id)
    }

    pub fn is_arrow(&self, id: &str) -> bool {
        self.arrows.contains_key(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Exceptional vertices in identifier order.
    pub fn vertices(&self) -> impl Iterator<Item = (&VertexId, i64)> {
        self.vertices.iter().map(|(id, &e)| (id, e))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.keys()
    }

    /// Edge multiset in canonical order, endpoints sorted within each edge.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Endpoints opposite to `v`, one item per incident edge.
    pub fn edge_neighbours<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a VertexId> {
        self.edges.iter().filter_map(move |(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Arrowheads in identifier order.
    pub fn arrows(&self) -> impl Iterator<Item = (&VertexId, &Arrow)> {
        self.arrows.iter()
    }

    /// Arrowheads attached to `v`, in identifier order.
    pub fn arrows_at<'a>(&'a self, v: &'a str) -> impl Iterator<Item = (&'a VertexId, &'a Arrow)> {
        self.arrows.iter().filter(move |(_, a)| a.attach == v)
    }

    /// Requires at least one vertex and connectivity of the whole graph,
    /// arrowheads included.
    pub fn validate(&self) -> Result<()> {
        let Some(start) = self.vertices.keys().next() else {
            return Err(Error::EmptyGraph);
        };
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut queue: VecDeque<&VertexId> = VecDeque::new();
        seen.insert(start);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for next in self.edge_neighbours(v) {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
            for (id, _) in self.arrows_at(v) {
                seen.insert(id);
            }
        }
        for id in self.vertices.keys().chain(self.arrows.keys()) {
            if !seen.contains(id) {
                return Err(Error::Disconnected(id.clone()));
            }
        }
        Ok(())
    }
}

/// Multiplicity family: `m` follows the first germ, `l` the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    M,
    L,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::M => 'm',
            Family::L => 'l',
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Multiplicities `(m, l)` over vertices and arrowheads.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultPair {
    m: BTreeMap<VertexId, i64>,
    l: BTreeMap<VertexId, i64>,
}

impl MultPair {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_m(&mut self, id: impl Into<VertexId>, value: i64) {
        self.m.insert(id.into(), value);
    }

    pub fn set_l(&mut self, id: impl Into<VertexId>, value: i64) {
        self.l.insert(id.into(), value);
    }

    pub fn set(&mut self, id: impl Into<VertexId>, m: i64, l: i64) {
        let id = id.into();
        self.m.insert(id.clone(), m);
        self.l.insert(id, l);
    }

    pub fn m(&self, id: &str) -> Result<i64> {
        self.m
            .get(id)
            .copied()
            .ok_or_else(|| Error::MissingMult(format!("m of {id}")))
    }

    pub fn l(&self, id: &str) -> Result<i64> {
        self.l
            .get(id)
            .copied()
            .ok_or_else(|| Error::MissingMult(format!("l of {id}")))
    }

    pub fn get(&self, family: Family, id: &str) -> Result<i64> {
        match family {
            Family::M => self.m(id),
            Family::L => self.l(id),
        }
    }

    pub fn m_entries(&self) -> impl Iterator<Item = (&VertexId, i64)> {
        self.m.iter().map(|(id, &v)| (id, v))
    }

    pub fn l_entries(&self) -> impl Iterator<Item = (&VertexId, i64)> {
        self.l.iter().map(|(id, &v)| (id, v))
    }

    /// True when every vertex has both entries (arrowheads are validated
    /// separately, by [`MultPair::validate`]).
    pub fn covers_vertices(&self, graph: &ResolutionGraph) -> bool {
        graph
            .vertex_ids()
            .all(|id| self.m.contains_key(id) && self.l.contains_key(id))
    }

    /// Checks that the arrowhead entries exist and fit their kind:
    /// `f`-arrowheads need `m >= 1, l = 0`, `g`-arrowheads `m = 0, l >= 1`.
    pub fn validate_arrows(&self, graph: &ResolutionGraph) -> Result<()> {
        for (id, arrow) in graph.arrows() {
            let (m, l) = (self.m(id)?, self.l(id)?);
            let ok = match arrow.kind {
                ArrowKind::F => m >= 1 && l == 0,
                ArrowKind::G => m == 0 && l >= 1,
            };
            if !ok {
                let expect = match arrow.kind {
                    ArrowKind::F => "m >= 1 and l = 0",
                    ArrowKind::G => "m = 0 and l >= 1",
                };
                return Err(Error::ArrowMult {
                    id: id.clone(),
                    kind: arrow.kind.letter(),
                    expect,
                    m,
                    l,
                });
            }
        }
        Ok(())
    }

    /// Full validation against a graph: complete coverage, no stray
    /// entries, vertex values at least 1, arrowhead values fitting their
    /// kind.
    pub fn validate(&self, graph: &ResolutionGraph) -> Result<()> {
        for (family, table) in [(Family::M, &self.m), (Family::L, &self.l)] {
            for id in table.keys() {
                if !graph.is_vertex(id) && !graph.is_arrow(id) {
                    return Err(Error::StrayMult(format!("{} of {id}", family.letter())));
                }
            }
        }
        for (id, _) in graph.vertices() {
            for (family, value) in [(Family::M, self.m(id)?), (Family::L, self.l(id)?)] {
                if value < 1 {
                    return Err(Error::VertexMult {
                        id: id.clone(),
                        family: match family {
                            Family::M => "m",
                            Family::L => "l",
                        },
                        value,
                    });
                }
            }
        }
        self.validate_arrows(graph)
    }
}

/// One failed balance equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceViolation {
    pub vertex: VertexId,
    pub family: Family,
    pub residual: i64,
}

/// Balance residual of one family at one vertex:
/// `euler_w * x_w + sum of x over edge- and arrow-neighbours`.
fn balance_residual(
    graph: &ResolutionGraph,
    pair: &MultPair,
    family: Family,
    w: &str,
) -> Result<i64> {
    let mut total = graph.euler(w)? as i128 * pair.get(family, w)? as i128;
    for v in graph.edge_neighbours(w) {
        total += pair.get(family, v)? as i128;
    }
    for (id, _) in graph.arrows_at(w) {
        total += pair.get(family, id)? as i128;
    }
    i64::try_from(total).map_err(|_| Error::Overflow("balance residual"))
}

/// Evaluates every balance equation; returns the failures (empty when the
/// pair is balanced).
pub fn check_balance(graph: &ResolutionGraph, pair: &MultPair) -> Result<Vec<BalanceViolation>> {
    let mut violations = Vec::new();
    for (w, _) in graph.vertices() {
        for family in [Family::M, Family::L] {
            let residual = balance_residual(graph, pair, family, w)?;
            if residual != 0 {
                violations.push(BalanceViolation {
                    vertex: w.clone(),
                    family,
                    residual,
                });
            }
        }
    }
    Ok(violations)
}

/// Reduced fraction over i128, used for exact back-substitution.
#[derive(Debug, Clone, Copy)]
struct Rat {
    num: i128,
    den: i128,
}

impl Rat {
    fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::SingularMatrix);
        }
        let mut g = gcd128(num, den);
        if g == 0 {
            g = 1;
        }
        let sign = if den < 0 { -1 } else { 1 };
        Ok(Rat {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    fn from_int(n: i128) -> Self {
        Rat { num: n, den: 1 }
    }

    fn add(self, other: Rat) -> Result<Rat> {
        let num = self
            .num
            .checked_mul(other.den)
            .and_then(|a| {
                other
                    .num
                    .checked_mul(self.den)
                    .and_then(|b| a.checked_add(b))
            })
            .ok_or(Error::Overflow("multiplicity solve"))?;
        let den = self
            .den
            .checked_mul(other.den)
            .ok_or(Error::Overflow("multiplicity solve"))?;
        Rat::new(num, den)
    }

    fn mul_int(self, k: i128) -> Result<Rat> {
        let num = self
            .num
            .checked_mul(k)
            .ok_or(Error::Overflow("multiplicity solve"))?;
        Rat::new(num, self.den)
    }

    fn div(self, other: Rat) -> Result<Rat> {
        if other.num == 0 {
            return Err(Error::SingularMatrix);
        }
        let num = self
            .num
            .checked_mul(other.den)
            .ok_or(Error::Overflow("multiplicity solve"))?;
        let den = self
            .den
            .checked_mul(other.num)
            .ok_or(Error::Overflow("multiplicity solve"))?;
        Rat::new(num, den)
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free Gaussian elimination (Bareiss) of `matrix` with extra
/// right-hand columns appended; leaves an upper triangular system.
fn bareiss(matrix: &mut [Vec<i128>], unknowns: usize) -> Result<()> {
    let rows = matrix.len();
    let mut prev: i128 = 1;
    for k in 0..unknowns.min(rows) {
        let pivot_row = (k..rows)
            .find(|&r| matrix[r][k] != 0)
            .ok_or(Error::SingularMatrix)?;
        matrix.swap(k, pivot_row);
        for i in (k + 1)..rows {
            for j in (k + 1)..matrix[i].len() {
                let lead = matrix[k][k]
                    .checked_mul(matrix[i][j])
                    .ok_or(Error::Overflow("multiplicity solve"))?;
                let trail = matrix[i][k]
                    .checked_mul(matrix[k][j])
                    .ok_or(Error::Overflow("multiplicity solve"))?;
                let num = lead
                    .checked_sub(trail)
                    .ok_or(Error::Overflow("multiplicity solve"))?;
                // Bareiss guarantees exact division by the previous pivot.
                debug_assert_eq!(num % prev, 0);
                matrix[i][j] = num / prev;
            }
            matrix[i][k] = 0;
        }
        prev = matrix[k][k];
    }
    Ok(())
}

/// Solves the balance equations for the vertex multiplicities of both
/// families, given the arrowhead entries of `pair`. Returns a complete
/// `MultPair` (arrowhead entries copied over). Solutions must be positive
/// integers.
pub fn solve_multiplicities(graph: &ResolutionGraph, pair: &MultPair) -> Result<MultPair> {
    graph.validate()?;
    pair.validate_arrows(graph)?;
    let ids: Vec<&VertexId> = graph.vertex_ids().collect();
    let index: BTreeMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let n = ids.len();

    // Row w: euler_w * x_w + sum over edges = -(arrow contributions).
    // Columns n and n+1 hold the right-hand sides of the two families.
    let mut matrix = vec![vec![0i128; n + 2]; n];
    for (i, id) in ids.iter().enumerate() {
        matrix[i][i] = graph.euler(id)? as i128;
    }
    for (a, b) in graph.edges() {
        let (i, j) = (index[a.as_str()], index[b.as_str()]);
        matrix[i][j] += 1;
        matrix[j][i] += 1;
    }
    for (id, arrow) in graph.arrows() {
        let i = index[arrow.attach.as_str()];
        matrix[i][n] -= pair.m(id)? as i128;
        matrix[i][n + 1] -= pair.l(id)? as i128;
    }

    bareiss(&mut matrix, n)?;

    let mut solved = MultPair::new();
    for (rhs_col, family) in [(n, Family::M), (n + 1, Family::L)] {
        let mut x = vec![Rat::from_int(0); n];
        for i in (0..n).rev() {
            let mut acc = Rat::from_int(matrix[i][rhs_col]);
            for j in (i + 1)..n {
                acc = acc.add(x[j].mul_int(-matrix[i][j])?)?;
            }
            x[i] = acc.div(Rat::from_int(matrix[i][i]))?;
        }
        for (i, id) in ids.iter().enumerate() {
            let value = x[i];
            if value.den != 1 {
                return Err(Error::NonIntegralSolution {
                    id: (*id).clone(),
                    num: i64::try_from(value.num)
                        .map_err(|_| Error::Overflow("multiplicity solve"))?,
                    den: i64::try_from(value.den)
                        .map_err(|_| Error::Overflow("multiplicity solve"))?,
                });
            }
            let value =
                i64::try_from(value.num).map_err(|_| Error::Overflow("multiplicity solve"))?;
            if value < 1 {
                return Err(Error::NegativeSolution {
                    id: (*id).clone(),
                    value,
                });
            }
            match family {
                Family::M => solved.set_m((*id).clone(), value),
                Family::L => solved.set_l((*id).clone(), value),
            }
        }
    }
    for (id, _) in graph.arrows() {
        solved.set(id.clone(), pair.m(id)?, pair.l(id)?);
    }
    Ok(solved)
}

/// Split of the graph by the sign of `m - l`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    /// Vertices with `m <= l`.
    pub w1: BTreeSet<VertexId>,
    /// Vertices with `m > l`.
    pub w2: BTreeSet<VertexId>,
    /// f-arrowheads attached to `w1` vertices.
    pub af1: BTreeSet<VertexId>,
    /// f-arrowheads attached to `w2` vertices.
    pub af2: BTreeSet<VertexId>,
    /// g-arrowheads attached to `w1` vertices.
    pub ag1: BTreeSet<VertexId>,
    /// g-arrowheads attached to `w2` vertices.
    pub ag2: BTreeSet<VertexId>,
}

pub fn partition(graph: &ResolutionGraph, pair: &MultPair) -> Result<Partition> {
    let mut part = Partition::default();
    for (id, _) in graph.vertices() {
        if pair.m(id)? <= pair.l(id)? {
            part.w1.insert(id.clone());
        } else {
            part.w2.insert(id.clone());
        }
    }
    for (id, arrow) in graph.arrows() {
        let inner = part.w1.contains(&arrow.attach);
        let set = match (arrow.kind, inner) {
            (ArrowKind::F, true) => &mut part.af1,
            (ArrowKind::F, false) => &mut part.af2,
            (ArrowKind::G, true) => &mut part.ag1,
            (ArrowKind::G, false) => &mut part.ag2,
        };
        set.insert(id.clone());
    }
    Ok(part)
}

/// Edge from a `W1` component to the outside: either to an f-arrowhead
/// attached inside the component, or to a `W2` vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundaryEdge {
    pub inner: VertexId,
    pub outer: VertexId,
    /// Occurrence number among parallel edges with the same endpoints.
    pub parallel_index: usize,
    pub outer_is_arrow: bool,
    /// `gcd(m_inner, m_outer)`.
    pub m_e: i64,
}

/// One connected component of the subgraph induced on `W1`, with the
/// invariants of the surface piece it contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    /// Component vertices in identifier order.
    pub vertices: Vec<VertexId>,
    /// Boundary edges sorted by `(inner, outer, parallel_index)`.
    pub boundary: Vec<BoundaryEdge>,
    /// Number of copies: gcd of `m` over the component and the outer
    /// endpoints of its boundary edges.
    pub d: i64,
    pub genus: u32,
    pub euler: i64,
}

/// The connected components of the subgraph induced on `part.w1`, each with
/// its boundary edges and invariants, ordered by smallest vertex.
pub fn components_gamma1(
    graph: &ResolutionGraph,
    pair: &MultPair,
    part: &Partition,
) -> Result<Vec<ComponentSummary>> {
    let mut remaining: BTreeSet<&VertexId> = part.w1.iter().collect();
    let mut components = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for next in graph.edge_neighbours(v) {
                if part.w1.contains(next) && seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        for v in &seen {
            remaining.remove(*v);
        }
        let vertices: Vec<VertexId> = seen.iter().map(|v| (*v).clone()).collect();
        components.push(component_summary(graph, pair, part, vertices)?);
    }
    Ok(components)
}

fn component_summary(
    graph: &ResolutionGraph,
    pair: &MultPair,
    part: &Partition,
    vertices: Vec<VertexId>,
) -> Result<ComponentSummary> {
    let inside: BTreeSet<&str> = vertices.iter().map(|v| v.as_str()).collect();
    let name = vertices[0].clone();

    // Boundary edges: graph edges leaving the component towards W2, and
    // f-arrowheads attached inside. Parallel edges are listed separately.
    let mut boundary = Vec::new();
    let mut parallel: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for (a, b) in graph.edges() {
        let (inner, outer) = if inside.contains(a.as_str()) && part.w2.contains(b) {
            (a, b)
        } else if inside.contains(b.as_str()) && part.w2.contains(a) {
            (b, a)
        } else {
            continue;
        };
        let key = (inner.clone(), outer.clone());
        let index = parallel.entry(key).or_insert(0);
        boundary.push(BoundaryEdge {
            inner: inner.clone(),
            outer: outer.clone(),
            parallel_index: *index,
            outer_is_arrow: false,
            m_e: gcd(pair.m(inner)?, pair.m(outer)?),
        });
        *index += 1;
    }
    for v in &vertices {
        for (id, _) in graph.arrows_at(v) {
            if part.af1.contains(id) {
                boundary.push(BoundaryEdge {
                    inner: v.clone(),
                    outer: id.clone(),
                    parallel_index: 0,
                    outer_is_arrow: true,
                    m_e: gcd(pair.m(v)?, pair.m(id)?),
                });
            }
        }
    }
    boundary.sort();
    if boundary.is_empty() {
        return Err(Error::NoBoundary(name));
    }

    let mut d = 0i64;
    for v in &vertices {
        d = gcd(d, pair.m(v)?);
    }
    for edge in &boundary {
        d = gcd(d, pair.m(&edge.outer)?);
    }

    // Genus: d * (2 - 2g) = sum of m_v * (2 - deg_v) over the component
    // plus the sum of m_e over the boundary, where deg_v counts edges from
    // v into the component or its boundary (g-arrowheads do not count).
    let mut genus_num: i128 = 0;
    for v in &vertices {
        let internal = graph
            .edge_neighbours(v)
            .filter(|u| inside.contains(u.as_str()))
            .count();
        let at_boundary = boundary.iter().filter(|e| &e.inner == v).count();
        let deg = (internal + at_boundary) as i128;
        genus_num += pair.m(v)? as i128 * (2 - deg);
    }
    for edge in &boundary {
        genus_num += edge.m_e as i128;
    }
    let two_minus_2g = exact_div(genus_num, d, &name, "2 - 2g")?;
    if two_minus_2g % 2 != 0 {
        return Err(Error::NonIntegralInvariant {
            id: name,
            what: "genus",
            num: i64::try_from(2 - two_minus_2g)
                .map_err(|_| Error::Overflow("component invariants"))?,
            den: 2,
        });
    }
    let genus_signed = (2 - two_minus_2g) / 2;
    if genus_signed < 0 {
        return Err(Error::NegativeGenus {
            id: name,
            value: i64::try_from(genus_signed)
                .map_err(|_| Error::Overflow("component invariants"))?,
        });
    }

    // Euler number: d * e = sum over boundary edges of
    // m_inner * l_outer - m_outer * l_inner.
    let mut euler_num: i128 = 0;
    for edge in &boundary {
        let lead = pair.m(&edge.inner)? as i128 * pair.l(&edge.outer)? as i128;
        let trail = pair.m(&edge.outer)? as i128 * pair.l(&edge.inner)? as i128;
        euler_num += lead - trail;
    }
    let euler = exact_div(euler_num, d, &name, "euler")?;

    Ok(ComponentSummary {
        vertices,
        boundary,
        d,
        genus: u32::try_from(genus_signed).map_err(|_| Error::Overflow("component invariants"))?,
        euler: i64::try_from(euler).map_err(|_| Error::Overflow("component invariants"))?,
    })
}

fn exact_div(num: i128, den: i64, id: &str, what: &'static str) -> Result<i128> {
    let den = den as i128;
    if den == 0 || num % den != 0 {
        return Err(Error::NonIntegralInvariant {
            id: id.to_owned(),
            what,
            num: i64::try_from(num).map_err(|_| Error::Overflow("component invariants"))?,
            den: i64::try_from(den).map_err(|_| Error::Overflow("component invariants"))?,
        });
    }
    Ok(num / den)
}
