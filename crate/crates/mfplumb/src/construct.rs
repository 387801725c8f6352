//! Assembly of the plumbing graph of the boundary of the Milnor fiber.
//!
//! [`build_plumbing`] takes a balanced decorated resolution graph of a pair
//! of germs `(f, g)` and produces the plumbing graph of the boundary of the
//! Milnor fiber of `f + z g`, together with the multiplicity system of the
//! coordinate function `z` on it.
//!
//! The output is assembled from pieces:
//!
//! * every connected component of the subgraph on `W1 = {m <= l}`
//!   contributes `d` copies of one surface vertex, where `d` and the
//!   decorations come from [`components_gamma1`];
//! * every f-arrowhead on `W1` contributes a chain of `2s + 1` vertices
//!   (two arms around a central vertex), where `s` is the length of the
//!   negative continued fraction expansion of the reduced fraction
//!   `m_arrow / m_vertex`;
//! * every edge from `W1` to `W2` contributes such a chain for the reduced
//!   fraction `m_outer / m_inner`;
//! * every vertex `w` of `W2 = {m > l}` contributes a pair of vertices
//!   with opposite Euler numbers, splitting the multiplicity as
//!   `(m_w - l_w, l_w)`;
//! * every g-arrowhead on `W2` contributes a star: a central vertex with
//!   `m_w` leaves, tied to the pair of `w`.
//!
//! Chain multiplicities solve the tridiagonal system fixed by the anchor
//! values at both ends ([`z_mult_chain`]); everything else is explicit.
//! The assembled system is then checked: the residual of
//! [`top_ident_residual`] must vanish at every vertex, and the structural
//! identities of the pieces (chain end values, dual multiplicity support,
//! multiplicity splits) must hold. The checks are returned as a
//! [`VerifyReport`]; a failure aborts the construction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cfrac::Ncf;
use crate::error::{Error, Result};
use crate::plumbing::{top_ident_residual, MultiplicitySystem, PlumbingGraph, Sign, VertexId};
use crate::resolution::{
    check_balance, components_gamma1, partition, ArrowKind, MultPair, ResolutionGraph,
};

/// Vertex budget of one constructed graph; inputs demanding more are
/// rejected instead of exhausting memory.
const MAX_VERTICES: usize = 20_000;
/// Edge budget of one constructed graph.
const MAX_EDGES: usize = 40_000;

/// Which piece of the construction a vertex belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceTag {
    /// Copy `copy` (1-based) of the surface piece of component `component`.
    Component { component: usize, copy: usize },
    /// Chain of the f-arrowhead `arrow` on `W1`.
    F1Chain { arrow: VertexId },
    /// Chain of the edge `inner -- outer` from `W1` to `W2`; `parallel`
    /// numbers parallel edges with the same endpoints from zero.
    Bridge {
        inner: VertexId,
        outer: VertexId,
        parallel: usize,
    },
    /// Pair of the `W2` vertex `vertex`.
    W2Pair { vertex: VertexId },
    /// Star of the g-arrowhead `arrow` on `W2`.
    G2Star { arrow: VertexId },
}

impl fmt::Display for PieceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceTag::Component { component, copy } => write!(f, "component:{component}:{copy}"),
            PieceTag::F1Chain { arrow } => write!(f, "f1-chain:{arrow}"),
            PieceTag::Bridge {
                inner,
                outer,
                parallel,
            } => write!(f, "bridge:{inner}:{outer}:{parallel}"),
            PieceTag::W2Pair { vertex } => write!(f, "w2-pair:{vertex}"),
            PieceTag::G2Star { arrow } => write!(f, "g2-star:{arrow}"),
        }
    }
}

impl FromStr for PieceTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadPieceTag(s.to_owned());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["component", component, copy] => Ok(PieceTag::Component {
                component: component.parse().map_err(|_| bad())?,
                copy: copy.parse().map_err(|_| bad())?,
            }),
            ["f1-chain", arrow] => Ok(PieceTag::F1Chain {
                arrow: (*arrow).to_owned(),
            }),
            ["bridge", inner, outer, parallel] => Ok(PieceTag::Bridge {
                inner: (*inner).to_owned(),
                outer: (*outer).to_owned(),
                parallel: parallel.parse().map_err(|_| bad())?,
            }),
            ["w2-pair", vertex] => Ok(PieceTag::W2Pair {
                vertex: (*vertex).to_owned(),
            }),
            ["g2-star", arrow] => Ok(PieceTag::G2Star {
                arrow: (*arrow).to_owned(),
            }),
            _ => Err(bad()),
        }
    }
}

/// Solves the tridiagonal chain system
///
/// ```text
/// x_(i-1) - k_i * x_i + x_(i+1) = 0    for i = 1 .. s
/// ```
///
/// with the anchor values `x_0 = beyond` and `x_(s+1) = tail`, returning
/// `x_1 .. x_s`. The system has integer solutions exactly when the single
/// remaining degree of freedom divides out; otherwise the divisibility
/// failure is reported.
pub fn z_mult_chain(terms: &[i64], beyond: i64, tail: i64) -> Result<Vec<i64>> {
    let overflow = || Error::Overflow("chain solve");
    let s = terms.len();
    // Forward substitution with x_1 = t unknown: x_i = p_i + q_i * t.
    let mut p: Vec<i128> = Vec::with_capacity(s + 2);
    let mut q: Vec<i128> = Vec::with_capacity(s + 2);
    p.extend([beyond as i128, 0]);
    q.extend([0, 1]);
    for (i, &k) in terms.iter().enumerate() {
        let k = k as i128;
        let next_p = k
            .checked_mul(p[i + 1])
            .and_then(|kp| kp.checked_sub(p[i]))
            .ok_or_else(overflow)?;
        let next_q = k
            .checked_mul(q[i + 1])
            .and_then(|kq| kq.checked_sub(q[i]))
            .ok_or_else(overflow)?;
        p.push(next_p);
        q.push(next_q);
    }
    let numerator = (tail as i128).checked_sub(p[s + 1]).ok_or_else(overflow)?;
    let denominator = q[s + 1];
    if denominator == 0 || numerator % denominator != 0 {
        return Err(Error::ChainDivisibility {
            numerator: i64::try_from(numerator).map_err(|_| overflow())?,
            denominator: i64::try_from(denominator).map_err(|_| overflow())?,
        });
    }
    let t = numerator / denominator;
    (1..=s)
        .map(|i| {
            let value = q[i].checked_mul(t).and_then(|qt| qt.checked_add(p[i]));
            i64::try_from(value.ok_or_else(overflow)?).map_err(|_| overflow())
        })
        .collect()
}

/// One verification check of a constructed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// All verification checks of one construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The constructed plumbing graph with the multiplicity system of `z`,
/// the origin of every vertex, and the verification results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOutput {
    pub graph: PlumbingGraph,
    pub zsys: MultiplicitySystem,
    pub provenance: BTreeMap<VertexId, PieceTag>,
    pub report: VerifyReport,
}

/// Expected values collected while assembling, consumed by verification.
#[derive(Debug, Default)]
struct VerifyData {
    /// Plus-side chain tops of f-arrowhead chains with the arrow
    /// multiplicity whose magnitude the dual value must match.
    f1_tops: Vec<(VertexId, i64)>,
    /// Minus-side arm vertices of f-arrowhead chains with their expected
    /// multiplicity `l_w * numerator convergent`.
    f1_minus: Vec<(VertexId, i64)>,
    /// Bridge chain tops `(plus, minus)` with the inner vertex data
    /// `(m, l)`; the tops must carry `m - l` and `l`.
    bridge_tops: Vec<(VertexId, VertexId, i64, i64)>,
    /// Plus-side pair vertices with the expected magnitude of their dual
    /// multiplicity (total f-arrowhead multiplicity at the vertex).
    w2_plus: Vec<(VertexId, i64)>,
    /// Pairs `(plus, minus)` with the vertex multiplicity they split.
    pair_split: Vec<(VertexId, VertexId, i64)>,
    /// Surface copies; these carry multiplicity 1 and no dual value.
    copies: Vec<VertexId>,
}

/// Everything a chain piece needs: base identifier, expansion terms, the
/// central multiplicity, the two anchor values beyond the arm tops, and
/// the dual value of the plus top.
struct ChainPiece {
    base: String,
    terms: Vec<i64>,
    centre_m: i64,
    plus_beyond: i64,
    minus_beyond: i64,
    plus_top_n: i64,
    tag: PieceTag,
}

struct Assembly {
    graph: PlumbingGraph,
    zsys: MultiplicitySystem,
    provenance: BTreeMap<VertexId, PieceTag>,
}

impl Assembly {
    fn budget(&self, vertices: usize, edges: usize) -> Result<()> {
        if self.graph.vertex_count().saturating_add(vertices) > MAX_VERTICES
            || self.graph.edge_count().saturating_add(edges) > MAX_EDGES
        {
            return Err(Error::Overflow("plumbing graph size"));
        }
        Ok(())
    }

    fn add_vertex(
        &mut self,
        id: VertexId,
        euler: i64,
        genus: u32,
        m: i64,
        tag: PieceTag,
    ) -> Result<()> {
        self.graph.add_vertex(id.clone(), euler, genus)?;
        self.zsys.set_m(id.clone(), m);
        self.provenance.insert(id, tag);
        Ok(())
    }

    /// Adds a chain: a central vertex and two arms of one vertex per
    /// expansion term. Arm vertices `base.i1<sign> .. base.iS<sign>` run
    /// from the free top towards the centre; in-arm edges carry the arm
    /// sign, both arm-to-centre edges are positive, and the plus arm
    /// negates the Euler numbers. Returns the two top identifiers.
    fn add_chain(&mut self, piece: ChainPiece) -> Result<(VertexId, VertexId)> {
        let s = piece.terms.len();
        self.budget(2 * s + 1, 2 * s)?;
        let centre = format!("{}.0", piece.base);
        self.add_vertex(centre.clone(), 0, 0, piece.centre_m, piece.tag.clone())?;
        let mut tops = (String::new(), String::new());
        for sign in [Sign::Plus, Sign::Minus] {
            let beyond = match sign {
                Sign::Plus => piece.plus_beyond,
                Sign::Minus => piece.minus_beyond,
            };
            let tail = sign.value() * piece.centre_m;
            let values = z_mult_chain(&piece.terms, beyond, tail)?;
            let mut previous: Option<VertexId> = None;
            for (i, (&k, &m)) in piece.terms.iter().zip(&values).enumerate() {
                let id = format!("{}.i{}{}", piece.base, i + 1, sign);
                let euler = match sign {
                    Sign::Plus => -k,
                    Sign::Minus => k,
                };
                self.add_vertex(id.clone(), euler, 0, m, piece.tag.clone())?;
                if let Some(previous) = previous {
                    self.graph.add_edge(previous, id.clone(), sign)?;
                }
                previous = Some(id);
            }
            let innermost = previous.expect("expansions are never empty");
            self.graph.add_edge(innermost, centre.clone(), Sign::Plus)?;
            let top = format!("{}.i1{}", piece.base, sign);
            match sign {
                Sign::Plus => {
                    self.zsys.set_n(top.clone(), piece.plus_top_n);
                    tops.0 = top;
                }
                Sign::Minus => tops.1 = top,
            }
        }
        Ok(tops)
    }
}

/// Builds the plumbing graph of the boundary of the Milnor fiber of
/// `f + z g` from the balanced decorated resolution graph of `(f, g)`,
/// together with the multiplicity system of `z`.
pub fn build_plumbing(res: &ResolutionGraph, pair: &MultPair) -> Result<ConstructionOutput> {
    res.validate()?;
    pair.validate(res)?;
    let violations = check_balance(res, pair)?;
    if let Some(first) = violations.first() {
        return Err(Error::Unbalanced {
            count: violations.len(),
            first: format!("{} of {}", first.family, first.vertex),
        });
    }
    if !res.arrows().any(|(_, a)| a.kind == ArrowKind::F) {
        return Err(Error::NoFArrow);
    }
    let part = partition(res, pair)?;
    let comps = components_gamma1(res, pair, &part)?;

    let mut asm = Assembly {
        graph: PlumbingGraph::new(),
        zsys: MultiplicitySystem::new(),
        provenance: BTreeMap::new(),
    };
    let mut data = VerifyData::default();
    let overflow = || Error::Overflow("piece decoration");

    // Pairs of the W2 vertices. The plus copy keeps the Euler number and
    // carries m - l plus the dual weight of the f-arrowheads at the
    // vertex; the minus copy negates the Euler number and carries l.
    for w in &part.w2 {
        let euler = res.euler(w)?;
        let (m_w, l_w) = (pair.m(w)?, pair.l(w)?);
        let plus = format!("w2.{w}+");
        let minus = format!("w2.{w}-");
        asm.budget(2, 0)?;
        let tag = PieceTag::W2Pair { vertex: w.clone() };
        asm.add_vertex(
            plus.clone(),
            euler,
            0,
            m_w.checked_sub(l_w).ok_or_else(overflow)?,
            tag.clone(),
        )?;
        asm.add_vertex(minus.clone(), -euler, 0, l_w, tag)?;
        let mut f_total: i64 = 0;
        for (id, arrow) in res.arrows_at(w) {
            if arrow.kind == ArrowKind::F {
                f_total = f_total.checked_add(pair.m(id)?).ok_or_else(overflow)?;
            }
        }
        asm.zsys.set_n(plus.clone(), -f_total);
        data.w2_plus.push((plus.clone(), f_total));
        data.pair_split.push((plus, minus, m_w));
    }

    // Edges inside W2 are mirrored onto both pair sides, positively on the
    // plus side and negatively on the minus side.
    for (a, b) in res.edges() {
        if part.w2.contains(a) && part.w2.contains(b) {
            asm.budget(0, 2)?;
            asm.graph
                .add_edge(format!("w2.{a}+"), format!("w2.{b}+"), Sign::Plus)?;
            asm.graph
                .add_edge(format!("w2.{a}-"), format!("w2.{b}-"), Sign::Minus)?;
        }
    }

    // Surface pieces with their boundary chains.
    for (index, comp) in comps.iter().enumerate() {
        let k = index + 1;
        let copy_count = usize::try_from(comp.d).map_err(|_| overflow())?;
        asm.budget(copy_count, 0)?;
        let copies: Vec<VertexId> = (1..=copy_count).map(|j| format!("g1.c{k}.i{j}")).collect();
        for (j, id) in copies.iter().enumerate() {
            asm.add_vertex(
                id.clone(),
                comp.euler,
                comp.genus,
                1,
                PieceTag::Component {
                    component: k,
                    copy: j + 1,
                },
            )?;
            data.copies.push(id.clone());
        }
        for edge in &comp.boundary {
            let centre_id = if edge.outer_is_arrow {
                let (a, w) = (&edge.outer, &edge.inner);
                let (m_a, m_w) = (pair.m(a)?, pair.m(w)?);
                let l_w = pair.l(w)?;
                let (red_a, red_w) = (m_a / edge.m_e, m_w / edge.m_e);
                let ncf = Ncf::expand(red_a, red_w)?;
                let centre_m =
                    i64::try_from(-(red_a as i128 * l_w as i128)).map_err(|_| overflow())?;
                let base = format!("f1.{a}");
                let (top_plus, _) = asm.add_chain(ChainPiece {
                    base: base.clone(),
                    terms: ncf.terms().to_vec(),
                    centre_m,
                    plus_beyond: m_a,
                    minus_beyond: 0,
                    plus_top_n: -m_a,
                    tag: PieceTag::F1Chain { arrow: a.clone() },
                })?;
                data.f1_tops.push((top_plus, m_a));
                // The minus arm has the closed form l_w times the
                // numerator convergents of the expansion.
                let mu = ncf.convergents()?.mu;
                for (i, &mu_i) in mu.iter().enumerate().take(ncf.len() + 1).skip(1) {
                    let expected =
                        i64::try_from(l_w as i128 * mu_i as i128).map_err(|_| overflow())?;
                    data.f1_minus.push((format!("{base}.i{i}-"), expected));
                }
                format!("{base}.0")
            } else {
                let (v1, v2) = (&edge.inner, &edge.outer);
                let (m1, l1) = (pair.m(v1)?, pair.l(v1)?);
                let (m2, l2) = (pair.m(v2)?, pair.l(v2)?);
                let (red1, red2) = (m1 / edge.m_e, m2 / edge.m_e);
                let ncf = Ncf::expand(red2, red1)?;
                let centre_m = i64::try_from(red1 as i128 * l2 as i128 - red2 as i128 * l1 as i128)
                    .map_err(|_| overflow())?;
                let base = if edge.parallel_index == 0 {
                    format!("br.{v1}-{v2}")
                } else {
                    format!("br.{v1}-{v2}~{}", edge.parallel_index)
                };
                let (top_plus, top_minus) = asm.add_chain(ChainPiece {
                    base: base.clone(),
                    terms: ncf.terms().to_vec(),
                    centre_m,
                    plus_beyond: m2.checked_sub(l2).ok_or_else(overflow)?,
                    minus_beyond: l2,
                    plus_top_n: 0,
                    tag: PieceTag::Bridge {
                        inner: v1.clone(),
                        outer: v2.clone(),
                        parallel: edge.parallel_index,
                    },
                })?;
                asm.budget(0, 2)?;
                asm.graph
                    .add_edge(top_plus.clone(), format!("w2.{v2}+"), Sign::Plus)?;
                asm.graph
                    .add_edge(top_minus.clone(), format!("w2.{v2}-"), Sign::Minus)?;
                data.bridge_tops.push((top_plus, top_minus, m1, l1));
                format!("{base}.0")
            };
            // Each copy ties to the centre of every boundary chain with
            // m_e / d negative edges; d divides m_e because it divides the
            // multiplicities at both ends.
            debug_assert_eq!(edge.m_e % comp.d, 0);
            let per_copy = usize::try_from(edge.m_e / comp.d).map_err(|_| overflow())?;
            asm.budget(0, per_copy.saturating_mul(copies.len()))?;
            for copy in &copies {
                for _ in 0..per_copy {
                    asm.graph
                        .add_edge(copy.clone(), centre_id.clone(), Sign::Minus)?;
                }
            }
        }
    }

    // Stars of the g-arrowheads on W2: a flat centre with m_w unit leaves,
    // tied positively to both pair vertices of the attachment.
    for a in &part.ag2 {
        let w = res
            .arrows()
            .find(|(id, _)| *id == a)
            .map(|(_, arrow)| arrow.attach.clone())
            .expect("partitioned arrowheads exist");
        let l_a = pair.l(a)?;
        let m_w = pair.m(&w)?;
        let leaves = usize::try_from(m_w).map_err(|_| overflow())?;
        asm.budget(leaves + 1, leaves + 2)?;
        let centre = format!("g2.{a}.0");
        let tag = PieceTag::G2Star { arrow: a.clone() };
        let centre_m = l_a.checked_neg().ok_or_else(overflow)?;
        asm.add_vertex(centre.clone(), 0, 0, centre_m, tag.clone())?;
        for j in 1..=leaves {
            let leaf = format!("g2.{a}.i{j}");
            asm.add_vertex(leaf.clone(), centre_m, 0, 1, tag.clone())?;
            asm.graph.add_edge(leaf, centre.clone(), Sign::Minus)?;
        }
        asm.graph
            .add_edge(centre.clone(), format!("w2.{w}+"), Sign::Plus)?;
        asm.graph
            .add_edge(centre.clone(), format!("w2.{w}-"), Sign::Plus)?;
    }

    let report = verify_z_system(&asm.graph, &asm.zsys, &data);
    if let Some(first) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::VerificationFailed(format!(
            "{}: {}",
            first.name, first.detail
        )));
    }
    Ok(ConstructionOutput {
        graph: asm.graph,
        zsys: asm.zsys,
        provenance: asm.provenance,
        report,
    })
}

/// Runs the verification checks of a constructed multiplicity system.
fn verify_z_system(
    graph: &PlumbingGraph,
    zsys: &MultiplicitySystem,
    data: &VerifyData,
) -> VerifyReport {
    let mut report = VerifyReport::default();
    let mut push = |name: &'static str, outcome: std::result::Result<usize, String>| {
        report.checks.push(match outcome {
            Ok(count) => VerifyCheck {
                name,
                passed: true,
                detail: format!("{count} checked"),
            },
            Err(detail) => VerifyCheck {
                name,
                passed: false,
                detail,
            },
        });
    };

    push("residuals", {
        let mut outcome = Ok(graph.vertex_count());
        for id in graph.vertex_ids() {
            match top_ident_residual(graph, zsys, id) {
                Ok(0) => {}
                Ok(r) => {
                    outcome = Err(format!("residual {r} at {id}"));
                    break;
                }
                Err(e) => {
                    outcome = Err(format!("residual at {id}: {e}"));
                    break;
                }
            }
        }
        outcome
    });

    push("dual support", {
        let allowed: std::collections::BTreeSet<&str> = data
            .f1_tops
            .iter()
            .map(|(id, _)| id.as_str())
            .chain(data.w2_plus.iter().map(|(id, _)| id.as_str()))
            .collect();
        match zsys
            .nonzero_n()
            .find(|(id, _)| !allowed.contains(id.as_str()))
        {
            None => Ok(zsys.nonzero_n().count()),
            Some((id, n)) => Err(format!("unexpected dual value {n} at {id}")),
        }
    });

    push(
        "chain top duals",
        check_each(&data.f1_tops, |(id, m_a)| {
            let n = zsys.n(id);
            (n.abs() == *m_a)
                .then_some(())
                .ok_or(format!("dual value {n} at {id} has magnitude != {m_a}"))
        }),
    );

    push(
        "pair duals",
        check_each(&data.w2_plus, |(id, total)| {
            let n = zsys.n(id);
            (n.abs() == *total)
                .then_some(())
                .ok_or(format!("dual value {n} at {id} has magnitude != {total}"))
        }),
    );

    push(
        "bridge top multiplicities",
        check_each(&data.bridge_tops, |(plus, minus, m1, l1)| {
            let got_plus = zsys.m(plus).map_err(|e| e.to_string())?;
            let got_minus = zsys.m(minus).map_err(|e| e.to_string())?;
            if got_plus != m1 - l1 {
                return Err(format!("{plus} carries {got_plus}, expected {}", m1 - l1));
            }
            if got_minus != *l1 {
                return Err(format!("{minus} carries {got_minus}, expected {l1}"));
            }
            Ok(())
        }),
    );

    push(
        "chain closed form",
        check_each(&data.f1_minus, |(id, expected)| {
            let got = zsys.m(id).map_err(|e| e.to_string())?;
            (got == *expected)
                .then_some(())
                .ok_or(format!("{id} carries {got}, expected {expected}"))
        }),
    );

    push(
        "surface copies",
        check_each(&data.copies, |id| {
            let m = zsys.m(id).map_err(|e| e.to_string())?;
            let n = zsys.n(id);
            ((m, n) == (1, 0))
                .then_some(())
                .ok_or(format!("{id} carries (m, n) = ({m}, {n}), expected (1, 0)"))
        }),
    );

    push(
        "pair splits",
        check_each(&data.pair_split, |(plus, minus, m_w)| {
            let a = zsys.m(plus).map_err(|e| e.to_string())?;
            let b = zsys.m(minus).map_err(|e| e.to_string())?;
            (a + b == *m_w)
                .then_some(())
                .ok_or(format!("{plus} + {minus} = {}, expected {m_w}", a + b))
        }),
    );

    report
}

fn check_each<T>(
    items: &[T],
    check: impl Fn(&T) -> std::result::Result<(), String>,
) -> std::result::Result<usize, String> {
    for item in items {
        check(item)?;
    }
    Ok(items.len())
}
