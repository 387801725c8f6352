//! Calculus moves on plumbing graphs.
//!
//! Two moves change the presentation of a plumbed manifold without
//! changing the manifold: flipping the signs around one vertex, and
//! blowing down a vertex of genus zero and Euler number plus or minus one
//! with at most two edges. Both moves carry a multiplicity system along
//! when one is given, and both preserve the residual of
//! [`crate::plumbing::top_ident_residual`] at every remaining vertex.
//!
//! [`normalize`] blows down until no candidate is left, always choosing
//! the smallest eligible identifier, so equal inputs normalize equally.

use crate::error::{Error, Result};
use crate::plumbing::{top_ident_residual, Edge, MultiplicitySystem, PlumbingGraph};

/// Flips the sign of every edge at `v` and negates both multiplicities of
/// `v` when a system is given.
pub fn flip_signs_at(
    graph: &mut PlumbingGraph,
    sys: Option<&mut MultiplicitySystem>,
    v: &str,
) -> Result<()> {
    graph.flip_signs_at(v)?;
    if let Some(sys) = sys {
        sys.negate_at(v)?;
    }
    Ok(())
}

/// Checks the blow-down preconditions at `v`; `Ok` means the move applies.
fn blow_down_check(graph: &PlumbingGraph, sys: Option<&MultiplicitySystem>, v: &str) -> Result<()> {
    let data = graph
        .vertex(v)
        .ok_or_else(|| Error::UnknownVertex(v.to_owned()))?;
    let ineligible = |reason: &'static str| Error::BlowDownIneligible {
        id: v.to_owned(),
        reason,
    };
    if data.genus != 0 {
        return Err(ineligible("genus is nonzero"));
    }
    if data.euler.abs() != 1 {
        return Err(ineligible("euler number is neither 1 nor -1"));
    }
    let edges: Vec<&Edge> = graph.edges_at(v).collect();
    if edges.len() > 2 {
        return Err(ineligible("more than two incident edges"));
    }
    if edges.len() == 2 && edges[0].other(v) == edges[1].other(v) {
        return Err(ineligible("both edges go to the same vertex"));
    }
    if let Some(sys) = sys {
        if sys.n(v) != 0 {
            return Err(ineligible("carries a dual multiplicity"));
        }
        if top_ident_residual(graph, sys, v)? != 0 {
            return Err(ineligible("its residual is nonzero"));
        }
    }
    Ok(())
}

/// Blows down `v`: removes it, corrects the Euler numbers of its
/// neighbours by the negated Euler number of `v`, and, when `v` had two
/// edges, joins the neighbours by a new edge whose sign is the product of
/// the old signs, negated for a (+1)-vertex.
pub fn blow_down(
    graph: &mut PlumbingGraph,
    sys: Option<&mut MultiplicitySystem>,
    v: &str,
) -> Result<()> {
    blow_down_check(graph, sys.as_deref(), v)?;
    let e = graph.vertex(v).expect("checked above").euler;
    let incident: Vec<Edge> = graph.edges_at(v).cloned().collect();
    for edge in &incident {
        let u = edge.other(v).expect("edge at v").clone();
        let euler = graph.vertex(&u).expect("endpoint exists").euler;
        let euler = euler.checked_sub(e).ok_or(Error::Overflow("blow down"))?;
        graph.set_euler(&u, euler)?;
    }
    graph.remove_vertex(v)?;
    if let [first, second] = incident.as_slice() {
        let u1 = first.other(v).expect("edge at v").clone();
        let u2 = second.other(v).expect("edge at v").clone();
        let product = first.sign.times(second.sign);
        let sign = if e == 1 { product.flip() } else { product };
        graph.add_edge(u1, u2, sign)?;
    }
    if let Some(sys) = sys {
        sys.remove(v);
    }
    Ok(())
}

/// Blows down until no vertex is eligible, smallest identifier first.
/// Returns the number of blow-downs performed.
pub fn normalize(
    graph: &mut PlumbingGraph,
    mut sys: Option<&mut MultiplicitySystem>,
) -> Result<usize> {
    let mut count = 0;
    loop {
        let candidate = graph
            .vertex_ids()
            .find(|v| blow_down_check(graph, sys.as_deref(), v).is_ok())
            .cloned();
        match candidate {
            Some(v) => {
                blow_down(graph, sys.as_deref_mut(), &v)?;
                count += 1;
            }
            None => return Ok(count),
        }
    }
}
