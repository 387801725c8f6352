//! Generator for a family of decorated resolution graphs.
//!
//! [`gen_tab`]`(a, b)` returns the resolution graph of the pair
//! `f = x^a + y^b`, `g = x * y` (with `2 <= b <= a`), decorated with its
//! multiplicities. The graph is the minimal regular subdivision of the
//! plane fan containing the ray `(b/d, a/d)`, `d = gcd(a, b)`: a chain of
//! rational curves. The subdivision is found by Stern-Brocot descent from
//! the cone spanned by `(1, 0)` and `(0, 1)`; collecting every mediant on
//! the way keeps adjacent rays at determinant one, which is exactly
//! regularity.
//!
//! For a ray `(p, q)` the pullback orders are `m = min(p*a, q*b)` for `f`
//! and `l = p + q` for `g`. The strict transform of `f` meets the central
//! ray in `d` branches; the two branches of `g` are the axes, meeting the
//! first and last ray of the fan.

use crate::cfrac::gcd;
use crate::error::{Error, Result};
use crate::resolution::{ArrowKind, MultPair, ResolutionGraph};

/// Bails out of descents that would produce absurdly long chains.
const MAX_RAYS: usize = 1 << 20;

/// Builds the decorated resolution graph of `x^a + y^b` against `x * y`.
///
/// Vertices are `v1 .. vN` in fan order, the `d = gcd(a, b)` f-arrowheads
/// are `f1 .. fd` on the central vertex, and the two g-arrowheads are `ga`
/// on `v1` and `gb` on `vN`.
pub fn gen_tab(a: i64, b: i64) -> Result<(ResolutionGraph, MultPair)> {
    if !(2 <= b && b <= a) {
        return Err(Error::GenTabRange { a, b });
    }
    let d = gcd(a, b);
    let target = (b / d, a / d);

    // Stern-Brocot descent towards `target`, collecting the mediants.
    let mut rays: Vec<(i64, i64)> = Vec::new();
    let (mut lo, mut hi) = ((1i64, 0i64), (0i64, 1i64));
    loop {
        let ray = (lo.0 + hi.0, lo.1 + hi.1);
        if rays.len() >= MAX_RAYS {
            return Err(Error::Overflow("fan descent"));
        }
        rays.push(ray);
        // Positive cross product: the target is steeper than `ray`.
        let cross = ray.0 as i128 * target.1 as i128 - ray.1 as i128 * target.0 as i128;
        if cross == 0 {
            break;
        } else if cross > 0 {
            lo = ray;
        } else {
            hi = ray;
        }
    }
    rays.sort_by(|x, y| (x.1 as i128 * y.0 as i128).cmp(&(y.1 as i128 * x.0 as i128)));
    let central = rays
        .iter()
        .position(|&r| r == target)
        .expect("descent ends on the target ray");

    let mut graph = ResolutionGraph::new();
    let mut pair = MultPair::new();
    let last = rays.len() - 1;
    for (i, &(p, q)) in rays.iter().enumerate() {
        // Regularity: the two neighbouring rays sum to a multiple of this
        // one; the factor is the negated Euler number.
        let prev = if i == 0 { (1, 0) } else { rays[i - 1] };
        let next = if i == last { (0, 1) } else { rays[i + 1] };
        let k = (prev.0 + next.0) / p;
        debug_assert_eq!((prev.0 + next.0, prev.1 + next.1), (k * p, k * q));
        let m = (p as i128 * a as i128).min(q as i128 * b as i128);
        let id = format!("v{}", i + 1);
        graph.add_vertex(id.clone(), -k)?;
        pair.set(
            id,
            i64::try_from(m).map_err(|_| Error::Overflow("pullback order"))?,
            p + q,
        );
    }
    for i in 0..last {
        graph.add_edge(format!("v{}", i + 1), format!("v{}", i + 2))?;
    }
    let central_id = format!("v{}", central + 1);
    for i in 1..=d {
        let id = format!("f{i}");
        graph.add_arrow(id.clone(), central_id.clone(), ArrowKind::F)?;
        pair.set(id, 1, 0);
    }
    graph.add_arrow("ga", "v1", ArrowKind::G)?;
    pair.set("ga", 0, 1);
    graph.add_arrow("gb", format!("v{last}", last = last + 1), ArrowKind::G)?;
    pair.set("gb", 0, 1);
    Ok((graph, pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{check_balance, solve_multiplicities, Arrow};

    fn arrow_list(graph: &ResolutionGraph) -> Vec<(String, String, ArrowKind)> {
        graph
            .arrows()
            .map(|(id, Arrow { attach, kind })| (id.clone(), attach.clone(), *kind))
            .collect()
    }

    #[test]
    fn tab_3_2() {
        let (graph, pair) = gen_tab(3, 2).unwrap();
        let vertices: Vec<(String, i64, i64, i64)> = graph
            .vertices()
            .map(|(id, e)| (id.clone(), e, pair.m(id).unwrap(), pair.l(id).unwrap()))
            .collect();
        assert_eq!(
            vertices,
            vec![
                ("v1".into(), -3, 2, 2),
                ("v2".into(), -1, 6, 5),
                ("v3".into(), -2, 3, 3),
            ]
        );
        assert_eq!(
            graph.edges(),
            &[("v1".into(), "v2".into()), ("v2".into(), "v3".into())]
        );
        assert_eq!(
            arrow_list(&graph),
            vec![
                ("f1".into(), "v2".into(), ArrowKind::F),
                ("ga".into(), "v1".into(), ArrowKind::G),
                ("gb".into(), "v3".into(), ArrowKind::G),
            ]
        );
    }

    #[test]
    fn tab_7_5() {
        let (graph, pair) = gen_tab(7, 5).unwrap();
        let vertices: Vec<(String, i64, i64, i64)> = graph
            .vertices()
            .map(|(id, e)| (id.clone(), e, pair.m(id).unwrap(), pair.l(id).unwrap()))
            .collect();
        assert_eq!(
            vertices,
            vec![
                ("v1".into(), -4, 5, 2),
                ("v2".into(), -2, 20, 7),
                ("v3".into(), -1, 35, 12),
                ("v4".into(), -3, 14, 5),
                ("v5".into(), -2, 7, 3),
            ]
        );
        assert_eq!(
            arrow_list(&graph),
            vec![
                ("f1".into(), "v3".into(), ArrowKind::F),
                ("ga".into(), "v1".into(), ArrowKind::G),
                ("gb".into(), "v5".into(), ArrowKind::G),
            ]
        );
    }

    #[test]
    fn tab_4_2_has_two_branches() {
        let (graph, pair) = gen_tab(4, 2).unwrap();
        let vertices: Vec<(String, i64, i64, i64)> = graph
            .vertices()
            .map(|(id, e)| (id.clone(), e, pair.m(id).unwrap(), pair.l(id).unwrap()))
            .collect();
        assert_eq!(
            vertices,
            vec![("v1".into(), -2, 2, 2), ("v2".into(), -1, 4, 3)]
        );
        assert_eq!(
            arrow_list(&graph),
            vec![
                ("f1".into(), "v2".into(), ArrowKind::F),
                ("f2".into(), "v2".into(), ArrowKind::F),
                ("ga".into(), "v1".into(), ArrowKind::G),
                ("gb".into(), "v2".into(), ArrowKind::G),
            ]
        );
    }

    #[test]
    fn tab_2_2_is_a_single_vertex() {
        let (graph, pair) = gen_tab(2, 2).unwrap();
        assert_eq!(graph.vertex_count(), 1);
        assert_eq!(graph.euler("v1").unwrap(), -1);
        assert_eq!((pair.m("v1").unwrap(), pair.l("v1").unwrap()), (2, 2));
        assert_eq!(arrow_list(&graph).len(), 4);
    }

    #[test]
    fn range_is_enforced() {
        assert_eq!(gen_tab(2, 3), Err(Error::GenTabRange { a: 2, b: 3 }));
        assert_eq!(gen_tab(5, 1), Err(Error::GenTabRange { a: 5, b: 1 }));
        assert_eq!(gen_tab(0, 0), Err(Error::GenTabRange { a: 0, b: 0 }));
    }

    /// Generated graphs are valid, balanced, and their vertex
    /// multiplicities agree with the exact solver run from the arrowhead
    /// data alone.
    #[test]
    fn sweep_is_balanced_and_solvable() {
        for a in 2..=12 {
            for b in 2..=a {
                let (graph, pair) = gen_tab(a, b).unwrap();
                graph.validate().unwrap();
                pair.validate(&graph).unwrap();
                assert_eq!(check_balance(&graph, &pair).unwrap(), Vec::new());
                let mut arrows_only = MultPair::new();
                for (id, _) in graph.arrows() {
                    arrows_only.set(id.clone(), pair.m(id).unwrap(), pair.l(id).unwrap());
                }
                assert_eq!(solve_multiplicities(&graph, &arrows_only).unwrap(), pair);
            }
        }
    }
}
