//! Isomorphism of decorated plumbing graphs.
//!
//! Two plumbing graphs are isomorphic when a bijection of vertices preserves
//! Euler numbers, genera, and the signed edge multiset (parallel edges
//! count with multiplicity, separately per sign). [`decorated_isomorphic`]
//! additionally requires the bijection to carry one multiplicity system to
//! the other.
//!
//! The search runs colour refinement to split vertices into classes, then
//! backtracks within classes. Graphs larger than [`SIZE_LIMIT`] vertices are
//! rejected rather than risking a pathological search.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::plumbing::{MultiplicitySystem, PlumbingGraph, Sign};

/// Largest vertex count accepted by the isomorphism search.
pub const SIZE_LIMIT: usize = 200;

/// Signed adjacency count between one ordered pair of vertices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
struct PairCount {
    plus: u32,
    minus: u32,
}

/// One graph flattened to indices: decorations plus signed adjacency counts.
struct Flat {
    /// Per-vertex decoration key: (euler, genus, m, n); m and n are zero
    /// when no multiplicity system is being compared.
    deco: Vec<(i64, u32, i64, i64)>,
    /// adj[i] maps neighbour index to the parallel-edge counts.
    adj: Vec<BTreeMap<usize, PairCount>>,
}

impl Flat {
    fn build(graph: &PlumbingGraph, sys: Option<&MultiplicitySystem>) -> Result<Self> {
        let index: BTreeMap<&str, usize> = graph
            .vertex_ids()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let mut deco = Vec::with_capacity(index.len());
        for (id, data) in graph.vertices() {
            let (m, n) = match sys {
                Some(sys) => (sys.m(id)?, sys.n(id)),
                None => (0, 0),
            };
            deco.push((data.euler, data.genus, m, n));
        }
        let mut adj = vec![BTreeMap::<usize, PairCount>::new(); index.len()];
        for edge in graph.edges() {
            let (i, j) = (index[edge.a.as_str()], index[edge.b.as_str()]);
            for (from, to) in [(i, j), (j, i)] {
                let count = adj[from].entry(to).or_default();
                match edge.sign {
                    Sign::Plus => count.plus += 1,
                    Sign::Minus => count.minus += 1,
                }
            }
        }
        Ok(Flat { deco, adj })
    }

    fn len(&self) -> usize {
        self.deco.len()
    }
}

/// Stable colour refinement over both graphs at once, so equal colours mean
/// equal signatures across graphs. Returns one colour per vertex, per graph.
fn refine(a: &Flat, b: &Flat) -> (Vec<u64>, Vec<u64>) {
    let assign_initial = |flat: &Flat, table: &mut BTreeMap<(i64, u32, i64, i64), u64>| {
        flat.deco
            .iter()
            .map(|key| {
                let next = table.len() as u64;
                *table.entry(*key).or_insert(next)
            })
            .collect::<Vec<u64>>()
    };
    let mut table = BTreeMap::new();
    let mut col_a = assign_initial(a, &mut table);
    let mut col_b = assign_initial(b, &mut table);

    // Each round appends the sorted multiset of (neighbour colour, signed
    // counts) to the current colour; ranks are shared between the graphs.
    loop {
        let signature = |flat: &Flat, col: &[u64], i: usize| {
            let mut neigh: Vec<(u64, PairCount)> = flat.adj[i]
                .iter()
                .map(|(&j, &count)| (col[j], count))
                .collect();
            neigh.sort();
            (col[i], neigh)
        };
        let mut table: BTreeMap<(u64, Vec<(u64, PairCount)>), u64> = BTreeMap::new();
        let mut rank = |key: (u64, Vec<(u64, PairCount)>)| {
            let next = table.len() as u64;
            *table.entry(key).or_insert(next)
        };
        let next_a: Vec<u64> = (0..a.len())
            .map(|i| rank(signature(a, &col_a, i)))
            .collect();
        let next_b: Vec<u64> = (0..b.len())
            .map(|i| rank(signature(b, &col_b, i)))
            .collect();
        if next_a == col_a && next_b == col_b {
            return (col_a, col_b);
        }
        col_a = next_a;
        col_b = next_b;
    }
}

fn histogram(colours: &[u64]) -> BTreeMap<u64, usize> {
    let mut hist = BTreeMap::new();
    for &c in colours {
        *hist.entry(c).or_insert(0) += 1;
    }
    hist
}

/// Backtracking search for a colour-respecting bijection that preserves
/// signed adjacency counts.
fn search(a: &Flat, b: &Flat, col_a: &[u64], col_b: &[u64]) -> bool {
    let n = a.len();
    // Map vertices of `a` in order of ascending colour-class size so the
    // most constrained choices come first.
    let mut class_size: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in col_a {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (class_size[&col_a[i]], col_a[i], i));

    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used: Vec<bool> = vec![false; n];

    struct Ctx<'a> {
        a: &'a Flat,
        b: &'a Flat,
        col_a: &'a [u64],
        col_b: &'a [u64],
        order: &'a [usize],
    }

    fn step(ctx: &Ctx, depth: usize, image: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> bool {
        let Some(&i) = ctx.order.get(depth) else {
            return true;
        };
        'candidate: for j in 0..ctx.b.len() {
            if used[j] || ctx.col_b[j] != ctx.col_a[i] {
                continue;
            }
            // Signed adjacency towards every already-mapped vertex must
            // match exactly; unmapped neighbours are checked later.
            for (&k, &count) in &ctx.a.adj[i] {
                if let Some(mapped) = image[k] {
                    if ctx.b.adj[j].get(&mapped).copied().unwrap_or_default() != count {
                        continue 'candidate;
                    }
                }
            }
            for (&k, &count) in &ctx.b.adj[j] {
                if let Some(pre) = image.iter().position(|&im| im == Some(k)) {
                    if ctx.a.adj[i].get(&pre).copied().unwrap_or_default() != count {
                        continue 'candidate;
                    }
                }
            }
            image[i] = Some(j);
            used[j] = true;
            if step(ctx, depth + 1, image, used) {
                return true;
            }
            image[i] = None;
            used[j] = false;
        }
        false
    }

    let ctx = Ctx {
        a,
        b,
        col_a,
        col_b,
        order: &order,
    };
    step(&ctx, 0, &mut image, &mut used)
}

fn isomorphic_flat(a: Flat, b: Flat) -> Result<bool> {
    let size = a.len().max(b.len());
    if size > SIZE_LIMIT {
        return Err(Error::IsoTooLarge {
            size,
            limit: SIZE_LIMIT,
        });
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    let (col_a, col_b) = refine(&a, &b);
    if histogram(&col_a) != histogram(&col_b) {
        return Ok(false);
    }
    Ok(search(&a, &b, &col_a, &col_b))
}

/// Isomorphism of bare plumbing graphs (Euler numbers, genera, signed
/// edge multisets).
pub fn graphs_isomorphic(a: &PlumbingGraph, b: &PlumbingGraph) -> Result<bool> {
    isomorphic_flat(Flat::build(a, None)?, Flat::build(b, None)?)
}

/// Isomorphism of plumbing graphs together with multiplicity systems.
pub fn decorated_isomorphic(
    a: &PlumbingGraph,
    sys_a: &MultiplicitySystem,
    b: &PlumbingGraph,
    sys_b: &MultiplicitySystem,
) -> Result<bool> {
    isomorphic_flat(Flat::build(a, Some(sys_a))?, Flat::build(b, Some(sys_b))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all vertex bijections; ground truth for small cases.
    fn oracle(a: &PlumbingGraph, b: &PlumbingGraph) -> bool {
        if a.vertex_count() != b.vertex_count() {
            return false;
        }
        let flat_a = Flat::build(a, None).unwrap();
        let flat_b = Flat::build(b, None).unwrap();
        let n = flat_a.len();
        assert!(n <= 7, "oracle is factorial; keep cases tiny");
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let ok = (0..n).all(|i| flat_a.deco[i] == flat_b.deco[perm[i]])
                && (0..n).all(|i| {
                    (0..n).all(|j| {
                        flat_a.adj[i].get(&j).copied().unwrap_or_default()
                            == flat_b.adj[perm[i]]
                                .get(&perm[j])
                                .copied()
                                .unwrap_or_default()
                    })
                });
            if ok {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(perm: &mut [usize]) -> bool {
        let n = perm.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
        true
    }

    fn path(ids: &[&str], eulers: &[i64], signs: &[Sign]) -> PlumbingGraph {
        let mut g = PlumbingGraph::new();
        for (id, &e) in ids.iter().zip(eulers) {
            g.add_vertex(*id, e, 0).unwrap();
        }
        for (k, &s) in signs.iter().enumerate() {
            g.add_edge(ids[k], ids[k + 1], s).unwrap();
        }
        g
    }

    #[test]
    fn relabelled_path_is_isomorphic() {
        let a = path(&["p", "q", "r"], &[-2, -3, -2], &[Sign::Plus, Sign::Minus]);
        let b = path(&["z", "y", "x"], &[-2, -3, -2], &[Sign::Minus, Sign::Plus]);
        assert!(graphs_isomorphic(&a, &b).unwrap());
        assert!(oracle(&a, &b));
    }

    #[test]
    fn edge_sign_distinguishes() {
        let a = path(&["p", "q", "r"], &[-2, -3, -4], &[Sign::Plus, Sign::Plus]);
        let b = path(&["p", "q", "r"], &[-2, -3, -4], &[Sign::Plus, Sign::Minus]);
        assert!(!graphs_isomorphic(&a, &b).unwrap());
        assert!(!oracle(&a, &b));
    }

    #[test]
    fn genus_distinguishes() {
        let mut a = PlumbingGraph::new();
        a.add_vertex("v", -1, 0).unwrap();
        let mut b = PlumbingGraph::new();
        b.add_vertex("v", -1, 1).unwrap();
        assert!(!graphs_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn parallel_edge_multiplicity_distinguishes() {
        // Same vertex decorations and total edge count, different split of
        // parallel edges between the two adjacent pairs.
        let mut a = path(&["p", "q", "r"], &[-2, -3, -4], &[Sign::Plus, Sign::Plus]);
        a.add_edge("p", "q", Sign::Plus).unwrap();
        let mut b = path(&["p", "q", "r"], &[-2, -3, -4], &[Sign::Plus, Sign::Plus]);
        b.add_edge("q", "r", Sign::Plus).unwrap();
        assert!(!graphs_isomorphic(&a, &b).unwrap());
        assert!(!oracle(&a, &b));
    }

    #[test]
    fn multiplicity_system_distinguishes() {
        let g = path(&["p", "q"], &[-2, -2], &[Sign::Plus]);
        let mut sys1 = MultiplicitySystem::new();
        sys1.set_m("p", 1);
        sys1.set_m("q", 2);
        let mut sys2 = MultiplicitySystem::new();
        sys2.set_m("p", 2);
        sys2.set_m("q", 1);
        let mut sys3 = MultiplicitySystem::new();
        sys3.set_m("p", 1);
        sys3.set_m("q", 1);
        // Swapping m along the symmetric path is still isomorphic; changing
        // the multiset of values is not.
        assert!(decorated_isomorphic(&g, &sys1, &g, &sys2).unwrap());
        assert!(!decorated_isomorphic(&g, &sys1, &g, &sys3).unwrap());
    }

    #[test]
    fn symmetric_cycle_needs_backtracking() {
        // A 6-cycle with constant decorations has a colour-homogeneous
        // refinement; only the search proves the isomorphism.
        let ids = ["a", "b", "c", "d", "e", "f"];
        let mut g1 = PlumbingGraph::new();
        let mut g2 = PlumbingGraph::new();
        for id in ids {
            g1.add_vertex(id, -2, 0).unwrap();
            g2.add_vertex(id, -2, 0).unwrap();
        }
        for k in 0..6 {
            let s = if k % 2 == 0 { Sign::Plus } else { Sign::Minus };
            g1.add_edge(ids[k], ids[(k + 1) % 6], s).unwrap();
        }
        // Same cycle, rotated by one: signs shift parity.
        for k in 0..6 {
            let s = if k % 2 == 1 { Sign::Plus } else { Sign::Minus };
            g2.add_edge(ids[k], ids[(k + 1) % 6], s).unwrap();
        }
        assert!(graphs_isomorphic(&g1, &g2).unwrap());
        assert!(oracle(&g1, &g2));
    }

    #[test]
    fn oracle_agreement_on_seeded_random_graphs() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x15011907);
        let ids = ["a", "b", "c", "d", "e"];
        for _ in 0..60 {
            let build = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut g = PlumbingGraph::new();
                for id in ids {
                    g.add_vertex(id, rng.random_range(-3..0), 0).unwrap();
                }
                for i in 0..ids.len() {
                    for j in (i + 1)..ids.len() {
                        for _ in 0..rng.random_range(0..2) {
                            let s = if rng.random_bool(0.5) {
                                Sign::Plus
                            } else {
                                Sign::Minus
                            };
                            g.add_edge(ids[i], ids[j], s).unwrap();
                        }
                    }
                }
                g
            };
            let a = build(&mut rng);
            let b = build(&mut rng);
            assert_eq!(graphs_isomorphic(&a, &b).unwrap(), oracle(&a, &b));
            assert!(graphs_isomorphic(&a, &a).unwrap());
        }
    }

    #[test]
    fn size_limit_is_enforced() {
        let mut g = PlumbingGraph::new();
        for i in 0..=SIZE_LIMIT {
            g.add_vertex(format!("v{i}"), -2, 0).unwrap();
        }
        assert_eq!(
            graphs_isomorphic(&g, &g),
            Err(Error::IsoTooLarge {
                size: SIZE_LIMIT + 1,
                limit: SIZE_LIMIT,
            })
        );
    }
}
