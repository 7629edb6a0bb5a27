//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rigidity_core::connectivity::is_vertex_cover;
use rigidity_core::graphs::{BipartiteGraph, SemisimpleGraph, Side};

pub fn subsets(items: &[usize]) -> Vec<BTreeSet<usize>> {
    (0u32..1 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

pub fn reachable(g: &SemisimpleGraph, from: usize, to: usize, removed: &BTreeSet<usize>, skip: (usize, usize)) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(a) = stack.pop() {
        if a == to {
            return true;
        }
        for &b in g.neighbors(a) {
            if (a.min(b), a.max(b)) == skip || removed.contains(&b) {
                continue;
            }
            if seen.insert(b) {
                stack.push(b);
            }
        }
    }
    false
}

/// Smallest vertex cut between `u` and `v`, plus one for a direct edge.
pub fn brute_local_connectivity(g: &SemisimpleGraph, u: usize, v: usize) -> usize {
    let others: Vec<usize> = (0..g.vertex_count()).filter(|&w| w != u && w != v).collect();
    let skip = (u.min(v), u.max(v));
    let cut = subsets(&others)
        .into_iter()
        .filter(|s| !reachable(g, u, v, s, skip))
        .map(|s| s.len())
        .min()
        .expect("removing everything else separates");
    cut + usize::from(g.has_edge(u, v))
}

pub fn brute_connected(g: &SemisimpleGraph, removed: &BTreeSet<usize>) -> bool {
    let alive: Vec<usize> = (0..g.vertex_count()).filter(|v| !removed.contains(v)).collect();
    alive.iter().all(|&w| reachable(g, alive[0], w, removed, (usize::MAX, usize::MAX)))
}

pub fn brute_k_biconnected(g: &BipartiteGraph, k: usize) -> bool {
    if g.size_a() < k || g.size_b() < k {
        return false;
    }
    let a: Vec<usize> = g.class(Side::A).collect();
    let b: Vec<usize> = g.class(Side::B).collect();
    let sa: Vec<_> = subsets(&a).into_iter().filter(|s| s.len() < k).collect();
    let sb: Vec<_> = subsets(&b).into_iter().filter(|s| s.len() < k).collect();
    sa.iter().all(|x| sb.iter().all(|y| brute_connected(g.as_semisimple(), &x.union(y).copied().collect())))
}

pub fn brute_cover_size(g: &SemisimpleGraph) -> usize {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    subsets(&all).into_iter().filter(|s| is_vertex_cover(g, s)).map(|s| s.len()).min().unwrap()
}

/// Rank of the cycle matroid by union-find.
pub fn forest_rank(g: &SemisimpleGraph) -> usize {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut rank = 0;
    for (u, v) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            rank += 1;
        }
    }
    rank
}

/// Rank of the even cycle matroid: a component contributes all its vertices
/// when a parity search meets a loop or an odd cycle, and one fewer otherwise.
pub fn parity_rank(g: &SemisimpleGraph) -> usize {
    let n = g.vertex_count();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut rank = 0;
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let (mut size, mut odd) = (0, false);
        let mut stack = vec![root];
        while let Some(a) = stack.pop() {
            size += 1;
            let ca = colour[a].unwrap();
            for &b in g.neighbors(a) {
                match colour[b] {
                    None => {
                        colour[b] = Some(!ca);
                        stack.push(b);
                    }
                    Some(cb) if cb == ca => odd = true,
                    Some(_) => {}
                }
            }
        }
        rank += if odd { size } else { size - 1 };
    }
    rank
}

/// Whether every `K'` with `start ⊆ K' ⊊ V` has an outside vertex `x` with
/// `|(K' + x) ∩ N(x)| >= d`, over bitmasks.
pub fn reaches_by_quantifier(g: &SemisimpleGraph, d: usize, start: u32) -> bool {
    let n = g.vertex_count();
    let full = (1u32 << n) - 1;
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    (0..=full)
        .filter(|&k| k & start == start && k != full)
        .all(|k| (0..n).filter(|&x| k >> x & 1 == 0).any(|x| (adj[x] & (k | 1 << x)).count_ones() as usize >= d))
}
