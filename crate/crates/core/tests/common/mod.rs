//! Shared fixtures and independent oracles for the integration suites.
//!
//! Everything here recomputes its answers from first principles: girth by
//! depth-first search over simple cycles, graph classes by exhaustive
//! bitmask generation with a permutation-minimal canonical form, local
//! degree patterns by explicit tree construction. Agreement with the
//! library is then evidence rather than tautology.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cdg_core::{
    make_cycle, make_path, make_spider, make_star, make_star3_ext, Girth, LaplacianMode, Rational,
    Scalar, Vertex, WeightedGraph,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

// ─── Fixtures ────────────────────────────────────────────────────────────

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes. 3-regular,
/// girth 5, and not in any of the nonnegatively curved families.
pub fn petersen(mode: LaplacianMode) -> WeightedGraph {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    WeightedGraph::unweighted(&edges, mode).expect("fixture is simple and connected")
}

/// Every named family member small enough for desk checks, plus the
/// Petersen graph and two spiders that sit just outside the families.
pub fn family_fixtures(mode: LaplacianMode) -> Vec<WeightedGraph> {
    let mut graphs = Vec::new();
    for k in 1..=10 {
        graphs.push(make_path(k, mode).unwrap());
    }
    for n in 3..=12 {
        graphs.push(make_cycle(n, mode).unwrap());
    }
    for n in 3..=8 {
        graphs.push(make_star(n, mode).unwrap());
    }
    for i in 1..=3 {
        graphs.push(make_star3_ext(i, mode).unwrap());
    }
    graphs.push(make_spider(&[3, 1, 1], mode).unwrap());
    graphs.push(make_spider(&[2, 2, 2], mode).unwrap());
    graphs.push(petersen(mode));
    graphs
}

/// A tree of depth two realizing one local degree pattern: a center of the
/// given degree whose neighbors have the prescribed degrees. The center is
/// vertex 0, its neighbors are 1..=d.
pub fn depth2_tree(neighbor_degrees: &[usize], mode: LaplacianMode) -> WeightedGraph {
    let d = neighbor_degrees.len();
    assert!(d >= 1);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut next = d + 1;
    for (i, &dy) in neighbor_degrees.iter().enumerate() {
        assert!(dy >= 1);
        edges.push((0, i + 1));
        for _ in 0..dy - 1 {
            edges.push((i + 1, next));
            next += 1;
        }
    }
    WeightedGraph::unweighted(&edges, mode).expect("trees are simple and connected")
}

/// All nondecreasing degree sequences of the given length with entries in
/// `1..=max_degree`; one per multiset.
pub fn degree_multisets(max_degree: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn fill(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, len: usize, lo: usize, hi: usize) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in lo..=hi {
            current.push(v);
            fill(out, current, len, v, hi);
            current.pop();
        }
    }
    fill(&mut out, &mut current, len, 1, max_degree);
    out
}

// ─── Random graphs ───────────────────────────────────────────────────────

/// Connected edge set on `n` vertices: a random recursive tree plus
/// `extra` distinct random chords.
pub fn random_connected_edges(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
) -> Vec<(Vertex, Vertex)> {
    assert!(n >= 2);
    let mut present: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present.insert((u, v));
    }
    let max_edges = n * (n - 1) / 2;
    let mut budget = extra;
    let mut attempts = 0;
    while budget > 0 && present.len() < max_edges && attempts < 64 * extra.max(1) {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let key = (u.min(v), u.max(v));
        if u != v && present.insert(key) {
            budget -= 1;
        }
    }
    present.into_iter().collect()
}

pub fn random_unweighted(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
    mode: LaplacianMode,
) -> WeightedGraph {
    let edges = random_connected_edges(rng, n, extra);
    WeightedGraph::unweighted(&edges, mode).expect("construction yields a connected simple graph")
}

/// A value drawn uniformly from `(0, 10]`.
pub fn positive_value(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let v = rng.gen_range(0.0..=10.0);
        if v > 0.0 {
            return v;
        }
    }
}

/// Random graph with custom vertex measures and edge weights in `(0, 10]`.
pub fn random_weighted(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> WeightedGraph {
    let edges: Vec<(Vertex, Vertex, f64)> = random_connected_edges(rng, n, extra)
        .into_iter()
        .map(|(u, v)| (u, v, positive_value(rng)))
        .collect();
    let measures: BTreeMap<Vertex, f64> = (0..n).map(|v| (v, positive_value(rng))).collect();
    WeightedGraph::build_f64(&edges, Some(&measures), LaplacianMode::Custom)
        .expect("weights and measures are positive")
}

pub fn random_f_float(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect()
}

pub fn random_f_rational(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_int(rng.gen_range(-9..=9)))
        .collect()
}

// ─── Girth oracle ────────────────────────────────────────────────────────

/// Length of the shortest simple cycle through `x`, by depth-first search
/// over simple paths starting at `x`, pruned at the best length found.
pub fn oracle_girth_at(g: &WeightedGraph, x: Vertex) -> Girth {
    fn dfs(
        g: &WeightedGraph,
        start: Vertex,
        current: Vertex,
        len: usize,
        on_path: &mut Vec<bool>,
        best: &mut Option<usize>,
    ) {
        if let Some(b) = *best {
            if len + 1 >= b {
                return;
            }
        }
        for &y in g.neighbors(current).expect("vertex exists") {
            if y == start && len >= 2 {
                let cycle = len + 1;
                if best.is_none_or(|b| cycle < b) {
                    *best = Some(cycle);
                }
            } else if !on_path[y] && y != start {
                on_path[y] = true;
                dfs(g, start, y, len + 1, on_path, best);
                on_path[y] = false;
            }
        }
    }
    let mut on_path = vec![false; g.vertex_count()];
    on_path[x] = true;
    let mut best = None;
    dfs(g, x, x, 0, &mut on_path, &mut best);
    match best {
        Some(len) => Girth::Finite(len as u32),
        None => Girth::Infinite,
    }
}

pub fn oracle_girth(g: &WeightedGraph) -> Girth {
    g.vertices()
        .map(|x| oracle_girth_at(g, x))
        .min()
        .unwrap_or(Girth::Infinite)
}

// ─── Exhaustive class oracle ─────────────────────────────────────────────

/// One representative per isomorphism class of connected graphs on exactly
/// `2..=max_vertices` vertices with the given minimum degree and girth
/// floor, by filtering every labeled graph and keeping the minimum edge
/// bitmask over all vertex permutations. Feasible for `max_vertices <= 6`.
pub fn naive_classes(
    max_vertices: usize,
    min_degree: usize,
    girth_floor: u32,
) -> Vec<WeightedGraph> {
    assert!((2..=6).contains(&max_vertices));
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let pairs: Vec<(Vertex, Vertex)> =
            (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(Vertex, Vertex)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            if !mask_is_connected(n, &edges) {
                continue;
            }
            let g = WeightedGraph::unweighted(&edges, LaplacianMode::Physical).unwrap();
            if (0..n).any(|v| g.combinatorial_degree(v).unwrap() < min_degree) {
                continue;
            }
            if !oracle_girth(&g).at_least(girth_floor) {
                continue;
            }
            if seen.insert(min_mask_over_permutations(n, &pairs, &edges)) {
                out.push(g);
            }
        }
    }
    out
}

fn mask_is_connected(n: usize, edges: &[(Vertex, Vertex)]) -> bool {
    let mut reach = vec![false; n];
    reach[0] = true;
    let mut frontier = vec![0usize];
    while let Some(v) = frontier.pop() {
        for &(a, b) in edges {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !reach[other] {
                reach[other] = true;
                frontier.push(other);
            }
        }
    }
    reach.into_iter().all(|r| r)
}

fn min_mask_over_permutations(
    n: usize,
    pairs: &[(Vertex, Vertex)],
    edges: &[(Vertex, Vertex)],
) -> u32 {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;
    permute(&mut perm, 0, &mut |p| {
        let mut mask = 0u32;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if adj[p[u]][p[v]] {
                mask |= 1 << i;
            }
        }
        if mask < best {
            best = mask;
        }
    });
    best
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Applies a random relabeling to the edge list of `g` and rebuilds it.
pub fn random_relabel(rng: &mut ChaCha8Rng, g: &WeightedGraph) -> WeightedGraph {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    WeightedGraph::unweighted(&edges, g.mode()).expect("relabeling preserves validity")
}
