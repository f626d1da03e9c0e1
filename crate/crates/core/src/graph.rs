//! Weighted graphs with the usual Laplacian normalizations, BFS metrics,
//! girth, and the pruned second ball used by the local tree criterion.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_from_f64, rational_to_f64, Rational, Scalar};

pub type Vertex = usize;

/// Length of the shortest simple cycle through a vertex, or through any
/// vertex for the graph-level girth. Acyclic neighborhoods report
/// [`Girth::Infinite`], which compares greater than every finite girth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Choice of vertex measure in the Laplacian `(1/m_x) sum mu_xy (f(y)-f(x))`.
///
/// `Normalized` takes `m_x` as the weighted vertex degree `sum_y mu_xy`,
/// `Physical` takes `m_x = 1`, and `Custom` uses caller-supplied measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianMode {
    Normalized,
    Physical,
    Custom,
}

impl fmt::Display for LaplacianMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaplacianMode::Normalized => write!(f, "normalized"),
            LaplacianMode::Physical => write!(f, "physical"),
            LaplacianMode::Custom => write!(f, "custom"),
        }
    }
}

/// Finite connected simple graph with positive edge weights and a positive
/// vertex measure. Vertex ids are dense `0..n-1`; adjacency lists are sorted,
/// and every weight is stored exactly with a cached `f64` view.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    mode: LaplacianMode,
    adj: Vec<Vec<Vertex>>,
    w: Vec<Vec<Rational>>,
    wf: Vec<Vec<f64>>,
    m: Vec<Rational>,
    mf: Vec<f64>,
    unweighted: bool,
}

/// Second ball around a vertex with the edges between its outer sphere
/// removed: vertex set `{center} + sphere1 + sphere2`, edge set all edges of
/// the induced second ball having at least one endpoint in the first ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexNeighborhood {
    pub center: Vertex,
    pub sphere1: Vec<Vertex>,
    pub sphere2: Vec<Vertex>,
    pub hat_edges: Vec<(Vertex, Vertex)>,
}

impl VertexNeighborhood {
    pub fn vertex_count(&self) -> usize {
        1 + self.sphere1.len() + self.sphere2.len()
    }

    /// True when the pruned second ball is connected and acyclic.
    pub fn is_tree(&self) -> bool {
        let verts: Vec<Vertex> = std::iter::once(self.center)
            .chain(self.sphere1.iter().copied())
            .chain(self.sphere2.iter().copied())
            .collect();
        let index: BTreeMap<Vertex, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if self.hat_edges.len() != verts.len() - 1 {
            return false;
        }
        let mut adj = vec![Vec::new(); verts.len()];
        for &(u, v) in &self.hat_edges {
            let (iu, iv) = (index[&u], index[&v]);
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        let mut seen = vec![false; verts.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == verts.len()
    }
}

impl WeightedGraph {
    /// Builds a graph from weighted edges and, in custom mode, vertex
    /// measures. Vertex ids must be dense, edges simple with positive
    /// weights, and the resulting graph connected with at least two vertices.
    pub fn build(
        edges: &[(Vertex, Vertex, Rational)],
        measures: Option<&BTreeMap<Vertex, Rational>>,
        mode: LaplacianMode,
    ) -> Result<Self> {
        if measures.is_some() && mode != LaplacianMode::Custom {
            return Err(Error::UnexpectedMeasures);
        }

        let mut seen_edges = BTreeSet::new();
        for &(u, v, ref weight) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen_edges.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            if !weight.is_positive() {
                return Err(Error::NonpositiveWeight(key.0, key.1));
            }
        }

        let mut present = BTreeSet::new();
        let mut max_id = 0usize;
        for &(u, v, _) in edges {
            present.insert(u);
            present.insert(v);
            max_id = max_id.max(u).max(v);
        }
        if let Some(ms) = measures {
            for &v in ms.keys() {
                present.insert(v);
                max_id = max_id.max(v);
            }
        }
        if present.len() < 2 {
            return Err(Error::SingleVertex);
        }
        let n = max_id + 1;
        for v in 0..n {
            if !present.contains(&v) {
                return Err(Error::NonDenseIds(v, max_id));
            }
        }

        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        let mut w: Vec<Vec<Rational>> = vec![Vec::new(); n];
        for &(u, v, ref weight) in edges {
            adj[u].push(v);
            w[u].push(weight.clone());
            adj[v].push(u);
            w[v].push(weight.clone());
        }
        for x in 0..n {
            let mut order: Vec<usize> = (0..adj[x].len()).collect();
            order.sort_by_key(|&i| adj[x][i]);
            adj[x] = order.iter().map(|&i| adj[x][i]).collect();
            w[x] = order.iter().map(|&i| w[x][i].clone()).collect();
        }

        let m: Vec<Rational> = match mode {
            LaplacianMode::Normalized => (0..n)
                .map(|x| w[x].iter().fold(Rational::zero(), |a, b| a + b.clone()))
                .collect(),
            LaplacianMode::Physical => vec![Rational::one(); n],
            LaplacianMode::Custom => {
                let ms = measures.ok_or(Error::MissingMeasure(0))?;
                let mut out = Vec::with_capacity(n);
                for x in 0..n {
                    let v = ms.get(&x).ok_or(Error::MissingMeasure(x))?;
                    if !v.is_positive() {
                        return Err(Error::NonpositiveMeasure(x));
                    }
                    out.push(v.clone());
                }
                out
            }
        };

        let unweighted = w.iter().flatten().all(|x| x.is_one());
        let wf = w
            .iter()
            .map(|row| row.iter().map(rational_to_f64).collect())
            .collect();
        let mf = m.iter().map(rational_to_f64).collect();
        let g = WeightedGraph {
            mode,
            adj,
            w,
            wf,
            m,
            mf,
            unweighted,
        };
        g.check_connected()?;
        Ok(g)
    }

    /// Convenience builder taking `f64` weights, converted exactly (every
    /// `f64` is a dyadic rational).
    pub fn build_f64(
        edges: &[(Vertex, Vertex, f64)],
        measures: Option<&BTreeMap<Vertex, f64>>,
        mode: LaplacianMode,
    ) -> Result<Self> {
        let conv = |v: f64, ctx: &str| {
            rational_from_f64(v).ok_or_else(|| Error::BadParameter(format!("{ctx} is not finite")))
        };
        let mut exact_edges = Vec::with_capacity(edges.len());
        for &(u, v, weight) in edges {
            exact_edges.push((u, v, conv(weight, "edge weight")?));
        }
        let exact_measures = match measures {
            None => None,
            Some(ms) => {
                let mut out = BTreeMap::new();
                for (&v, &value) in ms {
                    out.insert(v, conv(value, "vertex measure")?);
                }
                Some(out)
            }
        };
        Self::build(&exact_edges, exact_measures.as_ref(), mode)
    }

    /// Builds an unweighted graph (every `mu = 1`) in normalized or physical
    /// mode.
    pub fn unweighted(edges: &[(Vertex, Vertex)], mode: LaplacianMode) -> Result<Self> {
        if mode == LaplacianMode::Custom {
            return Err(Error::BadParameter(
                "unweighted construction needs normalized or physical mode".into(),
            ));
        }
        let weighted: Vec<(Vertex, Vertex, Rational)> = edges
            .iter()
            .map(|&(u, v)| (u, v, Rational::one()))
            .collect();
        Self::build(&weighted, None, mode)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        if count == n {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn mode(&self) -> LaplacianMode {
        self.mode
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.vertex_count()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn contains(&self, x: Vertex) -> bool {
        x < self.vertex_count()
    }

    fn check_vertex(&self, x: Vertex) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(x))
        }
    }

    /// Neighbors of `x`, ascending.
    pub fn neighbors(&self, x: Vertex) -> Result<&[Vertex]> {
        self.check_vertex(x)?;
        Ok(&self.adj[x])
    }

    pub fn is_edge(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.adj[u].binary_search(&v).is_ok())
    }

    /// Number of neighbors of `x`.
    pub fn combinatorial_degree(&self, x: Vertex) -> Result<usize> {
        self.check_vertex(x)?;
        Ok(self.adj[x].len())
    }

    /// Weighted degree `D_x = (1/m_x) sum_y mu_xy`.
    pub fn weighted_degree<S: Scalar>(&self, x: Vertex) -> Result<S> {
        self.check_vertex(x)?;
        let mut acc = S::zero();
        for idx in 0..self.adj[x].len() {
            acc = acc + S::edge_weight(self, x, idx);
        }
        Ok(acc / S::measure(self, x))
    }

    /// Weight of the edge `{u, v}`.
    pub fn edge_weight<S: Scalar>(&self, u: Vertex, v: Vertex) -> Result<S> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        match self.adj[u].binary_search(&v) {
            Ok(idx) => Ok(S::edge_weight(self, u, idx)),
            Err(_) => Err(Error::NotAdjacent(u, v)),
        }
    }

    /// Vertex measure `m_x`.
    pub fn measure<S: Scalar>(&self, x: Vertex) -> Result<S> {
        self.check_vertex(x)?;
        Ok(S::measure(self, x))
    }

    pub fn is_unweighted(&self) -> bool {
        self.unweighted
    }

    /// True when every edge weight is 1 and `m_x` equals the vertex degree,
    /// i.e. the graph carries the unweighted normalized Laplacian.
    pub fn is_unweighted_normalized(&self) -> bool {
        self.unweighted
            && self
                .vertices()
                .all(|x| self.m[x] == Rational::from_int(self.adj[x].len() as i64))
    }

    /// True when every edge weight and every vertex measure is 1.
    pub fn is_unweighted_physical(&self) -> bool {
        self.unweighted && self.m.iter().all(|v| v.is_one())
    }

    pub(crate) fn edge_weight_f64(&self, x: Vertex, idx: usize) -> f64 {
        self.wf[x][idx]
    }

    pub(crate) fn edge_weight_exact(&self, x: Vertex, idx: usize) -> &Rational {
        &self.w[x][idx]
    }

    pub(crate) fn measure_f64(&self, x: Vertex) -> f64 {
        self.mf[x]
    }

    pub(crate) fn measure_exact(&self, x: Vertex) -> &Rational {
        &self.m[x]
    }

    pub(crate) fn neighbor_index(&self, x: Vertex, y: Vertex) -> Option<usize> {
        self.adj[x].binary_search(&y).ok()
    }

    fn bfs_distances(&self, from: Vertex, banned: Option<(Vertex, Vertex)>) -> Vec<Option<u32>> {
        let n = self.vertex_count();
        let mut dist = vec![None; n];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if let Some((a, b)) = banned {
                    if (u, v) == (a, b) || (u, v) == (b, a) {
                        continue;
                    }
                }
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Hop distance between two vertices. Finite because the graph is
    /// connected.
    pub fn distance(&self, x: Vertex, y: Vertex) -> Result<u32> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.bfs_distances(x, None)[y].expect("connected graph"))
    }

    /// Vertices at hop distance exactly `r` from `x`, ascending.
    pub fn sphere(&self, x: Vertex, r: u32) -> Result<Vec<Vertex>> {
        self.check_vertex(x)?;
        let dist = self.bfs_distances(x, None);
        Ok(self.vertices().filter(|&v| dist[v] == Some(r)).collect())
    }

    /// Shortest simple cycle through `x`: for each incident edge, the
    /// distance from `x` to the neighbor with that edge removed, plus one.
    pub fn girth_at(&self, x: Vertex) -> Result<Girth> {
        self.check_vertex(x)?;
        let mut best: Option<u32> = None;
        for &y in &self.adj[x] {
            let dist = self.bfs_distances(x, Some((x, y)));
            if let Some(d) = dist[y] {
                let cycle = d + 1;
                best = Some(best.map_or(cycle, |b| b.min(cycle)));
            }
        }
        Ok(best.map_or(Girth::Infinite, Girth::Finite))
    }

    /// Minimum of `girth_at` over all vertices.
    pub fn girth(&self) -> Girth {
        self.vertices()
            .map(|x| self.girth_at(x).expect("vertex exists"))
            .min()
            .expect("graph has vertices")
    }

    /// Second ball around `x` with the edges inside its outer sphere removed.
    pub fn hat_b2(&self, x: Vertex) -> Result<VertexNeighborhood> {
        self.check_vertex(x)?;
        let dist = self.bfs_distances(x, None);
        let sphere1: Vec<Vertex> = self.vertices().filter(|&v| dist[v] == Some(1)).collect();
        let sphere2: Vec<Vertex> = self.vertices().filter(|&v| dist[v] == Some(2)).collect();
        let in_ball = |v: Vertex| matches!(dist[v], Some(0) | Some(1) | Some(2));
        let in_b1 = |v: Vertex| matches!(dist[v], Some(0) | Some(1));
        let mut hat_edges = Vec::new();
        for (u, v) in self.edges() {
            if in_ball(u) && in_ball(v) && (in_b1(u) || in_b1(v)) {
                hat_edges.push((u, v));
            }
        }
        Ok(VertexNeighborhood {
            center: x,
            sphere1,
            sphere2,
            hat_edges,
        })
    }
}
