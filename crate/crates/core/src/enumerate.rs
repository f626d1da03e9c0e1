//! Exhaustive enumeration of small connected graphs up to isomorphism, with
//! a girth floor and a minimum degree filter, and the classification survey
//! built on top of it: test every class for nonnegative curvature, label the
//! survivors by family, and flag anything unexpected.

use std::collections::HashSet;

use num::Zero;

use crate::curvature::{cd_at_generic, cd_graph_seq, Dimension};
use crate::error::{Error, Result};
use crate::exec;
use crate::families::{is_family_member, make_star, Family};
use crate::graph::{LaplacianMode, WeightedGraph};
use crate::scalar::Rational;

const MAXV: usize = 8;

/// Largest vertex count the enumerator accepts.
pub const MAX_ENUMERATION_VERTICES: u8 = 8;

/// Connected simple graph on at most eight vertices, stored as adjacency
/// bitmask rows. The enumeration works entirely on this representation and
/// converts to [`WeightedGraph`] only for curvature tests.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SmallGraph {
    n: u8,
    rows: [u8; MAXV],
}

fn colex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..n {
        for i in 0..j {
            out.push((i, j));
        }
    }
    out
}

impl SmallGraph {
    pub fn new(n: u8) -> Result<Self> {
        if !(2..=MAX_ENUMERATION_VERTICES).contains(&n) {
            return Err(Error::BadParameter(format!(
                "small graphs have 2 to {MAX_ENUMERATION_VERTICES} vertices, got {n}"
            )));
        }
        Ok(SmallGraph { n, rows: [0; MAXV] })
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.vertex_count() && v < self.vertex_count());
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen: u8 = 1;
        loop {
            let mut next = seen;
            for v in 0..n {
                if seen >> v & 1 == 1 {
                    next |= self.rows[v];
                }
            }
            if next == seen {
                break;
            }
            seen = next;
        }
        seen.count_ones() as usize == n
    }

    /// Upper-triangle edge bits in column order `(0,1), (0,2), (1,2), ...`,
    /// packed with the first pair in the highest bit, so numeric comparison
    /// of codes matches positional comparison of the bit strings.
    pub fn code(&self) -> u32 {
        let pairs = colex_pairs(self.vertex_count());
        let total = pairs.len();
        let mut code = 0u32;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if self.has_edge(i, j) {
                code |= 1 << (total - 1 - k);
            }
        }
        code
    }

    pub fn from_code(n: u8, code: u32) -> Result<Self> {
        let mut g = SmallGraph::new(n)?;
        let pairs = colex_pairs(g.vertex_count());
        let total = pairs.len();
        if total < 32 && code >> total != 0 {
            return Err(Error::BadParameter(format!(
                "code {code} is out of range for {n} vertices"
            )));
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if code >> (total - 1 - k) & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        Ok(g)
    }

    /// Canonical representative of the isomorphism class: the relabeling
    /// whose [`code`](Self::code) is smallest, found by a backtracking
    /// search over relabelings that prunes on the filled code prefix.
    pub fn canonical(&self) -> SmallGraph {
        let n = self.vertex_count();
        let total = n * (n - 1) / 2;
        let mut best = self.code();
        let mut chosen = [0usize; MAXV];
        let mut used = [false; MAXV];
        self.canonical_rec(0, 0u32, 0, total, &mut chosen, &mut used, &mut best);
        SmallGraph::from_code(self.n, best).expect("canonical code is in range")
    }

    #[allow(clippy::too_many_arguments)]
    fn canonical_rec(
        &self,
        depth: usize,
        partial: u32,
        filled: usize,
        total: usize,
        chosen: &mut [usize; MAXV],
        used: &mut [bool; MAXV],
        best: &mut u32,
    ) {
        let n = self.vertex_count();
        if depth == n {
            if partial < *best {
                *best = partial;
            }
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let mut p = partial;
            let mut f = filled;
            for &u in chosen.iter().take(depth) {
                if self.has_edge(u, v) {
                    p |= 1 << (total - 1 - f);
                }
                f += 1;
            }
            if f > 0 {
                let mask = (((1u64 << f) - 1) << (total - f)) as u32;
                if (p & mask) > (*best & mask) {
                    continue;
                }
            }
            chosen[depth] = v;
            used[v] = true;
            self.canonical_rec(depth + 1, p, f, total, chosen, used, best);
            used[v] = false;
        }
    }

    /// Converts to a [`WeightedGraph`] with unit weights in the given mode.
    pub fn to_weighted(&self, mode: LaplacianMode) -> Result<WeightedGraph> {
        WeightedGraph::unweighted(&self.edges(), mode)
    }
}

/// Canonical class of an arbitrary graph on at most eight vertices; two
/// graphs are isomorphic exactly when their canonical classes are equal.
pub fn canonical_class(g: &WeightedGraph) -> Result<SmallGraph> {
    let n = g.vertex_count();
    if n > MAXV {
        return Err(Error::BadParameter(format!(
            "canonical classes are only computed up to {MAXV} vertices, got {n}"
        )));
    }
    let mut small = SmallGraph::new(n as u8)?;
    for (u, v) in g.edges() {
        small.add_edge(u, v);
    }
    Ok(small.canonical())
}

/// Search space of the enumerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    /// Enumerate connected classes on `2..=max_vertices` vertices (at most 8).
    pub max_vertices: u8,
    /// Keep only graphs whose minimum degree is at least this.
    pub min_degree: usize,
    /// Keep only graphs with no cycle shorter than this (at least 3; trees
    /// always qualify).
    pub girth_floor: u32,
}

impl EnumerationConfig {
    fn validate(&self) -> Result<()> {
        if !(2..=MAX_ENUMERATION_VERTICES).contains(&self.max_vertices) {
            return Err(Error::BadParameter(format!(
                "max_vertices must be 2 to {MAX_ENUMERATION_VERTICES}, got {}",
                self.max_vertices
            )));
        }
        if self.girth_floor < 3 {
            return Err(Error::BadParameter(format!(
                "girth_floor must be at least 3, got {}",
                self.girth_floor
            )));
        }
        Ok(())
    }
}

const DIST_INF: u8 = u8::MAX;

#[derive(Clone, Copy)]
struct PartialState {
    g: SmallGraph,
    dist: [[u8; MAXV]; MAXV],
    next_pair: usize,
}

impl PartialState {
    fn start(n: u8) -> Self {
        let mut dist = [[DIST_INF; MAXV]; MAXV];
        for (v, row) in dist.iter_mut().enumerate() {
            row[v] = 0;
        }
        PartialState {
            g: SmallGraph::new(n).expect("validated vertex count"),
            dist,
            next_pair: 0,
        }
    }

    /// State after inserting edge `{u, v}`, with all pairwise distances
    /// updated: a path may now route through the new edge in either
    /// direction.
    fn with_edge(&self, u: usize, v: usize) -> Self {
        let mut out = *self;
        out.g.add_edge(u, v);
        let n = self.g.vertex_count();
        for a in 0..n {
            for b in 0..n {
                let via_uv = sat_path(self.dist[a][u], self.dist[v][b]);
                let via_vu = sat_path(self.dist[a][v], self.dist[u][b]);
                out.dist[a][b] = self.dist[a][b].min(via_uv).min(via_vu);
            }
        }
        out
    }
}

fn sat_path(left: u8, right: u8) -> u8 {
    if left == DIST_INF || right == DIST_INF {
        DIST_INF
    } else {
        (left as u16 + 1 + right as u16).min(DIST_INF as u16) as u8
    }
}

struct SearchContext {
    pairs: Vec<(usize, usize)>,
    min_edge_cycle: u8,
    min_degree: usize,
    /// `remaining_incident[t][k]` counts pairs with index at least `t`
    /// containing vertex `k`; lets the search cut branches that can no
    /// longer reach the minimum degree.
    remaining_incident: Vec<[u8; MAXV]>,
}

impl SearchContext {
    fn new(n: usize, opts: &EnumerationConfig) -> Self {
        let pairs = colex_pairs(n);
        let mut remaining_incident = vec![[0u8; MAXV]; pairs.len() + 1];
        for t in (0..pairs.len()).rev() {
            let mut counts = remaining_incident[t + 1];
            counts[pairs[t].0] += 1;
            counts[pairs[t].1] += 1;
            remaining_incident[t] = counts;
        }
        let min_edge_cycle = (opts.girth_floor - 1).min(DIST_INF as u32) as u8;
        SearchContext {
            pairs,
            min_edge_cycle,
            min_degree: opts.min_degree,
            remaining_incident,
        }
    }

    fn degree_cut(&self, state: &PartialState) -> bool {
        if self.min_degree == 0 {
            return false;
        }
        let remaining = &self.remaining_incident[state.next_pair];
        (0..state.g.vertex_count())
            .any(|k| state.g.degree(k) + (remaining[k] as usize) < self.min_degree)
    }

    fn can_add(&self, state: &PartialState, u: usize, v: usize) -> bool {
        state.dist[u][v] >= self.min_edge_cycle
    }
}

fn expand(state: PartialState, ctx: &SearchContext, stop: usize, out: &mut Vec<PartialState>) {
    if ctx.degree_cut(&state) {
        return;
    }
    if state.next_pair == stop {
        out.push(state);
        return;
    }
    let (u, v) = ctx.pairs[state.next_pair];
    let mut skip = state;
    skip.next_pair += 1;
    expand(skip, ctx, stop, out);
    if ctx.can_add(&state, u, v) {
        let mut add = state.with_edge(u, v);
        add.next_pair += 1;
        expand(add, ctx, stop, out);
    }
}

fn complete(state: PartialState, ctx: &SearchContext, found: &mut HashSet<u32>) {
    if ctx.degree_cut(&state) {
        return;
    }
    if state.next_pair == ctx.pairs.len() {
        if state.g.is_connected() {
            found.insert(state.g.canonical().code());
        }
        return;
    }
    let (u, v) = ctx.pairs[state.next_pair];
    let mut skip = state;
    skip.next_pair += 1;
    complete(skip, ctx, found);
    if ctx.can_add(&state, u, v) {
        let mut add = state.with_edge(u, v);
        add.next_pair += 1;
        complete(add, ctx, found);
    }
}

const EXPAND_DEPTH: usize = 10;

fn enumerate_impl(opts: &EnumerationConfig, parallel: bool) -> Result<Vec<SmallGraph>> {
    opts.validate()?;
    let mut classes = Vec::new();
    for n in 2..=opts.max_vertices {
        let ctx = SearchContext::new(n as usize, opts);
        let stop = ctx.pairs.len().min(EXPAND_DEPTH);
        let mut partials = Vec::new();
        expand(PartialState::start(n), &ctx, stop, &mut partials);
        let worker = |state: PartialState| {
            let mut found = HashSet::new();
            complete(state, &ctx, &mut found);
            found
        };
        let sets = if parallel {
            exec::map_collect(partials, worker)
        } else {
            exec::map_collect_seq(partials, worker)
        };
        let mut codes: Vec<u32> = sets
            .into_iter()
            .flatten()
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        codes.sort_unstable();
        for code in codes {
            classes.push(SmallGraph::from_code(n, code)?);
        }
    }
    Ok(classes)
}

/// Enumerates the connected isomorphism classes selected by `opts`, sorted
/// by vertex count and then by canonical code.
pub fn enumerate_graphs(opts: &EnumerationConfig) -> Result<Vec<SmallGraph>> {
    enumerate_impl(opts, true)
}

/// Sequential twin of [`enumerate_graphs`].
pub fn enumerate_graphs_seq(opts: &EnumerationConfig) -> Result<Vec<SmallGraph>> {
    enumerate_impl(opts, false)
}

/// One class that passed the curvature test, with the family label the
/// recognizer assigned (if any) and whether that label is one the
/// classification predicts for the mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivor {
    pub graph: SmallGraph,
    pub family: Option<Family>,
    pub expected: bool,
}

/// Survivor counts by family kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyTally {
    pub paths: usize,
    pub cycles: usize,
    pub stars: usize,
    pub star3exts: usize,
    pub unrecognized: usize,
}

/// Result of sweeping the curvature test over an enumeration.
#[derive(Clone, Debug)]
pub struct ClassificationOutcome {
    pub mode: LaplacianMode,
    pub options: EnumerationConfig,
    pub total_classes: usize,
    pub survivors: Vec<Survivor>,
    pub tally: FamilyTally,
}

impl ClassificationOutcome {
    /// Survivors that are not of a family the classification predicts for
    /// this mode.
    pub fn anomalies(&self) -> Vec<&Survivor> {
        self.survivors.iter().filter(|s| !s.expected).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.survivors.iter().all(|s| s.expected)
    }
}

/// Families predicted to have nonnegative curvature everywhere, per mode:
/// paths and long cycles in both modes, all stars and extended three-leg
/// stars with the normalized Laplacian, but only the three-leg star with the
/// physical one.
fn family_expected(family: Option<Family>, mode: LaplacianMode) -> bool {
    match (family, mode) {
        (Some(Family::Path { .. }), _) => true,
        (Some(Family::Cycle { len }), _) => len >= 5,
        (Some(Family::Star { .. }), LaplacianMode::Normalized) => true,
        (Some(Family::Star { legs }), LaplacianMode::Physical) => legs == 3,
        (Some(Family::Star3Ext { .. }), LaplacianMode::Normalized) => true,
        _ => false,
    }
}

fn verify_impl(
    opts: &EnumerationConfig,
    mode: LaplacianMode,
    parallel: bool,
) -> Result<ClassificationOutcome> {
    if mode == LaplacianMode::Custom {
        return Err(Error::BadParameter(
            "classification runs are unweighted; use normalized or physical mode".into(),
        ));
    }
    let classes = enumerate_impl(opts, parallel)?;
    let total_classes = classes.len();
    let worker = |small: SmallGraph| -> Result<Option<Survivor>> {
        let g = small.to_weighted(mode)?;
        if !cd_graph_seq::<Rational>(&g, &Rational::zero(), &Dimension::Infinite)? {
            return Ok(None);
        }
        let family = is_family_member(&g);
        Ok(Some(Survivor {
            graph: small,
            family,
            expected: family_expected(family, mode),
        }))
    };
    let results = if parallel {
        exec::map_collect(classes, worker)
    } else {
        exec::map_collect_seq(classes, worker)
    };
    let mut survivors = Vec::new();
    for r in results {
        if let Some(s) = r? {
            survivors.push(s);
        }
    }
    let mut tally = FamilyTally::default();
    for s in &survivors {
        match s.family {
            Some(Family::Path { .. }) => tally.paths += 1,
            Some(Family::Cycle { .. }) => tally.cycles += 1,
            Some(Family::Star { .. }) => tally.stars += 1,
            Some(Family::Star3Ext { .. }) => tally.star3exts += 1,
            None => tally.unrecognized += 1,
        }
    }
    Ok(ClassificationOutcome {
        mode,
        options: *opts,
        total_classes,
        survivors,
        tally,
    })
}

/// Enumerates all classes selected by `opts`, keeps those satisfying
/// `CD(0, inf)` at every vertex in the given mode (decided exactly), labels
/// them through the family recognizer, and reports the outcome.
pub fn verify_classification(
    opts: &EnumerationConfig,
    mode: LaplacianMode,
) -> Result<ClassificationOutcome> {
    verify_impl(opts, mode, true)
}

/// Sequential twin of [`verify_classification`].
pub fn verify_classification_seq(
    opts: &EnumerationConfig,
    mode: LaplacianMode,
) -> Result<ClassificationOutcome> {
    verify_impl(opts, mode, false)
}

/// Exact `CD(0, inf)` verdicts for one star with the physical Laplacian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarVerdict {
    pub legs: usize,
    pub center: bool,
    pub pendant: bool,
    pub overall: bool,
}

/// Surveys stars with the physical Laplacian: for each `legs` in
/// `3..=max_legs`, decides `CD(0, inf)` exactly at the center and at a
/// pendant (all pendants agree by symmetry), through the generic PSD test
/// so no closed-form shortcut is trusted. `max_legs` must be at least 6 so
/// the survey always straddles both transitions: the center holds only
/// with three legs, the pendants up to five.
pub fn resolve_star_question(max_legs: usize) -> Result<Vec<StarVerdict>> {
    if max_legs < 6 {
        return Err(Error::BadParameter(format!(
            "star survey needs max_legs >= 6, got {max_legs}"
        )));
    }
    let zero = Rational::zero();
    let worker = |legs: usize| -> Result<StarVerdict> {
        let g = make_star(legs, LaplacianMode::Physical)?;
        let center = cd_at_generic::<Rational>(&g, &zero, &Dimension::Infinite, 0)?;
        let pendant = cd_at_generic::<Rational>(&g, &zero, &Dimension::Infinite, 1)?;
        Ok(StarVerdict {
            legs,
            center,
            pendant,
            overall: center && pendant,
        })
    };
    exec::map_collect((3..=max_legs).collect(), worker)
        .into_iter()
        .collect()
}
