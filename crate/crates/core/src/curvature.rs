//! Pointwise curvature dimension conditions.
//!
//! A graph satisfies `CD(K, n)` at `x` when
//!
//! ```text
//! Gamma2(f)(x) >= (1/n) (Delta f(x))^2 + K Gamma(f)(x)
//! ```
//!
//! for every vertex function `f`. Since both sides only see `f - f(x)` on the
//! second ball, this is a positivity statement for a finite quadratic form,
//! tested here either on the full second ball or, when no short cycle passes
//! through `x`, through an equivalent closed form on the neighbors alone.

use num::{Signed, Zero};

use crate::calculus::{local_forms, LocalForms};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{Girth, Vertex, WeightedGraph};
use crate::matrix::{PsdScalar, SymMat};
use crate::scalar::{Rational, Scalar};

/// Dimension parameter `n` of `CD(K, n)`, a positive real or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Dimension<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Dimension<S> {
    /// Wraps a finite dimension, which must be positive.
    pub fn finite(n: S) -> Result<Self> {
        if n > S::zero() {
            Ok(Dimension::Finite(n))
        } else {
            Err(Error::BadParameter(format!(
                "dimension must be positive, got {n}"
            )))
        }
    }

    /// `1/n`, the coefficient of `(Delta f)^2`.
    pub fn inverse(&self) -> S {
        match self {
            Dimension::Finite(n) => S::one() / n.clone(),
            Dimension::Infinite => S::zero(),
        }
    }
}

impl<S: Scalar> std::fmt::Display for Dimension<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "inf"),
        }
    }
}

/// Curvature weight of a directed edge,
/// `alpha_xy = (m_x/mu_xy) ((D_x + D_y)/2 - 2 mu_xy/m_y)`.
///
/// At a pending vertex `x` this single number decides `CD(0, inf, x)`, and
/// in general the sign pattern of the `alpha_xy` constrains which vertices
/// can satisfy it.
pub fn alpha<S: Scalar>(g: &WeightedGraph, x: Vertex, y: Vertex) -> Result<S> {
    let mu: S = g.edge_weight(x, y)?;
    let m_x: S = g.measure(x)?;
    let m_y: S = g.measure(y)?;
    let d_x: S = g.weighted_degree(x)?;
    let d_y: S = g.weighted_degree(y)?;
    let two = S::from_int(2);
    Ok(m_x / mu.clone() * ((d_x + d_y) / two.clone() - two * mu / m_y))
}

/// Neighbors `y` of `x` with `alpha_xy > 0`, decided exactly, together with
/// their count.
pub fn q_count(g: &WeightedGraph, x: Vertex) -> Result<(Vec<Vertex>, usize)> {
    let mut members = Vec::new();
    for &y in g.neighbors(x)? {
        let a: Rational = alpha(g, x, y)?;
        if a.is_positive() {
            members.push(y);
        }
    }
    let q = members.len();
    Ok((members, q))
}

/// The full curvature form `M = Q - (1/n) L L^T - K G` in the coordinates of
/// [`LocalForms`].
fn cd_matrix<S: Scalar>(forms: &LocalForms<S>, k: &S, dim: &Dimension<S>) -> SymMat<S> {
    let inv_n = dim.inverse();
    SymMat::from_fn(forms.coords.len(), |i, j| {
        forms.gamma2.get(i, j).clone()
            - inv_n.clone() * forms.laplacian[i].clone() * forms.laplacian[j].clone()
            - k.clone() * forms.gamma.get(i, j).clone()
    })
}

/// The curvature form at `x` reduced to the first sphere: the second-sphere
/// block of the full form is a positive diagonal that never couples with the
/// dimension or curvature terms, so eliminating it preserves positivity.
/// Returns the first-sphere coordinates and the reduced matrix.
pub fn reduced_form<S: Scalar>(
    g: &WeightedGraph,
    k: &S,
    dim: &Dimension<S>,
    x: Vertex,
) -> Result<(Vec<Vertex>, SymMat<S>)> {
    let forms: LocalForms<S> = local_forms(g, x)?;
    let m = cd_matrix(&forms, k, dim);
    let reduced = m.eliminate_trailing_diagonal(forms.sphere1_len);
    let coords = forms.coords[..forms.sphere1_len].to_vec();
    Ok((coords, reduced))
}

/// Whether `CD(K, n)` holds at `x`, tested on the reduced curvature form.
/// Works at every vertex regardless of girth.
pub fn cd_at_generic<S: PsdScalar>(
    g: &WeightedGraph,
    k: &S,
    dim: &Dimension<S>,
    x: Vertex,
) -> Result<bool> {
    let (_, reduced) = reduced_form(g, k, dim, x)?;
    Ok(S::is_psd(&reduced))
}

fn require_girth5(g: &WeightedGraph, x: Vertex) -> Result<()> {
    match g.girth_at(x)? {
        Girth::Finite(girth) if girth < 5 => Err(Error::GirthTooSmall(x, girth)),
        _ => Ok(()),
    }
}

/// Closed curvature form at a vertex through which no cycle of length less
/// than five passes. With neighbors `y_1, ..., y_d`, weights `w_i =
/// mu_xy_i/m_x` and `c_i = (D_x + D_y_i)/2 - 2 mu_xy_i/m_y_i`, the condition
/// `CD(K, n, x)` collapses to positivity of
///
/// ```text
/// T = (1 - 2/n) w w^T - diag((mu_xy_i/m_x) (c_i + K))
/// ```
///
/// which equals twice the reduced form of [`reduced_form`].
pub fn girth5_form<S: Scalar>(
    g: &WeightedGraph,
    k: &S,
    dim: &Dimension<S>,
    x: Vertex,
) -> Result<SymMat<S>> {
    require_girth5(g, x)?;
    let neighbors = g.neighbors(x)?.to_vec();
    let m_x: S = g.measure(x)?;
    let d_x: S = g.weighted_degree(x)?;
    let two = S::from_int(2);
    let coeff = S::one() - two.clone() * dim.inverse();

    let mut w = Vec::with_capacity(neighbors.len());
    let mut c = Vec::with_capacity(neighbors.len());
    for (idx, &y) in neighbors.iter().enumerate() {
        let mu = S::edge_weight(g, x, idx);
        let m_y: S = g.measure(y)?;
        let d_y: S = g.weighted_degree(y)?;
        w.push(mu.clone() / m_x.clone());
        c.push((d_x.clone() + d_y) / two.clone() - two.clone() * mu / m_y);
    }

    Ok(SymMat::from_fn(neighbors.len(), |i, j| {
        let mut v = coeff.clone() * w[i].clone() * w[j].clone();
        if i == j {
            v = v - w[i].clone() * (c[i].clone() + k.clone());
        }
        v
    }))
}

/// Whether `CD(K, n)` holds at `x`, via the closed form of [`girth5_form`].
/// Errors when a cycle of length three or four passes through `x`.
pub fn cd_at_girth5<S: PsdScalar>(
    g: &WeightedGraph,
    k: &S,
    dim: &Dimension<S>,
    x: Vertex,
) -> Result<bool> {
    let t = girth5_form(g, k, dim, x)?;
    Ok(S::is_psd(&t))
}

/// Whether `CD(K, n)` holds at `x`: dispatches to the closed form when no
/// short cycle passes through `x` and to the reduced form otherwise.
pub fn cd_at<S: PsdScalar>(
    g: &WeightedGraph,
    k: &S,
    dim: &Dimension<S>,
    x: Vertex,
) -> Result<bool> {
    if g.girth_at(x)?.at_least(5) {
        cd_at_girth5(g, k, dim, x)
    } else {
        cd_at_generic(g, k, dim, x)
    }
}

/// Whether `CD(K, n)` holds at every vertex.
pub fn cd_graph<S: PsdScalar>(g: &WeightedGraph, k: &S, dim: &Dimension<S>) -> Result<bool> {
    let verdicts = exec::map_collect(g.vertices().collect(), |x| cd_at(g, k, dim, x));
    for v in verdicts {
        if !v? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sequential twin of [`cd_graph`].
pub fn cd_graph_seq<S: PsdScalar>(g: &WeightedGraph, k: &S, dim: &Dimension<S>) -> Result<bool> {
    let verdicts = exec::map_collect_seq(g.vertices().collect(), |x| cd_at(g, k, dim, x));
    for v in verdicts {
        if !v? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `CD(0, inf)` at a pending vertex, decided by its single curvature weight:
/// with unique neighbor `y`, the condition holds exactly when
/// `alpha_xy <= 1`.
pub fn pending_cd<S: Scalar>(g: &WeightedGraph, x: Vertex) -> Result<bool> {
    let neighbors = g.neighbors(x)?;
    if neighbors.len() != 1 {
        return Err(Error::NotPending(x, neighbors.len()));
    }
    let a: S = alpha(g, x, neighbors[0])?;
    Ok(a <= S::one())
}

/// Positivity margin used inside the curvature value search; tighter than
/// the verdict tolerance so the bisection locates the transition to within
/// its reported accuracy.
const BISECT_EPS: f64 = 1e-12;

const BISECT_WIDTH: f64 = 1e-10;

/// Largest `K` (to within `1e-9`) such that `CD(K, n)` holds at `x`, found
/// by bisection on the reduced curvature form. The returned value itself
/// passes the positivity test, so it always lies on the feasible side of the
/// transition.
pub fn curvature_value_at(g: &WeightedGraph, dim: &Dimension<f64>, x: Vertex) -> Result<f64> {
    let forms: LocalForms<f64> = local_forms(g, x)?;
    let base = cd_matrix(&forms, &0.0, dim);
    let reduced0 = base.eliminate_trailing_diagonal(forms.sphere1_len);
    let s1 = forms.sphere1_len;
    let gamma_diag: Vec<f64> = (0..s1).map(|i| *forms.gamma.get(i, i)).collect();
    let feasible = |k: f64| {
        let shifted = SymMat::from_fn(s1, |i, j| {
            let mut v = *reduced0.get(i, j);
            if i == j {
                v -= k * gamma_diag[i];
            }
            v
        });
        shifted.is_psd_with_eps(BISECT_EPS)
    };

    let d_x: f64 = g.weighted_degree(x)?;
    let mut bound: f64 = 4.0;
    for &y in g.neighbors(x)? {
        let d_y: f64 = g.weighted_degree(y)?;
        bound = bound.max(4.0 * (d_x + d_y));
    }
    let mut lo = -bound;
    let mut hi = bound;
    for _ in 0..200 {
        if feasible(lo) {
            break;
        }
        lo *= 2.0;
    }
    assert!(feasible(lo), "lower curvature bracket not found");
    for _ in 0..200 {
        if !feasible(hi) {
            break;
        }
        hi *= 2.0;
    }
    assert!(!feasible(hi), "upper curvature bracket not found");

    while hi - lo > BISECT_WIDTH {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Degree pattern equivalent to `CD(0, inf)` at a vertex of an unweighted
/// graph with the normalized Laplacian, valid when no cycle of length less
/// than five passes through the vertex. With `d = deg(x)` and neighbor
/// degrees `d_1, ..., d_d`:
///
/// * `d = 1`: always;
/// * `d = 2`: both neighbor degrees at most 2, or degrees exactly `{1, 3}`;
/// * `d >= 3`: every neighbor degree at most 2.
pub fn degree_pattern_normalized(g: &WeightedGraph, x: Vertex) -> Result<bool> {
    if !g.is_unweighted_normalized() {
        return Err(Error::WrongMode(
            "degree pattern needs an unweighted graph with the normalized Laplacian",
        ));
    }
    require_girth5(g, x)?;
    let mut degrees = Vec::new();
    for &y in g.neighbors(x)? {
        degrees.push(g.combinatorial_degree(y)?);
    }
    degrees.sort_unstable();
    Ok(match degrees.len() {
        1 => true,
        2 => degrees[1] <= 2 || degrees == [1, 3],
        _ => degrees[degrees.len() - 1] <= 2,
    })
}

/// Degree pattern equivalent to `CD(0, inf)` at a vertex of an unweighted
/// graph with the physical Laplacian (`m = 1`), valid when no cycle of
/// length less than five passes through the vertex:
///
/// * `d = 1`: neighbor degree at most 5;
/// * `d = 2`: both neighbor degrees at most 2;
/// * `d = 3`: every neighbor degree exactly 1;
/// * `d >= 4`: never.
pub fn degree_pattern_physical(g: &WeightedGraph, x: Vertex) -> Result<bool> {
    if !g.is_unweighted_physical() {
        return Err(Error::WrongMode(
            "degree pattern needs an unweighted graph with the physical Laplacian",
        ));
    }
    require_girth5(g, x)?;
    let mut degrees = Vec::new();
    for &y in g.neighbors(x)? {
        degrees.push(g.combinatorial_degree(y)?);
    }
    degrees.sort_unstable();
    Ok(match degrees.len() {
        1 => degrees[0] <= 5,
        2 => degrees[1] <= 2,
        3 => degrees[2] == 1,
        _ => false,
    })
}

/// Everything the reporting surface shows about one vertex: combinatorial
/// data, exact curvature weights, the exact `CD(0, inf)` verdict, and the
/// bisected curvature value at `n = inf`.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub vertex: Vertex,
    pub degree: usize,
    pub girth: Girth,
    pub alphas: Vec<(Vertex, Rational)>,
    pub q: usize,
    pub cd_zero_infinity: bool,
    pub curvature_value: f64,
}

/// Builds the [`CurvatureReport`] for one vertex.
pub fn vertex_report(g: &WeightedGraph, x: Vertex) -> Result<CurvatureReport> {
    let mut alphas = Vec::new();
    for &y in g.neighbors(x)? {
        alphas.push((y, alpha(g, x, y)?));
    }
    Ok(CurvatureReport {
        vertex: x,
        degree: g.combinatorial_degree(x)?,
        girth: g.girth_at(x)?,
        q: q_count(g, x)?.1,
        cd_zero_infinity: cd_at::<Rational>(g, &Rational::zero(), &Dimension::Infinite, x)?,
        curvature_value: curvature_value_at(g, &Dimension::Infinite, x)?,
        alphas,
    })
}

/// Reports for every vertex, ascending.
pub fn graph_reports(g: &WeightedGraph) -> Result<Vec<CurvatureReport>> {
    exec::map_collect(g.vertices().collect(), |x| vertex_report(g, x))
        .into_iter()
        .collect()
}

/// Sequential twin of [`graph_reports`].
pub fn graph_reports_seq(g: &WeightedGraph) -> Result<Vec<CurvatureReport>> {
    exec::map_collect_seq(g.vertices().collect(), |x| vertex_report(g, x))
        .into_iter()
        .collect()
}
