//! Laplacian and the iterated gradient forms on vertex functions, plus the
//! local quadratic forms that turn a pointwise curvature condition into a
//! matrix positivity test.
//!
//! Throughout, a vertex function is a slice with one value per vertex and
//!
//! ```text
//! Delta f(x) = (1/m_x) sum_y mu_xy (f(y) - f(x))
//! Gamma(f,h)(x) = (1/2m_x) sum_y mu_xy (f(y) - f(x)) (h(y) - h(x))
//! Gamma2(f,h)(x) = 1/2 (Delta Gamma(f,h)(x) - Gamma(f, Delta h)(x) - Gamma(h, Delta f)(x))
//! ```
//!
//! with sums over neighbors `y` of `x`.

use crate::error::Result;
use crate::graph::{Vertex, WeightedGraph};
use crate::matrix::SymMat;
use crate::scalar::Scalar;

fn check_len<S>(g: &WeightedGraph, f: &[S]) {
    assert_eq!(
        f.len(),
        g.vertex_count(),
        "vertex function length must match the vertex count"
    );
}

/// `Delta f(x)`.
pub fn laplacian_at<S: Scalar>(g: &WeightedGraph, f: &[S], x: Vertex) -> Result<S> {
    check_len(g, f);
    let mut acc = S::zero();
    for (idx, &y) in g.neighbors(x)?.iter().enumerate() {
        acc = acc + S::edge_weight(g, x, idx) * (f[y].clone() - f[x].clone());
    }
    Ok(acc / S::measure(g, x))
}

/// `Gamma(f,h)(x)`. Pass the same slice twice for the quadratic form
/// `Gamma(f)(x)`.
pub fn gamma_at<S: Scalar>(g: &WeightedGraph, f: &[S], h: &[S], x: Vertex) -> Result<S> {
    check_len(g, f);
    check_len(g, h);
    let mut acc = S::zero();
    for (idx, &y) in g.neighbors(x)?.iter().enumerate() {
        let df = f[y].clone() - f[x].clone();
        let dh = h[y].clone() - h[x].clone();
        acc = acc + S::edge_weight(g, x, idx) * df * dh;
    }
    Ok(acc / (S::from_int(2) * S::measure(g, x)))
}

/// `Gamma2(f,h)(x)`, evaluated from the definition. Only values of `f` and
/// `h` on the second ball around `x` enter the result. Pass the same slice
/// twice for the quadratic form `Gamma2(f)(x)`.
pub fn gamma2_at<S: Scalar>(g: &WeightedGraph, f: &[S], h: &[S], x: Vertex) -> Result<S> {
    check_len(g, f);
    check_len(g, h);
    let two = S::from_int(2);

    let u_x = gamma_at(g, f, h, x)?;
    let mut delta_u = S::zero();
    for (idx, &y) in g.neighbors(x)?.iter().enumerate() {
        let u_y = gamma_at(g, f, h, y)?;
        delta_u = delta_u + S::edge_weight(g, x, idx) * (u_y - u_x.clone());
    }
    delta_u = delta_u / S::measure(g, x);

    let df_x = laplacian_at(g, f, x)?;
    let dh_x = laplacian_at(g, h, x)?;
    let mut cross = S::zero();
    for (idx, &y) in g.neighbors(x)?.iter().enumerate() {
        let dh_y = laplacian_at(g, h, y)?;
        let df_y = laplacian_at(g, f, y)?;
        let term = (f[y].clone() - f[x].clone()) * (dh_y - dh_x.clone())
            + (h[y].clone() - h[x].clone()) * (df_y - df_x.clone());
        cross = cross + S::edge_weight(g, x, idx) * term;
    }
    cross = cross / (two.clone() * S::measure(g, x));

    Ok((delta_u - cross) / two)
}

/// Squared Hessian norm
/// `|D^2 f|^2(x) = sum_{y~x} sum_{z~y} (mu_xy mu_yz)/(m_x m_y) (f(x) - 2 f(y) + f(z))^2`,
/// where the inner sum runs over all neighbors `z` of `y`, including `x`
/// itself.
pub fn hessian_norm_sq<S: Scalar>(g: &WeightedGraph, f: &[S], x: Vertex) -> Result<S> {
    check_len(g, f);
    let two = S::from_int(2);
    let mut acc = S::zero();
    for (idx, &y) in g.neighbors(x)?.iter().enumerate() {
        let mu_xy = S::edge_weight(g, x, idx);
        let m_y = S::measure(g, y);
        let mut inner = S::zero();
        for (jdx, &z) in g.neighbors(y)?.iter().enumerate() {
            let mu_yz = S::edge_weight(g, y, jdx);
            let d = f[x].clone() - two.clone() * f[y].clone() + f[z].clone();
            inner = inner + mu_yz * d.clone() * d;
        }
        acc = acc + mu_xy * inner / m_y;
    }
    Ok(acc / S::measure(g, x))
}

/// `Gamma2(f)(x)` evaluated through the pointwise Bochner identity
///
/// ```text
/// Gamma2(f)(x) = 1/4 |D^2 f|^2(x) + 1/2 (Delta f(x))^2
///              - 1/4 sum_y (mu_xy/m_x) (D_x + D_y) (f(y) - f(x))^2
/// ```
///
/// with `D_x` the weighted degree. Agreement with [`gamma2_at`] is an
/// identity, so the two routes cross-check each other.
pub fn gamma2_bochner_at<S: Scalar>(g: &WeightedGraph, f: &[S], x: Vertex) -> Result<S> {
    check_len(g, f);
    let quarter = S::ratio(1, 4);
    let half = S::ratio(1, 2);
    let hess = hessian_norm_sq(g, f, x)?;
    let df = laplacian_at(g, f, x)?;
    let d_x: S = g.weighted_degree(x)?;
    let mut drop = S::zero();
    for (idx, &y) in g.neighbors(x)?.iter().enumerate() {
        let mu = S::edge_weight(g, x, idx);
        let d_y: S = g.weighted_degree(y)?;
        let diff = f[y].clone() - f[x].clone();
        drop = drop + mu * (d_x.clone() + d_y) * diff.clone() * diff;
    }
    drop = drop / S::measure(g, x);
    Ok(quarter.clone() * hess + half * df.clone() * df - quarter * drop)
}

/// Quadratic and linear forms of the local operators at a vertex, in the
/// coordinates of functions vanishing at the center.
///
/// `coords` lists the first sphere ascending, then the second sphere
/// ascending. For `f` with `f(center) = 0` and values `y` on `coords`,
///
/// ```text
/// Gamma2(f)(center) = y^T gamma2 y
/// Delta f(center)   = laplacian . y
/// Gamma(f)(center)  = y^T gamma y
/// ```
#[derive(Clone, Debug)]
pub struct LocalForms<S> {
    pub center: Vertex,
    pub coords: Vec<Vertex>,
    pub sphere1_len: usize,
    pub gamma2: SymMat<S>,
    pub laplacian: Vec<S>,
    pub gamma: SymMat<S>,
}

/// Builds [`LocalForms`] at `x`. The `gamma2` matrix is obtained by
/// polarizing [`gamma2_at`] over indicator functions of the coordinates.
pub fn local_forms<S: Scalar>(g: &WeightedGraph, x: Vertex) -> Result<LocalForms<S>> {
    let sphere1 = g.sphere(x, 1)?;
    let sphere2 = g.sphere(x, 2)?;
    let sphere1_len = sphere1.len();
    let coords: Vec<Vertex> = sphere1.into_iter().chain(sphere2).collect();
    let d = coords.len();
    let n = g.vertex_count();

    let mut basis: Vec<Vec<S>> = Vec::with_capacity(d);
    for &v in &coords {
        let mut e = vec![S::zero(); n];
        e[v] = S::one();
        basis.push(e);
    }
    let gamma2 = SymMat::from_fn(d, |i, j| {
        gamma2_at(g, &basis[i], &basis[j], x).expect("vertex exists")
    });

    let m_x = S::measure(g, x);
    let mut laplacian = vec![S::zero(); d];
    let mut gamma = SymMat::zeros(d);
    let two = S::from_int(2);
    for (i, &v) in coords.iter().enumerate() {
        if let Some(idx) = g.neighbor_index(x, v) {
            let mu = S::edge_weight(g, x, idx);
            laplacian[i] = mu.clone() / m_x.clone();
            gamma.set(i, i, mu / (two.clone() * m_x.clone()));
        }
    }

    Ok(LocalForms {
        center: x,
        coords,
        sphere1_len,
        gamma2,
        laplacian,
        gamma,
    })
}
