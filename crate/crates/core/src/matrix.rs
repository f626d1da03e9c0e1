//! Small dense symmetric matrices and the two positive-semidefiniteness
//! tests used by the curvature checks.

use nalgebra::DMatrix;
use num::Zero;

use crate::scalar::{Rational, Scalar};

/// Relative floor for the floating-point PSD verdict: a matrix passes when
/// its smallest eigenvalue is at least `-PSD_EPS * max(1, largest |entry|)`.
pub const PSD_EPS: f64 = 1e-9;

/// Symmetric matrix stored densely; `set` mirrors entries across the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMat<S> {
    n: usize,
    a: Vec<S>,
}

impl<S: Scalar> SymMat<S> {
    pub fn zeros(n: usize) -> Self {
        SymMat {
            n,
            a: vec![S::zero(); n * n],
        }
    }

    /// Builds from `f(i, j)`, evaluated once per unordered pair with `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = SymMat::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.a[i * self.n + j] = v.clone();
        self.a[j * self.n + i] = v;
    }

    pub fn max_abs(&self) -> S {
        let mut best = S::zero();
        for v in &self.a {
            let a = v.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Evaluates the quadratic form `y^T A y`.
    pub fn quadratic(&self, y: &[S]) -> S {
        assert_eq!(y.len(), self.n, "vector length must match matrix dimension");
        let mut acc = S::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc = acc + self.get(i, j).clone() * y[i].clone() * y[j].clone();
            }
        }
        acc
    }

    /// Schur complement onto the leading `keep` coordinates.
    ///
    /// The trailing block must be diagonal with strictly positive entries;
    /// eliminating it realizes the unconstrained minimum of the quadratic
    /// form over the trailing coordinates, so the result is positive
    /// semidefinite exactly when the full matrix is.
    pub fn eliminate_trailing_diagonal(&self, keep: usize) -> SymMat<S> {
        assert!(keep <= self.n);
        for z in keep..self.n {
            debug_assert!(
                !self.get(z, z).is_negative() && !self.get(z, z).is_zero(),
                "trailing block must have positive diagonal"
            );
            for w in (z + 1)..self.n {
                debug_assert!(self.get(z, w).is_zero(), "trailing block must be diagonal");
            }
        }
        SymMat::from_fn(keep, |i, j| {
            let mut v = self.get(i, j).clone();
            for z in keep..self.n {
                v = v - self.get(i, z).clone() * self.get(j, z).clone() / self.get(z, z).clone();
            }
            v
        })
    }
}

impl SymMat<f64> {
    /// Smallest eigenvalue, computed symmetrically. Empty matrices report 0.
    pub fn min_eigenvalue(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let d = DMatrix::from_fn(self.n, self.n, |i, j| *self.get(i, j));
        let eig = d.symmetric_eigen();
        eig.eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// Floating PSD verdict with an explicit tolerance factor.
    pub fn is_psd_with_eps(&self, eps: f64) -> bool {
        self.min_eigenvalue() >= -eps * self.max_abs().max(1.0)
    }
}

/// Scalar that can decide whether a symmetric matrix over itself is PSD.
pub trait PsdScalar: Scalar {
    fn is_psd(m: &SymMat<Self>) -> bool;
}

impl PsdScalar for f64 {
    fn is_psd(m: &SymMat<f64>) -> bool {
        m.is_psd_with_eps(PSD_EPS)
    }
}

impl PsdScalar for Rational {
    /// Exact verdict by pivoted LDL^T elimination: all pivots must be
    /// nonnegative, and a zero pivot forces its entire row to vanish.
    fn is_psd(m: &SymMat<Rational>) -> bool {
        let n = m.dim();
        let mut a = m.clone();
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            let mut next = Vec::with_capacity(active.len());
            for &i in &active {
                if a.get(i, i).is_negative() {
                    return false;
                }
            }
            for &i in &active {
                if a.get(i, i).is_zero() {
                    if active.iter().any(|&j| j != i && !a.get(i, j).is_zero()) {
                        return false;
                    }
                } else {
                    next.push(i);
                }
            }
            let Some(&p) = next.first() else {
                return true;
            };
            let pivot = a.get(p, p).clone();
            let rest: Vec<usize> = next[1..].to_vec();
            for (ai, &i) in rest.iter().enumerate() {
                for &j in &rest[ai..] {
                    let v = a.get(i, j).clone()
                        - a.get(p, i).clone() * a.get(p, j).clone() / pivot.clone();
                    a.set(i, j, v);
                }
            }
            for &i in &rest {
                a.set(p, i, Rational::zero());
            }
            active = rest;
        }
        true
    }
}
