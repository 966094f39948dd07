//! Jacobi kernels: one-sided (Hestenes) SVD and cyclic symmetric eigenvalues.
//!
//! Both work on real data only. Complex problems are realified first, which
//! doubles every singular value / eigenvalue multiplicity but leaves the
//! values themselves unchanged.

use super::matrix::Matrix;
use crate::scalar::prelude::*;

const MAX_SWEEPS: usize = 80;

/// Thin result of the one-sided Jacobi SVD of an `rows x cols` matrix.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    /// Descending, one per input column.
    pub singular_values: Vec<T>,
    /// Left singular vectors (length `rows`); zero for vanishing singular values.
    pub u: Vec<Vec<T>>,
    /// Right singular vectors (length `cols`), orthonormal.
    pub v: Vec<Vec<T>>,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// SVD of the matrix whose columns are `columns` (each of length `rows`).
pub fn svd_columns<T: Real>(rows: usize, columns: &[Vec<T>]) -> Svd<T> {
    let n = columns.len();
    let scale = columns
        .iter()
        .flat_map(|c| c.iter())
        .fold(T::zero(), |a, &b| a.max(b.abs()));
    let mut w: Vec<Vec<T>> = columns.to_vec();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            e
        })
        .collect();
    if scale == T::zero() || rows == 0 {
        return Svd {
            singular_values: vec![T::zero(); n],
            u: vec![vec![T::zero(); rows]; n],
            v,
        };
    }
    let inv = scale.recip();
    for c in &mut w {
        for x in c.iter_mut() {
            *x *= inv;
        }
    }

    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                let gamma = dot(&w[p], &w[q]);
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = (T::one() + t * t).sqrt().recip();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<(T, usize)> = w.iter().enumerate().map(|(j, c)| (dot(c, c).sqrt(), j)).collect();
    // stable: ties keep input order
    sv.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));

    let mut singular_values = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    let mut vs = Vec::with_capacity(n);
    for &(s, j) in &sv {
        singular_values.push(s * scale);
        if s > T::zero() {
            u.push(w[j].iter().map(|&x| x / s).collect());
        } else {
            u.push(vec![T::zero(); rows]);
        }
        vs.push(v[j].clone());
    }
    Svd {
        singular_values,
        u,
        v: vs,
    }
}

fn rotate<T: Real>(cols: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    let (lo, hi) = cols.split_at_mut(q);
    let (a, b) = (&mut lo[p], &mut hi[0]);
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

/// Eigenvalues of a real symmetric matrix, ascending (cyclic Jacobi).
pub fn symmetric_eigenvalues<T: Real + Field<Real = T>>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows();
    let mut a = m.clone();
    // symmetrize exactly; callers have already checked the deviation
    for i in 0..n {
        for j in (i + 1)..n {
            let s = (a[(i, j)] + a[(j, i)]) * T::lit(0.5);
            a[(i, j)] = s;
            a[(j, i)] = s;
        }
    }
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        let diag: T = (0..n).map(|i| a[(i, i)] * a[(i, i)]).sum();
        if off <= eps * eps * (diag + off) || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (apq + apq);
                let t = if theta.is_infinite() {
                    T::zero()
                } else {
                    let sgn = if theta >= T::zero() { T::one() } else { -T::one() };
                    sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<T> = (0..n).map(|i| a[(i, i)]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    ev
}
