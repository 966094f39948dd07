#![allow(dead_code)]

use itertools::Itertools;
use num_complex::Complex64;
use rank2lift::geometry::Vector;

pub fn rv(c: &[f64]) -> Vector<f64> {
    Vector::new(c.to_vec()).unwrap()
}

pub fn cv(c: &[(f64, f64)]) -> Vector<Complex64> {
    Vector::new(c.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap()
}

pub fn e(n: usize, k: usize) -> Vector<f64> {
    Vector::unit(n, k)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            let pivot = a[c].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot).skip(c) {
                *x -= f * p;
            }
        }
    }
    d
}

/// Rank of real vectors as the largest `k` with a nonvanishing `k x k` minor.
pub fn minor_rank(vs: &[Vec<f64>], thresh: f64) -> usize {
    let n = vs[0].len();
    for k in (1..=n.min(vs.len())).rev() {
        for rows in (0..vs.len()).combinations(k) {
            for cols in (0..n).combinations(k) {
                let m = rows.iter().map(|&r| cols.iter().map(|&c| vs[r][c]).collect()).collect();
                if det(m).abs() > thresh {
                    return k;
                }
            }
        }
    }
    0
}

/// Interleaved lift written out from the definition.
pub fn lift_by_hand(v: &Vector<Complex64>) -> (Vec<f64>, Vec<f64>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for z in v.coords() {
        a.extend([z.re, z.im]);
        b.extend([-z.im, z.re]);
    }
    (a, b)
}

/// Dense projection onto `span{v', v''}` as `(v'v'^T + v''v''^T)/|v|^2`.
pub fn rank2_matrix(v: &Vector<Complex64>) -> Vec<Vec<f64>> {
    let (a, b) = lift_by_hand(v);
    let ns = v.norm_sq();
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (a[i] * a[j] + b[i] * b[j]) / ns).collect())
        .collect()
}

pub fn trace_of_product(p: &[Vec<f64>], q: &[Vec<f64>]) -> f64 {
    let n = p.len();
    (0..n).map(|i| (0..n).map(|k| p[i][k] * q[k][i]).sum::<f64>()).sum()
}

/// Whether real vectors span `R^n`, decided by some nonzero `n x n` minor.
pub fn spans_by_minors(vs: &[Vec<f64>], n: usize) -> bool {
    vs.len() >= n
        && (0..vs.len())
            .combinations(n)
            .any(|rows| det(rows.iter().map(|&r| vs[r].clone()).collect()).abs() > 1e-9)
}

/// Complement property decided independently by minors over all bipartitions.
pub fn complement_property_by_minors(vs: &[Vec<f64>]) -> bool {
    let n = vs[0].len();
    let m = vs.len();
    (0u32..1 << m).all(|mask| {
        let side = |inside: bool| -> Vec<Vec<f64>> {
            (0..m)
                .filter(|&i| (mask & (1 << i) != 0) == inside)
                .map(|i| vs[i].clone())
                .collect()
        };
        spans_by_minors(&side(true), n) || spans_by_minors(&side(false), n)
    })
}
