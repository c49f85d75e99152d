//! Dense linear algebra over a [`Field`]: row reduction, kernels, solving.

use super::field::{Elem, Field};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        for j in c..cols {
            m[r][j] = f.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&factor, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel(f: &Field, m: &Matrix) -> Vec<Vec<Elem>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&a[row][free]);
        }
        out.push(v);
    }
    out
}

/// Solves the square system `m x = b`.
pub fn solve(f: &Field, m: &Matrix, b: &[Elem]) -> Result<Vec<Elem>> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut a);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Err(Error::Internal("singular linear system".into()));
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square matrix.
pub fn inverse(f: &Field, m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { f.one() } else { f.zero() });
            }
            r
        })
        .collect();
    let pivots = rref(f, &mut a);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Internal("singular matrix".into()));
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec(f: &Field, m: &Matrix, v: &[Elem]) -> Vec<Elem> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_matrix() {
        let q = Field::rationals();
        let m = vec![
            vec![q.from_int(1), q.from_int(2)],
            vec![q.from_int(2), q.from_int(4)],
        ];
        let k = kernel(&q, &m);
        assert_eq!(k, vec![vec![q.from_int(-2), q.from_int(1)]]);
        assert_eq!(rank(&q, &m), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let q = Field::rationals();
        let m = vec![
            vec![q.from_int(2), q.from_int(1)],
            vec![q.from_int(1), q.from_int(1)],
        ];
        let inv = inverse(&q, &m).unwrap();
        let x = mat_vec(&q, &inv, &mat_vec(&q, &m, &[q.from_int(3), q.from_int(-5)]));
        assert_eq!(x, vec![q.from_int(3), q.from_int(-5)]);
        assert_eq!(solve(&q, &m, &[q.from_int(1), q.from_int(0)]).unwrap(), vec![q.from_int(1), q.from_int(-1)]);
    }
}
