//! Small exact linear-algebra helpers over the rationals.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type Mat = Vec<Vec<Rational>>;

/// Row-reduce in place; returns the rank.
pub fn row_reduce(m: &mut Mat) -> usize {
    let rows = m.len();
    let cols = m.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone().recip();
        for c in col..cols {
            m[rank][c] *= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let sub = &m[rank][c] * &f;
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank(mut m: Mat) -> usize {
    row_reduce(&mut m)
}

/// A basis of the right null space of `m` (vectors of length `cols`).
pub fn null_space(mut m: Mat, cols: usize) -> Vec<Vec<Rational>> {
    row_reduce(&mut m);
    let mut pivot_of_col = vec![None; cols];
    for (r, row) in m.iter().enumerate() {
        if let Some(c) = row.iter().position(|x| !x.is_zero()) {
            pivot_of_col[c] = Some(r);
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (c, p) in pivot_of_col.iter().enumerate() {
            if let Some(r) = p {
                v[c] = -m[*r][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn invert(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    row_reduce(&mut aug);
    // singular iff some row's pivot falls in the augmented half
    for row in &aug {
        match row.iter().position(|x| !x.is_zero()) {
            Some(p) if p < n => {}
            _ => return None,
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
