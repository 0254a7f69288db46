//! Exact linear algebra: dense matrices, kernel bases and row-echelon
//! reduction over the coefficient fields of the engine.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::Field;
use crate::rat::{denominator_lcm, Rat};
use crate::ratfunc::RatFunc;
use crate::unipoly::UniPoly;

/// A dense rows x cols matrix in row-major order.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Kernel basis over an arbitrary field by Gauss-Jordan elimination.
pub fn kernel_basis<F: Field>(m: &Mat<F>) -> Vec<Vec<F>> {
    let mut a: Vec<Vec<F>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let n = m.cols;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].inv().unwrap();
        for j in c..n {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..n {
                    let t = a[r][j].mul(&f);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![F::zero(); n];
        v[f] = F::one();
        for &(pr, pc) in &pivots {
            v[pc] = a[pr][f].neg();
        }
        basis.push(v);
    }
    basis
}

pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    m.cols - kernel_basis(m).len()
}

/// Kernel basis of a rational matrix by fraction-free (Bareiss) elimination
/// on the integer-scaled matrix, followed by back-substitution over Q.
pub fn nullspace(m: &Mat<Rat>) -> Vec<Vec<Rat>> {
    // scale each row to integers
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = denominator_lcm(row.iter());
            row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();
    let n = m.cols;
    let mut prev = BigInt::from(1);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        for i in r + 1..a.len() {
            for j in c + 1..n {
                let t = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = t / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v: Vec<Rat> = vec![<Rat as Field>::zero(); n];
        v[f] = <Rat as Field>::one();
        for &(pr, pc) in pivots.iter().rev() {
            // a[pr][pc] * v[pc] + sum_{j > pc} a[pr][j] * v[j] = 0
            let mut s = <Rat as Field>::zero();
            for j in pc + 1..n {
                if !v[j].is_zero() && !a[pr][j].is_zero() {
                    s += Rat::from_integer(a[pr][j].clone()) * &v[j];
                }
            }
            v[pc] = -s / Rat::from_integer(a[pr][pc].clone());
        }
        basis.push(v);
    }
    basis
}

/// In-place reduced row echelon form of a list of vectors; returns the
/// pivot column of each surviving row. Zero rows are dropped.
pub fn rref_rows<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().unwrap();
        for j in c..n {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..n {
                    let t = rows[r][j].mul(&f);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Kernel of a matrix whose rows are vectors of polynomials in c, computed
/// over the fraction field Q(c). Elimination is fraction-free: rows stay in
/// Q[c] and are stripped to primitive form after every combination step.
pub fn poly_kernel(rows_in: Vec<Vec<UniPoly<Rat>>>) -> Vec<Vec<RatFunc<Rat>>> {
    let n = rows_in.first().map_or(0, Vec::len);
    let mut a = rows_in;
    strip_rows(&mut a);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        // pick the pivot with the smallest degree to limit growth
        let mut best: Option<usize> = None;
        for i in r..a.len() {
            if !a[i][c].is_zero()
                && best.map_or(true, |b| a[i][c].deg() < a[b][c].deg())
            {
                best = Some(i);
            }
        }
        let Some(pr) = best else { continue };
        a.swap(r, pr);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let g = a[r][c].gcd(&a[i][c]);
            let pm = a[r][c].div_rem(&g).0;
            let im = a[i][c].div_rem(&g).0;
            for j in 0..n {
                let t = a[i][j].mul(&pm).sub(&a[r][j].mul(&im));
                a[i][j] = t;
            }
            strip_row(&mut a[i]);
        }
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v: Vec<RatFunc<Rat>> =
            vec![<RatFunc<Rat> as Field>::zero(); n];
        v[f] = <RatFunc<Rat> as Field>::one();
        for &(pr, pc) in pivots.iter().rev() {
            let mut s = <RatFunc<Rat> as Field>::zero();
            for j in pc + 1..n {
                if !v[j].is_zero() && !a[pr][j].is_zero() {
                    s = s.add(&RatFunc::from_poly(a[pr][j].clone()).mul(&v[j]));
                }
            }
            v[pc] = s.neg().div(&RatFunc::from_poly(a[pr][pc].clone()));
        }
        basis.push(v);
    }
    basis
}

fn strip_rows(rows: &mut [Vec<UniPoly<Rat>>]) {
    for row in rows.iter_mut() {
        strip_row(row);
    }
}

/// Divide a polynomial row by the gcd of its entries and rescale to
/// integer coefficients with content 1.
fn strip_row(row: &mut Vec<UniPoly<Rat>>) {
    let mut g = UniPoly::zero();
    for e in row.iter() {
        if !e.is_zero() {
            g = g.gcd(e);
            if g.is_constant() {
                break;
            }
        }
    }
    if !g.is_zero() && !g.is_constant() {
        for e in row.iter_mut() {
            *e = e.div_rem(&g).0;
        }
    }
    // integer rescale across the whole row
    let l = denominator_lcm(row.iter().flat_map(|e| e.coeffs.iter()));
    let mut gi = BigInt::zero();
    for e in row.iter() {
        for c in &e.coeffs {
            gi = num_integer::Integer::gcd(&gi, &(c.numer() * (&l / c.denom())));
        }
    }
    if gi.is_zero() {
        return;
    }
    let scale = Rat::new(l, gi);
    for e in row.iter_mut() {
        *e = e.scale(&scale);
    }
}
