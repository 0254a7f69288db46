//! Smith normal form over Q[c], reduced to what the Darboux path needs:
//! the last invariant factor of a parametric linear system.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rat::Rat;
use crate::unipoly::UniPoly;

/// Last invariant factor of the Smith normal form of a nonzero matrix over
/// Q[c], monic-normalized.
///
/// The matrix is diagonalized by gcd-pivot reduction: pick the nonzero
/// entry of minimal degree, clear its row and column by polynomial
/// division, repeat. Row and column scalings by rational constants are
/// unimodular over Q[c] and are used freely to keep coefficients small.
/// The last invariant factor of the resulting diagonal is the lcm of the
/// diagonal entries.
pub fn smith_last_invariant(m: &Mat<UniPoly<Rat>>) -> Result<UniPoly<Rat>> {
    if m.data.iter().all(UniPoly::is_zero) {
        return Err(Error::Precondition("zero matrix in smith form".to_string()));
    }
    let mut a: Vec<Vec<UniPoly<Rat>>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let rows = m.rows;
    let cols = m.cols;
    let mut diag: Vec<UniPoly<Rat>> = Vec::new();
    let mut top = 0usize;

    while top < rows && top < cols {
        // whole-row rational rescaling is a unit operation over Q[c]
        for row in a.iter_mut().skip(top) {
            rescale_row(row);
        }
        // locate a nonzero entry of minimal degree in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].deg() < a[bi][bj].deg())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }

        // reduce the pivot column and row by division; iterate until clean
        loop {
            let mut changed = false;
            for i in top + 1..rows {
                if a[i][top].is_zero() {
                    continue;
                }
                let q = a[i][top].div_rem(&a[top][top]).0;
                for j in top..cols {
                    let t = a[top][j].mul(&q);
                    a[i][j] = a[i][j].sub(&t);
                }
                if !a[i][top].is_zero() {
                    // remainder has smaller degree; promote it to the pivot
                    a.swap(top, i);
                    changed = true;
                }
            }
            for j in top + 1..cols {
                if a[top][j].is_zero() {
                    continue;
                }
                let q = a[top][j].div_rem(&a[top][top]).0;
                for row in a.iter_mut().skip(top) {
                    let t = row[top].mul(&q);
                    row[j] = row[j].sub(&t);
                }
                if !a[top][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(top, j);
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(a[top][top].clone());
        top += 1;
    }

    let mut last = UniPoly::one();
    for e in &diag {
        // lcm(last, e) = last * e / gcd
        let g = last.gcd(e);
        last = last.mul(&e.div_rem(&g).0);
    }
    Ok(last.monic())
}

/// Scale a whole row by one rational constant so that every coefficient of
/// every entry is an integer and their common content is 1.
fn rescale_row(row: &mut [UniPoly<Rat>]) {
    use num_bigint::BigInt;
    use num_traits::Zero;

    let l = crate::rat::denominator_lcm(row.iter().flat_map(|e| e.coeffs.iter()));
    let mut g = BigInt::zero();
    for e in row.iter() {
        for c in &e.coeffs {
            g = num_integer::Integer::gcd(&g, &(c.numer() * (&l / c.denom())));
        }
    }
    if g.is_zero() {
        return;
    }
    let scale = Rat::new(l, g);
    for e in row.iter_mut() {
        *e = e.scale(&scale);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn c_poly(cs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_i64_slice(cs)
    }

    #[test]
    fn identity_has_trivial_last_invariant() {
        let m = Mat::from_rows(vec![
            vec![c_poly(&[1]), c_poly(&[0])],
            vec![c_poly(&[0]), c_poly(&[1])],
        ]);
        assert_eq!(smith_last_invariant(&m).unwrap(), UniPoly::one());
    }

    #[test]
    fn diagonal_one_c() {
        let m = Mat::from_rows(vec![
            vec![c_poly(&[1]), c_poly(&[0])],
            vec![c_poly(&[0]), c_poly(&[0, 1])],
        ]);
        assert_eq!(smith_last_invariant(&m).unwrap(), c_poly(&[0, 1]));
    }

    #[test]
    fn upper_triangular_c_squared() {
        // [[c, 1], [0, c]] has invariant factors 1, c^2
        let m = Mat::from_rows(vec![
            vec![c_poly(&[0, 1]), c_poly(&[1])],
            vec![c_poly(&[0]), c_poly(&[0, 1])],
        ]);
        assert_eq!(smith_last_invariant(&m).unwrap(), c_poly(&[0, 0, 1]));
    }

    #[test]
    fn zero_matrix_rejected() {
        let m = Mat::from_rows(vec![vec![c_poly(&[0]), c_poly(&[0])]]);
        assert!(smith_last_invariant(&m).is_err());
    }

    #[test]
    fn rectangular_with_common_factor() {
        // rows (c, c^2), (c, c) -> equivalent to diag(c, ...) with a c*(c-1) tail
        let m = Mat::from_rows(vec![
            vec![c_poly(&[0, 1]), c_poly(&[0, 0, 1])],
            vec![c_poly(&[0, 1]), c_poly(&[0, 1])],
        ]);
        // minors: delta1 = c, delta2 = det = c^2 - c^3 -> d2 = delta2/delta1 = c - c^2
        let last = smith_last_invariant(&m).unwrap();
        let expected = c_poly(&[0, 1, -1]).monic();
        assert_eq!(last, expected);
    }
}
