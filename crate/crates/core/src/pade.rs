//! Hermite-Pade reconstruction: the iterative order-basis algorithm and
//! the naive linear-solve oracle it is tested against.

use alloc::vec;
use alloc::vec::Vec;

use crate::annihilator::{
    build_guess_rows, min_ydeg_representative, Ansatz, GuessResult, GuessStatus,
};
use crate::bipoly::{primitive_part_y_in, BiPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{nullspace, Mat};
use crate::rat::Rat;
use crate::series::{ts_mul, TruncatedSeries};
use crate::unipoly::UniPoly;

/// Required order for the type-(N, N-1, ..., 0) approximant.
pub fn pade_order(n: u32) -> usize {
    let n = n as usize;
    n * (n + 1) / 2 + n - 1
}

/// Hermite-Pade approximant of type (N, N-1, ..., 0) for the power-series
/// vector (1, s, s^2, ..., s^N): a polynomial M = sum a_i(x) y^i with
/// deg a_i <= N - i and M(x, s(x)) = 0 mod x^sigma. Heuristic: the result
/// is never certified.
pub fn pade_hermite_guess(series: &TruncatedSeries<Rat>, n: u32) -> Result<GuessResult> {
    if n < 1 {
        return Err(Error::Precondition(alloc::string::String::from(
            "degree bound N must be >= 1",
        )));
    }
    let sigma = pade_order(n);
    if series.precision() < sigma {
        return Err(Error::InsufficientPrecision {
            have: series.precision(),
            need: sigma,
        });
    }
    let s = &series.coeffs[..sigma];

    // power-series vector (1, s, ..., s^N) truncated at sigma
    let m = n as usize + 1;
    let mut f: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut cur = vec![<Rat as Field>::one()];
    f.push(cur.clone());
    for _ in 0..n {
        cur = ts_mul(&cur, s, sigma);
        f.push(cur.clone());
    }

    // iterative order basis: basis[j] is a candidate coefficient vector
    // (a_0 ... a_N); after step k every residual vanishes mod x^{k+1}
    let shifts: Vec<i64> = (0..m).map(|i| (n as i64) - i as i64).collect();
    let mut basis: Vec<Vec<UniPoly<Rat>>> = (0..m)
        .map(|j| {
            let mut row = vec![UniPoly::zero(); m];
            row[j] = UniPoly::one();
            row
        })
        .collect();

    for k in 0..sigma {
        // residual coefficient of x^k per basis element
        let res: Vec<Rat> = basis
            .iter()
            .map(|row| {
                let mut acc = <Rat as Field>::zero();
                for (i, a) in row.iter().enumerate() {
                    for (e, c) in a.coeffs.iter().enumerate() {
                        if e <= k {
                            if let Some(v) = f[i].get(k - e) {
                                acc = acc.add(&c.mul(v));
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        // pivot: nonzero residual of minimal shifted degree
        let mut pivot: Option<usize> = None;
        for j in 0..m {
            if res[j].is_zero() {
                continue;
            }
            let dj = shifted_degree(&basis[j], &shifts);
            match pivot {
                None => pivot = Some(j),
                Some(pj) => {
                    if dj < shifted_degree(&basis[pj], &shifts) {
                        pivot = Some(j);
                    }
                }
            }
        }
        let Some(pj) = pivot else { continue };
        let pres = res[pj].clone();
        for j in 0..m {
            if j == pj || res[j].is_zero() {
                continue;
            }
            let factor = res[j].div(&pres);
            for i in 0..m {
                let t = basis[pj][i].scale(&factor);
                basis[j][i] = basis[j][i].sub(&t);
            }
        }
        // multiply the pivot by x
        for i in 0..m {
            basis[pj][i] = basis[pj][i].shift_up(1);
        }
    }

    // pick a type-respecting element of minimal y-degree
    let mut best: Option<BiPoly<Rat>> = None;
    for row in &basis {
        if shifted_degree(row, &shifts) > 0 {
            continue;
        }
        let poly = row_to_bipoly(row);
        if poly.is_zero() {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                let (dy, db) = (poly.deg_y(), b.deg_y());
                dy < db || (dy == db && poly.deg_x() < b.deg_x())
            }
        };
        if better {
            best = Some(poly);
        }
    }
    let status = match best {
        None => GuessStatus::NotFound,
        Some(mpoly) => GuessStatus::Found(primitive_part_y_in(&mpoly).normalized()),
    };
    Ok(GuessResult {
        status,
        certified: false,
    })
}

fn shifted_degree(row: &[UniPoly<Rat>], shifts: &[i64]) -> i64 {
    let mut d = i64::MIN;
    for (a, &s) in row.iter().zip(shifts.iter()) {
        if let Some(da) = a.degree() {
            d = d.max(da as i64 - s);
        }
    }
    d
}

fn row_to_bipoly(row: &[UniPoly<Rat>]) -> BiPoly<Rat> {
    let mut out = BiPoly::zero();
    for (i, a) in row.iter().enumerate() {
        for (j, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&BiPoly::term(c.clone(), j as u32, i as u32));
            }
        }
    }
    out
}

/// The oracle: solve the order condition directly as a linear system over
/// the same unknown layout and order.
pub fn pade_hermite_naive(series: &TruncatedSeries<Rat>, n: u32) -> Result<GuessResult> {
    if n < 1 {
        return Err(Error::Precondition(alloc::string::String::from(
            "degree bound N must be >= 1",
        )));
    }
    let sigma = pade_order(n);
    if series.precision() < sigma {
        return Err(Error::InsufficientPrecision {
            have: series.precision(),
            need: sigma,
        });
    }
    let ansatz = Ansatz::new(n);
    let rows = build_guess_rows(&ansatz, &series.coeffs[..sigma], sigma);
    let mut basis = nullspace(&Mat::from_rows(rows));
    let status = match min_ydeg_representative(&mut basis) {
        None => GuessStatus::NotFound,
        Some(v) => GuessStatus::Found(primitive_part_y_in(&ansatz.vec_to_poly(&v)).normalized()),
    };
    Ok(GuessResult {
        status,
        certified: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annihilator::order_condition_valuation;
    use crate::rat::rat_i64;

    fn geometric(sigma: usize) -> TruncatedSeries<Rat> {
        // series of 1/(1-x)
        TruncatedSeries {
            coeffs: alloc::vec![rat_i64(1); sigma],
        }
    }

    #[test]
    fn divides_pencil_for_geometric() {
        // series of 1/(1-x): annihilated by (1-x)y - 1
        let n = 2;
        let s = geometric(pade_order(n));
        let g = pade_hermite_guess(&s, n).unwrap();
        assert!(!g.certified);
        let m = g.found().expect("found").clone();
        // the result must be divisible by (1-x)y - 1 (up to sign)
        let target = BiPoly::from_i64_terms(&[(1, 0, 1), (-1, 1, 1), (-1, 0, 0)]);
        let q = m.exact_div(&target.normalized());
        assert!(q.is_some() || m == target.normalized());
    }

    #[test]
    fn zero_series_yields_y() {
        let s = TruncatedSeries {
            coeffs: alloc::vec![rat_i64(0); pade_order(1).max(2)],
        };
        let g = pade_hermite_guess(&s, 1).unwrap();
        assert_eq!(g.found().unwrap(), &BiPoly::from_i64_terms(&[(1, 0, 1)]));
    }

    #[test]
    fn fast_path_matches_oracle_order_condition() {
        // random-ish rational series; the fast path and the oracle must
        // both produce type-respecting annihilators to the same order
        for n in 1..=3u32 {
            let sigma = pade_order(n);
            let coeffs: Vec<Rat> = (0..sigma)
                .map(|k| Rat::new(((k * k + 3 * k + 1) as i64).into(), ((k + 1) as i64).into()))
                .collect();
            let s = TruncatedSeries { coeffs };
            let fast = pade_hermite_guess(&s, n).unwrap();
            let naive = pade_hermite_naive(&s, n).unwrap();
            match (&fast.status, &naive.status) {
                (GuessStatus::Found(mf), GuessStatus::Found(mn)) => {
                    assert!(order_condition_valuation(mf, &s) >= sigma);
                    assert!(order_condition_valuation(mn, &s) >= sigma);
                    for (j, i) in mf.terms.keys() {
                        assert!(*j <= n - *i);
                    }
                }
                (a, b) => assert_eq!(a, b),
            }
        }
    }
}
