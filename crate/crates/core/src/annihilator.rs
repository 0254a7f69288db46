//! Reconstruction of a bivariate annihilating polynomial from a truncated
//! series: the certified linear-system guesser, plus the modular variant
//! used when the systems get large.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::bipoly::{ansatz_monomials, primitive_part_y_in, BiPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{nullspace, rref_rows, Mat};
use crate::modp::{self, BiPolyP, CrtValue};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::series::TruncatedSeries;
use crate::unipoly::UniPoly;

/// Unknown layout for the degree-N ansatz
/// M(x,y) = sum_{i<=N} (sum_{j<=N-i} m_{i,j} x^j) y^i,
/// ordered so that the y^N block comes first.
#[derive(Clone, PartialEq, Debug)]
pub struct Ansatz {
    pub n: u32,
    /// (x-exponent, y-exponent) per unknown.
    pub layout: Vec<(u32, u32)>,
}

impl Ansatz {
    pub fn new(n: u32) -> Ansatz {
        Ansatz {
            n,
            layout: ansatz_monomials(n),
        }
    }

    pub fn len(&self) -> usize {
        self.layout.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layout.is_empty()
    }

    pub fn vec_to_poly<F: Field>(&self, v: &[F]) -> BiPoly<F> {
        BiPoly::from_terms(
            self.layout
                .iter()
                .zip(v.iter())
                .map(|(&k, c)| (k, c.clone())),
        )
    }
}

/// Result of a guess; `certified` records whether the precision met the
/// N^2+1 contract.
#[derive(Clone, PartialEq, Debug)]
pub struct GuessResult {
    pub status: GuessStatus,
    pub certified: bool,
}

#[derive(Clone, PartialEq, Debug)]
pub enum GuessStatus {
    Found(BiPoly<Rat>),
    NotFound,
}

impl GuessResult {
    pub fn found(&self) -> Option<&BiPoly<Rat>> {
        match &self.status {
            GuessStatus::Found(m) => Some(m),
            GuessStatus::NotFound => None,
        }
    }
}

pub fn certified_order(n: u32) -> usize {
    (n as usize) * (n as usize) + 1
}

/// Rows of the linear system M(x, s(x)) = 0 mod x^order over any field:
/// row k is the coefficient of x^k as a linear form in the unknowns.
pub fn build_guess_rows<F: Field>(ansatz: &Ansatz, s: &[F], order: usize) -> Vec<Vec<F>> {
    let n = ansatz.n as usize;
    // powers s^i mod x^order
    let mut powers: Vec<Vec<F>> = Vec::with_capacity(n + 1);
    let mut cur = alloc::vec![F::one()];
    powers.push(cur.clone());
    for _ in 0..n {
        cur = crate::series::ts_mul(&cur, s, order);
        powers.push(cur.clone());
    }
    let mut rows = alloc::vec![alloc::vec![F::zero(); ansatz.len()]; order];
    for (col, &(j, i)) in ansatz.layout.iter().enumerate() {
        let pw = &powers[i as usize];
        for k in (j as usize)..order {
            if let Some(c) = pw.get(k - j as usize) {
                if !c.is_zero() {
                    rows[k][col] = c.clone();
                }
            }
        }
    }
    rows
}

/// Minimal-y-degree representative of a kernel: reduced row echelon form
/// of the basis under the ansatz ordering, last row.
pub fn min_ydeg_representative<F: Field>(basis: &mut Vec<Vec<F>>) -> Option<Vec<F>> {
    if basis.is_empty() {
        return None;
    }
    rref_rows(basis);
    basis.last().cloned()
}

/// Certified guess at precision >= N^2 + 1.
pub fn guess_min_poly(series: &TruncatedSeries<Rat>, n: u32) -> Result<GuessResult> {
    if n < 1 {
        return Err(Error::Precondition("degree bound N must be >= 1".to_string()));
    }
    let need = certified_order(n);
    if series.precision() < need {
        return Err(Error::InsufficientPrecision {
            have: series.precision(),
            need,
        });
    }
    guess_min_poly_at_order(series, n, need)
}

/// Guess at an explicit order; certified iff order >= N^2 + 1. The series
/// is truncated to the order before the system is built.
pub fn guess_min_poly_at_order(
    series: &TruncatedSeries<Rat>,
    n: u32,
    order: usize,
) -> Result<GuessResult> {
    if n < 1 {
        return Err(Error::Precondition("degree bound N must be >= 1".to_string()));
    }
    if series.precision() < order {
        return Err(Error::InsufficientPrecision {
            have: series.precision(),
            need: order,
        });
    }
    let certified = order >= certified_order(n);
    let ansatz = Ansatz::new(n);
    let s = &series.coeffs[..order];
    let rows = build_guess_rows(&ansatz, s, order);
    let mut basis = nullspace(&Mat::from_rows(rows));
    let status = match min_ydeg_representative(&mut basis) {
        None => GuessStatus::NotFound,
        Some(v) => {
            let m = ansatz.vec_to_poly(&v);
            GuessStatus::Found(primitive_part_y_in(&m).normalized())
        }
    };
    Ok(GuessResult { status, certified })
}

/// Valuation of M(x, s(x)) against a truncated series: the number of
/// leading zero coefficients, capped at the series precision.
pub fn order_condition_valuation(m: &BiPoly<Rat>, series: &TruncatedSeries<Rat>) -> usize {
    let sigma = series.precision();
    let v = crate::series::eval_bipoly_at_series(m, &series.coeffs, sigma);
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            return k;
        }
    }
    sigma
}

/// Symbolic-parameter system: rows over Q(c) cleared to polynomial rows.
pub fn clear_row_denominators(row: &[RatFunc<Rat>]) -> Vec<UniPoly<Rat>> {
    let mut l: UniPoly<Rat> = UniPoly::one();
    for e in row {
        if e.is_zero() {
            continue;
        }
        let g = l.gcd(&e.den);
        l = l.mul(&e.den.div_rem(&g).0);
    }
    row.iter()
        .map(|e| {
            if e.is_zero() {
                UniPoly::zero()
            } else {
                e.num.mul(&l.div_rem(&e.den).0)
            }
        })
        .collect()
}

/// Outcome of the modular guessing pipeline.
pub enum ModularGuess {
    /// The system has full column rank modulo a good prime, which proves
    /// kernel triviality over Q.
    TrivialCertified,
    /// A reconstructed kernel representative; downstream verification is
    /// mandatory.
    Candidate(BiPoly<Rat>),
}

/// Large-system guess: per-prime series and kernels, CRT-combined and
/// rationally reconstructed.
pub fn modular_guess(
    a: &BiPoly<Rat>,
    b: &BiPoly<Rat>,
    c: &Rat,
    n: u32,
    order: usize,
) -> Result<ModularGuess> {
    let ansatz = Ansatz::new(n);
    let cols = ansatz.len();
    let mut sig: Option<Vec<usize>> = None;
    let mut sig_count = 0usize;
    let mut crt: Vec<CrtValue> = Vec::new();
    let mut used = 0usize;

    let mut primes = modp::PRIMES.iter().copied();
    while let Some(p) = primes.next() {
        let Some(data) = per_prime_last_row(a, b, c, &ansatz, order, p) else {
            continue;
        };
        let (pivots, row) = match data {
            PerPrime::FullRank => return Ok(ModularGuess::TrivialCertified),
            PerPrime::Kernel(pv, row) => (pv, row),
        };
        match &sig {
            None => {
                sig = Some(pivots);
                sig_count = 1;
                crt = row.iter().map(|&r| CrtValue::new(r, p)).collect();
            }
            Some(s) if *s == pivots => {
                sig_count += 1;
                for (acc, &r) in crt.iter_mut().zip(row.iter()) {
                    acc.push(r, p);
                }
            }
            Some(_) if sig_count <= 1 => {
                // first prime was likely bad; restart with this one
                sig = Some(pivots);
                sig_count = 1;
                crt = row.iter().map(|&r| CrtValue::new(r, p)).collect();
            }
            Some(_) => continue,
        }
        used += 1;
        if used < 2 {
            continue;
        }
        // attempt reconstruction
        let mut vec: Vec<Rat> = Vec::with_capacity(cols);
        let mut ok = true;
        for acc in &crt {
            match modp::rational_reconstruct(&acc.residue, &acc.modulus) {
                Some(r) => vec.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        // verify the candidate against one fresh prime
        if let Some(vp) = primes.next() {
            if !verify_candidate_mod_p(a, b, c, &ansatz, order, &vec, vp) {
                continue;
            }
        }
        let m = ansatz.vec_to_poly(&vec);
        return Ok(ModularGuess::Candidate(
            primitive_part_y_in(&m).normalized(),
        ));
    }
    Err(Error::ModularFailure(
        "primes exhausted during kernel reconstruction".to_string(),
    ))
}

enum PerPrime {
    FullRank,
    Kernel(Vec<usize>, Vec<u64>),
}

fn per_prime_last_row(
    a: &BiPoly<Rat>,
    b: &BiPoly<Rat>,
    c: &Rat,
    ansatz: &Ansatz,
    order: usize,
    p: u64,
) -> Option<PerPrime> {
    let ap = BiPolyP::reduce(a, p)?;
    let bp = BiPolyP::reduce(b, p)?;
    let cp = modp::rat_mod(c, p)?;
    let s = modp::series_mod_p(&ap, &bp, cp, order, p)?;
    let mut rows = build_rows_mod_p(ansatz, &s, order, p);
    let pivots = modp::rref_mod_p(&mut rows, p);
    if pivots.len() == ansatz.len() {
        return Some(PerPrime::FullRank);
    }
    // kernel basis, echeloned, last row
    let n = ansatz.len();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for f in 0..n {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = alloc::vec![0u64; n];
        v[f] = 1;
        for (pr, &pc) in pivots.iter().enumerate() {
            v[pc] = modp::subm(0, rows[pr][f], p);
        }
        basis.push(v);
    }
    let kernel_pivots = modp::rref_mod_p(&mut basis, p);
    let last = basis.last()?.clone();
    let mut sig = pivots;
    sig.extend(kernel_pivots);
    Some(PerPrime::Kernel(sig, last))
}

fn build_rows_mod_p(ansatz: &Ansatz, s: &[u64], order: usize, p: u64) -> Vec<Vec<u64>> {
    let n = ansatz.n as usize;
    let mut powers: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    let mut cur = alloc::vec![1u64];
    powers.push(cur.clone());
    for _ in 0..n {
        cur = modp::poly::mul_trunc(&cur, s, order, p);
        powers.push(cur.clone());
    }
    let mut rows = alloc::vec![alloc::vec![0u64; ansatz.len()]; order];
    for (col, &(j, i)) in ansatz.layout.iter().enumerate() {
        let pw = &powers[i as usize];
        for k in (j as usize)..order {
            if let Some(&cv) = pw.get(k - j as usize) {
                rows[k][col] = cv;
            }
        }
    }
    rows
}

fn verify_candidate_mod_p(
    a: &BiPoly<Rat>,
    b: &BiPoly<Rat>,
    c: &Rat,
    ansatz: &Ansatz,
    order: usize,
    vec: &[Rat],
    p: u64,
) -> bool {
    let Some(ap) = BiPolyP::reduce(a, p) else {
        return true;
    };
    let Some(bp) = BiPolyP::reduce(b, p) else {
        return true;
    };
    let Some(cp) = modp::rat_mod(c, p) else {
        return true;
    };
    let Some(s) = modp::series_mod_p(&ap, &bp, cp, order, p) else {
        return true;
    };
    let rows = build_rows_mod_p(ansatz, &s, order, p);
    let reduced: Option<Vec<u64>> = vec.iter().map(|r| modp::rat_mod(r, p)).collect();
    let Some(vp) = reduced else {
        return true;
    };
    for row in &rows {
        let mut acc = 0u64;
        for (x, y) in row.iter().zip(vp.iter()) {
            acc = modp::addm(acc, modp::mulm(*x, *y, p), p);
        }
        if acc != 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;
    use crate::series::solve_series_ivp_in;

    fn geometric_series(sigma: usize) -> TruncatedSeries<Rat> {
        // y = 1/(1+x) = series of (A, B) = (x+1, -y) at c = 1
        let a = BiPoly::from_i64_terms(&[(1, 1, 0), (1, 0, 0)]);
        let b = BiPoly::from_i64_terms(&[(-1, 0, 1)]);
        solve_series_ivp_in(&a, &b, &rat_i64(1), sigma).unwrap()
    }

    #[test]
    fn annihilates_geometric_series_at_n2() {
        let s = geometric_series(5);
        let g = guess_min_poly(&s, 2).unwrap();
        assert!(g.certified);
        let m = g.found().expect("found");
        // x*y + y - 1
        let expect = BiPoly::from_i64_terms(&[(1, 1, 1), (1, 0, 1), (-1, 0, 0)]);
        assert_eq!(m, &expect.normalized());
    }

    #[test]
    fn zero_series_annihilated_by_y() {
        let s = TruncatedSeries {
            coeffs: alloc::vec![rat_i64(0), rat_i64(0)],
        };
        let g = guess_min_poly(&s, 1).unwrap();
        let m = g.found().expect("found");
        assert_eq!(m, &BiPoly::from_i64_terms(&[(1, 0, 1)]));
    }

    #[test]
    fn low_precision_spurious_annihilator() {
        // N = 1 at precision 2 finds y + x - 1, which is not a true
        // annihilator of 1/(1+x)
        let s = geometric_series(2);
        let g = guess_min_poly(&s, 1).unwrap();
        let m = g.found().expect("found");
        let expect = BiPoly::from_i64_terms(&[(1, 0, 1), (1, 1, 0), (-1, 0, 0)]);
        assert_eq!(m, &expect.normalized());
        // and the order condition fails at precision 3
        let s3 = geometric_series(3);
        assert_eq!(order_condition_valuation(m, &s3), 2);
    }

    #[test]
    fn precision_contract_enforced() {
        let s = geometric_series(4);
        assert!(matches!(
            guess_min_poly(&s, 2),
            Err(Error::InsufficientPrecision { .. })
        ));
        assert!(guess_min_poly(&s, 0).is_err());
    }

    #[test]
    fn min_ydeg_selection() {
        // kernel spanned by {y^2 + x*y, y^2}: span contains x*y of
        // y-degree 1, which must be selected
        let ansatz = Ansatz::new(2);
        let to_vec = |m: &BiPoly<Rat>| -> Vec<Rat> {
            ansatz.layout.iter().map(|&(j, i)| m.coeff(j, i)).collect()
        };
        let v1 = to_vec(&BiPoly::from_i64_terms(&[(1, 0, 2), (1, 1, 1)]));
        let v2 = to_vec(&BiPoly::from_i64_terms(&[(1, 0, 2)]));
        let mut basis = alloc::vec![v1, v2];
        let got = min_ydeg_representative(&mut basis).unwrap();
        let m = ansatz.vec_to_poly(&got);
        assert_eq!(m.deg_y(), 1);
        assert_eq!(m.normalized(), BiPoly::from_i64_terms(&[(1, 1, 1)]));
    }

    #[test]
    fn modular_guess_matches_exact() {
        let a = BiPoly::from_i64_terms(&[(1, 1, 0), (1, 0, 0)]);
        let b = BiPoly::from_i64_terms(&[(-1, 0, 1)]);
        let m = match modular_guess(&a, &b, &rat_i64(1), 2, 5).unwrap() {
            ModularGuess::Candidate(m) => m,
            ModularGuess::TrivialCertified => panic!("kernel is nontrivial"),
        };
        let s = geometric_series(5);
        let e = guess_min_poly(&s, 2).unwrap();
        assert_eq!(&m, e.found().unwrap());
    }
}
