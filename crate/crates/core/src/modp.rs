//! Word-size prime fields: reductions of the exact objects, modular
//! kernels, Chinese remaindering and rational reconstruction.
//!
//! Large guessing systems are solved per prime and lifted back to Q; a
//! candidate is never trusted without an exact verification downstream,
//! and triviality of a kernel modulo one good prime certifies triviality
//! over Q (specialization can only lower the rank).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bipoly::BiPoly;
use crate::rat::Rat;

/// Primes just below 2^62, large enough that word arithmetic via u128
/// never overflows and that series indices are always invertible.
pub const PRIMES: [u64; 32] = [
    0x3fffffffffffffc7,
    0x3fffffffffffffa9,
    0x3fffffffffffff8b,
    0x3fffffffffffff71,
    0x3fffffffffffff67,
    0x3fffffffffffff59,
    0x3fffffffffffff55,
    0x3fffffffffffff3d,
    0x3fffffffffffff35,
    0x3ffffffffffffeef,
    0x3ffffffffffffee1,
    0x3ffffffffffffec3,
    0x3ffffffffffffe45,
    0x3ffffffffffffe1d,
    0x3ffffffffffffe11,
    0x3ffffffffffffdc1,
    0x3ffffffffffffdbb,
    0x3ffffffffffffda5,
    0x3ffffffffffffd87,
    0x3ffffffffffffd69,
    0x3ffffffffffffd03,
    0x3ffffffffffffcfb,
    0x3ffffffffffffcf7,
    0x3ffffffffffffce9,
    0x3ffffffffffffcd3,
    0x3ffffffffffffcc1,
    0x3ffffffffffffc65,
    0x3ffffffffffffc2b,
    0x3ffffffffffffc1f,
    0x3ffffffffffffc17,
    0x3ffffffffffffc11,
    0x3ffffffffffffc07,
];

#[inline]
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powm(a, p - 2, p))
    }
}

pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits u64")
}

/// Reduce a rational mod p; None when the denominator vanishes.
pub fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let d = bigint_mod(r.denom(), p);
    let di = invm(d, p)?;
    Some(mulm(bigint_mod(r.numer(), p), di, p))
}

/// Dense polynomials mod p, lowest coefficient first.
pub mod poly {
    use super::*;

    pub fn trim(c: &mut Vec<u64>) {
        while c.last() == Some(&0) {
            c.pop();
        }
    }

    pub fn deg(c: &[u64]) -> Option<usize> {
        if c.is_empty() {
            None
        } else {
            Some(c.len() - 1)
        }
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(addm(
                a.get(k).copied().unwrap_or(0),
                b.get(k).copied().unwrap_or(0),
                p,
            ));
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(subm(
                a.get(k).copied().unwrap_or(0),
                b.get(k).copied().unwrap_or(0),
                p,
            ));
        }
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                out[i + j] = addm(out[i + j], mulm(x, y, p), p);
            }
        }
        trim(&mut out);
        out
    }

    /// Truncated product mod x^sigma.
    pub fn mul_trunc(a: &[u64], b: &[u64], sigma: usize, p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() || sigma == 0 {
            return Vec::new();
        }
        let mut out = vec![0u64; (a.len() + b.len() - 1).min(sigma)];
        for (i, &x) in a.iter().enumerate().take(sigma) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(sigma - i) {
                if y == 0 {
                    continue;
                }
                out[i + j] = addm(out[i + j], mulm(x, y, p), p);
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &[u64], s: u64, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().map(|&x| mulm(x, s, p)).collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        assert!(!b.is_empty());
        let db = b.len() - 1;
        let mut r = a.to_vec();
        let li = invm(*b.last().unwrap(), p).expect("monic-able divisor");
        while r.len() > db {
            let k = r.len() - 1;
            let q = mulm(r[k], li, p);
            if q != 0 {
                for j in 0..db {
                    r[k - db + j] = subm(r[k - db + j], mulm(q, b[j], p), p);
                }
            }
            r.pop();
        }
        trim(&mut r);
        r
    }

    pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty());
        let db = b.len() - 1;
        if a.len() <= db {
            return (Vec::new(), a.to_vec());
        }
        let li = invm(*b.last().unwrap(), p).expect("invertible leading");
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for k in (db..r.len()).rev() {
            let f = mulm(r[k], li, p);
            if f != 0 {
                q[k - db] = f;
                for j in 0..=db {
                    r[k - db + j] = subm(r[k - db + j], mulm(f, b[j], p), p);
                }
            }
        }
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(&l) = x.last() {
            let li = invm(l, p).unwrap();
            x = scale(&x, li, p);
        }
        x
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        if a.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(a.len() - 1);
        for (k, &c) in a.iter().enumerate().skip(1) {
            out.push(mulm(c, (k as u64) % p, p));
        }
        trim(&mut out);
        out
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for &c in a.iter().rev() {
            acc = addm(mulm(acc, x, p), c, p);
        }
        acc
    }

    /// x^e mod (f, p) by square and multiply.
    pub fn pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut b = rem(base, f, p);
        let mut r = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                r = rem(&mul(&r, &b, p), f, p);
            }
            b = rem(&mul(&b, &b, p), f, p);
            e >>= 1;
        }
        r
    }

    /// Big-exponent variant used by equal-degree splitting.
    pub fn pow_mod_big(base: &[u64], e: &BigInt, f: &[u64], p: u64) -> Vec<u64> {
        let b = rem(base, f, p);
        let mut r = vec![1u64];
        for i in (0..e.bits()).rev() {
            r = rem(&mul(&r, &r, p), f, p);
            if e.bit(i) {
                r = rem(&mul(&r, &b, p), f, p);
            }
        }
        r
    }
}

/// A vector field reduced mod p: y-coefficient lists of dense x-polys.
pub struct BiPolyP {
    /// `rows[j]` is the coefficient of y^j, a dense polynomial in x.
    pub rows: Vec<Vec<u64>>,
}

impl BiPolyP {
    pub fn reduce(f: &BiPoly<Rat>, p: u64) -> Option<BiPolyP> {
        let dy = f.deg_y() as usize;
        let dx = f.deg_x() as usize;
        let mut rows = vec![vec![0u64; dx + 1]; dy + 1];
        for (&(i, j), c) in &f.terms {
            rows[j as usize][i as usize] = rat_mod(c, p)?;
        }
        for r in rows.iter_mut() {
            poly::trim(r);
        }
        Some(BiPolyP { rows })
    }

    /// Evaluate at (x, s(x)) truncated mod x^sigma by Horner in y.
    pub fn eval_series(&self, s: &[u64], sigma: usize, p: u64) -> Vec<u64> {
        let mut acc: Vec<u64> = Vec::new();
        for r in self.rows.iter().rev() {
            acc = poly::mul_trunc(&acc, s, sigma, p);
            let mut rr = r.clone();
            rr.truncate(sigma);
            acc = poly::add(&acc, &rr, p);
        }
        acc
    }
}

/// Unique power series solution of A(x,y) y' = B(x,y), y(0) = c, mod p.
/// Returns None when A(0, c) = 0 mod p (bad prime or genuinely singular).
pub fn series_mod_p(a: &BiPolyP, b: &BiPolyP, c: u64, sigma: usize, p: u64) -> Option<Vec<u64>> {
    let a0c = {
        let mut acc = 0u64;
        for r in a.rows.iter().rev() {
            acc = addm(mulm(acc, c, p), r.first().copied().unwrap_or(0), p);
        }
        acc
    };
    let a0c_inv = invm(a0c, p)?;
    let mut y = vec![c];
    for n in 1..sigma {
        // residual = A(x, y) y' - B(x, y) mod x^n; next coefficient from
        // its x^{n-1} term
        let av = a.eval_series(&y, n, p);
        let bv = b.eval_series(&y, n, p);
        let yp = poly::derivative(&y, p);
        let lhs = poly::mul_trunc(&av, &yp, n, p);
        let res = poly::sub(&lhs, &bv, p);
        let r = res.get(n - 1).copied().unwrap_or(0);
        let n_inv = invm(n as u64 % p, p)?;
        let an = mulm(mulm(subm(0, r, p), n_inv, p), a0c_inv, p);
        y.push(an);
    }
    Some(y)
}

/// Reduced row echelon form mod p. Returns the pivot columns; `rows` is
/// reduced in place and zero rows are dropped.
pub fn rref_mod_p(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = invm(rows[r][c], p).unwrap();
        for j in c..n {
            rows[r][j] = mulm(rows[r][j], inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in c..n {
                    let t = mulm(rows[r][j], f, p);
                    rows[i][j] = subm(rows[i][j], t, p);
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

/// Kernel basis mod p from an RREF.
pub fn kernel_mod_p(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = rows.first().map_or(0, Vec::len);
    let pivots = rref_mod_p(rows, p);
    let mut basis = Vec::new();
    for f in 0..n {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[f] = 1;
        for (pr, &pc) in pivots.iter().enumerate() {
            v[pc] = subm(0, rows[pr][f], p);
        }
        basis.push(v);
    }
    basis
}

/// Incremental Chinese remaindering state for one integer value.
#[derive(Clone, Debug)]
pub struct CrtValue {
    pub residue: BigInt,
    pub modulus: BigInt,
}

impl CrtValue {
    pub fn new(r: u64, p: u64) -> CrtValue {
        CrtValue {
            residue: BigInt::from(r),
            modulus: BigInt::from(p),
        }
    }

    pub fn push(&mut self, r: u64, p: u64) {
        let pb = BigInt::from(p);
        let rb = BigInt::from(r);
        // x = residue + modulus * t with t = (r - residue)/modulus mod p
        let minv = mod_inverse(&self.modulus, &pb).expect("coprime moduli");
        let diff = (&rb - &self.residue).mod_floor(&pb);
        let t = (diff * minv).mod_floor(&pb);
        self.residue = &self.residue + &self.modulus * t;
        self.modulus = &self.modulus * pb;
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Rational reconstruction of residue mod modulus with |num|, den <=
/// sqrt(modulus/2), by the half-extended Euclidean algorithm.
pub fn rational_reconstruct(value: &BigInt, modulus: &BigInt) -> Option<Rat> {
    let bound = (modulus / BigInt::from(2)).sqrt();
    let mut r0 = modulus.clone();
    let mut r1 = value.mod_floor(modulus);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        let t = &t0 - &q * &t1;
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    // require gcd(num, den) = 1 for a certified reconstruction
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = PRIMES[0];

    #[test]
    fn scalar_inverse() {
        for a in [1u64, 2, 12345, P - 1] {
            let i = invm(a, P).unwrap();
            assert_eq!(mulm(a, i, P), 1);
        }
        assert!(invm(0, P).is_none());
    }

    #[test]
    fn poly_divmod_roundtrip() {
        let a = vec![3, 1, 4, 1, 5, 9, 2];
        let b = vec![2, 7, 1];
        let (q, r) = poly::div_rem(&a, &b, P);
        let back = poly::add(&poly::mul(&q, &b, P), &r, P);
        assert_eq!(back, a);
    }

    #[test]
    fn crt_and_reconstruct() {
        let x = Rat::new(BigInt::from(-22), BigInt::from(7));
        let mut acc: Option<CrtValue> = None;
        for &p in &PRIMES[..3] {
            let r = rat_mod(&x, p).unwrap();
            match &mut acc {
                None => acc = Some(CrtValue::new(r, p)),
                Some(c) => c.push(r, p),
            }
        }
        let c = acc.unwrap();
        let rec = rational_reconstruct(&c.residue, &c.modulus).unwrap();
        assert_eq!(rec, x);
    }
}
