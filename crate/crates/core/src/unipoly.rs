//! Dense univariate polynomials over an exact field.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::field::Field;
use crate::rat::{denominator_lcm, Rat};

/// A univariate polynomial; `coeffs[k]` is the coefficient of `x^k` and the
/// leading coefficient is nonzero unless the polynomial is zero (empty).
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F: Field> {
    pub coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, F::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            UniPoly::zero()
        } else {
            UniPoly { coeffs: vec![c] }
        }
    }

    /// `c * x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn x() -> Self {
        UniPoly::monomial(F::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&rhs.coeff(k)));
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).sub(&rhs.coeff(k)));
        }
        UniPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// `self * x^k`
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let dr = rhs.coeffs.len() - 1;
        if self.coeffs.len() < rhs.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let lead_inv = rhs.leading().inv().expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![F::zero(); self.coeffs.len() - dr];
        for k in (dr..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = rem[k].mul(&lead_inv);
            for j in 0..dr {
                rem[k - dr + j] = rem[k - dr + j].sub(&q.mul(&rhs.coeffs[j]));
            }
            rem[k] = F::zero();
            quo[k - dr] = q;
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.div_rem(rhs).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor (Euclid); gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, s, t) monic with s*self + t*rhs = g.
    pub fn extended_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let mut s0 = UniPoly::one();
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.leading().inv().expect("nonzero leading");
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.leading().inv().expect("nonzero leading");
        self.scale(&li)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&F::from_i64(k as i64)));
        }
        UniPoly::new(out)
    }

    /// Taylor shift `p(x) -> p(x + a)` by Horner recomposition.
    pub fn taylor_shift(&self, a: &F) -> Self {
        let mut out = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            // out = out * (x + a) + c
            let shifted = out.shift_up(1).add(&out.scale(a));
            out = shifted.add(&UniPoly::constant(c.clone()));
        }
        out
    }

    /// Resultant of `self` and `rhs` by the classical subresultant-free PRS
    /// over a field, tracking leading-coefficient corrections.
    pub fn resultant(&self, rhs: &Self) -> F {
        let mut a = self.clone();
        let mut b = rhs.clone();
        if a.is_zero() || b.is_zero() {
            return F::zero();
        }
        let mut res = F::one();
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                Some(d) => d,
                None => return F::zero(),
            };
            if db == 0 {
                // res *= lc(b)^da
                let mut p = F::one();
                for _ in 0..da {
                    p = p.mul(&b.coeffs[0]);
                }
                return res.mul(&p);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return F::zero();
            }
            // Res(a, b) = (-1)^{da*db} lc(b)^{da - dr} Res(b, r)
            let dr = r.degree().unwrap();
            let lb = b.leading();
            let mut lc_pow = F::one();
            for _ in 0..(da - dr) {
                lc_pow = lc_pow.mul(&lb);
            }
            if (da * db) % 2 == 1 {
                res = res.neg();
            }
            res = res.mul(&lc_pow);
            a = b;
            b = r;
        }
    }
}

impl UniPoly<Rat> {
    pub fn from_i64_slice(cs: &[i64]) -> Self {
        UniPoly::new(cs.iter().map(|&n| Rat::from_integer(BigInt::from(n))).collect())
    }

    /// Integer-normalized form: content 1, positive leading coefficient.
    pub fn normalized_integer(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for n in &ints {
            g = num_integer::Integer::gcd(&g, n);
        }
        if g.is_zero() {
            return self.clone();
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        UniPoly::new(ints.into_iter().map(|n| Rat::from_integer(n / &g)).collect())
    }

    /// Coefficients as integers; valid only after `normalized_integer`.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.numer().clone()).collect()
    }
}

