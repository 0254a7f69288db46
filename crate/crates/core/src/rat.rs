//! Arbitrary-precision rationals, the base coefficient field.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::Field;

/// A rational number with reduced numerator/denominator and positive
/// denominator, as enforced by `num_rational`.
pub type Rat = num_rational::BigRational;

impl Field for Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
}

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators of a coefficient list.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rat>>(coeffs: I) -> BigInt {
    let mut l = BigInt::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    l
}

/// Greatest common divisor of the numerators after scaling by `scale`.
pub fn scaled_numerator_gcd<'a, I: IntoIterator<Item = &'a Rat>>(coeffs: I, scale: &BigInt) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        let n = c.numer() * (scale / c.denom());
        g = g.gcd(&n);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Canonical string form `p` or `p/q` used by reports.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Exact rational value of a big integer residue symmetrically reduced.
pub fn bigint_sign_is_negative(n: &BigInt) -> bool {
    n.sign() == Sign::Minus
}

/// Scale a rational vector to coprime integers (content 1). Returns the
/// integer vector; the zero vector maps to itself.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let l = denominator_lcm(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|n| n / &g).collect()
}

/// |numerator| + |denominator| bit size, a crude height measure used only
/// for pivot selection heuristics.
pub fn rat_height_bits(r: &Rat) -> u64 {
    (r.numer().abs().bits() + r.denom().bits()) as u64
}
