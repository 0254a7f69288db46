//! Rational functions in one variable, the coefficient field Q(c) of the
//! symbolic-parameter series.

use crate::field::Field;
use crate::rat::Rat;
use crate::unipoly::UniPoly;

/// A reduced fraction of univariate polynomials with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    pub num: UniPoly<F>,
    pub den: UniPoly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        // normalize to a monic denominator
        let li = den.leading().inv().expect("nonzero denominator");
        RatFunc {
            num: num.scale(&li),
            den: den.scale(&li),
        }
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Evaluate at a point where the denominator does not vanish.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).div(&d))
    }
}

/// The indeterminate c as an element of Q(c).
pub fn symbol_c() -> RatFunc<Rat> {
    RatFunc::from_poly(UniPoly::x())
}

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::from_poly(UniPoly::constant(F::from_i64(n)))
    }
}
