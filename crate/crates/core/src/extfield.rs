//! Algebraic extensions Q[c]/(p(c)) for irreducible p.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::rat::Rat;
use crate::unipoly::UniPoly;

/// The field Q[c]/(p(c)); `modulus` is monic and certified irreducible at
/// construction time.
///
/// A zero modulus marks the *unbound* context used for constants produced
/// by the contextless `Field` constructors; binary operations adopt the
/// bound context of the other operand.
#[derive(Debug)]
pub struct ExtensionField {
    pub modulus: UniPoly<Rat>,
}

impl ExtensionField {
    /// Builds the extension, certifying irreducibility of the modulus with
    /// the factorization routine.
    pub fn new(modulus: UniPoly<Rat>) -> Result<Arc<ExtensionField>> {
        let deg = modulus
            .degree()
            .ok_or_else(|| Error::Precondition("zero extension modulus".to_string()))?;
        if deg == 0 {
            return Err(Error::Precondition("constant extension modulus".to_string()));
        }
        if deg > 1 {
            let (_, factors) = crate::factor::factor_univariate(&modulus)?;
            if factors.len() != 1 || factors[0].1 != 1 {
                return Err(Error::ReducibleModulus(alloc::format!(
                    "degree-{deg} modulus splits into {} irreducible factors",
                    factors.len()
                )));
            }
        }
        Ok(Arc::new(ExtensionField {
            modulus: modulus.monic(),
        }))
    }

    /// Builds the extension without an irreducibility check, for moduli that
    /// come straight out of a certified factorization.
    pub fn new_unchecked(modulus: UniPoly<Rat>) -> Arc<ExtensionField> {
        Arc::new(ExtensionField {
            modulus: modulus.monic(),
        })
    }

    fn unbound() -> Arc<ExtensionField> {
        Arc::new(ExtensionField {
            modulus: UniPoly::zero(),
        })
    }

    pub fn is_unbound(&self) -> bool {
        self.modulus.is_zero()
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn elem(self: &Arc<Self>, poly: UniPoly<Rat>) -> ExtElem {
        ExtElem {
            field: Arc::clone(self),
            poly: poly.rem(&self.modulus),
        }
    }

    /// The class of c itself.
    pub fn generator(self: &Arc<Self>) -> ExtElem {
        self.elem(UniPoly::x())
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> ExtElem {
        self.elem(UniPoly::constant(r))
    }
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

/// An element of Q[c]/(p), stored as the reduced representative of degree
/// < deg(p).
#[derive(Clone, Debug)]
pub struct ExtElem {
    pub field: Arc<ExtensionField>,
    pub poly: UniPoly<Rat>,
}

impl ExtElem {
    /// Rational value of the representative, if it is constant.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.poly.is_zero() {
            Some(<Rat as Field>::zero())
        } else if self.poly.is_constant() {
            Some(self.poly.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn coeff_vec(&self) -> Vec<Rat> {
        let k = self.field.degree();
        (0..k).map(|i| self.poly.coeff(i)).collect()
    }

    fn ctx<'a>(&'a self, rhs: &'a Self) -> &'a Arc<ExtensionField> {
        if self.field.is_unbound() {
            &rhs.field
        } else {
            &self.field
        }
    }
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Field for ExtElem {
    fn zero() -> Self {
        ExtElem {
            field: ExtensionField::unbound(),
            poly: UniPoly::zero(),
        }
    }
    fn one() -> Self {
        ExtElem {
            field: ExtensionField::unbound(),
            poly: UniPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        ExtElem {
            field: Arc::clone(self.ctx(rhs)),
            poly: self.poly.add(&rhs.poly),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        ExtElem {
            field: Arc::clone(self.ctx(rhs)),
            poly: self.poly.sub(&rhs.poly),
        }
    }
    fn neg(&self) -> Self {
        ExtElem {
            field: Arc::clone(&self.field),
            poly: self.poly.neg(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let field = Arc::clone(self.ctx(rhs));
        let prod = self.poly.mul(&rhs.poly);
        let poly = if field.is_unbound() {
            prod
        } else {
            prod.rem(&field.modulus)
        };
        ExtElem { field, poly }
    }
    fn inv(&self) -> Option<Self> {
        if self.poly.is_zero() {
            return None;
        }
        if self.field.is_unbound() {
            // unbound elements are rational constants
            let r = self.poly.coeffs[0].clone();
            return Some(ExtElem {
                field: Arc::clone(&self.field),
                poly: UniPoly::constant(<Rat as Field>::inv(&r)?),
            });
        }
        // inversion via extended Euclid on the modulus
        let (g, _, t) = self.field.modulus.extended_gcd(&self.poly);
        if !g.is_constant() {
            return None;
        }
        Some(ExtElem {
            field: Arc::clone(&self.field),
            poly: t.rem(&self.field.modulus),
        })
    }
    fn from_i64(n: i64) -> Self {
        ExtElem {
            field: ExtensionField::unbound(),
            poly: UniPoly::constant(<Rat as Field>::from_i64(n)),
        }
    }
}
